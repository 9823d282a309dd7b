use thiserror::Error;

use crate::channel::ChannelKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared across the library.
///
/// Scalar payloads are widened to `f64` so the enum stays independent of the
/// scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid search instance: N = {n_items}, m = {n_targets} (need N >= 2 and 1 <= m <= N)")]
    InvalidSearchInstance { n_items: u64, n_targets: u64 },

    #[error("invalid parameter {value} for {kind} channel: {constraint}")]
    InvalidChannelParam {
        kind: ChannelKind,
        value: f64,
        constraint: &'static str,
    },

    #[error("{context}: amplitude damping has no diagonal action on (r_x, r_z)")]
    NotDiagonalizable { context: &'static str },

    #[error("Bloch vector left the unit ball: |r_z| = {r_z_abs}")]
    BlochBallEscape { r_z_abs: f64 },

    #[error("value {value} is outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange { value: f64 },

    #[error("eta = {eta} is outside (0, 1]")]
    EtaOutOfRange { eta: f64 },

    #[error("small-angle envelope invalid: {reason}")]
    EnvelopeDomain { reason: String },

    #[error("Kraus set is not trace preserving: max |sum E^dag E - I| = {deviation}")]
    IncompleteKrausSet { deviation: f64 },

    #[error("trace has no points")]
    EmptyTrace,

    #[error("requested probability {requested} exceeds the noiseless maximum {ideal_max}")]
    NoThresholdExists { requested: f64, ideal_max: f64 },

    #[error("requested probability {requested} is reachable at any noise level")]
    TrivialRequest { requested: f64 },

    #[error("requested probability {requested} unreachable under this channel (best {achieved})")]
    TargetUnreachable { requested: f64, achieved: f64 },

    #[error("peak success probability is not monotone in eta: {detail}")]
    MonotonicityViolated { detail: String },
}
