//! Single-qubit noise channels and the effective contraction factor eta
//! that makes the five diagonalizable ones interchangeable.
//!
//! The parameter conventions follow the usual operator-sum tables: flip
//! channels keep the state with probability `p` (so `eta = 2p - 1`), the
//! damping channels keep coherence `sqrt(gamma)` (phase damping has
//! `eta = sqrt(gamma)`), and depolarizing replaces the state by the
//! maximally mixed one with probability `alpha` (`eta = 1 - alpha`).
//! Amplitude damping is the one channel without a single contraction
//! factor: its Bloch action is affine, so asking for its eta is an error.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};

/// The noise channel families supported by the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
    PhaseDamping,
    AmplitudeDamping,
    Identity,
}

impl ChannelKind {
    /// Short code used on the command line and in CSV output.
    pub fn code(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bf",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitPhaseFlip => "bpf",
            ChannelKind::Depolarizing => "dp",
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Identity => "id",
        }
    }

    /// Whether the reduced (r_x, r_z) action of the channel is diagonal.
    pub fn is_diagonalizable(self) -> bool {
        !matches!(self, ChannelKind::AmplitudeDamping)
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bf" => Ok(ChannelKind::BitFlip),
            "pf" => Ok(ChannelKind::PhaseFlip),
            "bpf" => Ok(ChannelKind::BitPhaseFlip),
            "dp" => Ok(ChannelKind::Depolarizing),
            "pd" => Ok(ChannelKind::PhaseDamping),
            "ad" => Ok(ChannelKind::AmplitudeDamping),
            "id" => Ok(ChannelKind::Identity),
            other => Err(format!(
                "unknown channel '{other}' (expected one of bf, pf, bpf, dp, pd, ad, id)"
            )),
        }
    }
}

/// Where the channel acts within one Grover iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// Noise once per iteration, before the two reflections.
    PerIteration,
    /// Noise before each of the two reflections.
    PerReflection,
}

/// A noise channel: its kind, the raw physical parameter it was built from,
/// and (when it exists) the effective contraction factor eta.
///
/// Eta is stored rather than recomputed so that channels constructed via
/// [`NoiseChannel::from_eta`] carry the requested value bit-exactly; the
/// raw parameter is derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseChannel<T> {
    kind: ChannelKind,
    raw_param: T,
    eta: Option<T>,
}

impl<T: Scalar> NoiseChannel<T> {
    /// Bit flip: applies X with probability `1 - p`; requires `p in [1/2, 1]`.
    pub fn bit_flip(p: T) -> Result<Self> {
        Self::flip(ChannelKind::BitFlip, p)
    }

    /// Phase flip: applies Z with probability `1 - p`; requires `p in [1/2, 1]`.
    pub fn phase_flip(p: T) -> Result<Self> {
        Self::flip(ChannelKind::PhaseFlip, p)
    }

    /// Bit-phase flip: applies Y with probability `1 - p`; requires `p in [1/2, 1]`.
    pub fn bit_phase_flip(p: T) -> Result<Self> {
        Self::flip(ChannelKind::BitPhaseFlip, p)
    }

    fn flip(kind: ChannelKind, p: T) -> Result<Self> {
        if !(p >= cast::<T>(0.5) && p <= T::one()) {
            return Err(Error::InvalidChannelParam {
                kind,
                value: to_f64(p),
                constraint: "keep probability p must lie in [1/2, 1]",
            });
        }
        let eta = (p + p) - T::one();
        Ok(Self {
            kind,
            raw_param: p,
            eta: Some(eta),
        })
    }

    /// Depolarizing: replaces the state by I/2 with probability `alpha in [0, 1]`.
    pub fn depolarizing(alpha: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidChannelParam {
                kind: ChannelKind::Depolarizing,
                value: to_f64(alpha),
                constraint: "alpha must lie in [0, 1]",
            });
        }
        Ok(Self {
            kind: ChannelKind::Depolarizing,
            raw_param: alpha,
            eta: Some(T::one() - alpha),
        })
    }

    /// Phase damping with coherence retention `sqrt(gamma)`; `gamma in [0, 1]`.
    pub fn phase_damping(gamma: T) -> Result<Self> {
        Self::damping(ChannelKind::PhaseDamping, gamma)
    }

    /// Amplitude damping: decays toward the non-target pole with probability
    /// `1 - gamma`; `gamma in [0, 1]`. Supported only by the density-matrix
    /// oracle; it has no effective eta.
    pub fn amplitude_damping(gamma: T) -> Result<Self> {
        Self::damping(ChannelKind::AmplitudeDamping, gamma)
    }

    fn damping(kind: ChannelKind, gamma: T) -> Result<Self> {
        if !(gamma >= T::zero() && gamma <= T::one()) {
            return Err(Error::InvalidChannelParam {
                kind,
                value: to_f64(gamma),
                constraint: "gamma must lie in [0, 1]",
            });
        }
        let eta = match kind {
            ChannelKind::PhaseDamping => Some(gamma.sqrt()),
            _ => None,
        };
        Ok(Self {
            kind,
            raw_param: gamma,
            eta,
        })
    }

    /// The noiseless channel.
    pub fn identity() -> Self {
        Self {
            kind: ChannelKind::Identity,
            raw_param: T::one(),
            eta: Some(T::one()),
        }
    }

    /// Builds a channel of the given kind from its effective contraction.
    ///
    /// `eta` must lie in (0, 1]; the raw parameter is derived from it
    /// (`p = (1 + eta)/2`, `gamma = eta^2`, `alpha = 1 - eta`). Amplitude
    /// damping is rejected: no eta describes it.
    pub fn from_eta(kind: ChannelKind, eta: T) -> Result<Self> {
        if !(eta > T::zero() && eta <= T::one()) {
            return Err(Error::EtaOutOfRange { eta: to_f64(eta) });
        }
        let half = cast::<T>(0.5);
        match kind {
            ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => Ok(Self {
                kind,
                raw_param: half * (T::one() + eta),
                eta: Some(eta),
            }),
            ChannelKind::Depolarizing => Ok(Self {
                kind,
                raw_param: T::one() - eta,
                eta: Some(eta),
            }),
            ChannelKind::PhaseDamping => Ok(Self {
                kind,
                raw_param: eta * eta,
                eta: Some(eta),
            }),
            ChannelKind::Identity => {
                if eta < T::one() {
                    Err(Error::InvalidChannelParam {
                        kind,
                        value: to_f64(eta),
                        constraint: "the identity channel has eta = 1",
                    })
                } else {
                    Ok(Self::identity())
                }
            }
            ChannelKind::AmplitudeDamping => Err(Error::NotDiagonalizable {
                context: "from_eta",
            }),
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    /// The physical parameter the channel was defined with (p, gamma or alpha).
    pub fn raw_param(&self) -> T {
        self.raw_param
    }

    /// The effective contraction factor of the reduced Bloch action.
    ///
    /// Errors for amplitude damping, whose action is affine rather than a
    /// pure contraction.
    pub fn effective_eta(&self) -> Result<T> {
        self.eta.ok_or(Error::NotDiagonalizable {
            context: "effective_eta",
        })
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.kind.is_diagonalizable()
    }
}

fn to_f64<T: Scalar>(x: T) -> f64 {
    num_traits::ToPrimitive::to_f64(&x).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eta_mappings() {
        let c = NoiseChannel::bit_flip(0.85f64).unwrap();
        assert_abs_diff_eq!(c.effective_eta().unwrap(), 0.7, epsilon = 1e-12);

        let c = NoiseChannel::phase_damping(0.81f64).unwrap();
        assert_abs_diff_eq!(c.effective_eta().unwrap(), 0.9, epsilon = 1e-12);

        let c = NoiseChannel::depolarizing(0.2f64).unwrap();
        assert_abs_diff_eq!(c.effective_eta().unwrap(), 0.8, epsilon = 1e-12);

        assert_abs_diff_eq!(NoiseChannel::<f64>::identity().effective_eta().unwrap(), 1.0);
    }

    #[test]
    fn amplitude_damping_has_no_eta() {
        let c = NoiseChannel::amplitude_damping(0.5f64).unwrap();
        assert!(matches!(
            c.effective_eta(),
            Err(Error::NotDiagonalizable { .. })
        ));
        assert!(!c.is_diagonalizable());
        assert!(matches!(
            NoiseChannel::<f64>::from_eta(ChannelKind::AmplitudeDamping, 0.5),
            Err(Error::NotDiagonalizable { .. })
        ));
    }

    #[test]
    fn rejects_out_of_range_params() {
        assert!(NoiseChannel::bit_flip(0.49f64).is_err());
        assert!(NoiseChannel::phase_flip(1.01f64).is_err());
        assert!(NoiseChannel::phase_flip(f64::NAN).is_err());
        assert!(NoiseChannel::depolarizing(-0.1f64).is_err());
        assert!(NoiseChannel::amplitude_damping(1.5f64).is_err());
        assert!(NoiseChannel::<f64>::from_eta(ChannelKind::BitFlip, 0.0).is_err());
        assert!(NoiseChannel::<f64>::from_eta(ChannelKind::BitFlip, 1.2).is_err());
    }

    #[test]
    fn from_eta_keeps_eta_bit_exact() {
        for kind in [
            ChannelKind::BitFlip,
            ChannelKind::PhaseFlip,
            ChannelKind::BitPhaseFlip,
            ChannelKind::Depolarizing,
            ChannelKind::PhaseDamping,
        ] {
            for eta in [0.3f64, 0.7, 0.9, 1.0] {
                let c = NoiseChannel::from_eta(kind, eta).unwrap();
                assert_eq!(c.effective_eta().unwrap(), eta, "{kind} eta={eta}");
            }
        }
    }

    #[test]
    fn kind_codes_round_trip() {
        for kind in [
            ChannelKind::BitFlip,
            ChannelKind::PhaseFlip,
            ChannelKind::BitPhaseFlip,
            ChannelKind::Depolarizing,
            ChannelKind::PhaseDamping,
            ChannelKind::AmplitudeDamping,
            ChannelKind::Identity,
        ] {
            assert_eq!(kind.code().parse::<ChannelKind>().unwrap(), kind);
        }
        assert!("xy".parse::<ChannelKind>().is_err());
    }
}
