//! Grover search under diagonalizable single-qubit noise.
//!
//! The search lives in the two-dimensional space spanned by the uniform
//! superpositions of non-target and target items, so one iteration is a
//! rotation and a noise channel is a map on the reduced Bloch vector
//! (r_x, r_z). This crate evaluates the noisy success probability two
//! independent ways and insists they agree:
//!
//! - [`bloch`] and [`analytic`]: the iteration as a real 2x2 matrix, with
//!   damped-oscillation closed forms, extremum formulas and a noise
//!   threshold inversion built on top;
//! - [`oracle`]: exact density-matrix evolution with channels in
//!   operator-sum (Kraus) form, the ground truth the closed forms are
//!   tested against.
//!
//! Everything is generic over the floating-point scalar (see [`Scalar`]);
//! the `*64` aliases below fix `f64`, which all shipped tolerances assume.
//!
//! ```
//! use grover_noise::{ChannelKind, GroverParams, NoiseChannel, Placement};
//!
//! let params = GroverParams::<f64>::new(256, 1)?;
//! let channel = NoiseChannel::from_eta(ChannelKind::BitPhaseFlip, 0.9)?;
//! let trace = grover_noise::oracle::simulate_trace(
//!     &params, &channel, 24, Placement::PerIteration,
//! );
//! let closed = grover_noise::analytic::bit_phase_flip_probability(&params, 0.9, trace.argmax_t)?;
//! assert!((closed - trace.p_max).abs() <= 1e-12);
//! # Ok::<(), grover_noise::Error>(())
//! ```

pub mod analytic;
pub mod bloch;
pub mod channel;
pub mod error;
pub mod grover;
pub mod oracle;
pub mod scalar;
pub mod threshold;
pub mod validation;

pub use analytic::{EnvelopeParams, IdealOrdering, Regime, SpectralParams};
pub use bloch::{AffineBlochMap, BlochState, Mat2};
pub use channel::{ChannelKind, NoiseChannel, Placement};
pub use error::{Error, Result};
pub use grover::GroverParams;
pub use oracle::{CMat2, DensityMatrix2, KrausSet, SimulationTrace};
pub use scalar::Scalar;
pub use threshold::{QueryComparison, ThresholdResult};

/// Double-precision instantiations; all documented tolerances assume these.
pub type GroverParams64 = GroverParams<f64>;
pub type NoiseChannel64 = NoiseChannel<f64>;
pub type BlochState64 = BlochState<f64>;
pub type Mat2x64 = Mat2<f64>;
pub type SpectralParams64 = SpectralParams<f64>;
pub type DensityMatrix64 = DensityMatrix2<f64>;
pub type SimulationTrace64 = SimulationTrace<f64>;
pub type ThresholdResult64 = ThresholdResult<f64>;
