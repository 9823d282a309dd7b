//! Closed-form success probabilities for the noisy search families.
//!
//! The noisy iteration matrix `G E` has trace `2 A_+` and determinant
//! `eta`, with `A_pm = (1 pm eta)/2 cos 2theta`. When `eta > A_+^2` the
//! eigenvalues form the complex pair `sqrt(eta) exp(pm i phi)` and the
//! success probability admits a damped-oscillation closed form; when
//! `eta <= A_+^2` the pair is real (overdamped) and the damped-oscillation
//! closed forms do not apply, so evaluation falls back to an exact
//! matrix power. The bit-phase-flip family is a scaled rotation and has
//! an exact closed form in every regime, with decay `eta^t` rather than
//! `eta^{t/2}`.

use crate::bloch::{
    grover_matrix, oracle_matrix, reduced_noise_matrix, reflection_matrix, success_from_state,
    BlochState, Mat2,
};
use crate::channel::{ChannelKind, NoiseChannel, Placement};
use crate::error::{Error, Result};
use crate::grover::GroverParams;
use crate::scalar::{cast, guarded_tol, Scalar};

/// Eigenstructure classification of the noisy iteration matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Complex eigenvalue pair `sqrt(eta) exp(pm i phi)`.
    Oscillatory,
    /// `eta = A_+^2` within 1e-14: degenerate real eigenvalue.
    Critical,
    /// Distinct real eigenvalues; no oscillation.
    Overdamped,
}

/// Spectral data of the noisy iteration matrix for contraction `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams<T> {
    /// `(1 + eta)/2 cos 2theta`, half the matrix trace.
    pub a_plus: T,
    /// `(1 - eta)/2 cos 2theta`.
    pub a_minus: T,
    /// `sqrt(|eta - A_+^2|)`: the eigenvalue pair's imaginary part when
    /// oscillatory, half the real gap when overdamped.
    pub b: T,
    /// Eigenphase `atan2(B, A_+)`; meaningful in the oscillatory regime.
    pub phi: T,
    pub eta: T,
    pub regime: Regime,
}

impl<T: Scalar> SpectralParams<T> {
    /// Whether the damped-oscillation closed forms are numerically safe:
    /// oscillatory regime with `B` far enough from zero to divide by.
    pub fn closed_form_applies(&self) -> bool {
        self.regime == Regime::Oscillatory && self.b >= guarded_tol::<T>(1e-7) * self.eta.sqrt()
    }
}

/// Amplitude and phase of the small-angle oscillation envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeParams<T> {
    /// `sqrt(A_-^2 + B^2)`.
    pub r_amp: T,
    /// `atan2(B, A_-)`; equals pi/2 in the noiseless limit where A_- = 0.
    pub delta: T,
}

/// `base^t` for integer `t`, exact through `powi` where it fits and
/// sign-correct for negative bases beyond that.
fn int_pow<T: Scalar>(base: T, t: usize) -> T {
    if t <= i32::MAX as usize {
        return base.powi(t as i32);
    }
    let magnitude = base.abs().powf(cast::<T>(t as u64));
    if base < T::zero() && t % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// Computes the spectral parameterization for a given contraction factor.
pub fn spectral_params<T: Scalar>(params: &GroverParams<T>, eta: T) -> Result<SpectralParams<T>> {
    if !(eta > T::zero() && eta <= T::one()) {
        return Err(Error::EtaOutOfRange {
            eta: num_traits::ToPrimitive::to_f64(&eta).unwrap_or(f64::NAN),
        });
    }
    let two_theta = params.angle() + params.angle();
    let cos2t = two_theta.cos();
    let half = cast::<T>(0.5);
    let a_plus = half * (T::one() + eta) * cos2t;
    let a_minus = half * (T::one() - eta) * cos2t;
    let gap = eta - a_plus * a_plus;
    let regime = if gap.abs() <= cast::<T>(1e-14) {
        Regime::Critical
    } else if gap > T::zero() {
        Regime::Oscillatory
    } else {
        Regime::Overdamped
    };
    let b = gap.abs().sqrt();
    let phi = b.atan2(a_plus);
    Ok(SpectralParams {
        a_plus,
        a_minus,
        b,
        phi,
        eta,
        regime,
    })
}

/// Envelope amplitude and phase derived from the spectral data.
pub fn envelope_params<T: Scalar>(spectral: &SpectralParams<T>) -> EnvelopeParams<T> {
    let r_amp = spectral.a_minus.hypot(spectral.b);
    EnvelopeParams {
        r_amp,
        delta: spectral.b.atan2(spectral.a_minus),
    }
}

/// Success probability after `t` iterations under phase flip (or phase
/// damping) noise of contraction `eta`.
///
/// Uses the damped-oscillation closed form in the oscillatory regime and
/// an exact matrix power otherwise; the two agree wherever both apply.
pub fn phase_flip_probability<T: Scalar>(
    params: &GroverParams<T>,
    eta: T,
    t: usize,
) -> Result<T> {
    let sp = spectral_params(params, eta)?;
    if !sp.closed_form_applies() {
        let channel = NoiseChannel::from_eta(ChannelKind::PhaseFlip, eta)?;
        return matrix_power_probability(params, &channel, t, Placement::PerIteration);
    }
    let theta = params.angle();
    let phi_t = sp.phi * cast::<T>(t as u64);
    let decay = int_pow(eta.sqrt(), t);
    let half = cast::<T>(0.5);
    let osc = eta * phi_t.sin() * (theta + theta).sin() * theta.sin()
        - (sp.b * phi_t.cos() + sp.a_minus * phi_t.sin()) * theta.cos();
    clamp_probability(half + decay / (sp.b + sp.b) * osc)
}

/// Small-angle envelope approximation of the phase-flip probability:
/// `1/2 - eta^{t/2} r sin(phi t + delta) / (2B)`.
///
/// Valid for `m/N <= 1/64` in the oscillatory regime; outside that domain
/// the approximation is meaningless and an error is returned.
pub fn phase_flip_envelope<T: Scalar>(params: &GroverParams<T>, eta: T, t: usize) -> Result<T> {
    let (sp, env) = envelope_inputs(params, eta)?;
    let phi_t = sp.phi * cast::<T>(t as u64);
    let decay = int_pow(eta.sqrt(), t);
    let half = cast::<T>(0.5);
    Ok(half - decay / (sp.b + sp.b) * env.r_amp * (phi_t + env.delta).sin())
}

/// Success probability after `t` iterations under bit flip noise.
pub fn bit_flip_probability<T: Scalar>(params: &GroverParams<T>, eta: T, t: usize) -> Result<T> {
    let sp = spectral_params(params, eta)?;
    if !sp.closed_form_applies() {
        let channel = NoiseChannel::from_eta(ChannelKind::BitFlip, eta)?;
        return matrix_power_probability(params, &channel, t, Placement::PerIteration);
    }
    let theta = params.angle();
    let phi_t = sp.phi * cast::<T>(t as u64);
    let decay = int_pow(eta.sqrt(), t);
    let half = cast::<T>(0.5);
    let osc = phi_t.sin() * (theta + theta).sin() * theta.sin()
        - (sp.b * phi_t.cos() - sp.a_minus * phi_t.sin()) * theta.cos();
    clamp_probability(half + decay / (sp.b + sp.b) * osc)
}

/// Small-angle envelope approximation of the bit-flip probability:
/// `1/2 + eta^{t/2} r sin(phi t - delta) / (2B)`.
///
/// The oscillation lags the phase-flip envelope by `2 delta`. The sign in
/// front follows from expanding `B cos phi t - A_- sin phi t` with the
/// quadrant convention `delta = atan2(B, A_-)`; written with the opposite
/// arctangent branch the leading sign flips, which is how the usual
/// one-argument-arctan presentation reads.
pub fn bit_flip_envelope<T: Scalar>(params: &GroverParams<T>, eta: T, t: usize) -> Result<T> {
    let (sp, env) = envelope_inputs(params, eta)?;
    let phi_t = sp.phi * cast::<T>(t as u64);
    let decay = int_pow(eta.sqrt(), t);
    let half = cast::<T>(0.5);
    Ok(half + decay / (sp.b + sp.b) * env.r_amp * (phi_t - env.delta).sin())
}

fn envelope_inputs<T: Scalar>(
    params: &GroverParams<T>,
    eta: T,
) -> Result<(SpectralParams<T>, EnvelopeParams<T>)> {
    let ratio = params.target_fraction();
    if ratio > cast::<T>(1.0 / 64.0) {
        return Err(Error::EnvelopeDomain {
            reason: format!("m/N = {ratio} exceeds 1/64"),
        });
    }
    let sp = spectral_params(params, eta)?;
    if !sp.closed_form_applies() {
        return Err(Error::EnvelopeDomain {
            reason: format!("not oscillatory at eta = {eta}"),
        });
    }
    Ok((sp, envelope_params(&sp)))
}

/// Success probability after `t` iterations under bit-phase flip (or
/// depolarizing) noise: `1/2 - eta^t cos((2t+1) theta) / 2`.
///
/// Exact in every regime; the decay exponent is `eta^t`, twice as fast as
/// the other flip families.
pub fn bit_phase_flip_probability<T: Scalar>(
    params: &GroverParams<T>,
    eta: T,
    t: usize,
) -> Result<T> {
    if !(eta > T::zero() && eta <= T::one()) {
        return Err(Error::EtaOutOfRange {
            eta: num_traits::ToPrimitive::to_f64(&eta).unwrap_or(f64::NAN),
        });
    }
    let half = cast::<T>(0.5);
    let theta_arg = cast::<T>(2 * t as u64 + 1) * params.angle();
    clamp_probability(half - half * int_pow(eta, t) * theta_arg.cos())
}

/// Evaluates the closed form matching the channel's family.
///
/// Phase damping shares the phase-flip form and depolarizing the
/// bit-phase-flip form (same reduced matrices); amplitude damping has no
/// closed form and is rejected.
pub fn closed_form_probability<T: Scalar>(
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    t: usize,
) -> Result<T> {
    match channel.kind() {
        ChannelKind::PhaseFlip | ChannelKind::PhaseDamping => {
            phase_flip_probability(params, channel.effective_eta()?, t)
        }
        ChannelKind::BitFlip => bit_flip_probability(params, channel.effective_eta()?, t),
        ChannelKind::BitPhaseFlip | ChannelKind::Depolarizing => {
            bit_phase_flip_probability(params, channel.effective_eta()?, t)
        }
        ChannelKind::Identity => Ok(params.ideal_success_probability(t)),
        ChannelKind::AmplitudeDamping => Err(Error::NotDiagonalizable {
            context: "closed_form_probability",
        }),
    }
}

/// Success probability via the `t`-th power of the noisy iteration matrix.
///
/// Uses the two-point Lagrange form of the matrix power when the
/// eigenvalues are real and well separated, repeated squaring otherwise.
/// Agrees with the closed forms wherever both are defined.
pub fn matrix_power_probability<T: Scalar>(
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    t: usize,
    placement: Placement,
) -> Result<T> {
    let noise = reduced_noise_matrix(channel).map_err(|_| Error::NotDiagonalizable {
        context: "matrix_power_probability",
    })?;
    let step = match placement {
        Placement::PerIteration => grover_matrix(params) * noise,
        Placement::PerReflection => {
            reflection_matrix(params) * noise * oracle_matrix() * noise
        }
    };
    let powered = matrix_power(step, t);
    success_from_state(powered.apply(BlochState::grover_initial(params)))
}

fn matrix_power<T: Scalar>(m: Mat2<T>, t: usize) -> Mat2<T> {
    let half = cast::<T>(0.5);
    let mean = m.trace() * half;
    let disc = mean * mean - m.det();
    let scale = T::one().max(mean * mean);
    if disc > cast::<T>(1e-12) * scale {
        // Real, separated eigenvalues: M^t = sum_i lambda_i^t prod_{j != i} (M - lambda_j I)/(lambda_i - lambda_j).
        let root = disc.sqrt();
        let (l1, l2) = (mean + root, mean - root);
        let p1 = int_pow(l1, t);
        let p2 = int_pow(l2, t);
        let inv_gap = T::one() / (l1 - l2);
        let mut out = [[T::zero(); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let id = if r == c { T::one() } else { T::zero() };
                *cell = (p1 * (m.0[r][c] - l2 * id) - p2 * (m.0[r][c] - l1 * id)) * inv_gap;
            }
        }
        Mat2(out)
    } else {
        m.pow(t)
    }
}

/// The iteration count maximizing the bit-phase-flip success probability:
/// `floor((arctan(ln eta / 2theta) + pi) / (2theta))`.
///
/// At `eta = 1` this reduces to `floor(pi / 2theta)`, the noiseless
/// optimum; it shrinks as noise grows.
pub fn t_max<T: Scalar>(params: &GroverParams<T>, eta: T) -> Result<usize> {
    if !(eta > T::zero() && eta <= T::one()) {
        return Err(Error::EtaOutOfRange {
            eta: num_traits::ToPrimitive::to_f64(&eta).unwrap_or(f64::NAN),
        });
    }
    let two_theta = params.angle() + params.angle();
    let value = ((eta.ln() / two_theta).atan() + T::PI()) / two_theta;
    Ok(num_traits::ToPrimitive::to_usize(&value.floor()).unwrap_or(0))
}

/// The maximum bit-phase-flip success probability over integer iteration
/// counts.
///
/// Evaluated at [`t_max`] and verified against its integer neighbourhood
/// (`t_max` comes from a continuous extremum and a floor, so the scan over
/// `t_max - 2 ..= t_max + 2` is authoritative).
pub fn p_max<T: Scalar>(params: &GroverParams<T>, eta: T) -> Result<T> {
    let center = t_max(params, eta)?;
    let mut best = T::zero();
    for t in center.saturating_sub(2)..=center + 2 {
        best = best.max(bit_phase_flip_probability(params, eta, t)?);
    }
    Ok(best)
}

/// How the bit-phase-flip probability compares to the noiseless one at
/// iteration `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOrdering {
    NoisyHigher,
    Equal,
    NoisyLower,
}

/// Classifies `P_bpf(t)` against the ideal `P(t)`.
///
/// Their difference is `(1 - eta^t) cos((2t+1) theta) / 2`, so for
/// `eta < 1` the comparison is exactly the sign of the cosine; crossings
/// within 1e-12 of zero count as equality.
pub fn bpf_vs_ideal_ordering<T: Scalar>(
    params: &GroverParams<T>,
    eta: T,
    t: usize,
) -> IdealOrdering {
    if eta >= T::one() {
        return IdealOrdering::Equal;
    }
    let c = (cast::<T>(2 * t as u64 + 1) * params.angle()).cos();
    if c.abs() <= cast::<T>(1e-12) {
        IdealOrdering::Equal
    } else if c > T::zero() {
        IdealOrdering::NoisyHigher
    } else {
        IdealOrdering::NoisyLower
    }
}

fn clamp_probability<T: Scalar>(p: T) -> Result<T> {
    let slack = guarded_tol::<T>(1e-9);
    if p < -slack || p > T::one() + slack {
        return Err(Error::ProbabilityOutOfRange {
            value: num_traits::ToPrimitive::to_f64(&p).unwrap_or(f64::NAN),
        });
    }
    Ok(p.max(T::zero()).min(T::one()))
}
