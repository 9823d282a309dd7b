//! Inverts the noise-to-performance map: how much contraction a channel
//! may apply while the search still reaches a requested success
//! probability, and how the query count compares to the classical N/2
//! baseline at success 1/2.

use crate::channel::{ChannelKind, NoiseChannel, Placement};
use crate::error::{Error, Result};
use crate::grover::GroverParams;
use crate::oracle::simulate_trace;
use crate::scalar::{cast, Scalar};

/// Bisection width for the returned eta.
const ETA_RESOLUTION: f64 = 1e-7;

/// Result of a noise-threshold query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult<T> {
    /// Smallest contraction factor still reaching the request.
    pub eta_star: T,
    /// Iteration attaining the peak at `eta_star`.
    pub t_at_threshold: usize,
    pub p_requested: T,
    pub p_achieved: T,
    pub channel_kind: ChannelKind,
    /// Expected queries of the classical baseline: N/2.
    pub classical_queries: T,
    /// Oracle queries the noisy search spends: `t_at_threshold`.
    pub quantum_queries: usize,
}

impl<T: Scalar> ThresholdResult<T> {
    pub fn quantum_advantage(&self) -> bool {
        cast::<T>(self.quantum_queries as u64) < self.classical_queries
    }
}

/// Query-count comparison for a fixed channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryComparison<T> {
    pub channel_kind: ChannelKind,
    /// The channel's raw parameter (p, gamma or alpha).
    pub noise_param: T,
    pub p_requested: T,
    /// Probability at the first iteration meeting the request.
    pub p_achieved: T,
    pub quantum_queries: usize,
    pub classical_queries: T,
    pub advantage: bool,
}

/// Peak success probability (and the iteration attaining it) of the
/// channel kind at contraction `eta`, scanned over `t in [0, horizon]`
/// on the density-matrix oracle.
pub fn scan_peak<T: Scalar>(
    params: &GroverParams<T>,
    kind: ChannelKind,
    eta: T,
    horizon: usize,
) -> Result<(usize, T)> {
    let channel = NoiseChannel::from_eta(kind, eta)?;
    let trace = simulate_trace(params, &channel, horizon, Placement::PerIteration);
    Ok((trace.argmax_t, trace.p_max))
}

/// Finds the smallest eta whose peak success probability reaches
/// `p_requested`, by bisection over (0, 1].
///
/// The scan horizon is `2T`: beyond the first oscillation period the
/// envelope only shrinks, so the global peak lies inside it (spot-checked
/// by the tests out to 8T). Monotonicity of the peak in eta is audited on
/// a coarse grid before bisecting and the bracket is re-checked at every
/// step; a violation aborts loudly rather than returning an invalid
/// bracket.
pub fn eta_threshold<T: Scalar>(
    params: &GroverParams<T>,
    kind: ChannelKind,
    p_requested: T,
) -> Result<ThresholdResult<T>> {
    let half = cast::<T>(0.5);
    let requested_f64 = num_traits::ToPrimitive::to_f64(&p_requested).unwrap_or(f64::NAN);
    if !(p_requested > half && p_requested <= T::one()) {
        return Err(Error::TrivialRequest {
            requested: requested_f64,
        });
    }
    let horizon = 2 * params.optimal_iterations();

    audit_monotonicity(params, kind, horizon)?;

    let (_, ideal_peak) = scan_peak(params, kind, T::one(), horizon)?;
    if ideal_peak < p_requested {
        return Err(Error::NoThresholdExists {
            requested: requested_f64,
            ideal_max: num_traits::ToPrimitive::to_f64(&ideal_peak).unwrap_or(f64::NAN),
        });
    }

    let mut lo = cast::<T>(1e-6);
    let (_, p_lo) = scan_peak(params, kind, lo, horizon)?;
    if p_lo >= p_requested {
        return Err(Error::TrivialRequest {
            requested: requested_f64,
        });
    }
    let mut hi = T::one();
    let width = cast::<T>(ETA_RESOLUTION);
    while hi - lo > width {
        let mid = half * (lo + hi);
        let (_, p_mid) = scan_peak(params, kind, mid, horizon)?;
        if p_mid >= p_requested {
            hi = mid;
        } else {
            lo = mid;
        }
        // Bracket invariant: peak(lo) < requested <= peak(hi).
        let (_, p_lo_now) = scan_peak(params, kind, lo, horizon)?;
        let (_, p_hi_now) = scan_peak(params, kind, hi, horizon)?;
        if !(p_lo_now < p_requested && p_requested <= p_hi_now) {
            return Err(Error::MonotonicityViolated {
                detail: format!(
                    "bracket broke at eta in [{lo}, {hi}]: peaks [{p_lo_now}, {p_hi_now}]"
                ),
            });
        }
    }

    let (t_at_threshold, p_achieved) = scan_peak(params, kind, hi, horizon)?;
    Ok(ThresholdResult {
        eta_star: hi,
        t_at_threshold,
        p_requested,
        p_achieved,
        channel_kind: kind,
        classical_queries: cast::<T>(params.n_items()) * half,
        quantum_queries: t_at_threshold,
    })
}

fn audit_monotonicity<T: Scalar>(
    params: &GroverParams<T>,
    kind: ChannelKind,
    horizon: usize,
) -> Result<()> {
    let mut last: Option<(f64, T)> = None;
    for i in 1..=20 {
        let eta = cast::<T>(i as f64 * 0.05);
        let (_, peak) = scan_peak(params, kind, eta, horizon)?;
        if let Some((prev_eta, prev_peak)) = last {
            if peak < prev_peak - cast::<T>(1e-12) {
                return Err(Error::MonotonicityViolated {
                    detail: format!(
                        "peak fell from {prev_peak} at eta={prev_eta} to {peak} at eta={}",
                        i as f64 * 0.05
                    ),
                });
            }
        }
        last = Some((i as f64 * 0.05, peak));
    }
    Ok(())
}

/// Smallest iteration count at which the given channel reaches
/// `p_requested`, against the classical N/2 baseline.
///
/// Scans the oracle trace out to 4T; a request the trace never meets is
/// an error carrying the best probability seen.
pub fn speedup_report<T: Scalar>(
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    p_requested: T,
) -> Result<QueryComparison<T>> {
    let requested_f64 = num_traits::ToPrimitive::to_f64(&p_requested).unwrap_or(f64::NAN);
    if !(p_requested > T::zero() && p_requested <= T::one()) {
        return Err(Error::ProbabilityOutOfRange {
            value: requested_f64,
        });
    }
    let horizon = 4 * params.optimal_iterations().max(1);
    let trace = simulate_trace(params, channel, horizon, Placement::PerIteration);
    let hit = trace.points.iter().find(|&&(_, p)| p >= p_requested);
    match hit {
        Some(&(t, p)) => {
            let classical_queries = cast::<T>(params.n_items()) * cast::<T>(0.5);
            Ok(QueryComparison {
                channel_kind: channel.kind(),
                noise_param: channel.raw_param(),
                p_requested,
                p_achieved: p,
                quantum_queries: t,
                classical_queries,
                advantage: cast::<T>(t as u64) < classical_queries,
            })
        }
        None => Err(Error::TargetUnreachable {
            requested: requested_f64,
            achieved: num_traits::ToPrimitive::to_f64(&trace.p_max).unwrap_or(f64::NAN),
        }),
    }
}
