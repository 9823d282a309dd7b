//! The standard invariant grid: every cross-cutting property the library
//! promises, runnable as one suite. The CLI `validate` subcommand prints
//! these results; the acceptance tests pin the same tolerances.
//!
//! All checks run in f64.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{closed_form_probability, t_max};
use crate::bloch::noise_bloch_map;
use crate::channel::{ChannelKind, NoiseChannel, Placement};
use crate::grover::GroverParams;
use crate::oracle::{bloch_oracle_crosscheck, kraus_ops, simulate_trace, DensityMatrix2};

/// Contraction factors exercised by the grid checks.
pub const GRID_ETAS: [f64; 7] = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0];

/// Search instances exercised by the grid checks.
pub const GRID_SIZES: [(u64, u64); 6] = [(4, 1), (16, 1), (64, 1), (256, 1), (256, 4), (1024, 1)];

/// The channel families with a closed form (phase damping rides the
/// phase-flip form with gamma = eta^2, depolarizing the bit-phase-flip
/// form with alpha = 1 - eta).
pub const CLOSED_FORM_KINDS: [ChannelKind; 5] = [
    ChannelKind::PhaseFlip,
    ChannelKind::BitFlip,
    ChannelKind::BitPhaseFlip,
    ChannelKind::PhaseDamping,
    ChannelKind::Depolarizing,
];

pub const ORACLE_EQUIVALENCE_TOL: f64 = 1e-9;
pub const PLACEMENT_EQUIVALENCE_TOL: f64 = 1e-12;
pub const CROSSCHECK_TOL: f64 = 1e-12;
pub const ETA_ONE_TOL: f64 = 1e-10;
pub const T_MAX_SLACK: usize = 1;
pub const CPTP_TRACE_TOL: f64 = 1e-12;
pub const CPTP_HERMITICITY_TOL: f64 = 1e-12;
pub const CPTP_MIN_EIGENVALUE: f64 = -1e-10;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_deviation(name: &'static str, deviation: f64, tol: f64) -> Self {
        Self {
            name,
            passed: deviation <= tol,
            detail: format!("max deviation {deviation:.3e} (tolerance {tol:.0e})"),
        }
    }
}

fn grid_params() -> Vec<GroverParams<f64>> {
    GRID_SIZES
        .iter()
        .map(|&(n, m)| GroverParams::new(n, m).expect("grid sizes are valid"))
        .collect()
}

/// Closed forms against the density-matrix oracle over the full grid,
/// `t` up to 4T.
pub fn check_oracle_equivalence() -> CheckResult {
    let mut worst = 0.0f64;
    for params in grid_params() {
        let horizon = 4 * params.optimal_iterations().max(1);
        for kind in CLOSED_FORM_KINDS {
            for &eta in &GRID_ETAS {
                let channel = NoiseChannel::from_eta(kind, eta).expect("grid eta is valid");
                let trace = simulate_trace(&params, &channel, horizon, Placement::PerIteration);
                for &(t, p_oracle) in &trace.points {
                    let p_closed = closed_form_probability(&params, &channel, t)
                        .expect("closed form defined on the grid");
                    worst = worst.max((p_closed - p_oracle).abs());
                }
            }
        }
    }
    CheckResult::from_deviation("oracle-equivalence", worst, ORACLE_EQUIVALENCE_TOL)
}

/// Per-reflection noise with square-rooted contraction against
/// per-iteration noise, pointwise on oracle traces over the grid.
pub fn check_placement_equivalence() -> CheckResult {
    let mut worst = 0.0f64;
    for params in grid_params() {
        let horizon = 4 * params.optimal_iterations().max(1);
        for kind in CLOSED_FORM_KINDS {
            for &eta in &GRID_ETAS {
                let per_iter = NoiseChannel::from_eta(kind, eta).expect("valid eta");
                let per_refl = NoiseChannel::from_eta(kind, eta.sqrt()).expect("valid eta");
                let a = simulate_trace(&params, &per_iter, horizon, Placement::PerIteration);
                let b = simulate_trace(&params, &per_refl, horizon, Placement::PerReflection);
                for (&(_, pa), &(_, pb)) in a.points.iter().zip(&b.points) {
                    worst = worst.max((pa - pb).abs());
                }
            }
        }
    }
    CheckResult::from_deviation("placement-equivalence", worst, PLACEMENT_EQUIVALENCE_TOL)
}

/// Bloch-plane recursion against the density-matrix trace for every
/// diagonalizable channel, both placements.
pub fn check_bloch_oracle_agreement() -> CheckResult {
    let mut worst = 0.0f64;
    for params in grid_params() {
        let horizon = 4 * params.optimal_iterations().max(1);
        for kind in CLOSED_FORM_KINDS {
            for &eta in &GRID_ETAS {
                let channel = NoiseChannel::from_eta(kind, eta).expect("valid eta");
                for placement in [Placement::PerIteration, Placement::PerReflection] {
                    let dev = bloch_oracle_crosscheck(&params, &channel, horizon, placement)
                        .expect("diagonalizable kind");
                    worst = worst.max(dev);
                }
            }
        }
    }
    CheckResult::from_deviation("bloch-oracle-crosscheck", worst, CROSSCHECK_TOL)
}

/// The phase-flip/phase-damping and bit-phase-flip/depolarizing pairs
/// share reduced matrices entrywise exactly.
pub fn check_channel_aliasing() -> CheckResult {
    let pairs = [
        (ChannelKind::PhaseFlip, ChannelKind::PhaseDamping),
        (ChannelKind::BitPhaseFlip, ChannelKind::Depolarizing),
    ];
    for &eta in &GRID_ETAS {
        for (a, b) in pairs {
            let ma = crate::bloch::reduced_noise_matrix(&NoiseChannel::from_eta(a, eta).unwrap())
                .expect("diagonalizable");
            let mb = crate::bloch::reduced_noise_matrix(&NoiseChannel::from_eta(b, eta).unwrap())
                .expect("diagonalizable");
            if ma.0 != mb.0 {
                return CheckResult {
                    name: "channel-aliasing",
                    passed: false,
                    detail: format!("{a} vs {b} differ at eta = {eta}"),
                };
            }
        }
    }
    CheckResult {
        name: "channel-aliasing",
        passed: true,
        detail: "reduced matrices identical across the eta grid".into(),
    }
}

/// Bit-phase-flip argmax scans match the analytic extremum within one
/// iteration across the grid.
pub fn check_t_max_consistency() -> CheckResult {
    let mut worst: usize = 0;
    for params in grid_params() {
        let horizon = 2 * params.optimal_iterations().max(1);
        for &eta in &GRID_ETAS {
            let channel = NoiseChannel::from_eta(ChannelKind::BitPhaseFlip, eta).unwrap();
            let trace = simulate_trace(&params, &channel, horizon, Placement::PerIteration);
            let analytic = t_max(&params, eta).expect("eta in (0, 1]");
            worst = worst.max(trace.argmax_t.abs_diff(analytic));
        }
    }
    CheckResult {
        name: "t-max-consistency",
        passed: worst <= T_MAX_SLACK,
        detail: format!("max |scan - analytic| = {worst} (allowed {T_MAX_SLACK})"),
    }
}

/// With the identity channel every trace reproduces the noiseless
/// probabilities out to 4T.
pub fn check_eta_one_reduction() -> CheckResult {
    let mut worst = 0.0f64;
    for params in grid_params() {
        let horizon = 4 * params.optimal_iterations().max(1);
        let trace = simulate_trace(
            &params,
            &NoiseChannel::identity(),
            horizon,
            Placement::PerIteration,
        );
        for &(t, p) in &trace.points {
            worst = worst.max((p - params.ideal_success_probability(t)).abs());
        }
    }
    CheckResult::from_deviation("eta-one-reduction", worst, ETA_ONE_TOL)
}

/// Randomized CPTP sanity: `samples` channel applications on random
/// states preserve trace, Hermiticity and positivity. Amplitude damping
/// is included here even though the analytic checks skip it.
pub fn check_cptp_random(samples: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e015e);
    let mut worst_trace = 0.0f64;
    let mut worst_herm = 0.0f64;
    let mut worst_eig = 0.0f64;
    for _ in 0..samples {
        let rho = DensityMatrix2::from_bloch(random_ball(&mut rng));
        let channel = random_channel(&mut rng);
        let out = rho.apply_kraus(&kraus_ops(&channel));
        worst_trace = worst_trace.max((out.trace().re - 1.0).abs().max(out.trace().im.abs()));
        worst_herm = worst_herm.max(out.hermiticity_deviation());
        worst_eig = worst_eig.min(out.min_eigenvalue());
    }
    let passed = worst_trace <= CPTP_TRACE_TOL
        && worst_herm <= CPTP_HERMITICITY_TOL
        && worst_eig >= CPTP_MIN_EIGENVALUE;
    CheckResult {
        name: "cptp-random",
        passed,
        detail: format!(
            "{samples} samples (amplitude damping included): trace dev {worst_trace:.2e}, \
             hermiticity {worst_herm:.2e}, min eigenvalue {worst_eig:.2e}"
        ),
    }
}

/// Kraus application then Bloch readout equals Bloch readout then the
/// channel's affine map, on random states across every channel family.
pub fn check_kraus_bloch_dictionary(samples: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1c7);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let r = random_ball(&mut rng);
        let channel = random_channel(&mut rng);
        let via_kraus = DensityMatrix2::from_bloch(r)
            .apply_kraus(&kraus_ops(&channel))
            .bloch_vector();
        let via_map = noise_bloch_map(&channel).apply(r);
        for i in 0..3 {
            worst = worst.max((via_kraus[i] - via_map[i]).abs());
        }
    }
    CheckResult::from_deviation("kraus-bloch-dictionary", worst, 1e-12)
}

fn random_ball(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let r = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        if r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 1.0 {
            return r;
        }
    }
}

fn random_channel(rng: &mut ChaCha8Rng) -> NoiseChannel<f64> {
    match rng.gen_range(0..7) {
        0 => NoiseChannel::bit_flip(rng.gen_range(0.5..=1.0)).unwrap(),
        1 => NoiseChannel::phase_flip(rng.gen_range(0.5..=1.0)).unwrap(),
        2 => NoiseChannel::bit_phase_flip(rng.gen_range(0.5..=1.0)).unwrap(),
        3 => NoiseChannel::depolarizing(rng.gen_range(0.0..=1.0)).unwrap(),
        4 => NoiseChannel::phase_damping(rng.gen_range(0.0..=1.0)).unwrap(),
        5 => NoiseChannel::amplitude_damping(rng.gen_range(0.0..=1.0)).unwrap(),
        _ => NoiseChannel::identity(),
    }
}

/// Runs every check in the standard suite.
pub fn standard_suite() -> Vec<CheckResult> {
    vec![
        check_oracle_equivalence(),
        check_placement_equivalence(),
        check_bloch_oracle_agreement(),
        check_channel_aliasing(),
        check_t_max_consistency(),
        check_eta_one_reduction(),
        check_kraus_bloch_dictionary(500),
        check_cptp_random(10_000),
    ]
}
