//! Ground-truth simulator: exact 2x2 density-matrix evolution in the
//! {non-target, target} basis, with channels applied in operator-sum form.
//!
//! Nothing here touches the Bloch-plane machinery or the closed forms;
//! the only shared input is the search geometry. Every analytic result is
//! accepted only if it matches this module. Full complex arithmetic is
//! used even though the reachable set is real in this basis, keeping the
//! two evaluation paths independent.

use num_complex::Complex;

use crate::bloch::{noisy_grover_step, success_from_state, BlochState};
use crate::channel::{ChannelKind, NoiseChannel, Placement};
use crate::error::{Error, Result};
use crate::grover::GroverParams;
use crate::scalar::{cast, Scalar};

/// A 2x2 complex matrix in the {non-target, target} basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Scalar> CMat2<T> {
    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        CMat2([[one, zero], [zero, one]])
    }

    pub fn adjoint(&self) -> Self {
        CMat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = [[zero; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.0[r][0] * rhs.0[0][c] + self.0[r][1] * rhs.0[1][c];
            }
        }
        CMat2(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    fn scaled(&self, s: T) -> Self {
        let factor = Complex::new(s, T::zero());
        CMat2([
            [self.0[0][0] * factor, self.0[0][1] * factor],
            [self.0[1][0] * factor, self.0[1][1] * factor],
        ])
    }
}

/// A density matrix over the two-dimensional search subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2<T> {
    m: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> DensityMatrix2<T> {
    /// Wraps raw entries after checking Hermiticity, unit trace and
    /// positive semidefiniteness to the usual tolerances.
    pub fn new(entries: [[Complex<T>; 2]; 2]) -> Result<Self> {
        let rho = Self { m: entries };
        rho.validate()?;
        Ok(rho)
    }

    /// The pure state `a |chi0> + b |chi1>` as a projector.
    pub fn from_pure(a: Complex<T>, b: Complex<T>) -> Self {
        Self {
            m: [
                [a * a.conj(), a * b.conj()],
                [b * a.conj(), b * b.conj()],
            ],
        }
    }

    /// The uniform superposition `cos(theta/2) |chi0> + sin(theta/2) |chi1>`.
    pub fn grover_initial(params: &GroverParams<T>) -> Self {
        let half = params.half_angle();
        Self::from_pure(
            Complex::new(half.cos(), T::zero()),
            Complex::new(half.sin(), T::zero()),
        )
    }

    /// Reconstructs the matrix from a Bloch vector: `(I + r . sigma) / 2`.
    pub fn from_bloch(r: [T; 3]) -> Self {
        let half = cast::<T>(0.5);
        Self {
            m: [
                [
                    Complex::new(half * (T::one() + r[2]), T::zero()),
                    Complex::new(half * r[0], -half * r[1]),
                ],
                [
                    Complex::new(half * r[0], half * r[1]),
                    Complex::new(half * (T::one() - r[2]), T::zero()),
                ],
            ],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row][col]
    }

    /// Probability of measuring the target superposition: the real part
    /// of the target-target entry.
    pub fn p_success(&self) -> T {
        self.m[1][1].re
    }

    /// The Bloch vector `(tr(rho X), tr(rho Y), tr(rho Z))`.
    pub fn bloch_vector(&self) -> [T; 3] {
        [
            (self.m[0][1] + self.m[1][0]).re,
            (self.m[0][1] - self.m[1][0]).im.neg(),
            (self.m[0][0] - self.m[1][1]).re,
        ]
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    /// `tr(rho^2)`; 1 for pure states, decreasing under noise.
    pub fn purity(&self) -> T {
        self.mul_trace(self)
    }

    fn mul_trace(&self, other: &Self) -> T {
        let mut acc = Complex::new(T::zero(), T::zero());
        for r in 0..2 {
            for c in 0..2 {
                acc = acc + self.m[r][c] * other.m[c][r];
            }
        }
        acc.re
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> T {
        let half = cast::<T>(0.5);
        let mean = (self.m[0][0].re + self.m[1][1].re) * half;
        let diff = (self.m[0][0].re - self.m[1][1].re) * half;
        let off = self.m[0][1].norm();
        mean - (diff * diff + off * off).sqrt()
    }

    /// Max deviation from Hermiticity (including imaginary diagonals).
    pub fn hermiticity_deviation(&self) -> T {
        let cross = (self.m[1][0] - self.m[0][1].conj()).norm();
        cross.max(self.m[0][0].im.abs()).max(self.m[1][1].im.abs())
    }

    /// Checks the density-matrix invariants at the standard tolerances.
    pub fn validate(&self) -> Result<()> {
        let tol = cast::<T>(1e-12);
        let herm = self.hermiticity_deviation();
        let trace_dev = (self.trace() - Complex::new(T::one(), T::zero())).norm();
        let det = (self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]).re;
        let diag_floor = self.m[0][0].re.min(self.m[1][1].re);
        if herm > tol || trace_dev > tol || det < -tol || diag_floor < -tol {
            return Err(Error::ProbabilityOutOfRange {
                value: num_traits::ToPrimitive::to_f64(&self.p_success()).unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// `U rho U^dag`.
    pub fn conjugated(&self, u: &CMat2<T>) -> Self {
        let m = u.mul(&CMat2(self.m)).mul(&u.adjoint());
        Self { m: m.0 }
    }

    /// Operator-sum application without the completeness check.
    pub fn apply_kraus(&self, kraus: &KrausSet<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        let mut acc = [[zero; 2]; 2];
        for op in kraus.ops() {
            let term = op.mul(&CMat2(self.m)).mul(&op.adjoint());
            for (acc_row, term_row) in acc.iter_mut().zip(&term.0) {
                for (cell, &value) in acc_row.iter_mut().zip(term_row) {
                    *cell = *cell + value;
                }
            }
        }
        Self { m: acc }
    }
}

/// A set of Kraus operators defining a trace-preserving channel.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet<T> {
    ops: Vec<CMat2<T>>,
}

impl<T: Scalar> KrausSet<T> {
    /// Wraps the operators without validation; [`KrausSet::completeness_deviation`]
    /// reports how far they are from trace preservation.
    pub fn new(ops: Vec<CMat2<T>>) -> Self {
        Self { ops }
    }

    pub fn ops(&self) -> &[CMat2<T>] {
        &self.ops
    }

    /// Max entry deviation of `sum E^dag E` from the identity.
    pub fn completeness_deviation(&self) -> T {
        let zero = Complex::new(T::zero(), T::zero());
        let mut acc = CMat2([[zero; 2]; 2]);
        for op in &self.ops {
            let term = op.adjoint().mul(op);
            for r in 0..2 {
                for c in 0..2 {
                    acc.0[r][c] = acc.0[r][c] + term.0[r][c];
                }
            }
        }
        acc.max_abs_diff(&CMat2::identity())
    }
}

fn pauli_x<T: Scalar>() -> CMat2<T> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    CMat2([[zero, one], [one, zero]])
}

fn pauli_y<T: Scalar>() -> CMat2<T> {
    let i = Complex::new(T::zero(), T::one());
    let zero = Complex::new(T::zero(), T::zero());
    CMat2([[zero, -i], [i, zero]])
}

fn pauli_z<T: Scalar>() -> CMat2<T> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    CMat2([[one, zero], [zero, -one]])
}

/// The operator-sum representation of a channel.
///
/// Flip channels keep the state under `sqrt(p) I` and flip under
/// `sqrt(1-p)` times the Pauli; the damping channels use their standard
/// matrices with `gamma` the retention probability. Depolarizing mixes
/// toward `I/2` with probability `alpha`, i.e. operators
/// `sqrt(1 - 3 alpha/4) I` and `sqrt(alpha/4) {X, Y, Z}` (the `alpha/4`
/// weight is forced by trace preservation and by the `(1 - alpha)` Bloch
/// contraction). Zero-coefficient operators are dropped.
pub fn kraus_ops<T: Scalar>(channel: &NoiseChannel<T>) -> KrausSet<T> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let ops = match channel.kind() {
        ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => {
            let p = channel.raw_param();
            let flip = match channel.kind() {
                ChannelKind::BitFlip => pauli_x(),
                ChannelKind::PhaseFlip => pauli_z(),
                _ => pauli_y(),
            };
            let mut ops = Vec::with_capacity(2);
            if p > T::zero() {
                ops.push(CMat2::identity().scaled(p.sqrt()));
            }
            if p < T::one() {
                ops.push(flip.scaled((T::one() - p).sqrt()));
            }
            ops
        }
        ChannelKind::Depolarizing => {
            let alpha = channel.raw_param();
            let quarter = alpha * cast::<T>(0.25);
            let keep = T::one() - cast::<T>(3.0) * quarter;
            let mut ops = Vec::with_capacity(4);
            if keep > T::zero() {
                ops.push(CMat2::identity().scaled(keep.sqrt()));
            }
            if quarter > T::zero() {
                let w = quarter.sqrt();
                ops.push(pauli_x().scaled(w));
                ops.push(pauli_y().scaled(w));
                ops.push(pauli_z().scaled(w));
            }
            ops
        }
        ChannelKind::PhaseDamping => {
            let gamma = channel.raw_param();
            let mut ops = vec![CMat2([
                [one, zero],
                [zero, Complex::new(gamma.sqrt(), T::zero())],
            ])];
            if gamma < T::one() {
                ops.push(CMat2([
                    [zero, zero],
                    [zero, Complex::new((T::one() - gamma).sqrt(), T::zero())],
                ]));
            }
            ops
        }
        ChannelKind::AmplitudeDamping => {
            let gamma = channel.raw_param();
            let mut ops = vec![CMat2([
                [one, zero],
                [zero, Complex::new(gamma.sqrt(), T::zero())],
            ])];
            if gamma < T::one() {
                ops.push(CMat2([
                    [zero, Complex::new((T::one() - gamma).sqrt(), T::zero())],
                    [zero, zero],
                ]));
            }
            ops
        }
        ChannelKind::Identity => vec![CMat2::identity()],
    };
    KrausSet::new(ops)
}

/// Applies the operator sum after validating trace preservation.
pub fn apply_channel<T: Scalar>(
    rho: &DensityMatrix2<T>,
    kraus: &KrausSet<T>,
) -> Result<DensityMatrix2<T>> {
    let deviation = kraus.completeness_deviation();
    if deviation > cast::<T>(1e-12) {
        return Err(Error::IncompleteKrausSet {
            deviation: num_traits::ToPrimitive::to_f64(&deviation).unwrap_or(f64::NAN),
        });
    }
    Ok(rho.apply_kraus(kraus))
}

/// One noiseless Grover iteration as a unitary: rotation by `theta`.
pub fn grover_unitary<T: Scalar>(params: &GroverParams<T>) -> CMat2<T> {
    let (s, c) = (params.angle().sin(), params.angle().cos());
    let zero = T::zero();
    CMat2([
        [Complex::new(c, zero), Complex::new(-s, zero)],
        [Complex::new(s, zero), Complex::new(c, zero)],
    ])
}

/// The two reflections: `O = diag(1, -1)` about the non-target axis and
/// `R = 2 |psi0><psi0| - I` about the uniform superposition. Their
/// product `R O` is [`grover_unitary`].
pub fn oracle_and_reflection_unitaries<T: Scalar>(
    params: &GroverParams<T>,
) -> (CMat2<T>, CMat2<T>) {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let oracle = CMat2([[one, zero], [zero, -one]]);
    let (s, c) = (params.angle().sin(), params.angle().cos());
    let reflection = CMat2([
        [Complex::new(c, T::zero()), Complex::new(s, T::zero())],
        [Complex::new(s, T::zero()), Complex::new(-c, T::zero())],
    ]);
    (oracle, reflection)
}

/// Per-iteration success probabilities of one simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace<T> {
    pub params: GroverParams<T>,
    pub channel: NoiseChannel<T>,
    pub placement: Placement,
    /// `(t, p_success)` for `t = 0 ..= t_end`.
    pub points: Vec<(usize, T)>,
    /// First iteration attaining the maximum.
    pub argmax_t: usize,
    pub p_max: T,
}

/// Evolves the density matrix for `t_end` iterations and records the
/// success probability after each.
///
/// Per iteration the channel acts first, then the oracle reflection, then
/// (for per-reflection placement) the channel again, then the diffusion
/// reflection. Every channel is supported, including amplitude damping.
pub fn simulate_trace<T: Scalar>(
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    t_end: usize,
    placement: Placement,
) -> SimulationTrace<T> {
    let kraus = kraus_ops(channel);
    let (oracle_u, reflection_u) = oracle_and_reflection_unitaries(params);
    let mut rho = DensityMatrix2::grover_initial(params);
    let mut points = Vec::with_capacity(t_end + 1);
    points.push((0, rho.p_success()));
    for t in 1..=t_end {
        rho = rho.apply_kraus(&kraus);
        rho = rho.conjugated(&oracle_u);
        if placement == Placement::PerReflection {
            rho = rho.apply_kraus(&kraus);
        }
        rho = rho.conjugated(&reflection_u);
        points.push((t, rho.p_success()));
    }
    let (argmax_t, p_max) = peak(&points);
    SimulationTrace {
        params: *params,
        channel: *channel,
        placement,
        points,
        argmax_t,
        p_max,
    }
}

fn peak<T: Scalar>(points: &[(usize, T)]) -> (usize, T) {
    let mut best = points[0];
    for &(t, p) in &points[1..] {
        if p > best.1 {
            best = (t, p);
        }
    }
    best
}

/// First `(t, p)` attaining the trace maximum; ties break toward smaller `t`.
pub fn argmax_scan<T: Scalar>(trace: &SimulationTrace<T>) -> Result<(usize, T)> {
    if trace.points.is_empty() {
        return Err(Error::EmptyTrace);
    }
    Ok(peak(&trace.points))
}

/// Max deviation over `t` between the density-matrix trace and the
/// Bloch-plane step recursion. Contract: at most 1e-12 for every
/// diagonalizable channel.
pub fn bloch_oracle_crosscheck<T: Scalar>(
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    t_end: usize,
    placement: Placement,
) -> Result<T> {
    if !channel.is_diagonalizable() {
        return Err(Error::NotDiagonalizable {
            context: "bloch_oracle_crosscheck",
        });
    }
    let dm = simulate_trace(params, channel, t_end, placement);
    let mut state = BlochState::grover_initial(params);
    let mut worst = (dm.points[0].1 - success_from_state(state)?).abs();
    for &(_, p_dm) in &dm.points[1..] {
        state = noisy_grover_step(state, params, channel, placement)?;
        worst = worst.max((p_dm - success_from_state(state)?).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(n: u64, m: u64) -> GroverParams<f64> {
        GroverParams::new(n, m).unwrap()
    }

    fn all_kinds() -> Vec<NoiseChannel<f64>> {
        vec![
            NoiseChannel::bit_flip(0.8).unwrap(),
            NoiseChannel::phase_flip(0.85).unwrap(),
            NoiseChannel::bit_phase_flip(0.9).unwrap(),
            NoiseChannel::depolarizing(0.3).unwrap(),
            NoiseChannel::phase_damping(0.6).unwrap(),
            NoiseChannel::amplitude_damping(0.7).unwrap(),
            NoiseChannel::identity(),
        ]
    }

    #[test]
    fn kraus_sets_are_complete() {
        for ch in all_kinds() {
            let dev = kraus_ops(&ch).completeness_deviation();
            assert!(dev <= 1e-12, "{:?}: {dev}", ch.kind());
        }
    }

    #[test]
    fn kraus_examples() {
        // p = 1 keeps only the identity operator and acts trivially.
        let ch = NoiseChannel::bit_flip(1.0f64).unwrap();
        let ks = kraus_ops(&ch);
        assert_eq!(ks.ops().len(), 1);
        let rho = DensityMatrix2::grover_initial(&params(4, 1));
        let out = apply_channel(&rho, &ks).unwrap();
        assert!(out.entry(0, 0).re - rho.entry(0, 0).re < 1e-15);

        // Phase damping: diag(1, sqrt(gamma)) and diag(0, sqrt(1-gamma)).
        let ch = NoiseChannel::phase_damping(0.64f64).unwrap();
        let ks = kraus_ops(&ch);
        assert_abs_diff_eq!(ks.ops()[0].0[1][1].re, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(ks.ops()[1].0[1][1].re, 0.6, epsilon = 1e-15);
        assert_eq!(ks.ops()[1].0[0][0].re, 0.0);

        // alpha = 0 degenerates to the single identity operator.
        let ch = NoiseChannel::depolarizing(0.0f64).unwrap();
        assert_eq!(kraus_ops(&ch).ops().len(), 1);
        let ch = NoiseChannel::depolarizing(0.3f64).unwrap();
        assert_eq!(kraus_ops(&ch).ops().len(), 4);
    }

    #[test]
    fn apply_channel_examples() {
        let rho = DensityMatrix2::grover_initial(&params(256, 1));

        let id = kraus_ops(&NoiseChannel::<f64>::identity());
        let out = apply_channel(&rho, &id).unwrap();
        assert!(out.entry(0, 1).norm() - rho.entry(0, 1).norm() < 1e-15);

        // Full depolarizing sends any pure state to I/2.
        let crush = kraus_ops(&NoiseChannel::depolarizing(1.0f64).unwrap());
        let out = apply_channel(&rho, &crush).unwrap();
        assert_abs_diff_eq!(out.entry(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(out.entry(1, 1).re, 0.5, epsilon = 1e-15);
        assert!(out.entry(0, 1).norm() <= 1e-15);

        // Phase flip scales the coherence by 2p - 1 and fixes the diagonals.
        let p = 0.8f64;
        let pf = kraus_ops(&NoiseChannel::phase_flip(p).unwrap());
        let out = apply_channel(&rho, &pf).unwrap();
        assert_abs_diff_eq!(
            out.entry(0, 1).re,
            (2.0 * p - 1.0) * rho.entry(0, 1).re,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(out.entry(1, 1).re, rho.entry(1, 1).re, epsilon = 1e-15);

        // An incomplete set is rejected.
        let bad = KrausSet::new(vec![CMat2::<f64>::identity().scaled(0.9)]);
        assert!(matches!(
            apply_channel(&rho, &bad),
            Err(Error::IncompleteKrausSet { .. })
        ));
    }

    #[test]
    fn grover_unitary_rotates_by_theta() {
        let p = params(256, 1);
        let u = grover_unitary(&p);
        // |psi0> -> cos(3 theta/2)|chi0> + sin(3 theta/2)|chi1>.
        let half = p.half_angle();
        let v = [
            Complex::new(half.cos(), 0.0),
            Complex::new(half.sin(), 0.0),
        ];
        let rotated = [
            u.0[0][0] * v[0] + u.0[0][1] * v[1],
            u.0[1][0] * v[0] + u.0[1][1] * v[1],
        ];
        assert_abs_diff_eq!(rotated[0].re, (1.5 * p.angle()).cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(rotated[1].re, (1.5 * p.angle()).sin(), epsilon = 1e-14);

        // Unitarity.
        assert!(u.adjoint().mul(&u).max_abs_diff(&CMat2::identity()) <= 1e-14);

        // N = 4: one iteration lands exactly on the target state.
        let p = params(4, 1);
        let u = grover_unitary(&p);
        let half = p.half_angle();
        let v = [
            Complex::new(half.cos(), 0.0),
            Complex::new(half.sin(), 0.0),
        ];
        let rotated = [
            u.0[0][0] * v[0] + u.0[0][1] * v[1],
            u.0[1][0] * v[0] + u.0[1][1] * v[1],
        ];
        assert!(rotated[0].norm() <= 1e-15);
        assert_abs_diff_eq!(rotated[1].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn reflections_compose_into_the_iteration() {
        for (n, m) in [(4u64, 1u64), (256, 1), (256, 4), (1024, 1)] {
            let p = params(n, m);
            let (o, r) = oracle_and_reflection_unitaries(&p);
            assert!(o.mul(&o).max_abs_diff(&CMat2::identity()) <= 1e-14);
            assert!(r.mul(&r).max_abs_diff(&CMat2::identity()) <= 1e-14);
            assert!(r.mul(&o).max_abs_diff(&grover_unitary(&p)) <= 1e-14);
        }
        // O negates the target component.
        let (o, _) = oracle_and_reflection_unitaries(&params(4, 1));
        assert_abs_diff_eq!(o.0[1][1].re, -1.0, epsilon = 0.0);
    }

    #[test]
    fn trace_examples() {
        let p = params(256, 1);
        let ideal = simulate_trace(&p, &NoiseChannel::identity(), 48, Placement::PerIteration);
        assert_abs_diff_eq!(ideal.points[0].1, 1.0 / 256.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ideal.points[12].1, 0.9999470421032736, epsilon = 1e-12);
        for &(t, p_t) in &ideal.points {
            assert_abs_diff_eq!(p_t, p.ideal_success_probability(t), epsilon = 1e-12);
        }
        assert_eq!(argmax_scan(&ideal).unwrap().0, 12);

        // Bit-phase flip matches its closed form pointwise.
        let ch = NoiseChannel::from_eta(ChannelKind::BitPhaseFlip, 0.8f64).unwrap();
        let trace = simulate_trace(&p, &ch, 100, Placement::PerIteration);
        for &(t, p_t) in &trace.points {
            let closed = crate::analytic::bit_phase_flip_probability(&p, 0.8, t).unwrap();
            assert_abs_diff_eq!(p_t, closed, epsilon = 1e-12);
        }

        // Heavier bit-phase noise peaks strictly earlier than the ideal 12.
        let ch = NoiseChannel::from_eta(ChannelKind::BitPhaseFlip, 0.7f64).unwrap();
        let trace = simulate_trace(&p, &ch, 24, Placement::PerIteration);
        assert!(trace.argmax_t < 12);

        // m = N: the success probability is constantly 1; ties break to t = 0.
        let full = params(2, 2);
        let trace = simulate_trace(&full, &NoiseChannel::identity(), 10, Placement::PerIteration);
        assert_eq!(argmax_scan(&trace).unwrap(), (0, trace.points[0].1));
        assert_abs_diff_eq!(trace.points[7].1, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cptp_invariants_along_trajectories() {
        let p = params(256, 1);
        for ch in all_kinds() {
            let kraus = kraus_ops(&ch);
            let (o, r) = oracle_and_reflection_unitaries(&p);
            let mut rho = DensityMatrix2::grover_initial(&p);
            let mut purity_before = rho.purity();
            for t in 0..60 {
                let after_channel = rho.apply_kraus(&kraus);
                // Purity decay holds for the unital (diagonalizable) kinds;
                // amplitude damping may re-purify toward the ground state.
                if ch.is_diagonalizable() {
                    assert!(
                        after_channel.purity() <= purity_before + 1e-12,
                        "{:?} raised purity at t={t}",
                        ch.kind()
                    );
                }
                rho = after_channel.conjugated(&o).conjugated(&r);
                purity_before = rho.purity();
                assert!((rho.trace().re - 1.0).abs() <= 1e-12);
                assert!(rho.hermiticity_deviation() <= 1e-12);
                assert!(rho.min_eigenvalue() >= -1e-10);
                rho.validate().unwrap();
            }
        }
    }

    #[test]
    fn crosscheck_examples() {
        let p = params(256, 1);
        assert!(
            bloch_oracle_crosscheck(&p, &NoiseChannel::identity(), 48, Placement::PerIteration)
                .unwrap()
                <= 1e-13
        );
        let pf = NoiseChannel::from_eta(ChannelKind::PhaseFlip, 0.9f64).unwrap();
        assert!(bloch_oracle_crosscheck(&p, &pf, 50, Placement::PerIteration).unwrap() <= 1e-12);
        let bf = NoiseChannel::bit_flip(0.9f64).unwrap();
        assert!(bloch_oracle_crosscheck(&p, &bf, 50, Placement::PerReflection).unwrap() <= 1e-12);
        let ad = NoiseChannel::amplitude_damping(0.5f64).unwrap();
        assert!(matches!(
            bloch_oracle_crosscheck(&p, &ad, 10, Placement::PerIteration),
            Err(Error::NotDiagonalizable { .. })
        ));
    }

    #[test]
    fn amplitude_damping_drains_to_the_ground_state() {
        // gamma = 0 is total decay: every state collapses onto |chi0>.
        let ch = NoiseChannel::amplitude_damping(0.0f64).unwrap();
        let kraus = kraus_ops(&ch);
        let rho = DensityMatrix2::grover_initial(&params(4, 1));
        let out = rho.apply_kraus(&kraus);
        assert_abs_diff_eq!(out.entry(0, 0).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.entry(1, 1).re, 0.0, epsilon = 1e-15);
        let r = out.bloch_vector();
        assert_abs_diff_eq!(r[2], 1.0, epsilon = 1e-15);
    }

    proptest! {
        // Applying a channel then reading the Bloch vector equals reading
        // the Bloch vector then applying the channel's affine map.
        #[test]
        fn kraus_bloch_dictionary(
            x in -1.0f64..1.0,
            y in -1.0f64..1.0,
            z in -1.0f64..1.0,
            kind_idx in 0usize..7,
        ) {
            prop_assume!(x * x + y * y + z * z <= 1.0);
            let channels = [
                NoiseChannel::bit_flip(0.8).unwrap(),
                NoiseChannel::phase_flip(0.7).unwrap(),
                NoiseChannel::bit_phase_flip(0.95).unwrap(),
                NoiseChannel::depolarizing(0.25).unwrap(),
                NoiseChannel::phase_damping(0.5).unwrap(),
                NoiseChannel::amplitude_damping(0.6).unwrap(),
                NoiseChannel::identity(),
            ];
            let ch = &channels[kind_idx];
            let rho = DensityMatrix2::from_bloch([x, y, z]);
            let via_kraus = rho.apply_kraus(&kraus_ops(ch)).bloch_vector();
            let via_map = crate::bloch::noise_bloch_map(ch).apply([x, y, z]);
            for i in 0..3 {
                prop_assert!((via_kraus[i] - via_map[i]).abs() <= 1e-12);
            }
        }

        #[test]
        fn bloch_round_trip(x in -1.0f64..1.0, z in -1.0f64..1.0) {
            prop_assume!(x * x + z * z <= 1.0);
            let rho = DensityMatrix2::from_bloch([x, 0.0, z]);
            rho.validate().unwrap();
            let r = rho.bloch_vector();
            prop_assert!((r[0] - x).abs() <= 1e-14);
            prop_assert!(r[1].abs() <= 1e-14);
            prop_assert!((r[2] - z).abs() <= 1e-14);
        }
    }
}
