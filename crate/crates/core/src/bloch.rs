//! The search dynamics on the Bloch sphere.
//!
//! Because the initial state and every operator are real in the
//! {non-target, target} basis, `r_y` stays zero and the whole evolution
//! lives in the (r_x, r_z) plane. The oracle is the reflection
//! `O = [[-1, 0], [0, 1]]`, the diffusion operator is
//! `R = [[-cos 2theta, sin 2theta], [sin 2theta, cos 2theta]]`, and one
//! noiseless iteration is the rotation `G = R O`. Sign placement in `G`
//! is fixed by requirement, not transcription: iterating it from the
//! initial vector `(sin theta, cos theta)` must reproduce
//! `sin^2((2t+1) theta/2)`, and every noisy composition must agree with
//! the density-matrix oracle. `G = [[cos 2theta, sin 2theta],
//! [-sin 2theta, cos 2theta]]` satisfies both.

use std::ops::Mul;

use crate::channel::{ChannelKind, NoiseChannel, Placement};
use crate::error::{Error, Result};
use crate::grover::GroverParams;
use crate::scalar::{cast, guarded_tol, Scalar};

/// Reduced Bloch vector of the search state; `r_y` is identically zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState<T> {
    pub r_x: T,
    pub r_z: T,
}

impl<T: Scalar> BlochState<T> {
    pub fn new(r_x: T, r_z: T) -> Self {
        Self { r_x, r_z }
    }

    /// Bloch vector of the uniform superposition: `(sin theta, cos theta)`.
    pub fn grover_initial(params: &GroverParams<T>) -> Self {
        Self::new(params.angle().sin(), params.angle().cos())
    }

    /// `r_x^2 + r_z^2`; at most 1 for physical states.
    pub fn norm_sq(&self) -> T {
        self.r_x * self.r_x + self.r_z * self.r_z
    }
}

/// A real 2x2 matrix acting on the (r_x, r_z) column vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T: Scalar> Mat2<T> {
    pub fn identity() -> Self {
        Mat2([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    pub fn diagonal(a: T, b: T) -> Self {
        Mat2([[a, T::zero()], [T::zero(), b]])
    }

    pub fn apply(&self, s: BlochState<T>) -> BlochState<T> {
        BlochState::new(
            self.0[0][0] * s.r_x + self.0[0][1] * s.r_z,
            self.0[1][0] * s.r_x + self.0[1][1] * s.r_z,
        )
    }

    pub fn det(&self) -> T {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        Mat2([
            [self.0[0][0], self.0[1][0]],
            [self.0[0][1], self.0[1][1]],
        ])
    }

    /// Integer matrix power by repeated squaring.
    pub fn pow(&self, mut exp: usize) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).abs());
            }
        }
        worst
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: Mat2<T>) -> Mat2<T> {
        let mut out = [[T::zero(); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.0[r][0] * rhs.0[0][c] + self.0[r][1] * rhs.0[1][c];
            }
        }
        Mat2(out)
    }
}

/// Affine map on the full Bloch vector: `r -> linear r + offset`.
///
/// Every channel here except amplitude damping has a diagonal `linear`
/// part and zero offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineBlochMap<T> {
    pub linear: [[T; 3]; 3],
    pub offset: [T; 3],
}

impl<T: Scalar> AffineBlochMap<T> {
    pub fn diagonal(dx: T, dy: T, dz: T) -> Self {
        let z = T::zero();
        Self {
            linear: [[dx, z, z], [z, dy, z], [z, z, dz]],
            offset: [z, z, z],
        }
    }

    pub fn apply(&self, r: [T; 3]) -> [T; 3] {
        let mut out = self.offset;
        for (i, row) in self.linear.iter().enumerate() {
            out[i] = out[i] + row[0] * r[0] + row[1] * r[1] + row[2] * r[2];
        }
        out
    }
}

/// The oracle reflection on (r_x, r_z): `[[-1, 0], [0, 1]]`.
pub fn oracle_matrix<T: Scalar>() -> Mat2<T> {
    Mat2([[-T::one(), T::zero()], [T::zero(), T::one()]])
}

/// The diffusion reflection on (r_x, r_z).
pub fn reflection_matrix<T: Scalar>(params: &GroverParams<T>) -> Mat2<T> {
    let two_theta = params.angle() + params.angle();
    let (s, c) = (two_theta.sin(), two_theta.cos());
    Mat2([[-c, s], [s, c]])
}

/// One noiseless iteration on (r_x, r_z): the rotation `R O`.
pub fn grover_matrix<T: Scalar>(params: &GroverParams<T>) -> Mat2<T> {
    let two_theta = params.angle() + params.angle();
    let (s, c) = (two_theta.sin(), two_theta.cos());
    Mat2([[c, s], [-s, c]])
}

/// The channel's action on the full Bloch vector (r_x, r_y, r_z).
pub fn noise_bloch_map<T: Scalar>(channel: &NoiseChannel<T>) -> AffineBlochMap<T> {
    let one = T::one();
    match channel.kind() {
        ChannelKind::BitFlip => {
            let eta = channel.effective_eta().expect("flip channel has eta");
            AffineBlochMap::diagonal(one, eta, eta)
        }
        ChannelKind::PhaseFlip => {
            let eta = channel.effective_eta().expect("flip channel has eta");
            AffineBlochMap::diagonal(eta, eta, one)
        }
        ChannelKind::BitPhaseFlip => {
            let eta = channel.effective_eta().expect("flip channel has eta");
            AffineBlochMap::diagonal(eta, one, eta)
        }
        ChannelKind::Depolarizing => {
            let keep = one - channel.raw_param();
            AffineBlochMap::diagonal(keep, keep, keep)
        }
        ChannelKind::PhaseDamping => {
            let root = channel.raw_param().sqrt();
            AffineBlochMap::diagonal(root, root, one)
        }
        ChannelKind::AmplitudeDamping => {
            let gamma = channel.raw_param();
            let root = gamma.sqrt();
            let mut map = AffineBlochMap::diagonal(root, root, gamma);
            map.offset[2] = one - gamma;
            map
        }
        ChannelKind::Identity => AffineBlochMap::diagonal(one, one, one),
    }
}

/// The channel restricted to the (r_x, r_z) plane, where it is diagonal.
///
/// Phase flip and phase damping contract r_x; bit flip contracts r_z;
/// bit-phase flip and depolarizing contract both. Amplitude damping is
/// rejected: its z action is affine.
pub fn reduced_noise_matrix<T: Scalar>(channel: &NoiseChannel<T>) -> Result<Mat2<T>> {
    let eta = channel
        .effective_eta()
        .map_err(|_| Error::NotDiagonalizable {
            context: "reduced_noise_matrix",
        })?;
    let one = T::one();
    Ok(match channel.kind() {
        ChannelKind::PhaseFlip | ChannelKind::PhaseDamping => Mat2::diagonal(eta, one),
        ChannelKind::BitFlip => Mat2::diagonal(one, eta),
        ChannelKind::BitPhaseFlip | ChannelKind::Depolarizing => Mat2::diagonal(eta, eta),
        ChannelKind::Identity => Mat2::identity(),
        ChannelKind::AmplitudeDamping => unreachable!("rejected above"),
    })
}

/// Advances the state by one noisy Grover iteration.
///
/// `PerIteration` applies `R O E`; `PerReflection` applies `R E O E`.
/// Squaring the per-reflection contraction entries reproduces the
/// per-iteration dynamics exactly, which the tests exercise.
pub fn noisy_grover_step<T: Scalar>(
    state: BlochState<T>,
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    placement: Placement,
) -> Result<BlochState<T>> {
    let noise = reduced_noise_matrix(channel)?;
    let next = match placement {
        Placement::PerIteration => grover_matrix(params).apply(noise.apply(state)),
        Placement::PerReflection => {
            let after_first = oracle_matrix().apply(noise.apply(state));
            reflection_matrix(params).apply(noise.apply(after_first))
        }
    };
    Ok(next)
}

/// Success probability `(1 - r_z)/2` of a state, clamped to [0, 1].
///
/// Clamping only absorbs rounding within 1e-9 slack; a larger excursion
/// of |r_z| past 1 means an upstream numerical bug and is an error.
pub fn success_from_state<T: Scalar>(state: BlochState<T>) -> Result<T> {
    let slack = guarded_tol::<T>(1e-9);
    if state.r_z.abs() > T::one() + slack {
        return Err(Error::BlochBallEscape {
            r_z_abs: num_traits::ToPrimitive::to_f64(&state.r_z.abs()).unwrap_or(f64::NAN),
        });
    }
    let p = (T::one() - state.r_z) * cast::<T>(0.5);
    Ok(p.max(T::zero()).min(T::one()))
}

/// Success probabilities along `t_end` noisy iterations, starting at `t = 0`.
pub fn success_trace<T: Scalar>(
    params: &GroverParams<T>,
    channel: &NoiseChannel<T>,
    t_end: usize,
    placement: Placement,
) -> Result<Vec<T>> {
    let mut state = BlochState::grover_initial(params);
    let mut points = Vec::with_capacity(t_end + 1);
    points.push(success_from_state(state)?);
    for _ in 0..t_end {
        state = noisy_grover_step(state, params, channel, placement)?;
        points.push(success_from_state(state)?);
    }
    Ok(points)
}
