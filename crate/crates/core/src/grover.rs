//! Search-instance geometry: database size, target count and the rotation
//! angle they induce on the reduced two-dimensional search plane.

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};

/// A Grover search instance over `N` items with `m` targets.
///
/// The derived angles are the ones the whole library runs on: `half_angle`
/// is `arcsin sqrt(m/N)` (half the rotation per iteration in state space)
/// and `angle` is twice that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverParams<T> {
    n_items: u64,
    n_targets: u64,
    half_angle: T,
    angle: T,
}

impl<T: Scalar> GroverParams<T> {
    /// Builds the instance, rejecting empty or oversized target sets.
    pub fn new(n_items: u64, n_targets: u64) -> Result<Self> {
        if n_items < 2 || n_targets == 0 || n_targets > n_items {
            return Err(Error::InvalidSearchInstance { n_items, n_targets });
        }
        let ratio = cast::<T>(n_targets) / cast::<T>(n_items);
        let half_angle = ratio.sqrt().asin();
        Ok(Self {
            n_items,
            n_targets,
            half_angle,
            angle: half_angle + half_angle,
        })
    }

    pub fn n_items(&self) -> u64 {
        self.n_items
    }

    pub fn n_targets(&self) -> u64 {
        self.n_targets
    }

    /// `arcsin sqrt(m/N)`, in radians.
    pub fn half_angle(&self) -> T {
        self.half_angle
    }

    /// The full per-iteration rotation angle `theta = 2 arcsin sqrt(m/N)`.
    pub fn angle(&self) -> T {
        self.angle
    }

    /// `m/N`, the overlap of the uniform state with the target subspace.
    pub fn target_fraction(&self) -> T {
        cast::<T>(self.n_targets) / cast::<T>(self.n_items)
    }

    /// Success probability of the noiseless search after `t` iterations:
    /// `sin^2((2t+1) theta/2)`.
    pub fn ideal_success_probability(&self, t: usize) -> T {
        let theta_t = cast::<T>(2 * t as u64 + 1) * self.half_angle;
        let s = theta_t.sin();
        s * s
    }

    /// The iteration count `floor(pi/4 sqrt(N/m))` maximizing the noiseless
    /// success probability.
    pub fn optimal_iterations(&self) -> usize {
        let ratio = cast::<T>(self.n_items) / cast::<T>(self.n_targets);
        let t = T::FRAC_PI_4() * ratio.sqrt();
        num_traits::ToPrimitive::to_usize(&t.floor()).expect("iteration count fits in usize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn angles_match_defining_formula() {
        let p = GroverParams::<f64>::new(256, 1).unwrap();
        assert_abs_diff_eq!(p.half_angle(), (1.0f64 / 16.0).asin(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.half_angle().sin().powi(2), 1.0 / 256.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.angle(), 2.0 * p.half_angle(), epsilon = 0.0);

        let p = GroverParams::<f64>::new(4, 1).unwrap();
        assert_abs_diff_eq!(p.half_angle(), std::f64::consts::FRAC_PI_6, epsilon = 1e-15);

        let p = GroverParams::<f64>::new(2, 1).unwrap();
        assert_abs_diff_eq!(p.half_angle(), std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
    }

    #[test]
    fn rejects_degenerate_instances() {
        assert!(matches!(
            GroverParams::<f64>::new(256, 0),
            Err(Error::InvalidSearchInstance { .. })
        ));
        assert!(matches!(
            GroverParams::<f64>::new(4, 5),
            Err(Error::InvalidSearchInstance { .. })
        ));
        assert!(matches!(
            GroverParams::<f64>::new(1, 1),
            Err(Error::InvalidSearchInstance { .. })
        ));
        assert!(GroverParams::<f64>::new(2, 2).is_ok());
    }

    #[test]
    fn ideal_probability_examples() {
        let p = GroverParams::<f64>::new(4, 1).unwrap();
        assert_abs_diff_eq!(p.ideal_success_probability(1), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.ideal_success_probability(0), 0.25, epsilon = 1e-15);

        let p = GroverParams::<f64>::new(256, 1).unwrap();
        assert_abs_diff_eq!(p.ideal_success_probability(0), 1.0 / 256.0, epsilon = 1e-15);
        // sin^2(25 arcsin(1/16)), frozen from direct evaluation.
        assert_abs_diff_eq!(
            p.ideal_success_probability(12),
            0.9999470421032736,
            epsilon = 1e-12
        );
    }

    #[test]
    fn optimal_iteration_counts() {
        assert_eq!(GroverParams::<f64>::new(256, 1).unwrap().optimal_iterations(), 12);
        assert_eq!(GroverParams::<f64>::new(4, 1).unwrap().optimal_iterations(), 1);
        assert_eq!(GroverParams::<f64>::new(1024, 1).unwrap().optimal_iterations(), 25);
    }
}
