//! Cross-module integration: the standard invariant suite must come back
//! green, and the generic core must remain usable at f32.

use grover_noise::oracle::simulate_trace;
use grover_noise::validation;
use grover_noise::{ChannelKind, GroverParams, NoiseChannel, Placement};

#[test]
fn standard_suite_is_green() {
    for check in validation::standard_suite() {
        assert!(check.passed, "{}: {}", check.name, check.detail);
    }
}

#[test]
fn f32_instantiation_is_usable() {
    let params = GroverParams::<f32>::new(256, 1).unwrap();
    assert_eq!(params.optimal_iterations(), 12);

    let channel = NoiseChannel::<f32>::from_eta(ChannelKind::BitPhaseFlip, 0.9).unwrap();
    let trace = simulate_trace(&params, &channel, 24, Placement::PerIteration);
    let reference = {
        let params = GroverParams::<f64>::new(256, 1).unwrap();
        let channel = NoiseChannel::<f64>::from_eta(ChannelKind::BitPhaseFlip, 0.9).unwrap();
        simulate_trace(&params, &channel, 24, Placement::PerIteration)
    };
    for (&(_, p32), &(_, p64)) in trace.points.iter().zip(&reference.points) {
        assert!((p32 as f64 - p64).abs() < 1e-4);
    }

    let closed = grover_noise::analytic::bit_phase_flip_probability(&params, 0.9f32, 10).unwrap();
    assert!((closed as f64 - reference.points[10].1).abs() < 1e-4);
}
