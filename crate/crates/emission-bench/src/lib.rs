//! Shared fixtures for the kernel benchmarks: one representative dipole
//! transition with a stretched initial state, and a small but physical
//! mode bath.

use emission_core::modebath::DensityProfile;
use emission_core::{HalfIntegerJ, InitialState, ModeGridSpec, TransitionSpec};

/// Default frequency-to-rate ratio used throughout the benchmarks.
pub const RATIO: f64 = 1e6;

/// H = 2 → G = 1, a transition with a non-trivial emission pattern.
pub fn transition() -> TransitionSpec {
    TransitionSpec::new(HalfIntegerJ::integer(2), HalfIntegerJ::integer(1), RATIO)
        .expect("valid dipole transition")
}

/// Stretched initial state m_H = H.
pub fn stretched(spec: &TransitionSpec) -> InitialState {
    InitialState::basis(spec.h(), spec.h().twice()).expect("valid sublevel")
}

/// 1000 flat-density modes over ±50γ: small enough to iterate quickly,
/// large enough that the integrator's per-mode loop dominates.
pub fn small_bath() -> ModeGridSpec {
    ModeGridSpec::new(1000, 50.0, DensityProfile::Flat, RATIO).expect("valid mode grid")
}
