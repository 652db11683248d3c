//! Spontaneous-emission field observables in the Schrödinger picture.
//!
//! One excited atom (or Landau level) decays into the photon vacuum under
//! the rotating-wave and Weisskopf-Wigner approximations. This crate
//! computes, in closed form and by independent numerics, everything the
//! emitted field carries:
//!
//! * **energy** split between atom, field, and interaction term
//!   ([`energies_closed`], [`energies_quadrature`]),
//! * **angular momentum** along z, split into atomic share, total field
//!   share, and the field's spin/orbital parts, for any electric-dipole
//!   transition H → G between arbitrary angular momenta
//!   ([`angular_momentum_breakdown`]),
//! * the **radial energy-density profile** of the outgoing pulse, with the
//!   near-zone structure and the causal front ([`radial_profile`],
//!   [`total_field_energy`]),
//! * a discretized **mode-bath decay oracle** that shares no mathematics
//!   with the closed forms and arbitrates them ([`modebath`]),
//! * the **cyclotron analogue**: decay of the first Landau level, whose
//!   photon carries twice the classical Larmor angular momentum
//!   ([`CyclotronSpec`]).
//!
//! # Units
//!
//! ħ = c = ε₀ = 1 throughout. Time appears as τ = γt with γ the amplitude
//! decay rate (population decays as e^{-2τ}). Detunings Δ = (ω_k − ω₀)/γ,
//! radii x = ω₀ r/c, energies in ħω₀, angular momenta in ħ. The single
//! dimensionless scale is ratio = ω₀/γ (≥ 10³, default 10⁶).
//!
//! # Scheme
//!
//! The detuning window is either symmetric about ω₀ ([`WwaScheme::pure`],
//! every odd moment vanishes and closed forms are exact) or cut off at the
//! physical ω = 0 ([`WwaScheme::modified`], leaving O(1/ratio) residuals
//! and strict causality). All quadrature entry points take the scheme
//! explicitly.

pub mod angular;
pub mod cyclotron;
pub mod error;
pub mod modebath;
pub mod observables;
pub mod quad;
pub mod radial;
pub mod tolerances;
pub mod wwa;

pub use angular::{clebsch_gordan, HalfIntegerJ};
pub use num_complex::Complex64;
pub use cyclotron::CyclotronSpec;
pub use error::{Error, Result};
pub use modebath::{
    fitted_decay_rate, simulate, spectrum_lorentzian_check, wwa_deviation, DecayTrajectory,
    DensityProfile, LorentzianFit, ModeGridSpec,
};
pub use observables::{
    angular_momentum_breakdown, atom_angmom_z, energies_closed, energies_quadrature,
    field_angmom_z_closed, field_angmom_z_numeric, spin_orbital_angmom_z,
    AngularMomentumBreakdown, EnergyBreakdown, HgCoefficient,
};
pub use radial::{
    energy_density_classical, energy_density_farfield, energy_density_wwa, q_alpha,
    radial_profile, total_field_energy, RadialPoint, RadialProfile,
};
pub use wwa::{
    excited_amplitude, photon_amplitude_kernel, photon_kernel_abs2, wwa_line_integral,
    InitialState, TransitionSpec, WwaScheme,
};
