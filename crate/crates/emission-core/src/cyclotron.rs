//! Cyclotron analogue: radiative decay of the first Landau level.
//!
//! A charge q of mass M in a uniform magnetic field B radiates from the
//! first excited Landau level to the lowest one at the classical Larmor
//! rate. The transition current has the velocity profile
//!
//!   v^θ = (a/2) cosθ e^{iφ},  v^φ = i (a/2) e^{iφ},  a = √(2/(qB)),
//!
//! which is exactly −(a/√2) ε̂₊₁ — the stretched q = +1 dipole channel. The
//! emitted photon therefore carries one full ħ along z (half spin, half
//! orbital), while the classical Larmor field of a circulating point charge
//! carries L_z/E = 1/ω_c, i.e. ħ/2 per ħω_c at the same energy loss: the
//! quantum field holds twice the classical angular momentum.
//!
//! Energies are in units of ħω_c, angular momenta in ħ, and τ = γ_c t with
//! γ_c = q²ω_c²/(6πM) the Larmor amplitude rate (ħ = c = ε₀ = 1).

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::tolerances::ANGULAR_QUADRATURE_ABS;
use crate::observables::EnergyBreakdown;
use crate::wwa::excited_amplitude;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Weak-damping bound: the rotating-wave treatment needs γ_c ≪ ω_c.
const MAX_DAMPING: f64 = 1e-3;

/// A charge in a uniform magnetic field, decaying between Landau levels.
#[derive(Clone, Copy, Debug)]
pub struct CyclotronSpec {
    charge: f64,
    b_field: f64,
    mass: f64,
}

impl CyclotronSpec {
    /// Validated parameters: all finite and positive, and weakly damped
    /// (γ_c/ω_c ≤ 1e-3) so the exponential-decay treatment applies.
    pub fn new(charge: f64, b_field: f64, mass: f64) -> Result<Self> {
        for (name, v) in [("charge", charge), ("b_field", b_field), ("mass", mass)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTransition(format!(
                    "cyclotron {name} must be finite and positive, got {v}"
                )));
            }
        }
        let spec = Self { charge, b_field, mass };
        let damping = spec.decay_rate() / spec.omega_c();
        if damping > MAX_DAMPING {
            return Err(Error::InvalidTransition(format!(
                "damping gamma_c/omega_c = {damping:.3e} exceeds {MAX_DAMPING:.0e}; \
                 the weak-coupling decay picture does not apply"
            )));
        }
        Ok(spec)
    }

    /// Charge q.
    #[inline]
    pub fn charge(&self) -> f64 {
        self.charge
    }

    /// Field strength B.
    #[inline]
    pub fn b_field(&self) -> f64 {
        self.b_field
    }

    /// Mass M.
    #[inline]
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Cyclotron frequency ω_c = qB/M.
    #[inline]
    pub fn omega_c(&self) -> f64 {
        self.charge * self.b_field / self.mass
    }

    /// Larmor amplitude decay rate γ_c = q²ω_c²/(6πM).
    #[inline]
    pub fn decay_rate(&self) -> f64 {
        let wc = self.omega_c();
        self.charge * self.charge * wc * wc / (6.0 * PI * self.mass)
    }

    /// Magnetic oscillator length a = √(2/(qB)).
    #[inline]
    pub fn oscillator_length(&self) -> f64 {
        (2.0 / (self.charge * self.b_field)).sqrt()
    }

    /// Energy budget at τ = γ_c t, in units of ħω_c: the charge holds
    /// e^{-2τ} of the level spacing, the field the rest.
    pub fn energies(&self, tau: f64) -> EnergyBreakdown {
        let pop = excited_amplitude(tau).powi(2);
        EnergyBreakdown {
            atom: pop,
            field: 1.0 - pop,
            interaction: 0.0,
            total: 1.0,
        }
    }

    /// Field ⟨J_z⟩(τ) in ħ, closed form: the full quantum per photon.
    #[inline]
    pub fn field_angmom_z_closed(&self, tau: f64) -> f64 {
        1.0 - excited_amplitude(tau).powi(2)
    }

    /// Field ⟨J_z⟩(τ) of the classical Larmor field at the same energy
    /// loss: L_z/E = 1/ω_c gives ħ/2 per emitted ħω_c.
    #[inline]
    pub fn classical_field_angmom_z(&self, tau: f64) -> f64 {
        0.5 * (1.0 - excited_amplitude(tau).powi(2))
    }

    /// Field ⟨J_z⟩(τ) by angular quadrature over the velocity emission
    /// pattern, node-doubling checked.
    pub fn field_angmom_z_quadrature(&self, tau: f64) -> Result<f64> {
        let r64 = self.angmom_ratio(64);
        let r128 = self.angmom_ratio(128);
        if (r64 - r128).abs() > ANGULAR_QUADRATURE_ABS {
            return Err(Error::Convergence(format!(
                "cyclotron angular quadrature not converged: {r64:.3e} vs {r128:.3e}"
            )));
        }
        Ok(r128 * (1.0 - excited_amplitude(tau).powi(2)))
    }

    /// J_z carried per unit emitted energy (in ħ/ħω_c), by Gauss-Legendre
    /// quadrature of the angular-momentum flux of the velocity pattern,
    /// normalized by the direction-summed pattern strength
    /// A_c = (a²/2)(8π/3).
    fn angmom_ratio(&self, n: usize) -> f64 {
        let a = self.oscillator_length();
        let (unodes, weights) = gauss_legendre(n);
        let mut total = 0.0;
        for (u, w) in unodes.iter().zip(&weights) {
            let cos_t = *u;
            // v^θ(θ)/e^{iφ} = (a/2) cosθ, v^φ(θ)/e^{iφ} = i a/2;
            // d/dθ[sinθ v^θ] = (a/2)(cos²θ − sin²θ) and the azimuthal
            // charge is q = +1.
            let vphi = Complex64::new(0.0, a / 2.0);
            let d_sin_vtheta = Complex64::new(a / 2.0 * (2.0 * cos_t * cos_t - 1.0), 0.0);
            let flux = (vphi.conj() * (d_sin_vtheta + Complex64::new(0.0, 1.0) * vphi)).im;
            total += w * flux;
        }
        let a_c = (a * a / 2.0) * 8.0 * PI / 3.0;
        2.0 * PI * total / a_c
    }
}
