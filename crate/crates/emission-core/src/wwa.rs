//! Emission kernel, detuning windows, and line integrals.
//!
//! Everything here lives in natural units: ħ = c = ε₀ = 1, time measured as
//! τ = γt with γ the amplitude decay rate (excited amplitude e^{-τ},
//! population e^{-2τ}), detuning measured as Δ = (ω_k − ω₀)/γ, and energies
//! in units of ħω₀. The single dimensionless scale parameter is
//! ratio = ω₀/γ.
//!
//! The photon amplitude for a mode at detuning Δ factorizes into the
//! direction-dependent coupling (see [`crate::angular`]) and the universal
//! kernel
//!
//! kern(Δ, τ) = (e^{-iΔτ} − e^{-τ}) / (1 − iΔ),
//!
//! whose full-line modulus-square integral has the closed form
//! π(1 − e^{-2τ}). Detuning integrals are evaluated over a finite window
//! set by the [`WwaScheme`]; convergent Lorentzian-type integrals are
//! completed with analytic tails, while the ω-weighted pieces stay
//! strictly windowed — that truncation is the physical content of the
//! scheme.

use crate::angular::HalfIntegerJ;
use crate::error::{Error, Result};
use crate::quad::oscillatory_gk_complex;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Marker for the unit system used throughout the crate.
///
/// * ħ = c = ε₀ = 1;
/// * times are τ = γt (amplitude decay rate γ, population decays as e^{-2τ});
/// * detunings are Δ = (ω_k − ω₀)/γ;
/// * energies are reported in units of ħω₀, angular momenta in units of ħ;
/// * radial distances are x = ω₀ r / c.
pub struct NaturalUnits;

impl NaturalUnits {
    /// Dimensionless time from a lab time and amplitude decay rate.
    #[inline]
    pub fn tau(gamma: f64, t: f64) -> f64 {
        gamma * t
    }

    /// Dimensionless detuning from lab frequencies.
    #[inline]
    pub fn detuning(omega_k: f64, omega0: f64, gamma: f64) -> f64 {
        (omega_k - omega0) / gamma
    }
}

/// Amplitude decay rate γ = ω₀³ μ² / [6 (2H+1) π] for an electric-dipole
/// transition with reduced matrix element squared `mu_sq` from an excited
/// level of angular momentum `h` (ħ = c = ε₀ = 1). The emitted population
/// decays at 2γ.
#[inline]
pub fn decay_rate_gamma(omega0: f64, mu_sq: f64, h: HalfIntegerJ) -> f64 {
    omega0.powi(3) * mu_sq / (6.0 * h.multiplicity() as f64 * PI)
}

/// Excited-state amplitude e^{-τ} (population e^{-2τ}).
#[inline]
pub fn excited_amplitude(tau: f64) -> f64 {
    debug_assert!(tau >= 0.0);
    (-tau).exp()
}

/// Universal photon-amplitude kernel kern(Δ, τ) = (e^{-iΔτ} − e^{-τ})/(1 − iΔ).
///
/// Requires τ ≥ 0 (checked at API boundaries; debug-asserted here since
/// this sits in every quadrature hot loop).
#[inline]
pub fn photon_amplitude_kernel(delta: f64, tau: f64) -> Complex64 {
    debug_assert!(tau >= 0.0);
    let osc = Complex64::new(0.0, -delta * tau).exp();
    let decay = (-tau).exp();
    (osc - decay) / Complex64::new(1.0, -delta)
}

/// |kern(Δ, τ)|² = [1 + e^{-2τ} − 2 cos(Δτ) e^{-τ}] / (1 + Δ²), expanded
/// to avoid the cancellation in the complex form at large Δτ.
#[inline]
pub fn photon_kernel_abs2(delta: f64, tau: f64) -> f64 {
    debug_assert!(tau >= 0.0);
    let e = (-tau).exp();
    (1.0 + e * e - 2.0 * (delta * tau).cos() * e) / (1.0 + delta * delta)
}

/// Closed form of the full-line integral ∫|kern|² dΔ = π (1 − e^{-2τ}).
#[inline]
pub fn wwa_line_integral(tau: f64) -> f64 {
    PI * (1.0 - (-2.0 * tau).exp())
}

/// Detuning window of the emission scheme.
///
/// * `Pure`: symmetric window (−W, W). Odd-in-Δ integrands vanish
///   identically, so the interaction energy and the ω-weighting correction
///   are exactly zero.
/// * `Modified`: asymmetric window (−L, U) with L ≪ U, modelling the
///   hard lower cutoff of the mode spectrum. The asymmetry produces the
///   finite interaction energy and ω-weighted corrections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WwaScheme {
    /// Symmetric window (−W, W).
    Pure {
        /// Window half-width W in units of γ.
        half_window: f64,
    },
    /// Asymmetric window (−L, U), L < U.
    Modified {
        /// Lower cutoff L > 0 (window extends to −L).
        lower: f64,
        /// Upper cutoff U > 0.
        upper: f64,
    },
}

impl WwaScheme {
    /// Default symmetric window W = 10⁴.
    pub fn pure() -> Self {
        WwaScheme::Pure { half_window: 1e4 }
    }

    /// Default asymmetric window (−10³, 10⁴).
    pub fn modified() -> Self {
        WwaScheme::Modified { lower: 1e3, upper: 1e4 }
    }

    /// Symmetric window with explicit half-width.
    pub fn pure_with(half_window: f64) -> Result<Self> {
        if !(half_window.is_finite() && half_window >= 100.0) {
            return Err(Error::InvalidScheme(format!(
                "window half-width must be finite and >= 100 gamma, got {half_window}"
            )));
        }
        Ok(WwaScheme::Pure { half_window })
    }

    /// Asymmetric window with explicit cutoffs.
    pub fn modified_with(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower >= 100.0 && upper >= 100.0) {
            return Err(Error::InvalidScheme(format!(
                "cutoffs must be finite and >= 100 gamma, got lower {lower}, upper {upper}"
            )));
        }
        if lower >= upper {
            return Err(Error::InvalidScheme(format!(
                "lower cutoff {lower} must be below upper cutoff {upper}"
            )));
        }
        Ok(WwaScheme::Modified { lower, upper })
    }

    /// Window endpoints (a, b) with a < 0 < b, in units of γ.
    #[inline]
    pub fn window(&self) -> (f64, f64) {
        match *self {
            WwaScheme::Pure { half_window } => (-half_window, half_window),
            WwaScheme::Modified { lower, upper } => (-lower, upper),
        }
    }

    /// Whether the window is symmetric.
    #[inline]
    pub fn is_pure(&self) -> bool {
        matches!(self, WwaScheme::Pure { .. })
    }
}

/// Labels for an excited → ground electric-dipole transition.
#[derive(Clone, Copy, Debug)]
pub struct TransitionSpec {
    h: HalfIntegerJ,
    g: HalfIntegerJ,
    ratio: f64,
}

impl TransitionSpec {
    /// Validate dipole selection rules: |H − G| ≤ 1, not H = G = 0, both
    /// integer or both half-odd-integer, and ω₀/γ at least 10³ (the
    /// narrow-line regime where the kernel description applies).
    pub fn new(h: HalfIntegerJ, g: HalfIntegerJ, ratio: f64) -> Result<Self> {
        if (h.twice() - g.twice()).abs() > 2 {
            return Err(Error::InvalidTransition(format!(
                "dipole selection rules require |H - G| <= 1, got H = {h}, G = {g}"
            )));
        }
        if h.twice() == 0 && g.twice() == 0 {
            return Err(Error::InvalidTransition(
                "H = 0 to G = 0 carries no dipole moment".into(),
            ));
        }
        if (h.twice() + g.twice()) % 2 != 0 {
            return Err(Error::InvalidTransition(format!(
                "H and G must both be integer or both half-integer, got H = {h}, G = {g}"
            )));
        }
        if !(ratio.is_finite() && ratio >= 1e3) {
            return Err(Error::InvalidTransition(format!(
                "omega0/gamma must be finite and >= 1e3, got {ratio}"
            )));
        }
        Ok(Self { h, g, ratio })
    }

    /// Excited-level angular momentum H.
    #[inline]
    pub fn h(&self) -> HalfIntegerJ {
        self.h
    }

    /// Ground-level angular momentum G.
    #[inline]
    pub fn g(&self) -> HalfIntegerJ {
        self.g
    }

    /// Line-strength ratio ω₀/γ.
    #[inline]
    pub fn ratio(&self) -> f64 {
        self.ratio
    }
}

/// Initial excited-state amplitudes over the m_H sublevels.
#[derive(Clone, Debug)]
pub struct InitialState {
    /// (twice m_H, amplitude), sorted by m_H, zero entries dropped.
    amplitudes: Vec<(i32, Complex64)>,
}

impl InitialState {
    /// Build from (twice m_H, amplitude) pairs for the excited level `h`.
    /// Requires every m_H to be a valid sublevel and Σ|c|² = 1 to 1e-10.
    pub fn new(h: HalfIntegerJ, pairs: &[(i32, Complex64)]) -> Result<Self> {
        let mut amplitudes: Vec<(i32, Complex64)> = Vec::new();
        for &(tm, c) in pairs {
            if tm.abs() > h.twice() || (tm - h.twice()) % 2 != 0 {
                return Err(Error::InvalidState(format!(
                    "m_H = {}/2 is not a sublevel of H = {h}",
                    tm
                )));
            }
            if amplitudes.iter().any(|&(t, _)| t == tm) {
                return Err(Error::InvalidState(format!("duplicate m_H = {}/2", tm)));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidState("non-finite amplitude".into()));
            }
            if c.norm_sqr() > 0.0 {
                amplitudes.push((tm, c));
            }
        }
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("state has no nonzero amplitude".into()));
        }
        let norm: f64 = amplitudes.iter().map(|(_, c)| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "state must be normalized: sum |c|^2 = {norm:.12}"
            )));
        }
        amplitudes.sort_by_key(|&(tm, _)| tm);
        Ok(Self { amplitudes })
    }

    /// Single-sublevel basis state |H, m_H⟩.
    pub fn basis(h: HalfIntegerJ, twice_m: i32) -> Result<Self> {
        Self::new(h, &[(twice_m, Complex64::new(1.0, 0.0))])
    }

    /// Amplitude of the m_H sublevel (0 for absent sublevels).
    #[inline]
    pub fn amplitude(&self, twice_m: i32) -> Complex64 {
        self.amplitudes
            .iter()
            .find(|&&(tm, _)| tm == twice_m)
            .map(|&(_, c)| c)
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Occupied sublevels as (twice m_H, amplitude).
    #[inline]
    pub fn occupied(&self) -> &[(i32, Complex64)] {
        &self.amplitudes
    }

    /// Initial magnetic moment ⟨J_z⟩(0) = Σ m_H |c_{m_H}|² in units of ħ.
    pub fn mean_m(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|&(tm, c)| (tm as f64 / 2.0) * c.norm_sqr())
            .sum()
    }
}

/// Validate a τ grid: finite, non-negative, strictly increasing.
pub fn validate_tau_grid(taus: &[f64]) -> Result<()> {
    if taus.is_empty() {
        return Err(Error::InvalidGrid("time grid is empty".into()));
    }
    for pair in taus.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidGrid(format!(
                "time grid must be strictly increasing ({} then {})",
                pair[0], pair[1]
            )));
        }
    }
    if taus.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidGrid("times must be finite and >= 0".into()));
    }
    Ok(())
}

/// Analytic tail ∫_E^∞ |kern|² dΔ of the Lorentzian-type integrand beyond
/// one window edge (the integrand is even, so the same expression covers
/// both edges). Keeps the first integration-by-parts term of the
/// oscillatory piece; the remainder is O(e^{-τ}/(τ² E³)).
fn kernel_abs2_tail(edge: f64, tau: f64) -> f64 {
    let e = (-tau).exp();
    let lorentz = (1.0 + e * e) * (PI / 2.0 - edge.atan());
    if tau == 0.0 {
        // Integrand vanishes identically at τ = 0.
        return 0.0;
    }
    lorentz + 2.0 * e * (edge * tau).sin() / (tau * (1.0 + edge * edge))
}

/// Windowed line integral ∫|kern|² dΔ over the scheme window, completed
/// with the analytic Lorentzian tails so it estimates the full-line value.
pub fn wwa_line_integral_quadrature(tau: f64, scheme: WwaScheme) -> Result<f64> {
    if tau == 0.0 {
        return Ok(0.0);
    }
    let (a, b) = scheme.window();
    let windowed = oscillatory_gk_complex(
        |d| Complex64::new(photon_kernel_abs2(d, tau), 0.0),
        a,
        b,
        tau,
        1e-10,
    )?;
    Ok(windowed.re + kernel_abs2_tail(b, tau) + kernel_abs2_tail(-a, tau))
}

/// Strictly windowed first-moment integral ∫ Δ |kern|² dΔ. This is the
/// ω-weighting correction to the field energy; its window truncation is the
/// physical cutoff content, so no tails are added. Zero for the symmetric
/// window by parity.
pub fn kernel_delta_weighted_integral(tau: f64, scheme: WwaScheme) -> Result<f64> {
    if tau == 0.0 || scheme.is_pure() {
        return Ok(0.0);
    }
    let (a, b) = scheme.window();
    let v = oscillatory_gk_complex(
        |d| Complex64::new(d * photon_kernel_abs2(d, tau), 0.0),
        a,
        b,
        tau,
        1e-9,
    )?;
    Ok(v.re)
}

/// Strictly windowed ∫ Im[kern] dΔ, the overlap driving the interaction
/// energy. Zero for the symmetric window by parity (Im kern is odd in Δ).
pub fn kernel_im_integral(tau: f64, scheme: WwaScheme) -> Result<f64> {
    if tau == 0.0 || scheme.is_pure() {
        return Ok(0.0);
    }
    let (a, b) = scheme.window();
    let v = oscillatory_gk_complex(|d| photon_amplitude_kernel(d, tau), a, b, tau, 1e-10)?;
    Ok(v.im)
}
