//! Radial structure of the emitted field energy.
//!
//! Distances are x = ω₀ r / c; densities are reported dimensionless as
//! w̃ = w c / (ħ ω₀ γ), so the total field energy in units of ħω₀ is
//! (1/ratio) ∫ w̃ dx. At time τ the field amplitude at radius x is carried
//! by the three detuning integrals
//!
//! Q_α(x, τ) = ∫ kern(Δ, τ) j_α(x (1 + Δ/ratio)) dΔ,  α = 0, 1, 2,
//!
//! over the scheme window, combining into the quadrature density
//! w̃ = (x²/3π²) [2|Q₀|² + 3|Q₁|² + |Q₂|²]. Three x-regimes get three
//! evaluation strategies (see [`q_alpha`]); the closed near-zone form
//! w̃ = (x²/3) e^{-2τ} [2j₀² + 3j₁² + j₂²], the retarded far-field form
//! 2 e^{-2s} (s = τ − x/ratio), and the classical dipole reference
//! 2 e^{-2s} (1 + x⁻² + 1.5 x⁻⁴) complete the picture.

use crate::error::{Error, Result};
use crate::quad::{oscillatory_gk_complex, simpson_uniform};
use crate::wwa::{photon_amplitude_kernel, WwaScheme};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Spherical Bessel function j_α(x) for α = 0, 1, 2.
///
/// Below |x| = 0.5 the ascending series
/// j_α(x) = x^α/(2α+1)!! · [1 − (x²/2)/(2α+3) + ...] avoids the
/// cancellation of the trigonometric forms; above, the closed forms are
/// exact and stable. Parity j_α(−x) = (−1)^α j_α(x) holds in both branches.
#[inline]
pub fn spherical_bessel_j(alpha: u8, x: f64) -> f64 {
    debug_assert!(alpha <= 2);
    if x.abs() < 0.5 {
        // Series with term recurrence t_k = t_{k-1} · (−x²/2)/(k(2α+2k+1)).
        let double_fact = [1.0, 3.0, 15.0][alpha as usize];
        let lead = x.powi(alpha as i32) / double_fact;
        let half_sq = 0.5 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..20 {
            term *= -half_sq / (k as f64 * (2 * alpha as i32 + 2 * k + 1) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        return lead * sum;
    }
    let (s, c) = x.sin_cos();
    match alpha {
        0 => s / x,
        1 => s / (x * x) - c / x,
        _ => (3.0 / (x * x * x) - 1.0 / x) * s - 3.0 * c / (x * x),
    }
}

/// Outgoing spherical Hankel function h⁽¹⁾_α(x) = j_α(x) + i y_α(x) for
/// α = 0, 1, 2 and x > 0.
#[inline]
pub fn spherical_hankel1(alpha: u8, x: f64) -> Complex64 {
    debug_assert!(alpha <= 2 && x > 0.0);
    let phase = Complex64::new(0.0, x).exp() / x;
    let i = Complex64::new(0.0, 1.0);
    match alpha {
        0 => -i * phase,
        1 => -phase * Complex64::new(1.0, 1.0 / x),
        _ => i * phase * Complex64::new(1.0 - 3.0 / (x * x), 3.0 / x),
    }
}

/// Legendre polynomial P_α(u) for α = 0, 1, 2.
#[inline]
fn legendre(alpha: u8, u: f64) -> f64 {
    match alpha {
        0 => 1.0,
        1 => u,
        _ => 0.5 * (3.0 * u * u - 1.0),
    }
}

/// ∫₀^c u^n e^{zu} du for n = 0, 1, 2, closed form by parts.
fn exp_moment(n: u8, c: f64, z: Complex64) -> Complex64 {
    let e = (z * c).exp();
    let one = Complex64::new(1.0, 0.0);
    match n {
        0 => (e - one) / z,
        1 => e * c / z - (e - one) / (z * z),
        _ => e * c * c / z - 2.0 * e * c / (z * z) + 2.0 * (e - one) / (z * z * z),
    }
}

/// Acausal remainder of Q_α beyond the light front for the symmetric
/// (pure) window: the band-limited estimate
/// (π/2)(−i)^α e^{-τ} ∫₀^{min(1,κ)} P_α(u) e^{(x/ratio + ix)u} du,
/// κ = τ·ratio/x. O(1/x) in amplitude — structurally present, numerically
/// invisible in the density.
fn q_acausal(alpha: u8, x: f64, tau: f64, ratio: f64) -> Complex64 {
    let kappa = tau * ratio / x;
    let c = kappa.min(1.0);
    let z = Complex64::new(x / ratio, x);
    let integral = if z.norm() < 1e-3 {
        // z → 0: the closed forms cancel; the integrand is polynomial-flat.
        oscillatory_gk_complex(
            |u| Complex64::new(legendre(alpha, u), 0.0) * (z * u).exp(),
            0.0,
            c,
            x,
            1e-14,
        )
        .expect("smooth finite-range integral")
    } else {
        match alpha {
            0 => exp_moment(0, c, z),
            1 => exp_moment(1, c, z),
            _ => 0.5 * (3.0 * exp_moment(2, c, z) - exp_moment(0, c, z)),
        }
    };
    let minus_i_pow = match alpha {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        _ => Complex64::new(-1.0, 0.0),
    };
    0.5 * PI * minus_i_pow * (-tau).exp() * integral
}

/// Radial detuning integral Q_α(x, τ) over the scheme window.
///
/// Three regimes, matched at their seams:
///
/// * x ≤ 100 — principal-value decomposition: the full-line reference
///   π e^{-τ} j_α(x) plus the windowed difference integral
///   ∫ kern · [j_α(x(1+Δ/ratio)) − j_α(x)] dΔ. (The raw windowed integral
///   loses up to half the reference near Bessel zeros to the logarithmic
///   window asymmetry; the decomposition removes that exactly.)
/// * 100 < x ≤ 2·10⁴ — literal windowed quadrature, which resolves the
///   physical morph of the standing near-zone pattern into the retarded
///   outgoing wave.
/// * x > 2·10⁴ — stationary-phase closed form π h⁽¹⁾_α(x) e^{-s},
///   s = τ − x/ratio (the advanced image cancels on the full line).
///
/// Beyond the light front (τ·ratio < x) the causal result is zero; the
/// modified scheme returns exactly that, the pure scheme adds the acausal
/// window remainder.
pub fn q_alpha(alpha: u8, x: f64, tau: f64, scheme: WwaScheme, ratio: f64) -> Result<Complex64> {
    if alpha > 2 {
        return Err(Error::Domain(format!("Q_alpha defined for alpha <= 2, got {alpha}")));
    }
    if !(x.is_finite() && x >= 0.0) || !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!("need finite x >= 0, tau >= 0, got x={x}, tau={tau}")));
    }
    if !(ratio.is_finite() && ratio >= 1e3) {
        return Err(Error::Domain(format!("omega0/gamma must be >= 1e3, got {ratio}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if tau == 0.0 {
        return Ok(zero);
    }
    if x == 0.0 {
        // j_α(0) = δ_{α0}; the difference term vanishes identically.
        return Ok(Complex64::new(PI * (-tau).exp() * spherical_bessel_j(alpha, 0.0), 0.0));
    }
    if tau * ratio < x {
        // Beyond the light front.
        return Ok(match scheme {
            WwaScheme::Modified { .. } => zero,
            WwaScheme::Pure { .. } => q_acausal(alpha, x, tau, ratio),
        });
    }
    let (a, b) = scheme.window();
    let omega = tau + x / ratio;
    if x <= 100.0 {
        let reference = PI * (-tau).exp() * spherical_bessel_j(alpha, x);
        let jx = spherical_bessel_j(alpha, x);
        let diff = oscillatory_gk_complex(
            |d| {
                photon_amplitude_kernel(d, tau)
                    * (spherical_bessel_j(alpha, x * (1.0 + d / ratio)) - jx)
            },
            a,
            b,
            omega,
            1e-8,
        )?;
        return Ok(reference + diff);
    }
    if x <= 2e4 {
        return oscillatory_gk_complex(
            |d| {
                photon_amplitude_kernel(d, tau)
                    * spherical_bessel_j(alpha, x * (1.0 + d / ratio))
            },
            a,
            b,
            omega,
            1e-8,
        );
    }
    let s = tau - x / ratio;
    Ok(PI * spherical_hankel1(alpha, x) * (-s).exp())
}

/// Closed near-zone density w̃ = (x²/3) e^{-2τ} [2j₀² + 3j₁² + j₂²];
/// valid for x ≲ 100 (standing-wave zone, no retardation).
#[inline]
pub fn energy_density_wwa(x: f64, tau: f64) -> f64 {
    let j0 = spherical_bessel_j(0, x);
    let j1 = spherical_bessel_j(1, x);
    let j2 = spherical_bessel_j(2, x);
    (x * x / 3.0) * (-2.0 * tau).exp() * (2.0 * j0 * j0 + 3.0 * j1 * j1 + j2 * j2)
}

/// Retarded far-field density 2 e^{-2s} Θ(s), s = τ − x/ratio.
#[inline]
pub fn energy_density_farfield(x: f64, tau: f64, ratio: f64) -> f64 {
    let s = tau - x / ratio;
    if s <= 0.0 {
        0.0
    } else {
        2.0 * (-2.0 * s).exp()
    }
}

/// Classical point-dipole density 2 e^{-2s} (1 + x⁻² + 1.5 x⁻⁴) Θ(s).
/// The x → 0 pole makes x ≤ 0 a domain error.
pub fn energy_density_classical(x: f64, tau: f64, ratio: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(
            "classical dipole density diverges at x = 0".into(),
        ));
    }
    let s = tau - x / ratio;
    if s <= 0.0 {
        return Ok(0.0);
    }
    let x2 = x * x;
    Ok(2.0 * (-2.0 * s).exp() * (1.0 + 1.0 / x2 + 1.5 / (x2 * x2)))
}

/// Quadrature density w̃ = (x²/3π²) [2|Q₀|² + 3|Q₁|² + |Q₂|²].
pub fn energy_density_quadrature(
    x: f64,
    tau: f64,
    scheme: WwaScheme,
    ratio: f64,
) -> Result<f64> {
    let q0 = q_alpha(0, x, tau, scheme, ratio)?.norm_sqr();
    let q1 = q_alpha(1, x, tau, scheme, ratio)?.norm_sqr();
    let q2 = q_alpha(2, x, tau, scheme, ratio)?.norm_sqr();
    Ok(x * x / (3.0 * PI * PI) * (2.0 * q0 + 3.0 * q1 + q2))
}

/// One radial sample of all four density columns.
#[derive(Clone, Copy, Debug)]
pub struct RadialPoint {
    /// Radius x = ω₀ r / c.
    pub x: f64,
    /// Closed near-zone density.
    pub closed: f64,
    /// Windowed-quadrature density.
    pub quadrature: f64,
    /// Retarded far-field density.
    pub farfield: f64,
    /// Classical dipole reference; `None` at x = 0 where it diverges.
    pub classical: Option<f64>,
}

/// Radial density profile at fixed τ.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    /// Evolution time τ.
    pub tau: f64,
    /// Samples, strictly increasing in x; the requested grid is augmented
    /// with points straddling the light front x = ratio·τ.
    pub points: Vec<RadialPoint>,
    /// Validity notes (closed form used beyond its zone, classical pole).
    pub warnings: Vec<String>,
}

/// Compute the full profile on `xs` (finite, non-negative, strictly
/// increasing), augmented with light-front straddle points.
pub fn radial_profile(
    xs: &[f64],
    tau: f64,
    scheme: WwaScheme,
    ratio: f64,
) -> Result<RadialProfile> {
    if xs.is_empty() {
        return Err(Error::InvalidGrid("radial grid is empty".into()));
    }
    if xs.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidGrid("radii must be finite and >= 0".into()));
    }
    if xs.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidGrid("radial grid must be strictly increasing".into()));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidGrid(format!("tau must be finite and >= 0, got {tau}")));
    }
    let mut grid = xs.to_vec();
    if tau > 0.0 {
        let front = ratio * tau;
        for f in [0.999 * front, front, 1.001 * front] {
            if grid.iter().all(|x| (x - f).abs() > 1e-9 * front) {
                grid.push(f);
            }
        }
        grid.sort_by(f64::total_cmp);
    }

    let mut warnings = Vec::new();
    if grid.iter().any(|&x| x > 100.0) {
        warnings.push(
            "closed-form column evaluated beyond its near-zone validity x <= 100".to_string(),
        );
    }
    if grid[0] == 0.0 {
        warnings.push("classical reference diverges at x = 0; column left empty there".to_string());
    }

    let mut points = Vec::with_capacity(grid.len());
    for &x in &grid {
        points.push(RadialPoint {
            x,
            closed: energy_density_wwa(x, tau),
            quadrature: energy_density_quadrature(x, tau, scheme, ratio)?,
            farfield: energy_density_farfield(x, tau, ratio),
            classical: energy_density_classical(x, tau, ratio).ok(),
        });
    }
    Ok(RadialProfile { tau, points, warnings })
}

/// Total field energy (units of ħω₀) from the radial quadrature density:
/// (1/ratio) ∫₀^∞ w̃ dx, assembled from three regimes —
/// uniform Simpson on [0, 100], log-grid Simpson on (100, 2·10⁴], and the
/// closed retarded integral 1 − e^{-2(τ − X/ratio)} beyond (the x⁻²
/// envelope corrections integrate to < 1e-8 there). The assembly is
/// repeated at doubled grid resolution; disagreement beyond 0.5% is a
/// convergence failure.
pub fn total_field_energy(tau: f64, scheme: WwaScheme, ratio: f64) -> Result<f64> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidGrid(format!("tau must be finite and >= 0, got {tau}")));
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    let coarse = total_energy_assembly(tau, scheme, ratio, 101, 37)?;
    let fine = total_energy_assembly(tau, scheme, ratio, 201, 73)?;
    if (coarse - fine).abs() > 0.5e-2 * fine.abs().max(1e-3) {
        return Err(Error::Convergence(format!(
            "radial energy integral not converged: {coarse:.6e} vs {fine:.6e} under grid doubling"
        )));
    }
    Ok(fine)
}

fn total_energy_assembly(
    tau: f64,
    scheme: WwaScheme,
    ratio: f64,
    n_near: usize,
    n_mid: usize,
) -> Result<f64> {
    // Near zone [0, 100], uniform grid.
    let h = 100.0 / (n_near - 1) as f64;
    let mut vals = Vec::with_capacity(n_near);
    for i in 0..n_near {
        vals.push(energy_density_quadrature(i as f64 * h, tau, scheme, ratio)?);
    }
    let near = simpson_uniform(&vals, h);

    // Mid zone (100, 2e4], log grid: ∫ w̃ dx = ∫ w̃(e^t) e^t dt.
    let (t0, t1) = (100f64.ln(), 2e4f64.ln());
    let ht = (t1 - t0) / (n_mid - 1) as f64;
    let mut vals = Vec::with_capacity(n_mid);
    for i in 0..n_mid {
        let x = (t0 + i as f64 * ht).exp();
        vals.push(energy_density_quadrature(x, tau, scheme, ratio)? * x);
    }
    let mid = simpson_uniform(&vals, ht);

    // Far zone: closed retarded integral from X = 2e4 to the light front.
    let x_far = 2e4;
    let far = if tau * ratio > x_far {
        1.0 - (-2.0 * (tau - x_far / ratio)).exp()
    } else {
        0.0
    };

    Ok((near + mid) / ratio + far)
}
