//! One-dimensional quadrature drivers.
//!
//! Three integrators cover every integral in the crate:
//!
//! * [`gauss_legendre`] — fixed-order nodes/weights for smooth angular
//!   integrands (low-degree trigonometric polynomials in cos θ);
//! * [`adaptive_gk`] — worst-interval-first adaptive 7/15 Gauss-Kronrod for
//!   smooth real integrands with localized structure (Lorentzian peaks);
//! * [`oscillatory_gk_complex`] — panel-per-half-period 15-point Kronrod for
//!   complex integrands of the form (smooth) × e^{-iΔτ}, with recursive
//!   panel bisection. Subdividing at the oscillation period keeps each panel
//!   polynomial-like, which is where the Kronrod rule is exact.
//!
//! [`simpson_uniform`] handles radial profiles that are tabulated rather
//! than callable at arbitrary points.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// 15-point Kronrod abscissae on [0, 1] (positive half; symmetric rule).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// 15-point Kronrod weights matching [`XGK`].
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// 7-point Gauss weights for the embedded rule (odd-indexed Kronrod nodes).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the three-term recurrence; converges to machine
/// precision in a handful of steps from the Chebyshev initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Single 7/15 Gauss-Kronrod panel on [a, b].
///
/// Returns (kronrod value, error estimate). The error estimate uses the
/// standard rescaling of |K15 - G7| against the mean-removed resolution, so
/// it stays sharp for integrands the rule nearly nails.
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [0.0; 15];
    fv[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - reskh).abs() + (fv[14 - j] - reskh).abs());
    }
    resasc *= half.abs();
    let result = resk * half;
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let round = f64::EPSILON * 50.0 * resabs * half.abs();
    (result, err.max(round))
}

/// Adaptive Gauss-Kronrod integration of a smooth real integrand.
///
/// Splits the current worst interval until the summed error estimate meets
/// `max(abs_tol, rel_tol * |integral|)`. Fails with a convergence error if
/// the interval budget is exhausted first.
pub fn adaptive_gk<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    const MAX_INTERVALS: usize = 20_000;
    let (v, e) = qk15(&f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    loop {
        let total: f64 = intervals.iter().map(|t| t.2).sum();
        let err: f64 = intervals.iter().map(|t| t.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok((total, err));
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Convergence(format!(
                "adaptive quadrature on [{a:.3e}, {b:.3e}] stalled at error {err:.3e} \
                 after {MAX_INTERVALS} intervals"
            )));
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("non-empty interval list");
        let (ia, ib, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (ia + ib);
        let (v1, e1) = qk15(&f, ia, mid);
        let (v2, e2) = qk15(&f, mid, ib);
        intervals.push((ia, mid, v1, e1));
        intervals.push((mid, ib, v2, e2));
    }
}

/// 15-point Kronrod panel for a complex integrand; error is the modulus of
/// the K15 - G7 difference.
fn qk15_complex<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    ((resk * half), ((resk - resg) * half).norm())
}

/// Recursive bisection of one oscillation panel until its Kronrod error
/// estimate drops below `tol`.
fn refine_panel<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<(Complex64, f64)> {
    let (v, e) = qk15_complex(f, a, b);
    if e <= tol || b - a < 1e-14 * (a.abs() + b.abs() + 1.0) {
        return Ok((v, e));
    }
    if depth == 0 {
        return Err(Error::Convergence(format!(
            "oscillatory panel [{a:.3e}, {b:.3e}] did not converge (error {e:.3e})"
        )));
    }
    let mid = 0.5 * (a + b);
    let (v1, e1) = refine_panel(f, a, mid, 0.5 * tol, depth - 1)?;
    let (v2, e2) = refine_panel(f, mid, b, 0.5 * tol, depth - 1)?;
    Ok((v1 + v2, e1 + e2))
}

/// Integrate a complex integrand of the form (smooth) × e^{±iωx} over
/// [a, b] by splitting at half-period boundaries of the oscillation and
/// applying a 15-point Kronrod rule per panel, bisecting panels whose error
/// estimate is out of budget (this also resolves any smooth localized
/// structure such as the 1/(1+Δ²) kernel peak).
///
/// `abs_tol` is the total error budget, distributed over panels by length.
pub fn oscillatory_gk_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    omega: f64,
    abs_tol: f64,
) -> Result<Complex64> {
    assert!(b >= a, "inverted integration range");
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let half_period = if omega.abs() > 1e-300 {
        std::f64::consts::PI / omega.abs()
    } else {
        f64::INFINITY
    };
    // Panel length: one half-period, but never more than 1/8 of the range
    // (so peak structure is seen even when ω is tiny) and never so small
    // that the panel count explodes past the budget.
    let len = half_period.min((b - a) / 8.0).max((b - a) / 4_000_000.0);
    let n_panels = ((b - a) / len).ceil() as usize;
    let tol_per_panel = abs_tol / n_panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut x0 = a;
    for i in 0..n_panels {
        let x1 = if i + 1 == n_panels {
            b
        } else {
            a + (b - a) * (i + 1) as f64 / n_panels as f64
        };
        let (v, _) = refine_panel(&f, x0, x1, tol_per_panel, 28)?;
        total += v;
        x0 = x1;
    }
    Ok(total)
}

/// Composite Simpson rule over uniformly spaced samples (odd count).
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    assert!(values.len() >= 3 && values.len() % 2 == 1, "need odd sample count >= 3");
    let mut sum = values[0] + values[values.len() - 1];
    for (i, v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // n-point rule is exact through degree 2n-1.
        let (x, w) = gauss_legendre(8);
        let int_x14: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert_relative_eq!(int_x14, 2.0 / 15.0, max_relative = 1e-14);
        let int_x15: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(15)).sum();
        assert!(int_x15.abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for n in [2, 5, 32, 64, 128] {
            let (_, w) = gauss_legendre(n);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn adaptive_gk_handles_narrow_lorentzian() {
        // ∫ dx / (1 + x²) over [-1e4, 1e4] = 2 arctan(1e4).
        let (v, e) = adaptive_gk(|x| 1.0 / (1.0 + x * x), -1e4, 1e4, 1e-12, 1e-12).unwrap();
        assert_relative_eq!(v, 2.0 * (1e4f64).atan(), max_relative = 1e-11);
        assert!(e < 1e-8);
    }

    #[test]
    fn oscillatory_panels_cancel_pure_cosine() {
        // ∫₀^{20π} cos x dx = 0 and ∫₀^{20.5π} cos x dx = sin(20.5π) = 1.
        let f = |x: f64| Complex64::new(x.cos(), 0.0);
        let v = oscillatory_gk_complex(f, 0.0, 20.0 * PI, 1.0, 1e-12).unwrap();
        assert!(v.re.abs() < 1e-10, "got {}", v.re);
        let v = oscillatory_gk_complex(f, 0.0, 20.5 * PI, 1.0, 1e-12).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn oscillatory_resolves_peak_times_phase() {
        // ∫ e^{-iΔ}/(1+Δ²) dΔ over the real line = π e^{-1}; the phase makes
        // the window [-U, U] miss only the oscillatory tail
        // −2 sin U/(1+U²) + O(U⁻³), not the 2/U of the bare Lorentzian.
        let f = |d: f64| Complex64::new(0.0, -d).exp() / Complex64::new(1.0 + d * d, 0.0);
        let u = 1e4f64;
        let v = oscillatory_gk_complex(f, -u, u, 1.0, 1e-10).unwrap();
        let expected = PI * (-1.0f64).exp() + 2.0 * u.sin() / (1.0 + u * u);
        assert_relative_eq!(v.re, expected, epsilon = 1e-9);
        assert!(v.im.abs() < 1e-9);
    }

    #[test]
    fn simpson_matches_cubic_exactly() {
        let h = 0.1;
        let vals: Vec<f64> = (0..=10).map(|i| (i as f64 * h).powi(3)).collect();
        assert_relative_eq!(simpson_uniform(&vals, h), 0.25, max_relative = 1e-14);
    }
}
