//! Angular algebra for electric-dipole transitions.
//!
//! Provides half-integer angular-momentum labels, Clebsch-Gordan
//! coefficients evaluated exactly (integer factorials and rational
//! arithmetic, converted to floating point once at the end), the two
//! transverse polarization vectors in the spherical (helicity-adapted)
//! basis, and the normalized per-channel coupling amplitudes
//!
//! Ṽ^{(λ)}_{m_G m_H}(k̂) = (2H+1)^{-1/2} ⟨G m_G; 1 q | H m_H⟩ (-1)^q ε_q^{(λ)}(k̂),
//!
//! with q = m_H − m_G the spherical component of the dipole operator.
//! The direction-summed strength Σ_{m_G λ} ∫dΩ |Ṽ|² = 8π/[3(2H+1)] is
//! independent of m_H; all emission observables are normalized against it.

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Angular-momentum magnitude, stored as twice its value so half-integers
/// are exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct HalfIntegerJ {
    twice: i32,
}

impl HalfIntegerJ {
    /// Construct from twice the quantum number (`3` means j = 3/2).
    pub fn from_twice(twice: i32) -> Result<Self> {
        if twice < 0 {
            return Err(Error::InvalidTransition(format!(
                "angular momentum must be non-negative, got {}",
                twice as f64 / 2.0
            )));
        }
        Ok(Self { twice })
    }

    /// Construct an integer quantum number.
    pub fn integer(j: u32) -> Self {
        Self { twice: 2 * j as i32 }
    }

    /// Twice the quantum number.
    #[inline]
    pub fn twice(self) -> i32 {
        self.twice
    }

    /// The quantum number as a float.
    #[inline]
    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Whether j is an integer (as opposed to half-odd-integer).
    #[inline]
    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Multiplicity 2j + 1.
    #[inline]
    pub fn multiplicity(self) -> i32 {
        self.twice + 1
    }

    /// Magnetic quantum numbers m = -j ..= j, as twice-values.
    pub fn twice_m_values(self) -> impl Iterator<Item = i32> {
        (-self.twice..=self.twice).step_by(2)
    }
}

impl fmt::Display for HalfIntegerJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfIntegerJ {
    type Err = Error;

    /// Accepts `"2"`, `"3/2"`, or an exact decimal like `"1.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidTransition(format!("cannot parse angular momentum {s:?}"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(bad());
            }
            return Self::from_twice(num.trim().parse().map_err(|_| bad())?);
        }
        if let Ok(j) = s.parse::<i32>() {
            return Self::from_twice(j.checked_mul(2).ok_or_else(bad)?);
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * v;
        if twice.fract() != 0.0 || !(0.0..=1e6).contains(&twice) {
            return Err(bad());
        }
        Self::from_twice(twice as i32)
    }
}

/// Factorials 0! ..= 200! as exact integers; covers every Racah-formula
/// argument for j well past the supported range.
static FACTORIALS: LazyLock<Vec<BigInt>> = LazyLock::new(|| {
    let mut table = Vec::with_capacity(201);
    let mut acc = BigInt::from(1u32);
    table.push(acc.clone());
    for n in 1u32..=200 {
        acc *= n;
        table.push(acc.clone());
    }
    table
});

/// n! for n given as twice an integer value (panics if 2n is odd or out of
/// table range; callers establish both).
#[inline]
fn fact_twice(twice_n: i32) -> &'static BigInt {
    debug_assert!(twice_n >= 0 && twice_n % 2 == 0);
    &FACTORIALS[(twice_n / 2) as usize]
}

/// Convert an exact rational to the nearest f64 without overflowing
/// intermediate conversions: scale numerator/denominator so the integer
/// quotient carries ~96 significant bits, convert, and undo the scaling.
fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    let s = num.bits() as i64 - den.bits() as i64;
    let shift = 96 - s;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let f = q.to_f64().expect("96-bit quotient fits in f64 range");
    // 2^-shift decomposed so powi stays within the exponent range.
    if shift >= 0 {
        f * 2f64.powi(-((shift.min(600)) as i32)) * 2f64.powi(-((shift - shift.min(600)) as i32))
    } else {
        f * 2f64.powi((-shift) as i32)
    }
}

/// Clebsch-Gordan coefficient ⟨j1 m1; j2 m2 | j m⟩ (Condon-Shortley phase).
///
/// All magnetic quantum numbers are passed as twice-values. Evaluated via
/// the Racah closed sum with exact integer factorials; the single rounding
/// happens in the final conversion, so the result is within a couple of
/// ulps of the exact value. Selection-rule violations return 0.
pub fn clebsch_gordan(
    j1: HalfIntegerJ,
    twice_m1: i32,
    j2: HalfIntegerJ,
    twice_m2: i32,
    j: HalfIntegerJ,
    twice_m: i32,
) -> f64 {
    let (t1, t2, tj) = (j1.twice(), j2.twice(), j.twice());
    // Selection rules: m-sum, |m| <= j with matching parity, triangle rule
    // with integer perimeter.
    if twice_m1 + twice_m2 != twice_m
        || twice_m1.abs() > t1
        || twice_m2.abs() > t2
        || twice_m.abs() > tj
        || (t1 + twice_m1) % 2 != 0
        || (t2 + twice_m2) % 2 != 0
        || (tj + twice_m) % 2 != 0
        || tj < (t1 - t2).abs()
        || tj > t1 + t2
        || (t1 + t2 + tj) % 2 != 0
    {
        return 0.0;
    }

    // Prefactor under the square root, as one exact rational:
    // (2j+1) Δ(j1 j2 j) (j1+m1)! (j1-m1)! (j2+m2)! (j2-m2)! (j+m)! (j-m)!
    let mut pref_num = BigInt::from(tj + 1);
    for arg in [t1 + t2 - tj, t1 - t2 + tj, -t1 + t2 + tj] {
        pref_num *= fact_twice(arg);
    }
    for arg in [
        t1 + twice_m1,
        t1 - twice_m1,
        t2 + twice_m2,
        t2 - twice_m2,
        tj + twice_m,
        tj - twice_m,
    ] {
        pref_num *= fact_twice(arg);
    }
    let pref_den = fact_twice(t1 + t2 + tj + 2).clone();
    let pref = BigRational::new(pref_num, pref_den);

    // Racah sum over k (twice-values are all even by the parity checks).
    let k_min = 0.max(t2 - tj - twice_m1).max(t1 - tj + twice_m2);
    let k_max = (t1 + t2 - tj).min(t1 - twice_m1).min(t2 + twice_m2);
    let mut sum = BigRational::zero();
    let mut tk = k_min;
    while tk <= k_max {
        let mut den = fact_twice(tk).clone();
        den *= fact_twice(t1 + t2 - tj - tk);
        den *= fact_twice(t1 - twice_m1 - tk);
        den *= fact_twice(t2 + twice_m2 - tk);
        den *= fact_twice(tj - t2 + twice_m1 + tk);
        den *= fact_twice(tj - t1 - twice_m2 + tk);
        let term = BigRational::new(BigInt::from(1), den);
        if (tk / 2) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        tk += 2;
    }
    if sum.is_zero() {
        return 0.0;
    }

    // result = sign(sum) * sqrt(pref * sum²), exact until the final sqrt.
    let sq = &pref * &sum * &sum;
    let sign = if sum.is_negative() { -1.0 } else { 1.0 };
    sign * ratio_to_f64(&sq).sqrt()
}

/// Transverse polarization label: the θ̂-aligned or φ̂-aligned unit vector
/// of the emission direction k̂.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarization {
    /// Polar polarization ε^(θ) = θ̂.
    Theta,
    /// Azimuthal polarization ε^(φ) = φ̂.
    Phi,
}

impl Polarization {
    /// Both transverse polarizations.
    pub const BOTH: [Polarization; 2] = [Polarization::Theta, Polarization::Phi];
}

/// θ-dependent part ê_q^{(λ)}(θ) of the spherical component q of the
/// polarization vector; the full component is e^{iqφ} ê_q^{(λ)}(θ).
#[inline]
pub fn polarization_theta_part(lambda: Polarization, q: i32, theta: f64) -> Complex64 {
    match (lambda, q) {
        (Polarization::Theta, 0) => Complex64::new(-theta.sin(), 0.0),
        (Polarization::Theta, 1) => Complex64::new(-theta.cos() * FRAC_1_SQRT_2, 0.0),
        (Polarization::Theta, -1) => Complex64::new(theta.cos() * FRAC_1_SQRT_2, 0.0),
        (Polarization::Phi, 0) => Complex64::new(0.0, 0.0),
        (Polarization::Phi, 1 | -1) => Complex64::new(0.0, -FRAC_1_SQRT_2),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// Spherical component q ∈ {-1, 0, +1} of the polarization vector λ at
/// emission direction (θ, φ): ε_q^{(λ)} = e^{iqφ} ê_q^{(λ)}(θ).
#[inline]
pub fn polarization_spherical(lambda: Polarization, q: i32, theta: f64, phi: f64) -> Complex64 {
    let phase = Complex64::new(0.0, q as f64 * phi).exp();
    phase * polarization_theta_part(lambda, q, theta)
}

/// Direction-independent channel weight
/// K_q(m_G, m_H) = (2H+1)^{-1/2} ⟨G m_G; 1 q | H m_H⟩ (-1)^q, q = m_H - m_G.
///
/// Zero whenever |q| > 1 or the Clebsch-Gordan coefficient vanishes.
#[inline]
pub fn channel_weight(
    h: HalfIntegerJ,
    g: HalfIntegerJ,
    twice_m_h: i32,
    twice_m_g: i32,
) -> f64 {
    let twice_q = twice_m_h - twice_m_g;
    if twice_q.abs() > 2 || twice_q % 2 != 0 {
        return 0.0;
    }
    let q = twice_q / 2;
    let cg = clebsch_gordan(g, twice_m_g, HalfIntegerJ::integer(1), twice_q, h, twice_m_h);
    let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * cg / (h.multiplicity() as f64).sqrt()
}

/// Normalized coupling amplitude Ṽ^{(λ)}_{m_G m_H}(θ, φ).
#[inline]
pub fn coupling_amplitude(
    h: HalfIntegerJ,
    g: HalfIntegerJ,
    twice_m_h: i32,
    twice_m_g: i32,
    lambda: Polarization,
    theta: f64,
    phi: f64,
) -> Complex64 {
    let k = channel_weight(h, g, twice_m_h, twice_m_g);
    if k == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let q = (twice_m_h - twice_m_g) / 2;
    k * polarization_spherical(lambda, q, theta, phi)
}

/// Analytic direction-and-channel-summed coupling strength
/// A(H) = Σ_{m_G, λ} ∫dΩ |Ṽ^{(λ)}_{m_G m_H}|² = 8π / [3(2H+1)],
/// independent of m_H. Every emission observable divides by this.
#[inline]
pub fn coupling_normalization(h: HalfIntegerJ) -> f64 {
    8.0 * std::f64::consts::PI / (3.0 * h.multiplicity() as f64)
}

/// Product quadrature grid over the unit sphere: Gauss-Legendre in cos θ
/// crossed with a uniform (trapezoidal, hence spectrally accurate for
/// periodic integrands) grid in φ. Weights include the full measure, so
/// ∫ f dΩ ≈ Σ w f(θ, φ).
pub struct SphereGrid {
    /// (θ, φ, weight) triples.
    pub nodes: Vec<(f64, f64, f64)>,
}

impl SphereGrid {
    /// Build an n_theta × n_phi grid. 32 × 64 resolves every integrand in
    /// this crate (trigonometric polynomials of low degree) to round-off.
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (ct, wt) = gauss_legendre(n_theta);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (c, w) in ct.iter().zip(&wt) {
            let theta = c.acos();
            for i in 0..n_phi {
                nodes.push((theta, i as f64 * dphi, w * dphi));
            }
        }
        Self { nodes }
    }

    /// ∫ f(θ, φ) dΩ over the grid.
    pub fn integrate<F: Fn(f64, f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().map(|&(t, p, w)| w * f(t, p)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::tolerances::{ANALYTIC_ABS, ANALYTIC_REL};

    fn j(twice: i32) -> HalfIntegerJ {
        HalfIntegerJ::from_twice(twice).unwrap()
    }

    #[test]
    fn parses_integer_and_half_integer_labels() {
        assert_eq!("2".parse::<HalfIntegerJ>().unwrap().twice(), 4);
        assert_eq!("3/2".parse::<HalfIntegerJ>().unwrap().twice(), 3);
        assert_eq!("1.5".parse::<HalfIntegerJ>().unwrap().twice(), 3);
        assert!("-1".parse::<HalfIntegerJ>().is_err());
        assert!("2/3".parse::<HalfIntegerJ>().is_err());
        assert_eq!(j(3).to_string(), "3/2");
        assert_eq!(j(4).to_string(), "2");
    }

    #[test]
    fn clebsch_gordan_spot_values() {
        // ⟨1 1; 1 0 | 1 1⟩ = 1/√2
        assert_relative_eq!(
            clebsch_gordan(j(2), 2, j(2), 0, j(2), 2),
            FRAC_1_SQRT_2,
            max_relative = ANALYTIC_REL
        );
        // ⟨1 1; 1 -1 | 0 0⟩ = 1/√3
        assert_relative_eq!(
            clebsch_gordan(j(2), 2, j(2), -2, j(0), 0),
            1.0 / 3.0f64.sqrt(),
            max_relative = ANALYTIC_REL
        );
        // ⟨0 0; 1 1 | 1 1⟩ = 1
        assert_relative_eq!(
            clebsch_gordan(j(0), 0, j(2), 2, j(2), 2),
            1.0,
            max_relative = ANALYTIC_REL
        );
        // Half-integer: ⟨1/2 1/2; 1/2 -1/2 | 0 0⟩ = 1/√2,
        // antisymmetric partner picks up the minus sign.
        assert_relative_eq!(
            clebsch_gordan(j(1), 1, j(1), -1, j(0), 0),
            FRAC_1_SQRT_2,
            max_relative = ANALYTIC_REL
        );
        assert_relative_eq!(
            clebsch_gordan(j(1), -1, j(1), 1, j(0), 0),
            -FRAC_1_SQRT_2,
            max_relative = ANALYTIC_REL
        );
        // ⟨1 0; 1 0 | 1 0⟩ vanishes by symmetry.
        assert_eq!(clebsch_gordan(j(2), 0, j(2), 0, j(2), 0), 0.0);
    }

    #[test]
    fn clebsch_gordan_selection_rules() {
        // m-sum violation, triangle violation, |m| > j.
        assert_eq!(clebsch_gordan(j(2), 2, j(2), 2, j(2), 2), 0.0);
        assert_eq!(clebsch_gordan(j(2), 0, j(2), 0, j(10), 0), 0.0);
        assert_eq!(clebsch_gordan(j(2), 4, j(2), -2, j(2), 2), 0.0);
    }

    #[test]
    fn clebsch_gordan_orthogonality_row() {
        // Σ_{m1 m2} ⟨j1 m1 j2 m2|J M⟩⟨j1 m1 j2 m2|J' M'⟩ = δ_{JJ'} δ_{MM'}.
        let (j1, j2) = (j(4), j(3));
        for tjj in [1, 3, 5, 7] {
            let jj = HalfIntegerJ::from_twice(tjj).unwrap();
            let mut sum = 0.0;
            for tm1 in j1.twice_m_values() {
                for tm2 in j2.twice_m_values() {
                    let c = clebsch_gordan(j1, tm1, j2, tm2, jj, 1);
                    sum += c * c;
                }
            }
            assert_relative_eq!(sum, 1.0, epsilon = ANALYTIC_ABS);
        }
    }

    #[test]
    fn polarization_completeness() {
        // Σ_{λ q} |ε_q^{(λ)}|² = 2 (two transverse unit vectors).
        for &(theta, phi) in &[(0.3, 0.0), (1.2, 2.1), (2.9, 5.0)] {
            let mut sum = 0.0;
            for lambda in Polarization::BOTH {
                for q in [-1, 0, 1] {
                    sum += polarization_spherical(lambda, q, theta, phi).norm_sqr();
                }
            }
            assert_relative_eq!(sum, 2.0, epsilon = ANALYTIC_ABS);
        }
    }

    #[test]
    fn coupling_matches_pi_channel_form() {
        // H=1 → G=0, m_H = 0 is the q = 0 (π) channel: Ṽ^(θ) = -sin θ/√3,
        // Ṽ^(φ) = 0, independent of φ.
        for &theta in &[0.2, 1.0, 2.5] {
            let v = coupling_amplitude(j(2), j(0), 0, 0, Polarization::Theta, theta, 1.3);
            assert_relative_eq!(v.re, -theta.sin() / 3.0f64.sqrt(), max_relative = ANALYTIC_REL);
            assert!(v.im.abs() < ANALYTIC_ABS);
            let v = coupling_amplitude(j(2), j(0), 0, 0, Polarization::Phi, theta, 1.3);
            assert!(v.norm() < ANALYTIC_ABS);
        }
    }

    #[test]
    fn coupling_normalization_is_m_independent() {
        let grid = SphereGrid::new(32, 64);
        for (th, tg) in [(2, 0), (4, 2), (2, 2), (3, 1), (2, 4), (5, 3)] {
            let (h, g) = (j(th), j(tg));
            let expected = coupling_normalization(h);
            for tm_h in h.twice_m_values() {
                let total = grid.integrate(|theta, phi| {
                    let mut s = 0.0;
                    for tm_g in g.twice_m_values() {
                        for lambda in Polarization::BOTH {
                            s += coupling_amplitude(h, g, tm_h, tm_g, lambda, theta, phi)
                                .norm_sqr();
                        }
                    }
                    s
                });
                assert_relative_eq!(total, expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn channel_weight_vanishes_outside_dipole_rules() {
        assert_eq!(channel_weight(j(4), j(0), 2, 0), 0.0); // |q| fine but CG = 0 (triangle)
        assert_eq!(channel_weight(j(2), j(2), 2, -2), 0.0); // q = 2
    }
}
