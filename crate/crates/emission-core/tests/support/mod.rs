//! Independent Clebsch-Gordan oracle used by the acceptance and property
//! suites: the symmetric Wigner 3j route, kept as exact rationals.
//!
//! A coefficient is represented as sign · √(square) with `square` an exact
//! `BigRational`, so completeness sums Σ CG² can be asserted with exact
//! rational equality, no floating point involved. The f64 view takes one
//! square root at the very end.
//!
//! The library computes CG directly from the Racah single-sum form; this
//! oracle goes through the 3j symbol with its own factorial table, summand
//! arrangement, and rational-to-float conversion, so shared bugs are
//! implausible.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// (t/2)! for an even, non-negative twice-value t.
fn fact_twice(t: i32) -> BigInt {
    assert!(t >= 0 && t % 2 == 0, "factorial of twice-value {t}");
    let mut out = BigInt::one();
    for k in 2..=(t / 2) {
        out *= k;
    }
    out
}

/// Exact square-root-free value: `cg = sign · √square`.
#[derive(Clone, Debug)]
pub struct ExactCg {
    pub sign: i32,
    pub square: BigRational,
}

impl ExactCg {
    fn zero() -> Self {
        Self { sign: 0, square: BigRational::zero() }
    }

    /// The f64 value, via one terminal square root.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.square.to_f64().expect("rational fits f64").sqrt()
    }
}

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) as sign · √square, all arguments
/// as twice-values.
fn wigner_3j(t1: i32, tm1: i32, t2: i32, tm2: i32, t3: i32, tm3: i32) -> ExactCg {
    // Selection rules.
    if tm1 + tm2 + tm3 != 0
        || tm1.abs() > t1
        || tm2.abs() > t2
        || tm3.abs() > t3
        || (t1 + tm1) % 2 != 0
        || (t2 + tm2) % 2 != 0
        || (t3 + tm3) % 2 != 0
        || t3 < (t1 - t2).abs()
        || t3 > t1 + t2
        || (t1 + t2 + t3) % 2 != 0
    {
        return ExactCg::zero();
    }

    // Triangle coefficient Δ and the magnetic factorial product N.
    let mut delta_num = BigInt::one();
    for arg in [t1 + t2 - t3, t1 - t2 + t3, -t1 + t2 + t3] {
        delta_num *= fact_twice(arg);
    }
    let delta = BigRational::new(delta_num, fact_twice(t1 + t2 + t3 + 2));
    let mut n_prod = BigInt::one();
    for arg in [t1 + tm1, t1 - tm1, t2 + tm2, t2 - tm2, t3 + tm3, t3 - tm3] {
        n_prod *= fact_twice(arg);
    }

    // Alternating sum over k.
    let tk_min = 0.max(-(t3 - t2 + tm1)).max(-(t3 - t1 - tm2));
    let tk_max = (t1 + t2 - t3).min(t1 - tm1).min(t2 + tm2);
    let mut sum = BigRational::zero();
    let mut tk = tk_min;
    while tk <= tk_max {
        let mut den = fact_twice(tk);
        den *= fact_twice(t1 + t2 - t3 - tk);
        den *= fact_twice(t1 - tm1 - tk);
        den *= fact_twice(t2 + tm2 - tk);
        den *= fact_twice(t3 - t2 + tm1 + tk);
        den *= fact_twice(t3 - t1 - tm2 + tk);
        let term = BigRational::new(BigInt::one(), den);
        if (tk / 2) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        tk += 2;
    }
    if sum.is_zero() {
        return ExactCg::zero();
    }

    let square = delta * BigRational::from(n_prod) * &sum * &sum;
    let phase = if ((t1 - t2 - tm3) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
    let sign = phase * if sum.is_negative() { -1 } else { 1 };
    ExactCg { sign, square }
}

/// Clebsch-Gordan coefficient ⟨j1 m1; j2 m2 | J M⟩ as sign · √square, all
/// arguments as twice-values, via
/// CG = (−1)^{j1−j2+M} √(2J+1) · 3j(j1 j2 J; m1 m2 −M).
pub fn cg_exact(t1: i32, tm1: i32, t2: i32, tm2: i32, tj: i32, tm: i32) -> ExactCg {
    let three_j = wigner_3j(t1, tm1, t2, tm2, tj, -tm);
    if three_j.sign == 0 {
        return ExactCg::zero();
    }
    let phase = if ((t1 - t2 + tm) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
    ExactCg {
        sign: phase * three_j.sign,
        square: three_j.square * BigRational::from(BigInt::from(tj + 1)),
    }
}

/// f64 view of [`cg_exact`].
pub fn cg_f64(t1: i32, tm1: i32, t2: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
    cg_exact(t1, tm1, t2, tm2, tj, tm).to_f64()
}

/// Exact rational completeness over the (m1, m2) sector of fixed (J, M):
/// Σ_{m1+m2=M} CG² — must equal 1 whenever the triangle admits (J, M).
pub fn completeness_over_m(t1: i32, t2: i32, tj: i32, tm: i32) -> BigRational {
    let mut total = BigRational::zero();
    let mut tm1 = -t1;
    while tm1 <= t1 {
        let tm2 = tm - tm1;
        if tm2.abs() <= t2 {
            total += cg_exact(t1, tm1, t2, tm2, tj, tm).square;
        }
        tm1 += 2;
    }
    total
}

/// Exact rational completeness over J for fixed (m1, m2):
/// Σ_J CG(j1 m1 j2 m2 | J, m1+m2)² — must equal 1.
pub fn completeness_over_j(t1: i32, tm1: i32, t2: i32, tm2: i32) -> BigRational {
    let tm = tm1 + tm2;
    let mut total = BigRational::zero();
    let mut tj = (t1 - t2).abs();
    while tj <= t1 + t2 {
        if tm.abs() <= tj {
            total += cg_exact(t1, tm1, t2, tm2, tj, tm).square;
        }
        tj += 2;
    }
    total
}
