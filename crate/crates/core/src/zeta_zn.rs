//! The spectral zeta function of the discrete circle ℤ/nℤ,
//! `ζ_{ℤ/nℤ}(s) = 4^{-s} Σ_{k=1}^{n-1} sin^{-2s}(πk/n)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::{Integer, Rational};

use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method};
use crate::numerics::escalate;
use crate::numerics::rational::reconstruct;
use crate::poly::RationalPolynomial;

/// Largest `m` for which [`zeta_zn_closed_poly`] reconstructs a polynomial.
pub const CLOSED_POLY_CAP: u32 = 8;

/// The cycle graph on `n ≥ 2` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscreteCircle {
    n: u32,
}

impl DiscreteCircle {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(ZetaError::Domain(format!("discrete circle needs n >= 2, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }
}

/// An integer value of `s` with small magnitude, if `s` is one.
fn small_integer(s: &HPComplex) -> Option<i64> {
    if !s.is_exact() || !s.im().is_zero() || !s.re().is_integer() {
        return None;
    }
    s.re()
        .to_i32_saturating()
        .filter(|v| v.unsigned_abs() < (1 << 20))
        .map(i64::from)
}

/// `sin^{-2s}(πk/n)` at working precision.
fn term(n: u32, k: u32, s: &HPComplex, int_s: Option<i64>, wp: u32) -> HPComplex {
    let sine = HPReal::sin_pi_rational(wp, k as i64, n as i64);
    match int_s {
        Some(m) => sine.powi(-2 * m).into(),
        None => s.scale(&sine.ln().mul_int(-2)).exp(),
    }
}

fn four_pow_neg(s: &HPComplex, int_s: Option<i64>, wp: u32) -> HPComplex {
    match int_s {
        Some(m) => HPReal::one(wp).mul_pow2(-2 * m as i32).into(),
        None => s.scale(&HPReal::ln2(wp).mul_int(-2)).exp(),
    }
}

fn direct_at(c: DiscreteCircle, s: &HPComplex, wp: u32, folded: bool) -> HPComplex {
    let n = c.n;
    let s = s.round_to(wp.max(s.prec()));
    let int_s = small_integer(&s);
    let mut sum = HPComplex::zero(wp);
    if folded {
        // k and n-k give the same sine
        for k in 1..=(n - 1) / 2 {
            sum = &sum + &term(n, k, &s, int_s, wp).mul_int(2);
        }
        if n.is_multiple_of(2) {
            sum = &sum + &HPComplex::one(wp);
        }
    } else {
        for k in 1..n {
            sum = &sum + &term(n, k, &s, int_s, wp);
        }
    }
    &sum * &four_pow_neg(&s, int_s, wp)
}

/// `ζ_{ℤ/nℤ}(s)` by summing the `n - 1` eigenvalue powers, folded by `k ↔ n - k`.
pub fn zeta_zn_direct(c: DiscreteCircle, s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let v = escalate(ctx, "zeta_zn_direct", |wp| Ok(direct_at(c, s, wp, true)))?;
    Ok(EvalResult::numeric(v, Method::DirectSum, true))
}

/// The same sum without folding; used to check the symmetry.
pub fn zeta_zn_direct_unfolded(c: DiscreteCircle, s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let v = escalate(ctx, "zeta_zn_direct", |wp| Ok(direct_at(c, s, wp, false)))?;
    Ok(EvalResult::numeric(v, Method::DirectSum, true))
}

/// `ζ_{ℤ/nℤ}(-m) = n Σ_{|k| ≤ ⌊m/n⌋} (-1)^{kn} C(2m, m + kn)`, exactly.
///
/// The binomial sum counts the zero eigenvalue as `0^m`, which is 1 at
/// `m = 0`; that case returns `n - 1`, the number of nonzero eigenvalues.
pub fn zeta_zn_negative_int(c: DiscreteCircle, m: u32) -> Integer {
    if m == 0 {
        return Integer::from(c.n - 1);
    }
    let n = c.n as i64;
    let m = m as i64;
    let reach = m / n;
    let mut sum = Integer::new();
    for k in -reach..=reach {
        let b = Integer::from(Integer::binomial_u((2 * m) as u32, (m + k * n) as u32));
        if (k * n) % 2 == 0 {
            sum += b;
        } else {
            sum -= b;
        }
    }
    sum * c.n
}

/// `ζ_{ℤ/nℤ}(-1/2 - m) = 2^{2m+1} Σ_k sin^{2m+1}(πk/n)`, evaluated as the
/// cotangent sum `2 Σ_{j=0}^{m} (-1)^{m-j} C(2m+1, j) cot((2m+1-2j)π/(2n))`.
pub fn sine_odd_power_sum(c: DiscreteCircle, m: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    let n = c.n as i64;
    let odd = 2 * m as i64 + 1;
    // (2m+1-2j) is odd and 2n is even, so no cotangent argument is a multiple
    // of π; the check stays as a guard against misuse of the formula.
    if (0..=m as i64).any(|j| (odd - 2 * j) % (2 * n) == 0) {
        return sine_odd_power_direct(c, m, ctx);
    }
    let v = escalate(ctx, "sine_odd_power_sum", |wp| {
        let mut sum = HPReal::zero(wp);
        for j in 0..=m {
            let b = Integer::from(Integer::binomial_u(odd as u32, j));
            let cot = HPReal::cot_pi_rational(wp, odd - 2 * j as i64, 2 * n);
            let t = &HPReal::from_integer(wp, &b) * &cot;
            sum = if (m - j).is_multiple_of(2) {
                &sum + &t
            } else {
                &sum - &t
            };
        }
        Ok(sum.mul_int(2))
    })?;
    Ok(EvalResult::real(v, Method::ClosedForm, true))
}

/// `2^{2m+1} Σ_{k=1}^{n-1} sin^{2m+1}(πk/n)` summed directly.
pub fn sine_odd_power_direct(c: DiscreteCircle, m: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    let odd = 2 * m as i64 + 1;
    let v = escalate(ctx, "sine_odd_power_direct", |wp| {
        let mut sum = HPReal::zero(wp);
        for k in 1..c.n {
            sum = &sum + &HPReal::sin_pi_rational(wp, k as i64, c.n as i64).powi(odd);
        }
        Ok(sum.mul_pow2(odd as i32))
    })?;
    Ok(EvalResult::real(v, Method::DirectSum, true))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, RationalPolynomial>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, RationalPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The polynomial `P_m` of degree `2m` with `P_m(n) = ζ_{ℤ/nℤ}(m)` for all
/// `n ≥ 2`, reconstructed from exact values at `n = 2..2m+2` and checked at
/// five further points.
pub fn zeta_zn_closed_poly(m: u32) -> Result<RationalPolynomial> {
    if let Some(p) = poly_cache().read().expect("poly cache poisoned").get(&m) {
        return Ok(p.clone());
    }
    let p = reconstruct_closed_poly(m, &PrecisionContext::default())?;
    poly_cache().write().expect("poly cache poisoned").insert(m, p.clone());
    Ok(p)
}

/// Reconstruction at an explicit precision, bypassing the cache.
pub fn reconstruct_closed_poly(m: u32, ctx: &PrecisionContext) -> Result<RationalPolynomial> {
    if m == 0 || m > CLOSED_POLY_CAP {
        return Err(ZetaError::Domain(format!(
            "closed polynomial available for 1 <= m <= {CLOSED_POLY_CAP}, got {m}"
        )));
    }
    let wp = 4 * ctx.precision_bits();
    let hi = PrecisionContext::new(wp, ctx.target_tol().min((-(wp as f64) / 2.0).exp2()), ctx.max_terms())?;
    let s = HPComplex::from(HPReal::from_int(wp, m as i64));
    let mut points = Vec::with_capacity(2 * m as usize + 1);
    for n in 2..=(2 * m + 2) {
        let v = zeta_zn_direct(DiscreteCircle::new(n)?, &s, &hi)?;
        let q = reconstruct(&v.re(), wp / 4).ok_or_else(|| {
            ZetaError::Reconstruction(format!(
                "no rational with denominator below 2^{} near ζ_Z/{n}Z({m})",
                wp / 4
            ))
        })?;
        points.push((Rational::from(n), q));
    }
    let p = RationalPolynomial::interpolate(&points);
    check_closed_poly(&p, m, ctx)?;
    Ok(p)
}

/// Compare a candidate `P_m` with direct sums at `n = 2m+3 .. 2m+7` to
/// within `2^{-precision_bits/2}`.
pub fn check_closed_poly(p: &RationalPolynomial, m: u32, ctx: &PrecisionContext) -> Result<()> {
    let tol = ctx.snap_radius();
    let s = HPComplex::from(HPReal::from_int(ctx.precision_bits(), m as i64));
    for n in (2 * m + 3)..(2 * m + 8) {
        let direct = zeta_zn_direct(DiscreteCircle::new(n)?, &s, ctx)?;
        let exact = HPReal::from_rational(ctx.precision_bits(), &p.eval_int(n as i64));
        let d = (&direct.re() - &exact).mag_upper();
        if d > tol {
            return Err(ZetaError::Reconstruction(format!(
                "P_{m}({n}) misses the direct sum by {d:.3e}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn circle(n: u32) -> DiscreteCircle {
        DiscreteCircle::new(n).unwrap()
    }

    fn int(v: i64) -> HPComplex {
        HPReal::from_int(256, v).into()
    }

    fn assert_near(r: &EvalResult, want: &Rational, tol: f64) {
        let d = (&r.re() - &HPReal::from_rational(300, want)).mag_upper();
        assert!(d <= tol, "{r:?} vs {want}: {d:e}");
    }

    #[test]
    fn rejects_small_n() {
        assert!(DiscreteCircle::new(1).is_err());
        assert!(DiscreteCircle::new(0).is_err());
    }

    #[test]
    fn direct_examples() {
        let c = ctx();
        assert_near(
            &zeta_zn_direct(circle(2), &int(1), &c).unwrap(),
            &Rational::from((1, 4)),
            1e-30,
        );
        assert_near(
            &zeta_zn_direct(circle(3), &int(2), &c).unwrap(),
            &Rational::from((2, 9)),
            1e-30,
        );
        assert_near(
            &zeta_zn_direct(circle(3), &int(1), &c).unwrap(),
            &Rational::from((2, 3)),
            1e-30,
        );
        assert_near(
            &zeta_zn_direct(circle(3), &int(-1), &c).unwrap(),
            &Rational::from(6),
            1e-30,
        );
    }

    #[test]
    fn negative_integer_examples() {
        assert_eq!(zeta_zn_negative_int(circle(3), 1), 6);
        assert_eq!(zeta_zn_negative_int(circle(2), 3), 64);
        assert_eq!(zeta_zn_negative_int(circle(5), 2), 30);
        assert_eq!(zeta_zn_negative_int(circle(7), 0), 6);
    }

    #[test]
    fn folded_and_unfolded_agree() {
        let c = ctx();
        let s = HPComplex::from_parts(
            &HPReal::from_rational(256, &Rational::from((-7, 3))),
            &HPReal::from_rational(256, &Rational::from((1, 5))),
        );
        for n in 2..12 {
            let a = zeta_zn_direct(circle(n), &s, &c).unwrap();
            let b = zeta_zn_direct_unfolded(circle(n), &s, &c).unwrap();
            assert!(a.agrees_with(&b));
        }
    }

    #[test]
    fn odd_sine_powers() {
        let c = ctx();
        let two = sine_odd_power_sum(circle(2), 0, &c).unwrap();
        assert_near(&two, &Rational::from(2), 1e-30);
        let v = sine_odd_power_sum(circle(3), 0, &c).unwrap();
        let want = HPReal::from_int(300, 12).sqrt();
        assert!((&v.re() - &want).mag_upper() < 1e-30);
        for (n, m) in [(4, 1), (7, 3), (9, 8)] {
            let a = sine_odd_power_sum(circle(n), m, &c).unwrap();
            let b = sine_odd_power_direct(circle(n), m, &c).unwrap();
            assert!((&a.re() - &b.re()).mag_upper() < 1e-28, "n = {n}, m = {m}");
        }
    }

    #[test]
    fn closed_polynomials() {
        assert_eq!(zeta_zn_closed_poly(1).unwrap().to_string(), "(n^2 - 1)/12");
        assert_eq!(zeta_zn_closed_poly(2).unwrap().to_string(), "(n^4 + 10 n^2 - 11)/720");
        assert_eq!(zeta_zn_closed_poly(1).unwrap().eval_int(2), Rational::from((1, 4)));
        assert!(zeta_zn_closed_poly(0).is_err());
        assert!(zeta_zn_closed_poly(CLOSED_POLY_CAP + 1).is_err());
    }

    #[test]
    fn corrupted_polynomial_fails_the_check() {
        let good = zeta_zn_closed_poly(2).unwrap();
        let mut coeffs = good.coeffs().to_vec();
        coeffs[0] = Rational::from((11, 720));
        let bad = RationalPolynomial::new(coeffs);
        assert!(check_closed_poly(&good, 2, &ctx()).is_ok());
        assert!(matches!(
            check_closed_poly(&bad, 2, &ctx()),
            Err(ZetaError::Reconstruction(_))
        ));
    }
}
