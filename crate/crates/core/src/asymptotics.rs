//! Large-`n` behaviour of the sine power sums `Σ_{k=1}^{n-1} sin^{-s}(kπ/n)`
//! and the Riemann zeta values it encodes.
//!
//! The expansion is
//! `lead(s)·n + Σ_{j≥0} 2 a_j(s) π^{2j-s} ζ(s-2j) n^{s-2j}`, where
//! `lead(s) = π^{-1/2} Γ(1/2 - s/2) / Γ(1 - s/2) = 2^s ζ_Z(s/2)` and `a_j(s)` is
//! the coefficient of `x^{2j}` in `(x / sin x)^s`. The first three terms are
//! `lead·n`, `2π^{-s} ζ(s) n^s` and `(s/3) π^{2-s} ζ(s-2) n^{s-2}`.

use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method};
use crate::numerics::riemann::riemann_zeta_numeric;
use crate::numerics::{bernoulli, escalate};
use crate::zeta_z::zeta_z_closed;
use crate::zeta_zn::DiscreteCircle;

/// Largest order accepted by [`cot_expansion_route`].
pub const COT_ORDER_CAP: usize = 12;
/// Grid size used by [`extract_zeta`].
pub const EXTRACTION_POINTS: usize = 16;
pub const DEFAULT_N_MIN: u32 = 32;
pub const DEFAULT_N_MAX: u32 = 10_000;
/// Relative RMS residual above which a fit is rejected.
pub const RESIDUAL_LIMIT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Leading,
    ZetaS,
    ZetaSMinus2,
    Higher,
}

impl TermKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TermKind::Leading => "leading",
            TermKind::ZetaS => "zeta(s)",
            TermKind::ZetaSMinus2 => "zeta(s-2)",
            TermKind::Higher => "higher",
        }
    }
}

/// `coefficient · n^{power_of_n}`
#[derive(Debug, Clone)]
pub struct ExpansionTerm {
    pub coefficient: HPComplex,
    pub power_of_n: HPComplex,
    pub description: TermKind,
}

impl ExpansionTerm {
    pub fn at(&self, n: &HPReal) -> HPComplex {
        let n_pow = self.power_of_n.scale(&n.ln()).exp();
        &self.coefficient * &n_pow
    }
}

/// Sum of the terms at `n`.
pub fn evaluate_expansion(terms: &[ExpansionTerm], n: &HPReal) -> HPComplex {
    terms.iter().fold(HPComplex::zero(n.prec()), |acc, t| &acc + &t.at(n))
}

/// `lead(s) = 2^s ζ_Z(s/2)`.
pub fn leading_coefficient(s: &HPComplex, ctx: &PrecisionContext) -> Result<HPComplex> {
    let inner = zeta_z_closed(&s.div_int(2), ctx)?;
    let two_pow = s.scale(&HPReal::ln2(ctx.precision_bits() + 32)).exp();
    Ok(&inner.value * &two_pow)
}

/// The first three terms of the expansion.
pub fn expansion_terms(s: &HPComplex, ctx: &PrecisionContext) -> Result<Vec<ExpansionTerm>> {
    let wp = ctx.precision_bits() + 32;
    let lead = leading_coefficient(s, ctx)?;
    let pi = HPComplex::from(HPReal::pi(wp));
    let two = HPComplex::from(HPReal::from_int(wp, 2));

    let zeta_s = riemann_zeta_numeric(s, ctx)?;
    let second = (&pi.pow(&-s) * &zeta_s).mul_int(2);

    let s_minus_2 = &s.clone() - &two;
    let third = if s.is_exact() && s.re().is_zero() && s.im().is_zero() {
        // the s/3 factor vanishes; ζ(-2) is zero as well
        HPComplex::zero(wp)
    } else {
        let zeta_s2 = riemann_zeta_numeric(&s_minus_2, ctx)?;
        (&(&pi.pow(&-&s_minus_2) * &zeta_s2) * s).div_int(3)
    };
    Ok(vec![
        ExpansionTerm {
            coefficient: lead,
            power_of_n: HPComplex::one(wp),
            description: TermKind::Leading,
        },
        ExpansionTerm {
            coefficient: second,
            power_of_n: s.clone(),
            description: TermKind::ZetaS,
        },
        ExpansionTerm {
            coefficient: third,
            power_of_n: s_minus_2,
            description: TermKind::ZetaSMinus2,
        },
    ])
}

/// `a_j(s)`, the coefficient of `x^{2j}` in `(x / sin x)^s`, exactly.
///
/// With `log(x / sin x) = Σ_{k≥1} l_k x^{2k}`, `l_k = 2^{2k} |B_{2k}| / (2k (2k)!)`,
/// the coefficients of the exponential satisfy
/// `a_j = (1/j) Σ_{k=1}^{j} k s l_k a_{j-k}`.
pub fn cosecant_power_coefficient(j: usize, s: &Rational) -> Rational {
    let l: Vec<Rational> = (1..=j)
        .map(|k| {
            let b = Rational::from(bernoulli(2 * k).abs_ref());
            let f = Integer::from(Integer::factorial(2 * k as u32));
            b * Rational::from(Integer::from(1) << (2 * k as u32)) / (f * (2 * k as u32))
        })
        .collect();
    let mut a = vec![Rational::from(1)];
    for i in 1..=j {
        let mut acc = Rational::new();
        for k in 1..=i {
            acc += Rational::from(&l[k - 1] * &a[i - k]) * k as u32;
        }
        a.push(acc * s / i as u32);
    }
    a.swap_remove(j)
}

/// `Σ_{k=1}^{n-1} sin^{-s}(kπ/n)` at working precision `wp`, folded by symmetry.
pub fn sine_power_sum(s: &HPReal, n: u32, wp: u32) -> HPReal {
    let int_s = (s.is_exact() && s.value().is_integer())
        .then(|| s.value().to_i32_saturating())
        .flatten();
    let term = |k: u32| {
        let sine = HPReal::sin_pi_rational(wp, k as i64, n as i64);
        match int_s {
            Some(e) => sine.powi(-(e as i64)),
            None => (&sine.ln() * &-s).exp(),
        }
    };
    let mut sum = HPReal::zero(wp);
    for k in 1..=(n - 1) / 2 {
        sum = &sum + &term(k).mul_int(2);
    }
    if n.is_multiple_of(2) {
        sum = &sum + &HPReal::one(wp);
    }
    sum
}

/// Result of recovering `ζ(s)` from the sine sums.
#[derive(Debug, Clone)]
pub struct ZetaExtraction {
    pub s: HPReal,
    pub estimate: HPReal,
    pub reference: HPReal,
    pub abs_error: f64,
    pub n_grid: Vec<u32>,
    /// RMS of the fit residual relative to the fitted constant.
    pub relative_residual: f64,
}

/// Up to `points` integers spaced geometrically over `[lo, hi]`, without repeats.
pub fn log_grid(lo: u32, hi: u32, points: usize) -> Vec<u32> {
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut grid: Vec<u32> = (0..points)
        .map(|i| {
            let t = if points == 1 {
                0.0
            } else {
                i as f64 / (points - 1) as f64
            };
            (a + t * (b - a)).exp().round() as u32
        })
        .map(|n| n.clamp(lo, hi))
        .collect();
    grid.dedup();
    grid
}

/// `D(n) n^{-s}` where `D(n) = Σ sin^{-s}(kπ/n) - lead·n`: this tends to
/// `2π^{-s} ζ(s)` with corrections in `n^{-2}`.
pub fn scaled_remainder(s: &HPReal, lead: &HPReal, n: u32, wp: u32) -> HPReal {
    let big_n = HPReal::from_int(wp, n as i64);
    let d = &sine_power_sum(s, n, wp) - &(lead * &big_n);
    &d * &(&big_n.ln() * &-s).exp()
}

/// Recover `ζ(s)` for `s ≤ 0` by fitting `D(n) n^{-s} = c + d n^{-2}` over a
/// geometric grid in `[n_min, n_max]`; the estimate is `c π^s / 2`.
pub fn extract_zeta(s: &HPReal, n_min: u32, n_max: u32, ctx: &PrecisionContext) -> Result<ZetaExtraction> {
    if s.is_positive() && !s.contains_zero() {
        return Err(ZetaError::Domain(format!(
            "extraction needs s <= 0, got {:.6e}",
            s.value()
        )));
    }
    if n_min < 4 || n_max <= n_min {
        return Err(ZetaError::Domain(format!(
            "extraction needs n_max > n_min >= 4, got [{n_min}, {n_max}]"
        )));
    }
    let wp = ctx.precision_bits() + 32;
    let sc = HPComplex::from(s);
    let lead = leading_coefficient(&sc, ctx)?.real_part();
    let grid = log_grid(n_min, n_max, EXTRACTION_POINTS);
    if grid.len() < 3 {
        return Err(ZetaError::IllConditioned(format!(
            "only {} distinct grid points",
            grid.len()
        )));
    }
    let ys: Vec<HPReal> = grid.par_iter().map(|&n| scaled_remainder(s, &lead, n, wp)).collect();

    // least squares in the basis {1, x}, x = (n_min / n)²
    let xs: Vec<HPReal> = grid
        .iter()
        .map(|&n| HPReal::from_rational(wp, &Rational::from((n_min, n))).sqr())
        .collect();
    let count = HPReal::from_int(wp, grid.len() as i64);
    let mut sx = HPReal::zero(wp);
    let mut sxx = HPReal::zero(wp);
    let mut sy = HPReal::zero(wp);
    let mut sxy = HPReal::zero(wp);
    for (x, y) in xs.iter().zip(&ys) {
        sx = &sx + x;
        sxx = &sxx + &x.sqr();
        sy = &sy + y;
        sxy = &sxy + &(x * y);
    }
    let det = &(&count * &sxx) - &sx.sqr();
    if det.contains_zero() || det.to_f64().abs() < 1e-12 * (count.to_f64() * sxx.to_f64()) {
        return Err(ZetaError::IllConditioned("singular least-squares system".into()));
    }
    let c = &(&(&sxx * &sy) - &(&sx * &sxy)) / &det;
    let d = &(&(&count * &sxy) - &(&sx * &sy)) / &det;

    let mut sq = 0.0;
    let mut scale = c.to_f64().abs();
    for (x, y) in xs.iter().zip(&ys) {
        let r = (&(y - &c) - &(&d * x)).to_f64();
        sq += r * r;
        scale = scale.max(y.to_f64().abs() * f64::EPSILON);
    }
    let rms = (sq / grid.len() as f64).sqrt();
    let relative_residual = if scale > 0.0 { rms / scale } else { 0.0 };
    if relative_residual.is_nan() || relative_residual > RESIDUAL_LIMIT {
        return Err(ZetaError::IllConditioned(format!(
            "fit residual {relative_residual:.3e} exceeds {RESIDUAL_LIMIT:.1e}"
        )));
    }

    // ζ(s) ≈ c / (2 π^{-s})
    let pi_pow = (&HPReal::pi(wp).ln() * s).exp();
    let estimate = (&c * &pi_pow).div_int(2);
    let reference = reference_zeta(s, ctx)?;
    let abs_error = (&estimate - &reference).value().to_f64().abs();
    Ok(ZetaExtraction {
        s: s.clone(),
        estimate,
        reference,
        abs_error,
        n_grid: grid,
        relative_residual,
    })
}

/// Euler's value at nonpositive integers, Euler–Maclaurin elsewhere.
fn reference_zeta(s: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    let prec = ctx.precision_bits() + 32;
    if s.is_exact() && s.value().is_integer() {
        let m = s.value().to_i32_saturating().unwrap_or(i32::MIN);
        if m == 0 {
            return Ok(HPReal::from_rational(prec, &Rational::from((-1, 2))));
        }
        if m < 0 {
            return Ok(HPReal::from_rational(prec, &euler_zeta_negative(m.unsigned_abs())));
        }
    }
    Ok(riemann_zeta_numeric(&HPComplex::from(s), ctx)?.real_part())
}

/// Laurent coefficients in `z = π/(2n)` of `Σ_{k=1}^{n-1} sin^{2m+1}(kπ/n)`:
/// entry `i` multiplies `z^{2i-1}`.
///
/// The sum equals `2^{-2m} Σ_{j=0}^{m} (-1)^{m-j} C(2m+1, j) cot((2m+1-2j) z)`,
/// and `cot w = Σ_i (-1)^i 2^{2i} B_{2i} / (2i)! · w^{2i-1}`.
pub fn cot_expansion_route(m: u32, order: usize) -> Result<Vec<Rational>> {
    if order > COT_ORDER_CAP {
        return Err(ZetaError::Domain(format!("order {order} exceeds cap {COT_ORDER_CAP}")));
    }
    let odd = 2 * m + 1;
    let scale = Rational::from((1, Integer::from(1) << (2 * m)));
    let mut out = Vec::with_capacity(order);
    for i in 0..order {
        let cot_coeff = bernoulli(2 * i) * Rational::from(Integer::from(1) << (2 * i as u32))
            / Integer::from(Integer::factorial(2 * i as u32));
        let cot_coeff = if i % 2 == 1 { -cot_coeff } else { cot_coeff };
        let mut acc = Rational::new();
        for j in 0..=m {
            let b = Integer::from(Integer::binomial_u(odd, j));
            let a = Rational::from(odd - 2 * j);
            // a^{2i-1}
            let power = if i == 0 {
                a.recip()
            } else {
                pow_rational(&a, 2 * i as u32 - 1)
            };
            let t = Rational::from(b) * power;
            if (m - j).is_multiple_of(2) {
                acc += t;
            } else {
                acc -= t;
            }
        }
        out.push(acc * &cot_coeff * &scale);
    }
    Ok(out)
}

fn pow_rational(a: &Rational, e: u32) -> Rational {
    let mut r = Rational::from(1);
    for _ in 0..e {
        r *= a;
    }
    r
}

/// `ζ(-(2m+1))` read off the `n^{-(2m+1)}` coefficient of the cotangent
/// expansion: `coef[m+1] / 2^{2m+2}`.
pub fn zeta_negative_odd_from_cot(m: u32) -> Result<Rational> {
    let coeffs = cot_expansion_route(m, m as usize + 2)?;
    Ok(Rational::from(&coeffs[m as usize + 1]) / Rational::from(Integer::from(1) << (2 * m + 2)))
}

/// `ζ(-m) = (-1)^m B_{m+1} / (m+1)`.
pub fn euler_zeta_negative(m: u32) -> Rational {
    assert!(m >= 1, "m must be positive");
    let b = bernoulli(m as usize + 1) / Rational::from(m + 1);
    if m % 2 == 1 {
        -b
    } else {
        b
    }
}

/// The rational `r` with `ζ(2m) = r π^{2m}`, from
/// `ζ(1-2m) = 2^{1-2m} π^{-2m} cos(πm) Γ(2m) ζ(2m)`.
pub fn zeta_even_rational_coefficient(m: u32) -> Rational {
    assert!(m >= 1, "m must be positive");
    let z = euler_zeta_negative(2 * m - 1);
    let r = z * Rational::from(Integer::from(1) << (2 * m - 1)) / Integer::from(Integer::factorial(2 * m - 1));
    if m % 2 == 1 {
        -r
    } else {
        r
    }
}

/// `ζ(2m)` through the functional equation from Euler's value at `1 - 2m`.
pub fn zeta_even_from_functional_eq(m: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    if m == 0 {
        return Err(ZetaError::Domain("zeta_even_from_functional_eq needs m >= 1".into()));
    }
    let r = zeta_even_rational_coefficient(m);
    let v = escalate(ctx, "zeta_even", |wp| {
        Ok(&HPReal::from_rational(wp, &r) * &HPReal::pi(wp).powi(2 * m as i64))
    })?;
    Ok(EvalResult::real(v, Method::ClosedForm, true))
}

/// `ζ_{ℤ/nℤ}(m) = 4^{-m} Σ_{j=0}^{m} 2 a_j(2m) π^{2j-2m} ζ(2m-2j) n^{2m-2j}`.
///
/// The leading term vanishes at even `s`, the terms past `j = m` carry the
/// trivial zeros, and each `ζ(2i)/π^{2i}` is rational, so the value is exact.
pub fn zeta_zn_positive_from_asymptotics(n: u32, m: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    if !(1..=2).contains(&m) {
        return Err(ZetaError::Domain(format!(
            "asymptotic assembly covers m = 1, 2; got {m}"
        )));
    }
    let c = DiscreteCircle::new(n)?;
    let s = Rational::from(2 * m);
    let big_n = Rational::from(c.n());
    let mut acc = Rational::new();
    for j in 0..=m {
        let i = m - j;
        let zeta_ratio = if i == 0 {
            Rational::from((-1, 2))
        } else {
            zeta_even_rational_coefficient(i)
        };
        let a = cosecant_power_coefficient(j as usize, &s);
        acc += a * 2u32 * zeta_ratio * pow_rational(&big_n, 2 * i);
    }
    acc /= Rational::from(Integer::from(1) << (2 * m));
    Ok(EvalResult::exact(acc, ctx.precision_bits(), Method::Asymptotic))
}
