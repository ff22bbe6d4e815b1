//! The spectral zeta function of ℤ,
//! `ζ_Z(s) = 4^{-s} π^{-1/2} Γ(1/2 - s) / Γ(1 - s) = C(-2s, -s)`,
//! by three independent routes, and the companion `Z(s) = π 2^s ζ_Z(s/2)`.

use rug::{Float, Integer, Rational};

use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method, Note};
use crate::numerics::bessel::{bessel_i0_scaled_at, series_switch_point};
use crate::numerics::digamma::digamma_at;
use crate::numerics::gamma::gamma_at;
use crate::numerics::quadrature::tanh_sinh;
use crate::numerics::riemann::hurwitz_zeta_int;
use crate::numerics::{binomial_real, escalate};

pub(crate) fn central_binomial(n: u32) -> Integer {
    Integer::from(Integer::binomial_u(2 * n, n))
}

fn half(prec: u32) -> HPReal {
    HPReal::exact(Float::with_val(prec, 0.5))
}

fn lattice_u32(k: &Integer, what: &str) -> Result<u32> {
    k.to_u32()
        .ok_or_else(|| ZetaError::Domain(format!("{what}: lattice index {k} out of range")))
}

/// `ζ_Z(s)`, exact on the integer lattice and via the Gamma quotient elsewhere.
pub fn zeta_z_closed(s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let prec = ctx.precision_bits();
    if let Some(k) = s.near_half_integer(ctx.snap_radius()) {
        if k <= 0 && k.is_even() {
            let n = lattice_u32(&(Integer::from(-&k) / 2), "zeta_z")?;
            return Ok(EvalResult::exact(central_binomial(n).into(), prec, Method::ClosedForm));
        }
        if k > 0 && k.is_even() {
            // C(-2n, -n): both denominator Gammas have poles, the numerator only one.
            let n = HPReal::from_integer(prec, &Integer::from(&k / 2));
            let b = binomial_real(&(-&n).mul_int(2), &-&n, ctx)?;
            debug_assert!(b.pole_cancellation && b.value.value().is_zero());
            return Ok(EvalResult::exact(Rational::new(), prec, Method::ClosedForm).with_note(Note::Zero));
        }
        if k > 0 {
            return Err(ZetaError::Pole(format!("zeta_z({k}/2)")));
        }
    }
    zeta_z_gamma_route(s, ctx)
}

/// The Gamma quotient alone, without the exact lattice shortcuts.
pub fn zeta_z_gamma_route(s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    if let Some(k) = s.near_half_integer(ctx.snap_radius()) {
        if k > 0 {
            let which = if k.is_odd() { "Γ(1/2 - s)" } else { "Γ(1 - s)" };
            return Err(ZetaError::Pole(format!("zeta_z gamma route at {k}/2: {which}")));
        }
    }
    let v = escalate(ctx, "zeta_z", |wp| Ok(zeta_z_at(s, wp)))?;
    Ok(EvalResult::numeric(v, Method::ClosedForm, true))
}

pub(crate) fn zeta_z_at(s: &HPComplex, wp: u32) -> HPComplex {
    let s = s.round_to(wp.max(s.prec()));
    let one = HPComplex::one(wp);
    let g_top = gamma_at(&(&HPComplex::from(half(wp)) - &s), wp);
    let g_bottom = gamma_at(&(&one - &s), wp);
    let four_pow = (-&s).scale(&HPReal::ln2(wp).mul_int(2)).exp();
    (&(&four_pow * &g_top) / &g_bottom).scale(&HPReal::pi(wp).sqrt().recip())
}

/// `ζ_Z(s) = Π_{k≥1} (k-s)² / (k (k-2s))`.
///
/// `K` factors are multiplied out and the rest is summed in closed form:
/// `log Π_{k>K} = Σ_{j≥2} (2^j - 2) s^j ζ(j, K+1) / j`, truncated with the
/// geometric bound `4a r^{J+1} / ((J+1)(1-r))`, `a = K+1`, `r = 2|s|/a`.
pub fn zeta_z_product(s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    if let Some(k) = s.near_half_integer(ctx.snap_radius()) {
        if k > 0 {
            return Err(ZetaError::NeedsLimitInterpretation(format!(
                "product formula at s = {k}/2"
            )));
        }
    }
    let v = escalate(ctx, "zeta_z_product", |wp| product_at(s, wp, ctx.max_terms()))?;
    Ok(EvalResult::numeric(v, Method::Product, true))
}

/// Number of explicit factors used at working precision `wp`.
pub fn product_factor_count(abs_s: f64, wp: u32) -> i64 {
    ((wp / 2) as f64).max(4.0 * abs_s + 8.0).ceil() as i64
}

fn product_at(s: &HPComplex, wp: u32, max_terms: usize) -> Result<HPComplex> {
    let s = s.round_to(wp.max(s.prec()));
    let abs_s = s.mag_upper();
    let big_k = product_factor_count(abs_s, wp);
    if big_k as usize > max_terms {
        return Err(ZetaError::NoConvergence(format!(
            "product needs {big_k} factors, cap is {max_terms}"
        )));
    }
    let neg_s = -&s;
    let neg_two_s = neg_s.mul_int(2);
    let mut prod = HPComplex::one(wp);
    for k in 1..=big_k {
        let kk = HPReal::from_int(wp, k);
        let num = neg_s.add_real(&kk).sqr();
        let den = neg_two_s.add_real(&kk).scale(&kk);
        prod = &prod * &(&num / &den);
    }

    let a = big_k + 1;
    let r = 2.0 * abs_s / a as f64;
    let target = (-(wp as f64) - 8.0).exp2();
    let mut log_tail = HPComplex::zero(wp);
    let mut s_pow = s.clone();
    let mut j: u32 = 2;
    loop {
        let rem = 4.0 * a as f64 * r.powi(j as i32) / (j as f64 * (1.0 - r));
        if rem < target {
            log_tail = log_tail.add_err(rem);
            break;
        }
        s_pow = &s_pow * &s;
        let c = (Integer::from(1) << j) - 2u32;
        let coeff = (&HPReal::from_integer(wp, &c) * &hurwitz_zeta_int(j, a, wp)).div_int(j as i64);
        log_tail = &log_tail + &s_pow.scale(&coeff);
        j += 1;
    }
    Ok(&prod * &log_tail.exp())
}

/// `Π_{k=1}^{K} (k+m)² / (k (k+2m))`, the partial product at `s = -m`, exactly.
pub fn zeta_z_partial_product_exact(m: u32, big_k: u32) -> Rational {
    let mut p = Rational::from(1);
    for k in 1..=big_k {
        let num = Integer::from(k + m).square();
        let den = Integer::from(k) * Integer::from(k + 2 * m);
        p *= Rational::from((num, den));
    }
    p
}

/// `ζ_Z(s) = Γ(s)^{-1} ∫_0^∞ t^{s-1} e^{-2t} I₀(2t) dt` for `0 < Re s < 1/2`.
///
/// `[0, 1]` is integrated after `u = t^σ`, which removes the endpoint
/// singularity; `[1, T]` is split into dyadic pieces; beyond `T` the
/// asymptotic expansion of the Bessel factor is integrated term by term. The
/// quadrature error is an estimate, so the result is not certified.
pub fn zeta_z_mellin(s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let sigma = s.re().to_f64();
    if !(sigma > 0.0 && sigma < 0.5) {
        return Err(ZetaError::Domain(format!(
            "Mellin integral converges only for 0 < Re s < 1/2, got Re s = {sigma}"
        )));
    }
    let wp = ctx.initial_working_bits();
    let switch = series_switch_point(ctx.precision_bits());
    let s = s.round_to(wp.max(s.prec()));
    let integral = mellin_integral(&s, wp, ctx.target_tol() / 16.0, ctx.max_terms(), switch)?;
    let v = &integral / &gamma_at(&s, wp);
    if v.err().is_nan() || v.err() > ctx.target_tol() {
        return Err(ZetaError::NoConvergence(format!(
            "Mellin quadrature error {:.3e} exceeds {:.3e}",
            v.err(),
            ctx.target_tol()
        )));
    }
    Ok(EvalResult::numeric(v, Method::MellinQuadrature, false))
}

fn mellin_integral(s: &HPComplex, wp: u32, tol: f64, max_nodes: usize, switch: f64) -> Result<HPComplex> {
    let sigma = s.real_part();
    let inv_sigma = sigma.recip();
    let tau_over_sigma = &s.imag_part() * &inv_sigma;
    let zero = HPReal::zero(wp);

    // ∫_0^1 t^{s-1} g(t) dt = σ^{-1} ∫_0^1 g(u^{1/σ}) u^{iτ/σ} du
    let near = tanh_sinh(
        &Float::with_val(wp, 0),
        &Float::with_val(wp, 1),
        wp,
        tol,
        max_nodes,
        |u| {
            let ln_u = HPReal::exact(u.clone()).ln();
            let t = (&ln_u * &inv_sigma).exp();
            let g = bessel_i0_scaled_at(&t, wp, switch)?;
            let phase = HPComplex::from_parts(&zero, &(&ln_u * &tau_over_sigma)).exp();
            Ok(phase.scale(&g))
        },
    )?;
    let mut total = near.value.scale(&inv_sigma);

    let one = HPComplex::one(wp);
    let s_minus_1 = s - &one;
    let cut = tail_start(wp);
    let mut lo = Float::with_val(wp, 1);
    while lo < cut {
        let hi = Float::with_val(wp, &lo * 2u32).min(&Float::with_val(wp, cut));
        let piece = tanh_sinh(&lo, &hi, wp, tol, max_nodes, |t| {
            let tb = HPReal::exact(t.clone());
            let g = bessel_i0_scaled_at(&tb, wp, switch)?;
            Ok(s_minus_1.scale(&tb.ln()).exp().scale(&g))
        })?;
        total = &total + &piece.value;
        lo = hi;
    }
    Ok(&total + &mellin_tail(s, cut, wp))
}

/// Start of the asymptotic tail: past it the exponentially small part of the
/// Bessel expansion is below `2^{-wp}`.
fn tail_start(wp: u32) -> f64 {
    (wp as f64 * std::f64::consts::LN_2 / 4.0 + 8.0).ceil()
}

/// `∫_T^∞ t^{s-1} (4πt)^{-1/2} Σ_k c_k (2t)^{-k} dt`
/// `= (4π)^{-1/2} Σ_k c_k 2^{-k} T^{s-1/2-k} / (k + 1/2 - s)`.
fn mellin_tail(s: &HPComplex, cut: f64, wp: u32) -> HPComplex {
    let big_t = HPReal::from_f64(wp, cut);
    let ln_t = big_t.ln();
    let inv_2t = big_t.mul_int(2).recip();
    let h = HPComplex::from(half(wp));
    let mut power = (s - &h).scale(&ln_t).exp();
    let mut c = HPReal::one(wp);
    let mut sum = HPComplex::zero(wp);
    let target = (-(wp as f64) - 8.0).exp2();
    let mut k: i64 = 0;
    loop {
        let denom = (&h - s).add_real(&HPReal::from_int(wp, k));
        let term = (&power / &denom).scale(&c);
        let mag = term.mag_upper();
        if mag < target || k > 8 * cut as i64 {
            // first neglected term (doubled) plus the exponentially small part
            // of the Bessel factor, ∫_T^∞ e^{-4t} dt
            sum = sum.add_err(2.0 * mag + (-4.0 * cut).exp() / 4.0);
            break;
        }
        sum = &sum + &term;
        k += 1;
        c = c.mul_int((2 * k - 1) * (2 * k - 1)).div_int(8 * k);
        power = power.scale(&inv_2t);
    }
    sum.scale(&HPReal::pi(wp).mul_int(4).sqrt().recip())
}

/// `Z(s) = π 2^s ζ_Z(s/2)`.
pub fn big_z(s: &HPComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let half_s = s.div_int(2);
    let inner = zeta_z_closed(&half_s, ctx)?;
    if inner.note == Some(Note::Zero) {
        return Ok(inner);
    }
    let v = escalate(ctx, "big_z", |wp| {
        let z = match &inner.exact {
            Some(q) => HPComplex::from(HPReal::from_rational(wp, q)),
            None => zeta_z_at(&half_s, wp),
        };
        let s = s.round_to(wp.max(s.prec()));
        let two_pow = s.scale(&HPReal::ln2(wp)).exp();
        Ok((&z * &two_pow).scale(&HPReal::pi(wp)))
    })?;
    Ok(EvalResult::numeric(v, Method::ClosedForm, true))
}

/// `Z(-j) = π 2^{-j} ζ_Z(-j/2)` at working precision, with the central
/// binomial used exactly for even `j`.
pub(crate) fn big_z_neg_int_at(j: u32, wp: u32) -> HPReal {
    let inner = if j.is_multiple_of(2) {
        HPReal::from_integer(wp, &central_binomial(j / 2))
    } else {
        let s = HPReal::from_rational(wp, &Rational::from((-(j as i64), 2)));
        zeta_z_at(&HPComplex::from(s), wp).real_part()
    };
    (&inner * &HPReal::pi(wp)).mul_pow2(-(j as i32))
}

/// `ζ_Z'(s) = ζ_Z(s) (-ψ(1/2 - s) - 2 log 2 + ψ(1 - s))`, with exact values on
/// the integer lattice.
pub fn zeta_z_deriv(s: &HPReal, ctx: &PrecisionContext) -> Result<EvalResult> {
    let prec = ctx.precision_bits();
    if let Some(k) = HPComplex::from(s).near_half_integer(ctx.snap_radius()) {
        if k.is_even() {
            let n = Integer::from(&k / 2);
            return if n > 0 {
                let n = lattice_u32(&n, "zeta_z_deriv")?;
                Ok(EvalResult::exact(
                    zeta_z_deriv_at_positive_integer(n),
                    prec,
                    Method::ClosedForm,
                ))
            } else {
                let n = lattice_u32(&(-n), "zeta_z_deriv")?;
                Ok(EvalResult::exact(
                    zeta_z_deriv_at_negative_integer(n),
                    prec,
                    Method::ClosedForm,
                ))
            };
        }
        if k > 0 {
            return Err(ZetaError::Domain(format!("zeta_z_deriv at the pole {k}/2")));
        }
        let n = lattice_u32(&((1 - k) / 2), "zeta_z_deriv")?;
        return zeta_z_deriv_at_negative_half_integer(n, ctx);
    }
    let v = escalate(ctx, "zeta_z_deriv", |wp| {
        let x = s.round_to(wp.max(s.prec()));
        let one = HPReal::one(wp);
        let z = zeta_z_at(&HPComplex::from(&x), wp).real_part();
        let bracket =
            &(&digamma_at(&(&one - &x), wp) - &digamma_at(&(&half(wp) - &x), wp)) - &HPReal::ln2(wp).mul_int(2);
        Ok(&z * &bracket)
    })?;
    Ok(EvalResult::real(v, Method::ClosedForm, true))
}

/// `ζ_Z'(n) = 1 / (n C(2n, n))` for `n ≥ 1`.
pub fn zeta_z_deriv_at_positive_integer(n: u32) -> Rational {
    assert!(n >= 1, "positive integer required");
    Rational::from((Integer::from(1), central_binomial(n) * n))
}

/// `ζ_Z'(-n) = C(2n, n) Σ_{k=1}^{n} (1/k - 2/(2k-1))`; zero at `n = 0`.
pub fn zeta_z_deriv_at_negative_integer(n: u32) -> Rational {
    let mut sum = Rational::new();
    for k in 1..=n {
        sum += Rational::from((1, k)) - Rational::from((2, 2 * k - 1));
    }
    sum * central_binomial(n)
}

/// `ζ_Z'(-n + 1/2)` for `n ≥ 1`: `(8/π)(1 - 2 log 2)` at `n = 1`, otherwise
/// `4^{2n} / (2πn C(2n,n)) · (-4 log 2 - H_{n-1} + 2 Σ_{k=1}^{n} 1/(2k-1))`.
pub fn zeta_z_deriv_at_negative_half_integer(n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n == 0 {
        return Err(ZetaError::Domain("zeta_z_deriv at the pole 1/2".into()));
    }
    let v = escalate(ctx, "zeta_z_deriv", |wp| {
        let pi = HPReal::pi(wp);
        let ln2 = HPReal::ln2(wp);
        if n == 1 {
            let one = HPReal::one(wp);
            return Ok(&(&one - &ln2.mul_int(2)).mul_int(8) / &pi);
        }
        let mut rational = Rational::new();
        for k in 1..n {
            rational -= Rational::from((1, k));
        }
        for k in 1..=n {
            rational += Rational::from((2, 2 * k - 1));
        }
        let bracket = &HPReal::from_rational(wp, &rational) - &ln2.mul_int(4);
        let scale = Rational::from((Integer::from(1) << (4 * n), central_binomial(n) * (2 * n)));
        Ok(&(&HPReal::from_rational(wp, &scale) * &bracket) / &pi)
    })?;
    Ok(EvalResult::real(v, Method::ClosedForm, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn q(p: i64, d: i64) -> HPComplex {
        HPReal::from_rational(256, &Rational::from((p, d))).into()
    }

    fn near(r: &EvalResult, want: &HPReal, tol: f64) -> bool {
        (&r.re() - want).mag_upper() <= tol && r.value.im().to_f64().abs() <= tol
    }

    #[test]
    fn closed_special_values() {
        let c = ctx();
        assert_eq!(zeta_z_closed(&q(0, 1), &c).unwrap().exact, Some(Rational::from(1)));
        assert_eq!(zeta_z_closed(&q(-2, 1), &c).unwrap().exact, Some(Rational::from(6)));
        let v = zeta_z_closed(&q(-1, 2), &c).unwrap();
        let four_over_pi = HPReal::pi(300).recip().mul_int(4);
        assert!(near(&v, &four_over_pi, 1e-30), "{v:?}");
    }

    #[test]
    fn closed_lattice_zeros_and_poles() {
        let c = ctx();
        for n in 1..=10 {
            let v = zeta_z_closed(&q(n, 1), &c).unwrap();
            assert_eq!(v.exact, Some(Rational::new()));
            assert_eq!(v.note, Some(Note::Zero));
        }
        for k in [1, 3, 9] {
            assert!(matches!(zeta_z_closed(&q(k, 2), &c), Err(ZetaError::Pole(_))));
        }
    }

    #[test]
    fn gamma_route_matches_the_exact_path() {
        let c = ctx();
        for n in 1..=12u32 {
            let v = zeta_z_gamma_route(&q(-(n as i64), 1), &c).unwrap();
            assert!(near(&v, &HPReal::from_integer(300, &central_binomial(n)), 1e-25));
        }
    }

    #[test]
    fn product_small_values() {
        let c = ctx();
        let v = zeta_z_product(&q(-1, 1), &c).unwrap();
        assert!(near(&v, &HPReal::from_int(300, 2), 1e-30), "{v:?}");
        let v = zeta_z_product(&q(0, 1), &c).unwrap();
        assert!(near(&v, &HPReal::one(300), 1e-30));
        let a = zeta_z_product(&q(1, 4), &c).unwrap();
        let b = zeta_z_closed(&q(1, 4), &c).unwrap();
        assert!(a.agrees_with(&b) && a.certified);
        assert!(matches!(
            zeta_z_product(&q(2, 1), &c),
            Err(ZetaError::NeedsLimitInterpretation(_))
        ));
    }

    #[test]
    fn product_off_the_real_axis() {
        let c = ctx();
        let s = HPComplex::from_parts(
            &HPReal::from_rational(256, &Rational::from((-7, 3))),
            &HPReal::from_rational(256, &Rational::from((5, 2))),
        );
        let a = zeta_z_product(&s, &c).unwrap();
        let b = zeta_z_closed(&s, &c).unwrap();
        assert!(a.agrees_with(&b), "{a:?} {b:?}");
        assert!((&a.value - &b.value).mag_upper() < 1e-28);
    }

    #[test]
    fn partial_products_telescope_to_the_central_binomial() {
        for m in 1..=6u32 {
            let target = Rational::from(central_binomial(m));
            let mut prev = Rational::new();
            for k in (2 * m)..(2 * m + 40) {
                let p = zeta_z_partial_product_exact(m, k);
                // Π_{i=1}^{m} (K+i)/(K+m+i) is the missing factor
                let mut missing = Rational::from(1);
                for i in 1..=m {
                    missing *= Rational::from((k + i, k + m + i));
                }
                assert_eq!(p, Rational::from(&target * &missing));
                assert!(p > prev && p < target);
                prev = p;
            }
        }
    }

    #[test]
    fn mellin_matches_closed_form() {
        let c = ctx();
        for s in [q(1, 4), q(1, 10)] {
            let a = zeta_z_mellin(&s, &c).unwrap();
            let b = zeta_z_closed(&s, &c).unwrap();
            assert!(!a.certified);
            assert!((&a.value - &b.value).mag_upper() < 1e-25, "{a:?} vs {b:?}");
        }
        assert!(matches!(zeta_z_mellin(&q(3, 5), &c), Err(ZetaError::Domain(_))));
    }

    #[test]
    fn big_z_values() {
        let c = ctx();
        let pi = HPReal::pi(300);
        assert!(near(&big_z(&q(0, 1), &c).unwrap(), &pi, 1e-30));
        assert!(near(&big_z(&q(-1, 1), &c).unwrap(), &HPReal::from_int(300, 2), 1e-30));
        assert!(near(&big_z(&q(-2, 1), &c).unwrap(), &pi.div_int(2), 1e-30));
    }

    #[test]
    fn derivative_special_values() {
        let c = ctx();
        let r = |p, d| HPReal::from_rational(256, &Rational::from((p, d)));
        assert_eq!(zeta_z_deriv(&r(0, 1), &c).unwrap().exact, Some(Rational::new()));
        assert_eq!(zeta_z_deriv(&r(-2, 1), &c).unwrap().exact, Some(Rational::from(-7)));
        assert_eq!(zeta_z_deriv(&r(1, 1), &c).unwrap().exact, Some(Rational::from((1, 2))));
        assert_eq!(zeta_z_deriv(&r(2, 1), &c).unwrap().exact, Some(Rational::from((1, 12))));
        assert_eq!(zeta_z_deriv(&r(3, 1), &c).unwrap().exact, Some(Rational::from((1, 60))));
        let v = zeta_z_deriv(&r(-1, 2), &c).unwrap();
        let want = &(&HPReal::one(300) - &HPReal::ln2(300).mul_int(2)).mul_int(8) / &HPReal::pi(300);
        assert!(near(&v, &want, 1e-30));
        assert!(matches!(zeta_z_deriv(&r(3, 2), &c), Err(ZetaError::Domain(_))));
    }

    #[test]
    fn half_integer_sum_formula_also_holds_at_n_one() {
        // The sum formula is stated for n ≥ 2; at n = 1 it reduces to (8/π)(1 - 2 log 2).
        let c = ctx();
        for n in 1..=6u32 {
            let lattice = zeta_z_deriv_at_negative_half_integer(n, &c).unwrap();
            let off = HPReal::from_rational(
                256,
                &(Rational::from((1, 2)) - n + Rational::from((1, Integer::from(10).pow(30)))),
            );
            let general = zeta_z_deriv(&off, &c).unwrap();
            assert!((&lattice.re() - &general.re()).mag_upper() < 1e-25, "n = {n}");
        }
    }
}
