//! Riemann zeta function near the real axis.
//!
//! Euler–Maclaurin summation for `Re s ≥ -1/2`; the functional equation maps
//! the rest of the plane onto that region.

use super::gamma::gamma_at;
use super::{bernoulli, escalate, log2_abs, log2_factorial};
use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};

/// `ζ(s)` for `s ≠ 1`.
pub fn riemann_zeta_numeric(s: &HPComplex, ctx: &PrecisionContext) -> Result<HPComplex> {
    if s.near_half_integer(ctx.snap_radius()) == Some(2.into()) {
        return Err(ZetaError::Pole("zeta(1)".into()));
    }
    escalate(ctx, "riemann_zeta_numeric", |wp| Ok(zeta_at(s, wp)))
}

/// One evaluation at working precision `wp`.
pub(crate) fn zeta_at(s: &HPComplex, wp: u32) -> HPComplex {
    let s = s.round_to(wp.max(s.prec()));
    if *s.re() < -0.5 {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one = HPComplex::one(wp);
        let w = &one - &s;
        let two = HPComplex::from(HPReal::from_int(wp, 2));
        let pi = HPComplex::from(HPReal::pi(wp));
        let factor = &(&two.pow(&s) * &pi.pow(&(&s - &one))) * &s.div_int(2).sin_pi();
        if factor.mag_upper() == 0.0 {
            return HPComplex::zero(wp);
        }
        return &(&factor * &gamma_at(&w, wp)) * &euler_maclaurin(&w, wp);
    }
    euler_maclaurin(&s, wp)
}

/// Euler–Maclaurin with `N` terms summed directly and the remainder after the
/// last Bernoulli correction bounded by
/// `|(s)_{2p+1} B_{2p+2} N^{-σ-2p-1} / ((2p+2)! (σ+2p+1))|`.
fn euler_maclaurin(s: &HPComplex, wp: u32) -> HPComplex {
    let sigma = s.re().to_f64();
    let abs_s = s.re().to_f64().hypot(s.im().to_f64());
    let n = ((wp as f64) / 2.0 + abs_s).max(16.0).ceil() as i64;
    let neg_s = -s;

    let mut sum = HPComplex::zero(wp);
    for k in 1..n {
        let lnk = HPReal::from_int(wp, k).ln();
        sum = &sum + &neg_s.scale(&lnk).exp();
    }
    let big_n = HPReal::from_int(wp, n);
    let ln_n = big_n.ln();
    // N^{-s}
    let n_pow = neg_s.scale(&ln_n).exp();
    let one = HPComplex::one(wp);
    let s_minus_1 = &s.clone() - &one;
    sum = &sum + &(&n_pow.scale(&big_n) / &s_minus_1);
    sum = &sum + &n_pow.div_int(2);

    // t_j = (s)_{2j-1} N^{-s-2j+1}
    let inv_n2 = big_n.sqr().recip();
    let mut t = &n_pow * &s.scale(&big_n.recip());
    let log2_n = (n as f64).log2();
    let target = -(wp as f64) - 8.0;
    let mut log2_poch = abs_s.max(f64::MIN_POSITIVE).log2();
    let mut j: i64 = 1;
    loop {
        let b = bernoulli(2 * j as usize);
        let coeff = HPReal::from_rational(wp, &(b / rug::Integer::from(rug::Integer::factorial(2 * j as u32))));
        sum = &sum + &t.scale(&coeff);

        // remainder after term j
        let k = 2 * j + 1;
        let s_k1 = (sigma + (k - 2) as f64).hypot(s.im().to_f64());
        let s_k = (sigma + (k - 1) as f64).hypot(s.im().to_f64());
        let log2_poch_next = log2_poch + s_k1.log2() + s_k.log2();
        let b_next = log2_abs(&bernoulli(2 * j as usize + 2));
        let denom = sigma + k as f64;
        let log2_rem = log2_poch_next + b_next
            - log2_factorial(2 * j as u64 + 2)
            - (sigma + k as f64) * log2_n
            - denom.abs().log2();
        if log2_rem < target {
            return sum.add_err(log2_rem.exp2());
        }
        if j > 4 * n {
            return sum.add_err(f64::INFINITY);
        }
        let f1 = s.add_real(&HPReal::from_int(wp, k - 2));
        let f2 = s.add_real(&HPReal::from_int(wp, k - 1));
        t = (&(&t * &f1) * &f2).scale(&inv_n2);
        log2_poch = log2_poch_next;
        j += 1;
    }
}

/// Hurwitz `ζ(j, a) = Σ_{k≥0} (k+a)^{-j}` for integer `j ≥ 2` and `a` large
/// compared with `j`, by Euler–Maclaurin with no directly summed terms. The
/// truncation target is relative to the size `a^{1-j}` of the result.
pub(crate) fn hurwitz_zeta_int(j: u32, a: i64, wp: u32) -> HPReal {
    debug_assert!(j >= 2 && a >= 1);
    let big_a = HPReal::from_int(wp, a);
    let inv_a = big_a.recip();
    let a_pow = inv_a.powi(j as i64);
    let jf = j as f64;
    let mut sum = &a_pow.mul_int(a).div_int(j as i64 - 1) + &a_pow.div_int(2);
    // t_i = (j)_{2i-1} a^{-j-2i+1}
    let mut t = &a_pow.mul_int(j as i64) * &inv_a;
    let inv_a2 = inv_a.sqr();
    let log2_a = (a as f64).log2();
    let target = -(wp as f64) - 8.0 + (1.0 - jf) * log2_a;
    let mut log2_poch = jf.log2();
    let mut i: i64 = 1;
    loop {
        let b = bernoulli(2 * i as usize);
        let coeff = HPReal::from_rational(wp, &(b / rug::Integer::from(rug::Integer::factorial(2 * i as u32))));
        sum = &sum + &(&t * &coeff);
        let k = 2 * i + 1;
        let log2_poch_next = log2_poch + (jf + (k - 2) as f64).log2() + (jf + (k - 1) as f64).log2();
        let log2_rem = log2_poch_next + log2_abs(&bernoulli(2 * i as usize + 2))
            - log2_factorial(2 * i as u64 + 2)
            - (jf + k as f64) * log2_a
            - (jf + k as f64).log2();
        if log2_rem < target {
            return sum.add_err(log2_rem.exp2());
        }
        if i > 4 * a {
            return sum.add_err(f64::INFINITY);
        }
        t = &(&t * &inv_a2) * &HPReal::from_int(wp, (j as i64 + k - 2) * (j as i64 + k - 1));
        log2_poch = log2_poch_next;
        i += 1;
    }
}
