//! Digamma function ψ₀ on the real line.

use rug::{Float, Rational};

use super::{bernoulli, escalate, log2_abs};
use crate::ball::HPReal;
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};

/// `ψ₀(x)` for real `x` off the nonpositive integers.
pub fn digamma(x: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    if let Some(k) = x.value().to_integer() {
        let d = Float::with_val(x.prec() + 1, x.value() - &k).abs().to_f64();
        if k <= 0 && d <= ctx.snap_radius() {
            return Err(ZetaError::Pole(format!("digamma({k})")));
        }
    }
    escalate(ctx, "digamma", |wp| Ok(digamma_at(x, wp)))
}

pub(crate) fn digamma_at(x: &HPReal, wp: u32) -> HPReal {
    let x = x.round_to(wp.max(x.prec()));
    if *x.value() < 0.5 {
        // ψ(x) = ψ(1-x) - π cot(πx)
        let reflected = digamma_at(&(&HPReal::one(wp) - &x), wp);
        let cot = &x.cos_pi() / &x.sin_pi();
        return &reflected - &(&HPReal::pi(wp) * &cot);
    }
    let threshold = (wp as f64 / 2.0).max(20.0);
    let xf = x.to_f64();
    let shift = if xf < threshold {
        (threshold - xf).ceil() as i64
    } else {
        0
    };

    // ψ(x) = ψ(x+N) - Σ_{j<N} 1/(x+j)
    let mut correction = HPReal::zero(wp);
    let mut w = x;
    for _ in 0..shift {
        correction = &correction + &w.recip();
        w = &w + &HPReal::one(wp);
    }

    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut acc = &w.ln() - &inv.div_int(2);
    let log2_w = w.to_f64().log2();
    let target = -(wp as f64) - 8.0;
    let mut power = inv2.clone();
    let mut k: u64 = 1;
    loop {
        let b = bernoulli(2 * k as usize);
        let log2_term = log2_abs(&b) - ((2 * k) as f64).log2() - (2 * k) as f64 * log2_w;
        if log2_term < target {
            // For real positive arguments the remainder is bounded by the first
            // neglected term.
            acc = acc.add_err(log2_term.exp2());
            break;
        }
        let coeff = HPReal::from_rational(wp, &(b / Rational::from(2 * k)));
        acc = &acc - &(&coeff * &power);
        power = &power * &inv2;
        k += 1;
        if k > 4 * wp as u64 {
            acc = acc.add_err(f64::INFINITY);
            break;
        }
    }
    &acc - &correction
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn at(p: i64, q: i64) -> HPReal {
        HPReal::from_rational(256, &Rational::from((p, q)))
    }

    fn gamma_const() -> HPReal {
        HPReal::euler_gamma(300)
    }

    fn assert_close(a: &HPReal, b: &HPReal, tol: f64) {
        let d = (a - b).mag_upper();
        assert!(d <= tol, "{a:?} vs {b:?}: {d:e}");
    }

    #[test]
    fn at_one_is_minus_euler_gamma() {
        assert_close(&digamma(&at(1, 1), &ctx()).unwrap(), &-gamma_const(), 1e-30);
    }

    #[test]
    fn at_half() {
        let want = &-gamma_const() - &HPReal::ln2(300).mul_int(2);
        assert_close(&digamma(&at(1, 2), &ctx()).unwrap(), &want, 1e-30);
    }

    #[test]
    fn at_seven_halves() {
        // -γ - 2 log 2 + 2(1 + 1/3 + 1/5)
        let harmonic_odd = HPReal::from_rational(300, &Rational::from((46, 15)));
        let want = &(&-gamma_const() - &HPReal::ln2(300).mul_int(2)) + &harmonic_odd;
        assert_close(&digamma(&at(7, 2), &ctx()).unwrap(), &want, 1e-30);
    }

    #[test]
    fn agrees_with_mpfr() {
        for &(p, q) in &[(1, 3), (-5, 2), (-33, 7), (1001, 10), (3, 1000)] {
            let got = digamma(&at(p, q), &ctx()).unwrap();
            let want = Float::with_val(300, Float::with_val(300, &Rational::from((p, q))).digamma_ref());
            let d = Float::with_val(300, got.value() - &want).abs().to_f64();
            assert!(d < 1e-60, "ψ({p}/{q}) diff {d:e}");
        }
    }

    #[test]
    fn reflection_identity() {
        // ψ(1-z) = ψ(z) + π cot(πz)
        for i in 1..40 {
            let z = at(i * 7 - 130, 17);
            if z.value().is_integer() {
                continue;
            }
            let lhs = digamma(&(&HPReal::one(256) - &z), &ctx()).unwrap();
            let cot = &z.cos_pi() / &z.sin_pi();
            let rhs = &digamma(&z, &ctx()).unwrap() + &(&HPReal::pi(300) * &cot);
            assert_close(&lhs, &rhs, 1e-28);
        }
    }

    #[test]
    fn poles() {
        assert!(matches!(digamma(&at(-3, 1), &ctx()), Err(ZetaError::Pole(_))));
        assert!(matches!(digamma(&at(0, 1), &ctx()), Err(ZetaError::Pole(_))));
    }
}
