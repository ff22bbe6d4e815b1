//! Gamma function by upward shift and the Stirling series.
//!
//! For `Re s ≥ 1/2` the argument is shifted to `w = s + N` with
//! `Re w ≥ max(20, wp/2)`, `ln Γ(w)` is summed from the Stirling series with the
//! remainder bounded by the first neglected term times `sec^{2K}(arg(w)/2)`, and
//! `Γ(s) = exp(ln Γ(w)) / (s (s+1) ··· (s+N-1))`. The left half-plane goes through
//! the reflection formula.

use rug::{Float, Rational};

use super::{bernoulli, escalate, log2_abs};
use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};

/// `Γ(s)` for complex `s` off the nonpositive integers.
pub fn gamma(s: &HPComplex, ctx: &PrecisionContext) -> Result<HPComplex> {
    check_pole(s, ctx)?;
    escalate(ctx, "gamma", |wp| Ok(gamma_at(s, wp)))
}

/// `Γ(x)` for real `x` off the nonpositive integers.
pub fn gamma_real(x: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    gamma(&HPComplex::from(x), ctx).map(|g| g.real_part())
}

fn check_pole(s: &HPComplex, ctx: &PrecisionContext) -> Result<()> {
    if let Some(k) = s.near_half_integer(ctx.snap_radius()) {
        if k <= 0 && k.is_even() {
            return Err(ZetaError::Pole(format!("gamma({})", Rational::from(k) / 2)));
        }
    }
    Ok(())
}

/// One evaluation at working precision `wp`; the radius may be infinite near poles.
pub(crate) fn gamma_at(s: &HPComplex, wp: u32) -> HPComplex {
    let s = s.round_to(wp.max(s.prec()));
    if *s.re() < 0.5 {
        // Γ(s) = π / (sin(πs) Γ(1-s))
        let one_minus = &HPComplex::one(wp) - &s;
        let denom = &s.sin_pi() * &gamma_at(&one_minus, wp);
        return &HPComplex::from(HPReal::pi(wp)) / &denom;
    }
    let threshold = (wp as f64 / 2.0).max(20.0);
    let re = s.re().to_f64();
    let shift = if re < threshold {
        (threshold - re).ceil() as i64
    } else {
        0
    };

    // ln Γ(s) ≡ ln Γ(w) - Σ ln(s + j) modulo 2πi, which exp removes; working
    // with logarithms keeps every magnitude moderate.
    let mut log_product = HPComplex::zero(wp);
    let mut w = s.clone();
    for _ in 0..shift {
        log_product = &log_product + &w.ln();
        w = w.add_real(&HPReal::one(wp));
    }
    (&ln_gamma_stirling(&w, wp) - &log_product).exp()
}

/// `ln Γ(w)` for `Re w` large, principal branch.
pub(crate) fn ln_gamma_stirling(w: &HPComplex, wp: u32) -> HPComplex {
    let half = HPReal::exact(Float::with_val(wp, 0.5));
    let ln_w = w.ln();
    let two_pi = HPReal::pi(wp).mul_int(2);
    let mut acc = &(&w.add_real(&-&half) * &ln_w) - w;
    acc = acc.add_real(&(&two_pi.ln() * &half));

    let wr = w.re().to_f64();
    let wi = w.im().to_f64();
    let log2_w = wr.hypot(wi).log2();
    // sec(θ/2) with θ = arg w
    let log2_sec = -(0.5 * wi.atan2(wr)).cos().log2();
    let target = -(wp as f64) - 8.0;

    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut power = inv;
    let mut k: u64 = 1;
    loop {
        let b = bernoulli(2 * k as usize);
        let denom = (2 * k) * (2 * k - 1);
        let log2_term = log2_abs(&b) - (denom as f64).log2() - (2 * k - 1) as f64 * log2_w;
        if log2_term + 2.0 * k as f64 * log2_sec < target {
            let bound = (log2_term + 2.0 * k as f64 * log2_sec).exp2();
            return acc.add_err(bound);
        }
        let coeff = HPReal::from_rational(wp, &(b / Rational::from(denom)));
        acc = &acc + &power.scale(&coeff);
        power = &power * &inv2;
        k += 1;
        if k > 4 * wp as u64 {
            // Not reachable with the shift above; keep the radius honest anyway.
            return acc.add_err(f64::INFINITY);
        }
    }
}
