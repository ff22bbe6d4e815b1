//! Exponentially scaled modified Bessel function `e^{-2t} I₀(2t)`, the heat
//! kernel of the integer lattice.

use rug::Float;

use super::escalate;
use crate::ball::HPReal;
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};

/// Largest `t` handled by the power series at a given context precision.
pub fn series_switch_point(precision_bits: u32) -> f64 {
    (precision_bits as f64 / 2.0).max(30.0)
}

/// `e^{-2t} I₀(2t)` for `t ≥ 0`.
pub fn bessel_i0_scaled(t: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    if t.is_negative() {
        return Err(ZetaError::Domain(format!(
            "bessel_i0_scaled needs t >= 0, got {:.6e}",
            t.value()
        )));
    }
    let switch = series_switch_point(ctx.precision_bits());
    escalate(ctx, "bessel_i0_scaled", |wp| bessel_i0_scaled_at(t, wp, switch))
}

/// One evaluation at working precision `wp`. The derivative of the scaled
/// function is bounded by 2 in absolute value, which carries the input radius.
pub(crate) fn bessel_i0_scaled_at(t: &HPReal, wp: u32, switch: f64) -> Result<HPReal> {
    let mid = HPReal::exact(Float::with_val(wp.max(t.prec()), t.value()));
    let tf = mid.to_f64().max(0.0);
    let v = if tf <= switch {
        series(&mid, wp)
    } else {
        asymptotic(&mid, wp)?
    };
    Ok(v.add_err(2.0 * t.err()))
}

/// `e^{-2t} Σ_k t^{2k} / (k!)²`
fn series(t: &HPReal, wp: u32) -> HPReal {
    let t2 = t.sqr();
    let mut term = HPReal::one(wp);
    let mut sum = HPReal::one(wp);
    let tf = t.to_f64();
    let target = -(wp as f64) - 8.0;
    let mut k: i64 = 0;
    loop {
        k += 1;
        term = (&term * &t2).div_int(k * k);
        sum = &sum + &term;
        // past the peak the ratio t²/(k+1)² is below one and the tail is geometric
        let ratio = tf * tf / ((k + 1) * (k + 1)) as f64;
        if ratio < 0.5 {
            let rel = term.to_f64().log2() - sum.to_f64().log2();
            if rel < target || term.value().is_zero() {
                let tail = term.mag_upper() * ratio / (1.0 - ratio);
                sum = sum.add_err(tail);
                break;
            }
        }
    }
    let scale = t.mul_int(-2).exp();
    &sum * &scale
}

/// `(4πt)^{-1/2} Σ_k c_k (2t)^{-k}`, `c_k = ((2k-1)!!)² / (k! 8^k)`.
fn asymptotic(t: &HPReal, wp: u32) -> Result<HPReal> {
    let x = t.mul_int(2);
    let inv_x = x.recip();
    let mut coeff = HPReal::one(wp);
    let mut power = HPReal::one(wp);
    let mut sum = HPReal::one(wp);
    let mut last = 1.0f64;
    let target = (-(wp as f64) - 8.0).exp2();
    let mut k: i64 = 0;
    loop {
        k += 1;
        coeff = coeff.mul_int((2 * k - 1) * (2 * k - 1)).div_int(8 * k);
        power = &power * &inv_x;
        let term = &coeff * &power;
        let mag = term.mag_upper();
        if mag < target {
            // Twice the first neglected term, plus the exponentially small
            // contribution the series does not see.
            let extra = (-2.0 * x.to_f64()).exp();
            sum = sum.add_err(2.0 * mag + extra);
            break;
        }
        if mag > last {
            return Err(ZetaError::NoConvergence(format!(
                "asymptotic Bessel series diverges before reaching 2^-{wp} at t = {:.3e}",
                t.to_f64()
            )));
        }
        last = mag;
        sum = &sum + &term;
    }
    let four_pi_t = &HPReal::pi(wp).mul_int(4) * t;
    Ok(&sum / &four_pi_t.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    /// Independent oracle: plain `f64`-free power series of I₀ with a
    /// remainder bound, evaluated in exact rationals then scaled.
    fn oracle(t: i64, prec: u32) -> Float {
        let t2 = Rational::from(t * t);
        let mut term = Rational::from(1);
        let mut sum = Rational::from(1);
        for k in 1..400u64 {
            term *= &t2;
            term /= Rational::from(k * k);
            sum += &term;
        }
        let e = Float::with_val(prec, -2 * t).exp();
        Float::with_val(prec, &sum) * e
    }

    #[test]
    fn at_zero_is_one() {
        let v = bessel_i0_scaled(&HPReal::zero(256), &ctx()).unwrap();
        assert_eq!(v.to_f64(), 1.0);
    }

    #[test]
    fn at_one_matches_series_oracle() {
        let v = bessel_i0_scaled(&HPReal::one(256), &ctx()).unwrap();
        let d = Float::with_val(300, v.value() - oracle(1, 300)).abs().to_f64();
        assert!(d < 1e-60, "{d:e}");
    }

    #[test]
    fn both_regimes_agree_near_the_switch() {
        // Force each branch at the same point and compare.
        let t = HPReal::from_int(256, 200);
        let s = bessel_i0_scaled_at(&t, 256, 1e9).unwrap();
        let a = bessel_i0_scaled_at(&t, 256, 1.0).unwrap();
        assert!((&s - &a).mag_upper() < 1e-60);
        let s40 = bessel_i0_scaled_at(&HPReal::from_int(300, 40), 300, 1e9).unwrap();
        let d = Float::with_val(300, s40.value() - oracle(40, 300)).abs().to_f64();
        assert!(d < 1e-60);
    }

    #[test]
    fn large_argument_leading_term() {
        let t = HPReal::from_int(256, 10_000);
        let v = bessel_i0_scaled(&t, &ctx()).unwrap().to_f64();
        let lead = 1.0 / (4.0 * std::f64::consts::PI * 1e4).sqrt();
        assert!(((v - lead) / lead).abs() < 0.01);
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(bessel_i0_scaled(&HPReal::from_int(256, -1), &ctx()).is_err());
    }
}
