//! Generalized binomial coefficient `Γ(a+1) / (Γ(b+1) Γ(a-b+1))` with pole bookkeeping.

use rug::{Float, Integer};

use super::escalate;
use super::gamma::gamma_at;
use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};

/// A binomial value; `pole_cancellation` marks an exact zero produced by
/// denominator poles outnumbering numerator poles.
#[derive(Debug, Clone)]
pub struct BinomialValue {
    pub value: HPReal,
    pub pole_cancellation: bool,
}

impl BinomialValue {
    fn exact(value: Integer, prec: u32) -> Self {
        Self {
            value: HPReal::from_integer(prec, &value),
            pole_cancellation: false,
        }
    }

    fn cancelled_zero(prec: u32) -> Self {
        Self {
            value: HPReal::zero(prec),
            pole_cancellation: true,
        }
    }
}

/// Nearest integer to `x` when `x` lies within `radius` of it.
fn snapped_integer(x: &Float, radius: f64) -> Option<Integer> {
    let k = x.to_integer()?;
    let d = Float::with_val(x.prec() + 1, x - &k).abs().to_f64();
    (d <= radius).then_some(k)
}

/// `p ≥ 0` with `x = -p` when `x` is (within `radius`) a nonpositive integer,
/// i.e. a pole of Γ.
fn gamma_pole_index(x: &Float, radius: f64) -> Option<Integer> {
    snapped_integer(x, radius).filter(|k| *k <= 0).map(|k| -k)
}

/// `C(a, b) = Γ(a+1) / (Γ(b+1) Γ(a-b+1))`, continued through removable poles.
pub fn binomial_real(a: &HPReal, b: &HPReal, ctx: &PrecisionContext) -> Result<BinomialValue> {
    let prec = ctx.precision_bits();
    let radius = ctx.snap_radius();
    let a_int = snapped_integer(a.value(), radius);
    let b_int = snapped_integer(b.value(), radius);

    if let (Some(ai), Some(bi)) = (&a_int, &b_int) {
        if *ai >= 0 {
            if *bi < 0 || bi > ai {
                return Ok(BinomialValue::exact(Integer::new(), prec));
            }
            let n = ai
                .to_u32()
                .ok_or_else(|| ZetaError::Domain("integer too large".into()))?;
            let k = bi.to_u32().expect("0 <= b <= a");
            return Ok(BinomialValue::exact(Integer::from(Integer::binomial_u(n, k)), prec));
        }
    }

    let wp = prec + 8;
    let one = HPReal::one(wp);
    let top = a + &one;
    let left = b + &one;
    let right = &(a - b) + &one;
    let num_pole = gamma_pole_index(top.value(), radius);
    let left_pole = gamma_pole_index(left.value(), radius);
    let right_pole = gamma_pole_index(right.value(), radius);

    match (num_pole, left_pole, right_pole) {
        (None, None, None) => {}
        (None, _, _) => return Ok(BinomialValue::cancelled_zero(prec)),
        (Some(_), Some(_), Some(_)) => return Ok(BinomialValue::cancelled_zero(prec)),
        (Some(p), None, Some(q)) => {
            // Γ(-p+ε)/Γ(-q+ε) → (-1)^{p-q} q!/p!; combined with 1/Γ(b+1), b = q-p.
            let p = p.to_u32().ok_or_else(|| ZetaError::Domain("index too large".into()))?;
            let q = q.to_u32().ok_or_else(|| ZetaError::Domain("index too large".into()))?;
            if q < p {
                return Err(ZetaError::Indeterminate(format!(
                    "binomial({:.6e}, {:.6e})",
                    a.value(),
                    b.value()
                )));
            }
            let mut v = Integer::from(Integer::binomial_u(q, p));
            if (q - p) % 2 == 1 {
                v = -v;
            }
            return Ok(BinomialValue::exact(v, prec));
        }
        _ => {
            return Err(ZetaError::Indeterminate(format!(
                "binomial({:.6e}, {:.6e}): numerator pole does not cancel",
                a.value(),
                b.value()
            )))
        }
    }

    let value = escalate(ctx, "binomial", |wp| {
        let one = HPReal::one(wp);
        let a = a.round_to(wp.max(a.prec()));
        let b = b.round_to(wp.max(b.prec()));
        let num = gamma_at(&HPComplex::from(&a + &one), wp);
        let d1 = gamma_at(&HPComplex::from(&b + &one), wp);
        let d2 = gamma_at(&HPComplex::from(&(&a - &b) + &one), wp);
        Ok((&num / &(&d1 * &d2)).real_part())
    })?;
    Ok(BinomialValue {
        value,
        pole_cancellation: false,
    })
}
