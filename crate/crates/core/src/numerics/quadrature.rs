//! Tanh-sinh (double exponential) quadrature for complex-valued integrands.
//!
//! The step is halved level by level, reusing all previous nodes, and the
//! error is estimated as the difference of the last two levels. That estimate
//! is heuristic, so callers must not report quadrature results as certified.

use rug::float::Constant;
use rug::Float;

use crate::ball::{HPComplex, HPReal};
use crate::error::{Result, ZetaError};

pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: HPComplex,
    /// `|I_l - I_{l-1}|` plus the radius accumulated from the integrand values.
    pub estimate: f64,
    pub nodes: usize,
}

/// `∫_a^b f(x) dx`. The integrand receives exact abscissae strictly inside
/// `(a, b)`; near the endpoints they keep full relative precision in their
/// distance to the endpoint.
pub fn tanh_sinh<F>(a: &Float, b: &Float, wp: u32, tol: f64, max_nodes: usize, mut f: F) -> Result<Quadrature>
where
    F: FnMut(&Float) -> Result<HPComplex>,
{
    let half_len = Float::with_val(wp, b - a) / 2u32;
    let half_pi = Float::with_val(wp, Constant::Pi) / 2u32;
    let cutoff = Float::with_val(wp, Float::i_exp(1, -(wp as i32) - 16));

    // Weighted sample Σ w_k f(x_k) over nodes with index `k·h`, `k` odd
    // (or every `k` at level 0).
    let mut sample = |h: &Float, first: i64, step: i64, count: &mut usize| -> Result<Option<HPComplex>> {
        let mut acc = HPComplex::zero(wp);
        let mut k = first;
        loop {
            let t = Float::with_val(wp, h * k);
            let sinh_t = Float::with_val(wp, t.sinh_ref());
            let cosh_t = Float::with_val(wp, t.cosh_ref());
            let v = Float::with_val(wp, &half_pi * &sinh_t);
            let cosh_v = Float::with_val(wp, v.cosh_ref());
            // w = (π/2) cosh t / cosh² v, scaled by the half length
            let w = Float::with_val(wp, &half_pi * &cosh_t) / Float::with_val(wp, cosh_v.square_ref()) * &half_len;
            if k > 0 && w < cutoff {
                return Ok(Some(acc));
            }
            // distance from the nearer endpoint in units of the half length: 1 - tanh v = 2/(1+e^{2v})
            let e2v = Float::with_val(wp, (Float::with_val(wp, &v * 2u32)).exp_ref());
            let gap = Float::with_val(wp, 2u32) / (e2v + 1u32) * &half_len;
            if k == 0 {
                let mid = Float::with_val(wp, a + &half_len);
                acc = &acc + &f(&mid)?.scale(&HPReal::exact(w));
                *count += 1;
            } else {
                // A node that rounds onto its endpoint is dropped; the other
                // side may still resolve (e.g. an endpoint at zero).
                let left = Float::with_val(wp, a + &gap);
                let right = Float::with_val(wp, b - &gap);
                let mut pair = HPComplex::zero(wp);
                let mut live = false;
                if left > *a && left < *b {
                    pair = &pair + &f(&left)?;
                    *count += 1;
                    live = true;
                }
                if right < *b && right > *a {
                    pair = &pair + &f(&right)?;
                    *count += 1;
                    live = true;
                }
                if !live {
                    return Ok(Some(acc));
                }
                acc = &acc + &pair.scale(&HPReal::exact(w));
            }
            if *count > max_nodes {
                return Ok(None);
            }
            k += step;
        }
    };

    let mut count = 0usize;
    let mut h = Float::with_val(wp, 1u32);
    let too_many = |n: usize| ZetaError::NoConvergence(format!("tanh-sinh exceeded {n} nodes"));
    let mut sum = sample(&h, 0, 1, &mut count)?.ok_or_else(|| too_many(max_nodes))?;
    let mut prev = sum.scale(&HPReal::exact(h.clone()));
    for level in 1..=MAX_LEVEL {
        h /= 2u32;
        let add = sample(&h, 1, 2, &mut count)?.ok_or_else(|| too_many(max_nodes))?;
        sum = &sum + &add;
        let cur = sum.scale(&HPReal::exact(h.clone()));
        let diff = (&cur - &prev).mag_upper();
        if level >= 3 && diff <= tol {
            let estimate = diff + cur.err();
            return Ok(Quadrature {
                value: cur.add_err(diff),
                estimate,
                nodes: count,
            });
        }
        prev = cur;
    }
    Err(ZetaError::NoConvergence(format!(
        "tanh-sinh did not reach {tol:.3e} after {MAX_LEVEL} levels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: Float) -> HPComplex {
        HPComplex::from(HPReal::exact(x))
    }

    #[test]
    fn polynomial() {
        let a = Float::with_val(256, 0);
        let b = Float::with_val(256, 2);
        let q = tanh_sinh(&a, &b, 256, 1e-60, 100_000, |x| Ok(real(Float::with_val(256, x * x)))).unwrap();
        let want = Float::with_val(256, 8) / 3u32;
        assert!(Float::with_val(256, q.value.re() - &want).abs().to_f64() < 1e-60);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let a = Float::with_val(256, 0);
        let b = Float::with_val(256, 1);
        let q = tanh_sinh(&a, &b, 256, 1e-40, 100_000, |x| {
            Ok(real(Float::with_val(256, x.sqrt_ref()).recip()))
        })
        .unwrap();
        let d = Float::with_val(256, q.value.re() - 2u32).abs().to_f64();
        assert!(d < 1e-40, "{d:e} {q:?}");
    }

    #[test]
    fn oscillatory_complex() {
        // ∫_0^1 e^{ix} dx = (e^i - 1)/i
        let a = Float::with_val(256, 0);
        let b = Float::with_val(256, 1);
        let q = tanh_sinh(&a, &b, 256, 1e-50, 100_000, |x| {
            let (s, c) = Float::with_val(256, x).sin_cos(Float::new(256));
            Ok(HPComplex::new(c, s, 0.0))
        })
        .unwrap();
        let one = Float::with_val(256, 1u32);
        let (s1, c1) = one.sin_cos(Float::new(256));
        assert!(Float::with_val(256, q.value.re() - s1).abs().to_f64() < 1e-50);
        assert!(
            Float::with_val(256, q.value.im() - (Float::with_val(256, 1u32) - c1))
                .abs()
                .to_f64()
                < 1e-50
        );
    }

    #[test]
    fn node_cap() {
        let a = Float::with_val(256, 0);
        let b = Float::with_val(256, 1);
        let r = tanh_sinh(&a, &b, 256, 1e-60, 10, |x| Ok(real(x.clone())));
        assert!(matches!(r, Err(ZetaError::NoConvergence(_))));
    }
}
