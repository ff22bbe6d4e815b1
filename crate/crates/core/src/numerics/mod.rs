//! Arbitrary-precision kernels the zeta modules are built on.

pub mod bernoulli;
pub mod bessel;
pub mod binomial;
pub mod digamma;
pub mod gamma;
pub mod quadrature;
pub mod rational;
pub mod riemann;

use crate::ball::{HPComplex, HPReal};
use crate::context::PrecisionContext;
use crate::error::{Result, ZetaError};

pub use bernoulli::bernoulli;
pub use bessel::bessel_i0_scaled;
pub use binomial::{binomial_real, BinomialValue};
pub use digamma::digamma;
pub use gamma::{gamma, gamma_real};
pub use riemann::riemann_zeta_numeric;

/// Anything carrying an absolute error radius.
pub(crate) trait ErrBound {
    fn err_bound(&self) -> f64;
}

impl ErrBound for HPReal {
    fn err_bound(&self) -> f64 {
        self.err()
    }
}

impl ErrBound for HPComplex {
    fn err_bound(&self) -> f64 {
        self.err()
    }
}

/// Run `f` at increasing working precision until its error radius meets the
/// context tolerance.
pub(crate) fn escalate<T, F>(ctx: &PrecisionContext, what: &str, mut f: F) -> Result<T>
where
    T: ErrBound,
    F: FnMut(u32) -> Result<T>,
{
    let mut wp = ctx.initial_working_bits();
    loop {
        let r = f(wp)?;
        let e = r.err_bound();
        if e <= ctx.target_tol() {
            return Ok(r);
        }
        if wp >= ctx.max_working_bits() {
            return Err(ZetaError::NoConvergence(format!(
                "{what}: error bound {e:.3e} exceeds tolerance {:.3e} at {wp} working bits",
                ctx.target_tol()
            )));
        }
        wp = (wp * 2).min(ctx.max_working_bits());
    }
}

/// `log2 |x|` of an exact rational, for truncation estimates.
pub(crate) fn log2_abs(x: &rug::Rational) -> f64 {
    if *x == 0 {
        return f64::NEG_INFINITY;
    }
    let f = rug::Float::with_val(64, x);
    f.abs().log2().to_f64()
}

/// `log2(n!)` by direct summation; only used for bound estimates.
pub(crate) fn log2_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}
