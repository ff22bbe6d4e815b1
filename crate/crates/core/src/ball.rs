//! Midpoint-radius arithmetic over MPFR floats.
//!
//! Every value is a midpoint carried at some binary precision together with an
//! absolute error radius held in an `f64`. Operations propagate the input radii
//! and add the rounding error of the midpoint computation, so the radius stays
//! an upper bound on the distance to the true value. Radii are inflated by a few
//! parts in 10^14 to absorb the rounding of the `f64` radius arithmetic itself.
//!
//! A radius of exactly zero means the midpoint is the exact value. Inexact radii
//! never drop below `f64::MIN_POSITIVE`, which caps the useful precision of the
//! error bookkeeping (not of the midpoints) at roughly 1e-308.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

const SLACK: f64 = 1.0 + 1e-13;

/// Upper bound on `2^e` as an `f64`, saturating at both ends.
pub(crate) fn pow2(e: i64) -> f64 {
    if e < -1022 {
        f64::MIN_POSITIVE
    } else if e > 1023 {
        f64::INFINITY
    } else {
        (e as f64).exp2()
    }
}

fn up(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x.is_nan() {
        // a radius that cannot be computed bounds nothing
        f64::INFINITY
    } else {
        (x * SLACK).max(f64::MIN_POSITIVE)
    }
}

/// Upper bound on `|v|`.
pub(crate) fn mag(v: &Float) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let m = v.to_f64().abs();
    if m == 0.0 {
        f64::MIN_POSITIVE
    } else {
        m * SLACK
    }
}

/// Lower bound on `|v|`.
fn mag_lower(v: &Float) -> f64 {
    v.to_f64().abs() / SLACK
}

/// One unit in the last place of `v` at its own precision.
fn ulp(v: &Float) -> f64 {
    match v.get_exp() {
        Some(e) => pow2(e as i64 - v.prec() as i64),
        None => 0.0,
    }
}

fn rounding(v: &Float, ord: Ordering) -> f64 {
    if ord == Ordering::Equal {
        0.0
    } else {
        ulp(v)
    }
}

fn eps(prec: u32) -> f64 {
    pow2(1 - prec as i64)
}

/// Real ball: `value ± err`.
#[derive(Clone)]
pub struct HPReal {
    value: Float,
    err: f64,
}

impl fmt::Debug for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20e} ± {:.3e}", self.value, self.err)
    }
}

impl HPReal {
    pub fn new(value: Float, err: f64) -> Self {
        debug_assert!(err >= 0.0 || err.is_nan());
        let err = if err.is_nan() { f64::INFINITY } else { err };
        Self { value, err }
    }

    pub fn exact(value: Float) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Float::with_val(prec, 1))
    }

    pub fn from_int(prec: u32, v: i64) -> Self {
        let (value, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let err = rounding(&value, ord);
        Self { value, err }
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        let (value, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let err = rounding(&value, ord);
        Self { value, err }
    }

    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        let (value, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let err = rounding(&value, ord);
        Self { value, err }
    }

    pub fn from_f64(prec: u32, v: f64) -> Self {
        Self::exact(Float::with_val(prec.max(53), v))
    }

    pub fn pi(prec: u32) -> Self {
        let value = Float::with_val(prec, Constant::Pi);
        let err = ulp(&value);
        Self { value, err }
    }

    pub fn ln2(prec: u32) -> Self {
        let value = Float::with_val(prec, Constant::Log2);
        let err = ulp(&value);
        Self { value, err }
    }

    pub fn euler_gamma(prec: u32) -> Self {
        let value = Float::with_val(prec, Constant::Euler);
        let err = ulp(&value);
        Self { value, err }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    /// True when the midpoint is known to be the exact value.
    pub fn is_exact(&self) -> bool {
        self.err == 0.0
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Widen the radius by `extra`.
    pub fn add_err(mut self, extra: f64) -> Self {
        if extra != 0.0 {
            self.err = up(self.err + extra);
        }
        self
    }

    /// Round the midpoint to `prec` bits, accounting for the rounding.
    pub fn round_to(&self, prec: u32) -> Self {
        let (value, ord) = Float::with_val_round(prec, &self.value, Round::Nearest);
        let err = up(self.err + rounding(&value, ord));
        Self { value, err }
    }

    pub fn mag_upper(&self) -> f64 {
        up(mag(&self.value) + self.err)
    }

    pub fn mag_lower(&self) -> f64 {
        (mag_lower(&self.value) - self.err).max(0.0)
    }

    pub fn contains_zero(&self) -> bool {
        mag_lower(&self.value) <= self.err
    }

    pub fn is_positive(&self) -> bool {
        self.value > 0 && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value < 0 && !self.contains_zero()
    }

    pub fn abs(&self) -> Self {
        Self {
            value: Float::with_val(self.prec(), &*self.value.as_abs()),
            err: self.err,
        }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        &HPReal::one(self.prec()) / self
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let (value, ord) = Float::with_val_round(self.prec(), &self.value * k, Round::Nearest);
        let err = up(self.err * (k.unsigned_abs() as f64) + rounding(&value, ord));
        Self { value, err }
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero integer");
        let (value, ord) = Float::with_val_round(self.prec(), &self.value / k, Round::Nearest);
        let err = up(self.err / (k.unsigned_abs() as f64) + rounding(&value, ord));
        Self { value, err }
    }

    /// `2^k · self`, exact in the midpoint.
    pub fn mul_pow2(&self, k: i32) -> Self {
        let mut value = self.value.clone();
        if k >= 0 {
            value <<= k as u32;
        } else {
            value >>= (-k) as u32;
        }
        Self {
            value,
            err: if self.err == 0.0 {
                0.0
            } else {
                up(self.err * pow2(k as i64))
            },
        }
    }

    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        let value = Float::with_val(prec, self.value.sqrt_ref());
        let round = eps(prec) * mag(&value);
        let lower = self.mag_lower();
        let prop = if self.err == 0.0 {
            0.0
        } else if lower > 0.0 {
            (self.err / lower.sqrt()).min(self.err.sqrt())
        } else {
            self.err.sqrt()
        };
        let err = if self.value < 0 && self.err < mag(&self.value) {
            f64::INFINITY
        } else {
            up(prop + round)
        };
        Self { value, err }
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let value = Float::with_val(prec, self.value.exp_ref());
        let m = mag(&value);
        let err = up(m * self.err.exp_m1() + 2.0 * eps(prec) * m);
        Self { value, err }
    }

    /// Natural logarithm; the radius is infinite unless the ball is strictly positive.
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        if !self.is_positive() {
            return Self {
                value: Float::with_val(prec, 0),
                err: f64::INFINITY,
            };
        }
        let value = Float::with_val(prec, self.value.ln_ref());
        let lower = self.mag_lower();
        let err = up(self.err / lower + 2.0 * eps(prec) * mag(&value).max(1.0));
        Self { value, err }
    }

    /// `self^k` for a signed integer exponent by repeated squaring.
    pub fn powi(&self, k: i64) -> Self {
        let mut base = self.clone();
        let mut acc = HPReal::one(self.prec());
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if k < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `self^p` for a positive base and ball exponent.
    pub fn pow(&self, p: &HPReal) -> Self {
        (&self.ln() * p).exp()
    }

    /// Split the midpoint as `k + f` with `k` the nearest integer; `f` is exact.
    fn reduce_half_turns(&self) -> (Integer, Float) {
        let prec = self.prec();
        let k = self
            .value
            .to_integer()
            .expect("finite midpoint required for trigonometric reduction");
        let (f, ord) = Float::with_val_round(prec, &self.value - &k, Round::Nearest);
        debug_assert_eq!(ord, Ordering::Equal);
        (k, f)
    }

    /// `sin(π·self)` with exact reduction of the argument modulo 2.
    pub fn sin_pi(&self) -> Self {
        let prec = self.prec();
        let (k, f) = self.reduce_half_turns();
        let pi = Float::with_val(prec + 8, Constant::Pi);
        let arg = Float::with_val(prec + 8, &pi * &f);
        let mut value = Float::with_val(prec, arg.sin_ref());
        if k.is_odd() {
            value = -value;
        }
        let round = eps(prec) * (mag(&value) + mag(&arg)) * 2.0;
        let err = up(std::f64::consts::PI * self.err + round);
        Self { value, err }
    }

    /// `cos(π·self)` with exact reduction of the argument modulo 2.
    pub fn cos_pi(&self) -> Self {
        let prec = self.prec();
        let (k, f) = self.reduce_half_turns();
        let pi = Float::with_val(prec + 8, Constant::Pi);
        let arg = Float::with_val(prec + 8, &pi * &f);
        let mut value = Float::with_val(prec, arg.cos_ref());
        if k.is_odd() {
            value = -value;
        }
        let round = eps(prec) * (mag(&value) + mag(&arg)) * 2.0;
        let err = up(std::f64::consts::PI * self.err + round);
        Self { value, err }
    }

    /// `sin(π·p/q)` for an exact rational multiple of π, reduced before rounding.
    pub fn sin_pi_rational(prec: u32, p: i64, q: i64) -> Self {
        assert!(q > 0, "denominator must be positive");
        let period = 2 * q as i128;
        let mut r = (p as i128).rem_euclid(period);
        let mut negate = false;
        if r >= q as i128 {
            r -= q as i128;
            negate = true;
        }
        // sin(π r/q) = sin(π (q - r)/q), fold onto [0, π/2].
        if 2 * r > q as i128 {
            r = q as i128 - r;
        }
        if r == 0 {
            return HPReal::zero(prec);
        }
        if 2 * r == q as i128 {
            let one = HPReal::one(prec);
            return if negate { -&one } else { one };
        }
        let frac = HPReal::from_rational(prec + 8, &Rational::from((r as i64, q)));
        let s = frac.sin_pi().round_to(prec);
        if negate {
            -&s
        } else {
            s
        }
    }

    /// `cos(π·p/q)` via `sin(π·(q/2 - p)/q)`-style exact reduction.
    pub fn cos_pi_rational(prec: u32, p: i64, q: i64) -> Self {
        // cos(πp/q) = sin(π(q + 2p)/(2q))
        Self::sin_pi_rational(prec, q + 2 * p, 2 * q)
    }

    /// `cot(π·p/q)`; infinite radius when `p/q` is an integer.
    pub fn cot_pi_rational(prec: u32, p: i64, q: i64) -> Self {
        let s = Self::sin_pi_rational(prec + 16, p, q);
        let c = Self::cos_pi_rational(prec + 16, p, q);
        (&c / &s).round_to(prec)
    }

    /// Convert the ball into an exact rational interval `[lo, hi]`.
    pub fn to_rational_interval(&self) -> Option<(Rational, Rational)> {
        let mid = self.value.to_rational()?;
        let r = Rational::from_f64(self.err)?;
        Some((Rational::from(&mid - &r), mid + r))
    }
}

fn max_prec(a: u32, b: u32) -> u32 {
    a.max(b)
}

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal {
            value: Float::with_val(self.prec(), -&self.value),
            err: self.err,
        }
    }
}

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal {
            value: -self.value,
            err: self.err,
        }
    }
}

impl<'a> Add<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn add(self, rhs: &HPReal) -> HPReal {
        let prec = max_prec(self.prec(), rhs.prec());
        let (value, ord) = Float::with_val_round(prec, &self.value + &rhs.value, Round::Nearest);
        let err = up(self.err + rhs.err + rounding(&value, ord));
        HPReal { value, err }
    }
}

impl<'a> Sub<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn sub(self, rhs: &HPReal) -> HPReal {
        let prec = max_prec(self.prec(), rhs.prec());
        let (value, ord) = Float::with_val_round(prec, &self.value - &rhs.value, Round::Nearest);
        let err = up(self.err + rhs.err + rounding(&value, ord));
        HPReal { value, err }
    }
}

impl<'a> Mul<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn mul(self, rhs: &HPReal) -> HPReal {
        let prec = max_prec(self.prec(), rhs.prec());
        let (value, ord) = Float::with_val_round(prec, &self.value * &rhs.value, Round::Nearest);
        let prop = if self.err == 0.0 && rhs.err == 0.0 {
            0.0
        } else {
            mag(&self.value) * rhs.err + mag(&rhs.value) * self.err + self.err * rhs.err
        };
        let err = up(prop + rounding(&value, ord));
        HPReal { value, err }
    }
}

impl<'a> Div<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn div(self, rhs: &HPReal) -> HPReal {
        let prec = max_prec(self.prec(), rhs.prec());
        if rhs.contains_zero() {
            return HPReal {
                value: Float::with_val(prec, 0),
                err: f64::INFINITY,
            };
        }
        let (value, ord) = Float::with_val_round(prec, &self.value / &rhs.value, Round::Nearest);
        let prop = if self.err == 0.0 && rhs.err == 0.0 {
            0.0
        } else {
            // |a/b - a'/b'| ≤ (err_a + |a/b| err_b) / (|b| - err_b), arranged
            // so no intermediate exceeds the size of the result
            let b = mag_lower(&rhs.value);
            (self.err + mag(&self.value) / b * rhs.err) / (b - rhs.err)
        };
        let err = up(prop + rounding(&value, ord));
        HPReal { value, err }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($trait:ident $method:ident),*) => {$(
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(HPReal, Add add, Sub sub, Mul mul, Div div);

/// Complex ball: `re + i·im` with a radius bounding the modulus of the error.
#[derive(Clone)]
pub struct HPComplex {
    re: Float,
    im: Float,
    err: f64,
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.20e} {:+.20e}i) ± {:.3e}", self.re, self.im, self.err)
    }
}

impl From<HPReal> for HPComplex {
    fn from(x: HPReal) -> Self {
        let prec = x.prec();
        HPComplex {
            re: x.value,
            im: Float::with_val(prec, 0),
            err: x.err,
        }
    }
}

impl From<&HPReal> for HPComplex {
    fn from(x: &HPReal) -> Self {
        HPComplex::from(x.clone())
    }
}

impl HPComplex {
    pub fn new(re: Float, im: Float, err: f64) -> Self {
        let err = if err.is_nan() { f64::INFINITY } else { err };
        let prec = re.prec().max(im.prec());
        let re = if re.prec() == prec {
            re
        } else {
            Float::with_val(prec, re)
        };
        let im = if im.prec() == prec {
            im
        } else {
            Float::with_val(prec, im)
        };
        Self { re, im, err }
    }

    pub fn from_parts(re: &HPReal, im: &HPReal) -> Self {
        Self::new(re.value.clone(), im.value.clone(), up(re.err + im.err))
    }

    pub fn zero(prec: u32) -> Self {
        HPReal::zero(prec).into()
    }

    pub fn one(prec: u32) -> Self {
        HPReal::one(prec).into()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err == 0.0
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// The imaginary midpoint is exactly zero.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn real_part(&self) -> HPReal {
        HPReal::new(self.re.clone(), self.err)
    }

    pub fn imag_part(&self) -> HPReal {
        HPReal::new(self.im.clone(), self.err)
    }

    pub fn add_err(mut self, extra: f64) -> Self {
        if extra != 0.0 {
            self.err = up(self.err + extra);
        }
        self
    }

    pub fn round_to(&self, prec: u32) -> Self {
        let (re, o1) = Float::with_val_round(prec, &self.re, Round::Nearest);
        let (im, o2) = Float::with_val_round(prec, &self.im, Round::Nearest);
        let err = up(self.err + rounding(&re, o1) + rounding(&im, o2));
        Self { re, im, err }
    }

    /// Upper bound on the modulus of the midpoint.
    fn mid_mag(&self) -> f64 {
        let r = mag(&self.re);
        let i = mag(&self.im);
        up(r.hypot(i))
    }

    fn mid_mag_lower(&self) -> f64 {
        mag_lower(&self.re).hypot(mag_lower(&self.im)) / SLACK
    }

    pub fn mag_upper(&self) -> f64 {
        up(self.mid_mag() + self.err)
    }

    pub fn mag_lower(&self) -> f64 {
        (self.mid_mag_lower() - self.err).max(0.0)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_mag_lower() <= self.err
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
            err: self.err,
        }
    }

    pub fn scale(&self, k: &HPReal) -> Self {
        self * &HPComplex::from(k)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let prec = self.prec();
        let (re, o1) = Float::with_val_round(prec, &self.re * k, Round::Nearest);
        let (im, o2) = Float::with_val_round(prec, &self.im * k, Round::Nearest);
        let err = up(self.err * k.unsigned_abs() as f64 + rounding(&re, o1) + rounding(&im, o2));
        Self { re, im, err }
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero integer");
        let prec = self.prec();
        let (re, o1) = Float::with_val_round(prec, &self.re / k, Round::Nearest);
        let (im, o2) = Float::with_val_round(prec, &self.im / k, Round::Nearest);
        let err = up(self.err / k.unsigned_abs() as f64 + rounding(&re, o1) + rounding(&im, o2));
        Self { re, im, err }
    }

    pub fn add_real(&self, x: &HPReal) -> Self {
        self + &HPComplex::from(x)
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        &HPComplex::one(self.prec()) / self
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let wp = prec + 16;
        let scale = Float::with_val(wp, self.re.exp_ref());
        let (s, c) = Float::with_val(wp, &self.im).sin_cos(Float::new(wp));
        let re = Float::with_val(prec, &scale * &c);
        let im = Float::with_val(prec, &scale * &s);
        let m = mag(&scale);
        let err = up(m * self.err.exp_m1() + 4.0 * eps(prec) * m * (1.0 + mag(&self.im)));
        Self { re, im, err }
    }

    /// Principal logarithm; infinite radius if the ball touches zero or the branch cut.
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        let lower = self.mag_lower();
        let on_cut = self.re < 0 && mag(&self.im) <= self.err;
        if lower == 0.0 || (on_cut && self.err > 0.0) {
            return Self {
                re: Float::with_val(prec, 0),
                im: Float::with_val(prec, 0),
                err: f64::INFINITY,
            };
        }
        let wp = prec + 16;
        let modulus = Float::with_val(wp, self.re.hypot_ref(&self.im));
        let re = Float::with_val(prec, modulus.ln_ref());
        let im = Float::with_val(prec, self.im.atan2_ref(&self.re));
        let round = 4.0 * eps(prec) * (mag(&re) + mag(&im) + 1.0);
        let prop = if self.err == 0.0 { 0.0 } else { self.err / lower };
        Self {
            re,
            im,
            err: up(prop + round),
        }
    }

    /// Principal power `self^w = exp(w·ln self)`.
    pub fn pow(&self, w: &HPComplex) -> Self {
        (w * &self.ln()).exp()
    }

    pub fn powi(&self, k: i64) -> Self {
        let mut base = self.clone();
        let mut acc = HPComplex::one(self.prec());
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if k < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `sin(π z) = sin(πx)cosh(πy) + i cos(πx)sinh(πy)` with exact reduction of `x`.
    pub fn sin_pi(&self) -> Self {
        let prec = self.prec();
        let x = HPReal::exact(self.re.clone());
        let (sx, cx) = (x.sin_pi(), x.cos_pi());
        let wp = prec + 16;
        let piy = Float::with_val(wp, Constant::Pi) * &self.im;
        let ch = Float::with_val(wp, piy.cosh_ref());
        let sh = Float::with_val(wp, piy.sinh_ref());
        let re = Float::with_val(prec, sx.value() * &ch);
        let im = Float::with_val(prec, cx.value() * &sh);
        let m_ch = mag(&ch);
        let round = (sx.err() + cx.err()) * m_ch + 4.0 * eps(prec) * m_ch;
        let prop = if self.err == 0.0 {
            0.0
        } else {
            std::f64::consts::PI * self.err * (std::f64::consts::PI * (mag(&self.im) + self.err)).cosh()
        };
        Self {
            re,
            im,
            err: up(round + prop),
        }
    }

    pub fn cos_pi(&self) -> Self {
        let half = HPReal::exact(Float::with_val(self.prec(), 0.5));
        self.add_real(&half).sin_pi()
    }

    /// Nearest Gaussian-lattice check used for pole and zero snapping on the real axis:
    /// returns the nearest integer `k` to `2·self` when `self` lies within `radius`
    /// of the half-integer `k/2` and has negligible imaginary part.
    pub fn near_half_integer(&self, radius: f64) -> Option<Integer> {
        if mag(&self.im) > radius {
            return None;
        }
        let twice = Float::with_val(self.prec() + 1, &self.re * 2u32);
        let k = twice.to_integer()?;
        let dist = Float::with_val(self.prec() + 1, &twice - &k);
        if mag(&dist) / 2.0 <= radius {
            Some(k)
        } else {
            None
        }
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
            err: self.err,
        }
    }
}

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex {
            re: -self.re,
            im: -self.im,
            err: self.err,
        }
    }
}

impl<'a> Add<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn add(self, rhs: &HPComplex) -> HPComplex {
        let prec = max_prec(self.prec(), rhs.prec());
        let (re, o1) = Float::with_val_round(prec, &self.re + &rhs.re, Round::Nearest);
        let (im, o2) = Float::with_val_round(prec, &self.im + &rhs.im, Round::Nearest);
        let err = up(self.err + rhs.err + rounding(&re, o1) + rounding(&im, o2));
        HPComplex { re, im, err }
    }
}

impl<'a> Sub<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn sub(self, rhs: &HPComplex) -> HPComplex {
        let prec = max_prec(self.prec(), rhs.prec());
        let (re, o1) = Float::with_val_round(prec, &self.re - &rhs.re, Round::Nearest);
        let (im, o2) = Float::with_val_round(prec, &self.im - &rhs.im, Round::Nearest);
        let err = up(self.err + rhs.err + rounding(&re, o1) + rounding(&im, o2));
        HPComplex { re, im, err }
    }
}

impl<'a> Mul<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn mul(self, rhs: &HPComplex) -> HPComplex {
        let prec = max_prec(self.prec(), rhs.prec());
        let (re, im, round) = if self.im.is_zero() && rhs.im.is_zero() {
            let (re, o) = Float::with_val_round(prec, &self.re * &rhs.re, Round::Nearest);
            let r = rounding(&re, o);
            (re, Float::with_val(prec, 0), r)
        } else {
            let re = Float::with_val(prec, &self.re * &rhs.re - &self.im * &rhs.im);
            let im = Float::with_val(prec, &self.re * &rhs.im + &self.im * &rhs.re);
            (re, im, 4.0 * eps(prec) * self.mid_mag() * rhs.mid_mag())
        };
        let prop = if self.err == 0.0 && rhs.err == 0.0 {
            0.0
        } else {
            self.mid_mag() * rhs.err + rhs.mid_mag() * self.err + self.err * rhs.err
        };
        HPComplex {
            re,
            im,
            err: up(prop + round),
        }
    }
}

impl<'a> Div<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn div(self, rhs: &HPComplex) -> HPComplex {
        let prec = max_prec(self.prec(), rhs.prec());
        if rhs.contains_zero() {
            return HPComplex {
                re: Float::with_val(prec, 0),
                im: Float::with_val(prec, 0),
                err: f64::INFINITY,
            };
        }
        let (re, im, round) = if rhs.im.is_zero() && self.im.is_zero() {
            let (re, o) = Float::with_val_round(prec, &self.re / &rhs.re, Round::Nearest);
            let r = rounding(&re, o);
            (re, Float::with_val(prec, 0), r)
        } else {
            let wp = prec + 16;
            let den = Float::with_val(wp, rhs.re.square_ref()) + Float::with_val(wp, rhs.im.square_ref());
            let nr = Float::with_val(wp, &self.re * &rhs.re + &self.im * &rhs.im);
            let ni = Float::with_val(wp, &self.im * &rhs.re - &self.re * &rhs.im);
            let re = Float::with_val(prec, &nr / &den);
            let im = Float::with_val(prec, &ni / &den);
            let m = self.mid_mag() / rhs.mid_mag_lower();
            (re, im, 4.0 * eps(prec) * m)
        };
        let prop = if self.err == 0.0 && rhs.err == 0.0 {
            0.0
        } else {
            let b = rhs.mid_mag_lower();
            (self.err + self.mid_mag() / b * rhs.err) / (b - rhs.err)
        };
        HPComplex {
            re,
            im,
            err: up(prop + round),
        }
    }
}

forward_owned!(HPComplex, Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: &HPReal, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol
    }

    #[test]
    fn integer_arithmetic_stays_exact() {
        let a = HPReal::from_int(P, 12345);
        let b = HPReal::from_int(P, -678);
        assert!((&a + &b).is_exact());
        assert!((&a * &b).is_exact());
        assert_eq!((&a * &b).value().to_f64(), -8369910.0);
        let third = &HPReal::one(P) / &HPReal::from_int(P, 3);
        assert!(!third.is_exact());
        assert!(third.err() < 1e-59);
    }

    #[test]
    fn radius_encloses_true_value() {
        // (1/3)·3 - 1 must be enclosed by the resulting radius.
        let third = &HPReal::one(P) / &HPReal::from_int(P, 3);
        let back = &(&third * &HPReal::from_int(P, 3)) - &HPReal::one(P);
        assert!(back.contains_zero());
    }

    #[test]
    fn sin_pi_reduction_is_exact_for_rationals() {
        let s = HPReal::sin_pi_rational(P, 1, 6);
        assert!(close(&s, 0.5, 1e-15));
        let s = HPReal::sin_pi_rational(P, 7, 6);
        assert!(close(&s, -0.5, 1e-15));
        assert!(HPReal::sin_pi_rational(P, 5, 5).is_exact());
        assert!(HPReal::sin_pi_rational(P, 3, 2).value() == &-1);
        let c = HPReal::cos_pi_rational(P, 1, 3);
        assert!(close(&c, 0.5, 1e-15));
        let t = HPReal::cot_pi_rational(P, 1, 4);
        assert!(close(&t, 1.0, 1e-15));
        // Large multiples reduce without loss.
        let big = HPReal::sin_pi_rational(P, 1_000_000_001, 1_000_000);
        let reduced = HPReal::sin_pi_rational(P, 1, 1_000_000);
        assert!((&big - &reduced).mag_upper() < 1e-55);
        let odd = HPReal::sin_pi_rational(P, 999_000_001, 1_000_000);
        assert!((&odd + &reduced).mag_upper() < 1e-55);
    }

    #[test]
    fn ln_exp_round_trip() {
        let x = HPReal::from_rational(P, &Rational::from((7, 3)));
        let y = x.ln().exp();
        assert!((&y - &x).contains_zero());
        assert!((&y - &x).err() < 1e-55);
        assert!(HPReal::from_int(P, -1).ln().err().is_infinite());
    }

    #[test]
    fn complex_ops() {
        let z = HPComplex::from_parts(&HPReal::from_int(P, 3), &HPReal::from_int(P, 4));
        let w = &z * &z.conj();
        assert_eq!(w.re().to_f64(), 25.0);
        assert!(w.im().is_zero());
        let q = &z / &z;
        assert!((q.re().to_f64() - 1.0).abs() < 1e-15 && q.im().to_f64().abs() < 1e-15);
        let l = z.ln();
        assert!((l.re().to_f64() - 5f64.ln()).abs() < 1e-14);
        assert!((l.im().to_f64() - (4f64).atan2(3.0)).abs() < 1e-14);
        let e = l.exp();
        assert!((e.re().to_f64() - 3.0).abs() < 1e-14);
        // sin(π(1/2 + i)) = cosh(π)
        let h = HPComplex::from_parts(&HPReal::from_rational(P, &Rational::from((1, 2))), &HPReal::one(P));
        let s = h.sin_pi();
        assert!((s.re().to_f64() - std::f64::consts::PI.cosh()).abs() < 1e-10);
        assert!(s.im().to_f64().abs() < 1e-40);
    }

    #[test]
    fn division_by_ball_containing_zero_is_unbounded() {
        let tiny = HPReal::new(Float::with_val(P, 1e-30), 1e-20);
        assert!((&HPReal::one(P) / &tiny).err().is_infinite());
    }

    #[test]
    fn half_integer_snapping() {
        let z: HPComplex = HPReal::from_rational(P, &Rational::from((-5, 2))).into();
        assert_eq!(z.near_half_integer(1e-30), Some(Integer::from(-5)));
        let z: HPComplex = HPReal::from_rational(P, &Rational::from((1, 3))).into();
        assert_eq!(z.near_half_integer(1e-30), None);
    }
}
