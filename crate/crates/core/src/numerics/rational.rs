//! Exact rational helpers: parsing and recovery of rationals from balls.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::ball::HPReal;
use crate::error::{Result, ZetaError};

/// Parse `"3"`, `"-7/2"`, `"0.125"`, `"1e-3"`, `"-2.5E+4"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || ZetaError::Domain(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d == 0 {
            return Err(ZetaError::Domain(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = [int_part, frac_part].concat();
    let n = Integer::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut r = Rational::from(n);
    if scale >= 0 {
        r *= Rational::from(ten.pow(scale as u32));
    } else {
        r /= Rational::from(ten.pow(scale.unsigned_abs()));
    }
    Ok(if neg { -r } else { r })
}

/// The rational with the smallest denominator (then numerator) in `[lo, hi]`.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if *lo <= 0 && *hi >= 0 {
        return Rational::new();
    }
    if *hi < 0 {
        return -simplest_in_interval(&Rational::from(-hi), &Rational::from(-lo));
    }
    // continued-fraction descent on 0 < lo <= hi
    let mut terms: Vec<Integer> = Vec::new();
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let last = loop {
        let fl = lo.clone().floor().into_numer_denom().0;
        if lo == fl.clone() {
            break fl;
        }
        let next = Integer::from(&fl + 1);
        if next.clone() <= hi {
            break next;
        }
        // lo, hi in (fl, fl+1)
        let new_lo = Rational::from(&hi - &fl).recip();
        let new_hi = Rational::from(&lo - &fl).recip();
        terms.push(fl);
        lo = new_lo;
        hi = new_hi;
    };
    let mut r = Rational::from(last);
    for a in terms.into_iter().rev() {
        r = r.recip() + a;
    }
    r
}

/// The simplest rational inside the ball, provided its denominator stays
/// below `2^max_den_bits`.
pub fn reconstruct(x: &HPReal, max_den_bits: u32) -> Option<Rational> {
    let (lo, hi) = x.to_rational_interval()?;
    let r = simplest_in_interval(&lo, &hi);
    (r.denom().significant_bits() <= max_den_bits).then_some(r)
}
