//! Parameter grids: `x`, `a:b`, `a:b:step` and `a:b:geometric`.

use rug::{Integer, Rational};

use crate::numerics::rational::parse_rational;

/// Upper bound on the number of points one grid may expand to.
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum RangeSpec {
    Single(Rational),
    Arithmetic {
        start: Rational,
        end: Rational,
        step: Rational,
    },
    /// Doubling from `start` while the value stays at or below `end`.
    Geometric {
        start: Rational,
        end: Rational,
    },
}

impl RangeSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |t: &str| parse_rational(t.trim()).map_err(|e| format!("bad number '{t}' in '{text}': {e}"));
        match parts.as_slice() {
            [x] => Ok(RangeSpec::Single(num(x)?)),
            [a, b] => Ok(RangeSpec::Arithmetic {
                start: num(a)?,
                end: num(b)?,
                step: Rational::from(1),
            }),
            [a, b, "geometric"] => Ok(RangeSpec::Geometric {
                start: num(a)?,
                end: num(b)?,
            }),
            [a, b, c] => Ok(RangeSpec::Arithmetic {
                start: num(a)?,
                end: num(b)?,
                step: num(c)?,
            }),
            _ => Err(format!("malformed range '{text}'")),
        }
    }

    pub fn is_single(&self) -> bool {
        matches!(self, RangeSpec::Single(_))
    }

    /// The grid in increasing order. Empty grids are an error.
    pub fn values(&self) -> Result<Vec<Rational>, String> {
        let out = match self {
            RangeSpec::Single(x) => vec![x.clone()],
            RangeSpec::Arithmetic { start, end, step } => {
                if *step <= 0 {
                    return Err(format!("range step must be positive, got {step}"));
                }
                let mut v = Vec::new();
                let mut x = start.clone();
                while x <= *end {
                    if v.len() == MAX_GRID_POINTS {
                        return Err(format!("range has more than {MAX_GRID_POINTS} points"));
                    }
                    v.push(x.clone());
                    x += step;
                }
                v
            }
            RangeSpec::Geometric { start, end } => {
                if *start <= 0 {
                    return Err(format!("geometric range must start above zero, got {start}"));
                }
                let mut v = Vec::new();
                let mut x = start.clone();
                while x <= *end {
                    v.push(x.clone());
                    x *= 2;
                }
                v
            }
        };
        if out.is_empty() {
            return Err("empty range".into());
        }
        Ok(out)
    }

    /// The grid as nonnegative integers.
    pub fn integer_values(&self, name: &str) -> Result<Vec<u32>, String> {
        self.values()?
            .into_iter()
            .map(|q| {
                if *q.denom() != 1 {
                    return Err(format!("--{name} must be an integer, got {q}"));
                }
                q.numer()
                    .to_u32()
                    .ok_or_else(|| format!("--{name} must be a nonnegative integer below 2^32, got {q}"))
            })
            .collect()
    }
}

/// A rational as a terminating decimal when it has one, otherwise `p/q`.
pub fn format_rational_input(q: &Rational) -> String {
    let mut den = q.denom().clone();
    let twos = den.find_one(0).unwrap_or(0);
    den >>= twos;
    let mut fives = 0u32;
    while den.is_divisible_u(5) {
        den /= 5u32;
        fives += 1;
    }
    if den != 1 {
        return q.to_string();
    }
    if *q.denom() == 1 {
        return q.numer().to_string();
    }
    // Scale to an integer over 10^places.
    let places = twos.max(fives);
    let scaled = (q.numer() * Integer::from(Integer::u_pow_u(10, places))) / q.denom();
    let neg = scaled < 0;
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from((p, d))
    }

    #[test]
    fn arithmetic_ranges() {
        let r = RangeSpec::parse("-5:0.5:0.25").unwrap();
        let v = r.values().unwrap();
        assert_eq!(v.len(), 23);
        assert_eq!(v[0], -5);
        assert_eq!(v[2], q(-9, 2));
        assert_eq!(*v.last().unwrap(), q(1, 2));
        assert_eq!(RangeSpec::parse("0:20").unwrap().integer_values("n").unwrap().len(), 21);
    }

    #[test]
    fn geometric_ranges() {
        let v = RangeSpec::parse("4:4096:geometric")
            .unwrap()
            .integer_values("n")
            .unwrap();
        assert_eq!(v, vec![4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096]);
    }

    #[test]
    fn bad_ranges() {
        assert!(RangeSpec::parse("3:1").unwrap().values().is_err());
        assert!(RangeSpec::parse("0:1:0").unwrap().values().is_err());
        assert!(RangeSpec::parse("0:8:geometric").unwrap().values().is_err());
        assert!(RangeSpec::parse("1:2:3:4").is_err());
        assert!(RangeSpec::parse("x").is_err());
        assert!(RangeSpec::parse("1/2").unwrap().integer_values("n").is_err());
    }

    #[test]
    fn input_echo() {
        assert_eq!(format_rational_input(&q(-19, 4)), "-4.75");
        assert_eq!(format_rational_input(&q(1, 3)), "1/3");
        assert_eq!(format_rational_input(&q(-3, 1)), "-3");
        assert_eq!(format_rational_input(&q(1, 20)), "0.05");
        assert_eq!(format_rational_input(&q(-1, 1000)), "-0.001");
    }
}
