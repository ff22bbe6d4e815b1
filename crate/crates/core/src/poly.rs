//! Polynomials in `n` with exact rational coefficients.

use std::fmt;

use rug::{Integer, Rational};

/// `Σ coeffs[i] n^i`, kept with a nonzero leading coefficient (the zero
/// polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= n;
            acc += c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&Rational::from(n))
    }

    /// Least common denominator of the coefficients.
    pub fn common_denominator(&self) -> Integer {
        self.coeffs.iter().fold(Integer::from(1), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer numerator coefficients over [`common_denominator`](Self::common_denominator).
    pub fn integer_numerator(&self) -> Vec<Integer> {
        let d = self.common_denominator();
        self.coeffs
            .iter()
            .map(|c| c.numer() * Integer::from(&d / c.denom()))
            .collect()
    }

    /// The interpolating polynomial of minimal degree through the points, by
    /// Newton divided differences. Abscissae must be distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let n = points.len();
        let xs: Vec<&Rational> = points.iter().map(|p| &p.0).collect();
        let mut table: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = Rational::from(&table[i] - &table[i - 1]);
                let den = Rational::from(xs[i] - xs[i - level]);
                assert!(den != 0, "interpolation abscissae must be distinct");
                table[i] = num / den;
            }
        }
        // Horner on the Newton basis: p = t0 + (x - x0)(t1 + (x - x1)(t2 + ...))
        let mut coeffs: Vec<Rational> = Vec::new();
        for i in (0..n).rev() {
            // coeffs := coeffs * (x - x_i) + t_i
            let mut next = vec![Rational::new(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= Rational::from(c * xs[i]);
            }
            next[0] += &table[i];
            coeffs = next;
        }
        Self::new(coeffs)
    }
}

impl fmt::Display for RationalPolynomial {
    /// `(n^4 + 10 n^2 - 11)/720`, or without the parentheses when the
    /// denominator is one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let den = self.common_denominator();
        let nums = self.integer_numerator();
        let mut body = String::new();
        for (power, c) in nums.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let magnitude = Integer::from(c.abs_ref());
            if body.is_empty() {
                if *c < 0 {
                    body.push('-');
                }
            } else {
                body.push_str(if *c < 0 { " - " } else { " + " });
            }
            let var = match power {
                0 => String::new(),
                1 => "n".to_string(),
                p => format!("n^{p}"),
            };
            if power == 0 {
                body.push_str(&magnitude.to_string());
            } else if magnitude == 1 {
                body.push_str(&var);
            } else {
                body.push_str(&format!("{magnitude} {var}"));
            }
        }
        if den == 1 {
            f.write_str(&body)
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn display_forms() {
        let p = RationalPolynomial::new(vec![q(-11, 720), q(0, 1), q(10, 720), q(0, 1), q(1, 720)]);
        assert_eq!(p.to_string(), "(n^4 + 10 n^2 - 11)/720");
        let p = RationalPolynomial::new(vec![q(-1, 12), q(0, 1), q(1, 12)]);
        assert_eq!(p.to_string(), "(n^2 - 1)/12");
        let p = RationalPolynomial::new(vec![q(3, 1), q(-1, 1), q(0, 1)]);
        assert_eq!(p.to_string(), "-n + 3");
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RationalPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn interpolation_recovers_a_known_polynomial() {
        let p = RationalPolynomial::new(vec![q(-11, 720), q(0, 1), q(1, 72), q(0, 1), q(1, 720)]);
        let pts: Vec<_> = (2..7).map(|n| (q(n, 1), p.eval_int(n))).collect();
        assert_eq!(RationalPolynomial::interpolate(&pts), p);
    }

    #[test]
    fn interpolation_through_constant_points_is_constant() {
        let pts: Vec<_> = (0..4).map(|n| (q(n, 1), q(5, 3))).collect();
        let p = RationalPolynomial::interpolate(&pts);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p.eval_int(100), q(5, 3));
    }
}
