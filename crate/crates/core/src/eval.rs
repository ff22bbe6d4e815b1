//! Result type shared by every evaluation route.

use std::fmt;

use rug::Rational;

use crate::ball::{HPComplex, HPReal};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Product,
    MellinQuadrature,
    DirectSum,
    EulerMaclaurin,
    Asymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Product => "product",
            Method::MellinQuadrature => "quadrature",
            Method::DirectSum => "direct-sum",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Side information attached to a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Note {
    /// The value is a zero forced by the lattice structure (pole cancellation),
    /// not a rounding accident.
    Zero,
}

#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: HPComplex,
    /// Absolute error bound; always the radius carried by `value`.
    pub err: f64,
    /// `true` only when `err` comes from a proved remainder bound.
    pub certified: bool,
    pub method: Method,
    /// Set when the value is known exactly as a rational.
    pub exact: Option<Rational>,
    pub note: Option<Note>,
}

impl EvalResult {
    pub fn numeric(value: HPComplex, method: Method, certified: bool) -> Self {
        Self {
            err: value.err(),
            value,
            certified,
            method,
            exact: None,
            note: None,
        }
    }

    pub fn real(value: HPReal, method: Method, certified: bool) -> Self {
        Self::numeric(value.into(), method, certified)
    }

    pub fn exact(q: Rational, prec: u32, method: Method) -> Self {
        Self {
            value: HPReal::from_rational(prec, &q).into(),
            err: 0.0,
            certified: true,
            method,
            exact: Some(q),
            note: None,
        }
    }

    pub fn with_note(mut self, note: Note) -> Self {
        self.note = Some(note);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn re(&self) -> HPReal {
        self.value.real_part()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.re().to_f64()
    }

    /// The two balls overlap: `|self - other| ≤ err_self + err_other` up to
    /// the rounding of the subtraction.
    pub fn agrees_with(&self, other: &EvalResult) -> bool {
        (&self.value - &other.value).contains_zero()
    }
}
