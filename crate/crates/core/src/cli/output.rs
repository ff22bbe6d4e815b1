//! Output records and the plain/JSON/CSV emitters.

use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::ValueEnum;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::ball::HPComplex;
use crate::eval::{EvalResult, Note};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Scientific notation with `digits` significant digits.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    // MPFR caps printed digits at what the precision holds, so widen first.
    let need = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8;
    let wide = Float::with_val(x.prec().max(need), x);
    // rug counts significant digits here, not digits after the point.
    format!("{:.*e}", digits.max(1), wide)
}

pub fn format_complex(z: &HPComplex, digits: usize) -> String {
    let re = format_decimal(z.re(), digits);
    if z.im().is_zero() {
        return re;
    }
    let im = format_decimal(&Float::with_val(z.prec(), z.im().abs_ref()), digits);
    let sign = if z.im().is_sign_negative() { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

fn format_err(e: f64) -> String {
    format!("{e:.3e}")
}

/// One evaluated point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub target: String,
    pub inputs: BTreeMap<String, String>,
    /// Exact `num/den` when `exact` is set, otherwise a decimal string.
    pub value: Option<String>,
    pub err: Option<String>,
    /// Evaluation route, or the error kind when the point failed.
    pub method: String,
    pub exact: bool,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl OutputRecord {
    pub fn from_eval(target: &str, inputs: BTreeMap<String, String>, r: &EvalResult, digits: usize) -> Self {
        let (value, err) = match &r.exact {
            Some(q) => (q.to_string(), "0".to_string()),
            None => (format_complex(&r.value, digits), format_err(r.err)),
        };
        Self {
            target: target.to_string(),
            inputs,
            value: Some(value),
            err: Some(err),
            method: r.method.to_string(),
            exact: r.exact.is_some(),
            certified: r.certified,
            note: r.note.map(|n| match n {
                Note::Zero => "zero".to_string(),
            }),
        }
    }

    /// A grid point whose evaluation raised an error.
    pub fn failed(target: &str, inputs: BTreeMap<String, String>, kind: &str, message: String) -> Self {
        Self {
            target: target.to_string(),
            inputs,
            value: None,
            err: None,
            method: kind.to_string(),
            exact: false,
            certified: false,
            note: Some(message),
        }
    }
}

/// Something printable in all three formats.
pub trait Row: Serialize {
    fn header(&self) -> Vec<String>;
    fn fields(&self) -> Vec<String>;
    fn plain(&self) -> String;
}

impl Row for OutputRecord {
    fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = self.inputs.keys().cloned().collect();
        h.extend(["value", "err", "method"].map(String::from));
        h
    }

    fn fields(&self) -> Vec<String> {
        let mut f: Vec<String> = self.inputs.values().cloned().collect();
        f.push(self.value.clone().unwrap_or_default());
        f.push(self.err.clone().unwrap_or_default());
        f.push(self.method.clone());
        f
    }

    fn plain(&self) -> String {
        let args = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        match &self.value {
            Some(v) => {
                let mut tags = vec![self.method.clone()];
                if self.exact {
                    tags.push("exact".into());
                } else if !self.certified {
                    tags.push("uncertified".into());
                }
                if let Some(n) = &self.note {
                    tags.push(n.clone());
                }
                let err = if self.exact {
                    String::new()
                } else {
                    format!("  err {}", self.err.as_deref().unwrap_or(""))
                };
                format!("{}({args}) = {v}{err}  [{}]", self.target, tags.join(", "))
            }
            None => format!(
                "{}({args}): {}: {}",
                self.target,
                self.method,
                self.note.as_deref().unwrap_or("")
            ),
        }
    }
}

/// Writes rows as they arrive. JSON output is a single object for one-shot
/// commands and an array otherwise.
pub struct Emitter<'w> {
    out: &'w mut dyn Write,
    format: Format,
    single: bool,
    rows: usize,
}

impl<'w> Emitter<'w> {
    pub fn new(out: &'w mut dyn Write, format: Format, single: bool) -> Self {
        Self {
            out,
            format,
            single,
            rows: 0,
        }
    }

    pub fn row<R: Row>(&mut self, r: &R) -> io::Result<()> {
        match self.format {
            Format::Plain => writeln!(self.out, "{}", r.plain())?,
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
                if self.rows == 0 {
                    w.write_record(r.header()).map_err(io::Error::other)?;
                }
                w.write_record(r.fields()).map_err(io::Error::other)?;
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                self.out.write_all(&bytes)?;
            }
            Format::Json if self.single => {
                writeln!(
                    self.out,
                    "{}",
                    serde_json::to_string_pretty(r).map_err(io::Error::other)?
                )?;
            }
            Format::Json => {
                let sep = if self.rows == 0 { "[\n" } else { ",\n" };
                write!(
                    self.out,
                    "{sep}  {}",
                    serde_json::to_string(r).map_err(io::Error::other)?
                )?;
            }
        }
        self.rows += 1;
        self.out.flush()
    }

    pub fn finish(self) -> io::Result<()> {
        if self.format == Format::Json && !self.single {
            if self.rows == 0 {
                writeln!(self.out, "[]")?;
            } else {
                writeln!(self.out, "\n]")?;
            }
        }
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::HPReal;
    use crate::eval::Method;
    use rug::Rational;

    fn record() -> OutputRecord {
        let r = EvalResult::exact(Rational::from((2, 3)), 64, Method::ClosedForm);
        let inputs = BTreeMap::from([("n".to_string(), "3".to_string()), ("s".to_string(), "1".to_string())]);
        OutputRecord::from_eval("zeta-zn", inputs, &r, 20)
    }

    #[test]
    fn exact_values_print_as_fractions() {
        let r = record();
        assert_eq!(r.value.as_deref(), Some("2/3"));
        assert!(r.exact);
        assert_eq!(r.plain(), "zeta-zn(n=3, s=1) = 2/3  [closed-form, exact]");
    }

    #[test]
    fn decimals_carry_the_requested_digits() {
        let pi = HPReal::pi(256);
        let s = format_decimal(pi.value(), 77);
        assert!(s.starts_with("3.14159265358979323846"));
        assert_eq!(s.trim_end_matches("e0").len(), 78);
        let z = HPComplex::from_parts(&HPReal::from_int(64, 1), &HPReal::from_int(64, -2));
        assert_eq!(format_complex(&z, 3), "1.00e0-2.00e0i");
    }

    #[test]
    fn csv_and_json_shapes() {
        let rows = [record(), record()];
        let mut buf = Vec::new();
        let mut e = Emitter::new(&mut buf, Format::Csv, false);
        for r in &rows {
            e.row(r).unwrap();
        }
        e.finish().unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,s,value,err,method\n3,1,2/3,0,closed-form\n3,1,2/3,0,closed-form\n"
        );

        let mut buf = Vec::new();
        let mut e = Emitter::new(&mut buf, Format::Json, false);
        for r in &rows {
            e.row(r).unwrap();
        }
        e.finish().unwrap();
        let back: Vec<OutputRecord> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, rows);
    }
}
