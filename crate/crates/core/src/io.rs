//! Matrix ingestion and report emission.
//!
//! Matrices arrive either as JSON, `{"n": 2, "entries": [[re, im], …]}`
//! row-major, or as CSV with one row per line and complex literals such as
//! `3`, `-2i`, `1+i`, `0.5-1/3i`. Rational literals `p/q` are accepted
//! everywhere; exact mode keeps them exact.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::RationalMatrix;
use crate::matrix::{Complex, ComplexMatrix};
use crate::verdict::{BlockDecision, MatrixVerdict};

pub const SCHEMA: &str = "ddsing/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl MatrixFormat {
    /// Guesses the format from a file extension; anything but `.csv` is JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => MatrixFormat::Csv,
            _ => MatrixFormat::Json,
        }
    }
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            other => Err(Error::Parse {
                row: 0,
                col: 0,
                msg: format!("unknown matrix format '{other}'"),
            }),
        }
    }
}

/// Exact decimal or `p/q` literal. Decimal exponents (`1.5e-3`) are allowed.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        return if q.is_zero() { None } else { Some(p / q) };
    }
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(k) => (&body[..k], body[k + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Some(if neg { -value } else { value })
}

fn parse_real_f64(s: &str) -> Option<f64> {
    let s = s.trim();
    if s.contains('/') {
        let (p, q) = s.split_once('/')?;
        return Some(parse_real_f64(p)? / parse_real_f64(q)?);
    }
    f64::from_str(s).ok().filter(|x| x.is_finite())
}

/// Splits a literal into real and imaginary text. The imaginary text is
/// `None` for purely real literals; an empty or sign-only coefficient means 1.
fn split_complex(s: &str) -> (Option<&str>, Option<&str>) {
    let s = s.trim();
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return (Some(s), None);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'/'));
    match split {
        Some(k) => (Some(&body[..k]), Some(&body[k..])),
        None => (None, Some(body)),
    }
}

fn imag_coefficient<T>(text: &str, one: T, parse: impl Fn(&str) -> Option<T>, neg: impl Fn(T) -> T) -> Option<T> {
    match text.trim() {
        "" | "+" => Some(one),
        "-" => Some(neg(one)),
        t => parse(t),
    }
}

pub fn parse_complex_literal(s: &str) -> Option<Complex> {
    let (re, im) = split_complex(s);
    let re = match re {
        Some(t) => parse_real_f64(t)?,
        None => 0.0,
    };
    let im = match im {
        Some(t) => imag_coefficient(t, 1.0, parse_real_f64, |x| -x)?,
        None => 0.0,
    };
    Some(Complex::new(re, im))
}

/// Exact literal; returns `Err(NotReal)` for a nonzero imaginary part.
pub fn parse_rational_literal(s: &str) -> Option<Result<BigRational>> {
    let (re, im) = split_complex(s);
    if let Some(t) = im {
        let v = imag_coefficient(t, BigRational::one(), parse_rational, |x| -x)?;
        if !v.is_zero() {
            return Some(Err(Error::NotReal));
        }
    }
    Some(Ok(match re {
        Some(t) => parse_rational(t)?,
        None => BigRational::zero(),
    }))
}

#[derive(Deserialize)]
struct RawMatrix {
    n: usize,
    entries: Vec<[serde_json::Value; 2]>,
}

fn parse_error(row: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        row,
        col,
        msg: msg.into(),
    }
}

fn json_cells(bytes: &[u8]) -> Result<(usize, Vec<[String; 2]>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error(0, 0, e.to_string()))?;
    let raw: RawMatrix = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
    if raw.n == 0 || raw.entries.len() != raw.n * raw.n {
        return Err(Error::DimensionMismatch {
            expected: raw.n.max(1) * raw.n.max(1),
            actual: raw.entries.len(),
        });
    }
    let n = raw.n;
    let cells = raw
        .entries
        .into_iter()
        .enumerate()
        .map(|(k, pair)| {
            let text = |v: &serde_json::Value| match v {
                serde_json::Value::Number(x) => Ok(x.to_string()),
                serde_json::Value::String(s) => Ok(s.clone()),
                other => Err(parse_error(
                    k / n + 1,
                    k % n + 1,
                    format!("expected a number, got {other}"),
                )),
            };
            Ok([text(&pair[0])?, text(&pair[1])?])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((n, cells))
}

fn csv_cells(bytes: &[u8]) -> Result<(usize, Vec<String>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error(0, 0, e.to_string()))?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let n = lines.len();
    if n == 0 {
        return Err(parse_error(1, 1, "empty matrix"));
    }
    let mut cells = Vec::with_capacity(n * n);
    for line in &lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: fields.len(),
            });
        }
        cells.extend(fields.into_iter().map(str::to_string));
    }
    Ok((n, cells))
}

pub fn parse_matrix(bytes: &[u8], format: MatrixFormat) -> Result<ComplexMatrix> {
    match format {
        MatrixFormat::Json => {
            let (n, cells) = json_cells(bytes)?;
            let entries = cells
                .iter()
                .enumerate()
                .map(|(k, [re, im])| {
                    let bad = |t: &str| parse_error(k / n + 1, k % n + 1, format!("bad number '{t}'"));
                    Ok(Complex::new(
                        parse_real_f64(re).ok_or_else(|| bad(re))?,
                        parse_real_f64(im).ok_or_else(|| bad(im))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            ComplexMatrix::new(n, entries)
        }
        MatrixFormat::Csv => {
            let (n, cells) = csv_cells(bytes)?;
            let entries = cells
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    parse_complex_literal(t)
                        .ok_or_else(|| parse_error(k / n + 1, k % n + 1, format!("bad complex literal '{t}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            ComplexMatrix::new(n, entries)
        }
    }
}

/// Exact-mode ingestion; the matrix must be real.
pub fn parse_matrix_exact(bytes: &[u8], format: MatrixFormat) -> Result<RationalMatrix> {
    let (n, entries) = match format {
        MatrixFormat::Json => {
            let (n, cells) = json_cells(bytes)?;
            let entries = cells
                .iter()
                .enumerate()
                .map(|(k, [re, im])| {
                    let bad = |t: &str| parse_error(k / n + 1, k % n + 1, format!("bad rational '{t}'"));
                    let im = parse_rational(im).ok_or_else(|| bad(im))?;
                    if !im.is_zero() {
                        return Err(Error::NotReal);
                    }
                    parse_rational(re).ok_or_else(|| bad(re))
                })
                .collect::<Result<Vec<_>>>()?;
            (n, entries)
        }
        MatrixFormat::Csv => {
            let (n, cells) = csv_cells(bytes)?;
            let entries = cells
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    parse_rational_literal(t)
                        .ok_or_else(|| parse_error(k / n + 1, k % n + 1, format!("bad rational literal '{t}'")))?
                })
                .collect::<Result<Vec<_>>>()?;
            (n, entries)
        }
    };
    RationalMatrix::new(n, entries)
}

/// Weight vector: a JSON array or comma/whitespace separated numbers.
pub fn parse_weights(bytes: &[u8]) -> Result<Vec<f64>> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error(0, 0, e.to_string()))?;
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| parse_error(e.line(), e.column(), e.to_string()));
    }
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(k, t)| parse_real_f64(t).ok_or_else(|| parse_error(1, k + 1, format!("bad weight '{t}'"))))
        .collect()
}

/// Versioned analysis report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    #[serde(flatten)]
    pub verdict: MatrixVerdict,
}

impl Report {
    pub fn new(verdict: MatrixVerdict) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            verdict,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Human-readable summary with a per-block table.
    pub fn to_text(&self) -> String {
        let v = &self.verdict;
        let mut out = String::new();
        let _ = writeln!(out, "schema: {}", self.schema);
        if !v.applicable {
            let _ = writeln!(out, "verdict: NOT DIAGONALLY DOMINANT");
            let _ = writeln!(out, "violated rows: {:?}", v.violated_rows);
            return out;
        }
        let _ = writeln!(
            out,
            "verdict: {} (nullity {}){}",
            if v.singular { "SINGULAR" } else { "NONSINGULAR" },
            v.nullity,
            if v.exact { " [exact]" } else { "" }
        );
        let _ = writeln!(
            out,
            "tolerances: dominance {:e}, angle {:e}, residual {:e}",
            v.tolerances.tol_dom, v.tolerances.tol_angle, v.tolerances.tol_res
        );
        let _ = writeln!(
            out,
            "{:<6} {:<6} {:<12} {:<30} members",
            "block", "size", "kind", "verdict"
        );
        for b in &v.blocks {
            let verdict = match &b.verdict {
                BlockDecision::Singular { .. } => "singular".to_string(),
                BlockDecision::Nonsingular { reason, .. } => format!("nonsingular ({reason:?})"),
            };
            let _ = writeln!(
                out,
                "{:<6} {:<6} {:<12} {:<30} {:?}",
                b.block_id,
                b.size,
                if b.independent { "independent" } else { "dependent" },
                verdict,
                b.members
            );
        }
        for c in &v.certificates {
            let _ = writeln!(
                out,
                "certificate block {}: right {:.2e}, left {:.2e}, witness {:.2e}",
                c.block, c.right_residual, c.left_residual, c.witness_residual
            );
        }
        for e in &v.certificate_errors {
            let _ = writeln!(out, "certificate error: {e}");
        }
        out
    }
}
