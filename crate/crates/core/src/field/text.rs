//! Text encodings shared by the CLI and the map-spec files.
//!
//! Fields: `Q`, `Fp:<p>`, `Fq:<p>:<c0,...,1>`, `Qext:<c0,...,1>`.
//! Elements: `n` or `n/d` over Q, a decimal residue over Z_p, and
//! `[e0,e1,...]` over an extension.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::base::BaseField;
use super::{Field, FieldDescriptor, FieldElement, Polynomial};
use crate::error::{Error, Result};

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn parse_residue(s: &str, p: u64) -> Result<u64> {
    let v: u64 = s
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("invalid residue {s:?}")))?;
    if v >= p {
        return Err(Error::parse(format!("residue {v} is not below {p}")));
    }
    Ok(v)
}

/// Splits on commas that are not nested inside brackets or parentheses.
pub(crate) fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(format!("unbalanced brackets in {s:?}")));
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(format!("unbalanced brackets in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// Strips one pair of enclosing delimiters.
pub(crate) fn unwrap_delimited(s: &str, open: char, close: char) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(|| Error::parse(format!("expected {open}...{close}, got {s:?}")))
}

fn parse_base_scalar(base: BaseField, s: &str) -> Result<FieldElement> {
    match base {
        BaseField::Rationals => Ok(FieldElement::Rational(parse_rational(s)?)),
        BaseField::Prime(p) => Ok(FieldElement::Residue(parse_residue(s, p)?)),
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |m: &Polynomial| {
            m.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FieldDescriptor::Rationals => f.write_str("Q"),
            FieldDescriptor::Prime(p) => write!(f, "Fp:{p}"),
            FieldDescriptor::Extension { base, modulus } => match base.as_ref() {
                FieldDescriptor::Prime(p) => write!(f, "Fq:{p}:{}", join(modulus)),
                FieldDescriptor::Rationals => write!(f, "Qext:{}", join(modulus)),
                // towers are rejected by Field::new; print something unambiguous anyway
                other => write!(f, "Ext({other}):{}", join(modulus)),
            },
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse(format!("invalid field descriptor {s:?}"));
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            return Ok(FieldDescriptor::Prime(rest.trim().parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix("Fq:") {
            let (p, coeffs) = rest.split_once(':').ok_or_else(bad)?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let coeffs = coeffs
                .split(',')
                .map(|c| parse_residue(c, p).map(FieldElement::Residue))
                .collect::<Result<Vec<_>>>()?;
            return Ok(FieldDescriptor::Extension {
                base: Box::new(FieldDescriptor::Prime(p)),
                modulus: Polynomial::new(coeffs),
            });
        }
        if let Some(rest) = s.strip_prefix("Qext:") {
            let coeffs = rest
                .split(',')
                .map(|c| parse_rational(c).map(FieldElement::Rational))
                .collect::<Result<Vec<_>>>()?;
            return Ok(FieldDescriptor::Extension {
                base: Box::new(FieldDescriptor::Rationals),
                modulus: Polynomial::new(coeffs),
            });
        }
        Err(bad())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Field::new(s.parse()?)
    }
}

impl Field {
    /// Parses an element in this field's text encoding.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        match self.as_base() {
            Some(base) => parse_base_scalar(base, s),
            None => {
                let inner = unwrap_delimited(s, '[', ']')?;
                let coeffs = split_top_level(inner)?
                    .into_iter()
                    .map(|c| parse_base_scalar(self.base(), c))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != self.degree() {
                    return Err(Error::parse(format!(
                        "extension element needs {} coefficients, got {}",
                        self.degree(),
                        coeffs.len()
                    )));
                }
                Ok(FieldElement::Coeffs(coeffs))
            }
        }
    }
}
