//! Plain-text grammar for symbols:
//!
//! ```text
//! poly: c0 c1 c2 ...          coefficients lowest degree first
//! rat: n0 n1 ... / d0 d1 ...  numerator and denominator coefficients
//! series: c0 c1 ...           truncated Taylor coefficients
//! ```
//!
//! Each coefficient is a real or complex literal such as `2`, `-0.5`, `1+2i`,
//! `3e-2-4i`, `i` or `-i`.

use num_complex::Complex64;

use super::{Polynomial, PowerSeries, RationalMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedFunction {
    Poly(Polynomial),
    Rational(RationalMap),
    Series(PowerSeries),
}

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::invalid(format!("bad number '{whole}'")))?;
    if !v.is_finite() {
        return Err(Error::invalid(format!("non-finite number '{whole}'")));
    }
    Ok(v)
}

fn unit_or(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, whole),
    }
}

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty number"));
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(parse_real(s, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(parse_real(&body[..k], text)?, unit_or(&body[k..], text)?)),
        None => Ok(Complex64::new(0.0, unit_or(body, text)?)),
    }
}

fn parse_list(s: &str) -> Result<Vec<Complex64>> {
    let v = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(parse_complex)
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(Error::invalid("empty coefficient list"));
    }
    Ok(v)
}

fn body<'a>(text: &'a str, tag: &str) -> Result<&'a str> {
    let t = text.trim();
    t.strip_prefix(tag)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| Error::invalid(format!("expected '{tag}: ...', got '{t}'")))
}

pub fn parse_poly(text: &str) -> Result<Polynomial> {
    Ok(Polynomial::new(parse_list(body(text, "poly")?)?))
}

pub fn parse_rational(text: &str) -> Result<RationalMap> {
    let b = body(text, "rat")?;
    let (n, d) = b
        .split_once('/')
        .ok_or_else(|| Error::invalid("rational literal needs 'num / den'"))?;
    RationalMap::new(Polynomial::new(parse_list(n)?), Polynomial::new(parse_list(d)?))
}

pub fn parse_series(text: &str) -> Result<PowerSeries> {
    Ok(PowerSeries::new(parse_list(body(text, "series")?)?))
}

/// Dispatch on the leading tag.
pub fn parse_function(text: &str) -> Result<ParsedFunction> {
    let t = text.trim_start();
    if t.starts_with("poly") {
        parse_poly(t).map(ParsedFunction::Poly)
    } else if t.starts_with("rat") {
        parse_rational(t).map(ParsedFunction::Rational)
    } else if t.starts_with("series") {
        parse_series(t).map(ParsedFunction::Series)
    } else {
        Err(Error::invalid(format!("unknown function literal '{t}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let cases = [
            ("2", (2.0, 0.0)),
            ("-0.5", (-0.5, 0.0)),
            ("1+2i", (1.0, 2.0)),
            ("1-2i", (1.0, -2.0)),
            ("3e-2-4i", (0.03, -4.0)),
            ("1e+2+1e-3i", (100.0, 0.001)),
            ("i", (0.0, 1.0)),
            ("-i", (0.0, -1.0)),
            ("2.5i", (0.0, 2.5)),
            ("1+i", (1.0, 1.0)),
        ];
        for (s, (re, im)) in cases {
            assert_eq!(parse_complex(s).unwrap(), Complex64::new(re, im), "{s}");
        }
        for bad in ["", "x", "1+", "1+xi", "inf"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn functions() {
        let p = parse_poly("poly: 1 0 -1").unwrap();
        assert_eq!(p.degree(), 2);
        let r = parse_rational("rat: 0 1 / 1 -2 1").unwrap();
        assert_eq!(r.den().degree(), 2);
        let s = parse_series("series: 1, 2, 3+i").unwrap();
        assert_eq!(s.trunc(), 2);
        assert!(matches!(parse_function(" poly: 1").unwrap(), ParsedFunction::Poly(_)));
        assert!(parse_rational("rat: 1 / 0").is_err());
        assert!(parse_poly("series: 1").is_err());
        assert!(parse_function("foo: 1").is_err());
    }
}
