//! Exact computation of knot-concordance invariants from Seifert matrices.
//!
//! The crate covers Alexander polynomials, Levine-Tristram signatures, the Arf
//! invariant, the rational Blanchfield pairing and metabolizers, together with
//! a synthesizer for companion-knot families whose signature data obstruct
//! linear dependence in the concordance group, and certificates that re-check
//! every arithmetic premise of that obstruction.

pub mod algebra;
pub mod blanchfield;
pub mod certificate;
pub mod cli;
pub mod concordance;
pub mod error;
pub mod forge;
pub mod json;
pub mod matrix;
pub mod seifert;
pub mod signature;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_traits::Zero;

pub type Rational = num_rational::BigRational;

/// Formats a rational as `"n"` or `"n/d"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"1e-9"` / `"0.25"`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(|| format!("bad rational {s:?}"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from_integer((-7).into()));
        assert_eq!(parse_rational("1e-9").unwrap(), Rational::new(1.into(), 1_000_000_000.into()));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&Rational::new((-4).into(), 3.into())), "-4/3");
    }
}
