//! Exact scalars, vectors, matrices and linear-system solving.
//!
//! Every coefficient in the toolkit is a [`Rational`]: an arbitrary-precision
//! fraction kept in canonical form (positive denominator, reduced by the gcd)
//! after every operation, so equality and hashing are structural.

mod linsolve;
mod matrix;

pub use linsolve::{solve_linear_system, SolutionSet};
pub use matrix::Matrix;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Dense vector of rationals.
pub type Vector = Vec<Rational>;

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Shorthand for `numer / denom`. Panics when `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued vector from a slice of `i64`.
pub fn int_vec(values: &[i64]) -> Vector {
    values.iter().copied().map(int).collect()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"2.5"` or `"-0.125"`.
///
/// Decimals are converted exactly; no floating point is involved.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits_ok = !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok {
            return Err(bad());
        }
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let whole: BigInt = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            whole_abs.parse().map_err(|_| bad())?
        };
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let value: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(value))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Formats a vector as `(a, b, c)`.
pub fn format_vector(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scales `v` so that it has integer entries with gcd one, preserving sign.
///
/// Used to put directions and constraint rows into a canonical form before
/// deduplication. The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> Vector {
    use num::Integer;
    if is_zero_vector(v) {
        return v.to_vec();
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for x in &scaled {
        gcd = gcd.gcd(x);
    }
    scaled
        .into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

/// Scales `v` by the reciprocal of the absolute value of its first nonzero
/// entry, so parallel directions with the same orientation coincide.
pub fn normalize_direction(v: &[Rational]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let scale = lead.abs();
            v.iter().map(|x| x / &scale).collect()
        }
        None => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_accepted_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("2.5").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" 7 / 14 ").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1/0", "abc", "1.", "1.2.3", "1/x"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = ratio(2, 4) + ratio(1, -2);
        assert_eq!(a, int(0));
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert!(ratio(3, 9).denom() == &BigInt::from(3));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![ratio(1, 2), ratio(-3, 4), int(0)];
        assert_eq!(primitive_integer(&v), int_vec(&[2, -3, 0]));
        let d = normalize_direction(&int_vec(&[0, -4, 2]));
        assert_eq!(d, vec![int(0), int(-1), ratio(1, 2)]);
    }
}
