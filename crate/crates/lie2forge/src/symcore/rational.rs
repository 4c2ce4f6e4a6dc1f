use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` already guarantees lowest terms with a
/// positive denominator after reduction.
pub type Rational = BigRational;

/// Convenience constructor from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a JSON rational literal: "p/q" or "p" (no decimals allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    if s.contains('.') || s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Format as "p" or "p/q" with positive denominator, lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        debug_assert!(r.denom().is_positive());
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-7", "1/3", "-4/9", "22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        // reduction and sign normalization
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("1/-2").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for s in ["1.5", "", "x", "1/0", "1//2"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }
}
