//! The scalar abstraction shared by every algebra in the crate.
//!
//! Elements of runtime-defined fields (F_q with `q` chosen at run time) cannot
//! produce `0` or `1` out of thin air, so constants are derived from an
//! existing element of the same field (`zero_like`, `one_like`).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// `0` for characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, n: i64) -> Self {
        self.from_bigint_like(&BigInt::from(n))
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    fn square(&self) -> Self {
        self.clone() * self
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

/// Parses `"a/b"`, `"a"` or `"-a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?;
            if den.is_zero() {
                return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
            }
            BigRational::new(num, den)
        }
        None => BigRational::from_integer(
            s.parse()
                .map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Canonical `"a/b"` form (`"a"` for integers), denominator positive.
pub fn format_rational(r: &BigRational) -> String {
    debug_assert!(r.denom().is_positive());
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        for s in ["3/4", "-1/2", "5", "0", "6/8"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(format_rational(&parse_rational("6/-8").unwrap()), "-3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = rat(-2, 3);
        let mut acc = r.one_like();
        for e in 0..8 {
            assert_eq!(r.pow_u64(e), acc);
            acc *= &r;
        }
    }
}
