//! Rationals with odd denominator, i.e. the 2-local integers `Z_(2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An exact rational `num / den` with `den` odd and positive, stored in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddRational(BigRational);

impl OddRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::EvenArgument("0".into()));
        }
        Self::try_from(BigRational::new(num.into(), den))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        OddRational(BigRational::from_integer(n.into()))
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// `3^k` for any integer `k`; negative powers of odd numbers stay 2-local.
    pub fn odd_pow(base: i64, exp: i64) -> Result<Self> {
        if base % 2 == 0 {
            return Err(Error::EvenArgument(base.to_string()));
        }
        let p = num_traits::pow(BigInt::from(base), exp.unsigned_abs() as usize);
        if exp >= 0 {
            Ok(Self::from_int(p))
        } else {
            Self::new(1, p)
        }
    }

    /// Inverse of a 2-adic unit (odd numerator).
    pub fn inv_unit(&self) -> Result<Self> {
        if self.num().is_even() {
            return Err(Error::EvenArgument(self.to_string()));
        }
        Self::try_from(self.0.recip())
    }
}

impl TryFrom<BigRational> for OddRational {
    type Error = Error;

    fn try_from(q: BigRational) -> Result<Self> {
        // BigRational keeps a positive denominator in lowest terms.
        if q.denom().is_even() {
            return Err(Error::EvenDenominator {
                row: 0,
                col: 0,
                value: q.to_string(),
            });
        }
        Ok(OddRational(q))
    }
}

impl From<i64> for OddRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for OddRational {
    fn from(n: BigInt) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for OddRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for OddRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for OddRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("cannot parse {s:?} as a rational"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_negative() {
                    Self::new(-n, -d)
                } else {
                    Self::new(n, d)
                }
            }
            None => Ok(Self::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for OddRational {
            type Output = OddRational;
            fn $m(self, rhs: OddRational) -> OddRational {
                OddRational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a OddRational> for &'a OddRational {
            type Output = OddRational;
            fn $m(self, rhs: &'a OddRational) -> OddRational {
                OddRational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for OddRational {
    type Output = OddRational;
    fn neg(self) -> OddRational {
        OddRational(-self.0)
    }
}

impl Neg for &OddRational {
    type Output = OddRational;
    fn neg(self) -> OddRational {
        OddRational(-self.0.clone())
    }
}

impl Zero for OddRational {
    fn zero() -> Self {
        OddRational::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for OddRational {
    fn one() -> Self {
        OddRational::from_int(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = OddRational::new(-72, 1054).unwrap();
        assert_eq!(q.num(), &BigInt::from(-36));
        assert_eq!(q.den(), &BigInt::from(527));
        assert_eq!(OddRational::new(0, 17).unwrap().den(), &BigInt::from(1));
        assert!(OddRational::new(1, 2).is_err());
        assert!(OddRational::new(3, 6).is_err());
    }

    #[test]
    fn parse_and_display() {
        let q: OddRational = "-9963/17".parse().unwrap();
        assert_eq!(q.to_string(), "-9963/17");
        assert_eq!(
            "36 / -527".parse::<OddRational>().unwrap().to_string(),
            "-36/527"
        );
        assert!("1/4".parse::<OddRational>().is_err());
    }

    #[test]
    fn odd_powers() {
        assert_eq!(OddRational::odd_pow(3, -2).unwrap().to_string(), "1/9");
        assert_eq!(OddRational::odd_pow(-1, 3).unwrap(), OddRational::from(-1));
        assert!(OddRational::odd_pow(2, 1).is_err());
    }
}
