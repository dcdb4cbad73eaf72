//! Residues modulo powers of 2, valuations, and discrete logarithms base 3.
//!
//! Everything is exact: values are unbounded integers reduced eagerly into
//! `[0, 2^prec)`.  The unit group `(Z/2^n)^*` for `n >= 3` is `{±1} x <3>`
//! with `<3>` cyclic of order `2^(n-2)`, consisting of the classes that are
//! `1` or `3` mod 8.  That is what makes [`dlog3`] and [`solve_l`] work.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, OddRational, Result};

/// 2-adic valuation. `Infinity` is the valuation of zero and compares above
/// every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val2 {
    Finite(u64),
    Infinity,
}

impl Val2 {
    pub fn finite(self) -> Option<u64> {
        match self {
            Val2::Finite(v) => Some(v),
            Val2::Infinity => None,
        }
    }

    /// `min(cap, self + offset)`; the infinite valuation clamps to `cap`.
    pub fn clamped_shift(self, offset: u64, cap: u64) -> u64 {
        match self {
            Val2::Finite(v) => (v + offset).min(cap),
            Val2::Infinity => cap,
        }
    }
}

impl fmt::Display for Val2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val2::Finite(v) => write!(f, "{v}"),
            Val2::Infinity => f.write_str("inf"),
        }
    }
}

pub fn val2(n: &BigInt) -> Val2 {
    match n.trailing_zeros() {
        Some(v) => Val2::Finite(v),
        None => Val2::Infinity,
    }
}

pub fn val2_i64(n: i64) -> Val2 {
    if n == 0 {
        Val2::Infinity
    } else {
        Val2::Finite(n.trailing_zeros() as u64)
    }
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// An integer modulo `2^prec`, kept in `[0, 2^prec)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicResidue {
    value: BigInt,
    prec: u32,
}

impl PadicResidue {
    pub fn new(value: impl Into<BigInt>, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidPrecision(prec));
        }
        Ok(Self::reduce(value.into(), prec))
    }

    fn reduce(value: BigInt, prec: u32) -> Self {
        PadicResidue {
            value: value.mod_floor(&pow2(prec)),
            prec,
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> BigInt {
        pow2(self.prec)
    }

    pub fn is_odd(&self) -> bool {
        self.value.is_odd()
    }

    /// Reduce to a coarser precision.
    pub fn truncate(&self, prec: u32) -> Result<Self> {
        if prec == 0 || prec > self.prec {
            return Err(Error::InvalidPrecision(prec));
        }
        Ok(Self::reduce(self.value.clone(), prec))
    }

    /// Sum at the smaller of the two precisions.
    pub fn add(&self, other: &Self) -> Self {
        Self::reduce(&self.value + &other.value, self.prec.min(other.prec))
    }

    /// Product at the smaller of the two precisions.
    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(&self.value * &other.value, self.prec.min(other.prec))
    }
}

impl fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod 2^{}", self.value, self.prec)
    }
}

/// Inverse of an odd integer modulo `2^prec`, by Newton iteration
/// `x <- x (2 - a x)`, which doubles the number of correct bits per step.
pub fn inv_odd(a: &BigInt, prec: u32) -> Result<PadicResidue> {
    if prec == 0 {
        return Err(Error::InvalidPrecision(prec));
    }
    if a.is_even() {
        return Err(Error::EvenArgument(a.to_string()));
    }
    let modulus = pow2(prec);
    let a = a.mod_floor(&modulus);
    // a * a = 1 mod 8 for every odd a, so x = a is correct to 3 bits.
    let mut x = a.clone();
    let mut bits = 3u32;
    while bits < prec {
        bits = (2 * bits).min(prec);
        let m = pow2(bits);
        x = (&x * (BigInt::from(2) - &a * &x)).mod_floor(&m);
    }
    PadicResidue::new(x, prec)
}

/// `base^exp mod 2^prec` by square-and-multiply, reducing after every step.
pub fn modpow2(base: &BigInt, exp: &BigInt, prec: u32) -> Result<PadicResidue> {
    if prec == 0 {
        return Err(Error::InvalidPrecision(prec));
    }
    if exp.is_negative() {
        return Err(Error::Precondition(format!("negative exponent {exp}")));
    }
    let modulus = pow2(prec);
    let mut acc = BigInt::one().mod_floor(&modulus);
    let mut sq = base.mod_floor(&modulus);
    let bits = exp.bits();
    for k in 0..bits {
        if exp.bit(k) {
            acc = (&acc * &sq).mod_floor(&modulus);
        }
        if k + 1 < bits {
            sq = (&sq * &sq).mod_floor(&modulus);
        }
    }
    PadicResidue::new(acc, prec)
}

/// `3^exp mod 2^prec` for any integer exponent.
pub fn pow3_signed(exp: &BigInt, prec: u32) -> Result<PadicResidue> {
    let p = modpow2(&BigInt::from(3), &exp.abs(), prec)?;
    if exp.is_negative() {
        inv_odd(p.value(), prec)
    } else {
        Ok(p)
    }
}

/// Image of a 2-local rational in `Z/2^prec`.
pub fn rat_to_residue(q: &OddRational, prec: u32) -> Result<PadicResidue> {
    let inv = inv_odd(q.den(), prec)?;
    PadicResidue::new(q.num() * inv.value(), prec)
}

/// A congruence class `exponent mod 2^modulus_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteLog {
    pub exponent: BigInt,
    pub modulus_bits: u32,
}

/// Order of 3 in `(Z/2^prec)^*`, as a power of two.
pub fn order_bits_of_3(prec: u32) -> u32 {
    match prec {
        0 | 1 => 0,
        2 => 1,
        p => p - 2,
    }
}

/// Solve `3^x = u (mod 2^prec)` for `x`, unique modulo the order of 3.
///
/// Bits are found one at a time: if `3^x = u mod 2^(k+2)` then `x` or
/// `x + 2^k` works mod `2^(k+3)`, because `3^(2^k) = 1 + 2^(k+2) mod 2^(k+3)`
/// for `k >= 1`.
pub fn dlog3(u: &PadicResidue) -> Result<DiscreteLog> {
    let prec = u.prec();
    let not_in = || Error::NotInSubgroup {
        value: u.value().to_string(),
        prec,
    };
    let three = BigInt::from(3);
    match prec {
        1 => {
            return if u.is_odd() {
                Ok(DiscreteLog {
                    exponent: BigInt::zero(),
                    modulus_bits: 0,
                })
            } else {
                Err(not_in())
            }
        }
        2 => {
            return if u.value() == &BigInt::one() {
                Ok(DiscreteLog {
                    exponent: BigInt::zero(),
                    modulus_bits: 1,
                })
            } else if u.value() == &three {
                Ok(DiscreteLog {
                    exponent: BigInt::one(),
                    modulus_bits: 1,
                })
            } else {
                Err(not_in())
            }
        }
        _ => {}
    }
    let low = u.value().mod_floor(&BigInt::from(8));
    let mut x = if low == BigInt::one() {
        BigInt::zero()
    } else if low == three {
        BigInt::one()
    } else {
        return Err(not_in());
    };
    for k in 1..prec - 2 {
        let m = pow2(k + 3);
        let lhs = modpow2(&three, &x, k + 3)?;
        if lhs.value() != &u.value().mod_floor(&m) {
            x += pow2(k);
        }
    }
    debug_assert_eq!(modpow2(&three, &x, prec).ok().as_ref(), Some(u));
    Ok(DiscreteLog {
        exponent: x,
        modulus_bits: prec - 2,
    })
}

/// Least nonnegative `L` with `3^(4L+2) = rhs (mod 2^prec)`, and the number of
/// bits `prec - 4` modulo which it is determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedL {
    pub l: BigInt,
    pub modulus_bits: u32,
}

pub fn solve_l(rhs: &PadicResidue) -> Result<SolvedL> {
    if rhs.prec() < 4 {
        return Err(Error::InvalidPrecision(rhs.prec()));
    }
    let dl = dlog3(rhs).map_err(|e| Error::NoSolution(e.to_string()))?;
    // dl.modulus_bits = prec - 2 >= 2, so x mod 4 is meaningful.
    let x = dl.exponent;
    if x.mod_floor(&BigInt::from(4)) != BigInt::from(2) {
        return Err(Error::NoSolution(format!(
            "discrete log {x} mod 2^{} is not 2 mod 4",
            dl.modulus_bits
        )));
    }
    let modulus_bits = dl.modulus_bits - 2;
    let shifted: BigInt = (x - 2) >> 2usize;
    let l = shifted.mod_floor(&pow2(modulus_bits));
    Ok(SolvedL { l, modulus_bits })
}

/// The three routes to `(3^(4L-2) - 1) / 8 mod 2^18`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingTrace {
    pub l: BigInt,
    /// `(3^(4L-2) - 1) / 8` from a power computed mod `2^21`.
    pub power_route: BigInt,
    /// `sum_{i=1}^{6} C(2L-1, i) 8^(i-1)`, the truncated expansion of `(1+8)^(2L-1)`.
    pub binomial_route: BigInt,
    /// `(1/9)(2^7/527 - 3)`, independent of `L`.
    pub rational_route: BigInt,
    pub l_mod_8: BigInt,
    pub l_mod_1024: BigInt,
}

impl LiftingTrace {
    pub fn all_equal(&self) -> bool {
        self.power_route == self.binomial_route && self.binomial_route == self.rational_route
    }
}

pub fn lifting_trace(l: &BigInt) -> Result<LiftingTrace> {
    const PREC: u32 = 21;
    const LOW: u32 = PREC - 3;
    let low_mod = pow2(LOW);

    let p = pow3_signed(&(BigInt::from(4) * l - 2), PREC)?;
    let shifted: BigInt = (p.value() - 1) >> 3usize;
    let power_route = shifted.mod_floor(&low_mod);

    let n = BigInt::from(2) * l - 1;
    let mut binomial_route = BigInt::zero();
    let mut eight_pow = BigInt::one();
    for i in 1..=6u32 {
        binomial_route += binomial(&n, i) * &eight_pow;
        eight_pow *= 8;
    }
    let binomial_route = binomial_route.mod_floor(&low_mod);

    let q = OddRational::new(1, 9)? * (OddRational::new(128, 527)? - OddRational::from(3));
    let rational_route = rat_to_residue(&q, LOW)?.value().clone();

    Ok(LiftingTrace {
        l: l.clone(),
        power_route,
        binomial_route,
        rational_route,
        l_mod_8: l.mod_floor(&BigInt::from(8)),
        l_mod_1024: l.mod_floor(&BigInt::from(1024)),
    })
}

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!` for any integer `n`.
pub fn binomial(n: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= n - j;
        den *= j + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuations() {
        assert_eq!(val2(&b(48)), Val2::Finite(4));
        assert_eq!(val2(&b(0)), Val2::Infinity);
        assert_eq!(val2(&b(-12)), Val2::Finite(2));
        assert_eq!(val2_i64(-12), Val2::Finite(2));
        assert!(Val2::Finite(1000) < Val2::Infinity);
        assert_eq!(Val2::Infinity.clamped_shift(4, 21), 21);
        assert_eq!(Val2::Finite(3).clamped_shift(4, 21), 7);
    }

    #[test]
    fn odd_inverses() {
        assert_eq!(inv_odd(&b(1), 21).unwrap().value(), &b(1));
        assert_eq!(inv_odd(&b(15), 8).unwrap().value(), &b(239));
        assert_eq!(inv_odd(&b(-1), 5).unwrap().value(), &b(31));
        assert!(matches!(inv_odd(&b(6), 8), Err(Error::EvenArgument(_))));
    }

    #[test]
    fn powers() {
        assert_eq!(modpow2(&b(3), &b(2), 21).unwrap().value(), &b(9));
        assert_eq!(modpow2(&b(3), &b(0), 1).unwrap().value(), &b(1));
        assert_eq!(
            modpow2(&b(3), &(BigInt::one() << 19usize), 21)
                .unwrap()
                .value(),
            &b(1)
        );
        assert_ne!(
            modpow2(&b(3), &(BigInt::one() << 18usize), 21)
                .unwrap()
                .value(),
            &b(1)
        );
        assert_eq!(pow3_signed(&b(-2), 4).unwrap().value(), &b(9));
    }

    #[test]
    fn rational_residues() {
        let r = |n, d, p| rat_to_residue(&OddRational::new(n, d).unwrap(), p).unwrap();
        assert_eq!(r(1, 1, 21).value(), &b(1));
        assert_eq!(r(36, 527, 4).value(), &b(12));
        assert_eq!(r(-1, 3, 3).value(), &b(5));
    }

    #[test]
    fn discrete_logs() {
        let u = |v, p| PadicResidue::new(b(v), p).unwrap();
        assert_eq!(
            dlog3(&u(9, 21)).unwrap(),
            DiscreteLog {
                exponent: b(2),
                modulus_bits: 19
            }
        );
        assert_eq!(dlog3(&u(3, 21)).unwrap().exponent, b(1));
        assert!(matches!(dlog3(&u(5, 4)), Err(Error::NotInSubgroup { .. })));
        assert!(matches!(dlog3(&u(7, 21)), Err(Error::NotInSubgroup { .. })));
        assert_eq!(dlog3(&u(3, 2)).unwrap().exponent, b(1));
        assert!(dlog3(&u(2, 1)).is_err());
    }

    #[test]
    fn solve_trivial_rhs() {
        let s = solve_l(&PadicResidue::new(b(9), 21).unwrap()).unwrap();
        assert_eq!(
            s,
            SolvedL {
                l: b(0),
                modulus_bits: 17
            }
        );
        // 3 = 3^1 is a power of 3 but 1 is not 2 mod 4.
        assert!(matches!(
            solve_l(&PadicResidue::new(b(3), 21).unwrap()),
            Err(Error::NoSolution(_))
        ));
        assert!(matches!(
            solve_l(&PadicResidue::new(b(5), 21).unwrap()),
            Err(Error::NoSolution(_))
        ));
        assert!(solve_l(&PadicResidue::new(b(9), 3).unwrap()).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&b(5), 2), b(10));
        assert_eq!(binomial(&b(3), 5), b(0));
        assert_eq!(binomial(&b(-1), 3), b(-1));
    }

    #[test]
    fn residue_arithmetic_reduces() {
        let a = PadicResidue::new(b(250), 8).unwrap();
        let c = PadicResidue::new(b(10), 8).unwrap();
        assert_eq!(a.add(&c).value(), &b(4));
        assert_eq!(a.mul(&c).value(), &b(2500 % 256));
        assert_eq!(PadicResidue::new(b(-1), 4).unwrap().value(), &b(15));
        assert!(PadicResidue::new(b(1), 0).is_err());
    }
}
