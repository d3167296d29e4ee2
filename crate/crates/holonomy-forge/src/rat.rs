//! Exact rational scalars.
//!
//! Backed by `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so equality and ordering are decidable and
//! canonical.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// p/q as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// An integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Fractional part in [0, 1): `x - floor(x)`.
pub fn mod_one(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

/// Exact k-th root of a nonnegative rational, if one exists.
pub fn kth_root(x: &Rational, k: u32) -> Option<Rational> {
    assert!(k >= 1);
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(zero());
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    let candidate = Rational::new(n, d);
    let mut p = one();
    for _ in 0..k {
        p *= &candidate;
    }
    if &p == x {
        Some(candidate)
    } else {
        None
    }
}
