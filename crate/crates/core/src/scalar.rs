//! Exact scalars: arbitrary-precision integers and rationals.
//!
//! `Int` and `Rat` alias [`num_bigint::BigInt`] and
//! [`num_rational::BigRational`]. A `Rat` is always stored in lowest terms
//! with a positive denominator, which is exactly the canonical form the rest
//! of the crate relies on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// `Int` from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// `Rat` from a machine integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// `Rat` from a numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Exact square root of an integer, when it is a perfect square.
pub fn int_sqrt_exact(v: &Int) -> Option<Int> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    if &(&r * &r) == v {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, when it is a square in the rationals.
pub fn rat_sqrt_exact(v: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(v.numer())?;
    let d = int_sqrt_exact(v.denom())?;
    Some(Rat::new(n, d))
}

/// `base^exp` for any integer exponent, inverting exactly when `exp < 0`.
///
/// Panics if `base == 0` and `exp < 0`.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let positive = {
        let mut acc = Rat::one();
        let mut sq = base.clone();
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    };
    if exp < 0 {
        assert!(!positive.is_zero(), "zero base with negative exponent");
        positive.recip()
    } else {
        positive
    }
}

/// Render a rational as `a` or `a/b`, the same surface form the identity
/// language uses.
pub fn rat_display(v: &Rat) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
