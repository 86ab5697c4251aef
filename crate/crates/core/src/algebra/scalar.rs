//! Coefficient rings and scalar fields.
//!
//! [`Coefficient`] is the minimal ring interface (a commutative
//! ℚ-algebra) used by power series and moment vectors, so that the same
//! code runs over exact rationals, floats, and symbolic polynomials.
//! [`Scalar`] adds what a field of numbers needs for elimination and
//! geometry: ordering, absolute values and conversion to `f64`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rat(r: &Rat) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_rat(&rat_int(i))
    }

    /// Multiplicative inverse when it exists in the ring.
    fn try_recip(&self) -> Option<Self>;

    /// `self += a * b`
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        let acc = std::mem::replace(self, Self::zero());
        *self = acc + a.clone() * b.clone();
    }

    fn scale_rat(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r)
    }
}

pub trait Scalar: Coefficient + Num + Signed + PartialOrd + FromPrimitive + std::fmt::Display {
    /// Whether arithmetic is exact (zero tests are meaningful).
    const EXACT: bool;

    fn to_f64(&self) -> f64;
}

impl Coefficient for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn scale_rat(&self, r: &Rat) -> Self {
        self * r
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Coefficient for $t {
            fn from_rat(r: &Rat) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn try_recip(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }

            fn mul_acc(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }
        }

        impl Scalar for $t {
            const EXACT: bool = false;

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Strictly positive. (`Signed::is_positive` treats `+0.0` as positive.)
pub fn is_pos<T: Scalar>(x: &T) -> bool {
    *x > T::zero()
}

/// Strictly negative.
pub fn is_neg<T: Scalar>(x: &T) -> bool {
    *x < T::zero()
}

/// `n!` in any coefficient ring.
pub fn factorial<C: Coefficient>(n: u32) -> C {
    (1..=n as i64).fold(C::one(), |acc, k| acc * C::from_int(k))
}

pub fn factorial_int(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial_int(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial_int(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial_int(total), |acc, &p| acc / factorial_int(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinatorics() {
        assert_eq!(factorial_int(5), BigInt::from(120));
        assert_eq!(binomial_int(7, 3), BigInt::from(35));
        assert_eq!(binomial_int(3, 5), BigInt::from(0));
        assert_eq!(multinomial_int(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial_int(&[2, 1, 0]), BigInt::from(3));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(<f64 as Coefficient>::from_rat(&rat(1, 4)), 0.25);
        assert_eq!(Scalar::to_f64(&rat(-3, 2)), -1.5);
        assert!(<f64 as Coefficient>::try_recip(&0.0).is_none());
    }
}
