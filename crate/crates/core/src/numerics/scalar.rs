use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::algebraic::{q_half_power, AlgebraicValue};

/// Value field for the transforms: exact `Q(√Q)`, real or complex floats.
///
/// Every constructor takes the ring parameter `q`; float impls ignore it.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero(q: u64) -> Self;
    fn from_rational(r: &BigRational, q: u64) -> Self;
    fn q_half_power(q: u64, m: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;

    /// Exact rendering, when the value is exact.
    fn exact_string(&self) -> Option<String> {
        None
    }

    fn one(q: u64) -> Self {
        Self::q_half_power(q, 0)
    }

    fn from_i64(n: i64, q: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), q)
    }

    fn from_ratio(num: i64, den: i64, q: u64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()), q)
    }

    fn scale(&self, r: &BigRational, q: u64) -> Self {
        self.clone() * Self::from_rational(r, q)
    }
}

impl Scalar for AlgebraicValue {
    const EXACT: bool = true;

    fn zero(q: u64) -> Self {
        AlgebraicValue::zero(q)
    }
    fn from_rational(r: &BigRational, q: u64) -> Self {
        AlgebraicValue::rational(r.clone(), q)
    }
    fn q_half_power(q: u64, m: i64) -> Self {
        q_half_power(q, m)
    }
    fn is_zero(&self) -> bool {
        AlgebraicValue::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn exact_string(&self) -> Option<String> {
        Some(self.to_string())
    }
    fn scale(&self, r: &BigRational, _q: u64) -> Self {
        AlgebraicValue::scale(self, r)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero(_q: u64) -> Self {
        0.0
    }
    fn from_rational(r: &BigRational, _q: u64) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn q_half_power(q: u64, m: i64) -> Self {
        (q as f64).powf(m as f64 / 2.0)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero(_q: u64) -> Self {
        <Complex64 as Zero>::zero()
    }
    fn from_rational(r: &BigRational, _q: u64) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn q_half_power(q: u64, m: i64) -> Self {
        Complex64::new((q as f64).powf(m as f64 / 2.0), 0.0)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Sum of an iterator of scalars, starting from zero in ring `q`.
pub fn sum<S: Scalar>(q: u64, it: impl IntoIterator<Item = S>) -> S {
    it.into_iter().fold(S::zero(q), |acc, x| acc + x)
}
