//! Exact arithmetic in the quadratic ring `Q(√Q)`.
//!
//! Every combinatorial transform on a symmetric graph produces values of the
//! form `a + b·√Q` with rational `a`, `b`, where `Q = (r−1)(k−1)`. Keeping
//! these exact lets round-trip identities be asserted with `==`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b·√q` with arbitrary-precision rational coefficients.
///
/// Invariant: when `q` is a perfect square, `b == 0` and the root has been
/// folded into `a`, so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicValue {
    a: BigRational,
    b: BigRational,
    q: u64,
}

/// Arithmetic operation selector for [`alg_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn perfect_sqrt(q: u64) -> Option<u64> {
    let s = q.sqrt();
    (s * s == q).then_some(s)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl AlgebraicValue {
    /// Builds `a + b·√q`, folding the root when `q` is a perfect square.
    ///
    /// Panics if `q == 0`.
    pub fn new(a: BigRational, b: BigRational, q: u64) -> Self {
        assert!(q >= 1, "ring parameter must be positive");
        let mut v = AlgebraicValue { a, b, q };
        v.canonicalize();
        v
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64), q: u64) -> Self {
        Self::new(ratio(a.0, a.1), ratio(b.0, b.1), q)
    }

    pub fn rational(a: BigRational, q: u64) -> Self {
        Self::new(a, BigRational::zero(), q)
    }

    pub fn from_integer(n: i64, q: u64) -> Self {
        Self::rational(BigRational::from_integer(n.into()), q)
    }

    pub fn zero(q: u64) -> Self {
        Self::from_integer(0, q)
    }

    pub fn one(q: u64) -> Self {
        Self::from_integer(1, q)
    }

    /// `√q` itself.
    pub fn sqrt_q(q: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), q)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the value has no `√q` part.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn canonicalize(&mut self) {
        if let Some(s) = perfect_sqrt(self.q) {
            if !self.b.is_zero() {
                let folded = std::mem::replace(&mut self.b, BigRational::zero());
                self.a += folded * BigRational::from_integer(s.into());
            }
        }
    }

    /// Returns an equivalent canonical value. Canonicalization happens at
    /// construction, so this is a clone; kept for callers that build values
    /// from raw parts.
    pub fn canonical(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), self.q)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::MismatchedRing {
                left: self.q,
                right: other.q,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, self.q))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, self.q))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let q = BigRational::from_integer(self.q.into());
        let a = &self.a * &other.a + &self.b * &other.b * q;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, self.q))
    }

    /// The Galois conjugate `a − b√q`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.q)
    }

    /// `a² − q·b²`, the field norm.
    pub fn norm(&self) -> BigRational {
        let q = BigRational::from_integer(self.q.into());
        &self.a * &self.a - &self.b * &self.b * q
    }

    pub fn try_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // b ≠ 0 implies q is not a square, so the norm is nonzero.
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -(&self.b / &n), self.q))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        self.try_mul(&other.try_recip()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.q)
    }

    /// Floating-point value with a few ulps of relative error.
    ///
    /// When `a` and `b√q` have opposite signs the sum is rewritten as
    /// `(a² − q b²)/(a − b√q)` so no cancellation happens in floating point.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let root = (self.q as f64).sqrt();
        if self.a.is_zero() || self.a.is_positive() == self.b.is_positive() {
            a + b * root
        } else {
            let n = self.norm().to_f64().unwrap_or(f64::NAN);
            n / (a - b * root)
        }
    }
}

/// Exact ring/field arithmetic on two values sharing the same `q`.
pub fn alg_arith(x: &AlgebraicValue, y: &AlgebraicValue, op: ArithOp) -> Result<AlgebraicValue> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

/// `Q^{m/2}` exactly.
pub fn q_half_power(q: u64, m: i64) -> AlgebraicValue {
    let base = BigRational::from_integer(q.into());
    let half = m.div_euclid(2);
    let p = pow_rational(&base, half);
    if m.rem_euclid(2) == 0 {
        AlgebraicValue::rational(p, q)
    } else {
        AlgebraicValue::new(BigRational::zero(), p, q)
    }
}

pub(crate) fn pow_rational(base: &BigRational, e: i64) -> BigRational {
    let mag = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// Evaluation in floating point (free-function form).
pub fn alg_to_float(x: &AlgebraicValue) -> f64 {
    x.to_f64()
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for AlgebraicValue {
    /// Renders as `a + b*sqrt(Q)`, e.g. `-1/2 + 1/3*sqrt(6)` or `1 - 2*sqrt(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}*sqrt({})",
            fmt_rational(&self.a),
            sign,
            fmt_rational(&self.b.abs()),
            self.q
        )
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `a`, `a/b`, `c/d*sqrt(Q)` or `a/b + c/d*sqrt(Q)` (also with `-`).
///
/// When the literal carries no `sqrt(Q)` factor the value is placed in the
/// ring `default_q`. A literal naming a different `Q` than `default_q` is an
/// error unless `default_q` is `None`.
pub fn parse_algebraic(s: &str, default_q: Option<u64>) -> Result<AlgebraicValue> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(pos) = compact.find("sqrt(") else {
        let q = default_q.ok_or_else(|| Error::Parse(format!("no ring given for `{s}`")))?;
        return Ok(AlgebraicValue::rational(parse_rational(&compact)?, q));
    };
    let close = compact[pos..]
        .find(')')
        .map(|i| i + pos)
        .ok_or_else(|| Error::Parse(format!("unclosed sqrt in `{s}`")))?;
    if close + 1 != compact.len() {
        return Err(Error::Parse(format!("trailing input after sqrt in `{s}`")));
    }
    let q: u64 = compact[pos + 5..close]
        .parse()
        .map_err(|_| Error::Parse(format!("bad ring parameter in `{s}`")))?;
    if q == 0 {
        return Err(Error::Parse("ring parameter must be positive".into()));
    }
    if let Some(d) = default_q {
        if d != q {
            return Err(Error::MismatchedRing { left: d, right: q });
        }
    }
    // Head is everything before `sqrt(`: "<a><sign><coef>*" or "<coef>*" or "".
    let head = &compact[..pos];
    let head = head.strip_suffix('*').unwrap_or(head);
    // Split at the last top-level sign that is not a leading sign.
    let is_sign = |c: u8| c == b'+' || c == b'-';
    let bytes = head.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| is_sign(bytes[i]))
        .map(|mut i| {
            while i > 1 && is_sign(bytes[i - 1]) {
                i -= 1;
            }
            i
        });
    let (a_str, b_str) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None => ("", head),
    };
    let a = if a_str.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(a_str)?
    };
    // b_str looks like "", "+", "-", "1/3", "+1/3", "-1/3" or "+-1/3".
    let body = b_str.trim_start_matches(['+', '-']);
    let minus_signs = b_str[..b_str.len() - body.len()]
        .chars()
        .filter(|&c| c == '-')
        .count();
    let magnitude = if body.is_empty() {
        BigRational::one()
    } else {
        parse_rational(body)?
    };
    let b = if minus_signs % 2 == 1 {
        -magnitude
    } else {
        magnitude
    };
    Ok(AlgebraicValue::new(a, b, q))
}

impl FromStr for AlgebraicValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_algebraic(s, None)
    }
}

// Operator impls panic on mismatched rings; use the `try_*` methods when the
// operands come from different contexts.

impl Add for AlgebraicValue {
    type Output = AlgebraicValue;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("ring mismatch in add")
    }
}

impl<'a> Add<&'a AlgebraicValue> for &'a AlgebraicValue {
    type Output = AlgebraicValue;
    fn add(self, rhs: &AlgebraicValue) -> AlgebraicValue {
        self.try_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for AlgebraicValue {
    type Output = AlgebraicValue;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("ring mismatch in sub")
    }
}

impl<'a> Sub<&'a AlgebraicValue> for &'a AlgebraicValue {
    type Output = AlgebraicValue;
    fn sub(self, rhs: &AlgebraicValue) -> AlgebraicValue {
        self.try_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for AlgebraicValue {
    type Output = AlgebraicValue;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("ring mismatch in mul")
    }
}

impl<'a> Mul<&'a AlgebraicValue> for &'a AlgebraicValue {
    type Output = AlgebraicValue;
    fn mul(self, rhs: &AlgebraicValue) -> AlgebraicValue {
        self.try_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for AlgebraicValue {
    type Output = AlgebraicValue;
    fn neg(self) -> Self {
        AlgebraicValue {
            a: -self.a,
            b: -self.b,
            q: self.q,
        }
    }
}
