//! Radon and Abel transforms, their inverses, the dual Abel transform and
//! Schwartz-type norm diagnostics.

mod abel;
mod dual;
mod seq;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::group::GraphParams;
use crate::numerics::Scalar;

pub use abel::{
    abel, abel_inv, abel_inv_rearranged, abel_inverses, abel_via_radon, radon, radon_weighted,
    AbelInverse, HorocycleCounts, RearrangedInverse, TelescopedInverse,
};
pub use dual::{
    dual_abel, dual_abel_closed, dual_abel_fn, dual_abel_inv, dual_abel_inv_recurrence,
    dual_abel_inverses, even_pairing, radial_pairing, ClosedDualInverse, DualAbelInverse,
    RecurrenceDualInverse,
};
pub use seq::{EvenSeq, RadialSeq};

pub(crate) fn qh<S: Scalar>(q: u64, m: i64) -> S {
    S::q_half_power(q, m)
}

pub(crate) fn rat<S: Scalar>(q: u64, num: i64, den: i64) -> S {
    S::from_ratio(num, den, q)
}

pub(crate) fn int_pow<S: Scalar>(q: u64, base: i64, e: u32) -> S {
    S::from_rational(&BigRational::from_integer(BigInt::from(base).pow(e)), q)
}

/// `max_n (1+n)^m Q^{n/p} |f(n)|` over the stored range.
pub fn schwartz_norm<S: Scalar>(f: &RadialSeq<S>, p: f64, m: u32) -> f64 {
    let q = f.q() as f64;
    f.values()
        .iter()
        .enumerate()
        .map(|(n, v)| {
            (1.0 + n as f64).powi(m as i32) * q.powf(n as f64 / p) * v.to_complex().norm()
        })
        .fold(0.0, f64::max)
}

/// `max_n (1+|n|)^m |g(n)|` over the stored range.
pub fn even_norm<S: Scalar>(g: &EvenSeq<S>, m: u32) -> f64 {
    g.values()
        .iter()
        .enumerate()
        .map(|(n, v)| (1.0 + n as f64).powi(m as i32) * v.to_complex().norm())
        .fold(0.0, f64::max)
}

/// Measured ratio `‖Q^{(1/p−1/2)|·|} Af‖_{(m)} / ‖f‖_{(p, m+2)}` for the
/// test profile `f(n) = Q^{−n/p}(1+n)^{−(m+3)}` truncated at `n_max`.
///
/// A constant that stays put as `n_max` grows is the finite-truncation
/// evidence that `A` is bounded between the weighted sup-norm spaces.
pub fn schwartz_constant(params: &GraphParams, p: f64, m: u32, n_max: usize) -> f64 {
    let q = params.q() as f64;
    let f = RadialSeq::<f64>::from_fn(*params, n_max + 1, |n| {
        q.powf(-(n as f64) / p) * (1.0 + n as f64).powi(-(m as i32 + 3))
    });
    let af = abel(&f);
    let weighted = EvenSeq::from_fn(*params, af.len(), |h| {
        q.powf((1.0 / p - 0.5) * h as f64) * af.at(h as i64)
    });
    even_norm(&weighted, m) / schwartz_norm(&f, p, m + 2)
}
