//! Seeded random inputs shared by the unit tests, the verification suites
//! and the acceptance run.

use num_rational::BigRational;
use rand::Rng;

use crate::group::{GraphParams, ReducedWord};
use crate::numerics::AlgebraicValue;
use crate::transforms::{EvenSeq, RadialSeq};
use crate::vertex::VertexFun;

/// `a + b√Q` with small random rational coefficients, `a` never both zero
/// with `b` when `nonzero` is set.
pub fn random_algebraic<R: Rng>(q: u64, nonzero: bool, rng: &mut R) -> AlgebraicValue {
    loop {
        let a = BigRational::new(
            rng.gen_range(-6i64..=6).into(),
            rng.gen_range(1i64..=4).into(),
        );
        let b = if rng.gen_bool(0.5) {
            BigRational::new(
                rng.gen_range(-3i64..=3).into(),
                rng.gen_range(1i64..=3).into(),
            )
        } else {
            BigRational::from_integer(0.into())
        };
        let v = AlgebraicValue::new(a, b, q);
        if !nonzero || !v.is_zero() {
            return v;
        }
    }
}

/// Random radial function with `f(radius) ≠ 0` and `radius + 1` stored values.
pub fn random_radial<R: Rng>(
    params: &GraphParams,
    radius: usize,
    rng: &mut R,
) -> RadialSeq<AlgebraicValue> {
    let q = params.q();
    RadialSeq::from_fn(*params, radius + 1, |n| {
        random_algebraic(q, n == radius, rng)
    })
}

/// Random even sequence with `g(radius) ≠ 0` and `radius + 1` stored values.
pub fn random_even<R: Rng>(
    params: &GraphParams,
    radius: usize,
    rng: &mut R,
) -> EvenSeq<AlgebraicValue> {
    let q = params.q();
    EvenSeq::from_fn(*params, radius + 1, |n| {
        random_algebraic(q, n == radius, rng)
    })
}

/// Random integer-valued radial function with values in `[-5, 5]`.
pub fn random_radial_f64<R: Rng>(
    params: &GraphParams,
    radius: usize,
    rng: &mut R,
) -> RadialSeq<f64> {
    RadialSeq::from_fn(*params, radius + 1, |n| {
        let v = rng.gen_range(-5i32..=5) as f64;
        if n == radius && v == 0.0 {
            1.0
        } else {
            v
        }
    })
}

/// Random vertex function on `B(o, radius)`, roughly `density` of the
/// vertices carrying a nonzero rational value.
pub fn random_vertex_fun<R: Rng>(
    params: &GraphParams,
    radius: usize,
    density: f64,
    rng: &mut R,
) -> VertexFun<AlgebraicValue> {
    let q = params.q();
    let mut f = VertexFun::new(*params);
    for x in params.ball(radius) {
        if rng.gen_bool(density) {
            f.insert(x, random_algebraic(q, true, rng));
        }
    }
    if f.is_empty() {
        f.insert(ReducedWord::identity(), AlgebraicValue::one(q));
    }
    f
}
