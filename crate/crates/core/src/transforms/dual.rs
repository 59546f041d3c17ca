//! The dual Abel transform `A*` and its inverse.

use crate::boundary::b_rational;
use crate::group::GraphParams;
use crate::numerics::Scalar;
use crate::registry::Registry;

use super::seq::{EvenSeq, RadialSeq};
use super::{int_pow, qh, rat};

/// `A*g(n) = (1/δ(n)) Σ_h g(h) Q^{h/2} b(n,h)` for `n = 0..=n_max`.
///
/// `A*g` is not finitely supported even when `g` is, hence the explicit
/// range. `A*g(n)` depends only on `g(0..=n)`.
pub fn dual_abel<S: Scalar>(g: &EvenSeq<S>, n_max: usize) -> RadialSeq<S> {
    dual_abel_fn(g.params(), |h| g.at(h), n_max)
}

/// The defining sum of [`dual_abel`] for an arbitrary function on `Z`, e.g.
/// the exponential `h ↦ Q^{iλh}`, whose image is `φ_λ`.
pub fn dual_abel_fn<S: Scalar>(
    params: &GraphParams,
    g: impl Fn(i64) -> S,
    n_max: usize,
) -> RadialSeq<S> {
    let p = *params;
    let q = p.q();
    RadialSeq::from_fn(p, n_max + 1, |n| {
        let ni = n as i64;
        let sum = (-ni..=ni).fold(S::zero(q), |acc, h| {
            acc + g(h) * qh::<S>(q, h) * S::from_rational(&b_rational(&p, n, h), q)
        });
        sum.scale(
            &num_rational::BigRational::new(1.into(), p.delta(n).into()),
            q,
        )
    })
}

/// Closed form of `A*g(n)` for `n ≥ 1`:
/// `2(r−1)/r Q^{−n/2} g(n) + σ(r−1)/r Q^{−(n+1)/2} Σ' g(j) + (r−2)/r Q^{−n/2} Σ'' g(j)`,
/// where `Σ'` runs over `−n < j < n` with `j ≢ n (mod 2)` and `Σ''` over the
/// same range with `j ≡ n (mod 2)`, every signed `j` counted once.
pub fn dual_abel_closed<S: Scalar>(g: &EvenSeq<S>, n_max: usize) -> RadialSeq<S> {
    let p = *g.params();
    let q = p.q();
    let r = i64::from(p.r());
    let c_top: S = rat(q, 2 * (r - 1), r);
    let c_diff: S = rat(q, p.sigma() * (r - 1), r);
    let c_same: S = rat(q, r - 2, r);
    RadialSeq::from_fn(p, n_max + 1, |n| {
        if n == 0 {
            return g.at(0);
        }
        let ni = n as i64;
        let (mut same, mut diff) = (S::zero(q), S::zero(q));
        for j in (1 - ni)..ni {
            if (j - ni).rem_euclid(2) == 0 {
                same = same + g.at(j);
            } else {
                diff = diff + g.at(j);
            }
        }
        c_top.clone() * qh::<S>(q, -ni) * g.at(ni)
            + c_diff.clone() * qh::<S>(q, -ni - 1) * diff
            + c_same.clone() * qh::<S>(q, -ni) * same
    })
}

/// An inverse of the dual Abel transform.
pub trait DualAbelInverse<S: Scalar>: Send + Sync {
    fn invert(&self, f: &RadialSeq<S>) -> EvenSeq<S>;
}

/// Explicit formula: `g(0) = f(0)`,
/// `g(1) = −(σ/2) Q^{−1/2} f(0) + (r(k−1)/2) Q^{−1/2} f(1)` and for `n ≥ 2`
///
/// `g(n) = −(1/2k){Q−1+(r−k)(1−k)^n} Q^{−n/2} f(0)
///        − (r(k−1)/2k) Σ_{0<j<n−1} {Q−1+(r−k)(1−k)^{n−j}} Q^{j−n/2−1} f(j)
///        − ½ r(k−1) σ Q^{n/2−2} f(n−1) + ½ r(k−1) Q^{n/2−1} f(n)`.
pub struct ClosedDualInverse;

/// Forward substitution in the recurrence for `G(n) = Q^{n/2} g(n)`:
/// `G(n+2) = F(n) − σ G(n+1) + (k−1) G(n)` with
/// `F(n) = ½ r(k−1) Q^{n/2} (Q^{(n+2)/2} f(n+2) − Q^{n/2} f(n))`.
pub struct RecurrenceDualInverse;

fn brace<S: Scalar>(p: &GraphParams, m: u32) -> S {
    // Q − 1 + (r−k)(1−k)^m
    let q = p.q();
    let (k, r) = (i64::from(p.k()), i64::from(p.r()));
    S::from_i64(q as i64 - 1, q) + S::from_i64(r - k, q) * int_pow::<S>(q, 1 - k, m)
}

impl<S: Scalar> DualAbelInverse<S> for ClosedDualInverse {
    fn invert(&self, f: &RadialSeq<S>) -> EvenSeq<S> {
        let p = *f.params();
        let q = p.q();
        let k = i64::from(p.k());
        let deg = p.degree() as i64;
        let sigma = p.sigma();
        EvenSeq::from_fn(p, f.len(), |n| {
            let ni = n as i64;
            match n {
                0 => f.at(0),
                1 => {
                    (S::from_ratio(-sigma, 2, q) * f.at(0) + S::from_ratio(deg, 2, q) * f.at(1))
                        * qh::<S>(q, -1)
                }
                _ => {
                    let mut acc = -(rat::<S>(q, 1, 2 * k)
                        * brace::<S>(&p, n as u32)
                        * qh::<S>(q, -ni)
                        * f.at(0));
                    let c_mid: S = rat(q, deg, 2 * k);
                    for j in 1..n - 1 {
                        let jj = j as i64;
                        acc = acc
                            - c_mid.clone()
                                * brace::<S>(&p, (n - j) as u32)
                                * qh::<S>(q, 2 * jj - ni - 2)
                                * f.at(j);
                    }
                    acc - S::from_ratio(deg * sigma, 2, q) * qh::<S>(q, ni - 4) * f.at(n - 1)
                        + S::from_ratio(deg, 2, q) * qh::<S>(q, ni - 2) * f.at(n)
                }
            }
        })
    }
}

impl<S: Scalar> DualAbelInverse<S> for RecurrenceDualInverse {
    fn invert(&self, f: &RadialSeq<S>) -> EvenSeq<S> {
        let p = *f.params();
        let q = p.q();
        let k = i64::from(p.k());
        let deg = p.degree() as i64;
        let sigma = S::from_i64(p.sigma(), q);
        let len = f.len();
        let mut big_g: Vec<S> = Vec::with_capacity(len);
        if len > 0 {
            big_g.push(f.at(0));
        }
        if len > 1 {
            big_g.push(
                S::from_ratio(deg, 2, q) * f.at(1) - S::from_ratio(p.sigma(), 2, q) * f.at(0),
            );
        }
        for n in 0..len.saturating_sub(2) {
            let ni = n as i64;
            let forcing = S::from_ratio(deg, 2, q)
                * (qh::<S>(q, 2 * ni + 2) * f.at(n + 2) - qh::<S>(q, 2 * ni) * f.at(n));
            let next = forcing - sigma.clone() * big_g[n + 1].clone()
                + S::from_i64(k - 1, q) * big_g[n].clone();
            big_g.push(next);
        }
        EvenSeq::new(
            p,
            big_g
                .into_iter()
                .enumerate()
                .map(|(n, v)| qh::<S>(q, -(n as i64)) * v)
                .collect(),
        )
    }
}

/// Registered as `"closed"` (primary) and `"recurrence"`.
pub fn dual_abel_inverses<S: Scalar>() -> Registry<dyn DualAbelInverse<S>> {
    Registry::<dyn DualAbelInverse<S>>::new()
        .with("closed", Box::new(ClosedDualInverse))
        .with("recurrence", Box::new(RecurrenceDualInverse))
}

pub fn dual_abel_inv<S: Scalar>(f: &RadialSeq<S>) -> EvenSeq<S> {
    ClosedDualInverse.invert(f)
}

pub fn dual_abel_inv_recurrence<S: Scalar>(f: &RadialSeq<S>) -> EvenSeq<S> {
    RecurrenceDualInverse.invert(f)
}

/// `Σ_n F(n)·f(n)·δ(n)`, the radial pairing on vertices.
pub fn radial_pairing<S: Scalar>(a: &RadialSeq<S>, b: &RadialSeq<S>) -> S {
    let q = a.q();
    let p = *a.params();
    (0..a.len().min(b.len())).fold(S::zero(q), |acc, n| {
        acc + a.at(n) * b.at(n) * S::from_rational(&p.delta_rational(n), q)
    })
}

/// `Σ_{h∈Z} a(h)·b(h)` for even sequences.
pub fn even_pairing<S: Scalar>(a: &EvenSeq<S>, b: &EvenSeq<S>) -> S {
    let q = a.q();
    (0..a.len().min(b.len())).fold(S::zero(q), |acc, h| {
        let t = a.at(h as i64) * b.at(h as i64);
        acc + if h == 0 { t } else { S::from_i64(2, q) * t }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_even, random_radial};
    use crate::numerics::AlgebraicValue;
    use crate::transforms::abel;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type A = AlgebraicValue;

    fn p(k: u32, r: u32) -> GraphParams {
        GraphParams::new(k, r).unwrap()
    }

    #[test]
    fn dual_examples() {
        let g = p(3, 4);
        let e = EvenSeq::<A>::new(g, vec![A::from_integer(3, 6), A::from_integer(5, 6)]);
        let d = dual_abel(&e, 2);
        assert_eq!(d.at(0), A::from_integer(3, 6));
        // (2√6·g(1) + g(0))/8
        let expected = (A::sqrt_q(6) * A::from_integer(10, 6) + A::from_integer(3, 6))
            .scale(&num_rational::BigRational::new(1.into(), 8.into()));
        assert_eq!(d.at(1), expected);
    }

    #[test]
    fn closed_form_matches_definition_and_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for k in 2..=4 {
            for r in 2..=4 {
                let g = p(k, r);
                for _ in 0..3 {
                    let e = random_even(&g, 6, &mut rng);
                    assert_eq!(dual_abel(&e, 8), dual_abel_closed(&e, 8), "k={k} r={r}");
                    let f = random_radial(&g, 6, &mut rng);
                    let lhs = radial_pairing(&dual_abel(&e, 6), &f);
                    let rhs = even_pairing(&e, &abel(&f));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inverse_examples_and_round_trips() {
        let g = p(3, 4);
        let d = RadialSeq::<A>::delta_at(g, 0).resized(3);
        let inv = dual_abel_inv(&d);
        assert_eq!(inv.at(0), A::one(6));
        assert_eq!(inv.at(1), A::from_ratios((0, 1), (-1, 12), 6));
        assert_eq!(inv.at(2), dual_abel_inv_recurrence(&d).at(2));

        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for k in 2..=4 {
            for r in 2..=4 {
                let g = p(k, r);
                let f = random_radial(&g, 8, &mut rng);
                let e = dual_abel_inv(&f);
                assert_eq!(e, dual_abel_inv_recurrence(&f), "k={k} r={r}");
                assert_eq!(dual_abel(&e, 8), f);
                let e2 = random_even(&g, 8, &mut rng);
                for (name, inv) in dual_abel_inverses::<A>().iter() {
                    assert_eq!(inv.invert(&dual_abel(&e2, 8)), e2, "{name}");
                }
            }
        }
    }
}
