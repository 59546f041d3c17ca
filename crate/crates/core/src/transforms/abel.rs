//! Horocyclic Radon transform, the Abel transform and its two inverse formulas.

use crate::boundary::{b_rational, busemann, BoundaryRay};
use crate::error::Result;
use crate::group::GraphParams;
use crate::numerics::Scalar;
use crate::registry::Registry;

use super::seq::{EvenSeq, RadialSeq};
use super::{int_pow, qh, rat};

/// Vertex counts `|H_h(ω) ∩ S(o, n)|` for `n ≤ N`, `|h| ≤ N`, obtained by
/// walking the ball `B(o, N)` and evaluating the Busemann function at every
/// vertex. This is the brute-force side of the counting lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorocycleCounts {
    radius: usize,
    counts: Vec<Vec<u128>>,
}

impl HorocycleCounts {
    pub fn enumerate(params: &GraphParams, ray: &BoundaryRay, radius: usize) -> Result<Self> {
        let width = 2 * radius + 1;
        let mut counts = vec![vec![0u128; width]; radius + 1];
        for x in params.ball(radius) {
            let h = busemann(params, &x, ray)?;
            counts[x.len()][(h + radius as i64) as usize] += 1;
        }
        Ok(HorocycleCounts { radius, counts })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn get(&self, n: usize, h: i64) -> u128 {
        if n > self.radius || h.unsigned_abs() as usize > self.radius {
            return 0;
        }
        self.counts[n][(h + self.radius as i64) as usize]
    }

    /// `Rf(ω, h) = Σ_n |H_h ∩ S(o,n)|·f(n)` for `f` supported in the ball.
    pub fn radon<S: Scalar>(&self, f: &RadialSeq<S>, h: i64) -> S {
        assert!(
            f.len() <= self.radius + 1,
            "radial support exceeds enumerated ball"
        );
        let q = f.q();
        (0..f.len()).fold(S::zero(q), |acc, n| {
            let c = self.get(n, h);
            if c == 0 {
                acc
            } else {
                acc + f.at(n) * S::from_i64(c as i64, q)
            }
        })
    }
}

/// Radon transform by explicit enumeration of `H_h(ω) ∩ B(o, N)`.
pub fn radon<S: Scalar>(f: &RadialSeq<S>, ray: &BoundaryRay, h: i64) -> Result<S> {
    let radius = f.len().saturating_sub(1);
    Ok(HorocycleCounts::enumerate(f.params(), ray, radius)?.radon(f, h))
}

/// Radon transform through the counting lemma: `Σ_n b(n,h) f(n)`.
pub fn radon_weighted<S: Scalar>(f: &RadialSeq<S>, h: i64) -> S {
    let q = f.q();
    (0..f.len()).fold(S::zero(q), |acc, n| {
        acc + f.at(n) * S::from_rational(&b_rational(f.params(), n, h), q)
    })
}

/// `Af(h) = Q^{h/2}·Rf(ω, h)` for `h ∈ [−N, N]` (index `h + N`), from the
/// enumeration oracle. Used to check evenness and ray independence.
pub fn abel_via_radon<S: Scalar>(f: &RadialSeq<S>, ray: &BoundaryRay) -> Result<Vec<S>> {
    let radius = f.len().saturating_sub(1);
    let counts = HorocycleCounts::enumerate(f.params(), ray, radius)?;
    let q = f.q();
    let r = radius as i64;
    Ok((-r..=r)
        .map(|h| qh::<S>(q, h) * counts.radon(f, h))
        .collect())
}

/// The Abel transform of a radial function, in closed form:
/// `Af(h) = Q^{|h|/2} f(|h|) + σ Σ_{j≥1} Q^{|h|/2+j−1} f(|h|+2j−1)
///        + (r−2)/(r−1) Σ_{j≥1} Q^{|h|/2+j} f(|h|+2j)`.
pub fn abel<S: Scalar>(f: &RadialSeq<S>) -> EvenSeq<S> {
    let p = f.params();
    let q = p.q();
    let sigma = S::from_i64(p.sigma(), q);
    let ratio: S = rat(q, i64::from(p.r()) - 2, i64::from(p.r()) - 1);
    let len = f.len();
    EvenSeq::from_fn(*p, len, |h| {
        let mut acc = qh::<S>(q, h as i64) * f.at(h);
        let mut j = 1;
        while h + 2 * j - 1 < len {
            let odd = h + 2 * j - 1;
            acc = acc + sigma.clone() * qh::<S>(q, h as i64 + 2 * (j as i64 - 1)) * f.at(odd);
            if odd + 1 < len {
                acc = acc + ratio.clone() * qh::<S>(q, h as i64 + 2 * j as i64) * f.at(odd + 1);
            }
            j += 1;
        }
        acc
    })
}

/// An inverse of the Abel transform on finitely supported even sequences.
pub trait AbelInverse<S: Scalar>: Send + Sync {
    fn invert(&self, g: &EvenSeq<S>) -> RadialSeq<S>;
}

/// `f(n) = (1/k) Q^{−(n−1)/2} Σ_{m≥1} [1 + (−1)^{m−1}(k−1)^m] Q^{−m/2}
///         · [g(n+m−1) − g(n+m+1)]`.
pub struct TelescopedInverse;

/// The rearranged form
/// `f(n) = Q^{−n/2}{g(n) − σ Q^{−1/2} g(n+1) − (Q−1)/k Σ_{m≥2} Q^{−m/2} g(n+m)
///          − (r−k)/k Σ_{m≥2} (1−k)^m Q^{−m/2} g(n+m)}`.
///
/// Both sums start at `m = 2` and the last prefactor is `(r−k)/k`; these are
/// the values that make it agree with [`TelescopedInverse`].
pub struct RearrangedInverse;

impl<S: Scalar> AbelInverse<S> for TelescopedInverse {
    fn invert(&self, g: &EvenSeq<S>) -> RadialSeq<S> {
        let p = g.params();
        let q = p.q();
        let k = i64::from(p.k());
        let len = g.len();
        RadialSeq::from_fn(*p, len, |n| {
            let mut acc = S::zero(q);
            // g(n+m−1) vanishes once n+m−1 ≥ len.
            for m in 1..=(len - n) {
                // 1 + (−1)^{m−1}(k−1)^m = 1 − (1−k)^m
                let c = S::one(q) - int_pow::<S>(q, 1 - k, m as u32);
                if c.is_zero() {
                    continue;
                }
                let diff = g.at((n + m - 1) as i64) - g.at((n + m + 1) as i64);
                acc = acc + c * qh::<S>(q, -(m as i64)) * diff;
            }
            rat::<S>(q, 1, k) * qh::<S>(q, 1 - n as i64) * acc
        })
    }
}

impl<S: Scalar> AbelInverse<S> for RearrangedInverse {
    fn invert(&self, g: &EvenSeq<S>) -> RadialSeq<S> {
        let p = g.params();
        let q = p.q();
        let qi = q as i64;
        let (k, r) = (i64::from(p.k()), i64::from(p.r()));
        let len = g.len();
        RadialSeq::from_fn(*p, len, |n| {
            let mut acc =
                g.at(n as i64) - S::from_i64(p.sigma(), q) * qh::<S>(q, -1) * g.at(n as i64 + 1);
            for m in 2..(len.saturating_sub(n)).max(2) {
                let gm = g.at((n + m) as i64) * qh::<S>(q, -(m as i64));
                let alt = int_pow::<S>(q, 1 - k, m as u32);
                let c = S::from_ratio(qi - 1, k, q) + rat::<S>(q, r - k, k) * alt;
                acc = acc - c * gm;
            }
            qh::<S>(q, -(n as i64)) * acc
        })
    }
}

/// The two inverse formulas, registered as `"inv"` (telescoped, primary) and
/// `"inv1"` (rearranged).
pub fn abel_inverses<S: Scalar>() -> Registry<dyn AbelInverse<S>> {
    Registry::<dyn AbelInverse<S>>::new()
        .with("inv", Box::new(TelescopedInverse))
        .with("inv1", Box::new(RearrangedInverse))
}

/// Inverse Abel transform via the telescoped formula.
pub fn abel_inv<S: Scalar>(g: &EvenSeq<S>) -> RadialSeq<S> {
    TelescopedInverse.invert(g)
}

/// Inverse Abel transform via the rearranged formula.
pub fn abel_inv_rearranged<S: Scalar>(g: &EvenSeq<S>) -> RadialSeq<S> {
    RearrangedInverse.invert(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_even, random_radial};
    use crate::numerics::AlgebraicValue;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type A = AlgebraicValue;

    fn p(k: u32, r: u32) -> GraphParams {
        GraphParams::new(k, r).unwrap()
    }

    #[test]
    fn radon_examples() {
        let g = p(3, 4);
        let ray = BoundaryRay::alternating(3);
        let d0 = RadialSeq::<A>::delta_at(g, 0);
        assert_eq!(radon(&d0, &ray, 0).unwrap(), A::one(6));
        assert_eq!(radon(&d0, &ray, 1).unwrap(), A::zero(6));
        let s1 = RadialSeq::<A>::delta_at(g, 1);
        assert_eq!(radon(&s1, &ray, 0).unwrap(), A::one(6));
        assert_eq!(radon_weighted(&s1, 0), A::one(6));
    }

    #[test]
    fn abel_examples() {
        let g = p(3, 4);
        let d0 = RadialSeq::<A>::delta_at(g, 0);
        assert!(abel(&d0).same_function(&EvenSeq::delta_at(g, 0)));
        let s1 = RadialSeq::<A>::delta_at(g, 1);
        let a = abel(&s1);
        assert_eq!(a.values(), &[A::one(6), A::sqrt_q(6)]);
    }

    #[test]
    fn abel_matches_radon_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (k, r) in [(2, 3), (3, 2), (3, 4), (4, 4)] {
            let g = p(k, r);
            let rays = BoundaryRay::fixtures(&g, 6, 2, 1);
            for _ in 0..3 {
                let f = random_radial(&g, 5, &mut rng);
                let a = abel(&f);
                for ray in &rays {
                    let oracle = abel_via_radon(&f, ray).unwrap();
                    for h in -5i64..=5 {
                        assert_eq!(oracle[(h + 5) as usize], a.at(h), "k={k} r={r} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let g = p(3, 4);
        let d = EvenSeq::<A>::delta_at(g, 0);
        assert!(abel_inv(&d).same_function(&RadialSeq::delta_at(g, 0)));
        let d1 = EvenSeq::<A>::delta_at(g, 1);
        let f = abel_inv(&d1);
        let inv_sqrt = A::from_ratios((0, 1), (1, 6), 6);
        assert_eq!(f.at(0), -inv_sqrt.clone());
        assert_eq!(f.at(1), inv_sqrt);
        assert!(abel(&f).same_function(&d1));
    }

    #[test]
    fn both_inverses_round_trip_on_all_regimes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for k in 2..=4 {
            for r in 2..=4 {
                let g = p(k, r);
                for _ in 0..4 {
                    let f = random_radial(&g, 8, &mut rng);
                    let a = abel(&f);
                    for (name, inv) in abel_inverses::<A>().iter() {
                        assert!(inv.invert(&a).same_function(&f), "{name} k={k} r={r}");
                    }
                    let e = random_even(&g, 8, &mut rng);
                    let f1 = abel_inv(&e);
                    assert_eq!(f1, abel_inv_rearranged(&e));
                    assert!(abel(&f1).same_function(&e));
                }
            }
        }
    }
}
