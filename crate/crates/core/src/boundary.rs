//! Boundary rays, cylinder measure, Busemann function and Poisson kernel.
//!
//! A boundary point is only ever handled through a finite truncation
//! `ω_m`. Every operation states the depth it needs and fails when the ray is
//! too short instead of extending it.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GraphParams, ReducedWord, Syllable};
use crate::numerics::{q_half_power, AlgebraicValue};

/// The truncation `ω_m` of a geodesic ray from `o`, i.e. the cylinder `E(ω_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryRay {
    prefix: ReducedWord,
}

impl BoundaryRay {
    pub fn new(prefix: ReducedWord) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InsufficientDepth { needed: 0, got: 0 });
        }
        Ok(BoundaryRay { prefix })
    }

    pub fn parse(params: &GraphParams, s: &str) -> Result<Self> {
        Self::new(params.parse_word(s)?)
    }

    /// `a₀¹a₁¹a₀¹…` of the given depth.
    pub fn alternating(depth: usize) -> Self {
        assert!(depth >= 1);
        let mut prefix = ReducedWord::identity();
        for i in 0..depth {
            prefix.push(Syllable::new((i % 2) as u8, 1));
        }
        BoundaryRay { prefix }
    }

    /// A deterministic pseudorandom ray: each syllable picks a generator
    /// different from the previous one and a uniform exponent.
    pub fn pseudorandom(params: &GraphParams, depth: usize, seed: u64) -> Self {
        assert!(depth >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, r) = (params.k() as u8, params.r() as u8);
        let mut prefix = ReducedWord::identity();
        let mut prev: Option<u8> = None;
        for _ in 0..depth {
            let mut g = rng.gen_range(0..r - u8::from(prev.is_some()));
            if let Some(p) = prev {
                if g >= p {
                    g += 1;
                }
            }
            prefix.push(Syllable::new(g, rng.gen_range(1..k)));
            prev = Some(g);
        }
        BoundaryRay { prefix }
    }

    /// The canonical alternating ray followed by `count` pseudorandom ones.
    pub fn fixtures(params: &GraphParams, depth: usize, seed: u64, count: usize) -> Vec<Self> {
        std::iter::once(Self::alternating(depth))
            .chain(
                (0..count as u64).map(|i| Self::pseudorandom(params, depth, seed.wrapping_add(i))),
            )
            .collect()
    }

    pub fn prefix(&self) -> &ReducedWord {
        &self.prefix
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    /// The same ray cut to a shallower depth.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.depth() {
            return Err(Error::InsufficientDepth {
                needed: depth,
                got: self.depth(),
            });
        }
        Ok(BoundaryRay {
            prefix: self.prefix.prefix(depth),
        })
    }

    fn require_depth(&self, radius: usize) -> Result<()> {
        if self.depth() <= radius {
            return Err(Error::InsufficientDepth {
                needed: radius,
                got: self.depth(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for BoundaryRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.prefix.fmt(f)
    }
}

/// `ν(E(x)) = 1/δ(|x|)`; the whole boundary (`x = o`) has mass 1.
pub fn cylinder_measure(params: &GraphParams, x: &ReducedWord) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(params.delta(x.len())))
}

/// All depth-`m` cylinders, in sphere enumeration order.
pub fn cylinders(params: &GraphParams, depth: usize) -> impl Iterator<Item = BoundaryRay> + '_ {
    assert!(depth >= 1);
    params.sphere(depth).map(|prefix| BoundaryRay { prefix })
}

/// `ζ(x, ω) = m − d(x, ω_m)` for `m > |x|`.
pub fn busemann(params: &GraphParams, x: &ReducedWord, ray: &BoundaryRay) -> Result<i64> {
    ray.require_depth(x.len())?;
    let z = zeta(params, x, &ray.prefix);
    debug_assert!(
        ray.depth() <= x.len() + 1 || z == zeta(params, x, &ray.prefix.prefix(ray.depth() - 1)),
        "Busemann value depends on ray depth"
    );
    Ok(z)
}

fn zeta(params: &GraphParams, x: &ReducedWord, prefix: &ReducedWord) -> i64 {
    prefix.len() as i64 - params.distance(x, prefix) as i64
}

/// `P(x, ω)^s = Q^{s·ζ(x,ω)}` for complex `s`.
pub fn poisson_pow(
    params: &GraphParams,
    x: &ReducedWord,
    ray: &BoundaryRay,
    s: Complex64,
) -> Result<Complex64> {
    params.require_spectral()?;
    let z = busemann(params, x, ray)? as f64;
    Ok((s * z * (params.q() as f64).ln()).exp())
}

/// `P(x, ω)^{s}` exactly, for `s = two_s / 2`.
pub fn poisson_pow_exact(
    params: &GraphParams,
    x: &ReducedWord,
    ray: &BoundaryRay,
    two_s: i64,
) -> Result<AlgebraicValue> {
    let z = busemann(params, x, ray)?;
    Ok(q_half_power(params.q(), two_s * z))
}

/// `{x : |x| ≤ N, ζ(x, ω) = h}`, each vertex once, in ball order.
pub fn horocycle_section<'a>(
    params: &'a GraphParams,
    ray: &'a BoundaryRay,
    h: i64,
    radius: usize,
) -> Result<impl Iterator<Item = ReducedWord> + 'a> {
    ray.require_depth(radius)?;
    Ok(params
        .ball(radius)
        .filter(move |x| zeta(params, x, &ray.prefix) == h))
}

/// Number of vertices of `S(o, n)` on the horocycle `H_h(ω)`.
pub fn b_closed(params: &GraphParams, n: usize, h: i64) -> u128 {
    let a = h.unsigned_abs() as usize;
    if n < a {
        return 0;
    }
    let q = u128::from(params.q());
    let base = (-h.min(0)) as u32;
    if n == a {
        return q.pow(base);
    }
    let extra = n - a;
    let j = extra.div_ceil(2) as u32;
    let coeff = if extra % 2 == 1 {
        params.sigma() as u128
    } else {
        u128::from(params.r() - 2) * u128::from(params.k() - 1)
    };
    coeff * q.pow(base + j - 1)
}

pub fn b_rational(params: &GraphParams, n: usize, h: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(b_closed(params, n, h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn p(k: u32, r: u32) -> GraphParams {
        GraphParams::new(k, r).unwrap()
    }

    #[test]
    fn cylinder_measure_examples() {
        let g = p(3, 4);
        let x = g.parse_word("a2^1").unwrap();
        assert_eq!(
            cylinder_measure(&g, &x),
            BigRational::new(1.into(), 8.into())
        );
        assert!(cylinder_measure(&g, &ReducedWord::identity()).is_one());
        let g2 = p(2, 3);
        let y = g2.parse_word("a0^1.a1^1").unwrap();
        assert_eq!(
            cylinder_measure(&g2, &y),
            BigRational::new(1.into(), 6.into())
        );
        for m in 1..=3 {
            let total = cylinders(&g, m)
                .map(|c| cylinder_measure(&g, c.prefix()))
                .fold(BigRational::zero(), |a, b| a + b);
            assert!(total.is_one());
        }
    }

    #[test]
    fn busemann_examples() {
        let g = p(3, 4);
        let ray = BoundaryRay::alternating(4);
        assert_eq!(busemann(&g, &ReducedWord::identity(), &ray).unwrap(), 0);
        assert_eq!(busemann(&g, &ray.prefix().prefix(1), &ray).unwrap(), 1);
        // Same generator as ω₁, other exponent: one polygon shared.
        assert_eq!(
            busemann(&g, &g.parse_word("a0^2").unwrap(), &ray).unwrap(),
            0
        );
        assert_eq!(
            busemann(&g, &g.parse_word("a2^1").unwrap(), &ray).unwrap(),
            -1
        );
        let short = BoundaryRay::alternating(2);
        assert!(matches!(
            busemann(&g, &g.parse_word("a1^1.a0^1").unwrap(), &short),
            Err(Error::InsufficientDepth { .. })
        ));
    }

    #[test]
    fn busemann_is_depth_stable() {
        for (k, r) in [(2, 3), (3, 3), (4, 2)] {
            let g = p(k, r);
            let ray = BoundaryRay::pseudorandom(&g, 6, 9);
            for x in g.ball(3) {
                let a = busemann(&g, &x, &ray.truncate(4).unwrap()).unwrap();
                let b = busemann(&g, &x, &ray).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn poisson_examples() {
        let g = p(3, 4);
        let ray = BoundaryRay::alternating(3);
        let s = Complex64::new(0.5, 0.7);
        assert!((poisson_pow(&g, &ReducedWord::identity(), &ray, s).unwrap() - 1.0).norm() < 1e-15);
        let w1 = ray.prefix().prefix(1);
        assert!(
            (poisson_pow(&g, &w1, &ray, Complex64::new(1.0, 0.0)).unwrap() - 6.0).norm() < 1e-12
        );
        assert_eq!(
            poisson_pow_exact(&g, &w1, &ray, 2).unwrap(),
            AlgebraicValue::from_integer(6, 6)
        );
        assert!(poisson_pow(&p(2, 2), &w1, &ray, s).is_err());
    }

    #[test]
    fn cocycle_identity_on_radius_two_ball() {
        // P(xy, ω) = P(y, x⁻¹ω)·P(x, ω), i.e. ζ(xy,ω) = ζ(y,x⁻¹ω) + ζ(x,ω).
        // x⁻¹ω is truncated at a depth where its first syllables are settled.
        for (k, r) in [(2, 3), (3, 3), (3, 2), (4, 3)] {
            let g = p(k, r);
            let ray = BoundaryRay::pseudorandom(&g, 12, 1);
            let ball: Vec<_> = g.ball(2).collect();
            for x in &ball {
                let shifted = g.mul(&g.inv(x), ray.prefix());
                let shifted = BoundaryRay::new(shifted.prefix(shifted.len() - x.len())).unwrap();
                for y in &ball {
                    let lhs = busemann(&g, &g.mul(x, y), &ray).unwrap();
                    let rhs = busemann(&g, y, &shifted).unwrap() + busemann(&g, x, &ray).unwrap();
                    assert_eq!(lhs, rhs, "x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn b_closed_matches_enumeration() {
        for k in 2..=4 {
            for r in 2..=4 {
                let g = p(k, r);
                for ray in BoundaryRay::fixtures(&g, 6, 3, 1) {
                    for h in -5i64..=5 {
                        let mut counts = [0u128; 6];
                        for x in horocycle_section(&g, &ray, h, 5).unwrap() {
                            counts[x.len()] += 1;
                        }
                        for (n, c) in counts.iter().enumerate() {
                            assert_eq!(*c, b_closed(&g, n, h), "k={k} r={r} n={n} h={h}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn b_closed_examples_and_partition() {
        let g = p(3, 4);
        assert_eq!(b_closed(&g, 1, 0), 1);
        assert_eq!(b_closed(&g, 2, -2), 36);
        for h in 0..5 {
            assert_eq!(b_closed(&g, h as usize, h), 1);
        }
        for k in 2..=4 {
            for r in 2..=4 {
                let g = p(k, r);
                for n in 0..=6 {
                    let s: u128 = (-(n as i64)..=n as i64).map(|h| b_closed(&g, n, h)).sum();
                    assert_eq!(s, g.delta(n));
                }
            }
        }
    }

    #[test]
    fn horocycle_section_edges() {
        let g = p(3, 4);
        let ray = BoundaryRay::alternating(3);
        let h0: Vec<_> = horocycle_section(&g, &ray, 0, 0).unwrap().collect();
        assert_eq!(h0, vec![ReducedWord::identity()]);
        assert_eq!(horocycle_section(&g, &ray, 3, 2).unwrap().count(), 0);
        assert!(horocycle_section(&g, &ray, 0, 3).is_err());
    }
}
