//! Finitely supported functions on the vertex set, convolution and spherical
//! means.

use std::collections::btree_map::{self, BTreeMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::group::{GraphParams, ReducedWord};
use crate::numerics::{AlgebraicValue, Scalar};
use crate::transforms::RadialSeq;

/// A finitely supported function `V → S`. Zero values are not stored, so
/// two functions are equal exactly when their maps are.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFun<S> {
    params: GraphParams,
    values: BTreeMap<ReducedWord, S>,
}

impl<S: Scalar> VertexFun<S> {
    pub fn new(params: GraphParams) -> Self {
        VertexFun {
            params,
            values: BTreeMap::new(),
        }
    }

    pub fn delta(params: GraphParams, x: ReducedWord) -> Self {
        let mut f = Self::new(params);
        f.insert(x, S::one(params.q()));
        f
    }

    /// The radial function `x ↦ f(|x|)` spelled out on `B(o, N)`.
    pub fn from_radial(f: &RadialSeq<S>) -> Self {
        let params = *f.params();
        let mut out = Self::new(params);
        for x in params.ball(f.len().saturating_sub(1)) {
            let v = f.at(x.len());
            out.insert(x, v);
        }
        out
    }

    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    pub fn q(&self) -> u64 {
        self.params.q()
    }

    /// Sets `f(x) = v`, removing `x` from the support when `v = 0`.
    pub fn insert(&mut self, x: ReducedWord, v: S) {
        if v.is_zero() {
            self.values.remove(&x);
        } else {
            self.values.insert(x, v);
        }
    }

    /// `f(x) += v`.
    pub fn add_at(&mut self, x: ReducedWord, v: S) {
        match self.values.entry(x) {
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            btree_map::Entry::Vacant(e) => {
                if !v.is_zero() {
                    e.insert(v);
                }
            }
        }
    }

    pub fn get(&self, x: &ReducedWord) -> S {
        self.values
            .get(x)
            .cloned()
            .unwrap_or_else(|| S::zero(self.q()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ReducedWord, &S)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest `|x|` in the support (0 for the zero function).
    pub fn support_radius(&self) -> usize {
        self.values.keys().map(ReducedWord::len).max().unwrap_or(0)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VertexFun<T> {
        let mut out = VertexFun::new(self.params);
        for (x, v) in &self.values {
            out.insert(x.clone(), f(v));
        }
        out
    }

    /// `(Σ |f(x)|^p)^{1/p}`; `p = ∞` gives the sup norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let abs = self.values.values().map(|v| v.to_complex().norm());
        if p.is_infinite() {
            abs.fold(0.0, f64::max)
        } else {
            abs.map(|a| a.powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }

    /// `Σ_x |f(x)|²` in the value field.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values
            .values()
            .map(|v| v.to_complex().norm_sqr())
            .sum()
    }

    /// `f ∗ g(x) = Σ_y f(y) g(y⁻¹x)`.
    pub fn convolve(&self, g: &VertexFun<S>) -> VertexFun<S> {
        let mut out = VertexFun::new(self.params);
        for (y, fy) in &self.values {
            for (z, gz) in &g.values {
                out.add_at(self.params.mul(y, z), fy.clone() * gz.clone());
            }
        }
        out
    }

    /// `f ∗ χ(x) = Σ_n χ(n) Σ_{d(x,y)=n} f(y)` for radial `χ`.
    pub fn convolve_radial(&self, chi: &RadialSeq<S>) -> VertexFun<S> {
        let mut out = VertexFun::new(self.params);
        for (y, fy) in &self.values {
            for n in 0..chi.len() {
                let c = chi.at(n);
                if c.is_zero() {
                    continue;
                }
                let w = fy.clone() * c;
                for x in self.params.sphere_about(y, n) {
                    out.add_at(x, w.clone());
                }
            }
        }
        out
    }

    /// `f♯(n) = (1/δ(n)) Σ_{|y|=n} f(y)` for `n ≤ support radius`.
    pub fn radialize(&self) -> RadialSeq<S> {
        self.spherical_means(&ReducedWord::identity(), self.support_radius())
    }

    /// `f♯_x(n) = (1/δ(n)) Σ_{y∈S(x,n)} f(y)` for `n = 0..=n_max`.
    pub fn spherical_means(&self, x: &ReducedWord, n_max: usize) -> RadialSeq<S> {
        let q = self.q();
        let mut sums = vec![S::zero(q); n_max + 1];
        for (y, v) in &self.values {
            let d = self.params.distance(x, y);
            if d <= n_max {
                sums[d] = sums[d].clone() + v.clone();
            }
        }
        let params = self.params;
        RadialSeq::new(
            params,
            sums.into_iter()
                .enumerate()
                .map(|(n, s)| {
                    s.scale(
                        &BigRational::new(BigInt::from(1), BigInt::from(params.delta(n))),
                        q,
                    )
                })
                .collect(),
        )
    }

    /// Single spherical mean `f♯_x(n)`.
    pub fn spherical_mean_at(&self, x: &ReducedWord, n: usize) -> S {
        let q = self.q();
        let s = self
            .values
            .iter()
            .filter(|(y, _)| self.params.distance(x, y) == n)
            .fold(S::zero(q), |acc, (_, v)| acc + v.clone());
        s.scale(
            &BigRational::new(BigInt::from(1), BigInt::from(self.params.delta(n))),
            q,
        )
    }

    /// `Σ_x f(x) g(x)`.
    pub fn pairing(&self, g: &VertexFun<S>) -> S {
        self.values
            .iter()
            .filter_map(|(x, v)| g.values.get(x).map(|w| v.clone() * w.clone()))
            .fold(S::zero(self.q()), |a, b| a + b)
    }
}

impl VertexFun<AlgebraicValue> {
    pub fn to_f64(&self) -> VertexFun<f64> {
        self.map(|v| v.to_f64())
    }
}
