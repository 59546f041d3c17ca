//! The Laplacian in its vertex, radial, horocyclic and `Z` forms.

use crate::group::GraphParams;
use crate::numerics::Scalar;
use crate::transforms::RadialSeq;
use crate::vertex::VertexFun;

/// `Lf(x) = f(x) − (1/(r(k−1))) Σ_{d(x,y)=1} f(y)`.
pub fn lap_full<S: Scalar>(f: &VertexFun<S>) -> VertexFun<S> {
    let p = *f.params();
    let q = p.q();
    let w = S::from_ratio(-1, p.degree() as i64, q);
    let mut out = VertexFun::new(p);
    for (y, v) in f.iter() {
        out.add_at(y.clone(), v.clone());
        let share = w.clone() * v.clone();
        for x in p.neighbors(y) {
            out.add_at(x, share.clone());
        }
    }
    out
}

/// Radial form: `Lf(0) = f(0) − f(1)` and
/// `Lf(n) = [(Q+1) f(n) − f(n−1) − Q f(n+1)] / (r(k−1))` for `n ≥ 1`.
/// The result has one more stored value than `f`.
pub fn lap_radial<S: Scalar>(f: &RadialSeq<S>) -> RadialSeq<S> {
    let p = *f.params();
    let q = p.q();
    let deg = p.degree() as i64;
    RadialSeq::from_fn(p, f.len() + 1, |n| {
        if n == 0 {
            return f.at(0) - f.at(1);
        }
        (S::from_i64(q as i64 + 1, q) * f.at(n)
            - f.at(n - 1)
            - S::from_i64(q as i64, q) * f.at(n + 1))
            * S::from_ratio(1, deg, q)
    })
}

/// A finitely supported sequence on `Z`: `values[i]` sits at `offset + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeq<S> {
    pub offset: i64,
    pub values: Vec<S>,
}

impl<S: Scalar> ZSeq<S> {
    pub fn new(offset: i64, values: Vec<S>) -> Self {
        ZSeq { offset, values }
    }

    pub fn at(&self, n: i64, q: u64) -> S {
        usize::try_from(n - self.offset)
            .ok()
            .and_then(|i| self.values.get(i).cloned())
            .unwrap_or_else(|| S::zero(q))
    }

    /// Index range covered by the stored values.
    pub fn range(&self) -> std::ops::Range<i64> {
        self.offset..self.offset + self.values.len() as i64
    }

    fn widened(&self, f: impl Fn(i64) -> S) -> Self {
        let start = self.offset - 1;
        ZSeq {
            offset: start,
            values: (start..self.offset + self.values.len() as i64 + 1)
                .map(f)
                .collect(),
        }
    }
}

/// `L^Z g(n) = g(n) − (g(n+1) + g(n−1))/2`.
///
/// This is the operator for which the horocyclic display
/// `L F(h) = β Q^{h/2} L^Z{Q^{−h/2} F}(h) + (α−β) F(h)` is an identity:
/// substituting `F(h) = Q^{h/2} g(h)` into the three-term horocyclic form and
/// using `β r(k−1) = 2√Q` leaves exactly this second difference.
pub fn lap_z<S: Scalar>(g: &ZSeq<S>, q: u64) -> ZSeq<S> {
    let half = S::from_ratio(1, 2, q);
    g.widened(|n| g.at(n, q) - half.clone() * (g.at(n + 1, q) + g.at(n - 1, q)))
}

/// The Laplacian on functions of the horocycle index `h = ζ(·, ω)`:
/// `L F(h) = [(Q+1) F(h) − Q F(h−1) − F(h+1)] / (r(k−1))`.
pub fn lap_horocyclic<S: Scalar>(params: &GraphParams, f: &ZSeq<S>) -> ZSeq<S> {
    let q = params.q();
    let inv = S::from_ratio(1, params.degree() as i64, q);
    f.widened(|h| {
        (S::from_i64(q as i64 + 1, q) * f.at(h, q)
            - S::from_i64(q as i64, q) * f.at(h - 1, q)
            - f.at(h + 1, q))
            * inv.clone()
    })
}

/// `α = (Q+1)/(r(k−1))`.
pub fn alpha<S: Scalar>(params: &GraphParams) -> S {
    S::from_ratio(params.q() as i64 + 1, params.degree() as i64, params.q())
}

/// `β = 2√Q/(r(k−1))`.
pub fn beta<S: Scalar>(params: &GraphParams) -> S {
    let q = params.q();
    S::from_ratio(2, params.degree() as i64, q) * S::q_half_power(q, 1)
}
