//! The shifted wave equation `β L^Z_n u = (L − (α−β)) u` with Cauchy data
//! `u(·,0) = f`, `(u(·,1) − u(·,−1))/2 = g`.
//!
//! Eliminating the constants, the equation reads
//! `u(n+1) + u(n−1) = Q^{−1/2} (S₁ − σ) u(n)` where `S₁` sums over the
//! `r(k−1)` neighbours, so `u(1) = ½ Q^{−1/2}(S₁ − σ) f + g`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::group::{GraphParams, ReducedWord};
use crate::numerics::Scalar;
use crate::registry::Registry;
use crate::transforms::dual_abel_inv;
use crate::vertex::VertexFun;

/// Initial value `f` and initial velocity `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyData<S> {
    pub f: VertexFun<S>,
    pub g: VertexFun<S>,
}

impl<S: Scalar> CauchyData<S> {
    pub fn new(f: VertexFun<S>, g: VertexFun<S>) -> Self {
        assert_eq!(f.params(), g.params(), "Cauchy data on different graphs");
        CauchyData { f, g }
    }

    pub fn params(&self) -> &GraphParams {
        self.f.params()
    }

    /// Radius of the smallest ball about `o` holding both supports.
    pub fn support_radius(&self) -> usize {
        self.f.support_radius().max(self.g.support_radius())
    }

    /// The same data with the velocity reversed; its solution at time `n` is
    /// the original solution at time `−n`.
    pub fn time_reversed(&self) -> Self {
        CauchyData {
            f: self.f.clone(),
            g: self.g.map(|v| -v.clone()),
        }
    }
}

/// `u(x, n)` on the backward light cone of a ball: at time `n` the values
/// are known for every `x` with `d(c, x) ≤ ρ + T − |n|`.
#[derive(Clone, Debug)]
pub struct WaveField<S> {
    params: GraphParams,
    center: ReducedWord,
    radius: usize,
    steps: usize,
    /// Index `T + n` holds time `n`; zero values are omitted.
    slices: Vec<HashMap<ReducedWord, S>>,
}

impl<S: Scalar> WaveField<S> {
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Whether `u(x, n)` lies in the computed region.
    pub fn covers(&self, x: &ReducedWord, n: i64) -> bool {
        let reach = (self.radius + self.steps) as i64 - n.abs();
        n.unsigned_abs() as usize <= self.steps
            && reach >= 0
            && self.params.distance(&self.center, x) as i64 <= reach
    }

    /// Whether `u(·, n)` is known on all of `B(x, m)`.
    pub fn covers_ball(&self, x: &ReducedWord, m: usize, n: i64) -> bool {
        let reach = (self.radius + self.steps) as i64 - n.abs();
        n.unsigned_abs() as usize <= self.steps
            && (self.params.distance(&self.center, x) + m) as i64 <= reach
    }

    pub fn get(&self, x: &ReducedWord, n: i64) -> Result<S> {
        if !self.covers(x, n) {
            return Err(Error::StencilExceedsTable(format!(
                "u({x}, {n}) is outside the computed cone"
            )));
        }
        let slice = &self.slices[(self.steps as i64 + n) as usize];
        Ok(slice
            .get(x)
            .cloned()
            .unwrap_or_else(|| S::zero(self.params.q())))
    }

    /// Checks `u(n+1) + u(n−1) = Q^{−1/2}(S₁ − σ) u(n)` wherever all three
    /// slices are known, and the velocity condition at `n = 0`.
    pub fn satisfies_recurrence(&self, g: &VertexFun<S>) -> bool {
        let p = self.params;
        let q = p.q();
        let inv_sqrt = S::q_half_power(q, -1);
        let sigma = S::from_i64(p.sigma(), q);
        let zero = || S::zero(q);
        let at = |x: &ReducedWord, n: i64| {
            self.slices[(self.steps as i64 + n) as usize]
                .get(x)
                .cloned()
                .unwrap_or_else(zero)
        };
        let t = self.steps as i64;
        for n in (1 - t)..t {
            let mut candidates: Vec<ReducedWord> = Vec::new();
            for d in [-1, 0, 1] {
                candidates.extend(self.slices[(t + n + d) as usize].keys().cloned());
            }
            for y in self.slices[(t + n) as usize].keys() {
                candidates.extend(p.neighbors(y));
            }
            candidates.sort();
            candidates.dedup();
            for x in candidates.iter().filter(|x| self.covers(x, n.abs() + 1)) {
                let s1 = p.neighbors(x).fold(zero(), |a, y| a + at(&y, n));
                let rhs = inv_sqrt.clone() * (s1 - sigma.clone() * at(x, n));
                if at(x, n + 1) + at(x, n - 1) != rhs {
                    return false;
                }
            }
        }
        if t >= 1 {
            let half = S::from_ratio(1, 2, q);
            for x in self.slices[(t + 1) as usize]
                .keys()
                .chain(self.slices[(t - 1) as usize].keys())
                .chain(g.iter().map(|(x, _)| x))
            {
                if self.covers(x, 1) && half.clone() * (at(x, 1) - at(x, -1)) != g.get(x) {
                    return false;
                }
            }
        }
        true
    }

    /// Nonzero values at time `n`, sorted by vertex.
    pub fn slice(&self, n: i64) -> Vec<(ReducedWord, S)> {
        let mut v: Vec<_> = self.slices[(self.steps as i64 + n) as usize]
            .iter()
            .map(|(x, s)| (x.clone(), s.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Time-steps forward `steps` times, keeping only vertices that can still
/// influence `B(center, radius)` at the final time.
fn step_forward<S: Scalar>(
    data: &CauchyData<S>,
    center: &ReducedWord,
    radius: usize,
    steps: usize,
) -> Vec<HashMap<ReducedWord, S>> {
    let p = *data.params();
    let q = p.q();
    let inv_sqrt = S::q_half_power(q, -1);
    let sigma = S::from_i64(p.sigma(), q);
    let half = S::from_ratio(1, 2, q);
    let within = |x: &ReducedWord, t: usize| p.distance(center, x) <= radius + steps - t;

    // S₁u − σu on the vertices that survive at time t+1.
    let apply = |u: &HashMap<ReducedWord, S>, t_next: usize| -> HashMap<ReducedWord, S> {
        let mut acc: HashMap<ReducedWord, S> = HashMap::new();
        for (y, v) in u {
            for x in p.neighbors(y) {
                if within(&x, t_next) {
                    let e = acc.entry(x).or_insert_with(|| S::zero(q));
                    *e = e.clone() + v.clone();
                }
            }
            if within(y, t_next) {
                let e = acc.entry(y.clone()).or_insert_with(|| S::zero(q));
                *e = e.clone() - sigma.clone() * v.clone();
            }
        }
        acc
    };

    let mut u0: HashMap<ReducedWord, S> = HashMap::new();
    for (x, v) in data.f.iter() {
        if within(x, 0) {
            u0.insert(x.clone(), v.clone());
        }
    }
    let mut slices = vec![u0];
    if steps == 0 {
        return slices;
    }
    let mut u1 = apply(
        &data.f.iter().map(|(x, v)| (x.clone(), v.clone())).collect(),
        1,
    );
    for v in u1.values_mut() {
        *v = half.clone() * inv_sqrt.clone() * v.clone();
    }
    for (x, v) in data.g.iter() {
        if within(x, 1) {
            let e = u1.entry(x.clone()).or_insert_with(|| S::zero(q));
            *e = e.clone() + v.clone();
        }
    }
    u1.retain(|_, v| !v.is_zero());
    slices.push(u1);
    for t in 1..steps {
        let mut next = apply(&slices[t], t + 1);
        for v in next.values_mut() {
            *v = inv_sqrt.clone() * v.clone();
        }
        for (x, v) in &slices[t - 1] {
            if within(x, t + 1) {
                let e = next.entry(x.clone()).or_insert_with(|| S::zero(q));
                *e = e.clone() - v.clone();
            }
        }
        next.retain(|_, v| !v.is_zero());
        slices.push(next);
    }
    slices
}

/// Direct solver: time-stepping on the light cone needed to know `u` on
/// `B(center, radius)` for `|n| ≤ steps`. Only vertices reached by the data
/// are ever touched, so the cost follows the support, not the ball volume.
pub fn wave_direct<S: Scalar>(
    data: &CauchyData<S>,
    center: &ReducedWord,
    radius: usize,
    steps: usize,
) -> WaveField<S> {
    let forward = step_forward(data, center, radius, steps);
    let backward = step_forward(&data.time_reversed(), center, radius, steps);
    let mut slices: Vec<_> = backward.into_iter().skip(1).rev().collect();
    slices.extend(forward);
    let field = WaveField {
        params: *data.params(),
        center: center.clone(),
        radius,
        steps,
        slices,
    };
    debug_assert!(
        field.satisfies_recurrence(&data.g),
        "wave field violates the recurrence"
    );
    field
}

fn sign(n: i64) -> i64 {
    n.signum()
}

/// `Σ_{d(x,y)=ℓ} h(y)` for `ℓ = 0..=l_max`.
fn sphere_sums<S: Scalar>(h: &VertexFun<S>, x: &ReducedWord, l_max: usize) -> Vec<S> {
    let p = h.params();
    let mut sums = vec![S::zero(p.q()); l_max + 1];
    for (y, v) in h.iter() {
        let d = p.distance(x, y);
        if d <= l_max {
            sums[d] = sums[d].clone() + v.clone();
        }
    }
    sums
}

fn int_pow<S: Scalar>(q: u64, base: i64, e: u32) -> S {
    S::from_rational(&BigRational::from_integer(BigInt::from(base).pow(e)), q)
}

/// The closed form for `k < r` (also valid at `k = r`):
///
/// `u(x,n) = ½ Q^{−|n|/2} Σ_{d=|n|} f
///   − (1/2k) Q^{−|n|/2} Σ_{0≤ℓ<|n|} {Q−1+(r−k)(1−k)^{|n|−ℓ}} Σ_{d=ℓ} f
///   + sign(n) Q^{−(|n|−1)/2} Σ_{d=|n|−1} g
///   + sign(n) (1/k) Q^{−(|n|−1)/2} {Σ_{d<|n|−1} g − Σ_{0≤ℓ<|n|−1} (1−k)^{|n|−ℓ} Σ_{d=ℓ} g}`.
pub fn wave_closed_k_less_r<S: Scalar>(data: &CauchyData<S>, x: &ReducedWord, n: i64) -> S {
    closed_k_less_r(data, x, n, S::from_ratio(1, 2, data.params().q()))
}

fn closed_k_less_r<S: Scalar>(data: &CauchyData<S>, x: &ReducedWord, n: i64, lead: S) -> S {
    let p = *data.params();
    if n == 0 {
        return data.f.get(x);
    }
    let q = p.q();
    let (k, r) = (i64::from(p.k()), i64::from(p.r()));
    let m = n.unsigned_abs() as usize;
    let sf = sphere_sums(&data.f, x, m);
    let sg = sphere_sums(&data.g, x, m);
    let s = S::from_i64(sign(n), q);
    let qm = S::q_half_power(q, -(m as i64));
    let qm1 = S::q_half_power(q, 1 - m as i64);

    let mut f_part = S::zero(q);
    for (l, sfl) in sf.iter().enumerate().take(m) {
        let brace = S::from_i64(q as i64 - 1, q)
            + S::from_i64(r - k, q) * int_pow::<S>(q, 1 - k, (m - l) as u32);
        f_part = f_part + brace * sfl.clone();
    }
    let mut g_part = S::zero(q);
    for (l, sgl) in sg.iter().enumerate().take(m.saturating_sub(1)) {
        g_part = g_part + (S::one(q) - int_pow::<S>(q, 1 - k, (m - l) as u32)) * sgl.clone();
    }
    lead * qm.clone() * sf[m].clone() - S::from_ratio(1, 2 * k, q) * qm * f_part
        + s.clone() * qm1.clone() * sg[m - 1].clone()
        + s * S::from_ratio(1, k, q) * qm1 * g_part
}

/// The closed form for `k = r`, where `Q^{1/2} = k − 1`:
///
/// `u(x,n) = ½ (k−1)^{−|n|} Σ_{d=|n|} f − (k−2)/2 (k−1)^{−|n|} Σ_{d<|n|} f
///   + sign(n) (k−1)^{−(|n|−1)} Σ_{d=|n|−1} g
///   + sign(n) (1/k) (k−1)^{−(|n|−1)} {Σ_{d<|n|−1} g − Σ_{0≤ℓ<|n|−1} (1−k)^{|n|−ℓ} Σ_{d=ℓ} g}`.
///
/// The last inner coefficient is `−(1−k)^{|n|−ℓ}`; with `+(k−1)^{|n|−ℓ}` the
/// formula disagrees with the time-stepping solution for odd `|n|−ℓ`.
pub fn wave_closed_k_equal_r<S: Scalar>(data: &CauchyData<S>, x: &ReducedWord, n: i64) -> S {
    closed_k_equal_r(data, x, n, S::from_ratio(1, 2, data.params().q()))
}

fn closed_k_equal_r<S: Scalar>(data: &CauchyData<S>, x: &ReducedWord, n: i64, lead: S) -> S {
    let p = *data.params();
    assert_eq!(p.k(), p.r(), "k = r form used with k != r");
    if n == 0 {
        return data.f.get(x);
    }
    let q = p.q();
    let k = i64::from(p.k());
    let m = n.unsigned_abs() as usize;
    let sf = sphere_sums(&data.f, x, m);
    let sg = sphere_sums(&data.g, x, m);
    let s = S::from_i64(sign(n), q);
    let inv_km1 = BigRational::new(BigInt::from(1), BigInt::from(k - 1));
    let pow = |e: usize| S::from_rational(&num_traits::pow(inv_km1.clone(), e), q);
    let below_f = sf[..m].iter().fold(S::zero(q), |a, b| a + b.clone());
    let mut g_part = S::zero(q);
    for (l, sgl) in sg.iter().enumerate().take(m.saturating_sub(1)) {
        g_part = g_part + (S::one(q) - int_pow::<S>(q, 1 - k, (m - l) as u32)) * sgl.clone();
    }
    lead * pow(m) * sf[m].clone() - S::from_ratio(k - 2, 2, q) * pow(m) * below_f
        + s.clone() * pow(m - 1) * sg[m - 1].clone()
        + s * S::from_ratio(1, k, q) * pow(m - 1) * g_part
}

/// The route valid for every `(k, r)`, through the inverse dual Abel
/// transform of the spherical means about `x`:
/// `u(x,n) = (A*)⁻¹(f♯_x)(n) + 2 sign(n) Σ_{0<ℓ odd<|n|} v(ℓ)` for even `n`,
/// `u(x,n) = (A*)⁻¹(f♯_x)(n) + sign(n) g(x) + 2 sign(n) Σ_{0<ℓ even<|n|} v(ℓ)`
/// for odd `n`, with `v = (A*)⁻¹(g♯_x)`.
pub fn wave_dual_abel<S: Scalar>(data: &CauchyData<S>, x: &ReducedWord, n: i64) -> S {
    let p = *data.params();
    let q = p.q();
    let m = n.unsigned_abs() as usize;
    let uf = dual_abel_inv(&data.f.spherical_means(x, m)).at(m as i64);
    if n == 0 {
        return uf;
    }
    let v = dual_abel_inv(&data.g.spherical_means(x, m));
    let s = S::from_i64(sign(n), q);
    let start = if m.is_multiple_of(2) { 1 } else { 2 };
    let acc = (start..m)
        .step_by(2)
        .fold(S::zero(q), |a, l| a + v.at(l as i64));
    let mut out = uf + S::from_i64(2, q) * s.clone() * acc;
    if m % 2 == 1 {
        out = out + s * data.g.get(x);
    }
    out
}

/// A method for computing `u(x, n)`.
pub trait WaveSolver<S: Scalar>: Send + Sync {
    /// `u(x, n)` for `n = −n_max..=n_max` (index `n + n_max`).
    fn solve(&self, data: &CauchyData<S>, x: &ReducedWord, n_max: usize) -> Vec<S>;
}

/// Time stepping on the backward cone of `x`.
pub struct DirectSolver;

/// Closed form, dispatched by regime: `k < r` and `k = r` use their own
/// displays, `k > r` goes through the dual Abel route.
pub struct ClosedSolver;

/// Dual Abel route for every regime.
pub struct DualAbelSolver;

impl<S: Scalar> WaveSolver<S> for DirectSolver {
    fn solve(&self, data: &CauchyData<S>, x: &ReducedWord, n_max: usize) -> Vec<S> {
        let field = wave_direct(data, x, 0, n_max);
        (-(n_max as i64)..=n_max as i64)
            .map(|n| field.get(x, n).expect("x is the cone apex"))
            .collect()
    }
}

pub fn wave_closed<S: Scalar>(data: &CauchyData<S>, x: &ReducedWord, n: i64) -> S {
    wave_closed_with_leading(data, x, n, S::from_ratio(1, 2, data.params().q()))
}

/// `wave_closed` with the coefficient of `Σ_{d=|n|} f` replaced by `lead`
/// (the true value is ½); used to check that the verification catches a
/// corrupted closed form.
pub(crate) fn wave_closed_with_leading<S: Scalar>(
    data: &CauchyData<S>,
    x: &ReducedWord,
    n: i64,
    lead: S,
) -> S {
    let p = data.params();
    match p.k().cmp(&p.r()) {
        std::cmp::Ordering::Less => closed_k_less_r(data, x, n, lead),
        std::cmp::Ordering::Equal => closed_k_equal_r(data, x, n, lead),
        std::cmp::Ordering::Greater => wave_dual_abel(data, x, n),
    }
}

impl<S: Scalar> WaveSolver<S> for ClosedSolver {
    fn solve(&self, data: &CauchyData<S>, x: &ReducedWord, n_max: usize) -> Vec<S> {
        (-(n_max as i64)..=n_max as i64)
            .map(|n| wave_closed(data, x, n))
            .collect()
    }
}

impl<S: Scalar> WaveSolver<S> for DualAbelSolver {
    fn solve(&self, data: &CauchyData<S>, x: &ReducedWord, n_max: usize) -> Vec<S> {
        (-(n_max as i64)..=n_max as i64)
            .map(|n| wave_dual_abel(data, x, n))
            .collect()
    }
}

/// Registered as `"direct"`, `"closed"` and `"dual-abel"`.
pub fn wave_solvers<S: Scalar>() -> Registry<dyn WaveSolver<S>> {
    Registry::<dyn WaveSolver<S>>::new()
        .with("direct", Box::new(DirectSolver))
        .with("closed", Box::new(ClosedSolver))
        .with("dual-abel", Box::new(DualAbelSolver))
}
