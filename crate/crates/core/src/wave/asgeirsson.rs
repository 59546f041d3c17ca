//! Ásgeirsson's mean value property: if `L_x U = L_y U` then
//! `Σ_{x'∈S(x,m)} Σ_{y'∈S(y,n)} U(x',y')` is symmetric in `(m, n)`.

use std::collections::HashMap;

use crate::boundary::{busemann, BoundaryRay};
use crate::error::{Error, Result};
use crate::group::{GraphParams, ReducedWord};
use crate::numerics::Scalar;
use crate::spectral::spherical_phi;

use super::solver::{wave_direct, CauchyData, WaveField};

/// A function on `Γ × Γ`.
pub trait TwoPointFunction<S: Scalar> {
    fn params(&self) -> &GraphParams;

    fn value(&self, x: &ReducedWord, y: &ReducedWord) -> Result<S>;

    /// `R` when `U` is only known on `B(o,R) × B(o,R)`.
    fn radius(&self) -> Option<usize> {
        None
    }

    /// `Σ_{x'∈S(x,m)} Σ_{y'∈S(y,n)} U(x',y')`.
    fn double_sum(&self, x: &ReducedWord, m: usize, y: &ReducedWord, n: usize) -> Result<S> {
        double_sum_pointwise(self, x, m, y, n)
    }
}

/// The double sum by evaluating `U` at every pair.
pub fn double_sum_pointwise<S: Scalar, U: TwoPointFunction<S> + ?Sized>(
    u: &U,
    x: &ReducedWord,
    m: usize,
    y: &ReducedWord,
    n: usize,
) -> Result<S> {
    let p = *u.params();
    let mut acc = S::zero(p.q());
    for xp in p.sphere_about(x, m) {
        for yp in p.sphere_about(y, n) {
            acc = acc + u.value(&xp, &yp)?;
        }
    }
    Ok(acc)
}

fn lap_at<S: Scalar>(
    p: &GraphParams,
    centre: S,
    mut around: impl Iterator<Item = Result<S>>,
) -> Result<S> {
    let q = p.q();
    let sum = around.try_fold(S::zero(q), |a, v| v.map(|v| a + v))?;
    Ok(centre - S::from_ratio(1, p.degree() as i64, q) * sum)
}

/// Checks `L_x U = L_y U` at every pair of `B(x,1) × B(y,1)`.
pub fn commutes_locally<S: Scalar>(
    u: &dyn TwoPointFunction<S>,
    x: &ReducedWord,
    y: &ReducedWord,
) -> Result<bool> {
    let p = *u.params();
    for xp in p.ball_about(x, 1) {
        for yp in p.ball_about(y, 1) {
            let c = u.value(&xp, &yp)?;
            let lx = lap_at(&p, c.clone(), p.neighbors(&xp).map(|a| u.value(&a, &yp)))?;
            let ly = lap_at(&p, c, p.neighbors(&yp).map(|b| u.value(&xp, &b)))?;
            if lx != ly {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Returns both double sums `(Σ_{S(x,m)×S(y,n)} U, Σ_{S(x,n)×S(y,m)} U)`,
/// after checking the table radius and `L_x U = L_y U` near `(x, y)`.
pub fn asgeirsson_check<S: Scalar>(
    u: &dyn TwoPointFunction<S>,
    x: &ReducedWord,
    y: &ReducedWord,
    m: usize,
    n: usize,
) -> Result<(S, S)> {
    if let Some(r) = u.radius() {
        if m + n + x.len() + y.len() + 1 > r {
            return Err(Error::StencilExceedsTable(format!(
                "m + n + |x| + |y| = {} exceeds R − 1 = {}",
                m + n + x.len() + y.len(),
                r as i64 - 1
            )));
        }
    }
    if !commutes_locally(u, x, y)? {
        return Err(Error::Precondition(
            "L_x U differs from L_y U near (x, y)".into(),
        ));
    }
    Ok((u.double_sum(x, m, y, n)?, u.double_sum(x, n, y, m)?))
}

/// `U` tabulated on `B(o,R) × B(o,R)`.
pub struct TabulatedU<S> {
    params: GraphParams,
    radius: usize,
    table: HashMap<(ReducedWord, ReducedWord), S>,
}

impl<S: Scalar> TabulatedU<S> {
    pub fn from_fn(
        params: GraphParams,
        radius: usize,
        f: impl Fn(&ReducedWord, &ReducedWord) -> S,
    ) -> Self {
        let ball: Vec<_> = params.ball(radius).collect();
        let mut table = HashMap::new();
        for a in &ball {
            for b in &ball {
                table.insert((a.clone(), b.clone()), f(a, b));
            }
        }
        TabulatedU {
            params,
            radius,
            table,
        }
    }
}

impl<S: Scalar> TwoPointFunction<S> for TabulatedU<S> {
    fn params(&self) -> &GraphParams {
        &self.params
    }

    fn value(&self, x: &ReducedWord, y: &ReducedWord) -> Result<S> {
        self.table
            .get(&(x.clone(), y.clone()))
            .cloned()
            .ok_or_else(|| {
                Error::StencilExceedsTable(format!("U({x}, {y}) is outside B(o, {})", self.radius))
            })
    }

    fn radius(&self) -> Option<usize> {
        Some(self.radius)
    }
}

/// `U(x, y) = φ(|x|) φ(|y|)` for the spherical function with eigenvalue `γ`
/// of the averaging operator; `L_x U = (1−γ) U = L_y U`.
pub struct PhiProduct<S> {
    params: GraphParams,
    phi: Vec<S>,
}

impl<S: Scalar> PhiProduct<S> {
    /// Tabulates `φ` on `[0, n_max]`.
    pub fn new(params: GraphParams, gamma: S, n_max: usize) -> Self {
        PhiProduct {
            params,
            phi: spherical_phi(&params, gamma, n_max).phi,
        }
    }

    fn phi(&self, n: usize) -> Result<S> {
        self.phi.get(n).cloned().ok_or_else(|| {
            Error::StencilExceedsTable(format!("φ({n}) is beyond the tabulated range"))
        })
    }

    fn sphere_sum(&self, x: &ReducedWord, m: usize) -> Result<S> {
        self.params
            .sphere_about(x, m)
            .try_fold(S::zero(self.params.q()), |a, w| Ok(a + self.phi(w.len())?))
    }
}

impl<S: Scalar> TwoPointFunction<S> for PhiProduct<S> {
    fn params(&self) -> &GraphParams {
        &self.params
    }

    fn value(&self, x: &ReducedWord, y: &ReducedWord) -> Result<S> {
        Ok(self.phi(x.len())? * self.phi(y.len())?)
    }

    /// The double sum factorizes.
    fn double_sum(&self, x: &ReducedWord, m: usize, y: &ReducedWord, n: usize) -> Result<S> {
        Ok(self.sphere_sum(x, m)? * self.sphere_sum(y, n)?)
    }
}

/// The horocyclic lift `U(x, y) = Q^{h/2} u(x, h)` with `h = ζ(y, ω)` of a
/// wave solution `u`. Both `L_x U` and `L_y U` reduce to the wave equation.
pub struct WaveLift<S> {
    params: GraphParams,
    ray: BoundaryRay,
    field: WaveField<S>,
}

impl<S: Scalar> WaveLift<S> {
    /// Solves for `u` on the cone over `B(center, radius)` up to `|n| ≤ steps`.
    pub fn new(
        data: &CauchyData<S>,
        ray: BoundaryRay,
        center: &ReducedWord,
        radius: usize,
        steps: usize,
    ) -> Self {
        WaveLift {
            params: *data.params(),
            ray,
            field: wave_direct(data, center, radius, steps),
        }
    }
}

impl<S: Scalar> TwoPointFunction<S> for WaveLift<S> {
    fn params(&self) -> &GraphParams {
        &self.params
    }

    fn value(&self, x: &ReducedWord, y: &ReducedWord) -> Result<S> {
        let h = busemann(&self.params, y, &self.ray)?;
        Ok(S::q_half_power(self.params.q(), h) * self.field.get(x, h)?)
    }

    /// Groups `y'` by horocycle and sums `u(·, h)` over `S(x, m)` once per `h`.
    fn double_sum(&self, x: &ReducedWord, m: usize, y: &ReducedWord, n: usize) -> Result<S> {
        let p = self.params;
        let q = p.q();
        let mut counts: HashMap<i64, i64> = HashMap::new();
        for yp in p.sphere_about(y, n) {
            *counts.entry(busemann(&p, &yp, &self.ray)?).or_default() += 1;
        }
        let mut hs: Vec<_> = counts.into_iter().collect();
        hs.sort_unstable();
        let mut acc = S::zero(q);
        for (h, c) in hs {
            if h.unsigned_abs() as usize > self.field.steps() {
                return Err(Error::StencilExceedsTable(format!(
                    "time {h} is beyond the computed window"
                )));
            }
            if !self.field.covers_ball(x, m, h) {
                return Err(Error::StencilExceedsTable(format!(
                    "S({x}, {m}) at time {h} leaves the cone"
                )));
            }
            let inner = self
                .field
                .slice(h)
                .into_iter()
                .filter(|(w, _)| p.distance(x, w) == m)
                .fold(S::zero(q), |a, (_, v)| a + v);
            acc = acc + S::from_i64(c, q) * S::q_half_power(q, h) * inner;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::random_vertex_fun;
    use crate::numerics::AlgebraicValue;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type A = AlgebraicValue;

    #[test]
    fn phi_product_is_symmetric() {
        for (k, r) in [(3, 4), (3, 2), (2, 3)] {
            let p = GraphParams::new(k, r).unwrap();
            let u = PhiProduct::new(p, A::from_ratios((1, 3), (0, 1), p.q()), 12);
            let x = p.parse_word("a1^1").unwrap();
            let y = p.parse_word("a0^1.a1^1").unwrap();
            for (m, n) in [(0, 2), (1, 3), (2, 3)] {
                let (a, b) = asgeirsson_check(&u, &x, &y, m, n).unwrap();
                assert_eq!(a, b, "k={k} r={r} m={m} n={n}");
                assert_eq!(a, double_sum_pointwise(&u, &x, m, &y, n).unwrap());
            }
        }
    }

    #[test]
    fn wave_lift_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for (k, r) in [(3, 4), (3, 3), (3, 2)] {
            let p = GraphParams::new(k, r).unwrap();
            let data = CauchyData::new(
                random_vertex_fun(&p, 1, 0.5, &mut rng),
                random_vertex_fun(&p, 1, 0.5, &mut rng),
            );
            let o = ReducedWord::identity();
            let u = WaveLift::new(&data, BoundaryRay::pseudorandom(&p, 8, 5), &o, 4, 5);
            for (m, n) in [(0, 1), (1, 3), (0, 3)] {
                let (a, b) = asgeirsson_check(&u, &o, &o, m, n).unwrap();
                assert_eq!(a, b, "k={k} r={r} m={m} n={n}");
            }
            let (a, _) = asgeirsson_check(&u, &o, &o, 1, 2).unwrap();
            assert_eq!(a, double_sum_pointwise(&u, &o, 1, &o, 2).unwrap());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let p = GraphParams::new(2, 3).unwrap();
        let o = ReducedWord::identity();
        let phi = PhiProduct::new(p, A::from_ratios((-1, 5), (0, 1), 2), 6);
        let t = TabulatedU::from_fn(p, 3, |a: &ReducedWord, b: &ReducedWord| {
            phi.value(a, b).unwrap()
        });
        assert!(matches!(asgeirsson_check(&t, &o, &o, 0, 1), Ok((a, b)) if a == b));
        assert!(matches!(
            asgeirsson_check(&t, &o, &o, 1, 2),
            Err(Error::StencilExceedsTable(_))
        ));
        let bad = TabulatedU::from_fn(p, 3, |a: &ReducedWord, _: &ReducedWord| {
            A::from_integer(a.len() as i64, 2)
        });
        assert!(matches!(
            asgeirsson_check(&bad, &o, &o, 0, 1),
            Err(Error::Precondition(_))
        ));
    }
}
