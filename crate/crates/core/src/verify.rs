//! Invariant suites over a `(k, r)` grid, each stopping at the first failure
//! with a JSON witness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boundary::{b_closed, busemann, BoundaryRay};
use crate::fixtures::{random_even, random_radial, random_vertex_fun};
use crate::group::{GraphParams, ReducedWord};
use crate::numerics::{AlgebraicValue, Scalar};
use crate::registry::Registry;
use crate::spectral::{
    fourier_z, invert_spherical, phi_lambda, phi_oracle, plancherel_norm, radial_norm_sq,
    spherical_transform,
};
use crate::transforms::{
    abel, abel_inverses, abel_via_radon, dual_abel, dual_abel_closed, dual_abel_inverses,
    even_pairing, radial_pairing, EvenSeq, HorocycleCounts, RadialSeq,
};
use crate::vertex::VertexFun;
use crate::wave::{
    asgeirsson_check, wave_closed_with_leading, wave_direct, CauchyData, PhiProduct,
};

type A = AlgebraicValue;

/// A deliberately corrupted computation, to confirm the suites notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// The leading `½` of the closed-form wave solution becomes `⅓`.
    WaveLeadingCoefficient,
}

impl std::str::FromStr for Fault {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "wave-leading-coefficient" => Ok(Fault::WaveLeadingCoefficient),
            other => Err(crate::Error::UnknownStrategy(other.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: f64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            tol: 1e-6,
            fault: None,
        }
    }
}

/// What failed, on which inputs, and how.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub suite: String,
    pub check: String,
    pub k: u32,
    pub r: u32,
    pub inputs: Value,
    pub expected: String,
    pub got: String,
}

/// Number of checks a suite ran for one `(k, r)`.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub k: u32,
    pub r: u32,
    pub checks: usize,
    /// Set when the suite does not apply to these parameters.
    pub skipped: Option<String>,
}

type Outcome = std::result::Result<usize, Box<Witness>>;

/// A named family of invariants.
pub trait Suite: Send + Sync {
    fn run(&self, params: &GraphParams, config: &VerifyConfig) -> Outcome;

    /// Why the suite does not apply to `params`, if it does not.
    fn skip_reason(&self, _params: &GraphParams) -> Option<String> {
        None
    }
}

struct Ctx<'a> {
    suite: &'a str,
    params: GraphParams,
    checks: usize,
}

impl Ctx<'_> {
    fn witness(
        &self,
        check: &str,
        inputs: Value,
        expected: impl ToString,
        got: impl ToString,
    ) -> Box<Witness> {
        Box::new(Witness {
            suite: self.suite.to_string(),
            check: check.to_string(),
            k: self.params.k(),
            r: self.params.r(),
            inputs,
            expected: expected.to_string(),
            got: got.to_string(),
        })
    }

    fn eq<T: PartialEq + Shown>(
        &mut self,
        check: &str,
        inputs: impl FnOnce() -> Value,
        expected: T,
        got: T,
    ) -> std::result::Result<(), Box<Witness>> {
        self.checks += 1;
        if expected == got {
            Ok(())
        } else {
            Err(self.witness(check, inputs(), expected.shown(), got.shown()))
        }
    }

    fn close(
        &mut self,
        check: &str,
        inputs: impl FnOnce() -> Value,
        expected: f64,
        got: f64,
        tol: f64,
    ) -> std::result::Result<(), Box<Witness>> {
        self.checks += 1;
        if (expected - got).abs() <= tol {
            Ok(())
        } else {
            Err(self.witness(check, inputs(), expected, got))
        }
    }

    fn ok<T>(&self, check: &str, r: crate::Result<T>) -> std::result::Result<T, Box<Witness>> {
        r.map_err(|e| self.witness(check, Value::Null, "no error", e))
    }
}

/// How a compared value appears in a witness.
trait Shown {
    fn shown(&self) -> String;
}

macro_rules! shown_by_display {
    ($($t:ty),*) => {
        $(impl Shown for $t {
            fn shown(&self) -> String {
                self.to_string()
            }
        })*
    };
}

shown_by_display!(u128, usize, i64, ReducedWord, A);

impl Shown for Option<usize> {
    fn shown(&self) -> String {
        self.map_or_else(|| "none".into(), |n| n.to_string())
    }
}

impl Shown for RadialSeq<A> {
    fn shown(&self) -> String {
        exact(self.values()).to_string()
    }
}

impl Shown for EvenSeq<A> {
    fn shown(&self) -> String {
        exact(self.values()).to_string()
    }
}

fn exact<S: Scalar>(values: &[S]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| {
                Value::String(
                    v.exact_string()
                        .unwrap_or_else(|| v.to_complex().re.to_string()),
                )
            })
            .collect(),
    )
}

fn vertex_json(f: &VertexFun<A>) -> Value {
    Value::Object(
        f.iter()
            .map(|(x, v)| (x.to_string(), Value::String(v.to_string())))
            .collect(),
    )
}

fn rng(config: &VerifyConfig, params: &GraphParams, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        config.seed ^ (u64::from(params.k()) << 40) ^ (u64::from(params.r()) << 32) ^ salt,
    )
}

fn spectral_skip(params: &GraphParams) -> Option<String> {
    params.require_spectral().err().map(|e| e.to_string())
}

/// Sphere sizes, products and the metric.
pub struct GroupSuite;

impl Suite for GroupSuite {
    fn run(&self, p: &GraphParams, _config: &VerifyConfig) -> Outcome {
        let mut c = Ctx {
            suite: "group",
            params: *p,
            checks: 0,
        };
        for n in 0..=4 {
            c.eq(
                "sphere size",
                || json!({ "n": n }),
                p.delta(n),
                p.sphere(n).count() as u128,
            )?;
        }
        let ball: Vec<_> = p.ball(2).collect();
        for x in &ball {
            c.eq(
                "x x⁻¹ = o",
                || json!({ "x": x.to_string() }),
                ReducedWord::identity(),
                p.mul(x, &p.inv(x)),
            )?;
            for y in ball.iter().step_by(3) {
                let d = p.distance(x, y);
                c.eq(
                    "d(x,y) = |x⁻¹y|",
                    || json!({ "x": x.to_string(), "y": y.to_string() }),
                    p.mul(&p.inv(x), y).len(),
                    d,
                )?;
                c.eq(
                    "symmetry",
                    || json!({ "x": x.to_string(), "y": y.to_string() }),
                    d,
                    p.distance(y, x),
                )?;
            }
        }
        Ok(c.checks)
    }
}

/// Horocycle counts against the closed form.
pub struct BoundarySuite;

impl Suite for BoundarySuite {
    fn run(&self, p: &GraphParams, config: &VerifyConfig) -> Outcome {
        let mut c = Ctx {
            suite: "boundary",
            params: *p,
            checks: 0,
        };
        for ray in BoundaryRay::fixtures(p, 6, config.seed, 1) {
            let counts = c.ok(
                "enumerate horocycles",
                HorocycleCounts::enumerate(p, &ray, 4),
            )?;
            for n in 0..=4 {
                let mut total = 0;
                for h in -5..=5 {
                    c.eq(
                        "b(n,h)",
                        || json!({ "n": n, "h": h, "ray": ray.prefix().to_string() }),
                        b_closed(p, n, h),
                        counts.get(n, h),
                    )?;
                    total += b_closed(p, n, h);
                }
                c.eq("Σ_h b(n,h) = δ(n)", || json!({ "n": n }), p.delta(n), total)?;
            }
            let x = p
                .parse_word("a1^1")
                .map_err(|e| c.witness("parse", Value::Null, "", e))?;
            for y in p.ball(2) {
                let lhs = c.ok("busemann", busemann(p, &p.mul(&x, &y), &ray))?;
                let shift = c.ok("busemann", busemann(p, &x, &ray))?;
                let moved = c.ok("busemann", busemann(p, &y, &shifted_ray(p, &x, &ray)))?;
                c.eq(
                    "cocycle ζ(xy,ω) = ζ(x,ω) + ζ(y,x⁻¹ω)",
                    || json!({ "x": x.to_string(), "y": y.to_string() }),
                    lhs,
                    shift + moved,
                )?;
            }
        }
        Ok(c.checks)
    }
}

/// `x⁻¹ω`, truncated to keep a valid prefix.
fn shifted_ray(p: &GraphParams, x: &ReducedWord, ray: &BoundaryRay) -> BoundaryRay {
    let w = p.mul(&p.inv(x), ray.prefix());
    let keep = ray.depth() - x.len();
    BoundaryRay::new(w.prefix(keep)).expect("ray is deeper than x")
}

/// Abel transform, its inverses and the support corollary.
pub struct AbelSuite;

impl Suite for AbelSuite {
    fn run(&self, p: &GraphParams, config: &VerifyConfig) -> Outcome {
        let mut c = Ctx {
            suite: "abel",
            params: *p,
            checks: 0,
        };
        let mut rng = rng(config, p, 1);
        let rays = BoundaryRay::fixtures(p, 6, config.seed, 1);
        let inverses = abel_inverses::<A>();
        for radius in 0..=5 {
            let f = random_radial(p, radius, &mut rng);
            let af = abel(&f);
            for ray in &rays {
                let via = c.ok("radon", abel_via_radon(&f, ray))?;
                for h in -(radius as i64)..=radius as i64 {
                    c.eq(
                        "Af(h) = Q^{h/2} Rf(h)",
                        || json!({ "f": exact(f.values()), "h": h }),
                        af.at(h),
                        via[(h + radius as i64) as usize].clone(),
                    )?;
                }
            }
            c.eq(
                "support of Af",
                || json!({ "f": exact(f.values()) }),
                f.support_radius(),
                af.support_radius(),
            )?;
            for (name, inv) in inverses.iter() {
                c.eq(
                    &format!("{name} ∘ A = id"),
                    || json!({ "f": exact(f.values()) }),
                    f.clone(),
                    inv.invert(&af).resized(f.len()),
                )?;
                let g = random_even(p, radius, &mut rng);
                c.eq(
                    &format!("A ∘ {name} = id"),
                    || json!({ "g": exact(g.values()) }),
                    g.clone(),
                    abel(&inv.invert(&g)).resized(g.len()),
                )?;
            }
        }
        Ok(c.checks)
    }
}

/// Dual Abel transform: adjointness, closed form and inverses.
pub struct DualSuite;

impl Suite for DualSuite {
    fn run(&self, p: &GraphParams, config: &VerifyConfig) -> Outcome {
        let mut c = Ctx {
            suite: "dual",
            params: *p,
            checks: 0,
        };
        let mut rng = rng(config, p, 2);
        let inverses = dual_abel_inverses::<A>();
        for radius in 0..=5 {
            let f = random_radial(p, radius, &mut rng);
            let g = random_even(p, radius + 1, &mut rng);
            let n_max = radius + 2;
            let dg = dual_abel(&g, n_max);
            c.eq(
                "⟨A*g, f⟩ = ⟨g, Af⟩",
                || json!({ "f": exact(f.values()), "g": exact(g.values()) }),
                even_pairing(&g, &abel(&f)),
                radial_pairing(&dg, &f),
            )?;
            c.eq(
                "closed form of A*",
                || json!({ "g": exact(g.values()) }),
                dg.clone(),
                dual_abel_closed(&g, n_max),
            )?;
            for (name, inv) in inverses.iter() {
                c.eq(
                    &format!("{name} ∘ A* = id"),
                    || json!({ "g": exact(g.values()) }),
                    g.clone(),
                    inv.invert(&dual_abel(&g, g.len() - 1)).resized(g.len()),
                )?;
                c.eq(
                    &format!("A* ∘ {name} = id"),
                    || json!({ "f": exact(f.values()) }),
                    f.clone(),
                    dual_abel(&inv.invert(&f), f.len() - 1),
                )?;
            }
        }
        Ok(c.checks)
    }
}

/// Spherical functions, the spectral bridge, Plancherel and inversion.
pub struct SpectralSuite;

impl Suite for SpectralSuite {
    fn skip_reason(&self, params: &GraphParams) -> Option<String> {
        spectral_skip(params)
    }

    fn run(&self, p: &GraphParams, config: &VerifyConfig) -> Outcome {
        let mut c = Ctx {
            suite: "spectral",
            params: *p,
            checks: 0,
        };
        let mut rng = rng(config, p, 3);
        let tau = p.tau().expect("spectral params");
        for i in 0..4 {
            let l = tau * (2 * i + 1) as f64 / 16.0;
            let phi = c.ok("phi", phi_lambda(p, l, 3))?;
            for (n, x) in (0..=3).filter_map(|n| p.sphere(n).next().map(|x| (n, x))) {
                let oracle = c.ok("phi oracle", phi_oracle(p, l, &x, n + 1))?;
                c.close(
                    "φ_λ against the boundary integral",
                    || json!({ "lambda": l, "n": n }),
                    phi[n],
                    oracle.re,
                    1e-12,
                )?;
            }
        }
        let f = random_radial(p, 4, &mut rng);
        let af = abel(&f);
        for i in 0..16 {
            let l = tau * i as f64 / 32.0;
            let h = c.ok("spherical", spherical_transform(&f, l))?;
            let fz = c.ok("fourier", fourier_z(&af, l))?;
            c.close(
                "Hf = F(Af)",
                || json!({ "f": exact(f.values()), "lambda": l }),
                0.0,
                (h - fz).norm(),
                1e-10 * (1.0 + h.norm()),
            )?;
        }
        let n2 = radial_norm_sq(&f);
        let rep = c.ok("plancherel", plancherel_norm(&f, config.tol * 1e-3))?;
        c.close(
            "Plancherel",
            || json!({ "f": exact(f.values()) }),
            n2,
            rep.total(),
            config.tol * n2,
        )?;
        let d = RadialSeq::<A>::delta_at(*p, 0);
        let rep = c.ok("plancherel", plancherel_norm(&d, config.tol * 1e-3))?;
        c.close("total mass", || json!({}), 1.0, rep.total(), config.tol)?;
        let (vals, _) = c.ok("inversion", invert_spherical(&f, 4, config.tol * 1e-3))?;
        for (n, v) in vals.iter().enumerate() {
            c.close(
                "spherical inversion",
                || json!({ "f": exact(f.values()), "n": n }),
                f.at(n).to_f64(),
                *v,
                config.tol,
            )?;
        }
        Ok(c.checks)
    }
}

/// Wave solvers against each other, time symmetry and Ásgeirsson.
pub struct WaveSuite;

impl Suite for WaveSuite {
    fn run(&self, p: &GraphParams, config: &VerifyConfig) -> Outcome {
        let mut c = Ctx {
            suite: "wave",
            params: *p,
            checks: 0,
        };
        let mut rng = rng(config, p, 4);
        let q = p.q();
        let lead = match config.fault {
            Some(Fault::WaveLeadingCoefficient) => A::from_ratio(1, 3, q),
            None => A::from_ratio(1, 2, q),
        };
        let n_max = 5usize;
        for trial in 0..3 {
            let data = CauchyData::new(
                random_vertex_fun(p, 2, 0.2, &mut rng),
                random_vertex_fun(p, 2, 0.2, &mut rng),
            );
            let inputs =
                || json!({ "f": vertex_json(&data.f), "g": vertex_json(&data.g), "trial": trial });
            let centers = [
                ReducedWord::identity(),
                p.sphere(1).next().expect("nonempty"),
            ];
            for x in &centers {
                let field = wave_direct(&data, x, 0, n_max);
                for n in -(n_max as i64)..=n_max as i64 {
                    let direct = field
                        .get(x, n)
                        .map_err(|e| c.witness("direct", inputs(), "", e))?;
                    let closed = wave_closed_with_leading(&data, x, n, lead.clone());
                    c.eq(
                        &format!("closed = direct at ({x}, {n})"),
                        inputs,
                        direct,
                        closed,
                    )?;
                }
            }
            let even = wave_direct(
                &CauchyData::new(data.f.clone(), VertexFun::new(*p)),
                &centers[1],
                0,
                n_max,
            );
            let odd = wave_direct(
                &CauchyData::new(VertexFun::new(*p), data.g.clone()),
                &centers[1],
                0,
                n_max,
            );
            for n in 1..=n_max as i64 {
                let e = |t| even.get(&centers[1], t).expect("apex");
                let o = |t| odd.get(&centers[1], t).expect("apex");
                c.eq("u(n) = u(−n) when g = 0", inputs, e(n), e(-n))?;
                c.eq("u(n) = −u(−n) when f = 0", inputs, o(n), -o(-n))?;
            }
        }
        if p.require_spectral().is_ok() {
            let u = PhiProduct::new(*p, A::from_ratio(1, 3, q), 8);
            let x = p.sphere(1).next().expect("nonempty");
            for (m, n) in [(0, 2), (1, 3)] {
                let (a, b) = asgeirsson_check(&u, &x, &x, m, n)
                    .map_err(|e| c.witness("asgeirsson", Value::Null, "", e))?;
                c.eq("Ásgeirsson for φ ⊗ φ", || json!({ "m": m, "n": n }), a, b)?;
            }
        }
        Ok(c.checks)
    }
}

/// Registered as `group`, `boundary`, `abel`, `dual`, `spectral`, `wave`.
pub fn suites() -> Registry<dyn Suite> {
    Registry::<dyn Suite>::new()
        .with("group", Box::new(GroupSuite))
        .with("boundary", Box::new(BoundarySuite))
        .with("abel", Box::new(AbelSuite))
        .with("dual", Box::new(DualSuite))
        .with("spectral", Box::new(SpectralSuite))
        .with("wave", Box::new(WaveSuite))
}

/// `(k, r) ∈ {2,3,4}²`.
pub fn default_grid() -> Vec<GraphParams> {
    (2..=4)
        .flat_map(|k| (2..=4).map(move |r| GraphParams::new(k, r).expect("valid")))
        .collect()
}

/// Runs `name` (or every suite for `"all"`) over `grid`, stopping at the
/// first failure.
pub fn run_suites(
    name: &str,
    grid: &[GraphParams],
    config: &VerifyConfig,
) -> crate::Result<std::result::Result<Vec<SuiteOutcome>, Witness>> {
    let registry = suites();
    let names: Vec<String> = if name == "all" {
        registry.names().into_iter().map(str::to_string).collect()
    } else {
        registry.get(name)?;
        vec![name.to_string()]
    };
    let jobs: Vec<(&str, &GraphParams)> = names
        .iter()
        .flat_map(|n| grid.iter().map(move |p| (n.as_str(), p)))
        .collect();
    // Every job is seeded on its own, so the outcome does not depend on the
    // number of worker threads; the first failure in job order is reported.
    let results: Vec<std::result::Result<SuiteOutcome, Box<Witness>>> = jobs
        .par_iter()
        .map(|&(n, p)| {
            let suite = registry.get(n).expect("name came from the registry");
            let skipped = suite.skip_reason(p);
            let checks = match &skipped {
                Some(_) => 0,
                None => suite.run(p, config)?,
            };
            Ok(SuiteOutcome {
                suite: n.to_string(),
                k: p.k(),
                r: p.r(),
                checks,
                skipped,
            })
        })
        .collect();
    Ok(results
        .into_iter()
        .collect::<std::result::Result<_, _>>()
        .map_err(|w| *w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_small_grid() {
        let grid = [
            GraphParams::new(3, 4).unwrap(),
            GraphParams::new(2, 2).unwrap(),
            GraphParams::new(3, 2).unwrap(),
        ];
        let out = run_suites("all", &grid, &VerifyConfig::default())
            .unwrap()
            .unwrap();
        assert!(out.iter().all(|o| o.checks > 0 || o.skipped.is_some()));
        assert!(out.iter().any(|o| o.skipped.is_some()));
    }

    #[test]
    fn corrupted_closed_form_is_caught() {
        let grid = [GraphParams::new(3, 4).unwrap()];
        let config = VerifyConfig {
            fault: Some(Fault::WaveLeadingCoefficient),
            ..VerifyConfig::default()
        };
        let w = run_suites("wave", &grid, &config).unwrap().unwrap_err();
        assert!(w.check.starts_with("closed = direct"));
        assert!(run_suites("nope", &grid, &config).is_err());
    }
}
