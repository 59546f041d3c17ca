//! One function per subcommand, each building a [`Report`].

use num_complex::Complex64;
use serde_json::{json, Value};
use symgraph::boundary::{b_closed, BoundaryRay};
use symgraph::numerics::parse_algebraic;
use symgraph::spectral::{
    atom_gamma, atom_mass, c_inv_sq, helgason_plancherel, helgason_transform, invert_helgason,
    invert_spherical, kunze_stein_check, plancherel_norm, radial_norm_sq, spherical_phi,
    spherical_transform, spherical_transform_atom,
};
use symgraph::transforms::{
    abel, abel_inverses, abel_via_radon, dual_abel, dual_abel_inverses, EvenSeq, RadialSeq,
};
use symgraph::verify::{default_grid, run_suites, VerifyConfig};
use symgraph::wave::{alpha, beta, wave_direct, wave_solvers, CauchyData};
use symgraph::{AlgebraicValue, Error, GraphParams, ReducedWord, Scalar, VertexFun};

use crate::output::Report;
use crate::{Command, Failure, RunConfig, TableKind, WaveMethod};

type A = AlgebraicValue;
type Out = Result<Report, Failure>;

const MAX_N: usize = 12;
const MAX_GRID: usize = 1024;

fn params(config: &RunConfig) -> Result<GraphParams, Failure> {
    match (config.k, config.r) {
        (Some(k), Some(r)) => Ok(GraphParams::new(k, r)?),
        _ => Err(Failure::Usage("--k and --r are required".into())),
    }
}

fn seq(s: &str, q: u64) -> Result<Vec<A>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_algebraic(t, Some(q)).map_err(Failure::from))
        .collect()
}

fn radial(s: &str, p: &GraphParams) -> Result<RadialSeq<A>, Failure> {
    Ok(RadialSeq::new(*p, seq(s, p.q())?))
}

fn even(s: &str, p: &GraphParams) -> Result<EvenSeq<A>, Failure> {
    Ok(EvenSeq::new(*p, seq(s, p.q())?))
}

/// `word=value;word=value`.
fn vertex(s: &str, p: &GraphParams) -> Result<VertexFun<A>, Failure> {
    let mut f = VertexFun::new(*p);
    for entry in s.split(';').filter(|t| !t.trim().is_empty()) {
        let (w, v) = entry
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected `word=value`, got `{entry}`")))?;
        f.add_at(p.parse_word(w)?, parse_algebraic(v, Some(p.q()))?);
    }
    Ok(f)
}

/// `word,n`.
fn at(s: &str, p: &GraphParams) -> Result<(ReducedWord, i64), Failure> {
    let (w, n) = s
        .rsplit_once(',')
        .ok_or_else(|| Failure::Usage(format!("expected `word,n`, got `{s}`")))?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("bad time `{n}`")))?;
    Ok((p.parse_word(w)?, n))
}

fn ray(s: Option<&str>, p: &GraphParams, depth: usize, seed: u64) -> Result<BoundaryRay, Failure> {
    match s {
        Some(s) => Ok(BoundaryRay::parse(p, s)?),
        None => Ok(BoundaryRay::pseudorandom(p, depth, seed)),
    }
}

fn bounded(what: &str, n: usize, max: usize) -> Result<(), Failure> {
    if n > max {
        return Err(Error::RangeTooLarge(format!("{what} = {n} exceeds {max}")).into());
    }
    Ok(())
}

fn strings(values: &[A]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

pub fn run(command: &Command, config: &RunConfig) -> Out {
    match command {
        Command::Info => info(config),
        Command::Table {
            which,
            nmax,
            hmax,
            grid,
            lambda,
            gamma,
        } => table(
            config,
            *which,
            *nmax,
            *hmax,
            *grid,
            *lambda,
            gamma.as_deref(),
        ),
        Command::Abel { f, ray: r } => cmd_abel(config, f, r.as_deref()),
        Command::AbelInv { g, method } => abel_inv(config, g, method),
        Command::Dual { g, nmax } => cmd_dual(config, g, *nmax),
        Command::DualInv { f, method } => dual_inv(config, f, method),
        Command::Spherical { f, lambda, atom } => spherical(config, f, *lambda, *atom),
        Command::Transform { f, lambda, ray: r } => transform(config, f, *lambda, r.as_deref()),
        Command::Plancherel { f } => plancherel(config, f),
        Command::Helgason { f, depth } => helgason(config, f, *depth),
        Command::Invert {
            f,
            vertex: v,
            at: a,
            nmax,
            depth,
        } => invert(
            config,
            f.as_deref(),
            v.as_deref(),
            a.as_deref(),
            *nmax,
            *depth,
        ),
        Command::KsCheck { f, chi } => ks_check(config, f, chi),
        Command::Wave {
            f,
            g,
            steps,
            method,
            at: a,
            ball,
        } => wave(config, f, g, *steps, *method, a.as_deref(), *ball),
        Command::Verify {
            suite,
            inject_fault,
        } => verify(config, suite, inject_fault.as_deref()),
    }
}

fn info(config: &RunConfig) -> Out {
    let p = params(config)?;
    let q = p.q();
    let mut rep = Report::new("info", &p);
    rep.exact("Q", q, q as f64);
    rep.exact("sigma", p.sigma(), p.sigma() as f64);
    rep.exact("degree", p.degree(), p.degree() as f64);
    let a: A = alpha(&p);
    let b: A = beta(&p);
    rep.value("alpha", &a);
    rep.value("beta", &b);
    rep.value("spectral_gap", &(a - b));
    match p.tau() {
        Some(tau) => {
            rep.float("tau", tau);
            let g0 = A::from_ratio(p.sigma(), p.degree() as i64, q)
                + A::from_ratio(2, p.degree() as i64, q) * A::q_half_power(q, 1);
            rep.value("gamma(0)", &g0);
            rep.exact("D.start", 0, 0.0);
            rep.float("D.end", tau / 2.0);
            match atom_gamma(&p) {
                Some(g) => {
                    let g = A::rational(g, q);
                    rep.value("gamma(lambda0)", &g);
                    let mass = A::from_ratio(i64::from(p.k() - p.r()), i64::from(p.k()), q);
                    rep.value("atom_mass", &mass);
                    debug_assert!((mass.to_f64() - atom_mass(&p)).abs() < 1e-15);
                }
                None => rep.text("gamma(lambda0)", "none"),
            }
        }
        None => {
            for key in ["tau", "gamma(0)", "D.start", "D.end", "gamma(lambda0)"] {
                rep.text(key, "unavailable");
            }
        }
    }
    Ok(rep)
}

fn table(
    config: &RunConfig,
    which: TableKind,
    nmax: usize,
    hmax: i64,
    grid: usize,
    lambda: Option<f64>,
    gamma: Option<&str>,
) -> Out {
    let p = params(config)?;
    let q = p.q();
    let mut rep = Report::new("table", &p);
    match which {
        TableKind::Delta => {
            bounded("nmax", nmax, MAX_N)?;
            rep.input("table", "delta");
            rep.input("nmax", nmax);
            for n in 0..=nmax {
                rep.exact(format!("n={n}"), p.delta(n), p.delta(n) as f64);
            }
        }
        TableKind::B => {
            bounded("nmax", nmax, MAX_N)?;
            bounded("hmax", hmax.unsigned_abs() as usize, MAX_N)?;
            rep.input("table", "b");
            rep.input("nmax", nmax);
            rep.input("hmax", hmax);
            for n in 0..=nmax {
                for h in -hmax.abs()..=hmax.abs() {
                    let b = b_closed(&p, n, h);
                    rep.exact(format!("n={n},h={h}"), b, b as f64);
                }
            }
        }
        TableKind::Phi => {
            bounded("nmax", nmax, MAX_N)?;
            rep.input("table", "phi");
            rep.input("nmax", nmax);
            match (gamma, lambda) {
                (Some(g), _) => {
                    rep.input("gamma", g);
                    let g = parse_algebraic(g, Some(q))?;
                    for (n, v) in spherical_phi(&p, g, nmax).phi.iter().enumerate() {
                        rep.value(format!("n={n}"), v);
                    }
                }
                (None, Some(l)) => {
                    rep.input("lambda", l);
                    let g = symgraph::spectral::gamma_of(&p, l)?;
                    for (n, v) in spherical_phi(&p, g, nmax).phi.iter().enumerate() {
                        rep.float(format!("n={n}"), *v);
                    }
                }
                (None, None) => {
                    return Err(Failure::Usage("table phi needs --lambda or --gamma".into()))
                }
            }
        }
        TableKind::C2 => {
            bounded("grid", grid, MAX_GRID)?;
            if grid == 0 {
                return Err(Failure::Usage("--grid must be positive".into()));
            }
            let tau = p.tau().ok_or(Error::SpectralUnavailable { q })?;
            rep.input("table", "c2");
            rep.input("grid", grid);
            for i in 0..=grid {
                let l = tau / 2.0 * i as f64 / grid as f64;
                rep.float(format!("lambda={l}"), c_inv_sq(&p, l)?);
            }
        }
    }
    Ok(rep)
}

fn cmd_abel(config: &RunConfig, f: &str, ray_word: Option<&str>) -> Out {
    let p = params(config)?;
    let f = radial(f, &p)?;
    let mut rep = Report::new("abel", &p);
    rep.input("f", strings(f.values()));
    let af = abel(&f);
    for (h, v) in af.values().iter().enumerate() {
        rep.value(format!("h={h}"), v);
    }
    if let Some(w) = ray_word {
        let ray = ray(Some(w), &p, 0, config.seed)?;
        rep.input("ray", ray.to_string());
        let via = abel_via_radon(&f, &ray)?;
        let radius = (via.len() / 2) as i64;
        let agree = via
            .iter()
            .enumerate()
            .all(|(i, v)| *v == af.at(i as i64 - radius));
        rep.diag("radon_agrees", agree);
    }
    Ok(rep)
}

fn abel_inv(config: &RunConfig, g: &str, method: &str) -> Out {
    let p = params(config)?;
    let g = even(g, &p)?;
    let registry = abel_inverses::<A>();
    let inv = registry.get(method)?;
    let mut rep = Report::new("abel-inv", &p);
    rep.input("g", strings(g.values()));
    rep.input("method", method);
    for (n, v) in inv.invert(&g).values().iter().enumerate() {
        rep.value(format!("n={n}"), v);
    }
    Ok(rep)
}

fn cmd_dual(config: &RunConfig, g: &str, nmax: Option<usize>) -> Out {
    let p = params(config)?;
    let g = even(g, &p)?;
    let n_max = nmax.unwrap_or(g.len().saturating_sub(1));
    let mut rep = Report::new("dual", &p);
    rep.input("g", strings(g.values()));
    rep.input("nmax", n_max);
    for (n, v) in dual_abel(&g, n_max).values().iter().enumerate() {
        rep.value(format!("n={n}"), v);
    }
    Ok(rep)
}

fn dual_inv(config: &RunConfig, f: &str, method: &str) -> Out {
    let p = params(config)?;
    let f = radial(f, &p)?;
    let registry = dual_abel_inverses::<A>();
    let inv = registry.get(method)?;
    let mut rep = Report::new("dual-inv", &p);
    rep.input("f", strings(f.values()));
    rep.input("method", method);
    for (h, v) in inv.invert(&f).values().iter().enumerate() {
        rep.value(format!("h={h}"), v);
    }
    Ok(rep)
}

fn spherical(config: &RunConfig, f: &str, lambda: Option<f64>, atom: bool) -> Out {
    let p = params(config)?;
    let f = radial(f, &p)?;
    let mut rep = Report::new("spherical", &p);
    rep.input("f", strings(f.values()));
    if atom {
        symgraph::spectral::require_param(&p, symgraph::spectral::SpectralParam::Atom)?;
        rep.input("lambda", "atom");
        rep.value("Hf", &spherical_transform_atom(&f)?);
    } else {
        let l =
            lambda.ok_or_else(|| Failure::Usage("spherical needs --lambda or --atom".into()))?;
        rep.input("lambda", l);
        let h = spherical_transform(&f, l)?;
        rep.value("Hf", &h);
    }
    Ok(rep)
}

fn transform(config: &RunConfig, f: &str, lambda: f64, ray_word: Option<&str>) -> Out {
    let p = params(config)?;
    p.require_spectral()?;
    let fv = vertex(f, &p)?;
    let ray = ray(ray_word, &p, fv.support_radius() + 2, config.seed)?;
    let mut rep = Report::new("transform", &p);
    rep.input("f", f);
    rep.input("lambda", lambda);
    rep.input("ray", ray.to_string());
    let v: Complex64 = helgason_transform(&fv, lambda, &ray)?;
    rep.value("re", &v.re);
    rep.value("im", &v.im);
    Ok(rep)
}

fn plancherel(config: &RunConfig, f: &str) -> Out {
    let p = params(config)?;
    let f = radial(f, &p)?;
    let mut rep = Report::new("plancherel", &p);
    rep.input("f", strings(f.values()));
    let r = plancherel_norm(&f, config.tol)?;
    rep.float("continuous", r.continuous);
    rep.float("atom", r.atom);
    rep.float("total", r.total());
    rep.float("norm_sq", radial_norm_sq(&f));
    rep.diag("quadrature_error", r.quadrature_error);
    Ok(rep)
}

fn helgason(config: &RunConfig, f: &str, depth: Option<usize>) -> Out {
    let p = params(config)?;
    let fv = vertex(f, &p)?;
    let depth = depth.unwrap_or(fv.support_radius() + 2);
    let mut rep = Report::new("helgason", &p);
    rep.input("f", f);
    rep.input("depth", depth);
    let r = helgason_plancherel(&fv, depth, config.tol)?;
    rep.float("total", r.total());
    rep.float("norm_sq", fv.l2_norm_sq());
    rep.diag("quadrature_error", r.quadrature_error);
    Ok(rep)
}

fn invert(
    config: &RunConfig,
    f: Option<&str>,
    vert: Option<&str>,
    at_word: Option<&str>,
    nmax: Option<usize>,
    depth: Option<usize>,
) -> Out {
    let p = params(config)?;
    let mut rep = Report::new("invert", &p);
    match (f, vert) {
        (Some(f), None) => {
            let f = radial(f, &p)?;
            let n_max = nmax.unwrap_or(f.len().saturating_sub(1));
            bounded("nmax", n_max, MAX_N)?;
            rep.input("f", strings(f.values()));
            let (vals, err) = invert_spherical(&f, n_max, config.tol)?;
            for (n, v) in vals.iter().enumerate() {
                rep.float(format!("n={n}"), *v);
            }
            rep.diag("quadrature_error", err);
        }
        (None, Some(v)) => {
            let fv = vertex(v, &p)?;
            let x = p.parse_word(at_word.expect("clap enforces --at"))?;
            let depth = depth.unwrap_or(fv.support_radius().max(x.len()) + 2);
            rep.input("vertex", v);
            rep.input("at", x.to_string());
            rep.input("depth", depth);
            let (val, err) = invert_helgason(&fv, &x, depth, config.tol)?;
            rep.value("re", &val.re);
            rep.value("im", &val.im);
            rep.diag("quadrature_error", err);
        }
        _ => return Err(Failure::Usage("invert needs --f or --vertex".into())),
    }
    Ok(rep)
}

fn ks_check(config: &RunConfig, f: &str, chi: &str) -> Out {
    let p = params(config)?;
    let fv = vertex(f, &p)?.to_f64();
    let chi = radial(chi, &p)?.to_f64();
    let mut rep = Report::new("ks-check", &p);
    rep.input("f", f);
    rep.input(
        "chi",
        Value::Array(chi.values().iter().map(|v| json!(v)).collect()),
    );
    let r = kunze_stein_check(&fv, &chi)?;
    rep.float("core", r.core);
    rep.float("young", r.young);
    rep.float("holder", r.holder);
    rep.float("worst", r.worst());
    if r.worst() > 1.0 + 1e-12 {
        rep.diag(
            "witness",
            json!({ "expected": "ratio <= 1", "got": r.worst() }),
        );
        return Err(Failure::Check(Box::new(rep)));
    }
    Ok(rep)
}

fn wave(
    config: &RunConfig,
    f: &str,
    g: &str,
    steps: usize,
    method: WaveMethod,
    at_word: Option<&str>,
    ball: usize,
) -> Out {
    let p = params(config)?;
    let data = CauchyData::new(vertex(f, &p)?, vertex(g, &p)?);
    let mut rep = Report::new("wave", &p);
    rep.input("f", f);
    rep.input("g", g);
    let points: Vec<(ReducedWord, i64)> = match at_word {
        Some(s) => vec![at(s, &p)?],
        None => {
            bounded("steps", steps, MAX_N)?;
            bounded("ball", ball, 4)?;
            p.ball(ball)
                .flat_map(|x| (-(steps as i64)..=steps as i64).map(move |n| (x.clone(), n)))
                .collect()
        }
    };
    let horizon = points
        .iter()
        .map(|(_, n)| n.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    bounded("|n|", horizon, 2 * MAX_N)?;
    rep.input("steps", horizon);
    let names = match method {
        WaveMethod::Closed => vec!["closed"],
        WaveMethod::Direct => vec!["direct"],
        WaveMethod::DualAbel => vec!["dual-abel"],
        WaveMethod::Both => vec!["closed", "direct"],
    };
    rep.input("method", names.join(","));
    let solvers = wave_solvers::<A>();
    let mut columns: Vec<Vec<A>> = Vec::new();
    for name in &names {
        let col = if *name == "direct" {
            let field = wave_direct(
                &data,
                &ReducedWord::identity(),
                points.iter().map(|(x, _)| x.len()).max().unwrap_or(0),
                horizon,
            );
            points
                .iter()
                .map(|(x, n)| field.get(x, *n))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            let s = solvers.get(name)?;
            let mut cache: std::collections::HashMap<ReducedWord, Vec<A>> =
                std::collections::HashMap::new();
            points
                .iter()
                .map(|(x, n)| {
                    let row = cache
                        .entry(x.clone())
                        .or_insert_with(|| s.solve(&data, x, horizon));
                    row[(horizon as i64 + n) as usize].clone()
                })
                .collect()
        };
        columns.push(col);
    }
    for (i, (x, n)) in points.iter().enumerate() {
        rep.value(format!("{x},{n}"), &columns[0][i]);
    }
    if method == WaveMethod::Both {
        let worst = columns[0]
            .iter()
            .zip(&columns[1])
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max);
        let exact_equal = columns[0] == columns[1];
        rep.diag("max_abs_discrepancy", worst);
        rep.diag("exact_equal", exact_equal);
        if !exact_equal {
            rep.diag(
                "witness",
                json!({ "expected": "closed = direct", "got": worst }),
            );
            return Err(Failure::Check(Box::new(rep)));
        }
    }
    Ok(rep)
}

fn verify(config: &RunConfig, suite: &str, fault: Option<&str>) -> Out {
    let grid = match (config.k, config.r) {
        (None, None) => default_grid(),
        _ => vec![params(config)?],
    };
    let vc = VerifyConfig {
        seed: config.seed,
        tol: 1e-6,
        fault: fault.map(str::parse).transpose()?,
    };
    let mut rep = Report::new("verify", &grid[0]);
    if grid.len() > 1 {
        rep.params.k = None;
        rep.params.r = None;
        rep.params.q = None;
        rep.input(
            "grid",
            grid.iter()
                .map(|p| json!([p.k(), p.r()]))
                .collect::<Vec<_>>(),
        );
    }
    rep.input("suite", suite);
    rep.input("seed", config.seed);
    if let Some(f) = fault {
        rep.input("inject_fault", f);
    }
    match run_suites(suite, &grid, &vc)? {
        Ok(outcomes) => {
            for o in outcomes {
                let key = format!("{}:k={},r={}", o.suite, o.k, o.r);
                match o.skipped {
                    Some(why) => rep.text(key, format!("skipped: {why}")),
                    None => rep.exact(key, format!("pass ({} checks)", o.checks), o.checks as f64),
                }
            }
            Ok(rep)
        }
        Err(w) => {
            rep.text(format!("{}:k={},r={}", w.suite, w.k, w.r), "fail");
            rep.diag(
                "witness",
                serde_json::to_value(&w).expect("witness serializes"),
            );
            Err(Failure::Check(Box::new(rep)))
        }
    }
}
