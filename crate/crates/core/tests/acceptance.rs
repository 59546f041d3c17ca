//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symgraph::boundary::{b_closed, BoundaryRay};
use symgraph::fixtures::{random_even, random_radial, random_vertex_fun};
use symgraph::numerics::q_half_power;
use symgraph::spectral::{
    fourier_z, helgason_plancherel, helgason_transform, invert_helgason, invert_spherical,
    kunze_stein_check, phi0_decay, phi_lambda, phi_oracle, plancherel_norm, radial_norm_sq,
    spherical_transform,
};
use symgraph::transforms::{
    abel, abel_inv, abel_inv_rearranged, dual_abel, dual_abel_closed, dual_abel_fn, dual_abel_inv,
    dual_abel_inv_recurrence, even_pairing, radial_pairing, schwartz_constant, HorocycleCounts,
    RadialSeq,
};
use symgraph::wave::{
    asgeirsson_check, double_sum_pointwise, wave_closed, wave_direct, wave_solvers, CauchyData,
    PhiProduct, WaveLift,
};
use symgraph::{AlgebraicValue, GraphParams, ReducedWord, Scalar, VertexFun};

type A = AlgebraicValue;
type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const SEED: u64 = 20_241_016;

fn grid() -> Vec<GraphParams> {
    (2..=4)
        .flat_map(|k| (2..=4).map(move |r| GraphParams::new(k, r).unwrap()))
        .collect()
}

fn spectral_grid() -> Vec<GraphParams> {
    grid().into_iter().filter(|p| p.q() >= 2).collect()
}

fn rng(p: &GraphParams, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ (u64::from(p.k()) << 40) ^ (u64::from(p.r()) << 32) ^ salt)
}

fn kr(p: &GraphParams) -> String {
    format!("(k,r)=({},{})", p.k(), p.r())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn two_rays(p: &GraphParams, depth: usize) -> Vec<BoundaryRay> {
    vec![
        BoundaryRay::alternating(depth),
        BoundaryRay::pseudorandom(p, depth, SEED),
    ]
}

/// 1. b(n,h) against brute-force horocycle ∩ sphere counts.
fn counting_lemma() -> Verdict {
    let start = Instant::now();
    let mut checks = 0;
    for p in grid() {
        for ray in two_rays(&p, 6) {
            let counts = HorocycleCounts::enumerate(&p, &ray, 5).map_err(|e| e.to_string())?;
            for n in 0..=5 {
                for h in -5..=5 {
                    ensure(counts.get(n, h) == b_closed(&p, n, h), || {
                        format!(
                            "{} ray {ray}: b({n},{h}) = {} but enumeration gives {}",
                            kr(&p),
                            b_closed(&p, n, h),
                            counts.get(n, h)
                        )
                    })?;
                    checks += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s, budget 10s"))?;
    Ok(format!(
        "{checks} exact matches over 9 (k,r) x 2 rays in {secs:.2}s"
    ))
}

/// 2. Af(h) = Q^{h/2} Rf(ω,h) along two rays.
fn abel_forward() -> Verdict {
    let mut checks = 0;
    for p in grid() {
        let mut rng = rng(&p, 2);
        let counts: Vec<_> = two_rays(&p, 6)
            .iter()
            .map(|ray| HorocycleCounts::enumerate(&p, ray, 5).unwrap())
            .collect();
        for trial in 0..20 {
            let f = random_radial(&p, trial % 6, &mut rng);
            let af = abel(&f);
            for (i, c) in counts.iter().enumerate() {
                for h in -5..=5i64 {
                    let via = q_half_power(p.q(), h) * c.radon(&f, h);
                    ensure(via == af.at(h), || {
                        format!(
                            "{} trial {trial} ray {i} h={h}: {} vs {}",
                            kr(&p),
                            af.at(h),
                            via
                        )
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checks} exact matches (20 f per (k,r), two rays each, so ray independence holds)"
    ))
}

/// 3. and 4. Abel round trips, both inverse routes, and the support corollary.
fn abel_round_trips() -> Verdict {
    let mut cases = 0;
    for p in grid() {
        let mut rng = rng(&p, 3);
        for trial in 0..50 {
            let radius = trial % 9;
            let f = random_radial(&p, radius, &mut rng);
            let af = abel(&f);
            let inv = abel_inv(&af);
            ensure(inv == f, || format!("{} trial {trial}: A⁻¹Af ≠ f", kr(&p)))?;
            ensure(abel_inv_rearranged(&af) == inv, || {
                format!("{} trial {trial}: inv and inv1 differ", kr(&p))
            })?;
            let g = random_even(&p, radius, &mut rng);
            let back = abel_inv(&g);
            ensure(abel(&back) == g, || {
                format!("{} trial {trial}: A A⁻¹g ≠ g", kr(&p))
            })?;
            ensure(abel_inv_rearranged(&g) == back, || {
                format!("{} trial {trial}: inv and inv1 differ on g", kr(&p))
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} cases, supports 0..=8, both directions, inv = inv1 exactly"
    ))
}

fn support_corollary() -> Verdict {
    let mut cases = 0;
    for p in grid() {
        let mut rng = rng(&p, 4);
        for trial in 0..50 {
            let f = random_radial(&p, trial % 9, &mut rng);
            ensure(abel(&f).support_radius() == f.support_radius(), || {
                format!(
                    "{} trial {trial}: supp Af = {:?}, supp f = {:?}",
                    kr(&p),
                    abel(&f).support_radius(),
                    f.support_radius()
                )
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} functions with nonzero top value"))
}

/// 5. ⟨A*g, f⟩ = ⟨g, Af⟩ and the closed form of A*.
fn duality() -> Verdict {
    let mut cases = 0;
    for p in grid() {
        let mut rng = rng(&p, 5);
        for trial in 0..50 {
            let f = random_radial(&p, trial % 7, &mut rng);
            let g = random_even(&p, (trial * 3) % 8, &mut rng);
            let n_max = f.len().max(g.len());
            let dg = dual_abel(&g, n_max);
            ensure(
                radial_pairing(&dg, &f) == even_pairing(&g, &abel(&f)),
                || format!("{} trial {trial}: pairing", kr(&p)),
            )?;
            ensure(dual_abel_closed(&g, n_max) == dg, || {
                format!("{} trial {trial}: closed A* differs", kr(&p))
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (f,g) pairs, adjointness and closed form exact"
    ))
}

/// 6. Dual round trips, closed and recurrence inverses.
fn dual_round_trips() -> Verdict {
    let mut cases = 0;
    for p in grid() {
        let mut rng = rng(&p, 6);
        for trial in 0..30 {
            let radius = trial % 9;
            let g = random_even(&p, radius, &mut rng);
            let back = dual_abel_inv(&dual_abel(&g, radius));
            ensure(back == g, || {
                format!("{} trial {trial}: (A*)⁻¹A*g ≠ g", kr(&p))
            })?;
            let f = random_radial(&p, radius, &mut rng);
            let h = dual_abel_inv(&f);
            ensure(dual_abel(&h, radius) == f, || {
                format!("{} trial {trial}: A*(A*)⁻¹f ≠ f", kr(&p))
            })?;
            ensure(dual_abel_inv_recurrence(&f) == h, || {
                format!("{} trial {trial}: closed and recurrence differ", kr(&p))
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} cases, supports 0..=8, closed = recurrence exactly"
    ))
}

/// 7. Hf = F(Af) and A*(Q^{iλ·}) = φ_λ.
fn spectral_bridge() -> Verdict {
    let mut worst = 0.0f64;
    let mut worst_phi = 0.0f64;
    for p in spectral_grid() {
        let mut rng = rng(&p, 7);
        let tau = p.tau().unwrap();
        for radius in 0..=6 {
            let f = random_radial(&p, radius, &mut rng);
            let af = abel(&f);
            for i in 0..64 {
                let l = tau * i as f64 / 64.0;
                let d = (spherical_transform(&f, l).unwrap() - fourier_z(&af, l).unwrap()).norm();
                worst = worst.max(d);
                ensure(d <= 1e-10, || {
                    format!("{} supp {radius} λ={l}: |Hf − F(Af)| = {d:e}", kr(&p))
                })?;
            }
        }
        for i in 0..8 {
            let l = tau * (2 * i + 1) as f64 / 32.0;
            let ln_q = (p.q() as f64).ln();
            let d = dual_abel_fn(&p, |h| Complex64::from_polar(1.0, l * h as f64 * ln_q), 10);
            let phi = phi_lambda(&p, l, 10).unwrap();
            for (n, ph) in phi.iter().enumerate() {
                let e = (d.at(n) - ph).norm();
                worst_phi = worst_phi.max(e);
                ensure(e <= 1e-12, || {
                    format!("{} λ={l} n={n}: |A*(Q^(iλ·)) − φ_λ| = {e:e}", kr(&p))
                })?;
            }
        }
    }
    Ok(format!("max |Hf − F(Af)| = {worst:.1e} (tol 1e-10), max |A*e_λ − φ_λ| = {worst_phi:.1e} (tol 1e-12)"))
}

/// 8. φ_λ from the recurrence against the cylinder-sum boundary integral.
fn spherical_oracle() -> Verdict {
    let mut worst = 0.0f64;
    for p in spectral_grid() {
        let tau = p.tau().unwrap();
        let lambdas: Vec<f64> = (0..8).map(|i| tau * (0.03 + 0.06 * i as f64)).collect();
        for n in 0..=4 {
            let x = p.sphere(n).last().unwrap();
            for &l in &lambdas {
                let phi = phi_lambda(&p, l, n).unwrap()[n];
                let oracle = phi_oracle(&p, l, &x, n + 1).unwrap();
                let e = (oracle - Complex64::new(phi, 0.0)).norm();
                worst = worst.max(e);
                ensure(e <= 1e-12, || {
                    format!("{} n={n} λ={l}: error {e:e}", kr(&p))
                })?;
            }
        }
    }
    Ok(format!(
        "max error {worst:.1e} (tol 1e-12), n <= 4, depth n+1, 8 λ per (k,r)"
    ))
}

/// 9. Plancherel with and without the atom.
fn plancherel() -> Verdict {
    let mut worst = 0.0f64;
    let mut points = Vec::new();
    for p in spectral_grid()
        .into_iter()
        .filter(|p| p.k() <= p.r() || (p.k(), p.r()) == (3, 2))
    {
        let mut rng = rng(&p, 9);
        let d = RadialSeq::<A>::delta_at(p, 0);
        let mass = plancherel_norm(&d, 1e-10).unwrap().total();
        ensure((mass - 1.0).abs() <= 1e-6, || {
            format!("{}: δ_o mass {mass}", kr(&p))
        })?;
        for radius in 0..=6 {
            let f = random_radial(&p, radius, &mut rng);
            let n2 = radial_norm_sq(&f);
            let rep = plancherel_norm(&f, 1e-10).unwrap();
            let rel = (rep.total() - n2).abs() / n2;
            worst = worst.max(rel);
            ensure(rel <= 1e-6, || {
                format!("{} supp {radius}: relative error {rel:e}", kr(&p))
            })?;
            if p.k() > p.r() {
                ensure(
                    rep.atom > 0.0 || rep.atom == 0.0 && f.values().iter().all(Scalar::is_zero),
                    || "atom unused".into(),
                )?;
            }
        }
        points.push(kr(&p));
    }
    Ok(format!(
        "max relative error {worst:.1e} (tol 1e-6) on {}; δ_o mass 1 within 1e-6",
        points.join(" ")
    ))
}

/// 10. Radial and nonradial inversion.
fn inversion() -> Verdict {
    let mut worst = 0.0f64;
    for p in spectral_grid() {
        let mut rng = rng(&p, 10);
        let f = random_radial(&p, 4, &mut rng);
        let (vals, _) = invert_spherical(&f, 4, 1e-10).unwrap();
        for (n, v) in vals.iter().enumerate() {
            let e = (v - f.at(n).to_f64()).abs();
            worst = worst.max(e);
            ensure(e <= 1e-6, || {
                format!("{} radial n={n}: error {e:e}", kr(&p))
            })?;
        }
    }
    let mut worst_nr = 0.0f64;
    for p in spectral_grid().into_iter().filter(|p| p.k() <= p.r()) {
        let mut rng = rng(&p, 11);
        let f = random_vertex_fun(&p, 2, 0.3, &mut rng);
        let n2 = f.l2_norm_sq();
        let rep = helgason_plancherel(&f, 4, 1e-10).unwrap();
        let rel = (rep.total() - n2).abs() / n2;
        worst_nr = worst_nr.max(rel);
        ensure(rel <= 1e-6, || {
            format!("{} Helgason Plancherel: relative error {rel:e}", kr(&p))
        })?;
        let mut targets: Vec<ReducedWord> = f.iter().take(3).map(|(x, _)| x.clone()).collect();
        targets.push(ReducedWord::identity());
        targets.push(p.sphere(2).last().unwrap());
        for x in targets {
            let (v, _) = invert_helgason(&f, &x, 4, 1e-10).unwrap();
            let e = (v - f.get(&x).to_complex()).norm();
            worst_nr = worst_nr.max(e);
            ensure(e <= 1e-6, || {
                format!("{} Helgason inversion at {x}: error {e:e}", kr(&p))
            })?;
        }
    }
    Ok(format!(
        "radial max error {worst:.1e}, nonradial max error {worst_nr:.1e} (tol 1e-6, depth 4)"
    ))
}

/// 11. (f ∗ χ)^ = f̂ · Hχ.
fn convolution_identity() -> Verdict {
    let mut worst = 0.0f64;
    for p in spectral_grid() {
        let mut rng = rng(&p, 12);
        let tau = p.tau().unwrap();
        let f = random_vertex_fun(&p, 1, 0.6, &mut rng);
        let chi = random_radial(&p, 2, &mut rng);
        let conv = f.convolve_radial(&chi);
        for ray in BoundaryRay::fixtures(&p, 5, SEED, 2) {
            for i in 0..6 {
                let l = tau * (i as f64 + 0.25) / 12.0;
                let lhs = helgason_transform(&conv, l, &ray).unwrap();
                let rhs = helgason_transform(&f, l, &ray).unwrap()
                    * spherical_transform(&chi, l).unwrap();
                let e = (lhs - rhs).norm();
                worst = worst.max(e);
                ensure(e <= 1e-10, || {
                    format!("{} ray {ray} λ={l}: error {e:e}", kr(&p))
                })?;
            }
        }
    }
    Ok(format!(
        "max error {worst:.1e} (tol 1e-10), 3 rays x 6 λ per (k,r)"
    ))
}

/// 12. Kunze–Stein core, Young and Hölder endpoints, φ₀ decay.
fn kunze_stein() -> Verdict {
    let mut worst = 0.0f64;
    for p in spectral_grid().into_iter().filter(|p| p.k() <= p.r()) {
        let mut rng = rng(&p, 13);
        for trial in 0..100 {
            let f = random_vertex_fun(&p, 2, 0.1, &mut rng).to_f64();
            if f.is_empty() {
                continue;
            }
            let len = 1 + trial % 3;
            let chi = RadialSeq::from_fn(p, len, |_| rng.gen_range(0.0..2.0));
            let rep = kunze_stein_check(&f, &chi).unwrap();
            worst = worst.max(rep.worst());
            ensure(rep.worst() <= 1.0 + 1e-12, || {
                format!("{} trial {trial}: {rep:?}", kr(&p))
            })?;
        }
    }
    let mut decay_max = 0.0f64;
    for p in spectral_grid() {
        let v = phi0_decay(&p, 30).unwrap();
        ensure(v.iter().all(|x| x.is_finite() && *x > 0.0), || {
            format!("{}: non-finite decay profile", kr(&p))
        })?;
        for n in 0..30 {
            ensure(v[n + 1] <= v[n] * (1.0 + 1e-9), || {
                format!("{}: φ₀ Q^(n/2)/(1+n) increases at n={n}", kr(&p))
            })?;
        }
        decay_max = decay_max.max(v.iter().cloned().fold(0.0, f64::max));
    }
    Ok(format!("worst ratio {worst:.6} (bound 1 + 1e-12); φ₀(n) Q^(n/2)/(1+n) <= {decay_max:.3} and nonincreasing for n <= 30"))
}

/// 13. Closed-form wave solutions against time stepping.
fn wave() -> Verdict {
    let mut regimes = [0usize; 3];
    let mut values = 0;
    for p in grid() {
        let mut rng = rng(&p, 14);
        for _ in 0..3 {
            let data = CauchyData::new(
                random_vertex_fun(&p, 3, 0.01, &mut rng),
                random_vertex_fun(&p, 3, 0.01, &mut rng),
            );
            let data = if data.f.is_empty() {
                CauchyData::new(VertexFun::delta(p, ReducedWord::identity()), data.g)
            } else {
                data
            };
            for x in [ReducedWord::identity(), p.sphere(2).nth(1).unwrap()] {
                let field = wave_direct(&data, &x, 0, 6);
                for n in -6..=6 {
                    let direct = field.get(&x, n).unwrap();
                    ensure(wave_closed(&data, &x, n) == direct, || {
                        format!("{} x={x} n={n}: closed ≠ direct", kr(&p))
                    })?;
                    values += 1;
                }
            }
            let even = wave_direct(
                &CauchyData::new(data.f.clone(), VertexFun::new(p)),
                &ReducedWord::identity(),
                0,
                6,
            );
            let odd = wave_direct(
                &CauchyData::new(VertexFun::new(p), data.g.clone()),
                &ReducedWord::identity(),
                0,
                6,
            );
            let o = ReducedWord::identity();
            for n in 1..=6 {
                ensure(
                    even.get(&o, n).unwrap() == even.get(&o, -n).unwrap(),
                    || format!("{}: g = 0 not even at n={n}", kr(&p)),
                )?;
                ensure(odd.get(&o, n).unwrap() == -odd.get(&o, -n).unwrap(), || {
                    format!("{}: f = 0 not odd at n={n}", kr(&p))
                })?;
            }
        }
        regimes[(p.k().cmp(&p.r()) as i8 + 1) as usize] += 1;
    }
    let p = GraphParams::new(3, 4).unwrap();
    let o = ReducedWord::identity();
    let data = CauchyData::new(VertexFun::<A>::delta(p, o.clone()), VertexFun::new(p));
    let spot = A::from_ratios((0, 1), (-1, 12), 6);
    for name in ["direct", "closed"] {
        let u = wave_solvers::<A>().get(name).unwrap().solve(&data, &o, 1)[2].clone();
        ensure(u == spot, || {
            format!("{name}: u(o,1) = {u}, expected -1/(2√6)")
        })?;
    }
    Ok(format!(
        "{values} values exact (k<r: {}, k=r: {}, k>r: {} parameter pairs), time symmetry exact, u(o,1) = -1/(2√6) on both paths",
        regimes[0], regimes[1], regimes[2]
    ))
}

/// 14. Ásgeirsson's double-mean symmetry.
fn asgeirsson() -> Verdict {
    let mut checks = 0;
    for p in grid() {
        let q = p.q();
        let x = ReducedWord::identity();
        let y = p.sphere(1).next().unwrap();
        for gamma in [
            A::from_ratios((1, 3), (0, 1), q),
            A::from_ratios((-2, 5), (0, 1), q),
        ] {
            let u = PhiProduct::new(p, gamma, 12);
            for m in 0..=4 {
                for n in 0..=4 {
                    let (a, b) = asgeirsson_check(&u, &x, &y, m, n).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("{} φ⊗φ m={m} n={n}", kr(&p)))?;
                    checks += 1;
                }
            }
            let (a, _) = asgeirsson_check(&u, &x, &y, 1, 2).unwrap();
            ensure(a == double_sum_pointwise(&u, &x, 1, &y, 2).unwrap(), || {
                "factorized sum differs".into()
            })?;
        }
        let mut rng = rng(&p, 15);
        let data = CauchyData::new(
            random_vertex_fun(&p, 1, 0.5, &mut rng),
            random_vertex_fun(&p, 1, 0.5, &mut rng),
        );
        let lift = WaveLift::new(&data, BoundaryRay::pseudorandom(&p, 10, SEED), &x, 4, 5);
        for m in 0..=4 {
            for n in 0..=4 {
                let (a, b) = asgeirsson_check(&lift, &x, &x, m, n)
                    .map_err(|e| format!("{} lift: {e}", kr(&p)))?;
                ensure(a == b, || {
                    format!("{} wave lift m={m} n={n}: {a} vs {b}", kr(&p))
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{checks} exact (m,n) symmetries for φ⊗φ (γ = 1/3, -2/5) and wave lifts, m,n <= 4"
    ))
}

/// 15. Schwartz-space constant of the Abel transform.
fn schwartz() -> Verdict {
    let mut worst = 0.0f64;
    for p in spectral_grid() {
        for pe in [1.0, 1.5, 2.0] {
            for m in 0..=2 {
                let a = schwartz_constant(&p, pe, m, 25);
                let b = schwartz_constant(&p, pe, m, 30);
                let rel = ((b - a) / a).abs();
                worst = worst.max(rel);
                ensure(a.is_finite() && rel <= 0.05, || {
                    format!("{} p={pe} m={m}: C(25)={a}, C(30)={b}", kr(&p))
                })?;
            }
        }
    }
    Ok(format!(
        "constants finite, max relative drift {worst:.2e} from N=25 to N=30 (tol 5%)"
    ))
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("counting lemma", counting_lemma),
        ("Abel forward", abel_forward),
        ("Abel round trips", abel_round_trips),
        ("support corollary", support_corollary),
        ("duality", duality),
        ("dual round trip", dual_round_trips),
        ("spectral bridge", spectral_bridge),
        ("spherical oracle", spherical_oracle),
        ("Plancherel", plancherel),
        ("inversion", inversion),
        ("convolution identity", convolution_identity),
        ("Kunze-Stein", kunze_stein),
        ("wave", wave),
        ("Asgeirsson", asgeirsson),
        ("Schwartz diagnostics", schwartz),
    ];
    let total = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
