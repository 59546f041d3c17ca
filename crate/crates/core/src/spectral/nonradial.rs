//! Plancherel and inversion for functions that are not radial (`k ≤ r`).
//!
//! The boundary integral is a finite sum over the cylinders of a fixed depth
//! `m`: on each cylinder the Busemann function of every vertex of `B(o, m−1)`
//! is constant. Grouping the support of `f` by horocycle,
//! `f̂(λ, ω) = Σ_h Q^{(1/2+iλ)h} R_h(ω)` with `R_h(ω) = Σ_{ζ(x,ω)=h} f(x)`,
//! so the cylinder sum collapses to a small matrix that is independent of `λ`.

use num_complex::Complex64;

use crate::boundary::{busemann, cylinders};
use crate::error::{Error, Result};
use crate::group::{GraphParams, ReducedWord};
use crate::numerics::quadrature::integrate_vec;
use crate::numerics::Scalar;
use crate::vertex::VertexFun;

use super::functions::plancherel_density;
use super::transforms::SpectralReport;

fn require(params: &GraphParams, depth: usize, radius: usize) -> Result<()> {
    params.require_spectral()?;
    if params.k() > params.r() {
        return Err(Error::AtomUnsupported {
            k: params.k(),
            r: params.r(),
        });
    }
    if depth <= radius {
        return Err(Error::InsufficientDepth {
            needed: radius,
            got: depth,
        });
    }
    Ok(())
}

/// `M[h][h'] = Σ_ω ν(ω) R_h(ω) conj(R_{h'}(ω))` and, optionally,
/// `N[h][z] = Σ_ω ν(ω) R_h(ω) [ζ(x, ω) = z]` for an evaluation point `x`.
/// Horocycle indices are offset by `radius`.
struct CylinderMoments {
    radius: usize,
    m: Vec<Vec<Complex64>>,
    n: Vec<Vec<Complex64>>,
}

fn moments<S: Scalar>(
    f: &VertexFun<S>,
    x: Option<&ReducedWord>,
    depth: usize,
) -> Result<CylinderMoments> {
    let p = *f.params();
    let radius = f.support_radius().max(x.map_or(0, ReducedWord::len));
    let width = 2 * radius + 1;
    let support: Vec<(ReducedWord, Complex64)> =
        f.iter().map(|(w, v)| (w.clone(), v.to_complex())).collect();
    let nu = 1.0 / p.delta(depth) as f64;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); width]; width];
    let mut n = vec![vec![Complex64::new(0.0, 0.0); width]; width];
    let mut row = vec![Complex64::new(0.0, 0.0); width];
    for ray in cylinders(&p, depth) {
        row.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (w, v) in &support {
            row[(busemann(&p, w, &ray)? + radius as i64) as usize] += v;
        }
        for (h, rh) in row.iter().enumerate() {
            if rh.norm_sqr() == 0.0 {
                continue;
            }
            for (h2, rh2) in row.iter().enumerate() {
                m[h][h2] += rh * rh2.conj() * nu;
            }
        }
        if let Some(x) = x {
            let z = (busemann(&p, x, &ray)? + radius as i64) as usize;
            for (h, rh) in row.iter().enumerate() {
                n[h][z] += rh * nu;
            }
        }
    }
    Ok(CylinderMoments { radius, m, n })
}

/// `∫_0^{τ/2} ∫_Ω |f̂(λ, ω)|² dν(ω) dμ(λ)`, which equals `Σ_x |f(x)|²`.
pub fn helgason_plancherel<S: Scalar>(
    f: &VertexFun<S>,
    depth: usize,
    tol: f64,
) -> Result<SpectralReport> {
    let p = *f.params();
    require(&p, depth, f.support_radius())?;
    let mom = moments(f, None, depth)?;
    let q = p.q() as f64;
    let lnq = q.ln();
    let tau = p.tau().expect("spectral params have τ");
    let r = mom.radius as i64;
    let quad = integrate_vec(
        |l, out| {
            let mut acc = 0.0;
            for (i, row) in mom.m.iter().enumerate() {
                for (j, mij) in row.iter().enumerate() {
                    let (h, h2) = (i as i64 - r, j as i64 - r);
                    let phase = Complex64::from_polar(
                        q.powf((h + h2) as f64 / 2.0),
                        l * lnq * (h - h2) as f64,
                    );
                    acc += (mij * phase).re;
                }
            }
            out[0] = acc * plancherel_density(&p, l).expect("q checked");
        },
        0.0,
        tau / 2.0,
        1,
        tol,
    )?;
    Ok(SpectralReport {
        continuous: quad.values[0],
        atom: 0.0,
        quadrature_error: quad.error,
    })
}

/// `f(x) = ∫_0^{τ/2} ∫_Ω f̂(λ, ω) P(x, ω)^{1/2−iλ} dν(ω) dμ(λ)`.
///
/// Returns the complex value of the double integral and the achieved
/// quadrature error.
pub fn invert_helgason<S: Scalar>(
    f: &VertexFun<S>,
    x: &ReducedWord,
    depth: usize,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let p = *f.params();
    require(&p, depth, f.support_radius().max(x.len()))?;
    let mom = moments(f, Some(x), depth)?;
    let q = p.q() as f64;
    let lnq = q.ln();
    let tau = p.tau().expect("spectral params have τ");
    let r = mom.radius as i64;
    let quad = integrate_vec(
        |l, out| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, row) in mom.n.iter().enumerate() {
                for (j, nij) in row.iter().enumerate() {
                    if nij.norm_sqr() == 0.0 {
                        continue;
                    }
                    let (h, z) = (i as i64 - r, j as i64 - r);
                    acc += nij
                        * Complex64::from_polar(
                            q.powf((h + z) as f64 / 2.0),
                            l * lnq * (h - z) as f64,
                        );
                }
            }
            let w = plancherel_density(&p, l).expect("q checked");
            out[0] = acc.re * w;
            out[1] = acc.im * w;
        },
        0.0,
        tau / 2.0,
        2,
        tol,
    )?;
    Ok((Complex64::new(quad.values[0], quad.values[1]), quad.error))
}
