//! Fourier transform on `Z`, spherical and Helgason transforms, Plancherel
//! and inversion formulas.

use num_complex::Complex64;

use crate::boundary::{poisson_pow, BoundaryRay};
use crate::error::{Error, Result};
use crate::group::GraphParams;
use crate::numerics::quadrature::integrate_vec;
use crate::numerics::Scalar;
use crate::transforms::{EvenSeq, RadialSeq};
use crate::vertex::VertexFun;

use super::functions::{atom_mass, phi_at, phi_lambda, plancherel_density, SpectralParam};

/// `Fg(λ) = Σ_n Q^{inλ} g(n) = g(0) + 2 Σ_{n≥1} cos(nλ ln Q) g(n)`.
pub fn fourier_z<S: Scalar>(g: &EvenSeq<S>, lambda: f64) -> Result<Complex64> {
    g.params().require_spectral()?;
    let t = lambda * (g.q() as f64).ln();
    Ok(g.values()
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let w = if n == 0 {
                1.0
            } else {
                2.0 * (n as f64 * t).cos()
            };
            v.to_complex() * w
        })
        .sum())
}

/// Recovers `g(0..=m_max)` from an even, `τ`-periodic `F` by
/// `g(n) = (2/τ) ∫_0^{τ/2} F(λ) cos(nλ ln Q) dλ`.
pub fn fourier_z_inv<F>(
    params: &GraphParams,
    transform: F,
    m_max: usize,
    tol: f64,
) -> Result<(EvenSeq<Complex64>, f64)>
where
    F: Fn(f64) -> Complex64,
{
    params.require_spectral()?;
    let tau = params.tau().expect("spectral params have τ");
    let lnq = (params.q() as f64).ln();
    let dim = 2 * (m_max + 1);
    let quad = integrate_vec(
        |l, out| {
            let v = transform(l);
            for n in 0..=m_max {
                let c = (n as f64 * l * lnq).cos();
                out[2 * n] = v.re * c;
                out[2 * n + 1] = v.im * c;
            }
        },
        0.0,
        tau / 2.0,
        dim,
        tol,
    )?;
    let values = (0..=m_max)
        .map(|n| Complex64::new(quad.values[2 * n], quad.values[2 * n + 1]) * (2.0 / tau))
        .collect();
    Ok((EvenSeq::new(*params, values), quad.error))
}

/// `Hf(λ) = Σ_n f(n) φ_λ(n) δ(n)`.
pub fn spherical_transform<S: Scalar>(f: &RadialSeq<S>, lambda: f64) -> Result<Complex64> {
    let p = f.params();
    let phi = phi_lambda(p, lambda, f.len().saturating_sub(1))?;
    Ok(f.values()
        .iter()
        .enumerate()
        .map(|(n, v)| v.to_complex() * phi[n] * p.delta(n) as f64)
        .sum())
}

/// `Hf(λ₀)` computed in the value field of `f` (exact for exact input).
pub fn spherical_transform_atom<S: Scalar>(f: &RadialSeq<S>) -> Result<S> {
    let p = f.params();
    let q = p.q();
    let phi = phi_at::<S>(p, SpectralParam::Atom, f.len().saturating_sub(1))?;
    Ok(f.values()
        .iter()
        .enumerate()
        .fold(S::zero(q), |acc, (n, v)| {
            acc + v.clone() * phi[n].clone() * S::from_rational(&p.delta_rational(n), q)
        }))
}

/// `f̂(λ, ω) = Σ_x f(x) P(x, ω)^{1/2+iλ}`.
pub fn helgason_transform<S: Scalar>(
    f: &VertexFun<S>,
    lambda: f64,
    ray: &BoundaryRay,
) -> Result<Complex64> {
    let s = Complex64::new(0.5, lambda);
    f.iter().try_fold(Complex64::new(0.0, 0.0), |acc, (x, v)| {
        Ok(acc + v.to_complex() * poisson_pow(f.params(), x, ray, s)?)
    })
}

/// Outcome of a quadrature-based spectral computation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    /// Continuous-spectrum part.
    pub continuous: f64,
    /// Atom contribution (zero when `k ≤ r`).
    pub atom: f64,
    /// Achieved relative quadrature error.
    pub quadrature_error: f64,
}

impl SpectralReport {
    pub fn total(&self) -> f64 {
        self.continuous + self.atom
    }
}

/// `∫_0^{τ/2} |Hf(λ)|² dμ(λ) + (k−r)₊/k |Hf(λ₀)|²`, which equals `‖f‖²`.
pub fn plancherel_norm<S: Scalar>(f: &RadialSeq<S>, tol: f64) -> Result<SpectralReport> {
    let p = *f.params();
    p.require_spectral()?;
    let tau = p.tau().expect("spectral params have τ");
    let quad = integrate_vec(
        |l, out| {
            let h = spherical_transform(f, l).expect("q checked");
            out[0] = h.norm_sqr() * plancherel_density(&p, l).expect("q checked");
        },
        0.0,
        tau / 2.0,
        1,
        tol,
    )?;
    let atom = if p.k() > p.r() {
        atom_mass(&p) * spherical_transform_atom(f)?.to_complex().norm_sqr()
    } else {
        0.0
    };
    Ok(SpectralReport {
        continuous: quad.values[0],
        atom,
        quadrature_error: quad.error,
    })
}

/// `‖f‖² = Σ_n |f(n)|² δ(n)`.
pub fn radial_norm_sq<S: Scalar>(f: &RadialSeq<S>) -> f64 {
    let p = f.params();
    f.values()
        .iter()
        .enumerate()
        .map(|(n, v)| v.to_complex().norm_sqr() * p.delta(n) as f64)
        .sum()
}

/// Spherical inversion
/// `f(n) = ∫_0^{τ/2} Hf(λ) φ_λ(n) dμ(λ) + (k−r)₊/k Hf(λ₀) φ_{λ₀}(n)`
/// for `n = 0..=n_max`. Returns the values and the achieved quadrature error.
pub fn invert_spherical<S: Scalar>(
    f: &RadialSeq<S>,
    n_max: usize,
    tol: f64,
) -> Result<(Vec<f64>, f64)> {
    let p = *f.params();
    p.require_spectral()?;
    let tau = p.tau().expect("spectral params have τ");
    let quad = integrate_vec(
        |l, out| {
            let h = spherical_transform(f, l).expect("q checked").re;
            let w = plancherel_density(&p, l).expect("q checked");
            let phi = phi_lambda(&p, l, n_max).expect("q checked");
            for (o, ph) in out.iter_mut().zip(&phi) {
                *o = h * ph * w;
            }
        },
        0.0,
        tau / 2.0,
        n_max + 1,
        tol,
    )?;
    let mut values = quad.values;
    if p.k() > p.r() {
        let h = spherical_transform_atom(f)?.to_complex().re;
        let phi = phi_at::<f64>(&p, SpectralParam::Atom, n_max)?;
        for (v, ph) in values.iter_mut().zip(&phi) {
            *v += atom_mass(&p) * h * ph;
        }
    }
    Ok((values, quad.error))
}

/// Checks that the requested spectral point exists for these parameters.
pub fn require_param(params: &GraphParams, s: SpectralParam) -> Result<()> {
    params.require_spectral()?;
    if s == SpectralParam::Atom && params.k() <= params.r() {
        return Err(Error::AtomUnsupported {
            k: params.k(),
            r: params.r(),
        });
    }
    Ok(())
}
