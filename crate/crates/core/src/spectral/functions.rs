//! Spherical functions, `γ(λ)` and the c-function.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::boundary::{busemann, cylinders};
use crate::error::{Error, Result};
use crate::group::{GraphParams, ReducedWord};
use crate::numerics::Scalar;

/// A point of the Plancherel support: `λ ∈ [0, τ/2]` or the atom `λ₀`
/// (present only when `k > r`), which is carried symbolically through
/// `γ(λ₀) = 1/(1−k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralParam {
    Continuous(f64),
    Atom,
}

/// `γ(λ) = (2√Q cos(λ ln Q) + σ) / (r(k−1))`.
pub fn gamma_of(params: &GraphParams, lambda: f64) -> Result<f64> {
    params.require_spectral()?;
    let q = params.q() as f64;
    Ok((2.0 * q.sqrt() * (lambda * q.ln()).cos() + params.sigma() as f64) / params.degree() as f64)
}

/// `γ(λ₀) = 1/(1−k)` when `k > r`.
pub fn atom_gamma(params: &GraphParams) -> Option<BigRational> {
    (params.k() > params.r())
        .then(|| BigRational::new(BigInt::from(1), BigInt::from(1 - i64::from(params.k()))))
}

/// Mass `(k−r)₊/k` of the atom.
pub fn atom_mass(params: &GraphParams) -> f64 {
    f64::from(params.k().saturating_sub(params.r())) / f64::from(params.k())
}

/// `γ` for either kind of spectral parameter.
pub fn gamma_at(params: &GraphParams, s: SpectralParam) -> Result<f64> {
    match s {
        SpectralParam::Continuous(l) => gamma_of(params, l),
        SpectralParam::Atom => {
            params.require_spectral()?;
            atom_gamma(params)
                .map(|g| num_traits::ToPrimitive::to_f64(&g).unwrap_or(f64::NAN))
                .ok_or(Error::AtomUnsupported {
                    k: params.k(),
                    r: params.r(),
                })
        }
    }
}

/// `φ(0..=N)` for the eigenvalue `γ` of the one-step averaging operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalTable<S> {
    pub gamma: S,
    pub phi: Vec<S>,
}

/// `φ(0) = 1`, `φ(1) = γ`, `φ(n+1) = [(r(k−1)γ − σ) φ(n) − φ(n−1)] / Q`.
pub fn spherical_phi<S: Scalar>(params: &GraphParams, gamma: S, n_max: usize) -> SphericalTable<S> {
    let q = params.q();
    let mut phi = vec![S::one(q)];
    if n_max >= 1 {
        phi.push(gamma.clone());
    }
    let lead =
        S::from_i64(params.degree() as i64, q) * gamma.clone() - S::from_i64(params.sigma(), q);
    let inv_q = S::from_ratio(1, q as i64, q);
    for n in 1..n_max {
        let next = (lead.clone() * phi[n].clone() - phi[n - 1].clone()) * inv_q.clone();
        phi.push(next);
    }
    SphericalTable { gamma, phi }
}

/// `φ_λ(0..=N)` as floats.
pub fn phi_lambda(params: &GraphParams, lambda: f64, n_max: usize) -> Result<Vec<f64>> {
    Ok(spherical_phi(params, gamma_of(params, lambda)?, n_max).phi)
}

/// `φ` at either kind of spectral parameter; exact at the atom when `S` is.
pub fn phi_at<S: Scalar>(params: &GraphParams, s: SpectralParam, n_max: usize) -> Result<Vec<S>> {
    let q = params.q();
    match s {
        SpectralParam::Continuous(l) => {
            let g = gamma_of(params, l)?;
            let g = S::from_rational(
                &BigRational::from_float(g)
                    .ok_or(Error::Precondition("non-finite gamma".into()))?,
                q,
            );
            Ok(spherical_phi(params, g, n_max).phi)
        }
        SpectralParam::Atom => {
            params.require_spectral()?;
            let g = atom_gamma(params).ok_or(Error::AtomUnsupported {
                k: params.k(),
                r: params.r(),
            })?;
            Ok(spherical_phi(params, S::from_rational(&g, q), n_max).phi)
        }
    }
}

/// Boundary integral `∫ P(x, ω)^{1/2+iλ} dν(ω)` evaluated as the exact sum
/// over the `δ(m)` cylinders of depth `m > |x|`, on each of which the
/// Poisson kernel is constant.
pub fn phi_oracle(
    params: &GraphParams,
    lambda: f64,
    x: &ReducedWord,
    depth: usize,
) -> Result<Complex64> {
    params.require_spectral()?;
    if depth <= x.len() {
        return Err(Error::InsufficientDepth {
            needed: x.len(),
            got: depth,
        });
    }
    let s = Complex64::new(0.5, lambda) * (params.q() as f64).ln();
    // Tally cylinders by Busemann value, then weight once per value.
    let mut tally = vec![0u128; 2 * x.len() + 1];
    for ray in cylinders(params, depth) {
        let z = busemann(params, x, &ray)?;
        tally[(z + x.len() as i64) as usize] += 1;
    }
    let nu = 1.0 / params.delta(depth) as f64;
    Ok(tally
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(i, c)| (s * (i as f64 - x.len() as f64)).exp() * (*c as f64 * nu))
        .sum())
}

/// The c-function
/// `c(λ) = (Q^{1/2}/(r(k−1))) (Q^{1/2+iλ} − (k−1) Q^{−1/2−iλ} + σ) / (Q^{iλ} − Q^{−iλ})`.
pub fn c_func(params: &GraphParams, lambda: f64) -> Result<Complex64> {
    params.require_spectral()?;
    let q = params.q() as f64;
    let z = Complex64::from_polar(1.0, lambda * q.ln());
    let den = z - z.inv();
    if den.norm() < 1e-14 {
        return Err(Error::Pole { lambda });
    }
    let num =
        q.sqrt() * z - (f64::from(params.k()) - 1.0) / q.sqrt() * z.inv() + params.sigma() as f64;
    Ok(q.sqrt() / params.degree() as f64 * num / den)
}

/// `|c(λ)|⁻²`, continuous on `[0, τ/2]` including the zeros at the poles of
/// `c`. With `z = Q^{iλ}`:
/// `|c|⁻² = (r(k−1))²/Q · |z−1|²|z+1|² / (Q |z − Q^{−1/2}|² |z + (k−1)Q^{−1/2}|²)`.
/// When `k = r` the factor `z + 1` cancels and the density stays positive at `τ/2`.
pub fn c_inv_sq(params: &GraphParams, lambda: f64) -> Result<f64> {
    params.require_spectral()?;
    let q = params.q() as f64;
    let km1 = f64::from(params.k()) - 1.0;
    let z = Complex64::from_polar(1.0, lambda * q.ln());
    let deg = params.degree() as f64;
    let lead = deg * deg / (q * q);
    let a = (z - 1.0).norm_sqr() / (z - 1.0 / q.sqrt()).norm_sqr();
    let b = if params.k() == params.r() {
        1.0
    } else {
        (z + 1.0).norm_sqr() / (z + km1 / q.sqrt()).norm_sqr()
    };
    Ok(lead * a * b)
}

/// Plancherel density on `[0, τ/2]`: `(1/2π)(Q ln Q/(r(k−1))) |c(λ)|⁻²`.
pub fn plancherel_density(params: &GraphParams, lambda: f64) -> Result<f64> {
    let q = params.q() as f64;
    Ok(
        q * q.ln() / (2.0 * std::f64::consts::PI * params.degree() as f64)
            * c_inv_sq(params, lambda)?,
    )
}
