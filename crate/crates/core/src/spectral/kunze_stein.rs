//! Kunze–Stein type inequalities for convolution by radial kernels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GraphParams;
use crate::transforms::RadialSeq;
use crate::vertex::VertexFun;

use super::functions::phi_lambda;

/// Ratios `lhs / rhs` of the checked inequalities; each must be at most 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KunzeSteinReport {
    /// `‖f∗χ‖₂ / (‖f‖₂ Σ_n χ(n) δ(n) φ₀(n))`.
    pub core: f64,
    /// Worst of `‖f∗χ‖_p / (‖f‖₁ ‖χ‖_p)` over `p ∈ {1, 2, ∞}`.
    pub young: f64,
    /// `‖f∗χ‖_∞ / (‖f‖₂ ‖χ‖₂)`.
    pub holder: f64,
}

impl KunzeSteinReport {
    pub fn worst(&self) -> f64 {
        self.core.max(self.young).max(self.holder)
    }
}

/// `‖χ‖_p` of a radial function on vertices (counting measure).
pub fn radial_lp_norm(chi: &RadialSeq<f64>, p: f64) -> f64 {
    let params = chi.params();
    if p.is_infinite() {
        return chi.values().iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    chi.values()
        .iter()
        .enumerate()
        .map(|(n, v)| v.abs().powf(p) * params.delta(n) as f64)
        .sum::<f64>()
        .powf(1.0 / p)
}

pub fn kunze_stein_check(f: &VertexFun<f64>, chi: &RadialSeq<f64>) -> Result<KunzeSteinReport> {
    let params = *f.params();
    params.require_spectral()?;
    if params.k() > params.r() {
        return Err(Error::AtomUnsupported {
            k: params.k(),
            r: params.r(),
        });
    }
    if chi.values().iter().any(|v| *v < 0.0) {
        return Err(Error::Precondition("kernel must be nonnegative".into()));
    }
    let conv = f.convolve_radial(chi);
    let phi0 = phi_lambda(&params, 0.0, chi.len().saturating_sub(1))?;
    let kernel_mass: f64 = chi
        .values()
        .iter()
        .enumerate()
        .map(|(n, v)| v * params.delta(n) as f64 * phi0[n])
        .sum();
    let core = conv.lp_norm(2.0) / (f.lp_norm(2.0) * kernel_mass);
    let young = [1.0, 2.0, f64::INFINITY]
        .iter()
        .map(|&p| conv.lp_norm(p) / (f.lp_norm(1.0) * radial_lp_norm(chi, p)))
        .fold(0.0, f64::max);
    let holder = conv.lp_norm(f64::INFINITY) / (f.lp_norm(2.0) * radial_lp_norm(chi, 2.0));
    Ok(KunzeSteinReport {
        core,
        young,
        holder,
    })
}

/// `φ₀(n) Q^{n/2} / (1+n)` for `n = 0..=n_max`; bounded by the constant in
/// `φ₀(n) ≤ C (1+n) Q^{−n/2}`.
pub fn phi0_decay(params: &GraphParams, n_max: usize) -> Result<Vec<f64>> {
    let q = params.q() as f64;
    Ok(phi_lambda(params, 0.0, n_max)?
        .iter()
        .enumerate()
        .map(|(n, v)| v * q.powf(n as f64 / 2.0) / (1.0 + n as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::random_vertex_fun;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ratios_bounded_by_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for (k, r) in [(2, 3), (3, 3), (3, 4)] {
            let g = GraphParams::new(k, r).unwrap();
            for _ in 0..5 {
                let f = random_vertex_fun(&g, 2, 0.3, &mut rng).to_f64();
                let chi = RadialSeq::from_fn(g, 3, |_| rng.gen_range(0.0..1.0));
                let rep = kunze_stein_check(&f, &chi).unwrap();
                assert!(rep.worst() <= 1.0 + 1e-12, "{rep:?}");
            }
        }
    }

    #[test]
    fn phi0_decay_is_nonincreasing() {
        for (k, r) in [(2, 3), (3, 4), (4, 4), (4, 2)] {
            let g = GraphParams::new(k, r).unwrap();
            let d = phi0_decay(&g, 30).unwrap();
            assert!(
                d.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)),
                "k={k} r={r}"
            );
        }
    }
}
