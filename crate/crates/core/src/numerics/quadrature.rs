//! Composite Gauss–Legendre quadrature with panel doubling.

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Roots of `P_n` by Newton's method from the Chebyshev-like initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let j = j as f64;
        let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration: value plus the difference between the
/// last two refinement levels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

/// Vector-valued counterpart of [`Quadrature`].
#[derive(Clone, Debug, PartialEq)]
pub struct VecQuadrature {
    pub values: Vec<f64>,
    pub error: f64,
    pub panels: usize,
}

/// Integrates a vector-valued integrand on `[a, b]`.
///
/// Panels double until every component of two successive levels agrees to
/// `tol · max(1, |I|)`. Fails with the achieved error after 12 doublings.
pub fn integrate_vec<F>(f: F, a: f64, b: f64, dim: usize, tol: f64) -> Result<VecQuadrature>
where
    F: Fn(f64, &mut [f64]),
{
    const ORDER: usize = 16;
    const MAX_LEVEL: u32 = 12;
    let (nodes, weights) = gauss_legendre(ORDER);
    let mut buf = vec![0.0; dim];
    let mut level_sum = |panels: usize| -> Vec<f64> {
        let h = (b - a) / panels as f64;
        let mut acc = vec![0.0; dim];
        for p in 0..panels {
            let lo = a + h * p as f64;
            for (x, w) in nodes.iter().zip(&weights) {
                let t = lo + 0.5 * h * (x + 1.0);
                buf.iter_mut().for_each(|v| *v = 0.0);
                f(t, &mut buf);
                for (s, v) in acc.iter_mut().zip(&buf) {
                    *s += 0.5 * h * w * v;
                }
            }
        }
        acc
    };
    let mut panels = 1;
    let mut prev = level_sum(panels);
    let mut err = f64::INFINITY;
    for _ in 0..MAX_LEVEL {
        panels *= 2;
        let cur = level_sum(panels);
        err = prev
            .iter()
            .zip(&cur)
            .map(|(p, c)| (p - c).abs() / c.abs().max(1.0))
            .fold(0.0, f64::max);
        prev = cur;
        if err <= tol {
            return Ok(VecQuadrature {
                values: prev,
                error: err,
                panels,
            });
        }
    }
    Err(Error::Quadrature { achieved: err, tol })
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    let r = integrate_vec(|t, out| out[0] = f(t), a, b, 1, tol)?;
    Ok(Quadrature {
        value: r.values[0],
        error: r.error,
        panels: r.panels,
    })
}
