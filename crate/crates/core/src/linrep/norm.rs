use num_complex::Complex64;

use crate::error::{Error, Result};

use super::operator::SparseOperator;

#[derive(Debug, Clone, Copy)]
pub struct NormOptions {
    /// Relative tolerance for the iterative path.
    pub tol: f64,
    /// Matrices with both sides below this use a dense SVD.
    pub dense_limit: usize,
    pub max_iter: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            dense_limit: 2000,
            max_iter: 50_000,
        }
    }
}

/// Largest singular value with default options.
pub fn operator_norm(op: &SparseOperator) -> Result<f64> {
    operator_norm_with(op, NormOptions::default())
}

pub fn operator_norm_with(op: &SparseOperator, opts: NormOptions) -> Result<f64> {
    if op.is_zero() {
        return Ok(0.0);
    }
    if op.nrows() < opts.dense_limit && op.ncols() < opts.dense_limit {
        let svd = op.to_dense().svd(false, false);
        return Ok(svd.singular_values.iter().cloned().fold(0.0, f64::max));
    }
    power_iteration(op, opts)
}

/// Power iteration on `A*A`.
fn power_iteration(op: &SparseOperator, opts: NormOptions) -> Result<f64> {
    let adj = op.adjoint();
    let n = op.ncols();
    // fixed, non-symmetric start so the top singular vector is not missed
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + (i % 7) as f64 * 0.1, (i % 3) as f64 * 0.05))
        .collect();
    normalize(&mut v);
    let mut estimate = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let w = adj.apply(&op.apply(&v)?)?;
        let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - a * rayleigh).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let mut next = w;
        let len = normalize(&mut next);
        if len == 0.0 {
            return Ok(0.0);
        }
        let converged = (rayleigh - estimate).abs() <= opts.tol * rayleigh.abs()
            && residual <= opts.tol.sqrt() * rayleigh.abs();
        estimate = rayleigh;
        v = next;
        if converged {
            return Ok(estimate.max(0.0).sqrt());
        }
    }
    Err(Error::NoConvergence { residual })
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let len = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if len > 0.0 {
        for c in v.iter_mut() {
            *c /= len;
        }
    }
    len
}
