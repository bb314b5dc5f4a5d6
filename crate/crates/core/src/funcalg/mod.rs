//! Multiplier algebras of unitarily invariant kernels, truncated by degree.
//!
//! Polynomials of degree ≤ D span a subspace that is invariant under every
//! `M_φ*`; restricting `M_φ` to it gives exact finite matrices whose norms
//! increase to the multiplier norm. The circle action `Γ_ζ` is diagonal in
//! the monomial basis and grades everything by degree.

mod kernel;
mod poly;

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linrep::{operator_norm_with, NormOptions, Space, SparseOperator};

pub use kernel::{binomial, monomial_norm, multinomial, KernelFamily, KernelSpec};
pub use poly::{monomials_of_degree, root_of_unity, Multidx, PolyTerm, Polynomial};

/// Normalized monomials `z^α / ‖z^α‖` with `|α| ≤ D`, ordered by degree.
#[derive(Debug, Clone)]
pub struct GradedFockBasis {
    kernel: KernelSpec,
    degree: usize,
    monomials: Vec<Multidx>,
    norms: Vec<f64>,
    index: HashMap<Multidx, usize>,
}

impl GradedFockBasis {
    pub fn new(kernel: &KernelSpec, degree: usize) -> Result<Self> {
        kernel.ensure_degree(degree)?;
        let monomials: Vec<Multidx> = (0..=degree)
            .flat_map(|n| monomials_of_degree(kernel.nvars(), n))
            .collect();
        let norms = monomials
            .iter()
            .map(|a| monomial_norm(kernel, a))
            .collect::<Result<Vec<_>>>()?;
        let index = monomials.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Ok(Self {
            kernel: kernel.clone(),
            degree,
            monomials,
            norms,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Multidx] {
        &self.monomials
    }

    pub fn index_of(&self, a: &Multidx) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn norm(&self, i: usize) -> f64 {
        self.norms[i]
    }

    pub fn space(&self) -> Space {
        Space::graded(
            format!("H[{},d={}]", self.kernel.name(), self.kernel.nvars()),
            self.degree,
            self.dim(),
        )
    }
}

/// `M_φ` from degree ≤ `degree` into degree ≤ `degree + deg φ`:
/// `ẑ^α ↦ Σ_β φ_β (‖z^{α+β}‖ / ‖z^α‖) ẑ^{α+β}`.
pub fn mult_operator(kernel: &KernelSpec, phi: &Polynomial, degree: usize) -> Result<SparseOperator> {
    if phi.nvars() != kernel.nvars() {
        return Err(Error::InvalidParams(format!(
            "polynomial in {} variables for a kernel in {}",
            phi.nvars(),
            kernel.nvars()
        )));
    }
    let top = degree + phi.degree();
    let dom = GradedFockBasis::new(kernel, degree)?;
    let cod = GradedFockBasis::new(kernel, top)?;
    let mut entries = Vec::new();
    for (j, a) in dom.monomials().iter().enumerate() {
        for (b, c) in phi.terms() {
            let i = cod.index_of(&a.plus(b)).expect("degree within codomain");
            entries.push((i, j, c * (cod.norm(i) / dom.norm(j))));
        }
    }
    SparseOperator::from_triplets(dom.space(), cod.space(), entries)
}

/// `Γ_ζ = diag(ζ^{|α|})` on degree ≤ `degree`.
pub fn circle_operator(kernel: &KernelSpec, zeta: Complex64, degree: usize) -> Result<SparseOperator> {
    poly::check_unimodular(zeta)?;
    let basis = GradedFockBasis::new(kernel, degree)?;
    let entries: Vec<_> = basis
        .monomials()
        .iter()
        .enumerate()
        .map(|(i, a)| (i, i, poly::unimodular_pow(zeta, a.degree())))
        .collect();
    SparseOperator::from_triplets(basis.space(), basis.space(), entries)
}

/// Norm of `M_φ` restricted to polynomials of degree ≤ `degree`: a lower
/// bound for the multiplier norm, nondecreasing in `degree`.
pub fn multiplier_norm_lower(kernel: &KernelSpec, phi: &Polynomial, degree: usize) -> Result<f64> {
    multiplier_norm_lower_with(kernel, phi, degree, NormOptions::default())
}

pub fn multiplier_norm_lower_with(
    kernel: &KernelSpec,
    phi: &Polynomial,
    degree: usize,
    opts: NormOptions,
) -> Result<f64> {
    operator_norm_with(&mult_operator(kernel, phi, degree)?, opts)
}

/// `Γ_ζ* M_φ Γ_ζ` with the grades of [`mult_operator`].
pub fn conjugated_mult_operator(
    kernel: &KernelSpec,
    phi: &Polynomial,
    zeta: Complex64,
    degree: usize,
) -> Result<SparseOperator> {
    let m = mult_operator(kernel, phi, degree)?;
    let g_in = circle_operator(kernel, zeta, degree)?;
    let g_out = circle_operator(kernel, zeta, degree + phi.degree())?;
    g_out.adjoint().compose(&m)?.compose(&g_in)
}

/// The ℕ-grading `δ(φ) = Σ_n φ_n ⊗ λ_n`, plus the dimension of
/// `Σ_{n ≤ max F} A_n`.
#[derive(Debug, Clone, Serialize)]
pub struct NCoaction {
    /// `(n, φ_n)`; each `φ_n` is paired with `λ_n` on the ℕ leg.
    #[serde(skip)]
    pub parts: Vec<(usize, Polynomial)>,
    pub degrees: Vec<usize>,
    pub quotient_dim: usize,
}

pub fn n_coaction(phi: &Polynomial, f: &[usize]) -> NCoaction {
    let parts: Vec<(usize, Polynomial)> = phi.homogeneous_decompose().into_iter().collect();
    let quotient_dim = f
        .iter()
        .max()
        .map(|&top| graded_dimension(phi.nvars(), top))
        .unwrap_or(0);
    NCoaction {
        degrees: parts.iter().map(|(n, _)| *n).collect(),
        parts,
        quotient_dim,
    }
}

/// `Σ_{n ≤ top} C(n + d - 1, d - 1)`, the number of monomials of degree ≤ top.
pub fn graded_dimension(nvars: usize, top: usize) -> usize {
    (0..=top)
        .map(|n| binomial(n + nvars - 1, nvars - 1).round() as usize)
        .sum()
}

/// Dimension of each homogeneous piece up to `top`.
pub fn homogeneous_dims(nvars: usize, top: usize) -> BTreeMap<usize, usize> {
    (0..=top).map(|n| (n, monomials_of_degree(nvars, n).len())).collect()
}
