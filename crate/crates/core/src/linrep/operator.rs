use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite-dimensional coordinate space with a fixed orthonormal basis.
///
/// Graded spaces are truncations `span{e_x : |x| ≤ level}` whose basis is a
/// prefix of the global (length, shortlex) order, so the level-`n` space is
/// canonically included in the level-`m` space for `n ≤ m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Space {
    Graded { name: String, level: usize, dim: usize },
    /// Basis `i ⊗ j` sits at index `i * dim(right) + j`.
    Tensor(Box<Space>, Box<Space>),
    Flat { name: String, dim: usize },
}

impl Space {
    pub fn graded(name: impl Into<String>, level: usize, dim: usize) -> Self {
        Space::Graded {
            name: name.into(),
            level,
            dim,
        }
    }

    pub fn flat(name: impl Into<String>, dim: usize) -> Self {
        Space::Flat {
            name: name.into(),
            dim,
        }
    }

    pub fn tensor(a: &Space, b: &Space) -> Self {
        Space::Tensor(Box::new(a.clone()), Box::new(b.clone()))
    }

    pub fn dim(&self) -> usize {
        match self {
            Space::Graded { dim, .. } | Space::Flat { dim, .. } => *dim,
            Space::Tensor(a, b) => a.dim() * b.dim(),
        }
    }

    /// Whether `self` embeds in `other` by the canonical inclusion.
    pub fn embeds_in(&self, other: &Space) -> bool {
        match (self, other) {
            (
                Space::Graded { name, level, dim },
                Space::Graded {
                    name: n2,
                    level: l2,
                    dim: d2,
                },
            ) => name == n2 && level <= l2 && dim <= d2,
            (Space::Tensor(a, b), Space::Tensor(c, d)) => a.embeds_in(c) && b.embeds_in(d),
            (a, b) => a == b,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Graded { name, level, .. } => write!(f, "{name}≤{level}"),
            Space::Tensor(a, b) => write!(f, "({a})⊗({b})"),
            Space::Flat { name, .. } => write!(f, "{name}"),
        }
    }
}

/// A linear map between two [`Space`]s, stored column by column.
///
/// Entries are kept sorted by row with exact zeros dropped, so two operators
/// are equal exactly when they have the same spaces and the same entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    domain: Space,
    codomain: Space,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOperator {
    pub fn zero(domain: Space, codomain: Space) -> Self {
        let cols = vec![Vec::new(); domain.dim()];
        Self {
            domain,
            codomain,
            cols,
        }
    }

    pub fn identity(space: Space) -> Self {
        let cols = (0..space.dim())
            .map(|i| vec![(i, Complex64::new(1.0, 0.0))])
            .collect();
        Self {
            domain: space.clone(),
            codomain: space,
            cols,
        }
    }

    /// Canonical inclusion of `from` into a larger space.
    pub fn inclusion(from: &Space, to: &Space) -> Result<Self> {
        if from == to {
            return Ok(Self::identity(from.clone()));
        }
        match (from, to) {
            (Space::Graded { .. }, Space::Graded { .. }) if from.embeds_in(to) => {
                Self::from_triplets(
                    from.clone(),
                    to.clone(),
                    (0..from.dim()).map(|i| (i, i, Complex64::new(1.0, 0.0))),
                )
            }
            (Space::Tensor(a, b), Space::Tensor(c, d)) => {
                let left = Self::inclusion(a, c)?;
                let right = Self::inclusion(b, d)?;
                Ok(left.kron(&right))
            }
            _ => Err(Error::BasisMismatch(format!("{from} does not embed in {to}"))),
        }
    }

    /// Builds an operator from `(row, col, value)` triplets, summing
    /// duplicates and dropping zeros.
    pub fn from_triplets(
        domain: Space,
        codomain: Space,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self> {
        let (rows, ncols) = (codomain.dim(), domain.dim());
        let mut cols: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); ncols];
        for (r, c, v) in entries {
            if r >= rows || c >= ncols {
                return Err(Error::BasisMismatch(format!(
                    "entry ({r}, {c}) outside {rows}×{ncols}"
                )));
            }
            cols[c].push((r, v));
        }
        for col in &mut cols {
            normalize_column(col);
        }
        Ok(Self {
            domain,
            codomain,
            cols,
        })
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn nrows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn ncols(&self) -> usize {
        self.domain.dim()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex64)] {
        &self.cols[j]
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.cols[col][i].1)
            .unwrap_or_default()
    }

    /// Entries in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseOperator) -> Result<Self> {
        if rhs.codomain != self.domain {
            return Err(Error::BasisMismatch(format!(
                "cannot compose: {} → {} after {} → {}",
                self.domain, self.codomain, rhs.domain, rhs.codomain
            )));
        }
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for &(k, b) in col {
                    acc.extend(self.cols[k].iter().map(|&(r, a)| (r, a * b)));
                }
                normalize_column(&mut acc);
                acc
            })
            .collect();
        Ok(Self {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut cols = vec![Vec::new(); self.nrows()];
        for (r, c, v) in self.triplets() {
            cols[r].push((c, v.conj()));
        }
        for col in &mut cols {
            col.sort_by_key(|&(r, _)| r);
        }
        Self {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            cols,
        }
    }

    /// Kronecker product; `(A ⊗ B)(e_i ⊗ e_j) = A e_i ⊗ B e_j`.
    pub fn kron(&self, other: &SparseOperator) -> Self {
        let inner_rows = other.nrows();
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a_col in &self.cols {
            for b_col in &other.cols {
                let mut col = Vec::with_capacity(a_col.len() * b_col.len());
                for &(ra, va) in a_col {
                    for &(rb, vb) in b_col {
                        col.push((ra * inner_rows + rb, va * vb));
                    }
                }
                normalize_column(&mut col);
                cols.push(col);
            }
        }
        Self {
            domain: Space::tensor(&self.domain, &other.domain),
            codomain: Space::tensor(&self.codomain, &other.codomain),
            cols,
        }
    }

    pub fn add(&self, other: &SparseOperator) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::BasisMismatch(format!(
                "cannot add {} → {} and {} → {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut col: Vec<_> = a.iter().chain(b).copied().collect();
                normalize_column(&mut col);
                col
            })
            .collect();
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for col in &mut out.cols {
            for entry in col.iter_mut() {
                entry.1 *= c;
            }
            col.retain(|&(_, v)| v != Complex64::default());
        }
        out
    }

    /// Re-targets the codomain to a larger space via the canonical inclusion.
    pub fn widen_codomain(&self, to: &Space) -> Result<Self> {
        SparseOperator::inclusion(&self.codomain, to)?.compose(self)
    }

    /// Restricts the domain to a smaller space via the canonical inclusion.
    pub fn restrict_domain(&self, to: &Space) -> Result<Self> {
        self.compose(&SparseOperator::inclusion(to, &self.domain)?)
    }

    /// The block with the given rows and columns, relabelled onto new spaces.
    pub fn submatrix(
        &self,
        rows: &[usize],
        cols: &[usize],
        codomain: Space,
        domain: Space,
    ) -> Result<Self> {
        if rows.len() != codomain.dim() || cols.len() != domain.dim() {
            return Err(Error::BasisMismatch("submatrix index lists do not match spaces".into()));
        }
        let mut row_pos = vec![usize::MAX; self.nrows()];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let entries = cols.iter().enumerate().flat_map(|(j, &c)| {
            let row_pos = &row_pos;
            self.cols[c]
                .iter()
                .filter(move |&&(r, _)| row_pos[r] != usize::MAX)
                .map(move |&(r, v)| (row_pos[r], j, v))
        });
        Self::from_triplets(domain, codomain, entries.collect::<Vec<_>>())
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.ncols() {
            return Err(Error::BasisMismatch(format!(
                "vector of length {} for domain {}",
                v.len(),
                self.domain
            )));
        }
        let mut out = vec![Complex64::default(); self.nrows()];
        for (col, &x) in self.cols.iter().zip(v) {
            if x == Complex64::default() {
                continue;
            }
            for &(r, a) in col {
                out[r] += a * x;
            }
        }
        Ok(out)
    }

    /// Every entry equals 1 and no row or column holds more than one: the
    /// matrix of a partial injection of basis vectors.
    pub fn is_partial_isometry_pattern(&self) -> bool {
        let mut row_used = vec![false; self.nrows()];
        self.cols.iter().all(|col| match col.as_slice() {
            [] => true,
            [(row, v)] => *v == Complex64::new(1.0, 0.0) && !std::mem::replace(&mut row_used[*row], true),
            _ => false,
        })
    }

    /// Largest entrywise modulus of `self - other` (spaces must match).
    pub fn max_abs_diff(&self, other: &SparseOperator) -> Result<f64> {
        let diff = self.add(&other.scale(Complex64::new(-1.0, 0.0)))?;
        Ok(diff.triplets().map(|(_, _, v)| v.norm()).fold(0.0, f64::max))
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.nrows(), self.ncols());
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }
}

fn normalize_column(col: &mut Vec<(usize, Complex64)>) {
    col.sort_by_key(|&(r, _)| r);
    let mut out: Vec<(usize, Complex64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != Complex64::default());
    *col = out;
}

/// Operators serialize as a `[row, col, re, im]` triplet list.
impl Serialize for SparseOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.nnz()))?;
        for (r, c, v) in self.triplets() {
            seq.serialize_element(&(r, c, v.re, v.im))?;
        }
        seq.end()
    }
}

/// A vector in a [`Space`], with dense coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorInSpace {
    space: Space,
    coeffs: Vec<Complex64>,
}

impl VectorInSpace {
    pub fn new(space: Space, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::BasisMismatch(format!(
                "{} coefficients for {space} of dimension {}",
                coeffs.len(),
                space.dim()
            )));
        }
        Ok(Self { space, coeffs })
    }

    pub fn basis(space: Space, i: usize) -> Result<Self> {
        let mut coeffs = vec![Complex64::default(); space.dim()];
        *coeffs
            .get_mut(i)
            .ok_or_else(|| Error::BasisMismatch(format!("basis index {i} outside {space}")))? =
            Complex64::new(1.0, 0.0);
        Ok(Self { space, coeffs })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self, other⟩`, linear in the first slot.
    pub fn inner(&self, other: &VectorInSpace) -> Result<Complex64> {
        if self.space != other.space {
            return Err(Error::BasisMismatch(format!("{} vs {}", self.space, other.space)));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn apply(op: &SparseOperator, v: &VectorInSpace) -> Result<Self> {
        if op.domain() != &v.space {
            return Err(Error::BasisMismatch(format!(
                "operator on {} applied to vector in {}",
                op.domain(),
                v.space
            )));
        }
        Ok(Self {
            space: op.codomain().clone(),
            coeffs: op.apply(&v.coeffs)?,
        })
    }
}
