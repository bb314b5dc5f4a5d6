//! Coactions `δ(λ_p) = λ_p ⊗ λ_{φ(p)}` induced by a controlled map
//! `φ: P → Q`, on formal elements and on graded tensor truncations.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linrep::{graded_space, lambda_into, Space, SparseOperator};
use crate::monoid::{left_divisors, right_divisors, ControlledMap, Element, EnumerationTable};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A finite combination `Σ c_p λ_p` over one enumerated monoid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgebraElement {
    coeffs: BTreeMap<Element, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(p: Element) -> Self {
        Self::from_terms([(p, ONE)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Element, Complex64)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, p: Element, c: Complex64) {
        let slot = self.coeffs.entry(p).or_default();
        *slot += c;
        if *slot == Complex64::default() {
            self.coeffs.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, p: Element) -> Complex64 {
        self.coeffs.get(&p).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Element, Complex64)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p, c);
        }
        out
    }

    /// `(Σ c_p λ_p)(Σ d_q λ_q) = Σ c_p d_q λ_{pq}`.
    pub fn multiply(&self, other: &AlgebraElement, table: &EnumerationTable) -> Result<Self> {
        let mut out = Self::zero();
        for (p, c) in self.terms() {
            for (q, d) in other.terms() {
                out.add_term(table.multiply(p, q)?, c * d);
            }
        }
        Ok(out)
    }

    /// Longest element in the support (0 for the zero element).
    pub fn max_len(&self, table: &EnumerationTable) -> usize {
        self.support().map(|p| table.length(p)).max().unwrap_or(0)
    }
}

/// A controlled map with certifiably finite fibers, ready to drive a
/// coaction.
#[derive(Debug, Clone)]
pub struct CoactionSpec {
    map: ControlledMap,
}

impl CoactionSpec {
    pub fn new(map: ControlledMap) -> Result<Self> {
        if map.min_image_len() == 0 && map.source().presentation().rank() > 0 {
            return Err(Error::IncompleteFiber {
                target: map.target().format(map.target().identity()),
                reason: "a generator maps to the identity".into(),
            });
        }
        Ok(Self { map })
    }

    pub fn map(&self) -> &ControlledMap {
        &self.map
    }

    pub fn source(&self) -> &EnumerationTable {
        self.map.source()
    }

    pub fn target(&self) -> &EnumerationTable {
        self.map.target()
    }
}

/// `δ(a) = Σ c_p λ_p ⊗ λ_{φ(p)}` from `P≤lp ⊗ Q≤lq` into the smallest tensor
/// truncation that holds every term.
pub fn delta_apply(
    spec: &CoactionSpec,
    a: &AlgebraElement,
    lp: usize,
    lq: usize,
) -> Result<SparseOperator> {
    let map = spec.map();
    let up = a.max_len(spec.source());
    let uq = a
        .support()
        .map(|p| Ok(map.target().length(map.apply(p)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    delta_apply_into(spec, a, (lp, lq), (lp + up, lq + uq))
}

/// As [`delta_apply`] with explicit codomain levels.
pub fn delta_apply_into(
    spec: &CoactionSpec,
    a: &AlgebraElement,
    (lp, lq): (usize, usize),
    (cp, cq): (usize, usize),
) -> Result<SparseOperator> {
    let (src, tgt) = (spec.source(), spec.target());
    let domain = Space::tensor(&graded_space(src, lp)?, &graded_space(tgt, lq)?);
    let codomain = Space::tensor(&graded_space(src, cp)?, &graded_space(tgt, cq)?);
    let mut out = SparseOperator::zero(domain, codomain);
    for (p, c) in a.terms() {
        let q = spec.map().apply(p)?;
        let term = lambda_into(src, p, lp, cp)?.kron(&lambda_into(tgt, q, lq, cq)?);
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// The grading of `a` by `φ`: `q ↦ a_q = Σ_{φ(p) = q} c_p λ_p`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpectralDecomposition {
    pub parts: BTreeMap<Element, AlgebraElement>,
}

impl SpectralDecomposition {
    /// `Σ_q a_q`.
    pub fn reconstruct(&self) -> AlgebraElement {
        self.parts
            .values()
            .fold(AlgebraElement::zero(), |acc, part| acc.add(part))
    }
}

pub fn spectral_decompose(a: &AlgebraElement, map: &ControlledMap) -> Result<SpectralDecomposition> {
    let mut parts: BTreeMap<Element, AlgebraElement> = BTreeMap::new();
    for (p, c) in a.terms() {
        parts.entry(map.apply(p)?).or_default().add_term(p, c);
    }
    Ok(SpectralDecomposition { parts })
}

/// The character `λ_q ↦ 1`.
pub fn apply_character(a: &AlgebraElement) -> Complex64 {
    a.terms().map(|(_, c)| c).sum()
}

/// `(id ⊗ χ) δ(a)`: apply `δ` leg by leg through the spectral
/// decomposition (each `a_q ↦ a_q ⊗ λ_q`), then send the second leg to the
/// scalar `χ(λ_q) = 1`.
pub fn id_tensor_character(a: &AlgebraElement, map: &ControlledMap) -> Result<AlgebraElement> {
    let decomp = spectral_decompose(a, map)?;
    let mut out = AlgebraElement::zero();
    for (&q, part) in &decomp.parts {
        let chi = apply_character(&AlgebraElement::monomial(q));
        for (p, c) in part.terms() {
            out.add_term(p, c * chi);
        }
    }
    Ok(out)
}

/// The Fell intertwiner `W(e_p ⊗ e_k) = e_p ⊗ e_{φ(p)k}` with its checks.
#[derive(Debug, Clone, Serialize)]
pub struct FellReport {
    #[serde(skip)]
    pub w: SparseOperator,
    /// `W*W = I`, entrywise.
    pub isometry: bool,
    /// Per generator `p`: `W(λ_p ⊗ I) = (λ_p ⊗ λ_{φ(p)})W`, entrywise.
    pub intertwines: BTreeMap<String, bool>,
}

impl FellReport {
    pub fn all_pass(&self) -> bool {
        self.isometry && self.intertwines.values().all(|&ok| ok)
    }
}

/// `W` from `P≤lp ⊗ Q≤lq` into `P≤lp ⊗ Q≤(lq + lp·m)`, `m` the longest
/// generator image.
pub fn fell_w(map: &ControlledMap, lp: usize, lq: usize) -> Result<SparseOperator> {
    let (src, tgt) = (map.source(), map.target());
    src.ensure_cancellative()?;
    tgt.ensure_cancellative()?;
    let cq = lq + lp * map.max_image_len();
    let dim_q_in = tgt.count_upto(lq);
    let dim_q_out = tgt.count_upto(cq);
    let p_space = graded_space(src, lp)?;
    let domain = Space::tensor(&p_space, &graded_space(tgt, lq)?);
    let codomain = Space::tensor(&p_space, &graded_space(tgt, cq)?);
    let mut entries = Vec::with_capacity(domain.dim());
    for p in src.elements_upto(lp) {
        let v = map.apply(p)?;
        for k in tgt.elements_upto(lq) {
            let vk = tgt.multiply(v, k)?;
            entries.push((
                p.index() * dim_q_out + vk.index(),
                p.index() * dim_q_in + k.index(),
                ONE,
            ));
        }
    }
    SparseOperator::from_triplets(domain, codomain, entries)
}

/// Builds `W` and checks the isometry and intertwining identities for every
/// generator of `P`.
pub fn fell_intertwiner(map: &ControlledMap, lp: usize, lq: usize) -> Result<FellReport> {
    let (src, tgt) = (map.source(), map.target());
    let m = map.max_image_len();
    src.ensure_depth(lp + 1)?;
    tgt.ensure_depth(lq + (lp + 1) * m)?;

    let w = fell_w(map, lp, lq)?;
    let isometry = w.adjoint().compose(&w)? == SparseOperator::identity(w.domain().clone());

    let w_up = fell_w(map, lp + 1, lq)?;
    let id_q = SparseOperator::identity(graded_space(tgt, lq)?);
    let mut intertwines = BTreeMap::new();
    for (g, &image) in src.generators().into_iter().zip(map.generator_images()) {
        let lhs = w_up.compose(&lambda_into(src, g, lp, lp + 1)?.kron(&id_q))?;
        let cq = lq + lp * m;
        let vp = lambda_into(tgt, image, cq, lq + (lp + 1) * m)?;
        let rhs = lambda_into(src, g, lp, lp + 1)?.kron(&vp).compose(&w)?;
        intertwines.insert(src.format(g), lhs == rhs);
    }
    Ok(FellReport {
        w,
        isometry,
        intertwines,
    })
}

/// `{p ∈ P : φ(p) ∈ ∪_{q ∈ F} ∪_{r ∈ R_q} L_r}`. Its size bounds the
/// dimension of the quotient `Q_F`.
pub fn qf_spanning_set(spec: &CoactionSpec, f: &[Element]) -> Result<BTreeSet<Element>> {
    let tgt = spec.target();
    let targets: BTreeSet<Element> = f
        .iter()
        .flat_map(|&q| right_divisors(tgt, q))
        .flat_map(|r| left_divisors(tgt, r))
        .collect();
    let mut out = BTreeSet::new();
    for t in targets {
        out.extend(spec.map().fiber(t)?);
    }
    Ok(out)
}
