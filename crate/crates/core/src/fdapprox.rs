//! Compressions of the left regular representation to the divisor
//! subspaces `Y_F = span{e_r : r ∈ R_p, p ∈ F}`.
//!
//! `Y_F` is invariant under every `λ_s*`, so `a ↦ Q_F a Q_F` is a
//! representation with finite-dimensional range. These compressions
//! converge to the identity representation by stabilising: once `F`
//! contains `sq`, `π_F(λ_s) e_q = e_{sq}` exactly.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linrep::{lambda, lambda_adjoint, Space, SparseOperator};
use crate::monoid::{left_divisors, right_divisors, Element, EnumerationTable};

/// The coinvariant subspace `Y_F` with its basis `∪_{p ∈ F} R_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSubspace {
    generators: Vec<Element>,
    basis: Vec<Element>,
    max_len: usize,
    label: String,
}

impl DivisorSubspace {
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Sorted basis elements (global basis order).
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Longest element in the basis, i.e. `max_{p ∈ F} |p|`.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn contains(&self, e: Element) -> bool {
        self.basis.binary_search(&e).is_ok()
    }

    pub fn position(&self, e: Element) -> Option<usize> {
        self.basis.binary_search(&e).ok()
    }

    pub fn space(&self) -> Space {
        Space::flat(self.label.clone(), self.dim())
    }

    fn indices(&self) -> Vec<usize> {
        self.basis.iter().map(|e| e.index()).collect()
    }
}

/// Builds `Y_F`.
pub fn build_y(table: &EnumerationTable, f: &[Element]) -> Result<DivisorSubspace> {
    if f.is_empty() {
        return Err(Error::InvalidParams("F must be nonempty".into()));
    }
    if let Some(bad) = f.iter().find(|e| e.index() >= table.len()) {
        return Err(Error::InvalidParams(format!(
            "element #{} outside the table",
            bad.index()
        )));
    }
    let mut gens: Vec<Element> = f.to_vec();
    gens.sort();
    gens.dedup();
    let basis: BTreeSet<Element> = gens
        .iter()
        .flat_map(|&p| right_divisors(table, p))
        .collect();
    let max_len = gens.iter().map(|&p| table.length(p)).max().unwrap_or(0);
    let names: Vec<String> = gens.iter().map(|&p| table.format(p)).collect();
    Ok(DivisorSubspace {
        generators: gens,
        basis: basis.into_iter().collect(),
        max_len,
        label: format!("Y[{}]{{{}}}", table.name(), names.join(",")),
    })
}

/// `π_F(λ_s) = Q_F λ_s Q_F` restricted to `Y_F`, computed by compressing
/// the graded matrix of `λ_s`.
pub fn pi_f(table: &EnumerationTable, y: &DivisorSubspace, s: Element) -> Result<SparseOperator> {
    let full = lambda(table, s, y.max_len())?;
    let idx = y.indices();
    full.submatrix(&idx, &idx, y.space(), y.space())
}

/// `Q_F λ_s* Q_F` restricted to `Y_F`.
pub fn pi_f_adjoint(
    table: &EnumerationTable,
    y: &DivisorSubspace,
    s: Element,
) -> Result<SparseOperator> {
    let full = lambda_adjoint(table, s, y.max_len())?;
    let idx = y.indices();
    full.submatrix(&idx, &idx, y.space(), y.space())
}

/// `π_F` as a map from monoid elements to matrices on `Y_F`.
#[derive(Debug, Clone)]
pub struct CompressionRep<'a> {
    table: &'a EnumerationTable,
    subspace: DivisorSubspace,
}

impl<'a> CompressionRep<'a> {
    pub fn new(table: &'a EnumerationTable, f: &[Element]) -> Result<Self> {
        Ok(Self {
            table,
            subspace: build_y(table, f)?,
        })
    }

    pub fn subspace(&self) -> &DivisorSubspace {
        &self.subspace
    }

    pub fn matrix(&self, s: Element) -> Result<SparseOperator> {
        pi_f(self.table, &self.subspace, s)
    }

    pub fn adjoint_matrix(&self, s: Element) -> Result<SparseOperator> {
        pi_f_adjoint(self.table, &self.subspace, s)
    }
}

/// `∪_{p ∈ F} ∪_{r ∈ R_p} L_r`, the elements not killed by `π_F`.
pub fn support_set(table: &EnumerationTable, y: &DivisorSubspace) -> BTreeSet<Element> {
    y.basis()
        .iter()
        .flat_map(|&r| left_divisors(table, r))
        .collect()
}

/// `{s : |s| ≤ bound, π_F(λ_s) = 0}`, computed from the matrices and from
/// the divisor-set formula; the two must agree.
pub fn kernel_set(
    table: &EnumerationTable,
    f: &[Element],
    bound: usize,
) -> Result<BTreeSet<Element>> {
    let y = build_y(table, f)?;
    table.ensure_depth(bound)?;
    let mut by_matrix = BTreeSet::new();
    for s in table.elements_upto(bound) {
        if pi_f(table, &y, s)?.is_zero() {
            by_matrix.insert(s);
        }
    }
    let alive = support_set(table, &y);
    let by_formula: BTreeSet<Element> = table
        .elements_upto(bound)
        .filter(|s| !alive.contains(s))
        .collect();
    if by_matrix != by_formula {
        let witness = by_matrix
            .symmetric_difference(&by_formula)
            .next()
            .map(|&s| table.format(s))
            .unwrap_or_default();
        return Err(Error::CheckFailed {
            name: "kernel_formula".into(),
            witness: format!("F = {:?}, s = {witness}", names(table, f)),
        });
    }
    Ok(by_matrix)
}

/// Result of a stabilization check for the pair `(s, q)`.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizationCertificate {
    /// `F₀ = {sq}`.
    pub f0: String,
    #[serde(skip)]
    pub f0_element: Element,
    /// Number of finite sets `F ⊇ F₀` on which both identities were checked.
    pub sets_checked: usize,
}

/// Finds `F₀ = {sq}` and checks, for `F₀`, for `F₀ ∪ {x}` with `|x| ≤ |sq|`,
/// and for the full ball of radius `|sq|`:
///
/// * `π_F(λ_s) e_q = e_{sq}` exactly;
/// * `Q_F λ_s* Q_F = λ_s* Q_F` exactly.
pub fn stabilization_index(
    table: &EnumerationTable,
    s: Element,
    q: Element,
) -> Result<StabilizationCertificate> {
    let sq = table.multiply(s, q)?;
    let radius = table.length(sq);
    table.ensure_depth(radius + table.length(s))?;
    // F ⊆ ball(radius), so every Y_F lives in the level-`radius` truncation
    let lam = lambda(table, s, radius)?;
    let lam_adj = lambda_adjoint(table, s, radius)?;

    let mut families: Vec<Vec<Element>> = vec![vec![sq]];
    families.extend(table.elements_upto(radius).filter(|&x| x != sq).map(|x| vec![sq, x]));
    families.push(table.elements_upto(radius).collect());

    for f in &families {
        let y = build_y(table, f)?;
        let idx = y.indices();
        let compressed = lam.submatrix(&idx, &idx, y.space(), y.space())?;
        let col = y.position(q).ok_or_else(|| fail("stabilization", table, f, "q ∉ Y_F"))?;
        let row = y
            .position(sq)
            .ok_or_else(|| fail("stabilization", table, f, "sq ∉ Y_F"))?;
        if compressed.column(col) != [(row, num_complex::Complex64::new(1.0, 0.0))] {
            return Err(fail("stabilization", table, f, "π_F(λ_s) e_q ≠ e_sq"));
        }
        // λ_s* maps Y_F into Y_F: no column of Y_F has a row outside Y_F
        for &r in y.basis() {
            for &(row, _) in lam_adj.column(r.index()) {
                if !y.contains(Element::from_index(row)) {
                    return Err(fail(
                        "adjoint_coinvariance",
                        table,
                        f,
                        &format!("λ_s* e_{} leaves Y_F", table.format(r)),
                    ));
                }
            }
        }
    }
    Ok(StabilizationCertificate {
        f0: table.format(sq),
        f0_element: sq,
        sets_checked: families.len(),
    })
}

fn names(table: &EnumerationTable, f: &[Element]) -> Vec<String> {
    f.iter().map(|&e| table.format(e)).collect()
}

fn fail(name: &str, table: &EnumerationTable, f: &[Element], what: &str) -> Error {
    Error::CheckFailed {
        name: name.into(),
        witness: format!("F = {:?}: {what}", names(table, f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::operator_norm;
    use crate::monoid::{free, nat, MonoidPresentation};

    fn ab_braid(l: usize) -> EnumerationTable {
        EnumerationTable::new(
            MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["aba","bab"]]}"#).unwrap(),
            l,
        )
        .unwrap()
    }

    fn el(t: &EnumerationTable, w: &str) -> Element {
        t.parse_element(w).unwrap()
    }

    #[test]
    fn y_dimensions() {
        let n = EnumerationTable::new(nat(1).unwrap(), 6).unwrap();
        assert_eq!(build_y(&n, &[el(&n, "xxx")]).unwrap().dim(), 4);
        let f = EnumerationTable::new(free(2).unwrap(), 4).unwrap();
        assert_eq!(build_y(&f, &[el(&f, "ab")]).unwrap().dim(), 3);
        let b = ab_braid(4);
        assert_eq!(build_y(&b, &[el(&b, "aba")]).unwrap().dim(), 6);
        assert!(build_y(&b, &[]).is_err());
        assert!(build_y(&b, &[Element::from_index(10_000)]).is_err());
    }

    #[test]
    fn nat_compressions() {
        let n = EnumerationTable::new(nat(1).unwrap(), 8).unwrap();
        let y = build_y(&n, &[el(&n, "xx")]).unwrap();
        let shift = pi_f(&n, &y, el(&n, "x")).unwrap();
        let c1 = num_complex::Complex64::new(1.0, 0.0);
        assert_eq!(shift.triplets().collect::<Vec<_>>(), [(1, 0, c1), (2, 1, c1)]);
        assert!(pi_f(&n, &y, el(&n, "xxx")).unwrap().is_zero());
        assert_eq!(
            pi_f(&n, &y, n.identity()).unwrap(),
            SparseOperator::identity(y.space())
        );
    }

    #[test]
    fn kernel_examples() {
        let n = EnumerationTable::new(nat(1).unwrap(), 8).unwrap();
        let k = kernel_set(&n, &[el(&n, "xx")], 5).unwrap();
        assert_eq!(k.iter().map(|&e| n.length(e)).collect::<Vec<_>>(), [3, 4, 5]);

        let f = EnumerationTable::new(free(2).unwrap(), 6).unwrap();
        let k = kernel_set(&f, &[el(&f, "ab")], 2).unwrap();
        let names: Vec<_> = k.iter().map(|&e| f.format(e)).collect();
        assert_eq!(names, ["a.a", "b.a", "b.b"]);

        let all: Vec<_> = f.elements_upto(2).collect();
        assert!(kernel_set(&f, &all, 2).unwrap().is_empty());
    }

    #[test]
    fn stabilization_examples() {
        let f = EnumerationTable::new(free(2).unwrap(), 6).unwrap();
        let cert = stabilization_index(&f, el(&f, "a"), el(&f, "b")).unwrap();
        assert_eq!(cert.f0, "a.b");

        let cert = stabilization_index(&f, f.identity(), el(&f, "ba")).unwrap();
        assert_eq!(cert.f0, "b.a");

        let b = ab_braid(8);
        let cert = stabilization_index(&b, el(&b, "b"), el(&b, "ab")).unwrap();
        assert_eq!(cert.f0, "a.b.a");
        assert!(cert.sets_checked > 2);
    }

    #[test]
    fn nesting_and_contractivity() {
        let b = ab_braid(8);
        let small = build_y(&b, &[el(&b, "ab")]).unwrap();
        let big = build_y(&b, &[el(&b, "ab"), el(&b, "bba")]).unwrap();
        let pos: Vec<usize> = small.basis().iter().map(|&e| big.position(e).unwrap()).collect();
        for s in b.elements_upto(3) {
            let outer = pi_f(&b, &big, s).unwrap();
            let inner = outer.submatrix(&pos, &pos, small.space(), small.space()).unwrap();
            assert_eq!(inner, pi_f(&b, &small, s).unwrap());
            assert!(operator_norm(&outer).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn depth_error() {
        let b = ab_braid(4);
        let y = build_y(&b, &[el(&b, "aba")]).unwrap();
        assert!(matches!(pi_f(&b, &y, el(&b, "aa")), Err(Error::BoundExceeded { .. })));
    }
}
