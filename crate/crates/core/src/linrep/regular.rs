use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::monoid::{left_divisors, Element, EnumerationTable};

use super::operator::{Space, SparseOperator};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The ordered basis `{e_p : |p| ≤ level}` of a truncation of ℓ²(P).
#[derive(Debug, Clone, Copy)]
pub struct GradedBasis<'a> {
    table: &'a EnumerationTable,
    level: usize,
}

impl<'a> GradedBasis<'a> {
    pub fn new(table: &'a EnumerationTable, level: usize) -> Result<Self> {
        table.ensure_depth(level)?;
        Ok(Self { table, level })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.table.count_upto(self.level)
    }

    pub fn space(&self) -> Space {
        Space::graded(self.table.name(), self.level, self.dim())
    }

    pub fn index_of(&self, e: Element) -> Option<usize> {
        (e.index() < self.dim()).then_some(e.index())
    }

    pub fn element_at(&self, i: usize) -> Option<Element> {
        (i < self.dim()).then(|| Element::from_index(i))
    }
}

/// Space of the level-`level` truncation of ℓ²(P).
pub fn graded_space(table: &EnumerationTable, level: usize) -> Result<Space> {
    Ok(GradedBasis::new(table, level)?.space())
}

/// `λ_p` from level `≤ level` into level `≤ level + |p|`.
pub fn lambda(table: &EnumerationTable, p: Element, level: usize) -> Result<SparseOperator> {
    lambda_into(table, p, level, level + table.length(p))
}

/// `λ_p` from level `≤ level` into the (possibly larger) level `≤ target`.
pub fn lambda_into(
    table: &EnumerationTable,
    p: Element,
    level: usize,
    target: usize,
) -> Result<SparseOperator> {
    table.ensure_cancellative()?;
    let need = level + table.length(p);
    if target < need {
        return Err(Error::BasisMismatch(format!(
            "λ_{} on level {level} needs codomain level {need}, got {target}",
            table.format(p)
        )));
    }
    table.ensure_depth(target)?;
    let domain = graded_space(table, level)?;
    let codomain = graded_space(table, target)?;
    let entries = table
        .elements_upto(level)
        .map(|q| Ok((table.multiply(p, q)?.index(), q.index(), ONE)))
        .collect::<Result<Vec<_>>>()?;
    SparseOperator::from_triplets(domain, codomain, entries)
}

/// `λ_p*` on level `≤ level`: `e_r ↦ e_q` when `r = p q`, else 0.
///
/// Computed directly from the class of `r` (is `p` a prefix of some
/// representative?), not by transposing [`lambda`].
pub fn lambda_adjoint(table: &EnumerationTable, p: Element, level: usize) -> Result<SparseOperator> {
    table.ensure_cancellative()?;
    let space = graded_space(table, level)?;
    let k = table.length(p);
    let mut entries = Vec::new();
    for r in table.elements_upto(level) {
        if table.length(r) < k {
            continue;
        }
        let mut hit: Option<Element> = None;
        for w in table.representatives(r) {
            if table.element(&w[..k])? == p {
                let q = table.element(&w[k..])?;
                match hit {
                    Some(prev) if prev != q => {
                        return Err(Error::NotCancellative(format!(
                            "{} = {}·{} = {}·{}",
                            table.format(r),
                            table.format(p),
                            table.format(prev),
                            table.format(p),
                            table.format(q)
                        )))
                    }
                    _ => hit = Some(q),
                }
            }
        }
        if let Some(q) = hit {
            entries.push((q.index(), r.index(), ONE));
        }
    }
    SparseOperator::from_triplets(space.clone(), space, entries)
}

/// Whether `λ_s* e_r ≠ 0`, i.e. `s ∈ L_r`.
pub fn adjoint_hits(table: &EnumerationTable, s: Element, r: Element) -> bool {
    left_divisors(table, r).contains(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{free, nat, MonoidPresentation};

    fn ab_braid(l: usize) -> EnumerationTable {
        EnumerationTable::new(
            MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["aba","bab"]]}"#).unwrap(),
            l,
        )
        .unwrap()
    }

    #[test]
    fn shift_on_nat() {
        let t = EnumerationTable::new(nat(1).unwrap(), 6).unwrap();
        let one = t.generator(0);
        let s = lambda(&t, one, 3).unwrap();
        assert_eq!((s.nrows(), s.ncols()), (5, 4));
        for j in 0..4 {
            assert_eq!(s.column(j), [(j + 1, ONE)]);
        }
        let sa = lambda_adjoint(&t, one, 3).unwrap();
        assert!(sa.column(0).is_empty());
        assert_eq!(sa.column(2), [(1, ONE)]);
    }

    #[test]
    fn free_left_multiplication() {
        let t = EnumerationTable::new(free(2).unwrap(), 3).unwrap();
        let a = t.parse_element("a").unwrap();
        let op = lambda(&t, a, 1).unwrap();
        let img = |w: &str| op.column(t.parse_element(w).unwrap().index())[0].0;
        assert_eq!(img(""), t.parse_element("a").unwrap().index());
        assert_eq!(img("a"), t.parse_element("aa").unwrap().index());
        assert_eq!(img("b"), t.parse_element("ab").unwrap().index());

        let adj = lambda_adjoint(&t, a, 2).unwrap();
        let ab = t.parse_element("ab").unwrap().index();
        let ba = t.parse_element("ba").unwrap().index();
        assert_eq!(adj.column(ab), [(t.parse_element("b").unwrap().index(), ONE)]);
        assert!(adj.column(ba).is_empty());
    }

    #[test]
    fn braid_examples() {
        let t = ab_braid(4);
        let a = t.parse_element("a").unwrap();
        let op = lambda(&t, a, 2).unwrap();
        let ba = t.parse_element("ba").unwrap().index();
        let bb = t.parse_element("bb").unwrap().index();
        assert_eq!(op.column(ba)[0].0, t.parse_element("aba").unwrap().index());
        assert_eq!(op.column(bb)[0].0, t.parse_element("abb").unwrap().index());
        assert!(op.is_partial_isometry_pattern());

        let b = t.parse_element("b").unwrap();
        let adj = lambda_adjoint(&t, b, 3).unwrap();
        let aba = t.parse_element("aba").unwrap().index();
        assert_eq!(adj.column(aba), [(t.parse_element("ab").unwrap().index(), ONE)]);
    }

    #[test]
    fn depth_errors() {
        let t = ab_braid(3);
        let a = t.parse_element("a").unwrap();
        assert!(matches!(lambda(&t, a, 3), Err(Error::BoundExceeded { .. })));
        assert!(lambda_into(&t, a, 1, 1).is_err());
    }
}
