use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

use super::presentation::nat;
use super::table::{Element, EnumerationTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// Every generator goes to the generator of ℕ.
    Length,
    /// Generator `i` goes to the `i`-th basis vector of ℕ^k.
    Abelianization,
    Custom,
}

/// A monoid homomorphism `φ: P → Q` given by generator images, evaluated on
/// every enumerated element of `P` whose image fits in the target table.
#[derive(Debug, Clone)]
pub struct ControlledMap {
    source: Arc<EnumerationTable>,
    target: Arc<EnumerationTable>,
    images: Vec<Element>,
    kind: MapKind,
    values: Vec<Option<Element>>,
}

impl ControlledMap {
    /// Builds `φ` from per-generator images and checks that every defining
    /// relation of `P` is respected.
    pub fn new(
        source: Arc<EnumerationTable>,
        target: Arc<EnumerationTable>,
        images: Vec<Element>,
    ) -> Result<Self> {
        Self::with_kind(source, target, images, MapKind::Custom)
    }

    fn with_kind(
        source: Arc<EnumerationTable>,
        target: Arc<EnumerationTable>,
        images: Vec<Element>,
        kind: MapKind,
    ) -> Result<Self> {
        let pres = source.presentation();
        if images.len() != pres.rank() {
            return Err(Error::InvalidParams(format!(
                "{} generator images given for {} generators",
                images.len(),
                pres.rank()
            )));
        }
        if let Some(bad) = images.iter().find(|e| e.index() >= target.len()) {
            return Err(Error::InvalidParams(format!("image #{} not in target", bad.index())));
        }
        let mut map = Self {
            source,
            target,
            images,
            kind,
            values: vec![],
        };
        for (l, r) in map.source.presentation().relations() {
            let (il, ir) = (map.eval_word(l)?, map.eval_word(r)?);
            if il != ir {
                return Err(Error::NotHomomorphism(format!(
                    "φ({}) = {} but φ({}) = {}",
                    pres_fmt(&map.source, l),
                    map.target.format(il),
                    pres_fmt(&map.source, r),
                    map.target.format(ir),
                )));
            }
        }
        map.values = map
            .source
            .elements()
            .map(|p| map.eval_word(&map.source.word(p)).ok())
            .collect();
        Ok(map)
    }

    /// The length map `P → ℕ`, with target enumerated to `target_bound`.
    pub fn length_map(source: Arc<EnumerationTable>, target_bound: usize) -> Result<Self> {
        let target = Arc::new(EnumerationTable::new(nat(1)?, target_bound)?);
        let images = vec![target.generator(0); source.presentation().rank()];
        Self::with_kind(source, target, images, MapKind::Length)
    }

    /// Abelianization `P → ℕ^k` sending generator `i` to `e_i`. Only a
    /// homomorphism when every relation is a permutation of letters (free,
    /// right-angled Artin, commutative monoids).
    pub fn abelianization(source: Arc<EnumerationTable>, target_bound: usize) -> Result<Self> {
        let k = source.presentation().rank();
        let target = Arc::new(EnumerationTable::new(nat(k)?, target_bound)?);
        let images = (0..k).map(|g| target.generator(g)).collect();
        Self::with_kind(source, target, images, MapKind::Abelianization)
    }

    pub fn source(&self) -> &Arc<EnumerationTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<EnumerationTable> {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn generator_images(&self) -> &[Element] {
        &self.images
    }

    /// Longest generator image; `|φ(p)| ≤ |p| · max_image_len`.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|&e| self.target.length(e)).max().unwrap_or(0)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|&e| self.target.length(e)).min().unwrap_or(0)
    }

    /// `φ(p)`; fails when the image does not fit in the target table.
    pub fn apply(&self, p: Element) -> Result<Element> {
        match self.values.get(p.index()) {
            Some(Some(q)) => Ok(*q),
            Some(None) => Err(Error::BoundExceeded {
                needed: self.source.length(p) * self.max_image_len(),
                bound: self.target.bound(),
            }),
            None => Err(Error::InvalidParams(format!("element #{} not in source", p.index()))),
        }
    }

    /// The complete fiber `φ⁻¹(q)`.
    ///
    /// Each generator image has length ≥ `m`, so `φ(p) = q` forces
    /// `|p| ≤ |q| / m`; the fiber is certified complete once the source is
    /// enumerated that far. With `m = 0` no such bound exists.
    pub fn fiber(&self, q: Element) -> Result<BTreeSet<Element>> {
        let m = self.min_image_len();
        if m == 0 {
            return Err(Error::IncompleteFiber {
                target: self.target.format(q),
                reason: "a generator maps to the identity, so fibers are unbounded".into(),
            });
        }
        let reach = self.target.length(q) / m;
        if reach > self.source.bound() {
            return Err(Error::IncompleteFiber {
                target: self.target.format(q),
                reason: format!(
                    "preimages may have length up to {reach}, source enumerated to {}",
                    self.source.bound()
                ),
            });
        }
        Ok(self
            .source
            .elements_upto(reach)
            .filter(|p| self.values[p.index()] == Some(q))
            .collect())
    }

    fn eval_word(&self, word: &[u16]) -> Result<Element> {
        word.iter().try_fold(self.target.identity(), |acc, &g| {
            self.target.multiply(acc, self.images[g as usize])
        })
    }
}

fn pres_fmt(t: &EnumerationTable, w: &[u16]) -> String {
    t.presentation().format_word(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::presentation::{braid, builtin, free, MonoidPresentation};

    fn table(p: MonoidPresentation, l: usize) -> Arc<EnumerationTable> {
        Arc::new(EnumerationTable::new(p, l).unwrap())
    }

    #[test]
    fn length_fiber_braid() {
        let src = table(
            MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["aba","bab"]]}"#).unwrap(),
            4,
        );
        let phi = ControlledMap::length_map(src.clone(), 4).unwrap();
        let two = phi.target().parse_element("xx").unwrap();
        let fib: Vec<_> = phi.fiber(two).unwrap().iter().map(|&e| src.format(e)).collect();
        assert_eq!(fib, ["a.a", "a.b", "b.a", "b.b"]);
        let e = phi.target().identity();
        assert_eq!(phi.fiber(e).unwrap().into_iter().collect::<Vec<_>>(), [src.identity()]);
        for n in 0..=4 {
            let q = phi.target().elements_of_length(n).next().unwrap();
            assert_eq!(phi.fiber(q).unwrap().len(), src.count_at(n));
        }
    }

    #[test]
    fn raag_abelianization_fiber() {
        let src = table(builtin("raag(v,w;)").unwrap(), 3);
        let phi = ControlledMap::abelianization(src.clone(), 3).unwrap();
        let q = phi.target().parse_element("xy").unwrap();
        let fib: Vec<_> = phi.fiber(q).unwrap().iter().map(|&e| src.format(e)).collect();
        assert_eq!(fib, ["v.w", "w.v"]);
    }

    #[test]
    fn braid_abelianization_is_rejected() {
        let src = table(braid(3).unwrap(), 3);
        assert!(matches!(
            ControlledMap::abelianization(src, 3),
            Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn trivial_map_has_uncertifiable_fibers() {
        let src = table(free(2).unwrap(), 3);
        let tgt = table(nat(1).unwrap(), 3);
        let phi = ControlledMap::new(src, tgt.clone(), vec![tgt.identity(); 2]).unwrap();
        assert!(matches!(phi.fiber(tgt.identity()), Err(Error::IncompleteFiber { .. })));
    }

    #[test]
    fn fiber_beyond_source_bound() {
        let src = table(free(2).unwrap(), 2);
        let phi = ControlledMap::length_map(src, 5).unwrap();
        let q = phi.target().elements_of_length(4).next().unwrap();
        assert!(matches!(phi.fiber(q), Err(Error::IncompleteFiber { .. })));
    }

    #[test]
    fn homomorphism_on_products() {
        let src = table(braid(3).unwrap(), 6);
        let phi = ControlledMap::length_map(src.clone(), 6).unwrap();
        for x in src.elements_upto(3) {
            for y in src.elements_upto(3) {
                let xy = src.multiply(x, y).unwrap();
                let lhs = phi.apply(xy).unwrap();
                let rhs = phi
                    .target()
                    .multiply(phi.apply(x).unwrap(), phi.apply(y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
