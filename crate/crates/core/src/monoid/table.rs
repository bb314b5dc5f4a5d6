use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

use super::presentation::{MonoidPresentation, Word};

/// Hard cap on the number of words visited during enumeration.
pub const DEFAULT_MAX_WORDS: u64 = 1_000_000;

/// An element of an enumerated monoid. The index doubles as the basis index
/// of `e_p` in every graded truncation of ℓ²(P): elements are numbered by
/// (length, shortlex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Element(i as u32)
    }
}

/// All elements of a homogeneous monoid up to a length bound, as congruence
/// classes of words.
///
/// Words of length `n` are coded as base-`k` integers (most significant digit
/// first), so numeric order on codes is shortlex order within a level and the
/// smallest code of a class is its canonical word.
#[derive(Clone)]
pub struct EnumerationTable {
    pres: MonoidPresentation,
    bound: usize,
    rank: u64,
    pow: Vec<u64>,
    level_start: Vec<usize>,
    canon: Vec<u64>,
    class_of: Vec<Vec<u32>>,
    // codes of every word, grouped by class: members of e are
    // member_codes[member_start[e]..member_start[e + 1]]
    member_start: Vec<usize>,
    member_codes: Vec<u64>,
    cancellation_failure: Option<String>,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let up = self.0[self.0[x as usize] as usize];
            self.0[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller code as root so roots are canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

impl EnumerationTable {
    pub fn new(pres: MonoidPresentation, bound: usize) -> Result<Self> {
        Self::with_limit(pres, bound, DEFAULT_MAX_WORDS)
    }

    pub fn with_limit(pres: MonoidPresentation, bound: usize, max_words: u64) -> Result<Self> {
        let k = pres.rank() as u64;
        let mut pow = vec![1u64];
        let mut total = 1u64;
        for n in 1..=bound {
            let next = pow[n - 1].checked_mul(k).filter(|&p| p <= max_words);
            let next = match next {
                Some(p) => p,
                None => return Err(too_many(&pres, bound, max_words)),
            };
            total = total.saturating_add(next);
            if total > max_words {
                return Err(too_many(&pres, bound, max_words));
            }
            pow.push(next);
        }

        // relation sides as (value, length), both directions
        let rewrites: Vec<(u64, u64, usize)> = pres
            .relations()
            .iter()
            .flat_map(|(l, r)| {
                let (lv, rv) = (word_value(l, k), word_value(r, k));
                [(lv, rv, l.len()), (rv, lv, l.len())]
            })
            .filter(|(a, b, _)| a != b)
            .collect();

        let mut level_start = vec![0usize];
        let mut canon = Vec::new();
        let mut class_of = Vec::with_capacity(bound + 1);
        for n in 0..=bound {
            let size = pow[n] as usize;
            let mut uf = UnionFind::new(size);
            for code in 0..pow[n] {
                for &(from, to, m) in &rewrites {
                    if m > n {
                        continue;
                    }
                    for tail in 0..=(n - m) {
                        // digits [n-tail-m, n-tail) of the word
                        let scale = pow[tail];
                        let window = (code / scale) % pow[m];
                        if window == from {
                            let other = code - from * scale + to * scale;
                            uf.union(code as u32, other as u32);
                        }
                    }
                }
            }
            let mut map = vec![u32::MAX; size];
            for code in 0..size as u32 {
                let root = uf.find(code);
                if root == code {
                    map[code as usize] = canon.len() as u32;
                    canon.push(code as u64);
                } else {
                    // roots are class minima, so the root was numbered already
                    map[code as usize] = map[root as usize];
                }
            }
            class_of.push(map);
            level_start.push(canon.len());
        }

        let mut member_start = vec![0usize; canon.len() + 1];
        for map in &class_of {
            for &c in map {
                member_start[c as usize + 1] += 1;
            }
        }
        for i in 0..canon.len() {
            member_start[i + 1] += member_start[i];
        }
        let mut fill = member_start.clone();
        let mut member_codes = vec![0u64; *member_start.last().unwrap()];
        for map in &class_of {
            for (code, &c) in map.iter().enumerate() {
                member_codes[fill[c as usize]] = code as u64;
                fill[c as usize] += 1;
            }
        }

        let mut table = Self {
            pres,
            bound,
            rank: k,
            pow,
            level_start,
            canon,
            class_of,
            member_start,
            member_codes,
            cancellation_failure: None,
        };
        table.cancellation_failure = table.find_cancellation_failure();
        Ok(table)
    }

    pub fn presentation(&self) -> &MonoidPresentation {
        &self.pres
    }

    pub fn name(&self) -> &str {
        self.pres.name()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Total number of elements of length ≤ bound.
    pub fn len(&self) -> usize {
        self.canon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canon.is_empty()
    }

    pub fn count_at(&self, n: usize) -> usize {
        self.level_start[n + 1] - self.level_start[n]
    }

    /// Element counts per length `0..=bound`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.bound).map(|n| self.count_at(n)).collect()
    }

    /// Number of elements of length ≤ `n` (the dimension of the level-`n`
    /// truncation of ℓ²(P)).
    pub fn count_upto(&self, n: usize) -> usize {
        self.level_start[n.min(self.bound) + 1]
    }

    pub fn elements_of_length(&self, n: usize) -> impl Iterator<Item = Element> {
        let r: Range<usize> = if n <= self.bound {
            self.level_start[n]..self.level_start[n + 1]
        } else {
            0..0
        };
        r.map(Element::from_index)
    }

    pub fn elements_upto(&self, n: usize) -> impl Iterator<Item = Element> {
        (0..self.count_upto(n)).map(Element::from_index)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.len()).map(Element::from_index)
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn generator(&self, g: usize) -> Element {
        assert!(self.bound >= 1 && g < self.pres.rank());
        Element::from_index(self.class_of[1][g] as usize)
    }

    pub fn generators(&self) -> Vec<Element> {
        if self.bound == 0 {
            return vec![];
        }
        (0..self.pres.rank()).map(|g| self.generator(g)).collect()
    }

    pub fn length(&self, e: Element) -> usize {
        self.level_start.partition_point(|&s| s <= e.index()) - 1
    }

    /// Canonical (shortlex-minimal) word of `e`.
    pub fn word(&self, e: Element) -> Word {
        self.decode(self.canon[e.index()], self.length(e))
    }

    pub fn format(&self, e: Element) -> String {
        self.pres.format_word(&self.word(e))
    }

    /// Class of an arbitrary word.
    pub fn element(&self, word: &[u16]) -> Result<Element> {
        if word.len() > self.bound {
            return Err(Error::BoundExceeded {
                needed: word.len(),
                bound: self.bound,
            });
        }
        if let Some(&g) = word.iter().find(|&&g| g as u64 >= self.rank) {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        let code = word_value(word, self.rank);
        Ok(Element::from_index(self.class_of[word.len()][code as usize] as usize))
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        self.element(&self.pres.parse_word(text)?)
    }

    /// Product `xy`; fails when `|x| + |y|` exceeds the bound.
    pub fn multiply(&self, x: Element, y: Element) -> Result<Element> {
        let (lx, ly) = (self.length(x), self.length(y));
        let n = lx + ly;
        if n > self.bound {
            return Err(Error::BoundExceeded {
                needed: n,
                bound: self.bound,
            });
        }
        let code = self.canon[x.index()] * self.pow[ly] + self.canon[y.index()];
        Ok(Element::from_index(self.class_of[n][code as usize] as usize))
    }

    /// Every word in the class of `e`, in shortlex order.
    pub fn representatives(&self, e: Element) -> Vec<Word> {
        let n = self.length(e);
        self.member_codes[self.member_start[e.index()]..self.member_start[e.index() + 1]]
            .iter()
            .map(|&code| self.decode(code, n))
            .collect()
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellation_failure.is_none()
    }

    /// Downstream constructions call this before relying on cancellation.
    pub fn ensure_cancellative(&self) -> Result<()> {
        match &self.cancellation_failure {
            None => Ok(()),
            Some(w) => Err(Error::NotCancellative(w.clone())),
        }
    }

    pub(crate) fn ensure_depth(&self, needed: usize) -> Result<()> {
        if needed > self.bound {
            Err(Error::BoundExceeded {
                needed,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    // Left (right) cancellation by every generator on every level implies
    // cancellation by every element, by induction on length.
    fn find_cancellation_failure(&self) -> Option<String> {
        for n in 0..self.bound {
            for g in self.generators() {
                let mut left_seen = vec![None; self.count_at(n + 1)];
                let mut right_seen = vec![None; self.count_at(n + 1)];
                let base = self.level_start[n + 1];
                for y in self.elements_of_length(n) {
                    let gy = self.multiply(g, y).ok()?;
                    if let Some(z) = left_seen[gy.index() - base].replace(y) {
                        return Some(format!(
                            "{g}·{a} = {g}·{b}",
                            g = self.format(g),
                            a = self.format(z),
                            b = self.format(y)
                        ));
                    }
                    let yg = self.multiply(y, g).ok()?;
                    if let Some(z) = right_seen[yg.index() - base].replace(y) {
                        return Some(format!(
                            "{a}·{g} = {b}·{g}",
                            g = self.format(g),
                            a = self.format(z),
                            b = self.format(y)
                        ));
                    }
                }
            }
        }
        None
    }

    fn decode(&self, mut code: u64, n: usize) -> Word {
        let mut w = vec![0u16; n];
        for slot in w.iter_mut().rev() {
            *slot = (code % self.rank) as u16;
            code /= self.rank;
        }
        w
    }
}

impl fmt::Debug for EnumerationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumerationTable")
            .field("presentation", &self.pres.name())
            .field("bound", &self.bound)
            .field("counts", &self.counts())
            .finish()
    }
}

fn word_value(word: &[u16], k: u64) -> u64 {
    word.iter().fold(0u64, |acc, &g| acc * k + g as u64)
}

fn too_many(pres: &MonoidPresentation, bound: usize, max_words: u64) -> Error {
    Error::ResourceLimit(format!(
        "{} up to length {bound} needs more than {max_words} words",
        pres.name()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::presentation::{braid, free, nat};

    fn ab_braid() -> MonoidPresentation {
        MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["aba","bab"]]}"#).unwrap()
    }

    #[test]
    fn free_counts() {
        let t = EnumerationTable::new(free(2).unwrap(), 3).unwrap();
        assert_eq!(t.counts(), [1, 2, 4, 8]);
    }

    #[test]
    fn nat2_classes() {
        let t = EnumerationTable::new(nat(2).unwrap(), 2).unwrap();
        assert_eq!(t.counts(), [1, 2, 3]);
        let names: Vec<_> = t.elements_of_length(2).map(|e| t.format(e)).collect();
        assert_eq!(names, ["x.x", "x.y", "y.y"]);
        assert_eq!(t.parse_element("y.x").unwrap(), t.parse_element("x.y").unwrap());
    }

    #[test]
    fn braid3_counts() {
        let t = EnumerationTable::new(braid(3).unwrap(), 4).unwrap();
        assert_eq!(t.counts(), [1, 2, 4, 7, 12]);
        assert!(t.is_cancellative());
    }

    #[test]
    fn multiply_examples() {
        let f = EnumerationTable::new(free(2).unwrap(), 4).unwrap();
        let ab = f.parse_element("ab").unwrap();
        let ba = f.parse_element("ba").unwrap();
        assert_eq!(f.format(f.multiply(ab, ba).unwrap()), "a.b.b.a");
        assert_eq!(f.multiply(ab, f.identity()).unwrap(), ab);
        assert!(matches!(f.multiply(ab, f.parse_element("abb").unwrap()), Err(Error::BoundExceeded { .. })));

        let b = EnumerationTable::new(ab_braid(), 4).unwrap();
        let prod = b
            .multiply(b.parse_element("b").unwrap(), b.parse_element("ab").unwrap())
            .unwrap();
        assert_eq!(b.format(prod), "a.b.a");
        assert_eq!(b.representatives(prod).len(), 2);
    }

    #[test]
    fn lengths_and_words() {
        let t = EnumerationTable::new(ab_braid(), 5).unwrap();
        for e in t.elements() {
            let w = t.word(e);
            assert_eq!(w.len(), t.length(e));
            assert_eq!(t.element(&w).unwrap(), e);
            // canonical word is the smallest representative
            assert_eq!(t.representatives(e)[0], w);
        }
    }

    #[test]
    fn word_cap() {
        let err = EnumerationTable::with_limit(free(2).unwrap(), 20, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn non_cancellative_is_flagged() {
        // ab = aa identifies b and a after left cancellation, but not before
        let p = MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["ab","aa"]]}"#).unwrap();
        let t = EnumerationTable::new(p, 3).unwrap();
        assert!(!t.is_cancellative());
        assert!(matches!(t.ensure_cancellative(), Err(Error::NotCancellative(_))));
    }

    #[test]
    fn zero_rank_and_zero_bound() {
        let p = MonoidPresentation::parse(r#"{"generators":[]}"#).unwrap();
        let t = EnumerationTable::new(p, 3).unwrap();
        assert_eq!(t.counts(), [1, 0, 0, 0]);
        let t = EnumerationTable::new(free(3).unwrap(), 0).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.generators().is_empty());
    }
}
