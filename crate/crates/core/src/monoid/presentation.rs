use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over the generators, stored as generator indices.
pub type Word = Vec<u16>;

/// Which standard family a presentation came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    Free,
    Commutative,
    Raag { edges: Vec<(String, String)> },
    Braid { strands: usize },
    Custom,
}

/// A finitely presented monoid whose relations all preserve word length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: Vec<String>,
    relations: Vec<(Word, Word)>,
    kind: PresentationKind,
    name: String,
}

/// The on-disk presentation document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

impl MonoidPresentation {
    /// Validates generator names and homogeneity of every relation.
    pub fn new(
        generators: Vec<String>,
        relations: Vec<(Word, Word)>,
        kind: PresentationKind,
        name: impl Into<String>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.is_empty() {
                return Err(Error::Malformed("empty generator name".into()));
            }
            if g.contains('.') || g.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!(
                    "generator name `{g}` contains a separator"
                )));
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::Malformed(format!("duplicate generator `{g}`")));
            }
        }
        if generators.len() > u16::MAX as usize {
            return Err(Error::InvalidParams("too many generators".into()));
        }
        let pres = Self {
            generators,
            relations,
            kind,
            name: name.into(),
        };
        for (l, r) in &pres.relations {
            if let Some(&bad) = l.iter().chain(r).find(|&&g| g as usize >= pres.generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{bad}")));
            }
            if l.len() != r.len() {
                return Err(Error::NonHomogeneous {
                    lhs: pres.format_word(l),
                    rhs: pres.format_word(r),
                    lhs_len: l.len(),
                    rhs_len: r.len(),
                });
            }
        }
        Ok(pres)
    }

    /// Parses a JSON presentation document.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Self> {
        // Validate names before resolving words so that name errors win.
        let probe = Self::new(doc.generators.clone(), vec![], PresentationKind::Custom, "")?;
        let relations = doc
            .relations
            .iter()
            .map(|[l, r]| Ok((probe.parse_word(l)?, probe.parse_word(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            doc.generators.clone(),
            relations,
            PresentationKind::Custom,
            "custom",
        )
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|(l, r)| [self.format_word(l), self.format_word(r)])
                .collect(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn kind(&self) -> &PresentationKind {
        &self.kind
    }

    /// Short label such as `braid(3)`, used to tag bases.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_index(&self, name: &str) -> Option<u16> {
        self.generators.iter().position(|g| g == name).map(|i| i as u16)
    }

    /// Parses `a.b.a`. When every generator name is a single character the
    /// dots may be omitted (`aba`). The empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::new());
        }
        let single_char = self.generators.iter().all(|g| g.chars().count() == 1);
        let mut word = Word::new();
        for token in text.split('.') {
            if let Some(i) = self.generator_index(token) {
                word.push(i);
            } else if single_char && !token.is_empty() {
                for c in token.chars() {
                    let s = c.to_string();
                    word.push(
                        self.generator_index(&s)
                            .ok_or(Error::UnknownGenerator(s))?,
                    );
                }
            } else {
                return Err(Error::UnknownGenerator(token.to_string()));
            }
        }
        Ok(word)
    }

    pub fn format_word(&self, word: &[u16]) -> String {
        word.iter()
            .map(|&g| {
                self.generators
                    .get(g as usize)
                    .map(String::as_str)
                    .unwrap_or("?")
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}", self.generators.join(", "))?;
        if !self.relations.is_empty() {
            write!(f, " | ")?;
            let rels: Vec<_> = self
                .relations
                .iter()
                .map(|(l, r)| format!("{} = {}", self.format_word(l), self.format_word(r)))
                .collect();
            write!(f, "{}", rels.join(", "))?;
        }
        write!(f, "⟩")
    }
}

fn letter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("g{i}")).collect()
    }
}

/// Free monoid on `n` letters `a, b, c, …`.
pub fn free(n: usize) -> Result<MonoidPresentation> {
    if n == 0 {
        return Err(Error::InvalidParams("free(n) needs n ≥ 1".into()));
    }
    MonoidPresentation::new(letter_names(n), vec![], PresentationKind::Free, format!("free({n})"))
}

/// ℕ^d, generators `x, y, z` (or `x1 … xd` for d > 3) with all commutations.
pub fn nat(d: usize) -> Result<MonoidPresentation> {
    if d == 0 {
        return Err(Error::InvalidParams("nat(d) needs d ≥ 1".into()));
    }
    let gens: Vec<String> = if d <= 3 {
        ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    };
    let mut rels = Vec::new();
    for i in 0..d as u16 {
        for j in i + 1..d as u16 {
            rels.push((vec![i, j], vec![j, i]));
        }
    }
    MonoidPresentation::new(gens, rels, PresentationKind::Commutative, format!("nat({d})"))
}

/// Right-angled Artin monoid: `v w = w v` for every edge.
pub fn raag(vertices: &[String], edges: &[(String, String)]) -> Result<MonoidPresentation> {
    if vertices.is_empty() {
        return Err(Error::InvalidParams("raag needs at least one vertex".into()));
    }
    let probe = MonoidPresentation::new(vertices.to_vec(), vec![], PresentationKind::Custom, "")?;
    let mut seen = HashSet::new();
    let mut rels = Vec::new();
    for (v, w) in edges {
        let i = probe
            .generator_index(v)
            .ok_or_else(|| Error::UnknownGenerator(v.clone()))?;
        let j = probe
            .generator_index(w)
            .ok_or_else(|| Error::UnknownGenerator(w.clone()))?;
        if i == j {
            return Err(Error::InvalidParams(format!("self-loop at `{v}`")));
        }
        if seen.insert((i.min(j), i.max(j))) {
            rels.push((vec![i, j], vec![j, i]));
        }
    }
    let name = format!("raag({}v,{}e)", vertices.len(), rels.len());
    MonoidPresentation::new(
        vertices.to_vec(),
        rels,
        PresentationKind::Raag {
            edges: edges.to_vec(),
        },
        name,
    )
}

/// Positive braid monoid on `n` strands, generators `s1 … s(n-1)`.
pub fn braid(n: usize) -> Result<MonoidPresentation> {
    if n < 2 {
        return Err(Error::InvalidParams("braid(n) needs n ≥ 2".into()));
    }
    let gens: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    let k = (n - 1) as u16;
    let mut rels = Vec::new();
    for i in 0..k {
        if i + 1 < k {
            rels.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
        }
        for j in i + 2..k {
            rels.push((vec![i, j], vec![j, i]));
        }
    }
    MonoidPresentation::new(gens, rels, PresentationKind::Braid { strands: n }, format!("braid({n})"))
}

/// Resolves a builtin spec string: `free(n)`, `nat(d)`, `braid(n)`, or
/// `raag(v,w,u; v-w, w-u)`.
pub fn builtin(spec: &str) -> Result<MonoidPresentation> {
    let spec = spec.trim();
    let (head, args) = spec
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(|| Error::InvalidParams(format!("cannot parse builtin `{spec}`")))?;
    let int_arg = || -> Result<usize> {
        args.trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidParams(format!("`{spec}`: expected an integer argument")))
    };
    match head.trim() {
        "free" => free(int_arg()?),
        "nat" => nat(int_arg()?),
        "braid" => braid(int_arg()?),
        "raag" => {
            let (verts, edges) = args.split_once(';').unwrap_or((args, ""));
            let verts: Vec<String> = verts
                .split(',')
                .map(|v| v.trim().to_string())
                .filter(|v| !v.is_empty())
                .collect();
            let edges = edges
                .split(',')
                .map(str::trim)
                .filter(|e| !e.is_empty())
                .map(|e| {
                    e.split_once('-')
                        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                        .ok_or_else(|| Error::InvalidParams(format!("bad edge `{e}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            raag(&verts, &edges)
        }
        other => Err(Error::InvalidParams(format!("unknown builtin `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_braid_type_document() {
        let p = MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["a.b.a","b.a.b"]]}"#)
            .unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0], (vec![0, 1, 0], vec![1, 0, 1]));
        let undotted =
            MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["aba","bab"]]}"#).unwrap();
        assert_eq!(p, undotted);
    }

    #[test]
    fn rejects_non_homogeneous() {
        let err = MonoidPresentation::parse(r#"{"generators":["a"],"relations":[["a.a","a"]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::NonHomogeneous { lhs_len: 2, rhs_len: 1, .. }), "{err}");
    }

    #[test]
    fn rejects_unknown_generator() {
        let err = MonoidPresentation::parse(r#"{"generators":["a","b"],"relations":[["ac","ca"]]}"#)
            .unwrap_err();
        assert_eq!(err, Error::UnknownGenerator("c".into()));
    }

    #[test]
    fn rejects_bad_names_and_garbage() {
        assert!(MonoidPresentation::parse(r#"{"generators":["a","a"]}"#).is_err());
        assert!(MonoidPresentation::parse(r#"{"generators":[""]}"#).is_err());
        assert!(matches!(
            MonoidPresentation::parse("{generators"),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn builtins() {
        let n2 = builtin("nat(2)").unwrap();
        assert_eq!(n2.generators(), ["x", "y"]);
        assert_eq!(n2.relations(), [(vec![0, 1], vec![1, 0])]);

        let b3 = builtin("braid(3)").unwrap();
        assert_eq!(b3.generators(), ["s1", "s2"]);
        assert_eq!(b3.relations(), [(vec![0, 1, 0], vec![1, 0, 1])]);

        let b4 = braid(4).unwrap();
        assert_eq!(b4.relations().len(), 3);

        let r = builtin("raag(v,w;)").unwrap();
        assert!(r.relations().is_empty());
        assert_eq!(r.generators(), ["v", "w"]);

        assert!(builtin("free(0)").is_err());
        assert!(builtin("raag(v,w; v-v)").is_err());
        assert!(builtin("braid(x)").is_err());
    }

    #[test]
    fn doc_roundtrip() {
        let b = braid(4).unwrap();
        let again = MonoidPresentation::from_doc(&b.to_doc()).unwrap();
        assert_eq!(again.relations(), b.relations());
    }
}
