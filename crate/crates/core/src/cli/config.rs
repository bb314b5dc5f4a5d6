use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcalg::{KernelFamily, KernelSpec, PolyTerm, Polynomial};
use crate::monoid::{builtin, Element, EnumerationTable, MonoidPresentation, PresentationDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Enumerate,
    Divisors,
    Fdapprox,
    Coaction,
    Funcalg,
}

/// Where the monoid comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationSource {
    /// `free(2)`, `nat(1)`, `braid(3)`, `raag(v,w; v-w)`.
    Builtin(String),
    File { file: PathBuf },
    Inline(PresentationDoc),
}

impl PresentationSource {
    pub fn load(&self) -> Result<MonoidPresentation> {
        match self {
            PresentationSource::Builtin(s) => builtin(s),
            PresentationSource::File { file } => {
                let text = std::fs::read_to_string(file)
                    .map_err(|e| Error::InvalidParams(format!("{}: {e}", file.display())))?;
                MonoidPresentation::parse(&text)
            }
            PresentationSource::Inline(doc) => MonoidPresentation::from_doc(doc),
        }
    }
}

/// A monoid element in a config: a word (`"a.b"`, `"ab"`, `""`), a power of
/// the only generator (`2`), or an exponent vector `[1, 0, 2]` read as
/// `g1^1 g2^0 g3^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Power(u32),
    Exponents(Vec<u32>),
    Word(String),
}

impl ElementSpec {
    pub fn resolve(&self, table: &EnumerationTable) -> Result<Element> {
        let rank = table.presentation().rank();
        match self {
            ElementSpec::Word(w) => table.parse_element(w),
            ElementSpec::Power(n) => {
                if rank != 1 {
                    return Err(Error::InvalidParams(format!(
                        "integer element {n} needs a one-generator monoid"
                    )));
                }
                table.element(&vec![0u16; *n as usize])
            }
            ElementSpec::Exponents(v) => {
                if v.len() != rank {
                    return Err(Error::InvalidParams(format!(
                        "exponent vector of length {} for {rank} generators",
                        v.len()
                    )));
                }
                let word: Vec<u16> = v
                    .iter()
                    .enumerate()
                    .flat_map(|(g, &k)| std::iter::repeat_n(g as u16, k as usize))
                    .collect();
                table.element(&word)
            }
        }
    }

    /// Length of the word this spec denotes, for sizing tables.
    pub fn length_hint(&self, pres: &MonoidPresentation) -> Result<usize> {
        Ok(match self {
            ElementSpec::Word(w) => pres.parse_word(w)?.len(),
            ElementSpec::Power(n) => *n as usize,
            ElementSpec::Exponents(v) => v.iter().map(|&k| k as usize).sum(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapChoice {
    Named(String),
    Custom {
        /// Target monoid.
        target: PresentationSource,
        /// Image word of each source generator, in the target.
        images: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelChoice {
    Named(String),
    Coefficients { coefficients: Vec<f64> },
}

impl KernelChoice {
    pub fn build(&self, nvars: usize) -> Result<KernelSpec> {
        match self {
            KernelChoice::Named(n) => KernelSpec::by_name(n, nvars),
            KernelChoice::Coefficients { coefficients } => {
                KernelSpec::new(nvars, KernelFamily::Custom(coefficients.clone()))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyChoice {
    Text(String),
    Terms(Vec<PolyTerm>),
}

impl PolyChoice {
    pub fn build(&self, nvars: usize) -> Result<Polynomial> {
        match self {
            PolyChoice::Text(t) => Polynomial::parse(nvars, t),
            PolyChoice::Terms(t) => Polynomial::from_input(nvars, t),
        }
    }
}

/// One batch run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSource>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(rename = "L_P", default, skip_serializing_if = "Option::is_none")]
    pub length_p: Option<usize>,
    #[serde(rename = "L_Q", default, skip_serializing_if = "Option::is_none")]
    pub length_q: Option<usize>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub finite_set: Option<Vec<ElementSpec>>,
    /// Elements to inspect (`divisors`); defaults to the whole ball.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<ElementSpec>>,
    /// Pairs for right-LCM checks (`divisors`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lcm: Option<Vec<[ElementSpec; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelChoice>,
    /// Number of variables (`funcalg`), default 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PolyChoice>,
    /// Circle points `[re, im]` for the covariance check; default: 8th roots
    /// of unity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zetas: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_words: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let need = |present: bool, field: &str| {
            if present {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "`{field}` is required for {:?}",
                    self.command
                )))
            }
        };
        match self.command {
            Command::Enumerate | Command::Divisors => {
                need(self.presentation.is_some(), "presentation")?;
                need(self.length.is_some(), "L")?;
            }
            Command::Fdapprox => {
                need(self.presentation.is_some(), "presentation")?;
                need(self.length.is_some(), "L")?;
                need(self.finite_set.as_ref().is_some_and(|f| !f.is_empty()), "F")?;
            }
            Command::Coaction => {
                need(self.presentation.is_some(), "presentation")?;
                need(self.map.is_some(), "map")?;
                need(self.length_p.is_some(), "L_P")?;
                need(self.length_q.is_some(), "L_Q")?;
            }
            Command::Funcalg => {
                need(self.kernel.is_some(), "kernel")?;
                need(self.phi.is_some(), "phi")?;
                need(self.degree.is_some(), "D")?;
                if self.d == Some(0) {
                    return Err(Error::InvalidParams("`d` must be positive".into()));
                }
            }
        }
        if let Some(t) = self.norm_tol {
            if t.is_nan() || t <= 0.0 {
                return Err(Error::InvalidParams("`norm_tol` must be positive".into()));
            }
        }
        if let Some(zs) = &self.zetas {
            if zs.is_empty() {
                return Err(Error::InvalidParams("`zetas` must be nonempty".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_configs() {
        let c = RunConfig::parse(r#"{"command":"enumerate","presentation":"braid(3)","L":4}"#).unwrap();
        assert_eq!(c.command, Command::Enumerate);
        assert_eq!(c.length, Some(4));
        let c = RunConfig::parse(r#"{"command":"fdapprox","presentation":"nat(1)","F":[2],"L":5}"#).unwrap();
        assert_eq!(c.finite_set.unwrap(), [ElementSpec::Power(2)]);
        let c = RunConfig::parse(
            r#"{"command":"funcalg","kernel":"hardy","phi":"1+z","D":200}"#,
        )
        .unwrap();
        assert!(matches!(c.phi, Some(PolyChoice::Text(_))));
    }

    #[test]
    fn rejects_missing_and_unknown_fields() {
        assert!(RunConfig::parse(r#"{"command":"enumerate","L":4}"#).is_err());
        assert!(RunConfig::parse(r#"{"command":"enumerate","presentation":"free(2)","L":4,"bogus":1}"#).is_err());
        assert!(RunConfig::parse(r#"{"command":"fdapprox","presentation":"nat(1)","F":[],"L":5}"#).is_err());
        assert!(RunConfig::parse(r#"{"command":"nope"}"#).is_err());
    }

    #[test]
    fn element_specs() {
        let t = EnumerationTable::new(crate::monoid::nat(2).unwrap(), 4).unwrap();
        let e = ElementSpec::Exponents(vec![1, 2]).resolve(&t).unwrap();
        assert_eq!(t.format(e), "x.y.y");
        assert!(ElementSpec::Power(2).resolve(&t).is_err());
        let e = ElementSpec::Word("y.x".into()).resolve(&t).unwrap();
        assert_eq!(t.format(e), "x.y");
    }
}
