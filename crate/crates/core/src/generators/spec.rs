use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coord::{Coordinate, QuadField, QuadInt};
use crate::error::{Error, Result};
use crate::geometry::{Point, SharedSource, Translated};

use super::{CutProjectSource, CutProjectSpec, LatticeSource, PoissonSource, SubstitutionRule, SubstitutionSource};

/// A scalar in a config: a number, or an exact pair `[a, b]` meaning `a + bτ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Exact([i64; 2]),
    Float(f64),
}

impl CoordSpec {
    pub fn resolve(self, field: QuadField) -> Coordinate {
        match self {
            CoordSpec::Exact([a, b]) => QuadInt::new(a, b, field).into(),
            CoordSpec::Float(v) => v.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FibonacciMethod {
    #[default]
    CutProject,
    Substitution,
}

/// A substitution rule: a preset name or letters `a, b, …` with expansion words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleSpec {
    Preset(String),
    Custom {
        words: Vec<String>,
        lengths: Vec<CoordSpec>,
        inflation: CoordSpec,
        #[serde(default)]
        field: Option<String>,
        #[serde(default)]
        colors: Option<Vec<usize>>,
    },
}

fn default_basis() -> Vec<Vec<f64>> {
    vec![vec![1.0]]
}

fn default_field() -> String {
    "golden".into()
}

fn default_intensity() -> f64 {
    1.0
}

fn default_dim() -> usize {
    1
}

/// Generator configuration, `{"type": …, …params}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceSpec {
    Fibonacci {
        #[serde(default)]
        method: FibonacciMethod,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<f64>,
    },
    Lattice {
        #[serde(default = "default_basis")]
        basis: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        origin: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        moduli: Option<Vec<u32>>,
    },
    Substitution {
        rule: RuleSpec,
        /// `"a"` (one-sided) or `"l.r"` (two-sided).
        seed: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<f64>,
    },
    CutProject {
        #[serde(default = "default_field")]
        field: String,
        window: [CoordSpec; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        offset: Option<[i64; 2]>,
        #[serde(default)]
        breaks: Vec<CoordSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        piece_colors: Option<Vec<usize>>,
    },
    Poisson {
        #[serde(default = "default_intensity")]
        intensity: f64,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_dim")]
        dim: usize,
    },
}

fn field_named(name: &str) -> Result<QuadField> {
    QuadField::from_name(name).ok_or_else(|| Error::InvalidParameter(format!("unknown field {name:?}")))
}

fn letter(c: char) -> Result<usize> {
    if c.is_ascii_lowercase() {
        Ok(c as usize - 'a' as usize)
    } else {
        Err(Error::InvalidParameter(format!("letters must be a-z, got {c:?}")))
    }
}

fn shifted(src: SharedSource, shift: Option<f64>) -> SharedSource {
    match shift {
        Some(h) if h != 0.0 => Arc::new(Translated::new(src, Point::x(h))),
        _ => src,
    }
}

impl RuleSpec {
    pub fn build(&self) -> Result<SubstitutionRule> {
        match self {
            RuleSpec::Preset(name) => SubstitutionRule::preset(name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown substitution {name:?}"))),
            RuleSpec::Custom {
                words,
                lengths,
                inflation,
                field,
                colors,
            } => {
                let f = field_named(field.as_deref().unwrap_or("golden"))?;
                let words = words
                    .iter()
                    .map(|w| w.chars().map(letter).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(SubstitutionRule {
                    name: "substitution".into(),
                    colors: colors.clone().unwrap_or_else(|| (0..words.len()).collect()),
                    words,
                    lengths: lengths.iter().map(|l| l.resolve(f)).collect(),
                    inflation: inflation.resolve(f),
                })
            }
        }
    }
}

impl SourceSpec {
    /// Builds the source; `seed` overrides a Poisson seed.
    pub fn build(&self, seed: Option<u64>) -> Result<SharedSource> {
        Ok(match self {
            SourceSpec::Fibonacci { method, shift } => {
                let src: SharedSource = match method {
                    FibonacciMethod::CutProject => Arc::new(CutProjectSource::fibonacci()),
                    FibonacciMethod::Substitution => Arc::new(SubstitutionSource::fibonacci()),
                };
                shifted(src, *shift)
            }
            SourceSpec::Lattice {
                basis,
                origin,
                moduli,
            } => {
                let d = basis.len();
                Arc::new(LatticeSource::new(
                    basis.clone(),
                    origin.clone().unwrap_or_else(|| vec![0.0; d]),
                    moduli.clone().unwrap_or_else(|| vec![1; d]),
                )?)
            }
            SourceSpec::Substitution {
                rule,
                seed: letters,
                shift,
            } => {
                let rule = rule.build()?;
                let (left, right) = match letters.split_once('.') {
                    Some((l, r)) => (Some(l), r),
                    None => (None, letters.as_str()),
                };
                let one = |s: &str| -> Result<usize> {
                    let mut it = s.chars();
                    match (it.next(), it.next()) {
                        (Some(c), None) => letter(c),
                        _ => Err(Error::IllegalSeed(format!("bad seed {letters:?}"))),
                    }
                };
                let src = SubstitutionSource::new(rule, left.map(one).transpose()?, one(right)?)?;
                shifted(Arc::new(src), *shift)
            }
            SourceSpec::CutProject {
                field,
                window,
                offset,
                breaks,
                piece_colors,
            } => {
                let f = field_named(field)?;
                let spec = CutProjectSpec {
                    field: f,
                    window: (window[0].resolve(f), window[1].resolve(f)),
                    offset: offset.map_or(QuadInt::zero(f), |[a, b]| QuadInt::new(a, b, f)),
                    breaks: breaks.iter().map(|b| b.resolve(f)).collect(),
                    piece_colors: piece_colors.clone().unwrap_or_else(|| (0..=breaks.len()).collect()),
                };
                Arc::new(CutProjectSource::new(spec)?)
            }
            SourceSpec::Poisson {
                intensity,
                seed: s,
                dim,
            } => Arc::new(PoissonSource::new(*intensity, seed.unwrap_or(*s), *dim)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Region;

    #[test]
    fn parses_and_builds() {
        let specs = [
            r#"{"type":"fibonacci"}"#,
            r#"{"type":"fibonacci","method":"substitution"}"#,
            r#"{"type":"lattice","basis":[[2.0]],"moduli":[2]}"#,
            r#"{"type":"substitution","rule":"thue_morse","seed":"a.a"}"#,
            r#"{"type":"substitution","rule":{"words":["ab","a"],"lengths":[[0,1],[1,0]],"inflation":[0,1]},"seed":"a"}"#,
            r#"{"type":"cut_project","window":[[-1,0],[-1,1]]}"#,
            r#"{"type":"poisson","intensity":2.0,"seed":3}"#,
        ];
        for s in specs {
            let spec: SourceSpec = serde_json::from_str(s).unwrap();
            let src = spec.build(None).unwrap();
            assert!(!src.window(&Region::interval(0.0, 20.0)).unwrap().is_empty(), "{s}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(serde_json::from_str::<SourceSpec>(r#"{"type":"nope"}"#).is_err());
        let bad: SourceSpec = serde_json::from_str(r#"{"type":"lattice","basis":[[0.0]]}"#).unwrap();
        assert!(matches!(bad.build(None), Err(Error::SingularBasis)));
        let bad: SourceSpec =
            serde_json::from_str(r#"{"type":"substitution","rule":"fibonacci","seed":"b"}"#).unwrap();
        assert!(bad.build(None).is_err());
    }
}
