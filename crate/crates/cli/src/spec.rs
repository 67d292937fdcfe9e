//! The JSON walk specification read by every analysis command.
//!
//! ```json
//! {
//!   "group": {"torsion": [12], "rank": 0},
//!   "distribution": [
//!     {"elem": {"torsion": [-1], "free": []}, "weight": "1/2"},
//!     {"elem": {"torsion": [2], "free": []}, "weight": "1/2"}
//!   ]
//! }
//! ```
//!
//! Torsion residues may be any integers; they are reduced on parse.

use std::io::Read;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use dancewalk::group::GroupSpec;
use dancewalk::measure::Distribution;

use crate::error::{CliError, CliResult};
use crate::output::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default)]
    pub torsion: Vec<i64>,
    #[serde(default)]
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    #[serde(default)]
    pub torsion: Vec<i64>,
    #[serde(default)]
    pub free: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedElement {
    pub elem: ElementDoc,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSpecDocument {
    pub group: GroupDoc,
    pub distribution: Vec<WeightedElement>,
}

impl WalkSpecDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed spec: {e}")))
    }

    /// Reads from a file, or from standard input when `path` is `-`.
    pub fn load(path: &str) -> CliResult<Self> {
        let mut text = String::new();
        if path == "-" {
            std::io::stdin().read_to_string(&mut text)?;
        } else {
            text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
        }
        Self::parse(&text)
    }

    pub fn to_distribution(&self) -> CliResult<Distribution> {
        let g = GroupSpec::new(self.group.torsion.clone(), self.group.rank)?;
        let mut entries = Vec::with_capacity(self.distribution.len());
        for w in &self.distribution {
            let x = g.element(&w.elem.torsion, &w.elem.free)?;
            let weight: BigRational = w
                .weight
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("weight {:?} is not a rational a/b", w.weight)))?;
            entries.push((x, weight));
        }
        Ok(Distribution::new(g, entries)?)
    }

    /// Canonical document: reduced residues, merged points in ascending
    /// order, and weights in lowest terms.
    pub fn from_distribution(p: &Distribution) -> Self {
        let g = p.group();
        WalkSpecDocument {
            group: GroupDoc {
                torsion: g.moduli().to_vec(),
                rank: g.free_rank(),
            },
            distribution: p
                .iter()
                .map(|(x, w)| WeightedElement {
                    elem: ElementDoc {
                        torsion: x.torsion().to_vec(),
                        free: x.free().to_vec(),
                    },
                    weight: rational(w),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z12: &str = r#"{"group": {"torsion": [12], "rank": 0},
        "distribution": [{"elem": {"torsion": [-1]}, "weight": "1/2"},
                         {"elem": {"torsion": [2]}, "weight": "2/4"}]}"#;

    #[test]
    fn parses_and_reduces() {
        let p = WalkSpecDocument::parse(Z12).unwrap().to_distribution().unwrap();
        let doc = WalkSpecDocument::from_distribution(&p);
        assert_eq!(doc.distribution[0].elem.torsion, vec![2]);
        assert_eq!(doc.distribution[1].elem.torsion, vec![11]);
        assert_eq!(doc.distribution[1].weight, "1/2");
    }

    #[test]
    fn round_trip() {
        let p = WalkSpecDocument::parse(Z12).unwrap().to_distribution().unwrap();
        let text = serde_json::to_string(&WalkSpecDocument::from_distribution(&p)).unwrap();
        assert_eq!(WalkSpecDocument::parse(&text).unwrap().to_distribution().unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(WalkSpecDocument::parse("{").is_err());
        let bad_sum = Z12.replace("2/4", "1/4");
        assert!(WalkSpecDocument::parse(&bad_sum).unwrap().to_distribution().is_err());
        let bad_weight = Z12.replace("2/4", "half");
        assert!(WalkSpecDocument::parse(&bad_weight).unwrap().to_distribution().is_err());
        let bad_elem = Z12.replace(r#""torsion": [2]"#, r#""torsion": [2, 3]"#);
        assert!(WalkSpecDocument::parse(&bad_elem).unwrap().to_distribution().is_err());
    }
}
