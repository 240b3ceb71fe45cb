//! JSON formats for algebra presentations and exchange matrices.
//!
//! An algebra file looks like
//!
//! ```json
//! {"vertices": ["1", "2"],
//!  "arrows": [{"id": "a", "from": "1", "to": "2"}],
//!  "relations": [],
//!  "field_char": 101,
//!  "truncation": 30}
//! ```
//!
//! where each relation is a list of `{"coeff": c, "path": [arrow ids]}`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Quiver, Relation, DEFAULT_CHAR, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::fz::ExchangeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default = "default_char")]
    pub field_char: u32,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
}

fn default_char() -> u32 {
    DEFAULT_CHAR
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

impl AlgebraFile {
    pub fn to_presentation(&self) -> Result<AlgebraPresentation> {
        let arrows = self.arrows.iter().map(|a| (a.id.clone(), a.from.clone(), a.to.clone())).collect();
        let quiver = Quiver::from_named(self.vertices.clone(), arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut terms = Vec::with_capacity(r.len());
            for t in r {
                let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
                terms.push((t.coeff, quiver.path_from_ids(&ids)?));
            }
            relations.push(Relation::new(terms));
        }
        Ok(AlgebraPresentation { quiver, relations, field_char: self.field_char, truncation: self.truncation })
    }

    pub fn from_presentation(p: &AlgebraPresentation) -> Self {
        let q = &p.quiver;
        let name = |v: usize| q.vertices[v].clone();
        AlgebraFile {
            vertices: q.vertices.clone(),
            arrows: q.arrows.iter().map(|a| ArrowSpec { id: a.id.clone(), from: name(a.source), to: name(a.target) }).collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermSpec { coeff: *c, path: path.iter().map(|&a| q.arrows[a].id.clone()).collect() })
                        .collect()
                })
                .collect(),
            field_char: p.field_char,
            truncation: p.truncation,
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_presentation()
}

pub fn algebra_to_json(p: &AlgebraPresentation) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_presentation(p)).expect("plain data serializes")
}

/// An exchange matrix as a JSON array of integer rows.
pub fn parse_exchange_matrix(text: &str) -> Result<ExchangeMatrix> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
