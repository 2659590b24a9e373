//! JSON input documents describing complexes and posets.
//!
//! Two shapes are accepted, discriminated by `"type"`:
//!
//! ```json
//! {"type":"complex","facets":[["a","b","c"],["c","d"]]}
//! {"type":"poset","points":["a","b"],"le":[["a","b"]]}
//! ```
//!
//! `le` pairs mean `first <= second` before reflexive-transitive closure.
//! Unknown fields are rejected. An optional `"name"` labels the object.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::poset::FinitePoset;
use crate::{Error, Result};

/// A parsed input document: a complex given by facets, or a poset given by
/// points and order-generating pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum InputDocument {
    Complex {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        name: Option<String>,
        facets: Vec<Vec<String>>,
    },
    Poset {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        name: Option<String>,
        points: Vec<String>,
        le: Vec<(String, String)>,
    },
}

impl InputDocument {
    /// Parses a JSON document, reporting schema violations with positions.
    pub fn parse(text: &str) -> Result<InputDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            InputDocument::Complex { name, .. } | InputDocument::Poset { name, .. } => {
                name.as_deref()
            }
        }
    }

    /// Builds the described complex; errors if the document is a poset.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        match self {
            InputDocument::Complex { facets, .. } => SimplicialComplex::build(facets),
            InputDocument::Poset { .. } => Err(Error::Parse(
                "expected a complex document, found a poset".into(),
            )),
        }
    }

    /// Builds the described poset; errors if the document is a complex.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        match self {
            InputDocument::Poset { points, le, .. } => FinitePoset::build(points, le),
            InputDocument::Complex { .. } => Err(Error::Parse(
                "expected a poset document, found a complex".into(),
            )),
        }
    }

    /// Canonical document for a complex: facets as name lists in canonical
    /// order.
    pub fn from_complex(k: &SimplicialComplex, name: Option<String>) -> InputDocument {
        let facets = k
            .facets()
            .iter()
            .map(|f| {
                f.vertices()
                    .into_iter()
                    .map(|v| k.name(v).to_string())
                    .collect()
            })
            .collect();
        InputDocument::Complex { name, facets }
    }

    /// Canonical document for a poset: points in order, `le` as the covering
    /// pairs (the relation regenerates under closure).
    pub fn from_poset(x: &FinitePoset, name: Option<String>) -> InputDocument {
        let mut le = Vec::new();
        for p in 0..x.point_count() {
            for q in x.covered_by(p) {
                le.push((x.name(q).to_string(), x.name(p).to_string()));
            }
        }
        InputDocument::Poset {
            name,
            points: x.point_names().to_vec(),
            le,
        }
    }

    /// Deterministic JSON encoding (struct field order is fixed).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization is infallible")
    }
}
