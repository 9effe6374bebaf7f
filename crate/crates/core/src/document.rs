//! JSON documents carrying a complex and, optionally, an HDA labelling and a
//! subdivision onto an inline target document.
//!
//! ```json
//! { "name": "int2",
//!   "cubes": [{"id": "0", "dim": 0}, {"id": "e", "dim": 1, "d0": ["0"], "d1": ["2"]}, …],
//!   "hda": {"initial": ["0"], "final": ["2"], "labels": {"e": "ab"}},
//!   "subdivision": {"source": "int2", "target": { …document… },
//!                   "vertex_map": {"0": "0"}, "cubes": {"e": {"shape": [2], "cells": {"0+": "01"}}}} }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubical::{CubeDecl, CubicalError, PrecubicalSet, DEFAULT_CUBE_LIMIT};
use crate::hda::{Hda, HdaError, Word};
use crate::subdivision::{CubeCells, SubdivisionData, SubdivisionError, SubdivisionMorphism};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    Hda(#[from] HdaError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("subdivision source `{found}` does not name this document (`{expected}`)")]
    SourceMismatch { expected: String, found: String },
    #[error("document has no {0} block")]
    MissingBlock(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub cubes: Vec<CubeDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hda: Option<HdaBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision: Option<Box<SubdivisionBlock>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HdaBlock {
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub finals: Vec<String>,
    pub labels: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionBlock {
    pub source: String,
    pub target: ComplexDocument,
    pub vertex_map: BTreeMap<String, String>,
    pub cubes: BTreeMap<String, CubeCells>,
}

impl ComplexDocument {
    pub fn from_complex(name: &str, complex: &PrecubicalSet) -> Self {
        ComplexDocument {
            name: name.to_string(),
            cubes: complex.decls(),
            hda: None,
            subdivision: None,
        }
    }

    pub fn from_hda(name: &str, hda: &Hda<Word>) -> Self {
        let p = hda.complex();
        let names = |ids: &[crate::CubeId]| ids.iter().map(|&v| p.name(v).to_string()).collect();
        ComplexDocument {
            hda: Some(HdaBlock {
                initial: names(hda.initial()),
                finals: names(hda.finals()),
                labels: hda
                    .labels()
                    .into_iter()
                    .map(|(e, w)| (e.to_string(), w.to_string()))
                    .collect(),
            }),
            ..Self::from_complex(name, p)
        }
    }

    /// Attaches `f`, whose source must be this document's complex.
    pub fn with_subdivision(mut self, f: &SubdivisionMorphism, target: ComplexDocument) -> Self {
        let data = f.to_data();
        self.subdivision = Some(Box::new(SubdivisionBlock {
            source: self.name.clone(),
            target,
            vertex_map: data.vertex_map,
            cubes: data.cubes,
        }));
        self
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn complex(&self) -> Result<PrecubicalSet, DocumentError> {
        Ok(PrecubicalSet::from_decls(self.cubes.clone(), DEFAULT_CUBE_LIMIT)?)
    }

    pub fn hda(&self) -> Result<Option<Hda<Word>>, DocumentError> {
        let Some(block) = &self.hda else {
            return Ok(None);
        };
        let hda = Hda::new(
            self.complex()?,
            block.initial.iter().map(String::as_str),
            block.finals.iter().map(String::as_str),
            block.labels.iter().map(|(e, w)| (e.as_str(), Word::new(w.clone()))),
        )?;
        Ok(Some(hda))
    }

    pub fn subdivision(&self) -> Result<Option<SubdivisionMorphism>, DocumentError> {
        let Some(block) = &self.subdivision else {
            return Ok(None);
        };
        if block.source != self.name {
            return Err(DocumentError::SourceMismatch {
                expected: self.name.clone(),
                found: block.source.clone(),
            });
        }
        let data = SubdivisionData {
            vertex_map: block.vertex_map.clone(),
            cubes: block.cubes.clone(),
        };
        Ok(Some(SubdivisionMorphism::new(
            self.complex()?,
            block.target.complex()?,
            &data,
        )?))
    }

    /// The subdivision's target document.
    pub fn target(&self) -> Option<&ComplexDocument> {
        self.subdivision.as_ref().map(|b| &b.target)
    }
}

/// Every fixture as a document; the file name is `{name}.json`.
pub fn fixture_documents() -> Vec<ComplexDocument> {
    use crate::fixtures;
    use crate::subdivision::{subdivide, subdivide_hda};
    let mut docs: Vec<ComplexDocument> = fixtures::all()
        .into_iter()
        .filter(|(n, _)| !matches!(*n, "labelled_grid" | "labelled_fine"))
        .map(|(n, p)| ComplexDocument::from_complex(n, &p))
        .collect();

    let a = fixtures::labelled_grid();
    let counts = a
        .complex()
        .edges()
        .map(|e| (a.complex().name(e).to_string(), 2))
        .collect();
    let (b, f) = subdivide_hda(&a, &counts).expect("labelled_grid subdivides");
    let target = ComplexDocument::from_hda("labelled_grid_subdivided", &b);
    docs.push(ComplexDocument::from_hda("labelled_grid", &a).with_subdivision(&f, target));
    docs.push(ComplexDocument::from_hda("labelled_fine", &fixtures::labelled_fine()));

    let e = fixtures::edge();
    let (q, f) = subdivide(&e, &[("e".to_string(), 2)].into()).expect("edge subdivides");
    docs.push(
        ComplexDocument::from_complex("int2", &e)
            .with_subdivision(&f, ComplexDocument::from_complex("int2-target", &q)),
    );

    let c = fixtures::circ();
    let (q, f) = subdivide(&c, &[("a".to_string(), 2)].into()).expect("circ subdivides");
    docs.push(
        ComplexDocument::from_complex("circ2", &c)
            .with_subdivision(&f, ComplexDocument::from_complex("circ2-target", &q)),
    );

    docs.push(ComplexDocument {
        name: "broken-square".into(),
        cubes: fixtures::broken_square(),
        hda: None,
        subdivision: None,
    });
    docs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        for doc in fixture_documents() {
            let text = doc.to_json();
            let back = ComplexDocument::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn documents_load() {
        for doc in fixture_documents() {
            if doc.name == "broken-square" {
                assert!(matches!(
                    doc.complex(),
                    Err(DocumentError::Cubical(CubicalError::IdentityViolation { .. }))
                ));
                continue;
            }
            doc.complex().unwrap();
            doc.hda().unwrap();
            doc.subdivision().unwrap();
        }
        let doc = fixture_documents().into_iter().find(|d| d.name == "labelled_grid").unwrap();
        let f = doc.subdivision().unwrap().unwrap();
        assert_eq!(f.target().counts(), vec![23, 32, 8]);
        assert_eq!(doc.hda().unwrap().unwrap(), fixtures::labelled_grid());
    }

    #[test]
    fn rejects_unknown_fields_and_bad_sources() {
        assert!(ComplexDocument::parse(r#"{"name":"x","cubes":[],"extra":1}"#).is_err());
        let mut doc = fixture_documents().into_iter().find(|d| d.name == "int2").unwrap();
        doc.subdivision.as_mut().unwrap().source = "other".into();
        assert!(matches!(
            doc.subdivision(),
            Err(DocumentError::SourceMismatch { .. })
        ));
    }
}
