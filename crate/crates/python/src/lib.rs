//! Python bindings: complexes, homology, the pointing relation, subdivisions
//! and reduction. Structured results come back as plain dicts and lists.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use hdagraph::document::{fixture_documents, ComplexDocument};
use hdagraph::export::{
    concepts_to_json, graph_to_dot, graph_to_json, presentation_to_json, reachability_to_json,
};
use hdagraph::hograph::{homology_graph_with, PointingRelation};
use hdagraph::homology::HomologyPresentation;
use hdagraph::reach::{concepts, reachability};
use hdagraph::reduction::reduce;
use hdagraph::subdivision::{check_abstraction, subdivide, subdivide_hda, SubdivisionMorphism};
use hdagraph::{Hda, Path, PrecubicalSet, PrecubicalSubset, Ring, Word};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring(s: &str) -> PyResult<Ring> {
    s.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

/// A precubical set, optionally labelled as an HDA.
#[pyclass(module = "pyhdagraph", frozen)]
struct Complex {
    name: String,
    complex: PrecubicalSet,
    hda: Option<Hda<Word>>,
}

impl Complex {
    fn from_document(doc: &ComplexDocument) -> PyResult<Self> {
        Ok(Complex {
            name: doc.name.clone(),
            complex: doc.complex().map_err(err)?,
            hda: doc.hda().map_err(err)?,
        })
    }

    fn document(&self) -> ComplexDocument {
        match &self.hda {
            Some(h) => ComplexDocument::from_hda(&self.name, h),
            None => ComplexDocument::from_complex(&self.name, &self.complex),
        }
    }
}

#[pymethods]
impl Complex {
    /// Parses a JSON document; any subdivision block is ignored.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::from_document(&ComplexDocument::parse(text).map_err(err)?)
    }

    /// One of the built-in fixtures, by file name without `.json`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let doc = fixture_documents()
            .into_iter()
            .find(|d| d.name == name)
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
        Self::from_document(&doc)
    }

    #[staticmethod]
    fn fixture_names() -> Vec<String> {
        fixture_documents().into_iter().map(|d| d.name).collect()
    }

    fn to_json(&self) -> String {
        self.document().to_json()
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    #[getter]
    fn is_hda(&self) -> bool {
        self.hda.is_some()
    }

    fn counts(&self) -> Vec<usize> {
        self.complex.counts()
    }

    fn dimension(&self) -> usize {
        self.complex.dimension()
    }

    fn cubes(&self) -> Vec<String> {
        self.complex.ids().map(|x| self.complex.name(x).to_string()).collect()
    }

    #[pyo3(signature = (ring = "z"))]
    fn homology<'py>(&self, py: Python<'py>, ring: &str) -> PyResult<Bound<'py, PyAny>> {
        let h = HomologyPresentation::compute(&self.complex, self::ring(ring)?);
        to_py(py, &presentation_to_json(&self.complex, &h))
    }

    fn reachability<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &reachability_to_json(&self.complex, &reachability(&self.complex)))
    }

    fn concepts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let cs = concepts(&reachability(&self.complex)).map_err(err)?;
        to_py(py, &concepts_to_json(&self.complex, &cs))
    }

    /// Whether `source ↗ target`, for class expressions such as `H1.g0`,
    /// `2*H1.g0+-1*H1.g1` or `zero`.
    #[pyo3(signature = (source, target, ring = "z"))]
    fn points_to(&self, source: &str, target: &str, ring: &str) -> PyResult<bool> {
        let ring = self::ring(ring)?;
        let h = HomologyPresentation::compute(&self.complex, ring);
        let a = h.parse_class(&self.complex, source).map_err(err)?;
        let b = h.parse_class(&self.complex, target).map_err(err)?;
        let r = PointingRelation::new(&self.complex, ring).map_err(err)?;
        r.points_to(&a, &b).map_err(err)
    }

    /// The homology graph as a dict (nodes, edges, concept table).
    #[pyo3(signature = (ring = "z"))]
    fn hograph<'py>(&self, py: Python<'py>, ring: &str) -> PyResult<Bound<'py, PyAny>> {
        let ring = self::ring(ring)?;
        let r = PointingRelation::new(&self.complex, ring).map_err(err)?;
        let h = HomologyPresentation::compute(&self.complex, ring);
        let g = homology_graph_with(&self.name, &r, &h).map_err(err)?;
        to_py(py, &graph_to_json(&self.complex, &g))
    }

    #[pyo3(signature = (ring = "z"))]
    fn hograph_dot(&self, ring: &str) -> PyResult<String> {
        let ring = self::ring(ring)?;
        let r = PointingRelation::new(&self.complex, ring).map_err(err)?;
        let h = HomologyPresentation::compute(&self.complex, ring);
        Ok(graph_to_dot(&homology_graph_with(&self.name, &r, &h).map_err(err)?))
    }

    /// Subdivides every edge into `counts.get(edge, all)` pieces.
    #[pyo3(signature = (counts = BTreeMap::new(), all = 1))]
    fn subdivide(&self, counts: BTreeMap<String, u32>, all: u32) -> PyResult<Subdivision> {
        let mut map: BTreeMap<String, u32> = self
            .complex
            .edges()
            .map(|e| (self.complex.name(e).to_string(), all))
            .collect();
        map.extend(counts);
        let target_name = format!("{}_subdivided", self.name);
        let (target, morphism) = match &self.hda {
            Some(a) => {
                let (b, f) = subdivide_hda(a, &map).map_err(err)?;
                (Complex { name: target_name, complex: b.complex().clone(), hda: Some(b) }, f)
            }
            None => {
                let (q, f) = subdivide(&self.complex, &map).map_err(err)?;
                (Complex { name: target_name, complex: q, hda: None }, f)
            }
        };
        Ok(Subdivision {
            source: Complex {
                name: self.name.clone(),
                complex: self.complex.clone(),
                hda: self.hda.clone(),
            },
            target,
            morphism,
        })
    }

    fn __repr__(&self) -> String {
        format!("Complex({:?}, counts={:?})", self.name, self.complex.counts())
    }
}

/// A grid subdivision `f: P → Q`.
#[pyclass(module = "pyhdagraph", frozen)]
struct Subdivision {
    source: Complex,
    target: Complex,
    morphism: SubdivisionMorphism,
}

#[pymethods]
impl Subdivision {
    /// Parses a document carrying a subdivision block.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = ComplexDocument::parse(text).map_err(err)?;
        let morphism = doc
            .subdivision()
            .map_err(err)?
            .ok_or_else(|| err("document has no subdivision block"))?;
        Ok(Subdivision {
            source: Complex::from_document(&doc)?,
            target: Complex::from_document(doc.target().expect("subdivision has a target"))?,
            morphism,
        })
    }

    fn to_json(&self) -> String {
        self.source
            .document()
            .with_subdivision(&self.morphism, self.target.document())
            .to_json()
    }

    fn source(&self) -> Complex {
        Complex {
            name: self.source.name.clone(),
            complex: self.source.complex.clone(),
            hda: self.source.hda.clone(),
        }
    }

    fn target(&self) -> Complex {
        Complex {
            name: self.target.name.clone(),
            complex: self.target.complex.clone(),
            hda: self.target.hda.clone(),
        }
    }

    /// Name of the source cube carrying a target cube.
    fn carrier(&self, cube: &str) -> PyResult<String> {
        let q = self.morphism.target();
        let a = q.lookup(cube).map_err(err)?;
        Ok(self.morphism.source().name(self.morphism.carrier(a)).to_string())
    }

    /// Raises `ValueError` unless the target HDA abstracts to the source HDA.
    fn check_abstraction(&self) -> PyResult<()> {
        match (&self.source.hda, &self.target.hda) {
            (Some(a), Some(b)) => check_abstraction(&self.morphism, a, b).map_err(err),
            _ => Err(err("both ends must be labelled")),
        }
    }

    /// `f_*` of a source class: target generator coordinates by name.
    #[pyo3(signature = (class_expr, ring = "z"))]
    fn map_class(&self, class_expr: &str, ring: &str) -> PyResult<BTreeMap<String, i64>> {
        let ring = self::ring(ring)?;
        let (p, q) = (self.morphism.source(), self.morphism.target());
        let hp = HomologyPresentation::compute(p, ring);
        let hq = HomologyPresentation::compute(q, ring);
        let a = hp.parse_class(p, class_expr).map_err(err)?;
        let b = self.morphism.pushforward_class(&a).map_err(err)?;
        let coords = hq.coordinates(q, &b).map_err(err)?;
        hq.generators()
            .filter(|g| g.degree == b.degree())
            .zip(coords)
            .filter(|(_, k)| k.sign() != num_bigint::Sign::NoSign)
            .map(|(g, k)| {
                let k = i64::try_from(&k).map_err(err)?;
                Ok((g.name.clone(), k))
            })
            .collect()
    }

    /// Lifts a path of target edges; returns the source edges.
    fn lift_path(&self, edges: Vec<String>) -> PyResult<Vec<String>> {
        let q = self.morphism.target();
        let names: Vec<&str> = edges.iter().map(String::as_str).collect();
        let path = Path::from_names(q, &names).map_err(err)?;
        let lifted = self.morphism.lift_path(&path);
        Ok(lifted
            .names(self.morphism.source())
            .into_iter()
            .map(String::from)
            .collect())
    }

    /// Reduces the face closure of `cubes` in the target; returns the
    /// reduced subset and the removed source cubes in order.
    fn reduce(&self, cubes: Vec<String>) -> PyResult<(Vec<String>, Vec<String>)> {
        let q = self.morphism.target();
        let ids = cubes
            .iter()
            .map(|n| q.lookup(n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let a = PrecubicalSubset::closure(q, ids);
        let r = reduce(&self.morphism, &a).map_err(err)?;
        if let Some(bad) = r.steps.iter().find(|s| !s.holds()) {
            return Err(err(format!("step removing `{}` is not certified", bad.removed)));
        }
        Ok((
            r.result.iter().map(|x| q.name(x).to_string()).collect(),
            r.steps.into_iter().map(|s| s.removed).collect(),
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "Subdivision({:?} -> {:?}, counts={:?})",
            self.source.name,
            self.target.name,
            self.morphism.target().counts()
        )
    }
}

#[pymodule]
fn pyhdagraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_class::<Subdivision>()?;
    Ok(())
}
