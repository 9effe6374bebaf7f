//! Finite precubical sets.
//!
//! A [`PrecubicalSet`] is a finite graded set of cubes with boundary operators
//! `d_i^k` (`k ∈ {0,1}`, `1 ≤ i ≤ deg`) satisfying the precubical identities
//! `d_i^k d_j^l = d_{j-1}^l d_i^k` for `i < j`. Cubes carry string identifiers;
//! internally they are stored sorted by `(degree, identifier)`, and that order
//! fixes every matrix basis and every tie-break in the crate.

mod grid;
mod iso;
mod path;
mod subset;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use grid::{GridCell, GridCoord, GridKeyError, GridShape};
pub use iso::{find_isomorphism, is_isomorphic};
pub use path::Path;
pub use subset::PrecubicalSubset;

/// Default upper bound on the number of cubes of a single precubical set.
pub const DEFAULT_CUBE_LIMIT: usize = 100_000;

/// Index of a cube inside its [`PrecubicalSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeId(pub(crate) u32);

impl CubeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        CubeId(index as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicalError {
    #[error("duplicate cube identifier `{0}`")]
    DuplicateId(String),
    #[error("cube `{cube}` refers to undeclared face `{face}`")]
    MissingFace { cube: String, face: String },
    #[error("cube `{cube}`: face `{face}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        cube: String,
        face: String,
        expected: usize,
        found: usize,
    },
    #[error("cube `{cube}` of degree {dim} declares {lower} lower and {upper} upper faces")]
    FaceCountMismatch {
        cube: String,
        dim: usize,
        lower: usize,
        upper: usize,
    },
    #[error("identity violated at `{cube}`: d_{i}^{k} d_{j}^{l} != d_{}^{l} d_{i}^{k} (i={i}, j={j}, k={k}, l={l})", j - 1)]
    IdentityViolation {
        cube: String,
        i: usize,
        j: usize,
        k: u8,
        l: u8,
    },
    #[error("{count} cubes exceed the limit of {limit}")]
    TooLarge { count: usize, limit: usize },
    #[error("unknown cube `{0}`")]
    UnknownCube(String),
    #[error("`{0}` is not a vertex")]
    NotAVertex(String),
    #[error("`{0}` is not an edge")]
    NotAnEdge(String),
    #[error("subset contains `{cube}` but not its face `{face}`")]
    NotClosed { cube: String, face: String },
    #[error("edges {position} and {} of the path do not chain", position + 1)]
    BrokenChain { position: usize },
    #[error("cannot concatenate: path ends at `{end}` but the next starts at `{start}`")]
    EndpointMismatch { end: String, start: String },
}

/// One declared cube: identifier, degree and its lower (`d0[i] = d_{i+1}^0`)
/// and upper (`d1[i] = d_{i+1}^1`) faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeDecl {
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d0: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d1: Vec<String>,
}

impl CubeDecl {
    pub fn vertex(id: impl Into<String>) -> Self {
        CubeDecl {
            id: id.into(),
            dim: 0,
            d0: Vec::new(),
            d1: Vec::new(),
        }
    }

    pub fn cube<S: Into<String>>(
        id: impl Into<String>,
        d0: impl IntoIterator<Item = S>,
        d1: impl IntoIterator<Item = S>,
    ) -> Self {
        let d0: Vec<String> = d0.into_iter().map(Into::into).collect();
        let d1: Vec<String> = d1.into_iter().map(Into::into).collect();
        CubeDecl {
            id: id.into(),
            dim: d0.len(),
            d0,
            d1,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PrecubicalBuilder {
    decls: Vec<CubeDecl>,
    limit: Option<usize>,
}

impl PrecubicalBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.decls.push(CubeDecl::vertex(id));
        self
    }

    pub fn vertices<S: Into<String>>(mut self, ids: impl IntoIterator<Item = S>) -> Self {
        self.decls.extend(ids.into_iter().map(CubeDecl::vertex));
        self
    }

    /// An edge from `source` to `target`.
    pub fn edge(self, id: impl Into<String>, source: &str, target: &str) -> Self {
        self.cube(id, [source], [target])
    }

    pub fn cube<S: Into<String>>(
        mut self,
        id: impl Into<String>,
        d0: impl IntoIterator<Item = S>,
        d1: impl IntoIterator<Item = S>,
    ) -> Self {
        self.decls.push(CubeDecl::cube(id, d0, d1));
        self
    }

    pub fn push(&mut self, decl: CubeDecl) {
        self.decls.push(decl);
    }

    pub fn build(self) -> Result<PrecubicalSet, CubicalError> {
        PrecubicalSet::from_decls(self.decls, self.limit.unwrap_or(DEFAULT_CUBE_LIMIT))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cube {
    name: String,
    degree: usize,
    /// `faces[2 * (i - 1) + k] = d_i^k`.
    faces: Vec<CubeId>,
}

#[derive(Debug, Clone)]
pub struct PrecubicalSet {
    cubes: Vec<Cube>,
    /// Cubes of degree `n` occupy `offsets[n]..offsets[n + 1]`.
    offsets: Vec<usize>,
    index: HashMap<String, CubeId>,
}

impl PartialEq for PrecubicalSet {
    fn eq(&self, other: &Self) -> bool {
        self.cubes == other.cubes
    }
}

impl Eq for PrecubicalSet {}

impl PrecubicalSet {
    pub fn builder() -> PrecubicalBuilder {
        PrecubicalBuilder::new()
    }

    pub fn empty() -> Self {
        PrecubicalSet {
            cubes: Vec::new(),
            offsets: vec![0, 0],
            index: HashMap::new(),
        }
    }

    /// Validates a list of declarations.
    pub fn from_decls(mut decls: Vec<CubeDecl>, limit: usize) -> Result<Self, CubicalError> {
        if decls.len() > limit {
            return Err(CubicalError::TooLarge {
                count: decls.len(),
                limit,
            });
        }
        for d in &decls {
            if d.d0.len() != d.dim || d.d1.len() != d.dim {
                return Err(CubicalError::FaceCountMismatch {
                    cube: d.id.clone(),
                    dim: d.dim,
                    lower: d.d0.len(),
                    upper: d.d1.len(),
                });
            }
        }
        decls.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut index = HashMap::with_capacity(decls.len());
        for (pos, d) in decls.iter().enumerate() {
            if index.insert(d.id.clone(), CubeId::from_index(pos)).is_some() {
                return Err(CubicalError::DuplicateId(d.id.clone()));
            }
        }
        let top = decls.last().map_or(0, |d| d.dim);
        let mut offsets = vec![0; top + 2];
        for d in &decls {
            offsets[d.dim + 1] += 1;
        }
        for n in 1..offsets.len() {
            offsets[n] += offsets[n - 1];
        }

        let mut cubes = Vec::with_capacity(decls.len());
        for d in &decls {
            let mut faces = Vec::with_capacity(2 * d.dim);
            for i in 0..d.dim {
                for name in [&d.d0[i], &d.d1[i]] {
                    let id = *index.get(name).ok_or_else(|| CubicalError::MissingFace {
                        cube: d.id.clone(),
                        face: name.clone(),
                    })?;
                    let found = decls[id.index()].dim;
                    if found + 1 != d.dim {
                        return Err(CubicalError::DegreeMismatch {
                            cube: d.id.clone(),
                            face: name.clone(),
                            expected: d.dim - 1,
                            found,
                        });
                    }
                    faces.push(id);
                }
            }
            cubes.push(Cube {
                name: d.id.clone(),
                degree: d.dim,
                faces,
            });
        }
        let set = PrecubicalSet {
            cubes,
            offsets,
            index,
        };
        set.check_identities()?;
        Ok(set)
    }

    fn check_identities(&self) -> Result<(), CubicalError> {
        for x in self.ids() {
            let n = self.degree(x);
            for j in 2..=n {
                for i in 1..j {
                    for k in 0..2u8 {
                        for l in 0..2u8 {
                            let lhs = self.face(self.face(x, j, l), i, k);
                            let rhs = self.face(self.face(x, i, k), j - 1, l);
                            if lhs != rhs {
                                return Err(CubicalError::IdentityViolation {
                                    cube: self.name(x).to_string(),
                                    i,
                                    j,
                                    k,
                                    l,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Highest degree present (0 for the empty set).
    pub fn dimension(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = CubeId> + ExactSizeIterator {
        (0..self.cubes.len()).map(CubeId::from_index)
    }

    pub fn cubes_of_degree(
        &self,
        n: usize,
    ) -> impl DoubleEndedIterator<Item = CubeId> + ExactSizeIterator {
        let range = if n + 1 < self.offsets.len() {
            self.offsets[n]..self.offsets[n + 1]
        } else {
            0..0
        };
        range.map(CubeId::from_index)
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = CubeId> + ExactSizeIterator {
        self.cubes_of_degree(0)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = CubeId> + ExactSizeIterator {
        self.cubes_of_degree(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.cubes_of_degree(n).len()
    }

    /// Number of cubes per degree, `0..=dimension()`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dimension()).map(|n| self.count(n)).collect()
    }

    pub fn degree(&self, x: CubeId) -> usize {
        self.cubes[x.index()].degree
    }

    pub fn name(&self, x: CubeId) -> &str {
        &self.cubes[x.index()].name
    }

    pub fn id(&self, name: &str) -> Option<CubeId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<CubeId, CubicalError> {
        self.id(name)
            .ok_or_else(|| CubicalError::UnknownCube(name.to_string()))
    }

    /// Position of `x` among the cubes of its degree; this is its row/column
    /// in chain-level matrices.
    pub fn position(&self, x: CubeId) -> usize {
        x.index() - self.offsets[self.degree(x)]
    }

    /// The `pos`-th cube of degree `n`.
    pub fn cube_at(&self, n: usize, pos: usize) -> CubeId {
        CubeId::from_index(self.offsets[n] + pos)
    }

    /// `d_i^k x` with `1 ≤ i ≤ deg(x)`.
    pub fn face(&self, x: CubeId, i: usize, k: u8) -> CubeId {
        let cube = &self.cubes[x.index()];
        assert!(
            (1..=cube.degree).contains(&i) && k < 2,
            "face d_{i}^{k} undefined on a cube of degree {}",
            cube.degree
        );
        cube.faces[2 * (i - 1) + k as usize]
    }

    pub fn source(&self, edge: CubeId) -> CubeId {
        self.face(edge, 1, 0)
    }

    pub fn target(&self, edge: CubeId) -> CubeId {
        self.face(edge, 1, 1)
    }

    /// `x_♯(cell)` for a cell of the standard cube `⟦0,1⟧^{⊗n}`, `n = deg(x)`.
    pub fn sharp(&self, x: CubeId, cell: &GridCell) -> CubeId {
        debug_assert_eq!(cell.dim(), self.degree(x));
        let mut y = x;
        for axis in (0..cell.dim()).rev() {
            if let GridCoord::Point(p) = cell.coord(axis) {
                debug_assert!(p <= 1);
                y = self.face(y, axis + 1, p as u8);
            }
        }
        y
    }

    /// `x_♯(0,…,0)`.
    pub fn min_corner(&self, x: CubeId) -> CubeId {
        let mut y = x;
        while self.degree(y) > 0 {
            y = self.face(y, 1, 0);
        }
        y
    }

    /// `x_♯(1,…,1)`.
    pub fn max_corner(&self, x: CubeId) -> CubeId {
        let mut y = x;
        while self.degree(y) > 0 {
            y = self.face(y, 1, 1);
        }
        y
    }

    /// Smallest precubical subset containing `seeds`, i.e. the union of the
    /// `x_♯(⟦0,1⟧^{⊗deg x})`.
    pub fn closure(&self, seeds: impl IntoIterator<Item = CubeId>) -> PrecubicalSubset<'_> {
        PrecubicalSubset::closure(self, seeds)
    }

    pub fn closure_of_names<'s>(
        &self,
        names: impl IntoIterator<Item = &'s str>,
    ) -> Result<PrecubicalSubset<'_>, CubicalError> {
        let ids = names
            .into_iter()
            .map(|n| self.lookup(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.closure(ids))
    }

    /// Largest precubical subset whose vertices all lie in `vertices`.
    pub fn full_subcomplex(
        &self,
        vertices: impl IntoIterator<Item = CubeId>,
    ) -> Result<PrecubicalSubset<'_>, CubicalError> {
        PrecubicalSubset::full_subcomplex(self, vertices)
    }

    pub fn whole(&self) -> PrecubicalSubset<'_> {
        PrecubicalSubset::whole(self)
    }

    /// Declarations reproducing this set, in cube order.
    pub fn decls(&self) -> Vec<CubeDecl> {
        self.ids()
            .map(|x| {
                let n = self.degree(x);
                CubeDecl {
                    id: self.name(x).to_string(),
                    dim: n,
                    d0: (1..=n)
                        .map(|i| self.name(self.face(x, i, 0)).to_string())
                        .collect(),
                    d1: (1..=n)
                        .map(|i| self.name(self.face(x, i, 1)).to_string())
                        .collect(),
                }
            })
            .collect()
    }

    /// Tensor product `P ⊗ Q`; the cell `(x, y)` is named `x*y`.
    pub fn tensor(&self, other: &PrecubicalSet) -> Result<PrecubicalSet, CubicalError> {
        self.tensor_with_limit(other, DEFAULT_CUBE_LIMIT)
    }

    pub fn tensor_with_limit(
        &self,
        other: &PrecubicalSet,
        limit: usize,
    ) -> Result<PrecubicalSet, CubicalError> {
        let count = self.len().saturating_mul(other.len());
        if count > limit {
            return Err(CubicalError::TooLarge { count, limit });
        }
        let pair = |x: CubeId, y: CubeId| format!("{}*{}", self.name(x), other.name(y));
        let mut decls = Vec::with_capacity(count);
        for x in self.ids() {
            for y in other.ids() {
                let (p, q) = (self.degree(x), other.degree(y));
                let mut d0 = Vec::with_capacity(p + q);
                let mut d1 = Vec::with_capacity(p + q);
                for i in 1..=p {
                    d0.push(pair(self.face(x, i, 0), y));
                    d1.push(pair(self.face(x, i, 1), y));
                }
                for i in 1..=q {
                    d0.push(pair(x, other.face(y, i, 0)));
                    d1.push(pair(x, other.face(y, i, 1)));
                }
                decls.push(CubeDecl {
                    id: pair(x, y),
                    dim: p + q,
                    d0,
                    d1,
                });
            }
        }
        PrecubicalSet::from_decls(decls, limit)
    }

    /// The precubical interval `⟦k,l⟧`: vertices named `"j"`, edges `[j,j+1]`
    /// named `"j+"`.
    pub fn interval(k: i64, l: i64) -> PrecubicalSet {
        assert!(k <= l, "empty interval");
        let mut b = PrecubicalBuilder::new();
        for j in k..=l {
            b = b.vertex(j.to_string());
        }
        for j in k..l {
            b = b.edge(format!("{j}+"), &j.to_string(), &(j + 1).to_string());
        }
        b.build().expect("intervals are valid")
    }
}

impl fmt::Display for PrecubicalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts().iter().map(|c| c.to_string()).collect();
        write!(f, "precubical set ({})", counts.join(", "))
    }
}
