use super::{CubeId, CubicalError, PrecubicalSet};

/// A combinatorial path: a vertex (length 0) or a chain of edges
/// `x_1 … x_k` with `d_1^0 x_{j+1} = d_1^1 x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    start: CubeId,
    end: CubeId,
    edges: Vec<CubeId>,
}

impl Path {
    pub fn constant(complex: &PrecubicalSet, vertex: CubeId) -> Result<Path, CubicalError> {
        if complex.degree(vertex) != 0 {
            return Err(CubicalError::NotAVertex(complex.name(vertex).to_string()));
        }
        Ok(Path {
            start: vertex,
            end: vertex,
            edges: Vec::new(),
        })
    }

    /// A path of positive length.
    pub fn from_edges(complex: &PrecubicalSet, edges: Vec<CubeId>) -> Result<Path, CubicalError> {
        let first = *edges.first().ok_or(CubicalError::BrokenChain { position: 0 })?;
        for &e in &edges {
            if complex.degree(e) != 1 {
                return Err(CubicalError::NotAnEdge(complex.name(e).to_string()));
            }
        }
        for (position, pair) in edges.windows(2).enumerate() {
            if complex.target(pair[0]) != complex.source(pair[1]) {
                return Err(CubicalError::BrokenChain {
                    position: position + 1,
                });
            }
        }
        let last = *edges.last().unwrap();
        Ok(Path {
            start: complex.source(first),
            end: complex.target(last),
            edges,
        })
    }

    /// A path given by a start vertex and a (possibly empty) edge sequence.
    pub fn new(
        complex: &PrecubicalSet,
        start: CubeId,
        edges: Vec<CubeId>,
    ) -> Result<Path, CubicalError> {
        if edges.is_empty() {
            return Path::constant(complex, start);
        }
        let path = Path::from_edges(complex, edges)?;
        if path.start != start {
            return Err(CubicalError::EndpointMismatch {
                end: complex.name(start).to_string(),
                start: complex.name(path.start).to_string(),
            });
        }
        Ok(path)
    }

    pub fn from_names(complex: &PrecubicalSet, edges: &[&str]) -> Result<Path, CubicalError> {
        let ids = edges
            .iter()
            .map(|n| complex.lookup(n))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(complex, ids)
    }

    pub fn source(&self) -> CubeId {
        self.start
    }

    pub fn target(&self) -> CubeId {
        self.end
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[CubeId] {
        &self.edges
    }

    /// Visited vertices, `length + 1` of them.
    pub fn vertices(&self, complex: &PrecubicalSet) -> Vec<CubeId> {
        std::iter::once(self.start)
            .chain(self.edges.iter().map(|&e| complex.target(e)))
            .collect()
    }

    /// `self · other`.
    pub fn concat(&self, other: &Path, complex: &PrecubicalSet) -> Result<Path, CubicalError> {
        if self.end != other.start {
            return Err(CubicalError::EndpointMismatch {
                end: complex.name(self.end).to_string(),
                start: complex.name(other.start).to_string(),
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            start: self.start,
            end: other.end,
            edges,
        })
    }

    pub fn names<'c>(&self, complex: &'c PrecubicalSet) -> Vec<&'c str> {
        self.edges.iter().map(|&e| complex.name(e)).collect()
    }
}
