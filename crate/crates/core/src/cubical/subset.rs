use std::fmt;

use fixedbitset::FixedBitSet;

use super::{CubeDecl, CubeId, CubicalError, PrecubicalSet, DEFAULT_CUBE_LIMIT};

/// A graded subset of a precubical set that is stable under every `d_i^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrecubicalSubset<'a> {
    parent: &'a PrecubicalSet,
    members: FixedBitSet,
}

impl<'a> PrecubicalSubset<'a> {
    pub fn empty(parent: &'a PrecubicalSet) -> Self {
        PrecubicalSubset {
            parent,
            members: FixedBitSet::with_capacity(parent.len()),
        }
    }

    pub fn whole(parent: &'a PrecubicalSet) -> Self {
        let mut members = FixedBitSet::with_capacity(parent.len());
        members.insert_range(..);
        PrecubicalSubset { parent, members }
    }

    /// Checks closure under the boundary operators.
    pub fn new(parent: &'a PrecubicalSet, members: FixedBitSet) -> Result<Self, CubicalError> {
        assert_eq!(members.len(), parent.len(), "member set sized for another complex");
        for x in members.ones().map(CubeId::from_index) {
            for i in 1..=parent.degree(x) {
                for k in 0..2 {
                    let y = parent.face(x, i, k);
                    if !members.contains(y.index()) {
                        return Err(CubicalError::NotClosed {
                            cube: parent.name(x).to_string(),
                            face: parent.name(y).to_string(),
                        });
                    }
                }
            }
        }
        Ok(PrecubicalSubset { parent, members })
    }

    pub fn from_ids(
        parent: &'a PrecubicalSet,
        ids: impl IntoIterator<Item = CubeId>,
    ) -> Result<Self, CubicalError> {
        let mut members = FixedBitSet::with_capacity(parent.len());
        for x in ids {
            members.insert(x.index());
        }
        Self::new(parent, members)
    }

    pub(crate) fn from_closed_unchecked(parent: &'a PrecubicalSet, members: FixedBitSet) -> Self {
        debug_assert!(Self::new(parent, members.clone()).is_ok());
        PrecubicalSubset { parent, members }
    }

    pub fn closure(parent: &'a PrecubicalSet, seeds: impl IntoIterator<Item = CubeId>) -> Self {
        let mut members = FixedBitSet::with_capacity(parent.len());
        for x in seeds {
            members.insert(x.index());
        }
        // Faces have strictly smaller index, so one descending sweep suffices.
        for x in parent.ids().rev() {
            if members.contains(x.index()) {
                for i in 1..=parent.degree(x) {
                    members.insert(parent.face(x, i, 0).index());
                    members.insert(parent.face(x, i, 1).index());
                }
            }
        }
        PrecubicalSubset { parent, members }
    }

    pub fn full_subcomplex(
        parent: &'a PrecubicalSet,
        vertices: impl IntoIterator<Item = CubeId>,
    ) -> Result<Self, CubicalError> {
        let mut members = FixedBitSet::with_capacity(parent.len());
        for v in vertices {
            if parent.degree(v) != 0 {
                return Err(CubicalError::NotAVertex(parent.name(v).to_string()));
            }
            members.insert(v.index());
        }
        Ok(Self::full_from_vertex_bits(parent, members))
    }

    /// `vertex_bits` is indexed by cube id and holds only vertices.
    pub(crate) fn full_from_vertex_bits(
        parent: &'a PrecubicalSet,
        mut members: FixedBitSet,
    ) -> Self {
        for x in parent.ids().skip(parent.count(0)) {
            let n = parent.degree(x);
            let inside = (1..=n).all(|i| {
                members.contains(parent.face(x, i, 0).index())
                    && members.contains(parent.face(x, i, 1).index())
            });
            if inside {
                members.insert(x.index());
            }
        }
        PrecubicalSubset { parent, members }
    }

    pub fn parent(&self) -> &'a PrecubicalSet {
        self.parent
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: CubeId) -> bool {
        self.members.contains(x.index())
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = CubeId> + '_ {
        self.members.ones().map(CubeId::from_index)
    }

    pub fn vertices(&self) -> impl Iterator<Item = CubeId> + '_ {
        self.iter().filter(|&x| self.parent.degree(x) == 0)
    }

    pub fn of_degree(&self, n: usize) -> impl Iterator<Item = CubeId> + '_ {
        self.parent.cubes_of_degree(n).filter(|&x| self.contains(x))
    }

    /// Cube counts per degree `0..=parent.dimension()`.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.parent.dimension() + 1];
        for x in self.iter() {
            counts[self.parent.degree(x)] += 1;
        }
        counts
    }

    pub fn dimension(&self) -> usize {
        self.iter().map(|x| self.parent.degree(x)).max().unwrap_or(0)
    }

    pub fn is_subset(&self, other: &PrecubicalSubset<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &PrecubicalSubset<'a>) -> PrecubicalSubset<'a> {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        PrecubicalSubset {
            parent: self.parent,
            members,
        }
    }

    pub fn intersection(&self, other: &PrecubicalSubset<'a>) -> PrecubicalSubset<'a> {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        PrecubicalSubset {
            parent: self.parent,
            members,
        }
    }

    pub fn names(&self) -> Vec<&'a str> {
        self.iter().map(|x| self.parent.name(x)).collect()
    }

    /// The subset as a precubical set in its own right, identifiers kept.
    pub fn to_precubical(&self) -> PrecubicalSet {
        let decls: Vec<CubeDecl> = self
            .parent
            .decls()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| self.members.contains(*i))
            .map(|(_, d)| d)
            .collect();
        PrecubicalSet::from_decls(decls, DEFAULT_CUBE_LIMIT.max(self.parent.len()))
            .expect("precubical subsets are precubical sets")
    }
}

impl fmt::Debug for PrecubicalSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names()).finish()
    }
}
