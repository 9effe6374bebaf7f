//! Vertex reachability and the concepts of the reachability relation.
//!
//! A concept is a pair `(S, T)` of vertex sets with `T` the set of vertices
//! reachable from all of `S` and `S` the set of vertices reaching all of `T`.
//! Every witness pair `(X_0, Y_0)` of the pointing relation lies below some
//! concept, which makes the existential over subsets finite.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::cubical::{CubeId, PrecubicalSet};

pub const DEFAULT_CONCEPT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error("more than {limit} concepts")]
    TooManyConcepts { limit: usize },
}

/// `reaches(x, y)` iff there is a path from `x` to `y`. Vertices are
/// addressed by their position in `P_0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Reachability {
    forward: Vec<FixedBitSet>,
    backward: Vec<FixedBitSet>,
}

pub fn reachability(complex: &PrecubicalSet) -> Reachability {
    let n = complex.count(0);
    let mut succ = vec![Vec::new(); n];
    for e in complex.edges() {
        let s = complex.position(complex.source(e));
        let t = complex.position(complex.target(e));
        succ[s].push(t);
    }
    let mut forward = Vec::with_capacity(n);
    for start in 0..n {
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &succ[v] {
                if !seen.put(w) {
                    queue.push_back(w);
                }
            }
        }
        forward.push(seen);
    }
    let mut backward = vec![FixedBitSet::with_capacity(n); n];
    for (s, row) in forward.iter().enumerate() {
        for t in row.ones() {
            backward[t].insert(s);
        }
    }
    Reachability { forward, backward }
}

impl Reachability {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.forward[from].contains(to)
    }

    pub fn reaches_ids(&self, complex: &PrecubicalSet, from: CubeId, to: CubeId) -> bool {
        self.reaches(complex.position(from), complex.position(to))
    }

    /// Vertices reachable from `from`.
    pub fn successors(&self, from: usize) -> &FixedBitSet {
        &self.forward[from]
    }

    /// `{w : s reaches w for all s ∈ S}`.
    pub fn common_successors(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        out.insert_range(..);
        for v in s.ones() {
            out.intersect_with(&self.forward[v]);
        }
        out
    }

    /// `{v : v reaches t for all t ∈ T}`.
    pub fn common_predecessors(&self, t: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        out.insert_range(..);
        for w in t.ones() {
            out.intersect_with(&self.backward[w]);
        }
        out
    }

    /// Whether `S × T ⊆ Reach`.
    pub fn connects(&self, s: &FixedBitSet, t: &FixedBitSet) -> bool {
        s.ones().all(|v| t.is_subset(&self.forward[v]))
    }

    fn close(&self, extent: &FixedBitSet) -> FixedBitSet {
        self.common_predecessors(&self.common_successors(extent))
    }
}

impl fmt::Debug for Reachability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.forward.iter().map(|r| r.ones().collect::<Vec<_>>()))
            .finish()
    }
}

/// A closed pair of vertex sets (positions in `P_0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

impl Concept {
    pub fn extent_ids(&self, complex: &PrecubicalSet) -> Vec<CubeId> {
        self.extent.ones().map(|i| complex.cube_at(0, i)).collect()
    }

    pub fn intent_ids(&self, complex: &PrecubicalSet) -> Vec<CubeId> {
        self.intent.ones().map(|i| complex.cube_at(0, i)).collect()
    }
}

/// All concepts, extents in lectic order.
pub fn concepts(reach: &Reachability) -> Result<Vec<Concept>, ReachError> {
    concepts_with_limit(reach, DEFAULT_CONCEPT_LIMIT)
}

pub fn concepts_with_limit(reach: &Reachability, limit: usize) -> Result<Vec<Concept>, ReachError> {
    let n = reach.len();
    let mut out = Vec::new();
    let push = |extent: FixedBitSet, out: &mut Vec<Concept>| {
        if out.len() == limit {
            return Err(ReachError::TooManyConcepts { limit });
        }
        let intent = reach.common_successors(&extent);
        out.push(Concept { extent, intent });
        Ok(())
    };
    let mut current = reach.close(&FixedBitSet::with_capacity(n));
    push(current.clone(), &mut out)?;
    'next: loop {
        for i in (0..n).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = current.clone();
            seed.remove_range(i..);
            seed.insert(i);
            let candidate = reach.close(&seed);
            // Canonicity: the closure adds nothing below i.
            let adds_below = candidate
                .ones()
                .take_while(|&j| j < i)
                .any(|j| !current.contains(j));
            if !adds_below {
                current = candidate;
                push(current.clone(), &mut out)?;
                continue 'next;
            }
        }
        return Ok(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(p: &PrecubicalSet, bits: &FixedBitSet) -> Vec<String> {
        bits.ones().map(|i| p.name(p.cube_at(0, i)).to_string()).collect()
    }

    #[test]
    fn reachability_examples() {
        let d = fixtures::digon();
        let r = reachability(&d);
        assert_eq!(names(&d, r.successors(0)), ["v", "w"]);
        assert_eq!(names(&d, r.successors(1)), ["w"]);

        let p = fixtures::crossing();
        let r = reachability(&p);
        let of = |v: &str| names(&p, r.successors(p.position(p.lookup(v).unwrap())));
        assert_eq!(of("q0"), ["q0", "q2", "q3"]);
        assert_eq!(of("q5"), ["q2", "q3", "q5"]);
        assert_eq!(of("q2"), ["q2"]);
        assert_eq!(of("q3"), ["q3"]);

        let c = fixtures::circ();
        assert_eq!(names(&c, reachability(&c).successors(0)), ["v"]);
    }

    /// Independent oracle: every pair of subsets, keep the closed ones.
    fn brute_concepts(r: &Reachability) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = r.len();
        let mut out = Vec::new();
        for s in 0u32..(1 << n) {
            for t in 0u32..(1 << n) {
                let sv: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
                let tv: Vec<usize> = (0..n).filter(|i| t >> i & 1 == 1).collect();
                let t_of_s: Vec<usize> = (0..n)
                    .filter(|&w| sv.iter().all(|&v| r.reaches(v, w)))
                    .collect();
                let s_of_t: Vec<usize> = (0..n)
                    .filter(|&v| tv.iter().all(|&w| r.reaches(v, w)))
                    .collect();
                if t_of_s == tv && s_of_t == sv {
                    out.push((sv, tv));
                }
            }
        }
        out.sort();
        out
    }

    fn as_pairs(cs: &[Concept]) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut v: Vec<_> = cs
            .iter()
            .map(|c| (c.extent.ones().collect(), c.intent.ones().collect()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn concept_examples() {
        let d = fixtures::digon();
        let cs = concepts(&reachability(&d)).unwrap();
        assert_eq!(as_pairs(&cs), vec![(vec![0], vec![0, 1]), (vec![0, 1], vec![1])]);
        let c = fixtures::circ();
        assert_eq!(as_pairs(&concepts(&reachability(&c)).unwrap()), vec![(vec![0], vec![0])]);
        let e = fixtures::empty();
        assert_eq!(as_pairs(&concepts(&reachability(&e)).unwrap()), vec![(vec![], vec![])]);
    }

    #[test]
    fn concepts_match_brute_force() {
        for (_, p) in fixtures::all() {
            if p.count(0) > 6 {
                continue;
            }
            let r = reachability(&p);
            let cs = concepts(&r).unwrap();
            assert_eq!(as_pairs(&cs), brute_concepts(&r));
            for c in &cs {
                assert!(r.connects(&c.extent, &c.intent));
            }
        }
    }

    #[test]
    fn concept_limit() {
        let r = reachability(&fixtures::crossing());
        assert_eq!(
            concepts_with_limit(&r, 2),
            Err(ReachError::TooManyConcepts { limit: 2 })
        );
    }

    #[test]
    fn completeness_on_small_complexes() {
        for (_, p) in fixtures::all() {
            let n = p.count(0);
            if n > 6 {
                continue;
            }
            let r = reachability(&p);
            let cs = concepts(&r).unwrap();
            for s in 0u32..(1 << n) {
                let mut sb = FixedBitSet::with_capacity(n);
                (0..n).filter(|i| s >> i & 1 == 1).for_each(|i| sb.insert(i));
                let up = r.common_successors(&sb);
                assert!(sb.is_subset(&r.common_predecessors(&up)));
                // The maximal T with S × T ⊆ Reach is up(S); some concept dominates (S, up(S)).
                assert!(cs
                    .iter()
                    .any(|c| sb.is_subset(&c.extent) && up.is_subset(&c.intent)));
            }
        }
    }
}
