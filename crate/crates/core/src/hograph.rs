//! The pointing relation `α ↗ β` and the homology graph.
//!
//! `α ↗ β` holds iff there are precubical subsets `X`, `Y` with `α` in the
//! image of `H(|X|)`, `β` in the image of `H(|Y|)`, and every vertex of `X`
//! reaching every vertex of `Y`. Enlarging `(X_0, Y_0)` to a concept `(S, T)`
//! and `X`, `Y` to the full subcomplexes on `S` and `T` only grows the image
//! subgroups, so it suffices to test the concepts.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{kernel_basis, kernel_basis_mod, lattice_member, IntMatrix, Lattice, Ring};
use crate::cubical::{CubeId, PrecubicalSet, PrecubicalSubset};
use crate::homology::{
    boundary_lattice, boundary_matrix, image_lattice, HomologyClass, HomologyError,
    HomologyPresentation,
};
use crate::reach::{concepts_with_limit, reachability, Concept, ReachError, DEFAULT_CONCEPT_LIMIT};

/// Default cube limit of the brute-force oracle.
pub const DEFAULT_BRUTE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HographError {
    #[error("chain of degree {degree} is not a cycle")]
    NotACycle { degree: usize },
    #[error("complex has {cubes} cubes, brute force is limited to {limit}")]
    TooLarge { cubes: usize, limit: usize },
    #[error("complex has {vertices} vertices, vertex-pair enumeration is limited to {limit}")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Reach(#[from] ReachError),
}

type ImageKey = (FixedBitSet, usize);

/// Decides `↗` on one complex. Image lattices are cached per (vertex set,
/// degree); the cache is shared and safe to populate concurrently.
pub struct PointingRelation<'p> {
    complex: &'p PrecubicalSet,
    ring: Ring,
    concepts: Vec<Concept>,
    boundaries: Vec<Lattice>,
    cache: Mutex<HashMap<ImageKey, Arc<Lattice>>>,
}

impl<'p> PointingRelation<'p> {
    pub fn new(complex: &'p PrecubicalSet, ring: Ring) -> Result<Self, HographError> {
        Self::with_limit(complex, ring, DEFAULT_CONCEPT_LIMIT)
    }

    pub fn with_limit(
        complex: &'p PrecubicalSet,
        ring: Ring,
        concept_limit: usize,
    ) -> Result<Self, HographError> {
        let concepts = concepts_with_limit(&reachability(complex), concept_limit)?;
        let boundaries = (0..=complex.dimension())
            .map(|n| boundary_lattice(complex, n, ring))
            .collect();
        Ok(PointingRelation {
            complex,
            ring,
            concepts,
            boundaries,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &'p PrecubicalSet {
        self.complex
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    /// The full subcomplex on a set of vertex positions.
    pub fn full_subcomplex(&self, vertices: &FixedBitSet) -> PrecubicalSubset<'p> {
        let mut bits = vertices.clone();
        bits.grow(self.complex.len());
        PrecubicalSubset::full_from_vertex_bits(self.complex, bits)
    }

    /// `Z_n(P⟨S⟩) + B_n(P)`.
    pub fn image(&self, vertices: &FixedBitSet, n: usize) -> Arc<Lattice> {
        let key = (vertices.clone(), n);
        if let Some(l) = self.cache.lock().unwrap().get(&key) {
            return Arc::clone(l);
        }
        let lattice = match self.boundaries.get(n) {
            Some(b) => image_lattice(&self.full_subcomplex(vertices), n, b),
            None => Lattice::new(self.ring, 0),
        };
        let lattice = Arc::new(lattice);
        self.cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&lattice));
        lattice
    }

    fn check(&self, class: &HomologyClass) -> Result<(), HographError> {
        class.check_shape(self.complex)?;
        if !class.is_cycle(self.complex, self.ring) {
            return Err(HographError::NotACycle {
                degree: class.degree(),
            });
        }
        Ok(())
    }

    /// `α ↗ β`.
    pub fn points_to(
        &self,
        alpha: &HomologyClass,
        beta: &HomologyClass,
    ) -> Result<bool, HographError> {
        Ok(self.witness(alpha, beta)?.is_some())
    }

    /// The first concept `(S, T)` (in enumeration order) with `α` in the image
    /// of `P⟨S⟩` and `β` in the image of `P⟨T⟩`.
    pub fn witness(
        &self,
        alpha: &HomologyClass,
        beta: &HomologyClass,
    ) -> Result<Option<&Concept>, HographError> {
        self.check(alpha)?;
        self.check(beta)?;
        Ok(self.concepts.iter().find(|c| {
            self.image(&c.extent, alpha.degree()).contains(alpha.vector())
                && self.image(&c.intent, beta.degree()).contains(beta.vector())
        }))
    }
}

/// One-shot `α ↗ β` over the integers.
pub fn points_to(
    complex: &PrecubicalSet,
    alpha: &HomologyClass,
    beta: &HomologyClass,
) -> Result<bool, HographError> {
    PointingRelation::new(complex, Ring::Integers)?.points_to(alpha, beta)
}

/// A node of the generator-level graph: the zero class or a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub id: String,
    /// `None` for the zero node.
    pub degree: Option<usize>,
    /// Finite order of a torsion generator.
    pub order: Option<BigInt>,
    pub class: HomologyClass,
}

/// Image subgroups of one concept, as generator coordinates per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptEntry {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub extent_images: Vec<Vec<Vec<BigInt>>>,
    pub intent_images: Vec<Vec<Vec<BigInt>>>,
}

/// The finite projection of the homology graph onto `{0} ∪ generators`,
/// together with the concept table that decides arbitrary queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGraph {
    pub name: String,
    pub ring: Ring,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub nodes: Vec<GraphNode>,
    /// Pairs of node indices, sorted.
    pub edges: Vec<(usize, usize)>,
    pub concepts: Vec<ConceptEntry>,
}

impl HomologyGraph {
    pub fn node(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.node(from), self.node(to)) {
            (Some(a), Some(b)) => self.edges.binary_search(&(a, b)).is_ok(),
            _ => false,
        }
    }

    /// Whether the projected relation is anti-symmetric.
    pub fn is_antisymmetric(&self) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| a == b || self.edges.binary_search(&(b, a)).is_err())
    }
}

pub fn homology_graph(
    name: &str,
    complex: &PrecubicalSet,
    ring: Ring,
) -> Result<HomologyGraph, HographError> {
    let relation = PointingRelation::new(complex, ring)?;
    let presentation = HomologyPresentation::compute(complex, ring);
    homology_graph_with(name, &relation, &presentation)
}

pub fn homology_graph_with(
    name: &str,
    relation: &PointingRelation<'_>,
    presentation: &HomologyPresentation,
) -> Result<HomologyGraph, HographError> {
    let complex = relation.complex();
    let mut nodes = vec![GraphNode {
        id: "zero".into(),
        degree: None,
        order: None,
        class: HomologyClass::zero(complex, 0),
    }];
    nodes.extend(presentation.generators().map(|g| GraphNode {
        id: g.name.clone(),
        degree: Some(g.degree),
        order: g.order.clone(),
        class: g.class(),
    }));
    let mut edges = Vec::new();
    for (i, a) in nodes.iter().enumerate() {
        for (j, b) in nodes.iter().enumerate() {
            if relation.points_to(&a.class, &b.class)? {
                edges.push((i, j));
            }
        }
    }

    let vertex_names = |bits: &FixedBitSet| -> Vec<String> {
        bits.ones()
            .map(|i| complex.name(complex.cube_at(0, i)).to_string())
            .collect()
    };
    let images = |bits: &FixedBitSet| -> Result<Vec<Vec<Vec<BigInt>>>, HographError> {
        let sub = relation.full_subcomplex(bits);
        let mut out = Vec::new();
        for n in 0..presentation.degrees().len() {
            let mut coords: Vec<Vec<BigInt>> = Vec::new();
            let cols: Vec<usize> = sub.of_degree(n).map(|x| complex.position(x)).collect();
            let local = if n == 0 {
                IntMatrix::identity(cols.len())
            } else {
                let d = boundary_matrix(complex, n).select_columns(&cols);
                match relation.ring() {
                    Ring::Integers => kernel_basis(&d),
                    Ring::Prime(p) => kernel_basis_mod(&d, p),
                }
            };
            for z in local.columns() {
                let mut v = vec![BigInt::zero(); complex.count(n)];
                for (c, &pos) in z.iter().zip(&cols) {
                    v[pos] = c.clone();
                }
                let c = presentation.coordinates(complex, &HomologyClass::new(n, v))?;
                if c.iter().any(|x| !x.is_zero()) && !coords.contains(&c) {
                    coords.push(c);
                }
            }
            coords.sort();
            out.push(coords);
        }
        Ok(out)
    };
    let concepts = relation
        .concepts()
        .iter()
        .map(|c| {
            Ok(ConceptEntry {
                extent: vertex_names(&c.extent),
                intent: vertex_names(&c.intent),
                extent_images: images(&c.extent)?,
                intent_images: images(&c.intent)?,
            })
        })
        .collect::<Result<_, HographError>>()?;

    Ok(HomologyGraph {
        name: name.to_string(),
        ring: relation.ring(),
        betti: presentation.betti(),
        torsion: presentation.torsion(),
        nodes,
        edges,
        concepts,
    })
}

/// Decides `α ↗ β` from the definition: enumerate every pair of precubical
/// subsets of `P`. Integer coefficients; meant for tiny complexes.
pub fn brute_points_to(
    complex: &PrecubicalSet,
    alpha: &HomologyClass,
    beta: &HomologyClass,
    limit: usize,
) -> Result<bool, HographError> {
    if complex.len() > limit {
        return Err(HographError::TooLarge {
            cubes: complex.len(),
            limit,
        });
    }
    for c in [alpha, beta] {
        c.check_shape(complex)?;
        if !c.is_cycle(complex, Ring::Integers) {
            return Err(HographError::NotACycle { degree: c.degree() });
        }
    }
    let subsets = all_subsets(complex);
    let reach = warshall(complex);
    let sources = vertex_sets_with(complex, &subsets, alpha);
    let targets = vertex_sets_with(complex, &subsets, beta);
    Ok(sources.iter().any(|s| {
        targets.iter().any(|t| {
            s.ones()
                .all(|x| t.ones().all(|y| reach[x].contains(y)))
        })
    }))
}

/// Every precubical subset, by deciding cubes in id order (faces first).
fn all_subsets(complex: &PrecubicalSet) -> Vec<FixedBitSet> {
    fn go(
        complex: &PrecubicalSet,
        next: usize,
        current: &mut FixedBitSet,
        out: &mut Vec<FixedBitSet>,
    ) {
        if next == complex.len() {
            out.push(current.clone());
            return;
        }
        go(complex, next + 1, current, out);
        let x = CubeId::from_index(next);
        let n = complex.degree(x);
        let faces_in = (1..=n).all(|i| {
            current.contains(complex.face(x, i, 0).index())
                && current.contains(complex.face(x, i, 1).index())
        });
        if faces_in {
            current.insert(next);
            go(complex, next + 1, current, out);
            current.set(next, false);
        }
    }
    let mut out = Vec::new();
    go(
        complex,
        0,
        &mut FixedBitSet::with_capacity(complex.len()),
        &mut out,
    );
    out
}

/// Reflexive-transitive closure of the edge relation on vertex positions.
fn warshall(complex: &PrecubicalSet) -> Vec<FixedBitSet> {
    let n = complex.count(0);
    let mut r: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(i);
            row
        })
        .collect();
    for e in complex.edges() {
        r[complex.position(complex.source(e))].insert(complex.position(complex.target(e)));
    }
    for k in 0..n {
        for i in 0..n {
            if r[i].contains(k) {
                let row = r[k].clone();
                r[i].union_with(&row);
            }
        }
    }
    r
}

/// Decides `α ∈ im(H_n(X) → H_n(P))` by integer solvability of
/// `[Z_n(X) | ∂_{n+1}] y = α`, memoized by `X_n`.
struct SnfImages<'c> {
    complex: &'c PrecubicalSet,
    class: &'c HomologyClass,
    upper: Vec<Vec<BigInt>>,
    memo: HashMap<Vec<usize>, bool>,
}

impl<'c> SnfImages<'c> {
    fn new(complex: &'c PrecubicalSet, class: &'c HomologyClass) -> Self {
        let n = class.degree();
        let upper = if n < complex.dimension() {
            boundary_matrix(complex, n + 1).columns()
        } else {
            Vec::new()
        };
        SnfImages {
            complex,
            class,
            upper,
            memo: HashMap::new(),
        }
    }

    /// `cols`: positions of the degree-`n` cubes of `X`, ascending.
    fn contains(&mut self, cols: Vec<usize>) -> bool {
        let (complex, class) = (self.complex, self.class);
        let n = class.degree();
        let upper = &self.upper;
        *self.memo.entry(cols).or_insert_with_key(|cols| {
            let len = complex.count(n);
            let mut gens: Vec<Vec<BigInt>> = Vec::new();
            if n == 0 {
                for &pos in cols {
                    let mut v = vec![BigInt::zero(); len];
                    v[pos] = 1.into();
                    gens.push(v);
                }
            } else if !cols.is_empty() {
                let d = boundary_matrix(complex, n).select_columns(cols);
                for z in kernel_basis(&d).columns() {
                    let mut v = vec![BigInt::zero(); len];
                    for (c, &pos) in z.iter().zip(cols) {
                        v[pos] = c.clone();
                    }
                    gens.push(v);
                }
            }
            gens.extend(upper.iter().cloned());
            if gens.is_empty() {
                return class.is_zero_chain();
            }
            let a = IntMatrix::from_columns(len, &gens);
            lattice_member(&a, class.vector()).unwrap().is_member()
        })
    }
}

/// The vertex sets `X_0` of subsets `X` whose homology image contains the
/// class.
fn vertex_sets_with(
    complex: &PrecubicalSet,
    subsets: &[FixedBitSet],
    class: &HomologyClass,
) -> Vec<FixedBitSet> {
    let n = class.degree();
    let nv = complex.count(0);
    let mut images = SnfImages::new(complex, class);
    let mut out: Vec<FixedBitSet> = Vec::new();
    for x in subsets {
        let cols: Vec<usize> = x
            .ones()
            .map(CubeId::from_index)
            .filter(|&c| complex.degree(c) == n)
            .map(|c| complex.position(c))
            .collect();
        if images.contains(cols) {
            let mut v = FixedBitSet::with_capacity(nv);
            x.ones().take_while(|&i| i < nv).for_each(|i| v.insert(i));
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Largest vertex count accepted by [`vertex_pair_points_to`].
pub const VERTEX_PAIR_LIMIT: usize = 24;

/// Decides `α ↗ β` by enumerating every vertex set `S` together with
/// `T = {w : every s ∈ S reaches w}` and testing the full subcomplexes on
/// `S` and `T`. Any admissible `(X, Y)` sits inside such a pair and images
/// only grow with the subset, so nothing is missed. Integer coefficients;
/// exponential in the number of vertices.
pub fn vertex_pair_points_to(
    complex: &PrecubicalSet,
    alpha: &HomologyClass,
    beta: &HomologyClass,
) -> Result<bool, HographError> {
    let nv = complex.count(0);
    if nv > VERTEX_PAIR_LIMIT {
        return Err(HographError::TooManyVertices {
            vertices: nv,
            limit: VERTEX_PAIR_LIMIT,
        });
    }
    for c in [alpha, beta] {
        c.check_shape(complex)?;
        if !c.is_cycle(complex, Ring::Integers) {
            return Err(HographError::NotACycle { degree: c.degree() });
        }
    }
    let reach = warshall(complex);
    let mask = |bits: &FixedBitSet| bits.ones().fold(0u32, |m, i| m | 1 << i);
    let succ: Vec<u32> = reach.iter().map(mask).collect();
    let mut pred = vec![0u32; nv];
    for (i, row) in reach.iter().enumerate() {
        for j in row.ones() {
            pred[j] |= 1 << i;
        }
    }
    let all: u32 = if nv == 32 { u32::MAX } else { (1u32 << nv) - 1 };
    let meet = |set: u32, rows: &[u32]| {
        let (mut m, mut rest) = (all, set);
        while rest != 0 {
            m &= rows[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        m
    };
    // Growing S to pred(T) keeps T and enlarges the image.
    let mut pairs: Vec<(u32, u32)> = (0..=all)
        .map(|s| {
            let t = meet(s, &succ);
            (meet(t, &pred), t)
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();

    let mut vertices = vec![0u32; complex.len()];
    for x in complex.ids() {
        vertices[x.index()] = if complex.degree(x) == 0 {
            1 << complex.position(x)
        } else {
            (1..=complex.degree(x))
                .flat_map(|i| [complex.face(x, i, 0), complex.face(x, i, 1)])
                .fold(0, |m, f| m | vertices[f.index()])
        };
    }
    let full = |set: u32, n: usize| -> Vec<usize> {
        complex
            .cubes_of_degree(n)
            .filter(|x| vertices[x.index()] & !set == 0)
            .map(|x| complex.position(x))
            .collect()
    };
    let (mut a, mut b) = (SnfImages::new(complex, alpha), SnfImages::new(complex, beta));
    Ok(pairs
        .into_iter()
        .any(|(s, t)| a.contains(full(s, alpha.degree())) && b.contains(full(t, beta.degree()))))
}
