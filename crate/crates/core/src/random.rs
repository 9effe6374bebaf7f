//! Seeded random instances for property suites: small complexes, edge
//! counts, labellings, paths and past-complete subsets.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::algebra::IntMatrix;
use crate::cubical::{CubeId, Path, PrecubicalBuilder, PrecubicalSet, PrecubicalSubset};
use crate::hda::{Hda, Word};
use crate::subdivision::SubdivisionMorphism;

/// A random precubical set of dimension at most 2 with at most `max_cubes`
/// cubes (and at least one vertex).
pub fn random_complex(rng: &mut impl Rng, max_cubes: usize) -> PrecubicalSet {
    assert!(max_cubes >= 1);
    let mut b = PrecubicalBuilder::new();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut squares = 0;
    let mut total;
    let nv = rng.random_range(1..=max_cubes.min(4));
    let mut nverts = nv;
    total = nv;
    // Sometimes start from a filled square on fresh vertices.
    if max_cubes - total >= 9 && rng.random_bool(0.5) {
        let base = nverts;
        nverts += 4;
        let (v00, v10, v01, v11) = (base, base + 1, base + 2, base + 3);
        edges.push(("e0".into(), v00, v10));
        edges.push(("e1".into(), v01, v11));
        edges.push(("e2".into(), v00, v01));
        edges.push(("e3".into(), v10, v11));
        total += 9;
        squares = 1;
    }
    let names: Vec<String> = (0..nverts).map(|i| format!("v{i}")).collect();
    b = b.vertices(names.iter().cloned());
    let extra = rng.random_range(0..=(max_cubes - total).min(5));
    for _ in 0..extra {
        let (s, t) = (rng.random_range(0..nverts), rng.random_range(0..nverts));
        edges.push((format!("e{}", edges.len()), s, t));
        total += 1;
    }
    for (name, s, t) in &edges {
        b = b.edge(name.clone(), &names[*s], &names[*t]);
    }
    let mut sq = Vec::new();
    if squares == 1 {
        sq.push(["e2", "e0", "e3", "e1"].map(String::from));
    }
    // Squares on existing edges: [b0, a0, b1, a1] with a along axis 1.
    let mut candidates = Vec::new();
    for a0 in &edges {
        for a1 in &edges {
            for b0 in &edges {
                for b1 in &edges {
                    if a0.1 == b0.1 && a0.2 == b1.1 && a1.1 == b0.2 && a1.2 == b1.2 {
                        candidates.push([b0.0.clone(), a0.0.clone(), b1.0.clone(), a1.0.clone()]);
                    }
                }
            }
        }
    }
    while total < max_cubes && !candidates.is_empty() && rng.random_bool(0.4) {
        let pick = candidates.swap_remove(rng.random_range(0..candidates.len()));
        sq.push(pick);
        total += 1;
    }
    for (i, [b0, a0, b1, a1]) in sq.into_iter().enumerate() {
        b = b.cube(format!("s{i}"), [b0, a0], [b1, a1]);
    }
    b.build().expect("random complexes are valid by construction")
}

/// Classes of edges forced to be parallel by the squares.
fn parallel_classes(p: &PrecubicalSet) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..p.count(1)).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for x in p.cubes_of_degree(2) {
        for i in 1..=2 {
            let (a, b) = (p.position(p.face(x, i, 0)), p.position(p.face(x, i, 1)));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    (0..p.count(1)).map(|e| find(&mut parent, e)).collect()
}

/// Edge counts in `1..=max`, constant on parallel classes.
pub fn random_counts(rng: &mut impl Rng, p: &PrecubicalSet, max: u32) -> BTreeMap<String, u32> {
    let classes = parallel_classes(p);
    let per_class: Vec<u32> = (0..p.count(1)).map(|_| rng.random_range(1..=max)).collect();
    p.edges()
        .enumerate()
        .map(|(i, e)| (p.name(e).to_string(), per_class[classes[i]]))
        .collect()
}

/// A free-monoid labelling constant on parallel classes, with random initial
/// and final states.
pub fn random_hda(rng: &mut impl Rng, p: &PrecubicalSet) -> Hda<Word> {
    let classes = parallel_classes(p);
    let alphabet = ['a', 'b', 'c', 'd'];
    let words: Vec<Word> = (0..p.count(1))
        .map(|_| {
            let len = rng.random_range(1..=3);
            Word((0..len).map(|_| *alphabet.choose(rng).unwrap()).collect())
        })
        .collect();
    let vertices: Vec<&str> = p.vertices().map(|v| p.name(v)).collect();
    let pick = |rng: &mut dyn rand::RngCore| -> Vec<&str> {
        vertices.iter().copied().filter(|_| rng.random_bool(0.3)).collect()
    };
    let (initial, finals) = (pick(rng), pick(rng));
    Hda::new(
        p.clone(),
        initial,
        finals,
        p.edges()
            .enumerate()
            .map(|(i, e)| (p.name(e), words[classes[i]].clone())),
    )
    .expect("labels are constant on parallel classes")
}

/// A random walk of at most `max_len` edges, or a constant path when the
/// walk gets stuck immediately. `None` on the empty complex.
pub fn random_path(rng: &mut impl Rng, p: &PrecubicalSet, max_len: usize) -> Option<Path> {
    let start = *p.vertices().collect::<Vec<_>>().choose(rng)?;
    let mut out: Vec<Vec<CubeId>> = vec![Vec::new(); p.count(0)];
    for e in p.edges() {
        out[p.position(p.source(e))].push(e);
    }
    let len = rng.random_range(0..=max_len);
    let mut at = start;
    let mut edges = Vec::new();
    for _ in 0..len {
        let Some(&e) = out[p.position(at)].choose(rng) else {
            break;
        };
        edges.push(e);
        at = p.target(e);
    }
    Some(if edges.is_empty() {
        Path::constant(p, start).unwrap()
    } else {
        Path::from_edges(p, edges).unwrap()
    })
}

/// A random subset of `Q` closed under faces and under the lower boxes of
/// every carrier, hence past-complete.
pub fn random_past_complete<'q>(
    rng: &mut impl Rng,
    f: &'q SubdivisionMorphism,
    density: f64,
) -> PrecubicalSubset<'q> {
    let q = f.target();
    let seeds: Vec<CubeId> = q.ids().filter(|_| rng.random_bool(density)).collect();
    let mut members = q.closure(seeds).members().clone();
    loop {
        let current = PrecubicalSubset::new(q, members.clone()).expect("closed");
        let mut next: FixedBitSet = members.clone();
        for x in f.carrier_complex(&current).iter() {
            let shape = f.shape(x);
            for v in shape.vertices() {
                if current.contains(f.cell(x, &v)) {
                    let upper = v.vertex_coords();
                    for c in shape.cells().filter(|c| c.in_box(&upper)) {
                        next.insert(f.cell(x, &c).index());
                    }
                }
            }
        }
        if next == members {
            return current;
        }
        members = next;
    }
}

/// A `rows × cols` matrix with entries in `-bound..=bound`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.random_range(-bound..=bound)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&data)
}
