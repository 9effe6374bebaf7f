//! Reduction of subsets of a subdivided complex.
//!
//! For `f: P → Q` and a precubical subset `A ⊆ Q`, a cube `x` of the carrier
//! complex `c(A)` is broken when `f(closure(x)) ⊄ A`. Removing every cell
//! carried by a broken top cube `z` of `c(A)` gives `A⁻_z`; when all cubes of
//! `c(A)` are past-complete this preserves homology and strictly decreases
//! the number of broken cubes, so repeating it ends at some `Ã` with
//! `f(c(Ã)) = Ã`.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::Ring;
use crate::cubical::{CubeId, GridCell, PrecubicalSubset};
use crate::homology::HomologyPresentation;
use crate::subdivision::SubdivisionMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("not past-complete: {}", cubes.join(", "))]
    PreconditionViolated { cubes: Vec<String> },
    #[error("`{0}` is not a top cube of the carrier complex")]
    NotTopCube(String),
    #[error("subset does not belong to the target of the morphism")]
    SubsetMismatch,
    #[error("cubes are broken but no top cube is")]
    Stuck,
}

/// Members not contained in the face closure of another member.
pub fn top_cubes(subset: &PrecubicalSubset<'_>) -> Vec<CubeId> {
    let p = subset.parent();
    let mut covered = FixedBitSet::with_capacity(p.len());
    for x in subset.iter() {
        for i in 1..=p.degree(x) {
            covered.insert(p.face(x, i, 0).index());
            covered.insert(p.face(x, i, 1).index());
        }
    }
    subset.iter().filter(|x| !covered.contains(x.index())).collect()
}

fn check_subset(f: &SubdivisionMorphism, a: &PrecubicalSubset<'_>) -> Result<(), ReductionError> {
    if a.parent() != f.target() {
        return Err(ReductionError::SubsetMismatch);
    }
    Ok(())
}

/// `x ∈ c(A)` and `x_♭(R_x) ⊄ A`.
pub fn is_broken(f: &SubdivisionMorphism, x: CubeId, a: &PrecubicalSubset<'_>) -> bool {
    f.carrier_complex(a).contains(x) && !image_inside(f, x, a)
}

fn image_inside(f: &SubdivisionMorphism, x: CubeId, a: &PrecubicalSubset<'_>) -> bool {
    f.shape(x).cells().all(|c| a.contains(f.cell(x, &c)))
}

/// All broken cubes of `c(A)`, in id order.
pub fn broken_cubes(f: &SubdivisionMorphism, a: &PrecubicalSubset<'_>) -> Vec<CubeId> {
    f.carrier_complex(a)
        .iter()
        .filter(|&x| !image_inside(f, x, a))
        .collect()
}

/// For every grid vertex `v` of `R_x` with `x_♭(v) ∈ A`, the whole box
/// `x_♭(⟦0,v⟧)` lies in `A`.
pub fn is_past_complete(f: &SubdivisionMorphism, x: CubeId, a: &PrecubicalSubset<'_>) -> bool {
    let shape = f.shape(x);
    if shape.dim() == 0 {
        return true;
    }
    let inside: Vec<bool> = shape.cells().map(|c| a.contains(f.cell(x, &c))).collect();
    shape.vertices().all(|v| {
        !inside[shape.index_of(&v)] || {
            let upper = v.vertex_coords();
            shape
                .cells()
                .filter(|c| c.in_box(&upper))
                .all(|c| inside[shape.index_of(&c)])
        }
    })
}

/// Cubes of `c(A)` that are not past-complete.
pub fn not_past_complete(f: &SubdivisionMorphism, a: &PrecubicalSubset<'_>) -> Vec<CubeId> {
    f.carrier_complex(a)
        .iter()
        .filter(|&x| !is_past_complete(f, x, a))
        .collect()
}

/// `A⁻_z = {a ∈ A : c(a) ≠ z}`.
pub fn remove_top<'q>(
    f: &SubdivisionMorphism,
    a: &PrecubicalSubset<'q>,
    z: CubeId,
) -> Result<PrecubicalSubset<'q>, ReductionError> {
    check_subset(f, a)?;
    if !top_cubes(&f.carrier_complex(a)).contains(&z) {
        return Err(ReductionError::NotTopCube(f.source().name(z).to_string()));
    }
    let mut members = a.members().clone();
    for x in a.iter() {
        if f.carrier(x) == z {
            members.set(x.index(), false);
        }
    }
    Ok(PrecubicalSubset::from_closed_unchecked(a.parent(), members))
}

/// Whether `f(c(A)) = A`.
pub fn is_fixed_point(f: &SubdivisionMorphism, a: &PrecubicalSubset<'_>) -> bool {
    f.image_subset(&f.carrier_complex(a)).members() == a.members()
}

/// Betti numbers and torsion of a subset, trailing zero degrees dropped.
pub fn homology_signature(a: &PrecubicalSubset<'_>) -> (Vec<usize>, Vec<Vec<BigInt>>) {
    let h = HomologyPresentation::compute(&a.to_precubical(), Ring::Integers);
    let (mut betti, mut torsion) = (h.betti(), h.torsion());
    while betti.len() > 1 && betti.last() == Some(&0) && torsion.last().is_some_and(Vec::is_empty) {
        betti.pop();
        torsion.pop();
    }
    (betti, torsion)
}

/// Facts checked when `z` is removed from `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCertificate {
    pub removed: String,
    pub degree: usize,
    pub broken_before: usize,
    pub broken_after: usize,
    /// `|A_n| = |(A⁻_z)_n| + |z_♭⁻¹(A)_n| − |z_♭⁻¹(A⁻_z)_n|` for all `n`.
    pub pushout_counts: bool,
    /// `(0,…,0) ∈ z_♭⁻¹(A)`.
    pub lower_corner_in: bool,
    /// `(l_1,…,l_n) ∉ z_♭⁻¹(A)`.
    pub upper_corner_out: bool,
    /// Grid vertices of `z_♭⁻¹(A)` are downward closed in `R_z`.
    pub order_convex: bool,
    /// `z_♭⁻¹(A⁻_z) = z_♭⁻¹(A) ∩ ∂R_z`.
    pub boundary_identity: bool,
    /// `z ∉ c(A⁻_z)`.
    pub carrier_excludes_removed: bool,
    /// Every cube of `c(A⁻_z)` is past-complete in `A⁻_z`.
    pub past_complete_after: bool,
    pub homology_before: (Vec<usize>, Vec<Vec<BigInt>>),
    pub homology_after: (Vec<usize>, Vec<Vec<BigInt>>),
}

impl StepCertificate {
    pub fn holds(&self) -> bool {
        self.broken_after < self.broken_before
            && self.pushout_counts
            && self.lower_corner_in
            && self.upper_corner_out
            && self.order_convex
            && self.boundary_identity
            && self.carrier_excludes_removed
            && self.past_complete_after
            && self.homology_before == self.homology_after
    }
}

#[derive(Debug, Clone)]
pub struct Reduction<'q> {
    pub result: PrecubicalSubset<'q>,
    pub steps: Vec<StepCertificate>,
}

/// Removes broken top cubes, highest degree first and then in id order, until
/// none is broken. Every step is certified.
pub fn reduce<'q>(
    f: &SubdivisionMorphism,
    a: &PrecubicalSubset<'q>,
) -> Result<Reduction<'q>, ReductionError> {
    check_subset(f, a)?;
    let bad = not_past_complete(f, a);
    if !bad.is_empty() {
        return Err(ReductionError::PreconditionViolated {
            cubes: bad.iter().map(|&x| f.source().name(x).to_string()).collect(),
        });
    }
    let p = f.source();
    let mut current = a.clone();
    let mut steps = Vec::new();
    loop {
        let broken = broken_cubes(f, &current);
        if broken.is_empty() {
            return Ok(Reduction {
                result: current,
                steps,
            });
        }
        let carriers = f.carrier_complex(&current);
        let z = top_cubes(&carriers)
            .into_iter()
            .filter(|z| broken.contains(z))
            .max_by(|x, y| p.degree(*x).cmp(&p.degree(*y)).then(y.cmp(x)))
            .ok_or(ReductionError::Stuck)?;
        let next = remove_top(f, &current, z)?;
        steps.push(certify(f, &current, &next, z, broken.len()));
        current = next;
    }
}

fn certify(
    f: &SubdivisionMorphism,
    a: &PrecubicalSubset<'_>,
    next: &PrecubicalSubset<'_>,
    z: CubeId,
    broken_before: usize,
) -> StepCertificate {
    let (p, q) = (f.source(), f.target());
    let shape = f.shape(z);
    let cells: Vec<GridCell> = shape.cells().collect();
    let pre = |s: &PrecubicalSubset<'_>| -> Vec<bool> {
        cells.iter().map(|c| s.contains(f.cell(z, c))).collect()
    };
    let (in_a, in_next) = (pre(a), pre(next));

    let dim = q.dimension();
    let count = |flags: &[bool], n: usize| {
        cells
            .iter()
            .zip(flags)
            .filter(|(c, &b)| b && c.degree() == n)
            .count()
    };
    let pushout_counts = (0..=dim).all(|n| {
        a.of_degree(n).count() + count(&in_next, n)
            == next.of_degree(n).count() + count(&in_a, n)
    });

    let lower = GridCell::vertex(&vec![0; shape.dim()]);
    let lower_corner_in = in_a[shape.index_of(&lower)];
    let upper_corner_out = !in_a[shape.index_of(&shape.top_vertex())];

    let order_convex = shape.vertices().all(|v| {
        !in_a[shape.index_of(&v)]
            || shape
                .vertices()
                .filter(|u| u.in_box(&v.vertex_coords()))
                .all(|u| in_a[shape.index_of(&u)])
    });

    let boundary_identity = cells
        .iter()
        .enumerate()
        .all(|(i, c)| in_next[i] == (in_a[i] && !c.is_interior(shape)));

    let carrier_excludes_removed = !f.carrier_complex(next).contains(z);
    let past_complete_after = not_past_complete(f, next).is_empty();

    StepCertificate {
        removed: p.name(z).to_string(),
        degree: p.degree(z),
        broken_before,
        broken_after: broken_cubes(f, next).len(),
        pushout_counts,
        lower_corner_in,
        upper_corner_out,
        order_convex,
        boundary_identity,
        carrier_excludes_removed,
        past_complete_after,
        homology_before: homology_signature(a),
        homology_after: homology_signature(next),
    }
}
