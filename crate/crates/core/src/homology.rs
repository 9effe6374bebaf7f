//! Cellular homology of precubical sets.
//!
//! Chains in degree `n` are integer vectors over `P_n` in cube order. The
//! boundary is `∂x = Σ_i (−1)^i (d_i^0 x − d_i^1 x)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{
    kernel_basis, kernel_basis_mod, snf, AlgebraError, IntMatrix, Lattice, Ring,
};
use crate::cubical::{CubicalError, PrecubicalSet, PrecubicalSubset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("chain of degree {degree} is not a cycle")]
    NotACycle { degree: usize },
    #[error("chain of degree {degree} has {found} coefficients, expected {expected}")]
    WrongLength {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("cannot add classes of degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("`{cube}` has degree {found}, expected {expected}")]
    CubeDegree {
        cube: String,
        expected: usize,
        found: usize,
    },
    #[error("subset belongs to a different complex")]
    SubsetMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad class expression `{0}`")]
    BadExpression(String),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An `n`-chain, usually a cycle standing for its homology class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    degree: usize,
    vector: Vec<BigInt>,
}

impl HomologyClass {
    pub fn new(degree: usize, vector: Vec<BigInt>) -> Self {
        HomologyClass { degree, vector }
    }

    pub fn zero(complex: &PrecubicalSet, degree: usize) -> Self {
        HomologyClass {
            degree,
            vector: vec![BigInt::zero(); complex.count(degree)],
        }
    }

    /// `Σ c·x` over named cubes of one degree.
    pub fn from_terms(
        complex: &PrecubicalSet,
        degree: usize,
        terms: &[(&str, i64)],
    ) -> Result<Self, HomologyError> {
        let mut class = Self::zero(complex, degree);
        for &(name, c) in terms {
            let x = complex.lookup(name)?;
            if complex.degree(x) != degree {
                return Err(HomologyError::CubeDegree {
                    cube: name.to_string(),
                    expected: degree,
                    found: complex.degree(x),
                });
            }
            class.vector[complex.position(x)] += c;
        }
        Ok(class)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vector(&self) -> &[BigInt] {
        &self.vector
    }

    pub fn is_zero_chain(&self) -> bool {
        self.vector.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &BigInt) -> Self {
        HomologyClass {
            degree: self.degree,
            vector: self.vector.iter().map(|x| x * r).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HomologyError> {
        if self.degree != other.degree {
            return Err(HomologyError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(HomologyClass {
            degree: self.degree,
            vector: self.vector.iter().zip(&other.vector).map(|(a, b)| a + b).collect(),
        })
    }

    /// Checks the length against `P_n`.
    pub fn check_shape(&self, complex: &PrecubicalSet) -> Result<(), HomologyError> {
        let expected = complex.count(self.degree);
        if self.vector.len() != expected {
            return Err(HomologyError::WrongLength {
                degree: self.degree,
                expected,
                found: self.vector.len(),
            });
        }
        Ok(())
    }

    pub fn is_cycle(&self, complex: &PrecubicalSet, ring: Ring) -> bool {
        if self.check_shape(complex).is_err() {
            return false;
        }
        if self.degree == 0 {
            return true;
        }
        boundary_matrix(complex, self.degree)
            .mul_vec(&self.vector)
            .iter()
            .all(|x| ring.normalize(x).is_zero())
    }

    /// Nonzero terms as `(cube name, coefficient)`.
    pub fn terms<'c>(&self, complex: &'c PrecubicalSet) -> Vec<(&'c str, BigInt)> {
        self.vector
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(pos, c)| (complex.name(complex.cube_at(self.degree, pos)), c.clone()))
            .collect()
    }
}

/// `∂_n`: rows indexed by `P_{n−1}`, columns by `P_n`. Requires `n ≥ 1`.
pub fn boundary_matrix(complex: &PrecubicalSet, n: usize) -> IntMatrix {
    assert!(n >= 1, "∂_0 is not a matrix of this complex");
    let mut m = IntMatrix::zeros(complex.count(n - 1), complex.count(n));
    for (col, x) in complex.cubes_of_degree(n).enumerate() {
        for i in 1..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let lower = complex.position(complex.face(x, i, 0));
            let upper = complex.position(complex.face(x, i, 1));
            *m.entry_mut(lower, col) += sign;
            *m.entry_mut(upper, col) -= sign;
        }
    }
    m
}

/// `∂_1, …, ∂_dim`.
pub fn chain_complex(complex: &PrecubicalSet) -> Vec<IntMatrix> {
    (1..=complex.dimension())
        .map(|n| boundary_matrix(complex, n))
        .collect()
}

/// Column basis of the `n`-cycles: over ℤ an integral basis, over ℤ/p a basis
/// of the mod-`p` kernel.
pub fn cycle_basis(complex: &PrecubicalSet, n: usize, ring: Ring) -> IntMatrix {
    if n == 0 {
        return IntMatrix::identity(complex.count(0));
    }
    let d = boundary_matrix(complex, n);
    kernel(&d, ring)
}

fn kernel(d: &IntMatrix, ring: Ring) -> IntMatrix {
    match ring {
        Ring::Integers => kernel_basis(d),
        Ring::Prime(p) => kernel_basis_mod(d, p),
    }
}

/// The lattice `B_n(P)` of `n`-boundaries.
pub fn boundary_lattice(complex: &PrecubicalSet, n: usize, ring: Ring) -> Lattice {
    if n >= complex.dimension() {
        return Lattice::new(ring, complex.count(n));
    }
    Lattice::from_columns(ring, &boundary_matrix(complex, n + 1))
}

/// The subgroup `Z_n(X) + B_n(P)` of `n`-chains of `P`, whose classes form
/// `im H_n(|X| ↪ |P|)`.
pub fn image_lattice(
    subset: &PrecubicalSubset<'_>,
    n: usize,
    boundaries: &Lattice,
) -> Lattice {
    let complex = subset.parent();
    let mut lattice = boundaries.clone();
    let cols: Vec<usize> = subset.of_degree(n).map(|x| complex.position(x)).collect();
    let embed = |local: &[BigInt]| {
        let mut v = vec![BigInt::zero(); complex.count(n)];
        for (c, &pos) in local.iter().zip(&cols) {
            v[pos] = c.clone();
        }
        v
    };
    if n == 0 {
        for &pos in &cols {
            let mut v = vec![BigInt::zero(); complex.count(0)];
            v[pos] = BigInt::one();
            lattice.insert(&v);
        }
        return lattice;
    }
    if cols.is_empty() {
        return lattice;
    }
    let d = boundary_matrix(complex, n).select_columns(&cols);
    for z in kernel(&d, boundaries.ring()).columns() {
        lattice.insert(&embed(&z));
    }
    lattice
}

/// Whether `α ∈ im H_n(|X| ↪ |P|)`.
pub fn image_membership(
    complex: &PrecubicalSet,
    subset: &PrecubicalSubset<'_>,
    alpha: &HomologyClass,
    ring: Ring,
) -> Result<bool, HomologyError> {
    if subset.parent() != complex {
        return Err(HomologyError::SubsetMismatch);
    }
    alpha.check_shape(complex)?;
    if !alpha.is_cycle(complex, ring) {
        return Err(HomologyError::NotACycle {
            degree: alpha.degree(),
        });
    }
    let n = alpha.degree();
    let b = boundary_lattice(complex, n, ring);
    Ok(image_lattice(subset, n, &b).contains(alpha.vector()))
}

/// A chosen generator of `H_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    pub cycle: Vec<BigInt>,
    /// `None` for a free generator, otherwise its (finite) order.
    pub order: Option<BigInt>,
}

impl Generator {
    pub fn class(&self) -> HomologyClass {
        HomologyClass::new(self.degree, self.cycle.clone())
    }
}

/// Homology in one degree.
#[derive(Debug, Clone)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors `> 1` (always empty over a field).
    pub torsion: Vec<BigInt>,
    /// Free generators first, then torsion generators.
    pub generators: Vec<Generator>,
    boundaries: Lattice,
    /// Spanned by `(g_j, e_j)` and `(b, 0)`; reducing `(z, 0)` exposes the
    /// coordinates of `z` in the generator basis.
    coordinates: Lattice,
}

impl DegreeHomology {
    pub fn boundaries(&self) -> &Lattice {
        &self.boundaries
    }
}

/// Betti numbers, torsion and generators in every degree `0..=dim`.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    ring: Ring,
    degrees: Vec<DegreeHomology>,
}

/// Presentation with integer coefficients.
pub fn homology_presentation(complex: &PrecubicalSet) -> HomologyPresentation {
    HomologyPresentation::compute(complex, Ring::Integers)
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

fn support(v: &[BigInt]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Symmetric representative in `(−p/2, p/2]` over ℤ/p; identity over ℤ.
fn symmetric(ring: Ring, v: &[BigInt]) -> Vec<BigInt> {
    match ring {
        Ring::Integers => v.to_vec(),
        Ring::Prime(p) => {
            let p = BigInt::from(p);
            v.iter()
                .map(|x| {
                    let r = x.mod_floor(&p);
                    if &r * 2 > p {
                        r - &p
                    } else {
                        r
                    }
                })
                .collect()
        }
    }
}

/// Makes the first nonzero entry positive (over ℤ/p: equal to 1).
fn normalize_sign(ring: Ring, v: &mut Vec<BigInt>) {
    let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return;
    };
    match ring {
        Ring::Integers => {
            if first.is_negative() {
                v.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
        }
        Ring::Prime(p) => {
            let p = BigInt::from(p);
            let inv = first.mod_floor(&p).extended_gcd(&p).x;
            let scaled: Vec<BigInt> = v.iter().map(|x| x * &inv).collect();
            *v = symmetric(ring, &scaled);
        }
    }
}

/// Greedy ℓ¹ shortening of cycle candidates by adding or subtracting other
/// candidates and boundaries. Every replacement keeps the span modulo
/// boundaries.
fn shorten(ring: Ring, mut cands: Vec<Vec<BigInt>>, boundaries: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    loop {
        let mut changed = false;
        for i in 0..cands.len() {
            let mut best = l1(&cands[i]);
            loop {
                let mut improved = None;
                let others = cands
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, c)| c)
                    .chain(boundaries);
                for u in others {
                    for sign in [1i32, -1] {
                        let w: Vec<BigInt> = cands[i]
                            .iter()
                            .zip(u)
                            .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                            .collect();
                        let w = symmetric(ring, &w);
                        let n = l1(&w);
                        if n < best {
                            best = n;
                            improved = Some(w);
                        }
                    }
                }
                match improved {
                    Some(w) => {
                        cands[i] = w;
                        changed = true;
                    }
                    None => break,
                }
            }
        }
        if !changed {
            return cands;
        }
    }
}

impl HomologyPresentation {
    pub fn compute(complex: &PrecubicalSet, ring: Ring) -> Self {
        let degrees = (0..=complex.dimension())
            .map(|n| degree_homology(complex, n, ring))
            .collect();
        HomologyPresentation { ring, degrees }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degrees(&self) -> &[DegreeHomology] {
        &self.degrees
    }

    pub fn degree(&self, n: usize) -> Option<&DegreeHomology> {
        self.degrees.get(n)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn torsion(&self) -> Vec<Vec<BigInt>> {
        self.degrees.iter().map(|d| d.torsion.clone()).collect()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.degrees.iter().flat_map(|d| d.generators.iter())
    }

    pub fn generator(&self, name: &str) -> Result<&Generator, HomologyError> {
        self.generators()
            .find(|g| g.name == name)
            .ok_or_else(|| HomologyError::UnknownGenerator(name.to_string()))
    }

    /// Parses `zero`, a generator name, or a sum of `K*NAME` terms over
    /// generators of one degree (`2*H1.g0+-1*H1.g1`).
    pub fn parse_class(
        &self,
        complex: &PrecubicalSet,
        expr: &str,
    ) -> Result<HomologyClass, HomologyError> {
        let expr = expr.trim();
        if expr == "zero" || expr == "0" {
            return Ok(HomologyClass::zero(complex, 0));
        }
        let mut acc: Option<HomologyClass> = None;
        for term in expr.split('+').map(str::trim) {
            let (k, name) = match term.split_once('*') {
                Some((k, name)) => (
                    k.trim()
                        .parse::<BigInt>()
                        .map_err(|_| HomologyError::BadExpression(expr.to_string()))?,
                    name.trim(),
                ),
                None => (BigInt::one(), term),
            };
            if name.is_empty() {
                return Err(HomologyError::BadExpression(expr.to_string()));
            }
            let c = self.generator(name)?.class().scale(&k);
            acc = Some(match acc {
                None => c,
                Some(a) => a.add(&c)?,
            });
        }
        acc.ok_or_else(|| HomologyError::BadExpression(expr.to_string()))
    }

    fn check_cycle(
        &self,
        complex: &PrecubicalSet,
        class: &HomologyClass,
    ) -> Result<(), HomologyError> {
        class.check_shape(complex)?;
        if !class.is_cycle(complex, self.ring) {
            return Err(HomologyError::NotACycle {
                degree: class.degree(),
            });
        }
        Ok(())
    }

    /// Canonical representative of the class modulo boundaries.
    pub fn class_reduce(
        &self,
        complex: &PrecubicalSet,
        class: &HomologyClass,
    ) -> Result<Vec<BigInt>, HomologyError> {
        self.check_cycle(complex, class)?;
        Ok(match self.degrees.get(class.degree()) {
            Some(d) => d.boundaries.reduce(class.vector()),
            None => Vec::new(),
        })
    }

    pub fn is_boundary(
        &self,
        complex: &PrecubicalSet,
        class: &HomologyClass,
    ) -> Result<bool, HomologyError> {
        Ok(self
            .class_reduce(complex, class)?
            .iter()
            .all(Zero::is_zero))
    }

    /// Coordinates of a class in the generator basis of its degree: integers
    /// for free generators, residues for torsion generators (and everything
    /// mod `p` over ℤ/p).
    pub fn coordinates(
        &self,
        complex: &PrecubicalSet,
        class: &HomologyClass,
    ) -> Result<Vec<BigInt>, HomologyError> {
        self.check_cycle(complex, class)?;
        let Some(d) = self.degrees.get(class.degree()) else {
            return Ok(Vec::new());
        };
        let len = class.vector().len();
        let mut v = class.vector().to_vec();
        v.resize(len + d.generators.len(), BigInt::zero());
        let r = d.coordinates.reduce(&v);
        debug_assert!(r[..len].iter().all(Zero::is_zero));
        Ok(r[len..]
            .iter()
            .zip(&d.generators)
            .map(|(x, g)| {
                let c = -x;
                match (&g.order, self.ring) {
                    (Some(t), _) => c.mod_floor(t),
                    (None, Ring::Prime(p)) => c.mod_floor(&BigInt::from(p)),
                    (None, Ring::Integers) => c,
                }
            })
            .collect())
    }
}

fn degree_homology(complex: &PrecubicalSet, n: usize, ring: Ring) -> DegreeHomology {
    let len = complex.count(n);
    let boundary_cols: Vec<Vec<BigInt>> = if n < complex.dimension() {
        boundary_matrix(complex, n + 1).columns()
    } else {
        Vec::new()
    };
    let boundaries = Lattice::from_vectors(ring, len, boundary_cols.iter().map(Vec::as_slice));
    let cycles = cycle_basis(complex, n, ring);

    let (free, torsion_gens) = match ring {
        Ring::Integers => integral_generators(complex, n, &cycles, &boundary_cols),
        Ring::Prime(_) => (field_generators(ring, &cycles, &boundaries, &boundary_cols), Vec::new()),
    };

    let mut generators = Vec::new();
    for (i, cycle) in free.iter().enumerate() {
        generators.push(Generator {
            name: format!("H{n}.g{i}"),
            degree: n,
            cycle: cycle.clone(),
            order: None,
        });
    }
    let betti = free.len();
    let mut torsion = Vec::new();
    for (j, (cycle, order)) in torsion_gens.into_iter().enumerate() {
        torsion.push(order.clone());
        generators.push(Generator {
            name: format!("H{n}.g{}", betti + j),
            degree: n,
            cycle,
            order: Some(order),
        });
    }

    let width = len + generators.len();
    let mut coordinates = Lattice::new(ring, width);
    for (j, g) in generators.iter().enumerate() {
        let mut v = g.cycle.clone();
        v.resize(width, BigInt::zero());
        v[len + j] = BigInt::one();
        coordinates.insert(&v);
    }
    for b in &boundary_cols {
        let mut v = b.clone();
        v.resize(width, BigInt::zero());
        coordinates.insert(&v);
    }

    DegreeHomology {
        degree: n,
        betti,
        torsion,
        generators,
        boundaries,
        coordinates,
    }
}

fn sorted_candidates(ring: Ring, cycles: &IntMatrix, boundary_cols: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let start: Vec<Vec<BigInt>> = cycles.columns().iter().map(|c| symmetric(ring, c)).collect();
    let mut cands = shorten(ring, start, boundary_cols);
    for c in cands.iter_mut() {
        normalize_sign(ring, c);
    }
    cands.retain(|c| c.iter().any(|x| !x.is_zero()));
    cands.sort_by(|a, b| {
        let (sa, sb) = (support(a), support(b));
        (sa.len(), sa).cmp(&(sb.len(), sb))
    });
    cands
}

fn field_generators(
    ring: Ring,
    cycles: &IntMatrix,
    boundaries: &Lattice,
    boundary_cols: &[Vec<BigInt>],
) -> Vec<Vec<BigInt>> {
    let mut span = boundaries.clone();
    sorted_candidates(ring, cycles, boundary_cols)
        .into_iter()
        .filter(|c| span.insert(c))
        .collect()
}

/// Free generators (small-support cycles when they form a basis of the free
/// part, Smith lifts otherwise) and torsion generators with their orders.
#[allow(clippy::type_complexity)]
fn integral_generators(
    complex: &PrecubicalSet,
    n: usize,
    cycles: &IntMatrix,
    boundary_cols: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<(Vec<BigInt>, BigInt)>) {
    let len = complex.count(n);
    let k = cycles.cols();
    // Kernel coordinates: z = K·y with y = K⁺·z, where K⁺ is the left inverse
    // coming from the Smith form of [K] itself.
    let ks = snf(cycles);
    let left_inverse = {
        // D = U K V with D = [I; 0] since K is a basis of a saturated sublattice.
        let rows: Vec<usize> = (0..k).collect();
        &ks.v * &ks.u.select_rows(&rows)
    };
    let m = if boundary_cols.is_empty() {
        IntMatrix::zeros(k, 0)
    } else {
        &left_inverse * &IntMatrix::from_columns(len, boundary_cols)
    };
    let ms = snf(&m);
    let rank_m = ms.rank();
    let factors = ms.invariant_factors();
    let betti = k - rank_m;
    let class_coords = |z: &[BigInt]| ms.u.mul_vec(&left_inverse.mul_vec(z));
    let lift = |i: usize| cycles.mul_vec(&ms.u_inv.column(i));

    let mut free = Vec::new();
    let mut chosen_coords: Vec<Vec<BigInt>> = Vec::new();
    let mut rank = Lattice::new(Ring::Integers, betti);
    if betti > 0 {
        for c in sorted_candidates(Ring::Integers, cycles, boundary_cols) {
            let f = class_coords(&c)[rank_m..].to_vec();
            if rank.insert(&f) && rank.rank() > chosen_coords.len() {
                chosen_coords.push(f);
                free.push(c);
                if free.len() == betti {
                    break;
                }
            }
        }
        let unimodular = free.len() == betti
            && IntMatrix::from_columns(betti, &chosen_coords).is_unimodular();
        if !unimodular {
            free = (rank_m..k)
                .map(|i| {
                    let mut c = lift(i);
                    normalize_sign(Ring::Integers, &mut c);
                    c
                })
                .collect();
        }
    }
    let torsion = (0..rank_m)
        .filter(|&i| factors[i] > BigInt::one())
        .map(|i| {
            let mut c = lift(i);
            normalize_sign(Ring::Integers, &mut c);
            (c, factors[i].clone())
        })
        .collect();
    (free, torsion)
}
