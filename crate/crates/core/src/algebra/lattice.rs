//! Row-echelon lattices (ℤ) and subspaces (ℤ/p) with canonical coset
//! representatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Ring};

/// A finitely generated subgroup of `R^dim`, kept in echelon form.
///
/// Over ℤ every row has a positive pivot (its first nonzero entry) and pivots
/// strictly increase. Over ℤ/p the rows are in reduced echelon form with unit
/// pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ring: Ring,
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy(v: &mut [BigInt], factor: &BigInt, row: &[BigInt]) {
    if factor.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(row) {
        if !b.is_zero() {
            *a += factor * b;
        }
    }
}

impl Lattice {
    pub fn new(ring: Ring, dim: usize) -> Self {
        Lattice {
            ring,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn from_vectors<'v>(
        ring: Ring,
        dim: usize,
        vectors: impl IntoIterator<Item = &'v [BigInt]>,
    ) -> Self {
        let mut l = Lattice::new(ring, dim);
        for v in vectors {
            l.insert(v);
        }
        l
    }

    pub fn from_columns(ring: Ring, m: &IntMatrix) -> Self {
        let mut l = Lattice::new(ring, m.rows());
        for c in m.columns() {
            l.insert(&c);
        }
        l
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Adds a generator. Returns whether the lattice grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim, "vector of wrong length");
        match self.ring {
            Ring::Integers => self.insert_z(v.to_vec()),
            Ring::Prime(p) => self.insert_p(v, &BigInt::from(p)),
        }
    }

    fn insert_z(&mut self, mut v: Vec<BigInt>) -> bool {
        let mut grew = false;
        while let Some(lead) = leading(&v) {
            match self.rows.binary_search_by_key(&lead, |(p, _)| *p) {
                Ok(at) => {
                    let row = &mut self.rows[at].1;
                    let a = row[lead].clone();
                    let b = v[lead].clone();
                    if b.is_multiple_of(&a) {
                        let q = -(&b / &a);
                        axpy(&mut v, &q, row);
                        continue;
                    }
                    let e = a.extended_gcd(&b);
                    // new_row = s·row + t·v has pivot g; new_v = (a/g)·v − (b/g)·row kills the pivot.
                    let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
                    let new_row: Vec<BigInt> = row
                        .iter()
                        .zip(&v)
                        .map(|(r, x)| &e.x * r + &e.y * x)
                        .collect();
                    let new_v: Vec<BigInt> =
                        row.iter().zip(&v).map(|(r, x)| &ag * x - &bg * r).collect();
                    *row = new_row;
                    if row[lead].is_negative() {
                        row.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    v = new_v;
                    grew = true;
                }
                Err(at) => {
                    if v[lead].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    self.rows.insert(at, (lead, v));
                    return true;
                }
            }
        }
        grew
    }

    fn insert_p(&mut self, v: &[BigInt], p: &BigInt) -> bool {
        let mut v = self.reduce(v);
        let Some(lead) = leading(&v) else {
            return false;
        };
        let inv = mod_inverse(&v[lead], p);
        for x in v.iter_mut() {
            *x = (&*x * &inv).mod_floor(p);
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let f = -row[lead].clone();
                axpy(row, &f, &v);
                row.iter_mut().for_each(|x| *x = x.mod_floor(p));
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < lead);
        self.rows.insert(at, (lead, v));
        true
    }

    /// Canonical representative of the coset `v + L`.
    ///
    /// Over ℤ the entry at every pivot column ends up in `[0, pivot)`; two
    /// vectors are congruent modulo the lattice iff their reductions agree.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector of wrong length");
        let mut v = self.ring.normalize_vec(v);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let q = match self.ring {
                Ring::Integers => v[*p].div_floor(&row[*p]),
                Ring::Prime(_) => v[*p].clone(),
            };
            axpy(&mut v, &-q, row);
            if let Ring::Prime(m) = self.ring {
                let m = BigInt::from(m);
                v.iter_mut().for_each(|x| *x = x.mod_floor(&m));
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

/// Basis of `{x : A·x ≡ 0 (mod p)}` as columns, entries in `[0, p)`.
pub fn kernel_basis_mod(a: &IntMatrix, p: u64) -> IntMatrix {
    let rows = Lattice::from_vectors(
        Ring::Prime(p),
        a.cols(),
        (0..a.rows()).map(|i| a.row(i)),
    );
    let pivots: Vec<usize> = rows.rows.iter().map(|(q, _)| *q).collect();
    let modulus = BigInt::from(p);
    let columns: Vec<Vec<BigInt>> = (0..a.cols())
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut x = vec![BigInt::zero(); a.cols()];
            x[free] = BigInt::one();
            for (q, row) in &rows.rows {
                x[*q] = (-&row[free]).mod_floor(&modulus);
            }
            x
        })
        .collect();
    IntMatrix::from_columns(a.cols(), &columns)
}
