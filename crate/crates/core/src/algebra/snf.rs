//! Smith normal form over the integers, with both transforms and their
//! inverses tracked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, IntMatrix};

/// `D = U · A · V` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_r`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form. The pivot is always the entry of smallest nonzero
/// absolute value in the remaining block, ties broken by (row, column).
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut rank = 0;

    'diag: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                break 'diag;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(&pivot);
                let neg = -&q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                u_inv.add_col_multiple(t, i, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(&pivot);
                let neg = -&q;
                d.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                v_inv.add_row_multiple(t, j, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank = t + 1;
    }

    SmithDecomposition {
        u,
        d,
        v,
        u_inv,
        v_inv,
        rank,
    }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// A linear functional witnessing that `A·x = b` has no integer solution:
/// `y·A ≡ 0` and `y·b ≢ 0` modulo `modulus` (exactly, when the modulus is 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub functional: Vec<BigInt>,
    pub modulus: BigInt,
}

impl Obstruction {
    pub fn certifies(&self, a: &IntMatrix, b: &[BigInt]) -> bool {
        let reduce = |x: BigInt| {
            if self.modulus.is_zero() {
                x
            } else {
                x.mod_floor(&self.modulus)
            }
        };
        let ya = a.transpose().mul_vec(&self.functional);
        let yb: BigInt = self.functional.iter().zip(b).map(|(y, x)| y * x).sum();
        ya.into_iter().all(|x| reduce(x).is_zero()) && !reduce(yb).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `A · x = b`.
    Member(Vec<BigInt>),
    NotMember(Obstruction),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Decides whether `b` lies in the column lattice of `A`.
pub fn lattice_member(a: &IntMatrix, b: &[BigInt]) -> Result<Membership, AlgebraError> {
    if b.len() != a.rows() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let s = snf(a);
    Ok(solve_with(&s, b))
}

pub(crate) fn solve_with(s: &SmithDecomposition, b: &[BigInt]) -> Membership {
    let c = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); s.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        let modulus = if i < s.rank {
            s.d.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        let solvable = if modulus.is_zero() {
            ci.is_zero()
        } else {
            ci.is_multiple_of(&modulus)
        };
        if !solvable {
            return Membership::NotMember(Obstruction {
                functional: s.u.row(i).to_vec(),
                modulus,
            });
        }
        if i < s.rank {
            y[i] = ci / &modulus;
        }
    }
    Membership::Member(s.v.mul_vec(&y))
}

/// Integer basis of `{x : A·x = 0}` as the columns of the result.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    let cols: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = snf(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn trivial_matrices() {
        let s = check(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![0]]));
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    /// Independent oracle: diagonalise with plain Euclidean row/column steps
    /// and no bookkeeping, then fix divisibility by gcd/lcm swaps.
    fn naive_invariants(a: &IntMatrix) -> Vec<BigInt> {
        let mut m: Vec<Vec<BigInt>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let (rows, cols) = (a.rows(), a.cols());
        let mut diag = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                let pos = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !m[i][j].is_zero())
                    .min_by_key(|&(i, j)| m[i][j].abs());
                let Some((pi, pj)) = pos else { return finish(diag) };
                m.swap(t, pi);
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                let p = m[t][t].clone();
                let mut done = true;
                for i in t + 1..rows {
                    let q = m[i][t].div_floor(&p);
                    for j in 0..cols {
                        let sub = &q * &m[t][j];
                        m[i][j] -= sub;
                    }
                    done &= m[i][t].is_zero();
                }
                for j in t + 1..cols {
                    let q = m[t][j].div_floor(&p);
                    for row in m.iter_mut() {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                    done &= m[t][j].is_zero();
                }
                if done {
                    diag.push(p.abs());
                    break;
                }
            }
        }
        finish(diag)
    }

    fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
        diag
    }

    #[test]
    fn two_by_two_against_naive_oracle() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let expected = naive_invariants(&a);
        assert_eq!(expected, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check(&a);
        assert_eq!(s.invariant_factors(), expected);
        let product: BigInt = expected.iter().product();
        assert_eq!(product, a.determinant().abs());
    }

    #[test]
    fn membership_basics() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(
            lattice_member(&a, &[BigInt::from(4)]).unwrap(),
            Membership::Member(vec![BigInt::from(2)])
        );
        match lattice_member(&a, &[BigInt::from(3)]).unwrap() {
            Membership::NotMember(ob) => assert!(ob.certifies(&a, &[BigInt::from(3)])),
            m => panic!("unexpected {m:?}"),
        }
        assert!(matches!(
            lattice_member(&a, &[]),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_of_simple_rows() {
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(
            col == vec![BigInt::from(1), BigInt::from(-1)]
                || col == vec![BigInt::from(-1), BigInt::from(1)]
        );
        let k = kernel_basis(&IntMatrix::zeros(2, 2));
        assert!(k.is_unimodular());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
            .prop_map(|r| IntMatrix::from_rows(&r))
    }

    fn vectors_up_to(dim: usize, bound: i64) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v: Vec<BigInt>| {
                    (-bound..=bound).map(move |x| {
                        let mut w = v.clone();
                        w.push(BigInt::from(x));
                        w
                    })
                })
                .collect();
        }
        out
    }

    proptest! {
        #[test]
        fn snf_recomposes(a in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let s = check(&a);
            prop_assert_eq!(s.invariant_factors(), naive_invariants(&a));
            prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        }

        #[test]
        fn membership_agrees_with_bounded_search(
            a in small_matrix(4, 4),
            b in proptest::collection::vec(-6i64..=6, 4),
        ) {
            let b: Vec<BigInt> = b.into_iter().map(BigInt::from).collect();
            let found = vectors_up_to(4, 5).into_iter().any(|x| a.mul_vec(&x) == b);
            match lattice_member(&a, &b).unwrap() {
                Membership::Member(x) => prop_assert_eq!(a.mul_vec(&x), b),
                Membership::NotMember(ob) => {
                    prop_assert!(!found);
                    prop_assert!(ob.certifies(&a, &b));
                }
            }
        }

        #[test]
        fn kernel_generates_small_solutions(a in small_matrix(2, 3)) {
            let k = kernel_basis(&a);
            prop_assert!((&a * &k).is_zero());
            for x in vectors_up_to(3, 3) {
                if a.mul_vec(&x).iter().all(Zero::is_zero) {
                    prop_assert!(lattice_member(&k, &x).unwrap().is_member());
                }
            }
        }
    }
}
