//! Isomorphism search between small precubical sets.

use super::{CubeId, PrecubicalSet};

/// Finds an isomorphism `P → Q` (indexed by cube id of `P`) such that
/// `compatible(x, f(x))` holds for every cube. Backtracking over cubes in
/// decreasing degree; faces of an assigned cube are forced.
pub fn find_isomorphism(
    p: &PrecubicalSet,
    q: &PrecubicalSet,
    compatible: impl Fn(CubeId, CubeId) -> bool,
) -> Option<Vec<CubeId>> {
    if p.counts() != q.counts() {
        return None;
    }
    let sig_p = signatures(p);
    let sig_q = signatures(q);
    let mut search = Search {
        p,
        q,
        sig_p: &sig_p,
        sig_q: &sig_q,
        compatible: &compatible,
        map: vec![None; p.len()],
        used: vec![false; q.len()],
        trail: Vec::new(),
    };
    let order: Vec<CubeId> = p.ids().rev().collect();
    if search.run(&order, 0) {
        Some(search.map.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

pub fn is_isomorphic(p: &PrecubicalSet, q: &PrecubicalSet) -> bool {
    find_isomorphism(p, q, |_, _| true).is_some()
}

/// Degree plus, for every face slot `(i, k)`, how many cubes have this cube
/// in that slot.
fn signatures(set: &PrecubicalSet) -> Vec<Vec<usize>> {
    let mut sig: Vec<Vec<usize>> = set
        .ids()
        .map(|x| {
            let mut s = vec![0; 2 * (set.dimension() + 1) + 1];
            s[0] = set.degree(x);
            s
        })
        .collect();
    for x in set.ids() {
        for i in 1..=set.degree(x) {
            for k in 0..2u8 {
                let y = set.face(x, i, k);
                sig[y.index()][1 + 2 * (i - 1) + k as usize] += 1;
            }
        }
    }
    sig
}

struct Search<'a, F> {
    p: &'a PrecubicalSet,
    q: &'a PrecubicalSet,
    sig_p: &'a [Vec<usize>],
    sig_q: &'a [Vec<usize>],
    compatible: &'a F,
    map: Vec<Option<CubeId>>,
    used: Vec<bool>,
    trail: Vec<CubeId>,
}

impl<F: Fn(CubeId, CubeId) -> bool> Search<'_, F> {
    fn run(&mut self, order: &[CubeId], mut pos: usize) -> bool {
        while pos < order.len() && self.map[order[pos].index()].is_some() {
            pos += 1;
        }
        let Some(&x) = order.get(pos) else {
            return true;
        };
        let candidates: Vec<CubeId> = self.q.cubes_of_degree(self.p.degree(x)).collect();
        for y in candidates {
            if self.used[y.index()] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.run(order, pos + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn assign(&mut self, x: CubeId, y: CubeId) -> bool {
        let mut stack = vec![(x, y)];
        while let Some((x, y)) = stack.pop() {
            if let Some(z) = self.map[x.index()] {
                if z != y {
                    return false;
                }
                continue;
            }
            if self.used[y.index()]
                || self.sig_p[x.index()] != self.sig_q[y.index()]
                || !(self.compatible)(x, y)
            {
                return false;
            }
            self.map[x.index()] = Some(y);
            self.used[y.index()] = true;
            self.trail.push(x);
            for i in 1..=self.p.degree(x) {
                for k in 0..2u8 {
                    stack.push((self.p.face(x, i, k), self.q.face(y, i, k)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            let y = self.map[x.index()].take().unwrap();
            self.used[y.index()] = false;
        }
    }
}
