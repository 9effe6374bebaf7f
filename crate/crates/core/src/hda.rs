//! Higher dimensional automata: a precubical set with initial and final
//! states and edge labels in a monoid.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};

use thiserror::Error;

use crate::cubical::{CubeId, CubicalError, Path, PrecubicalSet};

/// A monoid element. `product` must be associative with `unit` as identity.
pub trait Monoid: Clone + Eq + Debug {
    fn unit() -> Self;
    fn product(&self, other: &Self) -> Self;
}

/// An element of the free monoid on characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub String);

impl Word {
    pub fn new(s: impl Into<String>) -> Self {
        Word(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Splits the word into `parts` consecutive pieces whose lengths differ by
    /// at most one, longer pieces first. Pieces may be empty.
    pub fn split_even(&self, parts: usize) -> Vec<Word> {
        assert!(parts > 0);
        let chars: Vec<char> = self.0.chars().collect();
        let (q, r) = (chars.len() / parts, chars.len() % parts);
        let mut out = Vec::with_capacity(parts);
        let mut at = 0;
        for j in 0..parts {
            let len = q + usize::from(j < r);
            out.push(Word(chars[at..at + len].iter().collect()));
            at += len;
        }
        out
    }
}

impl Monoid for Word {
    fn unit() -> Self {
        Word(String::new())
    }

    fn product(&self, other: &Self) -> Self {
        Word(format!("{}{}", self.0, other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.to_string())
    }
}

/// Checks unit and associativity laws on all (triples of) samples.
pub fn monoid_laws_hold<M: Monoid>(samples: &[M]) -> bool {
    let unit = M::unit();
    samples.iter().all(|a| a.product(&unit) == *a && unit.product(a) == *a)
        && samples.iter().all(|a| {
            samples.iter().all(|b| {
                samples
                    .iter()
                    .all(|c| a.product(b).product(c) == a.product(&b.product(c)))
            })
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HdaError {
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error("state `{0}` is not a vertex")]
    StateNotVertex(String),
    #[error("edge `{0}` has no label")]
    MissingLabel(String),
    #[error("label attached to `{0}`, which is not an edge")]
    LabelOnNonEdge(String),
    #[error("square `{cube}`: opposite edges along axis {axis} carry different labels")]
    LabelSquareMismatch { cube: String, axis: usize },
}

/// A validated HDA `(P, I, F, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hda<L: Monoid = Word> {
    complex: PrecubicalSet,
    initial: Vec<CubeId>,
    finals: Vec<CubeId>,
    /// Indexed by edge position.
    labels: Vec<L>,
}

impl<L: Monoid> Hda<L> {
    pub fn new<'s>(
        complex: PrecubicalSet,
        initial: impl IntoIterator<Item = &'s str>,
        finals: impl IntoIterator<Item = &'s str>,
        labels: impl IntoIterator<Item = (&'s str, L)>,
    ) -> Result<Self, HdaError> {
        let states = |names: &mut dyn Iterator<Item = &'s str>| -> Result<Vec<CubeId>, HdaError> {
            let mut ids = Vec::new();
            for n in names {
                let id = complex.lookup(n)?;
                if complex.degree(id) != 0 {
                    return Err(HdaError::StateNotVertex(n.to_string()));
                }
                ids.push(id);
            }
            ids.sort();
            ids.dedup();
            Ok(ids)
        };
        let initial = states(&mut initial.into_iter())?;
        let finals = states(&mut finals.into_iter())?;

        let mut slots: Vec<Option<L>> = vec![None; complex.count(1)];
        for (name, label) in labels {
            let id = complex.lookup(name)?;
            if complex.degree(id) != 1 {
                return Err(HdaError::LabelOnNonEdge(name.to_string()));
            }
            slots[complex.position(id)] = Some(label);
        }
        let labels = slots
            .into_iter()
            .enumerate()
            .map(|(pos, l)| {
                l.ok_or_else(|| HdaError::MissingLabel(complex.name(complex.cube_at(1, pos)).into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let hda = Hda {
            complex,
            initial,
            finals,
            labels,
        };
        hda.check_squares()?;
        Ok(hda)
    }

    fn check_squares(&self) -> Result<(), HdaError> {
        let p = &self.complex;
        for x in p.cubes_of_degree(2) {
            for axis in 1..=2 {
                if self.label(p.face(x, axis, 0)) != self.label(p.face(x, axis, 1)) {
                    return Err(HdaError::LabelSquareMismatch {
                        cube: p.name(x).to_string(),
                        axis,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &PrecubicalSet {
        &self.complex
    }

    pub fn initial(&self) -> &[CubeId] {
        &self.initial
    }

    pub fn finals(&self) -> &[CubeId] {
        &self.finals
    }

    /// `λ(e)`; panics if `e` is not an edge.
    pub fn label(&self, e: CubeId) -> &L {
        assert_eq!(self.complex.degree(e), 1, "labels live on edges");
        &self.labels[self.complex.position(e)]
    }

    /// Labels keyed by edge name.
    pub fn labels(&self) -> BTreeMap<&str, &L> {
        self.complex
            .edges()
            .map(|e| (self.complex.name(e), self.label(e)))
            .collect()
    }

    /// `λ̄(ω)`: the product of the edge labels along the path.
    pub fn path_label(&self, path: &Path) -> L {
        path.edges()
            .iter()
            .fold(L::unit(), |acc, &e| acc.product(self.label(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// (ℕ, +) as a non-free monoid.
    #[derive(Clone, Debug, PartialEq, Eq)]
    struct Steps(u64);

    impl Monoid for Steps {
        fn unit() -> Self {
            Steps(0)
        }
        fn product(&self, other: &Self) -> Self {
            Steps(self.0 + other.0)
        }
    }

    fn square() -> PrecubicalSet {
        PrecubicalSet::builder()
            .vertices(["00", "01", "10", "11"])
            .edge("a0", "00", "10")
            .edge("a1", "01", "11")
            .edge("b0", "00", "01")
            .edge("b1", "10", "11")
            .cube("s", ["b0", "a0"], ["b1", "a1"])
            .build()
            .unwrap()
    }

    #[test]
    fn labelled_grid_is_valid() {
        let a = fixtures::labelled_grid();
        assert_eq!(a.initial().len(), 1);
        assert_eq!(a.finals().len(), 1);
    }

    #[test]
    fn square_label_mismatch() {
        let labels = [("a0", "x"), ("a1", "x"), ("b0", "a"), ("b1", "b")];
        let err = Hda::new(
            square(),
            ["00"],
            ["11"],
            labels.iter().map(|&(e, l)| (e, Word::from(l))),
        )
        .unwrap_err();
        assert_eq!(
            err,
            HdaError::LabelSquareMismatch {
                cube: "s".into(),
                axis: 1
            }
        );
    }

    #[test]
    fn states_must_be_vertices() {
        let labels = [("a0", "x"), ("a1", "x"), ("b0", "y"), ("b1", "y")];
        let err = Hda::new(
            square(),
            ["a0"],
            ["11"],
            labels.iter().map(|&(e, l)| (e, Word::from(l))),
        )
        .unwrap_err();
        assert_eq!(err, HdaError::StateNotVertex("a0".into()));
    }

    #[test]
    fn path_labels() {
        let c = PrecubicalSet::builder()
            .vertices(["0", "1", "2"])
            .edge("e", "0", "1")
            .edge("f", "1", "2")
            .build()
            .unwrap();
        let h = Hda::new(c, ["0"], ["2"], [("e", Word::from("a")), ("f", Word::from("b"))]).unwrap();
        let p = Path::from_names(h.complex(), &["e", "f"]).unwrap();
        assert_eq!(h.path_label(&p), Word::from("ab"));
        let z = Path::constant(h.complex(), h.complex().lookup("1").unwrap()).unwrap();
        assert_eq!(h.path_label(&z), Word::unit());
    }

    #[test]
    fn square_boundaries_use_the_same_letters() {
        // Around a square the two paths read λ(a)·λ(b) and λ(b)·λ(a); they
        // agree only when the two labels commute.
        for h in [fixtures::labelled_grid(), fixtures::labelled_fine()] {
            let p = h.complex();
            for x in p.cubes_of_degree(2) {
                let lower = Path::from_edges(p, vec![p.face(x, 2, 0), p.face(x, 1, 1)]).unwrap();
                let upper = Path::from_edges(p, vec![p.face(x, 1, 0), p.face(x, 2, 1)]).unwrap();
                let (a, b) = (h.label(p.face(x, 2, 0)), h.label(p.face(x, 1, 0)));
                assert_eq!(h.path_label(&lower), a.product(b));
                assert_eq!(h.path_label(&upper), b.product(a));
            }
        }
        let sq = fixtures::square();
        let h = Hda::new(
            sq,
            ["00"],
            ["11"],
            [("a0", Steps(1)), ("a1", Steps(1)), ("b0", Steps(2)), ("b1", Steps(2))],
        )
        .unwrap();
        let p = h.complex();
        let lower = Path::from_names(p, &["a0", "b1"]).unwrap();
        let upper = Path::from_names(p, &["b0", "a1"]).unwrap();
        assert_eq!(h.path_label(&lower), h.path_label(&upper));
    }

    #[test]
    fn other_monoids() {
        assert!(monoid_laws_hold(&[Steps(0), Steps(3), Steps(5)]));
        assert!(monoid_laws_hold(&[Word::from(""), Word::from("ab"), Word::from("c")]));
        let c = fixtures::circ();
        let h = Hda::new(c, ["v"], ["v"], [("a", Steps(2))]).unwrap();
        let p = Path::from_names(h.complex(), &["a", "a", "a"]).unwrap();
        assert_eq!(h.path_label(&p), Steps(6));
    }

    #[test]
    fn even_split() {
        let w = Word::from("abc");
        assert_eq!(w.split_even(2), vec![Word::from("ab"), Word::from("c")]);
        assert_eq!(Word::from("a").split_even(2)[1], Word::unit());
    }
}
