//! Small named complexes used throughout the tests, the CLI fixtures and the
//! acceptance suite.

use crate::cubical::{CubeDecl, PrecubicalBuilder, PrecubicalSet};
use crate::hda::{Hda, Word};

/// One vertex `v`, one loop `a`.
pub fn circ() -> PrecubicalSet {
    PrecubicalSet::builder()
        .vertex("v")
        .edge("a", "v", "v")
        .build()
        .unwrap()
}

/// Two edges `a`, `b` from `v` to `w`.
pub fn digon() -> PrecubicalSet {
    PrecubicalSet::builder()
        .vertices(["v", "w"])
        .edge("a", "v", "w")
        .edge("b", "v", "w")
        .build()
        .unwrap()
}

/// One vertex `u`, loops `a`, `b`, and a square `s` with `d_1^k s = a`,
/// `d_2^k s = b`.
pub fn torus() -> PrecubicalSet {
    PrecubicalSet::builder()
        .vertex("u")
        .edge("a", "u", "u")
        .edge("b", "u", "u")
        .cube("s", ["a", "b"], ["a", "b"])
        .build()
        .unwrap()
}

/// A single edge `e` from `0` to `2`.
pub fn edge() -> PrecubicalSet {
    PrecubicalSet::builder()
        .vertices(["0", "2"])
        .edge("e", "0", "2")
        .build()
        .unwrap()
}

/// The unit square with vertices `xy`, bottom/top edges `a0`/`a1` and
/// left/right edges `b0`/`b1`.
pub fn square() -> PrecubicalSet {
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

pub fn empty() -> PrecubicalSet {
    PrecubicalSet::empty()
}

/// A square whose lower faces are listed in swapped order; violates the
/// precubical identities.
pub fn broken_square() -> Vec<CubeDecl> {
    let mut decls: Vec<CubeDecl> = ["00", "01", "10", "11"]
        .into_iter()
        .map(CubeDecl::vertex)
        .collect();
    decls.push(CubeDecl::cube("a0", ["00"], ["10"]));
    decls.push(CubeDecl::cube("a1", ["01"], ["11"]));
    decls.push(CubeDecl::cube("b0", ["00"], ["01"]));
    decls.push(CubeDecl::cube("b1", ["10"], ["11"]));
    decls.push(CubeDecl::cube("s", ["a0", "b0"], ["b1", "a1"]));
    decls
}

/// Vertices of the 3×3 grid, `[row][column]`.
const GRID3: [[&str; 3]; 3] = [["q0", "q2", "p1"], ["q6", "q8", "p7"], ["q11", "q13", "p12"]];

/// The 2×2 grid of unit squares with only the listed squares filled. Squares
/// are addressed by their lower-left cell `(column, row)` and named
/// `s_ll`, `s_lr`, `s_ul`, `s_ur`. Horizontal edge `h{r}{c}` runs from
/// `(c, r)` to `(c+1, r)`; vertical edge `v{r}{c}` from `(c, r)` to `(c, r+1)`.
fn grid3(filled: &[(usize, usize)]) -> PrecubicalSet {
    let mut b = PrecubicalBuilder::new();
    for row in GRID3 {
        b = b.vertices(row);
    }
    for r in 0..3 {
        for c in 0..2 {
            b = b.edge(format!("h{r}{c}"), GRID3[r][c], GRID3[r][c + 1]);
        }
    }
    for r in 0..2 {
        for c in 0..3 {
            b = b.edge(format!("v{r}{c}"), GRID3[r][c], GRID3[r + 1][c]);
        }
    }
    for &(c, r) in filled {
        let name = match (c, r) {
            (0, 0) => "s_ll",
            (1, 0) => "s_lr",
            (0, 1) => "s_ul",
            _ => "s_ur",
        };
        b = b.cube(
            name,
            [format!("v{r}{c}"), format!("h{r}{c}")],
            [format!("v{r}{}", c + 1), format!("h{}{c}", r + 1)],
        );
    }
    b.build().unwrap()
}

/// The 3×3 vertex grid with the upper-left and lower-right squares filled.
pub fn grid_ul_lr() -> PrecubicalSet {
    grid3(&[(0, 1), (1, 0)])
}

/// The 3×3 vertex grid with the lower-left and upper-right squares filled.
pub fn grid_ll_ur() -> PrecubicalSet {
    grid3(&[(0, 0), (1, 1)])
}

/// Two sources and two sinks: `q0 → q2`, `q5 → q3`, `q0 → q3`, `q5 → q2`.
pub fn crossing() -> PrecubicalSet {
    PrecubicalSet::builder()
        .vertices(["q0", "q2", "q3", "q5"])
        .edge("q0q2", "q0", "q2")
        .edge("q5q3", "q5", "q3")
        .edge("q0q3", "q0", "q3")
        .edge("q5q2", "q5", "q2")
        .build()
        .unwrap()
}

/// The geometry of [`grid_ul_lr`] with horizontal labels `ab`, `cd`
/// by column and vertical labels `uv`, `wx` by row; initial `q0`, final `p12`.
pub fn labelled_grid() -> Hda {
    let p = grid_ul_lr();
    let labels: Vec<(String, Word)> = p
        .edges()
        .map(|e| {
            let name = p.name(e).to_string();
            let (kind, rc) = name.split_at(1);
            let idx = |k: usize| rc.as_bytes()[k] - b'0';
            let label = if kind == "h" {
                ["ab", "cd"][idx(1) as usize]
            } else {
                ["uv", "wx"][idx(0) as usize]
            };
            (name, Word::from(label))
        })
        .collect();
    Hda::new(
        p,
        ["q0"],
        ["p12"],
        labels.iter().map(|(n, l)| (n.as_str(), l.clone())),
    )
    .unwrap()
}

/// Vertices of [`labelled_fine`] on the 5×5 grid, `[row][column]`; the two
/// centres of the empty squares are absent.
const GRID5: [[Option<&str>; 5]; 5] = [
    [Some("q0"), Some("q1"), Some("q2"), Some("p0"), Some("p1")],
    [Some("q3"), None, Some("q5"), Some("p3"), Some("p4")],
    [Some("q6"), Some("q7"), Some("q8"), Some("p6"), Some("p7")],
    [Some("q9"), Some("q4"), Some("q10"), None, Some("p8")],
    [Some("q11"), Some("q12"), Some("q13"), Some("p11"), Some("p12")],
];

/// The refinement of [`labelled_grid`] halving every edge, with single-letter
/// labels. Edge and square names follow the `h{r}{c}`/`v{r}{c}` scheme of
/// [`grid_ul_lr`] on the finer grid; squares are `s{r}{c}`.
pub fn labelled_fine() -> Hda {
    let filled = |c: usize, r: usize| (c < 2 && r >= 2) || (c >= 2 && r < 2);
    let in_filled_closure = |c0: usize, c1: usize, r0: usize, r1: usize| {
        (c1 <= 2 && r0 >= 2) || (c0 >= 2 && r1 <= 2)
    };
    let mut b = PrecubicalBuilder::new();
    let mut labels = Vec::new();
    for row in GRID5 {
        b = b.vertices(row.into_iter().flatten());
    }
    for r in 0..5 {
        for c in 0..4 {
            if let (Some(s), Some(t)) = (GRID5[r][c], GRID5[r][c + 1]) {
                if r % 2 == 0 || in_filled_closure(c, c + 1, r, r) {
                    let name = format!("h{r}{c}");
                    b = b.edge(name.clone(), s, t);
                    labels.push((name, Word::from(["a", "b", "c", "d"][c])));
                }
            }
        }
    }
    for r in 0..4 {
        for c in 0..5 {
            if let (Some(s), Some(t)) = (GRID5[r][c], GRID5[r + 1][c]) {
                if c % 2 == 0 || in_filled_closure(c, c, r, r + 1) {
                    let name = format!("v{r}{c}");
                    b = b.edge(name.clone(), s, t);
                    labels.push((name, Word::from(["u", "v", "w", "x"][r])));
                }
            }
        }
    }
    for r in 0..4 {
        for c in 0..4 {
            if filled(c, r) {
                b = b.cube(
                    format!("s{r}{c}"),
                    [format!("v{r}{c}"), format!("h{r}{c}")],
                    [format!("v{r}{}", c + 1), format!("h{}{c}", r + 1)],
                );
            }
        }
    }
    Hda::new(
        b.build().unwrap(),
        ["q0"],
        ["p12"],
        labels.iter().map(|(n, l)| (n.as_str(), l.clone())),
    )
    .unwrap()
}

/// Every valid named complex, smallest first.
pub fn all() -> Vec<(&'static str, PrecubicalSet)> {
    vec![
        ("empty", empty()),
        ("circ", circ()),
        ("digon", digon()),
        ("edge", edge()),
        ("torus", torus()),
        ("crossing", crossing()),
        ("square", square()),
        ("grid_ul_lr", grid_ul_lr()),
        ("grid_ll_ur", grid_ll_ur()),
        ("labelled_grid", labelled_grid().complex().clone()),
        ("labelled_fine", labelled_fine().complex().clone()),
    ]
}
