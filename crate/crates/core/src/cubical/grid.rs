//! Grid complexes `⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧`, encoded coordinatewise.
//!
//! A coordinate is either an integer point `m` or the interval token
//! `[m, m+1]`. Internally coordinate `j` is stored as a code `c ∈ 0..=2 l_j`:
//! even codes are points (`m = c/2`), odd codes intervals (`m = (c-1)/2`).
//! The textual key of a cell joins coordinates with commas, points as `m`
//! and intervals as `m+` (so `"0,1+"` is `(0, [1,2])`).

use std::fmt;
use std::str::FromStr;

use super::{CubicalError, PrecubicalBuilder, PrecubicalSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridCoord {
    Point(u32),
    /// `[m, m+1]`
    Interval(u32),
}

impl GridCoord {
    fn code(self) -> u32 {
        match self {
            GridCoord::Point(m) => 2 * m,
            GridCoord::Interval(m) => 2 * m + 1,
        }
    }

    fn from_code(c: u32) -> Self {
        if c % 2 == 0 {
            GridCoord::Point(c / 2)
        } else {
            GridCoord::Interval(c / 2)
        }
    }
}

/// A cell of some grid complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCell(Vec<u32>);

impl GridCell {
    pub fn new(coords: impl IntoIterator<Item = GridCoord>) -> Self {
        GridCell(coords.into_iter().map(GridCoord::code).collect())
    }

    /// The grid vertex with the given integer coordinates.
    pub fn vertex(coords: &[u32]) -> Self {
        GridCell(coords.iter().map(|&m| 2 * m).collect())
    }

    /// The top cell `ι_n = ([0,1], …, [0,1])` of the standard `n`-cube.
    pub fn unit_top(n: usize) -> Self {
        GridCell(vec![1; n])
    }

    /// Number of coordinates (the dimension of the ambient grid).
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Number of interval coordinates.
    pub fn degree(&self) -> usize {
        self.0.iter().filter(|&&c| c % 2 == 1).count()
    }

    pub fn coord(&self, axis: usize) -> GridCoord {
        GridCoord::from_code(self.0[axis])
    }

    pub fn coords(&self) -> impl Iterator<Item = GridCoord> + '_ {
        self.0.iter().map(|&c| GridCoord::from_code(c))
    }

    pub fn is_vertex(&self) -> bool {
        self.0.iter().all(|&c| c % 2 == 0)
    }

    /// `d_i^k` of the cell: the `i`-th interval coordinate (1-based) becomes
    /// its lower (`k = 0`) or upper (`k = 1`) endpoint.
    pub fn face(&self, i: usize, k: u8) -> GridCell {
        let axis = self.interval_axis(i);
        let mut codes = self.0.clone();
        codes[axis] = if k == 0 {
            codes[axis] - 1
        } else {
            codes[axis] + 1
        };
        GridCell(codes)
    }

    /// Ambient axis (0-based) of the `i`-th interval coordinate.
    pub fn interval_axis(&self, i: usize) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % 2 == 1)
            .nth(i - 1)
            .map(|(axis, _)| axis)
            .unwrap_or_else(|| panic!("cell has no interval coordinate {i}"))
    }

    /// Drops coordinate `axis`.
    pub fn remove_axis(&self, axis: usize) -> GridCell {
        let mut codes = self.0.clone();
        codes.remove(axis);
        GridCell(codes)
    }

    /// Inserts a point coordinate `m` at `axis`.
    pub fn insert_point(&self, axis: usize, m: u32) -> GridCell {
        let mut codes = self.0.clone();
        codes.insert(axis, 2 * m);
        GridCell(codes)
    }

    /// Axes (0-based) whose coordinate is an endpoint of `⟦0,l⟧`, with the
    /// side: `0` for the lower end, `1` for the upper end.
    pub fn boundary_axes<'s>(&'s self, shape: &'s GridShape) -> impl Iterator<Item = (usize, u8)> + 's {
        self.0
            .iter()
            .zip(&shape.0)
            .enumerate()
            .filter_map(|(axis, (&c, &l))| match c {
                0 => Some((axis, 0)),
                c if c == 2 * l => Some((axis, 1)),
                _ => None,
            })
    }

    /// Minimal vertex of the cell, `cell_♯(0,…,0)`.
    pub fn min_vertex(&self) -> GridCell {
        GridCell(self.0.iter().map(|&c| c - c % 2).collect())
    }

    /// Maximal vertex of the cell, `cell_♯(1,…,1)`.
    pub fn max_vertex(&self) -> GridCell {
        GridCell(self.0.iter().map(|&c| c + c % 2).collect())
    }

    /// Integer coordinates of a vertex cell.
    pub fn vertex_coords(&self) -> Vec<u32> {
        debug_assert!(self.is_vertex());
        self.0.iter().map(|&c| c / 2).collect()
    }

    /// Whether the cell lies in `⟧0,l_1⟦ ⊗ … ⊗ ⟧0,l_n⟦`.
    pub fn is_interior(&self, shape: &GridShape) -> bool {
        self.0
            .iter()
            .zip(&shape.0)
            .all(|(&c, &l)| c > 0 && c < 2 * l)
    }

    /// Whether the cell lies in `⟦0,l_1⟦ ⊗ … ⊗ ⟦0,l_n⟦`.
    pub fn is_lower(&self, shape: &GridShape) -> bool {
        self.0.iter().zip(&shape.0).all(|(&c, &l)| c < 2 * l)
    }

    /// Whether the cell lies in `⟧0,l_1⟧ ⊗ … ⊗ ⟧0,l_n⟧`.
    pub fn is_upper(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    /// Whether the cell lies in the box `⟦0,u_1⟧ ⊗ … ⊗ ⟦0,u_n⟧`.
    pub fn in_box(&self, upper: &[u32]) -> bool {
        self.0.iter().zip(upper).all(|(&c, &u)| c <= 2 * u)
    }

    /// The cell of `⟦0,1⟧^{⊗n}` whose open cell contains this cell's open cell
    /// under the affine rescaling of `shape` onto the unit cube.
    pub fn unit_carrier(&self, shape: &GridShape) -> GridCell {
        GridCell(
            self.0
                .iter()
                .zip(&shape.0)
                .map(|(&c, &l)| match c {
                    0 => 0,
                    c if c == 2 * l => 2,
                    _ => 1,
                })
                .collect(),
        )
    }

    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GridCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, coord) in self.coords().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            match coord {
                GridCoord::Point(m) => write!(f, "{m}")?,
                GridCoord::Interval(m) => write!(f, "{m}+")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed grid cell key `{0}`")]
pub struct GridKeyError(pub String);

impl FromStr for GridCell {
    type Err = GridKeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(GridCell(Vec::new()));
        }
        s.split(',')
            .map(|tok| {
                let (digits, interval) = match tok.strip_suffix('+') {
                    Some(d) => (d, true),
                    None => (tok, false),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(GridKeyError(s.to_string()));
                }
                let m: u32 = digits.parse().map_err(|_| GridKeyError(s.to_string()))?;
                Ok(if interval {
                    GridCoord::Interval(m)
                } else {
                    GridCoord::Point(m)
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GridCell::new)
    }
}

/// The grid complex `⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧`, identified by its shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridShape(Vec<u32>);

impl GridShape {
    pub fn new(lengths: Vec<u32>) -> Self {
        assert!(lengths.iter().all(|&l| l >= 1), "grid lengths must be positive");
        GridShape(lengths)
    }

    /// The standard cube `⟦0,1⟧^{⊗n}`.
    pub fn unit(n: usize) -> Self {
        GridShape(vec![1; n])
    }

    pub fn lengths(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn remove_axis(&self, axis: usize) -> GridShape {
        let mut lengths = self.0.clone();
        lengths.remove(axis);
        GridShape(lengths)
    }

    pub fn cell_count(&self) -> usize {
        self.0.iter().map(|&l| 2 * l as usize + 1).product()
    }

    /// Dense index of a cell; cells are ordered lexicographically by codes.
    pub fn index_of(&self, cell: &GridCell) -> usize {
        debug_assert!(self.contains(cell));
        cell.0
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&c, &l)| acc * (2 * l as usize + 1) + c as usize)
    }

    pub fn cell_at(&self, mut index: usize) -> GridCell {
        let mut codes = vec![0; self.0.len()];
        for (j, &l) in self.0.iter().enumerate().rev() {
            let radix = 2 * l as usize + 1;
            codes[j] = (index % radix) as u32;
            index /= radix;
        }
        GridCell(codes)
    }

    pub fn contains(&self, cell: &GridCell) -> bool {
        cell.0.len() == self.0.len() && cell.0.iter().zip(&self.0).all(|(&c, &l)| c <= 2 * l)
    }

    pub fn cells(&self) -> impl Iterator<Item = GridCell> + '_ {
        (0..self.cell_count()).map(|i| self.cell_at(i))
    }

    pub fn vertices(&self) -> impl Iterator<Item = GridCell> + '_ {
        self.cells().filter(GridCell::is_vertex)
    }

    pub fn interior_cells(&self) -> impl Iterator<Item = GridCell> + '_ {
        self.cells().filter(|c| c.is_interior(self))
    }

    /// The far corner `(l_1, …, l_n)`.
    pub fn top_vertex(&self) -> GridCell {
        GridCell::vertex(&self.0)
    }

    /// The grid as a precubical set, cells named by their keys.
    pub fn to_precubical(&self) -> Result<PrecubicalSet, CubicalError> {
        let mut b = PrecubicalBuilder::new();
        for cell in self.cells() {
            let n = cell.degree();
            let d0: Vec<String> = (1..=n).map(|i| cell.face(i, 0).key()).collect();
            let d1: Vec<String> = (1..=n).map(|i| cell.face(i, 1).key()).collect();
            b = b.cube(cell.key(), d0, d1);
        }
        b.build()
    }
}
