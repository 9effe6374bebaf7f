//! Grid subdivisions: weak morphisms `f: P → Q` that are homeomorphisms,
//! given combinatorially.
//!
//! Each cube `x ∈ P_n` comes with a shape `(l_1, …, l_n)` and a cell map
//! `x_♭: ⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧ → Q`; vertices use the empty shape, so `x_♭`
//! of a vertex is `f_0(x)`. The rescaling `R_x → ⟦0,1⟧^{⊗n}` is the per-axis
//! affine one, which makes every interior test coordinatewise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::IntMatrix;
use crate::cubical::{
    CubeId, CubicalError, GridCell, GridCoord, GridShape, Path, PrecubicalBuilder,
    PrecubicalSet, PrecubicalSubset, DEFAULT_CUBE_LIMIT,
};
use crate::hda::{Hda, HdaError, Monoid, Word};
use crate::homology::{HomologyClass, HomologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    Hda(#[from] HdaError),
    #[error("vertex `{0}` has no image")]
    MissingVertex(String),
    #[error("cube `{0}` has no cell map")]
    MissingCube(String),
    #[error("cell map given for `{0}`, which is not a cube of positive degree")]
    UnexpectedCube(String),
    #[error("cube `{cube}` of degree {degree} has shape of length {found}")]
    BadShape {
        cube: String,
        degree: usize,
        found: usize,
    },
    #[error("cube `{cube}`: shape of face d_{axis}^{side} does not match")]
    FaceShapeMismatch { cube: String, axis: usize, side: u8 },
    #[error("cube `{cube}`: malformed or out-of-range cell `{key}`")]
    BadCell { cube: String, key: String },
    #[error("cube `{cube}`: no image for cell `{key}`")]
    MissingCell { cube: String, key: String },
    #[error("cube `{cube}`: cell `{key}` is not mapped compatibly with its faces")]
    NotGridMorphism { cube: String, key: String },
    #[error("cube `{cube}`: cell `{key}` on face d_{axis}^{side} disagrees with the face's own map")]
    FaceMapMismatch {
        cube: String,
        axis: usize,
        side: u8,
        key: String,
    },
    #[error("edge `{edge}`: end {side} is not the image of its endpoint")]
    EdgeEndpointMismatch { edge: String, side: u8 },
    #[error("`{cell}` lies in the interior images of both `{first}` and `{second}`")]
    InteriorCollision {
        cell: String,
        first: String,
        second: String,
    },
    #[error("`{0}` lies in no interior image")]
    Uncovered(String),
    #[error("cube `{cube}`: parallel edges along axis {axis} have different counts")]
    InconsistentCounts { cube: String, axis: usize },
    #[error("edge counts must be positive (`{0}`)")]
    ZeroCount(String),
    #[error("cycle is not in the source complex: {0}")]
    Class(#[from] HomologyError),
}

/// Serializable subdivision data, keyed by cube names.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SubdivisionData {
    pub vertex_map: BTreeMap<String, String>,
    pub cubes: BTreeMap<String, CubeCells>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeCells {
    pub shape: Vec<u32>,
    /// Grid cell key to target cube name.
    pub cells: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct CellMap {
    shape: GridShape,
    /// Indexed by `shape.index_of`.
    cells: Vec<CubeId>,
}

/// A validated grid subdivision `f: P → Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionMorphism {
    source: PrecubicalSet,
    target: PrecubicalSet,
    /// Indexed by source cube id.
    maps: Vec<CellMap>,
    /// Indexed by target cube id: `(c(a), cell)` with `a = c(a)_♭(cell)` and
    /// `cell` interior.
    carriers: Vec<(CubeId, GridCell)>,
}

impl SubdivisionMorphism {
    /// Validates `data` as a subdivision of `source` onto `target`.
    pub fn new(
        source: PrecubicalSet,
        target: PrecubicalSet,
        data: &SubdivisionData,
    ) -> Result<Self, SubdivisionError> {
        let p = &source;
        let q = &target;
        for name in data.vertex_map.keys() {
            let v = p.lookup(name)?;
            if p.degree(v) != 0 {
                return Err(CubicalError::NotAVertex(name.clone()).into());
            }
        }
        for name in data.cubes.keys() {
            let x = p.lookup(name)?;
            if p.degree(x) == 0 {
                return Err(SubdivisionError::UnexpectedCube(name.clone()));
            }
        }

        // Shapes.
        let mut shapes = Vec::with_capacity(p.len());
        for x in p.ids() {
            let n = p.degree(x);
            let name = p.name(x);
            let shape = if n == 0 {
                GridShape::new(Vec::new())
            } else {
                let cells = data
                    .cubes
                    .get(name)
                    .ok_or_else(|| SubdivisionError::MissingCube(name.to_string()))?;
                if cells.shape.len() != n || cells.shape.contains(&0) {
                    return Err(SubdivisionError::BadShape {
                        cube: name.to_string(),
                        degree: n,
                        found: cells.shape.len(),
                    });
                }
                GridShape::new(cells.shape.clone())
            };
            shapes.push(shape);
        }
        for x in p.ids() {
            for i in 1..=p.degree(x) {
                for k in 0..2u8 {
                    let y = p.face(x, i, k);
                    if shapes[y.index()] != shapes[x.index()].remove_axis(i - 1) {
                        return Err(SubdivisionError::FaceShapeMismatch {
                            cube: p.name(x).to_string(),
                            axis: i,
                            side: k,
                        });
                    }
                }
            }
        }

        // Cell maps are total.
        let mut maps = Vec::with_capacity(p.len());
        for (x, shape) in p.ids().zip(shapes) {
            let name = p.name(x);
            let cells = if p.degree(x) == 0 {
                let image = data
                    .vertex_map
                    .get(name)
                    .ok_or_else(|| SubdivisionError::MissingVertex(name.to_string()))?;
                let v = q.lookup(image)?;
                if q.degree(v) != 0 {
                    return Err(CubicalError::NotAVertex(image.clone()).into());
                }
                vec![v]
            } else {
                let given = &data.cubes[name].cells;
                let mut slots = vec![None; shape.cell_count()];
                for (key, image) in given {
                    let cell: GridCell = key.parse().map_err(|_| SubdivisionError::BadCell {
                        cube: name.to_string(),
                        key: key.clone(),
                    })?;
                    if !shape.contains(&cell) {
                        return Err(SubdivisionError::BadCell {
                            cube: name.to_string(),
                            key: key.clone(),
                        });
                    }
                    slots[shape.index_of(&cell)] = Some(q.lookup(image)?);
                }
                slots
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.ok_or_else(|| SubdivisionError::MissingCell {
                            cube: name.to_string(),
                            key: shape.cell_at(i).key(),
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            maps.push(CellMap { shape, cells });
        }

        let mut f = SubdivisionMorphism {
            source,
            target,
            maps,
            carriers: Vec::new(),
        };
        f.check_morphisms()?;
        f.check_faces()?;
        f.carriers = f.partition()?;
        Ok(f)
    }

    /// Each `x_♭` commutes with the boundary operators.
    fn check_morphisms(&self) -> Result<(), SubdivisionError> {
        let (p, q) = (&self.source, &self.target);
        for x in p.ids() {
            let map = &self.maps[x.index()];
            for cell in map.shape.cells() {
                let y = self.cell(x, &cell);
                let m = cell.degree();
                let ok = q.degree(y) == m
                    && (1..=m).all(|i| {
                        (0..2u8).all(|k| q.face(y, i, k) == self.cell(x, &cell.face(i, k)))
                    });
                if !ok {
                    return Err(SubdivisionError::NotGridMorphism {
                        cube: p.name(x).to_string(),
                        key: cell.key(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `x_♭` restricted to a face of `R_x` is the face's own map.
    fn check_faces(&self) -> Result<(), SubdivisionError> {
        let p = &self.source;
        for x in p.ids() {
            let n = p.degree(x);
            let lengths = self.maps[x.index()].shape.lengths().to_vec();
            for i in 1..=n {
                for k in 0..2u8 {
                    let y = p.face(x, i, k);
                    let at = if k == 0 { 0 } else { lengths[i - 1] };
                    for cell in self.maps[y.index()].shape.cells() {
                        if self.cell(x, &cell.insert_point(i - 1, at)) != self.cell(y, &cell) {
                            return Err(if n == 1 {
                                SubdivisionError::EdgeEndpointMismatch {
                                    edge: p.name(x).to_string(),
                                    side: k,
                                }
                            } else {
                                SubdivisionError::FaceMapMismatch {
                                    cube: p.name(x).to_string(),
                                    axis: i,
                                    side: k,
                                    key: cell.key(),
                                }
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The interior images partition `Q`; returns the carrier table.
    fn partition(&self) -> Result<Vec<(CubeId, GridCell)>, SubdivisionError> {
        let (p, q) = (&self.source, &self.target);
        let mut owner: Vec<Option<(CubeId, GridCell)>> = vec![None; q.len()];
        for x in p.ids() {
            let map = &self.maps[x.index()];
            for cell in map.shape.interior_cells() {
                let a = self.cell(x, &cell);
                if let Some((first, _)) = &owner[a.index()] {
                    return Err(SubdivisionError::InteriorCollision {
                        cell: q.name(a).to_string(),
                        first: p.name(*first).to_string(),
                        second: p.name(x).to_string(),
                    });
                }
                owner[a.index()] = Some((x, cell));
            }
        }
        owner
            .into_iter()
            .enumerate()
            .map(|(a, o)| {
                o.ok_or_else(|| {
                    SubdivisionError::Uncovered(q.name(CubeId::from_index(a)).to_string())
                })
            })
            .collect()
    }

    /// The identity subdivision of `P`.
    pub fn identity(complex: &PrecubicalSet) -> Self {
        subdivide(complex, &BTreeMap::new())
            .map(|(_, f)| f)
            .expect("unit counts are always consistent")
    }

    pub fn source(&self) -> &PrecubicalSet {
        &self.source
    }

    pub fn target(&self) -> &PrecubicalSet {
        &self.target
    }

    /// `f_0(v)`.
    pub fn vertex_image(&self, v: CubeId) -> CubeId {
        debug_assert_eq!(self.source.degree(v), 0);
        self.maps[v.index()].cells[0]
    }

    pub fn shape(&self, x: CubeId) -> &GridShape {
        &self.maps[x.index()].shape
    }

    /// `x_♭(cell)`.
    pub fn cell(&self, x: CubeId, cell: &GridCell) -> CubeId {
        let map = &self.maps[x.index()];
        map.cells[map.shape.index_of(cell)]
    }

    /// `c_f(a)`.
    pub fn carrier(&self, a: CubeId) -> CubeId {
        self.carriers[a.index()].0
    }

    /// `c_f(a)` together with the interior cell of `R_{c(a)}` mapped to `a`.
    pub fn carrier_cell(&self, a: CubeId) -> (CubeId, &GridCell) {
        let (x, cell) = &self.carriers[a.index()];
        (*x, cell)
    }

    /// Carrier of a cell of `R_x` computed inside `x`: walk to the face of
    /// `x` whose interior contains the cell.
    pub fn local_carrier(&self, x: CubeId, cell: &GridCell) -> (CubeId, GridCell) {
        let shape = self.shape(x);
        match cell.boundary_axes(shape).next() {
            None => (x, cell.clone()),
            Some((axis, side)) => {
                self.local_carrier(self.source.face(x, axis + 1, side), &cell.remove_axis(axis))
            }
        }
    }

    /// `c_f(A) = ⋃_{a ∈ A} closure(c(a))`.
    pub fn carrier_complex<'p>(&'p self, subset: &PrecubicalSubset<'_>) -> PrecubicalSubset<'p> {
        debug_assert!(subset.parent() == &self.target);
        self.source.closure(subset.iter().map(|a| self.carrier(a)))
    }

    /// `f(X) = f_0(X_0) ∪ ⋃_{x ∈ X} x_♭(R_x)`.
    pub fn image_subset<'q>(&'q self, subset: &PrecubicalSubset<'_>) -> PrecubicalSubset<'q> {
        debug_assert!(subset.parent() == &self.source);
        let ids = subset
            .iter()
            .flat_map(|x| self.maps[x.index()].cells.iter().copied())
            .collect::<Vec<_>>();
        PrecubicalSubset::from_ids(&self.target, ids).expect("images of subsets are closed")
    }

    /// `f^𝕀(ω)`: each edge `x` of shape `(l)` becomes `x_♭(0 → 1 → … → l)`.
    pub fn map_path(&self, path: &Path) -> Path {
        let edges: Vec<CubeId> = path
            .edges()
            .iter()
            .flat_map(|&x| {
                let l = self.shape(x).lengths()[0];
                (0..l).map(move |j| self.cell(x, &GridCell::new([GridCoord::Interval(j)])))
            })
            .collect();
        if edges.is_empty() {
            Path::constant(&self.target, self.vertex_image(path.source()))
        } else {
            Path::from_edges(&self.target, edges)
        }
        .expect("images of paths are paths")
    }

    /// `L(a) = c(a)_♯(0,…,0)`.
    pub fn lift_vertex(&self, a: CubeId) -> CubeId {
        self.source.min_corner(self.carrier(a))
    }

    /// A path in `P` from `L(a)` to `L(b)` where `a`, `b` are the endpoints of
    /// `ω`. A target edge inside `x` along axis `i` contributes the edge of
    /// `x` along that axis exactly when it ends on the upper face `d_i^1 x`.
    pub fn lift_path(&self, path: &Path) -> Path {
        let p = &self.source;
        let mut edges = Vec::new();
        for &a in path.edges() {
            let (x, cell) = self.carrier_cell(a);
            let axis = cell.interval_axis(1);
            let GridCoord::Interval(j) = cell.coord(axis) else {
                unreachable!()
            };
            if j + 1 == self.shape(x).lengths()[axis] {
                let corner = GridCell::new((0..cell.dim()).map(|t| {
                    if t == axis {
                        GridCoord::Interval(0)
                    } else {
                        GridCoord::Point(0)
                    }
                }));
                edges.push(p.sharp(x, &corner));
            }
        }
        if edges.is_empty() {
            Path::constant(p, self.lift_vertex(path.source()))
        } else {
            Path::from_edges(p, edges)
        }
        .expect("lifted edges chain")
    }

    /// The chain map `M_n`: column `x` is the sum of the `n`-cells of `x_♭(R_x)`.
    pub fn chain_map(&self, n: usize) -> IntMatrix {
        let (p, q) = (&self.source, &self.target);
        let mut m = IntMatrix::zeros(q.count(n), p.count(n));
        for x in p.cubes_of_degree(n) {
            let map = &self.maps[x.index()];
            for cell in map.shape.cells().filter(|c| c.degree() == n) {
                let a = self.cell(x, &cell);
                *m.entry_mut(q.position(a), p.position(x)) += 1;
            }
        }
        m
    }

    /// `f_*(α)`.
    pub fn pushforward_class(&self, class: &HomologyClass) -> Result<HomologyClass, SubdivisionError> {
        class.check_shape(&self.source)?;
        let n = class.degree();
        let v = if self.target.count(n) == 0 {
            Vec::new()
        } else {
            self.chain_map(n).mul_vec(class.vector())
        };
        Ok(HomologyClass::new(n, v))
    }

    /// Serializable form.
    pub fn to_data(&self) -> SubdivisionData {
        let (p, q) = (&self.source, &self.target);
        let vertex_map = p
            .vertices()
            .map(|v| (p.name(v).to_string(), q.name(self.vertex_image(v)).to_string()))
            .collect();
        let cubes = p
            .ids()
            .filter(|&x| p.degree(x) > 0)
            .map(|x| {
                let map = &self.maps[x.index()];
                let cells = map
                    .shape
                    .cells()
                    .zip(&map.cells)
                    .map(|(c, &a)| (c.key(), q.name(a).to_string()))
                    .collect();
                (
                    p.name(x).to_string(),
                    CubeCells {
                        shape: map.shape.lengths().to_vec(),
                        cells,
                    },
                )
            })
            .collect();
        SubdivisionData { vertex_map, cubes }
    }
}

/// Edge of `x` along `axis` (0-based) at the given corner of the other axes.
fn axis_edge(p: &PrecubicalSet, x: CubeId, axis: usize, corner: usize) -> CubeId {
    let n = p.degree(x);
    let mut bit = 0;
    let cell = GridCell::new((0..n).map(|t| {
        if t == axis {
            GridCoord::Interval(0)
        } else {
            let c = (corner >> bit) & 1;
            bit += 1;
            GridCoord::Point(c as u32)
        }
    }));
    p.sharp(x, &cell)
}

/// Subdivides every edge `e` into `counts[e]` pieces (default 1) and every
/// cube into the induced grid. An interior cell of `R_x` is named `x@key`,
/// or just `x` when `x` is not subdivided.
pub fn subdivide(
    p: &PrecubicalSet,
    counts: &BTreeMap<String, u32>,
) -> Result<(PrecubicalSet, SubdivisionMorphism), SubdivisionError> {
    subdivide_with_limit(p, counts, DEFAULT_CUBE_LIMIT)
}

pub fn subdivide_with_limit(
    p: &PrecubicalSet,
    counts: &BTreeMap<String, u32>,
    limit: usize,
) -> Result<(PrecubicalSet, SubdivisionMorphism), SubdivisionError> {
    for (name, &c) in counts {
        let e = p.lookup(name)?;
        if p.degree(e) != 1 {
            return Err(CubicalError::NotAnEdge(name.clone()).into());
        }
        if c == 0 {
            return Err(SubdivisionError::ZeroCount(name.clone()));
        }
    }
    let count = |e: CubeId| counts.get(p.name(e)).copied().unwrap_or(1);
    let mut shapes = Vec::with_capacity(p.len());
    for x in p.ids() {
        let n = p.degree(x);
        let mut lengths = Vec::with_capacity(n);
        for axis in 0..n {
            let l = count(axis_edge(p, x, axis, 0));
            if (1..1usize << (n - 1)).any(|c| count(axis_edge(p, x, axis, c)) != l) {
                return Err(SubdivisionError::InconsistentCounts {
                    cube: p.name(x).to_string(),
                    axis: axis + 1,
                });
            }
            lengths.push(l);
        }
        shapes.push(GridShape::new(lengths));
    }

    let resolve = |x: CubeId, cell: &GridCell| -> String {
        let (mut x, mut cell) = (x, cell.clone());
        loop {
            let Some((axis, side)) = cell.boundary_axes(&shapes[x.index()]).next() else {
                break;
            };
            x = p.face(x, axis + 1, side);
            cell = cell.remove_axis(axis);
        }
        if shapes[x.index()].lengths().iter().all(|&l| l == 1) {
            p.name(x).to_string()
        } else {
            format!("{}@{}", p.name(x), cell.key())
        }
    };

    let total: usize = p
        .ids()
        .map(|x| shapes[x.index()].interior_cells().count())
        .sum();
    if total > limit {
        return Err(CubicalError::TooLarge {
            count: total,
            limit,
        }
        .into());
    }
    let mut b = PrecubicalBuilder::new().with_limit(limit);
    let mut data = SubdivisionData::default();
    for x in p.ids() {
        let shape = &shapes[x.index()];
        for cell in shape.interior_cells() {
            let m = cell.degree();
            let d0: Vec<String> = (1..=m).map(|i| resolve(x, &cell.face(i, 0))).collect();
            let d1: Vec<String> = (1..=m).map(|i| resolve(x, &cell.face(i, 1))).collect();
            b = b.cube(resolve(x, &cell), d0, d1);
        }
        if p.degree(x) == 0 {
            data.vertex_map
                .insert(p.name(x).to_string(), p.name(x).to_string());
        } else {
            let cells = shape.cells().map(|c| (c.key(), resolve(x, &c))).collect();
            data.cubes.insert(
                p.name(x).to_string(),
                CubeCells {
                    shape: shape.lengths().to_vec(),
                    cells,
                },
            );
        }
    }
    let q = b.build()?;
    let f = SubdivisionMorphism::new(p.clone(), q.clone(), &data)?;
    Ok((q, f))
}

/// Subdivides an HDA. A target edge interior to `x` along axis `i`, in
/// interval `j`, is labelled by piece `j` of the even split of the label of
/// `x`'s edges along axis `i`.
pub fn subdivide_hda(
    a: &Hda<Word>,
    counts: &BTreeMap<String, u32>,
) -> Result<(Hda<Word>, SubdivisionMorphism), SubdivisionError> {
    let p = a.complex();
    let (q, f) = subdivide(p, counts)?;
    let mut labels = Vec::new();
    for e in q.edges() {
        let (x, cell) = f.carrier_cell(e);
        let axis = cell.interval_axis(1);
        let GridCoord::Interval(j) = cell.coord(axis) else {
            unreachable!()
        };
        let l = f.shape(x).lengths()[axis];
        let word = a.label(axis_edge(p, x, axis, 0)).split_even(l as usize);
        labels.push((q.name(e).to_string(), word[j as usize].clone()));
    }
    let names = |ids: &[CubeId]| -> Vec<String> {
        ids.iter()
            .map(|&v| q.name(f.vertex_image(v)).to_string())
            .collect()
    };
    let (initial, finals) = (names(a.initial()), names(a.finals()));
    let b = Hda::new(
        q.clone(),
        initial.iter().map(String::as_str),
        finals.iter().map(String::as_str),
        labels.iter().map(|(n, l)| (n.as_str(), l.clone())),
    )?;
    Ok((b, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbstractionError {
    #[error("the morphism's source is not the complex of the abstract HDA")]
    SourceMismatch,
    #[error("the morphism's target is not the complex of the concrete HDA")]
    TargetMismatch,
    #[error("f_0 maps the initial states to {found:?}, expected {expected:?}")]
    InitialMismatch {
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("f_0 maps the final states to {found:?}, expected {expected:?}")]
    FinalMismatch {
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("edge `{edge}` is labelled {expected} but its image reads {found}")]
    LabelMismatch {
        edge: String,
        expected: String,
        found: String,
    },
}

/// Checks that `f: A → B` is a homeomorphic abstraction: `f_0(I) = J`,
/// `f_0(F) = G`, and `μ̄(f^𝕀(x)) = λ(x)` on every edge.
pub fn check_abstraction<L: Monoid>(
    f: &SubdivisionMorphism,
    a: &Hda<L>,
    b: &Hda<L>,
) -> Result<(), AbstractionError> {
    if a.complex() != f.source() {
        return Err(AbstractionError::SourceMismatch);
    }
    if b.complex() != f.target() {
        return Err(AbstractionError::TargetMismatch);
    }
    let q = f.target();
    let names = |ids: &mut dyn Iterator<Item = CubeId>| -> Vec<String> {
        ids.map(|v| q.name(v).to_string())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    };
    let check = |src: &[CubeId], dst: &[CubeId]| -> Option<(Vec<String>, Vec<String>)> {
        let found = names(&mut src.iter().map(|&v| f.vertex_image(v)));
        let expected = names(&mut dst.iter().copied());
        (found != expected).then_some((expected, found))
    };
    if let Some((expected, found)) = check(a.initial(), b.initial()) {
        return Err(AbstractionError::InitialMismatch { expected, found });
    }
    if let Some((expected, found)) = check(a.finals(), b.finals()) {
        return Err(AbstractionError::FinalMismatch { expected, found });
    }
    let p = f.source();
    for e in p.edges() {
        let path = Path::from_edges(p, vec![e]).expect("an edge is a path");
        let found = b.path_label(&f.map_path(&path));
        if &found != a.label(e) {
            return Err(AbstractionError::LabelMismatch {
                edge: p.name(e).to_string(),
                expected: format!("{:?}", a.label(e)),
                found: format!("{found:?}"),
            });
        }
    }
    Ok(())
}

/// Whether `M_{n-1} ∂^P_n = ∂^Q_n M_n` for every `n`.
pub fn is_chain_map(f: &SubdivisionMorphism) -> bool {
    use crate::homology::boundary_matrix;
    (1..=f.source().dimension()).all(|n| {
        let (p, q) = (f.source(), f.target());
        let left = &f.chain_map(n - 1) * &boundary_matrix(p, n);
        let right = &boundary_matrix(q, n) * &f.chain_map(n);
        left == right
    })
}

/// Number of `n`-cubes in each grid `R_x`, summed: `|Q_n|` predicted from the
/// shapes alone.
pub fn predicted_counts(f: &SubdivisionMorphism) -> Vec<usize> {
    let p = f.source();
    let mut out = vec![0; p.dimension() + 1];
    for x in p.ids() {
        for c in f.shape(x).interior_cells() {
            out[c.degree()] += 1;
        }
    }
    out
}
