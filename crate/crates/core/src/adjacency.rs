//! Graph-based digital images, (a,b)-adjacency and topological analogs.
//!
//! Points of an n-dimensional box are adjacent under index `a` when they are
//! close (every coordinate differs by at most 1) and their squared distance
//! is at most `a`. A topological analog assigns every cell of the box's
//! Cartesian complex to `T` or `K` so that closures of foreground (resp.
//! background) principal cells reproduce the a- (resp. b-) connectivity.

mod solver;

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cartesian::{CartesianComplex, CartesianError, Cell};
use crate::space::{LfSpace, SubsetMask};
use solver::{Clause, Problem, Solution};

/// Images with at most this many points get the exhaustive subset check in
/// [`verify_analog`].
pub const EXHAUSTIVE_ANALOG_LIMIT: usize = 12;

/// Default point bound for full mask enumeration in [`exhaustive_pair_check`].
pub const DEFAULT_PAIR_CHECK_POINTS: usize = 9;

pub type Point = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjacencyError {
    #[error("points have different dimensions ({0} and {1})")]
    DimensionMismatch(usize, usize),
    #[error("adjacency index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("image needs at least one axis and non-zero extents")]
    EmptyImage,
    #[error("mask has {got} entries, image has {expected} points")]
    MaskLength { got: usize, expected: usize },
    #[error("point {0:?} lies outside the image")]
    OutOfRange(Point),
    #[error("hollow cubes need m >= 3, got {0}")]
    CubeTooSmall(usize),
    #[error("{points} points exceed the enumeration bound {bound}; enable sampling")]
    BoundExceeded { points: usize, bound: usize },
    #[error("topological image does not match the digital image")]
    ShapeMismatch,
    #[error(transparent)]
    Cartesian(#[from] CartesianError),
}

/// Box of points with a foreground mask; point index is x fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitalImage {
    dims: Vec<usize>,
    tr: Vec<bool>,
}

impl DigitalImage {
    pub fn new(dims: Vec<usize>, tr: Vec<bool>) -> Result<Self, AdjacencyError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(AdjacencyError::EmptyImage);
        }
        let expected = dims.iter().product();
        if tr.len() != expected {
            return Err(AdjacencyError::MaskLength {
                got: tr.len(),
                expected,
            });
        }
        Ok(Self { dims, tr })
    }

    pub fn empty(dims: Vec<usize>) -> Result<Self, AdjacencyError> {
        let len = dims.iter().product();
        Self::new(dims, vec![false; len])
    }

    pub fn from_points(dims: Vec<usize>, points: &[Point]) -> Result<Self, AdjacencyError> {
        let mut img = Self::empty(dims)?;
        for p in points {
            let i = img
                .index(p)
                .ok_or_else(|| AdjacencyError::OutOfRange(p.clone()))?;
            img.tr[i] = true;
        }
        Ok(img)
    }

    /// Bit `i` of `word` sets point `i`.
    pub fn from_word(dims: Vec<usize>, word: u64) -> Result<Self, AdjacencyError> {
        let len: usize = dims.iter().product();
        Self::new(
            dims,
            (0..len).map(|i| i < 64 && word >> i & 1 == 1).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.tr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tr.is_empty()
    }

    pub fn mask(&self) -> &[bool] {
        &self.tr
    }

    pub fn is_foreground(&self, index: usize) -> bool {
        self.tr[index]
    }

    pub fn foreground_count(&self) -> usize {
        self.tr.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            tr: self.tr.iter().map(|b| !b).collect(),
        }
    }

    pub fn index(&self, p: &[usize]) -> Option<usize> {
        if p.len() != self.n() || p.iter().zip(&self.dims).any(|(x, d)| x >= d) {
            return None;
        }
        let mut i = 0;
        for (x, d) in p.iter().zip(&self.dims).rev() {
            i = i * d + x;
        }
        Some(i)
    }

    pub fn point(&self, mut index: usize) -> Point {
        self.dims
            .iter()
            .map(|d| {
                let x = index % d;
                index /= d;
                x
            })
            .collect()
    }

    /// Point indices of the mask bits, ascending.
    pub fn foreground_points(&self) -> Vec<Point> {
        (0..self.len())
            .filter(|&i| self.tr[i])
            .map(|i| self.point(i))
            .collect()
    }

    /// Indices of points `q = p + δ` within the box for each offset.
    fn shifted(&self, p: &[usize], offsets: &[Vec<i64>]) -> Vec<usize> {
        offsets
            .iter()
            .filter_map(|d| {
                let q: Option<Point> = p
                    .iter()
                    .zip(d)
                    .zip(&self.dims)
                    .map(|((&x, &dx), &ext)| {
                        let y = x as i64 + dx;
                        (0..ext as i64).contains(&y).then_some(y as usize)
                    })
                    .collect();
                q.and_then(|q| self.index(&q))
            })
            .collect()
    }
}

impl fmt::Display for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .foreground_points()
            .iter()
            .map(|p| format!("{p:?}"))
            .collect();
        write!(f, "{:?} {{{}}}", self.dims, pts.join(", "))
    }
}

fn check_index(index: usize, n: usize) -> Result<(), AdjacencyError> {
    if (1..=n).contains(&index) {
        Ok(())
    } else {
        Err(AdjacencyError::IndexOutOfRange { index, n })
    }
}

/// Non-zero offsets in `{-1,0,1}^n` with at most `max_nonzero` non-zeros.
pub fn offsets(n: usize, max_nonzero: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let d: Vec<i64> = (0..n)
            .map(|_| {
                let v = (c % 3) as i64 - 1;
                c /= 3;
                v
            })
            .collect();
        let nz = d.iter().filter(|&&v| v != 0).count();
        if nz > 0 && nz <= max_nonzero {
            out.push(d);
        }
    }
    out
}

fn squared_distance(p: &[usize], q: &[usize]) -> usize {
    p.iter().zip(q).map(|(a, b)| a.abs_diff(*b).pow(2)).sum()
}

fn close(p: &[usize], q: &[usize]) -> bool {
    p.iter().zip(q).all(|(a, b)| a.abs_diff(*b) <= 1)
}

/// Distinct, close, and `d² ≤ a`.
pub fn a_adjacent(p: &[usize], q: &[usize], a: usize) -> Result<bool, AdjacencyError> {
    if p.len() != q.len() {
        return Err(AdjacencyError::DimensionMismatch(p.len(), q.len()));
    }
    Ok(p != q && close(p, q) && squared_distance(p, q) <= a)
}

/// Maximal a-connected subsets of the foreground (or background), each
/// listed in point order, components ordered by their first point.
pub fn a_components(
    img: &DigitalImage,
    a: usize,
    of_foreground: bool,
) -> Result<Vec<Vec<Point>>, AdjacencyError> {
    check_index(a, img.n())?;
    Ok(index_components(img, a, of_foreground)
        .into_iter()
        .map(|c| c.into_iter().map(|i| img.point(i)).collect())
        .collect())
}

pub(crate) fn index_components(
    img: &DigitalImage,
    a: usize,
    of_foreground: bool,
) -> Vec<Vec<usize>> {
    let offs = offsets(img.n(), a);
    let mut seen = vec![false; img.len()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..img.len() {
        if seen[start] || img.tr[start] != of_foreground {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(i) = queue.pop_front() {
            comp.push(i);
            for j in img.shifted(&img.point(i), &offs) {
                if !seen[j] && img.tr[j] == of_foreground {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyVerdict {
    pub consistent: bool,
    pub face_convex_consistent: bool,
    /// First mask without an analog.
    pub witness: Option<DigitalImage>,
    /// First mask without a face-convex analog.
    pub face_convex_witness: Option<DigitalImage>,
    /// Why the witness has no analog.
    pub certificate: Option<UnsatCertificate>,
    pub masks_checked: usize,
}

/// Closed-form verdict: consistent iff `a ≠ b` and one index equals `n`;
/// face-convex iff `{a, b} = {1, n}`. In one dimension the only pair (1,1)
/// has no diagonal neighbors, so it is consistent.
pub fn predicted_consistency(
    n: usize,
    a: usize,
    b: usize,
) -> Result<ConsistencyVerdict, AdjacencyError> {
    check_index(a, n)?;
    check_index(b, n)?;
    let (consistent, face_convex) = if n == 1 {
        (true, true)
    } else {
        (
            a != b && (a == n || b == n),
            (a == n && b == 1) || (a == 1 && b == n),
        )
    };
    Ok(ConsistencyVerdict {
        consistent,
        face_convex_consistent: face_convex,
        witness: None,
        face_convex_witness: None,
        certificate: None,
        masks_checked: 0,
    })
}

/// What a close same-subset pair demands of its intermediate complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demand {
    /// At least one IC cell on the pair's own side.
    AnyCell,
    /// The intermediate cell itself on the pair's own side.
    IntermediateCell,
    /// The whole IC on the opposite side.
    WholeComplexOpposite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConstraint {
    pub p: Point,
    pub q: Point,
    pub foreground: bool,
    pub squared_distance: usize,
    pub intermediate: Cell,
    pub demand: Demand,
}

impl PairConstraint {
    /// Side (`true` = T) the demand pushes cells to.
    pub fn target_in_t(&self) -> bool {
        match self.demand {
            Demand::AnyCell | Demand::IntermediateCell => self.foreground,
            Demand::WholeComplexOpposite => !self.foreground,
        }
    }
}

impl fmt::Display for PairConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.foreground { "TR" } else { "KR" };
        let target = if self.target_in_t() { "T" } else { "K" };
        let what = match self.demand {
            Demand::AnyCell => format!("some cell of Cl({}) in {target}", self.intermediate),
            Demand::IntermediateCell => format!("{} in {target}", self.intermediate),
            Demand::WholeComplexOpposite => format!("Cl({}) in {target}", self.intermediate),
        };
        write!(
            f,
            "{side} pair {:?}-{:?} (d²={}): {what}",
            self.p, self.q, self.squared_distance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsatCertificate {
    pub cell: Cell,
    pub first: PairConstraint,
    pub second: Option<PairConstraint>,
}

impl fmt::Display for UnsatCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell {}: {}", self.cell, self.first)?;
        if let Some(second) = &self.second {
            write!(f, " vs {second}")?;
        }
        Ok(())
    }
}

/// Cartesian complex with a `T` membership flag per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalImage {
    complex: CartesianComplex,
    t: Vec<bool>,
}

impl TopologicalImage {
    pub fn new(complex: CartesianComplex, t: Vec<bool>) -> Result<Self, AdjacencyError> {
        if t.len() != complex.cell_count() {
            return Err(AdjacencyError::MaskLength {
                got: t.len(),
                expected: complex.cell_count(),
            });
        }
        Ok(Self { complex, t })
    }

    pub fn complex(&self) -> &CartesianComplex {
        &self.complex
    }

    pub fn membership(&self) -> &[bool] {
        &self.t
    }

    pub fn in_t(&self, c: &Cell) -> Result<bool, AdjacencyError> {
        Ok(self.t[self.complex.index_of(c)?])
    }

    pub fn cells_in_t(&self) -> Vec<Cell> {
        (0..self.t.len())
            .filter(|&i| self.t[i])
            .map(|i| self.complex.cell_at(i))
            .collect()
    }

    pub fn t_mask(&self) -> SubsetMask {
        SubsetMask::from_bools(self.t.clone())
    }

    /// Whether principal memberships reproduce the image's foreground.
    pub fn corresponds_to(&self, img: &DigitalImage) -> bool {
        self.complex.pixel_dims() == img.dims()
            && (0..img.len()).all(|i| {
                let c = Cell::principal_of(&img.point(i));
                self.t[self.complex.index_unchecked(&c.comb)] == img.tr[i]
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalogOutcome {
    Analog(TopologicalImage),
    Unsat(UnsatCertificate),
}

impl AnalogOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Self::Analog(_))
    }

    pub fn analog(&self) -> Option<&TopologicalImage> {
        match self {
            Self::Analog(t) => Some(t),
            Self::Unsat(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&UnsatCertificate> {
        match self {
            Self::Analog(_) => None,
            Self::Unsat(c) => Some(c),
        }
    }
}

/// Every close same-subset pair with its demand, in point order.
pub fn pair_constraints(
    img: &DigitalImage,
    a: usize,
    b: usize,
    face_convex: bool,
) -> Result<Vec<PairConstraint>, AdjacencyError> {
    check_index(a, img.n())?;
    check_index(b, img.n())?;
    let all = offsets(img.n(), img.n());
    let mut out = Vec::new();
    for i in 0..img.len() {
        let p = img.point(i);
        for j in img.shifted(&p, &all) {
            if j <= i || img.tr[i] != img.tr[j] {
                continue;
            }
            let q = img.point(j);
            let d2 = squared_distance(&p, &q);
            let foreground = img.tr[i];
            let index = if foreground { a } else { b };
            let demand = match (d2 <= index, face_convex) {
                (true, false) => Demand::AnyCell,
                (true, true) => Demand::IntermediateCell,
                (false, _) => Demand::WholeComplexOpposite,
            };
            let intermediate = Cell::new(p.iter().zip(&q).map(|(x, y)| x + y).collect());
            out.push(PairConstraint {
                p: p.clone(),
                q,
                foreground,
                squared_distance: d2,
                intermediate,
                demand,
            });
        }
    }
    Ok(out)
}

/// Assigns every non-principal cell to `T` or `K` so that all pair demands
/// hold, or explains why no such assignment exists.
///
/// Unconstrained cells go to `K`. In face-convex mode with `a = n`, faces of
/// foreground principal cells go to `T` instead, so the foreground closure
/// is complete.
pub fn build_analog(
    img: &DigitalImage,
    a: usize,
    b: usize,
    face_convex: bool,
) -> Result<AnalogOutcome, AdjacencyError> {
    let complex = CartesianComplex::new(img.dims())?;
    let constraints = pair_constraints(img, a, b, face_convex)?;
    let mut defaults = vec![false; complex.cell_count()];
    let mut fixed = vec![false; complex.cell_count()];
    for i in 0..img.len() {
        let cell = Cell::principal_of(&img.point(i));
        let ci = complex.index_unchecked(&cell.comb);
        defaults[ci] = img.tr[i];
        fixed[ci] = true;
        if face_convex && a == img.n() && img.tr[i] {
            for face in complex.closure_unchecked(&cell.comb) {
                let fi = complex.index_unchecked(&face.comb);
                if !fixed[fi] {
                    defaults[fi] = true;
                }
            }
        }
    }
    let mut clauses = Vec::new();
    for (k, con) in constraints.iter().enumerate() {
        let ic: Vec<usize> = complex
            .closure_unchecked(&con.intermediate.comb)
            .iter()
            .map(|c| complex.index_unchecked(&c.comb))
            .collect();
        let value = con.target_in_t();
        match con.demand {
            Demand::AnyCell => clauses.push(Clause {
                vars: ic,
                value,
                origin: k,
            }),
            Demand::IntermediateCell => clauses.push(Clause {
                vars: vec![complex.index_unchecked(&con.intermediate.comb)],
                value,
                origin: k,
            }),
            Demand::WholeComplexOpposite => clauses.extend(ic.into_iter().map(|v| Clause {
                vars: vec![v],
                value,
                origin: k,
            })),
        }
    }
    match Problem::new(defaults, clauses).solve() {
        Solution::Sat(t) => Ok(AnalogOutcome::Analog(TopologicalImage { complex, t })),
        Solution::Unsat(conflict) => Ok(AnalogOutcome::Unsat(UnsatCertificate {
            cell: complex.cell_at(conflict.var),
            first: constraints[conflict.violated].clone(),
            second: conflict.forced_by.map(|k| constraints[k].clone()),
        })),
    }
}

/// Connectivity of `Cl({V1, V2}, side)` by incidence among its cells.
fn pair_closure_connected(
    complex: &CartesianComplex,
    t: &[bool],
    side: bool,
    v1: &Cell,
    v2: &Cell,
) -> bool {
    let mut cells: Vec<Cell> = Vec::new();
    for v in [v1, v2] {
        for c in complex.closure_unchecked(&v.comb) {
            if t[complex.index_unchecked(&c.comb)] == side && !cells.contains(&c) {
                cells.push(c);
            }
        }
    }
    let incident = |x: &Cell, y: &Cell| {
        complex.is_face(x, y).unwrap_or(false) || complex.is_face(y, x).unwrap_or(false)
    };
    let mut reached = vec![false; cells.len()];
    let start = cells
        .iter()
        .position(|c| c == v1)
        .expect("principal cell on its side");
    reached[start] = true;
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        for j in 0..cells.len() {
            if !reached[j] && incident(&cells[i], &cells[j]) {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    // every cell is a face of V1 or V2, so the set is connected iff V2 is reached
    let target = cells
        .iter()
        .position(|c| c == v2)
        .expect("principal cell on its side");
    reached[target]
}

/// Checks that `topo` is an analog of `img` under `(a, b)`.
///
/// The pairwise route checks that for every close foreground pair
/// `Cl({V1,V2}, T)` is connected exactly when the pair is a-adjacent, and
/// likewise for the background with `K` and `b`. With `exhaustive` and at
/// most [`EXHAUSTIVE_ANALOG_LIMIT`] points, every subset of `TR` and `KR` is
/// also checked against the closure components in the derived space.
pub fn verify_analog(
    img: &DigitalImage,
    a: usize,
    b: usize,
    topo: &TopologicalImage,
    exhaustive: bool,
) -> Result<bool, AdjacencyError> {
    check_index(a, img.n())?;
    check_index(b, img.n())?;
    if !topo.corresponds_to(img) {
        return Err(AdjacencyError::ShapeMismatch);
    }
    let complex = &topo.complex;
    let all = offsets(img.n(), img.n());
    for i in 0..img.len() {
        let p = img.point(i);
        for j in img.shifted(&p, &all) {
            if j <= i || img.tr[i] != img.tr[j] {
                continue;
            }
            let q = img.point(j);
            let side = img.tr[i];
            let index = if side { a } else { b };
            let connected = pair_closure_connected(
                complex,
                &topo.t,
                side,
                &Cell::principal_of(&p),
                &Cell::principal_of(&q),
            );
            if connected != (squared_distance(&p, &q) <= index) {
                return Ok(false);
            }
        }
    }
    if exhaustive && img.len() <= EXHAUSTIVE_ANALOG_LIMIT {
        let space = complex.to_lf_space()?;
        for side in [true, false] {
            if !subsets_match(img, &space, topo, side, if side { a } else { b }) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every non-empty subset of one side: its pixels are index-connected
/// exactly when the closure of their principals, cut to that side, is
/// connected.
fn subsets_match(
    img: &DigitalImage,
    space: &LfSpace,
    topo: &TopologicalImage,
    side: bool,
    index: usize,
) -> bool {
    let complex = &topo.complex;
    let members: Vec<usize> = (0..img.len()).filter(|&i| img.tr[i] == side).collect();
    for word in 1u64..(1u64 << members.len()) {
        let chosen: Vec<usize> = members
            .iter()
            .enumerate()
            .filter(|(k, _)| word >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let mut sub = vec![false; img.len()];
        for &i in &chosen {
            sub[i] = true;
        }
        let sub_img = DigitalImage {
            dims: img.dims.clone(),
            tr: sub,
        };
        let graph_connected = index_components(&sub_img, index, true).len() == 1;

        let mut mask = SubsetMask::empty(complex.cell_count());
        for &i in &chosen {
            let v = Cell::principal_of(&img.point(i));
            for c in complex.closure_unchecked(&v.comb) {
                let ci = complex.index_unchecked(&c.comb);
                if topo.t[ci] == side {
                    mask.insert(crate::space::ElementId(ci));
                }
            }
        }
        let cell_connected = space.components(&mask).len() == 1;
        if graph_connected != cell_connected {
            return false;
        }
    }
    true
}

/// Two `m³` cube shells overlapping in a 2×2×2 corner block, embedded in a
/// box of side `2m` with an empty one-voxel margin.
pub fn hollow_cubes(m: usize) -> Result<DigitalImage, AdjacencyError> {
    if m < 3 {
        return Err(AdjacencyError::CubeTooSmall(m));
    }
    let side = 2 * m;
    let shift = m - 2;
    let in_cube = |p: &[usize], lo: usize| p.iter().all(|&x| (lo..lo + m).contains(&x));
    let in_core = |p: &[usize], lo: usize| p.iter().all(|&x| (lo + 1..lo + m - 1).contains(&x));
    let mut img = DigitalImage::empty(vec![side; 3])?;
    for i in 0..img.len() {
        let p = img.point(i);
        if p.contains(&0) {
            continue;
        }
        let q: Vec<usize> = p.iter().map(|x| x - 1).collect();
        let solid = in_cube(&q, 0) || in_cube(&q, shift);
        let core = in_core(&q, 0) || in_core(&q, shift);
        img.tr[i] = solid && !core;
    }
    Ok(img)
}

/// Whether `TR` is a-connected and, for each of its points, the b-neighbors
/// inside `TR` form a simple closed b-curve.
pub fn is_simple_surface(img: &DigitalImage, a: usize, b: usize) -> Result<bool, AdjacencyError> {
    check_index(a, img.n())?;
    check_index(b, img.n())?;
    if index_components(img, a, true).len() != 1 {
        return Ok(false);
    }
    let offs = offsets(img.n(), b);
    for i in (0..img.len()).filter(|&i| img.tr[i]) {
        let ring: Vec<usize> = img
            .shifted(&img.point(i), &offs)
            .into_iter()
            .filter(|&j| img.tr[j])
            .collect();
        if !is_closed_curve(img, &ring, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_closed_curve(img: &DigitalImage, ring: &[usize], b: usize) -> bool {
    if ring.len() < 3 {
        return false;
    }
    let pts: Vec<Point> = ring.iter().map(|&i| img.point(i)).collect();
    let adj = |x: usize, y: usize| {
        x != y && close(&pts[x], &pts[y]) && squared_distance(&pts[x], &pts[y]) <= b
    };
    if (0..pts.len()).any(|x| (0..pts.len()).filter(|&y| adj(x, y)).count() != 2) {
        return false;
    }
    let mut reached = vec![false; pts.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for y in 0..pts.len() {
            if !reached[y] && adj(x, y) {
                reached[y] = true;
                stack.push(y);
            }
        }
    }
    reached.iter().all(|&r| r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCheckOptions {
    /// Largest point count enumerated in full.
    pub max_points: usize,
    /// Random masks to try when the box is larger than `max_points`.
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Default for PairCheckOptions {
    fn default() -> Self {
        Self {
            max_points: DEFAULT_PAIR_CHECK_POINTS,
            samples: None,
            seed: 0,
        }
    }
}

/// Runs [`build_analog`] over every foreground mask of the box (or a seeded
/// sample of masks) in both modes. Masks are evaluated in parallel; the
/// lowest-index unsatisfiable mask is the witness.
pub fn exhaustive_pair_check(
    n: usize,
    dims: &[usize],
    a: usize,
    b: usize,
    options: PairCheckOptions,
) -> Result<ConsistencyVerdict, AdjacencyError> {
    if dims.len() != n {
        return Err(AdjacencyError::DimensionMismatch(dims.len(), n));
    }
    check_index(a, n)?;
    check_index(b, n)?;
    let points: usize = dims.iter().product();
    let masks: Vec<Vec<bool>> = if points <= options.max_points && points < 64 {
        (0..1u64 << points)
            .map(|w| (0..points).map(|i| w >> i & 1 == 1).collect())
            .collect()
    } else if let Some(count) = options.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        (0..count)
            .map(|_| (0..points).map(|_| rng.gen_bool(0.5)).collect())
            .collect()
    } else {
        return Err(AdjacencyError::BoundExceeded {
            points,
            bound: options.max_points,
        });
    };
    let outcomes: Vec<(Option<UnsatCertificate>, bool)> = masks
        .par_iter()
        .map(|mask| {
            let img = DigitalImage::new(dims.to_vec(), mask.clone()).expect("mask matches box");
            let plain = build_analog(&img, a, b, false).expect("indices checked");
            let convex = build_analog(&img, a, b, true).expect("indices checked");
            (plain.certificate().cloned(), convex.is_sat())
        })
        .collect();
    let image = |k: usize| DigitalImage::new(dims.to_vec(), masks[k].clone()).unwrap();
    let first_plain = outcomes.iter().position(|(c, _)| c.is_some());
    let first_convex = outcomes.iter().position(|(_, sat)| !sat);
    Ok(ConsistencyVerdict {
        consistent: first_plain.is_none(),
        face_convex_consistent: first_convex.is_none(),
        witness: first_plain.map(image),
        face_convex_witness: first_convex.map(image),
        certificate: first_plain.and_then(|k| outcomes[k].0.clone()),
        masks_checked: masks.len(),
    })
}
