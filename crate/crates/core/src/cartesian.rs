//! Cartesian complexes as products of one-dimensional axis complexes.
//!
//! An axis with `m` pixels has combinatorial indices `0..=2m-2`. Even
//! indices are open 1-cells (pixels), odd indices are closed 0-cells, and
//! both endpoints are open. A cell of the product is a vector of
//! combinatorial coordinates; it is principal when all of them are even.

use std::fmt;

use thiserror::Error;

use crate::space::{LfSpace, SpaceError};

/// Default limit on the number of cells `to_lf_space` materializes.
pub const DEFAULT_CELL_BOUND: usize = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartesianError {
    #[error("a complex needs at least one axis")]
    NoAxes,
    #[error("axis {0} has no pixels")]
    EmptyAxis(usize),
    #[error("cell {0} lies outside the complex")]
    OutOfRange(Cell),
    #[error("cell has {got} coordinates, complex has dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("cell {0} is not principal")]
    NotPrincipal(Cell),
    #[error("cells {0} and {1} are not close")]
    NotClose(Cell, Cell),
    #[error("complex has {cells} cells, bound is {bound}")]
    TooLarge { cells: usize, bound: usize },
    #[error("coordinate {0} is not a multiple of one half")]
    BadCoordinate(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// One-dimensional complex of `m` open cells and `m - 1` closed cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisComplex {
    pixels: usize,
}

impl AxisComplex {
    pub fn new(pixels: usize) -> Option<Self> {
        (pixels >= 1).then_some(Self { pixels })
    }

    pub fn pixels(&self) -> usize {
        self.pixels
    }

    /// Number of combinatorial indices, `2m - 1`.
    pub fn cell_count(&self) -> usize {
        2 * self.pixels - 1
    }
}

/// Cell in combinatorial coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub comb: Vec<usize>,
}

impl Cell {
    pub fn new(comb: Vec<usize>) -> Self {
        Self { comb }
    }

    /// Principal cell of a pixel/voxel.
    pub fn principal_of(point: &[usize]) -> Self {
        Self {
            comb: point.iter().map(|&p| 2 * p).collect(),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.comb.iter().all(|c| c % 2 == 0)
    }

    /// Pixel coordinates of a principal cell.
    pub fn point(&self) -> Option<Vec<usize>> {
        self.is_principal()
            .then(|| self.comb.iter().map(|c| c / 2).collect())
    }

    pub fn from_semi(semi: &[SemiCoord]) -> Result<Self, CartesianError> {
        let comb = semi
            .iter()
            .map(|s| {
                usize::try_from(s.doubled())
                    .map_err(|_| CartesianError::BadCoordinate(s.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { comb })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comb.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiCoord(i64);

impl SemiCoord {
    pub fn from_doubled(doubled: i64) -> Self {
        Self(doubled)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for SemiCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0.div_euclid(2);
        if self.0 % 2 == 0 {
            write!(f, "{whole}")
        } else if self.0 < 0 {
            write!(f, "-{}.5", -(self.0 + 1) / 2)
        } else {
            write!(f, "{whole}.5")
        }
    }
}

impl std::str::FromStr for SemiCoord {
    type Err = CartesianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CartesianError::BadCoordinate(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let doubled = match body.split_once('.') {
            None => body.parse::<i64>().map_err(|_| bad())? * 2,
            Some((int, frac)) => {
                let int: i64 = if int.is_empty() {
                    0
                } else {
                    int.parse().map_err(|_| bad())?
                };
                let frac = frac.trim_end_matches('0');
                match frac {
                    "" => int * 2,
                    "5" => int * 2 + 1,
                    _ => return Err(bad()),
                }
            }
        };
        Ok(Self(if neg { -doubled } else { doubled }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords {
    pub comb: Vec<usize>,
    pub semi: Vec<SemiCoord>,
}

/// Intermediate cell of two close principal cells and its closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intermediate {
    pub cell: Cell,
    pub ic: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianComplex {
    axes: Vec<AxisComplex>,
    // strides over combinatorial extents, x fastest
    strides: Vec<usize>,
    cell_count: usize,
}

impl CartesianComplex {
    /// Complex of a pixel box with the given extents.
    pub fn new(pixel_dims: &[usize]) -> Result<Self, CartesianError> {
        if pixel_dims.is_empty() {
            return Err(CartesianError::NoAxes);
        }
        let axes = pixel_dims
            .iter()
            .enumerate()
            .map(|(i, &m)| AxisComplex::new(m).ok_or(CartesianError::EmptyAxis(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut strides = Vec::with_capacity(axes.len());
        let mut total = 1usize;
        for axis in &axes {
            strides.push(total);
            total = total.saturating_mul(axis.cell_count());
        }
        Ok(Self {
            axes,
            strides,
            cell_count: total,
        })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[AxisComplex] {
        &self.axes
    }

    pub fn pixel_dims(&self) -> Vec<usize> {
        self.axes.iter().map(AxisComplex::pixels).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn contains(&self, c: &Cell) -> bool {
        c.comb.len() == self.dim()
            && c.comb
                .iter()
                .zip(&self.axes)
                .all(|(&x, a)| x < a.cell_count())
    }

    fn check(&self, c: &Cell) -> Result<(), CartesianError> {
        if c.comb.len() != self.dim() {
            return Err(CartesianError::DimensionMismatch {
                got: c.comb.len(),
                expected: self.dim(),
            });
        }
        if !self.contains(c) {
            return Err(CartesianError::OutOfRange(c.clone()));
        }
        Ok(())
    }

    /// Linear index of a cell, x fastest.
    pub fn index_of(&self, c: &Cell) -> Result<usize, CartesianError> {
        self.check(c)?;
        Ok(self.index_unchecked(&c.comb))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, comb: &[usize]) -> usize {
        comb.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        assert!(index < self.cell_count, "cell index out of range");
        let mut rest = index;
        let comb = self
            .axes
            .iter()
            .map(|a| {
                let c = rest % a.cell_count();
                rest /= a.cell_count();
                c
            })
            .collect();
        Cell { comb }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count).map(|i| self.cell_at(i))
    }

    /// Principal cells in point order (x fastest).
    pub fn principals(&self) -> Vec<Cell> {
        let ranges: Vec<Vec<usize>> = self
            .axes
            .iter()
            .map(|a| (0..a.pixels()).map(|p| 2 * p).collect())
            .collect();
        product(&ranges).into_iter().map(Cell::new).collect()
    }

    /// Number of open (even) coordinates.
    pub fn cell_dim(&self, c: &Cell) -> Result<usize, CartesianError> {
        self.check(c)?;
        Ok(c.comb.iter().filter(|&&x| x % 2 == 0).count())
    }

    /// Whether `a` is a (non-proper or proper) face of `b`.
    pub fn is_face(&self, a: &Cell, b: &Cell) -> Result<bool, CartesianError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.comb
            .iter()
            .zip(&b.comb)
            .all(|(&x, &y)| x == y || (x % 2 == 1 && x.abs_diff(y) == 1)))
    }

    /// Cells having `c` as a face; this is `SN(c)`.
    pub fn open_star(&self, c: &Cell) -> Result<Vec<Cell>, CartesianError> {
        self.check(c)?;
        Ok(self.star_unchecked(&c.comb))
    }

    fn star_unchecked(&self, comb: &[usize]) -> Vec<Cell> {
        // odd coordinates are never at the border, so ±1 stays in range
        let ranges: Vec<Vec<usize>> = comb
            .iter()
            .map(|&x| {
                if x % 2 == 1 {
                    vec![x - 1, x, x + 1]
                } else {
                    vec![x]
                }
            })
            .collect();
        product(&ranges).into_iter().map(Cell::new).collect()
    }

    /// `c` together with all its proper faces.
    pub fn closure_of(&self, c: &Cell) -> Result<Vec<Cell>, CartesianError> {
        self.check(c)?;
        Ok(self.closure_unchecked(&c.comb))
    }

    pub(crate) fn closure_unchecked(&self, comb: &[usize]) -> Vec<Cell> {
        let ranges: Vec<Vec<usize>> = comb
            .iter()
            .zip(&self.axes)
            .map(|(&x, axis)| {
                if x % 2 == 1 {
                    vec![x]
                } else {
                    let mut r = Vec::with_capacity(3);
                    if x > 0 {
                        r.push(x - 1);
                    }
                    r.push(x);
                    if x + 1 < axis.cell_count() {
                        r.push(x + 1);
                    }
                    r
                }
            })
            .collect();
        product(&ranges).into_iter().map(Cell::new).collect()
    }

    /// Principal cells having `c` as a face.
    pub fn incident_principals(&self, c: &Cell) -> Result<Vec<Cell>, CartesianError> {
        self.check(c)?;
        Ok(self
            .star_unchecked(&c.comb)
            .into_iter()
            .filter(Cell::is_principal)
            .collect())
    }

    /// Intermediate cell `(v1 + v2) / 2` of two close principal cells and
    /// its closure.
    pub fn intermediate(&self, v1: &Cell, v2: &Cell) -> Result<Intermediate, CartesianError> {
        self.check(v1)?;
        self.check(v2)?;
        for v in [v1, v2] {
            if !v.is_principal() {
                return Err(CartesianError::NotPrincipal(v.clone()));
            }
        }
        if v1
            .comb
            .iter()
            .zip(&v2.comb)
            .any(|(a, b)| a.abs_diff(*b) > 2)
        {
            return Err(CartesianError::NotClose(v1.clone(), v2.clone()));
        }
        let comb: Vec<usize> = v1
            .comb
            .iter()
            .zip(&v2.comb)
            .map(|(a, b)| (a + b) / 2)
            .collect();
        let ic = self.closure_unchecked(&comb);
        Ok(Intermediate {
            cell: Cell::new(comb),
            ic,
        })
    }

    pub fn coords(&self, c: &Cell) -> Coords {
        Coords {
            comb: c.comb.clone(),
            semi: c.comb.iter().map(|&x| SemiCoord(x as i64)).collect(),
        }
    }

    /// Space with `SN(c) = open_star(c)`, elements indexed as in
    /// [`Self::index_of`].
    pub fn to_lf_space(&self) -> Result<LfSpace, CartesianError> {
        self.to_lf_space_bounded(DEFAULT_CELL_BOUND)
    }

    pub fn to_lf_space_bounded(&self, bound: usize) -> Result<LfSpace, CartesianError> {
        if self.cell_count > bound {
            return Err(CartesianError::TooLarge {
                cells: self.cell_count,
                bound,
            });
        }
        let sn = (0..self.cell_count)
            .map(|i| {
                let c = self.cell_at(i);
                self.star_unchecked(&c.comb)
                    .iter()
                    .map(|s| self.index_unchecked(&s.comb))
                    .collect()
            })
            .collect();
        Ok(LfSpace::new(sn)?)
    }
}

/// Cartesian product of coordinate ranges, first coordinate fastest.
pub(crate) fn product(ranges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::with_capacity(ranges.len())];
    for range in ranges {
        let mut next = Vec::with_capacity(out.len() * range.len());
        for &v in range {
            for prefix in &out {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::space::{ElementId, SubsetMask};
    use proptest::prelude::*;

    fn c(v: &[usize]) -> Cell {
        Cell::new(v.to_vec())
    }

    fn set(mut v: Vec<Cell>) -> Vec<Cell> {
        v.sort();
        v
    }

    #[test]
    fn cell_dims() {
        let cx2 = CartesianComplex::new(&[3, 3]).unwrap();
        let cx3 = CartesianComplex::new(&[4, 4, 4]).unwrap();
        assert_eq!(cx2.cell_dim(&c(&[2, 2])).unwrap(), 2);
        assert_eq!(cx3.cell_dim(&c(&[1, 3, 5])).unwrap(), 0);
        assert_eq!(cx2.cell_dim(&c(&[1, 2])).unwrap(), 1);
        assert!(matches!(
            cx2.cell_dim(&c(&[5, 0])),
            Err(CartesianError::OutOfRange(_))
        ));
    }

    #[test]
    fn faces() {
        let cx2 = CartesianComplex::new(&[3, 3]).unwrap();
        assert!(cx2.is_face(&c(&[1, 1]), &c(&[2, 2])).unwrap());
        assert!(cx2.is_face(&c(&[1, 2]), &c(&[1, 2])).unwrap());
        let cx1 = CartesianComplex::new(&[3]).unwrap();
        assert!(!cx1.is_face(&c(&[0]), &c(&[2])).unwrap());
    }

    #[test]
    fn stars() {
        let cx2 = CartesianComplex::new(&[3, 3]).unwrap();
        let star = cx2.open_star(&c(&[1, 1])).unwrap();
        assert_eq!(star.len(), 9);
        assert!(star.iter().all(|s| s.comb.iter().all(|&x| x <= 2)));
        assert_eq!(cx2.open_star(&c(&[2, 2])).unwrap(), vec![c(&[2, 2])]);
        assert_eq!(
            set(cx2.open_star(&c(&[1, 2])).unwrap()),
            vec![c(&[0, 2]), c(&[1, 2]), c(&[2, 2])]
        );
    }

    #[test]
    fn principals_of_cells() {
        let cx3 = CartesianComplex::new(&[3, 3, 3]).unwrap();
        assert_eq!(cx3.incident_principals(&c(&[1, 1, 2])).unwrap().len(), 4);
        assert_eq!(
            cx3.incident_principals(&c(&[2, 2, 2])).unwrap(),
            vec![c(&[2, 2, 2])]
        );
        let cx2 = CartesianComplex::new(&[2, 2]).unwrap();
        assert_eq!(
            set(cx2.incident_principals(&c(&[1, 1])).unwrap()),
            vec![c(&[0, 0]), c(&[0, 2]), c(&[2, 0]), c(&[2, 2])]
        );
    }

    #[test]
    fn intermediates() {
        let cx2 = CartesianComplex::new(&[2, 2]).unwrap();
        let m = cx2.intermediate(&c(&[0, 0]), &c(&[2, 2])).unwrap();
        assert_eq!(m.cell, c(&[1, 1]));
        assert_eq!(cx2.cell_dim(&m.cell).unwrap(), 0);
        assert_eq!(m.ic, vec![c(&[1, 1])]);

        let m = cx2.intermediate(&c(&[0, 0]), &c(&[2, 0])).unwrap();
        assert_eq!(m.cell, c(&[1, 0]));
        assert_eq!(set(m.ic), vec![c(&[1, 0]), c(&[1, 1])]);

        // an interior 18-adjacent pair; at the border the edge is clipped
        let cx3 = CartesianComplex::new(&[3, 3, 3]).unwrap();
        let m = cx3.intermediate(&c(&[0, 0, 2]), &c(&[2, 2, 2])).unwrap();
        assert_eq!(m.ic.len(), 3);

        let cx1 = CartesianComplex::new(&[4]).unwrap();
        assert!(matches!(
            cx1.intermediate(&c(&[0]), &c(&[4])),
            Err(CartesianError::NotClose(..))
        ));
        assert!(matches!(
            cx1.intermediate(&c(&[1]), &c(&[2])),
            Err(CartesianError::NotPrincipal(_))
        ));
    }

    #[test]
    fn lf_space_conversion() {
        let k5 = CartesianComplex::new(&[3]).unwrap().to_lf_space().unwrap();
        assert_eq!(k5, fixtures::k5());
        let sq = CartesianComplex::new(&[2, 2])
            .unwrap()
            .to_lf_space()
            .unwrap();
        assert_eq!(sq.len(), 9);
        assert!(sq.verify_axioms(true).all_pass());
        let one = CartesianComplex::new(&[1]).unwrap().to_lf_space().unwrap();
        assert_eq!(one, fixtures::singleton());
        assert!(matches!(
            CartesianComplex::new(&[100, 100])
                .unwrap()
                .to_lf_space_bounded(1000),
            Err(CartesianError::TooLarge { .. })
        ));
    }

    #[test]
    fn semi_coordinates() {
        let cx = CartesianComplex::new(&[3, 3]).unwrap();
        let semi: Vec<String> = cx
            .coords(&c(&[1, 2]))
            .semi
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(semi, ["0.5", "1"]);
        assert_eq!(
            cx.coords(&c(&[2, 2])).semi,
            vec![SemiCoord(2), SemiCoord(2)]
        );
        let parsed: Vec<SemiCoord> = ["1.5", "0"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(Cell::from_semi(&parsed).unwrap(), c(&[3, 0]));
        assert!("0.25".parse::<SemiCoord>().is_err());
        assert!(Cell::from_semi(&["-0.5".parse().unwrap()]).is_err());
    }

    #[test]
    fn dimension_matches_open_components_in_3d() {
        let cx = CartesianComplex::new(&[3, 3, 3]).unwrap();
        let space = cx.to_lf_space().unwrap();
        let dims = space.dimensions().unwrap();
        for (i, cell) in cx.cells().enumerate() {
            assert_eq!(dims[i], cx.cell_dim(&cell).unwrap());
        }
    }

    fn principal_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
        (1usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(1usize..=4, n).prop_flat_map(move |dims| {
                let p = dims.iter().map(|&m| 0..m).collect::<Vec<_>>();
                let q = dims.iter().map(|&m| 0..m).collect::<Vec<_>>();
                (Just(dims), p, q)
            })
        })
    }

    proptest! {
        #[test]
        fn intermediate_cells_touch_both_principals((dims, p, q) in principal_pair()) {
            let cx = CartesianComplex::new(&dims).unwrap();
            let (v1, v2) = (Cell::principal_of(&p), Cell::principal_of(&q));
            let close = p.iter().zip(&q).all(|(a, b)| a.abs_diff(*b) <= 1);
            match cx.intermediate(&v1, &v2) {
                Ok(m) => {
                    prop_assert!(close);
                    let d2 = p.iter().zip(&q).filter(|(a, b)| a != b).count();
                    prop_assert_eq!(cx.cell_dim(&m.cell).unwrap(), dims.len() - d2);
                    let space = cx.to_lf_space().unwrap();
                    let i1 = ElementId(cx.index_of(&v1).unwrap());
                    let i2 = ElementId(cx.index_of(&v2).unwrap());
                    for cell in &m.ic {
                        let e = ElementId(cx.index_of(cell).unwrap());
                        prop_assert!(space.incident(e, i1).unwrap());
                        prop_assert!(space.incident(e, i2).unwrap());
                    }
                }
                Err(_) => {
                    prop_assert!(!close);
                    let a = set(cx.closure_of(&v1).unwrap());
                    let b = cx.closure_of(&v2).unwrap();
                    prop_assert!(b.iter().all(|x| a.binary_search(x).is_err()));
                }
            }
        }

        #[test]
        fn interior_cells_have_full_principal_count(
            dims in proptest::collection::vec(3usize..=4, 1..=3),
            seed in any::<u64>(),
        ) {
            let cx = CartesianComplex::new(&dims).unwrap();
            let cell = cx.cell_at((seed % cx.cell_count() as u64) as usize);
            let interior = cell.comb.iter().zip(cx.axes()).all(|(&x, a)| x > 0 && x + 1 < a.cell_count());
            let count = cx.incident_principals(&cell).unwrap().len();
            let k = cx.cell_dim(&cell).unwrap();
            if interior {
                prop_assert_eq!(count, 1 << (dims.len() - k));
            } else {
                prop_assert!(count <= 1 << (dims.len() - k));
            }
        }

        #[test]
        fn open_star_is_sn_and_face_relation_is_partial_order(dims in proptest::collection::vec(1usize..=3, 1..=3)) {
            let cx = CartesianComplex::new(&dims).unwrap();
            let space = cx.to_lf_space().unwrap();
            let cells: Vec<Cell> = cx.cells().collect();
            for (i, a) in cells.iter().enumerate() {
                let sn = space.smallest_neighborhood(ElementId(i)).unwrap();
                let star: Vec<ElementId> = {
                    let mut v: Vec<ElementId> = cx.open_star(a).unwrap().iter().map(|s| ElementId(cx.index_of(s).unwrap())).collect();
                    v.sort();
                    v
                };
                prop_assert_eq!(sn, star.as_slice());
                for b in &cells {
                    let ab = cx.is_face(a, b).unwrap();
                    if ab && cx.is_face(b, a).unwrap() {
                        prop_assert_eq!(a, b);
                    }
                }
            }
            let full = SubsetMask::full(space.len());
            prop_assert!(space.frontier(&full).is_empty());
        }
    }
}
