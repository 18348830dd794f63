//! Virtual grids on standard arrays: a hexagonal complex on square pixels,
//! 14-adjacency on voxels, and the completely-connected test.
//!
//! Hexagonal layout: pixel `(x, y)` owns up to five virtual cells.
//!
//! - `E0`, its left side, between `(x-1, y)` and `(x, y)`.
//! - `E1`, its top side, between `(x, y-1)` and `(x, y)`.
//! - `E2`, the slanted edge at its upper-left corner, between
//!   `(x-1, y-1)` and `(x, y)`.
//! - `V0`, the slant's upper end, shared by `(x-1, y-1)`, `(x, y-1)`, `(x, y)`.
//! - `V1`, the slant's lower end, shared by `(x-1, y-1)`, `(x-1, y)`, `(x, y)`.
//!
//! A virtual cell exists only when all of its pixels lie in the grid. With
//! `mirror` set the layout is reflected left to right, so the anti-diagonal
//! pixels become neighbors instead.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::adjacency::DigitalImage;
use crate::space::{ElementId, LfSpace, SpaceError, SubsetMask};

/// Largest pixel count `hex_to_lf_space` accepts.
pub const MAX_HEX_PIXELS: usize = 1 << 20;

pub type Pixel = (usize, usize);
pub type Voxel = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid extents must be positive")]
    Empty,
    #[error("{got} entries for {expected} pixels")]
    Length { got: usize, expected: usize },
    #[error("point {0:?} lies outside the grid")]
    OutOfRange(Vec<usize>),
    #[error("virtual-cell word {0:#x} uses more than five bits")]
    BadBits(u8),
    #[error("grid has {pixels} pixels, bound is {bound}")]
    TooLarge { pixels: usize, bound: usize },
    #[error("space fails the axioms")]
    AxiomFailure,
    #[error("a 14-adjacency grid is three-dimensional, got {0} axes")]
    NotThreeDimensional(usize),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HexCellType {
    Pixel,
    E0,
    E1,
    E2,
    V0,
    V1,
}

impl HexCellType {
    pub const ALL: [HexCellType; 6] = [
        Self::Pixel,
        Self::E0,
        Self::E1,
        Self::E2,
        Self::V0,
        Self::V1,
    ];

    /// Bit of this virtual cell in a pixel's membership word.
    pub fn bit(self) -> Option<u8> {
        match self {
            Self::Pixel => None,
            Self::V0 => Some(0),
            Self::V1 => Some(1),
            Self::E0 => Some(2),
            Self::E1 => Some(3),
            Self::E2 => Some(4),
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            Self::Pixel => 2,
            Self::E0 | Self::E1 | Self::E2 => 1,
            Self::V0 | Self::V1 => 0,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Labeled pixel array with a five-bit virtual-cell word per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexGrid {
    width: usize,
    height: usize,
    labels: Vec<u16>,
    bits: Vec<u8>,
    mirror: bool,
}

impl HexGrid {
    /// Grid with virtual-cell words derived from `label != 0`.
    pub fn new(width: usize, height: usize, labels: Vec<u16>) -> Result<Self, GridError> {
        if width == 0 || height == 0 {
            return Err(GridError::Empty);
        }
        if labels.len() != width * height {
            return Err(GridError::Length {
                got: labels.len(),
                expected: width * height,
            });
        }
        let mut grid = Self {
            width,
            height,
            labels,
            bits: Vec::new(),
            mirror: false,
        };
        grid.bits = grid.derived_bits();
        Ok(grid)
    }

    pub fn from_mask(width: usize, height: usize, mask: &[bool]) -> Result<Self, GridError> {
        Self::new(width, height, mask.iter().map(|&b| u16::from(b)).collect())
    }

    pub fn mirrored(mut self, mirror: bool) -> Self {
        self.mirror = mirror;
        self.bits = self.derived_bits();
        self
    }

    /// Replaces the stored virtual-cell words.
    pub fn with_bits(mut self, bits: Vec<u8>) -> Result<Self, GridError> {
        if bits.len() != self.labels.len() {
            return Err(GridError::Length {
                got: bits.len(),
                expected: self.labels.len(),
            });
        }
        if let Some(&bad) = bits.iter().find(|&&w| w > 0x1f) {
            return Err(GridError::BadBits(bad));
        }
        self.bits = bits;
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirror
    }

    pub fn label(&self, (x, y): Pixel) -> u16 {
        self.labels[y * self.width + x]
    }

    /// Foreground is any non-zero label.
    pub fn is_foreground(&self, p: Pixel) -> bool {
        self.label(p) != 0
    }

    /// Layout coordinate of a pixel (reflected when mirrored).
    fn to_layout(&self, (x, y): Pixel) -> Pixel {
        if self.mirror {
            (self.width - 1 - x, y)
        } else {
            (x, y)
        }
    }

    fn from_layout(&self, p: Pixel) -> Pixel {
        self.to_layout(p)
    }

    /// Pixels incident to the virtual cell `ty` owned by the layout pixel
    /// `(x, y)`, or `None` when the cell does not exist.
    fn layout_pixels(&self, (x, y): Pixel, ty: HexCellType) -> Option<Vec<Pixel>> {
        use HexCellType::*;
        let need_x = matches!(ty, E0 | E2 | V0 | V1);
        let need_y = matches!(ty, E1 | E2 | V0 | V1);
        if (need_x && x == 0) || (need_y && y == 0) {
            return None;
        }
        Some(match ty {
            Pixel => vec![(x, y)],
            E0 => vec![(x - 1, y), (x, y)],
            E1 => vec![(x, y - 1), (x, y)],
            E2 => vec![(x - 1, y - 1), (x, y)],
            V0 => vec![(x - 1, y - 1), (x, y - 1), (x, y)],
            V1 => vec![(x - 1, y - 1), (x - 1, y), (x, y)],
        })
    }

    /// Edges bounded by the vertex `ty` at layout pixel `(x, y)`, as
    /// (layout owner, type) pairs that may fall outside the grid.
    fn layout_vertex_edges((x, y): Pixel, ty: HexCellType) -> Vec<(Option<Pixel>, HexCellType)> {
        use HexCellType::*;
        match ty {
            V0 => vec![
                (Some((x, y)), E2),
                (Some((x, y)), E1),
                (y.checked_sub(1).map(|y1| (x, y1)), E0),
            ],
            V1 => vec![
                (Some((x, y)), E2),
                (Some((x, y)), E0),
                (x.checked_sub(1).map(|x1| (x1, y)), E1),
            ],
            _ => Vec::new(),
        }
    }

    /// Membership words for the binary split `label != 0`: an edge joins the
    /// foreground when both its pixels do, a vertex when two of its three do.
    pub fn derived_bits(&self) -> Vec<u8> {
        let mut bits = vec![0u8; self.labels.len()];
        for y in 0..self.height {
            for x in 0..self.width {
                let owner = self.to_layout((x, y));
                let mut word = 0u8;
                for ty in &HexCellType::ALL[1..] {
                    if let Some(pixels) = self.layout_pixels(owner, *ty) {
                        let fg = pixels
                            .iter()
                            .filter(|&&p| self.is_foreground(self.from_layout(p)))
                            .count();
                        let member = if ty.dimension() == 1 {
                            fg == 2
                        } else {
                            fg >= 2
                        };
                        if member {
                            word |= 1 << ty.bit().unwrap();
                        }
                    }
                }
                bits[y * self.width + x] = word;
            }
        }
        bits
    }
}

/// Six hexagonal neighbors of a pixel, clipped to the grid.
pub fn hex_neighbors(p: Pixel, grid: &HexGrid) -> Result<Vec<Pixel>, GridError> {
    let (x, y) = p;
    if x >= grid.width || y >= grid.height {
        return Err(GridError::OutOfRange(vec![x, y]));
    }
    let diag: [(i64, i64); 2] = if grid.mirror {
        [(1, -1), (-1, 1)]
    } else {
        [(-1, -1), (1, 1)]
    };
    let offsets = [(-1, 0), (1, 0), (0, -1), (0, 1), diag[0], diag[1]];
    Ok(offsets
        .iter()
        .filter_map(|&(dx, dy)| {
            let nx = x as i64 + dx;
            let ny = y as i64 + dy;
            ((0..grid.width as i64).contains(&nx) && (0..grid.height as i64).contains(&ny))
                .then_some((nx as usize, ny as usize))
        })
        .collect())
}

/// Components of pixels carrying `label` under the six-neighborhood.
pub fn hex_components(grid: &HexGrid, label: u16) -> Vec<Vec<Pixel>> {
    let mut seen = vec![false; grid.labels.len()];
    let mut out = Vec::new();
    for start in 0..grid.labels.len() {
        if seen[start] || grid.labels[start] != label {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([(start % grid.width, start / grid.width)]);
        let mut comp = Vec::new();
        while let Some(p) = queue.pop_front() {
            comp.push(p);
            for q in hex_neighbors(p, grid).expect("in range") {
                let i = q.1 * grid.width + q.0;
                if !seen[i] && grid.labels[i] == label {
                    seen[i] = true;
                    queue.push_back(q);
                }
            }
        }
        comp.sort_by_key(|&(x, y)| (y, x));
        out.push(comp);
    }
    out
}

/// The hexagonal complex of a grid as a space, with its element table.
#[derive(Debug, Clone)]
pub struct HexSpace {
    space: LfSpace,
    width: usize,
    ids: Vec<Option<ElementId>>,
    cells: Vec<(Pixel, HexCellType)>,
}

impl HexSpace {
    pub fn space(&self) -> &LfSpace {
        &self.space
    }

    pub fn element(&self, (x, y): Pixel, ty: HexCellType) -> Option<ElementId> {
        self.ids[(y * self.width + x) * 6 + ty.slot()]
    }

    /// Owner pixel and type of an element.
    pub fn cell(&self, e: ElementId) -> (Pixel, HexCellType) {
        self.cells[e.0]
    }

    /// Pixel components of the cells belonging to `label`'s class: pixels
    /// with that label, edges whose two pixels carry it, vertices where at
    /// least two of three pixels carry it.
    pub fn label_components(&self, grid: &HexGrid, label: u16) -> Vec<Vec<Pixel>> {
        let mut mask = SubsetMask::empty(self.space.len());
        for (i, &(owner, ty)) in self.cells.iter().enumerate() {
            let pixels = grid
                .layout_pixels(grid.to_layout(owner), ty)
                .expect("element exists");
            let hits = pixels
                .iter()
                .filter(|&&p| grid.label(grid.from_layout(p)) == label)
                .count();
            let member = match ty.dimension() {
                2 => hits == 1,
                1 => hits == 2,
                _ => hits >= 2,
            };
            if member {
                mask.insert(ElementId(i));
            }
        }
        self.space
            .components(&mask)
            .into_iter()
            .map(|comp| {
                let mut px: Vec<Pixel> = comp
                    .into_iter()
                    .filter_map(|e| {
                        let (p, ty) = self.cells[e.0];
                        (ty == HexCellType::Pixel).then_some(p)
                    })
                    .collect();
                px.sort_by_key(|&(x, y)| (y, x));
                px
            })
            .collect()
    }
}

/// Builds the hexagonal complex: a pixel's SN is itself, an edge's SN adds
/// its two pixels, a vertex's SN adds its three edges and three pixels.
pub fn hex_to_lf_space(grid: &HexGrid) -> Result<HexSpace, GridError> {
    let pixels = grid.width * grid.height;
    if pixels > MAX_HEX_PIXELS {
        return Err(GridError::TooLarge {
            pixels,
            bound: MAX_HEX_PIXELS,
        });
    }
    let mut ids = vec![None; pixels * 6];
    let mut cells = Vec::new();
    for y in 0..grid.height {
        for x in 0..grid.width {
            for ty in HexCellType::ALL {
                if grid.layout_pixels(grid.to_layout((x, y)), ty).is_some() {
                    ids[(y * grid.width + x) * 6 + ty.slot()] = Some(ElementId(cells.len()));
                    cells.push(((x, y), ty));
                }
            }
        }
    }
    let id_of = |layout: Pixel, ty: HexCellType| -> Option<usize> {
        let (x, y) = grid.from_layout(layout);
        if x >= grid.width || y >= grid.height {
            return None;
        }
        ids[(y * grid.width + x) * 6 + ty.slot()].map(|e| e.0)
    };
    let sn = cells
        .iter()
        .enumerate()
        .map(|(i, &(owner, ty))| {
            let layout = grid.to_layout(owner);
            let mut list = vec![i];
            if ty != HexCellType::Pixel {
                for p in grid.layout_pixels(layout, ty).expect("element exists") {
                    list.push(id_of(p, HexCellType::Pixel).expect("pixel exists"));
                }
            }
            for (edge_owner, edge_ty) in HexGrid::layout_vertex_edges(layout, ty) {
                if let Some(e) = edge_owner.and_then(|o| id_of(o, edge_ty)) {
                    list.push(e);
                }
            }
            list
        })
        .collect();
    Ok(HexSpace {
        space: LfSpace::new(sn)?,
        width: grid.width,
        ids,
        cells,
    })
}

/// Whether every two elements of dimension `principal_dim` that share an
/// incident element also share one of dimension `principal_dim - 1`.
pub fn hcc_check(space: &LfSpace, principal_dim: usize) -> Result<bool, GridError> {
    if !space.verify_axioms(false).all_pass() {
        return Err(GridError::AxiomFailure);
    }
    let dims = space.dimensions()?;
    let principal = |e: ElementId| dims[e.0] == principal_dim;
    // pair of principals -> whether a shared cell of codimension 1 was seen
    let mut pairs: BTreeMap<(ElementId, ElementId), bool> = BTreeMap::new();
    for x in space.elements() {
        let mut around: Vec<ElementId> = space
            .smallest_neighborhood(x)?
            .iter()
            .chain(space.faces(x)?)
            .copied()
            .filter(|&e| principal(e))
            .collect();
        around.sort_unstable();
        around.dedup();
        let codim1 = principal_dim >= 1 && dims[x.0] == principal_dim - 1;
        for (i, &p) in around.iter().enumerate() {
            for &q in &around[i + 1..] {
                let seen = pairs.entry((p, q)).or_insert(false);
                *seen |= codim1;
            }
        }
    }
    Ok(pairs.values().all(|&ok| ok))
}

/// Six axis offsets and eight body diagonals.
pub const BCC14_OFFSETS: [[i64; 3]; 14] = [
    [-1, 0, 0],
    [1, 0, 0],
    [0, -1, 0],
    [0, 1, 0],
    [0, 0, -1],
    [0, 0, 1],
    [-1, -1, -1],
    [1, -1, -1],
    [-1, 1, -1],
    [1, 1, -1],
    [-1, -1, 1],
    [1, -1, 1],
    [-1, 1, 1],
    [1, 1, 1],
];

/// The 14 neighbors of a voxel in unbounded space.
pub fn bcc14_neighbors(p: [i64; 3]) -> Vec<[i64; 3]> {
    BCC14_OFFSETS
        .iter()
        .map(|d| [p[0] + d[0], p[1] + d[1], p[2] + d[2]])
        .collect()
}

/// Voxel mask indexed x fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bcc14Grid {
    dims: [usize; 3],
    mask: Vec<bool>,
}

impl Bcc14Grid {
    pub fn new(dims: [usize; 3], mask: Vec<bool>) -> Result<Self, GridError> {
        if dims.contains(&0) {
            return Err(GridError::Empty);
        }
        let expected = dims.iter().product();
        if mask.len() != expected {
            return Err(GridError::Length {
                got: mask.len(),
                expected,
            });
        }
        Ok(Self { dims, mask })
    }

    pub fn from_image(img: &DigitalImage) -> Result<Self, GridError> {
        match img.dims() {
            &[dx, dy, dz] => Self::new([dx, dy, dz], img.mask().to_vec()),
            other => Err(GridError::NotThreeDimensional(other.len())),
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    fn index(&self, p: Voxel) -> usize {
        p[0] + self.dims[0] * (p[1] + self.dims[1] * p[2])
    }

    pub fn get(&self, p: Voxel) -> bool {
        self.mask[self.index(p)]
    }

    /// Neighbors of `p` inside the grid.
    pub fn neighbors(&self, p: Voxel) -> Result<Vec<Voxel>, GridError> {
        if (0..3).any(|i| p[i] >= self.dims[i]) {
            return Err(GridError::OutOfRange(p.to_vec()));
        }
        Ok(bcc14_neighbors([p[0] as i64, p[1] as i64, p[2] as i64])
            .into_iter()
            .filter(|q| (0..3).all(|i| (0..self.dims[i] as i64).contains(&q[i])))
            .map(|q| [q[0] as usize, q[1] as usize, q[2] as usize])
            .collect())
    }
}

/// Components of the foreground (or background) under 14-adjacency.
pub fn bcc14_components(grid: &Bcc14Grid, of_foreground: bool) -> Vec<Vec<Voxel>> {
    let [dx, dy, _] = grid.dims;
    let voxel = |i: usize| [i % dx, (i / dx) % dy, i / (dx * dy)];
    let mut seen = vec![false; grid.mask.len()];
    let mut out = Vec::new();
    for start in 0..grid.mask.len() {
        if seen[start] || grid.mask[start] != of_foreground {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([voxel(start)]);
        let mut comp = Vec::new();
        while let Some(p) = queue.pop_front() {
            comp.push(p);
            for q in grid.neighbors(p).expect("in range") {
                let i = grid.index(q);
                if !seen[i] && grid.mask[i] == of_foreground {
                    seen[i] = true;
                    queue.push_back(q);
                }
            }
        }
        comp.sort_by_key(|v| (v[2], v[1], v[0]));
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::a_components;
    use crate::cartesian::CartesianComplex;
    use proptest::prelude::*;

    fn set(mut v: Vec<Pixel>) -> Vec<Pixel> {
        v.sort();
        v
    }

    fn sorted_components(mut comps: Vec<Vec<Pixel>>) -> Vec<Vec<Pixel>> {
        for c in &mut comps {
            c.sort();
        }
        comps.sort();
        comps
    }

    #[test]
    fn neighbors_of_hex_pixels() {
        let grid = HexGrid::new(3, 3, vec![0; 9]).unwrap();
        assert_eq!(
            set(hex_neighbors((1, 1), &grid).unwrap()),
            set(vec![(0, 1), (2, 1), (1, 0), (1, 2), (0, 0), (2, 2)])
        );
        assert_eq!(hex_neighbors((0, 0), &grid).unwrap().len(), 3);
        assert!(hex_neighbors((3, 0), &grid).is_err());
        let mirrored = grid.mirrored(true);
        assert_eq!(
            set(hex_neighbors((1, 1), &mirrored).unwrap()),
            set(vec![(0, 1), (2, 1), (1, 0), (1, 2), (2, 0), (0, 2)])
        );
    }

    #[test]
    fn hex_space_structure() {
        let grid = HexGrid::new(2, 2, vec![0; 4]).unwrap();
        let hs = hex_to_lf_space(&grid).unwrap();
        let space = hs.space();
        assert!(space.verify_axioms(true).all_pass());
        // 4 pixels, E0 ×2, E1 ×2, E2 ×1, V0 ×1, V1 ×1
        assert_eq!(space.len(), 11);
        for e in space.elements() {
            let (_, ty) = hs.cell(e);
            if ty.dimension() == 0 {
                let sn = space.smallest_neighborhood(e).unwrap();
                let pixels = sn
                    .iter()
                    .filter(|&&x| hs.cell(x).1 == HexCellType::Pixel)
                    .count();
                assert_eq!(pixels, 3);
            }
        }
        let one = hex_to_lf_space(&HexGrid::new(1, 1, vec![1]).unwrap()).unwrap();
        assert_eq!(one.space().len(), 1);
    }

    #[test]
    fn hex_space_dimensions_follow_cell_types() {
        for mirror in [false, true] {
            let grid = HexGrid::new(5, 4, vec![0; 20]).unwrap().mirrored(mirror);
            let hs = hex_to_lf_space(&grid).unwrap();
            let dims = hs.space().dimensions().unwrap();
            for e in hs.space().elements() {
                assert_eq!(dims[e.0], hs.cell(e).1.dimension());
            }
            assert!(hcc_check(hs.space(), 2).unwrap());
        }
    }

    #[test]
    fn hcc_examples() {
        let square = CartesianComplex::new(&[3, 3])
            .unwrap()
            .to_lf_space()
            .unwrap();
        assert!(!hcc_check(&square, 2).unwrap());
        let cubic = CartesianComplex::new(&[2, 2, 2])
            .unwrap()
            .to_lf_space()
            .unwrap();
        assert!(!hcc_check(&cubic, 3).unwrap());
        let sym = crate::fixtures::symmetric_pair();
        assert_eq!(hcc_check(&sym, 1), Err(GridError::AxiomFailure));
    }

    #[test]
    fn bits_follow_membership_rule() {
        // (0,0) and (1,1) foreground: the slant between them is foreground
        let grid = HexGrid::from_mask(2, 2, &[true, false, false, true]).unwrap();
        let word = grid.bits()[3];
        assert_eq!(word, 1 << 4 | 1 | 2);
        assert!(HexGrid::new(1, 1, vec![0])
            .unwrap()
            .with_bits(vec![0x20])
            .is_err());
    }

    #[test]
    fn bcc14_examples() {
        assert_eq!(bcc14_neighbors([5, 5, 5]).len(), 14);
        let n = bcc14_neighbors([0, 0, 0]);
        assert!(n.contains(&[1, 1, 1]));
        assert!(!n.contains(&[1, 1, 0]));

        let mut mask = vec![false; 8];
        mask[0] = true;
        mask[7] = true;
        let grid = Bcc14Grid::new([2, 2, 2], mask.clone()).unwrap();
        assert_eq!(bcc14_components(&grid, true).len(), 1);
        let img = DigitalImage::new(vec![2, 2, 2], mask).unwrap();
        assert_eq!(a_components(&img, 1, true).unwrap().len(), 2);

        let empty = Bcc14Grid::new([3, 3, 3], vec![false; 27]).unwrap();
        assert!(bcc14_components(&empty, true).is_empty());

        let mut mask = vec![false; 27];
        mask[13] = true;
        let single = Bcc14Grid::new([3, 3, 3], mask).unwrap();
        assert_eq!(bcc14_components(&single, false).len(), 1);
        assert_eq!(single.neighbors([1, 1, 1]).unwrap().len(), 14);
    }

    fn mask_strategy() -> impl Strategy<Value = (usize, usize, Vec<bool>)> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(w, h)| {
            (
                Just(w),
                Just(h),
                proptest::collection::vec(any::<bool>(), w * h),
            )
        })
    }

    proptest! {
        #[test]
        fn derived_components_match_six_neighborhood((w, h, mask) in mask_strategy(), mirror in any::<bool>()) {
            let grid = HexGrid::from_mask(w, h, &mask).unwrap().mirrored(mirror);
            let hs = hex_to_lf_space(&grid).unwrap();
            for label in [0u16, 1] {
                prop_assert_eq!(
                    sorted_components(hs.label_components(&grid, label)),
                    sorted_components(hex_components(&grid, label))
                );
            }
        }

        #[test]
        fn classes_partition_the_grid((w, h, mask) in mask_strategy()) {
            let grid = HexGrid::from_mask(w, h, &mask).unwrap();
            let mut all: Vec<Pixel> = hex_components(&grid, 0)
                .into_iter()
                .chain(hex_components(&grid, 1))
                .flatten()
                .collect();
            all.sort();
            let expected: Vec<Pixel> = (0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect();
            prop_assert_eq!(all, set(expected));
        }

        #[test]
        fn bcc14_is_symmetric_and_irreflexive(p in proptest::array::uniform3(-3i64..3), q in proptest::array::uniform3(-3i64..3)) {
            let pq = bcc14_neighbors(p).contains(&q);
            let qp = bcc14_neighbors(q).contains(&p);
            prop_assert_eq!(pq, qp);
            prop_assert!(!bcc14_neighbors(p).contains(&p));
        }

        #[test]
        fn bcc14_classes_partition(mask in proptest::collection::vec(any::<bool>(), 27)) {
            let grid = Bcc14Grid::new([3, 3, 3], mask).unwrap();
            let total: usize = bcc14_components(&grid, true)
                .iter()
                .chain(bcc14_components(&grid, false).iter())
                .map(Vec::len)
                .sum();
            prop_assert_eq!(total, 27);
        }
    }
}
