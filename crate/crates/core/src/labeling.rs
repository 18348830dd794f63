//! Labels for the 1- and 0-cells of a labeled 2D image.
//!
//! Pixels are the principal cells of a 2D Cartesian complex with
//! combinatorial coordinates `(2x, 2y)`. A larger label is lighter.

use thiserror::Error;

use crate::adjacency::DigitalImage;
use crate::cartesian::{CartesianComplex, CartesianError, Cell};
use crate::space::{ElementId, SubsetMask};

pub type Label = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("image extents must be positive, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },
    #[error("{got} labels for a {width}x{height} image")]
    LabelCount {
        got: usize,
        width: usize,
        height: usize,
    },
    #[error("no cell carries label {0}")]
    UnknownLabel(Label),
    #[error(transparent)]
    Cartesian(#[from] CartesianError),
}

/// Row-major single-channel image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage2D {
    width: usize,
    height: usize,
    labels: Vec<Label>,
}

impl GrayImage2D {
    pub fn new(width: usize, height: usize, labels: Vec<Label>) -> Result<Self, LabelError> {
        if width == 0 || height == 0 {
            return Err(LabelError::EmptyImage { width, height });
        }
        if labels.len() != width * height {
            return Err(LabelError::LabelCount {
                got: labels.len(),
                width,
                height,
            });
        }
        Ok(Self {
            width,
            height,
            labels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn get(&self, x: usize, y: usize) -> Label {
        self.labels[y * self.width + x]
    }

    /// Label at `(x, y)` with coordinates clamped into the image.
    fn get_clamped(&self, x: i64, y: i64) -> Label {
        let x = x.clamp(0, self.width as i64 - 1) as usize;
        let y = y.clamp(0, self.height as i64 - 1) as usize;
        self.get(x, y)
    }

    /// Binary image with `label > t` as foreground.
    pub fn threshold(&self, t: Label) -> DigitalImage {
        DigitalImage::new(
            vec![self.width, self.height],
            self.labels.iter().map(|&l| l > t).collect(),
        )
        .expect("extents are positive")
    }

    /// Image holding `label == value` as foreground.
    pub fn class_mask(&self, value: Label) -> DigitalImage {
        DigitalImage::new(
            vec![self.width, self.height],
            self.labels.iter().map(|&l| l == value).collect(),
        )
        .expect("extents are positive")
    }

    /// Applies `f` to every label.
    pub fn map(&self, f: impl Fn(Label) -> Label) -> Self {
        Self {
            width: self.width,
            height: self.height,
            labels: self.labels.iter().map(|&l| f(l)).collect(),
        }
    }

    fn complex(&self) -> CartesianComplex {
        CartesianComplex::new(&[self.width, self.height]).expect("extents are positive")
    }
}

/// Label per cell of the 2D complex of an image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellLabeling {
    complex: CartesianComplex,
    labels: Vec<Label>,
}

impl CellLabeling {
    pub fn complex(&self) -> &CartesianComplex {
        &self.complex
    }

    /// Labels indexed like the complex's cells.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, c: &Cell) -> Result<Label, LabelError> {
        Ok(self.labels[self.complex.index_of(c)?])
    }

    /// Distinct labels in ascending order.
    pub fn values(&self) -> Vec<Label> {
        let mut v = self.labels.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn label_cells(
    img: &GrayImage2D,
    zero_cell: impl Fn(&GrayImage2D, usize, usize) -> Label,
) -> CellLabeling {
    let complex = img.complex();
    let labels = complex
        .cells()
        .map(|c| {
            let (cx, cy) = (c.comb[0], c.comb[1]);
            match (cx % 2, cy % 2) {
                (0, 0) => img.get(cx / 2, cy / 2),
                (1, 0) => img.get(cx / 2, cy / 2).max(img.get(cx / 2 + 1, cy / 2)),
                (0, 1) => img.get(cx / 2, cy / 2).max(img.get(cx / 2, cy / 2 + 1)),
                _ => zero_cell(img, cx.div_ceil(2), cy.div_ceil(2)),
            }
        })
        .collect();
    CellLabeling { complex, labels }
}

/// The four pixels around the 0-cell whose lower-right pixel is `(x0, y0)`:
/// upper-left, upper-right, lower-left, lower-right.
fn corner_pixels(img: &GrayImage2D, x0: usize, y0: usize) -> [Label; 4] {
    [
        img.get(x0 - 1, y0 - 1),
        img.get(x0, y0 - 1),
        img.get(x0 - 1, y0),
        img.get(x0, y0),
    ]
}

/// Every lower cell gets the largest label of its incident pixels.
pub fn max_rule(img: &GrayImage2D) -> CellLabeling {
    label_cells(img, |img, x0, y0| {
        corner_pixels(img, x0, y0).into_iter().max().unwrap()
    })
}

/// 1-cells take the larger of their two pixels. A 0-cell takes the label of
/// its only equal diagonal pair; when both diagonals are equal but differ,
/// the one whose label is rarer in the surrounding 4×4 window (the narrow
/// stripe) wins; otherwise the lightest label wins.
pub fn equnali(img: &GrayImage2D) -> CellLabeling {
    label_cells(img, |img, x0, y0| {
        let [ul, ur, ll, lr] = corner_pixels(img, x0, y0);
        let lightest = ul.max(ur).max(ll).max(lr);
        match (ul == lr, ur == ll) {
            (true, false) => ul,
            (false, true) => ur,
            (true, true) if ul != ur => {
                let count = |label: Label| {
                    let mut n = 0;
                    for y in y0 as i64 - 2..y0 as i64 + 2 {
                        for x in x0 as i64 - 2..x0 as i64 + 2 {
                            if img.get_clamped(x, y) == label {
                                n += 1;
                            }
                        }
                    }
                    n
                };
                let (main, anti) = (count(ul), count(ur));
                match main.cmp(&anti) {
                    std::cmp::Ordering::Less => ul,
                    std::cmp::Ordering::Greater => ur,
                    std::cmp::Ordering::Equal => lightest,
                }
            }
            _ => lightest,
        }
    })
}

/// Components of the cells carrying `value`, connected by incidence.
pub fn label_components(lab: &CellLabeling, value: Label) -> Result<Vec<Vec<Cell>>, LabelError> {
    if !lab.labels.contains(&value) {
        return Err(LabelError::UnknownLabel(value));
    }
    let space = lab.complex.to_lf_space()?;
    let mask = SubsetMask::from_bools(lab.labels.iter().map(|&l| l == value).collect());
    Ok(space
        .components(&mask)
        .into_iter()
        .map(|comp| {
            comp.into_iter()
                .map(|ElementId(i)| lab.complex.cell_at(i))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::a_components;
    use crate::fixtures;
    use proptest::prelude::*;

    fn img(width: usize, rows: &[&[Label]]) -> GrayImage2D {
        GrayImage2D::new(width, rows.len(), rows.concat()).unwrap()
    }

    fn zero_cell(lab: &CellLabeling) -> Label {
        lab.label(&Cell::new(vec![1, 1])).unwrap()
    }

    #[test]
    fn max_rule_examples() {
        let lab = max_rule(&img(2, &[&[5, 7]]));
        assert_eq!(lab.label(&Cell::new(vec![1, 0])).unwrap(), 7);
        assert_eq!(zero_cell(&max_rule(&img(2, &[&[0, 0], &[0, 1]]))), 1);
        let uniform = max_rule(&img(3, &[&[4, 4, 4], &[4, 4, 4]]));
        assert!(uniform.labels().iter().all(|&l| l == 4));
    }

    #[test]
    fn equnali_single_equal_pair() {
        // diagonals (5,5) and (7,9)
        assert_eq!(zero_cell(&equnali(&img(2, &[&[5, 7], &[9, 5]]))), 5);
    }

    #[test]
    fn equnali_narrow_pair() {
        // a 4×4 window around the centre 0-cell: label 5 on the main diagonal
        // only (count 4 with replication off), 7 elsewhere
        let rows: [&[Label]; 4] = [&[5, 7, 7, 7], &[7, 5, 7, 7], &[7, 7, 5, 7], &[7, 7, 7, 5]];
        let lab = equnali(&img(4, &rows));
        assert_eq!(lab.label(&Cell::new(vec![3, 3])).unwrap(), 5);
        // with the labels swapped the rare label is again the winner
        let swapped = img(4, &rows).map(|l| if l == 5 { 7 } else { 5 });
        assert_eq!(equnali(&swapped).label(&Cell::new(vec![3, 3])).unwrap(), 7);
    }

    #[test]
    fn equnali_lightest_fallback() {
        // diagonals (5,8) and (7,6)
        assert_eq!(zero_cell(&equnali(&img(2, &[&[5, 7], &[6, 8]]))), 8);
        // equal counts in the window fall back to the lighter label
        assert_eq!(zero_cell(&equnali(&img(2, &[&[5, 7], &[7, 5]]))), 7);
    }

    #[test]
    fn unknown_label_is_an_error() {
        let lab = equnali(&img(2, &[&[1, 2]]));
        assert_eq!(label_components(&lab, 9), Err(LabelError::UnknownLabel(9)));
        let uniform = equnali(&img(3, &[&[4, 4, 4], &[4, 4, 4]]));
        assert_eq!(label_components(&uniform, 4).unwrap().len(), 1);
    }

    #[test]
    fn two_v_classes_are_connected() {
        let lab = equnali(&fixtures::two_v());
        assert_eq!(label_components(&lab, 0).unwrap().len(), 1);
        assert_eq!(label_components(&lab, 255).unwrap().len(), 1);
    }

    fn gray_strategy(max_label: Label) -> impl Strategy<Value = GrayImage2D> {
        (1usize..=6, 1usize..=6).prop_flat_map(move |(w, h)| {
            proptest::collection::vec(0..=max_label, w * h)
                .prop_map(move |labels| GrayImage2D::new(w, h, labels).unwrap())
        })
    }

    fn has_equal_diagonal(img: &GrayImage2D) -> bool {
        (1..img.height()).any(|y| {
            (1..img.width()).any(|x| {
                let [ul, ur, ll, lr] = corner_pixels(img, x, y);
                ul == lr || ur == ll
            })
        })
    }

    proptest! {
        #[test]
        fn binary_max_rule_matches_graph_components(img in gray_strategy(1)) {
            let lab = max_rule(&img);
            let pixel_sets = |comps: Vec<Vec<Cell>>| {
                let mut sets: Vec<Vec<Vec<usize>>> = comps
                    .into_iter()
                    .map(|c| c.into_iter().filter_map(|cell| cell.point()).collect())
                    .collect();
                sets.sort();
                sets
            };
            let bin = img.threshold(0);
            for (value, index, fg) in [(1, 2, true), (0, 1, false)] {
                let expected = {
                    let mut v = a_components(&bin, index, fg).unwrap();
                    v.sort();
                    v
                };
                let got = if lab.labels().contains(&value) {
                    pixel_sets(label_components(&lab, value).unwrap())
                } else {
                    Vec::new()
                };
                prop_assert_eq!(got, expected);
            }
        }

        #[test]
        fn equnali_is_max_rule_without_equal_diagonals(img in gray_strategy(20)) {
            prop_assume!(!has_equal_diagonal(&img));
            prop_assert_eq!(equnali(&img), max_rule(&img));
        }

        #[test]
        fn increasing_relabeling_commutes(img in gray_strategy(6), shift in 0u16..100, scale in 1u16..5) {
            let f = |l: Label| l * scale + shift;
            let mapped = img.map(f);
            for rule in [max_rule, equnali] {
                let direct = rule(&mapped);
                let after: Vec<Label> = rule(&img).labels().iter().map(|&l| f(l)).collect();
                prop_assert_eq!(direct.labels(), after.as_slice());
            }
        }
    }
}
