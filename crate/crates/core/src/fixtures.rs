//! Small canonical spaces and images used by tests, benches and the CLI.

use crate::labeling::GrayImage2D;
use crate::space::{ElementId, LfSpace};

/// Khalimsky interval with five elements; even index = open cell.
pub fn k5() -> LfSpace {
    LfSpace::new(vec![
        vec![0],
        vec![0, 1, 2],
        vec![2],
        vec![2, 3, 4],
        vec![4],
    ])
    .unwrap()
}

pub fn singleton() -> LfSpace {
    LfSpace::new(vec![vec![0]]).unwrap()
}

/// `SN(a) = SN(b) = {a, b}`.
pub fn symmetric_pair() -> LfSpace {
    LfSpace::new(vec![vec![0, 1], vec![0, 1]]).unwrap()
}

/// `SN(a) = {a,b}`, `SN(b) = {b,c}`, `SN(c) = {c}`.
pub fn nontransitive_chain() -> LfSpace {
    LfSpace::new(vec![vec![0, 1], vec![1, 2], vec![2]]).unwrap()
}

#[derive(Debug, Clone, Copy)]
pub struct GradedNames {
    pub bottom: ElementId,
    pub edge: ElementId,
    pub face: ElementId,
    pub top: ElementId,
    pub other_bottom: ElementId,
}

/// Chain of cells `p < e < f < v` of dimensions 0..3 with a second 0-cell
/// `q` on the same edge.
pub fn graded_chain() -> (LfSpace, GradedNames) {
    let space = LfSpace::new(vec![
        vec![0, 1, 2, 3],
        vec![1, 2, 3],
        vec![2, 3],
        vec![3],
        vec![4, 1, 2, 3],
    ])
    .unwrap()
    .with_names(["p", "e", "f", "v", "q"].map(String::from).to_vec())
    .unwrap();
    let names = GradedNames {
        bottom: ElementId(0),
        edge: ElementId(1),
        face: ElementId(2),
        top: ElementId(3),
        other_bottom: ElementId(4),
    };
    (space, names)
}

/// Points of a `width × height` patch; `(x + y)` odd points are open
/// (`SN = {self}`), even points are closed and their SN holds their
/// 4-neighbors. Element index is `y * width + x`.
pub fn odd_even_space(width: usize, height: usize) -> LfSpace {
    let mut sn = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let mut list = vec![y * width + x];
            if (x + y) % 2 == 0 {
                if x > 0 {
                    list.push(y * width + x - 1);
                }
                if x + 1 < width {
                    list.push(y * width + x + 1);
                }
                if y > 0 {
                    list.push((y - 1) * width + x);
                }
                if y + 1 < height {
                    list.push((y + 1) * width + x);
                }
            }
            sn.push(list);
        }
    }
    LfSpace::new(sn).unwrap()
}

/// Two-V image: `#` is black (label 0), `.` is white (label 255).
pub const TWO_V_ROWS: [&str; 8] = [
    "........", ".#....#.", "..#..#..", "...##...", "#.####.#", "##.##.##", "########", "########",
];

pub fn two_v() -> GrayImage2D {
    let labels = TWO_V_ROWS
        .iter()
        .flat_map(|row| row.bytes().map(|b| if b == b'#' { 0 } else { 255 }))
        .collect();
    GrayImage2D::new(8, 8, labels).unwrap()
}
