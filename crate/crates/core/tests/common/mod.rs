#![allow(dead_code)]

use nalgebra::DMatrix;
use sbbd_core::{verify_rl_design, BlockDesign, DesignMatrix, IntMatrix};

/// Nine SB-blocks on `K_(3,3)` with `Λ = (6, 3, 4, 4)`.
pub const EXAMPLE_3X3: [&str; 9] = [
    "011110110",
    "101011011",
    "110101101",
    "011011101",
    "101101110",
    "110110011",
    "011101011",
    "101110101",
    "110011110",
];

pub fn example_3x3() -> DesignMatrix {
    let rows: Vec<Vec<i64>> = EXAMPLE_3X3
        .iter()
        .map(|r| r.bytes().map(|b| i64::from(b - b'0')).collect())
        .collect();
    DesignMatrix::new(3, 3, IntMatrix::from_rows(&rows).unwrap()).unwrap()
}

/// The (r, λ) = (3, 2) design on three points with blocks
/// `{1,2}, {2,3}, {1,3}, {1,2,3}`.
pub fn small_rl() -> BlockDesign {
    verify_rl_design(3, &[vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2, 3]]).unwrap()
}

/// A published OD₁(4, 4), listed as block indices into `small_rl`.
pub const PUBLISHED_OD4: [[usize; 4]; 12] = [
    [1, 2, 3, 4],
    [2, 1, 4, 3],
    [3, 4, 1, 2],
    [4, 3, 2, 1],
    [1, 3, 4, 2],
    [2, 4, 3, 1],
    [3, 1, 2, 4],
    [4, 2, 1, 3],
    [1, 4, 2, 3],
    [2, 3, 1, 4],
    [3, 2, 4, 1],
    [4, 1, 3, 2],
];

/// `SBBD(4, 3, 12)` assembled by hand from `PUBLISHED_OD4` and the incidence
/// rows of `small_rl`.
pub fn published_4x3() -> DesignMatrix {
    let h = [[1, 1, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]];
    let rows: Vec<Vec<i64>> = PUBLISHED_OD4
        .iter()
        .map(|r| r.iter().flat_map(|&s| h[s - 1]).collect())
        .collect();
    DesignMatrix::new(4, 3, IntMatrix::from_rows(&rows).unwrap()).unwrap()
}

/// Eigenvalues of `XᵗX` from a floating-point symmetric eigensolver,
/// ascending.
pub fn numeric_eigenvalues(x: &DesignMatrix) -> Vec<f64> {
    let m = x.matrix();
    let xf = DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c) as f64);
    let mut ev: Vec<f64> = (xf.transpose() * &xf)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Multiset `(value, multiplicity)` expanded and sorted ascending.
pub fn expand(multiset: &[(i64, usize)]) -> Vec<f64> {
    let mut v: Vec<f64> = multiset
        .iter()
        .flat_map(|&(x, m)| std::iter::repeat_n(x as f64, m))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}
