//! Exact integer matrices and the SB-block / design-matrix encoding.
//!
//! Edges `e_ij` of `K_{v1,v2}` are numbered lexicographically: the 1-based
//! column of `e_ij` is `(i - 1) * v2 + j`. A design matrix therefore splits
//! into `v1` consecutive panels of `v2` columns each, panel `i` holding the
//! edges incident with left point `i`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (k, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {cols}",
                    k + 1,
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    /// Zero-based access.
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵗ · self`. 0/1 matrices use bit-packed columns and popcounts;
    /// anything else is accumulated from the nonzero support of each row.
    pub fn gram(&self) -> Self {
        if self.is_binary() {
            return self.binary_gram();
        }
        let n = self.cols;
        let mut g = Self::zeros(n, n);
        let mut support = Vec::with_capacity(n);
        for row in self.row_iter() {
            support.clear();
            support.extend(row.iter().enumerate().filter(|(_, &x)| x != 0));
            for &(a, &xa) in &support {
                let g_row = &mut g.data[a * n..(a + 1) * n];
                for &(b, &xb) in &support {
                    g_row[b] += xa * xb;
                }
            }
        }
        g
    }

    fn binary_gram(&self) -> Self {
        let n = self.cols;
        let words = self.rows.div_ceil(64);
        let mut packed = vec![0u64; n * words];
        for (r, row) in self.row_iter().enumerate() {
            for (c, _) in row.iter().enumerate().filter(|(_, &x)| x == 1) {
                packed[c * words + r / 64] |= 1 << (r % 64);
            }
        }
        let mut g = Self::zeros(n, n);
        for a in 0..n {
            let col_a = &packed[a * words..(a + 1) * words];
            for b in a..n {
                let col_b = &packed[b * words..(b + 1) * words];
                let count: u32 = col_a.iter().zip(col_b).map(|(x, y)| (x & y).count_ones()).sum();
                g.data[a * n + b] = i64::from(count);
                g.data[b * n + a] = i64::from(count);
            }
        }
        g
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        self.row_iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Columns `start..start + width`, in order.
    pub fn column_block(&self, start: usize, width: usize) -> Self {
        let mut out = Self::zeros(self.rows, width);
        for r in 0..self.rows {
            out.data[r * width..(r + 1) * width].copy_from_slice(&self.row(r)[start..start + width]);
        }
        out
    }

    /// Concatenates matrices left to right.
    pub fn hconcat(blocks: &[IntMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Dimension("blocks differ in row count".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Stacks matrices top to bottom.
    pub fn vconcat(blocks: &[IntMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Dimension("blocks differ in column count".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().copied()).collect();
        Ok(Self { rows, cols, data })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// 1-based column index of edge `e_ij`.
pub fn edge_column(v2: usize, i: usize, j: usize) -> usize {
    (i - 1) * v2 + j
}

/// Inverse of [`edge_column`].
pub fn column_edge(v2: usize, column: usize) -> (usize, usize) {
    ((column - 1) / v2 + 1, (column - 1) % v2 + 1)
}

/// A spanning bipartite block: a set of edges `(i, j)` of `K_{v1,v2}`,
/// 1-based on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SbBlock {
    v1: usize,
    v2: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SbBlock {
    pub fn new(v1: usize, v2: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if !(1..=v1).contains(&i) || !(1..=v2).contains(&j) {
                return Err(Error::Format(format!("edge ({i}, {j}) outside K_({v1},{v2})")));
            }
            if !set.insert((i, j)) {
                return Err(Error::Format(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(Self { v1, v2, edges: set })
    }

    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn v2(&self) -> usize {
        self.v2
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Degree of every left point, indexed from 0.
    pub fn left_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.v1];
        for &(i, _) in &self.edges {
            d[i - 1] += 1;
        }
        d
    }

    /// Degree of every right point, indexed from 0.
    pub fn right_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.v2];
        for &(_, j) in &self.edges {
            d[j - 1] += 1;
        }
        d
    }

    /// Incident with every point of both sides.
    pub fn is_spanning(&self) -> bool {
        self.left_degrees().iter().all(|&d| d > 0) && self.right_degrees().iter().all(|&d| d > 0)
    }
}

/// `N × (v1·v2)` (0,1) design matrix; row `k` encodes SB-block `B_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DesignMatrix {
    v1: usize,
    v2: usize,
    matrix: IntMatrix,
}

impl DesignMatrix {
    pub fn new(v1: usize, v2: usize, matrix: IntMatrix) -> Result<Self> {
        if v1 == 0 || v2 == 0 {
            return Err(Error::Dimension("v1 and v2 must be positive".into()));
        }
        if matrix.cols() != v1 * v2 {
            return Err(Error::Dimension(format!(
                "design matrix has {} columns, expected v1*v2 = {}",
                matrix.cols(),
                v1 * v2
            )));
        }
        if let Some(pos) = matrix.as_slice().iter().position(|&x| x != 0 && x != 1) {
            let (r, c) = (pos / matrix.cols() + 1, pos % matrix.cols() + 1);
            return Err(Error::Format(format!(
                "entry ({r}, {c}) = {} is not 0 or 1",
                matrix.as_slice()[pos]
            )));
        }
        Ok(Self { v1, v2, matrix })
    }

    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn v2(&self) -> usize {
        self.v2
    }

    /// Number of SB-blocks `N`.
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    /// Entry for block `k` and edge `e_ij`, all 1-based.
    pub fn has_edge(&self, k: usize, i: usize, j: usize) -> bool {
        self.matrix.get(k - 1, edge_column(self.v2, i, j) - 1) == 1
    }

    /// Row `k` (0-based) reshaped as a `v1 × v2` slice of panels.
    pub fn block_row(&self, k: usize) -> &[i64] {
        self.matrix.row(k)
    }
}

/// Encodes SB-blocks as the rows of a design matrix.
pub fn blocks_to_matrix(blocks: &[SbBlock]) -> Result<DesignMatrix> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::Dimension("at least one block is required".into()))?;
    let (v1, v2) = (first.v1, first.v2);
    let mut m = IntMatrix::zeros(blocks.len(), v1 * v2);
    for (k, block) in blocks.iter().enumerate() {
        if (block.v1, block.v2) != (v1, v2) {
            return Err(Error::Dimension(format!(
                "block {} lives in K_({},{}), expected K_({v1},{v2})",
                k + 1,
                block.v1,
                block.v2
            )));
        }
        for &(i, j) in &block.edges {
            m.set(k, edge_column(v2, i, j) - 1, 1);
        }
    }
    DesignMatrix::new(v1, v2, m)
}

/// Decodes every row of a design matrix into its SB-block.
pub fn matrix_to_blocks(x: &DesignMatrix) -> Vec<SbBlock> {
    x.matrix
        .row_iter()
        .map(|row| SbBlock {
            v1: x.v1,
            v2: x.v2,
            edges: row
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == 1)
                .map(|(c, _)| column_edge(x.v2, c + 1))
                .collect(),
        })
        .collect()
}

/// Splits `X` into its panels `(X_1 | X_2 | … | X_{v1})`.
pub fn submatrix_partition(x: &DesignMatrix) -> Vec<IntMatrix> {
    (0..x.v1).map(|i| x.matrix.column_block(i * x.v2, x.v2)).collect()
}

/// SB-block interchange format with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbBlockFile {
    pub v1: usize,
    pub v2: usize,
    pub blocks: Vec<Vec<[usize; 2]>>,
}

impl SbBlockFile {
    pub fn from_blocks(v1: usize, v2: usize, blocks: &[SbBlock]) -> Self {
        Self {
            v1,
            v2,
            blocks: blocks
                .iter()
                .map(|b| b.edges.iter().map(|&(i, j)| [i, j]).collect())
                .collect(),
        }
    }

    pub fn to_blocks(&self) -> Result<Vec<SbBlock>> {
        self.blocks
            .iter()
            .map(|edges| SbBlock::new(self.v1, self.v2, edges.iter().map(|e| (e[0], e[1]))))
            .collect()
    }

    pub fn to_design(&self) -> Result<DesignMatrix> {
        let blocks = self.to_blocks()?;
        if blocks.is_empty() {
            return DesignMatrix::new(self.v1, self.v2, IntMatrix::zeros(0, self.v1 * self.v2));
        }
        blocks_to_matrix(&blocks)
    }
}
