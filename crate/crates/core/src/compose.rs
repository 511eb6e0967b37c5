//! Composition of an (r, λ)-design with an ordered design, and
//! permutation extensions of the result.

use crate::design::{DesignMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::od::OrderedDesign;
use crate::rl::{incidence_matrix, BlockDesign};
use crate::SbbdParameters;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedDesign {
    pub design: DesignMatrix,
    /// Parameters the construction guarantees.
    pub predicted: SbbdParameters,
    /// Whether every block is guaranteed to span, i.e. `s > b − r`.
    pub spanning_guaranteed: bool,
}

/// Row `p` of the result is `h_{d_{p1}} | h_{d_{p2}} | … | h_{d_{ps}}`, where
/// `h_i` is row `i` of the incidence matrix and `d` the ordered design.
pub fn compose(design: &BlockDesign, od: &OrderedDesign) -> Result<ComposedDesign> {
    let b = design.b();
    if od.n() != b {
        return Err(Error::Dimension(format!(
            "ordered design has {} symbols but the block design has {b} blocks",
            od.n()
        )));
    }
    let h = incidence_matrix(design);
    let (s, v) = (od.s(), design.v());
    let mut x = IntMatrix::zeros(od.rows().len(), s * v);
    for (p, row) in od.rows().iter().enumerate() {
        for (col, &symbol) in row.iter().enumerate() {
            for (j, &e) in h.row(symbol - 1).iter().enumerate() {
                x.set(p, col * v + j, e);
            }
        }
    }
    let predicted = predicted_parameters(design, od.eta(), 1, s);
    Ok(ComposedDesign {
        design: DesignMatrix::new(s, v, x)?,
        predicted,
        spanning_guaranteed: spanning_guaranteed(s, b, design.r()),
    })
}

/// `Λ = (ηu·r(b−1), ηu·λ(b−1), ηu·r(r−1), ηu·(r²−λ))` with `N = ηu(b² − b)`.
pub fn predicted_parameters(design: &BlockDesign, eta: usize, layers: usize, s: usize) -> SbbdParameters {
    let (b, r, lambda) = (design.b() as i64, design.r() as i64, design.lambda() as i64);
    let scale = (eta * layers) as i64;
    SbbdParameters::new(
        s,
        design.v(),
        (scale * (b * b - b)) as usize,
        scale * r * (b - 1),
        scale * lambda * (b - 1),
        scale * r * (r - 1),
        scale * (r * r - lambda),
    )
}

pub fn spanning_guaranteed(s: usize, b: usize, r: usize) -> bool {
    s + r > b
}

/// `(X_1 P | X_2 P | … | X_{v1} P)`: column `j` of every panel moves to
/// column `perm[j − 1]` (1-based images).
pub fn permute_columns(x: &DesignMatrix, perm: &[usize]) -> Result<DesignMatrix> {
    validate_permutation(perm, x.v2())?;
    let (v1, v2) = (x.v1(), x.v2());
    let mut out = IntMatrix::zeros(x.n(), v1 * v2);
    for k in 0..x.n() {
        let row = x.matrix().row(k);
        for i in 0..v1 {
            for (j, &target) in perm.iter().enumerate() {
                out.set(k, i * v2 + target - 1, row[i * v2 + j]);
            }
        }
    }
    DesignMatrix::new(v1, v2, out)
}

/// Stacks `X` on top of [`permute_columns`]`(X, P)` for each `P` in `perms`.
pub fn permute_extension(x: &DesignMatrix, perms: &[Vec<usize>]) -> Result<DesignMatrix> {
    let mut layers = vec![x.matrix().clone()];
    for perm in perms {
        layers.push(permute_columns(x, perm)?.into_matrix());
    }
    DesignMatrix::new(x.v1(), x.v2(), IntMatrix::vconcat(&layers)?)
}

/// Cyclic shifts `j ↦ j + t (mod v2)` for `t = 1..u`.
pub fn cyclic_shifts(v2: usize, u: usize) -> Vec<Vec<usize>> {
    (1..u).map(|t| (0..v2).map(|j| (j + t) % v2 + 1).collect()).collect()
}

fn validate_permutation(perm: &[usize], v2: usize) -> Result<()> {
    if perm.len() != v2 {
        return Err(Error::Dimension(format!(
            "permutation has length {}, expected {v2}",
            perm.len()
        )));
    }
    let mut seen = vec![false; v2];
    for &t in perm {
        if t == 0 || t > v2 || std::mem::replace(&mut seen[t - 1], true) {
            return Err(Error::Dimension(format!("{perm:?} is not a permutation of 1..={v2}")));
        }
    }
    Ok(())
}
