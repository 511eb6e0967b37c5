//! (r, λ)-designs, BIBDs and a small catalog of symmetric BIBDs whose block
//! count is a prime power.

use serde::{Deserialize, Serialize};

use crate::design::IntMatrix;
use crate::error::{Error, Result};

/// A verified (r, λ)-design on points `1..=v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDesign {
    v: usize,
    blocks: Vec<Vec<usize>>,
    r: usize,
    lambda: usize,
}

impl BlockDesign {
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of blocks `b`.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Blocks in input order, each sorted ascending, 1-based.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Constant block size, when there is one (the design is then a BIBD).
    pub fn k(&self) -> Option<usize> {
        let k = self.blocks[0].len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }

    pub fn is_bibd(&self) -> bool {
        self.k().is_some()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_bibd() && self.b() == self.v
    }

    pub fn to_file(&self) -> BlockDesignFile {
        BlockDesignFile {
            v: self.v,
            blocks: self.blocks.clone(),
        }
    }
}

/// Checks the replication and pair-balance conditions and derives `r` and `λ`.
///
/// Designs with `λ = 0` are rejected.
pub fn verify_rl_design(v: usize, blocks: &[Vec<usize>]) -> Result<BlockDesign> {
    if v < 2 {
        return Err(Error::Format(format!("a design needs at least 2 points, got {v}")));
    }
    if blocks.is_empty() {
        return Err(Error::Format("a design needs at least one block".into()));
    }
    let mut sorted = Vec::with_capacity(blocks.len());
    for (k, block) in blocks.iter().enumerate() {
        let mut b = block.clone();
        b.sort_unstable();
        if b.is_empty() {
            return Err(Error::Format(format!("block {} is empty", k + 1)));
        }
        if b[0] == 0 || b[b.len() - 1] > v {
            return Err(Error::Format(format!("block {} has a point outside 1..={v}", k + 1)));
        }
        if b.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Format(format!("block {} repeats a point", k + 1)));
        }
        sorted.push(b);
    }

    let mut replication = vec![0usize; v];
    let mut pairs = vec![0usize; v * v];
    for b in &sorted {
        for (idx, &x) in b.iter().enumerate() {
            replication[x - 1] += 1;
            for &y in &b[idx + 1..] {
                pairs[(x - 1) * v + (y - 1)] += 1;
            }
        }
    }

    let r = replication[0];
    if let Some(p) = replication.iter().position(|&c| c != r) {
        return Err(Error::NotRegular {
            point: p + 1,
            count: replication[p],
            expected: r,
        });
    }
    let lambda = pairs[1];
    for x in 0..v {
        for y in x + 1..v {
            let count = pairs[x * v + y];
            if count != lambda || count == 0 {
                return Err(Error::NotPairBalanced {
                    pair: (x + 1, y + 1),
                    count,
                    expected: lambda.max(1),
                });
            }
        }
    }
    Ok(BlockDesign {
        v,
        blocks: sorted,
        r,
        lambda,
    })
}

/// `b × v` incidence matrix; row `i` marks the points of block `i`.
pub fn incidence_matrix(d: &BlockDesign) -> IntMatrix {
    let mut h = IntMatrix::zeros(d.b(), d.v);
    for (i, block) in d.blocks.iter().enumerate() {
        for &p in block {
            h.set(i, p - 1, 1);
        }
    }
    h
}

/// Develops `base_block ⊂ Z_modulus` cyclically. Residue `x` becomes point `x + 1`.
pub fn symmetric_bibd_from_difference_set(modulus: usize, base_block: &[usize]) -> Result<BlockDesign> {
    let not_a_difference_set = || Error::NotADifferenceSet {
        modulus,
        base: base_block.to_vec(),
    };
    if base_block.is_empty() || base_block.iter().any(|&x| x >= modulus) {
        return Err(not_a_difference_set());
    }
    let blocks: Vec<Vec<usize>> = (0..modulus)
        .map(|t| base_block.iter().map(|&x| (x + t) % modulus + 1).collect())
        .collect();
    verify_rl_design(modulus, &blocks).map_err(|_| not_a_difference_set())
}

/// One entry of the shipped catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
    pub remark: &'static str,
    base: Base,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    /// Nonzero quadratic residues modulo a prime `p ≡ 3 (mod 4)`.
    QuadraticResidues,
    Explicit(&'static [usize]),
}

impl CatalogEntry {
    pub fn params(&self) -> (usize, usize, usize, usize, usize) {
        (self.v, self.b, self.r, self.k, self.lambda)
    }

    pub fn base_block(&self) -> Vec<usize> {
        match self.base {
            Base::QuadraticResidues => quadratic_residues(self.v),
            Base::Explicit(b) => b.to_vec(),
        }
    }

    pub fn build(&self) -> Result<BlockDesign> {
        symmetric_bibd_from_difference_set(self.v, &self.base_block())
    }
}

const fn qr(id: &'static str, p: usize, remark: &'static str) -> CatalogEntry {
    CatalogEntry {
        id,
        v: p,
        b: p,
        r: (p - 1) / 2,
        k: (p - 1) / 2,
        lambda: (p - 3) / 4,
        remark,
        base: Base::QuadraticResidues,
    }
}

/// Symmetric BIBDs with a prime-power number of blocks, all developed from
/// cyclic difference sets.
pub static CATALOG: &[CatalogEntry] = &[
    qr("fano", 7, "PG(2,2)"),
    qr("qr11", 11, ""),
    CatalogEntry {
        id: "pg23",
        v: 13,
        b: 13,
        r: 4,
        k: 4,
        lambda: 1,
        remark: "PG(2,3)",
        base: Base::Explicit(&[0, 1, 3, 9]),
    },
    qr("qr19", 19, ""),
    qr("qr23", 23, ""),
    qr("qr31", 31, "PG(4,2)"),
    qr("qr43", 43, ""),
    qr("qr47", 47, ""),
    qr("qr59", 59, ""),
    qr("qr67", 67, ""),
    qr("qr71", 71, ""),
    qr("qr79", 79, ""),
];

fn quadratic_residues(p: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (1..p).map(|x| x * x % p).collect();
    r.sort_unstable();
    r.dedup();
    r
}

pub fn catalog_lookup(v: usize, b: usize, r: usize, k: usize, lambda: usize) -> Result<BlockDesign> {
    CATALOG
        .iter()
        .find(|e| e.params() == (v, b, r, k, lambda))
        .ok_or(Error::NotInCatalog((v, b, r, k, lambda)))?
        .build()
}

/// Looks up a catalog design by identifier; `qr7` is accepted for `fano`.
pub fn catalog_by_id(id: &str) -> Result<BlockDesign> {
    let id = if id == "qr7" { "fano" } else { id };
    CATALOG
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCatalogId(id.to_string()))?
        .build()
}

/// Block-design interchange format: `{"v": int, "blocks": [[points]]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDesignFile {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockDesignFile {
    pub fn verify(&self) -> Result<BlockDesign> {
        verify_rl_design(self.v, &self.blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_rl() -> BlockDesign {
        verify_rl_design(3, &[vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn unequal_block_sizes_are_an_rl_design_but_not_a_bibd() {
        let d = small_rl();
        assert_eq!((d.v(), d.b(), d.r(), d.lambda()), (3, 4, 3, 2));
        assert_eq!(d.k(), None);
        assert!(!d.is_bibd());
    }

    #[test]
    fn incidence_of_small_rl_design() {
        let h = incidence_matrix(&small_rl());
        let expected = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]]).unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn lambda_zero_is_rejected() {
        let err = verify_rl_design(2, &[vec![1], vec![2]]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotPairBalanced {
                pair: (1, 2),
                count: 0,
                ..
            }
        ));
    }

    #[test]
    fn non_regular_design_is_rejected() {
        let err = verify_rl_design(3, &[vec![1, 2, 3], vec![1, 2]]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotRegular {
                point: 3,
                count: 1,
                expected: 2
            }
        ));
    }

    #[test]
    fn unbalanced_pairs_are_rejected() {
        let err = verify_rl_design(4, &[vec![1, 2], vec![3, 4], vec![1, 3], vec![2, 4]]).unwrap_err();
        assert!(matches!(err, Error::NotPairBalanced { .. }));
    }

    #[test]
    fn malformed_blocks() {
        assert!(verify_rl_design(3, &[vec![]]).is_err());
        assert!(verify_rl_design(3, &[vec![0, 1]]).is_err());
        assert!(verify_rl_design(3, &[vec![1, 4]]).is_err());
        assert!(verify_rl_design(3, &[vec![1, 1, 2]]).is_err());
        assert!(verify_rl_design(1, &[vec![1]]).is_err());
    }

    #[test]
    fn difference_set_failure() {
        assert!(matches!(
            symmetric_bibd_from_difference_set(7, &[0, 1, 2]),
            Err(Error::NotADifferenceSet { .. })
        ));
        assert!(symmetric_bibd_from_difference_set(7, &[7]).is_err());
    }

    #[test]
    fn quadratic_residue_bases() {
        assert_eq!(quadratic_residues(7), vec![1, 2, 4]);
        assert_eq!(quadratic_residues(11), vec![1, 3, 4, 5, 9]);
    }

    #[test]
    fn unknown_entries() {
        assert!(matches!(
            catalog_lookup(7, 49, 21, 3, 7),
            Err(Error::NotInCatalog((7, 49, 21, 3, 7)))
        ));
        assert!(matches!(catalog_by_id("nope"), Err(Error::UnknownCatalogId(_))));
        assert_eq!(catalog_by_id("qr7").unwrap(), catalog_by_id("fano").unwrap());
    }
}
