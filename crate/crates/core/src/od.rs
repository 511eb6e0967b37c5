//! Ordered designs `OD_η(s, n)`.
//!
//! An `η(n² − n) × s` array over symbols `1..=n` whose rows have distinct
//! entries and in which every ordered pair of distinct symbols appears
//! exactly `η` times in every pair of columns.

use crate::error::{Error, Result};
use crate::field::gf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedDesign {
    n: usize,
    s: usize,
    eta: usize,
    rows: Vec<Vec<usize>>,
}

impl OrderedDesign {
    /// Symbol count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Column count.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn eta(&self) -> usize {
        self.eta
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<usize>> {
        self.rows
    }
}

/// Verifies both ordered-design conditions by exhaustive pair counting and
/// derives `η`.
pub fn verify_od(m: &[Vec<usize>], n: usize, s: usize) -> Result<OrderedDesign> {
    if n < 2 {
        return Err(Error::Dimension(format!("an ordered design needs n >= 2, got {n}")));
    }
    if s == 0 || s > n {
        return Err(Error::Dimension(format!("column count s = {s} must lie in 1..={n}")));
    }
    if m.is_empty() {
        return Err(Error::Dimension("an ordered design has at least one row".into()));
    }
    for (r, row) in m.iter().enumerate() {
        if row.len() != s {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {s}",
                r + 1,
                row.len()
            )));
        }
        if let Some(&x) = row.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::Format(format!("row {} holds symbol {x} outside 1..={n}", r + 1)));
        }
        let mut seen = vec![false; n + 1];
        for &x in row {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedSymbolInRow { row: r + 1 });
            }
        }
    }

    let pairs = n * n - n;
    if s == 1 {
        // No column pairs: only the row count constrains η.
        if !m.len().is_multiple_of(pairs) {
            return Err(Error::Dimension(format!(
                "{} rows is not a multiple of n^2 - n = {pairs}",
                m.len()
            )));
        }
        return Ok(OrderedDesign {
            n,
            s,
            eta: m.len() / pairs,
            rows: m.to_vec(),
        });
    }

    let mut eta = None;
    let mut counts = vec![0usize; n * n];
    for c1 in 0..s {
        for c2 in c1 + 1..s {
            counts.iter_mut().for_each(|c| *c = 0);
            for row in m {
                counts[(row[c1] - 1) * n + (row[c2] - 1)] += 1;
            }
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    let count = counts[x * n + y];
                    let expected = *eta.get_or_insert(count);
                    if count != expected || count == 0 {
                        return Err(Error::PairCountMismatch {
                            columns: (c1 + 1, c2 + 1),
                            pair: (x + 1, y + 1),
                            count,
                            expected: expected.max(1),
                        });
                    }
                }
            }
        }
    }
    Ok(OrderedDesign {
        n,
        s,
        eta: eta.expect("s >= 2 visits at least one column pair"),
        rows: m.to_vec(),
    })
}

/// `OD_1(q, q)` from the affine maps `c ↦ a + m·c` over GF(q).
///
/// Rows are indexed by `(a, m)` with `a` outer and `m ≠ 0` inner, columns by
/// `c`, all in field-element order; element `x` is written as symbol `x + 1`.
pub fn construct_od1(q: usize) -> Result<OrderedDesign> {
    let f = gf(q)?;
    let rows: Vec<Vec<usize>> = (0..q)
        .flat_map(|a| (1..q).map(move |m| (a, m)))
        .map(|(a, m)| (0..q).map(|c| f.add(a, f.mul(m, c)) + 1).collect())
        .collect();
    Ok(OrderedDesign {
        n: q,
        s: q,
        eta: 1,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_od3() -> Vec<Vec<usize>> {
        vec![
            vec![1, 2, 3],
            vec![2, 3, 1],
            vec![3, 1, 2],
            vec![1, 3, 2],
            vec![2, 1, 3],
            vec![3, 2, 1],
        ]
    }

    #[test]
    fn tabulated_od3_has_eta_one() {
        let od = verify_od(&example_od3(), 3, 3).unwrap();
        assert_eq!((od.n(), od.s(), od.eta()), (3, 3, 1));
    }

    #[test]
    fn corrupted_od3_is_rejected() {
        let mut m = example_od3();
        m[0][2] = 2;
        assert!(matches!(
            verify_od(&m, 3, 3),
            Err(Error::RepeatedSymbolInRow { row: 1 })
        ));

        let mut m = example_od3();
        m.swap(0, 1);
        m[0] = vec![1, 3, 2];
        assert!(matches!(verify_od(&m, 3, 3), Err(Error::PairCountMismatch { .. })));
    }

    #[test]
    fn smallest_od() {
        let od = construct_od1(2).unwrap();
        assert_eq!(od.rows(), &[vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn constructed_od3_matches_tabulated_counts() {
        let od = construct_od1(3).unwrap();
        assert_eq!(od.rows().len(), 6);
        let checked = verify_od(od.rows(), 3, 3).unwrap();
        assert_eq!(checked.eta(), 1);
        let mut ours = od.rows().to_vec();
        let mut theirs = example_od3();
        ours.sort();
        theirs.sort();
        // The affine construction over Z_3 yields every permutation of {1,2,3}.
        assert_eq!(ours, theirs);
    }

    #[test]
    fn od4_has_twelve_rows() {
        let od = construct_od1(4).unwrap();
        assert_eq!(od.rows().len(), 12);
        assert_eq!(verify_od(od.rows(), 4, 4).unwrap().eta(), 1);
    }

    #[test]
    fn bad_shapes() {
        assert!(verify_od(&[vec![1, 2]], 1, 2).is_err());
        assert!(verify_od(&[vec![1, 2, 3]], 2, 3).is_err());
        assert!(verify_od(&[vec![1, 4]], 3, 2).is_err());
        assert!(verify_od(&[vec![1, 2], vec![1]], 3, 2).is_err());
        assert!(verify_od(&[], 3, 2).is_err());
    }

    #[test]
    fn single_column_needs_whole_multiples() {
        let m: Vec<Vec<usize>> = (1..=3).flat_map(|x| [vec![x], vec![x]]).collect();
        assert_eq!(verify_od(&m, 3, 1).unwrap().eta(), 1);
        assert!(verify_od(&m[..5], 3, 1).is_err());
    }

    #[test]
    fn eta_two_is_accepted() {
        let mut m = example_od3();
        m.extend(example_od3());
        assert_eq!(verify_od(&m, 3, 3).unwrap().eta(), 2);
    }
}
