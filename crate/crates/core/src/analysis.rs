//! Exact verification of the SBBD conditions, the closed-form spectrum of a
//! double completely symmetric information matrix, its Moore–Penrose
//! inverse, and the A-optimality report.
//!
//! With `a = μ − λ12`, `b = λ12`, `c = λ21 − λ22`, `d = λ22` the information
//! matrix decomposes over the centering projectors `A1 = I − J/v1`,
//! `A2 = J/v1`, `B1 = I − J/v2`, `B2 = J/v2` as
//!
//! ```text
//! XᵗX = α A1⊗B1 + β A1⊗B2 + γ A2⊗B1 + δ A2⊗B2
//! α = a − c                 multiplicity (v1−1)(v2−1)
//! β = a − c + (b − d)·v2    multiplicity v1−1
//! γ = a + c·(v1 − 1)        multiplicity v2−1
//! δ = a + b·v2 + (v1 − 1)(c + d·v2)
//! ```

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::design::{column_edge, edge_column, DesignMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::rational::{integer, rational, to_ratio_string, RatMatrix, Rational};
use crate::SbbdParameters;

/// `XᵗX` together with its `(μ, λ12, λ21, λ22)` when it is double completely
/// symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationMatrix {
    pub v1: usize,
    pub v2: usize,
    pub dense: IntMatrix,
    pub dcs: Option<(i64, i64, i64, i64)>,
}

pub fn information_matrix(x: &DesignMatrix) -> InformationMatrix {
    let dense = x.matrix().gram();
    let dcs = pair_scan(&dense, x.v1(), x.v2()).ok().flatten();
    InformationMatrix {
        v1: x.v1(),
        v2: x.v2(),
        dense,
        dcs,
    }
}

/// The five defining conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// (I) every block meets every point of both sides.
    Spanning,
    /// (II) every edge appears `μ` times.
    Replication,
    /// (III) edges sharing a left point appear together `λ12` times.
    SharedLeftPoint,
    /// (IV) edges sharing a right point appear together `λ21` times.
    SharedRightPoint,
    /// (V) disjoint edges appear together `λ22` times.
    DisjointEdges,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::Spanning => "I",
            Condition::Replication => "II",
            Condition::SharedLeftPoint => "III",
            Condition::SharedRightPoint => "IV",
            Condition::DisjointEdges => "V",
        }
    }
}

/// Where a condition fails; all indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    Edge((usize, usize)),
    EdgePair((usize, usize), (usize, usize)),
    UncoveredLeftPoint { block: usize, point: usize },
    UncoveredRightPoint { block: usize, point: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Witness,
    pub found: i64,
    pub expected: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition ({}) ", self.condition.label())?;
        match self.witness {
            Witness::Edge((i, j)) => write!(
                f,
                "edge e_{{{i},{j}}} appears {} times, expected {}",
                self.found, self.expected
            ),
            Witness::EdgePair((i, j), (k, l)) => write!(
                f,
                "edges e_{{{i},{j}}} and e_{{{k},{l}}} appear together {} times, expected {}",
                self.found, self.expected
            ),
            Witness::UncoveredLeftPoint { block, point } => {
                write!(f, "block {block} misses left point {point}")
            }
            Witness::UncoveredRightPoint { block, point } => {
                write!(f, "block {block} misses right point {point}")
            }
        }
    }
}

impl Violation {
    pub fn to_json(&self) -> Value {
        let witness = match self.witness {
            Witness::Edge((i, j)) => json!({"edges": [[i, j]]}),
            Witness::EdgePair((i, j), (k, l)) => json!({"edges": [[i, j], [k, l]]}),
            Witness::UncoveredLeftPoint { block, point } => json!({"block": block, "left_point": point}),
            Witness::UncoveredRightPoint { block, point } => json!({"block": block, "right_point": point}),
        };
        json!({
            "condition": self.condition.label(),
            "witness": witness,
            "found": self.found,
            "expected": self.expected,
            "message": self.to_string(),
        })
    }
}

/// `(μ, λ12, λ21, λ22)`.
type Lambda = (i64, i64, i64, i64);

/// Scans every panel product `X_iᵗ X_j` against the reference values read at
/// `e_11`. Returns the parameters, or one violation per failed condition.
fn pair_scan(dense: &IntMatrix, v1: usize, v2: usize) -> std::result::Result<Option<Lambda>, Vec<Violation>> {
    if v1 < 2 || v2 < 2 {
        return Ok(None);
    }
    let at =
        |e: (usize, usize), f: (usize, usize)| dense.get(edge_column(v2, e.0, e.1) - 1, edge_column(v2, f.0, f.1) - 1);
    let mu = at((1, 1), (1, 1));
    let l12 = at((1, 1), (1, 2));
    let l21 = at((1, 1), (2, 1));
    let l22 = at((1, 1), (2, 2));

    let mut first: [Option<Violation>; 4] = [None, None, None, None];
    let n = v1 * v2;
    for c1 in 1..=n {
        let e = column_edge(v2, c1);
        for c2 in c1..=n {
            let f = column_edge(v2, c2);
            let (slot, condition, expected) = match (e.0 == f.0, e.1 == f.1) {
                (true, true) => (0, Condition::Replication, mu),
                (true, false) => (1, Condition::SharedLeftPoint, l12),
                (false, true) => (2, Condition::SharedRightPoint, l21),
                (false, false) => (3, Condition::DisjointEdges, l22),
            };
            let found = dense.get(c1 - 1, c2 - 1);
            if found != expected && first[slot].is_none() {
                let witness = if c1 == c2 {
                    Witness::Edge(e)
                } else {
                    Witness::EdgePair(e, f)
                };
                first[slot] = Some(Violation {
                    condition,
                    witness,
                    found,
                    expected,
                });
            }
        }
    }
    let violations: Vec<Violation> = first.into_iter().flatten().collect();
    if violations.is_empty() {
        Ok(Some((mu, l12, l21, l22)))
    } else {
        Err(violations)
    }
}

/// The first uncovered point of any block, if one exists.
pub fn spanning_violation(x: &DesignMatrix) -> Option<Violation> {
    let (v1, v2) = (x.v1(), x.v2());
    for k in 0..x.n() {
        let row = x.block_row(k);
        for i in 0..v1 {
            if row[i * v2..(i + 1) * v2].iter().all(|&e| e == 0) {
                return Some(Violation {
                    condition: Condition::Spanning,
                    witness: Witness::UncoveredLeftPoint {
                        block: k + 1,
                        point: i + 1,
                    },
                    found: 0,
                    expected: 1,
                });
            }
        }
        for j in 0..v2 {
            if (0..v1).all(|i| row[i * v2 + j] == 0) {
                return Some(Violation {
                    condition: Condition::Spanning,
                    witness: Witness::UncoveredRightPoint {
                        block: k + 1,
                        point: j + 1,
                    },
                    found: 0,
                    expected: 1,
                });
            }
        }
    }
    None
}

/// Outcome of [`check_sbbd`]: conditions (II)–(V) hold, spanning reported
/// separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbbdCheck {
    pub params: SbbdParameters,
    pub spanning: bool,
    pub spanning_violation: Option<Violation>,
}

/// Verifies conditions (II)–(V) exactly and reports (I).
///
/// A design passing (II)–(V) but not (I) is an SBBD* and still returns `Ok`
/// with `spanning == false`.
pub fn check_sbbd(x: &DesignMatrix) -> Result<SbbdCheck> {
    if x.v1() < 2 || x.v2() < 2 {
        return Err(Error::Dimension(format!(
            "SBBD conditions need v1, v2 >= 2, got ({}, {})",
            x.v1(),
            x.v2()
        )));
    }
    if x.n() == 0 {
        return Err(Error::Dimension("design has no blocks".into()));
    }
    let dense = x.matrix().gram();
    let (mu, l12, l21, l22) = pair_scan(&dense, x.v1(), x.v2())
        .map_err(Error::ViolatedConditions)?
        .expect("dimensions checked above");
    let spanning_violation = spanning_violation(x);
    Ok(SbbdCheck {
        params: SbbdParameters::new(x.v1(), x.v2(), x.n(), mu, l12, l21, l22),
        spanning: spanning_violation.is_none(),
        spanning_violation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSummary {
    pub v1: usize,
    pub v2: usize,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub m_alpha: usize,
    pub m_beta: usize,
    pub m_gamma: usize,
    pub m_delta: usize,
    /// `trace(XᵗX) = μ·v1·v2`.
    pub trace: i64,
}

impl SpectralSummary {
    /// Distinct eigenvalues with their total multiplicities, largest first.
    pub fn multiset(&self) -> Vec<(i64, usize)> {
        let mut merged: Vec<(i64, usize)> = Vec::new();
        for (value, mult) in [
            (self.alpha, self.m_alpha),
            (self.beta, self.m_beta),
            (self.gamma, self.m_gamma),
            (self.delta, self.m_delta),
        ] {
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|(v, _)| *v == value) {
                Some(entry) => entry.1 += mult,
                None => merged.push((value, mult)),
            }
        }
        merged.sort_by_key(|m| std::cmp::Reverse(m.0));
        merged
    }

    /// All `v1·v2` eigenvalues, largest first.
    pub fn eigenvalues(&self) -> Vec<i64> {
        self.multiset()
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn weighted_sum(&self) -> i64 {
        self.alpha * self.m_alpha as i64
            + self.beta * self.m_beta as i64
            + self.gamma * self.m_gamma as i64
            + self.delta * self.m_delta as i64
    }
}

/// Closed-form eigenvalues of a double completely symmetric information matrix.
pub fn spectrum(info: &InformationMatrix) -> Result<SpectralSummary> {
    let (mu, l12, l21, l22) = info.dcs.ok_or(Error::MissingDcs)?;
    let (v1, v2) = (info.v1 as i64, info.v2 as i64);
    let (a, b, c, d) = (mu - l12, l12, l21 - l22, l22);
    let summary = SpectralSummary {
        v1: info.v1,
        v2: info.v2,
        alpha: a - c,
        beta: a - c + (b - d) * v2,
        gamma: a + c * (v1 - 1),
        delta: a + b * v2 + (v1 - 1) * (c + d * v2),
        m_alpha: (info.v1 - 1) * (info.v2 - 1),
        m_beta: info.v1 - 1,
        m_gamma: info.v2 - 1,
        m_delta: 1,
        trace: (0..info.dense.rows()).map(|k| info.dense.get(k, k)).sum(),
    };
    debug_assert_eq!(summary.weighted_sum(), summary.trace);
    debug_assert_eq!(summary.trace, mu * v1 * v2);
    Ok(summary)
}

/// Integer Helmert contrasts of length `n`: `(1, …, 1, −i, 0, …, 0)` with
/// `i` leading ones, for `i = 1..n`. Squared norm of the `i`-th is `i(i+1)`.
pub fn helmert_vectors(n: usize) -> Vec<Vec<i64>> {
    (1..n)
        .map(|i| {
            (0..n)
                .map(|k| match k.cmp(&i) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Equal => -(i as i64),
                    std::cmp::Ordering::Greater => 0,
                })
                .collect()
        })
        .collect()
}

fn kron(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Confirms every claimed eigenpair by exact multiplication: `p_i⊗q_j ↦ α`,
/// `p_i⊗1 ↦ β`, `1⊗q_j ↦ γ`, `1⊗1 ↦ δ`, with Helmert `p_i`, `q_j`.
pub fn verify_eigenvectors(info: &InformationMatrix, summary: &SpectralSummary) -> std::result::Result<(), String> {
    let ones1 = vec![1i64; info.v1];
    let ones2 = vec![1i64; info.v2];
    let p = helmert_vectors(info.v1);
    let q = helmert_vectors(info.v2);
    let mut cases: Vec<(&str, Vec<i64>, i64)> = Vec::new();
    for pi in &p {
        for qj in &q {
            cases.push(("alpha", kron(pi, qj), summary.alpha));
        }
        cases.push(("beta", kron(pi, &ones2), summary.beta));
    }
    for qj in &q {
        cases.push(("gamma", kron(&ones1, qj), summary.gamma));
    }
    cases.push(("delta", kron(&ones1, &ones2), summary.delta));
    for (name, vec, value) in cases {
        let image = info.dense.mul_vec(&vec);
        if image.iter().zip(&vec).any(|(&y, &x)| y != value * x) {
            return Err(format!("{name} = {value} fails for eigenvector {vec:?}"));
        }
    }
    Ok(())
}

/// Exact Moore–Penrose inverse `Σ (1/θ) A_s⊗B_t` over the nonzero
/// eigenvalues `θ ∈ {α, β, γ, δ}`.
pub fn generalized_inverse(info: &InformationMatrix) -> Result<RatMatrix> {
    let s = spectrum(info)?;
    if [s.alpha, s.beta, s.gamma, s.delta].iter().all(|&e| e == 0) {
        return Err(Error::DegenerateDesign);
    }
    let inv = |e: i64| if e == 0 { integer(0) } else { rational(1, e) };
    let (ia, ib, ig, id) = (inv(s.alpha), inv(s.beta), inv(s.gamma), inv(s.delta));
    let (v1, v2) = (info.v1, info.v2);
    let centered = |same: bool, n: usize| -> Rational {
        let mean = rational(1, n as i64);
        if same {
            integer(1) - mean
        } else {
            -mean
        }
    };
    let n = v1 * v2;
    Ok(RatMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / v2, r % v2);
        let (k, l) = (c / v2, c % v2);
        let a1 = centered(i == k, v1);
        let a2 = rational(1, v1 as i64);
        let b1 = centered(j == l, v2);
        let b2 = rational(1, v2 as i64);
        let mut g = Rational::zero();
        for (coef, x, y) in [(&ia, &a1, &b1), (&ib, &a1, &b2), (&ig, &a2, &b1), (&id, &a2, &b2)] {
            if !coef.is_zero() {
                g += coef * x * y;
            }
        }
        g
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockClassification {
    pub semi_regular: bool,
    pub regular: bool,
    /// Common degree of left points, when every block agrees.
    pub k1: Option<usize>,
    /// Common degree of right points, when every block agrees.
    pub k2: Option<usize>,
}

/// Semi-regular: every block gives each left point degree `k1` and each right
/// point degree `k2`, the same across all blocks. Regular: additionally
/// `k1 = k2`.
pub fn classify_blocks(x: &DesignMatrix) -> BlockClassification {
    let (v1, v2) = (x.v1(), x.v2());
    let mut k1: Option<usize> = None;
    let mut k2: Option<usize> = None;
    let mut left_ok = x.n() > 0;
    let mut right_ok = x.n() > 0;
    for k in 0..x.n() {
        let row = x.block_row(k);
        for i in 0..v1 {
            let deg = row[i * v2..(i + 1) * v2].iter().sum::<i64>() as usize;
            left_ok &= *k1.get_or_insert(deg) == deg;
        }
        for j in 0..v2 {
            let deg = (0..v1).map(|i| row[i * v2 + j]).sum::<i64>() as usize;
            right_ok &= *k2.get_or_insert(deg) == deg;
        }
    }
    let semi_regular = left_ok && right_ok;
    let (k1, k2) = (k1.filter(|_| left_ok), k2.filter(|_| right_ok));
    BlockClassification {
        semi_regular,
        regular: semi_regular && k1 == k2,
        k1,
        k2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityReport {
    pub params: SbbdParameters,
    pub spectrum: SpectralSummary,
    pub classification: BlockClassification,
    /// Conditions (I)–(V) all hold.
    pub is_sbbd: bool,
    pub is_spanning: bool,
    pub is_variance_balanced: bool,
    pub is_semi_regular: bool,
    pub is_regular: bool,
    /// `Σ 1/α_i` over the `(v1−1)(v2−1)` basic-contrast eigenvalues.
    pub a_criterion: Rational,
    /// `(v1−1)²(v2−1)² / (μ(v1v2 − k))` with `k = k1·v1`; semi-regular designs only.
    pub a_lower_bound: Option<Rational>,
    /// `N ≥ (v1−1)(v2−1)`, the size assumption of the comparison class.
    pub omega_size_ok: bool,
    pub is_a_optimal_in_omega: bool,
}

/// Full A-optimality analysis of a design.
///
/// Fails with the violated conditions when (II)–(V) do not hold, and with
/// [`Error::ContrastsNotEstimable`] when `α ≤ 0`.
pub fn a_optimality(x: &DesignMatrix) -> Result<OptimalityReport> {
    let check = check_sbbd(x)?;
    let info = information_matrix(x);
    let spectrum = spectrum(&info)?;
    if spectrum.alpha <= 0 {
        return Err(Error::ContrastsNotEstimable { alpha: spectrum.alpha });
    }
    let classification = classify_blocks(x);
    let (v1, v2) = (x.v1() as i64, x.v2() as i64);
    let m_alpha = spectrum.m_alpha as i64;
    let a_criterion = rational(m_alpha, spectrum.alpha);
    let a_lower_bound = match (classification.semi_regular, classification.k1) {
        (true, Some(k1)) => {
            let k = k1 as i64 * v1;
            let denom = check.params.mu * (v1 * v2 - k);
            (denom > 0).then(|| rational(m_alpha * m_alpha, denom))
        }
        _ => None,
    };
    let omega_size_ok = x.n() as i64 >= m_alpha;
    let is_a_optimal_in_omega =
        check.spanning && classification.semi_regular && omega_size_ok && a_lower_bound.as_ref() == Some(&a_criterion);
    Ok(OptimalityReport {
        params: check.params,
        spectrum,
        classification,
        is_sbbd: check.spanning,
        is_spanning: check.spanning,
        is_variance_balanced: true,
        is_semi_regular: classification.semi_regular,
        is_regular: classification.regular,
        a_criterion,
        a_lower_bound,
        omega_size_ok,
        is_a_optimal_in_omega,
    })
}

impl OptimalityReport {
    pub fn to_json(&self) -> Value {
        let p = &self.params;
        json!({
            "v1": p.v1,
            "v2": p.v2,
            "n": p.n,
            "lambda": [p.mu, p.lambda12, p.lambda21, p.lambda22],
            "spanning": self.is_spanning,
            "spectrum": self.spectrum.multiset().iter()
                .map(|(v, m)| json!({"value": v.to_string(), "mult": m}))
                .collect::<Vec<_>>(),
            "a_criterion": to_ratio_string(&self.a_criterion),
            "a_lower_bound": self.a_lower_bound.as_ref().map(to_ratio_string),
            "semi_regular": self.is_semi_regular,
            "regular": self.is_regular,
            "k1": self.classification.k1,
            "k2": self.classification.k2,
            "omega_size_ok": self.omega_size_ok,
            "a_optimal_in_omega": self.is_a_optimal_in_omega,
        })
    }
}

impl fmt::Display for OptimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.spectrum;
        writeln!(f, "{}", self.params)?;
        writeln!(f, "spanning: {}", self.is_spanning)?;
        writeln!(f, "eigenvalues (closed form):")?;
        for (name, value, mult) in [
            ("alpha", s.alpha, s.m_alpha),
            ("beta", s.beta, s.m_beta),
            ("gamma", s.gamma, s.m_gamma),
            ("delta", s.delta, s.m_delta),
        ] {
            writeln!(f, "  {name:<6} {value:>8}  x{mult}")?;
        }
        let spectrum: Vec<String> = s.multiset().iter().map(|(v, m)| format!("{v} (x{m})")).collect();
        writeln!(f, "spectrum: {}", spectrum.join(", "))?;
        writeln!(f, "A-criterion: {}", to_ratio_string(&self.a_criterion))?;
        match &self.a_lower_bound {
            Some(b) => writeln!(f, "A lower bound: {}", to_ratio_string(b))?,
            None => writeln!(f, "A lower bound: n/a (blocks not semi-regular)")?,
        }
        match (self.classification.k1, self.classification.k2) {
            (Some(k1), Some(k2)) if self.is_semi_regular => writeln!(
                f,
                "semi-regular: true (k1 = {k1}, k2 = {k2}), regular: {}",
                self.is_regular
            )?,
            _ => writeln!(f, "semi-regular: false, regular: false")?,
        }
        if !self.omega_size_ok {
            writeln!(f, "note: N < (v1-1)(v2-1); outside the comparison class")?;
        }
        write!(f, "A-optimal in class: {}", self.is_a_optimal_in_omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(v1: usize, v2: usize, rows: &[&[i64]]) -> DesignMatrix {
        DesignMatrix::new(v1, v2, IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn all_ones_design() {
        let x = design(2, 2, &[&[1, 1, 1, 1], &[1, 1, 1, 1]]);
        let info = information_matrix(&x);
        assert_eq!(info.dcs, Some((2, 2, 2, 2)));
        assert_eq!(info.dense.as_slice(), &[2; 16]);
        let c = classify_blocks(&x);
        assert!(c.semi_regular && c.regular);
        assert_eq!((c.k1, c.k2), (Some(2), Some(2)));
        assert!(matches!(
            a_optimality(&x),
            Err(Error::ContrastsNotEstimable { alpha: 0 })
        ));
    }

    #[test]
    fn single_complete_block_degrees() {
        let x = design(2, 3, &[&[1; 6]]);
        let c = classify_blocks(&x);
        assert_eq!((c.k1, c.k2), (Some(3), Some(2)));
        assert!(c.semi_regular && !c.regular);
    }

    #[test]
    fn helmert_vectors_are_orthogonal_contrasts() {
        for n in 2..8 {
            let h = helmert_vectors(n);
            assert_eq!(h.len(), n - 1);
            for (a, u) in h.iter().enumerate() {
                assert_eq!(u.iter().sum::<i64>(), 0);
                let norm: i64 = u.iter().map(|x| x * x).sum();
                assert_eq!(norm, ((a + 1) * (a + 2)) as i64);
                for w in &h[a + 1..] {
                    assert_eq!(u.iter().zip(w).map(|(x, y)| x * y).sum::<i64>(), 0);
                }
            }
        }
    }

    #[test]
    fn scaled_identity_inverse() {
        // μ = n, all λ = 0: XᵗX = n·I.
        let n = 3;
        let dense = {
            let mut m = IntMatrix::zeros(4, 4);
            for k in 0..4 {
                m.set(k, k, n);
            }
            m
        };
        let info = InformationMatrix {
            v1: 2,
            v2: 2,
            dense,
            dcs: Some((n, 0, 0, 0)),
        };
        let s = spectrum(&info).unwrap();
        assert_eq!((s.alpha, s.beta, s.gamma, s.delta), (n, n, n, n));
        let g = generalized_inverse(&info).unwrap();
        let expected = RatMatrix::from_fn(4, 4, |r, c| if r == c { rational(1, n) } else { integer(0) });
        assert_eq!(g, expected);
    }

    #[test]
    fn missing_dcs_and_degenerate() {
        let x = design(2, 2, &[&[1, 0, 0, 0]]);
        let info = information_matrix(&x);
        assert_eq!(info.dcs, None);
        assert_eq!(spectrum(&info), Err(Error::MissingDcs));
        assert_eq!(generalized_inverse(&info), Err(Error::MissingDcs));
        let zero = InformationMatrix {
            v1: 2,
            v2: 2,
            dense: IntMatrix::zeros(4, 4),
            dcs: Some((0, 0, 0, 0)),
        };
        assert_eq!(generalized_inverse(&zero), Err(Error::DegenerateDesign));
    }

    #[test]
    fn violations_name_conditions_and_edges() {
        let x = design(2, 2, &[&[1, 0, 0, 0]]);
        let Err(Error::ViolatedConditions(v)) = check_sbbd(&x) else {
            panic!("expected violations")
        };
        assert_eq!(v[0].condition, Condition::Replication);
        assert_eq!(v[0].witness, Witness::Edge((1, 2)));
        assert!(v[0].to_string().starts_with("condition (II)"));
    }

    #[test]
    fn non_spanning_design_is_reported_not_rejected() {
        // Each edge once, every pair of edges together zero times except in
        // the one all-edges block, which is still pair balanced.
        let x = design(2, 2, &[&[1, 1, 1, 1], &[0, 0, 0, 0]]);
        let check = check_sbbd(&x).unwrap();
        assert!(!check.spanning);
        assert_eq!(
            check.spanning_violation.unwrap().witness,
            Witness::UncoveredLeftPoint { block: 2, point: 1 }
        );
    }

    #[test]
    fn small_dimensions_are_rejected() {
        let x = design(1, 2, &[&[1, 1]]);
        assert!(matches!(check_sbbd(&x), Err(Error::Dimension(_))));
        assert_eq!(information_matrix(&x).dcs, None);
    }
}
