use serde::{Deserialize, Serialize};

/// `SBBD(v1, v2, N; Λ)` with `Λ = (μ, λ12, λ21, λ22)`.
///
/// The information matrix of such a design is
/// `I ⊗ (a I + b J) + (J − I) ⊗ (c I + d J)` with `a = μ − λ12`, `b = λ12`,
/// `c = λ21 − λ22` and `d = λ22`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SbbdParameters {
    pub v1: usize,
    pub v2: usize,
    pub n: usize,
    pub mu: i64,
    pub lambda12: i64,
    pub lambda21: i64,
    pub lambda22: i64,
}

impl SbbdParameters {
    pub fn new(v1: usize, v2: usize, n: usize, mu: i64, lambda12: i64, lambda21: i64, lambda22: i64) -> Self {
        Self {
            v1,
            v2,
            n,
            mu,
            lambda12,
            lambda21,
            lambda22,
        }
    }

    pub fn lambda(&self) -> (i64, i64, i64, i64) {
        (self.mu, self.lambda12, self.lambda21, self.lambda22)
    }

    pub fn a(&self) -> i64 {
        self.mu - self.lambda12
    }

    pub fn b(&self) -> i64 {
        self.lambda12
    }

    pub fn c(&self) -> i64 {
        self.lambda21 - self.lambda22
    }

    pub fn d(&self) -> i64 {
        self.lambda22
    }
}

impl std::fmt::Display for SbbdParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SBBD({}, {}, {}; Λ = ({}, {}, {}, {}))",
            self.v1, self.v2, self.n, self.mu, self.lambda12, self.lambda21, self.lambda22
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        let p = SbbdParameters::new(4, 3, 12, 9, 6, 6, 7);
        assert_eq!((p.a(), p.b(), p.c(), p.d()), (3, 6, -1, 7));
        assert_eq!(p.to_string(), "SBBD(4, 3, 12; Λ = (9, 6, 6, 7))");
    }
}
