//! Monte Carlo check of the least-squares estimator under `y = Xτ + ε`,
//! `ε ~ N(0, σ²)`, with `τ` subject to zero row and column sums.
//!
//! Every run draws its noise from `ChaCha8Rng::seed_from_u64(seed)` switched
//! to stream `run_index`, so runs are independent of scheduling. Runs are
//! grouped into fixed chunks of [`CHUNK_RUNS`]; chunk sums are combined in
//! chunk order, which makes serial and parallel execution bit-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::{generalized_inverse, information_matrix, spectrum};
use crate::design::DesignMatrix;
use crate::error::{Error, Result};

/// Zero-sum tolerance for effect vectors.
pub const ZERO_SUM_TOL: f64 = 1e-12;
/// Relative tolerance on contrast variances at 10⁵ runs.
pub const VARIANCE_REL_TOL: f64 = 0.05;
/// Bias bound, in standard errors of the mean.
pub const BIAS_SIGMAS: f64 = 3.0;
pub const CHUNK_RUNS: usize = 1024;

/// Effects `τ_ij` in lexicographic edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectVector {
    v1: usize,
    v2: usize,
    tau: Vec<f64>,
}

impl EffectVector {
    pub fn new(v1: usize, v2: usize, tau: Vec<f64>) -> Result<Self> {
        if tau.len() != v1 * v2 {
            return Err(Error::Dimension(format!(
                "effect vector has {} entries, expected {}",
                tau.len(),
                v1 * v2
            )));
        }
        for i in 0..v1 {
            let s: f64 = tau[i * v2..(i + 1) * v2].iter().sum();
            if s.abs() > ZERO_SUM_TOL {
                return Err(Error::Format(format!("row {} of tau sums to {s:e}", i + 1)));
            }
        }
        for j in 0..v2 {
            let s: f64 = (0..v1).map(|i| tau[i * v2 + j]).sum();
            if s.abs() > ZERO_SUM_TOL {
                return Err(Error::Format(format!("column {} of tau sums to {s:e}", j + 1)));
            }
        }
        Ok(Self { v1, v2, tau })
    }

    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn v2(&self) -> usize {
        self.v2
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.tau
    }
}

/// `τ = (A1⊗B1) z` for `z` uniform on `[−scale, scale]`: `z` with its row and
/// column means removed.
pub fn random_effects(v1: usize, v2: usize, scale: f64, seed: u64) -> Result<EffectVector> {
    if v1 < 2 || v2 < 2 {
        return Err(Error::Dimension(format!("need v1, v2 >= 2, got ({v1}, {v2})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: Vec<f64> = (0..v1 * v2).map(|_| rng.random_range(-scale..=scale)).collect();
    EffectVector::new(v1, v2, double_center(&z, v1, v2))
}

fn double_center(z: &[f64], v1: usize, v2: usize) -> Vec<f64> {
    let row_mean: Vec<f64> = (0..v1)
        .map(|i| z[i * v2..(i + 1) * v2].iter().sum::<f64>() / v2 as f64)
        .collect();
    let col_mean: Vec<f64> = (0..v2)
        .map(|j| (0..v1).map(|i| z[i * v2 + j]).sum::<f64>() / v1 as f64)
        .collect();
    let grand = row_mean.iter().sum::<f64>() / v1 as f64;
    let mut tau: Vec<f64> = (0..v1 * v2)
        .map(|k| z[k] - row_mean[k / v2] - col_mean[k % v2] + grand)
        .collect();
    // One more pass removes the rounding left by the first.
    for _ in 0..2 {
        for i in 0..v1 {
            let m = tau[i * v2..(i + 1) * v2].iter().sum::<f64>() / v2 as f64;
            tau[i * v2..(i + 1) * v2].iter_mut().for_each(|t| *t -= m);
        }
        for j in 0..v2 {
            let m = (0..v1).map(|i| tau[i * v2 + j]).sum::<f64>() / v1 as f64;
            (0..v1).for_each(|i| tau[i * v2 + j] -= m);
        }
    }
    tau
}

/// Orthonormal Helmert contrasts `p_i ⊗ q_j`, `i` outer, `j` inner.
pub fn contrast_basis(v1: usize, v2: usize) -> Vec<Vec<f64>> {
    let p = helmert_unit(v1);
    let q = helmert_unit(v2);
    p.iter()
        .flat_map(|pi| {
            q.iter()
                .map(move |qj| pi.iter().flat_map(|&a| qj.iter().map(move |&b| a * b)).collect())
        })
        .collect()
}

fn helmert_unit(n: usize) -> Vec<Vec<f64>> {
    crate::analysis::helmert_vectors(n)
        .into_iter()
        .enumerate()
        .map(|(k, h)| {
            let norm = (((k + 1) * (k + 2)) as f64).sqrt();
            h.into_iter().map(|x| x as f64 / norm).collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContrastStat {
    /// 1-based indices of `p_i ⊗ q_j`.
    pub i: usize,
    pub j: usize,
    pub true_value: f64,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub runs: usize,
    pub sigma: f64,
    pub seed: u64,
    pub alpha: i64,
    /// `σ² / α`.
    pub predicted_variance: f64,
    pub contrasts: Vec<ContrastStat>,
}

impl SimulationReport {
    /// Largest `|variance / predicted − 1|`; `None` when `σ = 0`.
    pub fn max_relative_deviation(&self) -> Option<f64> {
        (self.predicted_variance > 0.0).then(|| {
            self.contrasts
                .iter()
                .map(|c| (c.variance / self.predicted_variance - 1.0).abs())
                .fold(0.0, f64::max)
        })
    }

    /// `max / min − 1` over the empirical contrast variances.
    pub fn variance_spread(&self) -> Option<f64> {
        let (lo, hi) = self.contrasts.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), c| {
            (lo.min(c.variance), hi.max(c.variance))
        });
        (lo > 0.0).then(|| hi / lo - 1.0)
    }

    /// Fraction of contrasts whose empirical mean lies within
    /// [`BIAS_SIGMAS`] standard errors of the true value.
    pub fn unbiased_fraction(&self) -> f64 {
        let ok = self
            .contrasts
            .iter()
            .filter(|c| (c.mean - c.true_value).abs() <= BIAS_SIGMAS * c.std_error + 1e-12)
            .count();
        ok as f64 / self.contrasts.len() as f64
    }

    pub fn max_abs_bias(&self) -> f64 {
        self.contrasts
            .iter()
            .map(|c| (c.mean - c.true_value).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "runs": self.runs,
            "sigma": self.sigma,
            "seed": self.seed,
            "alpha": self.alpha,
            "predicted_variance": self.predicted_variance,
            "max_relative_deviation": self.max_relative_deviation(),
            "variance_spread": self.variance_spread(),
            "unbiased_fraction": self.unbiased_fraction(),
            "tolerances": {"variance_relative": VARIANCE_REL_TOL, "bias_std_errors": BIAS_SIGMAS},
            "contrasts": self.contrasts.iter().map(|c| json!({
                "i": c.i,
                "j": c.j,
                "true": c.true_value,
                "mean": c.mean,
                "variance": c.variance,
                "std_error": c.std_error,
            })).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for SimulationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "runs = {}, sigma = {}, seed = {}, alpha = {}, predicted variance = {:.6}",
            self.runs, self.sigma, self.seed, self.alpha, self.predicted_variance
        )?;
        writeln!(
            f,
            "{:>4} {:>4} {:>12} {:>12} {:>12} {:>10}",
            "i", "j", "true", "mean", "variance", "ratio"
        )?;
        for c in &self.contrasts {
            let ratio = if self.predicted_variance > 0.0 {
                c.variance / self.predicted_variance
            } else {
                f64::NAN
            };
            writeln!(
                f,
                "{:>4} {:>4} {:>12.6} {:>12.6} {:>12.6} {:>10.4}",
                c.i, c.j, c.true_value, c.mean, c.variance, ratio
            )?;
        }
        if let Some(dev) = self.max_relative_deviation() {
            writeln!(f, "max relative deviation: {dev:.4} (tolerance {VARIANCE_REL_TOL})")?;
        }
        if let Some(spread) = self.variance_spread() {
            writeln!(f, "variance spread: {spread:.4}")?;
        }
        write!(f, "unbiased fraction: {:.4}", self.unbiased_fraction())
    }
}

/// Dense `G·Xᵗ`, row-major `v1v2 × N`, with `G` the exact generalized inverse
/// rendered in floating point. Fails when `α ≤ 0`.
struct LeastSquares {
    alpha: i64,
    estimator: Vec<f64>,
    n_effects: usize,
    n_obs: usize,
}

impl LeastSquares {
    fn new(x: &DesignMatrix) -> Result<Self> {
        let info = information_matrix(x);
        let s = spectrum(&info)?;
        if s.alpha <= 0 {
            return Err(Error::ContrastsNotEstimable { alpha: s.alpha });
        }
        let g = generalized_inverse(&info)?.to_f64();
        let (n_effects, n_obs) = (x.v1() * x.v2(), x.n());
        let xm = x.matrix();
        let mut estimator = vec![0.0; n_effects * n_obs];
        for r in 0..n_effects {
            for k in 0..n_obs {
                estimator[r * n_obs + k] = xm
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(c, _)| g[r * n_effects + c])
                    .sum();
            }
        }
        Ok(Self {
            alpha: s.alpha,
            estimator,
            n_effects,
            n_obs,
        })
    }

    fn estimate_into(&self, y: &[f64], tau_hat: &mut [f64]) {
        for (r, t) in tau_hat.iter_mut().enumerate() {
            *t = self.estimator[r * self.n_obs..(r + 1) * self.n_obs]
                .iter()
                .zip(y)
                .map(|(a, b)| a * b)
                .sum();
        }
    }
}

pub fn simulate(x: &DesignMatrix, tau: &EffectVector, sigma: f64, runs: usize, seed: u64) -> Result<SimulationReport> {
    simulate_with(x, tau, sigma, runs, seed, Execution::Parallel)
}

pub fn simulate_with(
    x: &DesignMatrix,
    tau: &EffectVector,
    sigma: f64,
    runs: usize,
    seed: u64,
    execution: Execution,
) -> Result<SimulationReport> {
    if (tau.v1, tau.v2) != (x.v1(), x.v2()) {
        return Err(Error::Dimension(format!(
            "effects are for K_({},{}), design is K_({},{})",
            tau.v1,
            tau.v2,
            x.v1(),
            x.v2()
        )));
    }
    if runs == 0 {
        return Err(Error::Dimension("at least one run is required".into()));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::Format(format!(
            "sigma must be finite and non-negative, got {sigma}"
        )));
    }
    let ls = LeastSquares::new(x)?;
    let basis = contrast_basis(x.v1(), x.v2());
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let truth: Vec<f64> = basis.iter().map(|c| dot(c, &tau.tau)).collect();
    let mean: Vec<f64> = x
        .matrix()
        .row_iter()
        .map(|row| row.iter().zip(&tau.tau).filter(|(&e, _)| e != 0).map(|(_, t)| t).sum())
        .collect();
    let m = basis.len();

    let chunk = |c: usize| -> Vec<(f64, f64)> {
        let mut acc = vec![(0.0, 0.0); m];
        let mut y = vec![0.0; ls.n_obs];
        let mut tau_hat = vec![0.0; ls.n_effects];
        for run in c * CHUNK_RUNS..((c + 1) * CHUNK_RUNS).min(runs) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(run as u64);
            for (yk, mk) in y.iter_mut().zip(&mean) {
                let e: f64 = rng.sample(StandardNormal);
                *yk = mk + sigma * e;
            }
            ls.estimate_into(&y, &mut tau_hat);
            for ((s, s2), (b, t)) in acc.iter_mut().zip(basis.iter().zip(&truth)) {
                let err = dot(b, &tau_hat) - t;
                *s += err;
                *s2 += err * err;
            }
        }
        acc
    };
    let n_chunks = runs.div_ceil(CHUNK_RUNS);
    let partials: Vec<Vec<(f64, f64)>> = match execution {
        Execution::Serial => (0..n_chunks).map(chunk).collect(),
        Execution::Parallel => (0..n_chunks).into_par_iter().map(chunk).collect(),
    };
    let mut total = vec![(0.0, 0.0); m];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            t.0 += p.0;
            t.1 += p.1;
        }
    }

    let n = runs as f64;
    let v2m1 = x.v2() - 1;
    let contrasts = total
        .iter()
        .zip(&truth)
        .enumerate()
        .map(|(k, (&(s, s2), &t))| {
            let bias = s / n;
            let variance = if runs > 1 {
                ((s2 - s * bias) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            ContrastStat {
                i: k / v2m1 + 1,
                j: k % v2m1 + 1,
                true_value: t,
                mean: t + bias,
                variance,
                std_error: (variance / n).sqrt(),
            }
        })
        .collect();
    Ok(SimulationReport {
        runs,
        sigma,
        seed,
        alpha: ls.alpha,
        predicted_variance: sigma * sigma / ls.alpha as f64,
        contrasts,
    })
}

/// Least-squares fit of observed data.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    /// Sample mean removed from `y` before fitting.
    pub grand_mean: f64,
    /// Full `τ̂`; only its contrasts are estimable.
    pub tau_hat: Vec<f64>,
    /// Basic contrasts `(p_i ⊗ q_j)ᵗ τ̂`, `i` outer.
    pub contrasts: Vec<f64>,
}

/// Fits externally observed responses; the sample mean of `y` is subtracted
/// first.
pub fn estimate(x: &DesignMatrix, y: &[f64]) -> Result<Estimate> {
    if y.len() != x.n() {
        return Err(Error::Dimension(format!(
            "{} observations for {} blocks",
            y.len(),
            x.n()
        )));
    }
    let ls = LeastSquares::new(x)?;
    let grand_mean = y.iter().sum::<f64>() / y.len() as f64;
    let centered: Vec<f64> = y.iter().map(|v| v - grand_mean).collect();
    let mut tau_hat = vec![0.0; ls.n_effects];
    ls.estimate_into(&centered, &mut tau_hat);
    let contrasts = contrast_basis(x.v1(), x.v2())
        .iter()
        .map(|c| c.iter().zip(&tau_hat).map(|(a, b)| a * b).sum())
        .collect();
    Ok(Estimate {
        grand_mean,
        tau_hat,
        contrasts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_effects_have_zero_margins() {
        for (v1, v2) in [(2, 2), (3, 4), (7, 7)] {
            let t = random_effects(v1, v2, 5.0, 11).unwrap();
            assert_eq!(t.as_slice().len(), v1 * v2);
        }
    }

    #[test]
    fn two_by_two_effects_are_one_dimensional() {
        let t = random_effects(2, 2, 1.0, 3).unwrap();
        let s = t.as_slice();
        assert!((s[0] + s[1]).abs() < 1e-12);
        assert!((s[0] + s[2]).abs() < 1e-12);
        assert!((s[0] - s[3]).abs() < 1e-12);
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_effects(3, 3, 1.0, 42).unwrap();
        let b = random_effects(3, 3, 1.0, 42).unwrap();
        let c = random_effects(3, 3, 1.0, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn effect_vector_validation() {
        assert!(EffectVector::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).is_ok());
        assert!(EffectVector::new(2, 2, vec![1.0, -1.0, 1.0, -1.0]).is_err());
        assert!(EffectVector::new(2, 2, vec![1.0, -1.0, -1.0]).is_err());
        assert!(random_effects(1, 3, 1.0, 0).is_err());
    }

    #[test]
    fn two_by_two_basis() {
        let b = contrast_basis(2, 2);
        assert_eq!(b.len(), 1);
        let expected = [0.5, -0.5, -0.5, 0.5];
        let sign = b[0][0].signum();
        for (x, e) in b[0].iter().zip(expected) {
            assert!((x * sign - e).abs() < 1e-15);
        }
    }

    #[test]
    fn basis_is_orthonormal_and_orthogonal_to_ones() {
        for (v1, v2) in [(2, 3), (3, 3), (4, 3), (7, 7)] {
            let b = contrast_basis(v1, v2);
            assert_eq!(b.len(), (v1 - 1) * (v2 - 1));
            for (k, u) in b.iter().enumerate() {
                assert!(u.iter().sum::<f64>().abs() < 1e-12);
                for (l, w) in b.iter().enumerate() {
                    let d: f64 = u.iter().zip(w).map(|(a, c)| a * c).sum();
                    let e = if k == l { 1.0 } else { 0.0 };
                    assert!((d - e).abs() < 1e-12, "gram[{k}][{l}] = {d}");
                }
            }
        }
    }
}
