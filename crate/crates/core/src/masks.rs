//! Connection masks for a layer of `v1 × v2` edges, one per SB-block.
//!
//! Binary layout: three little-endian `u32` values `N, v1, v2`, then
//! `N·v1·v2` bytes of 0/1, mask by mask, row-major by left point.

use serde_json::{json, Value};

use crate::analysis::{check_sbbd, Witness};
use crate::design::DesignMatrix;
use crate::error::{Error, Result};
use crate::SbbdParameters;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSchedule {
    v1: usize,
    v2: usize,
    params: Option<SbbdParameters>,
    /// Each mask is `v1·v2` bytes, row-major.
    masks: Vec<Vec<u8>>,
}

impl MaskSchedule {
    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn v2(&self) -> usize {
        self.v2
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn params(&self) -> Option<&SbbdParameters> {
        self.params.as_ref()
    }

    pub fn mask(&self, k: usize) -> &[u8] {
        &self.masks[k]
    }

    /// Entry `(i, j)` of mask `k`, all 0-based.
    pub fn get(&self, k: usize, i: usize, j: usize) -> u8 {
        self.masks[k][i * self.v2 + j]
    }

    /// Edge-wise sum over all masks, row-major `v1 × v2`.
    pub fn edge_totals(&self) -> Vec<u64> {
        let mut total = vec![0u64; self.v1 * self.v2];
        for m in &self.masks {
            for (t, &e) in total.iter_mut().zip(m) {
                *t += u64::from(e);
            }
        }
        total
    }

    /// Whether every mask covers every input and every output unit.
    pub fn all_spanning(&self) -> bool {
        self.masks.iter().all(|m| {
            (0..self.v1).all(|i| m[i * self.v2..(i + 1) * self.v2].contains(&1))
                && (0..self.v2).all(|j| (0..self.v1).any(|i| m[i * self.v2 + j] == 1))
        })
    }

    pub fn to_json(&self) -> Value {
        let masks: Vec<Vec<&[u8]>> = self.masks.iter().map(|m| m.chunks(self.v2).collect()).collect();
        json!({
            "v1": self.v1,
            "v2": self.v2,
            "n": self.masks.len(),
            "lambda": self.params.map(|p| {
                let (a, b, c, d) = p.lambda();
                vec![a, b, c, d]
            }),
            "masks": masks,
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + self.masks.len() * self.v1 * self.v2);
        for x in [self.masks.len(), self.v1, self.v2] {
            out.extend_from_slice(&(x as u32).to_le_bytes());
        }
        for m in &self.masks {
            out.extend_from_slice(m);
        }
        out
    }

    /// Parses the binary layout; the result carries no parameters.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 12 {
            return Err(Error::Format("mask file shorter than its header".into()));
        }
        let word = |k: usize| u32::from_le_bytes(bytes[4 * k..4 * k + 4].try_into().unwrap()) as usize;
        let (n, v1, v2) = (word(0), word(1), word(2));
        let body = &bytes[12..];
        if v1 == 0 || v2 == 0 || body.len() != n * v1 * v2 {
            return Err(Error::Format(format!(
                "header ({n}, {v1}, {v2}) does not match {} payload bytes",
                body.len()
            )));
        }
        if let Some(b) = body.iter().find(|&&b| b > 1) {
            return Err(Error::Format(format!("mask byte {b} is not 0 or 1")));
        }
        Ok(Self {
            v1,
            v2,
            params: None,
            masks: body.chunks(v1 * v2).map(<[u8]>::to_vec).collect(),
        })
    }
}

/// Mask `k` is row `k` of `X` reshaped to `v1 × v2`. The design must be a
/// spanning SBBD.
pub fn export_masks(x: &DesignMatrix) -> Result<MaskSchedule> {
    let check = check_sbbd(x)?;
    if let Some(v) = check.spanning_violation {
        let (block, detail) = match v.witness {
            Witness::UncoveredLeftPoint { block, point } => (block, format!("left point {point} is uncovered")),
            Witness::UncoveredRightPoint { block, point } => (block, format!("right point {point} is uncovered")),
            _ => (0, v.to_string()),
        };
        return Err(Error::SpanningViolation { block, detail });
    }
    Ok(MaskSchedule {
        v1: x.v1(),
        v2: x.v2(),
        params: Some(check.params),
        masks: x
            .matrix()
            .row_iter()
            .map(|row| row.iter().map(|&e| e as u8).collect())
            .collect(),
    })
}
