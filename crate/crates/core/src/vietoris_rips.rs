//! Vietoris–Rips complexes of finite metric samples.

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `diam(σ) ≤ t`.
    Weak,
    /// `diam(σ) < t`.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VRThreshold {
    pub value: f64,
    pub convention: Convention,
}

impl VRThreshold {
    pub fn new(value: f64, convention: Convention) -> Result<Self> {
        if !(value >= 0.0) {
            return Err(Error::invalid(format!("threshold {value} must be nonnegative")));
        }
        Ok(Self { value, convention })
    }

    pub fn weak(value: f64) -> Self {
        Self { value, convention: Convention::Weak }
    }

    pub fn strict(value: f64) -> Self {
        Self { value, convention: Convention::Strict }
    }

    /// Compares against the stored table entry exactly.
    pub fn admits(&self, d: f64) -> bool {
        match self.convention {
            Convention::Weak => d <= self.value,
            Convention::Strict => d < self.value,
        }
    }
}

/// Clique complex of the threshold graph, truncated at `max_dim`. Vertex
/// labels are sample indices.
pub fn vr_complex(m: &FiniteMetricSample, t: VRThreshold, max_dim: usize) -> Result<SimplicialComplex> {
    let n = m.len();
    if n > u32::MAX as usize {
        return Err(Error::invalid("sample too large"));
    }
    let words = n.div_ceil(64);
    // adjacency[i] holds neighbours j > i only, so every clique is generated once.
    let mut forward = vec![0u64; n * words];
    for i in 0..n {
        for j in i + 1..n {
            if t.admits(m.dist(i, j)) {
                forward[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut faces: Vec<Face> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    for v in 0..n {
        stack.push(v as u32);
        let cand = forward[v * words..(v + 1) * words].to_vec();
        extend(&forward, words, &cand, max_dim, &mut stack, &mut faces);
        stack.pop();
    }
    SimplicialComplex::from_faces(faces)
}

fn extend(forward: &[u64], words: usize, cand: &[u64], max_dim: usize, stack: &mut Vec<u32>, out: &mut Vec<Face>) {
    out.push(stack.clone());
    if stack.len() > max_dim {
        return;
    }
    for (w, &word) in cand.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let j = w * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let next: Vec<u64> = cand.iter().zip(&forward[j * words..(j + 1) * words]).map(|(a, b)| a & b).collect();
            stack.push(j as u32);
            extend(forward, words, &next, max_dim, stack, out);
            stack.pop();
        }
    }
}
