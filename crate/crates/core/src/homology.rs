//! Betti numbers over GF(2).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::ChainComplex;
use crate::error::Result;

/// Ranks of homology over GF(2), indexed by dimension up to the top
/// dimension of the chain complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    /// Betti vector of `S^n` over GF(2).
    pub fn sphere(n: usize) -> Self {
        if n == 0 {
            return BettiVector(vec![2]);
        }
        let mut v = vec![0; n + 1];
        v[0] = 1;
        v[n] = 1;
        BettiVector(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Without trailing zero entries.
    pub fn trimmed(&self) -> &[usize] {
        let end = self.0.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

/// `b_k = dim ker ∂_k − rank ∂_{k+1}`. Boundary ranks are computed in parallel.
pub fn betti_numbers(c: &ChainComplex) -> Result<BettiVector> {
    // Shapes were validated when `c` was built; rebuilding re-checks them for
    // chain complexes assembled by hand.
    let c = ChainComplex::from_parts(c.counts().to_vec(), c.boundaries().to_vec())?;
    let ranks: Vec<usize> = c.boundaries().par_iter().map(|b| b.rank()).collect();
    let counts = c.counts();
    let rank_of = |k: usize| -> usize { if k == 0 { 0 } else { ranks.get(k - 1).copied().unwrap_or(0) } };
    Ok(BettiVector((0..counts.len()).map(|k| counts[k] - rank_of(k) - rank_of(k + 1)).collect()))
}

/// True iff the GF(2) Betti vector equals that of `S^n`, ignoring trailing
/// zero entries above dimension `n`.
pub fn is_homology_n_sphere(c: &ChainComplex, n: usize) -> bool {
    betti_numbers(c).is_ok_and(|b| b.trimmed() == BettiVector::sphere(n).as_slice())
}
