use std::collections::HashMap;

use super::cell::CellComplex;
use super::simplicial::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Chain complex over GF(2): cell counts per dimension and the boundary maps
/// `∂_k: C_k → C_{k-1}` for `k ≥ 1`, stored with rows indexed by `(k-1)`-cells
/// and columns by `k`-cells.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    counts: Vec<usize>,
    boundaries: Vec<BitMatrix>,
}

impl ChainComplex {
    /// Validates that `boundaries[k-1]` has shape `counts[k-1] × counts[k]`.
    pub fn from_parts(counts: Vec<usize>, boundaries: Vec<BitMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != counts.len().max(1) {
            return Err(Error::malformed(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                counts.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let k = i + 1;
            if b.shape() != (counts[k - 1], counts[k]) {
                return Err(Error::malformed(format!(
                    "boundary map {k} has shape {:?}, expected {:?}",
                    b.shape(),
                    (counts[k - 1], counts[k])
                )));
            }
        }
        Ok(Self { counts, boundaries })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn top_dimension(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    /// `∂_k` for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> Option<&BitMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[BitMatrix] {
        &self.boundaries
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Checks `∂_k ∘ ∂_{k+1} = 0` for all `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

pub trait ToChainComplex {
    fn chain_complex(&self) -> Result<ChainComplex>;
}

pub fn chain_complex<X: ToChainComplex + ?Sized>(x: &X) -> Result<ChainComplex> {
    x.chain_complex()
}

impl ToChainComplex for SimplicialComplex {
    fn chain_complex(&self) -> Result<ChainComplex> {
        let top = match self.dimension() {
            Some(t) => t,
            None => return ChainComplex::from_parts(Vec::new(), Vec::new()),
        };
        let counts: Vec<usize> = (0..=top).map(|k| self.faces(k).len()).collect();
        let mut boundaries = Vec::with_capacity(top);
        let mut lower: HashMap<&Face, usize> = self.faces(0).iter().enumerate().map(|(i, f)| (f, i)).collect();
        for k in 1..=top {
            let mut m = BitMatrix::zeros(counts[k - 1], counts[k]);
            for (col, face) in self.faces(k).iter().enumerate() {
                for skip in 0..face.len() {
                    let facet: Face =
                        face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let row = *lower
                        .get(&facet)
                        .ok_or_else(|| Error::malformed(format!("facet {facet:?} of {face:?} missing")))?;
                    m.set(row, col, true);
                }
            }
            boundaries.push(m);
            lower = self.faces(k).iter().enumerate().map(|(i, f)| (f, i)).collect();
        }
        ChainComplex::from_parts(counts, boundaries)
    }
}

impl ToChainComplex for CellComplex {
    fn chain_complex(&self) -> Result<ChainComplex> {
        let counts = self.cell_counts();
        let mut boundaries = Vec::new();
        for k in 1..counts.len() {
            let mut m = BitMatrix::zeros(counts[k - 1], counts[k]);
            for (col, rows) in self.boundary(k).iter().enumerate() {
                for &row in rows {
                    if row >= counts[k - 1] {
                        return Err(Error::malformed(format!("boundary index {row} out of range in dimension {k}")));
                    }
                    m.flip(row, col);
                }
            }
            boundaries.push(m);
        }
        ChainComplex::from_parts(counts, boundaries)
    }
}
