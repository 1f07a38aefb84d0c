//! Dense bit-packed matrices over the two-element field.

use std::fmt;

const WORD: usize = 64;

/// Row-major, one `u64` word per 64 columns.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        Self { rows, cols, words_per_row, data: vec![0; rows * words_per_row] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        let w = self.data[row * self.words_per_row + col / WORD];
        (w >> (col % WORD)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.rows && col < self.cols);
        let w = &mut self.data[row * self.words_per_row + col / WORD];
        let mask = 1u64 << (col % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        self.data[row * self.words_per_row + col / WORD] ^= 1u64 << (col % WORD);
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.data[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = i * out.words_per_row;
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = rhs.row_words(k);
                    for (d, s) in out.data[dst..dst + out.words_per_row].iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination with word-level row XORs.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let wpr = self.words_per_row;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let word = col / WORD;
            let mask = 1u64 << (col % WORD);
            let Some(pivot) = (rank..self.rows).find(|&r| m[r * wpr + word] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                for w in 0..wpr {
                    m.swap(pivot * wpr + w, rank * wpr + w);
                }
            }
            let (head, tail) = m.split_at_mut((rank + 1) * wpr);
            let pivot_row = &head[rank * wpr..];
            for row in tail.chunks_exact_mut(wpr) {
                if row[word] & mask != 0 {
                    // Words left of `word` are already zero in the pivot row.
                    for (d, s) in row[word..].iter_mut().zip(&pivot_row[word..]) {
                        *d ^= s;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(32) {
            let line: String =
                (0..self.cols.min(64)).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by brute force: size of the row span, enumerated.
    fn span_rank(m: &BitMatrix) -> usize {
        let rows: Vec<u128> = (0..m.rows())
            .map(|r| (0..m.cols()).fold(0u128, |acc, c| acc | ((m.get(r, c) as u128) << c)))
            .collect();
        let mut span = std::collections::HashSet::new();
        span.insert(0u128);
        for r in rows {
            let cur: Vec<u128> = span.iter().copied().collect();
            for v in cur {
                span.insert(v ^ r);
            }
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn identity_has_full_rank() {
        let mut m = BitMatrix::zeros(70, 70);
        for i in 0..70 {
            m.set(i, i, true);
        }
        assert_eq!(m.rank(), 70);
        assert!(m.mul(&m).get(69, 69));
    }

    #[test]
    fn repeated_rows_collapse() {
        let mut m = BitMatrix::zeros(3, 4);
        for r in 0..3 {
            m.set(r, 1, true);
            m.set(r, 3, true);
        }
        assert_eq!(m.rank(), 1);
    }

    proptest! {
        #[test]
        fn rank_matches_span_enumeration(bits in proptest::collection::vec(any::<bool>(), 8 * 10)) {
            let mut m = BitMatrix::zeros(8, 10);
            for (i, b) in bits.iter().enumerate() {
                m.set(i / 10, i % 10, *b);
            }
            prop_assert_eq!(m.rank(), span_rank(&m));
        }
    }
}
