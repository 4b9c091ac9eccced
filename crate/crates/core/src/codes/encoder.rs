//! Systematic encoding by Gaussian elimination over GF(2).
//!
//! The parity-check matrix is reduced to row-echelon form once; encoding then
//! places the information bits on the non-pivot columns and back-substitutes
//! the pivot columns. Random sparse matrices are occasionally rank deficient,
//! in which case construction reports the actual rank and the caller decides
//! (the Monte Carlo harness falls back to all-zero transmission, which is
//! exact for symmetric channels and linear codes).

use super::TannerGraph;
use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Precomputed systematic encoder for one Tanner graph.
#[derive(Clone, Debug)]
pub struct SystematicEncoder {
    n: usize,
    k: usize,
    /// Non-pivot columns, ascending: information positions.
    info_cols: Vec<usize>,
    /// `(pivot column, free columns XORed into it)`, one per check row.
    parity_rules: Vec<(usize, Vec<usize>)>,
}

impl SystematicEncoder {
    /// Reduces H and derives the encoding rules.
    ///
    /// Fails with [`Error::RankDeficient`] when `rank(H) < m`; the reported
    /// rank tells the caller the effective dimension `n - rank`.
    pub fn new(graph: &TannerGraph) -> Result<Self> {
        let n = graph.num_vars();
        let m = graph.num_checks();
        let words = n.div_ceil(64);

        // Dense bitset rows of H.
        let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; m];
        for c in 0..m {
            for &v in graph.check_neighbors(c) {
                rows[c][v / 64] |= 1 << (v % 64);
            }
        }

        // Forward elimination with column pivoting, then full back-elimination
        // so every pivot column appears in exactly one row.
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; m];
        let mut is_pivot_col = vec![false; n];
        let mut rank = 0;
        for col in 0..n {
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let Some(pivot_row) = (rank..m).find(|&r| rows[r][word] & mask != 0) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            for r in 0..m {
                if r != rank && rows[r][word] & mask != 0 {
                    let (head, tail) = rows.split_at_mut(std::cmp::max(r, rank));
                    let (src, dst) = if r < rank {
                        (&tail[0], &mut head[r])
                    } else {
                        (&head[rank], &mut tail[0])
                    };
                    for w in 0..words {
                        dst[w] ^= src[w];
                    }
                }
            }
            pivot_of_row[rank] = Some(col);
            is_pivot_col[col] = true;
            rank += 1;
            if rank == m {
                break;
            }
        }

        if rank < m {
            return Err(Error::RankDeficient { rank, checks: m });
        }

        let info_cols: Vec<usize> = (0..n).filter(|&v| !is_pivot_col[v]).collect();
        let mut parity_rules = Vec::with_capacity(m);
        for r in 0..m {
            let pivot = pivot_of_row[r].expect("full-rank row has a pivot");
            let deps: Vec<usize> = info_cols
                .iter()
                .copied()
                .filter(|&v| rows[r][v / 64] & (1 << (v % 64)) != 0)
                .collect();
            parity_rules.push((pivot, deps));
        }

        Ok(SystematicEncoder {
            n,
            k: n - m,
            info_cols,
            parity_rules,
        })
    }

    /// Information length `k = n - m`.
    pub fn info_len(&self) -> usize {
        self.k
    }

    /// Codeword positions that carry the information bits, ascending.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_cols
    }

    /// Encodes `info` (length `k`) into a codeword of length `n`.
    pub fn encode(&self, info: &BitVector) -> Result<BitVector> {
        if info.len() != self.k {
            return Err(Error::Dimension {
                what: "information word",
                expected: self.k,
                actual: info.len(),
            });
        }
        let mut codeword = BitVector::zeros(self.n);
        for (i, &col) in self.info_cols.iter().enumerate() {
            codeword.set(col, info.get(i));
        }
        for (pivot, deps) in &self.parity_rules {
            let mut acc = 0u8;
            for &v in deps {
                acc ^= codeword.get(v);
            }
            codeword.set(*pivot, acc);
        }
        Ok(codeword)
    }
}
