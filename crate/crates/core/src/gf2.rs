//! Packed bit rows and rank computations over GF(2).

use serde::{Deserialize, Serialize};

const WORD: usize = 64;

/// Fixed-length bit vector packed into 64-bit words, bit `i` at word `i / 64`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in indices {
            row.set(i, true);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Popcount of `self & other`.
    pub fn and_count(&self, other: &BitRow) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn or(&self, other: &BitRow) -> BitRow {
        BitRow {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Lowercase hex with qubit 0 as the least significant bit, `ceil(len/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        (0..digits)
            .rev()
            .map(|k| {
                let mut nibble = 0u32;
                for b in 0..4 {
                    let i = 4 * k + b;
                    if i < self.len && self.get(i) {
                        nibble |= 1 << b;
                    }
                }
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(len: usize, hex: &str) -> Option<Self> {
        let mut row = Self::zeros(len);
        for (k, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16)?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let i = 4 * k + b;
                    if i >= len {
                        return None;
                    }
                    row.set(i, true);
                }
            }
        }
        Some(row)
    }
}

/// Rank over GF(2) of the given rows (all of equal length).
pub fn rank(rows: &[BitRow]) -> usize {
    let mut rows: Vec<BitRow> = rows.to_vec();
    let Some(width) = rows.first().map(BitRow::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row.get(col) {
                row.xor_assign(pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of the left nullspace: every returned row `v` (of length
/// `rows.len()`) selects a subset of `rows` whose XOR is zero.
pub fn left_nullspace(rows: &[BitRow]) -> Vec<BitRow> {
    let m = rows.len();
    let mut work: Vec<(BitRow, BitRow)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), BitRow::from_indices(m, [i])))
        .collect();
    let Some(width) = rows.first().map(BitRow::len) else {
        return Vec::new();
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m).find(|&r| work[r].0.get(col)) else {
            continue;
        };
        work.swap(rank, pivot);
        let (head, tail) = work.split_at_mut(rank + 1);
        let (pr, pt) = &head[rank];
        for (row, tag) in tail.iter_mut() {
            if row.get(col) {
                row.xor_assign(pr);
                tag.xor_assign(pt);
            }
        }
        rank += 1;
    }
    work.into_iter().skip(rank).map(|(_, tag)| tag).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_dependent_rows() {
        let rows = vec![
            BitRow::from_indices(3, [0, 1]),
            BitRow::from_indices(3, [1, 2]),
            BitRow::from_indices(3, [0, 2]),
        ];
        let ns = left_nullspace(&rows);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].count_ones(), 3);
        assert!(left_nullspace(&rows[..2]).is_empty());
    }

    #[test]
    fn hex_round_trip() {
        let row = BitRow::from_indices(9, [0, 3, 8]);
        assert_eq!(row.to_hex(), "109");
        assert_eq!(BitRow::from_hex(9, "109"), Some(row));
        assert_eq!(BitRow::from_hex(3, "f"), None);
    }

    #[test]
    fn rank_small_cases() {
        let a = BitRow::from_indices(4, [0, 1]);
        let b = BitRow::from_indices(4, [1, 2]);
        let c = BitRow::from_indices(4, [0, 2]);
        assert_eq!(rank(&[a.clone(), b.clone()]), 2);
        assert_eq!(rank(&[a, b, c]), 2);
        assert_eq!(rank(&[BitRow::zeros(4)]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rank_identity_across_word_boundary() {
        let rows: Vec<BitRow> = (0..130).map(|i| BitRow::from_indices(130, [i])).collect();
        assert_eq!(rank(&rows), 130);
    }
}
