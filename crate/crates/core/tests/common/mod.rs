//! Independent oracles for the integration tests. They work on the printed
//! form of operators (sign prefix plus letters) and on plain lattice
//! coordinates, so they share no code with the library's symplectic core.

#![allow(dead_code)]

use fermion_map::{Color, PauliOperator};

/// Splits printed text into its prefix (`+`, `+i`, `-`, `-i`) and letters.
pub fn split(op: &PauliOperator) -> (String, Vec<char>) {
    let text = op.to_string();
    let start = text.find(|c: char| "IXYZ".contains(c)).unwrap_or(text.len());
    (text[..start].to_string(), text[start..].chars().collect())
}

/// Qubits carrying a non-identity letter.
pub fn support(letters: &[char]) -> Vec<usize> {
    letters.iter().enumerate().filter(|(_, &c)| c != 'I').map(|(q, _)| q).collect()
}

/// `Some(q)` if the operator is exactly `+L` on the single qubit `q`.
pub fn single_site(op: &PauliOperator, letter: char) -> Option<usize> {
    let (prefix, letters) = split(op);
    let s = support(&letters);
    (prefix == "+" && s.len() == 1 && letters[s[0]] == letter).then(|| s[0])
}

/// Two Paulis anticommute iff they differ (both non-identity) on an odd
/// number of qubits.
pub fn anticommute(a: &PauliOperator, b: &PauliOperator) -> bool {
    let (_, la) = split(a);
    let (_, lb) = split(b);
    la.iter().zip(&lb).filter(|(x, y)| **x != 'I' && **y != 'I' && x != y).count() % 2 == 1
}

/// Rank over GF(2) by plain Gaussian elimination on boolean rows.
pub fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `[x | z]` boolean row of an operator from its letters.
pub fn symplectic(op: &PauliOperator) -> Vec<bool> {
    let (_, letters) = split(op);
    let x = letters.iter().map(|&c| c == 'X' || c == 'Y');
    let z = letters.iter().map(|&c| c == 'Z' || c == 'Y');
    x.chain(z).collect()
}

pub fn choose(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Toric arrow rules written out from the prose description. Returns the
/// `(row, col)` of the targeted corner (before wrapping), or `None` for the
/// two plaquettes that become parity operators.
///
/// The lattice of squares is cut into four `d/2 x d/2` quarters by their
/// top-left qubit. Black squares: top-left on the diagonal of the top-left
/// quarter, bottom-right elsewhere in that quarter, bottom-left in the
/// top-right quarter, top-right in the bottom-left quarter, top-left in the
/// bottom-right quarter; the square at the origin has no arrow. White
/// squares: top-left, top-right and bottom-right in the matching quarters;
/// in the bottom-left quarter top-right on the anti-diagonal and bottom-left
/// elsewhere; the square at `(d/2, d/2 - 1)` has no arrow.
pub fn prose_arrow_corner(d: usize, color: Color, r: usize, c: usize) -> Option<(usize, usize)> {
    let h = d / 2;
    let quarter = (r >= h, c >= h);
    let (dr, dc) = match color {
        Color::Black => {
            if (r, c) == (0, 0) {
                return None;
            }
            match quarter {
                (false, false) if r == c => (0, 0),
                (false, false) => (1, 1),
                (false, true) => (1, 0),
                (true, false) => (0, 1),
                (true, true) => (0, 0),
            }
        }
        Color::White => {
            if (r, c) == (h, h - 1) {
                return None;
            }
            match quarter {
                (false, false) => (0, 0),
                (false, true) => (0, 1),
                (true, true) => (1, 1),
                (true, false) if r + c == d - 1 => (0, 1),
                (true, false) => (1, 0),
            }
        }
    };
    Some((r + dr, c + dc))
}
