//! Symplectic n-qubit Pauli operators and C4 Clifford conjugation.
//!
//! An operator is stored as `i^phase_exp * prod_j X_j^{x_j} Z_j^{z_j}`. With
//! this convention a single `Y = i X Z` has `phase_exp = 1`, so products are
//! tracked exactly without per-letter case analysis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitRow;

/// Single-site Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: BitRow,
    z: BitRow,
    phase_exp: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: BitRow::zeros(n),
            z: BitRow::zeros(n),
            phase_exp: 0,
        }
    }

    /// `+letter` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut op = Self::identity(n);
        op.set_letter(qubit, letter);
        op
    }

    /// `+prod letter` over the given qubits. Repeated qubits multiply together.
    pub fn product_of(n: usize, qubits: &[usize], letter: Letter) -> Result<Self> {
        let mut op = Self::identity(n);
        for &q in qubits {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            op = op.mul(&Self::single(n, q, letter))?;
        }
        Ok(op)
    }

    /// Builds `i^phase_exp * X^x Z^z` directly from raw symplectic parts.
    pub fn from_parts(x: BitRow, z: BitRow, phase_exp: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::SizeMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self {
            n: x.len(),
            x,
            z,
            phase_exp: phase_exp % 4,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> &BitRow {
        &self.x
    }

    pub fn z_bits(&self) -> &BitRow {
        &self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n).map(|q| self.letter(q))
    }

    /// Overwrites the letter on `qubit`, keeping the sign in front of the
    /// letter string unchanged.
    fn set_letter(&mut self, qubit: usize, letter: Letter) {
        let sign = self.letter_phase();
        let (x, z) = letter.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
        self.phase_exp = (sign + self.y_count()) % 4;
    }

    fn y_count(&self) -> u8 {
        (self.x.and_count(&self.z) % 4) as u8
    }

    /// Exponent `k` such that the operator is `i^k` times its letter string.
    /// Hermitian operators have `k` in `{0, 2}`.
    pub fn letter_phase(&self) -> u8 {
        (self.phase_exp + 4 - self.y_count()) % 4
    }

    pub fn is_hermitian(&self) -> bool {
        self.letter_phase() % 2 == 0
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.x.get(q) || self.z.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// True when only Z (or I) letters appear.
    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn times_i_pow(&self, k: u8) -> Self {
        let mut out = self.clone();
        out.phase_exp = (out.phase_exp + k) % 4;
        out
    }

    pub fn neg(&self) -> Self {
        self.times_i_pow(2)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Exact group product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        // Z^{z1} X^{x2} = (-1)^{z1.x2} X^{x2} Z^{z1}
        let swaps = self.z.and_count(&other.x) as u8;
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        Ok(Self {
            n: self.n,
            x,
            z,
            phase_exp: (self.phase_exp + other.phase_exp + 2 * (swaps % 2)) % 4,
        })
    }

    /// Symplectic inner product is zero.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        let s = self.x.and_count(&other.z) + self.z.and_count(&other.x);
        Ok(s % 2 == 0)
    }

    /// `R^dagger self R` for `R = (1 + iG)/sqrt(2)`.
    pub fn conjugate_by(&self, rotation: &C4Rotation) -> Result<Self> {
        if self.commutes(&rotation.generator)? {
            Ok(self.clone())
        } else {
            Ok(self.mul(&rotation.generator)?.times_i_pow(1))
        }
    }

    /// Applies rotations in order; with `inverse` the sequence is reversed and
    /// each generator negated, undoing the forward map.
    pub fn conjugate_by_sequence<'a, I>(&self, rotations: I, inverse: bool) -> Result<Self>
    where
        I: DoubleEndedIterator<Item = &'a C4Rotation>,
    {
        let mut out = self.clone();
        if inverse {
            for r in rotations.rev() {
                out = out.conjugate_by(&r.inverse())?;
            }
        } else {
            for r in rotations {
                out = out.conjugate_by(r)?;
            }
        }
        Ok(out)
    }

    /// Replaces the letter at `qubit` by `letter` via exact multiplication, so
    /// `s P (x) A` becomes `s P (x) B`.
    pub fn with_letter(&self, qubit: usize, letter: Letter) -> Result<Self> {
        if qubit >= self.n {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                n: self.n,
            });
        }
        let old = Self::single(self.n, qubit, self.letter(qubit));
        let new = Self::single(self.n, qubit, letter);
        self.mul(&old)?.mul(&new)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Default for PauliOperator {
    fn default() -> Self {
        Self::identity(0)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.letter_phase() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses `[+|-][i]LETTERS`, e.g. `+XIZY` or `-iYZ`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut sign = 0u8;
        match chars.first() {
            Some('+') => pos = 1,
            Some('-') => {
                sign = 2;
                pos = 1;
            }
            _ => {}
        }
        if chars.get(pos) == Some(&'i') {
            sign += 1;
            pos += 1;
        }
        if pos == chars.len() {
            return Err(Error::Parse {
                position: pos,
                message: "expected at least one of I, X, Y, Z".into(),
            });
        }
        let n = chars.len() - pos;
        let mut x = BitRow::zeros(n);
        let mut z = BitRow::zeros(n);
        for (q, &c) in chars[pos..].iter().enumerate() {
            let letter = Letter::from_char(c).ok_or_else(|| Error::Parse {
                position: pos + q,
                message: format!("unexpected character {c:?}"),
            })?;
            let (xb, zb) = letter.bits();
            x.set(q, xb);
            z.set(q, zb);
        }
        let ys = (x.and_count(&z) % 4) as u8;
        Ok(Self {
            n,
            x,
            z,
            phase_exp: (sign + ys) % 4,
        })
    }
}

/// Canonical JSON form: `{n, x_bits, z_bits, phase_exp}` with hex bit strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliRecord {
    pub n: usize,
    pub x_bits: String,
    pub z_bits: String,
    pub phase_exp: u8,
}

impl From<&PauliOperator> for PauliRecord {
    fn from(p: &PauliOperator) -> Self {
        Self {
            n: p.n,
            x_bits: p.x.to_hex(),
            z_bits: p.z.to_hex(),
            phase_exp: p.phase_exp,
        }
    }
}

impl TryFrom<PauliRecord> for PauliOperator {
    type Error = Error;

    fn try_from(r: PauliRecord) -> Result<Self> {
        let bad = |field: &str| Error::Parse {
            position: 0,
            message: format!("invalid hex in {field} for {} qubits", r.n),
        };
        let x = BitRow::from_hex(r.n, &r.x_bits).ok_or_else(|| bad("x_bits"))?;
        let z = BitRow::from_hex(r.n, &r.z_bits).ok_or_else(|| bad("z_bits"))?;
        PauliOperator::from_parts(x, z, r.phase_exp)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PauliRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let record = PauliRecord::deserialize(d)?;
        PauliOperator::try_from(record).map_err(serde::de::Error::custom)
    }
}

/// `R = (1 + i G)/sqrt(2)` for a Hermitian Pauli generator `G`; any sign is
/// carried by the generator's phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct C4Rotation {
    generator: PauliOperator,
}

impl C4Rotation {
    pub fn new(generator: PauliOperator) -> Result<Self> {
        if !generator.is_hermitian() {
            return Err(Error::NonHermitian(generator.to_string()));
        }
        Ok(Self { generator })
    }

    pub fn generator(&self) -> &PauliOperator {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.n
    }

    pub fn inverse(&self) -> Self {
        Self {
            generator: self.generator.neg(),
        }
    }
}

impl<'de> Deserialize<'de> for C4Rotation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            generator: PauliOperator,
        }
        let raw = Raw::deserialize(d)?;
        C4Rotation::new(raw.generator).map_err(serde::de::Error::custom)
    }
}
