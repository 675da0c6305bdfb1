//! Surface and toric code layouts on a `d x d` vertex lattice.
//!
//! Qubit `(row, col)` has index `row * d + col`, with `(0, 0)` at the top
//! left. A square plaquette is named by its top-left qubit and is black
//! (Z-type) when `row + col` is even. Surface codes close their open edges
//! with weight-2 plaquettes: black on the left and right edges, white on the
//! top and bottom edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitRow};
use crate::pauli::{Letter, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Surface,
    Toric,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Surface => "surface",
            CodeKind::Toric => "toric",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    /// Letter of the stabilizer on this color.
    pub fn letter(self) -> Letter {
        match self {
            Color::Black => Letter::Z,
            Color::White => Letter::X,
        }
    }
}

/// Geometry of a plaquette, used for ordering, targeting and drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Shape {
    /// Square with the given top-left qubit (wraps on the torus).
    Square { row: usize, col: usize },
    /// Semicircle above row 0 on qubits `(0, col), (0, col + 1)`.
    Top { col: usize },
    /// Semicircle below the last row on qubits `(d-1, col), (d-1, col + 1)`.
    Bottom { col: usize },
    /// Semicircle left of column 0 on qubits `(row, 0), (row + 1, 0)`.
    Left { row: usize },
    /// Semicircle right of the last column on qubits `(row, d-1), (row + 1, d-1)`.
    Right { row: usize },
}

impl Shape {
    /// Center in doubled lattice units `(2 * row, 2 * col)`, before wrapping.
    pub fn center2(self, d: usize) -> (i64, i64) {
        let d = d as i64;
        match self {
            Shape::Square { row, col } => (2 * row as i64 + 1, 2 * col as i64 + 1),
            Shape::Top { col } => (-1, 2 * col as i64 + 1),
            Shape::Bottom { col } => (2 * d - 1, 2 * col as i64 + 1),
            Shape::Left { row } => (2 * row as i64 + 1, -1),
            Shape::Right { row } => (2 * row as i64 + 1, 2 * d - 1),
        }
    }

    /// Corner positions `(row, col)` in unwrapped lattice coordinates, in
    /// reading order.
    pub fn corners(self, d: usize) -> Vec<(usize, usize)> {
        match self {
            Shape::Square { row, col } => vec![(row, col), (row, col + 1), (row + 1, col), (row + 1, col + 1)],
            Shape::Top { col } => vec![(0, col), (0, col + 1)],
            Shape::Bottom { col } => vec![(d - 1, col), (d - 1, col + 1)],
            Shape::Left { row } => vec![(row, 0), (row + 1, 0)],
            Shape::Right { row } => vec![(row, d - 1), (row + 1, d - 1)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plaquette {
    pub id: usize,
    pub color: Color,
    #[serde(flatten)]
    pub shape: Shape,
    pub qubits: Vec<usize>,
    #[serde(skip)]
    pub stabilizer: PauliOperator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicalLabel {
    #[serde(rename = "X_L")]
    X,
    #[serde(rename = "Z_L")]
    Z,
    #[serde(rename = "X_L1")]
    X1,
    #[serde(rename = "Z_L1")]
    Z1,
    #[serde(rename = "X_L2")]
    X2,
    #[serde(rename = "Z_L2")]
    Z2,
}

impl LogicalLabel {
    pub fn letter(self) -> Letter {
        match self {
            LogicalLabel::X | LogicalLabel::X1 | LogicalLabel::X2 => Letter::X,
            LogicalLabel::Z | LogicalLabel::Z1 | LogicalLabel::Z2 => Letter::Z,
        }
    }
}

impl fmt::Display for LogicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicalLabel::X => "X_L",
            LogicalLabel::Z => "Z_L",
            LogicalLabel::X1 => "X_L1",
            LogicalLabel::Z1 => "Z_L1",
            LogicalLabel::X2 => "X_L2",
            LogicalLabel::Z2 => "Z_L2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalOp {
    pub label: LogicalLabel,
    pub path: Vec<usize>,
    #[serde(skip)]
    pub operator: PauliOperator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StringKind {
    #[serde(rename = "X")]
    X,
    #[serde(rename = "Z")]
    Z,
}

impl StringKind {
    pub fn letter(self) -> Letter {
        match self {
            StringKind::X => Letter::X,
            StringKind::Z => Letter::Z,
        }
    }
}

/// Product of X (or Z) over a list of qubits; repeated qubits cancel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringPath {
    pub kind: StringKind,
    pub qubits: Vec<usize>,
}

impl StringPath {
    pub fn new(kind: StringKind, qubits: Vec<usize>) -> Self {
        Self { kind, qubits }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeLayout {
    pub kind: CodeKind,
    pub d: usize,
    pub n: usize,
    pub plaquettes: Vec<Plaquette>,
    pub logicals: Vec<LogicalOp>,
}

impl CodeLayout {
    pub fn build(kind: CodeKind, d: usize) -> Result<Self> {
        match kind {
            CodeKind::Surface => build_surface_code(d),
            CodeKind::Toric => build_toric_code(d),
        }
    }

    pub fn qubit(&self, row: usize, col: usize) -> usize {
        (row % self.d) * self.d + col % self.d
    }

    pub fn coords(&self, qubit: usize) -> (usize, usize) {
        (qubit / self.d, qubit % self.d)
    }

    pub fn plaquette(&self, id: usize) -> Option<&Plaquette> {
        self.plaquettes.get(id).filter(|p| p.id == id)
    }

    pub fn of_color(&self, color: Color) -> impl Iterator<Item = &Plaquette> + '_ {
        self.plaquettes.iter().filter(move |p| p.color == color)
    }

    pub fn logical(&self, label: LogicalLabel) -> Option<&LogicalOp> {
        self.logicals.iter().find(|l| l.label == label)
    }

    pub fn stabilizers(&self) -> impl Iterator<Item = &PauliOperator> + '_ {
        self.plaquettes.iter().map(|p| &p.stabilizer)
    }

    /// Toric only: the black plaquette at the top-left corner and the white
    /// plaquette at the top-right corner of the bottom-left quarter. Both are
    /// mapped onto parity operators rather than single modes.
    pub fn parity_plaquettes(&self) -> Option<(usize, usize)> {
        if self.kind != CodeKind::Toric {
            return None;
        }
        let h = self.d / 2;
        let b1 = self.square_id(0, 0)?;
        let w1 = self.square_id(h, h - 1)?;
        Some((b1, w1))
    }

    pub fn square_id(&self, row: usize, col: usize) -> Option<usize> {
        self.plaquettes
            .iter()
            .find(|p| p.shape == Shape::Square { row, col })
            .map(|p| p.id)
    }

    pub fn string_operator(&self, path: &StringPath) -> Result<PauliOperator> {
        if path.qubits.is_empty() {
            return Err(Error::EmptyPath);
        }
        PauliOperator::product_of(self.n, &path.qubits, path.kind.letter())
    }

    /// GF(2) rank of the stabilizer generator matrix `[x | z]`.
    pub fn stabilizer_rank(&self) -> usize {
        symplectic_rank(self.stabilizers())
    }

    /// Checks every structural invariant of the layout.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidLayout(m));
        if self.n != self.d * self.d {
            return fail(format!("n = {} but d^2 = {}", self.n, self.d * self.d));
        }
        let (expected, per_color) = match self.kind {
            CodeKind::Surface => (self.d * self.d - 1, (self.d * self.d - 1) / 2),
            CodeKind::Toric => (self.d * self.d, self.d * self.d / 2),
        };
        if self.plaquettes.len() != expected {
            return fail(format!("{} plaquettes, expected {expected}", self.plaquettes.len()));
        }
        for color in [Color::Black, Color::White] {
            let count = self.of_color(color).count();
            if count != per_color {
                return fail(format!("{count} {color:?} plaquettes, expected {per_color}"));
            }
        }
        for (i, p) in self.plaquettes.iter().enumerate() {
            if p.id != i {
                return fail(format!("plaquette at position {i} has id {}", p.id));
            }
            let expect = PauliOperator::product_of(self.n, &p.qubits, p.color.letter())?;
            if p.stabilizer != expect || p.stabilizer.weight() != p.qubits.len() {
                return fail(format!("plaquette {} stabilizer does not match its support", p.id));
            }
        }
        let stabs: Vec<&PauliOperator> = self.stabilizers().collect();
        for (i, a) in stabs.iter().enumerate() {
            for b in &stabs[i + 1..] {
                if !a.commutes(b)? {
                    return fail("stabilizers do not pairwise commute".into());
                }
            }
        }
        for l in &self.logicals {
            if l.operator != PauliOperator::product_of(self.n, &l.path, l.label.letter())? {
                return fail(format!("{} operator does not match its path", l.label));
            }
            for s in &stabs {
                if !l.operator.commutes(s)? {
                    return fail(format!("{} anticommutes with a stabilizer", l.label));
                }
            }
        }
        if self.kind == CodeKind::Toric {
            for color in [Color::Black, Color::White] {
                let mut prod = PauliOperator::identity(self.n);
                for p in self.of_color(color) {
                    prod = prod.mul(&p.stabilizer)?;
                }
                if prod != PauliOperator::identity(self.n) {
                    return fail(format!("product of {color:?} stabilizers is {prod}"));
                }
            }
        }
        Ok(())
    }
}

/// Symplectic row `[x | z]` of width `2n`.
pub fn symplectic_row(p: &PauliOperator) -> BitRow {
    let n = p.n();
    let mut row = BitRow::zeros(2 * n);
    for q in p.x_bits().ones() {
        row.set(q, true);
    }
    for q in p.z_bits().ones() {
        row.set(n + q, true);
    }
    row
}

/// GF(2) rank of a list of Paulis in symplectic form.
pub fn symplectic_rank<'a>(ops: impl IntoIterator<Item = &'a PauliOperator>) -> usize {
    let rows: Vec<BitRow> = ops.into_iter().map(symplectic_row).collect();
    gf2::rank(&rows)
}

fn finish(kind: CodeKind, d: usize, mut raw: Vec<(Color, Shape)>, logicals: Vec<(LogicalLabel, Vec<usize>)>) -> Result<CodeLayout> {
    let n = d * d;
    // reading order per color: all black first, then all white
    raw.sort_by_key(|(color, shape)| (*color, shape.center2(d)));
    let mut plaquettes = Vec::with_capacity(raw.len());
    for (id, (color, shape)) in raw.into_iter().enumerate() {
        let qubits: Vec<usize> = shape.corners(d).into_iter().map(|(r, c)| (r % d) * d + c % d).collect();
        let stabilizer = PauliOperator::product_of(n, &qubits, color.letter())?;
        plaquettes.push(Plaquette {
            id,
            color,
            shape,
            qubits,
            stabilizer,
        });
    }
    let logicals = logicals
        .into_iter()
        .map(|(label, path)| {
            let operator = PauliOperator::product_of(n, &path, label.letter())?;
            Ok(LogicalOp { label, path, operator })
        })
        .collect::<Result<Vec<_>>>()?;
    let layout = CodeLayout {
        kind,
        d,
        n,
        plaquettes,
        logicals,
    };
    layout.validate()?;
    Ok(layout)
}

fn square_color(row: usize, col: usize) -> Color {
    if (row + col) % 2 == 0 {
        Color::Black
    } else {
        Color::White
    }
}

pub fn build_surface_code(d: usize) -> Result<CodeLayout> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidDistance {
            d,
            reason: "surface code distance must be odd and at least 3",
        });
    }
    let mut raw = Vec::new();
    for row in 0..d - 1 {
        for col in 0..d - 1 {
            raw.push((square_color(row, col), Shape::Square { row, col }));
        }
    }
    // Each boundary semicircle sits next to a square of the opposite color.
    for col in 0..d - 1 {
        if square_color(0, col) == Color::Black {
            raw.push((Color::White, Shape::Top { col }));
        }
        if square_color(d - 2, col) == Color::Black {
            raw.push((Color::White, Shape::Bottom { col }));
        }
    }
    for row in 0..d - 1 {
        if square_color(row, 0) == Color::White {
            raw.push((Color::Black, Shape::Left { row }));
        }
        if square_color(row, d - 2) == Color::White {
            raw.push((Color::Black, Shape::Right { row }));
        }
    }
    let left: Vec<usize> = (0..d).map(|r| r * d).collect();
    let bottom: Vec<usize> = (0..d).map(|c| (d - 1) * d + c).collect();
    finish(
        CodeKind::Surface,
        d,
        raw,
        vec![(LogicalLabel::X, left), (LogicalLabel::Z, bottom)],
    )
}

pub fn build_toric_code(d: usize) -> Result<CodeLayout> {
    if d < 4 || d % 2 == 1 {
        return Err(Error::InvalidDistance {
            d,
            reason: "toric code distance must be even and at least 4",
        });
    }
    let mut raw = Vec::new();
    for row in 0..d {
        for col in 0..d {
            raw.push((square_color(row, col), Shape::Square { row, col }));
        }
    }
    let h = d / 2;
    let row = |r: usize| (0..d).map(move |c| r * d + c).collect::<Vec<_>>();
    let col = |c: usize| (0..d).map(move |r| r * d + c).collect::<Vec<_>>();
    finish(
        CodeKind::Toric,
        d,
        raw,
        vec![
            (LogicalLabel::X1, row(h)),
            (LogicalLabel::Z1, col(0)),
            (LogicalLabel::X2, col(h)),
            (LogicalLabel::Z2, row(0)),
        ],
    )
}

/// Serializable view of a layout.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayoutRecord {
    pub schema_version: u32,
    pub kind: CodeKind,
    pub d: usize,
    pub rows: usize,
    pub cols: usize,
    pub plaquettes: Vec<Plaquette>,
    pub logicals: Vec<LogicalOp>,
}

pub const LAYOUT_SCHEMA_VERSION: u32 = 1;

impl From<&CodeLayout> for LayoutRecord {
    fn from(l: &CodeLayout) -> Self {
        Self {
            schema_version: LAYOUT_SCHEMA_VERSION,
            kind: l.kind,
            d: l.d,
            rows: l.d,
            cols: l.d,
            plaquettes: l.plaquettes.clone(),
            logicals: l.logicals.clone(),
        }
    }
}

impl TryFrom<LayoutRecord> for CodeLayout {
    type Error = Error;

    fn try_from(r: LayoutRecord) -> Result<Self> {
        if r.schema_version != LAYOUT_SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found: r.schema_version,
                expected: LAYOUT_SCHEMA_VERSION,
            });
        }
        let n = r.d * r.d;
        let plaquettes = r
            .plaquettes
            .into_iter()
            .map(|mut p| {
                p.stabilizer = PauliOperator::product_of(n, &p.qubits, p.color.letter())?;
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        let logicals = r
            .logicals
            .into_iter()
            .map(|mut l| {
                l.operator = PauliOperator::product_of(n, &l.path, l.label.letter())?;
                Ok(l)
            })
            .collect::<Result<Vec<_>>>()?;
        let layout = CodeLayout {
            kind: r.kind,
            d: r.d,
            n,
            plaquettes,
            logicals,
        };
        layout.validate()?;
        Ok(layout)
    }
}

impl Serialize for CodeLayout {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LayoutRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CodeLayout {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CodeLayout::try_from(LayoutRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
