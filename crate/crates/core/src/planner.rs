//! Synthesis of the C4 rotation sequences that turn every plaquette
//! stabilizer into a single-site Z and every logical operator into a single
//! X or Z on a zero mode.
//!
//! Each plaquette (or logical) gets one *part*. The generator of a part is
//! read off the operator's current form, i.e. after conjugation by every
//! earlier step, with one letter substituted at the part's target qubit:
//!
//! * black plaquettes: `R(+P.Y_t)` then `R(-Y_t)`, sending `P.Z_t` to `Z_t`;
//! * white plaquettes: a single `R(-P.Y_t)`, sending `P.X_t` to `Z_t`;
//! * X logicals: `R(+P.Z_t)` then `R(-Z_t)`; Z logicals: `R(+P.X_t)` then `R(-X_t)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{build_toric_code, CodeKind, CodeLayout, Color, LogicalLabel, Shape};
use crate::pauli::{C4Rotation, Letter, PauliOperator};

pub const PLAN_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Plaquette { id: usize },
    Logical { label: LogicalLabel },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanStep {
    pub rotation: C4Rotation,
    pub provenance: Provenance,
    pub target_qubit: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModeMap {
    /// Plaquette id to the qubit carrying its transformed stabilizer.
    pub dynamic_modes: BTreeMap<usize, usize>,
    pub zero_modes: Vec<usize>,
    /// Toric only: `(b1, w1)`, the plaquettes mapped onto parity operators.
    pub parity_plaquettes: Option<(usize, usize)>,
}

impl ModeMap {
    pub fn plaquette_at(&self, qubit: usize) -> Option<usize> {
        self.dynamic_modes.iter().find(|(_, &q)| q == qubit).map(|(&p, _)| p)
    }

    /// Dynamic-mode qubits of one color, ascending by plaquette id.
    pub fn modes_of(&self, layout: &CodeLayout, color: Color) -> Vec<usize> {
        self.dynamic_modes
            .iter()
            .filter(|(&p, _)| layout.plaquettes[p].color == color)
            .map(|(_, &q)| q)
            .collect()
    }

    /// Distinct dynamic modes, zero modes disjoint from them, and the counts
    /// each code requires.
    pub fn check(&self, layout: &CodeLayout) -> Result<()> {
        let fail = |m: String| Err(Error::Planning(m));
        let mut seen = BTreeSet::new();
        for (&p, &q) in &self.dynamic_modes {
            if q >= layout.n || p >= layout.plaquettes.len() {
                return fail(format!("mode entry {p} -> {q} out of range"));
            }
            if !seen.insert(q) {
                return fail(format!("qubit {q} carries two dynamic modes"));
            }
        }
        for &z in &self.zero_modes {
            if seen.contains(&z) {
                return fail(format!("zero mode {z} coincides with a dynamic mode"));
            }
        }
        let zero: BTreeSet<_> = self.zero_modes.iter().collect();
        let (dynamic, zeros) = match layout.kind {
            CodeKind::Surface => (layout.d * layout.d - 1, 1),
            CodeKind::Toric => (layout.d * layout.d - 2, 2),
        };
        if self.dynamic_modes.len() != dynamic || zero.len() != zeros || self.zero_modes.len() != zeros {
            return fail(format!(
                "{} dynamic and {} zero modes, expected {dynamic} and {zeros}",
                self.dynamic_modes.len(),
                self.zero_modes.len()
            ));
        }
        if self.parity_plaquettes != layout.parity_plaquettes() {
            return fail("parity plaquettes do not match the layout".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformPlan {
    pub kind: CodeKind,
    pub d: usize,
    pub n: usize,
    pub steps: Vec<PlanStep>,
    pub mode_map: ModeMap,
}

impl TransformPlan {
    pub fn rotations(&self) -> impl DoubleEndedIterator<Item = &C4Rotation> + '_ {
        self.steps.iter().map(|s| &s.rotation)
    }

    /// Conjugates `q` through the whole sequence, or undoes it with `inverse`.
    pub fn conjugate(&self, q: &PauliOperator, inverse: bool) -> Result<PauliOperator> {
        q.conjugate_by_sequence(self.rotations(), inverse)
    }

    /// Consecutive steps sharing a provenance.
    pub fn parts(&self) -> Vec<&[PlanStep]> {
        let mut parts = Vec::new();
        let mut start = 0;
        for i in 1..=self.steps.len() {
            if i == self.steps.len() || self.steps[i].provenance != self.steps[start].provenance {
                if i > start {
                    parts.push(&self.steps[start..i]);
                }
                start = i;
            }
        }
        parts
    }

    /// Copy with the step at `index` removed.
    pub fn without_step(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.steps.remove(index);
        out
    }
}

pub fn plan(layout: &CodeLayout) -> Result<TransformPlan> {
    match layout.kind {
        CodeKind::Surface => plan_surface(layout),
        CodeKind::Toric => plan_toric(layout),
    }
}

struct Builder<'a> {
    layout: &'a CodeLayout,
    steps: Vec<PlanStep>,
}

impl<'a> Builder<'a> {
    fn current(&self, op: &PauliOperator) -> Result<PauliOperator> {
        op.conjugate_by_sequence(self.steps.iter().map(|s| &s.rotation), false)
    }

    fn expect_letter(&self, op: &PauliOperator, target: usize, want: Letter, what: &Provenance) -> Result<()> {
        let found = op.letter(target);
        if found != want {
            return Err(Error::Planning(format!(
                "{what:?}: expected {} at qubit {target} but the partially transformed operator {op} has {}",
                want.as_char(),
                found.as_char()
            )));
        }
        Ok(())
    }

    fn push(&mut self, generator: PauliOperator, provenance: Provenance, target_qubit: usize) -> Result<()> {
        self.steps.push(PlanStep {
            rotation: C4Rotation::new(generator)?,
            provenance,
            target_qubit,
        });
        Ok(())
    }

    /// `R(+P.B_t)` then `R(-B_t)`: maps `s P.A_t` to `+A_t`.
    fn two_step(&mut self, original: &PauliOperator, provenance: Provenance, target: usize, letter: Letter, substitute: Letter) -> Result<()> {
        let op = self.current(original)?;
        self.expect_letter(&op, target, letter, &provenance)?;
        let n = self.layout.n;
        self.push(op.with_letter(target, substitute)?, provenance, target)?;
        self.push(PauliOperator::single(n, target, substitute).neg(), provenance, target)
    }

    /// `R(-P.Y_t)`: maps `s P.X_t` to `+Z_t`.
    fn white_step(&mut self, original: &PauliOperator, provenance: Provenance, target: usize) -> Result<()> {
        let op = self.current(original)?;
        self.expect_letter(&op, target, Letter::X, &provenance)?;
        self.push(op.with_letter(target, Letter::Y)?.neg(), provenance, target)
    }

    fn black_part(&mut self, id: usize, target: usize) -> Result<()> {
        let stab = self.layout.plaquettes[id].stabilizer.clone();
        self.two_step(&stab, Provenance::Plaquette { id }, target, Letter::Z, Letter::Y)
    }

    fn white_part(&mut self, id: usize, target: usize) -> Result<()> {
        let stab = self.layout.plaquettes[id].stabilizer.clone();
        self.white_step(&stab, Provenance::Plaquette { id }, target)
    }

    fn logical_part(&mut self, label: LogicalLabel, target: usize) -> Result<()> {
        let op = self
            .layout
            .logical(label)
            .ok_or_else(|| Error::Planning(format!("layout has no {label}")))?
            .operator
            .clone();
        let substitute = match label.letter() {
            Letter::X => Letter::Z,
            _ => Letter::X,
        };
        self.two_step(&op, Provenance::Logical { label }, target, label.letter(), substitute)
    }
}

/// Qubit that ends up carrying a surface plaquette's transformed stabilizer:
/// top-left corner (or top qubit) for black, bottom-right corner (or right
/// qubit) for white.
pub fn surface_target(layout: &CodeLayout, id: usize) -> usize {
    let d = layout.d;
    let p = &layout.plaquettes[id];
    let (r, c) = match (p.color, p.shape) {
        (Color::Black, Shape::Square { row, col }) => (row, col),
        (Color::Black, Shape::Left { row }) => (row, 0),
        (Color::Black, Shape::Right { row }) => (row, d - 1),
        (Color::White, Shape::Square { row, col }) => (row + 1, col + 1),
        (Color::White, Shape::Top { col }) => (0, col + 1),
        (Color::White, Shape::Bottom { col }) => (d - 1, col + 1),
        (color, shape) => unreachable!("{color:?} plaquette with shape {shape:?}"),
    };
    layout.qubit(r, c)
}

pub fn plan_surface(layout: &CodeLayout) -> Result<TransformPlan> {
    if layout.kind != CodeKind::Surface {
        return Err(Error::Planning("surface planner given a toric layout".into()));
    }
    layout.validate()?;
    let d = layout.d;
    let mut b = Builder { layout, steps: Vec::new() };
    let mut mode_map = ModeMap::default();

    // black parts from the top row down
    let mut black: Vec<(usize, usize)> = layout.of_color(Color::Black).map(|p| (p.id, surface_target(layout, p.id))).collect();
    black.sort_by_key(|&(_, t)| layout.coords(t));
    for &(id, t) in &black {
        b.black_part(id, t)?;
        mode_map.dynamic_modes.insert(id, t);
    }

    // white parts from the right column leftwards
    let mut white: Vec<(usize, usize)> = layout.of_color(Color::White).map(|p| (p.id, surface_target(layout, p.id))).collect();
    white.sort_by_key(|&(_, t)| {
        let (r, c) = layout.coords(t);
        (std::cmp::Reverse(c), r)
    });
    for &(id, t) in &white {
        b.white_part(id, t)?;
        mode_map.dynamic_modes.insert(id, t);
    }

    let zero = layout.qubit(d - 1, 0);
    b.logical_part(LogicalLabel::X, zero)?;
    b.logical_part(LogicalLabel::Z, zero)?;
    mode_map.zero_modes.push(zero);

    let plan = TransformPlan {
        kind: CodeKind::Surface,
        d,
        n: layout.n,
        steps: b.steps,
        mode_map,
    };
    plan.mode_map.check(layout)?;
    Ok(plan)
}

/// Corner of a square plaquette that an arrow points to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Direction {
    /// Offset of the target corner from the square's top-left qubit.
    pub fn corner_offset(self) -> (usize, usize) {
        match self {
            Direction::TopLeft => (0, 0),
            Direction::TopRight => (0, 1),
            Direction::BottomLeft => (1, 0),
            Direction::BottomRight => (1, 1),
        }
    }

    /// Offset (mod d) of the same-colored square sharing the target corner.
    fn neighbor_offset(self) -> (isize, isize) {
        match self {
            Direction::TopLeft => (-1, -1),
            Direction::TopRight => (-1, 1),
            Direction::BottomLeft => (1, -1),
            Direction::BottomRight => (1, 1),
        }
    }
}

/// Orientation of one toric plaquette's part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub plaquette: usize,
    pub direction: Direction,
    pub target_qubit: usize,
    /// The plaquette whose part has to run first (the one the arrow points at).
    pub points_at: usize,
}

/// Arrow orientation of a toric plaquette, `None` for the two parity plaquettes.
///
/// Quarters are the `d/2 x d/2` blocks of squares, by top-left qubit.
pub fn toric_direction(d: usize, color: Color, row: usize, col: usize) -> Option<Direction> {
    let h = d / 2;
    let top = row < h;
    let left = col < h;
    match color {
        Color::Black => Some(match (top, left) {
            _ if row == 0 && col == 0 => return None,
            (true, true) if row == col => Direction::TopLeft,
            (true, true) => Direction::BottomRight,
            (true, false) => Direction::BottomLeft,
            (false, true) => Direction::TopRight,
            (false, false) => Direction::TopLeft,
        }),
        Color::White => Some(match (top, left) {
            _ if row == h && col + 1 == h => return None,
            (true, true) => Direction::TopLeft,
            (true, false) => Direction::TopRight,
            (false, false) => Direction::BottomRight,
            (false, true) if row + col == d - 1 => Direction::TopRight,
            (false, true) => Direction::BottomLeft,
        }),
    }
}

pub fn toric_arrows(layout: &CodeLayout) -> Result<Vec<Arrow>> {
    if layout.kind != CodeKind::Toric {
        return Err(Error::Planning("arrows are defined for toric layouts".into()));
    }
    let d = layout.d;
    let mut arrows = Vec::new();
    for p in &layout.plaquettes {
        let Shape::Square { row, col } = p.shape else {
            return Err(Error::InvalidLayout("toric plaquettes must be squares".into()));
        };
        let Some(direction) = toric_direction(d, p.color, row, col) else {
            continue;
        };
        let (dr, dc) = direction.corner_offset();
        let (nr, nc) = direction.neighbor_offset();
        let wrap = |x: usize, dx: isize| ((x as isize + dx).rem_euclid(d as isize)) as usize;
        let points_at = layout
            .square_id(wrap(row, nr), wrap(col, nc))
            .ok_or_else(|| Error::InvalidLayout("missing neighbor square".into()))?;
        arrows.push(Arrow {
            plaquette: p.id,
            direction,
            target_qubit: layout.qubit(row + dr, col + dc),
            points_at,
        });
    }
    Ok(arrows)
}

/// Topological order of the arrows rooted at `root`: a part runs only after
/// the part of the plaquette it points at; ties go to the lowest id.
fn arrow_order(arrows: &[Arrow], root: usize) -> Result<Vec<Arrow>> {
    let mut done: BTreeSet<usize> = BTreeSet::from([root]);
    let mut pending: BTreeMap<usize, Arrow> = arrows.iter().map(|a| (a.plaquette, *a)).collect();
    let mut order = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let next = pending.values().find(|a| done.contains(&a.points_at)).copied();
        let Some(a) = next else {
            let stuck: Vec<usize> = pending.keys().copied().collect();
            return Err(Error::Planning(format!(
                "arrows of plaquettes {stuck:?} never reach parity plaquette {root}"
            )));
        };
        pending.remove(&a.plaquette);
        done.insert(a.plaquette);
        order.push(a);
    }
    Ok(order)
}

pub fn plan_toric(layout: &CodeLayout) -> Result<TransformPlan> {
    if layout.kind != CodeKind::Toric {
        return Err(Error::Planning("toric planner given a surface layout".into()));
    }
    layout.validate()?;
    let canonical = build_toric_code(layout.d)?;
    if canonical.logicals != layout.logicals {
        return Err(Error::Planning(
            "toric arrow rules need Z_L1 on the left column, Z_L2 on the top row and the X logicals through the centre".into(),
        ));
    }
    if canonical.plaquettes != layout.plaquettes {
        return Err(Error::Planning("toric plaquette table is not canonical".into()));
    }
    let d = layout.d;
    let h = d / 2;
    let (b1, w1) = layout.parity_plaquettes().expect("toric layout");
    let arrows = toric_arrows(layout)?;
    let mut b = Builder { layout, steps: Vec::new() };
    let mut mode_map = ModeMap {
        parity_plaquettes: Some((b1, w1)),
        ..ModeMap::default()
    };

    for (color, root) in [(Color::Black, b1), (Color::White, w1)] {
        let of_color: Vec<Arrow> = arrows.iter().filter(|a| layout.plaquettes[a.plaquette].color == color).copied().collect();
        for a in arrow_order(&of_color, root)? {
            match color {
                Color::Black => b.black_part(a.plaquette, a.target_qubit)?,
                Color::White => b.white_part(a.plaquette, a.target_qubit)?,
            }
            mode_map.dynamic_modes.insert(a.plaquette, a.target_qubit);
        }
    }

    let j = layout.qubit(h, 0);
    let k = layout.qubit(0, h);
    b.logical_part(LogicalLabel::X1, j)?;
    b.logical_part(LogicalLabel::Z1, j)?;
    b.logical_part(LogicalLabel::X2, k)?;
    b.logical_part(LogicalLabel::Z2, k)?;
    mode_map.zero_modes = vec![j, k];

    let plan = TransformPlan {
        kind: CodeKind::Toric,
        d,
        n: layout.n,
        steps: b.steps,
        mode_map,
    };
    plan.mode_map.check(layout)?;
    Ok(plan)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepRecord {
    pub generator: PauliOperator,
    pub generator_text: String,
    pub provenance: Provenance,
    pub target_qubit: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeEntry {
    pub plaquette: usize,
    pub qubit: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParityRecord {
    pub black: usize,
    pub white: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeMapRecord {
    pub dynamic_modes: Vec<ModeEntry>,
    pub zero_modes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_plaquettes: Option<ParityRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanRecord {
    pub schema_version: u32,
    pub kind: CodeKind,
    pub d: usize,
    pub n: usize,
    pub steps: Vec<StepRecord>,
    pub mode_map: ModeMapRecord,
}

impl From<&TransformPlan> for PlanRecord {
    fn from(p: &TransformPlan) -> Self {
        Self {
            schema_version: PLAN_SCHEMA_VERSION,
            kind: p.kind,
            d: p.d,
            n: p.n,
            steps: p
                .steps
                .iter()
                .map(|s| StepRecord {
                    generator: s.rotation.generator().clone(),
                    generator_text: s.rotation.generator().to_string(),
                    provenance: s.provenance,
                    target_qubit: s.target_qubit,
                })
                .collect(),
            mode_map: ModeMapRecord {
                dynamic_modes: p
                    .mode_map
                    .dynamic_modes
                    .iter()
                    .map(|(&plaquette, &qubit)| ModeEntry { plaquette, qubit })
                    .collect(),
                zero_modes: p.mode_map.zero_modes.clone(),
                parity_plaquettes: p.mode_map.parity_plaquettes.map(|(black, white)| ParityRecord { black, white }),
            },
        }
    }
}

impl TryFrom<PlanRecord> for TransformPlan {
    type Error = Error;

    fn try_from(r: PlanRecord) -> Result<Self> {
        if r.schema_version != PLAN_SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found: r.schema_version,
                expected: PLAN_SCHEMA_VERSION,
            });
        }
        let steps = r
            .steps
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                if s.generator.n() != r.n {
                    return Err(Error::SizeMismatch { left: r.n, right: s.generator.n() });
                }
                let parsed: PauliOperator = s.generator_text.parse()?;
                if parsed != s.generator {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!("step {i}: generator_text disagrees with generator bits"),
                    });
                }
                Ok(PlanStep {
                    rotation: C4Rotation::new(s.generator)?,
                    provenance: s.provenance,
                    target_qubit: s.target_qubit,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TransformPlan {
            kind: r.kind,
            d: r.d,
            n: r.n,
            steps,
            mode_map: ModeMap {
                dynamic_modes: r.mode_map.dynamic_modes.into_iter().map(|e| (e.plaquette, e.qubit)).collect(),
                zero_modes: r.mode_map.zero_modes,
                parity_plaquettes: r.mode_map.parity_plaquettes.map(|p| (p.black, p.white)),
            },
        })
    }
}

impl Serialize for TransformPlan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlanRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransformPlan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TransformPlan::try_from(PlanRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_surface_code, build_toric_code};

    #[test]
    fn surface_d3_shape_of_plan() {
        let l = build_surface_code(3).unwrap();
        let p = plan_surface(&l).unwrap();
        assert_eq!(p.parts().len(), 10);
        assert_eq!(p.steps.len(), 16);
        assert_eq!(p.mode_map.zero_modes, vec![6]);
        // first part acts on the top-left black square
        assert_eq!(p.steps[0].rotation.generator().to_string(), "+YZIZZIIII");
        assert_eq!(p.steps[1].rotation.generator().to_string(), "-YIIIIIIII");
    }

    #[test]
    fn surface_d3_white_generators_follow_recipe() {
        let l = build_surface_code(3).unwrap();
        let p = plan_surface(&l).unwrap();
        let parts = p.parts();
        // white parts are single rotations carrying -Y at their target
        for part in &parts[4..8] {
            assert_eq!(part.len(), 1);
            let s = &part[0];
            let g = s.rotation.generator();
            assert_eq!(g.letter(s.target_qubit), Letter::Y);
            assert_eq!(g.letter_phase(), 2, "{g}");
        }
    }

    #[test]
    fn toric_d4_counts() {
        let l = build_toric_code(4).unwrap();
        let p = plan_toric(&l).unwrap();
        let parts = p.parts();
        let black = parts
            .iter()
            .filter(|part| matches!(part[0].provenance, Provenance::Plaquette { id } if l.plaquettes[id].color == Color::Black))
            .count();
        assert_eq!(black, 7);
        assert_eq!(parts.len(), 7 + 7 + 4);
        assert_eq!(p.steps.len(), 29);
    }

    #[test]
    fn toric_first_black_part_points_at_b1() {
        let l = build_toric_code(6).unwrap();
        let p = plan_toric(&l).unwrap();
        let Provenance::Plaquette { id } = p.steps[0].provenance else { panic!() };
        assert_eq!(l.plaquettes[id].shape, Shape::Square { row: 1, col: 1 });
    }

    #[test]
    fn arrows_form_trees() {
        for d in [4, 6, 8, 10, 12] {
            let l = build_toric_code(d).unwrap();
            let arrows = toric_arrows(&l).unwrap();
            assert_eq!(arrows.len(), d * d - 2);
            let (b1, w1) = l.parity_plaquettes().unwrap();
            for (color, root) in [(Color::Black, b1), (Color::White, w1)] {
                let of: Vec<Arrow> = arrows.iter().filter(|a| l.plaquettes[a.plaquette].color == color).copied().collect();
                assert_eq!(arrow_order(&of, root).unwrap().len(), d * d / 2 - 1);
            }
        }
    }

    #[test]
    fn non_canonical_toric_rejected() {
        let mut l = build_toric_code(4).unwrap();
        let path: Vec<usize> = (0..4).map(|c| 4 + c).collect();
        l.logicals[0].path = path.clone();
        l.logicals[0].operator = PauliOperator::product_of(16, &path, Letter::X).unwrap();
        assert!(matches!(plan_toric(&l), Err(Error::Planning(_))));
    }

    #[test]
    fn wrong_kind_rejected() {
        let s = build_surface_code(3).unwrap();
        assert!(plan_toric(&s).is_err());
        let t = build_toric_code(4).unwrap();
        assert!(plan_surface(&t).is_err());
    }

    #[test]
    fn deterministic() {
        let l = build_toric_code(6).unwrap();
        assert_eq!(plan_toric(&l).unwrap(), plan_toric(&l).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let l = build_surface_code(3).unwrap();
        let p = plan_surface(&l).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"schema_version\":1"));
        let back: TransformPlan = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
