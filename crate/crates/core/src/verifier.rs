//! Exact checks of transformed operator forms, syndromes and string
//! operators against a plan's mode map.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CodeKind, CodeLayout, Color, LogicalLabel, StringPath};
use crate::pauli::{Letter, PauliOperator};
use crate::planner::TransformPlan;
use crate::sampling;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Stabilizer,
    Parity,
    Logical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationEntry {
    pub label: String,
    pub role: Role,
    pub original: String,
    pub transformed: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub left: LogicalLabel,
    pub right: LogicalLabel,
    pub commute_before: bool,
    pub commute_after: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub kind: CodeKind,
    pub d: usize,
    pub steps: usize,
    pub entries: Vec<ValidationEntry>,
    pub logical_relations: Vec<RelationCheck>,
    pub mode_map_error: Option<String>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn passed_targets(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationEntry> + '_ {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn z_product(n: usize, qubits: &[usize]) -> PauliOperator {
    PauliOperator::product_of(n, qubits, Letter::Z).expect("mode qubits are in range")
}

fn zero_mode_for(plan: &TransformPlan, label: LogicalLabel) -> Option<usize> {
    let slot = match label {
        LogicalLabel::X | LogicalLabel::Z | LogicalLabel::X1 | LogicalLabel::Z1 => 0,
        LogicalLabel::X2 | LogicalLabel::Z2 => 1,
    };
    plan.mode_map.zero_modes.get(slot).copied()
}

/// Target form of every plaquette stabilizer in the transformed picture:
/// `+Z` on its mode, or for parity plaquettes the product of `Z` over all
/// other modes of that color.
pub fn target_stabilizers(plan: &TransformPlan, layout: &CodeLayout) -> Vec<Option<PauliOperator>> {
    let parity = plan.mode_map.parity_plaquettes;
    layout
        .plaquettes
        .iter()
        .map(|p| {
            if let Some(&q) = plan.mode_map.dynamic_modes.get(&p.id) {
                return Some(PauliOperator::single(layout.n, q, Letter::Z));
            }
            match parity {
                Some((b1, w1)) if p.id == b1 || p.id == w1 => {
                    Some(z_product(layout.n, &plan.mode_map.modes_of(layout, p.color)))
                }
                _ => None,
            }
        })
        .collect()
}

fn check_sizes(plan: &TransformPlan, layout: &CodeLayout) -> Result<()> {
    if plan.n != layout.n || plan.kind != layout.kind || plan.d != layout.d {
        return Err(Error::SizeMismatch { left: layout.n, right: plan.n });
    }
    for s in &plan.steps {
        if s.rotation.n() != layout.n {
            return Err(Error::SizeMismatch { left: layout.n, right: s.rotation.n() });
        }
    }
    Ok(())
}

/// Conjugates every stabilizer and logical through the plan and compares
/// against the expected single-mode and parity forms, phase included.
pub fn check_code_transform(plan: &TransformPlan, layout: &CodeLayout) -> Result<ValidationReport> {
    check_sizes(plan, layout)?;
    let targets = target_stabilizers(plan, layout);
    let mut entries = Vec::new();
    for (p, target) in layout.plaquettes.iter().zip(&targets) {
        let transformed = plan.conjugate(&p.stabilizer, false)?;
        let is_parity = matches!(plan.mode_map.parity_plaquettes, Some((b, w)) if p.id == b || p.id == w);
        let color = match p.color {
            Color::Black => "B_b",
            Color::White => "B_w",
        };
        entries.push(ValidationEntry {
            label: format!("{color}[{}]", p.id),
            role: if is_parity { Role::Parity } else { Role::Stabilizer },
            original: p.stabilizer.to_string(),
            transformed: transformed.to_string(),
            expected: target.as_ref().map_or_else(|| "no mode assigned".into(), |t| t.to_string()),
            pass: target.as_ref() == Some(&transformed),
        });
    }
    let mut transformed_logicals = Vec::new();
    for l in &layout.logicals {
        let transformed = plan.conjugate(&l.operator, false)?;
        let expected = zero_mode_for(plan, l.label).map(|q| PauliOperator::single(layout.n, q, l.label.letter()));
        entries.push(ValidationEntry {
            label: l.label.to_string(),
            role: Role::Logical,
            original: l.operator.to_string(),
            transformed: transformed.to_string(),
            expected: expected.as_ref().map_or_else(|| "no zero mode".into(), |t| t.to_string()),
            pass: expected.as_ref() == Some(&transformed),
        });
        transformed_logicals.push((l, transformed));
    }
    let mut logical_relations = Vec::new();
    for (i, (a, ta)) in transformed_logicals.iter().enumerate() {
        for (b, tb) in &transformed_logicals[i + 1..] {
            let before = a.operator.commutes(&b.operator)?;
            let after = ta.commutes(tb)?;
            // same-index X/Z pairs anticommute, every other pair commutes
            let partners = matches!(
                (a.label, b.label),
                (LogicalLabel::X, LogicalLabel::Z)
                    | (LogicalLabel::X1, LogicalLabel::Z1)
                    | (LogicalLabel::X2, LogicalLabel::Z2)
            );
            logical_relations.push(RelationCheck {
                left: a.label,
                right: b.label,
                commute_before: before,
                commute_after: after,
                pass: before == after && before != partners,
            });
        }
    }
    let mode_map_error = plan.mode_map.check(layout).err().map(|e| e.to_string());
    let passed =
        mode_map_error.is_none() && entries.iter().all(|e| e.pass) && logical_relations.iter().all(|r| r.pass);
    Ok(ValidationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: layout.kind,
        d: layout.d,
        steps: plan.steps.len(),
        entries,
        logical_relations,
        mode_map_error,
        passed,
    })
}

/// Accepts a plan only if every target form holds.
pub fn validate_plan(plan: &TransformPlan, layout: &CodeLayout) -> Result<ValidationReport> {
    check_code_transform(plan, layout)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeSet {
    pub plaquettes: Vec<usize>,
    /// Toric only: whether the operator anticommutes with the black and white
    /// parity operators once transformed, i.e. with `B_b1` and `B_w1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_black: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_white: Option<bool>,
}

/// Plaquettes whose stabilizer anticommutes with `op`.
pub fn syndrome(layout: &CodeLayout, op: &PauliOperator) -> Result<SyndromeSet> {
    if op.n() != layout.n {
        return Err(Error::SizeMismatch { left: layout.n, right: op.n() });
    }
    let mut plaquettes = Vec::new();
    for p in &layout.plaquettes {
        if !p.stabilizer.commutes(op)? {
            plaquettes.push(p.id);
        }
    }
    let parity = layout.parity_plaquettes();
    Ok(SyndromeSet {
        parity_black: parity.map(|(b1, _)| plaquettes.contains(&b1)),
        parity_white: parity.map(|(_, w1)| plaquettes.contains(&w1)),
        plaquettes,
    })
}

/// Plaquettes whose transformed (target-form) stabilizer anticommutes with a
/// transformed-picture operator.
pub fn transformed_syndrome(plan: &TransformPlan, layout: &CodeLayout, op: &PauliOperator) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (id, target) in target_stabilizers(plan, layout).into_iter().enumerate() {
        let target = target.ok_or_else(|| Error::Planning(format!("plaquette {id} has no transformed form")))?;
        if !target.commutes(op)? {
            out.push(id);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeLetter {
    pub qubit: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plaquette: Option<usize>,
    pub letter: Letter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapDirection {
    /// Spin picture to fermion picture.
    Forward,
    /// Fermion picture back to the spin picture.
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringMapReport {
    pub direction: MapDirection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<StringPath>,
    pub original: String,
    pub transformed: String,
    /// Letters of the fermion-picture operator on dynamic modes.
    pub dynamic_letters: Vec<ModeLetter>,
    /// Letters of the fermion-picture operator on zero modes (logical action).
    pub zero_mode_letters: Vec<ModeLetter>,
    /// Syndrome in the picture the operator starts in.
    pub endpoints_before: Vec<usize>,
    /// Syndrome in the picture it is mapped to.
    pub endpoints_after: Vec<usize>,
    pub preserved: bool,
}

fn mode_letters(plan: &TransformPlan, op: &PauliOperator) -> (Vec<ModeLetter>, Vec<ModeLetter>) {
    let mut dynamic = Vec::new();
    let mut zero = Vec::new();
    for q in op.support() {
        let letter = op.letter(q);
        if let Some(p) = plan.mode_map.plaquette_at(q) {
            dynamic.push(ModeLetter { qubit: q, plaquette: Some(p), letter });
        } else if plan.mode_map.zero_modes.contains(&q) {
            zero.push(ModeLetter { qubit: q, plaquette: None, letter });
        }
    }
    (dynamic, zero)
}

/// Maps a spin-picture operator through the plan and compares its syndrome
/// with the anticommutation set of the image against the transformed
/// stabilizers.
pub fn map_operator(plan: &TransformPlan, layout: &CodeLayout, op: &PauliOperator) -> Result<StringMapReport> {
    check_sizes(plan, layout)?;
    let image = plan.conjugate(op, false)?;
    let before = syndrome(layout, op)?.plaquettes;
    let after = transformed_syndrome(plan, layout, &image)?;
    let (dynamic_letters, zero_mode_letters) = mode_letters(plan, &image);
    Ok(StringMapReport {
        direction: MapDirection::Forward,
        path: None,
        original: op.to_string(),
        transformed: image.to_string(),
        dynamic_letters,
        zero_mode_letters,
        preserved: before == after,
        endpoints_before: before,
        endpoints_after: after,
    })
}

pub fn map_string(plan: &TransformPlan, layout: &CodeLayout, path: &StringPath) -> Result<StringMapReport> {
    let op = layout.string_operator(path)?;
    let mut report = map_operator(plan, layout, &op)?;
    report.path = Some(path.clone());
    Ok(report)
}

/// Pulls a single `X` on a dynamic mode back to the spin picture.
pub fn inverse_image_of_single_x(plan: &TransformPlan, layout: &CodeLayout, mode_qubit: usize) -> Result<StringMapReport> {
    check_sizes(plan, layout)?;
    if plan.mode_map.plaquette_at(mode_qubit).is_none() {
        return Err(Error::NotDynamicMode(mode_qubit));
    }
    let op = PauliOperator::single(layout.n, mode_qubit, Letter::X);
    let preimage = plan.conjugate(&op, true)?;
    let before = transformed_syndrome(plan, layout, &op)?;
    let after = syndrome(layout, &preimage)?.plaquettes;
    let (dynamic_letters, zero_mode_letters) = mode_letters(plan, &op);
    Ok(StringMapReport {
        direction: MapDirection::Inverse,
        path: None,
        original: op.to_string(),
        transformed: preimage.to_string(),
        dynamic_letters,
        zero_mode_letters,
        preserved: before == after,
        endpoints_before: before,
        endpoints_after: after,
    })
}

/// `+1` or `-1` from `a b a^-1 b^-1` for Hermitian Paulis.
pub fn commutator_phase(a: &PauliOperator, b: &PauliOperator) -> Result<i8> {
    Ok(if a.commutes(b)? { 1 } else { -1 })
}

/// Group commutator of an X string and a Z string, computed by explicit
/// multiplication `O_X O_Z O_X O_Z`.
pub fn braiding_phase_check(layout: &CodeLayout, x_path: &StringPath, z_path: &StringPath) -> Result<i8> {
    let ox = layout.string_operator(x_path)?;
    let oz = layout.string_operator(z_path)?;
    product_phase(&[&ox, &oz, &ox, &oz])
}

/// The same commutator after mapping both strings through `plan`.
pub fn braiding_phase_transformed(plan: &TransformPlan, layout: &CodeLayout, x_path: &StringPath, z_path: &StringPath) -> Result<i8> {
    let ox = plan.conjugate(&layout.string_operator(x_path)?, false)?;
    let oz = plan.conjugate(&layout.string_operator(z_path)?, false)?;
    product_phase(&[&ox, &oz, &ox, &oz])
}

fn product_phase(ops: &[&PauliOperator]) -> Result<i8> {
    let mut acc = PauliOperator::identity(ops[0].n());
    for op in ops {
        acc = acc.mul(op)?;
    }
    match (acc.is_identity(), acc.phase_exp()) {
        (true, 0) => Ok(1),
        (true, 2) => Ok(-1),
        _ => Err(Error::Planning(format!("group commutator {acc} is not +-1"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCreation {
    pub mode_qubit: usize,
    pub plaquette: usize,
    pub expected: Vec<usize>,
    pub endpoints: Vec<usize>,
    pub pass: bool,
}

/// For every dynamic mode, the spin-picture syndrome of the inverse image of
/// `X` on that mode. On the torus it must be the mode's plaquette together
/// with the parity plaquette of the same color; on the surface, the
/// plaquette alone.
pub fn pair_creation_check(plan: &TransformPlan, layout: &CodeLayout) -> Result<Vec<PairCreation>> {
    let mut out = Vec::new();
    for (&plaquette, &mode_qubit) in &plan.mode_map.dynamic_modes {
        let report = inverse_image_of_single_x(plan, layout, mode_qubit)?;
        let mut expected = vec![plaquette];
        if let Some((b1, w1)) = plan.mode_map.parity_plaquettes {
            expected.push(match layout.plaquettes[plaquette].color {
                Color::Black => b1,
                Color::White => w1,
            });
        }
        expected.sort_unstable();
        out.push(PairCreation {
            mode_qubit,
            plaquette,
            pass: report.endpoints_after == expected,
            expected,
            endpoints: report.endpoints_after,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomCheckSummary {
    pub seed: u64,
    pub paths: usize,
    pub endpoints_preserved: usize,
    pub operator_pairs: usize,
    pub commutators_invariant: usize,
    pub crossings: usize,
    pub crossings_braiding: usize,
}

impl RandomCheckSummary {
    pub fn passed(&self) -> bool {
        self.paths == self.endpoints_preserved
            && self.operator_pairs == self.commutators_invariant
            && self.crossings == self.crossings_braiding
    }
}

/// Seeded random string paths (endpoint preservation), random Hermitian
/// operator pairs (commutator invariance) and single crossings (braiding
/// phase `-1` before and after the plan).
pub fn random_checks(plan: &TransformPlan, layout: &CodeLayout, count: usize, seed: u64) -> Result<RandomCheckSummary> {
    let mut rng = sampling::seeded(seed);
    let mut s = RandomCheckSummary { seed, paths: count, operator_pairs: count, crossings: count, ..Default::default() };
    for _ in 0..count {
        let steps = rng.gen_range(0..=2 * layout.d);
        let path = sampling::random_string_path(&mut rng, layout, steps);
        if map_string(plan, layout, &path)?.preserved {
            s.endpoints_preserved += 1;
        }
        let a = sampling::random_hermitian(&mut rng, layout.n);
        let b = sampling::random_hermitian(&mut rng, layout.n);
        let before = commutator_phase(&a, &b)?;
        let after = commutator_phase(&plan.conjugate(&a, false)?, &plan.conjugate(&b, false)?)?;
        if before == after {
            s.commutators_invariant += 1;
        }
        let (x, z) = sampling::crossing_pair(&mut rng, layout);
        if braiding_phase_check(layout, &x, &z)? == -1 && braiding_phase_transformed(plan, layout, &x, &z)? == -1 {
            s.crossings_braiding += 1;
        }
    }
    Ok(s)
}

/// Plaquette ids whose set differs between two syndromes.
pub fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let a: BTreeSet<_> = a.iter().collect();
    let b: BTreeSet<_> = b.iter().collect();
    a.symmetric_difference(&b).map(|&&x| x).collect()
}
