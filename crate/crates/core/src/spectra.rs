//! Exact energy spectra in integer units of J (J = 1), the free-mode
//! decomposition model, dense isospectrality and flat entanglement levels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dense::{self, Scalar};
use crate::error::{Error, Result};
use crate::gf2::{self, BitRow};
use crate::lattice::{symplectic_row, CodeKind, CodeLayout, Color, LogicalLabel};
use crate::pauli::PauliOperator;
use crate::planner::TransformPlan;
use crate::verifier::target_stabilizers;

/// Largest qubit count whose `2^n` total fits a `u128` degeneracy.
pub const MAX_SPECTRUM_QUBITS: usize = 127;

/// Multiset of energies: energy (units of J) to degeneracy.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub levels: BTreeMap<i64, u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub energy: i64,
    pub degeneracy: u128,
}

impl Spectrum {
    pub fn add(&mut self, energy: i64, degeneracy: u128) -> Result<()> {
        if degeneracy == 0 {
            return Ok(());
        }
        let slot = self.levels.entry(energy).or_insert(0);
        *slot = slot.checked_add(degeneracy).ok_or(Error::SpectrumOverflow { n: 128 })?;
        Ok(())
    }

    pub fn total(&self) -> u128 {
        self.levels.values().sum()
    }

    pub fn ground(&self) -> Option<Level> {
        self.levels.iter().next().map(|(&energy, &degeneracy)| Level { energy, degeneracy })
    }

    pub fn rows(&self) -> Vec<Level> {
        self.levels.iter().map(|(&energy, &degeneracy)| Level { energy, degeneracy }).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("energy,degeneracy\n");
        for l in self.rows() {
            out.push_str(&format!("{},{}\n", l.energy, l.degeneracy));
        }
        out
    }
}

/// `C(n, k)` for `k = 0..=n`, overflow-checked.
fn binomial_row(n: usize) -> Result<Vec<u128>> {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![0u128; row.len() + 1];
        for (k, &c) in row.iter().enumerate() {
            next[k] = next[k].checked_add(c).ok_or(Error::SpectrumOverflow { n })?;
            next[k + 1] = next[k + 1].checked_add(c).ok_or(Error::SpectrumOverflow { n })?;
        }
        row = next;
    }
    Ok(row)
}

fn convolve(a: &[u128], b: &[u128], n: usize) -> Result<Vec<u128>> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = x.checked_mul(y).ok_or(Error::SpectrumOverflow { n })?;
            out[i + j] = out[i + j].checked_add(p).ok_or(Error::SpectrumOverflow { n })?;
        }
    }
    Ok(out)
}

/// Energy spectrum of `H = -J sum_p B_p` from the syndrome structure alone.
///
/// Realizable syndromes are those orthogonal to every product of stabilizers
/// that equals the identity; each carries `2^(n - rank)` states. Violating
/// `m` plaquettes costs `2Jm` above `-J * #plaquettes`.
pub fn code_energy_spectrum(layout: &CodeLayout) -> Result<Spectrum> {
    let n = layout.n;
    if n > MAX_SPECTRUM_QUBITS {
        return Err(Error::SpectrumOverflow { n });
    }
    let rows: Vec<BitRow> = layout.stabilizers().map(symplectic_row).collect();
    let m = rows.len();
    let rank = gf2::rank(&rows);
    let relations = gf2::left_nullspace(&rows);
    // every relation must cover its own block of plaquettes
    let mut covered = BitRow::zeros(m);
    for r in &relations {
        if r.and_count(&covered) != 0 {
            return Err(Error::InvalidLayout("overlapping stabilizer relations".into()));
        }
        covered = covered.or(r);
    }
    let free = m - covered.count_ones();
    let mut counts = binomial_row(free)?;
    for r in &relations {
        let mut even = binomial_row(r.count_ones())?;
        for (k, c) in even.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = 0;
            }
        }
        counts = convolve(&counts, &even, n)?;
    }
    let per_syndrome = 1u128 << (n - rank);
    let mut spectrum = Spectrum::default();
    for (k, &c) in counts.iter().enumerate() {
        let deg = c.checked_mul(per_syndrome).ok_or(Error::SpectrumOverflow { n })?;
        spectrum.add(-(m as i64) + 2 * k as i64, deg)?;
    }
    Ok(spectrum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "groups", rename_all = "snake_case")]
pub enum OccupationConstraint {
    None,
    /// Each listed group of mode indices must hold an even occupation.
    EvenPerGroup(Vec<Vec<usize>>),
    EvenTotal,
}

/// `E = e0 + sum_j eps_j n_j` over admissible occupations, each level
/// multiplied by the logical degeneracy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumModel {
    pub e0: i64,
    pub epsilons: Vec<i64>,
    pub constraint: OccupationConstraint,
    pub multiplier: u128,
}

impl SpectrumModel {
    /// All modes at `2J` above a ground energy of `-J * #plaquettes`.
    /// Surface: `d^2 - 1` unconstrained modes, two logical states. Toric:
    /// `d^2` modes with even occupation per color, four logical states.
    pub fn free_witness(layout: &CodeLayout) -> Self {
        let m = layout.plaquettes.len();
        let (constraint, multiplier) = match layout.kind {
            CodeKind::Surface => (OccupationConstraint::None, 2),
            CodeKind::Toric => {
                let group = |c: Color| layout.of_color(c).map(|p| p.id).collect::<Vec<_>>();
                (OccupationConstraint::EvenPerGroup(vec![group(Color::Black), group(Color::White)]), 4)
            }
        };
        Self { e0: -(m as i64), epsilons: vec![2; m], constraint, multiplier }
    }

    /// The alternative reading of the toric constraint: even total occupation.
    pub fn even_total_witness(layout: &CodeLayout) -> Self {
        Self { constraint: OccupationConstraint::EvenTotal, ..Self::free_witness(layout) }
    }

    pub fn generate(&self) -> Result<Spectrum> {
        let n = self.epsilons.len();
        let groups: Vec<Vec<usize>> = match &self.constraint {
            OccupationConstraint::None => Vec::new(),
            OccupationConstraint::EvenTotal => vec![(0..n).collect()],
            OccupationConstraint::EvenPerGroup(g) => g.clone(),
        };
        if groups.len() > 64 || groups.iter().flatten().any(|&j| j >= n) {
            return Err(Error::UnsupportedTerm("occupation constraint groups".into()));
        }
        let mut member = vec![0u64; n];
        for (g, modes) in groups.iter().enumerate() {
            for &j in modes {
                member[j] ^= 1 << g;
            }
        }
        let mut dp: BTreeMap<(u64, i64), u128> = BTreeMap::from([((0, 0), 1)]);
        for (j, &eps) in self.epsilons.iter().enumerate() {
            let mut next = BTreeMap::new();
            for (&(mask, e), &c) in &dp {
                for (m2, e2) in [(mask, e), (mask ^ member[j], e + eps)] {
                    let slot: &mut u128 = next.entry((m2, e2)).or_insert(0);
                    *slot = slot.checked_add(c).ok_or(Error::SpectrumOverflow { n })?;
                }
            }
            dp = next;
        }
        let mut spectrum = Spectrum::default();
        for ((mask, e), c) in dp {
            if mask == 0 {
                let deg = c.checked_mul(self.multiplier).ok_or(Error::SpectrumOverflow { n })?;
                spectrum.add(self.e0 + e, deg)?;
            }
        }
        Ok(spectrum)
    }
}

/// True iff `model` generates exactly `spectrum`.
pub fn free_decomposition_check(spectrum: &Spectrum, model: &SpectrumModel) -> bool {
    model.generate().is_ok_and(|s| &s == spectrum)
}

/// Exact spectrum of `sum_t c_t P_t` for commuting Z-type terms, by dynamic
/// programming over computational basis states. Single-site terms are summed
/// directly; multi-site terms (at most 64) are tracked by parity.
pub fn diagonal_spectrum(n: usize, terms: &[(i64, PauliOperator)]) -> Result<Spectrum> {
    if n > MAX_SPECTRUM_QUBITS {
        return Err(Error::SpectrumOverflow { n });
    }
    let mut constant = 0i64;
    let mut single = vec![0i64; n];
    let mut multi: Vec<i64> = Vec::new();
    let mut member = vec![0u64; n];
    for (coeff, p) in terms {
        if p.n() != n {
            return Err(Error::SizeMismatch { left: n, right: p.n() });
        }
        if !p.is_z_type() || !p.is_hermitian() {
            return Err(Error::UnsupportedTerm(p.to_string()));
        }
        let c = if p.letter_phase() == 2 { -coeff } else { *coeff };
        let support = p.support();
        match support.len() {
            0 => constant += c,
            1 => single[support[0]] += c,
            _ => {
                if multi.len() == 64 {
                    return Err(Error::UnsupportedTerm(p.to_string()));
                }
                for q in support {
                    member[q] |= 1 << multi.len();
                }
                multi.push(c);
            }
        }
    }
    // bit set means Z = -1 on that qubit
    let mut dp: BTreeMap<(u64, i64), u128> = BTreeMap::from([((0, constant), 1)]);
    for q in 0..n {
        let mut next = BTreeMap::new();
        for (&(mask, e), &c) in &dp {
            for (m2, e2) in [(mask, e + single[q]), (mask ^ member[q], e - single[q])] {
                *next.entry((m2, e2)).or_insert(0u128) += c;
            }
        }
        dp = next;
    }
    let mut spectrum = Spectrum::default();
    for ((mask, e), c) in dp {
        let parity_energy: i64 = multi
            .iter()
            .enumerate()
            .map(|(t, &coef)| if mask >> t & 1 == 1 { -coef } else { coef })
            .sum();
        spectrum.add(e + parity_energy, c)?;
    }
    Ok(spectrum)
}

/// Spectrum of the transformed Hamiltonian `-J sum_p U B_p U^dagger`, each
/// term obtained by conjugation through the plan.
pub fn transformed_spectrum(plan: &TransformPlan, layout: &CodeLayout) -> Result<Spectrum> {
    let terms = layout
        .stabilizers()
        .map(|s| Ok((-1, plan.conjugate(s, false)?)))
        .collect::<Result<Vec<_>>>()?;
    diagonal_spectrum(layout.n, &terms)
}

fn hamiltonian_terms<'a>(ops: impl IntoIterator<Item = &'a PauliOperator>) -> Vec<(f64, PauliOperator)> {
    ops.into_iter().map(|p| (-1.0, p.clone())).collect()
}

/// Max entrywise deviation between `W^dagger H W` (W the ordered rotation
/// product) and `target`, both given as Pauli sums.
pub fn dense_conjugation_deviation<'a, T: Scalar>(
    n: usize,
    rotations: impl IntoIterator<Item = &'a crate::pauli::C4Rotation>,
    hamiltonian: &[(f64, PauliOperator)],
    target: &[(f64, PauliOperator)],
) -> Result<T> {
    let h = dense::hamiltonian_matrix::<T>(n, hamiltonian)?;
    let u = dense::sequence_unitary::<T>(n, rotations)?;
    let t = dense::hamiltonian_matrix::<T>(n, target)?;
    Ok(dense::max_abs_diff(&dense::conjugate(&h, &u), &t))
}

/// Conjugates the dense code Hamiltonian through the plan and compares it
/// with the free-mode Hamiltonian built from the plan's mode map.
pub fn dense_isospectrality<T: Scalar>(plan: &TransformPlan, layout: &CodeLayout) -> Result<T> {
    if plan.n != layout.n {
        return Err(Error::SizeMismatch { left: layout.n, right: plan.n });
    }
    let targets = target_stabilizers(plan, layout)
        .into_iter()
        .enumerate()
        .map(|(id, t)| t.ok_or_else(|| Error::Planning(format!("plaquette {id} has no mode"))))
        .collect::<Result<Vec<_>>>()?;
    dense_conjugation_deviation::<T>(
        layout.n,
        plan.rotations(),
        &hamiltonian_terms(layout.stabilizers()),
        &hamiltonian_terms(&targets),
    )
}

/// Eigenvalues of the dense code Hamiltonian rounded to integer levels, and
/// the largest rounding error.
pub fn dense_spectrum<T: Scalar>(layout: &CodeLayout) -> Result<(Spectrum, f64)> {
    let h = dense::hamiltonian_matrix::<T>(layout.n, &hamiltonian_terms(layout.stabilizers()))?;
    let mut spectrum = Spectrum::default();
    let mut worst = 0.0f64;
    for ev in dense::hermitian_eigenvalues(&h)? {
        let v = num_traits::ToPrimitive::to_f64(&ev).unwrap_or(f64::NAN);
        let e = v.round();
        worst = worst.max((v - e).abs());
        spectrum.add(e as i64, 1)?;
    }
    Ok((spectrum, worst))
}

/// Stabilizers of the ground state with every logical `Z` fixed to `+1`.
pub fn ground_state_stabilizers(layout: &CodeLayout) -> Vec<PauliOperator> {
    let mut out: Vec<PauliOperator> = layout.stabilizers().cloned().collect();
    for label in [LogicalLabel::Z, LogicalLabel::Z1, LogicalLabel::Z2] {
        if let Some(l) = layout.logical(label) {
            out.push(l.operator.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub region: Vec<usize>,
    /// `s`: the reduced state is uniform over `2^s` levels of weight `2^-s`.
    pub entropy_bits: usize,
    pub flat_level_count: u128,
    pub flat: bool,
    /// Plaquettes with support on both sides of the cut.
    pub boundary_plaquettes: usize,
    /// `2^(|boundary| - 1)`, reported for comparison only.
    pub boundary_formula_levels: u128,
    pub matches_boundary_formula: bool,
}

/// Flat entanglement level count of the pure stabilizer state generated by
/// `state_stabilizers`, restricted to `region`.
///
/// With `G_A` the subgroup supported in `A`, `s = |A| - dim G_A`, and
/// `dim G_A = n - rank(generators restricted to the complement)`.
pub fn entanglement_flat_levels(
    layout: &CodeLayout,
    state_stabilizers: &[PauliOperator],
    region: &[usize],
) -> Result<EntanglementReport> {
    let n = layout.n;
    for s in state_stabilizers {
        if s.n() != n {
            return Err(Error::SizeMismatch { left: n, right: s.n() });
        }
    }
    let region: Vec<usize> = region.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(&q) = region.iter().find(|&&q| q >= n) {
        return Err(Error::QubitOutOfRange { index: q, n });
    }
    let rows: Vec<BitRow> = state_stabilizers.iter().map(symplectic_row).collect();
    let rank = gf2::rank(&rows);
    if rank != n {
        return Err(Error::NonMaximalGroup { rank, n });
    }
    let inside: BTreeSet<usize> = region.iter().copied().collect();
    let complement: Vec<usize> = (0..n).filter(|q| !inside.contains(q)).collect();
    let restricted: Vec<BitRow> = rows
        .iter()
        .map(|r| {
            let mut out = BitRow::zeros(2 * complement.len());
            for (k, &q) in complement.iter().enumerate() {
                out.set(k, r.get(q));
                out.set(complement.len() + k, r.get(n + q));
            }
            out
        })
        .collect();
    let dim_inside = n - gf2::rank(&restricted);
    let s = region.len() - dim_inside;
    let boundary = layout
        .plaquettes
        .iter()
        .filter(|p| {
            let k = p.qubits.iter().filter(|q| inside.contains(q)).count();
            k > 0 && k < p.qubits.len()
        })
        .count();
    let pow = |e: usize| 1u128.checked_shl(e as u32).filter(|_| e < 128);
    let flat_level_count = pow(s).ok_or(Error::SpectrumOverflow { n })?;
    let boundary_formula_levels = if boundary == 0 { 0 } else { pow(boundary - 1).unwrap_or(0) };
    Ok(EntanglementReport {
        region,
        entropy_bits: s,
        flat_level_count,
        flat: true,
        boundary_plaquettes: boundary,
        boundary_formula_levels,
        matches_boundary_formula: boundary_formula_levels == flat_level_count,
    })
}

/// Eigenvalues (descending) of the dense reduced density matrix on `region`.
pub fn dense_reduced_spectrum<T: Scalar>(n: usize, state_stabilizers: &[PauliOperator], region: &[usize]) -> Result<Vec<T>> {
    let psi = dense::stabilizer_state::<T>(n, state_stabilizers)?;
    let rho = dense::reduced_density_matrix(n, &psi, region)?;
    let mut ev = dense::hermitian_eigenvalues(&rho)?;
    ev.reverse();
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_surface_code, build_toric_code};
    use crate::planner::{plan_surface, plan_toric};

    fn choose(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn surface_d3_binomial_levels() {
        let s = code_energy_spectrum(&build_surface_code(3).unwrap()).unwrap();
        assert_eq!(s.levels.len(), 9);
        for m in 0..=8u128 {
            assert_eq!(s.levels[&(-8 + 2 * m as i64)], 2 * choose(8, m));
        }
        assert_eq!(s.total(), 512);
        assert_eq!(s.ground().unwrap(), Level { energy: -8, degeneracy: 2 });
    }

    #[test]
    fn toric_d4_even_per_color_levels() {
        let s = code_energy_spectrum(&build_toric_code(4).unwrap()).unwrap();
        assert_eq!(s.total(), 65536);
        for m in (0..=16u128).step_by(2) {
            let mut expect = 0;
            for kb in (0..=8u128).step_by(2) {
                if m >= kb && m - kb <= 8 && (m - kb) % 2 == 0 {
                    expect += choose(8, kb) * choose(8, m - kb);
                }
            }
            assert_eq!(s.levels[&(-16 + 2 * m as i64)], 4 * expect, "m={m}");
        }
        assert_eq!(s.levels.len(), 9);
    }

    #[test]
    fn witness_models() {
        for l in [build_surface_code(3).unwrap(), build_toric_code(4).unwrap(), build_surface_code(5).unwrap()] {
            let s = code_energy_spectrum(&l).unwrap();
            assert!(free_decomposition_check(&s, &SpectrumModel::free_witness(&l)));
        }
        let l = build_surface_code(3).unwrap();
        let s = code_energy_spectrum(&l).unwrap();
        let mut seven = SpectrumModel::free_witness(&l);
        seven.epsilons.pop();
        assert!(!free_decomposition_check(&s, &seven));
        let t = build_toric_code(4).unwrap();
        let st = code_energy_spectrum(&t).unwrap();
        assert!(!free_decomposition_check(&st, &SpectrumModel::even_total_witness(&t)));
    }

    #[test]
    fn transformed_hamiltonian_is_isospectral() {
        let l = build_surface_code(3).unwrap();
        let p = plan_surface(&l).unwrap();
        assert_eq!(transformed_spectrum(&p, &l).unwrap(), code_energy_spectrum(&l).unwrap());
        let t = build_toric_code(4).unwrap();
        let pt = plan_toric(&t).unwrap();
        assert_eq!(transformed_spectrum(&pt, &t).unwrap(), code_energy_spectrum(&t).unwrap());
    }

    #[test]
    fn diagonal_rejects_off_diagonal_terms() {
        let x: PauliOperator = "XI".parse().unwrap();
        assert!(matches!(diagonal_spectrum(2, &[(1, x)]), Err(Error::UnsupportedTerm(_))));
    }

    #[test]
    fn empty_plan_identity_deviation() {
        let h = vec![(-1.0, "ZZ".parse::<PauliOperator>().unwrap()), (-1.0, "XX".parse().unwrap())];
        let dev: f64 = dense_conjugation_deviation(2, std::iter::empty(), &h, &h).unwrap();
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn entanglement_examples() {
        let l = build_surface_code(3).unwrap();
        let g = ground_state_stabilizers(&l);
        let single = entanglement_flat_levels(&l, &g, &[4]).unwrap();
        assert_eq!(single.entropy_bits, 1);
        let all: Vec<usize> = (0..9).collect();
        assert_eq!(entanglement_flat_levels(&l, &g, &all).unwrap().flat_level_count, 1);
        assert!(matches!(
            entanglement_flat_levels(&l, &g[..8], &[0]),
            Err(Error::NonMaximalGroup { rank: 8, n: 9 })
        ));
    }
}
