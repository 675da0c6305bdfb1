//! Layout invariants over a range of sizes, checked against plain-text
//! oracles.

mod common;

use common::{anticommute, gf2_rank, symplectic};
use fermion_map::lattice::{CodeLayout, StringKind, StringPath};
use fermion_map::sampling::{random_string_path, seeded};
use fermion_map::{build_surface_code, build_toric_code, Color, Letter, PauliOperator};

fn layouts() -> Vec<CodeLayout> {
    let mut out: Vec<CodeLayout> = (3..=15).step_by(2).map(|d| build_surface_code(d).unwrap()).collect();
    out.extend((4..=14).step_by(2).map(|d| build_toric_code(d).unwrap()));
    out
}

#[test]
fn stabilizers_and_logicals_commute() {
    for l in layouts() {
        for (i, a) in l.plaquettes.iter().enumerate() {
            for b in &l.plaquettes[i + 1..] {
                assert!(!anticommute(&a.stabilizer, &b.stabilizer), "{:?} d={}", l.kind, l.d);
            }
            for lg in &l.logicals {
                assert!(!anticommute(&a.stabilizer, &lg.operator), "{} on {:?} d={}", lg.label, l.kind, l.d);
            }
        }
        l.validate().unwrap();
    }
}

#[test]
fn group_ranks() {
    for l in layouts() {
        let want = match l.kind {
            fermion_map::CodeKind::Surface => l.n - 1,
            fermion_map::CodeKind::Toric => l.n - 2,
        };
        assert_eq!(gf2_rank(l.stabilizers().map(symplectic).collect()), want, "{:?} d={}", l.kind, l.d);
    }
}

#[test]
fn single_qubit_syndrome_sizes() {
    for l in layouts() {
        for q in 0..l.n {
            for letter in [Letter::X, Letter::Z] {
                let op = PauliOperator::single(l.n, q, letter);
                let hits = l.plaquettes.iter().filter(|p| anticommute(&p.stabilizer, &op)).count();
                match l.kind {
                    fermion_map::CodeKind::Toric => assert_eq!(hits, 2),
                    fermion_map::CodeKind::Surface => assert!(hits == 1 || hits == 2, "d={} q={q}: {hits}", l.d),
                }
            }
        }
    }
}

/// An X string flips exactly the black plaquettes it touches an odd number of
/// times, and dually for Z strings on white plaquettes.
#[test]
fn string_syndromes_are_odd_incidence_sets() {
    let mut rng = seeded(21);
    for l in [build_surface_code(5).unwrap(), build_toric_code(6).unwrap()] {
        for _ in 0..300 {
            let path = random_string_path(&mut rng, &l, 7);
            let op = l.string_operator(&path).unwrap();
            let mut counts = vec![0usize; l.n];
            for &q in &path.qubits {
                counts[q] += 1;
            }
            let color = match path.kind {
                StringKind::X => Color::Black,
                StringKind::Z => Color::White,
            };
            for p in &l.plaquettes {
                let incidence: usize = p.qubits.iter().map(|&q| counts[q]).sum();
                let expected = p.color == color && incidence % 2 == 1;
                assert_eq!(anticommute(&p.stabilizer, &op), expected, "{path:?} plaquette {}", p.id);
            }
        }
    }
}

#[test]
fn empty_and_out_of_range_paths_rejected() {
    let l = build_surface_code(3).unwrap();
    assert!(l.string_operator(&StringPath::new(StringKind::X, vec![])).is_err());
    assert!(l.string_operator(&StringPath::new(StringKind::Z, vec![9])).is_err());
}
