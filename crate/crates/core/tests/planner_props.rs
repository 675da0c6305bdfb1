//! Plan structure: arrow orientation against the written rules, black-part
//! locality, exclusions, determinism and serialization.

mod common;

use common::{prose_arrow_corner, split, support};
use fermion_map::lattice::Shape;
use fermion_map::planner::{toric_arrows, Provenance, TransformPlan};
use fermion_map::{build_surface_code, build_toric_code, plan, Color};

#[test]
fn toric_arrows_follow_the_written_rules() {
    for d in [4, 6, 8, 10] {
        let l = build_toric_code(d).unwrap();
        let arrows = toric_arrows(&l).unwrap();
        let p = plan(&l).unwrap();
        for pl in &l.plaquettes {
            let Shape::Square { row, col } = pl.shape else { panic!("toric plaquettes are squares") };
            let expected = prose_arrow_corner(d, pl.color, row, col).map(|(r, c)| l.qubit(r, c));
            let arrow = arrows.iter().find(|a| a.plaquette == pl.id).map(|a| a.target_qubit);
            assert_eq!(arrow, expected, "d={d} plaquette {} at ({row},{col})", pl.id);
            assert_eq!(p.mode_map.dynamic_modes.get(&pl.id).copied(), expected);
        }
    }
}

/// A part must run after the part of the plaquette its arrow points at.
#[test]
fn toric_parts_respect_arrow_dependencies() {
    for d in [4, 6, 8] {
        let l = build_toric_code(d).unwrap();
        let p = plan(&l).unwrap();
        let order: Vec<usize> = p
            .parts()
            .iter()
            .filter_map(|part| match part[0].provenance {
                Provenance::Plaquette { id } => Some(id),
                Provenance::Logical { .. } => None,
            })
            .collect();
        let position = |id: usize| order.iter().position(|&x| x == id);
        let (b1, w1) = l.parity_plaquettes().unwrap();
        for a in toric_arrows(&l).unwrap() {
            if a.points_at == b1 || a.points_at == w1 {
                continue;
            }
            assert!(position(a.points_at) < position(a.plaquette), "d={d}: {a:?}");
        }
        assert!(position(b1).is_none() && position(w1).is_none());
        assert_eq!(order.len(), d * d - 2);
    }
}

/// After the black parts, every black stabilizer is single-site +Z and each
/// white stabilizer keeps its original support with X or Z letters only.
#[test]
fn surface_black_part_locality() {
    for d in [3, 5, 7] {
        let l = build_surface_code(d).unwrap();
        let p = plan(&l).unwrap();
        let black: Vec<usize> = l.of_color(Color::Black).map(|pl| pl.id).collect();
        let cut = p
            .steps
            .iter()
            .position(|s| matches!(s.provenance, Provenance::Plaquette { id } if !black.contains(&id)))
            .unwrap();
        let prefix = TransformPlan { steps: p.steps[..cut].to_vec(), ..p.clone() };
        assert_eq!(prefix.parts().len(), black.len());
        for pl in &l.plaquettes {
            let image = prefix.conjugate(&pl.stabilizer, false).unwrap();
            let (sign, letters) = split(&image);
            match pl.color {
                Color::Black => assert!(sign == "+" && support(&letters).len() == 1 && letters.contains(&'Z')),
                Color::White => {
                    assert_eq!(support(&letters), pl.qubits, "d={d} plaquette {}", pl.id);
                    assert!(support(&letters).iter().all(|&q| letters[q] == 'X' || letters[q] == 'Z'));
                }
            }
        }
    }
}

#[test]
fn plans_are_deterministic_and_serializable() {
    for l in [build_surface_code(5).unwrap(), build_toric_code(6).unwrap()] {
        let a = plan(&l).unwrap();
        let b = plan(&l).unwrap();
        assert_eq!(a, b);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, serde_json::to_string(&b).unwrap());
        let back: TransformPlan = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(json.contains("\"schema_version\":1"));
    }
}

#[test]
fn tampered_plan_json_is_rejected() {
    let l = build_surface_code(3).unwrap();
    let json = serde_json::to_string(&plan(&l).unwrap()).unwrap();
    let wrong_version = json.replacen("\"schema_version\":1", "\"schema_version\":7", 1);
    assert!(serde_json::from_str::<TransformPlan>(&wrong_version).is_err());
    let wrong_text = json.replacen("+YZIZZIIII", "+XZIZZIIII", 1);
    assert_ne!(wrong_text, json);
    assert!(serde_json::from_str::<TransformPlan>(&wrong_text).is_err());
}
