//! Golden-file comparisons of rendered diagrams.

use std::path::PathBuf;

use fermion_map::render::{render_layout, RenderSpec};
use fermion_map::{build_surface_code, build_toric_code, plan, CodeLayout};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn rendered(layout: &CodeLayout) -> String {
    render_layout(&RenderSpec::with_plan(layout, &plan(layout).unwrap())).unwrap()
}

#[test]
fn surface_d3_matches_golden() {
    assert_eq!(rendered(&build_surface_code(3).unwrap()), golden("surface_d3.svg"));
}

#[test]
fn toric_d4_matches_golden() {
    let svg = rendered(&build_toric_code(4).unwrap());
    assert_eq!(svg, golden("toric_d4.svg"));
    assert_eq!(svg.matches("data-plaquette=").count(), 14);
    assert_eq!(svg.matches("data-qubit=").count(), 2);
}

#[test]
fn toric_d6_matches_golden() {
    assert_eq!(rendered(&build_toric_code(6).unwrap()), golden("toric_d6.svg"));
}

#[test]
fn surface_arrows_use_the_figure_palette() {
    let svg = rendered(&build_surface_code(3).unwrap());
    assert_eq!(svg.matches("stroke=\"#1f63d6\" marker-end").count(), 4);
    assert_eq!(svg.matches("stroke=\"#f08c00\" marker-end").count(), 4);
    assert!(svg.contains("data-label=\"X_L\" points=\"50,50 50,110 50,170\" stroke=\"#d62728\""));
    assert!(svg.contains("data-label=\"Z_L\" points=\"50,170 110,170 170,170\" stroke=\"#2ca02c\""));
}
