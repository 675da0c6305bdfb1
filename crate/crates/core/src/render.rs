//! Deterministic SVG diagrams of a lattice with plan overlays: plaquette
//! colors, mode arrows, part order, logical and string paths, zero-mode and
//! parity markers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CodeKind, CodeLayout, Color, LogicalLabel, Shape, StringKind, StringPath};
use crate::pauli::Letter;
use crate::planner::{Provenance, TransformPlan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Style {
    pub cell: i64,
    pub margin: i64,
    pub black_fill: String,
    pub white_fill: String,
    pub black_arrow: String,
    pub white_arrow: String,
    pub x_logical: String,
    pub z_logical: String,
    pub marker: String,
}

impl Default for Style {
    fn default() -> Self {
        Self {
            cell: 60,
            margin: 50,
            black_fill: "#3a3a3a".into(),
            white_fill: "#ffffff".into(),
            black_arrow: "#1f63d6".into(),
            white_arrow: "#f08c00".into(),
            x_logical: "#d62728".into(),
            z_logical: "#2ca02c".into(),
            marker: "#8e44ad".into(),
        }
    }
}

/// An arrow from a plaquette's center to the qubit its part targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMark {
    pub plaquette: usize,
    pub target_qubit: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlay {
    pub arrows: Vec<ArrowMark>,
    /// Plaquette ids in the order their parts run; drawn as numbers.
    pub part_order: Vec<usize>,
    pub logical_paths: Vec<LogicalLabel>,
    pub string_paths: Vec<StringPath>,
    pub zero_modes: Vec<usize>,
    pub parity_plaquettes: Vec<usize>,
}

impl Overlay {
    /// Everything a plan determines: one arrow per dynamic mode, part order,
    /// all logical paths, zero modes and parity plaquettes.
    pub fn from_plan(plan: &TransformPlan, layout: &CodeLayout) -> Self {
        let arrows = plan
            .mode_map
            .dynamic_modes
            .iter()
            .map(|(&plaquette, &target_qubit)| ArrowMark { plaquette, target_qubit })
            .collect();
        let mut part_order = Vec::new();
        for step in &plan.steps {
            if let Provenance::Plaquette { id } = step.provenance {
                if part_order.last() != Some(&id) {
                    part_order.push(id);
                }
            }
        }
        Self {
            arrows,
            part_order,
            logical_paths: layout.logicals.iter().map(|l| l.label).collect(),
            string_paths: Vec::new(),
            zero_modes: plan.mode_map.zero_modes.clone(),
            parity_plaquettes: plan.mode_map.parity_plaquettes.map(|(b, w)| vec![b, w]).unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenderSpec<'a> {
    pub layout: &'a CodeLayout,
    pub overlay: Overlay,
    pub style: Style,
}

impl<'a> RenderSpec<'a> {
    pub fn bare(layout: &'a CodeLayout) -> Self {
        Self { layout, overlay: Overlay::default(), style: Style::default() }
    }

    pub fn with_plan(layout: &'a CodeLayout, plan: &TransformPlan) -> Self {
        Self { layout, overlay: Overlay::from_plan(plan, layout), style: Style::default() }
    }
}

struct Canvas<'a> {
    style: &'a Style,
    d: usize,
}

impl Canvas<'_> {
    /// Pixel position of lattice point `(row, col)`; `row`/`col` may be the
    /// ghost index `d` on the torus.
    fn point(&self, row: usize, col: usize) -> (i64, i64) {
        (self.style.margin + col as i64 * self.style.cell, self.style.margin + row as i64 * self.style.cell)
    }

    /// Pixel position of a doubled-unit center.
    fn center(&self, c2: (i64, i64)) -> (i64, i64) {
        (self.style.margin + c2.1 * self.style.cell / 2, self.style.margin + c2.0 * self.style.cell / 2)
    }

    fn extent(&self, kind: CodeKind) -> i64 {
        let span = match kind {
            CodeKind::Surface => self.d as i64 - 1,
            CodeKind::Toric => self.d as i64,
        };
        2 * self.style.margin + span * self.style.cell
    }
}

fn check_references(layout: &CodeLayout, overlay: &Overlay) -> Result<()> {
    let dangling = |what: String| Err(Error::DanglingReference(what));
    let plaquette = |id: usize| layout.plaquette(id).ok_or_else(|| Error::DanglingReference(format!("plaquette {id}")));
    for a in &overlay.arrows {
        let p = plaquette(a.plaquette)?;
        if !p.qubits.contains(&a.target_qubit) {
            return dangling(format!("qubit {} on plaquette {}", a.target_qubit, a.plaquette));
        }
    }
    for &id in overlay.part_order.iter().chain(&overlay.parity_plaquettes) {
        plaquette(id)?;
    }
    for &label in &overlay.logical_paths {
        if layout.logical(label).is_none() {
            return dangling(format!("logical {label}"));
        }
    }
    for q in overlay.zero_modes.iter().chain(overlay.string_paths.iter().flat_map(|s| &s.qubits)) {
        if *q >= layout.n {
            return dangling(format!("qubit {q}"));
        }
    }
    Ok(())
}

fn fill_for(style: &Style, color: Color) -> (&str, &str) {
    match color {
        Color::Black => (&style.black_fill, "#ffffff"),
        Color::White => (&style.white_fill, "#000000"),
    }
}

fn shape_path(canvas: &Canvas, shape: Shape) -> String {
    let r = canvas.style.cell / 2;
    let corners = shape.corners(canvas.d);
    let p = |i: usize| canvas.point(corners[i].0, corners[i].1);
    match shape {
        Shape::Square { .. } => {
            let (x0, y0) = p(0);
            let c = canvas.style.cell;
            format!("M{x0},{y0} h{c} v{c} h-{c} Z")
        }
        // semicircles bulge away from the lattice
        Shape::Top { .. } => {
            let ((x0, y0), (x1, y1)) = (p(0), p(1));
            format!("M{x0},{y0} A{r},{r} 0 0 1 {x1},{y1} Z")
        }
        Shape::Bottom { .. } => {
            let ((x0, y0), (x1, y1)) = (p(0), p(1));
            format!("M{x0},{y0} A{r},{r} 0 0 0 {x1},{y1} Z")
        }
        Shape::Left { .. } => {
            let ((x0, y0), (x1, y1)) = (p(0), p(1));
            format!("M{x0},{y0} A{r},{r} 0 0 0 {x1},{y1} Z")
        }
        Shape::Right { .. } => {
            let ((x0, y0), (x1, y1)) = (p(0), p(1));
            format!("M{x0},{y0} A{r},{r} 0 0 1 {x1},{y1} Z")
        }
    }
}

/// Where a plaquette's text goes: beside the arrow on squares, inside the
/// bulge on semicircles.
fn label_point(canvas: &Canvas, shape: Shape) -> (i64, i64) {
    let (x, y) = canvas.center(shape.center2(canvas.d));
    let inward = canvas.style.cell / 4;
    match shape {
        Shape::Square { .. } => (x + 8, y - 6),
        Shape::Top { .. } => (x, y + inward + 4),
        Shape::Bottom { .. } => (x, y - inward + 4),
        Shape::Left { .. } => (x + inward, y + 4),
        Shape::Right { .. } => (x - inward, y + 4),
    }
}

/// Unwrapped corner of `shape` that holds `qubit`.
fn corner_of(layout: &CodeLayout, shape: Shape, qubit: usize) -> Option<(usize, usize)> {
    shape.corners(layout.d).into_iter().find(|&(r, c)| layout.qubit(r, c) == qubit)
}

pub fn render_layout(spec: &RenderSpec) -> Result<String> {
    let layout = spec.layout;
    let style = &spec.style;
    let overlay = &spec.overlay;
    check_references(layout, overlay)?;
    let canvas = Canvas { style, d: layout.d };
    let size = canvas.extent(layout.kind);
    let mut svg = String::new();
    let kind = match layout.kind {
        CodeKind::Surface => "surface",
        CodeKind::Toric => "toric",
    };
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, "<title>{kind} code d={}</title>", layout.d);
    let _ = writeln!(svg, "<defs>");
    for (id, color) in [("head-black", &style.black_arrow), ("head-white", &style.white_arrow)] {
        let _ = writeln!(
            svg,
            r#"<marker id="{id}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="5" markerHeight="5" orient="auto"><path d="M0,0 L10,5 L0,10 Z" fill="{color}"/></marker>"#
        );
    }
    let _ = writeln!(svg, "</defs>");
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{size}" height="{size}" fill="#f4f4f4"/>"##);

    let _ = writeln!(svg, r##"<g id="plaquettes" stroke="#000000" stroke-width="1">"##);
    for p in &layout.plaquettes {
        let (fill, _) = fill_for(style, p.color);
        let _ = writeln!(
            svg,
            r#"<path id="p{}" d="{}" fill="{fill}"/>"#,
            p.id,
            shape_path(&canvas, p.shape)
        );
    }
    let _ = writeln!(svg, "</g>");

    if !overlay.parity_plaquettes.is_empty() {
        let _ = writeln!(svg, r#"<g id="parity" fill="none" stroke="{}" stroke-width="3" stroke-dasharray="6,4">"#, style.marker);
        for &id in &overlay.parity_plaquettes {
            let p = &layout.plaquettes[id];
            let _ = writeln!(svg, r#"<path d="{}"/>"#, shape_path(&canvas, p.shape));
        }
        let _ = writeln!(svg, "</g>");
    }

    let _ = writeln!(svg, r#"<g id="qubits" font-size="10" text-anchor="middle">"#);
    let span = match layout.kind {
        CodeKind::Surface => layout.d,
        CodeKind::Toric => layout.d + 1,
    };
    for r in 0..span {
        for c in 0..span {
            let (x, y) = canvas.point(r, c);
            let ghost = r == layout.d || c == layout.d;
            let (fill, stroke) = if ghost { ("#f4f4f4", "#9a9a9a") } else { ("#ffffff", "#000000") };
            let _ = writeln!(
                svg,
                r#"<circle cx="{x}" cy="{y}" r="7" fill="{fill}" stroke="{stroke}"/><text x="{x}" y="{}" fill="{stroke}">{}</text>"#,
                y + 3,
                layout.qubit(r, c)
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    if !overlay.logical_paths.is_empty() || !overlay.string_paths.is_empty() {
        let _ = writeln!(svg, r#"<g id="paths" fill="none" stroke-linecap="round" stroke-linejoin="round">"#);
        let polyline = |qubits: &[usize]| {
            qubits
                .iter()
                .map(|&q| {
                    let (r, c) = layout.coords(q);
                    let (x, y) = canvas.point(r, c);
                    format!("{x},{y}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        for &label in &overlay.logical_paths {
            let l = layout.logical(label).expect("checked above");
            let color = match label.letter() {
                Letter::X => &style.x_logical,
                _ => &style.z_logical,
            };
            let _ = writeln!(
                svg,
                r#"<polyline class="logical" data-label="{label}" points="{}" stroke="{color}" stroke-width="5" stroke-opacity="0.75"/>"#,
                polyline(&l.path)
            );
        }
        for s in &overlay.string_paths {
            let color = match s.kind {
                StringKind::X => &style.x_logical,
                StringKind::Z => &style.z_logical,
            };
            let _ = writeln!(
                svg,
                r#"<polyline class="string" points="{}" stroke="{color}" stroke-width="3" stroke-dasharray="5,4"/>"#,
                polyline(&s.qubits)
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    if !overlay.arrows.is_empty() {
        let _ = writeln!(svg, r#"<g id="arrows" stroke-width="3">"#);
        for a in &overlay.arrows {
            let p = &layout.plaquettes[a.plaquette];
            let (sx, sy) = canvas.center(p.shape.center2(layout.d));
            let (r, c) = corner_of(layout, p.shape, a.target_qubit).expect("checked above");
            let (tx, ty) = canvas.point(r, c);
            // stop short of the qubit marker
            let (ex, ey) = (sx + (tx - sx) * 3 / 4, sy + (ty - sy) * 3 / 4);
            let (color, head) = match p.color {
                Color::Black => (&style.black_arrow, "head-black"),
                Color::White => (&style.white_arrow, "head-white"),
            };
            let _ = writeln!(
                svg,
                r#"<line data-plaquette="{}" data-target="{}" x1="{sx}" y1="{sy}" x2="{ex}" y2="{ey}" stroke="{color}" marker-end="url(#{head})"/>"#,
                a.plaquette, a.target_qubit
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    if !overlay.part_order.is_empty() {
        let _ = writeln!(svg, r#"<g id="part-order" font-size="11" text-anchor="middle">"#);
        for (k, &id) in overlay.part_order.iter().enumerate() {
            let p = &layout.plaquettes[id];
            let (x, y) = label_point(&canvas, p.shape);
            let (_, text) = fill_for(style, p.color);
            let _ = writeln!(svg, r#"<text x="{x}" y="{y}" fill="{text}">{}</text>"#, k + 1);
        }
        let _ = writeln!(svg, "</g>");
    }

    if !overlay.parity_plaquettes.is_empty() {
        let _ = writeln!(svg, r#"<g id="parity-labels" font-size="12" text-anchor="middle" font-weight="bold">"#);
        for &id in &overlay.parity_plaquettes {
            let p = &layout.plaquettes[id];
            let (x, y) = label_point(&canvas, p.shape);
            let name = match p.color {
                Color::Black => "Sb",
                Color::White => "Sw",
            };
            let _ = writeln!(svg, r#"<text x="{x}" y="{y}" fill="{}">{name}</text>"#, style.marker);
        }
        let _ = writeln!(svg, "</g>");
    }

    if !overlay.zero_modes.is_empty() {
        let _ = writeln!(svg, r#"<g id="zero-modes" fill="none" stroke="{}" stroke-width="3">"#, style.marker);
        for &q in &overlay.zero_modes {
            let (r, c) = layout.coords(q);
            let (x, y) = canvas.point(r, c);
            let _ = writeln!(svg, r#"<circle data-qubit="{q}" cx="{x}" cy="{y}" r="13"/>"#);
        }
        let _ = writeln!(svg, "</g>");
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_surface_code, build_toric_code};
    use crate::planner::plan;

    #[test]
    fn bare_lattice_has_no_overlay_groups() {
        let l = build_surface_code(3).unwrap();
        let svg = render_layout(&RenderSpec::bare(&l)).unwrap();
        assert_eq!(svg.matches("<path id=\"p").count(), 8);
        assert!(!svg.contains("id=\"arrows\""));
    }

    #[test]
    fn overlay_counts() {
        let l = build_surface_code(3).unwrap();
        let svg = render_layout(&RenderSpec::with_plan(&l, &plan(&l).unwrap())).unwrap();
        assert_eq!(svg.matches("data-plaquette=").count(), 8);
        assert_eq!(svg.matches("class=\"logical\"").count(), 2);
        let t = build_toric_code(4).unwrap();
        let svg = render_layout(&RenderSpec::with_plan(&t, &plan(&t).unwrap())).unwrap();
        assert_eq!(svg.matches("data-plaquette=").count(), 14);
        assert_eq!(svg.matches("data-qubit=").count(), 2);
        assert_eq!(svg.matches(">Sb<").count() + svg.matches(">Sw<").count(), 2);
    }

    #[test]
    fn deterministic() {
        let t = build_toric_code(6).unwrap();
        let p = plan(&t).unwrap();
        let a = render_layout(&RenderSpec::with_plan(&t, &p)).unwrap();
        let b = render_layout(&RenderSpec::with_plan(&t, &p)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dangling_references_rejected() {
        let l = build_surface_code(3).unwrap();
        let mut spec = RenderSpec::bare(&l);
        spec.overlay.arrows.push(ArrowMark { plaquette: 0, target_qubit: 8 });
        assert!(matches!(render_layout(&spec), Err(Error::DanglingReference(_))));
        let mut spec = RenderSpec::bare(&l);
        spec.overlay.part_order.push(99);
        assert!(render_layout(&spec).is_err());
        let mut spec = RenderSpec::bare(&l);
        spec.overlay.logical_paths.push(LogicalLabel::X1);
        assert!(render_layout(&spec).is_err());
    }
}
