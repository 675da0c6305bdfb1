//! Command-line driver. Exit codes: 0 success, 1 a check failed, 2 usage or
//! input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CodeKind, CodeLayout, LayoutRecord};
use crate::pauli::PauliOperator;
use crate::planner::{self, Provenance, TransformPlan};
use crate::render::{render_layout, RenderSpec};
use crate::sampling;
use crate::spectra::{self, EntanglementReport, Spectrum, SpectrumModel};
use crate::verifier::{self, PairCreation, RandomCheckSummary, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fermion-map", version, about = "Local Clifford maps from surface and toric codes to fermion modes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CodeArg {
    Surface,
    Toric,
}

impl From<CodeArg> for CodeKind {
    fn from(c: CodeArg) -> Self {
        match c {
            CodeArg::Surface => CodeKind::Surface,
            CodeArg::Toric => CodeKind::Toric,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Args, Debug)]
struct CodeOpts {
    /// Code family.
    #[arg(long, value_enum, default_value = "surface")]
    code: CodeArg,
    /// Lattice size: odd and >= 3 for surface, even and >= 4 for toric.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Read a plan (or, for `plan`, a layout) from this JSON file instead of
    /// building one from --code/--d.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code layout.
    Build {
        #[command(flatten)]
        opts: CodeOpts,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Plan the rotation sequence for a layout.
    Plan {
        #[command(flatten)]
        opts: CodeOpts,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Conjugate one Pauli operator through a plan.
    Apply {
        #[command(flatten)]
        opts: CodeOpts,
        /// Operator text, e.g. "+ZZIZZIIII".
        #[arg(long, allow_hyphen_values = true)]
        pauli: String,
        /// Undo the plan instead of applying it.
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every transformed stabilizer and logical against its target form.
    Verify {
        #[command(flatten)]
        opts: CodeOpts,
        /// Number of random string paths and operator pairs to check.
        #[arg(long, default_value_t = 0)]
        strings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Energy spectrum with its free-mode decomposition checks.
    Spectrum {
        #[command(flatten)]
        opts: CodeOpts,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Flat entanglement levels of the ground state for one or more regions.
    Entanglement {
        #[command(flatten)]
        opts: CodeOpts,
        /// Comma-separated qubit indices.
        #[arg(long, conflicts_with = "random")]
        region: Option<String>,
        /// Number of random bipartitions.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cross-check each region against the dense reduced density matrix.
        #[arg(long)]
        dense: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Draw the lattice with the plan overlay as SVG.
    Render {
        #[command(flatten)]
        opts: CodeOpts,
        /// Lattice only, without arrows, paths or markers.
        #[arg(long)]
        bare: bool,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
    },
}

/// Failure kinds of one invocation.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

fn require(format: Format, allowed: &[Format], command: &str) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("`{command}` does not support --format {format:?}").to_lowercase()))
    }
}

fn emit(opts: &CodeOpts, out: &mut dyn Write, text: &str) -> Outcome {
    match &opts.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => out.write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn build_layout(opts: &CodeOpts) -> Result<CodeLayout> {
    CodeLayout::build(opts.code.into(), opts.d)
}

/// The plan from --in, or a fresh one for --code/--d, with its layout.
fn load_plan(opts: &CodeOpts) -> Result<(TransformPlan, CodeLayout)> {
    match &opts.input {
        Some(path) => {
            let plan: TransformPlan = serde_json::from_str(&read(path)?)?;
            let layout = CodeLayout::build(plan.kind, plan.d)?;
            if plan.n != layout.n {
                return Err(Error::SizeMismatch { left: layout.n, right: plan.n });
            }
            Ok((plan, layout))
        }
        None => {
            let layout = build_layout(opts)?;
            Ok((planner::plan(&layout)?, layout))
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Build { opts, format } => {
            require(format, &[Format::Json, Format::Text, Format::Svg], "build")?;
            let layout = build_layout(&opts)?;
            let text = match format {
                Format::Json => to_json(&LayoutRecord::from(&layout))?,
                Format::Svg => render_layout(&RenderSpec::bare(&layout))?,
                _ => layout_text(&layout),
            };
            emit(&opts, out, &text)
        }
        Command::Plan { opts, format } => {
            require(format, &[Format::Json, Format::Text], "plan")?;
            let layout = match &opts.input {
                Some(path) => serde_json::from_str::<CodeLayout>(&read(path).map_err(Failure::from)?).map_err(Error::from)?,
                None => build_layout(&opts)?,
            };
            let plan = planner::plan(&layout)?;
            let text = match format {
                Format::Json => to_json(&plan)?,
                _ => plan_text(&plan, &layout),
            };
            emit(&opts, out, &text)
        }
        Command::Apply { opts, pauli, inverse, format } => {
            require(format, &[Format::Json, Format::Text], "apply")?;
            let (plan, layout) = load_plan(&opts)?;
            let op: PauliOperator = pauli.parse()?;
            if op.n() != layout.n {
                return Err(Error::SizeMismatch { left: layout.n, right: op.n() }.into());
            }
            let result = plan.conjugate(&op, inverse)?;
            let text = match format {
                Format::Json => to_json(&serde_json::json!({
                    "input": op.to_string(),
                    "output": result.to_string(),
                    "inverse": inverse,
                }))?,
                _ => format!("{result}\n"),
            };
            emit(&opts, out, &text)
        }
        Command::Verify { opts, strings, seed, format } => {
            require(format, &[Format::Json, Format::Text], "verify")?;
            let (plan, layout) = load_plan(&opts)?;
            let report = verifier::check_code_transform(&plan, &layout)?;
            let pairs = verifier::pair_creation_check(&plan, &layout)?;
            let random = (strings > 0).then(|| verifier::random_checks(&plan, &layout, strings, seed)).transpose()?;
            let passed = report.passed && pairs.iter().all(|p| p.pass) && random.as_ref().map_or(true, |r| r.passed());
            if !passed {
                return Err(Failure::Check(verify_summary(&report, &pairs, random.as_ref())));
            }
            let text = match format {
                Format::Json => to_json(&serde_json::json!({
                    "report": report,
                    "pair_creation": pairs,
                    "random": random,
                    "passed": passed,
                }))?,
                _ => verify_text(&report, &pairs, random.as_ref()),
            };
            emit(&opts, out, &text)
        }
        Command::Spectrum { opts, format } => {
            require(format, &[Format::Json, Format::Csv, Format::Text], "spectrum")?;
            let layout = build_layout(&opts)?;
            let spectrum = spectra::code_energy_spectrum(&layout)?;
            let plan = planner::plan(&layout)?;
            let total_ok = layout.n <= 127 && spectrum.total() == 1u128 << layout.n;
            let model_ok = spectra::free_decomposition_check(&spectrum, &SpectrumModel::free_witness(&layout));
            let transformed_ok = spectra::transformed_spectrum(&plan, &layout)? == spectrum;
            if !(total_ok && model_ok && transformed_ok) {
                return Err(Failure::Check(format!(
                    "total {total_ok}, free model {model_ok}, transformed Hamiltonian {transformed_ok}"
                )));
            }
            let text = match format {
                Format::Json => to_json(&serde_json::json!({
                    "code": layout.kind,
                    "d": layout.d,
                    "levels": spectrum.rows().iter().map(|l| serde_json::json!({
                        "energy": l.energy,
                        "degeneracy": l.degeneracy.to_string(),
                    })).collect::<Vec<_>>(),
                    "total": spectrum.total().to_string(),
                    "free_model": true,
                    "transformed_hamiltonian": true,
                }))?,
                Format::Csv => spectrum.to_csv(),
                _ => spectrum_text(&layout, &spectrum),
            };
            emit(&opts, out, &text)
        }
        Command::Entanglement { opts, region, random, seed, dense, format } => {
            require(format, &[Format::Json, Format::Text], "entanglement")?;
            let layout = build_layout(&opts)?;
            let regions = match (region, random) {
                (Some(r), _) => vec![parse_region(&r)?],
                (None, Some(k)) => {
                    let mut rng = sampling::seeded(seed);
                    (0..k).map(|_| sampling::random_region(&mut rng, layout.n)).collect()
                }
                (None, None) => vec![(0..layout.n).filter(|q| q % layout.d < layout.d / 2 + 1).collect()],
            };
            let state = spectra::ground_state_stabilizers(&layout);
            let mut reports = Vec::new();
            let mut failures = Vec::new();
            for r in &regions {
                let report = spectra::entanglement_flat_levels(&layout, &state, r)?;
                let dense_dev = if dense {
                    let ev = spectra::dense_reduced_spectrum::<f64>(layout.n, &state, r)?;
                    let dev = flat_deviation(&ev, report.entropy_bits);
                    if dev > 1e-9 {
                        failures.push(format!("region {r:?}: dense deviation {dev:e}"));
                    }
                    Some(dev)
                } else {
                    None
                };
                reports.push((report, dense_dev));
            }
            if !failures.is_empty() {
                return Err(Failure::Check(failures.join("; ")));
            }
            let text = match format {
                Format::Json => to_json(
                    &reports
                        .iter()
                        .map(|(r, dev)| serde_json::json!({ "report": EntanglementJson::from(r), "dense_deviation": dev }))
                        .collect::<Vec<_>>(),
                )?,
                _ => entanglement_text(&reports),
            };
            emit(&opts, out, &text)
        }
        Command::Render { opts, bare, format } => {
            require(format, &[Format::Svg], "render")?;
            let (plan, layout) = load_plan(&opts)?;
            let spec = if bare { RenderSpec::bare(&layout) } else { RenderSpec::with_plan(&layout, &plan) };
            emit(&opts, out, &render_layout(&spec)?)
        }
    }
}

/// JSON view with 128-bit counts as strings.
#[derive(Serialize)]
struct EntanglementJson<'a> {
    region: &'a [usize],
    entropy_bits: usize,
    flat_level_count: String,
    flat: bool,
    boundary_plaquettes: usize,
    boundary_formula_levels: String,
    matches_boundary_formula: bool,
}

impl<'a> From<&'a EntanglementReport> for EntanglementJson<'a> {
    fn from(r: &'a EntanglementReport) -> Self {
        Self {
            region: &r.region,
            entropy_bits: r.entropy_bits,
            flat_level_count: r.flat_level_count.to_string(),
            flat: r.flat,
            boundary_plaquettes: r.boundary_plaquettes,
            boundary_formula_levels: r.boundary_formula_levels.to_string(),
            matches_boundary_formula: r.matches_boundary_formula,
        }
    }
}

/// Largest distance of a descending eigenvalue list from `2^s` levels of
/// `2^-s` followed by zeros.
pub fn flat_deviation(descending: &[f64], s: usize) -> f64 {
    let levels = 1usize << s;
    let weight = 1.0 / levels as f64;
    descending
        .iter()
        .enumerate()
        .map(|(k, &v)| if k < levels { (v - weight).abs() } else { v.abs() })
        .fold(0.0, f64::max)
}

fn parse_region(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim().parse::<usize>().map_err(|e| Error::Parse { position: 0, message: format!("region entry {s:?}: {e}") })
        })
        .collect()
}

fn layout_text(layout: &CodeLayout) -> String {
    let mut s = format!("{} code, d={}, {} qubits, {} plaquettes\n", layout.kind, layout.d, layout.n, layout.plaquettes.len());
    for p in &layout.plaquettes {
        let _ = writeln!(s, "{:>3} {:<5} {:<28} {:?}", p.id, format!("{:?}", p.color).to_lowercase(), format!("{:?}", p.shape), p.qubits);
    }
    for l in &layout.logicals {
        let _ = writeln!(s, "{:<5} {}", l.label.to_string(), l.operator);
    }
    s
}

fn plan_text(plan: &TransformPlan, layout: &CodeLayout) -> String {
    let mut s = format!("{} code, d={}: {} parts, {} rotations\n", plan.kind, plan.d, plan.parts().len(), plan.steps.len());
    for (k, part) in plan.parts().into_iter().enumerate() {
        let what = match part[0].provenance {
            Provenance::Plaquette { id } => format!("plaquette {id} ({:?})", layout.plaquettes[id].color).to_lowercase(),
            Provenance::Logical { label } => format!("logical {label}"),
        };
        let gens: Vec<String> = part.iter().map(|st| st.rotation.generator().to_string()).collect();
        let _ = writeln!(s, "{:>3}. {what} -> qubit {}: {}", k + 1, part[0].target_qubit, gens.join(", "));
    }
    let _ = writeln!(s, "zero modes: {:?}", plan.mode_map.zero_modes);
    if let Some((b, w)) = plan.mode_map.parity_plaquettes {
        let _ = writeln!(s, "parity plaquettes: black {b}, white {w}");
    }
    s
}

fn verify_summary(report: &ValidationReport, pairs: &[PairCreation], random: Option<&RandomCheckSummary>) -> String {
    let mut parts = vec![format!("targets {}/{}", report.passed_targets(), report.entries.len())];
    if let Some(e) = &report.mode_map_error {
        parts.push(format!("mode map: {e}"));
    }
    for f in report.failures() {
        parts.push(format!("{} gave {} expected {}", f.label, f.transformed, f.expected));
    }
    let bad_rel = report.logical_relations.iter().filter(|r| !r.pass).count();
    if bad_rel > 0 {
        parts.push(format!("{bad_rel} logical relations broken"));
    }
    let bad_pairs = pairs.iter().filter(|p| !p.pass).count();
    if bad_pairs > 0 {
        parts.push(format!("{bad_pairs} pair-creation failures"));
    }
    if let Some(r) = random.filter(|r| !r.passed()) {
        parts.push(format!("random checks {r:?}"));
    }
    parts.join("; ")
}

fn verify_text(report: &ValidationReport, pairs: &[PairCreation], random: Option<&RandomCheckSummary>) -> String {
    let mut s = format!("{} code, d={}, {} rotations\n", report.kind, report.d, report.steps);
    for e in &report.entries {
        let _ = writeln!(s, "{} {:<8} {} -> {}", if e.pass { "PASS" } else { "FAIL" }, e.label, e.original, e.transformed);
    }
    let _ = writeln!(s, "targets passed: {}/{}", report.passed_targets(), report.entries.len());
    let ok_rel = report.logical_relations.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "logical relations: {ok_rel}/{}", report.logical_relations.len());
    let ok_pairs = pairs.iter().filter(|p| p.pass).count();
    let _ = writeln!(s, "single-mode inverse images: {ok_pairs}/{}", pairs.len());
    if let Some(r) = random {
        let _ = writeln!(
            s,
            "random (seed {}): endpoints {}/{}, commutators {}/{}, crossings {}/{}",
            r.seed, r.endpoints_preserved, r.paths, r.commutators_invariant, r.operator_pairs, r.crossings_braiding, r.crossings
        );
    }
    let _ = writeln!(s, "verification: PASS");
    s
}

fn spectrum_text(layout: &CodeLayout, spectrum: &Spectrum) -> String {
    let mut s = format!("{} code, d={} (energies in units of J)\n", layout.kind, layout.d);
    for l in spectrum.rows() {
        let _ = writeln!(s, "{:>6} {}", l.energy, l.degeneracy);
    }
    let _ = writeln!(s, "total: {}", spectrum.total());
    let _ = writeln!(s, "free-mode decomposition: PASS");
    let _ = writeln!(s, "transformed Hamiltonian: PASS");
    s
}

fn entanglement_text(reports: &[(EntanglementReport, Option<f64>)]) -> String {
    let mut s = String::new();
    for (r, dev) in reports {
        let _ = write!(s, "region {:?}: s={} levels={} boundary={}", r.region, r.entropy_bits, r.flat_level_count, r.boundary_plaquettes);
        if let Some(dev) = dev {
            let _ = write!(s, " dense-deviation={dev:.2e}");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("fermion-map").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn verify_surface_d3() {
        let (code, out, _) = call(&["verify", "--code", "surface", "--d", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("targets passed: 10/10"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["verify", "--code", "toric", "--d", "5"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["spectrum", "--format", "svg"]).0, 2);
        let (code, _, err) = call(&["apply", "--pauli", "+XQ"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn flat_deviation_examples() {
        assert_eq!(flat_deviation(&[0.5, 0.5, 0.0, 0.0], 1), 0.0);
        assert!(flat_deviation(&[0.6, 0.4], 1) > 0.09);
    }
}
