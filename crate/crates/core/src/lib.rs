//! Explicit local C4 Clifford unitaries mapping the surface code to free
//! fermion modes and the toric code to fermion modes plus two parity
//! operators, with exact symplectic verification, spectra and diagrams.

pub mod cli;
pub mod dense;
pub mod error;
pub mod gf2;
pub mod lattice;
pub mod pauli;
pub mod planner;
pub mod render;
pub mod sampling;
pub mod spectra;
pub mod verifier;

pub use error::{Error, Result};
pub use lattice::{build_surface_code, build_toric_code, CodeKind, CodeLayout, Color, LogicalLabel, StringKind, StringPath};
pub use pauli::{C4Rotation, Letter, PauliOperator};
pub use planner::{plan, plan_surface, plan_toric, ModeMap, TransformPlan};
pub use render::{render_layout, Overlay, RenderSpec};
pub use spectra::{code_energy_spectrum, free_decomposition_check, EntanglementReport, Spectrum, SpectrumModel};
pub use verifier::{check_code_transform, validate_plan, StringMapReport, ValidationReport};

/// Dense oracle matrix in double precision.
pub type DenseMatrix = dense::Matrix<f64>;
/// Dense oracle matrix in single precision.
pub type DenseMatrix32 = dense::Matrix<f32>;
/// Dense oracle state vector in double precision.
pub type DenseVector = dense::Vector<f64>;
