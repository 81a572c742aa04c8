//! Bound-state energies and modified angular momentum states of diatomic
//! molecules in Morse and Kratzer potentials plus the ring-shaped angular
//! term (ħ²/2μ)(A/sin²θ + B/cos²θ)/r².
//!
//! The closed forms live in [`angular`] and [`radial`]; [`oracle`] is an
//! independent finite-difference eigensolver that checks them. Everything is
//! generic over [`Scalar`]; the `*64` aliases below are what the catalog,
//! reports and CLI use.

pub mod angular;
pub mod catalog;
mod error;
pub mod oracle;
pub mod radial;
pub mod report;
mod scalar;
pub mod table2;
pub mod units;
pub mod verify;

pub use angular::{
    angular_eigenvalue, nu_k_roots, oscillation_quanta, tau_slope, AngularChannel, AngularSolution,
    NuRootCheck, Parity,
};
pub use catalog::{
    chemical_dissociation, load_catalog, morse_width, rotational_constant, write_catalog, Catalog,
    CatalogFormat, MoleculeParams,
};
pub use error::{Error, Result};
pub use oracle::{
    convergence_study, solve_angular_fd, solve_radial_fd, Boundary, GridSpec, OracleResult,
};
pub use radial::{
    energy_level, kratzer_energy, morse_energy, morse_nmax, pekeris_coefficients, EnergyLevel,
    MorseBound, PekerisCoefficients, PotentialKind,
};
pub use report::{
    levels_report, DiagnosticKind, LevelGrid, OutputFormat, ReportDiagnostic, ReportMetadata,
    ReportRow, SpectrumReport,
};
pub use scalar::{lit, to_f64, Scalar};
pub use table2::{bundled_reference, reproduce, CellFlag, ReferenceCell, Table2Report};
pub use units::{hbar2_over_2mu, wavenumber_to_ev, PhysicalConstants, CODATA_2018};
pub use verify::{Outcome, Suite, VerifyOptions, VerifyReport};

pub type Molecule64 = MoleculeParams<f64>;
pub type Channel64 = AngularChannel<f64>;
pub type Channel32 = AngularChannel<f32>;
pub type Solution64 = AngularSolution<f64>;
pub type Solution32 = AngularSolution<f32>;
pub type Level64 = EnergyLevel<f64>;
pub type Pekeris64 = PekerisCoefficients<f64>;
pub type Grid64 = GridSpec<f64>;
pub type Oracle64 = OracleResult<f64>;
