//! # inradius-lab
//!
//! A verification laboratory for the inner radius of the nonvanishing set
//! Σ_λ = {ψ_λ ≠ 0} of eigenfunctions of complex constant-coefficient
//! elliptic operators `Hψ = λψ`.
//!
//! The library builds exact eigenfunctions as finite plane-wave
//! superpositions, certifies nonvanishing balls from amplitude and Lipschitz
//! control, measures inner radii with an exact Euclidean distance transform,
//! runs the greedy bounded-overlap cover and good-ball selection, counts
//! near-resonant lattice frequencies, and executes the whole rescaling proof
//! pipeline across λ-sweeps with deterministic CSV output.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability. The `inradius-lab` binary exposes the same operations as
//! subcommands.

// Soundness checks are written as `!(value >= floor)` so that NaN fails
// closed; the negated form is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod cover;
pub mod edt;
pub mod error;
pub mod field;
pub mod geom;
pub mod harness;
pub mod lattice;
pub mod ppm;
pub mod symbol;

pub use certify::{
    certified_inradius, certify_at, lipschitz_ball, measured_inradius, sigma_estimate,
    sup_lower_bound, verify_certificate_dense, InradiusCertificate, SigmaEstimate, ZeroThreshold,
};
pub use cover::{good_ball, vitali_cover, CoverResult, GoodBall, GoodBallResult};
pub use error::{Error, Result};
pub use field::{
    solve_frequencies, synth, Eigenfunction, PlaneWaveTerm, Recipe, RecipeTerm, SpectralScale,
};
pub use geom::{ball_volume, l2_mass, mass_report, Domain, Grid, MassReport};
pub use harness::{
    boundary_layer_field, estimate_uniform_lipschitz, run_proof_pipeline, sweep, verify_localized,
    verify_theorem, Family, LipschitzEstimate, ProofOutcome, ProofRun, SweepConfig, SweepRecord,
    SweepResult,
};
pub use lattice::{count_lattice, count_lattice_with_delta, LatticeCount};
pub use symbol::{MultiIndex, Symbol};
