//! Simulation of continuous-variable graph states produced by concurrent
//! squeezing interactions in a single optical parametric oscillator.
//!
//! The crate is organized around five pieces:
//!
//! - [`graphs`]: symmetric interaction graphs (self-loops allowed) and their
//!   spectra, with exact closed forms for the uniform complete-graph
//!   families and a dense symmetric eigensolver fallback.
//! - [`dynamics`]: Gaussian covariance evolution `X -> e^{tau A} X`,
//!   `P -> e^{-tau A} P` from vacuum, quadrature-combination variances, and
//!   squeezing in dB.
//! - [`witnesses`]: phase-sum / amplitude-difference observables and the
//!   combined-variance separability test.
//! - [`comb`]: the interaction graph induced by a mode-locked pump comb
//!   driving an OPO whose free spectral range matches the pump repetition
//!   rate.
//! - [`heterodyne`]: balanced-heterodyne multiplexing - local-oscillator
//!   placement, demodulation channels, vacuum image bands, and the variance
//!   of the detected observable.
//!
//! Conventions: quadratures are `X = a + a^dag`, `P = i(a^dag - a)`, so the
//! vacuum variance of each quadrature is 1 and `[X, P] = 2i`. Interaction
//! strength and time only ever appear through the dimensionless product
//! `tau`.

pub mod comb;
pub mod dynamics;
pub mod graphs;
pub mod heterodyne;
mod linalg;
pub mod witnesses;

pub use comb::{
    coverage_report, pump_comb_graph, CombBuild, CoverageReport, ModeGrid, PhaseMatchWindow,
};
pub use dynamics::{
    evolve_vacuum, limit_variance, squeezing_db, symplectic_map, variance, EvolutionSpec,
    GaussianState, Method, QuadratureForm,
};
pub use graphs::{
    allones_graph, ghz_graph, spectrum, spectrum_dense, vlb_graph, InteractionGraph, Spectrum,
};
pub use heterodyne::{
    bandwidth_gap_analysis, channel_contributions, channel_frequency, measured_observable,
    measured_variance, partial_sum_limit_variance, BandwidthGapReport, ChannelContribution,
    DetectionPlan, MeasuredObservable, MeasuredVariance,
};
pub use witnesses::{
    amplitude_diff_form, ghz_witness, ghz_witness_with_bound, phase_sum_form, PairWitness,
    WitnessReport, DEFAULT_WITNESS_BOUND,
};

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid detection plan: {0}")]
    InvalidPlan(String),
}

pub type Result<T> = std::result::Result<T, Error>;
