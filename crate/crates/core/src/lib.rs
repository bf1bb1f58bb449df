//! Entanglement dynamics of a two-mode squeezed vacuum coupled to thermal
//! reservoirs.
//!
//! States are zero-mean two-mode Gaussian states, fully described by a 4×4
//! quadrature covariance matrix ordered as `(x₁, p₁, x₂, p₂)` with ħ = 1, so
//! the vacuum has variance ½ in every quadrature.
//!
//! * [`gaussian`] holds the state types: covariance matrices, the standard
//!   form `(n₁, n₂, c₁, c₂)`, purity, the Wigner density and the
//!   sum/difference mode split.
//! * [`entanglement`] implements the Simon separability test, symplectic
//!   spectra and the logarithmic negativity.
//! * [`analytic`] gives closed-form propagators for a common reservoir and
//!   for two independent reservoirs, plus survival thresholds and
//!   disentanglement times.
//! * [`numeric`] integrates the second-moment equations of the
//!   Fokker-Planck dynamics and serves as an independent check on
//!   [`analytic`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod entanglement;
pub mod error;
pub mod gaussian;
pub mod numeric;

pub use analytic::{
    asymptotic_negativity, disentanglement_time, evolve, evolve_common, evolve_independent,
    survival_threshold, trajectory, DisentanglementTime, ReservoirKind, ReservoirModel,
    TrajectoryPoint,
};
pub use entanglement::{
    log_negativity, negativity_kernel, simon_full, simon_reduced, symplectic_spectrum_general,
    symplectic_spectrum_pt, SeparabilityVerdict, SymplecticSpectrum,
};
pub use error::{Error, Result};
pub use gaussian::{
    purity, sum_diff_decompose, tmsv_covariance, to_standard_form, wigner_density,
    CovarianceMatrix4, ModePartition, SqueezedVacuumParams, StandardFormElements,
};
pub use numeric::{build_moment_flow, dfs_residual, integrate, MomentFlow};
