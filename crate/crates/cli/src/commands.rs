use std::fmt;
use std::path::PathBuf;

use gaussent_core::analytic::{tau_time_grid, uniform_grid};
use gaussent_core::entanglement::SIMON_ZERO_BAND;
use gaussent_core::numeric::{
    build_moment_flow_with, dfs_residual_with_step, integrate_grid, DiffusionConvention,
};
use gaussent_core::{
    disentanglement_time, evolve, simon_full, simon_reduced, survival_threshold,
    symplectic_spectrum_general, symplectic_spectrum_pt, trajectory, DisentanglementTime,
    ReservoirKind, ReservoirModel, StandardFormElements,
};

use crate::config::RunConfig;
use crate::csv::{render_trajectory, write_file};
use crate::error::{CliError, Result};

/// Trajectories are computed at unit coupling; output time is `γt`.
pub(crate) const UNIT_GAMMA: f64 = 1.0;

pub const ORACLE_TOL: f64 = 1e-8;
pub const SPECTRUM_TOL: f64 = 1e-10;
pub const DFS_TOL: f64 = 1e-8;
pub const ORACLE_CHECKPOINTS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const DFS_GRID_POINTS: usize = 51;
const DFS_GAMMA_T_END: f64 = 5.0;

const BOTH_MODELS: [ReservoirKind; 2] = [ReservoirKind::Common, ReservoirKind::Independent];

fn models_for(config: &RunConfig, default: &[ReservoirKind]) -> Vec<ReservoirKind> {
    match config.model {
        Some(kind) => vec![kind],
        None => default.to_vec(),
    }
}

pub fn trajectory_file_name(kind: ReservoirKind, r: f64, nbar: f64) -> String {
    format!("trajectory_{kind}_r{r}_nbar{nbar}.csv")
}

/// Writes one CSV per `(r, N̄)` pair (common reservoir unless a model is
/// given) and returns the paths in the order written.
pub fn cmd_trajectory(config: &RunConfig) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let mut written = Vec::new();
    for kind in models_for(config, &[ReservoirKind::Common]) {
        for &r in &config.r_list {
            for &nbar in &config.nbar_list {
                let model = ReservoirModel::new(kind, UNIT_GAMMA, nbar)?;
                let times = tau_time_grid(&model, config.grid.points, config.grid.tau_max)?;
                let points = trajectory(r, &model, &times)?;
                let path = config.output_path.join(trajectory_file_name(kind, r, nbar));
                write_file(
                    &path,
                    &render_trajectory(&points, UNIT_GAMMA, config.precision),
                )?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

/// Survival threshold report, with a verdict for `r` when given.
pub fn cmd_threshold(nbar: f64, r: Option<f64>, kind: ReservoirKind) -> Result<String> {
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(CliError::Usage(format!(
            "--nbar must be finite and non-negative, got {nbar}"
        )));
    }
    let r_star = survival_threshold(nbar)?;
    let mut report = format!("nbar = {nbar}\nr* = {r_star:.12}\n");
    if let Some(r) = r {
        if !r.is_finite() {
            return Err(CliError::Usage(format!("--r must be finite, got {r}")));
        }
        let model = ReservoirModel::new(kind, UNIT_GAMMA, nbar)?;
        let verdict = match disentanglement_time(r, &model)? {
            DisentanglementTime::Infinite => "survives (entangled for all t)".to_string(),
            DisentanglementTime::Finite(0.0) => "separable at t = 0".to_string(),
            DisentanglementTime::Finite(t) => format!("disentangles at γt ≈ {t:.6}"),
        };
        report.push_str(&format!("r = {r} ({kind}): {verdict}\n"));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Negative control: drop the rate from the diffusion coefficient.
    pub drop_diffusion_rate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.to_string())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<18} {:>12} {:>10}  status  detail",
            "check", "value", "threshold"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<18} {:>12.3e} {:>10.0e}  {:<6}  {}",
                c.name,
                c.value,
                c.threshold,
                if c.passed { "PASS" } else { "FAIL" },
                c.detail
            )?;
        }
        Ok(())
    }
}

struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
        }
    }

    fn update(&mut self, value: f64, at: impl FnOnce() -> String) {
        if value > self.value || value.is_nan() {
            self.value = value;
            self.at = at();
        }
    }
}

fn banded_sign(value: f64) -> i8 {
    if value.abs() < SIMON_ZERO_BAND {
        0
    } else if value < 0.0 {
        -1
    } else {
        1
    }
}

fn check_oracle_agreement(
    config: &RunConfig,
    models: &[ReservoirKind],
    convention: DiffusionConvention,
) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &kind in models {
        for &gamma in &config.gamma_list {
            let dt = config.gamma_dt / gamma;
            let times: Vec<f64> = ORACLE_CHECKPOINTS.iter().map(|gt| gt / gamma).collect();
            for &nbar in &config.nbar_list {
                let model = ReservoirModel::new(kind, gamma, nbar)?;
                let flow = build_moment_flow_with(&model, convention);
                for &r in &config.r_list {
                    let v0 = StandardFormElements::squeezed_vacuum(r).to_covariance();
                    let numeric = integrate_grid(&flow, &v0, &times, dt)?;
                    for (t, v) in times.iter().zip(&numeric) {
                        let exact = evolve(r, &model, *t)?.to_covariance();
                        worst.update(v.max_abs_diff(&exact), || {
                            format!("{kind} γ={gamma} r={r} N̄={nbar} γt={}", gamma * t)
                        });
                    }
                }
            }
        }
    }
    Ok(CheckResult {
        name: "oracle-agreement",
        value: worst.value,
        threshold: ORACLE_TOL,
        passed: worst.value < ORACLE_TOL,
        detail: worst.at,
    })
}

fn check_criteria(config: &RunConfig, models: &[ReservoirKind]) -> Result<[CheckResult; 2]> {
    let mut mismatches = 0usize;
    let mut first_mismatch = String::new();
    let mut worst = Worst::new();
    for &kind in models {
        for &nbar in &config.nbar_list {
            let model = ReservoirModel::new(kind, UNIT_GAMMA, nbar)?;
            let times = tau_time_grid(&model, config.grid.points, config.grid.tau_max)?;
            for &r in &config.r_list {
                for &t in &times {
                    let elems = evolve(r, &model, t)?;
                    let v = elems.to_covariance();
                    let full = simon_full(&v);
                    let reduced = simon_reduced(&elems).simon_value;
                    if banded_sign(full) != banded_sign(reduced) {
                        if mismatches == 0 {
                            first_mismatch = format!(
                                "{kind} r={r} N̄={nbar} γt={t}: full={full:e} reduced={reduced:e}"
                            );
                        }
                        mismatches += 1;
                    }
                    let closed = symplectic_spectrum_pt(&elems)?;
                    let general = symplectic_spectrum_general(&v, true)?;
                    worst.update(closed.max_abs_diff(&general), || {
                        format!("{kind} r={r} N̄={nbar} γt={t}")
                    });
                }
            }
        }
    }
    Ok([
        CheckResult {
            name: "sign-agreement",
            value: mismatches as f64,
            threshold: SIMON_ZERO_BAND,
            passed: mismatches == 0,
            detail: if mismatches == 0 {
                "no sign mismatches".to_string()
            } else {
                format!("{mismatches} mismatches, first: {first_mismatch}")
            },
        },
        CheckResult {
            name: "spectrum-oracle",
            value: worst.value,
            threshold: SPECTRUM_TOL,
            passed: worst.value < SPECTRUM_TOL,
            detail: worst.at,
        },
    ])
}

fn check_dfs(config: &RunConfig, convention: DiffusionConvention) -> Result<CheckResult> {
    let mut worst = Worst::new();
    let gamma_t = uniform_grid(DFS_GAMMA_T_END, DFS_GRID_POINTS)?;
    for &gamma in &config.gamma_list {
        let times: Vec<f64> = gamma_t.iter().map(|gt| gt / gamma).collect();
        for &nbar in &config.nbar_list {
            let model = ReservoirModel::common(gamma, nbar)?;
            let flow = build_moment_flow_with(&model, convention);
            for &r in &config.r_list {
                let v0 = StandardFormElements::squeezed_vacuum(r).to_covariance();
                let residual = dfs_residual_with_step(&flow, &v0, &times, config.gamma_dt / gamma)?;
                worst.update(residual, || format!("γ={gamma} r={r} N̄={nbar}"));
            }
        }
    }
    Ok(CheckResult {
        name: "dfs-residual",
        value: worst.value,
        threshold: DFS_TOL,
        passed: worst.value < DFS_TOL,
        detail: worst.at,
    })
}

/// Cross-checks closed forms against the integrator and the general
/// spectrum oracle. Both models are checked unless one is configured.
pub fn cmd_validate(config: &RunConfig, options: ValidateOptions) -> Result<ValidationReport> {
    config.validate()?;
    let models = models_for(config, &BOTH_MODELS);
    let convention = if options.drop_diffusion_rate {
        DiffusionConvention::Unscaled
    } else {
        DiffusionConvention::RateScaled
    };
    let mut report = ValidationReport::default();
    report
        .checks
        .push(check_oracle_agreement(config, &models, convention)?);
    report.checks.extend(check_criteria(config, &models)?);
    if models.contains(&ReservoirKind::Common) {
        report.checks.push(check_dfs(config, convention)?);
    }
    Ok(report)
}
