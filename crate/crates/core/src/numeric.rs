//! Second-moment equations of the reservoir Fokker-Planck dynamics.
//!
//! A Fokker-Planck equation with linear drift `A·X` and constant diffusion
//! `D` sends the covariance along `dV/dt = −(A V + V Aᵀ) + D`. Both reservoir
//! models give `A = (γ/2)·M` and `D = (γN/2)·M` for a fixed coupling pattern
//! `M`. Integrating this with RK4 gives an estimate of `V(t)` that shares no
//! code with the closed forms in [`crate::analytic`].

use nalgebra::Matrix4;

use crate::analytic::{ReservoirKind, ReservoirModel};
use crate::error::{Error, Result};
use crate::gaussian::{sum_diff_decompose, CovarianceMatrix4};

/// Default integration step in units of `1/γ`.
pub const DEFAULT_GAMMA_DT: f64 = 1e-3;

/// How the diffusion coefficient is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffusionConvention {
    /// `D = (γN/2)·M`, the scaling that reproduces the closed forms.
    RateScaled,
    /// `D = (N/2)·M` without the rate. Only useful as a negative control.
    Unscaled,
}

/// Drift and diffusion matrices of the moment equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentFlow {
    pub kind: ReservoirKind,
    pub gamma: f64,
    pub drift: Matrix4<f64>,
    pub diffusion: Matrix4<f64>,
}

/// Coupling pattern `M`: `x` couples to `x` and `p` to `p` across both modes
/// for a shared bath; identity for separate baths.
pub fn coupling_pattern(kind: ReservoirKind) -> Matrix4<f64> {
    match kind {
        ReservoirKind::Common => Matrix4::new(
            1.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 1.0, //
            1.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 1.0,
        ),
        ReservoirKind::Independent => Matrix4::identity(),
    }
}

pub fn build_moment_flow(model: &ReservoirModel) -> MomentFlow {
    build_moment_flow_with(model, DiffusionConvention::RateScaled)
}

pub fn build_moment_flow_with(
    model: &ReservoirModel,
    convention: DiffusionConvention,
) -> MomentFlow {
    let pattern = coupling_pattern(model.kind());
    let gamma = model.gamma();
    let diffusion_rate = match convention {
        DiffusionConvention::RateScaled => gamma * model.noise_scale() / 2.0,
        DiffusionConvention::Unscaled => model.noise_scale() / 2.0,
    };
    MomentFlow {
        kind: model.kind(),
        gamma,
        drift: pattern * (gamma / 2.0),
        diffusion: pattern * diffusion_rate,
    }
}

impl MomentFlow {
    /// `dV/dt = −(A V + V Aᵀ) + D`.
    pub fn derivative(&self, v: &Matrix4<f64>) -> Matrix4<f64> {
        self.diffusion - (self.drift * v + v * self.drift.transpose())
    }

    fn rk4_step(&self, v: &Matrix4<f64>, h: f64) -> Matrix4<f64> {
        let k1 = self.derivative(v);
        let k2 = self.derivative(&(v + k1 * (h / 2.0)));
        let k3 = self.derivative(&(v + k2 * (h / 2.0)));
        let k4 = self.derivative(&(v + k3 * h));
        let next = v + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        (next + next.transpose()) * 0.5
    }

    /// Advances `v` from `t_start` by `span` using uniform steps no longer
    /// than `dt`.
    fn advance(&self, v: Matrix4<f64>, t_start: f64, span: f64, dt: f64) -> Result<Matrix4<f64>> {
        if span == 0.0 {
            return Ok(v);
        }
        let steps = (span / dt - 1e-9).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        let mut v = v;
        for k in 0..steps {
            v = self.rk4_step(&v, h);
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Divergence {
                    t: t_start + (k + 1) as f64 * h,
                });
            }
        }
        Ok(v)
    }
}

fn check_step(dt: f64) -> Result<()> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!(
            "step must be positive and finite, got {dt}"
        )));
    }
    Ok(())
}

/// Fixed-step RK4 integration of the moment equations up to `t_end`.
///
/// The interval is split into `⌈t_end/dt⌉` equal steps, and the state is
/// symmetrized after every step.
pub fn integrate(
    flow: &MomentFlow,
    v0: &CovarianceMatrix4,
    t_end: f64,
    dt: f64,
) -> Result<CovarianceMatrix4> {
    check_step(dt)?;
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::Domain(format!(
            "end time must be finite and non-negative, got {t_end}"
        )));
    }
    CovarianceMatrix4::new(flow.advance(*v0.matrix(), 0.0, t_end, dt)?)
}

/// Integrates through an ascending grid of times, returning the covariance
/// at each one.
pub fn integrate_grid(
    flow: &MomentFlow,
    v0: &CovarianceMatrix4,
    grid: &[f64],
    dt: f64,
) -> Result<Vec<CovarianceMatrix4>> {
    check_step(dt)?;
    if grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(Error::Domain(
            "grid times must be finite and non-negative".into(),
        ));
    }
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Domain("time grid must be sorted ascending".into()));
    }
    let mut out = Vec::with_capacity(grid.len());
    let mut v = *v0.matrix();
    let mut t = 0.0;
    for &target in grid {
        v = flow.advance(v, t, target - t, dt)?;
        t = target;
        out.push(CovarianceMatrix4::new(v)?);
    }
    Ok(out)
}

/// Largest drift of the difference-mode block away from its initial value
/// along the grid, under a common reservoir.
pub fn dfs_residual(flow: &MomentFlow, v0: &CovarianceMatrix4, grid: &[f64]) -> Result<f64> {
    dfs_residual_with_step(flow, v0, grid, DEFAULT_GAMMA_DT / flow.gamma)
}

pub fn dfs_residual_with_step(
    flow: &MomentFlow,
    v0: &CovarianceMatrix4,
    grid: &[f64],
    dt: f64,
) -> Result<f64> {
    if flow.kind != ReservoirKind::Common {
        return Err(Error::Precondition(
            "difference-mode invariance only holds for a common reservoir".into(),
        ));
    }
    let initial = sum_diff_decompose(v0).diff_block;
    Ok(integrate_grid(flow, v0, grid, dt)?
        .iter()
        .map(|v| (sum_diff_decompose(v).diff_block - initial).amax())
        .fold(0.0, f64::max))
}
