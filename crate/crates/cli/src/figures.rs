//! Curve families of the six reference figures.
//!
//! Figures 1–4 plot the logarithmic negativity against `τ`; 5 and 6 plot
//! purity against `γt` for the common reservoir.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gaussent_core::analytic::{tau_time_grid, uniform_grid};
use gaussent_core::{trajectory, ReservoirKind, ReservoirModel};

use crate::commands::UNIT_GAMMA;
use crate::config::GridSpec;
use crate::csv::{format_float, render_trajectory, write_file};
use crate::error::{CliError, Result};

/// End of the `γt` axis used by the purity figures.
pub const PURITY_GAMMA_T_END: f64 = 5.0;

const R_FAMILY: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureAxis {
    Tau,
    GammaT,
}

impl FigureAxis {
    fn name(&self) -> &'static str {
        match self {
            Self::Tau => "tau",
            Self::GammaT => "gamma_t",
        }
    }
}

/// Listing order of the curves relative to their vertical position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveOrder {
    BottomToTop,
    TopToBottom,
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    pub r: f64,
    pub nbar: f64,
}

impl Curve {
    pub fn noise_scale(&self) -> f64 {
        2.0 * self.nbar + 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub id: u8,
    pub model: ReservoirKind,
    pub axis: FigureAxis,
    pub order: CurveOrder,
    pub curves: Vec<Curve>,
}

fn squeezing_family(nbar: f64) -> Vec<Curve> {
    R_FAMILY.iter().map(|&r| Curve { r, nbar }).collect()
}

/// `r = 1` with `N = 2N̄ + 1 ∈ {1, 2, 6, e², 9}`.
fn noise_family() -> Vec<Curve> {
    let e2 = 2.0_f64.exp();
    [1.0, 2.0, 6.0, e2, 9.0]
        .iter()
        .map(|&big_n| Curve {
            r: 1.0,
            nbar: (big_n - 1.0) / 2.0,
        })
        .collect()
}

pub fn figure_spec(id: u8) -> Result<FigureSpec> {
    use ReservoirKind::{Common, Independent};
    let (model, axis, order, curves) = match id {
        1 => (
            Common,
            FigureAxis::Tau,
            CurveOrder::BottomToTop,
            squeezing_family(0.5),
        ),
        2 => (
            Common,
            FigureAxis::Tau,
            CurveOrder::TopToBottom,
            noise_family(),
        ),
        3 => (
            Independent,
            FigureAxis::Tau,
            CurveOrder::BottomToTop,
            squeezing_family(0.5),
        ),
        4 => (
            Independent,
            FigureAxis::Tau,
            CurveOrder::TopToBottom,
            noise_family(),
        ),
        5 => (
            Common,
            FigureAxis::GammaT,
            CurveOrder::Unspecified,
            squeezing_family(0.5),
        ),
        6 => (
            Common,
            FigureAxis::GammaT,
            CurveOrder::Unspecified,
            noise_family(),
        ),
        other => {
            return Err(CliError::Usage(format!(
                "unknown figure {other} (expected 1 to 6)"
            )))
        }
    };
    Ok(FigureSpec {
        id,
        model,
        axis,
        order,
        curves,
    })
}

pub fn manifest_name(id: u8) -> String {
    format!("fig{id}_manifest.csv")
}

pub const MANIFEST_HEADER: &str = "file,figure,curve,model,r,nbar,N,axis";

/// Writes one CSV per curve and a manifest, returning the curve files in
/// listing order followed by the manifest.
pub fn cmd_figures(
    id: u8,
    output_dir: &Path,
    grid: GridSpec,
    precision: usize,
) -> Result<Vec<PathBuf>> {
    let spec = figure_spec(id)?;
    if grid.points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be at least 2, got {}",
            grid.points
        )));
    }
    if !(1..=17).contains(&precision) {
        return Err(CliError::Usage(format!(
            "--precision must lie in 1..=17, got {precision}"
        )));
    }
    let mut manifest = String::from(MANIFEST_HEADER);
    manifest.push('\n');
    let mut written = Vec::with_capacity(spec.curves.len() + 1);
    for (index, curve) in spec.curves.iter().enumerate() {
        let model = ReservoirModel::new(spec.model, UNIT_GAMMA, curve.nbar)?;
        let times = match spec.axis {
            FigureAxis::Tau => tau_time_grid(&model, grid.points, grid.tau_max)?,
            FigureAxis::GammaT => uniform_grid(PURITY_GAMMA_T_END / UNIT_GAMMA, grid.points)?,
        };
        let points = trajectory(curve.r, &model, &times)?;
        let name = format!("fig{id}_curve{}.csv", index + 1);
        let path = output_dir.join(&name);
        write_file(&path, &render_trajectory(&points, UNIT_GAMMA, precision))?;
        let _ = writeln!(
            manifest,
            "{name},{id},{},{},{},{},{},{}",
            index + 1,
            spec.model,
            format_float(curve.r, precision),
            format_float(curve.nbar, precision),
            format_float(curve.noise_scale(), precision),
            spec.axis.name()
        );
        written.push(path);
    }
    let manifest_path = output_dir.join(manifest_name(id));
    write_file(&manifest_path, &manifest)?;
    written.push(manifest_path);
    Ok(written)
}
