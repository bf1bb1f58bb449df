//! Closed-form evolution of the squeezed vacuum under the two reservoir
//! models.
//!
//! With a common reservoir only the sum mode is damped, so the standard-form
//! elements move along `τ = 1 − e^{−2γt}`. With two independent reservoirs
//! every quadrature relaxes towards the thermal value `N = 2N̄ + 1` at rate
//! `γ`, and the natural clock is `τ = 1 − e^{−γt}`.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::entanglement::{log_negativity, simon_reduced};
use crate::error::{Error, Result};
use crate::gaussian::{purity, StandardFormElements};

/// Points in the default figure grid.
pub const DEFAULT_GRID_POINTS: usize = 400;

/// Upper end of the default `τ` grid.
pub const DEFAULT_TAU_MAX: f64 = 0.9975;

/// Slack allowed when comparing `|r|` against the survival threshold in
/// [`asymptotic_negativity`].
const THRESHOLD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReservoirKind {
    /// Both modes coupled to one shared bath.
    Common,
    /// Each mode coupled to its own bath.
    Independent,
}

impl ReservoirKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Common => "common",
            Self::Independent => "independent",
        }
    }
}

impl fmt::Display for ReservoirKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReservoirKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "common" => Ok(Self::Common),
            "independent" => Ok(Self::Independent),
            other => Err(Error::Domain(format!(
                "unknown reservoir model '{other}' (expected common or independent)"
            ))),
        }
    }
}

/// Reservoir coupling: model kind, damping rate `γ > 0` and mean thermal
/// photon number `N̄ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirModel {
    kind: ReservoirKind,
    gamma: f64,
    nbar: f64,
}

impl ReservoirModel {
    pub fn new(kind: ReservoirKind, gamma: f64, nbar: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!(
                "coupling rate must be positive and finite, got {gamma}"
            )));
        }
        check_nbar(nbar)?;
        Ok(Self { kind, gamma, nbar })
    }

    pub fn common(gamma: f64, nbar: f64) -> Result<Self> {
        Self::new(ReservoirKind::Common, gamma, nbar)
    }

    pub fn independent(gamma: f64, nbar: f64) -> Result<Self> {
        Self::new(ReservoirKind::Independent, gamma, nbar)
    }

    pub fn kind(&self) -> ReservoirKind {
        self.kind
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// `N = 2N̄ + 1`.
    pub fn noise_scale(&self) -> f64 {
        2.0 * self.nbar + 1.0
    }

    /// Rate entering the rescaled time: `2γ` for a common reservoir, `γ`
    /// for independent ones.
    pub fn clock_rate(&self) -> f64 {
        match self.kind {
            ReservoirKind::Common => 2.0 * self.gamma,
            ReservoirKind::Independent => self.gamma,
        }
    }

    pub fn tau(&self, t: f64) -> f64 {
        -(-self.clock_rate() * t).exp_m1()
    }

    /// Inverse of [`ReservoirModel::tau`]; `tau` must lie in `[0, 1)`.
    pub fn time_from_tau(&self, tau: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&tau) {
            return Err(Error::Domain(format!("tau must lie in [0, 1), got {tau}")));
        }
        Ok(-(-tau).ln_1p() / self.clock_rate())
    }
}

fn check_nbar(nbar: f64) -> Result<()> {
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::Domain(format!(
            "mean thermal photon number must be finite and non-negative, got {nbar}"
        )));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

fn check_squeezing(r: f64) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::Domain(format!("squeezing must be finite, got {r}")));
    }
    Ok(())
}

fn finite_elems(elems: StandardFormElements) -> Result<StandardFormElements> {
    if elems.is_finite() {
        Ok(elems)
    } else {
        Err(Error::Domain(
            "evolved elements overflow double precision".into(),
        ))
    }
}

/// Standard-form elements after time `t` with a common reservoir.
pub fn evolve_common(r: f64, model: &ReservoirModel, t: f64) -> Result<StandardFormElements> {
    if model.kind() != ReservoirKind::Common {
        return Err(Error::Precondition(
            "evolve_common requires the common-reservoir model".into(),
        ));
    }
    check_squeezing(r)?;
    check_time(t)?;
    let tau = model.tau(t);
    let big_n = model.noise_scale();
    let cosh = (2.0 * r).cosh();
    let sinh = (2.0 * r).sinh();
    let drift_down = (big_n - (-2.0 * r).exp()) * tau;
    let drift_up = (big_n - (2.0 * r).exp()) * tau;
    finite_elems(StandardFormElements {
        n1: 0.5 * (2.0 * cosh + drift_down),
        n2: 0.5 * (2.0 * cosh + drift_up),
        c1: 0.5 * (drift_down - 2.0 * sinh),
        c2: 0.5 * (drift_up + 2.0 * sinh),
    })
}

/// Standard-form elements after time `t` with two independent reservoirs.
pub fn evolve_independent(r: f64, model: &ReservoirModel, t: f64) -> Result<StandardFormElements> {
    if model.kind() != ReservoirKind::Independent {
        return Err(Error::Precondition(
            "evolve_independent requires the independent-reservoir model".into(),
        ));
    }
    check_squeezing(r)?;
    check_time(t)?;
    let decay = (-model.gamma() * t).exp();
    let relaxed = -(-model.gamma() * t).exp_m1();
    let n = (2.0 * r).cosh() * decay + model.noise_scale() * relaxed;
    let c = (2.0 * r).sinh() * decay;
    finite_elems(StandardFormElements::new(n, n, -c, c))
}

/// Dispatches to the propagator matching `model`.
pub fn evolve(r: f64, model: &ReservoirModel, t: f64) -> Result<StandardFormElements> {
    match model.kind() {
        ReservoirKind::Common => evolve_common(r, model, t),
        ReservoirKind::Independent => evolve_independent(r, model, t),
    }
}

/// Smallest `|r|` that keeps the state entangled forever under a common
/// reservoir: `½ ln(2N̄ + 1)`.
pub fn survival_threshold(nbar: f64) -> Result<f64> {
    check_nbar(nbar)?;
    Ok(0.5 * (2.0 * nbar).ln_1p())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DisentanglementTime {
    Finite(f64),
    Infinite,
}

impl DisentanglementTime {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Self::Finite(t) => Some(t),
            Self::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }
}

/// Time at which the reduced Simon value first reaches zero.
///
/// `r = 0` is separable from the start and gives `Finite(0)`.
pub fn disentanglement_time(r: f64, model: &ReservoirModel) -> Result<DisentanglementTime> {
    check_squeezing(r)?;
    if r == 0.0 {
        return Ok(DisentanglementTime::Finite(0.0));
    }
    let abs_r = r.abs();
    let gamma = model.gamma();
    match model.kind() {
        ReservoirKind::Common => {
            if abs_r >= survival_threshold(model.nbar())? {
                return Ok(DisentanglementTime::Infinite);
            }
            let big_n = model.noise_scale();
            let ratio = (big_n - (-2.0 * abs_r).exp()) / (big_n - (2.0 * abs_r).exp());
            Ok(DisentanglementTime::Finite(ratio.ln() / (2.0 * gamma)))
        }
        ReservoirKind::Independent => {
            if model.nbar() == 0.0 {
                return Ok(DisentanglementTime::Infinite);
            }
            let gain = -(-2.0 * abs_r).exp_m1() / (2.0 * model.nbar());
            Ok(DisentanglementTime::Finite(gain.ln_1p() / gamma))
        }
    }
}

/// `t → ∞` logarithmic negativity under a common reservoir,
/// `|r|/ln 2 − ½ log₂(2N̄ + 1)`, for squeezing at or above the threshold.
pub fn asymptotic_negativity(r: f64, nbar: f64) -> Result<f64> {
    check_squeezing(r)?;
    let threshold = survival_threshold(nbar)?;
    if r.abs() < threshold - THRESHOLD_SLACK {
        return Err(Error::Precondition(format!(
            "|r| = {} is below the survival threshold {threshold}",
            r.abs()
        )));
    }
    let value = r.abs() / LN_2 - 0.5 * (2.0 * nbar).ln_1p() / LN_2;
    Ok(value.max(0.0))
}

/// One sample of an evolved state with its entanglement diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub tau: f64,
    pub elems: StandardFormElements,
    pub simon_value: f64,
    pub negativity: f64,
    pub purity: f64,
}

impl TrajectoryPoint {
    pub fn evaluate(r: f64, model: &ReservoirModel, t: f64) -> Result<Self> {
        let elems = evolve(r, model, t)?;
        Ok(Self {
            t,
            tau: model.tau(t),
            elems,
            simon_value: simon_reduced(&elems).simon_value,
            negativity: log_negativity(&elems)?,
            purity: purity(&elems)?,
        })
    }
}

/// Evaluates the evolution on an ascending grid of times.
pub fn trajectory(r: f64, model: &ReservoirModel, grid: &[f64]) -> Result<Vec<TrajectoryPoint>> {
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Domain("time grid must be sorted ascending".into()));
    }
    grid.iter()
        .map(|&t| TrajectoryPoint::evaluate(r, model, t))
        .collect()
}

/// `points` uniformly spaced values covering `[0, end]`.
pub fn uniform_grid(end: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain(format!(
            "grid needs at least 2 points, got {points}"
        )));
    }
    if !(end > 0.0) || !end.is_finite() {
        return Err(Error::Domain(format!(
            "grid end must be positive, got {end}"
        )));
    }
    let step = end / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                end
            } else {
                i as f64 * step
            }
        })
        .collect())
}

/// Times matching a uniform `τ` grid on `[0, tau_max]` for `model`.
pub fn tau_time_grid(model: &ReservoirModel, points: usize, tau_max: f64) -> Result<Vec<f64>> {
    if !(tau_max > 0.0 && tau_max < 1.0) {
        return Err(Error::Domain(format!(
            "tau_max must lie in (0, 1), got {tau_max}"
        )));
    }
    uniform_grid(tau_max, points)?
        .into_iter()
        .map(|tau| model.time_from_tau(tau))
        .collect()
}
