//! Separability and entanglement measures for two-mode Gaussian states.

use std::cmp::Ordering;

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::gaussian::{symplectic_form, CovarianceMatrix4, StandardFormElements};

/// Reduced Simon values with magnitude at or below this are reported as the
/// separable boundary, exactly zero.
pub const SIMON_ZERO_BAND: f64 = 1e-12;

/// Relative tolerance for matching the `±iλ` eigenvalue pairs of `Ω·V`.
pub const PAIRING_TOL: f64 = 1e-9;

/// Symplectic eigenvalues, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSpectrum {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl SymplecticSpectrum {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::UnphysicalState(format!(
                "symplectic eigenvalues must be positive and finite, got ({a}, {b})"
            )));
        }
        let (lambda1, lambda2) = if a <= b { (a, b) } else { (b, a) };
        Ok(Self { lambda1, lambda2 })
    }

    pub fn min(&self) -> f64 {
        self.lambda1
    }

    pub fn max(&self) -> f64 {
        self.lambda2
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.lambda1 - other.lambda1)
            .abs()
            .max((self.lambda2 - other.lambda2).abs())
    }
}

/// Outcome of the reduced Simon test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityVerdict {
    pub simon_value: f64,
    pub entangled: bool,
}

fn j2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Left-hand side of Simon's separability inequality,
/// `det A·det B + (¼ − |det C|)² − Tr[AJCJBJCᵀJ] − ¼(det A + det B)`.
/// Negative means entangled.
pub fn simon_full(v: &CovarianceMatrix4) -> f64 {
    let (a, b, c) = v.blocks();
    let j = j2();
    let det_a = a.determinant();
    let det_b = b.determinant();
    let gap = 0.25 - c.determinant().abs();
    let cross = (a * j * c * j * b * j * c.transpose() * j).trace();
    det_a * det_b + gap * gap - cross - 0.25 * (det_a + det_b)
}

/// Simon test specialised to the standard form:
/// `(n₁ − |c₁|)(n₂ − |c₂|) − 1`, negative iff entangled.
pub fn simon_reduced(elems: &StandardFormElements) -> SeparabilityVerdict {
    let StandardFormElements { n1, n2, c1, c2 } = *elems;
    let mut simon_value = (n1 - c1.abs()) * (n2 - c2.abs()) - 1.0;
    if simon_value.abs() <= SIMON_ZERO_BAND {
        simon_value = 0.0;
    }
    SeparabilityVerdict {
        simon_value,
        entangled: simon_value < 0.0,
    }
}

/// Symplectic spectrum of the partially transposed standard-form state,
/// `½√((n₁ − c₁)(n₂ + c₂))` and `½√((n₁ + c₁)(n₂ − c₂))`.
pub fn symplectic_spectrum_pt(elems: &StandardFormElements) -> Result<SymplecticSpectrum> {
    let StandardFormElements { n1, n2, c1, c2 } = *elems;
    let first = (n1 - c1) * (n2 + c2);
    let second = (n1 + c1) * (n2 - c2);
    if !(first > 0.0 && second > 0.0) {
        return Err(Error::UnphysicalState(format!(
            "partial-transpose radicands ({first:e}, {second:e}) must be positive"
        )));
    }
    SymplecticSpectrum::new(0.5 * first.sqrt(), 0.5 * second.sqrt())
}

/// `F(λ) = max(0, −log₂ 2λ)`.
pub fn negativity_kernel(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "symplectic eigenvalue must be positive and finite, got {lambda}"
        )));
    }
    let twice = 2.0 * lambda;
    Ok(if twice >= 1.0 { 0.0 } else { -twice.log2() })
}

/// Logarithmic negativity `F(λ₁) + F(λ₂)` over the partial-transpose spectrum.
pub fn log_negativity(elems: &StandardFormElements) -> Result<f64> {
    let spectrum = symplectic_spectrum_pt(elems)?;
    Ok(negativity_kernel(spectrum.lambda1)? + negativity_kernel(spectrum.lambda2)?)
}

/// Symplectic spectrum of an arbitrary covariance matrix from the
/// eigenvalues of `Ω·V`, which come in pairs `±iλ`.
pub fn symplectic_spectrum_general(
    v: &CovarianceMatrix4,
    partial_transpose: bool,
) -> Result<SymplecticSpectrum> {
    let w = if partial_transpose {
        v.partial_transpose()
    } else {
        *v
    };
    let m = symplectic_form() * w.matrix();
    let mut moduli: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    for pair in moduli.chunks(2) {
        let scale = pair[1].max(1.0);
        if (pair[1] - pair[0]).abs() > PAIRING_TOL * scale {
            return Err(Error::Numerical(format!(
                "eigenvalues of Ω·V do not pair: {} vs {}",
                pair[0], pair[1]
            )));
        }
    }
    SymplecticSpectrum::new(0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3]))
}
