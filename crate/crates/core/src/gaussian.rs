//! Two-mode Gaussian states in covariance-matrix form.
//!
//! Quadratures are ordered `(x₁, p₁, x₂, p₂)`, ħ = 1, and the vacuum has
//! covariance `½·I₄`. The state family produced by a squeezed vacuum under
//! either reservoir model keeps the sparse pattern
//!
//! ```text
//!        ⎡ n₁  0   c₁  0  ⎤
//! V = ½ ·⎢ 0   n₂  0   c₂ ⎥
//!        ⎢ c₁  0   n₁  0  ⎥
//!        ⎣ 0   c₂  0   n₂ ⎦
//! ```
//!
//! which [`StandardFormElements`] stores as four scalars.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Matrix2, Matrix4, SMatrix, SymmetricEigen, Vector4};

use crate::error::{Error, Result};

/// Variance of each vacuum quadrature.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Largest off-pattern entry tolerated by [`to_standard_form`].
pub const STANDARD_FORM_TOL: f64 = 1e-10;

/// Radicand undershoot below 1 that [`purity`] still rounds to a pure state.
pub const PURITY_CLAMP_TOL: f64 = 1e-9;

/// Relative asymmetry accepted (and removed) by [`CovarianceMatrix4::new`].
const SYMMETRY_TOL: f64 = 1e-12;

/// The symplectic form `Ω = J ⊕ J` with `J = [[0, 1], [-1, 0]]`.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// Symmetric 4×4 matrix of symmetrized quadrature second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix4(Matrix4<f64>);

impl CovarianceMatrix4 {
    /// Builds a covariance matrix, rejecting non-finite entries and
    /// asymmetry beyond rounding. The stored matrix is exactly symmetric.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("covariance entries must be finite".into()));
        }
        let scale = m.amax().max(1.0);
        let asym = (m - m.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::Domain(format!(
                "covariance matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        Ok(Self((m + m.transpose()) * 0.5))
    }

    pub fn vacuum() -> Self {
        Self(Matrix4::identity() * VACUUM_VARIANCE)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn into_inner(self) -> Matrix4<f64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    /// Local blocks `A` (mode 1), `B` (mode 2) and the correlation block `C`
    /// in `V = [[A, C], [Cᵀ, B]]`.
    pub fn blocks(&self) -> (Matrix2<f64>, Matrix2<f64>, Matrix2<f64>) {
        let a = self.0.fixed_view::<2, 2>(0, 0).into_owned();
        let b = self.0.fixed_view::<2, 2>(2, 2).into_owned();
        let c = self.0.fixed_view::<2, 2>(0, 2).into_owned();
        (a, b, c)
    }

    /// Partial transposition with respect to mode 2 (`p₂ → −p₂`).
    ///
    /// The result is positive definite whenever `self` is, but need not be a
    /// physical state.
    pub fn partial_transpose(&self) -> Self {
        let flip = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0));
        Self(flip * self.0 * flip)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Max-norm distance between two covariance matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).amax()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.0.cholesky().is_some()
    }

    /// Smallest eigenvalue of the Hermitian matrix `V + (i/2)Ω`.
    ///
    /// Computed from the real 8×8 embedding `[[V, −Ω/2], [Ω/2, V]]`, whose
    /// spectrum is that of the Hermitian matrix with every eigenvalue doubled.
    pub fn uncertainty_margin(&self) -> f64 {
        let half_omega = symplectic_form() * 0.5;
        let mut embed = SMatrix::<f64, 8, 8>::zeros();
        embed.fixed_view_mut::<4, 4>(0, 0).copy_from(&self.0);
        embed.fixed_view_mut::<4, 4>(4, 4).copy_from(&self.0);
        embed.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-half_omega));
        embed.fixed_view_mut::<4, 4>(4, 0).copy_from(&half_omega);
        SymmetricEigen::new(embed).eigenvalues.min()
    }

    /// Robertson-Schrödinger uncertainty check `V + (i/2)Ω ≥ −tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.is_positive_definite() && self.uncertainty_margin() >= -tol
    }
}

/// The four scalars `(n₁, n₂, c₁, c₂)` of the sparse covariance pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormElements {
    pub n1: f64,
    pub n2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl StandardFormElements {
    pub fn new(n1: f64, n2: f64, c1: f64, c2: f64) -> Self {
        Self { n1, n2, c1, c2 }
    }

    /// Elements of the two-mode squeezed vacuum with squeezing `r`.
    pub fn squeezed_vacuum(r: f64) -> Self {
        let n = (2.0 * r).cosh();
        let c = (2.0 * r).sinh();
        Self::new(n, n, -c, c)
    }

    pub fn is_finite(&self) -> bool {
        self.n1.is_finite() && self.n2.is_finite() && self.c1.is_finite() && self.c2.is_finite()
    }

    pub fn to_covariance(&self) -> CovarianceMatrix4 {
        let Self { n1, n2, c1, c2 } = *self;
        CovarianceMatrix4(
            Matrix4::new(
                n1, 0.0, c1, 0.0, //
                0.0, n2, 0.0, c2, //
                c1, 0.0, n1, 0.0, //
                0.0, c2, 0.0, n2,
            ) * 0.5,
        )
    }

    /// Largest entry-wise difference to another set of elements.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.n1 - other.n1,
            self.n2 - other.n2,
            self.c1 - other.c1,
            self.c2 - other.c2,
        ]
        .iter()
        .fold(0.0_f64, |acc, d| acc.max(d.abs()))
    }
}

/// Squeezing parameter of a two-mode squeezed vacuum. Either sign is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedVacuumParams {
    r: f64,
}

impl SqueezedVacuumParams {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::Domain(format!("squeezing must be finite, got {r}")));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Covariance of the two-mode squeezed vacuum: `n₁ = n₂ = cosh 2r`,
/// `c₂ = −c₁ = sinh 2r`.
pub fn tmsv_covariance(params: &SqueezedVacuumParams) -> Result<CovarianceMatrix4> {
    let elems = StandardFormElements::squeezed_vacuum(params.r());
    if !elems.is_finite() {
        return Err(Error::Domain(format!(
            "squeezing r = {} overflows double precision",
            params.r()
        )));
    }
    Ok(elems.to_covariance())
}

/// Reads `(n₁, n₂, c₁, c₂)` back out of a covariance matrix that has the
/// standard sparse pattern.
pub fn to_standard_form(v: &CovarianceMatrix4) -> Result<StandardFormElements> {
    const OFF_PATTERN: [(usize, usize); 4] = [(0, 1), (0, 3), (1, 2), (2, 3)];
    for &(i, j) in &OFF_PATTERN {
        let value = v.get(i, j);
        if value.abs() > STANDARD_FORM_TOL {
            return Err(Error::NotStandardForm(format!(
                "entry ({i}, {j}) = {value:e} should vanish"
            )));
        }
    }
    for (i, j) in [(0, 2), (1, 3)] {
        let (a, b) = (v.get(i, i), v.get(j, j));
        if (a - b).abs() > STANDARD_FORM_TOL {
            return Err(Error::NotStandardForm(format!(
                "diagonal entries ({i}, {i}) = {a:e} and ({j}, {j}) = {b:e} differ"
            )));
        }
    }
    Ok(StandardFormElements {
        n1: v.get(0, 0) + v.get(2, 2),
        n2: v.get(1, 1) + v.get(3, 3),
        c1: 2.0 * v.get(0, 2),
        c2: 2.0 * v.get(1, 3),
    })
}

/// `Tr ρ² = 1/√((n₁² − c₁²)(n₂² − c₂²))`, capped at 1.
pub fn purity(elems: &StandardFormElements) -> Result<f64> {
    let StandardFormElements { n1, n2, c1, c2 } = *elems;
    // factored form keeps the cancellation in n − c explicit
    let radicand = (n1 - c1) * (n1 + c1) * (n2 - c2) * (n2 + c2);
    if !(radicand > 0.0) {
        return Err(Error::UnphysicalState(format!(
            "purity radicand {radicand:e} is not positive"
        )));
    }
    if radicand < 1.0 - PURITY_CLAMP_TOL {
        return Err(Error::UnphysicalState(format!(
            "purity radicand {radicand:e} below 1 implies purity above 1"
        )));
    }
    Ok((1.0 / radicand.sqrt()).min(1.0))
}

/// Wigner function of a zero-mean Gaussian state at phase-space point `x`.
pub fn wigner_density(v: &CovarianceMatrix4, x: &[f64; 4]) -> Result<f64> {
    let chol = v.matrix().cholesky().ok_or(Error::SingularCovariance)?;
    let det: f64 = chol.l().diagonal().iter().map(|d| d * d).product();
    if !(det > 0.0) {
        return Err(Error::SingularCovariance);
    }
    let x = Vector4::from_column_slice(x);
    let quad = x.dot(&chol.solve(&x));
    Ok((2.0 * PI).powi(-2) * det.powf(-0.5) * (-0.5 * quad).exp())
}

/// Covariance blocks after the passive change of variables
/// `x_S = (x₁ + x₂)/√2`, `p_S = (p₁ + p₂)/√2`, `x_D = (x₂ − x₁)/√2`,
/// `p_D = (p₂ − p₁)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePartition {
    pub sum_block: Matrix2<f64>,
    pub diff_block: Matrix2<f64>,
    pub cross_block: Matrix2<f64>,
}

impl ModePartition {
    /// Total variance, equal to the trace of the untransformed covariance.
    pub fn trace(&self) -> f64 {
        self.sum_block.trace() + self.diff_block.trace()
    }
}

fn sum_diff_transform() -> Matrix4<f64> {
    Matrix4::new(
        1.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 1.0, //
        -1.0, 0.0, 1.0, 0.0, //
        0.0, -1.0, 0.0, 1.0,
    ) * FRAC_1_SQRT_2
}

/// Splits a covariance matrix into the sum mode `S`, the difference mode `D`
/// and their correlations.
pub fn sum_diff_decompose(v: &CovarianceMatrix4) -> ModePartition {
    let t = sum_diff_transform();
    let w = t * v.matrix() * t.transpose();
    ModePartition {
        sum_block: w.fixed_view::<2, 2>(0, 0).into_owned(),
        diff_block: w.fixed_view::<2, 2>(2, 2).into_owned(),
        cross_block: w.fixed_view::<2, 2>(0, 2).into_owned(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // exp-based definitions, independent of f64::cosh / f64::sinh
    fn cosh_ref(x: f64) -> f64 {
        (x.exp() + (-x).exp()) / 2.0
    }
    fn sinh_ref(x: f64) -> f64 {
        (x.exp() - (-x).exp()) / 2.0
    }

    const COSH_2: f64 = 3.762_195_691_083_631;
    const SINH_2: f64 = 3.626_860_407_847_019;

    fn tmsv(r: f64) -> CovarianceMatrix4 {
        tmsv_covariance(&SqueezedVacuumParams::new(r).unwrap()).unwrap()
    }

    #[test]
    fn tmsv_zero_squeezing_is_vacuum() {
        assert_eq!(tmsv(0.0), CovarianceMatrix4::vacuum());
    }

    #[test]
    fn tmsv_unit_squeezing_elements() {
        assert_abs_diff_eq!(COSH_2, cosh_ref(2.0), epsilon = 1e-14);
        assert_abs_diff_eq!(SINH_2, sinh_ref(2.0), epsilon = 1e-14);
        let e = to_standard_form(&tmsv(1.0)).unwrap();
        assert_abs_diff_eq!(e.n1, COSH_2, epsilon = 1e-12);
        assert_abs_diff_eq!(e.n2, COSH_2, epsilon = 1e-12);
        assert_abs_diff_eq!(e.c1, -SINH_2, epsilon = 1e-12);
        assert_abs_diff_eq!(e.c2, SINH_2, epsilon = 1e-12);
    }

    #[test]
    fn tmsv_negative_squeezing_flips_correlations() {
        let plus = to_standard_form(&tmsv(1.0)).unwrap();
        let minus = to_standard_form(&tmsv(-1.0)).unwrap();
        assert_eq!(plus.n1, minus.n1);
        assert_eq!(plus.n2, minus.n2);
        assert_eq!(plus.c1, -minus.c1);
        assert_eq!(plus.c2, -minus.c2);
    }

    #[test]
    fn tmsv_rejects_non_finite() {
        assert!(matches!(
            SqueezedVacuumParams::new(f64::NAN),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SqueezedVacuumParams::new(f64::INFINITY),
            Err(Error::Domain(_))
        ));
        let huge = SqueezedVacuumParams::new(1e3).unwrap();
        assert!(matches!(tmsv_covariance(&huge), Err(Error::Domain(_))));
    }

    #[test]
    fn tmsv_is_pure_and_physical() {
        for r in [0.0, 0.1, -0.1, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0] {
            let v = tmsv(r);
            assert!(v.is_physical(1e-10), "r = {r}");
            // pure: V + (i/2)Ω is singular
            assert_abs_diff_eq!(v.uncertainty_margin(), 0.0, epsilon = 1e-10);
            let p = purity(&to_standard_form(&v).unwrap()).unwrap();
            assert_abs_diff_eq!(p, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn standard_form_of_vacuum() {
        let e = to_standard_form(&CovarianceMatrix4::vacuum()).unwrap();
        assert_eq!(e, StandardFormElements::new(1.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn standard_form_rejects_pattern_violations() {
        let mut m = *CovarianceMatrix4::vacuum().matrix();
        m[(0, 1)] = 0.1;
        m[(1, 0)] = 0.1;
        let v = CovarianceMatrix4::new(m).unwrap();
        assert!(matches!(
            to_standard_form(&v),
            Err(Error::NotStandardForm(_))
        ));

        let mut m = *CovarianceMatrix4::vacuum().matrix();
        m[(2, 2)] = 0.7;
        let v = CovarianceMatrix4::new(m).unwrap();
        assert!(matches!(
            to_standard_form(&v),
            Err(Error::NotStandardForm(_))
        ));
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let mut m = *CovarianceMatrix4::vacuum().matrix();
        m[(0, 2)] = 0.2;
        assert!(CovarianceMatrix4::new(m).is_err());
    }

    #[test]
    fn purity_of_thermal_endpoint() {
        // two independent reservoirs at N̄ = 0.5 relax to n = N = 2, c = 0
        let p = purity(&StandardFormElements::new(2.0, 2.0, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn purity_rejects_unphysical() {
        assert!(matches!(
            purity(&StandardFormElements::new(1.0, 1.0, 2.0, 0.0)),
            Err(Error::UnphysicalState(_))
        ));
        assert!(matches!(
            purity(&StandardFormElements::new(0.5, 0.5, 0.0, 0.0)),
            Err(Error::UnphysicalState(_))
        ));
    }

    #[test]
    fn wigner_vacuum_origin() {
        let w = wigner_density(&CovarianceMatrix4::vacuum(), &[0.0; 4]).unwrap();
        assert_abs_diff_eq!(w, 0.101_321_183_642_337_77, epsilon = 1e-15);
        assert_abs_diff_eq!(w, 1.0 / (PI * PI), epsilon = 1e-15);
    }

    #[test]
    fn wigner_origin_is_determinant_prefactor() {
        let v = tmsv(0.7);
        let w = wigner_density(&v, &[0.0; 4]).unwrap();
        let expected = (2.0 * PI).powi(-2) / v.determinant().sqrt();
        assert_abs_diff_eq!(w, expected, epsilon = 1e-13);
    }

    #[test]
    fn wigner_singular_covariance() {
        let mut m = *CovarianceMatrix4::vacuum().matrix();
        m[(3, 3)] = 0.0;
        let v = CovarianceMatrix4::new(m).unwrap();
        assert_eq!(
            wigner_density(&v, &[0.0; 4]),
            Err(Error::SingularCovariance)
        );
    }

    #[test]
    fn sum_diff_of_tmsv() {
        let r: f64 = 0.8;
        let parts = sum_diff_decompose(&tmsv(r));
        let up = (2.0 * r).exp() / 2.0;
        let down = (-2.0 * r).exp() / 2.0;
        let expected_d = Matrix2::new(up, 0.0, 0.0, down);
        let expected_s = Matrix2::new(down, 0.0, 0.0, up);
        assert!((parts.diff_block - expected_d).amax() < 1e-12);
        assert!((parts.sum_block - expected_s).amax() < 1e-12);
        assert!(parts.cross_block.amax() < 1e-12);
    }

    #[test]
    fn sum_diff_of_vacuum() {
        let parts = sum_diff_decompose(&CovarianceMatrix4::vacuum());
        let half = Matrix2::identity() * 0.5;
        assert!((parts.sum_block - half).amax() < 1e-15);
        assert!((parts.diff_block - half).amax() < 1e-15);
    }

    #[test]
    fn partial_transpose_flips_momentum_correlation() {
        let e = to_standard_form(&tmsv(1.0).partial_transpose()).unwrap();
        assert_abs_diff_eq!(e.c2, -SINH_2, epsilon = 1e-12);
        assert_abs_diff_eq!(e.c1, -SINH_2, epsilon = 1e-12);
    }
}
