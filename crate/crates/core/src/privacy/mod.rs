//! Privacy of subsystems under a channel.
//!
//! `B` is private for `Φ` at a fixed `σ_A` when `Φ(E(σ_A ⊗ σ_B)E†)` does not
//! depend on `σ_B`. By linearity it suffices that every traceless `G` on `B`
//! is annihilated: `Φ(E(σ_A ⊗ G)E†) = 0`. The defect sums the trace norms of
//! those images over the Gell-Mann basis.

mod certificate;
mod search;

use serde::{Deserialize, Serialize};

use crate::channels::Channel;
use crate::codes::SubsystemCode;
use crate::error::{mismatch, Error, Result};
use crate::tensor::{gell_mann_basis, hermitian_operator_basis, matrix_units, ComplexMatrix, Tolerance};

pub use certificate::{certify_theorem2, PrivacyCertificate};
pub use search::{search_private_subspace, search_private_subspace_with, SearchOptions, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub defect: f64,
    /// Traceless operator on `B` whose image has the largest trace norm.
    pub worst_input: ComplexMatrix,
    /// Trace norm of each Gell-Mann image, in basis order.
    pub contributions: Vec<f64>,
    /// `Φ(E(σ_A ⊗ I/dim_b)E†)`.
    pub rho_0: ComplexMatrix,
}

fn check_compatible(phi: &Channel, code: &SubsystemCode) -> Result<()> {
    if phi.dim_in() != code.dim_s() {
        return Err(mismatch("channel input vs code system", code.dim_s(), phi.dim_in()));
    }
    Ok(())
}

fn check_sigma_a(code: &SubsystemCode, sigma_a: &ComplexMatrix) -> Result<()> {
    if sigma_a.shape() != (code.dim_a(), code.dim_a()) {
        return Err(mismatch(
            "sigma_a",
            format!("{0}x{0}", code.dim_a()),
            format!("{}x{}", sigma_a.rows(), sigma_a.cols()),
        ));
    }
    Ok(())
}

/// `Φ(E(σ_A ⊗ I/dim_b)E†)`.
pub fn reference_output(phi: &Channel, code: &SubsystemCode, sigma_a: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_compatible(phi, code)?;
    let mixed = ComplexMatrix::identity(code.dim_b()).scale_real(1.0 / code.dim_b() as f64);
    Ok(phi.apply_unchecked(&code.embed(sigma_a, &mixed)?))
}

pub fn privacy_defect(phi: &Channel, code: &SubsystemCode, sigma_a: &ComplexMatrix) -> Result<DefectReport> {
    check_compatible(phi, code)?;
    check_sigma_a(code, sigma_a)?;
    let rho_0 = reference_output(phi, code, sigma_a)?;
    let basis = gell_mann_basis(code.dim_b());
    let contributions: Vec<f64> = basis
        .iter()
        .map(|g| Ok(phi.apply_unchecked(&code.embed(sigma_a, g)?).trace_norm()))
        .collect::<Result<_>>()?;
    let worst = contributions
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i);
    let worst_input = match worst {
        Some(i) => basis[i].clone(),
        None => ComplexMatrix::zeros(code.dim_b(), code.dim_b()),
    };
    Ok(DefectReport {
        defect: contributions.iter().sum(),
        worst_input,
        contributions,
        rho_0,
    })
}

/// Acceptance threshold for a defect: `tol` scaled by `dim_b²`.
pub fn defect_threshold(dim_b: usize, tol: Tolerance) -> f64 {
    tol.bound(1.0) * (dim_b * dim_b) as f64
}

/// Returns the verdict together with `ρ₀ = Φ(E(σ_A ⊗ I/dim_b)E†)`.
pub fn is_private(
    phi: &Channel,
    code: &SubsystemCode,
    sigma_a: &ComplexMatrix,
    tol: Tolerance,
) -> Result<(bool, ComplexMatrix)> {
    let report = privacy_defect(phi, code, sigma_a)?;
    Ok((report.defect <= defect_threshold(code.dim_b(), tol), report.rho_0))
}

/// Both readings of operator privacy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorPrivacy {
    /// `Φ(E(σ_A ⊗ ·)E†)` is constant in `σ_B` for every `σ_A`.
    pub constant_for_every_sigma_a: bool,
    /// The constant additionally does not depend on `σ_A` (density inputs).
    pub independent_of_sigma_a: bool,
    /// Defect for each element of the Hermitian basis `{I/d, Gell-Mann}` of `A`.
    pub defects: Vec<f64>,
    /// Largest `‖Φ(E(G_A ⊗ I/dim_b)E†)‖_tr` over traceless `G_A`.
    pub sigma_a_dependence: f64,
}

impl OperatorPrivacy {
    /// Verdict under the per-`σ_A` reading.
    pub fn accepted(&self) -> bool {
        self.constant_for_every_sigma_a
    }
}

pub fn operator_privacy(phi: &Channel, code: &SubsystemCode, tol: Tolerance) -> Result<OperatorPrivacy> {
    check_compatible(phi, code)?;
    let gb = gell_mann_basis(code.dim_b());
    let mixed_b = ComplexMatrix::identity(code.dim_b()).scale_real(1.0 / code.dim_b() as f64);
    let threshold = defect_threshold(code.dim_b(), tol);
    let basis_a = hermitian_operator_basis(code.dim_a());
    let mut defects = Vec::with_capacity(basis_a.len());
    for sa in &basis_a {
        let mut d = 0.0;
        for g in &gb {
            d += phi.apply_unchecked(&code.embed(sa, g)?).trace_norm();
        }
        defects.push(d);
    }
    let mut dependence: f64 = 0.0;
    for ga in &basis_a[1..] {
        dependence = dependence.max(phi.apply_unchecked(&code.embed(ga, &mixed_b)?).trace_norm());
    }
    let constant = defects.iter().all(|&d| d <= threshold);
    Ok(OperatorPrivacy {
        constant_for_every_sigma_a: constant,
        independent_of_sigma_a: constant && dependence <= tol.bound(1.0) * code.dim_a() as f64,
        defects,
        sigma_a_dependence: dependence,
    })
}

/// Operator privacy under the per-`σ_A` reading; see [`operator_privacy`] for both.
pub fn is_operator_private(phi: &Channel, code: &SubsystemCode, tol: Tolerance) -> Result<bool> {
    Ok(operator_privacy(phi, code, tol)?.accepted())
}

/// `max_M ‖E†Φ†(M)E − tr(Mρ₀) I‖_max` over matrix units `M` of the output space.
pub fn heisenberg_residual(phi: &Channel, code: &SubsystemCode, rho_0: &ComplexMatrix) -> Result<f64> {
    if code.dim_a() != 1 {
        return Err(Error::InvalidArgument(format!(
            "the Heisenberg-picture check needs a subspace code (dim_a = 1), got dim_a = {}",
            code.dim_a()
        )));
    }
    check_compatible(phi, code)?;
    let d_out = phi.dim_out();
    if rho_0.shape() != (d_out, d_out) {
        return Err(mismatch(
            "rho_0",
            format!("{d_out}x{d_out}"),
            format!("{}x{}", rho_0.rows(), rho_0.cols()),
        ));
    }
    let dual = phi.dual();
    let e = code.embedding();
    let id_b = ComplexMatrix::identity(code.dim_b());
    let mut residual: f64 = 0.0;
    for m in matrix_units(d_out) {
        let lhs = e.adjoint().conjugate(&dual.apply(&m)?);
        let rhs = id_b.scale((&m * rho_0).trace());
        residual = residual.max(lhs.max_abs_diff(&rhs));
    }
    Ok(residual)
}

/// `P_B Φ†(M) P_B = tr(Mρ₀) P_B` for every operator `M`, checked on matrix units.
pub fn heisenberg_private_check(
    phi: &Channel,
    code: &SubsystemCode,
    rho_0: &ComplexMatrix,
    tol: Tolerance,
) -> Result<bool> {
    Ok(heisenberg_residual(phi, code, rho_0)? <= tol.bound(1.0) * code.dim_b() as f64)
}
