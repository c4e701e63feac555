//! Kraus-level privacy certificates.
//!
//! With `σ_A = Σ p_k |ψ_{A,k}⟩⟨ψ_{A,k}|` and `ρ₀ = Σ q_l |φ_l⟩⟨φ_l|`, the map
//! `σ_B ↦ Φ(E(σ_A ⊗ σ_B)E†)` has the Kraus family
//! `L_{jk} = √p_k V_j E(|ψ_{A,k}⟩ ⊗ ·)`, while `σ_B ↦ tr(σ_B) ρ₀` has the family
//! `R_{il} = √q_l |φ_l⟩⟨i|`. Privacy makes these the same channel, so
//! `L_{jk} = Σ_{il} λ_{(jk),(il)} R_{il}` for an isometry `λ`.

use serde::{Deserialize, Serialize};

use super::{check_compatible, check_sigma_a, defect_threshold, reference_output};
use crate::channels::Channel;
use crate::codes::SubsystemCode;
use crate::error::{Error, Result};
use crate::tensor::{eig_hermitian, ComplexMatrix, Tolerance};

/// Upper bound on the reconstruction residual of an accepted certificate.
pub const RECONSTRUCTION_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrivacyCertificate {
    pub sigma_a: ComplexMatrix,
    pub rho_0: ComplexMatrix,
    /// Rows `(j, k)` at index `j·num_a_states + k`; columns `(i, l)` at `i·q.len() + l`.
    pub lambda: ComplexMatrix,
    /// Retained eigenvalues of `σ_A`, descending.
    pub p: Vec<f64>,
    /// Retained eigenvalues of `ρ₀`, descending.
    pub q: Vec<f64>,
    pub a_states: ComplexMatrix,
    pub output_states: ComplexMatrix,
    pub num_kraus: usize,
    pub dim_b: usize,
    /// `λ` is square and `λλ† = I` as well.
    pub unitary_flag: bool,
    /// `max_{jk} ‖L_{jk} − Σ λ R_{il}‖_max`.
    pub reconstruction_residual: f64,
    /// `‖λ†λ − I‖_max`.
    pub isometry_residual: f64,
    /// `‖λλ† − I‖_max`, for square `λ` only.
    pub unitarity_residual: Option<f64>,
    /// Max-norm distance between the Choi matrices of the two families.
    pub choi_mismatch: f64,
}

impl PrivacyCertificate {
    pub fn num_a_states(&self) -> usize {
        self.p.len()
    }

    pub fn row_index(&self, j: usize, k: usize) -> usize {
        j * self.p.len() + k
    }

    pub fn col_index(&self, i: usize, l: usize) -> usize {
        i * self.q.len() + l
    }

    /// `λ_{(jk),(il)}`.
    pub fn coefficient(&self, j: usize, k: usize, i: usize, l: usize) -> crate::tensor::C64 {
        self.lambda[(self.row_index(j, k), self.col_index(i, l))]
    }

    /// `R_{il} = √q_l |φ_l⟩⟨i|`.
    pub fn right_family(&self) -> Vec<ComplexMatrix> {
        right_family(&self.output_states, &self.q, self.dim_b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn right_family(states: &ComplexMatrix, q: &[f64], dim_b: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(dim_b * q.len());
    for i in 0..dim_b {
        let bra = ComplexMatrix::ket(dim_b, i);
        for (l, ql) in q.iter().enumerate() {
            out.push(ComplexMatrix::outer(&states.column(l), &bra).scale_real(ql.sqrt()));
        }
    }
    out
}

fn choi_of(kraus: &[ComplexMatrix]) -> ComplexMatrix {
    // trace preservation is irrelevant here: only the Choi matrix is compared
    let ch = Channel::from_kraus_unchecked(kraus.to_vec()).expect("shapes agree");
    ch.choi()
}

/// Builds and verifies the Kraus-level certificate.
///
/// Fails with [`Error::NotPrivate`] when the two Kraus families define
/// different channels, and with [`Error::CertificateCheck`] if `λ` does not
/// reconstruct the left family or is not an isometry.
pub fn certify_theorem2(
    phi: &Channel,
    code: &SubsystemCode,
    sigma_a: &ComplexMatrix,
    tol: Tolerance,
) -> Result<PrivacyCertificate> {
    check_compatible(phi, code)?;
    check_sigma_a(code, sigma_a)?;
    let cutoff = tol.bound(1.0);
    let eig_tol = Tolerance::uniform(1e-8)?;

    let sa = eig_hermitian(sigma_a, eig_tol)?;
    let keep_a: Vec<usize> = (0..sa.values.len()).filter(|&k| sa.values[k] > cutoff).collect();
    if keep_a.is_empty() {
        return Err(Error::InvalidArgument("sigma_a has no eigenvalue above tolerance".into()));
    }
    let p: Vec<f64> = keep_a.iter().map(|&k| sa.values[k]).collect();
    let a_states = ComplexMatrix::from_columns(&keep_a.iter().map(|&k| sa.vector(k)).collect::<Vec<_>>())?;

    let rho_0 = reference_output(phi, code, sigma_a)?;
    let ro = eig_hermitian(&rho_0, eig_tol)?;
    let keep_q: Vec<usize> = (0..ro.values.len()).filter(|&l| ro.values[l] > cutoff).collect();
    let q: Vec<f64> = keep_q.iter().map(|&l| ro.values[l]).collect();
    let output_states = ComplexMatrix::from_columns(&keep_q.iter().map(|&l| ro.vector(l)).collect::<Vec<_>>())?;

    let slices: Vec<ComplexMatrix> = (0..p.len())
        .map(|k| code.slice(&a_states.column(k)))
        .collect::<Result<_>>()?;
    let mut left = Vec::with_capacity(phi.num_kraus() * p.len());
    for v in phi.kraus() {
        for (k, pk) in p.iter().enumerate() {
            left.push((v * &slices[k]).scale_real(pk.sqrt()));
        }
    }
    let dim_b = code.dim_b();
    let right = right_family(&output_states, &q, dim_b);

    let choi_mismatch = choi_of(&left).max_abs_diff(&choi_of(&right));
    if choi_mismatch > defect_threshold(dim_b, tol) {
        return Err(Error::NotPrivate { mismatch: choi_mismatch });
    }

    // R is Hilbert-Schmidt orthogonal with ⟨R_il, R_il⟩ = q_l.
    let lambda = ComplexMatrix::from_fn(left.len(), right.len(), |row, col| {
        let ql = q[col % q.len()];
        right[col].hs_inner(&left[row]) / ql
    });

    let mut reconstruction_residual: f64 = 0.0;
    for (row, l) in left.iter().enumerate() {
        let mut acc = ComplexMatrix::zeros(l.rows(), l.cols());
        for (col, r) in right.iter().enumerate() {
            acc += &r.scale(lambda[(row, col)]);
        }
        reconstruction_residual = reconstruction_residual.max(acc.max_abs_diff(l));
    }
    let iso = lambda.is_isometry(tol);
    let cert = PrivacyCertificate {
        sigma_a: sigma_a.clone(),
        rho_0,
        p,
        q,
        a_states,
        output_states,
        num_kraus: phi.num_kraus(),
        dim_b,
        unitary_flag: lambda.is_square() && iso.unitary,
        reconstruction_residual,
        isometry_residual: iso.isometry_residual,
        unitarity_residual: lambda.is_square().then_some(iso.unitary_residual),
        choi_mismatch,
        lambda,
    };
    if cert.reconstruction_residual > RECONSTRUCTION_BOUND {
        return Err(Error::CertificateCheck(format!(
            "reconstruction residual {:.3e} exceeds {RECONSTRUCTION_BOUND:e}",
            cert.reconstruction_residual
        )));
    }
    if !iso.isometry {
        return Err(Error::CertificateCheck(format!(
            "coefficient matrix is not an isometry (residual {:.3e})",
            cert.isometry_residual
        )));
    }
    Ok(cert)
}
