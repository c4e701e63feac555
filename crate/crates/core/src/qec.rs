//! Error-correction side: Knill–Laflamme conditions, correctability through
//! complementary channels, measurement structure, and verification of
//! fixed-ancilla recoveries.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channels::Channel;
use crate::codes::SubsystemCode;
use crate::error::{mismatch, Error, Result};
use crate::privacy::{is_private, operator_privacy, OperatorPrivacy};
use crate::sampling::random_hermitian;
use crate::tensor::{eig_hermitian, hermitian_operator_basis, ComplexMatrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnillLaflamme {
    pub holds: bool,
    /// `c_ij` with `P V_i†V_j P ≈ c_ij P`.
    pub coefficients: ComplexMatrix,
    /// `max_ij ‖E†V_i†V_jE − c_ij I‖_max`.
    pub residual: f64,
}

/// `P V_i† V_j P = c_ij P` for all Kraus pairs, checked as `E†V_i†V_jE = c_ij I`.
pub fn knill_laflamme_check(phi: &Channel, code: &SubsystemCode, tol: Tolerance) -> Result<KnillLaflamme> {
    if code.dim_a() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Knill-Laflamme conditions need a subspace code (dim_a = 1), got dim_a = {}",
            code.dim_a()
        )));
    }
    if phi.dim_in() != code.dim_s() {
        return Err(mismatch("channel input vs code system", code.dim_s(), phi.dim_in()));
    }
    let e = code.embedding();
    let restricted: Vec<ComplexMatrix> = phi.kraus().iter().map(|v| v * e).collect();
    let n = restricted.len();
    let db = code.dim_b();
    let id = ComplexMatrix::identity(db);
    let mut coefficients = ComplexMatrix::zeros(n, n);
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let m = &restricted[i].adjoint() * &restricted[j];
            let c = m.trace() / db as f64;
            coefficients[(i, j)] = c;
            residual = residual.max(m.max_abs_diff(&id.scale(c)));
        }
    }
    Ok(KnillLaflamme {
        holds: tol.accepts(residual, 1.0),
        coefficients,
        residual,
    })
}

/// Operator correctability of `B` for `e`, decided as operator privacy of `B`
/// for the complementary channel.
pub fn operator_correctable_check(e: &Channel, code: &SubsystemCode, tol: Tolerance) -> Result<bool> {
    Ok(operator_privacy(&e.complementary(), code, tol)?.accepted())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplementarityReport {
    pub private_for_phi: bool,
    /// Whether the stronger, every-`σ_A` form of privacy holds for `Φ`.
    pub operator_private_for_phi: bool,
    /// Operator correctability of the code for `Φ^♯`.
    pub operator_correctable_for_complement: bool,
    pub complement_is_measurement: bool,
    /// Number of measurement outcomes when the complement is a measurement.
    pub measurement_outcomes: Option<usize>,
    pub notes: String,
}

impl ComplementarityReport {
    /// Operator privacy for `Φ` and correctability for `Φ^♯` are required to agree.
    pub fn consistent(&self) -> bool {
        !self.operator_private_for_phi || self.operator_correctable_for_complement
    }
}

pub fn complementarity_pair_report(
    phi: &Channel,
    code: &SubsystemCode,
    sigma_a: &ComplexMatrix,
    tol: Tolerance,
) -> Result<ComplementarityReport> {
    let (private, _) = is_private(phi, code, sigma_a, tol)?;
    let op: OperatorPrivacy = operator_privacy(phi, code, tol)?;
    let complement = phi.complementary();
    let correctable = operator_correctable_check(&complement, code, tol)?;
    let structure = measurement_structure(&complement, tol);

    let mut notes = Vec::new();
    match (private, op.accepted(), correctable) {
        (true, true, true) => notes.push("operator private for the channel and correctable for its complement"),
        (true, false, false) => notes.push(
            "private at the fixed sigma_a only; the complement does not correct the code, \
             so the private/correctable duality does not extend to this code",
        ),
        (true, false, true) => notes.push("private at the fixed sigma_a; the complement still corrects the code"),
        (false, _, true) => notes.push("not private, yet correctable for the complement"),
        (false, _, false) => notes.push("neither private nor correctable for the complement"),
        (true, true, false) => notes.push("operator private but not correctable for the complement: inconsistent"),
    }
    if let Some(s) = &structure {
        notes.push(if s.count == 1 {
            "complement is a single-outcome measurement"
        } else {
            "complement is a von Neumann measurement"
        });
    }
    Ok(ComplementarityReport {
        private_for_phi: private,
        operator_private_for_phi: op.accepted(),
        operator_correctable_for_complement: correctable,
        complement_is_measurement: structure.is_some(),
        measurement_outcomes: structure.map(|s| s.count),
        notes: notes.join("; "),
    })
}

/// `Φ(ρ) = Σ_s ⟨u_s|ρ|u_s⟩ |w_s⟩⟨w_s|` with orthonormal `{u_s}` and `{w_s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementStructure {
    /// Measured basis `u_s`, as columns.
    pub measured_basis: ComplexMatrix,
    /// Output states `w_s`, as columns.
    pub output_states: ComplexMatrix,
    pub count: usize,
}

impl MeasurementStructure {
    /// Rank-one Kraus operators `|w_s⟩⟨u_s|`.
    pub fn kraus(&self) -> Vec<ComplexMatrix> {
        (0..self.count)
            .map(|s| ComplexMatrix::outer(&self.output_states.column(s), &self.measured_basis.column(s)))
            .collect()
    }
}

/// Fixed probe used to split degenerate spectra of `Φ†Φ`.
fn probe(dim: usize) -> ComplexMatrix {
    random_hermitian(&mut ChaCha8Rng::seed_from_u64(0x005e_ed0f_u64), dim)
}

/// Recovers the measurement form of `phi`, if it has one.
///
/// For a measurement channel `Φ†Φ(H) = Σ_s ⟨u_s|H|u_s⟩ |u_s⟩⟨u_s|`, so the
/// eigenbasis of `Φ†Φ` on a generic probe `H` is the measured basis. The
/// candidate is accepted only if each `Φ(|u_s⟩⟨u_s|)` is pure, the outputs
/// are orthonormal and the rebuilt Kraus set has the Choi matrix of `phi`,
/// so the answer does not depend on the Kraus representation.
pub fn measurement_structure(phi: &Channel, tol: Tolerance) -> Option<MeasurementStructure> {
    let d = phi.dim_in();
    let m = phi.dual().apply(&phi.apply_unchecked(&probe(d))).ok()?;
    let basis = eig_hermitian(&m, Tolerance::uniform(1e-8).ok()?).ok()?.vectors;
    let mut outputs = Vec::with_capacity(d);
    for s in 0..d {
        let u = basis.column(s);
        let out = eig_hermitian(&phi.apply_unchecked(&ComplexMatrix::outer(&u, &u)), Tolerance::uniform(1e-8).ok()?)
            .ok()?;
        if !tol.accepts((out.values[0] - 1.0).abs(), 1.0) {
            return None;
        }
        outputs.push(out.vector(0));
    }
    let output_states = ComplexMatrix::from_columns(&outputs).ok()?;
    if !output_states.is_isometry(tol).isometry {
        return None;
    }
    let structure = MeasurementStructure {
        measured_basis: basis,
        output_states,
        count: d,
    };
    let rebuilt = Channel::with_tolerance(structure.kraus(), tol).ok()?;
    if phi.equals(&rebuilt, tol).ok()? {
        Some(structure)
    } else {
        None
    }
}

/// True when `phi` measures in an orthonormal basis and prepares orthonormal
/// outputs, i.e. its Kraus operators can be chosen as orthogonal rank-one
/// projectors followed by an isometry.
pub fn is_von_neumann_measurement(phi: &Channel, tol: Tolerance) -> bool {
    measurement_structure(phi, tol).is_some()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectabilityWitness {
    pub recovery: Channel,
    pub tau_a: ComplexMatrix,
    /// `max_{σ_B} ‖R∘E(E_c(σ_A ⊗ σ_B)E_c†) − E_c(τ_A ⊗ σ_B)E_c†‖_tr` over a Hermitian basis of `B`.
    pub residual: f64,
    pub accepted: bool,
}

/// Checks `R∘E(σ_A ⊗ σ_B) = τ_A ⊗ σ_B` for all `σ_B`, with `τ_A` read off
/// from the maximally mixed input on `B`.
pub fn fixed_state_correctable_check(
    e: &Channel,
    code: &SubsystemCode,
    sigma_a: &ComplexMatrix,
    recovery: &Channel,
    tol: Tolerance,
) -> Result<CorrectabilityWitness> {
    if e.dim_in() != code.dim_s() {
        return Err(mismatch("noise input vs code system", code.dim_s(), e.dim_in()));
    }
    if recovery.dim_in() != e.dim_out() {
        return Err(mismatch("recovery input vs noise output", e.dim_out(), recovery.dim_in()));
    }
    if recovery.dim_out() != code.dim_s() {
        return Err(mismatch("recovery output vs code system", code.dim_s(), recovery.dim_out()));
    }
    let (da, db) = (code.dim_a(), code.dim_b());
    let round_trip = |x: &ComplexMatrix| -> Result<ComplexMatrix> { recovery.apply(&e.apply(x)?) };
    let mixed_b = ComplexMatrix::identity(db).scale_real(1.0 / db as f64);
    let out = round_trip(&code.embed(sigma_a, &mixed_b)?)?;
    let pulled_back = code.embedding().adjoint().conjugate(&out);
    let tau_a = pulled_back.partial_trace(&[da, db], &[0])?;

    let mut residual: f64 = 0.0;
    for sb in hermitian_operator_basis(db) {
        let got = round_trip(&code.embed(sigma_a, &sb)?)?;
        let want = code.embed(&tau_a, &sb)?;
        residual = residual.max((&got - &want).trace_norm());
    }
    Ok(CorrectabilityWitness {
        recovery: recovery.clone(),
        tau_a,
        residual,
        accepted: tol.accepts(residual, 1.0),
    })
}
