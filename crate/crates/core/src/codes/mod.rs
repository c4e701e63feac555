//! Subspace and subsystem codes.
//!
//! A [`SubsystemCode`] is an isometry `E : A ⊗ B → S`. Subspace codes are the
//! case `dim_a = 1`. States are encoded as `E (σ_A ⊗ σ_B) E†`; the same map is
//! used on arbitrary operators when computing privacy defects.

mod encoder;

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::tensor::{parse_signed_word, pauli_word, signed_pauli_word, ComplexMatrix, Tolerance, C64};

pub use encoder::{
    candidate_circuits, resolve_encoder, t_gate, two_qubit_encoder, EncoderCircuit, EncoderResolution, Gate,
    PauliImage, GAUGE_WORDS, LOGICAL_IMAGE_WORDS,
};

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CodeRepr", into = "CodeRepr")]
pub struct SubsystemCode {
    dim_a: usize,
    dim_b: usize,
    embedding: ComplexMatrix,
}

impl std::fmt::Debug for SubsystemCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubsystemCode")
            .field("dim_a", &self.dim_a)
            .field("dim_b", &self.dim_b)
            .field("dim_s", &self.dim_s())
            .finish()
    }
}

impl SubsystemCode {
    /// Validates shape `dim_S × (dim_a·dim_b)` and `E†E = I` at the default tolerance.
    pub fn new(dim_a: usize, dim_b: usize, embedding: ComplexMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidArgument("code dimensions must be positive".into()));
        }
        if embedding.cols() != dim_a * dim_b {
            return Err(mismatch("code embedding columns", dim_a * dim_b, embedding.cols()));
        }
        if embedding.rows() < embedding.cols() {
            return Err(mismatch(
                "code embedding rows",
                format!(">= {}", embedding.cols()),
                embedding.rows(),
            ));
        }
        let check = embedding.is_isometry(Tolerance::default());
        if !check.isometry {
            return Err(Error::InvalidArgument(format!(
                "code embedding is not an isometry (residual {:.3e})",
                check.isometry_residual
            )));
        }
        Ok(Self { dim_a, dim_b, embedding })
    }

    /// Subspace code spanned by orthonormal column vectors.
    pub fn subspace(basis: &[ComplexMatrix]) -> Result<Self> {
        let embedding = ComplexMatrix::from_columns(basis)?;
        let dim_b = embedding.cols();
        Self::new(1, dim_b, embedding)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim_s(&self) -> usize {
        self.embedding.rows()
    }

    pub fn embedding(&self) -> &ComplexMatrix {
        &self.embedding
    }

    pub fn is_subspace(&self) -> bool {
        self.dim_a == 1
    }

    /// `E (σ_A ⊗ σ_B) E†`, linear in both arguments.
    pub fn embed(&self, sigma_a: &ComplexMatrix, sigma_b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if sigma_a.shape() != (self.dim_a, self.dim_a) {
            return Err(mismatch(
                "embed sigma_a",
                format!("{0}x{0}", self.dim_a),
                format!("{}x{}", sigma_a.rows(), sigma_a.cols()),
            ));
        }
        if sigma_b.shape() != (self.dim_b, self.dim_b) {
            return Err(mismatch(
                "embed sigma_b",
                format!("{0}x{0}", self.dim_b),
                format!("{}x{}", sigma_b.rows(), sigma_b.cols()),
            ));
        }
        Ok(self.embedding.conjugate(&sigma_a.kron(sigma_b)))
    }

    /// Projector `E E†` onto the `A ⊗ B` sector.
    pub fn projector(&self) -> ComplexMatrix {
        &self.embedding * &self.embedding.adjoint()
    }

    /// Isometry `B → S`, `|b⟩ ↦ E(|a⟩ ⊗ |b⟩)` for a unit vector `|a⟩` of `A`.
    pub fn slice(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.shape() != (self.dim_a, 1) {
            return Err(mismatch("code slice vector", self.dim_a, a.rows()));
        }
        Ok(&self.embedding * &a.kron(&ComplexMatrix::identity(self.dim_b)))
    }

    /// The code carried along by a unitary `U` on `S`: embedding `U E`.
    pub fn transformed(&self, u: &ComplexMatrix) -> Result<Self> {
        let embedding = u.checked_mul(&self.embedding)?;
        Self::new(self.dim_a, self.dim_b, embedding)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    dim_a: usize,
    dim_b: usize,
    embedding: ComplexMatrix,
}

impl TryFrom<CodeRepr> for SubsystemCode {
    type Error = Error;

    fn try_from(r: CodeRepr) -> Result<Self> {
        SubsystemCode::new(r.dim_a, r.dim_b, r.embedding)
    }
}

impl From<SubsystemCode> for CodeRepr {
    fn from(c: SubsystemCode) -> Self {
        CodeRepr {
            dim_a: c.dim_a,
            dim_b: c.dim_b,
            embedding: c.embedding,
        }
    }
}

pub fn subspace_code(basis: &[ComplexMatrix]) -> Result<SubsystemCode> {
    SubsystemCode::subspace(basis)
}

pub fn embed(code: &SubsystemCode, sigma_a: &ComplexMatrix, sigma_b: &ComplexMatrix) -> Result<ComplexMatrix> {
    code.embed(sigma_a, sigma_b)
}

/// Logical Pauli operators `(X_L, Y_L, Z_L)` on the system.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameRepr", into = "FrameRepr")]
pub struct LogicalFrame {
    pub x_l: ComplexMatrix,
    pub y_l: ComplexMatrix,
    pub z_l: ComplexMatrix,
}

impl std::fmt::Debug for LogicalFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |m: &ComplexMatrix| signed_pauli_word(m, 1e-12).unwrap_or_else(|| format!("{m:?}"));
        f.debug_struct("LogicalFrame")
            .field("x_l", &show(&self.x_l))
            .field("y_l", &show(&self.y_l))
            .field("z_l", &show(&self.z_l))
            .finish()
    }
}

impl LogicalFrame {
    /// Checks that each operator is Hermitian, unitary and traceless and that
    /// the three pairwise anticommute.
    pub fn new(x_l: ComplexMatrix, y_l: ComplexMatrix, z_l: ComplexMatrix) -> Result<Self> {
        let frame = Self { x_l, y_l, z_l };
        frame.validate(Tolerance::default())?;
        Ok(frame)
    }

    pub fn from_words(x: &str, y: &str, z: &str) -> Result<Self> {
        Self::new(parse_signed_word(x)?, parse_signed_word(y)?, parse_signed_word(z)?)
    }

    pub fn operators(&self) -> [&ComplexMatrix; 3] {
        [&self.x_l, &self.y_l, &self.z_l]
    }

    fn validate(&self, tol: Tolerance) -> Result<()> {
        let d = self.x_l.rows();
        for (name, m) in ["x_l", "y_l", "z_l"].iter().zip(self.operators()) {
            if m.shape() != (d, d) {
                return Err(mismatch("logical frame operator", format!("{d}x{d}"), format!("{}x{}", m.rows(), m.cols())));
            }
            if !m.is_hermitian(tol) {
                return Err(Error::InvalidArgument(format!("{name} is not Hermitian")));
            }
            if !m.is_isometry(tol).unitary {
                return Err(Error::InvalidArgument(format!("{name} is not unitary")));
            }
            if !tol.accepts(m.trace().norm(), d as f64) {
                return Err(Error::InvalidArgument(format!("{name} is not traceless")));
            }
        }
        let ops = self.operators();
        for i in 0..3 {
            for j in i + 1..3 {
                let anti = &(ops[i] * ops[j]) + &(ops[j] * ops[i]);
                if !tol.accepts(anti.max_abs(), 1.0) {
                    return Err(Error::InvalidArgument(format!("frame operators {i} and {j} do not anticommute")));
                }
            }
        }
        Ok(())
    }

    /// `s` with `X_L Y_L = s · i · Z_L`, `s = ±1`; `None` if neither sign fits.
    pub fn orientation(&self) -> Option<f64> {
        let xy = &self.x_l * &self.y_l;
        let iz = self.z_l.scale(C64::new(0.0, 1.0));
        [1.0, -1.0]
            .into_iter()
            .find(|s| xy.max_abs_diff(&iz.scale_real(*s)) <= 1e-9)
    }

    /// Operators rendered as signed Pauli words where possible.
    pub fn words(&self) -> [Option<String>; 3] {
        self.operators().map(|m| signed_pauli_word(m, 1e-12))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FrameEntry {
    Word(String),
    Matrix(ComplexMatrix),
}

impl FrameEntry {
    fn into_matrix(self) -> Result<ComplexMatrix> {
        match self {
            FrameEntry::Word(w) => parse_signed_word(&w),
            FrameEntry::Matrix(m) => Ok(m),
        }
    }

    fn from_matrix(m: ComplexMatrix) -> Self {
        match signed_pauli_word(&m, 0.0) {
            Some(w) if parse_signed_word(&w).map(|p| p == m).unwrap_or(false) => FrameEntry::Word(w),
            _ => FrameEntry::Matrix(m),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    x_l: FrameEntry,
    y_l: FrameEntry,
    z_l: FrameEntry,
}

impl TryFrom<FrameRepr> for LogicalFrame {
    type Error = Error;

    fn try_from(r: FrameRepr) -> Result<Self> {
        LogicalFrame::new(r.x_l.into_matrix()?, r.y_l.into_matrix()?, r.z_l.into_matrix()?)
    }
}

impl From<LogicalFrame> for FrameRepr {
    fn from(f: LogicalFrame) -> Self {
        FrameRepr {
            x_l: FrameEntry::from_matrix(f.x_l),
            y_l: FrameEntry::from_matrix(f.y_l),
            z_l: FrameEntry::from_matrix(f.z_l),
        }
    }
}

/// `¼(II + αXX + βYI + γZX)`.
pub fn logical_bloch_state(alpha: f64, beta: f64, gamma: f64) -> Result<ComplexMatrix> {
    let r2 = alpha * alpha + beta * beta + gamma * gamma;
    if !r2.is_finite() || r2 > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "Bloch vector ({alpha}, {beta}, {gamma}) lies outside the unit ball"
        )));
    }
    let w = |s: &str| pauli_word(s).expect("valid word");
    let sum = &(&(&w("II") + &w("XX").scale_real(alpha)) + &w("YI").scale_real(beta)) + &w("ZX").scale_real(gamma);
    Ok(sum.scale_real(0.25))
}

/// Single-qubit density operator `½(I + αX + βY + γZ)`.
pub fn qubit_state(alpha: f64, beta: f64, gamma: f64) -> Result<ComplexMatrix> {
    let r2 = alpha * alpha + beta * beta + gamma * gamma;
    if !r2.is_finite() || r2 > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "Bloch vector ({alpha}, {beta}, {gamma}) lies outside the unit ball"
        )));
    }
    let w = |s: &str| pauli_word(s).expect("valid word");
    let sum = &(&(&w("I") + &w("X").scale_real(alpha)) + &w("Y").scale_real(beta)) + &w("Z").scale_real(gamma);
    Ok(sum.scale_real(0.5))
}

/// Single-qubit rotation with `R X R† = Y`, `R Y R† = Z`, `R Z R† = X`.
///
/// Composing the resolved encoder with `I ⊗ R` turns its images
/// `IX ↦ ZX, IY ↦ XX, IZ ↦ YI` into `IX ↦ XX, IY ↦ YI, IZ ↦ ZX`, so encoded
/// Bloch coordinates line up with the logical frame.
pub fn bloch_alignment() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::new(
        2,
        2,
        vec![C64::new(s, 0.0), C64::new(0.0, -s), C64::new(s, 0.0), C64::new(0.0, s)],
    )
    .expect("2x2")
}

/// The two-qubit private subsystem code for full dephasing.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitCode {
    pub code: SubsystemCode,
    pub frame: LogicalFrame,
    /// Fixed state on `A`: `I/2`.
    pub sigma_a: ComplexMatrix,
    pub encoder: EncoderResolution,
}

/// `A ⊗ B` of two qubits embedded by the resolved encoder followed by the
/// Bloch alignment on `B`, with logical frame `XX, YI, ZX`.
pub fn paper_subsystem_code() -> TwoQubitCode {
    let encoder = resolve_encoder();
    let embedding = &encoder.circuit.unitary * &ComplexMatrix::identity(2).kron(&bloch_alignment());
    let code = SubsystemCode::new(2, 2, embedding).expect("encoder is unitary");
    // images are exact Pauli words up to rounding; snap them so the frame is exact
    let frame_op = |w: &str| {
        let image = code.embedding().conjugate(&pauli_word(w).expect("valid word"));
        match signed_pauli_word(&image, 1e-12) {
            Some(word) => parse_signed_word(&word).expect("recognized word"),
            None => image,
        }
    };
    let frame =
        LogicalFrame::new(frame_op("IX"), frame_op("IY"), frame_op("IZ")).expect("conjugated Paulis form a frame");
    TwoQubitCode {
        code,
        frame,
        sigma_a: ComplexMatrix::identity(2).scale_real(0.5),
        encoder,
    }
}

/// `n`-qubit private code for `full_dephasing(n)`: the two-qubit code on
/// qubits 1 and 2, with qubits `3..=n` folded into `A` and held maximally mixed.
///
/// Returns the code (`dim_a = 2^{n−1}`, `dim_b = 2`) and `σ_A = I/2^{n−1}`.
pub fn n_qubit_private_code(n: usize) -> Result<(SubsystemCode, ComplexMatrix)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n_qubit_private_code needs n >= 2, got {n}")));
    }
    let base = paper_subsystem_code().code;
    let rest = 1usize << (n - 2);
    let dim_a = 2 * rest;
    // |a1, a_rest, b⟩ ↦ |a1, b, a_rest⟩, then the two-qubit embedding on the first pair
    let perm = ComplexMatrix::from_fn(4 * rest, 4 * rest, |r, c| {
        let (a1, a_rest, b) = (c / (2 * rest), (c / 2) % rest, c % 2);
        if r == (a1 * 2 + b) * rest + a_rest {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let embedding = &base.embedding().kron(&ComplexMatrix::identity(rest)) * &perm;
    let code = SubsystemCode::new(dim_a, 2, embedding)?;
    Ok((code, ComplexMatrix::identity(dim_a).scale_real(1.0 / dim_a as f64)))
}
