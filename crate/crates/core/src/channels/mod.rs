//! Quantum channels in Kraus form.
//!
//! A [`Channel`] stores Kraus operators `V_i` (each `dim_out × dim_in`) with
//! `Σ V_i†V_i = I`. Channel equality is decided on Choi matrices, using the
//! unnormalized convention `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)` (input factor major).

mod constructors;
mod dilation;

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::tensor::{eig_hermitian, ComplexMatrix, Tolerance, C64};

pub use constructors::{
    depolarizing, full_dephasing, identity, pauli_mixture, phase_damping, pinching,
    random_unitary_channel, unitary,
};
pub use dilation::StinespringDilation;

/// Completely positive trace-preserving map given by Kraus operators.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelRepr", into = "ExplicitChannel")]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl std::fmt::Debug for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Channel")
            .field("dim_in", &self.dim_in)
            .field("dim_out", &self.dim_out)
            .field("num_kraus", &self.kraus.len())
            .finish()
    }
}

impl Channel {
    /// Builds a channel, checking shapes and trace preservation at the default tolerance.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(kraus, Tolerance::default())
    }

    pub fn with_tolerance(kraus: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        let channel = Self::from_kraus_unchecked(kraus)?;
        let defect = channel.trace_preservation_defect();
        if !tol.accepts(defect, 1.0) {
            return Err(Error::NotTracePreserving(defect));
        }
        Ok(channel)
    }

    /// Shape-checked but not trace-checked.
    pub(crate) fn from_kraus_unchecked(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidArgument("a channel needs at least one Kraus operator".into()))?;
        let (dim_out, dim_in) = first.shape();
        for (i, k) in kraus.iter().enumerate().skip(1) {
            if k.shape() != (dim_out, dim_in) {
                return Err(mismatch(
                    "Kraus operator shape",
                    format!("{dim_out}x{dim_in}"),
                    format!("{}x{} (operator {i})", k.rows(), k.cols()),
                ));
            }
        }
        Ok(Self { dim_in, dim_out, kraus })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn num_kraus(&self) -> usize {
        self.kraus.len()
    }

    /// `‖Σ V_i†V_i − I‖_max`.
    pub fn trace_preservation_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            sum += &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// `Σ_i V_i ρ V_i†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (self.dim_in, self.dim_in) {
            return Err(mismatch(
                "channel input",
                format!("{0}x{0}", self.dim_in),
                format!("{}x{}", rho.rows(), rho.cols()),
            ));
        }
        Ok(self.apply_unchecked(rho))
    }

    pub(crate) fn apply_unchecked(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += &k.conjugate(rho);
        }
        out
    }

    /// `self ∘ inner`, i.e. `inner` acts first. Kraus set `{V_i W_j}`.
    pub fn compose(&self, inner: &Channel) -> Result<Channel> {
        if inner.dim_out != self.dim_in {
            return Err(mismatch("compose", self.dim_in, inner.dim_out));
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|v| inner.kraus.iter().map(move |w| v * w))
            .collect();
        Ok(Channel {
            dim_in: inner.dim_in,
            dim_out: self.dim_out,
            kraus,
        })
    }

    /// `self ⊗ other`, Kraus set `{V_i ⊗ W_j}`.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|v| other.kraus.iter().map(move |w| v.kron(w)))
            .collect();
        Channel {
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
            kraus,
        }
    }

    /// Unnormalized Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`.
    pub fn choi(&self) -> ComplexMatrix {
        let d = self.dim_in * self.dim_out;
        let mut choi = ComplexMatrix::zeros(d, d);
        for k in &self.kraus {
            let v = vectorize(k);
            for r in 0..d {
                if v[r] == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    choi[(r, c)] += v[r] * v[c].conj();
                }
            }
        }
        choi
    }

    /// Choi-matrix equality within `tol`.
    pub fn equals(&self, other: &Channel, tol: Tolerance) -> Result<bool> {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return Err(mismatch(
                "channels_equal",
                format!("{}->{}", self.dim_in, self.dim_out),
                format!("{}->{}", other.dim_in, other.dim_out),
            ));
        }
        Ok(self.choi().approx_eq(&other.choi(), tol))
    }

    /// Heisenberg-picture map with Kraus operators `V_i†`.
    pub fn dual(&self) -> DualMap {
        DualMap {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            kraus: self.kraus.iter().map(ComplexMatrix::adjoint).collect(),
        }
    }

    pub fn stinespring(&self) -> StinespringDilation {
        StinespringDilation::of(self)
    }

    /// Complementary channel: trace out the system instead of the environment.
    ///
    /// Output dimension is the number of Kraus operators and
    /// `(Φ^♯(ρ))_{ij} = tr(V_j† V_i ρ)`.
    pub fn complementary(&self) -> Channel {
        self.stinespring().complementary()
    }

    /// Canonical Kraus operators from the nonzero Choi eigenpairs.
    ///
    /// Eigenvalues at or below `tol.absolute` are dropped, so the Kraus count is
    /// the numerical Choi rank. Ordering follows the canonical eigenvector
    /// ordering of [`eig_hermitian`].
    pub fn minimal_kraus(&self, tol: Tolerance) -> Channel {
        let choi = self.choi();
        let eig = eig_hermitian(&choi, Tolerance::uniform(1e-8).expect("valid"))
            .expect("Choi matrices are Hermitian");
        let mut kraus: Vec<ComplexMatrix> = eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > tol.absolute)
            .map(|(k, &w)| unvectorize(&eig.vector(k), self.dim_out, self.dim_in).scale_real(w.sqrt()))
            .collect();
        if kraus.is_empty() {
            kraus.push(ComplexMatrix::zeros(self.dim_out, self.dim_in));
        }
        Channel {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            kraus,
        }
    }

    /// Numerical Choi rank.
    pub fn kraus_rank(&self, tol: Tolerance) -> usize {
        let eig = eig_hermitian(&self.choi(), Tolerance::uniform(1e-8).expect("valid"))
            .expect("Choi matrices are Hermitian");
        eig.values.iter().filter(|&&w| w > tol.absolute).count()
    }

    /// Smallest Choi eigenvalue; non-negative up to rounding for any Kraus-form map.
    pub fn choi_min_eigenvalue(&self) -> f64 {
        let eig = eig_hermitian(&self.choi(), Tolerance::uniform(1e-8).expect("valid"))
            .expect("Choi matrices are Hermitian");
        *eig.values.last().expect("non-empty spectrum")
    }

    /// Convex combination `Σ w_i Φ_i` with Kraus set `{√w_i V}`.
    pub fn mixture(parts: &[(f64, &Channel)]) -> Result<Channel> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidDistribution("empty mixture".into()))?
            .1;
        validate_distribution(&parts.iter().map(|p| p.0).collect::<Vec<_>>())?;
        let mut kraus = Vec::new();
        for (w, ch) in parts {
            if (ch.dim_in, ch.dim_out) != (first.dim_in, first.dim_out) {
                return Err(mismatch(
                    "mixture",
                    format!("{}->{}", first.dim_in, first.dim_out),
                    format!("{}->{}", ch.dim_in, ch.dim_out),
                ));
            }
            if *w > 0.0 {
                kraus.extend(ch.kraus.iter().map(|k| k.scale_real(w.sqrt())));
            }
        }
        Self::from_kraus_unchecked(kraus)
    }

    /// Same channel with Kraus operators recombined as `V'_a = Σ_b u_{ab} V_b`.
    ///
    /// `u` must be an isometry with `num_kraus` columns.
    pub fn recombine(&self, u: &ComplexMatrix) -> Result<Channel> {
        if u.cols() != self.kraus.len() {
            return Err(mismatch("recombine", self.kraus.len(), u.cols()));
        }
        let kraus = (0..u.rows())
            .map(|a| {
                let mut acc = ComplexMatrix::zeros(self.dim_out, self.dim_in);
                for (b, v) in self.kraus.iter().enumerate() {
                    acc += &v.scale(u[(a, b)]);
                }
                acc
            })
            .collect();
        Self::with_tolerance(kraus, Tolerance::uniform(1e-8)?)
    }
}

/// `vec(K)[i·dim_out + s] = K[s, i]`, matching the Choi index order.
pub(crate) fn vectorize(k: &ComplexMatrix) -> Vec<C64> {
    let (dim_out, dim_in) = k.shape();
    let mut v = Vec::with_capacity(dim_in * dim_out);
    for i in 0..dim_in {
        for s in 0..dim_out {
            v.push(k[(s, i)]);
        }
    }
    v
}

fn unvectorize(v: &ComplexMatrix, dim_out: usize, dim_in: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim_out, dim_in, |s, i| v[(i * dim_out + s, 0)])
}

pub(crate) fn validate_distribution(probs: &[f64]) -> Result<()> {
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidDistribution(format!("negative or non-finite entry in {probs:?}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
    }
    Ok(())
}

/// Dual (Heisenberg-picture) map `M ↦ Σ V_i† M V_i`. Unital, not trace preserving in general.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMap {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl DualMap {
    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn apply(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.shape() != (self.dim_in, self.dim_in) {
            return Err(mismatch(
                "dual map input",
                format!("{0}x{0}", self.dim_in),
                format!("{}x{}", m.rows(), m.cols()),
            ));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += &k.conjugate(m);
        }
        Ok(out)
    }

    /// `‖Φ†(I) − I‖_max`.
    pub fn unitality_defect(&self) -> f64 {
        self.apply(&ComplexMatrix::identity(self.dim_in))
            .expect("identity has the input shape")
            .max_abs_diff(&ComplexMatrix::identity(self.dim_out))
    }
}

// Free-function forms of the channel operations.

pub fn apply(phi: &Channel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    phi.apply(rho)
}

/// `phi ∘ psi`.
pub fn compose(phi: &Channel, psi: &Channel) -> Result<Channel> {
    phi.compose(psi)
}

pub fn tensor(phi: &Channel, psi: &Channel) -> Channel {
    phi.tensor(psi)
}

pub fn choi(phi: &Channel) -> ComplexMatrix {
    phi.choi()
}

pub fn channels_equal(phi: &Channel, psi: &Channel, tol: Tolerance) -> Result<bool> {
    phi.equals(psi, tol)
}

pub fn dual(phi: &Channel) -> DualMap {
    phi.dual()
}

pub fn stinespring(phi: &Channel) -> StinespringDilation {
    phi.stinespring()
}

pub fn complementary(phi: &Channel) -> Channel {
    phi.complementary()
}

pub fn minimal_kraus(phi: &Channel, tol: Tolerance) -> Channel {
    phi.minimal_kraus(tol)
}

// Wire formats.

#[derive(Serialize, Deserialize)]
struct ExplicitChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

#[derive(Deserialize)]
struct PauliShorthand {
    paulis: Vec<String>,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChannelRepr {
    Explicit(ExplicitChannel),
    Shorthand { random_unitary: PauliShorthand },
}

impl TryFrom<ChannelRepr> for Channel {
    type Error = Error;

    fn try_from(repr: ChannelRepr) -> Result<Self> {
        match repr {
            ChannelRepr::Explicit(e) => {
                let ch = Channel::new(e.kraus)?;
                if (ch.dim_in, ch.dim_out) != (e.dim_in, e.dim_out) {
                    return Err(mismatch(
                        "channel json dimensions",
                        format!("{}->{}", e.dim_in, e.dim_out),
                        format!("{}->{}", ch.dim_in, ch.dim_out),
                    ));
                }
                Ok(ch)
            }
            ChannelRepr::Shorthand { random_unitary } => {
                let words: Vec<&str> = random_unitary.paulis.iter().map(String::as_str).collect();
                pauli_mixture(&words, &random_unitary.probs)
            }
        }
    }
}

impl From<Channel> for ExplicitChannel {
    fn from(ch: Channel) -> Self {
        ExplicitChannel {
            dim_in: ch.dim_in,
            dim_out: ch.dim_out,
            kraus: ch.kraus,
        }
    }
}

impl Channel {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("channel serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests;
