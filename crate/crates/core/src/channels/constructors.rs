use std::f64::consts::FRAC_1_SQRT_2;

use super::{validate_distribution, Channel};
use crate::error::{Error, Result};
use crate::tensor::{pauli_word, ComplexMatrix, Tolerance};

pub fn identity(dim: usize) -> Channel {
    Channel::from_kraus_unchecked(vec![ComplexMatrix::identity(dim)]).expect("one operator")
}

/// Unitary conjugation `ρ ↦ UρU†`.
pub fn unitary(u: &ComplexMatrix) -> Result<Channel> {
    check_unitary(u, 0)?;
    Channel::from_kraus_unchecked(vec![u.clone()])
}

fn check_unitary(u: &ComplexMatrix, index: usize) -> Result<()> {
    let check = u.is_isometry(Tolerance::default());
    if !check.unitary {
        return Err(Error::NotUnitary {
            index,
            deviation: check.isometry_residual.max(check.unitary_residual),
        });
    }
    Ok(())
}

/// `Λ_i(ρ) = ½(ρ + Z_i ρ Z_i)` on `n` qubits; `i` is 1-based, qubit 1 most significant.
pub fn phase_damping(n: usize, i: usize) -> Result<Channel> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let word: String = (1..=n).map(|q| if q == i { 'Z' } else { 'I' }).collect();
    let z_i = pauli_word(&word)?;
    let kraus = vec![
        ComplexMatrix::identity(1 << n).scale_real(FRAC_1_SQRT_2),
        z_i.scale_real(FRAC_1_SQRT_2),
    ];
    Channel::from_kraus_unchecked(kraus)
}

/// `Λ = Λ_n ∘ ⋯ ∘ Λ_1`: dephases every qubit, so every output is diagonal.
pub fn full_dephasing(n: usize) -> Result<Channel> {
    if n == 0 {
        return Err(Error::InvalidArgument("full_dephasing needs at least one qubit".into()));
    }
    let mut channel = phase_damping(n, 1)?;
    for i in 2..=n {
        channel = phase_damping(n, i)?.compose(&channel)?;
    }
    Ok(channel)
}

/// Completely depolarizing channel `ρ ↦ tr(ρ) I/N` with Kraus set `{|i⟩⟨j|/√N}`.
pub fn depolarizing(n_dim: usize) -> Result<Channel> {
    if n_dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "depolarizing needs dimension >= 2 (got {n_dim})"
        )));
    }
    let scale = 1.0 / (n_dim as f64).sqrt();
    let kraus = (0..n_dim * n_dim)
        .map(|k| {
            let (i, j) = (k / n_dim, k % n_dim);
            ComplexMatrix::outer(&ComplexMatrix::ket(n_dim, i), &ComplexMatrix::ket(n_dim, j))
                .scale_real(scale)
        })
        .collect();
    Channel::from_kraus_unchecked(kraus)
}

/// `ρ ↦ Σ p_i U_i ρ U_i†`.
pub fn random_unitary_channel(unitaries: &[ComplexMatrix], probs: &[f64]) -> Result<Channel> {
    if unitaries.len() != probs.len() {
        return Err(Error::InvalidDistribution(format!(
            "{} unitaries but {} probabilities",
            unitaries.len(),
            probs.len()
        )));
    }
    if unitaries.is_empty() {
        return Err(Error::InvalidDistribution("empty ensemble".into()));
    }
    validate_distribution(probs)?;
    for (i, u) in unitaries.iter().enumerate() {
        check_unitary(u, i)?;
    }
    let kraus = unitaries
        .iter()
        .zip(probs)
        .map(|(u, p)| u.scale_real(p.sqrt()))
        .collect();
    let channel = Channel::from_kraus_unchecked(kraus)?;
    if channel.dim_in != channel.dim_out {
        return Err(Error::InvalidArgument("unitaries must be square".into()));
    }
    Ok(channel)
}

/// Random unitary channel over Pauli words, e.g. `{II, IZ, ZI, ZZ}` uniform gives `Λ` on two qubits.
pub fn pauli_mixture(words: &[&str], probs: &[f64]) -> Result<Channel> {
    let unitaries = words.iter().map(|w| pauli_word(w)).collect::<Result<Vec<_>>>()?;
    if let Some(first) = unitaries.first() {
        if unitaries.iter().any(|u| u.shape() != first.shape()) {
            return Err(Error::InvalidArgument("Pauli words must have equal length".into()));
        }
    }
    random_unitary_channel(&unitaries, probs)
}

/// Projective measurement in the computational basis, `ρ ↦ Σ |i⟩⟨i|ρ|i⟩⟨i|`.
pub fn pinching(dim: usize) -> Channel {
    let kraus = (0..dim)
        .map(|i| {
            let e = ComplexMatrix::ket(dim, i);
            ComplexMatrix::outer(&e, &e)
        })
        .collect();
    Channel::from_kraus_unchecked(kraus).expect("dim >= 1")
}
