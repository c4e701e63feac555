//! The two-qubit encoding circuit: two CNOTs and one `T` gate.
//!
//! The gate order and CNOT orientations are fixed by enumeration: every
//! placement of `T` relative to the two CNOTs, every orientation of each CNOT
//! and both target qubits for `T` are tried, and the first circuit whose
//! conjugation sends `{IX, IY, IZ}` onto `{±XX, ±YI, ±ZX}` is kept.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tensor::{pauli_word, signed_pauli_word, ComplexMatrix, C64};

/// Target span of the encoded `I ⊗ C^{2×2}` algebra, besides `II`.
pub const LOGICAL_IMAGE_WORDS: [&str; 3] = ["XX", "YI", "ZX"];
/// Generators of the `I ⊗ C^{2×2}` algebra, in the order images are reported.
pub const GAUGE_WORDS: [&str; 3] = ["IX", "IY", "IZ"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    Cnot { control: usize, target: usize },
    T { qubit: usize },
}

impl Gate {
    /// 4×4 matrix on two qubits (qubit 1 most significant).
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Gate::Cnot { control, target } => {
                debug_assert!(control != target && control <= 2 && target <= 2);
                ComplexMatrix::from_fn(4, 4, |r, c| {
                    let bits = [c >> 1, c & 1];
                    let mut out = bits;
                    if bits[control - 1] == 1 {
                        out[target - 1] ^= 1;
                    }
                    let image = (out[0] << 1) | out[1];
                    if r == image {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
            }
            Gate::T { qubit } => {
                let t = t_gate();
                let id = ComplexMatrix::identity(2);
                if qubit == 1 {
                    t.kron(&id)
                } else {
                    id.kron(&t)
                }
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
            Gate::T { qubit } => write!(f, "T({qubit})"),
        }
    }
}

/// `T = (|0⟩(⟨0|+⟨1|) + i|1⟩(⟨0|−⟨1|)) / √2`.
pub fn t_gate() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::new(
        2,
        2,
        vec![C64::new(s, 0.0), C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, -s)],
    )
    .expect("2x2")
}

/// Conjugation image of one gauge generator, e.g. `IX ↦ ZX`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliImage {
    pub from: String,
    /// Signed Pauli word, or `None` if the image is not a single word.
    pub to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncoderCircuit {
    /// Gates in time order (first applied first).
    pub gates: Vec<Gate>,
    pub unitary: ComplexMatrix,
    pub images: Vec<PauliImage>,
}

impl EncoderCircuit {
    pub fn from_gates(gates: Vec<Gate>) -> Self {
        let mut unitary = ComplexMatrix::identity(4);
        for g in &gates {
            unitary = &g.matrix() * &unitary;
        }
        let images = GAUGE_WORDS
            .iter()
            .map(|w| {
                let image = unitary.conjugate(&pauli_word(w).expect("valid word"));
                PauliImage {
                    from: (*w).to_string(),
                    to: signed_pauli_word(&image, 1e-12),
                }
            })
            .collect();
        Self { gates, unitary, images }
    }

    /// True when the images are `±XX, ±YI, ±ZX` in some assignment.
    pub fn spans_logical_algebra(&self) -> bool {
        let mut words: Vec<&str> = Vec::new();
        for img in &self.images {
            match &img.to {
                Some(w) => words.push(w.trim_start_matches('-')),
                None => return false,
            }
        }
        words.sort_unstable();
        words == LOGICAL_IMAGE_WORDS
    }
}

impl fmt::Display for EncoderCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gates: Vec<String> = self.gates.iter().map(Gate::to_string).collect();
        write!(f, "{}", gates.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncoderResolution {
    pub circuit: EncoderCircuit,
    /// Number of candidate circuits tried before (and including) the accepted one.
    pub examined: usize,
    /// Total number of accepting circuits among all candidates.
    pub accepting: usize,
    pub candidates: usize,
}

/// All 24 candidate circuits, `T`-last placements first.
pub fn candidate_circuits() -> Vec<Vec<Gate>> {
    const CNOT12: Gate = Gate::Cnot { control: 1, target: 2 };
    const CNOT21: Gate = Gate::Cnot { control: 2, target: 1 };
    let mut out = Vec::with_capacity(24);
    for t_pos in [2usize, 1, 0] {
        for (a, b) in [(CNOT12, CNOT12), (CNOT12, CNOT21), (CNOT21, CNOT12), (CNOT21, CNOT21)] {
            for qubit in [1, 2] {
                let mut gates = vec![a, b];
                gates.insert(t_pos, Gate::T { qubit });
                out.push(gates);
            }
        }
    }
    out
}

pub fn resolve_encoder() -> EncoderResolution {
    let candidates: Vec<EncoderCircuit> = candidate_circuits().into_iter().map(EncoderCircuit::from_gates).collect();
    let accepting = candidates.iter().filter(|c| c.spans_logical_algebra()).count();
    let position = candidates
        .iter()
        .position(EncoderCircuit::spans_logical_algebra)
        .expect("at least one candidate circuit spans the logical algebra");
    let total = candidates.len();
    EncoderResolution {
        circuit: candidates.into_iter().nth(position).expect("position is in range"),
        examined: position + 1,
        accepting,
        candidates: total,
    }
}

/// Unitary of the resolved encoding circuit.
pub fn two_qubit_encoder() -> ComplexMatrix {
    resolve_encoder().circuit.unitary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Tolerance;

    #[test]
    fn gate_matrices() {
        let cnot12 = Gate::Cnot { control: 1, target: 2 }.matrix();
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.],
        )
        .unwrap();
        assert_eq!(cnot12, expected);
        let cnot21 = Gate::Cnot { control: 2, target: 1 }.matrix();
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[1., 0., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 1., 0., 0.],
        )
        .unwrap();
        assert_eq!(cnot21, expected);
        assert!(t_gate().is_isometry(Tolerance::default()).unitary);
    }

    #[test]
    fn resolved_circuit_and_images() {
        let res = resolve_encoder();
        assert_eq!(
            res.circuit.gates,
            vec![
                Gate::Cnot { control: 1, target: 2 },
                Gate::Cnot { control: 2, target: 1 },
                Gate::T { qubit: 1 }
            ]
        );
        let images: Vec<_> = res.circuit.images.iter().map(|i| i.to.clone().unwrap()).collect();
        assert_eq!(images, vec!["ZX", "XX", "YI"]);
        assert_eq!(res.candidates, 24);
        assert!(res.accepting >= 1);
    }

    #[test]
    fn every_accepting_candidate_maps_into_signed_frame() {
        for gates in candidate_circuits() {
            let c = EncoderCircuit::from_gates(gates);
            // every candidate is a Clifford-like circuit here, so images are single words
            assert!(c.images.iter().all(|i| i.to.is_some()), "{c}");
            if c.spans_logical_algebra() {
                let mut set: Vec<_> = c.images.iter().map(|i| i.to.clone().unwrap().replace('-', "")).collect();
                set.sort();
                assert_eq!(set, vec!["XX", "YI", "ZX"]);
            }
        }
    }

    #[test]
    fn encoder_is_unitary_and_mixes_to_identity() {
        let u = two_qubit_encoder();
        let check = u.is_isometry(Tolerance::uniform(1e-12).unwrap());
        assert!(check.unitary, "{check:?}");
        let out = u.conjugate(&ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(2)).scale_real(0.25));
        assert!(out.max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);
    }
}
