use serde::{Deserialize, Serialize};

use super::Channel;
use crate::tensor::ComplexMatrix;

/// Isometric dilation `W : C^{dim_in} → C^{dim_out} ⊗ C^{env_dim}` of a channel.
///
/// The environment is the minor tensor factor: `W[s·env_dim + k, c] = V_k[s, c]`.
/// The fixed environment input state `|env_state_index⟩` has been absorbed
/// into `W`, so `Φ(ρ) = tr_E(WρW†)` and `Φ^♯(ρ) = tr_S(WρW†)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StinespringDilation {
    pub env_dim: usize,
    pub dim_out: usize,
    pub isometry: ComplexMatrix,
    pub env_state_index: usize,
}

impl StinespringDilation {
    pub(super) fn of(phi: &Channel) -> Self {
        let env_dim = phi.num_kraus();
        let isometry = ComplexMatrix::from_fn(phi.dim_out() * env_dim, phi.dim_in(), |r, c| {
            phi.kraus()[r % env_dim][(r / env_dim, c)]
        });
        Self {
            env_dim,
            dim_out: phi.dim_out(),
            isometry,
            env_state_index: 0,
        }
    }

    /// `W ρ W†` on system ⊗ environment.
    pub fn joint_output(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.isometry.conjugate(rho)
    }

    /// Channel recovered by tracing out the environment.
    pub fn channel(&self) -> Channel {
        let kraus = (0..self.env_dim)
            .map(|k| self.block(|s| s * self.env_dim + k, self.dim_out))
            .collect();
        Channel::from_kraus_unchecked(kraus).expect("consistent shapes")
    }

    /// Complementary channel, tracing out the system. Kraus operators
    /// `K_s = (⟨s| ⊗ I_E) W`, one per system basis state.
    pub fn complementary(&self) -> Channel {
        let kraus = (0..self.dim_out)
            .map(|s| self.block(|k| s * self.env_dim + k, self.env_dim))
            .collect();
        Channel::from_kraus_unchecked(kraus).expect("consistent shapes")
    }

    fn block(&self, row: impl Fn(usize) -> usize, rows: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, self.isometry.cols(), |r, c| self.isometry[(row(r), c)])
    }
}
