//! Dense complex linear algebra: Kronecker products, partial traces,
//! Hermitian eigendecomposition, Pauli words and isometry tests.

pub mod eig;
pub mod matrix;
pub mod pauli;
pub mod tolerance;

pub use eig::{eig_hermitian, HermitianEigen};
pub use matrix::{is_isometry, kron_all, partial_trace, tensor_product, ComplexMatrix, IsometryCheck, C64};
pub use pauli::{
    gell_mann_basis, hermitian_operator_basis, matrix_units, parse_signed_word, pauli_decompose, pauli_word,
    signed_pauli_word, Pauli,
};
pub use tolerance::{Tolerance, DEFAULT_TOLERANCE};
