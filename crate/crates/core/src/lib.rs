//! Verification toolkit for private quantum codes.
//!
//! Channels are carried as Kraus operators ([`channels::Channel`]), codes as
//! isometric embeddings of `A ⊗ B` into the system ([`codes::SubsystemCode`]).
//! The [`privacy`] module decides whether `Φ(σ_A ⊗ σ_B)` is independent of
//! `σ_B` and produces Kraus-level certificates; [`qec`] covers the
//! error-correction side (Knill–Laflamme, complementary channels, measurement
//! structure).
//!
//! Qubit ordering is big-endian throughout: in a Pauli word such as `"ZX"`,
//! the leftmost letter acts on qubit 1, the most significant tensor factor.

pub mod channels;
pub mod codes;
pub mod error;
pub mod privacy;
pub mod qec;
pub mod sampling;
pub mod tensor;

pub use channels::{Channel, DualMap, StinespringDilation};
pub use codes::{LogicalFrame, SubsystemCode};

pub use error::{Error, Result};
pub use privacy::{DefectReport, PrivacyCertificate};
pub use qec::{ComplementarityReport, CorrectabilityWitness};


pub use tensor::{ComplexMatrix, Tolerance, C64};
