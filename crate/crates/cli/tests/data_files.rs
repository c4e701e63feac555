//! The sample inputs under `data/` must describe exactly what the library builds.
//! Files produced by the library are rewritten with `PRIVMAP_BLESS=1`.

use std::path::PathBuf;

use privmap::channels::{depolarizing, full_dephasing, identity, pauli_mixture, unitary};
use privmap::codes::{n_qubit_private_code, paper_subsystem_code};
use privmap::tensor::pauli_word;
use privmap::{Channel, ComplexMatrix, SubsystemCode, Tolerance};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn bless() -> bool {
    std::env::var_os("PRIVMAP_BLESS").is_some()
}

fn channel(name: &str) -> Channel {
    Channel::from_json(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn code(name: &str) -> SubsystemCode {
    SubsystemCode::from_json(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn generated_code(name: &str, expected: &SubsystemCode) {
    if bless() {
        std::fs::write(data(name), expected.to_json() + "\n").unwrap();
    }
    assert_eq!(&code(name), expected, "{name} is stale; rerun with PRIVMAP_BLESS=1");
}

#[test]
fn generated_files_match_library() {
    generated_code("two_qubit_code.json", &paper_subsystem_code().code);
    generated_code("nqubit3_code.json", &n_qubit_private_code(3).unwrap().0);

    let depol = depolarizing(4).unwrap();
    if bless() {
        std::fs::write(data("depolarizing4.json"), depol.to_json() + "\n").unwrap();
    }
    assert_eq!(channel("depolarizing4.json"), depol);
}

#[test]
fn handwritten_files_match_library() {
    let tol = Tolerance::default();
    let eq = |a: &Channel, b: &Channel| a.equals(b, tol).unwrap();
    assert!(eq(&channel("dephasing2.json"), &full_dephasing(2).unwrap()));
    assert!(eq(&channel("dephasing3.json"), &full_dephasing(3).unwrap()));
    assert!(eq(&channel("identity2.json"), &identity(2)));
    let h = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap().scale_real(std::f64::consts::FRAC_1_SQRT_2);
    assert!(eq(&channel("hadamard.json"), &unitary(&h).unwrap()));
    assert!(eq(
        &channel("bitflip3.json"),
        &pauli_mixture(&["III", "XII", "IXI", "IIX"], &[0.7, 0.1, 0.1, 0.1]).unwrap()
    ));

    let zz = code("subspace_00_11.json");
    assert!(zz.is_subspace());
    let expected = &pauli_word("II").unwrap().scale_real(0.5) + &pauli_word("ZZ").unwrap().scale_real(0.5);
    assert!(zz.projector().max_abs_diff(&expected) < 1e-15);
    let rep = code("repetition3.json");
    assert_eq!((rep.dim_a(), rep.dim_b(), rep.dim_s()), (1, 2, 8));

    let sigma: ComplexMatrix = serde_json::from_str(&std::fs::read_to_string(data("mixed_qubit.json")).unwrap()).unwrap();
    assert_eq!(sigma, ComplexMatrix::identity(2).scale_real(0.5));
    assert!(Channel::from_json(&std::fs::read_to_string(data("malformed.json")).unwrap()).is_err());
}
