use std::f64::consts::FRAC_1_SQRT_2;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::sampling::{haar_isometry, haar_unitary, random_channel, random_density, random_pure_state};
use crate::tensor::{eig_hermitian, pauli_decompose, pauli_word};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn p(word: &str) -> ComplexMatrix {
    pauli_word(word).unwrap()
}

fn lambda1() -> Channel {
    phase_damping(1, 1).unwrap()
}

fn plus_state() -> ComplexMatrix {
    let v = ComplexMatrix::from_real(2, 1, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
    ComplexMatrix::outer(&v, &v)
}

fn bell_state() -> ComplexMatrix {
    let v = ComplexMatrix::from_real(4, 1, &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap();
    ComplexMatrix::outer(&v, &v)
}

fn mixed(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d).scale_real(1.0 / d as f64)
}

// apply

#[test]
fn depolarizing_maps_every_state_to_maximally_mixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let phi = depolarizing(4).unwrap();
    for _ in 0..10 {
        let rho = random_density(&mut rng, 4, 2);
        assert!(phi.apply(&rho).unwrap().max_abs_diff(&mixed(4)) < 1e-14);
    }
}

#[test]
fn single_qubit_dephasing_kills_coherence_of_plus() {
    let out = lambda1().apply(&plus_state()).unwrap();
    assert!(out.max_abs_diff(&mixed(2)) < 1e-15);
}

#[test]
fn composed_dephasing_on_encoded_bloch_states() {
    let lambda = full_dephasing(2).unwrap();
    for (a, b, g) in [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.3, -0.5, 0.6), (0.0, 0.0, -1.0)] {
        let rho = (&(&(&p("II") + &p("XX").scale_real(a)) + &p("YI").scale_real(b))
            + &p("ZX").scale_real(g))
            .scale_real(0.25);
        assert!(lambda.apply(&rho).unwrap().max_abs_diff(&mixed(4)) < 1e-15);
    }
}

#[test]
fn apply_rejects_wrong_dimension() {
    assert!(lambda1().apply(&ComplexMatrix::identity(4)).is_err());
}

// compose

#[test]
fn compose_with_identity_is_noop() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = random_channel(&mut rng, 3, 3, 2);
    assert!(identity(3).compose(&phi).unwrap().equals(&phi, tol()).unwrap());
    assert!(phi.compose(&identity(3)).unwrap().equals(&phi, tol()).unwrap());
}

#[test]
fn two_qubit_dephasing_kraus_are_half_z_words() {
    let lambda = phase_damping(2, 2).unwrap().compose(&phase_damping(2, 1).unwrap()).unwrap();
    assert_eq!(lambda.num_kraus(), 4);
    let expected: Vec<ComplexMatrix> = ["II", "IZ", "ZI", "ZZ"].iter().map(|w| p(w).scale_real(0.5)).collect();
    for k in lambda.kraus() {
        assert!(expected.iter().any(|e| e.max_abs_diff(k) < 1e-15), "{k:?}");
    }
    for e in &expected {
        assert!(lambda.kraus().iter().any(|k| e.max_abs_diff(k) < 1e-15));
    }
}

#[test]
fn dephasing_is_idempotent() {
    let twice = lambda1().compose(&lambda1()).unwrap();
    assert!(twice.equals(&lambda1(), tol()).unwrap());
}

#[test]
fn compose_rejects_mismatch() {
    assert!(lambda1().compose(&identity(3)).is_err());
}

// tensor

#[test]
fn identity_tensor_identity() {
    assert!(identity(2).tensor(&identity(3)).equals(&identity(6), tol()).unwrap());
}

#[test]
fn dephasing_tensor_power_equals_composition() {
    let tensored = lambda1().tensor(&lambda1());
    let composed = full_dephasing(2).unwrap();
    assert!(tensored.equals(&composed, tol()).unwrap());
}

#[test]
fn depolarizing_first_half_of_bell_pair() {
    let phi = depolarizing(2).unwrap().tensor(&identity(2));
    let out = phi.apply(&bell_state()).unwrap();
    // (I/2) ⊗ tr_1(Bell) = (I/2) ⊗ (I/2), written out entrywise
    let expected = ComplexMatrix::from_real(
        4,
        4,
        &[
            0.25, 0.0, 0.0, 0.0, //
            0.0, 0.25, 0.0, 0.0, //
            0.0, 0.0, 0.25, 0.0, //
            0.0, 0.0, 0.0, 0.25,
        ],
    )
    .unwrap();
    assert!(out.max_abs_diff(&expected) < 1e-15);
}

// choi

#[test]
fn choi_of_identity_is_unnormalized_bell_projector() {
    let expected = ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 1.0,
        ],
    )
    .unwrap();
    assert_eq!(identity(2).choi(), expected);
}

#[test]
fn choi_of_single_qubit_dephasing() {
    // Λ₁(|0⟩⟨1|) = 0, so only the |00⟩⟨00| and |11⟩⟨11| blocks survive.
    let choi = lambda1().choi();
    let expected = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 1.0]);
    assert!(choi.max_abs_diff(&expected) < 1e-15);
    let eig = eig_hermitian(&choi, tol()).unwrap();
    let values: Vec<f64> = eig.values.iter().map(|w| (w * 1e12).round() / 1e12).collect();
    assert_eq!(values, vec![1.0, 1.0, 0.0, 0.0]);
    assert_eq!(lambda1().kraus_rank(tol()), 2);
}

#[test]
fn choi_of_depolarizing_qubit() {
    let choi = depolarizing(2).unwrap().choi();
    assert!(choi.max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.5)) < 1e-15);
}

#[test]
fn choi_output_marginal_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let phi = random_channel(&mut rng, 3, 2, 4);
    let marginal = phi.choi().partial_trace(&[3, 2], &[0]).unwrap();
    assert!(marginal.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-13);
}

// channels_equal

#[test]
fn kraus_gauge_freedom() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let phi = random_channel(&mut rng, 3, 3, 3);
    let u = haar_unitary(&mut rng, 3);
    assert!(phi.recombine(&u).unwrap().equals(&phi, tol()).unwrap());
    // isometric enlargement of the Kraus set
    let w = haar_isometry(&mut rng, 5, 3);
    let enlarged = phi.recombine(&w).unwrap();
    assert_eq!(enlarged.num_kraus(), 5);
    assert!(enlarged.equals(&phi, tol()).unwrap());
}

#[test]
fn dephasing_differs_from_identity() {
    assert!(!lambda1().equals(&identity(2), tol()).unwrap());
}

#[test]
fn channels_equal_needs_matching_dimensions() {
    assert!(lambda1().equals(&identity(3), tol()).is_err());
}

// dual

#[test]
fn dual_of_unitary_channel() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = haar_unitary(&mut rng, 3);
    let d = unitary(&u).unwrap().dual();
    assert_eq!(d.kraus().len(), 1);
    assert!(d.kraus()[0].max_abs_diff(&u.adjoint()) < 1e-15);
}

#[test]
fn dephasing_is_self_dual() {
    let d = lambda1().dual();
    for (a, b) in d.kraus().iter().zip(lambda1().kraus()) {
        assert!(a.max_abs_diff(b) < 1e-15);
    }
    assert!(d.unitality_defect() < 1e-15);
}

#[test]
fn duality_pairing_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let phi = random_channel(&mut rng, 3, 2, 3);
        let rho = random_density(&mut rng, 3, 3);
        let m = crate::sampling::random_hermitian(&mut rng, 2);
        let lhs = (&phi.apply(&rho).unwrap() * &m).trace();
        let rhs = (&rho * &phi.dual().apply(&m).unwrap()).trace();
        assert!((lhs - rhs).norm() < 1e-12);
    }
}

// stinespring

#[test]
fn unitary_dilation_is_the_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = haar_unitary(&mut rng, 4);
    let dil = unitary(&u).unwrap().stinespring();
    assert_eq!(dil.env_dim, 1);
    assert_eq!(dil.isometry, u);
}

#[test]
fn dephasing_dilation_reconstructs_channel() {
    let dil = lambda1().stinespring();
    assert_eq!(dil.env_dim, 2);
    assert!(dil.isometry.is_isometry(tol()).isometry);
    // rows (s, k): V_0 = I/√2, V_1 = Z/√2
    let s = FRAC_1_SQRT_2;
    let expected = ComplexMatrix::from_real(4, 2, &[s, 0.0, s, 0.0, 0.0, s, 0.0, -s]).unwrap();
    assert!(dil.isometry.max_abs_diff(&expected) < 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let rho = random_density(&mut rng, 2, 2);
        let joint = dil.joint_output(&rho);
        let reduced = joint.partial_trace(&[2, 2], &[0]).unwrap();
        assert!(reduced.max_abs_diff(&lambda1().apply(&rho).unwrap()) < 1e-15);
    }
    assert!(dil.channel().equals(&lambda1(), tol()).unwrap());
}

#[test]
fn two_qubit_dephasing_environment_has_four_levels() {
    let dil = full_dephasing(2).unwrap().minimal_kraus(tol()).stinespring();
    assert_eq!(dil.env_dim, 4);
}

// complementary

#[test]
fn complement_of_unitary_forgets_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let u = haar_unitary(&mut rng, 3);
    let comp = unitary(&u).unwrap().complementary();
    assert_eq!(comp.dim_out(), 1);
    let rho = random_density(&mut rng, 3, 2);
    let out = comp.apply(&rho).unwrap();
    assert!((out[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn complement_of_two_qubit_dephasing_is_rank_one_family() {
    let comp = full_dephasing(2).unwrap().complementary();
    let minimal = comp.minimal_kraus(tol());
    assert_eq!(minimal.num_kraus(), 4);
    // the defining Kraus set itself is four rank-one operators
    for k in comp.kraus() {
        let eig = eig_hermitian(&(&k.adjoint() * k), tol()).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-12);
        assert!(eig.values[1..].iter().all(|w| w.abs() < 1e-12));
    }
}

#[test]
fn complement_of_depolarizing_keeps_pure_inputs_mixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let comp = depolarizing(2).unwrap().complementary();
    for _ in 0..5 {
        let out = comp.apply(&random_pure_state(&mut rng, 2)).unwrap();
        let eig = eig_hermitian(&out, tol()).unwrap();
        let rank = eig.values.iter().filter(|&&w| w > 1e-9).count();
        assert!(rank > 1, "rank {rank}");
    }
}

// minimal_kraus

#[test]
fn duplicated_identity_collapses() {
    let ch = Channel::new(vec![
        ComplexMatrix::identity(2).scale_real(FRAC_1_SQRT_2),
        ComplexMatrix::identity(2).scale_real(FRAC_1_SQRT_2),
    ])
    .unwrap();
    let m = ch.minimal_kraus(tol());
    assert_eq!(m.num_kraus(), 1);
    let k = &m.kraus()[0];
    // canonical phase makes the first significant entry positive
    assert!(k.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
}

#[test]
fn composed_dephasing_is_already_minimal() {
    let lambda = full_dephasing(2).unwrap();
    assert_eq!(lambda.num_kraus(), 4);
    let m = lambda.minimal_kraus(tol());
    assert_eq!(m.num_kraus(), 4);
    assert!(m.equals(&lambda, tol()).unwrap());
}

// constructors

#[test]
fn phase_damping_kraus_operators() {
    let ch = lambda1();
    assert!(ch.kraus()[0].max_abs_diff(&p("I").scale_real(FRAC_1_SQRT_2)) < 1e-15);
    assert!(ch.kraus()[1].max_abs_diff(&p("Z").scale_real(FRAC_1_SQRT_2)) < 1e-15);
    assert!(phase_damping(2, 0).is_err());
    assert!(phase_damping(2, 3).is_err());
}

#[test]
fn phase_damping_second_qubit_of_plus_plus() {
    let pp = plus_state().kron(&plus_state());
    let out = phase_damping(2, 2).unwrap().apply(&pp).unwrap();
    assert!(out.max_abs_diff(&plus_state().kron(&mixed(2))) < 1e-15);
}

#[test]
fn phase_dampings_commute() {
    let (a, b) = (phase_damping(2, 1).unwrap(), phase_damping(2, 2).unwrap());
    let ab = a.compose(&b).unwrap();
    let ba = b.compose(&a).unwrap();
    assert!(ab.equals(&ba, tol()).unwrap());
}

#[test]
fn full_dephasing_output_has_only_z_type_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lambda = full_dephasing(2).unwrap();
    for _ in 0..10 {
        let out = lambda.apply(&random_density(&mut rng, 4, 4)).unwrap();
        let terms = pauli_decompose(&out, 1e-13).unwrap();
        for (w, c) in &terms {
            assert!(["II", "IZ", "ZI", "ZZ"].contains(&w.as_str()), "unexpected term {w}");
            assert!(c.im.abs() < 1e-14);
        }
        let identity_coefficient = terms.iter().find(|(w, _)| w == "II").unwrap().1;
        assert!((identity_coefficient.re - 0.25).abs() < 1e-14);
    }
}

#[test]
fn full_dephasing_fixes_computational_states() {
    let e = ComplexMatrix::ket(4, 0);
    let rho = ComplexMatrix::outer(&e, &e);
    assert!(full_dephasing(2).unwrap().apply(&rho).unwrap().max_abs_diff(&rho) < 1e-15);
}

#[test]
fn full_dephasing_three_qubits_is_tensor_power() {
    let power = lambda1().tensor(&lambda1()).tensor(&lambda1());
    assert!(full_dephasing(3).unwrap().equals(&power, tol()).unwrap());
}

#[test]
fn depolarizing_examples() {
    let e0 = ComplexMatrix::ket(2, 0);
    let out = depolarizing(2).unwrap().apply(&ComplexMatrix::outer(&e0, &e0)).unwrap();
    assert!(out.max_abs_diff(&mixed(2)) < 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let out = depolarizing(4).unwrap().apply(&random_pure_state(&mut rng, 4)).unwrap();
    assert!(out.max_abs_diff(&mixed(4)) < 1e-14);

    for n in [2usize, 3, 4] {
        let choi = depolarizing(n).unwrap().choi();
        let expected = ComplexMatrix::identity(n * n).scale_real(1.0 / n as f64);
        assert!(choi.max_abs_diff(&expected) < 1e-15);
    }
    assert!(depolarizing(1).is_err());
}

#[test]
fn random_unitary_channel_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let u = haar_unitary(&mut rng, 3);
    let single = random_unitary_channel(std::slice::from_ref(&u), &[1.0]).unwrap();
    assert!(single.equals(&unitary(&u).unwrap(), tol()).unwrap());

    let iz = random_unitary_channel(&[p("I"), p("Z")], &[0.5, 0.5]).unwrap();
    assert!(iz.equals(&lambda1(), tol()).unwrap());

    let words = pauli_mixture(&["II", "IZ", "ZI", "ZZ"], &[0.25; 4]).unwrap();
    assert!(words.equals(&full_dephasing(2).unwrap(), tol()).unwrap());
}

#[test]
fn random_unitary_channel_errors() {
    let not_unitary = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
    assert!(matches!(
        random_unitary_channel(&[p("I"), not_unitary], &[0.5, 0.5]),
        Err(Error::NotUnitary { index: 1, .. })
    ));
    assert!(matches!(
        random_unitary_channel(&[p("I"), p("Z")], &[0.7, 0.7]),
        Err(Error::InvalidDistribution(_))
    ));
    assert!(matches!(
        random_unitary_channel(&[p("I"), p("Z")], &[1.5, -0.5]),
        Err(Error::InvalidDistribution(_))
    ));
}

#[test]
fn new_rejects_non_trace_preserving() {
    assert!(matches!(
        Channel::new(vec![ComplexMatrix::identity(2).scale_real(0.9)]),
        Err(Error::NotTracePreserving(_))
    ));
    assert!(Channel::new(vec![]).is_err());
    assert!(Channel::new(vec![ComplexMatrix::identity(2), ComplexMatrix::zeros(3, 3)]).is_err());
}

#[test]
fn json_round_trip_and_shorthand() {
    let lambda = full_dephasing(2).unwrap();
    let back = Channel::from_json(&lambda.to_json()).unwrap();
    assert_eq!(back, lambda);

    let short = r#"{"random_unitary": {"paulis": ["II", "IZ", "ZI", "ZZ"], "probs": [0.25, 0.25, 0.25, 0.25]}}"#;
    let ch = Channel::from_json(short).unwrap();
    assert!(ch.equals(&lambda, tol()).unwrap());

    let wrong_dims = r#"{"dim_in": 3, "dim_out": 2, "kraus": [{"rows": 2, "cols": 2, "re": [1,0,0,1], "im": [0,0,0,0]}]}"#;
    assert!(Channel::from_json(wrong_dims).is_err());
    let not_tp = r#"{"dim_in": 2, "dim_out": 2, "kraus": [{"rows": 2, "cols": 2, "re": [1,0,0,0], "im": [0,0,0,0]}]}"#;
    assert!(Channel::from_json(not_tp).is_err());
}

// properties

fn constructors() -> Vec<Channel> {
    vec![
        identity(3),
        lambda1(),
        phase_damping(3, 2).unwrap(),
        full_dephasing(2).unwrap(),
        full_dephasing(3).unwrap(),
        depolarizing(2).unwrap(),
        depolarizing(4).unwrap(),
        pinching(3),
        pauli_mixture(&["IX", "ZY"], &[0.3, 0.7]).unwrap(),
        full_dephasing(2).unwrap().complementary(),
    ]
}

#[test]
fn constructors_have_psd_choi() {
    for ch in constructors() {
        assert!(ch.choi_min_eigenvalue() >= -1e-9, "{ch:?}");
        assert!(ch.trace_preservation_defect() < 1e-12, "{ch:?}");
    }
}

#[test]
fn full_dephasing_outputs_are_diagonal_up_to_four_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=4 {
        let lambda = full_dephasing(n).unwrap();
        let d = 1 << n;
        for _ in 0..5 {
            let out = lambda.apply(&random_density(&mut rng, d, d)).unwrap();
            for r in 0..d {
                for c in 0..d {
                    if r != c {
                        assert!(out[(r, c)].norm() <= 1e-12);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trace_is_preserved(seed in any::<u64>(), din in 1usize..5, dout in 1usize..5, nk in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nk = nk.max(din.div_ceil(dout));
        let phi = random_channel(&mut rng, din, dout, nk);
        let rho = random_density(&mut rng, din, din);
        let out = phi.apply(&rho).unwrap();
        prop_assert!((out.trace() - rho.trace()).norm() <= 1e-9);
        prop_assert!(out.hermitian_defect() <= 1e-12);
    }

    #[test]
    fn choi_is_positive(seed in any::<u64>(), din in 1usize..5, dout in 1usize..5, nk in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nk = nk.max(din.div_ceil(dout));
        let phi = random_channel(&mut rng, din, dout, nk);
        prop_assert!(phi.choi_min_eigenvalue() >= -1e-9);
    }

    #[test]
    fn complement_entries_match_trace_formula(seed in any::<u64>(), d in 1usize..5, nk in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_channel(&mut rng, d, d, nk);
        let rho = random_density(&mut rng, d, d);
        let comp = phi.complementary().apply(&rho).unwrap();
        let joint = phi.stinespring().joint_output(&rho);
        let traced = joint.partial_trace(&[d, nk], &[1]).unwrap();
        prop_assert!(comp.max_abs_diff(&traced) <= 1e-9);
        for i in 0..nk {
            for j in 0..nk {
                let v = &phi.kraus()[j].adjoint() * &phi.kraus()[i];
                let expected = (&v * &rho).trace();
                prop_assert!((comp[(i, j)] - expected).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn gauge_change_preserves_channel(seed in any::<u64>(), d in 1usize..4, nk in 1usize..4, extra in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_channel(&mut rng, d, d, nk);
        let w = haar_isometry(&mut rng, nk + extra, nk);
        prop_assert!(phi.recombine(&w).unwrap().equals(&phi, Tolerance::default()).unwrap());
    }

    #[test]
    fn minimal_kraus_is_equal_and_minimal(seed in any::<u64>(), d in 1usize..4, nk in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_channel(&mut rng, d, d, nk);
        let doubled = Channel::mixture(&[(0.5, &phi), (0.5, &phi)]).unwrap();
        let m = doubled.minimal_kraus(Tolerance::default());
        prop_assert_eq!(m.num_kraus(), nk.min(d * d));
        prop_assert!(m.equals(&phi, Tolerance::default()).unwrap());
    }
}
