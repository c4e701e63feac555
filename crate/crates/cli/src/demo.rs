//! Worked examples rebuilt from library builders. Each demo records the
//! expected outcome next to the observed one; the demo passes when all match.

use privmap::channels::{depolarizing, full_dephasing, minimal_kraus};
use privmap::codes::{logical_bloch_state, n_qubit_private_code, paper_subsystem_code};
use privmap::privacy::{certify_theorem2, is_private, privacy_defect, search_private_subspace};
use privmap::qec::{complementarity_pair_report, measurement_structure};
use privmap::sampling::{bloch_ball_point, haar_isometry};
use privmap::{Channel, ComplexMatrix, SubsystemCode, Tolerance};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{num, Check, DemoReport, SampleSummary};
use crate::{CliError, DemoName};

const DEFAULT_SEED: u64 = 7;
const DEFAULT_SEARCH_TRIALS: usize = 2000;
const DEFAULT_SAMPLES: usize = 100;
const BLOCH_SAMPLES: usize = 1000;
/// A search floor below this would count as finding a private subspace.
const SEARCH_FLOOR: f64 = 1e-3;

pub fn run_demo(name: DemoName, trials: Option<u64>, seed: Option<u64>, tol: Tolerance) -> Result<DemoReport, CliError> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let trials = trials.map(|t| t as usize);
    let mut report = DemoReport::new(name.to_string());
    match name {
        DemoName::TwoQubitDephasing => two_qubit(&mut report, trials.unwrap_or(DEFAULT_SEARCH_TRIALS), seed, tol)?,
        DemoName::NQubitDephasing(n) => n_qubit(&mut report, n, trials.unwrap_or(DEFAULT_SEARCH_TRIALS), seed, tol)?,
        DemoName::Depolarizing(n) => depolarizing_demo(&mut report, n, trials.unwrap_or(DEFAULT_SAMPLES), seed, tol)?,
        DemoName::ComplementarityFailure => complementarity_failure(&mut report, tol)?,
    }
    Ok(report)
}

fn mixed(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d).scale_real(1.0 / d as f64)
}

/// Private at `sigma_a` with the given reference output, plus the certificate shape.
fn privacy_checks(
    report: &mut DemoReport,
    phi: &Channel,
    code: &SubsystemCode,
    sigma_a: &ComplexMatrix,
    expect_unitary: bool,
    tol: Tolerance,
) -> Result<(), CliError> {
    let d_out = phi.dim_out();
    let (private, rho_0) = is_private(phi, code, sigma_a, tol)?;
    report.checks.push(Check::new("private", true, private, private));
    let gap = (&rho_0 - &mixed(d_out)).trace_norm();
    report.checks.push(Check::new(
        "rho_0 is maximally mixed",
        format!("|rho_0 - I/{d_out}|_tr <= {}", num(tol.bound(1.0))),
        num(gap),
        tol.accepts(gap, 1.0),
    ));
    report.rho_0 = Some(rho_0);

    match certify_theorem2(phi, code, sigma_a, tol) {
        Ok(cert) => {
            let (rows, cols) = cert.lambda.shape();
            let shape = format!("{rows}x{cols}");
            if expect_unitary {
                report.checks.push(Check::new(
                    "lambda is unitary",
                    format!("{cols}x{cols} unitary"),
                    format!("{shape}, unitary {}", cert.unitary_flag),
                    cert.unitary_flag && rows == cols,
                ));
            } else {
                report.checks.push(Check::new(
                    "lambda is an isometry",
                    "isometry",
                    format!("{shape}, residual {}", num(cert.isometry_residual)),
                    true,
                ));
            }
            report.certificate = Some(cert);
        }
        Err(e) => report.checks.push(Check::new("certificate", "exists", e, false)),
    }
    Ok(())
}

fn complementarity_checks(
    report: &mut DemoReport,
    phi: &Channel,
    code: &SubsystemCode,
    sigma_a: &ComplexMatrix,
    tol: Tolerance,
) -> Result<(), CliError> {
    let pair = complementarity_pair_report(phi, code, sigma_a, tol)?;
    report.checks.push(Check::new(
        "correctable for complement",
        false,
        pair.operator_correctable_for_complement,
        !pair.operator_correctable_for_complement,
    ));
    report.checks.push(Check::new(
        "complement is a measurement",
        true,
        pair.complement_is_measurement,
        pair.complement_is_measurement,
    ));
    report.complementarity = Some(pair);
    Ok(())
}

fn no_private_subspace(report: &mut DemoReport, phi: &Channel, trials: usize, seed: u64) -> Result<(), CliError> {
    let out = search_private_subspace(phi, 2, trials, seed)?;
    report.checks.push(Check::new(
        "no private subspace found",
        format!("best defect > {}", num(SEARCH_FLOOR)),
        format!("{} over {trials} trials (seed {seed})", num(out.report.defect)),
        out.report.defect > SEARCH_FLOOR,
    ));
    Ok(())
}

fn two_qubit(report: &mut DemoReport, trials: usize, seed: u64, tol: Tolerance) -> Result<(), CliError> {
    let lambda = full_dephasing(2)?;
    let paper = paper_subsystem_code();

    let frame = paper.frame.words();
    let expected = ["XX", "YI", "ZX"];
    let frame_ok = frame.iter().zip(expected).all(|(w, e)| w.as_deref() == Some(e));
    report.checks.push(Check::new(
        "logical frame",
        expected.join(", "),
        frame.iter().map(|w| w.as_deref().unwrap_or("?")).collect::<Vec<_>>().join(", "),
        frame_ok,
    ));
    report.frame = Some(frame.to_vec());
    report.encoder = Some(paper.encoder.clone());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..BLOCH_SAMPLES {
        let [a, b, g] = bloch_ball_point(&mut rng);
        let rho_l = logical_bloch_state(a, b, g)?;
        worst = worst.max((&lambda.apply(&rho_l)? - &mixed(4)).trace_norm());
    }
    report.checks.push(Check::new(
        "logical states dephase to I/4",
        format!("max trace distance <= {}", num(tol.bound(1.0))),
        format!("{} over {BLOCH_SAMPLES} Bloch vectors", num(worst)),
        tol.accepts(worst, 1.0),
    ));

    privacy_checks(report, &lambda, &paper.code, &paper.sigma_a, true, tol)?;
    complementarity_checks(report, &lambda, &paper.code, &paper.sigma_a, tol)?;
    no_private_subspace(report, &lambda, trials, seed)
}

fn n_qubit(report: &mut DemoReport, n: usize, trials: usize, seed: u64, tol: Tolerance) -> Result<(), CliError> {
    if !(2..=5).contains(&n) {
        return Err(CliError::Usage(format!("n-qubit-dephasing supports 2 to 5 qubits, got {n}")));
    }
    let lambda = full_dephasing(n)?;
    let (code, sigma_a) = n_qubit_private_code(n)?;
    privacy_checks(report, &lambda, &code, &sigma_a, n == 2, tol)?;
    complementarity_checks(report, &lambda, &code, &sigma_a, tol)?;
    no_private_subspace(report, &lambda, trials, seed)
}

fn depolarizing_demo(
    report: &mut DemoReport,
    n: usize,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<(), CliError> {
    if !(2..=16).contains(&n) {
        return Err(CliError::Usage(format!("depolarizing supports dimensions 2 to 16, got {n}")));
    }
    let phi = depolarizing(n)?;
    let trivial = ComplexMatrix::identity(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SampleSummary {
        samples,
        seed,
        private: 0,
        worst_defect: 0.0,
        worst_isometry_residual: 0.0,
    };
    for _ in 0..samples {
        let code = SubsystemCode::new(1, 2, haar_isometry(&mut rng, n, 2))?;
        let defect = privacy_defect(&phi, &code, &trivial)?;
        summary.worst_defect = summary.worst_defect.max(defect.defect);
        if let Ok(cert) = certify_theorem2(&phi, &code, &trivial, tol) {
            summary.private += 1;
            summary.worst_isometry_residual = summary.worst_isometry_residual.max(cert.isometry_residual);
        }
        report.rho_0 = Some(defect.rho_0);
    }
    report.checks.push(Check::new(
        "every sampled subspace is private",
        format!("{samples} of {samples}"),
        format!("{} of {samples}", summary.private),
        summary.private == samples,
    ));
    if let Some(rho) = &report.rho_0 {
        let gap = (rho - &mixed(n)).trace_norm();
        report.checks.push(Check::new(
            "rho_0 is maximally mixed",
            format!("|rho_0 - I/{n}|_tr <= {}", num(tol.bound(1.0))),
            num(gap),
            tol.accepts(gap, 1.0),
        ));
    }
    report.samples = Some(summary);
    Ok(())
}

fn complementarity_failure(report: &mut DemoReport, tol: Tolerance) -> Result<(), CliError> {
    let lambda = full_dephasing(2)?;
    let paper = paper_subsystem_code();
    let comp = lambda.complementary();
    let k = minimal_kraus(&comp, tol).num_kraus();
    report.checks.push(Check::new("minimal Kraus operators of complement", 4, k, k == 4));
    let outcomes = measurement_structure(&comp, tol).map(|s| s.count);
    report.checks.push(Check::new(
        "complement measures in a basis",
        "4 outcomes",
        outcomes.map_or("not a measurement".to_string(), |c| format!("{c} outcomes")),
        outcomes == Some(4),
    ));
    let (private, rho_0) = is_private(&lambda, &paper.code, &paper.sigma_a, tol)?;
    report.checks.push(Check::new("private", true, private, private));
    report.rho_0 = Some(rho_0);
    complementarity_checks(report, &lambda, &paper.code, &paper.sigma_a, tol)
}
