//! File-driven commands.

use std::path::Path;

use privmap::channels::channels_equal;
use privmap::privacy::{certify_theorem2, operator_privacy, privacy_defect, search_private_subspace};
use privmap::qec::{complementarity_pair_report, is_von_neumann_measurement, knill_laflamme_check};
use privmap::tensor::eig_hermitian;
use privmap::{Channel, ComplexMatrix, Error, SubsystemCode, Tolerance};

use crate::report::{CertifyReport, ComplementReport, Report};
use crate::{read_file, write_file, CliError, Mode, Verdict};

fn parse_with<T>(path: &Path, parse: impl FnOnce(&str) -> privmap::Result<T>) -> Result<T, CliError> {
    parse(&read_file(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_channel(path: &Path) -> Result<Channel, CliError> {
    parse_with(path, Channel::from_json)
}

pub fn load_code(path: &Path) -> Result<SubsystemCode, CliError> {
    parse_with(path, SubsystemCode::from_json)
}

/// Reads a density matrix on `A` and checks shape, hermiticity, trace and positivity.
pub fn load_sigma_a(path: &Path, dim_a: usize, tol: Tolerance) -> Result<ComplexMatrix, CliError> {
    let m: ComplexMatrix = parse_with(path, |s| Ok(serde_json::from_str(s)?))?;
    let bad = |why: String| CliError::Usage(format!("{}: {why}", path.display()));
    if m.shape() != (dim_a, dim_a) {
        return Err(bad(format!(
            "sigma_a must be {dim_a}x{dim_a} to match the code, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_hermitian(tol) {
        return Err(bad("sigma_a is not Hermitian".into()));
    }
    let trace = m.trace().re;
    if !tol.accepts((trace - 1.0).abs(), 1.0) {
        return Err(bad(format!("sigma_a has trace {trace}, expected 1")));
    }
    let smallest = eig_hermitian(&m, tol)?.values.last().copied().unwrap_or(0.0);
    if smallest < -tol.bound(1.0) {
        return Err(bad(format!("sigma_a has negative eigenvalue {smallest:.3e}")));
    }
    Ok(m)
}

fn sigma_a_or_default(path: Option<&Path>, code: &SubsystemCode, tol: Tolerance) -> Result<ComplexMatrix, CliError> {
    match path {
        Some(p) => load_sigma_a(p, code.dim_a(), tol),
        None => Ok(ComplexMatrix::identity(code.dim_a()).scale_real(1.0 / code.dim_a() as f64)),
    }
}

pub fn certify(
    channel: &Path,
    code: &Path,
    sigma_a: Option<&Path>,
    mode: Mode,
    tol: Tolerance,
) -> Result<(Report, Verdict), CliError> {
    let phi = load_channel(channel)?;
    let code = load_code(code)?;
    if mode == Mode::Subspace && code.dim_a() != 1 {
        return Err(CliError::Usage(format!(
            "subspace mode needs a code with dim_a = 1, got dim_a = {}",
            code.dim_a()
        )));
    }
    let sigma = sigma_a_or_default(sigma_a, &code, tol)?;
    let defect = privacy_defect(&phi, &code, &sigma)?;

    let operator = match mode {
        Mode::Operator => Some(operator_privacy(&phi, &code, tol)?),
        _ => None,
    };
    let (certificate, mut note) = match certify_theorem2(&phi, &code, &sigma, tol) {
        Ok(c) => (Some(c), None),
        Err(Error::NotPrivate { .. }) => (None, None),
        Err(Error::CertificateCheck(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    let private = match &operator {
        Some(op) => op.accepted(),
        None => certificate.is_some(),
    };
    if private && certificate.is_none() {
        note.get_or_insert_with(|| "no certificate at the chosen sigma_a".into());
    }
    let report = CertifyReport {
        mode,
        private,
        defect,
        certificate,
        operator,
        note,
    };
    Ok((Report::Certify(report), Verdict::from_bool(private)))
}

pub fn search(channel: &Path, dim: usize, trials: usize, seed: u64) -> Result<(Report, Verdict), CliError> {
    let phi = load_channel(channel)?;
    let outcome = search_private_subspace(&phi, dim, trials, seed)?;
    Ok((Report::Search(outcome), Verdict::Affirmative))
}

pub fn complement(channel: &Path, out: &Path, tol: Tolerance) -> Result<(Report, Verdict), CliError> {
    let phi = load_channel(channel)?;
    let comp = phi.complementary();
    write_file(out, &comp.to_json())?;
    let reread = load_channel(out)?;
    let report = ComplementReport {
        output: out.display().to_string(),
        dim_in: comp.dim_in(),
        dim_out: comp.dim_out(),
        num_kraus: comp.num_kraus(),
        minimal_kraus: comp.kraus_rank(tol),
        is_measurement: is_von_neumann_measurement(&comp, tol),
        round_trip: channels_equal(&reread, &comp, tol)?,
        double_complement_matches: channels_equal(&comp.complementary(), &phi, tol)?,
    };
    let ok = report.round_trip;
    Ok((Report::Complement(report), Verdict::from_bool(ok)))
}

pub fn kl_check(channel: &Path, code: &Path, tol: Tolerance) -> Result<(Report, Verdict), CliError> {
    let phi = load_channel(channel)?;
    let code = load_code(code)?;
    let kl = knill_laflamme_check(&phi, &code, tol)?;
    let verdict = Verdict::from_bool(kl.holds);
    Ok((Report::KlCheck(kl), verdict))
}

pub fn pair_report(
    channel: &Path,
    code: &Path,
    sigma_a: Option<&Path>,
    tol: Tolerance,
) -> Result<(Report, Verdict), CliError> {
    let phi = load_channel(channel)?;
    let code = load_code(code)?;
    let sigma = sigma_a_or_default(sigma_a, &code, tol)?;
    let report = complementarity_pair_report(&phi, &code, &sigma, tol)?;
    Ok((Report::PairReport(report), Verdict::Affirmative))
}
