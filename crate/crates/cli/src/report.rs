//! Report types shared by every command, with JSON and text renderers.

use std::fmt::Write;

use privmap::codes::EncoderResolution;
use privmap::privacy::{OperatorPrivacy, SearchOutcome};
use privmap::qec::KnillLaflamme;
use privmap::tensor::{pauli_decompose, C64};
use privmap::{ComplementarityReport, ComplexMatrix, DefectReport, PrivacyCertificate};
use serde::{Deserialize, Serialize};

use crate::Mode;

/// Matrices with more rows than this are summarized by shape in text output.
const MAX_PRINTED_ROWS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Demo(DemoReport),
    Certify(CertifyReport),
    Search(SearchOutcome),
    Complement(ComplementReport),
    KlCheck(KnillLaflamme),
    PairReport(ComplementarityReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: impl ToString, observed: impl ToString, pass: bool) -> Self {
        Self {
            name: name.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub samples: usize,
    pub seed: u64,
    pub private: usize,
    pub worst_defect: f64,
    pub worst_isometry_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub demo: String,
    pub checks: Vec<Check>,
    pub encoder: Option<EncoderResolution>,
    /// Logical `X_L, Y_L, Z_L` as signed Pauli words.
    pub frame: Option<Vec<Option<String>>>,
    pub rho_0: Option<ComplexMatrix>,
    pub certificate: Option<PrivacyCertificate>,
    pub complementarity: Option<ComplementarityReport>,
    pub samples: Option<SampleSummary>,
}

impl DemoReport {
    pub fn new(demo: String) -> Self {
        Self {
            demo,
            checks: Vec::new(),
            encoder: None,
            frame: None,
            rho_0: None,
            certificate: None,
            complementarity: None,
            samples: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub mode: Mode,
    pub private: bool,
    pub defect: DefectReport,
    pub certificate: Option<PrivacyCertificate>,
    pub operator: Option<OperatorPrivacy>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub output: String,
    pub dim_in: usize,
    pub dim_out: usize,
    pub num_kraus: usize,
    pub minimal_kraus: usize,
    pub is_measurement: bool,
    /// The written file parses back to the in-memory complement.
    pub round_trip: bool,
    /// The complement of the complement equals the input channel.
    pub double_complement_matches: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Demo(r) => demo_text(&mut out, r),
            Report::Certify(r) => certify_text(&mut out, r),
            Report::Search(r) => {
                let _ = writeln!(out, "search over dim-{} subspaces", r.code.dim_b());
                let _ = writeln!(out, "trials:           {} (seed {})", r.trials, r.seed);
                let _ = writeln!(out, "best raw defect:  {}", num(r.best_raw_defect));
                let _ = writeln!(out, "best defect:      {} (from trial {})", num(r.report.defect), r.trial);
                let _ = writeln!(out, "rho_0:            {}", operator(&r.report.rho_0));
            }
            Report::Complement(r) => {
                let _ = writeln!(out, "complement written to {}", r.output);
                let _ = writeln!(out, "dimensions:       {} -> {}", r.dim_in, r.dim_out);
                let _ = writeln!(out, "kraus operators:  {} (minimal {})", r.num_kraus, r.minimal_kraus);
                let _ = writeln!(out, "measurement:      {}", r.is_measurement);
                let _ = writeln!(out, "round trip:       {}", r.round_trip);
                let _ = writeln!(out, "double complement matches input: {}", r.double_complement_matches);
            }
            Report::KlCheck(r) => {
                let _ = writeln!(out, "Knill-Laflamme:   {}", r.holds);
                let _ = writeln!(out, "residual:         {}", num(r.residual));
                let _ = writeln!(out, "coefficients c_ij:");
                matrix_grid(&mut out, &r.coefficients);
            }
            Report::PairReport(r) => pair_text(&mut out, r),
        }
        out
    }
}

fn demo_text(out: &mut String, r: &DemoReport) {
    let _ = writeln!(out, "demo {}", r.demo);
    if let Some(enc) = &r.encoder {
        let _ = writeln!(
            out,
            "encoder circuit:  {} (candidate {} of {}, {} accepting)",
            enc.circuit, enc.examined, enc.candidates, enc.accepting
        );
        for img in &enc.circuit.images {
            let _ = writeln!(out, "  {} -> {}", img.from, img.to.as_deref().unwrap_or("(not a Pauli word)"));
        }
    }
    if let Some(frame) = &r.frame {
        let words: Vec<&str> = frame.iter().map(|w| w.as_deref().unwrap_or("?")).collect();
        let _ = writeln!(out, "logical frame:    X_L = {}, Y_L = {}, Z_L = {}", words[0], words[1], words[2]);
    }
    if let Some(rho) = &r.rho_0 {
        let _ = writeln!(out, "rho_0:            {}", operator(rho));
    }
    if let Some(c) = &r.certificate {
        certificate_text(out, c);
    }
    if let Some(s) = &r.samples {
        let _ = writeln!(
            out,
            "samples:          {} private of {} (seed {}), worst defect {}, worst isometry residual {}",
            s.private,
            s.samples,
            s.seed,
            num(s.worst_defect),
            num(s.worst_isometry_residual)
        );
    }
    if let Some(p) = &r.complementarity {
        pair_text(out, p);
    }
    let _ = writeln!(out, "checks:");
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "  [{mark}] {}: expected {}, observed {}", c.name, c.expected, c.observed);
    }
    let _ = writeln!(out, "result: {}", if r.passed() { "reproduced" } else { "NOT reproduced" });
}

fn certify_text(out: &mut String, r: &CertifyReport) {
    let mode = match r.mode {
        Mode::Subspace => "subspace",
        Mode::Subsystem => "subsystem",
        Mode::Operator => "operator",
    };
    let _ = writeln!(out, "mode:             {mode}");
    let _ = writeln!(out, "private:          {}", r.private);
    let _ = writeln!(out, "defect:           {}", num(r.defect.defect));
    let _ = writeln!(out, "rho_0:            {}", operator(&r.defect.rho_0));
    if !r.private {
        let _ = writeln!(out, "worst input:      {}", operator(&r.defect.worst_input));
    }
    if let Some(op) = &r.operator {
        let _ = writeln!(out, "constant for every sigma_a: {}", op.constant_for_every_sigma_a);
        let _ = writeln!(out, "independent of sigma_a:     {}", op.independent_of_sigma_a);
        let _ = writeln!(out, "sigma_a dependence:         {}", num(op.sigma_a_dependence));
    }
    if let Some(c) = &r.certificate {
        certificate_text(out, c);
    }
    if let Some(n) = &r.note {
        let _ = writeln!(out, "note:             {n}");
    }
}

fn certificate_text(out: &mut String, c: &PrivacyCertificate) {
    let (rows, cols) = c.lambda.shape();
    let _ = writeln!(out, "lambda:           {rows}x{cols}, unitary {}", c.unitary_flag);
    let _ = writeln!(out, "  isometry residual:       {}", num(c.isometry_residual));
    if let Some(u) = c.unitarity_residual {
        let _ = writeln!(out, "  unitarity residual:      {}", num(u));
    }
    let _ = writeln!(out, "  reconstruction residual: {}", num(c.reconstruction_residual));
    matrix_grid(out, &c.lambda);
}

fn pair_text(out: &mut String, r: &ComplementarityReport) {
    let _ = writeln!(out, "private for channel:             {}", r.private_for_phi);
    let _ = writeln!(out, "operator private for channel:    {}", r.operator_private_for_phi);
    let _ = writeln!(out, "correctable for complement:      {}", r.operator_correctable_for_complement);
    match r.measurement_outcomes {
        Some(k) => {
            let _ = writeln!(out, "complement is measurement:       true ({k} outcomes)");
        }
        None => {
            let _ = writeln!(out, "complement is measurement:       false");
        }
    }
    let _ = writeln!(out, "notes: {}", r.notes);
}

/// Compact number formatting: six significant digits, exponent form for tiny values.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.abs() < 1e-4 || x.abs() >= 1e6 {
        format!("{x:.3e}")
    } else {
        let s = format!("{x:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

pub fn complex(z: C64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => num(re),
        (true, false) => format!("{}i", num(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("({}{sign}{}i)", num(re), num(im.abs()))
        }
    }
}

/// Pauli-word expansion when the dimension is a power of two, entry grid otherwise.
pub fn operator(m: &ComplexMatrix) -> String {
    match pauli_decompose(m, 1e-12) {
        Some(terms) if terms.is_empty() => "0".into(),
        Some(terms) => {
            let mut s = String::new();
            for (k, (w, c)) in terms.iter().enumerate() {
                let negative = c.im.abs() < 1e-12 && c.re < 0.0;
                let shown = if negative { complex(-*c) } else { complex(*c) };
                match (k, negative) {
                    (0, false) => {}
                    (0, true) => s.push('-'),
                    (_, false) => s.push_str(" + "),
                    (_, true) => s.push_str(" - "),
                }
                let _ = write!(s, "{shown} {w}");
            }
            s
        }
        None => {
            let mut s = String::new();
            for r in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|c| complex(m[(r, c)])).collect();
                let _ = write!(s, "[{}]", row.join(", "));
            }
            s
        }
    }
}

fn matrix_grid(out: &mut String, m: &ComplexMatrix) {
    if m.rows() > MAX_PRINTED_ROWS {
        let _ = writeln!(out, "  ({}x{} entries omitted; use --format json)", m.rows(), m.cols());
        return;
    }
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| complex(m[(r, c)])).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "  {}", padded.join("  "));
    }
}
