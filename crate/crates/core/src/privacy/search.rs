//! Randomized search for private subspaces.
//!
//! Each trial draws a Haar isometry from its own generator, seeded by the
//! search seed with the trial index as the ChaCha stream, so the set of
//! evaluated candidates is independent of scheduling. The best few are then
//! polished by random local perturbations with a fixed budget.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{privacy_defect, DefectReport};
use crate::channels::Channel;
use crate::codes::SubsystemCode;
use crate::error::{Error, Result};
use crate::sampling::{gaussian_matrix, haar_isometry, orthonormalize_columns};
use crate::tensor::{gell_mann_basis, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Number of best trials handed to the polishing stage.
    pub polish_candidates: usize,
    /// Perturbation steps per polished candidate.
    pub polish_iterations: usize,
    /// Initial perturbation scale.
    pub initial_step: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            polish_candidates: 4,
            polish_iterations: 200,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub code: SubsystemCode,
    pub report: DefectReport,
    /// Trial that seeded the returned candidate.
    pub trial: usize,
    /// Best defect among the raw trials, before polishing.
    pub best_raw_defect: f64,
    pub trials: usize,
    pub seed: u64,
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn subspace_defect(phi: &Channel, s: &ComplexMatrix, basis: &[ComplexMatrix]) -> f64 {
    basis
        .iter()
        .map(|g| phi.apply_unchecked(&s.conjugate(g)).trace_norm())
        .sum()
}

/// Polishes one candidate; returns the improved isometry and its defect.
fn polish(
    phi: &Channel,
    start: ComplexMatrix,
    start_defect: f64,
    basis: &[ComplexMatrix],
    rng: &mut ChaCha8Rng,
    opts: &SearchOptions,
) -> (ComplexMatrix, f64) {
    let (mut best, mut best_defect) = (start, start_defect);
    let mut step = opts.initial_step;
    for _ in 0..opts.polish_iterations {
        let noise = gaussian_matrix(rng, best.rows(), best.cols()).scale_real(step);
        if let Some(candidate) = orthonormalize_columns(&(&best + &noise)) {
            let d = subspace_defect(phi, &candidate, basis);
            if d < best_defect {
                best = candidate;
                best_defect = d;
                step = (step * 1.5).min(1.0);
                continue;
            }
        }
        step *= 0.85;
    }
    (best, best_defect)
}

pub fn search_private_subspace(phi: &Channel, dim: usize, trials: usize, seed: u64) -> Result<SearchOutcome> {
    search_private_subspace_with(phi, dim, trials, seed, SearchOptions::default())
}

/// Deterministic in `(dim, trials, seed, opts)` regardless of thread count.
pub fn search_private_subspace_with(
    phi: &Channel,
    dim: usize,
    trials: usize,
    seed: u64,
    opts: SearchOptions,
) -> Result<SearchOutcome> {
    if dim < 2 || dim > phi.dim_in() {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension must lie in 2..={}, got {dim}",
            phi.dim_in()
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("search needs at least one trial".into()));
    }
    let d = phi.dim_in();
    let basis = gell_mann_basis(dim);
    let draw = |t: usize| haar_isometry(&mut trial_rng(seed, t as u64), d, dim);

    let mut scored: Vec<(f64, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| (subspace_defect(phi, &draw(t), &basis), t))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let best_raw_defect = scored[0].0;

    let polished: Vec<(f64, usize, ComplexMatrix)> = scored
        .iter()
        .take(opts.polish_candidates.max(1))
        .enumerate()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(rank, &(defect, t))| {
            // polishing streams count down from the top so they never meet trial streams
            let mut rng = trial_rng(seed, u64::MAX - rank as u64);
            let (s, dd) = polish(phi, draw(t), defect, &basis, &mut rng, &opts);
            (dd, t, s)
        })
        .collect();
    let (_, trial, s) = polished
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("at least one candidate");

    let code = SubsystemCode::new(1, dim, s)?;
    let report = privacy_defect(phi, &code, &ComplexMatrix::identity(1))?;
    Ok(SearchOutcome {
        code,
        report,
        trial,
        best_raw_defect,
        trials,
        seed,
    })
}
