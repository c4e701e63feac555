//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Dimensions here stay at or below 64, where Jacobi is both accurate to a few
//! ulps of the matrix norm and fully deterministic. Output ordering is
//! canonical: eigenvalues descending, each eigenvector phase-fixed so its first
//! significant component is real and positive, and vectors inside a degenerate
//! cluster ordered lexicographically by component magnitude (larger first).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Components below this magnitude are ignored when fixing the phase.
const PHASE_THRESHOLD: f64 = 1e-6;
/// Magnitude differences below this count as ties when ordering degenerate vectors.
const TIE_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> ComplexMatrix {
        self.vectors.column(k)
    }

    /// `V diag(w) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let scaled = ComplexMatrix::from_fn(n, n, |r, c| self.vectors[(r, c)] * self.values[c]);
        &scaled * &self.vectors.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when `‖m − m†‖_max` exceeds `tol`.
pub fn eig_hermitian(m: &ComplexMatrix, tol: Tolerance) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(crate::error::mismatch(
            "eig_hermitian",
            "square matrix",
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    let defect = m.hermitian_defect();
    if !tol.accepts(defect, m.max_abs()) {
        return Err(Error::NotHermitian(defect));
    }

    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off = off_diagonal_norm(&a);
            if off <= f64::EPSILON * 1e-2 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    Ok(canonicalize(values, v))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`; accumulates into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that would not change anything at working precision.
    if mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = g / mag; // e^{iφ}
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on the (p, q) plane.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    // A <- A J
    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * jpp + arq * jqp;
        a[(r, q)] = arp * jpq + arq * jqq;
    }
    // A <- J† A
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = jpp.conj() * apc + jqp.conj() * aqc;
        a[(q, col)] = jpq.conj() * apc + jqq.conj() * aqc;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * jpp + vrq * jqp;
        v[(r, q)] = vrp * jpq + vrq * jqq;
    }
}

fn canonicalize(values: Vec<f64>, v: ComplexMatrix) -> HermitianEigen {
    let n = values.len();
    let mut pairs: Vec<(f64, Vec<C64>)> = (0..n)
        .map(|k| {
            let mut col: Vec<C64> = (0..n).map(|r| v[(r, k)]).collect();
            fix_phase(&mut col);
            (values[k], col)
        })
        .collect();

    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    // Reorder degenerate clusters by eigenvector comparison.
    let spread = pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (pairs[end - 1].0 - pairs[end].0).abs() <= TIE_THRESHOLD * spread {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|a, b| compare_vectors(&a.1, &b.1));
        }
        start = end;
    }

    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| pairs[c].1[r]);
    HermitianEigen { values, vectors }
}

fn fix_phase(col: &mut [C64]) {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = PHASE_THRESHOLD * max.max(f64::MIN_POSITIVE);
    if let Some(pivot) = col.iter().find(|z| z.norm() > threshold).copied() {
        let rot = pivot.conj() / pivot.norm();
        for z in col.iter_mut() {
            *z *= rot;
        }
    }
}

fn compare_vectors(a: &[C64], b: &[C64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let (mx, my) = (x.norm(), y.norm());
        if (mx - my).abs() > TIE_THRESHOLD {
            return my.total_cmp(&mx);
        }
    }
    Ordering::Equal
}
