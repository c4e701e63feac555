//! Seeded random instances: Haar isometries, random states and channels.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::channels::Channel;
use crate::codes::SubsystemCode;
use crate::tensor::{ComplexMatrix, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Orthonormalizes the columns in place order (modified Gram–Schmidt, two passes).
///
/// Returns `None` if the columns are numerically dependent.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = m.shape();
    let mut q: Vec<Vec<C64>> = (0..cols)
        .map(|c| (0..rows).map(|r| m[(r, c)]).collect())
        .collect();
    for c in 0..cols {
        for _ in 0..2 {
            for prev in 0..c {
                let (done, rest) = q.split_at_mut(c);
                let basis = &done[prev];
                let col = &mut rest[0];
                let ip: C64 = basis.iter().zip(col.iter()).map(|(b, x)| b.conj() * x).sum();
                for (x, b) in col.iter_mut().zip(basis) {
                    *x -= ip * b;
                }
            }
        }
        let norm = q[c].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for x in q[c].iter_mut() {
            *x /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(rows, cols, |r, c| q[c][r]))
}

/// Haar-distributed isometry `rows × cols` (`cols <= rows`).
///
/// Gram–Schmidt of a complex Ginibre matrix gives the QR factor with a
/// positive-diagonal `R`, which is Haar distributed.
pub fn haar_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(cols <= rows, "isometry needs cols <= rows");
    loop {
        if let Some(q) = orthonormalize_columns(&gaussian_matrix(rng, rows, cols)) {
            return q;
        }
    }
}

pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    haar_isometry(rng, dim, dim)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    gaussian_matrix(rng, dim, dim).hermitian_part()
}

/// Random density operator of the given rank (Ginibre ensemble).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim, rank.max(1));
    let w = &g * &g.adjoint();
    let t = w.trace().re;
    w.scale_real(1.0 / t).hermitian_part()
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let v = haar_isometry(rng, dim, 1);
    ComplexMatrix::outer(&v, &v)
}

/// Random channel with `n_kraus` Kraus operators, cut from a Haar isometry
/// `C^{dim_in} → C^{dim_out} ⊗ C^{n_kraus}`.
///
/// Panics unless `dim_out · n_kraus >= dim_in`.
pub fn random_channel<R: Rng + ?Sized>(
    rng: &mut R,
    dim_in: usize,
    dim_out: usize,
    n_kraus: usize,
) -> Channel {
    let w = haar_isometry(rng, dim_out * n_kraus, dim_in);
    let kraus = (0..n_kraus)
        .map(|k| ComplexMatrix::from_fn(dim_out, dim_in, |s, c| w[(s * n_kraus + k, c)]))
        .collect();
    Channel::new(kraus).expect("isometry blocks are trace preserving")
}

/// Uniform point in the closed unit ball of R^3.
pub fn bloch_ball_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let p: [f64; 3] = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        if p.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return p;
        }
    }
}

/// Probability vector drawn uniformly from the simplex.
pub fn random_probabilities<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// A channel, code and fixed `σ_A` for randomized privacy experiments.
#[derive(Debug, Clone)]
pub struct PrivacyInstance {
    pub channel: Channel,
    pub code: SubsystemCode,
    pub sigma_a: ComplexMatrix,
}

/// Replaces the `B` factor of the code sector by `I/dim_b` and leaves the
/// complement alone (up to dephasing between sector and complement).
///
/// Kraus operators `E(I_A ⊗ |a⟩⟨b|)E† / √dim_b` together with `I − EE†`.
pub fn erase_code_factor(code: &SubsystemCode) -> Channel {
    let (da, db, ds) = (code.dim_a(), code.dim_b(), code.dim_s());
    let e = code.embedding();
    let scale = 1.0 / (db as f64).sqrt();
    let mut kraus = Vec::with_capacity(db * db + 1);
    for a in 0..db {
        for b in 0..db {
            let unit = ComplexMatrix::outer(&ComplexMatrix::ket(db, a), &ComplexMatrix::ket(db, b));
            let inner = ComplexMatrix::identity(da).kron(&unit);
            kraus.push((&(e * &inner) * &e.adjoint()).scale_real(scale));
        }
    }
    if ds > da * db {
        kraus.push(&ComplexMatrix::identity(ds) - &code.projector());
    }
    Channel::with_tolerance(kraus, crate::tensor::Tolerance::uniform(1e-8).expect("valid"))
        .expect("erasure is trace preserving")
}

/// Private by construction: a random channel composed after [`erase_code_factor`]
/// for a Haar-random code, with a random full-rank `σ_A`.
pub fn private_instance<R: Rng + ?Sized>(
    rng: &mut R,
    dim_a: usize,
    dim_b: usize,
    dim_s: usize,
    dim_out: usize,
    n_kraus: usize,
) -> PrivacyInstance {
    let code = SubsystemCode::new(dim_a, dim_b, haar_isometry(rng, dim_s, dim_a * dim_b))
        .expect("Haar isometry is a valid embedding");
    let noise = random_channel(rng, dim_s, dim_out, n_kraus);
    let channel = noise.compose(&erase_code_factor(&code)).expect("dimensions agree");
    PrivacyInstance {
        channel,
        code,
        sigma_a: random_density(rng, dim_a, dim_a),
    }
}

/// A private instance mixed with weight `epsilon` into an unrelated random channel.
pub fn perturbed_instance<R: Rng + ?Sized>(
    rng: &mut R,
    dim_a: usize,
    dim_b: usize,
    dim_s: usize,
    dim_out: usize,
    n_kraus: usize,
    epsilon: f64,
) -> PrivacyInstance {
    let base = private_instance(rng, dim_a, dim_b, dim_s, dim_out, n_kraus);
    let other = random_channel(rng, dim_s, dim_out, n_kraus);
    let channel =
        Channel::mixture(&[(1.0 - epsilon, &base.channel), (epsilon, &other)]).expect("weights form a distribution");
    PrivacyInstance { channel, ..base }
}
