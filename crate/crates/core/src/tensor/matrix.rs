use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eig::eig_hermitian;
use super::tolerance::Tolerance;
use crate::error::{mismatch, Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Dense complex matrix stored row-major.
///
/// Every operator in the toolkit (states, Kraus operators, isometries,
/// Choi matrices) is one of these. Entries are always finite.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Wire form: `{"rows": n, "cols": m, "re": [...], "im": [...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        if repr.re.len() != repr.im.len() {
            return Err(mismatch("matrix json re/im", repr.re.len(), repr.im.len()));
        }
        let data = repr
            .re
            .into_iter()
            .zip(repr.im)
            .map(|(re, im)| C64::new(re, im))
            .collect();
        ComplexMatrix::new(repr.rows, repr.cols, data)
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            re: m.data.iter().map(|z| z.re).collect(),
            im: m.data.iter().map(|z| z.im).collect(),
        }
    }
}

/// Outcome of an isometry test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryCheck {
    /// `‖M†M − I‖_max` within tolerance.
    pub isometry: bool,
    /// Additionally `‖MM† − I‖_max` within tolerance (square isometry).
    pub unitary: bool,
    pub isometry_residual: f64,
    pub unitary_residual: f64,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "matrix dimensions must be positive (got {rows}x{cols})"
            )));
        }
        if data.len() != rows * cols {
            return Err(mismatch("matrix entries", rows * cols, data.len()));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Real-valued matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { diag[r] } else { ZERO })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// Computational basis column vector `|index⟩` of length `dim`.
    pub fn ket(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        Self::from_fn(dim, 1, |r, _| if r == index { ONE } else { ZERO })
    }

    pub fn column_vector(entries: &[C64]) -> Self {
        Self::from_fn(entries.len(), 1, |r, _| entries[r])
    }

    /// Matrix whose columns are the given column vectors.
    pub fn from_columns(columns: &[ComplexMatrix]) -> Result<Self> {
        let first = columns
            .first()
            .ok_or_else(|| Error::InvalidArgument("no columns supplied".into()))?;
        let rows = first.rows;
        for col in columns {
            if col.cols != 1 || col.rows != rows {
                return Err(mismatch(
                    "from_columns",
                    format!("{rows}x1"),
                    format!("{}x{}", col.rows, col.cols),
                ));
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c].data[r]))
    }

    /// `|u⟩⟨v|` for column vectors `u`, `v`.
    pub fn outer(u: &ComplexMatrix, v: &ComplexMatrix) -> Self {
        assert!(u.cols == 1 && v.cols == 1, "outer product needs column vectors");
        Self::from_fn(u.rows, v.rows, |r, c| u.data[r] * v.data[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> ComplexMatrix {
        Self::from_fn(self.rows, 1, |r, _| self[(r, c)])
    }

    pub fn columns(&self) -> impl Iterator<Item = ComplexMatrix> + '_ {
        (0..self.cols).map(|c| self.column(c))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, z: C64) -> Self {
        self.map(|x| x * z)
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.map(|z| z * x)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Matrix product with a dimension check.
    pub fn checked_mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(mismatch(
                "matrix product",
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &ComplexMatrix) -> Self {
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * m];
        for r in 0..n {
            let row = &self.data[r * k..(r + 1) * k];
            let dst = &mut out[r * m..(r + 1) * m];
            for (i, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let src = &other.data[i * m..(i + 1) * m];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Self { rows: n, cols: m, data: out }
    }

    /// `A X A†`.
    pub fn conjugate(&self, x: &ComplexMatrix) -> Self {
        &(self * x) * &self.adjoint()
    }

    /// Kronecker product, `self` index major.
    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let (br, bc) = other.shape();
        Self::from_fn(self.rows * br, self.cols * bc, |r, c| {
            self[(r / br, c / bc)] * other[(r % br, c % bc)]
        })
    }

    /// Hilbert–Schmidt inner product `tr(self† other)`.
    pub fn hs_inner(&self, other: &ComplexMatrix) -> C64 {
        assert_eq!(self.shape(), other.shape(), "hs_inner shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖self − other‖_max`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: Tolerance) -> bool {
        let scale = self.max_abs().max(other.max_abs());
        tol.accepts(self.max_abs_diff(other), scale)
    }

    /// Largest deviation from Hermiticity, `‖M − M†‖_max`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: Tolerance) -> bool {
        tol.accepts(self.hermitian_defect(), self.max_abs())
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square(), "hermitian_part needs a square matrix");
        Self::from_fn(self.rows, self.cols, |r, c| {
            (self[(r, c)] + self[(c, r)].conj()) * 0.5
        })
    }

    /// Sum of singular values.
    pub fn trace_norm(&self) -> f64 {
        let tol = Tolerance::default();
        if self.is_square() && self.hermitian_defect() <= 1e-14 * self.max_abs().max(1.0) {
            let eig = eig_hermitian(&self.hermitian_part(), tol)
                .expect("hermitian part is Hermitian");
            return eig.values.iter().map(|w| w.abs()).sum();
        }
        let gram = &self.adjoint() * self;
        let eig = eig_hermitian(&gram.hermitian_part(), tol).expect("gram matrix is Hermitian");
        eig.values.iter().map(|w| w.max(0.0).sqrt()).sum()
    }

    pub fn is_isometry(&self, tol: Tolerance) -> IsometryCheck {
        let gram = &self.adjoint() * self;
        let isometry_residual = gram.max_abs_diff(&Self::identity(self.cols));
        let unitary_residual = if self.is_square() {
            (self * &self.adjoint()).max_abs_diff(&Self::identity(self.rows))
        } else {
            f64::INFINITY
        };
        let isometry = tol.accepts(isometry_residual, 1.0);
        IsometryCheck {
            isometry,
            unitary: isometry && tol.accepts(unitary_residual, 1.0),
            isometry_residual,
            unitary_residual,
        }
    }

    /// Trace over the tensor factors not listed in `keep`.
    ///
    /// `dims` lists the factor dimensions, most significant first; `keep`
    /// holds zero-based factor indices. Kept factors retain their order.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if !self.is_square() || self.rows != total || dims.contains(&0) {
            return Err(mismatch(
                "partial_trace",
                format!("square matrix of dimension {total} (dims {dims:?})"),
                format!("{}x{}", self.rows, self.cols),
            ));
        }
        let mut kept = vec![false; dims.len()];
        for &k in keep {
            if k >= dims.len() {
                return Err(Error::InvalidArgument(format!(
                    "partial_trace keeps factor {k} but only {} factors exist",
                    dims.len()
                )));
            }
            kept[k] = true;
        }
        let keep_dims: Vec<usize> = (0..dims.len()).filter(|&i| kept[i]).map(|i| dims[i]).collect();
        let trace_dims: Vec<usize> = (0..dims.len()).filter(|&i| !kept[i]).map(|i| dims[i]).collect();
        let dk: usize = keep_dims.iter().product();
        let dt: usize = trace_dims.iter().product();

        // full_index[k * dt + t] for kept multi-index k and traced multi-index t
        let mut full_index = vec![0usize; dk * dt];
        let mut digits = vec![0usize; dims.len()];
        for f in 0..total {
            let mut rem = f;
            for i in (0..dims.len()).rev() {
                digits[i] = rem % dims[i];
                rem /= dims[i];
            }
            let (mut k, mut t) = (0usize, 0usize);
            for i in 0..dims.len() {
                if kept[i] {
                    k = k * dims[i] + digits[i];
                } else {
                    t = t * dims[i] + digits[i];
                }
            }
            full_index[k * dt + t] = f;
        }

        let mut out = Self::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                let mut acc = ZERO;
                for t in 0..dt {
                    acc += self[(full_index[a * dt + t], full_index[b * dt + t])];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on incompatible shapes; use [`ComplexMatrix::checked_mul`] for untrusted input.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        self.mul_unchecked(rhs)
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product (`a` index major, `b` index minor).
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Kronecker product of a non-empty sequence.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    let mut iter = factors.into_iter();
    let first = iter.next().expect("kron_all needs at least one factor").clone();
    iter.fold(first, |acc, m| acc.kron(m))
}

pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    m.partial_trace(dims, keep)
}

pub fn is_isometry(m: &ComplexMatrix, tol: Tolerance) -> IsometryCheck {
    m.is_isometry(tol)
}
