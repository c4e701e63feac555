use std::fmt;

use super::matrix::{kron_all, ComplexMatrix, C64, I as IMAG, ONE, ZERO};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let entries = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -IMAG, IMAG, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        ComplexMatrix::new(2, 2, entries.to_vec()).expect("2x2 Pauli")
    }

    /// `self · other = phase · product`.
    pub fn product(self, other: Pauli) -> (C64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (a, b) if a == b => (ONE, I),
            (X, Y) => (IMAG, Z),
            (Y, X) => (-IMAG, Z),
            (Y, Z) => (IMAG, X),
            (Z, Y) => (-IMAG, X),
            (Z, X) => (IMAG, Y),
            (X, Z) => (-IMAG, Y),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Parses a word such as `"ZX"`; qubit 1 is the leftmost (most significant) factor.
pub fn parse_word(word: &str) -> Result<Vec<Pauli>> {
    if word.is_empty() {
        return Err(Error::InvalidArgument("empty Pauli word".into()));
    }
    word.chars().map(Pauli::from_char).collect()
}

/// Dense matrix of a Pauli word, dimension `2^len`.
pub fn pauli_word(word: &str) -> Result<ComplexMatrix> {
    let letters = parse_word(word)?;
    let mats: Vec<ComplexMatrix> = letters.iter().map(|p| p.matrix()).collect();
    Ok(kron_all(&mats))
}

/// Symbol-wise product of two equal-length words: `(phase, word)`.
pub fn word_product(a: &str, b: &str) -> Result<(C64, String)> {
    let (pa, pb) = (parse_word(a)?, parse_word(b)?);
    if pa.len() != pb.len() {
        return Err(crate::error::mismatch("word_product", pa.len(), pb.len()));
    }
    let mut phase = ONE;
    let mut word = String::with_capacity(pa.len());
    for (x, y) in pa.into_iter().zip(pb) {
        let (ph, p) = x.product(y);
        phase *= ph;
        word.push(p.symbol());
    }
    Ok((phase, word))
}

/// All `4^n` Pauli words on `n` qubits in lexicographic `I < X < Y < Z` order.
pub fn all_words(n: usize) -> Vec<String> {
    let mut words = vec![String::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| Pauli::ALL.iter().map(move |p| format!("{w}{p}")))
            .collect();
    }
    words
}

/// Coefficients `c_w = tr(P_w M) / 2^n` for every word whose coefficient exceeds `threshold`.
///
/// Returns `None` unless `m` is square with a power-of-two dimension.
pub fn pauli_decompose(m: &ComplexMatrix, threshold: f64) -> Option<Vec<(String, C64)>> {
    let d = m.rows();
    if !m.is_square() || !d.is_power_of_two() {
        return None;
    }
    let n = d.trailing_zeros() as usize;
    let words = all_words(n);
    let mut out = Vec::new();
    for w in words {
        let p = pauli_word(&w).expect("generated word is valid");
        let c = p.hs_inner(m) / d as f64;
        if c.norm() > threshold {
            out.push((w, c));
        }
    }
    Some(out)
}

/// Recognizes `m = ±P` for a single Pauli word `P`, returning e.g. `"-ZX"` or `"XX"`.
pub fn signed_pauli_word(m: &ComplexMatrix, tol: f64) -> Option<String> {
    let terms = pauli_decompose(m, tol)?;
    match terms.as_slice() {
        [(w, c)] if c.im.abs() <= tol && (c.re.abs() - 1.0).abs() <= tol => {
            Some(if c.re < 0.0 { format!("-{w}") } else { w.clone() })
        }
        _ => None,
    }
}

/// Inverse of [`signed_pauli_word`]: accepts an optional leading `+` or `-`.
pub fn parse_signed_word(word: &str) -> Result<ComplexMatrix> {
    if let Some(rest) = word.strip_prefix('-') {
        Ok(pauli_word(rest)?.scale_real(-1.0))
    } else {
        pauli_word(word.strip_prefix('+').unwrap_or(word))
    }
}

/// Generalized Gell-Mann basis of traceless Hermitian `d×d` matrices,
/// normalized to `tr(G_a G_b) = 2 δ_ab`. For `d = 2` this is `(X, Y, Z)`.
pub fn gell_mann_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            // symmetric
            let mut s = ComplexMatrix::zeros(d, d);
            s[(j, k)] = ONE;
            s[(k, j)] = ONE;
            basis.push(s);
            // antisymmetric
            let mut a = ComplexMatrix::zeros(d, d);
            a[(j, k)] = -IMAG;
            a[(k, j)] = IMAG;
            basis.push(a);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for entry in diag.iter_mut().take(l) {
            *entry = norm;
        }
        diag[l] = -(l as f64) * norm;
        basis.push(ComplexMatrix::from_real_diagonal(&diag));
    }
    basis
}

/// Hermitian basis of all `d×d` operators: `I/d` followed by the Gell-Mann set.
pub fn hermitian_operator_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = vec![ComplexMatrix::identity(d).scale_real(1.0 / d as f64)];
    basis.extend(gell_mann_basis(d));
    basis
}

/// Matrix units `|a⟩⟨b|`, a basis of all `d×d` operators.
pub fn matrix_units(d: usize) -> impl Iterator<Item = ComplexMatrix> {
    (0..d * d).map(move |k| {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(k / d, k % d)] = ONE;
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_letters() {
        assert_eq!(pauli_word("Z").unwrap(), ComplexMatrix::from_real_diagonal(&[1.0, -1.0]));
        assert_eq!(pauli_word("II").unwrap(), ComplexMatrix::identity(4));
        let yi = pauli_word("YI").unwrap();
        assert_eq!(yi, Pauli::Y.matrix().kron(&Pauli::I.matrix()));
    }

    #[test]
    fn invalid_words() {
        assert!(matches!(pauli_word("XQ"), Err(Error::InvalidPauli('Q'))));
        assert!(pauli_word("").is_err());
        assert!(pauli_word("x").is_err());
    }

    #[test]
    fn products_match_symbolwise_rule_exhaustively() {
        for n in 1..=2 {
            let words = all_words(n);
            for a in &words {
                for b in &words {
                    let (phase, w) = word_product(a, b).unwrap();
                    assert!([ONE, -ONE, IMAG, -IMAG].iter().any(|p| (p - phase).norm() < 1e-15));
                    let lhs = &pauli_word(a).unwrap() * &pauli_word(b).unwrap();
                    let rhs = pauli_word(&w).unwrap().scale(phase);
                    assert!(lhs.max_abs_diff(&rhs) < 1e-15, "{a}*{b}");
                }
            }
        }
    }

    #[test]
    fn gell_mann_is_orthogonal_traceless_hermitian() {
        for d in 2..=5 {
            let basis = gell_mann_basis(d);
            assert_eq!(basis.len(), d * d - 1);
            for (i, g) in basis.iter().enumerate() {
                assert!(g.trace().norm() < 1e-14);
                assert!(g.hermitian_defect() < 1e-15);
                for (j, h) in basis.iter().enumerate() {
                    let ip = g.hs_inner(h);
                    let expected = if i == j { 2.0 } else { 0.0 };
                    assert!((ip - expected).norm() < 1e-13, "d={d} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn qubit_gell_mann_is_pauli_up_to_order() {
        let basis = gell_mann_basis(2);
        assert_eq!(basis[0], pauli_word("X").unwrap());
        assert_eq!(basis[1], pauli_word("Y").unwrap());
        assert_eq!(basis[2], pauli_word("Z").unwrap());
    }

    #[test]
    fn decomposition_recovers_encoded_state() {
        let m = (&pauli_word("II").unwrap() + &pauli_word("XX").unwrap().scale_real(0.5)).scale_real(0.25);
        let terms = pauli_decompose(&m, 1e-12).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, "II");
        assert!((terms[0].1.re - 0.25).abs() < 1e-15);
        assert_eq!(terms[1].0, "XX");
        assert!((terms[1].1.re - 0.125).abs() < 1e-15);
        assert!(pauli_decompose(&ComplexMatrix::identity(3), 0.0).is_none());
    }

    #[test]
    fn signed_words_round_trip() {
        for w in ["XX", "-ZX", "YI", "-I"] {
            let m = parse_signed_word(w).unwrap();
            assert_eq!(signed_pauli_word(&m, 1e-12).as_deref(), Some(w));
        }
        assert_eq!(parse_signed_word("+ZZ").unwrap(), pauli_word("ZZ").unwrap());
        let mixed = &pauli_word("XX").unwrap() + &pauli_word("ZZ").unwrap();
        assert!(signed_pauli_word(&mixed, 1e-12).is_none());
        assert!(signed_pauli_word(&pauli_word("X").unwrap().scale(IMAG), 1e-12).is_none());
    }
}
