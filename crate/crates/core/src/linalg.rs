//! Dense complex matrices and state vectors at desk scale.
//!
//! Everything here is exact-shape and row-major. The only inner product on
//! matrices is Hilbert-Schmidt, `Tr(a† b)`. Vectorization follows the
//! convention `amplitude[i·d + j] = ⟨j|U|i⟩ / √d`, so the first tensor factor
//! carries the column index of `U` and the second carries the row index.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Absolute tolerance used for every equality, unitarity and certification
/// check in the crate.
pub const EPS: f64 = 1e-9;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for k in 0..d {
            m.data[k * d + k] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting bad shapes and
    /// non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix literal");
            data.extend_from_slice(row.as_ref());
        }
        Self::from_vec(r, c, data).expect("valid matrix literal")
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let d = entries.len();
        let mut m = Self::zeros(d, d);
        for (k, z) in entries.iter().enumerate() {
            m.data[k * d + k] = *z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Complex64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).sum()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Integer power of a square matrix.
    pub fn pow(&self, exp: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm squared, i.e. `Tr(a† a)`.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.get(r, c);
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Linear combination `Σ coeffs[k] · mats[k]`.
pub fn linear_combination(coeffs: &[Complex64], mats: &[&ComplexMatrix]) -> ComplexMatrix {
    assert_eq!(coeffs.len(), mats.len());
    assert!(!mats.is_empty());
    let mut out = ComplexMatrix::zeros(mats[0].rows, mats[0].cols);
    for (c, m) in coeffs.iter().zip(mats) {
        for (o, z) in out.data.iter_mut().zip(&m.data) {
            *o += c * z;
        }
    }
    out
}

/// Hilbert-Schmidt inner product `Tr(a† b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::InvalidInput("Hilbert-Schmidt product needs square matrices".into()));
    }
    if a.rows != b.rows {
        return Err(Error::DimMismatch {
            expected: a.rows,
            got: b.rows,
        });
    }
    Ok(hs_inner_unchecked(a, b))
}

/// `Tr(a† b)` without shape checks: `Σ conj(a_rc) b_rc`.
pub(crate) fn hs_inner_unchecked(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum()
}

/// `|Tr(a† b)|²`, the quantity every unbiasedness test is phrased in.
pub(crate) fn overlap_sqr(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    hs_inner_unchecked(a, b).norm_sqr()
}

/// True iff the largest entrywise deviation of `a† a` from the identity is at
/// most `tol`. Non-square input is never unitary.
pub fn is_unitary(a: &ComplexMatrix, tol: f64) -> bool {
    if !a.is_square() {
        return false;
    }
    let d = a.rows;
    for r in 0..d {
        for c in 0..d {
            let mut acc = ZERO;
            for k in 0..d {
                acc += a.get(k, r).conj() * a.get(k, c);
            }
            if r == c {
                acc -= ONE;
            }
            if acc.norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Kronecker product with `a`'s indices major.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.get(ar, ac);
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out.set(ar * b.rows + br, ac * b.cols + bc, x * b.get(br, bc));
                }
            }
        }
    }
    out
}

/// Unitaries equal up to a global phase: `|Tr(a† b)| = d` within `tol`.
pub fn equal_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    for (index, m) in [a, b].into_iter().enumerate() {
        if !is_unitary(m, tol) {
            return Err(Error::InvalidInput(format!(
                "argument {index} is not unitary"
            )));
        }
    }
    let overlap = hs_inner(a, b)?;
    Ok((overlap.norm() - a.rows as f64).abs() <= tol)
}

/// Phase-equality test for callers that already know both inputs are unitary.
pub(crate) fn same_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.rows == b.rows && (hs_inner_unchecked(a, b).norm() - a.rows as f64).abs() <= tol
}

/// Multiplies by the global phase that makes the first entry of (near)
/// maximal modulus real and positive.
pub fn canonical_phase(m: &ComplexMatrix) -> ComplexMatrix {
    let max = m.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
    match m.data.iter().find(|z| z.norm() >= max - EPS) {
        Some(pivot) if pivot.norm() > 0.0 => m.scale(pivot.conj() / pivot.norm()),
        _ => m.clone(),
    }
}

/// A pure state; amplitudes are normalized to within [`EPS`].
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes, checking normalization.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidInput("state vector must be nonempty".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite amplitude".into()));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > EPS {
            return Err(Error::InvalidInput(format!(
                "state is not normalized (norm^2 = {norm})"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Scales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidInput("cannot normalize a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        Self { amplitudes: amps }
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "state dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sqr(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }

    /// Applies a matrix; the result is not renormalized.
    pub fn evolve(&self, m: &ComplexMatrix) -> Self {
        Self {
            amplitudes: m.apply(&self.amplitudes),
        }
    }

    pub fn same_ray(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && (self.inner(other).norm() - 1.0).abs() <= tol
    }

    /// Reduced density matrices `(ρ_A, ρ_B)` of a bipartite state on
    /// `ℋ_d ⊗ ℋ_d`, index `i·d + j` with `i` on the first factor.
    pub fn reduced_density_matrices(&self, d: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
        if d * d != self.dim() {
            return Err(Error::DimMismatch {
                expected: d * d,
                got: self.dim(),
            });
        }
        let psi = |i: usize, j: usize| self.amplitudes[i * d + j];
        let mut rho_a = ComplexMatrix::zeros(d, d);
        let mut rho_b = ComplexMatrix::zeros(d, d);
        for x in 0..d {
            for y in 0..d {
                let mut a = ZERO;
                let mut b = ZERO;
                for k in 0..d {
                    a += psi(x, k) * psi(y, k).conj();
                    b += psi(k, x) * psi(k, y).conj();
                }
                rho_a.set(x, y, a);
                rho_b.set(x, y, b);
            }
        }
        Ok((rho_a, rho_b))
    }

    /// Both reduced states equal `𝕀/d` within `tol`.
    pub fn is_maximally_entangled(&self, d: usize, tol: f64) -> bool {
        match self.reduced_density_matrices(d) {
            Ok((a, b)) => {
                let mixed = ComplexMatrix::identity(d).scale(ONE / d as f64);
                a.max_abs_diff(&mixed) <= tol && b.max_abs_diff(&mixed) <= tol
            }
            Err(_) => false,
        }
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.amplitudes.iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)))
            .finish()
    }
}

/// Vectorization `|U⟩⟩/√d`: amplitude `i·d + j` is `⟨j|U|i⟩ / √d`.
/// The result is normalized exactly when `u` is unitary.
pub fn vectorize(u: &ComplexMatrix) -> StateVector {
    assert!(u.is_square(), "vectorize needs a square matrix");
    let d = u.rows;
    let s = (d as f64).sqrt();
    let mut amps = vec![ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            amps[i * d + j] = u.get(j, i) / s;
        }
    }
    StateVector::from_raw(amps)
}

/// Inverse of [`vectorize`]: the matrix `U` with `|U⟩⟩/√d = state`.
pub fn unvectorize(state: &StateVector, d: usize) -> Result<ComplexMatrix> {
    if state.dim() != d * d {
        return Err(Error::DimMismatch {
            expected: d * d,
            got: state.dim(),
        });
    }
    let s = (d as f64).sqrt();
    let mut u = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            u.set(j, i, state.amplitudes[i * d + j] * s);
        }
    }
    Ok(u)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Unitarily invariant random pure state of dimension `d`.
pub fn haar_random_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> StateVector {
    assert!(d >= 1, "dimension must be positive");
    loop {
        let amps: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
        if let Ok(state) = StateVector::normalized(amps) {
            return state;
        }
    }
}

/// Haar-random unitary via Gram-Schmidt on a complex Ginibre matrix.
pub fn haar_random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    assert!(d >= 1, "dimension must be positive");
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while columns.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
        for q in &columns {
            let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut u = ComplexMatrix::zeros(d, d);
    for (c, col) in columns.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            u.set(r, c, *z);
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;
    use crate::rng::seeded;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hs_inner_examples() {
        let id = pauli(0).unwrap();
        assert_eq!(hs_inner(&id, &id).unwrap(), c(2.0, 0.0));
        assert!(hs_inner(&pauli(1).unwrap(), &pauli(2).unwrap()).unwrap().norm() < EPS);

        let half_turn = (&id + &pauli(3).unwrap().scale(I)).scale(ONE / 2f64.sqrt());
        let v = hs_inner(&id, &half_turn).unwrap();
        assert!((v.norm() - 2f64.sqrt()).abs() < EPS);
        assert!((v.norm_sqr() - 2.0).abs() < EPS);
    }

    #[test]
    fn hs_inner_rejects_mismatched_dimensions() {
        let err = hs_inner(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn unitarity() {
        assert!(is_unitary(&pauli(1).unwrap(), EPS));
        let projector = (&pauli(0).unwrap() + &pauli(1).unwrap()).scale(c(0.5, 0.0));
        assert!(!is_unitary(&projector, EPS));
        assert!(!is_unitary(&ComplexMatrix::zeros(2, 3), EPS));
    }

    #[test]
    fn tensor_examples() {
        let id = ComplexMatrix::identity(2);
        assert_eq!(tensor(&id, &id), ComplexMatrix::identity(4));

        let z = pauli(3).unwrap();
        let zz = tensor(&z, &z);
        let expected = ComplexMatrix::diagonal(&[ONE, -ONE, -ONE, ONE]);
        assert!(zz.max_abs_diff(&expected) < EPS);

        // bit flip on the first factor of Φ+
        let x1 = tensor(&pauli(1).unwrap(), &id);
        let s = 1.0 / 2f64.sqrt();
        let phi_plus = StateVector::new(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)]).unwrap();
        let psi_plus = StateVector::new(vec![ZERO, c(s, 0.0), c(s, 0.0), ZERO]).unwrap();
        assert!(phi_plus.evolve(&x1).same_ray(&psi_plus, EPS));
    }

    #[test]
    fn vectorize_bell_states() {
        let s = 1.0 / 2f64.sqrt();
        let phi_plus = vectorize(&pauli(0).unwrap());
        assert!((phi_plus.amplitudes()[0] - c(s, 0.0)).norm() < EPS);
        assert!((phi_plus.amplitudes()[3] - c(s, 0.0)).norm() < EPS);
        let psi_plus = vectorize(&pauli(1).unwrap());
        let expected = StateVector::new(vec![ZERO, c(s, 0.0), c(s, 0.0), ZERO]).unwrap();
        assert!(psi_plus.inner(&expected).norm() > 1.0 - EPS);
    }

    #[test]
    fn unvectorize_inverts_vectorize() {
        let mut rng = seeded(3);
        let u = haar_random_unitary(3, &mut rng);
        let back = unvectorize(&vectorize(&u), 3).unwrap();
        assert!(back.max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn phase_equivalence() {
        let x = pauli(1).unwrap();
        assert!(equal_up_to_phase(&x, &x.scale(I), EPS).unwrap());
        assert!(!equal_up_to_phase(&x, &pauli(2).unwrap(), EPS).unwrap());
        let proj = (&pauli(0).unwrap() + &x).scale(c(0.5, 0.0));
        assert!(matches!(
            equal_up_to_phase(&x, &proj, EPS),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn haar_state_edge_cases() {
        let mut rng = seeded(11);
        let s = haar_random_state(1, &mut rng);
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < EPS);

        let a = haar_random_state(4, &mut seeded(42));
        let b = haar_random_state(4, &mut seeded(42));
        assert_eq!(a, b);
    }

    #[test]
    fn haar_states_average_to_maximally_mixed() {
        // ⟨α|σ3|α⟩ averages to Tr(σ3)/2 = 0
        let z = pauli(3).unwrap();
        let mut rng = seeded(2024);
        let n = 100_000;
        let samples: Vec<f64> = (0..n)
            .map(|_| {
                let a = haar_random_state(2, &mut rng);
                a.inner(&a.evolve(&z)).re
            })
            .collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        assert!(mean.abs() <= 5.0 * se, "mean {mean} se {se}");
    }

    #[test]
    fn reduced_states_of_bell_pair() {
        let phi = vectorize(&ComplexMatrix::identity(2));
        assert!(phi.is_maximally_entangled(2, EPS));
        let product = StateVector::basis(4, 0);
        assert!(!product.is_maximally_entangled(2, EPS));
    }
}
