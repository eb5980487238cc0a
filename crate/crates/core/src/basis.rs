//! Orthogonal unitary operator bases and families of mutually unbiased ones.
//!
//! Two bases `𝒜₀`, `𝒜₁` of the same subspace are mutually unbiased when
//! every cross pair has `|Tr(A₀† A₁)|² = C` for a common nonzero `C`.
//! Expanding an element of one basis over the other and imposing unitarity
//! forces every coefficient to modulus `1/√n`, so `C = d²/n` always.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    hs_inner_unchecked, is_unitary, overlap_sqr, same_up_to_phase, ComplexMatrix, EPS,
};

/// An ordered list of `n` pairwise Hilbert-Schmidt orthogonal unitaries on
/// `ℋ_d`. Only [`certify_basis`] constructs one.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    d: usize,
    elements: Vec<ComplexMatrix>,
}

impl OperatorBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<ComplexMatrix> {
        self.elements
    }

    /// `{V·X_j}` for a unitary `V`; equivalent to `self` in the sense of a
    /// common left multiplication.
    pub fn left_multiply(&self, v: &ComplexMatrix) -> Result<OperatorBasis> {
        if v.rows() != self.d || !v.is_square() {
            return Err(Error::DimMismatch {
                expected: self.d,
                got: v.rows(),
            });
        }
        certify_basis(self.elements.iter().map(|x| v * x).collect(), EPS)
    }
}

/// Checks the basis premise: nonempty, common square dimension, every element
/// unitary and distinct elements orthogonal. Failures report the first bad
/// index (or pair) in canonical order.
pub fn certify_basis(elements: Vec<ComplexMatrix>, tol: f64) -> Result<OperatorBasis> {
    let first = elements
        .first()
        .ok_or_else(|| Error::InvalidInput("a basis needs at least one element".into()))?;
    if !first.is_square() {
        return Err(Error::InvalidInput("basis elements must be square".into()));
    }
    let d = first.rows();
    for m in &elements {
        if !m.is_square() || m.rows() != d {
            return Err(Error::DimMismatch {
                expected: d,
                got: m.rows(),
            });
        }
    }
    if elements.len() > d * d {
        return Err(Error::InvalidInput(format!(
            "{} elements exceed the dimension {} of M({d}, C)",
            elements.len(),
            d * d
        )));
    }
    if let Some(index) = elements.iter().position(|m| !is_unitary(m, tol)) {
        return Err(Error::NonUnitary { index });
    }
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if hs_inner_unchecked(&elements[i], &elements[j]).norm() > tol {
                return Err(Error::NotOrthogonal { i, j });
            }
        }
    }
    Ok(OperatorBasis { d, elements })
}

/// All `|Tr(a_i† b_j)|²`, row-major in `i`.
pub fn overlap_matrix(a: &OperatorBasis, b: &OperatorBasis) -> Result<Vec<Vec<f64>>> {
    if a.d != b.d {
        return Err(Error::DimMismatch {
            expected: a.d,
            got: b.d,
        });
    }
    Ok(a.elements
        .iter()
        .map(|x| b.elements.iter().map(|y| overlap_sqr(x, y)).collect())
        .collect())
}

/// The common value `C` of `|Tr(a_i† b_j)|²` over all cross pairs.
///
/// The first pair fixes the reference value; any pair deviating by more than
/// `tol·max(1, C)` yields `NotUnbiased` for the first such pair in row-major
/// order.
pub fn unbiasedness_constant(a: &OperatorBasis, b: &OperatorBasis, tol: f64) -> Result<f64> {
    if a.d != b.d {
        return Err(Error::DimMismatch {
            expected: a.d,
            got: b.d,
        });
    }
    if a.n() != b.n() {
        return Err(Error::DimMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    let reference = overlap_sqr(&a.elements[0], &b.elements[0]);
    let budget = tol * reference.max(1.0);
    for (i, x) in a.elements.iter().enumerate() {
        for (j, y) in b.elements.iter().enumerate() {
            let observed = overlap_sqr(x, y);
            if (observed - reference).abs() > budget {
                return Err(Error::NotUnbiased {
                    i,
                    j,
                    observed,
                    expected: reference,
                });
            }
        }
    }
    if reference <= tol {
        return Err(Error::ZeroConstant);
    }
    Ok(reference)
}

/// Boolean form of [`unbiasedness_constant`].
pub fn mutually_unbiased(a: &OperatorBasis, b: &OperatorBasis, tol: f64) -> bool {
    unbiasedness_constant(a, b, tol).is_ok()
}

/// Witness `U = Y₁ X₁†` if `U·X_j` equals `Y_j` up to a unit-modulus factor
/// for every `j`; `None` otherwise.
pub fn bases_equivalent(
    x: &OperatorBasis,
    y: &OperatorBasis,
    tol: f64,
) -> Option<ComplexMatrix> {
    if x.d != y.d || x.n() != y.n() {
        return None;
    }
    let u = &y.elements[0] * &x.elements[0].adjoint();
    x.elements
        .iter()
        .zip(&y.elements)
        .all(|(xj, yj)| same_up_to_phase(&(&u * xj), yj, tol))
        .then_some(u)
}

/// Same set of elements up to per-element phases and reordering.
pub fn same_elements_up_to_phase(x: &OperatorBasis, y: &OperatorBasis, tol: f64) -> bool {
    x.d == y.d
        && x.n() == y.n()
        && x.elements
            .iter()
            .all(|a| y.elements.iter().any(|b| same_up_to_phase(a, b, tol)))
}

/// A set of operator bases that are pairwise mutually unbiased with one
/// common constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MuubFamily {
    constant: f64,
    bases: Vec<OperatorBasis>,
}

impl MuubFamily {
    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn bases(&self) -> &[OperatorBasis] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn d(&self) -> usize {
        self.bases[0].d
    }

    pub fn n(&self) -> usize {
        self.bases[0].n()
    }

    /// Every element of every basis, basis-major.
    pub fn unitaries(&self) -> Vec<ComplexMatrix> {
        self.bases
            .iter()
            .flat_map(|b| b.elements.iter().cloned())
            .collect()
    }

    /// Left-multiplies every element of every basis by `v` and re-certifies.
    pub fn left_multiply(&self, v: &ComplexMatrix) -> Result<MuubFamily> {
        let bases = self
            .bases
            .iter()
            .map(|b| b.left_multiply(v))
            .collect::<Result<Vec<_>>>()?;
        certify_family(bases, EPS)
    }
}

/// Certifies a family: at least two bases of equal `(d, n)`, pairwise
/// unbiased, with a common constant equal to `d²/n`. Pairs are checked in
/// parallel; the first failing pair in `(i, j)` order is the one reported.
pub fn certify_family(bases: Vec<OperatorBasis>, tol: f64) -> Result<MuubFamily> {
    if bases.len() < 2 {
        return Err(Error::InvalidInput("a family needs at least two bases".into()));
    }
    let (d, n) = (bases[0].d, bases[0].n());
    for b in &bases {
        if b.d != d {
            return Err(Error::DimMismatch { expected: d, got: b.d });
        }
        if b.n() != n {
            return Err(Error::DimMismatch { expected: n, got: b.n() });
        }
    }
    let expected = (d * d) as f64 / n as f64;
    let pairs: Vec<(usize, usize)> = (0..bases.len())
        .flat_map(|i| (i + 1..bases.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<f64>> = pairs
        .par_iter()
        .map(|&(i, j)| unbiasedness_constant(&bases[i], &bases[j], tol))
        .collect();
    for (&(i, j), r) in pairs.iter().zip(results) {
        let c = r?;
        if (c - expected).abs() > tol * expected.max(1.0) {
            return Err(Error::NotUnbiased {
                i,
                j,
                observed: c,
                expected,
            });
        }
    }
    Ok(MuubFamily {
        constant: expected,
        bases,
    })
}

/// Frame potential `(1/N²) Σ_{a,b} |Tr(a† b)|⁴` over ordered pairs.
pub fn frame_potential(us: &[ComplexMatrix]) -> Result<f64> {
    let first = us
        .first()
        .ok_or_else(|| Error::InvalidInput("frame potential of an empty set".into()))?;
    let d = first.rows();
    for (index, u) in us.iter().enumerate() {
        if !u.is_square() || u.rows() != d {
            return Err(Error::DimMismatch { expected: d, got: u.rows() });
        }
        if !is_unitary(u, EPS) {
            return Err(Error::NonUnitary { index });
        }
    }
    let n = us.len() as f64;
    let total: f64 = us
        .par_iter()
        .map(|a| us.iter().map(|b| overlap_sqr(a, b).powi(2)).sum::<f64>())
        .sum();
    Ok(total / (n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_random_unitary, I, ONE};
    use crate::pauli::pauli;
    use crate::rng::seeded;

    fn paulis() -> Vec<ComplexMatrix> {
        (0..4).map(|i| pauli(i).unwrap()).collect()
    }

    #[test]
    fn certify_paulis() {
        let b = certify_basis(paulis(), EPS).unwrap();
        assert_eq!((b.d(), b.n()), (2, 4));
    }

    #[test]
    fn certify_rejects_non_unitary() {
        let bad = (&pauli(0).unwrap() + &pauli(1).unwrap()).scale(ONE / 2f64.sqrt());
        let err = certify_basis(vec![pauli(0).unwrap(), bad], EPS).unwrap_err();
        assert_eq!(err, Error::NonUnitary { index: 1 });
    }

    #[test]
    fn certify_rejects_duplicates() {
        let x = pauli(1).unwrap();
        let err = certify_basis(vec![pauli(0).unwrap(), x.clone(), x], EPS).unwrap_err();
        assert_eq!(err, Error::NotOrthogonal { i: 1, j: 2 });
    }

    #[test]
    fn certify_rejects_mixed_dimensions_and_empty() {
        let err = certify_basis(vec![pauli(0).unwrap(), ComplexMatrix::identity(3)], EPS);
        assert_eq!(err.unwrap_err(), Error::DimMismatch { expected: 2, got: 3 });
        assert!(matches!(certify_basis(vec![], EPS), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn basis_is_not_unbiased_to_itself() {
        let b = certify_basis(paulis(), EPS).unwrap();
        match unbiasedness_constant(&b, &b, EPS) {
            Err(Error::NotUnbiased { i: 0, j: 1, observed, expected }) => {
                assert!(observed.abs() < EPS);
                assert!((expected - 4.0).abs() < EPS);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn n2_pair_has_constant_two() {
        let id = pauli(0).unwrap();
        let z = pauli(3).unwrap();
        let s = ONE / 2f64.sqrt();
        let a = certify_basis(vec![id.clone(), z.clone()], EPS).unwrap();
        let plus = (&id + &z.scale(I)).scale(s);
        let minus = (&id - &z.scale(I)).scale(s);
        let b = certify_basis(vec![plus, minus], EPS).unwrap();
        let c = unbiasedness_constant(&a, &b, EPS).unwrap();
        assert!((c - 2.0).abs() < EPS);
    }

    #[test]
    fn zero_constant_detected() {
        let a = certify_basis(vec![pauli(0).unwrap(), pauli(3).unwrap()], EPS).unwrap();
        let b = certify_basis(vec![pauli(1).unwrap(), pauli(2).unwrap()], EPS).unwrap();
        assert_eq!(unbiasedness_constant(&a, &b, EPS), Err(Error::ZeroConstant));
    }

    #[test]
    fn equivalence_witness_is_the_left_factor() {
        let x = certify_basis(paulis(), EPS).unwrap();
        let v = haar_random_unitary(2, &mut seeded(9));
        let y = x.left_multiply(&v).unwrap();
        let u = bases_equivalent(&x, &y, EPS).expect("equivalent");
        assert!(u.max_abs_diff(&v) < 1e-12);
    }

    #[test]
    fn frame_potential_of_identity() {
        let fp = frame_potential(&[ComplexMatrix::identity(2)]).unwrap();
        assert!((fp - 16.0).abs() < EPS);
    }
}
