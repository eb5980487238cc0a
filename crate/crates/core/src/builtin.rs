//! Closed-form families for qubits and qutrits.
//!
//! Every constructor runs its output through [`certify_family`], so a
//! transcription slip surfaces as an error instead of a wrong family.

use num_complex::Complex64;

use crate::basis::{certify_basis, certify_family, MuubFamily, OperatorBasis};
use crate::error::{Error, Result};
use crate::linalg::{linear_combination, ComplexMatrix, EPS, I, ONE};
use crate::pauli::{clock, pauli, root_of_unity, shift, weyl, weyl_basis, WeylIndex};

/// `{𝕀, σ₁, σ₂, σ₃}`.
pub fn pauli_basis() -> OperatorBasis {
    certify_basis((0..4).map(|i| pauli(i).unwrap()).collect(), EPS).expect("Pauli basis")
}

/// Sign vectors `(d₁, d₂, d₃) ∈ {±1}³` with `d₁d₂d₃ = (−1)^k`, `+1` first.
pub fn qubit_sign_vectors(k: usize) -> Vec<[i8; 3]> {
    let parity = if k.is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::with_capacity(4);
    for d1 in [1i8, -1] {
        for d2 in [1i8, -1] {
            for d3 in [1i8, -1] {
                if d1 * d2 * d3 == parity {
                    out.push([d1, d2, d3]);
                }
            }
        }
    }
    out
}

/// `(𝕀 + i Σ_j d_j σ_j) / 2`.
pub fn qubit_rotation(signs: [i8; 3]) -> ComplexMatrix {
    let id = pauli(0).unwrap();
    let mut acc = id;
    for (j, s) in signs.iter().enumerate() {
        acc = &acc + &pauli(j + 1).unwrap().scale(I * f64::from(*s));
    }
    acc.scale(Complex64::new(0.5, 0.0))
}

/// `ℬ_k` for `k ∈ {1, 2}`.
pub fn qubit_rotation_basis(k: usize) -> Result<OperatorBasis> {
    if !(1..=2).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, bound: 3 });
    }
    certify_basis(
        qubit_sign_vectors(k).into_iter().map(qubit_rotation).collect(),
        EPS,
    )
}

/// The maximal qubit family `{ℬ₀, ℬ₁, ℬ₂}` on all of `M(2, ℂ)`, `C = 1`.
pub fn builtin_qubit_family() -> MuubFamily {
    let bases = vec![
        pauli_basis(),
        qubit_rotation_basis(1).unwrap(),
        qubit_rotation_basis(2).unwrap(),
    ];
    certify_family(bases, EPS).expect("qubit family")
}

/// Two-dimensional qubit family: `{𝕀, σ_axis}` and `{(𝕀 ± iσ_axis)/√2}`,
/// `C = 2`.
pub fn builtin_qubit_n2(axis: usize) -> Result<MuubFamily> {
    if !(2..=3).contains(&axis) {
        return Err(Error::InvalidInput(format!("axis must be 2 or 3, got {axis}")));
    }
    let id = pauli(0)?;
    let sigma = pauli(axis)?;
    let s = ONE / 2f64.sqrt();
    let seed = certify_basis(vec![id.clone(), sigma.clone()], EPS)?;
    let rotated = certify_basis(
        vec![
            (&id + &sigma.scale(I)).scale(s),
            (&id - &sigma.scale(I)).scale(s),
        ],
        EPS,
    )?;
    certify_family(vec![seed, rotated], EPS)
}

/// Exponents of `η₃` on the nine terms
/// `𝕀, X, X², Z, Z², XZ, (XZ)², XZ², (XZ²)²` of each `R_l`, `l = 1..=7`.
const QUTRIT_R_EXPONENTS: [[usize; 9]; 7] = [
    [0, 1, 2, 1, 2, 1, 2, 1, 2],
    [0, 0, 1, 0, 1, 2, 0, 2, 0],
    [0, 0, 1, 0, 2, 0, 2, 2, 2],
    [0, 0, 1, 0, 2, 1, 0, 1, 1],
    [0, 0, 2, 0, 1, 0, 2, 1, 0],
    [0, 0, 2, 0, 1, 1, 0, 0, 2],
    [0, 0, 2, 0, 2, 2, 2, 0, 1],
];

/// `R_l / 3` for `l ∈ 1..=7`. The nine-term sums have Hilbert-Schmidt norm
/// squared 9; dividing by 3 makes them unitary.
pub fn qutrit_rotation(l: usize) -> Result<ComplexMatrix> {
    if !(1..=7).contains(&l) {
        return Err(Error::IndexOutOfRange { index: l, bound: 8 });
    }
    let x = shift(3);
    let z = clock(3);
    let xz = &x * &z;
    let xz2 = &xz * &z;
    let terms = [
        ComplexMatrix::identity(3),
        x.clone(),
        x.pow(2),
        z.clone(),
        z.pow(2),
        xz.clone(),
        xz.pow(2),
        xz2.clone(),
        xz2.pow(2),
    ];
    let coeffs: Vec<Complex64> = QUTRIT_R_EXPONENTS[l - 1]
        .iter()
        .map(|&t| root_of_unity(3, t) / 3.0)
        .collect();
    let refs: Vec<&ComplexMatrix> = terms.iter().collect();
    Ok(linear_combination(&coeffs, &refs))
}

/// `ℬ₃₀ = {X^j Z^k}` in lexicographic `(j, k)` order.
pub fn qutrit_weyl_basis() -> OperatorBasis {
    certify_basis(weyl_basis(3), EPS).expect("qutrit Weyl basis")
}

/// The maximal qutrit family: `ℬ₃₀` and `ℬ₃ₗ = {R_l X^j Z^k / 3}` for
/// `l = 1..=7`, eight bases with `C = 1`.
pub fn builtin_qutrit_family() -> Result<MuubFamily> {
    let seed = qutrit_weyl_basis();
    let mut bases = vec![seed.clone()];
    for l in 1..=7 {
        let r = qutrit_rotation(l)?;
        bases.push(seed.left_multiply(&r)?);
    }
    certify_family(bases, EPS)
}

/// Three-dimensional qutrit subspace family generated by a Weyl operator
/// `A ≠ 𝕀`: `𝒟₀ = {𝕀, A, A²}` and `𝒟_j = {D, DA, DA²}` with
/// `D ∝ 𝕀 + η₃^j A + η₃^j A²` for `j = 1, 2`. `C = 3`.
pub fn builtin_qutrit_subspace(a: WeylIndex) -> Result<MuubFamily> {
    if a.d() != 3 {
        return Err(Error::InvalidInput(format!(
            "qutrit subspace family needs d = 3, got {}",
            a.d()
        )));
    }
    if a.is_identity() {
        return Err(Error::InvalidGenerator);
    }
    let gen = weyl(a);
    let gen2 = gen.pow(2);
    let id = ComplexMatrix::identity(3);
    let seed = certify_basis(vec![id.clone(), gen.clone(), gen2.clone()], EPS)
        .map_err(|_| Error::InvalidGenerator)?;
    let mut bases = vec![seed];
    for j in 1..=2 {
        let phase = root_of_unity(3, j);
        let raw = linear_combination(&[ONE, phase, phase], &[&id, &gen, &gen2]);
        let d = raw.scale(ONE / (raw.norm_sqr() / 3.0).sqrt());
        bases.push(certify_basis(vec![d.clone(), &d * &gen, &d * &gen2], EPS)?);
    }
    certify_family(bases, EPS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::unbiasedness_constant;
    use crate::linalg::is_unitary;

    #[test]
    fn qubit_family_shape() {
        let fam = builtin_qubit_family();
        assert_eq!(fam.len(), 3);
        assert!((fam.constant() - 1.0).abs() < EPS);
        assert_eq!(fam.bases()[1].n(), 4);
        let c = unbiasedness_constant(&fam.bases()[1], &fam.bases()[2], EPS).unwrap();
        assert!((c - 1.0).abs() < EPS);
    }

    #[test]
    fn qubit_rotation_coefficients_have_modulus_one_half() {
        let fam = builtin_qubit_family();
        let b0 = pauli_basis();
        for basis in &fam.bases()[1..] {
            for u in basis.elements() {
                for p in b0.elements() {
                    // coefficient over the Pauli basis is Tr(p† u)/2
                    let coeff = crate::linalg::hs_inner(p, u).unwrap() / 2.0;
                    assert!((coeff.norm() - 0.5).abs() < EPS);
                }
            }
        }
    }

    #[test]
    fn n2_families() {
        for axis in [2, 3] {
            let fam = builtin_qubit_n2(axis).unwrap();
            assert_eq!(fam.len(), 2);
            assert!((fam.constant() - 2.0).abs() < EPS);
            // rotated elements live in span{𝕀, σ_axis}
            let sigma = pauli(axis).unwrap();
            let id = pauli(0).unwrap();
            for u in fam.bases()[1].elements() {
                let a = crate::linalg::hs_inner(&id, u).unwrap() / 2.0;
                let b = crate::linalg::hs_inner(&sigma, u).unwrap() / 2.0;
                let rebuilt = &id.scale(a) + &sigma.scale(b);
                assert!(rebuilt.max_abs_diff(u) < EPS);
            }
        }
        assert!(builtin_qubit_n2(1).is_err());
    }

    #[test]
    fn qutrit_rotations_are_unitary() {
        for l in 1..=7 {
            assert!(is_unitary(&qutrit_rotation(l).unwrap(), EPS), "R_{l}");
        }
        assert!(qutrit_rotation(0).is_err());
        assert!(qutrit_rotation(8).is_err());
    }

    #[test]
    fn qutrit_family_has_eight_bases() {
        let fam = builtin_qutrit_family().unwrap();
        assert_eq!(fam.len(), 8);
        assert!((fam.constant() - 1.0).abs() < EPS);
    }

    #[test]
    fn qutrit_subspace_for_every_generator() {
        for a in 0..3 {
            for b in 0..3 {
                let idx = WeylIndex::new(3, a, b).unwrap();
                let fam = builtin_qutrit_subspace(idx);
                if idx.is_identity() {
                    assert_eq!(fam.unwrap_err(), Error::InvalidGenerator);
                } else {
                    let fam = fam.unwrap();
                    assert_eq!(fam.len(), 3);
                    assert!((fam.constant() - 3.0).abs() < EPS);
                    let c = unbiasedness_constant(&fam.bases()[1], &fam.bases()[2], EPS).unwrap();
                    assert!((c - 3.0).abs() < EPS);
                }
            }
        }
        let qubit = WeylIndex::new(2, 1, 0).unwrap();
        assert!(builtin_qutrit_subspace(qubit).is_err());
    }
}
