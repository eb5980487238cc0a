use muub::basis::{certify_basis, certify_family, frame_potential, unbiasedness_constant};
use muub::builtin::{builtin_qubit_family, builtin_qutrit_family};
use muub::linalg::{hs_inner, haar_random_state, haar_random_unitary, vectorize, StateVector};
use muub::rng::seeded;
use muub::{ComplexMatrix, EPS};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn left_multiplication_keeps_the_family(seed in any::<u64>(), qutrit in any::<bool>()) {
        let fam = if qutrit { builtin_qutrit_family().unwrap() } else { builtin_qubit_family() };
        let v = haar_random_unitary(fam.d(), &mut seeded(seed));
        let moved = fam.left_multiply(&v).unwrap();
        prop_assert!((moved.constant() - fam.constant()).abs() < EPS);
        prop_assert_eq!(moved.len(), fam.len());
        let c = unbiasedness_constant(&moved.bases()[0], &moved.bases()[1], EPS).unwrap();
        prop_assert!((c - fam.constant()).abs() < 1e-9);
    }

    #[test]
    fn vectorization_is_an_isometry(seed in any::<u64>(), d in 2usize..5) {
        let mut rng = seeded(seed);
        let u = haar_random_unitary(d, &mut rng);
        let w = haar_random_unitary(d, &mut rng);
        let lhs = vectorize(&u).inner(&vectorize(&w));
        let rhs = hs_inner(&u, &w).unwrap() / d as f64;
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert!(vectorize(&u).is_maximally_entangled(d, 1e-9));
    }

    #[test]
    fn frame_potential_never_beats_haar(seed in any::<u64>(), k in 2usize..16) {
        let mut rng = seeded(seed);
        let us: Vec<ComplexMatrix> = (0..k).map(|_| haar_random_unitary(2, &mut rng)).collect();
        prop_assert!(frame_potential(&us).unwrap() >= 2.0 - 1e-9);
    }

    #[test]
    fn haar_states_are_normalized(seed in any::<u64>(), d in 1usize..9) {
        let s = haar_random_state(d, &mut seeded(seed));
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn global_phases_do_not_change_certification(theta in 0.0f64..6.3, k in 0usize..8) {
        let fam = builtin_qutrit_family().unwrap();
        let phase = Complex64::from_polar(1.0, theta);
        let mut elements = fam.bases()[1].elements().to_vec();
        elements[k] = elements[k].scale(phase);
        let rotated = certify_basis(elements, EPS).unwrap();
        let c = unbiasedness_constant(&fam.bases()[0], &rotated, EPS).unwrap();
        prop_assert!((c - 1.0).abs() < 1e-9);
    }
}

#[test]
fn muub_elements_vectorize_to_maximally_entangled_states() {
    for fam in [builtin_qubit_family(), builtin_qutrit_family().unwrap()] {
        for u in fam.unitaries() {
            assert!(vectorize(&u).is_maximally_entangled(fam.d(), EPS));
        }
    }
}

#[test]
fn unbiased_unitary_bases_give_unbiased_state_bases() {
    // |⟨⟨a|b⟩⟩|² = |Tr(a†b)|²/d² = C/d², which is 1/d² when C = 1
    let fam = builtin_qutrit_family().unwrap();
    let states: Vec<Vec<StateVector>> = fam
        .bases()
        .iter()
        .map(|b| b.elements().iter().map(vectorize).collect())
        .collect();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            for a in &states[i] {
                for b in &states[j] {
                    assert!((a.overlap_sqr(b) - 1.0 / 9.0).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn perturbed_family_is_rejected_with_pair_indices() {
    let fam = builtin_qubit_family();
    let mut bases: Vec<_> = fam.bases().to_vec();
    let x = muub::pauli::pauli(1).unwrap();
    // σ₁ times a Pauli basis is the Pauli basis again, so basis 2 becomes
    // orthogonal to basis 0 instead of unbiased
    bases[2] = bases[0].left_multiply(&x).unwrap();
    match certify_family(bases, EPS) {
        Err(muub::Error::ZeroConstant) | Err(muub::Error::NotUnbiased { .. }) => {}
        other => panic!("unexpected: {other:?}"),
    }
}
