use muub::linalg::{hs_inner, ComplexMatrix};
use muub::pauli::pauli;
use muub::search::{phase_search, standard_seed, SearchReport};
use muub::EPS;

fn run(d: usize, n: usize, order: usize) -> SearchReport {
    phase_search(&standard_seed(d, n).unwrap(), order, EPS).unwrap()
}

/// Counts pairwise-orthogonal `n`-subsets by walking every bitmask.
fn brute_force_bases(us: &[ComplexMatrix], n: usize) -> usize {
    assert!(us.len() <= 40);
    let m = us.len();
    let orth: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| hs_inner(&us[i], &us[j]).unwrap().norm() <= EPS).collect())
        .collect();
    let mut count = 0;
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((next, chosen)) = stack.pop() {
        if chosen.len() == n {
            count += 1;
            continue;
        }
        for k in next..m {
            if chosen.iter().all(|&c| orth[c][k]) {
                let mut more = chosen.clone();
                more.push(k);
                stack.push((k + 1, more));
            }
        }
    }
    count
}

#[test]
fn grouping_is_exhaustive_on_small_searches() {
    for (d, n, order) in [(2, 4, 4), (2, 2, 4), (3, 3, 3), (2, 3, 4), (2, 3, 8)] {
        let r = run(d, n, order);
        assert!(r.unitaries_found.len() <= 40);
        assert_eq!(brute_force_bases(&r.unitaries_found, n), r.bases.len(), "d={d} n={n}");
    }
}

#[test]
fn every_survivor_is_unbiased_to_the_seed() {
    for (d, n, order) in [(2, 4, 4), (3, 9, 3), (3, 3, 3)] {
        let seed = standard_seed(d, n).unwrap();
        let r = phase_search(&seed, order, EPS).unwrap();
        let c = (d * d) as f64 / n as f64;
        for u in &r.unitaries_found {
            for s in seed.elements() {
                assert!((hs_inner(s, u).unwrap().norm_sqr() - c).abs() <= EPS * c.max(1.0));
            }
        }
    }
}

#[test]
fn qubit_coefficients_satisfy_the_sign_relations() {
    // p_k = Tr(σ_k U)/2; unbiasedness to the Pauli basis forces
    // p₀² = −p₃² and p₁² = p₂²
    let r = run(2, 4, 4);
    for u in &r.unitaries_found {
        let p: Vec<_> = (0..4).map(|k| hs_inner(&pauli(k).unwrap(), u).unwrap() / 2.0).collect();
        let sq: Vec<_> = p.iter().map(|z| z * z).collect();
        assert!((sq[0] + sq[3]).norm() < 1e-12);
        assert!((sq[1] - sq[2]).norm() < 1e-12);
    }
}

#[test]
fn reports_are_reproducible() {
    let a = run(3, 9, 3);
    let b = run(3, 9, 3);
    assert_eq!(a.unitaries_found, b.unitaries_found);
    assert_eq!(a.assignments, b.assignments);
    assert_eq!(a.bases, b.bases);
    assert_eq!(a.families, b.families);
}

#[test]
fn qutrit_graph_is_much_larger_than_the_family() {
    let r = run(3, 9, 3);
    assert_eq!(r.candidates_scanned, 6561);
    assert_eq!(r.unitaries_found.len(), 135);
    assert_eq!(r.bases.len(), 255);
    assert_eq!(r.families.len(), 1);
    assert_eq!(r.families[0].len(), 8);
}

#[test]
fn three_element_qubit_seeds_have_survivors_but_no_bases() {
    for order in [4, 8] {
        let r = run(2, 3, order);
        assert!(r.bases.is_empty());
        // survivors exist, so the emptiness comes from orthogonality alone
        assert!(!r.unitaries_found.is_empty());
    }
}
