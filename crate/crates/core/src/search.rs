//! Exhaustive root-of-unity search for unitaries unbiased to a seed basis.
//!
//! A candidate is `U = Σ_j ω^{t_j} · seed_j / √n` with `ω = exp(2πi/r)` and
//! `t₀ = 0` (global phases are quotiented out up front). Candidates that are
//! unitary are re-certified against the seed, deduplicated up to phase,
//! grouped into orthogonal bases by exact `n`-clique enumeration, and the
//! bases are assembled into families by exact maximum-clique search over the
//! "mutually unbiased" graph.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{certify_basis, certify_family, mutually_unbiased, MuubFamily, OperatorBasis};
use crate::builtin::pauli_basis;
use crate::clique::{k_cliques, maximum_cliques, Adjacency};
use crate::error::{Error, Result};
use crate::linalg::{
    canonical_phase, hs_inner_unchecked, is_unitary, linear_combination, overlap_sqr,
    same_up_to_phase, ComplexMatrix, EPS,
};
use crate::pauli::{pauli, root_of_unity, shift, weyl_basis};

/// Scans larger than this are refused unless explicitly forced.
pub const DEFAULT_CANDIDATE_LIMIT: u128 = 100_000_000;

/// Exponents `t_j ∈ ℤ_r` of one candidate, `t₀ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseAssignment {
    order: usize,
    exponents: Vec<usize>,
}

impl PhaseAssignment {
    /// Decodes candidate number `index`: `t₁` is the most significant base-`r`
    /// digit, `t_{n-1}` the least.
    pub fn from_index(order: usize, n: usize, mut index: u128) -> Self {
        let mut exponents = vec![0; n];
        for t in exponents[1..].iter_mut().rev() {
            *t = (index % order as u128) as usize;
            index /= order as u128;
        }
        Self { order, exponents }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        let norm = (self.exponents.len() as f64).sqrt();
        self.exponents
            .iter()
            .map(|&t| root_of_unity(self.order, t) / norm)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub d: usize,
    pub n: usize,
    pub order: usize,
    pub candidates_scanned: u128,
    /// Phase-canonicalized, deduplicated, in enumeration order.
    pub unitaries_found: Vec<ComplexMatrix>,
    /// The assignment that produced each entry of `unitaries_found`.
    pub assignments: Vec<PhaseAssignment>,
    pub bases: Vec<OperatorBasis>,
    /// Every maximum family over `{seed} ∪ bases`; the seed is always the
    /// first basis of each family.
    pub families: Vec<MuubFamily>,
}

impl SearchReport {
    /// Size of the largest family, counting the seed. A seed with no
    /// unbiased partner is a family of one.
    pub fn largest_family(&self) -> usize {
        self.families.iter().map(MuubFamily::len).max().unwrap_or(1)
    }
}

/// `4` for qubits (the solutions need quarter phases), `d` otherwise.
pub fn default_phase_order(d: usize) -> usize {
    if d == 2 {
        4
    } else {
        d
    }
}

/// Seed bases the command line knows by `(d, n)`.
pub fn standard_seed(d: usize, n: usize) -> Result<OperatorBasis> {
    let elements = match (d, n) {
        (2, 4) => return Ok(pauli_basis()),
        (2, 3) => vec![pauli(0)?, pauli(1)?, pauli(2)?],
        (2, 2) => vec![pauli(0)?, pauli(3)?],
        (d, n) if d >= 2 && n == d * d => weyl_basis(d),
        (d, n) if d >= 3 && n == d => {
            let x = shift(d);
            (0..d).map(|k| x.pow(k)).collect()
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "no standard seed basis for d = {d}, n = {n}"
            )))
        }
    };
    certify_basis(elements, EPS)
}

fn candidate_count(order: usize, n: usize) -> Option<u128> {
    (order as u128).checked_pow(u32::try_from(n.checked_sub(1)?).ok()?)
}

/// Exhaustive scan with the default candidate limit.
pub fn phase_search(seed: &OperatorBasis, order: usize, tol: f64) -> Result<SearchReport> {
    phase_search_with_limit(seed, order, tol, Some(DEFAULT_CANDIDATE_LIMIT))
}

/// Exhaustive scan; `limit = None` disables the cost guard.
pub fn phase_search_with_limit(
    seed: &OperatorBasis,
    order: usize,
    tol: f64,
    limit: Option<u128>,
) -> Result<SearchReport> {
    if order < 2 {
        return Err(Error::InvalidInput(format!("phase order must be at least 2, got {order}")));
    }
    let n = seed.n();
    let d = seed.d();
    let total = candidate_count(order, n).ok_or(Error::TooManyCandidates {
        candidates: u128::MAX,
        limit: limit.unwrap_or(u128::MAX),
    })?;
    if let Some(limit) = limit {
        if total > limit {
            return Err(Error::TooManyCandidates { candidates: total, limit });
        }
    }

    let elements: Vec<&ComplexMatrix> = seed.elements().iter().collect();
    let expected = (d * d) as f64 / n as f64;

    let survivors: Vec<(PhaseAssignment, ComplexMatrix)> = (0..total)
        .into_par_iter()
        .filter_map(|index| {
            let assignment = PhaseAssignment::from_index(order, n, index);
            let u = linear_combination(&assignment.coefficients(), &elements);
            is_unitary(&u, tol).then_some((assignment, u))
        })
        .collect();

    let mut unitaries_found: Vec<ComplexMatrix> = Vec::new();
    let mut assignments = Vec::new();
    for (assignment, u) in survivors {
        let unbiased = seed
            .elements()
            .iter()
            .all(|s| (overlap_sqr(s, &u) - expected).abs() <= tol * expected.max(1.0));
        if !unbiased {
            continue;
        }
        if unitaries_found.iter().any(|v| same_up_to_phase(v, &u, tol)) {
            continue;
        }
        unitaries_found.push(canonical_phase(&u));
        assignments.push(assignment);
    }

    let bases = group_into_bases(&unitaries_found, n, tol)?;
    let families = assemble_families(seed, &bases, tol)?;

    Ok(SearchReport {
        d,
        n,
        order,
        candidates_scanned: total,
        unitaries_found,
        assignments,
        bases,
        families,
    })
}

fn sort_key(m: &ComplexMatrix) -> Vec<(i64, i64)> {
    let q = |x: f64| (x * 1e7).round() as i64;
    m.entries().iter().map(|z| (q(z.re), q(z.im))).collect()
}

/// Every `n`-subset of `unitaries` that is pairwise orthogonal, as a basis
/// with elements in canonical order.
pub fn group_into_bases(
    unitaries: &[ComplexMatrix],
    n: usize,
    tol: f64,
) -> Result<Vec<OperatorBasis>> {
    let m = unitaries.len();
    let adj: Adjacency = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i != j && hs_inner_unchecked(&unitaries[i], &unitaries[j]).norm() <= tol)
                .collect()
        })
        .collect();
    let mut bases = k_cliques(&adj, n)
        .into_iter()
        .map(|clique| {
            let mut elements: Vec<ComplexMatrix> =
                clique.into_iter().map(|i| unitaries[i].clone()).collect();
            elements.sort_by_cached_key(sort_key);
            certify_basis(elements, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    bases.sort_by_cached_key(|b| b.elements().iter().map(sort_key).collect::<Vec<_>>());
    Ok(bases)
}

/// Maximum cliques of the unbiasedness graph on `{seed} ∪ bases`.
fn assemble_families(
    seed: &OperatorBasis,
    bases: &[OperatorBasis],
    tol: f64,
) -> Result<Vec<MuubFamily>> {
    if bases.is_empty() {
        return Ok(Vec::new());
    }
    let vertices: Vec<&OperatorBasis> = std::iter::once(seed).chain(bases).collect();
    let m = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let edges: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| mutually_unbiased(vertices[i], vertices[j], tol))
        .collect();
    let mut adj = vec![vec![false; m]; m];
    for (&(i, j), e) in pairs.iter().zip(edges) {
        adj[i][j] = e;
        adj[j][i] = e;
    }
    maximum_cliques(&adj)
        .into_iter()
        .filter(|clique| clique.len() >= 2 && clique[0] == 0)
        .map(|clique| certify_family(clique.into_iter().map(|i| vertices[i].clone()).collect(), tol))
        .collect()
}

/// Size of the largest family reachable from `seed` at phase order `order`.
pub fn count_family(seed: &OperatorBasis, order: usize) -> Result<usize> {
    Ok(phase_search(seed, order, EPS)?.largest_family())
}

/// Whether an index set of Weyl exponents is closed under componentwise
/// addition mod `d`. The set must contain `(0, 0)`.
pub fn closure_check(index_set: &[(usize, usize)], d: usize) -> Result<bool> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("dimension {d} must be at least 2")));
    }
    if let Some(&(a, b)) = index_set.iter().find(|&&(a, b)| a >= d || b >= d) {
        return Err(Error::IndexOutOfRange { index: a.max(b), bound: d });
    }
    let set: BTreeSet<(usize, usize)> = index_set.iter().copied().collect();
    if !set.contains(&(0, 0)) {
        return Err(Error::InvalidInput("index set must contain (0, 0)".into()));
    }
    Ok(set
        .iter()
        .all(|&(a, b)| set.iter().all(|&(c, e)| set.contains(&((a + c) % d, (b + e) % d)))))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonexistenceSearch {
    pub order: usize,
    pub candidates_scanned: u128,
    pub unitaries_found: usize,
    pub complete_bases: usize,
}

/// Certificate for one seed `{𝕀, σ_i, σ_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisPairCertificate {
    pub axes: (usize, usize),
    /// `|Tr(P† σ_iσ_j)|` for `P = 𝕀, σ_i, σ_j`.
    pub product_overlaps: [f64; 3],
    /// `Tr((σ_iσ_j)† σ_iσ_j)`.
    pub product_norm_sqr: f64,
    pub span_excluded: bool,
    pub searches: Vec<NonexistenceSearch>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonexistenceReport {
    pub pairs: Vec<AxisPairCertificate>,
    /// Span exclusion holds and no search found a complete second basis.
    pub certified: bool,
}

pub const N3_SEARCH_ORDERS: [usize; 2] = [4, 8];

/// No qubit basis of a three-dimensional subspace has an unbiased partner:
/// `σ_iσ_j` falls outside `span{𝕀, σ_i, σ_j}`, and exhaustive phase scans at
/// orders 4 and 8 find no complete second basis.
pub fn certify_n3_nonexistence() -> Result<NonexistenceReport> {
    let mut pairs = Vec::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let id = pauli(0)?;
        let si = pauli(i)?;
        let sj = pauli(j)?;
        let product = &si * &sj;
        let product_overlaps = [
            hs_inner_unchecked(&id, &product).norm(),
            hs_inner_unchecked(&si, &product).norm(),
            hs_inner_unchecked(&sj, &product).norm(),
        ];
        let product_norm_sqr = product.norm_sqr();
        let span_excluded =
            product_overlaps.iter().all(|x| *x <= EPS) && product_norm_sqr > EPS;

        let seed = certify_basis(vec![id, si, sj], EPS)?;
        let searches = N3_SEARCH_ORDERS
            .iter()
            .map(|&order| {
                phase_search(&seed, order, EPS).map(|r| NonexistenceSearch {
                    order,
                    candidates_scanned: r.candidates_scanned,
                    unitaries_found: r.unitaries_found.len(),
                    complete_bases: r.bases.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        pairs.push(AxisPairCertificate {
            axes: (i, j),
            product_overlaps,
            product_norm_sqr,
            span_excluded,
            searches,
        });
    }
    let certified = pairs
        .iter()
        .all(|p| p.span_excluded && p.searches.iter().all(|s| s.complete_bases == 0));
    Ok(NonexistenceReport { pairs, certified })
}
