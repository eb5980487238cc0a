//! Unitaries as maximally entangled states, and what that buys.
//!
//! `U ↦ |U⟩⟩/√d` sends orthogonal unitary bases to orthonormal bases of
//! maximally entangled states, and mutually unbiased unitary bases with
//! `C = 1` to mutually unbiased state bases. This module builds those state
//! bases, tabulates how the qubit unitary bases act on single-qubit and Bell
//! states, and computes the average fidelity of discriminating the twelve
//! qubit unitaries through their entangled images.
//!
//! Bell conventions: `Φ± = (|00⟩ ± |11⟩)/√2`, `Ψ+ = (|01⟩ + |10⟩)/√2`,
//! `Ψ− = (|10⟩ − |01⟩)/√2`. With this sign on `Ψ−` the vectorization of
//! `(𝕀 + iΣ d_j σ_j)/2` is exactly `(E₀ + Σ d_j E_j)/2` over the magic basis
//! `E = (Φ+, iΨ+, Ψ−, iΦ−)`.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builtin::{builtin_qubit_family, qubit_sign_vectors};
use crate::error::{Error, Result};
use crate::linalg::{
    haar_random_state, hs_inner_unchecked, tensor, ComplexMatrix, StateVector, EPS, I, ONE, ZERO,
};
use crate::pauli::{rep_operator, representation, root_of_unity, weyl_basis, Gf4};
use crate::rng::stream;

/// `d²` orthonormal, maximally entangled states on `ℋ_d ⊗ ℋ_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntangledBasis {
    d: usize,
    states: Vec<StateVector>,
}

impl EntangledBasis {
    pub fn new(d: usize, states: Vec<StateVector>) -> Result<Self> {
        if states.len() != d * d {
            return Err(Error::DimMismatch {
                expected: d * d,
                got: states.len(),
            });
        }
        for (k, s) in states.iter().enumerate() {
            if s.dim() != d * d {
                return Err(Error::DimMismatch {
                    expected: d * d,
                    got: s.dim(),
                });
            }
            if !s.is_maximally_entangled(d, EPS) {
                return Err(Error::InvalidInput(format!("state {k} is not maximally entangled")));
            }
        }
        for i in 0..states.len() {
            for j in i + 1..states.len() {
                if states[i].inner(&states[j]).norm() > EPS {
                    return Err(Error::NotOrthogonal { i, j });
                }
            }
        }
        Ok(Self { d, states })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    /// Index of the member equal to `state` up to phase.
    pub fn position(&self, state: &StateVector, tol: f64) -> Option<usize> {
        self.states.iter().position(|s| s.same_ray(state, tol))
    }

    /// Largest and smallest `|⟨a|b⟩|` over all cross pairs.
    pub fn cross_overlap_range(&self, other: &EntangledBasis) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for a in &self.states {
            for b in &other.states {
                let v = a.inner(b).norm();
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }
}

fn state(amps: [Complex64; 4]) -> StateVector {
    StateVector::new(amps.to_vec()).expect("normalized literal")
}

pub fn phi_plus() -> StateVector {
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    state([s, ZERO, ZERO, s])
}

pub fn phi_minus() -> StateVector {
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    state([s, ZERO, ZERO, -s])
}

pub fn psi_plus() -> StateVector {
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    state([ZERO, s, s, ZERO])
}

pub fn psi_minus() -> StateVector {
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    state([ZERO, -s, s, ZERO])
}

/// `𝔅₀` in the order `Φ+, Ψ+, Ψ−, Φ−`.
pub fn bell_states() -> [StateVector; 4] {
    [phi_plus(), psi_plus(), psi_minus(), phi_minus()]
}

/// `(Φ+, iΨ+, Ψ−, iΦ−)`.
pub fn magic_states() -> [StateVector; 4] {
    [phi_plus(), psi_plus().scale(I), psi_minus(), phi_minus().scale(I)]
}

/// `𝔅₀` (Bell) and `𝔅₁, 𝔅₂`, whose members are `(E₀ + Σ c_j E_j)/2` with
/// `c ∈ {±1}³`, `c₁c₂c₃ = (−1)^k`, in the same sign order as the unitary
/// bases `ℬ₁, ℬ₂`.
pub fn bell_and_magic_bases() -> [EntangledBasis; 3] {
    let magic = magic_states();
    let build = |k: usize| {
        let states = qubit_sign_vectors(k)
            .into_iter()
            .map(|c| {
                let mut amps = magic[0].amplitudes().to_vec();
                for (j, sign) in c.iter().enumerate() {
                    for (a, e) in amps.iter_mut().zip(magic[j + 1].amplitudes()) {
                        *a += e * f64::from(*sign);
                    }
                }
                StateVector::new(amps.into_iter().map(|z| z / 2.0).collect()).expect("normalized")
            })
            .collect();
        EntangledBasis::new(2, states).expect("magic basis")
    };
    [
        EntangledBasis::new(2, bell_states().to_vec()).expect("Bell basis"),
        build(1),
        build(2),
    ]
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Largest dimension [`prime_entangled_mubs`] accepts.
pub const MAX_PRIME_DIM: usize = 7;

/// `|Tr(V W)| = 1` for every Weyl operator `W`.
fn flat_weyl_spectrum(v: &ComplexMatrix, weyls: &[ComplexMatrix]) -> bool {
    let vt = v.transpose();
    weyls
        .iter()
        .all(|w| (hs_inner_unchecked(&vt.adjoint(), w).norm() - 1.0).abs() <= EPS)
}

/// A unitary `C = D_c F` (quadratic phase after Fourier) such that every power
/// `C¹ … C^d` has a flat Weyl spectrum. The smallest working `c` is used.
///
/// The flat-spectrum property makes `{C^k W}` and `{C^l W}` mutually unbiased
/// operator bases for `k ≠ l`, which is what the entangled construction needs.
pub fn transition_unitary(d: usize) -> Result<ComplexMatrix> {
    if !is_prime(d) {
        return Err(Error::NonPrime(d));
    }
    let s = 1.0 / (d as f64).sqrt();
    let mut fourier = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            fourier.set(j, k, root_of_unity(d, j * k) * s);
        }
    }
    let weyls = weyl_basis(d);
    // quadratic phases live on 4th roots for d = 2 and on d-th roots otherwise
    let phase_order = if d == 2 { 4 } else { d };
    for c in 0..phase_order {
        let phases: Vec<Complex64> = (0..d)
            .map(|j| root_of_unity(phase_order, c * j * j))
            .collect();
        let candidate = &ComplexMatrix::diagonal(&phases) * &fourier;
        let mut power = candidate.clone();
        let mut ok = true;
        for _ in 1..=d {
            if !flat_weyl_spectrum(&power, &weyls) {
                ok = false;
                break;
            }
            power = &power * &candidate;
        }
        if ok {
            return Ok(candidate);
        }
    }
    Err(Error::InvalidInput(format!(
        "no quadratic-phase transition unitary found for d = {d}"
    )))
}

/// Applies `𝕀 ⊗ u` to a state on `ℋ_d ⊗ ℋ_d`.
fn apply_second(u: &ComplexMatrix, psi: &StateVector) -> StateVector {
    psi.evolve(&tensor(&ComplexMatrix::identity(u.rows()), u))
}

/// `d + 1` mutually unbiased bases of maximally entangled states for prime
/// `d ≤ 7`. Basis 0 is `{|U_d^{n,m}⟩⟩}`, with
/// `|U_d^{n,m}⟩⟩ = Σ_p η^{np} |p+m⟩|p⟩ / √d` in `(n, m)` order; basis `k` applies
/// `𝕀 ⊗ C^k` to it, `C` from [`transition_unitary`].
pub fn prime_entangled_mubs(d: usize) -> Result<Vec<EntangledBasis>> {
    if !is_prime(d) {
        return Err(Error::NonPrime(d));
    }
    if d > MAX_PRIME_DIM {
        return Err(Error::InvalidInput(format!(
            "d = {d} is above the supported maximum {MAX_PRIME_DIM}"
        )));
    }
    let s = 1.0 / (d as f64).sqrt();
    let mut base = Vec::with_capacity(d * d);
    for n in 0..d {
        for m in 0..d {
            let mut amps = vec![ZERO; d * d];
            for p in 0..d {
                amps[((p + m) % d) * d + p] = root_of_unity(d, n * p) * s;
            }
            base.push(StateVector::new(amps)?);
        }
    }
    let c = transition_unitary(d)?;
    let mut bases = vec![EntangledBasis::new(d, base.clone())?];
    let mut power = c.clone();
    for _ in 1..=d {
        let states = base.iter().map(|psi| apply_second(&power, psi)).collect();
        bases.push(EntangledBasis::new(d, states)?);
        power = &power * &c;
    }
    Ok(bases)
}

/// Single-qubit Pauli eigenbases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliAxis {
    Z,
    X,
    Y,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::Z, PauliAxis::X, PauliAxis::Y];

    /// Eigenstates for outcomes 0 and 1 (`+1` and `−1` eigenvalues for X and
    /// Y; `|0⟩`, `|1⟩` for Z).
    pub fn states(self) -> [StateVector; 2] {
        let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let amps = match self {
            PauliAxis::Z => [[ONE, ZERO], [ZERO, ONE]],
            PauliAxis::X => [[s, s], [s, -s]],
            PauliAxis::Y => [[s, s * I], [s, -s * I]],
        };
        amps.map(|a| StateVector::new(a.to_vec()).expect("normalized"))
    }

    pub fn classify(state: &StateVector, tol: f64) -> Option<PauliAxis> {
        PauliAxis::ALL
            .into_iter()
            .find(|axis| axis.states().iter().any(|s| s.same_ray(state, tol)))
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PauliAxis::Z => "Z",
            PauliAxis::X => "X",
            PauliAxis::Y => "Y",
        };
        f.write_str(name)
    }
}

/// The two preparation bases available to the legitimate parties.
pub const PREP_AXES: [PauliAxis; 2] = [PauliAxis::Z, PauliAxis::X];

/// Where each qubit unitary basis sends each preparation basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActionTable {
    /// `images[j][p]`: image of `PREP_AXES[p]` under every element of `ℬ_j`.
    pub images: [[PauliAxis; 2]; 3],
}

impl ActionTable {
    pub fn image(&self, basis: usize, prep: PauliAxis) -> PauliAxis {
        let p = PREP_AXES.iter().position(|a| *a == prep).expect("Z or X preparation");
        self.images[basis][p]
    }
}

/// Applies every element of `ℬ_j` to both states of each preparation basis
/// and classifies the outputs. All eight outputs must agree on the axis.
pub fn basis_action_table() -> Result<ActionTable> {
    let family = builtin_qubit_family();
    let mut images = [[PauliAxis::Z; 2]; 3];
    for (j, basis) in family.bases().iter().enumerate() {
        for (p, prep) in PREP_AXES.iter().enumerate() {
            let inconsistent = || Error::InconsistentAction {
                basis: j,
                prep: prep.to_string(),
            };
            let mut seen: Option<PauliAxis> = None;
            for u in basis.elements() {
                for s in prep.states() {
                    let axis = PauliAxis::classify(&s.evolve(u), EPS).ok_or_else(inconsistent)?;
                    match seen {
                        None => seen = Some(axis),
                        Some(prev) if prev != axis => return Err(inconsistent()),
                        _ => {}
                    }
                }
            }
            images[j][p] = seen.expect("nonempty basis");
        }
    }
    Ok(ActionTable { images })
}

/// Image basis index of `(U ⊗ 𝕀)|ψ⟩` for `|ψ⟩ ∈ 𝔅_i`, `U ∈ ℬ_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingTable {
    /// `table[i][j] = k`.
    pub table: [[usize; 3]; 3],
    /// Cells where `k ≠ (i + j) mod 2`, as `(i, j, k, formula)`.
    pub formula_mismatches: Vec<(usize, usize, usize, usize)>,
}

pub fn entangled_mapping_table() -> Result<MappingTable> {
    let state_bases = bell_and_magic_bases();
    let family = builtin_qubit_family();
    let id = ComplexMatrix::identity(2);
    let mut table = [[0usize; 3]; 3];
    let mut formula_mismatches = Vec::new();
    for (i, sb) in state_bases.iter().enumerate() {
        for (j, ub) in family.bases().iter().enumerate() {
            let split = Error::NoConsistentImage {
                state_basis: i,
                unitary_basis: j,
            };
            let mut image: Option<usize> = None;
            for u in ub.elements() {
                let op = tensor(u, &id);
                for psi in sb.states() {
                    let out = psi.evolve(&op);
                    let k = state_bases
                        .iter()
                        .position(|b| b.position(&out, EPS).is_some())
                        .ok_or_else(|| split.clone())?;
                    match image {
                        None => image = Some(k),
                        Some(prev) if prev != k => return Err(split),
                        _ => {}
                    }
                }
            }
            let k = image.expect("nonempty bases");
            table[i][j] = k;
            let formula = (i + j) % 2;
            if formula != k {
                formula_mismatches.push((i, j, k, formula));
            }
        }
    }
    Ok(MappingTable {
        table,
        formula_mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FidelityMode {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityResult {
    pub value: f64,
    pub mode: FidelityMode,
    pub trials: u64,
    pub std_error: f64,
}

fn input_states(inputs: &[usize]) -> Result<Vec<StateVector>> {
    let bases = bell_and_magic_bases();
    let mut out = Vec::new();
    for &i in inputs {
        let b = bases
            .get(i)
            .ok_or(Error::IndexOutOfRange { index: i, bound: 3 })?;
        out.extend(b.states().iter().cloned());
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("no input bases selected".into()));
    }
    Ok(out)
}

fn measurement_basis(m: usize) -> Result<EntangledBasis> {
    bell_and_magic_bases()
        .into_iter()
        .nth(m)
        .ok_or(Error::IndexOutOfRange { index: m, bound: 3 })
}

/// Every Born probability between Bell and magic states is a multiple of
/// `1/4`; snapping to the `1/64` grid removes rounding noise so the exact sum
/// is exact in floating point too.
fn snap_dyadic(p: f64) -> Option<f64> {
    let q = (p * 64.0).round() / 64.0;
    ((q - p).abs() <= 1e-12).then_some(q)
}

/// `(1/N) Σ_u Σ_s P(s|u) |⟨s|u⟩|²` with `u` uniform over the states of the
/// chosen input bases and a projective measurement onto `𝔅_measure`.
pub fn average_fidelity_exact_over(inputs: &[usize], measure: usize) -> Result<FidelityResult> {
    let states = input_states(inputs)?;
    let meas = measurement_basis(measure)?;
    let mut total = 0.0;
    for u in &states {
        for s in meas.states() {
            let p = snap_dyadic(s.overlap_sqr(u)).ok_or_else(|| {
                Error::InvalidInput("Born probability is not a multiple of 1/64".into())
            })?;
            total += p * p;
        }
    }
    Ok(FidelityResult {
        value: total / states.len() as f64,
        mode: FidelityMode::Exact,
        trials: 0,
        std_error: 0.0,
    })
}

/// Exact average fidelity over all twelve states, measuring onto `𝔅₀`.
pub fn average_fidelity_exact() -> FidelityResult {
    average_fidelity_exact_over(&[0, 1, 2], 0).expect("valid defaults")
}

const TRIAL_BLOCK: u64 = 8192;

/// Sampled version of [`average_fidelity_exact_over`]. Trials run in blocks
/// with per-block generators derived from `seed`, reduced in block order.
pub fn average_fidelity_mc_over(
    inputs: &[usize],
    measure: usize,
    trials: u64,
    seed: u64,
) -> Result<FidelityResult> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let states = input_states(inputs)?;
    let meas = measurement_basis(measure)?;
    let blocks = trials.div_ceil(TRIAL_BLOCK);
    let sums: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, b);
            let count = TRIAL_BLOCK.min(trials - b * TRIAL_BLOCK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let u = &states[rng.random_range(0..states.len())];
                let probs: Vec<f64> = meas.states().iter().map(|s| s.overlap_sqr(u)).collect();
                let outcome = sample_index(&probs, rng.random::<f64>());
                let f = probs[outcome];
                sum += f;
                sum_sq += f * f;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = sums
        .into_iter()
        .fold((0.0, 0.0), |acc, (s, q)| (acc.0 + s, acc.1 + q));
    let n = trials as f64;
    let mean = sum / n;
    let var = if trials > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(FidelityResult {
        value: mean,
        mode: FidelityMode::MonteCarlo,
        trials,
        std_error: (var / n).sqrt(),
    })
}

pub fn average_fidelity_mc(trials: u64, seed: u64) -> Result<FidelityResult> {
    average_fidelity_mc_over(&[0, 1, 2], 0, trials, seed)
}

/// Inverse-CDF draw from a probability vector.
pub(crate) fn sample_index(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    probs.iter().rposition(|p| *p > 0.0).unwrap_or(probs.len() - 1)
}

/// State-averaged overlap of a unitary and its guess, sampled and in closed
/// form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapEstimate {
    /// `|mean_α ⟨α|ur† u|α⟩|²` over Haar samples.
    pub monte_carlo: f64,
    /// `|Tr(u ur†)|² / d²`.
    pub closed_form: f64,
    /// Delta-method standard error of `monte_carlo`, including its
    /// `Var/N` bias.
    pub std_error: f64,
}

pub fn state_average_overlap<R: Rng + ?Sized>(
    u: &ComplexMatrix,
    ur: &ComplexMatrix,
    samples: usize,
    rng: &mut R,
) -> Result<OverlapEstimate> {
    if u.rows() != ur.rows() || !u.is_square() || !ur.is_square() {
        return Err(Error::DimMismatch {
            expected: u.rows(),
            got: ur.rows(),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be at least 1".into()));
    }
    let d = u.rows();
    let v = &ur.adjoint() * u;
    let zs: Vec<Complex64> = (0..samples)
        .map(|_| {
            let a = haar_random_state(d, rng);
            a.inner(&a.evolve(&v))
        })
        .collect();
    let n = samples as f64;
    let mean: Complex64 = zs.iter().sum::<Complex64>() / n;
    let var = if samples > 1 {
        zs.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let se_mean = (var / n).sqrt();
    let closed = (u * &ur.adjoint()).trace().norm_sqr() / (d * d) as f64;
    Ok(OverlapEstimate {
        monte_carlo: mean.norm_sqr(),
        closed_form: closed,
        std_error: 2.0 * mean.norm() * se_mean + se_mean * se_mean,
    })
}

/// Coordinates over `𝔅₀`: `|Φ+⟩ ≡ |0⟩, |Ψ+⟩ ≡ |1⟩, |Ψ−⟩ ≡ |2⟩, |Φ−⟩ ≡ |3⟩`,
/// matching `𝔽₄` indices `0, 1, ω, ω²`.
pub fn h4_coordinates(psi: &StateVector) -> Result<StateVector> {
    if psi.dim() != 4 {
        return Err(Error::DimMismatch { expected: 4, got: psi.dim() });
    }
    StateVector::new(bell_states().iter().map(|b| b.inner(psi)).collect())
}

/// `𝔅₀, 𝔅₁, 𝔅₂` written in `ℋ₄` coordinates.
pub fn magic_bases_h4() -> [Vec<StateVector>; 3] {
    bell_and_magic_bases().map(|b| {
        b.states()
            .iter()
            .map(|s| h4_coordinates(s).expect("two-qubit state"))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    /// Which of `𝔅₀, 𝔅₁, 𝔅₂` (in `ℋ₄` coordinates) contains the initial state.
    pub member_of: Option<usize>,
    /// Distinct rays in the orbit under the sixteen representation operators.
    pub orbit: Vec<StateVector>,
    /// Group elements fixing the initial ray.
    pub stabilizer_size: usize,
    pub passed: bool,
}

/// Whether the orbit of `initial` under `R(𝔽₄ × 𝔽₄)` is exactly the basis
/// that `initial` belongs to.
pub fn covariant_orbit_check(initial: &StateVector) -> Result<OrbitReport> {
    if initial.dim() != 4 {
        return Err(Error::DimMismatch { expected: 4, got: initial.dim() });
    }
    let bases = magic_bases_h4();
    let member_of = bases
        .iter()
        .position(|b| b.iter().any(|s| s.same_ray(initial, EPS)));
    let mut orbit: Vec<StateVector> = Vec::new();
    let mut stabilizer_size = 0;
    for (_, g) in representation() {
        let image = initial.evolve(&g);
        if image.same_ray(initial, EPS) {
            stabilizer_size += 1;
        }
        if !orbit.iter().any(|s| s.same_ray(&image, EPS)) {
            orbit.push(image);
        }
    }
    let passed = match member_of {
        Some(m) => {
            let target = &bases[m];
            orbit.len() == target.len()
                && orbit.iter().all(|s| target.iter().any(|t| t.same_ray(s, EPS)))
        }
        None => false,
    };
    Ok(OrbitReport {
        member_of,
        orbit,
        stabilizer_size,
        passed,
    })
}

/// Initial state `index` of basis `basis`, in `ℋ₄` coordinates.
pub fn orbit_initial_state(basis: usize, index: usize) -> Result<StateVector> {
    let bases = magic_bases_h4();
    let b = bases
        .get(basis)
        .ok_or(Error::IndexOutOfRange { index: basis, bound: 3 })?;
    b.get(index)
        .cloned()
        .ok_or(Error::IndexOutOfRange { index, bound: 4 })
}

/// The representation operator for `(q, w)` given as `𝔽₄` indices.
pub fn rep_operator_by_index(q: usize, w: usize) -> Result<ComplexMatrix> {
    Ok(rep_operator(Gf4::from_index(q)?, Gf4::from_index(w)?))
}
