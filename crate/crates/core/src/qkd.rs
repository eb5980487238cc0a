//! Two-way key distribution with the qubit unitary bases.
//!
//! Bob prepares a Z or X eigenstate and sends it to Alice, who applies one of
//! the twelve unitaries `ℬ_j[e]` and returns the qubit. Bob measures in Z or
//! X. After the quantum phase Alice announces `j` and the pair of elements her
//! `e` belongs to. A round is kept when the announced basis sends Bob's
//! preparation basis onto his measurement basis; the outcome then singles out
//! `e` within the pair, and with it Alice's bit.
//!
//! The eavesdropper keeps Bob's qubit, sends half of `Φ+` through Alice's
//! encoding, measures the returned pair in one of `𝔅₀, 𝔅₁, 𝔅₂`, and applies
//! the unitary her outcome names to Bob's qubit before forwarding it.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::OperatorBasis;
use crate::builtin::builtin_qubit_family;
use crate::entangled::{
    basis_action_table, bell_and_magic_bases, entangled_mapping_table, phi_plus, sample_index,
    ActionTable, EntangledBasis, PauliAxis, PREP_AXES,
};
use crate::error::{Error, Result};
use crate::linalg::{tensor, unvectorize, ComplexMatrix, StateVector, EPS};
use crate::pauli::pauli;
use crate::rng::stream;

/// Alice's bit for each element index, in every basis.
pub const BIT_PATTERN: [u8; 4] = [0, 1, 1, 0];

/// Candidate pairings of four elements, tried in this order.
const MATCHINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub rounds: u64,
    pub eve_enabled: bool,
    pub seed: u64,
    pub basis_weights: [f64; 3],
    /// Pins Eve's measurement basis instead of drawing it uniformly.
    pub eve_basis: Option<usize>,
    /// Probability of a uniformly random Pauli error on the returning qubit.
    pub noise: f64,
}

impl ProtocolConfig {
    pub fn new(rounds: u64, seed: u64) -> Self {
        Self {
            rounds,
            eve_enabled: false,
            seed,
            basis_weights: [1.0 / 3.0; 3],
            eve_basis: None,
            noise: 0.0,
        }
    }

    pub fn with_eve(mut self, on: bool) -> Self {
        self.eve_enabled = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidInput("rounds must be at least 1".into()));
        }
        if self.basis_weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidInput("basis weights must be nonnegative".into()));
        }
        let total: f64 = self.basis_weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("basis weights sum to {total}, not 1")));
        }
        if let Some(m) = self.eve_basis {
            if m > 2 {
                return Err(Error::IndexOutOfRange { index: m, bound: 3 });
            }
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(Error::InvalidInput("noise must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub bob_prep_basis: PauliAxis,
    pub bob_prep_bit: u8,
    pub alice_basis: usize,
    pub alice_element: usize,
    pub alice_bit: u8,
    pub bob_meas_basis: PauliAxis,
    pub bob_outcome: u8,
    pub sifted: bool,
    pub bob_bit: Option<u8>,
    pub eve_meas_basis: Option<usize>,
    pub eve_bit_known: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisStats {
    pub basis: usize,
    pub rounds: u64,
    pub sifted: u64,
    pub errors: u64,
    pub eve_known: u64,
    pub sift_rate: f64,
    /// Probability that a round using this basis is kept.
    pub expected_sift_rate: f64,
    pub qber: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QkdReport {
    pub rounds: u64,
    pub sifted: u64,
    pub sift_rate: f64,
    /// `Σ_j w_j · expected_sift_rate_j`.
    pub expected_sift_rate: f64,
    pub qber: Option<f64>,
    pub eve_gain: Option<f64>,
    pub eve_enabled: bool,
    pub seed: u64,
    pub basis_weights: [f64; 3],
    pub bit_pattern: [u8; 4],
    pub subsets: Vec<ConclusiveSubsets>,
    pub per_basis: Vec<BasisStats>,
}

/// Alice's announced pairing for one basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConclusiveSubsets {
    pub basis: usize,
    pub pairs: [[usize; 2]; 2],
    pub bits: [[u8; 2]; 2],
}

impl ConclusiveSubsets {
    pub fn pair_of(&self, element: usize) -> [usize; 2] {
        *self
            .pairs
            .iter()
            .find(|p| p.contains(&element))
            .expect("pairs cover all four elements")
    }
}

fn distinguishes(a: &ComplexMatrix, b: &ComplexMatrix, preps: &[PauliAxis]) -> bool {
    preps.iter().all(|p| {
        p.states()
            .iter()
            .all(|s| s.evolve(a).inner(&s.evolve(b)).norm() <= EPS)
    })
}

fn subsets_for(basis: &OperatorBasis, index: usize, table: &ActionTable) -> Result<ConclusiveSubsets> {
    let preps: Vec<PauliAxis> = PREP_AXES
        .into_iter()
        .filter(|p| PREP_AXES.contains(&table.image(index, *p)))
        .collect();
    let el = basis.elements();
    MATCHINGS
        .iter()
        .find(|m| {
            m.iter().all(|[a, b]| {
                BIT_PATTERN[*a] != BIT_PATTERN[*b] && distinguishes(&el[*a], &el[*b], &preps)
            })
        })
        .map(|m| ConclusiveSubsets {
            basis: index,
            pairs: *m,
            bits: m.map(|[a, b]| [BIT_PATTERN[a], BIT_PATTERN[b]]),
        })
        .ok_or(Error::NoValidPairing(index))
}

/// The pairing Alice announces for `basis_index`: the first of the three
/// perfect matchings of `{0,1,2,3}` whose pairs carry different bits and act
/// orthogonally on every state of each conclusive preparation basis.
pub fn conclusive_subsets(basis_index: usize) -> Result<ConclusiveSubsets> {
    let family = builtin_qubit_family();
    let basis = family
        .bases()
        .get(basis_index)
        .ok_or(Error::IndexOutOfRange { index: basis_index, bound: 3 })?;
    subsets_for(basis, basis_index, &basis_action_table()?)
}

/// Fixed data shared by every round.
struct Setup {
    unitaries: Vec<Vec<ComplexMatrix>>,
    action: ActionTable,
    subsets: Vec<ConclusiveSubsets>,
    probe_bases: [EntangledBasis; 3],
    image_basis: [usize; 3],
    paulis: Vec<ComplexMatrix>,
}

impl Setup {
    fn build() -> Result<Self> {
        let family = builtin_qubit_family();
        let action = basis_action_table()?;
        let subsets = family
            .bases()
            .iter()
            .enumerate()
            .map(|(j, b)| subsets_for(b, j, &action))
            .collect::<Result<Vec<_>>>()?;
        let mapping = entangled_mapping_table()?;
        Ok(Self {
            unitaries: family.bases().iter().map(|b| b.elements().to_vec()).collect(),
            action,
            subsets,
            probe_bases: bell_and_magic_bases(),
            image_basis: mapping.table[0],
            paulis: (1..=3).map(|i| pauli(i).expect("Pauli index")).collect(),
        })
    }
}

fn born_outcome<R: Rng + ?Sized>(state: &StateVector, basis: &[StateVector], rng: &mut R) -> usize {
    let probs: Vec<f64> = basis.iter().map(|s| s.overlap_sqr(state)).collect();
    sample_index(&probs, rng.random::<f64>())
}

/// Eve's estimate of Alice's unitary from measuring the probe in `𝔅_m`.
fn eve_estimate<R: Rng + ?Sized>(
    setup: &Setup,
    alice: &ComplexMatrix,
    m: usize,
    rng: &mut R,
) -> ComplexMatrix {
    // half of Φ+ through Alice: (U ⊗ 𝕀)|Φ+⟩ = |Uᵀ⟩⟩/√2
    let probe = phi_plus().evolve(&tensor(alice, &ComplexMatrix::identity(2)));
    let basis = setup.probe_bases[m].states();
    let k = born_outcome(&probe, basis, rng);
    unvectorize(&basis[k], 2).expect("two-qubit state").transpose()
}

/// Applies the intercept-resend attack to a round in flight: returns the
/// qubit Eve forwards to Bob and the basis she measured in.
pub fn eve_intercept_resend<R: Rng + ?Sized>(
    bob_qubit: &StateVector,
    alice: &ComplexMatrix,
    fixed_basis: Option<usize>,
    rng: &mut R,
) -> Result<(StateVector, usize)> {
    let setup = Setup::build()?;
    Ok(intercept(&setup, bob_qubit, alice, fixed_basis, rng))
}

fn intercept<R: Rng + ?Sized>(
    setup: &Setup,
    bob_qubit: &StateVector,
    alice: &ComplexMatrix,
    fixed_basis: Option<usize>,
    rng: &mut R,
) -> (StateVector, usize) {
    let m = fixed_basis.unwrap_or_else(|| rng.random_range(0..3));
    let estimate = eve_estimate(setup, alice, m, rng);
    (bob_qubit.evolve(&estimate), m)
}

fn weighted_index<R: Rng + ?Sized>(weights: &[f64; 3], rng: &mut R) -> usize {
    sample_index(weights, rng.random::<f64>())
}

fn run_round<R: Rng + ?Sized>(setup: &Setup, config: &ProtocolConfig, rng: &mut R) -> RoundRecord {
    let prep = PREP_AXES[rng.random_range(0..2)];
    let prep_bit = rng.random_range(0..2u8);
    let alice_basis = weighted_index(&config.basis_weights, rng);
    let alice_element = rng.random_range(0..4);
    let alice_bit = BIT_PATTERN[alice_element];
    let u = &setup.unitaries[alice_basis][alice_element];
    let sent = &prep.states()[prep_bit as usize];

    let (mut returned, eve_meas_basis) = if config.eve_enabled {
        let (s, m) = intercept(setup, sent, u, config.eve_basis, rng);
        (s, Some(m))
    } else {
        (sent.evolve(u), None)
    };
    if config.noise > 0.0 && rng.random::<f64>() < config.noise {
        returned = returned.evolve(&setup.paulis[rng.random_range(0..3)]);
    }

    let meas = PREP_AXES[rng.random_range(0..2)];
    let meas_states = meas.states();
    let outcome = born_outcome(&returned, &meas_states, rng);

    let sifted = setup.action.image(alice_basis, prep) == meas;
    let bob_bit = sifted.then(|| {
        let subsets = &setup.subsets[alice_basis];
        let pair = subsets.pair_of(alice_element);
        let observed = &meas_states[outcome];
        // the pair member that sends the prepared state onto the observed one
        let member = pair
            .into_iter()
            .find(|&e| sent.evolve(&setup.unitaries[alice_basis][e]).same_ray(observed, 1e-6))
            .unwrap_or(pair[0]);
        BIT_PATTERN[member]
    });
    let eve_bit_known = eve_meas_basis == Some(setup.image_basis[alice_basis]);

    RoundRecord {
        bob_prep_basis: prep,
        bob_prep_bit: prep_bit,
        alice_basis,
        alice_element,
        alice_bit,
        bob_meas_basis: meas,
        bob_outcome: outcome as u8,
        sifted,
        bob_bit,
        eve_meas_basis,
        eve_bit_known,
    }
}

const ROUND_BLOCK: u64 = 4096;

/// Runs the protocol and returns the report together with every round.
pub fn run_protocol_with_rounds(config: &ProtocolConfig) -> Result<(QkdReport, Vec<RoundRecord>)> {
    config.validate()?;
    let setup = Setup::build()?;
    let blocks = config.rounds.div_ceil(ROUND_BLOCK);
    let records: Vec<RoundRecord> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut rng = stream(config.seed, b);
            let count = ROUND_BLOCK.min(config.rounds - b * ROUND_BLOCK);
            let setup = &setup;
            (0..count)
                .map(move |_| run_round(setup, config, &mut rng))
                .collect::<Vec<_>>()
        })
        .collect();
    let report = summarize(config, &setup, &records);
    Ok((report, records))
}

pub fn run_protocol(config: &ProtocolConfig) -> Result<QkdReport> {
    run_protocol_with_rounds(config).map(|(r, _)| r)
}

/// Kept fraction for basis `j` when Bob's preparation and measurement axes
/// are each uniform over Z and X.
fn expected_sift(action: &ActionTable, j: usize) -> f64 {
    PREP_AXES
        .iter()
        .filter(|p| PREP_AXES.contains(&action.image(j, **p)))
        .count() as f64
        / 4.0
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

fn summarize(config: &ProtocolConfig, setup: &Setup, records: &[RoundRecord]) -> QkdReport {
    let mut per_basis: Vec<BasisStats> = (0..3)
        .map(|j| BasisStats {
            basis: j,
            rounds: 0,
            sifted: 0,
            errors: 0,
            eve_known: 0,
            sift_rate: 0.0,
            expected_sift_rate: expected_sift(&setup.action, j),
            qber: None,
        })
        .collect();
    for r in records {
        let s = &mut per_basis[r.alice_basis];
        s.rounds += 1;
        if r.sifted {
            s.sifted += 1;
            if r.bob_bit != Some(r.alice_bit) {
                s.errors += 1;
            }
            if r.eve_bit_known {
                s.eve_known += 1;
            }
        }
    }
    for s in &mut per_basis {
        s.sift_rate = ratio(s.sifted, s.rounds).unwrap_or(0.0);
        s.qber = ratio(s.errors, s.sifted);
    }
    let sifted: u64 = per_basis.iter().map(|s| s.sifted).sum();
    let errors: u64 = per_basis.iter().map(|s| s.errors).sum();
    let known: u64 = per_basis.iter().map(|s| s.eve_known).sum();
    QkdReport {
        rounds: config.rounds,
        sifted,
        sift_rate: sifted as f64 / config.rounds as f64,
        expected_sift_rate: per_basis
            .iter()
            .zip(config.basis_weights)
            .map(|(s, w)| s.expected_sift_rate * w)
            .sum(),
        qber: ratio(errors, sifted),
        eve_gain: ratio(known, sifted),
        eve_enabled: config.eve_enabled,
        seed: config.seed,
        basis_weights: config.basis_weights,
        bit_pattern: BIT_PATTERN,
        subsets: setup.subsets.clone(),
        per_basis,
    }
}
