//! Generators: Pauli matrices, the Weyl (shift/clock) operators, and the
//! projective representation of `𝔽₄ × 𝔽₄` on `ℋ₄`.
//!
//! Weyl convention: `X|k⟩ = |k+1 mod d⟩` and `Z|k⟩ = η_d^k |k⟩` with
//! `η_d = exp(2πi/d)`, so `ZX = η_d XZ`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I, ONE, ZERO};

/// `pauli(0)` is the identity, then σ₁, σ₂, σ₃.
pub fn pauli(i: usize) -> Result<ComplexMatrix> {
    let m = match i {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => return Err(Error::IndexOutOfRange { index: i, bound: 4 }),
    };
    Ok(ComplexMatrix::from_rows(&m))
}

/// `exp(2πi k / order)`. Exact for the quarter turns so that qubit
/// constructions carry no rounding noise.
pub fn root_of_unity(order: usize, k: usize) -> Complex64 {
    let k = k % order;
    if (4 * k).is_multiple_of(order) {
        return match 4 * k / order {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / order as f64)
}

/// Principal `d`-th root of unity `η_d`.
pub fn eta(d: usize) -> Complex64 {
    root_of_unity(d, 1)
}

/// Exponent pair of the Weyl operator `X^a Z^b` in dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylIndex {
    d: usize,
    a: usize,
    b: usize,
}

impl WeylIndex {
    pub fn new(d: usize, a: usize, b: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("dimension {d} must be at least 2")));
        }
        if a >= d {
            return Err(Error::IndexOutOfRange { index: a, bound: d });
        }
        if b >= d {
            return Err(Error::IndexOutOfRange { index: b, bound: d });
        }
        Ok(Self { d, a, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// The matrix `X^a Z^b`: column `k` carries `η^{bk}` into row `k + a`.
pub fn weyl(idx: WeylIndex) -> ComplexMatrix {
    let d = idx.d;
    let mut m = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        m.set((k + idx.a) % d, k, root_of_unity(d, idx.b * k));
    }
    m
}

pub fn shift(d: usize) -> ComplexMatrix {
    weyl(WeylIndex { d, a: 1, b: 0 })
}

pub fn clock(d: usize) -> ComplexMatrix {
    weyl(WeylIndex { d, a: 0, b: 1 })
}

/// All `d²` Weyl operators in lexicographic `(a, b)` order.
pub fn weyl_basis(d: usize) -> Vec<ComplexMatrix> {
    (0..d)
        .flat_map(|a| (0..d).map(move |b| weyl(WeylIndex { d, a, b })))
        .collect()
}

/// Element of `𝔽₄ = 𝔽₂[ω]/(ω² + ω + 1)` stored as bits `(s₁, s₂)` with value
/// `s₁·ω + s₂`. Raw encodings 0, 1, 2, 3 are 0, 1, ω, ω².
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_SQ: Gf4 = Gf4(3);

    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA_SQ];

    pub fn from_bits(s1: bool, s2: bool) -> Self {
        Gf4(((s1 as u8) << 1) | s2 as u8)
    }

    pub fn from_index(i: usize) -> Result<Self> {
        if i < 4 {
            Ok(Gf4(i as u8))
        } else {
            Err(Error::IndexOutOfRange { index: i, bound: 4 })
        }
    }

    /// Position in the computational basis of `ℋ₄`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bits(self) -> (u8, u8) {
        (self.0 >> 1, self.0 & 1)
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = ["0", "1", "ω", "ω²"][self.0 as usize];
        write!(f, "{name}")
    }
}

impl Add for Gf4 {
    type Output = Gf4;

    // characteristic 2: addition is XOR of the bit pairs
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;

    fn mul(self, rhs: Gf4) -> Gf4 {
        // log table over the cyclic group {1, ω, ω²}
        const LOG: [u8; 4] = [0, 0, 1, 2];
        const EXP: [u8; 3] = [1, 2, 3];
        if self.0 == 0 || rhs.0 == 0 {
            return Gf4::ZERO;
        }
        Gf4(EXP[((LOG[self.0 as usize] + LOG[rhs.0 as usize]) % 3) as usize])
    }
}

pub fn gf4_add(x: Gf4, y: Gf4) -> Gf4 {
    x + y
}

pub fn gf4_mul(x: Gf4, y: Gf4) -> Gf4 {
    x * y
}

/// Additive character `χ(s₁, s₂) = exp(πi s₁)`.
pub fn chi(x: Gf4) -> Complex64 {
    if x.bits().0 == 0 {
        ONE
    } else {
        -ONE
    }
}

/// `U_q V_w` on `ℋ₄`, where `U_q|i⟩ = |i ⊕ q⟩` and `V_w|i⟩ = χ(w ⊙ i)|i⟩`.
pub fn rep_operator(q: Gf4, w: Gf4) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in Gf4::ALL {
        m.set((i + q).index(), i.index(), chi(w * i));
    }
    m
}

/// All sixteen `rep_operator(q, w)`, `q` major.
pub fn representation() -> Vec<((Gf4, Gf4), ComplexMatrix)> {
    Gf4::ALL
        .iter()
        .flat_map(|&q| Gf4::ALL.iter().map(move |&w| ((q, w), rep_operator(q, w))))
        .collect()
}
