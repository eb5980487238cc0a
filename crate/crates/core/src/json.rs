//! JSON wire formats.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major:
//!
//! ```json
//! {"rows": 2, "cols": 2, "entries": [[0,0],[1,0],[1,0],[0,0]]}
//! ```
//!
//! A basis is `{"d", "n", "elements": [matrix, ...]}`, a family is
//! `{"d", "n", "constant", "bases": [basis, ...]}`, a state is
//! `{"dim", "amplitudes": [[re, im], ...]}`. Readers ignore unknown fields,
//! so a report that embeds a basis can be fed back as a basis file.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::basis::{certify_basis, certify_family, MuubFamily, OperatorBasis};
use crate::entangled::EntangledBasis;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, StateVector};
use crate::search::{NonexistenceReport, SearchReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let data = self.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&StateVector> for StateJson {
    fn from(s: &StateVector) -> Self {
        Self {
            dim: s.dim(),
            amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl StateJson {
    pub fn to_state(&self) -> Result<StateVector> {
        if self.amplitudes.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: self.amplitudes.len(),
            });
        }
        StateVector::new(
            self.amplitudes
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub d: usize,
    pub n: usize,
    pub elements: Vec<MatrixJson>,
}

impl From<&OperatorBasis> for BasisJson {
    fn from(b: &OperatorBasis) -> Self {
        Self {
            d: b.d(),
            n: b.n(),
            elements: b.elements().iter().map(MatrixJson::from).collect(),
        }
    }
}

impl BasisJson {
    /// Parses the elements and certifies them; the declared `d` and `n` must
    /// match what the elements say.
    pub fn to_basis(&self, tol: f64) -> Result<OperatorBasis> {
        let elements = self
            .elements
            .iter()
            .map(MatrixJson::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        if elements.len() != self.n {
            return Err(Error::DimMismatch {
                expected: self.n,
                got: elements.len(),
            });
        }
        let basis = certify_basis(elements, tol)?;
        if basis.d() != self.d {
            return Err(Error::DimMismatch {
                expected: self.d,
                got: basis.d(),
            });
        }
        Ok(basis)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub d: usize,
    pub n: usize,
    pub constant: f64,
    pub bases: Vec<BasisJson>,
}

impl From<&MuubFamily> for FamilyJson {
    fn from(f: &MuubFamily) -> Self {
        Self {
            d: f.d(),
            n: f.n(),
            constant: f.constant(),
            bases: f.bases().iter().map(BasisJson::from).collect(),
        }
    }
}

impl FamilyJson {
    /// Recertifies from scratch; the stored constant is only compared.
    pub fn to_family(&self, tol: f64) -> Result<MuubFamily> {
        let bases = self
            .bases
            .iter()
            .map(|b| b.to_basis(tol))
            .collect::<Result<Vec<_>>>()?;
        let family = certify_family(bases, tol)?;
        if (family.constant() - self.constant).abs() > tol * self.constant.abs().max(1.0) {
            return Err(Error::NotUnbiased {
                i: 0,
                j: 1,
                observed: family.constant(),
                expected: self.constant,
            });
        }
        Ok(family)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntangledBasisJson {
    pub d: usize,
    pub states: Vec<StateJson>,
}

impl From<&EntangledBasis> for EntangledBasisJson {
    fn from(b: &EntangledBasis) -> Self {
        Self {
            d: b.d(),
            states: b.states().iter().map(StateJson::from).collect(),
        }
    }
}

impl EntangledBasisJson {
    pub fn to_basis(&self) -> Result<EntangledBasis> {
        let states = self
            .states
            .iter()
            .map(StateJson::to_state)
            .collect::<Result<Vec<_>>>()?;
        EntangledBasis::new(self.d, states)
    }
}

pub fn matrix_value(m: &ComplexMatrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("plain data")
}

pub fn basis_value(b: &OperatorBasis) -> Value {
    serde_json::to_value(BasisJson::from(b)).expect("plain data")
}

pub fn family_value(f: &MuubFamily) -> Value {
    serde_json::to_value(FamilyJson::from(f)).expect("plain data")
}

fn count(c: u128) -> Value {
    u64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()))
}

pub fn search_report_value(r: &SearchReport) -> Value {
    json!({
        "d": r.d,
        "n": r.n,
        "phase_order": r.order,
        "candidates_scanned": count(r.candidates_scanned),
        "unitaries_found": r.unitaries_found.len(),
        "unitaries": r.unitaries_found.iter().zip(&r.assignments).map(|(u, a)| json!({
            "exponents": a.exponents(),
            "matrix": matrix_value(u),
        })).collect::<Vec<_>>(),
        "bases_found": r.bases.len(),
        "bases": r.bases.iter().map(basis_value).collect::<Vec<_>>(),
        "largest_family": r.largest_family(),
        "families": r.families.iter().map(family_value).collect::<Vec<_>>(),
    })
}

pub fn nonexistence_report_value(r: &NonexistenceReport) -> Value {
    json!({
        "certified": r.certified,
        "pairs": r.pairs.iter().map(|p| json!({
            "axes": [p.axes.0, p.axes.1],
            "product_overlaps": p.product_overlaps,
            "product_norm_sqr": p.product_norm_sqr,
            "span_excluded": p.span_excluded,
            "searches": p.searches.iter().map(|s| json!({
                "phase_order": s.order,
                "candidates_scanned": count(s.candidates_scanned),
                "unitaries_found": s.unitaries_found,
                "complete_bases": s.complete_bases,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// Rounds a float to `digits` significant digits.
pub fn round_significant(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    // go through the decimal formatter so the result is the shortest float
    // that prints with the requested digits
    format!("{:.*e}", (digits - 1).max(0) as usize, x)
        .parse()
        .unwrap_or(x)
}

/// Applies [`round_significant`] to every float in a JSON tree. Negative
/// zero becomes zero.
pub fn round_value(v: Value, digits: i32) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64"), digits);
            let x = if x == 0.0 { 0.0 } else { x };
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(|x| round_value(x, digits)).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, x)| (k, round_value(x, digits)))
                .collect(),
        ),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin_qubit_family, builtin_qutrit_family};
    use crate::EPS;

    #[test]
    fn basis_round_trip() {
        let fam = builtin_qutrit_family().unwrap();
        for b in fam.bases() {
            let text = serde_json::to_string(&BasisJson::from(b)).unwrap();
            let back: BasisJson = serde_json::from_str(&text).unwrap();
            assert_eq!(&back.to_basis(EPS).unwrap(), b);
        }
    }

    #[test]
    fn rounded_family_still_certifies() {
        let fam = builtin_qubit_family();
        let v = round_value(family_value(&fam), 12);
        let parsed: FamilyJson = serde_json::from_value(v).unwrap();
        assert_eq!(parsed.to_family(EPS).unwrap().len(), 3);
    }

    #[test]
    fn declared_shape_is_checked() {
        let mut b = BasisJson::from(&builtin_qubit_family().bases()[0]);
        b.n = 3;
        assert!(b.to_basis(EPS).is_err());
        b.n = 4;
        b.elements[0].entries.pop();
        assert!(b.to_basis(EPS).is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn significant_digits() {
        assert_eq!(round_significant(0.123456789012345, 12), 0.123456789012);
        assert_eq!(round_significant(1.0 / 3.0, 3), 0.333);
        assert_eq!(round_significant(-2.5e-17, 12), -2.5e-17);
        let v = round_value(json!({"a": [-0.0, 1, std::f64::consts::FRAC_1_SQRT_2]}), 12);
        assert_eq!(v, json!({"a": [0.0, 1, 0.707106781187]}));
    }

    #[test]
    fn state_dim_checked() {
        let s = StateJson { dim: 2, amplitudes: vec![[1.0, 0.0]] };
        assert!(s.to_state().is_err());
    }
}
