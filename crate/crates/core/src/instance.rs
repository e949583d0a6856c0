//! JSON instance files: the weight `A`, the operator `T` and an optional
//! second operator `S`, each as a `dim × dim` array of `[re, im]` pairs.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, TolerancePolicy, C64};
use crate::semihilbert::SemiHilbertSpace;

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

/// Partial overrides of [`TolerancePolicy`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_rtol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_atol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_tol: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: TolerancePolicy) -> TolerancePolicy {
        TolerancePolicy {
            rank_rtol: self.rank_rtol.unwrap_or(base.rank_rtol),
            check_atol: self.check_atol.unwrap_or(base.check_atol),
            sweep_tol: self.sweep_tol.unwrap_or(base.sweep_tol),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    #[serde(rename = "A")]
    pub a: JsonMatrix,
    #[serde(rename = "T")]
    pub t: JsonMatrix,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

/// Validated matrices of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub a: ComplexMatrix,
    pub t: ComplexMatrix,
    pub s: Option<ComplexMatrix>,
    pub tol: TolerancePolicy,
}

impl Instance {
    pub fn space(&self) -> Result<SemiHilbertSpace> {
        SemiHilbertSpace::new(self.a.clone(), self.tol)
    }
}

pub fn to_json_matrix(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn from_json_matrix(name: &str, dim: usize, rows: &JsonMatrix) -> Result<ComplexMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Parse(format!(
            "{name} must be a {dim}×{dim} array of [re, im] pairs"
        )));
    }
    let data: Vec<C64> = rows
        .iter()
        .flatten()
        .map(|&[re, im]| C64::new(re, im))
        .collect();
    ComplexMatrix::new(dim, data).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

impl InstanceFile {
    pub fn from_matrices(a: &ComplexMatrix, t: &ComplexMatrix, s: Option<&ComplexMatrix>) -> Self {
        Self {
            dim: a.dim(),
            a: to_json_matrix(a),
            t: to_json_matrix(t),
            s: s.map(to_json_matrix),
            tolerances: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Checks shapes and finiteness; `base` supplies tolerances not overridden.
    pub fn validate(&self, base: TolerancePolicy) -> Result<Instance> {
        if self.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let tol = self.tolerances.unwrap_or_default().apply(base);
        tol.validate()?;
        let a = from_json_matrix("A", self.dim, &self.a)?;
        let t = from_json_matrix("T", self.dim, &self.t)?;
        let s = self
            .s
            .as_ref()
            .map(|s| from_json_matrix("S", self.dim, s))
            .transpose()?;
        let inst = Instance { a, t, s, tol };
        inst.space()?;
        Ok(inst)
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("instance serializes");
        Sha256::digest(&canonical)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const J2: &str = r#"{"dim": 2,
        "A": [[[1,0],[0,0]],[[0,0],[1,0]]],
        "T": [[[0,0],[1,0]],[[0,0],[0,0]]]}"#;

    #[test]
    fn parses_and_validates() {
        let f = InstanceFile::parse(J2).unwrap();
        let inst = f.validate(TolerancePolicy::default()).unwrap();
        assert_eq!(inst.t[(0, 1)], C64::new(1.0, 0.0));
        assert!(inst.s.is_none());
        let back = InstanceFile::parse(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.digest(), f.digest());
    }

    #[test]
    fn rejects_bad_shapes_and_weights() {
        let bad_shape = r#"{"dim": 2, "A": [[[1,0]]], "T": [[[0,0],[1,0]],[[0,0],[0,0]]]}"#;
        assert!(matches!(
            InstanceFile::parse(bad_shape)
                .unwrap()
                .validate(TolerancePolicy::default()),
            Err(Error::Parse(_))
        ));
        let not_psd = r#"{"dim": 2, "A": [[[-1,0],[0,0]],[[0,0],[1,0]]], "T": [[[0,0],[1,0]],[[0,0],[0,0]]]}"#;
        assert!(matches!(
            InstanceFile::parse(not_psd)
                .unwrap()
                .validate(TolerancePolicy::default()),
            Err(Error::NotPsd { .. })
        ));
        assert!(InstanceFile::parse("{").is_err());
        assert!(InstanceFile::parse(r#"{"dim": 2, "A": [], "T": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let text =
            r#"{"dim": 1, "A": [[[1,0]]], "T": [[[2,0]]], "tolerances": {"sweep_tol": 1e-9}}"#;
        let inst = InstanceFile::parse(text)
            .unwrap()
            .validate(TolerancePolicy::default())
            .unwrap();
        assert_eq!(inst.tol.sweep_tol, 1e-9);
        assert_eq!(inst.tol.check_atol, 1e-7);
        let text = r#"{"dim": 1, "A": [[[1,0]]], "T": [[[2,0]]], "tolerances": {"sweep_tol": -1}}"#;
        assert!(InstanceFile::parse(text)
            .unwrap()
            .validate(TolerancePolicy::default())
            .is_err());
    }
}
