//! The JSON input format shared by all commands.
//!
//! ```json
//! { "dim_g": 4, "basis_g": ["e1", "e2", "e3", "e4"],
//!   "bracket": [ {"i": 0, "j": 1, "k": 2, "coeffs": {"3": "1"}} ],
//!   "dim_V": 4, "rho": "adjoint",
//!   "T": [["1", "0", "0", "0"], …],
//!   "order": 1, "taus": [[…], …] }
//! ```
//!
//! Indices are 0-based. The bracket lists sorted triples `i<j<k` only and `rho`
//! lists pairs `i<j` only; the rest follows by skew-symmetry. `rho` may also be
//! the string `"adjoint"`. Deformation files add `order` and `taus`; equivalence
//! files further add `taus_tilde`, `X` (on the wedge basis of `g∧g`), `phis`
//! and `psis`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{adjoint_representation, Representation, ThreeLieAlgebra, Trilinear};
use crate::deformation::{DeformationSeries, EquivalenceData};
use crate::embedding::EmbeddingTensor;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Output index (as a string key) to coefficient.
    pub coeffs: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoEntry {
    pub i: usize,
    pub j: usize,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RhoSpec {
    Named(String),
    Pairs(Vec<RhoEntry>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub dim_g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_g: Option<Vec<String>>,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
    #[serde(rename = "dim_V", default, skip_serializing_if = "Option::is_none")]
    pub dim_v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<RhoSpec>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taus: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taus_tilde: Option<Vec<Matrix>>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phis: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psis: Option<Vec<Matrix>>,
}

fn missing(field: &str) -> Error {
    Error::InvalidInput(format!("missing field {field:?}"))
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        InputFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("input files serialize")
    }

    /// Writes `g`, `ρ` and `T` in the sorted-triple, `i<j` form.
    pub fn from_tensor(e: &EmbeddingTensor) -> Self {
        let mut f = InputFile::from_algebra(e.g());
        f.dim_v = Some(e.dim_v());
        f.rho = Some(RhoSpec::Pairs(rho_entries(e.rho())));
        f.t = Some(e.t().clone());
        f
    }

    pub fn from_algebra(g: &ThreeLieAlgebra) -> Self {
        let n = g.dim();
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let coeffs: BTreeMap<String, Scalar> = g
                        .bracket()
                        .get(i, j, k)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(l, x)| (l.to_string(), x.clone()))
                        .collect();
                    if !coeffs.is_empty() {
                        bracket.push(BracketEntry { i, j, k, coeffs });
                    }
                }
            }
        }
        InputFile {
            dim_g: n,
            basis_g: Some(g.labels().to_vec()),
            bracket,
            ..InputFile::default()
        }
    }

    /// The algebra as given, not yet verified.
    pub fn algebra(&self) -> Result<ThreeLieAlgebra> {
        let n = self.dim_g;
        let mut t = Trilinear::zero(n);
        let mut seen = BTreeSet::new();
        for b in &self.bracket {
            if !(b.i < b.j && b.j < b.k && b.k < n) {
                return Err(Error::InvalidInput(format!(
                    "bracket triple ({},{},{}) must be strictly increasing and below {n}",
                    b.i, b.j, b.k
                )));
            }
            if !seen.insert((b.i, b.j, b.k)) {
                return Err(Error::InvalidInput(format!("bracket triple ({},{},{}) listed twice", b.i, b.j, b.k)));
            }
            for (l, x) in &b.coeffs {
                let l: usize = l
                    .parse()
                    .ok()
                    .filter(|&l| l < n)
                    .ok_or_else(|| Error::InvalidInput(format!("bracket output index {l:?} is not below {n}")))?;
                t.set_entry(b.i, b.j, b.k, l, x.clone());
            }
        }
        ThreeLieAlgebra::from_tensor(self.basis_g.clone(), &t)
    }

    /// The representation as given, not yet verified.
    pub fn representation(&self, g: &ThreeLieAlgebra) -> Result<Representation> {
        match self.rho.as_ref().ok_or_else(|| missing("rho"))? {
            RhoSpec::Named(name) if name == "adjoint" => {
                if let Some(d) = self.dim_v {
                    if d != self.dim_g {
                        return Err(Error::DimensionMismatch(format!(
                            "the adjoint representation has dim_V = {}, not {d}",
                            self.dim_g
                        )));
                    }
                }
                let mut g = g.clone();
                if !g.is_verified() {
                    g = g.verify()?;
                }
                adjoint_representation(&g)
            }
            RhoSpec::Named(name) => Err(Error::InvalidInput(format!("unknown representation {name:?}"))),
            RhoSpec::Pairs(pairs) => {
                let dv = self.dim_v.ok_or_else(|| missing("dim_V"))?;
                let mut seen = BTreeSet::new();
                for p in pairs {
                    if !seen.insert((p.i, p.j)) {
                        return Err(Error::InvalidInput(format!("rho pair ({},{}) listed twice", p.i, p.j)));
                    }
                }
                Representation::from_pairs(
                    self.dim_g,
                    dv,
                    pairs.iter().map(|p| ((p.i, p.j), p.matrix.clone())).collect(),
                )
            }
        }
    }

    pub fn tensor_map(&self) -> Result<Matrix> {
        self.t.clone().ok_or_else(|| missing("T"))
    }

    fn declared_order(&self, taus: &[Matrix]) -> Result<()> {
        match self.order {
            Some(n) if n + 1 != taus.len() => Err(Error::OrderMismatch(format!(
                "order {n} with {} coefficients",
                taus.len()
            ))),
            _ => Ok(()),
        }
    }

    /// The series `taus`, truncated to `order` when given.
    pub fn series(&self, e: &EmbeddingTensor, order: Option<usize>) -> Result<DeformationSeries> {
        let taus = self.taus.clone().ok_or_else(|| missing("taus"))?;
        self.declared_order(&taus)?;
        let d = DeformationSeries::new(e, taus)?;
        match order {
            Some(n) => d.truncate(n),
            None => Ok(d),
        }
    }

    pub fn series_tilde(&self, e: &EmbeddingTensor, order: Option<usize>) -> Result<DeformationSeries> {
        let taus = self.taus_tilde.clone().ok_or_else(|| missing("taus_tilde"))?;
        self.declared_order(&taus)?;
        let d = DeformationSeries::new(e, taus)?;
        match order {
            Some(n) => d.truncate(n),
            None => Ok(d),
        }
    }

    /// `X`, `φᵢ` and `ψᵢ` for an equivalence of order `order`; missing higher
    /// terms default to zero.
    pub fn equivalence(&self, e: &EmbeddingTensor, order: usize) -> Result<EquivalenceData> {
        let mut eq = EquivalenceData::identity(e, order);
        if let Some(x) = &self.x {
            eq.x = x.clone();
        }
        let want = order.saturating_sub(1);
        if let Some(p) = &self.phis {
            eq.phis = p.iter().take(want).cloned().collect();
        }
        if let Some(p) = &self.psis {
            eq.psis = p.iter().take(want).cloned().collect();
        }
        Ok(eq)
    }
}

fn rho_entries(rho: &Representation) -> Vec<RhoEntry> {
    let n = rho.g_dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = rho.op(i, j);
            if !m.is_zero() {
                out.push(RhoEntry { i, j, matrix: m.clone() });
            }
        }
    }
    out
}
