//! Homogeneous cochains `(⊗²W)^{⊗n} ⊗ W → U`, stored as sparse coefficient maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Trilinear;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Default bound on the number of coefficients of a dense cochain.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Which cochain space an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// Maps on `e = g ⊕ V` (basis of g first, then V) with values in `e`.
    Full { g: usize, v: usize },
    /// Maps on V with values in g.
    F { g: usize, v: usize },
    /// Maps on a `input`-dimensional space with values in an `output`-dimensional one.
    Hom { input: usize, output: usize },
}

impl Space {
    pub fn in_dim(&self) -> usize {
        match *self {
            Space::Full { g, v } => g + v,
            Space::F { v, .. } => v,
            Space::Hom { input, .. } => input,
        }
    }

    pub fn out_dim(&self) -> usize {
        match *self {
            Space::Full { g, v } => g + v,
            Space::F { g, .. } => g,
            Space::Hom { output, .. } => output,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Space::Full { .. } => "FULL",
            Space::F { .. } => "F",
            Space::Hom { .. } => "HOM",
        }
    }

    /// Number of coefficients of a dense cochain of this degree.
    pub fn dense_size(&self, degree: usize) -> u128 {
        let i = self.in_dim() as u128;
        i.saturating_pow(2 * degree as u32 + 1).saturating_mul(self.out_dim() as u128)
    }

    pub fn check_cap(&self, degree: usize, cap: u128) -> Result<()> {
        let requested = self.dense_size(degree);
        if requested > cap {
            return Err(Error::SizeCap { requested, cap });
        }
        Ok(())
    }
}

/// A homogeneous cochain of degree `n`: a multilinear map on `n` tensor pairs
/// and one further argument.
///
/// Entries are keyed by `[a1, b1, …, an, bn, x, out]`: the basis indices of the
/// inputs followed by the output index. Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    space: Space,
    entries: BTreeMap<Vec<u8>, Scalar>,
}

impl Cochain {
    pub fn zero(degree: usize, space: Space) -> Self {
        assert!(
            space.in_dim() <= 256 && space.out_dim() <= 256,
            "cochain spaces are limited to 256 basis vectors"
        );
        Cochain {
            degree,
            space,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from `(key, value)` pairs; keys must have length `2n + 2` and
    /// lie in range. Repeated keys are summed.
    pub fn from_entries<I>(degree: usize, space: Space, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut c = Cochain::zero(degree, space);
        for (key, value) in entries {
            c.check_key(&key)?;
            let k: Vec<u8> = key.iter().map(|&x| x as u8).collect();
            c.add_at(k, &value);
        }
        Ok(c)
    }

    fn check_key(&self, key: &[usize]) -> Result<()> {
        if key.len() != self.arity() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "cochain index of length {} for degree {} (expected {})",
                key.len(),
                self.degree,
                self.arity() + 1
            )));
        }
        let (inputs, out) = key.split_at(self.arity());
        if inputs.iter().any(|&x| x >= self.space.in_dim()) || out[0] >= self.space.out_dim() {
            return Err(Error::DimensionMismatch(format!("cochain index {key:?} out of range")));
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Number of inputs, `2n + 1`.
    pub fn arity(&self) -> usize {
        2 * self.degree + 1
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u8], &Scalar)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn get(&self, inputs: &[usize], out: usize) -> Scalar {
        let mut key: Vec<u8> = inputs.iter().map(|&x| x as u8).collect();
        key.push(out as u8);
        self.entries.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The output vector on a tuple of basis inputs.
    pub fn value(&self, inputs: &[usize]) -> Vec<Scalar> {
        (0..self.space.out_dim()).map(|o| self.get(inputs, o)).collect()
    }

    pub(crate) fn add_at(&mut self, key: Vec<u8>, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn from_map(degree: usize, space: Space, entries: BTreeMap<Vec<u8>, Scalar>) -> Self {
        let entries = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Cochain { degree, space, entries }
    }

    fn require_same_shape(&self, other: &Cochain) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(format!(
                "{:?} versus {:?}",
                self.space, other.space
            )));
        }
        if self.degree != other.degree {
            return Err(Error::SpaceMismatch(format!(
                "degree {} versus degree {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.require_same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_at(k.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        if c.is_zero() {
            return Cochain::zero(self.degree, self.space);
        }
        Cochain {
            degree: self.degree,
            space: self.space,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Scalar::one())
    }

    /// A linear map as a degree-0 cochain: `key [u, out] = m[out][u]`.
    pub fn from_matrix(space: Space, m: &Matrix) -> Result<Cochain> {
        if m.rows() != space.out_dim() || m.cols() != space.in_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map from dimension {} to {}",
                m.rows(),
                m.cols(),
                space.in_dim(),
                space.out_dim()
            )));
        }
        let mut c = Cochain::zero(0, space);
        for o in 0..m.rows() {
            for u in 0..m.cols() {
                c.add_at(vec![u as u8, o as u8], m.get(o, u));
            }
        }
        Ok(c)
    }

    /// Inverse of [`Cochain::from_matrix`]; only for degree 0.
    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.degree != 0 {
            return Err(Error::SpaceMismatch(format!(
                "a degree {} cochain is not a linear map",
                self.degree
            )));
        }
        let mut m = Matrix::zeros(self.space.out_dim(), self.space.in_dim());
        for (k, v) in &self.entries {
            m.set(k[1] as usize, k[0] as usize, v.clone());
        }
        Ok(m)
    }

    /// A trilinear map as a degree-1 cochain on a space whose input and output
    /// dimensions agree with the tensor's.
    pub fn from_trilinear(space: Space, t: &Trilinear) -> Result<Cochain> {
        let d = t.dim();
        if space.in_dim() != d || space.out_dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "trilinear map of dimension {d} in a space of dimensions {}→{}",
                space.in_dim(),
                space.out_dim()
            )));
        }
        let mut c = Cochain::zero(1, space);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for (l, x) in t.get(i, j, k).iter().enumerate() {
                        c.add_at(vec![i as u8, j as u8, k as u8, l as u8], x);
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn to_trilinear(&self) -> Result<Trilinear> {
        if self.degree != 1 || self.space.in_dim() != self.space.out_dim() {
            return Err(Error::SpaceMismatch("not a trilinear operation on one space".into()));
        }
        let mut t = Trilinear::zero(self.space.in_dim());
        for (k, v) in &self.entries {
            t.set_entry(k[0] as usize, k[1] as usize, k[2] as usize, k[3] as usize, v.clone());
        }
        Ok(t)
    }

    /// Coordinate vector of length `in_dim^{2n+1} · out_dim`; the coordinate of
    /// `[inputs…, out]` is its mixed-radix value with the output digit last.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); coord_len(self.space, self.degree)];
        for (k, x) in &self.entries {
            v[coord_index(self.space, k)] = x.clone();
        }
        v
    }

    pub fn from_coords(degree: usize, space: Space, coords: &[Scalar]) -> Result<Cochain> {
        let n = coord_len(space, degree);
        if coords.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a space of dimension {n}",
                coords.len()
            )));
        }
        let mut c = Cochain::zero(degree, space);
        for (idx, x) in coords.iter().enumerate() {
            if !x.is_zero() {
                c.entries.insert(coord_key(space, degree, idx), x.clone());
            }
        }
        Ok(c)
    }
}

pub(crate) fn coord_len(space: Space, degree: usize) -> usize {
    space.in_dim().pow(2 * degree as u32 + 1) * space.out_dim()
}

pub(crate) fn coord_index(space: Space, key: &[u8]) -> usize {
    let (inputs, out) = key.split_at(key.len() - 1);
    let base = input_index(space.in_dim(), inputs);
    base * space.out_dim() + out[0] as usize
}

pub(crate) fn input_index(in_dim: usize, inputs: &[u8]) -> usize {
    inputs.iter().fold(0usize, |acc, &x| acc * in_dim + x as usize)
}

pub(crate) fn coord_key(space: Space, degree: usize, idx: usize) -> Vec<u8> {
    let arity = 2 * degree + 1;
    let out = idx % space.out_dim();
    let mut rest = idx / space.out_dim();
    let mut key = vec![0u8; arity + 1];
    key[arity] = out as u8;
    for slot in (0..arity).rev() {
        key[slot] = (rest % space.in_dim()) as u8;
        rest /= space.in_dim();
    }
    key
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    index: Vec<usize>,
    value: Scalar,
}

#[derive(Serialize, Deserialize)]
struct CochainJson {
    degree: usize,
    space: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dim_g: Option<usize>,
    #[serde(rename = "dim_V", skip_serializing_if = "Option::is_none", default)]
    dim_v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dim_in: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dim_out: Option<usize>,
    entries: Vec<EntryJson>,
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (dim_g, dim_v, dim_in, dim_out) = match self.space {
            Space::Full { g, v } | Space::F { g, v } => (Some(g), Some(v), None, None),
            Space::Hom { input, output } => (None, None, Some(input), Some(output)),
        };
        CochainJson {
            degree: self.degree,
            space: self.space.tag().to_string(),
            dim_g,
            dim_v,
            dim_in,
            dim_out,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryJson {
                    index: k.iter().map(|&x| x as usize).collect(),
                    value: v.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CochainJson::deserialize(deserializer)?;
        let need = |x: Option<usize>, name: &str| x.ok_or_else(|| D::Error::custom(format!("missing {name}")));
        let space = match raw.space.as_str() {
            "FULL" => Space::Full {
                g: need(raw.dim_g, "dim_g")?,
                v: need(raw.dim_v, "dim_V")?,
            },
            "F" => Space::F {
                g: need(raw.dim_g, "dim_g")?,
                v: need(raw.dim_v, "dim_V")?,
            },
            "HOM" => Space::Hom {
                input: need(raw.dim_in, "dim_in")?,
                output: need(raw.dim_out, "dim_out")?,
            },
            other => return Err(D::Error::custom(format!("unknown cochain space {other:?}"))),
        };
        if space.in_dim() > 256 || space.out_dim() > 256 {
            return Err(D::Error::custom("cochain spaces are limited to 256 basis vectors"));
        }
        Cochain::from_entries(raw.degree, space, raw.entries.into_iter().map(|e| (e.index, e.value)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;

    #[test]
    fn coords_roundtrip() {
        let sp = Space::F { g: 2, v: 3 };
        let c = Cochain::from_entries(1, sp, vec![(vec![0, 2, 1, 1], s(3)), (vec![2, 2, 2, 0], s(-1))]).unwrap();
        let v = c.to_coords();
        assert_eq!(v.len(), 27 * 2);
        assert_eq!(Cochain::from_coords(1, sp, &v).unwrap(), c);
    }

    #[test]
    fn json_roundtrip_and_format() {
        let sp = Space::F { g: 1, v: 1 };
        let c = Cochain::from_entries(0, sp, vec![(vec![0, 0], Scalar::new(1, 2))]).unwrap();
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(
            j,
            r#"{"degree":0,"space":"F","dim_g":1,"dim_V":1,"entries":[{"index":[0,0],"value":"1/2"}]}"#
        );
        let back: Cochain = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn bad_keys_are_rejected() {
        let sp = Space::F { g: 1, v: 1 };
        assert!(Cochain::from_entries(0, sp, vec![(vec![0, 1], s(1))]).is_err());
        assert!(Cochain::from_entries(0, sp, vec![(vec![0], s(1))]).is_err());
    }

    #[test]
    fn repeated_keys_cancel() {
        let sp = Space::Hom { input: 1, output: 1 };
        let c = Cochain::from_entries(0, sp, vec![(vec![0, 0], s(1)), (vec![0, 0], s(-1))]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn matrix_roundtrip() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[0, -1, 0]]);
        let c = Cochain::from_matrix(Space::F { g: 2, v: 3 }, &m).unwrap();
        assert_eq!(c.to_matrix().unwrap(), m);
        assert_eq!(c.get(&[1], 0), s(2));
    }

    #[test]
    fn cap_is_enforced() {
        let sp = Space::Full { g: 4, v: 4 };
        assert!(sp.check_cap(2, DEFAULT_CAP).is_ok());
        assert!(matches!(sp.check_cap(3, DEFAULT_CAP), Err(Error::SizeCap { .. })));
    }
}
