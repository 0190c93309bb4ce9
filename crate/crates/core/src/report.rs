//! Verification reports: every violated instance of an identity is kept as a
//! witness together with its residual.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Which identity failed, e.g. `"fundamental_identity"`.
    pub axiom: String,
    /// Basis indices of the violating tuple, in the order the identity names them.
    pub indices: Vec<usize>,
    /// Nonzero residual (left side minus right side), flattened row-major for
    /// operator-valued identities.
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub witnesses: Vec<Witness>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    status: String,
    witnesses: Vec<Witness>,
}

impl Serialize for Report {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            status: self.status().to_string(),
            witnesses: self.witnesses.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Report {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ReportJson::deserialize(deserializer)?;
        Ok(Report {
            witnesses: raw.witnesses,
        })
    }
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// Records a witness when `residual` has a nonzero entry.
    pub fn check(&mut self, axiom: &str, indices: &[usize], residual: Vec<Scalar>) {
        if residual.iter().any(|x| !x.is_zero()) {
            self.witnesses.push(Witness {
                axiom: axiom.to_string(),
                indices: indices.to_vec(),
                residual,
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.witnesses.extend(other.witnesses);
    }

    pub fn witnesses_for<'a>(&'a self, axiom: &'a str) -> impl Iterator<Item = &'a Witness> + 'a {
        self.witnesses.iter().filter(move |w| w.axiom == axiom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;

    #[test]
    fn zero_residuals_are_not_witnesses() {
        let mut r = Report::new();
        r.check("a", &[0, 1], vec![s(0), s(0)]);
        assert!(r.passed());
        r.check("a", &[1, 0], vec![s(0), s(2)]);
        assert_eq!(r.status(), "fail");
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"status":"fail","witnesses":[{"axiom":"a","indices":[1,0],"residual":["0","2"]}]}"#
        );
    }
}
