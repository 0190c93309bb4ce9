//! The composition `P∘Q` and the graded bracket on Leibniz cochains.

use std::collections::{BTreeMap, HashMap};

use super::cochain::{Cochain, Space, DEFAULT_CAP};
use super::shuffle::shuffles;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn require_full_pair(p: &Cochain, q: &Cochain) -> Result<()> {
    match (p.space(), q.space()) {
        (Space::Full { .. }, Space::Full { .. }) if p.space() == q.space() => Ok(()),
        (a, b) => Err(Error::SpaceMismatch(format!(
            "composition needs two FULL cochains on the same space, got {a:?} and {b:?}"
        ))),
    }
}

fn sign_of(exp: usize) -> bool {
    exp % 2 == 1
}

struct Acc {
    map: HashMap<Vec<u8>, Scalar>,
}

impl Acc {
    fn add(&mut self, key: Vec<u8>, value: Scalar) {
        *self.map.entry(key).or_insert_with(Scalar::zero) += value;
    }
}

/// `P∘Q` for FULL cochains of degrees `p` and `q`, with the default size cap.
pub fn leibniz_compose(p: &Cochain, q: &Cochain) -> Result<Cochain> {
    leibniz_compose_capped(p, q, DEFAULT_CAP)
}

/// `P∘Q` of degree `p + q`: `Q` is substituted into the left or right slot of
/// the k-th pair of `P` over `(k-1, q)`-shuffles with sign `(-1)^{(k-1)q}(-1)^σ`,
/// and into the last argument of `P` over `(p, q)`-shuffles with sign
/// `(-1)^{pq}(-1)^σ`.
pub fn leibniz_compose_capped(p: &Cochain, q: &Cochain, cap: u128) -> Result<Cochain> {
    require_full_pair(p, q)?;
    let dp = p.degree();
    let dq = q.degree();
    let n = dp + dq;
    let space = p.space();
    space.check_cap(n, cap)?;

    let mut by_out: HashMap<u8, Vec<(&[u8], &Scalar)>> = HashMap::new();
    for (key, v) in q.entries() {
        let (inputs, out) = key.split_at(key.len() - 1);
        by_out.entry(out[0]).or_default().push((inputs, v));
    }
    let mut acc = Acc { map: HashMap::new() };
    if by_out.is_empty() || p.is_zero() {
        return Ok(Cochain::zero(n, space));
    }

    let key_len = 2 * n + 2;
    for k in 1..=dp {
        let shs = shuffles(k - 1, dq);
        let base_neg = sign_of((k - 1) * dq);
        for (pkey, pv) in p.entries() {
            let (a_k, b_k) = (pkey[2 * (k - 1)], pkey[2 * (k - 1) + 1]);
            for left in [true, false] {
                let target = if left { a_k } else { b_k };
                let Some(qs) = by_out.get(&target) else {
                    continue;
                };
                for (qin, qv) in qs {
                    let coeff = pv * *qv;
                    let z = qin[2 * dq];
                    for sh in &shs {
                        let mut key = vec![0u8; key_len];
                        for (a, &pos) in sh.first.iter().enumerate() {
                            key[2 * pos] = pkey[2 * a];
                            key[2 * pos + 1] = pkey[2 * a + 1];
                        }
                        for (b, &pos) in sh.second.iter().enumerate() {
                            key[2 * pos] = qin[2 * b];
                            key[2 * pos + 1] = qin[2 * b + 1];
                        }
                        let slot = k + dq - 1;
                        if left {
                            key[2 * slot] = z;
                            key[2 * slot + 1] = b_k;
                        } else {
                            key[2 * slot] = a_k;
                            key[2 * slot + 1] = z;
                        }
                        // Remaining pairs k+1..p of P, then x and the output.
                        key[2 * (k + dq)..2 * n + 2].copy_from_slice(&pkey[2 * k..2 * dp + 2]);
                        let neg = base_neg ^ (sh.sign < 0);
                        acc.add(key, coeff.clone().signed(neg));
                    }
                }
            }
        }
    }

    let shs = shuffles(dp, dq);
    let base_neg = sign_of(dp * dq);
    for (pkey, pv) in p.entries() {
        let x = pkey[2 * dp];
        let Some(qs) = by_out.get(&x) else {
            continue;
        };
        let out = pkey[2 * dp + 1];
        for (qin, qv) in qs {
            let coeff = pv * *qv;
            for sh in &shs {
                let mut key = vec![0u8; key_len];
                for (a, &pos) in sh.first.iter().enumerate() {
                    key[2 * pos] = pkey[2 * a];
                    key[2 * pos + 1] = pkey[2 * a + 1];
                }
                for (b, &pos) in sh.second.iter().enumerate() {
                    key[2 * pos] = qin[2 * b];
                    key[2 * pos + 1] = qin[2 * b + 1];
                }
                key[2 * n] = qin[2 * dq];
                key[2 * n + 1] = out;
                let neg = base_neg ^ (sh.sign < 0);
                acc.add(key, coeff.clone().signed(neg));
            }
        }
    }
    let map: BTreeMap<Vec<u8>, Scalar> = acc.map.into_iter().collect();
    Ok(Cochain::from_map(n, space, map))
}

/// `[P, Q] = P∘Q - (-1)^{pq} Q∘P`, with the default size cap.
pub fn graded_bracket(p: &Cochain, q: &Cochain) -> Result<Cochain> {
    graded_bracket_capped(p, q, DEFAULT_CAP)
}

pub fn graded_bracket_capped(p: &Cochain, q: &Cochain, cap: u128) -> Result<Cochain> {
    let pq = leibniz_compose_capped(p, q, cap)?;
    let qp = leibniz_compose_capped(q, p, cap)?;
    if sign_of(p.degree() * q.degree()) {
        pq.add(&qp)
    } else {
        pq.sub(&qp)
    }
}
