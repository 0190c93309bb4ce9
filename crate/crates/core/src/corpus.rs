//! Small named algebras used throughout the tests, fixtures and the CLI examples.

use crate::algebra::{Representation, ThreeLieAlgebra, Trilinear};
use crate::linalg::Matrix;
use crate::scalar::s;

/// Sign of the permutation `(a, b, c, d)` of `(0, 1, 2, 3)`, zero on repeats.
pub fn levi_civita_sign(idx: [usize; 4]) -> i64 {
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return 0;
            }
        }
    }
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] > idx[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn levi_civita_tensor() -> Trilinear {
    let mut t = Trilinear::zero(4);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let e = levi_civita_sign([i, j, k, l]);
                    if e != 0 {
                        t.set_entry(i, j, k, l, s(e));
                    }
                }
            }
        }
    }
    t
}

/// The 4-dimensional simple 3-Lie algebra `[e_i, e_j, e_k] = Σ_l ε_{ijkl} e_l`.
pub fn levi_civita4() -> ThreeLieAlgebra {
    ThreeLieAlgebra::from_tensor(None, &levi_civita_tensor())
        .and_then(ThreeLieAlgebra::verify)
        .expect("Levi-Civita algebra satisfies the fundamental identity")
}

/// The nonzero constants `c[i][j][k][l]` of the Levi-Civita algebra in
/// lexicographic order (24 of them).
pub fn levi_civita_support() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    if levi_civita_sign([i, j, k, l]) != 0 {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// The Levi-Civita constants with the sign of the single entry
/// `levi_civita_support()[which]` flipped and no re-normalization. Unverified.
pub fn levi_civita4_mutant(which: usize) -> ThreeLieAlgebra {
    let [i, j, k, l] = levi_civita_support()[which % 24];
    let mut t = levi_civita_tensor();
    t.set_entry(i, j, k, l, s(-levi_civita_sign([i, j, k, l])));
    ThreeLieAlgebra::from_raw_tensor(None, t).expect("shape is consistent")
}

/// `[e_i, e_j, e_k] = Σ_l ε_{ijkl} η_l e_l` for a diagonal `η`. Flipping the
/// sign of one sorted-triple constant of the Levi-Civita algebra and
/// re-skewing lands here, and the fundamental identity still holds.
pub fn levi_civita4_metric(eta: [i64; 4]) -> ThreeLieAlgebra {
    let mut t = Trilinear::zero(4);
    for [i, j, k, l] in levi_civita_support() {
        t.set_entry(i, j, k, l, s(levi_civita_sign([i, j, k, l]) * eta[l]));
    }
    ThreeLieAlgebra::from_tensor(None, &t).expect("shape is consistent")
}

/// The 3-dimensional algebra with the single relation `[e1, e2, e3] = e1`.
pub fn single_relation3() -> ThreeLieAlgebra {
    ThreeLieAlgebra::from_sorted(3, &[((0, 1, 2), vec![s(1), s(0), s(0)])])
        .and_then(ThreeLieAlgebra::verify)
        .expect("single relation algebra satisfies the fundamental identity")
}

/// A representation of the abelian 2-dimensional algebra with `ρ(e1, e2) = a`.
pub fn abelian2_rep(a: Matrix) -> Representation {
    let n = a.rows();
    Representation::from_pairs(2, n, vec![((0, 1), a)])
        .and_then(|r| r.verify(&ThreeLieAlgebra::abelian(2)))
        .expect("every single operator is a representation of the abelian plane")
}

/// Embedding tensors `V = g → g` on the Levi-Civita algebra with the adjoint
/// representation whose image lies in `span(e1, e2)` and that vanish on
/// `span(e3, e4)`; the 2x2 block is free.
pub fn levi_civita_block_tensor(a: i64, b: i64, c: i64, d: i64) -> Matrix {
    let mut t = Matrix::zeros(4, 4);
    t.set(0, 0, s(a));
    t.set(0, 1, s(b));
    t.set(1, 0, s(c));
    t.set(1, 1, s(d));
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_sign_values() {
        assert_eq!(levi_civita_sign([0, 1, 2, 3]), 1);
        assert_eq!(levi_civita_sign([1, 0, 2, 3]), -1);
        assert_eq!(levi_civita_sign([3, 2, 1, 0]), 1);
        assert_eq!(levi_civita_sign([0, 0, 2, 3]), 0);
    }

    #[test]
    fn mutants_differ_from_original() {
        let g = levi_civita4();
        assert_eq!(levi_civita_support().len(), 24);
        for w in 0..24 {
            assert_ne!(levi_civita4_mutant(w).bracket(), g.bracket());
        }
    }

    #[test]
    fn metric_variants_satisfy_the_fundamental_identity() {
        for eta in [[1, 1, 1, -1], [-1, 1, 1, 1], [1, 0, 1, 1], [2, 1, 1, 1]] {
            assert!(levi_civita4_metric(eta).check_fundamental_identity().passed());
        }
    }
}
