mod common;

use common::corpus_tensors;
use threelie::algebra::{Representation, ThreeLieAlgebra};
use threelie::cohomology::{check_leibniz_rep, cohomology_group, induced_rep, wedge_pairs, ETComplex};
use threelie::graded::Twisted;
use threelie::{EmbeddingTensor, Matrix, Scalar};

#[test]
fn induced_reps_pass() {
    for (name, e) in corpus_tensors() {
        let l = e.induced_3leibniz().unwrap();
        assert!(check_leibniz_rep(&l, &induced_rep(&e).unwrap()).unwrap().passed(), "{name}");
    }
}

#[test]
fn dt_squares_to_zero() {
    for (name, e) in corpus_tensors() {
        let cx = ETComplex::new(&e).unwrap();
        for k in 1..=2 {
            let a = cx.differential(k).unwrap();
            let b = cx.differential(k + 1).unwrap();
            assert!(b.mul(&a).is_zero(), "{name} k={k}");
        }
    }
}

#[test]
fn delta_is_a_cocycle() {
    for (name, e) in corpus_tensors() {
        let cx = ETComplex::new(&e).unwrap();
        let n = wedge_pairs(e.dim_g()).len();
        for p in 0..n {
            let mut x = vec![Scalar::zero(); n];
            x[p] = Scalar::one();
            let d = cx.delta(&x).unwrap();
            assert!(cx.dt(&d).unwrap().is_zero(), "{name} pair {p}");
        }
    }
}

#[test]
fn dt_matches_twisted_l1() {
    let mut rng = common::rng(21);
    for (name, e) in corpus_tensors() {
        let cx = ETComplex::new(&e).unwrap();
        let tw = Twisted::new(&e).unwrap();
        for pairs in 0..=1 {
            let theta = common::dense_cochain(&mut rng, pairs, cx.space());
            let d = cx.dt(&theta).unwrap();
            let l1 = tw.l1(&theta).unwrap();
            // θ is an (pairs+1)-cochain of the Leibniz complex.
            let expect = if pairs % 2 == 0 { l1 } else { l1.neg() };
            assert_eq!(d, expect, "{name} pairs={pairs}");
        }
    }
}

// Z and B in degrees 1 and 2 agree with a direct linearization of the
// embedding-tensor equation; degree 3 values are frozen from this complex.
#[test]
fn cohomology_dimensions() {
    let expected: &[(&str, [(usize, usize, usize); 3])] = &[
        ("lc_identity", [(6, 0, 6), (1, 0, 1), (16, 15, 1)]),
        ("lc_scalar", [(6, 0, 6), (1, 0, 1), (16, 15, 1)]),
        ("lc_block", [(1, 0, 1), (8, 5, 3), (46, 8, 38)]),
        ("lc_zero", [(6, 0, 6), (16, 0, 16), (256, 0, 256)]),
        ("plane_rank_one", [(0, 0, 0), (3, 1, 2), (12, 1, 11)]),
        ("single_relation_identity", [(3, 0, 3), (1, 0, 1), (12, 8, 4)]),
    ];
    let corpus = corpus_tensors();
    for (name, dims) in expected {
        let e = &corpus.iter().find(|(n, _)| n == name).unwrap().1;
        for (k, want) in (1..=3).zip(dims) {
            let h = cohomology_group(e, k).unwrap();
            assert_eq!((h.dim_z, h.dim_b, h.dim_h), *want, "{name} k={k}");
            assert_eq!(h.representatives.len(), h.dim_h);
        }
    }
}

#[test]
fn zero_tensor_has_full_h2() {
    for (name, e) in corpus_tensors() {
        if !e.t().is_zero() {
            continue;
        }
        let h = cohomology_group(&e, 2).unwrap();
        assert_eq!(h.dim_h, e.dim_v() * e.dim_g(), "{name}");
    }
    let ab = ThreeLieAlgebra::abelian(3);
    let rho = Representation::zero(3, 2).verify(&ab).unwrap();
    let e = EmbeddingTensor::new(ab, rho, Matrix::zeros(3, 2)).unwrap().verify().unwrap();
    assert_eq!(cohomology_group(&e, 2).unwrap().dim_h, 6);
}

#[test]
fn representatives_are_independent_cocycles() {
    for (name, e) in corpus_tensors() {
        let cx = ETComplex::new(&e).unwrap();
        let h = cx.cohomology(2).unwrap();
        for r in &h.representatives {
            let d = cx.apply(2, r).unwrap();
            assert!(d.is_zero(), "{name}");
            let threelie::cohomology::TCochain::Map(c) = r else { panic!("degree 2 is a map") };
            assert!(cx.coboundary_preimage(2, c).unwrap().is_none(), "{name}");
        }
    }
}
