mod common;

use threelie::algebra::{adjoint_representation, ThreeLeibnizAlgebra, ThreeLieAlgebra};
use threelie::corpus;
use threelie::embedding::et_residual;
use threelie::graded::{
    embed_f, graded_bracket, koszul_sign, leibniz_compose, permutations, Cochain, Space,
    Twisted, VData,
};
use threelie::{EmbeddingTensor, Matrix, Scalar};

fn full(g: usize, v: usize) -> Space {
    Space::Full { g, v }
}

fn signed(c: &Cochain, negate: bool) -> Cochain {
    if negate {
        c.neg()
    } else {
        c.clone()
    }
}

#[test]
fn graded_antisymmetry_and_jacobi() {
    let mut rng = common::rng(11);
    for round in 0..50 {
        let dims = [(1, 1), (2, 1), (1, 2), (3, 0), (2, 0)][round % 5];
        let sp = full(dims.0, dims.1);
        let deg = |i: usize| (round + i) % 3;
        let (p, q, r) = (
            common::sparse_cochain(&mut rng, deg(0), sp, 3),
            common::sparse_cochain(&mut rng, deg(1), sp, 3),
            common::sparse_cochain(&mut rng, deg(2) % 2, sp, 3),
        );
        let (dp, dq) = (p.degree(), q.degree());
        let pq = graded_bracket(&p, &q).unwrap();
        let qp = graded_bracket(&q, &p).unwrap();
        assert_eq!(pq, signed(&qp, dp * dq % 2 == 0), "antisymmetry, round {round}");

        let lhs = graded_bracket(&p, &graded_bracket(&q, &r).unwrap()).unwrap();
        let a = graded_bracket(&pq, &r).unwrap();
        let b = graded_bracket(&q, &graded_bracket(&p, &r).unwrap()).unwrap();
        let rhs = a.add(&signed(&b, dp * dq % 2 == 1)).unwrap();
        assert_eq!(lhs, rhs, "Jacobi, round {round}");
    }
}

#[test]
fn square_of_a_degree_one_cochain_is_twice_its_self_composition() {
    let mut rng = common::rng(12);
    for round in 0..20 {
        let sp = full(2 + round % 2, 0);
        let pi = common::dense_cochain(&mut rng, 1, sp);
        let sq = graded_bracket(&pi, &pi).unwrap();
        let comp = leibniz_compose(&pi, &pi).unwrap();
        assert_eq!(sq, comp.scale(&Scalar::from_int(2)));
    }
}

#[test]
fn square_zero_iff_3leibniz() {
    let mut rng = common::rng(13);
    let mut seen = (0, 0);
    let mut check = |pi: &Cochain| {
        let l = ThreeLeibnizAlgebra::new(None, pi.to_trilinear().unwrap()).unwrap();
        let leib = l.check_3leibniz().passed();
        let zero = graded_bracket(pi, pi).unwrap().is_zero();
        assert_eq!(leib, zero);
        if leib {
            seen.0 += 1;
        } else {
            seen.1 += 1;
        }
    };
    for g in [corpus::levi_civita4(), corpus::single_relation3(), ThreeLieAlgebra::abelian(2)] {
        if g.dim() <= 3 {
            check(&Cochain::from_trilinear(full(g.dim(), 0), g.bracket()).unwrap());
        }
    }
    let g = corpus::single_relation3();
    let hs = threelie::hemisemidirect_product(
        &ThreeLieAlgebra::abelian(2),
        &corpus::abelian2_rep(Matrix::from_ints(&[&[1]])),
    )
    .unwrap();
    check(&Cochain::from_trilinear(full(3, 0), hs.bracket()).unwrap());
    check(&Cochain::from_trilinear(full(3, 0), g.bracket()).unwrap());
    for round in 0..12 {
        let d = 2 + round % 2;
        check(&common::dense_cochain(&mut rng, 1, full(d, 0)));
        check(&common::sparse_cochain(&mut rng, 1, full(d, 0), 1));
    }
    assert!(seen.0 >= 3 && seen.1 >= 3, "{seen:?}");
}

fn small_vdata() -> VData {
    // dim g = dim V = 2: the abelian plane acting by a single operator.
    let g = ThreeLieAlgebra::abelian(2);
    let rho = corpus::abelian2_rep(Matrix::from_ints(&[&[1, 2], &[0, -1]]));
    VData::new(&g, &rho).unwrap()
}

fn lc_vdata() -> VData {
    let g = corpus::levi_civita4();
    let ad = adjoint_representation(&g).unwrap();
    VData::new(&g, &ad).unwrap()
}

#[test]
fn f_is_abelian() {
    let mut rng = common::rng(14);
    let vd = lc_vdata();
    for _ in 0..5 {
        let f = embed_f(&common::dense_cochain(&mut rng, 0, vd.f_space())).unwrap();
        let h = embed_f(&common::dense_cochain(&mut rng, 0, vd.f_space())).unwrap();
        assert!(graded_bracket(&f, &h).unwrap().is_zero());
    }
}

#[test]
fn lie3_graded_symmetry() {
    let mut rng = common::rng(15);
    let vd = small_vdata();
    for round in 0..10 {
        let d = |i: usize| ((round >> i) & 1) as usize;
        let p = common::dense_cochain(&mut rng, d(0), vd.f_space());
        let q = common::dense_cochain(&mut rng, d(1), vd.f_space());
        let r = common::dense_cochain(&mut rng, d(2), vd.f_space());
        let pqr = vd.lie3_bracket(&p, &q, &r).unwrap();
        assert_eq!(pqr.degree(), p.degree() + q.degree() + r.degree() + 1);
        let qpr = vd.lie3_bracket(&q, &p, &r).unwrap();
        let prq = vd.lie3_bracket(&p, &r, &q).unwrap();
        assert_eq!(pqr, signed(&qpr, p.degree() * q.degree() % 2 == 1));
        assert_eq!(pqr, signed(&prq, q.degree() * r.degree() % 2 == 1));
    }
}

#[test]
fn generalized_jacobi() {
    let mut rng = common::rng(16);
    let vd = small_vdata();
    for degrees in [[0, 0, 0, 0, 0], [1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [0, 1, 0, 1, 0]] {
        let xs: Vec<Cochain> = degrees
            .iter()
            .map(|&d| common::dense_cochain(&mut rng, d, vd.f_space()))
            .collect();
        let total: usize = degrees.iter().sum::<usize>() + 2;
        let mut sum = Cochain::zero(total, vd.f_space());
        for perm in permutations(5) {
            let inner = vd.lie3_bracket(&xs[perm[0]], &xs[perm[1]], &xs[perm[2]]).unwrap();
            let outer = vd.lie3_bracket(&inner, &xs[perm[3]], &xs[perm[4]]).unwrap();
            let eps = koszul_sign(&perm, &degrees);
            sum = sum.add(&signed(&outer, eps < 0)).unwrap();
        }
        assert!(sum.is_zero(), "degrees {degrees:?}");
    }
}

#[test]
fn fourth_derived_bracket_vanishes() {
    let mut rng = common::rng(17);
    for vd in [small_vdata(), lc_vdata()] {
        let a: Vec<Cochain> = (0..4).map(|_| common::dense_cochain(&mut rng, 0, vd.f_space())).collect();
        let l4 = vd.derived(&[&a[0], &a[1], &a[2], &a[3]]).unwrap();
        assert!(l4.is_zero());
        assert!(vd.derived(&[&a[0]]).unwrap().is_zero());
        assert!(vd.derived(&[&a[0], &a[1]]).unwrap().is_zero());
    }
}

#[test]
fn mc_defect_matches_residual_on_random_maps() {
    let mut rng = common::rng(18);
    let vd = lc_vdata();
    for _ in 0..5 {
        let t = common::matrix(&mut rng, 4, 4);
        let d = vd.mc_defect(&t).unwrap();
        let r = et_residual(vd.g(), vd.rho(), &t);
        for u in 0..4 {
            for v in 0..4 {
                for w in 0..4 {
                    assert_eq!(d.value(&[u, v, w]), r[u][v][w]);
                }
            }
        }
    }
}

#[test]
fn twisted_mc_matches_defect_of_sum() {
    let mut rng = common::rng(19);
    let g = corpus::levi_civita4();
    let ad = adjoint_representation(&g).unwrap();
    let t = corpus::levi_civita_block_tensor(1, 2, -1, 3);
    let e = EmbeddingTensor::new(g, ad, t.clone()).unwrap().verify().unwrap();
    let tw = Twisted::new(&e).unwrap();
    for _ in 0..3 {
        let tp = common::matrix(&mut rng, 4, 4);
        let lhs = tw.mc_residual(&tp).unwrap();
        let rhs = tw.vdata().mc_defect(&t.add(&tp)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
