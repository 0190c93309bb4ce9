mod common;

use common::corpus_tensors;
use threelie::algebra::{adjoint_representation, Representation, ThreeLieAlgebra};
use threelie::cohomology::{ETComplex, TCochain};
use threelie::corpus;
use threelie::deformation::{
    check_equivalence, exponential_transform, infinitesimals_cohomologous, DeformationSeries, EquivalenceData,
    Extension,
};
use threelie::graded::Cochain;
use threelie::{EmbeddingTensor, Error, Matrix, Scalar};

fn lc(t: Matrix) -> EmbeddingTensor {
    let g = corpus::levi_civita4();
    let ad = adjoint_representation(&g).unwrap();
    EmbeddingTensor::new(g, ad, t).unwrap().verify().unwrap()
}

fn unit_matrix(r: usize, c: usize) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    m.set(r, c, Scalar::one());
    m
}

fn add(a: &mut [Scalar], b: &[Scalar]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn sub(a: &mut [Scalar], b: &[Scalar]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

/// `[τᵢu,τⱼv,τₖw] - τₖ(ρ(τᵢu,τⱼv)w)` for one index triple.
fn term(e: &EmbeddingTensor, taus: [&Matrix; 3], u: usize, v: usize, w: usize) -> Vec<Scalar> {
    let (a, b, c) = (taus[0].column(u), taus[1].column(v), taus[2].column(w));
    let mut r = e.g().apply(&a, &b, &c);
    let mut ew = vec![Scalar::zero(); e.dim_v()];
    ew[w] = Scalar::one();
    sub(&mut r, &taus[2].mul_vec(&e.rho().act(&a, &b, &ew)));
    r
}

/// Every verified order-1 series built from the cocycle basis of each corpus tensor.
fn corpus_series() -> Vec<(String, DeformationSeries)> {
    let mut out = Vec::new();
    for (name, e) in corpus_tensors() {
        let cx = ETComplex::new(&e).unwrap();
        for (i, z) in cx.differential(2).unwrap().kernel_basis().into_iter().enumerate().take(6) {
            let tau1 = Cochain::from_coords(0, cx.space(), &z).unwrap().to_matrix().unwrap();
            let d = DeformationSeries::new(&e, vec![e.t().clone(), tau1]).unwrap().verify().unwrap();
            out.push((format!("{name}#{i}"), d));
        }
    }
    out
}

#[test]
fn trivial_series_pass_at_every_order() {
    for (name, e) in corpus_tensors() {
        for n in 0..=3 {
            let d = DeformationSeries::trivial(&e, n).unwrap();
            assert!(d.check_order_n().passed(), "{name} n={n}");
            let d = d.verify().unwrap();
            assert!(d.obstruction().unwrap().is_zero());
            match d.extend().unwrap() {
                Extension::Extended { tau_next, .. } => assert!(tau_next.is_zero()),
                Extension::Obstructed { .. } => panic!("{name}: zero obstruction"),
            }
        }
    }
}

#[test]
fn first_coefficient_is_the_displayed_relation_and_dt() {
    let mut rng = common::rng(5);
    for (name, e) in corpus_tensors() {
        let cx = ETComplex::new(&e).unwrap();
        for _ in 0..3 {
            let tau1 = common::matrix(&mut rng, e.dim_g(), e.dim_v());
            let d = DeformationSeries::new(&e, vec![e.t().clone(), tau1.clone()]).unwrap();
            let r = d.coefficient_residual(1);
            let t = e.t();
            let dv = e.dim_v();
            for u in 0..dv {
                for v in 0..dv {
                    for w in 0..dv {
                        let mut expect = term(&e, [t, t, &tau1], u, v, w);
                        add(&mut expect, &term(&e, [&tau1, t, t], u, v, w));
                        add(&mut expect, &term(&e, [t, &tau1, t], u, v, w));
                        assert_eq!(r[u][v][w], expect, "{name} ({u},{v},{w})");
                    }
                }
            }
            let dt = cx.dt(&Cochain::from_matrix(cx.space(), &tau1).unwrap()).unwrap();
            assert_eq!(d.residual_cochain(1).unwrap(), dt, "{name}");
        }
    }
}

#[test]
fn infinitesimals_are_cocycles() {
    for (name, d) in corpus_series() {
        let c = d.infinitesimal().unwrap();
        let cx = ETComplex::new(d.tensor()).unwrap();
        assert!(cx.dt(&c).unwrap().is_zero(), "{name}");
    }
    let e = lc(Matrix::identity(4));
    let d = DeformationSeries::trivial(&e, 1).unwrap().verify().unwrap();
    assert!(d.infinitesimal().unwrap().is_zero());
    let unverified = DeformationSeries::trivial(&e, 1).unwrap();
    assert!(matches!(unverified.infinitesimal(), Err(Error::Unverified(_))));
    assert!(matches!(unverified.obstruction(), Err(Error::Unverified(_))));
}

#[test]
fn coboundary_infinitesimal_is_a_cocycle() {
    let e = lc(corpus::levi_civita_block_tensor(1, 2, -1, 3));
    let cx = ETComplex::new(&e).unwrap();
    for p in 0..6 {
        let mut x = vec![Scalar::zero(); 6];
        x[p] = Scalar::one();
        let tau1 = cx.delta(&x).unwrap().to_matrix().unwrap();
        let d = DeformationSeries::new(&e, vec![e.t().clone(), tau1]).unwrap().verify().unwrap();
        assert!(cx.dt(&d.infinitesimal().unwrap()).unwrap().is_zero());
    }
}

#[test]
fn order_one_obstruction_by_direct_evaluation() {
    for (name, d) in corpus_series() {
        let e = d.tensor();
        let (t, tau1) = (&d.taus()[0], &d.taus()[1]);
        let ob = d.obstruction().unwrap();
        let dv = e.dim_v();
        for u in 0..dv {
            for v in 0..dv {
                for w in 0..dv {
                    let mut expect = term(e, [tau1, tau1, t], u, v, w);
                    add(&mut expect, &term(e, [tau1, t, tau1], u, v, w));
                    add(&mut expect, &term(e, [t, tau1, tau1], u, v, w));
                    assert_eq!(ob.value(&[u, v, w]), expect, "{name}");
                }
            }
        }
    }
}

#[test]
fn obstructions_agree_and_are_cocycles_along_extensions() {
    for (name, d) in corpus_series() {
        let mut d = d;
        let cx = ETComplex::new(d.tensor()).unwrap();
        while d.order() < 3 {
            let ob = d.obstruction().unwrap();
            assert_eq!(ob, d.obstruction_from_brackets().unwrap(), "{name} order {}", d.order());
            assert!(cx.dt(&ob).unwrap().is_zero(), "{name}");
            let solvable = cx.coboundary_preimage(3, &ob).unwrap().is_some();
            match d.extend().unwrap() {
                Extension::Extended { tau_next, series } => {
                    assert!(solvable, "{name}");
                    assert_eq!(series.order(), d.order() + 1);
                    assert_eq!(series.taus().last().unwrap(), &tau_next);
                    assert!(series.check_order_n().passed(), "{name}");
                    d = series;
                }
                Extension::Obstructed { obstruction } => {
                    assert!(!solvable, "{name}");
                    assert_eq!(obstruction, ob);
                    break;
                }
            }
        }
    }
}

#[test]
fn obstructed_fixture() {
    let e = lc(unit_matrix(0, 0));
    let d = DeformationSeries::new(&e, vec![e.t().clone(), unit_matrix(2, 1)]).unwrap().verify().unwrap();
    let ob = d.obstruction().unwrap();
    assert!(!ob.is_zero());
    assert_eq!(ob, d.obstruction_from_brackets().unwrap());
    match d.extend().unwrap() {
        Extension::Obstructed { obstruction } => assert_eq!(obstruction, ob),
        Extension::Extended { .. } => panic!("obstruction class is nonzero"),
    }
    // No preimage in either sign.
    let cx = ETComplex::new(&e).unwrap();
    assert!(cx.coboundary_preimage(3, &ob).unwrap().is_none());
}

#[test]
fn unobstructed_fixture_with_nonzero_obstruction() {
    let t = corpus::levi_civita_block_tensor(1, 2, -1, 3);
    let e = lc(t.clone());
    let mut tau1 = Matrix::zeros(4, 4);
    tau1.set(0, 2, Scalar::one());
    tau1.set(2, 0, Scalar::new(2, 5));
    tau1.set(2, 1, Scalar::new(9, 5));
    let d = DeformationSeries::new(&e, vec![t, tau1]).unwrap().verify().unwrap();
    let ob = d.obstruction().unwrap();
    assert!(!ob.is_zero());
    let Extension::Extended { tau_next, series } = d.extend().unwrap() else {
        panic!("obstruction is a coboundary");
    };
    let mut expect = Matrix::zeros(4, 4);
    expect.set(2, 2, Scalar::new(3, 5));
    assert_eq!(tau_next, expect);
    assert!(series.check_order_n().passed());
    // The opposite sign does not extend.
    let wrong = d.extended_by(tau_next.scale(&Scalar::from_int(-1))).unwrap();
    assert!(!wrong.check_order_n().passed());
}

#[test]
fn exponential_equivalence_shifts_by_delta() {
    let e = lc(corpus::levi_civita_block_tensor(1, 2, -1, 3));
    let cx = ETComplex::new(&e).unwrap();
    let base = corpus_series().into_iter().find(|(n, _)| n.starts_with("lc_block")).unwrap().1;
    let Extension::Extended { series: d, .. } = base.extend().unwrap() else {
        panic!("first block cocycle extends");
    };
    let x: Vec<Scalar> = [1, 0, -2, 1, 3, 0].iter().map(|&n| Scalar::from_int(n)).collect();
    let d2 = exponential_transform(&d, &x).unwrap().verify().unwrap();
    let eq = EquivalenceData::exponential(&e, x.clone(), d.order()).unwrap();
    assert!(check_equivalence(&d, &d2, &eq).unwrap().passed());

    let tr = |m: &Matrix, u: usize| m.column(u);
    let (ad, rx) = cx.wedge_operators(&x).unwrap();
    let t = e.t();
    for u in 0..4 {
        // τ̃₁u = τ₁u + Tρ(X)u - [X, Tu]
        let mut expect = tr(&d.taus()[1], u);
        add(&mut expect, &t.mul_vec(&rx.column(u)));
        sub(&mut expect, &ad.mul_vec(&t.column(u)));
        assert_eq!(tr(&d2.taus()[1], u), expect);
    }
    let shift = d2.infinitesimal().unwrap().sub(&d.infinitesimal().unwrap()).unwrap();
    assert_eq!(shift, cx.delta(&x).unwrap());
    let found = infinitesimals_cohomologous(&d, &d2).unwrap().expect("same class");
    assert_eq!(cx.delta(&found).unwrap(), shift);

    let id = EquivalenceData::identity(&e, d.order());
    assert!(check_equivalence(&d, &d, &id).unwrap().passed());
    let r = check_equivalence(&d, &d2, &id).unwrap();
    assert!(r.witnesses_for("series_intertwining").next().is_some());

    let short = d.truncate(1).unwrap().verify().unwrap();
    assert!(matches!(check_equivalence(&short, &d2, &eq), Err(Error::OrderMismatch(_))));
}

#[test]
fn equivalence_rejects_non_endomorphisms() {
    let e = lc(Matrix::identity(4));
    let d = DeformationSeries::trivial(&e, 2).unwrap().verify().unwrap();
    let mut eq = EquivalenceData::identity(&e, 2);
    eq.phis[0] = unit_matrix(0, 1);
    let r = check_equivalence(&d, &d, &eq).unwrap();
    assert!(r.witnesses_for("phi_endomorphism").next().is_some());
}

#[test]
fn vanishing_h3_extends_every_cocycle() {
    let ab = ThreeLieAlgebra::abelian(2);
    let rho = Representation::zero(2, 0).verify(&ab).unwrap();
    let e = EmbeddingTensor::new(ab, rho, Matrix::zeros(2, 0)).unwrap().verify().unwrap();
    let cx = ETComplex::new(&e).unwrap();
    assert_eq!(cx.cohomology(3).unwrap().dim_h, 0);
    let mut d = DeformationSeries::trivial(&e, 1).unwrap().verify().unwrap();
    for n in 1..=3 {
        let Extension::Extended { series, .. } = d.extend().unwrap() else {
            panic!("H³ = 0 at order {n}");
        };
        d = series;
    }
    assert_eq!(d.order(), 4);
}

#[test]
fn scaling_cocycles_extend_through_order_three() {
    // H³ = 1 here, yet every 2-cocycle is a multiple of T and T_t = (1 + λt)T.
    let e = lc(Matrix::identity(4));
    let cx = ETComplex::new(&e).unwrap();
    let h2 = cx.cohomology(2).unwrap();
    assert_eq!((h2.dim_z, cx.cohomology(3).unwrap().dim_h), (1, 1));
    let TCochain::Map(z) = &h2.representatives[0] else { panic!() };
    for lambda in [-2i64, 1, 3] {
        let tau1 = z.to_matrix().unwrap().scale(&Scalar::from_int(lambda));
        let mut d = DeformationSeries::new(&e, vec![e.t().clone(), tau1]).unwrap().verify().unwrap();
        for _ in 1..=3 {
            let Extension::Extended { series, .. } = d.extend().unwrap() else {
                panic!("λ = {lambda}");
            };
            d = series;
        }
        assert!(d.check_order_n().passed());
    }
}
