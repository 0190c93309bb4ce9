//! Regenerates the JSON files in this directory.
//!
//! ```text
//! cargo run --example gen_fixtures
//! ```
//!
//! Every fixture is checked against the library before it is written, so the
//! expected outcome of each command is part of the generator.

use std::path::Path;

use threelie::algebra::{adjoint_representation, ThreeLieAlgebra};
use threelie::cohomology::ETComplex;
use threelie::corpus;
use threelie::deformation::{exponential_transform, DeformationSeries, EquivalenceData, Extension};
use threelie::embedding::from_square_zero_derivation;
use threelie::io::InputFile;
use threelie::{EmbeddingTensor, Matrix, Scalar};

fn lc(t: Matrix) -> EmbeddingTensor {
    let g = corpus::levi_civita4();
    let ad = adjoint_representation(&g).unwrap();
    EmbeddingTensor::new(g, ad, t).unwrap()
}

fn unit4(r: usize, c: usize) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    m.set(r, c, Scalar::one());
    m
}

fn with_series(e: &EmbeddingTensor, taus: &[Matrix]) -> InputFile {
    let mut f = InputFile::from_tensor(e);
    f.order = Some(taus.len() - 1);
    f.taus = Some(taus.to_vec());
    f
}

pub fn fixtures() -> Vec<(&'static str, String)> {
    let mut out = Vec::new();

    let plane = corpus::abelian2_rep(Matrix::from_ints(&[&[1, 2], &[0, -1]]));
    let ab = ThreeLieAlgebra::abelian(2);
    let e = EmbeddingTensor::new(ab, plane, Matrix::from_ints(&[&[1, 1], &[0, 0]])).unwrap();
    assert!(e.check().passed());
    out.push(("abelian2.json", InputFile::from_tensor(&e).to_json()));

    let e = lc(Matrix::identity(4));
    assert!(e.check().passed());
    out.push(("levi_civita4.json", InputFile::from_tensor(&e).to_json()));

    let mut bad = InputFile::from_algebra(&corpus::levi_civita4());
    bad.bracket[1].coeffs.insert("0".into(), Scalar::one());
    assert!(!bad.algebra().unwrap().check_fundamental_identity().passed());
    out.push(("not_3lie.json", bad.to_json()));

    let mut t = Matrix::identity(4);
    t.set(3, 3, Scalar::zero());
    let e = lc(t);
    assert!(!e.check().passed());
    out.push(("levi_civita4_not_et.json", InputFile::from_tensor(&e).to_json()));

    let s3 = corpus::single_relation3();
    let e = from_square_zero_derivation(&s3, &Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
    out.push(("square_zero_derivation.json", InputFile::from_tensor(&e).to_json()));

    let e = lc(unit4(0, 0)).verify().unwrap();
    let taus = vec![unit4(0, 0), unit4(2, 1)];
    let d = DeformationSeries::new(&e, taus.clone()).unwrap().verify().unwrap();
    assert!(matches!(d.extend().unwrap(), Extension::Obstructed { .. }));
    out.push(("deformation_obstructed.json", with_series(&e, &taus).to_json()));

    let block = corpus::levi_civita_block_tensor(1, 2, -1, 3);
    let e = lc(block.clone()).verify().unwrap();
    let mut tau1 = Matrix::zeros(4, 4);
    tau1.set(0, 2, Scalar::one());
    tau1.set(2, 0, Scalar::new(2, 5));
    tau1.set(2, 1, Scalar::new(9, 5));
    let taus = vec![block, tau1];
    let d = DeformationSeries::new(&e, taus.clone()).unwrap().verify().unwrap();
    assert!(!d.obstruction().unwrap().is_zero());
    let Extension::Extended { series, .. } = d.extend().unwrap() else {
        panic!("the block fixture extends");
    };
    out.push(("deformation_unobstructed.json", with_series(&e, &taus).to_json()));

    let x: Vec<Scalar> = [1, 0, -2, 1, 3, 0].iter().map(|&n| Scalar::from_int(n)).collect();
    let d2 = exponential_transform(&series, &x).unwrap().verify().unwrap();
    let eq = EquivalenceData::exponential(&e, x.clone(), series.order()).unwrap();
    let mut f = with_series(&e, series.taus());
    f.taus_tilde = Some(d2.taus().to_vec());
    f.x = Some(eq.x);
    f.phis = Some(eq.phis);
    f.psis = Some(eq.psis);
    let cx = ETComplex::new(&e).unwrap();
    assert!(!cx.delta(&x).unwrap().is_zero());
    out.push(("equivalence.json", f.to_json()));

    out.push(("malformed.json", "{\"dim_g\": 2, \"bracket\": [\n".to_string()));
    out
}

#[allow(dead_code)]
fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    for (name, text) in fixtures() {
        let text = if text.ends_with('\n') { text } else { text + "\n" };
        std::fs::write(dir.join(name), text).unwrap();
        println!("wrote {name}");
    }
}
