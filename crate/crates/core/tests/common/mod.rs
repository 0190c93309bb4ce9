#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use threelie::algebra::{adjoint_representation, Representation, ThreeLieAlgebra};
use threelie::corpus;
use threelie::graded::{Cochain, Space};
use threelie::{EmbeddingTensor, Matrix, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.gen_range(-3i64..=3);
    if rng.gen_bool(0.2) {
        Scalar::new(n, rng.gen_range(2i64..=3))
    } else {
        Scalar::from_int(n)
    }
}

pub fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = small(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random cochain with `nnz` (possibly colliding) nonzero coefficients.
pub fn sparse_cochain(rng: &mut ChaCha8Rng, degree: usize, space: Space, nnz: usize) -> Cochain {
    let arity = 2 * degree + 1;
    let entries: Vec<(Vec<usize>, Scalar)> = (0..nnz)
        .map(|_| {
            let mut key: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..space.in_dim())).collect();
            key.push(rng.gen_range(0..space.out_dim()));
            (key, nonzero(rng))
        })
        .collect();
    Cochain::from_entries(degree, space, entries).unwrap()
}

/// A random cochain with every coefficient drawn independently.
pub fn dense_cochain(rng: &mut ChaCha8Rng, degree: usize, space: Space) -> Cochain {
    let n = space.in_dim().pow(2 * degree as u32 + 1) * space.out_dim();
    let coords: Vec<Scalar> = (0..n).map(|_| small(rng)).collect();
    Cochain::from_coords(degree, space, &coords).unwrap()
}

pub fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<Scalar>> = (0..rows).map(|_| (0..cols).map(|_| small(rng)).collect()).collect();
    Matrix::from_rows_shaped(rows, cols, data).unwrap()
}

/// Verified embedding tensors used across the suites.
pub fn corpus_tensors() -> Vec<(&'static str, EmbeddingTensor)> {
    let lc = corpus::levi_civita4();
    let ad = adjoint_representation(&lc).unwrap();
    let mk = |g: &ThreeLieAlgebra, rho: &Representation, t: Matrix| {
        EmbeddingTensor::new(g.clone(), rho.clone(), t).unwrap().verify().unwrap()
    };
    let ab = ThreeLieAlgebra::abelian(2);
    let plane = corpus::abelian2_rep(Matrix::from_ints(&[&[1, 2], &[0, -1]]));
    let s3 = corpus::single_relation3();
    let ad3 = adjoint_representation(&s3).unwrap();
    vec![
        ("lc_identity", mk(&lc, &ad, Matrix::identity(4))),
        ("lc_scalar", mk(&lc, &ad, Matrix::identity(4).scale(&Scalar::new(-2, 3)))),
        ("lc_block", mk(&lc, &ad, corpus::levi_civita_block_tensor(1, 2, -1, 3))),
        ("lc_zero", mk(&lc, &ad, Matrix::zeros(4, 4))),
        ("plane_rank_one", mk(&ab, &plane, Matrix::from_ints(&[&[1, 1], &[0, 0]]))),
        ("single_relation_identity", mk(&s3, &ad3, Matrix::identity(3))),
    ]
}
