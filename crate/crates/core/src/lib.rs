//! Exact computations for 3-Lie algebras, 3-Leibniz algebras and embedding
//! tensors: axiom verifiers, the graded cochain calculus, embedding-tensor
//! cohomology and truncated deformations. All arithmetic is over the rationals.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod deformation;
pub mod embedding;
pub mod error;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use algebra::{
    adjoint_representation, check_3leibniz, check_fundamental_identity, check_representation,
    hemisemidirect_product, Representation, ThreeLeibnizAlgebra, ThreeLieAlgebra, Trilinear,
};
pub use embedding::EmbeddingTensor;
pub use error::{Error, Result};
pub use linalg::{Matrix, SparseMatrix};
pub use report::{Report, Witness};
pub use scalar::Scalar;
