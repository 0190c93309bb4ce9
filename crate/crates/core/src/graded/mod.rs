//! Graded cochain calculus: the Leibniz composition and bracket on cochains of
//! `e = g ⊕ V`, the element `μ⊞ρ`, and the derived Lie 3-algebra on `C*(V, g)`.

pub mod cochain;
pub mod compose;
pub mod derived;
pub mod shuffle;

pub use cochain::{Cochain, Space, DEFAULT_CAP};
pub use compose::{graded_bracket, graded_bracket_capped, leibniz_compose, leibniz_compose_capped};
pub use derived::{embed_f, lie3_bracket, mc_defect, mu_box_rho, project_f, twisted_l, Twisted, VData};
pub use shuffle::{koszul_sign, permutation_sign, permutations, shuffles, Shuffle};
