//! Embedding tensors `T: V → g` on a 3-Lie algebra with respect to a
//! representation, and the constructions built from them.

use crate::algebra::{
    adjoint_representation, check_homomorphism, hemisemidirect_product, sub_into, unit,
    Representation, ThreeLeibnizAlgebra, ThreeLieAlgebra, Trilinear,
};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingTensor {
    g: ThreeLieAlgebra,
    rho: Representation,
    t: Matrix,
    verified: bool,
}

impl EmbeddingTensor {
    /// Binds `t` (shape `dim g × dim V`) to a verified algebra and representation.
    /// The embedding-tensor identity itself is checked by [`EmbeddingTensor::verify`].
    pub fn new(g: ThreeLieAlgebra, rho: Representation, t: Matrix) -> Result<Self> {
        g.require_verified()?;
        rho.require_verified()?;
        if rho.g_dim() != g.dim() {
            return Err(Error::DimensionMismatch(format!(
                "representation of a {}-dimensional algebra bound to a {}-dimensional one",
                rho.g_dim(),
                g.dim()
            )));
        }
        if t.rows() != g.dim() || t.cols() != rho.carrier_dim() {
            return Err(Error::DimensionMismatch(format!(
                "T is {}x{}, expected {}x{}",
                t.rows(),
                t.cols(),
                g.dim(),
                rho.carrier_dim()
            )));
        }
        Ok(EmbeddingTensor {
            g,
            rho,
            t,
            verified: false,
        })
    }

    pub fn g(&self) -> &ThreeLieAlgebra {
        &self.g
    }

    pub fn rho(&self) -> &Representation {
        &self.rho
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rho.carrier_dim()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified("embedding tensor"))
        }
    }

    /// Same algebra and representation, different map.
    pub fn with_map(&self, t: Matrix) -> Result<Self> {
        EmbeddingTensor::new(self.g.clone(), self.rho.clone(), t)
    }

    /// `T e_u`.
    pub fn image(&self, u: usize) -> Vec<Scalar> {
        self.t.column(u)
    }

    /// Residuals `[Tu,Tv,Tw] - T(ρ(Tu,Tv)w)` on basis triples.
    pub fn check(&self) -> Report {
        et_residual_report(&self.g, &self.rho, &self.t, "embedding_tensor")
    }

    pub fn verify(mut self) -> Result<Self> {
        let report = self.check();
        if !report.passed() {
            return Err(Error::rejected("embedding tensor identity fails", report));
        }
        self.verified = true;
        Ok(self)
    }

    /// Closure of the graph `{Tu + u}` under the hemisemidirect bracket.
    ///
    /// Membership of each bracket in the graph is decided by an exact linear
    /// solve against the graph vectors; the recorded residual is the
    /// g-component defect `x - T(w)` of the bracket `x + w`.
    pub fn graph_subalgebra_check(&self) -> Result<Report> {
        let l = hemisemidirect_product(&self.g, &self.rho)?;
        let n = self.dim_g();
        let m = self.dim_v();
        let graph: Vec<Vec<Scalar>> = (0..m)
            .map(|u| {
                let mut v = self.image(u);
                v.extend(unit(m, u));
                v
            })
            .collect();
        let gmat = Matrix::from_columns(n + m, &graph)?;
        let mut report = Report::new();
        for u in 0..m {
            for v in 0..m {
                for w in 0..m {
                    let b = l.apply(&graph[u], &graph[v], &graph[w]);
                    if solve(&gmat, &b)?.is_none() {
                        let mut resid = b[..n].to_vec();
                        sub_into(&mut resid, &self.t.mul_vec(&b[n..]));
                        report.check("graph_closure", &[u, v, w], resid);
                    }
                }
            }
        }
        Ok(report)
    }

    /// The 3-Leibniz algebra `(V, [u,v,w]_T = ρ(Tu,Tv)w)`.
    pub fn induced_3leibniz(&self) -> Result<ThreeLeibnizAlgebra> {
        self.require_verified()?;
        ThreeLeibnizAlgebra::new(None, self.induced_tensor())?.verify()
    }

    pub(crate) fn induced_tensor(&self) -> Trilinear {
        let m = self.dim_v();
        let imgs: Vec<Vec<Scalar>> = (0..m).map(|u| self.image(u)).collect();
        let mut t = Trilinear::zero(m);
        for u in 0..m {
            for v in 0..m {
                let op = self.rho.op_vec(&imgs[u], &imgs[v]);
                for w in 0..m {
                    t.set(u, v, w, &op.column(w));
                }
            }
        }
        t
    }

    /// Residuals of `T[u,v,w]_T = [Tu,Tv,Tw]_g` on basis triples.
    pub fn check_intertwining(&self) -> Report {
        let induced = self.induced_tensor();
        check_homomorphism(&induced, self.g.bracket(), &self.t, "intertwining")
    }

    /// Residuals of `T(ρ(x,Tu)v) = [x,Tu,Tv]` over basis `x ∈ g`, `u, v ∈ V`.
    pub fn check_strong_condition(&self) -> Report {
        let n = self.dim_g();
        let m = self.dim_v();
        let mut report = Report::new();
        for x in 0..n {
            let ex = unit(n, x);
            for u in 0..m {
                let tu = self.image(u);
                let op = self.rho.op_vec(&ex, &tu);
                for v in 0..m {
                    let mut r = self.t.mul_vec(&op.column(v));
                    sub_into(&mut r, &self.g.apply(&ex, &tu, &self.image(v)));
                    report.check("strong_condition", &[x, u, v], r);
                }
            }
        }
        report
    }
}

fn et_residual_report(g: &ThreeLieAlgebra, rho: &Representation, t: &Matrix, axiom: &str) -> Report {
    let m = rho.carrier_dim();
    let imgs: Vec<Vec<Scalar>> = (0..m).map(|u| t.column(u)).collect();
    let mut report = Report::new();
    for u in 0..m {
        for v in 0..m {
            let op = rho.op_vec(&imgs[u], &imgs[v]);
            for w in 0..m {
                let mut r = g.apply(&imgs[u], &imgs[v], &imgs[w]);
                sub_into(&mut r, &t.mul_vec(&op.column(w)));
                report.check(axiom, &[u, v, w], r);
            }
        }
    }
    report
}

/// The residual tensor `[Tu,Tv,Tw] - T(ρ(Tu,Tv)w)` for an arbitrary map `t`,
/// indexed `[u][v][w]` with values in g.
pub fn et_residual(g: &ThreeLieAlgebra, rho: &Representation, t: &Matrix) -> Vec<Vec<Vec<Vec<Scalar>>>> {
    let m = rho.carrier_dim();
    let imgs: Vec<Vec<Scalar>> = (0..m).map(|u| t.column(u)).collect();
    (0..m)
        .map(|u| {
            (0..m)
                .map(|v| {
                    let op = rho.op_vec(&imgs[u], &imgs[v]);
                    (0..m)
                        .map(|w| {
                            let mut r = g.apply(&imgs[u], &imgs[v], &imgs[w]);
                            sub_into(&mut r, &t.mul_vec(&op.column(w)));
                            r
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn check_embedding_tensor(e: &EmbeddingTensor) -> Report {
    e.check()
}

/// Checks that `(phi_g, phi_v)` is a homomorphism from `e_prime` to `e`.
///
/// `phi_g` must be an endomorphism of g; otherwise the call is rejected with
/// the failing triples. On a passing report the induced 3-Leibniz
/// homomorphism property of `phi_v` is checked as well and any failure is
/// appended under the axiom `induced_homomorphism`.
pub fn check_et_homomorphism(
    e_prime: &EmbeddingTensor,
    e: &EmbeddingTensor,
    phi_g: &Matrix,
    phi_v: &Matrix,
) -> Result<Report> {
    if e_prime.g != e.g || e_prime.rho != e.rho {
        return Err(Error::InvalidInput(
            "homomorphisms are defined between embedding tensors on the same algebra and representation".into(),
        ));
    }
    let n = e.dim_g();
    let m = e.dim_v();
    if (phi_g.rows(), phi_g.cols()) != (n, n) || (phi_v.rows(), phi_v.cols()) != (m, m) {
        return Err(Error::DimensionMismatch("homomorphism component shapes".into()));
    }
    let endo = e.g.check_endomorphism(phi_g);
    if !endo.passed() {
        return Err(Error::rejected("phi_g is not a 3-Lie algebra homomorphism", endo));
    }
    let mut report = Report::new();
    let lhs = e.t.mul(phi_v);
    let rhs = phi_g.mul(&e_prime.t);
    for u in 0..m {
        let mut r = lhs.column(u);
        sub_into(&mut r, &rhs.column(u));
        report.check("tensor_intertwining", &[u], r);
    }
    let cols_g: Vec<Vec<Scalar>> = (0..n).map(|i| phi_g.column(i)).collect();
    for x in 0..n {
        for y in 0..n {
            let pre = phi_v.mul(e.rho.op(x, y));
            let post = e.rho.op_vec(&cols_g[x], &cols_g[y]).mul(phi_v);
            let r = pre.sub(&post);
            for u in 0..m {
                report.check("rep_equivariance", &[x, y, u], r.column(u));
            }
        }
    }
    if report.passed() {
        let src = e_prime.induced_3leibniz()?;
        let dst = e.induced_3leibniz()?;
        report.merge(check_homomorphism(
            src.bracket(),
            dst.bracket(),
            phi_v,
            "induced_homomorphism",
        ));
    }
    Ok(report)
}

/// A square-zero derivation `D` of g is an embedding tensor for the adjoint
/// representation.
pub fn from_square_zero_derivation(g: &ThreeLieAlgebra, d: &Matrix) -> Result<EmbeddingTensor> {
    g.require_verified()?;
    let n = g.dim();
    if (d.rows(), d.cols()) != (n, n) {
        return Err(Error::DimensionMismatch(format!("derivation must be {n}x{n}")));
    }
    let der = g.check_derivation(d);
    if !der.passed() {
        return Err(Error::rejected("D is not a derivation", der));
    }
    let sq = d.mul(d);
    if !sq.is_zero() {
        let mut report = Report::new();
        for j in 0..n {
            report.check("square_zero", &[j], sq.column(j));
        }
        return Err(Error::rejected("D∘D ≠ 0", report));
    }
    let ad = adjoint_representation(g)?;
    EmbeddingTensor::new(g.clone(), ad, d.clone())?.verify()
}

/// Result of checking crossed-module data.
#[derive(Clone, Debug)]
pub struct CrossedModuleCheck {
    /// Homomorphism, representation and the three compatibility equations.
    pub axioms: Report,
    /// Whether every `α(x, y)` is a derivation of the source algebra. Reported
    /// on its own; the embedding-tensor conclusion does not depend on it.
    pub derivations: Report,
}

/// Checks crossed-module data `(h, g, μ: g → h, α: ∧²h → gl(g))`.
pub fn check_crossed_module(
    h: &ThreeLieAlgebra,
    g: &ThreeLieAlgebra,
    mu: &Matrix,
    alpha: &Representation,
) -> Result<CrossedModuleCheck> {
    h.require_verified()?;
    g.require_verified()?;
    let nh = h.dim();
    let ng = g.dim();
    if (mu.rows(), mu.cols()) != (nh, ng) {
        return Err(Error::DimensionMismatch(format!("mu must be {nh}x{ng}")));
    }
    if alpha.g_dim() != nh || alpha.carrier_dim() != ng {
        return Err(Error::DimensionMismatch("alpha must act by h on g".into()));
    }
    let mut axioms = check_homomorphism(g.bracket(), h.bracket(), mu, "mu_homomorphism");
    axioms.merge(alpha.check(h));
    let mu_cols: Vec<Vec<Scalar>> = (0..ng).map(|f| mu.column(f)).collect();
    // μ(α(x,y)f) = [x,y,μf]
    for x in 0..nh {
        for y in 0..nh {
            let op = alpha.op(x, y);
            for f in 0..ng {
                let mut r = mu.mul_vec(&op.column(f));
                sub_into(&mut r, &h.bracket().apply_bbv(x, y, &mu_cols[f]));
                axioms.check("crossed_equivariance", &[x, y, f], r);
            }
        }
    }
    for f in 0..ng {
        for k in 0..ng {
            let op = alpha.op_vec(&mu_cols[f], &mu_cols[k]);
            for l in 0..ng {
                // α(μf, μk)(l) = [f, k, l]
                let mut r = op.column(l);
                sub_into(&mut r, g.bracket().get(f, k, l));
                axioms.check("crossed_peiffer", &[f, k, l], r);
            }
        }
    }
    for x in 0..nh {
        let ex = unit(nh, x);
        for f in 0..ng {
            let a = alpha.op_vec(&ex, &mu_cols[f]);
            for k in 0..ng {
                // α(x, μf)(k) = -α(x, μk)(f)
                let b = alpha.op_vec(&ex, &mu_cols[k]);
                let r: Vec<Scalar> = a.column(k).iter().zip(b.column(f)).map(|(p, q)| p + q).collect();
                axioms.check("crossed_skew", &[x, f, k], r);
            }
        }
    }
    let mut derivations = Report::new();
    for x in 0..nh {
        for y in 0..nh {
            for w in g.check_derivation(alpha.op(x, y)).witnesses {
                let mut idx = vec![x, y];
                idx.extend(w.indices);
                derivations.check("alpha_derivation", &idx, w.residual);
            }
        }
    }
    Ok(CrossedModuleCheck { axioms, derivations })
}

/// `μ` as an embedding tensor on h with respect to `(g; α)`.
pub fn from_crossed_module(
    h: &ThreeLieAlgebra,
    g: &ThreeLieAlgebra,
    mu: &Matrix,
    alpha: &Representation,
) -> Result<(EmbeddingTensor, CrossedModuleCheck)> {
    let check = check_crossed_module(h, g, mu, alpha)?;
    if !check.axioms.passed() {
        return Err(Error::rejected("crossed module axioms fail", check.axioms));
    }
    let alpha = alpha.clone().verify(h)?;
    let e = EmbeddingTensor::new(h.clone(), alpha, mu.clone())?.verify()?;
    Ok((e, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::s;

    fn lc_adjoint(t: Matrix) -> EmbeddingTensor {
        let g = corpus::levi_civita4();
        let ad = adjoint_representation(&g).unwrap();
        EmbeddingTensor::new(g, ad, t).unwrap()
    }

    #[test]
    fn zero_and_identity_pass() {
        assert!(lc_adjoint(Matrix::zeros(4, 4)).check().passed());
        assert!(lc_adjoint(Matrix::identity(4)).check().passed());
        assert!(lc_adjoint(Matrix::identity(4)).graph_subalgebra_check().unwrap().passed());
    }

    #[test]
    fn diag_1110_fails_on_triples_of_the_first_three_vectors() {
        let mut t = Matrix::identity(4);
        t.set(3, 3, s(0));
        let e = lc_adjoint(t);
        let report = e.check();
        assert!(!report.passed());
        // [e1,e2,e3] = e4 while T(ad(e1,e2)e3) = T e4 = 0.
        let w = report
            .witnesses
            .iter()
            .find(|w| w.indices == vec![0, 1, 2])
            .expect("witness on (e1,e2,e3)");
        assert_eq!(w.residual, vec![s(0), s(0), s(0), s(1)]);
        assert!(!e.graph_subalgebra_check().unwrap().passed());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let g = corpus::levi_civita4();
        let ad = adjoint_representation(&g).unwrap();
        assert!(matches!(
            EmbeddingTensor::new(g, ad, Matrix::zeros(3, 4)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn induced_of_identity_recovers_bracket() {
        let e = lc_adjoint(Matrix::identity(4)).verify().unwrap();
        let l = e.induced_3leibniz().unwrap();
        assert_eq!(l.bracket(), e.g().bracket());
        let z = lc_adjoint(Matrix::zeros(4, 4)).verify().unwrap();
        assert!(z.induced_3leibniz().unwrap().bracket().is_zero());
    }

    #[test]
    fn induced_refuses_unverified() {
        let e = lc_adjoint(Matrix::identity(4));
        assert!(matches!(e.induced_3leibniz(), Err(Error::Unverified(_))));
    }

    #[test]
    fn homomorphism_identity_and_mismatch() {
        let e = lc_adjoint(Matrix::identity(4)).verify().unwrap();
        let id = Matrix::identity(4);
        assert!(check_et_homomorphism(&e, &e, &id, &id).unwrap().passed());
        let e0 = lc_adjoint(Matrix::zeros(4, 4)).verify().unwrap();
        let r = check_et_homomorphism(&e0, &e, &id, &id).unwrap();
        assert!(r.witnesses_for("tensor_intertwining").next().is_some());
    }

    #[test]
    fn non_endomorphism_is_rejected() {
        let e = lc_adjoint(Matrix::identity(4)).verify().unwrap();
        let mut phi = Matrix::identity(4);
        phi.set(0, 0, s(2));
        assert!(matches!(
            check_et_homomorphism(&e, &e, &phi, &Matrix::identity(4)),
            Err(Error::Rejected { .. })
        ));
    }

    #[test]
    fn square_zero_derivations() {
        let g = ThreeLieAlgebra::abelian(2);
        let d = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(from_square_zero_derivation(&g, &d).unwrap().is_verified());
        let g = corpus::levi_civita4();
        assert!(from_square_zero_derivation(&g, &Matrix::zeros(4, 4)).is_ok());
        let not_sq_zero = Matrix::identity(2);
        let g2 = ThreeLieAlgebra::abelian(2);
        assert!(matches!(
            from_square_zero_derivation(&g2, &not_sq_zero),
            Err(Error::Rejected { .. })
        ));
    }

    #[test]
    fn crossed_module_identity() {
        let g = corpus::levi_civita4();
        let ad = adjoint_representation(&g).unwrap();
        let (e, check) = from_crossed_module(&g, &g, &Matrix::identity(4), &ad).unwrap();
        assert!(e.check().passed());
        assert!(check.derivations.passed());
    }

    #[test]
    fn strong_condition_examples() {
        assert!(lc_adjoint(Matrix::zeros(4, 4)).check_strong_condition().passed());
        assert!(lc_adjoint(Matrix::identity(4)).check_strong_condition().passed());
    }
}
