//! 3-Lie algebras, 3-Leibniz algebras and representations, stored as dense
//! structure-constant tensors over a fixed basis.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Scalar;

/// Dense trilinear map `[e_i, e_j, e_k] = Σ_l c[i][j][k][l] e_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trilinear {
    dim: usize,
    c: Vec<Scalar>,
}

impl Trilinear {
    pub fn zero(dim: usize) -> Self {
        Trilinear {
            dim,
            c: vec![Scalar::zero(); dim * dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim
    }

    /// Coefficient vector of `[e_i, e_j, e_k]`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let o = self.offset(i, j, k);
        &self.c[o..o + self.dim]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: &[Scalar]) {
        assert_eq!(value.len(), self.dim);
        let o = self.offset(i, j, k);
        self.c[o..o + self.dim].clone_from_slice(value);
    }

    pub fn set_entry(&mut self, i: usize, j: usize, k: usize, l: usize, value: Scalar) {
        let o = self.offset(i, j, k);
        self.c[o + l] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// `[x, y, z]` for arbitrary vectors.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    let coef = &xy * zk;
                    for (o, c) in out.iter_mut().zip(self.get(i, j, k)) {
                        if !c.is_zero() {
                            *o += &coef * c;
                        }
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j, v]`.
    pub fn apply_bbv(&self, i: usize, j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, vk) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            axpy_into(&mut out, vk, self.get(i, j, k));
        }
        out
    }

    /// `[v, e_j, e_k]`.
    pub fn apply_vbb(&self, v: &[Scalar], j: usize, k: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, vi) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            axpy_into(&mut out, vi, self.get(i, j, k));
        }
        out
    }

    /// `[e_i, v, e_k]`.
    pub fn apply_bvb(&self, i: usize, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (j, vj) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            axpy_into(&mut out, vj, self.get(i, j, k));
        }
        out
    }

    /// Enforces total skew-symmetry from the values on sorted triples `i<j<k`.
    pub fn skew_normalized(&self) -> Trilinear {
        let d = self.dim;
        let mut out = Trilinear::zero(d);
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let v = self.get(i, j, k).to_vec();
                    let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
                    out.set(i, j, k, &v);
                    out.set(j, k, i, &v);
                    out.set(k, i, j, &v);
                    out.set(j, i, k, &neg);
                    out.set(i, k, j, &neg);
                    out.set(k, j, i, &neg);
                }
            }
        }
        out
    }

    /// Witnesses of `[x_σ1, x_σ2, x_σ3] ≠ sign(σ) [x1, x2, x3]`, compared
    /// against transpositions of each ordered triple.
    pub fn check_skew(&self) -> Report {
        let d = self.dim;
        let mut report = Report::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let base = self.get(i, j, k);
                    let r1: Vec<Scalar> = base.iter().zip(self.get(j, i, k)).map(|(a, b)| a + b).collect();
                    report.check("skew_symmetry", &[i, j, k], r1);
                    let r2: Vec<Scalar> = base.iter().zip(self.get(i, k, j)).map(|(a, b)| a + b).collect();
                    report.check("skew_symmetry", &[i, j, k], r2);
                }
            }
        }
        report
    }

    /// Residuals of `[x1,x2,[y1,y2,y3]] - [[x1,x2,y1],y2,y3] - [y1,[x1,x2,y2],y3]
    /// - [y1,y2,[x1,x2,y3]]` on all basis 5-tuples.
    pub fn leibniz_report(&self, axiom: &str) -> Report {
        let d = self.dim;
        let mut report = Report::new();
        for x1 in 0..d {
            for x2 in 0..d {
                for y1 in 0..d {
                    let a1 = self.get(x1, x2, y1);
                    for y2 in 0..d {
                        let a2 = self.get(x1, x2, y2);
                        for y3 in 0..d {
                            let a3 = self.get(x1, x2, y3);
                            let mut r = self.apply_bbv(x1, x2, self.get(y1, y2, y3));
                            sub_into(&mut r, &self.apply_vbb(a1, y2, y3));
                            sub_into(&mut r, &self.apply_bvb(y1, a2, y3));
                            sub_into(&mut r, &self.apply_bbv(y1, y2, a3));
                            report.check(axiom, &[x1, x2, y1, y2, y3], r);
                        }
                    }
                }
            }
        }
        report
    }
}

pub(crate) fn axpy_into(out: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    for (o, xi) in out.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o += a * xi;
        }
    }
}

pub(crate) fn sub_into(out: &mut [Scalar], x: &[Scalar]) {
    for (o, xi) in out.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o -= xi;
        }
    }
}

pub(crate) fn add_into(out: &mut [Scalar], x: &[Scalar]) {
    for (o, xi) in out.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o += xi;
        }
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn default_labels(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}{i}")).collect()
}

/// A finite-dimensional 3-Lie algebra.
///
/// Construction normalizes the bracket to be totally skew-symmetric; the
/// fundamental identity is only trusted after [`ThreeLieAlgebra::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    labels: Vec<String>,
    bracket: Trilinear,
    verified: bool,
}

impl ThreeLieAlgebra {
    /// Builds from the full tensor; only the sorted-triple values are read.
    pub fn from_tensor(labels: Option<Vec<String>>, bracket: &Trilinear) -> Result<Self> {
        let dim = bracket.dim();
        let labels = labels.unwrap_or_else(|| default_labels("e", dim));
        if labels.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} basis labels for a {dim}-dimensional algebra",
                labels.len()
            )));
        }
        Ok(ThreeLieAlgebra {
            labels,
            bracket: bracket.skew_normalized(),
            verified: false,
        })
    }

    /// Keeps the constants exactly as given, without skew normalization.
    /// [`ThreeLieAlgebra::verify`] then checks skew-symmetry as well.
    pub fn from_raw_tensor(labels: Option<Vec<String>>, bracket: Trilinear) -> Result<Self> {
        let dim = bracket.dim();
        let labels = labels.unwrap_or_else(|| default_labels("e", dim));
        if labels.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} basis labels for a {dim}-dimensional algebra",
                labels.len()
            )));
        }
        Ok(ThreeLieAlgebra {
            labels,
            bracket,
            verified: false,
        })
    }

    /// Builds from values on sorted triples `i<j<k`.
    pub fn from_sorted(dim: usize, entries: &[((usize, usize, usize), Vec<Scalar>)]) -> Result<Self> {
        let mut t = Trilinear::zero(dim);
        for ((i, j, k), v) in entries {
            if !(i < j && j < k && *k < dim) {
                return Err(Error::InvalidInput(format!(
                    "bracket triple ({i},{j},{k}) must be strictly increasing and below {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket value of length {} in dimension {dim}",
                    v.len()
                )));
            }
            t.set(*i, *j, *k, v);
        }
        ThreeLieAlgebra::from_tensor(None, &t)
    }

    pub fn abelian(dim: usize) -> Self {
        ThreeLieAlgebra {
            labels: default_labels("e", dim),
            bracket: Trilinear::zero(dim),
            verified: true,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket(&self) -> &Trilinear {
        &self.bracket
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn check_fundamental_identity(&self) -> Report {
        self.bracket.leibniz_report("fundamental_identity")
    }

    /// Runs the fundamental-identity check and marks the algebra verified.
    pub fn verify(mut self) -> Result<Self> {
        let mut report = self.bracket.check_skew();
        report.merge(self.check_fundamental_identity());
        if !report.passed() {
            return Err(Error::rejected("not a 3-Lie algebra", report));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified("3-Lie algebra"))
        }
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(x, y, z)
    }

    /// The same bracket viewed as a 3-Leibniz algebra.
    pub fn as_leibniz(&self) -> ThreeLeibnizAlgebra {
        ThreeLeibnizAlgebra {
            labels: self.labels.clone(),
            bracket: self.bracket.clone(),
            verified: self.verified,
        }
    }

    /// Witnesses of `φ[x,y,z] ≠ [φx,φy,φz]` on basis triples.
    pub fn check_endomorphism(&self, phi: &Matrix) -> Report {
        check_homomorphism(&self.bracket, &self.bracket, phi, "homomorphism")
    }

    /// Witnesses of `D[x,y,z] ≠ [Dx,y,z] + [x,Dy,z] + [x,y,Dz]` on basis triples.
    pub fn check_derivation(&self, d: &Matrix) -> Report {
        let n = self.dim();
        let mut report = Report::new();
        let col = |i| d.column(i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = d.mul_vec(self.bracket.get(i, j, k));
                    sub_into(&mut r, &self.bracket.apply_vbb(&col(i), j, k));
                    sub_into(&mut r, &self.bracket.apply_bvb(i, &col(j), k));
                    sub_into(&mut r, &self.bracket.apply_bbv(i, j, &col(k)));
                    report.check("derivation", &[i, j, k], r);
                }
            }
        }
        report
    }
}

/// Witnesses of `φ[x,y,z]_src ≠ [φx,φy,φz]_dst` on basis triples of the source.
pub fn check_homomorphism(src: &Trilinear, dst: &Trilinear, phi: &Matrix, axiom: &str) -> Report {
    let n = src.dim();
    assert_eq!(phi.cols(), n);
    assert_eq!(phi.rows(), dst.dim());
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| phi.column(i)).collect();
    let mut report = Report::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut r = phi.mul_vec(src.get(i, j, k));
                sub_into(&mut r, &dst.apply(&cols[i], &cols[j], &cols[k]));
                report.check(axiom, &[i, j, k], r);
            }
        }
    }
    report
}

/// A finite-dimensional 3-Leibniz algebra; no symmetry is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLeibnizAlgebra {
    labels: Vec<String>,
    bracket: Trilinear,
    verified: bool,
}

impl ThreeLeibnizAlgebra {
    pub fn new(labels: Option<Vec<String>>, bracket: Trilinear) -> Result<Self> {
        let dim = bracket.dim();
        let labels = labels.unwrap_or_else(|| default_labels("e", dim));
        if labels.len() != dim {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        Ok(ThreeLeibnizAlgebra {
            labels,
            bracket,
            verified: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket(&self) -> &Trilinear {
        &self.bracket
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn check_3leibniz(&self) -> Report {
        self.bracket.leibniz_report("3leibniz")
    }

    pub fn verify(mut self) -> Result<Self> {
        let report = self.check_3leibniz();
        if !report.passed() {
            return Err(Error::rejected("3-Leibniz identity fails", report));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified("3-Leibniz algebra"))
        }
    }

    pub(crate) fn assume_verified(mut self) -> Self {
        self.verified = true;
        self
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(x, y, z)
    }
}

/// Convenience free function matching the library's verifier naming.
pub fn check_3leibniz(l: &ThreeLeibnizAlgebra) -> Report {
    l.check_3leibniz()
}

pub fn check_fundamental_identity(g: &ThreeLieAlgebra) -> Report {
    g.check_fundamental_identity()
}

/// A representation `ρ: ∧²g → gl(V)`, one matrix per ordered basis pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    g_dim: usize,
    carrier_dim: usize,
    ops: Vec<Matrix>,
    verified: bool,
}

impl Representation {
    pub fn zero(g_dim: usize, carrier_dim: usize) -> Self {
        Representation {
            g_dim,
            carrier_dim,
            ops: vec![Matrix::zeros(carrier_dim, carrier_dim); g_dim * g_dim],
            verified: false,
        }
    }

    /// Builds from matrices on pairs `i<j`; the remaining pairs follow from
    /// skew-symmetry and `ρ(e_i, e_i) = 0`.
    pub fn from_pairs(g_dim: usize, carrier_dim: usize, pairs: Vec<((usize, usize), Matrix)>) -> Result<Self> {
        let mut rep = Representation::zero(g_dim, carrier_dim);
        for ((i, j), m) in pairs {
            if !(i < j && j < g_dim) {
                return Err(Error::InvalidInput(format!(
                    "representation pair ({i},{j}) must satisfy i<j<{g_dim}"
                )));
            }
            if m.rows() != carrier_dim || m.cols() != carrier_dim {
                return Err(Error::DimensionMismatch(format!(
                    "rho({i},{j}) is {}x{}, expected {carrier_dim}x{carrier_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            let neg = m.scale(&Scalar::from_int(-1));
            rep.ops[i * g_dim + j] = m;
            rep.ops[j * g_dim + i] = neg;
        }
        Ok(rep)
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    /// `ρ(e_i, e_j)`.
    pub fn op(&self, i: usize, j: usize) -> &Matrix {
        &self.ops[i * self.g_dim + j]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `ρ(x, y)` for arbitrary vectors of g.
    pub fn op_vec(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.carrier_dim, self.carrier_dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                if i != j {
                    out = out.add(&self.op(i, j).scale(&(xi * yj)));
                }
            }
        }
        out
    }

    /// `ρ(x, e_j)`.
    fn op_vb(&self, x: &[Scalar], j: usize) -> Matrix {
        let mut out = Matrix::zeros(self.carrier_dim, self.carrier_dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            out = out.add(&self.op(i, j).scale(xi));
        }
        out
    }

    /// `ρ(e_i, x)`.
    fn op_bv(&self, i: usize, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.carrier_dim, self.carrier_dim);
        for (j, xj) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            out = out.add(&self.op(i, j).scale(xj));
        }
        out
    }

    /// `ρ(x, y) w`.
    pub fn act(&self, x: &[Scalar], y: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.carrier_dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                if i == j {
                    continue;
                }
                let v = self.op(i, j).mul_vec(w);
                axpy_into(&mut out, &(xi * yj), &v);
            }
        }
        out
    }

    /// Residuals of both representation axioms on all basis 4-tuples.
    pub fn check(&self, g: &ThreeLieAlgebra) -> Report {
        let n = g.dim();
        let mut report = Report::new();
        if n != self.g_dim {
            report.check("shape", &[n, self.g_dim], vec![Scalar::one()]);
            return report;
        }
        let br = g.bracket();
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in 0..n {
                    for x4 in 0..n {
                        // ρ(x1,x2)ρ(x3,x4) = ρ([x1,x2,x3],x4) + ρ(x3,[x1,x2,x4]) + ρ(x3,x4)ρ(x1,x2)
                        let lhs = self.op(x1, x2).mul(self.op(x3, x4));
                        let r = lhs
                            .sub(&self.op_vb(br.get(x1, x2, x3), x4))
                            .sub(&self.op_bv(x3, br.get(x1, x2, x4)))
                            .sub(&self.op(x3, x4).mul(self.op(x1, x2)));
                        report.check("rep_commutator", &[x1, x2, x3, x4], r.entries().to_vec());
                        // ρ(x1,[x2,x3,x4]) = ρ(x3,x4)ρ(x1,x2) - ρ(x2,x4)ρ(x1,x3) + ρ(x2,x3)ρ(x1,x4)
                        let r = self
                            .op_bv(x1, br.get(x2, x3, x4))
                            .sub(&self.op(x3, x4).mul(self.op(x1, x2)))
                            .add(&self.op(x2, x4).mul(self.op(x1, x3)))
                            .sub(&self.op(x2, x3).mul(self.op(x1, x4)));
                        report.check("rep_bracket", &[x1, x2, x3, x4], r.entries().to_vec());
                    }
                }
            }
        }
        report
    }

    /// Verifies both axioms against a verified `g` and marks the representation verified.
    pub fn verify(mut self, g: &ThreeLieAlgebra) -> Result<Self> {
        g.require_verified()?;
        let report = self.check(g);
        if !report.passed() {
            return Err(Error::rejected("representation axioms fail", report));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified("representation"))
        }
    }

    /// Skew-symmetry of the stored operators, `ρ(e_j,e_i) = -ρ(e_i,e_j)`.
    pub fn is_skew(&self) -> bool {
        (0..self.g_dim).all(|i| {
            (0..self.g_dim).all(|j| self.op(i, j).add(self.op(j, i)).is_zero())
        })
    }
}

pub fn check_representation(g: &ThreeLieAlgebra, rho: &Representation) -> Report {
    rho.check(g)
}

/// `ad_{x,y} z = [x,y,z]`.
pub fn adjoint_representation(g: &ThreeLieAlgebra) -> Result<Representation> {
    g.require_verified()?;
    let n = g.dim();
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zeros(n, n);
            for k in 0..n {
                for (l, c) in g.bracket().get(i, j, k).iter().enumerate() {
                    m.set(l, k, c.clone());
                }
            }
            ops.push(m);
        }
    }
    Ok(Representation {
        g_dim: n,
        carrier_dim: n,
        ops,
        verified: true,
    })
}

/// The 3-Leibniz algebra on `g ⊕ V` with `[x+u, y+v, z+w] = [x,y,z] + ρ(x,y)w`.
/// Basis order: the basis of g followed by the basis of V.
pub fn hemisemidirect_product(g: &ThreeLieAlgebra, rho: &Representation) -> Result<ThreeLeibnizAlgebra> {
    g.require_verified()?;
    rho.require_verified()?;
    if rho.g_dim() != g.dim() {
        return Err(Error::DimensionMismatch("representation does not match algebra".into()));
    }
    let bracket = hemisemidirect_tensor(g, rho);
    let mut labels = g.labels().to_vec();
    labels.extend(default_labels("v", rho.carrier_dim()));
    Ok(ThreeLeibnizAlgebra::new(Some(labels), bracket)?.assume_verified())
}

pub(crate) fn hemisemidirect_tensor(g: &ThreeLieAlgebra, rho: &Representation) -> Trilinear {
    let n = g.dim();
    let m = rho.carrier_dim();
    let mut t = Trilinear::zero(n + m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (l, c) in g.bracket().get(i, j, k).iter().enumerate() {
                    t.set_entry(i, j, k, l, c.clone());
                }
            }
            let op = rho.op(i, j);
            for w in 0..m {
                for l in 0..m {
                    t.set_entry(i, j, n + w, n + l, op.get(l, w).clone());
                }
            }
        }
    }
    t
}
