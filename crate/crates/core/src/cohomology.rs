//! Representations and cohomology of 3-Leibniz algebras, and the cochain
//! complex of an embedding tensor.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{axpy_into, sub_into, unit, ThreeLeibnizAlgebra};
use crate::embedding::EmbeddingTensor;
use crate::error::{Error, Result};
use crate::graded::cochain::{coord_len, input_index};
use crate::graded::{Cochain, Space, DEFAULT_CAP};
use crate::linalg::{Matrix, RowSpace, SparseMatrix};
use crate::report::Report;
use crate::scalar::Scalar;

/// A representation `(W; l, m, r)` of a 3-Leibniz algebra: three families of
/// operators on W indexed by ordered pairs of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizRepresentation {
    l_dim: usize,
    carrier_dim: usize,
    l: Vec<Matrix>,
    m: Vec<Matrix>,
    r: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    L,
    M,
    R,
}

impl LeibnizRepresentation {
    /// `l`, `m`, `r` are listed by pair `(i, j)` at position `i * dim + j`.
    pub fn new(l_dim: usize, carrier_dim: usize, l: Vec<Matrix>, m: Vec<Matrix>, r: Vec<Matrix>) -> Result<Self> {
        for fam in [&l, &m, &r] {
            if fam.len() != l_dim * l_dim {
                return Err(Error::DimensionMismatch(format!(
                    "{} operators for a {l_dim}-dimensional algebra",
                    fam.len()
                )));
            }
            if fam.iter().any(|a| a.rows() != carrier_dim || a.cols() != carrier_dim) {
                return Err(Error::DimensionMismatch(format!(
                    "operators must be {carrier_dim}x{carrier_dim}"
                )));
            }
        }
        Ok(LeibnizRepresentation {
            l_dim,
            carrier_dim,
            l,
            m,
            r,
        })
    }

    pub fn zero(l_dim: usize, carrier_dim: usize) -> Self {
        let z = vec![Matrix::zeros(carrier_dim, carrier_dim); l_dim * l_dim];
        LeibnizRepresentation {
            l_dim,
            carrier_dim,
            l: z.clone(),
            m: z.clone(),
            r: z,
        }
    }

    pub fn l_dim(&self) -> usize {
        self.l_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn l(&self, i: usize, j: usize) -> &Matrix {
        &self.l[i * self.l_dim + j]
    }

    pub fn m(&self, i: usize, j: usize) -> &Matrix {
        &self.m[i * self.l_dim + j]
    }

    pub fn r(&self, i: usize, j: usize) -> &Matrix {
        &self.r[i * self.l_dim + j]
    }

    pub fn set_m(&mut self, i: usize, j: usize, a: Matrix) {
        self.m[i * self.l_dim + j] = a;
    }

    fn fam(&self, f: Family, i: usize, j: usize) -> &Matrix {
        match f {
            Family::L => self.l(i, j),
            Family::M => self.m(i, j),
            Family::R => self.r(i, j),
        }
    }

    /// `f(v, j)` for a vector `v` in the first slot.
    fn vb(&self, f: Family, v: &[Scalar], j: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.carrier_dim, self.carrier_dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.fam(f, i, j).scale(c));
            }
        }
        acc
    }

    /// `f(i, v)` for a vector `v` in the second slot.
    fn bv(&self, f: Family, i: usize, v: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.carrier_dim, self.carrier_dim);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.fam(f, i, j).scale(c));
            }
        }
        acc
    }
}

/// Per-axiom residuals of the five representation identities over basis 4-tuples.
pub fn check_leibniz_rep(l: &ThreeLeibnizAlgebra, rep: &LeibnizRepresentation) -> Result<Report> {
    l.require_verified()?;
    if rep.l_dim != l.dim() {
        return Err(Error::DimensionMismatch("representation of a different algebra".into()));
    }
    let d = l.dim();
    let br = l.bracket();
    let mut report = Report::new();
    use Family::*;
    for x1 in 0..d {
        for x2 in 0..d {
            let l12 = rep.l(x1, x2);
            for x3 in 0..d {
                let b123 = br.get(x1, x2, x3);
                for x4 in 0..d {
                    let b124 = br.get(x1, x2, x4);
                    let idx = [x1, x2, x3, x4];
                    for (name, f) in [("l_l_identity", L), ("l_m_identity", M), ("l_r_identity", R)] {
                        let lhs = l12.mul(rep.fam(f, x3, x4));
                        let rhs = rep
                            .vb(f, b123, x4)
                            .add(&rep.bv(f, x3, b124))
                            .add(&rep.fam(f, x3, x4).mul(l12));
                        report.check(name, &idx, lhs.sub(&rhs).entries().to_vec());
                    }
                    let b234 = br.get(x2, x3, x4);
                    for (name, f) in [("m_of_bracket", M), ("r_of_bracket", R)] {
                        let lhs = rep.bv(f, x1, b234);
                        let rhs = rep
                            .r(x3, x4)
                            .mul(rep.fam(f, x1, x2))
                            .add(&rep.m(x2, x4).mul(rep.fam(f, x1, x3)))
                            .add(&rep.l(x2, x3).mul(rep.fam(f, x1, x4)));
                        report.check(name, &idx, lhs.sub(&rhs).entries().to_vec());
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `(g; l_T, m_T, r_T)` as a representation of `(V, [·,·,·]_T)`.
pub fn induced_rep(e: &EmbeddingTensor) -> Result<LeibnizRepresentation> {
    e.require_verified()?;
    let n = e.dim_g();
    let mdim = e.dim_v();
    let g = e.g();
    let imgs: Vec<Vec<Scalar>> = (0..mdim).map(|u| e.image(u)).collect();
    let mut ls = Vec::with_capacity(mdim * mdim);
    let mut ms = Vec::with_capacity(mdim * mdim);
    let mut rs = Vec::with_capacity(mdim * mdim);
    for u in 0..mdim {
        for v in 0..mdim {
            let mut lm = Matrix::zeros(n, n);
            let mut mm = Matrix::zeros(n, n);
            for x in 0..n {
                let ex = unit(n, x);
                let lx = g.apply(&imgs[u], &imgs[v], &ex);
                let mut mx = g.apply(&imgs[u], &ex, &imgs[v]);
                let act = e.rho().op_vec(&imgs[u], &ex).mul_vec(&unit(mdim, v));
                sub_into(&mut mx, &e.t().mul_vec(&act));
                for o in 0..n {
                    lm.set(o, x, lx[o].clone());
                    mm.set(o, x, mx[o].clone());
                }
            }
            rs.push(mm.scale(&-Scalar::one()));
            ls.push(lm);
            ms.push(mm);
        }
    }
    LeibnizRepresentation::new(mdim, n, ls, ms, rs)
}

/// One term `coef · op(f(key))` of a coboundary value.
struct Term<'a> {
    coef: Scalar,
    key: Vec<u8>,
    op: Option<&'a Matrix>,
}

fn sign(exp: usize) -> Scalar {
    if exp.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// The terms of `(∂f)(X_1, …, X_n, z)` for a basis input `key` of length
/// `2n + 1`, in terms of values of `f` on basis inputs of length `2n - 1`.
fn coboundary_terms<'a>(l: &ThreeLeibnizAlgebra, rep: &'a LeibnizRepresentation, key: &[u8], out: &mut Vec<Term<'a>>) {
    out.clear();
    let n = (key.len() - 1) / 2;
    let pair = |i: usize| (key[2 * i] as usize, key[2 * i + 1] as usize);
    let z = key[2 * n] as usize;
    let br = l.bracket();
    // Inputs with pair j (0-based) removed.
    let without = |j: usize| -> Vec<u8> {
        let mut k = Vec::with_capacity(2 * n - 1);
        for i in 0..n {
            if i != j {
                k.push(key[2 * i]);
                k.push(key[2 * i + 1]);
            }
        }
        k.push(key[2 * n]);
        k
    };
    for j in 0..n {
        let (xj, yj) = pair(j);
        let sj = sign(j + 1);
        for k in j + 1..n {
            let (xk, yk) = pair(k);
            // Pair k sits at position k - 1 once pair j is dropped.
            let base = without(j);
            let pos = k - 1;
            for (lidx, c) in br.get(xj, yj, xk).iter().enumerate() {
                if !c.is_zero() {
                    let mut kk = base.clone();
                    kk[2 * pos] = lidx as u8;
                    out.push(Term {
                        coef: &sj * c,
                        key: kk,
                        op: None,
                    });
                }
            }
            for (lidx, c) in br.get(xj, yj, yk).iter().enumerate() {
                if !c.is_zero() {
                    let mut kk = base.clone();
                    kk[2 * pos + 1] = lidx as u8;
                    out.push(Term {
                        coef: &sj * c,
                        key: kk,
                        op: None,
                    });
                }
            }
        }
        let base = without(j);
        for (lidx, c) in br.get(xj, yj, z).iter().enumerate() {
            if !c.is_zero() {
                let mut kk = base.clone();
                let last = kk.len() - 1;
                kk[last] = lidx as u8;
                out.push(Term {
                    coef: &sj * c,
                    key: kk,
                    op: None,
                });
            }
        }
        out.push(Term {
            coef: -sj,
            key: base,
            op: Some(rep.l(xj, yj)),
        });
    }
    let (xn, yn) = pair(n - 1);
    let s = sign(n + 1);
    let mut head: Vec<u8> = key[..2 * (n - 1)].to_vec();
    head.push(yn as u8);
    out.push(Term {
        coef: s.clone(),
        key: head.clone(),
        op: Some(rep.m(xn, z)),
    });
    let last = head.len() - 1;
    head[last] = xn as u8;
    out.push(Term {
        coef: s,
        key: head,
        op: Some(rep.r(yn, z)),
    });
}

fn require_pair(l: &ThreeLeibnizAlgebra, rep: &LeibnizRepresentation) -> Result<()> {
    l.require_verified()?;
    if rep.l_dim != l.dim() {
        return Err(Error::DimensionMismatch("representation of a different algebra".into()));
    }
    Ok(())
}

fn require_cochain_space(l: &ThreeLeibnizAlgebra, rep: &LeibnizRepresentation, f: &Cochain) -> Result<()> {
    if f.space().in_dim() != l.dim() || f.space().out_dim() != rep.carrier_dim {
        return Err(Error::SpaceMismatch(format!(
            "cochain maps dimension {} to {}, expected {} to {}",
            f.space().in_dim(),
            f.space().out_dim(),
            l.dim(),
            rep.carrier_dim
        )));
    }
    if matches!(f.space(), Space::Full { .. }) {
        return Err(Error::SpaceMismatch("coboundary takes F or HOM cochains".into()));
    }
    Ok(())
}

fn all_keys(in_dim: usize, arity: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = in_dim.pow(arity as u32);
    (0..total).map(move |mut idx| {
        let mut key = vec![0u8; arity];
        for slot in (0..arity).rev() {
            key[slot] = (idx % in_dim) as u8;
            idx /= in_dim;
        }
        key
    })
}

/// The coboundary `∂f` of a cochain `f` with `p` pairs (an `(p+1)`-cochain
/// of the Leibniz complex); the result has `p + 1` pairs.
pub fn leibniz_coboundary(
    l: &ThreeLeibnizAlgebra,
    rep: &LeibnizRepresentation,
    f: &Cochain,
) -> Result<Cochain> {
    leibniz_coboundary_capped(l, rep, f, DEFAULT_CAP)
}

pub fn leibniz_coboundary_capped(
    l: &ThreeLeibnizAlgebra,
    rep: &LeibnizRepresentation,
    f: &Cochain,
    cap: u128,
) -> Result<Cochain> {
    require_pair(l, rep)?;
    require_cochain_space(l, rep, f)?;
    let space = f.space();
    let deg = f.degree() + 1;
    space.check_cap(deg, cap)?;
    let c = rep.carrier_dim;
    let mut result = BTreeMap::new();
    let mut terms = Vec::new();
    for key in all_keys(l.dim(), 2 * deg + 1) {
        coboundary_terms(l, rep, &key, &mut terms);
        let mut val = vec![Scalar::zero(); c];
        for t in &terms {
            let fv = f.value(&t.key.iter().map(|&x| x as usize).collect::<Vec<_>>());
            match t.op {
                None => axpy_into(&mut val, &t.coef, &fv),
                Some(op) => axpy_into(&mut val, &t.coef, &op.mul_vec(&fv)),
            }
        }
        for (o, x) in val.into_iter().enumerate() {
            if !x.is_zero() {
                let mut k = key.clone();
                k.push(o as u8);
                result.insert(k, x);
            }
        }
    }
    Ok(Cochain::from_map(deg, space, result))
}

/// Matrix of `∂` from cochains with `p` pairs to cochains with `p + 1` pairs,
/// in the coordinates of [`Cochain::to_coords`].
pub fn coboundary_matrix(
    l: &ThreeLeibnizAlgebra,
    rep: &LeibnizRepresentation,
    space: Space,
    p: usize,
    cap: u128,
) -> Result<SparseMatrix> {
    require_pair(l, rep)?;
    if space.in_dim() != l.dim() || space.out_dim() != rep.carrier_dim {
        return Err(Error::SpaceMismatch("cochain space does not match the representation".into()));
    }
    space.check_cap(p + 1, cap)?;
    let c = rep.carrier_dim;
    let cols = coord_len(space, p);
    let mut rows: Vec<BTreeMap<usize, Scalar>> = Vec::with_capacity(coord_len(space, p + 1));
    let mut terms = Vec::new();
    for key in all_keys(l.dim(), 2 * p + 3) {
        coboundary_terms(l, rep, &key, &mut terms);
        let mut block: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); c];
        for t in &terms {
            let base = input_index(l.dim(), &t.key) * c;
            for (o, row) in block.iter_mut().enumerate() {
                match t.op {
                    None => *row.entry(base + o).or_insert_with(Scalar::zero) += &t.coef,
                    Some(op) => {
                        for o2 in 0..c {
                            let a = op.get(o, o2);
                            if !a.is_zero() {
                                *row.entry(base + o2).or_insert_with(Scalar::zero) += &t.coef * a;
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block);
    }
    Ok(SparseMatrix::from_row_maps(cols, rows))
}

/// Basis pairs `(i, j)`, `i < j`, of `g ∧ g` in lexicographic order.
pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// An element of the embedding-tensor complex: a bivector in degree 1, a
/// cochain on V with values in g above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TCochain {
    Wedge { wedge: Vec<Scalar> },
    Map(Cochain),
}

/// `Z^k`, `B^k`, `H^k` of an embedding tensor with representative cocycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub k: usize,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    pub representatives: Vec<TCochain>,
}

/// The cochain complex `(C_T^*, dᵀ)` of a verified embedding tensor.
#[derive(Clone, Debug)]
pub struct ETComplex {
    e: EmbeddingTensor,
    l: ThreeLeibnizAlgebra,
    rep: LeibnizRepresentation,
    cap: u128,
}

impl ETComplex {
    pub fn new(e: &EmbeddingTensor) -> Result<Self> {
        e.require_verified()?;
        Ok(ETComplex {
            e: e.clone(),
            l: e.induced_3leibniz()?,
            rep: induced_rep(e)?,
            cap: DEFAULT_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn tensor(&self) -> &EmbeddingTensor {
        &self.e
    }

    pub fn leibniz_algebra(&self) -> &ThreeLeibnizAlgebra {
        &self.l
    }

    pub fn representation(&self) -> &LeibnizRepresentation {
        &self.rep
    }

    pub fn space(&self) -> Space {
        Space::F {
            g: self.e.dim_g(),
            v: self.e.dim_v(),
        }
    }

    /// Dimension of `C_T^k`.
    pub fn cochain_dim(&self, k: usize) -> Result<usize> {
        match k {
            0 => Err(Error::InvalidInput("the complex starts in degree 1".into())),
            1 => Ok(wedge_pairs(self.e.dim_g()).len()),
            _ => {
                self.space().check_cap(k - 2, self.cap)?;
                Ok(coord_len(self.space(), k - 2))
            }
        }
    }

    /// `ad_X` and `ρ(X)` for a bivector given on the wedge basis.
    pub fn wedge_operators(&self, x: &[Scalar]) -> Result<(Matrix, Matrix)> {
        let n = self.e.dim_g();
        let pairs = wedge_pairs(n);
        if x.len() != pairs.len() {
            return Err(Error::DimensionMismatch(format!(
                "bivector with {} coefficients, g ∧ g has dimension {}",
                x.len(),
                pairs.len()
            )));
        }
        let mut ad = Matrix::zeros(n, n);
        let mut rho = Matrix::zeros(self.e.dim_v(), self.e.dim_v());
        for (c, &(i, j)) in x.iter().zip(&pairs) {
            if c.is_zero() {
                continue;
            }
            for z in 0..n {
                let col = self.e.g().bracket().get(i, j, z);
                for (o, val) in col.iter().enumerate() {
                    ad.add_to(o, z, &(c * val));
                }
            }
            rho = rho.add(&self.e.rho().op(i, j).scale(c));
        }
        Ok((ad, rho))
    }

    /// `δ(X)v = Tρ(X)v - [X, Tv]`.
    pub fn delta(&self, x: &[Scalar]) -> Result<Cochain> {
        let (ad, rho) = self.wedge_operators(x)?;
        let m = self.e.t().mul(&rho).sub(&ad.mul(self.e.t()));
        Cochain::from_matrix(self.space(), &m)
    }

    fn delta_matrix(&self) -> Result<SparseMatrix> {
        let n = self.e.dim_g();
        let pairs = wedge_pairs(n);
        let cols: Vec<Vec<Scalar>> = (0..pairs.len())
            .map(|p| self.delta(&unit(pairs.len(), p)).map(|c| c.to_coords()))
            .collect::<Result<_>>()?;
        let rows = coord_len(self.space(), 0);
        Ok(SparseMatrix::from_dense(&Matrix::from_columns(rows, &cols)?))
    }

    /// `dᵀ_k: C_T^k → C_T^{k+1}` as a matrix.
    pub fn differential(&self, k: usize) -> Result<SparseMatrix> {
        match k {
            0 => Err(Error::InvalidInput("the complex starts in degree 1".into())),
            1 => self.delta_matrix(),
            _ => coboundary_matrix(&self.l, &self.rep, self.space(), k - 2, self.cap),
        }
    }

    /// `dᵀ` applied to a cochain of degree `k`.
    pub fn apply(&self, k: usize, c: &TCochain) -> Result<Cochain> {
        match (k, c) {
            (1, TCochain::Wedge { wedge }) => self.delta(wedge),
            (k, TCochain::Map(f)) if k >= 2 => {
                if f.space() != self.space() || f.degree() != k - 2 {
                    return Err(Error::SpaceMismatch(format!(
                        "a {k}-cochain is an F cochain of degree {}",
                        k - 2
                    )));
                }
                self.dt(f)
            }
            _ => Err(Error::SpaceMismatch(format!("cochain kind does not match degree {k}"))),
        }
    }

    /// `∂_T` on an F-cochain.
    pub fn dt(&self, f: &Cochain) -> Result<Cochain> {
        leibniz_coboundary_capped(&self.l, &self.rep, f, self.cap)
    }

    /// Whether `c` is a coboundary `dᵀ(x)` of a `(k-1)`-cochain; returns a preimage.
    pub fn coboundary_preimage(&self, k: usize, c: &Cochain) -> Result<Option<TCochain>> {
        if k < 2 {
            return Err(Error::InvalidInput("B^1 is zero; preimages exist from degree 2".into()));
        }
        let d = self.differential(k - 1)?;
        let x = d.solve(&c.to_coords())?;
        Ok(x.map(|x| {
            if k == 2 {
                TCochain::Wedge { wedge: x }
            } else {
                TCochain::Map(Cochain::from_coords(k - 3, self.space(), &x).expect("coordinate length"))
            }
        }))
    }

    pub fn cohomology(&self, k: usize) -> Result<CohomologyGroup> {
        let dk = self.differential(k)?;
        let z = dk.kernel_basis();
        let width = dk.cols();
        let b_space = if k == 1 {
            RowSpace::new(width)
        } else {
            self.differential(k - 1)?.column_space()
        };
        let mut acc = b_space.clone();
        let mut reps = Vec::new();
        for v in &z {
            if acc.insert(v) {
                let r = b_space.reduce(v);
                reps.push(if k == 1 {
                    TCochain::Wedge { wedge: r }
                } else {
                    TCochain::Map(Cochain::from_coords(k - 2, self.space(), &r)?)
                });
            }
        }
        let dim_z = z.len();
        let dim_b = b_space.rank();
        if acc.rank() != dim_z {
            return Err(Error::InclusionViolation {
                witness: b_space
                    .basis()
                    .into_iter()
                    .find(|b| dk.mul_vec(b).iter().any(|x| !x.is_zero()))
                    .unwrap_or_default(),
            });
        }
        Ok(CohomologyGroup {
            k,
            dim_z,
            dim_b,
            dim_h: dim_z - dim_b,
            representatives: reps,
        })
    }
}

/// `dᵀ` of a `k`-cochain of a verified embedding tensor.
pub fn dt(e: &EmbeddingTensor, k: usize, c: &TCochain) -> Result<Cochain> {
    ETComplex::new(e)?.apply(k, c)
}

/// `δ(X)` for a bivector on the wedge basis.
pub fn delta(e: &EmbeddingTensor, x: &[Scalar]) -> Result<Cochain> {
    ETComplex::new(e)?.delta(x)
}

pub fn cohomology_group(e: &EmbeddingTensor, k: usize) -> Result<CohomologyGroup> {
    ETComplex::new(e)?.cohomology(k)
}
