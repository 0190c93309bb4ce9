//! Truncated deformations `T_t = Σ τᵢ tⁱ` of an embedding tensor, their
//! equivalences, obstructions and extensions.

use crate::algebra::{add_into, sub_into};
use crate::cohomology::{ETComplex, TCochain};
use crate::embedding::EmbeddingTensor;
use crate::error::{Error, Result};
use crate::graded::{Cochain, Space, VData, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Scalar;

/// Index triples `(i, j, k)` with `i + j + k = s` and every index at most `max`.
fn triples(s: usize, max: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=s.min(max)).flat_map(move |i| {
        (0..=(s - i).min(max)).filter_map(move |j| {
            let k = s - i - j;
            (k <= max).then_some((i, j, k))
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationSeries {
    e: EmbeddingTensor,
    taus: Vec<Matrix>,
    verified: bool,
    cap: u128,
}

impl DeformationSeries {
    /// `taus = [τ₀, …, τₙ]` with `τ₀ = T`. Verification is a separate step.
    pub fn new(e: &EmbeddingTensor, taus: Vec<Matrix>) -> Result<Self> {
        e.require_verified()?;
        if taus.is_empty() {
            return Err(Error::InvalidInput("a deformation needs at least τ₀".into()));
        }
        for (i, tau) in taus.iter().enumerate() {
            if tau.rows() != e.dim_g() || tau.cols() != e.dim_v() {
                return Err(Error::DimensionMismatch(format!(
                    "τ{i} is {}x{}, expected {}x{}",
                    tau.rows(),
                    tau.cols(),
                    e.dim_g(),
                    e.dim_v()
                )));
            }
        }
        if &taus[0] != e.t() {
            return Err(Error::InvalidInput("τ₀ must equal T".into()));
        }
        Ok(DeformationSeries {
            e: e.clone(),
            taus,
            verified: false,
            cap: DEFAULT_CAP,
        })
    }

    /// `T + 0·t + … + 0·tⁿ`.
    pub fn trivial(e: &EmbeddingTensor, order: usize) -> Result<Self> {
        let mut taus = vec![e.t().clone()];
        taus.extend((0..order).map(|_| Matrix::zeros(e.dim_g(), e.dim_v())));
        DeformationSeries::new(e, taus)
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn tensor(&self) -> &EmbeddingTensor {
        &self.e
    }

    pub fn taus(&self) -> &[Matrix] {
        &self.taus
    }

    pub fn order(&self) -> usize {
        self.taus.len() - 1
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified("deformation series"))
        }
    }

    /// The first `order + 1` coefficients, unverified.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch(format!(
                "cannot truncate an order-{} series to order {order}",
                self.order()
            )));
        }
        Ok(DeformationSeries {
            e: self.e.clone(),
            taus: self.taus[..=order].to_vec(),
            verified: false,
            cap: self.cap,
        })
    }

    /// `T_t + τ t^{n+1}`, unverified.
    pub fn extended_by(&self, tau: Matrix) -> Result<Self> {
        let mut taus = self.taus.clone();
        taus.push(tau);
        Ok(DeformationSeries::new(&self.e, taus)?.with_cap(self.cap))
    }

    /// `Σ_{i+j+k=s, i,j,k ≤ n} [τᵢu,τⱼv,τₖw] - τₖ(ρ(τᵢu,τⱼv)w)` for all basis
    /// triples, indexed `[u][v][w]`. For `s > n` this is the obstruction sum.
    pub fn coefficient_residual(&self, s: usize) -> Vec<Vec<Vec<Vec<Scalar>>>> {
        let g = self.e.g();
        let rho = self.e.rho();
        let dv = self.e.dim_v();
        let dg = self.e.dim_g();
        let images: Vec<Vec<Vec<Scalar>>> = self
            .taus
            .iter()
            .map(|tau| (0..dv).map(|u| tau.column(u)).collect())
            .collect();
        let mut out = vec![vec![vec![vec![Scalar::zero(); dg]; dv]; dv]; dv];
        for (i, j, k) in triples(s, self.order()) {
            for u in 0..dv {
                for v in 0..dv {
                    let op = rho.op_vec(&images[i][u], &images[j][v]);
                    for w in 0..dv {
                        let slot = &mut out[u][v][w];
                        add_into(slot, &g.apply(&images[i][u], &images[j][v], &images[k][w]));
                        sub_into(slot, &self.taus[k].mul_vec(&op.column(w)));
                    }
                }
            }
        }
        out
    }

    /// The `s`-th coefficient residual as an F-cochain of degree 1.
    pub fn residual_cochain(&self, s: usize) -> Result<Cochain> {
        let space = Space::F {
            g: self.e.dim_g(),
            v: self.e.dim_v(),
        };
        let r = self.coefficient_residual(s);
        let mut entries = Vec::new();
        for (u, a) in r.iter().enumerate() {
            for (v, b) in a.iter().enumerate() {
                for (w, c) in b.iter().enumerate() {
                    for (o, x) in c.iter().enumerate() {
                        if !x.is_zero() {
                            entries.push((vec![u, v, w, o], x.clone()));
                        }
                    }
                }
            }
        }
        Cochain::from_entries(1, space, entries)
    }

    /// Witnesses `[s, u, v, w]` for every nonzero coefficient residual with `s ≤ n`.
    pub fn check_order_n(&self) -> Report {
        let mut report = Report::new();
        for s in 0..=self.order() {
            let r = self.coefficient_residual(s);
            for (u, a) in r.into_iter().enumerate() {
                for (v, b) in a.into_iter().enumerate() {
                    for (w, c) in b.into_iter().enumerate() {
                        report.check("deformation_coefficient", &[s, u, v, w], c);
                    }
                }
            }
        }
        report
    }

    pub fn verify(mut self) -> Result<Self> {
        let report = self.check_order_n();
        if !report.passed() {
            return Err(Error::rejected(
                format!("not an order-{} deformation", self.order()),
                report,
            ));
        }
        self.verified = true;
        Ok(self)
    }

    fn complex(&self) -> Result<ETComplex> {
        Ok(ETComplex::new(&self.e)?.with_cap(self.cap))
    }

    fn require_cocycle(&self, complex: &ETComplex, c: &Cochain, what: &str) -> Result<()> {
        let d = complex.dt(c)?;
        if d.is_zero() {
            return Ok(());
        }
        let mut report = Report::new();
        for (key, x) in d.entries() {
            report.check("cocycle", &key.iter().map(|&i| i as usize).collect::<Vec<_>>(), vec![x.clone()]);
        }
        Err(Error::rejected(format!("{what} is not a cocycle"), report))
    }

    /// `τ₁` as a 2-cochain; `dᵀτ₁ = 0` is checked.
    pub fn infinitesimal(&self) -> Result<Cochain> {
        self.require_verified()?;
        if self.order() == 0 {
            return Err(Error::OrderMismatch("an order-0 series has no infinitesimal".into()));
        }
        let complex = self.complex()?;
        let tau1 = Cochain::from_matrix(complex.space(), &self.taus[1])?;
        self.require_cocycle(&complex, &tau1, "the infinitesimal")?;
        Ok(tau1)
    }

    /// The 3-cochain `Ob` obstructing an extension to order `n+1`; `dᵀOb = 0` is checked.
    pub fn obstruction(&self) -> Result<Cochain> {
        self.require_verified()?;
        let ob = self.residual_cochain(self.order() + 1)?;
        let complex = self.complex()?;
        self.require_cocycle(&complex, &ob, "the obstruction")?;
        Ok(ob)
    }

    /// `(1/6) Σ_{i+j+k=n+1, i,j,k ≤ n} {τᵢ, τⱼ, τₖ}` through the derived bracket.
    pub fn obstruction_from_brackets(&self) -> Result<Cochain> {
        let vd = VData::new(self.e.g(), self.e.rho())?.with_cap(self.cap);
        let cs: Vec<Cochain> = self.taus.iter().map(|t| vd.f_map(t)).collect::<Result<_>>()?;
        let mut acc = Cochain::zero(1, vd.f_space());
        for (i, j, k) in triples(self.order() + 1, self.order()) {
            acc = acc.add(&vd.lie3_bracket(&cs[i], &cs[j], &cs[k])?)?;
        }
        Ok(acc.scale(&Scalar::new(1, 6)))
    }

    /// Solves `dᵀτ_{n+1} = -Ob`. The coefficient of `t^{n+1}` in the extended
    /// series is `Ob + dᵀτ_{n+1}`, so a solution exists exactly when `[Ob] = 0`.
    pub fn extend(&self) -> Result<Extension> {
        let ob = self.obstruction()?;
        let complex = self.complex()?;
        match complex.coboundary_preimage(3, &ob.neg())? {
            Some(TCochain::Map(x)) => {
                let tau_next = x.to_matrix()?;
                let series = self.extended_by(tau_next.clone())?.verify()?;
                Ok(Extension::Extended { tau_next, series })
            }
            Some(TCochain::Wedge { .. }) => unreachable!("preimages in degree 2 are maps"),
            None => Ok(Extension::Obstructed { obstruction: ob }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extended { tau_next: Matrix, series: DeformationSeries },
    Obstructed { obstruction: Cochain },
}

/// `X ∈ g∧g` on the wedge basis, with `φ₂, …, φₙ` and `ψ₂, …, ψₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceData {
    pub x: Vec<Scalar>,
    pub phis: Vec<Matrix>,
    pub psis: Vec<Matrix>,
}

impl EquivalenceData {
    /// `X = 0` and all higher terms zero.
    pub fn identity(e: &EmbeddingTensor, order: usize) -> Self {
        let n = order.saturating_sub(1);
        let dim_g = e.dim_g();
        EquivalenceData {
            x: vec![Scalar::zero(); dim_g * dim_g.saturating_sub(1) / 2],
            phis: vec![Matrix::zeros(dim_g, dim_g); n],
            psis: vec![Matrix::zeros(e.dim_v(), e.dim_v()); n],
        }
    }

    /// `φ_t = exp(t·ad_X)` and `ψ_t = exp(t·ρ(X))`, truncated at `tⁿ`.
    pub fn exponential(e: &EmbeddingTensor, x: Vec<Scalar>, order: usize) -> Result<Self> {
        let (ad, rx) = ETComplex::new(e)?.wedge_operators(&x)?;
        let (mut phi, mut psi) = (ad.clone(), rx.clone());
        let (mut phis, mut psis) = (Vec::new(), Vec::new());
        for i in 2..=order {
            let c = Scalar::new(1, i as i64);
            phi = phi.mul(&ad).scale(&c);
            psi = psi.mul(&rx).scale(&c);
            phis.push(phi.clone());
            psis.push(psi.clone());
        }
        Ok(EquivalenceData { x, phis, psis })
    }

    /// `[Id, ad_X, φ₂, …]` and `[Id, ρ(X), ψ₂, …]`.
    fn coefficients(&self, e: &EmbeddingTensor, order: usize) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        let expected = order.saturating_sub(1);
        if self.phis.len() != expected || self.psis.len() != expected {
            return Err(Error::OrderMismatch(format!(
                "order {order} needs {expected} higher φ and ψ terms, got {} and {}",
                self.phis.len(),
                self.psis.len()
            )));
        }
        let (dg, dv) = (e.dim_g(), e.dim_v());
        if self.phis.iter().any(|m| m.rows() != dg || m.cols() != dg)
            || self.psis.iter().any(|m| m.rows() != dv || m.cols() != dv)
        {
            return Err(Error::DimensionMismatch("φᵢ must act on g and ψᵢ on V".into()));
        }
        let (ad, rx) = ETComplex::new(e)?.wedge_operators(&self.x)?;
        let mut phi = vec![Matrix::identity(dg), ad];
        let mut psi = vec![Matrix::identity(dv), rx];
        phi.extend(self.phis.iter().cloned());
        psi.extend(self.psis.iter().cloned());
        phi.truncate(order + 1);
        psi.truncate(order + 1);
        Ok((phi, psi))
    }
}

fn series_mul(a: &[Matrix], b: &[Matrix], s: usize) -> Option<Matrix> {
    (0..=s)
        .filter(|&i| i < a.len() && s - i < b.len())
        .map(|i| a[i].mul(&b[s - i]))
        .reduce(|x, y| x.add(&y))
}

/// Checks that `(φ_t, ψ_t)` carries `T_t` to `T̃_t` modulo `t^{n+1}`:
/// `φ_t` preserves the bracket, `ψ_t` intertwines `ρ` along `φ_t`, and
/// `T_t∘ψ_t = φ_t∘T̃_t`. On success also checks `τ̃₁ = τ₁ + δ(X)`.
pub fn check_equivalence(d: &DeformationSeries, d2: &DeformationSeries, eq: &EquivalenceData) -> Result<Report> {
    d.require_verified()?;
    d2.require_verified()?;
    if d.order() != d2.order() {
        return Err(Error::OrderMismatch(format!(
            "series of orders {} and {}",
            d.order(),
            d2.order()
        )));
    }
    let e = d.tensor();
    if e.g() != d2.tensor().g() || e.rho() != d2.tensor().rho() || e.t() != d2.tensor().t() {
        return Err(Error::InvalidInput("the series deform different embedding tensors".into()));
    }
    let n = d.order();
    let (phi, psi) = eq.coefficients(e, n)?;
    let g = e.g();
    let rho = e.rho();
    let (dg, dv) = (e.dim_g(), e.dim_v());
    let mut report = Report::new();

    for s in 0..=n {
        for x in 0..dg {
            for y in 0..dg {
                for z in 0..dg {
                    let mut r = phi[s].mul_vec(g.bracket().get(x, y, z));
                    for (i, j, k) in triples(s, n) {
                        sub_into(&mut r, &g.apply(&phi[i].column(x), &phi[j].column(y), &phi[k].column(z)));
                    }
                    report.check("phi_endomorphism", &[s, x, y, z], r);
                }
            }
        }
    }

    for s in 0..=n {
        for x in 0..dg {
            for y in 0..dg {
                let mut r = psi[s].mul(rho.op(x, y));
                for (i, j, k) in triples(s, n) {
                    let op = rho.op_vec(&phi[i].column(x), &phi[j].column(y));
                    r = r.sub(&op.mul(&psi[k]));
                }
                report.check("psi_equivariance", &[s, x, y], r.entries().to_vec());
            }
        }
    }

    for s in 0..=n {
        let lhs = series_mul(d.taus(), &psi, s).expect("τ₀ is present");
        let rhs = series_mul(&phi, d2.taus(), s).expect("τ̃₀ is present");
        let r = lhs.sub(&rhs);
        for u in 0..dv {
            report.check("series_intertwining", &[s, u], r.column(u));
        }
    }

    if report.passed() && n >= 1 {
        let shift = ETComplex::new(e)?.delta(&eq.x)?.to_matrix()?;
        let r = d.taus()[1].add(&shift).sub(&d2.taus()[1]);
        for u in 0..dv {
            report.check("infinitesimal_shift", &[u], r.column(u));
        }
    }
    Ok(report)
}

/// Whether `τ̃₁ - τ₁ ∈ B²(T)`; returns `X` with `τ̃₁ - τ₁ = δ(X)`.
pub fn infinitesimals_cohomologous(d: &DeformationSeries, d2: &DeformationSeries) -> Result<Option<Vec<Scalar>>> {
    let a = d.infinitesimal()?;
    let b = d2.infinitesimal()?;
    let complex = d.complex()?;
    match complex.coboundary_preimage(2, &b.sub(&a)?)? {
        Some(TCochain::Wedge { wedge }) => Ok(Some(wedge)),
        Some(TCochain::Map(_)) => unreachable!("preimages in degree 1 are bivectors"),
        None => Ok(None),
    }
}

/// `φ_t⁻¹ T_t ψ_t` modulo `t^{n+1}` for `φ_t = exp(t·ad_X)`, `ψ_t = exp(t·ρ(X))`.
pub fn exponential_transform(d: &DeformationSeries, x: &[Scalar]) -> Result<DeformationSeries> {
    let e = d.tensor();
    let n = d.order();
    let fwd = EquivalenceData::exponential(e, x.to_vec(), n)?;
    let neg: Vec<Scalar> = x.iter().map(|c| -c).collect();
    let back = EquivalenceData::exponential(e, neg, n)?;
    let (_, psi) = fwd.coefficients(e, n)?;
    let (phi_inv, _) = back.coefficients(e, n)?;
    let mut taus = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut acc = Matrix::zeros(e.dim_g(), e.dim_v());
        for a in 0..=s {
            if let Some(m) = series_mul(d.taus(), &psi, s - a) {
                acc = acc.add(&phi_inv[a].mul(&m));
            }
        }
        taus.push(acc);
    }
    Ok(DeformationSeries::new(e, taus)?.with_cap(d.cap))
}
