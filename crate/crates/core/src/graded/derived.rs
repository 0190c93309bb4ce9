//! Higher derived brackets on `F = C*(V, g)` built from `Δ = μ⊞ρ`.

use super::cochain::{Cochain, Space, DEFAULT_CAP};
use super::compose::graded_bracket_capped;
use crate::algebra::{hemisemidirect_tensor, Representation, ThreeLieAlgebra};
use crate::embedding::EmbeddingTensor;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `μ⊞ρ` as a FULL degree-1 cochain: `(x+u, y+v, z+w) ↦ [x,y,z] + ρ(x,y)w`.
pub fn mu_box_rho(g: &ThreeLieAlgebra, rho: &Representation) -> Result<Cochain> {
    g.require_verified()?;
    rho.require_verified()?;
    if rho.g_dim() != g.dim() {
        return Err(Error::DimensionMismatch("representation of a different algebra".into()));
    }
    let space = Space::Full {
        g: g.dim(),
        v: rho.carrier_dim(),
    };
    Cochain::from_trilinear(space, &hemisemidirect_tensor(g, rho))
}

/// Extends an F-cochain by zero to a FULL one.
pub fn embed_f(f: &Cochain) -> Result<Cochain> {
    let Space::F { g, v } = f.space() else {
        return Err(Error::SpaceMismatch(format!("embed expects an F cochain, got {:?}", f.space())));
    };
    let entries = f.entries().map(|(k, x)| {
        let (inputs, out) = k.split_at(k.len() - 1);
        let mut key: Vec<usize> = inputs.iter().map(|&u| g + u as usize).collect();
        key.push(out[0] as usize);
        (key, x.clone())
    });
    Cochain::from_entries(f.degree(), Space::Full { g, v }, entries)
}

/// Restricts a FULL cochain to inputs in V and keeps the g-component of the output.
pub fn project_f(p: &Cochain) -> Result<Cochain> {
    let Space::Full { g, v } = p.space() else {
        return Err(Error::SpaceMismatch(format!("project expects a FULL cochain, got {:?}", p.space())));
    };
    let gb = g as u8;
    let entries = p
        .entries()
        .filter(|(k, _)| {
            let (inputs, out) = k.split_at(k.len() - 1);
            out[0] < gb && inputs.iter().all(|&x| x >= gb)
        })
        .map(|(k, x)| {
            let (inputs, out) = k.split_at(k.len() - 1);
            let mut key: Vec<usize> = inputs.iter().map(|&u| (u - gb) as usize).collect();
            key.push(out[0] as usize);
            (key, x.clone())
        });
    Cochain::from_entries(p.degree(), Space::F { g, v }, entries)
}

/// The ambient data `(g, ρ)` together with `Δ = μ⊞ρ` and a size cap.
#[derive(Clone, Debug)]
pub struct VData {
    g: ThreeLieAlgebra,
    rho: Representation,
    delta: Cochain,
    cap: u128,
}

impl VData {
    pub fn new(g: &ThreeLieAlgebra, rho: &Representation) -> Result<Self> {
        let delta = mu_box_rho(g, rho)?;
        Ok(VData {
            g: g.clone(),
            rho: rho.clone(),
            delta,
            cap: DEFAULT_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn g(&self) -> &ThreeLieAlgebra {
        &self.g
    }

    pub fn rho(&self) -> &Representation {
        &self.rho
    }

    pub fn delta(&self) -> &Cochain {
        &self.delta
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn f_space(&self) -> Space {
        Space::F {
            g: self.g.dim(),
            v: self.rho.carrier_dim(),
        }
    }

    /// `T: V → g` as a degree-0 F-cochain.
    pub fn f_map(&self, t: &Matrix) -> Result<Cochain> {
        Cochain::from_matrix(self.f_space(), t)
    }

    fn check_f(&self, c: &Cochain) -> Result<()> {
        if c.space() != self.f_space() {
            return Err(Error::SpaceMismatch(format!(
                "expected an F cochain on {:?}, got {:?}",
                self.f_space(),
                c.space()
            )));
        }
        Ok(())
    }

    pub fn bracket(&self, p: &Cochain, q: &Cochain) -> Result<Cochain> {
        graded_bracket_capped(p, q, self.cap)
    }

    /// `l_k(a_1, …, a_k) = 𝒫[…[[Δ, a_1], a_2], …, a_k]`.
    pub fn derived(&self, args: &[&Cochain]) -> Result<Cochain> {
        let mut acc = self.delta.clone();
        for a in args {
            self.check_f(a)?;
            acc = self.bracket(&acc, &embed_f(a)?)?;
        }
        project_f(&acc)
    }

    /// `{P, Q, R} = 𝒫[[[Δ, P], Q], R]`, of degree `p + q + r + 1`.
    pub fn lie3_bracket(&self, p: &Cochain, q: &Cochain, r: &Cochain) -> Result<Cochain> {
        self.derived(&[p, q, r])
    }

    /// `(1/6){T, T, T}`.
    pub fn mc_defect(&self, t: &Matrix) -> Result<Cochain> {
        let c = self.f_map(t)?;
        Ok(self.lie3_bracket(&c, &c, &c)?.scale(&Scalar::new(1, 6)))
    }
}

/// `{P, Q, R}` for the ambient data of `vd`.
pub fn lie3_bracket(vd: &VData, p: &Cochain, q: &Cochain, r: &Cochain) -> Result<Cochain> {
    vd.lie3_bracket(p, q, r)
}

/// `(1/6){T, T, T}` on the ambient data of `vd`.
pub fn mc_defect(vd: &VData, t: &Matrix) -> Result<Cochain> {
    vd.mc_defect(t)
}

/// The operations twisted by an embedding tensor `T`:
/// `l₁ᵀ(P) = ½{T,T,P}`, `l₂ᵀ(P,Q) = {T,P,Q}`, `l₃ᵀ(P,Q,R) = {P,Q,R}`.
#[derive(Clone, Debug)]
pub struct Twisted {
    vd: VData,
    t: Cochain,
}

impl Twisted {
    pub fn new(e: &EmbeddingTensor) -> Result<Self> {
        e.require_verified()?;
        let vd = VData::new(e.g(), e.rho())?;
        let t = vd.f_map(e.t())?;
        Ok(Twisted { vd, t })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.vd = self.vd.with_cap(cap);
        self
    }

    pub fn vdata(&self) -> &VData {
        &self.vd
    }

    pub fn l1(&self, p: &Cochain) -> Result<Cochain> {
        Ok(self.vd.lie3_bracket(&self.t, &self.t, p)?.scale(&Scalar::new(1, 2)))
    }

    pub fn l2(&self, p: &Cochain, q: &Cochain) -> Result<Cochain> {
        self.vd.lie3_bracket(&self.t, p, q)
    }

    pub fn l3(&self, p: &Cochain, q: &Cochain, r: &Cochain) -> Result<Cochain> {
        self.vd.lie3_bracket(p, q, r)
    }

    /// `l₁ᵀ(T′) + ½l₂ᵀ(T′,T′) + (1/6)l₃ᵀ(T′,T′,T′)`.
    pub fn mc_residual(&self, t_prime: &Matrix) -> Result<Cochain> {
        let c = self.vd.f_map(t_prime)?;
        let a = self.l1(&c)?;
        let b = self.l2(&c, &c)?.scale(&Scalar::new(1, 2));
        let d = self.l3(&c, &c, &c)?.scale(&Scalar::new(1, 6));
        a.add(&b)?.add(&d)
    }
}

/// `l_kᵀ` for `k = 1, 2, 3`, with `args.len() == k`.
pub fn twisted_l(e: &EmbeddingTensor, k: usize, args: &[&Cochain]) -> Result<Cochain> {
    if args.len() != k {
        return Err(Error::InvalidInput(format!("l_{k} takes {k} arguments, got {}", args.len())));
    }
    let tw = Twisted::new(e)?;
    match k {
        1 => tw.l1(args[0]),
        2 => tw.l2(args[0], args[1]),
        3 => tw.l3(args[0], args[1], args[2]),
        _ => Err(Error::InvalidInput(format!("twisted operations exist for k = 1, 2, 3, not {k}"))),
    }
}
