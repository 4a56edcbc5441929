//! The groups `Γ̃_α` and `Γ̂_α = Γ̃_α ⋊ Z`, their integer coordinate models,
//! and their actions on the rank-two spaces.

use crate::error::{Error, Result};
use crate::rank2::{RankTwoDistribution, RankTwoFunction};
use crate::scalar::Scalar;
use crate::torsor::{gamma_shift, shear_shift, TorsorElement};
use crate::value_group::{BreveElement, GammaElement};
use serde::{Deserialize, Serialize};

fn col(n: i64) -> BreveElement {
    BreveElement::column(n)
}

/// `½·x·(x − 1)`, always an integer.
pub fn half_pred(x: i64) -> i64 {
    if x % 2 == 0 {
        (x / 2) * (x - 1)
    } else {
        x * ((x - 1) / 2)
    }
}

/// An element `(β, h)` of `Γ̃_α` with `h ∈ [α, β∘α]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TildeRepr", into = "TildeRepr")]
pub struct HeisTilde {
    beta: GammaElement,
    h: TorsorElement,
}

#[derive(Serialize, Deserialize)]
struct TildeRepr {
    beta: GammaElement,
    h: TorsorElement,
}

impl TryFrom<TildeRepr> for HeisTilde {
    type Error = Error;
    fn try_from(r: TildeRepr) -> Result<Self> {
        HeisTilde::from_parts(r.beta, r.h)
    }
}

impl From<HeisTilde> for TildeRepr {
    fn from(x: HeisTilde) -> Self {
        TildeRepr { beta: x.beta, h: x.h }
    }
}

impl HeisTilde {
    pub fn from_parts(beta: GammaElement, h: TorsorElement) -> Result<Self> {
        let expected = h.alpha.translate(beta);
        if h.beta != expected {
            return Err(Error::EndpointMismatch(format!("h must end at {expected}, got {}", h.beta)));
        }
        Ok(HeisTilde { beta, h })
    }

    /// `(β, d₀ + t)` over the base point `alpha`.
    pub fn new(alpha: BreveElement, beta: GammaElement, t: i64) -> Self {
        HeisTilde { beta, h: TorsorElement::new(alpha, alpha.translate(beta), t) }
    }

    pub fn identity(alpha: BreveElement) -> Self {
        Self::new(alpha, GammaElement::ZERO, 0)
    }

    pub fn alpha(&self) -> BreveElement {
        self.h.alpha
    }

    pub fn beta(&self) -> GammaElement {
        self.beta
    }

    pub fn h(&self) -> TorsorElement {
        self.h
    }

    fn same_base(&self, o: &Self) -> Result<()> {
        if self.alpha() != o.alpha() {
            return Err(Error::BasePointMismatch(format!("{} vs {}", self.alpha(), o.alpha())));
        }
        Ok(())
    }

    /// `(β₁ + β₂, h₁ ⊗ β₁(h₂))`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_base(o)?;
        let moved = o.h.gamma_act(self.beta);
        Self::from_parts(self.beta + o.beta, self.h.compose(&moved)?)
    }

    pub fn inverse(&self) -> Self {
        let nb = -self.beta;
        HeisTilde { beta: nb, h: self.h.gamma_act(nb).inverse() }
    }

    /// `Λ`: the element `(β, g ⊗ h ⊗ β(g⁻¹))` over `g.alpha`, for `g ∈ [α′, α]`.
    pub fn transport(&self, g: &TorsorElement) -> Result<Self> {
        let back = g.inverse().gamma_act(self.beta);
        let h = g.compose(&self.h)?.compose(&back)?;
        Self::from_parts(self.beta, h)
    }

    /// `T_m`: the element `(m ⋄ β, m(h))` over `m ⋄ α`.
    pub fn shear(&self, m: i64) -> Self {
        HeisTilde { beta: self.beta.shear(m), h: self.h.c_act(m) }
    }

    /// The automorphism `Λ_{α, m⋄α} ∘ T_m` of `Γ̃_α`.
    pub fn c_act(&self, m: i64) -> Self {
        let alpha = self.alpha();
        let g = TorsorElement::base(alpha, alpha.shear(m));
        self.shear(m).transport(&g).expect("endpoints agree")
    }

    /// `ρ_{α,γ}`: the element `(−β, ε(h))` of `Γ̃_{α^⊥}`.
    pub fn rho(&self, gamma: GammaElement) -> Self {
        HeisTilde { beta: -self.beta, h: self.h.perp(gamma) }
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.mul(&self.inverse())?.mul(&o.inverse())
    }
}

/// An element `(f, m)` of `Γ̂_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisExt {
    pub f: HeisTilde,
    pub m: i64,
}

impl HeisExt {
    pub fn new(f: HeisTilde, m: i64) -> Self {
        HeisExt { f, m }
    }

    pub fn identity(alpha: BreveElement) -> Self {
        HeisExt { f: HeisTilde::identity(alpha), m: 0 }
    }

    pub fn alpha(&self) -> BreveElement {
        self.f.alpha()
    }

    /// `(f₁ · m₁(f₂), m₁ + m₂)`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(HeisExt { f: self.f.mul(&o.f.c_act(self.m))?, m: self.m + o.m })
    }

    pub fn inverse(&self) -> Self {
        HeisExt { f: self.f.inverse().c_act(-self.m), m: -self.m }
    }

    /// `ϱ_{α,γ}`, defined for `π(γ) = 0`.
    pub fn varrho(&self, gamma: GammaElement) -> Result<Self> {
        if gamma.n != 0 {
            return Err(Error::NotVertical(gamma.n));
        }
        Ok(HeisExt { f: self.f.rho(gamma), m: self.m })
    }
}

/// Coordinates `(a, b, c, m)` on `Γ̂` at the base point `(0, −∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 4]", into = "[i64; 4]")]
pub struct HeisQuad {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m: i64,
}

impl From<[i64; 4]> for HeisQuad {
    fn from([a, b, c, m]: [i64; 4]) -> Self {
        HeisQuad { a, b, c, m }
    }
}

impl From<HeisQuad> for [i64; 4] {
    fn from(q: HeisQuad) -> Self {
        [q.a, q.b, q.c, q.m]
    }
}

impl HeisQuad {
    pub fn new(a: i64, b: i64, c: i64, m: i64) -> Self {
        HeisQuad { a, b, c, m }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn mul(&self, y: &Self) -> Self {
        HeisQuad {
            a: self.a + y.a + self.m * y.b,
            b: self.b + y.b,
            c: self.c + y.c + self.a * y.b + half_pred(y.b) * self.m,
            m: self.m + y.m,
        }
    }

    pub fn inverse(&self) -> Self {
        let HeisQuad { a, b, c, m } = *self;
        HeisQuad { a: -a + m * b, b: -b, c: -c + a * b - half_pred(-b) * m, m: -m }
    }

    pub fn commutator(&self, y: &Self) -> Self {
        self.mul(y).mul(&self.inverse()).mul(&y.inverse())
    }

    /// The section-change automorphism `φ_k`.
    pub fn phi(&self, k: i64) -> Self {
        HeisQuad { a: self.a + k * self.b, b: self.b, c: self.c + half_pred(self.b) * k, m: self.m }
    }

    /// The upper unitriangular matrix representing `self` in `GL(4, Z)`.
    pub fn matrix(&self) -> [[i64; 4]; 4] {
        let HeisQuad { a, b, c, m } = *self;
        [[1, m, a, c], [0, 1, b, half_pred(b)], [0, 0, 1, b], [0, 0, 0, 1]]
    }
}

/// Product of 4×4 integer matrices.
pub fn matmul(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|l| x[i][l] * y[l][j]).sum();
        }
    }
    out
}

/// `(a, b, c) ↦ ((b, a), d_b − c)` at the base point `(0, −∞)`.
pub fn heis_iso(a: i64, b: i64, c: i64) -> HeisTilde {
    HeisTilde::new(col(0), GammaElement::new(b, a), -c)
}

pub fn heis_iso_inverse(x: &HeisTilde) -> Result<(i64, i64, i64)> {
    if x.alpha() != col(0) {
        return Err(Error::BasePointMismatch(format!("coordinates need base point {}, got {}", col(0), x.alpha())));
    }
    Ok((x.beta.p, x.beta.n, -x.h.t))
}

pub fn quad_to_ext(q: &HeisQuad) -> HeisExt {
    HeisExt { f: heis_iso(q.a, q.b, q.c), m: q.m }
}

pub fn ext_to_quad(x: &HeisExt) -> Result<HeisQuad> {
    let (a, b, c) = heis_iso_inverse(&x.f)?;
    Ok(HeisQuad { a, b, c, m: x.m })
}

fn check_base(g: BreveElement, x: BreveElement) -> Result<()> {
    if g != x {
        return Err(Error::BasePointMismatch(format!("group over {g} acting on space over {x}")));
    }
    Ok(())
}

/// `(β, h) ∘ Q`.
pub fn act_tilde_fn(g: &HeisTilde, q: &RankTwoFunction) -> Result<RankTwoFunction> {
    let alpha = q.alpha();
    check_base(g.alpha(), alpha)?;
    let beta = g.beta;
    let slots = q
        .window()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let k = q.klo() + i as i64;
            let e = gamma_shift(beta, col(k + 1), alpha) - g.h.t;
            f.translate(beta.p).with_fiber(k + beta.n).scale(&Scalar::r_pow(e))
        })
        .collect();
    Ok(RankTwoFunction::from_canonical(alpha, q.staircase().translate(beta), q.klo() + beta.n, slots, q.below()))
}

/// `(β, h) ∘ S`.
pub fn act_tilde_dist(g: &HeisTilde, s: &RankTwoDistribution) -> Result<RankTwoDistribution> {
    let alpha = s.alpha();
    check_base(g.alpha(), alpha)?;
    let beta = g.beta;
    let terms = s.terms().map(|(k, d)| {
        let e = g.h.t + gamma_shift(beta, alpha, col(k + 1));
        d.translate(beta.p).with_fiber(k + beta.n).scale(&Scalar::r_pow(e))
    });
    Ok(RankTwoDistribution::from_canonical(alpha, terms.collect::<Vec<_>>()))
}

/// `m ⋄ Q`.
pub fn act_shear_fn(m: i64, q: &RankTwoFunction) -> RankTwoFunction {
    let slots = q
        .window()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let k = q.klo() + i as i64;
            f.translate(m * k).scale(&Scalar::r_pow(shear_shift(m, col(k + 1), col(0))))
        })
        .collect();
    RankTwoFunction::from_canonical(q.alpha(), q.staircase().shear(m), q.klo(), slots, q.below())
}

/// `m ⋄ S`.
pub fn act_shear_dist(m: i64, s: &RankTwoDistribution) -> RankTwoDistribution {
    let terms = s
        .terms()
        .map(|(k, d)| d.translate(m * k).scale(&Scalar::r_pow(shear_shift(m, col(0), col(k + 1)))))
        .collect::<Vec<_>>();
    RankTwoDistribution::from_canonical(s.alpha(), terms)
}

/// `(f, m) ⋄ Q = f ∘ (m ⋄ Q)`.
pub fn act_ext_fn(g: &HeisExt, q: &RankTwoFunction) -> Result<RankTwoFunction> {
    act_tilde_fn(&g.f, &act_shear_fn(g.m, q))
}

/// `(f, m) ⋄ S = f ∘ (m ⋄ S)`.
pub fn act_ext_dist(g: &HeisExt, s: &RankTwoDistribution) -> Result<RankTwoDistribution> {
    act_tilde_dist(&g.f, &act_shear_dist(g.m, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::pair_rank2;
    use crate::torsor::{MeasureElement, Staircase};

    #[test]
    fn quad_examples() {
        let x = HeisQuad::new(1, 0, 0, 0);
        let y = HeisQuad::new(0, 1, 0, 0);
        assert_eq!(x.mul(&y), HeisQuad::new(1, 1, 1, 0));
        assert_eq!(HeisQuad::new(0, 0, 0, 1).commutator(&y), HeisQuad::new(1, 0, -1, 0));
        assert_eq!(HeisQuad::new(3, 0, 7, 0).commutator(&HeisQuad::new(0, -2, 0, 0)), HeisQuad::new(0, 0, -6, 0));
        assert_eq!(HeisQuad::new(0, 2, 0, 0).phi(1), HeisQuad::new(2, 2, 1, 0));
        let m = HeisQuad::new(0, 2, 0, 0).matrix();
        assert_eq!(m[1][3], 1);
        assert_eq!(HeisQuad::identity().matrix(), matmul(&HeisQuad::identity().matrix(), &HeisQuad::identity().matrix()));
    }

    #[test]
    fn iso_examples() {
        assert_eq!(heis_iso(0, 0, 0), HeisTilde::identity(col(0)));
        let prod = heis_iso(1, 0, 0).mul(&heis_iso(0, 1, 0)).unwrap();
        assert_eq!(heis_iso_inverse(&prod).unwrap(), (1, 1, 1));
        let comm = heis_iso(0, 1, 0).commutator(&heis_iso(1, 0, 0)).unwrap();
        assert_eq!(comm.beta(), GammaElement::ZERO);
        assert_eq!(comm.h().t.abs(), 1);
    }

    #[test]
    fn shear_action_on_coordinates() {
        for m in -3..=3 {
            for (a, b, c) in [(0, 2, 0), (1, -3, 2), (-2, 5, -1)] {
                let moved = heis_iso(a, b, c).c_act(m);
                assert_eq!(heis_iso_inverse(&moved).unwrap(), (a + m * b, b, c + half_pred(b) * m));
            }
        }
        let alpha = BreveElement::fin(1, 2);
        let x = HeisTilde::new(alpha, GammaElement::new(2, -1), 3);
        assert_eq!(x.c_act(0), x);
        assert_eq!(x.c_act(2).c_act(-1), x.c_act(1));
    }

    #[test]
    fn central_action_twists_measures() {
        let alpha = col(0);
        let q = RankTwoFunction::delta_staircase(&Staircase::standard(), alpha);
        let z = HeisTilde::new(alpha, GammaElement::ZERO, 1);
        assert_eq!(act_tilde_fn(&z, &q).unwrap(), q.scale(&Scalar::r_pow(-1)));
        let point = BreveElement::fin(0, 0);
        let s = RankTwoDistribution::delta_gamma(point, &MeasureElement::base(alpha, point), alpha).unwrap();
        assert_eq!(act_tilde_dist(&z, &s).unwrap(), s.scale(&Scalar::r()));
        assert_eq!(
            pair_rank2(&act_tilde_fn(&z, &q).unwrap(), &act_tilde_dist(&z, &s).unwrap()).unwrap(),
            pair_rank2(&q, &s).unwrap()
        );
    }

    #[test]
    fn half_pred_values() {
        for x in -7..=7 {
            assert_eq!(2 * half_pred(x), x * (x - 1));
        }
    }
}
