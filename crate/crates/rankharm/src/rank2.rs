//! The rank-two spaces `D₊,α,r(Γ)` and `D′₊,α,r(Γ)`.
//!
//! Every measure `μ_k ∈ μ_r((k+1,−∞), α)` and `λ_k ∈ μ_r(α, (k+1,−∞))` is
//! stored as the base vector `ϑ_r(d₀)`, with its coefficient folded into the
//! fiber data. With this convention all derived `η_k` are the base vectors of
//! `μ_r((k+1,−∞), (k,−∞))`, so `η_k(x) = r^{−x}`.

use crate::error::{Error, Result};
use crate::rank1::{RankOneDistribution, RankOneFunction};
use crate::scalar::Scalar;
use crate::torsor::{MeasureElement, Staircase, TorsorElement};
use crate::value_group::{BreveElement, Fiber};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest number of slots any operation may materialize.
pub const MAX_WINDOW: i64 = 4096;

fn col(n: i64) -> BreveElement {
    BreveElement::column(n)
}

/// Pairing of `f` with the canonical `η` on its fiber.
pub fn eta_of(f: &RankOneFunction) -> Scalar {
    f.eta_value(&Scalar::one())
}

fn check_window(lo: i64, hi: i64) -> Result<()> {
    if hi - lo + 1 > MAX_WINDOW {
        return Err(Error::WindowOverflow(format!("window [{lo}, {hi}] exceeds {MAX_WINDOW} slots")));
    }
    Ok(())
}

fn fold_measure(m: &MeasureElement, alpha: BreveElement, want_upper: BreveElement, want_lower: BreveElement) -> Result<Scalar> {
    if m.alpha != want_upper || m.beta != want_lower {
        return Err(Error::EndpointMismatch(format!(
            "expected a measure in μ({want_upper}, {want_lower}) for base point {alpha}, got μ({}, {})",
            m.alpha, m.beta
        )));
    }
    Ok(m.c.clone())
}

/// How a function continues below its window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BelowMode {
    Zero,
    Staircase,
}

/// An element of `D₊,α,r(Γ)`: explicit slots on `[klo, khi]` continued by
/// multiples of `δ_{≥z_k}` along a staircase.
#[derive(Clone, Debug)]
pub struct RankTwoFunction {
    alpha: BreveElement,
    staircase: Staircase,
    klo: i64,
    slots: Vec<RankOneFunction>,
    below: BelowMode,
}

impl RankTwoFunction {
    /// Validates and normalizes raw slot data `(f_k, μ_k)` for `k = klo, klo+1, …`.
    pub fn new(
        alpha: BreveElement,
        staircase: Staircase,
        klo: i64,
        slots: Vec<(RankOneFunction, MeasureElement)>,
        below: BelowMode,
    ) -> Result<Self> {
        if slots.is_empty() {
            return Ok(match below {
                BelowMode::Staircase => Self::delta_staircase(&staircase, alpha),
                BelowMode::Zero => Self::zero(alpha),
            });
        }
        check_window(klo, klo + slots.len() as i64 - 1)?;
        let mut folded = Vec::with_capacity(slots.len());
        for (i, (f, mu)) in slots.into_iter().enumerate() {
            let k = klo + i as i64;
            if f.k() != k {
                return Err(Error::FiberMismatch(f.k(), k));
            }
            let c = fold_measure(&mu, alpha, col(k + 1), alpha)?;
            if c.is_zero() {
                return Err(Error::ZeroMeasure);
            }
            folded.push(f.scale(&c));
        }
        let q = RankTwoFunction { alpha, staircase, klo, slots: folded, below };
        q.validate()?;
        Ok(q)
    }

    pub(crate) fn from_canonical(
        alpha: BreveElement,
        staircase: Staircase,
        klo: i64,
        slots: Vec<RankOneFunction>,
        below: BelowMode,
    ) -> Self {
        RankTwoFunction { alpha, staircase, klo, slots, below }
    }

    pub fn zero(alpha: BreveElement) -> Self {
        RankTwoFunction {
            alpha,
            staircase: Staircase::standard(),
            klo: 0,
            slots: vec![RankOneFunction::zero(0)],
            below: BelowMode::Zero,
        }
    }

    /// The characteristic element `δ_Z`.
    pub fn delta_staircase(z: &Staircase, alpha: BreveElement) -> Self {
        let k = alpha.n;
        let t = TorsorElement::from_staircase(z, col(k + 1), alpha).t;
        let f = RankOneFunction::delta_geq(k, z.z(k)).scale(&Scalar::r_pow(t));
        RankTwoFunction { alpha, staircase: z.clone(), klo: k, slots: vec![f], below: BelowMode::Staircase }
    }

    /// Checks every matching condition on the window and the lower boundary.
    pub fn validate(&self) -> Result<()> {
        for (i, pair) in self.slots.windows(2).enumerate() {
            if pair[0].delta_infty() != eta_of(&pair[1]) {
                return Err(Error::MatchingViolation(self.klo + i as i64));
            }
        }
        if self.below == BelowMode::Zero && !eta_of(&self.slots[0]).is_zero() {
            return Err(Error::BoundaryViolation(self.klo - 1));
        }
        Ok(())
    }

    pub fn alpha(&self) -> BreveElement {
        self.alpha
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn below(&self) -> BelowMode {
        self.below
    }

    pub fn klo(&self) -> i64 {
        self.klo
    }

    pub fn khi(&self) -> i64 {
        self.klo + self.slots.len() as i64 - 1
    }

    /// The explicit slots, each paired with the base vector of `μ_r((k+1,−∞), α)`.
    pub fn window(&self) -> &[RankOneFunction] {
        &self.slots
    }

    pub fn mu(&self, k: i64) -> MeasureElement {
        MeasureElement::base(col(k + 1), self.alpha)
    }

    /// The fiber function `f_k` for any `k`.
    pub fn slot(&self, k: i64) -> RankOneFunction {
        let (lo, hi) = (self.klo, self.khi());
        if (lo..=hi).contains(&k) {
            return self.slots[(k - lo) as usize].clone();
        }
        if k > hi {
            let mut c = self.slots.last().unwrap().delta_infty();
            for j in hi + 1..=k {
                c = &c * &Scalar::r_pow(self.staircase.z(j));
            }
            return RankOneFunction::delta_geq(k, self.staircase.z(k)).scale(&c);
        }
        if self.below == BelowMode::Zero {
            return RankOneFunction::zero(k);
        }
        let mut c = eta_of(&self.slots[0]);
        for j in (k + 1..lo).rev() {
            c = &c * &Scalar::r_pow(-self.staircase.z(j));
        }
        RankOneFunction::delta_geq(k, self.staircase.z(k)).scale(&c)
    }

    /// The same element with slots materialized on at least `[lo, hi]`.
    pub fn extended(&self, lo: i64, hi: i64) -> Result<Self> {
        let lo = lo.min(self.klo);
        let hi = hi.max(self.khi());
        check_window(lo, hi)?;
        Ok(RankTwoFunction {
            alpha: self.alpha,
            staircase: self.staircase.clone(),
            klo: lo,
            slots: (lo..=hi).map(|k| self.slot(k)).collect(),
            below: self.below,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        RankTwoFunction { slots: self.slots.iter().map(|f| f.scale(s)).collect(), ..self.clone() }
    }

    /// `Q ⊗ h` for nonzero `h ∈ μ_r(α, α′)`.
    pub fn retarget(&self, h: &MeasureElement) -> Result<Self> {
        if h.alpha != self.alpha {
            return Err(Error::BasePointMismatch(format!("{} vs {}", h.alpha, self.alpha)));
        }
        if h.is_zero() {
            return Err(Error::ZeroMeasure);
        }
        Ok(RankTwoFunction { alpha: h.beta, ..self.scale(&h.c) })
    }

    fn staircases_agree_above(&self, o: &Self, k: i64) -> bool {
        let (a, b) = (&self.staircase, &o.staircase);
        a.slope() == b.slope()
            && a.intercept() == b.intercept()
            && a.exceptions().range(k + 1..).chain(b.exceptions().range(k + 1..)).all(|(&n, _)| a.z(n) == b.z(n))
    }

    fn staircases_agree_below(&self, o: &Self, k: i64) -> bool {
        let (a, b) = (&self.staircase, &o.staircase);
        a.slope() == b.slope()
            && a.intercept() == b.intercept()
            && a.exceptions().range(..k).chain(b.exceptions().range(..k)).all(|(&n, _)| a.z(n) == b.z(n))
    }
}

impl PartialEq for RankTwoFunction {
    fn eq(&self, o: &Self) -> bool {
        if self.alpha != o.alpha {
            return false;
        }
        let lo = self.klo.min(o.klo);
        let hi = self.khi().max(o.khi());
        if (lo..=hi).any(|k| self.slot(k) != o.slot(k)) {
            return false;
        }
        let top = self.slot(hi).delta_infty();
        if !top.is_zero() && !self.staircases_agree_above(o, hi) {
            return false;
        }
        let bottom = eta_of(&self.slot(lo));
        if !bottom.is_zero() {
            if self.below != o.below {
                return false;
            }
            if !self.staircases_agree_below(o, lo) {
                return false;
            }
        }
        true
    }
}

impl Eq for RankTwoFunction {}

/// One summand `g_k ⊗ λ_k` before reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTerm {
    pub k: i64,
    pub g: RankOneDistribution,
    pub lambda: MeasureElement,
}

/// An element of `D′₊,α,r(Γ)` in normal form: finitely many slots, none with
/// a `δ₊∞`-component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoDistribution {
    alpha: BreveElement,
    terms: BTreeMap<i64, RankOneDistribution>,
}

fn fold_raw(alpha: BreveElement, raw: &[RawTerm]) -> Result<BTreeMap<i64, RankOneDistribution>> {
    let mut terms: BTreeMap<i64, RankOneDistribution> = BTreeMap::new();
    for t in raw {
        if t.g.k() != t.k {
            return Err(Error::FiberMismatch(t.g.k(), t.k));
        }
        let c = fold_measure(&t.lambda, alpha, alpha, col(t.k + 1))?;
        let g = t.g.scale(&c);
        match terms.get(&t.k) {
            Some(prev) => {
                let sum = prev.add(&g)?;
                terms.insert(t.k, sum);
            }
            None => {
                terms.insert(t.k, g);
            }
        }
    }
    Ok(terms)
}

/// Moves every `δ₊∞`-component one slot up as a multiple of `η`.
fn reduce_terms(mut terms: BTreeMap<i64, RankOneDistribution>) -> BTreeMap<i64, RankOneDistribution> {
    let mut cursor = terms.keys().next().copied();
    while let Some(k) = cursor {
        let g = terms.remove(&k).unwrap();
        let c = g.delta_plus_infinity_component();
        let g = if c.is_zero() {
            g
        } else {
            let lifted = RankOneDistribution::eta(k + 1, c.clone());
            let next = match terms.remove(&(k + 1)) {
                Some(n) => n.add(&lifted).expect("same fiber"),
                None => lifted,
            };
            terms.insert(k + 1, next);
            g.sub(&RankOneDistribution::delta_plus_infinity(k).scale(&c)).expect("same fiber")
        };
        if !g.is_zero() {
            terms.insert(k, g);
        }
        cursor = terms.range(k + 1..).next().map(|(&j, _)| j);
    }
    terms
}

/// Normal form of a raw sum `Σ g_k ⊗ λ_k`.
pub fn reduce_normal_form(alpha: BreveElement, raw: &[RawTerm]) -> Result<RankTwoDistribution> {
    Ok(RankTwoDistribution { alpha, terms: reduce_terms(fold_raw(alpha, raw)?) })
}

/// The generator `δ₊∞ ⊗ (η ⊗ λ) − η ⊗ λ` of the relation subspace, at slots `k`, `k+1`.
pub fn y_generator(alpha: BreveElement, k: i64, eta: &MeasureElement, lambda: &MeasureElement) -> Result<Vec<RawTerm>> {
    let mu = lambda.tensor(eta)?;
    let embedded = RankOneDistribution::eta(k + 1, eta.c.clone());
    let raw = vec![
        RawTerm { k, g: RankOneDistribution::delta_plus_infinity(k), lambda: mu },
        RawTerm { k: k + 1, g: embedded.scale(&-Scalar::one()), lambda: lambda.clone() },
    ];
    fold_raw(alpha, &raw)?;
    Ok(raw)
}

/// `⟨Q, Σ g_k ⊗ λ_k⟩` evaluated term by term, without reduction.
pub fn pair_raw(q: &RankTwoFunction, raw: &[RawTerm]) -> Result<Scalar> {
    let terms = fold_raw(q.alpha, raw)?;
    terms.iter().map(|(&k, g)| q.slot(k).pair(g)).sum()
}

impl RankTwoDistribution {
    pub fn zero(alpha: BreveElement) -> Self {
        RankTwoDistribution { alpha, terms: BTreeMap::new() }
    }

    pub(crate) fn from_canonical(alpha: BreveElement, terms: impl IntoIterator<Item = RankOneDistribution>) -> Self {
        let mut map: BTreeMap<i64, RankOneDistribution> = BTreeMap::new();
        for g in terms {
            let k = g.k();
            let next = match map.remove(&k) {
                Some(prev) => prev.add(&g).expect("same fiber"),
                None => g,
            };
            map.insert(k, next);
        }
        RankTwoDistribution { alpha, terms: reduce_terms(map) }
    }

    /// `δ_{γ,b}` for `b ∈ μ_r(α, γ)`.
    pub fn delta_gamma(gamma: BreveElement, b: &MeasureElement, alpha: BreveElement) -> Result<Self> {
        let c = fold_measure(b, alpha, alpha, gamma)?;
        match gamma.fiber {
            Fiber::Fin(p) => {
                let layer = Staircase::constant(p);
                let t = TorsorElement::from_staircase(&layer, gamma, col(gamma.n + 1)).t;
                let g = RankOneDistribution::from_parts(
                    gamma.n,
                    p + 1,
                    vec![],
                    vec![crate::rank1::Term { ratio: Scalar::one(), coeff: Scalar::one() }],
                    vec![crate::rank1::Term { ratio: Scalar::r_pow(-1), coeff: Scalar::r_pow(p) }],
                )?;
                Ok(Self::from_canonical(alpha, [g.scale(&(&c * &Scalar::r_pow(t)))]))
            }
            Fiber::NegInf => Ok(Self::from_canonical(
                alpha,
                [RankOneDistribution::delta_plus_infinity(gamma.n - 1).scale(&c)],
            )),
        }
    }

    pub fn alpha(&self) -> BreveElement {
        self.alpha
    }

    /// Slots in increasing order, each paired with the base vector of `μ_r(α, (k+1,−∞))`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RankOneDistribution)> {
        self.terms.iter().map(|(&k, g)| (k, g))
    }

    pub fn term(&self, k: i64) -> Option<&RankOneDistribution> {
        self.terms.get(&k)
    }

    pub fn lambda(&self, k: i64) -> MeasureElement {
        MeasureElement::base(self.alpha, col(k + 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_raw(&self) -> Vec<RawTerm> {
        self.terms.iter().map(|(&k, g)| RawTerm { k, g: g.clone(), lambda: self.lambda(k) }).collect()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.alpha != o.alpha {
            return Err(Error::BasePointMismatch(format!("{} vs {}", self.alpha, o.alpha)));
        }
        Ok(Self::from_canonical(self.alpha, self.terms.values().chain(o.terms.values()).cloned()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_canonical(self.alpha, self.terms.values().map(|g| g.scale(s)))
    }

    /// `h ⊗ S` for nonzero `h ∈ μ_r(α′, α)`.
    pub fn retarget(&self, h: &MeasureElement) -> Result<Self> {
        if h.beta != self.alpha {
            return Err(Error::BasePointMismatch(format!("{} vs {}", h.beta, self.alpha)));
        }
        if h.is_zero() {
            return Err(Error::ZeroMeasure);
        }
        Ok(RankTwoDistribution { alpha: h.alpha, ..self.scale(&h.c) })
    }
}

/// `⟨Q, S⟩ = Σ_k ⟨f_k, g_k⟩ · (μ_k ⊗ λ_k)`.
pub fn pair_rank2(q: &RankTwoFunction, s: &RankTwoDistribution) -> Result<Scalar> {
    if q.alpha != s.alpha {
        return Err(Error::BasePointMismatch(format!("{} vs {}", q.alpha, s.alpha)));
    }
    s.terms.iter().map(|(&k, g)| q.slot(k).pair(g)).sum()
}

/// The image of a function under `ψ_Z`: fiber functions `(μ_k/μ_{k,Z})·f_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialized {
    pub reference: Staircase,
    pub alpha: BreveElement,
    pub klo: i64,
    pub slots: Vec<RankOneFunction>,
    pub tail: Staircase,
    pub below: BelowMode,
}

fn reference_exponent(z: &Staircase, k: i64, alpha: BreveElement) -> i64 {
    TorsorElement::from_staircase(z, col(k + 1), alpha).t
}

/// `ψ_Z` on the window of `Q`.
pub fn psi_trivialize(q: &RankTwoFunction, z: &Staircase) -> Trivialized {
    let slots = q
        .slots
        .iter()
        .enumerate()
        .map(|(i, f)| f.scale(&Scalar::r_pow(-reference_exponent(z, q.klo + i as i64, q.alpha))))
        .collect();
    Trivialized {
        reference: z.clone(),
        alpha: q.alpha,
        klo: q.klo,
        slots,
        tail: q.staircase.clone(),
        below: q.below,
    }
}

impl Trivialized {
    /// `η_{k+1,Z}`'s coefficient relative to the canonical `η`.
    pub fn eta_coefficient(&self, k: i64) -> Scalar {
        let hi = reference_exponent(&self.reference, k, self.alpha);
        let lo = reference_exponent(&self.reference, k - 1, self.alpha);
        Scalar::r_pow(hi - lo)
    }

    /// Checks `δ₊∞(g_k) = η_{k+1,Z}(g_{k+1})` across the window.
    pub fn matching_holds(&self) -> bool {
        self.slots.windows(2).enumerate().all(|(i, w)| {
            let k = self.klo + i as i64;
            w[0].delta_infty() == w[1].eta_value(&self.eta_coefficient(k + 1))
        })
    }

    pub fn untrivialize(&self) -> RankTwoFunction {
        let slots = self
            .slots
            .iter()
            .enumerate()
            .map(|(i, g)| g.scale(&Scalar::r_pow(reference_exponent(&self.reference, self.klo + i as i64, self.alpha))))
            .collect();
        RankTwoFunction::from_canonical(self.alpha, self.tail.clone(), self.klo, slots, self.below)
    }
}

#[derive(Serialize, Deserialize)]
struct SlotRepr {
    f: RankOneFunction,
    mu: MeasureElement,
}

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    schema: String,
    alpha: BreveElement,
    staircase: Staircase,
    klo: i64,
    slots: Vec<SlotRepr>,
    below: BelowMode,
}

#[derive(Serialize, Deserialize)]
struct DistributionRepr {
    schema: String,
    alpha: BreveElement,
    terms: Vec<RawTerm>,
}

pub const FUNCTION_SCHEMA: &str = "rank2fn";
pub const DISTRIBUTION_SCHEMA: &str = "rank2dist";

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected schema `{expected}`, found `{found}`")));
    }
    Ok(())
}

impl Serialize for RankTwoFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionRepr {
            schema: FUNCTION_SCHEMA.into(),
            alpha: self.alpha,
            staircase: self.staircase.clone(),
            klo: self.klo,
            slots: self
                .slots
                .iter()
                .enumerate()
                .map(|(i, f)| SlotRepr { f: f.clone(), mu: self.mu(self.klo + i as i64) })
                .collect(),
            below: self.below,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RankTwoFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = FunctionRepr::deserialize(d)?;
        check_schema(&r.schema, FUNCTION_SCHEMA).map_err(D::Error::custom)?;
        let slots = r.slots.into_iter().map(|s| (s.f, s.mu)).collect();
        RankTwoFunction::new(r.alpha, r.staircase, r.klo, slots, r.below).map_err(D::Error::custom)
    }
}

impl Serialize for RankTwoDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionRepr { schema: DISTRIBUTION_SCHEMA.into(), alpha: self.alpha, terms: self.to_raw() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RankTwoDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DistributionRepr::deserialize(d)?;
        check_schema(&r.schema, DISTRIBUTION_SCHEMA).map_err(D::Error::custom)?;
        reduce_normal_form(r.alpha, &r.terms).map_err(D::Error::custom)
    }
}
