//! Z-torsors `[α, β]` and measure lines `μ_r(α, β)`.
//!
//! For `α ≥ β` the torsor `[α, β]` consists of counting functions `d` on
//! subsets of `R_{α,β} = {γ ∈ Γ : α > γ ≥ β}` equivalent to the standard
//! staircase `Z₀ = {(n, p) : p ≥ 0}`, normalized by `d(A₂) = d(A₁) + |A₂ ∖ A₁|`.
//! Every element is stored as an integer offset `t` from the base point `d₀`
//! with `d₀(Z₀ ∩ R_{α,β}) = 0`; for `α < β` the torsor is the dual of `[β, α]`
//! and the stored coordinate is the value of the dual functional on `d₀`.
//!
//! Maps between torsors induced by bijections of Γ (translations, shears,
//! the reflection `φ ↦ −γ − φ`) change coordinates by the signed count of the
//! pulled-back reference staircase, which [`Staircase::signed_offset`] computes
//! in closed form. [`count_oracle`] performs the same counting point by point.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::value_group::{BreveElement, Fiber, GammaElement};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A subset of Γ meeting each column in an upward half-line `{p ≥ z_n}`,
/// with `z_n = slope·n + intercept` outside a finite set of exceptions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StaircaseRepr", into = "StaircaseRepr")]
pub struct Staircase {
    slope: i64,
    intercept: i64,
    exceptions: BTreeMap<i64, i64>,
}

#[derive(Serialize, Deserialize)]
struct StaircaseRepr {
    slope: i64,
    intercept: i64,
    #[serde(default)]
    exceptions: Vec<[i64; 2]>,
}

impl TryFrom<StaircaseRepr> for Staircase {
    type Error = Error;
    fn try_from(r: StaircaseRepr) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for [n, _] in &r.exceptions {
            if !seen.insert(*n) {
                return Err(Error::Invalid(format!("duplicate staircase exception at column {n}")));
            }
        }
        Ok(Staircase::new(r.slope, r.intercept, r.exceptions.into_iter().map(|[n, z]| (n, z))))
    }
}

impl From<Staircase> for StaircaseRepr {
    fn from(s: Staircase) -> Self {
        StaircaseRepr {
            slope: s.slope,
            intercept: s.intercept,
            exceptions: s.exceptions.into_iter().map(|(n, z)| [n, z]).collect(),
        }
    }
}

/// A column segment `{(n, p) : lo ≤ p < hi}` with `None` meaning unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub n: i64,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Segment {
    fn clip(&self, x: i64) -> i64 {
        let x = self.lo.map_or(x, |lo| x.max(lo));
        self.hi.map_or(x, |hi| x.min(hi))
    }

    /// Signed count of `{p ≥ z}` against `{p ≥ 0}` inside the segment.
    fn offset(&self, z: i64) -> i64 {
        self.clip(0) - self.clip(z)
    }

    pub fn contains(&self, p: i64) -> bool {
        self.lo.is_none_or(|lo| p >= lo) && self.hi.is_none_or(|hi| p < hi)
    }
}

/// The columns of `R_{upper, lower}` for `upper ≥ lower`.
pub fn segments(upper: BreveElement, lower: BreveElement) -> Vec<Segment> {
    assert!(upper >= lower, "segments require upper ≥ lower");
    let mut out = Vec::new();
    if upper.n == lower.n {
        if let Fiber::Fin(hi) = upper.fiber {
            let lo = lower.fiber_value();
            if lo.is_none_or(|lo| lo < hi) {
                out.push(Segment { n: upper.n, lo, hi: Some(hi) });
            }
        }
        return out;
    }
    out.push(Segment { n: lower.n, lo: lower.fiber_value(), hi: None });
    for n in lower.n + 1..upper.n {
        out.push(Segment { n, lo: None, hi: None });
    }
    if let Fiber::Fin(hi) = upper.fiber {
        out.push(Segment { n: upper.n, lo: None, hi: Some(hi) });
    }
    out
}

fn triangular(n: i128) -> i128 {
    n * (n + 1) / 2
}

impl Staircase {
    pub fn new(slope: i64, intercept: i64, exceptions: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let exceptions = exceptions
            .into_iter()
            .filter(|&(n, z)| z != slope * n + intercept)
            .collect();
        Staircase { slope, intercept, exceptions }
    }

    /// The standard staircase `Z₀`.
    pub fn standard() -> Self {
        Staircase::new(0, 0, [])
    }

    pub fn constant(z: i64) -> Self {
        Staircase::new(0, z, [])
    }

    pub fn slope(&self) -> i64 {
        self.slope
    }

    pub fn intercept(&self) -> i64 {
        self.intercept
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, i64> {
        &self.exceptions
    }

    fn default_at(&self, n: i64) -> i64 {
        self.slope * n + self.intercept
    }

    /// Column minimum `z_n`.
    pub fn z(&self, n: i64) -> i64 {
        self.exceptions.get(&n).copied().unwrap_or_else(|| self.default_at(n))
    }

    pub fn contains(&self, g: GammaElement) -> bool {
        g.p >= self.z(g.n)
    }

    /// The translate `φ + Z`.
    pub fn translate(&self, phi: GammaElement) -> Staircase {
        Staircase::new(
            self.slope,
            self.intercept - self.slope * phi.n + phi.p,
            self.exceptions.iter().map(|(&n, &z)| (n + phi.n, z + phi.p)),
        )
    }

    /// The image under the shear `m ⋄ ·`.
    pub fn shear(&self, m: i64) -> Staircase {
        Staircase::new(self.slope + m, self.intercept, self.exceptions.iter().map(|(&n, &z)| (n, z + m * n)))
    }

    /// The staircase `Z'` with `z'_{n'} = z_n^⊥` at `n' = −n − γ₁`, i.e. the complement of `−γ − Z`.
    pub fn reflect(&self, gamma: GammaElement) -> Staircase {
        let map = |n: i64, z: i64| (-n - gamma.n, -z - gamma.p + 1);
        Staircase::new(
            self.slope,
            self.slope * gamma.n - self.intercept - gamma.p + 1,
            self.exceptions.iter().map(|(&n, &z)| map(n, z)),
        )
    }

    /// `d₀(Z ∩ R_{upper,lower})` for `upper ≥ lower`, in closed form.
    pub fn count_offset(&self, upper: BreveElement, lower: BreveElement) -> i64 {
        let mut total: i128 = 0;
        let mut full: Option<(i64, i64)> = None;
        for seg in segments(upper, lower) {
            if seg.lo.is_none() && seg.hi.is_none() {
                full = Some(full.map_or((seg.n, seg.n), |(a, _)| (a, seg.n)));
            } else {
                total += seg.offset(self.z(seg.n)) as i128;
            }
        }
        if let Some((a, b)) = full {
            let (a128, b128) = (a as i128, b as i128);
            let count = b128 - a128 + 1;
            let sum_n = triangular(b128) - triangular(a128 - 1);
            total -= self.slope as i128 * sum_n + self.intercept as i128 * count;
            for (&n, &z) in self.exceptions.range(a..=b) {
                total -= (z - self.default_at(n)) as i128;
            }
        }
        i64::try_from(total).expect("offset overflow")
    }

    /// Signed version of [`Self::count_offset`] for arbitrary endpoint order.
    pub fn signed_offset(&self, x: BreveElement, y: BreveElement) -> i64 {
        if x >= y {
            self.count_offset(x, y)
        } else {
            -self.count_offset(y, x)
        }
    }
}

/// An element `d₀ + t` of the torsor `[alpha, beta]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsorElement {
    pub alpha: BreveElement,
    pub beta: BreveElement,
    pub t: i64,
}

fn mismatch(a: BreveElement, b: BreveElement) -> Error {
    Error::EndpointMismatch(format!("{a} does not match {b}"))
}

/// Coordinate change of the map `[x, y] → [σx, σy]` induced by a bijection σ
/// of Γ, given the preimage `σ⁻¹(Z₀)`.
fn transport_shift(pulled_back: &Staircase, x: BreveElement, y: BreveElement) -> i64 {
    pulled_back.signed_offset(x, y)
}

/// Γ-translation offset for `[x, y] → [φ∘x, φ∘y]`.
pub fn gamma_shift(phi: GammaElement, x: BreveElement, y: BreveElement) -> i64 {
    transport_shift(&Staircase::constant(-phi.p), x, y)
}

/// Shear offset for `[x, y] → [m⋄x, m⋄y]`.
pub fn shear_shift(m: i64, x: BreveElement, y: BreveElement) -> i64 {
    transport_shift(&Staircase::new(-m, 0, []), x, y)
}

/// Offset κ of the involution map `[x, y] → [x^⊥, y^⊥]`.
pub fn perp_shift(x: BreveElement, y: BreveElement, gamma: GammaElement) -> i64 {
    let reference = Staircase::constant(1 - gamma.p);
    if x >= y {
        reference.count_offset(y.perp(gamma), x.perp(gamma))
    } else {
        -reference.count_offset(x.perp(gamma), y.perp(gamma))
    }
}

impl TorsorElement {
    pub fn new(alpha: BreveElement, beta: BreveElement, t: i64) -> Self {
        TorsorElement { alpha, beta, t }
    }

    pub fn base(alpha: BreveElement, beta: BreveElement) -> Self {
        Self::new(alpha, beta, 0)
    }

    /// `[α, β] ⊗ [β, γ] → [α, γ]`.
    pub fn compose(&self, o: &TorsorElement) -> Result<TorsorElement> {
        if self.beta != o.alpha {
            return Err(mismatch(self.beta, o.alpha));
        }
        Ok(Self::new(self.alpha, o.beta, self.t + o.t))
    }

    /// The inverse in `[β, α]`.
    pub fn inverse(&self) -> TorsorElement {
        Self::new(self.beta, self.alpha, -self.t)
    }

    /// The Z-action `a + d`.
    pub fn offset_by(&self, a: i64) -> TorsorElement {
        Self::new(self.alpha, self.beta, self.t + a)
    }

    pub fn gamma_act(&self, phi: GammaElement) -> TorsorElement {
        Self::new(
            self.alpha.translate(phi),
            self.beta.translate(phi),
            self.t + gamma_shift(phi, self.alpha, self.beta),
        )
    }

    pub fn c_act(&self, m: i64) -> TorsorElement {
        Self::new(self.alpha.shear(m), self.beta.shear(m), self.t + shear_shift(m, self.alpha, self.beta))
    }

    pub fn perp(&self, gamma: GammaElement) -> TorsorElement {
        Self::new(
            self.alpha.perp(gamma),
            self.beta.perp(gamma),
            self.t + perp_shift(self.alpha, self.beta, gamma),
        )
    }

    /// The element `d_{Z,x,y}` normalized to vanish on `Z ∩ R`.
    pub fn from_staircase(z: &Staircase, x: BreveElement, y: BreveElement) -> TorsorElement {
        Self::new(x, y, -z.signed_offset(x, y))
    }
}

/// Closed form of the shear action between column bottoms `n₁`, `n₂`.
pub fn calcul_closed_form(m: i64, n1: i64, n2: i64) -> i64 {
    let prod = (n1 + n2 - 1) as i128 * (n1 - n2) as i128;
    (m as i128 * prod / 2) as i64
}

/// `c·ϑ_r(d₀)` in `μ_r(alpha, beta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeasureElement {
    pub alpha: BreveElement,
    pub beta: BreveElement,
    pub c: Scalar,
}

impl MeasureElement {
    pub fn new(alpha: BreveElement, beta: BreveElement, c: Scalar) -> Self {
        MeasureElement { alpha, beta, c }
    }

    pub fn base(alpha: BreveElement, beta: BreveElement) -> Self {
        Self::new(alpha, beta, Scalar::one())
    }

    /// `ϑ_r(d₀ + t) = r^t · ϑ_r(d₀)`.
    pub fn theta(h: &TorsorElement) -> Self {
        Self::new(h.alpha, h.beta, Scalar::r_pow(h.t))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn tensor(&self, o: &MeasureElement) -> Result<MeasureElement> {
        if self.beta != o.alpha {
            return Err(mismatch(self.beta, o.alpha));
        }
        Ok(Self::new(self.alpha, o.beta, &self.c * &o.c))
    }

    pub fn inverse(&self) -> Result<MeasureElement> {
        if self.is_zero() {
            return Err(Error::ZeroMeasure);
        }
        Ok(Self::new(self.beta, self.alpha, self.c.inv()?))
    }

    pub fn scale(&self, s: &Scalar) -> MeasureElement {
        Self::new(self.alpha, self.beta, &self.c * s)
    }

    /// Value at the fiber point `(k, p)` of an element of `μ_r(k+1, k)`.
    pub fn fiber_value(&self, p: i64) -> Result<Scalar> {
        match (self.alpha.fiber, self.beta.fiber) {
            (Fiber::NegInf, Fiber::NegInf) if self.alpha.n == self.beta.n + 1 => Ok(&self.c * &Scalar::r_pow(-p)),
            _ => Err(Error::EndpointMismatch(format!(
                "fiber values need endpoints (k+1, -inf), (k, -inf); got {}, {}",
                self.alpha, self.beta
            ))),
        }
    }

    pub fn gamma_act(&self, phi: GammaElement) -> MeasureElement {
        Self::new(
            self.alpha.translate(phi),
            self.beta.translate(phi),
            &self.c * &Scalar::r_pow(gamma_shift(phi, self.alpha, self.beta)),
        )
    }

    pub fn c_act(&self, m: i64) -> MeasureElement {
        Self::new(
            self.alpha.shear(m),
            self.beta.shear(m),
            &self.c * &Scalar::r_pow(shear_shift(m, self.alpha, self.beta)),
        )
    }

    pub fn perp(&self, gamma: GammaElement) -> MeasureElement {
        Self::new(
            self.alpha.perp(gamma),
            self.beta.perp(gamma),
            &self.c * &Scalar::r_pow(perp_shift(self.alpha, self.beta, gamma)),
        )
    }
}

/// Membership pattern of a subset of one column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnShape {
    /// `{p ≥ min}`.
    Upper(i64),
    All,
    Empty,
}

/// A subset of one column: a shape with finitely many memberships flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSet {
    pub shape: ColumnShape,
    pub toggled: BTreeSet<i64>,
}

impl ColumnSet {
    pub fn upper(min: i64) -> Self {
        ColumnSet { shape: ColumnShape::Upper(min), toggled: BTreeSet::new() }
    }

    pub fn contains(&self, p: i64) -> bool {
        let base = match self.shape {
            ColumnShape::Upper(min) => p >= min,
            ColumnShape::All => true,
            ColumnShape::Empty => false,
        };
        base ^ self.toggled.contains(&p)
    }
}

/// An explicitly described subset of Γ, column by column; absent columns are empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitSet {
    pub columns: BTreeMap<i64, ColumnSet>,
}

impl ExplicitSet {
    pub fn from_staircase(z: &Staircase, cols: impl IntoIterator<Item = i64>) -> Self {
        ExplicitSet { columns: cols.into_iter().map(|n| (n, ColumnSet::upper(z.z(n)))).collect() }
    }

    pub fn contains(&self, g: GammaElement) -> bool {
        self.columns.get(&g.n).is_some_and(|c| c.contains(g.p))
    }

    /// Flips membership of one point.
    pub fn toggle(&mut self, g: GammaElement) {
        let col = self
            .columns
            .entry(g.n)
            .or_insert(ColumnSet { shape: ColumnShape::Empty, toggled: BTreeSet::new() });
        if !col.toggled.remove(&g.p) {
            col.toggled.insert(g.p);
        }
    }

    /// The image under a bijection of Γ that maps columns to columns by
    /// `n ↦ col(n)` and heights by `p ↦ height(n, p)`, increasing in `p`.
    fn map_increasing(&self, col: impl Fn(i64) -> i64, height: impl Fn(i64, i64) -> i64) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|(&n, c)| {
                let shape = match c.shape {
                    ColumnShape::Upper(min) => ColumnShape::Upper(height(n, min)),
                    ref s => s.clone(),
                };
                let toggled = c.toggled.iter().map(|&p| height(n, p)).collect();
                (col(n), ColumnSet { shape, toggled })
            })
            .collect();
        ExplicitSet { columns }
    }

    pub fn translate(&self, phi: GammaElement) -> Self {
        self.map_increasing(|n| n + phi.n, |_, p| p + phi.p)
    }

    pub fn shear(&self, m: i64) -> Self {
        self.map_increasing(|n| n, |n, p| p + m * n)
    }

    /// `{φ : γ + φ + a ≠ 0 for all a ∈ A}` restricted to the given columns.
    pub fn perp_complement(&self, gamma: GammaElement, cols: impl IntoIterator<Item = i64>) -> Self {
        let columns = cols
            .into_iter()
            .map(|n2| {
                let n = -gamma.n - n2;
                let set = match self.columns.get(&n) {
                    None => ColumnSet { shape: ColumnShape::All, toggled: BTreeSet::new() },
                    Some(c) => {
                        let shape = match c.shape {
                            ColumnShape::Upper(min) => ColumnShape::Upper(1 - gamma.p - min),
                            ColumnShape::All => ColumnShape::Empty,
                            ColumnShape::Empty => ColumnShape::All,
                        };
                        ColumnSet { shape, toggled: c.toggled.iter().map(|&p| -gamma.p - p).collect() }
                    }
                };
                (n2, set)
            })
            .collect();
        ExplicitSet { columns }
    }
}

/// Columns met by `R_{x,y}` (either order).
pub fn range_columns(x: BreveElement, y: BreveElement) -> Vec<i64> {
    let (u, l) = if x >= y { (x, y) } else { (y, x) };
    segments(u, l).iter().map(|s| s.n).collect()
}

/// `d₀(A)` computed by enumerating the symmetric difference of `A` and
/// `Z₀ ∩ R_{upper,lower}` point by point.
pub fn count_oracle(set: &ExplicitSet, upper: BreveElement, lower: BreveElement) -> Result<i64> {
    if upper < lower {
        return Err(Error::Invalid(format!("count_oracle needs upper ≥ lower, got {upper} < {lower}")));
    }
    let mut total = 0i64;
    let empty = ColumnSet { shape: ColumnShape::Empty, toggled: BTreeSet::new() };
    for seg in segments(upper, lower) {
        let col = set.columns.get(&seg.n).unwrap_or(&empty);
        if seg.lo.is_none() && col.shape == ColumnShape::All {
            return Err(Error::NotEquivalent(format!("column {} contains a full lower half-line", seg.n)));
        }
        if seg.hi.is_none() && col.shape == ColumnShape::Empty {
            return Err(Error::NotEquivalent(format!("column {} misses a full upper half-line", seg.n)));
        }
        let mut marks: Vec<i64> = vec![0];
        marks.extend(seg.lo);
        marks.extend(seg.hi);
        if let ColumnShape::Upper(min) = col.shape {
            marks.push(min);
        }
        marks.extend(col.toggled.iter().copied());
        let band_lo = marks.iter().min().unwrap() - 1;
        let band_hi = marks.iter().max().unwrap() + 1;
        for p in band_lo..=band_hi {
            if !seg.contains(p) {
                continue;
            }
            let in_a = col.contains(p);
            let in_ref = p >= 0;
            if in_a && !in_ref {
                total += 1;
            } else if in_ref && !in_a {
                total -= 1;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(n: i64) -> BreveElement {
        BreveElement::column(n)
    }

    #[test]
    fn oracle_examples() {
        let (a, b) = (col(2), col(0));
        let z0 = ExplicitSet::from_staircase(&Staircase::standard(), [0, 1]);
        assert_eq!(count_oracle(&z0, a, b).unwrap(), 0);
        let mut minus_one = z0.clone();
        minus_one.toggle(GammaElement::new(1, 4));
        assert_eq!(count_oracle(&minus_one, a, b).unwrap(), -1);
        let stair = Staircase::new(0, 0, [(0, 1), (1, -2)]);
        let set = ExplicitSet::from_staircase(&stair, [0, 1]);
        assert_eq!(count_oracle(&set, a, b).unwrap(), 1);
        assert_eq!(stair.count_offset(a, b), 1);
    }

    #[test]
    fn oracle_rejects_inequivalent_sets() {
        let mut set = ExplicitSet::default();
        set.columns.insert(0, ColumnSet { shape: ColumnShape::All, toggled: BTreeSet::new() });
        assert!(matches!(count_oracle(&set, col(1), col(0)), Err(Error::NotEquivalent(_))));
        let none = ExplicitSet::default();
        assert!(matches!(count_oracle(&none, col(1), col(0)), Err(Error::NotEquivalent(_))));
    }

    #[test]
    fn composition_and_inverse() {
        let h1 = TorsorElement::new(col(3), BreveElement::fin(1, 2), 4);
        let h2 = TorsorElement::new(BreveElement::fin(1, 2), col(-1), -7);
        assert_eq!(h1.compose(&h2).unwrap().t, -3);
        assert_eq!(h1.compose(&h1.inverse()).unwrap(), TorsorElement::new(col(3), col(3), 0));
        assert!(h2.compose(&h1).is_err());
    }

    #[test]
    fn gamma_action_examples() {
        for b in -4..=4 {
            for a in -3..=3 {
                let d_b = TorsorElement::base(col(0), col(b));
                assert_eq!(d_b.gamma_act(GammaElement::new(0, a)).t, -a * b);
            }
        }
        let h = TorsorElement::base(col(3), col(0));
        assert_eq!(h.gamma_act(GammaElement::new(0, 2)).t, 6);
        assert_eq!(h.gamma_act(GammaElement::ZERO), h);
    }

    #[test]
    fn shear_action_examples() {
        let h = TorsorElement::base(col(2), col(0));
        assert_eq!(h.c_act(1).t, 1);
        assert_eq!(h.c_act(0), h);
        let single = TorsorElement::new(BreveElement::fin(1, 3), BreveElement::fin(1, 0), 5);
        let moved = single.c_act(2);
        assert_eq!(moved.t, 5);
        assert_eq!(moved.alpha, BreveElement::fin(1, 5));
    }

    #[test]
    fn staircase_base_points() {
        assert_eq!(TorsorElement::from_staircase(&Staircase::standard(), col(4), BreveElement::fin(-1, 3)).t, 0);
        for b in -4..=4 {
            assert_eq!(TorsorElement::from_staircase(&Staircase::standard(), col(0), col(b)).t, 0);
        }
        let z = Staircase::new(0, 0, [(0, 3)]);
        let d = TorsorElement::from_staircase(&z, col(1), col(0));
        let set = ExplicitSet::from_staircase(&z, [0]);
        assert_eq!(count_oracle(&set, col(1), col(0)).unwrap() + d.t, 0);
        assert_eq!(d.t, 3);
    }

    #[test]
    fn perp_fixes_vertical_base_points() {
        for k in -4..=4 {
            let h = TorsorElement::base(col(k + 1), col(k));
            assert_eq!(h.perp(GammaElement::new(0, 1)).t, 0);
        }
        let empty = TorsorElement::new(BreveElement::fin(2, 1), BreveElement::fin(2, 1), 9);
        assert_eq!(empty.perp(GammaElement::new(3, -2)).t, 9);
    }

    #[test]
    fn measure_examples() {
        let k = 2;
        let eta = MeasureElement::base(col(k + 1), col(k));
        assert_eq!(eta.fiber_value(0).unwrap(), Scalar::one());
        assert_eq!(eta.fiber_value(3).unwrap(), Scalar::r_pow(-3));
        assert_eq!(eta.scale(&Scalar::from_int(5)).fiber_value(2).unwrap(), Scalar::from_int(5) * Scalar::r_pow(-2));
        let m = MeasureElement::new(col(1), col(0), Scalar::from_int(3));
        assert_eq!(m.tensor(&m.inverse().unwrap()).unwrap().c, Scalar::one());
        let h1 = TorsorElement::new(col(2), col(1), 3);
        let h2 = TorsorElement::new(col(1), col(-1), -5);
        let lhs = MeasureElement::theta(&h1.compose(&h2).unwrap());
        let rhs = MeasureElement::theta(&h1).tensor(&MeasureElement::theta(&h2)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(MeasureElement::new(col(1), col(0), Scalar::zero()).perp(GammaElement::new(1, 1)).c, Scalar::zero());
        assert!(MeasureElement::new(col(1), col(0), Scalar::zero()).inverse().is_err());
    }

    #[test]
    fn staircase_json_round_trip() {
        let z = Staircase::new(1, -2, [(0, 5), (3, 1)]);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"slope":1,"intercept":-2,"exceptions":[[0,5]]}"#);
        assert_eq!(serde_json::from_str::<Staircase>(&s).unwrap(), z);
    }
}
