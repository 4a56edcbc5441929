//! Functions and distributions on a single Z-fiber.
//!
//! A [`RankOneFunction`] vanishes far below and is eventually constant above,
//! so it is a finite combination of the step functions `δ_{≥x}`. A
//! [`RankOneDistribution`] is recorded through its diagonal values `a_x`,
//! which pair with `δ_{≥x}`; outside a finite window the sequence is a finite
//! sum of geometric progressions on each side.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn pow(ratio: &Scalar, e: i64) -> Scalar {
    ratio.pow(e).expect("ratios are nonzero")
}

/// An element of `D₊(T)` on fiber `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "FunctionRepr", into = "FunctionRepr")]
pub struct RankOneFunction {
    k: i64,
    base: i64,
    values: Vec<Scalar>,
    tail: Scalar,
}

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    k: i64,
    base: i64,
    #[serde(default)]
    values: Vec<Scalar>,
    tail: Scalar,
}

impl From<FunctionRepr> for RankOneFunction {
    fn from(r: FunctionRepr) -> Self {
        RankOneFunction::new(r.k, r.base, r.values, r.tail)
    }
}

impl From<RankOneFunction> for FunctionRepr {
    fn from(f: RankOneFunction) -> Self {
        FunctionRepr { k: f.k, base: f.base, values: f.values, tail: f.tail }
    }
}

impl RankOneFunction {
    /// Builds `f` with `f(p) = 0` for `p < base`, `f(base + i) = values[i]`
    /// and `f(p) = tail` beyond the listed values.
    pub fn new(k: i64, base: i64, values: Vec<Scalar>, tail: Scalar) -> Self {
        let mut f = RankOneFunction { k, base, values, tail };
        f.canonicalize();
        f
    }

    fn canonicalize(&mut self) {
        let lead = self.values.iter().take_while(|v| v.is_zero()).count();
        self.values.drain(..lead);
        self.base += lead as i64;
        while self.values.last().is_some_and(|v| *v == self.tail) {
            self.values.pop();
        }
        if self.values.is_empty() && self.tail.is_zero() {
            self.base = 0;
        }
    }

    pub fn zero(k: i64) -> Self {
        Self::new(k, 0, vec![], Scalar::zero())
    }

    pub fn delta_geq(k: i64, p: i64) -> Self {
        Self::new(k, p, vec![], Scalar::one())
    }

    /// `Σ c_p δ_{≥p}` over a finite coefficient list.
    pub fn from_coefficients(k: i64, coeffs: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut merged: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (p, c) in coeffs {
            let e = merged.entry(p).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        }
        merged.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = merged.first_key_value() else {
            return Self::zero(k);
        };
        let hi = *merged.last_key_value().unwrap().0;
        let mut acc = Scalar::zero();
        let mut values = Vec::with_capacity((hi - lo + 1) as usize);
        for p in lo..=hi {
            if let Some(c) = merged.get(&p) {
                acc = &acc + c;
            }
            values.push(acc.clone());
        }
        Self::new(k, lo, values, acc)
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn tail(&self) -> &Scalar {
        &self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty() && self.tail.is_zero()
    }

    pub fn eval(&self, p: i64) -> Scalar {
        if self.is_zero() || p < self.base {
            return Scalar::zero();
        }
        let i = (p - self.base) as usize;
        self.values.get(i).cloned().unwrap_or_else(|| self.tail.clone())
    }

    /// The nonzero coefficients `c_p = f(p) − f(p − 1)`.
    pub fn coefficients(&self) -> Vec<(i64, Scalar)> {
        let mut out = Vec::new();
        let mut prev = Scalar::zero();
        let count = self.values.len() as i64 + if self.is_zero() { 0 } else { 1 };
        for i in 0..count {
            let p = self.base + i;
            let v = self.eval(p);
            let c = &v - &prev;
            if !c.is_zero() {
                out.push((p, c));
            }
            prev = v;
        }
        out
    }

    /// The functional `δ₊∞`, i.e. the eventual value.
    pub fn delta_infty(&self) -> Scalar {
        self.tail.clone()
    }

    /// Pairing with the geometric distribution `x ↦ c·r^{−x}`.
    pub fn eta_value(&self, c: &Scalar) -> Scalar {
        let s: Scalar = self.coefficients().into_iter().map(|(p, cp)| &cp * &Scalar::r_pow(-p)).sum();
        &s * c
    }

    pub fn translate(&self, s: i64) -> Self {
        Self::new(self.k, self.base + s, self.values.clone(), self.tail.clone())
    }

    pub fn with_fiber(&self, k: i64) -> Self {
        RankOneFunction { k, ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.k, self.base, self.values.iter().map(|v| v * s).collect(), &self.tail * s)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::FiberMismatch(self.k, o.k));
        }
        let mut coeffs = self.coefficients();
        coeffs.extend(o.coefficients());
        Ok(Self::from_coefficients(self.k, coeffs))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn pair(&self, a: &RankOneDistribution) -> Result<Scalar> {
        if self.k != a.k {
            return Err(Error::FiberMismatch(self.k, a.k));
        }
        Ok(self.coefficients().into_iter().map(|(p, c)| &c * &a.eval(p)).sum())
    }
}

/// One geometric progression `x ↦ coeff · ratio^x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[Scalar; 2]", into = "[Scalar; 2]")]
pub struct Term {
    pub ratio: Scalar,
    pub coeff: Scalar,
}

impl From<[Scalar; 2]> for Term {
    fn from([ratio, coeff]: [Scalar; 2]) -> Self {
        Term { ratio, coeff }
    }
}

impl From<Term> for [Scalar; 2] {
    fn from(t: Term) -> Self {
        [t.ratio, t.coeff]
    }
}

fn merge_terms(terms: impl IntoIterator<Item = Term>) -> Result<Vec<Term>> {
    let mut merged: BTreeMap<Scalar, Scalar> = BTreeMap::new();
    for t in terms {
        if t.coeff.is_zero() {
            continue;
        }
        if t.ratio.is_zero() {
            return Err(Error::Invalid("geometric ratio must be nonzero".into()));
        }
        let e = merged.entry(t.ratio).or_insert_with(Scalar::zero);
        *e = &*e + &t.coeff;
    }
    Ok(merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(ratio, coeff)| Term { ratio, coeff })
        .collect())
}

fn sum_terms(terms: &[Term], x: i64) -> Scalar {
    terms.iter().map(|t| &t.coeff * &pow(&t.ratio, x)).sum()
}

/// An element of `D′₊(T)` on fiber `k`, given by its diagonal values.
#[derive(Clone, Debug, Serialize)]
pub struct RankOneDistribution {
    k: i64,
    start: i64,
    middle: Vec<Scalar>,
    lower: Vec<Term>,
    upper: Vec<Term>,
}

impl PartialEq for RankOneDistribution {
    fn eq(&self, o: &Self) -> bool {
        if self.k != o.k || self.lower != o.lower || self.upper != o.upper {
            return false;
        }
        let lo = self.start.min(o.start);
        let hi = self.end().max(o.end());
        (lo..hi).all(|x| self.eval(x) == o.eval(x))
    }
}

impl Eq for RankOneDistribution {}

#[derive(Deserialize)]
#[serde(untagged)]
enum DistributionRepr {
    Terms {
        k: i64,
        start: i64,
        #[serde(default)]
        middle: Vec<Scalar>,
        #[serde(default)]
        lower: Vec<Term>,
        #[serde(default)]
        upper: Vec<Term>,
    },
    Geometric {
        k: i64,
        xlo: i64,
        clo: Scalar,
        rlo: Scalar,
        #[serde(default)]
        middle: Vec<Scalar>,
        xhi: i64,
        chi: Scalar,
        rhi: Scalar,
    },
}

impl<'de> Deserialize<'de> for RankOneDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let built = match DistributionRepr::deserialize(d)? {
            DistributionRepr::Terms { k, start, middle, lower, upper } => {
                RankOneDistribution::from_parts(k, start, middle, lower, upper)
            }
            DistributionRepr::Geometric { k, xlo, clo, rlo, middle, xhi, chi, rhi } => {
                RankOneDistribution::bi_geometric(k, xlo, clo, rlo, middle, xhi, chi, rhi)
            }
        };
        built.map_err(D::Error::custom)
    }
}

impl RankOneDistribution {
    /// Values `a_x` from `lower` for `x < start`, from `middle` on the window
    /// and from `upper` afterwards.
    pub fn from_parts(k: i64, start: i64, middle: Vec<Scalar>, lower: Vec<Term>, upper: Vec<Term>) -> Result<Self> {
        let mut d = RankOneDistribution { k, start, middle, lower: merge_terms(lower)?, upper: merge_terms(upper)? };
        d.trim();
        Ok(d)
    }

    /// The form `a_x = clo·rlo^{xlo−x}` for `x ≤ xlo`, explicit values strictly
    /// between `xlo` and `xhi`, and `a_x = chi·rhi^{x−xhi}` for `x ≥ xhi`.
    #[allow(clippy::too_many_arguments)]
    pub fn bi_geometric(
        k: i64,
        xlo: i64,
        clo: Scalar,
        rlo: Scalar,
        middle: Vec<Scalar>,
        xhi: i64,
        chi: Scalar,
        rhi: Scalar,
    ) -> Result<Self> {
        if xhi - xlo - 1 != middle.len() as i64 {
            return Err(Error::Invalid(format!(
                "middle has {} values but ({xlo}, {xhi}) holds {}",
                middle.len(),
                xhi - xlo - 1
            )));
        }
        let mut lower = vec![];
        if !clo.is_zero() {
            lower.push(Term { ratio: rlo.inv()?, coeff: &clo * &rlo.pow(xlo)? });
        }
        let mut upper = vec![];
        if !chi.is_zero() {
            upper.push(Term { ratio: rhi.clone(), coeff: &chi * &rhi.pow(-xhi)? });
        }
        Self::from_parts(k, xlo + 1, middle, lower, upper)
    }

    fn trim(&mut self) {
        let lead = self
            .middle
            .iter()
            .enumerate()
            .take_while(|(i, v)| **v == sum_terms(&self.lower, self.start + *i as i64))
            .count();
        self.middle.drain(..lead);
        self.start += lead as i64;
        while let Some(v) = self.middle.last() {
            if *v == sum_terms(&self.upper, self.end() - 1) {
                self.middle.pop();
            } else {
                break;
            }
        }
    }

    fn end(&self) -> i64 {
        self.start + self.middle.len() as i64
    }

    pub fn zero(k: i64) -> Self {
        RankOneDistribution { k, start: 0, middle: vec![], lower: vec![], upper: vec![] }
    }

    /// A single geometric progression `x ↦ coeff · ratio^x` on all of Z.
    pub fn geometric(k: i64, ratio: Scalar, coeff: Scalar) -> Result<Self> {
        let t = Term { ratio, coeff };
        Self::from_parts(k, 0, vec![], vec![t.clone()], vec![t])
    }

    /// `δ₊∞`: every diagonal value equals 1.
    pub fn delta_plus_infinity(k: i64) -> Self {
        Self::geometric(k, Scalar::one(), Scalar::one()).expect("valid")
    }

    /// `g_r`: `a_x = r^{−x}`.
    pub fn g_r(k: i64) -> Self {
        Self::eta(k, Scalar::one())
    }

    /// The embedding of `c·η` for the canonical `η`: `a_x = c·r^{−x}`.
    pub fn eta(k: i64, c: Scalar) -> Self {
        Self::geometric(k, Scalar::r_pow(-1), c).expect("valid")
    }

    /// The distribution with `a_x = v` at one point and 0 elsewhere.
    pub fn spike(k: i64, x: i64, v: Scalar) -> Self {
        Self::from_parts(k, x, vec![v], vec![], vec![]).expect("valid")
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn middle(&self) -> &[Scalar] {
        &self.middle
    }

    pub fn lower(&self) -> &[Term] {
        &self.lower
    }

    pub fn upper(&self) -> &[Term] {
        &self.upper
    }

    pub fn is_zero(&self) -> bool {
        self.middle.is_empty() && self.lower.is_empty() && self.upper.is_empty()
    }

    pub fn eval(&self, x: i64) -> Scalar {
        if x < self.start {
            sum_terms(&self.lower, x)
        } else if x < self.end() {
            self.middle[(x - self.start) as usize].clone()
        } else {
            sum_terms(&self.upper, x)
        }
    }

    /// Coefficient of the constant progression in the upper tail.
    pub fn delta_plus_infinity_component(&self) -> Scalar {
        self.upper.iter().find(|t| t.ratio.is_one()).map(|t| t.coeff.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn with_fiber(&self, k: i64) -> Self {
        RankOneDistribution { k, ..self.clone() }
    }

    fn map_terms(terms: &[Term], f: impl Fn(&Term) -> Term) -> Vec<Term> {
        terms.iter().map(f).collect()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.k);
        }
        let sc = |t: &Term| Term { ratio: t.ratio.clone(), coeff: &t.coeff * s };
        RankOneDistribution {
            k: self.k,
            start: self.start,
            middle: self.middle.iter().map(|v| v * s).collect(),
            lower: Self::map_terms(&self.lower, sc),
            upper: Self::map_terms(&self.upper, sc),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::FiberMismatch(self.k, o.k));
        }
        let (lo, hi) = (self.start.min(o.start), self.end().max(o.end()));
        let middle = (lo..hi).map(|x| &self.eval(x) + &o.eval(x)).collect();
        Self::from_parts(
            self.k,
            lo,
            middle,
            self.lower.iter().chain(&o.lower).cloned().collect(),
            self.upper.iter().chain(&o.upper).cloned().collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Scalar::one()))
    }

    /// `x ↦ a_{x−s}`.
    pub fn translate(&self, s: i64) -> Self {
        let sh = |t: &Term| Term { ratio: t.ratio.clone(), coeff: &t.coeff * &pow(&t.ratio, -s) };
        RankOneDistribution {
            k: self.k,
            start: self.start + s,
            middle: self.middle.clone(),
            lower: Self::map_terms(&self.lower, sh),
            upper: Self::map_terms(&self.upper, sh),
        }
    }

    /// `x ↦ a_{c−x}`.
    pub fn reflect(&self, c: i64) -> Self {
        let rf = |t: &Term| Term { ratio: t.ratio.inv().expect("nonzero"), coeff: &t.coeff * &pow(&t.ratio, c) };
        let mut middle = self.middle.clone();
        middle.reverse();
        RankOneDistribution {
            k: self.k,
            start: c - self.end() + 1,
            middle,
            lower: merge_terms(Self::map_terms(&self.upper, rf)).expect("valid"),
            upper: merge_terms(Self::map_terms(&self.lower, rf)).expect("valid"),
        }
    }

    /// `x ↦ ρ^x · a_x` for nonzero `ρ`.
    pub fn twist(&self, rho: &Scalar) -> Result<Self> {
        if rho.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let tw = |t: &Term| Term { ratio: &t.ratio * rho, coeff: t.coeff.clone() };
        let middle = self.middle.iter().enumerate().map(|(i, v)| v * &pow(rho, self.start + i as i64)).collect();
        Self::from_parts(self.k, self.start, middle, Self::map_terms(&self.lower, tw), Self::map_terms(&self.upper, tw))
    }

    /// The off-diagonal sequence `x ↦ a_x − a_{x+1}`.
    pub fn s_map(&self) -> Self {
        self.sub(&self.translate(-1)).expect("same fiber")
    }
}
