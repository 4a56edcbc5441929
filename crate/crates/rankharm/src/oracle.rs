//! A finite exact model of the local field `L = F_p((u))`.
//!
//! Elements are truncated Laurent series with exponents in `[−M, M)`.
//! Locally constant functions supported in `m^n` and constant on `m^m`
//! cosets are value tables over `m^n/m^m`; integrals, Fourier transforms
//! with the character `x ↦ ζ_p^x` of `F_p`, and the coinvariant maps
//! to the discrete fiber spaces are all computed by exhaustive summation.

use crate::error::{Error, Result};
use crate::fourier::fourier_fiber_fn;
use crate::rank1::RankOneFunction;
use crate::scalar::{is_prime, CyclotomicScalar, Scalar};
use crate::torsor::MeasureElement;
use crate::value_group::{BreveElement, GammaElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn p_pow(p: u32, e: i64) -> BigRational {
    let base = rat(p as i64);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// An element of `F_p((u))` modulo `u^M`, with exponents from `−M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedLaurent {
    p: u32,
    radius: i64,
    coeffs: Vec<u32>,
}

impl TruncatedLaurent {
    pub fn zero(p: u32, radius: i64) -> Result<Self> {
        check_prime(p)?;
        if radius < 0 {
            return Err(Error::Invalid(format!("negative window radius {radius}")));
        }
        Ok(TruncatedLaurent { p, radius, coeffs: vec![0; 2 * radius as usize] })
    }

    /// `Σ c·u^e` over the given terms; exponents at or above `M` are dropped.
    pub fn from_terms(p: u32, radius: i64, terms: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let mut x = Self::zero(p, radius)?;
        for (e, c) in terms {
            if e >= radius {
                continue;
            }
            if e < -radius {
                return Err(Error::WindowOverflow(format!("exponent {e} below −{radius}")));
            }
            let slot = &mut x.coeffs[(e + radius) as usize];
            *slot = ((*slot as i64 + c).rem_euclid(p as i64)) as u32;
        }
        Ok(x)
    }

    pub fn monomial(p: u32, radius: i64, e: i64, c: i64) -> Result<Self> {
        Self::from_terms(p, radius, [(e, c)])
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn coeff(&self, e: i64) -> u32 {
        if e < -self.radius || e >= self.radius {
            0
        } else {
            self.coeffs[(e + self.radius) as usize]
        }
    }

    fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (i as i64 - self.radius, c))
    }

    /// `ν(x)`, or `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    /// The coefficient of `u^{−1}`.
    pub fn residue(&self) -> u32 {
        self.coeff(-1)
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.p != o.p || self.radius != o.radius {
            return Err(Error::Invalid("operands live in different truncated fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + b) % self.p).collect();
        Ok(TruncatedLaurent { coeffs, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect();
        TruncatedLaurent { coeffs, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Product modulo `u^M`; fails when a surviving term falls below `u^{−M}`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let mut terms = Vec::new();
        for (a, ca) in self.terms() {
            for (b, cb) in o.terms() {
                terms.push((a + b, (ca as i64) * (cb as i64)));
            }
        }
        Self::from_terms(self.p, self.radius, terms)
    }

    /// The class modulo `u^m`.
    pub fn truncate(&self, m: i64) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, &c)| if i as i64 - self.radius >= m { 0 } else { c }).collect();
        TruncatedLaurent { coeffs, ..self.clone() }
    }
}

/// A function on `L` supported in `m^n` and constant on `m^m`-cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunction {
    p: u32,
    radius: i64,
    n: i64,
    m: i64,
    values: Vec<CyclotomicScalar>,
}

impl FiniteFunction {
    /// Values are indexed by `Σ d_i p^i` for the class `Σ d_i u^{n+i}`.
    pub fn new(p: u32, radius: i64, n: i64, m: i64, values: Vec<CyclotomicScalar>) -> Result<Self> {
        check_prime(p)?;
        if !(-radius <= n && n <= m && m <= radius) {
            return Err(Error::WindowOverflow(format!("m^{n}/m^{m} outside the window of radius {radius}")));
        }
        let size = Self::size_of(p, n, m)?;
        if values.len() != size {
            return Err(Error::Invalid(format!("expected {size} values, got {}", values.len())));
        }
        if let Some(v) = values.iter().find(|v| v.prime() != p) {
            return Err(Error::PrimeMismatch(p, v.prime()));
        }
        Ok(FiniteFunction { p, radius, n, m, values })
    }

    fn size_of(p: u32, n: i64, m: i64) -> Result<usize> {
        (p as usize)
            .checked_pow((m - n) as u32)
            .filter(|&s| s <= 1 << 20)
            .ok_or_else(|| Error::WindowOverflow(format!("quotient of size {p}^{}", m - n)))
    }

    pub fn from_fn(
        p: u32,
        radius: i64,
        n: i64,
        m: i64,
        f: impl Fn(&TruncatedLaurent) -> CyclotomicScalar,
    ) -> Result<Self> {
        check_prime(p)?;
        let size = Self::size_of(p, n, m)?;
        let shell = FiniteFunction { p, radius, n, m, values: vec![] };
        let values = (0..size).map(|i| f(&shell.element(i))).collect();
        Self::new(p, radius, n, m, values)
    }

    pub fn zero(p: u32, radius: i64, n: i64, m: i64) -> Result<Self> {
        let z = CyclotomicScalar::zero(p)?;
        Self::from_fn(p, radius, n, m, |_| z.clone())
    }

    /// `δ_{m^a}` viewed on `m^n/m^m`.
    pub fn ball(p: u32, radius: i64, n: i64, m: i64, a: i64) -> Result<Self> {
        if a < n || a > m {
            return Err(Error::Invalid(format!("m^{a} is not a union of classes of m^{n}/m^{m}")));
        }
        let one = CyclotomicScalar::from_rational(p, BigRational::one())?;
        let zero = CyclotomicScalar::zero(p)?;
        Self::from_fn(p, radius, n, m, |x| if x.valuation().is_none_or(|v| v >= a) { one.clone() } else { zero.clone() })
    }

    /// The indicator of one class of `m^n/m^m`.
    pub fn point(p: u32, radius: i64, n: i64, m: i64, index: usize) -> Result<Self> {
        let mut f = Self::zero(p, radius, n, m)?;
        let slot = f.values.get_mut(index).ok_or_else(|| Error::Invalid(format!("class {index} out of range")))?;
        *slot = CyclotomicScalar::from_rational(p, BigRational::one())?;
        Ok(f)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.n, self.m)
    }

    pub fn values(&self) -> &[CyclotomicScalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The representative `Σ d_i u^{n+i}` of class `index`.
    pub fn element(&self, index: usize) -> TruncatedLaurent {
        let mut rest = index;
        let mut terms = Vec::new();
        for e in self.n..self.m {
            terms.push((e, (rest % self.p as usize) as i64));
            rest /= self.p as usize;
        }
        TruncatedLaurent::from_terms(self.p, self.radius, terms).expect("inside the window")
    }

    fn index_of(&self, x: &TruncatedLaurent) -> Option<usize> {
        if x.valuation().is_some_and(|v| v < self.n) {
            return None;
        }
        let mut idx = 0usize;
        for e in (self.n..self.m).rev() {
            idx = idx * self.p as usize + x.coeff(e) as usize;
        }
        Some(idx)
    }

    /// `f(x)`.
    pub fn eval(&self, x: &TruncatedLaurent) -> CyclotomicScalar {
        match self.index_of(x) {
            Some(i) => self.values[i].clone(),
            None => CyclotomicScalar::zero(self.p).expect("prime"),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.sub(&o.scale(&-BigRational::one()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        if (self.p, self.radius, self.n, self.m) != (o.p, o.radius, o.n, o.m) {
            return Err(Error::Invalid("functions live on different quotients".into()));
        }
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Self::new(self.p, self.radius, self.n, self.m, values)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FiniteFunction { values: self.values.iter().map(|v| v.scale(q)).collect(), ..self.clone() }
    }

    /// `x ↦ f(εx)` for a unit `ε`.
    pub fn unit_translate(&self, eps: &TruncatedLaurent) -> Result<Self> {
        if eps.valuation() != Some(0) {
            return Err(Error::Invalid("translation requires a unit".into()));
        }
        let mut values = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let y = eps.mul(&self.element(i))?.truncate(self.m);
            values.push(self.eval(&y));
        }
        Self::new(self.p, self.radius, self.n, self.m, values)
    }

    /// `x ↦ f(u^{−1}x)`, supported in `m^{n+1}`.
    pub fn shift_by_u(&self) -> Result<Self> {
        Self::new(self.p, self.radius, self.n + 1, self.m + 1, self.values.clone())
    }

    /// Generators of the unit group acting on `m^n/m^m`.
    pub fn unit_generators(&self) -> Result<Vec<TruncatedLaurent>> {
        let mut gens = Vec::new();
        for c in 2..self.p as i64 {
            gens.push(TruncatedLaurent::monomial(self.p, self.radius, 0, c)?);
        }
        for i in 1..(self.m - self.n).max(1) {
            gens.push(TruncatedLaurent::from_terms(self.p, self.radius, [(0, 1), (i, 1)])?);
        }
        Ok(gens)
    }

    /// Checks invariance under every unit generator by direct substitution.
    pub fn is_unit_invariant(&self) -> Result<bool> {
        for eps in self.unit_generators()? {
            if self.unit_translate(&eps)? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `∫ f dμ` with `μ(O_L) = mass`.
pub fn haar_integral(f: &FiniteFunction, mass: &BigRational) -> Result<CyclotomicScalar> {
    if f.m - f.n > 2 * f.radius {
        return Err(Error::WindowOverflow(format!("quotient m^{}/m^{} too large", f.n, f.m)));
    }
    let mut total = CyclotomicScalar::zero(f.p)?;
    for v in &f.values {
        total = total.add(v)?;
    }
    Ok(total.scale(&(p_pow(f.p, -f.m) * mass)))
}

/// `res(x·y·u^v)` computed from the coefficients directly.
fn residue_pairing(x: &TruncatedLaurent, y: &TruncatedLaurent, v: i64) -> i64 {
    x.terms().map(|(a, ca)| ca as i64 * y.coeff(-1 - v - a) as i64).sum::<i64>() % x.p as i64
}

/// `F(f)(y) = Σ_x f(x)·ψ(−res(x·y·u^v))·μ(m^m)`, with `μ(O_L) = 1`.
pub fn fourier_local(f: &FiniteFunction, omega_val: i64) -> Result<FiniteFunction> {
    let (n2, m2) = (-f.m - omega_val, -f.n - omega_val);
    if n2 < -f.radius || m2 > f.radius {
        return Err(Error::WindowOverflow(format!("dual support m^{n2}/m^{m2} leaves the window")));
    }
    let mass = p_pow(f.p, -f.m);
    let shell = FiniteFunction { p: f.p, radius: f.radius, n: n2, m: m2, values: vec![] };
    let size = FiniteFunction::size_of(f.p, n2, m2)?;
    let xs: Vec<TruncatedLaurent> = (0..f.len()).map(|i| f.element(i)).collect();
    let mut values = Vec::with_capacity(size);
    for j in 0..size {
        let y = shell.element(j);
        let mut acc = CyclotomicScalar::zero(f.p)?;
        for (x, fx) in xs.iter().zip(&f.values) {
            if fx.is_zero() {
                continue;
            }
            let res = residue_pairing(x, &y, omega_val);
            acc = acc.add(&fx.mul(&CyclotomicScalar::zeta_pow(f.p, -res)?)?)?;
        }
        values.push(acc.scale(&mass));
    }
    FiniteFunction::new(f.p, f.radius, n2, m2, values)
}

fn rational_value(v: &CyclotomicScalar) -> Result<Scalar> {
    v.as_rational()
        .map(|q| Scalar::from_rational(&q))
        .ok_or_else(|| Error::Invalid("value is not rational".into()))
}

fn step_function(f: &FiniteFunction, k: i64, level: impl Fn(i64) -> Result<Scalar>) -> Result<RankOneFunction> {
    let values = (f.n..f.m).map(&level).collect::<Result<Vec<_>>>()?;
    let tail = rational_value(&f.eval(&TruncatedLaurent::zero(f.p, f.radius)?))?;
    Ok(RankOneFunction::new(k, f.n, values, tail))
}

/// `i(f): n ↦ f(uⁿ)` for a unit-invariant `f`, placed on fiber `k`.
pub fn i_map(f: &FiniteFunction, k: i64) -> Result<RankOneFunction> {
    if !f.is_unit_invariant()? {
        return Err(Error::NotInvariant);
    }
    step_function(f, k, |e| rational_value(&f.eval(&TruncatedLaurent::monomial(f.p, f.radius, e, 1)?)))
}

/// `j(f): n ↦` the mean of `f` over `u^n·O_L^*`, placed on fiber `k`.
pub fn j_map(f: &FiniteFunction, k: i64) -> Result<RankOneFunction> {
    let mut sums: Vec<CyclotomicScalar> = vec![CyclotomicScalar::zero(f.p)?; (f.m - f.n) as usize];
    let mut counts = vec![0i64; (f.m - f.n) as usize];
    for (i, v) in f.values.iter().enumerate() {
        if let Some(e) = f.element(i).valuation() {
            let slot = (e - f.n) as usize;
            sums[slot] = sums[slot].add(v)?;
            counts[slot] += 1;
        }
    }
    step_function(f, k, |e| {
        let slot = (e - f.n) as usize;
        rational_value(&sums[slot].scale(&rat(counts[slot]).recip()))
    })
}

/// The sequence `x ↦ D(δ_{m^x})` for the Dirac mass at 0 or for Haar measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionKind {
    DiracAtZero,
    Haar,
}

/// Diagonal values `a_x` for `x ∈ [−M, M]` of the discrete image of a distribution on `L`.
pub fn dist_images(kind: DistributionKind, p: u32, radius: i64) -> Result<Vec<(i64, BigRational)>> {
    let mut out = Vec::new();
    for x in -radius..=radius {
        let ball = FiniteFunction::ball(p, radius, x, x, x)?;
        let v = match kind {
            DistributionKind::DiracAtZero => ball.eval(&TruncatedLaurent::zero(p, radius)?),
            DistributionKind::Haar => haar_integral(&ball, &BigRational::one())?,
        };
        out.push((x, v.as_rational().expect("rational")));
    }
    Ok(out)
}

/// Off-diagonal values `a_{x,x+1} = D(δ_{u^x O^*})` for `x ∈ [−M, M)`.
pub fn dist_shell_images(kind: DistributionKind, p: u32, radius: i64) -> Result<Vec<(i64, BigRational)>> {
    let mut out = Vec::new();
    for x in -radius..radius {
        let shell = FiniteFunction::ball(p, radius, x, x + 1, x)?.sub(&FiniteFunction::ball(p, radius, x, x + 1, x + 1)?)?;
        let v = match kind {
            DistributionKind::DiracAtZero => shell.eval(&TruncatedLaurent::zero(p, radius)?),
            DistributionKind::Haar => haar_integral(&shell, &BigRational::one())?,
        };
        out.push((x, v.as_rational().expect("rational")));
    }
    Ok(out)
}

/// Evaluates every value of a discrete function at `r = q`.
pub fn specialize(f: &RankOneFunction, q: i64) -> Result<RankOneFunction> {
    let at = rat(q);
    let ev = |s: &Scalar| s.eval_at(&at).map(|v| Scalar::from_rational(&v));
    let values = f.values().iter().map(ev).collect::<Result<Vec<_>>>()?;
    Ok(RankOneFunction::new(f.k(), f.base(), values, ev(f.tail())?))
}

/// Outcome of the layer diagram comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayerReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl LayerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `j ∘ F_local` with `F_η ∘ j` at `r = p` on every class indicator
/// of every quotient `m^n/m^m` with `m − n ≤ 2` whose dual fits the window.
pub fn layer_diagram_check(k: i64, gamma: GammaElement, p: u32, radius: i64) -> Result<LayerReport> {
    check_prime(p)?;
    let v = gamma.p - 1;
    let eta = MeasureElement::base(BreveElement::column(k + 1), BreveElement::column(k));
    let target = -k - gamma.n;
    let mut report = LayerReport::default();
    for n in -radius..=radius {
        for m in n..=(n + 2).min(radius) {
            if -m - v < -radius || -n - v > radius {
                continue;
            }
            let size = FiniteFunction::size_of(p, n, m)?;
            for idx in 0..size {
                let f = FiniteFunction::point(p, radius, n, m, idx)?;
                let left = j_map(&fourier_local(&f, v)?, target)?;
                let right = specialize(&fourier_fiber_fn(&j_map(&f, k)?, gamma, &eta)?, p as i64)?;
                report.checked += 1;
                if left != right {
                    report.failures.push(format!("class {idx} of m^{n}/m^{m}"));
                }
            }
        }
    }
    Ok(report)
}
