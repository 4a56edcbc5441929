//! Fourier transforms on a fiber and on the rank-two spaces.
//!
//! On a fiber the transform sends `δ_{≥x}` to `η(x)·δ_{≥x^⊥}` with the
//! reflected height `x^⊥ = −x − γ₂ + 1`; fiber `k` lands on fiber `−k − γ₁`.
//! The rank-two transform applies this slot by slot and moves each measure
//! through the involution on measure lines.

use crate::error::{Error, Result};
use crate::rank1::{RankOneDistribution, RankOneFunction};
use crate::rank2::{BelowMode, RankTwoDistribution, RankTwoFunction};
use crate::scalar::Scalar;
use crate::torsor::{perp_shift, MeasureElement};
use crate::value_group::{BreveElement, GammaElement};

fn col(n: i64) -> BreveElement {
    BreveElement::column(n)
}

/// Fiber receiving the transform of fiber `k`.
pub fn reflected_fiber(k: i64, gamma: GammaElement) -> i64 {
    -k - gamma.n
}

/// Height receiving `x` under the fiber reflection.
pub fn reflected_height(x: i64, gamma: GammaElement) -> i64 {
    -x - gamma.p + 1
}

fn check_eta(eta: &MeasureElement, k: i64) -> Result<()> {
    if eta.alpha != col(k + 1) || eta.beta != col(k) {
        return Err(Error::EndpointMismatch(format!(
            "η must lie in μ({}, {}), got μ({}, {})",
            col(k + 1),
            col(k),
            eta.alpha,
            eta.beta
        )));
    }
    if eta.is_zero() {
        return Err(Error::ZeroMeasure);
    }
    Ok(())
}

/// `F_η` on `D₊` of fiber `k`, with `η ∈ μ_r((k+1,−∞), (k,−∞))`.
pub fn fourier_fiber_fn(f: &RankOneFunction, gamma: GammaElement, eta: &MeasureElement) -> Result<RankOneFunction> {
    check_eta(eta, f.k())?;
    let target = reflected_fiber(f.k(), gamma);
    let mut coeffs = Vec::new();
    for (x, c) in f.coefficients() {
        coeffs.push((reflected_height(x, gamma), &c * &eta.fiber_value(x)?));
    }
    Ok(RankOneFunction::from_coefficients(target, coeffs))
}

/// `F_η` on `D′₊`, landing on fiber `k` of `η ∈ μ_r((k+1,−∞), (k,−∞))`.
pub fn fourier_fiber_dist(a: &RankOneDistribution, gamma: GammaElement, eta: &MeasureElement) -> Result<RankOneDistribution> {
    let k = eta.beta.n;
    check_eta(eta, k)?;
    let source = reflected_fiber(k, gamma);
    if a.k() != source {
        return Err(Error::FiberMismatch(a.k(), source));
    }
    Ok(a.reflect(1 - gamma.p).twist(&Scalar::r_pow(-1))?.scale(&eta.c).with_fiber(k))
}

/// The measure on the reflected fiber that inverts `F_η`.
pub fn fiber_inverse(eta: &MeasureElement, gamma: GammaElement) -> Result<MeasureElement> {
    Ok(eta.inverse()?.perp(gamma))
}

/// `F_γ` on `D₊,α,r(Γ)`, landing in `D₊,α^⊥,r(Γ)`.
pub fn fourier_rank2_fn(q: &RankTwoFunction, gamma: GammaElement) -> Result<RankTwoFunction> {
    let alpha = q.alpha();
    let eta_for = |k: i64| MeasureElement::base(col(k + 1), col(k));
    let mut slots = Vec::with_capacity(q.window().len());
    for (i, f) in q.window().iter().enumerate().rev() {
        let k = q.klo() + i as i64;
        let moved = fourier_fiber_fn(f, gamma, &eta_for(k))?;
        let twist = Scalar::r_pow(perp_shift(col(k), alpha, gamma));
        slots.push(moved.scale(&twist));
    }
    let klo = reflected_fiber(q.khi(), gamma);
    Ok(RankTwoFunction::from_canonical(
        alpha.perp(gamma),
        q.staircase().reflect(gamma),
        klo,
        slots,
        BelowMode::Staircase,
    ))
}

/// `F_γ` on `D′₊,β,r(Γ)`, landing in `D′₊,β^⊥,r(Γ)` in normal form.
pub fn fourier_rank2_dist(s: &RankTwoDistribution, gamma: GammaElement) -> Result<RankTwoDistribution> {
    let beta = s.alpha();
    let mut out = Vec::new();
    for (j, g) in s.terms() {
        let k = reflected_fiber(j, gamma);
        let eta = MeasureElement::base(col(k + 1), col(k));
        let twist = Scalar::r_pow(perp_shift(beta, col(j + 1), gamma));
        out.push(fourier_fiber_dist(g, gamma, &eta)?.scale(&twist));
    }
    Ok(RankTwoDistribution::from_canonical(beta.perp(gamma), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::pair_rank2;
    use crate::torsor::Staircase;

    fn eta(k: i64, c: i64) -> MeasureElement {
        MeasureElement::new(col(k + 1), col(k), Scalar::from_int(c))
    }

    #[test]
    fn fiber_examples() {
        let g = GammaElement::new(0, 1);
        for k in -2..=2 {
            for p in -3..=3 {
                let out = fourier_fiber_fn(&RankOneFunction::delta_geq(k, p), g, &eta(k, 1)).unwrap();
                assert_eq!(out, RankOneFunction::delta_geq(-k, -p).scale(&Scalar::r_pow(-p)));
            }
        }
        assert!(fourier_fiber_fn(&RankOneFunction::zero(0), g, &eta(0, 1)).unwrap().is_zero());
        assert_eq!(
            fourier_fiber_fn(&RankOneFunction::delta_geq(0, 0), g, &eta(0, 0)).unwrap_err(),
            Error::ZeroMeasure
        );
    }

    #[test]
    fn fiber_inversion() {
        for g in [GammaElement::new(0, 1), GammaElement::new(2, -1), GammaElement::new(-1, 3)] {
            for c in [1, 5] {
                let e = eta(1, c);
                let back = fiber_inverse(&e, g).unwrap();
                let f = RankOneFunction::from_coefficients(1, [(-2, Scalar::from_int(3)), (4, Scalar::r())]);
                let there = fourier_fiber_fn(&f, g, &e).unwrap();
                assert_eq!(fourier_fiber_fn(&there, g, &back).unwrap(), f);
                let k2 = reflected_fiber(1, g);
                let one = RankOneDistribution::delta_plus_infinity(k2);
                let as_eta = RankOneDistribution::eta(1, Scalar::from_int(c));
                assert_eq!(fourier_fiber_dist(&one, g, &e).unwrap(), as_eta);
                let inv = RankOneDistribution::eta(k2, back.c.clone());
                assert_eq!(fourier_fiber_dist(&inv, g, &e).unwrap(), RankOneDistribution::delta_plus_infinity(1));
            }
        }
    }

    #[test]
    fn rank2_involution_on_delta() {
        let g = GammaElement::new(0, 1);
        let q = RankTwoFunction::delta_staircase(&Staircase::standard(), col(0));
        let fq = fourier_rank2_fn(&q, g).unwrap();
        fq.validate().unwrap();
        assert_eq!(fq.alpha(), col(1));
        assert_eq!(fourier_rank2_fn(&fq, g).unwrap(), q);
    }

    #[test]
    fn delta_gamma_goes_to_reflected_point() {
        for g in [GammaElement::new(0, 1), GammaElement::new(1, -2), GammaElement::new(-2, 0)] {
            for alpha in [col(0), BreveElement::fin(1, 2), BreveElement::fin(-1, -3)] {
                for point in [BreveElement::fin(0, 0), BreveElement::fin(1, -2), BreveElement::fin(-1, 3), col(2)] {
                    let b = MeasureElement::new(alpha, point, Scalar::from_int(2));
                    let s = RankTwoDistribution::delta_gamma(point, &b, alpha).unwrap();
                    let fs = fourier_rank2_dist(&s, g).unwrap();
                    let expect = RankTwoDistribution::delta_gamma(point.perp(g), &b.perp(g), alpha.perp(g)).unwrap();
                    assert_eq!(fs, expect, "γ={g} α={alpha} point={point}");
                    assert_eq!(fourier_rank2_dist(&fs, g).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn conjugacy_on_deltas() {
        let g = GammaElement::new(1, 2);
        let alpha = BreveElement::fin(0, 1);
        let q = RankTwoFunction::delta_staircase(&Staircase::new(1, -1, [(0, 2)]), alpha);
        let target = alpha.perp(g);
        let b = MeasureElement::new(target, BreveElement::fin(-2, 1), Scalar::r());
        let s = RankTwoDistribution::delta_gamma(BreveElement::fin(-2, 1), &b, target).unwrap();
        let lhs = pair_rank2(&fourier_rank2_fn(&q, g).unwrap(), &s).unwrap();
        let rhs = pair_rank2(&q, &fourier_rank2_dist(&s, g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
