//! Seeded generators of random elements over bounded windows.
//!
//! Column indices stay within `|k| ≤ 4`, fiber heights within `|p| ≤ 6`,
//! and coefficients are drawn from a small fixed pool of elements of Q(r).

use crate::heisenberg::{HeisExt, HeisQuad, HeisTilde};
use crate::rank1::{RankOneDistribution, RankOneFunction, Term};
use crate::rank2::{eta_of, reduce_normal_form, BelowMode, RankTwoDistribution, RankTwoFunction, RawTerm};
use crate::scalar::Scalar;
use crate::torsor::{MeasureElement, Staircase};
use crate::value_group::{BreveElement, GammaElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic source of random elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

fn pool() -> Vec<Scalar> {
    let r = Scalar::r();
    let one = Scalar::one();
    vec![
        Scalar::from_int(1),
        Scalar::from_int(-1),
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::from_ratio(1, 2).unwrap(),
        r.clone(),
        Scalar::r_pow(-1),
        &one + &r,
        (&r - &one).div(&(&r + &Scalar::from_int(2))).unwrap(),
        &Scalar::from_int(-2) * &Scalar::r_pow(2),
    ]
}

fn ratio_pool() -> Vec<Scalar> {
    vec![
        Scalar::one(),
        Scalar::r(),
        Scalar::r_pow(-1),
        Scalar::r_pow(2),
        Scalar::from_int(2),
        Scalar::from_int(-1),
        &Scalar::one() + &Scalar::r(),
    ]
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn scalar(&mut self) -> Scalar {
        pool().choose(&mut self.rng).unwrap().clone()
    }

    fn ratio(&mut self) -> Scalar {
        ratio_pool().choose(&mut self.rng).unwrap().clone()
    }

    pub fn gamma(&mut self, bound: i64) -> GammaElement {
        GammaElement::new(self.int(-bound, bound), self.int(-bound, bound))
    }

    pub fn breve(&mut self) -> BreveElement {
        let n = self.int(-4, 4);
        if self.coin(0.35) {
            BreveElement::column(n)
        } else {
            BreveElement::fin(n, self.int(-6, 6))
        }
    }

    pub fn staircase(&mut self) -> Staircase {
        let count = self.int(0, 2);
        let exceptions: Vec<(i64, i64)> = (0..count).map(|_| (self.int(-4, 4), self.int(-6, 6))).collect();
        let mut seen = std::collections::BTreeMap::new();
        for (n, z) in exceptions {
            seen.insert(n, z);
        }
        Staircase::new(self.int(-2, 2), self.int(-3, 3), seen)
    }

    pub fn rank1_function(&mut self, k: i64) -> RankOneFunction {
        let count = self.int(1, 3);
        let coeffs: Vec<(i64, Scalar)> = (0..count).map(|_| (self.int(-6, 6), self.scalar())).collect();
        RankOneFunction::from_coefficients(k, coeffs)
    }

    fn function_with_tail(&mut self, k: i64, tail: &Scalar) -> RankOneFunction {
        let g = self.rank1_function(k);
        let fix = tail - &g.delta_infty();
        let x = self.int(-6, 6);
        g.add(&RankOneFunction::delta_geq(k, x).scale(&fix)).unwrap()
    }

    pub fn rank1_distribution(&mut self, k: i64) -> RankOneDistribution {
        let len = self.int(0, 3) as usize;
        let start = self.int(-6, 6);
        let middle = (0..len).map(|_| self.scalar()).collect();
        let mut terms = || {
            let count = self.int(0, 2);
            (0..count).map(|_| Term { ratio: self.ratio(), coeff: self.scalar() }).collect::<Vec<_>>()
        };
        let lower = terms();
        let upper = terms();
        RankOneDistribution::from_parts(k, start, middle, lower, upper).unwrap()
    }

    /// A valid function with window width at most `max_width`.
    pub fn rank2_function(&mut self, alpha: BreveElement, max_width: i64) -> RankTwoFunction {
        let staircase = self.staircase();
        let klo = self.int(-4, 4);
        let width = self.int(1, max_width.max(1));
        let below = if self.coin(0.5) { BelowMode::Zero } else { BelowMode::Staircase };
        let khi = klo + width - 1;
        let mut fs = vec![self.rank1_function(khi)];
        for k in (klo..khi).rev() {
            let tail = eta_of(fs.last().unwrap());
            fs.push(self.function_with_tail(k, &tail));
        }
        fs.reverse();
        if below == BelowMode::Zero {
            let f = &fs[0];
            let p = self.int(-6, 5);
            let q = self.int(p + 1, 6);
            let pair = RankOneFunction::delta_geq(klo, p).sub(&RankOneFunction::delta_geq(klo, q)).unwrap();
            let weight = eta_of(f).div(&eta_of(&pair)).unwrap();
            fs[0] = f.sub(&pair.scale(&weight)).unwrap();
        }
        let slots = fs
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                let k = klo + i as i64;
                let c = self.scalar();
                (f.scale(&c.inv().unwrap()), MeasureElement::new(BreveElement::column(k + 1), alpha, c))
            })
            .collect();
        RankTwoFunction::new(alpha, staircase, klo, slots, below).expect("sampled function is valid")
    }

    /// Raw terms with arbitrary measures, not yet reduced.
    pub fn raw_terms(&mut self, alpha: BreveElement) -> Vec<RawTerm> {
        let count = self.int(1, 3);
        (0..count)
            .map(|_| {
                let k = self.int(-4, 4);
                RawTerm {
                    k,
                    g: self.rank1_distribution(k),
                    lambda: MeasureElement::new(alpha, BreveElement::column(k + 1), self.scalar()),
                }
            })
            .collect()
    }

    pub fn rank2_distribution(&mut self, alpha: BreveElement) -> RankTwoDistribution {
        let raw = self.raw_terms(alpha);
        reduce_normal_form(alpha, &raw).expect("sampled distribution is valid")
    }

    pub fn tilde(&mut self, alpha: BreveElement) -> HeisTilde {
        let beta = self.gamma(3);
        HeisTilde::new(alpha, beta, self.int(-5, 5))
    }

    pub fn ext(&mut self, alpha: BreveElement) -> HeisExt {
        let f = self.tilde(alpha);
        HeisExt::new(f, self.int(-3, 3))
    }

    pub fn quad(&mut self, bound: i64) -> HeisQuad {
        HeisQuad::new(self.int(-bound, bound), self.int(-bound, bound), self.int(-bound, bound), self.int(-bound, bound))
    }
}
