mod common;

use common::brute_pair;
use proptest::prelude::*;
use rankharm::rank1::{RankOneDistribution, RankOneFunction, Term};
use rankharm::sample::Sampler;
use rankharm::scalar::Scalar;

const PROBE: std::ops::RangeInclusive<i64> = -14..=14;

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn function() -> impl Strategy<Value = RankOneFunction> {
    prop::collection::vec((-6i64..=6, -3i64..=3), 0..4)
        .prop_map(|cs| RankOneFunction::from_coefficients(0, cs.into_iter().map(|(p, c)| (p, int(c)))))
}

fn distribution() -> impl Strategy<Value = RankOneDistribution> {
    any::<u64>().prop_map(|seed| Sampler::new(seed).rank1_distribution(0))
}

#[test]
fn step_functions_evaluate_by_definition() {
    for x in -5..=5 {
        let f = RankOneFunction::delta_geq(0, x);
        for p in PROBE {
            assert_eq!(f.eval(p), int(i64::from(p >= x)));
        }
        assert_eq!(f.delta_infty(), Scalar::one());
    }
}

#[test]
fn geometric_distribution_values() {
    let a = RankOneDistribution::geometric(0, Scalar::r(), int(3)).unwrap();
    for x in PROBE {
        assert_eq!(a.eval(x), &int(3) * &Scalar::r_pow(x));
    }
    let e = RankOneDistribution::eta(0, int(2));
    let f = RankOneFunction::from_coefficients(0, [(1, int(1)), (-2, int(5))]);
    assert_eq!(f.pair(&e).unwrap(), f.eta_value(&int(2)));
    assert_eq!(f.pair(&RankOneDistribution::delta_plus_infinity(0)).unwrap(), f.delta_infty());
}

#[test]
fn pairing_rejects_other_fibers() {
    let f = RankOneFunction::delta_geq(1, 0);
    assert!(f.pair(&RankOneDistribution::zero(2)).is_err());
    assert!(f.add(&RankOneFunction::delta_geq(2, 0)).is_err());
}

proptest! {
    #[test]
    fn function_arithmetic_is_pointwise(f in function(), g in function(), s in -6i64..=6) {
        let sum = f.add(&g).unwrap();
        let diff = f.sub(&g).unwrap();
        let moved = f.translate(s);
        for p in PROBE {
            prop_assert_eq!(sum.eval(p), &f.eval(p) + &g.eval(p));
            prop_assert_eq!(diff.eval(p), &f.eval(p) - &g.eval(p));
            prop_assert_eq!(moved.eval(p), f.eval(p - s));
        }
        prop_assert_eq!(sum.delta_infty(), &f.delta_infty() + &g.delta_infty());
    }

    #[test]
    fn coefficients_rebuild_the_function(f in function()) {
        prop_assert_eq!(RankOneFunction::from_coefficients(0, f.coefficients()), f.clone());
        for (p, c) in f.coefficients() {
            prop_assert_eq!(c, &f.eval(p) - &f.eval(p - 1));
        }
    }

    #[test]
    fn distribution_arithmetic_is_pointwise(a in distribution(), b in distribution(), s in -5i64..=5, c in -5i64..=5) {
        let sum = a.add(&b).unwrap();
        let moved = a.translate(s);
        let mirrored = a.reflect(c);
        let off = a.s_map();
        let twisted = a.twist(&Scalar::r()).unwrap();
        for x in PROBE {
            prop_assert_eq!(sum.eval(x), &a.eval(x) + &b.eval(x));
            prop_assert_eq!(moved.eval(x), a.eval(x - s));
            prop_assert_eq!(mirrored.eval(x), a.eval(c - x));
            prop_assert_eq!(off.eval(x), &a.eval(x) - &a.eval(x + 1));
            prop_assert_eq!(twisted.eval(x), &Scalar::r_pow(x) * &a.eval(x));
        }
    }

    #[test]
    fn pairing_matches_summation(f in function(), a in distribution(), b in distribution()) {
        prop_assert_eq!(f.pair(&a).unwrap(), brute_pair(&f, &a));
        prop_assert_eq!(f.pair(&a.add(&b).unwrap()).unwrap(), &f.pair(&a).unwrap() + &f.pair(&b).unwrap());
    }

    #[test]
    fn pairing_is_translation_invariant(f in function(), a in distribution(), s in -5i64..=5) {
        prop_assert_eq!(f.translate(s).pair(&a.translate(s)).unwrap(), f.pair(&a).unwrap());
    }

    #[test]
    fn json_round_trips(f in function(), a in distribution()) {
        let ft = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<RankOneFunction>(&ft).unwrap(), f);
        let at = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<RankOneDistribution>(&at).unwrap(), a);
    }
}

#[test]
fn tails_merge_equal_ratios() {
    let t = |ratio: Scalar, c: i64| Term { ratio, coeff: int(c) };
    let a = RankOneDistribution::from_parts(0, 0, vec![], vec![], vec![t(Scalar::r(), 2), t(Scalar::r(), -2)]).unwrap();
    assert!(a.is_zero());
}
