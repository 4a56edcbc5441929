use proptest::prelude::*;
use rankharm::fourier::{fiber_inverse, fourier_fiber_dist, fourier_fiber_fn, fourier_rank2_dist, fourier_rank2_fn, reflected_fiber};
use rankharm::rank1::RankOneFunction;
use rankharm::rank2::pair_rank2;
use rankharm::sample::Sampler;
use rankharm::scalar::Scalar;
use rankharm::torsor::MeasureElement;
use rankharm::value_group::{BreveElement, GammaElement};

fn col(n: i64) -> BreveElement {
    BreveElement::column(n)
}

fn eta_line(k: i64, c: Scalar) -> MeasureElement {
    MeasureElement::new(col(k + 1), col(k), c)
}

/// `Σ_x (f(x) − f(x−1))·c·r^{−x}·[p ≥ 1 − x − γ₂]`, summed over a scan window.
fn brute_fiber_transform(f: &RankOneFunction, gamma: GammaElement, c: &Scalar, p: i64) -> Scalar {
    (-30..=30)
        .filter(|x| p >= 1 - x - gamma.p)
        .map(|x| &(&(&f.eval(x) - &f.eval(x - 1)) * c) * &Scalar::r_pow(-x))
        .sum()
}

fn function() -> impl Strategy<Value = RankOneFunction> {
    (-3i64..=3, prop::collection::vec((-6i64..=6, -3i64..=3), 0..4))
        .prop_map(|(k, cs)| RankOneFunction::from_coefficients(k, cs.into_iter().map(|(p, c)| (p, Scalar::from_int(c)))))
}

proptest! {
    #[test]
    fn fiber_transform_matches_summation(f in function(), gn in -3i64..=3, gp in -3i64..=3, c in 1i64..=4) {
        let gamma = GammaElement::new(gn, gp);
        let c = Scalar::from_int(c);
        let image = fourier_fiber_fn(&f, gamma, &eta_line(f.k(), c.clone())).unwrap();
        prop_assert_eq!(image.k(), reflected_fiber(f.k(), gamma));
        for p in -15..=15 {
            prop_assert_eq!(image.eval(p), brute_fiber_transform(&f, gamma, &c, p));
        }
    }

    #[test]
    fn fiber_transform_is_self_adjoint(f in function(), seed in any::<u64>(), gn in -3i64..=3, gp in -3i64..=3) {
        let gamma = GammaElement::new(gn, gp);
        let mut s = Sampler::new(seed);
        let eta = eta_line(f.k(), s.scalar());
        let a = s.rank1_distribution(reflected_fiber(f.k(), gamma));
        let lhs = fourier_fiber_fn(&f, gamma, &eta).unwrap().pair(&a).unwrap();
        let rhs = f.pair(&fourier_fiber_dist(&a, gamma, &eta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = fiber_inverse(&eta, gamma).unwrap();
        let twice = fourier_fiber_fn(&fourier_fiber_fn(&f, gamma, &eta).unwrap(), gamma, &back).unwrap();
        prop_assert_eq!(twice, f);
    }
}

#[test]
fn rank_two_transform_is_an_involution_and_adjoint() {
    let mut s = Sampler::new(31);
    for _ in 0..120 {
        let alpha = s.breve();
        let gamma = s.gamma(3);
        let q = s.rank2_function(alpha, 5);
        let fq = fourier_rank2_fn(&q, gamma).unwrap();
        fq.validate().unwrap();
        assert_eq!(fq.alpha(), alpha.perp(gamma));
        assert_eq!(fourier_rank2_fn(&fq, gamma).unwrap(), q);
        let d = s.rank2_distribution(alpha.perp(gamma));
        let fd = fourier_rank2_dist(&d, gamma).unwrap();
        assert_eq!(fd.alpha(), alpha);
        assert_eq!(fourier_rank2_dist(&fd, gamma).unwrap(), d);
        assert_eq!(pair_rank2(&fq, &d).unwrap(), pair_rank2(&q, &fd).unwrap());
    }
}

#[test]
fn mismatched_measure_lines_are_rejected() {
    let f = RankOneFunction::delta_geq(0, 0);
    let wrong = MeasureElement::new(col(3), col(0), Scalar::one());
    assert!(fourier_fiber_fn(&f, GammaElement::new(0, 0), &wrong).is_err());
    assert!(fourier_fiber_fn(&f, GammaElement::new(0, 0), &eta_line(0, Scalar::zero())).is_err());
}
