mod common;

use common::{brute_coordinate, brute_count, points};
use proptest::prelude::*;
use rankharm::sample::Sampler;
use rankharm::torsor::{calcul_closed_form, gamma_shift, perp_shift, shear_shift, Staircase, TorsorElement};
use rankharm::value_group::{BreveElement, GammaElement};

fn col(n: i64) -> BreveElement {
    BreveElement::column(n)
}

fn staircases() -> Vec<Staircase> {
    let mut s = Sampler::new(11);
    let mut out = vec![Staircase::standard(), Staircase::constant(2), Staircase::new(1, -1, [(0, 3)])];
    out.extend((0..5).map(|_| s.staircase()));
    out
}

#[test]
fn closed_form_counts_match_enumeration() {
    let pts = points(-2..=2, -3..=3);
    for z in staircases() {
        for &x in &pts {
            for &y in &pts {
                if x < y {
                    continue;
                }
                let brute = brute_count(|n, p| p >= z.z(n), x, y);
                assert_eq!(z.count_offset(x, y), brute, "Z={z:?} x={x} y={y}");
                let d = TorsorElement::from_staircase(&z, x, y);
                assert_eq!(d.t, brute_coordinate(|n, p| p >= z.z(n), x, y));
            }
        }
    }
}

#[test]
fn transported_coordinates_match_enumeration() {
    let pts = points(-2..=2, -2..=2);
    let mut s = Sampler::new(5);
    for &x in &pts {
        for &y in &pts {
            let z = s.staircase();
            let member = |n: i64, p: i64| p >= z.z(n);
            let h = TorsorElement::new(x, y, brute_coordinate(member, x, y));
            for phi in [GammaElement::new(0, 2), GammaElement::new(1, -1), GammaElement::new(-2, 3)] {
                let moved = |n: i64, p: i64| member(n - phi.n, p - phi.p);
                let got = h.gamma_act(phi);
                assert_eq!(got.t, brute_coordinate(moved, x.translate(phi), y.translate(phi)), "φ={phi} x={x} y={y}");
                assert_eq!(got.t - h.t, gamma_shift(phi, x, y));
            }
            for m in -3..=3 {
                let moved = |n: i64, p: i64| member(n, p - m * n);
                let got = h.c_act(m);
                assert_eq!(got.t, brute_coordinate(moved, x.shear(m), y.shear(m)), "m={m} x={x} y={y}");
                assert_eq!(got.t - h.t, shear_shift(m, x, y));
            }
            for g in [GammaElement::new(0, 1), GammaElement::new(1, 0), GammaElement::new(-1, 2)] {
                let dual = |n: i64, p: i64| !member(-g.n - n, -g.p - p);
                let got = h.perp(g);
                assert_eq!(got.t, brute_coordinate(dual, x.perp(g), y.perp(g)), "γ={g} x={x} y={y}");
                assert_eq!(got.t - h.t, perp_shift(x, y, g));
            }
        }
    }
}

#[test]
fn shear_closed_form_over_columns() {
    for m in -4..=4 {
        for n2 in -6..=6i64 {
            for n1 in n2..=(n2 + 8) {
                let brute = brute_coordinate(|n, p| p >= m * n, col(n1), col(n2));
                assert_eq!(calcul_closed_form(m, n1, n2), brute, "m={m} n1={n1} n2={n2}");
                assert_eq!(TorsorElement::base(col(n1), col(n2)).c_act(m).t, brute);
            }
        }
    }
}

fn breve() -> impl Strategy<Value = BreveElement> {
    (-4i64..=4, prop::option::of(-6i64..=6)).prop_map(|(n, p)| match p {
        Some(p) => BreveElement::fin(n, p),
        None => col(n),
    })
}

fn staircase() -> impl Strategy<Value = Staircase> {
    (-2i64..=2, -3i64..=3, prop::collection::vec((-4i64..=4, -6i64..=6), 0..3))
        .prop_map(|(a, b, ex)| Staircase::new(a, b, ex))
}

proptest! {
    #[test]
    fn signed_offset_is_antisymmetric(z in staircase(), x in breve(), y in breve()) {
        prop_assert_eq!(z.signed_offset(x, y), -z.signed_offset(y, x));
    }

    #[test]
    fn staircase_elements_compose(z in staircase(), x in breve(), y in breve(), w in breve()) {
        let a = TorsorElement::from_staircase(&z, x, y);
        let b = TorsorElement::from_staircase(&z, y, w);
        prop_assert_eq!(a.compose(&b).unwrap(), TorsorElement::from_staircase(&z, x, w));
    }

    #[test]
    fn actions_respect_composition(x in breve(), y in breve(), w in breve(), t1 in -9i64..9, t2 in -9i64..9,
                                   gn in -3i64..=3, gp in -3i64..=3, m in -3i64..=3) {
        let a = TorsorElement::new(x, y, t1);
        let b = TorsorElement::new(y, w, t2);
        let ab = a.compose(&b).unwrap();
        let phi = GammaElement::new(gn, gp);
        prop_assert_eq!(ab.gamma_act(phi), a.gamma_act(phi).compose(&b.gamma_act(phi)).unwrap());
        prop_assert_eq!(ab.c_act(m), a.c_act(m).compose(&b.c_act(m)).unwrap());
        prop_assert_eq!(ab.perp(phi), a.perp(phi).compose(&b.perp(phi)).unwrap());
        prop_assert_eq!(a.perp(phi).perp(phi), a);
    }

    #[test]
    fn staircase_json_round_trip(z in staircase()) {
        let text = serde_json::to_string(&z).unwrap();
        prop_assert_eq!(serde_json::from_str::<Staircase>(&text).unwrap(), z);
    }
}
