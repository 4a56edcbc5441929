mod common;

use common::mat4_mul;
use rankharm::heisenberg::{act_ext_dist, act_ext_fn, act_tilde_fn, ext_to_quad, quad_to_ext, HeisExt, HeisQuad, HeisTilde};
use rankharm::rank2::pair_rank2;
use rankharm::sample::Sampler;
use rankharm::value_group::BreveElement;

fn rep(q: &HeisQuad) -> [[i64; 4]; 4] {
    let tri = q.b * (q.b - 1) / 2;
    [[1, q.m, q.a, q.c], [0, 1, q.b, tri], [0, 0, 1, q.b], [0, 0, 0, 1]]
}

fn cube(bound: i64) -> Vec<HeisQuad> {
    let r = -bound..=bound;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for m in r.clone() {
                    out.push(HeisQuad::new(a, b, c, m));
                }
            }
        }
    }
    out
}

#[test]
fn product_is_faithful_to_matrices() {
    let elems = cube(2);
    for x in &elems {
        assert_eq!(mat4_mul(&rep(x), &rep(&x.inverse())), rep(&HeisQuad::identity()));
        for y in &elems {
            assert_eq!(rep(&x.mul(y)), mat4_mul(&rep(x), &rep(y)), "x={x:?} y={y:?}");
        }
    }
}

#[test]
fn coordinates_agree_with_the_abstract_group() {
    let elems = cube(1);
    for x in &elems {
        assert_eq!(ext_to_quad(&quad_to_ext(x)).unwrap(), *x);
        for y in &elems {
            let abstract_product = quad_to_ext(x).mul(&quad_to_ext(y)).unwrap();
            assert_eq!(ext_to_quad(&abstract_product).unwrap(), x.mul(y));
        }
    }
}

#[test]
fn commutators_of_generators() {
    for u in -6..=6i64 {
        for v in -6..=6i64 {
            let heis = HeisQuad::new(u, 0, 0, 0).commutator(&HeisQuad::new(0, v, 0, 0));
            assert_eq!(heis, HeisQuad::new(0, 0, u * v, 0));
            let shear = HeisQuad::new(0, 0, 0, u).commutator(&HeisQuad::new(0, v, 0, 0));
            assert_eq!(shear, HeisQuad::new(u * v, 0, -u * v * (v + 1) / 2, 0));
        }
    }
}

#[test]
fn actions_are_homomorphisms_preserving_pairing() {
    let mut s = Sampler::new(41);
    for _ in 0..80 {
        let alpha = s.breve();
        let (g, h) = (s.ext(alpha), s.ext(alpha));
        let q = s.rank2_function(alpha, 4);
        let d = s.rank2_distribution(alpha);
        let gh = g.mul(&h).unwrap();
        assert_eq!(act_ext_fn(&gh, &q).unwrap(), act_ext_fn(&g, &act_ext_fn(&h, &q).unwrap()).unwrap());
        assert_eq!(act_ext_dist(&gh, &d).unwrap(), act_ext_dist(&g, &act_ext_dist(&h, &d).unwrap()).unwrap());
        assert_eq!(act_ext_fn(&HeisExt::identity(alpha), &q).unwrap(), q);
        assert_eq!(act_tilde_fn(&HeisTilde::identity(alpha), &q).unwrap(), q);
        let paired = pair_rank2(&act_ext_fn(&g, &q).unwrap(), &act_ext_dist(&g, &d).unwrap()).unwrap();
        assert_eq!(paired, pair_rank2(&q, &d).unwrap());
    }
}

#[test]
fn actions_reject_other_base_points() {
    let mut s = Sampler::new(42);
    let q = s.rank2_function(BreveElement::column(0), 3);
    assert!(act_ext_fn(&HeisExt::identity(BreveElement::column(1)), &q).is_err());
}
