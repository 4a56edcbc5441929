//! Named verification suites and their reports.
//!
//! Every suite is deterministic given its seed. A check aggregates many
//! cases and keeps the first failing case as its witness.

use crate::error::{Error, Result};
use crate::fourier::{fiber_inverse, fourier_fiber_dist, fourier_fiber_fn, fourier_rank2_dist, fourier_rank2_fn, reflected_fiber};
use crate::heisenberg::{
    act_ext_dist, act_ext_fn, act_tilde_dist, act_tilde_fn, ext_to_quad, half_pred, matmul, quad_to_ext, HeisExt,
    HeisQuad,
};
use crate::oracle::{
    dist_images, dist_shell_images, fourier_local, haar_integral, i_map, j_map, layer_diagram_check,
    DistributionKind, FiniteFunction, TruncatedLaurent,
};
use crate::rank1::{RankOneDistribution, RankOneFunction};
use crate::rank2::{pair_raw, pair_rank2, reduce_normal_form, y_generator, BelowMode, RankTwoFunction};
use crate::sample::Sampler;
use crate::scalar::{CyclotomicScalar, Scalar};
use crate::torsor::{
    calcul_closed_form, count_oracle, range_columns, ExplicitSet, MeasureElement, Staircase, TorsorElement,
};
use crate::value_group::{BreveElement, GammaElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Suites reachable through `verify`, in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "fourier-involution",
    "pairing-invariance",
    "heisenberg-laws",
    "torsor-oracle",
    "oracle-bridge",
    "equivariance",
    "normal-form",
];

/// Parts of the local-field bridge reachable through `oracle --suite`.
pub const ORACLE_SUITES: &[&str] = &["haar", "fourier", "maps", "distributions", "layer"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Accumulates cases per check name.
#[derive(Default)]
struct Tally {
    checks: BTreeMap<String, Check>,
}

impl Tally {
    fn entry(&mut self, name: &str) -> &mut Check {
        self.checks.entry(name.to_string()).or_insert_with(|| Check {
            name: name.to_string(),
            status: Status::Pass,
            cases: 0,
            witness: None,
        })
    }

    fn record(&mut self, name: &str, outcome: Result<bool>, witness: impl FnOnce() -> Value) {
        let check = self.entry(name);
        check.cases += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(witness()),
            Err(e) => Some(json!({ "error": e.to_string(), "input": witness() })),
        };
        if let Some(w) = failure {
            if check.status != Status::Fail {
                check.status = Status::Fail;
                check.witness = Some(w);
            }
        }
    }

    fn skip(&mut self, name: &str) {
        let check = self.entry(name);
        if check.cases == 0 {
            check.status = Status::Skip;
        }
    }

    fn finish(self, suite: &str) -> Report {
        Report { suite: suite.to_string(), checks: self.checks.into_values().collect() }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or_else(|e| Value::String(e.to_string()))
}

/// Runs one named suite, or every suite for `all`.
pub fn run_suite(name: &str, seed: u64, size: usize) -> Result<Report> {
    match name {
        "fourier-involution" => Ok(fourier_involution(seed, size)),
        "pairing-invariance" => Ok(pairing_invariance(seed, size)),
        "heisenberg-laws" => Ok(heisenberg_laws(seed, size)),
        "torsor-oracle" => Ok(torsor_oracle(seed, size)),
        "oracle-bridge" => oracle_bridge(),
        "equivariance" => Ok(equivariance(seed, size)),
        "normal-form" => Ok(normal_form(seed, size)),
        "all" => {
            let mut checks = Vec::new();
            for suite in SUITES {
                let report = run_suite(suite, seed, size)?;
                checks.extend(report.checks.into_iter().map(|c| Check { name: format!("{suite}/{}", c.name), ..c }));
            }
            Ok(Report { suite: "all".into(), checks })
        }
        other => Err(Error::Invalid(format!("unknown suite '{other}'; expected one of {} or all", SUITES.join(", ")))),
    }
}

fn sample_alpha(s: &mut Sampler) -> BreveElement {
    if s.coin(0.5) {
        BreveElement::column(s.int(-4, 4))
    } else {
        BreveElement::fin(s.int(-4, 4), s.int(-6, 6))
    }
}

/// `F_γ ∘ F_γ = id`, validity of images, conjugacy and the fiber identities.
pub fn fourier_involution(seed: u64, size: usize) -> Report {
    let mut s = Sampler::new(seed);
    let mut t = Tally::default();
    for _ in 0..size {
        let alpha = sample_alpha(&mut s);
        let g = s.gamma(3);
        let q = s.rank2_function(alpha, 5);
        let wq = || json!({ "gamma": to_json(&g), "q": to_json(&q) });
        let fq = fourier_rank2_fn(&q, g);
        t.record("image-valid", fq.as_ref().map_err(Clone::clone).and_then(|f| f.validate().map(|_| true)), wq);
        t.record("function-involution", fq.clone().and_then(|f| fourier_rank2_fn(&f, g)).map(|b| b == q), wq);
        let d = s.rank2_distribution(alpha.perp(g));
        let wd = || json!({ "gamma": to_json(&g), "s": to_json(&d) });
        let fd = fourier_rank2_dist(&d, g);
        t.record("distribution-involution", fd.clone().and_then(|f| fourier_rank2_dist(&f, g)).map(|b| b == d), wd);
        let conj = (|| Ok(pair_rank2(&fq.clone()?, &d)? == pair_rank2(&q, &fd.clone()?)?))();
        t.record("conjugacy", conj, || json!({ "gamma": to_json(&g), "q": to_json(&q), "s": to_json(&d) }));
        let k = s.int(-4, 4);
        let c = s.scalar();
        for eta in [MeasureElement::base(BreveElement::column(k + 1), BreveElement::column(k)), MeasureElement::new(BreveElement::column(k + 1), BreveElement::column(k), c)] {
            let we = || json!({ "gamma": to_json(&g), "eta": to_json(&eta) });
            let source = reflected_fiber(k, g);
            let ok = (|| {
                let back = fiber_inverse(&eta, g)?;
                let one = fourier_fiber_dist(&RankOneDistribution::delta_plus_infinity(source), g, &eta)?;
                let inv = fourier_fiber_dist(&RankOneDistribution::eta(source, back.c.clone()), g, &eta)?;
                Ok(one == RankOneDistribution::eta(k, eta.c.clone()) && inv == RankOneDistribution::delta_plus_infinity(k))
            })();
            t.record("fiber-delta-eta", ok, we);
            let f = s.rank1_function(k);
            let ok = (|| {
                let back = fiber_inverse(&eta, g)?;
                Ok(fourier_fiber_fn(&fourier_fiber_fn(&f, g, &eta)?, g, &back)? == f)
            })();
            t.record("fiber-inversion", ok, we);
        }
    }
    t.finish("fourier-involution")
}

/// `⟨ϖ∘Q, ϖ∘S⟩ = ⟨Q, S⟩` for `ϖ` in both groups.
pub fn pairing_invariance(seed: u64, size: usize) -> Report {
    let mut s = Sampler::new(seed);
    let mut t = Tally::default();
    for _ in 0..size {
        let alpha = sample_alpha(&mut s);
        let q = s.rank2_function(alpha, 5);
        let d = s.rank2_distribution(alpha);
        let base = pair_rank2(&q, &d);
        let g = s.tilde(alpha);
        let ok = (|| Ok(pair_rank2(&act_tilde_fn(&g, &q)?, &act_tilde_dist(&g, &d)?)? == base.clone()?))();
        t.record("tilde", ok, || json!({ "g": to_json(&g), "q": to_json(&q), "s": to_json(&d) }));
        let x = s.ext(alpha);
        let ok = (|| Ok(pair_rank2(&act_ext_fn(&x, &q)?, &act_ext_dist(&x, &d)?)? == base.clone()?))();
        t.record("extended", ok, || json!({ "g": to_json(&x), "q": to_json(&q), "s": to_json(&d) }));
    }
    t.finish("pairing-invariance")
}

/// Group laws of the coordinate model against the abstract groups, and of the actions.
pub fn heisenberg_laws(seed: u64, size: usize) -> Report {
    let mut s = Sampler::new(seed);
    let mut t = Tally::default();
    for _ in 0..size {
        let (x, y, z) = (s.quad(6), s.quad(6), s.quad(6));
        let w = || json!({ "x": to_json(&x), "y": to_json(&y), "z": to_json(&z) });
        let abstract_product = quad_to_ext(&x).mul(&quad_to_ext(&y)).and_then(|p| ext_to_quad(&p));
        t.record("quad-matches-extended", abstract_product.map(|p| p == x.mul(&y)), w);
        let (xt, yt) = (HeisQuad { m: 0, ..x }, HeisQuad { m: 0, ..y });
        let tilde_product = quad_to_ext(&xt).f.mul(&quad_to_ext(&yt).f).and_then(|p| ext_to_quad(&HeisExt::new(p, 0)));
        t.record("quad-matches-tilde", tilde_product.map(|p| p == xt.mul(&yt)), w);
        t.record("matrix-homomorphism", Ok(matmul(&x.matrix(), &y.matrix()) == x.mul(&y).matrix()), w);
        t.record("associativity", Ok(x.mul(&y).mul(&z) == x.mul(&y.mul(&z))), w);
        let e = HeisQuad::identity();
        t.record("inverse", Ok(x.mul(&x.inverse()) == e && x.inverse().mul(&x) == e && x.mul(&e) == x), w);

        let alpha = sample_alpha(&mut s);
        let (g, h) = (s.ext(alpha), s.ext(alpha));
        let m = s.int(-3, 3);
        let wg = || json!({ "g": to_json(&g), "h": to_json(&h), "m": m });
        let ok = (|| Ok(g.f.mul(&h.f)?.c_act(m) == g.f.c_act(m).mul(&h.f.c_act(m))?))();
        t.record("shear-automorphism", ok, wg);
        let ok = (|| Ok(g.mul(&g.inverse())? == HeisExt::identity(alpha)))();
        t.record("extended-inverse", ok, wg);
        let q = s.rank2_function(alpha, 4);
        let d = s.rank2_distribution(alpha);
        let ok = (|| {
            let gh = g.mul(&h)?;
            let on_fn = act_ext_fn(&gh, &q)? == act_ext_fn(&g, &act_ext_fn(&h, &q)?)?;
            let on_dist = act_ext_dist(&gh, &d)? == act_ext_dist(&g, &act_ext_dist(&h, &d)?)?;
            Ok(on_fn && on_dist)
        })();
        t.record("action-homomorphism", ok, || json!({ "g": to_json(&g), "h": to_json(&h), "q": to_json(&q), "s": to_json(&d) }));
    }
    let b5 = -5..=5i64;
    for m in b5.clone() {
        for b in b5.clone() {
            let lhs = HeisQuad::new(0, 0, 0, m).commutator(&HeisQuad::new(0, b, 0, 0));
            let rhs = HeisQuad::new(m * b, 0, -(m * b * (b + 1)) / 2, 0);
            t.record("commutator-shear", Ok(lhs == rhs), || json!({ "m": m, "b": b, "got": to_json(&lhs) }));
        }
    }
    for a in b5.clone() {
        for b in b5.clone() {
            for c in b5.clone() {
                let lhs = HeisQuad::new(a, 0, c, 0).commutator(&HeisQuad::new(0, b, 0, 0));
                t.record("commutator-heisenberg", Ok(lhs == HeisQuad::new(0, 0, a * b, 0)), || {
                    json!({ "a": a, "b": b, "c": c, "got": to_json(&lhs) })
                });
            }
        }
    }
    t.record("half-pred", Ok(b5.clone().all(|x| 2 * half_pred(x) == x * (x - 1))), || json!(null));
    let mut boxed = Vec::new();
    for a in b5.clone() {
        for b in b5.clone() {
            for c in b5.clone() {
                boxed.extend(b5.clone().map(|m| HeisQuad::new(a, b, c, m)));
            }
        }
    }
    let generators = [HeisQuad::new(1, 0, 0, 0), HeisQuad::new(0, 1, 0, 0), HeisQuad::new(0, 0, 1, 0), HeisQuad::new(0, 0, 0, 1)];
    for x in &boxed {
        let commutes_with_box = if x.a == 0 && x.b == 0 && x.m == 0 {
            boxed.iter().all(|y| x.mul(y) == y.mul(x))
        } else {
            generators.iter().all(|y| x.mul(y) == y.mul(x))
        };
        let central_shape = x.a == 0 && x.b == 0 && x.m == 0;
        t.record("center", Ok(commutes_with_box == central_shape), || to_json(x));
    }
    t.finish("heisenberg-laws")
}

fn signed_count(set: &ExplicitSet, x: BreveElement, y: BreveElement) -> Result<i64> {
    if x >= y {
        Ok(-count_oracle(set, x, y)?)
    } else {
        count_oracle(set, y, x)
    }
}

fn box_points() -> Vec<BreveElement> {
    let mut out = Vec::new();
    for n in -2..=2 {
        out.push(BreveElement::column(n));
        for p in -3..=3 {
            out.push(BreveElement::fin(n, p));
        }
    }
    out
}

fn random_set(s: &mut Sampler, z: &Staircase, cols: &[i64]) -> ExplicitSet {
    let mut set = ExplicitSet::from_staircase(z, cols.iter().copied());
    for _ in 0..s.int(0, 3) {
        if let Some(&n) = cols.get(s.int(0, cols.len().max(1) as i64 - 1) as usize) {
            set.toggle(GammaElement::new(n, s.int(-6, 6)));
        }
    }
    set
}

/// Closed-form torsor operations against literal set counting.
pub fn torsor_oracle(seed: u64, size: usize) -> Report {
    let mut s = Sampler::new(seed);
    let mut t = Tally::default();
    let points = box_points();
    let z = s.staircase();
    for &x in &points {
        for &y in &points {
            if x < y {
                continue;
            }
            let cols = range_columns(x, y);
            let set = ExplicitSet::from_staircase(&z, cols.iter().copied());
            let w = || json!({ "upper": to_json(&x), "lower": to_json(&y), "staircase": to_json(&z) });
            t.record("staircase-count", count_oracle(&set, x, y).map(|c| c == z.count_offset(x, y)), w);
            let d = TorsorElement::from_staircase(&z, x, y);
            t.record("staircase-base-point", signed_count(&set, x, y).map(|c| c == d.t), w);
        }
    }
    let z = s.staircase();
    let all_cols: Vec<i64> = (-3..=3).collect();
    let set = random_set(&mut s, &z, &all_cols);
    for &a in &points {
        for &b in &points {
            if a < b {
                continue;
            }
            for &c in &points {
                if b < c {
                    continue;
                }
                let ok = (|| {
                    let h1 = TorsorElement::new(a, b, signed_count(&set, a, b)?);
                    let h2 = TorsorElement::new(b, c, signed_count(&set, b, c)?);
                    Ok(h1.compose(&h2)?.t == signed_count(&set, a, c)? && h1.inverse().t == signed_count(&set, b, a)?)
                })();
                t.record("compose", ok, || json!({ "points": [to_json(&a), to_json(&b), to_json(&c)], "staircase": to_json(&z) }));
            }
        }
    }
    for &a in &points {
        for &c in &points {
            if a < c {
                continue;
            }
            let z = s.staircase();
            let set = random_set(&mut s, &z, &range_columns(a, c));
            let w = || json!({ "upper": to_json(&a), "lower": to_json(&c), "staircase": to_json(&z) });
            let h = match signed_count(&set, a, c) {
                Ok(v) => TorsorElement::new(a, c, v),
                Err(e) => {
                    t.record("set-count", Err(e), w);
                    continue;
                }
            };
            for _ in 0..size.div_ceil(100).max(1) {
                let phi = s.gamma(2);
                let ok = (|| Ok(h.gamma_act(phi).t == signed_count(&set.translate(phi), a.translate(phi), c.translate(phi))?))();
                t.record("gamma-action", ok, || json!({ "phi": to_json(&phi), "case": w() }));
                let g = s.gamma(2);
                let ok = (|| {
                    let (ap, cp) = (a.perp(g), c.perp(g));
                    let dual = set.perp_complement(g, range_columns(ap, cp));
                    Ok(h.perp(g).t == signed_count(&dual, ap, cp)?)
                })();
                t.record("perp", ok, || json!({ "gamma": to_json(&g), "case": w() }));
            }
            for m in -3..=3 {
                let ok = (|| Ok(h.c_act(m).t == signed_count(&set.shear(m), a.shear(m), c.shear(m))?))();
                t.record("shear-action", ok, || json!({ "m": m, "case": w() }));
            }
        }
    }
    for m in -4..=4 {
        for n1 in -5..=5i64 {
            for n2 in -5..=5i64 {
                if (n1 - n2).abs() > 8 || n1 < n2 {
                    continue;
                }
                let (u, l) = (BreveElement::column(n1), BreveElement::column(n2));
                let sheared = ExplicitSet::from_staircase(&Staircase::standard(), range_columns(u, l)).shear(m);
                let ok = (|| {
                    let closed = calcul_closed_form(m, n1, n2);
                    Ok(closed == signed_count(&sheared, u, l)? && closed == TorsorElement::base(u, l).c_act(m).t)
                })();
                t.record("calcul", ok, || json!({ "m": m, "n1": n1, "n2": n2 }));
            }
        }
    }
    t.finish("torsor-oracle")
}

/// `F_γ(g∘X) = ρ(g)∘F_γ(X)` on both spaces.
pub fn equivariance(seed: u64, size: usize) -> Report {
    let mut s = Sampler::new(seed);
    let mut t = Tally::default();
    for _ in 0..size {
        let alpha = sample_alpha(&mut s);
        let g = s.gamma(3);
        let q = s.rank2_function(alpha, 5);
        let d = s.rank2_distribution(alpha);
        let x = s.tilde(alpha);
        let w = || json!({ "gamma": to_json(&g), "g": to_json(&x), "q": to_json(&q), "s": to_json(&d) });
        let ok = (|| Ok(fourier_rank2_fn(&act_tilde_fn(&x, &q)?, g)? == act_tilde_fn(&x.rho(g), &fourier_rank2_fn(&q, g)?)?))();
        t.record("tilde-functions", ok, w);
        let ok = (|| Ok(fourier_rank2_dist(&act_tilde_dist(&x, &d)?, g)? == act_tilde_dist(&x.rho(g), &fourier_rank2_dist(&d, g)?)?))();
        t.record("tilde-distributions", ok, w);
        let gv = GammaElement::new(0, g.p);
        let y = s.ext(alpha);
        let wv = || json!({ "gamma": to_json(&gv), "g": to_json(&y), "q": to_json(&q), "s": to_json(&d) });
        let ok = (|| Ok(fourier_rank2_fn(&act_ext_fn(&y, &q)?, gv)? == act_ext_fn(&y.varrho(gv)?, &fourier_rank2_fn(&q, gv)?)?))();
        t.record("extended-functions", ok, wv);
        let ok = (|| Ok(fourier_rank2_dist(&act_ext_dist(&y, &d)?, gv)? == act_ext_dist(&y.varrho(gv)?, &fourier_rank2_dist(&d, gv)?)?))();
        t.record("extended-distributions", ok, wv);
        let slanted = GammaElement::new(if g.n == 0 { 1 } else { g.n }, g.p);
        t.record("extended-needs-vertical", Ok(matches!(y.varrho(slanted), Err(Error::NotVertical(_)))), wv);
    }
    t.finish("equivariance")
}

/// Reduction modulo the relation subspace, and its orthogonality to functions.
pub fn normal_form(seed: u64, size: usize) -> Report {
    let mut s = Sampler::new(seed);
    let mut t = Tally::default();
    for _ in 0..size {
        let alpha = sample_alpha(&mut s);
        let raw = s.raw_terms(alpha);
        let mut combined = raw.clone();
        let mut gens = Vec::new();
        for _ in 0..s.int(1, 3) {
            let k = s.int(-4, 4);
            let eta = MeasureElement::new(BreveElement::column(k + 2), BreveElement::column(k + 1), s.scalar());
            let lambda = MeasureElement::new(alpha, BreveElement::column(k + 2), s.scalar());
            let coeff = s.scalar();
            match y_generator(alpha, k, &eta, &lambda) {
                Ok(y) => {
                    gens.push(y.clone());
                    combined.extend(y.into_iter().map(|mut r| {
                        r.g = r.g.scale(&coeff);
                        r
                    }));
                }
                Err(e) => t.record("generator-shape", Err(e), || json!(null)),
            }
        }
        let w = || json!({ "alpha": to_json(&alpha), "raw": to_json(&raw), "combined": to_json(&combined) });
        let ok = (|| Ok(reduce_normal_form(alpha, &combined)? == reduce_normal_form(alpha, &raw)?))();
        t.record("reduce-ignores-relations", ok, w);
        let q = s.rank2_function(alpha, 5);
        for y in &gens {
            t.record("generators-pair-to-zero", pair_raw(&q, y).map(|v| v.is_zero()), || json!({ "q": to_json(&q), "y": to_json(y) }));
        }
        let ok = (|| Ok(pair_raw(&q, &raw)? == pair_rank2(&q, &reduce_normal_form(alpha, &raw)?)?))();
        t.record("pairing-respects-reduction", ok, || json!({ "q": to_json(&q), "raw": to_json(&raw) }));
    }
    for m in 1..=3 {
        let rank = nondegeneracy_rank(m);
        t.record("finite-window-nondegeneracy", rank.map(|(r, n)| r == n), || json!({ "m": m }));
    }
    t.finish("normal-form")
}

/// Functions spanning `X_m`: one per slot `k ∈ [0, m)` and height `x ∈ (−m, m]`,
/// with `η`-free slot `δ_{≥x} − r^{−x−m}·δ_{≥−m}` on top of zero lower slots.
pub fn window_basis(m: i64, alpha: BreveElement) -> Result<Vec<RankTwoFunction>> {
    let mut out = Vec::new();
    for k in 0..m {
        for x in (-m + 1)..=m {
            let top = RankOneFunction::delta_geq(k, x)
                .sub(&RankOneFunction::delta_geq(k, -m).scale(&Scalar::r_pow(-x - m)))?;
            let mut slots: Vec<(RankOneFunction, MeasureElement)> = (0..k)
                .map(|j| (RankOneFunction::zero(j), MeasureElement::base(BreveElement::column(j + 1), alpha)))
                .collect();
            slots.push((top, MeasureElement::base(BreveElement::column(k + 1), alpha)));
            out.push(RankTwoFunction::new(alpha, Staircase::standard(), 0, slots, BelowMode::Zero)?);
        }
    }
    Ok(out)
}

/// Rank of the pairing matrix between `window_basis(m)` and the slot spikes
/// on the same index set, with the number of functions.
pub fn nondegeneracy_rank(m: i64) -> Result<(usize, usize)> {
    let alpha = BreveElement::column(0);
    let basis = window_basis(m, alpha)?;
    let dists: Vec<_> = (0..m)
        .flat_map(|k| ((-m + 1)..=m).map(move |x| (k, x)))
        .map(|(k, x)| {
            let raw = vec![crate::rank2::RawTerm {
                k,
                g: RankOneDistribution::spike(k, x, Scalar::one()),
                lambda: MeasureElement::base(alpha, BreveElement::column(k + 1)),
            }];
            reduce_normal_form(alpha, &raw)
        })
        .collect::<Result<_>>()?;
    let mut matrix = Vec::new();
    for q in &basis {
        matrix.push(dists.iter().map(|d| pair_rank2(q, d)).collect::<Result<Vec<_>>>()?);
    }
    Ok((rank(matrix)?, basis.len()))
}

/// Exact rank over `Q(r)` by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> Result<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv()?;
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = &row[c] * &inv;
                for (cell, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *cell = &*cell - &(&factor * p);
                }
            }
        }
        r += 1;
    }
    Ok(r)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn p_pow(p: u32, e: i64) -> BigRational {
    let b = rat(p as i64, 1);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, (-e) as usize).recip()
    }
}

fn cyclo_json(v: &CyclotomicScalar) -> Value {
    json!(v.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

/// The local-field bridge for `p ∈ {2, 3}` and every `M ≤ 3`.
pub fn oracle_bridge() -> Result<Report> {
    let mut checks = Vec::new();
    for p in [2u32, 3] {
        for radius in 1..=3 {
            let report = oracle_report(p, radius, "all")?;
            checks.extend(report.checks.into_iter().map(|c| Check { name: format!("p{p}-M{radius}/{}", c.name), ..c }));
        }
    }
    Ok(Report { suite: "oracle-bridge".into(), checks })
}

/// Runs one part of the local-field bridge, or all of them.
pub fn oracle_report(p: u32, radius: i64, suite: &str) -> Result<Report> {
    if !crate::scalar::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=4).contains(&radius) {
        return Err(Error::WindowOverflow(format!("window radius {radius} outside 1..=4")));
    }
    let mut t = Tally::default();
    let parts: Vec<&str> = if suite == "all" { ORACLE_SUITES.to_vec() } else { vec![suite] };
    for part in parts {
        match part {
            "haar" => oracle_haar(p, radius, &mut t)?,
            "fourier" => oracle_fourier(p, radius, &mut t)?,
            "maps" => oracle_maps(p, radius, &mut t)?,
            "distributions" => oracle_distributions(p, radius, &mut t)?,
            "layer" => oracle_layer(p, radius, &mut t)?,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown oracle suite '{other}'; expected one of {} or all",
                    ORACLE_SUITES.join(", ")
                )))
            }
        }
    }
    Ok(t.finish(&format!("oracle p={p} M={radius}")))
}

fn windows(radius: i64, max_width: i64) -> impl Iterator<Item = (i64, i64)> {
    (-radius..=radius).flat_map(move |n| (n..=(n + max_width).min(radius)).map(move |m| (n, m)))
}

fn oracle_haar(p: u32, radius: i64, t: &mut Tally) -> Result<()> {
    let one = BigRational::one();
    let mut total = CyclotomicScalar::zero(p)?;
    for e in 0..p as i64 {
        total = total.add(&CyclotomicScalar::zeta_pow(p, e)?)?;
    }
    t.record("character-orthogonality", Ok(total.is_zero()), || cyclo_json(&total));
    for (n, m) in windows(radius, 2) {
        for a in n..=m {
            let got = haar_integral(&FiniteFunction::ball(p, radius, n, m, a)?, &one)?;
            t.record("ball-volume", Ok(got.as_rational() == Some(p_pow(p, -a))), || {
                json!({ "n": n, "m": m, "a": a, "got": cyclo_json(&got) })
            });
        }
        if n < m {
            let units = FiniteFunction::ball(p, radius, n, m, n)?.sub(&FiniteFunction::ball(p, radius, n, m, n + 1)?)?;
            let got = haar_integral(&units, &one)?;
            let want = p_pow(p, -n) * (rat(1, 1) - p_pow(p, -1));
            t.record("shell-volume", Ok(got.as_rational() == Some(want)), || json!({ "n": n, "got": cyclo_json(&got) }));
        }
    }
    Ok(())
}

fn oracle_fourier(p: u32, radius: i64, t: &mut Tally) -> Result<()> {
    let wide = radius.max(4);
    for v in -2..=2 {
        for n in -2..=2 {
            let f = FiniteFunction::ball(p, wide, n, n, n)?;
            let want = FiniteFunction::ball(p, wide, -n - v, -n - v, -n - v)?.scale(&p_pow(p, -n));
            let got = fourier_local(&f, v)?;
            t.record("ball-transform", Ok(got == want), || json!({ "n": n, "omega": v }));
        }
    }
    let neg_one = TruncatedLaurent::monomial(p, radius, 0, -1)?;
    for (n, m) in windows(radius, 2) {
        if -m < -radius || -n > radius {
            continue;
        }
        for idx in 0..FiniteFunction::zero(p, radius, n, m)?.len() {
            let f = FiniteFunction::point(p, radius, n, m, idx)?;
            let back = fourier_local(&fourier_local(&f, 0)?, 0)?;
            t.record("double-transform-is-reflection", Ok(back == f.unit_translate(&neg_one)?), || {
                json!({ "n": n, "m": m, "class": idx })
            });
        }
    }
    Ok(())
}

fn oracle_maps(p: u32, radius: i64, t: &mut Tally) -> Result<()> {
    for (n, m) in windows(radius, 2) {
        for a in n..=m {
            let ball = FiniteFunction::ball(p, radius, n, m, a)?;
            let want = RankOneFunction::delta_geq(0, a);
            let w = || json!({ "n": n, "m": m, "a": a });
            t.record("i-of-ball", i_map(&ball, 0).map(|g| g == want), w);
            t.record("j-of-ball", j_map(&ball, 0).map(|g| g == want), w);
        }
        let size = FiniteFunction::zero(p, radius, n, m)?.len();
        for mask in 0..(1usize << (m - n + 1)) {
            let mut f = FiniteFunction::zero(p, radius, n, m)?;
            for a in n..=m {
                if mask >> (a - n) & 1 == 1 {
                    f = f.add(&FiniteFunction::ball(p, radius, n, m, a)?)?;
                }
            }
            let w = || json!({ "n": n, "m": m, "mask": mask });
            t.record("i-equals-j-on-invariants", (|| Ok(i_map(&f, 0)? == j_map(&f, 0)?))(), w);
            if m < radius {
                let ok = (|| Ok(i_map(&f.shift_by_u()?, 0)? == i_map(&f, 0)?.translate(1)))();
                t.record("u-translation-shifts", ok, w);
            }
        }
        for idx in 0..size {
            let f = FiniteFunction::point(p, radius, n, m, idx)?;
            for eps in f.unit_generators()? {
                let ok = (|| {
                    let diff = f.sub(&f.unit_translate(&eps)?)?;
                    Ok(j_map(&diff, 0)?.is_zero())
                })();
                t.record("j-kills-unit-differences", ok, || json!({ "n": n, "m": m, "class": idx }));
            }
        }
    }
    if radius >= 2 {
        let f = FiniteFunction::point(p, radius, 0, 2, 1)?;
        t.record("i-rejects-non-invariant", Ok(matches!(i_map(&f, 0), Err(Error::NotInvariant))), || json!(null));
    } else {
        t.skip("i-rejects-non-invariant");
    }
    Ok(())
}

fn oracle_distributions(p: u32, radius: i64, t: &mut Tally) -> Result<()> {
    let at_p = rat(p as i64, 1);
    let g_r = RankOneDistribution::g_r(0);
    let dirac = RankOneDistribution::delta_plus_infinity(0);
    for (x, a) in dist_images(DistributionKind::DiracAtZero, p, radius)? {
        let want = dirac.eval(x).eval_at(&at_p)?;
        t.record("dirac-diagonal", Ok(a == want && a == BigRational::one()), || json!({ "x": x, "got": a.to_string() }));
    }
    for (x, a) in dist_images(DistributionKind::Haar, p, radius)? {
        let want = g_r.eval(x).eval_at(&at_p)?;
        t.record("haar-diagonal", Ok(a == want), || json!({ "x": x, "got": a.to_string() }));
        t.record("haar-eigenvector", Ok(a == p_pow(p, -x)), || json!({ "x": x }));
    }
    for (y, a) in dist_shell_images(DistributionKind::Haar, p, radius)? {
        let want = (rat(1, 1) - p_pow(p, -1)) * p_pow(p, -y);
        t.record("haar-off-diagonal", Ok(a == want), || json!({ "y": y, "got": a.to_string() }));
    }
    for (y, a) in dist_shell_images(DistributionKind::DiracAtZero, p, radius)? {
        t.record("dirac-off-diagonal", Ok(a == rat(0, 1)), || json!({ "y": y, "got": a.to_string() }));
    }
    Ok(())
}

fn oracle_layer(p: u32, radius: i64, t: &mut Tally) -> Result<()> {
    for k in -2..=2 {
        for g in [GammaElement::new(0, 1), GammaElement::new(1, 0), GammaElement::new(-1, 2), GammaElement::new(2, -1)] {
            let report = layer_diagram_check(k, g, p, radius)?;
            let w = || json!({ "k": k, "gamma": to_json(&g), "failures": report.failures });
            if report.checked == 0 {
                t.skip("layer-diagram");
            } else {
                t.record("layer-diagram", Ok(report.passed()), w);
            }
        }
        let zero = FiniteFunction::zero(p, radius, 0, 0)?;
        let ok = (|| Ok(j_map(&fourier_local(&zero, 0)?, -k)?.is_zero()))();
        t.record("layer-zero", ok, || json!({ "k": k }));
    }
    Ok(())
}
