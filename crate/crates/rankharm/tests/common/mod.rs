//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls the closed forms it is used to check.
#![allow(dead_code)]

use rankharm::rank1::{RankOneDistribution, RankOneFunction};
use rankharm::scalar::Scalar;
use rankharm::value_group::{BreveElement, Fiber};
use std::cmp::Ordering;

/// Heights scanned per column; every set in the tests agrees with `{p ≥ 0}`
/// or with a staircase of small height outside this band.
pub const BAND: i64 = 80;

/// Lexicographic order on Γ̆ with `−∞` below every height.
pub fn cmp_point(n: i64, p: Option<i64>, x: BreveElement) -> Ordering {
    n.cmp(&x.n).then_with(|| match (p, x.fiber) {
        (None, Fiber::NegInf) => Ordering::Equal,
        (None, Fiber::Fin(_)) => Ordering::Less,
        (Some(_), Fiber::NegInf) => Ordering::Greater,
        (Some(a), Fiber::Fin(b)) => a.cmp(&b),
    })
}

/// `upper > (n, p) ≥ lower`.
pub fn in_range(n: i64, p: i64, upper: BreveElement, lower: BreveElement) -> bool {
    cmp_point(n, Some(p), upper) == Ordering::Less && cmp_point(n, Some(p), lower) != Ordering::Less
}

/// Signed count of `A` against `{p ≥ 0}` inside `R_{upper, lower}`, scanning the band.
pub fn brute_count(member: impl Fn(i64, i64) -> bool, upper: BreveElement, lower: BreveElement) -> i64 {
    let mut total = 0;
    for n in lower.n..=upper.n {
        for p in -BAND..=BAND {
            if !in_range(n, p, upper, lower) {
                continue;
            }
            match (member(n, p), p >= 0) {
                (true, false) => total += 1,
                (false, true) => total -= 1,
                _ => {}
            }
        }
    }
    total
}

/// The coordinate `t` of the element of `[x, y]` cut out by `A`, for either order of `x`, `y`.
pub fn brute_coordinate(member: impl Fn(i64, i64) -> bool, x: BreveElement, y: BreveElement) -> i64 {
    if x >= y {
        -brute_count(member, x, y)
    } else {
        brute_count(member, y, x)
    }
}

pub fn points(cols: std::ops::RangeInclusive<i64>, heights: std::ops::RangeInclusive<i64>) -> Vec<BreveElement> {
    let mut out = Vec::new();
    for n in cols {
        out.push(BreveElement::column(n));
        for p in heights.clone() {
            out.push(BreveElement::fin(n, p));
        }
    }
    out
}

/// `⟨f, a⟩ = Σ_x (f(x) − f(x−1))·a_x`, scanning past both ends of the window.
pub fn brute_pair(f: &RankOneFunction, a: &RankOneDistribution) -> Scalar {
    let lo = f.base() - 2;
    let hi = f.base() + f.values().len() as i64 + 2;
    (lo..=hi).map(|x| &(&f.eval(x) - &f.eval(x - 1)) * &a.eval(x)).sum()
}

/// Residue of `x·y·u^v` for coefficient lists `(exponent, coefficient)` modulo `p`.
pub fn brute_residue(x: &[(i64, i64)], y: &[(i64, i64)], v: i64, p: i64) -> i64 {
    let mut total = 0;
    for &(a, ca) in x {
        for &(b, cb) in y {
            if a + b + v == -1 {
                total += ca * cb;
            }
        }
    }
    total.rem_euclid(p)
}

pub fn mat4_mul(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                out[i][j] += x[i][l] * y[l][j];
            }
        }
    }
    out
}

/// Rank of a matrix over Q(r) by fraction-free row reduction.
pub fn scalar_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (cell, p) in row.iter_mut().zip(&pivot_row) {
                *cell = &(&*cell * &pivot_row[c]) - &(p * &b);
            }
        }
        rank += 1;
    }
    rank
}
