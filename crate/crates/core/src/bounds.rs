//! Upper bounds on the number of `t`-cliques of an `s`-graph whose maximum
//! `i`-degree is at most `Δ`, given the number of vertices, of edges, or of
//! `u`-cliques.
//!
//! Degree bounds of the form `Δ = binom(x - i, s - i)` are parametrised by
//! `x`. When `x` is an integer the bounds are exact rationals; otherwise they
//! are reals and the report says so.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::binomial::{binom, binom_inverse, binom_inverse_exact, binom_real, falling_factorial};
use crate::cascade::{k_colex, lovasz_clique_bound};
use crate::designs::{steiner_divisibility, steiner_system_known};
use crate::error::{ensure, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// `binom(n,i) k_{s-i}^{t-i}(Δ) / binom(t,i)`, fixed number of vertices.
    Vertex,
    /// `m binom(x,t) / binom(x,s)`, fixed number of edges.
    Edge,
    /// `p binom(x,t) / binom(x,u)`, fixed number of `u`-cliques.
    Clique,
    /// The graph case `s = 2`, `i = 1` of the clique bound with `Δ = r - 1`.
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equality {
    Yes,
    No,
    Unknown,
}

/// The degree parameter `x` with `Δ = binom(x - i, s - i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DegreeParam {
    Integer(u64),
    Real(f64),
}

impl DegreeParam {
    pub fn as_f64(self) -> f64 {
        match self {
            DegreeParam::Integer(v) => v as f64,
            DegreeParam::Real(v) => v,
        }
    }

    /// `x` from `Δ = binom(x - i, s - i)`, exact when possible.
    pub fn from_degree(delta: &BigUint, i: u32, s: u32) -> DegreeParam {
        let k = (s - i) as u64;
        match binom_inverse_exact(delta, k) {
            Some(r) => DegreeParam::Integer(r + i as u64),
            None => {
                let d = delta.to_f64().unwrap_or(f64::MAX);
                DegreeParam::Real(i as f64 + binom_inverse(d, s - i))
            }
        }
    }
}

impl fmt::Display for DegreeParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeParam::Integer(v) => write!(f, "{v}"),
            DegreeParam::Real(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for DegreeParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Real(f64),
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => ratio_to_f64(r),
            BoundValue::Real(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            BoundValue::Exact(r) => Some(r),
            BoundValue::Real(_) => None,
        }
    }

    /// Largest integer not exceeding the bound. For real bounds a relative
    /// slack of 1e-9 absorbs rounding, so the floor never undershoots an
    /// integral true value.
    pub fn floor(&self) -> BigUint {
        match self {
            BoundValue::Exact(r) => r.floor().to_integer().to_biguint().unwrap_or_default(),
            BoundValue::Real(v) => {
                let v = v.max(0.0);
                let lifted = v + 1e-9 * v.max(1.0);
                BigUint::from(lifted.floor() as u128)
            }
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{r}"),
            BoundValue::Real(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn is_integral(r: &BigRational) -> bool {
    r.is_integer()
}

/// A computed upper bound on `k^t(H)`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub value: BoundValue,
    #[serde(serialize_with = "crate::binomial::serialize_decimal")]
    pub integer_value: BigUint,
    pub source: BoundSource,
    pub x: DegreeParam,
    pub equality_possible: Equality,
    pub notes: Vec<String>,
    /// Lovász-form value reported alongside the exact vertex bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_form: Option<f64>,
}

impl BoundReport {
    fn new(value: BoundValue, source: BoundSource, x: DegreeParam) -> Self {
        let integer_value = value.floor();
        BoundReport {
            value,
            integer_value,
            source,
            x,
            equality_possible: Equality::Unknown,
            notes: Vec::new(),
            real_form: None,
        }
    }

    fn zero(source: BoundSource, x: DegreeParam, note: impl Into<String>) -> Self {
        let mut r = Self::new(BoundValue::Exact(BigRational::zero()), source, x);
        r.equality_possible = Equality::Yes;
        r.notes.push(note.into());
        r
    }

    /// `true` when a family with `count` cliques respects the bound.
    pub fn admits(&self, count: &BigUint) -> bool {
        count <= &self.integer_value
    }
}

/// Bound for `s`-graphs on `n` vertices with `Δ_i <= delta`.
pub fn vertex_bound(n: u32, i: u32, s: u32, t: u32, delta: &BigUint) -> Result<BoundReport> {
    ensure!(1 <= i && i < s && s <= t, InvalidParameters, "vertex bound needs 1 <= i < s <= t (i={i}, s={s}, t={t})");
    let scale = ratio(binom(n as u64, i as u64), binom(t as u64, i as u64));
    let nbhd = k_colex(delta, s - i, t - i)?;
    let exact = &scale * BigRational::from(BigInt::from(nbhd));
    let x = DegreeParam::from_degree(delta, i, s);

    let lovasz = lovasz_clique_bound(delta, s - i, t - i)?;
    let real_form = ratio_to_f64(&scale) * lovasz;
    let exact_f = ratio_to_f64(&exact);
    if real_form + 1e-9 * real_form.abs().max(1.0) < exact_f {
        return Err(Error::CrossCheck(format!("vertex bound: cascade form {exact_f} exceeds Lovász form {real_form}")));
    }

    let mut report = BoundReport::new(BoundValue::Exact(exact.clone()), BoundSource::Vertex, x);
    report.real_form = Some(real_form);
    if exact.is_zero() {
        report.equality_possible = Equality::Yes;
        report.notes.push("no t-clique fits under this degree bound".into());
    } else if !is_integral(&exact) {
        report.equality_possible = Equality::No;
        report.notes.push("bound is not an integer".into());
    } else if let DegreeParam::Integer(r) = x {
        let div = steiner_divisibility(i, r as u32, n).map(|d| d.holds).unwrap_or(false);
        if n >= r as u32 && steiner_system_known(i, r as u32, n) {
            report.equality_possible = Equality::Yes;
            report.notes.push(format!("attained by the {s}-shadow of a known S({i},{r},{n})"));
        } else if s >= i + 2 && (!div || n < r as u32) {
            report.equality_possible = Equality::No;
            report.notes.push(format!("equality needs an S({i},{r},{n}); divisibility or size rules it out"));
        } else {
            report.notes.push(format!("attained iff the {s}-shadow of an S({i},{r},{n}) exists"));
        }
    } else {
        report.notes.push("degree bound is not binom(r-i, s-i) for integer r".into());
    }
    Ok(report)
}

fn edge_like(
    count: &BigUint,
    i: u32,
    s: u32,
    lower: u32,
    t: u32,
    delta: &BigUint,
    source: BoundSource,
) -> Result<BoundReport> {
    let x = if delta.is_zero() { DegreeParam::Integer((s - 1) as u64) } else { DegreeParam::from_degree(delta, i, s) };
    if delta.is_zero() {
        return Ok(BoundReport::zero(source, x, "Δ = 0: no edges, hence no cliques"));
    }
    if x.as_f64() < lower as f64 {
        let mut r = BoundReport::zero(source, x, format!("x < {lower}: no {lower}-cliques possible"));
        if !count.is_zero() && lower > s {
            r.notes.push("the given clique count is infeasible under this degree bound".into());
        }
        return Ok(r);
    }
    if lower == t {
        let mut r = BoundReport::new(BoundValue::Exact(BigRational::from(BigInt::from(count.clone()))), source, x);
        r.equality_possible = Equality::Yes;
        r.notes.push("t = u: the bound is the clique count itself".into());
        return Ok(r);
    }
    if x.as_f64() < t as f64 {
        return Ok(BoundReport::zero(source, x, "t > x: no t-cliques possible"));
    }
    let mut report = match x {
        DegreeParam::Integer(r) => {
            let v = ratio(count * binom(r, t as u64), binom(r, lower as u64));
            let mut rep = BoundReport::new(BoundValue::Exact(v.clone()), source, x);
            let block = binom(r, lower as u64);
            if v.is_zero() || count.is_multiple_of(&block) {
                rep.equality_possible = Equality::Yes;
                rep.notes.push(format!("attained by {} disjoint copies of K_{r}", count / &block));
            } else if lower > s || s >= i + 2 {
                rep.equality_possible = Equality::No;
                rep.notes.push(format!("equality needs a packing shadow, so binom({r},{lower}) must divide {count}"));
            } else {
                rep.notes.push("s = i + 1: whether non-packing extremal graphs exist is open".into());
            }
            rep
        }
        DegreeParam::Real(xr) => {
            let v = count.to_f64().unwrap_or(f64::INFINITY) * binom_real(xr, t) / binom_real(xr, lower);
            let mut rep = BoundReport::new(BoundValue::Real(v), source, x);
            rep.notes.push("degree bound is not binom(r-i, s-i) for integer r; tightness unknown".into());
            rep
        }
    };
    if report.value.as_f64() < 0.0 {
        report.value = BoundValue::Real(0.0);
        report.integer_value = BigUint::zero();
    }
    Ok(report)
}

/// Bound for `s`-graphs with `m` edges and `Δ_i <= delta`.
pub fn edge_bound(m: &BigUint, i: u32, s: u32, t: u32, delta: &BigUint) -> Result<BoundReport> {
    ensure!(1 <= i && i < s, InvalidParameters, "edge bound needs 1 <= i < s (i={i}, s={s})");
    ensure!(t > s, InvalidParameters, "edge bound needs t > s (s={s}, t={t})");
    edge_like(m, i, s, s, t, delta, BoundSource::Edge)
}

/// Bound for `s`-graphs with `p` `u`-cliques and `Δ_i <= delta`.
pub fn clique_bound(p: &BigUint, i: u32, s: u32, u: u32, t: u32, delta: &BigUint) -> Result<BoundReport> {
    ensure!(
        1 <= i && i < s && s <= u && u <= t,
        InvalidParameters,
        "clique bound needs 1 <= i < s <= u <= t (i={i}, s={s}, u={u}, t={t})"
    );
    if u == s && t > s {
        let mut r = edge_bound(p, i, s, t, delta)?;
        r.source = BoundSource::Clique;
        r.notes.push("u = s: this is the edge bound".into());
        return Ok(r);
    }
    edge_like(p, i, s, u, t, delta, BoundSource::Clique)
}

/// Graphs (`s = 2`) with `p` `u`-cliques and maximum degree at most `r - 1`.
pub fn graph_clique_bound(p: &BigUint, u: u32, t: u32, r: u32) -> Result<BoundReport> {
    ensure!(3 <= u && u <= t && t <= r, InvalidParameters, "graph bound needs 3 <= u <= t <= r (u={u}, t={t}, r={r})");
    let block = binom(r as u64, u as u64);
    let v = ratio(p * binom(r as u64, t as u64), block.clone());
    let mut rep = BoundReport::new(BoundValue::Exact(v), BoundSource::Graph, DegreeParam::Integer(r as u64));
    if p.is_multiple_of(&block) {
        rep.equality_possible = Equality::Yes;
        rep.notes.push(format!("attained by {} disjoint copies of K_{r}", p / &block));
    } else {
        rep.equality_possible = Equality::No;
        rep.notes.push(format!("binom({r},{u}) does not divide {p}"));
    }
    Ok(rep)
}

/// Per-neighborhood ratio `(x - s)_(t-s) / (t - i)_(t-s)`: for any `i`-set
/// `I` in an edge of an `s`-graph with `Δ_i <= binom(x-i, s-i)`, the
/// neighborhood `J = H(I)` has `k^{t-i}(J) / |J|` at most this value.
pub fn neighborhood_ratio_bound(i: u32, s: u32, t: u32, x: f64) -> Result<f64> {
    ensure!(1 <= i && i < s && s < t, InvalidParameters, "ratio bound needs 1 <= i < s < t");
    if x.is_nan() || x < (t - 1) as f64 {
        return Err(Error::InvalidParameters(format!("ratio bound needs x >= t - 1 (x={x})")));
    }
    Ok(falling_factorial(x - s as f64, t - s) / falling_factorial((t - i) as f64, t - s))
}

/// Exact rational version of [`neighborhood_ratio_bound`].
pub fn neighborhood_ratio_bound_exact(i: u32, s: u32, t: u32, x: &BigRational) -> Result<BigRational> {
    ensure!(1 <= i && i < s && s < t, InvalidParameters, "ratio bound needs 1 <= i < s < t");
    let lower = BigRational::from(BigInt::from(t - 1));
    ensure!(*x >= lower, InvalidParameters, "ratio bound needs x >= t - 1");
    let mut num = BigRational::one();
    let mut den = BigRational::one();
    for j in 0..(t - s) {
        num *= x - BigRational::from(BigInt::from(s + j));
        den *= BigRational::from(BigInt::from(t - i - j));
    }
    let v = num / den;
    debug_assert!(!v.is_negative());
    Ok(v)
}

/// All `m <= m_max` at which `k_s^t(m) / m` reaches a running maximum.
pub fn jung_scan(s: u32, t: u32, m_max: u64) -> Result<Vec<u64>> {
    ensure!(1 <= s && s < t, InvalidParameters, "jung scan needs 1 <= s < t");
    ensure!(m_max >= 1, InvalidParameters, "jung scan needs m_max >= 1");
    let mut best = BigRational::zero();
    let mut hits = Vec::new();
    for m in 1..=m_max {
        let k = k_colex(&BigUint::from(m), s, t)?;
        let r = BigRational::new(BigInt::from(k), BigInt::from(m));
        if r >= best {
            best = r;
            hits.push(m);
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn vertex_examples() {
        let r = vertex_bound(13, 2, 3, 4, &big(2)).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(13, 1)));
        assert_eq!(r.x, DegreeParam::Integer(4));
        assert_eq!(r.equality_possible, Equality::Yes);
        let r = vertex_bound(7, 1, 2, 3, &big(2)).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(7, 3)));
        assert_eq!(r.integer_value, big(2));
        assert_eq!(r.equality_possible, Equality::No);
        // Δ below binom(t-i, s-i) leaves no room for a t-clique.
        let r = vertex_bound(20, 1, 3, 5, &big(5)).unwrap();
        assert_eq!(r.integer_value, big(0));
        assert!(vertex_bound(5, 3, 3, 4, &big(1)).is_err());
        assert!(vertex_bound(5, 1, 3, 2, &big(1)).is_err());
    }

    #[test]
    fn vertex_real_form_dominates() {
        for n in 4..12u32 {
            for s in 2..5u32 {
                for i in 1..s {
                    for t in s..8u32 {
                        for d in 0..30u64 {
                            let r = vertex_bound(n, i, s, t, &big(d)).unwrap();
                            assert!(r.real_form.unwrap() + 1e-9 >= r.value.as_f64());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn edge_examples() {
        let r = edge_bound(&big(12), 1, 2, 3, &big(3)).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(8, 1)));
        assert_eq!(r.x, DegreeParam::Integer(4));
        assert_eq!(r.equality_possible, Equality::Yes);
        let r = edge_bound(&big(30), 1, 3, 5, &big(3)).unwrap();
        assert_eq!(r.integer_value, big(0));
        for rr in 4..9u64 {
            for s in 2..rr as u32 {
                for i in 1..s {
                    for t in s + 1..=rr as u32 {
                        let m = binom(rr, s as u64);
                        let d = binom(rr - i as u64, (s - i) as u64);
                        let r = edge_bound(&m, i, s, t, &d).unwrap();
                        assert_eq!(r.value.exact().unwrap(), &BigRational::from(BigInt::from(binom(rr, t as u64))));
                    }
                }
            }
        }
        assert!(edge_bound(&big(3), 1, 2, 2, &big(3)).is_err());
        assert_eq!(edge_bound(&big(3), 1, 3, 4, &big(0)).unwrap().integer_value, big(0));
    }

    #[test]
    fn edge_real_x() {
        // Δ = 7 for s - i = 2 is not a binomial: x - 1 = (1 + sqrt 57)/2.
        let r = edge_bound(&big(21), 1, 3, 4, &big(7)).unwrap();
        let x = 1.0 + (1.0 + 57f64.sqrt()) / 2.0;
        assert!(matches!(r.x, DegreeParam::Real(v) if (v - x).abs() < 1e-9));
        let expect = 21.0 * binom_real(x, 4) / binom_real(x, 3);
        assert!((r.value.as_f64() - expect).abs() < 1e-9);
        assert_eq!(r.equality_possible, Equality::Unknown);
    }

    #[test]
    fn clique_examples() {
        let r = clique_bound(&big(8), 1, 2, 3, 4, &big(3)).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(2, 1)));
        // x = 3 < u = 4.
        let r = clique_bound(&big(0), 1, 2, 4, 5, &big(2)).unwrap();
        assert_eq!(r.integer_value, big(0));
        let r = clique_bound(&big(17), 1, 2, 4, 4, &big(5)).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(17, 1)));
        let e = clique_bound(&big(12), 1, 2, 2, 3, &big(3)).unwrap();
        assert_eq!(e.value, BoundValue::Exact(q(8, 1)));
    }

    #[test]
    fn graph_examples() {
        let r = graph_clique_bound(&big(8), 3, 4, 4).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(2, 1)));
        for rr in 3..9u32 {
            for u in 3..=rr {
                for t in u..=rr {
                    let p = binom(rr as u64, u as u64);
                    let r = graph_clique_bound(&p, u, t, rr).unwrap();
                    assert_eq!(r.integer_value, binom(rr as u64, t as u64));
                }
            }
        }
        let r = graph_clique_bound(&big(7), 3, 4, 4).unwrap();
        assert_eq!(r.value, BoundValue::Exact(q(7, 4)));
        assert_eq!(r.integer_value, big(1));
        assert_eq!(r.equality_possible, Equality::No);
        assert!(graph_clique_bound(&big(7), 2, 4, 4).is_err());
    }

    #[test]
    fn ratio_bound_examples() {
        // K_4, vertex neighborhood K^(1)_3: 3 pairs over 3 singletons.
        assert_eq!(neighborhood_ratio_bound(1, 2, 3, 4.0).unwrap(), 1.0);
        assert_eq!(neighborhood_ratio_bound_exact(1, 2, 3, &q(4, 1)).unwrap(), q(1, 1));
        // Equality case: |J| = binom(x-i, s-i), k = binom(x-i, t-i).
        for (i, s, t, x) in [(1u32, 2u32, 3u32, 6u64), (1, 3, 5, 7), (2, 3, 4, 9), (1, 2, 4, 10)] {
            let v = neighborhood_ratio_bound_exact(i, s, t, &BigRational::from(BigInt::from(x))).unwrap();
            let expect = ratio(binom(x - i as u64, (t - i) as u64), binom(x - i as u64, (s - i) as u64));
            assert_eq!(v, expect);
        }
        let mut prev = -1.0;
        let mut x = 3.0;
        while x < 40.0 {
            let v = neighborhood_ratio_bound(1, 2, 4, x).unwrap();
            assert!(v > prev);
            prev = v;
            x += 0.25;
        }
        assert!(neighborhood_ratio_bound(1, 2, 4, 2.5).is_err());
    }

    #[test]
    fn jung_examples() {
        let hits = jung_scan(2, 3, 3).unwrap();
        assert_eq!(hits, vec![1, 2, 3]);
        let hits = jung_scan(3, 4, 300).unwrap();
        for x in 4..=12u64 {
            let m = binom(x, 3).to_u64().unwrap();
            if m <= 300 {
                assert!(hits.contains(&m), "binom({x},3) = {m} missing");
            }
        }
        // 5 = binom(4,3) + 1 drops below the ratio reached at 4.
        assert!(!hits.contains(&5));
        assert!(jung_scan(3, 3, 5).is_err());
    }

    #[test]
    fn binomial_product_identity() {
        // binom(x,t) binom(t,s) = binom(x,s) binom(x-s,t-s) for rational x.
        for (num, den) in [(7i64, 2i64), (13, 3), (9, 1), (-5, 4)] {
            let x = q(num, den);
            let b = |x: &BigRational, k: u32| -> BigRational {
                let mut acc = BigRational::one();
                for j in 0..k {
                    acc = acc * (x - BigRational::from(BigInt::from(j))) / BigRational::from(BigInt::from(j + 1));
                }
                acc
            };
            for s in 0..5u32 {
                for t in s..7u32 {
                    let lhs = b(&x, t) * b(&BigRational::from(BigInt::from(t)), s);
                    let rhs = b(&x, s) * b(&(&x - BigRational::from(BigInt::from(s))), t - s);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
