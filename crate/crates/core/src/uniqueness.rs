//! Jumping numbers and uniqueness of colex extremal families.
//!
//! `m` is jumping for the `q`-shadow when adding the next colex edge grows
//! the shadow, and clique-jumping for `t`-cliques when adding it creates a
//! new `t`-clique. Each predicate has a closed-form test on a cascade and a
//! definitional test on the counting functions; both run every time and a
//! disagreement is reported as [`Error::CrossCheck`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binomial::binom;
use crate::cascade::{k_colex, shadow_colex, Cascade};
use crate::error::{ensure, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Jumping,
    ColexUnique,
    CliqueJumping,
    CliqueUnique,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessVerdict {
    pub predicate: Predicate,
    #[serde(serialize_with = "crate::binomial::serialize_decimal")]
    pub m: BigUint,
    pub s: u32,
    /// `q` for shadow predicates, `t` for clique predicates.
    pub level: u32,
    pub n: Option<u32>,
    pub verdict: bool,
    /// First clause that fired, in the order the clauses are listed.
    pub triggered_condition: Option<String>,
    /// Every clause that fired.
    pub conditions: Vec<String>,
    /// The cascade the clauses were read from.
    pub cascade: Cascade,
}

impl UniquenessVerdict {
    fn new(predicate: Predicate, m: &BigUint, s: u32, level: u32, n: Option<u32>, cascade: Cascade) -> Self {
        UniquenessVerdict {
            predicate,
            m: m.clone(),
            s,
            level,
            n,
            verdict: false,
            triggered_condition: None,
            conditions: Vec::new(),
            cascade,
        }
    }

    fn fire(&mut self, clause: String) {
        if self.triggered_condition.is_none() {
            self.triggered_condition = Some(clause.clone());
        }
        self.conditions.push(clause);
        self.verdict = true;
    }
}

/// `t <= ℓ + n_last - 1` on a cascade; false for the empty cascade.
fn clique_clause(c: &Cascade, t: u32) -> bool {
    match c.last() {
        Some(last) => (t as u64) < c.len() as u64 + last,
        None => false,
    }
}

/// Whether `shadow_q(C_s(m+1))` exceeds `shadow_q(C_s(m))`.
pub fn is_jumping(m: &BigUint, s: u32, q: u32) -> Result<UniquenessVerdict> {
    ensure!(1 <= q && q < s, InvalidParameters, "jumping needs 1 <= q < s (q={q}, s={s})");
    let c = Cascade::of(m, s)?;
    let closed = c.len() as u32 <= q;
    let direct = shadow_colex(&(m + 1u8), s, q)? > shadow_colex(m, s, q)?;
    if closed != direct {
        return Err(Error::CrossCheck(format!(
            "jumping ({m},{s},{q}): cascade length test {closed}, shadow comparison {direct}"
        )));
    }
    let mut v = UniquenessVerdict::new(Predicate::Jumping, m, s, q, None, c);
    if closed {
        v.fire(format!("l = {} <= q", v.cascade.len()));
    }
    Ok(v)
}

/// Whether `C_s(m)` is, up to isomorphism, the only `s`-graph on at most
/// `n` vertices with `m` edges and minimum `q`-shadow.
pub fn is_colex_unique(m: &BigUint, s: u32, q: u32, n: u32) -> Result<UniquenessVerdict> {
    ensure!(1 <= q && q < s && s <= n, InvalidParameters, "colex uniqueness needs 1 <= q < s <= n");
    let total = binom(n as u64, s as u64);
    ensure!(*m <= total, OutOfRange, "m = {m} exceeds binom({n},{s}) = {total}");
    let c = Cascade::of(m, s)?;
    let mut v = UniquenessVerdict::new(Predicate::ColexUnique, m, s, q, Some(n), c);
    let small = *m <= BigUint::from(s + 1);
    if small {
        v.fire("m <= s+1".into());
    }
    let short = v.cascade.len() as u32 <= q;
    if short {
        v.fire(format!("l = {} <= q", v.cascade.len()));
    }
    let below = (s..=n).find(|&np| binom(np as u64, s as u64) == m + 1u8);
    if let Some(np) = below {
        v.fire(format!("m = binom({np},s) - 1"));
    }
    if !small && short && below.is_some() {
        return Err(Error::CrossCheck(format!("colex uniqueness ({m},{s},{q},{n}): exclusive clauses both fire")));
    }
    Ok(v)
}

/// Whether `k^t(C_s(m+1))` exceeds `k^t(C_s(m))`.
pub fn is_clique_jumping(m: &BigUint, s: u32, t: u32, n: u32) -> Result<UniquenessVerdict> {
    ensure!(1 <= s && s < t && t <= n, InvalidParameters, "clique jumping needs 1 <= s < t <= n");
    let total = binom(n as u64, s as u64);
    ensure!(!m.is_zero() && *m < total, OutOfRange, "clique jumping needs 0 < m < binom({n},{s}) = {total}, got {m}");
    let next = Cascade::of(&(m + 1u8), s)?;
    let closed = clique_clause(&next, t);
    let direct = k_colex(&(m + 1u8), s, t)? > k_colex(m, s, t)?;
    if closed != direct {
        return Err(Error::CrossCheck(format!(
            "clique jumping ({m},{s},{t}): cascade test {closed}, clique comparison {direct}"
        )));
    }
    let mut v = UniquenessVerdict::new(Predicate::CliqueJumping, m, s, t, Some(n), next);
    if closed {
        v.fire("t <= l + n_last - 1 on the cascade of m+1".into());
    }
    Ok(v)
}

/// Sufficient condition for `C_s(m)` to be the unique `s`-graph on `n`
/// vertices with `m` edges and the most `t`-cliques. A `false` verdict
/// means no listed clause applies, not that uniqueness fails.
pub fn is_clique_unique(m: &BigUint, s: u32, t: u32, n: u32) -> Result<UniquenessVerdict> {
    ensure!(1 <= s && s < t && t <= n, InvalidParameters, "clique uniqueness needs 1 <= s < t <= n");
    let total = binom(n as u64, s as u64);
    ensure!(*m <= total, OutOfRange, "m = {m} exceeds binom({n},{s}) = {total}");
    let c = Cascade::of(m, s)?;
    let mut v = UniquenessVerdict::new(Predicate::CliqueUnique, m, s, t, Some(n), c);
    if m.is_zero() {
        v.fire("m = 0".into());
        return Ok(v);
    }
    if *m == total {
        v.fire("m = binom(n,s)".into());
        return Ok(v);
    }
    if t == n {
        // Every family with m < binom(n,s) edges has no n-clique, so
        // uniqueness means all m-edge s-graphs on [n] are isomorphic. The
        // complement argument behind the clauses below needs n - t >= 1.
        if m.is_one() || m + 1u8 == total || s == 1 || s + 1 == n {
            v.fire("t = n and all m-edge s-graphs on n vertices are isomorphic".into());
        }
        return Ok(v);
    }
    let threshold = BigInt::from(total.clone()) - BigInt::from(n) + BigInt::from(s) - BigInt::one();
    if BigInt::from(m.clone()) >= threshold {
        v.fire("m >= binom(n,s) - n + s - 1".into());
    }
    if clique_clause(&v.cascade, t) {
        v.fire("t <= l + n_last - 1".into());
    }
    for np in (n - s + 2)..=n {
        let b = binom(np as u64, (n - s) as u64);
        if b <= total && &total - &b + 1u8 == *m {
            v.fire(format!("m = binom(n,s) - binom({np},n-s) + 1"));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn jumping_examples() {
        assert!(is_jumping(&big(7), 3, 2).unwrap().verdict);
        assert!(!is_jumping(&big(7), 3, 1).unwrap().verdict);
        for r in 3..12u64 {
            for q in 1..3 {
                assert!(is_jumping(&binom(r, 3), 3, q).unwrap().verdict);
            }
        }
        assert!(is_jumping(&big(0), 3, 1).unwrap().verdict);
    }

    #[test]
    fn jumping_sweep() {
        for s in 2..=5u32 {
            let top = binom(12, s as u64);
            let mut m = BigUint::zero();
            while m <= top {
                for q in 1..s {
                    is_jumping(&m, s, q).unwrap();
                }
                m += 1u8;
            }
        }
    }

    #[test]
    fn colex_unique_examples() {
        let v = is_colex_unique(&big(4), 3, 2, 6).unwrap();
        assert_eq!(v.triggered_condition.as_deref(), Some("m <= s+1"));
        let v = is_colex_unique(&big(9), 3, 1, 5).unwrap();
        assert!(v.verdict);
        assert_eq!(v.triggered_condition.as_deref(), Some("m = binom(5,s) - 1"));
        assert!(!is_colex_unique(&big(7), 3, 1, 5).unwrap().verdict);
        assert!(is_colex_unique(&big(11), 3, 1, 5).is_err());
    }

    #[test]
    fn clique_jumping_examples() {
        assert!(is_clique_jumping(&big(6), 3, 4, 5).unwrap().verdict);
        assert!(!is_clique_jumping(&big(6), 3, 5, 5).unwrap().verdict);
        for r in 4..9u64 {
            for t in 4..=r as u32 {
                let m = binom(r, 3) - 1u8;
                assert!(is_clique_jumping(&m, 3, t, 10).unwrap().verdict);
            }
        }
        assert!(is_clique_jumping(&big(0), 3, 4, 5).is_err());
        assert!(is_clique_jumping(&big(10), 3, 4, 5).is_err());
    }

    #[test]
    fn clique_jumping_sweep() {
        for s in 1..=5u32 {
            for t in s + 1..=12 {
                let top = binom(12, s as u64);
                let mut m = BigUint::one();
                while m < top {
                    is_clique_jumping(&m, s, t, 12).unwrap();
                    m += 1u8;
                }
            }
        }
    }

    #[test]
    fn clique_unique_examples() {
        for np in 4..8u64 {
            let v = is_clique_unique(&binom(np, 3), 3, 4, 8).unwrap();
            assert!(v.verdict, "binom({np},3)");
        }
        let v = is_clique_unique(&big(9), 3, 4, 5).unwrap();
        assert_eq!(v.triggered_condition.as_deref(), Some("m >= binom(n,s) - n + s - 1"));
        let v = is_clique_unique(&big(7), 3, 4, 5).unwrap();
        assert!(v.conditions.iter().any(|c| c == "t <= l + n_last - 1"));
        assert!(is_clique_unique(&big(0), 3, 4, 5).unwrap().verdict);
        assert!(is_clique_unique(&big(10), 3, 4, 5).unwrap().verdict);
    }
}
