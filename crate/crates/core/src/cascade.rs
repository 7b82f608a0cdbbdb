//! Cascade representations and the closed-form colex counting functions.
//!
//! Every `m >= 0` has a unique strict `s`-cascade
//! `m = binom(n_s, s) + binom(n_{s-1}, s-1) + ... + binom(n_{s-l+1}, s-l+1)`.
//! Evaluating the same entries at another level gives the clique count
//! (level above `s`) or the shadow size (level below `s`) of the colex
//! initial segment of length `m`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::{binom, binom_exact, binom_floor_index, binom_inverse, binom_real, binom_u128, floor_index_u128};
use crate::error::{ensure, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cascade {
    level: u32,
    entries: Vec<u64>,
}

impl Cascade {
    /// Builds a cascade from explicit entries, which must be strictly
    /// decreasing. Strictness in the sense of [`Cascade::is_strict`] is not
    /// required: re-indexed cascades are evaluated at other levels all the
    /// time.
    pub fn new(level: u32, entries: Vec<u64>) -> Result<Self> {
        ensure!(level >= 1, InvalidParameters, "cascade level must be >= 1");
        ensure!(
            entries.windows(2).all(|w| w[0] > w[1]),
            InvalidParameters,
            "cascade entries must be strictly decreasing: {entries:?}"
        );
        Ok(Cascade { level, entries })
    }

    /// The unique strict `s`-cascade with value `m`, built greedily.
    pub fn of(m: &BigUint, s: u32) -> Result<Self> {
        ensure!(s >= 1, InvalidParameters, "cascade level must be >= 1");
        let mut entries = Vec::with_capacity(s as usize);
        if let Some(mut rem) = m.to_u128() {
            let mut level = s as u64;
            while rem > 0 {
                let n = floor_index_u128(rem, level);
                rem -= binom_u128(n, level).expect("floor index binomial fits below m");
                entries.push(n);
                level -= 1;
            }
        } else {
            let mut rem = m.clone();
            let mut level = s as u64;
            while !rem.is_zero() {
                let n = binom_floor_index(&rem, level);
                rem -= binom(n, level);
                entries.push(n);
                level -= 1;
            }
        }
        Ok(Cascade { level: s, entries })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bottom entry `n_{s-l+1}`.
    pub fn last(&self) -> Option<u64> {
        self.entries.last().copied()
    }

    /// `l <= s` and `n_{s-k} >= s-k`; checking the bottom entry suffices.
    pub fn is_strict(&self) -> bool {
        let l = self.entries.len();
        if l > self.level as usize {
            return false;
        }
        match self.last() {
            None => true,
            Some(b) => b >= self.level as u64 - (l as u64 - 1),
        }
    }

    /// `sum_k binom(n_{s-k}, level - k)` with the zero convention.
    pub fn eval(&self, level: u32) -> BigUint {
        let mut small: Option<u128> = Some(0);
        for (k, &n) in self.entries.iter().enumerate() {
            if (level as usize) < k {
                break;
            }
            let term = binom_u128(n, level as u64 - k as u64);
            small = match (small, term) {
                (Some(acc), Some(t)) => acc.checked_add(t),
                _ => None,
            };
            if small.is_none() {
                break;
            }
        }
        if let Some(v) = small {
            return BigUint::from(v);
        }
        self.entries.iter().enumerate().map(|(k, &n)| binom_exact(n as i64, level as i64 - k as i64)).sum()
    }

    /// The represented integer.
    pub fn value(&self) -> BigUint {
        self.eval(self.level)
    }

    /// Checks the chain of inequalities characterising the greedy cascade
    /// of `m`: every proper prefix falls strictly between its own value and
    /// the value with its last entry bumped by one, and the full sum is `m`.
    pub fn satisfies_uniqueness_chain(&self, m: &BigUint) -> bool {
        let s = self.level as i64;
        let l = self.entries.len();
        let mut prefix = BigUint::zero();
        for (k, &n) in self.entries.iter().enumerate() {
            let row = s - k as i64;
            let with = &prefix + binom_exact(n as i64, row);
            if k + 1 < l {
                let bumped = &prefix + binom_exact(n as i64 + 1, row);
                if !(with < *m && *m < bumped) {
                    return false;
                }
            } else {
                // The last line holds with equality; the bump bound still
                // holds and is what pins n down uniquely.
                let bumped = &prefix + binom_exact(n as i64 + 1, row);
                if with != *m || *m >= bumped {
                    return false;
                }
            }
            prefix = with;
        }
        l > 0 || m.is_zero()
    }
}

/// `k_s(m)`: number of `t`-cliques of the colex `s`-graph with `m` edges.
pub fn k_colex(m: &BigUint, s: u32, t: u32) -> Result<BigUint> {
    ensure!(s >= 1 && t >= s, InvalidParameters, "k_colex needs 1 <= s <= t (s={s}, t={t})");
    Ok(Cascade::of(m, s)?.eval(t))
}

/// `|shadow_q(C_s(m))|`: size of the `q`-shadow of the colex `s`-graph.
pub fn shadow_colex(m: &BigUint, s: u32, q: u32) -> Result<BigUint> {
    ensure!(s >= 1 && q < s, InvalidParameters, "shadow_colex needs 0 <= q < s (s={s}, q={q})");
    Ok(Cascade::of(m, s)?.eval(q))
}

/// The `(n-s)`-cascade of `binom(n,s) - m`, obtained from the cascade of `m`
/// by complementing its entry set inside `{b, b+1, ..., n-1}` where `b` is
/// the shared bottom entry. Cross-checked against the greedy construction.
pub fn complement_cascade(m: &BigUint, s: u32, n: u32) -> Result<Cascade> {
    ensure!(s >= 1 && s < n, InvalidParameters, "complement_cascade needs 1 <= s < n");
    let total = binom(n as u64, s as u64);
    ensure!(!m.is_zero() && *m < total, OutOfRange, "complement_cascade needs 0 < m < binom({n},{s}), got {m}");
    let c = Cascade::of(m, s)?;
    let b = c.last().expect("m > 0 has a non-empty cascade");
    let upper: Vec<u64> = c.entries()[..c.len() - 1].to_vec();
    let mut entries: Vec<u64> = ((b + 1)..n as u64).rev().filter(|v| !upper.contains(v)).collect();
    entries.push(b);
    let level = n - s;
    let expected_len = n as u64 - c.len() as u64 - b + 1;
    let built = Cascade::new(level, entries)?;
    let greedy = Cascade::of(&(total - m), level)?;
    if built != greedy || built.len() as u64 != expected_len {
        return Err(Error::CrossCheck(format!(
            "complement of {c:?} in n={n}: rule gives {built:?}, greedy gives {greedy:?}"
        )));
    }
    Ok(built)
}

/// `k_s(m)` computed through the complement: `binom(n,t) - shadow^{n-s}_{n-t}(binom(n,s) - m)`.
pub fn k_via_complement(m: &BigUint, s: u32, t: u32, n: u32) -> Result<BigUint> {
    ensure!(s <= t && t <= n, InvalidParameters, "k_via_complement needs s <= t <= n");
    let total = binom(n as u64, s as u64);
    ensure!(*m <= total, OutOfRange, "m = {m} exceeds binom({n},{s})");
    let rest = total - m;
    let shadow = if n == s {
        // The complement is {∅} or empty; its level-0 shadow is itself.
        rest
    } else {
        Cascade::of(&rest, n - s)?.eval(n - t)
    };
    Ok(binom(n as u64, t as u64) - shadow)
}

/// Lovász form: with `m = binom(x, s)`, `x >= s-1`, returns `0` if `x < t`
/// and `binom(x, t)` otherwise.
pub fn lovasz_clique_bound(m: &BigUint, s: u32, t: u32) -> Result<f64> {
    ensure!(s >= 1 && t >= s, InvalidParameters, "lovasz_clique_bound needs 1 <= s <= t");
    if let Some(r) = crate::binomial::binom_inverse_exact(m, s as u64) {
        if r < t as u64 {
            return Ok(0.0);
        }
        return Ok(binom(r, t as u64).to_f64().unwrap_or(f64::INFINITY));
    }
    let mf = m.to_f64().unwrap_or(f64::INFINITY);
    let x = binom_inverse(mf, s);
    if x < t as f64 {
        Ok(0.0)
    } else {
        Ok(binom_real(x, t))
    }
}
