//! Exact and real binomial arithmetic.
//!
//! Integer binomials are arbitrary precision with a `u128` fast path. The
//! real-valued polynomial binomial `x(x-1)...(x-k+1)/k!` and its inverse on
//! the monotone branch `x >= k-1` are used by the Lovász form of the
//! Kruskal–Katona bound.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// `binom(n, k)` in `u128`, or `None` on overflow. Zero when `k > n`.
pub fn binom_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // (j + 1) divides acc * (n - j); splitting the division through the
        // gcd keeps every intermediate at most binom(n, j + 1).
        let d = j as u128 + 1;
        let g = acc.gcd(&d);
        let factor = (n - j) as u128 / (d / g);
        acc = (acc / g).checked_mul(factor)?;
    }
    Some(acc)
}

/// Exact binomial coefficient with the convention `binom(n, k) = 0` when
/// `k < 0` or `n < k`.
pub fn binom_exact(n: i64, k: i64) -> BigUint {
    if k < 0 || n < k {
        return BigUint::zero();
    }
    let (n, k) = (n as u64, k as u64);
    if let Some(v) = binom_u128(n, k) {
        return BigUint::from(v);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u8);
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `binom(n, k)` for unsigned arguments.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    binom_exact(n as i64, k as i64)
}

/// Falling factorial `(x)_(k) = x(x-1)...(x-k+1)`.
pub fn falling_factorial(x: f64, k: u32) -> f64 {
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        // Exact for integers as long as the product fits in f64's mantissa;
        // beyond that it rounds like any other f64 product.
        let xi = x as i64;
        let mut acc = 1.0f64;
        let mut exact: Option<i128> = Some(1);
        for j in 0..k as i64 {
            exact = exact.and_then(|e| e.checked_mul((xi - j) as i128));
            acc *= (xi - j) as f64;
        }
        return exact.map(|e| e as f64).unwrap_or(acc);
    }
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64))
}

/// Exact falling factorial of a non-negative integer. Zero when `k > n`.
pub fn falling_factorial_int(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::from(1u8), |acc, j| acc * (n - j))
}

/// Generalized binomial `(x)_(k) / k!` for real `x`.
pub fn binom_real(x: f64, k: u32) -> f64 {
    if x.fract() == 0.0 && (0.0..1.0e15).contains(&x) {
        return binom(x as u64, k as u64).to_f64().unwrap_or(f64::INFINITY);
    }
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64) / (j as f64 + 1.0))
}

/// Largest integer `r >= k - 1` with `binom(r, k) <= m`.
///
/// For `k >= 1` this is well defined because `binom(k - 1, k) = 0`.
pub fn binom_floor_index(m: &BigUint, k: u64) -> u64 {
    debug_assert!(k >= 1);
    if let Some(m) = m.to_u128() {
        return floor_index_u128(m, k);
    }
    floor_index_big(m, k)
}

pub(crate) fn floor_index_u128(m: u128, k: u64) -> u64 {
    let fits = |r: u64| binom_u128(r, k).is_some_and(|b| b <= m);
    let lo_bound = k - 1;
    if m == 0 {
        return lo_bound;
    }
    if k == 1 {
        return m as u64;
    }
    // Start from the continuous estimate (m k!)^(1/k) + (k-1)/2, then walk.
    let est = estimate_index(m as f64, k).max(lo_bound as f64);
    let mut r = (est as u64).max(lo_bound);
    let mut steps = 0;
    while !fits(r) && r > lo_bound {
        r -= 1;
        steps += 1;
        if steps > 64 {
            return bisect_index(lo_bound, r, fits);
        }
    }
    steps = 0;
    while fits(r + 1) {
        r += 1;
        steps += 1;
        if steps > 64 {
            let mut hi = r.saturating_mul(2).max(r + 1);
            while fits(hi) {
                hi = hi.saturating_mul(2);
            }
            return bisect_index(r, hi, fits);
        }
    }
    r
}

fn floor_index_big(m: &BigUint, k: u64) -> u64 {
    let fits = |r: u64| &binom(r, k) <= m;
    let lo_bound = k - 1;
    let mut hi = lo_bound.max(1);
    while fits(hi) {
        hi *= 2;
    }
    bisect_index(lo_bound, hi, fits)
}

/// Largest r in [lo, hi) with fits(r), given fits(lo) and !fits(hi).
fn bisect_index(mut lo: u64, mut hi: u64, fits: impl Fn(u64) -> bool) -> u64 {
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn estimate_index(m: f64, k: u64) -> f64 {
    let ln_fact: f64 = (1..=k).map(|j| (j as f64).ln()).sum();
    ((m.ln() + ln_fact) / k as f64).exp() + (k as f64 - 1.0) / 2.0
}

/// If `m = binom(r, k)` for an integer `r >= k`, returns `r`. For `m = 0`
/// returns `k - 1`.
pub fn binom_inverse_exact(m: &BigUint, k: u64) -> Option<u64> {
    let r = binom_floor_index(m, k);
    (binom(r, k) == *m).then_some(r)
}

/// The unique `x >= k - 1` with `binom_real(x, k) = m`.
///
/// Integer pre-images are detected exactly before falling back to bisection
/// on the bracket `[r, r + 1]` where `binom(r, k) < m < binom(r + 1, k)`.
pub fn binom_inverse(m: f64, k: u32) -> f64 {
    assert!(k >= 1, "binom_inverse needs k >= 1");
    assert!(m >= 0.0 && m.is_finite(), "binom_inverse needs finite m >= 0");
    let k64 = k as u64;
    if m == 0.0 {
        return k as f64 - 1.0;
    }
    let (lo, hi) = if m < 1.0e30 {
        let floor = BigUint::from(m.floor() as u128);
        let r = binom_floor_index(&floor, k64);
        if m.fract() == 0.0 && binom(r, k64) == floor {
            return r as f64;
        }
        (r as f64, r as f64 + 1.0)
    } else {
        let est = estimate_index(m, k64);
        let mut lo = (k as f64 - 1.0).max(est * 0.5);
        let mut hi = est * 2.0;
        while binom_real(lo, k) > m {
            lo = (lo * 0.5).max(k as f64 - 1.0);
        }
        while binom_real(hi, k) < m {
            hi *= 2.0;
        }
        (lo, hi)
    };
    bisect_real(lo, hi, |x| binom_real(x, k) - m)
}

fn bisect_real(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Serializes a big integer as a decimal string.
pub(crate) fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u8)]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigUint::from(1u8); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binom_small_and_conventions() {
        assert_eq!(binom_exact(5, 3), BigUint::from(10u8));
        assert_eq!(binom_exact(3, 5), BigUint::zero());
        assert_eq!(binom_exact(4, -1), BigUint::zero());
        assert_eq!(binom_exact(-2, 1), BigUint::zero());
        assert_eq!(binom_exact(0, 0), BigUint::from(1u8));
    }

    #[test]
    fn binom_matches_pascal_oracle() {
        let rows = pascal(140);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binom_exact(n as i64, k as i64), v, "({n},{k})");
            }
        }
        // 60 choose 30 from the same oracle.
        assert_eq!(binom_exact(60, 30), rows[60][30]);
        assert_eq!(rows[60][30].to_string(), "118264581564861424");
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(7.0, 2), 42.0);
        assert_eq!(falling_factorial(3.3, 0), 1.0);
        assert!((falling_factorial(4.5, 2) - 15.75).abs() < 1e-12);
        assert_eq!(falling_factorial_int(6, 2), BigUint::from(30u8));
        assert_eq!(falling_factorial_int(2, 3), BigUint::zero());
    }

    #[test]
    fn binom_real_examples() {
        assert_eq!(binom_real(4.0, 2), 6.0);
        assert!((binom_real(2.5, 2) - 1.875).abs() < 1e-12);
        for t in 1..10u32 {
            assert_eq!(binom_real(t as f64 - 1.0, t), 0.0);
        }
    }

    #[test]
    fn binom_inverse_examples() {
        assert_eq!(binom_inverse(6.0, 2), 4.0);
        for k in 1..8 {
            assert_eq!(binom_inverse(0.0, k), k as f64 - 1.0);
        }
        let expect = (1.0 + 57f64.sqrt()) / 2.0;
        assert!((binom_inverse(7.0, 2) - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn binom_inverse_round_trip() {
        for k in 1..7u32 {
            let mut x = k as f64 - 1.0;
            while x <= 100.0 {
                let y = binom_inverse(binom_real(x, k), k);
                assert!((y - x).abs() < 1e-9, "k={k} x={x} got {y}");
                x += 0.37;
            }
        }
    }

    #[test]
    fn floor_index_large_values() {
        let m = binom(200, 7) + BigUint::from(1u8);
        assert_eq!(binom_floor_index(&m, 7), 200);
        let huge = binom(1000, 40);
        assert_eq!(binom_inverse_exact(&huge, 40), Some(1000));
        assert_eq!(binom_inverse_exact(&(huge - 1u8), 40), None);
    }
}
