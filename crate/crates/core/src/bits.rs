//! Bit-mask combinatorics on subsets of `{1..n}`, vertex `v` stored in bit `v-1`.
//!
//! Integer order on masks is colex order on the sets they encode, so the
//! Gosper successor walks a layer in colex order.

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Next larger mask with the same popcount, if it stays below `limit_bits`.
#[inline]
pub fn next_same_popcount(x: u64, limit_bits: u32) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let x = x as u128;
    let c = x & x.wrapping_neg();
    let r = x + c;
    let next = (((r ^ x) >> 2) / c) | r;
    if limit_bits < 128 && next >> limit_bits != 0 {
        None
    } else {
        Some(next as u64)
    }
}

/// Next smaller mask with the same popcount.
#[inline]
pub fn prev_same_popcount(x: u64) -> Option<u64> {
    let t = x.trailing_ones();
    let y = if t == 64 { 0 } else { x & !((1u64 << t) - 1) };
    if y == 0 {
        return None;
    }
    let p = y.trailing_zeros();
    let low = ((1u64 << (t + 1)) - 1) << (p - 1 - t);
    Some((y ^ (1u64 << p)) | low)
}

/// Iterator over the `k`-subsets of `{1..n}` in colex order.
#[derive(Debug, Clone)]
pub struct LayerIter {
    n: u32,
    cur: Option<u64>,
    first: bool,
}

impl Iterator for LayerIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.cur?;
        if self.first {
            self.first = false;
            return Some(cur);
        }
        self.cur = if cur == 0 { None } else { next_same_popcount(cur, self.n) };
        self.cur
    }
}

pub fn layer(n: u32, k: u32) -> LayerIter {
    let cur = if k > n { None } else { Some(full_mask(k)) };
    LayerIter { n, cur, first: true }
}

/// Scatters the low bits of `bits` onto the set bits of `mask`.
#[inline]
pub fn deposit(mut bits: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while bits != 0 && mask != 0 {
        let low = mask & mask.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        mask ^= low;
    }
    out
}

/// Calls `f` on every `k`-subset of the set bits of `mask`, in colex order.
pub fn for_each_subset(mask: u64, k: u32, mut f: impl FnMut(u64)) {
    let width = mask.count_ones();
    for pattern in layer(width, k) {
        f(deposit(pattern, mask));
    }
}

/// The `k`-subsets of `mask`, colex ordered.
pub fn subsets(mask: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_subset(mask, k, |s| out.push(s));
    out
}

pub fn labels(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() + 1);
        m &= m - 1;
    }
    out
}

/// Applies a vertex relabelling; `perm[v-1]` is the new label of `v`.
pub fn permute_mask(mask: u64, perm: &[u32]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out |= 1u64 << (perm[v] - 1);
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_is_colex_and_complete() {
        let l: Vec<u64> = layer(4, 2).collect();
        let as_labels: Vec<Vec<u32>> = l.iter().map(|&m| labels(m)).collect();
        assert_eq!(as_labels, vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
        for n in 0..12 {
            for k in 0..=n + 1 {
                let count = layer(n, k).count() as u64;
                let expect = crate::binomial::binom_u128(n as u64, k as u64).unwrap() as u64;
                assert_eq!(count, expect, "n={n} k={k}");
            }
        }
        assert_eq!(layer(64, 63).count(), 64);
        assert_eq!(layer(64, 64).count(), 1);
    }

    #[test]
    fn prev_reverses_next() {
        for n in 1..10 {
            for k in 1..=n {
                let fwd: Vec<u64> = layer(n, k).collect();
                let mut back = vec![*fwd.last().unwrap()];
                while let Some(p) = prev_same_popcount(*back.last().unwrap()) {
                    back.push(p);
                }
                back.reverse();
                assert_eq!(fwd, back);
            }
        }
    }

    #[test]
    fn subsets_of_mask() {
        let m = 0b1011_0100u64;
        let subs = subsets(m, 2);
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|s| s & !m == 0 && s.count_ones() == 2));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }
}
