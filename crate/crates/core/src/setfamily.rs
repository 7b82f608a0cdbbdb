//! Uniform set families on a labelled ground set `{1..n}`, `n <= 64`.
//!
//! A [`SetFamily`] stores its edges as bit masks sorted in colex order. All
//! operations return new families; nothing mutates in place.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::binomial::binom_u128;
use crate::bits::{self, full_mask, layer};
use crate::cascade::Cascade;
use crate::error::{ensure, Error, Result};

pub const MAX_VERTICES: u32 = 64;

/// A set of vertices, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn from_labels(labels: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in labels {
            ensure!((1..=MAX_VERTICES).contains(&v), MalformedFamily, "vertex label {v} outside 1..=64");
            ensure!(mask & (1 << (v - 1)) == 0, MalformedFamily, "repeated vertex {v}");
            mask |= 1 << (v - 1);
        }
        Ok(VertexSet(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn labels(self) -> Vec<u32> {
        bits::labels(self.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }
}

impl From<VertexSet> for Vec<u32> {
    fn from(v: VertexSet) -> Self {
        v.labels()
    }
}

impl TryFrom<Vec<u32>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        VertexSet::from_labels(&v)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", l.join(","))
    }
}

/// Colex order: `A < B` iff `max(A △ B) ∈ B`.
pub fn colex_compare(a: VertexSet, b: VertexSet) -> Ordering {
    let diff = a.0 ^ b.0;
    if diff == 0 {
        return Ordering::Equal;
    }
    let top = 1u64 << (63 - diff.leading_zeros());
    if b.0 & top != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Retlex order: `A <_R B` iff `max(A △ B) ∈ A`.
pub fn retlex_compare(a: VertexSet, b: VertexSet) -> Ordering {
    let diff = a.0 ^ b.0;
    if diff == 0 {
        return Ordering::Equal;
    }
    let top = 1u64 << (63 - diff.leading_zeros());
    if a.0 & top != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// An `s`-uniform family of subsets of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FamilyJson", try_from = "FamilyJson")]
pub struct SetFamily {
    n: u32,
    arity: u32,
    edges: Vec<u64>,
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: u32,
    pub s: u32,
    pub edges: Vec<Vec<u32>>,
}

impl From<SetFamily> for FamilyJson {
    fn from(f: SetFamily) -> Self {
        FamilyJson { n: f.n, s: f.arity, edges: f.edges.iter().map(|&e| bits::labels(e)).collect() }
    }
}

impl TryFrom<FamilyJson> for SetFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<Self> {
        let masks =
            j.edges.iter().map(|e| VertexSet::from_labels(e).map(VertexSet::mask)).collect::<Result<Vec<_>>>()?;
        SetFamily::new(j.n, j.s, masks)
    }
}

/// Neighborhood of a vertex set, relabelled onto `{1..k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub family: SetFamily,
    /// `labels[j]` is the original label of vertex `j + 1`.
    pub labels: Vec<u32>,
}

impl Neighborhood {
    /// Vertex set of the neighborhood in original labels.
    pub fn support(&self) -> VertexSet {
        VertexSet(self.labels.iter().fold(0, |m, &v| m | 1 << (v - 1)))
    }
}

impl SetFamily {
    /// Builds a family from edge masks. Duplicates are merged.
    pub fn new(n: u32, arity: u32, edges: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let ground = full_mask(n);
        let mut edges: Vec<u64> = edges.into_iter().collect();
        for &e in &edges {
            ensure!(e & !ground == 0, MalformedFamily, "edge {} not inside {{1..{n}}}", VertexSet(e));
            ensure!(e.count_ones() == arity, MalformedFamily, "edge {} does not have {arity} vertices", VertexSet(e));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(SetFamily { n, arity, edges })
    }

    fn from_sorted(n: u32, arity: u32, edges: Vec<u64>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        SetFamily { n, arity, edges }
    }

    pub fn from_label_lists(n: u32, arity: u32, edges: &[&[u32]]) -> Result<Self> {
        let masks = edges.iter().map(|e| VertexSet::from_labels(e).map(VertexSet::mask)).collect::<Result<Vec<_>>>()?;
        Self::new(n, arity, masks)
    }

    pub fn empty(n: u32, arity: u32) -> Result<Self> {
        Self::new(n, arity, std::iter::empty())
    }

    /// All `arity`-subsets of `{1..n}`.
    pub fn complete(n: u32, arity: u32) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Self::from_sorted(n, arity, layer(n, arity).collect()))
    }

    pub fn ground_n(&self) -> u32 {
        self.n
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge masks, colex sorted.
    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges.iter().map(|&e| VertexSet(e))
    }

    pub fn contains(&self, edge: u64) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// Union of all edges.
    pub fn support(&self) -> VertexSet {
        VertexSet(self.edges.iter().fold(0, |a, &e| a | e))
    }

    /// Same edges on a larger ground set.
    pub fn with_ground(&self, n: u32) -> Result<Self> {
        ensure!(n >= 64 - self.support().0.leading_zeros(), InvalidParameters, "ground set too small");
        Self::new(n, self.arity, self.edges.iter().copied())
    }

    /// Applies a vertex relabelling; `perm[v-1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        ensure!(perm.len() == self.n as usize, InvalidParameters, "permutation length != n");
        let mut seen = 0u64;
        for &p in perm {
            ensure!(p >= 1 && p <= self.n, InvalidParameters, "permutation value {p} outside 1..={}", self.n);
            seen |= 1 << (p - 1);
        }
        ensure!(seen == full_mask(self.n), InvalidParameters, "not a permutation");
        Self::new(self.n, self.arity, self.edges.iter().map(|&e| bits::permute_mask(e, perm)))
    }

    /// Edges present in `self` but not in `other`.
    pub fn difference(&self, other: &SetFamily) -> SetFamily {
        let edges = self.edges.iter().copied().filter(|e| !other.contains(*e)).collect();
        Self::from_sorted(self.n, self.arity, edges)
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        ensure!(self.arity == other.arity, InvalidParameters, "union of families with different arity");
        Self::new(self.n.max(other.n), self.arity, self.edges.iter().chain(&other.edges).copied())
    }

    /// All `q`-subsets of edges.
    pub fn shadow(&self, q: u32) -> Result<SetFamily> {
        ensure!(q < self.arity, InvalidParameters, "shadow level {q} must be below arity {}", self.arity);
        let mut out = Vec::new();
        for &e in &self.edges {
            bits::for_each_subset(e, q, |s| out.push(s));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self::from_sorted(self.n, q, out))
    }

    /// All `t`-subsets of `{1..n}` containing at least one edge.
    pub fn upshadow(&self, t: u32) -> Result<SetFamily> {
        ensure!(t > self.arity && t <= self.n, InvalidParameters, "upshadow level {t} must satisfy arity < t <= n");
        let ground = full_mask(self.n);
        let extra = t - self.arity;
        let mut out = Vec::new();
        for &e in &self.edges {
            bits::for_each_subset(ground & !e, extra, |s| out.push(e | s));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self::from_sorted(self.n, t, out))
    }

    /// All `t`-sets whose `arity`-subsets are all edges.
    ///
    /// Built by extending cliques one level at a time: a `(j+1)`-set is a
    /// clique iff all of its `j`-subsets are, once `j >= arity`.
    pub fn cliques(&self, t: u32) -> Result<SetFamily> {
        ensure!(t >= self.arity, InvalidParameters, "clique level {t} below arity {}", self.arity);
        if t > self.n {
            return Ok(Self::from_sorted(self.n, t, Vec::new()));
        }
        let mut level = self.edges.clone();
        for _ in self.arity..t {
            if level.is_empty() {
                break;
            }
            let members: HashSet<u64> = level.iter().copied().collect();
            let mut next = Vec::new();
            for &c in &level {
                let start = 64 - c.leading_zeros();
                for v in start..self.n {
                    let grown = c | (1u64 << v);
                    let mut rest = c;
                    let mut ok = true;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        if !members.contains(&(grown ^ low)) {
                            ok = false;
                            break;
                        }
                        rest ^= low;
                    }
                    if ok {
                        next.push(grown);
                    }
                }
            }
            next.sort_unstable();
            level = next;
        }
        Ok(Self::from_sorted(self.n, t, level))
    }

    /// `k^t(H)`.
    pub fn clique_count(&self, t: u32) -> Result<usize> {
        Ok(self.cliques(t)?.len())
    }

    /// The `u`-graph of `u`-cliques.
    pub fn clique_graph(&self, u: u32) -> Result<SetFamily> {
        self.cliques(u)
    }

    /// Number of `t`-cliques containing `edge`.
    pub fn cliques_containing(&self, edge: u64, t: u32) -> Result<usize> {
        Ok(self.cliques(t)?.edges.iter().filter(|&&c| c & edge == edge).count())
    }

    pub fn degree(&self, set: VertexSet) -> usize {
        self.edges.iter().filter(|&&e| e & set.0 == set.0).count()
    }

    /// `Δ_i(H)`, the maximum over all `i`-subsets of the ground set.
    pub fn max_degree(&self, i: u32) -> Result<usize> {
        ensure!(i >= 1 && i < self.arity, InvalidParameters, "max_degree needs 1 <= i < arity");
        Ok(self.degree_counts(i).into_values().max().unwrap_or(0))
    }

    /// Degrees of the `i`-sets that lie in at least one edge.
    pub fn degree_counts(&self, i: u32) -> HashMap<u64, usize> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for &e in &self.edges {
            bits::for_each_subset(e, i, |s| *counts.entry(s).or_default() += 1);
        }
        counts
    }

    /// The `(s-|I|)`-graph `{E \ I : I ⊆ E}` on the union of its edges.
    pub fn neighborhood(&self, set: VertexSet) -> Result<Neighborhood> {
        ensure!(
            set.len() < self.arity,
            InvalidParameters,
            "neighborhood needs |I| < arity ({} >= {})",
            set.len(),
            self.arity
        );
        let links: Vec<u64> = self.edges.iter().filter(|&&e| e & set.0 == set.0).map(|&e| e ^ set.0).collect();
        let support = links.iter().fold(0u64, |a, &e| a | e);
        let labels = bits::labels(support);
        let mut relabel = vec![0u32; 64];
        for (j, &v) in labels.iter().enumerate() {
            relabel[v as usize - 1] = j as u32 + 1;
        }
        let k = labels.len() as u32;
        let arity = self.arity - set.len();
        let edges = links.into_iter().map(|e| bits::permute_mask(e, &relabel));
        Ok(Neighborhood { family: SetFamily::new(k, arity, edges)?, labels })
    }

    /// `{[n] \ A : A ∈ H}`.
    pub fn complement_family(&self) -> SetFamily {
        let ground = full_mask(self.n);
        let mut edges: Vec<u64> = self.edges.iter().map(|&e| ground & !e).collect();
        edges.sort_unstable();
        Self::from_sorted(self.n, self.n - self.arity, edges)
    }

    /// Text format: `n s` then one edge per line, colex sorted.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.arity);
        for &e in &self.edges {
            let l = bits::labels(e);
            if l.is_empty() {
                out.push('-');
            } else {
                let parts: Vec<String> = l.iter().map(|v| v.to_string()).collect();
                out.push_str(&parts.join(" "));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Blank lines and `#` comments are skipped; a
    /// lone `-` stands for the empty edge.
    pub fn parse_text(text: &str) -> Result<SetFamily> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing 'n s' header".into() })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let parse_u32 = |s: &str, line: usize| {
            s.parse::<u32>().map_err(|_| Error::Parse { line, msg: format!("expected integer, got '{s}'") })
        };
        if nums.len() != 2 {
            return Err(Error::Parse { line: hline, msg: "header must be 'n s'".into() });
        }
        let n = parse_u32(nums[0], hline)?;
        let s = parse_u32(nums[1], hline)?;
        let mut masks = Vec::new();
        for (line, l) in lines {
            let labels = if l == "-" {
                Vec::new()
            } else {
                l.split_whitespace().map(|v| parse_u32(v, line)).collect::<Result<Vec<_>>>()?
            };
            let set = VertexSet::from_labels(&labels).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            ensure!(set.len() == s, MalformedFamily, "line {line}: edge {set} does not have {s} vertices");
            if set.0 & !full_mask(n) != 0 {
                return Err(Error::Parse { line, msg: format!("edge {set} outside 1..={n}") });
            }
            if masks.contains(&set.0) {
                return Err(Error::Parse { line, msg: format!("duplicate edge {set}") });
            }
            masks.push(set.0);
        }
        SetFamily::new(n, s, masks)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `K^(s)_r` on `{1..r}`.
pub fn complete_graph(r: u32, s: u32) -> Result<SetFamily> {
    SetFamily::complete(r, s)
}

/// Smallest `n` with `binom(n, s) >= m`.
fn minimal_ground(m: u64, s: u32) -> Result<u32> {
    if m == 0 {
        return Ok(0);
    }
    let mut n = s;
    loop {
        if binom_u128(n as u64, s as u64).is_some_and(|b| b >= m as u128) {
            return Ok(n);
        }
        n += 1;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
    }
}

/// The first `m` `s`-sets in colex order, walking the layer directly.
pub fn colex_segment_enumerated(m: u64, s: u32) -> Result<SetFamily> {
    let n = minimal_ground(m, s)?;
    Ok(SetFamily::from_sorted(n, s, layer(n, s).take(m as usize).collect()))
}

/// The first `m` `s`-sets in colex order, built from the cascade of `m`:
/// the union over `k` of `{n_s+1, ..., n_{s-k+1}+1} + binom([n_{s-k}], s-k)`.
pub fn colex_segment_from_cascade(m: u64, s: u32) -> Result<SetFamily> {
    ensure!(s >= 1, InvalidParameters, "colex segment needs s >= 1");
    let n = minimal_ground(m, s)?;
    let c = Cascade::of(&m.into(), s)?;
    let mut edges = Vec::with_capacity(m as usize);
    let mut prefix = 0u64;
    for (k, &nk) in c.entries().iter().enumerate() {
        let row = s - k as u32;
        edges.extend(layer(nk as u32, row).map(|e| e | prefix));
        prefix |= 1u64 << nk; // label nk + 1
    }
    edges.sort_unstable();
    SetFamily::new(n, s, edges)
}

/// `C_s(m)`, cross-checked between the two constructions.
pub fn colex_segment(m: u64, s: u32) -> Result<SetFamily> {
    let direct = colex_segment_enumerated(m, s)?;
    let closed = colex_segment_from_cascade(m, s)?;
    if direct != closed {
        return Err(Error::CrossCheck(format!("colex segment ({m},{s}): enumeration and cascade form differ")));
    }
    Ok(direct)
}

/// `R_s(n, m)`: the first `m` `s`-subsets of `{1..n}` in retlex order.
pub fn retlex_segment(n: u32, m: u64, s: u32) -> Result<SetFamily> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let total = crate::binomial::binom(n as u64, s as u64);
    ensure!(total >= m.into(), OutOfRange, "retlex segment needs m <= binom({n},{s}) = {total}");
    let mut edges = Vec::with_capacity(m as usize);
    if m > 0 {
        // Retlex starts at the colex-largest set and walks downward.
        let mut cur = if s == 0 { 0 } else { full_mask(s) << (n - s) };
        edges.push(cur);
        while (edges.len() as u64) < m {
            cur = bits::prev_same_popcount(cur).expect("m <= binom(n, s)");
            edges.push(cur);
        }
    }
    edges.sort_unstable();
    Ok(SetFamily::from_sorted(n, s, edges))
}

/// Layer size as u64, for small parameters.
pub fn layer_size(n: u32, s: u32) -> u64 {
    crate::binomial::binom(n as u64, s as u64).to_u64().unwrap_or(u64::MAX)
}
