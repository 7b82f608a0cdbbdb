//! Brute-force ground truth at desk scale.
//!
//! Families are subsets of the edge universe `binom([n], s)`, stored as a
//! `u32` whose bit `j` selects the `j`-th `s`-set in colex order. The colex
//! segment of length `m` is therefore the mask with the low `m` bits set,
//! and the retlex segment the mask with the high `m` bits set.
//!
//! Isomorphism classes are found by minimising over all `n!` vertex
//! permutations, so everything here requires `n <= 8`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::binomial::binom;
use crate::bits::{self, layer};
use crate::bounds::{clique_bound, edge_bound, graph_clique_bound, vertex_bound, BoundValue};
use crate::cascade::{k_colex, shadow_colex};
use crate::designs::{
    builtin_design, recognize_packing_shadow, shadow_of_design, verify_design, BlockDesign, DesignKind,
};
use crate::error::{ensure, Error, Result};
use crate::exec::Execution;
use crate::setfamily::{colex_segment, complete_graph, retlex_segment, SetFamily};
use crate::uniqueness::{is_clique_unique, is_colex_unique};

/// Largest edge universe [`exhaustive_search`] accepts.
pub const SEARCH_LIMIT: u64 = 24;
/// Largest edge universe the verification sweeps accept.
pub const VERIFY_LIMIT: u64 = 20;
pub const MAX_ISO_VERTICES: u32 = 8;

/// All permutations of `{1..n}` in lexicographic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(k) = (1..cur.len()).rev().find(|&k| cur[k - 1] < cur[k]) else {
            return out;
        };
        let l = (k..cur.len()).rev().find(|&l| cur[l] > cur[k - 1]).expect("successor exists");
        cur.swap(k - 1, l);
        cur[k..].reverse();
        out.push(cur.clone());
    }
}

/// Canonical byte string of a family: `[n, s]` followed by the sorted edge
/// masks, minimised over all vertex relabellings. Two families have equal
/// forms exactly when they are isomorphic.
pub fn canonical_form(h: &SetFamily) -> Result<Vec<u8>> {
    let n = h.ground_n();
    ensure!(n <= MAX_ISO_VERTICES, InvalidParameters, "canonical form needs n <= 8 (n={n})");
    let mut best: Option<Vec<u8>> = None;
    let mut buf: Vec<u8> = Vec::with_capacity(h.len());
    for perm in permutations(n) {
        buf.clear();
        buf.extend(h.edges().iter().map(|&e| bits::permute_mask(e, &perm) as u8));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf.as_slice() < &b[2..]) {
            let mut v = vec![n as u8, h.arity() as u8];
            v.extend_from_slice(&buf);
            best = Some(v);
        }
    }
    Ok(best.unwrap_or_else(|| vec![n as u8, h.arity() as u8]))
}

/// The edge universe `binom([n], s)` in colex order, with lookup tables.
#[derive(Debug, Clone)]
pub struct Universe {
    n: u32,
    s: u32,
    edges: Vec<u64>,
    index: HashMap<u64, u32>,
}

impl Universe {
    pub fn new(n: u32, s: u32, limit: u64) -> Result<Self> {
        ensure!(n <= MAX_ISO_VERTICES, SearchTooLarge, "exhaustive work needs n <= 8 (n={n})");
        ensure!(s <= n, InvalidParameters, "s={s} exceeds n={n}");
        let size = binom(n as u64, s as u64).to_u64().unwrap_or(u64::MAX);
        ensure!(size <= limit, SearchTooLarge, "binom({n},{s}) = {size} edges exceeds the limit of {limit}");
        let edges: Vec<u64> = layer(n, s).collect();
        let index = edges.iter().enumerate().map(|(j, &e)| (e, j as u32)).collect();
        Ok(Universe { n, s, edges, index })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn len(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Number of families, `2^|universe|`.
    pub fn families(&self) -> u64 {
        1u64 << self.len()
    }

    pub fn family(&self, u: u32) -> SetFamily {
        let edges = (0..self.len()).filter(|j| u >> j & 1 == 1).map(|j| self.edges[j as usize]);
        SetFamily::new(self.n, self.s, edges).expect("universe edges are valid")
    }

    pub fn encode(&self, h: &SetFamily) -> Result<u32> {
        ensure!(h.arity() == self.s && h.ground_n() <= self.n, InvalidParameters, "family does not fit the universe");
        Ok(h.edges().iter().fold(0u32, |u, e| u | 1 << self.index[e]))
    }

    /// For each `t`-set in colex order, the universe mask of its `s`-subsets.
    pub fn clique_masks(&self, t: u32) -> Vec<u32> {
        if t < self.s || t > self.n {
            return Vec::new();
        }
        layer(self.n, t).map(|c| bits::subsets(c, self.s).iter().fold(0u32, |u, e| u | 1 << self.index[e])).collect()
    }

    /// For each `i`-set in colex order, the universe mask of edges containing it.
    pub fn containing_masks(&self, i: u32) -> Vec<u32> {
        layer(self.n, i)
            .map(|set| {
                self.edges.iter().enumerate().filter(|(_, &e)| e & set == set).fold(0u32, |u, (j, _)| u | 1 << j)
            })
            .collect()
    }

    /// For each edge, the bit set of its `q`-subsets within the `q`-layer.
    fn shadow_masks(&self, q: u32) -> Vec<u128> {
        let rank: HashMap<u64, u32> = layer(self.n, q).enumerate().map(|(k, m)| (m, k as u32)).collect();
        self.edges.iter().map(|&e| bits::subsets(e, q).iter().fold(0u128, |a, sub| a | 1u128 << rank[sub])).collect()
    }

    /// For every permutation, the induced map on edge indices.
    pub fn permutation_maps(&self) -> Vec<Vec<u8>> {
        permutations(self.n)
            .iter()
            .map(|p| self.edges.iter().map(|&e| self.index[&bits::permute_mask(e, p)] as u8).collect())
            .collect()
    }

    pub fn apply(map: &[u8], u: u32) -> u32 {
        let mut out = 0u32;
        let mut rest = u;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            out |= 1 << map[j];
            rest &= rest - 1;
        }
        out
    }

    /// Least image of `u` under vertex permutations: an isomorphism
    /// invariant that is itself a member of the class.
    pub fn canonical_code(maps: &[Vec<u8>], u: u32) -> u32 {
        maps.iter().map(|m| Self::apply(m, u)).min().unwrap_or(u)
    }
}

fn count_contained(masks: &[u32], u: u32) -> u64 {
    masks.iter().filter(|&&c| c & !u == 0).count() as u64
}

fn count_meeting(masks: &[u32], u: u32) -> u64 {
    masks.iter().filter(|&&c| c & u != 0).count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Constraint {
    /// Every family on `n` vertices.
    Vertices,
    /// Exactly `m` edges.
    Edges { m: u64 },
    /// Exactly `p` cliques of size `u`.
    Cliques { u: u32, p: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeLimit {
    pub i: u32,
    pub delta: u64,
}

/// Maximise `k^t` over `s`-graphs on `{1..n}` under the constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub n: u32,
    pub s: u32,
    pub t: u32,
    pub constraint: Constraint,
    pub degree: Option<DegreeLimit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// Maximum of `k^t`; `None` when no family meets the constraints.
    pub optimum: Option<u64>,
    /// One canonical representative per isomorphism class attaining the
    /// optimum, ordered by canonical code.
    pub witnesses: Vec<SetFamily>,
    pub class_count: usize,
    /// Families that met every constraint.
    pub families_scanned: u64,
}

#[derive(Default)]
struct SearchAcc {
    best: Option<u64>,
    optimal: Vec<u32>,
    scanned: u64,
}

impl SearchAcc {
    fn offer(&mut self, value: u64, u: u32) {
        self.scanned += 1;
        match self.best.map(|b| value.cmp(&b)) {
            None | Some(Ordering::Greater) => {
                self.best = Some(value);
                self.optimal.clear();
                self.optimal.push(u);
            }
            Some(Ordering::Equal) => self.optimal.push(u),
            Some(Ordering::Less) => {}
        }
    }

    fn merge(mut a: SearchAcc, mut b: SearchAcc) -> SearchAcc {
        let scanned = a.scanned + b.scanned;
        let mut out = match a.best.cmp(&b.best) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                a.optimal.append(&mut b.optimal);
                a
            }
        };
        out.scanned = scanned;
        out
    }
}

struct Searcher {
    e: u32,
    objective: Vec<u32>,
    objective_is_edges: bool,
    constraint: Constraint,
    clique_constraint: Vec<u32>,
    /// Per edge, the containing-masks of its `i`-subsets.
    degree_masks: Option<(Vec<Vec<u32>>, u64)>,
}

impl Searcher {
    fn degree_ok(&self, j: u32, u: u32) -> bool {
        match &self.degree_masks {
            Some((masks, delta)) => masks[j as usize].iter().all(|&c| (c & u).count_ones() as u64 <= *delta),
            None => true,
        }
    }

    fn leaf(&self, u: u32, acc: &mut SearchAcc) {
        match self.constraint {
            Constraint::Edges { m } if u.count_ones() as u64 != m => return,
            Constraint::Cliques { p, .. } if count_contained(&self.clique_constraint, u) != p => return,
            _ => {}
        }
        let value = if self.objective_is_edges { u.count_ones() as u64 } else { count_contained(&self.objective, u) };
        acc.offer(value, u);
    }

    /// Decides edges `j..e` given the family `u` on edges `0..j`.
    fn dfs(&self, j: u32, u: u32, acc: &mut SearchAcc) {
        match self.constraint {
            Constraint::Edges { m } => {
                let have = u.count_ones() as u64;
                if have + (self.e - j) as u64 > m && have == m {
                    return self.leaf(u, acc);
                }
                if have + ((self.e - j) as u64) < m {
                    return;
                }
            }
            Constraint::Cliques { p, .. } => {
                if count_contained(&self.clique_constraint, u) > p {
                    return;
                }
            }
            Constraint::Vertices => {}
        }
        if j == self.e {
            return self.leaf(u, acc);
        }
        self.dfs(j + 1, u, acc);
        let with = u | 1 << j;
        if self.degree_ok(j, with) {
            self.dfs(j + 1, with, acc);
        }
    }

    /// Runs the subtree whose first `depth` decisions are the bits of `prefix`.
    fn chunk(&self, prefix: u32, depth: u32) -> SearchAcc {
        let mut acc = SearchAcc::default();
        let mut u = 0u32;
        for j in 0..depth {
            if prefix >> j & 1 == 1 {
                u |= 1 << j;
                if !self.degree_ok(j, u) {
                    return acc;
                }
            }
        }
        if let Constraint::Edges { m } = self.constraint {
            if u.count_ones() as u64 > m {
                return acc;
            }
        }
        self.dfs(depth, u, &mut acc);
        acc
    }
}

/// Number of fixed leading decisions per parallel chunk.
const PREFIX_DEPTH: u32 = 8;

pub fn exhaustive_search(spec: &SearchSpec) -> Result<SearchResult> {
    exhaustive_search_with(spec, Execution::default())
}

pub fn exhaustive_search_with(spec: &SearchSpec, exec: Execution) -> Result<SearchResult> {
    let SearchSpec { n, s, t, constraint, degree } = *spec;
    ensure!(s >= 1 && s <= t, InvalidParameters, "search needs 1 <= s <= t (s={s}, t={t})");
    let uni = Universe::new(n, s, SEARCH_LIMIT)?;
    if let Constraint::Cliques { u, .. } = constraint {
        ensure!(s <= u, InvalidParameters, "clique constraint needs u >= s (u={u}, s={s})");
    }
    let degree_masks = match degree {
        Some(DegreeLimit { i, delta }) => {
            ensure!(1 <= i && i < s, InvalidParameters, "degree limit needs 1 <= i < s (i={i}, s={s})");
            let containing = uni.containing_masks(i);
            let rank: HashMap<u64, usize> = layer(n, i).enumerate().map(|(k, m)| (m, k)).collect();
            let per_edge = uni
                .edges
                .iter()
                .map(|&e| bits::subsets(e, i).iter().map(|sub| containing[rank[sub]]).collect())
                .collect();
            Some((per_edge, delta))
        }
        None => None,
    };
    let searcher = Searcher {
        e: uni.len(),
        objective: uni.clique_masks(t),
        objective_is_edges: t == s,
        constraint,
        clique_constraint: match constraint {
            Constraint::Cliques { u, .. } => uni.clique_masks(u),
            _ => Vec::new(),
        },
        degree_masks,
    };
    let depth = PREFIX_DEPTH.min(uni.len());
    let acc = exec.map_reduce(
        0..(1u64 << depth),
        SearchAcc::default,
        |prefix| searcher.chunk(prefix as u32, depth),
        SearchAcc::merge,
    );
    let Some(optimum) = acc.best else {
        return Ok(SearchResult {
            status: SearchStatus::Infeasible,
            optimum: None,
            witnesses: Vec::new(),
            class_count: 0,
            families_scanned: acc.scanned,
        });
    };
    let reps = classify(&uni, acc.optimal)?;
    Ok(SearchResult {
        status: SearchStatus::Feasible,
        optimum: Some(optimum),
        class_count: reps.len(),
        witnesses: reps.iter().map(|&u| uni.family(u)).collect(),
        families_scanned: acc.scanned,
    })
}

/// Splits a set of families, closed under isomorphism, into classes and
/// returns the canonical code of each, sorted.
fn classify(uni: &Universe, mut members: Vec<u32>) -> Result<Vec<u32>> {
    members.sort_unstable();
    let maps = uni.permutation_maps();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut reps = Vec::new();
    for &u in &members {
        if seen.contains(&u) {
            continue;
        }
        let mut code = u;
        for m in &maps {
            let image = Universe::apply(m, u);
            if seen.insert(image)
                && members.binary_search(&image).is_err() {
                    return Err(Error::CrossCheck(format!(
                        "isomorphic image of an optimal family is missing from the optimum set ({} vs {})",
                        uni.family(u),
                        uni.family(image)
                    )));
                }
            code = code.min(image);
        }
        reps.push(code);
    }
    reps.sort_unstable();
    Ok(reps)
}

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<SetFamily>,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        let (expected, found) = (expected.to_string(), found.to_string());
        Check { pass: expected == found, name: name.into(), expected, found, counterexample: None }
    }

    fn holds(name: impl Into<String>, expected: impl Into<String>, found: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), expected: expected.into(), found: found.into(), pass, counterexample: None }
    }

    fn with_family(mut self, family: SetFamily) -> Self {
        if !self.pass {
            self.counterexample = Some(family);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub families_scanned: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub first_failure: Option<Check>,
}

impl VerificationReport {
    fn new(name: &str, n: Option<u32>, s: Option<u32>, families_scanned: u64, checks: Vec<Check>) -> Self {
        let first_failure = checks.iter().find(|c| !c.pass).cloned();
        VerificationReport {
            name: name.into(),
            n,
            s,
            families_scanned,
            passed: first_failure.is_none(),
            checks,
            first_failure,
        }
    }
}

/// Per edge count `m`: best value seen and the least family attaining it.
#[derive(Clone)]
struct Extremes {
    best: Vec<Option<(u64, u32)>>,
    maximise: bool,
}

impl Extremes {
    fn new(e: u32, maximise: bool) -> Self {
        Extremes { best: vec![None; e as usize + 1], maximise }
    }

    #[inline]
    fn offer(&mut self, m: usize, value: u64, u: u32) {
        let better = match self.best[m] {
            None => true,
            Some((b, bu)) => {
                if self.maximise {
                    value > b || (value == b && u < bu)
                } else {
                    value < b || (value == b && u < bu)
                }
            }
        };
        if better {
            self.best[m] = Some((value, u));
        }
    }

    fn merge(mut self, other: Extremes) -> Extremes {
        for (m, o) in other.best.into_iter().enumerate() {
            if let Some((v, u)) = o {
                self.offer(m, v, u);
            }
        }
        self
    }
}

#[derive(Clone)]
struct KktAcc {
    shadows: Vec<Extremes>,
    cliques: Vec<Extremes>,
    upshadows: Vec<Extremes>,
    scanned: u64,
}

impl KktAcc {
    fn merge(self, other: KktAcc) -> KktAcc {
        let zip = |a: Vec<Extremes>, b: Vec<Extremes>| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect();
        KktAcc {
            shadows: zip(self.shadows, other.shadows),
            cliques: zip(self.cliques, other.cliques),
            upshadows: zip(self.upshadows, other.upshadows),
            scanned: self.scanned + other.scanned,
        }
    }
}

/// Subset-OR tables over the low and high halves of the universe.
struct SplitOr {
    low_bits: u32,
    low: Vec<u128>,
    high: Vec<u128>,
}

impl SplitOr {
    fn new(masks: &[u128]) -> Self {
        let e = masks.len() as u32;
        let low_bits = e / 2;
        let table = |part: &[u128]| {
            let mut t = vec![0u128; 1 << part.len()];
            for x in 1..t.len() {
                let j = x.trailing_zeros() as usize;
                t[x] = t[x & (x - 1)] | part[j];
            }
            t
        };
        SplitOr { low_bits, low: table(&masks[..low_bits as usize]), high: table(&masks[low_bits as usize..]) }
    }

    #[inline]
    fn size(&self, u: u32) -> u64 {
        let lo = u & ((1 << self.low_bits) - 1);
        (self.low[lo as usize] | self.high[(u >> self.low_bits) as usize]).count_ones() as u64
    }
}

/// Exhaustive check of the Kruskal–Katona theorem and its clique and
/// upshadow forms: among all families with `m` edges on `{1..n}`, the
/// colex segment minimises every `q`-shadow and maximises every `k^t`, and
/// the retlex segment minimises every `t`-upshadow.
pub fn verify_kkt(n: u32, s: u32) -> Result<VerificationReport> {
    verify_kkt_with(n, s, Execution::default())
}

pub fn verify_kkt_with(n: u32, s: u32, exec: Execution) -> Result<VerificationReport> {
    ensure!(s >= 1, InvalidParameters, "verify_kkt needs s >= 1");
    let uni = Universe::new(n, s, VERIFY_LIMIT)?;
    let e = uni.len();
    let shadow_tables: Vec<SplitOr> = (0..s).map(|q| SplitOr::new(&uni.shadow_masks(q))).collect();
    let upper: Vec<u32> = (s + 1..=n).collect();
    let clique_masks: Vec<Vec<u32>> = upper.iter().map(|&t| uni.clique_masks(t)).collect();

    let fresh = || KktAcc {
        shadows: (0..s).map(|_| Extremes::new(e, false)).collect(),
        cliques: upper.iter().map(|_| Extremes::new(e, true)).collect(),
        upshadows: upper.iter().map(|_| Extremes::new(e, false)).collect(),
        scanned: 0,
    };
    let chunk_bits = e.min(PREFIX_DEPTH);
    let inner = e - chunk_bits;
    let acc = exec.map_reduce(
        0..(1u64 << chunk_bits),
        fresh,
        |c| {
            let mut acc = fresh();
            for low in 0..(1u32 << inner) {
                let u = (c as u32) << inner | low;
                let m = u.count_ones() as usize;
                for (q, table) in shadow_tables.iter().enumerate() {
                    acc.shadows[q].offer(m, table.size(u), u);
                }
                for (k, masks) in clique_masks.iter().enumerate() {
                    acc.cliques[k].offer(m, count_contained(masks, u), u);
                    acc.upshadows[k].offer(m, count_meeting(masks, u), u);
                }
                acc.scanned += 1;
            }
            acc
        },
        KktAcc::merge,
    );

    let mut checks = Vec::new();
    for m in 0..=e {
        let mb = BigUint::from(m);
        let colex = uni.encode(&colex_segment(m as u64, s)?.with_ground(n)?)?;
        if colex != (1u32 << m).wrapping_sub(1) && m < 32 {
            return Err(Error::CrossCheck(format!("colex segment of length {m} is not the low universe bits")));
        }
        let retlex = retlex_segment(n, m as u64, s)?;
        for q in 0..s {
            let expected = shadow_colex(&mb, s, q)?;
            let (found, u) = acc.shadows[q as usize].best[m as usize].expect("every m occurs");
            let c = Check::new(format!("min shadow q={q} m={m}"), &expected, found);
            let witness = if BigUint::from(found) < expected { u } else { colex };
            checks.push(c.with_family(uni.family(witness)));
        }
        for (k, &t) in upper.iter().enumerate() {
            let expected = k_colex(&mb, s, t)?;
            let (found, u) = acc.cliques[k].best[m as usize].expect("every m occurs");
            let c = Check::new(format!("max cliques t={t} m={m}"), &expected, found);
            let witness = if BigUint::from(found) > expected { u } else { colex };
            checks.push(c.with_family(uni.family(witness)));

            let expected = retlex.upshadow(t)?.len() as u64;
            let (found, u) = acc.upshadows[k].best[m as usize].expect("every m occurs");
            let c = Check::new(format!("min upshadow t={t} m={m}"), expected, found);
            let witness = if found < expected { uni.family(u) } else { retlex.clone() };
            checks.push(c.with_family(witness));
        }
    }
    Ok(VerificationReport::new("kkt", Some(n), Some(s), acc.scanned, checks))
}

/// Isomorphism class code of every family of the universe.
fn class_table(uni: &Universe) -> Vec<u32> {
    let maps = uni.permutation_maps();
    let total = uni.families() as usize;
    let mut code = vec![u32::MAX; total];
    for u in 0..total {
        if code[u] != u32::MAX {
            continue;
        }
        // u is the least unvisited family, hence the least in its orbit.
        for m in &maps {
            code[Universe::apply(m, u as u32) as usize] = u as u32;
        }
    }
    code
}

/// Per edge count `m`: best value and the set of classes attaining it.
#[derive(Clone)]
struct ClassExtremes {
    best: Vec<Option<(u64, Vec<u32>)>>,
    maximise: bool,
}

impl ClassExtremes {
    fn new(e: u32, maximise: bool) -> Self {
        ClassExtremes { best: vec![None; e as usize + 1], maximise }
    }

    fn offer(&mut self, m: usize, value: u64, class: u32) {
        match &mut self.best[m] {
            slot @ None => *slot = Some((value, vec![class])),
            Some((b, classes)) => {
                let better = if self.maximise { value > *b } else { value < *b };
                if better {
                    *b = value;
                    classes.clear();
                    classes.push(class);
                } else if value == *b && !classes.contains(&class) {
                    classes.push(class);
                }
            }
        }
    }
}

/// Compares the uniqueness predicates with isomorphism-class counts of the
/// extremal families. Colex uniqueness is checked in both directions for
/// `m > s+1`; clique uniqueness only in the direction the predicate claims.
fn class_count(k: usize) -> String {
    if k == 1 {
        "1 class".into()
    } else {
        format!("{k} classes")
    }
}

pub fn verify_uniqueness(n: u32, s: u32) -> Result<VerificationReport> {
    ensure!(s >= 1 && s < n, InvalidParameters, "verify_uniqueness needs 1 <= s < n");
    let uni = Universe::new(n, s, VERIFY_LIMIT)?;
    let e = uni.len();
    let code = class_table(&uni);
    let shadow_tables: Vec<SplitOr> = (1..s).map(|q| SplitOr::new(&uni.shadow_masks(q))).collect();
    let upper: Vec<u32> = (s + 1..=n).collect();
    let clique_masks: Vec<Vec<u32>> = upper.iter().map(|&t| uni.clique_masks(t)).collect();
    let mut shadows: Vec<ClassExtremes> = shadow_tables.iter().map(|_| ClassExtremes::new(e, false)).collect();
    let mut cliques: Vec<ClassExtremes> = upper.iter().map(|_| ClassExtremes::new(e, true)).collect();
    for u in 0..uni.families() as u32 {
        let m = u.count_ones() as usize;
        let class = code[u as usize];
        for (k, table) in shadow_tables.iter().enumerate() {
            shadows[k].offer(m, table.size(u), class);
        }
        for (k, masks) in clique_masks.iter().enumerate() {
            cliques[k].offer(m, count_contained(masks, u), class);
        }
    }

    let mut checks = Vec::new();
    for m in 0..=e {
        let mb = BigUint::from(m);
        let colex_class = code[((1u64 << m) - 1) as usize];
        for q in 1..s {
            let verdict = is_colex_unique(&mb, s, q, n)?;
            let (value, classes) = shadows[q as usize - 1].best[m as usize].clone().expect("every m occurs");
            let name = format!("colex-unique m={m} q={q} (shadow {value})");
            let has_colex = classes.contains(&colex_class);
            let (expected, pass) = if verdict.verdict {
                ("1 class".to_string(), classes.len() == 1)
            } else {
                (">= 2 classes".to_string(), classes.len() >= 2)
            };
            let mut c = Check::holds(name, expected, class_count(classes.len()), pass && has_colex);
            if !c.pass {
                let other = classes.iter().copied().find(|&x| x != colex_class).unwrap_or(colex_class);
                c.counterexample = Some(uni.family(other));
            }
            checks.push(c);
        }
        if m == 0 || m == e {
            continue;
        }
        for (k, &t) in upper.iter().enumerate() {
            let verdict = is_clique_unique(&mb, s, t, n)?;
            let (value, classes) = cliques[k].best[m as usize].clone().expect("every m occurs");
            let name = format!("clique-unique m={m} t={t} (cliques {value})");
            let has_colex = classes.contains(&colex_class);
            let (expected, pass) =
                if verdict.verdict { ("1 class".to_string(), classes.len() == 1) } else { ("any".to_string(), true) };
            let mut c = Check::holds(name, expected, class_count(classes.len()), pass && has_colex);
            if !c.pass {
                let other = classes.iter().copied().find(|&x| x != colex_class).unwrap_or(colex_class);
                c.counterexample = Some(uni.family(other));
            }
            checks.push(c);
        }
    }
    Ok(VerificationReport::new("uniqueness", Some(n), Some(s), uni.families(), checks))
}

fn exact_int(v: &BoundValue) -> Option<BigUint> {
    v.exact().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_biguint())
}

fn bound_check(name: String, bound: &BoundValue, count: usize, family: &SetFamily) -> Check {
    let found = BigUint::from(count);
    let pass = exact_int(bound).is_some_and(|b| b == found);
    Check::holds(name, bound.to_string(), found.to_string(), pass).with_family(family.clone())
}

/// Equality cases of the three bounds, checked on explicit designs, plus
/// small exhaustive searches confirming that the attaining families are
/// packing or Steiner shadows.
pub fn verify_equality_theorems() -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let mut steiner: Vec<(String, BlockDesign, u32)> = Vec::new();
    for name in crate::designs::builtin_names() {
        let d = builtin_design(name)?;
        let i = d.strength.expect("embedded designs declare their strength");
        steiner.push((name.to_string(), d, i));
    }
    for (a, r) in [(2u32, 4u32), (3, 3), (2, 5)] {
        steiner.push((format!("disjoint({a},{r})"), builtin_design(&format!("disjoint({a},{r})"))?, 1));
    }
    for r in 4..=6u32 {
        for i in 1..r {
            steiner.push((format!("K_{r} as S({i},{r},{r})"), BlockDesign::new(SetFamily::complete(r, r)?), i));
        }
    }

    for (name, design, i) in &steiner {
        let (r, n) = (design.block_size(), design.ground_n());
        let cert = verify_design(design, *i)?;
        checks.push(Check::new(format!("{name}: is S({i},{r},{n})"), format!("steiner({i},{r},{n})"), cert.kind));

        // Block counts of every shadow level of a packing.
        for j in *i..=r {
            let shadow = if j == r { design.blocks.clone() } else { design.blocks.shadow(j)? };
            let expected = binom(r as u64, j as u64) * design.len();
            checks.push(Check::new(format!("{name}: |shadow_{j}| = binom({r},{j}) |A|"), expected, shadow.len()));
        }

        for s in i + 1..=r {
            let h = if s == r { design.blocks.clone() } else { shadow_of_design(design, s)? };
            let delta = binom((r - i) as u64, (s - i) as u64);
            checks.push(
                Check::new(format!("{name}: Δ_{i} of shadow_{s}"), &delta, h.max_degree(*i)?).with_family(h.clone()),
            );
            for t in s..=r {
                let count = h.clique_count(t)?;
                let vb = vertex_bound(n, *i, s, t, &delta)?;
                checks.push(bound_check(format!("{name}: k^{t}(shadow_{s}) = vertex bound"), &vb.value, count, &h));
            }
            // A Steiner system of strength i is a packing for every i' >= i.
            for ip in *i..s {
                let d = binom((r - ip) as u64, (s - ip) as u64);
                for t in s + 1..=r {
                    let count = h.clique_count(t)?;
                    let eb = edge_bound(&BigUint::from(h.len()), ip, s, t, &d)?;
                    checks.push(bound_check(
                        format!("{name}: k^{t}(shadow_{s}) = edge bound with i={ip}"),
                        &eb.value,
                        count,
                        &h,
                    ));
                    for u in s + 1..t {
                        let p = h.clique_count(u)?;
                        let cb = clique_bound(&BigUint::from(p), ip, s, u, t, &d)?;
                        checks.push(bound_check(
                            format!("{name}: k^{t}(shadow_{s}) = clique bound with i={ip}, u={u}"),
                            &cb.value,
                            count,
                            &h,
                        ));
                    }
                }
            }
        }
    }

    // Disjoint complete graphs aK^(s)_r.
    for a in 1..=3u32 {
        for r in 3..=6u32 {
            if a * r > 64 {
                continue;
            }
            for s in 2..r {
                let g = shadow_of_design(&builtin_design(&format!("disjoint({a},{r})"))?, s)?;
                for i in 1..s {
                    let d = binom((r - i) as u64, (s - i) as u64);
                    for u in s..=r {
                        for t in u..=r {
                            if t == s {
                                continue;
                            }
                            let p = g.clique_count(u)?;
                            let cb = clique_bound(&BigUint::from(p), i, s, u, t, &d)?;
                            let count = g.clique_count(t)?;
                            checks.push(bound_check(
                                format!("{a}K^({s})_{r}: k^{t} = clique bound i={i} u={u}"),
                                &cb.value,
                                count,
                                &g,
                            ));
                        }
                    }
                }
                if s == 2 {
                    for u in 3..=r {
                        for t in u..=r {
                            let p = BigUint::from(g.clique_count(u)?);
                            let gb = graph_clique_bound(&p, u, t, r)?;
                            checks.push(bound_check(
                                format!("{a}K_{r}: k^{t} = graph bound u={u}"),
                                &gb.value,
                                g.clique_count(t)?,
                                &g,
                            ));
                        }
                    }
                }
            }
        }
    }

    // Converse at tiny scale: every optimal family is a packing shadow.
    let converse = [
        (
            "vertex bound n=5 s=3 t=4 i=1 Δ=6",
            SearchSpec {
                n: 5,
                s: 3,
                t: 4,
                constraint: Constraint::Vertices,
                degree: Some(DegreeLimit { i: 1, delta: 6 }),
            },
            vertex_bound(5, 1, 3, 4, &BigUint::from(6u8))?.value,
            5u32,
            true,
        ),
        (
            "edge bound n=6 s=3 m=4 t=4 i=1 Δ=3",
            SearchSpec {
                n: 6,
                s: 3,
                t: 4,
                constraint: Constraint::Edges { m: 4 },
                degree: Some(DegreeLimit { i: 1, delta: 3 }),
            },
            edge_bound(&BigUint::from(4u8), 1, 3, 4, &BigUint::from(3u8))?.value,
            4,
            false,
        ),
        (
            "clique bound n=6 s=3 u=4 p=5 t=5 i=1 Δ=6",
            SearchSpec {
                n: 6,
                s: 3,
                t: 5,
                constraint: Constraint::Cliques { u: 4, p: 5 },
                degree: Some(DegreeLimit { i: 1, delta: 6 }),
            },
            clique_bound(&BigUint::from(5u8), 1, 3, 4, 5, &BigUint::from(6u8))?.value,
            5,
            false,
        ),
    ];
    let mut scanned = 0;
    for (name, spec, bound, r, steiner_expected) in converse {
        let res = exhaustive_search(&spec)?;
        scanned += res.families_scanned;
        let optimum = res.optimum.map(|v| v.to_string()).unwrap_or_else(|| "infeasible".into());
        let expected = exact_int(&bound).map(|b| b.to_string()).unwrap_or_else(|| bound.to_string());
        checks.push(Check::new(format!("{name}: search optimum = bound"), expected, optimum));
        for w in &res.witnesses {
            let rec = recognize_packing_shadow(w, 1, r)?;
            let kind = match rec.packing() {
                Some(p) => verify_design(p, 1)?.kind.to_string(),
                None => "not a packing shadow".into(),
            };
            let ok = match rec.packing() {
                Some(p) => !steiner_expected || matches!(verify_design(p, 1)?.kind, DesignKind::Steiner { .. }),
                None => false,
            };
            let expected = if steiner_expected { "steiner shadow" } else { "packing shadow" };
            checks.push(
                Check::holds(format!("{name}: optimal family recognised"), expected, kind, ok).with_family(w.clone()),
            );
        }
    }
    Ok(VerificationReport::new("equality", None, None, scanned, checks))
}

/// Checks every family of the universe against every applicable bound.
pub fn verify_bound_soundness(n: u32, s: u32) -> Result<VerificationReport> {
    verify_bound_soundness_with(n, s, Execution::default())
}

#[derive(Default)]
struct SoundAcc {
    checks: u64,
    violation: Option<(u32, String, u64, String)>,
    scanned: u64,
}

impl SoundAcc {
    fn merge(a: SoundAcc, b: SoundAcc) -> SoundAcc {
        let violation = match (a.violation, b.violation) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        SoundAcc { checks: a.checks + b.checks, violation, scanned: a.scanned + b.scanned }
    }
}

type BoundKey = (u8, u32, u32, u32, u64, u64);

pub fn verify_bound_soundness_with(n: u32, s: u32, exec: Execution) -> Result<VerificationReport> {
    ensure!(s >= 2 && s < n, InvalidParameters, "soundness sweep needs 2 <= s < n");
    let uni = Universe::new(n, s, VERIFY_LIMIT)?;
    let e = uni.len();
    let containing: Vec<Vec<u32>> = (1..s).map(|i| uni.containing_masks(i)).collect();
    let clique_masks: Vec<Vec<u32>> = (0..=n).map(|t| uni.clique_masks(t)).collect();

    // Bounds depend on a handful of small integers; cache their floors.
    let lookup = |cache: &mut HashMap<BoundKey, u64>, key: BoundKey| -> u64 {
        *cache.entry(key).or_insert_with(|| {
            let (kind, i, u, t, a, d) = key;
            let (a, d) = (BigUint::from(a), BigUint::from(d));
            let r = match kind {
                0 => vertex_bound(n, i, s, t, &d),
                1 => edge_bound(&a, i, s, t, &d),
                2 => clique_bound(&a, i, s, u, t, &d),
                _ => graph_clique_bound(&a, u, t, d.to_u32().unwrap_or(u32::MAX)),
            };
            r.map(|r| r.integer_value.to_u64().unwrap_or(u64::MAX)).unwrap_or(u64::MAX)
        })
    };

    let chunk_bits = e.min(PREFIX_DEPTH);
    let inner = e - chunk_bits;
    let acc = exec.map_reduce(
        0..(1u64 << chunk_bits),
        SoundAcc::default,
        |c| {
            let mut acc = SoundAcc::default();
            let mut cache: HashMap<BoundKey, u64> = HashMap::new();
            for low in 0..(1u32 << inner) {
                let u = (c as u32) << inner | low;
                acc.scanned += 1;
                let m = u.count_ones() as u64;
                let k: Vec<u64> =
                    (0..=n).map(|t| if t < s { 0 } else { count_contained(&clique_masks[t as usize], u) }).collect();
                let fail = |acc: &mut SoundAcc, label: String, count: u64, bound: u64| {
                    acc.checks += 1;
                    if count > bound && acc.violation.as_ref().is_none_or(|v| u < v.0) {
                        acc.violation = Some((u, label, count, bound.to_string()));
                    }
                };
                for i in 1..s {
                    let delta =
                        containing[i as usize - 1].iter().map(|&c| (c & u).count_ones() as u64).max().unwrap_or(0);
                    for t in s..=n {
                        let b = lookup(&mut cache, (0, i, 0, t, 0, delta));
                        fail(&mut acc, format!("vertex bound i={i} t={t} Δ={delta}"), k[t as usize], b);
                        if t > s {
                            let b = lookup(&mut cache, (1, i, 0, t, m, delta));
                            fail(&mut acc, format!("edge bound i={i} t={t} m={m} Δ={delta}"), k[t as usize], b);
                        }
                        for uu in s + 1..t {
                            let p = k[uu as usize];
                            let b = lookup(&mut cache, (2, i, uu, t, p, delta));
                            fail(
                                &mut acc,
                                format!("clique bound i={i} u={uu} t={t} p={p} Δ={delta}"),
                                k[t as usize],
                                b,
                            );
                        }
                    }
                    if s == 2 && i == 1 {
                        let r = delta as u32 + 1;
                        for uu in 3..=n {
                            for t in uu..=n.min(r) {
                                if uu > r {
                                    continue;
                                }
                                let p = k[uu as usize];
                                let b = lookup(&mut cache, (3, 1, uu, t, p, r as u64));
                                fail(&mut acc, format!("graph bound u={uu} t={t} r={r} p={p}"), k[t as usize], b);
                            }
                        }
                    }
                }
            }
            acc
        },
        SoundAcc::merge,
    );

    let mut checks = vec![Check::new("bound checks performed", acc.checks, acc.checks)];
    match acc.violation {
        Some((u, label, count, bound)) => {
            checks.push(Check::holds(label, format!("<= {bound}"), count.to_string(), false).with_family(uni.family(u)))
        }
        None => checks.push(Check::holds("no family exceeds a bound", "0 violations", "0 violations", true)),
    }
    Ok(VerificationReport::new("soundness", Some(n), Some(s), acc.scanned, checks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TightnessKind {
    Vertex,
    Edge,
    Clique,
}

/// Parameters of a tightness sweep. `u` is used by the clique kind only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessParams {
    pub i: u32,
    pub r: u32,
    pub s: u32,
    pub u: u32,
    pub t: u32,
    /// Largest resource (vertices, edges, or `u`-cliques) to sweep.
    pub max: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightnessRow {
    /// Number of vertices, edges, or `u`-cliques allowed.
    pub resource: u64,
    #[serde(serialize_with = "crate::binomial::serialize_decimal")]
    pub achieved: BigUint,
    pub bound: String,
    /// `achieved / bound` as an exact fraction.
    pub ratio: String,
    pub ratio_f64: f64,
    /// The guaranteed lower bound on the ratio, `1 - binom(r, s)/m` style.
    pub guarantee: String,
    pub meets_guarantee: bool,
}

fn rational(v: BigUint) -> BigRational {
    BigRational::from(BigInt::from(v))
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Ratio of what disjoint copies of `K^(s)_r` achieve to the bound, as the
/// resource grows. The edge and clique kinds place `a = ⌊resource / block⌋`
/// disjoint copies; the edge kind adds a colex segment with the remaining
/// edges inside one more block. The vertex kind uses `⌊n/r⌋` disjoint blocks
/// for `i = 1` and known Steiner systems otherwise.
pub fn tightness_sweep(kind: TightnessKind, p: TightnessParams) -> Result<Vec<TightnessRow>> {
    let TightnessParams { i, r, s, u, t, max } = p;
    ensure!(1 <= i && i < s && s < t && t <= r, InvalidParameters, "tightness needs 1 <= i < s < t <= r");
    let delta = binom((r - i) as u64, (s - i) as u64);
    let block = complete_graph(r, s)?;
    let per_block_t = block.clique_count(t)? as u64;
    let mut rows = Vec::new();
    match kind {
        TightnessKind::Edge => {
            let per_block = block.len() as u64;
            for m in 1..=max {
                let (a, b) = (m / per_block, m % per_block);
                let rest = colex_segment(b, s)?;
                let achieved = BigUint::from(a * per_block_t + rest.clique_count(t)? as u64);
                let bound = edge_bound(&BigUint::from(m), i, s, t, &delta)?;
                let guarantee = BigRational::new(BigInt::from(m - per_block.min(m)), BigInt::from(m));
                rows.push(row(m, achieved, &bound.value, guarantee)?);
            }
        }
        TightnessKind::Clique => {
            ensure!(s < u && u < t, InvalidParameters, "clique tightness needs s < u < t");
            let per_block = block.clique_count(u)? as u64;
            for pp in 1..=max {
                let a = pp / per_block;
                let achieved = BigUint::from(a * per_block_t);
                let bound = clique_bound(&BigUint::from(pp), i, s, u, t, &delta)?;
                let guarantee = BigRational::new(BigInt::from(pp - per_block.min(pp)), BigInt::from(pp));
                rows.push(row(pp, achieved, &bound.value, guarantee)?);
            }
        }
        TightnessKind::Vertex => {
            for n in r as u64..=max.min(64) {
                let n32 = n as u32;
                let (achieved, guarantee) = if let Some(d) = crate::designs::known_steiner_system(i, r, n32)? {
                    let h = if s == r { d.blocks.clone() } else { shadow_of_design(&d, s)? };
                    (BigUint::from(h.clique_count(t)?), BigRational::from(BigInt::from(1)))
                } else if i == 1 {
                    let a = n / r as u64;
                    let g = BigRational::new(BigInt::from(a * r as u64), BigInt::from(n));
                    (BigUint::from(a * per_block_t), g)
                } else {
                    continue;
                };
                let bound = vertex_bound(n32, i, s, t, &delta)?;
                rows.push(row(n, achieved, &bound.value, guarantee)?);
            }
        }
    }
    Ok(rows)
}

fn row(resource: u64, achieved: BigUint, bound: &BoundValue, guarantee: BigRational) -> Result<TightnessRow> {
    let exact = bound.exact().cloned().ok_or_else(|| Error::CrossCheck("tightness bound is not exact".into()))?;
    let ratio = if exact.is_zero() { BigRational::from(BigInt::from(1)) } else { rational(achieved.clone()) / &exact };
    if ratio > BigRational::from(BigInt::from(1)) {
        return Err(Error::CrossCheck(format!("construction with {achieved} cliques exceeds the bound {exact}")));
    }
    Ok(TightnessRow {
        resource,
        achieved,
        bound: exact.to_string(),
        ratio_f64: ratio_f64(&ratio),
        meets_guarantee: ratio >= guarantee,
        ratio: ratio.to_string(),
        guarantee: guarantee.to_string(),
    })
}

/// Canonical forms of the distinct classes in `families`, in first-seen order.
pub fn distinct_classes(families: &[SetFamily]) -> Result<Vec<Vec<u8>>> {
    let mut seen = BTreeMap::new();
    let mut order = Vec::new();
    for f in families {
        let c = canonical_form(f)?;
        if seen.insert(c.clone(), ()).is_none() {
            order.push(c);
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
        let p = permutations(3);
        assert_eq!(p[0], vec![1, 2, 3]);
        assert_eq!(p[5], vec![3, 2, 1]);
    }

    #[test]
    fn canonical_examples() {
        let c = colex_segment(7, 3).unwrap().with_ground(6).unwrap();
        let perm = [6, 2, 5, 1, 3, 4];
        assert_eq!(canonical_form(&c).unwrap(), canonical_form(&c.relabel(&perm).unwrap()).unwrap());
        let k = SetFamily::complete(4, 3).unwrap();
        assert_eq!(canonical_form(&k).unwrap(), canonical_form(&colex_segment(4, 3).unwrap()).unwrap());
        let path = SetFamily::from_label_lists(4, 2, &[&[1, 2], &[2, 3]]).unwrap();
        let matching = SetFamily::from_label_lists(4, 2, &[&[1, 2], &[3, 4]]).unwrap();
        assert_ne!(canonical_form(&path).unwrap(), canonical_form(&matching).unwrap());
    }

    #[test]
    fn universe_codes_agree_with_canonical_form() {
        let uni = Universe::new(5, 3, 24).unwrap();
        let maps = uni.permutation_maps();
        let mut by_code: HashMap<u32, Vec<u8>> = HashMap::new();
        let mut by_form: HashMap<Vec<u8>, u32> = HashMap::new();
        for u in 0..uni.families() as u32 {
            let code = Universe::canonical_code(&maps, u);
            let form = canonical_form(&uni.family(u)).unwrap();
            assert_eq!(by_code.entry(code).or_insert_with(|| form.clone()), &form);
            assert_eq!(*by_form.entry(form).or_insert(code), code);
        }
        // 3-graphs on 5 vertices, up to isomorphism.
        assert_eq!(by_code.len(), 34);
        let table = class_table(&uni);
        for u in 0..uni.families() as u32 {
            assert_eq!(table[u as usize], Universe::canonical_code(&maps, u));
        }
    }

    #[test]
    fn search_examples() {
        let spec = SearchSpec { n: 5, s: 3, t: 4, constraint: Constraint::Edges { m: 7 }, degree: None };
        let res = exhaustive_search(&spec).unwrap();
        assert_eq!(res.optimum, Some(2));
        let colex = canonical_form(&colex_segment(7, 3).unwrap().with_ground(5).unwrap()).unwrap();
        assert!(res.witnesses.iter().any(|w| canonical_form(w).unwrap() == colex));
        assert_eq!(res.families_scanned, 120);

        let spec = SearchSpec {
            n: 5,
            s: 3,
            t: 4,
            constraint: Constraint::Vertices,
            degree: Some(DegreeLimit { i: 1, delta: 6 }),
        };
        let res = exhaustive_search(&spec).unwrap();
        assert_eq!(res.optimum, Some(5));
        assert_eq!(res.witnesses, vec![SetFamily::complete(5, 3).unwrap()]);

        let spec = SearchSpec {
            n: 6,
            s: 3,
            t: 4,
            constraint: Constraint::Vertices,
            degree: Some(DegreeLimit { i: 2, delta: 2 }),
        };
        let res = exhaustive_search(&spec).unwrap();
        let bound = vertex_bound(6, 2, 3, 4, &BigUint::from(2u8)).unwrap();
        assert!(BigUint::from(res.optimum.unwrap()) <= bound.integer_value);
        // Two 4-sets on 6 vertices share a pair, which would then lie in
        // four triples.
        assert_eq!(res.optimum, Some(1));
    }

    #[test]
    fn search_infeasible() {
        // Five 4-sets on 5 vertices need all ten triples, which a 1-degree
        // limit of 5 rules out.
        let spec = SearchSpec {
            n: 5,
            s: 3,
            t: 5,
            constraint: Constraint::Cliques { u: 4, p: 5 },
            degree: Some(DegreeLimit { i: 1, delta: 5 }),
        };
        let res = exhaustive_search(&spec).unwrap();
        assert_eq!(res.status, SearchStatus::Infeasible);
        assert_eq!(res.optimum, None);
    }

    #[test]
    fn search_is_deterministic() {
        let spec = SearchSpec {
            n: 6,
            s: 2,
            t: 3,
            constraint: Constraint::Edges { m: 7 },
            degree: Some(DegreeLimit { i: 1, delta: 3 }),
        };
        let a = exhaustive_search_with(&spec, Execution::Sequential).unwrap();
        let b = exhaustive_search_with(&spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kkt_small() {
        let r = verify_kkt(4, 2).unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
        assert_eq!(r.families_scanned, 64);
        let r = verify_kkt(5, 3).unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
        assert_eq!(r.families_scanned, 1024);
    }

    #[test]
    fn uniqueness_small() {
        let r = verify_uniqueness(5, 3).unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
        let r = verify_uniqueness(4, 2).unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
    }

    #[test]
    fn equality_report() {
        let r = verify_equality_theorems().unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
    }

    #[test]
    fn soundness_small() {
        let r = verify_bound_soundness(5, 3).unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
        let r = verify_bound_soundness(6, 2).unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
    }

    #[test]
    fn tightness_edge() {
        let p = TightnessParams { i: 1, r: 4, s: 2, u: 0, t: 3, max: 200 };
        let rows = tightness_sweep(TightnessKind::Edge, p).unwrap();
        assert!(rows.iter().all(|r| r.meets_guarantee));
        assert_eq!(rows[11].ratio, "1");
        assert!(rows.iter().filter(|r| r.resource >= 120).all(|r| r.ratio_f64 >= 0.95));
    }
}
