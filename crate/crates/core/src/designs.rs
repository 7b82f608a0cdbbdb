//! Steiner systems `S(i,r,n)`, packings `P(i,r)`, their shadows, and
//! recognition of packing shadows from the shadow alone.
//!
//! A family of `r`-sets is a packing if it covers every `i`-set at most
//! once, and a Steiner system if it covers every `i`-set of the ground set
//! exactly once.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::binomial::{binom, binom_u128, falling_factorial_int};
use crate::bits::{self, layer};
use crate::error::{ensure, Error, Result};
use crate::exec::Execution;
use crate::setfamily::{SetFamily, VertexSet};

/// A family of `r`-sets (blocks) on `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDesign {
    pub blocks: SetFamily,
    /// The `i` for which the design is declared a Steiner system, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strength: Option<u32>,
}

impl BlockDesign {
    pub fn new(blocks: SetFamily) -> Self {
        BlockDesign { blocks, strength: None }
    }

    pub fn ground_n(&self) -> u32 {
        self.blocks.ground_n()
    }

    pub fn block_size(&self) -> u32 {
        self.blocks.arity()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DesignKind {
    Steiner { i: u32, r: u32, n: u32 },
    Packing { i: u32, r: u32 },
    Neither,
}

impl fmt::Display for DesignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignKind::Steiner { i, r, n } => write!(f, "steiner({i},{r},{n})"),
            DesignKind::Packing { i, r } => write!(f, "packing({i},{r})"),
            DesignKind::Neither => f.write_str("neither"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignCertificate {
    pub kind: DesignKind,
    pub i: u32,
    pub blocks: usize,
    /// Number of `i`-sets covered at least once.
    pub covered: u64,
    /// For `neither`, the colex-least `i`-set covered twice or more. For a
    /// packing that is not Steiner, the colex-least uncovered `i`-set.
    pub witness: Option<VertexSet>,
    /// Number of blocks containing the witness.
    pub witness_coverage: Option<usize>,
}

/// Classifies `design` as a Steiner system, a packing, or neither, with
/// respect to `i`-sets. The packing test is run twice: once by counting
/// coverage of `i`-sets, once by checking that blocks meet in fewer than
/// `i` points.
pub fn verify_design(design: &BlockDesign, i: u32) -> Result<DesignCertificate> {
    let r = design.block_size();
    let n = design.ground_n();
    ensure!(1 <= i && i <= r, InvalidParameters, "verify_design needs 1 <= i <= r (i={i}, r={r})");
    let counts = design.blocks.degree_counts(i);
    let twice = counts.iter().filter(|(_, &c)| c >= 2).map(|(&m, &c)| (m, c)).min();

    let blocks = design.blocks.edges();
    let mut overlapping = false;
    'outer: for (a, &x) in blocks.iter().enumerate() {
        for &y in &blocks[a + 1..] {
            if (x & y).count_ones() >= i {
                overlapping = true;
                break 'outer;
            }
        }
    }
    if overlapping != twice.is_some() {
        return Err(Error::CrossCheck(format!(
            "packing test disagrees: coverage says {}, intersections say {}",
            twice.is_none(),
            !overlapping
        )));
    }

    let covered = counts.len() as u64;
    let mut cert = DesignCertificate {
        kind: DesignKind::Neither,
        i,
        blocks: blocks.len(),
        covered,
        witness: None,
        witness_coverage: None,
    };
    if let Some((m, c)) = twice {
        cert.witness = Some(VertexSet::from_mask(m));
        cert.witness_coverage = Some(c);
        return Ok(cert);
    }
    let total = binom(n as u64, i as u64);
    let by_blocks = binom(r as u64, i as u64) * blocks.len();
    if by_blocks != covered.into() {
        return Err(Error::CrossCheck("packing coverage count differs from |A| binom(r,i)".into()));
    }
    if by_blocks == total {
        cert.kind = DesignKind::Steiner { i, r, n };
    } else {
        cert.kind = DesignKind::Packing { i, r };
        let hole = layer(n, i).find(|m| !counts.contains_key(m));
        cert.witness = hole.map(VertexSet::from_mask);
        cert.witness_coverage = hole.map(|_| 0);
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityTerm {
    pub j: u32,
    /// `(r-j)_(i-j)` as a decimal string.
    pub divisor: String,
    /// `(n-j)_(i-j)` as a decimal string.
    pub dividend: String,
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divisibility {
    pub holds: bool,
    pub terms: Vec<DivisibilityTerm>,
    /// The conditions are necessary for every `n` but sufficient only for
    /// `n` large enough.
    pub necessary_only: bool,
}

/// The divisibility conditions `(r-j)_(i-j) | (n-j)_(i-j)`, `0 <= j < i`.
pub fn steiner_divisibility(i: u32, r: u32, n: u32) -> Result<Divisibility> {
    ensure!(i <= r && r <= n, InvalidParameters, "divisibility needs i <= r <= n (i={i}, r={r}, n={n})");
    let terms: Vec<DivisibilityTerm> = (0..i)
        .map(|j| {
            let d = falling_factorial_int((r - j) as u64, (i - j) as u64);
            let v = falling_factorial_int((n - j) as u64, (i - j) as u64);
            DivisibilityTerm { j, divides: v.is_multiple_of(&d), divisor: d.to_string(), dividend: v.to_string() }
        })
        .collect();
    Ok(Divisibility { holds: terms.iter().all(|t| t.divides), terms, necessary_only: true })
}

/// Whether an `S(i,r,n)` is available without search: trivial systems,
/// disjoint blocks, and the embedded designs.
pub fn steiner_system_known(i: u32, r: u32, n: u32) -> bool {
    if i == 0 || i > r || r > n || n > 64 {
        return false;
    }
    i == r || n == r || (i == 1 && n.is_multiple_of(r)) || embedded().iter().any(|e| (e.i, e.r, e.n) == (i, r, n))
}

/// Builds an `S(i,r,n)` when [`steiner_system_known`] holds.
pub fn known_steiner_system(i: u32, r: u32, n: u32) -> Result<Option<BlockDesign>> {
    if !steiner_system_known(i, r, n) {
        return Ok(None);
    }
    let blocks = if n == r {
        SetFamily::complete(r, r)?
    } else if i == r {
        ensure!(
            binom_u128(n as u64, r as u64).is_some_and(|b| b <= 1 << 24),
            SearchTooLarge,
            "S({r},{r},{n}) has too many blocks to build"
        );
        SetFamily::complete(n, r)?
    } else if i == 1 && n.is_multiple_of(r) {
        disjoint_blocks(n / r, r)?
    } else {
        let e = embedded().iter().find(|e| (e.i, e.r, e.n) == (i, r, n)).expect("checked above");
        e.design.blocks.clone()
    };
    Ok(Some(BlockDesign { blocks, strength: Some(i) }))
}

/// `∂_s` of the blocks.
pub fn shadow_of_design(design: &BlockDesign, s: u32) -> Result<SetFamily> {
    let r = design.block_size();
    ensure!(s < r, InvalidParameters, "shadow level s={s} must be below the block size r={r}");
    design.blocks.shadow(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RecognitionFailure {
    /// The `i`-set lies in more than `binom(r-i, s-i)` edges.
    DegreeTooLarge { witness: VertexSet, degree: usize, limit: String },
    /// The neighborhood of the `i`-set is not `K^(s-i)_(r-i)`.
    NeighborhoodNotComplete { witness: VertexSet, vertices: u32, edges: usize },
    /// Two reconstructed blocks share the `i`-set.
    BlocksOverlap { witness: VertexSet },
    /// The `s`-set lies in the shadow of the reconstructed blocks but not in `H`.
    ShadowMismatch { witness: VertexSet },
}

impl RecognitionFailure {
    pub fn witness(&self) -> VertexSet {
        match self {
            RecognitionFailure::DegreeTooLarge { witness, .. }
            | RecognitionFailure::NeighborhoodNotComplete { witness, .. }
            | RecognitionFailure::BlocksOverlap { witness }
            | RecognitionFailure::ShadowMismatch { witness } => *witness,
        }
    }
}

impl fmt::Display for RecognitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecognitionFailure::DegreeTooLarge { witness, degree, limit } => {
                write!(f, "{witness} has degree {degree} > {limit}")
            }
            RecognitionFailure::NeighborhoodNotComplete { witness, vertices, edges } => {
                write!(f, "neighborhood of {witness} has {edges} edges on {vertices} vertices, not complete")
            }
            RecognitionFailure::BlocksOverlap { witness } => write!(f, "{witness} lies in two reconstructed blocks"),
            RecognitionFailure::ShadowMismatch { witness } => {
                write!(f, "{witness} is in the shadow of the reconstructed blocks but not an edge")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Recognition {
    Recognized { packing: BlockDesign },
    Failed { failure: RecognitionFailure },
}

impl Recognition {
    pub fn packing(&self) -> Option<&BlockDesign> {
        match self {
            Recognition::Recognized { packing } => Some(packing),
            Recognition::Failed { .. } => None,
        }
    }
}

fn check_recognition_params(s: u32, i: u32, r: u32) -> Result<()> {
    ensure!(i >= 1 && s <= r, InvalidParameters, "recognition needs i >= 1 and s <= r (i={i}, s={s}, r={r})");
    if s == i + 1 {
        return Err(Error::Unsupported("s = i+1: uniqueness of extremal graphs is an open problem".into()));
    }
    ensure!(i + 2 <= s, InvalidParameters, "recognition needs i + 2 <= s (i={i}, s={s})");
    Ok(())
}

/// Links of every covered `i`-set, keyed by the `i`-set, colex sorted.
fn links_by_iset(h: &SetFamily, i: u32) -> Vec<(u64, Vec<u64>)> {
    let mut map: HashMap<u64, Vec<u64>> = HashMap::new();
    for &e in h.edges() {
        bits::for_each_subset(e, i, |sub| map.entry(sub).or_default().push(e ^ sub));
    }
    let mut out: Vec<(u64, Vec<u64>)> = map.into_iter().collect();
    out.sort_unstable_by_key(|(k, _)| *k);
    out
}

/// Recovers the packing whose `s`-shadow is `h`, if there is one.
pub fn recognize_packing_shadow(h: &SetFamily, i: u32, r: u32) -> Result<Recognition> {
    recognize_packing_shadow_with(h, i, r, Execution::default())
}

pub fn recognize_packing_shadow_with(h: &SetFamily, i: u32, r: u32, exec: Execution) -> Result<Recognition> {
    let s = h.arity();
    check_recognition_params(s, i, r)?;
    let fail = |failure| Ok(Recognition::Failed { failure });
    let limit = binom((r - i) as u64, (s - i) as u64).to_usize().unwrap_or(usize::MAX);
    let links = links_by_iset(h, i);

    if let Some((set, l)) = links.iter().find(|(_, l)| l.len() > limit) {
        return fail(RecognitionFailure::DegreeTooLarge {
            witness: VertexSet::from_mask(*set),
            degree: l.len(),
            limit: limit.to_string(),
        });
    }

    // Per i-set: H(I) must be complete on r - i vertices. Since the links
    // are distinct (s-i)-subsets of their union, that means exactly
    // binom(r-i, s-i) of them on exactly r - i vertices.
    let verdicts = exec.map_collect(0..links.len() as u64, |k| {
        let (set, l) = &links[k as usize];
        let support = l.iter().fold(0u64, |a, &e| a | e);
        let vertices = support.count_ones();
        if vertices == r - i && l.len() == limit {
            Ok(set | support)
        } else {
            Err(RecognitionFailure::NeighborhoodNotComplete {
                witness: VertexSet::from_mask(*set),
                vertices,
                edges: l.len(),
            })
        }
    });
    let mut blocks = Vec::with_capacity(verdicts.len());
    for v in verdicts {
        match v {
            Ok(b) => blocks.push(b),
            Err(f) => return fail(f),
        }
    }
    blocks.sort_unstable();
    blocks.dedup();
    let design = BlockDesign::new(SetFamily::new(h.ground_n(), r, blocks)?);

    let cert = verify_design(&design, i)?;
    if cert.kind == DesignKind::Neither {
        let witness = cert.witness.expect("neither carries a witness");
        return fail(RecognitionFailure::BlocksOverlap { witness });
    }
    let shadow = if s == r { design.blocks.clone() } else { design.blocks.shadow(s)? };
    if let Some(&extra) = shadow.difference(h).edges().first() {
        return fail(RecognitionFailure::ShadowMismatch { witness: VertexSet::from_mask(extra) });
    }
    if shadow != *h {
        return Err(Error::CrossCheck("an edge of H is missing from the reconstructed shadow".into()));
    }
    Ok(Recognition::Recognized { packing: design })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionMode {
    /// Every `i`-set lying in an edge.
    Covered,
    /// Every `i`-set of the ground set.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub holds: bool,
    /// Colex-least `i`-set whose neighborhood has the wrong clique count.
    pub witness: Option<VertexSet>,
    pub witness_count: Option<usize>,
    pub expected: String,
}

/// Checks `k^(t-i)(H(I)) = binom(r-i, t-i)` for the chosen `i`-sets `I`.
///
/// Under `Δ_i(H) <= binom(r-i, s-i)` and `t > s`, covered mode holds exactly
/// when `H` is a packing shadow and all mode exactly when it is a Steiner
/// shadow; both are confirmed against [`recognize_packing_shadow`].
pub fn check_neighborhood_clique_criterion(
    h: &SetFamily,
    i: u32,
    r: u32,
    t: u32,
    mode: CriterionMode,
) -> Result<CriterionReport> {
    let s = h.arity();
    check_recognition_params(s, i, r)?;
    ensure!(s < t && t <= r, InvalidParameters, "criterion needs s < t <= r (s={s}, t={t}, r={r})");
    let limit = binom((r - i) as u64, (s - i) as u64).to_usize().unwrap_or(usize::MAX);
    let links = links_by_iset(h, i);
    ensure!(
        links.iter().all(|(_, l)| l.len() <= limit),
        InvalidParameters,
        "criterion needs Δ_i(H) <= binom(r-i, s-i) = {limit}"
    );

    let expected = binom((r - i) as u64, (t - i) as u64).to_usize().unwrap_or(usize::MAX);
    let count = |l: &[u64]| -> Result<usize> {
        let support = l.iter().fold(0u64, |a, &e| a | e);
        let labels = bits::labels(support);
        let mut relabel = vec![0u32; 64];
        for (j, &v) in labels.iter().enumerate() {
            relabel[v as usize - 1] = j as u32 + 1;
        }
        let nb = SetFamily::new(labels.len() as u32, s - i, l.iter().map(|&e| bits::permute_mask(e, &relabel)))?;
        nb.clique_count(t - i)
    };

    let mut witness = None;
    for (set, l) in &links {
        let c = count(l)?;
        if c != expected {
            witness = Some((*set, c));
            break;
        }
    }
    if mode == CriterionMode::All {
        // Uncovered i-sets have empty neighborhoods and zero cliques, which
        // fails whenever binom(r-i, t-i) > 0.
        let hole = layer(h.ground_n(), i).find(|m| links.binary_search_by_key(m, |(k, _)| *k).is_err());
        if let Some(m) = hole {
            if witness.is_none_or(|(w, _)| m < w) {
                witness = Some((m, 0));
            }
        }
    }
    let holds = witness.is_none();

    let recognized = recognize_packing_shadow(h, i, r)?;
    let agrees = match (&recognized, mode) {
        (Recognition::Recognized { .. }, CriterionMode::Covered) => holds,
        (Recognition::Recognized { packing }, CriterionMode::All) => {
            holds == matches!(verify_design(packing, i)?.kind, DesignKind::Steiner { .. })
        }
        (Recognition::Failed { .. }, _) => !holds,
    };
    if !agrees {
        return Err(Error::CrossCheck(format!("neighborhood criterion ({holds}) disagrees with recognition")));
    }
    Ok(CriterionReport {
        holds,
        witness: witness.map(|(m, _)| VertexSet::from_mask(m)),
        witness_count: witness.map(|(_, c)| c),
        expected: expected.to_string(),
    })
}

struct Embedded {
    name: &'static str,
    i: u32,
    r: u32,
    n: u32,
    design: BlockDesign,
}

const DESIGN_DATA: &str = include_str!("../data/designs.txt");

fn load_embedded() -> Result<Vec<Embedded>> {
    let mut out = Vec::new();
    let mut sections: Vec<(usize, &str, Vec<&str>)> = Vec::new();
    for (idx, line) in DESIGN_DATA.lines().enumerate() {
        if let Some(header) = line.strip_prefix('@') {
            sections.push((idx + 1, header.trim(), Vec::new()));
        } else if let Some(last) = sections.last_mut() {
            last.2.push(line);
        }
    }
    for (line, header, body) in sections {
        let mut parts = header.split_whitespace();
        let (Some(name), Some(i), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse { line, msg: "design header must be '@ name i'".into() });
        };
        let i: u32 = i.parse().map_err(|_| Error::Parse { line, msg: format!("bad strength '{i}'") })?;
        let blocks = SetFamily::parse_text(&body.join("\n"))?;
        let design = BlockDesign { blocks, strength: Some(i) };
        let (r, n) = (design.block_size(), design.ground_n());
        let name: &'static str = Box::leak(name.to_string().into_boxed_str());
        out.push(Embedded { name, i, r, n, design });
    }
    Ok(out)
}

fn embedded() -> &'static [Embedded] {
    static CELL: OnceLock<Vec<Embedded>> = OnceLock::new();
    CELL.get_or_init(|| load_embedded().expect("embedded design data parses"))
}

/// Names of the embedded designs, excluding the `disjoint(a,r)` family.
pub fn builtin_names() -> Vec<&'static str> {
    embedded().iter().map(|e| e.name).collect()
}

fn disjoint_blocks(a: u32, r: u32) -> Result<SetFamily> {
    let n = a.checked_mul(r).filter(|&n| n <= 64).ok_or(Error::TooManyVertices(a.saturating_mul(r)))?;
    let blocks = (0..a).map(|k| bits::full_mask(r) << (k * r));
    SetFamily::new(n, r, blocks)
}

fn parse_disjoint(name: &str) -> Option<(u32, u32)> {
    let inner = name.strip_prefix("disjoint")?.trim();
    let inner = inner.strip_prefix('(')?.strip_suffix(')')?;
    let (a, r) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, r.trim().parse().ok()?))
}

/// An embedded design by name, re-verified before it is returned:
/// `fano`, `s348`, `pg23`, `ag23`, or `disjoint(a,r)`.
pub fn builtin_design(name: &str) -> Result<BlockDesign> {
    let name = name.trim();
    let (design, i) = if let Some((a, r)) = parse_disjoint(name) {
        ensure!(r >= 1, InvalidParameters, "disjoint blocks need r >= 1");
        (BlockDesign { blocks: disjoint_blocks(a, r)?, strength: Some(1) }, 1)
    } else {
        let e = embedded().iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownDesign(name.to_string()))?;
        (e.design.clone(), e.i)
    };
    let cert = verify_design(&design, i)?;
    if !matches!(cert.kind, DesignKind::Steiner { .. }) {
        return Err(Error::CrossCheck(format!("embedded design '{name}' is {} for i={i}", cert.kind)));
    }
    Ok(design)
}
