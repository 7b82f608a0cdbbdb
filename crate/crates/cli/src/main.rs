mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use hyperclique::bounds::{clique_bound, edge_bound, graph_clique_bound, jung_scan, vertex_bound};
use hyperclique::designs::{builtin_design, builtin_names, recognize_packing_shadow_with, shadow_of_design};
use hyperclique::exec::with_threads;
use hyperclique::oracle::{
    exhaustive_search_with, tightness_sweep, verify_bound_soundness_with, verify_equality_theorems, verify_kkt_with,
    verify_uniqueness, Constraint, DegreeLimit, SearchSpec, TightnessKind, TightnessParams,
};
use hyperclique::uniqueness::{is_clique_jumping, is_clique_unique, is_colex_unique, is_jumping};
use hyperclique::{colex_segment, k_colex, shadow_colex, Cascade, Error, Execution, SetFamily};

use render::{Format, Rendered};

/// Exact clique counting in bounded-degree uniform hypergraphs.
#[derive(Parser)]
#[command(name = "hyperclique", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for search and verification (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Run search and verification kernels on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    /// Seed for randomised commands. Nothing in the library is random, so
    /// this only appears in the envelope.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Wrap JSON output as {command, parameters, payload, status}.
    #[arg(long, global = true)]
    envelope: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Cascade representation of M at level S.
    Cascade { m: BigUint, s: u32 },
    /// Colex initial segments.
    #[command(subcommand)]
    Colex(ColexCmd),
    /// Upper bounds on t-clique counts.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Jumping predicates for the colex segment.
    #[command(subcommand)]
    Jumping(JumpingCmd),
    /// Uniqueness predicates for the colex segment.
    #[command(subcommand)]
    Unique(UniqueCmd),
    /// Print a built-in design, or its S-shadow. Table format is the family text format.
    Construct {
        design: String,
        #[arg(long)]
        shadow: Option<u32>,
    },
    /// Recover the packing whose shadow is the family in FILE.
    Recognize { file: PathBuf, i: u32, r: u32 },
    /// Exhaustive search for the most t-cliques under constraints.
    Search(SearchArgs),
    /// Desk-scale verification sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Ratio of the disjoint-blocks construction to a bound as the resource grows.
    Tightness {
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        u: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        max: u64,
    },
    /// Every m <= MMAX where k_colex(m,S,T)/m reaches a new maximum.
    Jung { s: u32, t: u32, m_max: u64 },
    /// Names of the built-in designs.
    Designs,
}

#[derive(Subcommand)]
enum ColexCmd {
    /// k_colex(M,S,L) for L > S, shadow_colex(M,S,L) for L < S.
    Count { m: BigUint, s: u32, level: Option<u32> },
    /// The first M s-sets in colex order.
    Segment { m: u64, s: u32 },
}

#[derive(Subcommand)]
enum BoundCmd {
    Vertex { n: u32, i: u32, s: u32, t: u32, delta: BigUint },
    Edge { m: BigUint, i: u32, s: u32, t: u32, delta: BigUint },
    Clique { p: BigUint, i: u32, s: u32, u: u32, t: u32, delta: BigUint },
    Graph { p: BigUint, u: u32, t: u32, r: u32 },
}

#[derive(Subcommand)]
enum JumpingCmd {
    Shadow { m: BigUint, s: u32, q: u32 },
    Clique { m: BigUint, s: u32, t: u32, n: u32 },
}

#[derive(Subcommand)]
enum UniqueCmd {
    Colex { m: BigUint, s: u32, q: u32, n: u32 },
    Clique { m: BigUint, s: u32, t: u32, n: u32 },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Kkt { n: u32, s: u32 },
    Uniqueness { n: u32, s: u32 },
    Equality,
    Soundness { n: u32, s: u32 },
}

#[derive(Args)]
struct SearchArgs {
    n: u32,
    s: u32,
    t: u32,
    /// Exactly M edges.
    #[arg(long, conflicts_with = "cliques")]
    edges: Option<u64>,
    /// Exactly P u-cliques, given as U P.
    #[arg(long, num_args = 2, value_names = ["U", "P"])]
    cliques: Option<Vec<u64>>,
    /// Every i-set in at most DELTA edges, given as I DELTA.
    #[arg(long, num_args = 2, value_names = ["I", "DELTA"])]
    degree: Option<Vec<u64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Vertex,
    Edge,
    Clique,
}

impl From<KindArg> for TightnessKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Vertex => TightnessKind::Vertex,
            KindArg::Edge => TightnessKind::Edge,
            KindArg::Clique => TightnessKind::Clique,
        }
    }
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Rendered, Failure>;

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize")
}

fn family_output(h: &SetFamily, extra: Value) -> Rendered {
    let mut payload = extra;
    payload["family"] = value(h);
    Rendered::with_text(payload, h.to_text())
}

fn run(cmd: &Command, exec: Execution) -> Outcome {
    Ok(match cmd {
        Command::Cascade { m, s } => Rendered::new(value(&Cascade::of(m, *s)?)),
        Command::Colex(ColexCmd::Count { m, s, level }) => {
            let level = level.unwrap_or(*s);
            let count = if level >= *s { k_colex(m, *s, level)? } else { shadow_colex(m, *s, level)? };
            let kind = if level > *s {
                "cliques"
            } else if level < *s {
                "shadow"
            } else {
                "edges"
            };
            Rendered::new(json!({"m": m.to_string(), "s": s, "level": level, "kind": kind, "count": count.to_string()}))
        }
        Command::Colex(ColexCmd::Segment { m, s }) => {
            let h = colex_segment(*m, *s)?;
            family_output(&h, json!({"m": m, "s": s}))
        }
        Command::Bound(b) => Rendered::new(value(&match b {
            BoundCmd::Vertex { n, i, s, t, delta } => vertex_bound(*n, *i, *s, *t, delta)?,
            BoundCmd::Edge { m, i, s, t, delta } => edge_bound(m, *i, *s, *t, delta)?,
            BoundCmd::Clique { p, i, s, u, t, delta } => clique_bound(p, *i, *s, *u, *t, delta)?,
            BoundCmd::Graph { p, u, t, r } => graph_clique_bound(p, *u, *t, *r)?,
        })),
        Command::Jumping(j) => Rendered::new(value(&match j {
            JumpingCmd::Shadow { m, s, q } => is_jumping(m, *s, *q)?,
            JumpingCmd::Clique { m, s, t, n } => is_clique_jumping(m, *s, *t, *n)?,
        })),
        Command::Unique(u) => Rendered::new(value(&match u {
            UniqueCmd::Colex { m, s, q, n } => is_colex_unique(m, *s, *q, *n)?,
            UniqueCmd::Clique { m, s, t, n } => is_clique_unique(m, *s, *t, *n)?,
        })),
        Command::Construct { design, shadow } => {
            let d = builtin_design(design)?;
            let h = match shadow {
                Some(s) => shadow_of_design(&d, *s)?,
                None => d.blocks.clone(),
            };
            family_output(&h, json!({"design": design, "block_size": d.block_size(), "shadow": shadow}))
        }
        Command::Recognize { file, i, r } => {
            let text = fs::read_to_string(file).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
            let h = if text.trim_start().starts_with('{') {
                serde_json::from_str::<SetFamily>(&text).map_err(|e| Error::MalformedFamily(e.to_string()))?
            } else {
                SetFamily::parse_text(&text)?
            };
            Rendered::new(value(&recognize_packing_shadow_with(&h, *i, *r, exec)?))
        }
        Command::Search(a) => {
            let constraint = match (&a.edges, &a.cliques) {
                (Some(m), _) => Constraint::Edges { m: *m },
                (None, Some(up)) => Constraint::Cliques { u: narrow(up[0])?, p: up[1] },
                (None, None) => Constraint::Vertices,
            };
            let degree = match &a.degree {
                Some(d) => Some(DegreeLimit { i: narrow(d[0])?, delta: d[1] }),
                None => None,
            };
            let spec = SearchSpec { n: a.n, s: a.s, t: a.t, constraint, degree };
            let result = exhaustive_search_with(&spec, exec)?;
            Rendered::new(json!({"spec": value(&spec), "result": value(&result)}))
        }
        Command::Verify(v) => Rendered::new(value(&match v {
            VerifyCmd::Kkt { n, s } => verify_kkt_with(*n, *s, exec)?,
            VerifyCmd::Uniqueness { n, s } => verify_uniqueness(*n, *s)?,
            VerifyCmd::Equality => verify_equality_theorems()?,
            VerifyCmd::Soundness { n, s } => verify_bound_soundness_with(*n, *s, exec)?,
        })),
        Command::Tightness { kind, i, r, s, u, t, max } => {
            let p = TightnessParams { i: *i, r: *r, s: *s, u: *u, t: *t, max: *max };
            Rendered::new(value(&tightness_sweep((*kind).into(), p)?))
        }
        Command::Jung { s, t, m_max } => {
            let records = jung_scan(*s, *t, *m_max)?;
            let rows: Vec<Value> = records
                .iter()
                .map(|&m| {
                    let k = k_colex(&BigUint::from(m), *s, *t).expect("checked by jung_scan");
                    json!({"m": m, "cliques": k.to_string()})
                })
                .collect();
            Rendered::new(json!({"s": s, "t": t, "m_max": m_max, "records": rows}))
        }
        Command::Designs => {
            let rows: Vec<Value> = builtin_names()
                .into_iter()
                .map(|n| {
                    let d = builtin_design(n).expect("built-in designs load");
                    json!({"name": n, "n": d.ground_n(), "r": d.block_size(), "blocks": d.len()})
                })
                .collect();
            Rendered::new(Value::Array(rows))
        }
    })
}

fn narrow(v: u64) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| Failure::Domain(Error::OutOfRange(format!("{v} does not fit in 32 bits"))))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Cascade { .. } => "cascade",
        Command::Colex(ColexCmd::Count { .. }) => "colex count",
        Command::Colex(ColexCmd::Segment { .. }) => "colex segment",
        Command::Bound(BoundCmd::Vertex { .. }) => "bound vertex",
        Command::Bound(BoundCmd::Edge { .. }) => "bound edge",
        Command::Bound(BoundCmd::Clique { .. }) => "bound clique",
        Command::Bound(BoundCmd::Graph { .. }) => "bound graph",
        Command::Jumping(JumpingCmd::Shadow { .. }) => "jumping shadow",
        Command::Jumping(JumpingCmd::Clique { .. }) => "jumping clique",
        Command::Unique(UniqueCmd::Colex { .. }) => "unique colex",
        Command::Unique(UniqueCmd::Clique { .. }) => "unique clique",
        Command::Construct { .. } => "construct",
        Command::Recognize { .. } => "recognize",
        Command::Search(_) => "search",
        Command::Verify(VerifyCmd::Kkt { .. }) => "verify kkt",
        Command::Verify(VerifyCmd::Uniqueness { .. }) => "verify uniqueness",
        Command::Verify(VerifyCmd::Equality) => "verify equality",
        Command::Verify(VerifyCmd::Soundness { .. }) => "verify soundness",
        Command::Tightness { .. } => "tightness",
        Command::Jung { .. } => "jung",
        Command::Designs => "designs",
    }
}

/// 1 for domain errors, 3 when two independent computations disagreed.
/// Usage errors exit with 2 from clap.
fn exit_code(e: &Error) -> u8 {
    if e.is_internal() {
        3
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let outcome = with_threads(cli.threads, || run(&cli.command, exec));
    match outcome {
        Ok(mut rendered) => {
            if cli.envelope {
                rendered = rendered.enveloped(command_name(&cli.command), &argv, cli.seed);
            }
            let text = rendered.render(cli.format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("{}", json!({"error": "Io", "message": format!("{}: {e}", path.display())}));
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({"error": e.name(), "message": e.to_string()}));
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("{}", json!({"error": "Io", "message": msg}));
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_check_failures_exit_with_3() {
        assert_eq!(exit_code(&Error::CrossCheck("closed form 2, direct count 3".into())), 3);
        assert_eq!(exit_code(&Error::InvalidParameters("t <= s".into())), 1);
        assert_eq!(exit_code(&Error::UnknownDesign("x".into())), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
