//! Command-line front end. `main` only forwards to [`run`].

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::benchharness::{format_table, solve_slope, time_min, BenchRow};
use crate::cost::{lincomb_finalize, CostStructure, FewestEdges, LinComb, LinCombParams, ShortestFastest};
use crate::error::SolveError;
use crate::generate::{generate, random_instance, Family, RandomParams};
use crate::graph::{EdgeId, NodeId, TemporalGraph, Walk};
use crate::io::{emit_instance, emit_rep_file, emit_space_time, parse_any, InputFile, ParseError};
use crate::mincost::{min_cost_walks, reconstruct_min_walk, solve_profile, solve_profile_bounded_source, MinCostResult};
use crate::oracle::oracle_min_costs;
use crate::reachability::reachable_edges;
use crate::representation::{build_half_extend_respecting, from_space_time, to_space_time, DoublySortedRep};
use crate::zerocycle::min_cost_walks_zero;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REPRESENTATION: i32 = 2;
pub const EXIT_COST: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tempwalk", version, about = "Minimum-cost temporal walks under waiting constraints")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum cost from a source to every node.
    Mincost(MincostArgs),
    /// Brute-force reference with the same flags and output as `mincost`.
    Oracle(OracleArgs),
    /// Earliest arrival at every node (positive travel times only).
    Reach {
        input: PathBuf,
        #[arg(long, short)]
        source: NodeId,
    },
    /// Pareto-optimal (departure, arrival) pairs from a source, or with
    /// `--target`, earliest arrival by start time for every start node.
    Profile {
        input: PathBuf,
        #[arg(long, short, conflicts_with = "target", required_unless_present = "target")]
        source: Option<NodeId>,
        #[arg(long, short)]
        target: Option<NodeId>,
    },
    /// Rewrite an instance as a doubly-sorted or space-time representation.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
        /// Require an order covering every walk; fails on zero-cycles.
        #[arg(long)]
        half_extend: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Emit a generated instance.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Time the scan on generated instances of growing size.
    Bench {
        #[arg(long, value_parser = parse_family, default_value = "random")]
        family: Family,
        /// Edge counts, ascending.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "fewest")]
        cost: CostName,
        #[arg(long)]
        allow_zero_cycles: bool,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    DoublySorted,
    SpaceTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostName {
    Fewest,
    ShortestFastest,
    MinWaiting,
    LatestDeparture,
    Lincomb,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(long, short)]
    pub source: NodeId,
    #[arg(long, value_enum, default_value = "fewest")]
    pub cost: CostName,
    /// Seven comma-separated weights for `--cost lincomb`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub deltas: Option<Vec<i64>>,
    /// Per-edge costs for the `d5` term, comma-separated, in edge id order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub edge_costs: Option<Vec<i64>>,
    /// Print a witness walk after each value.
    #[arg(long)]
    pub walks: bool,
}

#[derive(Debug, Args)]
pub struct MincostArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub cost: CostArgs,
    /// Accept zero-cycles; runs the block-reordering solver.
    #[arg(long)]
    pub allow_zero_cycles: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub cost: CostArgs,
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Accepted for symmetry with `mincost`; the oracle always handles zero-cycles.
    #[arg(long)]
    pub allow_zero_cycles: bool,
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let code = match e {
            ParseError::Rep(_) => EXIT_REPRESENTATION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::Rep(_) => EXIT_REPRESENTATION,
            e if e.is_cost_violation() => EXIT_COST,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<crate::error::RepError> for Failure {
    fn from(e: crate::error::RepError) -> Self {
        Failure {
            code: EXIT_REPRESENTATION,
            message: e.to_string(),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<InputFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(parse_any(&text)?)
}

fn write_output(path: &Option<PathBuf>, text: &str, out: &mut String) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

/// Representation used by `mincost`; zero-cycles are rejected unless allowed.
fn representation(input: InputFile, allow_zero: bool) -> Result<(TemporalGraph, DoublySortedRep), Failure> {
    match input {
        InputFile::Rep(g, rep) => Ok((g, rep)),
        InputFile::SpaceTime(g, st) => {
            if allow_zero {
                Ok((g.clone(), DoublySortedRep::build_time_sorted(&g)))
            } else {
                let rep = from_space_time(&g, &st)?;
                Ok((g, rep))
            }
        }
        InputFile::Instance(g) => {
            if allow_zero {
                let rep = DoublySortedRep::build_time_sorted(&g);
                Ok((g, rep))
            } else {
                let rep = build_half_extend_respecting(&g).map_err(|e| Failure {
                    code: EXIT_REPRESENTATION,
                    message: format!("{e} (pass --allow-zero-cycles to accept zero-cycles)"),
                })?;
                Ok((g, rep))
            }
        }
    }
}

fn lincomb_from(args: &CostArgs, g: &TemporalGraph) -> Result<LinComb, Failure> {
    let mut params = match (args.cost, &args.deltas) {
        (CostName::Lincomb, Some(d)) => {
            let d: [i64; 7] = d
                .clone()
                .try_into()
                .map_err(|d: Vec<i64>| Failure::usage(format!("--deltas needs 7 values, got {}", d.len())))?;
            LinCombParams::new(d)
        }
        (CostName::Lincomb, None) => return Err(Failure::usage("--cost lincomb requires --deltas")),
        (CostName::MinWaiting, _) => LinCombParams::min_waiting(),
        (CostName::LatestDeparture, _) => LinCombParams::latest_departure(),
        _ => unreachable!(),
    };
    if let Some(c) = &args.edge_costs {
        params = params.with_edge_costs(c.clone());
    }
    LinComb::for_graph(params, g).map_err(|e| Failure::usage(e.to_string()))
}

fn check_flags(args: &CostArgs) -> Result<(), Failure> {
    let lin = matches!(args.cost, CostName::Lincomb | CostName::MinWaiting | CostName::LatestDeparture);
    if args.deltas.is_some() && args.cost != CostName::Lincomb {
        return Err(Failure::usage("--deltas is only valid with --cost lincomb"));
    }
    if args.edge_costs.is_some() && !lin {
        return Err(Failure::usage("--edge-costs needs a linear-combination cost"));
    }
    Ok(())
}

/// Per-node summary: a printable value and the last edge achieving it.
type Summary = Vec<Option<(String, EdgeId)>>;

fn min_by<V: Copy, K: Ord>(list: &[(EdgeId, V)], key: impl Fn(EdgeId, &V) -> K) -> Option<(K, EdgeId)> {
    let mut best: Option<(K, EdgeId)> = None;
    for (e, c) in list {
        let k = key(*e, c);
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, *e));
        }
    }
    best
}

/// Solve with a chosen cost on the given per-node lists source.
enum Lists<'a> {
    Solver {
        g: &'a TemporalGraph,
        rep: &'a DoublySortedRep,
        zero: bool,
    },
    Oracle {
        g: &'a TemporalGraph,
        max_edges: usize,
    },
}

struct Report {
    summary: Summary,
    walks: Vec<Option<Walk>>,
}

fn run_cost<C: CostStructure>(
    lists: &Lists<'_>,
    cs: &C,
    s: NodeId,
    per_node: impl Fn(&[(EdgeId, C::Value)]) -> Option<(String, EdgeId)>,
) -> Result<Report, Failure> {
    match *lists {
        Lists::Solver { g, rep, zero } => {
            let res: MinCostResult<C::Value> = if zero {
                min_cost_walks_zero(g, rep, cs, s)?
            } else {
                min_cost_walks(g, rep, cs, s)?
            };
            let per: Vec<Vec<(EdgeId, C::Value)>> = (0..g.node_count()).map(|v| res.list(v).to_vec()).collect();
            let summary: Summary = per.iter().map(|l| per_node(l)).collect();
            let walks = summary
                .iter()
                .map(|b| b.as_ref().map(|(_, e)| reconstruct_min_walk(&res, *e).expect("reachable edge")))
                .collect();
            Ok(Report { summary, walks })
        }
        Lists::Oracle { g, max_edges } => {
            let res = oracle_min_costs(g, cs, s, max_edges)?;
            // arrival order, as the solver lists are
            let mut by_arr: Vec<EdgeId> = (0..g.edge_count()).collect();
            by_arr.sort_by_key(|&e| (g.edge(e).arr(), e));
            let mut per: Vec<Vec<(EdgeId, C::Value)>> = vec![Vec::new(); g.node_count()];
            for e in by_arr {
                if let Some(c) = res.costs[e] {
                    per[g.edge(e).head].push((e, c));
                }
            }
            let summary: Summary = per.iter().map(|l| per_node(l)).collect();
            let walks = summary
                .iter()
                .map(|b| b.as_ref().map(|(_, e)| res.witnesses[*e].clone().unwrap()))
                .collect();
            Ok(Report { summary, walks })
        }
    }
}

fn cost_report(lists: &Lists<'_>, g: &TemporalGraph, args: &CostArgs) -> Result<Report, Failure> {
    check_flags(args)?;
    let s = args.source;
    if s >= g.node_count() {
        return Err(SolveError::SourceOutOfRange { node: s, n: g.node_count() }.into());
    }
    match args.cost {
        CostName::Fewest => run_cost(lists, &FewestEdges, s, |l| {
            min_by(l, |_, &c| c).map(|(k, e)| (k.to_string(), e))
        }),
        CostName::ShortestFastest => run_cost(lists, &ShortestFastest, s, |l| {
            min_by(l, |e, c| (g.edge(e).arr() - c.dep, c.edges)).map(|((d, k), e)| (format!("{d} {k}"), e))
        }),
        _ => {
            let lc = lincomb_from(args, g)?;
            let lc2 = lc.clone();
            run_cost(lists, &lc, s, move |l| lincomb_finalize(&lc2, g, l).map(|(v, e)| (v.to_string(), e)))
        }
    }
}

fn print_report(r: &Report, walks: bool, out: &mut String) {
    for (v, b) in r.summary.iter().enumerate() {
        match b {
            None => {
                let _ = writeln!(out, "{v} UNREACHABLE");
            }
            Some((value, _)) => {
                let _ = write!(out, "{v} {value}");
                if walks {
                    out.push_str(" walk");
                    for e in r.walks[v].as_ref().unwrap().edges() {
                        let _ = write!(out, " {e}");
                    }
                }
                out.push('\n');
            }
        }
    }
}

fn execute(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Mincost(a) => {
            let (g, rep) = representation(read_input(&a.input)?, a.allow_zero_cycles)?;
            let lists = Lists::Solver {
                g: &g,
                rep: &rep,
                zero: a.allow_zero_cycles,
            };
            let r = cost_report(&lists, &g, &a.cost)?;
            print_report(&r, a.cost.walks, out);
        }
        Command::Oracle(a) => {
            let input = read_input(&a.input)?;
            let g = input.graph();
            let lists = Lists::Oracle {
                g,
                max_edges: a.max_edges.unwrap_or(g.edge_count()),
            };
            let r = cost_report(&lists, g, &a.cost)?;
            print_report(&r, a.cost.walks, out);
        }
        Command::Reach { input, source } => {
            let g = read_input(&input)?.graph().clone();
            let rep = DoublySortedRep::build_fully_sorted(&g)?;
            let res = reachable_edges(&g, &rep, source)?;
            for (v, a) in res.earliest_arrival().iter().enumerate() {
                match a {
                    Some(t) => writeln!(out, "{v} {t}"),
                    None => writeln!(out, "{v} UNREACHABLE"),
                }
                .unwrap();
            }
        }
        Command::Profile { input, source, target } => {
            let g = read_input(&input)?.graph().clone();
            if let Some(s) = source {
                let rep = build_half_extend_respecting(&g)?;
                for (v, pairs) in solve_profile(&g, &rep, s)?.iter().enumerate() {
                    let _ = write!(out, "{v}");
                    if pairs.is_empty() {
                        out.push_str(" UNREACHABLE");
                    }
                    for (d, a) in pairs {
                        let _ = write!(out, " {d}:{a}");
                    }
                    out.push('\n');
                }
            } else {
                let x = target.unwrap();
                let gr = g.reversed();
                let rep = build_half_extend_respecting(&gr)?;
                for (v, segs) in solve_profile_bounded_source(&gr, &rep, x)?.iter().enumerate() {
                    let _ = write!(out, "{v}");
                    if segs.is_empty() {
                        out.push_str(" UNREACHABLE");
                    }
                    for sg in segs {
                        match sg.start {
                            Some(st) => write!(out, " [{st},{}]:{}", sg.end, sg.arrival),
                            None => write!(out, " [-inf,{}]:{}", sg.end, sg.arrival),
                        }
                        .unwrap();
                    }
                    out.push('\n');
                }
            }
        }
        Command::Convert {
            input,
            to,
            half_extend,
            output,
        } => {
            let g = read_input(&input)?.graph().clone();
            let rep = if half_extend {
                build_half_extend_respecting(&g)?
            } else {
                DoublySortedRep::build_time_sorted(&g)
            };
            let text = match to {
                ConvertTarget::DoublySorted => emit_rep_file(&g, &rep),
                ConvertTarget::SpaceTime => emit_space_time(&g, &to_space_time(&g, &rep)),
            };
            write_output(&output, &text, out)?;
        }
        Command::Gen {
            family,
            n,
            seed,
            output,
        } => {
            if n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            write_output(&output, &emit_instance(&generate(family, n, seed)), out)?;
        }
        Command::Bench {
            family,
            sizes,
            cost,
            allow_zero_cycles,
            reps,
            seed,
        } => {
            if sizes.windows(2).any(|w| w[0] > w[1]) {
                return Err(Failure::usage("--sizes must be ascending"));
            }
            let rows = bench_rows(family, &sizes, cost, allow_zero_cycles, reps, seed)?;
            out.push_str(&format_table(&rows));
            if rows.len() >= 2 {
                let _ = writeln!(out, "slope {:.3}", solve_slope(&rows));
            }
        }
    }
    Ok(())
}

/// Instance with about `m` edges for the benchmark families.
pub fn bench_instance(family: Family, m: usize, seed: u64) -> TemporalGraph {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    match family {
        // out-degree 32, as for the random family
        Family::ZeroHeavy => random_instance(&RandomParams::zero_heavy((m / 32).max(1), m, true), &mut rng),
        Family::ZeroAcyclic => random_instance(&RandomParams::zero_heavy((m / 32).max(1), m, false), &mut rng),
        Family::LbDep | Family::LbArr => generate(family, (m / 2).max(1), seed),
        Family::Random => random_instance(&RandomParams::large(m), &mut rng),
    }
}

pub fn bench_rows(
    family: Family,
    sizes: &[usize],
    cost: CostName,
    zero: bool,
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRow>, Failure> {
    let mut rows = Vec::new();
    for &m in sizes {
        let g = bench_instance(family, m, seed);
        let (build, rep) = time_min(1, || {
            if zero {
                Ok(DoublySortedRep::build_time_sorted(&g))
            } else {
                build_half_extend_respecting(&g)
            }
        });
        let rep = rep?;
        let s = crate::benchharness::bench_source(&g);
        let (solve, work) = match cost {
            CostName::Fewest => bench_one(&g, &rep, &FewestEdges, s, zero, reps)?,
            CostName::ShortestFastest => bench_one(&g, &rep, &ShortestFastest, s, zero, reps)?,
            CostName::MinWaiting | CostName::LatestDeparture | CostName::Lincomb => {
                let lc = if cost == CostName::LatestDeparture {
                    LinComb::latest_departure()
                } else {
                    LinComb::min_waiting()
                };
                bench_one(&g, &rep, &lc, s, zero, reps)?
            }
        };
        rows.push(BenchRow {
            edges: g.edge_count(),
            build,
            solve,
            work,
        });
    }
    Ok(rows)
}

fn bench_one<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
    zero: bool,
    reps: usize,
) -> Result<(std::time::Duration, usize), SolveError> {
    let (t, res) = time_min(reps, || {
        if zero {
            min_cost_walks_zero(g, rep, cs, s)
        } else {
            min_cost_walks(g, rep, cs, s)
        }
    });
    Ok((t, res?.counters.total()))
}

/// Parse `args`, run, and return the exit code with captured stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if code == EXIT_OK {
                (code, e.to_string(), String::new())
            } else {
                (code, String::new(), e.to_string())
            };
        }
    };
    let mut out = String::new();
    match execute(cli, &mut out) {
        Ok(()) => (EXIT_OK, out, String::new()),
        Err(f) => (f.code, out, format!("error: {}\n", f.message)),
    }
}

pub fn main() -> i32 {
    let (code, out, err) = run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    code
}
