//! Command-line front end.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails, 2 when
//! undecided within budget; 64 for usage and parse errors, 65 for invalid
//! input, 69 for resource limits, 74 for I/O failures.

use std::fs::{File, OpenOptions};
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::graph::automorphism_group;
use crate::graph::io::{from_graph6, to_dot, to_graph6};
use crate::group::{automorphisms, dsl::parse_group};
use crate::haar::{
    alg_cayley_witness, build_sigma, cayley_graph, haar_from_bipartite_cayley, haar_graph, is_cayley_haar,
    is_vertex_transitive, CayleyVerdict, HaarSpec, DEFAULT_CAYLEY_BUDGET,
};
use crate::survey::{self, ScanOptions, ScanReport, SubsetMode};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_UNAVAILABLE: i32 = 69;
pub const EXIT_IO: i32 = 74;

/// Overrides the regular-subgroup search budget.
pub const BUDGET_ENV: &str = "HAARCAY_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "haarcay", version, about = "Haar graphs over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print order, element names and |Aut(G)| of a group.
    Group { dsl: String },
    /// Build H(G,S) and print its shape and graph6.
    Haar {
        spec: String,
        #[arg(long, value_name = "PATH")]
        graph6: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Rewrite a bipartite Cayley graph cay(G,S) as a Haar graph.
    Cayley {
        spec: String,
        #[arg(long, value_name = "PATH")]
        graph6: Option<PathBuf>,
    },
    /// Decide one property of H(G,S).
    Check(CheckArgs),
    /// Print a witness (g, alpha) and sigma, or NONE.
    Witness { spec: String },
    /// Run a survey driver.
    Scan(ScanArgs),
    /// Print |Aut| and the orbit partition of a graph6 graph.
    Aut { file: PathBuf },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("property").required(true).args(["connected", "vt", "cayley", "alg_cayley"])))]
struct CheckArgs {
    spec: String,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    vt: bool,
    #[arg(long)]
    cayley: bool,
    #[arg(long)]
    alg_cayley: bool,
    /// Start the regular-subgroup search from G_R.
    #[arg(long = "seed-GR", default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
    seed_gr: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(subcommand)]
    kind: ScanKind,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Write records here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Skip instances already recorded in --out and append the rest.
    #[arg(long, global = true, requires = "out")]
    resume: bool,
    /// Add per-instance wall time to the records.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum ScanKind {
    /// Every subset of one group.
    AllSubsets {
        dsl: String,
        /// Also compute |Aut|, vertex-transitivity and the Cayley verdict.
        #[arg(long)]
        full: bool,
        /// Report translate-class deduplication of the witness sweep.
        #[arg(long)]
        dedup: bool,
    },
    /// H(D_n, {1,a,a^3,b,ab,a^3b}) for a range of n.
    DihedralPattern {
        #[arg(long, default_value_t = 6)]
        from: usize,
        #[arg(long, default_value_t = 30)]
        to: usize,
    },
    /// |Aut H(D_n, {1,a,a^3,b,ab,a^2b,a^4b})| against 2n.
    Prop36 {
        #[arg(long, default_value_t = 8)]
        from: usize,
        #[arg(long, default_value_t = 24)]
        to: usize,
    },
    /// Witnesses for low-valency subsets of generalized dihedral groups D(A).
    Gendih {
        /// Abelian base groups.
        #[arg(required = true)]
        bases: Vec<String>,
        #[arg(long, default_value_t = 5)]
        max_valency: usize,
        /// Visit every subset rather than the normalized ones.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Subgroups and characteristic quotients of an all-alg-Cayley group.
    Closure { dsl: String },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        Error::ResourceLimit(_) => EXIT_UNAVAILABLE,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_DATA,
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn budget() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v} is not a node count"))),
        Err(_) => Ok(DEFAULT_CAYLEY_BUDGET),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the CLI on `args` (including the program name), writing records to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_HOLDS
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Group { dsl } => {
            let g = parse_group(&dsl)?;
            writeln!(out, "group: {}", g.label()).map_err(io_err)?;
            writeln!(out, "order: {}", g.order()).map_err(io_err)?;
            writeln!(out, "elements: {}", g.names().join(" ")).map_err(io_err)?;
            writeln!(out, "abelian: {}", yes_no(g.is_abelian())).map_err(io_err)?;
            writeln!(out, "aut-order: {}", automorphisms(&g)?.len()).map_err(io_err)?;
            Ok(EXIT_HOLDS)
        }
        Command::Haar { spec, graph6, dot } => {
            let spec = HaarSpec::parse(&spec)?;
            let x = haar_graph(&spec);
            writeln!(out, "spec: {spec}").map_err(io_err)?;
            writeln!(out, "vertices: {}", x.n()).map_err(io_err)?;
            writeln!(out, "edges: {}", x.edge_count()).map_err(io_err)?;
            writeln!(out, "valency: {}", x.regular_degree().map_or("-".into(), |d| d.to_string())).map_err(io_err)?;
            writeln!(out, "graph6: {}", to_graph6(&x)).map_err(io_err)?;
            if let Some(path) = graph6 {
                std::fs::write(path, format!("{}\n", to_graph6(&x))).map_err(io_err)?;
            }
            if let Some(path) = dot {
                std::fs::write(path, to_dot(&x, &spec.to_string())).map_err(io_err)?;
            }
            Ok(EXIT_HOLDS)
        }
        Command::Cayley { spec, graph6 } => {
            let (dsl, elems) = spec
                .rsplit_once('|')
                .ok_or_else(|| Error::Parse(format!("expected '<group>|<elements>' in '{spec}'")))?;
            let g = parse_group(dsl)?;
            let s = g.parse_subset(elems)?;
            let (h, t) = haar_from_bipartite_cayley(&g, &s)?;
            let converted = HaarSpec::new(h, t)?;
            writeln!(out, "cayley-vertices: {}", cayley_graph(&g, &s)?.n()).map_err(io_err)?;
            writeln!(out, "haar-order: {}", converted.order()).map_err(io_err)?;
            writeln!(out, "haar-elements: {}", converted.group().names().join(" ")).map_err(io_err)?;
            writeln!(out, "haar-subset: {}", converted.group().format_subset(converted.subset())).map_err(io_err)?;
            if let Some(path) = graph6 {
                std::fs::write(path, format!("{}\n", to_graph6(&haar_graph(&converted)))).map_err(io_err)?;
            }
            Ok(EXIT_HOLDS)
        }
        Command::Check(args) => check(args, out),
        Command::Witness { spec } => {
            let spec = HaarSpec::parse(&spec)?;
            match alg_cayley_witness(&spec)? {
                Some(w) => {
                    let sigma = build_sigma(&spec, &w)?;
                    writeln!(out, "witness: {}", w.describe(spec.group())).map_err(io_err)?;
                    writeln!(out, "sigma: {}", sigma.perm()).map_err(io_err)?;
                    Ok(EXIT_HOLDS)
                }
                None => {
                    writeln!(out, "witness: NONE").map_err(io_err)?;
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::Scan(args) => scan(args, out, err),
        Command::Aut { file } => {
            let text = std::fs::read_to_string(&file).map_err(io_err)?;
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::Parse(format!("{} holds no graph", file.display())))?;
            let x = from_graph6(line)?;
            let aut = automorphism_group(&x, None)?;
            writeln!(out, "vertices: {}", x.n()).map_err(io_err)?;
            writeln!(out, "aut-order: {}", aut.order()).map_err(io_err)?;
            let orbits: Vec<String> = aut
                .orbits()
                .iter()
                .map(|o| format!("{{{}}}", o.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(out, "orbits: {}", orbits.join(" ")).map_err(io_err)?;
            Ok(EXIT_HOLDS)
        }
    }
}

fn check(args: CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = HaarSpec::parse(&args.spec)?;
    let (name, code) = if args.connected {
        ("connected", haar_graph(&spec).is_connected() as i32)
    } else if args.vt {
        ("vertex-transitive", is_vertex_transitive(&haar_graph(&spec))? as i32)
    } else if args.cayley {
        let code = match is_cayley_haar(&spec, args.seed_gr, budget()?)? {
            CayleyVerdict::Yes(_) => 1,
            CayleyVerdict::No => 0,
            CayleyVerdict::Unknown => -1,
        };
        ("cayley", code)
    } else {
        ("alg-cayley", alg_cayley_witness(&spec)?.is_some() as i32)
    };
    let (word, exit) = match code {
        1 => ("yes", EXIT_HOLDS),
        0 => ("no", EXIT_FAILS),
        _ => ("unknown", EXIT_UNKNOWN),
    };
    writeln!(out, "{name}: {word}").map_err(io_err)?;
    Ok(exit)
}

fn scan(args: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let done = match (&args.out, args.resume) {
        (Some(path), true) if path.exists() => {
            survey::read_records(BufReader::new(File::open(path).map_err(io_err)?))?
        }
        _ => Default::default(),
    };
    let mut file = match &args.out {
        Some(path) => Some(
            OpenOptions::new()
                .create(true)
                .write(true)
                .append(args.resume)
                .truncate(!args.resume)
                .open(path)
                .map_err(io_err)?,
        ),
        None => None,
    };
    let report: ScanReport = {
        let sink: &mut dyn Write = match file.as_mut() {
            Some(f) => f,
            None => &mut *out,
        };
        let mut opts = ScanOptions { workers: args.workers, timings: args.timings, budget: budget()?, done, sink: Some(sink) };
        match args.kind {
            ScanKind::AllSubsets { dsl, full, dedup } => {
                let g = parse_group(&dsl)?;
                let mut report = survey::all_subsets_scan(&g, full, &mut opts)?;
                if dedup {
                    let sweep = survey::all_haar_alg_cayley(&g, true)?;
                    report.events.push(format!("dedup: {:?}, scanned {}", sweep.dedup, sweep.scanned));
                }
                report
            }
            ScanKind::DihedralPattern { from, to } => survey::dihedral_pattern_scan(from, to, &mut opts)?,
            ScanKind::Prop36 { from, to } => survey::prop36_check(from, to, &mut opts)?,
            ScanKind::Gendih { bases, max_valency, exhaustive } => {
                let groups = bases.iter().map(|b| parse_group(b)).collect::<Result<Vec<_>>>()?;
                let mode = if exhaustive { SubsetMode::Exhaustive } else { SubsetMode::Normalized };
                survey::gendih_valency_check(&groups, max_valency, mode, &mut opts)?
            }
            ScanKind::Closure { dsl } => survey::closure_check(&parse_group(&dsl)?, &mut opts)?,
        }
    };
    let summary = serde_json::json!({ "summary": report.summary(), "scan": report.scan });
    writeln!(out, "{summary}").map_err(io_err)?;
    write!(err, "{}", report.summary_table()).map_err(io_err)?;
    Ok(if report.summary().failed == 0 { EXIT_HOLDS } else { EXIT_FAILS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("haarcay").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(run_str(&["check", "cyclic:8|0,1,3", "--connected"]).0, 0);
        assert_eq!(run_str(&["check", "cyclic:8|0,2", "--connected"]).0, 1);
        assert_eq!(run_str(&["check", "dihedral:6|1,a,a^3,b,a*b,a^3*b", "--vt"]).0, 1);
        assert_eq!(run_str(&["check", "dihedral:6|1,a,a^3,b,a*b,a^3*b", "--alg-cayley"]).0, 1);
        let (code, out, _) = run_str(&["check", "cyclic:8|0,1,3", "--cayley"]);
        assert_eq!((code, out.as_str()), (0, "cayley: yes\n"));
        assert_eq!(run_str(&["check", "cyclic:8|0,1,3", "--cayley", "--seed-GR", "false"]).0, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check", "cyclic:8|0,1,3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check", "cyclic:8|0,1,3", "--vt", "--cayley"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check", "cyclic:8", "--vt"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["group", "cyclic:300"]).0, EXIT_UNAVAILABLE);
        assert_eq!(run_str(&["--help"]).0, 0);
        assert_eq!(run_str(&["scan", "prop36", "--resume"]).0, EXIT_USAGE);
    }

    #[test]
    fn witness_output() {
        let (code, out, _) = run_str(&["witness", "dihedral:3|1,a"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("witness: g="));
        assert!(out.contains("\nsigma: ("));
        let (code, out, _) = run_str(&["witness", "dihedral:6|1,a,a^3,b,ab,a^3b"]);
        assert_eq!((code, out.as_str()), (1, "witness: NONE\n"));
    }
}
