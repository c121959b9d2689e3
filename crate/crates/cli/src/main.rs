//! `gpcolor` command-line driver.
//!
//! Exit codes: 0 success (including empty results), 1 usage or input error,
//! 2 exhaustive-scan guard exceeded, 3 a cross-check disagreed.

mod render;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpcolor::crc::crc_report;
use gpcolor::search::{existence_sweep, BRUTE_FORCE_LIMIT};
use gpcolor::{
    brute_force_colorings, build_gp, construct, derive_matrix, predict_existence, search_gp, verify_coloring, Coloring,
    Error, GpParams, MatrixId, ParameterMatrix, SearchOptions,
};

const AFTER_HELP: &str = "Exhaustive search settles existence for each listed instance only. \
A count of zero for some n is not a proof for other values of n.";

#[derive(Parser)]
#[command(name = "gpcolor", version, about = "Perfect 2-colorings of generalized Petersen graphs GP(n,k)")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

impl GraphArgs {
    fn params(&self) -> Result<GpParams, Failure> {
        GpParams::new(self.n, self.k).map_err(Failure::from)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print GP(n,k) as an edge list with the vertex labeling.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Check a coloring string against a matrix, or derive its matrix.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// 2n characters over {1,2}, ordered a_0..a_{n-1}, b_0..b_{n-1}.
        #[arg(long)]
        coloring: String,
        /// A1..A6 or a literal such as [[0,3],[1,2]].
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Print the closed-form coloring for a matrix, if one applies.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        matrix: String,
    },
    /// Enumerate perfect 2-colorings exhaustively.
    Search {
        #[command(flatten)]
        graph: GraphArgs,
        /// A1..A6, `all`, or a literal such as [[0,3],[1,2]].
        #[arg(long, default_value = "all")]
        matrix: String,
        /// Include the witnesses in the report.
        #[arg(long)]
        collect: bool,
        /// Cross-check every count against the brute-force scan.
        #[arg(long)]
        oracle: bool,
        /// One witness per color-swap pair (swap-symmetric matrices only).
        #[arg(long)]
        dedup_swap: bool,
        /// Stop at the first witness.
        #[arg(long)]
        existence: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Existence table for A1..A6 over a range of n, with the closed-form prediction.
    Table {
        #[arg(long)]
        k: usize,
        /// Inclusive range `lo..hi`, or a single value.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Enumerate completely regular codes of one size (at most 26 vertices).
    Crc {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        size: usize,
        /// Report which identification rules leave exactly this many codes.
        #[arg(long)]
        expect: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("invalid number {x:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn parse_matrix(s: &str) -> Result<(ParameterMatrix, Option<MatrixId>), Failure> {
    if let Ok(id) = s.parse::<MatrixId>() {
        return Ok((id.matrix(), Some(id)));
    }
    let m: ParameterMatrix = s.parse()?;
    let id = MatrixId::identify(&m).filter(|id| id.matrix() == m);
    Ok((m, id))
}

fn matrices(selector: &str) -> Result<Vec<ParameterMatrix>, Failure> {
    if selector.eq_ignore_ascii_case("all") {
        Ok(MatrixId::ALL.iter().map(|id| id.matrix()).collect())
    } else {
        Ok(vec![parse_matrix(selector)?.0])
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { graph, format } => {
            let p = graph.params()?;
            print!("{}", render::build(p, &build_gp(p), format));
        }
        Command::Verify { graph, coloring, matrix, format } => {
            let p = graph.params()?;
            let g = build_gp(p);
            let c: Coloring = coloring.parse()?;
            if c.len() != p.vertex_count() {
                return Err(Failure::Usage(format!(
                    "coloring string has length {}, expected {} for {p}",
                    c.len(),
                    p.vertex_count()
                )));
            }
            let out = match matrix {
                Some(m) => {
                    let (a, _) = parse_matrix(&m)?;
                    render::verdict(p, &a, &verify_coloring(&g, &c, &a)?, format)
                }
                None => render::derived(&derive_matrix(&g, &c)?, format),
            };
            print!("{out}");
        }
        Command::Construct { graph, matrix } => {
            let p = graph.params()?;
            let id: MatrixId = matrix.parse()?;
            println!("{}", construct(p, id)?);
        }
        Command::Search { graph, matrix, collect, oracle, dedup_swap, existence, workers, format } => {
            let p = graph.params()?;
            if oracle && p.vertex_count() > BRUTE_FORCE_LIMIT {
                return Err(Failure::Guard(
                    Error::GuardExceeded { vertex_count: p.vertex_count(), limit: BRUTE_FORCE_LIMIT }.to_string(),
                ));
            }
            let opts = SearchOptions { collect, dedup_swap, existence_only: existence, workers: workers.max(1) };
            let g = build_gp(p);
            let mut reports = Vec::new();
            let mut mismatches = Vec::new();
            for a in matrices(&matrix)? {
                let mut r = search_gp(p, &a, opts)?;
                if oracle {
                    let brute = brute_force_colorings(&g, &a)?;
                    let expected = if r.dedup_swap { brute.count / 2 } else { brute.count };
                    if !existence && expected != r.count || existence && (brute.count > 0) != (r.count > 0) {
                        mismatches.push(format!("{a}: search {} vs brute force {}", r.count, expected));
                    }
                    r.oracle_count = Some(expected);
                }
                reports.push(r);
            }
            print!("{}", render::search(p, &reports, format));
            if !mismatches.is_empty() {
                return Err(Failure::Mismatch(format!("oracle disagreement: {}", mismatches.join("; "))));
            }
        }
        Command::Table { k, n, workers, format } => {
            let cells = existence_sweep(k, n.clone(), workers.max(1))?;
            let rows: Vec<render::TableCell> = cells
                .into_iter()
                .map(|cell| {
                    let p = GpParams::new(cell.n, k).expect("validated by the sweep");
                    let predicted = predict_existence(p, cell.matrix);
                    render::TableCell::new(cell, predicted)
                })
                .collect();
            print!("{}", render::table(k, &n, &rows, format));
            let bad: Vec<String> =
                rows.iter().filter(|r| r.agrees == Some(false)).map(|r| format!("{} at n={}", r.matrix, r.n)).collect();
            if !bad.is_empty() {
                return Err(Failure::Mismatch(format!("search disagrees with prediction: {}", bad.join(", "))));
            }
        }
        Command::Crc { graph, size, expect, workers, format } => {
            let p = graph.params()?;
            let report = crc_report(p, size, workers.max(1))?;
            print!("{}", render::crc(&report, expect, format));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
