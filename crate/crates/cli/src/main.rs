use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use queen_cover::analysis::{
    critical_ring_report, lower_bound_certificate, max_nonsharing_queens, min_diag_cover,
    ring_bound_check, selection_of,
};
use queen_cover::formulas::{f_closed, g_of, m_star, m_star_csv, BoundTable, Provenance};
use queen_cover::render::{render, Format, RenderSpec, Show};
use queen_cover::search::{exact_min_covered, SearchOptions, DEFAULT_BUDGET};
use queen_cover::verify::{self, Suite, DEFAULT_SEED};
use queen_cover::{construct, BoardDim, Error, LineKind, Placement, Strategy};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "queen-cover", version, about = "Queen placements that attack few squares")]
struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Node budget for searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a placement of k queens on an n x n board.
    Construct {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Report lines, coverage and lower-bound data for a placement file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        rings: bool,
    },
    /// Exact minimum coverage for k queens on a small board.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Print the bound table as CSV.
    Tables(TablesArgs),
    /// Draw a placement file.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        /// Comma-separated layers: queens, covered, rings, certificate-lines.
        #[arg(long, default_value = "queens,covered")]
        show: String,
        #[arg(long, default_value_t = 24)]
        cell_size: u32,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, default_value_t = 40)]
    max_m: u64,
    /// Print the `k,m_star` table up to this k instead.
    #[arg(long)]
    max_k: Option<u64>,
    #[arg(long, value_enum, default_value_t = SourceArg::Closed)]
    source: SourceArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Auto,
    Square,
    Hexagon,
    Uneven,
    FourCorner,
    Nine,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Square => Strategy::Square,
            StrategyArg::Hexagon => Strategy::Hexagon,
            StrategyArg::Uneven => Strategy::Uneven,
            StrategyArg::FourCorner => Strategy::FourCorner,
            StrategyArg::Nine => Strategy::Nine,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Ascii,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SourceArg {
    Closed,
    Maximized,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Formulas,
    Lemma2,
    Rings,
    Konig,
    Eq1,
    Constructions,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Formulas => Suite::Formulas,
            SuiteArg::Lemma2 => Suite::Lemma2,
            SuiteArg::Rings => Suite::Rings,
            SuiteArg::Konig => Suite::Konig,
            SuiteArg::Eq1 => Suite::Eq1,
            SuiteArg::Constructions => Suite::Constructions,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Lib(Error),
    Input(String),
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e @ Error::BudgetExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Violations) => {
            eprintln!("error: verification failed");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn load(path: &PathBuf) -> Result<Placement, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Placement::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn stats(p: &Placement) -> Value {
    let lines = p.lines();
    json!({
        "k": p.len(),
        "covered": p.covered_count(),
        "attacked": p.attacked_count(),
        "rows": lines.family(LineKind::Row).len(),
        "cols": lines.family(LineKind::Col).len(),
        "pos_diags": lines.family(LineKind::DiagPos).len(),
        "neg_diags": lines.family(LineKind::DiagNeg).len(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { k, n, strategy } => {
            let dim = BoardDim::new(n)?;
            let c = construct(k, dim, strategy.into())?;
            let mut out = serde_json::to_value(&c.placement).expect("placement serializes");
            let mut s = stats(&c.placement);
            s["m_star"] = json!(m_star(k as u64)?);
            s["strategy"] = json!(c.strategy.as_str());
            s["line_budget"] = json!(c.budget);
            out["stats"] = s;
            print_json(&out);
        }
        Command::Analyze { file, certificate, rings } => {
            let p = load(&file)?;
            let mut out = stats(&p);
            out["n"] = json!(p.n());
            if !p.is_empty() {
                let (c, witness) = max_nonsharing_queens(&p);
                let (_, cover) = min_diag_cover(&p);
                let lines = p.lines();
                let (a, b) = (lines.family(LineKind::Col).len(), lines.family(LineKind::Row).len());
                let m = (a + b + c) as u64;
                out["A"] = json!(a);
                out["B"] = json!(b);
                out["C"] = json!(c);
                out["M"] = json!(m);
                out["nonsharing_witness"] = json!(witness.iter().map(|q| [q.x, q.y]).collect::<Vec<_>>());
                out["diag_cover"] = json!(cover);
                out["F"] = json!(f_closed(m.max(2))?);
                out["G"] = json!(g_of(m));
                out["k_within_F"] = json!(p.len() as u64 <= f_closed(m.max(2))?);
                if certificate {
                    let cert = lower_bound_certificate(&p)?;
                    out["certificate"] = json!({
                        "lines": cert.lines,
                        "total_length": cert.total_length,
                        "n_times_M": cert.n as u64 * cert.budget as u64,
                        "sound": cert.is_sound(),
                    });
                }
                if rings {
                    let sel = selection_of(&p)?;
                    out["rings"] = json!({
                        "bound": ring_bound_check(&sel),
                        "critical": critical_ring_report(&sel),
                    });
                }
            }
            print_json(&out);
        }
        Command::Search { k, n, all_witnesses } => {
            let opts = SearchOptions { threads: cli.threads, budget: cli.budget, symmetry: true, all_witnesses };
            let result = exact_min_covered(k, BoardDim::new(n)?, opts)?;
            eprintln!(
                "k={k} n={n}: optimum {} after {} nodes in {:.1?}",
                result.optimum, result.nodes_explored, result.wall_time
            );
            print_json(&result);
        }
        Command::Tables(args) => match args.max_k {
            Some(max_k) => print!("{}", m_star_csv(max_k)),
            None => {
                let source = match args.source {
                    SourceArg::Closed => Provenance::Closed,
                    SourceArg::Maximized => Provenance::Maximized,
                };
                print!("{}", BoundTable::build(args.max_m, source)?.to_csv());
            }
        },
        Command::Render { file, format, show, cell_size } => {
            let p = load(&file)?;
            let spec = RenderSpec {
                format: match format {
                    FormatArg::Ascii => Format::Ascii,
                    FormatArg::Svg => Format::Svg,
                },
                show: Show::parse_list(&show)?,
                cell_size,
            };
            print!("{}", render(&p, &spec)?);
        }
        Command::Verify { suite } => {
            let report = verify::run(suite.into(), cli.seed);
            for s in &report.suites {
                eprintln!("{}: {} ({} checks)", s.suite, if s.passed { "pass" } else { "FAIL" }, s.checks);
            }
            print_json(&report);
            if !report.passed {
                return Err(Failure::Violations);
            }
        }
    }
    Ok(())
}
