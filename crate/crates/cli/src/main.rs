use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lozenge_core::asymptotics::{asymptote_rows, asymptotic_limit};
use lozenge_core::gv::centered_count_via_determinants;
use lozenge_core::lattice::{build_hexagon, central_lozenge};
use lozenge_core::tiling::{count_tilings, count_tilings_containing};
use lozenge_core::verify::{run_suite, Suite, SuiteConfig};
use lozenge_core::{centered_count, macmahon_count, q_ratio, Budget, CenteredProblem, Error, HexagonSpec, Parity, Region};

const EXIT_MISMATCH: u8 = 2;
const EXIT_SKIPPED: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Exact counts of lozenge tilings of hexagons, with cross-checks.
#[derive(Parser)]
#[command(name = "lozenge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of tilings of the (a, b, c) hexagon.
    Count(CountArgs),
    /// Tilings of a symmetric hexagon that contain the central lozenge.
    Centered(CenteredArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Convergence of the centered proportion along m = round(a n).
    Asymptote(AsymptoteArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Node limit for brute-force searches.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    max_nodes: u64,
}

impl SearchArgs {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.max_nodes, ..Budget::default() }
    }
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    c: u32,
    /// Also count by exhaustive enumeration.
    #[arg(long)]
    oracle: bool,
    /// Write the hexagon's cells as JSON.
    #[arg(long, value_name = "PATH")]
    dump_region: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Formula,
    Determinant,
}

#[derive(Args)]
struct CenteredArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// `odd` for the (2n-1, 2n-1, 2m) hexagon, `even` for (2n, 2n, 2m-1).
    #[arg(long, value_enum)]
    parity: ParityArg,
    /// Also count by exhaustive enumeration.
    #[arg(long)]
    oracle: bool,
    /// Recompute the count through the lattice-path determinants.
    #[arg(long, value_enum, default_value = "formula")]
    via: Route,
    /// Write the hexagon without its central lozenge as JSON.
    #[arg(long, value_name = "PATH")]
    dump_region: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Theorems,
    Determinants,
    Identities,
    Wz,
    Factorization,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Theorems => Suite::Theorems,
            SuiteArg::Determinants => Suite::Determinants,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Wz => Suite::Wz,
            SuiteArg::Factorization => Suite::Factorization,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Upper limit on n (only shrinks the built-in grids).
    #[arg(long)]
    max_n: Option<u32>,
    /// Upper limit on m (only shrinks the built-in grids).
    #[arg(long)]
    max_m: Option<u32>,
    /// Seed for the randomized identity checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include the wall time in the report.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct AsymptoteArgs {
    /// The ratio a in m = round(a n).
    #[arg(long)]
    ratio: f64,
    /// Comma-separated values of n.
    #[arg(long, value_delimiter = ',', default_value = "25,50,100,200")]
    n_list: Vec<u32>,
    /// Write the table as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

/// Failure of a command: message for stderr and the exit code.
struct Failure {
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            Error::Resource { .. } => EXIT_SKIPPED,
            _ => 1,
        };
        Failure { message: e.to_string(), code }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { message: e.to_string(), code: 1 }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { message: e.to_string(), code: 1 }
    }
}

type Outcome = Result<u8, Failure>;

fn print_json(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON value serializes");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn dump(path: &Path, region: &Region) -> Result<(), Failure> {
    fs::write(path, region.to_json())?;
    Ok(())
}

/// Records an oracle value next to `expected`; returns the exit code it
/// implies.
fn attach_oracle<T: ToString + PartialEq>(
    out: &mut Map<String, Value>,
    oracle: lozenge_core::Result<T>,
    expected: &T,
) -> Outcome {
    match oracle {
        Ok(v) => {
            let matched = v == *expected;
            out.insert("oracle".into(), json!(v.to_string()));
            out.insert("match".into(), json!(matched));
            Ok(if matched { 0 } else { EXIT_MISMATCH })
        }
        Err(Error::Resource { .. }) => {
            out.insert("oracle".into(), json!("skipped"));
            Ok(EXIT_SKIPPED)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_count(args: &CountArgs) -> Outcome {
    let h = HexagonSpec::new(args.a, args.b, args.c)?;
    let p = macmahon_count(&h)?;
    let mut out = Map::new();
    out.insert("P".into(), json!(p.to_string()));
    let region = build_hexagon(&h);
    let mut code = 0;
    if args.oracle {
        code = attach_oracle(&mut out, count_tilings(&region, &args.search.budget()), &p)?;
    }
    if let Some(path) = &args.dump_region {
        dump(path, &region)?;
    }
    print_json(&Value::Object(out));
    Ok(code)
}

fn cmd_centered(args: &CenteredArgs) -> Outcome {
    let parity = match args.parity {
        ParityArg::Odd => Parity::OddSides,
        ParityArg::Even => Parity::EvenSides,
    };
    let problem = CenteredProblem::new(args.n, args.m, parity)?;
    let h = problem.hexagon();
    let q = q_ratio(problem.m(), problem.n())?;
    let total = macmahon_count(&h)?;
    let centered = centered_count(&problem)?;

    let mut out = Map::new();
    out.insert("n".into(), json!(problem.n().to_string()));
    out.insert("m".into(), json!(problem.m().to_string()));
    out.insert("parity".into(), json!(parity.to_string()));
    out.insert("hexagon".into(), json!(h.to_string()));
    out.insert("Q".into(), json!(q.to_string()));
    out.insert("P".into(), json!(total.to_string()));
    out.insert("centered".into(), json!(centered.to_string()));

    let mut code = 0;
    if let Route::Determinant = args.via {
        let via = centered_count_via_determinants(&problem)?;
        let matched = via == centered;
        out.insert("determinant".into(), json!(via.to_string()));
        out.insert("route_match".into(), json!(matched));
        if !matched {
            code = EXIT_MISMATCH;
        }
    }
    let hexagon = build_hexagon(&h);
    let centre = central_lozenge(&h)?;
    if args.oracle {
        let oracle = count_tilings_containing(&hexagon, &centre, &args.search.budget());
        code = code.max(attach_oracle(&mut out, oracle, &centered)?);
    }
    if let Some(path) = &args.dump_region {
        dump(path, &hexagon.without(&centre))?;
    }
    print_json(&Value::Object(out));
    if code == EXIT_MISMATCH {
        eprintln!("routes disagree");
    }
    Ok(code)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let cfg = SuiteConfig {
        max_n: args.max_n,
        max_m: args.max_m,
        seed: args.seed,
        budget: args.search.budget(),
        timing: args.timing,
    };
    let report = run_suite(args.suite.into(), &cfg);
    print_json(&serde_json::to_value(&report).expect("report serializes"));
    for c in report.failures() {
        eprintln!("FAIL {}: {} != {}", c.id, c.lhs, c.rhs);
    }
    Ok(report.exit_code() as u8)
}

fn cmd_asymptote(args: &AsymptoteArgs) -> Outcome {
    let rows = asymptote_rows(args.ratio, &args.n_list)?;
    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["n", "m", "Q", "limit", "abs_err"])?;
        for r in &rows {
            w.write_record([r.n.to_string(), r.m.to_string(), r.q.to_string(), r.limit.to_string(), r.abs_err.to_string()])?;
        }
        w.flush()?;
    }
    let summary = json!({
        "ratio": args.ratio,
        "limit": asymptotic_limit(args.ratio)?,
        "rows": rows,
    });
    print_json(&summary);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Centered(a) => cmd_centered(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asymptote(a) => cmd_asymptote(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
