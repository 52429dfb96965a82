//! `qhsyz`: Jacobian syzygies and quasi-homogeneity of projective hypersurfaces.
//!
//! Exit codes: 0 success, 1 invariant violation or expectation mismatch,
//! 2 unsuitable input (parse error, non-isolated singularities, exhausted
//! budget, bad usage).

mod corpus;
mod expect;
mod input;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qhsyz::groebner::GbCache;
use qhsyz::poly::parse_field;
use qhsyz::MonomialOrder;

use report::{Outcome, PlanarMode, RunOptions};

#[derive(Parser)]
#[command(name = "qhsyz", version, about = "Jacobian syzygies and quasi-homogeneity of projective hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one hypersurface given as a `.poly` file (`-` for stdin).
    Analyze(AnalyzeArgs),
    /// Analyze every `.poly` file of a directory and check `.expect` sidecars.
    Corpus(CorpusArgs),
    /// Check that a saved JSON report is well-formed and of this schema version.
    Validate { report: PathBuf },
    /// Inspect or clear the Gröbner basis cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        /// Cache directory [default: $QHSYZ_CACHE_DIR or ~/.cache/qhsyz].
        #[arg(long, global = true)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Number and total size of cached bases.
    Info,
    /// Delete all cached bases.
    Clear,
}

#[derive(Args)]
struct RunArgs {
    /// Seed for chart search, witnesses and graph samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Gröbner order for J_f and I_f + J_f: grevlex, lex, block(k), weighted(w,..).
    #[arg(long, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,
    /// Maximum number of S-pair reductions per Gröbner basis.
    #[arg(long)]
    budget_pairs: Option<usize>,
    /// Largest degree at which a Hilbert function may still change.
    #[arg(long, default_value_t = 200)]
    budget_degree: i64,
    /// Cache Gröbner bases in this directory [default: $QHSYZ_CACHE_DIR if set].
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Require the planar constructions (Z_f, Hilbert–Burch matrix, classes);
    /// by default they run for plane curves only.
    #[arg(long, conflicts_with = "no_planar")]
    planar: bool,
    /// Skip the planar constructions.
    #[arg(long)]
    no_planar: bool,
    /// Report wall-clock times (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Run single-threaded.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input file, or `-` for stdin.
    input: PathBuf,
    /// Override the field of the ring line, e.g. `Q(i) minpoly t^2+1`.
    #[arg(long)]
    field: Option<String>,
    /// Extra points to analyze, one `a : b : c` per line.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Write the JSON report to this file (`-` for stdout instead of the summary).
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct CorpusArgs {
    dir: PathBuf,
    /// Files analyzed concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    run: RunArgs,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    MonomialOrder::from_name(s).ok_or_else(|| format!("unknown order `{s}`"))
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("QHSYZ_CACHE_DIR").filter(|v| !v.is_empty()).map(PathBuf::from)
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            order: self.order.clone(),
            max_pairs: self.budget_pairs,
            degree_budget: self.budget_degree,
            cache_dir: self.cache_dir.clone().or_else(default_cache_dir),
            planar: match (self.planar, self.no_planar) {
                (true, _) => PlanarMode::On,
                (_, true) => PlanarMode::Off,
                _ => PlanarMode::Auto,
            },
            timing: self.timing,
            parallel: cfg!(feature = "parallel") && !self.sequential,
            points: Vec::new(),
        }
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qhsyz: {msg}");
    ExitCode::from(code)
}

fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn analyze(args: AnalyzeArgs) -> ExitCode {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(2, format!("{}: {e}", args.input.display())),
    };
    let field = match args.field.as_deref().map(parse_field).transpose() {
        Ok(f) => f,
        Err(e) => return fail(2, format!("--field: {e}")),
    };
    let input = match input::parse_poly_file(&text, field.as_ref()) {
        Ok(i) => i,
        Err(e) => return fail(2, format!("{}: {e}", args.input.display())),
    };
    let mut opts = args.run.options();
    if let Some(p) = &args.points {
        let parsed = fs::read_to_string(p)
            .map_err(|e| e.to_string())
            .and_then(|t| input::parse_points(&t, &input.field, input.polynomial.nvars()).map_err(|e| e.to_string()));
        match parsed {
            Ok(pts) => opts.points = pts,
            Err(e) => return fail(2, format!("{}: {e}", p.display())),
        }
    }
    let outcome = report::run(&input, &opts);
    let doc = match &outcome {
        Outcome::Failed { code, message } => return fail(*code, message),
        Outcome::Ok(d) | Outcome::Violation(d) => d,
    };
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if let Some(path) = args.json.as_deref().filter(|_| !to_stdout) {
        if let Err(e) = fs::write(path, doc.to_json()) {
            return fail(2, format!("{}: {e}", path.display()));
        }
    }
    let out = if to_stdout { doc.to_json() } else { report::summary(doc) };
    let _ = io::stdout().write_all(out.as_bytes());
    for v in &doc.violations {
        eprintln!("qhsyz: invariant violation: {v}");
    }
    ExitCode::from(outcome.exit_code())
}

fn run_corpus(args: CorpusArgs) -> ExitCode {
    let opts = args.run.options();
    match corpus::run_corpus(&args.dir, &opts, args.jobs.max(1)) {
        Ok(rows) => {
            print!("{}", corpus::table(&rows, opts.timing));
            ExitCode::from(corpus::exit_code(&rows))
        }
        Err(e) => fail(2, format!("{}: {e}", args.dir.display())),
    }
}

fn validate(path: &Path) -> ExitCode {
    match read_input(path).map_err(|e| e.to_string()).and_then(|t| report::ReportDocument::from_json(&t)) {
        Ok(doc) => {
            let status = if doc.violations.is_empty() { "ok" } else { "invariant violation" };
            println!("{}: schema {}, status {status}", path.display(), doc.schema_version);
            ExitCode::SUCCESS
        }
        Err(e) => fail(2, format!("{}: {e}", path.display())),
    }
}

fn cache(action: CacheAction, dir: Option<PathBuf>) -> ExitCode {
    let dir =
        dir.or_else(default_cache_dir).or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache/qhsyz")));
    let Some(dir) = dir else {
        return fail(2, "no cache directory: pass --cache-dir or set QHSYZ_CACHE_DIR");
    };
    let cache = GbCache::new(&dir);
    match action {
        CacheAction::Info => match cache.info() {
            Ok(i) => {
                println!("{}: {} bases, {} bytes", dir.display(), i.entries, i.bytes);
                ExitCode::SUCCESS
            }
            Err(e) => fail(2, format!("{}: {e}", dir.display())),
        },
        CacheAction::Clear => match cache.clear() {
            Ok(n) => {
                println!("{}: removed {n} files", dir.display());
                ExitCode::SUCCESS
            }
            Err(e) => fail(2, format!("{}: {e}", dir.display())),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Corpus(c) => run_corpus(c),
        Command::Validate { report } => validate(&report),
        Command::Cache { action, cache_dir } => cache(action, cache_dir),
    }
}
