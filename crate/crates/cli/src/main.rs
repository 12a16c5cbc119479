//! Command-line front end: build and save algebras, classify deductive
//! systems, emit counting tables and bound verdicts, and run the
//! verification suites.
//!
//! Exit status contract: 0 when every requested check passes, 1 when a
//! verification check fails, 2 on usage errors, guard rejections and I/O
//! problems.

mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use hilsup_core::dedsys::{classify_all, DsClassification};
use hilsup_core::free::build_free;
use hilsup_core::json::{AlgebraDoc, FreeMeta};
use hilsup_core::laws::{validate_hilbert, validate_sup};
use hilsup_core::report::build_count_report;
use hilsup_core::{CoreError, FiniteAlgebra, SizeGuard};

/// Desk-scale limits; anything larger needs `--allow-large`.
const DESK_MAX_N: u64 = 3;
const DESK_MAX_R: u64 = 2;

#[derive(Parser)]
#[command(
    name = "hilsup",
    version,
    about = "Finite Hilbert algebras with supremum: build, classify, count, verify"
)]
struct Cli {
    /// Override the carrier size cap (default 2^24; also read from the
    /// HILSUP_SIZE_GUARD environment variable).
    #[arg(long, global = true)]
    size_guard: Option<usize>,

    /// Allow n and r beyond the desk-scale defaults (n <= 3, r <= 2).
    #[arg(long, global = true)]
    allow_large: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write the (q+1)-element chain as a JSON algebra document.
    Chain {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the free algebra on r generators over the (n+1)-chain and
    /// print a summary; optionally save it with its sidecar header.
    Free {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Algebra document path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sidecar path (default: output path with a .meta.json suffix).
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Enumerate and classify the deductive systems of an algebra.
    Dedsys {
        /// Load the algebra from a JSON document.
        #[arg(long = "in", value_name = "FILE", conflicts_with = "chain")]
        input: Option<PathBuf>,
        /// Use the (q+1)-element chain instead of a file.
        #[arg(long)]
        chain: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit the counting table and bound verdicts over an (n, r) grid.
    Counts {
        /// Single value or inclusive range, e.g. `2` or `1..2`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the cardinality bound over an (n, r) grid.
    Bound {
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run named verification suites over an (n, r) grid.
    Verify {
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: String,
        /// One of: all, axioms, dedsys, decomposition, counting, bound.
        /// Repeatable.
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io { path: PathBuf, message: String },
    Core(CoreError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn effective_guard(cli_override: Option<usize>) -> CliResult<SizeGuard> {
    let mut guard = SizeGuard::default();
    if let Ok(raw) = std::env::var("HILSUP_SIZE_GUARD") {
        let cap: usize = raw.parse().map_err(|_| {
            CliError::Usage(format!("HILSUP_SIZE_GUARD is not a size: {raw:?}"))
        })?;
        guard.max_carrier = cap;
    }
    if let Some(cap) = cli_override {
        guard.max_carrier = cap;
    }
    if guard.max_carrier == 0 {
        return Err(CliError::Usage("size guard must be positive".into()));
    }
    Ok(guard)
}

fn check_desk_scale(n: u64, r: u64, allow_large: bool) -> CliResult<()> {
    if n < 1 || r < 1 {
        return Err(CliError::Usage("n and r must be at least 1".into()));
    }
    if !allow_large && (n > DESK_MAX_N || r > DESK_MAX_R) {
        return Err(CliError::Usage(format!(
            "n={n} r={r} is beyond the desk-scale defaults (n <= {DESK_MAX_N}, r <= {DESK_MAX_R}); pass --allow-large to proceed"
        )));
    }
    Ok(())
}

/// Parses `N` or `A..B` (inclusive) into a list.
fn parse_range(raw: &str, name: &str) -> CliResult<Vec<u64>> {
    let parse_one = |s: &str| -> CliResult<u64> {
        s.trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{name} is not a number: {s:?}")))
    };
    if let Some((a, b)) = raw.split_once("..") {
        let (a, b) = (parse_one(a)?, parse_one(b)?);
        if a > b {
            return Err(CliError::Usage(format!("empty {name} range {raw:?}")));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![parse_one(raw)?])
    }
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::Io {
            path: path.clone(),
            message: e.to_string(),
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_to_string(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> CliResult<bool> {
    let guard = effective_guard(cli.size_guard)?;
    match cli.command {
        Command::Chain { q, out } => {
            guard.check_carrier(q as u128 + 1)?;
            let algebra = FiniteAlgebra::chain(q as usize)?;
            let doc = AlgebraDoc::from_algebra(&algebra);
            write_or_print(&out, &doc.to_json_string())?;
            Ok(true)
        }
        Command::Free { n, r, out, meta } => {
            check_desk_scale(n, r, cli.allow_large)?;
            let free = build_free(n as usize, r as usize, &guard)?;
            let filters = free.canonical_filters(&guard)?;
            if let Some(out) = &out {
                let doc = AlgebraDoc::from_algebra(free.algebra());
                write_or_print(&Some(out.clone()), &doc.to_json_string())?;
                let meta_path = meta.unwrap_or_else(|| out.with_extension("meta.json"));
                let sidecar = FreeMeta::from_free(&free);
                write_or_print(&Some(meta_path), &sidecar.to_json_string())?;
            }
            println!("size={}", free.size());
            for gf in &filters {
                let cells: Vec<String> = gf
                    .alpha
                    .iter()
                    .enumerate()
                    .map(|(i, a)| format!("p={}:{}", i + 1, a))
                    .collect();
                println!("alpha k={}: {}", gf.subset.len(), cells.join(" "));
            }
            let ms: Vec<String> = filters
                .iter()
                .map(|gf| format!("k={}:{}", gf.subset.len(), gf.valuedness))
                .collect();
            println!("valuedness m_k: {}", ms.join(" "));
            Ok(true)
        }
        Command::Dedsys {
            input,
            chain,
            format,
        } => {
            let (label, algebra) = match (input, chain) {
                (Some(path), None) => {
                    let doc = AlgebraDoc::from_json_str(&read_to_string(&path)?)?;
                    let algebra = doc.to_algebra()?;
                    let laws = validate_hilbert(&algebra);
                    if !laws.is_empty() {
                        return Err(CliError::Usage(format!(
                            "{} is not a Hilbert algebra: {laws}",
                            path.display()
                        )));
                    }
                    let sup = validate_sup(&algebra);
                    if !sup.is_empty() {
                        return Err(CliError::Usage(format!(
                            "{} fails the supremum equations: {sup}",
                            path.display()
                        )));
                    }
                    (path.display().to_string(), algebra)
                }
                (None, Some(q)) => {
                    if q < 1 {
                        return Err(CliError::Usage("chain parameter must be >= 1".into()));
                    }
                    guard.check_carrier(q as u128 + 1)?;
                    (format!("chain q={q}"), FiniteAlgebra::chain(q as usize)?)
                }
                _ => {
                    return Err(CliError::Usage(
                        "dedsys needs exactly one of --in FILE or --chain Q".into(),
                    ))
                }
            };
            let algebra = Arc::new(algebra);
            let cls = classify_all(&algebra, &guard)?;
            match format {
                Format::Json => print!("{}", dedsys_json(&cls)),
                _ => print!("{}", dedsys_text(&label, algebra.size(), &cls)),
            }
            Ok(true)
        }
        Command::Counts { n, r, format, out } => {
            let grid = grid_points(&n, &r, cli.allow_large)?;
            let content = render_reports(&grid, &guard, format, false)?;
            write_or_print(&out, &content)?;
            Ok(true)
        }
        Command::Bound { n, r, format, out } => {
            let grid = grid_points(&n, &r, cli.allow_large)?;
            let content = render_reports(&grid, &guard, format, true)?;
            write_or_print(&out, &content)?;
            Ok(true)
        }
        Command::Verify { n, r, suites } => {
            let grid = grid_points(&n, &r, cli.allow_large)?;
            let suites = verify::parse_suites(&suites).map_err(CliError::Usage)?;
            let mut all_pass = true;
            for &(n, r) in &grid {
                all_pass &= verify::run_suites(n as usize, r as usize, &suites, &guard)?;
            }
            Ok(all_pass)
        }
    }
}

fn grid_points(n: &str, r: &str, allow_large: bool) -> CliResult<Vec<(u64, u64)>> {
    let ns = parse_range(n, "n")?;
    let rs = parse_range(r, "r")?;
    let mut grid = Vec::new();
    for &n in &ns {
        for &r in &rs {
            check_desk_scale(n, r, allow_large)?;
            grid.push((n, r));
        }
    }
    Ok(grid)
}

fn render_reports(
    grid: &[(u64, u64)],
    guard: &SizeGuard,
    format: Format,
    bound_only: bool,
) -> CliResult<String> {
    if format == Format::Csv && grid.len() != 1 {
        return Err(CliError::Usage(
            "csv output requires a single (n, r) point".into(),
        ));
    }
    let mut json_docs = Vec::new();
    let mut text = String::new();
    for &(n, r) in grid {
        let report = build_count_report(n as u32, r as u32, guard)?;
        match format {
            Format::Csv => return Ok(report.to_csv()),
            Format::Json => json_docs.push(report.to_json_string()),
            Format::Text => {
                if bound_only {
                    text.push_str(&format!("bound for n={n} r={r}\n"));
                    text.push_str(&report.bound_text());
                } else {
                    text.push_str(&report.to_text());
                }
                text.push('\n');
            }
        }
    }
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = json_docs
                .iter()
                .map(|d| serde_json::from_str(d).expect("reports are valid JSON"))
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("array serializes");
            s.push('\n');
            Ok(s)
        }
        _ => Ok(text),
    }
}

fn dedsys_text(label: &str, size: usize, cls: &[DsClassification]) -> String {
    let mut out = format!("deductive systems of {label} (carrier {size})\n");
    let headers = [
        "members",
        "size",
        "proper",
        "irreducible",
        "fully_irr",
        "prime",
        "minimal",
        "valued",
    ];
    let rows: Vec<[String; 8]> = cls
        .iter()
        .map(|c| {
            let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
            [
                format!("{:?}", c.ds.members().indices()),
                c.ds.len().to_string(),
                yn(c.proper),
                yn(c.irreducible),
                yn(c.fully_irreducible),
                yn(c.prime),
                yn(c.minimal_in_e),
                c.valued_p
                    .map(|p| format!("{}", p + 1))
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            rows.iter()
                .map(|r| r[i].len())
                .chain(std::iter::once(h.len()))
                .max()
                .unwrap()
        })
        .collect();
    let fmt_row = |cells: &[String]| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    out.push_str(&fmt_row(
        &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    ));
    out.push('\n');
    for r in &rows {
        out.push_str(&fmt_row(r));
        out.push('\n');
    }
    out
}

fn dedsys_json(cls: &[DsClassification]) -> String {
    #[derive(serde::Serialize)]
    struct Record {
        members: Vec<usize>,
        proper: bool,
        irreducible: bool,
        fully_irreducible: bool,
        prime: bool,
        minimal: bool,
        valued: Option<usize>,
    }
    let records: Vec<Record> = cls
        .iter()
        .map(|c| Record {
            members: c.ds.members().indices(),
            proper: c.proper,
            irreducible: c.irreducible,
            fully_irreducible: c.fully_irreducible,
            prime: c.prime,
            minimal: c.minimal_in_e,
            valued: c.valued_p.map(|p| p + 1),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&records).expect("records serialize");
    s.push('\n');
    s
}
