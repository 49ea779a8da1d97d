use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use godeaux_core::cache::{Cache, CACHE_ENV};
use godeaux_core::checks::{self, Context, VanishingMode};
use godeaux_core::report::{Report, Status};
use godeaux_core::tables::{elliptic_tables, line_tables, mixed_tables};

#[derive(Parser, Debug)]
#[command(name = "godeaux", version, about = "Exact certificates for curves, lattices and line bundles on the Godeaux surface")]
struct Cli {
    /// Gröbner cache directory; defaults to $GODEAUX_CACHE_DIR, no caching if unset.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Step budget for each Gröbner computation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a group of checks and report their status.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Route for the four-fibre vanishing cases.
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Print intersection tables in the compact layouts.
    Tables {
        #[arg(value_enum)]
        kind: TableKind,
    },
    /// Count the invariant elliptic quintics.
    CountElliptic {
        #[arg(long, value_enum, default_value_t = CountMode::Verify)]
        mode: CountMode,
    },
    /// Degree bookkeeping for higher products.
    Audit {
        #[arg(value_enum)]
        what: AuditKind,
    },
    /// Maintain the Gröbner cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Lines,
    Elliptic,
    Lattice,
    Vanishing,
    Sequence,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Direct,
    Reduction,
    Both,
}

impl From<Mode> for VanishingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Direct => VanishingMode::Direct,
            Mode::Reduction => VanishingMode::Reduction,
            Mode::Both => VanishingMode::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Lines,
    Elliptic,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CountMode {
    Verify,
    Eliminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AuditKind {
    AInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    Gc,
}

fn name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    print!("{text}");
    if let Some(path) = &cli.output {
        fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn render(cli: &Cli, report: &Report) -> String {
    match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Md => report.summary_markdown(),
    }
}

fn run(cli: &Cli) -> Result<i32, String> {
    if let Some(dir) = &cli.cache_dir {
        std::env::set_var(CACHE_ENV, dir);
    }
    let mut config = json!({ "budget": cli.budget, "format": name(cli.format) });
    let mut ctx = Context::new(cli.budget);
    if let Command::Verify { mode, .. } = &cli.command {
        config["vanishing_mode"] = json!(name(*mode));
        ctx = ctx.with_vanishing_mode((*mode).into());
    }
    let report = match &cli.command {
        Command::Verify { target, .. } => {
            let mut r = Report::new(format!("verify {}", name(*target)), config);
            r.extend(match target {
                Target::Lines => checks::verify_lines(&ctx),
                Target::Elliptic => checks::verify_elliptic(&ctx),
                Target::Lattice => checks::verify_lattice(&ctx),
                Target::Vanishing => checks::verify_vanishing(&ctx),
                Target::Sequence => checks::verify_sequence(&ctx),
                Target::All => checks::verify_all(&ctx),
            });
            r
        }
        Command::CountElliptic { mode } => {
            let mut r = Report::new(format!("count-elliptic --mode {}", name(*mode)), config);
            r.push(match mode {
                CountMode::Verify => checks::count_elliptic_verify(),
                CountMode::Eliminate => checks::count_elliptic_eliminate(cli.budget),
            });
            r
        }
        Command::Audit { what: AuditKind::AInfinity } => {
            let mut r = Report::new("audit a-infinity", config);
            r.extend(checks::audit_a_infinity(&ctx));
            r
        }
        Command::Tables { kind } => {
            let cat = ctx.catalog();
            let t = match kind {
                TableKind::Lines => line_tables(cat),
                TableKind::Elliptic => elliptic_tables(cat),
                TableKind::Mixed => mixed_tables(cat),
            }
            .map_err(|e| e.to_string())?;
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&t).map_err(|e| e.to_string())? + "\n",
                Format::Md => t.to_markdown(),
            };
            emit(cli, &text)?;
            return Ok(if t.matches() { 0 } else { Status::Failed.exit_code() });
        }
        Command::Cache { action: CacheAction::Gc } => {
            let cache = Cache::from_env().ok_or_else(|| format!("no cache directory: set {CACHE_ENV} or --cache-dir"))?;
            let gc = cache.gc().map_err(|e| e.to_string())?;
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&gc).map_err(|e| e.to_string())? + "\n",
                Format::Md => format!("kept {}, removed {}\n", gc.kept, gc.removed),
            };
            emit(cli, &text)?;
            return Ok(0);
        }
    };
    emit(cli, &render(cli, &report))?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors get their own code, apart from the report statuses
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Failed.exit_code() as u8)
        }
    }
}
