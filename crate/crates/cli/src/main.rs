//! `strata` — run session files against the symbolic engine.
//!
//! Exit codes: 0 success, 1 a check failed or a command errored,
//! 2 usage / parse / semantic error, 3 a resource budget was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod run;
mod session;

use run::{Overrides, RunConfig};

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "Cohomology, supports, and build relations of DG-modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file and report per-command results.
    Run {
        /// Path to the session file.
        session: PathBuf,
        /// Write the JSON report here (deterministic for a fixed seed).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Sampling seed; overrides the session's `option seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// S-pair budget per command; overrides `option spair-budget`.
        #[arg(long = "spair-budget")]
        spair_budget: Option<u64>,
        /// Degree window `lo..hi`; overrides `option window`.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        /// Resolution depth; overrides `option depth`.
        #[arg(long, allow_hyphen_values = true)]
        depth: Option<i64>,
    },
    /// Parse a session file and print its canonical form.
    Fmt {
        /// Path to the session file.
        session: PathBuf,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `lo..hi`, found `{s}`"))?;
    let lo = lo.parse().map_err(|_| format!("bad window bound `{lo}`"))?;
    let hi = hi.parse().map_err(|_| format!("bad window bound `{hi}`"))?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { session, json, seed, spair_budget, window, depth } => {
            run_file(&session, json.as_deref(), Overrides { seed, spair_budget, window, depth })
        }
        Cmd::Fmt { session } => fmt_file(&session),
    }
}

fn fmt_file(path: &std::path::Path) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    match session::parse_session(&text) {
        Ok(s) => {
            print!("{}", session::print_session(&s));
            ExitCode::SUCCESS
        }
        Err(diags) => {
            for d in &diags {
                eprintln!("error: {}: {d}", path.display());
            }
            ExitCode::from(2)
        }
    }
}

fn run_file(path: &std::path::Path, json_out: Option<&std::path::Path>, over: Overrides) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let session = match session::parse_session(&text) {
        Ok(s) => s,
        Err(diags) => {
            for d in &diags {
                eprintln!("error: {}: {d}", path.display());
            }
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig::resolve(&session, &over);
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("session");
    let outcome = match run::run_session(&session, name, &cfg) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {}: {msg}", path.display());
            return ExitCode::from(2);
        }
    };

    let report = &outcome.report;
    for c in &report.commands {
        match c.status.as_str() {
            "ok" => println!("[ok]    {}", c.command),
            "check-failed" => {
                let failed: Vec<&str> = c
                    .checks
                    .iter()
                    .filter(|k| !k.passed)
                    .map(|k| k.name.as_str())
                    .collect();
                println!("[FAIL]  {} ({})", c.command, failed.join(", "));
            }
            _ => println!(
                "[error] {}: {}",
                c.command,
                c.error.as_deref().unwrap_or("unknown error")
            ),
        }
    }
    println!(
        "session {}: {} commands, {} checks passed, {} failed, status {}",
        report.session,
        report.commands.len(),
        report.checks_passed,
        report.checks_failed,
        report.status
    );

    if let Some(p) = json_out {
        let mut body = serde_json::to_string_pretty(report).expect("report serializes");
        body.push('\n');
        if let Err(e) = std::fs::write(p, body) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::from(2);
        }
    }

    if outcome.budget_exceeded {
        ExitCode::from(3)
    } else if report.status != "ok" {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
