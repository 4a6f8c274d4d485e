use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semistar::harness::claims::{claim_ids, named_domain, run_suite, Config, CLAIMS};
use semistar::harness::dsl::run_script;

/// Usage errors; 0–3 are reserved for report outcomes.
const EXIT_USAGE: u8 = 64;
/// Script syntax, analysis or evaluation errors.
const EXIT_SCRIPT: u8 = 65;

#[derive(Parser)]
#[command(name = "semistar", version, about = "Semistar operations on ideals of quadratic orders and of their polynomial rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct BudgetFlags {
    /// Budget profile: quick, default or thorough.
    #[arg(long, env = "SEMISTAR_PROFILE", default_value = "default")]
    profile: String,
    /// Largest slice degree.
    #[arg(long)]
    slice: Option<usize>,
    /// Multiplier cap for slices of input ideals.
    #[arg(long)]
    mult_cap: Option<usize>,
    /// Largest numerator degree of ▲ witnesses.
    #[arg(long)]
    witness_deg: Option<usize>,
    /// Norm bound of the prime pool.
    #[arg(long)]
    pool_norm: Option<u64>,
    /// Seed for randomized instances.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script file ('-' reads stdin).
    Eval {
        script: PathBuf,
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// Replay a claim suite, or all of them.
    Check {
        /// Claim id or 'all'.
        claim: Option<String>,
        /// Restrict instances to these domains (z, z-sqrt-3, z-golden).
        #[arg(long = "domain")]
        domains: Vec<String>,
        /// Write the JSON report here ('-' for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        budget: BudgetFlags,
    },
}

fn config(b: &BudgetFlags) -> Result<Config, String> {
    let mut cfg = Config::profile(&b.profile).ok_or_else(|| format!("unknown profile '{}'", b.profile))?;
    if let Some(x) = b.slice {
        cfg.budget.slice = x;
    }
    if let Some(x) = b.mult_cap {
        cfg.budget.mult_cap = x;
    }
    if let Some(x) = b.witness_deg {
        cfg.budget.witness_deg = x;
    }
    if let Some(x) = b.pool_norm {
        cfg.pool_norm = x;
    }
    if let Some(x) = b.seed {
        cfg.seed = x;
    }
    Ok(cfg)
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Eval { script, budget } => {
            let cfg = match config(&budget) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let text = if script.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(&script)
            };
            let text = match text {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", script.display())),
            };
            match run_script(&text, cfg) {
                Ok((out, session)) => {
                    for l in out {
                        println!("{l}");
                    }
                    ExitCode::from(session.check_code as u8)
                }
                Err(e) => {
                    eprintln!("{}: {e}", script.display());
                    ExitCode::from(EXIT_SCRIPT)
                }
            }
        }
        Cmd::Check { claim, domains, json, list, budget } => {
            if list {
                for (id, what, _) in CLAIMS {
                    println!("{id:32} {what}");
                }
                return ExitCode::SUCCESS;
            }
            let Some(claim) = claim else { return usage("missing claim id (see --list)") };
            let mut cfg = match config(&budget) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            if let Some(bad) = domains.iter().find(|d| named_domain(d).is_none()) {
                return usage(format!("unknown domain '{bad}'"));
            }
            if !domains.is_empty() {
                cfg.domains = Some(domains);
            }
            let report = match run_suite(&claim, &cfg) {
                Ok(r) => r,
                Err(e) => return usage(format!("{e}; known ids: all, {}", claim_ids().join(", "))),
            };
            print!("{}", report.to_table());
            if let Some(path) = json {
                let doc = report.to_json();
                if path.as_os_str() == "-" {
                    println!("{doc}");
                } else if let Err(e) = std::fs::write(&path, doc + "\n") {
                    return usage(format!("{}: {e}", path.display()));
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
