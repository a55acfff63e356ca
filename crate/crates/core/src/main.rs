use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use bassfree::classify::classify;
use bassfree::spectral::numeric::DEFAULT_TOL;
use bassfree::spectral::{numeric_oracle, theorem10_check, NumericVerdict, Theorem10Verdict};
use bassfree::sweep::{check_single, run_sweep, CheckMode, SweepOptions, DEFAULT_SAMPLES};
use bassfree::{Error, Instance, Result};

#[derive(Parser)]
#[command(name = "bassfree", version, about = "Free companions of Bass units in ZPSL(2,q)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search every admissible (q, p) in a range for an h satisfying the orbit-sum condition.
    Sweep(SweepArgs),
    /// Check one pair, by sampling or over all of G \ D.
    Check(CheckArgs),
    /// Whether PSL(2,q) has a dihedral p-critical element.
    Classify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        /// Also verify the definition directly on the group.
        #[arg(long)]
        brute_force: bool,
    },
    /// Exact ping-pong hypothesis check for u_{k,m}(a) conjugated by h.
    Spectral {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        /// Matrix entries of h as field encodings.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<u64>,
        /// Compare with the floating-point oracle.
        #[arg(long)]
        numeric: bool,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 7)]
    q_min: u64,
    #[arg(long)]
    q_max: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    resume: bool,
    #[arg(long)]
    exhaustive_fallback: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
    #[arg(long, conflicts_with_all = ["samples", "seed"])]
    exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Serialize)]
struct SpectralReport {
    exact: Theorem10Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<NumericVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

/// `Ok(true)` when nothing suspicious was found.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Sweep(a) => {
            let summary = run_sweep(&SweepOptions {
                q_min: a.q_min,
                q_max: a.q_max,
                samples: a.samples,
                seed: a.seed,
                jobs: a.jobs,
                out: a.out,
                resume: a.resume,
                exhaustive_fallback: a.exhaustive_fallback,
            })?;
            eprintln!(
                "{} pairs, {} satisfied, {} resumed, {} unsatisfied",
                summary.pairs,
                summary.satisfied,
                summary.resumed,
                summary.unsatisfied.len()
            );
            for (q, p) in &summary.unsatisfied {
                eprintln!("POSSIBLE_COUNTEREXAMPLE q={q} p={p}");
            }
            Ok(summary.all_satisfied())
        }
        Cmd::Check(a) => {
            let mode = if a.exhaustive {
                CheckMode::Exhaustive
            } else {
                CheckMode::Sampled { samples: a.samples, seed: a.seed, exhaustive_fallback: false }
            };
            let rec = check_single(a.q, a.p, mode)?;
            print_json(&rec);
            if !rec.satisfied {
                eprintln!("POSSIBLE_COUNTEREXAMPLE q={} p={}", rec.q, rec.p);
            }
            Ok(rec.satisfied)
        }
        Cmd::Classify { q, p, brute_force } => {
            print_json(&classify(q, p, brute_force)?);
            Ok(true)
        }
        Cmd::Spectral { q, p, k, m, h, numeric } => {
            let inst = Instance::new(q, p)?;
            let enc: [u64; 4] = h
                .try_into()
                .map_err(|v: Vec<u64>| Error::InvalidElement(format!("expected 4 encodings, got {}", v.len())))?;
            let h = inst.psl.from_encoding(enc)?;
            let exact = theorem10_check(&inst, &h, k, m)?;
            let numeric = if numeric { Some(numeric_oracle(&inst, &h, k, m, DEFAULT_TOL)?) } else { None };
            let agree = numeric.as_ref().map(|n| n.verdict == exact.verdict);
            print_json(&SpectralReport { exact, numeric, agree });
            Ok(agree != Some(false))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
