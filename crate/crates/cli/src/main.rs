use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;

use cicert_core::dsl::{self, ReplayError, EXIT_INPUT_ERROR};
use cicert_core::{CertificateFile, Field, PipelineConfig};

/// Run the `check` commands of a `.ck` session and write replayable certificates.
///
/// Exit status: 0 verified, 1 refuted, 2 inconclusive, 3 input error
/// (the largest over all commands).
#[derive(Debug, Parser)]
#[command(name = "cicert", version)]
struct Args {
    /// Session file to run.
    #[arg(required_unless_present = "replay", conflicts_with = "replay")]
    session: Option<PathBuf>,

    /// Seed for the randomized searches.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// S-pair budget for each Gröbner basis computation.
    #[arg(long, default_value_t = cicert_core::groebner::DEFAULT_GB_STEPS)]
    budget_gb_steps: u64,

    /// Trial budget for regularization and pair searches.
    #[arg(long, default_value_t = cicert_core::ci::DEFAULT_TRIALS)]
    budget_trials: u32,

    /// Degree bound for random combinations (default: max generator degree + 2).
    #[arg(long)]
    degree_bound: Option<u32>,

    /// Write certificates here; several commands give `<stem>.<n>.<ext>`.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Replay a certificate file instead of running a session.
    #[arg(long)]
    replay: Option<PathBuf>,

    /// Override the coefficient field of every ring: `QQ` or `Fp:<p>`.
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "QQ" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("Fp:")
        .or_else(|| s.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')))
        .ok_or_else(|| format!("expected QQ or Fp:<p>, found `{s}`"))?;
    let p: u64 = p.parse().map_err(|e| format!("bad characteristic `{p}`: {e}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn output_path(out: &Path, index: usize, total: usize) -> PathBuf {
    if total <= 1 {
        return out.to_path_buf();
    }
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.{index}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{index}"),
    };
    out.with_file_name(name)
}

fn run_replay(path: &Path) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = match CertificateFile::from_json(&text) {
        Ok(f) => f,
        Err(e) => bail!("{}: {e}", path.display()),
    };
    match dsl::replay(&file) {
        Ok(v) => {
            println!("replay ok: {v} {}", file.command);
            Ok(v.exit_code())
        }
        Err(e @ (ReplayError::Digest { .. } | ReplayError::Mismatch { .. })) => {
            eprintln!("replay defect in {}: {e}", path.display());
            Ok(EXIT_INPUT_ERROR)
        }
        Err(e) => bail!("{}: {e}", path.display()),
    }
}

fn run(args: Args) -> anyhow::Result<i32> {
    if let Some(path) = &args.replay {
        return run_replay(path);
    }
    let path = args.session.as_ref().expect("clap requires a session");
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut session = dsl::parse_session(&text).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))?;
    if let Some(field) = args.field {
        session = dsl::with_field(&session, field);
    }
    let cfg = PipelineConfig {
        seed: args.seed,
        gb_steps: args.budget_gb_steps,
        trials: args.budget_trials,
        degree_bound: args.degree_bound,
    };
    let runs = dsl::run_session(&session, &cfg).context("evaluating declarations")?;
    for (k, r) in runs.iter().enumerate() {
        match &r.result {
            Ok(cert) => {
                println!("{:<12} {}", cert.verdict, r.command);
                if let Some(out) = &args.out {
                    let target = output_path(out, k + 1, runs.len());
                    std::fs::write(&target, cert.to_json()).with_context(|| format!("writing {}", target.display()))?;
                }
            }
            Err(e) => println!("{:<12} {}  ({e})", "error", r.command),
        }
    }
    Ok(dsl::aggregate_exit_code(&runs))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR as u8 } else { 0 });
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
