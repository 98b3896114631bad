//! Command-line front end.  The binary is a thin dispatcher over this
//! module so the parsing and exit-code mapping stay testable.
//!
//! ```text
//! winset <subcommand> [--config <path>] [--seed <u64>] [--rounds <n>]
//!        [--out <dir>] [--waive-friendly]
//!
//! subcommands:
//!   play       run a configured game; writes transcript, certifications,
//!              friendliness report, stats and summary into --out
//!   certify    run the family spacing check alone; writes friendliness.txt
//!   stats      digit statistics for a configured value or digit source
//!   dimension  box-counting slope for a digit-restricted set
//!   footnote   the two-convention shifted-digit witness report
//!   verify     re-check a written run (transcript + certifications) offline
//! ```
//!
//! Exit codes: 0 success, 2 config error, 3 illegal move, 4 verification
//! failure, 1 anything else.

use crate::harness::config::ExperimentConfig;
use crate::harness::dimension::{box_dimension, render_dimension, render_shift_witness, shift_witness_report};
use crate::harness::experiment::{
    certify_family, run_experiment, run_stats, verify_outcome, write_outcome, HarnessError,
};
use std::fs;
use std::path::PathBuf;

pub const USAGE: &str = "usage: winset <play|certify|stats|dimension|footnote|verify> \
[--config <path>] [--seed <u64>] [--rounds <n>] [--out <dir>] [--waive-friendly]";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliArgs {
    pub subcommand: String,
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub rounds: Option<u32>,
    pub out: PathBuf,
    pub waive_friendly: bool,
}

pub fn parse_args<I: IntoIterator<Item = String>>(args: I) -> Result<CliArgs, String> {
    let mut it = args.into_iter();
    let subcommand = it.next().ok_or(USAGE)?;
    let known = ["play", "certify", "stats", "dimension", "footnote", "verify"];
    if !known.contains(&subcommand.as_str()) {
        return Err(format!("unknown subcommand `{subcommand}`\n{USAGE}"));
    }
    let mut parsed = CliArgs {
        subcommand,
        config: None,
        seed: None,
        rounds: None,
        out: PathBuf::from("out"),
        waive_friendly: false,
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--config" => {
                let v = it.next().ok_or("--config needs a path")?;
                parsed.config = Some(PathBuf::from(v));
            }
            "--seed" => {
                let v = it.next().ok_or("--seed needs a value")?;
                parsed.seed = Some(v.parse().map_err(|_| format!("bad seed `{v}`"))?);
            }
            "--rounds" => {
                let v = it.next().ok_or("--rounds needs a value")?;
                parsed.rounds = Some(v.parse().map_err(|_| format!("bad rounds `{v}`"))?);
            }
            "--out" => {
                let v = it.next().ok_or("--out needs a directory")?;
                parsed.out = PathBuf::from(v);
            }
            "--waive-friendly" => parsed.waive_friendly = true,
            other => return Err(format!("unknown flag `{other}`\n{USAGE}")),
        }
    }
    Ok(parsed)
}

fn load_config(args: &CliArgs) -> Result<ExperimentConfig, HarnessError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
                path: path.display().to_string(),
                source,
            })?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    // flags override the file
    if let Some(seed) = args.seed {
        cfg.seed = Some(seed);
    }
    if let Some(rounds) = args.rounds {
        cfg.rounds = Some(rounds);
    }
    if args.waive_friendly {
        cfg.waive_friendly = true;
    }
    Ok(cfg)
}

/// Run one CLI invocation; returns the process exit code.  Output goes to
/// stdout, diagnostics to stderr.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let args = match parse_args(args) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    match dispatch(&args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("winset {}: {e}", args.subcommand);
            e.exit_code()
        }
    }
}

fn dispatch(args: &CliArgs) -> Result<(), HarnessError> {
    let cfg = load_config(args)?;
    match args.subcommand.as_str() {
        "play" => {
            let outcome = run_experiment(&cfg)?;
            write_outcome(&args.out, &outcome)?;
            print!("{}", outcome.summary);
            println!("artifacts written to {}", args.out.display());
            Ok(())
        }
        "certify" => {
            let report = certify_family(&cfg, &args.out)?;
            match &report.first_violation {
                None => println!("pass: every checked cell satisfies the spacing conditions"),
                Some(v) => println!(
                    "fail: first violation {} at k={} n={}",
                    v.condition.name(),
                    v.k,
                    v.n
                ),
            }
            println!("report written to {}", args.out.join("friendliness.txt").display());
            Ok(())
        }
        "stats" => {
            let lines = run_stats(&cfg, &args.out)?;
            println!("{} records written to {}", lines.len(), args.out.join("stats.txt").display());
            Ok(())
        }
        "dimension" => {
            let base = cfg.base.ok_or(HarnessError::Config(
                crate::harness::config::ConfigError::Missing("base"),
            ))?;
            let avoid = cfg.avoid.clone().unwrap_or_default();
            let depths = cfg.depths.clone().ok_or(HarnessError::Config(
                crate::harness::config::ConfigError::Missing("depths"),
            ))?;
            let est = box_dimension(base, &avoid, &depths)
                .map_err(|e| HarnessError::Other(e.to_string()))?;
            let rendered = render_dimension(&est);
            fs::create_dir_all(&args.out).map_err(|source| HarnessError::Io {
                path: args.out.display().to_string(),
                source,
            })?;
            let path = args.out.join("dimension.txt");
            fs::write(&path, &rendered).map_err(|source| HarnessError::Io {
                path: path.display().to_string(),
                source,
            })?;
            print!("{rendered}");
            Ok(())
        }
        "footnote" => {
            let report = shift_witness_report();
            let rendered = render_shift_witness(&report);
            fs::create_dir_all(&args.out).map_err(|source| HarnessError::Io {
                path: args.out.display().to_string(),
                source,
            })?;
            let path = args.out.join("footnote.txt");
            fs::write(&path, &rendered).map_err(|source| HarnessError::Io {
                path: path.display().to_string(),
                source,
            })?;
            print!("{rendered}");
            Ok(())
        }
        "verify" => {
            let report = verify_outcome(&cfg, &args.out)?;
            println!(
                "ok: {} moves and {} certification records re-verified",
                report.moves_checked, report.records_checked
            );
            Ok(())
        }
        _ => unreachable!("subcommand validated in parse_args"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(parts: &[&str]) -> Vec<String> {
        parts.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_flags() {
        let a = parse_args(strs(&[
            "play",
            "--config",
            "cfg.txt",
            "--seed",
            "9",
            "--rounds",
            "40",
            "--out",
            "results",
            "--waive-friendly",
        ]))
        .unwrap();
        assert_eq!(a.subcommand, "play");
        assert_eq!(a.config, Some(PathBuf::from("cfg.txt")));
        assert_eq!(a.seed, Some(9));
        assert_eq!(a.rounds, Some(40));
        assert_eq!(a.out, PathBuf::from("results"));
        assert!(a.waive_friendly);
    }

    #[test]
    fn rejects_unknown() {
        assert!(parse_args(strs(&["conquer"])).is_err());
        assert!(parse_args(strs(&["play", "--frobnicate"])).is_err());
        assert!(parse_args(Vec::<String>::new()).is_err());
    }

    #[test]
    fn footnote_runs_without_config() {
        let dir = std::env::temp_dir().join("winset-test-footnote");
        let _ = std::fs::remove_dir_all(&dir);
        let code = run(strs(&["footnote", "--out", dir.to_str().unwrap()]));
        assert_eq!(code, 0);
        assert!(dir.join("footnote.txt").exists());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
