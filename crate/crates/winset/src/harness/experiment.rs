//! Experiment runner: config in, deterministic artifact files out.
//!
//! A `play` run checks the family's spacing conditions over the configured
//! window (refusing to start on failure unless waived), plays the game,
//! re-verifies every certification record from the transcript alone, and
//! emits five files into the output directory:
//!
//! * `config.txt` — the effective config, canonical form;
//! * `transcript.txt` — one line per move, the replay input;
//! * `certifications.txt` — one record per certified level;
//! * `friendliness.txt` — the windowed spacing report;
//! * `stats.txt` + `summary.txt` — digit statistics of the enclosure centre
//!   and a human-readable recap.
//!
//! Identical config and seed produce byte-identical files.

use crate::avoidance::{AvoidanceAlice, CertificationRecord};
use crate::cantor::{count_block, digits_of, q_sum, Block, DigitExpansion};
use crate::family::{check_friendly, CantorFamily, FriendlinessReport, IntervalFamily, UniformFamily};
use crate::game::{
    run_game, GameErrorKind, GameParams, GameTranscript, Role, Strategy, StrategyError,
};
use crate::harness::config::{AliceSpec, BobSpec, ConfigError, ExperimentConfig, FamilySpec};
use crate::harness::report::{
    parse_certifications, render_certifications, render_friendliness, render_stats, StatLine,
    StatValue,
};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::strategy::{
    AdversarialBob, CenteredAlice, ExtremeBob, ExtremeSide, PushAlice, PushDirection, RandomBob,
    ReplayBob,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("family rejected: {0}")]
    Family(#[from] crate::family::FamilyError),
    #[error("family fails the spacing check at k={k}, n={n} ({condition}); pass `--waive-friendly` to play anyway")]
    NotFriendly { k: u32, n: i64, condition: &'static str },
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Other(String),
}

impl HarnessError {
    /// Process exit code: 2 config, 3 illegal move, 4 verification, 1 other.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Family(_) => 2,
            HarnessError::IllegalMove(_) => 3,
            HarnessError::NotFriendly { .. } | HarnessError::Verification(_) => 4,
            HarnessError::Io { .. } | HarnessError::Other(_) => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io { path: path.display().to_string(), source }
}

pub fn build_family(spec: &FamilySpec) -> Result<Box<dyn IntervalFamily>, HarnessError> {
    match spec {
        FamilySpec::Uniform { eta, cell } => {
            Ok(Box::new(UniformFamily::new(*eta, cell.clone())?))
        }
        FamilySpec::Cantor { q, cell, group } => {
            let seq = q.build().map_err(HarnessError::Other)?;
            let seq = match group {
                Some(t) => seq.grouped(*t).map_err(|e| HarnessError::Other(e.to_string()))?,
                None => seq,
            };
            Ok(Box::new(CantorFamily::new(seq, cell.clone())?))
        }
    }
}

#[derive(Debug)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub params: GameParams,
    pub transcript: GameTranscript,
    pub certifications: Vec<CertificationRecord>,
    pub friendliness: FriendlinessReport,
    pub enclosure: Interval,
    /// Digit positions pinned nonzero by the certified levels (level + 1).
    pub certified_positions: Vec<u64>,
    pub digits: Option<DigitExpansion>,
    pub stats: Vec<StatLine>,
    pub summary: String,
}

fn required<T: Clone>(v: &Option<T>, key: &'static str) -> Result<T, HarnessError> {
    v.clone().ok_or(HarnessError::Config(ConfigError::Missing(key)))
}

fn opening_ball(cfg: &ExperimentConfig) -> Result<Interval, HarnessError> {
    let (l, r) = cfg
        .opening
        .clone()
        .unwrap_or_else(|| (Rational::zero(), Rational::one()));
    Interval::closed(l, r).map_err(|e| HarnessError::Other(e.to_string()))
}

fn params_of(cfg: &ExperimentConfig) -> Result<GameParams, HarnessError> {
    let alpha = required(&cfg.alpha, "alpha")?;
    let beta = required(&cfg.beta, "beta")?;
    GameParams::new(alpha, beta).map_err(|e| HarnessError::Other(e.to_string()))
}

fn build_bob<'f>(
    cfg: &ExperimentConfig,
    family: &'f dyn IntervalFamily,
    opening: Interval,
) -> Result<Box<dyn Strategy + 'f>, HarnessError> {
    let spec = cfg.bob.clone().unwrap_or(BobSpec::Random(None));
    Ok(match spec {
        BobSpec::Random(inline) => {
            let seed = inline.or(cfg.seed).unwrap_or(0);
            Box::new(RandomBob::new(seed, opening))
        }
        BobSpec::Adversarial(level) => Box::new(AdversarialBob::new(family, level, opening)),
        BobSpec::ExtremeLeft => Box::new(ExtremeBob::new(ExtremeSide::Left, opening)),
        BobSpec::ExtremeRight => Box::new(ExtremeBob::new(ExtremeSide::Right, opening)),
        BobSpec::Replay(path) => {
            let path = Path::new(&path);
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let params = params_of(cfg)?;
            let source = GameTranscript::parse(params, &text)
                .map_err(|e| HarnessError::Other(e.to_string()))?;
            Box::new(ReplayBob::from_transcript(&source))
        }
    })
}

fn map_game_failure(failure: crate::game::GameFailure) -> HarnessError {
    match &failure.error {
        GameErrorKind::IllegalMove(v) => HarnessError::IllegalMove(v.to_string()),
        GameErrorKind::Strategy { source, .. } => match source {
            StrategyError::Verification { .. }
            | StrategyError::PushShortfall { .. }
            | StrategyError::TargetTooLong { .. } => {
                HarnessError::Verification(failure.error.to_string())
            }
            _ => HarnessError::IllegalMove(failure.error.to_string()),
        },
        GameErrorKind::NoRounds => HarnessError::Other(failure.error.to_string()),
    }
}

/// Play one configured game end to end (see the module docs for what a run
/// produces).  Fails before playing if the family flunks its spacing window
/// and the config does not waive it.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome, HarnessError> {
    let params = params_of(cfg)?;
    let family_spec = required(&cfg.family, "family")?;
    let family = build_family(&family_spec)?;
    let rounds = required(&cfg.rounds, "rounds")?;
    let opening = opening_ball(cfg)?;

    let (k_lo, k_hi) = cfg.friendly_k.unwrap_or((1, 3));
    let (n_lo, n_hi) = cfg.friendly_n.unwrap_or((-20, 20));
    let friendliness = check_friendly(family.as_ref(), &params, k_lo..=k_hi, n_lo..=n_hi);
    if !friendliness.overall && !cfg.waive_friendly {
        let v = friendliness.first_violation.as_ref().expect("failed report has a violation");
        return Err(HarnessError::NotFriendly { k: v.k, n: v.n, condition: v.condition.name() });
    }

    let alice_spec = cfg.alice.unwrap_or(AliceSpec::Avoidance);
    let mut bob = build_bob(cfg, family.as_ref(), opening)?;

    let (transcript, certifications) = match alice_spec {
        AliceSpec::Avoidance => {
            let start_level = match family.friendliness_start(&params) {
                Ok(k) => k,
                Err(e) if cfg.waive_friendly => {
                    let _ = e;
                    0
                }
                Err(e) => return Err(e.into()),
            };
            let mut alice = AvoidanceAlice::new(family.as_ref(), params.clone(), start_level)
                .map_err(|e| HarnessError::Other(e.to_string()))?;
            let t = run_game(&params, &mut alice, bob.as_mut(), rounds)
                .map_err(map_game_failure)?;
            let certs = alice.certifications().to_vec();
            (t, certs)
        }
        AliceSpec::Centered => {
            let mut alice = CenteredAlice;
            let t = run_game(&params, &mut alice, bob.as_mut(), rounds)
                .map_err(map_game_failure)?;
            (t, Vec::new())
        }
        AliceSpec::PushRight | AliceSpec::PushLeft => {
            let direction = if alice_spec == AliceSpec::PushRight {
                PushDirection::Right
            } else {
                PushDirection::Left
            };
            let mut alice = PushAlice { direction };
            let t = run_game(&params, &mut alice, bob.as_mut(), rounds)
                .map_err(map_game_failure)?;
            (t, Vec::new())
        }
    };

    // belt and braces: every record must re-verify from the transcript alone
    verify_records(family.as_ref(), &transcript, &certifications)
        .map_err(HarnessError::Verification)?;

    let enclosure = transcript
        .enclosure()
        .cloned()
        .ok_or_else(|| HarnessError::Other("empty game".into()))?;
    let certified_positions: Vec<u64> =
        certifications.iter().map(|c| c.level as u64 + 1).collect();

    let (digits, stats) = digit_stats(cfg, family.as_ref(), &enclosure, &certified_positions)?;
    let summary = summarize(cfg, &params, family.as_ref(), &transcript, &certifications,
                            &enclosure, &certified_positions, digits.as_ref());

    Ok(ExperimentOutcome {
        config: cfg.clone(),
        params,
        transcript,
        certifications,
        friendliness,
        enclosure,
        certified_positions,
        digits,
        stats,
        summary,
    })
}

fn digit_stats(
    cfg: &ExperimentConfig,
    family: &dyn IntervalFamily,
    enclosure: &Interval,
    certified_positions: &[u64],
) -> Result<(Option<DigitExpansion>, Vec<StatLine>), HarnessError> {
    let seq = match family.digit_sequence() {
        Some(seq) => seq,
        None => return Ok((None, Vec::new())),
    };
    let last_pos = certified_positions.iter().copied().max().unwrap_or(0);
    let digit_count = cfg.digits.unwrap_or((last_pos + 8).max(12));
    let center = enclosure.center().frac_part();
    let expansion = digits_of(&center, &seq, digit_count)
        .map_err(|e| HarnessError::Other(e.to_string()))?;

    let mut stats = Vec::new();
    for j in 1..=digit_count {
        stats.push(
            StatLine::new("digit", StatValue::Int(expansion.digit(j).unwrap().clone())).n(j),
        );
    }
    let zero = Block(vec![BigInt::zero()]);
    let mut running = 0u64;
    for j in 1..=digit_count {
        if expansion.digit(j).unwrap().is_zero() {
            running += 1;
        }
        stats.push(StatLine::new("zero_count", StatValue::Int(running.into())).n(j));
    }
    let default_blocks = vec![zero.clone(), Block(vec![BigInt::from(1)])];
    let blocks = cfg.blocks.clone().unwrap_or(default_blocks);
    for b in &blocks {
        if b.len() as u64 > digit_count {
            continue;
        }
        let n = digit_count + 1 - b.len() as u64;
        let count = count_block(&expansion, b, n)
            .map_err(|e| HarnessError::Other(e.to_string()))?;
        stats.push(
            StatLine::new("block_count", StatValue::Int(count.into()))
                .block(b)
                .k(b.len() as u64)
                .n(n),
        );
    }
    let denom = q_sum(&seq, 1, digit_count).map_err(|e| HarnessError::Other(e.to_string()))?;
    stats.push(StatLine::new("q_sum", StatValue::Rat(denom.clone())).k(1).n(digit_count));
    let zero_total = count_block(&expansion, &zero, digit_count)
        .map_err(|e| HarnessError::Other(e.to_string()))?;
    stats.push(
        StatLine::new(
            "simple_ratio",
            StatValue::Rat(Rational::from_int(zero_total as i64) / &denom),
        )
        .block(&zero)
        .k(1)
        .n(digit_count),
    );
    for &pos in certified_positions {
        stats.push(StatLine::new("certified_position", StatValue::Int(pos.into())).n(pos));
    }
    Ok((Some(expansion), stats))
}

#[allow(clippy::too_many_arguments)]
fn summarize(
    cfg: &ExperimentConfig,
    params: &GameParams,
    family: &dyn IntervalFamily,
    transcript: &GameTranscript,
    certifications: &[CertificationRecord],
    enclosure: &Interval,
    certified_positions: &[u64],
    digits: Option<&DigitExpansion>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "game: alpha={} beta={} gamma={} rounds={}",
        params.alpha(), params.beta(), params.gamma(), transcript.completed_rounds());
    let _ = writeln!(s, "family: {}", family.describe());
    if let Some(bob) = &cfg.bob {
        let _ = writeln!(s, "bob: {}", bob.to_text());
    }
    let _ = writeln!(s, "enclosure: {} (length {})", enclosure, enclosure.length());
    let _ = writeln!(s, "enclosure center: {} (approx {:.9})",
        enclosure.center(), enclosure.center().to_f64());
    let _ = writeln!(s, "certified levels: {}", certifications.len());
    for c in certifications {
        let _ = writeln!(
            s,
            "  level {} certified at round {} (trigger round {}, {} push rounds)",
            c.level,
            c.certified_round,
            c.trigger_round,
            c.push_rounds
        );
    }
    if certifications.len() >= 2 {
        let first = certifications.first().unwrap().certified_round;
        let last = certifications.last().unwrap().certified_round;
        let per_level = (last - first) as f64 / (certifications.len() - 1) as f64;
        let _ = writeln!(s, "empirical rounds per certified level: {per_level:.2}");
    }
    if !certified_positions.is_empty() {
        let parts: Vec<String> = certified_positions.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "digit positions pinned nonzero: {}", parts.join(","));
    }
    if let Some(d) = digits {
        let shown: Vec<String> = d.digits.iter().take(24).map(|v| v.to_string()).collect();
        let _ = writeln!(s, "digit prefix of center: {}", shown.join(","));
    }
    let _ = writeln!(
        s,
        "note: all statistics are exact finite-prefix counts; the normality \
         notions they probe are asymptotic and are never decided here"
    );
    s
}

/// Write the run artifacts into `out_dir` (created if missing).
pub fn write_outcome(out_dir: &Path, outcome: &ExperimentOutcome) -> Result<(), HarnessError> {
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let write = |name: &str, contents: String| -> Result<(), HarnessError> {
        let path = out_dir.join(name);
        fs::write(&path, contents).map_err(io_err(&path))
    };
    write("config.txt", outcome.config.to_text())?;
    write("transcript.txt", outcome.transcript.to_text())?;
    write("certifications.txt", render_certifications(&outcome.certifications))?;
    write("friendliness.txt", render_friendliness(&outcome.friendliness))?;
    write("stats.txt", render_stats(&outcome.stats))?;
    write("summary.txt", outcome.summary.clone())?;
    Ok(())
}

/// Re-check certification records against a transcript with no strategy
/// state: the recorded ball must be the Bob ball of its round, it must miss
/// every member of its level, it must meet at least two members one level
/// down, and levels must strictly increase.
pub fn verify_records(
    family: &dyn IntervalFamily,
    transcript: &GameTranscript,
    records: &[CertificationRecord],
) -> Result<(), String> {
    transcript.revalidate().map_err(|v| v.to_string())?;
    let mut prev_level: Option<u32> = None;
    for r in records {
        if let Some(p) = prev_level {
            if r.level <= p {
                return Err(format!("levels not strictly increasing at level {}", r.level));
            }
        }
        prev_level = Some(r.level);
        let ball = transcript
            .ball_of(Role::Bob, r.certified_round)
            .ok_or_else(|| format!("no ball at round {}", r.certified_round))?;
        if ball != &r.ball {
            return Err(format!(
                "recorded ball {} differs from transcript ball {} at round {}",
                r.ball, ball, r.certified_round
            ));
        }
        if !family.members_in(r.level, ball).is_empty() {
            return Err(format!("ball at round {} meets level {}", r.certified_round, r.level));
        }
        if family.members_in(r.level + 1, ball).len() < 2 {
            return Err(format!(
                "ball at round {} meets fewer than two members of level {}",
                r.certified_round,
                r.level + 1
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub moves_checked: usize,
    pub records_checked: usize,
}

/// The `verify` subcommand: re-validate a written run from its files alone.
pub fn verify_outcome(cfg: &ExperimentConfig, out_dir: &Path) -> Result<VerifyReport, HarnessError> {
    let params = params_of(cfg)?;
    let family_spec = required(&cfg.family, "family")?;
    let family = build_family(&family_spec)?;

    let transcript_path = out_dir.join("transcript.txt");
    let text = fs::read_to_string(&transcript_path).map_err(io_err(&transcript_path))?;
    let transcript = GameTranscript::parse(params, &text)
        .map_err(|e| HarnessError::Verification(e.to_string()))?;

    let cert_path = out_dir.join("certifications.txt");
    let cert_text = fs::read_to_string(&cert_path).map_err(io_err(&cert_path))?;
    let records = parse_certifications(&cert_text)
        .map_err(|e| HarnessError::Verification(e.to_string()))?;

    verify_records(family.as_ref(), &transcript, &records)
        .map_err(HarnessError::Verification)?;
    Ok(VerifyReport { moves_checked: transcript.moves().len(), records_checked: records.len() })
}

/// The `certify` subcommand: run the spacing check and write the report.
pub fn certify_family(cfg: &ExperimentConfig, out_dir: &Path) -> Result<FriendlinessReport, HarnessError> {
    let params = params_of(cfg)?;
    let family_spec = required(&cfg.family, "family")?;
    let family = build_family(&family_spec)?;
    let (k_lo, k_hi) = cfg.friendly_k.unwrap_or((1, 3));
    let (n_lo, n_hi) = cfg.friendly_n.unwrap_or((-20, 20));
    let report = check_friendly(family.as_ref(), &params, k_lo..=k_hi, n_lo..=n_hi);
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let path = out_dir.join("friendliness.txt");
    fs::write(&path, render_friendliness(&report)).map_err(io_err(&path))?;
    Ok(report)
}

/// Digit source for the `stats` subcommand.
pub fn stats_digit_source(cfg: &ExperimentConfig) -> Result<DigitExpansion, HarnessError> {
    let n = required(&cfg.n, "n")?;
    if let Some(base) = cfg.champernowne {
        return crate::cantor::champernowne_digits(base, n)
            .map_err(|e| HarnessError::Other(e.to_string()));
    }
    let x = required(&cfg.x, "x")?;
    let q_spec = required(&cfg.q, "q")?;
    let seq = q_spec.build().map_err(HarnessError::Other)?;
    digits_of(&x, &seq, n).map_err(|e| HarnessError::Other(e.to_string()))
}

/// The `stats` subcommand: normality statistics of a configured digit
/// source, plus orbit statistics when `x` is given.
pub fn run_stats(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<StatLine>, HarnessError> {
    let expansion = stats_digit_source(cfg)?;
    let n = required(&cfg.n, "n")?;
    let k = cfg.k.unwrap_or(1);
    if k as u64 > n {
        return Err(HarnessError::Other(format!("block order {k} exceeds prefix length {n}")));
    }
    let stats_n = n + 1 - k as u64;
    let report = crate::cantor::normality_stats(&expansion, k, stats_n, Some(64))
        .map_err(|e| HarnessError::Other(e.to_string()))?;

    let mut lines = Vec::new();
    for rec in &report.records {
        let mut line = StatLine::new(
            rec.kind.name(),
            match &rec.value {
                Some(v) => StatValue::Rat(v.clone()),
                None => StatValue::Undefined,
            },
        )
        .k(k as u64)
        .n(rec.n);
        if let Some(b) = &rec.block {
            line = line.block(b);
        }
        if let Some(b) = &rec.other {
            line = line.vs(b);
        }
        lines.push(line);
    }

    if let (Some(x), Some(q_spec)) = (&cfg.x, &cfg.q) {
        let seq = q_spec.build().map_err(HarnessError::Other)?;
        let stride = cfg.stride.unwrap_or(1);
        let phase = cfg.phase.unwrap_or(0);
        let points = crate::distribution::distribution_points(x, &seq, n, stride, phase)
            .map_err(|e| HarnessError::Other(e.to_string()))?;
        let disc = crate::distribution::star_discrepancy(&points)
            .map_err(|e| HarnessError::Other(e.to_string()))?;
        lines.push(
            StatLine::new("star_discrepancy", StatValue::Rat(disc)).k(stride).n(n),
        );
        if let Some(bins) = cfg.bins {
            let cov = crate::distribution::orbit_coverage(x, &seq, n, bins)
                .map_err(|e| HarnessError::Other(e.to_string()))?;
            for (i, hits) in cov.bins.iter().enumerate() {
                lines.push(
                    StatLine::new("orbit_bin", StatValue::Int((*hits).into())).k(i as u64).n(n),
                );
            }
            for idx in &cov.untouched {
                lines.push(
                    StatLine::new("orbit_untouched", StatValue::Int((*idx as u64).into())).n(n),
                );
            }
        }
    }

    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let path = out_dir.join("stats.txt");
    fs::write(&path, render_stats(&lines)).map_err(io_err(&path))?;
    Ok(lines)
}
