//! Plain-text experiment configuration.
//!
//! One `key = value` pair per line, `#` starts a comment.  The canonical
//! serialization written by [`ExperimentConfig::to_text`] lists the set keys
//! in a fixed order, so configs round-trip byte-exactly and reruns of the
//! same config are comparable as files.
//!
//! Grammar (values shown for every key):
//!
//! ```text
//! alpha = 1/2                    # shrink factor for alice, rational in (0,1)
//! beta = 1/2                     # shrink factor for bob
//! family = uniform eta=512 cell=0/1,1/512
//! family = cantor q=affine:400+1*n cell=0/1,1/17
//! family = cantor q=const:2 cell=0/1,1/17 group t=10
//! alice = centered | push_right | push_left | avoidance
//! bob = random | random(7) | adversarial(1) | extreme_left | extreme_right | replay(path)
//! opening = 0/1,1/1              # bob's opening ball
//! rounds = 60
//! seed = 7                       # used by `bob = random` without an inline seed
//! digits = 40                    # digit-statistics prefix length
//! blocks = 0;1;5,0               # blocks as comma-joined digits, ; separated
//! bins = 17                      # orbit coverage bins
//! stride = 2                     # subsequence stride k
//! phase = 1                      # subsequence phase p
//! x = 17/24                      # statistics input value
//! q = list:2,3,4                 # statistics sequence rule
//! n = 5                          # statistics prefix length
//! k = 1                          # statistics block order
//! champernowne = 10              # digit source: concatenation constant base
//! base = 3                       # dimension estimate base
//! avoid = 0                      # dimension estimate excluded digits (may be empty)
//! depths = 6,7,8,9,10            # dimension estimate depths (or 6..10)
//! friendly_k = 1..6              # friendliness window, levels
//! friendly_n = -100..100         # friendliness window, gap indices
//! waive_friendly = false         # play even if the family fails the check
//! ```

use crate::cantor::{BasicSequence, Block};
use crate::rational::Rational;
use num_bigint::BigInt;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("config line {line}: {msg}")]
    Bad { line: usize, msg: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("invalid value for `{key}`: {msg}")]
    Invalid { key: &'static str, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqSpec {
    Const(u64),
    Affine { c0: u64, c1: u64 },
    List(Vec<u64>),
}

impl SeqSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        if let Some(v) = s.strip_prefix("const:") {
            return Ok(SeqSpec::Const(v.parse().map_err(|_| format!("bad const `{v}`"))?));
        }
        if let Some(v) = s.strip_prefix("affine:") {
            let (c0, rest) = v.split_once('+').ok_or_else(|| format!("bad affine `{v}`"))?;
            let c1 = rest
                .strip_suffix("*n")
                .ok_or_else(|| format!("affine must end in `*n`: `{v}`"))?;
            return Ok(SeqSpec::Affine {
                c0: c0.parse().map_err(|_| format!("bad affine `{v}`"))?,
                c1: c1.parse().map_err(|_| format!("bad affine `{v}`"))?,
            });
        }
        if let Some(v) = s.strip_prefix("list:") {
            let terms: Result<Vec<u64>, _> = v.split(',').map(|t| t.trim().parse()).collect();
            return Ok(SeqSpec::List(terms.map_err(|_| format!("bad list `{v}`"))?));
        }
        Err(format!("unknown sequence rule `{s}`"))
    }

    pub fn build(&self) -> Result<BasicSequence, String> {
        match self {
            SeqSpec::Const(v) => BasicSequence::constant(*v),
            SeqSpec::Affine { c0, c1 } => BasicSequence::affine(*c0, *c1),
            SeqSpec::List(terms) => BasicSequence::from_list(terms.clone()),
        }
        .map_err(|e| e.to_string())
    }

    pub fn to_text(&self) -> String {
        match self {
            SeqSpec::Const(v) => format!("const:{v}"),
            SeqSpec::Affine { c0, c1 } => format!("affine:{c0}+{c1}*n"),
            SeqSpec::List(terms) => format!(
                "list:{}",
                terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Uniform { eta: u64, cell: (Rational, Rational) },
    Cantor { q: SeqSpec, cell: (Rational, Rational), group: Option<u32> },
}

fn parse_cell(s: &str) -> Result<(Rational, Rational), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("cell needs two rationals: `{s}`"))?;
    let a = Rational::from_str(a).map_err(|e| e.to_string())?;
    let b = Rational::from_str(b).map_err(|e| e.to_string())?;
    Ok((a, b))
}

impl FamilySpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or("empty family descriptor")?;
        let mut eta: Option<u64> = None;
        let mut q: Option<SeqSpec> = None;
        let mut cell: Option<(Rational, Rational)> = None;
        let mut group: Option<u32> = None;
        let mut expect_group_t = false;
        for w in words {
            if expect_group_t {
                let t = w
                    .strip_prefix("t=")
                    .ok_or_else(|| format!("expected t=<int> after group, got `{w}`"))?;
                group = Some(t.parse().map_err(|_| format!("bad group factor `{t}`"))?);
                expect_group_t = false;
            } else if let Some(v) = w.strip_prefix("eta=") {
                eta = Some(v.parse().map_err(|_| format!("bad eta `{v}`"))?);
            } else if let Some(v) = w.strip_prefix("q=") {
                q = Some(SeqSpec::parse(v)?);
            } else if let Some(v) = w.strip_prefix("cell=") {
                cell = Some(parse_cell(v)?);
            } else if w == "group" {
                expect_group_t = true;
            } else {
                return Err(format!("unknown family field `{w}`"));
            }
        }
        if expect_group_t {
            return Err("dangling `group` without t=<int>".into());
        }
        let cell = cell.ok_or("family needs cell=<a>,<b>")?;
        match kind {
            "uniform" => {
                if group.is_some() {
                    return Err("group applies to cantor families".into());
                }
                Ok(FamilySpec::Uniform { eta: eta.ok_or("uniform needs eta=<int>")?, cell })
            }
            "cantor" => Ok(FamilySpec::Cantor { q: q.ok_or("cantor needs q=<rule>")?, cell, group }),
            other => Err(format!("unknown family kind `{other}`")),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            FamilySpec::Uniform { eta, cell } => {
                format!("uniform eta={} cell={},{}", eta, cell.0, cell.1)
            }
            FamilySpec::Cantor { q, cell, group } => {
                let mut s = format!("cantor q={} cell={},{}", q.to_text(), cell.0, cell.1);
                if let Some(t) = group {
                    let _ = write!(s, " group t={t}");
                }
                s
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AliceSpec {
    Centered,
    PushRight,
    PushLeft,
    Avoidance,
}

impl AliceSpec {
    fn parse(s: &str) -> Result<Self, String> {
        match s {
            "centered" => Ok(AliceSpec::Centered),
            "push_right" => Ok(AliceSpec::PushRight),
            "push_left" => Ok(AliceSpec::PushLeft),
            "avoidance" => Ok(AliceSpec::Avoidance),
            other => Err(format!("unknown alice strategy `{other}`")),
        }
    }

    fn to_text(self) -> &'static str {
        match self {
            AliceSpec::Centered => "centered",
            AliceSpec::PushRight => "push_right",
            AliceSpec::PushLeft => "push_left",
            AliceSpec::Avoidance => "avoidance",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BobSpec {
    Random(Option<u64>),
    Adversarial(u32),
    ExtremeLeft,
    ExtremeRight,
    Replay(String),
}

impl BobSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        if s == "random" {
            return Ok(BobSpec::Random(None));
        }
        if let Some(arg) = s.strip_prefix("random(").and_then(|v| v.strip_suffix(')')) {
            return Ok(BobSpec::Random(Some(
                arg.parse().map_err(|_| format!("bad seed `{arg}`"))?,
            )));
        }
        if let Some(arg) = s.strip_prefix("adversarial(").and_then(|v| v.strip_suffix(')')) {
            return Ok(BobSpec::Adversarial(
                arg.parse().map_err(|_| format!("bad level `{arg}`"))?,
            ));
        }
        if let Some(arg) = s.strip_prefix("replay(").and_then(|v| v.strip_suffix(')')) {
            return Ok(BobSpec::Replay(arg.to_string()));
        }
        match s {
            "extreme_left" => Ok(BobSpec::ExtremeLeft),
            "extreme_right" => Ok(BobSpec::ExtremeRight),
            other => Err(format!("unknown bob strategy `{other}`")),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            BobSpec::Random(None) => "random".into(),
            BobSpec::Random(Some(seed)) => format!("random({seed})"),
            BobSpec::Adversarial(level) => format!("adversarial({level})"),
            BobSpec::ExtremeLeft => "extreme_left".into(),
            BobSpec::ExtremeRight => "extreme_right".into(),
            BobSpec::Replay(path) => format!("replay({path})"),
        }
    }
}

fn parse_range_u32(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("range needs `a..b`: `{s}`"))?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad range `{s}`"))?,
        b.trim().parse().map_err(|_| format!("bad range `{s}`"))?,
    ))
}

fn parse_range_i64(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("range needs `a..b`: `{s}`"))?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad range `{s}`"))?,
        b.trim().parse().map_err(|_| format!("bad range `{s}`"))?,
    ))
}

fn parse_blocks(s: &str) -> Result<Vec<Block>, String> {
    let mut out = Vec::new();
    for part in s.split(';') {
        let digits: Result<Vec<BigInt>, _> =
            part.split(',').map(|d| BigInt::from_str(d.trim())).collect();
        let digits = digits.map_err(|_| format!("bad block `{part}`"))?;
        if digits.is_empty() {
            return Err(format!("empty block in `{s}`"));
        }
        out.push(Block(digits));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExperimentConfig {
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub family: Option<FamilySpec>,
    pub alice: Option<AliceSpec>,
    pub bob: Option<BobSpec>,
    pub opening: Option<(Rational, Rational)>,
    pub rounds: Option<u32>,
    pub seed: Option<u64>,
    pub digits: Option<u64>,
    pub blocks: Option<Vec<Block>>,
    pub bins: Option<u32>,
    pub stride: Option<u64>,
    pub phase: Option<u64>,
    pub x: Option<Rational>,
    pub q: Option<SeqSpec>,
    pub n: Option<u64>,
    pub k: Option<u32>,
    pub champernowne: Option<u64>,
    pub base: Option<u64>,
    pub avoid: Option<Vec<u64>>,
    pub depths: Option<Vec<u32>>,
    pub friendly_k: Option<(u32, u32)>,
    pub friendly_n: Option<(i64, i64)>,
    pub waive_friendly: bool,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = ExperimentConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.split_once('#') {
                Some((before, _)) => before.trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Bad {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |msg: String| ConfigError::Bad { line: line_no, msg };
            match key {
                "alpha" => cfg.alpha = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                "beta" => cfg.beta = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                "family" => cfg.family = Some(FamilySpec::parse(value).map_err(bad)?),
                "alice" => cfg.alice = Some(AliceSpec::parse(value).map_err(bad)?),
                "bob" => cfg.bob = Some(BobSpec::parse(value).map_err(bad)?),
                "opening" => cfg.opening = Some(parse_cell(value).map_err(bad)?),
                "rounds" => {
                    cfg.rounds =
                        Some(value.parse().map_err(|_| bad(format!("bad rounds `{value}`")))?)
                }
                "seed" => {
                    cfg.seed = Some(value.parse().map_err(|_| bad(format!("bad seed `{value}`")))?)
                }
                "digits" => {
                    cfg.digits =
                        Some(value.parse().map_err(|_| bad(format!("bad digits `{value}`")))?)
                }
                "blocks" => cfg.blocks = Some(parse_blocks(value).map_err(bad)?),
                "bins" => {
                    cfg.bins = Some(value.parse().map_err(|_| bad(format!("bad bins `{value}`")))?)
                }
                "stride" => {
                    cfg.stride =
                        Some(value.parse().map_err(|_| bad(format!("bad stride `{value}`")))?)
                }
                "phase" => {
                    cfg.phase =
                        Some(value.parse().map_err(|_| bad(format!("bad phase `{value}`")))?)
                }
                "x" => cfg.x = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                "q" => cfg.q = Some(SeqSpec::parse(value).map_err(bad)?),
                "n" => cfg.n = Some(value.parse().map_err(|_| bad(format!("bad n `{value}`")))?),
                "k" => cfg.k = Some(value.parse().map_err(|_| bad(format!("bad k `{value}`")))?),
                "champernowne" => {
                    cfg.champernowne =
                        Some(value.parse().map_err(|_| bad(format!("bad base `{value}`")))?)
                }
                "base" => {
                    cfg.base = Some(value.parse().map_err(|_| bad(format!("bad base `{value}`")))?)
                }
                "avoid" => {
                    let digits: Result<Vec<u64>, _> = if value.is_empty() {
                        Ok(Vec::new())
                    } else {
                        value.split(',').map(|d| d.trim().parse()).collect()
                    };
                    cfg.avoid = Some(digits.map_err(|_| bad(format!("bad avoid `{value}`")))?);
                }
                "depths" => {
                    let depths = if value.contains("..") {
                        let (a, b) = parse_range_u32(value).map_err(bad)?;
                        (a..=b).collect()
                    } else {
                        let list: Result<Vec<u32>, _> =
                            value.split(',').map(|d| d.trim().parse()).collect();
                        list.map_err(|_| bad(format!("bad depths `{value}`")))?
                    };
                    cfg.depths = Some(depths);
                }
                "friendly_k" => cfg.friendly_k = Some(parse_range_u32(value).map_err(bad)?),
                "friendly_n" => cfg.friendly_n = Some(parse_range_i64(value).map_err(bad)?),
                "waive_friendly" => {
                    cfg.waive_friendly = match value {
                        "true" => true,
                        "false" => false,
                        other => return Err(bad(format!("bad bool `{other}`"))),
                    }
                }
                other => {
                    return Err(ConfigError::Bad {
                        line: line_no,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        Ok(cfg)
    }

    /// Canonical text form: set keys only, fixed order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, value: String| {
            let _ = writeln!(out, "{key} = {value}");
        };
        if let Some(v) = &self.alpha {
            put("alpha", v.to_string());
        }
        if let Some(v) = &self.beta {
            put("beta", v.to_string());
        }
        if let Some(v) = &self.family {
            put("family", v.to_text());
        }
        if let Some(v) = &self.alice {
            put("alice", v.to_text().to_string());
        }
        if let Some(v) = &self.bob {
            put("bob", v.to_text());
        }
        if let Some((a, b)) = &self.opening {
            put("opening", format!("{a},{b}"));
        }
        if let Some(v) = self.rounds {
            put("rounds", v.to_string());
        }
        if let Some(v) = self.seed {
            put("seed", v.to_string());
        }
        if let Some(v) = self.digits {
            put("digits", v.to_string());
        }
        if let Some(blocks) = &self.blocks {
            let parts: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
            put("blocks", parts.join(";"));
        }
        if let Some(v) = self.bins {
            put("bins", v.to_string());
        }
        if let Some(v) = self.stride {
            put("stride", v.to_string());
        }
        if let Some(v) = self.phase {
            put("phase", v.to_string());
        }
        if let Some(v) = &self.x {
            put("x", v.to_string());
        }
        if let Some(v) = &self.q {
            put("q", v.to_text());
        }
        if let Some(v) = self.n {
            put("n", v.to_string());
        }
        if let Some(v) = self.k {
            put("k", v.to_string());
        }
        if let Some(v) = self.champernowne {
            put("champernowne", v.to_string());
        }
        if let Some(v) = self.base {
            put("base", v.to_string());
        }
        if let Some(v) = &self.avoid {
            let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
            put("avoid", parts.join(","));
        }
        if let Some(v) = &self.depths {
            let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
            put("depths", parts.join(","));
        }
        if let Some((a, b)) = self.friendly_k {
            put("friendly_k", format!("{a}..{b}"));
        }
        if let Some((a, b)) = self.friendly_n {
            put("friendly_n", format!("{a}..{b}"));
        }
        if self.waive_friendly {
            put("waive_friendly", "true".to_string());
        }
        out
    }
}
