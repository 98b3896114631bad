//! Line-delimited report records.
//!
//! Every artifact a run emits is a text file of space-separated
//! `key=value` fields with rationals as `num/den`, one record per line, in a
//! fixed field order — byte-exact across reruns of the same config, and
//! parseable without context.  Decimal columns are always labelled `approx`.
//!
//! Record shapes:
//!
//! ```text
//! cert level=1 trigger_round=5 direction=right push_rounds=2 \
//!      certified_round=7 ball_left=331/512 ball_right=333/512 \
//!      disjoint=true next_level=true
//! friendly k=1 n=-3 three_members=true gap_to_member=true \
//!      nested_gap=true nesting=true
//! stat=zero_count block=- vs=- k=- n=12 num=0 den=1 approx=0.000000
//! ```

use crate::avoidance::CertificationRecord;
use crate::cantor::Block;
use crate::family::{FriendlinessReport, FriendCondition};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::strategy::PushDirection;
use num_bigint::BigInt;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordParseError {
    #[error("unreadable record line {0}: `{1}`")]
    BadLine(usize, String),
}

/// One statistics line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatLine {
    pub kind: String,
    pub block: Option<String>,
    pub vs: Option<String>,
    pub k: Option<u64>,
    pub n: Option<u64>,
    pub value: StatValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatValue {
    Rat(Rational),
    Int(BigInt),
    Undefined,
}

impl StatLine {
    pub fn new(kind: &str, value: StatValue) -> Self {
        StatLine { kind: kind.to_string(), block: None, vs: None, k: None, n: None, value }
    }

    pub fn block(mut self, b: &Block) -> Self {
        self.block = Some(b.to_string());
        self
    }

    pub fn vs(mut self, b: &Block) -> Self {
        self.vs = Some(b.to_string());
        self
    }

    pub fn k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn render(&self) -> String {
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        let num_den_approx = match &self.value {
            StatValue::Rat(r) => format!("num={} den={} approx={:.6}", r.numer(), r.denom(), r.to_f64()),
            StatValue::Int(i) => {
                format!("num={} den=1 approx={:.6}", i, i.to_string().parse::<f64>().unwrap_or(f64::NAN))
            }
            StatValue::Undefined => "num=- den=- approx=undefined".to_string(),
        };
        format!(
            "stat={} block={} vs={} k={} n={} {}",
            self.kind,
            opt(&self.block),
            opt(&self.vs),
            self.k.map_or("-".into(), |v| v.to_string()),
            self.n.map_or("-".into(), |v| v.to_string()),
            num_den_approx
        )
    }
}

pub fn render_stats(lines: &[StatLine]) -> String {
    let mut out = String::new();
    for l in lines {
        let _ = writeln!(out, "{}", l.render());
    }
    out
}

pub fn render_certifications(records: &[CertificationRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let dir = match r.direction {
            Some(PushDirection::Right) => "right",
            Some(PushDirection::Left) => "left",
            None => "none",
        };
        let _ = writeln!(
            out,
            "cert level={} trigger_round={} direction={} push_rounds={} certified_round={} ball_left={} ball_right={} disjoint={} next_level={}",
            r.level,
            r.trigger_round,
            dir,
            r.push_rounds,
            r.certified_round,
            r.ball.left(),
            r.ball.right(),
            r.disjoint_ok,
            r.next_level_ok
        );
    }
    out
}

pub fn parse_certifications(text: &str) -> Result<Vec<CertificationRecord>, RecordParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || RecordParseError::BadLine(idx + 1, line.to_string());
        let mut fields = line.split_whitespace();
        if fields.next() != Some("cert") {
            return Err(bad());
        }
        let mut level = None;
        let mut trigger_round = None;
        let mut direction = None;
        let mut push_rounds = None;
        let mut certified_round = None;
        let mut ball_left = None;
        let mut ball_right = None;
        let mut disjoint = None;
        let mut next_level = None;
        for field in fields {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "level" => level = Some(value.parse::<u32>().map_err(|_| bad())?),
                "trigger_round" => trigger_round = Some(value.parse().map_err(|_| bad())?),
                "direction" => {
                    direction = Some(match value {
                        "right" => Some(PushDirection::Right),
                        "left" => Some(PushDirection::Left),
                        "none" => None,
                        _ => return Err(bad()),
                    })
                }
                "push_rounds" => push_rounds = Some(value.parse().map_err(|_| bad())?),
                "certified_round" => certified_round = Some(value.parse().map_err(|_| bad())?),
                "ball_left" => ball_left = Some(Rational::from_str(value).map_err(|_| bad())?),
                "ball_right" => ball_right = Some(Rational::from_str(value).map_err(|_| bad())?),
                "disjoint" => disjoint = Some(value.parse::<bool>().map_err(|_| bad())?),
                "next_level" => next_level = Some(value.parse::<bool>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let ball = Interval::closed(ball_left.ok_or_else(bad)?, ball_right.ok_or_else(bad)?)
            .map_err(|_| bad())?;
        out.push(CertificationRecord {
            level: level.ok_or_else(bad)?,
            trigger_round: trigger_round.ok_or_else(bad)?,
            direction: direction.ok_or_else(bad)?,
            push_rounds: push_rounds.ok_or_else(bad)?,
            certified_round: certified_round.ok_or_else(bad)?,
            ball,
            disjoint_ok: disjoint.ok_or_else(bad)?,
            next_level_ok: next_level.ok_or_else(bad)?,
        });
    }
    Ok(out)
}

pub fn render_friendliness(report: &FriendlinessReport) -> String {
    let mut out = String::new();
    if let Some(cf) = &report.closed_form {
        let _ = writeln!(
            out,
            "closed_form gap_to_member={} nested_gap={}",
            cf.gap_to_member_ok, cf.nested_gap_ok
        );
    }
    for c in &report.cells {
        let _ = writeln!(
            out,
            "friendly k={} n={} three_members={} gap_to_member={} nested_gap={} nesting={}",
            c.k, c.n, c.three_members, c.gap_to_member, c.nested_gap, c.nesting
        );
    }
    match &report.first_violation {
        Some(v) => {
            let _ = writeln!(
                out,
                "overall pass=false first_violation={} k={} n={}",
                v.condition.name(),
                v.k,
                v.n
            );
        }
        None => {
            let _ = writeln!(out, "overall pass=true first_violation=-");
        }
    }
    out
}

/// Name of the first violated condition, if any — handy for scripts.
pub fn first_violation_name(report: &FriendlinessReport) -> Option<&'static str> {
    report.first_violation.as_ref().map(|v| v.condition.name())
}

pub fn condition_name(c: FriendCondition) -> &'static str {
    c.name()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stat_line_render() {
        let l = StatLine::new("zero_count", StatValue::Int(BigInt::from(3)))
            .n(5)
            .render();
        assert_eq!(l, "stat=zero_count block=- vs=- k=- n=5 num=3 den=1 approx=3.000000");

        let l = StatLine::new("order_ratio", StatValue::Rat(Rational::of(10, 9)))
            .block(&Block::from_u64s(&[1]))
            .k(1)
            .n(9)
            .render();
        assert_eq!(l, "stat=order_ratio block=1 vs=- k=1 n=9 num=10 den=9 approx=1.111111");

        let l = StatLine::new("ratio_quotient", StatValue::Undefined).render();
        assert!(l.ends_with("num=- den=- approx=undefined"));
    }

    #[test]
    fn certification_round_trip() {
        let rec = CertificationRecord {
            level: 1,
            trigger_round: 5,
            direction: Some(PushDirection::Right),
            push_rounds: 2,
            certified_round: 7,
            ball: Interval::closed(Rational::of(331, 512), Rational::of(333, 512)).unwrap(),
            disjoint_ok: true,
            next_level_ok: true,
        };
        let text = render_certifications(std::slice::from_ref(&rec));
        let parsed = parse_certifications(&text).unwrap();
        assert_eq!(parsed, vec![rec]);
    }
}
