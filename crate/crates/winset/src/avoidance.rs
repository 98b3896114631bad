//! Alice's level-avoidance machine.
//!
//! Against a family that passes the spacing checks, Alice forces the play to
//! miss one complete level after another.  Per level `k` the machine runs
//! three phases:
//!
//! * **seeking** — while the current ball still meets at least two level-`k`
//!   members, play concentric and wait.  Because balls shrink geometrically,
//!   some Bob ball eventually meets at most one member: the *trigger*.
//! * **pushing** — at the trigger, at most one member `C` is left to avoid,
//!   and the spacing conditions force it to be short
//!   (`len(C) < gamma * len(ball)`, checked exactly, abort otherwise).  Push
//!   away from `C`'s side — right when `C`'s centre is at or left of the
//!   ball's centre, left otherwise — for `push_rounds` rounds.
//! * **certification** — the ball that ends the push run is checked by exact
//!   enumeration: it must miss every level-`k` member and meet at least two
//!   level-`(k+1)` members, which restores the seeking invariant one level
//!   down.  Both verdicts must hold or the game aborts; a passing check is
//!   recorded and the machine advances to level `k+1`.
//!
//! Certified levels stay certified: later balls are nested inside the
//! certified ball, so they miss the level too.  If the trigger ball meets no
//! member at all, the push is skipped and certification is attempted on the
//! spot.

use crate::family::IntervalFamily;
use crate::game::{GameParams, GameTranscript, Role, Strategy, StrategyError};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::strategy::{push_move, push_rounds, PushDirection};

/// One certified level: the bookkeeping needed to re-check the claim from
/// the transcript alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationRecord {
    pub level: u32,
    /// Round at which the trigger fired.
    pub trigger_round: u32,
    /// `None` when the trigger ball already met no member and the push was
    /// skipped.
    pub direction: Option<PushDirection>,
    /// Number of push rounds played (0 when skipped).
    pub push_rounds: u32,
    /// Round of the ball the certification was verified on.
    pub certified_round: u32,
    pub ball: Interval,
    pub disjoint_ok: bool,
    pub next_level_ok: bool,
}

enum Phase {
    /// Find the first level past the family's start bound that the opening
    /// ball meets in at least two members.
    FindLevel,
    Seeking,
    Pushing {
        direction: PushDirection,
        remaining: u32,
        /// Push-run target `centre ± radius * gamma / 2` of the trigger
        /// ball; missing it means the push machinery itself is broken.
        watermark: Rational,
        trigger_round: u32,
    },
}

pub struct AvoidanceAlice<'f> {
    family: &'f dyn IntervalFamily,
    params: GameParams,
    push_len: u32,
    start_level: u32,
    level: u32,
    phase: Phase,
    certifications: Vec<CertificationRecord>,
    level_scan_limit: u32,
}

impl<'f> AvoidanceAlice<'f> {
    /// `start_level` is the family's friendliness bound `K`; the machine
    /// works on levels strictly above it.
    pub fn new(
        family: &'f dyn IntervalFamily,
        params: GameParams,
        start_level: u32,
    ) -> Result<Self, StrategyError> {
        let push_len = push_rounds(&params)?;
        Ok(AvoidanceAlice {
            family,
            params,
            push_len,
            start_level,
            level: start_level + 1,
            phase: Phase::FindLevel,
            certifications: Vec::new(),
            level_scan_limit: 10_000,
        })
    }

    pub fn certifications(&self) -> &[CertificationRecord] {
        &self.certifications
    }

    pub fn current_level(&self) -> u32 {
        self.level
    }

    fn concentric(&self, ball: &Interval) -> Interval {
        let r = ball.radius() * self.params.alpha();
        let c = ball.center();
        Interval::closed(&c - &r, &c + &r).expect("concentric move")
    }

    fn find_level(&self, ball: &Interval) -> Result<u32, StrategyError> {
        let mut k = self.start_level + 1;
        while k <= self.start_level + self.level_scan_limit {
            if self.family.members_in(k, ball).len() >= 2 {
                return Ok(k);
            }
            k += 1;
        }
        Err(StrategyError::LevelSearchExhausted {
            start: self.start_level,
            limit: self.level_scan_limit,
        })
    }

    /// Verify both certification conditions on `ball` by exact enumeration,
    /// record the result, and advance to the next level.
    fn certify(
        &mut self,
        ball: &Interval,
        round: u32,
        trigger_round: u32,
        direction: Option<PushDirection>,
        pushes: u32,
    ) -> Result<(), StrategyError> {
        let disjoint_ok = self.family.members_in(self.level, ball).is_empty();
        let next_level_ok = self.family.members_in(self.level + 1, ball).len() >= 2;
        if !(disjoint_ok && next_level_ok) {
            return Err(StrategyError::Verification {
                level: self.level,
                round,
                disjoint_ok,
                next_level_ok,
            });
        }
        self.certifications.push(CertificationRecord {
            level: self.level,
            trigger_round,
            direction,
            push_rounds: pushes,
            certified_round: round,
            ball: ball.clone(),
            disjoint_ok,
            next_level_ok,
        });
        self.level += 1;
        Ok(())
    }
}

impl Strategy for AvoidanceAlice<'_> {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Alice {
            return Err(StrategyError::WrongRole);
        }
        let ball = t.last_bob_ball().ok_or(StrategyError::WrongRole)?.clone();
        let round = t.current_round();

        match std::mem::replace(&mut self.phase, Phase::Seeking) {
            Phase::FindLevel => {
                self.level = self.find_level(&ball)?;
                // the chosen level meets >= 2 members, so we are seeking
                Ok(self.concentric(&ball))
            }
            Phase::Seeking => {
                let hits = self.family.members_in(self.level, &ball);
                if hits.len() >= 2 {
                    return Ok(self.concentric(&ball));
                }
                // trigger: the previous ball met >= 2 members (seeking
                // invariant), this one meets at most one
                if hits.is_empty() {
                    // nothing left to avoid; certify on the spot
                    self.certify(&ball, round, round, None, 0)?;
                    return Ok(self.concentric(&ball));
                }
                let target = &hits[0].1;
                // the spacing conditions promise a short target; a long one
                // means the family is not friendly at this level
                if target.length() >= self.params.gamma() * ball.length() {
                    return Err(StrategyError::TargetTooLong { level: self.level, round });
                }
                let direction = if target.center() <= ball.center() {
                    PushDirection::Right
                } else {
                    PushDirection::Left
                };
                let half_gamma_r = ball.radius() * self.params.gamma() / Rational::from_int(2);
                let watermark = match direction {
                    PushDirection::Right => ball.center() + half_gamma_r,
                    PushDirection::Left => ball.center() - half_gamma_r,
                };
                self.phase = Phase::Pushing {
                    direction,
                    remaining: self.push_len - 1,
                    watermark,
                    trigger_round: round,
                };
                Ok(push_move(&ball, self.params.alpha(), direction))
            }
            Phase::Pushing { direction, remaining, watermark, trigger_round } => {
                if remaining > 0 {
                    self.phase = Phase::Pushing {
                        direction,
                        remaining: remaining - 1,
                        watermark,
                        trigger_round,
                    };
                    return Ok(push_move(&ball, self.params.alpha(), direction));
                }
                // this ball ends the push run: it must clear the watermark...
                let cleared = match direction {
                    PushDirection::Right => ball.left() > &watermark,
                    PushDirection::Left => ball.right() < &watermark,
                };
                if !cleared {
                    return Err(StrategyError::PushShortfall { level: self.level, round });
                }
                // ...and pass both certification checks
                self.certify(&ball, round, trigger_round, Some(direction), self.push_len)?;
                Ok(self.concentric(&ball))
            }
        }
    }
}
