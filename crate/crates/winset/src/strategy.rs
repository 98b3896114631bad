//! Concrete move rules: Alice's push machinery and a suite of adversaries
//! for Bob.
//!
//! The push move is the heart of Alice's play: taking the subinterval that
//! shares the current ball's right (or left) endpoint gains at least
//! `gamma * radius` of rightward (leftward) centre drift per full round, no
//! matter what Bob does.  Iterated `push_rounds` times, the run provably
//! clears the watermark `centre + radius * gamma / 2`.

use crate::family::IntervalFamily;
use crate::game::{GameParams, GameTranscript, Role, Strategy, StrategyError};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::rng::SplitMix64;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushDirection {
    Right,
    Left,
}

impl fmt::Display for PushDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PushDirection::Right => write!(f, "right"),
            PushDirection::Left => write!(f, "left"),
        }
    }
}

/// Smallest positive `t` with `(alpha*beta)^t < gamma/2`.  Minimality makes
/// the companion lower bound `(alpha*beta)^t >= alpha*beta*gamma/2` hold
/// automatically.
pub fn push_rounds(params: &GameParams) -> Result<u32, StrategyError> {
    let gamma = params.gamma();
    if !gamma.is_positive() {
        return Err(StrategyError::BadParams(format!(
            "gamma = {gamma} is not positive"
        )));
    }
    let ab = params.alpha_beta();
    let half_gamma = &gamma / Rational::from_int(2);
    let mut t: u32 = 1;
    let mut power = ab.clone();
    while power >= half_gamma {
        power = power * &ab;
        t += 1;
        assert!(t < 1_000_000, "push length runaway");
    }
    Ok(t)
}

/// The closed subinterval of `ball` with radius `alpha * radius(ball)`
/// sharing `ball`'s right (or left) endpoint.
pub fn push_move(ball: &Interval, alpha: &Rational, direction: PushDirection) -> Interval {
    let len = ball.length() * alpha;
    match direction {
        PushDirection::Right => {
            Interval::closed(ball.right() - &len, ball.right().clone()).expect("len <= length")
        }
        PushDirection::Left => {
            Interval::closed(ball.left().clone(), ball.left() + &len).expect("len <= length")
        }
    }
}

/// The legal subinterval of `prev` with shrink factor `ratio` placed at
/// offset `u * (1 - ratio) * length(prev)` from the left end, `u` in `[0,1]`.
pub fn offset_subinterval(prev: &Interval, ratio: &Rational, u: &Rational) -> Interval {
    let len = prev.length() * ratio;
    let slack = prev.length() - &len;
    let left = prev.left() + u * slack;
    let right = &left + &len;
    Interval::closed(left, right).expect("offset stays inside")
}

/// Alice: always the concentric subinterval.  Any legal filler works while
/// the avoidance machine waits for its trigger; concentric is the canonical
/// deterministic choice.
pub struct CenteredAlice;

impl Strategy for CenteredAlice {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Alice {
            return Err(StrategyError::WrongRole);
        }
        let ball = t.last_bob_ball().ok_or(StrategyError::WrongRole)?;
        let r = ball.radius() * t.params().alpha();
        let c = ball.center();
        Ok(Interval::closed(&c - &r, &c + &r).expect("concentric"))
    }
}

/// Alice: push in one fixed direction every round.
pub struct PushAlice {
    pub direction: PushDirection,
}

impl Strategy for PushAlice {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Alice {
            return Err(StrategyError::WrongRole);
        }
        let ball = t.last_bob_ball().ok_or(StrategyError::WrongRole)?;
        Ok(push_move(ball, t.params().alpha(), self.direction))
    }
}

/// Bob: uniformly random legal placement from a seeded splitmix64 stream,
/// one dyadic sample `u = k/2^64` per move.
pub struct RandomBob {
    rng: SplitMix64,
    opening: Interval,
}

impl RandomBob {
    pub fn new(seed: u64, opening: Interval) -> Self {
        RandomBob { rng: SplitMix64::new(seed), opening }
    }
}

impl Strategy for RandomBob {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Bob {
            return Err(StrategyError::WrongRole);
        }
        match t.last_alice_ball() {
            None => Ok(self.opening.clone()),
            Some(prev) => {
                let u = self.rng.next_unit_rational();
                Ok(offset_subinterval(prev, t.params().beta(), &u))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeSide {
    Left,
    Right,
}

/// Bob: always the leftmost (or rightmost) legal placement.
pub struct ExtremeBob {
    side: ExtremeSide,
    opening: Interval,
}

impl ExtremeBob {
    pub fn new(side: ExtremeSide, opening: Interval) -> Self {
        ExtremeBob { side, opening }
    }
}

impl Strategy for ExtremeBob {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Bob {
            return Err(StrategyError::WrongRole);
        }
        match t.last_alice_ball() {
            None => Ok(self.opening.clone()),
            Some(prev) => {
                let u = match self.side {
                    ExtremeSide::Left => Rational::zero(),
                    ExtremeSide::Right => Rational::one(),
                };
                Ok(offset_subinterval(prev, t.params().beta(), &u))
            }
        }
    }
}

/// Among the legal placements whose left endpoint is one of the enumerated
/// candidates — each member endpoint clamped into the legal range, the same
/// endpoints shifted left by the move length, and the two extremes — return
/// the one maximizing total overlap length with level-`level` members.
/// Ties go to the leftmost candidate.
pub fn bob_adversarial_move(
    prev: &Interval,
    beta: &Rational,
    family: &dyn IntervalFamily,
    level: u32,
) -> Interval {
    let len = prev.length() * beta;
    let lo = prev.left().clone();
    let hi = prev.right() - &len;
    let clamp = |x: Rational| -> Rational {
        if x < lo {
            lo.clone()
        } else if x > hi {
            hi.clone()
        } else {
            x
        }
    };

    let members = family.members_in(level, prev);
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    candidates.insert(lo.clone());
    candidates.insert(hi.clone());
    for (_, m) in &members {
        for endpoint in [m.left(), m.right()] {
            candidates.insert(clamp(endpoint.clone()));
            candidates.insert(clamp(endpoint - &len));
        }
    }

    let mut best: Option<(Rational, Rational)> = None; // (overlap, left)
    for left in candidates {
        let candidate = Interval::closed(left.clone(), &left + &len).expect("clamped");
        let overlap: Rational = members
            .iter()
            .map(|(_, m)| candidate.overlap_length(m))
            .fold(Rational::zero(), |acc, v| acc + v);
        let better = match &best {
            None => true,
            // BTreeSet iterates ascending, so strict improvement keeps the
            // leftmost winner on ties
            Some((best_overlap, _)) => overlap > *best_overlap,
        };
        if better {
            best = Some((overlap, left));
        }
    }
    let (_, left) = best.expect("at least the extremes are candidates");
    Interval::closed(left.clone(), &left + &len).expect("clamped")
}

/// Bob: steer the play into family members.  Each round it targets the
/// finest level at or below the configured one whose member spacing still
/// fits inside the current ball, then maximizes overlap at that level.
pub struct AdversarialBob<'f> {
    family: &'f dyn IntervalFamily,
    base_level: u32,
    opening: Interval,
}

impl<'f> AdversarialBob<'f> {
    pub fn new(family: &'f dyn IntervalFamily, base_level: u32, opening: Interval) -> Self {
        AdversarialBob { family, base_level: base_level.max(1), opening }
    }

    fn target_level(&self, ball: &Interval) -> u32 {
        let len = ball.length();
        let mut k = self.base_level;
        while self.family.period(k) > len && k < self.base_level + 512 {
            k += 1;
        }
        k
    }
}

impl Strategy for AdversarialBob<'_> {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Bob {
            return Err(StrategyError::WrongRole);
        }
        match t.last_alice_ball() {
            None => Ok(self.opening.clone()),
            Some(prev) => {
                let level = self.target_level(prev);
                Ok(bob_adversarial_move(prev, t.params().beta(), self.family, level))
            }
        }
    }
}

/// Bob: replay the Bob moves of a recorded transcript, in order.
pub struct ReplayBob {
    moves: Vec<Interval>,
    cursor: usize,
}

impl ReplayBob {
    pub fn new(moves: Vec<Interval>) -> Self {
        ReplayBob { moves, cursor: 0 }
    }

    /// Extract the Bob balls from a recorded transcript.
    pub fn from_transcript(t: &GameTranscript) -> Self {
        Self::new(
            t.moves()
                .iter()
                .filter(|m| m.role == Role::Bob)
                .map(|m| m.ball.clone())
                .collect(),
        )
    }
}

impl Strategy for ReplayBob {
    fn next_move(&mut self, t: &GameTranscript, role: Role) -> Result<Interval, StrategyError> {
        if role != Role::Bob {
            return Err(StrategyError::WrongRole);
        }
        match self.moves.get(self.cursor) {
            Some(ball) => {
                self.cursor += 1;
                Ok(ball.clone())
            }
            None => Err(StrategyError::ReplayExhausted { round: t.current_round() + 1 }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::UniformFamily;
    use crate::game::run_game;

    fn r(n: i64, d: i64) -> Rational {
        Rational::of(n, d)
    }

    fn params(a: (i64, i64), b: (i64, i64)) -> GameParams {
        GameParams::new(r(a.0, a.1), r(b.0, b.1)).unwrap()
    }

    fn cl(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::closed(r(a.0, a.1), r(b.0, b.1)).unwrap()
    }

    #[test]
    fn push_rounds_examples() {
        assert_eq!(push_rounds(&params((1, 2), (1, 2))).unwrap(), 2);
        assert_eq!(push_rounds(&params((9, 10), (9, 10))).unwrap(), 26);
        assert!(push_rounds(&params((3, 4), (1, 2))).is_err());
    }

    #[test]
    fn push_rounds_lower_bound_holds() {
        for (a, b) in [((1i64, 2i64), (1i64, 2i64)), ((1, 3), (2, 3)), ((2, 5), (9, 10)), ((9, 10), (9, 10))] {
            let p = params(a, b);
            let t = push_rounds(&p).unwrap();
            let power = p.alpha_beta().pow(t);
            let gamma = p.gamma();
            assert!(power < &gamma / Rational::from_int(2));
            assert!(power >= p.alpha_beta() * &gamma / Rational::from_int(2));
        }
    }

    #[test]
    fn push_move_examples() {
        assert_eq!(
            push_move(&cl((0, 1), (2, 1)), &r(1, 2), PushDirection::Right),
            cl((1, 1), (2, 1))
        );
        assert_eq!(
            push_move(&cl((0, 1), (1, 1)), &r(1, 3), PushDirection::Right),
            cl((2, 3), (1, 1))
        );
        assert_eq!(
            push_move(&cl((0, 1), (2, 1)), &r(1, 2), PushDirection::Left),
            cl((0, 1), (1, 1))
        );
    }

    #[test]
    fn offset_subinterval_extremes() {
        let prev = cl((0, 1), (1, 1));
        let beta = r(1, 2);
        assert_eq!(offset_subinterval(&prev, &beta, &Rational::zero()), cl((0, 1), (1, 2)));
        assert_eq!(offset_subinterval(&prev, &beta, &Rational::one()), cl((1, 2), (1, 1)));
    }

    #[test]
    fn random_bob_is_replayable() {
        let p = params((1, 2), (1, 2));
        let opening = cl((0, 1), (1, 1));
        let run = |seed| {
            let mut alice = PushAlice { direction: PushDirection::Right };
            let mut bob = RandomBob::new(seed, opening.clone());
            run_game(&p, &mut alice, &mut bob, 8).unwrap()
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
    }

    #[test]
    fn push_guarantee_against_the_suite() {
        // from any start, after t push rounds the ball clears
        // centre + radius * gamma / 2 — here with alpha = beta = 1/2, t = 2
        let p = params((1, 2), (1, 2));
        let t_len = push_rounds(&p).unwrap();
        let opening = cl((0, 1), (2, 1));
        let watermark = opening.center() + opening.radius() * p.gamma() / Rational::from_int(2);
        let fam = UniformFamily::new(512, (Rational::zero(), r(1, 512))).unwrap();

        let mut bobs: Vec<Box<dyn Strategy>> = vec![
            Box::new(ExtremeBob::new(ExtremeSide::Left, opening.clone())),
            Box::new(ExtremeBob::new(ExtremeSide::Right, opening.clone())),
            Box::new(AdversarialBob::new(&fam, 1, opening.clone())),
        ];
        for seed in 0..8 {
            bobs.push(Box::new(RandomBob::new(seed, opening.clone())));
        }
        for bob in &mut bobs {
            let mut alice = PushAlice { direction: PushDirection::Right };
            let t = run_game(&p, &mut alice, bob.as_mut(), t_len + 1).unwrap();
            let final_ball = t.ball_of(Role::Bob, t_len + 1).unwrap();
            assert!(final_ball.left() > &watermark);
            // per-round drift: centre gains at least gamma * radius
            for i in 1..=t_len {
                let b = t.ball_of(Role::Bob, i).unwrap();
                let next = t.ball_of(Role::Bob, i + 1).unwrap();
                assert!(next.center() >= b.center() + p.gamma() * b.radius());
            }
        }
    }

    #[test]
    fn push_guarantee_mirror() {
        let p = params((1, 2), (1, 2));
        let t_len = push_rounds(&p).unwrap();
        let opening = cl((0, 1), (2, 1));
        let watermark = opening.center() - opening.radius() * p.gamma() / Rational::from_int(2);
        for seed in 0..8 {
            let mut alice = PushAlice { direction: PushDirection::Left };
            let mut bob = RandomBob::new(seed, opening.clone());
            let t = run_game(&p, &mut alice, &mut bob, t_len + 1).unwrap();
            let final_ball = t.ball_of(Role::Bob, t_len + 1).unwrap();
            assert!(final_ball.right() < &watermark);
        }
    }

    #[test]
    fn adversarial_move_prefers_member_overlap() {
        let fam = UniformFamily::new(512, (Rational::zero(), r(1, 512))).unwrap();
        let beta = r(1, 2);

        // a window around one member much wider than the move: full overlap
        let m = fam.member(1, &0.into());
        let prev = Interval::closed(m.left() - &r(1, 2000000), m.right() + &r(1, 2000000))
            .unwrap();
        let len = prev.length() * &beta;
        if len < m.length() {
            let mv = bob_adversarial_move(&prev, &beta, &fam, 1);
            assert_eq!(mv.overlap_length(&m), mv.length());
        }

        // disjoint from every member: leftmost legal move
        let gap = fam.gap(1, &5.into());
        let inner_left = gap.left() + &r(1, 100000000);
        let inner_right = gap.right() - &r(1, 100000000);
        let prev = Interval::closed(inner_left.clone(), inner_right).unwrap();
        let mv = bob_adversarial_move(&prev, &beta, &fam, 1);
        assert_eq!(mv.left(), &inner_left);

        // never worse than either extreme placement
        let prev = cl((0, 1), (1, 100));
        let mv = bob_adversarial_move(&prev, &beta, &fam, 1);
        let members = fam.members_in(1, &prev);
        let total = |cand: &Interval| {
            members
                .iter()
                .map(|(_, m)| cand.overlap_length(m))
                .fold(Rational::zero(), |acc, v| acc + v)
        };
        let left_extreme = offset_subinterval(&prev, &beta, &Rational::zero());
        let right_extreme = offset_subinterval(&prev, &beta, &Rational::one());
        assert!(total(&mv) >= total(&left_extreme));
        assert!(total(&mv) >= total(&right_extreme));
    }

    #[test]
    fn replay_bob_reproduces_and_exhausts() {
        let p = params((1, 2), (1, 2));
        let opening = cl((0, 1), (1, 1));
        let mut alice = CenteredAlice;
        let mut bob = RandomBob::new(3, opening);
        let original = run_game(&p, &mut alice, &mut bob, 6).unwrap();

        let mut replay = ReplayBob::from_transcript(&original);
        let replayed = run_game(&p, &mut CenteredAlice, &mut replay, 6).unwrap();
        assert_eq!(replayed, original);

        let mut short = ReplayBob::from_transcript(&original);
        let failure = run_game(&p, &mut CenteredAlice, &mut short, 7).unwrap_err();
        assert!(matches!(
            failure.error,
            crate::game::GameErrorKind::Strategy {
                source: StrategyError::ReplayExhausted { .. },
                ..
            }
        ));
    }
}
