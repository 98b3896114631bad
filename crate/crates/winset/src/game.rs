//! The alternating nested-interval game.
//!
//! Two players shrink a closed interval forever: Bob opens with any closed
//! interval of positive length, Alice answers with a closed subinterval whose
//! radius is exactly `alpha` times the current one, Bob replies inside that
//! with ratio `beta`, and so on.  One *round* is a Bob move followed by an
//! Alice move.  The engine validates every move exactly — containment and the
//! radius ratio as equalities of rationals — and records the full transcript
//! so any game can be replayed or re-checked offline.
//!
//! The parameter region that matters for Alice's constructive strategies is
//! `gamma = 1 + alpha*beta - 2*alpha > 0`; the engine itself plays any
//! parameters in `(0,1)^2`.

use crate::interval::Interval;
use crate::rational::Rational;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Shrink factors for the two players, both strictly inside `(0, 1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct GameParams {
    alpha: Rational,
    beta: Rational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameParamsError {
    #[error("{0} must lie strictly inside (0, 1), got {1}")]
    OutOfRange(&'static str, Rational),
}

impl GameParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, GameParamsError> {
        let check = |name, v: &Rational| {
            if v.is_positive() && *v < Rational::one() {
                Ok(())
            } else {
                Err(GameParamsError::OutOfRange(name, v.clone()))
            }
        };
        check("alpha", &alpha)?;
        check("beta", &beta)?;
        Ok(GameParams { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn alpha_beta(&self) -> Rational {
        &self.alpha * &self.beta
    }

    /// `1 + alpha*beta - 2*alpha`, recomputed on demand so it can never go
    /// stale against the parameters.
    pub fn gamma(&self) -> Rational {
        Rational::one() + self.alpha_beta() - Rational::from_int(2) * &self.alpha
    }

    /// Whether Alice's push machinery applies: `gamma > 0`.
    pub fn in_s(&self) -> bool {
        self.gamma().is_positive()
    }
}

impl fmt::Debug for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, beta={})", self.alpha, self.beta)
    }
}

/// The validated form of `1 + alpha*beta - 2*alpha`.
pub fn gamma_of(alpha: &Rational, beta: &Rational) -> Result<Rational, GameParamsError> {
    Ok(GameParams::new(alpha.clone(), beta.clone())?.gamma())
}

/// `x*y*(1 + x*y - 2*x)` with no domain restriction; used for boundary
/// probes of the product bound.
pub fn abg_product(x: &Rational, y: &Rational) -> Rational {
    let xy = x * y;
    let g = Rational::one() + &xy - Rational::from_int(2) * x;
    xy * g
}

/// Exact check that `alpha*beta*gamma < 1/4` on every sample; all samples
/// must have `gamma > 0`.
pub fn max_abg_check(samples: &[(Rational, Rational)]) -> Result<(), AbgCounterexample> {
    let quarter = Rational::of(1, 4);
    for (alpha, beta) in samples {
        let params = GameParams::new(alpha.clone(), beta.clone())
            .map_err(|_| AbgCounterexample::NotApplicable(alpha.clone(), beta.clone()))?;
        if !params.in_s() {
            return Err(AbgCounterexample::NotApplicable(alpha.clone(), beta.clone()));
        }
        let product = abg_product(alpha, beta);
        if product >= quarter {
            return Err(AbgCounterexample::BoundExceeded {
                alpha: alpha.clone(),
                beta: beta.clone(),
                product,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbgCounterexample {
    #[error("sample ({0}, {1}) is outside the gamma > 0 region")]
    NotApplicable(Rational, Rational),
    #[error("alpha*beta*gamma = {product} >= 1/4 at ({alpha}, {beta})")]
    BoundExceeded { alpha: Rational, beta: Rational, product: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Bob,
    Alice,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Bob => write!(f, "bob"),
            Role::Alice => write!(f, "alice"),
        }
    }
}

impl FromStr for Role {
    type Err = TranscriptParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bob" => Ok(Role::Bob),
            "alice" => Ok(Role::Alice),
            other => Err(TranscriptParseError::BadRole(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub round: u32,
    pub role: Role,
    pub ball: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Candidate is not contained in the ball it must refine.
    Containment,
    /// Candidate length is not exactly ratio times the previous length.
    Ratio,
    /// Game balls must be closed intervals.
    NotClosed,
    /// The opening ball must have positive length.
    DegenerateOpening,
    /// Move arrived for the wrong player or past the end of the game.
    OutOfTurn,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("illegal {role} move at round {round}: {kind:?} ({candidate})")]
pub struct MoveViolation {
    pub round: u32,
    pub role: Role,
    pub kind: ViolationKind,
    pub candidate: Interval,
}

/// Errors a strategy can raise instead of producing a move.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("avoidance verification failed at level {level}, round {round}: disjoint_from_level={disjoint_ok}, next_level_two_members={next_level_ok}")]
    Verification { level: u32, round: u32, disjoint_ok: bool, next_level_ok: bool },
    #[error("push run ended short of its watermark at level {level}, round {round}")]
    PushShortfall { level: u32, round: u32 },
    #[error("the single member met at level {level}, round {round} is too long to avoid (needs length < gamma * ball length); the family is not friendly here")]
    TargetTooLong { level: u32, round: u32 },
    #[error("no level above {start} with two intersected members found within {limit} levels")]
    LevelSearchExhausted { start: u32, limit: u32 },
    #[error("replay source exhausted at round {round}")]
    ReplayExhausted { round: u32 },
    #[error("strategy needs gamma > 0 parameters: {0}")]
    BadParams(String),
    #[error("strategy asked to move for the wrong role")]
    WrongRole,
}

/// A deterministic move rule.  Implementations may hold internal state but
/// must be fully determined by their construction (including any seed) plus
/// the transcript seen so far, so that a game replays bit-identically.
pub trait Strategy {
    fn next_move(&mut self, transcript: &GameTranscript, role: Role)
        -> Result<Interval, StrategyError>;
}

/// Full move history of one game: `B_1, A_1, B_2, A_2, ...` with exact
/// validation on entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    params: GameParams,
    moves: Vec<Move>,
}

impl GameTranscript {
    pub fn new(params: GameParams) -> Self {
        GameTranscript { params, moves: Vec::new() }
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn last_ball(&self) -> Option<&Interval> {
        self.moves.last().map(|m| &m.ball)
    }

    pub fn ball_of(&self, role: Role, round: u32) -> Option<&Interval> {
        self.moves
            .iter()
            .find(|m| m.role == role && m.round == round)
            .map(|m| &m.ball)
    }

    pub fn last_bob_ball(&self) -> Option<&Interval> {
        self.moves.iter().rev().find(|m| m.role == Role::Bob).map(|m| &m.ball)
    }

    pub fn last_alice_ball(&self) -> Option<&Interval> {
        self.moves.iter().rev().find(|m| m.role == Role::Alice).map(|m| &m.ball)
    }

    /// Number of Bob moves so far; during a round this is the round index.
    pub fn current_round(&self) -> u32 {
        self.moves.iter().filter(|m| m.role == Role::Bob).count() as u32
    }

    /// Rounds with both moves played.
    pub fn completed_rounds(&self) -> u32 {
        self.moves.iter().filter(|m| m.role == Role::Alice).count() as u32
    }

    fn expected_turn(&self) -> (Role, u32) {
        match self.moves.last() {
            None => (Role::Bob, 1),
            Some(m) => match m.role {
                Role::Bob => (Role::Alice, m.round),
                Role::Alice => (Role::Bob, m.round + 1),
            },
        }
    }

    /// Check a candidate move for the given role against the transcript:
    /// closedness, containment in the ball being refined, and the exact
    /// radius ratio (`alpha` for Alice, `beta` for Bob).
    pub fn validate_candidate(&self, role: Role, candidate: &Interval)
        -> Result<(), MoveViolation> {
        let (turn_role, round) = self.expected_turn();
        let fail = |kind| {
            Err(MoveViolation { round, role, kind, candidate: candidate.clone() })
        };
        if role != turn_role {
            return fail(ViolationKind::OutOfTurn);
        }
        if !candidate.is_closed() {
            return fail(ViolationKind::NotClosed);
        }
        let (prev, ratio) = match role {
            Role::Bob => match self.last_alice_ball() {
                // opening ball: anything closed with positive length
                None => {
                    if candidate.length().is_positive() {
                        return Ok(());
                    }
                    return fail(ViolationKind::DegenerateOpening);
                }
                Some(prev) => (prev, self.params.beta()),
            },
            Role::Alice => match self.last_bob_ball() {
                None => return fail(ViolationKind::OutOfTurn),
                Some(prev) => (prev, self.params.alpha()),
            },
        };
        if !prev.contains(candidate) {
            return fail(ViolationKind::Containment);
        }
        if candidate.length() != ratio * prev.length() {
            return fail(ViolationKind::Ratio);
        }
        Ok(())
    }

    /// Validate and append.
    pub fn apply(&mut self, role: Role, ball: Interval) -> Result<(), MoveViolation> {
        self.validate_candidate(role, &ball)?;
        let (_, round) = self.expected_turn();
        self.moves.push(Move { round, role, ball });
        Ok(())
    }

    /// The last Bob ball: every continuation of the game stays inside it, so
    /// the limit point of infinite play does too.
    pub fn enclosure(&self) -> Option<&Interval> {
        self.last_bob_ball()
    }

    /// Re-validate the whole move list from scratch (used by the offline
    /// verification pass; needs no strategy state).
    pub fn revalidate(&self) -> Result<(), MoveViolation> {
        let mut fresh = GameTranscript::new(self.params.clone());
        for m in &self.moves {
            fresh.apply(m.role, m.ball.clone())?;
        }
        Ok(())
    }

    /// One line per move: `round role left right` with rationals as
    /// `num/den`.  This is the bit-exact replay format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.moves {
            out.push_str(&format!(
                "{} {} {} {}\n",
                m.round,
                m.role,
                m.ball.left(),
                m.ball.right()
            ));
        }
        out
    }

    /// Parse the move list written by [`GameTranscript::to_text`] and
    /// re-validate it under the given parameters.
    pub fn parse(params: GameParams, text: &str) -> Result<Self, TranscriptParseError> {
        let mut t = GameTranscript::new(params);
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let mut next = || {
                parts
                    .next()
                    .ok_or_else(|| TranscriptParseError::BadLine(idx + 1, line.to_string()))
            };
            let round: u32 = next()?
                .parse()
                .map_err(|_| TranscriptParseError::BadLine(idx + 1, line.to_string()))?;
            let role: Role = next()?.parse()?;
            let left: Rational = next()?
                .parse()
                .map_err(|_| TranscriptParseError::BadLine(idx + 1, line.to_string()))?;
            let right: Rational = next()?
                .parse()
                .map_err(|_| TranscriptParseError::BadLine(idx + 1, line.to_string()))?;
            let ball = Interval::closed(left, right)
                .map_err(|_| TranscriptParseError::BadLine(idx + 1, line.to_string()))?;
            t.apply(role, ball.clone())
                .map_err(TranscriptParseError::Illegal)?;
            if t.moves.last().map(|m| m.round) != Some(round) {
                return Err(TranscriptParseError::BadRound(idx + 1, round));
            }
        }
        Ok(t)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranscriptParseError {
    #[error("unreadable transcript line {0}: `{1}`")]
    BadLine(usize, String),
    #[error("unknown role `{0}`")]
    BadRole(String),
    #[error("round numbering mismatch at line {0} (round {1})")]
    BadRound(usize, u32),
    #[error("transcript replays an illegal move: {0}")]
    Illegal(MoveViolation),
}

/// Why a game stopped early, along with everything played up to that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFailure {
    pub partial: GameTranscript,
    pub error: GameErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameErrorKind {
    #[error("{0}")]
    IllegalMove(MoveViolation),
    #[error("{role} strategy failed: {source}")]
    Strategy { role: Role, source: StrategyError },
    #[error("a game needs at least one round")]
    NoRounds,
}

impl fmt::Display for GameFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} completed rounds)", self.error, self.partial.completed_rounds())
    }
}

impl std::error::Error for GameFailure {}

/// Play `rounds` full Bob+Alice exchanges.  Deterministic given both
/// strategies; aborts on the first illegal move or strategy error, returning
/// the partial transcript alongside the cause.
pub fn run_game(
    params: &GameParams,
    alice: &mut dyn Strategy,
    bob: &mut dyn Strategy,
    rounds: u32,
) -> Result<GameTranscript, GameFailure> {
    let mut transcript = GameTranscript::new(params.clone());
    if rounds == 0 {
        return Err(GameFailure { partial: transcript, error: GameErrorKind::NoRounds });
    }
    fn step(
        transcript: &mut GameTranscript,
        player: &mut dyn Strategy,
        role: Role,
    ) -> Result<(), GameErrorKind> {
        let ball = player
            .next_move(transcript, role)
            .map_err(|source| GameErrorKind::Strategy { role, source })?;
        transcript.apply(role, ball).map_err(GameErrorKind::IllegalMove)
    }
    for _ in 0..rounds {
        if let Err(error) = step(&mut transcript, bob, Role::Bob)
            .and_then(|()| step(&mut transcript, alice, Role::Alice))
        {
            return Err(GameFailure { partial: transcript, error });
        }
    }
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{CenteredAlice, ExtremeBob, ExtremeSide};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::of(n, d)
    }

    fn params_half() -> GameParams {
        GameParams::new(r(1, 2), r(1, 2)).unwrap()
    }

    fn unit() -> Interval {
        Interval::closed(r(0, 1), r(1, 1)).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_of(&r(1, 2), &r(1, 2)).unwrap(), r(1, 4));
        assert_eq!(gamma_of(&r(3, 4), &r(1, 2)).unwrap(), r(-1, 8));
        assert!(gamma_of(&r(1, 1), &r(1, 2)).is_err());
        assert!(gamma_of(&r(0, 1), &r(1, 2)).is_err());
    }

    #[test]
    fn abg_boundary_probe() {
        // the product bound is attained only outside the open square
        assert_eq!(abg_product(&r(1, 2), &r(1, 1)), r(1, 4));
        assert_eq!(abg_product(&r(1, 2), &r(1, 2)), r(1, 16));
    }

    #[test]
    fn validate_move_examples() {
        let mut t = GameTranscript::new(params_half());
        t.apply(Role::Bob, unit()).unwrap();

        let ok = Interval::closed(r(1, 2), r(1, 1)).unwrap();
        assert!(t.validate_candidate(Role::Alice, &ok).is_ok());

        let bad_ratio = Interval::closed(r(1, 2), r(9, 10)).unwrap();
        assert_eq!(
            t.validate_candidate(Role::Alice, &bad_ratio).unwrap_err().kind,
            ViolationKind::Ratio
        );

        let bad_containment = Interval::closed(r(3, 4), r(5, 4)).unwrap();
        assert_eq!(
            t.validate_candidate(Role::Alice, &bad_containment).unwrap_err().kind,
            ViolationKind::Containment
        );

        let open = Interval::half_open(r(1, 2), r(1, 1)).unwrap();
        assert_eq!(
            t.validate_candidate(Role::Alice, &open).unwrap_err().kind,
            ViolationKind::NotClosed
        );
    }

    #[test]
    fn geometric_shrinkage() {
        let params = params_half();
        let mut alice = CenteredAlice;
        let mut bob = ExtremeBob::new(ExtremeSide::Left, unit());
        let t = run_game(&params, &mut alice, &mut bob, 3).unwrap();
        let b3 = t.ball_of(Role::Bob, 3).unwrap();
        assert_eq!(b3.length(), r(1, 16));
        // nesting and the per-round radius law
        let ab = params.alpha_beta();
        for i in 1..3u32 {
            let b = t.ball_of(Role::Bob, i).unwrap();
            let next = t.ball_of(Role::Bob, i + 1).unwrap();
            assert!(b.contains(next));
            assert_eq!(next.length(), &ab * b.length());
        }
    }

    #[test]
    fn enclosure_is_last_bob_ball() {
        let params = params_half();
        let mut alice = CenteredAlice;
        let mut bob = ExtremeBob::new(ExtremeSide::Left, unit());
        let t = run_game(&params, &mut alice, &mut bob, 1).unwrap();
        assert_eq!(t.enclosure().unwrap(), &unit());

        let t = run_game(
            &params,
            &mut CenteredAlice,
            &mut ExtremeBob::new(ExtremeSide::Left, unit()),
            60,
        )
        .unwrap();
        assert_eq!(t.enclosure().unwrap().length(), r(1, 4).pow(59));
    }

    #[test]
    fn transcript_text_round_trip() {
        let params = params_half();
        let t = run_game(
            &params,
            &mut CenteredAlice,
            &mut ExtremeBob::new(ExtremeSide::Right, unit()),
            5,
        )
        .unwrap();
        let text = t.to_text();
        let parsed = GameTranscript::parse(params, &text).unwrap();
        assert_eq!(parsed, t);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn max_abg_grid_sample() {
        let mut samples = Vec::new();
        for i in 1..40i64 {
            for j in 1..40i64 {
                let a = r(i, 40);
                let b = r(j, 40);
                if gamma_of(&a, &b).map(|g| g.is_positive()).unwrap_or(false) {
                    samples.push((a, b));
                }
            }
        }
        assert!(samples.len() > 500);
        max_abg_check(&samples).unwrap();
    }

    proptest! {
        #[test]
        fn half_alpha_is_always_in_s(num in 1i64..100) {
            // (1/2, beta) has gamma = beta/2 > 0 for every beta in (0,1)
            let beta = r(num, 100);
            let p = GameParams::new(r(1, 2), beta.clone()).unwrap();
            prop_assert!(p.in_s());
            prop_assert_eq!(p.gamma(), beta / Rational::from_int(2));
        }
    }
}
