//! Exact-arithmetic nested-interval games on the real line.
//!
//! Two players alternately shrink a closed interval by fixed rational
//! factors.  For the right parameter region, Alice owns a constructive
//! strategy that steers the limit point clear of one level after another of
//! an analytic interval family — and the points she produces have visibly
//! skewed digit statistics in the expansion the family encodes.  This crate
//! builds the whole pipeline with every comparison exact:
//!
//! * [`rational`] / [`interval`] — arbitrary-precision scalars and
//!   kind-aware intervals (closed game balls, half-open family cells);
//! * [`game`] — the alternating game engine with exact move validation and
//!   replayable transcripts;
//! * [`strategy`] / [`avoidance`] — Alice's push and level-avoidance
//!   machines plus a seeded adversary suite for Bob;
//! * [`family`] — analytic level systems (uniform scale and
//!   product scale) and the spacing checker that predicts when the
//!   avoidance machine wins;
//! * [`cantor`] / [`distribution`] — generalized radix expansions, block
//!   counts, discrepancy and orbit statistics, all at finite prefixes;
//! * [`harness`] — configs, deterministic experiment runs, line-record
//!   reports, offline verification, box-counting dimension estimates, and
//!   the CLI.
//!
//! The `examples/` directory is the guided tour: one runnable program per
//! capability.  The `winset` binary exposes the same flows as subcommands
//! (`play`, `certify`, `stats`, `dimension`, `footnote`, `verify`).

// error payloads carry exact rationals; boxing them buys nothing here
#![allow(clippy::result_large_err)]

pub mod avoidance;
pub mod cantor;
pub mod distribution;
pub mod family;
pub mod game;
pub mod harness;
pub mod interval;
pub mod rational;
pub mod rng;
pub mod strategy;

pub use avoidance::{AvoidanceAlice, CertificationRecord};
pub use cantor::{BasicSequence, Block, DigitExpansion};
pub use family::{CantorFamily, IntervalFamily, UniformFamily};
pub use game::{GameParams, GameTranscript, Role, Strategy};
pub use interval::{Interval, IntervalKind, Relation};
pub use rational::Rational;
