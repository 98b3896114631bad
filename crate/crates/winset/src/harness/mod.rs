//! Experiment harness: plain-text configs, deterministic runs, line-record
//! reports, offline verification, and the CLI front end.

pub mod cli;
pub mod config;
pub mod dimension;
pub mod experiment;
pub mod report;

pub use config::{AliceSpec, BobSpec, ConfigError, ExperimentConfig, FamilySpec, SeqSpec};
pub use dimension::{box_dimension, shift_witness_report, DimensionEstimate, ShiftWitnessReport};
pub use experiment::{
    build_family, certify_family, run_experiment, run_stats, verify_outcome, verify_records,
    write_outcome, ExperimentOutcome, HarnessError, VerifyReport,
};
pub use report::{StatLine, StatValue};
