//! Finite equidistribution statistics: membership counts, star discrepancy,
//! shifted-orbit samples and coarse orbit coverage.

use crate::cantor::{BasicSequence, CantorError};
use crate::interval::Interval;
use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistributionError {
    #[error("need at least one point")]
    Empty,
    #[error("point {0} is outside [0, 1)")]
    PointOutOfRange(Rational),
    #[error("prefix length {0} exceeds the {1} points available")]
    PrefixTooLong(usize, usize),
    #[error("bin count must be >= 1")]
    NoBins,
    #[error(transparent)]
    Cantor(#[from] CantorError),
}

/// How many of the first `n` values have fractional part inside `interval`.
pub fn a_count(
    values: &[Rational],
    interval: &Interval,
    n: usize,
) -> Result<usize, DistributionError> {
    if n > values.len() {
        return Err(DistributionError::PrefixTooLong(n, values.len()));
    }
    Ok(values[..n]
        .iter()
        .filter(|x| interval.contains_point(&x.frac_part()))
        .count())
}

/// Exact star discrepancy of a finite point set in `[0, 1)`:
/// with the points sorted as `x_(1) <= ... <= x_(N)`, the maximum over `i`
/// of `max(i/N - x_(i), x_(i) - (i-1)/N)`.
pub fn star_discrepancy(points: &[Rational]) -> Result<Rational, DistributionError> {
    if points.is_empty() {
        return Err(DistributionError::Empty);
    }
    for p in points {
        if p.is_negative() || *p >= Rational::one() {
            return Err(DistributionError::PointOutOfRange(p.clone()));
        }
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    let n = Rational::from_int(sorted.len() as i64);
    let mut best = Rational::zero();
    for (idx, x) in sorted.iter().enumerate() {
        let i = Rational::from_int(idx as i64 + 1);
        let up = &i / &n - x;
        let down = x - (&i - &Rational::one()) / &n;
        for candidate in [up, down] {
            if candidate > best {
                best = candidate;
            }
        }
    }
    Ok(best)
}

/// The arithmetic-progression subsequence of the shifted orbit of `x`:
/// `(T_{k*1+p}(x), ..., T_{k*n+p}(x))`.  Phases `1 <= p <= k` are the
/// subsequences whose joint equidistribution defines the strong property;
/// `k = 1, p = 0` yields the plain orbit `(T_1, ..., T_n)`.
pub fn distribution_points(
    x: &Rational,
    seq: &BasicSequence,
    n: u64,
    stride: u64,
    phase: u64,
) -> Result<Vec<Rational>, DistributionError> {
    let plain = stride == 1 && phase == 0;
    if !plain && (stride == 0 || phase == 0 || phase > stride) {
        return Err(CantorError::BadPhase.into());
    }
    // one pass of the modular state, sampling at the requested indices
    let fr = x.frac_part();
    let den = fr.denom().clone();
    let mut num = fr.numer().clone();
    let mut out = Vec::with_capacity(n as usize);
    let last = stride * n + phase;
    for j in 1..=last {
        let q = seq.q(j).ok_or(CantorError::SequenceExhausted(j))?;
        num = (num * q) % &den;
        if j >= stride + phase && (j - phase).is_multiple_of(stride) {
            out.push(Rational::from_big(num.clone(), den.clone()).expect("den > 0"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCoverage {
    /// Hits per bin of the uniform partition of `[0, 1)`.
    pub bins: Vec<u64>,
    /// Indices of bins no orbit point reached.
    pub untouched: Vec<usize>,
}

/// Bin the first `n` shifted-orbit values of `x` into `bins` equal cells of
/// `[0, 1)` — a finite stand-in for density of the orbit.
pub fn orbit_coverage(
    x: &Rational,
    seq: &BasicSequence,
    n: u64,
    bins: u32,
) -> Result<OrbitCoverage, DistributionError> {
    if bins == 0 {
        return Err(DistributionError::NoBins);
    }
    let mut counts = vec![0u64; bins as usize];
    let fr = x.frac_part();
    let den = fr.denom().clone();
    let mut num = fr.numer().clone();
    for j in 1..=n {
        let q = seq.q(j).ok_or(CantorError::SequenceExhausted(j))?;
        num = (num * q) % &den;
        // bin = floor(bins * T_j)
        let bin = (&num * bins) / &den;
        let idx: u64 = bin.try_into().expect("bin index fits");
        counts[idx as usize] += 1;
    }
    let untouched = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(i, _)| i)
        .collect();
    Ok(OrbitCoverage { bins: counts, untouched })
}
