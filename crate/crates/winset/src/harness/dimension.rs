//! Box-counting dimension of digit-restricted sets, and the two-convention
//! shifted-digit demonstration.
//!
//! For the set of numbers whose base-`b` digits avoid a set `V` up to depth
//! `m`, the surviving cover at scale `b^-m` has exactly `(b - |V|)^m` cells —
//! a combinatorial count, not a sample — so the dimension estimate is the
//! least-squares slope of `ln N(m)` against `m ln b` over the requested
//! depths.  The points are exactly collinear; the slope is
//! `ln(b - |V|) / ln b` up to floating rounding.

use crate::cantor::{shift_t, value_of, BasicSequence, DigitExpansion};
use crate::rational::Rational;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimensionError {
    #[error("base must be >= 2, got {0}")]
    BadBase(u64),
    #[error("avoided digit {0} is not a base-{1} digit")]
    BadAvoid(u64, u64),
    #[error("need at least two distinct depths")]
    TooFewDepths,
    #[error("no digits survive the avoided set")]
    NothingSurvives,
}

#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub base: u64,
    pub survivors: u64,
    /// Exact cover counts per depth.
    pub counts: Vec<(u32, BigUint)>,
    /// Least-squares slope of `ln N(m)` vs `m ln base`.
    pub slope: f64,
}

/// `ln` of an exact big count via its bit length, good to double precision.
fn ln_big(n: &BigUint) -> f64 {
    if let Some(v) = n.to_f64() {
        if v.is_finite() {
            return v.ln();
        }
    }
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top: BigUint = n >> shift;
    (top.to_f64().unwrap_or(1.0)).ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn box_dimension(
    base: u64,
    avoid: &[u64],
    depths: &[u32],
) -> Result<DimensionEstimate, DimensionError> {
    if base < 2 {
        return Err(DimensionError::BadBase(base));
    }
    let mut avoided: Vec<u64> = avoid.to_vec();
    avoided.sort_unstable();
    avoided.dedup();
    for &d in &avoided {
        if d >= base {
            return Err(DimensionError::BadAvoid(d, base));
        }
    }
    let survivors = base - avoided.len() as u64;
    if survivors == 0 {
        return Err(DimensionError::NothingSurvives);
    }
    let mut depths: Vec<u32> = depths.to_vec();
    depths.sort_unstable();
    depths.dedup();
    if depths.len() < 2 {
        return Err(DimensionError::TooFewDepths);
    }

    let mut counts = Vec::with_capacity(depths.len());
    for &m in &depths {
        let n: BigUint = num_traits::pow(BigUint::from(survivors), m as usize);
        counts.push((m, n));
    }

    // both axes go through the same exact-count logarithm, so a full cover
    // (survivors == base) yields slope 1.0 identically
    let points: Vec<(f64, f64)> = counts
        .iter()
        .map(|(m, n)| {
            let full: BigUint = num_traits::pow(BigUint::from(base), *m as usize);
            (ln_big(&full), ln_big(n))
        })
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    let slope = sxy / sxx;

    Ok(DimensionEstimate { base, survivors, counts, slope })
}

/// A digit pattern that is equidistributed along the plain orbit yet biased
/// along every other shifted subsequence: the even digit positions all carry
/// digits of at least half their term.
#[derive(Debug, Clone)]
pub struct ShiftWitnessRow {
    pub n: u64,
    /// Digit position `2n` and its digit/term pair.
    pub position: u64,
    pub digit: u64,
    pub term: u64,
    pub digit_at_least_half_term: bool,
    /// `T_{2n-1}(x)` — shift indexed by the digit position convention.
    pub shift_digit_convention: Rational,
    /// `T_{2n}(x)` — shift indexed one later.
    pub shift_orbit_convention: Rational,
    pub digit_convention_exceeds_half: bool,
    pub orbit_convention_exceeds_half: bool,
}

#[derive(Debug, Clone)]
pub struct ShiftWitnessReport {
    pub digits: Vec<u64>,
    pub terms: Vec<u64>,
    pub x: Rational,
    pub rows: Vec<ShiftWitnessRow>,
}

/// Fixed 12-digit witness: digits `0 1 0 2 1 3 0 3 1 4 2 5` against terms
/// `2 2 4 4 4 4 6 6 6 6 6 6`.  Every even position `2n` satisfies
/// `digit >= term/2`, so the shift `T_{2n-1}` — the value whose leading
/// digit is the position-`2n` digit — sits in the upper half of `[0, 1)`.
/// Both index conventions are reported side by side.
pub fn shift_witness_report() -> ShiftWitnessReport {
    let digit_vals: Vec<u64> = vec![0, 1, 0, 2, 1, 3, 0, 3, 1, 4, 2, 5];
    let term_vals: Vec<u64> = vec![2, 2, 4, 4, 4, 4, 6, 6, 6, 6, 6, 6];
    let seq = BasicSequence::from_list(term_vals.clone()).expect("terms >= 2");
    let d = DigitExpansion::from_u64s(seq.clone(), &digit_vals).expect("digits in range");
    let x = value_of(&d).expect("in-range digits");

    let half = Rational::of(1, 2);
    let mut rows = Vec::new();
    for n in 1..=6u64 {
        let position = 2 * n;
        let digit = digit_vals[(position - 1) as usize];
        let term = term_vals[(position - 1) as usize];
        let shift_digit_convention = shift_t(&x, &seq, position - 1).expect("within list");
        let shift_orbit_convention = shift_t(&x, &seq, position).expect("within list");
        rows.push(ShiftWitnessRow {
            n,
            position,
            digit,
            term,
            digit_at_least_half_term: 2 * digit >= term,
            digit_convention_exceeds_half: shift_digit_convention > half,
            orbit_convention_exceeds_half: shift_orbit_convention > half,
            shift_digit_convention,
            shift_orbit_convention,
        });
    }
    ShiftWitnessReport { digits: digit_vals, terms: term_vals, x, rows }
}

pub fn render_dimension(est: &DimensionEstimate) -> String {
    let mut out = String::new();
    for (m, n) in &est.counts {
        out.push_str(&format!("count depth={m} cells={n}\n"));
    }
    out.push_str(&format!(
        "slope base={} survivors={} value={:.6}\n",
        est.base, est.survivors, est.slope
    ));
    out
}

pub fn render_shift_witness(report: &ShiftWitnessReport) -> String {
    let mut out = String::new();
    let digit_strs: Vec<String> = report.digits.iter().map(|d| d.to_string()).collect();
    let term_strs: Vec<String> = report.terms.iter().map(|t| t.to_string()).collect();
    out.push_str(&format!("witness digits={} terms={} x={}\n",
        digit_strs.join(","), term_strs.join(","), report.x));
    for r in &report.rows {
        out.push_str(&format!(
            "row n={} position={} digit={} term={} digit_at_least_half_term={} shift_digit_convention={} exceeds_half={} shift_orbit_convention={} exceeds_half={}\n",
            r.n,
            r.position,
            r.digit,
            r.term,
            r.digit_at_least_half_term,
            r.shift_digit_convention,
            r.digit_convention_exceeds_half,
            r.shift_orbit_convention,
            r.orbit_convention_exceeds_half
        ));
    }
    out
}
