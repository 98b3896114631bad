//! Analytic families of interval levels and the spacing checker.
//!
//! A family provides, for every level `k >= 1`, a bi-infinite ordered run of
//! disjoint half-open members `C(k, n)` separated by gaps `D(k, n)` (the gap
//! with index `n` sits between members `n-1` and `n`).  Families are stored
//! as closed forms — member endpoints come from index arithmetic, never from
//! materialized lists — so enumeration over a window is exact and costs only
//! the members actually intersected.
//!
//! `check_friendly` verifies the spacing conditions that make a family
//! beatable by the avoidance strategy, window by window:
//!
//! * `three_members` — every level-`k` gap contains at least three members
//!   of level `k+1`;
//! * `gap_to_member` — each gap is long against its adjacent members:
//!   `len(D(k,n)) * alpha*beta*gamma >= max(len(C(k,n-1)), len(C(k,n)))`;
//! * `nested_gap` — the level-`(k+1)` gaps inside `D(k,n)` are short against
//!   the neighbouring level-`k` gaps:
//!   `len(D') < (alpha*beta)^2 * gamma / 6 * min` over the three gaps around
//!   index `n`.
//!
//! `gap_to_member` is accepted at equality on purpose: the canonical cell
//! `[0, abg/(1+abg))` produces exact equality there, and because members are
//! half-open a ball pushed exactly to the boundary still misses the member.
//! A fourth verdict, `nesting` (children do not straddle level-`k`
//! breakpoints), is reported for information but does not gate the overall
//! verdict — cells whose length is not an exact reciprocal of a term
//! necessarily leave one straddling child gap per member boundary, and the
//! avoidance machinery never relies on it.

use crate::cantor::BasicSequence;
use crate::game::GameParams;
use crate::interval::Interval;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::One;
use std::ops::RangeInclusive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family cell must satisfy 0 <= left < right <= 1 with positive complement, got [{0}, {1})")]
    BadCell(Rational, Rational),
    #[error("uniform family scale must be >= 2, got {0}")]
    BadScale(u64),
    #[error("these parameters admit no friendliness level: {0}")]
    NoFriendlyLevel(String),
    #[error("sequence terms do not stay above {threshold} within the first {scanned} positions")]
    PrefixNeverStabilizes { threshold: Rational, scanned: u64 },
    #[error("parameters must have gamma > 0")]
    NotInS,
}

/// A level system of half-open members and the gaps between them.
pub trait IntervalFamily {
    /// Member `C(k, n)`, `k >= 1`.
    fn member(&self, k: u32, n: &BigInt) -> Interval;

    /// Gap `D(k, n)` between members `n-1` and `n`.
    fn gap(&self, k: u32, n: &BigInt) -> Interval;

    /// Exactly the members intersecting `window`, in index order.
    fn members_in(&self, k: u32, window: &Interval) -> Vec<(BigInt, Interval)>;

    /// Smallest level bound `K` such that the spacing conditions hold for
    /// every level `k > K` under these parameters.
    fn friendliness_start(&self, params: &GameParams) -> Result<u32, FamilyError>;

    /// Distance between consecutive member left endpoints at level `k`.
    fn period(&self, k: u32) -> Rational {
        let one = BigInt::one();
        let zero = BigInt::from(0);
        self.member(k, &one).left() - self.member(k, &zero).left()
    }

    /// Closed-form restatement of the spacing conditions, when the family
    /// has one; `levels` is the highest level the caller will probe.
    fn closed_form(&self, params: &GameParams, levels: u32) -> Option<ClosedFormCheck> {
        let _ = (params, levels);
        None
    }

    /// The digit system this family's levels encode, when there is one:
    /// avoiding level `k` pins digit `k+1` of that expansion away from the
    /// cell.
    fn digit_sequence(&self) -> Option<BasicSequence> {
        None
    }

    /// Configuration-grammar descriptor.
    fn describe(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub gap_to_member_ok: bool,
    pub nested_gap_ok: bool,
    pub note: String,
}

fn validate_cell(cell: &(Rational, Rational)) -> Result<(), FamilyError> {
    let (a, b) = cell;
    let ok = !a.is_negative() && a < b && *b <= Rational::one() && (b - a) < Rational::one();
    if ok {
        Ok(())
    } else {
        Err(FamilyError::BadCell(a.clone(), b.clone()))
    }
}

/// Scale-`eta` family: level `k` consists of the intervals
/// `[(n + a) / eta^k, (n + b) / eta^k)` for all integers `n`, the preimages
/// of the cell `[a, b)` under `k` applications of `x -> eta * x (mod 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformFamily {
    eta: u64,
    cell: (Rational, Rational),
}

impl UniformFamily {
    pub fn new(eta: u64, cell: (Rational, Rational)) -> Result<Self, FamilyError> {
        if eta < 2 {
            return Err(FamilyError::BadScale(eta));
        }
        validate_cell(&cell)?;
        Ok(UniformFamily { eta, cell })
    }

    pub fn eta(&self) -> u64 {
        self.eta
    }

    pub fn cell_length(&self) -> Rational {
        &self.cell.1 - &self.cell.0
    }

    fn scale(&self, k: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.eta), k as usize)
    }
}

/// Product-scale family: level `k` consists of the intervals
/// `[(n + a) / P_k, (n + b) / P_k)` where `P_k = q_1 q_2 ... q_k`.
#[derive(Debug, Clone)]
pub struct CantorFamily {
    seq: BasicSequence,
    cell: (Rational, Rational),
    /// How far ahead `friendliness_start` scans the term sequence.
    scan_bound: u64,
}

impl CantorFamily {
    pub fn new(seq: BasicSequence, cell: (Rational, Rational)) -> Result<Self, FamilyError> {
        validate_cell(&cell)?;
        Ok(CantorFamily { seq, cell, scan_bound: 4096 })
    }

    pub fn seq(&self) -> &BasicSequence {
        &self.seq
    }

    pub fn cell_length(&self) -> Rational {
        &self.cell.1 - &self.cell.0
    }

    fn scale(&self, k: u32) -> BigInt {
        self.seq
            .partial_product(k as u64)
            .unwrap_or_else(|| panic!("basic sequence exhausted below level {k}"))
    }
}

fn analytic_member(scale: &BigInt, cell: &(Rational, Rational), n: &BigInt) -> Interval {
    let p = Rational::from_bigint(scale.clone());
    let n = Rational::from_bigint(n.clone());
    let left = (&n + &cell.0) / &p;
    let right = (&n + &cell.1) / &p;
    Interval::half_open(left, right).expect("cell has positive length")
}

fn analytic_gap(scale: &BigInt, cell: &(Rational, Rational), n: &BigInt) -> Interval {
    let p = Rational::from_bigint(scale.clone());
    let n = Rational::from_bigint(n.clone());
    let left = (&n - &Rational::one() + &cell.1) / &p;
    let right = (&n + &cell.0) / &p;
    Interval::half_open(left, right).expect("cell complement has positive length")
}

/// Index range of members `[(n+a)/P, (n+b)/P)` meeting `window`, by exact
/// floor/ceil arithmetic: the member must start before the window ends and
/// end after the window starts.
fn analytic_members_in(
    scale: &BigInt,
    cell: &(Rational, Rational),
    window: &Interval,
) -> RangeInclusive<BigInt> {
    let p = Rational::from_bigint(scale.clone());
    // (n + b)/P > w_left  <=>  n > P*w_left - b
    let lower = &p * window.left() - &cell.1;
    let n_min = lower.floor_int() + 1;
    // closed window: (n + a)/P <= w_right; half-open: strict
    let upper = &p * window.right() - &cell.0;
    let n_max = if window.is_closed() {
        upper.floor_int()
    } else if upper.is_integer() {
        upper.floor_int() - 1
    } else {
        upper.floor_int()
    };
    n_min..=n_max
}

impl IntervalFamily for UniformFamily {
    fn member(&self, k: u32, n: &BigInt) -> Interval {
        assert!(k >= 1, "levels start at 1");
        analytic_member(&self.scale(k), &self.cell, n)
    }

    fn gap(&self, k: u32, n: &BigInt) -> Interval {
        assert!(k >= 1, "levels start at 1");
        analytic_gap(&self.scale(k), &self.cell, n)
    }

    fn members_in(&self, k: u32, window: &Interval) -> Vec<(BigInt, Interval)> {
        let scale = self.scale(k);
        let range = analytic_members_in(&scale, &self.cell, window);
        let (mut n, end) = range.into_inner();
        let mut out = Vec::new();
        while n <= end {
            out.push((n.clone(), analytic_member(&scale, &self.cell, &n)));
            n += 1;
        }
        out
    }

    fn friendliness_start(&self, params: &GameParams) -> Result<u32, FamilyError> {
        if !params.in_s() {
            return Err(FamilyError::NotInS);
        }
        let cf = self.closed_form(params, 1).expect("uniform closed form");
        if cf.gap_to_member_ok && cf.nested_gap_ok {
            Ok(0)
        } else {
            Err(FamilyError::NoFriendlyLevel(cf.note))
        }
    }

    fn closed_form(&self, params: &GameParams, _levels: u32) -> Option<ClosedFormCheck> {
        let lambda = self.cell_length();
        let abg = params.alpha_beta() * params.gamma();
        let gap_to_member_ok = (Rational::one() - &lambda) * &abg >= lambda;
        let nested_bound = params.alpha_beta().pow(2) * params.gamma() / Rational::from_int(6);
        let nested_gap_ok = Rational::of(1, self.eta as i64) < nested_bound;
        let note = format!(
            "uniform: lengths scale by 1/eta per level, so the conditions are level-free; \
             cell length {} vs abg {}, 1/eta vs {}",
            self.cell_length(),
            abg,
            nested_bound
        );
        Some(ClosedFormCheck { gap_to_member_ok, nested_gap_ok, note })
    }

    fn digit_sequence(&self) -> Option<BasicSequence> {
        BasicSequence::constant(self.eta).ok()
    }

    fn describe(&self) -> String {
        format!("uniform eta={} cell={},{}", self.eta, self.cell.0, self.cell.1)
    }
}

impl IntervalFamily for CantorFamily {
    fn member(&self, k: u32, n: &BigInt) -> Interval {
        assert!(k >= 1, "levels start at 1");
        analytic_member(&self.scale(k), &self.cell, n)
    }

    fn gap(&self, k: u32, n: &BigInt) -> Interval {
        assert!(k >= 1, "levels start at 1");
        analytic_gap(&self.scale(k), &self.cell, n)
    }

    fn members_in(&self, k: u32, window: &Interval) -> Vec<(BigInt, Interval)> {
        let scale = self.scale(k);
        let range = analytic_members_in(&scale, &self.cell, window);
        let (mut n, end) = range.into_inner();
        let mut out = Vec::new();
        while n <= end {
            out.push((n.clone(), analytic_member(&scale, &self.cell, &n)));
            n += 1;
        }
        out
    }

    fn friendliness_start(&self, params: &GameParams) -> Result<u32, FamilyError> {
        if !params.in_s() {
            return Err(FamilyError::NotInS);
        }
        let lambda = self.cell_length();
        let abg = params.alpha_beta() * params.gamma();
        if (Rational::one() - &lambda) * &abg < lambda {
            return Err(FamilyError::NoFriendlyLevel(format!(
                "cell length {} exceeds abg/(1+abg)",
                lambda
            )));
        }
        let threshold = Rational::from_int(6) / (params.alpha_beta().pow(2) * params.gamma());
        let limit = self.seq.known_len().map_or(self.scan_bound, |l| l.min(self.scan_bound));
        let mut last_fail: u64 = 0;
        for j in 1..=limit {
            let q = match self.seq.q(j) {
                Some(q) => q,
                None => break,
            };
            if Rational::from_bigint(q) <= threshold {
                last_fail = j;
            }
        }
        if last_fail >= limit {
            return Err(FamilyError::PrefixNeverStabilizes { threshold, scanned: limit });
        }
        Ok(last_fail as u32)
    }

    fn closed_form(&self, params: &GameParams, levels: u32) -> Option<ClosedFormCheck> {
        let lambda = self.cell_length();
        let abg = params.alpha_beta() * params.gamma();
        let gap_to_member_ok = (Rational::one() - &lambda) * &abg >= lambda;
        let threshold = Rational::from_int(6) / (params.alpha_beta().pow(2) * params.gamma());
        let mut nested_gap_ok = true;
        for j in 2..=(levels as u64 + 1) {
            match self.seq.q(j) {
                Some(q) => {
                    if Rational::from_bigint(q) <= threshold {
                        nested_gap_ok = false;
                    }
                }
                None => nested_gap_ok = false,
            }
        }
        let note = format!(
            "cantor: nested gaps shrink by 1/q per level; needs every probed term > {}",
            threshold
        );
        Some(ClosedFormCheck { gap_to_member_ok, nested_gap_ok, note })
    }

    fn digit_sequence(&self) -> Option<BasicSequence> {
        Some(self.seq.clone())
    }

    fn describe(&self) -> String {
        format!("cantor q={} cell={},{}", self.seq.describe(), self.cell.0, self.cell.1)
    }
}

/// Right endpoint of the canonical avoided cell `[0, abg / (1 + abg))`.
/// A zero digit at position `j` lands the shifted orbit value `T_{j-1}`
/// inside this cell whenever the sequence term `q_j` exceeds its reciprocal.
pub fn i_threshold(params: &GameParams) -> Result<Rational, FamilyError> {
    if !params.in_s() {
        return Err(FamilyError::NotInS);
    }
    let abg = params.alpha_beta() * params.gamma();
    Ok(&abg / (Rational::one() + &abg))
}

/// Grouping factor `t = 1 + ceil(log2(6 / ((alpha*beta)^2 * gamma)))`,
/// computed by exact power-of-two comparisons.  Grouping any basic sequence
/// in blocks of `t` makes every grouped term at least `2^t`, which clears
/// the nested-gap threshold.
pub fn grouping_t(params: &GameParams) -> Result<u32, FamilyError> {
    if !params.in_s() {
        return Err(FamilyError::NotInS);
    }
    let target = Rational::from_int(6) / (params.alpha_beta().pow(2) * params.gamma());
    // target > 1 always (the product bound keeps (ab)^2*gamma < 1/4), so the
    // ceiling search starts at 0 and walks up
    let mut e: u32 = 0;
    let mut power = BigInt::one();
    while Rational::from_bigint(&power * target.denom()) < Rational::from_bigint(target.numer().clone()) {
        power *= 2;
        e += 1;
    }
    Ok(e + 1)
}

/// The grouped sequence `psi_j = q_{(j-1)t+1} * ... * q_{jt}`.
pub fn group_sequence(seq: &BasicSequence, t: u32) -> Result<BasicSequence, crate::cantor::CantorError> {
    seq.grouped(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FriendCondition {
    ThreeMembers,
    GapToMember,
    NestedGap,
}

impl FriendCondition {
    pub fn name(self) -> &'static str {
        match self {
            FriendCondition::ThreeMembers => "three_members",
            FriendCondition::GapToMember => "gap_to_member",
            FriendCondition::NestedGap => "nested_gap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendCell {
    pub k: u32,
    pub n: i64,
    pub three_members: bool,
    pub gap_to_member: bool,
    pub nested_gap: bool,
    /// Informational: no child member or gap straddles this gap's endpoints.
    pub nesting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendViolation {
    pub k: u32,
    pub n: i64,
    pub condition: FriendCondition,
}

#[derive(Debug, Clone)]
pub struct FriendlinessReport {
    pub cells: Vec<FriendCell>,
    pub overall: bool,
    pub first_violation: Option<FriendViolation>,
    pub closed_form: Option<ClosedFormCheck>,
}

/// Exact spacing verification over a window of levels and gap indices.
/// Violations are data, not errors: the report carries per-cell verdicts and
/// the first failing condition in scan order.
pub fn check_friendly(
    family: &dyn IntervalFamily,
    params: &GameParams,
    k_range: RangeInclusive<u32>,
    n_range: RangeInclusive<i64>,
) -> FriendlinessReport {
    let abg = params.alpha_beta() * params.gamma();
    let nested_bound_factor =
        params.alpha_beta().pow(2) * params.gamma() / Rational::from_int(6);

    let mut cells = Vec::new();
    let mut first_violation = None;
    for k in k_range.clone() {
        for n in n_range.clone() {
            let n_big = BigInt::from(n);
            let gap = family.gap(k, &n_big);

            // (a) at least three level-(k+1) members inside the gap
            let children = family.members_in(k + 1, &gap);
            let contained: Vec<&(BigInt, Interval)> =
                children.iter().filter(|(_, m)| gap.contains(m)).collect();
            let three_members = contained.len() >= 3;

            // informational nesting: no child member or child gap straddles
            // the gap's boundary
            let mut nesting = children.iter().all(|(_, m)| !m.intersects(&gap) || gap.contains(m));
            // child gaps flanking each intersecting child member
            for (m_idx, _) in &children {
                for g_idx in [m_idx.clone(), m_idx + 1] {
                    let child_gap = family.gap(k + 1, &g_idx);
                    if child_gap.intersects(&gap) && !gap.contains(&child_gap) {
                        nesting = false;
                    }
                }
            }

            // (b) gap long against its adjacent members, equality allowed
            let left_member = family.member(k, &(&n_big - 1));
            let right_member = family.member(k, &n_big);
            let g_max = left_member.length().max(right_member.length());
            let gap_to_member = gap.length() * &abg >= g_max;

            // (c) child gaps inside this gap are short against the three
            // neighbouring gaps of level k
            let neighbour_min = family
                .gap(k, &(&n_big - 1))
                .length()
                .min(gap.length())
                .min(family.gap(k, &(&n_big + 1)).length());
            let bound = &nested_bound_factor * &neighbour_min;
            let mut nested_gap = true;
            for (m_idx, _) in &children {
                for g_idx in [m_idx.clone(), m_idx + 1] {
                    let child_gap = family.gap(k + 1, &g_idx);
                    if gap.contains(&child_gap) && child_gap.length() >= bound {
                        nested_gap = false;
                    }
                }
            }

            for (ok, condition) in [
                (three_members, FriendCondition::ThreeMembers),
                (gap_to_member, FriendCondition::GapToMember),
                (nested_gap, FriendCondition::NestedGap),
            ] {
                if !ok && first_violation.is_none() {
                    first_violation = Some(FriendViolation { k, n, condition });
                }
            }

            cells.push(FriendCell { k, n, three_members, gap_to_member, nested_gap, nesting });
        }
    }

    let overall = first_violation.is_none();
    let closed_form = family.closed_form(params, *k_range.end());
    FriendlinessReport { cells, overall, first_violation, closed_form }
}
