//! Intervals with explicit endpoint kinds.
//!
//! The engine mixes two interval species: closed game balls `[a, b]` and
//! half-open family cells `[a, b)`.  Boundary behaviour is the whole game —
//! a closed ball touching a half-open cell at the cell's open end is
//! *disjoint* from it — so the kind is part of the value and every predicate
//! here is exact about it.

use crate::rational::Rational;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("closed interval needs left <= right, got [{0}, {1}]")]
    BadClosed(Rational, Rational),
    #[error("half-open interval needs left < right, got [{0}, {1})")]
    BadHalfOpen(Rational, Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    Closed,
    HalfOpenRight,
}

/// How one interval sits against another, as point sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Disjoint,
    Intersects,
    /// The first interval contains the second.
    Contains,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    left: Rational,
    right: Rational,
    kind: IntervalKind,
}

impl Interval {
    pub fn closed(left: Rational, right: Rational) -> Result<Self, IntervalError> {
        if left > right {
            return Err(IntervalError::BadClosed(left, right));
        }
        Ok(Interval { left, right, kind: IntervalKind::Closed })
    }

    pub fn half_open(left: Rational, right: Rational) -> Result<Self, IntervalError> {
        if left >= right {
            return Err(IntervalError::BadHalfOpen(left, right));
        }
        Ok(Interval { left, right, kind: IntervalKind::HalfOpenRight })
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn kind(&self) -> IntervalKind {
        self.kind
    }

    pub fn is_closed(&self) -> bool {
        self.kind == IntervalKind::Closed
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn radius(&self) -> Rational {
        self.length() / Rational::from_int(2)
    }

    pub fn center(&self) -> Rational {
        (&self.left + &self.right) / Rational::from_int(2)
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        if x < &self.left {
            return false;
        }
        match self.kind {
            IntervalKind::Closed => x <= &self.right,
            IntervalKind::HalfOpenRight => x < &self.right,
        }
    }

    /// Non-empty intersection as point sets, honouring endpoint kinds.
    pub fn intersects(&self, other: &Interval) -> bool {
        let right_reaches = |a: &Interval, b: &Interval| match a.kind {
            // a must extend to b's left endpoint
            IntervalKind::Closed => a.right >= b.left,
            IntervalKind::HalfOpenRight => a.right > b.left,
        };
        right_reaches(self, other) && right_reaches(other, self)
    }

    /// `self ⊇ other` as point sets.
    pub fn contains(&self, other: &Interval) -> bool {
        if self.left > other.left {
            return false;
        }
        match (self.kind, other.kind) {
            (IntervalKind::Closed, _) => other.right <= self.right,
            (IntervalKind::HalfOpenRight, IntervalKind::HalfOpenRight) => {
                other.right <= self.right
            }
            // a closed right endpoint must sit strictly inside a half-open one
            (IntervalKind::HalfOpenRight, IntervalKind::Closed) => other.right < self.right,
        }
    }

    /// Classify the pair.  `Contains` means `self ⊇ other`; the
    /// disjoint/intersects verdicts are symmetric in the arguments.
    pub fn relate(&self, other: &Interval) -> Relation {
        if self.contains(other) {
            Relation::Contains
        } else if self.intersects(other) {
            Relation::Intersects
        } else {
            Relation::Disjoint
        }
    }

    /// Distance between the intervals: the gap between the right end of the
    /// lower one and the left end of the upper one, and zero whenever they
    /// touch or overlap.  The arguments may come in either order.
    pub fn distance(&self, other: &Interval) -> Rational {
        let (lo, hi) = if self.left <= other.left {
            (self, other)
        } else {
            (other, self)
        };
        let gap = &hi.left - &lo.right;
        if gap.is_positive() {
            gap
        } else {
            Rational::zero()
        }
    }

    /// Length of the overlap as a measure; endpoint kinds do not matter for
    /// a length.
    pub fn overlap_length(&self, other: &Interval) -> Rational {
        let lo = if self.left >= other.left { &self.left } else { &other.left };
        let hi = if self.right <= other.right { &self.right } else { &other.right };
        let len = hi - lo;
        if len.is_positive() {
            len
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            IntervalKind::Closed => write!(f, "[{}, {}]", self.left, self.right),
            IntervalKind::HalfOpenRight => write!(f, "[{}, {})", self.left, self.right),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
