//! Generalized radix expansions and their finite-prefix statistics.
//!
//! A basic sequence `Q = (q_1, q_2, ...)` of integers `>= 2` defines the
//! expansion `x = floor(x) + sum_n E_n / (q_1 q_2 ... q_n)` with digits
//! `0 <= E_n <= q_n - 1` and `E_n != q_n - 1` infinitely often.  Constant `Q`
//! recovers ordinary base-`b` digits.
//!
//! Digit extraction works one digit per step by modular reduction of the
//! numerator: with `x = p/d` in `[0,1)`, the next digit is
//! `floor(p*q/d)` and the new state is `(p*q) mod d`, so an `n`-digit prefix
//! costs `n` big-integer operations on operands no larger than the original
//! denominator times one `q`.
//!
//! Everything here is a finite-`n` statistic.  Whether a number *is* normal
//! in any of the limit senses is never decided — reports carry exact counts
//! and ratios at the requested prefix length, nothing more.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CantorError {
    #[error("basic sequence terms must be integers >= 2 ({0})")]
    BadSequence(String),
    #[error("basic sequence has no term at position {0}")]
    SequenceExhausted(u64),
    #[error("digit {digit} out of range at position {position} (term is {term})")]
    DigitOutOfRange { position: u64, digit: BigInt, term: BigInt },
    #[error("operation needs {required} digits but only {available} are present")]
    InsufficientDigits { required: u64, available: u64 },
    #[error("argument must lie in [0, 1), got {0}")]
    XOutOfRange(Rational),
    #[error("block must be nonempty with nonnegative entries")]
    BadBlock,
    #[error("grouping factor must be >= 1")]
    BadGrouping,
    #[error("subsequence phase must satisfy 1 <= p <= k (or k = 1, p = 0 for the plain orbit)")]
    BadPhase,
    #[error("base must be >= 2, got {0}")]
    BadBase(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Rule {
    Const(u64),
    /// `q_n = c0 + c1 * n` for `n >= 1`.
    Affine { c0: u64, c1: u64 },
    List(Vec<u64>),
    /// Blocks of `t` consecutive terms of the inner sequence, multiplied.
    Grouped { inner: Box<BasicSequence>, t: u32 },
}

/// A sequence of integer terms `q_n >= 2`, given by a closed-form rule, an
/// explicit finite list, or a grouping of another sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSequence {
    rule: Rule,
}

impl BasicSequence {
    pub fn constant(v: u64) -> Result<Self, CantorError> {
        if v < 2 {
            return Err(CantorError::BadSequence(format!("constant {v}")));
        }
        Ok(BasicSequence { rule: Rule::Const(v) })
    }

    /// `q_n = c0 + c1 * n`; the first term `c0 + c1` must already be `>= 2`.
    pub fn affine(c0: u64, c1: u64) -> Result<Self, CantorError> {
        if c0 + c1 < 2 {
            return Err(CantorError::BadSequence(format!("affine {c0}+{c1}*n")));
        }
        Ok(BasicSequence { rule: Rule::Affine { c0, c1 } })
    }

    pub fn from_list(terms: Vec<u64>) -> Result<Self, CantorError> {
        if terms.is_empty() || terms.iter().any(|&t| t < 2) {
            return Err(CantorError::BadSequence(format!("list {terms:?}")));
        }
        Ok(BasicSequence { rule: Rule::List(terms) })
    }

    /// The grouped sequence whose `j`-th term is the product
    /// `q_{(j-1)t+1} * ... * q_{jt}`.  `t = 1` returns the sequence as is.
    pub fn grouped(&self, t: u32) -> Result<Self, CantorError> {
        if t == 0 {
            return Err(CantorError::BadGrouping);
        }
        if t == 1 {
            return Ok(self.clone());
        }
        Ok(BasicSequence { rule: Rule::Grouped { inner: Box::new(self.clone()), t } })
    }

    /// Term at 1-based position `n`; `None` past the end of a finite list.
    pub fn q(&self, n: u64) -> Option<BigInt> {
        if n == 0 {
            return None;
        }
        match &self.rule {
            Rule::Const(v) => Some(BigInt::from(*v)),
            Rule::Affine { c0, c1 } => {
                Some(BigInt::from(*c0) + BigInt::from(*c1) * BigInt::from(n))
            }
            Rule::List(terms) => terms.get((n - 1) as usize).map(|&v| BigInt::from(v)),
            Rule::Grouped { inner, t } => {
                let t = *t as u64;
                let mut acc = BigInt::one();
                for j in (n - 1) * t + 1..=n * t {
                    acc *= inner.q(j)?;
                }
                Some(acc)
            }
        }
    }

    /// `q_1 * q_2 * ... * q_n` (`n = 0` gives 1).
    pub fn partial_product(&self, n: u64) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for j in 1..=n {
            acc *= self.q(j)?;
        }
        Some(acc)
    }

    /// Positions available, when the rule is a finite list.
    pub fn known_len(&self) -> Option<u64> {
        match &self.rule {
            Rule::List(terms) => Some(terms.len() as u64),
            Rule::Grouped { inner, t } => inner.known_len().map(|l| l / *t as u64),
            _ => None,
        }
    }

    /// Configuration-grammar form of the rule (`const:b`, `affine:c0+c1*n`,
    /// `list:a,b,c`, with ` group t=<t>` appended for grouped sequences).
    pub fn describe(&self) -> String {
        match &self.rule {
            Rule::Const(v) => format!("const:{v}"),
            Rule::Affine { c0, c1 } => format!("affine:{c0}+{c1}*n"),
            Rule::List(terms) => format!(
                "list:{}",
                terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
            ),
            Rule::Grouped { inner, t } => format!("{} group t={}", inner.describe(), t),
        }
    }

    /// Finite-prefix trend for "terms grow without bound": the minimum term
    /// over the second half of the scanned prefix, for the report header.
    pub fn tail_min(&self, prefix: u64) -> Option<BigInt> {
        let lo = prefix / 2 + 1;
        let mut min: Option<BigInt> = None;
        for j in lo..=prefix {
            let v = self.q(j)?;
            min = Some(match min {
                None => v,
                Some(m) => {
                    if v < m {
                        v
                    } else {
                        m
                    }
                }
            });
        }
        min
    }
}

/// An ordered tuple of digit values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block(pub Vec<BigInt>);

impl Block {
    pub fn from_u64s(vals: &[u64]) -> Self {
        Block(vals.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn validate(&self) -> Result<(), CantorError> {
        if self.0.is_empty() || self.0.iter().any(|d| d.is_negative()) {
            return Err(CantorError::BadBlock);
        }
        Ok(())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// A digit prefix together with the sequence it is written against and,
/// when known, the rational it was extracted from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    pub seq: BasicSequence,
    pub digits: Vec<BigInt>,
    pub origin: Option<Rational>,
}

impl DigitExpansion {
    /// Validated constructor for hand-written digit lists.
    pub fn new(seq: BasicSequence, digits: Vec<BigInt>) -> Result<Self, CantorError> {
        for (i, d) in digits.iter().enumerate() {
            let pos = i as u64 + 1;
            let term = seq.q(pos).ok_or(CantorError::SequenceExhausted(pos))?;
            if d.is_negative() || *d >= term {
                return Err(CantorError::DigitOutOfRange {
                    position: pos,
                    digit: d.clone(),
                    term,
                });
            }
        }
        Ok(DigitExpansion { seq, digits, origin: None })
    }

    pub fn from_u64s(seq: BasicSequence, digits: &[u64]) -> Result<Self, CantorError> {
        Self::new(seq, digits.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn len(&self) -> u64 {
        self.digits.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// 1-based digit access.
    pub fn digit(&self, n: u64) -> Option<&BigInt> {
        self.digits.get((n - 1) as usize)
    }
}

/// Greedy digit prefix of `x` in `[0, 1)`: `E_j = floor(q_j * T_{j-1})`
/// computed by per-step modular reduction of the numerator.
pub fn digits_of(x: &Rational, seq: &BasicSequence, n: u64) -> Result<DigitExpansion, CantorError> {
    if x.is_negative() || *x >= Rational::one() {
        return Err(CantorError::XOutOfRange(x.clone()));
    }
    let den = x.denom().clone();
    let mut num = x.numer().clone();
    let mut digits = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let q = seq.q(j).ok_or(CantorError::SequenceExhausted(j))?;
        let t = &num * &q;
        let digit = &t / &den;
        num = t - &digit * &den;
        digits.push(digit);
    }
    Ok(DigitExpansion { seq: seq.clone(), digits, origin: Some(x.clone()) })
}

/// Exact value of a digit prefix: `sum E_n / (q_1 ... q_n)`, rejecting any
/// out-of-range digit.
pub fn value_of(d: &DigitExpansion) -> Result<Rational, CantorError> {
    // Horner over the digit list keeps one shared denominator.
    let mut acc = BigInt::zero();
    let mut prod = BigInt::one();
    for (i, digit) in d.digits.iter().enumerate() {
        let pos = i as u64 + 1;
        let q = d.seq.q(pos).ok_or(CantorError::SequenceExhausted(pos))?;
        if digit.is_negative() || *digit >= q {
            return Err(CantorError::DigitOutOfRange {
                position: pos,
                digit: digit.clone(),
                term: q,
            });
        }
        acc = acc * &q + digit;
        prod *= &q;
    }
    Ok(Rational::from_big(acc, prod).expect("positive product"))
}

/// The shifted orbit value `T_n(x) = q_1 ... q_n * x  (mod 1)`, exact, for
/// any rational `x` (1-periodic) and any `n >= 0`.
pub fn shift_t(x: &Rational, seq: &BasicSequence, n: u64) -> Result<Rational, CantorError> {
    let fr = x.frac_part();
    let den = fr.denom().clone();
    let mut num = fr.numer().clone();
    for j in 1..=n {
        let q = seq.q(j).ok_or(CantorError::SequenceExhausted(j))?;
        num = (num * q) % &den;
    }
    Ok(Rational::from_big(num, den).expect("positive denominator"))
}

/// Number of occurrences of `block` starting at positions `1..=n`.  An
/// occurrence may extend past `n`, so digits through `n + len(block) - 1`
/// must be present.
pub fn count_block(d: &DigitExpansion, block: &Block, n: u64) -> Result<u64, CantorError> {
    block.validate()?;
    let k = block.len() as u64;
    let required = n + k - 1;
    if required > d.len() {
        return Err(CantorError::InsufficientDigits { required, available: d.len() });
    }
    let mut count = 0;
    for start in 0..n as usize {
        if d.digits[start..start + k as usize] == block.0[..] {
            count += 1;
        }
    }
    Ok(count)
}

/// `sum_{j=1}^{n} 1 / (q_j q_{j+1} ... q_{j+k-1})`, the denominator against
/// which order-`k` block counts are measured.
pub fn q_sum(seq: &BasicSequence, k: u32, n: u64) -> Result<Rational, CantorError> {
    if k == 0 || n == 0 {
        return Err(CantorError::BadBlock);
    }
    let mut acc = Rational::zero();
    for j in 1..=n {
        let mut prod = BigInt::one();
        for i in j..j + k as u64 {
            prod *= seq.q(i).ok_or(CantorError::SequenceExhausted(i))?;
        }
        acc = acc + Rational::from_big(BigInt::one(), prod).expect("positive product");
    }
    Ok(acc)
}

/// First `n` digits of the base-`b` concatenation sequence
/// `0.1 2 3 ... 9 10 11 ...` written in base `b`.
pub fn champernowne_digits(base: u64, n: u64) -> Result<DigitExpansion, CantorError> {
    if base < 2 {
        return Err(CantorError::BadBase(base));
    }
    let seq = BasicSequence::constant(base)?;
    let mut digits: Vec<BigInt> = Vec::with_capacity(n as usize);
    let mut m: u64 = 0;
    while (digits.len() as u64) < n {
        m += 1;
        let mut rev = Vec::new();
        let mut v = m;
        while v > 0 {
            rev.push(v % base);
            v /= base;
        }
        digits.extend(rev.iter().rev().map(|&d| BigInt::from(d)));
    }
    digits.truncate(n as usize);
    Ok(DigitExpansion { seq, digits, origin: None })
}

/// One row of a normality report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatRecord {
    pub kind: StatKind,
    pub block: Option<Block>,
    pub other: Option<Block>,
    pub n: u64,
    /// `None` marks an undefined entry (a 0/0 ratio quotient).
    pub value: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    /// `N_n(B) / (sum of reciprocal k-term products)` — tends to 1 for
    /// order-k normal numbers.
    OrderRatio,
    /// `N_n(B) / N_n(B')` — tends to 1 for ratio-normal numbers.
    RatioQuotient,
    /// Order-1 ratio per single digit.
    SimpleRatio,
    /// Raw block count `N_n(B)`.
    BlockCount,
    /// Count of zero digits among the first `n` — the quantity that stays
    /// bounded for the game-produced points.
    ZeroCount,
}

impl StatKind {
    pub fn name(self) -> &'static str {
        match self {
            StatKind::OrderRatio => "order_ratio",
            StatKind::RatioQuotient => "ratio_quotient",
            StatKind::SimpleRatio => "simple_ratio",
            StatKind::BlockCount => "block_count",
            StatKind::ZeroCount => "zero_count",
        }
    }
}

#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub records: Vec<StatRecord>,
    /// Distinct digit values observed in positions `1..=n`, ascending,
    /// possibly truncated by the alphabet cap.
    pub alphabet: Vec<BigInt>,
    pub zero_count: u64,
}

/// Every order-`k` statistic over the alphabet observed in the first `n`
/// positions: per-block order ratios, all pairwise ratio quotients, the
/// order-1 row, and the zero-digit count.  `alphabet_cap` bounds how many
/// distinct digit values are expanded into blocks (ascending; `None` keeps
/// all observed values).
pub fn normality_stats(
    d: &DigitExpansion,
    k: u32,
    n: u64,
    alphabet_cap: Option<usize>,
) -> Result<NormalityReport, CantorError> {
    if k == 0 {
        return Err(CantorError::BadBlock);
    }
    let required = n + k as u64 - 1;
    if required > d.len() {
        return Err(CantorError::InsufficientDigits { required, available: d.len() });
    }
    let mut alphabet: Vec<BigInt> = Vec::new();
    for digit in d.digits.iter().take(n as usize) {
        if !alphabet.contains(digit) {
            alphabet.push(digit.clone());
        }
    }
    alphabet.sort();
    if let Some(cap) = alphabet_cap {
        alphabet.truncate(cap);
    }

    let mut blocks: Vec<Block> = vec![Block(Vec::new())];
    for _ in 0..k {
        let mut next = Vec::with_capacity(blocks.len() * alphabet.len());
        for b in &blocks {
            for a in &alphabet {
                let mut v = b.0.clone();
                v.push(a.clone());
                next.push(Block(v));
            }
        }
        blocks = next;
    }

    let denominator = q_sum(&d.seq, k, n)?;
    let mut records = Vec::new();
    let mut counts = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let c = count_block(d, b, n)?;
        counts.push(c);
        records.push(StatRecord {
            kind: StatKind::BlockCount,
            block: Some(b.clone()),
            other: None,
            n,
            value: Some(Rational::from_int(c as i64)),
        });
        records.push(StatRecord {
            kind: StatKind::OrderRatio,
            block: Some(b.clone()),
            other: None,
            n,
            value: Some(Rational::from_int(c as i64) / &denominator),
        });
    }
    for (i, b) in blocks.iter().enumerate() {
        for (j, b2) in blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            let value = if counts[j] == 0 {
                None
            } else {
                Some(Rational::of(counts[i] as i64, counts[j] as i64))
            };
            records.push(StatRecord {
                kind: StatKind::RatioQuotient,
                block: Some(b.clone()),
                other: Some(b2.clone()),
                n,
                value,
            });
        }
    }

    // order-1 row, always included
    let simple_den = q_sum(&d.seq, 1, n)?;
    for a in &alphabet {
        let c = count_block(d, &Block(vec![a.clone()]), n)?;
        records.push(StatRecord {
            kind: StatKind::SimpleRatio,
            block: Some(Block(vec![a.clone()])),
            other: None,
            n,
            value: Some(Rational::from_int(c as i64) / &simple_den),
        });
    }

    let zero_count = count_block(d, &Block(vec![BigInt::zero()]), n)?;
    records.push(StatRecord {
        kind: StatKind::ZeroCount,
        block: None,
        other: None,
        n,
        value: Some(Rational::from_int(zero_count as i64)),
    });

    Ok(NormalityReport { records, alphabet, zero_count })
}
