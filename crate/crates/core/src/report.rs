//! Structured results of law-check runs.

use alloc::string::String;
use alloc::vec::Vec;

use crate::valuation::Valuation;

/// How two valuations are compared by a law check.
///
/// `Truncated(n)` compares contents after discarding tuples of length greater
/// than `n`. It is used whenever an expression may involve a capped universe
/// (a capped top element or a capped extension).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Exact,
    Truncated(usize),
}

impl Comparison {
    /// The coarser of two disciplines.
    pub fn join(self, other: Comparison) -> Comparison {
        match (self, other) {
            (Comparison::Exact, c) | (c, Comparison::Exact) => c,
            (Comparison::Truncated(a), Comparison::Truncated(b)) => Comparison::Truncated(a.min(b)),
        }
    }

    pub fn admits_length(self, len: usize) -> bool {
        match self {
            Comparison::Exact => true,
            Comparison::Truncated(n) => len <= n,
        }
    }
}

/// Sampling budget shared by all checkers. Every check is a pure function of
/// (instance, budget).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Sampled instances per law.
    pub samples: usize,
    /// Maximum number of tuples in a randomly drawn valuation.
    pub max_traces: usize,
    pub seed: u64,
    /// Upper bound on the estimated extension work of one instance; heavier
    /// instances are redrawn and counted as skipped.
    pub max_work: u64,
}

pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

impl Default for Budget {
    fn default() -> Self {
        Budget { samples: 200, max_traces: 4, seed: DEFAULT_SEED, max_work: 40_000 }
    }
}

impl Budget {
    pub fn with_seed(self, seed: u64) -> Self {
        Budget { seed, ..self }
    }

    pub fn with_samples(self, samples: usize) -> Self {
        Budget { samples, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample<T> {
    pub detail: String,
    pub witnesses: Vec<(String, Valuation<T>)>,
}

impl<T> Counterexample<T> {
    pub fn new(detail: impl Into<String>) -> Self {
        Counterexample { detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn with(mut self, label: impl Into<String>, v: Valuation<T>) -> Self {
        self.witnesses.push((label.into(), v));
        self
    }
}

/// Outcome of one law: how many instances were evaluated and the first
/// counterexample, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawOutcome<T> {
    pub law: String,
    pub cases: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample<T>>,
}

impl<T> LawOutcome<T> {
    pub fn new(law: impl Into<String>) -> Self {
        LawOutcome { law: law.into(), cases: 0, skipped: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one evaluated instance; keeps the first counterexample only.
    pub fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample<T>) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(cx());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<T> {
    pub subject: String,
    pub seed: u64,
    pub comparison: Comparison,
    pub laws: Vec<LawOutcome<T>>,
}

impl<T> CheckReport<T> {
    pub fn new(subject: impl Into<String>, seed: u64, comparison: Comparison) -> Self {
        CheckReport { subject: subject.into(), seed, comparison, laws: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawOutcome::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome<T>> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn first_failure(&self) -> Option<&LawOutcome<T>> {
        self.laws.iter().find(|l| !l.passed())
    }

    pub fn push(&mut self, outcome: LawOutcome<T>) {
        self.laws.push(outcome);
    }

    pub fn extend(&mut self, other: CheckReport<T>) {
        self.comparison = self.comparison.join(other.comparison);
        self.laws.extend(other.laws);
    }
}
