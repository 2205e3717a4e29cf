//! Tuple systems: set-valued presheaves that are flasque and have binary gluing.
//!
//! Base systems ([`StateAlphabet`], [`EventAlphabet`]) are finite in every
//! domain. The list lifts ([`Lists`]) and stutter-free words ([`StutterFree`])
//! are infinite, so their universes are enumerated up to a length cap. List
//! restriction preserves length, which makes list extensions exact; stutter
//! reduction can shorten a trace, so extensions in [`StutterFree`] are capped.

mod alphabet;
mod check;
mod lists;
mod relative;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

pub use alphabet::{Alphabet, Bare, Event, EventAlphabet, State, StateAlphabet, ValueSet, MAX_VALUES};
pub use check::check_tuple_system;
pub use lists::{list_lift, nonempty_list_lift, Lists};
pub use relative::{is_stutter_free, semigroup_product_rel, stutter_reduce, StutterFree};

use crate::topology::{OpenSet, Topology};
use crate::valuation::Valuation;

/// A finite sequence of tuples sharing one domain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trace<L>(Vec<L>);

impl<L> Trace<L> {
    pub fn new(components: Vec<L>) -> Self {
        Trace(components)
    }

    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn components(&self) -> &[L] {
        &self.0
    }

    pub fn into_components(self) -> Vec<L> {
        self.0
    }
}

impl<L: Copy> Trace<L> {
    /// First component `t⁻`.
    pub fn head(&self) -> Option<L> {
        self.0.first().copied()
    }

    /// Last component `t⁺`.
    pub fn tail(&self) -> Option<L> {
        self.0.last().copied()
    }
}

impl<L> Deref for Trace<L> {
    type Target = [L];

    fn deref(&self) -> &[L] {
        &self.0
    }
}

impl<L> From<Vec<L>> for Trace<L> {
    fn from(v: Vec<L>) -> Self {
        Trace(v)
    }
}

impl<L> FromIterator<L> for Trace<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        Trace(iter.into_iter().collect())
    }
}

impl<L: fmt::Debug> fmt::Debug for Trace<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A tuple system `T` on a finite topology, together with the length grading
/// used for capped enumeration.
pub trait TupleSystem: Send + Sync {
    type Tuple: Clone + Ord + fmt::Debug + Send + Sync;

    fn name(&self) -> &str;

    fn topology(&self) -> &Topology;

    /// Restriction `T_A → T_B`; the tuple's own domain is implicit.
    fn restrict(&self, t: &Self::Tuple, to: OpenSet) -> Self::Tuple;

    /// All tuples on `to` restricting to `t` (a tuple on `from`) whose length is
    /// at most `max_len`. Systems whose restriction preserves length ignore the
    /// bound.
    fn lifts_within(&self, t: &Self::Tuple, from: OpenSet, to: OpenSet, max_len: usize) -> Vec<Self::Tuple>;

    /// Preimage of a single tuple under restriction, capped where infinite.
    fn lifts(&self, t: &Self::Tuple, from: OpenSet, to: OpenSet) -> Vec<Self::Tuple> {
        if from == to {
            return alloc::vec![t.clone()];
        }
        self.lifts_within(t, from, to, self.cap())
    }

    /// Estimated size of `lifts(t, from, to)`, used to bound sampled work.
    fn lift_count(&self, t: &Self::Tuple, from: OpenSet, to: OpenSet) -> u64 {
        self.lifts(t, from, to).len() as u64
    }

    /// All tuples on `dom` of length at most `max_len`.
    fn universe_within(&self, dom: OpenSet, max_len: usize) -> Vec<Self::Tuple>;

    /// The capped universe `T_A`.
    fn universe(&self, dom: OpenSet) -> Vec<Self::Tuple> {
        self.universe_within(dom, self.cap())
    }

    fn length(&self, t: &Self::Tuple) -> usize;

    fn cap(&self) -> usize;

    /// Whether `lifts` is the exact preimage for every input.
    fn extension_is_exact(&self) -> bool;

    /// Whether `universe` is the whole of `T_A`.
    fn universe_is_exact(&self) -> bool;

    /// Whether `t` is a well-formed tuple on `dom`.
    fn is_tuple_on(&self, t: &Self::Tuple, dom: OpenSet) -> bool {
        self.restrict(t, dom) == *t
    }
}

/// Relational join `{t ∈ T_U : t|da ∈ a, t|db ∈ b}` with `U = da ∪ db`,
/// computed by lifting the tuples of `a` and filtering against `b`.
pub fn relational_join<S: TupleSystem>(ts: &S, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>) -> Valuation<S::Tuple> {
    let u = a.domain().union(b.domain());
    let content: BTreeSet<S::Tuple> = a
        .content()
        .iter()
        .flat_map(|t| ts.lifts(t, a.domain(), u))
        .filter(|c| b.content().contains(&ts.restrict(c, b.domain())))
        .collect();
    Valuation::new(u, content)
}
