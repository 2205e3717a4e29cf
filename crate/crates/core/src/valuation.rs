//! Valuations as elements `(A, a)` of the Grothendieck construction of a
//! relational prealgebra, and the refinement order `⪯` on them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::{CheckReport, Comparison, Counterexample, LawOutcome};
use crate::topology::OpenSet;
use crate::tuples::TupleSystem;

/// A domain together with a finite set of tuples on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation<T> {
    domain: OpenSet,
    content: BTreeSet<T>,
}

impl<T: Ord> Valuation<T> {
    pub fn new(domain: OpenSet, content: BTreeSet<T>) -> Self {
        Valuation { domain, content }
    }

    pub fn empty(domain: OpenSet) -> Self {
        Valuation { domain, content: BTreeSet::new() }
    }

    pub fn from_tuples<I: IntoIterator<Item = T>>(domain: OpenSet, tuples: I) -> Self {
        Valuation { domain, content: tuples.into_iter().collect() }
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn content(&self) -> &BTreeSet<T> {
        &self.content
    }

    pub fn into_content(self) -> BTreeSet<T> {
        self.content
    }

    pub fn len(&self) -> usize {
        self.content.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content.is_empty()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.content.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.content.iter()
    }
}

impl<T: Ord + Clone> Valuation<T> {
    /// Same-domain intersection.
    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.domain, other.domain);
        Valuation::new(self.domain, self.content.intersection(&other.content).cloned().collect())
    }

    /// Same-domain union.
    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.domain, other.domain);
        Valuation::new(self.domain, self.content.union(&other.content).cloned().collect())
    }
}

pub fn domain_of<T: Ord>(v: &Valuation<T>) -> OpenSet {
    v.domain()
}

/// Checks that `v` is a well-formed valuation of `ts`: an open domain and
/// tuples on that domain. Reports the index of the first bad tuple.
pub fn validate<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>) -> Result<()> {
    if !ts.topology().is_open(v.domain()) {
        return Err(Error::domain(format!("domain {} is not open", ts.topology().render(v.domain()))));
    }
    for (i, t) in v.iter().enumerate() {
        if !ts.is_tuple_on(t, v.domain()) {
            return Err(Error::domain(format!(
                "trace {i} ({t:?}) is not a {} tuple on {}",
                ts.name(),
                ts.topology().render(v.domain())
            )));
        }
    }
    Ok(())
}

/// Direct image of restriction to `to ⊆ d(v)`.
pub fn restrict<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>, to: OpenSet) -> Result<Valuation<S::Tuple>> {
    if !to.is_subset(v.domain()) {
        return Err(Error::domain(format!(
            "cannot restrict from {} to {}",
            ts.topology().render(v.domain()),
            ts.topology().render(to)
        )));
    }
    Ok(restrict_unchecked(ts, v, to))
}

pub(crate) fn restrict_unchecked<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>, to: OpenSet) -> Valuation<S::Tuple> {
    if to == v.domain() {
        return v.clone();
    }
    Valuation::new(to, v.iter().map(|t| ts.restrict(t, to)).collect())
}

/// Preimage of restriction: `{t ∈ T_A : t|d(v) ∈ v}`, capped where the tuple
/// system's preimages are infinite.
pub fn preimage<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>, to: OpenSet) -> Result<Valuation<S::Tuple>> {
    if !v.domain().is_subset(to) {
        return Err(Error::domain(format!(
            "cannot extend from {} to {}",
            ts.topology().render(v.domain()),
            ts.topology().render(to)
        )));
    }
    Ok(preimage_unchecked(ts, v, to))
}

pub(crate) fn preimage_unchecked<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>, to: OpenSet) -> Valuation<S::Tuple> {
    if to == v.domain() {
        return v.clone();
    }
    Valuation::new(to, v.iter().flat_map(|t| ts.lifts(t, v.domain(), to)).collect())
}

/// Drops tuples longer than the comparison admits.
pub fn truncate<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>, cmp: Comparison) -> Valuation<S::Tuple> {
    match cmp {
        Comparison::Exact => v.clone(),
        Comparison::Truncated(_) => {
            Valuation::new(v.domain(), v.iter().filter(|t| cmp.admits_length(ts.length(t))).cloned().collect())
        }
    }
}

pub fn equal_under<S: TupleSystem>(ts: &S, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>, cmp: Comparison) -> bool {
    a.domain() == b.domain() && truncate(ts, a, cmp) == truncate(ts, b, cmp)
}

/// `a ⪯ b` in the Grothendieck order: `d b ⊆ d a` and `a|_{d b} ⊆ b`.
pub fn gc_leq<S: TupleSystem>(ts: &S, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>) -> bool {
    gc_leq_under(ts, a, b, Comparison::Exact)
}

/// `⪯` after discarding the tuples of `a` that `cmp` does not admit.
pub fn gc_leq_under<S: TupleSystem>(ts: &S, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>, cmp: Comparison) -> bool {
    if !b.domain().is_subset(a.domain()) {
        return false;
    }
    a.iter()
        .filter(|t| cmp.admits_length(ts.length(t)))
        .all(|t| b.contains(&ts.restrict(t, b.domain())))
}

/// Checks that `e` is natural: `e(A)|_B = e(B)` for every inclusion `B ⊆ A`.
pub fn global_element_check<S: TupleSystem>(
    ts: &S,
    e: &BTreeMap<OpenSet, Valuation<S::Tuple>>,
    cmp: Comparison,
) -> Result<CheckReport<S::Tuple>> {
    let opens = ts.topology().opens();
    if let Some(missing) = opens.iter().find(|a| !e.contains_key(a)) {
        return Err(Error::domain(format!("global element missing open {}", ts.topology().render(*missing))));
    }
    let mut report = CheckReport::new("global-element", 0, cmp);
    let mut law = LawOutcome::new("naturality");
    for &a in opens {
        for &b in opens.iter().filter(|b| b.is_subset(a)) {
            let lhs = restrict_unchecked(ts, &e[&a], b);
            let ok = equal_under(ts, &lhs, &e[&b], cmp);
            law.record(ok, || {
                Counterexample::new(format!(
                    "e({})|{} != e({})",
                    ts.topology().render(a),
                    ts.topology().render(b),
                    ts.topology().render(b)
                ))
                .with("restricted", lhs.clone())
                .with("expected", e[&b].clone())
            });
        }
    }
    report.push(law);
    Ok(report)
}

/// All subsets of a small tuple list, as valuations on `dom`.
pub fn all_valuations<T: Ord + Clone>(dom: OpenSet, universe: &[T]) -> Vec<Valuation<T>> {
    assert!(universe.len() < 24, "powerset of {} tuples is too large", universe.len());
    (0u32..(1 << universe.len()))
        .map(|mask| {
            Valuation::from_tuples(
                dom,
                universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{discrete_topology, GroundSet};
    use crate::tuples::{nonempty_list_lift, Lists, State, StateAlphabet, Trace, ValueSet};
    use alloc::sync::Arc;

    fn sigma() -> Lists<StateAlphabet> {
        let t = Arc::new(discrete_topology(GroundSet::new(["x", "y"]).unwrap()));
        nonempty_list_lift(StateAlphabet::new(&ValueSet::numeric(2).unwrap()), t, 2)
    }

    const X: OpenSet = OpenSet::from_bits(0b01);
    const XY: OpenSet = OpenSet::from_bits(0b11);

    #[test]
    fn restriction_projects_componentwise() {
        let ts = sigma();
        let v = Valuation::from_tuples(XY, [Trace::new(alloc::vec![State::from_values([(0, 0), (1, 1)])])]);
        let r = restrict(&ts, &v, X).unwrap();
        assert_eq!(r, Valuation::from_tuples(X, [Trace::new(alloc::vec![State::from_values([(0, 0)])])]));
        assert_eq!(restrict(&ts, &v, XY).unwrap(), v);
        assert!(restrict(&ts, &r, XY).is_err());
    }

    #[test]
    fn functoriality_of_restriction() {
        let ts = sigma();
        let v = Valuation::from_tuples(XY, ts.universe(XY));
        let via = restrict(&ts, &restrict(&ts, &v, X).unwrap(), OpenSet::EMPTY).unwrap();
        assert_eq!(via, restrict(&ts, &v, OpenSet::EMPTY).unwrap());
    }

    #[test]
    fn gc_leq_is_a_partial_order_on_one_atom() {
        let ts = sigma();
        let mut vals = Vec::new();
        for dom in [OpenSet::EMPTY, X] {
            vals.extend(all_valuations(dom, &ts.universe(dom)));
        }
        for a in &vals {
            assert!(gc_leq(&ts, a, a));
            for b in &vals {
                if gc_leq(&ts, a, b) && gc_leq(&ts, b, a) {
                    assert_eq!(a, b);
                }
                for c in &vals {
                    if gc_leq(&ts, a, b) && gc_leq(&ts, b, c) {
                        assert!(gc_leq(&ts, a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn perturbed_global_element_fails() {
        let ts = sigma();
        let mut e = BTreeMap::new();
        for &a in ts.topology().opens() {
            let tau: Vec<_> = ts.universe_within(a, 1);
            e.insert(a, Valuation::from_tuples(a, tau));
        }
        assert!(global_element_check(&ts, &e, Comparison::Exact).unwrap().passed());
        e.insert(X, Valuation::empty(X));
        let report = global_element_check(&ts, &e, Comparison::Exact).unwrap();
        assert!(!report.passed());
        e.remove(&X);
        assert!(global_element_check(&ts, &e, Comparison::Exact).is_err());
    }
}
