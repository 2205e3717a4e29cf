//! Seeded random generation of opens, tuples and valuations.
//!
//! Tuples are drawn length-stratified (uniform length, then uniform tuple) so
//! short and long traces are equally represented.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Budget;
use crate::topology::OpenSet;
use crate::tuples::TupleSystem;
use crate::valuation::{restrict_unchecked, Valuation};

/// Universes at most this large are sampled as uniform random subsets.
const SMALL_UNIVERSE: usize = 6;

fn stream_id(label: &str) -> u64 {
    // FNV-1a
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub struct Sampler<'a, S: TupleSystem> {
    ts: &'a S,
    rng: ChaCha8Rng,
    max_traces: usize,
    max_work: u64,
    strata: BTreeMap<OpenSet, Vec<Vec<S::Tuple>>>,
}

impl<'a, S: TupleSystem> Sampler<'a, S> {
    /// A generator whose stream is determined by the budget seed and `label`.
    pub fn new(ts: &'a S, budget: &Budget, label: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        rng.set_stream(stream_id(label));
        Sampler { ts, rng, max_traces: budget.max_traces, max_work: budget.max_work, strata: BTreeMap::new() }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn open(&mut self) -> OpenSet {
        let opens = self.ts.topology().opens();
        opens[self.index(opens.len())]
    }

    pub fn subopen(&mut self, a: OpenSet) -> OpenSet {
        let subs: Vec<OpenSet> = self.ts.topology().opens().iter().copied().filter(|b| b.is_subset(a)).collect();
        subs[self.index(subs.len())]
    }

    pub fn superopen(&mut self, b: OpenSet) -> OpenSet {
        let sups: Vec<OpenSet> = self.ts.topology().opens().iter().copied().filter(|a| b.is_subset(*a)).collect();
        sups[self.index(sups.len())]
    }

    fn strata(&mut self, dom: OpenSet) -> &Vec<Vec<S::Tuple>> {
        let ts = self.ts;
        self.strata.entry(dom).or_insert_with(|| {
            let mut by_len: Vec<Vec<S::Tuple>> = Vec::new();
            for t in ts.universe(dom) {
                let n = ts.length(&t);
                if by_len.len() <= n {
                    by_len.resize_with(n + 1, Vec::new);
                }
                by_len[n].push(t);
            }
            by_len.retain(|s| !s.is_empty());
            by_len
        })
    }

    pub fn universe_size(&mut self, dom: OpenSet) -> usize {
        self.strata(dom).iter().map(Vec::len).sum()
    }

    pub fn tuple_on(&mut self, dom: OpenSet) -> S::Tuple {
        let n = self.strata(dom).len();
        let s = self.index(n);
        let m = self.strata(dom)[s].len();
        let i = self.index(m);
        self.strata(dom)[s][i].clone()
    }

    pub fn valuation_on(&mut self, dom: OpenSet) -> Valuation<S::Tuple> {
        if self.universe_size(dom) <= SMALL_UNIVERSE {
            let all: Vec<S::Tuple> = self.strata(dom).iter().flatten().cloned().collect();
            let picks: Vec<bool> = all.iter().map(|_| self.rng.random_bool(0.5)).collect();
            return Valuation::from_tuples(dom, all.into_iter().zip(picks).filter(|(_, p)| *p).map(|(t, _)| t));
        }
        if self.chance(1.0 / 16.0) {
            return Valuation::empty(dom);
        }
        let k = self.rng.random_range(1..=self.max_traces.max(1));
        let tuples: Vec<S::Tuple> = (0..k).map(|_| self.tuple_on(dom)).collect();
        Valuation::from_tuples(dom, tuples)
    }

    pub fn valuation(&mut self) -> Valuation<S::Tuple> {
        let dom = self.open();
        self.valuation_on(dom)
    }

    /// Some `b` with `a ⪯ b`: a restriction of `a` with a few tuples added.
    pub fn above(&mut self, a: &Valuation<S::Tuple>) -> Valuation<S::Tuple> {
        let dom = self.subopen(a.domain());
        let mut content = restrict_unchecked(self.ts, a, dom).into_content();
        for _ in 0..self.index(3) {
            content.insert(self.tuple_on(dom));
        }
        Valuation::new(dom, content)
    }

    /// Some `a` with `a ⪯ b`: random lifts of some tuples of `b` to a
    /// superdomain. `None` when the lifts are too costly to enumerate.
    pub fn below(&mut self, b: &Valuation<S::Tuple>) -> Option<Valuation<S::Tuple>> {
        let dom = self.superopen(b.domain());
        let work: u64 = b.iter().map(|t| self.ts.lift_count(t, b.domain(), dom)).sum();
        if work > self.max_work {
            return None;
        }
        let mut out = Valuation::empty(dom).into_content();
        for t in b.iter() {
            if !self.chance(0.75) {
                continue;
            }
            let lifts = self.ts.lifts(t, b.domain(), dom);
            if lifts.is_empty() {
                continue;
            }
            for _ in 0..=self.index(2) {
                out.insert(lifts[self.index(lifts.len())].clone());
            }
        }
        Some(Valuation::new(dom, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{discrete_topology, GroundSet};
    use crate::tuples::{nonempty_list_lift, StateAlphabet, ValueSet};
    use crate::valuation::gc_leq;
    use alloc::sync::Arc;

    #[test]
    fn generated_pairs_are_ordered_and_deterministic() {
        let t = Arc::new(discrete_topology(GroundSet::new(["x", "y"]).unwrap()));
        let ts = nonempty_list_lift(StateAlphabet::new(&ValueSet::numeric(2).unwrap()), t, 3);
        let budget = Budget::default();
        let mut s1 = Sampler::new(&ts, &budget, "pairs");
        let mut s2 = Sampler::new(&ts, &budget, "pairs");
        for _ in 0..100 {
            let a = s1.valuation();
            assert_eq!(a, s2.valuation());
            let up = s1.above(&a);
            assert!(gc_leq(&ts, &a, &up));
            if let Some(down) = s1.below(&a) {
                assert!(gc_leq(&ts, &down, &a));
            }
            s2.above(&a);
            s2.below(&a);
        }
    }
}
