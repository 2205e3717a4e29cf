use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Alphabet, State, StateAlphabet, Trace, TupleSystem};
use crate::error::{Error, Result};
use crate::topology::{OpenSet, Topology};

fn reduce_into<L: Copy + PartialEq>(out: &mut Vec<L>, letters: impl IntoIterator<Item = L>) {
    for x in letters {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
}

/// Collapses runs of equal adjacent letters.
pub fn stutter_reduce<L: Copy + PartialEq>(word: &[L]) -> Result<Trace<L>> {
    if word.is_empty() {
        return Err(Error::domain("cannot stutter-reduce an empty word"));
    }
    let mut out = Vec::with_capacity(word.len());
    reduce_into(&mut out, word.iter().copied());
    Ok(Trace::new(out))
}

pub fn is_stutter_free<L: PartialEq>(word: &[L]) -> bool {
    !word.is_empty() && word.windows(2).all(|w| w[0] != w[1])
}

/// Product in the free semigroup with idempotent generators: concatenate,
/// then reduce.
pub fn semigroup_product_rel<L: Copy + PartialEq>(t: &[L], s: &[L]) -> Trace<L> {
    let mut out = Vec::with_capacity(t.len() + s.len());
    reduce_into(&mut out, t.iter().chain(s).copied());
    Trace::new(out)
}

/// `T^rel`: stutter-free nonempty state words, restricted by projecting each
/// letter and reducing.
///
/// Reduction shortens traces, so preimages are infinite. The universe is
/// capped at `cap`, while `lifts` searches up to twice the cap: a word of
/// length `n ≤ cap` in the restriction of a product of two lifted words of
/// length `≤ cap` has a witness of length at most `n + cap`.
#[derive(Clone, Debug)]
pub struct StutterFree {
    states: StateAlphabet,
    topology: Arc<Topology>,
    cap: usize,
}

impl StutterFree {
    pub fn new(states: StateAlphabet, topology: Arc<Topology>, cap: usize) -> Self {
        StutterFree { states, topology, cap }
    }

    pub fn states(&self) -> &StateAlphabet {
        &self.states
    }

    /// Length bound on the lifts used by extension.
    pub fn lift_cap(&self) -> usize {
        2 * self.cap
    }
}

struct LiftSearch<'a> {
    options: Vec<Vec<State>>,
    max_len: usize,
    out: &'a mut Vec<Trace<State>>,
}

impl LiftSearch<'_> {
    /// Extends `word`, whose projection reduces to the first `pos + 1` letters.
    fn extend(&mut self, word: &mut Vec<State>, pos: usize) {
        if pos + 1 == self.options.len() {
            self.out.push(Trace::new(word.clone()));
        }
        if word.len() == self.max_len {
            return;
        }
        for next in [pos, pos + 1] {
            if next >= self.options.len() {
                continue;
            }
            for i in 0..self.options[next].len() {
                let y = self.options[next][i];
                if word.last() == Some(&y) {
                    continue;
                }
                word.push(y);
                self.extend(word, next);
                word.pop();
            }
        }
    }
}

/// Number of words the lift search would produce, by dynamic programming
/// over (position, last letter).
fn count_lifts(options: &[Vec<State>], max_len: usize) -> u64 {
    if options.is_empty() {
        return 0;
    }
    let mut cur: Vec<Vec<u64>> = options.iter().map(|o| alloc::vec![0; o.len()]).collect();
    cur[0].iter_mut().for_each(|c| *c = 1);
    let last = options.len() - 1;
    let mut total = 0u64;
    for _ in 0..max_len {
        total = total.saturating_add(cur[last].iter().fold(0u64, |s, &c| s.saturating_add(c)));
        let mut next: Vec<Vec<u64>> = options.iter().map(|o| alloc::vec![0; o.len()]).collect();
        for (pos, row) in cur.iter().enumerate() {
            for (i, &c) in row.iter().enumerate().filter(|(_, c)| **c > 0) {
                let y = options[pos][i];
                for np in [pos, pos + 1].into_iter().filter(|&p| p <= last) {
                    for (j, &z) in options[np].iter().enumerate() {
                        if z != y {
                            next[np][j] = next[np][j].saturating_add(c);
                        }
                    }
                }
            }
        }
        cur = next;
    }
    total
}

impl TupleSystem for StutterFree {
    type Tuple = Trace<State>;

    fn name(&self) -> &str {
        "stutter-free"
    }

    fn topology(&self) -> &Topology {
        &self.topology
    }

    fn restrict(&self, t: &Trace<State>, to: OpenSet) -> Trace<State> {
        let mut out = Vec::with_capacity(t.len());
        reduce_into(&mut out, t.iter().map(|x| x.restrict(to)));
        Trace::new(out)
    }

    fn lifts_within(&self, t: &Trace<State>, from: OpenSet, to: OpenSet, max_len: usize) -> Vec<Trace<State>> {
        let mut out = Vec::new();
        if t.is_empty() || max_len == 0 {
            return out;
        }
        let options = t.iter().map(|&x| self.states.lifts(x, from, to)).collect();
        let mut search = LiftSearch { options, max_len, out: &mut out };
        for i in 0..search.options[0].len() {
            let mut word = alloc::vec![search.options[0][i]];
            search.extend(&mut word, 0);
        }
        out
    }

    fn lifts(&self, t: &Trace<State>, from: OpenSet, to: OpenSet) -> Vec<Trace<State>> {
        if from == to {
            return alloc::vec![t.clone()];
        }
        self.lifts_within(t, from, to, self.lift_cap())
    }

    fn lift_count(&self, t: &Trace<State>, from: OpenSet, to: OpenSet) -> u64 {
        if from == to {
            return 1;
        }
        let options: Vec<Vec<State>> = t.iter().map(|&x| self.states.lifts(x, from, to)).collect();
        count_lifts(&options, self.lift_cap())
    }

    fn universe_within(&self, dom: OpenSet, max_len: usize) -> Vec<Trace<State>> {
        self.lifts_within(&Trace::new(alloc::vec![State::HEART]), OpenSet::EMPTY, dom, max_len)
    }

    fn length(&self, t: &Trace<State>) -> usize {
        t.len()
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn extension_is_exact(&self) -> bool {
        false
    }

    fn universe_is_exact(&self) -> bool {
        false
    }

    fn is_tuple_on(&self, t: &Trace<State>, dom: OpenSet) -> bool {
        is_stutter_free(t) && t.iter().all(|&x| self.states.is_letter_on(x, dom))
    }
}
