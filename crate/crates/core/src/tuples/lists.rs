use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Alphabet, Trace, TupleSystem};
use crate::topology::{OpenSet, Topology};

/// `L∘Ω` (all finite lists, including `[]`) or `L₊∘Ω` (nonempty lists).
///
/// Restriction acts componentwise and preserves length, so the preimage of a
/// trace is finite and `lifts` ignores the length bound.
#[derive(Clone, Debug)]
pub struct Lists<A> {
    alphabet: A,
    topology: Arc<Topology>,
    nonempty: bool,
    cap: usize,
}

/// `L∘Ω` with universes enumerated up to length `cap`.
pub fn list_lift<A: Alphabet>(alphabet: A, topology: Arc<Topology>, cap: usize) -> Lists<A> {
    Lists { alphabet, topology, nonempty: false, cap }
}

/// `L₊∘Ω` with universes enumerated up to length `cap`.
pub fn nonempty_list_lift<A: Alphabet>(alphabet: A, topology: Arc<Topology>, cap: usize) -> Lists<A> {
    Lists { alphabet, topology, nonempty: true, cap }
}

impl<A: Alphabet> Lists<A> {
    pub fn alphabet(&self) -> &A {
        &self.alphabet
    }

    pub fn is_nonempty(&self) -> bool {
        self.nonempty
    }

    fn min_len(&self) -> usize {
        usize::from(self.nonempty)
    }
}

/// Cartesian product of per-position choices, in lexicographic order.
pub(crate) fn product<L: Copy>(choices: &[Vec<L>]) -> Vec<Vec<L>> {
    let mut out: Vec<Vec<L>> = alloc::vec![Vec::with_capacity(choices.len())];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for &x in options {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl<A: Alphabet> TupleSystem for Lists<A> {
    type Tuple = Trace<A::Letter>;

    fn name(&self) -> &str {
        if self.nonempty {
            "nonempty-lists"
        } else {
            "lists"
        }
    }

    fn topology(&self) -> &Topology {
        &self.topology
    }

    fn restrict(&self, t: &Self::Tuple, to: OpenSet) -> Self::Tuple {
        t.iter().map(|&x| self.alphabet.restrict(x, to)).collect()
    }

    fn lifts_within(&self, t: &Self::Tuple, from: OpenSet, to: OpenSet, _max_len: usize) -> Vec<Self::Tuple> {
        let choices: Vec<Vec<A::Letter>> = t.iter().map(|&x| self.alphabet.lifts(x, from, to)).collect();
        product(&choices).into_iter().map(Trace::new).collect()
    }

    fn lift_count(&self, t: &Self::Tuple, from: OpenSet, to: OpenSet) -> u64 {
        self.alphabet.lift_count(from, to).saturating_pow(t.len() as u32)
    }

    fn universe_within(&self, dom: OpenSet, max_len: usize) -> Vec<Self::Tuple> {
        let letters = self.alphabet.letters(dom);
        let mut out = Vec::new();
        for len in self.min_len()..=max_len {
            let choices: Vec<Vec<A::Letter>> = (0..len).map(|_| letters.clone()).collect();
            out.extend(product(&choices).into_iter().map(Trace::new));
        }
        out
    }

    fn length(&self, t: &Self::Tuple) -> usize {
        t.len()
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn extension_is_exact(&self) -> bool {
        true
    }

    fn universe_is_exact(&self) -> bool {
        false
    }

    fn is_tuple_on(&self, t: &Self::Tuple, dom: OpenSet) -> bool {
        t.len() >= self.min_len() && t.iter().all(|&x| self.alphabet.is_letter_on(x, dom))
    }
}
