use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use super::TupleSystem;
use crate::error::{Error, Result};
use crate::topology::{OpenSet, Topology};

/// Values are packed four bits per atom.
pub const MAX_VALUES: usize = 16;

/// The finite value set `S` states range over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSet {
    names: Vec<String>,
}

impl ValueSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::config("value set must be nonempty"));
        }
        if names.len() > MAX_VALUES {
            return Err(Error::config(alloc::format!("at most {MAX_VALUES} values are supported")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::config(alloc::format!("duplicate value `{n}`")));
            }
        }
        Ok(ValueSet { names })
    }

    /// `{0, 1, ..., k-1}`.
    pub fn numeric(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }
}

/// An assignment of values to the atoms of a domain, packed four bits per atom.
/// Positions outside the domain are zero; on `∅` the unique state is `♥`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct State(u64);

fn nibbles(s: OpenSet) -> u64 {
    s.atoms().fold(0u64, |m, i| m | (0xF << (4 * i)))
}

impl State {
    /// The empty state `♥`.
    pub const HEART: State = State(0);

    pub fn from_values<I: IntoIterator<Item = (usize, u8)>>(values: I) -> Self {
        values.into_iter().fold(State(0), |s, (atom, v)| s.with(atom, v))
    }

    pub fn get(self, atom: usize) -> u8 {
        ((self.0 >> (4 * atom)) & 0xF) as u8
    }

    pub fn with(self, atom: usize, value: u8) -> State {
        debug_assert!((value as usize) < MAX_VALUES);
        State((self.0 & !(0xF << (4 * atom))) | ((value as u64) << (4 * atom)))
    }

    pub fn restrict(self, to: OpenSet) -> State {
        State(self.0 & nibbles(to))
    }

    pub fn is_on(self, dom: OpenSet) -> bool {
        self.0 & !nibbles(dom) == 0
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "♥0");
        }
        let mut m = f.debug_map();
        for i in 0..16 {
            let v = self.get(i);
            if v != 0 {
                m.entry(&i, &v);
            }
        }
        m.finish()
    }
}

/// A pre/post pair of states on one domain.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Event {
    pub pre: State,
    pub post: State,
}

impl Event {
    pub fn new(pre: State, post: State) -> Self {
        Event { pre, post }
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?}", self.pre, self.post)
    }
}

/// A finite base tuple system `Ω`.
pub trait Alphabet: Send + Sync {
    type Letter: Copy + Ord + Hash + fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;

    fn restrict(&self, x: Self::Letter, to: OpenSet) -> Self::Letter;

    fn lifts(&self, x: Self::Letter, from: OpenSet, to: OpenSet) -> Vec<Self::Letter>;

    /// `|lifts(x, from, to)|`, which does not depend on `x`.
    fn lift_count(&self, from: OpenSet, to: OpenSet) -> u64;

    fn letters(&self, dom: OpenSet) -> Vec<Self::Letter>;

    fn is_letter_on(&self, x: Self::Letter, dom: OpenSet) -> bool;
}

/// `Ω^state`: maps `A → S`, restricted by precomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateAlphabet {
    values: u8,
}

impl StateAlphabet {
    pub fn new(values: &ValueSet) -> Self {
        StateAlphabet { values: values.len() as u8 }
    }

    pub fn value_count(&self) -> usize {
        self.values as usize
    }
}

impl Alphabet for StateAlphabet {
    type Letter = State;

    fn name(&self) -> &'static str {
        "state"
    }

    fn restrict(&self, x: State, to: OpenSet) -> State {
        x.restrict(to)
    }

    fn lifts(&self, x: State, from: OpenSet, to: OpenSet) -> Vec<State> {
        let base = x.restrict(from);
        let free: Vec<usize> = to.difference(from).atoms().collect();
        let mut out = alloc::vec![base];
        for atom in free {
            let mut next = Vec::with_capacity(out.len() * self.values as usize);
            for s in &out {
                for v in 0..self.values {
                    next.push(s.with(atom, v));
                }
            }
            out = next;
        }
        out
    }

    fn lift_count(&self, from: OpenSet, to: OpenSet) -> u64 {
        (self.values as u64).pow(to.difference(from).len() as u32)
    }

    fn letters(&self, dom: OpenSet) -> Vec<State> {
        self.lifts(State::HEART, OpenSet::EMPTY, dom)
    }

    fn is_letter_on(&self, x: State, dom: OpenSet) -> bool {
        x.is_on(dom) && dom.atoms().all(|i| x.get(i) < self.values)
    }
}

/// The events instantiation of `Ω^act`: pairs `S^A × S^A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventAlphabet {
    states: StateAlphabet,
}

impl EventAlphabet {
    pub fn new(values: &ValueSet) -> Self {
        EventAlphabet { states: StateAlphabet::new(values) }
    }
}

impl Alphabet for EventAlphabet {
    type Letter = Event;

    fn name(&self) -> &'static str {
        "event"
    }

    fn restrict(&self, x: Event, to: OpenSet) -> Event {
        Event::new(x.pre.restrict(to), x.post.restrict(to))
    }

    fn lifts(&self, x: Event, from: OpenSet, to: OpenSet) -> Vec<Event> {
        let pres = self.states.lifts(x.pre, from, to);
        let posts = self.states.lifts(x.post, from, to);
        let mut out = Vec::with_capacity(pres.len() * posts.len());
        for p in &pres {
            for q in &posts {
                out.push(Event::new(*p, *q));
            }
        }
        out
    }

    fn lift_count(&self, from: OpenSet, to: OpenSet) -> u64 {
        self.states.lift_count(from, to).pow(2)
    }

    fn letters(&self, dom: OpenSet) -> Vec<Event> {
        self.lifts(Event::default(), OpenSet::EMPTY, dom)
    }

    fn is_letter_on(&self, x: Event, dom: OpenSet) -> bool {
        self.states.is_letter_on(x.pre, dom) && self.states.is_letter_on(x.post, dom)
    }
}

/// A base alphabet used directly as a tuple system (no lists); the relational
/// database instance uses `Bare<StateAlphabet>`, whose tuples are table rows.
#[derive(Clone, Debug)]
pub struct Bare<A> {
    alphabet: A,
    topology: Arc<Topology>,
}

impl<A: Alphabet> Bare<A> {
    pub fn new(alphabet: A, topology: Arc<Topology>) -> Self {
        Bare { alphabet, topology }
    }

    pub fn alphabet(&self) -> &A {
        &self.alphabet
    }
}

impl<A: Alphabet> TupleSystem for Bare<A> {
    type Tuple = A::Letter;

    fn name(&self) -> &str {
        self.alphabet.name()
    }

    fn topology(&self) -> &Topology {
        &self.topology
    }

    fn restrict(&self, t: &A::Letter, to: OpenSet) -> A::Letter {
        self.alphabet.restrict(*t, to)
    }

    fn lifts_within(&self, t: &A::Letter, from: OpenSet, to: OpenSet, _max_len: usize) -> Vec<A::Letter> {
        self.alphabet.lifts(*t, from, to)
    }

    fn lift_count(&self, _t: &A::Letter, from: OpenSet, to: OpenSet) -> u64 {
        self.alphabet.lift_count(from, to)
    }

    fn universe_within(&self, dom: OpenSet, _max_len: usize) -> Vec<A::Letter> {
        self.alphabet.letters(dom)
    }

    fn length(&self, _t: &A::Letter) -> usize {
        1
    }

    fn cap(&self) -> usize {
        1
    }

    fn extension_is_exact(&self) -> bool {
        true
    }

    fn universe_is_exact(&self) -> bool {
        true
    }

    fn is_tuple_on(&self, t: &A::Letter, dom: OpenSet) -> bool {
        self.alphabet.is_letter_on(*t, dom)
    }
}
