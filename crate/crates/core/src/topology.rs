//! Finite topological spaces.
//!
//! Atoms of the ground set are kept sorted by name and addressed by index, so an
//! open set is a bitmask over the ground set. Two open sets are equal exactly when
//! they have the same members.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Hard limit imposed by the packed state representation (4 bits per atom in a `u64`).
pub const MAX_ATOMS: usize = 16;

/// Default limit applied by model configuration; enumeration is exponential in it.
pub const DEFAULT_ATOM_LIMIT: usize = 12;

/// A subset of the ground set, as a bitmask over atom indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OpenSet(u32);

impl OpenSet {
    pub const EMPTY: OpenSet = OpenSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        OpenSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(atom: usize) -> Self {
        OpenSet(1 << atom)
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }

    pub fn is_subset(self, other: OpenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 & other.0)
    }

    pub fn difference(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Atom indices in increasing order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }
}

impl fmt::Debug for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

/// The finite set of atom identifiers underlying a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut sorted: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(alloc::format!("duplicate atom `{}`", w[0])));
        }
        if sorted.len() > MAX_ATOMS {
            return Err(Error::config(alloc::format!(
                "ground set has {} atoms, at most {MAX_ATOMS} are supported",
                sorted.len()
            )));
        }
        Ok(GroundSet { names: sorted })
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn full(&self) -> OpenSet {
        OpenSet((((1u64) << self.names.len()) - 1) as u32)
    }

    /// The subset named by `members`; fails on unknown atoms.
    pub fn subset<I, S>(&self, members: I) -> Result<OpenSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for m in members {
            let m = m.as_ref();
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::domain(alloc::format!("`{m}` is not an atom of the ground set")))?;
            bits |= 1 << i;
        }
        Ok(OpenSet(bits))
    }
}

/// A finite topology: a ground set and its family of open sets.
///
/// Immutable once built; every constructor checks closure under pairwise union
/// and intersection and the presence of `∅` and the full ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    ground: GroundSet,
    opens: Vec<OpenSet>,
}

impl Topology {
    fn from_family(ground: GroundSet, family: BTreeSet<OpenSet>) -> Self {
        let mut opens: Vec<OpenSet> = family.into_iter().collect();
        opens.sort_by_key(|o| (o.len(), o.bits()));
        let t = Topology { ground, opens };
        debug_assert!(t.is_closed());
        t
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Open sets ordered by cardinality, then bitmask.
    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn full(&self) -> OpenSet {
        self.ground.full()
    }

    pub fn is_open(&self, s: OpenSet) -> bool {
        self.opens.binary_search_by_key(&(s.len(), s.bits()), |o| (o.len(), o.bits())).is_ok()
    }

    /// The open set with the given member names; fails if unknown or not open.
    pub fn open_set<I, S>(&self, members: I) -> Result<OpenSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let s = self.ground.subset(members)?;
        if !self.is_open(s) {
            return Err(Error::domain(alloc::format!("{} is not an open set", self.render(s))));
        }
        Ok(s)
    }

    /// Largest open set contained in `s`.
    pub fn interior(&self, s: OpenSet) -> OpenSet {
        self.opens
            .iter()
            .filter(|o| o.is_subset(s))
            .fold(OpenSet::EMPTY, |acc, o| acc.union(*o))
    }

    pub fn names(&self, s: OpenSet) -> Vec<&str> {
        s.atoms().map(|i| self.ground.names[i].as_str()).collect()
    }

    /// `{a,b,...}` rendering used in diagnostics.
    pub fn render(&self, s: OpenSet) -> String {
        let mut out = String::from("{");
        for (k, n) in self.names(s).into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(n);
        }
        out.push('}');
        out
    }

    pub fn is_closed(&self) -> bool {
        if !self.is_open(OpenSet::EMPTY) || !self.is_open(self.full()) {
            return false;
        }
        self.opens.iter().all(|a| {
            self.opens
                .iter()
                .all(|b| self.is_open(a.union(*b)) && self.is_open(a.intersection(*b)))
        })
    }
}

/// Smallest family containing `subbasis`, `∅` and the ground set that is closed
/// under pairwise union and intersection.
pub fn generate_topology<I, J, S>(ground: GroundSet, subbasis: I) -> Result<Topology>
where
    I: IntoIterator<Item = J>,
    J: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let masks = subbasis
        .into_iter()
        .map(|members| ground.subset(members))
        .collect::<Result<Vec<_>>>()?;
    Ok(generate_from_masks(ground, masks))
}

pub(crate) fn generate_from_masks(ground: GroundSet, masks: Vec<OpenSet>) -> Topology {
    let mut family: BTreeSet<OpenSet> = masks.into_iter().collect();
    family.insert(OpenSet::EMPTY);
    family.insert(ground.full());
    loop {
        let current: Vec<OpenSet> = family.iter().copied().collect();
        let before = family.len();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                family.insert(a.union(*b));
                family.insert(a.intersection(*b));
            }
        }
        if family.len() == before {
            break;
        }
    }
    Topology::from_family(ground, family)
}

/// An edge of a labelled undirected network graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub ends: [String; 2],
}

impl Edge {
    pub fn new(label: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        Edge { label: label.into(), ends: [a.into(), b.into()] }
    }
}

/// Alexandrov topology of the face poset of a network: the open sets are the
/// up-sets, where a node lies below every edge it is an endpoint of.
pub fn alexandrov_from_graph<S: AsRef<str>>(nodes: &[S], edges: &[Edge]) -> Result<Topology> {
    let node_names: BTreeSet<&str> = nodes.iter().map(|n| n.as_ref()).collect();
    let mut labels = BTreeSet::new();
    for e in edges {
        if !labels.insert(e.label.as_str()) {
            return Err(Error::domain(alloc::format!("duplicate edge label `{}`", e.label)));
        }
        if node_names.contains(e.label.as_str()) {
            return Err(Error::domain(alloc::format!("edge label `{}` collides with a node", e.label)));
        }
        for end in &e.ends {
            if !node_names.contains(end.as_str()) {
                return Err(Error::domain(alloc::format!(
                    "edge `{}` references undeclared node `{end}`",
                    e.label
                )));
            }
        }
    }
    let ground = GroundSet::new(node_names.iter().copied().chain(labels.iter().copied()))?;

    // star[n] = the edges incident to node n
    let mut star = alloc::vec![0u32; ground.len()];
    for e in edges {
        let label = ground.index_of(&e.label).expect("label is an atom");
        for end in &e.ends {
            let n = ground.index_of(end).expect("node is an atom");
            star[n] |= 1 << label;
        }
    }
    let nodes_mask = ground.subset(node_names.iter())?;
    let full = ground.full().bits();
    let mut family = BTreeSet::new();
    for bits in 0..=full {
        let s = OpenSet(bits);
        let up_closed = s
            .intersection(nodes_mask)
            .atoms()
            .all(|n| star[n] & !bits == 0);
        if up_closed {
            family.insert(s);
        }
    }
    Ok(Topology::from_family(ground, family))
}

/// The powerset topology.
pub fn discrete_topology(ground: GroundSet) -> Topology {
    let full = ground.full().bits();
    let family = (0..=full).map(OpenSet).collect();
    Topology::from_family(ground, family)
}

/// All pairs `(B, A)` of open sets with `B ⊆ A`, reflexive pairs included.
pub fn inclusions(t: &Topology) -> Vec<(OpenSet, OpenSet)> {
    let mut out = Vec::new();
    for a in t.opens() {
        for b in t.opens() {
            if b.is_subset(*a) {
                out.push((*b, *a));
            }
        }
    }
    out
}

/// The three-computer, three-link network used throughout the examples.
pub fn triangle_network() -> Topology {
    let nodes = ["a", "b", "c"];
    let edges = [Edge::new("d", "a", "c"), Edge::new("e", "a", "b"), Edge::new("f", "b", "c")];
    alexandrov_from_graph(&nodes, &edges).expect("triangle network is well formed")
}
