//! The three trace models and the relational database instance.
//!
//! | model    | tuples              | `⨾` / skip     | `∥` / run   |
//! |----------|---------------------|----------------|-------------|
//! | action   | `L∘Ω^act` (events)  | `⌢` / `ι`      | `⧢` / `ι`   |
//! | state    | `L₊∘Ω^state`        | `⌣` / `τ`      | `∧` / `⊤`   |
//! | relative | `T^rel`             | `⌣^rel` / `τ`  | `∧` / `⊤`   |
//! | db       | `Ω^state` (rows)    | –              | `⋈` / `⊤`   |

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::cva::Cva;
use crate::error::{Error, Result};
use crate::ova::{LocalOperator, Neutral, Ova};
use crate::topology::{Topology, DEFAULT_ATOM_LIMIT};
use crate::tuples::{
    list_lift, nonempty_list_lift, semigroup_product_rel, Bare, Event, EventAlphabet, Lists, State, StateAlphabet,
    StutterFree, Trace, ValueSet,
};
use crate::valuation::Valuation;

/// All `(p, q)`-shuffles of `t` and `s`.
pub fn interleave_traces<L: Copy + Ord>(t: &[L], s: &[L]) -> BTreeSet<Trace<L>> {
    fn go<L: Copy + Ord>(t: &[L], s: &[L], prefix: &mut Vec<L>, out: &mut BTreeSet<Trace<L>>) {
        match (t.split_first(), s.split_first()) {
            (None, _) | (_, None) => {
                let mut w = prefix.clone();
                w.extend_from_slice(t);
                w.extend_from_slice(s);
                out.insert(Trace::new(w));
            }
            (Some((&x, t_rest)), Some((&y, s_rest))) => {
                prefix.push(x);
                go(t_rest, s, prefix, out);
                prefix.pop();
                prefix.push(y);
                go(t, s_rest, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, s, &mut Vec::with_capacity(t.len() + s.len()), &mut out);
    out
}

pub fn concat_traces<L: Copy>(t: &[L], s: &[L]) -> Trace<L> {
    t.iter().chain(s).copied().collect()
}

/// `t ⌣ s = [t₁, …, t_{n-1}, s₁, …, s_m]`, defined when `t⁺ = s⁻`.
pub fn glue_traces<L: Copy + PartialEq>(t: &[L], s: &[L]) -> Option<Trace<L>> {
    match (t.split_last(), s.first()) {
        (Some((last, init)), Some(first)) if last == first => Some(init.iter().chain(s).copied().collect()),
        _ => None,
    }
}

/// `⧢`, lifted to sets of traces.
#[derive(Clone, Copy, Debug, Default)]
pub struct Shuffle;

impl<L: Copy + Ord + Send + Sync> LocalOperator<Trace<L>> for Shuffle {
    fn name(&self) -> &str {
        "shuffle"
    }

    fn pair(&self, t: &Trace<L>, s: &Trace<L>, out: &mut BTreeSet<Trace<L>>) {
        out.extend(interleave_traces(t, s));
    }

    fn cost(&self, n: u64, m: u64) -> u64 {
        n.saturating_mul(m).saturating_mul(8)
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// `⌢`, lifted to sets of traces.
#[derive(Clone, Copy, Debug, Default)]
pub struct Concat;

impl<L: Copy + Ord + Send + Sync> LocalOperator<Trace<L>> for Concat {
    fn name(&self) -> &str {
        "concat"
    }

    fn pair(&self, t: &Trace<L>, s: &Trace<L>, out: &mut BTreeSet<Trace<L>>) {
        out.insert(concat_traces(t, s));
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// `⌣`, lifted to sets of traces; mismatched pairs contribute nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Glue;

impl<L: Copy + Ord + Send + Sync> LocalOperator<Trace<L>> for Glue {
    fn name(&self) -> &str {
        "glue"
    }

    fn pair(&self, t: &Trace<L>, s: &Trace<L>, out: &mut BTreeSet<Trace<L>>) {
        out.extend(glue_traces(t, s));
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// Endpoint-matched product in the free semigroup with idempotent generators.
#[derive(Clone, Copy, Debug, Default)]
pub struct RelativeGlue;

impl LocalOperator<Trace<State>> for RelativeGlue {
    fn name(&self) -> &str {
        "relative-glue"
    }

    fn pair(&self, t: &Trace<State>, s: &Trace<State>, out: &mut BTreeSet<Trace<State>>) {
        if !t.is_empty() && t.tail() == s.head() {
            out.insert(semigroup_product_rel(t, s));
        }
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// Deliberately broken gluing families, used to show that the law checkers
/// detect violations.
pub mod mutants {
    use super::*;

    /// Gluing that ignores the endpoint condition: `t₁…t_{n-1} s`.
    #[derive(Clone, Copy, Debug, Default)]
    pub struct UnmatchedGlue;

    impl<L: Copy + Ord + Send + Sync> LocalOperator<Trace<L>> for UnmatchedGlue {
        fn name(&self) -> &str {
            "unmatched-glue"
        }

        fn pair(&self, t: &Trace<L>, s: &Trace<L>, out: &mut BTreeSet<Trace<L>>) {
            if let Some((_, init)) = t.split_last() {
                out.insert(init.iter().chain(s.iter()).copied().collect());
            }
        }

        fn is_commutative(&self) -> bool {
            false
        }
    }

    /// Concatenation of the pairs whose endpoints differ.
    #[derive(Clone, Copy, Debug, Default)]
    pub struct MismatchedConcat;

    impl<L: Copy + Ord + Send + Sync> LocalOperator<Trace<L>> for MismatchedConcat {
        fn name(&self) -> &str {
            "mismatched-concat"
        }

        fn pair(&self, t: &Trace<L>, s: &Trace<L>, out: &mut BTreeSet<Trace<L>>) {
            if t.tail() != s.head() {
                out.insert(concat_traces(t, s));
            }
        }

        fn is_commutative(&self) -> bool {
            false
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    Action,
    State,
    Relative,
    Db,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Action, ModelKind::State, ModelKind::Relative, ModelKind::Db];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Action => "action",
            ModelKind::State => "state",
            ModelKind::Relative => "relative",
            ModelKind::Db => "db",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config(format!("unknown model `{s}` (expected action, state, relative or db)")))
    }

    fn min_cap(self) -> usize {
        match self {
            ModelKind::Action => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct ModelConfig {
    pub topology: Arc<Topology>,
    pub values: ValueSet,
    /// `L_max`, the length cap for universe enumeration.
    pub cap: usize,
    pub kind: ModelKind,
}

pub const DEFAULT_CAP: usize = 4;

impl ModelConfig {
    pub fn new(kind: ModelKind, topology: Arc<Topology>, values: ValueSet, cap: usize) -> Self {
        ModelConfig { topology, values, cap, kind }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap < self.kind.min_cap() {
            return Err(Error::config(format!(
                "the {} model needs a length cap of at least {}",
                self.kind,
                self.kind.min_cap()
            )));
        }
        if self.topology.ground().len() > DEFAULT_ATOM_LIMIT {
            return Err(Error::config(format!(
                "ground set has {} atoms, the limit is {DEFAULT_ATOM_LIMIT}",
                self.topology.ground().len()
            )));
        }
        Ok(())
    }
}

pub type ActionTuples = Lists<EventAlphabet>;
pub type StateTuples = Lists<StateAlphabet>;
pub type DbTuples = Bare<StateAlphabet>;

pub type ActionModel = Cva<ActionTuples>;
pub type StateModel = Cva<StateTuples>;
pub type RelativeModel = Cva<StutterFree>;
pub type DbModel = Ova<DbTuples>;

pub enum Model {
    Action(ActionModel),
    State(StateModel),
    Relative(RelativeModel),
    Db(DbModel),
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Action(_) => ModelKind::Action,
            Model::State(_) => ModelKind::State,
            Model::Relative(_) => ModelKind::Relative,
            Model::Db(_) => ModelKind::Db,
        }
    }
}

fn checked(kind: ModelKind, topology: &Arc<Topology>, values: &ValueSet, cap: usize) -> Result<()> {
    ModelConfig::new(kind, topology.clone(), values.clone(), cap).validate()
}

/// `⟨Γ, ⌢, ι, ⧢, ι⟩`.
pub fn action_model(topology: Arc<Topology>, values: &ValueSet, cap: usize) -> Result<ActionModel> {
    checked(ModelKind::Action, &topology, values, cap)?;
    let ts = Arc::new(list_lift(EventAlphabet::new(values), topology, cap));
    let seq = Ova::new("action-concat", ts.clone(), Arc::new(Concat), Neutral::OfLength(0));
    let par = Ova::new("action-shuffle", ts, Arc::new(Shuffle), Neutral::OfLength(0));
    Cva::new("action", seq, par)
}

/// `⟨Σ, ⌣, τ, ∧, ⊤⟩`.
pub fn state_model(topology: Arc<Topology>, values: &ValueSet, cap: usize) -> Result<StateModel> {
    checked(ModelKind::State, &topology, values, cap)?;
    let ts = Arc::new(nonempty_list_lift(StateAlphabet::new(values), topology, cap));
    let seq = Ova::new("state-glue", ts.clone(), Arc::new(Glue), Neutral::OfLength(1));
    let par = Ova::relational("state-join", ts);
    Cva::new("state", seq, par)
}

/// `⟨Σ^rel, ⌣^rel, τ^rel, ∧^rel, ⊤^rel⟩`.
pub fn relative_model(topology: Arc<Topology>, values: &ValueSet, cap: usize) -> Result<RelativeModel> {
    checked(ModelKind::Relative, &topology, values, cap)?;
    let ts = Arc::new(StutterFree::new(StateAlphabet::new(values), topology, cap));
    let seq = Ova::new("relative-glue", ts.clone(), Arc::new(RelativeGlue), Neutral::OfLength(1));
    let par = Ova::relational("relative-join", ts);
    Cva::new("relative", seq, par)
}

/// Relations over attribute schemas with the natural join.
pub fn db_model(topology: Arc<Topology>, values: &ValueSet) -> Result<DbModel> {
    checked(ModelKind::Db, &topology, values, 1)?;
    Ok(Ova::relational("db-join", Arc::new(Bare::new(StateAlphabet::new(values), topology))))
}

pub fn build_model(cfg: &ModelConfig) -> Result<Model> {
    cfg.validate()?;
    let t = cfg.topology.clone();
    Ok(match cfg.kind {
        ModelKind::Action => Model::Action(action_model(t, &cfg.values, cfg.cap)?),
        ModelKind::State => Model::State(state_model(t, &cfg.values, cfg.cap)?),
        ModelKind::Relative => Model::Relative(relative_model(t, &cfg.values, cfg.cap)?),
        ModelKind::Db => Model::Db(db_model(t, &cfg.values)?),
    })
}

pub fn interleaving_product(
    m: &ActionModel,
    a: &Valuation<Trace<Event>>,
    b: &Valuation<Trace<Event>>,
) -> Valuation<Trace<Event>> {
    m.par().combine(a, b)
}

pub fn concatenating_product(
    m: &ActionModel,
    a: &Valuation<Trace<Event>>,
    b: &Valuation<Trace<Event>>,
) -> Valuation<Trace<Event>> {
    m.seq().combine(a, b)
}

pub fn gluing_product(
    m: &StateModel,
    a: &Valuation<Trace<State>>,
    b: &Valuation<Trace<State>>,
) -> Valuation<Trace<State>> {
    m.seq().combine(a, b)
}

pub fn relative_gluing_product(
    m: &RelativeModel,
    a: &Valuation<Trace<State>>,
    b: &Valuation<Trace<State>>,
) -> Valuation<Trace<State>> {
    m.seq().combine(a, b)
}

/// Human-readable name of a model for reports.
pub fn describe(kind: ModelKind) -> String {
    match kind {
        ModelKind::Action => "action trace model (concat, shuffle, iota)".into(),
        ModelKind::State => "state trace model (glue/tau, join/top)".into(),
        ModelKind::Relative => "relative state trace model (relative glue/tau, join/top)".into(),
        ModelKind::Db => "relational database (natural join/top)".into(),
    }
}
