//! Ordered valuation algebras built by extending a family of local operators.
//!
//! `a ⊙ b` is computed as `a↑ ⊙_U b↑` with `U = d a ∪ d b`, where `↑` is the
//! preimage of restriction. Every law of the structure has an executable
//! check returning a [`CheckReport`].

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::{Budget, CheckReport, Comparison, Counterexample, LawOutcome};
use crate::sample::Sampler;
use crate::topology::{inclusions, OpenSet};
use crate::tuples::TupleSystem;
use crate::valuation::{
    all_valuations, equal_under, gc_leq_under, preimage_unchecked, restrict_unchecked, truncate, Valuation,
};

/// A family `{⊙_A}` of binary operators on the local posets `Φ_A`. All
/// operators here are given tuple-wise: `a ⊙_A b = ⋃ {t ⊙ s : t ∈ a, s ∈ b}`.
pub trait LocalOperator<T>: Send + Sync {
    fn name(&self) -> &str;

    /// Adds the tuple-level products of `t` and `s` to `out`.
    fn pair(&self, t: &T, s: &T, out: &mut BTreeSet<T>);

    fn apply(&self, a: &BTreeSet<T>, b: &BTreeSet<T>) -> BTreeSet<T>
    where
        T: Ord,
    {
        let mut out = BTreeSet::new();
        for t in a {
            for s in b {
                self.pair(t, s, &mut out);
            }
        }
        out
    }

    /// Estimated cost of `apply` on operands of the given sizes.
    fn cost(&self, n: u64, m: u64) -> u64 {
        n.saturating_mul(m)
    }

    fn is_commutative(&self) -> bool;

    /// Whether this is set intersection, making the extension the relational join.
    fn is_relational(&self) -> bool {
        false
    }
}

/// `∩`, whose extension is the relational join.
#[derive(Clone, Copy, Debug, Default)]
pub struct Intersection;

impl<T: Ord + Clone> LocalOperator<T> for Intersection {
    fn name(&self) -> &str {
        "join"
    }

    fn pair(&self, t: &T, s: &T, out: &mut BTreeSet<T>) {
        if t == s {
            out.insert(t.clone());
        }
    }

    fn apply(&self, a: &BTreeSet<T>, b: &BTreeSet<T>) -> BTreeSet<T> {
        a.intersection(b).cloned().collect()
    }

    fn cost(&self, n: u64, m: u64) -> u64 {
        n.saturating_add(m)
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_relational(&self) -> bool {
        true
    }
}

/// Neutral global elements used by the models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neutral {
    /// `⊤_A = T_A`, capped at the tuple system's length cap.
    Top,
    /// All tuples of exactly this length (`ι` for 0, `τ` for 1).
    OfLength(usize),
}

impl Neutral {
    pub fn at<S: TupleSystem>(self, ts: &S, dom: OpenSet) -> Valuation<S::Tuple> {
        match self {
            Neutral::Top => Valuation::from_tuples(dom, ts.universe(dom)),
            Neutral::OfLength(n) => {
                Valuation::from_tuples(dom, ts.universe_within(dom, n).into_iter().filter(|t| ts.length(t) == n))
            }
        }
    }

    pub fn is_capped(self) -> bool {
        self == Neutral::Top
    }
}

/// `a ⊙ b ≜ a↑ ⊙_U b↑` with `U = d a ∪ d b`.
pub fn extend_local_operator<S: TupleSystem>(
    ts: &S,
    op: &dyn LocalOperator<S::Tuple>,
    a: &Valuation<S::Tuple>,
    b: &Valuation<S::Tuple>,
) -> Valuation<S::Tuple> {
    let u = a.domain().union(b.domain());
    let ea = preimage_unchecked(ts, a, u);
    let eb = preimage_unchecked(ts, b, u);
    Valuation::new(u, op.apply(ea.content(), eb.content()))
}

fn extension_work<S: TupleSystem>(ts: &S, v: &Valuation<S::Tuple>, to: OpenSet) -> u64 {
    if v.domain() == to {
        return v.len() as u64;
    }
    v.iter().fold(0u64, |w, t| w.saturating_add(ts.lift_count(t, v.domain(), to)))
}

/// An OVA `(P∘T, ⊙, ε)` whose combine is the extension of a local family.
#[derive(Clone)]
pub struct Ova<S: TupleSystem> {
    name: String,
    ts: Arc<S>,
    op: Arc<dyn LocalOperator<S::Tuple>>,
    neutral: Neutral,
}

impl<S: TupleSystem> core::fmt::Debug for Ova<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Ova")
            .field("name", &self.name)
            .field("tuples", &self.ts.name())
            .field("op", &self.op.name())
            .field("neutral", &self.neutral)
            .finish()
    }
}

impl<S: TupleSystem> Ova<S> {
    pub fn new(
        name: impl Into<String>,
        ts: Arc<S>,
        op: Arc<dyn LocalOperator<S::Tuple>>,
        neutral: Neutral,
    ) -> Self {
        Ova { name: name.into(), ts, op, neutral }
    }

    /// The OVA of `T`-relations: relational join with neutral `⊤`.
    pub fn relational(name: impl Into<String>, ts: Arc<S>) -> Self
    where
        S::Tuple: 'static,
    {
        Ova::new(name, ts, Arc::new(Intersection), Neutral::Top)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ts(&self) -> &S {
        &self.ts
    }

    pub fn ts_arc(&self) -> &Arc<S> {
        &self.ts
    }

    pub fn op(&self) -> &dyn LocalOperator<S::Tuple> {
        &*self.op
    }

    pub fn neutral_kind(&self) -> Neutral {
        self.neutral
    }

    pub fn is_commutative(&self) -> bool {
        self.op.is_commutative()
    }

    pub fn is_relational(&self) -> bool {
        self.op.is_relational()
    }

    /// Truncated to the cap whenever `ε` or the extension is capped.
    pub fn comparison(&self) -> Comparison {
        if self.neutral.is_capped() || !self.ts.extension_is_exact() {
            Comparison::Truncated(self.ts.cap())
        } else {
            Comparison::Exact
        }
    }

    pub fn neutral(&self, dom: OpenSet) -> Result<Valuation<S::Tuple>> {
        if !self.ts.topology().is_open(dom) {
            return Err(Error::domain(format!("{} is not open", self.ts.topology().render(dom))));
        }
        Ok(self.neutral.at(&*self.ts, dom))
    }

    pub(crate) fn neutral_unchecked(&self, dom: OpenSet) -> Valuation<S::Tuple> {
        self.neutral.at(&*self.ts, dom)
    }

    pub fn combine(&self, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>) -> Valuation<S::Tuple> {
        extend_local_operator(&*self.ts, &*self.op, a, b)
    }

    /// `combine`, or `None` when its estimated work exceeds `max_work`.
    pub fn try_combine(
        &self,
        a: &Valuation<S::Tuple>,
        b: &Valuation<S::Tuple>,
        max_work: u64,
    ) -> Option<Valuation<S::Tuple>> {
        let u = a.domain().union(b.domain());
        let (n, m) = (extension_work(&*self.ts, a, u), extension_work(&*self.ts, b, u));
        if n > max_work || m > max_work || self.op.cost(n, m) > max_work {
            return None;
        }
        Some(self.combine(a, b))
    }

    /// The right adjoint of restriction, computed as `ε_A ⊗ b`.
    pub fn extend(&self, b: &Valuation<S::Tuple>, to: OpenSet) -> Result<Valuation<S::Tuple>> {
        if !b.domain().is_subset(to) {
            return Err(Error::domain(format!(
                "cannot extend from {} to {}",
                self.ts.topology().render(b.domain()),
                self.ts.topology().render(to)
            )));
        }
        Ok(self.combine(&self.neutral(to)?, b))
    }

    /// `a ∧ b = a↑ ∩ b↑`, the meet in `∫Φ`; relational OVAs only.
    pub fn meet(&self, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>) -> Result<Valuation<S::Tuple>> {
        if !self.is_relational() {
            return Err(Error::Unsupported(format!("meet requires a relational OVA, `{}` is not", self.name)));
        }
        let u = a.domain().union(b.domain());
        Ok(preimage_unchecked(&*self.ts, a, u).intersection(&preimage_unchecked(&*self.ts, b, u)))
    }
}

/// Result of one sampled instance: `None` when skipped for cost.
pub(crate) type Case<T> = Option<core::result::Result<(), Counterexample<T>>>;

pub(crate) fn verdict<T>(ok: bool, cx: impl FnOnce() -> Counterexample<T>) -> Case<T> {
    Some(if ok { Ok(()) } else { Err(cx()) })
}

/// Runs a sampled law until `budget.samples` instances are evaluated, the
/// attempt limit is reached, or a counterexample is found.
pub(crate) fn run_law<S: TupleSystem, W>(
    ts: &S,
    budget: &Budget,
    subject: &str,
    law: &str,
    mut case: impl FnMut(&mut Sampler<'_, S>) -> Case<W>,
) -> LawOutcome<W> {
    let mut s = Sampler::new(ts, budget, &format!("{subject}/{law}"));
    let mut outcome = LawOutcome::new(law);
    let mut attempts = 0;
    while outcome.cases < budget.samples && attempts < budget.samples.saturating_mul(8) {
        attempts += 1;
        match case(&mut s) {
            None => outcome.skipped += 1,
            Some(r) => {
                let failed = r.is_err();
                outcome.record(!failed, || r.err().unwrap());
                if failed {
                    break;
                }
            }
        }
    }
    outcome
}

/// Associativity, monotonicity, labelling, two-sided neutrality, both
/// combination identities and (if declared) commutativity.
pub fn check_ova_axioms<S: TupleSystem>(ova: &Ova<S>, budget: &Budget) -> CheckReport<S::Tuple> {
    let ts = ova.ts();
    let cmp = ova.comparison();
    let w = budget.max_work;
    let name = ova.name();
    let mut report = CheckReport::new(name, budget.seed, cmp);

    report.push(run_law(ts, budget, name, "associativity", |s| {
        let (a, b, c) = (s.valuation(), s.valuation(), s.valuation());
        let lhs = ova.try_combine(&ova.try_combine(&a, &b, w)?, &c, w)?;
        let rhs = ova.try_combine(&a, &ova.try_combine(&b, &c, w)?, w)?;
        verdict(equal_under(ts, &lhs, &rhs, cmp), || {
            Counterexample::new("(a⊗b)⊗c != a⊗(b⊗c)")
                .with("a", a)
                .with("b", b)
                .with("c", c)
                .with("lhs", lhs.clone())
                .with("rhs", rhs.clone())
        })
    }));

    report.push(run_law(ts, budget, name, "monotonicity", |s| {
        let (a, b) = (s.valuation(), s.valuation());
        let (a2, b2) = (s.above(&a), s.above(&b));
        let lhs = ova.try_combine(&a, &b, w)?;
        let rhs = ova.try_combine(&a2, &b2, w)?;
        verdict(gc_leq_under(ts, &lhs, &rhs, cmp), || {
            Counterexample::new("a⪯a', b⪯b' but a⊗b ⋠ a'⊗b'")
                .with("a", a)
                .with("a'", a2)
                .with("b", b)
                .with("b'", b2)
        })
    }));

    report.push(run_law(ts, budget, name, "labelling", |s| {
        let (a, b) = (s.valuation(), s.valuation());
        let ab = ova.try_combine(&a, &b, w)?;
        verdict(ab.domain() == a.domain().union(b.domain()), || {
            Counterexample::new("d(a⊗b) != d a ∪ d b").with("a", a).with("b", b)
        })
    }));

    report.push(run_law(ts, budget, name, "neutrality-left", |s| {
        let a = s.valuation();
        let lhs = ova.try_combine(&ova.neutral_unchecked(a.domain()), &a, w)?;
        verdict(equal_under(ts, &lhs, &a, cmp), || {
            Counterexample::new("ε ⊗ a != a").with("a", a.clone()).with("ε⊗a", lhs.clone())
        })
    }));

    report.push(run_law(ts, budget, name, "neutrality-right", |s| {
        let a = s.valuation();
        let rhs = ova.try_combine(&a, &ova.neutral_unchecked(a.domain()), w)?;
        verdict(equal_under(ts, &rhs, &a, cmp), || {
            Counterexample::new("a ⊗ ε != a").with("a", a.clone()).with("a⊗ε", rhs.clone())
        })
    }));

    report.push(run_law(ts, budget, name, "combination-left", |s| {
        let (a, b) = (s.valuation(), s.valuation());
        let i = a.domain().intersection(b.domain());
        let lhs = restrict_unchecked(ts, &ova.try_combine(&a, &b, w)?, a.domain());
        let rhs = ova.try_combine(&a, &restrict_unchecked(ts, &b, i), w)?;
        verdict(equal_under(ts, &lhs, &rhs, cmp), || {
            Counterexample::new("(a⊗b)|da != a ⊗ b|(da∩db)")
                .with("a", a)
                .with("b", b)
                .with("lhs", lhs.clone())
                .with("rhs", rhs.clone())
        })
    }));

    report.push(run_law(ts, budget, name, "combination-right", |s| {
        let (a, b) = (s.valuation(), s.valuation());
        let i = a.domain().intersection(b.domain());
        let lhs = restrict_unchecked(ts, &ova.try_combine(&a, &b, w)?, b.domain());
        let rhs = ova.try_combine(&restrict_unchecked(ts, &a, i), &b, w)?;
        verdict(equal_under(ts, &lhs, &rhs, cmp), || {
            Counterexample::new("(a⊗b)|db != a|(da∩db) ⊗ b")
                .with("a", a)
                .with("b", b)
                .with("lhs", lhs.clone())
                .with("rhs", rhs.clone())
        })
    }));

    if ova.is_commutative() {
        report.push(run_law(ts, budget, name, "commutativity", |s| {
            let (a, b) = (s.valuation(), s.valuation());
            let lhs = ova.try_combine(&a, &b, w)?;
            let rhs = ova.try_combine(&b, &a, w)?;
            verdict(equal_under(ts, &lhs, &rhs, cmp), || {
                Counterexample::new("a⊗b != b⊗a").with("a", a).with("b", b)
            })
        }));
    }
    report
}

/// `ε_A ⊗ ε_B = ε_A` for every inclusion `B ⊆ A`, checked on all inclusions.
pub fn check_strong_neutrality<S: TupleSystem>(ova: &Ova<S>) -> CheckReport<S::Tuple> {
    let ts = ova.ts();
    let cmp = ova.comparison();
    let mut report = CheckReport::new(ova.name(), 0, cmp);
    let mut law = LawOutcome::new("strong-neutrality");
    for (b, a) in inclusions(ts.topology()) {
        let eb = ova.neutral_unchecked(b);
        let ea = ova.neutral_unchecked(a);
        let lifted = ova.combine(&ea, &eb);
        law.record(equal_under(ts, &lifted, &ea, cmp), || {
            Counterexample::new(format!(
                "extending ε{} to {} does not give ε{}",
                ts.topology().render(b),
                ts.topology().render(a),
                ts.topology().render(a)
            ))
            .with("ε_B", eb.clone())
            .with("ext(ε_B, A)", lifted.clone())
            .with("ε_A", ea.clone())
        });
    }
    report.push(law);
    report
}

/// `ε_A ⊗ ε_B = ε_{A∪B}` for all pairs of opens.
pub fn check_neutral_products<S: TupleSystem>(ova: &Ova<S>) -> CheckReport<S::Tuple> {
    let ts = ova.ts();
    let cmp = ova.comparison();
    let mut report = CheckReport::new(ova.name(), 0, cmp);
    let mut law = LawOutcome::new("neutral-products");
    for &a in ts.topology().opens() {
        for &b in ts.topology().opens() {
            let prod = ova.combine(&ova.neutral_unchecked(a), &ova.neutral_unchecked(b));
            let expected = ova.neutral_unchecked(a.union(b));
            law.record(equal_under(ts, &prod, &expected, cmp), || {
                Counterexample::new(format!(
                    "ε{} ⊗ ε{} != ε of the union",
                    ts.topology().render(a),
                    ts.topology().render(b)
                ))
                .with("product", prod.clone())
                .with("expected", expected.clone())
            });
        }
    }
    report.push(law);
    report
}

struct AdjunctionLaws<'o, S: TupleSystem> {
    ova: &'o Ova<S>,
    cmp: Comparison,
    galois: LawOutcome<S::Tuple>,
    extensive: LawOutcome<S::Tuple>,
    insertion: LawOutcome<S::Tuple>,
    preimage: LawOutcome<S::Tuple>,
    functoriality: LawOutcome<S::Tuple>,
}

impl<'o, S: TupleSystem> AdjunctionLaws<'o, S> {
    fn new(ova: &'o Ova<S>) -> Self {
        AdjunctionLaws {
            ova,
            cmp: ova.comparison(),
            galois: LawOutcome::new("galois"),
            extensive: LawOutcome::new("extensive"),
            insertion: LawOutcome::new("insertion-closure"),
            preimage: LawOutcome::new("extension-is-preimage"),
            functoriality: LawOutcome::new("extension-functoriality"),
        }
    }

    fn ext(&self, b: &Valuation<S::Tuple>, to: OpenSet) -> Valuation<S::Tuple> {
        self.ova.combine(&self.ova.neutral_unchecked(to), b)
    }

    /// Laws on one pair `a ∈ Φ_A`, `b ∈ Φ_B` with `B ⊆ A`.
    fn pair(&mut self, a: &Valuation<S::Tuple>, b: &Valuation<S::Tuple>) {
        let ts = self.ova.ts();
        let cmp = self.cmp;
        let (dom_a, dom_b) = (a.domain(), b.domain());
        let a = truncate(ts, a, cmp);
        let eb = self.ext(b, dom_a);
        let left = restrict_unchecked(ts, &a, dom_b).content().is_subset(b.content());
        let right = a.content().is_subset(truncate(ts, &eb, cmp).content());
        self.galois.record(left == right, || {
            Counterexample::new(format!("a|B ⊆ b is {left} but a ⊆ ext(b, A) is {right}"))
                .with("a", a.clone())
                .with("b", b.clone())
                .with("ext(b, A)", eb.clone())
        });
        let back = self.ext(&restrict_unchecked(ts, &a, dom_b), dom_a);
        self.extensive.record(a.content().is_subset(back.content()), || {
            Counterexample::new("a ⊄ ext(a|B, A)").with("a", a.clone()).with("ext(a|B, A)", back.clone())
        });
        let closed = restrict_unchecked(ts, &truncate(ts, &eb, cmp), dom_b);
        self.insertion.record(equal_under(ts, &closed, b, cmp), || {
            Counterexample::new("ext(b, A)|B != b").with("b", b.clone()).with("ext(b, A)|B", closed.clone())
        });
        let pre = preimage_unchecked(ts, b, dom_a);
        self.preimage.record(equal_under(ts, &pre, &eb, cmp), || {
            Counterexample::new("ε_A ⊗ b differs from the preimage of b")
                .with("b", b.clone())
                .with("ε_A ⊗ b", eb.clone())
                .with("preimage", pre.clone())
        });
    }

    /// `ext(ext(c, B), A) = ext(c, A)` for `C ⊆ B ⊆ A`.
    fn chain(&mut self, c: &Valuation<S::Tuple>, b: OpenSet, a: OpenSet) {
        let ts = self.ova.ts();
        let twice = self.ext(&self.ext(c, b), a);
        let once = self.ext(c, a);
        self.functoriality.record(equal_under(ts, &twice, &once, self.cmp), || {
            Counterexample::new("ext(ext(c, B), A) != ext(c, A)")
                .with("c", c.clone())
                .with("twice", twice.clone())
                .with("once", once.clone())
        });
    }

    fn finish(self, seed: u64) -> CheckReport<S::Tuple> {
        let mut report = CheckReport::new(self.ova.name(), seed, self.cmp);
        for law in [self.galois, self.extensive, self.insertion, self.preimage, self.functoriality] {
            report.push(law);
        }
        report
    }
}

/// The Galois connection between restriction and extension, extensiveness,
/// insertion closure, extension as preimage and functoriality, on sampled
/// instances.
pub fn check_adjunction<S: TupleSystem>(ova: &Ova<S>, budget: &Budget) -> CheckReport<S::Tuple> {
    let ts = ova.ts();
    let mut laws = AdjunctionLaws::new(ova);
    let mut s = Sampler::new(ts, budget, &format!("{}/adjunction", ova.name()));
    let mut done = 0;
    let mut attempts = 0;
    while done < budget.samples && attempts < budget.samples * 8 {
        attempts += 1;
        let a = s.valuation();
        let dom_b = s.subopen(a.domain());
        // Half of the time `b` is above `a`, so that both sides of the
        // equivalence are exercised.
        let b = if s.chance(0.5) {
            let mut base = restrict_unchecked(ts, &a, dom_b).into_content();
            base.extend(s.valuation_on(dom_b).into_content());
            Valuation::new(dom_b, base)
        } else {
            s.valuation_on(dom_b)
        };
        let work = extension_work(ts, &b, a.domain()) + extension_work(ts, &a, a.domain());
        let top = if ova.neutral_kind().is_capped() { s.universe_size(a.domain()) as u64 } else { 0 };
        if work.saturating_add(top) > budget.max_work {
            laws.galois.skipped += 1;
            continue;
        }
        laws.pair(&a, &b);
        let dom_c = s.subopen(dom_b);
        let c = s.valuation_on(dom_c);
        if extension_work(ts, &c, a.domain()) <= budget.max_work {
            laws.chain(&c, dom_b, a.domain());
        }
        done += 1;
    }
    laws.finish(budget.seed)
}

/// As [`check_adjunction`], over every valuation on every open. Refused when
/// some capped universe has more than `max_universe` tuples.
pub fn check_adjunction_exhaustive<S: TupleSystem>(
    ova: &Ova<S>,
    max_universe: usize,
) -> Result<CheckReport<S::Tuple>> {
    let ts = ova.ts();
    let opens = ts.topology().opens();
    let mut vals = Vec::with_capacity(opens.len());
    for &dom in opens {
        let universe = ts.universe(dom);
        if universe.len() > max_universe {
            return Err(Error::Unsupported(format!(
                "universe on {} has {} tuples (limit {max_universe})",
                ts.topology().render(dom),
                universe.len()
            )));
        }
        vals.push(all_valuations(dom, &universe));
    }
    let mut laws = AdjunctionLaws::new(ova);
    for (ia, &dom_a) in opens.iter().enumerate() {
        for (ib, &dom_b) in opens.iter().enumerate() {
            if !dom_b.is_subset(dom_a) {
                continue;
            }
            for a in &vals[ia] {
                for b in &vals[ib] {
                    laws.pair(a, b);
                }
            }
            for (ic, &dom_c) in opens.iter().enumerate() {
                if dom_c.is_subset(dom_b) {
                    for c in &vals[ic] {
                        laws.chain(c, dom_b, dom_a);
                    }
                }
            }
        }
    }
    Ok(laws.finish(0))
}

/// Local monotonicity, local associativity and extension-commutation of a
/// local family: `(b₁ ⊙_B b₂)↑A = b₁↑A ⊙_A b₂↑A`.
pub fn check_helper_hypotheses<S: TupleSystem>(
    ts: &S,
    op: &dyn LocalOperator<S::Tuple>,
    budget: &Budget,
) -> CheckReport<S::Tuple> {
    let cmp = if ts.extension_is_exact() { Comparison::Exact } else { Comparison::Truncated(ts.cap()) };
    let name = op.name().to_string();
    let w = budget.max_work;
    let mut report = CheckReport::new(name.clone(), budget.seed, cmp);

    report.push(run_law(ts, budget, &name, "local-monotonicity", |s| {
        let dom = s.open();
        let (a, b) = (s.valuation_on(dom), s.valuation_on(dom));
        let a2 = a.union(&s.valuation_on(dom));
        let b2 = b.union(&s.valuation_on(dom));
        if op.cost(a2.len() as u64, b2.len() as u64) > w {
            return None;
        }
        let lhs = op.apply(a.content(), b.content());
        let rhs = op.apply(a2.content(), b2.content());
        verdict(lhs.is_subset(&rhs), || {
            Counterexample::new("a ⊆ a', b ⊆ b' but a⊙b ⊄ a'⊙b'")
                .with("a", a)
                .with("a'", a2)
                .with("b", b)
                .with("b'", b2)
        })
    }));

    report.push(run_law(ts, budget, &name, "local-associativity", |s| {
        let dom = s.open();
        let (a, b, c) = (s.valuation_on(dom), s.valuation_on(dom), s.valuation_on(dom));
        let lhs = op.apply(&op.apply(a.content(), b.content()), c.content());
        let rhs = op.apply(a.content(), &op.apply(b.content(), c.content()));
        verdict(lhs == rhs, || Counterexample::new("local operator is not associative").with("a", a).with("b", b).with("c", c))
    }));

    report.push(run_law(ts, budget, &name, "extension-commutation", |s| {
        let dom_a = s.open();
        let dom_b = s.subopen(dom_a);
        let (b1, b2) = (s.valuation_on(dom_b), s.valuation_on(dom_b));
        let (n, m) = (extension_work(ts, &b1, dom_a), extension_work(ts, &b2, dom_a));
        if op.cost(n, m) > w {
            return None;
        }
        let prod = Valuation::new(dom_b, op.apply(b1.content(), b2.content()));
        if extension_work(ts, &prod, dom_a) > w {
            return None;
        }
        let lhs = preimage_unchecked(ts, &prod, dom_a);
        let e1 = preimage_unchecked(ts, &b1, dom_a);
        let e2 = preimage_unchecked(ts, &b2, dom_a);
        let rhs = Valuation::new(dom_a, op.apply(e1.content(), e2.content()));
        verdict(equal_under(ts, &lhs, &rhs, cmp), || {
            Counterexample::new("(b₁ ⊙ b₂)↑ != b₁↑ ⊙ b₂↑")
                .with("b1", b1)
                .with("b2", b2)
                .with("lhs", lhs.clone())
                .with("rhs", rhs.clone())
        })
    }));
    report
}

/// Searches for `a, b` with `a ⊗ b != b ⊗ a`.
pub fn find_noncommuting_pair<S: TupleSystem>(
    ova: &Ova<S>,
    budget: &Budget,
) -> Option<(Valuation<S::Tuple>, Valuation<S::Tuple>)> {
    let ts = ova.ts();
    let cmp = ova.comparison();
    let mut s = Sampler::new(ts, budget, &format!("{}/noncommuting", ova.name()));
    for _ in 0..budget.samples {
        let dom = s.open();
        let (a, b) = (s.valuation_on(dom), s.valuation_on(dom));
        let (Some(ab), Some(ba)) =
            (ova.try_combine(&a, &b, budget.max_work), ova.try_combine(&b, &a, budget.max_work))
        else {
            continue;
        };
        if !equal_under(ts, &ab, &ba, cmp) {
            return Some((a, b));
        }
    }
    None
}

