//! Concurrent valuation algebras: a sequential and a commutative parallel OVA
//! on one prealgebra, linked by the weak exchange law.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use crate::error::{Error, Result};
use crate::ova::{run_law, verdict, Ova};
use crate::report::{Budget, CheckReport, Comparison, Counterexample, LawOutcome};
use crate::sample::Sampler;
use crate::topology::OpenSet;
use crate::tuples::TupleSystem;
use crate::valuation::{equal_under, gc_leq_under, truncate, Valuation};

/// `(Φ, ⨾, skip, ∥, run)`.
#[derive(Clone, Debug)]
pub struct Cva<S: TupleSystem> {
    name: String,
    seq: Ova<S>,
    par: Ova<S>,
}

impl<S: TupleSystem> Cva<S> {
    pub fn new(name: impl Into<String>, seq: Ova<S>, par: Ova<S>) -> Result<Self> {
        if !par.is_commutative() {
            return Err(Error::config(format!("parallel combine `{}` is not commutative", par.name())));
        }
        if !Arc::ptr_eq(seq.ts_arc(), par.ts_arc()) {
            return Err(Error::config("sequential and parallel OVAs must share one prealgebra"));
        }
        Ok(Cva { name: name.into(), seq, par })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn seq(&self) -> &Ova<S> {
        &self.seq
    }

    pub fn par(&self) -> &Ova<S> {
        &self.par
    }

    pub fn ts(&self) -> &S {
        self.seq.ts()
    }

    pub fn comparison(&self) -> Comparison {
        self.seq.comparison().join(self.par.comparison())
    }

    pub fn skip(&self, dom: OpenSet) -> Result<Valuation<S::Tuple>> {
        self.seq.neutral(dom)
    }

    pub fn run(&self, dom: OpenSet) -> Result<Valuation<S::Tuple>> {
        self.par.neutral(dom)
    }

    /// Whether `skip` and `run` are the same global element.
    pub fn neutrals_coincide(&self) -> bool {
        self.seq.neutral_kind() == self.par.neutral_kind()
    }

    /// `{p} a {q}`: `p ⨾ a ⪯ q`.
    pub fn hoare(&self, p: &Valuation<S::Tuple>, a: &Valuation<S::Tuple>, q: &Valuation<S::Tuple>) -> bool {
        gc_leq_under(self.ts(), &self.seq.combine(p, a), q, self.comparison())
    }

    /// Jones quintuple `{p, r} a {g, q}`: `{p} r ∥ a {q}` and `a ⪯ g`.
    pub fn jones(
        &self,
        p: &Valuation<S::Tuple>,
        r: &Valuation<S::Tuple>,
        a: &Valuation<S::Tuple>,
        g: &Valuation<S::Tuple>,
        q: &Valuation<S::Tuple>,
    ) -> bool {
        self.hoare(p, &self.par.combine(r, a), q) && gc_leq_under(self.ts(), a, g, self.comparison())
    }
}

/// `(a ∥ b) ⨾ (c ∥ d) ⪯ (a ⨾ c) ∥ (b ⨾ d)`, on arbitrary domains and on a
/// single shared domain.
pub fn check_weak_exchange<S: TupleSystem>(cva: &Cva<S>, budget: &Budget) -> CheckReport<S::Tuple> {
    let ts = cva.ts();
    let cmp = cva.comparison();
    let mut report = CheckReport::new(cva.name(), budget.seed, cmp);
    for (law, local) in [("weak-exchange", false), ("local-weak-exchange", true)] {
        report.push(run_law(ts, budget, cva.name(), law, |s| {
            let quad = if local {
                let dom = s.open();
                [s.valuation_on(dom), s.valuation_on(dom), s.valuation_on(dom), s.valuation_on(dom)]
            } else {
                [s.valuation(), s.valuation(), s.valuation(), s.valuation()]
            };
            let (lhs, rhs) = exchange_sides(cva, &quad, budget.max_work)?;
            verdict(gc_leq_under(ts, &lhs, &rhs, cmp), || {
                let [a, b, c, d] = quad.clone();
                Counterexample::new("(a∥b)⨾(c∥d) ⋠ (a⨾c)∥(b⨾d)")
                    .with("a", a)
                    .with("b", b)
                    .with("c", c)
                    .with("d", d)
                    .with("lhs", lhs.clone())
                    .with("rhs", rhs.clone())
            })
        }));
    }
    report
}

fn exchange_sides<S: TupleSystem>(
    cva: &Cva<S>,
    [a, b, c, d]: &[Valuation<S::Tuple>; 4],
    w: u64,
) -> Option<(Valuation<S::Tuple>, Valuation<S::Tuple>)> {
    let lhs = cva.seq.try_combine(&cva.par.try_combine(a, b, w)?, &cva.par.try_combine(c, d, w)?, w)?;
    let rhs = cva.par.try_combine(&cva.seq.try_combine(a, c, w)?, &cva.seq.try_combine(b, d, w)?, w)?;
    Some((lhs, rhs))
}

/// Searches for `a, b, c, d` where weak exchange holds strictly.
pub fn find_strict_exchange<S: TupleSystem>(cva: &Cva<S>, budget: &Budget) -> Option<[Valuation<S::Tuple>; 4]> {
    let ts = cva.ts();
    let cmp = cva.comparison();
    let mut s = Sampler::new(ts, budget, &format!("{}/strict-exchange", cva.name()));
    for _ in 0..budget.samples.saturating_mul(4) {
        let dom = s.open();
        let quad = [s.valuation_on(dom), s.valuation_on(dom), s.valuation_on(dom), s.valuation_on(dom)];
        let Some((lhs, rhs)) = exchange_sides(cva, &quad, budget.max_work) else { continue };
        if gc_leq_under(ts, &lhs, &rhs, cmp) && !equal_under(ts, &lhs, &rhs, cmp) {
            return Some(quad);
        }
    }
    None
}

/// `skip_A ⪯ skip_A ∥ skip_A` and `run_A ⨾ run_A ⪯ run_A` for every open `A`.
pub fn check_neutral_laws<S: TupleSystem>(cva: &Cva<S>) -> CheckReport<S::Tuple> {
    let ts = cva.ts();
    let cmp = cva.comparison();
    let mut report = CheckReport::new(cva.name(), 0, cmp);
    let mut skip_law = LawOutcome::new("skip-law");
    let mut run_law = LawOutcome::new("run-law");
    for &dom in ts.topology().opens() {
        let (skip, run) = (cva.seq.neutral_unchecked(dom), cva.par.neutral_unchecked(dom));
        let ss = cva.par.combine(&skip, &skip);
        skip_law.record(gc_leq_under(ts, &skip, &ss, cmp), || {
            Counterexample::new("skip ⋠ skip ∥ skip").with("skip", skip.clone()).with("skip∥skip", ss.clone())
        });
        let rr = cva.seq.combine(&run, &run);
        run_law.record(gc_leq_under(ts, &rr, &run, cmp), || {
            Counterexample::new("run ⨾ run ⋠ run").with("run", run.clone()).with("run⨾run", rr.clone())
        });
    }
    report.push(skip_law);
    report.push(run_law);
    report
}

/// `skip_A ⪯ run_A`, `skip_A ∥ skip_A = skip_A` and `run_A ⨾ run_A = run_A`.
pub fn check_derived_neutral_props<S: TupleSystem>(cva: &Cva<S>) -> CheckReport<S::Tuple> {
    let ts = cva.ts();
    let cmp = cva.comparison();
    let mut report = CheckReport::new(cva.name(), 0, cmp);
    let mut below = LawOutcome::new("skip-below-run");
    let mut skip_idem = LawOutcome::new("skip-par-idempotent");
    let mut run_idem = LawOutcome::new("run-seq-idempotent");
    for &dom in ts.topology().opens() {
        let (skip, run) = (cva.seq.neutral_unchecked(dom), cva.par.neutral_unchecked(dom));
        below.record(gc_leq_under(ts, &skip, &run, cmp), || {
            Counterexample::new("skip ⋠ run").with("skip", skip.clone()).with("run", run.clone())
        });
        let ss = cva.par.combine(&skip, &skip);
        skip_idem.record(equal_under(ts, &ss, &skip, cmp), || {
            Counterexample::new("skip ∥ skip != skip").with("skip", skip.clone()).with("skip∥skip", ss.clone())
        });
        let rr = cva.seq.combine(&run, &run);
        run_idem.record(equal_under(ts, &rr, &run, cmp), || {
            Counterexample::new("run ⨾ run != run").with("run", run.clone()).with("run⨾run", rr.clone())
        });
    }
    report.push(below);
    report.push(skip_idem);
    report.push(run_idem);
    report
}

/// From `{p} a {q}` and `{p'} a' {q'}` infer `{p ∥ p'} a ∥ a' {q ∥ q'}`.
/// Premises are made to hold by drawing `q` above `p ⨾ a`; instances whose
/// premises fail anyway are skipped.
pub fn check_concurrency_rule<S: TupleSystem>(cva: &Cva<S>, budget: &Budget) -> CheckReport<S::Tuple> {
    let ts = cva.ts();
    let cmp = cva.comparison();
    let w = budget.max_work;
    let mut report = CheckReport::new(cva.name(), budget.seed, cmp);
    report.push(run_law(ts, budget, cva.name(), "concurrency-rule", |s| {
        let (p, a, p2, a2) = (s.valuation(), s.valuation(), s.valuation(), s.valuation());
        let pa = truncate(ts, &cva.seq.try_combine(&p, &a, w)?, cmp);
        let pa2 = truncate(ts, &cva.seq.try_combine(&p2, &a2, w)?, cmp);
        let (q, q2) = (s.above(&pa), s.above(&pa2));
        if !gc_leq_under(ts, &pa, &q, cmp) || !gc_leq_under(ts, &pa2, &q2, cmp) {
            return None;
        }
        let pp = cva.par.try_combine(&p, &p2, w)?;
        let aa = cva.par.try_combine(&a, &a2, w)?;
        let qq = cva.par.try_combine(&q, &q2, w)?;
        let lhs = cva.seq.try_combine(&pp, &aa, w)?;
        verdict(gc_leq_under(ts, &lhs, &qq, cmp), || {
            Counterexample::new("premises hold but {p∥p'} a∥a' {q∥q'} fails")
                .with("p", p)
                .with("a", a)
                .with("q", q.clone())
                .with("p'", p2)
                .with("a'", a2)
                .with("q'", q2.clone())
        })
    }));
    report
}

/// `{skip} a {a}` for sampled `a`, with `skip` on `d a`.
pub fn check_hoare_skip<S: TupleSystem>(cva: &Cva<S>, budget: &Budget) -> CheckReport<S::Tuple> {
    let ts = cva.ts();
    let mut report = CheckReport::new(cva.name(), budget.seed, cva.comparison());
    report.push(run_law(ts, budget, cva.name(), "hoare-skip", |s| {
        let a = s.valuation();
        let skip = cva.seq.neutral_unchecked(a.domain());
        cva.seq.try_combine(&skip, &a, budget.max_work)?;
        verdict(cva.hoare(&skip, &a, &a), || Counterexample::new("{skip} a {a} fails").with("a", a.clone()))
    }));
    report
}

/// `a ⨾ b ⪯ a ∥ b`, which follows from weak exchange when the neutrals
/// coincide.
pub fn check_seq_le_par<S: TupleSystem>(cva: &Cva<S>, budget: &Budget) -> Result<CheckReport<S::Tuple>> {
    if !cva.neutrals_coincide() {
        return Err(Error::Unsupported(format!("neutral elements of `{}` do not coincide", cva.name())));
    }
    let ts = cva.ts();
    let cmp = cva.comparison();
    let w = budget.max_work;
    let mut report = CheckReport::new(cva.name(), budget.seed, cmp);
    report.push(run_law(ts, budget, cva.name(), "seq-below-par", |s| {
        let (a, b) = (s.valuation(), s.valuation());
        let lhs = cva.seq.try_combine(&a, &b, w)?;
        let rhs = cva.par.try_combine(&a, &b, w)?;
        verdict(gc_leq_under(ts, &lhs, &rhs, cmp), || {
            Counterexample::new("a ⨾ b ⋠ a ∥ b").with("a", a).with("b", b)
        })
    }));
    Ok(report)
}

