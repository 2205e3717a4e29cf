//! Lax, colax and strong morphisms of OVAs and CVAs, and the stuttering
//! quotient `f : Σ → Σ^rel`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::cva::Cva;
use crate::error::{Error, Result};
use crate::models::{action_model, state_model, ActionModel, StateModel};
use crate::ova::{run_law, verdict, Ova};
use crate::report::{Budget, CheckReport, Counterexample, LawOutcome};
use crate::topology::{discrete_topology, GroundSet};
use crate::tuples::{stutter_reduce, Event, State, Trace, TupleSystem, ValueSet};
use crate::valuation::{all_valuations, equal_under, gc_leq, gc_leq_under, restrict_unchecked, Valuation};

/// Direction of the morphism inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `f(a)|C ⪯ f(a|C)`, `f(a) ⊗' f(b) ⪯ f(a ⊗ b)`, `ε' ⪯ f(ε)`.
    Lax,
    /// The reverse inequalities.
    Colax,
    /// Both.
    Strong,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lax" => Ok(Mode::Lax),
            "colax" => Ok(Mode::Colax),
            "strong" => Ok(Mode::Strong),
            _ => Err(Error::config(format!("unknown mode `{s}` (expected lax, colax or strong)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lax => "lax",
            Mode::Colax => "colax",
            Mode::Strong => "strong",
        })
    }
}

/// Which combine operators a morphism is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Seq,
    Par,
    /// Both, as required of a morphism of CVAs.
    Cva,
}

impl Level {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "seq" => Ok(Level::Seq),
            "par" | "ova" => Ok(Level::Par),
            "cva" => Ok(Level::Cva),
            _ => Err(Error::config(format!("unknown level `{s}` (expected seq, par, ova or cva)"))),
        }
    }

    fn ops(self) -> &'static [bool] {
        // `true` selects the sequential operator.
        match self {
            Level::Seq => &[true],
            Level::Par => &[false],
            Level::Cva => &[true, false],
        }
    }
}

type Map<'a, S, T> = dyn Fn(&Valuation<<S as TupleSystem>::Tuple>) -> Valuation<<T as TupleSystem>::Tuple> + 'a;

/// A domain-preserving family of maps `f_A : Φ_A → Φ'_A`.
pub struct MorphismCandidate<'a, S: TupleSystem, T: TupleSystem> {
    pub name: String,
    pub source: &'a Cva<S>,
    pub target: &'a Cva<T>,
    pub map: &'a Map<'a, S, T>,
}

/// Checks monotonicity, naturality, multiplicativity and unitality in the
/// direction(s) given by `mode`, for the operators selected by `level`.
pub fn check_morphism<S: TupleSystem, T: TupleSystem>(
    m: &MorphismCandidate<'_, S, T>,
    mode: Mode,
    level: Level,
    budget: &Budget,
) -> Result<CheckReport<T::Tuple>> {
    let (src, dst) = (m.source.ts(), m.target.ts());
    if src.topology() != dst.topology() {
        return Err(Error::domain("source and target models live on different spaces"));
    }
    let cmp = m.source.comparison().join(m.target.comparison());
    let f = m.map;
    let w = budget.max_work;
    let lax = matches!(mode, Mode::Lax | Mode::Strong);
    let colax = matches!(mode, Mode::Colax | Mode::Strong);
    // `x ≤ y` in the requested direction(s).
    let holds = |lax_lo: &Valuation<T::Tuple>, lax_hi: &Valuation<T::Tuple>| {
        (!lax || gc_leq_under(dst, lax_lo, lax_hi, cmp)) && (!colax || gc_leq_under(dst, lax_hi, lax_lo, cmp))
    };
    let subject = format!("{} ({mode})", m.name);
    let mut report = CheckReport::new(subject.clone(), budget.seed, cmp);

    report.push(run_law(src, budget, &subject, "monotonicity", |s| {
        let a = s.valuation();
        let b = s.above(&a);
        let (fa, fb) = (f(&a), f(&b));
        verdict(gc_leq_under(dst, &fa, &fb, cmp), || {
            Counterexample::new("a ⪯ b but f(a) ⋠ f(b)").with("f(a)", fa.clone()).with("f(b)", fb.clone())
        })
    }));

    report.push(run_law(src, budget, &subject, "naturality", |s| {
        let a = s.valuation();
        let c = s.subopen(a.domain());
        let lhs = restrict_unchecked(dst, &f(&a), c);
        let rhs = f(&restrict_unchecked(src, &a, c));
        verdict(holds(&lhs, &rhs), || {
            Counterexample::new(format!("{mode} naturality fails: f(a)|C vs f(a|C)"))
                .with("f(a)|C", lhs.clone())
                .with("f(a|C)", rhs.clone())
        })
    }));

    for &is_seq in level.ops() {
        let (so, to): (&Ova<S>, &Ova<T>) =
            if is_seq { (m.source.seq(), m.target.seq()) } else { (m.source.par(), m.target.par()) };
        let suffix = if is_seq { "seq" } else { "par" };
        report.push(run_law(src, budget, &subject, &format!("multiplicativity-{suffix}"), |s| {
            let (a, b) = (s.valuation(), s.valuation());
            let lhs = to.try_combine(&f(&a), &f(&b), w)?;
            let rhs = f(&so.try_combine(&a, &b, w)?);
            verdict(holds(&lhs, &rhs), || {
                Counterexample::new(format!("{mode} multiplicativity fails for {}", so.name()))
                    .with("f(a)⊗'f(b)", lhs.clone())
                    .with("f(a⊗b)", rhs.clone())
            })
        }));

        let mut unit = LawOutcome::new(format!("unitality-{suffix}"));
        for &dom in src.topology().opens() {
            let lhs = to.neutral_unchecked(dom);
            let rhs = f(&so.neutral_unchecked(dom));
            unit.record(holds(&lhs, &rhs), || {
                Counterexample::new(format!("{mode} unitality fails on {}", src.topology().render(dom)))
                    .with("ε'", lhs.clone())
                    .with("f(ε)", rhs.clone())
            });
        }
        report.push(unit);
    }
    Ok(report)
}

/// `f = P(U(q))`: reduce every trace of a state-model valuation.
pub fn stutter_quotient(a: &Valuation<Trace<State>>) -> Valuation<Trace<State>> {
    Valuation::from_tuples(
        a.domain(),
        a.iter().map(|t| stutter_reduce(t).expect("state traces are nonempty")),
    )
}

/// Unit facts of the stuttering quotient as equalities: `f(⊤) = ⊤^rel` and
/// `f(τ) = τ^rel` on every open, plus strict naturality on sampled inputs.
pub fn check_quotient_equalities(
    source: &StateModel,
    target: &crate::models::RelativeModel,
    budget: &Budget,
) -> CheckReport<Trace<State>> {
    let (src, dst) = (source.ts(), target.ts());
    let cmp = source.comparison().join(target.comparison());
    let mut report = CheckReport::new("stutter-quotient", budget.seed, cmp);
    let mut top = LawOutcome::new("image-of-top");
    let mut tau = LawOutcome::new("image-of-tau");
    for &dom in src.topology().opens() {
        let (ft, fs) = (stutter_quotient(&source.par().neutral_unchecked(dom)), target.par().neutral_unchecked(dom));
        top.record(equal_under(dst, &ft, &fs, cmp), || {
            Counterexample::new("f(⊤) != ⊤^rel").with("f(⊤)", ft.clone()).with("⊤^rel", fs.clone())
        });
        let (fu, ru) = (stutter_quotient(&source.seq().neutral_unchecked(dom)), target.seq().neutral_unchecked(dom));
        tau.record(equal_under(dst, &fu, &ru, cmp), || {
            Counterexample::new("f(τ) != τ^rel").with("f(τ)", fu.clone()).with("τ^rel", ru.clone())
        });
    }
    report.push(top);
    report.push(tau);
    report.push(run_law(src, budget, "stutter-quotient", "strict-naturality", |s| {
        let a = s.valuation();
        let c = s.subopen(a.domain());
        let lhs = restrict_unchecked(dst, &stutter_quotient(&a), c);
        let rhs = stutter_quotient(&restrict_unchecked(src, &a, c));
        verdict(lhs == rhs, || Counterexample::new("f(a)|C != f(a|C)").with("a", a.clone()))
    }));
    report
}

/// The identity candidate on a CVA.
pub fn identity_map<T: Clone>(a: &Valuation<T>) -> Valuation<T> {
    a.clone()
}

fn action_transitions(a: &Valuation<Trace<State>>) -> Valuation<Trace<Event>> {
    Valuation::from_tuples(
        a.domain(),
        a.iter().map(|t| t.windows(2).map(|w| Event::new(w[0], w[1])).collect::<Trace<Event>>()),
    )
}

fn collapse_to_iota(a: &Valuation<Trace<State>>) -> Valuation<Trace<Event>> {
    if a.is_empty() {
        Valuation::empty(a.domain())
    } else {
        Valuation::from_tuples(a.domain(), [Trace::empty()])
    }
}

fn empty_map(a: &Valuation<Trace<State>>) -> Valuation<Trace<Event>> {
    Valuation::empty(a.domain())
}

/// The two obstructions to strong morphisms between `Γ` and `Σ`, on a
/// one-atom space: (i) `Γ` has one neutral element for both operators while
/// `Σ` has two distinct ones; (ii) a unital, monotone map `Σ → Γ` sends every
/// valuation below `ι`. Part (ii) is checked exhaustively for a few candidate
/// maps; maps that are not unital are reported as vacuous cases.
pub fn check_gamma_sigma_obstruction(values: &ValueSet, cap: usize) -> Result<CheckReport<Trace<State>>> {
    let topology = Arc::new(discrete_topology(GroundSet::new(["x"])?));
    let gamma: ActionModel = action_model(topology.clone(), values, cap)?;
    let sigma: StateModel = state_model(topology.clone(), values, cap)?;
    let mut report = CheckReport::new("gamma-sigma-obstruction", 0, sigma.comparison());

    let mut coincide = LawOutcome::new("gamma-neutrals-coincide");
    let mut differ = LawOutcome::new("sigma-neutrals-differ");
    let mut below_top = LawOutcome::new("sigma-below-top");
    for &dom in topology.opens() {
        let same = gamma.seq().neutral_unchecked(dom) == gamma.par().neutral_unchecked(dom);
        coincide.record(same, || Counterexample::new("skip != run in Γ"));
        let (tau, top) = (sigma.seq().neutral_unchecked(dom), sigma.par().neutral_unchecked(dom));
        differ.record(tau != top, || Counterexample::new("τ = ⊤ in Σ").with("τ", tau.clone()));
        for a in all_valuations(dom, &sigma.ts().universe(dom)) {
            below_top.record(gc_leq(sigma.ts(), &a, &top), || Counterexample::new("a ⋠ ⊤").with("a", a.clone()));
        }
    }
    report.push(coincide);
    report.push(differ);
    report.push(below_top);

    type Candidate = fn(&Valuation<Trace<State>>) -> Valuation<Trace<Event>>;
    let candidates: [(&str, Candidate); 3] =
        [("collapse-to-iota", collapse_to_iota), ("transitions", action_transitions), ("empty", empty_map)];
    let mut collapse = LawOutcome::new("unital-maps-land-below-iota");
    for (name, f) in candidates {
        let unital = topology.opens().iter().all(|&dom| {
            let iota = gamma.par().neutral_unchecked(dom);
            f(&sigma.par().neutral_unchecked(dom)) == iota && f(&sigma.seq().neutral_unchecked(dom)) == iota
        });
        if !unital {
            collapse.skipped += 1;
            continue;
        }
        for &dom in topology.opens() {
            let iota = gamma.par().neutral_unchecked(dom);
            for a in all_valuations(dom, &sigma.ts().universe(dom)) {
                let fa = f(&a);
                collapse.record(fa.content().is_subset(iota.content()), || {
                    Counterexample::new(format!("unital candidate `{name}` leaves ι")).with("a", a.clone())
                });
            }
        }
    }
    report.push(collapse);
    Ok(report)
}

/// Searches for `a, b` with `f(a) ∧^rel f(b) ⋠ f(a ∧ b)`, the failure of
/// lax multiplicativity of the stuttering quotient.
pub fn find_lax_quotient_violation(
    source: &StateModel,
    target: &crate::models::RelativeModel,
    budget: &Budget,
) -> Option<(Valuation<Trace<State>>, Valuation<Trace<State>>)> {
    let src = source.ts();
    let cmp = source.comparison().join(target.comparison());
    let mut s = crate::sample::Sampler::new(src, budget, "stutter-quotient/lax-witness");
    for _ in 0..budget.samples.saturating_mul(4) {
        let (a, b) = (s.valuation(), s.valuation());
        let Some(ab) = source.par().try_combine(&a, &b, budget.max_work) else { continue };
        let Some(lhs) = target.par().try_combine(&stutter_quotient(&a), &stutter_quotient(&b), budget.max_work)
        else {
            continue;
        };
        if !gc_leq_under(target.ts(), &lhs, &stutter_quotient(&ab), cmp) {
            return Some((a, b));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::relative_model;
    use crate::topology::OpenSet;

    fn space(atoms: &[&str]) -> Arc<crate::topology::Topology> {
        Arc::new(discrete_topology(GroundSet::new(atoms.iter().copied()).unwrap()))
    }

    #[test]
    fn identity_is_strong() {
        let two = ValueSet::numeric(2).unwrap();
        let m = state_model(space(&["x", "y"]), &two, 3).unwrap();
        let map = identity_map::<Trace<State>>;
        let cand = MorphismCandidate { name: "identity".into(), source: &m, target: &m, map: &map };
        let r = check_morphism(&cand, Mode::Strong, Level::Cva, &Budget::default().with_samples(50)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn quotient_is_colax_not_lax() {
        let two = ValueSet::numeric(2).unwrap();
        let t = space(&["x", "y"]);
        let sigma = state_model(t.clone(), &two, 3).unwrap();
        let rel = relative_model(t, &two, 3).unwrap();
        let map = stutter_quotient;
        let cand = MorphismCandidate { name: "stutter-quotient".into(), source: &sigma, target: &rel, map: &map };
        let budget = Budget::default().with_samples(100);
        let colax = check_morphism(&cand, Mode::Colax, Level::Cva, &budget).unwrap();
        assert!(colax.passed(), "{colax:?}");
        assert!(check_quotient_equalities(&sigma, &rel, &budget).passed());
        assert!(find_lax_quotient_violation(&sigma, &rel, &budget).is_some());
    }

    #[test]
    fn reduction_fixes_stutter_free_valuations() {
        let w = |bits: &[u8]| bits.iter().map(|&b| State::from_values([(0, b)])).collect::<Trace<State>>();
        let a = Valuation::from_tuples(OpenSet::singleton(0), [w(&[0, 1]), w(&[1])]);
        assert_eq!(stutter_quotient(&a), a);
        let b = Valuation::from_tuples(OpenSet::singleton(0), [w(&[0, 0, 1])]);
        assert_eq!(stutter_quotient(&b), Valuation::from_tuples(OpenSet::singleton(0), [w(&[0, 1])]));
    }

    #[test]
    fn obstruction_facts() {
        let r = check_gamma_sigma_obstruction(&ValueSet::numeric(2).unwrap(), 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.law("unital-maps-land-below-iota").unwrap().cases > 0);
    }
}
