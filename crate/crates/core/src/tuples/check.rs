use alloc::format;
use alloc::vec::Vec;

use super::TupleSystem;
use crate::report::{Budget, CheckReport, Comparison, Counterexample, LawOutcome};
use crate::sample::Sampler;
use crate::topology::{inclusions, OpenSet};
use crate::valuation::Valuation;

fn single<S: TupleSystem>(dom: OpenSet, t: &S::Tuple) -> Valuation<S::Tuple> {
    Valuation::from_tuples(dom, [t.clone()])
}

/// Tuples of `universe(dom)`: all of them when there are at most `limit`,
/// otherwise `limit` draws.
fn tuples_on<S: TupleSystem>(s: &mut Sampler<'_, S>, ts: &S, dom: OpenSet, limit: usize) -> Vec<S::Tuple> {
    let all = ts.universe(dom);
    if all.len() <= limit {
        return all;
    }
    (0..limit).map(|_| s.tuple_on(dom)).collect()
}

/// Checks the presheaf laws, flasqueness and binary gluing on the capped
/// universes. Liftings are searched per length stratum; gluings among lifts
/// of length at most `λ(a) + λ(b)`.
pub fn check_tuple_system<S: TupleSystem>(ts: &S, budget: &Budget) -> CheckReport<S::Tuple> {
    let topo = ts.topology();
    let incl = inclusions(topo);
    let per_open = budget.samples.max(1);
    let mut report = CheckReport::new(ts.name(), budget.seed, Comparison::Truncated(ts.cap()));

    let mut s = Sampler::new(ts, budget, "tuple-system/functoriality");
    let mut functor = LawOutcome::new("functoriality");
    for &a in topo.opens() {
        for t in tuples_on(&mut s, ts, a, per_open) {
            functor.record(ts.restrict(&t, a) == t, || {
                Counterexample::new("restriction to own domain is not the identity").with("t", single::<S>(a, &t))
            });
            for &(b, a2) in &incl {
                if a2 != a {
                    continue;
                }
                let tb = ts.restrict(&t, b);
                for &(c, b2) in &incl {
                    if b2 != b {
                        continue;
                    }
                    let ok = ts.restrict(&tb, c) == ts.restrict(&t, c);
                    functor.record(ok, || {
                        Counterexample::new(format!(
                            "restricting via {} differs from restricting directly to {}",
                            topo.render(b),
                            topo.render(c)
                        ))
                        .with("t", single::<S>(a, &t))
                    });
                }
            }
        }
    }
    report.push(functor);

    let mut s = Sampler::new(ts, budget, "tuple-system/flasque");
    let mut flasque = LawOutcome::new("flasque");
    for &(b, a) in &incl {
        for t in tuples_on(&mut s, ts, b, per_open) {
            if ts.lift_count(&t, b, a) > budget.max_work {
                flasque.skipped += 1;
                continue;
            }
            let lifts = ts.lifts_within(&t, b, a, ts.length(&t));
            let ok = !lifts.is_empty() && lifts.iter().all(|l| ts.restrict(l, b) == t);
            flasque.record(ok, || {
                Counterexample::new(format!("no lifting from {} to {}", topo.render(b), topo.render(a)))
                    .with("t", single::<S>(b, &t))
            });
        }
    }
    report.push(flasque);

    let mut s = Sampler::new(ts, budget, "tuple-system/gluing");
    let mut gluing = LawOutcome::new("binary-gluing");
    for &a in topo.opens() {
        for &b in topo.opens() {
            let (i, u) = (a.intersection(b), a.union(b));
            for ta in tuples_on(&mut s, ts, a, per_open) {
                let shared = ts.restrict(&ta, i);
                if ts.lift_count(&shared, i, b) > budget.max_work {
                    gluing.skipped += 1;
                    continue;
                }
                let partners = ts.lifts(&shared, i, b);
                if partners.is_empty() {
                    continue;
                }
                let tb = partners[s.index(partners.len())].clone();
                let bound = ts.length(&ta) + ts.length(&tb);
                if ts.lift_count(&ta, a, u) > budget.max_work {
                    gluing.skipped += 1;
                    continue;
                }
                let ok = ts.lifts_within(&ta, a, u, bound).iter().any(|c| ts.restrict(c, b) == tb);
                gluing.record(ok, || {
                    Counterexample::new(format!("no common lifting on {}", topo.render(u)))
                        .with("a", single::<S>(a, &ta))
                        .with("b", single::<S>(b, &tb))
                });
            }
        }
    }
    report.push(gluing);
    report
}
