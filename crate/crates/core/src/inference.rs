//! Knowledgebases, joint valuations and inference problems.
//!
//! [`solve_inference`] materialises the joint valuation and restricts it to
//! each query. [`solve_inference_semijoin`] eliminates atoms outside the
//! query one at a time, restricting early by the combination axiom
//! `(φ ⊗ ψ)|_{z ∪ dψ} = φ|_z ⊗ ψ` for `dφ ∩ dψ ⊆ z ⊆ dφ`, which needs a
//! commutative combine.

use alloc::format;
use alloc::vec::Vec;

use crate::cva::Cva;
use crate::error::{Error, Result};
use crate::ova::Ova;
use crate::topology::OpenSet;
use crate::tuples::TupleSystem;
use crate::valuation::{restrict_unchecked, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Seq,
    Par,
}

impl Selector {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "seq" => Ok(Selector::Seq),
            "par" => Ok(Selector::Par),
            _ => Err(Error::config(format!("unknown operator `{s}` (expected seq or par)"))),
        }
    }
}

/// Algebras offering a combine for a [`Selector`].
pub trait Combines<S: TupleSystem> {
    fn select(&self, sel: Selector) -> Result<&Ova<S>>;
}

impl<S: TupleSystem> Combines<S> for Cva<S> {
    fn select(&self, sel: Selector) -> Result<&Ova<S>> {
        Ok(match sel {
            Selector::Seq => self.seq(),
            Selector::Par => self.par(),
        })
    }
}

/// A plain OVA offers its one combine as `par`.
impl<S: TupleSystem> Combines<S> for Ova<S> {
    fn select(&self, sel: Selector) -> Result<&Ova<S>> {
        match sel {
            Selector::Par => Ok(self),
            Selector::Seq => Err(Error::config(format!("`{}` has no sequential combine", self.name()))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knowledgebase<T> {
    pub items: Vec<Valuation<T>>,
    pub selector: Selector,
}

impl<T: Ord> Knowledgebase<T> {
    pub fn new(items: Vec<Valuation<T>>, selector: Selector) -> Self {
        Knowledgebase { items, selector }
    }

    pub fn domain(&self) -> OpenSet {
        self.items.iter().fold(OpenSet::EMPTY, |d, v| d.union(v.domain()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceProblem<T> {
    pub kb: Knowledgebase<T>,
    pub queries: Vec<OpenSet>,
}

impl<T: Ord> InferenceProblem<T> {
    pub fn new(kb: Knowledgebase<T>, queries: Vec<OpenSet>) -> Result<Self> {
        if kb.items.is_empty() {
            return Err(Error::domain("knowledgebase is empty"));
        }
        let dom = kb.domain();
        if let Some(q) = queries.iter().find(|q| !q.is_subset(dom)) {
            return Err(Error::domain(format!("query {q:?} is not covered by the knowledgebase")));
        }
        Ok(InferenceProblem { kb, queries })
    }
}

fn check_queries<S: TupleSystem>(ts: &S, problem: &InferenceProblem<S::Tuple>) -> Result<()> {
    let dom = problem.kb.domain();
    for &q in &problem.queries {
        if !ts.topology().is_open(q) || !q.is_subset(dom) {
            return Err(Error::domain(format!(
                "query {} must be an open subset of {}",
                ts.topology().render(q),
                ts.topology().render(dom)
            )));
        }
    }
    Ok(())
}

/// Left fold of the selected combine over the items, in list order.
pub fn joint_valuation<S: TupleSystem, A: Combines<S>>(
    algebra: &A,
    kb: &Knowledgebase<S::Tuple>,
) -> Result<Valuation<S::Tuple>> {
    let ova = algebra.select(kb.selector)?;
    let (first, rest) = kb.items.split_first().ok_or_else(|| Error::domain("knowledgebase is empty"))?;
    Ok(rest.iter().fold(first.clone(), |acc, v| ova.combine(&acc, v)))
}

/// The reference oracle: restrict the joint valuation to each query.
pub fn solve_inference<S: TupleSystem, A: Combines<S>>(
    algebra: &A,
    problem: &InferenceProblem<S::Tuple>,
) -> Result<Vec<(OpenSet, Valuation<S::Tuple>)>> {
    let ova = algebra.select(problem.kb.selector)?;
    check_queries(ova.ts(), problem)?;
    let joint = joint_valuation(algebra, &problem.kb)?;
    Ok(problem.queries.iter().map(|&q| (q, restrict_unchecked(ova.ts(), &joint, q))).collect())
}

/// Next atom to eliminate: outside `query`, fewest occurrences, then lowest
/// index (atoms are indexed in name order).
fn pick_atom<T: Ord>(factors: &[Valuation<T>], query: OpenSet) -> Option<usize> {
    let dom = factors.iter().fold(OpenSet::EMPTY, |d, v| d.union(v.domain()));
    dom.difference(query)
        .atoms()
        .min_by_key(|&x| (factors.iter().filter(|v| v.domain().contains(x)).count(), x))
}

/// One query by bucket elimination.
pub fn eliminate<S: TupleSystem>(
    ova: &Ova<S>,
    items: &[Valuation<S::Tuple>],
    query: OpenSet,
) -> Result<Valuation<S::Tuple>> {
    if items.is_empty() {
        return Err(Error::domain("knowledgebase is empty"));
    }
    let ts = ova.ts();
    let mut factors: Vec<Valuation<S::Tuple>> = items.to_vec();
    while let Some(x) = pick_atom(&factors, query) {
        let (bucket, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|v| v.domain().contains(x));
        let phi = bucket[1..].iter().fold(bucket[0].clone(), |acc, v| ova.combine(&acc, v));
        let keep = rest.iter().fold(query, |d, v| d.union(v.domain()));
        let z = phi.domain().intersection(keep);
        factors = rest;
        factors.push(restrict_unchecked(ts, &phi, z));
    }
    let joint = factors[1..].iter().fold(factors[0].clone(), |acc, v| ova.combine(&acc, v));
    Ok(restrict_unchecked(ts, &joint, query))
}

/// Semi-join optimised inference; parallel (commutative) combine only.
pub fn solve_inference_semijoin<S: TupleSystem, A: Combines<S>>(
    algebra: &A,
    problem: &InferenceProblem<S::Tuple>,
) -> Result<Vec<(OpenSet, Valuation<S::Tuple>)>> {
    if problem.kb.selector == Selector::Seq {
        return Err(Error::Unsupported("semi-join inference needs the commutative parallel combine".into()));
    }
    let ova = algebra.select(problem.kb.selector)?;
    if !ova.is_commutative() {
        return Err(Error::Unsupported(format!("`{}` is not commutative", ova.name())));
    }
    check_queries(ova.ts(), problem)?;
    problem.queries.iter().map(|&q| Ok((q, eliminate(ova, &problem.kb.items, q)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{db_model, state_model};
    use crate::topology::{discrete_topology, triangle_network, GroundSet};
    use crate::tuples::{State, ValueSet};
    use alloc::sync::Arc;

    fn two() -> ValueSet {
        ValueSet::numeric(2).unwrap()
    }

    #[test]
    fn empty_kb_is_rejected() {
        let db = db_model(Arc::new(triangle_network()), &two()).unwrap();
        let kb = Knowledgebase::new(Vec::new(), Selector::Par);
        assert!(joint_valuation(&db, &kb).is_err());
        assert!(InferenceProblem::new(kb, alloc::vec![]).is_err());
    }

    #[test]
    fn single_item_joint_is_the_item() {
        let db = db_model(Arc::new(triangle_network()), &two()).unwrap();
        let dom = db.ts().topology().open_set(["d", "a", "e"]).unwrap();
        let item = Valuation::from_tuples(dom, [State::HEART]);
        let kb = Knowledgebase::new(alloc::vec![item.clone()], Selector::Par);
        assert_eq!(joint_valuation(&db, &kb).unwrap(), item);
    }

    #[test]
    fn seq_selector_is_unsupported_for_semijoin() {
        let m = state_model(Arc::new(discrete_topology(GroundSet::new(["x"]).unwrap())), &two(), 2).unwrap();
        let x = OpenSet::singleton(0);
        let kb = Knowledgebase::new(alloc::vec![m.skip(x).unwrap()], Selector::Seq);
        let p = InferenceProblem::new(kb, alloc::vec![x]).unwrap();
        assert!(matches!(solve_inference_semijoin(&m, &p), Err(Error::Unsupported(_))));
        assert!(solve_inference(&m, &p).is_ok());
    }

    #[test]
    fn uncovered_query_is_rejected() {
        let t = Arc::new(discrete_topology(GroundSet::new(["x", "y"]).unwrap()));
        let _db = db_model(t, &two()).unwrap();
        let kb = Knowledgebase::new(alloc::vec![Valuation::from_tuples(OpenSet::singleton(0), [State::HEART])], Selector::Par);
        assert!(InferenceProblem::new(kb, alloc::vec![OpenSet::singleton(1)]).is_err());
    }
}
