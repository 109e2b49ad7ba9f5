//! Compiling queries to operator trees over one document.

use minterval::stream::{materialize, CountingStream, PositionStream, ReadCounter, VecStream};
use minterval::{BoxStream, Interval, IntervalStream, OperatorKind, Options, RhoProfile};

use crate::index::{DocId, PositionalIndex};
use crate::query::Query;

/// Documents that may have witnesses for `query`, sorted. Never misses a
/// document with a nonempty result.
pub fn candidate_docs(query: &Query, index: &PositionalIndex) -> Vec<DocId> {
    match query {
        Query::Term(t) => index.postings(t).iter().map(|(d, _)| *d).collect(),
        Query::Or(c) => {
            let mut docs: Vec<DocId> = c.iter().flat_map(|q| candidate_docs(q, index)).collect();
            docs.sort_unstable();
            docs.dedup();
            docs
        }
        Query::And(c) | Query::Block(c) | Query::OrderedAnd(c) => {
            let mut sets = c.iter().map(|q| candidate_docs(q, index));
            let first = sets.next().unwrap_or_default();
            sets.fold(first, |acc, next| {
                acc.into_iter().filter(|d| next.binary_search(d).is_ok()).collect()
            })
        }
        Query::LowPass(q, _) => candidate_docs(q, index),
        Query::Minus(a, _) => candidate_docs(a, index),
    }
}

fn kind(query: &Query) -> Option<(OperatorKind, Vec<&Query>)> {
    Some(match query {
        Query::Term(_) => return None,
        Query::Or(c) => (OperatorKind::Or, c.iter().collect()),
        Query::And(c) => (OperatorKind::And, c.iter().collect()),
        Query::Block(c) => (OperatorKind::Block, c.iter().collect()),
        Query::OrderedAnd(c) => (OperatorKind::OrderedAnd, c.iter().collect()),
        Query::LowPass(q, k) => (OperatorKind::LowPass(*k), vec![&**q]),
        Query::Minus(a, b) => (OperatorKind::Difference, vec![&**a, &**b]),
    })
}

fn options(children: &[&Query], fast_paths: bool) -> Options {
    Options {
        fast_paths,
        singleton_inputs: children.iter().all(|q| matches!(q, Query::Term(_))),
    }
}

/// The lazy witness stream of `query` in `doc`. Every operator is wrapped
/// with its emptiness check.
pub fn compile<'a>(query: &'a Query, index: &'a PositionalIndex, doc: DocId, fast_paths: bool) -> BoxStream<'a> {
    match kind(query) {
        None => {
            let Query::Term(t) = query else { unreachable!() };
            let positions = index.positions(t, doc);
            if positions.is_empty() {
                Box::new(VecStream::new(Vec::new()))
            } else {
                Box::new(PositionStream::new(positions))
            }
        }
        Some((op, children)) => {
            let opts = options(&children, fast_paths);
            let inputs = children
                .into_iter()
                .map(|q| compile(q, index, doc, fast_paths))
                .collect();
            op.build_checked(inputs, opts)
        }
    }
}

/// The witnesses of `query` in `doc`, in natural order.
pub fn evaluate(query: &Query, index: &PositionalIndex, doc: DocId) -> Vec<Interval> {
    materialize(compile(query, index, doc, true)).expect("operators emit antichains in natural order")
}

/// Runs `query` on `doc` counting the reads the root operator makes from
/// each of its operands. A bare term is profiled as its own single operand.
pub fn root_profile(query: &Query, index: &PositionalIndex, doc: DocId) -> RhoProfile {
    let (root, children) = match kind(query) {
        Some((op, children)) => (Some(op), children),
        None => (None, vec![query]),
    };
    let mut counters: Vec<ReadCounter> = Vec::new();
    let inputs: Vec<BoxStream<'_>> = children
        .iter()
        .map(|q| {
            let s = CountingStream::new(compile(q, index, doc, true));
            counters.push(s.counter());
            Box::new(s) as BoxStream<'_>
        })
        .collect();
    let mut out: BoxStream<'_> = match root {
        Some(op) => op.build_checked(inputs, options(&children, true)),
        None => inputs.into_iter().next().expect("one operand"),
    };
    let snapshot = |c: &[ReadCounter]| c.iter().map(ReadCounter::get).collect::<Vec<_>>();
    let (mut outputs, mut rho) = (Vec::new(), Vec::new());
    while let Some(iv) = out.next_interval() {
        outputs.push(iv);
        rho.push(snapshot(&counters));
    }
    RhoProfile {
        m: counters.len(),
        rho,
        outputs,
        final_reads: snapshot(&counters),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::query::parse_query;

    fn index() -> PositionalIndex {
        let mut index = PositionalIndex::new();
        index.add_document("a", "x y z x");
        index.add_document("b", "y q");
        index.add_document("c", "z z");
        index
    }

    #[test]
    fn candidates() {
        let idx = index();
        let docs = |q: &str| candidate_docs(&parse_query(q).unwrap(), &idx);
        assert_eq!(docs("y"), [0, 1]);
        assert_eq!(docs("x & q"), [] as [DocId; 0]);
        assert_eq!(docs("y - x"), [0, 1]);
        assert_eq!(docs("q | z"), [0, 1, 2]);
        assert_eq!(docs("(y & z)~1"), [0]);
        assert_eq!(docs("nothing"), [] as [DocId; 0]);
    }

    #[test]
    fn evaluation() {
        let idx = index();
        let eval = |q: &str, d| evaluate(&parse_query(q).unwrap(), &idx, d);
        assert_eq!(eval("x", 0), [Interval::point(0), Interval::point(3)]);
        assert_eq!(eval("\"x y\"", 0), [Interval::new(0, 1)]);
        assert_eq!(eval("x & z", 0), [Interval::new(0, 2), Interval::new(2, 3)]);
        assert_eq!(eval("z < x", 0), [Interval::new(2, 3)]);
        assert_eq!(eval("(x & z)~2", 0), [Interval::new(2, 3)]);
        assert_eq!(eval("x - \"x y\"", 0), [Interval::point(0), Interval::point(3)]);
        assert_eq!(eval("\"x y z\" - y", 0), []);
        assert_eq!(eval("\"x y\" - z", 0), [Interval::new(0, 1)]);
        assert_eq!(eval("x & q", 1), []);
    }

    #[test]
    fn profile_of_root() {
        let idx = index();
        let p = root_profile(&parse_query("x & z").unwrap(), &idx, 0);
        assert_eq!(p.m, 2);
        assert_eq!(p.outputs, [Interval::new(0, 2), Interval::new(2, 3)]);
        let term = root_profile(&parse_query("x").unwrap(), &idx, 0);
        assert_eq!(term.rho, [vec![1], vec![2]]);
        assert_eq!(term.final_reads, [3]);
    }
}
