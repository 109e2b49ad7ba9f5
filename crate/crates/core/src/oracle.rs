//! Brute-force reference semantics and read-bound checks.
//!
//! Everything here works on materialized sets and enumerates tuples
//! directly from the operator definitions. Nothing is lazy and nothing is
//! shared with the operator implementations.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::interval::cmp_end;
use crate::stream::RhoProfile;
use crate::{Error, Interval, OperatorKind};

/// The containment-minimal elements of `set`, deduplicated, in natural order.
pub fn minimal_filter(set: &[Interval]) -> Vec<Interval> {
    let unique: BTreeSet<(i64, i64)> = set.iter().map(key).collect();
    let unique: Vec<Interval> = unique.into_iter().map(|(l, r)| Interval::new(l, r)).collect();
    unique
        .iter()
        .filter(|a| !unique.iter().any(|b| b != *a && a.contains(b)))
        .copied()
        .collect()
}

fn key(iv: &Interval) -> (i64, i64) {
    (
        iv.left().finite().expect("finite interval"),
        iv.right().finite().expect("finite interval"),
    )
}

/// Whether the intervals are pairwise incomparable under containment.
pub fn is_antichain(set: &[Interval]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, a)| set.iter().enumerate().all(|(j, b)| i == j || !a.contains(b)))
}

pub fn oracle_or(inputs: &[Vec<Interval>]) -> Vec<Interval> {
    let union: Vec<Interval> = inputs.iter().flatten().copied().collect();
    minimal_filter(&union)
}

/// Calls `visit` with every tuple of `inputs` (one interval per list).
fn for_each_tuple(inputs: &[Vec<Interval>], visit: &mut dyn FnMut(&[Interval])) {
    fn rec(inputs: &[Vec<Interval>], tuple: &mut Vec<Interval>, visit: &mut dyn FnMut(&[Interval])) {
        if tuple.len() == inputs.len() {
            visit(tuple);
            return;
        }
        for iv in &inputs[tuple.len()] {
            tuple.push(*iv);
            rec(inputs, tuple, visit);
            tuple.pop();
        }
    }
    if inputs.is_empty() {
        return;
    }
    rec(inputs, &mut Vec::with_capacity(inputs.len()), visit);
}

fn tuple_span(tuple: &[Interval]) -> Interval {
    tuple.iter().skip(1).fold(tuple[0], |acc, iv| acc.span(iv))
}

fn is_chain(tuple: &[Interval]) -> bool {
    tuple.windows(2).all(|w| w[0].strictly_before(&w[1]))
}

fn is_concatenation(tuple: &[Interval]) -> bool {
    tuple.windows(2).all(|w| w[0].right().successor() == Some(w[1].left()))
}

pub fn oracle_and(inputs: &[Vec<Interval>]) -> Vec<Interval> {
    let mut spans = BTreeSet::new();
    for_each_tuple(inputs, &mut |t| {
        spans.insert(key(&tuple_span(t)));
    });
    minimal_filter(&spans.into_iter().map(|(l, r)| Interval::new(l, r)).collect::<Vec<_>>())
}

pub fn oracle_block(inputs: &[Vec<Interval>]) -> Vec<Interval> {
    let mut out = BTreeSet::new();
    for_each_tuple(inputs, &mut |t| {
        if is_chain(t) && is_concatenation(t) {
            out.insert(key(&tuple_span(t)));
        }
    });
    out.into_iter().map(|(l, r)| Interval::new(l, r)).collect()
}

pub fn oracle_ordered_and(inputs: &[Vec<Interval>]) -> Vec<Interval> {
    let mut spans = BTreeSet::new();
    for_each_tuple(inputs, &mut |t| {
        if is_chain(t) {
            spans.insert(key(&tuple_span(t)));
        }
    });
    minimal_filter(&spans.into_iter().map(|(l, r)| Interval::new(l, r)).collect::<Vec<_>>())
}

pub fn oracle_lowpass(input: &[Interval], k: u64) -> Vec<Interval> {
    input.iter().filter(|iv| iv.length() <= k).copied().collect()
}

pub fn oracle_difference(minuend: &[Interval], subtrahend: &[Interval]) -> Vec<Interval> {
    minuend
        .iter()
        .filter(|i| !subtrahend.iter().any(|j| i.contains(j)))
        .copied()
        .collect()
}

/// Dispatches to the oracle for `kind`.
pub fn oracle(kind: OperatorKind, inputs: &[Vec<Interval>]) -> Vec<Interval> {
    match kind {
        OperatorKind::Or => oracle_or(inputs),
        OperatorKind::And => oracle_and(inputs),
        OperatorKind::Block => oracle_block(inputs),
        OperatorKind::OrderedAnd => oracle_ordered_and(inputs),
        OperatorKind::LowPass(k) => oracle_lowpass(&inputs[0], k),
        OperatorKind::Difference => oracle_difference(&inputs[0], &inputs[1]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceMode {
    Block,
    Ordered,
}

/// 1-based per-list indices of the leftmost tuple producing `target`.
///
/// A ≪-ordered tuple is leftmost when no list `j > 0` has an interval whose
/// left extreme lies strictly between the right extreme of component `j-1`
/// and the left extreme of component `j`.
pub fn leftmost_sequence(inputs: &[Vec<Interval>], target: Interval, mode: SequenceMode) -> Result<Vec<usize>, Error> {
    let produced = match mode {
        SequenceMode::Block => oracle_block(inputs),
        SequenceMode::Ordered => oracle_ordered_and(inputs),
    };
    if !produced.contains(&target) {
        return Err(Error::NotProducible { target });
    }
    let indexed: Vec<Vec<Indexed>> = inputs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, iv)| (i + 1, *iv)).collect())
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for_each_indexed(&indexed, &mut |t| {
        let ivs: Vec<Interval> = t.iter().map(|(_, iv)| *iv).collect();
        let valid = is_chain(&ivs) && (mode == SequenceMode::Ordered || is_concatenation(&ivs));
        if !valid || tuple_span(&ivs) != target {
            return;
        }
        let leftmost = (1..ivs.len()).all(|j| {
            !inputs[j]
                .iter()
                .any(|iv| ivs[j - 1].right() < iv.left() && iv.left() < ivs[j].left())
        });
        if leftmost {
            found.push(t.iter().map(|(i, _)| *i).collect());
        }
    });
    assert_eq!(found.len(), 1, "leftmost sequence of {target} must be unique");
    Ok(found.pop().unwrap())
}

/// A list element with its 1-based index.
type Indexed = (usize, Interval);

fn for_each_indexed(inputs: &[Vec<Indexed>], visit: &mut dyn FnMut(&[Indexed])) {
    fn rec(inputs: &[Vec<Indexed>], tuple: &mut Vec<Indexed>, visit: &mut dyn FnMut(&[Indexed])) {
        if tuple.len() == inputs.len() {
            visit(tuple);
            return;
        }
        for item in &inputs[tuple.len()] {
            // prune tuples that already break the ≪ chain
            if tuple.last().is_some_and(|(_, prev)| !prev.strictly_before(&item.1)) {
                continue;
            }
            tuple.push(*item);
            rec(inputs, tuple, visit);
            tuple.pop();
        }
    }
    if !inputs.is_empty() {
        rec(inputs, &mut Vec::new(), visit);
    }
}

/// One failed read-bound inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based output number.
    pub output: usize,
    pub list: usize,
    pub bound: &'static str,
    pub observed: u64,
    pub limit: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} i={} {}: observed {} expected {}",
            self.output, self.list, self.bound, self.observed, self.limit
        )
    }
}

#[derive(Clone, Debug)]
pub struct ReadBoundReport {
    pub kind: OperatorKind,
    /// Number of (output, list) pairs examined.
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// AND only: largest `rho - s` seen.
    pub max_slack: u64,
}

impl ReadBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ReadBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {} checked={} violations={}",
            self.kind,
            self.checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn position_of(list: &[Interval], target: &Interval) -> Option<usize> {
    list.iter().position(|iv| iv == target).map(|i| i + 1)
}

/// 1-based index of the first interval of `list` inside `target`.
fn first_inside(list: &[Interval], target: &Interval) -> Option<usize> {
    list.iter().position(|iv| target.contains(iv)).map(|i| i + 1)
}

/// Evaluates every applicable read bound for `kind` on a profile produced
/// over `inputs`.
pub fn check_read_bounds(profile: &RhoProfile, inputs: &[Vec<Interval>], kind: OperatorKind) -> ReadBoundReport {
    let mut report = ReadBoundReport {
        kind,
        checked: 0,
        violations: Vec::new(),
        max_slack: 0,
    };
    let outputs = &profile.outputs;
    let mut fail = |output: usize, list: usize, bound: &'static str, observed: u64, limit: String| {
        report.violations.push(Violation {
            output,
            list,
            bound,
            observed,
            limit,
        })
    };
    let mut checked = 0;
    let mut max_slack = 0;
    for (p, out) in outputs.iter().enumerate() {
        let rho = &profile.rho[p];
        let p1 = p + 1;
        match kind {
            OperatorKind::Or => {
                for (i, list) in inputs.iter().enumerate() {
                    checked += 1;
                    let limit = list.iter().filter(|j| cmp_end(j, out).is_le()).count() as u64 + 1;
                    if rho[i] > limit {
                        fail(p1, i, "rho <= |{J <| o_p}| + 1", rho[i], format!("<= {limit}"));
                    }
                }
            }
            OperatorKind::And => {
                let s: Vec<u64> = inputs
                    .iter()
                    .map(|l| first_inside(l, out).map_or(u64::MAX, |x| x as u64))
                    .collect();
                let exact = inputs
                    .iter()
                    .zip(&s)
                    .any(|(l, &si)| si != u64::MAX && l[si as usize - 1] == *out);
                for i in 0..inputs.len() {
                    checked += 1;
                    if s[i] == u64::MAX {
                        fail(
                            p1,
                            i,
                            "some interval of every list inside o_p",
                            rho[i],
                            "an index".into(),
                        );
                        continue;
                    }
                    if rho[i] < s[i] || rho[i] > s[i] + 1 {
                        fail(
                            p1,
                            i,
                            "s_i <= rho <= s_i + 1",
                            rho[i],
                            format!("in [{}, {}]", s[i], s[i] + 1),
                        );
                    }
                    if exact && rho[i] != s[i] {
                        fail(
                            p1,
                            i,
                            "rho = s_i when o_p is an input interval",
                            rho[i],
                            format!("= {}", s[i]),
                        );
                    }
                    max_slack = max_slack.max(rho[i].saturating_sub(s[i]));
                }
            }
            OperatorKind::Block => match leftmost_sequence(inputs, *out, SequenceMode::Block) {
                Ok(seq) => {
                    for (i, &idx) in seq.iter().enumerate() {
                        checked += 1;
                        if rho[i] != idx as u64 {
                            fail(
                                p1,
                                i,
                                "rho = index of concatenation component",
                                rho[i],
                                format!("= {idx}"),
                            );
                        }
                    }
                }
                Err(_) => fail(p1, 0, "output is a concatenation", 0, out.to_string()),
            },
            OperatorKind::OrderedAnd => {
                let seq = match leftmost_sequence(inputs, *out, SequenceMode::Ordered) {
                    Ok(seq) => seq,
                    Err(_) => {
                        fail(p1, 0, "output is an ordered span", 0, out.to_string());
                        continue;
                    }
                };
                let next = outputs
                    .get(p + 1)
                    .and_then(|o| leftmost_sequence(inputs, *o, SequenceMode::Ordered).ok());
                for i in 0..inputs.len() {
                    checked += 1;
                    if rho[i] < seq[i] as u64 {
                        fail(p1, i, "rho >= leftmost index of o_p", rho[i], format!(">= {}", seq[i]));
                    }
                    if let Some(next) = &next {
                        if rho[i] > next[i] as u64 {
                            fail(
                                p1,
                                i,
                                "rho <= leftmost index of o_{p+1}",
                                rho[i],
                                format!("<= {}", next[i]),
                            );
                        }
                    }
                    if inputs.len() == 2 {
                        let exact = seq[i] as u64 + u64::from(i == 0);
                        if rho[i] != exact {
                            fail(
                                p1,
                                i,
                                "m = 2: rho = leftmost index (+1 on list 0)",
                                rho[i],
                                format!("= {exact}"),
                            );
                        }
                    }
                }
            }
            OperatorKind::LowPass(_) => {
                checked += 1;
                let idx = position_of(&inputs[0], out).unwrap_or(0) as u64;
                if rho[0] != idx {
                    fail(p1, 0, "rho = index of o_p in input", rho[0], format!("= {idx}"));
                }
            }
            OperatorKind::Difference => {
                let (m, s) = (&inputs[0], &inputs[1]);
                checked += 2;
                let idx = position_of(m, out).unwrap_or(0) as u64;
                if rho[0] != idx {
                    fail(p1, 0, "rho_M = index of o_p in M", rho[0], format!("= {idx}"));
                }
                let stop = s
                    .iter()
                    .position(|j| j.left() >= out.left() || j.right() >= out.right())
                    .map_or(s.len() + 1, |x| x + 1) as u64;
                if rho[1] != stop {
                    fail(p1, 1, "rho_S = first l' >= l or r' >= r", rho[1], format!("= {stop}"));
                }
            }
        }
    }
    report.checked = checked;
    report.max_slack = max_slack;
    report
}

/// Random antichains for differential testing.
pub mod gen {
    use super::*;

    /// An antichain of at most `max_len` intervals inside `[0, max_pos)`.
    /// Lengths are drawn up to `max_width`; `max_width == 1` gives singletons.
    pub fn antichain<R: Rng + ?Sized>(rng: &mut R, max_len: usize, max_pos: i64, max_width: i64) -> Vec<Interval> {
        let n = rng.gen_range(0..=max_len * 2);
        let raw: Vec<Interval> = (0..n)
            .map(|_| {
                let l = rng.gen_range(0..max_pos);
                let w = rng.gen_range(1..=max_width);
                Interval::new(l, (l + w - 1).min(max_pos - 1))
            })
            .collect();
        let mut set = minimal_filter(&raw);
        while set.len() > max_len {
            let drop = rng.gen_range(0..set.len());
            set.remove(drop);
        }
        set
    }

    /// Inputs shaped for `kind`: one list for LOWPASS, two for DIFFERENCE,
    /// one to `max_lists` otherwise.
    pub fn inputs<R: Rng + ?Sized>(
        rng: &mut R,
        kind: OperatorKind,
        max_lists: usize,
        max_len: usize,
        max_pos: i64,
    ) -> Vec<Vec<Interval>> {
        let m = match kind {
            OperatorKind::LowPass(_) => 1,
            OperatorKind::Difference => 2,
            _ => rng.gen_range(1..=max_lists),
        };
        let singletons = rng.gen_bool(0.3);
        // narrow ranges make shared and nested intervals likely
        let range = rng.gen_range(4..=max_pos);
        (0..m)
            .map(|_| {
                let width = if singletons { 1 } else { rng.gen_range(1..=6) };
                antichain(rng, max_len, range, width)
            })
            .collect()
    }
}
