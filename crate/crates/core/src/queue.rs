//! Indirect priority queue over a reference array of per-list intervals.
//!
//! The queue holds a set of list indices and orders them by the interval
//! currently stored in the corresponding reference slot. Only the slot of
//! the top index may change between notifications; [`IndirectQueue::change`]
//! restores the order after such a change.
//!
//! The backing structure is a winner tree with one leaf per list: every
//! mutation replays a single leaf-to-root path and performs at most
//! `⌈log2 m⌉` comparisons. Ties are won by the smaller list index.

use std::marker::PhantomData;

use crate::interval::IntervalOrder;
use crate::stream::IntervalStream;
use crate::{Error, Interval, Position};

/// Operation counts gathered by a queue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueueStats {
    pub mutations: u64,
    pub comparisons: u64,
    pub max_comparisons_per_mutation: u64,
}

pub struct IndirectQueue<O> {
    reference: Vec<Interval>,
    /// Winner tree in heap layout; node 1 is the root, leaf `i` sits at
    /// `leaves + i`. `None` marks an empty subtree.
    tree: Vec<Option<u32>>,
    leaves: usize,
    len: usize,
    right_extreme: Position,
    stats: QueueStats,
    _order: PhantomData<O>,
}

impl<O: IntervalOrder> IndirectQueue<O> {
    /// An empty queue over `m` reference slots, all holding `[-inf..-inf]`.
    pub fn new(m: usize) -> IndirectQueue<O> {
        let leaves = m.max(1).next_power_of_two();
        IndirectQueue {
            reference: vec![Interval::NEG_INF; m],
            tree: vec![None; 2 * leaves],
            leaves,
            len: 0,
            right_extreme: Position::NegInf,
            stats: QueueStats::default(),
            _order: PhantomData,
        }
    }

    /// Number of reference slots.
    pub fn capacity(&self) -> usize {
        self.reference.len()
    }

    pub fn reference(&self) -> &[Interval] {
        &self.reference
    }

    /// Stores `interval` in slot `i` and inserts `i` into the queue.
    ///
    /// Panics if `i` is out of range or already enqueued.
    pub fn enqueue(&mut self, i: usize, interval: Interval) {
        assert!(self.tree[self.leaves + i].is_none(), "index {i} already enqueued");
        self.reference[i] = interval;
        self.right_extreme = self.right_extreme.max(interval.right());
        self.tree[self.leaves + i] = Some(i as u32);
        self.len += 1;
        self.replay(i);
    }

    pub fn top_index(&self) -> Result<usize, Error> {
        self.tree[1].map(|i| i as usize).ok_or(Error::EmptyQueue)
    }

    pub fn top(&self) -> Result<Interval, Error> {
        self.top_index().map(|i| self.reference[i])
    }

    /// Removes the top index and returns it.
    pub fn dequeue(&mut self) -> Result<usize, Error> {
        let i = self.top_index()?;
        self.tree[self.leaves + i] = None;
        self.len -= 1;
        self.replay(i);
        Ok(i)
    }

    /// Restores the queue order after the top slot changed.
    pub fn change(&mut self) -> Result<(), Error> {
        let i = self.top_index()?;
        self.replay(i);
        Ok(())
    }

    /// Overwrites the top slot and notifies the queue.
    pub fn update_top(&mut self, interval: Interval) -> Result<(), Error> {
        let i = self.top_index()?;
        self.reference[i] = interval;
        self.right_extreme = self.right_extreme.max(interval.right());
        self.replay(i);
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Whether every list index is enqueued.
    pub fn is_full(&self) -> bool {
        self.len == self.reference.len()
    }

    /// Largest right extreme ever stored in the reference array.
    pub fn right_extreme(&self) -> Position {
        self.right_extreme
    }

    /// `[left(top)..right_extreme]`.
    pub fn span(&self) -> Result<Interval, Error> {
        let top = self.top()?;
        Interval::try_new(top.left(), self.right_extreme)
    }

    /// Replaces the top slot with the next interval of its list, or dequeues
    /// the top index if that list is exhausted. Returns whether the slot
    /// was refilled.
    pub fn advance<S: IntervalStream>(&mut self, inputs: &mut [S]) -> bool {
        let i = self.top_index().expect("advance on an empty queue");
        match inputs[i].next_interval() {
            Some(next) => {
                self.reference[i] = next;
                self.right_extreme = self.right_extreme.max(next.right());
                self.replay(i);
                true
            }
            None => {
                self.tree[self.leaves + i] = None;
                self.len -= 1;
                self.replay(i);
                false
            }
        }
    }

    pub fn stats(&self) -> QueueStats {
        self.stats
    }

    /// Interval slots plus tree nodes held by the queue.
    pub fn footprint(&self) -> usize {
        self.reference.len() + self.tree.len()
    }

    fn replay(&mut self, leaf: usize) {
        let mut node = (self.leaves + leaf) / 2;
        let mut comparisons = 0u64;
        while node >= 1 {
            let winner = match (self.tree[2 * node], self.tree[2 * node + 1]) {
                (Some(a), Some(b)) => {
                    comparisons += 1;
                    let ord = O::compare(&self.reference[a as usize], &self.reference[b as usize]);
                    if ord.is_gt() {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
                (a, b) => a.or(b),
            };
            self.tree[node] = winner;
            node /= 2;
        }
        self.stats.mutations += 1;
        self.stats.comparisons += comparisons;
        self.stats.max_comparisons_per_mutation = self.stats.max_comparisons_per_mutation.max(comparisons);
    }
}

/// Linear-scan indirect queue with the same contract: O(1) mutations, O(m)
/// top retrieval. Kept as a reference for differential testing.
pub struct ScanQueue<O> {
    reference: Vec<Interval>,
    present: Vec<bool>,
    len: usize,
    _order: PhantomData<O>,
}

impl<O: IntervalOrder> ScanQueue<O> {
    pub fn new(m: usize) -> ScanQueue<O> {
        ScanQueue {
            reference: vec![Interval::NEG_INF; m],
            present: vec![false; m],
            len: 0,
            _order: PhantomData,
        }
    }

    pub fn enqueue(&mut self, i: usize, interval: Interval) {
        assert!(!self.present[i], "index {i} already enqueued");
        self.reference[i] = interval;
        self.present[i] = true;
        self.len += 1;
    }

    pub fn top_index(&self) -> Result<usize, Error> {
        let mut best: Option<usize> = None;
        for i in (0..self.reference.len()).filter(|&i| self.present[i]) {
            best = match best {
                Some(b) if O::compare(&self.reference[i], &self.reference[b]).is_lt() => Some(i),
                Some(b) => Some(b),
                None => Some(i),
            };
        }
        best.ok_or(Error::EmptyQueue)
    }

    pub fn top(&self) -> Result<Interval, Error> {
        self.top_index().map(|i| self.reference[i])
    }

    pub fn dequeue(&mut self) -> Result<usize, Error> {
        let i = self.top_index()?;
        self.present[i] = false;
        self.len -= 1;
        Ok(i)
    }

    pub fn update_top(&mut self, interval: Interval) -> Result<(), Error> {
        let i = self.top_index()?;
        self.reference[i] = interval;
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{EndOrder, StartOrder};
    use crate::stream::VecStream;
    use proptest::prelude::*;

    fn iv(l: i64, r: i64) -> Interval {
        Interval::new(l, r)
    }

    #[test]
    fn start_order_top_prefers_prolonging_interval() {
        let mut q = IndirectQueue::<StartOrder>::new(3);
        q.enqueue(0, iv(0, 0));
        q.enqueue(1, iv(1, 1));
        q.enqueue(2, iv(0, 2));
        assert_eq!(q.top_index(), Ok(2));
    }

    #[test]
    fn ties_go_to_smaller_index() {
        let mut q = IndirectQueue::<StartOrder>::new(3);
        q.enqueue(2, iv(0, 0));
        q.enqueue(1, iv(1, 1));
        q.enqueue(0, iv(0, 0));
        assert_eq!(q.top_index(), Ok(0));
    }

    #[test]
    fn single_and_empty() {
        let mut q = IndirectQueue::<EndOrder>::new(4);
        assert_eq!(q.top(), Err(Error::EmptyQueue));
        q.enqueue(3, iv(5, 6));
        assert_eq!(q.top_index(), Ok(3));
        assert_eq!(q.dequeue(), Ok(3));
        assert_eq!(q.size(), 0);
        assert_eq!(q.top_index(), Err(Error::EmptyQueue));
        assert_eq!(q.dequeue(), Err(Error::EmptyQueue));
        assert_eq!(q.span(), Err(Error::EmptyQueue));
    }

    #[test]
    fn dequeue_everything() {
        let mut q = IndirectQueue::<EndOrder>::new(5);
        for i in 0..5 {
            q.enqueue(i, iv(i as i64, i as i64 + 2));
        }
        let order: Vec<usize> = (0..5).map(|_| q.dequeue().unwrap()).collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
        assert!(q.is_empty());
        assert_eq!(q.top(), Err(Error::EmptyQueue));
    }

    #[test]
    fn advance_refills_then_dequeues() {
        let mut inputs = vec![VecStream::new(vec![iv(5, 5)]), VecStream::new(vec![])];
        let mut q = IndirectQueue::<EndOrder>::new(2);
        q.enqueue(0, iv(0, 0));
        q.enqueue(1, iv(1, 1));
        assert_eq!(q.top_index(), Ok(0));
        assert!(q.advance(&mut inputs));
        assert_eq!(q.reference()[0], iv(5, 5));
        assert_eq!(q.size(), 2);
        assert_eq!(q.top_index(), Ok(1));
        assert!(!q.advance(&mut inputs));
        assert_eq!(q.size(), 1);
        assert_eq!(q.right_extreme(), Position::Finite(5));
    }

    #[test]
    fn spans() {
        let mut q = IndirectQueue::<StartOrder>::new(3);
        q.enqueue(0, iv(0, 0));
        q.enqueue(1, iv(1, 1));
        q.enqueue(2, iv(0, 0));
        assert_eq!(q.span(), Ok(iv(0, 1)));

        let mut q = IndirectQueue::<StartOrder>::new(1);
        q.enqueue(0, iv(3, 7));
        assert_eq!(q.span(), Ok(iv(3, 7)));

        let mut q = IndirectQueue::<StartOrder>::new(2);
        q.enqueue(0, iv(2, 2));
        q.enqueue(1, iv(1, 1));
        assert_eq!(q.span(), Ok(iv(1, 2)));
    }

    #[derive(Clone, Debug)]
    enum Step {
        Bump(i64, i64),
        Dequeue,
    }

    fn arb_steps() -> impl Strategy<Value = (Vec<(i64, i64)>, Vec<Step>)> {
        let init = prop::collection::vec((0i64..20, 0i64..5), 1..12);
        let steps = prop::collection::vec(
            prop_oneof![
                4 => (0i64..6, 0i64..5).prop_map(|(d, len)| Step::Bump(d, len)),
                1 => Just(Step::Dequeue),
            ],
            0..60,
        );
        (init, steps)
    }

    fn differential<O: IntervalOrder>(init: &[(i64, i64)], steps: &[Step]) {
        let m = init.len();
        let mut heap = IndirectQueue::<O>::new(m);
        let mut scan = ScanQueue::<O>::new(m);
        for (i, &(l, len)) in init.iter().enumerate() {
            heap.enqueue(i, iv(l, l + len));
            scan.enqueue(i, iv(l, l + len));
        }
        let bound = (m as f64).log2().ceil() as u64;
        for step in steps {
            assert_eq!(heap.top_index(), scan.top_index());
            if heap.is_empty() {
                break;
            }
            match *step {
                Step::Bump(d, len) => {
                    let top = heap.top().unwrap();
                    let l = top.left().finite().unwrap() + d;
                    heap.update_top(iv(l, l + len)).unwrap();
                    scan.update_top(iv(l, l + len)).unwrap();
                }
                Step::Dequeue => {
                    assert_eq!(heap.dequeue(), scan.dequeue());
                }
            }
            assert_eq!(heap.size(), scan.size());
        }
        assert_eq!(heap.top_index(), scan.top_index());
        assert!(heap.stats().max_comparisons_per_mutation <= bound);
    }

    proptest! {
        #[test]
        fn matches_linear_scan((init, steps) in arb_steps()) {
            differential::<EndOrder>(&init, &steps);
            differential::<StartOrder>(&init, &steps);
        }

        #[test]
        fn start_order_top_is_monotone(lists in prop::collection::vec(
            prop::collection::btree_set(0i64..40, 1..8), 1..6)) {
            let mut inputs: Vec<VecStream> = lists
                .iter()
                .map(|s| VecStream::new(s.iter().map(|&p| iv(p, p)).collect()))
                .collect();
            let mut q = IndirectQueue::<StartOrder>::new(inputs.len());
            for (i, s) in inputs.iter_mut().enumerate() {
                let first = s.next_interval().unwrap();
                q.enqueue(i, first);
            }
            let mut last = q.top().unwrap();
            while !q.is_empty() {
                let span = q.span().unwrap();
                for (i, slot) in q.reference().iter().enumerate() {
                    if !lists[i].is_empty() && q.tree[q.leaves + i].is_some() {
                        prop_assert!(span.contains(slot));
                    }
                }
                prop_assert_eq!(span.left(), q.top().unwrap().left());
                q.advance(&mut inputs);
                if let Ok(top) = q.top() {
                    prop_assert!(crate::interval::cmp_start(&last, &top).is_le());
                    last = top;
                }
            }
        }
    }
}
