use crate::interval::EndOrder;
use crate::queue::{IndirectQueue, QueueStats};
use crate::stream::{Fuse, IntervalStream};
use crate::Interval;

/// Disjunction: the minimal intervals of the union of the inputs.
///
/// Merges the inputs through an end-ordered queue and skips every queue top
/// that contains the last emitted interval.
pub struct Or<S> {
    inputs: Vec<Fuse<S>>,
    queue: IndirectQueue<EndOrder>,
    last: Interval,
    started: bool,
}

impl<S: IntervalStream> Or<S> {
    pub fn new(inputs: Vec<S>) -> Or<S> {
        let m = inputs.len();
        Or {
            inputs: inputs.into_iter().map(Fuse::new).collect(),
            queue: IndirectQueue::new(m),
            last: Interval::NEG_INF,
            started: false,
        }
    }

    pub fn queue_stats(&self) -> QueueStats {
        self.queue.stats()
    }

    pub fn state_slots(&self) -> usize {
        self.queue.footprint() + 1
    }
}

impl<S: IntervalStream> IntervalStream for Or<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        if !self.started {
            self.started = true;
            for (i, input) in self.inputs.iter_mut().enumerate() {
                if let Some(first) = input.next_interval() {
                    self.queue.enqueue(i, first);
                }
            }
        }
        // The top's right extreme never decreases, so `last ⊆ top` reduces
        // to comparing left extremes.
        while let Ok(top) = self.queue.top() {
            debug_assert_eq!(top.left() <= self.last.left(), top.contains(&self.last));
            if top.left() > self.last.left() {
                break;
            }
            self.queue.advance(&mut self.inputs);
        }
        let top = self.queue.top().ok()?;
        self.last = top;
        Some(top)
    }
}
