use crate::interval::StartOrder;
use crate::queue::{IndirectQueue, QueueStats};
use crate::stream::{Fuse, IntervalStream};
use crate::Interval;

/// Conjunction: the minimal intervals spanned by one interval per input.
///
/// Uses a start-ordered queue whose span runs from the top's left extreme to
/// the largest right extreme loaded so far. Output stops for good as soon as
/// the queue is no longer full.
pub struct And<S> {
    inputs: Vec<Fuse<S>>,
    queue: IndirectQueue<StartOrder>,
    last: Interval,
    started: bool,
}

impl<S: IntervalStream> And<S> {
    pub fn new(inputs: Vec<S>) -> And<S> {
        let m = inputs.len();
        And {
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

    fn full(&self) -> bool {
        !self.queue.is_empty() && self.queue.is_full()
    }

    fn span(&self) -> Interval {
        self.queue.span().expect("span of a full queue")
    }
}

impl<S: IntervalStream> IntervalStream for And<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        if !self.started {
            self.started = true;
            for (i, input) in self.inputs.iter_mut().enumerate() {
                if let Some(first) = input.next_interval() {
                    self.queue.enqueue(i, first);
                }
            }
        }
        // Skip spans containing the last output. The right extreme of the
        // queue only grows, so containment means equal left extremes.
        while self.full() {
            let top = self.queue.top().unwrap();
            debug_assert_eq!(top.left() == self.last.left(), self.span().contains(&self.last));
            if top.left() != self.last.left() {
                break;
            }
            self.queue.advance(&mut self.inputs);
        }
        if !self.full() {
            return None;
        }
        loop {
            self.last = self.span();
            if self.last == self.queue.top().unwrap() {
                return Some(self.last);
            }
            self.queue.advance(&mut self.inputs);
            // Left extreme of the top only grows: the new span is inside the
            // candidate exactly when the right extreme did not move.
            if !(self.full() && self.queue.right_extreme() == self.last.right()) {
                break;
            }
            debug_assert!(self.last.contains(&self.span()));
        }
        Some(self.last)
    }
}
