use crate::stream::{Fuse, IntervalStream};
use crate::{Interval, Position};

/// Ordered conjunction: minimal intervals spanned by tuples
/// `I_0 ≪ I_1 ≪ … ≪ I_{m-1}`, one interval per input.
///
/// Inputs are aligned greedily. An aligned tuple becomes the candidate
/// `[ℓ'..r']`, and `barrier` is the left extreme of its last component; the
/// candidate is returned as soon as aligning some list either exhausts it or
/// reaches the barrier, since no later alignment can then fit inside it.
pub struct OrderedAnd<S> {
    inputs: Vec<Fuse<S>>,
    current: Vec<Interval>,
    cursor: usize,
    tight_bounds: bool,
    singletons: bool,
    started: bool,
    exhausted: bool,
}

impl<S: IntervalStream> OrderedAnd<S> {
    pub fn new(inputs: Vec<S>) -> OrderedAnd<S> {
        OrderedAnd::with_options(inputs, false, false)
    }

    /// `tight_bounds` lowers the barrier tests by the number of lists that
    /// still have to fit before the barrier (integer positions).
    /// `singletons` drops the right-extreme test inside the alignment loop,
    /// which never fires when every interval is a singleton.
    pub fn with_options(inputs: Vec<S>, tight_bounds: bool, singletons: bool) -> OrderedAnd<S> {
        let m = inputs.len();
        OrderedAnd {
            inputs: inputs.into_iter().map(Fuse::new).collect(),
            current: vec![Interval::NEG_INF; m],
            cursor: 1,
            tight_bounds,
            singletons,
            started: false,
            exhausted: m == 0,
        }
    }

    pub fn state_slots(&self) -> usize {
        // per-list intervals, plus candidate and barrier
        self.current.len() + 2
    }

    fn read(&mut self, i: usize) -> bool {
        match self.inputs[i].next_interval() {
            Some(iv) => {
                if self.singletons {
                    debug_assert_eq!(iv.left(), iv.right(), "singleton mode on a non-singleton input");
                }
                self.current[i] = iv;
                true
            }
            None => {
                self.exhausted = true;
                false
            }
        }
    }

    /// `barrier` lowered by `lists` positions that must still fit before it.
    fn bound(&self, barrier: Position, lists: usize) -> Position {
        if self.tight_bounds {
            barrier.offset(-(lists as i64))
        } else {
            barrier
        }
    }

    fn emit(&mut self, candidate: Interval) -> Option<Interval> {
        if candidate == Interval::POS_INF {
            self.exhausted = true;
            None
        } else {
            Some(candidate)
        }
    }
}

impl<S: IntervalStream> IntervalStream for OrderedAnd<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            if !self.read(0) {
                return None;
            }
        }
        let m = self.current.len();
        let mut candidate = Interval::POS_INF;
        let mut barrier = Position::PosInf;
        loop {
            loop {
                let i = self.cursor;
                // lists i..m-2 must still fit strictly between r_{i-1} and the barrier
                if self.current[i - 1].right() >= self.bound(barrier, m.saturating_sub(i + 1)) {
                    return self.emit(candidate);
                }
                if i == m || self.current[i].left() > self.current[i - 1].right() {
                    break;
                }
                loop {
                    if !self.singletons && self.current[i].right() >= self.bound(barrier, m.saturating_sub(i + 2)) {
                        return self.emit(candidate);
                    }
                    if !self.read(i) {
                        return self.emit(candidate);
                    }
                    if self.current[i].left() > self.current[i - 1].right() {
                        break;
                    }
                }
                self.cursor += 1;
            }
            candidate = Interval::try_new(self.current[0].left(), self.current[m - 1].right()).expect("aligned tuple");
            barrier = self.current[m - 1].left();
            self.cursor = 1;
            if !self.read(0) {
                return self.emit(candidate);
            }
        }
    }
}
