use crate::stream::{Fuse, IntervalStream};
use crate::{Interval, Position};

/// Phrase operator: concatenations `I_0 ≪ I_1 ≪ … ≪ I_{m-1}` of one
/// interval per input, each starting right after the previous one ends.
///
/// Requires finite, discrete positions.
pub struct Block<S> {
    inputs: Vec<Fuse<S>>,
    current: Vec<Interval>,
    fast_forward: bool,
    done: bool,
}

impl<S: IntervalStream> Block<S> {
    pub fn new(inputs: Vec<S>) -> Block<S> {
        Block::with_fast_forward(inputs, false)
    }

    /// With `fast_forward`, a failed alignment at list `i` skips first-list
    /// intervals whose right extreme is below `left_i - i`. This is only
    /// sound when every input interval is a singleton.
    pub fn with_fast_forward(inputs: Vec<S>, fast_forward: bool) -> Block<S> {
        let m = inputs.len();
        Block {
            inputs: inputs.into_iter().map(Fuse::new).collect(),
            current: vec![Interval::NEG_INF; m],
            fast_forward,
            done: m == 0,
        }
    }

    pub fn state_slots(&self) -> usize {
        self.current.len()
    }

    fn read(&mut self, i: usize) -> Option<Interval> {
        let next = self.inputs[i].next_interval();
        match next {
            Some(iv) => self.current[i] = iv,
            None => self.done = true,
        }
        next
    }

    fn align(&mut self) -> Option<Interval> {
        let m = self.current.len();
        self.read(0)?;
        let mut i = 1;
        while i < m {
            while self.current[i].left() <= self.current[i - 1].right() {
                self.read(i)?;
            }
            if Some(self.current[i].left()) == self.current[i - 1].right().successor() {
                i += 1;
            } else {
                if self.fast_forward {
                    let target = self.current[i].left().offset(-(i as i64));
                    loop {
                        self.read(0)?;
                        if self.current[0].right() >= target {
                            break;
                        }
                    }
                } else {
                    self.read(0)?;
                }
                i = 1;
            }
        }
        let left: Position = self.current[0].left();
        Some(Interval::try_new(left, self.current[m - 1].right()).expect("aligned block"))
    }
}

impl<S: IntervalStream> IntervalStream for Block<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        if self.done {
            return None;
        }
        self.align()
    }
}
