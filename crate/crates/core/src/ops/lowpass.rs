use crate::stream::{Fuse, IntervalStream};
use crate::Interval;

/// Keeps the input intervals of length at most `k`.
pub struct LowPass<S> {
    input: Fuse<S>,
    k: u64,
}

impl<S: IntervalStream> LowPass<S> {
    /// Panics if `k == 0`.
    pub fn new(input: S, k: u64) -> LowPass<S> {
        assert!(k >= 1, "low-pass threshold must be positive");
        LowPass {
            input: Fuse::new(input),
            k,
        }
    }

    pub fn state_slots(&self) -> usize {
        0
    }
}

impl<S: IntervalStream> IntervalStream for LowPass<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        loop {
            let iv = self.input.next_interval()?;
            if iv.length() <= self.k {
                return Some(iv);
            }
        }
    }
}
