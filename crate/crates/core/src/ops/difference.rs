use crate::stream::{Fuse, IntervalStream};
use crate::Interval;

/// Brouwerian difference: the minuend intervals that contain no subtrahend
/// interval.
///
/// For each minuend interval `[ℓ..r]` the subtrahend is scanned up to its
/// first interval `[ℓ'..r']` with `ℓ' ≥ ℓ` or `r' ≥ r`; only that interval
/// can be inside `[ℓ..r]`. An exhausted subtrahend is parked at `[+inf..+inf]`.
pub struct Difference<M, S> {
    minuend: Fuse<M>,
    subtrahend: Fuse<S>,
    poison: Interval,
}

impl<M: IntervalStream, S: IntervalStream> Difference<M, S> {
    pub fn new(minuend: M, subtrahend: S) -> Difference<M, S> {
        Difference {
            minuend: Fuse::new(minuend),
            subtrahend: Fuse::new(subtrahend),
            poison: Interval::NEG_INF,
        }
    }

    pub fn state_slots(&self) -> usize {
        1
    }
}

impl<M: IntervalStream, S: IntervalStream> IntervalStream for Difference<M, S> {
    fn next_interval(&mut self) -> Option<Interval> {
        loop {
            let iv = self.minuend.next_interval()?;
            while self.poison.left() < iv.left() && self.poison.right() < iv.right() {
                self.poison = self.subtrahend.next_interval().unwrap_or(Interval::POS_INF);
            }
            if !iv.contains(&self.poison) {
                return Some(iv);
            }
        }
    }
}
