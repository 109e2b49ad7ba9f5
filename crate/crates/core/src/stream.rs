//! Pull-based interval streams, read-count instrumentation and the
//! check-then-run composition used to handle degenerate inputs.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::{Error, Interval};

/// A lazy list of the intervals of an antichain, in natural order.
///
/// `None` is the terminal marker. Implementations must keep returning
/// `None` once they have returned it.
pub trait IntervalStream {
    fn next_interval(&mut self) -> Option<Interval>;
}

pub type BoxStream<'a> = Box<dyn IntervalStream + Send + 'a>;

impl<S: IntervalStream + ?Sized> IntervalStream for Box<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        (**self).next_interval()
    }
}

impl<S: IntervalStream + ?Sized> IntervalStream for &mut S {
    fn next_interval(&mut self) -> Option<Interval> {
        (**self).next_interval()
    }
}

/// A stream over an owned, already validated antichain.
#[derive(Clone, Debug)]
pub struct VecStream {
    items: Vec<Interval>,
    pos: usize,
}

impl VecStream {
    /// Wraps intervals that are trusted to be in natural order.
    pub fn new(items: Vec<Interval>) -> VecStream {
        VecStream { items, pos: 0 }
    }

    pub fn from_antichain(items: Vec<Interval>) -> Result<VecStream, Error> {
        check_natural_order(&items)?;
        Ok(VecStream::new(items))
    }
}

impl IntervalStream for VecStream {
    fn next_interval(&mut self) -> Option<Interval> {
        let item = self.items.get(self.pos).copied();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }
}

/// Singleton intervals `[p..p]` over a borrowed, strictly increasing
/// position list.
#[derive(Clone, Debug)]
pub struct PositionStream<'a, T> {
    positions: &'a [T],
    pos: usize,
}

impl<'a, T: Copy + Into<i64>> PositionStream<'a, T> {
    pub fn new(positions: &'a [T]) -> PositionStream<'a, T> {
        PositionStream { positions, pos: 0 }
    }
}

impl<T: Copy + Into<i64>> IntervalStream for PositionStream<'_, T> {
    fn next_interval(&mut self) -> Option<Interval> {
        let p = *self.positions.get(self.pos)?;
        self.pos += 1;
        Some(Interval::point(p.into()))
    }
}

/// Builds the singleton-interval stream of a term's positions.
pub fn from_positions(positions: &[i64]) -> Result<VecStream, Error> {
    for (index, w) in positions.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(Error::UnsortedPositions {
                index: index + 1,
                previous: w[0],
                current: w[1],
            });
        }
    }
    Ok(VecStream::new(positions.iter().map(|&p| Interval::point(p)).collect()))
}

fn check_natural_order(items: &[Interval]) -> Result<(), Error> {
    for (index, w) in items.windows(2).enumerate() {
        if !(w[0].left() < w[1].left() && w[0].right() < w[1].right()) {
            return Err(Error::OrderViolation {
                index: index + 1,
                previous: w[0],
                current: w[1],
            });
        }
    }
    Ok(())
}

/// Drains a finite stream, checking that it really is an antichain in
/// natural order.
pub fn materialize<S: IntervalStream>(mut stream: S) -> Result<Vec<Interval>, Error> {
    let mut out: Vec<Interval> = Vec::new();
    while let Some(iv) = stream.next_interval() {
        if let Some(prev) = out.last() {
            if !(prev.left() < iv.left() && prev.right() < iv.right()) {
                return Err(Error::OrderViolation {
                    index: out.len(),
                    previous: *prev,
                    current: iv,
                });
            }
        }
        out.push(iv);
    }
    Ok(out)
}

/// Stops calling the wrapped stream after its first terminal marker.
#[derive(Debug)]
pub struct Fuse<S> {
    inner: S,
    done: bool,
}

impl<S: IntervalStream> Fuse<S> {
    pub fn new(inner: S) -> Fuse<S> {
        Fuse { inner, done: false }
    }

    pub fn is_exhausted(&self) -> bool {
        self.done
    }
}

impl<S: IntervalStream> IntervalStream for Fuse<S> {
    #[inline]
    fn next_interval(&mut self) -> Option<Interval> {
        if self.done {
            return None;
        }
        let item = self.inner.next_interval();
        self.done = item.is_none();
        item
    }
}

/// Shared handle on the number of reads performed through a [`CountingStream`].
#[derive(Clone, Debug, Default)]
pub struct ReadCounter(Arc<AtomicU64>);

impl ReadCounter {
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// Counts every `next_interval` call, the terminal marker included.
#[derive(Debug)]
pub struct CountingStream<S> {
    inner: S,
    reads: ReadCounter,
}

impl<S: IntervalStream> CountingStream<S> {
    pub fn new(inner: S) -> CountingStream<S> {
        CountingStream {
            inner,
            reads: ReadCounter::default(),
        }
    }

    pub fn counter(&self) -> ReadCounter {
        self.reads.clone()
    }
}

impl<S: IntervalStream> IntervalStream for CountingStream<S> {
    fn next_interval(&mut self) -> Option<Interval> {
        self.reads.0.fetch_add(1, Ordering::Relaxed);
        self.inner.next_interval()
    }
}

/// Reads per input list, snapshotted each time the operator emitted an
/// interval. `rho[p][i]` is the number of elements read from list `i` when
/// output `p + 1` was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoProfile {
    pub m: usize,
    pub rho: Vec<Vec<u64>>,
    pub outputs: Vec<Interval>,
    /// Reads per list once the operator returned its terminal marker.
    pub final_reads: Vec<u64>,
}

impl RhoProfile {
    pub fn total_reads(&self) -> u64 {
        self.final_reads.iter().sum()
    }
}

/// Runs `op` over counted copies of `inputs` until it is exhausted.
pub fn profile<F>(op: F, inputs: &[Vec<Interval>]) -> RhoProfile
where
    F: FnOnce(Vec<BoxStream<'static>>) -> BoxStream<'static>,
{
    let mut counters = Vec::with_capacity(inputs.len());
    let streams: Vec<BoxStream<'static>> = inputs
        .iter()
        .map(|list| {
            let s = CountingStream::new(VecStream::new(list.clone()));
            counters.push(s.counter());
            Box::new(s) as BoxStream<'static>
        })
        .collect();
    let mut out = op(streams);
    let mut rho = Vec::new();
    let mut outputs = Vec::new();
    while let Some(iv) = out.next_interval() {
        outputs.push(iv);
        rho.push(counters.iter().map(ReadCounter::get).collect());
    }
    RhoProfile {
        m: inputs.len(),
        rho,
        outputs,
        final_reads: counters.iter().map(ReadCounter::get).collect(),
    }
}

/// An input list that records what a check reads so that the main
/// algorithm can replay it.
pub struct Primed<'a> {
    inner: BoxStream<'a>,
    cache: VecDeque<Option<Interval>>,
    recording: bool,
    ended: bool,
}

impl<'a> Primed<'a> {
    fn new(inner: BoxStream<'a>) -> Primed<'a> {
        Primed {
            inner,
            cache: VecDeque::new(),
            recording: true,
            ended: false,
        }
    }

    /// Number of cached elements not yet replayed.
    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

impl IntervalStream for Primed<'_> {
    fn next_interval(&mut self) -> Option<Interval> {
        if !self.recording {
            if let Some(item) = self.cache.pop_front() {
                return item;
            }
        }
        if self.ended {
            return None;
        }
        let item = self.inner.next_interval();
        self.ended = item.is_none();
        if self.recording {
            self.cache.push_back(item);
        }
        item
    }
}

pub type Check<'a> = Box<dyn FnOnce(&mut [Primed<'a>]) -> Option<Vec<Interval>> + Send + 'a>;
pub type Main<'a> = Box<dyn FnOnce(Vec<BoxStream<'a>>) -> BoxStream<'a> + Send + 'a>;

enum StarState<'a> {
    Pending {
        inputs: Vec<BoxStream<'a>>,
        check: Check<'a>,
        main: Main<'a>,
    },
    Short(std::vec::IntoIter<Interval>),
    Running(BoxStream<'a>),
    Spent,
}

/// Runs `check` over the inputs first, caching everything it reads. If the
/// check returns an output list, that list is the result; otherwise `main`
/// runs over the cached prefixes followed by the live inputs.
///
/// When the check never reads more from a list than `main` does before its
/// first output, the composite reads exactly what the branch that ran reads.
pub struct StarCompose<'a> {
    state: StarState<'a>,
}

impl<'a> StarCompose<'a> {
    pub fn new(inputs: Vec<BoxStream<'a>>, check: Check<'a>, main: Main<'a>) -> StarCompose<'a> {
        StarCompose {
            state: StarState::Pending { inputs, check, main },
        }
    }

    /// Whether the check short-circuited. `None` until the first pull.
    pub fn short_circuited(&self) -> Option<bool> {
        match self.state {
            StarState::Pending { .. } => None,
            StarState::Short(_) => Some(true),
            _ => Some(false),
        }
    }
}

impl IntervalStream for StarCompose<'_> {
    fn next_interval(&mut self) -> Option<Interval> {
        if let StarState::Pending { .. } = self.state {
            let StarState::Pending { inputs, check, main } = std::mem::replace(&mut self.state, StarState::Spent)
            else {
                unreachable!()
            };
            let mut primed: Vec<Primed<'_>> = inputs.into_iter().map(Primed::new).collect();
            self.state = match check(&mut primed) {
                Some(out) => StarState::Short(out.into_iter()),
                None => {
                    let replay = primed
                        .into_iter()
                        .map(|mut p| {
                            p.recording = false;
                            Box::new(p) as BoxStream<'_>
                        })
                        .collect();
                    StarState::Running(main(replay))
                }
            };
        }
        match &mut self.state {
            StarState::Short(it) => it.next(),
            StarState::Running(s) => s.next_interval(),
            _ => None,
        }
    }
}

/// Functional form of [`StarCompose`]: an algorithm over input lists.
pub fn star_compose<'a>(check: Check<'a>, main: Main<'a>) -> impl FnOnce(Vec<BoxStream<'a>>) -> BoxStream<'a> {
    move |inputs| Box::new(StarCompose::new(inputs, check, main)) as BoxStream<'a>
}
