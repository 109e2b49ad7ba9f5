//! The lazy operators. Each one is an [`IntervalStream`] over its input
//! streams and reads its inputs only as far as the next output requires.

mod and;
mod block;
mod difference;
mod lowpass;
mod or;
mod ordered_and;

pub use and::And;
pub use block::Block;
pub use difference::Difference;
pub use lowpass::LowPass;
pub use or::Or;
pub use ordered_and::OrderedAnd;

use std::fmt;

use crate::stream::{BoxStream, Check, IntervalStream, Main, Primed, StarCompose};
use crate::Interval;

/// Integer-position shortcuts. Off by default so that read profiles match
/// the plain algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Tighter barrier tests for AND<, and (with `singleton_inputs`) the
    /// first-list fast-forward for BLOCK and the dropped right-extreme test
    /// for AND<.
    pub fast_paths: bool,
    /// Every input interval is a singleton, as for term positions.
    pub singleton_inputs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Or,
    And,
    Block,
    OrderedAnd,
    LowPass(u64),
    /// Inputs are `[minuend, subtrahend]`.
    Difference,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Or => f.write_str("OR"),
            OperatorKind::And => f.write_str("AND"),
            OperatorKind::Block => f.write_str("BLOCK"),
            OperatorKind::OrderedAnd => f.write_str("AND<"),
            OperatorKind::LowPass(k) => write!(f, "LOWPASS_{k}"),
            OperatorKind::Difference => f.write_str("DIFFERENCE"),
        }
    }
}

impl OperatorKind {
    /// Builds the bare operator over `inputs`.
    ///
    /// Panics if `inputs` does not have the operator's arity (one list for
    /// LOWPASS, two for DIFFERENCE).
    pub fn build<'a>(self, inputs: Vec<BoxStream<'a>>, options: Options) -> BoxStream<'a> {
        match self {
            OperatorKind::Or => Box::new(Or::new(inputs)),
            OperatorKind::And => Box::new(And::new(inputs)),
            OperatorKind::Block => Box::new(Block::with_fast_forward(
                inputs,
                options.fast_paths && options.singleton_inputs,
            )),
            OperatorKind::OrderedAnd => Box::new(OrderedAnd::with_options(
                inputs,
                options.fast_paths,
                options.fast_paths && options.singleton_inputs,
            )),
            OperatorKind::LowPass(k) => {
                let [input]: [BoxStream<'a>; 1] = inputs
                    .try_into()
                    .unwrap_or_else(|v: Vec<_>| panic!("LOWPASS takes one input, got {}", v.len()));
                Box::new(LowPass::new(input, k))
            }
            OperatorKind::Difference => {
                let [minuend, subtrahend]: [BoxStream<'a>; 2] = inputs
                    .try_into()
                    .unwrap_or_else(|v: Vec<_>| panic!("DIFFERENCE takes two inputs, got {}", v.len()));
                Box::new(Difference::new(minuend, subtrahend))
            }
        }
    }

    /// The operator wrapped with its emptiness check, so that empty inputs
    /// are resolved after one read per list.
    pub fn build_checked<'a>(self, inputs: Vec<BoxStream<'a>>, options: Options) -> BoxStream<'a> {
        let main: Main<'a> = Box::new(move |inputs| self.build(inputs, options));
        Box::new(StarCompose::new(inputs, self.emptiness_check(), main))
    }

    /// Reads the first element of every input list and decides whether the
    /// result is already known to be empty.
    pub fn emptiness_check<'a>(self) -> Check<'a> {
        Box::new(move |inputs: &mut [Primed<'a>]| {
            let empty: Vec<bool> = inputs.iter_mut().map(|s| s.next_interval().is_none()).collect();
            let bottom = match self {
                OperatorKind::Or => empty.iter().all(|&e| e),
                OperatorKind::And | OperatorKind::Block | OperatorKind::OrderedAnd => empty.iter().any(|&e| e),
                OperatorKind::LowPass(_) | OperatorKind::Difference => empty.first().copied().unwrap_or(true),
            };
            bottom.then(Vec::<Interval>::new)
        })
    }
}
