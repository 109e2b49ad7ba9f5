//! Intervals over extended integer positions and the two priority orders
//! used by the queue-based operators.

use std::cmp::Ordering;
use std::fmt;

use crate::Error;

/// A position in the underlying total order, extended with two sentinels.
///
/// Variant order matters: the derived `Ord` gives
/// `NegInf < Finite(_) < PosInf`, and finite values compare as integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Position {
    pub fn is_finite(self) -> bool {
        matches!(self, Position::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Position::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// The next position. Only finite positions have a successor;
    /// `i64::MAX` steps onto `PosInf`.
    pub fn successor(self) -> Option<Position> {
        match self {
            Position::Finite(v) => Some(v.checked_add(1).map_or(Position::PosInf, Position::Finite)),
            _ => None,
        }
    }

    /// Shifts a finite position by `delta`, saturating at the `i64` range.
    /// Infinite positions are left unchanged.
    pub fn offset(self, delta: i64) -> Position {
        match self {
            Position::Finite(v) => Position::Finite(v.saturating_add(delta)),
            other => other,
        }
    }
}

impl From<i64> for Position {
    fn from(v: i64) -> Self {
        Position::Finite(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::NegInf => f.write_str("-inf"),
            Position::Finite(v) => write!(f, "{v}"),
            Position::PosInf => f.write_str("+inf"),
        }
    }
}

/// A nonempty closed interval `[left..right]`.
///
/// The empty interval is not representable. The two sentinel intervals
/// [`Interval::NEG_INF`] and [`Interval::POS_INF`] exist for operator state
/// and never appear in a stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    left: Position,
    right: Position,
}

impl Interval {
    pub const NEG_INF: Interval = Interval {
        left: Position::NegInf,
        right: Position::NegInf,
    };
    pub const POS_INF: Interval = Interval {
        left: Position::PosInf,
        right: Position::PosInf,
    };

    /// Builds `[left..right]`.
    ///
    /// Panics if `left > right`; use [`Interval::try_new`] for unchecked input.
    pub fn new(left: i64, right: i64) -> Interval {
        assert!(left <= right, "empty interval [{left}..{right}]");
        Interval {
            left: Position::Finite(left),
            right: Position::Finite(right),
        }
    }

    pub fn try_new(left: Position, right: Position) -> Result<Interval, Error> {
        if left > right {
            return Err(Error::EmptyInterval { left, right });
        }
        Ok(Interval { left, right })
    }

    pub fn point(p: i64) -> Interval {
        Interval::new(p, p)
    }

    #[inline]
    pub fn left(&self) -> Position {
        self.left
    }

    #[inline]
    pub fn right(&self) -> Position {
        self.right
    }

    pub fn is_finite(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }

    /// Whether `other ⊆ self`.
    #[inline]
    pub fn contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    /// The least interval containing both `self` and `other`.
    #[inline]
    pub fn span(&self, other: &Interval) -> Interval {
        Interval {
            left: self.left.min(other.left),
            right: self.right.max(other.right),
        }
    }

    /// `self ≪ other`: every point of `self` is below every point of `other`.
    #[inline]
    pub fn strictly_before(&self, other: &Interval) -> bool {
        self.right < other.left
    }

    /// Whether the two intervals share at least one position.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    /// Number of positions covered, `right - left + 1`.
    ///
    /// Panics on sentinel extremes.
    pub fn length(&self) -> u64 {
        match (self.left, self.right) {
            (Position::Finite(l), Position::Finite(r)) => (r as i128 - l as i128 + 1) as u64,
            _ => panic!("length of non-finite interval {self}"),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.left, self.right)
    }
}

pub fn contains(a: &Interval, b: &Interval) -> bool {
    a.contains(b)
}

pub fn span(a: &Interval, b: &Interval) -> Interval {
    a.span(b)
}

pub fn strictly_before(a: &Interval, b: &Interval) -> bool {
    a.strictly_before(b)
}

/// The end order ⊴: `a` ends before `b`, or ends together with it and is a
/// suffix of it.
#[inline]
pub fn cmp_end(a: &Interval, b: &Interval) -> Ordering {
    a.right.cmp(&b.right).then_with(|| b.left.cmp(&a.left))
}

/// The start order ⪯: `a` starts before `b`, or starts together with it and
/// prolongs it.
#[inline]
pub fn cmp_start(a: &Interval, b: &Interval) -> Ordering {
    a.left.cmp(&b.left).then_with(|| b.right.cmp(&a.right))
}

/// A total order on intervals used to prioritize an [`IndirectQueue`](crate::queue::IndirectQueue).
pub trait IntervalOrder {
    fn compare(a: &Interval, b: &Interval) -> Ordering;
}

/// ⊴, used by OR.
#[derive(Clone, Copy, Debug, Default)]
pub struct EndOrder;

/// ⪯, used by AND.
#[derive(Clone, Copy, Debug, Default)]
pub struct StartOrder;

impl IntervalOrder for EndOrder {
    #[inline]
    fn compare(a: &Interval, b: &Interval) -> Ordering {
        cmp_end(a, b)
    }
}

impl IntervalOrder for StartOrder {
    #[inline]
    fn compare(a: &Interval, b: &Interval) -> Ordering {
        cmp_start(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(l: i64, r: i64) -> Interval {
        Interval::new(l, r)
    }

    #[test]
    fn containment() {
        assert!(contains(&iv(0, 3), &iv(1, 2)));
        assert!(contains(&iv(1, 2), &iv(1, 2)));
        assert!(!contains(&iv(0, 2), &iv(1, 3)));
    }

    #[test]
    fn spans() {
        assert_eq!(span(&iv(0, 0), &iv(2, 2)), iv(0, 2));
        assert_eq!(span(&iv(1, 3), &iv(2, 2)), iv(1, 3));
        assert_eq!(span(&iv(5, 7), &iv(0, 1)), iv(0, 7));
    }

    #[test]
    fn precedence() {
        assert!(strictly_before(&iv(0, 1), &iv(2, 3)));
        assert!(!strictly_before(&iv(0, 2), &iv(2, 3)));
        assert!(!strictly_before(&iv(3, 4), &iv(0, 1)));
    }

    #[test]
    fn end_order() {
        assert_eq!(cmp_end(&iv(1, 3), &iv(0, 4)), Ordering::Less);
        assert_eq!(cmp_end(&iv(2, 4), &iv(0, 4)), Ordering::Less);
        assert_eq!(cmp_end(&iv(0, 4), &iv(0, 4)), Ordering::Equal);
    }

    #[test]
    fn start_order() {
        assert_eq!(cmp_start(&iv(0, 1), &iv(2, 2)), Ordering::Less);
        assert_eq!(cmp_start(&iv(0, 4), &iv(0, 1)), Ordering::Less);
        assert_eq!(cmp_start(&iv(3, 3), &iv(3, 3)), Ordering::Equal);
    }

    #[test]
    fn lengths() {
        assert_eq!(iv(0, 2).length(), 3);
        assert_eq!(iv(5, 5).length(), 1);
        assert_eq!(iv(3, 9).length(), 7);
    }

    #[test]
    #[should_panic]
    fn sentinel_length_panics() {
        Interval::NEG_INF.length();
    }

    #[test]
    fn sentinels_order_around_finite() {
        let x = iv(-5, 5);
        assert_eq!(cmp_end(&Interval::NEG_INF, &x), Ordering::Less);
        assert_eq!(cmp_start(&x, &Interval::POS_INF), Ordering::Less);
        assert!(!x.contains(&Interval::NEG_INF));
        assert_eq!(Position::Finite(i64::MAX).successor(), Some(Position::PosInf));
        assert_eq!(Position::PosInf.successor(), None);
        assert!(Interval::try_new(Position::Finite(2), Position::Finite(1)).is_err());
    }

    fn arb_interval() -> impl Strategy<Value = Interval> {
        (-20i64..20, 0i64..10).prop_map(|(l, len)| iv(l, l + len))
    }

    fn ord_laws(cmp: fn(&Interval, &Interval) -> Ordering, a: Interval, b: Interval, c: Interval) {
        assert_eq!(cmp(&a, &b), cmp(&b, &a).reverse());
        if cmp(&a, &b) == Ordering::Equal {
            assert_eq!(a, b);
        }
        if cmp(&a, &b) != Ordering::Greater && cmp(&b, &c) != Ordering::Greater {
            assert_ne!(cmp(&a, &c), Ordering::Greater);
        }
    }

    proptest! {
        #[test]
        fn priority_orders_are_total(a in arb_interval(), b in arb_interval(), c in arb_interval()) {
            ord_laws(cmp_end, a, b, c);
            ord_laws(cmp_start, a, b, c);
        }

        #[test]
        fn containment_implies_both_orders(outer in arb_interval(), inner in arb_interval()) {
            if outer.contains(&inner) {
                prop_assert_ne!(cmp_end(&inner, &outer), Ordering::Greater);
                prop_assert_ne!(cmp_start(&outer, &inner), Ordering::Greater);
            }
        }

        #[test]
        fn span_is_least_upper_bound(a in arb_interval(), b in arb_interval(), c in arb_interval()) {
            let s = a.span(&b);
            prop_assert_eq!(s, b.span(&a));
            prop_assert_eq!(a.span(&a), a);
            prop_assert_eq!(s.span(&c), a.span(&b.span(&c)));
            prop_assert!(s.contains(&a) && s.contains(&b));
            // brute force: every interval containing both contains the span
            let (lo, hi) = (-20i64, 30i64);
            for l in lo..=hi {
                for r in l..=hi {
                    let cand = iv(l, r);
                    if cand.contains(&a) && cand.contains(&b) {
                        prop_assert!(cand.contains(&s));
                    }
                }
            }
        }
    }
}
