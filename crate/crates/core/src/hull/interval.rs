use std::fmt;

use serde::{Deserialize, Serialize};

/// A real interval with independently open or closed ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub fn open(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn length(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn intersect(&self, o: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.total_cmp(&o.lo) {
            std::cmp::Ordering::Less => (o.lo, o.lo_closed),
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && o.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.total_cmp(&o.hi) {
            std::cmp::Ordering::Less => (self.hi, self.hi_closed),
            std::cmp::Ordering::Greater => (o.hi, o.hi_closed),
            std::cmp::Ordering::Equal => (self.hi, self.hi_closed && o.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }
    }

    pub fn translate(&self, t: f64) -> Interval {
        Interval { lo: self.lo + t, hi: self.hi + t, ..*self }
    }

    /// `-I`.
    pub fn reflect(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    /// `I` minus the closed interval `[a, b]`, as up to two pieces.
    pub fn minus_closed(&self, a: f64, b: f64) -> Vec<Interval> {
        let left = self.intersect(&Interval { lo: f64::NEG_INFINITY, hi: a, lo_closed: false, hi_closed: false });
        let right = self.intersect(&Interval { lo: b, hi: f64::INFINITY, lo_closed: false, hi_closed: false });
        [left, right].into_iter().filter(|i| !i.is_empty()).collect()
    }

    /// Splits into `⌊len/δ⌋ + 1` consecutive pieces, each shorter than `δ`;
    /// interior cuts are half-open `[a, b)`.
    pub fn split_below(&self, delta: f64) -> Vec<Interval> {
        let len = self.length();
        let m = (len / delta).floor() as usize + 1;
        let step = len / m as f64;
        (0..m)
            .map(|k| Interval {
                lo: if k == 0 { self.lo } else { self.lo + k as f64 * step },
                hi: if k + 1 == m { self.hi } else { self.lo + (k + 1) as f64 * step },
                lo_closed: if k == 0 { self.lo_closed } else { true },
                hi_closed: if k + 1 == m { self.hi_closed } else { false },
            })
            .collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Lebesgue measure of a finite union of intervals.
pub fn union_length(intervals: &[Interval]) -> f64 {
    let mut v: Vec<(f64, f64)> = intervals
        .iter()
        .filter(|i| i.hi > i.lo)
        .map(|i| (i.lo, i.hi))
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for (lo, hi) in v {
        match cur {
            Some((a, b)) if lo <= b => cur = Some((a, b.max(hi))),
            Some((a, b)) => {
                total += b - a;
                cur = Some((lo, hi));
            }
            None => cur = Some((lo, hi)),
        }
    }
    total + cur.map_or(0.0, |(a, b)| b - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let i = Interval::closed(-1.0, 1.0);
        let pieces = i.minus_closed(-2.0, 0.0);
        assert_eq!(pieces, vec![Interval { lo: 0.0, hi: 1.0, lo_closed: false, hi_closed: true }]);
        assert!(pieces[0].minus_closed(0.0, 2.0).is_empty());
        assert!(Interval::half_open(0.0, 0.0).is_empty());
        assert!(!Interval::closed(1.0, 1.0).is_empty());
        assert!(Interval::half_open(0.0, 0.3).contains(0.0));
        assert!(!Interval::half_open(0.0, 0.3).contains(0.3));
        assert_eq!(Interval::half_open(0.0, 0.3).reflect(), Interval { lo: -0.3, hi: -0.0, lo_closed: false, hi_closed: true });
    }

    #[test]
    fn split_pieces_are_short_and_tile() {
        let i = Interval::open(0.0, 1.0);
        let parts = i.split_below(0.6);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.length() < 0.6));
        assert!(!parts[0].contains(0.0) && parts[0].contains(0.25) && !parts[0].contains(0.5));
        assert!(parts[1].contains(0.5) && !parts[1].contains(1.0));
        let j = Interval::closed(0.0, 1.2);
        assert_eq!(j.split_below(0.6).len(), 3);
    }

    #[test]
    fn union_measure() {
        let v = [Interval::closed(0.0, 1.0), Interval::open(0.5, 2.0), Interval::closed(3.0, 3.5)];
        assert!((union_length(&v) - 2.5).abs() < 1e-15);
    }
}
