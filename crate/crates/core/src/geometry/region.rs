use serde::{Deserialize, Serialize};

use crate::coord::TOL_EQ;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// A closed, bounded region: a Euclidean ball or an axis-aligned box.
///
/// Boundary points belong to the region; float ties are resolved with
/// [`TOL_EQ`] slack.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    Ball { center: Vec<f64>, radius: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

impl Region {
    pub fn ball(center: &[f64], radius: f64) -> Region {
        Region::Ball {
            center: center.to_vec(),
            radius,
        }
    }

    /// The closed interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Region {
        Region::Box {
            lo: vec![lo],
            hi: vec![hi],
        }
    }

    pub fn rect(lo: &[f64], hi: &[f64]) -> Region {
        Region::Box {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        }
    }

    /// The centered cube `[-n, n]^d`.
    pub fn cube(dim: usize, half: f64) -> Region {
        Region::Box {
            lo: vec![-half; dim],
            hi: vec![half; dim],
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Region::Ball { center, .. } => center.len(),
            Region::Box { lo, .. } => lo.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            Region::Ball { center, radius } => {
                if !finite(center) || !radius.is_finite() {
                    return Err(Error::UnboundedRegion);
                }
                if *radius < 0.0 {
                    return Err(Error::InvalidRegion("negative radius".into()));
                }
                if !(1..=2).contains(&center.len()) {
                    return Err(Error::InvalidRegion("dimension must be 1 or 2".into()));
                }
            }
            Region::Box { lo, hi } => {
                if !finite(lo) || !finite(hi) {
                    return Err(Error::UnboundedRegion);
                }
                if lo.len() != hi.len() || !(1..=2).contains(&lo.len()) {
                    return Err(Error::InvalidRegion("corner dimensions".into()));
                }
                if lo.iter().zip(hi).any(|(a, b)| a > b) {
                    return Err(Error::InvalidRegion("lo exceeds hi".into()));
                }
            }
        }
        Ok(())
    }

    pub fn contains_f64(&self, x: &[f64]) -> bool {
        match self {
            Region::Ball { center, radius } => {
                let d2: f64 = center.iter().zip(x).map(|(c, v)| (v - c).powi(2)).sum();
                d2.sqrt() <= radius + TOL_EQ
            }
            Region::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .zip(x)
                .all(|((l, h), v)| *v >= l - TOL_EQ && *v <= h + TOL_EQ),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.contains_f64(&p.to_f64s())
    }

    pub fn volume(&self) -> f64 {
        match self {
            Region::Ball { center, radius } => match center.len() {
                1 => 2.0 * radius,
                _ => std::f64::consts::PI * radius * radius,
            },
            Region::Box { lo, hi } => lo.iter().zip(hi).map(|(l, h)| h - l).product(),
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Region::Ball { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            Region::Box { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn translate(&self, by: &[f64]) -> Region {
        match self {
            Region::Ball { center, radius } => Region::Ball {
                center: center.iter().zip(by).map(|(c, b)| c + b).collect(),
                radius: *radius,
            },
            Region::Box { lo, hi } => Region::Box {
                lo: lo.iter().zip(by).map(|(c, b)| c + b).collect(),
                hi: hi.iter().zip(by).map(|(c, b)| c + b).collect(),
            },
        }
    }

    /// `F^{+r}`: boxes grow by `r` per side (max-norm), balls by `r` in radius.
    pub fn dilate(&self, r: f64) -> Region {
        match self {
            Region::Ball { center, radius } => Region::Ball {
                center: center.clone(),
                radius: (radius + r).max(0.0),
            },
            Region::Box { lo, hi } => {
                let mut lo: Vec<f64> = lo.iter().map(|v| v - r).collect();
                let mut hi: Vec<f64> = hi.iter().map(|v| v + r).collect();
                for (l, h) in lo.iter_mut().zip(hi.iter_mut()) {
                    if *l > *h {
                        let m = 0.5 * (*l + *h);
                        *l = m;
                        *h = m;
                    }
                }
                Region::Box { lo, hi }
            }
        }
    }

    /// Whether `other` lies inside `self` (compared through bounding boxes for
    /// boxes, exactly for balls in balls).
    pub fn contains_region(&self, other: &Region) -> bool {
        match (self, other) {
            (
                Region::Ball { center: c1, radius: r1 },
                Region::Ball { center: c2, radius: r2 },
            ) => {
                let d: f64 = c1
                    .iter()
                    .zip(c2)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                d + r2 <= r1 + TOL_EQ
            }
            (Region::Box { lo, hi }, _) => {
                let (olo, ohi) = other.bounds();
                lo.iter().zip(&olo).all(|(a, b)| *b >= a - TOL_EQ)
                    && hi.iter().zip(&ohi).all(|(a, b)| *b <= a + TOL_EQ)
            }
            (Region::Ball { .. }, Region::Box { lo, hi }) => {
                // every corner inside the ball
                let corners: Vec<Vec<f64>> = match lo.len() {
                    1 => vec![vec![lo[0]], vec![hi[0]]],
                    _ => vec![
                        vec![lo[0], lo[1]],
                        vec![lo[0], hi[1]],
                        vec![hi[0], lo[1]],
                        vec![hi[0], hi[1]],
                    ],
                };
                corners.iter().all(|c| self.contains_f64(c))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_boundaries() {
        let r = Region::interval(0.0, 2.0);
        assert!(r.contains(&Point::x(0.0)));
        assert!(r.contains(&Point::x(2.0)));
        assert!(!r.contains(&Point::x(2.1)));
        assert_eq!(r.volume(), 2.0);
        let b = Region::ball(&[0.0, 0.0], 1.0);
        assert!(b.contains(&Point::xy(1.0, 0.0)));
        assert!(!b.contains(&Point::xy(0.8, 0.8)));
    }

    #[test]
    fn unbounded_rejected() {
        assert!(matches!(
            Region::interval(0.0, f64::INFINITY).validate(),
            Err(Error::UnboundedRegion)
        ));
        assert!(Region::interval(1.0, 0.0).validate().is_err());
    }

    #[test]
    fn nesting() {
        let big = Region::interval(-5.0, 5.0);
        assert!(big.contains_region(&Region::interval(-1.0, 1.0)));
        assert!(!big.contains_region(&Region::interval(-1.0, 6.0)));
        assert!(big.contains_region(&Region::ball(&[0.0], 5.0)));
    }
}
