use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::coord::TOL_EQ;
use crate::error::{Error, Result};
use crate::geometry::{PointSource, Region};
use crate::hull::Interval;

/// Certified bracket `lower ≤ d(Λ₁, Λ₂) ≤ upper`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MetricBracket {
    pub lower: f64,
    pub upper: f64,
    pub eps_grid: f64,
}

/// Cap of the hull metric.
pub const METRIC_CAP: f64 = FRAC_1_SQRT_2;

/// Whether `[lo, hi]` minus the closed `[d - r, d + r]` for all `d` is nonempty.
fn feasible(lo: f64, hi: f64, forbidden: &[f64], r: f64) -> bool {
    let mut pieces = vec![Interval::closed(lo, hi)];
    if pieces[0].is_empty() {
        return false;
    }
    for &d in forbidden {
        pieces = pieces.iter().flat_map(|p| p.minus_closed(d - r, d + r)).collect();
        if pieces.is_empty() {
            return false;
        }
    }
    true
}

fn has_match(pts: &[(f64, usize)], x: f64, color: usize) -> bool {
    let start = pts.partition_point(|p| p.0 < x - TOL_EQ);
    pts[start..]
        .iter()
        .take_while(|p| p.0 <= x + TOL_EQ)
        .any(|p| p.1 == color)
}

/// `∃ x, y ∈ B_ε(0)`: `B_{1/ε} ∩ (-x + Λ₁) = B_{1/ε} ∩ (-y + Λ₂)`, for sorted 1D
/// point lists covering `[-1/ε - 3ε, 1/ε + 3ε]`.
pub(crate) fn matches_at(a: &[(f64, usize)], b: &[(f64, usize)], eps: f64) -> bool {
    let r = 1.0 / eps;
    let reach = r + eps;
    let near = |p: &&(f64, usize)| p.0.abs() <= reach + 2.0 * eps;
    // both balls empty, independently shifted
    let da: Vec<f64> = a.iter().filter(near).map(|p| p.0).collect();
    let db: Vec<f64> = b.iter().filter(near).map(|p| p.0).collect();
    if feasible(-eps, eps, &da, r) && feasible(-eps, eps, &db, r) {
        return true;
    }
    let mut shifts = BTreeSet::new();
    shifts.insert(0i64);
    for p in a.iter().filter(|p| p.0.abs() <= reach) {
        let start = b.partition_point(|q| q.0 < p.0 - 2.0 * eps);
        for q in b[start..].iter().take_while(|q| q.0 <= p.0 + 2.0 * eps) {
            if q.1 == p.1 {
                shifts.insert(((q.0 - p.0) / TOL_EQ).round() as i64);
            }
        }
    }
    shifts.into_iter().any(|k| {
        let s = k as f64 * TOL_EQ;
        let mut forbidden: Vec<f64> = a
            .iter()
            .filter(|p| p.0.abs() <= reach && !has_match(b, p.0 + s, p.1))
            .map(|p| p.0)
            .collect();
        forbidden.extend(
            b.iter()
                .filter(|q| (q.0 - s).abs() <= reach && !has_match(a, q.0 - s, q.1))
                .map(|q| q.0 - s),
        );
        feasible((-eps).max(-eps - s), eps.min(eps - s), &forbidden, r)
    })
}

fn points_near(src: &dyn PointSource, eps: f64) -> Result<Vec<(f64, usize)>> {
    let r = 1.0 / eps + 3.0 * eps + 1e-6;
    Ok(src.window(&Region::interval(-r, r))?.points_1d())
}

fn check(src: &dyn PointSource) -> Result<()> {
    if src.dim() != 1 {
        return Err(Error::Unsupported("hull metric is implemented in dimension 1".into()));
    }
    Ok(())
}

/// Brackets the hull distance by a geometric descent from the cap followed by
/// bisection down to `eps_grid`.
pub fn hull_metric(a: &dyn PointSource, b: &dyn PointSource, eps_grid: f64) -> Result<MetricBracket> {
    check(a)?;
    check(b)?;
    if a.colors() != b.colors() {
        return Err(Error::ColorMismatch {
            expected: a.colors(),
            found: b.colors(),
        });
    }
    if !(eps_grid > 0.0 && eps_grid < METRIC_CAP) {
        return Err(Error::InvalidParameter("eps_grid must lie in (0, 2^-1/2)".into()));
    }
    let pred = |eps: f64| -> Result<bool> { Ok(matches_at(&points_near(a, eps)?, &points_near(b, eps)?, eps)) };
    let bracket = |lower, upper| MetricBracket { lower, upper, eps_grid };
    if !pred(METRIC_CAP)? {
        return Ok(bracket(METRIC_CAP, METRIC_CAP));
    }
    let mut hi = METRIC_CAP;
    let mut lo = None;
    while hi > eps_grid {
        let e = hi / 2.0;
        if pred(e)? {
            hi = e;
        } else {
            lo = Some(e);
            break;
        }
    }
    let Some(mut lo) = lo else {
        return Ok(bracket(0.0, hi));
    };
    while hi - lo > eps_grid {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(bracket(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    #[test]
    fn integer_shift() {
        let z = LatticeSource::integers();
        let z1 = LatticeSource::shifted_integers(0.1);
        let m = hull_metric(&z, &z1, 0.001).unwrap();
        assert!(m.lower <= 0.05 && 0.05 <= m.upper, "{m:?}");
        assert!(m.upper - m.lower <= 0.01);
        let same = hull_metric(&z, &z, 0.01).unwrap();
        assert!(same.upper <= 0.01 && same.lower == 0.0);
    }

    #[test]
    fn far_apart_is_capped() {
        let z = LatticeSource::integers();
        let z1 = LatticeSource::shifted_integers(0.5);
        let m = hull_metric(&z, &z1, 0.01).unwrap();
        // a shift of 0.5 needs |x|, |y| ≥ 0.25 but the cap ball has radius √2
        assert!(m.upper <= METRIC_CAP && m.lower >= 0.24, "{m:?}");
    }
}
