use std::cmp::Ordering;

use crate::coord::CoordKey;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// A finite colored configuration `(P_1, …, P_m)`.
///
/// Each part is kept sorted lexicographically and free of duplicates.
#[derive(Clone, Debug)]
pub struct Cluster {
    parts: Vec<Vec<Point>>,
}

/// Hashable canonical form of a cluster.
pub type ClusterKey = Vec<(u32, [CoordKey; 2])>;

fn normalize(part: &mut Vec<Point>) {
    part.sort_by(|a, b| a.lex_cmp(b));
    part.dedup_by(|a, b| a.approx_eq(b));
}

impl Cluster {
    pub fn new(mut parts: Vec<Vec<Point>>) -> Cluster {
        for p in parts.iter_mut() {
            normalize(p);
        }
        Cluster { parts }
    }

    pub fn empty(colors: usize) -> Cluster {
        Cluster {
            parts: vec![Vec::new(); colors],
        }
    }

    /// `E_i` translated to `at`: one point of color `color`.
    pub fn single(colors: usize, color: usize, at: Point) -> Cluster {
        let mut c = Cluster::empty(colors);
        c.parts[color].push(at);
        c
    }

    pub fn from_colored(colors: usize, points: impl IntoIterator<Item = (usize, Point)>) -> Cluster {
        let mut parts = vec![Vec::new(); colors];
        for (c, p) in points {
            parts[c].push(p);
        }
        Cluster::new(parts)
    }

    pub fn colors(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, color: usize) -> &[Point] {
        &self.parts[color]
    }

    pub fn parts(&self) -> &[Vec<Point>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> Option<usize> {
        self.support().next().map(|(_, p)| p.dim())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Point)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(c, part)| part.iter().map(move |p| (c, p)))
    }

    /// Lexicographically smallest support point, with its color.
    pub fn anchor(&self) -> Option<(usize, Point)> {
        self.support()
            .min_by(|(ca, a), (cb, b)| a.lex_cmp(b).then(ca.cmp(cb)))
            .map(|(c, p)| (c, *p))
    }

    pub fn translate(&self, by: &Point) -> Result<Cluster> {
        if let Some(d) = self.dim() {
            if d != by.dim() {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: by.dim(),
                });
            }
        }
        let parts = self
            .parts
            .iter()
            .map(|part| part.iter().map(|p| *p + *by).collect())
            .collect();
        Ok(Cluster::new(parts))
    }

    /// The translate with its anchor at the origin, and the anchor itself.
    pub fn canonical(&self) -> Option<(Cluster, Point)> {
        let (_, a) = self.anchor()?;
        let c = self.translate(&-a).expect("same dimension");
        Some((c, a))
    }

    pub fn key(&self) -> ClusterKey {
        self.support().map(|(c, p)| (c as u32, p.key())).collect()
    }

    pub fn approx_eq(&self, other: &Cluster) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| {
                a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.approx_eq(q))
            })
    }

    /// `(min, max)` position of the support in dimension 1.
    pub fn span_1d(&self) -> Option<(f64, f64)> {
        let mut it = self.support().map(|(_, p)| p.pos());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    pub fn diameter(&self) -> f64 {
        let pts: Vec<&Point> = self.support().map(|(_, p)| p).collect();
        let mut d: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                d = d.max(a.dist(b));
            }
        }
        d
    }
}

/// The shift `x` with `P = -x + P'`, if the clusters are translates.
///
/// Empty clusters have no unique shift and never match.
pub fn match_clusters(p: &Cluster, q: &Cluster) -> Option<Point> {
    if p.colors() != q.colors() {
        return None;
    }
    if p.parts.iter().zip(&q.parts).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let (ca, a) = p.anchor()?;
    let (cb, b) = q.anchor()?;
    if ca != cb || a.dim() != b.dim() {
        return None;
    }
    let x = b - a;
    let moved = p.translate(&x).ok()?;
    moved.approx_eq(q).then_some(x)
}

fn point_set_distance(a: &[Point], b: &[Point]) -> f64 {
    let directed = |from: &[Point], to: &[Point]| {
        from.iter()
            .map(|x| to.iter().map(|y| x.dist(y)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Colorwise Hausdorff distance `ρ_H`; a color empty on exactly one side
/// contributes 1, empty on both sides contributes 0.
pub fn cluster_distance(p: &Cluster, q: &Cluster) -> Result<f64> {
    if p.colors() != q.colors() {
        return Err(Error::ColorMismatch {
            expected: p.colors(),
            found: q.colors(),
        });
    }
    if let (Some(d1), Some(d2)) = (p.dim(), q.dim()) {
        if d1 != d2 {
            return Err(Error::DimensionMismatch {
                expected: d1,
                found: d2,
            });
        }
    }
    let mut d: f64 = 0.0;
    for (a, b) in p.parts.iter().zip(&q.parts) {
        let term = match (a.is_empty(), b.is_empty()) {
            (true, true) => 0.0,
            (true, false) | (false, true) => 1.0,
            (false, false) => point_set_distance(a, b),
        };
        d = d.max(term);
    }
    Ok(d)
}

/// Order on clusters by canonical key; used to sort class tables.
pub fn key_cmp(a: &ClusterKey, b: &ClusterKey) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1(points: &[f64]) -> Cluster {
        Cluster::from_colored(1, points.iter().map(|&v| (0, Point::x(v))))
    }

    #[test]
    fn translate_examples() {
        let p = c1(&[0.0, 1.0]);
        let t = p.translate(&Point::x(2.0)).unwrap();
        assert!(t.approx_eq(&c1(&[2.0, 3.0])));
        assert!(p.translate(&Point::x(0.0)).unwrap().approx_eq(&p));
        let two = Cluster::from_colored(2, [(0, Point::x(0.0)), (1, Point::x(1.5))]);
        let moved = two.translate(&Point::x(-1.5)).unwrap();
        let want = Cluster::from_colored(2, [(0, Point::x(-1.5)), (1, Point::x(0.0))]);
        assert!(moved.approx_eq(&want));
        assert!(p.translate(&Point::xy(1.0, 1.0)).is_err());
    }

    #[test]
    fn match_examples() {
        let x = match_clusters(&c1(&[0.0, 1.0]), &c1(&[5.0, 6.0])).unwrap();
        assert_eq!(x.pos(), 5.0);
        assert!(match_clusters(&c1(&[0.0, 1.0]), &c1(&[0.0, 2.0])).is_none());
        let a = Cluster::single(2, 0, Point::x(0.0));
        let b = Cluster::single(2, 1, Point::x(0.0));
        assert!(match_clusters(&a, &b).is_none());
    }

    #[test]
    fn distance_examples() {
        let p = c1(&[0.0, 1.0]);
        assert_eq!(cluster_distance(&p, &p).unwrap(), 0.0);
        let q = c1(&[0.1, 1.0]);
        assert!((cluster_distance(&p, &q).unwrap() - 0.1).abs() < 1e-15);
        let a = Cluster::single(2, 0, Point::x(0.0));
        let b = Cluster::from_colored(2, [(0, Point::x(0.0)), (1, Point::x(0.5))]);
        assert_eq!(cluster_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn parts_sorted_and_deduplicated() {
        let p = c1(&[3.0, 1.0, 2.0, 1.0 + 1e-12]);
        let v: Vec<f64> = p.part(0).iter().map(|q| q.pos()).collect();
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
    }
}
