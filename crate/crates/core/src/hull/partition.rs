use std::collections::BTreeMap;

use crate::coord::TOL_EQ;
use crate::error::{Error, Result};
use crate::geometry::{delone_params, Cluster, ClusterKey, Patch, Point, PointSource, Region};
use crate::hull::{cylinder_contains, CylinderSpec, Interval};
use crate::statistics::{single_orbit_frequency, VanHoveSpec};

/// One cylinder `X_{Q,V}` of the partition: `Q` extends the ball cluster
/// `ball_classes[class]` by every point that could enter `B_R(0)` under shifts in `V`.
#[derive(Clone, Debug)]
pub struct PartitionCell {
    pub class: usize,
    pub cluster: Cluster,
    pub window: Interval,
}

impl PartitionCell {
    pub fn cylinder(&self) -> CylinderSpec {
        CylinderSpec::new(self.cluster.clone(), self.window)
    }
}

/// A finite disjoint cover of the hull by cylinders with windows shorter than `delta`.
#[derive(Clone, Debug)]
pub struct HullPartition {
    pub radius: f64,
    pub delta: f64,
    pub eta: f64,
    pub b: f64,
    pub scan: f64,
    /// Canonical `B_R(0)`-clusters, anchored at their smallest point.
    pub ball_classes: Vec<Cluster>,
    pub cells: Vec<PartitionCell>,
}

pub const DEFAULT_PARTITION_SCAN: f64 = 1000.0;

type ClassMap = BTreeMap<(ClusterKey, ClusterKey), (Cluster, Cluster)>;

fn cluster_of(pts: &[(Point, usize)], colors: usize, origin: Point) -> Cluster {
    Cluster::from_colored(colors, pts.iter().map(|(p, c)| (*c, *p - origin)))
}

/// Ball clusters `B_R(c) ∩ Λ` and their `b`-extensions for generic centres `c ∈ [-L, L]`.
fn collect_classes(source: &dyn PointSource, radius: f64, b: f64, half: f64) -> Result<ClassMap> {
    let margin = radius + b + 1.0;
    let patch = source.window(&Region::interval(-half - margin, half + margin))?;
    let pts = patch.support_sorted();
    let pos: Vec<f64> = pts.iter().map(|p| p.0.pos()).collect();
    let mut crit: Vec<f64> = pos
        .iter()
        .flat_map(|&x| [x - radius, x + radius])
        .filter(|c| c.abs() <= half)
        .chain([-half, half])
        .collect();
    crit.sort_by(f64::total_cmp);
    crit.dedup_by(|a, b| (*a - *b).abs() <= 1e3 * TOL_EQ);
    let colors = source.colors();
    let mut out = ClassMap::new();
    let (mut lo, mut hi) = (0, 0);
    for w in crit.windows(2) {
        let c = 0.5 * (w[0] + w[1]);
        while lo < pos.len() && pos[lo] < c - radius {
            lo += 1;
        }
        hi = hi.max(lo);
        while hi < pos.len() && pos[hi] <= c + radius {
            hi += 1;
        }
        if lo == hi {
            continue;
        }
        let min = pts[lo].0;
        let (qlo, qhi) = (pos[lo] - b - TOL_EQ, pos[hi - 1] + b + TOL_EQ);
        let a = pos.partition_point(|&x| x < qlo);
        let z = pos.partition_point(|&x| x <= qhi);
        let p = cluster_of(&pts[lo..hi], colors, min);
        let q = cluster_of(&pts[a..z], colors, min);
        out.entry((p.key(), q.key())).or_insert((p, q));
    }
    Ok(out)
}

/// `W = ⋂_{x∈P} [x-R, x+R] ∖ ⋃_{y∈Q∖P} [y-R, y+R]` as disjoint intervals.
fn window_of(p: &Cluster, q: &Cluster, radius: f64) -> Vec<Interval> {
    let (lo, hi) = p.span_1d().expect("nonempty");
    let mut pieces = vec![Interval::closed(hi - radius, lo + radius)];
    for (color, y) in q.support() {
        if p.part(color).iter().any(|x| x.approx_eq(y)) {
            continue;
        }
        let y = y.pos();
        pieces = pieces.iter().flat_map(|i| i.minus_closed(y - radius, y + radius)).collect();
    }
    pieces.retain(|i| !i.is_empty());
    pieces
}

pub fn build_partition_1d(source: &dyn PointSource, radius: f64, delta: f64) -> Result<HullPartition> {
    build_partition_1d_with_scan(source, radius, delta, DEFAULT_PARTITION_SCAN)
}

/// Builds the partition from class scans over `[-scan, scan]` and `[-scan/2, scan/2]`;
/// disagreement between the two is reported as incomplete enumeration.
pub fn build_partition_1d_with_scan(
    source: &dyn PointSource,
    radius: f64,
    delta: f64,
    scan: f64,
) -> Result<HullPartition> {
    if source.dim() != 1 {
        return Err(Error::Unsupported("partition is implemented in dimension 1".into()));
    }
    let params = delone_params(source, &Region::interval(-scan, scan))?;
    let (eta, b) = (params.eta, params.b);
    if radius < b / 2.0 - TOL_EQ {
        return Err(Error::InvalidParameter(format!("radius {radius} is below b/2 = {}", b / 2.0)));
    }
    if !(delta > 0.0 && delta < eta) {
        return Err(Error::InvalidParameter(format!("delta {delta} must lie in (0, η = {eta})")));
    }
    let small = collect_classes(source, radius, b, scan / 2.0)?;
    let large = collect_classes(source, radius, b, scan)?;
    if small.len() != large.len() {
        return Err(Error::IncompleteEnumeration {
            small: small.len(),
            large: large.len(),
        });
    }
    let mut ball_classes: Vec<Cluster> = Vec::new();
    let mut ball_index: BTreeMap<ClusterKey, usize> = BTreeMap::new();
    let mut cells = Vec::new();
    for ((pkey, _), (p, q)) in &large {
        let windows: Vec<Interval> = window_of(p, q, radius)
            .into_iter()
            .filter(|w| w.length() > 1e3 * TOL_EQ)
            .collect();
        if windows.is_empty() {
            continue;
        }
        let class = *ball_index.entry(pkey.clone()).or_insert_with(|| {
            ball_classes.push(p.clone());
            ball_classes.len() - 1
        });
        for w in windows {
            for v in w.split_below(delta) {
                cells.push(PartitionCell {
                    class,
                    cluster: q.clone(),
                    window: v,
                });
            }
        }
    }
    Ok(HullPartition {
        radius,
        delta,
        eta,
        b,
        scan,
        ball_classes,
        cells,
    })
}

impl HullPartition {
    pub fn total_length(&self) -> f64 {
        self.cells.iter().map(|c| c.window.length()).sum()
    }

    /// A region large enough to decide membership in every cell.
    pub fn footprint(&self) -> Result<Region> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in &self.cells {
            let (a, b) = c.cylinder().footprint()?.bounds();
            lo = lo.min(a[0]);
            hi = hi.max(b[0]);
        }
        Ok(Region::interval(lo - 1.0, hi + 1.0))
    }

    /// Indices of the cells whose cylinder contains the patch's set.
    pub fn cells_containing(&self, patch: &Patch) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            if cylinder_contains(patch, &c.cylinder())? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `Σ Vol(V_j) · freq(Q_j)` with frequencies along `F_n`.
    pub fn mass(&self, source: &dyn PointSource, n: f64) -> Result<f64> {
        let spec = VanHoveSpec::single(1, n)?;
        let mut freq: BTreeMap<ClusterKey, f64> = BTreeMap::new();
        let mut total = 0.0;
        for c in &self.cells {
            let key = c.cluster.key();
            let f = match freq.get(&key) {
                Some(f) => *f,
                None => {
                    let f = single_orbit_frequency(source, &c.cluster, &spec)?.value;
                    freq.insert(key, f);
                    f
                }
            };
            total += c.window.length() * f;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    #[test]
    fn integers() {
        let z = LatticeSource::integers();
        let part = build_partition_1d_with_scan(&z, 1.0, 0.6, 50.0).unwrap();
        assert_eq!(part.ball_classes.len(), 1);
        assert_eq!(part.cells.len(), 2);
        assert!((part.total_length() - 1.0).abs() < 1e-12);
        assert!(part.cells.iter().all(|c| c.window.length() < 0.6));
        assert!((part.mass(&z, 1000.0).unwrap() - 1.0).abs() < 2e-3);
    }

    #[test]
    fn even_integers() {
        let z2 = LatticeSource::scaled_integers(2.0, 1).unwrap();
        let part = build_partition_1d_with_scan(&z2, 1.5, 0.7, 50.0).unwrap();
        assert_eq!(part.ball_classes.len(), 2);
        assert_eq!(part.cells.len(), 4);
        assert!((part.total_length() - 2.0).abs() < 1e-12);
        assert!((part.mass(&z2, 1000.0).unwrap() - 1.0).abs() < 2e-3);
    }

    #[test]
    fn preconditions() {
        let z = LatticeSource::integers();
        assert!(build_partition_1d_with_scan(&z, 0.3, 0.5, 50.0).is_err());
        assert!(build_partition_1d_with_scan(&z, 1.0, 1.5, 50.0).is_err());
    }
}
