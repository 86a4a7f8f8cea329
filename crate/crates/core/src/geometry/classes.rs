use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coord::TOL_EQ;
use crate::error::{Error, Result};
use crate::geometry::cluster::{key_cmp, match_clusters, ClusterKey};
use crate::geometry::{Cluster, Point, PointSource, Region};

/// Translation classes of the clusters `B_R(x) ∩ Λ`, `x ∈ supp(Λ)`, met in a scan.
#[derive(Clone, Debug)]
pub struct ClusterClassTable {
    pub radius: f64,
    /// One cluster per class, anchored at its lexicographically smallest point.
    pub representatives: Vec<Cluster>,
    pub counts: Vec<usize>,
    pub scan: Region,
}

impl ClusterClassTable {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the class `p` belongs to, if any.
    pub fn classify(&self, p: &Cluster) -> Option<usize> {
        self.representatives
            .iter()
            .position(|r| match_clusters(r, p).is_some())
    }
}

/// Points of a sorted support within closed distance `radius` of `center`.
pub(crate) fn neighbors<'a>(
    sorted: &'a [(Point, usize)],
    center: &'a Point,
    radius: f64,
) -> impl Iterator<Item = &'a (Point, usize)> + 'a {
    let x0 = center.pos();
    let start = sorted.partition_point(|(p, _)| p.pos() < x0 - radius - TOL_EQ);
    sorted[start..]
        .iter()
        .take_while(move |(p, _)| p.pos() <= x0 + radius + TOL_EQ)
        .filter(move |(p, _)| p.dist(center) <= radius + TOL_EQ)
}

/// Enumerates the classes of `B_R(x) ∩ Λ` for every `x ∈ supp(Λ) ∩ scan`.
pub fn enumerate_cluster_classes(
    source: &dyn PointSource,
    radius: f64,
    scan: &Region,
) -> Result<ClusterClassTable> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let patch = source.window(&scan.dilate(radius))?;
    let sorted = patch.support_sorted();
    let colors = source.colors();
    let anchors: Vec<&(Point, usize)> = sorted.iter().filter(|(p, _)| scan.contains(p)).collect();
    if anchors.is_empty() {
        return Err(Error::ScanTooSmall);
    }
    let found: Vec<(ClusterKey, Cluster)> = anchors
        .par_iter()
        .map(|(x, _)| {
            let c = Cluster::from_colored(
                colors,
                neighbors(&sorted, x, radius).map(|(p, col)| (*col, *p)),
            );
            let (canon, _) = c.canonical().expect("contains its center");
            (canon.key(), canon)
        })
        .collect();
    let mut classes: BTreeMap<ClusterKey, (Cluster, usize)> = BTreeMap::new();
    for (key, c) in found {
        classes.entry(key).or_insert((c, 0)).1 += 1;
    }
    let mut entries: Vec<(ClusterKey, (Cluster, usize))> = classes.into_iter().collect();
    entries.sort_by(|a, b| key_cmp(&a.0, &b.0));
    let (representatives, counts) = entries.into_iter().map(|(_, v)| v).unzip();
    Ok(ClusterClassTable {
        radius,
        representatives,
        counts,
        scan: scan.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    #[test]
    fn integer_lattice_classes() {
        let z = LatticeSource::integers();
        let scan = Region::interval(-50.0, 50.0);
        let t = enumerate_cluster_classes(&z, 0.4, &scan).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.representatives[0].len(), 1);
        assert_eq!(t.counts[0], 101);
        let t = enumerate_cluster_classes(&z, 1.0, &scan).unwrap();
        assert_eq!(t.len(), 1);
        let pos: Vec<f64> = t.representatives[0].part(0).iter().map(|p| p.pos()).collect();
        assert_eq!(pos, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn empty_scan_is_an_error() {
        let z = LatticeSource::integers();
        let r = enumerate_cluster_classes(&z, 1.0, &Region::interval(0.2, 0.8));
        assert!(matches!(r, Err(Error::ScanTooSmall)));
    }
}
