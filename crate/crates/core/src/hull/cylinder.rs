use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Cluster, Patch, Point, Region, SharedSource, Translated};
use crate::hull::Interval;

/// `X_{P,V} = {Γ : -g + P ⊂ Γ for some g ∈ V}` in dimension 1.
#[derive(Clone, Debug, Serialize)]
pub struct CylinderSpec {
    #[serde(skip)]
    pub cluster: Cluster,
    pub window: Interval,
}

impl CylinderSpec {
    pub fn new(cluster: Cluster, window: Interval) -> CylinderSpec {
        CylinderSpec { cluster, window }
    }

    /// Region a patch must cover to decide membership.
    pub fn footprint(&self) -> Result<Region> {
        let (lo, hi) = self.cluster.span_1d().ok_or(Error::EmptyCluster)?;
        Ok(Region::interval(lo - self.window.hi, hi - self.window.lo))
    }
}

/// Translates `-h + Λ` as window-query sources.
pub fn orbit_sources(source: &SharedSource, offsets: &[f64]) -> Vec<SharedSource> {
    offsets
        .iter()
        .map(|&h| {
            if h == 0.0 {
                source.clone()
            } else {
                Arc::new(Translated::new(source.clone(), Point::x(h))) as SharedSource
            }
        })
        .collect()
}

/// Patches `A ∩ (-h + Λ)` for each offset `h`.
pub fn sample_orbit(source: &SharedSource, offsets: &[f64], region: &Region) -> Result<Vec<Patch>> {
    orbit_sources(source, offsets).iter().map(|s| s.window(region)).collect()
}

/// Decides `Γ ∈ X_{P,V}` from a patch of `Γ`.
pub fn cylinder_contains(patch: &Patch, c: &CylinderSpec) -> Result<bool> {
    if patch.region().dim() != 1 {
        return Err(Error::Unsupported("cylinders are implemented in dimension 1".into()));
    }
    let (color, anchor) = c.cluster.anchor().ok_or(Error::EmptyCluster)?;
    if !patch.region().contains_region(&c.footprint()?) {
        return Err(Error::PatchTooSmall);
    }
    let a = anchor.pos();
    for q in patch.cluster().part(color) {
        let g = a - q.pos();
        if !c.window.contains(g) {
            continue;
        }
        // -g + P = (q - anchor) + P
        let shift = *q - anchor;
        if c.cluster.support().all(|(k, y)| patch.contains_point(k, &(shift + *y))) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;
    use crate::geometry::PointSource;

    fn single() -> Cluster {
        Cluster::single(1, 0, Point::x(0.0))
    }

    #[test]
    fn lattice_cylinders() {
        let z = LatticeSource::integers();
        let patch = z.window(&Region::interval(-5.0, 5.0)).unwrap();
        assert!(cylinder_contains(&patch, &CylinderSpec::new(single(), Interval::closed(-0.2, 0.2))).unwrap());
        assert!(!cylinder_contains(&patch, &CylinderSpec::new(single(), Interval::closed(0.3, 0.4))).unwrap());
        let shifted = LatticeSource::shifted_integers(0.35);
        let patch = shifted.window(&Region::interval(-5.0, 5.0)).unwrap();
        assert!(!cylinder_contains(&patch, &CylinderSpec::new(single(), Interval::closed(0.3, 0.4))).unwrap());
        // ℤ + 0.35 contains -0.65 = -g with g = 0.65
        assert!(cylinder_contains(&patch, &CylinderSpec::new(single(), Interval::closed(0.6, 0.7))).unwrap());
    }

    #[test]
    fn too_small_patch_is_an_error() {
        let z = LatticeSource::integers();
        let patch = z.window(&Region::interval(0.0, 1.0)).unwrap();
        let c = CylinderSpec::new(single(), Interval::closed(-3.0, -2.0));
        assert!(matches!(cylinder_contains(&patch, &c), Err(Error::PatchTooSmall)));
    }

    #[test]
    fn orbit_translates() {
        let z: SharedSource = Arc::new(LatticeSource::integers());
        let p = sample_orbit(&z, &[0.5, 0.0], &Region::interval(-1.0, 1.0)).unwrap();
        let xs: Vec<f64> = p[0].points_1d().iter().map(|q| q.0).collect();
        assert_eq!(xs, vec![-0.5, 0.5]);
        assert_eq!(p[1].len(), 3);
    }
}
