use std::sync::Arc;

use crate::coord::{QuadField, TOL_EQ};
use crate::error::{Error, Result};
use crate::geometry::{Cluster, Point, Region};

/// How a source stores its coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Exact(QuadField),
    Float,
}

/// `A ∩ Λ`: the points of a colored set inside a closed region.
#[derive(Clone, Debug)]
pub struct Patch {
    region: Region,
    cluster: Cluster,
}

impl Patch {
    pub fn new(region: Region, cluster: Cluster) -> Patch {
        Patch { region, cluster }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn cluster(&self) -> &Cluster {
        &self.cluster
    }

    pub fn into_cluster(self) -> Cluster {
        self.cluster
    }

    pub fn colors(&self) -> usize {
        self.cluster.colors()
    }

    pub fn len(&self) -> usize {
        self.cluster.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cluster.is_empty()
    }

    /// Whether `p` (of the given color) is one of the patch points.
    pub fn contains_point(&self, color: usize, p: &Point) -> bool {
        let part = self.cluster.part(color);
        let v = p.pos();
        let start = part.partition_point(|q| q.pos() < v - 4.0 * TOL_EQ);
        part[start..]
            .iter()
            .take_while(|q| q.pos() <= v + 4.0 * TOL_EQ)
            .any(|q| q.approx_eq(p))
    }

    /// All points as `(position, color)` sorted by position; dimension 1.
    pub fn points_1d(&self) -> Vec<(f64, usize)> {
        let mut v: Vec<(f64, usize)> = self.cluster.support().map(|(c, p)| (p.pos(), c)).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        v
    }

    /// Support positions `(point, color)` sorted lexicographically.
    pub fn support_sorted(&self) -> Vec<(Point, usize)> {
        let mut v: Vec<(Point, usize)> = self.cluster.support().map(|(c, p)| (*p, c)).collect();
        v.sort_by(|a, b| a.0.lex_cmp(&b.0).then(a.1.cmp(&b.1)));
        v
    }

    pub fn restrict(&self, region: &Region) -> Patch {
        let parts = self
            .cluster
            .parts()
            .iter()
            .map(|part| part.iter().filter(|p| region.contains(p)).copied().collect())
            .collect();
        Patch::new(region.clone(), Cluster::new(parts))
    }
}

/// A deterministic window-query view of an infinite colored Delone set.
///
/// Implementations must return identical patches for identical regions, and
/// nested regions must give nested patches.
pub trait PointSource: Send + Sync {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn colors(&self) -> usize;
    fn representation(&self) -> Representation;
    fn window(&self, region: &Region) -> Result<Patch>;

    /// Generators of the Fourier module (dimension 1), when known in closed form.
    fn fourier_module(&self) -> Option<Vec<f64>> {
        None
    }

    /// Period for periodic sources (dimension 1).
    fn period(&self) -> Option<f64> {
        None
    }
}

pub type SharedSource = Arc<dyn PointSource>;

/// Validates a query region against a source's dimension.
pub fn check_region(source_dim: usize, region: &Region) -> Result<()> {
    region.validate()?;
    if region.dim() != source_dim {
        return Err(Error::DimensionMismatch {
            expected: source_dim,
            found: region.dim(),
        });
    }
    Ok(())
}

/// `-h + Λ`: the source seen from `h`.
pub struct Translated {
    inner: SharedSource,
    shift: Point,
}

impl Translated {
    pub fn new(inner: SharedSource, shift: Point) -> Translated {
        Translated { inner, shift }
    }

    pub fn shift(&self) -> &Point {
        &self.shift
    }
}

impl PointSource for Translated {
    fn name(&self) -> String {
        format!("{}-{}", self.inner.name(), self.shift)
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn colors(&self) -> usize {
        self.inner.colors()
    }

    fn representation(&self) -> Representation {
        match (self.inner.representation(), self.shift.is_exact()) {
            (Representation::Exact(f), true) => Representation::Exact(f),
            _ => Representation::Float,
        }
    }

    fn window(&self, region: &Region) -> Result<Patch> {
        check_region(self.dim(), region)?;
        let h = self.shift.to_f64s();
        let src = self.inner.window(&region.translate(&h))?;
        let moved = src.cluster().translate(&-self.shift)?;
        let parts = moved
            .parts()
            .iter()
            .map(|part| part.iter().filter(|p| region.contains(p)).copied().collect())
            .collect();
        Ok(Patch::new(region.clone(), Cluster::new(parts)))
    }

    fn fourier_module(&self) -> Option<Vec<f64>> {
        self.inner.fourier_module()
    }

    fn period(&self) -> Option<f64> {
        self.inner.period()
    }
}

/// A finite patch served as a source; queries must stay inside its region.
pub struct PatchSource {
    patch: Patch,
    name: String,
}

impl PatchSource {
    pub fn new(name: impl Into<String>, patch: Patch) -> PatchSource {
        PatchSource {
            patch,
            name: name.into(),
        }
    }
}

impl PointSource for PatchSource {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dim(&self) -> usize {
        self.patch.region().dim()
    }

    fn colors(&self) -> usize {
        self.patch.colors()
    }

    fn representation(&self) -> Representation {
        match self.patch.cluster().support().next() {
            Some((_, p)) if p.is_exact() => match p.coord(0) {
                crate::coord::Coordinate::Exact(q) => Representation::Exact(q.field),
                _ => Representation::Float,
            },
            _ => Representation::Float,
        }
    }

    fn window(&self, region: &Region) -> Result<Patch> {
        check_region(self.dim(), region)?;
        if !self.patch.region().contains_region(region) {
            return Err(Error::OutsidePatch);
        }
        Ok(self.patch.restrict(region))
    }
}
