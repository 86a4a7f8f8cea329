use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::geometry::{check_region, Cluster, Patch, Point, PointSource, Region, Representation};

/// Homogeneous Poisson process, generated independently per unit cell so that
/// nested windows see the same points. Not Delone; used as a disordered control.
pub struct PoissonSource {
    intensity: f64,
    seed: u64,
    dim: usize,
    dist: Poisson<f64>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl PoissonSource {
    pub fn new(intensity: f64, seed: u64, dim: usize) -> Result<PoissonSource> {
        if !(intensity > 0.0 && intensity.is_finite()) {
            return Err(Error::InvalidParameter("intensity must be positive".into()));
        }
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidParameter("dimension must be 1 or 2".into()));
        }
        let dist = Poisson::new(intensity).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(PoissonSource {
            intensity,
            seed,
            dim,
            dist,
        })
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    fn cell_points(&self, cell: [i64; 2]) -> Vec<Vec<f64>> {
        let h = splitmix(self.seed ^ splitmix(cell[0] as u64 ^ splitmix(cell[1] as u64).rotate_left(17)));
        let mut rng = ChaCha8Rng::seed_from_u64(h);
        let n = self.dist.sample(&mut rng) as usize;
        (0..n)
            .map(|_| {
                (0..self.dim)
                    .map(|i| cell[i] as f64 + rng.random::<f64>())
                    .collect()
            })
            .collect()
    }
}

impl PointSource for PoissonSource {
    fn name(&self) -> String {
        "poisson".into()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn colors(&self) -> usize {
        1
    }

    fn representation(&self) -> Representation {
        Representation::Float
    }

    fn window(&self, region: &Region) -> Result<Patch> {
        check_region(self.dim, region)?;
        let (lo, hi) = region.bounds();
        let range = |i: usize| {
            if i < self.dim {
                (lo[i].floor() as i64 - 1)..=(hi[i].floor() as i64 + 1)
            } else {
                0..=0
            }
        };
        let mut pts = Vec::new();
        for cy in range(1) {
            for cx in range(0) {
                for p in self.cell_points([cx, cy]) {
                    let p = Point::from_f64s(&p);
                    if region.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        Ok(Patch::new(region.clone(), Cluster::new(vec![pts])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_nested() {
        let src = PoissonSource::new(1.0, 7, 1).unwrap();
        let a = src.window(&Region::interval(0.0, 1e4)).unwrap();
        let b = src.window(&Region::interval(0.0, 1e4)).unwrap();
        assert_eq!(a.len(), b.len());
        let inner = Region::interval(12.3, 456.7);
        let c = src.window(&inner).unwrap();
        assert!(a.restrict(&inner).cluster().approx_eq(c.cluster()));
    }

    #[test]
    fn count_within_five_sigma() {
        let src = PoissonSource::new(1.0, 11, 1).unwrap();
        let n = src.window(&Region::interval(0.0, 1e4)).unwrap().len() as f64;
        assert!((n - 1e4).abs() <= 5.0 * 100.0, "count {n}");
    }
}
