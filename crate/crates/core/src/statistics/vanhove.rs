use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Region;

/// Centered cubes `F_n = [-n, n]^d` along a schedule of `n` values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanHoveSpec {
    pub dim: usize,
    pub schedule: Vec<f64>,
}

/// `F_n` together with boundary-layer ratios `Vol((∂F_n)^{+r}) / Vol(F_n)`.
#[derive(Clone, Debug)]
pub struct VanHoveRegion {
    pub n: f64,
    pub region: Region,
    pub ratios: Vec<(f64, f64)>,
}

impl VanHoveSpec {
    pub const DEFAULT_SCHEDULE: [f64; 5] = [125.0, 250.0, 500.0, 1000.0, 2000.0];

    pub fn new(dim: usize, schedule: Vec<f64>) -> Result<VanHoveSpec> {
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidParameter("dimension must be 1 or 2".into()));
        }
        if schedule.is_empty() {
            return Err(Error::EmptySchedule(1));
        }
        if schedule.iter().any(|n| !(*n > 0.0 && n.is_finite())) {
            return Err(Error::InvalidParameter("schedule entries must be positive".into()));
        }
        let mut schedule = schedule;
        schedule.sort_by(f64::total_cmp);
        schedule.dedup();
        Ok(VanHoveSpec { dim, schedule })
    }

    pub fn default_for(dim: usize) -> VanHoveSpec {
        VanHoveSpec::new(dim, Self::DEFAULT_SCHEDULE.to_vec()).expect("valid")
    }

    /// A single-entry schedule.
    pub fn single(dim: usize, n: f64) -> Result<VanHoveSpec> {
        VanHoveSpec::new(dim, vec![n])
    }

    /// `n₀·2^k` for `k < count`.
    pub fn geometric(dim: usize, n0: f64, count: usize) -> Result<VanHoveSpec> {
        VanHoveSpec::new(dim, (0..count).map(|k| n0 * 2f64.powi(k as i32)).collect())
    }

    pub fn largest(&self) -> f64 {
        *self.schedule.last().expect("nonempty")
    }

    pub fn region(&self, n: f64) -> Region {
        Region::cube(self.dim, n)
    }

    pub fn volume(&self, n: f64) -> f64 {
        (2.0 * n).powi(self.dim as i32)
    }

    /// `Vol((∂F_n)^{+r}) / Vol(F_n)` with the sup-norm neighbourhood.
    pub fn boundary_ratio(&self, n: f64, r: f64) -> f64 {
        let d = self.dim as i32;
        let outer = (2.0 * (n + r)).powi(d);
        let inner = (2.0 * (n - r)).max(0.0).powi(d);
        (outer - inner) / self.volume(n)
    }

    /// The constant `K` with `Vol(F_n - F_n) ≤ K·Vol(F_n)`; `F_n - F_n = F_{2n}`.
    pub fn difference_constant(&self) -> f64 {
        2f64.powi(self.dim as i32)
    }
}

pub fn van_hove_region(spec: &VanHoveSpec, n: f64, rs: &[f64]) -> VanHoveRegion {
    VanHoveRegion {
        n,
        region: spec.region(n),
        ratios: rs.iter().map(|&r| (r, spec.boundary_ratio(n, r))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_ratios() {
        let s1 = VanHoveSpec::single(1, 100.0).unwrap();
        assert!((s1.boundary_ratio(100.0, 1.0) - 0.02).abs() < 1e-15);
        let s2 = VanHoveSpec::single(2, 10.0).unwrap();
        assert!((s2.boundary_ratio(10.0, 1.0) - 0.4).abs() < 1e-12);
        let spec = VanHoveSpec::default_for(1);
        for r in [1.0, 10.0] {
            let ratios: Vec<f64> = spec.schedule.iter().map(|&n| spec.boundary_ratio(n, r)).collect();
            assert!(ratios.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn difference_constant() {
        for d in [1, 2] {
            let spec = VanHoveSpec::default_for(d);
            for &n in &spec.schedule {
                let diff = spec.volume(2.0 * n);
                assert!((diff - spec.difference_constant() * spec.volume(n)).abs() <= 1e-9 * diff);
            }
        }
        assert_eq!(VanHoveSpec::default_for(1).difference_constant(), 2.0);
    }
}
