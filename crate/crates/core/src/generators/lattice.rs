use crate::error::{Error, Result};
use crate::geometry::{check_region, Cluster, Patch, Point, PointSource, Region, Representation};

/// A lattice `origin + Σ n_i e_i`, colored by the residues `n_i mod k_i`.
#[derive(Clone, Debug)]
pub struct LatticeSource {
    basis: Vec<Vec<f64>>,
    inverse: Vec<Vec<f64>>,
    origin: Vec<f64>,
    moduli: Vec<u32>,
}

impl LatticeSource {
    pub fn new(basis: Vec<Vec<f64>>, origin: Vec<f64>, moduli: Vec<u32>) -> Result<LatticeSource> {
        let d = basis.len();
        if !(1..=2).contains(&d) || basis.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidParameter("basis must be 1x1 or 2x2".into()));
        }
        if origin.len() != d || moduli.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: origin.len().min(moduli.len()),
            });
        }
        if moduli.contains(&0) {
            return Err(Error::InvalidParameter("color modulus must be positive".into()));
        }
        let inverse = match d {
            1 => {
                if basis[0][0].abs() < 1e-12 {
                    return Err(Error::SingularBasis);
                }
                vec![vec![1.0 / basis[0][0]]]
            }
            _ => {
                // columns are basis vectors: x = B n
                let (a, b, c, dd) = (basis[0][0], basis[1][0], basis[0][1], basis[1][1]);
                let det = a * dd - b * c;
                if det.abs() < 1e-12 {
                    return Err(Error::SingularBasis);
                }
                vec![vec![dd / det, -b / det], vec![-c / det, a / det]]
            }
        };
        Ok(LatticeSource {
            basis,
            inverse,
            origin,
            moduli,
        })
    }

    /// `ℤ`, one color.
    pub fn integers() -> LatticeSource {
        LatticeSource::new(vec![vec![1.0]], vec![0.0], vec![1]).expect("valid")
    }

    /// `s·ℤ` with `colors` colors assigned by `n mod colors`.
    pub fn scaled_integers(s: f64, colors: u32) -> Result<LatticeSource> {
        LatticeSource::new(vec![vec![s]], vec![0.0], vec![colors])
    }

    /// `ℤ + shift`, one color.
    pub fn shifted_integers(shift: f64) -> LatticeSource {
        LatticeSource::new(vec![vec![1.0]], vec![shift], vec![1]).expect("valid")
    }

    /// `ℤ²`, one color.
    pub fn square() -> LatticeSource {
        LatticeSource::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![0.0, 0.0],
            vec![1, 1],
        )
        .expect("valid")
    }

    fn color_of(&self, n: &[i64]) -> usize {
        let mut color = 0usize;
        let mut radix = 1usize;
        for (ni, &k) in n.iter().zip(&self.moduli) {
            color += radix * ni.rem_euclid(k as i64) as usize;
            radix *= k as usize;
        }
        color
    }

    fn point_at(&self, n: &[i64]) -> Vec<f64> {
        let d = self.basis.len();
        (0..d)
            .map(|i| {
                self.origin[i]
                    + (0..d)
                        .map(|j| self.basis[j][i] * n[j] as f64)
                        .sum::<f64>()
            })
            .collect()
    }
}

impl PointSource for LatticeSource {
    fn name(&self) -> String {
        "lattice".into()
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn colors(&self) -> usize {
        self.moduli.iter().map(|&k| k as usize).product()
    }

    fn representation(&self) -> Representation {
        Representation::Float
    }

    fn window(&self, region: &Region) -> Result<Patch> {
        check_region(self.dim(), region)?;
        let d = self.dim();
        let (lo, hi) = region.bounds();
        // index-space bounding box of the region's bounding box
        let corners: Vec<Vec<f64>> = match d {
            1 => vec![vec![lo[0]], vec![hi[0]]],
            _ => vec![
                vec![lo[0], lo[1]],
                vec![lo[0], hi[1]],
                vec![hi[0], lo[1]],
                vec![hi[0], hi[1]],
            ],
        };
        let mut nlo = vec![f64::INFINITY; d];
        let mut nhi = vec![f64::NEG_INFINITY; d];
        for c in &corners {
            for j in 0..d {
                let v: f64 = (0..d)
                    .map(|i| self.inverse[j][i] * (c[i] - self.origin[i]))
                    .sum();
                nlo[j] = nlo[j].min(v);
                nhi[j] = nhi[j].max(v);
            }
        }
        let span = |j: usize| {
            let lo = (nlo[j] - 1e-6).floor() as i64;
            let hi = (nhi[j] + 1e-6).ceil() as i64;
            lo..=hi
        };
        let mut parts = vec![Vec::new(); self.colors()];
        let mut push = |n: &[i64]| {
            let x = self.point_at(n);
            if region.contains_f64(&x) {
                parts[self.color_of(n)].push(Point::from_f64s(&x));
            }
        };
        match d {
            1 => {
                for n0 in span(0) {
                    push(&[n0]);
                }
            }
            _ => {
                for n0 in span(0) {
                    for n1 in span(1) {
                        push(&[n0, n1]);
                    }
                }
            }
        }
        Ok(Patch::new(region.clone(), Cluster::new(parts)))
    }

    fn fourier_module(&self) -> Option<Vec<f64>> {
        (self.dim() == 1).then(|| vec![1.0 / (self.basis[0][0].abs() * self.moduli[0] as f64)])
    }

    fn period(&self) -> Option<f64> {
        (self.dim() == 1).then(|| self.basis[0][0].abs() * self.moduli[0] as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let z = LatticeSource::integers();
        assert_eq!(z.window(&Region::interval(0.0, 5.0)).unwrap().len(), 6);
        assert_eq!(z.window(&Region::interval(0.0, 2.0)).unwrap().len(), 3);
        assert_eq!(z.window(&Region::interval(0.1, 0.9)).unwrap().len(), 0);
        let z2 = LatticeSource::square();
        assert_eq!(z2.window(&Region::rect(&[0.0, 0.0], &[2.0, 2.0])).unwrap().len(), 9);
    }

    #[test]
    fn alternating_colors() {
        let two = LatticeSource::scaled_integers(2.0, 2).unwrap();
        let p = two.window(&Region::interval(0.0, 10.0)).unwrap();
        let pts = p.points_1d();
        for (x, c) in pts {
            assert_eq!(c, ((x as i64).rem_euclid(4) / 2) as usize);
        }
    }

    #[test]
    fn singular_basis() {
        let r = LatticeSource::new(
            vec![vec![1.0, 2.0], vec![2.0, 4.0]],
            vec![0.0, 0.0],
            vec![1, 1],
        );
        assert!(matches!(r, Err(Error::SingularBasis)));
        assert!(matches!(
            LatticeSource::scaled_integers(0.0, 1),
            Err(Error::SingularBasis)
        ));
    }
}
