use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Patch, PointSource};
use crate::spectra::{pairwise_sum, pairwise_sum_c, WeightVector};
use crate::statistics::VanHoveSpec;

/// Relative intensity drop tolerated between the two largest averaging regions.
pub const DRIFT_TOL: f64 = 0.2;

/// Integer coefficient bound for candidates seeded from the Fourier module.
const SEED_BOUND: i64 = 20;

/// `(position, weight)` pairs of a patch, in patch order.
fn weighted(patch: &Patch, w: &WeightVector) -> Vec<(Vec<f64>, Complex64)> {
    patch
        .support_sorted()
        .into_iter()
        .map(|(p, c)| (p.to_f64s(), w.get(c)))
        .collect()
}

fn amplitude_of(pts: &[(Vec<f64>, Complex64)], k: &[f64], vol: f64) -> Complex64 {
    let terms: Vec<Complex64> = pts
        .iter()
        .map(|(x, a)| {
            let phase: f64 = x.iter().zip(k).map(|(xi, ki)| xi * ki).sum();
            a * Complex64::from_polar(1.0, -2.0 * PI * phase)
        })
        .collect();
    pairwise_sum_c(&terms) / vol
}

/// `A_n(k) = (1/Vol F_n) Σ_{x ∈ Λ ∩ F_n} w(x) e^{-2πi k·x}`.
pub fn bragg_amplitude(source: &dyn PointSource, w: &WeightVector, k: &[f64], spec: &VanHoveSpec, n: f64) -> Result<Complex64> {
    w.check(source.colors())?;
    if k.len() != source.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: k.len(),
        });
    }
    let patch = source.window(&spec.region(n))?;
    Ok(amplitude_of(&weighted(&patch, w), k, spec.volume(n)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffractionEntry {
    pub k: f64,
    /// `A_n(k)` at the largest `n`.
    pub amplitude: Complex64,
    pub intensity: f64,
    /// Intensity at the scan size `n₁`.
    pub intensity_n1: f64,
    pub n: f64,
    pub retained: bool,
}

impl DiffractionEntry {
    pub fn ratio(&self) -> f64 {
        if self.intensity_n1 > 0.0 {
            self.intensity / self.intensity_n1
        } else {
            0.0
        }
    }
}

/// Peak candidates of a one-dimensional scan, sorted by `k`.
#[derive(Clone, Debug, Serialize)]
pub struct DiffractionEstimate {
    pub entries: Vec<DiffractionEntry>,
    pub n1: f64,
    pub n2: f64,
    pub k_range: (f64, f64),
    pub resolution: f64,
    pub threshold: f64,
    pub noise_floor: f64,
}

impl DiffractionEstimate {
    pub fn retained(&self) -> impl Iterator<Item = &DiffractionEntry> {
        self.entries.iter().filter(|e| e.retained)
    }

    /// The retained entry closest to `k`, within `tol`.
    pub fn peak_near(&self, k: f64, tol: f64) -> Option<&DiffractionEntry> {
        self.retained()
            .filter(|e| (e.k - k).abs() <= tol)
            .min_by(|a, b| (a.k - k).abs().total_cmp(&(b.k - k).abs()))
    }
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    if v.is_empty() {
        0.0
    } else {
        v[v.len() / 2]
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

/// Integer combinations of the module generators inside `[lo, hi]`.
fn module_seeds(gens: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    for g in gens {
        let mut next = Vec::new();
        for base in &out {
            for m in -SEED_BOUND..=SEED_BOUND {
                next.push(base + m as f64 * g);
            }
        }
        next.sort_by(f64::total_cmp);
        next.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        out = next;
    }
    out.retain(|k| *k >= lo - 1e-12 && *k <= hi + 1e-12);
    out
}

/// Scans `|A_{n₁}(k)|²` over `k_range` and keeps candidates whose intensity does
/// not decay between the two largest `n` of the schedule.
///
/// `resolution` defaults to `1/(4 Vol F_{n₁})`-ish spacing, fine enough to land
/// inside every main lobe.
pub fn peak_scan(
    source: &dyn PointSource,
    w: &WeightVector,
    k_range: (f64, f64),
    resolution: Option<f64>,
    schedule: &VanHoveSpec,
) -> Result<DiffractionEstimate> {
    w.check(source.colors())?;
    if source.dim() != 1 {
        return Err(Error::Unsupported("peak scans are one-dimensional".into()));
    }
    let ns = &schedule.schedule;
    if ns.len() < 2 {
        return Err(Error::EmptySchedule(ns.len()));
    }
    let (klo, khi) = k_range;
    if !(klo.is_finite() && khi.is_finite() && klo < khi) {
        return Err(Error::InvalidParameter(format!("bad k range [{klo}, {khi}]")));
    }
    let n1 = ns[ns.len() - 2];
    let n2 = ns[ns.len() - 1];
    let vol1 = schedule.volume(n1);
    let vol2 = schedule.volume(n2);
    let step = resolution.unwrap_or(1.0 / (2.0 * vol1));
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let pts1 = weighted(&source.window(&schedule.region(n1))?, w);
    let pts2 = weighted(&source.window(&schedule.region(n2))?, w);
    let int1 = |k: f64| amplitude_of(&pts1, &[k], vol1).norm_sqr();

    let count = ((khi - klo) / step).ceil() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|j| (klo + j as f64 * step).min(khi)).collect();
    let coarse: Vec<f64> = grid.par_iter().map(|k| int1(*k)).collect();
    let noise_floor = median(&coarse);
    let threshold = 10.0 * noise_floor.max(1.0 / (vol1 * vol1));

    let mut cands: Vec<f64> = (0..count)
        .filter(|&j| {
            let v = coarse[j];
            v > threshold && (j == 0 || coarse[j - 1] <= v) && (j + 1 == count || coarse[j + 1] < v)
        })
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&j| {
            let a = (grid[j] - step).max(klo);
            let b = (grid[j] + step).min(khi);
            golden_max(int1, a, b, step * 1e-4)
        })
        .collect();

    let seeds = match (source.fourier_module(), source.period()) {
        (Some(gens), _) => module_seeds(&gens, klo, khi),
        (None, Some(p)) => module_seeds(&[1.0 / p], klo, khi),
        _ => Vec::new(),
    };
    let seeds: Vec<f64> = seeds.into_par_iter().filter(|k| int1(*k) > threshold).collect();
    for c in cands.iter_mut() {
        if let Some(s) = seeds.iter().find(|s| (**s - *c).abs() <= step) {
            *c = *s;
        }
    }
    cands.extend(seeds);
    cands.sort_by(f64::total_cmp);
    cands.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    let entries = cands
        .par_iter()
        .map(|&k| {
            let i1 = int1(k);
            let a2 = amplitude_of(&pts2, &[k], vol2);
            let i2 = a2.norm_sqr();
            DiffractionEntry {
                k,
                amplitude: a2,
                intensity: i2,
                intensity_n1: i1,
                n: n2,
                retained: i2 >= (1.0 - DRIFT_TOL) * i1,
            }
        })
        .collect();
    Ok(DiffractionEstimate {
        entries,
        n1,
        n2,
        k_range,
        resolution: step,
        threshold,
        noise_floor,
    })
}

/// Total retained intensity, for quick sanity summaries.
pub fn retained_intensity(est: &DiffractionEstimate) -> f64 {
    let v: Vec<f64> = est.retained().map(|e| e.intensity).collect();
    pairwise_sum(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    #[test]
    fn lattice_amplitudes() {
        let z = LatticeSource::integers();
        let w = WeightVector::ones(1);
        let spec = VanHoveSpec::single(1, 1000.0).unwrap();
        let a0 = bragg_amplitude(&z, &w, &[0.0], &spec, 1000.0).unwrap();
        assert!((a0.re - 2001.0 / 2000.0).abs() < 1e-12);
        let ah = bragg_amplitude(&z, &w, &[0.5], &spec, 1000.0).unwrap();
        assert!(ah.norm() <= 1.0 / 2000.0 + 1e-12);
    }

    #[test]
    fn alternating_comb_half_integers() {
        let z = LatticeSource::scaled_integers(1.0, 2).unwrap();
        let w = WeightVector::real(&[1.0, -1.0]).unwrap();
        let spec = VanHoveSpec::new(1, vec![500.0, 1000.0]).unwrap();
        let est = peak_scan(&z, &w, (-1.0, 1.0), None, &spec).unwrap();
        let ks: Vec<f64> = est.retained().map(|e| e.k).collect();
        assert_eq!(ks, vec![-0.5, 0.5]);
        for e in est.retained() {
            assert!((e.intensity - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn short_schedule_rejected() {
        let z = LatticeSource::integers();
        let spec = VanHoveSpec::single(1, 100.0).unwrap();
        let r = peak_scan(&z, &WeightVector::ones(1), (0.0, 1.0), None, &spec);
        assert!(matches!(r, Err(Error::EmptySchedule(1))));
    }
}
