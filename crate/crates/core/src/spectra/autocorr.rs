use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coord::{CoordKey, TOL_EQ};
use crate::error::{Error, Result};
use crate::geometry::{Cluster, Point, PointSource, Region};
use crate::spectra::{pairwise_sum_c, WeightVector};
use crate::statistics::{estimate_frequency, VanHoveSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutocorrMethod {
    Frequency,
    Direct,
}

impl AutocorrMethod {
    pub fn name(self) -> &'static str {
        match self {
            AutocorrMethod::Frequency => "frequency",
            AutocorrMethod::Direct => "direct",
        }
    }
}

/// Coefficients `c(t)` of the autocorrelation `γ = Σ c(t) δ_t` on `|t| ≤ radius`.
#[derive(Clone, Debug)]
pub struct AutocorrelationMeasure {
    pub radius: f64,
    pub method: AutocorrMethod,
    pub n: f64,
    /// Sorted lexicographically by `t`.
    pub entries: Vec<(Point, Complex64)>,
}

impl AutocorrelationMeasure {
    fn from_map(radius: f64, method: AutocorrMethod, n: f64, map: BTreeMap<[CoordKey; 2], (Point, Complex64)>) -> Self {
        let mut entries: Vec<(Point, Complex64)> = map.into_values().collect();
        entries.sort_by(|a, b| a.0.lex_cmp(&b.0));
        AutocorrelationMeasure {
            radius,
            method,
            n,
            entries,
        }
    }

    /// `c(t)`, zero off the support.
    pub fn get(&self, t: &Point) -> Complex64 {
        let v = t.pos();
        let start = self.entries.partition_point(|e| e.0.pos() < v - 4.0 * TOL_EQ);
        self.entries[start..]
            .iter()
            .take_while(|e| e.0.pos() <= v + 4.0 * TOL_EQ)
            .find(|e| e.0.approx_eq(t))
            .map_or(Complex64::new(0.0, 0.0), |e| e.1)
    }

    /// `max_t |c(t) - c'(t)|` over the union of supports.
    pub fn max_diff(&self, other: &AutocorrelationMeasure) -> f64 {
        let a = self.entries.iter().map(|(t, c)| (c - other.get(t)).norm());
        let b = other.entries.iter().map(|(t, c)| (c - self.get(t)).norm());
        a.chain(b).fold(0.0, f64::max)
    }

    /// `max_t |c(-t) - conj c(t)|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|(t, c)| (self.get(&-*t) - c.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Smallest value of `Σ z_p conj(z_q) c(t_p - t_q)` over random test vectors built
    /// from support points within `radius/2`.
    pub fn positive_definiteness_min(&self, trials: usize, size: usize, seed: u64) -> f64 {
        let pts: Vec<Point> = self
            .entries
            .iter()
            .map(|e| e.0)
            .filter(|t| t.norm() <= self.radius / 2.0)
            .collect();
        if pts.is_empty() {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = f64::INFINITY;
        for _ in 0..trials {
            let ts: Vec<Point> = (0..size).map(|_| pts[rng.random_range(0..pts.len())]).collect();
            let zs: Vec<Complex64> = (0..size)
                .map(|_| Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
                .collect();
            let mut q = Complex64::new(0.0, 0.0);
            for p in 0..size {
                for r in 0..size {
                    q += zs[p] * zs[r].conj() * self.get(&(ts[p] - ts[r]));
                }
            }
            worst = worst.min(q.re);
        }
        worst
    }
}

fn in_ball(t: &Point, radius: f64) -> bool {
    t.norm() <= radius + TOL_EQ
}

const CHUNK: usize = 512;

type Buckets = BTreeMap<[CoordKey; 2], (Point, Vec<Complex64>)>;

/// `c(t) = (1/Vol F_n) Σ_{x,y ∈ F_n, x-y=t} w(x) conj(w(y))` by direct enumeration.
pub fn autocorr_direct(
    source: &dyn PointSource,
    w: &WeightVector,
    radius: f64,
    spec: &VanHoveSpec,
) -> Result<AutocorrelationMeasure> {
    w.check(source.colors())?;
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let n = spec.largest();
    let patch = source.window(&spec.region(n))?;
    let pts = patch.support_sorted();
    let vol = spec.volume(n);
    // fixed-size chunks merged in chunk order keep the summation order independent of threads
    let partial: Vec<Buckets> = pts
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut map = Buckets::new();
            for (x, cx) in chunk {
                let wx = w.get(*cx);
                let lo = pts.partition_point(|(p, _)| p.pos() < x.pos() - radius - TOL_EQ);
                for (y, cy) in pts[lo..].iter().take_while(|(p, _)| p.pos() <= x.pos() + radius + TOL_EQ) {
                    let t = *x - *y;
                    if !in_ball(&t, radius) {
                        continue;
                    }
                    let e = map.entry(t.key()).or_insert_with(|| (t, Vec::new()));
                    e.1.push(wx * w.get(*cy).conj());
                }
            }
            map
        })
        .collect();
    let mut merged = Buckets::new();
    for m in partial {
        for (k, (t, mut v)) in m {
            merged.entry(k).or_insert_with(|| (t, Vec::new())).1.append(&mut v);
        }
    }
    let map = merged
        .into_iter()
        .map(|(k, (t, v))| (k, (t, pairwise_sum_c(&v) / vol)))
        .collect();
    Ok(AutocorrelationMeasure::from_map(radius, AutocorrMethod::Direct, n, map))
}

/// Difference vectors `t = y - z` with `|t| ≤ radius` per color pair, from a scan window.
fn candidate_differences(source: &dyn PointSource, radius: f64, half: f64) -> Result<Vec<(usize, usize, Point)>> {
    let patch = source.window(&Region::cube(source.dim(), half))?;
    let pts = patch.support_sorted();
    let mut seen: BTreeMap<(usize, usize, [CoordKey; 2]), Point> = BTreeMap::new();
    for (y, cy) in &pts {
        let lo = pts.partition_point(|(p, _)| p.pos() < y.pos() - radius - TOL_EQ);
        for (z, cz) in pts[lo..].iter().take_while(|(p, _)| p.pos() <= y.pos() + radius + TOL_EQ) {
            let t = *y - *z;
            if in_ball(&t, radius) {
                seen.entry((*cy, *cz, t.key())).or_insert(t);
            }
        }
    }
    Ok(seen.into_iter().map(|((i, j, _), t)| (i, j, t)).collect())
}

/// `c(t) = Σ_{i,j} a_i conj(a_j) freq((y, z))`, `y ∈ Λ_i`, `z ∈ Λ_j`, `y - z = t`,
/// with each two-point frequency estimated along `F_n` from the origin.
pub fn autocorr_from_frequencies(
    source: &dyn PointSource,
    w: &WeightVector,
    radius: f64,
    spec: &VanHoveSpec,
) -> Result<AutocorrelationMeasure> {
    w.check(source.colors())?;
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let n = spec.largest();
    let m = source.colors();
    let scan = (50.0 * radius).max(500.0).min(n);
    let cands = candidate_differences(source, radius, scan)?;
    let single = VanHoveSpec::single(spec.dim, n)?;
    let origin = vec![vec![0.0; spec.dim]];
    let terms = cands
        .par_iter()
        .map(|(i, j, t)| {
            let zero = t.zero_like();
            let cluster = Cluster::from_colored(m, [(*i, zero), (*j, -*t)]);
            let f = estimate_frequency(source, &cluster, &single, &origin)?.value;
            Ok((*t, w.get(*i) * w.get(*j).conj() * f))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut grouped = Buckets::new();
    for (t, c) in terms {
        grouped.entry(t.key()).or_insert_with(|| (t, Vec::new())).1.push(c);
    }
    let map = grouped
        .into_iter()
        .map(|(k, (t, v))| (k, (t, pairwise_sum_c(&v))))
        .collect();
    Ok(AutocorrelationMeasure::from_map(radius, AutocorrMethod::Frequency, n, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    #[test]
    fn lattice_both_routes() {
        let z = LatticeSource::integers();
        let w = WeightVector::ones(1);
        let spec = VanHoveSpec::single(1, 1000.0).unwrap();
        let f = autocorr_from_frequencies(&z, &w, 5.0, &spec).unwrap();
        let d = autocorr_direct(&z, &w, 5.0, &spec).unwrap();
        assert_eq!(f.entries.len(), 11);
        for t in -5..=5 {
            let c = d.get(&Point::x(t as f64));
            assert!((c.re - 1.0).abs() <= 1e-2 && c.im == 0.0);
        }
        assert!((d.get(&Point::x(1.0)).re - 1.0).abs() <= 1e-3);
        assert_eq!(f.get(&Point::x(0.5)), Complex64::new(0.0, 0.0));
        assert!(f.max_diff(&d) < 1e-12);
        assert!(d.hermitian_defect() <= 1e-12);
    }

    #[test]
    fn alternating_comb() {
        let z = LatticeSource::scaled_integers(1.0, 2).unwrap();
        let w = WeightVector::real(&[1.0, -1.0]).unwrap();
        let spec = VanHoveSpec::single(1, 1000.0).unwrap();
        let f = autocorr_from_frequencies(&z, &w, 3.0, &spec).unwrap();
        for t in -3i32..=3 {
            let c = f.get(&Point::x(t as f64)).re;
            let want = if t % 2 == 0 { 1.0 } else { -1.0 };
            assert!((c - want).abs() <= 1e-2, "t = {t}: {c}");
        }
        assert!(f.positive_definiteness_min(20, 8, 1) >= -1e-2);
    }
}
