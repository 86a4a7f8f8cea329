use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{delone_params, Cluster, PointSource, Region};
use crate::statistics::{count_cluster, VanHoveSpec};

/// One `(n, offset)` evaluation of `L_P(x + F_n) / Vol(F_n)`.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyRow {
    pub n: f64,
    pub offset: Vec<f64>,
    pub count: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct FrequencyEstimate {
    pub cluster: Cluster,
    /// Offset-averaged ratio per schedule entry.
    pub per_n: Vec<(f64, f64)>,
    /// Per-offset ratios at the largest `n`.
    pub per_offset: Vec<(Vec<f64>, f64)>,
    pub value: f64,
    /// `max_x |L_P(x + F_n)/Vol F_n − value|` at the largest `n`.
    pub uniformity_gap: f64,
    /// `|v(n_{k+1}) − v(n_k)|` between successive schedule entries.
    pub cauchy_gaps: Vec<f64>,
    pub rows: Vec<FrequencyRow>,
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// The first `count` Halton points scaled to `[0, span]^dim`; the first is the origin.
pub fn halton_offsets(count: usize, dim: usize, span: f64) -> Vec<Vec<f64>> {
    const BASES: [u64; 2] = [2, 3];
    (0..count as u64)
        .map(|i| (0..dim).map(|k| span * radical_inverse(i, BASES[k])).collect())
        .collect()
}

/// Probe span for uniformity offsets: the period if known, else `10·b`.
pub fn default_offset_span(source: &dyn PointSource) -> Result<f64> {
    if let Some(p) = source.period() {
        return Ok(p);
    }
    let d = source.dim();
    let params = delone_params(source, &Region::cube(d, 50.0))?;
    Ok(10.0 * params.b)
}

/// Frequency of `P` along `x + F_n` for each offset and schedule entry.
///
/// With `offsets = [0]` this is the single-orbit frequency `freq′`.
pub fn estimate_frequency(
    source: &dyn PointSource,
    p: &Cluster,
    spec: &VanHoveSpec,
    offsets: &[Vec<f64>],
) -> Result<FrequencyEstimate> {
    if offsets.is_empty() {
        return Err(Error::InvalidParameter("need at least one offset".into()));
    }
    if p.is_empty() {
        return Err(Error::EmptyCluster);
    }
    if offsets.iter().any(|o| o.len() != spec.dim) || p.dim() != Some(spec.dim) || source.dim() != spec.dim {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: spec.dim,
        });
    }
    let jobs: Vec<(f64, &Vec<f64>)> = spec
        .schedule
        .iter()
        .flat_map(|&n| offsets.iter().map(move |o| (n, o)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(n, o)| {
            let region = spec.region(n).translate(o);
            let count = count_cluster(source, p, &region)?;
            Ok(FrequencyRow {
                n,
                offset: o.clone(),
                count,
                ratio: count as f64 / spec.volume(n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let k = offsets.len();
    let per_n: Vec<(f64, f64)> = rows
        .chunks(k)
        .map(|c| (c[0].n, c.iter().map(|r| r.ratio).sum::<f64>() / k as f64))
        .collect();
    let last = &rows[rows.len() - k..];
    let value = per_n.last().expect("nonempty").1;
    let uniformity_gap = last.iter().map(|r| (r.ratio - value).abs()).fold(0.0, f64::max);
    let cauchy_gaps = per_n.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
    Ok(FrequencyEstimate {
        cluster: p.clone(),
        per_offset: last.iter().map(|r| (r.offset.clone(), r.ratio)).collect(),
        per_n,
        value,
        uniformity_gap,
        cauchy_gaps,
        rows,
    })
}

/// `freq′(P, Γ) = lim L_P(F_n, Γ) / Vol(F_n)` along the single orbit point 0.
pub fn single_orbit_frequency(source: &dyn PointSource, p: &Cluster, spec: &VanHoveSpec) -> Result<FrequencyEstimate> {
    estimate_frequency(source, p, spec, &[vec![0.0; spec.dim]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;
    use crate::geometry::Point;

    #[test]
    fn halton_starts_at_origin_and_fills() {
        let h = halton_offsets(8, 1, 1.0);
        let v: Vec<f64> = h.iter().map(|x| x[0]).collect();
        assert_eq!(v, vec![0.0, 0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875]);
        assert_eq!(halton_offsets(4, 2, 3.0)[1], vec![1.5, 1.0]);
    }

    #[test]
    fn lattice_single_point() {
        let z = LatticeSource::integers();
        let p = Cluster::single(1, 0, Point::x(0.0));
        let spec = VanHoveSpec::single(1, 1000.0).unwrap();
        let est = single_orbit_frequency(&z, &p, &spec).unwrap();
        assert!((est.value - 2001.0 / 2000.0).abs() < 1e-15);
        let est = estimate_frequency(&z, &p, &spec, &halton_offsets(50, 1, 1.0)).unwrap();
        assert!(est.uniformity_gap <= 1e-3);
    }
}
