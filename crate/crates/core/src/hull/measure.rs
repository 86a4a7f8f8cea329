use rayon::prelude::*;
use serde::Serialize;

use crate::coord::TOL_EQ;
use crate::error::{Error, Result};
use crate::geometry::{cluster_distance, delone_params, enumerate_cluster_classes, Cluster, PointSource, Region, SharedSource};
use crate::hull::{cylinder_contains, orbit_sources, union_length, CylinderSpec, Interval};
use crate::spectra::Kernel;
use crate::statistics::{occurrences, single_orbit_frequency, VanHoveSpec};

fn eta_near_origin(source: &dyn PointSource, n: f64) -> Result<f64> {
    let r = n.clamp(50.0, 500.0);
    Ok(delone_params(source, &Region::interval(-r, r))?.eta)
}

/// `(1/Vol F_n)·Vol{x ∈ F_n : -x + Λ ∈ X_{P,V}}`, computed exactly as a union of
/// translated windows.
pub fn empirical_cylinder_measure(source: &dyn PointSource, c: &CylinderSpec, n: f64) -> Result<f64> {
    if source.dim() != 1 {
        return Err(Error::Unsupported("cylinder measure is implemented in dimension 1".into()));
    }
    let eta = eta_near_origin(source, n)?;
    let diam = c.window.length();
    if diam >= eta {
        return Err(Error::WindowTooWide { diam, eta });
    }
    let (plo, phi) = c.cluster.span_1d().ok_or(Error::EmptyCluster)?;
    // -x + Λ ∈ X_{P,V} iff x ∈ -s - V for an occurrence s + P ⊂ Λ
    let region = Region::interval(-n - c.window.hi + plo - 1.0, n - c.window.lo + phi + 1.0);
    let patch = source.window(&region)?;
    let fn_ = Interval::closed(-n, n);
    let pieces: Vec<Interval> = occurrences(&patch, &c.cluster, &region)?
        .iter()
        .map(|s| c.window.reflect().translate(-s.pos()).intersect(&fn_))
        .filter(|i| !i.is_empty())
        .collect();
    Ok(union_length(&pieces) / (2.0 * n))
}

/// `ε`, `θ₁(ε)`, `η`, `θ = min{ε, θ₁, η}` and a taper `ζ < θ/2`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PartitionParams {
    pub epsilon: f64,
    pub theta1: f64,
    pub eta: f64,
    pub theta: f64,
    pub zeta: f64,
}

/// `θ₁` is half the smallest distance `ρ_H` between distinct anchored class
/// representatives at radius `1/ε`, or `η/2` if that is not resolved.
pub fn partition_params(source: &dyn PointSource, epsilon: f64, scan: &Region) -> Result<PartitionParams> {
    let params = delone_params(source, scan)?;
    if !(epsilon > 0.0 && epsilon < 1.0 / params.b) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/b = {})",
            1.0 / params.b
        )));
    }
    let table = enumerate_cluster_classes(source, 1.0 / epsilon, scan)?;
    let reps = &table.representatives;
    let mut min = f64::INFINITY;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            min = min.min(cluster_distance(&reps[i], &reps[j])?);
        }
    }
    let eta = params.eta;
    let theta1 = if min.is_finite() && min > 1e3 * TOL_EQ { 0.5 * min } else { 0.5 * eta };
    let theta = epsilon.min(theta1).min(eta);
    Ok(PartitionParams {
        epsilon,
        theta1,
        eta,
        theta,
        zeta: 0.25 * theta,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProductCheck {
    pub samples: usize,
    pub hits: usize,
    pub violations: usize,
}

/// Compares `χ_{P,V}` with `∏_{x∈P} χ_{x+E_i,V}` on the orbit points `-h + Λ`.
pub fn product_identity_check(
    source: &SharedSource,
    p: &Cluster,
    window: Interval,
    offsets: &[f64],
) -> Result<ProductCheck> {
    let whole = CylinderSpec::new(p.clone(), window);
    let singles: Vec<CylinderSpec> = p
        .support()
        .map(|(i, x)| CylinderSpec::new(Cluster::single(p.colors(), i, *x), window))
        .collect();
    let region = whole.footprint()?.dilate(1.0);
    let results = orbit_sources(source, offsets)
        .par_iter()
        .map(|s| {
            let patch = s.window(&region)?;
            let lhs = cylinder_contains(&patch, &whole)?;
            let mut rhs = true;
            for c in &singles {
                rhs &= cylinder_contains(&patch, c)?;
            }
            Ok((lhs, rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductCheck {
        samples: results.len(),
        hits: results.iter().filter(|r| r.0).count(),
        violations: results.iter().filter(|r| r.0 != r.1).count(),
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PlateauCheck {
    /// Orbit average of `|f_{i,ω} - χ_{E_i,V}|²`.
    pub lhs: f64,
    pub freq: f64,
    /// `freq(E_i)·Vol((∂V)^{+ζ})`.
    pub bound: f64,
}

/// Orbit average over `y ∈ F_n` of `|f_{i,ω}(-y+Λ) - χ_{E_i,V}(-y+Λ)|²` for the
/// plateau kernel on `V` with taper `ζ`, by midpoint quadrature at step `ζ/20`.
pub fn plateau_approximation_check(
    source: &dyn PointSource,
    color: usize,
    window: Interval,
    zeta: f64,
    n: f64,
) -> Result<PlateauCheck> {
    if source.dim() != 1 {
        return Err(Error::Unsupported("plateau check is implemented in dimension 1".into()));
    }
    let kernel = Kernel::plateau(window.lo, window.hi, zeta)?;
    let region = Region::interval(-n - window.hi - 1.0, n - window.lo + 1.0);
    let pts: Vec<f64> = source
        .window(&region)?
        .points_1d()
        .into_iter()
        .filter(|p| p.1 == color)
        .map(|p| p.0)
        .collect();
    let h = zeta / 20.0;
    let steps = (2.0 * n / h).ceil() as usize;
    let h = 2.0 * n / steps as f64;
    const CHUNK: usize = 1 << 14;
    let chunks: Vec<f64> = (0..steps.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = 0.0;
            let end = ((c + 1) * CHUNK).min(steps);
            let mut lo = 0;
            for k in c * CHUNK..end {
                let y = -n + (k as f64 + 0.5) * h;
                // points p with y - p ∈ V, i.e. p ∈ [y - hi, y - lo]
                let from = y - window.hi;
                while lo < pts.len() && pts[lo] < from - 1e-12 {
                    lo += 1;
                }
                let (mut f, mut chi) = (0.0, false);
                for &p in pts[lo..].iter().take_while(|&&p| p <= y - window.lo + 1e-12) {
                    f += kernel.eval(y - p);
                    chi |= window.contains(y - p);
                }
                let d = f - if chi { 1.0 } else { 0.0 };
                acc += d * d;
            }
            acc * h
        })
        .collect();
    let lhs = crate::spectra::pairwise_sum(&chunks) / (2.0 * n);
    let e = Cluster::single(source.colors(), color, crate::geometry::Point::x(0.0));
    let freq = single_orbit_frequency(source, &e, &VanHoveSpec::single(1, n)?)?.value;
    let layer = union_length(&[
        Interval::closed(window.lo - zeta, window.lo + zeta),
        Interval::closed(window.hi - zeta, window.hi + zeta),
    ]);
    Ok(PlateauCheck {
        lhs,
        freq,
        bound: freq * layer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;
    use crate::geometry::Point;

    #[test]
    fn lattice_cylinder_measures() {
        let z = LatticeSource::integers();
        let one = Cluster::single(1, 0, Point::x(0.0));
        let m = empirical_cylinder_measure(&z, &CylinderSpec::new(one.clone(), Interval::half_open(0.0, 0.3)), 1000.0).unwrap();
        assert!((m - 0.3).abs() <= 1e-3);
        let two = Cluster::new(vec![vec![Point::x(0.0), Point::x(1.0)]]);
        let m = empirical_cylinder_measure(&z, &CylinderSpec::new(two, Interval::half_open(0.0, 0.5)), 1000.0).unwrap();
        assert!((m - 0.5).abs() <= 1e-3);
        let wide = CylinderSpec::new(one, Interval::half_open(0.0, 1.5));
        assert!(matches!(empirical_cylinder_measure(&z, &wide, 100.0), Err(Error::WindowTooWide { .. })));
    }

    #[test]
    fn plateau_bound_on_lattice() {
        let z = LatticeSource::integers();
        let c = plateau_approximation_check(&z, 0, Interval::half_open(-0.2, 0.2), 0.05, 200.0).unwrap();
        // per point ∫ (ω - 1_V)² = 2ζ/3
        assert!((c.lhs - 2.0 * 0.05 / 3.0).abs() < 1e-3, "{c:?}");
        assert!(c.lhs <= c.bound + 1e-3);
    }
}
