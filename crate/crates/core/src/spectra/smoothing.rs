use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{pairwise_sum_c, AutocorrelationMeasure, DiffractionEstimate, Kernel};

#[derive(Clone, Debug, Serialize)]
pub struct SmoothedDiffraction {
    /// `(x, γ_ω(x))` with `γ_ω = (ω ∗ ω̃) ∗ γ`.
    pub real_space: Vec<(f64, Complex64)>,
    /// `(k, |ω̂(k)|² I(k))` for each retained peak.
    pub peaks: Vec<(f64, f64)>,
}

/// Half-width of the support of `ω ∗ ω̃`.
fn autocorr_reach(kernel: &Kernel) -> f64 {
    let (a, b) = kernel.support();
    b - a
}

/// `γ_ω(x) = Σ_t c(t) (ω ∗ ω̃)(x - t)`; needs `|x| + reach ≤ radius` so no term is cut off.
pub fn smoothed_autocorrelation(g: &AutocorrelationMeasure, kernel: &Kernel, x: f64) -> Result<Complex64> {
    let reach = autocorr_reach(kernel);
    if x.abs() + reach > g.radius + 1e-12 {
        return Err(Error::KernelExceedsRadius {
            support: x.abs() + reach,
            radius: g.radius,
        });
    }
    let lo = g.entries.partition_point(|e| e.0.pos() < x - reach);
    let terms: Vec<Complex64> = g.entries[lo..]
        .iter()
        .take_while(|e| e.0.pos() <= x + reach)
        .map(|(t, c)| c * kernel.autocorr(x - t.pos()))
        .collect();
    Ok(pairwise_sum_c(&terms))
}

/// Both faces of the smoothed diffraction: `γ_ω` on `xs` and `|ω̂|² I` at the retained peaks.
pub fn smoothed_diffraction(
    g: &AutocorrelationMeasure,
    kernel: &Kernel,
    xs: &[f64],
    peaks: Option<&DiffractionEstimate>,
) -> Result<SmoothedDiffraction> {
    let reach = autocorr_reach(kernel);
    if reach > g.radius {
        return Err(Error::KernelExceedsRadius {
            support: reach,
            radius: g.radius,
        });
    }
    let real_space = xs
        .par_iter()
        .map(|&x| smoothed_autocorrelation(g, kernel, x).map(|v| (x, v)))
        .collect::<Result<Vec<_>>>()?;
    let peaks = peaks
        .map(|est| {
            est.retained()
                .map(|e| (e.k, kernel.ft(e.k).norm_sqr() * e.intensity))
                .collect()
        })
        .unwrap_or_default();
    Ok(SmoothedDiffraction { real_space, peaks })
}

/// Fourier–Bohr mean `(1/|X|) Σ γ_ω(x) e^{-2πikx} Δx` of an equally spaced grid,
/// trapezoid weights at the ends.
pub fn fourier_bohr(grid: &[(f64, Complex64)], k: f64) -> Complex64 {
    if grid.len() < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let last = grid.len() - 1;
    let terms: Vec<Complex64> = grid
        .iter()
        .enumerate()
        .map(|(i, (x, v))| {
            let wt = if i == 0 || i == last { 0.5 } else { 1.0 };
            v * Complex64::from_polar(wt, -2.0 * PI * k * x)
        })
        .collect();
    pairwise_sum_c(&terms) / last as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;
    use crate::geometry::Point;
    use crate::spectra::{autocorr_direct, WeightVector};
    use crate::statistics::VanHoveSpec;

    #[test]
    fn lattice_smoothing() {
        let z = LatticeSource::integers();
        let w = WeightVector::ones(1);
        let spec = VanHoveSpec::single(1, 2000.0).unwrap();
        let g = autocorr_direct(&z, &w, 6.0, &spec).unwrap();
        let k = Kernel::triangle(0.3).unwrap();
        let v = smoothed_autocorrelation(&g, &k, 1.0).unwrap();
        let c1 = g.get(&Point::x(1.0)).re;
        assert!((v.re - c1 * k.norm_sq()).abs() < 1e-12);
        // one period of γ_ω gives the k = 1 Bohr coefficient |ω̂(1)|²
        let xs: Vec<f64> = (0..=400).map(|i| -2.0 + i as f64 * 0.01).collect();
        let sd = smoothed_diffraction(&g, &k, &xs, None).unwrap();
        let b = fourier_bohr(&sd.real_space, 1.0).re;
        let want = k.ft(1.0).norm_sqr() * c1;
        assert!((b - want).abs() / want < 1e-3, "{b} vs {want}");
        assert!(matches!(
            smoothed_autocorrelation(&g, &k, 5.9),
            Err(Error::KernelExceedsRadius { .. })
        ));
    }
}
