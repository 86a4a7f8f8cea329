use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{PointSource, Region};
use crate::spectra::{autocorr_direct, pairwise_sum_c, smoothed_autocorrelation, Kernel, WeightVector};
use crate::statistics::VanHoveSpec;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralCheckRow {
    pub x: f64,
    /// Ergodic average `(1/Vol F_n) ∫_{F_n} ρ(x + y) conj(ρ(y)) dy`.
    pub lhs: Complex64,
    /// `γ_ω(x)`.
    pub rhs: Complex64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralCheckReport {
    pub kernel: Kernel,
    pub n: f64,
    pub step: f64,
    pub rows: Vec<SpectralCheckRow>,
}

impl SpectralCheckReport {
    pub fn max_rel_diff(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_diff).fold(0.0, f64::max)
    }
}

const CHUNK: usize = 8192;

/// `ρ(y) = Σ w_p ω(y - p)` on consecutive nodes `y_j = y0 + j h`, two-pointer sweep.
fn rho_on_grid(pts: &[(f64, Complex64)], kernel: &Kernel, y0: f64, h: f64, count: usize) -> Vec<Complex64> {
    let (a, b) = kernel.support();
    let mut out = Vec::with_capacity(count);
    let mut lo = 0;
    for j in 0..count {
        let y = y0 + j as f64 * h;
        // contributing points satisfy y - b ≤ p ≤ y - a
        while lo < pts.len() && pts[lo].0 < y - b {
            lo += 1;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, wp) in pts[lo..].iter().take_while(|(p, _)| *p <= y - a) {
            acc += wp * kernel.eval(y - p);
        }
        out.push(acc);
    }
    out
}

/// Compares the ergodic correlation of the smoothed density with `γ_ω(x)` at each `x`.
///
/// The quadrature is the midpoint rule with step `h ≤ feature/20`.
pub fn dworkin_report(
    source: &dyn PointSource,
    w: &WeightVector,
    kernel: &Kernel,
    xs: &[f64],
    n: f64,
    step: Option<f64>,
) -> Result<SpectralCheckReport> {
    w.check(source.colors())?;
    if source.dim() != 1 {
        return Err(Error::Unsupported("the Dworkin check is one-dimensional".into()));
    }
    let max_step = kernel.feature_scale() / 20.0;
    let h = step.unwrap_or(max_step);
    if !(h > 0.0) || h > max_step * (1.0 + 1e-12) {
        return Err(Error::QuadratureTooCoarse { step: h, max: max_step });
    }
    let spec = VanHoveSpec::single(1, n)?;
    let (a, b) = kernel.support();
    let reach = b - a;
    let xmax = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let g = autocorr_direct(source, w, xmax + reach + 1.0, &spec)?;

    let margin = xmax + a.abs().max(b.abs()) + 1.0;
    let patch = source.window(&Region::interval(-n - margin, n + margin))?;
    let pts: Vec<(f64, Complex64)> = patch.points_1d().into_iter().map(|(p, c)| (p, w.get(c))).collect();
    let count = (2.0 * n / h).round() as usize;
    let h = 2.0 * n / count as f64;
    let y0 = -n + h / 2.0;

    let rows = xs
        .iter()
        .map(|&x| {
            let chunks: Vec<Complex64> = (0..count.div_ceil(CHUNK))
                .into_par_iter()
                .map(|ci| {
                    let start = ci * CHUNK;
                    let len = CHUNK.min(count - start);
                    let ys = y0 + start as f64 * h;
                    let base = rho_on_grid(&pts, kernel, ys, h, len);
                    let shifted = rho_on_grid(&pts, kernel, ys + x, h, len);
                    let prods: Vec<Complex64> = shifted.iter().zip(&base).map(|(s, b)| s * b.conj()).collect();
                    pairwise_sum_c(&prods)
                })
                .collect();
            let lhs = pairwise_sum_c(&chunks) * h / (2.0 * n);
            let rhs = smoothed_autocorrelation(&g, kernel, x)?;
            let abs_diff = (lhs - rhs).norm();
            let rel_diff = if rhs.norm() > 0.0 {
                abs_diff / rhs.norm()
            } else if abs_diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            Ok(SpectralCheckRow {
                x,
                lhs,
                rhs,
                abs_diff,
                rel_diff,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralCheckReport {
        kernel: *kernel,
        n,
        step: h,
        rows,
    })
}

/// Single-`x` row of [`dworkin_report`].
pub fn dworkin_correlation(
    source: &dyn PointSource,
    w: &WeightVector,
    kernel: &Kernel,
    x: f64,
    n: f64,
) -> Result<SpectralCheckRow> {
    let mut r = dworkin_report(source, w, kernel, &[x], n, None)?;
    Ok(r.rows.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    #[test]
    fn lattice_identity() {
        let z = LatticeSource::integers();
        let w = WeightVector::ones(1);
        let k = Kernel::triangle(0.4).unwrap();
        let r = dworkin_report(&z, &w, &k, &[0.0, 1.0, 0.3], 1000.0, None).unwrap();
        let norm = k.norm_sq();
        assert!((r.rows[0].lhs.re - norm).abs() / norm < 1e-2);
        assert!((r.rows[0].lhs - r.rows[1].lhs).norm() < 1e-3);
        assert!(r.max_rel_diff() <= 1e-2, "{:?}", r.rows);
    }

    #[test]
    fn coarse_step_rejected() {
        let z = LatticeSource::integers();
        let k = Kernel::triangle(0.4).unwrap();
        let r = dworkin_report(&z, &WeightVector::ones(1), &k, &[0.0], 10.0, Some(0.1));
        assert!(matches!(r, Err(Error::QuadratureTooCoarse { .. })));
    }
}
