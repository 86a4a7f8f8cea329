use crate::error::{Error, Result};
use crate::geometry::{PointSource, Region};

/// Observed separation `η` and covering scale `b` of a Delone set.
#[derive(Clone, Debug)]
pub struct DeloneParams {
    pub eta: f64,
    pub b: f64,
    pub scan: Region,
}

/// Estimates `η(Λ)` and `b(Λ)` on a scan region.
///
/// In dimension 1, `η` is the smallest gap and `b` the largest gap between
/// consecutive support points. In dimension 2, `b` is twice the largest
/// distance from a sample grid point to the nearest support point.
pub fn delone_params(source: &dyn PointSource, scan: &Region) -> Result<DeloneParams> {
    match source.dim() {
        1 => params_1d(source, scan),
        2 => params_2d(source, scan),
        d => Err(Error::Unsupported(format!("dimension {d}"))),
    }
}

fn params_1d(source: &dyn PointSource, scan: &Region) -> Result<DeloneParams> {
    let patch = source.window(scan)?;
    let mut xs: Vec<f64> = patch.points_1d().into_iter().map(|(x, _)| x).collect();
    xs.dedup_by(|a, b| (*a - *b).abs() <= crate::coord::TOL_EQ);
    if xs.len() < 2 {
        return Err(Error::InsufficientPoints);
    }
    let (mut eta, mut b) = (f64::INFINITY, 0.0f64);
    for w in xs.windows(2) {
        let g = w[1] - w[0];
        eta = eta.min(g);
        b = b.max(g);
    }
    Ok(DeloneParams {
        eta,
        b,
        scan: scan.clone(),
    })
}

fn params_2d(source: &dyn PointSource, scan: &Region) -> Result<DeloneParams> {
    let (lo, hi) = scan.bounds();
    let side = (hi[0] - lo[0]).min(hi[1] - lo[1]);
    let margin = side / 4.0;
    let wide = Region::rect(
        &[lo[0] - margin, lo[1] - margin],
        &[hi[0] + margin, hi[1] + margin],
    );
    let patch = source.window(&wide)?;
    let pts: Vec<[f64; 2]> = patch
        .cluster()
        .support()
        .map(|(_, p)| [p.coord(0).to_f64(), p.coord(1).to_f64()])
        .collect();
    let inside: Vec<&[f64; 2]> = pts
        .iter()
        .filter(|p| scan.contains_f64(&p[..]))
        .collect();
    if inside.len() < 2 {
        return Err(Error::InsufficientPoints);
    }
    let d = |a: &[f64; 2], b: &[f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let mut eta = f64::INFINITY;
    for p in &inside {
        for q in &pts {
            let r = d(p, q);
            if r > crate::coord::TOL_EQ {
                eta = eta.min(r);
            }
        }
    }
    let steps = 40;
    let mut cover: f64 = 0.0;
    for i in 0..=steps {
        for j in 0..=steps {
            let g = [
                lo[0] + (hi[0] - lo[0]) * i as f64 / steps as f64,
                lo[1] + (hi[1] - lo[1]) * j as f64 / steps as f64,
            ];
            let nearest = pts.iter().map(|p| d(p, &g)).fold(f64::INFINITY, f64::min);
            cover = cover.max(nearest);
        }
    }
    Ok(DeloneParams {
        eta,
        b: 2.0 * cover,
        scan: scan.clone(),
    })
}
