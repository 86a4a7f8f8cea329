use std::cmp::Ordering;

use crate::coord::{Coordinate, QuadField, QuadInt};
use crate::error::{Error, Result};
use crate::geometry::{check_region, Cluster, Patch, Point, PointSource, Region, Representation};

/// A one-dimensional model set `{o + x : x ∈ Z[τ], x' ∈ [lo, hi)}` where `x'`
/// is the Galois conjugate.
///
/// The window may be cut at `breaks` into consecutive half-open pieces, each
/// carrying a color from `piece_colors`.
#[derive(Clone, Debug)]
pub struct CutProjectSpec {
    pub field: QuadField,
    pub window: (Coordinate, Coordinate),
    pub offset: QuadInt,
    pub breaks: Vec<Coordinate>,
    pub piece_colors: Vec<usize>,
}

impl CutProjectSpec {
    /// Fibonacci model set: window `[-1, τ-1)`, tiles `τ` (color 0) and `1`
    /// (color 1) as left endpoints.
    pub fn fibonacci() -> CutProjectSpec {
        let g = QuadField::GOLDEN;
        CutProjectSpec {
            field: g,
            window: (
                QuadInt::new(-1, 0, g).into(),
                QuadInt::new(-1, 1, g).into(),
            ),
            offset: QuadInt::zero(g),
            breaks: vec![QuadInt::new(-2, 1, g).into()],
            piece_colors: vec![1, 0],
        }
    }

    /// Single-color model set with window `[lo, hi)`.
    pub fn uncolored(field: QuadField, lo: Coordinate, hi: Coordinate) -> CutProjectSpec {
        CutProjectSpec {
            field,
            window: (lo, hi),
            offset: QuadInt::zero(field),
            breaks: Vec::new(),
            piece_colors: vec![0],
        }
    }

    pub fn with_offset(mut self, offset: QuadInt) -> CutProjectSpec {
        self.offset = offset;
        self
    }
}

/// Compares the conjugate of `x` with a window bound (an internal-space value).
fn conj_cmp(x: QuadInt, bound: Coordinate) -> Ordering {
    match bound {
        Coordinate::Exact(b) => x.conj_cmp(b.galois()),
        Coordinate::Float(b) => x.conj().total_cmp(&b),
    }
}

pub struct CutProjectSource {
    spec: CutProjectSpec,
    colors: usize,
}

impl CutProjectSource {
    pub fn new(spec: CutProjectSpec) -> Result<CutProjectSource> {
        let (lo, hi) = spec.window;
        for c in [lo, hi].iter().chain(&spec.breaks) {
            if let Coordinate::Exact(q) = c {
                if q.field != spec.field {
                    return Err(Error::InvalidParameter("window bound in another field".into()));
                }
            } else if !c.to_f64().is_finite() {
                return Err(Error::InvalidParameter("non-finite window bound".into()));
            }
        }
        if spec.offset.field != spec.field {
            return Err(Error::InvalidParameter("offset in another field".into()));
        }
        if lo.to_f64() >= hi.to_f64() {
            return Err(Error::EmptyWindow);
        }
        if spec.piece_colors.len() != spec.breaks.len() + 1 {
            return Err(Error::InvalidParameter("need one color per window piece".into()));
        }
        let mut prev = lo.to_f64();
        for b in &spec.breaks {
            let v = b.to_f64();
            if v <= prev || v >= hi.to_f64() {
                return Err(Error::InvalidParameter("window breaks must increase inside the window".into()));
            }
            prev = v;
        }
        let colors = spec.piece_colors.iter().max().map_or(1, |m| m + 1);
        Ok(CutProjectSource { spec, colors })
    }

    pub fn fibonacci() -> CutProjectSource {
        CutProjectSource::new(CutProjectSpec::fibonacci()).expect("valid")
    }

    pub fn spec(&self) -> &CutProjectSpec {
        &self.spec
    }

    /// Color of `x` (without offset), or `None` if `x'` misses the window.
    fn classify(&self, x: QuadInt) -> Option<usize> {
        let (lo, hi) = self.spec.window;
        if conj_cmp(x, lo) == Ordering::Less || conj_cmp(x, hi) != Ordering::Less {
            return None;
        }
        let piece = self
            .spec
            .breaks
            .iter()
            .take_while(|b| conj_cmp(x, **b) != Ordering::Less)
            .count();
        Some(self.spec.piece_colors[piece])
    }
}

impl PointSource for CutProjectSource {
    fn name(&self) -> String {
        "cut_project".into()
    }

    fn dim(&self) -> usize {
        1
    }

    fn colors(&self) -> usize {
        self.colors
    }

    fn representation(&self) -> Representation {
        Representation::Exact(self.spec.field)
    }

    fn window(&self, region: &Region) -> Result<Patch> {
        check_region(1, region)?;
        let f = self.spec.field;
        let (tau, tau_c) = (f.tau(), f.tau_conj());
        let root_d = tau - tau_c;
        let (rlo, rhi) = region.bounds();
        let o = self.spec.offset.to_f64();
        let (xlo, xhi) = (rlo[0] - o, rhi[0] - o);
        let (wlo, whi) = (self.spec.window.0.to_f64(), self.spec.window.1.to_f64());
        // x - x' = b (τ - τ')
        let bmin = ((xlo - whi) / root_d).floor() as i64 - 1;
        let bmax = ((xhi - wlo) / root_d).ceil() as i64 + 1;
        let mut parts = vec![Vec::new(); self.colors];
        for b in bmin..=bmax {
            let bf = b as f64;
            let alo = (xlo - bf * tau).max(wlo - bf * tau_c);
            let ahi = (xhi - bf * tau).min(whi - bf * tau_c);
            if alo > ahi + 2.0 {
                continue;
            }
            for a in (alo.floor() as i64 - 1)..=(ahi.ceil() as i64 + 1) {
                let x = QuadInt::new(a, b, f);
                let Some(color) = self.classify(x) else { continue };
                let p = Point::exact(x + self.spec.offset);
                if region.contains(&p) {
                    parts[color].push(p);
                }
            }
        }
        Ok(Patch::new(region.clone(), Cluster::new(parts)))
    }

    fn fourier_module(&self) -> Option<Vec<f64>> {
        let f = self.spec.field;
        let root_d = f.tau() - f.tau_conj();
        Some(vec![-f.tau_conj() / root_d, 1.0 / root_d])
    }
}
