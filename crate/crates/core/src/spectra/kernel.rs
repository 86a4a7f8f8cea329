use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::integrate;

/// Compactly supported continuous smoothing kernel `ω` (dimension 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum Kernel {
    /// `max(0, 1 - |x|/s)`.
    Triangle { s: f64 },
    /// `(1 + cos(πx/s))/2` on `[-s, s]`.
    RaisedCosine { s: f64 },
    /// 1 on `[lo + taper, hi - taper]`, 0 outside `[lo, hi]`, linear in between.
    Plateau { lo: f64, hi: f64, taper: f64 },
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Centered cubic B-spline, supported on `[-2, 2]` with unit integral.
fn cubic_bspline(t: f64) -> f64 {
    let a = t.abs();
    if a < 1.0 {
        2.0 / 3.0 - a * a + 0.5 * a * a * a
    } else if a < 2.0 {
        (2.0 - a).powi(3) / 6.0
    } else {
        0.0
    }
}

impl Kernel {
    pub fn triangle(s: f64) -> Result<Kernel> {
        Kernel::Triangle { s }.validated()
    }

    pub fn raised_cosine(s: f64) -> Result<Kernel> {
        Kernel::RaisedCosine { s }.validated()
    }

    pub fn plateau(lo: f64, hi: f64, taper: f64) -> Result<Kernel> {
        Kernel::Plateau { lo, hi, taper }.validated()
    }

    pub fn validated(self) -> Result<Kernel> {
        let ok = match self {
            Kernel::Triangle { s } | Kernel::RaisedCosine { s } => s > 0.0 && s.is_finite(),
            Kernel::Plateau { lo, hi, taper } => {
                lo.is_finite() && hi.is_finite() && taper > 0.0 && 2.0 * taper <= hi - lo
            }
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidParameter(format!("invalid kernel {self:?}")))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kernel::Triangle { .. } => "triangle",
            Kernel::RaisedCosine { .. } => "raised_cosine",
            Kernel::Plateau { .. } => "plateau",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Kernel::Triangle { s } => (1.0 - x.abs() / s).max(0.0),
            Kernel::RaisedCosine { s } => {
                if x.abs() >= s {
                    0.0
                } else {
                    0.5 * (1.0 + (PI * x / s).cos())
                }
            }
            Kernel::Plateau { lo, hi, taper } => {
                if x <= lo || x >= hi {
                    0.0
                } else {
                    ((x - lo) / taper).min((hi - x) / taper).min(1.0)
                }
            }
        }
    }

    /// Support `[a, b]`.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Kernel::Triangle { s } | Kernel::RaisedCosine { s } => (-s, s),
            Kernel::Plateau { lo, hi, .. } => (lo, hi),
        }
    }

    /// Radius of the smallest origin-centred ball containing the support.
    pub fn radius(&self) -> f64 {
        let (a, b) = self.support();
        a.abs().max(b.abs())
    }

    /// Length scale of the kernel's features; quadrature steps are measured against it.
    pub fn feature_scale(&self) -> f64 {
        match *self {
            Kernel::Triangle { s } | Kernel::RaisedCosine { s } => s,
            Kernel::Plateau { taper, .. } => taper,
        }
    }

    /// Points where the kernel is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match *self {
            Kernel::Triangle { s } => vec![-s, 0.0, s],
            Kernel::RaisedCosine { s } => vec![-s, s],
            Kernel::Plateau { lo, hi, taper } => vec![lo, lo + taper, hi - taper, hi],
        }
    }

    /// `ω̂(k) = ∫ ω(x) e^{-2πikx} dx` in closed form.
    pub fn ft(&self, k: f64) -> Complex64 {
        match *self {
            Kernel::Triangle { s } => Complex64::new(s * sinc(PI * k * s).powi(2), 0.0),
            Kernel::RaisedCosine { s } => {
                let d = 1.0 - 4.0 * k * k * s * s;
                let v = if d.abs() < 1e-9 {
                    s / 2.0
                } else {
                    s * sinc(2.0 * PI * k * s) / d
                };
                Complex64::new(v, 0.0)
            }
            Kernel::Plateau { lo, hi, taper } => {
                let (len, c) = (hi - lo, 0.5 * (lo + hi));
                let mag = (len - taper) * sinc(PI * k * (len - taper)) * sinc(PI * k * taper);
                Complex64::from_polar(1.0, -2.0 * PI * k * c) * mag
            }
        }
    }

    /// `(ω ∗ ω̃)(x) = ∫ ω(y) ω(y - x) dy` (ω is real).
    pub fn autocorr(&self, x: f64) -> f64 {
        match *self {
            Kernel::Triangle { s } => s * cubic_bspline(x / s),
            _ => {
                let (a, b) = self.support();
                let (lo, hi) = (a.max(a + x), b.min(b + x));
                let mut breaks = self.kinks();
                breaks.extend(self.kinks().iter().map(|k| k + x));
                integrate(|y| self.eval(y) * self.eval(y - x), lo, hi, &breaks)
            }
        }
    }

    /// `‖ω‖₂²`.
    pub fn norm_sq(&self) -> f64 {
        self.autocorr(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `∫ ω(x) e^{-2πikx}` by subdivided quadrature.
    fn numeric_ft(k: &Kernel, f: f64) -> Complex64 {
        let (a, b) = k.support();
        let mut breaks = k.kinks();
        breaks.extend((1..256).map(|i| a + (b - a) * i as f64 / 256.0));
        breaks.sort_by(f64::total_cmp);
        let re = integrate(|x| k.eval(x) * (2.0 * PI * f * x).cos(), a, b, &breaks);
        let im = integrate(|x| -k.eval(x) * (2.0 * PI * f * x).sin(), a, b, &breaks);
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let kernels = [
            Kernel::triangle(0.4).unwrap(),
            Kernel::raised_cosine(0.3).unwrap(),
            Kernel::plateau(-0.1, 0.25, 0.05).unwrap(),
        ];
        for k in kernels {
            for f in [0.0, 0.37, 1.0, 1.0 / (2.0 * 0.3), 2.5, -3.1] {
                let d = (k.ft(f) - numeric_ft(&k, f)).norm();
                assert!(d < 1e-9, "{k:?} at {f}: {d}");
            }
        }
        assert!((Kernel::triangle(0.4).unwrap().ft(0.0).re - 0.4).abs() < 1e-15);
    }

    #[test]
    fn autocorrelation_forms() {
        let t = Kernel::triangle(0.4).unwrap();
        assert!((t.norm_sq() - 2.0 * 0.4 / 3.0).abs() < 1e-15);
        // closed-form triangle autocorrelation against direct quadrature
        for x in [0.0, 0.1, 0.35, 0.6, 0.79, 0.9] {
            let q = integrate(|y| t.eval(y) * t.eval(y - x), -0.4, 0.4, &[-0.4 + x, x, 0.4 + x, 0.0]);
            assert!((t.autocorr(x) - q).abs() < 1e-13, "{x}");
        }
        let r = Kernel::raised_cosine(0.5).unwrap();
        assert!((r.norm_sq() - 3.0 * 0.5 / 4.0).abs() < 1e-12);
        assert_eq!(r.autocorr(1.2), 0.0);
    }

    #[test]
    fn plateau_shape() {
        let p = Kernel::plateau(0.0, 1.0, 0.1).unwrap();
        assert_eq!(p.eval(0.5), 1.0);
        assert_eq!(p.eval(1.0), 0.0);
        assert!((p.eval(0.05) - 0.5).abs() < 1e-15);
        assert!(Kernel::plateau(0.0, 0.1, 0.1).is_err());
    }
}
