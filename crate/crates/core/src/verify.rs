//! The acceptance checks, runnable from tests and from the CLI.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{CutProjectSource, LatticeSource, PoissonSource, SubstitutionSource};
use crate::geometry::{enumerate_cluster_classes, Cluster, Point, Region, SharedSource, Translated};
use crate::hull::{
    build_partition_1d, empirical_cylinder_measure, hull_metric, partition_params, product_identity_check,
    sample_orbit, CylinderSpec, Interval,
};
use crate::spectra::{autocorr_direct, autocorr_from_frequencies, dworkin_report, peak_scan, Kernel, WeightVector};
use crate::statistics::{estimate_frequency, halton_offsets, VanHoveSpec};

/// Slack for comparisons whose target is hit exactly in exact arithmetic.
const FP_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {:<28} {:>7.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lattice,
    Fibonacci,
    Controls,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Lattice => vec![1, 3, 4],
            Suite::Fibonacci => vec![2, 5, 6, 7, 8, 9],
            Suite::Controls => vec![10],
            Suite::All => (1..=10).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "lattice" => Ok(Suite::Lattice),
            "fibonacci" => Ok(Suite::Fibonacci),
            "controls" => Ok(Suite::Controls),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidParameter(format!("unknown suite {s:?}"))),
        }
    }
}

/// Run sizes. `fast` shrinks the averaging regions; tolerances are unchanged.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub fast: bool,
}

impl Budget {
    fn big(self) -> f64 {
        if self.fast {
            2000.0
        } else {
            1e4
        }
    }

    fn samples(self) -> usize {
        if self.fast {
            200
        } else {
            1000
        }
    }
}

type Outcome = Result<(bool, String)>;

fn timed(id: u8, name: &'static str, limit: Option<f64>, f: impl FnOnce() -> Outcome) -> CheckRow {
    let t0 = Instant::now();
    let out = f();
    let seconds = t0.elapsed().as_secs_f64();
    let (mut passed, mut detail) = match out {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(lim) = limit {
        if seconds >= lim {
            passed = false;
            detail.push_str(&format!("; runtime {seconds:.1}s over {lim}s"));
        }
    }
    CheckRow {
        id,
        name,
        passed,
        detail,
        seconds,
    }
}

fn fib() -> SharedSource {
    Arc::new(CutProjectSource::fibonacci())
}

fn origin_point() -> Cluster {
    Cluster::single(1, 0, Point::x(0.0))
}

fn lattice_frequency() -> Outcome {
    let z = LatticeSource::integers();
    let spec = VanHoveSpec::single(1, 1000.0)?;
    let single = estimate_frequency(&z, &origin_point(), &spec, &[vec![0.0]])?;
    let offsets = halton_offsets(50, 1, 1.0);
    let many = estimate_frequency(&z, &origin_point(), &spec, &offsets)?;
    let dev = (single.value - 1.0).abs();
    let ok = dev <= 5e-4 + FP_SLACK && many.uniformity_gap <= 1e-3;
    Ok((
        ok,
        format!("value {:.6}, |value-1| {dev:.2e}, uniformity gap {:.2e}", single.value, many.uniformity_gap),
    ))
}

fn autocorr_equivalence(b: Budget) -> Outcome {
    let spec = VanHoveSpec::single(1, b.big())?;
    let cases: Vec<(&str, SharedSource, WeightVector)> = vec![
        ("Z", Arc::new(LatticeSource::integers()), WeightVector::ones(1)),
        ("2Z", Arc::new(LatticeSource::scaled_integers(2.0, 1)?), WeightVector::ones(1)),
        ("fibonacci", fib(), WeightVector::ones(2)),
        ("comb", Arc::new(LatticeSource::scaled_integers(1.0, 2)?), WeightVector::real(&[1.0, -1.0])?),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (name, src, w) in cases {
        let f = autocorr_from_frequencies(src.as_ref(), &w, 10.0, &spec)?;
        let d = autocorr_direct(src.as_ref(), &w, 10.0, &spec)?;
        let diff = f.max_diff(&d);
        worst = worst.max(diff);
        parts.push(format!("{name} {diff:.1e}"));
    }
    Ok((worst <= 2e-3, format!("max |dc| {worst:.2e} ({})", parts.join(", "))))
}

fn lattice_peaks() -> Outcome {
    let z = LatticeSource::integers();
    let spec = VanHoveSpec::new(1, vec![1000.0, 2000.0])?;
    let est = peak_scan(&z, &WeightVector::ones(1), (-3.0, 3.0), None, &spec)?;
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for j in -3..=3 {
        match est.peak_near(j as f64, 1e-9) {
            Some(e) => worst = worst.max((e.intensity - 1.0).abs()),
            None => ok = false,
        }
    }
    let stray = est.retained().filter(|e| (e.k - e.k.round()).abs() > 1e-9).count();
    let count = est.retained().count();
    ok &= stray == 0 && count == 7 && worst <= 2.0 / est.n2;
    Ok((ok, format!("{count} retained, {stray} non-integer, max |I-1| {worst:.2e} (limit {:.1e})", 2.0 / est.n2)))
}

fn weighted_comb() -> Outcome {
    let comb = LatticeSource::scaled_integers(1.0, 2)?;
    let w = WeightVector::real(&[1.0, -1.0])?;
    // the boundary loss |t|/(2n) must stay below the tolerance for |t| ≤ 10
    let spec = VanHoveSpec::single(1, 1e4)?;
    let g = autocorr_from_frequencies(&comb, &w, 10.0, &spec)?;
    let mut cdev: f64 = 0.0;
    for t in -10i32..=10 {
        let want = if t % 2 == 0 { 1.0 } else { -1.0 };
        cdev = cdev.max((g.get(&Point::x(t as f64)) - want).norm());
    }
    let est = peak_scan(&comb, &w, (-2.0, 2.0), None, &VanHoveSpec::new(1, vec![1000.0, 2000.0])?)?;
    let ks: Vec<f64> = est.retained().map(|e| e.k).collect();
    let want = [-1.5, -0.5, 0.5, 1.5];
    let at_half = ks.len() == want.len() && ks.iter().zip(want).all(|(k, h)| (k - h).abs() <= 1e-9);
    let idev = est.retained().map(|e| (e.intensity - 1.0).abs()).fold(0.0, f64::max);
    let ok = cdev <= 1e-3 && at_half && idev <= 5e-3;
    Ok((ok, format!("max |c(t)-(-1)^t| {cdev:.1e}; peaks {ks:?}; max |I-1| {idev:.1e}")))
}

fn cylinder_measure() -> Outcome {
    let z = LatticeSource::integers();
    let c = CylinderSpec::new(origin_point(), Interval::half_open(0.0, 0.3));
    let mz = empirical_cylinder_measure(&z, &c, 1000.0)?;
    let src = CutProjectSource::fibonacci();
    let spec = VanHoveSpec::single(1, 1000.0)?;
    let mut worst: f64 = 0.0;
    let clusters = [
        Cluster::single(2, 0, Point::x(0.0)),
        Cluster::single(2, 1, Point::x(0.0)),
        Cluster::from_colored(2, [(0, Point::x(0.0)), (1, Point::x(1.0))]),
    ];
    for p in clusters {
        let v = Interval::half_open(0.0, 0.4);
        let m = empirical_cylinder_measure(&src, &CylinderSpec::new(p.clone(), v), 1000.0)?;
        let f = estimate_frequency(&src, &p, &spec, &[vec![0.0]])?.value;
        worst = worst.max((m - v.length() * f).abs());
    }
    let ok = (mz - 0.3).abs() <= 1e-3 && worst <= 2e-3;
    Ok((ok, format!("Z: {mz:.5}; fibonacci max |mu - Vol(V) freq| {worst:.1e}")))
}

fn partition_check(b: Budget) -> Outcome {
    let src = fib();
    let part = build_partition_1d(src.as_ref(), 3.0, 0.2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let offsets: Vec<f64> = (0..b.samples()).map(|_| rng.random_range(-1000.0..1000.0)).collect();
    let region = part.footprint()?.dilate(1.0);
    let patches = sample_orbit(&src, &offsets, &region)?;
    let mut bad = 0;
    for p in &patches {
        if part.cells_containing(p)?.len() != 1 {
            bad += 1;
        }
    }
    // cheap at any size; the edge loss of the larger clusters needs n = 10⁴
    let mass = part.mass(src.as_ref(), 1e4)?;
    let ok = bad == 0 && (mass - 1.0).abs() <= 1e-3;
    Ok((
        ok,
        format!(
            "{} cells, {bad}/{} samples not in exactly one cell, mass {mass:.6}",
            part.cells.len(),
            patches.len()
        ),
    ))
}

fn dworkin_check(b: Budget) -> Outcome {
    let kernel = Kernel::triangle(0.4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let xs: Vec<f64> = (0..10).map(|_| rng.random_range(0.0..6.0)).collect();
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    let cases: Vec<(&str, SharedSource, WeightVector)> = vec![
        ("Z", Arc::new(LatticeSource::integers()), WeightVector::ones(1)),
        ("fibonacci", fib(), WeightVector::ones(2)),
    ];
    for (name, src, w) in cases {
        let r = dworkin_report(src.as_ref(), &w, &kernel, &xs, b.big(), None)?;
        worst = worst.max(r.max_rel_diff());
        parts.push(format!("{name} {:.1e}", r.max_rel_diff()));
    }
    Ok((worst <= 0.02, format!("max relative difference {worst:.2e} ({})", parts.join(", "))))
}

fn product_check(b: Budget) -> Outcome {
    let src = fib();
    let scan = Region::interval(-300.0, 300.0);
    let params = partition_params(src.as_ref(), 0.5, &scan)?;
    let table = enumerate_cluster_classes(src.as_ref(), 2.0, &scan)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let offsets: Vec<f64> = (0..b.samples()).map(|_| rng.random_range(-2000.0..2000.0)).collect();
    let window = Interval::half_open(0.0, 0.9 * params.theta);
    let (mut violations, mut hits, mut samples) = (0, 0, 0);
    for p in &table.representatives {
        let r = product_identity_check(&src, p, window, &offsets)?;
        violations += r.violations;
        hits += r.hits;
        samples += r.samples;
    }
    Ok((
        violations == 0 && hits > 0,
        format!(
            "theta {:.3}, {} clusters, {samples} samples, {hits} hits, {violations} violations",
            params.theta,
            table.representatives.len()
        ),
    ))
}

fn metric_check(b: Budget) -> Outcome {
    let eps_grid = 1e-3;
    let src = fib();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let triples = if b.fast { 100 } else { 500 };
    let mut fails = 0;
    let mut nontrivial = 0;
    for _ in 0..triples {
        let hs: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..1.0)).collect();
        let s: Vec<Translated> = hs.iter().map(|h| Translated::new(src.clone(), Point::x(*h))).collect();
        let ab = hull_metric(&s[0], &s[1], eps_grid)?;
        let bc = hull_metric(&s[1], &s[2], eps_grid)?;
        let ac = hull_metric(&s[0], &s[2], eps_grid)?;
        if ac.upper < crate::hull::METRIC_CAP {
            nontrivial += 1;
        }
        if ac.lower > ab.upper + bc.upper + eps_grid {
            fails += 1;
        }
    }
    let z = LatticeSource::integers();
    let zs = LatticeSource::shifted_integers(0.1);
    let m = hull_metric(&z, &zs, eps_grid)?;
    let bracket_ok = m.lower <= 0.05 + FP_SLACK && 0.05 <= m.upper + FP_SLACK && m.upper - m.lower <= 0.01;
    Ok((
        fails == 0 && bracket_ok,
        format!(
            "{fails}/{triples} triangle failures ({nontrivial} below cap), d(Z, Z+0.1) in [{:.4}, {:.4}]",
            m.lower, m.upper
        ),
    ))
}

fn negative_control() -> Outcome {
    let tm = SubstitutionSource::thue_morse();
    let spec = VanHoveSpec::new(1, vec![1000.0, 4000.0])?;
    let w = WeightVector::real(&[1.0, -1.0])?;
    let est = peak_scan(&tm, &w, (-1.0, 1.0), None, &spec)?;
    let tm_kept: Vec<f64> = est.retained().filter(|e| e.k.abs() > est.resolution).map(|e| e.k).collect();
    let max_ratio = est
        .entries
        .iter()
        .filter(|e| e.k.abs() > est.resolution)
        .map(|e| e.ratio())
        .fold(0.0, f64::max);
    let poisson = PoissonSource::new(1.0, 0, 1)?;
    let pe = peak_scan(&poisson, &WeightVector::ones(1), (-2.0, 2.0), None, &VanHoveSpec::new(1, vec![1000.0, 4000.0])?)?;
    let pk: Vec<(f64, f64)> = pe.retained().map(|e| (e.k, e.intensity)).collect();
    let poisson_ok = pk.len() == 1 && pk[0].0.abs() <= pe.resolution && (pk[0].1 - 1.0).abs() <= 0.1;
    Ok((
        tm_kept.is_empty() && poisson_ok,
        format!(
            "thue-morse: {} candidates, {} retained at k!=0, max ratio {max_ratio:.3}; poisson retained {pk:?}",
            est.entries.len(),
            tm_kept.len()
        ),
    ))
}

/// Runs one criterion by number.
pub fn run_criterion(id: u8, budget: Budget) -> Result<CheckRow> {
    Ok(match id {
        1 => timed(1, "lattice frequency", Some(5.0), lattice_frequency),
        2 => timed(2, "autocorrelation routes", Some(60.0), || autocorr_equivalence(budget)),
        3 => timed(3, "lattice Bragg peaks", Some(30.0), lattice_peaks),
        4 => timed(4, "weighted comb", None, weighted_comb),
        5 => timed(5, "cylinder measure", None, cylinder_measure),
        6 => timed(6, "hull partition", None, || partition_check(budget)),
        7 => timed(7, "smoothed correlation", Some(120.0), || dworkin_check(budget)),
        8 => timed(8, "cylinder product identity", None, || product_check(budget)),
        9 => timed(9, "hull metric", None, || metric_check(budget)),
        10 => timed(10, "negative controls", None, negative_control),
        _ => return Err(Error::InvalidParameter(format!("no criterion {id}"))),
    })
}

pub fn run_suite(suite: Suite, budget: Budget) -> Vec<CheckRow> {
    suite
        .criteria()
        .into_iter()
        .map(|id| run_criterion(id, budget).expect("known criterion"))
        .collect()
}
