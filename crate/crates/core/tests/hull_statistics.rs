use std::sync::Arc;

use aperiodic_core::generators::{CutProjectSource, LatticeSource};
use aperiodic_core::geometry::{Cluster, Point, SharedSource};
use aperiodic_core::hull::{
    build_partition_1d, empirical_cylinder_measure, hull_metric, plateau_approximation_check, CylinderSpec, Interval,
    METRIC_CAP,
};
use aperiodic_core::statistics::{estimate_frequency, halton_offsets, single_orbit_frequency, VanHoveSpec};
use aperiodic_core::Error;

#[test]
fn fibonacci_frequencies_are_uniform() {
    let src = CutProjectSource::fibonacci();
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let a = Cluster::single(2, 0, Point::x(0.0));
    let spec = VanHoveSpec::new(1, vec![500.0, 1000.0, 2000.0]).unwrap();
    let est = estimate_frequency(&src, &a, &spec, &halton_offsets(20, 1, 30.0)).unwrap();
    // density of long tiles: 1/(τ·(1 + 1/τ²)) = 1/(τ + 1/τ)
    let want = 1.0 / (tau + 1.0 / tau) ;
    assert!((est.value - want).abs() < 2e-3, "{} vs {want}", est.value);
    assert!(est.uniformity_gap < 2e-3);
    assert_eq!(est.cauchy_gaps.len(), 2);
    let single = single_orbit_frequency(&src, &a, &spec).unwrap();
    assert!((single.value - want).abs() < 2e-3);
}

#[test]
fn partition_mass_on_lattices() {
    for (src, r) in [
        (LatticeSource::integers(), 1.0),
        (LatticeSource::scaled_integers(2.0, 1).unwrap(), 1.5),
    ] {
        let part = build_partition_1d(&src, r, 0.3).unwrap();
        assert!((part.mass(&src, 2000.0).unwrap() - 1.0).abs() < 1e-3);
    }
}

#[test]
fn metric_symmetry_and_cap() {
    let src: SharedSource = Arc::new(CutProjectSource::fibonacci());
    let a = aperiodic_core::geometry::Translated::new(src.clone(), Point::x(0.2));
    let b = aperiodic_core::geometry::Translated::new(src.clone(), Point::x(0.5));
    let ab = hull_metric(&a, &b, 1e-3).unwrap();
    let ba = hull_metric(&b, &a, 1e-3).unwrap();
    assert!((ab.lower - ba.lower).abs() < 1e-3 && (ab.upper - ba.upper).abs() < 1e-3);
    assert!(ab.lower <= 0.15 + 1e-3 && ab.upper >= 0.15 - 1e-3);
    let z = LatticeSource::integers();
    let far = LatticeSource::scaled_integers(2.0, 1).unwrap();
    let d = hull_metric(&z, &far, 1e-3).unwrap();
    assert!(d.upper <= METRIC_CAP + 1e-12 && d.lower > 0.3);
}

#[test]
fn cylinder_measure_needs_narrow_window() {
    let src = CutProjectSource::fibonacci();
    let c = CylinderSpec::new(Cluster::single(2, 0, Point::x(0.0)), Interval::half_open(0.0, 1.5));
    assert!(matches!(
        empirical_cylinder_measure(&src, &c, 500.0),
        Err(Error::WindowTooWide { .. })
    ));
}

#[test]
fn plateau_bound_on_fibonacci() {
    let src = CutProjectSource::fibonacci();
    let zeta = 0.05;
    let r = plateau_approximation_check(&src, 0, Interval::half_open(0.0, 0.5), zeta, 500.0).unwrap();
    assert!(r.lhs <= r.bound + 1e-3, "{r:?}");
    assert!(r.lhs > 0.0);
}
