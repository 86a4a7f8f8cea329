use aperiodic_core::generators::{CutProjectSource, LatticeSource, PoissonSource};
use aperiodic_core::geometry::Point;
use aperiodic_core::spectra::{
    autocorr_direct, bragg_amplitude, fourier_bohr, peak_scan, smoothed_diffraction, Kernel, WeightVector,
};
use aperiodic_core::statistics::VanHoveSpec;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn fibonacci_autocorrelation_is_hermitian_and_positive() {
    let src = CutProjectSource::fibonacci();
    let w = WeightVector::real(&[1.0, 0.5]).unwrap();
    let g = autocorr_direct(&src, &w, 8.0, &VanHoveSpec::single(1, 2000.0).unwrap()).unwrap();
    assert!(g.hermitian_defect() <= 1e-12);
    assert!(g.get(&Point::x(0.0)).re > 0.0);
    assert!(g.positive_definiteness_min(20, 10, 3) >= -1e-9);
}

#[test]
fn poisson_autocorrelation_at_zero() {
    let src = PoissonSource::new(1.0, 5, 1).unwrap();
    let g = autocorr_direct(&src, &WeightVector::ones(1), 2.0, &VanHoveSpec::single(1, 5000.0).unwrap()).unwrap();
    assert!((g.get(&Point::x(0.0)).re - 1.0).abs() <= 0.05);
}

#[test]
fn weights_scale_quadratically() {
    let src = CutProjectSource::fibonacci();
    let spec = VanHoveSpec::single(1, 500.0).unwrap();
    let w = WeightVector::real(&[1.0, -0.3]).unwrap();
    let alpha = Complex64::new(0.6, -1.2);
    let g = autocorr_direct(&src, &w, 5.0, &spec).unwrap();
    let h = autocorr_direct(&src, &w.scaled(alpha), 5.0, &spec).unwrap();
    for (t, c) in &g.entries {
        assert!((h.get(t) - c * alpha.norm_sqr()).norm() < 1e-12);
    }
}

#[test]
fn fibonacci_main_peak_and_smoothing() {
    let src = CutProjectSource::fibonacci();
    let w = WeightVector::ones(2);
    let spec = VanHoveSpec::new(1, vec![1000.0, 2000.0]).unwrap();
    let est = peak_scan(&src, &w, (0.0, 1.0), None, &spec).unwrap();
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    // the strongest non-trivial peak sits at a module point
    let top = est
        .retained()
        .filter(|e| e.k > 0.01)
        .max_by(|a, b| a.intensity.total_cmp(&b.intensity))
        .unwrap();
    let gens = [tau / 5f64.sqrt(), 1.0 / 5f64.sqrt()];
    let on_module = (-20..=20).any(|p| (-20..=20).any(|q| (p as f64 * gens[0] + q as f64 * gens[1] - top.k).abs() < 1e-9));
    assert!(on_module, "{}", top.k);
    let zero = est.peak_near(0.0, 1e-9).unwrap();
    let density = 1.0 / (tau + 1.0 / tau) * tau;
    assert!((zero.intensity.sqrt() - density).abs() < 1e-2);

    // k = 0 Bohr coefficient of γ_ω equals |ω̂(0)|²·I(0)
    let kernel = Kernel::triangle(0.4).unwrap();
    let g = autocorr_direct(&src, &w, 160.0, &VanHoveSpec::single(1, 2000.0).unwrap()).unwrap();
    let xs: Vec<f64> = (0..=30000).map(|i| -150.0 + i as f64 * 0.01).collect();
    let sd = smoothed_diffraction(&g, &kernel, &xs, Some(&est)).unwrap();
    let bohr = fourier_bohr(&sd.real_space, 0.0).re;
    let (_, want) = sd.peaks.iter().find(|(k, _)| k.abs() < 1e-12).copied().unwrap();
    assert!((bohr - want).abs() / want < 0.05, "{bohr} vs {want}");
    assert!(sd.peaks.iter().all(|(_, v)| *v >= 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lattice_amplitude_is_periodic(k in -3.0f64..3.0) {
        let z = LatticeSource::integers();
        let spec = VanHoveSpec::single(1, 200.0).unwrap();
        let w = WeightVector::ones(1);
        let a = bragg_amplitude(&z, &w, &[k], &spec, 200.0).unwrap();
        let b = bragg_amplitude(&z, &w, &[k + 1.0], &spec, 200.0).unwrap();
        prop_assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn kernel_transform_magnitude_bounded(s in 0.05f64..2.0, k in -5.0f64..5.0) {
        for kernel in [Kernel::triangle(s).unwrap(), Kernel::raised_cosine(s).unwrap()] {
            prop_assert!(kernel.ft(k).norm() <= kernel.ft(0.0).norm() + 1e-12);
        }
    }
}
