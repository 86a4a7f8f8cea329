//! Autocorrelation, diffraction and the smoothed-density correlation identity.

mod autocorr;
mod bragg;
mod dworkin;
mod kernel;
mod quadrature;
mod smoothing;
mod sum;
mod weights;

pub use autocorr::{autocorr_direct, autocorr_from_frequencies, AutocorrMethod, AutocorrelationMeasure};
pub use bragg::{bragg_amplitude, peak_scan, retained_intensity, DiffractionEntry, DiffractionEstimate, DRIFT_TOL};
pub use dworkin::{dworkin_correlation, dworkin_report, SpectralCheckReport, SpectralCheckRow};
pub use kernel::Kernel;
pub use quadrature::{gauss_legendre, integrate};
pub use smoothing::{fourier_bohr, smoothed_autocorrelation, smoothed_diffraction, SmoothedDiffraction};
pub use sum::{pairwise_sum, pairwise_sum_c};
pub use weights::WeightVector;
