//! Van Hove averaging, cluster counting and frequency estimation.

mod counting;
mod frequency;
mod vanhove;

pub use counting::{count_cluster, count_in_patch, occurrences};
pub use frequency::{
    default_offset_span, estimate_frequency, halton_offsets, single_orbit_frequency, FrequencyEstimate,
    FrequencyRow,
};
pub use vanhove::{van_hove_region, VanHoveRegion, VanHoveSpec};
