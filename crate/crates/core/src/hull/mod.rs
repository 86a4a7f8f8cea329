//! The hull: its metric, orbit samples, cylinder sets, the finite disjoint
//! cylinder partition, and invariant-measure checks (dimension 1).

mod cylinder;
mod interval;
mod measure;
mod metric;
mod partition;

pub use cylinder::{cylinder_contains, orbit_sources, sample_orbit, CylinderSpec};
pub use interval::{union_length, Interval};
pub use measure::{
    empirical_cylinder_measure, partition_params, plateau_approximation_check, product_identity_check,
    PartitionParams, PlateauCheck, ProductCheck,
};
pub use metric::{hull_metric, MetricBracket, METRIC_CAP};
pub use partition::{
    build_partition_1d, build_partition_1d_with_scan, HullPartition, PartitionCell, DEFAULT_PARTITION_SCAN,
};
