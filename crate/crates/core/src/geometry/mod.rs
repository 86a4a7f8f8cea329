//! Points, colored clusters, regions, window-query sources, translation
//! classes and Delone parameters.

mod classes;
mod cluster;
mod delone;
mod point;
mod region;
mod source;

pub use classes::{enumerate_cluster_classes, ClusterClassTable};
pub use cluster::{cluster_distance, match_clusters, Cluster, ClusterKey};
pub use delone::{delone_params, DeloneParams};
pub use point::Point;
pub use region::Region;
pub use source::{check_region, Patch, PatchSource, PointSource, Representation, SharedSource, Translated};

/// `x + P`.
pub fn translate_cluster(p: &Cluster, x: &Point) -> crate::Result<Cluster> {
    p.translate(x)
}

/// `A ∩ Λ`.
pub fn window(source: &dyn PointSource, region: &Region) -> crate::Result<Patch> {
    source.window(region)
}
