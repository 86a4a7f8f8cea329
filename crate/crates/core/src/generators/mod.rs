//! Deterministic point sources: lattices, model sets, substitution tilings and
//! a Poisson control.

mod cut_project;
mod lattice;
mod poisson;
mod spec;
mod substitution;

pub use cut_project::{CutProjectSource, CutProjectSpec};
pub use lattice::LatticeSource;
pub use poisson::PoissonSource;
pub use spec::{CoordSpec, FibonacciMethod, RuleSpec, SourceSpec};
pub use substitution::{SubstitutionRule, SubstitutionSource};
