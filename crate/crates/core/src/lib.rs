//! Coupling-unknown and sparsity counts for polytopal finite element methods
//! on periodic meshes.
//!
//! Six discretizations (DG, two Trefftz DG variants, HDG, HHO, VEM) are
//! compared by two quantities per element: `ncdof`, the globally coupled
//! unknowns left after static condensation, and `nnze`, the maximal number
//! of non-zero entries of the condensed system matrix. Both are computed two
//! independent ways:
//!
//! * closed forms -- exact polynomials in the degree `k` assembled from a
//!   mesh's topology classes (neighbor counts and per-element ratios),
//! * a brute-force oracle -- the coupling pattern enumerated entity by
//!   entity on a finite torus tiling of the mesh.
//!
//! The two routes must agree exactly; published reference tables are shipped
//! as fixtures and cross-checked, with discrepancies reported as errata
//! rather than silently adopted.

pub mod builtin;
pub mod complex;
pub mod fixtures;
pub mod formula;
pub mod geom;
pub mod method;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod report;
pub mod topology;
pub mod torus;
pub mod verify;

pub use builtin::{builtin, list_builtins, BuiltinMeshId};
pub use complex::{parse_mesh, serialize_mesh, PeriodicCellComplex};
pub use formula::{evaluate, metric_poly, Metric};
pub use method::{lookup, registry, Method};
pub use poly::RationalPolynomial;
pub use rational::Rational;
pub use topology::{classify, TopologyStats};
pub use torus::{tile, TorusComplex};

#[cfg(test)]
mod tests {
    use super::*;

    /// Complexes, tori, statistics and patterns are immutable after
    /// construction; oracle jobs can fan out across threads without
    /// synchronization.
    #[test]
    fn core_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<PeriodicCellComplex>();
        assert_send_sync::<TorusComplex>();
        assert_send_sync::<TopologyStats>();
        assert_send_sync::<RationalPolynomial>();
        assert_send_sync::<oracle::CouplingPattern>();
        assert_send_sync::<&'static dyn Method>();
    }
}
