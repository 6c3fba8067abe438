//! Closed-form per-element counts from topology statistics.
//!
//! Given a method and the topology classes of a mesh, these functions emit
//! the number of coupling unknowns and the maximal number of non-zero matrix
//! entries per element as exact polynomials in the degree `k`:
//!
//! * element carriers couple each element block to itself and its
//!   facet-sharing neighbors,
//! * facet carriers couple facet blocks that share an element,
//! * skeleton carriers couple every pair of sub-entities sharing an element,
//!   with condensed element interiors contributing nothing.

use std::fmt;

use thiserror::Error;

use crate::method::{coupling_ndof_poly, Carrier, DofError, Method};
use crate::poly::RationalPolynomial;
use crate::rational::{int, Rational};
use crate::topology::TopologyStats;

/// Which quantity a table or polynomial reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Unknowns per element before condensation.
    Ndof,
    /// Coupling unknowns per element after condensation. Equal to `ndof` for
    /// element-carrier methods, where nothing condenses.
    Ncdof,
    /// Non-zero matrix entries per element, assuming every permitted
    /// coupling produces an entry.
    Nnze,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Ndof, Metric::Ncdof, Metric::Nnze];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Ndof => "ndof",
            Metric::Ncdof => "ncdof",
            Metric::Nnze => "nnze",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown metric `{s}`"))
    }
}

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Dof(#[from] DofError),
    #[error(
        "method {0} does not define a pre-condensation total (cell unknown degree unspecified)"
    )]
    UnsupportedTotal(&'static str),
    #[error("stats for `{mesh}` lack neighbor counts at dimension {dim} (class {class})")]
    MissingNeighborData {
        mesh: String,
        class: String,
        dim: usize,
    },
    #[error("degree k must be at least 1, got {0}")]
    DegreeOutOfRange(i64),
}

/// Coupling unknowns per element after condensation.
pub fn ncdof_poly(
    method: &dyn Method,
    stats: &TopologyStats,
) -> Result<RationalPolynomial, FormulaError> {
    let d = stats.dimension;
    let mut total = RationalPolynomial::zero();
    for class in &stats.classes {
        let ndof = coupling_ndof_poly(method, d, class.dim)?;
        total = &total + &ndof.scale(class.r);
    }
    Ok(total)
}

/// Non-zero entries per element of the condensed system.
pub fn nnze_poly(
    method: &dyn Method,
    stats: &TopologyStats,
) -> Result<RationalPolynomial, FormulaError> {
    let d = stats.dimension;
    match method.carrier() {
        Carrier::Elements => {
            // each element block couples with itself and one block per facet
            let ndof = coupling_ndof_poly(method, d, d)?;
            let block = &ndof * &ndof;
            let mut total = RationalPolynomial::zero();
            for class in stats.classes_of_dim(d) {
                let facets = neighbor(stats, class, d - 1)?;
                total = &total + &block.scale(class.r * int(facets as i128 + 1));
            }
            Ok(total)
        }
        Carrier::Facets => {
            let ndof = coupling_ndof_poly(method, d, d - 1)?;
            let block = &ndof * &ndof;
            let mut total = RationalPolynomial::zero();
            for class in stats.classes_of_dim(d - 1) {
                let neighbors = neighbor(stats, class, d - 1)?;
                total = &total + &block.scale(class.r * int(neighbors as i128));
            }
            Ok(total)
        }
        Carrier::Skeleton => {
            let ndof_at: Vec<RationalPolynomial> = (0..=d)
                .map(|m| coupling_ndof_poly(method, d, m))
                .collect::<Result<_, _>>()?;
            let mut total = RationalPolynomial::zero();
            for class in &stats.classes {
                let own = &ndof_at[class.dim];
                if own.is_zero() {
                    continue;
                }
                let mut row = RationalPolynomial::zero();
                for (m, target_ndof) in ndof_at.iter().enumerate() {
                    if target_ndof.is_zero() {
                        continue;
                    }
                    let count = neighbor(stats, class, m)?;
                    row = &row + &target_ndof.scale(int(count as i128));
                }
                total = &total + &(own * &row).scale(class.r);
            }
            Ok(total)
        }
    }
}

/// Unknowns per element before condensation.
pub fn ndof_total_poly(
    method: &dyn Method,
    stats: &TopologyStats,
) -> Result<RationalPolynomial, FormulaError> {
    let volume = method
        .volume_ndof_poly(stats.dimension)
        .ok_or(FormulaError::UnsupportedTotal(method.name()))?;
    let coupled = ncdof_poly(method, stats)?;
    let mut total = coupled;
    for class in stats.classes_of_dim(stats.dimension) {
        total = &total + &volume.scale(class.r);
    }
    Ok(total)
}

/// Polynomial for one metric.
pub fn metric_poly(
    method: &dyn Method,
    stats: &TopologyStats,
    metric: Metric,
) -> Result<RationalPolynomial, FormulaError> {
    match metric {
        Metric::Ndof => ndof_total_poly(method, stats),
        Metric::Ncdof => ncdof_poly(method, stats),
        Metric::Nnze => nnze_poly(method, stats),
    }
}

/// Exact evaluation at an integer degree `k >= 1`.
pub fn evaluate(poly: &RationalPolynomial, k: i64) -> Result<Rational, FormulaError> {
    if k < 1 {
        return Err(FormulaError::DegreeOutOfRange(k));
    }
    Ok(poly.eval(k as i128))
}

fn neighbor(
    stats: &TopologyStats,
    class: &crate::topology::TopologyClass,
    dim: usize,
) -> Result<u64, FormulaError> {
    class
        .nb
        .get(&dim)
        .copied()
        .ok_or_else(|| FormulaError::MissingNeighborData {
            mesh: stats.mesh.clone(),
            class: class.label(),
            dim,
        })
}
