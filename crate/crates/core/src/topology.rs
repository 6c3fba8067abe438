//! Topology descriptors of a periodic mesh: entity classes, neighbor counts,
//! and per-element ratios.
//!
//! Classification is brute force: entities are grouped by the vector of
//! neighbor counts measured on a probe torus, cross-checked on the next
//! larger torus so that wrap-around artifacts cannot leak into the result.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::complex::{MeshError, PeriodicCellComplex};
use crate::rational::{int, rat, Rational};
use crate::torus::{tile, EntityId, TorusComplex};

/// Where a set of topology numbers came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    MeshDerived,
    FixturePrinted,
    FixtureImplied,
}

impl Derivation {
    pub fn tag(self) -> &'static str {
        match self {
            Derivation::MeshDerived => "mesh-derived",
            Derivation::FixturePrinted => "fixture-printed",
            Derivation::FixtureImplied => "fixture-implied",
        }
    }
}

/// A group of entities sharing dimension and neighbor-count signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyClass {
    pub dim: usize,
    /// 1-based index within the dimension.
    pub index: usize,
    /// Member orbit ids; empty for fixture rows.
    pub members: Vec<String>,
    /// Neighbor counts per dimension. Fixture rows only carry the dimensions
    /// the reference tables list.
    pub nb: BTreeMap<usize, u64>,
    /// Entities of this class per element.
    pub r: Rational,
}

impl TopologyClass {
    pub fn label(&self) -> String {
        class_label(self.dim, self.index)
    }
}

pub fn class_label(dim: usize, index: usize) -> String {
    let letter = ["V", "Ed", "Fa", "C"][dim];
    format!("({letter},{index})")
}

/// Full topology description of one mesh.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyStats {
    pub mesh: String,
    pub dimension: usize,
    pub derivation: Derivation,
    /// Sorted by dimension, then ratio, then neighbor counts.
    pub classes: Vec<TopologyClass>,
}

impl TopologyStats {
    pub fn classes_of_dim(&self, dim: usize) -> impl Iterator<Item = &TopologyClass> {
        self.classes.iter().filter(move |c| c.dim == dim)
    }

    /// Sum of ratios over one dimension; equals 1 for elements and
    /// `N_Ft/N_El` for facets.
    pub fn r_sum(&self, dim: usize) -> Rational {
        self.classes_of_dim(dim)
            .map(|c| c.r)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Euler characteristic per element from the ratio column alone:
    /// `sum_m (-1)^m sum_{classes of dim m} R`. Zero for any set of ratios
    /// that can describe a torus complex.
    pub fn euler_per_element(&self) -> Rational {
        (0..=self.dimension)
            .map(|m| {
                let total = self.r_sum(m);
                if m % 2 == 0 {
                    total
                } else {
                    -total
                }
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("complex failed validation: {0}")]
    InvalidComplex(String),
    #[error("probe tiling must be at least 3 per axis, got {0}")]
    ProbeTooSmall(i64),
    #[error("classification unstable between probe tilings {probe} and {next}: {detail}")]
    Unstable {
        probe: i64,
        next: i64,
        detail: String,
    },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Default probe tiling: the smallest size at which no neighborhood of the
/// built-in meshes wraps onto itself, verified by the internal stability
/// cross-check rather than assumed.
pub const DEFAULT_PROBE: i64 = 4;

/// Number of distinct dim-`m` entities sharing at least one element with
/// `entity`, the entity itself included when `m == entity.dim`.
pub fn neighbor_count(torus: &TorusComplex, entity: EntityId, m: usize) -> Result<u64, MeshError> {
    torus.neighbor_count(entity, m)
}

/// Groups orbits by neighbor-count signature measured on a probe torus.
///
/// Signatures are recomputed on the `probe + 1` torus; any difference means
/// the probe was too small (or the complex is degenerate) and is an error.
pub fn classify(complex: &PeriodicCellComplex, probe: i64) -> Result<TopologyStats, TopologyError> {
    if probe < 3 {
        return Err(TopologyError::ProbeTooSmall(probe));
    }
    let report = complex.validate();
    if !report.passed() {
        let detail: Vec<String> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(TopologyError::InvalidComplex(detail.join("; ")));
    }

    let signatures = orbit_signatures(complex, probe)?;
    let next = orbit_signatures(complex, probe + 1)?;
    for (id, sig) in &signatures {
        if next[id] != *sig {
            return Err(TopologyError::Unstable {
                probe,
                next: probe + 1,
                detail: format!("orbit `{id}`: {:?} vs {:?}", sig, next[id]),
            });
        }
    }

    let d = complex.dimension;
    let n_el = complex.orbits_of_dim(d).len() as i128;
    // group members by (dim, signature)
    let mut groups: BTreeMap<(usize, Vec<u64>), Vec<String>> = BTreeMap::new();
    for orbit in &complex.orbits {
        let sig = signatures[&orbit.id].clone();
        groups
            .entry((orbit.dim, sig))
            .or_default()
            .push(orbit.id.clone());
    }

    let mut classes: Vec<TopologyClass> = groups
        .into_iter()
        .map(|((dim, sig), members)| TopologyClass {
            dim,
            index: 0,
            r: rat(members.len() as i128, n_el),
            members,
            nb: sig.iter().copied().enumerate().collect(),
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.dim, a.r, a.nb.values().collect::<Vec<_>>()).cmp(&(
            b.dim,
            b.r,
            b.nb.values().collect::<Vec<_>>(),
        ))
    });
    let mut counter = vec![0usize; d + 1];
    for class in &mut classes {
        counter[class.dim] += 1;
        class.index = counter[class.dim];
    }

    Ok(TopologyStats {
        mesh: complex.name.clone(),
        dimension: d,
        derivation: Derivation::MeshDerived,
        classes,
    })
}

fn orbit_signatures(
    complex: &PeriodicCellComplex,
    probe: i64,
) -> Result<BTreeMap<String, Vec<u64>>, TopologyError> {
    let d = complex.dimension;
    let torus = tile(complex, &vec![probe; d])?;
    let mut signatures = BTreeMap::new();
    for dim in 0..=d {
        for (pos, id) in torus.orbit_ids(dim).iter().enumerate() {
            let rep = EntityId {
                dim,
                orbit: pos,
                cell: 0,
            };
            let sig: Result<Vec<u64>, MeshError> =
                (0..=d).map(|m| torus.neighbor_count(rep, m)).collect();
            signatures.insert(id.to_string(), sig?);
        }
    }
    Ok(signatures)
}

/// One side-by-side entry of the symmetric-relation consistency check.
#[derive(Debug, Clone)]
pub struct PairCheck {
    pub dim_a: usize,
    pub dim_b: usize,
    /// `sum over dim_a classes of R * Nb(dim_b)`
    pub lhs: Rational,
    /// `sum over dim_b classes of R * Nb(dim_a)`
    pub rhs: Rational,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, Default)]
pub struct PairSymmetryReport {
    pub pairs: Vec<PairCheck>,
}

impl PairSymmetryReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(PairCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.passed())
    }
}

/// Checks, for every pair of dimensions with available data, that the two
/// ways of counting ordered cross-dimension neighbor pairs per element agree.
/// The neighbor relation is symmetric, so mesh-derived stats always pass;
/// failures flag inconsistent fixture tables.
pub fn pair_symmetry_check(stats: &TopologyStats) -> PairSymmetryReport {
    let mut report = PairSymmetryReport::default();
    for dim_a in 0..=stats.dimension {
        for dim_b in dim_a + 1..=stats.dimension {
            let a_classes: Vec<&TopologyClass> = stats.classes_of_dim(dim_a).collect();
            let b_classes: Vec<&TopologyClass> = stats.classes_of_dim(dim_b).collect();
            if a_classes.is_empty() || b_classes.is_empty() {
                continue;
            }
            let available = a_classes.iter().all(|c| c.nb.contains_key(&dim_b))
                && b_classes.iter().all(|c| c.nb.contains_key(&dim_a));
            if !available {
                continue;
            }
            let side = |classes: &[&TopologyClass], m: usize| {
                classes
                    .iter()
                    .map(|c| c.r * int(c.nb[&m] as i128))
                    .fold(Rational::zero(), |x, y| x + y)
            };
            report.pairs.push(PairCheck {
                dim_a,
                dim_b,
                lhs: side(&a_classes, dim_b),
                rhs: side(&b_classes, dim_a),
            });
        }
    }
    report
}

/// Alternating sum of orbit counts.
pub fn euler_characteristic(complex: &PeriodicCellComplex) -> i64 {
    complex.euler_characteristic()
}
