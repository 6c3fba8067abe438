//! Periodic polytopal unit-cell complexes.
//!
//! A mesh is stored as one fundamental domain of a periodic tiling: a set of
//! entity *orbits* (one per translation class) whose codimension-1 boundary
//! references carry integer lattice offsets. Full downward incidence is
//! computed by composing those references, never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer lattice translation, in unit-cell units.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OffsetVector(pub Vec<i64>);

impl OffsetVector {
    pub fn zero(dim: usize) -> Self {
        OffsetVector(vec![0; dim])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add<&OffsetVector> for &OffsetVector {
    type Output = OffsetVector;
    fn add(self, rhs: &OffsetVector) -> OffsetVector {
        OffsetVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for OffsetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// One boundary incidence: a codim-1 orbit plus the lattice offset of the
/// referenced instance relative to the referencing one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRef {
    pub of: String,
    pub offset: OffsetVector,
}

/// A translation class of mesh entities of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityOrbit {
    pub id: String,
    pub dim: usize,
    /// Codim-1 boundary, multiplicities allowed (a quadrilateral face lists
    /// the same edge orbit twice with different offsets).
    pub boundary: Vec<BoundaryRef>,
}

/// A periodic unit-cell complex: the ground truth every other module works
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCellComplex {
    pub name: String,
    pub dimension: usize,
    pub orbits: Vec<EntityOrbit>,
}

impl PeriodicCellComplex {
    pub fn orbit(&self, id: &str) -> Option<&EntityOrbit> {
        self.orbits.iter().find(|o| o.id == id)
    }

    /// Orbit ids of one dimension, in declaration order.
    pub fn orbits_of_dim(&self, dim: usize) -> Vec<&EntityOrbit> {
        self.orbits.iter().filter(|o| o.dim == dim).collect()
    }

    /// `N_m`: number of orbits per dimension, indexed 0..=d.
    pub fn orbit_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dimension + 1];
        for orbit in &self.orbits {
            if orbit.dim <= self.dimension {
                counts[orbit.dim] += 1;
            }
        }
        counts
    }

    /// Alternating sum of orbit counts; zero for any torus complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.orbit_counts()
            .iter()
            .enumerate()
            .map(|(m, &n)| if m % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn id_index(&self) -> BTreeMap<&str, usize> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(i, o)| (o.id.as_str(), i))
            .collect()
    }

    /// Downward closure of one orbit: every distinct `(orbit, offset)` pair
    /// reachable along boundary chains, offsets summed along the chain. The
    /// orbit itself is included at its own dimension with zero offset.
    ///
    /// Returned per dimension `0..=dim(orbit)`, each list sorted.
    pub fn closure(&self, orbit_id: &str) -> Result<Vec<Vec<(String, OffsetVector)>>, MeshError> {
        let index = self.id_index();
        let &start = index
            .get(orbit_id)
            .ok_or_else(|| MeshError::UnknownOrbit(orbit_id.to_string()))?;
        let top_dim = self.orbits[start].dim;
        let mut seen: Vec<BTreeMap<(usize, OffsetVector), ()>> = vec![BTreeMap::new(); top_dim + 1];
        let mut frontier = vec![(start, OffsetVector::zero(self.dimension))];
        seen[top_dim].insert((start, OffsetVector::zero(self.dimension)), ());
        while let Some((pos, offset)) = frontier.pop() {
            for entry in &self.orbits[pos].boundary {
                let &target =
                    index
                        .get(entry.of.as_str())
                        .ok_or_else(|| MeshError::DanglingBoundary {
                            orbit: self.orbits[pos].id.clone(),
                            target: entry.of.clone(),
                        })?;
                let dim = self.orbits[target].dim;
                let combined = &offset + &entry.offset;
                if seen[dim].insert((target, combined.clone()), ()).is_none() {
                    frontier.push((target, combined));
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|level| {
                level
                    .into_keys()
                    .map(|(pos, off)| (self.orbits[pos].id.clone(), off))
                    .collect()
            })
            .collect())
    }

    /// Runs all consistency checks, reporting pass/fail per check rather than
    /// failing fast.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let d = self.dimension;
        let index = self.id_index();

        let mut integrity_issues = Vec::new();
        if !(2..=3).contains(&d) {
            integrity_issues.push(format!("dimension {d} is not 2 or 3"));
        }
        for orbit in &self.orbits {
            if orbit.dim > d {
                integrity_issues.push(format!("orbit `{}` has dim {} > {d}", orbit.id, orbit.dim));
            }
            if orbit.dim == 0 && !orbit.boundary.is_empty() {
                integrity_issues.push(format!(
                    "vertex orbit `{}` has a non-empty boundary",
                    orbit.id
                ));
            }
            for entry in &orbit.boundary {
                match index.get(entry.of.as_str()) {
                    None => integrity_issues.push(format!(
                        "orbit `{}` references unknown orbit `{}`",
                        orbit.id, entry.of
                    )),
                    Some(&target) => {
                        let td = self.orbits[target].dim;
                        if orbit.dim == 0 || td != orbit.dim - 1 {
                            integrity_issues.push(format!(
                                "orbit `{}` (dim {}) references `{}` (dim {td}), expected codim 1",
                                orbit.id, orbit.dim, entry.of
                            ));
                        }
                    }
                }
                if entry.offset.len() != d {
                    integrity_issues.push(format!(
                        "orbit `{}` boundary offset has length {}, expected {d}",
                        orbit.id,
                        entry.offset.len()
                    ));
                }
            }
        }
        let integrity_ok = integrity_issues.is_empty();
        report.push(
            "boundary reference integrity",
            integrity_ok,
            integrity_issues.join("; "),
        );

        let counts = self.orbit_counts();
        let has_core = counts.get(d).copied().unwrap_or(0) > 0
            && d >= 1
            && counts.get(d - 1).copied().unwrap_or(0) > 0;
        report.push(
            "element and facet orbits present",
            has_core,
            if has_core {
                String::new()
            } else {
                format!("orbit counts per dimension: {counts:?}")
            },
        );

        // Facet rule: counted with multiplicity across all element boundaries.
        let mut facet_uses: BTreeMap<&str, usize> = self
            .orbits
            .iter()
            .filter(|o| d >= 1 && o.dim == d - 1)
            .map(|o| (o.id.as_str(), 0))
            .collect();
        for element in self.orbits.iter().filter(|o| o.dim == d) {
            for entry in &element.boundary {
                if let Some(count) = facet_uses.get_mut(entry.of.as_str()) {
                    *count += 1;
                }
            }
        }
        let facet_issues: Vec<String> = facet_uses
            .iter()
            .filter(|(_, &uses)| uses != 2)
            .map(|(id, &uses)| format!("facet orbit `{id}` appears {uses} times, expected 2"))
            .collect();
        report.push(
            "facet rule",
            facet_issues.is_empty(),
            facet_issues.join("; "),
        );

        let chi = self.euler_characteristic();
        report.push(
            "euler characteristic",
            chi == 0,
            if chi == 0 {
                String::new()
            } else {
                format!("chi = {chi} != 0")
            },
        );

        // Closure consistency: every lower-dimensional orbit is reachable from
        // some element, and each element reaches every dimension.
        if integrity_ok && has_core {
            let mut reached: BTreeMap<&str, bool> =
                self.orbits.iter().map(|o| (o.id.as_str(), false)).collect();
            let mut closure_issues = Vec::new();
            for element in self.orbits.iter().filter(|o| o.dim == d) {
                match self.closure(&element.id) {
                    Ok(levels) => {
                        for (m, level) in levels.iter().enumerate() {
                            if level.is_empty() {
                                closure_issues.push(format!(
                                    "element `{}` reaches no dim-{m} entity",
                                    element.id
                                ));
                            }
                            for (id, _) in level {
                                if let Some(flag) = reached.get_mut(id.as_str()) {
                                    *flag = true;
                                }
                            }
                        }
                    }
                    Err(err) => closure_issues.push(err.to_string()),
                }
            }
            for orbit in &self.orbits {
                if orbit.dim < d && !reached[orbit.id.as_str()] {
                    closure_issues.push(format!(
                        "orbit `{}` is not in the closure of any element",
                        orbit.id
                    ));
                }
            }
            report.push(
                "closure consistency",
                closure_issues.is_empty(),
                closure_issues.join("; "),
            );
        } else {
            report.push(
                "closure consistency",
                false,
                "skipped: integrity or orbit-count checks failed".to_string(),
            );
        }

        report
    }
}

/// Outcome of [`PeriodicCellComplex::validate`].
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(ValidationCheck {
            name,
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = if check.passed { "pass" } else { "FAIL" };
            if check.detail.is_empty() {
                writeln!(f, "{}: {}", check.name, status)?;
            } else {
                writeln!(f, "{}: {} ({})", check.name, status, check.detail)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh schema violation: {0}")]
    Schema(String),
    #[error("dangling boundary reference: orbit `{orbit}` references unknown orbit `{target}`")]
    DanglingBoundary { orbit: String, target: String },
    #[error("boundary dimension mismatch: orbit `{orbit}` (dim {dim}) references `{target}` (dim {target_dim})")]
    BoundaryDimensionMismatch {
        orbit: String,
        dim: usize,
        target: String,
        target_dim: usize,
    },
    #[error("dimension mismatch in offsets: orbit `{orbit}` has offset of length {got}, expected {expected}")]
    OffsetDimensionMismatch {
        orbit: String,
        got: usize,
        expected: usize,
    },
    #[error("unknown orbit id `{0}`")]
    UnknownOrbit(String),
    #[error("tiling counts must all be >= 1, got {0:?}")]
    InvalidTiling(Vec<i64>),
    #[error("tiling must provide {expected} per-axis counts, got {got}")]
    TilingDimensionMismatch { expected: usize, got: usize },
}

// ---------------------------------------------------------------------------
// mesh file schema

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeshDocument {
    name: String,
    dimension: usize,
    orbits: Vec<OrbitDocument>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitDocument {
    id: String,
    dim: usize,
    boundary: Vec<BoundaryDocument>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryDocument {
    of: String,
    offset: Vec<i64>,
    /// Orientation data is accepted and ignored: incidence counting never
    /// needs it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<i64>,
}

/// Parses a mesh document. Schema-level problems (unknown fields, dangling
/// references, offset length mismatches) are errors; topological problems
/// (facet rule, Euler characteristic) are left to [`PeriodicCellComplex::validate`].
pub fn parse_mesh(text: &str) -> Result<PeriodicCellComplex, MeshError> {
    let doc: MeshDocument =
        serde_json::from_str(text).map_err(|e| MeshError::Schema(e.to_string()))?;
    if !(2..=3).contains(&doc.dimension) {
        return Err(MeshError::Schema(format!(
            "dimension must be 2 or 3, got {}",
            doc.dimension
        )));
    }
    let mut dims: BTreeMap<&str, usize> = BTreeMap::new();
    for orbit in &doc.orbits {
        if dims.insert(orbit.id.as_str(), orbit.dim).is_some() {
            return Err(MeshError::Schema(format!(
                "duplicate orbit id `{}`",
                orbit.id
            )));
        }
        if orbit.dim > doc.dimension {
            return Err(MeshError::Schema(format!(
                "orbit `{}` has dim {} above mesh dimension {}",
                orbit.id, orbit.dim, doc.dimension
            )));
        }
    }
    for orbit in &doc.orbits {
        if orbit.dim == 0 && !orbit.boundary.is_empty() {
            return Err(MeshError::Schema(format!(
                "dim-0 orbit `{}` must have an empty boundary",
                orbit.id
            )));
        }
        for entry in &orbit.boundary {
            let target_dim =
                *dims
                    .get(entry.of.as_str())
                    .ok_or_else(|| MeshError::DanglingBoundary {
                        orbit: orbit.id.clone(),
                        target: entry.of.clone(),
                    })?;
            if orbit.dim == 0 || target_dim != orbit.dim - 1 {
                return Err(MeshError::BoundaryDimensionMismatch {
                    orbit: orbit.id.clone(),
                    dim: orbit.dim,
                    target: entry.of.clone(),
                    target_dim,
                });
            }
            if entry.offset.len() != doc.dimension {
                return Err(MeshError::OffsetDimensionMismatch {
                    orbit: orbit.id.clone(),
                    got: entry.offset.len(),
                    expected: doc.dimension,
                });
            }
        }
    }
    Ok(PeriodicCellComplex {
        name: doc.name,
        dimension: doc.dimension,
        orbits: doc
            .orbits
            .into_iter()
            .map(|o| EntityOrbit {
                id: o.id,
                dim: o.dim,
                boundary: o
                    .boundary
                    .into_iter()
                    .map(|b| BoundaryRef {
                        of: b.of,
                        offset: OffsetVector(b.offset),
                    })
                    .collect(),
            })
            .collect(),
    })
}

/// Serializes a complex to the mesh file schema. `parse_mesh` of the output
/// reconstructs a structurally equal complex.
pub fn serialize_mesh(complex: &PeriodicCellComplex) -> String {
    let doc = MeshDocument {
        name: complex.name.clone(),
        dimension: complex.dimension,
        orbits: complex
            .orbits
            .iter()
            .map(|o| OrbitDocument {
                id: o.id.clone(),
                dim: o.dim,
                boundary: o
                    .boundary
                    .iter()
                    .map(|b| BoundaryDocument {
                        of: b.of.clone(),
                        offset: b.offset.0.clone(),
                        sign: None,
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("mesh documents always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinMeshId};

    #[test]
    fn round_trip_preserves_structure() {
        for id in BuiltinMeshId::ALL {
            let complex = builtin(id);
            let text = serialize_mesh(&complex);
            let reparsed = parse_mesh(&text).unwrap();
            assert_eq!(complex, reparsed, "round trip changed {id}");
        }
    }

    #[test]
    fn empty_name_is_preserved() {
        let mut complex = builtin(BuiltinMeshId::Quad2d);
        complex.name = String::new();
        let reparsed = parse_mesh(&serialize_mesh(&complex)).unwrap();
        assert_eq!(reparsed.name, "");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{ "name": "x", "dimension": 2, "orbits": [], "extra": 1 }"#;
        assert!(matches!(parse_mesh(text), Err(MeshError::Schema(_))));
    }

    #[test]
    fn orientation_sign_is_accepted_and_ignored() {
        let text = r#"{
            "name": "seg", "dimension": 2,
            "orbits": [
                { "id": "v", "dim": 0, "boundary": [] },
                { "id": "e", "dim": 1, "boundary": [
                    { "of": "v", "offset": [0,0], "sign": -1 },
                    { "of": "v", "offset": [1,0], "sign": 1 }
                ] }
            ]
        }"#;
        let complex = parse_mesh(text).unwrap();
        assert_eq!(complex.orbit("e").unwrap().boundary.len(), 2);
        assert!(!serialize_mesh(&complex).contains("sign"));
    }

    #[test]
    fn boundary_dimension_mismatch_is_an_error() {
        let text = r#"{
            "name": "bad", "dimension": 2,
            "orbits": [
                { "id": "e1", "dim": 1, "boundary": [] },
                { "id": "e2", "dim": 1, "boundary": [ { "of": "e1", "offset": [0,0] } ] }
            ]
        }"#;
        let err = parse_mesh(text).unwrap_err();
        assert!(
            err.to_string().contains("boundary dimension mismatch"),
            "{err}"
        );
    }

    #[test]
    fn offset_length_mismatch_is_an_error() {
        let text = r#"{
            "name": "bad", "dimension": 2,
            "orbits": [
                { "id": "v", "dim": 0, "boundary": [] },
                { "id": "e", "dim": 1, "boundary": [ { "of": "v", "offset": [0,0,0] } ] }
            ]
        }"#;
        let err = parse_mesh(text).unwrap_err();
        assert!(
            err.to_string().contains("dimension mismatch in offsets"),
            "{err}"
        );
    }

    #[test]
    fn validate_flags_broken_facet_rule() {
        let mut complex = builtin(BuiltinMeshId::Quad2d);
        let element = complex
            .orbits
            .iter_mut()
            .find(|o| o.dim == 2)
            .expect("quad has a face orbit");
        element.boundary.pop();
        let report = complex.validate();
        assert!(!report.passed());
        let facet = report
            .checks
            .iter()
            .find(|c| c.name == "facet rule")
            .unwrap();
        assert!(!facet.passed);
        assert!(facet.detail.contains("appears 1 times"), "{}", facet.detail);
    }

    #[test]
    fn synthetic_counts_can_violate_euler() {
        // Counts per element (1, 11/3, 4, 1) scaled by three elements give
        // chi = 3 - 11 + 12 - 3 = 1, so no torus complex can realize them.
        fn orbits(dim: usize, n: usize, prefix: &str) -> Vec<EntityOrbit> {
            (0..n)
                .map(|i| EntityOrbit {
                    id: format!("{prefix}{i}"),
                    dim,
                    boundary: Vec::new(),
                })
                .collect()
        }
        let complex = PeriodicCellComplex {
            name: "printed-ratios".into(),
            dimension: 3,
            orbits: [
                orbits(0, 3, "v"),
                orbits(1, 11, "e"),
                orbits(2, 12, "f"),
                orbits(3, 3, "c"),
            ]
            .concat(),
        };
        assert_eq!(complex.euler_characteristic(), 1);
        assert!(!complex.validate().passed());
    }

    #[test]
    fn hexahedron_counts_pass_euler() {
        let complex = builtin(BuiltinMeshId::Hex3d);
        assert_eq!(complex.orbit_counts(), vec![1, 3, 3, 1]);
        assert_eq!(complex.euler_characteristic(), 0);
    }
}
