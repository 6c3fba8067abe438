//! Brute-force ground truth: coupling patterns enumerated on a torus.
//!
//! Unknowns are laid out entity by entity, the coupling rules of each method
//! are applied literally, and the resulting pattern is counted exactly. Per
//! element, the totals must reproduce the closed-form counts -- that
//! equivalence is the crate's central check.

use std::collections::HashSet;
use std::io::{self, Write};
use std::ops::Range;

use thiserror::Error;

use crate::complex::{MeshError, PeriodicCellComplex};
use crate::method::{coupling_ndof, Carrier, DofError, Method};
use crate::rational::{rat, Rational};
use crate::torus::{tile, TorusComplex};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Dof(#[from] DofError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Global unknown numbering for one method on one torus: contiguous ranges
/// per entity, ordered by dimension, then orbit, then lexicographic cell.
#[derive(Debug, Clone)]
pub struct GlobalDofMap {
    method: &'static str,
    k: i64,
    /// (dim, entity count, unknowns per entity, first unknown index)
    blocks: Vec<(usize, u64, u64, u64)>,
    total: u64,
}

impl GlobalDofMap {
    pub fn method(&self) -> &'static str {
        self.method
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Dimensions that carry unknowns, with the per-entity count.
    pub fn carrier_dims(&self) -> Vec<(usize, u64)> {
        self.blocks
            .iter()
            .map(|&(dim, _, ndof, _)| (dim, ndof))
            .collect()
    }

    /// Unknown range of one entity; empty when the entity's dimension
    /// carries no unknowns at this degree.
    pub fn range(&self, dim: usize, flat: u64) -> Range<u64> {
        for &(block_dim, count, ndof, start) in &self.blocks {
            if block_dim == dim {
                debug_assert!(flat < count);
                let lo = start + flat * ndof;
                return lo..lo + ndof;
            }
        }
        0..0
    }
}

/// Numbers the coupling unknowns of a method on a torus.
pub fn enumerate_coupling_dofs(
    torus: &TorusComplex,
    method: &dyn Method,
    k: i64,
) -> Result<GlobalDofMap, OracleError> {
    let d = torus.dimension();
    let mut blocks = Vec::new();
    let mut next = 0u64;
    for dim in 0..=d {
        let ndof = coupling_ndof(method, d, dim, k)? as u64;
        let in_carrier = crate::method::coupling_role(method.carrier(), dim, d).is_some();
        if !in_carrier {
            continue;
        }
        let count = torus.entity_count(dim);
        blocks.push((dim, count, ndof, next));
        next += count * ndof;
    }
    Ok(GlobalDofMap {
        method: method.name(),
        k,
        blocks,
        total: next,
    })
}

/// The global symmetric 0/1 coupling pattern, stored blockwise as ordered
/// entity pairs.
#[derive(Debug, Clone)]
pub struct CouplingPattern {
    map: GlobalDofMap,
    /// ordered pairs (dim_a, flat_a, dim_b, flat_b)
    blocks: Vec<(usize, u64, usize, u64)>,
    nnz: u64,
}

impl CouplingPattern {
    pub fn ndofs(&self) -> u64 {
        self.map.total()
    }

    pub fn nnz(&self) -> u64 {
        self.nnz
    }

    pub fn dof_map(&self) -> &GlobalDofMap {
        &self.map
    }

    /// A pattern over zero unknowns.
    pub fn empty() -> Self {
        CouplingPattern {
            map: GlobalDofMap {
                method: "none",
                k: 1,
                blocks: Vec::new(),
                total: 0,
            },
            blocks: Vec::new(),
            nnz: 0,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let set: HashSet<&(usize, u64, usize, u64)> = self.blocks.iter().collect();
        self.blocks
            .iter()
            .all(|&(da, fa, db, fb)| set.contains(&(db, fb, da, fa)))
    }

    /// Every entity that carries unknowns couples fully with itself.
    pub fn has_complete_diagonal(&self) -> bool {
        let set: HashSet<&(usize, u64, usize, u64)> = self.blocks.iter().collect();
        self.map.blocks.iter().all(|&(dim, count, ndof, _)| {
            ndof == 0 || (0..count).all(|flat| set.contains(&(dim, flat, dim, flat)))
        })
    }

    /// Expands the blockwise pattern into scalar entries, 0-based, sorted by
    /// row then column.
    pub fn entries(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::with_capacity(self.nnz as usize);
        for &(da, fa, db, fb) in &self.blocks {
            let rows = self.map.range(da, fa);
            let cols = self.map.range(db, fb);
            for i in rows {
                for j in cols.clone() {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Builds the coupling pattern of a method on a torus:
///
/// * element carriers: an element block couples with itself and with every
///   element sharing a facet,
/// * facet carriers: facet blocks couple when the facets share an element,
/// * skeleton carriers: sub-element entities couple when they share an
///   element, each entity's own diagonal block included.
pub fn coupling_pattern(
    torus: &TorusComplex,
    method: &dyn Method,
    k: i64,
) -> Result<CouplingPattern, OracleError> {
    let d = torus.dimension();
    let map = enumerate_coupling_dofs(torus, method, k)?;
    let mut pairs: HashSet<(usize, u64, usize, u64)> = HashSet::new();

    match method.carrier() {
        Carrier::Elements => {
            for element in torus.entities(d) {
                let a = torus.flat(element.orbit, element.cell);
                pairs.insert((d, a, d, a));
                for &facet in &torus.closure_of(element)[d - 1] {
                    let facet = torus.entity(d - 1, facet);
                    for &b in torus.elements_containing(facet)? {
                        pairs.insert((d, a, d, b));
                        pairs.insert((d, b, d, a));
                    }
                }
            }
        }
        Carrier::Facets => {
            for element in torus.entities(d) {
                let facets: Vec<u64> = torus.closure_of(element)[d - 1].iter().copied().collect();
                for &a in &facets {
                    for &b in &facets {
                        pairs.insert((d - 1, a, d - 1, b));
                    }
                }
            }
        }
        Carrier::Skeleton => {
            for element in torus.entities(d) {
                let closure = torus.closure_of(element);
                let entities: Vec<(usize, u64)> = (0..d)
                    .flat_map(|m| closure[m].iter().map(move |&f| (m, f)))
                    .collect();
                for &(da, fa) in &entities {
                    for &(db, fb) in &entities {
                        pairs.insert((da, fa, db, fb));
                    }
                }
            }
        }
    }

    let mut blocks: Vec<(usize, u64, usize, u64)> = pairs.into_iter().collect();
    blocks.sort_unstable();
    let ndof_of = |dim: usize| -> u64 {
        map.carrier_dims()
            .iter()
            .find(|(d2, _)| *d2 == dim)
            .map(|&(_, n)| n)
            .unwrap_or(0)
    };
    let nnz = blocks
        .iter()
        .map(|&(da, _, db, _)| ndof_of(da) * ndof_of(db))
        .sum();
    Ok(CouplingPattern { map, blocks, nnz })
}

/// Exact per-element counts measured on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCounts {
    pub ncdof_per_element: Rational,
    pub nnze_per_element: Rational,
}

/// Runs the oracle for one configuration on a prebuilt torus.
pub fn oracle_counts_on(
    torus: &TorusComplex,
    method: &dyn Method,
    k: i64,
) -> Result<OracleCounts, OracleError> {
    let pattern = coupling_pattern(torus, method, k)?;
    let elements = torus.num_elements() as i128;
    Ok(OracleCounts {
        ncdof_per_element: rat(pattern.ndofs() as i128, elements),
        nnze_per_element: rat(pattern.nnz() as i128, elements),
    })
}

/// Tiles `complex` with `tiling` cells per axis and runs the oracle.
pub fn oracle_counts(
    complex: &PeriodicCellComplex,
    method: &dyn Method,
    k: i64,
    tiling: i64,
) -> Result<OracleCounts, OracleError> {
    let torus = tile(complex, &vec![tiling; complex.dimension])?;
    oracle_counts_on(&torus, method, k)
}

/// Outcome of comparing per-element entry counts on two tiling sizes.
/// Disagreement means periodic wrap collapsed distinct couplings on the
/// smaller torus.
#[derive(Debug, Clone)]
pub struct StabilityCheck {
    pub samples: [(i64, Rational); 2],
}

impl StabilityCheck {
    pub fn passed(&self) -> bool {
        self.samples[0].1 == self.samples[1].1
    }
}

pub fn stability_check(
    complex: &PeriodicCellComplex,
    method: &dyn Method,
    k: i64,
    n1: i64,
    n2: i64,
) -> Result<StabilityCheck, OracleError> {
    assert_ne!(n1, n2, "stability check needs two distinct tiling sizes");
    let a = oracle_counts(complex, method, k, n1)?;
    let b = oracle_counts(complex, method, k, n2)?;
    Ok(StabilityCheck {
        samples: [(n1, a.nnze_per_element), (n2, b.nnze_per_element)],
    })
}

/// Writes the pattern in Matrix Market coordinate form: header line,
/// dimension line `rows cols nnz`, then 1-based entries sorted by row and
/// column.
pub fn write_matrix_market<W: Write>(pattern: &CouplingPattern, mut out: W) -> io::Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate pattern general")?;
    writeln!(
        out,
        "{} {} {}",
        pattern.ndofs(),
        pattern.ndofs(),
        pattern.nnz()
    )?;
    for (i, j) in pattern.entries() {
        writeln!(out, "{} {}", i + 1, j + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinMeshId};
    use crate::method::lookup;
    use crate::rational::int;

    fn torus(id: BuiltinMeshId, n: i64) -> TorusComplex {
        let complex = builtin(id);
        tile(&complex, &vec![n; complex.dimension]).unwrap()
    }

    #[test]
    fn dof_map_examples() {
        // 48 facets of degree 3 on the 4x4 triangle torus: 192 unknowns on
        // 32 elements
        let t = torus(BuiltinMeshId::Triangle2d, 4);
        let map = enumerate_coupling_dofs(&t, lookup("HDG").unwrap(), 3).unwrap();
        assert_eq!(map.total(), 192);
        assert_eq!(rat(map.total() as i128, 32), int(6));

        let t = torus(BuiltinMeshId::Hex3d, 3);
        let map = enumerate_coupling_dofs(&t, lookup("VEM").unwrap(), 1).unwrap();
        assert_eq!(map.total(), 27);

        let t = torus(BuiltinMeshId::Quad2d, 3);
        let map = enumerate_coupling_dofs(&t, lookup("DG").unwrap(), 1).unwrap();
        assert_eq!(map.total(), 27);
    }

    #[test]
    fn dof_ranges_are_contiguous_and_disjoint() {
        let t = torus(BuiltinMeshId::Triangle2d, 3);
        let vem = lookup("VEM").unwrap();
        let map = enumerate_coupling_dofs(&t, vem, 3).unwrap();
        let mut expected_next = 0;
        for (dim, ndof) in map.carrier_dims() {
            for flat in 0..t.entity_count(dim) {
                let range = map.range(dim, flat);
                assert_eq!(range.start, expected_next);
                assert_eq!(range.end - range.start, ndof);
                expected_next = range.end;
            }
        }
        assert_eq!(expected_next, map.total());
    }

    #[test]
    fn pattern_examples() {
        let t = torus(BuiltinMeshId::Quad2d, 4);
        let p = coupling_pattern(&t, lookup("HDG").unwrap(), 1).unwrap();
        assert_eq!(rat(p.nnz() as i128, 16), int(56));

        let t = torus(BuiltinMeshId::Triangle2d, 4);
        let p = coupling_pattern(&t, lookup("VEM").unwrap(), 1).unwrap();
        assert_eq!(rat(p.nnz() as i128, 32), rat(7, 2));

        // the closed form from the printed neighbor table gives 435 here;
        // the mesh itself has 36 faces around each vertex, not 12, giving
        // 459 = 435 + 24
        let t = torus(BuiltinMeshId::Hex3d, 3);
        let p = coupling_pattern(&t, lookup("VEM").unwrap(), 2).unwrap();
        assert_eq!(rat(p.nnz() as i128, 27), int(459));
    }

    #[test]
    fn patterns_are_symmetric_with_complete_diagonals() {
        for (mesh, method, k) in [
            (BuiltinMeshId::Triangle2d, "DG", 2),
            (BuiltinMeshId::Hexagon2d, "VEM", 3),
            (BuiltinMeshId::Tet3d, "HDG", 1),
            (BuiltinMeshId::Oct3d, "VEM", 2),
        ] {
            let t = torus(mesh, 3);
            let p = coupling_pattern(&t, lookup(method).unwrap(), k).unwrap();
            assert!(p.is_symmetric(), "{mesh} {method}");
            assert!(p.has_complete_diagonal(), "{mesh} {method}");
        }
    }

    #[test]
    fn oracle_count_examples() {
        let hexagon = builtin(BuiltinMeshId::Hexagon2d);
        let counts = oracle_counts(&hexagon, lookup("TDG2").unwrap(), 3, 4).unwrap();
        assert_eq!(counts.nnze_per_element, int(343));

        let oct = builtin(BuiltinMeshId::Oct3d);
        let counts = oracle_counts(&oct, lookup("HDG").unwrap(), 3, 3).unwrap();
        assert_eq!(counts.ncdof_per_element, int(40));

        let toct = builtin(BuiltinMeshId::Truncoct3d);
        let counts = oracle_counts(&toct, lookup("TDG1").unwrap(), 2, 3).unwrap();
        assert_eq!(counts.nnze_per_element, int(540));
    }

    #[test]
    fn stability_examples() {
        let triangle = builtin(BuiltinMeshId::Triangle2d);
        let check = stability_check(&triangle, lookup("DG").unwrap(), 1, 3, 4).unwrap();
        assert!(check.passed());
        assert_eq!(check.samples[0].1, int(36));

        // a 1-wide tiling folds all four neighbor blocks onto the element
        // itself: 9 entries per element instead of 45
        let quad = builtin(BuiltinMeshId::Quad2d);
        let check = stability_check(&quad, lookup("DG").unwrap(), 1, 1, 3).unwrap();
        assert!(!check.passed());
        assert_eq!(check.samples[0].1, int(9));
        assert_eq!(check.samples[1].1, int(45));

        let tet = builtin(BuiltinMeshId::Tet3d);
        let check = stability_check(&tet, lookup("VEM").unwrap(), 2, 3, 4).unwrap();
        assert!(check.passed());
    }

    #[test]
    fn matrix_market_export() {
        let t = torus(BuiltinMeshId::Triangle2d, 3);
        let p = coupling_pattern(&t, lookup("HDG").unwrap(), 1).unwrap();
        let mut buffer = Vec::new();
        write_matrix_market(&p, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "%%MatrixMarket matrix coordinate pattern general"
        );
        assert_eq!(lines.next().unwrap(), "54 54 540");
        assert_eq!(lines.clone().count(), 540);
        // sorted, 1-based
        let entries: Vec<(u64, u64)> = lines
            .map(|l| {
                let mut it = l.split_whitespace().map(|v| v.parse().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        assert!(entries.windows(2).all(|w| w[0] < w[1]));
        assert!(entries
            .iter()
            .all(|&(i, j)| (1..=54).contains(&i) && (1..=54).contains(&j)));

        let mut buffer = Vec::new();
        write_matrix_market(&CouplingPattern::empty(), &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "0 0 0");
    }

    /// The entry count is a property of the pattern, not the numbering:
    /// relabeling the unknowns by any permutation keeps nnz (and in
    /// particular the expansion contains no duplicate entries).
    #[test]
    fn nnz_is_invariant_under_relabeling() {
        let t = torus(BuiltinMeshId::Quad2d, 3);
        let p = coupling_pattern(&t, lookup("VEM").unwrap(), 3).unwrap();
        let entries = p.entries();
        assert_eq!(entries.len() as u64, p.nnz());
        let n = p.ndofs();
        // deterministic permutation: multiplication by a unit modulo n
        let permute = |x: u64| (x * 53 + 11) % n;
        let relabeled: HashSet<(u64, u64)> = entries
            .iter()
            .map(|&(i, j)| (permute(i), permute(j)))
            .collect();
        assert_eq!(relabeled.len() as u64, p.nnz());
    }
}
