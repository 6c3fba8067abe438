//! Finite torus tilings of a periodic unit cell.
//!
//! A [`TorusComplex`] realizes `n_1 x ... x n_d` copies of the unit cell with
//! wrap-around identification. Entities are `(orbit, cell)` pairs; incidence
//! follows the orbit boundary offsets modulo the tiling. This is the ground
//! truth the brute-force coupling oracle and the topology classifier run on.

use std::collections::BTreeSet;

use crate::complex::{MeshError, OffsetVector, PeriodicCellComplex};

/// Unit-cell closure entries per dimension: (orbit position within dim, offset).
type UnitClosure = Vec<Vec<(usize, Vec<i64>)>>;

/// One concrete entity on the torus: an orbit (identified by its position
/// among the orbits of its dimension) in a specific lattice cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityId {
    pub dim: usize,
    pub orbit: usize,
    pub cell: u64,
}

#[derive(Debug, Clone)]
pub struct TorusComplex {
    complex: PeriodicCellComplex,
    tiling: Vec<i64>,
    num_cells: u64,
    /// dim -> orbit indices into `complex.orbits`, declaration order.
    orbit_index: Vec<Vec<usize>>,
    /// indexed by orbit position in the complex
    unit_closures: Vec<UnitClosure>,
    /// per facet flat index: boundary incidences counted with multiplicity
    facet_incidences: Vec<u64>,
    /// per dim, per entity flat index: elements whose closure contains it
    elements_of: Vec<Vec<Vec<u64>>>,
}

/// Instantiates a finite torus tiling. All per-axis counts must be >= 1.
pub fn tile(complex: &PeriodicCellComplex, tiling: &[i64]) -> Result<TorusComplex, MeshError> {
    let d = complex.dimension;
    if tiling.len() != d {
        return Err(MeshError::TilingDimensionMismatch {
            expected: d,
            got: tiling.len(),
        });
    }
    if tiling.iter().any(|&n| n < 1) {
        return Err(MeshError::InvalidTiling(tiling.to_vec()));
    }
    let num_cells = tiling.iter().map(|&n| n as u64).product();

    let mut orbit_index = vec![Vec::new(); d + 1];
    let mut pos_within_dim = vec![0usize; complex.orbits.len()];
    for (i, orbit) in complex.orbits.iter().enumerate() {
        pos_within_dim[i] = orbit_index[orbit.dim].len();
        orbit_index[orbit.dim].push(i);
    }

    let mut unit_closures = Vec::with_capacity(complex.orbits.len());
    for orbit in &complex.orbits {
        let levels = complex.closure(&orbit.id)?;
        let mut per_dim = vec![Vec::new(); d + 1];
        for (m, level) in levels.into_iter().enumerate() {
            for (id, offset) in level {
                let idx = complex
                    .orbits
                    .iter()
                    .position(|o| o.id == id)
                    .expect("closure returns known orbits");
                per_dim[m].push((pos_within_dim[idx], offset.0));
            }
        }
        unit_closures.push(per_dim);
    }

    let mut torus = TorusComplex {
        complex: complex.clone(),
        tiling: tiling.to_vec(),
        num_cells,
        orbit_index,
        unit_closures,
        facet_incidences: Vec::new(),
        elements_of: Vec::new(),
    };

    // facet incidences, multiplicity preserved
    let mut facet_incidences = vec![0u64; torus.entity_count(d - 1) as usize];
    for &el in &torus.orbit_index[d] {
        let orbit = &complex.orbits[el];
        for entry in &orbit.boundary {
            let pos = torus.orbit_index[d - 1]
                .iter()
                .position(|&i| complex.orbits[i].id == entry.of)
                .ok_or_else(|| MeshError::BoundaryDimensionMismatch {
                    orbit: orbit.id.clone(),
                    dim: d,
                    target: entry.of.clone(),
                    target_dim: complex.orbit(&entry.of).map_or(0, |o| o.dim),
                })?;
            for cell in 0..num_cells {
                let flat = torus.flat(pos, torus.wrap(cell, &entry.offset));
                facet_incidences[flat as usize] += 1;
            }
        }
    }
    torus.facet_incidences = facet_incidences;

    // reverse incidence from element closures, deduplicated per element
    let mut elements_of: Vec<Vec<Vec<u64>>> = (0..=d)
        .map(|m| vec![Vec::new(); torus.entity_count(m) as usize])
        .collect();
    for element in torus.entities(d) {
        let el_flat = torus.flat(element.orbit, element.cell);
        for (m, level) in torus.closure_of(element).iter().enumerate() {
            for &flat in level {
                elements_of[m][flat as usize].push(el_flat);
            }
        }
    }
    torus.elements_of = elements_of;
    Ok(torus)
}

impl TorusComplex {
    pub fn base(&self) -> &PeriodicCellComplex {
        &self.complex
    }

    pub fn tiling(&self) -> &[i64] {
        &self.tiling
    }

    pub fn dimension(&self) -> usize {
        self.complex.dimension
    }

    pub fn num_cells(&self) -> u64 {
        self.num_cells
    }

    pub fn num_elements(&self) -> u64 {
        self.entity_count(self.dimension())
    }

    /// Orbit ids of dimension `dim` in the order used by entity indexing.
    pub fn orbit_ids(&self, dim: usize) -> Vec<&str> {
        self.orbit_index[dim]
            .iter()
            .map(|&i| self.complex.orbits[i].id.as_str())
            .collect()
    }

    pub fn entity_count(&self, dim: usize) -> u64 {
        self.orbit_index[dim].len() as u64 * self.num_cells
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dimension())
            .map(|m| {
                let n = self.entity_count(m) as i64;
                if m % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Flat index of an entity within its dimension: orbit-major, then
    /// lexicographic cell index.
    pub fn flat(&self, orbit: usize, cell: u64) -> u64 {
        orbit as u64 * self.num_cells + cell
    }

    pub fn entity(&self, dim: usize, flat: u64) -> EntityId {
        EntityId {
            dim,
            orbit: (flat / self.num_cells) as usize,
            cell: flat % self.num_cells,
        }
    }

    pub fn contains(&self, e: EntityId) -> bool {
        e.dim <= self.dimension()
            && e.orbit < self.orbit_index[e.dim].len()
            && e.cell < self.num_cells
    }

    /// All entities of one dimension, in flat order.
    pub fn entities(&self, dim: usize) -> impl Iterator<Item = EntityId> + '_ {
        let orbits = self.orbit_index[dim].len();
        (0..orbits).flat_map(move |orbit| {
            (0..self.num_cells).map(move |cell| EntityId { dim, orbit, cell })
        })
    }

    fn decode(&self, mut cell: u64) -> Vec<i64> {
        let mut coords = vec![0i64; self.tiling.len()];
        for axis in (0..self.tiling.len()).rev() {
            let n = self.tiling[axis] as u64;
            coords[axis] = (cell % n) as i64;
            cell /= n;
        }
        coords
    }

    fn encode(&self, coords: &[i64]) -> u64 {
        coords
            .iter()
            .zip(&self.tiling)
            .fold(0u64, |acc, (&c, &n)| acc * n as u64 + c as u64)
    }

    /// Cell reached from `cell` by a lattice offset, with wrap-around.
    pub fn wrap(&self, cell: u64, offset: &OffsetVector) -> u64 {
        let coords = self.decode(cell);
        let wrapped: Vec<i64> = coords
            .iter()
            .zip(&offset.0)
            .zip(&self.tiling)
            .map(|((&c, &off), &n)| (c + off).rem_euclid(n))
            .collect();
        self.encode(&wrapped)
    }

    /// Downward closure of an entity on the torus, as flat indices per
    /// dimension. Distinct unit-cell incidences may merge under wrap; the
    /// result is deduplicated.
    pub fn closure_of(&self, e: EntityId) -> Vec<BTreeSet<u64>> {
        let orbit_global = self.orbit_index[e.dim][e.orbit];
        let mut levels = vec![BTreeSet::new(); e.dim + 1];
        for (m, entries) in self.unit_closures[orbit_global]
            .iter()
            .enumerate()
            .take(e.dim + 1)
        {
            for (pos, offset) in entries {
                let cell = self.wrap(e.cell, &OffsetVector(offset.clone()));
                levels[m].insert(self.flat(*pos, cell));
            }
        }
        levels
    }

    /// Elements whose closure contains the entity (each listed once).
    pub fn elements_containing(&self, e: EntityId) -> Result<&[u64], MeshError> {
        if !self.contains(e) {
            return Err(MeshError::UnknownOrbit(format!(
                "entity (dim {}, orbit {}, cell {})",
                e.dim, e.orbit, e.cell
            )));
        }
        Ok(&self.elements_of[e.dim][self.flat(e.orbit, e.cell) as usize])
    }

    /// Number of distinct dim-`m` entities sharing at least one element with
    /// `e`; `e` itself is included when `m == e.dim`.
    pub fn neighbor_count(&self, e: EntityId, m: usize) -> Result<u64, MeshError> {
        let mut seen = BTreeSet::new();
        for &el_flat in self.elements_containing(e)? {
            let element = self.entity(self.dimension(), el_flat);
            seen.extend(self.closure_of(element)[m].iter().copied());
        }
        Ok(seen.len() as u64)
    }

    /// Boundary incidence count per facet entity, multiplicity preserved.
    /// Exactly 2 everywhere on a valid complex, even when both incidences
    /// come from the same element on a 1-wide tiling.
    pub fn facet_incidence_counts(&self) -> &[u64] {
        &self.facet_incidences
    }
}
