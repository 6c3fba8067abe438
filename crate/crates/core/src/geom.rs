//! Construction of periodic complexes from embedded unit-cell geometry.
//!
//! The built-in meshes are specified as concrete cells with integer vertex
//! coordinates plus a lattice basis. Entities that differ by a lattice
//! translation are folded into one orbit by reducing the lexicographically
//! smallest vertex into the fundamental domain; boundary offsets fall out of
//! the same reduction. This keeps the hand-written input down to the top
//! cells and makes orbit identification a computation instead of bookkeeping.

use std::collections::BTreeMap;

use crate::complex::{BoundaryRef, EntityOrbit, OffsetVector, PeriodicCellComplex};

pub type Point = Vec<i64>;

/// Integer lattice basis, stored column-wise. Determinant must be positive.
#[derive(Debug, Clone)]
pub struct Lattice {
    columns: Vec<Point>,
    dimension: usize,
    det: i128,
    adjugate: Vec<Vec<i128>>, // det * inverse, row-major
}

impl Lattice {
    pub fn new(columns: Vec<Point>) -> Self {
        let dimension = columns.len();
        assert!(
            (2..=3).contains(&dimension) && columns.iter().all(|c| c.len() == dimension),
            "lattice basis must be a square 2x2 or 3x3 matrix"
        );
        let m = |r: usize, c: usize| columns[c][r] as i128;
        let (det, adjugate) = match dimension {
            2 => (
                m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
                vec![vec![m(1, 1), -m(0, 1)], vec![-m(1, 0), m(0, 0)]],
            ),
            _ => {
                let cof = |r: usize, c: usize| {
                    let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
                    let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
                    let minor = m(rows[0], cols[0]) * m(rows[1], cols[1])
                        - m(rows[0], cols[1]) * m(rows[1], cols[0]);
                    if (r + c).is_multiple_of(2) {
                        minor
                    } else {
                        -minor
                    }
                };
                let det = m(0, 0) * cof(0, 0) + m(0, 1) * cof(0, 1) + m(0, 2) * cof(0, 2);
                // adjugate = transpose of cofactor matrix
                let adj = (0..3)
                    .map(|r| (0..3).map(|c| cof(c, r)).collect())
                    .collect();
                (det, adj)
            }
        };
        assert!(det > 0, "lattice basis must have positive determinant");
        Self {
            columns,
            dimension,
            det,
            adjugate,
        }
    }

    pub fn diagonal(periods: &[i64]) -> Self {
        let d = periods.len();
        Self::new(
            (0..d)
                .map(|c| {
                    (0..d)
                        .map(|r| if r == c { periods[c] } else { 0 })
                        .collect()
                })
                .collect(),
        )
    }

    /// Lattice coordinates `t = floor(B^-1 v)` of the cell containing `v`.
    fn cell_of(&self, point: &Point) -> Vec<i64> {
        (0..self.dimension)
            .map(|i| {
                let numer: i128 = (0..self.dimension)
                    .map(|j| self.adjugate[i][j] * point[j] as i128)
                    .sum();
                numer.div_euclid(self.det) as i64
            })
            .collect()
    }

    fn translate(&self, point: &Point, cell: &[i64]) -> Point {
        (0..self.dimension)
            .map(|i| {
                point[i]
                    + (0..self.dimension)
                        .map(|j| self.columns[j][i] * cell[j])
                        .sum::<i64>()
            })
            .collect()
    }
}

/// One concrete entity instance, carrying enough structure to enumerate its
/// codimension-1 boundary.
#[derive(Debug, Clone)]
pub enum Shape {
    Vertex(Point),
    Edge(Point, Point),
    /// Ordered vertex cycle; edges are the consecutive pairs.
    Polygon(Vec<Point>),
    /// Faces as ordered vertex cycles.
    Polyhedron(Vec<Vec<Point>>),
}

impl Shape {
    fn dim(&self) -> usize {
        match self {
            Shape::Vertex(_) => 0,
            Shape::Edge(..) => 1,
            Shape::Polygon(_) => 2,
            Shape::Polyhedron(_) => 3,
        }
    }

    fn vertices(&self) -> Vec<Point> {
        let mut points: Vec<Point> = match self {
            Shape::Vertex(p) => vec![p.clone()],
            Shape::Edge(a, b) => vec![a.clone(), b.clone()],
            Shape::Polygon(cycle) => cycle.clone(),
            Shape::Polyhedron(faces) => faces.iter().flatten().cloned().collect(),
        };
        points.sort();
        points.dedup();
        points
    }

    fn translate(&self, lattice: &Lattice, cell: &[i64]) -> Shape {
        let t = |p: &Point| lattice.translate(p, cell);
        match self {
            Shape::Vertex(p) => Shape::Vertex(t(p)),
            Shape::Edge(a, b) => Shape::Edge(t(a), t(b)),
            Shape::Polygon(cycle) => Shape::Polygon(cycle.iter().map(t).collect()),
            Shape::Polyhedron(faces) => {
                Shape::Polyhedron(faces.iter().map(|f| f.iter().map(t).collect()).collect())
            }
        }
    }

    fn children(&self) -> Vec<Shape> {
        match self {
            Shape::Vertex(_) => Vec::new(),
            Shape::Edge(a, b) => vec![Shape::Vertex(a.clone()), Shape::Vertex(b.clone())],
            Shape::Polygon(cycle) => (0..cycle.len())
                .map(|i| Shape::Edge(cycle[i].clone(), cycle[(i + 1) % cycle.len()].clone()))
                .collect(),
            Shape::Polyhedron(faces) => faces.iter().map(|f| Shape::Polygon(f.clone())).collect(),
        }
    }
}

type OrbitKey = Vec<Point>;
/// Boundary of a canonical shape: (child dim, child orbit key, lattice offset).
type BoundarySpec = Vec<(usize, OrbitKey, Vec<i64>)>;

struct Builder {
    lattice: Lattice,
    // (dim, canonical vertex set) -> boundary as (child dim, child key, offset)
    orbits: BTreeMap<(usize, OrbitKey), BoundarySpec>,
}

impl Builder {
    /// Reduces a shape to its canonical translate and registers it (and,
    /// recursively, its boundary). Returns the orbit key and the lattice cell
    /// the instance occupied.
    fn register(&mut self, shape: &Shape) -> (OrbitKey, Vec<i64>) {
        let vertices = shape.vertices();
        let anchor = vertices.first().expect("shapes have vertices");
        let cell = self.lattice.cell_of(anchor);
        let negated: Vec<i64> = cell.iter().map(|c| -c).collect();
        let canonical = shape.translate(&self.lattice, &negated);
        let key = canonical.vertices();
        let slot = (shape.dim(), key.clone());
        if !self.orbits.contains_key(&slot) {
            self.orbits.insert(slot.clone(), Vec::new());
            let boundary: BoundarySpec = canonical
                .children()
                .iter()
                .map(|child| {
                    let (child_key, child_cell) = self.register(child);
                    (child.dim(), child_key, child_cell)
                })
                .collect();
            self.orbits.insert(slot, boundary);
        }
        (key, cell)
    }
}

/// Builds a [`PeriodicCellComplex`] from top-dimensional cells given in unit
/// cell coordinates. Orbit ids are `v0.., e0.., f0.., c0..` per dimension, in
/// canonical (sorted vertex set) order.
pub fn complex_from_cells(name: &str, lattice: Lattice, cells: Vec<Shape>) -> PeriodicCellComplex {
    let dimension = lattice.dimension;
    assert!(cells.iter().all(|c| c.dim() == dimension));
    let mut builder = Builder {
        lattice,
        orbits: BTreeMap::new(),
    };
    for cell in &cells {
        builder.register(cell);
    }

    let prefixes = ["v", "e", "f", "c"];
    let mut ids: BTreeMap<(usize, OrbitKey), String> = BTreeMap::new();
    let mut per_dim = vec![0usize; dimension + 1];
    for (dim, key) in builder.orbits.keys() {
        ids.insert(
            (*dim, key.clone()),
            format!("{}{}", prefixes[*dim], per_dim[*dim]),
        );
        per_dim[*dim] += 1;
    }

    let orbits = builder
        .orbits
        .iter()
        .map(|((dim, key), boundary)| EntityOrbit {
            id: ids[&(*dim, key.clone())].clone(),
            dim: *dim,
            boundary: boundary
                .iter()
                .map(|(cdim, ckey, cell)| BoundaryRef {
                    of: ids[&(*cdim, ckey.clone())].clone(),
                    offset: OffsetVector(cell.clone()),
                })
                .collect(),
        })
        .collect();

    PeriodicCellComplex {
        name: name.to_string(),
        dimension,
        orbits,
    }
}

/// Orders a set of co-planar points into a cycle by walking the adjacency
/// `|p - q|^2 == edge_sq`; panics unless every point has exactly two
/// neighbors and the walk closes. Used for polytopes whose faces are easiest
/// to state as vertex sets.
pub fn cycle_from_adjacency(points: &[Point], edge_sq: i64) -> Vec<Point> {
    let dist_sq =
        |a: &Point, b: &Point| -> i64 { a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum() };
    let neighbors = |p: &Point| -> Vec<Point> {
        points
            .iter()
            .filter(|q| dist_sq(p, q) == edge_sq)
            .cloned()
            .collect()
    };
    for p in points {
        assert_eq!(
            neighbors(p).len(),
            2,
            "point {p:?} is not on a simple cycle"
        );
    }
    let start = points.iter().min().expect("cycle needs points").clone();
    let mut cycle = vec![start.clone()];
    let mut current = neighbors(&start).into_iter().min().unwrap();
    while current != start {
        cycle.push(current.clone());
        let prev = cycle[cycle.len() - 2].clone();
        current = neighbors(&current)
            .into_iter()
            .find(|q| *q != prev)
            .expect("cycle walk got stuck");
    }
    assert_eq!(cycle.len(), points.len(), "cycle walk missed points");
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_lattice_reduction() {
        let lattice = Lattice::diagonal(&[2, 2]);
        assert_eq!(lattice.cell_of(&vec![3, -1]), vec![1, -1]);
        assert_eq!(lattice.translate(&vec![3, -1], &[-1, 1]), vec![1, 1]);
    }

    #[test]
    fn skew_lattice_reduction() {
        // body-centered basis used by the truncated octahedron mesh
        let lattice = Lattice::new(vec![vec![4, 0, 0], vec![0, 4, 0], vec![2, 2, 2]]);
        assert_eq!(lattice.cell_of(&vec![0, 0, 0]), vec![0, 0, 0]);
        assert_eq!(lattice.cell_of(&vec![2, 2, 2]), vec![0, 0, 1]);
        assert_eq!(lattice.cell_of(&vec![4, 0, 0]), vec![1, 0, 0]);
        // (0,1,2) and (2,-1,0) differ by the lattice vector (2,-2,-2)
        let a = lattice.cell_of(&vec![0, 1, 2]);
        let neg: Vec<i64> = a.iter().map(|c| -c).collect();
        let canon_a = lattice.translate(&vec![0, 1, 2], &neg);
        let b = lattice.cell_of(&vec![2, -1, 0]);
        let neg: Vec<i64> = b.iter().map(|c| -c).collect();
        let canon_b = lattice.translate(&vec![2, -1, 0], &neg);
        assert_eq!(canon_a, canon_b);
    }

    #[test]
    fn cycle_walk_orders_a_square() {
        let square = vec![vec![2, 0, 1], vec![2, 1, 0], vec![2, 0, -1], vec![2, -1, 0]];
        let cycle = cycle_from_adjacency(&square, 2);
        assert_eq!(cycle.len(), 4);
        assert_eq!(cycle[0], vec![2, -1, 0]);
    }
}
