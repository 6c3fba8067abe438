//! The seven built-in periodic meshes.
//!
//! Each is constructed from explicit unit-cell geometry (see [`crate::geom`])
//! rather than hand-written incidence tables; orbit identification across the
//! periodic boundary is computed, and the per-mesh tests pin the resulting
//! orbit counts.

use std::fmt;
use std::str::FromStr;

use crate::complex::PeriodicCellComplex;
use crate::geom::{complex_from_cells, cycle_from_adjacency, Lattice, Point, Shape};

/// Closed set of built-in mesh identifiers, in presentation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinMeshId {
    Triangle2d,
    Quad2d,
    Hexagon2d,
    Tet3d,
    Hex3d,
    Oct3d,
    Truncoct3d,
}

impl BuiltinMeshId {
    pub const ALL: [BuiltinMeshId; 7] = [
        BuiltinMeshId::Triangle2d,
        BuiltinMeshId::Quad2d,
        BuiltinMeshId::Hexagon2d,
        BuiltinMeshId::Tet3d,
        BuiltinMeshId::Hex3d,
        BuiltinMeshId::Oct3d,
        BuiltinMeshId::Truncoct3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinMeshId::Triangle2d => "triangle2d",
            BuiltinMeshId::Quad2d => "quad2d",
            BuiltinMeshId::Hexagon2d => "hexagon2d",
            BuiltinMeshId::Tet3d => "tet3d",
            BuiltinMeshId::Hex3d => "hex3d",
            BuiltinMeshId::Oct3d => "oct3d",
            BuiltinMeshId::Truncoct3d => "truncoct3d",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            BuiltinMeshId::Triangle2d => {
                "periodic square split along one diagonal into two triangles"
            }
            BuiltinMeshId::Quad2d => "periodic structured quadrilateral mesh, one square per cell",
            BuiltinMeshId::Hexagon2d => "periodic honeycomb, one hexagon per cell",
            BuiltinMeshId::Tet3d => "periodic cube split into six tetrahedra along a Kuhn path",
            BuiltinMeshId::Hex3d => "periodic structured hexahedral mesh, one cube per cell",
            BuiltinMeshId::Oct3d => {
                "periodic cube split into three octahedra centered at face midpoints"
            }
            BuiltinMeshId::Truncoct3d => {
                "periodic truncated octahedra, the body-centered cubic Voronoi honeycomb"
            }
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            BuiltinMeshId::Triangle2d | BuiltinMeshId::Quad2d | BuiltinMeshId::Hexagon2d => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for BuiltinMeshId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinMeshId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinMeshId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown builtin mesh `{s}`"))
    }
}

/// Builtin meshes with one-line descriptions, in presentation order.
pub fn list_builtins() -> Vec<(BuiltinMeshId, &'static str)> {
    BuiltinMeshId::ALL
        .into_iter()
        .map(|id| (id, id.description()))
        .collect()
}

/// Constructs a built-in mesh. The result always passes
/// [`PeriodicCellComplex::validate`].
pub fn builtin(id: BuiltinMeshId) -> PeriodicCellComplex {
    match id {
        BuiltinMeshId::Triangle2d => triangle2d(),
        BuiltinMeshId::Quad2d => quad2d(),
        BuiltinMeshId::Hexagon2d => hexagon2d(),
        BuiltinMeshId::Tet3d => tet3d(),
        BuiltinMeshId::Hex3d => hex3d(),
        BuiltinMeshId::Oct3d => oct3d(),
        BuiltinMeshId::Truncoct3d => truncoct3d(),
    }
}

fn triangle2d() -> PeriodicCellComplex {
    let lower = Shape::Polygon(vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    let upper = Shape::Polygon(vec![vec![0, 0], vec![1, 1], vec![0, 1]]);
    complex_from_cells("triangle2d", Lattice::diagonal(&[1, 1]), vec![lower, upper])
}

fn quad2d() -> PeriodicCellComplex {
    let square = Shape::Polygon(vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]);
    complex_from_cells("quad2d", Lattice::diagonal(&[1, 1]), vec![square])
}

fn hexagon2d() -> PeriodicCellComplex {
    // Honeycomb with two vertex sites per cell, period 6 in skewed integer
    // coordinates: site a at (0,0), site b at (2,2).
    let hexagon = Shape::Polygon(vec![
        vec![2, 2],
        vec![6, 0],
        vec![8, 2],
        vec![6, 6],
        vec![2, 8],
        vec![0, 6],
    ]);
    complex_from_cells("hexagon2d", Lattice::diagonal(&[6, 6]), vec![hexagon])
}

fn tet3d() -> PeriodicCellComplex {
    // Kuhn decomposition: one tetrahedron per vertex permutation path
    // 0 -> e_s0 -> e_s0 + e_s1 -> (1,1,1).
    let unit = |axis: usize| -> Point { (0..3).map(|i| i64::from(i == axis)).collect() };
    let mut cells = Vec::new();
    for perm in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        let p0: Point = vec![0, 0, 0];
        let p1: Point = unit(perm[0]);
        let p2: Point = (0..3).map(|i| p1[i] + unit(perm[1])[i]).collect();
        let p3: Point = vec![1, 1, 1];
        let faces = vec![
            vec![p0.clone(), p1.clone(), p2.clone()],
            vec![p0.clone(), p1.clone(), p3.clone()],
            vec![p0.clone(), p2.clone(), p3.clone()],
            vec![p1.clone(), p2.clone(), p3.clone()],
        ];
        cells.push(Shape::Polyhedron(faces));
    }
    complex_from_cells("tet3d", Lattice::diagonal(&[1, 1, 1]), cells)
}

fn hex3d() -> PeriodicCellComplex {
    let corners: Vec<Point> = (0..8)
        .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1])
        .collect();
    let faces = (0..3)
        .flat_map(|axis| [0i64, 1].into_iter().map(move |side| (axis, side)))
        .map(|(axis, side)| {
            let on_face: Vec<Point> = corners
                .iter()
                .filter(|p| p[axis] == side)
                .cloned()
                .collect();
            cycle_from_adjacency(&on_face, 1)
        })
        .collect();
    complex_from_cells(
        "hex3d",
        Lattice::diagonal(&[1, 1, 1]),
        vec![Shape::Polyhedron(faces)],
    )
}

fn oct3d() -> PeriodicCellComplex {
    // Three octahedra per cell, centered at the midpoints of the three cube
    // faces through the origin. Each is two square pyramids over a cube face,
    // with apexes at the cell centers on either side.
    let center: Point = vec![1, 1, 1];
    let cells = (0..3usize)
        .map(|axis| {
            let equator: Vec<Point> = (0..4)
                .map(|i| {
                    let mut p = vec![0i64; 3];
                    let others: Vec<usize> = (0..3).filter(|&j| j != axis).collect();
                    p[others[0]] = 2 * (i & 1);
                    p[others[1]] = 2 * ((i >> 1) & 1);
                    p
                })
                .collect();
            let equator = cycle_from_adjacency(&equator, 4);
            let near = center.clone();
            let mut far = center.clone();
            far[axis] -= 2;
            let mut faces = Vec::new();
            for apex in [near, far] {
                for i in 0..4 {
                    faces.push(vec![
                        equator[i].clone(),
                        equator[(i + 1) % 4].clone(),
                        apex.clone(),
                    ]);
                }
            }
            Shape::Polyhedron(faces)
        })
        .collect();
    complex_from_cells("oct3d", Lattice::diagonal(&[2, 2, 2]), cells)
}

fn truncoct3d() -> PeriodicCellComplex {
    // Voronoi cell of the body-centered cubic lattice: vertices are the
    // signed permutations of (0,1,2), six square faces, eight hexagonal
    // faces. The period lattice is the BCC lattice itself, so the unit cell
    // holds exactly one truncated octahedron.
    let mut vertices: Vec<Point> = Vec::new();
    for perm in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        for signs in 0..4 {
            let mut p = vec![0i64; 3];
            for (slot, &magnitude) in perm.iter().enumerate() {
                let sign = match magnitude {
                    1 => 1 - 2 * (signs & 1),
                    2 => 1 - 2 * ((signs >> 1) & 1),
                    _ => 1,
                };
                p[slot] = sign * magnitude as i64;
            }
            vertices.push(p);
        }
    }
    vertices.sort();
    vertices.dedup();
    assert_eq!(vertices.len(), 24);

    let mut faces = Vec::new();
    for axis in 0..3 {
        for side in [2i64, -2] {
            let on_face: Vec<Point> = vertices
                .iter()
                .filter(|p| p[axis] == side)
                .cloned()
                .collect();
            faces.push(cycle_from_adjacency(&on_face, 2));
        }
    }
    for signs in 0..8u8 {
        let s: Vec<i64> = (0..3)
            .map(|i| 1 - 2 * i64::from((signs >> i) & 1))
            .collect();
        let on_face: Vec<Point> = vertices
            .iter()
            .filter(|p| p.iter().zip(&s).map(|(x, y)| x * y).sum::<i64>() == 3)
            .cloned()
            .collect();
        faces.push(cycle_from_adjacency(&on_face, 2));
    }
    assert_eq!(faces.len(), 14);

    let lattice = Lattice::new(vec![vec![4, 0, 0], vec![0, 4, 0], vec![2, 2, 2]]);
    complex_from_cells("truncoct3d", lattice, vec![Shape::Polyhedron(faces)])
}
