//! Uniform node grid embedded in a convex domain.
//!
//! Nodes sit at integer multiples of `h`, so axis-aligned domains whose
//! corners are multiples of `h` are resolved exactly. A node is interior when
//! it lies strictly inside the domain. Each interior node records, per axis
//! direction, either the index of its interior neighbour or the distance to
//! the boundary along that axis (the cut distance, in `(0, h]`).

use serde::{Deserialize, Serialize};

use super::domain::{ConvexDomain, Point};
use crate::error::{Error, Result};

/// Axis directions in stencil order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    East = 0,
    West = 1,
    North = 2,
    South = 3,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::East,
        Direction::West,
        Direction::North,
        Direction::South,
    ];

    pub fn offset(self) -> (i64, i64) {
        match self {
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
            Direction::North => (0, 1),
            Direction::South => (0, -1),
        }
    }

    pub fn unit(self) -> Point {
        let (di, dj) = self.offset();
        [di as f64, dj as f64]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Neighbor {
    Interior(usize),
    /// Boundary crossing at this distance along the axis.
    Boundary(f64),
}

#[derive(Debug, Clone)]
pub struct Node {
    /// Lattice column and row inside the bounding box.
    pub i: usize,
    pub j: usize,
    pub position: Point,
    /// Indexed by `Direction as usize`.
    pub neighbors: [Neighbor; 4],
}

impl Node {
    pub fn is_boundary_adjacent(&self) -> bool {
        self.neighbors
            .iter()
            .any(|n| matches!(n, Neighbor::Boundary(_)))
    }

    pub fn neighbor(&self, d: Direction) -> Neighbor {
        self.neighbors[d as usize]
    }
}

/// Geometry needed to rebuild a grid bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridGeometry {
    pub domain: ConvexDomain,
    pub h: f64,
    /// Lattice index of the lower-left bounding-box node.
    pub origin: [i64; 2],
    /// Cell counts of the bounding box; there are `nx + 1` node columns.
    pub nx: usize,
    pub ny: usize,
}

#[derive(Debug, Clone)]
pub struct Grid {
    geometry: GridGeometry,
    nodes: Vec<Node>,
    /// Bounding-box node -> interior index.
    lookup: Vec<Option<usize>>,
    area: f64,
    weight: f64,
}

impl Grid {
    /// Builds the grid, requiring `h < inradius / 4` and at least 16
    /// interior nodes.
    pub fn new(domain: ConvexDomain, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::ResolutionTooCoarse(format!("cell width {h}")));
        }
        let inradius = domain.inradius();
        if h >= inradius / 4.0 {
            return Err(Error::ResolutionTooCoarse(format!(
                "h = {h} but inradius / 4 = {}",
                inradius / 4.0
            )));
        }
        let grid = Self::new_coarse(domain, h)?;
        if grid.len() < 16 {
            return Err(Error::ResolutionTooCoarse(format!(
                "{} interior nodes",
                grid.len()
            )));
        }
        Ok(grid)
    }

    /// Builds the grid without resolution checks. Used for toy problems with
    /// a handful of nodes.
    pub fn new_coarse(domain: ConvexDomain, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::ResolutionTooCoarse(format!("cell width {h}")));
        }
        if !(domain.area() > 0.0 && domain.diameter() > 0.0) {
            return Err(Error::DegenerateDomain("zero area".into()));
        }
        let [xmin, ymin, xmax, ymax] = domain.bounding_box();
        let origin = [(xmin / h).floor() as i64, (ymin / h).floor() as i64];
        let nx = ((xmax / h).ceil() as i64 - origin[0]).max(1) as usize;
        let ny = ((ymax / h).ceil() as i64 - origin[1]).max(1) as usize;
        let geometry = GridGeometry {
            domain,
            h,
            origin,
            nx,
            ny,
        };
        Self::from_geometry_unchecked(geometry)
    }

    /// Rebuilds a grid from stored geometry, validating that the stored
    /// lattice matches the one `new_coarse` would produce.
    pub fn from_geometry(geometry: GridGeometry) -> Result<Self> {
        let rebuilt = Self::new_coarse(geometry.domain.clone(), geometry.h)?;
        if rebuilt.geometry != geometry {
            return Err(Error::GridMismatch);
        }
        Ok(rebuilt)
    }

    fn from_geometry_unchecked(geometry: GridGeometry) -> Result<Self> {
        let GridGeometry {
            ref domain,
            h,
            origin,
            nx,
            ny,
        } = geometry;
        let eps = 1e-10 * h;
        let cols = nx + 1;
        let rows = ny + 1;
        let pos = |i: usize, j: usize| -> Point {
            [
                (origin[0] + i as i64) as f64 * h,
                (origin[1] + j as i64) as f64 * h,
            ]
        };

        let mut lookup = vec![None; cols * rows];
        let mut nodes = Vec::new();
        for j in 0..rows {
            for i in 0..cols {
                let p = pos(i, j);
                if domain.inner_distance(p) > eps {
                    lookup[j * cols + i] = Some(nodes.len());
                    nodes.push(Node {
                        i,
                        j,
                        position: p,
                        neighbors: [Neighbor::Boundary(h); 4],
                    });
                }
            }
        }
        if nodes.is_empty() {
            return Err(Error::ResolutionTooCoarse("no interior nodes".into()));
        }

        for node in nodes.iter_mut() {
            for d in Direction::ALL {
                let (di, dj) = d.offset();
                let ni = node.i as i64 + di;
                let nj = node.j as i64 + dj;
                let inside = (0..cols as i64).contains(&ni) && (0..rows as i64).contains(&nj);
                let nb = if inside {
                    lookup[nj as usize * cols + ni as usize]
                } else {
                    None
                };
                node.neighbors[d as usize] = match nb {
                    Some(k) => Neighbor::Interior(k),
                    None => {
                        let cut = domain.exit_distance(node.position, d.unit());
                        Neighbor::Boundary(cut.clamp(f64::MIN_POSITIVE, h))
                    }
                };
            }
        }

        let area = domain.area();
        let weight = area / nodes.len() as f64;
        Ok(Grid {
            geometry,
            nodes,
            lookup,
            area,
            weight,
        })
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn domain(&self) -> &ConvexDomain {
        &self.geometry.domain
    }

    pub fn h(&self) -> f64 {
        self.geometry.h
    }

    /// Number of interior nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> &Node {
        &self.nodes[k]
    }

    /// Node columns and rows of the bounding box.
    pub fn shape(&self) -> (usize, usize) {
        (self.geometry.nx + 1, self.geometry.ny + 1)
    }

    /// Interior index of the bounding-box node `(i, j)`, if interior.
    pub fn interior_index(&self, i: usize, j: usize) -> Option<usize> {
        let (cols, rows) = self.shape();
        if i >= cols || j >= rows {
            return None;
        }
        self.lookup[j * cols + i]
    }

    /// Domain measure carried by the grid (the sum of all node weights).
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Measure carried by each interior node; uniform across nodes.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn positions(&self) -> impl Iterator<Item = Point> + '_ {
        self.nodes.iter().map(|n| n.position)
    }

    pub fn boundary_adjacent(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_boundary_adjacent())
            .map(|(k, _)| k)
    }

    /// Same lattice and domain.
    pub fn same_as(&self, other: &Grid) -> bool {
        std::ptr::eq(self, other) || self.geometry == other.geometry
    }
}
