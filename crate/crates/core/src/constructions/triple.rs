//! Three copies of the oriented incidence graph, with every line pointing to
//! the next copy of each of its points and twin points joined in a directed
//! 3-cycle.

use serde::{Deserialize, Serialize};

use super::plane::ProjectivePlane;
use crate::error::ConstructionError;
use crate::graph::{OrientedGraph, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Copy3 {
    Plain,
    Prime,
    DoublePrime,
}

impl Copy3 {
    pub const ALL: [Copy3; 3] = [Copy3::Plain, Copy3::Prime, Copy3::DoublePrime];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `p → p′ → p″ → p`
    pub fn next(self) -> Copy3 {
        Copy3::ALL[(self.index() + 1) % 3]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Base {
    Point(usize),
    Line(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct TripleCopyVertex {
    pub copy: Copy3,
    pub base: Base,
}

/// Vertex layout: copy `c` occupies `c·2N .. (c+1)·2N`, points first then
/// lines, with `N = q² + q + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleCopyLayout {
    pub plane_size: usize,
}

impl TripleCopyLayout {
    pub fn index(self, v: TripleCopyVertex) -> Vertex {
        let offset = v.copy.index() * 2 * self.plane_size;
        match v.base {
            Base::Point(p) => offset + p,
            Base::Line(l) => offset + self.plane_size + l,
        }
    }

    pub fn vertex(self, idx: Vertex) -> TripleCopyVertex {
        let n = self.plane_size;
        let copy = Copy3::ALL[idx / (2 * n)];
        let r = idx % (2 * n);
        let base = if r < n {
            Base::Point(r)
        } else {
            Base::Line(r - n)
        };
        TripleCopyVertex { copy, base }
    }

    pub fn point(self, copy: Copy3, p: usize) -> Vertex {
        self.index(TripleCopyVertex {
            copy,
            base: Base::Point(p),
        })
    }

    pub fn line(self, copy: Copy3, l: usize) -> Vertex {
        self.index(TripleCopyVertex {
            copy,
            base: Base::Line(l),
        })
    }

    /// All `3N` point copies, ascending.
    pub fn point_copies(self) -> Vec<Vertex> {
        Copy3::ALL
            .iter()
            .flat_map(|&c| (0..self.plane_size).map(move |p| self.point(c, p)))
            .collect()
    }
}

pub fn triple_copy(q: usize) -> Result<OrientedGraph, ConstructionError> {
    Ok(triple_copy_with_layout(q)?.0)
}

pub fn triple_copy_with_layout(
    q: usize,
) -> Result<(OrientedGraph, TripleCopyLayout), ConstructionError> {
    let plane = ProjectivePlane::new(q)?;
    let layout = TripleCopyLayout {
        plane_size: plane.order_count(),
    };
    let mut arcs = Vec::new();
    for copy in Copy3::ALL {
        for &(p, l) in &plane.incidences {
            arcs.push((layout.point(copy, p), layout.line(copy, l)));
            arcs.push((layout.line(copy, l), layout.point(copy.next(), p)));
        }
        for p in 0..layout.plane_size {
            arcs.push((layout.point(copy, p), layout.point(copy.next(), p)));
        }
    }
    let g = OrientedGraph::new(6 * layout.plane_size, arcs).map_err(|e| match e {
        crate::error::GraphError::OppositeArcs(u, v)
        | crate::error::GraphError::DuplicateArc(u, v) => {
            ConstructionError::ConstructionInvalid(u, v)
        }
        _ => ConstructionError::ConstructionInvalid(0, 0),
    })?;
    Ok((g, layout))
}
