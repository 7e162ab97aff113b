//! Incidence graph of the projective plane over the prime field `F_q`,
//! oriented from points to lines.

use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::graph::{OrientedGraph, Vertex};

/// Homogeneous coordinates `(x:y:z)` over `F_q`, first nonzero entry 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Homogeneous(pub [usize; 3]);

pub type PlanePoint = Homogeneous;
pub type PlaneLine = Homogeneous;

impl Homogeneous {
    /// Scales so the first nonzero coordinate is 1. `None` for the zero vector.
    pub fn normalized(v: [usize; 3], q: usize) -> Option<Self> {
        let lead = v.iter().copied().find(|&x| x % q != 0)?;
        let inv = mod_inverse(lead % q, q);
        Some(Homogeneous(v.map(|x| x % q * inv % q)))
    }

    pub fn incident(self, other: Homogeneous, q: usize) -> bool {
        self.0
            .iter()
            .zip(other.0)
            .map(|(x, y)| x * y)
            .sum::<usize>()
            % q
            == 0
    }
}

pub fn is_prime(q: usize) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

fn mod_inverse(x: usize, q: usize) -> usize {
    // q is prime: x^(q-2)
    let mut result = 1;
    let mut base = x % q;
    let mut exp = q - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    result
}

/// The `q² + q + 1` normalized triples in ascending order: `(0:0:1)`,
/// `(0:1:z)`, then `(1:y:z)`.
pub fn plane_elements(q: usize) -> Result<Vec<Homogeneous>, ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime(q));
    }
    let mut out = vec![Homogeneous([0, 0, 1])];
    out.extend((0..q).map(|z| Homogeneous([0, 1, z])));
    for y in 0..q {
        out.extend((0..q).map(|z| Homogeneous([1, y, z])));
    }
    Ok(out)
}

/// Points and lines of the plane with their incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub q: usize,
    pub points: Vec<PlanePoint>,
    pub lines: Vec<PlaneLine>,
    /// `(point index, line index)` pairs.
    pub incidences: Vec<(usize, usize)>,
}

impl ProjectivePlane {
    pub fn new(q: usize) -> Result<Self, ConstructionError> {
        let points = plane_elements(q)?;
        let lines = points.clone();
        let mut incidences = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for (j, l) in lines.iter().enumerate() {
                if p.incident(*l, q) {
                    incidences.push((i, j));
                }
            }
        }
        Ok(ProjectivePlane {
            q,
            points,
            lines,
            incidences,
        })
    }

    /// `q² + q + 1`
    pub fn order_count(&self) -> usize {
        self.points.len()
    }
}

/// Points are vertices `0..N`, lines `N..2N`, with `N = q² + q + 1`; every
/// arc goes from a point to a line through it.
pub fn projective_plane_incidence(q: usize) -> Result<OrientedGraph, ConstructionError> {
    let plane = ProjectivePlane::new(q)?;
    let n = plane.order_count();
    let arcs = plane.incidences.iter().map(|&(p, l)| (p, n + l));
    OrientedGraph::new(2 * n, arcs).map_err(|_| ConstructionError::ConstructionInvalid(0, 0))
}

/// Point vertices of [`projective_plane_incidence`].
pub fn plane_point_vertices(q: usize) -> Vec<Vertex> {
    (0..q * q + q + 1).collect()
}
