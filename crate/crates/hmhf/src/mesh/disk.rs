//! Concentric-ring triangulation of the unit disk.
//!
//! Level l places 2^l rings at radii j / 2^l; ring j carries 6j vertices,
//! uniformly spaced in angle, so all boundary vertices lie exactly on the
//! unit circle and the family is quasi-uniform with h ~ 2^{-l}. Boundary
//! edges optionally carry a circle-projected midpoint, which turns the
//! triangles owning them into quadratic (isoparametric) elements.

use std::io::Write;

use crate::error::{Error, Result};

pub type Point2 = [f64; 2];

/// One boundary edge with its circle-projected midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvedEdge {
    pub a: usize,
    pub b: usize,
    pub midpoint: Point2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiskMesh {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    boundary_vertices: Vec<usize>,
    curved_edges: Vec<CurvedEdge>,
    /// For each triangle, index into `curved_edges` if it owns one.
    tri_curved: Vec<Option<u32>>,
    h: f64,
    refinement_level: u32,
    isoparametric: bool,
}

/// Builds the level-`level` ring triangulation. With `isoparametric` set,
/// boundary edges carry circle-projected midpoints and the owning triangles
/// use a quadratic geometry map.
pub fn build_disk_mesh(level: u32, isoparametric: bool) -> DiskMesh {
    let rings = 1usize << level;
    let ring_start = |j: usize| -> usize {
        if j == 0 {
            0
        } else {
            1 + 3 * j * (j - 1)
        }
    };

    let mut vertices: Vec<Point2> = vec![[0.0, 0.0]];
    for j in 1..=rings {
        let r = j as f64 / rings as f64;
        let count = 6 * j;
        for i in 0..count {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
            vertices.push([r * theta.cos(), r * theta.sin()]);
        }
    }

    let mut triangles: Vec<[usize; 3]> = Vec::with_capacity(6 * rings * rings);
    for j in 1..=rings {
        let outer = ring_start(j);
        let n_out = 6 * j;
        let n_in = 6 * (j - 1);
        for s in 0..6 {
            let out = |i: usize| outer + (s * j + i) % n_out;
            let inn = |i: usize| {
                if j == 1 {
                    0
                } else {
                    ring_start(j - 1) + (s * (j - 1) + i) % n_in
                }
            };
            for i in 0..j {
                triangles.push([out(i), out(i + 1), inn(i)]);
            }
            for i in 0..j.saturating_sub(1) {
                triangles.push([inn(i), out(i + 1), inn(i + 1)]);
            }
        }
    }

    let boundary_vertices: Vec<usize> = (ring_start(rings)..vertices.len()).collect();

    let mut curved_edges = Vec::new();
    let mut tri_curved = vec![None; triangles.len()];
    if isoparametric {
        // boundary edges are consecutive vertex pairs on the outer ring
        let first = ring_start(rings);
        let n_bnd = 6 * rings;
        let edge_index_of = |a: usize, b: usize| -> Option<usize> {
            // consecutive on outer ring?
            if a < first || b < first {
                return None;
            }
            let (ia, ib) = (a - first, b - first);
            if (ia + 1) % n_bnd == ib {
                Some(ia)
            } else if (ib + 1) % n_bnd == ia {
                Some(ib)
            } else {
                None
            }
        };
        for i in 0..n_bnd {
            let a = first + i;
            let b = first + (i + 1) % n_bnd;
            let mid = [
                0.5 * (vertices[a][0] + vertices[b][0]),
                0.5 * (vertices[a][1] + vertices[b][1]),
            ];
            let nrm = (mid[0] * mid[0] + mid[1] * mid[1]).sqrt();
            curved_edges.push(CurvedEdge {
                a,
                b,
                midpoint: [mid[0] / nrm, mid[1] / nrm],
            });
        }
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                if let Some(e) = edge_index_of(tri[k], tri[(k + 1) % 3]) {
                    tri_curved[t] = Some(e as u32);
                }
            }
        }
    }

    let mut h = 0.0f64;
    for tri in &triangles {
        for k in 0..3 {
            let p = vertices[tri[k]];
            let q = vertices[tri[(k + 1) % 3]];
            h = h.max(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
        }
    }

    DiskMesh {
        vertices,
        triangles,
        boundary_vertices,
        curved_edges,
        tri_curved,
        h,
        refinement_level: level,
        isoparametric,
    }
}

impl DiskMesh {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn boundary_vertices(&self) -> &[usize] {
        &self.boundary_vertices
    }

    pub fn curved_edges(&self) -> &[CurvedEdge] {
        &self.curved_edges
    }

    /// Curved edge owned by triangle `t`, if any.
    pub fn curved_edge_of(&self, t: usize) -> Option<&CurvedEdge> {
        self.tri_curved[t].map(|e| &self.curved_edges[e as usize])
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn refinement_level(&self) -> u32 {
        self.refinement_level
    }

    pub fn is_isoparametric(&self) -> bool {
        self.isoparametric
    }

    /// Geometry nodes of triangle `t` in P2 ordering: three vertices followed
    /// by the edge midpoints of (0-1), (1-2), (2-0). Straight edges use chord
    /// midpoints; a curved boundary edge uses its projected midpoint.
    pub fn geometry_nodes(&self, t: usize) -> [Point2; 6] {
        let tri = self.triangles[t];
        let v = [self.vertices[tri[0]], self.vertices[tri[1]], self.vertices[tri[2]]];
        let mut nodes = [
            v[0],
            v[1],
            v[2],
            mid(v[0], v[1]),
            mid(v[1], v[2]),
            mid(v[2], v[0]),
        ];
        if let Some(ce) = self.curved_edge_of(t) {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                if (a == ce.a && b == ce.b) || (a == ce.b && b == ce.a) {
                    nodes[3 + k] = ce.midpoint;
                }
            }
        }
        nodes
    }

    /// Maps barycentric coordinates on triangle `t` to a physical point and
    /// the Jacobian of the reference-to-physical map. Interior triangles map
    /// affinely; triangles owning a curved boundary edge use the quadratic
    /// interpolant of vertices plus the projected midpoint.
    pub fn geometry_map(&self, t: usize, bary: [f64; 3]) -> Result<(Point2, [[f64; 2]; 2])> {
        if t >= self.triangles.len() {
            return Err(Error::InvalidArgument(format!("triangle {t} out of range")));
        }
        let tri = self.triangles[t];
        let v = [self.vertices[tri[0]], self.vertices[tri[1]], self.vertices[tri[2]]];
        let [l0, l1, l2] = bary;
        // affine part; reference coords (xi, eta) with l0 = 1-xi-eta, l1 = xi, l2 = eta
        let mut x = [
            l0 * v[0][0] + l1 * v[1][0] + l2 * v[2][0],
            l0 * v[0][1] + l1 * v[1][1] + l2 * v[2][1],
        ];
        let mut jac = [
            [v[1][0] - v[0][0], v[2][0] - v[0][0]],
            [v[1][1] - v[0][1], v[2][1] - v[0][1]],
        ];
        if let Some(ce) = self.curved_edge_of(t) {
            // bubble correction 4 l_a l_b (m - chord midpoint) on the curved edge
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                if (a == ce.a && b == ce.b) || (a == ce.b && b == ce.a) {
                    let chord = mid(v[k], v[(k + 1) % 3]);
                    let d = [ce.midpoint[0] - chord[0], ce.midpoint[1] - chord[1]];
                    let l = [l0, l1, l2];
                    let (la, lb) = (l[k], l[(k + 1) % 3]);
                    x[0] += 4.0 * la * lb * d[0];
                    x[1] += 4.0 * la * lb * d[1];
                    // d(l_a l_b)/d(xi,eta) via dl/dxi = (-1,1,0), dl/deta = (-1,0,1)
                    let dl = [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]];
                    for c in 0..2 {
                        let g = la * dl[(k + 1) % 3][c] + lb * dl[k][c];
                        jac[0][c] += 4.0 * g * d[0];
                        jac[1][c] += 4.0 * g * d[1];
                    }
                }
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det <= 0.0 {
            return Err(Error::DegenerateElement {
                element: t,
                detail: format!("Jacobian determinant {det:.3e}"),
            });
        }
        Ok((x, jac))
    }

    /// max element diameter / min element inradius (straight-edge measures).
    pub fn quasi_uniformity_ratio(&self) -> f64 {
        let mut max_diam = 0.0f64;
        let mut min_inradius = f64::INFINITY;
        for tri in &self.triangles {
            let v = [self.vertices[tri[0]], self.vertices[tri[1]], self.vertices[tri[2]]];
            let e = [dist(v[0], v[1]), dist(v[1], v[2]), dist(v[2], v[0])];
            let diam = e[0].max(e[1]).max(e[2]);
            let s = 0.5 * (e[0] + e[1] + e[2]);
            let area = (s * (s - e[0]) * (s - e[1]) * (s - e[2])).max(0.0).sqrt();
            max_diam = max_diam.max(diam);
            min_inradius = min_inradius.min(area / s);
        }
        max_diam / min_inradius
    }

    /// Signed area of triangle `t` from its straight edges.
    pub fn signed_area(&self, t: usize) -> f64 {
        let tri = self.triangles[t];
        let [a, b, c] = [self.vertices[tri[0]], self.vertices[tri[1]], self.vertices[tri[2]]];
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    /// Writes the mesh in the documented ASCII format: one section per item
    /// kind, each line space-separated.
    pub fn write_ascii<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# disk mesh level {} isoparametric {}", self.refinement_level, self.isoparametric)?;
        writeln!(w, "# vertices {}", self.vertices.len())?;
        writeln!(w, "# columns: index x y")?;
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(w, "{} {:.17e} {:.17e}", i, v[0], v[1])?;
        }
        writeln!(w, "# triangles {}", self.triangles.len())?;
        writeln!(w, "# columns: index v0 v1 v2")?;
        for (t, tri) in self.triangles.iter().enumerate() {
            writeln!(w, "{} {} {} {}", t, tri[0], tri[1], tri[2])?;
        }
        writeln!(w, "# boundary_vertices {}", self.boundary_vertices.len())?;
        for v in &self.boundary_vertices {
            writeln!(w, "{v}")?;
        }
        writeln!(w, "# curved_midpoints {}", self.curved_edges.len())?;
        writeln!(w, "# columns: va vb mx my")?;
        for ce in &self.curved_edges {
            writeln!(w, "{} {} {:.17e} {:.17e}", ce.a, ce.b, ce.midpoint[0], ce.midpoint[1])?;
        }
        Ok(())
    }
}

fn mid(a: Point2, b: Point2) -> Point2 {
    [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
}

fn dist(a: Point2, b: Point2) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}
