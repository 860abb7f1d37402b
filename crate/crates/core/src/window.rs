//! The acceptance window: the orthogonal projection of the 6D Voronoi cell.
//!
//! The window at any path parameter is rebuilt from scratch as the convex
//! hull of the 64 projected Voronoi vertices (+-1/2)^6. A brute-force
//! small-polytope hull is used: every point triple proposes a supporting
//! plane, validated against all points. At the identity rotation the result
//! is the rhombic triacontahedron (30 faces, 32 vertices).

use nalgebra::{Matrix6, Vector3};

use crate::error::{Error, Result};
use crate::lattice::LatticeKind;
use crate::reduction::{Projection, ReductionFrame};

/// Default inclusive boundary tolerance for window membership.
pub const BOUNDARY_EPS: f64 = 1e-9;

const FACE_MERGE_TOL: f64 = 1e-7;
const POINT_MERGE_TOL: f64 = 1e-10;
const SUPPORT_TOL: f64 = 1e-9;

/// Result of a window membership test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Convex window in half-space and vertex form.
#[derive(Clone, Debug)]
pub struct ProjectionWindow {
    /// Outward unit normals with offsets: `x` is weakly inside iff
    /// `n . x <= offset` for all faces.
    pub half_spaces: Vec<(Vector3<f64>, f64)>,
    pub vertices: Vec<Vector3<f64>>,
    pub boundary_tol: f64,
}

impl ProjectionWindow {
    /// Hull of the 64 Voronoi-cell vertices of Z^6 pushed through a 3x6
    /// projection operator.
    pub fn from_perp_projection(perp: &Projection) -> Result<Self> {
        let mut pts = Vec::with_capacity(64);
        for mask in 0..64u32 {
            let mut v = nalgebra::Vector6::<f64>::zeros();
            for i in 0..6 {
                v[i] = if mask & (1 << i) != 0 { 0.5 } else { -0.5 };
            }
            pts.push(perp * v);
        }
        Self::from_points(&pts)
    }

    /// Hull of an explicit point cloud (used by the deformed-lattice route,
    /// which projects the deformed Voronoi vertices itself).
    pub fn from_points(points: &[Vector3<f64>]) -> Result<Self> {
        let (half_spaces, vertices) = convex_hull(points)?;
        let w = Self {
            half_spaces,
            vertices,
            boundary_tol: BOUNDARY_EPS,
        };
        let vol = w.volume();
        if !(vol > 1e-9) {
            return Err(Error::DegenerateHull { volume: vol });
        }
        Ok(w)
    }

    pub fn contains(&self, x: &Vector3<f64>) -> Containment {
        let eps = self.boundary_tol;
        let mut boundary = false;
        for (n, d) in &self.half_spaces {
            let s = n.dot(x) - d;
            if s > eps {
                return Containment::Outside;
            }
            if s > -eps {
                boundary = true;
            }
        }
        if boundary {
            Containment::Boundary
        } else {
            Containment::Inside
        }
    }

    /// Largest vertex norm.
    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(Vector3::norm).fold(0.0, f64::max)
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Face offsets in ascending order; a congruence-sensitive fingerprint.
    pub fn sorted_face_offsets(&self) -> Vec<f64> {
        let mut offs: Vec<f64> = self.half_spaces.iter().map(|&(_, d)| d).collect();
        offs.sort_by(|a, b| a.partial_cmp(b).expect("finite offsets"));
        offs
    }

    /// Volume by summing face pyramids over the origin.
    pub fn volume(&self) -> f64 {
        let mut vol = 0.0;
        for (n, d) in &self.half_spaces {
            let ring = self.face_polygon(n, *d);
            if ring.len() < 3 {
                continue;
            }
            let centroid = ring.iter().sum::<Vector3<f64>>() / ring.len() as f64;
            let mut area = 0.0;
            for i in 0..ring.len() {
                let a = ring[i] - centroid;
                let b = ring[(i + 1) % ring.len()] - centroid;
                area += a.cross(&b).dot(n).abs() * 0.5;
            }
            vol += d * area / 3.0;
        }
        vol
    }

    /// Vertices on a face, ordered by angle around the face normal.
    fn face_polygon(&self, n: &Vector3<f64>, d: f64) -> Vec<Vector3<f64>> {
        let mut on: Vec<Vector3<f64>> = self
            .vertices
            .iter()
            .filter(|p| (n.dot(p) - d).abs() < SUPPORT_TOL)
            .copied()
            .collect();
        if on.len() < 3 {
            return on;
        }
        let centroid = on.iter().sum::<Vector3<f64>>() / on.len() as f64;
        let u = (on[0] - centroid).normalize();
        let v = n.cross(&u);
        on.sort_by(|p, q| {
            let pa = (p - centroid).dot(&v).atan2((p - centroid).dot(&u));
            let qa = (q - centroid).dot(&v).atan2((q - centroid).dot(&u));
            pa.partial_cmp(&qa).expect("finite angles")
        });
        on
    }
}

/// Build the acceptance window of the rotated frame `M * R`. The window is
/// only defined for the simple cubic lattice, whose Voronoi cell is the unit
/// cube.
pub fn build_window(
    rotation: &Matrix6<f64>,
    frame: &ReductionFrame,
    lattice: LatticeKind,
) -> Result<ProjectionWindow> {
    if lattice != LatticeKind::Sc {
        return Err(Error::UnsupportedLattice);
    }
    let perp_t: Projection = frame.perp_rows() * rotation.transpose();
    ProjectionWindow::from_perp_projection(&perp_t)
}

/// Brute-force 3D convex hull returning merged half-spaces and the extreme
/// points. Cubic in the (deduplicated) point count, which is at most 64
/// here.
fn convex_hull(points: &[Vector3<f64>]) -> Result<(Vec<(Vector3<f64>, f64)>, Vec<Vector3<f64>>)> {
    // Deduplicate; coincident projections are common at special rotations.
    let mut pts: Vec<Vector3<f64>> = Vec::new();
    for p in points {
        if !pts.iter().any(|q| (p - q).norm() < POINT_MERGE_TOL) {
            pts.push(*p);
        }
    }
    let n = pts.len();
    if n < 4 {
        return Err(Error::DegenerateHull { volume: 0.0 });
    }

    let mut faces: Vec<(Vector3<f64>, f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let normal = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                let len = normal.norm();
                if len < 1e-8 {
                    continue;
                }
                let mut nv = normal / len;
                let mut d = nv.dot(&pts[i]);
                let mut max_s = f64::NEG_INFINITY;
                let mut min_s = f64::INFINITY;
                for p in &pts {
                    let s = nv.dot(p) - d;
                    max_s = max_s.max(s);
                    min_s = min_s.min(s);
                }
                if max_s <= SUPPORT_TOL {
                    // keep orientation
                } else if min_s >= -SUPPORT_TOL {
                    nv = -nv;
                    d = -d;
                } else {
                    continue;
                }
                if !faces.iter().any(|(fn_, fd)| {
                    (fn_ - nv).amax() < FACE_MERGE_TOL && (fd - d).abs() < FACE_MERGE_TOL
                }) {
                    faces.push((nv, d));
                }
            }
        }
    }

    let mut vertices: Vec<Vector3<f64>> = pts
        .into_iter()
        .filter(|p| {
            faces
                .iter()
                .filter(|(nv, d)| (nv.dot(p) - d).abs() < SUPPORT_TOL)
                .count()
                >= 3
        })
        .collect();
    vertices.sort_by(|a, b| {
        (a.x, a.y, a.z)
            .partial_cmp(&(b.x, b.y, b.z))
            .expect("finite coordinates")
    });
    faces.sort_by(|a, b| {
        (a.1, a.0.x, a.0.y, a.0.z)
            .partial_cmp(&(b.1, b.0.x, b.0.y, b.0.z))
            .expect("finite faces")
    });
    Ok((faces, vertices))
}
