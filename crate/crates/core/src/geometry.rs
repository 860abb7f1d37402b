//! Geometric oracles on finite 3D point sets: lattice-basis detection,
//! set-level symmetry checking, Hausdorff distance and collision events.

use std::collections::HashMap;

use nalgebra::{Matrix3, Vector3};

/// Default tolerance for lattice detection.
pub const LATTICE_DETECT_TOL: f64 = 1e-8;

/// Basis candidates are limited to this many shortest difference vectors,
/// so a failure to find a basis means aperiodicity at the patch scale, not
/// an exhausted search budget.
const MAX_CANDIDATES: usize = 40;

/// Try to express the point set as a 3D lattice. Returns the basis (as
/// columns) and the largest snap residual if one is found.
///
/// Candidate bases are triples of the shortest pairwise difference vectors;
/// a candidate is accepted only if every point is an integer combination of
/// it within `tolerance`.
pub fn detect_lattice_3d(
    points: &[Vector3<f64>],
    tolerance: f64,
) -> Option<(Matrix3<f64>, f64)> {
    let pts = dedup_points(points, 1e-9);
    if pts.len() < 2 {
        return None;
    }

    // Shortest distinct difference vectors, up to sign.
    let mut cands: Vec<Vector3<f64>> = Vec::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let mut d = pts[i] - pts[j];
            if lex_negative(&d) {
                d = -d;
            }
            let n2 = d.norm_squared();
            if n2 < 1e-18 {
                continue;
            }
            if cands.len() == MAX_CANDIDATES
                && n2 >= cands.last().expect("nonempty").norm_squared()
            {
                continue;
            }
            if cands.iter().any(|c| (c - d).norm() < 1e-9) {
                continue;
            }
            let pos = cands
                .partition_point(|c| c.norm_squared() < n2);
            cands.insert(pos, d);
            cands.truncate(MAX_CANDIDATES);
        }
    }

    let m = cands.len();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let basis = Matrix3::from_columns(&[cands[a], cands[b], cands[c]]);
                let scale = cands[a].norm() * cands[b].norm() * cands[c].norm();
                if basis.determinant().abs() < 1e-6 * scale {
                    continue;
                }
                let inv = match basis.try_inverse() {
                    Some(inv) => inv,
                    None => continue,
                };
                let mut worst = 0.0f64;
                let mut ok = true;
                for p in &pts {
                    let coeff = inv * p;
                    let snapped = Vector3::new(
                        coeff.x.round(),
                        coeff.y.round(),
                        coeff.z.round(),
                    );
                    let r = (basis * snapped - p).norm();
                    worst = worst.max(r);
                    if r > tolerance {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Some((basis, worst));
                }
            }
        }
    }
    None
}

fn lex_negative(v: &Vector3<f64>) -> bool {
    if v.x != 0.0 {
        return v.x < 0.0;
    }
    if v.y != 0.0 {
        return v.y < 0.0;
    }
    v.z < 0.0
}

fn dedup_points(points: &[Vector3<f64>], tol: f64) -> Vec<Vector3<f64>> {
    let lookup = PointLookup::new(points, tol);
    let mut out: Vec<Vector3<f64>> = Vec::new();
    let mut taken = vec![false; points.len()];
    for (i, p) in points.iter().enumerate() {
        if taken[i] {
            continue;
        }
        for j in lookup.near(p) {
            if (points[j] - p).norm() <= tol {
                taken[j] = true;
            }
        }
        out.push(*p);
    }
    out
}

/// Grid-hash lookup over a point set with a fixed matching tolerance.
pub struct PointLookup<'a> {
    points: &'a [Vector3<f64>],
    cell: f64,
    grid: HashMap<(i64, i64, i64), Vec<usize>>,
}

impl<'a> PointLookup<'a> {
    pub fn new(points: &'a [Vector3<f64>], tol: f64) -> Self {
        let cell = tol.max(1e-12);
        let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            grid.entry(Self::key(p, cell)).or_default().push(i);
        }
        Self { points, cell, grid }
    }

    fn key(p: &Vector3<f64>, cell: f64) -> (i64, i64, i64) {
        (
            (p.x / cell).floor() as i64,
            (p.y / cell).floor() as i64,
            (p.z / cell).floor() as i64,
        )
    }

    /// Indices of points in the 27 cells around `q`.
    pub fn near(&self, q: &Vector3<f64>) -> impl Iterator<Item = usize> + '_ {
        let (kx, ky, kz) = Self::key(q, self.cell);
        (-1..=1).flat_map(move |dx| {
            (-1..=1).flat_map(move |dy| {
                (-1..=1).flat_map(move |dz| {
                    self.grid
                        .get(&(kx + dx, ky + dy, kz + dz))
                        .into_iter()
                        .flatten()
                        .copied()
                })
            })
        })
    }

    /// Whether some point lies within `tol` of `q` (Euclidean).
    pub fn contains_within(&self, q: &Vector3<f64>, tol: f64) -> bool {
        self.near(q).any(|i| (self.points[i] - q).norm() <= tol)
    }
}

/// True iff for every group element `g` and every point `p` with
/// `|p| <= interior_radius`, the image `g p` matches some point of the set
/// within `match_tol`.
pub fn check_set_symmetry(
    points: &[Vector3<f64>],
    action: &[Matrix3<f64>],
    match_tol: f64,
    interior_radius: f64,
) -> bool {
    let lookup = PointLookup::new(points, match_tol);
    let r2 = interior_radius * interior_radius;
    for g in action {
        for p in points {
            if p.norm_squared() <= r2 && !lookup.contains_within(&(g * p), match_tol) {
                return false;
            }
        }
    }
    true
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> f64 {
    fn one_sided(x: &[Vector3<f64>], y: &[Vector3<f64>]) -> f64 {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm_squared())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
            .sqrt()
    }
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    one_sided(a, b).max(one_sided(b, a))
}

/// Pairs of distinct indices whose points coincide within `tol`, with their
/// distances. Points are not merged; coincidences are reported as data.
pub fn find_collisions(points: &[Vector3<f64>], tol: f64) -> Vec<(usize, usize, f64)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        points[i]
            .norm()
            .partial_cmp(&points[j].norm())
            .expect("finite norms")
    });
    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if points[j].norm() - points[i].norm() > tol {
                break;
            }
            let d = (points[i] - points[j]).norm();
            if d <= tol {
                out.push((i.min(j), i.max(j), d));
            }
        }
    }
    out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    out
}
