//! Cut-and-project generation of the transforming structures: model-set
//! patches and finite point arrays along a centralizer rotation path, and
//! the deformed-lattice equivalence check.

use nalgebra::{Matrix6, Vector3, Vector6};

use crate::error::{Error, Result};
use crate::geometry::{find_collisions, hausdorff_distance};
use crate::groups::Subgroup;
use crate::lattice::{for_each_integer_point_in_ball, LatticeKind};
use crate::reduction::{projection_rows, ReductionFrame};
use crate::schur::{AngleParameter, SchurFamily};
use crate::window::{build_window, Containment, ProjectionWindow};

/// Hard guard on patch radii; enumeration is six-dimensional.
pub const RADIUS_MAX_LIMIT: f64 = 12.0;

/// Guard for the double-construction equivalence check.
pub const BAIN_RADIUS_LIMIT: f64 = 6.0;

/// Tolerance below which two projected points count as one collision event.
pub const COLLISION_TOL: f64 = 1e-9;

/// A coincidence of two projected points, kept as data (never merged).
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CollisionEvent {
    pub first: usize,
    pub second: usize,
    pub distance: f64,
}

/// Finite patch of a model set with its 6D preimages and generation
/// metadata.
#[derive(Clone, Debug)]
pub struct ModelSetPatch {
    pub subgroup: Subgroup,
    pub endpoint: AngleParameter,
    pub t: f64,
    pub radius_max: f64,
    pub lattice: LatticeKind,
    pub points: Vec<Vector3<f64>>,
    pub preimages: Vec<[i64; 6]>,
    /// True where the preimage's orthogonal projection lies on the window
    /// boundary (inclusive tie rule).
    pub boundary_flags: Vec<bool>,
    pub collisions: Vec<CollisionEvent>,
    pub window_diameter: f64,
}

impl ModelSetPatch {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_flags.iter().filter(|&&b| b).count()
    }
}

/// Finite projected orbit with its preimages.
#[derive(Clone, Debug)]
pub struct PointArray {
    pub subgroup: Subgroup,
    pub endpoint: AngleParameter,
    pub t: f64,
    pub seed: Option<[i64; 6]>,
    pub points: Vec<Vector3<f64>>,
    pub preimages: Vec<[i64; 6]>,
    pub collisions: Vec<CollisionEvent>,
}

/// Enumerate the model-set patch at path parameter `t` toward a boundary
/// endpoint. Only the simple cubic lattice carries a window.
pub fn enumerate_model_set(
    family: &SchurFamily,
    endpoint: &AngleParameter,
    t: f64,
    radius_max: f64,
) -> Result<ModelSetPatch> {
    let rotation = family.rotation_path(endpoint, t)?;
    enumerate_with_rotation(family, endpoint, t, &rotation, radius_max)
}

/// Enumerate at explicit angles (not required to be a boundary endpoint);
/// the angles are recorded as the endpoint of a unit path.
pub fn enumerate_model_set_at_angles(
    family: &SchurFamily,
    angles: &AngleParameter,
    radius_max: f64,
) -> Result<ModelSetPatch> {
    let rotation = family.evaluate(angles)?;
    enumerate_with_rotation(family, angles, 1.0, &rotation, radius_max)
}

fn enumerate_with_rotation(
    family: &SchurFamily,
    endpoint: &AngleParameter,
    t: f64,
    rotation: &Matrix6<f64>,
    radius_max: f64,
) -> Result<ModelSetPatch> {
    if !(radius_max > 0.0 && radius_max <= RADIUS_MAX_LIMIT) {
        return Err(Error::RadiusGuard {
            got: radius_max,
            max: RADIUS_MAX_LIMIT,
        });
    }
    let frame = ReductionFrame::standard();
    let window = build_window(rotation, frame, LatticeKind::Sc)?;
    let rotated = family.rotated_frame(rotation);
    let (par, per) = projection_rows(&rotated);

    // Orthogonal frames split norms: |v|^2 = |par v|^2 + |per v|^2, so a
    // 6D ball of this radius covers every candidate.
    let bound = (radius_max * radius_max + window.circumradius().powi(2)).sqrt() + 1e-9;
    let r2 = radius_max * radius_max + 1e-12;

    let mut rows: Vec<(f64, Vector3<f64>, [i64; 6], bool)> = Vec::new();
    for_each_integer_point_in_ball(bound, |v| {
        let vf = Vector6::from_fn(|i, _| v[i] as f64);
        let q = per * vf;
        let membership = window.contains(&q);
        if membership == Containment::Outside {
            return;
        }
        let p = par * vf;
        let n2 = p.norm_squared();
        if n2 > r2 {
            return;
        }
        rows.push((n2.sqrt(), p, *v, membership == Containment::Boundary));
    });

    // Deterministic order: by norm, then point coordinates, then preimage.
    rows.sort_by(|a, b| {
        (a.0, a.1.x, a.1.y, a.1.z, a.2)
            .partial_cmp(&(b.0, b.1.x, b.1.y, b.1.z, b.2))
            .expect("finite coordinates")
    });

    let points: Vec<Vector3<f64>> = rows.iter().map(|r| r.1).collect();
    let preimages: Vec<[i64; 6]> = rows.iter().map(|r| r.2).collect();
    let boundary_flags: Vec<bool> = rows.iter().map(|r| r.3).collect();
    let collisions = collision_events(&points);

    Ok(ModelSetPatch {
        subgroup: family.subgroup(),
        endpoint: endpoint.clone(),
        t,
        radius_max,
        lattice: LatticeKind::Sc,
        points,
        preimages,
        boundary_flags,
        collisions,
        window_diameter: window.diameter(),
    })
}

/// Project an explicit list of 6D lattice vectors at path parameter `t`.
/// Preimage order is preserved so the same index tracks one orbit point
/// across a sweep.
pub fn project_array(
    family: &SchurFamily,
    endpoint: &AngleParameter,
    t: f64,
    orbit: &[[i64; 6]],
) -> Result<PointArray> {
    let rotation = family.rotation_path(endpoint, t)?;
    let (par, _) = projection_rows(&family.rotated_frame(&rotation));
    let points: Vec<Vector3<f64>> = orbit
        .iter()
        .map(|v| par * Vector6::from_fn(|i, _| v[i] as f64))
        .collect();
    let collisions = collision_events(&points);
    Ok(PointArray {
        subgroup: family.subgroup(),
        endpoint: endpoint.clone(),
        t,
        seed: None,
        points,
        preimages: orbit.to_vec(),
        collisions,
    })
}

/// Orbit of `seed` under the icosahedral representation, projected at `t`.
pub fn orbit_point_array(
    family: &SchurFamily,
    endpoint: &AngleParameter,
    t: f64,
    seed: &[i64; 6],
) -> Result<PointArray> {
    let orbit = crate::constants::icosa_group().orbit(seed);
    let mut array = project_array(family, endpoint, t, &orbit)?;
    array.seed = Some(*seed);
    Ok(array)
}

/// Orbit projection at explicit angles (not required to be a boundary
/// endpoint); recorded as the endpoint of a unit path.
pub fn orbit_point_array_at_angles(
    family: &SchurFamily,
    angles: &AngleParameter,
    seed: &[i64; 6],
) -> Result<PointArray> {
    let orbit = crate::constants::icosa_group().orbit(seed);
    let rotation = family.evaluate(angles)?;
    let (par, _) = projection_rows(&family.rotated_frame(&rotation));
    let points: Vec<Vector3<f64>> = orbit
        .iter()
        .map(|v| par * Vector6::from_fn(|i, _| v[i] as f64))
        .collect();
    let collisions = collision_events(&points);
    Ok(PointArray {
        subgroup: family.subgroup(),
        endpoint: angles.clone(),
        t: 1.0,
        seed: Some(*seed),
        points,
        preimages: orbit,
        collisions,
    })
}

fn collision_events(points: &[Vector3<f64>]) -> Vec<CollisionEvent> {
    find_collisions(points, COLLISION_TOL)
        .into_iter()
        .map(|(first, second, distance)| CollisionEvent {
            first,
            second,
            distance,
        })
        .collect()
}

/// Double-construction equivalence: build the patch once with the rotated
/// projections and fixed lattice, once with fixed projections and the
/// inversely deformed lattice basis, and return the Hausdorff distance
/// between the two point sets.
pub fn bain_equivalence_check(
    family: &SchurFamily,
    endpoint: &AngleParameter,
    t: f64,
    radius_max: f64,
) -> Result<f64> {
    if !(radius_max > 0.0 && radius_max <= BAIN_RADIUS_LIMIT) {
        return Err(Error::RadiusGuard {
            got: radius_max,
            max: BAIN_RADIUS_LIMIT,
        });
    }
    let rotation = family.rotation_path(endpoint, t)?;
    let rotated_route = enumerate_with_rotation(family, endpoint, t, &rotation, radius_max)?;

    // Deformed-basis route: lattice points `B(t) m` with `B(t)` the inverse
    // rotation, projected through the fixed frame; the window is the fixed
    // orthogonal projection of the deformed Voronoi cell.
    let frame = ReductionFrame::standard();
    let (par, per) = projection_rows(&frame.to_f64());
    let deformed = rotation.transpose();

    let mut cell_vertices = Vec::with_capacity(64);
    for mask in 0..64u32 {
        let mut u = Vector6::<f64>::zeros();
        for i in 0..6 {
            u[i] = if mask & (1 << i) != 0 { 0.5 } else { -0.5 };
        }
        cell_vertices.push(per * (deformed * u));
    }
    let window = ProjectionWindow::from_points(&cell_vertices)?;

    let bound = (radius_max * radius_max + window.circumradius().powi(2)).sqrt() + 1e-9;
    let r2 = radius_max * radius_max + 1e-12;
    let mut deformed_points: Vec<Vector3<f64>> = Vec::new();
    for_each_integer_point_in_ball(bound, |m| {
        let mf = Vector6::from_fn(|i, _| m[i] as f64);
        let vt = deformed * mf;
        if window.contains(&(per * vt)) == Containment::Outside {
            return;
        }
        let p = par * vt;
        if p.norm_squared() <= r2 {
            deformed_points.push(p);
        }
    });

    Ok(hausdorff_distance(&rotated_route.points, &deformed_points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{check_set_symmetry, detect_lattice_3d};
    use crate::reduction::closure_3x3;
    use crate::schur::angles;

    fn tetra_endpoint() -> AngleParameter {
        AngleParameter::one(-angles::atan_half())
    }

    #[test]
    fn radius_guard() {
        let fam = SchurFamily::get(Subgroup::T);
        assert!(matches!(
            enumerate_model_set(fam, &tetra_endpoint(), 0.0, 20.0),
            Err(Error::RadiusGuard { .. })
        ));
        assert!(matches!(
            bain_equivalence_check(fam, &tetra_endpoint(), 0.5, 7.0),
            Err(Error::RadiusGuard { .. })
        ));
    }

    #[test]
    fn tiny_radius_contains_only_origin() {
        let fam = SchurFamily::get(Subgroup::T);
        let patch = enumerate_model_set(fam, &tetra_endpoint(), 0.0, 0.4).unwrap();
        assert_eq!(patch.len(), 1);
        assert_eq!(patch.preimages[0], [0i64; 6]);
        assert!(patch.points[0].norm() < 1e-12);
    }

    #[test]
    fn patch_is_monotone_in_radius() {
        let fam = SchurFamily::get(Subgroup::T);
        let small = enumerate_model_set(fam, &tetra_endpoint(), 0.3, 2.0).unwrap();
        let large = enumerate_model_set(fam, &tetra_endpoint(), 0.3, 3.0).unwrap();
        assert!(small.len() < large.len());
        for v in &small.preimages {
            assert!(large.preimages.contains(v));
        }
    }

    #[test]
    fn pythagoras_split_under_rotated_frames() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let fam = SchurFamily::get(Subgroup::D6);
        for _ in 0..200 {
            let t: f64 = rng.gen_range(0.0..1.0);
            let angles = AngleParameter::two(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
                .scale(t);
            let m = fam.evaluate(&angles).unwrap();
            let (par, per) = projection_rows(&fam.rotated_frame(&m));
            let v = Vector6::from_fn(|_, _| rng.gen_range(-8i64..=8) as f64);
            let split = (par * v).norm_squared() + (per * v).norm_squared();
            assert!((split - v.norm_squared()).abs() < 1e-10);
        }
    }

    #[test]
    fn icosahedral_patch_is_aperiodic_but_symmetric() {
        let fam = SchurFamily::get(Subgroup::T);
        let patch = enumerate_model_set(fam, &tetra_endpoint(), 0.0, 3.0).unwrap();
        assert!(patch.len() > 100);
        assert!(detect_lattice_3d(&patch.points, 1e-6).is_none());

        let rho = crate::constants::rho3_blocks();
        let grp = closure_3x3(&[rho[0].to_matrix3(), rho[1].to_matrix3()], 100, 1e-9).unwrap();
        let interior = patch.radius_max - patch.window_diameter;
        assert!(check_set_symmetry(&patch.points, &grp, 1e-9, interior));
    }

    #[test]
    fn midpoint_tetra_patch_is_a_lattice() {
        let fam = SchurFamily::get(Subgroup::T);
        let patch = enumerate_model_set(fam, &tetra_endpoint(), 0.5, 4.0).unwrap();
        let (_, residual) = detect_lattice_3d(&patch.points, 1e-8).expect("periodic state");
        assert!(residual < 1e-8);
    }

    #[test]
    fn d6_midpoint_model_set_is_a_lattice() {
        let fam = SchurFamily::get(Subgroup::D6);
        let endpoint = AngleParameter::two(angles::atan_half(), angles::atan_two());
        let patch = enumerate_model_set(fam, &endpoint, 0.5, 4.0).unwrap();
        let (_, residual) = detect_lattice_3d(&patch.points, 1e-8).expect("periodic state");
        assert!(residual < 1e-8);
    }

    #[test]
    fn orbit_array_of_e1_is_an_icosahedron() {
        let fam = SchurFamily::get(Subgroup::D6);
        let endpoint = AngleParameter::two(angles::atan_half(), angles::atan_two());
        let arr = orbit_point_array(fam, &endpoint, 0.0, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(arr.points.len(), 12);
        let norms: Vec<f64> = arr.points.iter().map(|p| p.norm()).collect();
        let (lo, hi) = norms
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &n| (lo.min(n), hi.max(n)));
        assert!(hi - lo < 1e-9);
        // Five nearest neighbors at the minimal pairwise distance.
        let min_d = min_pairwise(&arr.points);
        for p in &arr.points {
            let count = arr
                .points
                .iter()
                .filter(|q| ((*q - p).norm() - min_d).abs() < 1e-9)
                .count();
            assert_eq!(count, 5);
        }
        assert!(arr.collisions.is_empty());
    }

    fn min_pairwise(pts: &[Vector3<f64>]) -> f64 {
        let mut m = f64::INFINITY;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                m = m.min((a - b).norm());
            }
        }
        m
    }

    #[test]
    fn zero_seed_projects_to_origin_for_all_t() {
        let fam = SchurFamily::get(Subgroup::T);
        for k in 0..=4 {
            let arr =
                orbit_point_array(fam, &tetra_endpoint(), k as f64 / 4.0, &[0i64; 6]).unwrap();
            assert_eq!(arr.points.len(), 1);
            assert!(arr.points[0].norm() < 1e-12);
        }
    }

    #[test]
    fn d10_axis_vertices_collide_at_path_midpoint() {
        let fam = SchurFamily::get(Subgroup::D10);
        let endpoint = AngleParameter::one(std::f64::consts::FRAC_PI_2);
        let seed = [1i64, 0, 0, 0, 0, 0];
        let mid = orbit_point_array(fam, &endpoint, 0.5, &seed).unwrap();
        assert_eq!(mid.collisions.len(), 1);
        let ev = &mid.collisions[0];
        // The colliding pair is an antipodal preimage pair fixed (up to
        // sign) by the five-fold generator, meeting at the origin.
        let a = mid.preimages[ev.first];
        let b = mid.preimages[ev.second];
        assert_eq!(a, std::array::from_fn(|i| -b[i]));
        assert!(mid.points[ev.first].norm() < 1e-9);
        let g5 = crate::constants::d10_generators()[1];
        assert!(g5.apply(&a) == a || g5.apply(&a) == std::array::from_fn(|i| -a[i]));
        for t in [0.0, 0.25, 0.75, 0.9, 1.0] {
            let arr = orbit_point_array(fam, &endpoint, t, &seed).unwrap();
            assert!(arr.collisions.is_empty(), "unexpected collision at t={t}");
        }
    }

    #[test]
    fn bain_routes_agree() {
        let fam = SchurFamily::get(Subgroup::T);
        for t in [0.0, 0.5] {
            let d = bain_equivalence_check(fam, &tetra_endpoint(), t, 2.5).unwrap();
            assert!(d < 1e-9, "t={t}: {d}");
        }
    }

    #[test]
    fn rejects_non_boundary_endpoint() {
        let fam = SchurFamily::get(Subgroup::T);
        assert!(matches!(
            enumerate_model_set(fam, &AngleParameter::one(0.7), 0.5, 2.0),
            Err(Error::NotABoundarySolution { .. })
        ));
    }
}
