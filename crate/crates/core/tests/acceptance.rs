//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Every tolerance is pinned in code. Two published values are contradicted
//! by the explicit matrices they accompany and are asserted here in their
//! verified corrected form, with the discrepancy demonstrated at runtime:
//!
//! * the order-10 dihedral family has two boundary angles (+-pi/2), not
//!   one: both zero the off-block system to machine precision and yield
//!   the same physical/orthogonal space pair;
//! * in the two-angle solution list, the pair printed as
//!   (atan 2, pi - atan 1/2) is a sign typo for (-atan 2, pi - atan 1/2);
//!   the printed pair leaves an off-block residual of order one.
//!
//! The collision singularity of the order-10 path is likewise pinned where
//! it actually occurs: the antipodal five-fold-axis vertices meet at the
//! origin at the path midpoint (t = 0.5), and at no other sampled t,
//! including the endpoints.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, Vector3};

use icotrans::constants;
use icotrans::export::{self, PatchDocument};
use icotrans::geometry::{check_set_symmetry, detect_lattice_3d};
use icotrans::groups::Subgroup;
use icotrans::model_set::{bain_equivalence_check, enumerate_model_set, orbit_point_array};
use icotrans::reduction::{
    closure_3x3, identify_e_block, identify_irrep, reduce_rep, ExactBlockDecomposition,
    IrrepLabel, ReductionFrame, RepKind, SubgroupReducer,
};
use icotrans::schur::{angles, AngleParameter, SchurFamily};

const E1_SEED: [i64; 6] = [1, 0, 0, 0, 0, 0];

fn pass(n: u32, name: &str) {
    println!("ACCEPTANCE criterion {n:02} ({name}): PASS");
}

fn tetra_endpoint() -> AngleParameter {
    AngleParameter::one(-angles::atan_half())
}

fn d10_endpoint() -> AngleParameter {
    AngleParameter::one(FRAC_PI_2)
}

fn d6_endpoint() -> AngleParameter {
    AngleParameter::two(angles::atan_half(), angles::atan_two())
}

fn block_group(sub: Subgroup) -> Vec<Matrix3<f64>> {
    let blocks = match sub {
        Subgroup::T => constants::gamma1_blocks(),
        Subgroup::D10 => constants::d10_top_blocks(),
        Subgroup::D6 => constants::d6_top_blocks(),
    };
    closure_3x3(&[blocks[0].to_matrix3(), blocks[1].to_matrix3()], 100, 1e-9).unwrap()
}

fn icosa_block_group() -> Vec<Matrix3<f64>> {
    let rho = constants::rho3_blocks();
    closure_3x3(&[rho[0].to_matrix3(), rho[1].to_matrix3()], 100, 1e-9).unwrap()
}

#[test]
fn criterion_01_group_suite() {
    assert_eq!(constants::icosa_group().order(), 60);
    assert_eq!(constants::tetra_group().order(), 12);
    assert_eq!(constants::d10_group().order(), 10);
    assert_eq!(constants::d6_group().order(), 6);
    for sub in Subgroup::ALL {
        assert_eq!(constants::partner_group(sub).order(), 60);
    }

    for g in [
        constants::icosa_group(),
        constants::tetra_group(),
        constants::d10_group(),
        constants::d6_group(),
        constants::partner_group(Subgroup::T),
        constants::partner_group(Subgroup::D10),
        constants::partner_group(Subgroup::D6),
    ] {
        assert!(g.verify_presentation().unwrap(), "{:?}", g.label);
    }

    for sub in Subgroup::ALL {
        let inter = constants::icosa_group().intersect(constants::partner_group(sub));
        assert!(
            inter.same_elements(constants::subgroup_group(sub)),
            "intersection mismatch for {sub}"
        );
    }
    pass(1, "group suite");
}

#[test]
fn criterion_02_reduction_suite() {
    let frame = ReductionFrame::standard();
    assert!(frame.golden().frame_check());

    // Icosahedral reduction: exactly zero off-blocks, table-exact blocks.
    let d = frame.reduce_exact(&constants::icosa_generators());
    assert!(d.off_blocks_zero);
    let rho3 = constants::rho3_blocks();
    let rho3p = constants::rho3_prime_blocks();
    for i in 0..2 {
        assert!(ExactBlockDecomposition::block_equals_table(&d.top[i], &rho3[i]));
        assert!(ExactBlockDecomposition::block_equals_table(&d.bottom[i], &rho3p[i]));
    }

    // Subgroup reductions land on the published source representations.
    let cases = [
        (
            constants::tetra_generators(),
            constants::gamma1_blocks(),
            constants::gamma2_blocks(),
        ),
        (
            constants::d10_generators(),
            constants::d10_top_blocks(),
            constants::d10_bottom_blocks(),
        ),
        (
            constants::d6_generators(),
            constants::d6_top_blocks(),
            constants::d6_bottom_blocks(),
        ),
    ];
    for (gens, top, bottom) in cases {
        let d = frame.reduce_exact(&gens);
        assert!(d.off_blocks_zero);
        for i in 0..2 {
            assert!(ExactBlockDecomposition::block_equals_table(&d.top[i], &top[i]));
            assert!(ExactBlockDecomposition::block_equals_table(&d.bottom[i], &bottom[i]));
        }
    }

    // The tetrahedral intertwiner is exactly orthogonal (checked in its
    // constructor together with the conjugation identity).
    assert!(constants::tetra_intertwiner().frame_check());

    // Radical-valued reducers: orthogonal to 1e-12 with the claimed
    // scalar-plus-plane split and plane content.
    for sub in [Subgroup::D10, Subgroup::D6] {
        let reducer = SubgroupReducer::for_subgroup(sub);
        for m in [reducer.top, reducer.bottom] {
            assert!((m * m.transpose() - Matrix3::identity()).abs().max() < 1e-12);
        }
        let d = frame
            .reduce_exact(&constants::subgroup_group(sub).generators.clone())
            .to_float();
        let reduced = reducer.apply(&d).unwrap();
        let plane = |m: &Matrix3<f64>| m.fixed_view::<2, 2>(1, 1).into_owned();
        let kind = RepKind::for_subgroup(sub);
        let top_e = [plane(&reduced.top[0]), plane(&reduced.top[1])];
        let bottom_e = [plane(&reduced.bottom[0]), plane(&reduced.bottom[1])];
        match sub {
            Subgroup::D10 => {
                assert_eq!(identify_e_block(kind, &top_e), IrrepLabel::E1);
                assert_eq!(identify_e_block(kind, &bottom_e), IrrepLabel::E2);
            }
            _ => {
                assert_eq!(identify_e_block(kind, &top_e), IrrepLabel::E);
                assert_eq!(identify_e_block(kind, &bottom_e), IrrepLabel::E);
            }
        }
    }
    pass(2, "reduction suite");
}

#[test]
fn criterion_03_centralizer_suite() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for sub in Subgroup::ALL {
        let fam = SchurFamily::get(sub);
        for _ in 0..100 {
            let vals: Vec<f64> = (0..sub.angle_arity())
                .map(|_| rng.gen_range(-PI..PI))
                .collect();
            let a = AngleParameter::new(sub, &vals).unwrap();
            assert!(fam.commutation_residual(&a).unwrap() < 1e-12);
            let m = fam.evaluate(&a).unwrap();
            assert!((m.determinant() - 1.0).abs() < 1e-12);

            let vals_b: Vec<f64> = (0..sub.angle_arity())
                .map(|_| rng.gen_range(-PI..PI))
                .collect();
            let b = AngleParameter::new(sub, &vals_b).unwrap();
            let law = (fam.evaluate(&a).unwrap() * fam.evaluate(&b).unwrap()
                - fam.evaluate(&a.add(&b)).unwrap())
            .abs()
            .max();
            assert!(law < 1e-12);
        }
    }
    pass(3, "centralizer suite");
}

#[test]
fn criterion_04_boundary_suite() {
    let ah = angles::atan_half();
    let a2 = angles::atan_two();

    // Tetrahedral family: exactly the four published angles.
    let t_fam = SchurFamily::get(Subgroup::T);
    let t_sols = t_fam.boundary_solutions().unwrap();
    let t_expect = [a2 - PI, -ah, a2, PI - ah];
    assert_eq!(t_sols.len(), 4);
    for (s, e) in t_sols.iter().zip(t_expect) {
        assert!((s.values()[0] - e).abs() < 1e-9);
    }

    // Order-10 dihedral family: the published angle pi/2 is found, and the
    // exhaustive scan shows its antipode is a solution of the same system
    // (documented deviation from the published count of one).
    let d10_fam = SchurFamily::get(Subgroup::D10);
    let d10_sols = d10_fam.boundary_solutions().unwrap();
    assert!(d10_sols
        .iter()
        .any(|s| (s.values()[0] - FRAC_PI_2).abs() < 1e-9));
    assert_eq!(d10_sols.len(), 2);
    assert!((d10_sols[0].values()[0] + FRAC_PI_2).abs() < 1e-9);
    println!(
        "  note: the exhaustive scan finds the antipodal angle -pi/2 as well \
         (residual {:.2e}); the published count lists pi/2 alone",
        d10_fam
            .off_block_residual_at(&AngleParameter::one(-FRAC_PI_2))
            .unwrap()
    );

    // Two-angle family: eight solutions. Seven match the published pairs
    // verbatim; the eighth is the sign-corrected form of the published
    // (atan 2, pi - atan 1/2), which itself is demonstrably not a zero.
    let d6_fam = SchurFamily::get(Subgroup::D6);
    let d6_sols = d6_fam.boundary_solutions().unwrap();
    let d6_expect = [
        AngleParameter::two(ah - PI, a2 - PI),
        AngleParameter::two(ah - PI, a2),
        AngleParameter::two(-a2, -ah),
        AngleParameter::two(-a2, PI - ah), // corrected sign
        AngleParameter::two(ah, a2 - PI),
        AngleParameter::two(ah, a2),
        AngleParameter::two(PI - a2, -ah),
        AngleParameter::two(PI - a2, PI - ah),
    ];
    assert_eq!(d6_sols.len(), 8);
    for (s, e) in d6_sols.iter().zip(&d6_expect) {
        assert!(s.torus_distance(e) < 1e-9, "{s:?} vs {e:?}");
    }
    let printed_pair = AngleParameter::two(a2, PI - ah);
    let printed_residual = d6_fam.off_block_residual_at(&printed_pair).unwrap();
    assert!(
        printed_residual > 0.1,
        "published pair unexpectedly solves the system"
    );
    println!(
        "  note: published pair (atan 2, pi - atan 1/2) leaves residual {printed_residual:.3}; \
         the corrected (-atan 2, pi - atan 1/2) is the actual zero"
    );

    // At every solution the partner representation decomposes with a tiny
    // off-block residual into one T1 and one T2 block.
    for (fam, sols) in [
        (t_fam, &t_sols),
        (d10_fam, &d10_sols),
        (d6_fam, &d6_sols),
    ] {
        for s in sols.iter() {
            assert!(fam.off_block_residual_at(s).unwrap() < 1e-10);
            let (top, bottom) = fam.boundary_block_labels(s).unwrap();
            assert!(matches!(
                (top, bottom),
                (IrrepLabel::T1, IrrepLabel::T2) | (IrrepLabel::T2, IrrepLabel::T1)
            ));
        }
    }
    pass(4, "boundary suite");
}

#[test]
fn criterion_05_tetrahedral_transition() {
    let fam = SchurFamily::get(Subgroup::T);
    let endpoint = tetra_endpoint();
    let rmax = 4.0;
    let interior = rmax - 2.5;

    // Endpoints are icosahedral: set-level symmetry under the block group
    // of the representation each frame reduces.
    let sigma0 = enumerate_model_set(fam, &endpoint, 0.0, rmax).unwrap();
    assert!(check_set_symmetry(
        &sigma0.points,
        &icosa_block_group(),
        1e-9,
        interior
    ));

    let sigma1 = enumerate_model_set(fam, &endpoint, 1.0, rmax).unwrap();
    let m1 = fam.rotation_path(&endpoint, 1.0).unwrap();
    let d = reduce_rep(&fam.rotated_frame(&m1), fam.partner_generators_f64());
    assert!(d.off_block_residual < 1e-10);
    let final_group = closure_3x3(&[d.top[0], d.top[1]], 100, 1e-9).unwrap();
    assert_eq!(final_group.len(), 60);
    assert!(check_set_symmetry(
        &sigma1.points,
        &final_group,
        1e-9,
        interior
    ));

    // Midpoint is a three-dimensional lattice; the start is not.
    let sigma_half = enumerate_model_set(fam, &endpoint, 0.5, rmax).unwrap();
    let (_, residual) = detect_lattice_3d(&sigma_half.points, 1e-8).expect("periodic midpoint");
    assert!(residual < 1e-8);
    assert!(detect_lattice_3d(&sigma0.points, 1e-6).is_none());
    pass(5, "tetrahedral transition reproduction");
}

#[test]
fn criterion_06_d6_array_reproduction() {
    let fam = SchurFamily::get(Subgroup::D6);
    let endpoint = d6_endpoint();
    let axis = export::symmetry_axis(Subgroup::D6);

    let icosa_check = |pts: &[Vector3<f64>]| {
        assert_eq!(pts.len(), 12);
        let norms: Vec<f64> = pts.iter().map(Vector3::norm).collect();
        let (lo, hi) = norms
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &n| (lo.min(n), hi.max(n)));
        assert!(hi - lo < 1e-9, "unequal vertex norms");
        let mut min_d = f64::INFINITY;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                min_d = min_d.min((a - b).norm());
            }
        }
        for p in pts {
            let neighbors = pts
                .iter()
                .filter(|q| ((*q - p).norm() - min_d).abs() < 1e-9)
                .count();
            assert_eq!(neighbors, 5, "vertex without five nearest neighbors");
        }
    };

    let at = |t: f64| orbit_point_array(fam, &endpoint, t, &E1_SEED).unwrap();

    let c0 = at(0.0);
    icosa_check(&c0.points);

    // Midpoint: two parallel regular hexagons.
    let c_half = at(0.5);
    let heights: Vec<f64> = c_half.points.iter().map(|p| p.dot(&axis)).collect();
    let h = heights[0].abs();
    assert!(h > 0.1);
    for v in &heights {
        assert!((v.abs() - h).abs() < 1e-9, "not two parallel planes");
    }
    for sign in [1.0, -1.0] {
        let ring: Vec<Vector3<f64>> = c_half
            .points
            .iter()
            .filter(|p| p.dot(&axis) * sign > 0.0)
            .copied()
            .collect();
        assert_eq!(ring.len(), 6);
        let radial: Vec<f64> = ring
            .iter()
            .map(|p| (p - axis * p.dot(&axis)).norm())
            .collect();
        let (rlo, rhi) = radial
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
        assert!(rhi - rlo < 1e-9, "hexagon not planar-regular");
        // Regular hexagon: all edges equal within 1e-9.
        let center = axis * (ring[0].dot(&axis));
        let u = (ring[0] - center).normalize();
        let v = axis.cross(&u);
        let mut by_angle: Vec<(f64, Vector3<f64>)> = ring
            .iter()
            .map(|p| {
                let q = p - center;
                (q.dot(&v).atan2(q.dot(&u)), *p)
            })
            .collect();
        by_angle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let edges: Vec<f64> = (0..6)
            .map(|i| (by_angle[i].1 - by_angle[(i + 1) % 6].1).norm())
            .collect();
        let (elo, ehi) = edges
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e)));
        assert!(ehi - elo < 1e-9, "hexagon edges unequal");
    }

    // Final state: an icosahedron again, displaced from the initial one.
    let c1 = at(1.0);
    icosa_check(&c1.points);
    let max_nearest = c1
        .points
        .iter()
        .map(|p| {
            c0.points
                .iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    assert!(max_nearest > 0.1, "final icosahedron coincides with initial");

    // The three-fold axis is fixed by every array in the sweep.
    let s1_g3 = constants::d6_top_blocks()[1].to_matrix3();
    assert!((s1_g3 * axis - axis).norm() < 1e-12);
    for k in 0..=4 {
        let arr = at(k as f64 / 4.0);
        assert!(check_set_symmetry(&arr.points, &[s1_g3], 1e-9, f64::INFINITY));
    }
    pass(6, "d6 array reproduction");
}

#[test]
fn criterion_07_intermediate_symmetry() {
    let rmax = 3.5;
    let cases = [
        (Subgroup::T, tetra_endpoint()),
        (Subgroup::D10, d10_endpoint()),
        (Subgroup::D6, d6_endpoint()),
    ];
    for (sub, endpoint) in cases {
        let fam = SchurFamily::get(sub);
        let action = block_group(sub);
        for t in [0.25, 0.5, 0.75] {
            let patch = enumerate_model_set(fam, &endpoint, t, rmax).unwrap();
            let interior = rmax - patch.window_diameter;
            assert!(
                check_set_symmetry(&patch.points, &action, 1e-9, interior),
                "{sub} model set at t={t} breaks block symmetry"
            );
            let arr = orbit_point_array(fam, &endpoint, t, &E1_SEED).unwrap();
            assert!(
                check_set_symmetry(&arr.points, &action, 1e-9, f64::INFINITY),
                "{sub} point array at t={t} breaks block symmetry"
            );
        }
    }
    pass(7, "intermediate-symmetry suite");
}

#[test]
fn criterion_08_bain_equivalence() {
    let cases = [
        (Subgroup::T, tetra_endpoint()),
        (Subgroup::D10, d10_endpoint()),
        (Subgroup::D6, d6_endpoint()),
    ];
    for (sub, endpoint) in cases {
        let fam = SchurFamily::get(sub);
        for k in 0..=4 {
            let t = k as f64 / 4.0;
            let d = bain_equivalence_check(fam, &endpoint, t, 3.0).unwrap();
            assert!(d < 1e-9, "{sub} t={t}: Hausdorff {d:.2e}");
        }
    }
    pass(8, "bain equivalence");
}

#[test]
fn criterion_09_d10_collision_flag() {
    let fam = SchurFamily::get(Subgroup::D10);
    let endpoint = d10_endpoint();

    // Collision sweep: the antipodal five-fold-axis vertices meet exactly
    // at the path midpoint. The icosahedral endpoints are collision free;
    // the published remark places the singularity "during" the transition
    // and the measured collapse parameter is t = 0.5.
    let mut collision_ts = Vec::new();
    for k in 0..=20 {
        let t = k as f64 / 20.0;
        let arr = orbit_point_array(fam, &endpoint, t, &E1_SEED).unwrap();
        if !arr.collisions.is_empty() {
            collision_ts.push(t);
        }
    }
    assert_eq!(collision_ts, vec![0.5], "collision parameters {collision_ts:?}");

    let mid = orbit_point_array(fam, &endpoint, 0.5, &E1_SEED).unwrap();
    assert_eq!(mid.collisions.len(), 1);
    let ev = &mid.collisions[0];
    let a = mid.preimages[ev.first];
    let b = mid.preimages[ev.second];
    assert_eq!(a, std::array::from_fn(|i| -b[i]), "colliding pair not antipodal");
    // Both vertices sit on the five-fold axis (fixed up to sign by the
    // five-fold generator) and meet at the origin.
    let g5 = constants::d10_generators()[1];
    assert!(g5.apply(&a) == a || g5.apply(&a) == std::array::from_fn(|i| -a[i]));
    assert!(mid.points[ev.first].norm() < 1e-9);
    assert!(mid.points[ev.second].norm() < 1e-9);

    println!(
        "  note: the collapse parameter is t = 0.5 on the linear path to pi/2; \
         the endpoints (including t = 1) are collision free"
    );
    pass(9, "d10 collision flag");
}

#[test]
fn criterion_10_determinism() {
    // Byte-identical artifacts across two independent pipelines, with the
    // second pass on freshly constructed families (fresh boundary solves).
    let run = |fresh: bool| -> Vec<(String, Vec<u8>)> {
        let mut files = Vec::new();
        let store = |sub: Subgroup| -> &'static SchurFamily {
            if fresh {
                Box::leak(Box::new(SchurFamily::new(sub)))
            } else {
                SchurFamily::get(sub)
            }
        };

        // Boundary reports for all three families.
        for sub in Subgroup::ALL {
            let fam = store(sub);
            let sols = fam.boundary_solutions().unwrap();
            let with_res: Vec<_> = sols
                .iter()
                .map(|s| (s.clone(), fam.off_block_residual_at(s).unwrap()))
                .collect();
            let report = export::BoundaryReport::new(sub, &with_res);
            files.push((
                format!("boundary_{sub}.json"),
                serde_json::to_vec_pretty(&report).unwrap(),
            ));
        }

        // Tetrahedral midpoint patch as CSV and JSON.
        let fam = store(Subgroup::T);
        let patch = enumerate_model_set(fam, &tetra_endpoint(), 0.5, 3.0).unwrap();
        files.push(("patch.csv".into(), export::patch_to_csv(&patch).into_bytes()));
        files.push((
            "patch.json".into(),
            serde_json::to_vec_pretty(&PatchDocument::from_patch(&patch)).unwrap(),
        ));

        // Array sweep CSVs plus the trajectory document.
        let fam6 = store(Subgroup::D6);
        let sweep: Vec<_> = [0.0, 0.25, 0.5, 0.75, 1.0]
            .iter()
            .map(|&t| orbit_point_array(fam6, &d6_endpoint(), t, &E1_SEED).unwrap())
            .collect();
        for arr in &sweep {
            files.push((
                format!("array_t{}.csv", arr.t),
                export::array_to_csv(arr).into_bytes(),
            ));
        }
        files.push((
            "trajectory.json".into(),
            serde_json::to_vec_pretty(&export::TrajectoryDocument::from_sweep(&sweep)).unwrap(),
        ));

        // Bain distances, formatted at 15 significant digits.
        let mut report = String::new();
        for t in [0.0, 0.5, 1.0] {
            let d = bain_equivalence_check(store(Subgroup::D10), &d10_endpoint(), t, 3.0).unwrap();
            report.push_str(&format!("{t} {}\n", export::fmt_f64(d)));
        }
        files.push(("bain.txt".into(), report.into_bytes()));
        files
    };

    let first = run(false);
    let second = run(true);
    assert_eq!(first.len(), second.len());
    for ((name_a, bytes_a), (name_b, bytes_b)) in first.iter().zip(&second) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "artifact {name_a} differs between runs");
    }
    pass(10, "determinism");
}

// Shared sanity: character classes referenced by the suites above.
#[test]
fn character_classes_pin_the_representation_content() {
    let chars = constants::icosa_group().character_vector();
    let expect: BTreeMap<(u32, i32), usize> =
        [((1, 6), 1), ((2, -2), 15), ((3, 0), 20), ((5, 1), 24)].into();
    assert_eq!(chars, expect);

    // Five-fold trace 1 is the sum of the golden traces of the two 3D
    // blocks, which is what identify_irrep keys on.
    let frame = ReductionFrame::standard();
    let d = frame.reduce_exact(&constants::icosa_generators()).to_float();
    let five_top = d.top[0] * d.top[1];
    let five_bottom = d.bottom[0] * d.bottom[1];
    assert!((five_top.trace() + five_bottom.trace() - 1.0).abs() < 1e-12);
    assert_eq!(
        identify_irrep(RepKind::Icosahedral, &[d.top[0], d.top[1]]),
        IrrepLabel::T1
    );
}
