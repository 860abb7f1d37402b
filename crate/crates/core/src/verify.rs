//! Named verification suites aggregating the library's invariants, used by
//! the command-line `verify` subcommand. Each check reports pass/fail plus
//! a short measured detail, so a corrupted constant table fails loudly by
//! name.

use std::collections::BTreeMap;

use nalgebra::Matrix6;
use rand::{Rng, SeedableRng};

use crate::constants;
use crate::gmatrix::ScaledGoldenMatrix;
use crate::groups::Subgroup;
use crate::reduction::{
    identify_irrep, reduce_rep, ExactBlockDecomposition, IrrepLabel, ReductionFrame, RepKind,
    SubgroupReducer,
};
use crate::schur::{angles, AngleParameter, SchurFamily};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub section: Section,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Section {
    Groups,
    Reduction,
    Centralizer,
    Boundary,
}

impl Section {
    pub const ALL: [Section; 4] = [
        Section::Groups,
        Section::Reduction,
        Section::Centralizer,
        Section::Boundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Groups => "groups",
            Section::Reduction => "reduction",
            Section::Centralizer => "centralizer",
            Section::Boundary => "boundary",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "groups" => Some(Section::Groups),
            "reduction" => Some(Section::Reduction),
            "centralizer" => Some(Section::Centralizer),
            "boundary" => Some(Section::Boundary),
            _ => None,
        }
    }
}

fn check(
    out: &mut Vec<CheckResult>,
    section: Section,
    name: &str,
    passed: bool,
    detail: String,
) {
    out.push(CheckResult {
        section,
        name: name.to_string(),
        passed,
        detail,
    });
}

pub fn verify_groups() -> Vec<CheckResult> {
    let s = Section::Groups;
    let mut out = Vec::new();

    let cases = [
        ("closure order |I| = 60", constants::icosa_group().order(), 60),
        ("closure order |T| = 12", constants::tetra_group().order(), 12),
        ("closure order |D10| = 10", constants::d10_group().order(), 10),
        ("closure order |D6| = 6", constants::d6_group().order(), 6),
        (
            "closure order |I_T| = 60",
            constants::partner_group(Subgroup::T).order(),
            60,
        ),
        (
            "closure order |I_D10| = 60",
            constants::partner_group(Subgroup::D10).order(),
            60,
        ),
        (
            "closure order |I_D6| = 60",
            constants::partner_group(Subgroup::D6).order(),
            60,
        ),
    ];
    for (name, got, want) in cases {
        check(&mut out, s, name, got == want, format!("order {got}"));
    }

    let groups = [
        ("I", constants::icosa_group()),
        ("T", constants::tetra_group()),
        ("D10", constants::d10_group()),
        ("D6", constants::d6_group()),
        ("I_T", constants::partner_group(Subgroup::T)),
        ("I_D10", constants::partner_group(Subgroup::D10)),
        ("I_D6", constants::partner_group(Subgroup::D6)),
    ];
    for (label, g) in groups {
        let ok = g.verify_presentation().unwrap_or(false);
        check(
            &mut out,
            s,
            &format!("presentation relations hold for {label}"),
            ok,
            String::new(),
        );
        check(
            &mut out,
            s,
            &format!("all elements of {label} are signed permutations"),
            g.elements().iter().all(|m| m.is_valid()),
            format!("{} elements", g.order()),
        );
    }

    for sub in Subgroup::ALL {
        let inter = constants::icosa_group().intersect(constants::partner_group(sub));
        let expect = constants::subgroup_group(sub);
        check(
            &mut out,
            s,
            &format!("I intersect I_{sub} equals the {sub} subgroup"),
            inter.same_elements(expect),
            format!("intersection order {}", inter.order()),
        );
    }

    let chars = constants::icosa_group().character_vector();
    let expect: BTreeMap<(u32, i32), usize> =
        [((1, 6), 1), ((2, -2), 15), ((3, 0), 20), ((5, 1), 24)].into();
    check(
        &mut out,
        s,
        "icosahedral (order, trace) classes are 1x(1,6), 15x(2,-2), 20x(3,0), 24x(5,1)",
        chars == expect,
        format!("{chars:?}"),
    );

    out
}

pub fn verify_reduction() -> Vec<CheckResult> {
    verify_reduction_with_frame(constants::frame_matrix().clone())
}

/// Reduction checks against an arbitrary frame matrix; lets tests and the
/// fault-injection path corrupt the table and watch frameCheck fail.
pub fn verify_reduction_with_frame(frame_matrix: ScaledGoldenMatrix) -> Vec<CheckResult> {
    let s = Section::Reduction;
    let mut out = Vec::new();

    let frame_ok = frame_matrix.frame_check();
    check(
        &mut out,
        s,
        "frameCheck(R): entries * entries^T = normSquared * I exactly",
        frame_ok,
        String::new(),
    );
    let frame = match ReductionFrame::new(frame_matrix) {
        Ok(f) => f,
        Err(_) => {
            check(
                &mut out,
                s,
                "exact block reduction (skipped: frame invalid)",
                false,
                "frame failed frameCheck".into(),
            );
            return out;
        }
    };

    let d = frame.reduce_exact(&constants::icosa_generators());
    let rho3 = constants::rho3_blocks();
    let rho3p = constants::rho3_prime_blocks();
    let blocks_match = (0..2).all(|i| {
        ExactBlockDecomposition::block_equals_table(&d.top[i], &rho3[i])
            && ExactBlockDecomposition::block_equals_table(&d.bottom[i], &rho3p[i])
    });
    check(
        &mut out,
        s,
        "icosahedral reduction is exactly block diagonal",
        d.off_blocks_zero,
        String::new(),
    );
    check(
        &mut out,
        s,
        "icosahedral blocks equal the published tables entry-wise",
        blocks_match,
        String::new(),
    );

    let subgroup_tables = [
        (
            "tetrahedral",
            constants::tetra_generators(),
            constants::gamma1_blocks(),
            constants::gamma2_blocks(),
        ),
        (
            "order-10 dihedral",
            constants::d10_generators(),
            constants::d10_top_blocks(),
            constants::d10_bottom_blocks(),
        ),
        (
            "order-6 dihedral",
            constants::d6_generators(),
            constants::d6_top_blocks(),
            constants::d6_bottom_blocks(),
        ),
    ];
    for (name, gens, top_t, bot_t) in subgroup_tables {
        let d = frame.reduce_exact(&gens);
        let ok = d.off_blocks_zero
            && (0..2).all(|i| {
                ExactBlockDecomposition::block_equals_table(&d.top[i], &top_t[i])
                    && ExactBlockDecomposition::block_equals_table(&d.bottom[i], &bot_t[i])
            });
        check(
            &mut out,
            s,
            &format!("{name} blocks equal the published tables"),
            ok,
            String::new(),
        );
    }

    check(
        &mut out,
        s,
        "tetrahedral intertwiner is exactly orthogonal and maps block two to block one",
        constants::tetra_intertwiner().frame_check(),
        String::new(),
    );

    for sub in Subgroup::ALL {
        let gens: Vec<Matrix6<f64>> = constants::partner_generators(sub)
            .iter()
            .map(|g| g.to_matrix6())
            .collect();
        let res = reduce_rep(&frame.to_f64(), &gens).off_block_residual;
        check(
            &mut out,
            s,
            &format!("frame does not reduce the partner representation I_{sub}"),
            res > 0.1,
            format!("off-block residual {res:.3}"),
        );
    }

    for sub in [Subgroup::D10, Subgroup::D6] {
        let reducer = SubgroupReducer::for_subgroup(sub);
        let orth = [
            (reducer.top * reducer.top.transpose() - nalgebra::Matrix3::identity())
                .abs()
                .max(),
            (reducer.bottom * reducer.bottom.transpose() - nalgebra::Matrix3::identity())
                .abs()
                .max(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        check(
            &mut out,
            s,
            &format!("{sub} reducing matrices orthogonal to 1e-12"),
            orth < 1e-12,
            format!("residual {orth:.2e}"),
        );
        let d = frame
            .reduce_exact(&constants::subgroup_group(sub).generators.clone())
            .to_float();
        let applied = reducer.apply(&d);
        check(
            &mut out,
            s,
            &format!("{sub} blocks split as scalar plus plane under the reducer"),
            applied.is_ok(),
            String::new(),
        );
    }

    // Identification of every table block against character data.
    let ident_ok = {
        let d = frame.reduce_exact(&constants::icosa_generators()).to_float();
        identify_irrep(RepKind::Icosahedral, &[d.top[0], d.top[1]]) == IrrepLabel::T1
            && identify_irrep(RepKind::Icosahedral, &[d.bottom[0], d.bottom[1]])
                == IrrepLabel::T2
    };
    check(
        &mut out,
        s,
        "physical block identifies as T1 and orthogonal block as T2",
        ident_ok,
        String::new(),
    );

    out
}

pub fn verify_centralizers() -> Vec<CheckResult> {
    let s = Section::Centralizer;
    let mut out = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);

    for sub in Subgroup::ALL {
        let fam = SchurFamily::get(sub);
        let mut worst_comm = 0.0f64;
        let mut worst_det = 0.0f64;
        let mut worst_law = 0.0f64;
        for _ in 0..100 {
            let a = random_angles(sub, &mut rng);
            worst_comm = worst_comm.max(fam.commutation_residual(&a).unwrap());
            let m = fam.evaluate(&a).unwrap();
            worst_det = worst_det.max((m.determinant() - 1.0).abs());
            let b = random_angles(sub, &mut rng);
            let law = (fam.evaluate(&a).unwrap() * fam.evaluate(&b).unwrap()
                - fam.evaluate(&a.add(&b)).unwrap())
            .abs()
            .max();
            worst_law = worst_law.max(law);
        }
        check(
            &mut out,
            s,
            &format!("{sub} family commutes with its subgroup (100 samples)"),
            worst_comm < 1e-12,
            format!("worst residual {worst_comm:.2e}"),
        );
        check(
            &mut out,
            s,
            &format!("{sub} family stays in the rotation group"),
            worst_det < 1e-12,
            format!("worst |det - 1| {worst_det:.2e}"),
        );
        check(
            &mut out,
            s,
            &format!("{sub} family satisfies the one-parameter group law"),
            worst_law < 1e-12,
            format!("worst law residual {worst_law:.2e}"),
        );
    }
    out
}

fn random_angles(sub: Subgroup, rng: &mut impl Rng) -> AngleParameter {
    let vals: Vec<f64> = (0..sub.angle_arity())
        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();
    AngleParameter::new(sub, &vals).expect("arity by construction")
}

pub fn verify_boundaries() -> Vec<CheckResult> {
    let s = Section::Boundary;
    let mut out = Vec::new();
    let ah = angles::atan_half();
    let a2 = angles::atan_two();
    let pi = std::f64::consts::PI;

    let expected: [(Subgroup, Vec<AngleParameter>); 3] = [
        (
            Subgroup::T,
            vec![
                AngleParameter::one(a2 - pi),
                AngleParameter::one(-ah),
                AngleParameter::one(a2),
                AngleParameter::one(pi - ah),
            ],
        ),
        (
            Subgroup::D10,
            vec![
                AngleParameter::one(-pi / 2.0),
                AngleParameter::one(pi / 2.0),
            ],
        ),
        (
            Subgroup::D6,
            vec![
                AngleParameter::two(ah - pi, a2 - pi),
                AngleParameter::two(ah - pi, a2),
                AngleParameter::two(-a2, -ah),
                AngleParameter::two(-a2, pi - ah),
                AngleParameter::two(ah, a2 - pi),
                AngleParameter::two(ah, a2),
                AngleParameter::two(pi - a2, -ah),
                AngleParameter::two(pi - a2, pi - ah),
            ],
        ),
    ];

    for (sub, want) in expected {
        let fam = SchurFamily::get(sub);
        match fam.boundary_solutions() {
            Ok(sols) => {
                let count_ok = sols.len() == want.len();
                let values_ok = count_ok
                    && sols
                        .iter()
                        .zip(&want)
                        .all(|(a, b)| a.torus_distance(b) < 1e-9);
                check(
                    &mut out,
                    s,
                    &format!("{sub} boundary solution set matches closed forms"),
                    values_ok,
                    format!("{} solutions", sols.len()),
                );
                let mut worst_res = 0.0f64;
                let mut labels_ok = true;
                for sol in &sols {
                    worst_res = worst_res.max(fam.off_block_residual_at(sol).unwrap());
                    let (top, bottom) = fam.boundary_block_labels(sol).unwrap();
                    labels_ok &= matches!(
                        (top, bottom),
                        (IrrepLabel::T1, IrrepLabel::T2) | (IrrepLabel::T2, IrrepLabel::T1)
                    );
                }
                check(
                    &mut out,
                    s,
                    &format!("{sub} boundary residuals below 1e-10"),
                    worst_res < 1e-10,
                    format!("worst {worst_res:.2e}"),
                );
                check(
                    &mut out,
                    s,
                    &format!("{sub} boundary frames split the partner into T1 and T2"),
                    labels_ok,
                    String::new(),
                );
            }
            Err(e) => check(&mut out, s, &format!("{sub} boundary solve"), false, e.to_string()),
        }
    }
    out
}

/// Run the requested sections (all four when empty).
pub fn run_sections(sections: &[Section]) -> Result<Vec<CheckResult>> {
    let all = Section::ALL;
    let wanted: &[Section] = if sections.is_empty() { &all } else { sections };
    let mut out = Vec::new();
    for s in wanted {
        let mut results = match s {
            Section::Groups => verify_groups(),
            Section::Reduction => verify_reduction(),
            Section::Centralizer => verify_centralizers(),
            Section::Boundary => verify_boundaries(),
        };
        out.append(&mut results);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmatrix::GoldenMatrix;
    use crate::golden::GoldenNumber;

    #[test]
    fn all_sections_pass() {
        let results = run_sections(&[]).unwrap();
        let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "failed checks: {failed:#?}");
        assert!(results.len() > 30);
    }

    #[test]
    fn section_filter() {
        let results = run_sections(&[Section::Groups]).unwrap();
        assert!(results.iter().all(|r| r.section == Section::Groups));
    }

    #[test]
    fn corrupted_frame_fails_frame_check_by_name() {
        let mut entries = constants::frame_entries();
        entries.set(0, 0, GoldenNumber::from_parts(2, 1));
        let results =
            verify_reduction_with_frame(ScaledGoldenMatrix::new(entries, GoldenNumber::from_parts(4, 2)));
        let frame_check = results
            .iter()
            .find(|r| r.name.contains("frameCheck"))
            .expect("frameCheck result present");
        assert!(!frame_check.passed);
        let _ = GoldenMatrix::identity(2);
    }
}
