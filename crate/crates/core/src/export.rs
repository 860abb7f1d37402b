//! Serialization of patches, arrays and reports: CSV, JSON, XYZ and SVG.
//!
//! CSV and XYZ coordinates are printed with 15 significant digits in a
//! fixed scientific format, and all orderings are deterministic, so
//! identical runs produce byte-identical files. JSON documents keep full
//! f64 precision so a written patch re-reads to exactly the in-memory
//! values.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::constants;
use crate::groups::{MatrixGroup, Subgroup};
use crate::lattice::LatticeKind;
use crate::model_set::{CollisionEvent, ModelSetPatch, PointArray};
use crate::schur::AngleParameter;

/// Fixed 15-significant-digit form used for text outputs.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.14e}")
}

/// Round to 15 significant digits (used where reports promise exactly that).
pub fn quantize15(x: f64) -> f64 {
    fmt_f64(x).parse().expect("formatted float reparses")
}

// ---------------------------------------------------------------------------
// JSON documents
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatchDocument {
    pub kind: String,
    pub subgroup: Subgroup,
    pub endpoint: Vec<f64>,
    pub t: f64,
    pub radius_max: f64,
    pub lattice: LatticeKind,
    pub point_count: usize,
    pub boundary_count: usize,
    pub window_diameter: f64,
    pub collisions: Vec<CollisionEvent>,
    pub points: Vec<[f64; 3]>,
    pub preimages: Vec<[i64; 6]>,
    pub boundary_flags: Vec<bool>,
}

impl PatchDocument {
    pub fn from_patch(p: &ModelSetPatch) -> Self {
        Self {
            kind: "model-set".into(),
            subgroup: p.subgroup,
            endpoint: p.endpoint.values().to_vec(),
            t: p.t,
            radius_max: p.radius_max,
            lattice: p.lattice,
            point_count: p.points.len(),
            boundary_count: p.boundary_count(),
            window_diameter: p.window_diameter,
            collisions: p.collisions.clone(),
            points: p.points.iter().map(|q| [q.x, q.y, q.z]).collect(),
            preimages: p.preimages.clone(),
            boundary_flags: p.boundary_flags.clone(),
        }
    }

    pub fn into_patch(self) -> ModelSetPatch {
        ModelSetPatch {
            subgroup: self.subgroup,
            endpoint: AngleParameter::new(self.subgroup, &self.endpoint)
                .expect("document endpoint arity"),
            t: self.t,
            radius_max: self.radius_max,
            lattice: self.lattice,
            points: self
                .points
                .iter()
                .map(|&[x, y, z]| Vector3::new(x, y, z))
                .collect(),
            preimages: self.preimages,
            boundary_flags: self.boundary_flags,
            collisions: self.collisions,
            window_diameter: self.window_diameter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrayDocument {
    pub kind: String,
    pub subgroup: Subgroup,
    pub endpoint: Vec<f64>,
    pub t: f64,
    pub seed: Option<[i64; 6]>,
    pub point_count: usize,
    pub collisions: Vec<CollisionEvent>,
    pub points: Vec<[f64; 3]>,
    pub preimages: Vec<[i64; 6]>,
}

impl ArrayDocument {
    pub fn from_array(a: &PointArray) -> Self {
        Self {
            kind: "point-array".into(),
            subgroup: a.subgroup,
            endpoint: a.endpoint.values().to_vec(),
            t: a.t,
            seed: a.seed,
            point_count: a.points.len(),
            collisions: a.collisions.clone(),
            points: a.points.iter().map(|q| [q.x, q.y, q.z]).collect(),
            preimages: a.preimages.clone(),
        }
    }
}

/// Positions of each orbit point across a parameter sweep; row `i` follows
/// preimage `i` through every `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryDocument {
    pub kind: String,
    pub subgroup: Subgroup,
    pub endpoint: Vec<f64>,
    pub seed: Option<[i64; 6]>,
    pub ts: Vec<f64>,
    pub preimages: Vec<[i64; 6]>,
    pub trajectories: Vec<Vec<[f64; 3]>>,
}

impl TrajectoryDocument {
    pub fn from_sweep(arrays: &[PointArray]) -> Self {
        assert!(!arrays.is_empty());
        let first = &arrays[0];
        let trajectories = (0..first.points.len())
            .map(|i| {
                arrays
                    .iter()
                    .map(|a| [a.points[i].x, a.points[i].y, a.points[i].z])
                    .collect()
            })
            .collect();
        Self {
            kind: "trajectory".into(),
            subgroup: first.subgroup,
            endpoint: first.endpoint.values().to_vec(),
            seed: first.seed,
            ts: arrays.iter().map(|a| a.t).collect(),
            preimages: first.preimages.clone(),
            trajectories,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySolutionEntry {
    /// Angles rounded to 15 significant digits.
    pub angles: Vec<f64>,
    pub off_block_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub kind: String,
    pub subgroup: Subgroup,
    pub solution_count: usize,
    pub solutions: Vec<BoundarySolutionEntry>,
}

impl BoundaryReport {
    pub fn new(
        subgroup: Subgroup,
        solutions: &[(AngleParameter, f64)],
    ) -> Self {
        Self {
            kind: "boundary-angles".into(),
            subgroup,
            solution_count: solutions.len(),
            solutions: solutions
                .iter()
                .map(|(a, r)| BoundarySolutionEntry {
                    angles: a.values().iter().map(|&x| quantize15(x)).collect(),
                    off_block_residual: quantize15(*r),
                })
                .collect(),
        }
    }
}

/// Source-of-truth tables exported for external audit.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsDocument {
    pub frame_entries: Vec<Vec<String>>,
    pub frame_norm_squared: String,
    pub generators: Vec<GeneratorSet>,
    pub block_tables: Vec<BlockTable>,
    pub float_reducers: Vec<FloatReducer>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSet {
    pub label: String,
    pub generators: Vec<Vec<i8>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockTable {
    pub name: String,
    /// Entries doubled so they are exact golden strings.
    pub doubled_entries: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FloatReducer {
    pub name: String,
    pub rows: Vec<[f64; 3]>,
}

impl ConstantsDocument {
    pub fn collect() -> Self {
        let frame = constants::frame_matrix();
        let gset = |label: &str, g: &MatrixGroup| GeneratorSet {
            label: label.into(),
            generators: g.generators.iter().map(|m| m.flat().to_vec()).collect(),
        };
        let btab = |name: &str, blocks: &[crate::gmatrix::ScaledGoldenMatrix]| BlockTable {
            name: name.into(),
            doubled_entries: blocks
                .iter()
                .map(|b| {
                    (0..3)
                        .map(|i| {
                            (0..3)
                                .map(|j| b.entries.get(i, j).canonical_string())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        let fred = |name: &str, m: &Matrix3<f64>| FloatReducer {
            name: name.into(),
            rows: (0..3)
                .map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]])
                .collect::<Vec<_>>(),
        };
        Self {
            frame_entries: (0..6)
                .map(|i| {
                    (0..6)
                        .map(|j| frame.entries.get(i, j).canonical_string())
                        .collect()
                })
                .collect(),
            frame_norm_squared: frame.norm_squared.canonical_string(),
            generators: vec![
                gset("I", constants::icosa_group()),
                gset("I_T", constants::partner_group(Subgroup::T)),
                gset("I_D10", constants::partner_group(Subgroup::D10)),
                gset("I_D6", constants::partner_group(Subgroup::D6)),
                gset("T", constants::tetra_group()),
                gset("D10", constants::d10_group()),
                gset("D6", constants::d6_group()),
            ],
            block_tables: vec![
                btab("rho3", &constants::rho3_blocks()),
                btab("rho3_prime", &constants::rho3_prime_blocks()),
                btab("gamma1", &constants::gamma1_blocks()),
                btab("gamma2", &constants::gamma2_blocks()),
                btab("d10_top", &constants::d10_top_blocks()),
                btab("d10_bottom", &constants::d10_bottom_blocks()),
                btab("d6_top", &constants::d6_top_blocks()),
                btab("d6_bottom", &constants::d6_bottom_blocks()),
                btab(
                    "tetra_intertwiner_times4",
                    std::slice::from_ref(constants::tetra_intertwiner()),
                ),
            ],
            float_reducers: vec![
                fred("d10_reducer_top", &constants::d10_reducer_top()),
                fred("d10_reducer_bottom", &constants::d10_reducer_bottom()),
                fred("d6_reducer_top", &constants::d6_reducer_top()),
                fred("d6_reducer_bottom", &constants::d6_reducer_bottom()),
            ],
        }
    }
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

const CSV_HEADER: &str = "x,y,z,v1,v2,v3,v4,v5,v6,boundary_flag";

fn csv_rows(
    points: &[Vector3<f64>],
    preimages: &[[i64; 6]],
    boundary: Option<&[bool]>,
) -> String {
    let mut out = String::with_capacity(64 * points.len() + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (i, (p, v)) in points.iter().zip(preimages).enumerate() {
        let flag = boundary.map_or(false, |b| b[i]);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(p.z),
            v[0],
            v[1],
            v[2],
            v[3],
            v[4],
            v[5],
            u8::from(flag)
        ));
    }
    out
}

pub fn patch_to_csv(p: &ModelSetPatch) -> String {
    csv_rows(&p.points, &p.preimages, Some(&p.boundary_flags))
}

pub fn array_to_csv(a: &PointArray) -> String {
    csv_rows(&a.points, &a.preimages, None)
}

/// XYZ chemical format; every point is written as a carbon atom so any
/// molecular viewer renders the patch.
pub fn points_to_xyz(points: &[Vector3<f64>], comment: &str) -> String {
    let mut out = format!("{}\n{}\n", points.len(), comment);
    for p in points {
        out.push_str(&format!(
            "C {} {} {}\n",
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(p.z)
        ));
    }
    out
}

/// Axis choices for the SVG orthographic projection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ViewAxis {
    X,
    Y,
    Z,
    /// The fixed symmetry axis of the active subgroup.
    Symmetry,
}

impl ViewAxis {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Some(ViewAxis::X),
            "y" => Some(ViewAxis::Y),
            "z" => Some(ViewAxis::Z),
            "sym" | "symmetry" => Some(ViewAxis::Symmetry),
            _ => None,
        }
    }

    pub fn direction(self, subgroup: Subgroup) -> Vector3<f64> {
        match self {
            ViewAxis::X => Vector3::x(),
            ViewAxis::Y => Vector3::y(),
            ViewAxis::Z => Vector3::z(),
            ViewAxis::Symmetry => symmetry_axis(subgroup),
        }
    }
}

/// Unit rotation axis of the subgroup's non-involutive generator in the
/// physical-space block.
pub fn symmetry_axis(subgroup: Subgroup) -> Vector3<f64> {
    let block = match subgroup {
        Subgroup::T => constants::gamma1_blocks()[1].to_matrix3(),
        Subgroup::D10 => constants::d10_top_blocks()[1].to_matrix3(),
        Subgroup::D6 => constants::d6_top_blocks()[1].to_matrix3(),
    };
    rotation_axis(&block)
}

fn rotation_axis(r: &Matrix3<f64>) -> Vector3<f64> {
    // For a proper rotation with angle != pi the antisymmetric part carries
    // the axis.
    let axis = Vector3::new(
        r[(2, 1)] - r[(1, 2)],
        r[(0, 2)] - r[(2, 0)],
        r[(1, 0)] - r[(0, 1)],
    );
    let n = axis.norm();
    assert!(n > 1e-9, "rotation angle too close to pi for axis extraction");
    axis / n
}

/// Render points as an orthographic SVG along `axis`, depth-sorted, with
/// boundary-flagged points drawn in an outlined style.
pub fn points_to_svg(
    points: &[Vector3<f64>],
    boundary: Option<&[bool]>,
    axis: &Vector3<f64>,
    title: &str,
) -> String {
    let w = axis.normalize();
    let mut seed = Vector3::x();
    if w.dot(&seed).abs() > 0.9 {
        seed = Vector3::y();
    }
    let u = (seed - w * w.dot(&seed)).normalize();
    let v = w.cross(&u);

    let mut proj: Vec<(f64, f64, f64, bool)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (
                p.dot(&u),
                p.dot(&v),
                p.dot(&w),
                boundary.map_or(false, |b| b[i]),
            )
        })
        .collect();
    // Back to front, ties broken by plane coordinates for determinism.
    proj.sort_by(|a, b| {
        (a.2, a.0, a.1)
            .partial_cmp(&(b.2, b.0, b.1))
            .expect("finite coordinates")
    });

    let extent = proj
        .iter()
        .flat_map(|&(x, y, _, _)| [x.abs(), y.abs()])
        .fold(1e-6f64, f64::max);
    let size = 640.0;
    let margin = 24.0;
    let scale = (size / 2.0 - margin) / extent;
    let depth_min = proj.first().map_or(0.0, |p| p.2);
    let depth_max = proj.last().map_or(1.0, |p| p.2);
    let depth_span = (depth_max - depth_min).max(1e-9);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n<title>{title}</title>\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    ));
    for &(x, y, d, flagged) in &proj {
        let cx = size / 2.0 + x * scale;
        let cy = size / 2.0 - y * scale;
        let rel = (d - depth_min) / depth_span;
        let r = 3.0 + 3.0 * rel;
        let shade = (200.0 - 150.0 * rel) as u8;
        if flagged {
            svg.push_str(&format!(
                "<circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"{r:.4}\" fill=\"none\" \
                 stroke=\"rgb(180,30,30)\" stroke-width=\"1.5\"/>\n"
            ));
        } else {
            svg.push_str(&format!(
                "<circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"{r:.4}\" \
                 fill=\"rgb({shade},{shade},{shade})\" stroke=\"black\" stroke-width=\"0.4\"/>\n"
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}
