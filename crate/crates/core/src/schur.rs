//! Centralizer rotation families and their boundary angles.
//!
//! For each maximal subgroup the rotations commuting with the subgroup
//! representation form an explicit angle-parameterized family
//! `C * B(angles) * C^-1`, where `C` combines the reduction frame with the
//! subgroup reducer and `B` rotates the matched irrep planes. The boundary
//! angles are the points where the rotated frame also reduces the partner
//! icosahedral representation; they are found by a dense scan of the circle
//! (or torus) followed by derivative-free parabolic refinement of the
//! squared off-block residual, so the solver demonstrates the solution sets
//! are exhaustive instead of just confirming known roots.
//!
//! Angle convention for the two-angle family: the first angle rotates the
//! doubled 2D-irrep planes, the second the scalar pair. This is the
//! convention in which the published solution list and the worked
//! icosahedron-to-prism example are consistent with the explicit reducing
//! matrices.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{Matrix3, Matrix6};
use serde::{Deserialize, Serialize};

use crate::constants;
use crate::error::{Error, Result};
use crate::groups::{SignedPermMatrix, Subgroup};
use crate::reduction::{identify_irrep, reduce_rep, IrrepLabel, RepKind, SubgroupReducer};

/// Default residual tolerance for boundary solving.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Angular distance below which two solutions are considered the same.
pub const DEDUP_TOL: f64 = 1e-6;

const S1_STEP_DEG: f64 = 0.05;
const T2_STEP_DEG: f64 = 0.5;
const MINIMUM_THRESHOLD: f64 = 0.05;
const MAX_REFINE_SWEEPS: usize = 200;

/// Wrap an angle to the canonical interval (-pi, pi].
pub fn canonical_angle(x: f64) -> f64 {
    let mut a = x.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    if a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// One or two rotation angles on the parameter torus, stored canonically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleParameter(Vec<f64>);

impl AngleParameter {
    pub fn new(subgroup: Subgroup, values: &[f64]) -> Result<Self> {
        if values.len() != subgroup.angle_arity() {
            return Err(Error::ArityMismatch {
                subgroup: subgroup.name().into(),
                expected: subgroup.angle_arity(),
                got: values.len(),
            });
        }
        Ok(Self(values.iter().map(|&x| canonical_angle(x)).collect()))
    }

    pub fn one(value: f64) -> Self {
        Self(vec![canonical_angle(value)])
    }

    pub fn two(a: f64, b: f64) -> Self {
        Self(vec![canonical_angle(a), canonical_angle(b)])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Componentwise sum, wrapped.
    pub fn add(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| canonical_angle(a + b))
                .collect(),
        )
    }

    /// Scale by a path parameter. For t in [0,1] and canonical angles no
    /// wrap can occur, so the linear path stays within one chart.
    pub fn scale(&self, t: f64) -> Self {
        Self(self.0.iter().map(|&x| canonical_angle(t * x)).collect())
    }

    /// Max over components of wrapped angular distance.
    pub fn torus_distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| canonical_angle(a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Coefficient functions multiplying the constant basis matrices of a
/// centralizer family.
#[derive(Clone, Copy, Debug)]
enum Coeff {
    One,
    CosA,
    SinA,
    CosB,
    SinB,
}

impl Coeff {
    fn eval(self, angles: &[f64]) -> f64 {
        match self {
            Coeff::One => 1.0,
            Coeff::CosA => angles[0].cos(),
            Coeff::SinA => angles[0].sin(),
            Coeff::CosB => angles[1].cos(),
            Coeff::SinB => angles[1].sin(),
        }
    }
}

fn basis6(entries: &[(usize, usize, f64)]) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    for &(i, j, v) in entries {
        m[(i, j)] = v;
    }
    m
}

/// An angle-parameterized family of rotations commuting with one maximal
/// subgroup representation, together with its boundary data.
pub struct SchurFamily {
    subgroup: Subgroup,
    conjugator: Matrix6<f64>,
    frame: Matrix6<f64>,
    /// Block-form basis: `B(angles) = sum coeff_i * basis_i`.
    block_terms: Vec<(Coeff, Matrix6<f64>)>,
    /// Conjugated basis: `M(angles) = sum coeff_i * conjugated_i`.
    terms: Vec<(Coeff, Matrix6<f64>)>,
    subgroup_gens: [Matrix6<f64>; 2],
    partner_gens: [Matrix6<f64>; 2],
    partner_gens_int: [SignedPermMatrix; 2],
    /// Off-block component tables per partner generator: entry `[a*n+b]`
    /// holds the 18 off-block entries of `R^T U_a^T G U_b R`.
    off_tables: [Vec<[f64; 18]>; 2],
    boundary: OnceLock<Vec<AngleParameter>>,
}

impl SchurFamily {
    pub fn new(subgroup: Subgroup) -> Self {
        let frame = constants::frame_f64();
        let reducer = SubgroupReducer::for_subgroup(subgroup);
        let conjugator = frame * reducer.conjugator6();

        let block_terms: Vec<(Coeff, Matrix6<f64>)> = match subgroup {
            Subgroup::T => vec![
                (Coeff::CosA, Matrix6::identity()),
                (
                    Coeff::SinA,
                    basis6(&[
                        (0, 3, -1.0),
                        (1, 4, -1.0),
                        (2, 5, -1.0),
                        (3, 0, 1.0),
                        (4, 1, 1.0),
                        (5, 2, 1.0),
                    ]),
                ),
            ],
            Subgroup::D10 => vec![
                (
                    Coeff::One,
                    basis6(&[(1, 1, 1.0), (2, 2, 1.0), (4, 4, 1.0), (5, 5, 1.0)]),
                ),
                (Coeff::CosA, basis6(&[(0, 0, 1.0), (3, 3, 1.0)])),
                (Coeff::SinA, basis6(&[(3, 0, 1.0), (0, 3, -1.0)])),
            ],
            Subgroup::D6 => vec![
                (
                    Coeff::CosA,
                    basis6(&[(1, 1, 1.0), (2, 2, 1.0), (4, 4, 1.0), (5, 5, 1.0)]),
                ),
                (
                    Coeff::SinA,
                    basis6(&[(4, 1, 1.0), (5, 2, 1.0), (1, 4, -1.0), (2, 5, -1.0)]),
                ),
                (Coeff::CosB, basis6(&[(0, 0, 1.0), (3, 3, 1.0)])),
                (Coeff::SinB, basis6(&[(3, 0, 1.0), (0, 3, -1.0)])),
            ],
        };

        let terms: Vec<(Coeff, Matrix6<f64>)> = block_terms
            .iter()
            .map(|(c, b)| (*c, conjugator * b * conjugator.transpose()))
            .collect();

        let sub_gens = constants::subgroup_group(subgroup).generators.clone();
        let subgroup_gens = [sub_gens[0].to_matrix6(), sub_gens[1].to_matrix6()];
        let partner_gens_int = constants::partner_generators(subgroup);
        let partner_gens = [
            partner_gens_int[0].to_matrix6(),
            partner_gens_int[1].to_matrix6(),
        ];

        let n = terms.len();
        let mut off_tables = [vec![[0.0; 18]; n * n], vec![[0.0; 18]; n * n]];
        for (g_idx, g) in partner_gens.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let w =
                        frame.transpose() * terms[a].1.transpose() * g * terms[b].1 * frame;
                    let mut row = [0.0; 18];
                    let mut e = 0;
                    for i in 0..3 {
                        for j in 3..6 {
                            row[e] = w[(i, j)];
                            row[e + 1] = w[(j, i)];
                            e += 2;
                        }
                    }
                    off_tables[g_idx][a * n + b] = row;
                }
            }
        }

        Self {
            subgroup,
            conjugator,
            frame,
            block_terms,
            terms,
            subgroup_gens,
            partner_gens,
            partner_gens_int,
            off_tables,
            boundary: OnceLock::new(),
        }
    }

    /// Process-wide shared instance per subgroup (boundary solutions are
    /// solved at most once).
    pub fn get(subgroup: Subgroup) -> &'static SchurFamily {
        static T: OnceLock<SchurFamily> = OnceLock::new();
        static D10: OnceLock<SchurFamily> = OnceLock::new();
        static D6: OnceLock<SchurFamily> = OnceLock::new();
        let cell = match subgroup {
            Subgroup::T => &T,
            Subgroup::D10 => &D10,
            Subgroup::D6 => &D6,
        };
        cell.get_or_init(|| SchurFamily::new(subgroup))
    }

    pub fn subgroup(&self) -> Subgroup {
        self.subgroup
    }

    pub fn conjugator(&self) -> &Matrix6<f64> {
        &self.conjugator
    }

    /// The fixed reduction frame in double precision.
    pub fn frame(&self) -> &Matrix6<f64> {
        &self.frame
    }

    pub fn partner_generators_f64(&self) -> &[Matrix6<f64>; 2] {
        &self.partner_gens
    }

    pub fn partner_generators(&self) -> &[SignedPermMatrix; 2] {
        &self.partner_gens_int
    }

    pub fn subgroup_generators_f64(&self) -> &[Matrix6<f64>; 2] {
        &self.subgroup_gens
    }

    fn check_arity(&self, angles: &AngleParameter) -> Result<()> {
        if angles.arity() != self.subgroup.angle_arity() {
            return Err(Error::ArityMismatch {
                subgroup: self.subgroup.name().into(),
                expected: self.subgroup.angle_arity(),
                got: angles.arity(),
            });
        }
        Ok(())
    }

    /// The canonical block rotation before conjugation.
    pub fn block_form(&self, angles: &AngleParameter) -> Result<Matrix6<f64>> {
        self.check_arity(angles)?;
        Ok(sum_terms(&self.block_terms, angles.values()))
    }

    /// The centralizer rotation `C * B(angles) * C^-1`.
    pub fn evaluate(&self, angles: &AngleParameter) -> Result<Matrix6<f64>> {
        self.check_arity(angles)?;
        Ok(sum_terms(&self.terms, angles.values()))
    }

    /// Max-abs entry of `M g - g M` over the subgroup generators.
    pub fn commutation_residual(&self, angles: &AngleParameter) -> Result<f64> {
        let m = self.evaluate(angles)?;
        Ok(self
            .subgroup_gens
            .iter()
            .map(|g| (m * g - g * m).abs().max())
            .fold(0.0, f64::max))
    }

    /// Max-abs off-diagonal-block entry of the partner generators conjugated
    /// by the rotated frame `M(angles) * R`.
    pub fn off_block_residual_at(&self, angles: &AngleParameter) -> Result<f64> {
        self.check_arity(angles)?;
        Ok(self.off_residual_raw(angles.values()))
    }

    fn off_residual_raw(&self, angles: &[f64]) -> f64 {
        let lam = self.lambdas(angles);
        let n = self.terms.len();
        let mut worst = 0.0f64;
        for tbl in &self.off_tables {
            let mut acc = [0.0f64; 18];
            for (a, &la) in lam.iter().enumerate() {
                for (b, &lb) in lam.iter().enumerate() {
                    let c = la * lb;
                    let row = &tbl[a * n + b];
                    for (dst, src) in acc.iter_mut().zip(row.iter()) {
                        *dst += c * src;
                    }
                }
            }
            for v in acc {
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    /// Smooth refinement objective: sum of squared off-block entries.
    fn off_sum_squares(&self, angles: &[f64]) -> f64 {
        let lam = self.lambdas(angles);
        let n = self.terms.len();
        let mut total = 0.0f64;
        for tbl in &self.off_tables {
            let mut acc = [0.0f64; 18];
            for (a, &la) in lam.iter().enumerate() {
                for (b, &lb) in lam.iter().enumerate() {
                    let c = la * lb;
                    let row = &tbl[a * n + b];
                    for (dst, src) in acc.iter_mut().zip(row.iter()) {
                        *dst += c * src;
                    }
                }
            }
            total += acc.iter().map(|v| v * v).sum::<f64>();
        }
        total
    }

    fn lambdas(&self, angles: &[f64]) -> Vec<f64> {
        self.terms.iter().map(|(c, _)| c.eval(angles)).collect()
    }

    /// All boundary angles at the default tolerance, solved once and cached.
    pub fn boundary_solutions(&self) -> Result<Vec<AngleParameter>> {
        if let Some(sol) = self.boundary.get() {
            return Ok(sol.clone());
        }
        let sol = self.boundary_solve(BOUNDARY_TOL)?;
        Ok(self.boundary.get_or_init(|| sol).clone())
    }

    /// Dense scan plus local refinement for every zero of the off-block
    /// residual on the parameter circle or torus.
    pub fn boundary_solve(&self, tolerance: f64) -> Result<Vec<AngleParameter>> {
        self.boundary_solve_offset(tolerance, 0.0)
    }

    /// Same solver with the scan grid shifted; used to show the solution
    /// set is stable against grid placement.
    pub fn boundary_solve_offset(
        &self,
        tolerance: f64,
        grid_offset: f64,
    ) -> Result<Vec<AngleParameter>> {
        if !(tolerance > 0.0 && tolerance <= 1e-6) {
            return Err(Error::BadTolerance(tolerance));
        }
        let mut found: Vec<AngleParameter> = Vec::new();
        match self.subgroup.angle_arity() {
            1 => {
                let m = (360.0 / S1_STEP_DEG) as usize;
                let step = 2.0 * PI / m as f64;
                let f: Vec<f64> = (0..m)
                    .map(|i| self.off_residual_raw(&[-PI + grid_offset + i as f64 * step]))
                    .collect();
                for i in 0..m {
                    let v = f[i];
                    if v < MINIMUM_THRESHOLD && v <= f[(i + m - 1) % m] && v <= f[(i + 1) % m] {
                        let x = -PI + grid_offset + i as f64 * step;
                        let refined = self.refine_1d(x, step, tolerance)?;
                        push_dedup(&mut found, refined);
                    }
                }
            }
            _ => {
                let m = (360.0 / T2_STEP_DEG) as usize;
                let step = 2.0 * PI / m as f64;
                let mut f = vec![0.0f64; m * m];
                for i in 0..m {
                    let a = -PI + grid_offset + i as f64 * step;
                    for j in 0..m {
                        let b = -PI + grid_offset + j as f64 * step;
                        f[i * m + j] = self.off_residual_raw(&[a, b]);
                    }
                }
                for i in 0..m {
                    for j in 0..m {
                        let v = f[i * m + j];
                        if v >= MINIMUM_THRESHOLD {
                            continue;
                        }
                        let mut is_min = true;
                        'nb: for di in [m - 1, 0, 1] {
                            for dj in [m - 1, 0, 1] {
                                if di == 0 && dj == 0 {
                                    continue;
                                }
                                if f[((i + di) % m) * m + (j + dj) % m] < v {
                                    is_min = false;
                                    break 'nb;
                                }
                            }
                        }
                        if is_min {
                            let a = -PI + grid_offset + i as f64 * step;
                            let b = -PI + grid_offset + j as f64 * step;
                            let refined = self.refine_2d([a, b], step, tolerance)?;
                            push_dedup(&mut found, refined);
                        }
                    }
                }
            }
        }
        // Lexicographic sort with a tolerance on component ties, so that
        // refinement noise in a shared leading angle cannot reorder the list.
        found.sort_by(|x, y| {
            for (a, b) in x.values().iter().zip(y.values()) {
                if (a - b).abs() >= DEDUP_TOL {
                    return a.partial_cmp(b).expect("angles are finite");
                }
            }
            std::cmp::Ordering::Equal
        });
        Ok(found)
    }

    fn refine_1d(&self, seed: f64, h: f64, tolerance: f64) -> Result<AngleParameter> {
        let (x, _) = brent_min(|x| self.off_sum_squares(&[x]), seed - h, seed + h, 80);
        let residual = self.off_residual_raw(&[x]);
        if residual < tolerance {
            Ok(AngleParameter::one(x))
        } else {
            Err(Error::SolverFailure {
                seed: vec![seed],
                tolerance,
                best: residual,
            })
        }
    }

    fn refine_2d(&self, seed: [f64; 2], h: f64, tolerance: f64) -> Result<AngleParameter> {
        let mut x = seed;
        let mut width = h;
        for _ in 0..MAX_REFINE_SWEEPS {
            let (nx, _) = brent_min(
                |a| self.off_sum_squares(&[a, x[1]]),
                x[0] - width,
                x[0] + width,
                60,
            );
            let (ny, _) = brent_min(
                |b| self.off_sum_squares(&[nx, b]),
                x[1] - width,
                x[1] + width,
                60,
            );
            let moved = (nx - x[0]).abs().max((ny - x[1]).abs());
            x = [nx, ny];
            if self.off_residual_raw(&x) < tolerance && moved < 1e-12 {
                return Ok(AngleParameter::two(x[0], x[1]));
            }
            width = (moved * 4.0).max(1e-13);
        }
        let best = self.off_residual_raw(&x);
        if best < tolerance {
            return Ok(AngleParameter::two(x[0], x[1]));
        }
        Err(Error::SolverFailure {
            seed: seed.to_vec(),
            tolerance,
            best,
        })
    }

    /// The rotation at parameter `t` along the straight path to a boundary
    /// endpoint. The endpoint must be one of the solved boundary angles.
    pub fn rotation_path(&self, endpoint: &AngleParameter, t: f64) -> Result<Matrix6<f64>> {
        self.check_arity(endpoint)?;
        let sols = self.boundary_solutions()?;
        if !sols.iter().any(|s| s.torus_distance(endpoint) < DEDUP_TOL) {
            return Err(Error::NotABoundarySolution {
                subgroup: self.subgroup.name().into(),
                angles: endpoint.values().to_vec(),
            });
        }
        self.evaluate(&endpoint.scale(t))
    }

    /// Rotated frame `M(angles) * R`.
    pub fn rotated_frame(&self, rotation: &Matrix6<f64>) -> Matrix6<f64> {
        rotation * self.frame
    }

    /// Identify the two 3x3 blocks of the partner representation conjugated
    /// by the rotated frame at the given angles.
    pub fn boundary_block_labels(
        &self,
        angles: &AngleParameter,
    ) -> Result<(IrrepLabel, IrrepLabel)> {
        let rg = self.rotated_frame(&self.evaluate(angles)?);
        let d = reduce_rep(&rg, &self.partner_gens);
        let top: [Matrix3<f64>; 2] = [d.top[0], d.top[1]];
        let bottom: [Matrix3<f64>; 2] = [d.bottom[0], d.bottom[1]];
        Ok((
            identify_irrep(RepKind::Icosahedral, &top),
            identify_irrep(RepKind::Icosahedral, &bottom),
        ))
    }
}

fn sum_terms(terms: &[(Coeff, Matrix6<f64>)], angles: &[f64]) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    for (c, b) in terms {
        m += b * c.eval(angles);
    }
    m
}

fn push_dedup(found: &mut Vec<AngleParameter>, candidate: AngleParameter) {
    if !found
        .iter()
        .any(|s| s.torus_distance(&candidate) < DEDUP_TOL)
    {
        found.push(candidate);
    }
}

/// Brent's parabolic-interpolation minimizer on a bracketing interval.
/// Returns the minimizer and its value.
fn brent_min(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, max_iter: usize) -> (f64, f64) {
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x = lo + GOLD * (hi - lo);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..max_iter {
        let xm = 0.5 * (lo + hi);
        let tol1 = 1e-14 * x.abs() + 1e-15;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (hi - lo) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            // Parabolic fit through (v, fv), (w, fw), (x, fx).
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_old = e;
            e = d;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (lo - x) && p < q * (hi - x) {
                d = p / q;
                let u = x + d;
                if u - lo < tol2 || hi - u < tol2 {
                    d = if xm > x { tol1 } else { -tol1 };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < xm { hi - x } else { lo - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                hi = x;
            } else {
                lo = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                lo = u;
            } else {
                hi = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

/// Closed-form values used throughout the boundary data.
pub mod angles {
    /// atan(1/2)
    pub fn atan_half() -> f64 {
        0.5f64.atan()
    }

    /// atan(2)
    pub fn atan_two() -> f64 {
        2.0f64.atan()
    }
}
