//! Block decomposition of the 6D representations and identification of the
//! resulting 3D blocks against character data.
//!
//! Two tracks coexist. Conjugation by the golden frame stays exact: the
//! normalization square root cancels, so the off-diagonal blocks of a
//! reduced representation are exactly zero golden numbers. Conjugation by
//! rotated frames or by the radical-valued subgroup reducers runs in f64
//! with a 1e-12 tolerance.

use nalgebra::{Matrix2, Matrix3, Matrix6, SMatrix};

use crate::constants;
use crate::error::{Error, Result};
use crate::gmatrix::{GoldenMatrix, ScaledGoldenMatrix};
use crate::golden::{GoldenNumber, TAU_F64};
use crate::groups::{SignedPermMatrix, Subgroup};

/// Tolerance for floating-track matrix identities.
pub const FLOAT_TOL: f64 = 1e-12;

/// 3x6 projection operator type.
pub type Projection = SMatrix<f64, 3, 6>;

/// The 6D orthogonal frame whose column blocks span the physical and
/// orthogonal spaces. Its transpose is its inverse up to the normalization
/// scalar, which is what makes the projection rows of the inverse available
/// without any matrix inversion.
#[derive(Clone, Debug)]
pub struct ReductionFrame {
    matrix: ScaledGoldenMatrix,
    float: Matrix6<f64>,
}

impl ReductionFrame {
    pub fn new(matrix: ScaledGoldenMatrix) -> Result<Self> {
        if !matrix.frame_check() {
            return Err(Error::ConstantTable("frameCheck(R) failed".into()));
        }
        let float = matrix.to_matrix6();
        Ok(Self { matrix, float })
    }

    /// The canonical frame.
    pub fn standard() -> &'static ReductionFrame {
        static F: std::sync::OnceLock<ReductionFrame> = std::sync::OnceLock::new();
        F.get_or_init(|| {
            ReductionFrame::new(constants::frame_matrix().clone()).expect("canonical frame")
        })
    }

    pub fn golden(&self) -> &ScaledGoldenMatrix {
        &self.matrix
    }

    pub fn to_f64(&self) -> Matrix6<f64> {
        self.float
    }

    /// Rows 1-3 of the inverse: the physical-space projection.
    pub fn parallel_rows(&self) -> Projection {
        projection_rows(&self.float).0
    }

    /// Rows 4-6 of the inverse: the orthogonal-space projection.
    pub fn perp_rows(&self) -> Projection {
        projection_rows(&self.float).1
    }

    /// Exact conjugation of signed-permutation generators.
    pub fn reduce_exact(&self, generators: &[SignedPermMatrix]) -> ExactBlockDecomposition {
        let conjugated: Vec<GoldenMatrix> = generators
            .iter()
            .map(|g| {
                self.matrix
                    .conjugate(&signed_perm_to_golden(g))
                    .expect("frame passed frameCheck at construction")
            })
            .collect();
        ExactBlockDecomposition::from_conjugated(conjugated)
    }
}

/// Split an orthogonal 6x6 frame into the two 3x6 projection row blocks of
/// its inverse (= transpose).
pub fn projection_rows(frame: &Matrix6<f64>) -> (Projection, Projection) {
    let inv = frame.transpose();
    (
        inv.fixed_view::<3, 6>(0, 0).into_owned(),
        inv.fixed_view::<3, 6>(3, 0).into_owned(),
    )
}

fn signed_perm_to_golden(m: &SignedPermMatrix) -> GoldenMatrix {
    GoldenMatrix::from_rows(
        m.0.iter()
            .map(|row| {
                row.iter()
                    .map(|&e| GoldenNumber::from_int(i64::from(e)))
                    .collect()
            })
            .collect(),
    )
}

/// Exact-track decomposition: per-generator golden blocks.
#[derive(Clone)]
pub struct ExactBlockDecomposition {
    pub top: Vec<GoldenMatrix>,
    pub bottom: Vec<GoldenMatrix>,
    pub off_blocks_zero: bool,
}

impl ExactBlockDecomposition {
    fn from_conjugated(conjugated: Vec<GoldenMatrix>) -> Self {
        let mut top = Vec::with_capacity(conjugated.len());
        let mut bottom = Vec::with_capacity(conjugated.len());
        let mut off_zero = true;
        for k in &conjugated {
            off_zero &= k.block(0, 3, 3, 3).is_zero() && k.block(3, 0, 3, 3).is_zero();
            top.push(k.block(0, 0, 3, 3));
            bottom.push(k.block(3, 3, 3, 3));
        }
        Self {
            top,
            bottom,
            off_blocks_zero: off_zero,
        }
    }

    /// Compare a block against a table entry stored as `entries / 2`.
    pub fn block_equals_table(block: &GoldenMatrix, table: &ScaledGoldenMatrix) -> bool {
        // Tables carry normSquared = 4, i.e. the represented matrix is
        // entries/2; scale the exact block by 2 for an entry-wise razor.
        assert!(
            table.norm_squared == GoldenNumber::from_int(4),
            "table normalization must be 4"
        );
        block.scale(&GoldenNumber::from_int(2)) == table.entries
    }

    pub fn to_float(&self) -> BlockDecomposition {
        BlockDecomposition {
            top: self.top.iter().map(golden3_to_f64).collect(),
            bottom: self.bottom.iter().map(golden3_to_f64).collect(),
            off_block_residual: if self.off_blocks_zero { 0.0 } else { f64::NAN },
        }
    }
}

fn golden3_to_f64(m: &GoldenMatrix) -> Matrix3<f64> {
    Matrix3::from_row_iterator(m.to_f64_vec())
}

/// Floating-track decomposition of a generator list under a frame.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub top: Vec<Matrix3<f64>>,
    pub bottom: Vec<Matrix3<f64>>,
    /// Max absolute off-diagonal-block entry over all conjugated generators.
    pub off_block_residual: f64,
}

/// Conjugate every generator by the frame and split into 3x3 blocks.
pub fn reduce_rep(frame: &Matrix6<f64>, generators: &[Matrix6<f64>]) -> BlockDecomposition {
    let inv = frame.transpose();
    let mut top = Vec::with_capacity(generators.len());
    let mut bottom = Vec::with_capacity(generators.len());
    let mut residual = 0.0f64;
    for g in generators {
        let k = inv * g * frame;
        for i in 0..3 {
            for j in 3..6 {
                residual = residual.max(k[(i, j)].abs()).max(k[(j, i)].abs());
            }
        }
        top.push(k.fixed_view::<3, 3>(0, 0).into_owned());
        bottom.push(k.fixed_view::<3, 3>(3, 3).into_owned());
    }
    BlockDecomposition {
        top,
        bottom,
        off_block_residual: residual,
    }
}

/// Which abstract group a block is a representation of; fixes which
/// generator products carry the identifying characters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepKind {
    Icosahedral,
    Tetrahedral,
    DihedralTen,
    DihedralSix,
}

impl RepKind {
    pub fn for_subgroup(sub: Subgroup) -> Self {
        match sub {
            Subgroup::T => RepKind::Tetrahedral,
            Subgroup::D10 => RepKind::DihedralTen,
            Subgroup::D6 => RepKind::DihedralSix,
        }
    }
}

/// Identification labels for 3D blocks (and 2D blocks after subgroup
/// reduction).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IrrepLabel {
    /// Icosahedral 3D irrep with trace tau on the five-fold class.
    T1,
    /// Icosahedral 3D irrep with trace 1-tau on the five-fold class.
    T2,
    /// The faithful 3D irrep of the tetrahedral group.
    TetraT,
    A2E1,
    A2E2,
    A2E,
    E1,
    E2,
    E,
    Unidentified,
}

fn matrix_order3(m: &Matrix3<f64>, tol: f64) -> Option<u32> {
    let mut p = *m;
    for k in 1..=10 {
        if (p - Matrix3::identity()).abs().max() < tol {
            return Some(k);
        }
        p *= m;
    }
    None
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() < tol
}

/// Identify a 3D block from the ordered generator images, by element orders
/// and traces. Tolerance 1e-9 on the floating track.
pub fn identify_irrep(kind: RepKind, gen_blocks: &[Matrix3<f64>; 2]) -> IrrepLabel {
    let tol = 1e-9;
    let tau = TAU_F64;
    let (b1, b2) = (&gen_blocks[0], &gen_blocks[1]);
    let (o1, o2) = match (matrix_order3(b1, tol), matrix_order3(b2, tol)) {
        (Some(a), Some(b)) => (a, b),
        _ => return IrrepLabel::Unidentified,
    };
    match kind {
        RepKind::Icosahedral => {
            if (o1, o2) != (2, 3) {
                return IrrepLabel::Unidentified;
            }
            let five = b1 * b2;
            let tr = five.trace();
            if close(tr, tau, tol) {
                IrrepLabel::T1
            } else if close(tr, 1.0 - tau, tol) {
                IrrepLabel::T2
            } else {
                IrrepLabel::Unidentified
            }
        }
        RepKind::Tetrahedral => {
            if (o1, o2) == (2, 3) && close(b1.trace(), -1.0, tol) && close(b2.trace(), 0.0, tol) {
                IrrepLabel::TetraT
            } else {
                IrrepLabel::Unidentified
            }
        }
        RepKind::DihedralTen => {
            if (o1, o2) != (2, 5) {
                return IrrepLabel::Unidentified;
            }
            let tr = b2.trace();
            if close(tr, tau, tol) {
                // A2 contributes 1, the plane contributes tau - 1.
                IrrepLabel::A2E1
            } else if close(tr, 1.0 - tau, tol) {
                IrrepLabel::A2E2
            } else {
                IrrepLabel::Unidentified
            }
        }
        RepKind::DihedralSix => {
            if (o1, o2) == (2, 3) && close(b1.trace(), -1.0, tol) && close(b2.trace(), 0.0, tol) {
                IrrepLabel::A2E
            } else {
                IrrepLabel::Unidentified
            }
        }
    }
}

fn matrix_order2(m: &Matrix2<f64>, tol: f64) -> Option<u32> {
    let mut p = *m;
    for k in 1..=10 {
        if (p - Matrix2::identity()).abs().max() < tol {
            return Some(k);
        }
        p *= m;
    }
    None
}

/// Identify the 2x2 plane left after splitting off the sign character.
pub fn identify_e_block(kind: RepKind, gen_blocks: &[Matrix2<f64>; 2]) -> IrrepLabel {
    let tol = 1e-9;
    let tau = TAU_F64;
    let b2 = &gen_blocks[1];
    match kind {
        RepKind::DihedralTen => match matrix_order2(b2, tol) {
            Some(5) if close(b2.trace(), tau - 1.0, tol) => IrrepLabel::E1,
            Some(5) if close(b2.trace(), -tau, tol) => IrrepLabel::E2,
            _ => IrrepLabel::Unidentified,
        },
        RepKind::DihedralSix => match matrix_order2(b2, tol) {
            Some(3) if close(b2.trace(), -1.0, tol) => IrrepLabel::E,
            _ => IrrepLabel::Unidentified,
        },
        _ => IrrepLabel::Unidentified,
    }
}

/// The canonical block pattern a subgroup reducer must produce.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReducerPattern {
    /// Both 3x3 blocks become the same matrix (tetrahedral case).
    EqualBlocks,
    /// Each 3x3 block splits as scalar plus 2x2 (dihedral cases).
    ScalarPlusTwo,
}

/// Per-subgroup change of basis inside the two 3D blocks.
#[derive(Clone, Debug)]
pub struct SubgroupReducer {
    pub subgroup: Option<Subgroup>,
    pub top: Matrix3<f64>,
    pub bottom: Matrix3<f64>,
    pub pattern: Option<ReducerPattern>,
}

impl SubgroupReducer {
    pub fn for_subgroup(sub: Subgroup) -> Self {
        match sub {
            Subgroup::T => Self {
                subgroup: Some(sub),
                top: Matrix3::identity(),
                bottom: constants::tetra_intertwiner().to_matrix3(),
                pattern: Some(ReducerPattern::EqualBlocks),
            },
            Subgroup::D10 => Self {
                subgroup: Some(sub),
                top: constants::d10_reducer_top(),
                bottom: constants::d10_reducer_bottom(),
                pattern: Some(ReducerPattern::ScalarPlusTwo),
            },
            Subgroup::D6 => Self {
                subgroup: Some(sub),
                top: constants::d6_reducer_top(),
                bottom: constants::d6_reducer_bottom(),
                pattern: Some(ReducerPattern::ScalarPlusTwo),
            },
        }
    }

    pub fn identity() -> Self {
        Self {
            subgroup: None,
            top: Matrix3::identity(),
            bottom: Matrix3::identity(),
            pattern: None,
        }
    }

    /// The 6x6 conjugator combining both blocks.
    pub fn conjugator6(&self) -> Matrix6<f64> {
        constants::block_diag(&self.top, &self.bottom)
    }

    /// Conjugate both block lists and verify the canonical pattern.
    pub fn apply(&self, decomposition: &BlockDecomposition) -> Result<BlockDecomposition> {
        let conj = |p: &Matrix3<f64>, b: &Matrix3<f64>| p.transpose() * b * p;
        let top: Vec<_> = decomposition.top.iter().map(|b| conj(&self.top, b)).collect();
        let bottom: Vec<_> = decomposition
            .bottom
            .iter()
            .map(|b| conj(&self.bottom, b))
            .collect();

        if let Some(pattern) = self.pattern {
            let mut worst = 0.0f64;
            match pattern {
                ReducerPattern::EqualBlocks => {
                    for (a, b) in top.iter().zip(&bottom) {
                        worst = worst.max((a - b).abs().max());
                    }
                }
                ReducerPattern::ScalarPlusTwo => {
                    for b in top.iter().chain(&bottom) {
                        for k in 1..3 {
                            worst = worst.max(b[(0, k)].abs()).max(b[(k, 0)].abs());
                        }
                    }
                }
            }
            if worst > FLOAT_TOL {
                return Err(Error::ConstantTable(format!(
                    "subgroup reducer pattern violated by {worst:e}"
                )));
            }
        }

        Ok(BlockDecomposition {
            top,
            bottom,
            off_block_residual: decomposition.off_block_residual,
        })
    }
}

/// Tolerance-based closure of a 3x3 float matrix group.
pub fn closure_3x3(
    generators: &[Matrix3<f64>],
    cap: usize,
    tol: f64,
) -> Result<Vec<Matrix3<f64>>> {
    let mut elems: Vec<Matrix3<f64>> = vec![Matrix3::identity()];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for a in &frontier {
            for g in generators {
                let c = a * g;
                if !elems.iter().any(|e| (e - c).abs().max() < tol) {
                    if elems.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    elems.push(c);
                    fresh.push(c);
                }
            }
        }
        frontier = fresh;
    }
    Ok(elems)
}
