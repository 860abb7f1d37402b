//! Canonical matrix tables: group generators, the 6D reduction frame, the
//! 3D representation blocks and the subgroup reducing matrices.
//!
//! Everything expressible in Q(tau) is stored exactly; the reducing matrices
//! whose entries involve radicals outside the golden field (square roots of
//! golden numbers, 1/sqrt(3)) live on the floating track and are built from
//! f64 formulas rather than decimal literals.
//!
//! Each table is validated once at first use: generator matrices must be
//! signed permutations, closures must reach the expected order and satisfy
//! the expected presentation, and the frames must pass `frame_check`.
//! A transcription error here panics at startup rather than corrupting
//! results downstream.

use std::sync::OnceLock;

use nalgebra::{Matrix3, Matrix6};

use crate::gmatrix::{GoldenMatrix, ScaledGoldenMatrix};
use crate::golden::{GoldenNumber, TAU_F64};
use crate::groups::{GroupTag, MatrixGroup, SignedPermMatrix, Subgroup};

fn spm(rows: [[i8; 6]; 6]) -> SignedPermMatrix {
    SignedPermMatrix::new(rows).expect("generator table entry is not a signed permutation")
}

/// Generators of the icosahedral representation: a two-fold and a three-fold
/// rotation with `g2^2 = g3^3 = (g2 g3)^5 = e`.
pub fn icosa_generators() -> [SignedPermMatrix; 2] {
    [
        spm([
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0],
            [0, 0, -1, 0, 0, 0],
            [0, 0, 0, -1, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
        ]),
        spm([
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 1, 0, 0],
            [0, -1, 0, 0, 0, 0],
            [0, 0, -1, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0],
        ]),
    ]
}

/// Tetrahedral subgroup generators (two-fold, three-fold; relations 2,3,3).
/// The two-fold is the icosahedral g2.
pub fn tetra_generators() -> [SignedPermMatrix; 2] {
    [
        icosa_generators()[0],
        spm([
            [0, 1, 0, 0, 0, 0],
            [0, 0, 0, -1, 0, 0],
            [0, 0, 0, 0, 0, -1],
            [-1, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, -1, 0],
        ]),
    ]
}

/// Order-10 dihedral generators (two-fold, five-fold; relations 2,5,2).
pub fn d10_generators() -> [SignedPermMatrix; 2] {
    [
        spm([
            [0, 0, 0, 0, 0, -1],
            [0, -1, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, -1, 0],
            [-1, 0, 0, 0, 0, 0],
        ]),
        spm([
            [0, 0, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, -1, 0],
            [-1, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0],
        ]),
    ]
}

/// Order-6 dihedral generators (two-fold, three-fold; relations 2,3,2).
/// The two-fold matches the D10 two-fold, the three-fold is the icosahedral g3.
pub fn d6_generators() -> [SignedPermMatrix; 2] {
    [d10_generators()[0], icosa_generators()[1]]
}

/// Generators of the partner icosahedral representation that shares the
/// given maximal subgroup with the principal representation.
pub fn partner_generators(sub: Subgroup) -> [SignedPermMatrix; 2] {
    match sub {
        Subgroup::T => [
            spm([
                [0, 0, 0, -1, 0, 0],
                [0, 0, 0, 0, 0, -1],
                [0, 0, -1, 0, 0, 0],
                [-1, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, -1, 0],
                [0, -1, 0, 0, 0, 0],
            ]),
            spm([
                [0, 0, 0, -1, 0, 0],
                [0, 0, 0, 0, -1, 0],
                [0, -1, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 1],
                [0, 0, 1, 0, 0, 0],
                [-1, 0, 0, 0, 0, 0],
            ]),
        ],
        Subgroup::D10 => [
            spm([
                [0, 0, 0, 0, -1, 0],
                [0, 0, 0, 1, 0, 0],
                [0, 0, -1, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [-1, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, -1],
            ]),
            spm([
                [0, 0, 0, 0, -1, 0],
                [0, 0, -1, 0, 0, 0],
                [0, 0, 0, 0, 0, 1],
                [1, 0, 0, 0, 0, 0],
                [0, 0, 0, -1, 0, 0],
                [0, -1, 0, 0, 0, 0],
            ]),
        ],
        Subgroup::D6 => [
            spm([
                [0, 0, -1, 0, 0, 0],
                [0, 0, 0, 0, 0, -1],
                [-1, 0, 0, 0, 0, 0],
                [0, 0, 0, -1, 0, 0],
                [0, 0, 0, 0, -1, 0],
                [0, -1, 0, 0, 0, 0],
            ]),
            spm([
                [0, 0, -1, 0, 0, 0],
                [0, 0, 0, 0, 1, 0],
                [0, 0, 0, 0, 0, 1],
                [0, -1, 0, 0, 0, 0],
                [0, 0, 0, -1, 0, 0],
                [-1, 0, 0, 0, 0, 0],
            ]),
        ],
    }
}

fn checked_closure(
    label: GroupTag,
    gens: [SignedPermMatrix; 2],
    expected_order: usize,
) -> MatrixGroup {
    let g = MatrixGroup::closure(label, gens.to_vec(), 200).expect("closure exceeded cap");
    assert_eq!(
        g.order(),
        expected_order,
        "{label:?} closure has wrong order"
    );
    assert!(
        g.verify_presentation().expect("label has relations"),
        "{label:?} generators violate their presentation"
    );
    g
}

/// The principal icosahedral representation, order 60.
pub fn icosa_group() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| checked_closure(GroupTag::I, icosa_generators(), 60))
}

pub fn tetra_group() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| checked_closure(GroupTag::T, tetra_generators(), 12))
}

pub fn d10_group() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| checked_closure(GroupTag::D10, d10_generators(), 10))
}

pub fn d6_group() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| checked_closure(GroupTag::D6, d6_generators(), 6))
}

pub fn subgroup_group(sub: Subgroup) -> &'static MatrixGroup {
    match sub {
        Subgroup::T => tetra_group(),
        Subgroup::D10 => d10_group(),
        Subgroup::D6 => d6_group(),
    }
}

pub fn partner_group(sub: Subgroup) -> &'static MatrixGroup {
    static GT: OnceLock<MatrixGroup> = OnceLock::new();
    static GD10: OnceLock<MatrixGroup> = OnceLock::new();
    static GD6: OnceLock<MatrixGroup> = OnceLock::new();
    let cell = match sub {
        Subgroup::T => &GT,
        Subgroup::D10 => &GD10,
        Subgroup::D6 => &GD6,
    };
    cell.get_or_init(|| checked_closure(sub.partner_tag(), partner_generators(sub), 60))
}

/// Entries of the 6D reduction frame; the represented matrix is
/// `entries / sqrt(2(2+tau))`, an element of O(6).
pub fn frame_entries() -> GoldenMatrix {
    let t = (0, 1);
    GoldenMatrix::from_int_rows(&[
        &[t, (1, 0), (0, 0), t, (0, 0), (1, 0)],
        &[(0, 0), t, (1, 0), (-1, 0), t, (0, 0)],
        &[(-1, 0), (0, 0), t, (0, 0), (-1, 0), t],
        &[(0, 0), (0, -1), (1, 0), (1, 0), t, (0, 0)],
        &[t, (-1, 0), (0, 0), (0, -1), (0, 0), (1, 0)],
        &[(1, 0), (0, 0), t, (0, 0), (-1, 0), (0, -1)],
    ])
}

/// The reduction frame as a scaled golden matrix with `normSquared = 2(2+tau)`.
pub fn frame_matrix() -> &'static ScaledGoldenMatrix {
    static M: OnceLock<ScaledGoldenMatrix> = OnceLock::new();
    M.get_or_init(|| {
        let m = ScaledGoldenMatrix::new(frame_entries(), GoldenNumber::from_parts(4, 2));
        assert!(m.frame_check(), "reduction frame fails frameCheck");
        m
    })
}

fn golden3(rows: [[(i64, i64); 3]; 3], norm_squared: (i64, i64)) -> ScaledGoldenMatrix {
    let rows: Vec<Vec<GoldenNumber>> = rows
        .iter()
        .map(|r| r.iter().map(|&(p, q)| GoldenNumber::from_parts(p, q)).collect())
        .collect();
    ScaledGoldenMatrix::new(
        GoldenMatrix::from_rows(rows),
        GoldenNumber::from_parts(norm_squared.0, norm_squared.1),
    )
}

/// Irreducible 3D blocks of the icosahedral generators under the frame:
/// `(top(g2), top(g3))` spanning the physical space.
pub fn rho3_blocks() -> [ScaledGoldenMatrix; 2] {
    [
        golden3(
            [
                [(-1, 1), (1, 0), (0, 1)],
                [(1, 0), (0, -1), (-1, 1)],
                [(0, 1), (-1, 1), (-1, 0)],
            ],
            (4, 0),
        ),
        golden3(
            [
                [(0, 1), (-1, 1), (1, 0)],
                [(1, -1), (-1, 0), (0, 1)],
                [(1, 0), (0, -1), (1, -1)],
            ],
            (4, 0),
        ),
    ]
}

/// The orthogonal-space partner blocks `(bottom(g2), bottom(g3))`.
pub fn rho3_prime_blocks() -> [ScaledGoldenMatrix; 2] {
    [
        golden3(
            [
                [(-1, 1), (0, -1), (-1, 0)],
                [(0, -1), (-1, 0), (-1, 1)],
                [(-1, 0), (-1, 1), (0, -1)],
            ],
            (4, 0),
        ),
        golden3(
            [
                [(-1, 0), (1, -1), (0, -1)],
                [(-1, 1), (0, 1), (-1, 0)],
                [(0, 1), (-1, 0), (1, -1)],
            ],
            (4, 0),
        ),
    ]
}

/// Tetrahedral blocks `(Gamma1(g2), Gamma1(g3d))` in the physical space.
pub fn gamma1_blocks() -> [ScaledGoldenMatrix; 2] {
    [
        rho3_blocks()[0].clone(),
        golden3(
            [
                [(1, -1), (1, 0), (0, 1)],
                [(1, 0), (0, 1), (1, -1)],
                [(0, -1), (-1, 1), (-1, 0)],
            ],
            (4, 0),
        ),
    ]
}

/// Tetrahedral blocks `(Gamma2(g2), Gamma2(g3d))` in the orthogonal space.
pub fn gamma2_blocks() -> [ScaledGoldenMatrix; 2] {
    [
        rho3_prime_blocks()[0].clone(),
        golden3(
            [
                [(1, -1), (0, 1), (-1, 0)],
                [(0, -1), (-1, 0), (1, -1)],
                [(-1, 0), (-1, 1), (0, 1)],
            ],
            (4, 0),
        ),
    ]
}

/// The exact orthogonal intertwiner between the two tetrahedral blocks:
/// `q^-1 Gamma2 q = Gamma1`, stored as entries over 4 (normSquared 16).
pub fn tetra_intertwiner() -> &'static ScaledGoldenMatrix {
    static M: OnceLock<ScaledGoldenMatrix> = OnceLock::new();
    M.get_or_init(|| {
        let q = golden3(
            [
                [(3, -1), (1, 0), (2, 1)],
                [(-2, -1), (3, -1), (1, 0)],
                [(-1, 0), (-2, -1), (3, -1)],
            ],
            (16, 0),
        );
        assert!(q.frame_check(), "tetrahedral intertwiner fails frameCheck");
        m_assert_intertwines(&q);
        q
    })
}

fn m_assert_intertwines(q: &ScaledGoldenMatrix) {
    let g1 = gamma1_blocks();
    let g2 = gamma2_blocks();
    for (a, b) in g2.iter().zip(g1.iter()) {
        // q^T (E_a/2) q / 16 = E_b/2  <=>  q^T E_a q = 16 E_b
        let conj = q.conjugate(&a.entries).expect("exact conjugation");
        assert!(
            conj == b.entries,
            "tetrahedral intertwiner does not map Gamma2 to Gamma1"
        );
    }
}

/// D10 blocks `(D1(g2d), D1(g5d))` in the physical space.
pub fn d10_top_blocks() -> [ScaledGoldenMatrix; 2] {
    [
        golden3(
            [
                [(0, -1), (-1, 1), (-1, 0)],
                [(-1, 1), (-1, 0), (0, -1)],
                [(-1, 0), (0, -1), (-1, 1)],
            ],
            (4, 0),
        ),
        golden3(
            [
                [(-1, 1), (-1, 0), (0, 1)],
                [(1, 0), (0, 1), (-1, 1)],
                [(0, -1), (-1, 1), (1, 0)],
            ],
            (4, 0),
        ),
    ]
}

/// D10 blocks `(D2(g2d), D2(g5d))` in the orthogonal space.
pub fn d10_bottom_blocks() -> [ScaledGoldenMatrix; 2] {
    [
        golden3(
            [
                [(-1, 0), (-1, 1), (0, 1)],
                [(-1, 1), (0, -1), (1, 0)],
                [(0, 1), (1, 0), (-1, 1)],
            ],
            (4, 0),
        ),
        golden3(
            [
                [(1, -1), (0, -1), (-1, 0)],
                [(0, -1), (1, 0), (1, -1)],
                [(1, 0), (-1, 1), (0, -1)],
            ],
            (4, 0),
        ),
    ]
}

/// D6 blocks `(S1(g2d), S1(g3))`: the two-fold matches the D10 two-fold and
/// the three-fold matches the icosahedral three-fold.
pub fn d6_top_blocks() -> [ScaledGoldenMatrix; 2] {
    [d10_top_blocks()[0].clone(), rho3_blocks()[1].clone()]
}

pub fn d6_bottom_blocks() -> [ScaledGoldenMatrix; 2] {
    [d10_bottom_blocks()[0].clone(), rho3_prime_blocks()[1].clone()]
}

// ---------------------------------------------------------------------------
// Floating track: reducing matrices with radicals outside Q(tau).
// ---------------------------------------------------------------------------

/// Reducing matrix for the physical D10 block (A2 coordinate first, then the
/// 2D representation plane).
pub fn d10_reducer_top() -> Matrix3<f64> {
    let t = TAU_F64;
    let a = ((t + 2.0) / 5.0).sqrt();
    let b = ((3.0 - t) / 5.0).sqrt();
    let c = (2.0 * t - 1.0) / (5.0 * (t + 2.0)).sqrt();
    let d = (1.0 - 2.0 * t) / (5.0 * (3.0 - t)).sqrt();
    Matrix3::new(0.0, 1.0, 0.0, a, 0.0, b, c, 0.0, d)
}

/// Reducing matrix for the orthogonal D10 block.
pub fn d10_reducer_bottom() -> Matrix3<f64> {
    let t = TAU_F64;
    let b = ((3.0 - t) / 5.0).sqrt();
    let e = (2.0 * t - 1.0) / (5.0 * (3.0 - t)).sqrt();
    Matrix3::new(b, e, 0.0, -e, b, 0.0, 0.0, 0.0, 1.0)
}

/// Reducing matrix for the physical D6 block.
pub fn d6_reducer_top() -> Matrix3<f64> {
    let t = TAU_F64;
    let s3 = 3.0_f64.sqrt();
    Matrix3::new(
        t / s3,
        0.0,
        (1.0 - t) / s3,
        0.0,
        1.0,
        0.0,
        (t - 1.0) / s3,
        0.0,
        t / s3,
    )
}

/// Reducing matrix for the orthogonal D6 block.
pub fn d6_reducer_bottom() -> Matrix3<f64> {
    let t = TAU_F64;
    let s3 = 3.0_f64.sqrt();
    Matrix3::new(
        0.0,
        1.0,
        0.0,
        t / s3,
        0.0,
        (1.0 - t) / s3,
        (1.0 - t) / s3,
        0.0,
        -t / s3,
    )
}

/// 6x6 direct sum of two 3x3 blocks.
pub fn block_diag(top: &Matrix3<f64>, bottom: &Matrix3<f64>) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(top);
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(bottom);
    m
}

/// The reduction frame in double precision.
pub fn frame_f64() -> Matrix6<f64> {
    frame_matrix().to_matrix6()
}
