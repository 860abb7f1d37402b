//! The three hypercubic Bravais lattices left invariant by the embedded
//! icosahedral group, and integer-point enumeration inside a ball.
//!
//! Model-set generation only ever enumerates the simple cubic lattice; the
//! body- and face-centered membership predicates and generator matrices are
//! part of the lattice classification and are exercised by tests.

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

/// The three non-equivalent 6D Bravais lattice kinds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LatticeKind {
    /// Integer coordinates.
    Sc,
    /// Half-integers with all doubled coordinates congruent mod 2.
    Bcc,
    /// Half-integers with even doubled-coordinate sum.
    Fcc,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Sc => "SC",
            LatticeKind::Bcc => "BCC",
            LatticeKind::Fcc => "FCC",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SC" => Some(LatticeKind::Sc),
            "BCC" => Some(LatticeKind::Bcc),
            "FCC" => Some(LatticeKind::Fcc),
            _ => None,
        }
    }

    /// Membership for a point given in doubled coordinates (the point is
    /// `x2 / 2`), which keeps the predicate in integer arithmetic.
    pub fn contains_doubled(self, x2: &[i64; 6]) -> bool {
        match self {
            LatticeKind::Sc => x2.iter().all(|v| v % 2 == 0),
            LatticeKind::Bcc => {
                let p = x2[0].rem_euclid(2);
                x2.iter().all(|v| v.rem_euclid(2) == p)
            }
            LatticeKind::Fcc => x2.iter().sum::<i64>() % 2 == 0,
        }
    }

    /// Generator matrix columns in doubled coordinates (exact integers).
    pub fn generator_columns_doubled(self) -> [[i64; 6]; 6] {
        match self {
            LatticeKind::Sc => [
                [2, 0, 0, 0, 0, 0],
                [0, 2, 0, 0, 0, 0],
                [0, 0, 2, 0, 0, 0],
                [0, 0, 0, 2, 0, 0],
                [0, 0, 0, 0, 2, 0],
                [0, 0, 0, 0, 0, 2],
            ],
            LatticeKind::Bcc => [
                [2, 0, 0, 0, 0, 0],
                [0, 2, 0, 0, 0, 0],
                [0, 0, 2, 0, 0, 0],
                [0, 0, 0, 2, 0, 0],
                [0, 0, 0, 0, 2, 0],
                [1, 1, 1, 1, 1, 1],
            ],
            LatticeKind::Fcc => [
                [1, 1, 0, 0, 0, 0],
                [-1, 1, 0, 0, 0, 0],
                [0, -1, 1, 0, 0, 0],
                [0, 0, -1, 1, 0, 0],
                [0, 0, 0, -1, 1, 0],
                [0, 0, 0, 0, -1, 1],
            ],
        }
    }

    /// Generator matrix in real coordinates.
    pub fn generator_matrix(self) -> Matrix6<f64> {
        let cols = self.generator_columns_doubled();
        Matrix6::from_fn(|i, j| cols[j][i] as f64 / 2.0)
    }
}

impl std::fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Visit every integer vector with norm at most `radius`, in lexicographic
/// order, pruning on the running partial sum of squares.
pub fn for_each_integer_point_in_ball(radius: f64, mut visit: impl FnMut(&[i64; 6])) {
    assert!(radius >= 0.0 && radius.is_finite());
    let r2 = radius * radius;
    let lim = radius.floor() as i64;
    let mut v = [0i64; 6];

    fn recurse(
        depth: usize,
        partial: i64,
        r2: f64,
        lim: i64,
        v: &mut [i64; 6],
        visit: &mut impl FnMut(&[i64; 6]),
    ) {
        if depth == 6 {
            visit(v);
            return;
        }
        for x in -lim..=lim {
            let s = partial + x * x;
            if (s as f64) > r2 {
                continue;
            }
            v[depth] = x;
            recurse(depth + 1, s, r2, lim, v, visit);
        }
        v[depth] = 0;
    }

    recurse(0, 0, r2, lim, &mut v, &mut visit);
}
