//! Dense matrices over the golden field, with an attached normalization.
//!
//! A [`ScaledGoldenMatrix`] stores exact entries `E` together with a scalar
//! `normSquared` and represents the real matrix `E / sqrt(normSquared)`.
//! This keeps matrices like the 6D reduction frame (normalized by
//! `1/sqrt(2(2+tau))`) fully inside Q(tau): orthogonality becomes the exact
//! identity `E * E^T = normSquared * I`.

use nalgebra::{Matrix3, Matrix6};

use crate::error::{Error, Result};
use crate::golden::GoldenNumber;

/// Plain matrix of golden numbers.
#[derive(Clone, PartialEq, Eq)]
pub struct GoldenMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GoldenNumber>,
}

impl GoldenMatrix {
    pub fn from_rows(rows: Vec<Vec<GoldenNumber>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Rows given as `(p, q)` integer pairs meaning `p + q*tau`.
    pub fn from_int_rows(rows: &[&[(i64, i64)]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|&(p, q)| GoldenNumber::from_parts(p, q))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![GoldenNumber::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = GoldenNumber::one();
        }
        Self::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GoldenNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GoldenNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self {
            rows: self.cols,
            cols: self.rows,
            data: vec![GoldenNumber::zero(); self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self {
            rows: self.rows,
            cols: rhs.cols,
            data: vec![GoldenNumber::zero(); self.rows * rhs.cols],
        };
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = GoldenNumber::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Entry-wise exact division by a scalar.
    pub fn div_scalar(&self, s: &GoldenNumber) -> Result<Self> {
        let inv = s.inverse()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * &inv).collect(),
        })
    }

    pub fn scale(&self, s: &GoldenNumber) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GoldenNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// Submatrix `[r0..r0+h) x [c0..c0+w)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let mut out = Self {
            rows: h,
            cols: w,
            data: vec![GoldenNumber::zero(); h * w],
        };
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.data.iter().map(GoldenNumber::to_f64).collect()
    }
}

impl std::fmt::Debug for GoldenMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}{}", if j > 0 { ", " } else { "[" }, self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Matrix representing `entries / sqrt(norm_squared)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledGoldenMatrix {
    pub entries: GoldenMatrix,
    pub norm_squared: GoldenNumber,
}

impl ScaledGoldenMatrix {
    pub fn new(entries: GoldenMatrix, norm_squared: GoldenNumber) -> Self {
        debug_assert!(norm_squared.to_f64() > 0.0, "normSquared must be positive");
        Self {
            entries,
            norm_squared,
        }
    }

    pub fn unscaled(entries: GoldenMatrix) -> Self {
        Self::new(entries, GoldenNumber::one())
    }

    /// Exact orthogonal-frame test: `E * E^T = normSquared * I`.
    pub fn frame_check(&self) -> bool {
        if self.entries.nrows() != self.entries.ncols() {
            return false;
        }
        let gram = self.entries.mul(&self.entries.transpose());
        let expect = GoldenMatrix::identity(self.entries.nrows()).scale(&self.norm_squared);
        gram == expect
    }

    /// Exact conjugation `M^-1 A M = M^T A M / normSquared` for an
    /// orthogonal frame `M` and an exact matrix `A`.
    ///
    /// Valid only when `frame_check` holds, so the transpose is the inverse
    /// up to the normalization scalar.
    pub fn conjugate(&self, a: &GoldenMatrix) -> Result<GoldenMatrix> {
        if !self.frame_check() {
            return Err(Error::ConstantTable(
                "conjugation frame fails frameCheck".into(),
            ));
        }
        self.entries
            .transpose()
            .mul(a)
            .mul(&self.entries)
            .div_scalar(&self.norm_squared)
    }

    pub fn to_matrix6(&self) -> Matrix6<f64> {
        assert_eq!((self.entries.nrows(), self.entries.ncols()), (6, 6));
        let s = self.norm_squared.to_f64().sqrt();
        Matrix6::from_row_iterator(self.entries.to_f64_vec().into_iter().map(|x| x / s))
    }

    pub fn to_matrix3(&self) -> Matrix3<f64> {
        assert_eq!((self.entries.nrows(), self.entries.ncols()), (3, 3));
        let s = self.norm_squared.to_f64().sqrt();
        Matrix3::from_row_iterator(self.entries.to_f64_vec().into_iter().map(|x| x / s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_a_frame() {
        let m = ScaledGoldenMatrix::unscaled(GoldenMatrix::identity(3));
        assert!(m.frame_check());
    }

    #[test]
    fn scaled_frame() {
        // rows (1, 1) / sqrt(2) and (1, -1) / sqrt(2)
        let e = GoldenMatrix::from_int_rows(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]]);
        let m = ScaledGoldenMatrix::new(e, GoldenNumber::from_int(2));
        assert!(m.frame_check());
    }

    #[test]
    fn non_orthogonal_fails() {
        let e = GoldenMatrix::from_int_rows(&[&[(1, 0), (1, 0)], &[(0, 0), (1, 0)]]);
        let m = ScaledGoldenMatrix::new(e, GoldenNumber::from_int(1));
        assert!(!m.frame_check());
    }

    #[test]
    fn conjugation_by_identity() {
        let a = GoldenMatrix::from_int_rows(&[&[(0, 1), (1, 0)], &[(2, 0), (0, -1)]]);
        let id = ScaledGoldenMatrix::unscaled(GoldenMatrix::identity(2));
        assert_eq!(id.conjugate(&a).unwrap(), a);
    }
}
