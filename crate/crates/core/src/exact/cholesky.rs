use num_traits::{One, Signed, Zero};

use super::{HighPrecReal, Matrix, QMatrix, Rational};
use crate::error::{Error, Result};

/// Exact `a = U·D·Uᵀ` with `U` unit lower triangular and `D` diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Ldl {
    pub unit_lower: QMatrix,
    pub diag: Vec<Rational>,
}

/// Exact LDLᵀ factorization of a symmetric positive-definite rational matrix.
pub fn ldl(a: &QMatrix) -> Result<Ldl> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = a.rows();
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d: Vec<Rational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = a[(j, j)].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        l[j][j] = Rational::one();
        for i in j + 1..n {
            let mut s = a[(i, j)].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        d.push(dj);
    }
    Ok(Ldl { unit_lower: Matrix::from_rows(l)?, diag: d })
}

impl Ldl {
    /// Entry `(i, j)` of the Cholesky factor, as `sign · √radicand`.
    fn factor_entry(&self, i: usize, j: usize) -> (bool, Rational) {
        let l = &self.unit_lower[(i, j)];
        (l.is_negative(), l * l * &self.diag[j])
    }
}

/// Lower-triangular `L` with positive diagonal and `L·Lᵀ = a`.
///
/// Entries are exact wherever the factor is rational and otherwise carry
/// `precision` fractional bits.
pub fn cholesky(a: &QMatrix, precision: u32) -> Result<Matrix<HighPrecReal>> {
    let f = ldl(a)?;
    let n = a.rows();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            if j > i {
                row.push(HighPrecReal::exact(Rational::zero(), precision));
            } else {
                let (negative, radicand) = f.factor_entry(i, j);
                row.push(HighPrecReal::signed_sqrt(negative, &radicand, precision)?);
            }
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}
