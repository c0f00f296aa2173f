//! Integral LLL on a Gram matrix.
//!
//! The Gram is scaled to an integer matrix by its common denominator (which
//! does not change the reduction) and reduced with the all-integer variant
//! that tracks the Gram–Schmidt data as `d_i` (leading principal minors) and
//! `λ_ij = d_j · μ_ij`. Every division in the update formulas is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ReducedBasis;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational, ZMatrix};
use crate::projection::GramMatrix;

/// Default Lovász parameter, 99/100.
pub fn default_delta() -> Rational {
    Rational::new(99.into(), 100.into())
}

struct State {
    n: usize,
    g: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    // d[0] = 1, d[i + 1] belongs to basis vector i
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

/// Nearest integer to `a / b` for `b > 0`, ties rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

impl State {
    fn new(g: Vec<Vec<BigInt>>) -> Self {
        let n = g.len();
        let h = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        State { n, g, h, d: vec![BigInt::one(); n + 1], lam: vec![vec![BigInt::zero(); n]; n] }
    }

    /// Gram–Schmidt data for row `k`, given rows `< k` are done.
    fn incremental_gs(&mut self, k: usize) -> Result<()> {
        for j in 0..=k {
            let mut u = self.g[k][j].clone();
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i];
            }
            if j < k {
                self.lam[k][j] = u;
            } else {
                if !u.is_positive() {
                    return Err(Error::NotPositiveDefinite { pivot: k });
                }
                self.d[k + 1] = u;
            }
        }
        Ok(())
    }

    /// `b_k ← b_k − q·b_l` where `q` is the rounded `μ_kl`.
    fn redi(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if (&self.lam[k][l] * 2u32).abs() <= *dl {
            return;
        }
        let q = round_div(&self.lam[k][l], dl);
        for j in 0..self.n {
            let t = &q * &self.h[l][j];
            self.h[k][j] -= t;
            let t = &q * &self.g[l][j];
            self.g[k][j] -= t;
        }
        for j in 0..self.n {
            let t = &q * &self.g[j][l];
            self.g[j][k] -= t;
        }
        let t = &q * &self.d[l + 1];
        self.lam[k][l] -= t;
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swapi(&mut self, k: usize, kmax: usize) {
        self.h.swap(k, k - 1);
        self.g.swap(k, k - 1);
        for row in self.g.iter_mut() {
            row.swap(k, k - 1);
        }
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k + 1] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k];
            self.lam[i][k - 1] = (&b * &t + &lam * &self.lam[i][k]) / &self.d[k + 1];
        }
        self.d[k] = b;
    }
}

/// LLL-reduce `a` with Lovász parameter `delta ∈ (1/4, 1)`.
pub fn lll_reduce_with_delta(a: &GramMatrix, delta: &Rational) -> Result<ReducedBasis> {
    let quarter = Rational::new(1.into(), 4.into());
    if *delta <= quarter || *delta >= Rational::one() {
        return Err(Error::precondition("LLL delta must lie strictly between 1/4 and 1"));
    }
    let n = a.dim();
    let den = a.matrix().common_denominator();
    let g: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| (a.entry(i, j) * &den).to_integer()).collect())
        .collect();
    let (p, q) = (delta.numer().clone(), delta.denom().clone());

    let mut s = State::new(g);
    if n > 0 {
        s.incremental_gs(0)?;
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            s.incremental_gs(k)?;
        }
        s.redi(k, k - 1);
        let lam = &s.lam[k][k - 1];
        let lhs = &q * &s.d[k + 1] * &s.d[k - 1];
        let rhs = &p * &s.d[k] * &s.d[k] - &q * lam * lam;
        if lhs < rhs {
            s.swapi(k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                s.redi(k, l);
            }
            k += 1;
        }
    }

    let transform: ZMatrix = Matrix::from_rows(s.h).expect("square");
    let gram = a.transform(&transform);
    Ok(ReducedBasis { gram, transform })
}

pub fn lll_reduce(a: &GramMatrix) -> Result<ReducedBasis> {
    lll_reduce_with_delta(a, &default_delta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ldl, rat};

    fn assert_lll(red: &ReducedBasis, delta: &Rational) {
        let f = ldl(red.gram.matrix()).unwrap();
        let n = red.gram.dim();
        let half = rat(1, 2);
        for i in 0..n {
            for j in 0..i {
                assert!(f.unit_lower[(i, j)].abs() <= half, "size reduction at ({i},{j})");
            }
        }
        for k in 1..n {
            let mu = &f.unit_lower[(k, k - 1)];
            assert!(f.diag[k] >= (delta - mu * mu) * &f.diag[k - 1], "Lovász at {k}");
        }
    }

    #[test]
    fn identity_is_fixed() {
        let r = lll_reduce(&GramMatrix::identity(4)).unwrap();
        assert_eq!(r.gram, GramMatrix::identity(4));
        assert_eq!(r.transform, Matrix::identity(4));
    }

    #[test]
    fn skewed_basis_is_reduced() {
        let a = GramMatrix::from_integers(vec![vec![17, 32], vec![32, 65]]).unwrap();
        let r = lll_reduce(&a).unwrap();
        assert_lll(&r, &default_delta());
        assert_eq!(r.gram.det(), a.det());
        assert!(r.transform.det().abs().is_one());
        assert_eq!(r.gram.entry(0, 0), &Rational::from_integer(5.into()));
    }

    #[test]
    fn rational_gram() {
        // primal Gram of (1, 2, 4, 7), determinant 1/70
        let v = crate::projection::AxisVector::from_i64(&[1, 2, 4, 7]).unwrap();
        let a = crate::projection::primal_gram(&v);
        let r = lll_reduce(&a).unwrap();
        assert_lll(&r, &default_delta());
        assert_eq!(r.gram.det(), rat(1, 70));
        assert_eq!(a.transform(&r.transform), r.gram);
    }

    #[test]
    fn rejects_bad_delta() {
        let a = GramMatrix::identity(2);
        assert!(lll_reduce_with_delta(&a, &rat(1, 4)).is_err());
        assert!(lll_reduce_with_delta(&a, &rat(1, 1)).is_err());
        assert!(lll_reduce_with_delta(&a, &rat(3, 4)).is_ok());
    }

    #[test]
    fn weaker_delta_still_satisfies_its_condition() {
        let a = GramMatrix::from_integers(vec![
            vec![101, 70, 40],
            vec![70, 50, 29],
            vec![40, 29, 18],
        ])
        .unwrap();
        let delta = rat(3, 4);
        let r = lll_reduce_with_delta(&a, &delta).unwrap();
        assert_lll(&r, &delta);
        assert_eq!(r.gram.det(), a.det());
    }
}
