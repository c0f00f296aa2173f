//! Exact shortest-vector enumeration.
//!
//! The Gram is LLL-reduced first, then every coefficient vector with
//! `xᵀ·R·x ≤ t` is visited depth first using the `LDLᵀ` factorisation of
//! the reduced Gram `R`. The radius `t` starts at the smallest diagonal entry
//! (a vector of that length exists) and shrinks whenever a shorter vector
//! turns up, so the final value is certified.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lll::lll_reduce;
use super::SVPResult;
use crate::error::{Error, Result};
use crate::exact::{ldl, round_rational, Rational};
use crate::projection::GramMatrix;

pub const DEFAULT_ENUM_CAP: usize = 12;

struct Search {
    n: usize,
    // mu[j][i] = L_ji for j > i
    mu: Vec<Vec<Rational>>,
    diag: Vec<Rational>,
    x: Vec<BigInt>,
    bound: Rational,
    best: Vec<BigInt>,
}

impl Search {
    fn center(&self, i: usize) -> Rational {
        let mut c = Rational::zero();
        for j in i + 1..self.n {
            if !self.x[j].is_zero() {
                c += &self.mu[j][i] * Rational::from_integer(self.x[j].clone());
            }
        }
        c
    }

    fn visit(&mut self, i: usize, partial: Rational) {
        let c = self.center(i);
        let start = round_rational(&(-&c));
        // the form is convex in x_i, so walk up from the centre, then down
        for step in [BigInt::one(), -BigInt::one()] {
            let mut z = if step.is_one() { start.clone() } else { &start - 1 };
            loop {
                let y = Rational::from_integer(z.clone()) + &c;
                let total = &partial + &self.diag[i] * &y * &y;
                if total > self.bound {
                    break;
                }
                self.x[i] = z.clone();
                if i > 0 {
                    self.visit(i - 1, total);
                } else if total < self.bound && self.x.iter().any(|e| !e.is_zero()) {
                    self.bound = total;
                    self.best = self.x.clone();
                }
                z += &step;
            }
        }
        self.x[i] = BigInt::zero();
    }
}

/// `λ₁²` and a witness, refusing above [`DEFAULT_ENUM_CAP`] dimensions.
pub fn shortest_vector(a: &GramMatrix) -> Result<SVPResult> {
    shortest_vector_with_cap(a, DEFAULT_ENUM_CAP)
}

pub fn shortest_vector_with_cap(a: &GramMatrix, cap: usize) -> Result<SVPResult> {
    let n = a.dim();
    if n > cap {
        return Err(Error::EnumerationRefused { dim: n, cap });
    }
    let red = lll_reduce(a)?;
    let r = red.gram.matrix();
    let f = ldl(r)?;
    let first = (0..n)
        .min_by(|&i, &j| r[(i, i)].cmp(&r[(j, j)]).then(i.cmp(&j)))
        .ok_or_else(|| Error::dimension("empty Gram matrix"))?;
    let mut best = vec![BigInt::zero(); n];
    best[first] = BigInt::one();
    let mut s = Search {
        n,
        mu: (0..n).map(|j| (0..n).map(|i| f.unit_lower[(j, i)].clone()).collect()).collect(),
        diag: f.diag,
        x: vec![BigInt::zero(); n],
        bound: r[(first, first)].clone(),
        best,
    };
    s.visit(n - 1, Rational::zero());
    let u = red.transform;
    // x is in reduced coordinates; the original coefficients are Uᵀx
    let witness: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|i| &u[(i, j)] * &s.best[i]).sum())
        .collect();
    debug_assert_eq!(
        a.matrix().quadratic_form(&witness.iter().cloned().map(Rational::from_integer).collect::<Vec<_>>()),
        s.bound
    );
    Ok(SVPResult { min_norm: s.bound, witness })
}
