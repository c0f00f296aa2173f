//! Lifting a target Gram matrix to an integer axis vector.
//!
//! Given a target Gram `A = L·Lᵀ` (Cholesky) and a scale `w`, the lifted
//! matrix
//!
//! ```text
//! L_w = −[⌊wL⌋ | 0] + [0 | I]
//! ```
//!
//! is an integer basis of some `Λ_v*`. Its last `n−1` columns `H_w` are
//! unit lower triangular, so forward substitution recovers `v̂` from
//! `H_w · (−v̂ᵀ) = first column`, and `L_w = H_w · [−v̂ᵀ | I]`. The lifted
//! Gram `L_w·L_wᵀ = w²A + B` has `B = O(w)`, so `Λ_v*` approaches `w·Λ`.

pub mod families;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    certified_floor, cholesky, HighPrecReal, Matrix, QMatrix, Rational, ZMatrix,
    DEFAULT_PRECISION, MAX_PRECISION,
};
use crate::projection::{AxisVector, GramMatrix};

pub use families::{
    family_51, family_dm, family_e8, family_fcc, family_fcc_fast, family_leech, fcc_fast_lift,
    Family,
};

/// Which of the two approximation statements a lift targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftMode {
    /// `Λ_v* ≈ w·Λ`; residual `‖A − L_wL_wᵀ / w²‖∞`.
    Dual,
    /// `Λ_v ≈ Λ / w`; the dual of `Λ` is lifted and the residual is
    /// `‖A − w²·A_v‖∞` with `A_v` in the basis dual to the lifted one.
    Primal,
}

impl std::str::FromStr for LiftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual" => Ok(LiftMode::Dual),
            "primal" => Ok(LiftMode::Primal),
            _ => Err(Error::Parse(format!("unknown lift mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub mode: LiftMode,
    /// The Gram the caller asked to approximate.
    pub target_gram: GramMatrix,
    /// The Gram whose Cholesky factor was lifted (`A`, or `A⁻¹` in primal mode).
    pub lifted_target: GramMatrix,
    pub w: BigInt,
    /// `L_w`, `(n−1) × n`.
    pub lifted: ZMatrix,
    /// Last `n−1` columns of `L_w`; unit lower triangular.
    pub h: ZMatrix,
    pub v: AxisVector,
    /// `L_w · L_wᵀ`, a Gram of `Λ_v*`.
    pub dual_gram_lifted: GramMatrix,
    /// `L_w · L_wᵀ − w²·lifted_target`.
    pub residual_b: QMatrix,
    /// Scale `c` in `‖A − c·Gram‖∞`: `1/w²` (dual) or `w²` (primal).
    pub scale: Rational,
    pub residual: Rational,
    /// Bits used for the Cholesky factor when it was irrational.
    pub precision: u32,
}

fn w_squared(w: &BigInt) -> Rational {
    Rational::from_integer(w * w)
}

/// `L_w = −[⌊wL⌋ | 0] + [0 | I]` for a lower-triangular `L`.
pub fn lift_matrix(l: &Matrix<HighPrecReal>, w: &BigInt) -> Result<ZMatrix> {
    if !l.is_square() {
        return Err(Error::dimension("lift needs a square factor"));
    }
    if !w.is_positive() {
        return Err(Error::precondition("w must be at least 1"));
    }
    let d = l.rows();
    let mut out = ZMatrix::zeros(d, d + 1).to_rows();
    for i in 0..d {
        for k in 0..=i {
            let x = &l[(i, k)];
            // the approximation error grows with w; demand headroom
            if !x.is_exact() && w.bits() + 8 > u64::from(x.precision() / 2) {
                return Err(Error::AmbiguousFloor { precision: x.precision() });
            }
            out[i][k] = -certified_floor(&x.mul_integer(w))?;
        }
        for k in i + 1..d {
            if !l[(i, k)].to_rational().is_zero() {
                return Err(Error::precondition("factor must be lower triangular"));
            }
        }
        out[i][i + 1] = BigInt::one();
    }
    Matrix::from_rows(out)
}

/// Recover `(v, H_w)` from a lifted matrix whose last `n−1` columns are unit
/// lower triangular.
pub fn row_reduce_lift(lifted: &ZMatrix) -> Result<(AxisVector, ZMatrix)> {
    let d = lifted.rows();
    if d == 0 || lifted.cols() != d + 1 {
        return Err(Error::MalformedLift(format!(
            "expected (n-1) x n, got {} x {}",
            lifted.rows(),
            lifted.cols()
        )));
    }
    let h = lifted.columns(1, d + 1);
    for i in 0..d {
        if !h[(i, i)].is_one() {
            return Err(Error::MalformedLift(format!("H[{i}][{i}] = {} is not 1", h[(i, i)])));
        }
        if (i + 1..d).any(|j| !h[(i, j)].is_zero()) {
            return Err(Error::MalformedLift(format!("row {i} has entries above the diagonal")));
        }
    }
    let mut vhat: Vec<BigInt> = Vec::with_capacity(d);
    for i in 0..d {
        let mut vi = -&lifted[(i, 0)];
        for (j, vj) in vhat.iter().enumerate() {
            vi -= &h[(i, j)] * vj;
        }
        vhat.push(vi);
    }
    Ok((AxisVector::new(vhat), h))
}

/// Like [`row_reduce_lift`] for any lifted matrix whose last `n−1` columns
/// form a unimodular `H_w`: `v̂ = −H_w⁻¹ · c`.
pub fn normalize_lift(lifted: &ZMatrix) -> Result<(AxisVector, ZMatrix)> {
    let d = lifted.rows();
    if d == 0 || lifted.cols() != d + 1 {
        return Err(Error::MalformedLift("expected (n-1) x n".into()));
    }
    let h = lifted.columns(1, d + 1);
    if !h.det().abs().is_one() {
        return Err(Error::MalformedLift("H_w is not unimodular".into()));
    }
    let c: Vec<Rational> = (0..d).map(|i| Rational::from_integer(-&lifted[(i, 0)])).collect();
    let vhat = h.to_rational().inverse()?.apply(&c);
    let vhat = vhat
        .into_iter()
        .map(|x| x.to_integer())
        .collect::<Vec<_>>();
    Ok((AxisVector::new(vhat), h))
}

/// Lift `target` at scale `w`, retrying the Cholesky factor at doubled
/// precision whenever a floor cannot be certified.
pub fn lift_with_retry(target: &GramMatrix, w: &BigInt, start: u32) -> Result<(ZMatrix, u32)> {
    let mut precision = start.max(16);
    loop {
        let l = cholesky(target.matrix(), precision)?;
        match lift_matrix(&l, w) {
            Err(Error::AmbiguousFloor { .. }) if precision < MAX_PRECISION => {
                precision = (precision * 2).min(MAX_PRECISION);
            }
            Err(Error::AmbiguousFloor { .. }) => {
                return Err(Error::AmbiguousFloor { precision });
            }
            other => return other.map(|m| (m, precision)),
        }
    }
}

/// Build `v` such that `Λ_v*` (dual mode) or `Λ_v` (primal mode)
/// approximates the lattice with Gram `a` up to similarity.
pub fn construct_v(a: &GramMatrix, w: &BigInt, mode: LiftMode) -> Result<LiftResult> {
    construct_v_with_precision(a, w, mode, DEFAULT_PRECISION)
}

pub fn construct_v_with_precision(
    a: &GramMatrix,
    w: &BigInt,
    mode: LiftMode,
    precision: u32,
) -> Result<LiftResult> {
    if !w.is_positive() {
        return Err(Error::precondition("w must be at least 1"));
    }
    let lifted_target = match mode {
        LiftMode::Dual => a.clone(),
        LiftMode::Primal => a.inverse(),
    };
    let (lifted, precision) = lift_with_retry(&lifted_target, w, precision)?;
    let (v, h) = row_reduce_lift(&lifted)?;
    let lifted_q = lifted.to_rational();
    let gram = lifted_q.gram();
    let w2 = w_squared(w);
    let residual_b = &gram - &lifted_target.matrix().scale(&w2);
    let (scale, residual) = match mode {
        LiftMode::Dual => {
            let c = w2.recip();
            let r = (a.matrix() - &gram.scale(&c)).max_abs();
            (c, r)
        }
        LiftMode::Primal => {
            let primal = gram.inverse()?;
            let r = (a.matrix() - &primal.scale(&w2)).max_abs();
            (w2, r)
        }
    };
    Ok(LiftResult {
        mode,
        target_gram: a.clone(),
        lifted_target,
        w: w.clone(),
        lifted,
        h,
        v,
        dual_gram_lifted: GramMatrix::trusted(gram),
        residual_b,
        scale,
        residual,
        precision,
    })
}
