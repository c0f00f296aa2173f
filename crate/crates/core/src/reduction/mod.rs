//! Basis reduction, shortest vectors, packing density, and residual refits.

pub mod lll;
pub mod similarity;
pub mod svp;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{ln_rational, QMatrix, Rational, ZMatrix};
use crate::lift::{LiftMode, LiftResult};
use crate::projection::GramMatrix;

pub use lll::{default_delta, lll_reduce, lll_reduce_with_delta};
pub use similarity::{lagrange_reduce_2d, prop1_search, similarity_2d, Prop1Report, Similarity};
pub use svp::{shortest_vector, shortest_vector_with_cap, DEFAULT_ENUM_CAP};

/// A reduced Gram together with the unimodular `U` that produced it:
/// `gram = U · original · Uᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasis {
    pub gram: GramMatrix,
    pub transform: ZMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SVPResult {
    /// `λ₁²`.
    pub min_norm: Rational,
    /// Coefficients `z` in the input basis with `zᵀ·A·z = min_norm`.
    pub witness: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub min_norm: Rational,
    pub det: Rational,
    pub center_density: f64,
    pub packing_density: f64,
}

/// Volume of the unit ball in `d` dimensions.
pub fn unit_ball_volume(d: usize) -> f64 {
    let mut v = if d.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if d.is_multiple_of(2) { 2 } else { 3 };
    while k <= d {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

/// Center density `(λ₁/2)^d / √det` from exact `λ₁²` and determinant.
///
/// Computed through logarithms so that Grams with very large entries do not
/// overflow.
pub fn density_from_parts(min_norm: &Rational, det: &Rational, d: usize) -> (f64, f64) {
    let quarter = min_norm / Rational::from_integer(4.into());
    let ln_center = 0.5 * d as f64 * ln_rational(&quarter) - 0.5 * ln_rational(det);
    let center = ln_center.exp();
    (center, center * unit_ball_volume(d))
}

pub fn center_density(a: &GramMatrix) -> Result<DensityReport> {
    center_density_with_cap(a, DEFAULT_ENUM_CAP)
}

pub fn center_density_with_cap(a: &GramMatrix, cap: usize) -> Result<DensityReport> {
    let svp = shortest_vector_with_cap(a, cap)?;
    let det = a.det();
    let (center_density, packing_density) = density_from_parts(&svp.min_norm, &det, a.dim());
    Ok(DensityReport { min_norm: svp.min_norm, det, center_density, packing_density })
}

/// Half-width of the bracket of scale candidates `c₀(1 + k/w³)`.
const SCALE_STEPS: i64 = 4;

/// `min ‖A − c · U G Uᵀ‖∞` over a few bases `U` of the approximating
/// lattice and scales `c` around `c₀`.
///
/// The bases tried are the given one, its LLL reduction, and the LLL
/// reduction carried into the basis in which `A` itself reduces. Scales are
/// `c₀(1 + k/w³)` for `|k| ≤ 4` and the least-squares ratio `⟨A,G⟩/⟨G,G⟩`.
/// Since `(U = I, c = c₀)` is a candidate the result never exceeds the
/// unreduced residual.
pub fn refit_residual(a: &GramMatrix, g: &GramMatrix, c0: &Rational, w: &BigInt) -> Result<Rational> {
    if a.dim() != g.dim() {
        return Err(Error::dimension("target and approximant differ in dimension"));
    }
    let red_g = lll_reduce(g)?;
    let red_a = lll_reduce(a)?;
    let aligned = red_a.transform.to_rational().inverse()?;
    let aligned_gram = GramMatrix::trusted(red_g.gram.matrix().congruent(&aligned));
    let bases = [g.clone(), red_g.gram, aligned_gram];

    let w3 = Rational::from_integer(w * w * w);
    let mut scales: Vec<Rational> = (-SCALE_STEPS..=SCALE_STEPS)
        .map(|k| c0 * (Rational::from_integer(1.into()) + Rational::from_integer(k.into()) / &w3))
        .filter(|c| c > &Rational::zero())
        .collect();
    let frob = |x: &QMatrix, y: &QMatrix| -> Rational {
        x.iter().zip(y.iter()).map(|(p, q)| p * q).fold(Rational::zero(), |s, t| s + t)
    };
    for b in &bases {
        let gg = frob(b.matrix(), b.matrix());
        if !gg.is_zero() {
            scales.push(frob(a.matrix(), b.matrix()) / gg);
        }
    }

    let mut best: Option<Rational> = None;
    for b in &bases {
        for c in &scales {
            let r = (a.matrix() - &b.matrix().scale(c)).max_abs();
            if best.as_ref().is_none_or(|x| r < *x) {
                best = Some(r);
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Residual of a lift against its own target; with `use_reduction` the
/// approximant is re-based and re-scaled by [`refit_residual`].
pub fn convergence_residual(lift: &LiftResult, use_reduction: bool) -> Result<Rational> {
    if !use_reduction {
        return Ok(lift.residual.clone());
    }
    let approximant = match lift.mode {
        LiftMode::Dual => lift.dual_gram_lifted.clone(),
        LiftMode::Primal => lift.dual_gram_lifted.inverse(),
    };
    refit_residual(&lift.target_gram, &approximant, &lift.scale, &lift.w)
}
