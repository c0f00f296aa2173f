//! Binary forms: Lagrange–Gauss reduction and exact similarity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ReducedBasis;
use crate::error::{Error, Result};
use crate::exact::{round_rational, Matrix, Rational, ZMatrix};
use crate::projection::GramMatrix;

fn z2(a: i64, b: i64, c: i64, d: i64) -> ZMatrix {
    Matrix::from_rows(vec![vec![a.into(), b.into()], vec![c.into(), d.into()]]).expect("2x2")
}

/// Reduce to `[[p, q], [q, r]]` with `0 ≤ 2q ≤ p ≤ r`.
///
/// Under `GL₂(ℤ)` this form is unique, so two binary forms are equivalent
/// exactly when their reductions coincide.
pub fn lagrange_reduce_2d(a: &GramMatrix) -> Result<ReducedBasis> {
    if a.dim() != 2 {
        return Err(Error::dimension(format!("expected a 2x2 Gram, got {}x{}", a.dim(), a.dim())));
    }
    let mut u = z2(1, 0, 0, 1);
    let mut g = a.clone();
    loop {
        let (p, q) = (g.entry(0, 0).clone(), g.entry(0, 1).clone());
        let k = round_rational(&(q / &p));
        if !k.is_zero() {
            let step: ZMatrix =
                Matrix::from_rows(vec![vec![BigInt::one(), BigInt::zero()], vec![-k, BigInt::one()]]).expect("2x2");
            u = &step * &u;
            g = a.transform(&u);
        }
        if g.entry(1, 1) < g.entry(0, 0) {
            u = &z2(0, 1, 1, 0) * &u;
            g = a.transform(&u);
        } else {
            break;
        }
    }
    if g.entry(0, 1).is_negative() {
        u = &z2(1, 0, 0, -1) * &u;
        g = a.transform(&u);
    }
    Ok(ReducedBasis { gram: g, transform: u })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Similarity {
    /// `a = scale · T · b · Tᵀ`.
    pub scale: Rational,
    pub transform: ZMatrix,
}

/// Inverse of a 2×2 integer matrix with determinant ±1.
fn unimodular_inverse_2d(u: &ZMatrix) -> ZMatrix {
    let det = u.det();
    debug_assert!(det.abs().is_one());
    Matrix::from_rows(vec![
        vec![&u[(1, 1)] * &det, -&u[(0, 1)] * &det],
        vec![-&u[(1, 0)] * &det, &u[(0, 0)] * &det],
    ])
    .expect("2x2")
}

/// Decide whether `a = λ·T·b·Tᵀ` for some rational `λ > 0` and `T ∈ GL₂(ℤ)`.
pub fn similarity_2d(a: &GramMatrix, b: &GramMatrix) -> Result<Option<Similarity>> {
    let ra = lagrange_reduce_2d(a)?;
    let rb = lagrange_reduce_2d(b)?;
    let scale = ra.gram.entry(0, 0) / rb.gram.entry(0, 0);
    let scaled = rb.gram.matrix().scale(&scale);
    if &scaled != ra.gram.matrix() {
        return Ok(None);
    }
    let transform = &unimodular_inverse_2d(&ra.transform) * &rb.transform;
    Ok(Some(Similarity { scale, transform }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Report {
    pub bound: u64,
    pub checked: u64,
    /// `(a, b)` with `dual_gram((1, a, b))` similar to the target.
    pub counterexamples: Vec<(u64, u64)>,
}

/// Reduced `(p, q, r)` of an integral binary form, same domain as
/// [`lagrange_reduce_2d`].
fn reduce_integral(mut p: BigInt, mut q: BigInt, mut r: BigInt) -> (BigInt, BigInt, BigInt) {
    loop {
        let k = round_rational(&Rational::new(q.clone(), p.clone()));
        if !k.is_zero() {
            r = &r - &k * &q * 2u32 + &k * &k * &p;
            q -= &k * &p;
        }
        if r < p {
            std::mem::swap(&mut p, &mut r);
        } else {
            break;
        }
    }
    (p, q.abs(), r)
}

/// Test every `v = (1, a, b)` with `0 ≤ a, b ≤ bound` for similarity of
/// `Λ_v*` to `target`. Sign changes of `a` or `b` give congruent Grams, so
/// nonnegative values suffice.
pub fn prop1_search(bound: u64, target: &GramMatrix) -> Result<Prop1Report> {
    if bound < 1 {
        return Err(Error::precondition("bound must be at least 1"));
    }
    if target.dim() != 2 {
        return Err(Error::dimension("prop1 target must be 2x2"));
    }
    // dual_gram((1, a, b)) = [[1 + a², ab], [ab, 1 + b²]] is integral, so
    // compare integer reductions against the target's canonical form
    let t = lagrange_reduce_2d(target)?.gram;
    let (tp, tq, tr) = (t.entry(0, 0), t.entry(0, 1), t.entry(1, 1));
    let mut counterexamples = Vec::new();
    let mut checked = 0;
    for a in 0..=bound {
        for b in 0..=bound {
            let (a2, b2) = (BigInt::from(a), BigInt::from(b));
            let (p, q, r) = reduce_integral(&a2 * &a2 + 1u32, &a2 * &b2, &b2 * &b2 + 1u32);
            let (p, q, r) = (Rational::from(p), Rational::from(q), Rational::from(r));
            checked += 1;
            if &q * tp == tq * &p && &r * tp == tr * &p {
                counterexamples.push((a, b));
            }
        }
    }
    Ok(Prop1Report { bound, checked, counterexamples })
}
