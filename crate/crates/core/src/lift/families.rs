//! Closed-form axis vectors for specific target lattices.
//!
//! Each closed form equals the vector produced by lifting a particular
//! generator matrix; [`Family::lifted_basis`] reproduces that lift so the
//! scaled Gram can be compared against the target.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{construct_v, LiftMode};
use crate::catalog::{self, dm_dual_generator, leech_generator};
use crate::error::{Error, Result};
use crate::exact::{floor_with_retry, HighPrecReal, Matrix, Rational, ZMatrix, DEFAULT_PRECISION};
use crate::projection::{AxisVector, GramMatrix};

fn require_positive(name: &str, x: &BigInt) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::precondition(format!("{name} must be at least 1")))
    }
}

/// `(1, 2t, (2t)², …, (2t)^{m−1}, t·((2t)^m − 1)/(2t − 1))`, the lift of
/// `D_m*` at `w = 2t`.
pub fn family_dm(m: usize, t: &BigInt) -> Result<AxisVector> {
    if m < 3 {
        return Err(Error::precondition("D_m family needs m >= 3"));
    }
    require_positive("t", t)?;
    let w: BigInt = t * 2;
    let mut vhat = Vec::with_capacity(m);
    let mut p = w.clone();
    for _ in 1..m {
        vhat.push(p.clone());
        p *= &w;
    }
    // p = (2t)^m; the geometric series divides exactly
    let (q, r) = (&p - 1u32).div_rem(&(&w - 1u32));
    debug_assert!(r.is_zero());
    vhat.push(t * q);
    Ok(AxisVector::new(vhat))
}

/// `(1, 2t, 4t², 4t³ + 2t² + t)`: projections converging to FCC.
pub fn family_fcc(t: &BigInt) -> Result<AxisVector> {
    require_positive("t", t)?;
    let t2 = t * t;
    let t3 = &t2 * t;
    Ok(AxisVector::new(vec![t * 2, &t2 * 4, t3 * 4 + &t2 * 2 + t]))
}

/// `(1, 2w² − w + 1, 2w² + w + 1, 4w³ + 3w)`: FCC with an `O(1/w²)` residual.
pub fn family_fcc_fast(w: &BigInt) -> Result<AxisVector> {
    require_positive("w", w)?;
    let w2 = w * w;
    Ok(AxisVector::new(vec![
        &w2 * 2 - w + 1u32,
        &w2 * 2 + w + 1u32,
        &w2 * w * 4 + w * 3,
    ]))
}

/// Lifted basis of the fast FCC construction: `−[wL | 0] + [0 | I]` plus a
/// correction that cancels every order-`w` term of the Gram.
pub fn fcc_fast_lift(w: &BigInt) -> Result<ZMatrix> {
    require_positive("w", w)?;
    let l = catalog::bcc_generator();
    let correction = [[-1, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0]];
    Ok(Matrix::from_fn(3, 4, |i, j| {
        let base = if j < 3 { -(w * &l[(i, j)]) } else { BigInt::zero() };
        let unit = if j == i + 1 { BigInt::one() } else { BigInt::zero() };
        base + unit + BigInt::from(correction[i][j])
    }))
}

/// E8 lift at even `w`: `v₁ = 2w`, `v₂ = 2w² − w`,
/// `vᵢ = w(v_{i−1} − v_{i−2})` for `i = 3..7`, `v₈ = (w/2)(1 + Σ_{i≤7} vᵢ)`.
pub fn family_e8(w: &BigInt) -> Result<AxisVector> {
    require_positive("w", w)?;
    if w.is_odd() {
        return Err(Error::precondition("the E8 family needs an even w"));
    }
    let mut v: Vec<BigInt> = Vec::with_capacity(8);
    v.push(w * 2);
    v.push(w * w * 2 - w);
    for i in 2..7 {
        let next = w * (&v[i - 1] - &v[i - 2]);
        v.push(next);
    }
    let sum: BigInt = v.iter().sum();
    v.push(w / 2 * (sum + 1u32));
    Ok(AxisVector::new(v))
}

/// Index sets `S_i` (1-based) of the Leech recurrence.
const LEECH_S: &[(usize, &[usize])] = &[
    (8, &[1, 2, 3, 4, 5, 6, 7]),
    (12, &[1, 2, 3, 8, 9, 10, 11]),
    (14, &[1, 4, 5, 8, 9, 12, 13]),
    (15, &[2, 4, 6, 8, 10, 12, 14]),
    (16, &[3, 4, 7, 8, 11, 12, 15]),
    (18, &[2, 4, 7, 8, 9, 16, 17]),
    (19, &[3, 4, 5, 8, 10, 16, 18]),
    (20, &[1, 4, 6, 8, 11, 16, 19]),
    (21, &[1, 2, 3, 4, 8, 12, 16, 20]),
    (22, &[8, 9, 12, 13, 16, 17, 20, 21]),
    (23, &[8, 10, 12, 14, 16, 18, 20, 22]),
];

fn leech_s(i: usize) -> Option<&'static [usize]> {
    LEECH_S.iter().find(|(k, _)| *k == i).map(|(_, s)| *s)
}

/// Leech lift: a 25-coordinate vector built by the recurrence over the sets `S_i`.
pub fn family_leech(w: &BigInt) -> Result<AxisVector> {
    require_positive("w", w)?;
    // v[0] is unused so indices match the 1-based recurrence
    let mut v: Vec<BigInt> = vec![BigInt::zero(); 25];
    v[1] = w * 8;
    for i in 2..=23 {
        v[i] = match (i, leech_s(i)) {
            (21..=23, Some(s)) => w * 2 * s.iter().map(|&j| &v[j]).sum::<BigInt>(),
            (_, Some(s)) => w * 2 * (s.iter().map(|&j| &v[j]).sum::<BigInt>() + 1u32),
            (_, None) => w * 4 * (&v[i - 1] + 1u32),
        };
    }
    let total: BigInt = v[1..=23].iter().sum();
    v[24] = w * (total - 3u32);
    Ok(AxisVector::new(v.split_off(1)))
}

fn sqrt_floor(q: Rational) -> Result<BigInt> {
    floor_with_retry(DEFAULT_PRECISION, |p| HighPrecReal::sqrt(&q, p))
}

/// `(1, ⌊√3 w⌋, ⌊√3 w⌋·⌊√(5/3) w⌋ + ⌊w/√3⌋)`, the lift of the Gram `[[3,1],[1,2]]`.
pub fn family_51(w: &BigInt) -> Result<AxisVector> {
    require_positive("w", w)?;
    let w2 = Rational::from_integer(w * w);
    let a = sqrt_floor(&w2 * Rational::from_integer(3.into()))?;
    let b = sqrt_floor(&w2 * Rational::new(5.into(), 3.into()))?;
    let c = sqrt_floor(&w2 / Rational::from_integer(3.into()))?;
    Ok(AxisVector::new(vec![a.clone(), a * b + c]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Dm { m: usize, t: BigInt },
    Fcc { t: BigInt },
    FccFast { w: BigInt },
    E8 { w: BigInt },
    Leech { w: BigInt },
    FiveOne { w: BigInt },
}

pub const FAMILY_NAMES: &[&str] = &["dm", "fcc", "fcc-fast", "e8", "leech", "5_1"];

impl Family {
    /// `name` is one of [`FAMILY_NAMES`]; `dm` and `fcc` take `t`, the rest `w`.
    pub fn from_name(name: &str, m: Option<usize>, t: Option<BigInt>, w: Option<BigInt>) -> Result<Family> {
        let need = |x: Option<BigInt>, flag: &str| {
            x.ok_or_else(|| Error::precondition(format!("family {name} needs --{flag}")))
        };
        Ok(match name {
            "dm" => Family::Dm {
                m: m.ok_or_else(|| Error::precondition("family dm needs --dim"))?,
                t: need(t, "t")?,
            },
            "fcc" => Family::Fcc { t: need(t, "t")? },
            "fcc-fast" => Family::FccFast { w: need(w, "w")? },
            "e8" => Family::E8 { w: need(w, "w")? },
            "leech" => Family::Leech { w: need(w, "w")? },
            "5_1" => Family::FiveOne { w: need(w, "w")? },
            _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Dm { .. } => "dm",
            Family::Fcc { .. } => "fcc",
            Family::FccFast { .. } => "fcc-fast",
            Family::E8 { .. } => "e8",
            Family::Leech { .. } => "leech",
            Family::FiveOne { .. } => "5_1",
        }
    }

    /// Same family at a different parameter value.
    pub fn with_parameter(&self, p: BigInt) -> Family {
        match self {
            Family::Dm { m, .. } => Family::Dm { m: *m, t: p },
            Family::Fcc { .. } => Family::Fcc { t: p },
            Family::FccFast { .. } => Family::FccFast { w: p },
            Family::E8 { .. } => Family::E8 { w: p },
            Family::Leech { .. } => Family::Leech { w: p },
            Family::FiveOne { .. } => Family::FiveOne { w: p },
        }
    }

    pub fn vector(&self) -> Result<AxisVector> {
        match self {
            Family::Dm { m, t } => family_dm(*m, t),
            Family::Fcc { t } => family_fcc(t),
            Family::FccFast { w } => family_fcc_fast(w),
            Family::E8 { w } => family_e8(w),
            Family::Leech { w } => family_leech(w),
            Family::FiveOne { w } => family_51(w),
        }
    }

    /// The `w` used to lift (`2t` for the `D_m` families).
    pub fn lift_scale(&self) -> BigInt {
        match self {
            Family::Dm { t, .. } | Family::Fcc { t } => t * 2,
            Family::FccFast { w } | Family::E8 { w } | Family::Leech { w } | Family::FiveOne { w } => {
                w.clone()
            }
        }
    }

    /// Gram whose Cholesky factor is lifted; `None` for the hand-corrected
    /// fast FCC basis.
    fn lift_source(&self) -> Option<GramMatrix> {
        match self {
            Family::Dm { m, .. } => Some(dm_dual_generator(*m).gram()),
            Family::Fcc { .. } => Some(dm_dual_generator(3).gram()),
            Family::FccFast { .. } => None,
            Family::E8 { .. } => Some(catalog::lookup("E8").expect("builtin").gram),
            Family::Leech { .. } => Some(GramMatrix::trusted(leech_generator().to_rational().gram())),
            Family::FiveOne { .. } => Some(catalog::lookup("5_1").expect("builtin").gram),
        }
    }

    /// Integer basis of `Λ_v*` in which the Gram approaches `target / scale`.
    pub fn lifted_basis(&self) -> Result<ZMatrix> {
        if let Family::E8 { w } = self {
            family_e8(w)?;
        }
        match self.lift_source() {
            Some(g) => Ok(construct_v(&g, &self.lift_scale(), LiftMode::Dual)?.lifted),
            None => fcc_fast_lift(&self.lift_scale()),
        }
    }

    /// Catalog Gram approached by `scale · L_w·L_wᵀ`.
    pub fn target(&self) -> GramMatrix {
        match self {
            Family::Dm { m, .. } => dm_dual_generator(*m).gram(),
            Family::Fcc { .. } => catalog::lookup("D3*").expect("builtin").gram,
            Family::FccFast { .. } => catalog::lookup("bcc").expect("builtin").gram,
            Family::E8 { .. } => catalog::lookup("E8").expect("builtin").gram,
            Family::Leech { .. } => catalog::leech_gram(),
            Family::FiveOne { .. } => catalog::lookup("5_1").expect("builtin").gram,
        }
    }

    pub fn scale(&self) -> Rational {
        let w = self.lift_scale();
        let w2 = Rational::from_integer(&w * &w);
        match self {
            Family::Leech { .. } => (w2 * Rational::from_integer(8.into())).recip(),
            _ => w2.recip(),
        }
    }

    /// `L_w·L_wᵀ` in the lifted basis.
    pub fn lifted_gram(&self) -> Result<GramMatrix> {
        Ok(GramMatrix::trusted(self.lifted_basis()?.to_rational().gram()))
    }

    /// `‖target − scale · L_w·L_wᵀ‖∞`.
    pub fn residual(&self) -> Result<Rational> {
        let g = self.lifted_gram()?;
        Ok((self.target().matrix() - &g.matrix().scale(&self.scale())).max_abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::lift::{normalize_lift, row_reduce_lift};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn av(e: &[i64]) -> AxisVector {
        AxisVector::from_i64(e).unwrap()
    }

    #[test]
    fn dm_examples() {
        assert_eq!(family_dm(3, &b(1)).unwrap(), av(&[1, 2, 4, 7]));
        assert_eq!(family_dm(3, &b(2)).unwrap(), av(&[1, 4, 16, 42]));
        assert_eq!(family_dm(4, &b(1)).unwrap(), av(&[1, 2, 4, 8, 15]));
        assert!(family_dm(2, &b(1)).is_err());
        assert!(family_dm(3, &b(0)).is_err());
    }

    #[test]
    fn fcc_examples() {
        assert_eq!(family_fcc(&b(1)).unwrap(), av(&[1, 2, 4, 7]));
        assert_eq!(family_fcc(&b(2)).unwrap(), av(&[1, 4, 16, 42]));
        assert_eq!(family_fcc(&b(3)).unwrap(), av(&[1, 6, 36, 129]));
        for t in 1..=10 {
            assert_eq!(family_fcc(&b(t)).unwrap(), family_dm(3, &b(t)).unwrap());
        }
    }

    #[test]
    fn fcc_fast_examples() {
        assert_eq!(family_fcc_fast(&b(1)).unwrap(), av(&[1, 2, 4, 7]));
        assert_eq!(family_fcc_fast(&b(2)).unwrap(), av(&[1, 7, 11, 38]));
    }

    #[test]
    fn fcc_fast_lift_normalizes_to_closed_form() {
        for w in 1..=12 {
            let lifted = fcc_fast_lift(&b(w)).unwrap();
            let (v, h) = normalize_lift(&lifted).unwrap();
            assert_eq!(v, family_fcc_fast(&b(w)).unwrap(), "w = {w}");
            assert!(h.det().abs().is_one());
        }
        assert_eq!(
            fcc_fast_lift(&b(5)).unwrap(),
            Matrix::from_rows(
                [[4, 6, -5, 0], [-6, 5, -4, 0], [-5, -5, -5, 1]]
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect()
            )
            .unwrap()
        );
    }

    #[test]
    fn fcc_fast_gram_has_no_linear_terms() {
        for w in [1i64, 3, 10] {
            let g = Family::FccFast { w: b(w) }.lifted_gram().unwrap();
            let w2 = w * w;
            let expected = GramMatrix::from_integers(vec![
                vec![3 * w2 + 2, w2 + 1, -w2],
                vec![w2 + 1, 3 * w2 + 2, w2],
                vec![-w2, w2, 3 * w2 + 1],
            ])
            .unwrap();
            assert_eq!(g, expected);
            assert_eq!(Family::FccFast { w: b(w) }.residual().unwrap(), rat(2, w2));
        }
    }

    #[test]
    fn e8_examples() {
        let v = family_e8(&b(2)).unwrap();
        assert_eq!(v.vhat()[0], b(4));
        assert_eq!(v.vhat()[1], b(6));
        assert_eq!(v.vhat()[2], b(4));
        assert_eq!(v.n(), 9);
        assert!(family_e8(&b(3)).is_err());
    }

    #[test]
    fn leech_examples() {
        let v = family_leech(&b(1)).unwrap();
        assert_eq!(v.n(), 25);
        assert_eq!(v.vhat()[0], b(8));
        assert_eq!(v.vhat()[1], b(36));
        let s: BigInt = v.vhat()[..23].iter().sum();
        assert_eq!(v.vhat()[23], s - 3);
        for w in 1..=4 {
            let v = family_leech(&b(w)).unwrap();
            assert!(v.vhat()[..7].windows(2).all(|p| p[0] < p[1]));
        }
        // entries leave the 64-bit range quickly
        assert!(family_leech(&b(4)).unwrap().vhat()[23].bits() > 64);
    }

    #[test]
    fn five_one_examples() {
        assert_eq!(family_51(&b(10)).unwrap(), av(&[1, 17, 209]));
        assert_eq!(family_51(&b(1)).unwrap(), av(&[1, 1, 1]));
        assert_eq!(family_51(&b(100)).unwrap(), av(&[1, 173, 173 * 129 + 57]));
    }

    #[test]
    fn five_one_matches_integer_square_roots() {
        for w in 1..200i64 {
            let a = BigInt::from(3 * w * w).sqrt();
            let bb = BigInt::from(5 * w * w / 3).sqrt();
            let c = BigInt::from(w * w / 3).sqrt();
            let expected = AxisVector::new(vec![a.clone(), a * bb + c]);
            assert_eq!(family_51(&b(w)).unwrap(), expected, "w = {w}");
        }
    }

    #[test]
    fn closed_forms_match_lifts() {
        let fams = [
            Family::Dm { m: 4, t: b(3) },
            Family::Dm { m: 5, t: b(2) },
            Family::Fcc { t: b(5) },
            Family::E8 { w: b(2) },
            Family::E8 { w: b(6) },
            Family::Leech { w: b(1) },
            Family::Leech { w: b(3) },
            Family::FiveOne { w: b(10) },
            Family::FiveOne { w: b(77) },
        ];
        for f in fams {
            let (v, _) = row_reduce_lift(&f.lifted_basis().unwrap()).unwrap();
            assert_eq!(v, f.vector().unwrap(), "{f:?}");
        }
    }

    #[test]
    fn from_name_parses() {
        assert_eq!(
            Family::from_name("fcc", None, Some(b(2)), None).unwrap().vector().unwrap(),
            av(&[1, 4, 16, 42])
        );
        assert!(Family::from_name("dm", None, Some(b(2)), None).is_err());
        assert!(Family::from_name("e8", None, None, None).is_err());
        assert!(Family::from_name("nope", None, None, Some(b(1))).is_err());
        assert!(Family::E8 { w: b(3) }.lifted_basis().is_err());
    }
}
