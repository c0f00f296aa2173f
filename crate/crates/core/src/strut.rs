//! Fat struts: axis vectors whose projection lattice has a large minimum.
//!
//! The open cylinder around the segment `0 → v` that avoids every other
//! point of `ℤⁿ` has squared radius `λ₁²(Λ_v)`. Searches rank candidates by
//! center density of `Λ_v`, which for fixed `n` orders them the same way as
//! the cylinder volume `radius^{n−1}·‖v‖`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{ln_rational, rational_to_f64, Rational};
use crate::projection::{primal_gram, AxisVector};
use crate::reduction::{density_from_parts, shortest_vector};

/// Largest candidate count a search will accept.
pub const CANDIDATE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct StrutReport {
    pub v: AxisVector,
    pub m: BigInt,
    /// `λ₁²(Λ_v)`, the squared strut radius.
    pub min_norm_primal: Rational,
    pub radius: f64,
    pub center_density: f64,
    /// `radius^{n−1} · ‖v‖`.
    pub volume_proxy: f64,
}

impl StrutReport {
    pub fn new(v: AxisVector) -> Result<Self> {
        let min_norm_primal = strut_radius(&v)?;
        let m = v.norm_sq();
        let d = v.n() - 1;
        let mq = Rational::from_integer(m.clone());
        let (center_density, _) = density_from_parts(&min_norm_primal, &mq.recip(), d);
        let radius = rational_to_f64(&min_norm_primal).sqrt();
        let volume_proxy =
            (0.5 * d as f64 * ln_rational(&min_norm_primal) + 0.5 * ln_rational(&mq)).exp();
        Ok(StrutReport { v, m, min_norm_primal, radius, center_density, volume_proxy })
    }

    /// `volume_proxy²  = (λ₁²)^{n−1} · M`, exact.
    pub fn volume_key(&self) -> Rational {
        let d = self.v.n() - 1;
        num_traits::pow(self.min_norm_primal.clone(), d) * Rational::from_integer(self.m.clone())
    }
}

/// Better reports first; ties broken by the lexicographically smaller `v`.
fn rank(a: &StrutReport, b: &StrutReport) -> Ordering {
    b.volume_key().cmp(&a.volume_key()).then_with(|| a.v.cmp(&b.v))
}

/// Squared radius of the fat strut along `v`: `λ₁²` of the primal Gram.
pub fn strut_radius(v: &AxisVector) -> Result<Rational> {
    Ok(shortest_vector(&primal_gram(v))?.min_norm)
}

fn check_dim(n: usize) -> Result<()> {
    if (3..=5).contains(&n) {
        Ok(())
    } else {
        Err(Error::precondition("strut search supports n = 3, 4, 5"))
    }
}

/// Rough count of nonincreasing nonnegative `v̂ ∈ ℤ^{n−1}` with
/// `1 + |v̂|² ≤ m_max`: the ball volume `V_{n−1}(√(m_max − 1))` divided by
/// the `2^{n−1}(n−1)!` signed permutations.
pub fn estimated_candidates(n: usize, m_max: &BigInt) -> u64 {
    let d = n - 1;
    let r2 = (m_max - 1u32).to_f64().unwrap_or(f64::INFINITY).max(0.0);
    let ball = crate::reduction::unit_ball_volume(d) * r2.powf(d as f64 / 2.0);
    let sym: f64 = (1..=d).map(|k| 2.0 * k as f64).product();
    let est = ball / sym + (d as f64 + 1.0) * (r2.sqrt() + 1.0).powi(d as i32 - 1);
    if est.is_finite() && est < u64::MAX as f64 {
        est.ceil() as u64
    } else {
        u64::MAX
    }
}

/// All `v = (1, v̂)` with `v̂` nonincreasing, nonnegative, and `M` in range.
fn candidates(n: usize, m_min: &BigInt, m_max: &BigInt) -> Vec<AxisVector> {
    fn rec(
        left: usize,
        cap: &BigInt,
        budget: &BigInt,
        prefix: &mut Vec<BigInt>,
        m_min: &BigInt,
        out: &mut Vec<AxisVector>,
    ) {
        if left == 0 {
            let used: BigInt = prefix.iter().map(|x| x * x).sum::<BigInt>() + 1u32;
            if &used >= m_min {
                out.push(AxisVector::new(prefix.clone()));
            }
            return;
        }
        let mut x = BigInt::zero();
        while &x <= cap && &x * &x <= *budget {
            let rest = budget - &x * &x;
            prefix.push(x.clone());
            rec(left - 1, &x, &rest, prefix, m_min, out);
            prefix.pop();
            x += 1u32;
        }
    }
    let mut out = Vec::new();
    if m_max < &BigInt::one() {
        return out;
    }
    let budget = m_max - 1u32;
    rec(n - 1, &budget, &budget, &mut Vec::new(), m_min, &mut out);
    out
}

fn evaluate(cands: Vec<AxisVector>, workers: usize) -> Result<Vec<StrutReport>> {
    let workers = workers.max(1);
    let chunk = cands.len().div_ceil(workers).max(1);
    let parts: Vec<Result<Vec<StrutReport>>> = std::thread::scope(|s| {
        let handles: Vec<_> = cands
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().cloned().map(StrutReport::new).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("strut worker panicked")).collect()
    });
    let mut all = Vec::with_capacity(cands.len());
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

fn guarded_candidates(n: usize, m_min: &BigInt, m_max: &BigInt) -> Result<Vec<AxisVector>> {
    check_dim(n)?;
    let estimated = estimated_candidates(n, m_max);
    if estimated > CANDIDATE_LIMIT {
        return Err(Error::SearchRefused { estimated, limit: CANDIDATE_LIMIT });
    }
    Ok(candidates(n, m_min, m_max))
}

/// The `top_k` candidates with `M ∈ [m_min, m_max]`, best first.
pub fn strut_search(
    n: usize,
    m_min: &BigInt,
    m_max: &BigInt,
    top_k: usize,
    workers: usize,
) -> Result<Vec<StrutReport>> {
    let mut all = evaluate(guarded_candidates(n, m_min, m_max)?, workers)?;
    all.sort_by(rank);
    all.truncate(top_k);
    Ok(all)
}

/// One row for every `M ≤ m_max` whose best strut matches or beats every
/// smaller `M`.
pub fn strut_frontier(n: usize, m_max: &BigInt, workers: usize) -> Result<Vec<StrutReport>> {
    let mut all = evaluate(guarded_candidates(n, &BigInt::one(), m_max)?, workers)?;
    all.sort_by(|a, b| a.m.cmp(&b.m).then_with(|| rank(a, b)));
    let mut rows: Vec<StrutReport> = Vec::new();
    let mut best_key: Option<Rational> = None;
    let mut last_m: Option<BigInt> = None;
    for r in all {
        if last_m.as_ref() == Some(&r.m) {
            continue;
        }
        last_m = Some(r.m.clone());
        let key = r.volume_key();
        if best_key.as_ref().is_none_or(|b| key >= *b) {
            best_key = Some(key);
            rows.push(r);
        }
    }
    Ok(rows)
}
