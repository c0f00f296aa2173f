//! The projection lattice `Λ_v` of `Zⁿ` onto `v⊥` and its dual `Λ_v* = Zⁿ ∩ v⊥`.
//!
//! Axis vectors always have first coordinate 1, `v = (1, v̂)`. With
//! `M = ‖v‖²` the Gram matrices are
//!
//! * primal: `A_v = I − v̂ᵀv̂ / M`, determinant `1/M`
//! * dual:   `A_v* = I + v̂ᵀv̂`, determinant `M`
//!
//! and they are exact inverses of each other.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ldl, Matrix, QMatrix, Rational, ZMatrix};

/// Integer vector `v = (1, v₁, …, v_{n−1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisVector {
    entries: Vec<BigInt>,
}

impl AxisVector {
    /// Build `(1, v̂)`.
    pub fn new(vhat: Vec<BigInt>) -> Self {
        let mut entries = Vec::with_capacity(vhat.len() + 1);
        entries.push(BigInt::one());
        entries.extend(vhat);
        AxisVector { entries }
    }

    pub fn from_entries(entries: Vec<BigInt>) -> Result<Self> {
        match entries.first() {
            Some(first) if first.is_one() && entries.len() >= 2 => Ok(AxisVector { entries }),
            Some(_) if entries.len() >= 2 => {
                Err(Error::precondition("axis vector must have first coordinate 1"))
            }
            _ => Err(Error::precondition("axis vector needs at least two coordinates")),
        }
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::from_entries(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn vhat(&self) -> &[BigInt] {
        &self.entries[1..]
    }

    /// `M = ‖v‖² = 1 + Σ v̂ᵢ²`.
    pub fn norm_sq(&self) -> BigInt {
        self.entries.iter().map(|x| x * x).sum()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(ToString::to_string).collect()
    }

    /// Representative with `v̂` made non-negative and sorted descending.
    pub fn canonical(&self) -> AxisVector {
        let mut vhat: Vec<BigInt> = self.vhat().iter().map(Signed::abs).collect();
        vhat.sort_by(|a, b| b.cmp(a));
        AxisVector::new(vhat)
    }
}

impl fmt::Display for AxisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for AxisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Symmetric positive-definite rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix(QMatrix);

impl GramMatrix {
    /// Validates symmetry and positive definiteness (exact leading pivots).
    pub fn new(m: QMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::dimension("Gram matrix must be square and non-empty"));
        }
        ldl(&m)?;
        Ok(GramMatrix(m))
    }

    /// For matrices that are positive definite by construction (congruences
    /// and inverses of Gram matrices).
    pub(crate) fn trusted(m: QMatrix) -> Self {
        debug_assert!(m.is_symmetric());
        GramMatrix(m)
    }

    pub fn from_integers(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(QMatrix::from_integers(rows)?)
    }

    pub fn identity(dim: usize) -> Self {
        GramMatrix(QMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> QMatrix {
        self.0
    }

    pub fn det(&self) -> Rational {
        self.0.det()
    }

    pub fn inverse(&self) -> GramMatrix {
        GramMatrix(self.0.inverse().expect("positive definite matrices are invertible"))
    }

    pub fn scale(&self, c: &Rational) -> Result<GramMatrix> {
        if !c.is_positive() {
            return Err(Error::precondition("Gram scale must be positive"));
        }
        Ok(GramMatrix(self.0.scale(c)))
    }

    /// `u · self · uᵀ` for a unimodular integer `u`.
    pub fn transform(&self, u: &ZMatrix) -> GramMatrix {
        GramMatrix(self.0.congruent(&u.to_rational()))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[(i, j)]
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gram{}", self.0)
    }
}

/// Row basis of a lattice: `rows` independent vectors in `cols`-space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorMatrix(QMatrix);

impl GeneratorMatrix {
    pub fn new(m: QMatrix) -> Result<Self> {
        if m.rows() == 0 || m.rows() > m.cols() || m.gram().det().is_zero() {
            return Err(Error::precondition("generator rows must be linearly independent"));
        }
        Ok(GeneratorMatrix(m))
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.cols()
    }

    pub fn gram(&self) -> GramMatrix {
        GramMatrix::trusted(self.0.gram())
    }
}

fn r(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

/// `P = Iₙ − vᵀv / M`.
pub fn projector_matrix(v: &AxisVector) -> QMatrix {
    let m = r(&v.norm_sq());
    let e = v.entries();
    Matrix::from_fn(v.n(), v.n(), |i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        delta - r(&(&e[i] * &e[j])) / &m
    })
}

/// `A_v = I − v̂ᵀv̂ / M`, the Gram of `Λ_v` in the basis given by [`primal_generator`].
pub fn primal_gram(v: &AxisVector) -> GramMatrix {
    let m = r(&v.norm_sq());
    let h = v.vhat();
    GramMatrix::trusted(Matrix::from_fn(h.len(), h.len(), |i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        delta - r(&(&h[i] * &h[j])) / &m
    }))
}

/// `A_v* = I + v̂ᵀv̂`, the Gram of `Λ_v*` in the basis of [`dual_generator`].
pub fn dual_gram(v: &AxisVector) -> GramMatrix {
    GramMatrix::trusted(dual_gram_integer(v).to_rational())
}

pub(crate) fn dual_gram_integer(v: &AxisVector) -> ZMatrix {
    let h = v.vhat();
    Matrix::from_fn(h.len(), h.len(), |i, j| {
        let delta = if i == j { BigInt::one() } else { BigInt::zero() };
        delta + &h[i] * &h[j]
    })
}

/// `[−v̂ᵀ | I_{n−1}]`: an integer basis of `Zⁿ ∩ v⊥`.
pub fn dual_generator(v: &AxisVector) -> GeneratorMatrix {
    GeneratorMatrix(dual_generator_integer(v).to_rational())
}

pub(crate) fn dual_generator_integer(v: &AxisVector) -> ZMatrix {
    let h = v.vhat();
    Matrix::from_fn(h.len(), v.n(), |i, j| match j {
        0 => -&h[i],
        _ if j == i + 1 => BigInt::one(),
        _ => BigInt::zero(),
    })
}

/// Rows `2..n` of `G·P`, where `G` is `Iₙ` with its first row replaced by `v`.
/// The first row of `G·P` is `v·P = 0` and is dropped.
pub fn primal_generator(v: &AxisVector) -> GeneratorMatrix {
    let mut basis = ZMatrix::identity(v.n()).to_rows();
    basis[0] = v.entries().to_vec();
    let g = Matrix::from_rows(basis).expect("square").to_rational();
    let gp = &g * &projector_matrix(v);
    GeneratorMatrix(Matrix::from_fn(v.n() - 1, v.n(), |i, j| gp[(i + 1, j)].clone()))
}

/// `Λ_v` and `Λ_v*` for one axis vector, with all Gram data precomputed.
#[derive(Clone, Debug)]
pub struct ProjectionLattice {
    pub v: AxisVector,
    pub gram_primal: GramMatrix,
    pub gram_dual: GramMatrix,
    pub gen_dual: GeneratorMatrix,
}

impl ProjectionLattice {
    pub fn new(v: AxisVector) -> Self {
        ProjectionLattice {
            gram_primal: primal_gram(&v),
            gram_dual: dual_gram(&v),
            gen_dual: dual_generator(&v),
            v,
        }
    }

    pub fn norm_sq(&self) -> BigInt {
        self.v.norm_sq()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dot, int, rat};

    fn v(e: &[i64]) -> AxisVector {
        AxisVector::from_i64(e).unwrap()
    }

    #[test]
    fn axis_vector_validation() {
        assert!(AxisVector::from_i64(&[2, 1]).is_err());
        assert!(AxisVector::from_i64(&[1]).is_err());
        assert_eq!(v(&[1, 2, 4, 7]).norm_sq(), BigInt::from(70));
        assert_eq!(v(&[1, -3, 5, 0]).canonical(), v(&[1, 5, 3, 0]));
    }

    #[test]
    fn projector_axis_aligned() {
        let p = projector_matrix(&v(&[1, 0, 0]));
        assert_eq!(p, QMatrix::from_integers(vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap());
    }

    #[test]
    fn projector_one_one_zero() {
        let p = projector_matrix(&v(&[1, 1, 0]));
        let expected = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(-1, 2), int(0)],
            vec![rat(-1, 2), rat(1, 2), int(0)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(&p * &p, p);
    }

    #[test]
    fn primal_gram_examples() {
        let g = primal_gram(&v(&[1, 1, 0]));
        let expected = Matrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(0), int(1)]]).unwrap();
        assert_eq!(g.matrix(), &expected);
        let hex = primal_gram(&v(&[1, 1, 1]));
        let expected = Matrix::from_rows(vec![
            vec![rat(2, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(2, 3)],
        ])
        .unwrap();
        assert_eq!(hex.matrix(), &expected);
        assert_eq!(primal_gram(&v(&[1, 0, 0, 0])), GramMatrix::identity(3));
    }

    #[test]
    fn dual_gram_examples() {
        assert_eq!(dual_gram(&v(&[1, 2, 2])), GramMatrix::from_integers(vec![vec![5, 4], vec![4, 5]]).unwrap());
        assert_eq!(dual_gram(&v(&[1, 0, 0])), GramMatrix::identity(2));
        let g = dual_gram(&v(&[1, 2, 4, 7]));
        assert_eq!(
            g,
            GramMatrix::from_integers(vec![vec![5, 8, 14], vec![8, 17, 28], vec![14, 28, 50]]).unwrap()
        );
        assert_eq!(g.det(), int(70));
    }

    #[test]
    fn dual_generator_examples() {
        let g = dual_generator(&v(&[1, 2, 2]));
        assert_eq!(g.matrix(), &QMatrix::from_integers(vec![vec![-2, 1, 0], vec![-2, 0, 1]]).unwrap());
        assert_eq!(g.gram(), dual_gram(&v(&[1, 2, 2])));
        let e = dual_generator(&v(&[1, 0, 0]));
        assert_eq!(e.matrix(), &QMatrix::from_integers(vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap());
        let vv = v(&[1, 3, -5, 8]);
        let gz = dual_generator_integer(&vv);
        for i in 0..gz.rows() {
            assert!(dot(gz.row(i), vv.entries()).is_zero());
        }
    }

    #[test]
    fn primal_generator_examples() {
        let g = primal_generator(&v(&[1, 0, 0]));
        assert_eq!(g.matrix(), &QMatrix::from_integers(vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap());
        let vv = v(&[1, 1, 0]);
        assert_eq!(primal_generator(&vv).gram(), primal_gram(&vv));
        let vv = v(&[1, 4, -2, 9]);
        let g = primal_generator(&vv);
        assert_eq!(g.gram(), primal_gram(&vv));
        let ev: Vec<Rational> = vv.entries().iter().map(r).collect();
        for i in 0..g.rank() {
            assert!(dot(g.matrix().row(i), &ev).is_zero());
        }
    }

    #[test]
    fn projection_lattice_invariants() {
        let pl = ProjectionLattice::new(v(&[1, 2, 4, 7]));
        let m = r(&pl.norm_sq());
        assert_eq!(pl.gram_primal.matrix() * pl.gram_dual.matrix(), QMatrix::identity(3));
        assert_eq!(pl.gram_primal.det(), m.recip());
        assert_eq!(pl.gram_dual.det(), m);
        assert_eq!(pl.gen_dual.gram(), pl.gram_dual);
    }

    #[test]
    fn gram_validation() {
        assert!(GramMatrix::from_integers(vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(GramMatrix::from_integers(vec![vec![1, 0], vec![1, 1]]).is_err());
        assert!(GeneratorMatrix::new(QMatrix::from_integers(vec![vec![1, 2], vec![2, 4]]).unwrap()).is_err());
    }
}
