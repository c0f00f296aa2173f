//! Built-in target lattices.
//!
//! Every entry is stored as an exact Gram matrix. The E8 and Leech entries
//! come from the standard lower-triangular generator matrices (Conway and
//! Sloane, *Sphere Packings, Lattices and Groups*, p. 121 and Fig. 4.12),
//! which are also exposed here because the closed-form vector families are
//! lifts of exactly those generators.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{rat, Matrix, QMatrix, ZMatrix};
use crate::projection::GramMatrix;

#[derive(Clone, Debug)]
pub struct LatticeCatalogEntry {
    pub name: String,
    pub gram: GramMatrix,
    pub notes: String,
}

/// Names accepted by [`lookup`], besides the `Z<d>` and `D<m>*` patterns.
pub const NAMES: &[&str] = &["A2", "D3", "D3*", "bcc", "D4", "E8", "Leech", "5_1", "2Z+Z"];

fn entry(name: &str, gram: GramMatrix, notes: &str) -> LatticeCatalogEntry {
    LatticeCatalogEntry { name: name.to_string(), gram, notes: notes.to_string() }
}

fn integer_gram(rows: Vec<Vec<i64>>) -> GramMatrix {
    GramMatrix::from_integers(rows).expect("catalog Gram matrices are positive definite")
}

pub fn lookup(name: &str) -> Result<LatticeCatalogEntry> {
    if let Some(d) = name.strip_prefix('Z').and_then(|d| d.parse::<usize>().ok()) {
        if d == 0 {
            return Err(Error::precondition("Z0 has no Gram matrix"));
        }
        return Ok(entry(name, GramMatrix::identity(d), "cubic lattice"));
    }
    if let Some(m) = name
        .strip_prefix('D')
        .and_then(|s| s.strip_suffix('*'))
        .and_then(|m| m.parse::<usize>().ok())
    {
        if m < 3 {
            return Err(Error::precondition("D<m>* needs m >= 3"));
        }
        return Ok(entry(
            name,
            dm_dual_generator(m).gram(),
            "dual of D_m; rows e_1..e_{m-1} and (1/2, ..., 1/2)",
        ));
    }
    let e = match name {
        "A2" => entry("A2", integer_gram(vec![vec![2, 1], vec![1, 2]]), "hexagonal lattice"),
        "D3" => entry(
            "D3",
            integer_gram(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
            "face-centred cubic lattice, min norm 2, det 4",
        ),
        "D3*" => entry("D3*", dm_dual_generator(3).gram(), "body-centred cubic lattice, det 1/4"),
        "bcc" => entry(
            "bcc",
            gram_of(&bcc_generator().to_rational()),
            "4 * D3*, rows (-1,-1,1), (1,-1,1), (1,1,1)",
        ),
        "D4" => entry(
            "D4",
            integer_gram(vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ]),
            "checkerboard lattice D4, min norm 2, det 4",
        ),
        "E8" => entry(
            "E8",
            gram_of(&e8_generator()),
            "E8 from the lower-triangular generator of SPLAG p. 121; min norm 2, det 1",
        ),
        "Leech" => entry("Leech", leech_gram(), "Leech lattice, SPLAG Fig. 4.12 generator / sqrt(8); min norm 4, det 1"),
        "5_1" => entry("5_1", integer_gram(vec![vec![3, 1], vec![1, 2]]), "determinant-5 binary form"),
        "2Z+Z" => entry("2Z+Z", integer_gram(vec![vec![4, 0], vec![0, 1]]), "2Z (+) Z"),
        _ => return Err(Error::Parse(format!("unknown lattice {name:?}"))),
    };
    Ok(e)
}

fn gram_of(generator: &QMatrix) -> GramMatrix {
    GramMatrix::new(generator.gram()).expect("generator rows are independent")
}

/// Generator of `D_m*`: `e_1, …, e_{m−1}` and `(½, …, ½)`.
pub fn dm_dual_generator(m: usize) -> crate::projection::GeneratorMatrix {
    let half = rat(1, 2);
    let g = Matrix::from_fn(m, m, |i, j| {
        if i == m - 1 {
            half.clone()
        } else if i == j {
            rat(1, 1)
        } else {
            rat(0, 1)
        }
    });
    crate::projection::GeneratorMatrix::new(g).expect("independent rows")
}

/// The 3×3 generator of 4·D3* used by the fast FCC construction.
pub fn bcc_generator() -> ZMatrix {
    Matrix::from_rows(
        [[-1, -1, 1], [1, -1, 1], [1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .expect("square")
}

/// Lower-triangular E8 generator with diagonal (2, 1, …, 1, ½).
pub fn e8_generator() -> QMatrix {
    Matrix::from_fn(8, 8, |i, j| match (i, j) {
        (0, 0) => rat(2, 1),
        (7, _) => rat(1, 2),
        (i, j) if i == j => rat(1, 1),
        (i, j) if j + 1 == i => rat(-1, 1),
        _ => rat(0, 1),
    })
}

/// Columns (1-based) carrying a 2 in the octad-type rows of the Leech
/// generator, keyed by row. Rows 21–23 have no entry in column 1.
const LEECH_OCTAD_ROWS: &[(usize, &[usize])] = &[
    (8, &[1, 2, 3, 4, 5, 6, 7, 8]),
    (12, &[1, 2, 3, 4, 9, 10, 11, 12]),
    (14, &[1, 2, 5, 6, 9, 10, 13, 14]),
    (15, &[1, 3, 5, 7, 9, 11, 13, 15]),
    (16, &[1, 4, 5, 8, 9, 12, 13, 16]),
    (18, &[1, 3, 5, 8, 9, 10, 17, 18]),
    (19, &[1, 4, 5, 6, 9, 11, 17, 19]),
    (20, &[1, 2, 5, 7, 9, 12, 17, 20]),
    (21, &[2, 3, 4, 5, 9, 13, 17, 21]),
    (22, &[9, 10, 13, 14, 17, 18, 21, 22]),
    (23, &[9, 11, 13, 15, 17, 19, 21, 23]),
];

/// Integer lower-triangular generator of `√8 · Λ₂₄`.
pub fn leech_generator() -> ZMatrix {
    let mut rows = vec![vec![BigInt::from(0); 24]; 24];
    rows[0][0] = BigInt::from(8);
    for i in [2usize, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17] {
        rows[i - 1][0] = BigInt::from(4);
        rows[i - 1][i - 1] = BigInt::from(4);
    }
    for &(i, cols) in LEECH_OCTAD_ROWS {
        for &c in cols {
            rows[i - 1][c - 1] = BigInt::from(2);
        }
    }
    rows[23][0] = BigInt::from(-3);
    for x in rows[23].iter_mut().skip(1) {
        *x = BigInt::from(1);
    }
    Matrix::from_rows(rows).expect("square")
}

/// Leech Gram normalised to min norm 4 and determinant 1.
pub fn leech_gram() -> GramMatrix {
    let g = leech_generator().to_rational();
    GramMatrix::new(g.gram().scale(&rat(1, 8))).expect("Leech Gram is positive definite")
}

pub fn all_entries() -> Vec<LatticeCatalogEntry> {
    NAMES
        .iter()
        .map(|n| lookup(n).expect("built-in names resolve"))
        .collect()
}
