//! 4x4 matrices whose entries are [`DiffOp`]s: the carrier of the D-module
//! presentations.

use std::fmt;

use crate::degree::Degree;
use crate::operator::{Graded, Operator};
use crate::scalar::{format_sum, GaussRat, Scalar};
use crate::weyl::{DiffOp, WeylMonomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("matrix index ({0},{1}) out of range 1..4")]
pub struct IndexOutOfRange(pub usize, pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Mat4 {
    entries: [[DiffOp; 4]; 4],
}

/// A D-module operator with its declared degree.
pub type MatDiffOp = Graded<Mat4>;

impl Mat4 {
    pub fn zero() -> Self {
        Mat4::default()
    }

    /// `op` times the 4x4 identity.
    pub fn diag(op: &DiffOp) -> Self {
        let mut m = Mat4::zero();
        for k in 0..4 {
            m.entries[k][k] = op.clone();
        }
        m
    }

    pub fn identity() -> Self {
        Mat4::diag(&DiffOp::one())
    }

    /// The elementary matrix with a unit entry at row `i`, column `j` (1-based).
    pub fn e(i: usize, j: usize) -> Result<Self, IndexOutOfRange> {
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
            return Err(IndexOutOfRange(i, j));
        }
        let mut m = Mat4::zero();
        m.entries[i - 1][j - 1] = DiffOp::one();
        Ok(m)
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &DiffOp {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(DiffOp::is_zero)
    }

    pub fn add(&self, other: &Mat4) -> Mat4 {
        let mut out = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = &self.entries[i][j] + &other.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat4 {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = e.scale(c);
            }
        }
        out
    }

    /// Matrix product with entries composed as differential operators.
    pub fn compose(&self, other: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = DiffOp::zero();
                for k in 0..4 {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &a.compose(b);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    /// Highest derivative order over all entries.
    pub fn order(&self) -> u32 {
        self.entries.iter().flatten().map(DiffOp::order).max().unwrap_or(0)
    }
}

impl Operator for Mat4 {
    type Coord = (u8, u8, WeylMonomial);
    type Context = ();

    fn zero_like(&self) -> Self {
        Mat4::zero()
    }

    fn is_zero(&self) -> bool {
        Mat4::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        Mat4::add(self, other)
    }

    fn scale(&self, c: &Scalar) -> Self {
        Mat4::scale(self, c)
    }

    fn compose(&self, other: &Self) -> Self {
        Mat4::compose(self, other)
    }

    fn coordinates(&self) -> Vec<((Self::Coord, u32), GaussRat)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (m, c) in e.terms() {
                    for (p, g) in c.terms() {
                        out.push((((i as u8, j as u8, *m), p), g.clone()));
                    }
                }
            }
        }
        out
    }
}

pub fn e(i: usize, j: usize) -> Result<Mat4, IndexOutOfRange> {
    Mat4::e(i, j)
}

pub fn mat_compose(a: &MatDiffOp, b: &MatDiffOp) -> MatDiffOp {
    a.compose(b)
}

pub fn graded_bracket_mat(a: &MatDiffOp, b: &MatDiffOp) -> MatDiffOp {
    a.bracket(b)
}

pub fn mat_diff_op(m: Mat4, degree: Degree) -> MatDiffOp {
    Graded { op: m, degree }
}

impl fmt::Display for Mat4 {
    /// Parseable sum of `e(i,j)*...` atoms; a common diagonal is printed once
    /// as a multiple of the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.entries[0][0];
        let uniform_diag = !d.is_zero() && (1..4).all(|k| &self.entries[k][k] == d);
        let mut atoms = Vec::new();
        if uniform_diag {
            atoms.extend(d.atoms());
        }
        for i in 0..4 {
            for j in 0..4 {
                if uniform_diag && i == j {
                    continue;
                }
                let tag = format!("e({},{})", i + 1, j + 1);
                for (r, mut fs) in self.entries[i][j].atoms() {
                    // i and lam are scalars, keep them ahead of the matrix unit
                    let split = fs.iter().take_while(|s| *s == "i" || *s == "lam").count();
                    fs.insert(split, tag.clone());
                    atoms.push((r, fs));
                }
            }
        }
        write!(f, "{}", format_sum(&atoms))
    }
}
