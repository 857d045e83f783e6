//! The operator interface shared by matrix D-module operators and graded
//! vector fields, and the graded bracket built on top of it.

use std::fmt;

use crate::degree::{koszul_sign, Degree};
use crate::scalar::{GaussRat, Scalar};

/// An associative algebra of operators with exact coefficients.
///
/// `coordinates` flattens an operator into independent coordinates, one per
/// (structural slot, power of `lam`), which is what the span solver works on.
pub trait Operator: Clone + PartialEq + fmt::Display + Send + Sync {
    type Coord: Ord + Clone + fmt::Debug + Send + Sync;
    /// Data shared by all operators of one realization (the variable
    /// context for graded vector fields).
    type Context: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn compose(&self, other: &Self) -> Self;
    fn coordinates(&self) -> Vec<((Self::Coord, u32), GaussRat)>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Whether every term is compatible with `degree`. Operators whose degree
    /// cannot be read off their terms accept everything.
    fn conforms_to(&self, _degree: Degree) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("operator is not homogeneous of declared degree {0}")]
pub struct DegreeMismatch(pub Degree);

/// An operator together with its declared Z2 x Z2 degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<T> {
    pub op: T,
    pub degree: Degree,
}

impl<T: Operator> Graded<T> {
    pub fn new(op: T, degree: Degree) -> Result<Self, DegreeMismatch> {
        if op.conforms_to(degree) {
            Ok(Graded { op, degree })
        } else {
            Err(DegreeMismatch(degree))
        }
    }

    /// `A.B - (-1)^(a.b) B.A`; carries degree `a + b`.
    pub fn bracket(&self, other: &Graded<T>) -> Graded<T> {
        let ab = self.op.compose(&other.op);
        let ba = other.op.compose(&self.op);
        let op = if koszul_sign(self.degree, other.degree) == 1 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        };
        Graded {
            op,
            degree: self.degree + other.degree,
        }
    }

    pub fn compose(&self, other: &Graded<T>) -> Graded<T> {
        Graded {
            op: self.op.compose(&other.op),
            degree: self.degree + other.degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }
}

impl<T: fmt::Display> fmt::Display for Graded<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.op.fmt(f)
    }
}
