//! Exact construction and verification of Z2 x Z2-graded Lie superalgebras:
//! D-module presentations, graded Grassmann calculus, vector-field
//! realizations, bracket tables and their invariants.

pub mod algebra;
pub mod corpus;
pub mod degree;
pub mod grassmann;
pub mod io;
pub mod matop;
pub mod operator;
pub mod scalar;
pub mod vecfield;
pub mod weyl;

pub use degree::{degree_add, koszul_sign, Degree};
pub use grassmann::{GradedMonomial, GradedPoly, GradedVariable, VarContext};
pub use matop::{Mat4, MatDiffOp};
pub use operator::{Graded, Operator};
pub use scalar::{GaussRat, Scalar};
pub use vecfield::{GradedDiffOp, VectorFieldOp};
pub use weyl::{DiffOp, TxPoly, WeylMonomial};
