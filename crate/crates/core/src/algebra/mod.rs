//! Bracket tables, graded Jacobi checks, structure-constant extraction,
//! changes of basis, weights and triangular-like splits.

mod realization;
mod report;
pub mod solve;
mod table;

use rayon::prelude::*;

use crate::degree::Degree;

pub use realization::{
    derived_generators, extract_structure_constants, extract_structure_constants_par, verify_realization,
    verify_realization_par, Derivation, Realization,
};
pub use report::{Discrepancy, DiscrepancyReport, Verdict};
pub(crate) use table::format_combination;
pub use table::{
    change_basis, check_jacobi, check_jacobi_par, compare_tables, triangular_split, weights, BasisChange, BasisElement,
    BracketTable, Combination, Split, WeightTable,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("label `{0}` appears twice")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("bracket of {left} and {right} lies outside the span of the basis; residual: {residual}")]
    ClosureFailure {
        left: String,
        right: String,
        residual: String,
    },
    #[error("realization operator `{0}` is a linear combination of the preceding ones")]
    DependentBasis(String),
    #[error("structure constant of ({left}, {right}) depends on lam")]
    LambdaDependence { left: String, right: String },
    #[error("bracket of {left} and {right} has a component along {target} of the wrong degree")]
    DegreeViolation {
        left: String,
        right: String,
        target: String,
    },
    #[error("bracket of {left} and {right} is given twice")]
    DuplicateEntry { left: String, right: String },
    #[error("the commutator of `{0}` with itself must vanish")]
    SelfCommutator(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("change of basis is singular")]
    SingularTransform,
    #[error("new basis element `{0}` mixes elements of different degrees")]
    DegreeMixing(String),
    #[error("`{element}` is not an eigenvector of ad({grading})")]
    NotEigenvector { element: String, grading: String },
    #[error("weight of `{0}` is not a real rational number")]
    NonRealWeight(String),
    #[error("restriction is not closed: bracket of {left} and {right} involves {target}")]
    NotClosed {
        left: String,
        right: String,
        target: String,
    },
    #[error("operator `{label}` does not match declared degree {degree}")]
    DegreeMismatch { label: String, degree: Degree },
    #[error("`{label}` is defined with the wrong bracket: degrees call for {expected}")]
    WrongBracketKind { label: String, expected: &'static str },
}

/// Maps `f` over `items`, on a pool of `jobs` threads when `jobs > 1`.
/// Output order always follows input order.
pub(crate) fn par_map<I, R, F>(jobs: usize, items: &[I], f: F) -> Vec<R>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> R + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}
