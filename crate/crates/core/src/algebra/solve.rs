//! Exact sparse elimination over the Gaussian rationals.

use std::collections::BTreeMap;

use crate::scalar::GaussRat;

pub type SparseVec<C> = BTreeMap<C, GaussRat>;

fn axpy<C: Ord + Clone>(y: &mut SparseVec<C>, a: &GaussRat, x: &SparseVec<C>) {
    for (k, v) in x {
        let slot = y.entry(k.clone()).or_insert_with(GaussRat::zero);
        *slot = &*slot + &(a * v);
        if slot.is_zero() {
            y.remove(k);
        }
    }
}

struct Pivot<C> {
    coord: C,
    /// Normalized so the entry at `coord` is one.
    vec: SparseVec<C>,
    /// `vec` as a combination of the inserted columns.
    combo: SparseVec<usize>,
}

/// Incremental echelon form of a set of column vectors.
///
/// Each inserted vector is reduced against the pivots found so far; later
/// pivots never contain earlier pivot coordinates, so one pass in insertion
/// order reduces any right-hand side.
pub struct SpanSolver<C> {
    pivots: Vec<Pivot<C>>,
}

impl<C: Ord + Clone> Default for SpanSolver<C> {
    fn default() -> Self {
        SpanSolver { pivots: Vec::new() }
    }
}

impl<C: Ord + Clone> SpanSolver<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &SparseVec<C>) -> (SparseVec<C>, SparseVec<usize>) {
        let mut rest = v.clone();
        let mut used = SparseVec::new();
        for p in &self.pivots {
            if let Some(a) = rest.get(&p.coord).cloned() {
                let neg = -&a;
                axpy(&mut rest, &neg, &p.vec);
                axpy(&mut used, &a, &p.combo);
            }
        }
        (rest, used)
    }

    /// Adds column `index`; returns `false` if it lies in the span of the
    /// columns already present.
    pub fn insert(&mut self, index: usize, v: &SparseVec<C>) -> bool {
        let (rest, used) = self.reduce(v);
        let Some((coord, lead)) = rest.iter().next().map(|(c, a)| (c.clone(), a.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let mut combo = SparseVec::new();
        combo.insert(index, GaussRat::one());
        axpy(&mut combo, &GaussRat::from_int(-1), &used);
        let vec = rest.iter().map(|(k, a)| (k.clone(), a * &inv)).collect();
        let combo = combo.iter().map(|(k, a)| (*k, a * &inv)).collect();
        self.pivots.push(Pivot { coord, vec, combo });
        true
    }

    /// Writes `v` as a combination of the inserted columns.
    ///
    /// On failure returns the best combination together with the nonzero
    /// residual `v - combination`.
    pub fn express(&self, v: &SparseVec<C>) -> Result<SparseVec<usize>, (SparseVec<usize>, SparseVec<C>)> {
        let (rest, used) = self.reduce(v);
        if rest.is_empty() {
            Ok(used)
        } else {
            Err((used, rest))
        }
    }
}

/// Inverse of a square matrix by Gauss-Jordan elimination; `None` if singular.
pub fn invert(m: &[Vec<GaussRat>]) -> Option<Vec<Vec<GaussRat>>> {
    let n = m.len();
    let mut a: Vec<Vec<GaussRat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
