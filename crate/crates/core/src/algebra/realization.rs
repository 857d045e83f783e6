use crate::algebra::solve::{SpanSolver, SparseVec};
use crate::algebra::{
    par_map, AlgebraError, BasisElement, BracketTable, Combination, Discrepancy, DiscrepancyReport, Verdict,
};
use crate::degree::koszul_sign;
use crate::operator::{Graded, Operator};
use crate::scalar::Scalar;

/// Labeled graded operators of one kind, in declaration order.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization<T: Operator> {
    pub name: String,
    pub context: T::Context,
    labels: Vec<String>,
    ops: Vec<Graded<T>>,
    /// Editorial normalizations applied when the realization was encoded.
    pub notes: Vec<String>,
}

impl<T: Operator> Realization<T> {
    pub fn new(name: impl Into<String>, context: T::Context) -> Self {
        Realization {
            name: name.into(),
            context,
            labels: Vec::new(),
            ops: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, op: Graded<T>) -> Result<(), AlgebraError> {
        let label = label.into();
        if self.labels.contains(&label) {
            return Err(AlgebraError::DuplicateLabel(label));
        }
        self.labels.push(label);
        self.ops.push(op);
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&Graded<T>> {
        self.labels.iter().position(|l| l == label).map(|k| &self.ops[k])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Graded<T>)> {
        self.labels.iter().map(String::as_str).zip(&self.ops)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Operators listed in `order`, which must be a permutation of the labels.
    fn ordered(&self, order: &[&str]) -> Result<Vec<&Graded<T>>, AlgebraError> {
        if order.len() != self.len() {
            return Err(AlgebraError::BasisMismatch(format!(
                "{} has {} operators, basis has {} elements",
                self.name,
                self.len(),
                order.len()
            )));
        }
        order
            .iter()
            .map(|l| {
                self.get(l)
                    .ok_or_else(|| AlgebraError::BasisMismatch(format!("`{l}` has no operator in {}", self.name)))
            })
            .collect()
    }
}

fn coords<T: Operator>(op: &T) -> SparseVec<(T::Coord, u32)> {
    op.coordinates().into_iter().collect()
}

fn shifted<T: Operator>(op: &T, m: u32) -> SparseVec<(T::Coord, u32)> {
    op.coordinates()
        .into_iter()
        .map(|((c, p), g)| ((c, p + m), g))
        .collect()
}

/// Distinguishes a bracket outside the span from one that only closes with
/// `lam`-dependent coefficients.
fn lambda_retry<T: Operator>(ops: &[&Graded<T>], target: &SparseVec<(T::Coord, u32)>) -> bool {
    let top = target.keys().map(|(_, p)| *p).max().unwrap_or(0);
    let mut solver = SpanSolver::new();
    let mut columns = Vec::new();
    for (j, op) in ops.iter().enumerate() {
        for m in 0..=top {
            if solver.insert(columns.len(), &shifted(&op.op, m)) {
                columns.push((j, m));
            } else {
                columns.push((j, u32::MAX));
            }
        }
    }
    match solver.express(target) {
        Ok(sol) => sol.keys().any(|&c| columns[c].1 > 0),
        Err(_) => false,
    }
}

/// Brackets every pair of realization operators and expresses the result in
/// the span of the operators, with `lam`-free coefficients.
pub fn extract_structure_constants<T: Operator>(
    r: &Realization<T>,
    basis: &[&str],
) -> Result<BracketTable, AlgebraError> {
    extract_structure_constants_par(r, basis, 1)
}

pub fn extract_structure_constants_par<T: Operator>(
    r: &Realization<T>,
    basis: &[&str],
    jobs: usize,
) -> Result<BracketTable, AlgebraError> {
    let ops = r.ordered(basis)?;
    let mut solver = SpanSolver::new();
    for (k, op) in ops.iter().enumerate() {
        if !solver.insert(k, &coords(&op.op)) {
            return Err(AlgebraError::DependentBasis(basis[k].to_string()));
        }
    }
    let elements = basis
        .iter()
        .zip(&ops)
        .map(|(l, op)| BasisElement::new(*l, op.degree))
        .collect();
    let mut table = BracketTable::new(r.name.clone(), elements)?;
    let n = ops.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let results = par_map(jobs, &pairs, |&(i, j)| {
        let br = ops[i].bracket(ops[j]);
        let target = coords(&br.op);
        match solver.express(&target) {
            Ok(sol) => Ok(sol
                .into_iter()
                .map(|(k, g)| (k, Scalar::constant(g)))
                .collect::<Combination>()),
            Err(_) if lambda_retry(&ops, &target) => Err(AlgebraError::LambdaDependence {
                left: basis[i].to_string(),
                right: basis[j].to_string(),
            }),
            Err((sol, _)) => {
                let mut residual = br.op.clone();
                for (k, g) in sol {
                    residual = residual.sub(&ops[k].op.scale(&Scalar::constant(g)));
                }
                Err(AlgebraError::ClosureFailure {
                    left: basis[i].to_string(),
                    right: basis[j].to_string(),
                    residual: residual.to_string(),
                })
            }
        }
    });
    for (&(i, j), res) in pairs.iter().zip(results) {
        table.set(i, j, res?)?;
    }
    Ok(table)
}

/// Checks every basis pair of `t` against the realization, producing a
/// verdict per pair and a discrepancy with symbolic residual per failure.
pub fn verify_realization<T: Operator>(
    r: &Realization<T>,
    t: &BracketTable,
) -> Result<DiscrepancyReport, AlgebraError> {
    verify_realization_par(r, t, 1)
}

pub fn verify_realization_par<T: Operator>(
    r: &Realization<T>,
    t: &BracketTable,
    jobs: usize,
) -> Result<DiscrepancyReport, AlgebraError> {
    let labels: Vec<&str> = t.basis().iter().map(|b| b.label.as_str()).collect();
    let ops = r.ordered(&labels)?;
    for (k, op) in ops.iter().enumerate() {
        if op.degree != t.degree(k) {
            return Err(AlgebraError::DegreeMismatch {
                label: labels[k].to_string(),
                degree: op.degree,
            });
        }
    }
    let n = ops.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let outcomes = par_map(jobs, &pairs, |&(i, j)| {
        let computed = ops[i].bracket(ops[j]).op;
        let want = t.get(i, j);
        let mut residual = computed.clone();
        for (k, c) in &want {
            residual = residual.sub(&ops[*k].op.scale(c));
        }
        if residual.is_zero() {
            None
        } else {
            Some(Discrepancy {
                labels: vec![labels[i].to_string(), labels[j].to_string()],
                expected: t.format(&want),
                computed: computed.to_string(),
                residual: residual.to_string(),
            })
        }
    });
    let mut report = DiscrepancyReport::new(format!("{} against {}", r.name, t.name));
    report.notes = r.notes.clone();
    report.checked = pairs.len();
    for (&(i, j), outcome) in pairs.iter().zip(outcomes) {
        report.verdicts.push(Verdict {
            labels: vec![labels[i].to_string(), labels[j].to_string()],
            ok: outcome.is_none(),
        });
        report.entries.extend(outcome);
    }
    Ok(report)
}

/// A generator defined as the bracket of two earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub label: String,
    pub left: String,
    pub right: String,
    /// `{left, right}` when true, `[left, right]` otherwise.
    pub anticommutator: bool,
}

/// Extends `base` by the derived generators, each computed from the
/// realization as it stands when its definition is reached.
pub fn derived_generators<T: Operator>(
    base: &Realization<T>,
    defs: &[Derivation],
) -> Result<Realization<T>, AlgebraError> {
    let mut out = base.clone();
    for d in defs {
        let a = out
            .get(&d.left)
            .ok_or_else(|| AlgebraError::UnknownLabel(d.left.clone()))?;
        let b = out
            .get(&d.right)
            .ok_or_else(|| AlgebraError::UnknownLabel(d.right.clone()))?;
        let symmetric = koszul_sign(a.degree, b.degree) == -1;
        if symmetric != d.anticommutator {
            return Err(AlgebraError::WrongBracketKind {
                label: d.label.clone(),
                expected: if symmetric { "{,}" } else { "[,]" },
            });
        }
        let op = a.bracket(b);
        out.push(d.label.clone(), op)?;
    }
    Ok(out)
}
