use std::collections::{BTreeMap, HashMap};

use crate::algebra::solve::invert;
use crate::algebra::{par_map, AlgebraError, Discrepancy, DiscrepancyReport};
use crate::degree::{koszul_sign, Degree};
use crate::scalar::{GaussRat, Scalar};

/// A linear combination of basis elements, keyed by basis index.
pub type Combination = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: Degree,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: Degree) -> Self {
        BasisElement {
            label: label.into(),
            degree,
        }
    }
}

fn add_scaled(acc: &mut Combination, c: &Scalar, comb: &Combination) {
    for (k, v) in comb {
        let slot = acc.entry(*k).or_default();
        *slot += &(c * v);
        if slot.is_zero() {
            acc.remove(k);
        }
    }
}

/// Structure constants of a graded Lie superalgebra on an ordered basis.
///
/// Only pairs `(i, j)` with `i <= j` are stored; the other orientation follows
/// from graded antisymmetry `[j,i] = -(-1)^(a.b) [i,j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    pub name: String,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    constants: BTreeMap<(usize, usize), Combination>,
}

impl BracketTable {
    pub fn new(name: impl Into<String>, basis: Vec<BasisElement>) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (k, b) in basis.iter().enumerate() {
            if index.insert(b.label.clone(), k).is_some() {
                return Err(AlgebraError::DuplicateLabel(b.label.clone()));
            }
        }
        Ok(BracketTable {
            name: name.into(),
            basis,
            index,
            constants: BTreeMap::new(),
        })
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.basis[i].degree
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    /// Whether the bracket of `i` and `j` is an anticommutator.
    pub fn is_symmetric(&self, i: usize, j: usize) -> bool {
        koszul_sign(self.degree(i), self.degree(j)) == -1
    }

    /// Records `[i, j] = comb`, in either orientation.
    pub fn set(&mut self, i: usize, j: usize, comb: Combination) -> Result<(), AlgebraError> {
        let (left, right) = (self.label(i).to_string(), self.label(j).to_string());
        let target = self.degree(i) + self.degree(j);
        for (k, c) in &comb {
            if !c.is_lambda_free() {
                return Err(AlgebraError::LambdaDependence { left, right });
            }
            if self.degree(*k) != target {
                return Err(AlgebraError::DegreeViolation {
                    left,
                    right,
                    target: self.label(*k).to_string(),
                });
            }
        }
        let mut comb: Combination = comb.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if i == j && !self.is_symmetric(i, i) && !comb.is_empty() {
            return Err(AlgebraError::SelfCommutator(left));
        }
        let key = if i <= j {
            (i, j)
        } else {
            let sign = Scalar::from_int(-koszul_sign(self.degree(i), self.degree(j)));
            comb = comb.into_iter().map(|(k, c)| (k, &c * &sign)).collect();
            (j, i)
        };
        if self.constants.contains_key(&key) {
            return Err(AlgebraError::DuplicateEntry { left, right });
        }
        if !comb.is_empty() {
            self.constants.insert(key, comb);
        }
        Ok(())
    }

    /// Label-based form of [`BracketTable::set`].
    pub fn set_labels(&mut self, left: &str, right: &str, comb: &[(&str, Scalar)]) -> Result<(), AlgebraError> {
        let i = self.index_of(left)?;
        let j = self.index_of(right)?;
        let mut c = Combination::new();
        for (l, s) in comb {
            add_scaled(&mut c, s, &Combination::from([(self.index_of(l)?, Scalar::one())]));
        }
        self.set(i, j, c)
    }

    /// Overwrites the stored entry for the pair, bypassing the duplicate check.
    pub fn replace(&mut self, i: usize, j: usize, comb: Combination) -> Result<(), AlgebraError> {
        self.constants.remove(&(i.min(j), i.max(j)));
        self.set(i, j, comb)
    }

    /// `[i, j]` in the basis, for either orientation.
    pub fn get(&self, i: usize, j: usize) -> Combination {
        if i <= j {
            return self.constants.get(&(i, j)).cloned().unwrap_or_default();
        }
        let sign = Scalar::from_int(-koszul_sign(self.degree(i), self.degree(j)));
        self.constants
            .get(&(j, i))
            .map(|c| c.iter().map(|(k, v)| (*k, v * &sign)).collect())
            .unwrap_or_default()
    }

    /// Stored nonzero entries `(i, j, [i,j])` with `i <= j`, in pair order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Combination)> {
        self.constants.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// Stored nonzero entries between the sectors of degrees `a` and `b`.
    pub fn sector(&self, a: Degree, b: Degree) -> Vec<(usize, usize, &Combination)> {
        self.entries()
            .filter(|&(i, j, _)| {
                let (di, dj) = (self.degree(i), self.degree(j));
                (di == a && dj == b) || (di == b && dj == a)
            })
            .collect()
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, a: &Combination, b: &Combination) -> Combination {
        let mut out = Combination::new();
        for (i, ca) in a {
            for (j, cb) in b {
                add_scaled(&mut out, &(ca * cb), &self.get(*i, *j));
            }
        }
        out
    }

    pub fn element(&self, i: usize) -> Combination {
        Combination::from([(i, Scalar::one())])
    }

    /// Text form such as `2 D - R`, `(1+i) Q1` or `0`.
    pub fn format(&self, comb: &Combination) -> String {
        format_combination(comb.iter().map(|(k, c)| (self.label(*k), c)))
    }

    /// Subtable on `labels`, with labels renamed through `rename`. Fails if a
    /// bracket of kept elements leaves the kept span.
    pub fn restrict(
        &self,
        name: impl Into<String>,
        labels: &[&str],
        rename: &[(&str, &str)],
    ) -> Result<BracketTable, AlgebraError> {
        let old: Vec<usize> = labels.iter().map(|l| self.index_of(l)).collect::<Result<_, _>>()?;
        let position: HashMap<usize, usize> = old.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let rename: HashMap<&str, &str> = rename.iter().copied().collect();
        let basis = old
            .iter()
            .map(|&o| {
                let l = self.label(o);
                BasisElement::new(*rename.get(l).unwrap_or(&l), self.degree(o))
            })
            .collect();
        let mut out = BracketTable::new(name, basis)?;
        for (a, &i) in old.iter().enumerate() {
            for (b, &j) in old.iter().enumerate().skip(a) {
                let mut comb = Combination::new();
                for (k, c) in self.get(i, j) {
                    let Some(&n) = position.get(&k) else {
                        return Err(AlgebraError::NotClosed {
                            left: self.label(i).to_string(),
                            right: self.label(j).to_string(),
                            target: self.label(k).to_string(),
                        });
                    };
                    comb.insert(n, c);
                }
                out.set(a, b, comb)?;
            }
        }
        Ok(out)
    }

    /// Restriction to the basis elements whose degrees lie in `degrees`.
    pub fn restrict_degrees(&self, degrees: &[Degree]) -> Result<BracketTable, AlgebraError> {
        let labels: Vec<&str> = self
            .basis
            .iter()
            .filter(|b| degrees.contains(&b.degree))
            .map(|b| b.label.as_str())
            .collect();
        self.restrict(self.name.clone(), &labels, &[])
    }
}

/// Joins `(label, coefficient)` pairs into the whitespace-separated text form.
pub(crate) fn format_combination<'a>(terms: impl Iterator<Item = (&'a str, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let g = c.as_constant().unwrap_or_else(GaussRat::zero);
        let (negative, magnitude) =
            if (num::Zero::is_zero(&g.im) && g.re < num::zero()) || (num::Zero::is_zero(&g.re) && g.im < num::zero()) {
                (true, -&g)
            } else {
                (false, g)
            };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude} "));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Graded Jacobi identity on every ordered basis triple.
pub fn check_jacobi(t: &BracketTable) -> DiscrepancyReport {
    check_jacobi_par(t, 1)
}

pub fn check_jacobi_par(t: &BracketTable, jobs: usize) -> DiscrepancyReport {
    let n = t.len();
    let xs: Vec<usize> = (0..n).collect();
    let rows = par_map(jobs, &xs, |&x| {
        let mut found = Vec::new();
        for y in 0..n {
            for z in 0..n {
                let residual = jacobiator(t, x, y, z);
                if !residual.is_empty() {
                    found.push(Discrepancy {
                        labels: vec![t.label(x).into(), t.label(y).into(), t.label(z).into()],
                        expected: "0".into(),
                        computed: t.format(&residual),
                        residual: t.format(&residual),
                    });
                }
            }
        }
        found
    });
    let mut report = DiscrepancyReport::new(format!("graded Jacobi identity: {}", t.name));
    report.checked = n * n * n;
    report.entries = rows.into_iter().flatten().collect();
    report
}

/// `(-1)^(x.z) [X,[Y,Z]] + (-1)^(y.x) [Y,[Z,X]] + (-1)^(z.y) [Z,[X,Y]]`.
fn jacobiator(t: &BracketTable, x: usize, y: usize, z: usize) -> Combination {
    let (dx, dy, dz) = (t.degree(x), t.degree(y), t.degree(z));
    let mut out = Combination::new();
    for (a, b, c, sign) in [
        (x, y, z, koszul_sign(dx, dz)),
        (y, z, x, koszul_sign(dy, dx)),
        (z, x, y, koszul_sign(dz, dy)),
    ] {
        let inner = t.get(b, c);
        add_scaled(&mut out, &Scalar::from_int(sign), &t.bracket(&t.element(a), &inner));
    }
    out
}

fn same_basis(expected: &BracketTable, computed: &BracketTable) -> Result<Vec<usize>, AlgebraError> {
    if expected.len() != computed.len() {
        return Err(AlgebraError::BasisMismatch(format!(
            "{} has {} elements, {} has {}",
            expected.name,
            expected.len(),
            computed.name,
            computed.len()
        )));
    }
    expected
        .basis()
        .iter()
        .map(|b| {
            let k = computed
                .index_of(&b.label)
                .map_err(|_| AlgebraError::BasisMismatch(format!("`{}` missing from {}", b.label, computed.name)))?;
            if computed.degree(k) != b.degree {
                return Err(AlgebraError::BasisMismatch(format!(
                    "`{}` has degree {} in {} and {} in {}",
                    b.label,
                    b.degree,
                    expected.name,
                    computed.degree(k),
                    computed.name
                )));
            }
            Ok(k)
        })
        .collect()
}

/// Pairwise exact comparison; entries are listed in `expected`'s pair order.
pub fn compare_tables(expected: &BracketTable, computed: &BracketTable) -> Result<DiscrepancyReport, AlgebraError> {
    let map = same_basis(expected, computed)?;
    let back: HashMap<usize, usize> = map.iter().enumerate().map(|(e, &c)| (c, e)).collect();
    let n = expected.len();
    let mut report = DiscrepancyReport::new(format!("{} vs {}", expected.name, computed.name));
    for i in 0..n {
        for j in i..n {
            let want = expected.get(i, j);
            let got: Combination = computed
                .get(map[i], map[j])
                .into_iter()
                .map(|(k, c)| (back[&k], c))
                .collect();
            report.checked += 1;
            let ok = want == got;
            let labels = vec![expected.label(i).to_string(), expected.label(j).to_string()];
            if !ok {
                let mut diff = got.clone();
                add_scaled(&mut diff, &Scalar::from_int(-1), &want);
                report.entries.push(Discrepancy {
                    labels: labels.clone(),
                    expected: expected.format(&want),
                    computed: expected.format(&got),
                    residual: expected.format(&diff),
                });
            }
            report.verdicts.push(crate::algebra::Verdict { labels, ok });
        }
    }
    Ok(report)
}

/// New basis elements as combinations of old ones.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    pub name: String,
    pub rows: Vec<(String, Vec<(String, Scalar)>)>,
}

/// Rewrites `t` in the basis given by `change`, which must define every new
/// element as an equal-degree combination and be invertible.
pub fn change_basis(t: &BracketTable, change: &BasisChange) -> Result<BracketTable, AlgebraError> {
    let n = t.len();
    if change.rows.len() != n {
        return Err(AlgebraError::BasisMismatch(format!(
            "{} defines {} elements for a basis of {}",
            change.name,
            change.rows.len(),
            n
        )));
    }
    let mut m = vec![vec![GaussRat::zero(); n]; n];
    let mut basis = Vec::with_capacity(n);
    let mut combos = Vec::with_capacity(n);
    for (r, (label, terms)) in change.rows.iter().enumerate() {
        let mut comb = Combination::new();
        let mut degree = None;
        for (old, c) in terms {
            let k = t.index_of(old)?;
            let g = c.as_constant().ok_or_else(|| AlgebraError::LambdaDependence {
                left: label.clone(),
                right: old.clone(),
            })?;
            if *degree.get_or_insert(t.degree(k)) != t.degree(k) {
                return Err(AlgebraError::DegreeMixing(label.clone()));
            }
            m[r][k] = &m[r][k] + &g;
            add_scaled(&mut comb, c, &t.element(k));
        }
        let degree = degree.ok_or(AlgebraError::SingularTransform)?;
        basis.push(BasisElement::new(label.clone(), degree));
        combos.push(comb);
    }
    let inv = invert(&m).ok_or(AlgebraError::SingularTransform)?;
    let mut out = BracketTable::new(change.name.clone(), basis)?;
    for i in 0..n {
        for j in i..n {
            let old = t.bracket(&combos[i], &combos[j]);
            let mut comb = Combination::new();
            for (k, c) in &old {
                for (l, row) in inv[*k].iter().enumerate() {
                    if !row.is_zero() {
                        add_scaled(
                            &mut comb,
                            &(c * &Scalar::constant(row.clone())),
                            &Combination::from([(l, Scalar::one())]),
                        );
                    }
                }
            }
            out.set(i, j, comb)?;
        }
    }
    Ok(out)
}

/// Eigenvalues of `ad(Z)` on every basis element, one column per grading
/// element `Z`, in basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    pub grading: Vec<String>,
    pub rows: Vec<(String, Vec<Scalar>)>,
}

impl WeightTable {
    pub fn get(&self, label: &str) -> Option<&[Scalar]> {
        self.rows.iter().find(|(l, _)| l == label).map(|(_, w)| w.as_slice())
    }
}

pub fn weights(t: &BracketTable, grading: &[&str]) -> Result<WeightTable, AlgebraError> {
    let zs: Vec<usize> = grading.iter().map(|z| t.index_of(z)).collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(t.len());
    for y in 0..t.len() {
        let mut ws = Vec::with_capacity(zs.len());
        for &z in &zs {
            let br = t.get(z, y);
            if br.keys().any(|&k| k != y) {
                return Err(AlgebraError::NotEigenvector {
                    element: t.label(y).to_string(),
                    grading: t.label(z).to_string(),
                });
            }
            ws.push(br.get(&y).cloned().unwrap_or_default());
        }
        rows.push((t.label(y).to_string(), ws));
    }
    Ok(WeightTable {
        grading: grading.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Split {
    pub positive: Vec<String>,
    pub zero: Vec<String>,
    pub negative: Vec<String>,
}

/// Sorts elements by the sign of the first nonzero weight.
pub fn triangular_split(w: &WeightTable) -> Result<Split, AlgebraError> {
    let mut split = Split::default();
    for (label, ws) in &w.rows {
        let mut sign = 0;
        for s in ws {
            let r = s
                .as_rational()
                .ok_or_else(|| AlgebraError::NonRealWeight(label.clone()))?;
            if sign == 0 && !num::Zero::is_zero(&r) {
                sign = if r > num::zero() { 1 } else { -1 };
            }
        }
        match sign {
            1 => split.positive.push(label.clone()),
            -1 => split.negative.push(label.clone()),
            _ => split.zero.push(label.clone()),
        }
    }
    Ok(split)
}
