//! Z2 x Z2-graded polynomial algebra: graded numbers `x` (0,0), `psi` (0,1),
//! `theta` (1,0), `z` (1,1) with exchange sign `(-1)^(a.b)`, plus left
//! derivatives and the Berezin integral on the nilpotent variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::degree::{koszul_sign, Degree};
use crate::scalar::{format_sum, scalar_atoms, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrassmannError {
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error(
        "cannot integrate over `{name}` of degree {degree}: only (0,1) and (1,0) variables have a Berezin integral"
    )]
    NotIntegrable { name: String, degree: Degree },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedVariable {
    pub name: String,
    pub degree: Degree,
}

/// Ordered set of variables; the declaration order is the canonical order of
/// factors in every monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarContext {
    vars: Vec<GradedVariable>,
    index: HashMap<String, usize>,
}

impl VarContext {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, Degree)>,
    ) -> Result<Arc<VarContext>, GrassmannError> {
        let mut ctx = VarContext {
            vars: Vec::new(),
            index: HashMap::new(),
        };
        for (name, degree) in vars {
            let name = name.into();
            if ctx.index.contains_key(&name) {
                return Err(GrassmannError::DuplicateVariable(name));
            }
            ctx.index.insert(name.clone(), ctx.vars.len());
            ctx.vars.push(GradedVariable { name, degree });
        }
        Ok(Arc::new(ctx))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn var(&self, k: usize) -> &GradedVariable {
        &self.vars[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize, GrassmannError> {
        self.index_of(name)
            .ok_or_else(|| GrassmannError::UnknownVariable(name.to_string()))
    }

    fn deg(&self, k: usize) -> Degree {
        self.vars[k].degree
    }
}

/// Exponent vector over a context, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedMonomial {
    exps: Vec<u32>,
}

impl GradedMonomial {
    pub fn one(ctx: &VarContext) -> Self {
        GradedMonomial {
            exps: vec![0; ctx.len()],
        }
    }

    pub fn var(ctx: &VarContext, k: usize) -> Self {
        let mut m = GradedMonomial::one(ctx);
        m.exps[k] = 1;
        m
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.exps[k]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_power(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree(&self, ctx: &VarContext) -> Degree {
        self.exps
            .iter()
            .enumerate()
            .fold(Degree::ZERO, |acc, (k, &e)| acc + ctx.deg(k).times(e))
    }

    /// Canonical product `self * other`: the sign collected while moving the
    /// factors of `other` left past the later factors of `self`, or `None`
    /// when a nilpotent variable would appear twice.
    pub fn mul(&self, other: &GradedMonomial, ctx: &VarContext) -> Option<(i64, GradedMonomial)> {
        let mut parity = 0u32;
        for (j, &fj) in other.exps.iter().enumerate() {
            if fj == 0 {
                continue;
            }
            for (i, &ei) in self.exps.iter().enumerate().skip(j + 1) {
                if ei != 0 {
                    parity += ei * fj * u32::from(ctx.deg(i).dot(ctx.deg(j)));
                }
            }
        }
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        if exps
            .iter()
            .enumerate()
            .any(|(k, &e)| e > 1 && ctx.deg(k).is_nilpotent())
        {
            return None;
        }
        let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, GradedMonomial { exps }))
    }

    /// Left derivative with respect to variable `v`: `(integer factor, monomial)`,
    /// or `None` when `v` is absent.
    pub fn derivative(&self, v: usize, ctx: &VarContext) -> Option<(i64, GradedMonomial)> {
        let e = self.exps[v];
        if e == 0 {
            return None;
        }
        let dv = ctx.deg(v);
        let sign: i64 = self.exps[..v]
            .iter()
            .enumerate()
            .map(|(i, &ei)| if ei % 2 == 1 { koszul_sign(dv, ctx.deg(i)) } else { 1 })
            .product();
        let mut exps = self.exps.clone();
        exps[v] -= 1;
        Some((sign * i64::from(e), GradedMonomial { exps }))
    }

    pub(crate) fn factor_names(&self, ctx: &VarContext, wrap: impl Fn(&str) -> String) -> Vec<String> {
        let mut out = Vec::new();
        for (k, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(wrap(&ctx.vars[k].name));
            }
        }
        out
    }
}

/// Brings a word of variables (by index) into canonical order.
///
/// Returns the accumulated exchange sign and the monomial, or `None` when a
/// nilpotent variable repeats.
pub fn normal_order(ctx: &VarContext, word: &[usize]) -> Option<(i64, GradedMonomial)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    // insertion sort, one adjacent transposition at a time
    for k in 1..w.len() {
        let mut j = k;
        while j > 0 && w[j - 1] > w[j] {
            sign *= koszul_sign(ctx.deg(w[j - 1]), ctx.deg(w[j]));
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut m = GradedMonomial::one(ctx);
    for &v in &w {
        m.exps[v] += 1;
    }
    if m.exps
        .iter()
        .enumerate()
        .any(|(k, &e)| e > 1 && ctx.deg(k).is_nilpotent())
    {
        return None;
    }
    Some((sign, m))
}

/// A polynomial in graded variables.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPoly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<GradedMonomial, Scalar>,
}

impl GradedPoly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        GradedPoly {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Scalar) -> Self {
        GradedPoly::monomial(ctx, GradedMonomial::one(ctx), c)
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: GradedMonomial, c: Scalar) -> Self {
        let mut p = GradedPoly::zero(ctx);
        p.add_term(m, &c);
        p
    }

    pub fn var(ctx: &Arc<VarContext>, name: &str) -> Result<Self, GrassmannError> {
        let k = ctx.lookup(name)?;
        Ok(GradedPoly::monomial(ctx, GradedMonomial::var(ctx, k), Scalar::one()))
    }

    /// Product of the named variables in the given order, normal-ordered.
    pub fn word(ctx: &Arc<VarContext>, names: &[&str]) -> Result<Self, GrassmannError> {
        let idx = names.iter().map(|n| ctx.lookup(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(match normal_order(ctx, &idx) {
            Some((s, m)) => GradedPoly::monomial(ctx, m, Scalar::from_int(s)),
            None => GradedPoly::zero(ctx),
        })
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: GradedMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<Degree> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.ctx));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, m)) = a.mul(b, &self.ctx) {
                    out.add_term(m, &(ca * cb).scale_int(s));
                }
            }
        }
        out
    }

    /// Left derivative with respect to the variable at index `v`.
    pub fn derivative(&self, v: usize) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((k, dm)) = m.derivative(v, &self.ctx) {
                out.add_term(dm, &c.scale_int(k));
            }
        }
        out
    }
}

pub fn gp_mul(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    a.mul(b)
}

pub fn graded_derivative(v: usize, p: &GradedPoly) -> GradedPoly {
    p.derivative(v)
}

/// Berezin integral over a nilpotent variable; it coincides with the left
/// derivative.
pub fn berezin_integral(v: usize, p: &GradedPoly) -> Result<GradedPoly, GrassmannError> {
    let var = p.ctx.var(v);
    if !var.degree.is_nilpotent() {
        return Err(GrassmannError::NotIntegrable {
            name: var.name.clone(),
            degree: var.degree,
        });
    }
    Ok(p.derivative(v))
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<_> = self
            .terms
            .iter()
            .flat_map(|(m, c)| scalar_atoms(c, &m.factor_names(&self.ctx, str::to_string)))
            .collect();
        write!(f, "{}", format_sum(&atoms))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// x1 x2 | psi1 psi2 psi3 | th1 th2 th3 | z1 z2 z3
    fn ctx() -> Arc<VarContext> {
        let mut vars = vec![("x1", Degree::ZERO), ("x2", Degree::ZERO)];
        vars.extend([("psi1", Degree::D01), ("psi2", Degree::D01), ("psi3", Degree::D01)]);
        vars.extend([("th1", Degree::D10), ("th2", Degree::D10), ("th3", Degree::D10)]);
        vars.extend([("z1", Degree::D11), ("z2", Degree::D11), ("z3", Degree::D11)]);
        VarContext::new(vars).unwrap()
    }

    fn w(c: &Arc<VarContext>, names: &[&str]) -> GradedPoly {
        GradedPoly::word(c, names).unwrap()
    }

    fn idx(c: &Arc<VarContext>, n: &str) -> usize {
        c.index_of(n).unwrap()
    }

    #[test]
    fn normal_order_examples() {
        let c = ctx();
        let (s, m) = normal_order(&c, &[idx(&c, "psi2"), idx(&c, "psi1")]).unwrap();
        assert_eq!(
            (s, m),
            (-1, normal_order(&c, &[idx(&c, "psi1"), idx(&c, "psi2")]).unwrap().1)
        );
        let (s, _) = normal_order(&c, &[idx(&c, "th1"), idx(&c, "psi1")]).unwrap();
        assert_eq!(s, 1);
        assert!(normal_order(&c, &[idx(&c, "psi1"), idx(&c, "psi1")]).is_none());
        // z squares are allowed
        assert!(normal_order(&c, &[idx(&c, "z1"), idx(&c, "z1")]).is_some());
    }

    #[test]
    fn ordered_word_has_plus_sign() {
        let c = ctx();
        let word: Vec<usize> = ["x1", "psi1", "psi3", "th2", "z1", "z1"]
            .iter()
            .map(|n| idx(&c, n))
            .collect();
        let (s, m) = normal_order(&c, &word).unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.exponent(idx(&c, "z1")), 2);
    }

    #[test]
    fn product_examples() {
        let c = ctx();
        assert_eq!(
            w(&c, &["psi1"]).mul(&w(&c, &["th1", "z3"])),
            w(&c, &["psi1", "th1", "z3"])
        );
        let zpsi = w(&c, &["z1"]).mul(&w(&c, &["psi3"]));
        assert_eq!(zpsi.terms().next().unwrap().1, &Scalar::from_int(-1));
        let anything = w(&c, &["th2", "psi1", "z2"]);
        let x2 = w(&c, &["x2"]);
        assert_eq!(x2.mul(&anything), anything.mul(&x2));
    }

    #[test]
    fn worked_derivatives() {
        let c = ctx();
        let p = w(&c, &["x2", "psi1", "psi2"]);
        assert_eq!(
            p.derivative(idx(&c, "psi2")),
            w(&c, &["x2", "psi1"]).scale(&Scalar::from_int(-1))
        );
        let p = w(&c, &["psi1", "th1", "z3"]);
        assert_eq!(p.derivative(idx(&c, "th1")), w(&c, &["psi1", "z3"]));
        let p = w(&c, &["x2", "psi3", "z1", "z1"]);
        assert_eq!(
            p.derivative(idx(&c, "z1")),
            w(&c, &["x2", "psi3", "z1"]).scale(&Scalar::from_int(-2))
        );
    }

    #[test]
    fn berezin_rules() {
        let c = ctx();
        let psi1 = idx(&c, "psi1");
        assert_eq!(
            berezin_integral(psi1, &w(&c, &["psi1"])).unwrap(),
            GradedPoly::constant(&c, Scalar::one())
        );
        assert!(berezin_integral(psi1, &GradedPoly::constant(&c, Scalar::one()))
            .unwrap()
            .is_zero());
        let th1 = idx(&c, "th1");
        assert_eq!(
            berezin_integral(th1, &w(&c, &["psi1", "th1", "z3"])).unwrap(),
            w(&c, &["psi1", "z3"])
        );
        assert!(matches!(
            berezin_integral(idx(&c, "z1"), &w(&c, &["z1"])),
            Err(GrassmannError::NotIntegrable { .. })
        ));
        assert!(berezin_integral(idx(&c, "x1"), &w(&c, &["x1"])).is_err());
    }

    #[test]
    fn duplicate_variable_rejected() {
        assert_eq!(
            VarContext::new([("a", Degree::ZERO), ("a", Degree::D01)]),
            Err(GrassmannError::DuplicateVariable("a".into()))
        );
    }

    /// Random homogeneous polynomial of the given degree.
    pub(crate) fn homogeneous(c: Arc<VarContext>, d: Degree) -> impl Strategy<Value = GradedPoly> {
        let n = c.len();
        proptest::collection::vec((proptest::collection::vec(0u32..=2, n), -3i64..=3), 1..4).prop_map(move |parts| {
            let mut p = GradedPoly::zero(&c);
            for (mut exps, k) in parts {
                for (i, e) in exps.iter_mut().enumerate() {
                    if c.var(i).degree.is_nilpotent() {
                        *e = (*e).min(1);
                    }
                }
                let m = GradedMonomial { exps };
                if m.degree(&c) == d && m.total_power() <= 4 {
                    p.add_term(m, &Scalar::from_int(k));
                }
            }
            p
        })
    }

    fn small_ctx() -> Arc<VarContext> {
        VarContext::new([
            ("x", Degree::ZERO),
            ("psi", Degree::D01),
            ("psi2", Degree::D01),
            ("th", Degree::D10),
            ("z", Degree::D11),
        ])
        .unwrap()
    }

    fn degree() -> impl Strategy<Value = Degree> {
        proptest::sample::select(Degree::ALL.to_vec())
    }

    fn homogeneous_pair() -> impl Strategy<Value = (Degree, GradedPoly, Degree, GradedPoly)> {
        (degree(), degree()).prop_flat_map(|(da, db)| {
            (
                Just(da),
                homogeneous(small_ctx(), da),
                Just(db),
                homogeneous(small_ctx(), db),
            )
        })
    }

    proptest! {
        #[test]
        fn graded_commutativity((da, a, db, b) in homogeneous_pair()) {
            let flipped = b.mul(&a).scale(&Scalar::from_int(koszul_sign(da, db)));
            prop_assert_eq!(a.mul(&b), flipped);
        }

        #[test]
        fn leibniz(v in 0usize..5, (da, a, _db, b) in homogeneous_pair()) {
            let c = small_ctx();
            let dv = c.var(v).degree;
            let lhs = a.mul(&b).derivative(v);
            let rhs = a
                .derivative(v)
                .mul(&b)
                .add(&a.mul(&b.derivative(v)).scale(&Scalar::from_int(koszul_sign(dv, da))));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivatives_graded_commute(v in 0usize..5, u in 0usize..5, (_, p, _, _) in homogeneous_pair()) {
            let c = small_ctx();
            let s = koszul_sign(c.var(v).degree, c.var(u).degree);
            prop_assert_eq!(p.derivative(u).derivative(v), p.derivative(v).derivative(u).scale(&Scalar::from_int(s)));
        }

        #[test]
        fn mul_associative((_, a, _, b) in homogeneous_pair(), d in homogeneous(small_ctx(), Degree::D10)) {
            prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
        }
    }
}
