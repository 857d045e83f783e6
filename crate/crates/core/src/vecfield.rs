//! Differential operators on the graded polynomial algebra.
//!
//! A term is `c * f * d^alpha`: a coefficient monomial `f` followed by an
//! ordered product of graded partials. Partials carry the degree of their
//! variable and graded-commute among themselves, so `d^alpha` is stored as a
//! canonical monomial in the same context, with exchange signs folded into `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::degree::{koszul_sign, Degree};
use crate::grassmann::{GradedMonomial, GradedPoly, VarContext};
use crate::operator::{Graded, Operator};
use crate::scalar::{format_sum, scalar_atoms, GaussRat, Scalar};

type TermKey = (GradedMonomial, GradedMonomial);

#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldOp {
    ctx: Arc<VarContext>,
    terms: BTreeMap<TermKey, Scalar>,
}

/// A graded differential operator with its declared degree.
pub type GradedDiffOp = Graded<VectorFieldOp>;

impl VectorFieldOp {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        VectorFieldOp {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ctx: &Arc<VarContext>, c: Scalar) -> Self {
        let mut op = VectorFieldOp::zero(ctx);
        op.add_term((GradedMonomial::one(ctx), GradedMonomial::one(ctx)), &c);
        op
    }

    /// Left multiplication by a polynomial.
    pub fn multiplication(p: &GradedPoly) -> Self {
        let ctx = p.context();
        let mut op = VectorFieldOp::zero(ctx);
        for (m, c) in p.terms() {
            op.add_term((m.clone(), GradedMonomial::one(ctx)), c);
        }
        op
    }

    /// The graded partial with respect to variable `v`.
    pub fn partial(ctx: &Arc<VarContext>, v: usize) -> Self {
        let mut op = VectorFieldOp::zero(ctx);
        op.add_term((GradedMonomial::one(ctx), GradedMonomial::var(ctx, v)), &Scalar::one());
        op
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: TermKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Highest number of partials in a term.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(_, d)| d.total_power()).max().unwrap_or(0)
    }

    /// Highest total power among the coefficient monomials.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms.keys().map(|(f, _)| f.total_power()).max().unwrap_or(0)
    }

    /// Degree of each term: coefficient degree plus partial degrees.
    pub fn term_degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.terms
            .keys()
            .map(|(f, d)| f.degree(&self.ctx) + d.degree(&self.ctx))
    }

    pub fn add(&self, other: &VectorFieldOp) -> VectorFieldOp {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> VectorFieldOp {
        let mut out = VectorFieldOp::zero(&self.ctx);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// `d_v . (g d^beta)` in normal order, via
    /// `d_v . g = (d_v g) + (-1)^(v.g) g . d_v`.
    fn partial_times(&self, v: usize, terms: BTreeMap<TermKey, Scalar>) -> BTreeMap<TermKey, Scalar> {
        let ctx = &self.ctx;
        let dv = ctx.var(v).degree;
        let unit = GradedMonomial::var(ctx, v);
        let mut out = VectorFieldOp::zero(ctx);
        for ((g, beta), c) in terms {
            if let Some((k, dg)) = g.derivative(v, ctx) {
                out.add_term((dg, beta.clone()), &c.scale_int(k));
            }
            if let Some((s, nb)) = unit.mul(&beta, ctx) {
                let sign = s * koszul_sign(dv, g.degree(ctx));
                out.add_term((g, nb), &c.scale_int(sign));
            }
        }
        out.terms
    }

    /// Normal-ordered composite `self . other`.
    pub fn compose(&self, other: &VectorFieldOp) -> VectorFieldOp {
        let ctx = &self.ctx;
        let mut out = VectorFieldOp::zero(ctx);
        for ((f, alpha), ca) in &self.terms {
            let mut cur = other.terms.clone();
            // innermost partial acts first
            for v in (0..ctx.len()).rev() {
                for _ in 0..alpha.exponent(v) {
                    cur = self.partial_times(v, cur);
                }
            }
            for ((g, gamma), cb) in cur {
                if let Some((s, m)) = f.mul(&g, ctx) {
                    out.add_term((m, gamma), &(ca * &cb).scale_int(s));
                }
            }
        }
        out
    }

    /// Action on a polynomial: partials innermost-first, then the coefficient
    /// multiplies from the left.
    pub fn apply(&self, p: &GradedPoly) -> GradedPoly {
        let ctx = &self.ctx;
        let mut out = GradedPoly::zero(ctx);
        for ((f, alpha), c) in &self.terms {
            let mut q = p.clone();
            for v in (0..ctx.len()).rev() {
                for _ in 0..alpha.exponent(v) {
                    q = q.derivative(v);
                }
            }
            let coef = GradedPoly::monomial(ctx, f.clone(), c.clone());
            out = out.add(&coef.mul(&q));
        }
        out
    }
}

pub fn gdo_apply(a: &GradedDiffOp, p: &GradedPoly) -> GradedPoly {
    a.op.apply(p)
}

pub fn gdo_compose(a: &GradedDiffOp, b: &GradedDiffOp) -> GradedDiffOp {
    a.compose(b)
}

pub fn graded_bracket_gdo(a: &GradedDiffOp, b: &GradedDiffOp) -> GradedDiffOp {
    a.bracket(b)
}

impl Operator for VectorFieldOp {
    type Coord = TermKey;
    type Context = Arc<VarContext>;

    fn zero_like(&self) -> Self {
        VectorFieldOp::zero(&self.ctx)
    }

    fn is_zero(&self) -> bool {
        VectorFieldOp::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        VectorFieldOp::add(self, other)
    }

    fn scale(&self, c: &Scalar) -> Self {
        VectorFieldOp::scale(self, c)
    }

    fn compose(&self, other: &Self) -> Self {
        VectorFieldOp::compose(self, other)
    }

    fn coordinates(&self) -> Vec<((Self::Coord, u32), GaussRat)> {
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            for (p, g) in c.terms() {
                out.push(((k.clone(), p), g.clone()));
            }
        }
        out
    }

    fn conforms_to(&self, degree: Degree) -> bool {
        self.term_degrees().all(|d| d == degree)
    }
}

impl fmt::Display for VectorFieldOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<_> = self
            .terms
            .iter()
            .flat_map(|((m, d), c)| {
                let mut fs = m.factor_names(&self.ctx, str::to_string);
                fs.extend(d.factor_names(&self.ctx, |n| format!("D({n})")));
                scalar_atoms(c, &fs)
            })
            .collect();
        write!(f, "{}", format_sum(&atoms))
    }
}
