//! Normal-ordered differential operators in the commuting variables `t`, `x`.
//!
//! A [`WeylMonomial`] is `t^pt x^px dt^dt dx^dx` with every variable to the
//! left of every derivative. Products are brought back to this order with
//! `d^m . v^n = sum_k C(m,k) n!/(n-k)! v^(n-k) d^(m-k)`, so equality of
//! operators is equality of term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{format_sum, scalar_atoms, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeylMonomial {
    pub pt: u32,
    pub px: u32,
    pub dt: u32,
    pub dx: u32,
}

impl WeylMonomial {
    pub fn new(pt: u32, px: u32, dt: u32, dx: u32) -> Self {
        WeylMonomial { pt, px, dt, dx }
    }

    pub fn order(&self) -> u32 {
        self.dt + self.dx
    }

    fn factors(&self) -> Vec<String> {
        let mut fs = Vec::new();
        fs.extend(std::iter::repeat_n("t".to_string(), self.pt as usize));
        fs.extend(std::iter::repeat_n("x".to_string(), self.px as usize));
        fs.extend(std::iter::repeat_n("dt".to_string(), self.dt as usize));
        fs.extend(std::iter::repeat_n("dx".to_string(), self.dx as usize));
        fs
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * i64::from(n - j) / i64::from(j + 1))
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|j| i64::from(n - j)).product()
}

/// Differential operator with polynomial coefficients in `t`, `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    terms: BTreeMap<WeylMonomial, Scalar>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn one() -> Self {
        DiffOp::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        DiffOp::term(WeylMonomial::default(), c)
    }

    pub fn term(m: WeylMonomial, c: Scalar) -> Self {
        let mut op = DiffOp::zero();
        op.add_term(m, &c);
        op
    }

    pub fn t() -> Self {
        DiffOp::term(WeylMonomial::new(1, 0, 0, 0), Scalar::one())
    }

    pub fn x() -> Self {
        DiffOp::term(WeylMonomial::new(0, 1, 0, 0), Scalar::one())
    }

    pub fn dt() -> Self {
        DiffOp::term(WeylMonomial::new(0, 0, 1, 0), Scalar::one())
    }

    pub fn dx() -> Self {
        DiffOp::term(WeylMonomial::new(0, 0, 0, 1), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(WeylMonomial::order).max().unwrap_or(0)
    }

    /// Highest total power of `t` and `x` among the coefficients.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.pt + m.px).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: WeylMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, &(v * c));
        }
        out
    }

    /// Normal-ordered product `self . other`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for k in 0..=a.dt.min(b.pt) {
                    let kt = binomial(a.dt, k) * falling(b.pt, k);
                    for l in 0..=a.dx.min(b.px) {
                        let kx = binomial(a.dx, l) * falling(b.px, l);
                        let m = WeylMonomial::new(a.pt + b.pt - k, a.px + b.px - l, a.dt - k + b.dt, a.dx - l + b.dx);
                        out.add_term(m, &c.scale_int(kt * kx));
                    }
                }
            }
        }
        out
    }

    /// Standard action on a polynomial in `t`, `x`.
    pub fn apply(&self, p: &TxPoly) -> TxPoly {
        let mut out = TxPoly::zero();
        for (m, c) in &self.terms {
            for (&(et, ex), pc) in &p.terms {
                if et < m.dt || ex < m.dx {
                    continue;
                }
                let k = falling(et, m.dt) * falling(ex, m.dx);
                out.add_term((et - m.dt + m.pt, ex - m.dx + m.px), &(c * pc).scale_int(k));
            }
        }
        out
    }

    pub(crate) fn atoms(&self) -> Vec<(num::BigRational, Vec<String>)> {
        self.terms
            .iter()
            .flat_map(|(m, c)| scalar_atoms(c, &m.factors()))
            .collect()
    }
}

pub fn weyl_compose(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.compose(b)
}

pub fn weyl_apply(a: &DiffOp, p: &TxPoly) -> TxPoly {
    a.apply(p)
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_sum(&self.atoms()))
    }
}

/// Polynomial in `t`, `x`; keys are `(power of t, power of x)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TxPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl TxPoly {
    pub fn zero() -> Self {
        TxPoly::default()
    }

    pub fn monomial(et: u32, ex: u32, c: Scalar) -> Self {
        let mut p = TxPoly::zero();
        p.add_term((et, ex), &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, et: u32, ex: u32) -> Scalar {
        self.terms.get(&(et, ex)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, key: (u32, u32), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Add for &TxPoly {
    type Output = TxPoly;
    fn add(self, rhs: &TxPoly) -> TxPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}
