//! Exact coefficients: Gaussian rationals and polynomials in the scaling
//! dimension `lam` over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

/// A Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussRat::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        GaussRat::new(&self.re * &k, &self.im * &k)
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Literal form shared with the text formats: `2`, `-1/2`, `i`, `-3i`, `(1/2+2i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rational(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let im = im_part(&self.im);
                let sep = if im.starts_with('-') { "" } else { "+" };
                write!(f, "({}{}{})", fmt_rational(&self.re), sep, im)
            }
        }
    }
}

/// Polynomial in `lam` with Gaussian-rational coefficients, kept in canonical
/// form (no stored zero coefficient).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<u32, GaussRat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(GaussRat::one())
    }

    pub fn i() -> Self {
        Scalar::constant(GaussRat::i())
    }

    /// The scaling dimension `lam`.
    pub fn lambda() -> Self {
        Scalar::monomial(1, GaussRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::constant(GaussRat::from_ratio(num, den))
    }

    pub fn constant(c: GaussRat) -> Self {
        Scalar::monomial(0, c)
    }

    pub fn monomial(lam_power: u32, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lam_power, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussRat::is_one)
    }

    pub fn is_lambda_free(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The value when `lam`-free.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if !self.is_lambda_free() {
            return None;
        }
        Some(self.terms.get(&0).cloned().unwrap_or_else(GaussRat::zero))
    }

    /// The value when `lam`-free and real.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().filter(GaussRat::is_real).map(|c| c.re)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRat)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// Multiplies by `lam^k`.
    pub fn shift_lambda(&self, k: u32) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(p, c)| (p + k, c.clone())).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        if k == 0 {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(p, c)| (*p, c.scale_int(k))).collect(),
        }
    }

    fn add_term(&mut self, power: u32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(power).or_insert_with(GaussRat::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&power);
        }
    }

    /// Pieces used by the printers: `(real coefficient, carries i, lam power)`.
    pub fn atoms(&self) -> Vec<(BigRational, bool, u32)> {
        let mut out = Vec::new();
        for (&p, c) in &self.terms {
            if !c.re.is_zero() {
                out.push((c.re.clone(), false, p));
            }
            if !c.im.is_zero() {
                out.push((c.im.clone(), true, p));
            }
        }
        out
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::constant(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&p, c) in &rhs.terms {
            self.add_term(p, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (&p, c) in &rhs.terms {
            self.add_term(p, &-c);
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&p, a) in &self.terms {
            for (&q, b) in &rhs.terms {
                out.add_term(p + q, &(a * b));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Joins signed atoms `(coefficient, factors)` into `a*b - 1/2*c + ...`.
///
/// Shared by every printer whose output is read back by the expression parser.
pub(crate) fn format_sum(atoms: &[(BigRational, Vec<String>)]) -> String {
    if atoms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (coef, factors)) in atoms.iter().enumerate() {
        let negative = coef.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = coef.abs();
        let mut parts = Vec::new();
        if !magnitude.is_one() || factors.is_empty() {
            parts.push(fmt_rational(&magnitude));
        }
        parts.extend(factors.iter().cloned());
        out.push_str(&parts.join("*"));
    }
    out
}

/// Atoms of `coef * <factors>` with `i` and `lam` spelled as factors.
pub(crate) fn scalar_atoms(coef: &Scalar, factors: &[String]) -> Vec<(BigRational, Vec<String>)> {
    coef.atoms()
        .into_iter()
        .map(|(r, is_i, lam)| {
            let mut fs = Vec::new();
            if is_i {
                fs.push("i".to_string());
            }
            fs.extend(std::iter::repeat_n("lam".to_string(), lam as usize));
            fs.extend(factors.iter().cloned());
            (r, fs)
        })
        .collect()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        write!(f, "{}", format_sum(&scalar_atoms(self, &[])))
    }
}
