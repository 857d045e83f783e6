//! The grading group Z2 x Z2.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

/// An element `(a1, a2)` of Z2 x Z2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Degree {
    a1: u8,
    a2: u8,
}

impl Degree {
    pub const ZERO: Degree = Degree { a1: 0, a2: 0 };
    pub const D01: Degree = Degree { a1: 0, a2: 1 };
    pub const D10: Degree = Degree { a1: 1, a2: 0 };
    pub const D11: Degree = Degree { a1: 1, a2: 1 };

    pub const ALL: [Degree; 4] = [Degree::ZERO, Degree::D01, Degree::D10, Degree::D11];

    pub fn new(a1: u8, a2: u8) -> Option<Degree> {
        (a1 <= 1 && a2 <= 1).then_some(Degree { a1, a2 })
    }

    pub fn bits(self) -> [u8; 2] {
        [self.a1, self.a2]
    }

    /// `a1*b1 + a2*b2 mod 2`.
    pub fn dot(self, other: Degree) -> u8 {
        (self.a1 * other.a1 + self.a2 * other.a2) % 2
    }

    /// True for (0,1) and (1,0): the degrees whose elements square to zero
    /// as graded numbers.
    pub fn is_nilpotent(self) -> bool {
        self.dot(self) == 1
    }

    /// Scales by an integer, i.e. the degree of a product of `k` copies.
    pub fn times(self, k: u32) -> Degree {
        if k.is_multiple_of(2) {
            Degree::ZERO
        } else {
            self
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree {
            a1: self.a1 ^ rhs.a1,
            a2: self.a2 ^ rhs.a2,
        }
    }
}

pub fn degree_add(a: Degree, b: Degree) -> Degree {
    a + b
}

/// `(-1)^(a.b)`.
pub fn koszul_sign(a: Degree, b: Degree) -> i64 {
    if a.dot(b) == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid degree `{0}`: expected (a1,a2) with bits 0 or 1")]
pub struct DegreeParseError(pub String);

impl FromStr for Degree {
    type Err = DegreeParseError;

    /// Accepts `(0,1)`, `0,1` and `01`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DegreeParseError(s.to_string());
        let digits: Vec<char> = s.chars().filter(|c| !matches!(c, '(' | ')' | ',' | ' ')).collect();
        let bit = |c: char| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        };
        match digits.as_slice() {
            [a, b] => Degree::new(bit(*a).ok_or_else(err)?, bit(*b).ok_or_else(err)?).ok_or_else(err),
            _ => Err(err()),
        }
    }
}
