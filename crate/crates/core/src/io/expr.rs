//! Operator expressions:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*"? factor)*
//! factor := rational | "i" | "lam" | "t" | "x" | "dt" | "dx"
//!         | "e(" int "," int ")" | varname | "D(" varname ")"
//!         | "[" label "]" | "(" expr ")"
//! ```
//!
//! `[label]` refers to an operator defined earlier in the same file.

use std::collections::HashMap;
use std::sync::Arc;

use num::{BigInt, BigRational, One};

use crate::grassmann::{GradedPoly, VarContext};
use crate::io::{ParseError, ParseErrorKind, Pos};
use crate::matop::Mat4;
use crate::operator::Operator;
use crate::scalar::Scalar;
use crate::vecfield::VectorFieldOp;
use crate::weyl::DiffOp;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Ref(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(r) => r.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Ref(s) => format!("[{s}]"),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::End => "end of expression".into(),
        }
    }
}

fn lex(src: &str, base: Pos) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let at = |k: usize| Pos {
        line: base.line,
        column: base.column + k,
    };
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        let tok = match c {
            ' ' | '\t' => {
                k += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '[' => {
                let Some(len) = chars[k + 1..].iter().position(|&c| c == ']') else {
                    return Err(ParseError::new(
                        at(k),
                        "[",
                        ParseErrorKind::Unexpected("closing `]`".into()),
                    ));
                };
                let label: String = chars[k + 1..k + 1 + len].iter().collect();
                k += len + 1;
                Tok::Ref(label.trim().to_string())
            }
            c if c.is_ascii_digit() => {
                let digits = |k: &mut usize| {
                    let s = *k;
                    while *k < chars.len() && chars[*k].is_ascii_digit() {
                        *k += 1;
                    }
                    chars[s..*k].iter().collect::<String>()
                };
                let num: BigInt = digits(&mut k).parse().expect("digits");
                let mut den = BigInt::one();
                if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                    k += 1;
                    den = digits(&mut k).parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(ParseError::new(at(start), "0", ParseErrorKind::Lex('/')));
                    }
                }
                out.push((Tok::Num(BigRational::new(num, den)), at(start)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push((Tok::Ident(chars[start..k].iter().collect()), at(start)));
                continue;
            }
            other => return Err(ParseError::new(at(k), other.to_string(), ParseErrorKind::Lex(other))),
        };
        k += 1;
        out.push((tok, at(start)));
    }
    out.push((Tok::End, at(chars.len())));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigRational),
    Ident(String, Pos),
    Elem(usize, usize, Pos),
    Partial(String, Pos),
    Ref(String, Pos),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    k: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.k].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.k].clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::new(
            self.pos(),
            self.peek().text(),
            ParseErrorKind::Unexpected(expected.to_string()),
        ))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push((negative, self.term()?));
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(Expr::Sum(terms))
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Ref(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Expr::Product(factors))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                let pos = self.pos();
                self.bump();
                usize::try_from(r.to_integer())
                    .map_err(|_| ParseError::new(pos, r.to_string(), ParseErrorKind::BadIndex))
            }
            _ => self.fail("matrix index"),
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(r) => Ok(Expr::Num(r)),
            Tok::Ref(label) => Ok(Expr::Ref(label, pos)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if *self.peek() == Tok::LParen && (name == "e" || name == "D") => {
                self.bump();
                let e = if name == "e" {
                    let i = self.index()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let j = self.index()?;
                    Expr::Elem(i, j, pos)
                } else {
                    match self.bump() {
                        (Tok::Ident(v), _) => Expr::Partial(v, pos),
                        _ => {
                            self.k -= 1;
                            return self.fail("variable name");
                        }
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => Ok(Expr::Ident(name, pos)),
            _ => {
                self.k -= 1;
                self.fail("operand")
            }
        }
    }
}

fn parse(src: &str, base: Pos) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src, base)?,
        k: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("operator or end of expression");
    }
    Ok(e)
}

/// How the atoms of an expression turn into operators of one kind.
trait Builder {
    type Op: Operator;
    fn scalar(&self, s: Scalar) -> Self::Op;
    fn ident(&self, name: &str, pos: Pos) -> Result<Self::Op, ParseError>;
    fn elem(&self, i: usize, j: usize, pos: Pos) -> Result<Self::Op, ParseError>;
    fn partial(&self, var: &str, pos: Pos) -> Result<Self::Op, ParseError>;
    fn reference(&self, label: &str, pos: Pos) -> Result<Self::Op, ParseError>;
}

fn eval<B: Builder>(b: &B, e: &Expr) -> Result<B::Op, ParseError> {
    match e {
        Expr::Num(r) => Ok(b.scalar(Scalar::constant(crate::scalar::GaussRat::real(r.clone())))),
        Expr::Ident(name, _) if name == "i" => Ok(b.scalar(Scalar::i())),
        Expr::Ident(name, _) if name == "lam" => Ok(b.scalar(Scalar::lambda())),
        Expr::Ident(name, pos) => b.ident(name, *pos),
        Expr::Elem(i, j, pos) => b.elem(*i, *j, *pos),
        Expr::Partial(v, pos) => b.partial(v, *pos),
        Expr::Ref(l, pos) => b.reference(l, *pos),
        Expr::Sum(terms) => {
            let mut acc: Option<B::Op> = None;
            for (negative, t) in terms {
                let mut v = eval(b, t)?;
                if *negative {
                    v = v.scale(&Scalar::from_int(-1));
                }
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.add(&v),
                });
            }
            Ok(acc.unwrap_or_else(|| b.scalar(Scalar::zero())))
        }
        Expr::Product(factors) => {
            let mut acc: Option<B::Op> = None;
            for f in factors {
                let v = eval(b, f)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.compose(&v),
                });
            }
            Ok(acc.unwrap_or_else(|| b.scalar(Scalar::one())))
        }
    }
}

fn unknown_ref(label: &str, pos: Pos) -> ParseError {
    ParseError::new(
        pos,
        format!("[{label}]"),
        ParseErrorKind::UnknownIdentifier(label.to_string()),
    )
}

struct MatrixBuilder<'a> {
    refs: &'a HashMap<String, Mat4>,
}

impl Builder for MatrixBuilder<'_> {
    type Op = Mat4;

    fn scalar(&self, s: Scalar) -> Mat4 {
        Mat4::diag(&DiffOp::scalar(s))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<Mat4, ParseError> {
        let d = match name {
            "t" => DiffOp::t(),
            "x" => DiffOp::x(),
            "dt" => DiffOp::dt(),
            "dx" => DiffOp::dx(),
            _ => {
                return Err(ParseError::new(
                    pos,
                    name,
                    ParseErrorKind::UnknownIdentifier(name.to_string()),
                ))
            }
        };
        Ok(Mat4::diag(&d))
    }

    fn elem(&self, i: usize, j: usize, pos: Pos) -> Result<Mat4, ParseError> {
        Mat4::e(i, j).map_err(|_| ParseError::new(pos, format!("e({i},{j})"), ParseErrorKind::BadIndex))
    }

    fn partial(&self, var: &str, pos: Pos) -> Result<Mat4, ParseError> {
        Err(ParseError::new(pos, format!("D({var})"), ParseErrorKind::ModeMixing))
    }

    fn reference(&self, label: &str, pos: Pos) -> Result<Mat4, ParseError> {
        self.refs.get(label).cloned().ok_or_else(|| unknown_ref(label, pos))
    }
}

struct GradedBuilder<'a> {
    ctx: &'a Arc<VarContext>,
    refs: &'a HashMap<String, VectorFieldOp>,
}

impl GradedBuilder<'_> {
    fn var(&self, name: &str, pos: Pos) -> Result<usize, ParseError> {
        self.ctx.index_of(name).ok_or_else(|| {
            let kind = if matches!(name, "t" | "x" | "dt" | "dx") {
                ParseErrorKind::ModeMixing
            } else {
                ParseErrorKind::UnknownIdentifier(name.to_string())
            };
            ParseError::new(pos, name, kind)
        })
    }
}

impl Builder for GradedBuilder<'_> {
    type Op = VectorFieldOp;

    fn scalar(&self, s: Scalar) -> VectorFieldOp {
        VectorFieldOp::scalar(self.ctx, s)
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<VectorFieldOp, ParseError> {
        let k = self.var(name, pos)?;
        let p = GradedPoly::var(self.ctx, &self.ctx.var(k).name).expect("declared variable");
        Ok(VectorFieldOp::multiplication(&p))
    }

    fn elem(&self, i: usize, j: usize, pos: Pos) -> Result<VectorFieldOp, ParseError> {
        Err(ParseError::new(pos, format!("e({i},{j})"), ParseErrorKind::ModeMixing))
    }

    fn partial(&self, var: &str, pos: Pos) -> Result<VectorFieldOp, ParseError> {
        let k = self.var(var, pos)?;
        Ok(VectorFieldOp::partial(self.ctx, k))
    }

    fn reference(&self, label: &str, pos: Pos) -> Result<VectorFieldOp, ParseError> {
        self.refs.get(label).cloned().ok_or_else(|| unknown_ref(label, pos))
    }
}

/// Which kind of operator an expression denotes.
#[derive(Clone, Copy, Debug)]
pub enum ExprContext<'a> {
    /// 4x4 matrices of differential operators in `t`, `x`.
    Matrix,
    /// Differential operators on the graded polynomial algebra of the context.
    Graded(&'a Arc<VarContext>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedOp {
    Matrix(Box<Mat4>),
    Graded(VectorFieldOp),
}

pub fn parse_operator_expr(src: &str, ctx: ExprContext<'_>) -> Result<ParsedOp, ParseError> {
    match ctx {
        ExprContext::Matrix => {
            parse_matrix_expr(src, &HashMap::new(), Pos::start()).map(|m| ParsedOp::Matrix(Box::new(m)))
        }
        ExprContext::Graded(c) => parse_graded_expr(src, c, &HashMap::new(), Pos::start()).map(ParsedOp::Graded),
    }
}

/// Matrix-mode expression; `refs` resolves `[label]`, `base` is the position
/// of the first character for error reporting.
pub fn parse_matrix_expr(src: &str, refs: &HashMap<String, Mat4>, base: Pos) -> Result<Mat4, ParseError> {
    let e = parse(src, base)?;
    eval(&MatrixBuilder { refs }, &e)
}

pub fn parse_graded_expr(
    src: &str,
    ctx: &Arc<VarContext>,
    refs: &HashMap<String, VectorFieldOp>,
    base: Pos,
) -> Result<VectorFieldOp, ParseError> {
    let e = parse(src, base)?;
    eval(&GradedBuilder { ctx, refs }, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::Degree;

    fn m(src: &str) -> Result<Mat4, ParseError> {
        parse_matrix_expr(src, &HashMap::new(), Pos::start())
    }

    #[test]
    fn supercharge() {
        let q1 = m("e(1,3)+e(4,2)+(e(2,4)+e(3,1))*dt").unwrap();
        let e = |i, j| Mat4::e(i, j).unwrap();
        let want = e(1, 3)
            .add(&e(4, 2))
            .add(&e(2, 4).add(&e(3, 1)).compose(&Mat4::diag(&DiffOp::dt())));
        assert_eq!(q1, want);
        assert_eq!(m(&q1.to_string()).unwrap(), q1);
    }

    #[test]
    fn implicit_products_and_unary_minus() {
        let k = m("-t(t dt + 2lam + x dx) - t(2e(2,2) + e(3,3) + e(4,4))").unwrap();
        assert_eq!(m(&k.to_string()).unwrap(), k);
        assert_eq!(m("0").unwrap(), Mat4::zero());
        assert_eq!(m("1/2*dt - 1/2 dt").unwrap(), Mat4::zero());
    }

    #[test]
    fn graded_operator() {
        let ctx = VarContext::new([("x2", Degree::ZERO), ("psi", Degree::D01)]).unwrap();
        let p = parse_graded_expr("-D(psi)+1/2*psi*D(x2)", &ctx, &HashMap::new(), Pos::start()).unwrap();
        assert_eq!(p.to_string(), "-D(psi) + 1/2*psi*D(x2)");
        let refs = HashMap::from([("P".to_string(), p.clone())]);
        let twice = parse_graded_expr("[P] + [P]", &ctx, &refs, Pos::start()).unwrap();
        assert_eq!(twice, p.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn errors_carry_positions() {
        let err = m("dt + $").unwrap_err();
        assert_eq!((err.pos.line, err.pos.column), (1, 6));
        assert_eq!(err.token, "$");
        let err = m("e(1,3) + D(x)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ModeMixing);
        assert_eq!(err.pos.column, 10);
        let ctx = VarContext::new([("psi", Degree::D01)]).unwrap();
        let err = parse_graded_expr("psi*e(1,2)", &ctx, &HashMap::new(), Pos::start()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ModeMixing);
        let err = parse_graded_expr("psi*dt", &ctx, &HashMap::new(), Pos::start()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ModeMixing);
        let err = parse_graded_expr("phi", &ctx, &HashMap::new(), Pos::start()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("phi".into()));
        assert!(m("(dt").is_err());
        assert!(m("e(5,1)").is_err());
        assert!(m("dt +").is_err());
    }
}
