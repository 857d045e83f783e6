//! The line-oriented definition format shared by every corpus entry.
//!
//! ```text
//! kind d-module | vector-field | table | grading | basis-change | weights
//! name g121
//! note "free text"
//! var psi (0,1)                  vector fields only
//! basis Q1 (1,0)                 one per basis element, in order
//! Q1 = e(1,3) + e(4,2) + ...     operator, realizations only
//! derive P~ = {P,P}              generator defined by a bracket
//! {Q1,S1} = -2 D                 table entry; [A,B] for commutators
//! Q+ = Q1 + i Q2                 basis change row
//! grading D Rbar                 weights: grading elements
//! weight Q+ = 1/2 1              weights: one value per grading element
//! split + H P~ P                 weights: expected part membership
//! ```
//!
//! `#` starts a comment.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::algebra::{
    derived_generators, AlgebraError, BasisChange, BasisElement, BracketTable, Combination, Derivation, Realization,
    Split, WeightTable,
};
use crate::degree::{koszul_sign, Degree};
use crate::grassmann::VarContext;
use crate::io::expr::{parse_graded_expr, parse_matrix_expr};
use crate::io::{ParseError, ParseErrorKind, Pos};
use crate::matop::Mat4;
use crate::operator::{Graded, Operator};
use crate::scalar::{GaussRat, Scalar};
use crate::vecfield::VectorFieldOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    DModule,
    VectorField,
    Table,
    Grading,
    BasisChange,
    Weights,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::DModule => "d-module",
            Kind::VectorField => "vector-field",
            Kind::Table => "table",
            Kind::Grading => "grading",
            Kind::BasisChange => "basis-change",
            Kind::Weights => "weights",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Kind::DModule,
            Kind::VectorField,
            Kind::Table,
            Kind::Grading,
            Kind::BasisChange,
            Kind::Weights,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| s.to_string())
    }
}

/// A realization as written: base operators plus bracket-defined generators.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationDef<T: Operator> {
    pub context: T::Context,
    pub basis: Vec<BasisElement>,
    pub ops: Vec<(String, Graded<T>)>,
    pub derived: Vec<Derivation>,
}

impl<T: Operator> RealizationDef<T> {
    pub fn basis_labels(&self) -> Vec<&str> {
        self.basis.iter().map(|b| b.label.as_str()).collect()
    }

    /// Base operators extended by the derived generators.
    pub fn realize(&self, name: &str, notes: &[String]) -> Result<Realization<T>, AlgebraError> {
        let mut r = Realization::new(name, self.context.clone());
        r.notes = notes.to_vec();
        for (l, op) in &self.ops {
            r.push(l.clone(), op.clone())?;
        }
        derived_generators(&r, &self.derived)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightsDef {
    pub weights: WeightTable,
    pub split: Option<Split>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    DModule(RealizationDef<Mat4>),
    VectorField(RealizationDef<VectorFieldOp>),
    Table(BracketTable),
    Grading(Vec<BasisElement>),
    BasisChange(BasisChange),
    Weights(WeightsDef),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DefinitionFile {
    pub name: String,
    /// Editorial normalizations applied while encoding.
    pub notes: Vec<String>,
    pub body: Body,
}

fn rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let ok = |p: &str| {
        let digits = p.strip_prefix('-').unwrap_or(p);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
        return None;
    }
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n.parse().ok()?, d))
}

fn imaginary(s: &str) -> Option<BigRational> {
    let body = s.strip_suffix('i')?;
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => rational(body.strip_prefix('+').unwrap_or(body)),
    }
}

/// Reads a coefficient literal in the form printed for Gaussian rationals:
/// `2`, `-1/2`, `i`, `-3i`, `(1/2-2i)`.
pub fn parse_literal(s: &str) -> Option<GaussRat> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let cut = inner
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()?;
        return Some(GaussRat::new(rational(&inner[..cut])?, imaginary(&inner[cut..])?));
    }
    if let Some(im) = imaginary(s) {
        return Some(GaussRat::new(BigRational::zero(), im));
    }
    rational(s).map(GaussRat::real)
}

/// Whitespace-separated words with their 1-based columns.
fn words(s: &str, col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((col + s[..b].chars().count(), &s[b..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((col + s[..b].chars().count(), &s[b..]));
    }
    out
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn at(&self, column: usize) -> Pos {
        Pos { line: self.no, column }
    }

    fn err(&self, column: usize, token: &str, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.at(column), token, kind)
    }

    fn invalid(&self, column: usize, token: &str, msg: impl fmt::Display) -> ParseError {
        self.err(column, token, ParseErrorKind::Invalid(msg.to_string()))
    }

    /// Splits `lhs = rhs`, returning both trimmed with the column of `rhs`.
    fn equation(&self, from: usize) -> Result<(&'a str, &'a str, usize), ParseError> {
        let text = &self.text[from..];
        let Some(eq) = text.find('=') else {
            return Err(self.err(from + 1, text.trim(), ParseErrorKind::Unexpected("`=`".into())));
        };
        let rhs = &text[eq + 1..];
        let lead = rhs.len() - rhs.trim_start().len();
        Ok((text[..eq].trim(), rhs.trim(), from + eq + 2 + lead))
    }
}

fn degree_of(line: &Line<'_>, col: usize, s: &str) -> Result<Degree, ParseError> {
    Degree::from_str(s).map_err(|_| line.err(col, s, ParseErrorKind::BadDegree))
}

/// `label (a,b)` after a directive.
fn labeled_degree(line: &Line<'_>, rest: &[(usize, &str)]) -> Result<(String, Degree), ParseError> {
    match rest {
        [(_, label), degree @ ..] if !degree.is_empty() => {
            let col = degree[0].0;
            let joined: String = degree.iter().map(|(_, w)| *w).collect();
            Ok((label.to_string(), degree_of(line, col, &joined)?))
        }
        _ => Err(line.err(
            rest.first().map_or(1, |w| w.0),
            rest.first().map_or("", |w| w.1),
            ParseErrorKind::Unexpected("label and degree".into()),
        )),
    }
}

/// `2 D - 1/2 R + (1+i) Q1`; `0` is the empty combination.
fn combination(line: &Line<'_>, rhs: &str, col: usize) -> Result<Vec<(String, Scalar, Pos)>, ParseError> {
    let ws = words(rhs, col);
    if ws.len() == 1 && ws[0].1 == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut k = 0;
    while k < ws.len() {
        let (mut c, mut w) = ws[k];
        let mut negative = false;
        if w == "+" || w == "-" {
            negative = w == "-";
            k += 1;
            let Some(&next) = ws.get(k) else {
                return Err(line.err(c, w, ParseErrorKind::Unexpected("term after sign".into())));
            };
            (c, w) = next;
        } else if !out.is_empty() {
            return Err(line.err(c, w, ParseErrorKind::Unexpected("`+` or `-`".into())));
        } else if w.len() > 1 && (w.starts_with('-') || w.starts_with('+')) {
            negative = w.starts_with('-');
            w = &w[1..];
            c += 1;
        }
        let mut coef = GaussRat::one();
        if let Some(lit) = parse_literal(w) {
            coef = lit;
            k += 1;
            let Some(&next) = ws.get(k) else {
                return Err(line.err(c, w, ParseErrorKind::Unexpected("label after coefficient".into())));
            };
            (c, w) = next;
        }
        if negative {
            coef = -&coef;
        }
        out.push((w.to_string(), Scalar::constant(coef), line.at(c)));
        k += 1;
    }
    Ok(out)
}

fn bracket_lhs(line: &Line<'_>, lhs: &str) -> Result<(String, String, bool), ParseError> {
    let (open, close, anti) = if lhs.starts_with('{') {
        ('{', '}', true)
    } else {
        ('[', ']', false)
    };
    let inner = lhs
        .strip_prefix(open)
        .and_then(|s| s.strip_suffix(close))
        .and_then(|s| s.split_once(','));
    match inner {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((a.trim().to_string(), b.trim().to_string(), anti))
        }
        _ => Err(line.err(1, lhs, ParseErrorKind::Unexpected("`[A,B]` or `{A,B}`".into()))),
    }
}

fn check_bracket_kind(line: &Line<'_>, token: &str, a: Degree, b: Degree, anti: bool) -> Result<(), ParseError> {
    let symmetric = koszul_sign(a, b) == -1;
    if symmetric == anti {
        Ok(())
    } else {
        let want = if symmetric {
            "an anticommutator {A,B}"
        } else {
            "a commutator [A,B]"
        };
        Err(line.invalid(1, token, format!("degrees {a} and {b} call for {want}")))
    }
}

fn quoted(line: &Line<'_>, rest: &str, col: usize) -> Result<String, ParseError> {
    let rest = rest.trim();
    match rest.strip_prefix('"').and_then(|r| r.strip_suffix('"')) {
        Some(s) => Ok(s.to_string()),
        None => Err(line.err(col, rest, ParseErrorKind::Unexpected("quoted text".into()))),
    }
}

struct Header {
    kind: Kind,
    name: String,
    notes: Vec<String>,
    vars: Vec<(String, Degree)>,
    basis: Vec<BasisElement>,
    basis_lines: HashMap<String, usize>,
    grading: Vec<String>,
}

const HEADER: [&str; 6] = ["kind", "name", "note", "var", "basis", "grading"];

fn directive(text: &str) -> &str {
    text.split_whitespace().next().unwrap_or("")
}

fn read_header(lines: &[Line<'_>]) -> Result<Header, ParseError> {
    let mut kind = None;
    let mut h = Header {
        kind: Kind::Table,
        name: String::new(),
        notes: Vec::new(),
        vars: Vec::new(),
        basis: Vec::new(),
        basis_lines: HashMap::new(),
        grading: Vec::new(),
    };
    for line in lines {
        let ws = words(line.text, 1);
        let (c0, d) = ws[0];
        let rest = &ws[1..];
        match d {
            "kind" => {
                let Some(&(c, k)) = rest.first() else {
                    return Err(line.err(c0, d, ParseErrorKind::Unexpected("kind name".into())));
                };
                if kind.is_some() {
                    return Err(line.invalid(c0, d, "kind declared twice"));
                }
                kind =
                    Some(Kind::from_str(k).map_err(|k| line.err(c, &k, ParseErrorKind::UnknownDirective(k.clone())))?);
            }
            "name" => match rest {
                [(_, n)] => h.name = n.to_string(),
                _ => return Err(line.err(c0, d, ParseErrorKind::Unexpected("single name".into()))),
            },
            "note" => h
                .notes
                .push(quoted(line, &line.text[line.text.find("note").unwrap() + 4..], c0 + 5)?),
            "var" => {
                let (n, deg) = labeled_degree(line, rest)?;
                if h.vars.iter().any(|(v, _)| *v == n) {
                    return Err(line.invalid(rest[0].0, &n, "variable declared twice"));
                }
                h.vars.push((n, deg));
            }
            "basis" => {
                let (l, deg) = labeled_degree(line, rest)?;
                if h.basis_lines.insert(l.clone(), line.no).is_some() {
                    return Err(line.invalid(rest[0].0, &l, "label declared twice"));
                }
                h.basis.push(BasisElement::new(l, deg));
            }
            "grading" => h.grading = rest.iter().map(|(_, w)| w.to_string()).collect(),
            _ => {}
        }
    }
    h.kind = kind.ok_or_else(|| ParseError::new(Pos::start(), "", ParseErrorKind::Unexpected("`kind` line".into())))?;
    if h.name.is_empty() {
        return Err(ParseError::new(
            Pos::start(),
            "",
            ParseErrorKind::Unexpected("`name` line".into()),
        ));
    }
    Ok(h)
}

fn body_lines<'a, 'b>(lines: &'b [Line<'a>], kind: Kind) -> Result<Vec<&'b Line<'a>>, ParseError> {
    let mut out = Vec::new();
    for line in lines {
        let d = directive(line.text);
        if HEADER.contains(&d) {
            let allowed = match d {
                "var" => kind == Kind::VectorField,
                "basis" => !matches!(kind, Kind::BasisChange | Kind::Weights),
                "grading" => kind == Kind::Weights,
                _ => true,
            };
            if !allowed {
                return Err(line.err(1, d, ParseErrorKind::UnknownDirective(d.to_string())));
            }
            continue;
        }
        out.push(line);
    }
    Ok(out)
}

trait OpParser: Operator {
    fn parse_op(src: &str, ctx: &Self::Context, refs: &HashMap<String, Self>, at: Pos) -> Result<Self, ParseError>;
}

impl OpParser for Mat4 {
    fn parse_op(src: &str, _: &(), refs: &HashMap<String, Mat4>, at: Pos) -> Result<Mat4, ParseError> {
        parse_matrix_expr(src, refs, at)
    }
}

impl OpParser for VectorFieldOp {
    fn parse_op(
        src: &str,
        ctx: &Arc<VarContext>,
        refs: &HashMap<String, VectorFieldOp>,
        at: Pos,
    ) -> Result<VectorFieldOp, ParseError> {
        parse_graded_expr(src, ctx, refs, at)
    }
}

fn read_realization<T: OpParser>(
    h: &Header,
    body: &[&Line<'_>],
    context: T::Context,
) -> Result<RealizationDef<T>, ParseError> {
    let degrees: HashMap<&str, Degree> = h.basis.iter().map(|b| (b.label.as_str(), b.degree)).collect();
    let mut refs: HashMap<String, T> = HashMap::new();
    let mut defined: HashMap<String, Degree> = HashMap::new();
    let mut def = RealizationDef {
        context,
        basis: h.basis.clone(),
        ops: Vec::new(),
        derived: Vec::new(),
    };
    for line in body {
        let derive = directive(line.text) == "derive";
        let from = if derive {
            line.text.find("derive").unwrap() + 6
        } else {
            0
        };
        let (lhs, rhs, col) = line.equation(from)?;
        let Some(&degree) = degrees.get(lhs) else {
            return Err(line.invalid(from + 1, lhs, format!("`{lhs}` is not declared with `basis`")));
        };
        if defined.contains_key(lhs) {
            return Err(line.invalid(from + 1, lhs, format!("`{lhs}` defined twice")));
        }
        if derive {
            let (a, b, anti) = bracket_lhs(line, rhs)?;
            for x in [&a, &b] {
                if !defined.contains_key(x.as_str()) {
                    return Err(line.err(col, x, ParseErrorKind::UnknownIdentifier(x.clone())));
                }
            }
            check_bracket_kind(line, rhs, defined[&a], defined[&b], anti)?;
            if defined[&a] + defined[&b] != degree {
                return Err(line.invalid(
                    col,
                    rhs,
                    format!("bracket has degree {}, `{lhs}` is {degree}", defined[&a] + defined[&b]),
                ));
            }
            def.derived.push(Derivation {
                label: lhs.to_string(),
                left: a,
                right: b,
                anticommutator: anti,
            });
        } else {
            let op = T::parse_op(rhs, &def.context, &refs, line.at(col))?;
            let graded =
                Graded::new(op.clone(), degree).map_err(|e| line.invalid(col, rhs, format!("`{lhs}`: {e}")))?;
            refs.insert(lhs.to_string(), op);
            def.ops.push((lhs.to_string(), graded));
        }
        defined.insert(lhs.to_string(), degree);
    }
    if let Some(b) = h.basis.iter().find(|b| !defined.contains_key(&b.label)) {
        let line = Line {
            no: h.basis_lines[&b.label],
            text: "",
        };
        return Err(line.invalid(1, &b.label, format!("`{}` has no definition", b.label)));
    }
    Ok(def)
}

fn read_table(h: &Header, body: &[&Line<'_>]) -> Result<BracketTable, ParseError> {
    let mut t = BracketTable::new(h.name.clone(), h.basis.clone())
        .map_err(|e| ParseError::new(Pos::start(), "", ParseErrorKind::Invalid(e.to_string())))?;
    for line in body {
        let (lhs, rhs, col) = line.equation(0)?;
        let (a, b, anti) = bracket_lhs(line, lhs)?;
        let lookup = |l: &str, pos: Pos| {
            t.index_of(l)
                .map_err(|_| ParseError::new(pos, l, ParseErrorKind::UnknownIdentifier(l.into())))
        };
        let i = lookup(&a, line.at(2))?;
        let j = lookup(&b, line.at(2))?;
        check_bracket_kind(line, lhs, t.degree(i), t.degree(j), anti)?;
        let mut comb = Combination::new();
        for (l, c, pos) in combination(line, rhs, col)? {
            let k = lookup(&l, pos)?;
            let slot = comb.entry(k).or_default();
            *slot += &c;
        }
        t.set(i, j, comb).map_err(|e| line.invalid(1, lhs, e))?;
    }
    Ok(t)
}

fn read_basis_change(h: &Header, body: &[&Line<'_>]) -> Result<BasisChange, ParseError> {
    let mut rows: Vec<(String, Vec<(String, Scalar)>)> = Vec::new();
    for line in body {
        let (lhs, rhs, col) = line.equation(0)?;
        if rows.iter().any(|(l, _)| l == lhs) {
            return Err(line.invalid(1, lhs, format!("`{lhs}` defined twice")));
        }
        let terms = combination(line, rhs, col)?
            .into_iter()
            .map(|(l, c, _)| (l, c))
            .collect();
        rows.push((lhs.to_string(), terms));
    }
    Ok(BasisChange {
        name: h.name.clone(),
        rows,
    })
}

fn read_weights(h: &Header, body: &[&Line<'_>]) -> Result<WeightsDef, ParseError> {
    let mut rows = Vec::new();
    let mut split: Option<Split> = None;
    for line in body {
        let ws = words(line.text, 1);
        match ws[0].1 {
            "weight" => {
                let (lhs, rhs, col) = line.equation(line.text.find("weight").unwrap() + 6)?;
                let mut vals = Vec::new();
                for (c, w) in words(rhs, col) {
                    let g = parse_literal(w).ok_or_else(|| line.err(c, w, ParseErrorKind::BadLiteral))?;
                    vals.push(Scalar::constant(g));
                }
                if vals.len() != h.grading.len() {
                    return Err(line.invalid(col, rhs, format!("expected {} values", h.grading.len())));
                }
                rows.push((lhs.to_string(), vals));
            }
            "split" => {
                let s = split.get_or_insert_with(Split::default);
                let Some(&(c, part)) = ws.get(1) else {
                    return Err(line.err(ws[0].0, "split", ParseErrorKind::Unexpected("`+`, `0` or `-`".into())));
                };
                let dest = match part {
                    "+" => &mut s.positive,
                    "0" => &mut s.zero,
                    "-" => &mut s.negative,
                    _ => return Err(line.err(c, part, ParseErrorKind::Unexpected("`+`, `0` or `-`".into()))),
                };
                dest.extend(ws[2..].iter().map(|(_, w)| w.to_string()));
            }
            d => return Err(line.err(ws[0].0, d, ParseErrorKind::UnknownDirective(d.to_string()))),
        }
    }
    Ok(WeightsDef {
        weights: WeightTable {
            grading: h.grading.clone(),
            rows,
        },
        split,
    })
}

impl DefinitionFile {
    pub fn kind(&self) -> Kind {
        match &self.body {
            Body::DModule(_) => Kind::DModule,
            Body::VectorField(_) => Kind::VectorField,
            Body::Table(_) => Kind::Table,
            Body::Grading(_) => Kind::Grading,
            Body::BasisChange(_) => Kind::BasisChange,
            Body::Weights(_) => Kind::Weights,
        }
    }

    pub fn parse(src: &str) -> Result<DefinitionFile, ParseError> {
        let lines: Vec<Line<'_>> = src
            .lines()
            .enumerate()
            .map(|(k, l)| Line {
                no: k + 1,
                text: l.split('#').next().unwrap_or("").trim_end(),
            })
            .filter(|l| !l.text.trim().is_empty())
            .collect();
        let h = read_header(&lines)?;
        let body = body_lines(&lines, h.kind)?;
        let body = match h.kind {
            Kind::DModule => Body::DModule(read_realization(&h, &body, ())?),
            Kind::VectorField => {
                let ctx = VarContext::new(h.vars.iter().cloned())
                    .map_err(|e| ParseError::new(Pos::start(), "", ParseErrorKind::Invalid(e.to_string())))?;
                Body::VectorField(read_realization(&h, &body, ctx)?)
            }
            Kind::Table => Body::Table(read_table(&h, &body)?),
            Kind::Grading => {
                if let Some(line) = body.first() {
                    return Err(line.err(
                        1,
                        directive(line.text),
                        ParseErrorKind::UnknownDirective(directive(line.text).into()),
                    ));
                }
                Body::Grading(h.basis.clone())
            }
            Kind::BasisChange => Body::BasisChange(read_basis_change(&h, &body)?),
            Kind::Weights => Body::Weights(read_weights(&h, &body)?),
        };
        Ok(DefinitionFile {
            name: h.name,
            notes: h.notes,
            body,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "kind {}", self.kind());
        let _ = writeln!(s, "name {}", self.name);
        for n in &self.notes {
            let _ = writeln!(s, "note \"{n}\"");
        }
        let basis = |s: &mut String, basis: &[BasisElement]| {
            for b in basis {
                let _ = writeln!(s, "basis {} {}", b.label, b.degree);
            }
        };
        match &self.body {
            Body::DModule(d) => {
                basis(&mut s, &d.basis);
                write_realization(&mut s, d);
            }
            Body::VectorField(d) => {
                for v in d.context.vars() {
                    let _ = writeln!(s, "var {} {}", v.name, v.degree);
                }
                basis(&mut s, &d.basis);
                write_realization(&mut s, d);
            }
            Body::Table(t) => {
                basis(&mut s, t.basis());
                s.push('\n');
                for (i, j, c) in t.entries() {
                    let (o, e) = if t.is_symmetric(i, j) { ('{', '}') } else { ('[', ']') };
                    let _ = writeln!(s, "{o}{},{}{e} = {}", t.label(i), t.label(j), t.format(c));
                }
            }
            Body::Grading(b) => basis(&mut s, b),
            Body::BasisChange(c) => {
                for (l, terms) in &c.rows {
                    let text = crate::algebra::format_combination(terms.iter().map(|(l, c)| (l.as_str(), c)));
                    let _ = writeln!(s, "{l} = {text}");
                }
            }
            Body::Weights(w) => {
                let _ = writeln!(s, "grading {}", w.weights.grading.join(" "));
                for (l, vals) in &w.weights.rows {
                    let vals: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(s, "weight {l} = {}", vals.join(" "));
                }
                if let Some(split) = &w.split {
                    for (tag, part) in [("+", &split.positive), ("0", &split.zero), ("-", &split.negative)] {
                        let _ = writeln!(s, "{}", format!("split {tag} {}", part.join(" ")).trim_end());
                    }
                }
            }
        }
        s
    }
}

fn write_realization<T: Operator>(s: &mut String, d: &RealizationDef<T>) {
    s.push('\n');
    for (l, op) in &d.ops {
        let _ = writeln!(s, "{l} = {op}");
    }
    for dv in &d.derived {
        let (o, e) = if dv.anticommutator { ('{', '}') } else { ('[', ']') };
        let _ = writeln!(s, "derive {} = {o}{},{}{e}", dv.label, dv.left, dv.right);
    }
}

impl fmt::Display for DefinitionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
