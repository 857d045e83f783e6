//! Text definition files, operator expressions, and JSON/LaTeX/text emitters.

mod emit;
mod expr;
mod file;

use std::fmt;

pub use emit::{emit_report, emit_table, emit_weights, parse_table_json, Format};
pub use expr::{parse_graded_expr, parse_matrix_expr, parse_operator_expr, ExprContext, ParsedOp};
pub use file::{parse_literal, Body, DefinitionFile, Kind, RealizationDef, WeightsDef};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn start() -> Self {
        Pos { line: 1, column: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lex(char),
    Unexpected(String),
    UnknownIdentifier(String),
    ModeMixing,
    BadIndex,
    BadDegree,
    BadLiteral,
    UnknownDirective(String),
    Invalid(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lex(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Unexpected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            ParseErrorKind::ModeMixing => write!(f, "matrix and graded-variable operators cannot be mixed"),
            ParseErrorKind::BadIndex => write!(f, "matrix index must be 1..4"),
            ParseErrorKind::BadDegree => write!(f, "degree must be (a,b) with a, b in {{0,1}}"),
            ParseErrorKind::BadLiteral => write!(f, "malformed coefficient"),
            ParseErrorKind::UnknownDirective(d) => write!(f, "unknown or misplaced directive `{d}`"),
            ParseErrorKind::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {}, column {}: {kind} (at `{token}`)", pos.line, pos.column)]
pub struct ParseError {
    pub pos: Pos,
    pub token: String,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(pos: Pos, token: impl Into<String>, kind: ParseErrorKind) -> Self {
        ParseError {
            pos,
            token: token.into(),
            kind,
        }
    }
}
