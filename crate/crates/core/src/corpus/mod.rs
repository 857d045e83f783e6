//! Built-in definitions: D-module and vector-field realizations, bracket
//! tables in the real and complex bases, gradings, basis changes and
//! weight tables for g(1,2,1), g(2,2) and the N=1 subalgebra.

use crate::algebra::{change_basis, AlgebraError, BracketTable, Realization};
use crate::io::{Body, DefinitionFile, Kind, ParseError, WeightsDef};
use crate::matop::Mat4;
use crate::vecfield::VectorFieldOp;

pub const ALGEBRAS: [&str; 3] = ["g121", "g22", "n1"];

const SOURCES: [(&str, &str); 13] = [
    ("g121.dmodule", include_str!("../../corpus/g121.dmodule.z2")),
    ("g22.dmodule", include_str!("../../corpus/g22.dmodule.z2")),
    ("n1.dmodule", include_str!("../../corpus/n1.dmodule.z2")),
    ("g121.vf", include_str!("../../corpus/g121.vf.z2")),
    ("g22.vf", include_str!("../../corpus/g22.vf.z2")),
    ("n1.vf", include_str!("../../corpus/n1.vf.z2")),
    ("g121.table", include_str!("../../corpus/g121.table.z2")),
    ("g22.table", include_str!("../../corpus/g22.table.z2")),
    ("g121.pm", include_str!("../../corpus/g121.pm.z2")),
    ("g22.pm", include_str!("../../corpus/g22.pm.z2")),
    ("g121.weights", include_str!("../../corpus/g121.weights.z2")),
    ("g22.weights", include_str!("../../corpus/g22.weights.z2")),
    ("n1.weights", include_str!("../../corpus/n1.weights.z2")),
];

const COMPUTED: [&str; 6] = [
    "n1.table",
    "g121.table.pm",
    "g22.table.pm",
    "g121.basis",
    "g22.basis",
    "n1.basis",
];

const N1_LABELS: [&str; 13] = [
    "H", "D", "K", "P~", "U", "G~", "P", "G", "Q1", "S1", "Pi1", "Lam1", "X1",
];
const N1_RENAME: [(&str, &str); 5] = [("Q1", "Q"), ("S1", "S"), ("Pi1", "Pi"), ("Lam1", "Lam"), ("X1", "X")];

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("no corpus entry `{0}`")]
    UnknownId(String),
    #[error("corpus entry `{id}` has kind {found}, expected {expected}")]
    WrongKind { id: String, found: Kind, expected: Kind },
    #[error("corpus entry `{id}`: {source}")]
    Parse { id: String, source: ParseError },
    #[error("corpus entry `{id}`: {source}")]
    Algebra { id: String, source: AlgebraError },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: Kind,
    pub payload: Body,
    pub notes: Vec<String>,
}

impl CorpusEntry {
    pub fn to_file(&self) -> DefinitionFile {
        DefinitionFile {
            name: self.id.clone(),
            notes: self.notes.clone(),
            body: self.payload.clone(),
        }
    }
}

/// Every entry id, hand-written entries first.
pub fn ids() -> Vec<&'static str> {
    SOURCES.iter().map(|(id, _)| *id).chain(COMPUTED).collect()
}

/// The text of a hand-written entry.
pub fn source(id: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(i, _)| *i == id).map(|(_, s)| *s)
}

pub fn load(id: &str) -> Result<CorpusEntry, CorpusError> {
    if let Some(src) = source(id) {
        let file = DefinitionFile::parse(src).map_err(|source| CorpusError::Parse { id: id.into(), source })?;
        return Ok(CorpusEntry {
            id: id.to_string(),
            kind: file.kind(),
            payload: file.body,
            notes: file.notes,
        });
    }
    let algebra_err = |source| CorpusError::Algebra { id: id.into(), source };
    let (payload, notes) = match id {
        "n1.table" => {
            let t = table("g121.table")?
                .restrict(id, &N1_LABELS, &N1_RENAME)
                .map_err(algebra_err)?;
            (
                Body::Table(t),
                vec!["restriction of g121.table to the a=1 generators".to_string()],
            )
        }
        "g121.table.pm" | "g22.table.pm" => {
            let alg = id.trim_end_matches(".table.pm");
            let real = table(&format!("{alg}.table"))?;
            let Body::BasisChange(change) = expect(&format!("{alg}.pm"), Kind::BasisChange)? else {
                unreachable!()
            };
            let mut t = change_basis(&real, &change).map_err(algebra_err)?;
            t.name = id.to_string();
            (Body::Table(t), vec![format!("{alg}.table rewritten through {alg}.pm")])
        }
        "g121.basis" | "g22.basis" | "n1.basis" => {
            let alg = id.trim_end_matches(".basis");
            let t = table(&format!("{alg}.table"))?;
            (Body::Grading(t.basis().to_vec()), Vec::new())
        }
        _ => return Err(CorpusError::UnknownId(id.to_string())),
    };
    Ok(CorpusEntry {
        id: id.to_string(),
        kind: kind_of(&payload),
        payload,
        notes,
    })
}

fn kind_of(body: &Body) -> Kind {
    DefinitionFile {
        name: String::new(),
        notes: Vec::new(),
        body: body.clone(),
    }
    .kind()
}

fn expect(id: &str, kind: Kind) -> Result<Body, CorpusError> {
    let e = load(id)?;
    if e.kind != kind {
        return Err(CorpusError::WrongKind {
            id: id.to_string(),
            found: e.kind,
            expected: kind,
        });
    }
    Ok(e.payload)
}

fn algebra_id(alg: &str) -> Result<&'static str, CorpusError> {
    ALGEBRAS
        .iter()
        .find(|a| **a == alg)
        .copied()
        .ok_or_else(|| CorpusError::UnknownId(alg.to_string()))
}

pub fn table(id: &str) -> Result<BracketTable, CorpusError> {
    match expect(id, Kind::Table)? {
        Body::Table(t) => Ok(t),
        _ => unreachable!(),
    }
}

/// The real-basis table of `alg`.
pub fn real_table(alg: &str) -> Result<BracketTable, CorpusError> {
    table(&format!("{}.table", algebra_id(alg)?))
}

/// The table in the basis used by the vector-field realization and the
/// weights: complex for g121 and g22, real for n1.
pub fn weight_table(alg: &str) -> Result<BracketTable, CorpusError> {
    match algebra_id(alg)? {
        "n1" => table("n1.table"),
        a => table(&format!("{a}.table.pm")),
    }
}

pub fn dmodule(alg: &str) -> Result<Realization<Mat4>, CorpusError> {
    let id = format!("{}.dmodule", algebra_id(alg)?);
    let e = load(&id)?;
    let Body::DModule(def) = e.payload else { unreachable!() };
    def.realize(&id, &e.notes)
        .map_err(|source| CorpusError::Algebra { id, source })
}

pub fn vector_fields(alg: &str) -> Result<Realization<VectorFieldOp>, CorpusError> {
    let id = format!("{}.vf", algebra_id(alg)?);
    let e = load(&id)?;
    let Body::VectorField(def) = e.payload else {
        unreachable!()
    };
    def.realize(&id, &e.notes)
        .map_err(|source| CorpusError::Algebra { id, source })
}

pub fn weights(alg: &str) -> Result<WeightsDef, CorpusError> {
    match expect(&format!("{}.weights", algebra_id(alg)?), Kind::Weights)? {
        Body::Weights(w) => Ok(w),
        _ => unreachable!(),
    }
}
