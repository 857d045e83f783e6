use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{BasisElement, BracketTable, Combination, DiscrepancyReport, Split, WeightTable};
use crate::degree::Degree;
use crate::io::{Body, DefinitionFile, ParseError, ParseErrorKind, Pos};
use crate::scalar::{GaussRat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

fn int_to_json(n: &BigInt) -> JsonInt {
    n.to_i64().map_or_else(|| JsonInt::Big(n.to_string()), JsonInt::Small)
}

fn int_from_json(j: &JsonInt) -> Option<BigInt> {
    match j {
        JsonInt::Small(n) => Some(BigInt::from(*n)),
        JsonInt::Big(s) => s.parse().ok(),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    re: [JsonInt; 2],
    im: [JsonInt; 2],
    lam: u32,
}

#[derive(Serialize, Deserialize)]
struct JsonBasis {
    label: String,
    degree: [u8; 2],
}

#[derive(Serialize, Deserialize)]
struct JsonComponent {
    label: String,
    coefficient: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    left: String,
    right: String,
    bracket: String,
    value: Vec<JsonComponent>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    name: String,
    basis: Vec<JsonBasis>,
    entries: Vec<JsonEntry>,
}

fn ratio(r: &BigRational) -> [JsonInt; 2] {
    [int_to_json(r.numer()), int_to_json(r.denom())]
}

fn scalar_to_json(s: &Scalar) -> Vec<JsonTerm> {
    s.terms()
        .map(|(lam, g)| JsonTerm {
            re: ratio(&g.re),
            im: ratio(&g.im),
            lam,
        })
        .collect()
}

fn scalar_from_json(terms: &[JsonTerm]) -> Option<Scalar> {
    let rat = |p: &[JsonInt; 2]| -> Option<BigRational> {
        let d = int_from_json(&p[1])?;
        (!d.is_zero()).then(|| BigRational::new(int_from_json(&p[0]).unwrap_or_default(), d))
    };
    let mut out = Scalar::zero();
    for t in terms {
        out += &Scalar::monomial(t.lam, GaussRat::new(rat(&t.re)?, rat(&t.im)?));
    }
    Some(out)
}

fn table_json(t: &BracketTable) -> JsonTable {
    JsonTable {
        name: t.name.clone(),
        basis: t
            .basis()
            .iter()
            .map(|b| JsonBasis {
                label: b.label.clone(),
                degree: b.degree.bits(),
            })
            .collect(),
        entries: t
            .entries()
            .map(|(i, j, c)| JsonEntry {
                left: t.label(i).to_string(),
                right: t.label(j).to_string(),
                bracket: if t.is_symmetric(i, j) { "{}" } else { "[]" }.to_string(),
                value: c
                    .iter()
                    .map(|(k, s)| JsonComponent {
                        label: t.label(*k).to_string(),
                        coefficient: scalar_to_json(s),
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn json_error(msg: impl ToString) -> ParseError {
    ParseError::new(Pos::start(), "", ParseErrorKind::Invalid(msg.to_string()))
}

/// Inverse of the JSON table emitter.
pub fn parse_table_json(src: &str) -> Result<BracketTable, ParseError> {
    let j: JsonTable = serde_json::from_str(src).map_err(|e| {
        ParseError::new(
            Pos {
                line: e.line(),
                column: e.column(),
            },
            "",
            ParseErrorKind::Invalid(e.to_string()),
        )
    })?;
    let basis = j
        .basis
        .iter()
        .map(|b| {
            Degree::new(b.degree[0], b.degree[1])
                .map(|d| BasisElement::new(b.label.clone(), d))
                .ok_or_else(|| json_error(format!("bad degree for `{}`", b.label)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = BracketTable::new(j.name, basis).map_err(json_error)?;
    for e in &j.entries {
        let i = t.index_of(&e.left).map_err(json_error)?;
        let k = t.index_of(&e.right).map_err(json_error)?;
        let mut comb = Combination::new();
        for c in &e.value {
            let s = scalar_from_json(&c.coefficient).ok_or_else(|| json_error("bad coefficient"))?;
            comb.insert(t.index_of(&c.label).map_err(json_error)?, s);
        }
        t.set(i, k, comb).map_err(json_error)?;
    }
    Ok(t)
}

fn latex_label(l: &str) -> String {
    let (stem, tilde) = match l.strip_suffix('~') {
        Some(s) => (s, true),
        None => (l, false),
    };
    let split = stem
        .char_indices()
        .find(|&(k, c)| k > 0 && (c.is_ascii_digit() || c == '+' || c == '-'))
        .map_or(stem.len(), |(k, _)| k);
    let (base, index) = stem.split_at(split);
    let mut out = match base {
        "Pi" => "\\Pi".to_string(),
        "Lam" => "\\Lambda".to_string(),
        "Rbar" => "\\bar{R}".to_string(),
        _ => base.to_string(),
    };
    if tilde {
        out = format!("\\tilde{{{out}}}");
    }
    if !index.is_empty() {
        out = format!("{out}_{{{index}}}");
    }
    out
}

fn latex_combination(t: &BracketTable, c: &Combination) -> String {
    let text = t.format(c);
    let mut out = Vec::new();
    for w in text.split_whitespace() {
        if let Ok(k) = t.index_of(w.trim_start_matches('-')) {
            let sign = if w.starts_with('-') && t.index_of(w).is_err() {
                "-"
            } else {
                ""
            };
            out.push(format!("{sign}{}", latex_label(t.label(k))));
        } else {
            out.push(latex_scalar_word(w));
        }
    }
    out.join(" ")
}

fn latex_scalar_word(w: &str) -> String {
    match w.split_once('/') {
        Some((n, d)) if !w.contains('(') && !w.contains('i') => {
            let (sign, n) = n.strip_prefix('-').map_or(("", n), |n| ("-", n));
            format!("{sign}\\frac{{{n}}}{{{d}}}")
        }
        _ => w.to_string(),
    }
}

fn latex_table(t: &BracketTable) -> String {
    let mut s = String::new();
    for (a, da) in Degree::ALL.iter().enumerate() {
        for db in &Degree::ALL[a..] {
            let _ = writeln!(s, "\\noindent ${da}$-${db}$ sector:");
            let entries = t.sector(*da, *db);
            let _ = writeln!(s, "\\begin{{align*}}");
            for (n, (i, j, c)) in entries.iter().enumerate() {
                let (o, e) = if t.is_symmetric(*i, *j) {
                    ("\\{", "\\}")
                } else {
                    ("[", "]")
                };
                let end = if n + 1 < entries.len() { " \\\\" } else { "" };
                let _ = writeln!(
                    s,
                    "  {o}{}, {}{e} &= {}{end}",
                    latex_label(t.label(*i)),
                    latex_label(t.label(*j)),
                    latex_combination(t, c)
                );
            }
            let _ = writeln!(s, "\\end{{align*}}");
        }
    }
    s
}

/// Deterministic rendering of a table; basis order, then pair order.
pub fn emit_table(t: &BracketTable, format: Format) -> String {
    match format {
        Format::Text => DefinitionFile {
            name: t.name.clone(),
            notes: Vec::new(),
            body: Body::Table(t.clone()),
        }
        .to_text(),
        Format::Json => serde_json::to_string_pretty(&table_json(t)).expect("serializable") + "\n",
        Format::Latex => latex_table(t),
    }
}

pub fn emit_report(r: &DiscrepancyReport, format: Format) -> String {
    match format {
        Format::Text => format!("{r}\n"),
        Format::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        Format::Latex => {
            let mut s = format!("% {}\n\\begin{{tabular}}{{lll}}\n", r.title);
            s.push_str("pair & expected & residual \\\\ \\hline\n");
            for e in &r.entries {
                let _ = writeln!(
                    s,
                    "${}$ & \\verb|{}| & \\verb|{}| \\\\",
                    e.labels.iter().map(|l| latex_label(l)).collect::<Vec<_>>().join(", "),
                    e.expected,
                    e.residual
                );
            }
            let _ = writeln!(s, "\\end{{tabular}}\n% checked {}, failed {}", r.checked, r.failed());
            s
        }
    }
}

#[derive(Serialize)]
struct JsonWeight<'a> {
    label: &'a str,
    weights: Vec<Vec<JsonTerm>>,
}

#[derive(Serialize)]
struct JsonWeights<'a> {
    grading: &'a [String],
    weights: Vec<JsonWeight<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split: Option<[&'a [String]; 3]>,
}

/// `label (w1, w2)` lines, followed by the split when given.
pub fn emit_weights(w: &WeightTable, split: Option<&Split>, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text | Format::Latex => {
            let latex = format == Format::Latex;
            for (l, vals) in &w.rows {
                let vals: Vec<String> = vals
                    .iter()
                    .map(|v| {
                        if latex {
                            latex_scalar_word(&v.to_string())
                        } else {
                            v.to_string()
                        }
                    })
                    .collect();
                let l = if latex {
                    format!("${}$", latex_label(l))
                } else {
                    l.clone()
                };
                let _ = writeln!(s, "{l} ({})", vals.join(", "));
            }
            if let Some(split) = split {
                for (tag, part) in [("+", &split.positive), ("0", &split.zero), ("-", &split.negative)] {
                    let _ = writeln!(s, "{tag}: {}", part.join(" "));
                }
            }
        }
        Format::Json => {
            let j = JsonWeights {
                grading: &w.grading,
                weights: w
                    .rows
                    .iter()
                    .map(|(l, vals)| JsonWeight {
                        label: l,
                        weights: vals.iter().map(scalar_to_json).collect(),
                    })
                    .collect(),
                split: split.map(|s| [s.positive.as_slice(), s.zero.as_slice(), s.negative.as_slice()]),
            };
            s = serde_json::to_string_pretty(&j).expect("serializable") + "\n";
        }
    }
    s
}
