use std::fmt;

use serde::Serialize;

/// One failed check: the labels involved, what was expected, what came out,
/// and the difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub labels: Vec<String>,
    pub expected: String,
    pub computed: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub labels: Vec<String>,
    pub ok: bool,
}

/// Outcome of a verification pass. `entries` is empty iff everything passed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub title: String,
    /// Number of pairs or triples examined.
    pub checked: usize,
    pub entries: Vec<Discrepancy>,
    /// Per-item verdicts, in basis order, when the check produces them.
    pub verdicts: Vec<Verdict>,
    /// Editorial normalizations carried over from the inputs.
    pub notes: Vec<String>,
}

impl DiscrepancyReport {
    pub fn new(title: impl Into<String>) -> Self {
        DiscrepancyReport {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn failed(&self) -> usize {
        self.entries.len()
    }

    /// Whether any failing entry mentions every one of `labels`.
    pub fn mentions(&self, labels: &[&str]) -> bool {
        self.entries
            .iter()
            .any(|e| labels.iter().all(|l| e.labels.iter().any(|x| x == l)))
    }

    pub fn verdict(&self, a: &str, b: &str) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|v| {
                v.labels.len() == 2
                    && ((v.labels[0] == a && v.labels[1] == b) || (v.labels[0] == b && v.labels[1] == a))
            })
            .map(|v| v.ok)
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        for e in &self.entries {
            writeln!(f, "FAIL ({})", e.labels.join(", "))?;
            writeln!(f, "  expected: {}", e.expected)?;
            writeln!(f, "  computed: {}", e.computed)?;
            writeln!(f, "  residual: {}", e.residual)?;
        }
        write!(f, "checked {}, failed {}", self.checked, self.failed())
    }
}
