//! Command-line front end: verification, extraction, Jacobi checks, weights,
//! splits and export of corpus entries.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use z2z2::algebra::{
    check_jacobi_par, compare_tables, extract_structure_constants_par, triangular_split, verify_realization_par,
    weights, AlgebraError, BracketTable, DiscrepancyReport, Realization, Split, WeightTable,
};
use z2z2::corpus::{self, CorpusError};
use z2z2::io::{emit_report, emit_table, emit_weights, parse_table_json, Body, DefinitionFile, Format};
use z2z2::{Mat4, VectorFieldOp};

pub const JOBS_ENV: &str = "Z2Z2_JOBS";

#[derive(Parser, Debug)]
#[command(name = "z2z2", version, about = "Exact checks for Z2xZ2-graded Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a realization against a bracket table, pair by pair.
    Verify(VerifyArgs),
    /// Compute structure constants from a realization.
    Extract(ExtractArgs),
    /// Check the graded Jacobi identity on every ordered triple.
    Jacobi(TableArgs),
    /// Eigenvalues of the grading elements on the basis.
    Weights(WeightArgs),
    /// Positive, zero and negative parts by the sign of the first nonzero weight.
    Split(WeightArgs),
    /// Print a corpus entry.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RealizationKind {
    Dmodule,
    Vf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisKind {
    Real,
    Pm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Latex,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Latex => Format::Latex,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Worker threads; output does not depend on it.
    #[arg(long, env = JOBS_ENV, default_value_t = 1)]
    jobs: usize,
    /// Print every per-pair verdict.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Built-in algebra: g121, g22 or n1.
    #[arg(long)]
    algebra: Option<String>,
    /// Basis of the built-in table.
    #[arg(long, value_enum, default_value = "real")]
    basis: BasisKind,
    /// Table in the definition format or as JSON.
    #[arg(long, conflicts_with = "algebra")]
    table_file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, value_enum, default_value = "dmodule")]
    realization: RealizationKind,
    /// Defaults to real for D-modules and to pm for vector fields of g121 and g22.
    #[arg(long, value_enum)]
    basis: Option<BasisKind>,
    #[arg(long)]
    table_file: Option<PathBuf>,
    /// D-module or vector-field realization in the definition format.
    #[arg(long)]
    realization_file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, value_enum, default_value = "dmodule")]
    realization: RealizationKind,
    #[arg(long, conflicts_with = "algebra")]
    realization_file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[command(flatten)]
    table: TableArgs,
    /// Grading elements, comma separated; defaults to D,Rbar in the pm basis
    /// and D otherwise.
    #[arg(long, value_delimiter = ',')]
    grading: Vec<String>,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// Corpus entry id.
    #[arg(long, required_unless_present = "list", conflicts_with = "list")]
    entry: Option<String>,
    /// List corpus entries.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

/// Fatal condition with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

fn input(e: impl Display) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn from_algebra(e: AlgebraError) -> Failure {
    let code = match e {
        AlgebraError::ClosureFailure { .. }
        | AlgebraError::LambdaDependence { .. }
        | AlgebraError::DependentBasis(_) => 1,
        _ => 2,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn from_corpus(e: CorpusError) -> Failure {
    input(e)
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 when every check passes, 1 when discrepancies were found, 2 on
/// input or parse errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Extract(a) => extract(a, out),
        Command::Jacobi(a) => jacobi(a, out),
        Command::Weights(a) => weight_listing(a, false, out),
        Command::Split(a) => weight_listing(a, true, out),
        Command::Export(a) => export(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_file(path: &Path) -> Result<DefinitionFile, Failure> {
    DefinitionFile::parse(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_table_file(path: &Path) -> Result<BracketTable, Failure> {
    let src = read(path)?;
    if src.trim_start().starts_with('{') {
        return parse_table_json(&src).map_err(|e| input(format!("{}: {e}", path.display())));
    }
    match DefinitionFile::parse(&src)
        .map_err(|e| input(format!("{}: {e}", path.display())))?
        .body
    {
        Body::Table(t) => Ok(t),
        _ => Err(input(format!("{}: not a table", path.display()))),
    }
}

fn corpus_table(alg: &str, basis: BasisKind) -> Result<BracketTable, Failure> {
    match basis {
        BasisKind::Real => corpus::real_table(alg).map_err(from_corpus),
        BasisKind::Pm if alg == "n1" => Err(input("n1 has no complex basis")),
        BasisKind::Pm => corpus::weight_table(alg).map_err(from_corpus),
    }
}

fn table_from(args: &TableArgs) -> Result<BracketTable, Failure> {
    match (&args.algebra, &args.table_file) {
        (_, Some(path)) => load_table_file(path),
        (Some(alg), None) => corpus_table(alg, args.basis),
        (None, None) => Err(input("one of --algebra or --table-file is required")),
    }
}

enum AnyRealization {
    DModule(Realization<Mat4>),
    VectorField(Realization<VectorFieldOp>),
}

fn realization_from(
    algebra: Option<&str>,
    kind: RealizationKind,
    file: Option<&Path>,
) -> Result<AnyRealization, Failure> {
    if let Some(path) = file {
        let f = parse_file(path)?;
        return match f.body {
            Body::DModule(d) => d
                .realize(&f.name, &f.notes)
                .map(AnyRealization::DModule)
                .map_err(from_algebra),
            Body::VectorField(d) => d
                .realize(&f.name, &f.notes)
                .map(AnyRealization::VectorField)
                .map_err(from_algebra),
            _ => Err(input(format!("{}: not a realization", path.display()))),
        };
    }
    let alg = algebra.ok_or_else(|| input("one of --algebra or --realization-file is required"))?;
    match kind {
        RealizationKind::Dmodule => corpus::dmodule(alg).map(AnyRealization::DModule),
        RealizationKind::Vf => corpus::vector_fields(alg).map(AnyRealization::VectorField),
    }
    .map_err(from_corpus)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(input)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let r = realization_from(a.algebra.as_deref(), a.realization, a.realization_file.as_deref())?;
    let table = match (&a.table_file, &a.algebra) {
        (Some(path), _) => load_table_file(path)?,
        (None, Some(alg)) => {
            let default = match (&r, alg.as_str()) {
                (AnyRealization::VectorField(_), "g121" | "g22") => BasisKind::Pm,
                _ => BasisKind::Real,
            };
            corpus_table(alg, a.basis.unwrap_or(default))?
        }
        (None, None) => return Err(input("one of --algebra or --table-file is required")),
    };
    let report = match &r {
        AnyRealization::DModule(r) => verify_realization_par(r, &table, a.common.jobs),
        AnyRealization::VectorField(r) => verify_realization_par(r, &table, a.common.jobs),
    }
    .map_err(from_algebra)?;
    let n = table.len();
    let summary = format!("{n} generators, {} unordered pairs", report.checked);
    finish_report(&report, &summary, "verified", &a.common, out)
}

fn finish_report(report: &DiscrepancyReport, summary: &str, ok: &str, common: &Common, out: &mut dyn Write) -> Outcome {
    match common.format {
        OutputFormat::Text => {
            if common.verbose {
                for v in &report.verdicts {
                    let tag = if v.ok { "ok  " } else { "FAIL" };
                    write_out(out, &format!("{tag} ({})\n", v.labels.join(", ")))?;
                }
            }
            if report.passed() {
                for n in &report.notes {
                    write_out(out, &format!("note: {n}\n"))?;
                }
                write_out(out, &format!("{summary} {ok}\n"))?;
            } else {
                write_out(out, &emit_report(report, Format::Text))?;
                write_out(out, &format!("{summary} checked, {} discrepancies\n", report.failed()))?;
            }
        }
        f => write_out(out, &emit_report(report, f.into()))?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn extract(a: ExtractArgs, out: &mut dyn Write) -> Outcome {
    let r = realization_from(a.algebra.as_deref(), a.realization, a.realization_file.as_deref())?;
    let labels: Vec<String> = match &r {
        AnyRealization::DModule(r) => r.labels().to_vec(),
        AnyRealization::VectorField(r) => r.labels().to_vec(),
    };
    let order = match a.algebra.as_deref() {
        Some(alg) => {
            let basis = match a.realization {
                RealizationKind::Vf => corpus::weight_table(alg),
                RealizationKind::Dmodule => corpus::real_table(alg),
            }
            .map_err(from_corpus)?;
            basis.basis().iter().map(|b| b.label.clone()).collect()
        }
        None => labels,
    };
    let order: Vec<&str> = order.iter().map(String::as_str).collect();
    let table = match &r {
        AnyRealization::DModule(r) => extract_structure_constants_par(r, &order, a.common.jobs),
        AnyRealization::VectorField(r) => extract_structure_constants_par(r, &order, a.common.jobs),
    }
    .map_err(from_algebra)?;
    write_out(out, &emit_table(&table, a.common.format.into()))?;
    if let (Some(alg), OutputFormat::Text) = (a.algebra.as_deref(), a.common.format) {
        let reference = match a.realization {
            RealizationKind::Vf => corpus::weight_table(alg),
            RealizationKind::Dmodule => corpus::real_table(alg),
        }
        .map_err(from_corpus)?;
        let cmp = compare_tables(&reference, &table).map_err(from_algebra)?;
        if !cmp.passed() {
            write_out(out, &emit_report(&cmp, Format::Text))?;
            return Ok(1);
        }
        if a.common.verbose {
            write_out(out, &format!("# matches {}\n", reference.name))?;
        }
    }
    Ok(0)
}

fn jacobi(a: TableArgs, out: &mut dyn Write) -> Outcome {
    let t = table_from(&a)?;
    let report = check_jacobi_par(&t, a.common.jobs);
    let summary = format!("{}: {} triples", t.name, report.checked);
    finish_report(&report, &summary, "satisfy the graded Jacobi identity", &a.common, out)
}

fn grading_for(a: &WeightArgs) -> Vec<String> {
    if !a.grading.is_empty() {
        return a.grading.clone();
    }
    match (a.table.basis, a.table.table_file.is_some()) {
        (BasisKind::Pm, false) => vec!["D".into(), "Rbar".into()],
        _ => vec!["D".into()],
    }
}

/// Printed weights for the same table, when the corpus has them.
fn printed_weights(a: &WeightArgs, grading: &[String]) -> Option<(WeightTable, Option<Split>)> {
    let alg = a.table.algebra.as_deref()?;
    let printed_basis = if alg == "n1" { BasisKind::Real } else { BasisKind::Pm };
    if a.table.table_file.is_some() || a.table.basis != printed_basis {
        return None;
    }
    let w = corpus::weights(alg).ok()?;
    (w.weights.grading == grading).then_some((w.weights, w.split))
}

fn weight_listing(a: WeightArgs, split_only: bool, out: &mut dyn Write) -> Outcome {
    let t = table_from(&a.table)?;
    let grading = grading_for(&a);
    let refs: Vec<&str> = grading.iter().map(String::as_str).collect();
    let w = weights(&t, &refs).map_err(from_algebra)?;
    let split = triangular_split(&w).map_err(from_algebra)?;
    let format: Format = a.table.common.format.into();
    if split_only {
        let empty = WeightTable {
            grading: w.grading.clone(),
            rows: Vec::new(),
        };
        write_out(out, &emit_weights(&empty, Some(&split), format))?;
    } else {
        write_out(out, &emit_weights(&w, None, format))?;
    }
    let mut mismatches = Vec::new();
    if let Some((printed, printed_split)) = printed_weights(&a, &grading) {
        for (label, ws) in &printed.rows {
            if w.get(label) != Some(ws.as_slice()) {
                mismatches.push(format!("weight of {label} differs from the printed value"));
            }
        }
        if let Some(p) = printed_split.filter(|_| split_only) {
            let same = |x: &[String], y: &[String]| {
                let mut x = x.to_vec();
                let mut y = y.to_vec();
                x.sort();
                y.sort();
                x == y
            };
            if !(same(&p.positive, &split.positive) && same(&p.zero, &split.zero) && same(&p.negative, &split.negative))
            {
                mismatches.push("split differs from the printed one".into());
            }
        }
    }
    for m in &mismatches {
        write_out(out, &format!("FAIL {m}\n"))?;
    }
    Ok(if mismatches.is_empty() { 0 } else { 1 })
}

fn export(a: ExportArgs, out: &mut dyn Write) -> Outcome {
    if a.list {
        for id in corpus::ids() {
            let e = corpus::load(id).map_err(from_corpus)?;
            write_out(out, &format!("{id}\t{}\n", e.kind))?;
        }
        return Ok(0);
    }
    let id = a.entry.as_deref().unwrap_or_default();
    let entry = corpus::load(id).map_err(from_corpus)?;
    let text = match (a.format, &entry.payload) {
        (OutputFormat::Text, _) => entry.to_file().to_text(),
        (f, Body::Table(t)) => emit_table(t, f.into()),
        (f, Body::Weights(w)) => emit_weights(&w.weights, w.split.as_ref(), f.into()),
        (_, _) => return Err(input(format!("`{id}` ({}) is only available as text", entry.kind))),
    };
    write_out(out, &text)?;
    Ok(0)
}
