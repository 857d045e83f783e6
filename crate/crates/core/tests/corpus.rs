use z2z2::algebra::*;
use z2z2::corpus::{self, CorpusError};
use z2z2::io::{Body, DefinitionFile, Kind};
use z2z2::Degree;

fn grading(id: &str) -> Vec<BasisElement> {
    match corpus::load(id).unwrap().payload {
        Body::Grading(b) => b,
        _ => panic!("{id} is not a grading"),
    }
}

fn dmodule_from(src: &str) -> Realization<z2z2::Mat4> {
    let f = DefinitionFile::parse(src).unwrap();
    let Body::DModule(d) = f.body else { panic!() };
    d.realize(&f.name, &f.notes).unwrap()
}

#[test]
fn basis_sizes() {
    assert_eq!(grading("g121.basis").len(), 20);
    assert_eq!(grading("g22.basis").len(), 24);
    assert_eq!(grading("n1.basis").len(), 13);
    let zero: Vec<String> = grading("g121.basis")
        .into_iter()
        .filter(|b| b.degree == Degree::ZERO)
        .map(|b| b.label)
        .collect();
    assert_eq!(zero, ["H", "D", "K", "P~", "U", "G~", "X~", "R"]);
    let zero: Vec<String> = grading("g22.basis")
        .into_iter()
        .filter(|b| b.degree == Degree::ZERO)
        .map(|b| b.label)
        .collect();
    assert_eq!(zero, ["H", "D", "K", "P~", "G~", "U", "V", "W", "Z", "R"]);
}

#[test]
fn kinds_and_notes() {
    for id in corpus::ids() {
        let e = corpus::load(id).unwrap();
        let want = match id.rsplit('.').next().unwrap() {
            "dmodule" => Kind::DModule,
            "vf" => Kind::VectorField,
            "table" => Kind::Table,
            "pm" if id.contains(".table.") => Kind::Table,
            "pm" => Kind::BasisChange,
            "basis" => Kind::Grading,
            "weights" => Kind::Weights,
            other => panic!("unexpected suffix {other}"),
        };
        assert_eq!(e.kind, want, "{id}");
    }
    let notes = corpus::load("g22.vf").unwrap().notes;
    assert!(notes.iter().any(|n| n.contains("Pi+")));
    assert!(notes.iter().any(|n| n.contains("Z_+")));
    assert!(!corpus::load("g22.dmodule").unwrap().notes.is_empty());
    let r = corpus::vector_fields("g121").unwrap();
    assert!(r.notes.iter().any(|n| n.contains("thp")));
    assert!(matches!(corpus::dmodule("g3"), Err(CorpusError::UnknownId(_))));
}

#[test]
fn n1_is_the_restriction() {
    let n1 = corpus::table("n1.table").unwrap();
    let labels: Vec<&str> = n1.basis().iter().map(|b| b.label.as_str()).collect();
    assert_eq!(
        labels,
        ["H", "D", "K", "P~", "U", "G~", "P", "G", "Q", "S", "Pi", "Lam", "X"]
    );
    let q = n1.index_of("Q").unwrap();
    let s = n1.index_of("S").unwrap();
    assert_eq!(n1.format(&n1.get(q, s)), "-2 D");
}

#[test]
fn pm_tables_diagonalize_rbar() {
    for alg in ["g121", "g22"] {
        let t = corpus::weight_table(alg).unwrap();
        let w = weights(&t, &["D", "Rbar"]).unwrap();
        assert_eq!(w.rows.len(), t.len());
    }
}

#[test]
fn missing_generator_breaks_closure() {
    let src = corpus::source("g121.dmodule")
        .unwrap()
        .replace("basis X~ (0,0)\n", "")
        .replace("derive X~ = [X1,X2]\n", "");
    let r = dmodule_from(&src);
    let t = corpus::real_table("g121").unwrap();
    let labels: Vec<&str> = t
        .basis()
        .iter()
        .map(|b| b.label.as_str())
        .filter(|l| *l != "X~")
        .collect();
    match extract_structure_constants(&r, &labels) {
        Err(AlgebraError::ClosureFailure { left, right, residual }) => {
            let x = t.index_of("X~").unwrap();
            let (i, j) = (t.index_of(&left).unwrap(), t.index_of(&right).unwrap());
            assert!(t.get(i, j).contains_key(&x), "({left},{right}) does not involve X~");
            assert!(!residual.is_empty());
        }
        other => panic!("expected closure failure, got {other:?}"),
    }
}

#[test]
fn dropped_tail_is_localized() {
    let src = corpus::source("g121.dmodule").unwrap().replace(" + e(2,4)\n", "\n");
    let r = dmodule_from(&src);
    let t = corpus::real_table("g121").unwrap();
    let report = verify_realization(&r, &t).unwrap();
    assert!(!report.passed());
    for e in &report.entries {
        let involved = e.labels.iter().any(|l| l == "S1") || e.expected.split_whitespace().any(|w| w == "S1");
        assert!(involved, "{:?}", e.labels);
    }
    assert_eq!(report.verdict("H", "K"), Some(true));
}

#[test]
fn mutated_vector_field_is_named() {
    let src = corpus::source("n1.vf")
        .unwrap()
        .replace("Lam = -x1 [Pi]", "Lam = -2 x1 [Pi]");
    let f = DefinitionFile::parse(&src).unwrap();
    let Body::VectorField(d) = f.body else { panic!() };
    let r = d.realize("n1.vf", &[]).unwrap();
    let report = verify_realization(&r, &corpus::table("n1.table").unwrap()).unwrap();
    assert!(report.mentions(&["Lam"]));
    assert_eq!(report.verdict("H", "D"), Some(true));
}

#[test]
fn g22_fermionic_residuals_stay_in_the_report() {
    let r = corpus::vector_fields("g22").unwrap();
    let report = verify_realization(&r, &corpus::weight_table("g22").unwrap()).unwrap();
    let failing: Vec<(String, String)> = report
        .entries
        .iter()
        .map(|e| (e.labels[0].clone(), e.labels[1].clone()))
        .collect();
    let pin = [("K", "J+"), ("K", "F+"), ("F+", "Q+"), ("F+", "S+"), ("S-", "X+")];
    assert_eq!(failing, pin.map(|(a, b)| (a.to_string(), b.to_string())));
    for e in &report.entries {
        assert!(e.labels.iter().any(|l| l == "F+") || e.expected.contains("F+"));
    }
    assert_eq!(report.verdict("H", "K"), Some(true));
    assert_eq!(report.verdict("Q+", "Q-"), Some(true));
}
