//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use z2z2::algebra::*;
use z2z2::corpus;
use z2z2::io::{emit_table, parse_table_json, DefinitionFile, Format};
use z2z2::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labels(t: &BracketTable) -> Vec<&str> {
    t.basis().iter().map(|b| b.label.as_str()).collect()
}

fn reconstruct(alg: &str, size: usize) -> Result<(BracketTable, BracketTable, Duration), String> {
    let printed = corpus::real_table(alg).map_err(|e| e.to_string())?;
    ensure(printed.len() == size, || {
        format!("{alg}: {} basis elements", printed.len())
    })?;
    let r = corpus::dmodule(alg).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let computed = extract_structure_constants(&r, &labels(&printed)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let report = compare_tables(&printed, &computed).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{report}"))?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("{alg}: extraction took {elapsed:?}")
    })?;
    Ok((printed, computed, elapsed))
}

fn criterion_1() -> Outcome {
    let (_, computed, elapsed) = reconstruct("g121", 20)?;
    let pairs = computed.len() * (computed.len() + 1) / 2;
    Ok(format!(
        "20 generators, {pairs} pairs, zero residual in {:.1?}",
        elapsed
    ))
}

fn criterion_2() -> Outcome {
    let (printed, computed, elapsed) = reconstruct("g22", 24)?;
    ensure(computed.sector(Degree::D11, Degree::D11).is_empty(), || {
        "(1,1)-(1,1) not empty".into()
    })?;
    let printed_10_11 = printed.sector(Degree::D10, Degree::D11).len();
    let computed_10_11 = computed.sector(Degree::D10, Degree::D11).len();
    ensure(printed_10_11 == 8 && computed_10_11 == 8, || {
        format!("(1,0)-(1,1): {printed_10_11} printed, {computed_10_11} computed")
    })?;
    Ok(format!(
        "24 generators, zero residual in {:.1?}; (1,1)-(1,1) empty, (1,0)-(1,1) has the 8 printed entries",
        elapsed
    ))
}

fn criterion_3() -> Outcome {
    let mut counts = Vec::new();
    for (id, triples) in [("g121.table", 8000), ("g22.table", 13824), ("n1.table", 2197)] {
        let t = corpus::table(id).map_err(|e| e.to_string())?;
        let r = check_jacobi_par(&t, 4);
        ensure(r.checked == triples && r.passed(), || format!("{id}: {r}"))?;
        counts.push(format!("{id} {triples}"));
    }
    let mut t = corpus::table("g121.table").map_err(|e| e.to_string())?;
    let d = t.index_of("D").map_err(|e| e.to_string())?;
    let k = t.index_of("K").map_err(|e| e.to_string())?;
    let mut c = t.get(d, k);
    c.insert(k, Scalar::from_int(-2));
    t.replace(d, k, c).map_err(|e| e.to_string())?;
    let r = check_jacobi(&t);
    ensure(!r.passed(), || "mutation of [D,K] not detected".into())?;
    let first = &r.entries[0];
    ensure(first.labels.len() == 3, || "failing entry is not a triple".into())?;
    Ok(format!(
        "{} triples clean; mutated [D,K] caught at ({})",
        counts.join(", "),
        first.labels.join(", ")
    ))
}

fn calculus_context() -> Arc<VarContext> {
    let mut vars = vec![("x1", Degree::ZERO), ("x2", Degree::ZERO)];
    vars.extend([("psi1", Degree::D01), ("psi2", Degree::D01), ("psi3", Degree::D01)]);
    vars.extend([("th1", Degree::D10), ("th2", Degree::D10), ("th3", Degree::D10)]);
    vars.extend([("z1", Degree::D11), ("z2", Degree::D11), ("z3", Degree::D11)]);
    VarContext::new(vars).unwrap()
}

/// Random homogeneous polynomial: products of up to four variables, terms of
/// the wrong degree dropped.
fn homogeneous(ctx: Arc<VarContext>, d: Degree) -> impl Strategy<Value = GradedPoly> {
    let n = ctx.len();
    proptest::collection::vec((proptest::collection::vec(0..n, 0..5), -3i64..=3), 1..5).prop_map(move |parts| {
        let mut p = GradedPoly::zero(&ctx);
        for (word, k) in parts {
            let names: Vec<&str> = word.iter().map(|&i| ctx.var(i).name.as_str()).collect();
            let m = GradedPoly::word(&ctx, &names).unwrap();
            if m.degree() == Some(d) {
                p = p.add(&m.scale(&Scalar::from_int(k)));
            }
        }
        p
    })
}

fn any_degree() -> impl Strategy<Value = Degree> {
    proptest::sample::select(Degree::ALL.to_vec())
}

fn criterion_4() -> Outcome {
    let c = calculus_context();
    let w = |names: &[&str]| GradedPoly::word(&c, names).unwrap();
    let d = |name: &str| c.lookup(name).unwrap();
    let examples = [
        (
            w(&["x2", "psi1", "psi2"]).derivative(d("psi2")),
            w(&["x2", "psi1"]).scale(&Scalar::from_int(-1)),
        ),
        (w(&["psi1", "th1", "z3"]).derivative(d("th1")), w(&["psi1", "z3"])),
        (
            w(&["x2", "psi3", "z1", "z1"]).derivative(d("z1")),
            w(&["x2", "psi3", "z1"]).scale(&Scalar::from_int(-2)),
        ),
    ];
    for (got, want) in &examples {
        ensure(got == want, || format!("worked example: got {got}, expected {want}"))?;
    }

    let cases = 1000;
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    let ctx = c.clone();
    let strategy = (0..c.len(), any_degree(), any_degree()).prop_flat_map(move |(v, da, db)| {
        (
            Just(v),
            Just(da),
            homogeneous(ctx.clone(), da),
            homogeneous(ctx.clone(), db),
        )
    });
    runner
        .run(&strategy, |(v, da, a, b)| {
            let dv = c.var(v).degree;
            let lhs = a.mul(&b).derivative(v);
            let rhs = a
                .derivative(v)
                .mul(&b)
                .add(&a.mul(&b.derivative(v)).scale(&Scalar::from_int(koszul_sign(dv, da))));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "3 worked derivatives exact; graded Leibniz on {cases} random homogeneous pairs"
    ))
}

fn criterion_5() -> Outcome {
    let t = corpus::table("n1.table").map_err(|e| e.to_string())?;
    let vf = corpus::vector_fields("n1").map_err(|e| e.to_string())?;
    let r = verify_realization(&vf, &t).map_err(|e| e.to_string())?;
    ensure(r.entries.is_empty() && r.verdicts.len() == 91, || format!("{r}"))?;
    let dm = corpus::dmodule("n1").map_err(|e| e.to_string())?;
    let r = verify_realization(&dm, &t).map_err(|e| e.to_string())?;
    ensure(r.entries.is_empty() && r.verdicts.len() == 91, || format!("{r}"))?;
    let extracted = extract_structure_constants(&dm, &labels(&t)).map_err(|e| e.to_string())?;
    let r = compare_tables(&t, &extracted).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{r}"))?;
    Ok("vector fields and D-module both give empty reports over 91 pairs".into())
}

fn as_set(v: &[String]) -> BTreeSet<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

fn criterion_6() -> Outcome {
    let mut summary = Vec::new();
    for alg in corpus::ALGEBRAS {
        let t = corpus::weight_table(alg).map_err(|e| e.to_string())?;
        let printed = corpus::weights(alg).map_err(|e| e.to_string())?;
        let grading: Vec<&str> = printed.weights.grading.iter().map(|s| s.as_str()).collect();
        let computed = weights(&t, &grading).map_err(|e| e.to_string())?;
        ensure(printed.weights.rows.len() == t.len(), || {
            format!("{alg}: printed rows do not cover the basis")
        })?;
        for (label, ws) in &printed.weights.rows {
            ensure(computed.get(label) == Some(ws.as_slice()), || {
                format!("{alg}: weight of {label}")
            })?;
        }
        let split = triangular_split(&computed).map_err(|e| e.to_string())?;
        let want = printed
            .split
            .as_ref()
            .ok_or_else(|| format!("{alg}: no printed split"))?;
        for (name, got, want) in [
            ("+", &split.positive, &want.positive),
            ("0", &split.zero, &want.zero),
            ("-", &split.negative, &want.negative),
        ] {
            ensure(as_set(got) == as_set(want), || {
                format!("{alg}: part {name} is {got:?}, printed {want:?}")
            })?;
        }
        summary.push(format!("{alg} {}", t.len()));
    }
    Ok(format!("weights and splits match for {}", summary.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut summary = Vec::new();
    for alg in ["g121", "g22"] {
        let t = corpus::weight_table(alg).map_err(|e| e.to_string())?;
        let vf = corpus::vector_fields(alg).map_err(|e| e.to_string())?;
        let r = verify_realization_par(&vf, &t, 4).map_err(|e| e.to_string())?;
        let n = t.len();
        ensure(r.verdicts.len() == n * (n + 1) / 2, || {
            format!("{alg}: {} verdicts", r.verdicts.len())
        })?;
        for (i, a) in ["H", "D", "K"].iter().enumerate() {
            for b in &["H", "D", "K"][i..] {
                ensure(r.verdict(a, b) == Some(true), || {
                    format!("{alg}: sl(2) pair ({a}, {b})")
                })?;
            }
        }
        let positive = &corpus::weights(alg)
            .map_err(|e| e.to_string())?
            .split
            .unwrap_or_default()
            .positive;
        ensure(!positive.is_empty(), || format!("{alg}: empty positive part"))?;
        for (i, a) in positive.iter().enumerate() {
            for b in &positive[i..] {
                ensure(r.verdict(a, b) == Some(true), || {
                    format!("{alg}: positive pair ({a}, {b})")
                })?;
            }
        }
        for e in &r.entries {
            ensure(e.labels.len() == 2 && !e.residual.is_empty(), || {
                format!("{alg}: unlocalized entry")
            })?;
        }
        let pairs: Vec<String> = r.entries.iter().map(|e| format!("({})", e.labels.join(","))).collect();
        summary.push(if pairs.is_empty() {
            format!("{alg} {}/{} exact", r.checked, r.checked)
        } else {
            format!("{alg} residuals at {}", pairs.join(" "))
        });
    }
    Ok(summary.join("; "))
}

fn weyl_op() -> impl Strategy<Value = DiffOp> {
    proptest::collection::vec((0u32..=2, 0u32..=2, 0u32..=2, 0u32..=2, -3i64..=3, 0u32..=1), 0..4).prop_map(|parts| {
        let mut op = DiffOp::zero();
        for (pt, px, dt, dx, c, l) in parts {
            let coef = Scalar::monomial(l, GaussRat::from_int(c));
            op = &op + &DiffOp::term(WeylMonomial::new(pt, px, dt, dx), coef);
        }
        op
    })
}

fn tx_poly() -> impl Strategy<Value = TxPoly> {
    proptest::collection::vec((0u32..=4, 0u32..=4, -3i64..=3), 0..4).prop_map(|parts| {
        parts.into_iter().fold(TxPoly::zero(), |p, (et, ex, c)| {
            &p + &TxPoly::monomial(et, ex, Scalar::from_int(c))
        })
    })
}

/// Sum of `coefficient * partial` terms with homogeneous coefficients, so
/// every term has degree `d`.
fn vector_field(ctx: Arc<VarContext>, d: Degree) -> impl Strategy<Value = VectorFieldOp> {
    let n = ctx.len();
    let c2 = ctx.clone();
    proptest::collection::vec(0..n, 1..4)
        .prop_flat_map(move |vs| {
            let coefs: Vec<_> = vs
                .iter()
                .map(|&v| homogeneous(c2.clone(), degree_add(d, c2.var(v).degree)))
                .collect();
            (Just(vs), coefs)
        })
        .prop_map(move |(vs, coefs)| {
            vs.iter().zip(coefs).fold(VectorFieldOp::zero(&ctx), |acc, (&v, p)| {
                acc.add(&VectorFieldOp::multiplication(&p).compose(&VectorFieldOp::partial(&ctx, v)))
            })
        })
}

fn criterion_8() -> Outcome {
    let mut first_order = 0;
    for alg in corpus::ALGEBRAS {
        let vf = corpus::vector_fields(alg).map_err(|e| e.to_string())?;
        let ops: Vec<_> = vf.iter().collect();
        for (i, (a, x)) in ops.iter().enumerate() {
            ensure(x.op.order() <= 1, || format!("{alg}: {a} is not a vector field"))?;
            for (b, y) in &ops[i..] {
                let br = x.bracket(y);
                ensure(br.op.order() <= 1, || {
                    format!("{alg}: bracket of {a} and {b} has order {}", br.op.order())
                })?;
                first_order += 1;
            }
        }
    }

    let cases = 256;
    let rng = || proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        rng(),
    );
    runner
        .run(&(weyl_op(), weyl_op(), tx_poly()), |(a, b, p)| {
            prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
            Ok(())
        })
        .map_err(|e| format!("weyl: {e}"))?;
    let ctx = calculus_context();
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        rng(),
    );
    let strategy = (any_degree(), any_degree(), any_degree()).prop_flat_map({
        let ctx = ctx.clone();
        move |(da, db, dp)| {
            (
                vector_field(ctx.clone(), da),
                vector_field(ctx.clone(), db),
                homogeneous(ctx.clone(), dp),
            )
        }
    });
    runner
        .run(&strategy, |(a, b, p)| {
            prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
            Ok(())
        })
        .map_err(|e| format!("vecfield: {e}"))?;

    let ids = corpus::ids();
    for id in &ids {
        let file = corpus::load(id).map_err(|e| e.to_string())?.to_file();
        let back = DefinitionFile::parse(&file.to_text()).map_err(|e| format!("{id}: {e}"))?;
        ensure(back == file, || format!("{id}: text round trip differs"))?;
        if let Ok(t) = corpus::table(id) {
            let back = parse_table_json(&emit_table(&t, Format::Json)).map_err(|e| format!("{id}: {e}"))?;
            ensure(back == t, || format!("{id}: json round trip differs"))?;
        }
    }

    for id in ["g121.table", "g22.table", "n1.table"] {
        let t = corpus::table(id).map_err(|e| e.to_string())?;
        for degrees in [[Degree::ZERO, Degree::D01], [Degree::ZERO, Degree::D10]] {
            let sub = t.restrict_degrees(&degrees).map_err(|e| format!("{id}: {e}"))?;
            ensure(check_jacobi(&sub).passed(), || {
                format!("{id}: restricted table fails Jacobi")
            })?;
        }
    }
    Ok(format!(
        "{first_order} first-order brackets; {cases}+{cases} compose/apply cases; {} entries round-trip; 6 subalgebras closed",
        ids.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("g(1,2,1) reconstruction", criterion_1),
        ("g(2,2) reconstruction", criterion_2),
        ("graded Jacobi", criterion_3),
        ("graded calculus", criterion_4),
        ("N=1 realizations", criterion_5),
        ("weights and splits", criterion_6),
        ("vector-field realizations", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
