//! Acceptance gate: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use periodic_fsm::scalar::parse::parse_qpoly;
use periodic_fsm::spectrum::RowType;
use periodic_fsm::{
    band_diagram_sweep, check_interlacing, classify_family, convergence_study,
    dirichlet_zero_crossings, fsm_report, is_fsm_simple_at, is_invertible, linear_grid, monodromy,
    monodromy_at_zero, monodromy_via_determinants, one_sided_spectrum, parse_scalar,
    spectrum_bands, stability_probe, CutoffPlan, Mat2, Mode, Potential, QPoly, Rhs, Scalar,
    Simplicity,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

type Outcome = Result<(), String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(text: &str) -> Scalar {
    parse_scalar(text, Mode::Exact).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn mat(entries: [&str; 4]) -> Mat2<Scalar> {
    let [a, b, c, d] = entries.map(s);
    Mat2::new(a, b, c, d)
}

fn pot(entries: &[&str]) -> Potential {
    Potential::new(entries.iter().map(|e| s(e)).collect()).unwrap()
}

fn word(w: &[u8], lambda: &str) -> Potential {
    Potential::from_word(w, &s(lambda)).unwrap()
}

const FIVE: [u8; 5] = [1, 1, 0, 1, 0];
const NINE: [u8; 9] = [1, 1, 0, 1, 0, 1, 0, 1, 1];
const ONE_SIDED_ONLY: [u8; 9] = [1, 1, 1, 0, 1, 1, 0, 1, 0];

fn same_matrix(label: &str, got: &Mat2<Scalar>, want: &Mat2<Scalar>) -> Outcome {
    ensure(got == want, || {
        format!("{label}: got {got:?}, expected {want:?}")
    })
}

fn monodromy_regression() -> Outcome {
    let three = pot(&["2", "1/2", "1/2"]);
    same_matrix(
        "3-periodic M(0)",
        &monodromy_at_zero(&three, 0, false),
        &mat(["2", "3/4", "0", "1/2"]),
    )?;
    same_matrix(
        "3-periodic M(1)",
        &monodromy_at_zero(&three, 1, false),
        &mat(["2", "0", "-3/4", "1/2"]),
    )?;
    same_matrix(
        "3-periodic M(2)",
        &monodromy_at_zero(&three, 2, false),
        &mat(["1/2", "0", "0", "2"]),
    )?;
    let five = word(&FIVE, "1/sqrt(2)");
    same_matrix(
        "5-periodic M(0)",
        &monodromy_at_zero(&five, 0, false),
        &mat(["-1/sqrt(2)", "-1", "0", "-sqrt(2)"]),
    )?;
    let nine = word(&NINE, "1/2");
    same_matrix(
        "9-periodic M(0)",
        &monodromy_at_zero(&nine, 0, false),
        &mat(["-1/2", "0", "0", "-2"]),
    )?;
    same_matrix(
        "9-periodic M(1)",
        &monodromy_at_zero(&nine, 1, false),
        &mat(["-2", "-3/4", "0", "-1/2"]),
    )?;
    let lone = word(&ONE_SIDED_ONLY, "1/sqrt(2)");
    same_matrix(
        "one-sided-only M(1)",
        &monodromy_at_zero(&lone, 1, false),
        &mat(["-1/sqrt(2)", "2", "0", "-sqrt(2)"]),
    )
}

fn bands_equal(label: &str, p: &Potential, want: &[[&str; 2]]) -> Outcome {
    let got = spectrum_bands(p);
    let ok = got.bands.len() == want.len()
        && got
            .bands
            .iter()
            .zip(want)
            .all(|(b, w)| b.lo.is_exact() && b.lo == s(w[0]) && b.hi == s(w[1]));
    ensure(ok, || format!("{label}: got {got}"))
}

fn spectrum_regression() -> Outcome {
    bands_equal("(3)", &pot(&["3"]), &[["1", "5"]])?;
    bands_equal(
        "(-1,1)",
        &pot(&["-1", "1"]),
        &[["-sqrt(5)", "-1"], ["1", "sqrt(5)"]],
    )?;
    let p = pot(&["0", "1", "0"]);
    bands_equal(
        "(0,1,0)",
        &p,
        &[
            ["-sqrt(3)", "-1"],
            ["1-sqrt(2)", "1"],
            ["sqrt(3)", "1+sqrt(2)"],
        ],
    )?;

    let half = one_sided_spectrum(&p);
    ensure(half.bands == spectrum_bands(&p), || {
        "one-sided bands differ from two-sided bands".into()
    })?;
    let mut added: Vec<Scalar> = half
        .dirichlet_eigenvalues
        .iter()
        .map(|d| d.value.clone())
        .collect();
    added.dedup();
    ensure(added == vec![s("-(sqrt(5)-1)/2")], || {
        format!("(0,1,0) one-sided additions: {added:?}")
    })?;
    ensure(half.rejected.contains(&s("(1+sqrt(5))/2")), || {
        format!("rejected: {:?}", half.rejected)
    })?;

    let two = pot(&["-1", "1"]);
    let half = one_sided_spectrum(&two);
    ensure(
        half.dirichlet_eigenvalues.is_empty() && half.bands == spectrum_bands(&two),
        || {
            format!(
                "2-periodic one-sided spectrum adds {:?}",
                half.dirichlet_eigenvalues
            )
        },
    )
}

fn verdicts() -> Outcome {
    let r = fsm_report(&pot(&["2", "1/2", "1/2"]));
    ensure(
        r.invertible_two_sided
            && !r.applicable_two_sided
            && r.failing_forward_shifts == [2]
            && r.failing_reversed_shifts == [2]
            && r.bad_left_residues == [2]
            && r.bad_right_residues == [1],
        || format!("(2,1/2,1/2): {r:?}"),
    )?;
    // The trace of the displayed M(0) = [[-1/√2, -1], [0, -√2]] is -3/√2.
    let r = fsm_report(&word(&FIVE, "1/sqrt(2)"));
    ensure(
        r.invertible_two_sided && r.trace_at_zero == s("-3/sqrt(2)") && !r.applicable_two_sided,
        || format!("5-periodic: {r:?}"),
    )?;
    let r = fsm_report(&word(&NINE, "1/2"));
    ensure(
        r.invertible_two_sided && r.trace_at_zero == s("-5/2") && !r.applicable_two_sided,
        || format!("9-periodic: {r:?}"),
    )?;
    let r = fsm_report(&word(&ONE_SIDED_ONLY, "1/sqrt(2)"));
    ensure(!r.applicable_two_sided && r.applicable_one_sided, || {
        format!("one-sided-only: {r:?}")
    })
}

/// Word, matrix entries, zeros of `M21`, trace, trace at the zeros.
type Row = (
    [u8; 3],
    [&'static str; 4],
    &'static [&'static str],
    &'static str,
    &'static [&'static str],
);

/// The period-3 classification in enumeration order. The trace of
/// `(1,0,0)` is taken from its matrix.
const TABLE: [Row; 8] = [
    ([0, 0, 0], ["0", "1", "-1", "0"], &[], "0", &[]),
    ([1, 0, 0], ["λ", "1", "-1", "0"], &[], "λ", &[]),
    ([0, 1, 0], ["0", "1", "-1", "λ"], &[], "λ", &[]),
    (
        [1, 1, 0],
        ["λ", "1", "λ^2-1", "λ"],
        &["-1", "1"],
        "2*λ",
        &["-2", "2"],
    ),
    ([0, 0, 1], ["λ", "1", "-1", "0"], &[], "λ", &[]),
    ([1, 0, 1], ["2*λ", "1", "-1", "0"], &[], "2*λ", &[]),
    ([0, 1, 1], ["λ", "-λ^2+1", "-1", "λ"], &[], "2*λ", &[]),
    (
        [1, 1, 1],
        ["-λ^3+2*λ", "-λ^2+1", "λ^2-1", "λ"],
        &["-1", "1"],
        "-λ^3+3*λ",
        &["-2", "2"],
    ),
];

fn poly(text: &str) -> QPoly {
    parse_qpoly(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn scalars(v: &Value) -> Vec<Scalar> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| s(x.as_str().unwrap()))
        .collect()
}

fn table_reproduction() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = periodic_fsm_cli::run(
        [
            "periodic-fsm",
            "search",
            "--period",
            "3",
            "--format",
            "json",
        ],
        &mut out,
        &mut err,
    );
    ensure(code == 0, || {
        format!("exit {code}: {}", String::from_utf8_lossy(&err))
    })?;
    let doc: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let rows = doc["table"].as_array().ok_or("no table in output")?;
    ensure(rows.len() == TABLE.len(), || format!("{} rows", rows.len()))?;
    for (row, (w, entries, zeros, trace, at_zeros)) in rows.iter().zip(TABLE) {
        let label = format!("{w:?}");
        let got_word: Vec<u8> = serde_json::from_value(row["word"].clone()).unwrap();
        ensure(got_word == w, || {
            format!("row order: got {got_word:?}, expected {label}")
        })?;
        for (i, e) in entries.iter().enumerate() {
            let got = row["matrix"][i].as_str().unwrap();
            ensure(poly(got) == poly(e), || {
                format!("{label} entry {i}: got {got}, expected {e}")
            })?;
        }
        let want_zeros: Vec<Scalar> = zeros.iter().map(|z| s(z)).collect();
        ensure(scalars(&row["m21_zeros"]) == want_zeros, || {
            format!("{label} zeros: {}", row["m21_zeros"])
        })?;
        let got_trace = row["trace"].as_str().unwrap();
        ensure(poly(got_trace) == poly(trace), || {
            format!("{label} trace: got {got_trace}, expected {trace}")
        })?;
        let want_at: Vec<Scalar> = at_zeros.iter().map(|z| s(z)).collect();
        ensure(scalars(&row["trace_at_zeros"]) == want_at, || {
            format!("{label} trace at zeros: {}", row["trace_at_zeros"])
        })?;
    }
    Ok(())
}

fn family_classification() -> Outcome {
    for k in 1..=4 {
        let c = classify_family(k, false, false).map_err(|e| e.to_string())?;
        ensure(c.all_fsm_simple && c.records.is_empty(), || {
            format!("K = {k}: {} records", c.records.len())
        })?;
    }
    for k in 5..=8 {
        let c = classify_family(k, true, false).map_err(|e| e.to_string())?;
        ensure(c.records.is_empty(), || {
            format!("K = {k} rational: {} records", c.records.len())
        })?;
    }
    let c = classify_family(5, false, false).map_err(|e| e.to_string())?;
    let rec = c
        .records
        .iter()
        .find(|r| r.word == FIVE)
        .ok_or("K = 5: (1,1,0,1,0) missing")?;
    ensure(
        rec.counterexamples == [s("-1/sqrt(2)"), s("1/sqrt(2)")],
        || format!("{:?}", rec.counterexamples),
    )?;
    ensure(
        rec.zeros
            .iter()
            .filter(|z| z.counterexample)
            .all(|z| z.minpoly.as_deref() == Some("2*λ^2 - 1")),
        || "K = 5: minimal polynomial differs from 2λ²-1".into(),
    )?;
    let c = classify_family(9, true, false).map_err(|e| e.to_string())?;
    let rec = c
        .records
        .iter()
        .find(|r| r.word == NINE)
        .ok_or("K = 9 rational: word missing")?;
    ensure(
        rec.rational_counterexamples == [s("-1/2"), s("1/2")],
        || format!("{:?}", rec.rational_counterexamples),
    )?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let full = pool
        .install(|| classify_family(9, false, false))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("full K = 9 took {elapsed:?} single-threaded")
    })?;
    ensure(full.records.iter().any(|r| r.word == NINE), || {
        "full K = 9 lost the rational word".into()
    })
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..40, 1i64..7).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn rational_potential() -> impl Strategy<Value = Potential> {
    prop::collection::vec(rational(), 1..=8).prop_map(|v| Potential::new(v).unwrap())
}

fn suite<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Outcome,
) -> Outcome {
    runner(cases)
        .run(&strategy, |v| test(v).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    suite(
        "det and trace invariance",
        1000,
        (rational_potential(), rational()),
        |(p, e)| {
            let base = monodromy(&p, &e, 0, false)
                .map_err(|x| x.to_string())?
                .trace();
            for j in 0..p.period() as i64 {
                for rev in [false, true] {
                    let m = monodromy(&p, &e, j, rev).map_err(|x| x.to_string())?;
                    ensure(m.det() == Scalar::one(), || format!("det at shift {j}"))?;
                    ensure(m.trace() == base, || {
                        format!("trace at shift {j}, reversed {rev}")
                    })?;
                }
            }
            Ok(())
        },
    )?;
    suite(
        "two-path monodromy",
        500,
        (rational_potential(), rational()),
        |(p, e)| {
            let a = monodromy(&p, &e, 0, false).map_err(|x| x.to_string())?;
            let b = monodromy_via_determinants(&p, &e).map_err(|x| x.to_string())?;
            ensure(a == b, || format!("{a:?} vs {b:?}"))
        },
    )?;
    let integer = prop::collection::vec(-5i64..=5, 1..=8).prop_map(|v| Potential::from_ints(&v));
    suite("integer potentials", 1000, integer, |p| {
        let (invertible, _) = is_invertible(&p);
        let r = fsm_report(&p);
        ensure(
            !invertible || (r.applicable_two_sided && r.applicable_one_sided),
            || format!("{r:?}"),
        )
    })?;
    suite(
        "interlacing",
        200,
        (rational_potential(), 0.0f64..std::f64::consts::PI),
        |(p, phi)| {
            let r = check_interlacing(&p, phi);
            ensure(r.holds, || format!("witness {:?}", r.witness))
        },
    )?;
    for k in 1..=9 {
        let c = classify_family(k, false, false).map_err(|e| e.to_string())?;
        for rec in &c.records {
            for lambda in rec.certificates() {
                let p = Potential::from_word(&rec.word, lambda).map_err(|e| e.to_string())?;
                ensure(
                    is_fsm_simple_at(&p) == Simplicity::CounterexampleHere,
                    || format!("certificate {lambda} for {:?} not confirmed", rec.word),
                )?;
            }
        }
    }
    Ok(())
}

fn numerical_behavior() -> Outcome {
    for v in [&["3"][..], &["-1", "1"][..]] {
        let p = pot(v);
        let rep = convergence_study(&p, Rhs::Unit(0), &CutoffPlan::symmetric(), 100)
            .map_err(|e| e.to_string())?;
        let err = rep.final_error().ok_or("missing error at n = 100")?;
        ensure(err < 1e-8, || format!("{v:?}: error {err:e} at n = 100"))?;
        let bound = rep.max_estimate().ok_or("singular section")?;
        ensure(bound <= 10.0, || format!("{v:?}: inverse norm {bound}"))?;
    }
    let p = pot(&["2", "1/2", "1/2"]);
    let sym = stability_probe(&p, &CutoffPlan::symmetric(), 200)
        .max_estimate()
        .unwrap_or(f64::INFINITY);
    ensure(sym > 1e4, || format!("symmetric plan peaks at {sym:e}"))?;
    let plan = CutoffPlan::adapted(3, vec![2], vec![1]).map_err(|e| e.to_string())?;
    let adapted = stability_probe(&p, &plan, 200)
        .max_estimate()
        .ok_or("adapted plan hit a singular section")?;
    ensure(adapted < 1e2, || format!("adapted plan peaks at {adapted}"))
}

fn sweep_crossings() -> Outcome {
    let grid: Vec<f64> = linear_grid(0.0, 3.0, 3000).into_iter().skip(1).collect();
    for (w, target) in [
        (&FIVE[..], std::f64::consts::FRAC_1_SQRT_2),
        (&NINE[..], 0.5),
    ] {
        let rows = band_diagram_sweep(w, &grid, true).map_err(|e| e.to_string())?;
        let hit = rows.iter().any(|r| {
            r.kind == RowType::Dirichlet
                && r.e_lo.abs() < 1e-3
                && (r.lambda - target).abs() <= 1e-3 + 1e-12
        });
        ensure(hit, || {
            format!("{w:?}: no Dirichlet row near E = 0 around λ = {target}")
        })?;
    }
    let rows = band_diagram_sweep(&[1, 1, 0, 1], &grid, true).map_err(|e| e.to_string())?;
    let crossings = dirichlet_zero_crossings(&rows);
    ensure(crossings.is_empty(), || {
        format!("(1,1,0,1) crosses E = 0: {:?}", crossings.first())
    })
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("monodromy regression", monodromy_regression, 1),
        ("spectrum regression", spectrum_regression, 1),
        ("applicability verdicts", verdicts, 1),
        ("table reproduction for K = 3", table_reproduction, 1),
        ("family classification", family_classification, 60),
        ("property suites", property_suites, 120),
        ("numerical FSM behavior", numerical_behavior, 30),
        ("sweep crossings", sweep_crossings, 30),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(budget), || {
                format!("took {elapsed:.2?}, budget {budget} s")
            })
        });
        match outcome {
            Ok(()) => println!("PASS {}: {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
