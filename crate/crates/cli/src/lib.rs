//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success (for `fsm-check`: applicable), 2 invertible but
//! not applicable, 3 not invertible, 64 usage or parse error, 65 domain
//! error.

pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use periodic_fsm::scalar::format_float;
use periodic_fsm::search::EXTRAPOLATION_FROM;
use periodic_fsm::spectrum::RowType;
use periodic_fsm::{
    band_diagram_sweep, check_interlacing, convergence_study, counterexample_lambdas,
    dirichlet_zero_crossings, enumerate_family, fsm_report, is_fsm_simple_at, linear_grid,
    monodromy_at_zero, one_sided_spectrum, parse_list, parse_scalar, solve_section_detailed,
    spectrum_bands, stability_probe_with, symbolic_monodromy, ConvergenceReport, CutoffPlan, Error,
    FamilyClassification, Mode, Potential, Rhs, Scalar, SearchRecord,
};
use serde::Serialize;
use serde_json::{json, Value};

pub use render::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_APPLICABLE: i32 = 2;
pub const EXIT_NOT_INVERTIBLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "periodic-fsm",
    version,
    about = "Spectra and finite-section applicability for periodic discrete Schrödinger operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Digits for decimals and floats.
    #[arg(long, default_value_t = 12, global = true)]
    pub precision: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bands of the two-sided operator.
    Spectrum {
        #[command(flatten)]
        input: PotentialArgs,
        /// Join bands that touch.
        #[arg(long)]
        merge: bool,
    },
    /// Bands plus Dirichlet eigenvalues of the half-line compression.
    OneSided {
        #[command(flatten)]
        input: PotentialArgs,
    },
    /// Invertibility and applicability verdicts at E = 0.
    FsmCheck {
        #[command(flatten)]
        input: PotentialArgs,
    },
    /// Counterexample search over {0,λ}-valued words.
    Search {
        /// Enumerate every word of this period.
        #[arg(long, required_unless_present = "word", conflicts_with = "word")]
        period: Option<usize>,
        /// Analyse a single word symbolically.
        #[arg(long, value_name = "BITS")]
        word: Option<String>,
        /// Keep rational counterexamples only.
        #[arg(long)]
        rational_only: bool,
        /// One word per orbit under cyclic shift and reversal.
        #[arg(long)]
        dedupe: bool,
    },
    /// Band diagram of λ·w over a grid of λ.
    Sweep {
        #[arg(long, value_name = "BITS")]
        word: String,
        /// `lo:hi:steps`.
        #[arg(long, default_value = "0:3:3000", allow_hyphen_values = true)]
        grid: String,
        /// Omit Dirichlet rows.
        #[arg(long)]
        bands_only: bool,
    },
    /// Solve one finite section, or study convergence of a cutoff plan.
    Solve {
        #[command(flatten)]
        input: PotentialArgs,
        /// Single section `l:r`.
        #[arg(long, value_name = "L:R", allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long, default_value_t = 100)]
        sections: usize,
        #[arg(long, value_enum, default_value_t = PlanArg::Symmetric)]
        plan: PlanArg,
        /// `unit:J` or `decaying`.
        #[arg(long, default_value = "unit:0", allow_hyphen_values = true)]
        rhs: String,
    },
    /// Inverse-norm estimates along a cutoff plan.
    Probe {
        #[command(flatten)]
        input: PotentialArgs,
        #[arg(long, default_value_t = 200)]
        sections: usize,
        #[arg(long, value_enum, default_value_t = PlanArg::Symmetric)]
        plan: PlanArg,
        /// Estimates above this count as unbounded.
        #[arg(long, default_value_t = periodic_fsm::solver::DEFAULT_CEILING)]
        ceiling: f64,
    },
    /// Interlacing of Dirichlet and Floquet eigenvalues.
    Interlace {
        #[command(flatten)]
        input: PotentialArgs,
        /// Floquet phase.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    /// Window `v(0),...,v(K-1)`.
    #[arg(
        long,
        value_name = "LIST",
        allow_hyphen_values = true,
        required_unless_present = "word",
        conflicts_with = "word"
    )]
    pub potential: Option<String>,
    /// {0,1}-word, as `1,1,0` or `110`; scaled by --lambda.
    #[arg(long, value_name = "BITS", requires = "lambda")]
    pub word: Option<String>,
    #[arg(
        long,
        value_name = "EXPR",
        allow_hyphen_values = true,
        requires = "word"
    )]
    pub lambda: Option<String>,
    /// Read decimals exactly (they must be dyadic).
    #[arg(long, conflicts_with = "float")]
    pub exact: bool,
    /// Evaluate everything in binary64.
    #[arg(long)]
    pub float: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlanArg {
    Symmetric,
    Adapted,
    OneSided,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `argv` (program name first), runs the command and writes the
/// document to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if let Err(e) = report.write(cli.format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_DOMAIN;
            }
            report.exit
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    let prec = cli.precision;
    match &cli.command {
        Command::Spectrum { input, merge } => Ok(spectrum(&input.potential()?, *merge, prec)),
        Command::OneSided { input } => Ok(one_sided(&input.potential()?, prec)),
        Command::FsmCheck { input } => Ok(fsm_check(&input.potential()?, prec)),
        Command::Search {
            period,
            word,
            rational_only,
            dedupe,
        } => {
            let word = word.as_deref().map(parse_word).transpose()?;
            search(*period, word, *rational_only, *dedupe, prec)
        }
        Command::Sweep {
            word,
            grid,
            bands_only,
        } => sweep(&parse_word(word)?, grid, *bands_only, prec),
        Command::Solve {
            input,
            range,
            sections,
            plan,
            rhs,
        } => {
            let p = input.potential()?;
            let rhs = parse_rhs(rhs)?;
            match range {
                Some(range) => solve_one(&p, parse_pair(range)?, rhs, prec),
                None => {
                    let plan = build_plan(&p, *plan)?;
                    let report = convergence_study(&p, rhs, &plan, *sections)?;
                    Ok(convergence(&p, "solve", &report, prec))
                }
            }
        }
        Command::Probe {
            input,
            sections,
            plan,
            ceiling,
        } => {
            let p = input.potential()?;
            let plan = build_plan(&p, *plan)?;
            let report = stability_probe_with(&p, &plan, *sections, *ceiling);
            Ok(convergence(&p, "probe", &report, prec))
        }
        Command::Interlace { input, phi } => Ok(interlace(&input.potential()?, *phi, prec)),
    }
}

impl PotentialArgs {
    fn mode(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else if self.float {
            Mode::Float
        } else {
            Mode::Auto
        }
    }

    pub fn potential(&self) -> Result<Potential, Failure> {
        let mode = self.mode();
        match (&self.potential, &self.word, &self.lambda) {
            (Some(list), None, None) => {
                Potential::new(parse_list(list, mode).map_err(usage)?).map_err(usage)
            }
            (None, Some(w), Some(l)) => {
                let lambda = parse_scalar(l, mode).map_err(usage)?;
                Potential::from_word(&parse_word(w)?, &lambda).map_err(usage)
            }
            _ => Err(usage("give either --potential or --word with --lambda")),
        }
    }
}

pub fn parse_word(s: &str) -> Result<Vec<u8>, Failure> {
    let bits: Vec<char> = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .collect();
    if bits.is_empty() {
        return Err(usage("empty word"));
    }
    bits.iter()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(usage(format!("word entries must be 0 or 1, got {c:?}"))),
        })
        .collect()
}

fn parse_pair(s: &str) -> Result<(i64, i64), Failure> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("expected L:R, got {s:?}")))?;
    let l = a
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad left cutoff {a:?}")))?;
    let r = b
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad right cutoff {b:?}")))?;
    Ok((l, r))
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), Failure> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(usage(format!("expected lo:hi:steps, got {s:?}")));
    };
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| usage(format!("bad grid bound {t:?}")))
    };
    let steps = steps
        .parse()
        .map_err(|_| usage(format!("bad step count {steps:?}")))?;
    Ok((num(lo)?, num(hi)?, steps))
}

fn parse_rhs(s: &str) -> Result<Rhs, Failure> {
    match s.trim() {
        "decaying" => Ok(Rhs::Decaying),
        "unit" => Ok(Rhs::Unit(0)),
        t => t
            .strip_prefix("unit:")
            .and_then(|j| j.trim().parse().ok())
            .map(Rhs::Unit)
            .ok_or_else(|| usage(format!("expected unit:J or decaying, got {s:?}"))),
    }
}

fn build_plan(p: &Potential, plan: PlanArg) -> Result<CutoffPlan, Failure> {
    Ok(match plan {
        PlanArg::Symmetric => CutoffPlan::symmetric(),
        PlanArg::OneSided => CutoffPlan::one_sided(),
        PlanArg::Adapted => CutoffPlan::from_report(&fsm_report(p))?,
    })
}

fn to_json(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn window(p: &Potential) -> Vec<String> {
    p.window().iter().map(Scalar::to_string).collect()
}

fn word_text(w: &[u8]) -> String {
    let bits: Vec<String> = w.iter().map(u8::to_string).collect();
    format!("({})", bits.join(","))
}

fn float(x: f64, prec: usize) -> String {
    format_float(x, prec)
}

fn opt_float(x: Option<f64>, prec: usize) -> String {
    x.map_or_else(|| "singular".into(), |v| float(v, prec))
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn list<T: ToString>(xs: &[T]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn spectrum(p: &Potential, merge: bool, prec: usize) -> Report {
    let mut bands = spectrum_bands(p);
    if merge {
        bands = bands.merge();
    }
    let decimals: Vec<[String; 2]> = bands
        .bands
        .iter()
        .map(|b| [b.lo.decimal(prec), b.hi.decimal(prec)])
        .collect();
    let json = json!({
        "command": "spectrum",
        "potential": window(p),
        "result": to_json(&bands),
        "decimals": decimals,
    });
    let mut r = Report::new(json, &["band", "lo", "hi", "lo_decimal", "hi_decimal"]);
    for (i, (b, d)) in bands.bands.iter().zip(&decimals).enumerate() {
        r.row(vec![
            (i + 1).to_string(),
            b.lo.display_with(prec),
            b.hi.display_with(prec),
            d[0].clone(),
            d[1].clone(),
        ]);
    }
    for w in &bands.warnings {
        r.note(format!("warning: {w}"));
    }
    r
}

fn one_sided(p: &Potential, prec: usize) -> Report {
    let s = one_sided_spectrum(p);
    let json = json!({"command": "one-sided", "potential": window(p), "result": to_json(&s)});
    let mut r = Report::new(
        json,
        &[
            "kind",
            "lo",
            "hi",
            "lo_decimal",
            "hi_decimal",
            "shift",
            "orientation",
        ],
    );
    for b in &s.bands.bands {
        r.row(vec![
            "band".into(),
            b.lo.display_with(prec),
            b.hi.display_with(prec),
            b.lo.decimal(prec),
            b.hi.decimal(prec),
            String::new(),
            String::new(),
        ]);
    }
    for d in &s.dirichlet_eigenvalues {
        let (v, dec) = (d.value.display_with(prec), d.value.decimal(prec));
        r.row(vec![
            "dirichlet".into(),
            v.clone(),
            v,
            dec.clone(),
            dec,
            d.shift.to_string(),
            d.orientation.to_string(),
        ]);
    }
    for x in &s.rejected {
        let (v, dec) = (x.display_with(prec), x.decimal(prec));
        r.row(vec![
            "rejected".into(),
            v.clone(),
            v,
            dec.clone(),
            dec,
            String::new(),
            String::new(),
        ]);
    }
    for w in &s.bands.warnings {
        r.note(format!("warning: {w}"));
    }
    r
}

fn fsm_check(p: &Potential, prec: usize) -> Report {
    let report = fsm_report(p);
    let simplicity = is_fsm_simple_at(p);
    let k = p.period() as i64;
    let mut monodromies = Vec::new();
    for reversed in [false, true] {
        for j in 0..k {
            let m = monodromy_at_zero(p, j, reversed);
            let entries: Vec<String> = [&m.m11, &m.m12, &m.m21, &m.m22]
                .iter()
                .map(|x| x.display_with(prec))
                .collect();
            monodromies.push((j, reversed, entries));
        }
    }
    let json = json!({
        "command": "fsm-check",
        "potential": window(p),
        "simplicity": to_json(&simplicity),
        "monodromies": monodromies
            .iter()
            .map(|(j, rev, e)| json!({"shift": j, "orientation": if *rev { "reversed" } else { "forward" }, "matrix": e}))
            .collect::<Vec<_>>(),
        "result": to_json(&report),
    });
    let mut r = Report::new(json, &["field", "value"]);
    let mut kv = |k: &str, v: String| r.row(vec![k.into(), v]);
    kv("period", report.period.to_string());
    kv("trace_at_zero", report.trace_at_zero.display_with(prec));
    kv("invertible_two_sided", yes(report.invertible_two_sided));
    kv(
        "failing_forward_shifts",
        list(&report.failing_forward_shifts),
    );
    kv(
        "failing_reversed_shifts",
        list(&report.failing_reversed_shifts),
    );
    kv("applicable_two_sided", yes(report.applicable_two_sided));
    kv("applicable_one_sided", yes(report.applicable_one_sided));
    kv("bad_left_residues", list(&report.bad_left_residues));
    kv("bad_right_residues", list(&report.bad_right_residues));
    for (j, rev, e) in &monodromies {
        let tag = if *rev { "reversed" } else { "forward" };
        r.note(format!(
            "M {tag} shift {j}: [[{}, {}], [{}, {}]]",
            e[0], e[1], e[2], e[3]
        ));
    }
    for w in &report.warnings {
        r.note(format!("warning: {w}"));
    }
    r.exit = if !report.invertible_two_sided {
        EXIT_NOT_INVERTIBLE
    } else if report.applicable_two_sided {
        EXIT_OK
    } else {
        EXIT_NOT_APPLICABLE
    };
    r
}

fn search(
    period: Option<usize>,
    word: Option<Vec<u8>>,
    rational_only: bool,
    dedupe: bool,
    prec: usize,
) -> Result<Report, Failure> {
    let (k, records) = match (period, word) {
        (_, Some(w)) => (w.len(), vec![counterexample_lambdas(&w, rational_only)?]),
        (Some(k), None) => (k, enumerate_family(k, rational_only, dedupe)?),
        (None, None) => return Err(usage("give --period or --word")),
    };
    let hits: Vec<SearchRecord> = records
        .iter()
        .filter(|r| !r.certificates().is_empty())
        .cloned()
        .collect();
    let classification = FamilyClassification {
        period: k,
        rational_only,
        dedupe,
        words_checked: records.len(),
        extrapolated: k >= EXTRAPOLATION_FROM,
        all_fsm_simple: hits.is_empty(),
        records: hits,
    };
    let mut table = Vec::with_capacity(records.len());
    let mut rows = Vec::with_capacity(records.len());
    for rec in &records {
        let m = match &rec.monodromy {
            Some(m) => m.clone(),
            None => symbolic_monodromy(&rec.word)?,
        };
        let entries = m.display_entries();
        let zeros: Vec<String> = rec
            .zeros
            .iter()
            .map(|z| z.lambda.display_with(prec))
            .collect();
        let traces: Vec<String> = rec
            .zeros
            .iter()
            .map(|z| z.trace.display_with(prec))
            .collect();
        let certs: Vec<String> = rec
            .certificates()
            .iter()
            .map(|c| c.display_with(prec))
            .collect();
        table.push(json!({
            "word": rec.word,
            "matrix": entries,
            "m21_identically_zero": rec.m21_identically_zero,
            "m21_zeros": zeros,
            "trace": rec.trace_poly,
            "trace_at_zeros": traces,
        }));
        let (zeros, traces) = if rec.m21_identically_zero {
            ("all λ".to_string(), "-".to_string())
        } else if zeros.is_empty() {
            ("∅".to_string(), String::new())
        } else {
            (zeros.join(", "), traces.join(", "))
        };
        let [m11, m12, m21, m22] = entries;
        rows.push(vec![
            word_text(&rec.word),
            m11,
            m12,
            m21,
            m22,
            zeros,
            rec.trace_poly.clone(),
            traces,
            list(&certs),
        ]);
    }
    let json = json!({
        "command": "search",
        "table": table,
        "words": to_json(&records),
        "result": to_json(&classification),
    });
    let mut r = Report::new(
        json,
        &[
            "word",
            "M11",
            "M12",
            "M21",
            "M22",
            "zeros of M21",
            "tr(M)",
            "tr at zeros",
            "counterexamples",
        ],
    );
    for row in rows {
        r.row(row);
    }
    r.note(format!("words checked: {}", classification.words_checked));
    r.note(format!(
        "words with counterexamples: {}",
        classification.records.len()
    ));
    r.note(format!(
        "all FSM-simple: {}",
        yes(classification.all_fsm_simple)
    ));
    if rational_only {
        r.note("only rational λ were considered");
    }
    if classification.extrapolated {
        r.note(format!("note: period {k} lies beyond the verified range K < {EXTRAPOLATION_FROM}; results are extrapolated"));
    }
    Ok(r)
}

fn sweep(word: &[u8], grid: &str, bands_only: bool, prec: usize) -> Result<Report, Failure> {
    let (lo, hi, steps) = parse_grid(grid)?;
    let rows = band_diagram_sweep(word, &linear_grid(lo, hi, steps), !bands_only)?;
    let crossings = dirichlet_zero_crossings(&rows);
    let json = json!({
        "command": "sweep",
        "word": word,
        "grid": {"lo": lo, "hi": hi, "steps": steps},
        "rows": to_json(&rows),
        "crossings": to_json(&crossings),
    });
    let mut r = Report::new(
        json,
        &["lambda", "type", "j", "orientation", "e_lo", "e_hi"],
    );
    for row in &rows {
        r.row(vec![
            float(row.lambda, prec),
            if row.kind == RowType::Band {
                "band"
            } else {
                "dirichlet"
            }
            .into(),
            row.j.map(|j| j.to_string()).unwrap_or_default(),
            row.orientation.map(|o| o.to_string()).unwrap_or_default(),
            float(row.e_lo, prec),
            float(row.e_hi, prec),
        ]);
    }
    for c in &crossings {
        r.note(format!(
            "crossing: shift {} {}, E from {} to {} for λ in [{}, {}]",
            c.j,
            c.orientation,
            float(c.e_before, prec),
            float(c.e_after, prec),
            float(c.lambda_before, prec),
            float(c.lambda_after, prec)
        ));
    }
    Ok(r)
}

fn solve_one(p: &Potential, (l, r): (i64, i64), rhs: Rhs, prec: usize) -> Result<Report, Failure> {
    let b: Vec<f64> = (l..=r).map(|k| rhs.at(k)).collect();
    let s = solve_section_detailed(p, &b, l, r)?;
    let json = json!({"command": "solve", "potential": window(p), "result": to_json(&s)});
    let mut rep = Report::new(json, &["k", "x"]);
    for (k, x) in (l..).zip(&s.x) {
        rep.row(vec![k.to_string(), float(*x, prec)]);
    }
    rep.note(format!("residual: {}", float(s.residual, prec)));
    rep.note(format!("min pivot: {}", float(s.min_pivot, prec)));
    for w in &s.warnings {
        rep.note(format!("warning: {w}"));
    }
    Ok(rep)
}

fn convergence(p: &Potential, command: &str, report: &ConvergenceReport, prec: usize) -> Report {
    let json = json!({"command": command, "potential": window(p), "result": to_json(report)});
    let mut r = Report::new(json, &["n", "l", "r", "size", "sigma_min_inv", "error"]);
    for row in &report.rows {
        r.row(vec![
            row.n.to_string(),
            row.l.to_string(),
            row.r.to_string(),
            row.size.to_string(),
            opt_float(row.inverse_norm, prec),
            row.error.map(|e| float(e, prec)).unwrap_or_default(),
        ]);
    }
    r.note(format!(
        "verdict: {}",
        to_json(&report.verdict).as_str().unwrap_or_default()
    ));
    r.note(format!("ceiling: {}", float(report.ceiling, prec)));
    r.note(format!(
        "max tail estimate: {}",
        opt_float(report.max_tail_estimate, prec)
    ));
    if !report.witness.is_empty() {
        r.note(format!("witness sections: {}", list(&report.witness)));
    }
    r.note(report.note.clone());
    for w in &report.warnings {
        r.note(format!("warning: {w}"));
    }
    r
}

fn interlace(p: &Potential, phi: f64, prec: usize) -> Report {
    let rep = check_interlacing(p, phi);
    let json = json!({"command": "interlace", "potential": window(p), "result": to_json(&rep)});
    let mut r = Report::new(json, &["i", "floquet", "dirichlet"]);
    for (i, f) in rep.floquet.iter().enumerate() {
        let d = rep
            .dirichlet
            .get(i)
            .map(|d| float(*d, prec))
            .unwrap_or_default();
        r.row(vec![(i + 1).to_string(), float(*f, prec), d]);
    }
    r.note(format!("interlacing holds: {}", yes(rep.holds)));
    if let Some((a, b)) = rep.witness {
        r.note(format!("violated: {} > {}", float(a, prec), float(b, prec)));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_accept_both_spellings() {
        assert_eq!(parse_word("1,1,0").unwrap(), vec![1, 1, 0]);
        assert_eq!(parse_word("110").unwrap(), vec![1, 1, 0]);
        assert!(matches!(parse_word("102"), Err(Failure::Usage(_))));
        assert!(matches!(parse_word(","), Err(Failure::Usage(_))));
    }

    #[test]
    fn grids_pairs_and_rhs() {
        assert_eq!(parse_grid("-1:2.5:10").unwrap(), (-1.0, 2.5, 10));
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:inf:3").is_err());
        assert_eq!(parse_pair("-3:4").unwrap(), (-3, 4));
        assert_eq!(parse_rhs("unit:-2").unwrap(), Rhs::Unit(-2));
        assert_eq!(parse_rhs("decaying").unwrap(), Rhs::Decaying);
        assert!(parse_rhs("unit:x").is_err());
    }
}
