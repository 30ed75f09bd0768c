//! The `flipclass` command line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use flipclass_core::classify::{census, CoefficientTable};
use flipclass_core::probe::probe;
use flipclass_core::rtilde::{rtilde_dyer, rtilde_oracle, CbarRecipe};
use flipclass_core::{flipclasses, IotaPolynomial, Permutation, RTildePolynomial, ReflectionOrdering, TimeSupportGraph};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::collect_census;
use crate::format;
use crate::pipeline::{self, expected_count};
use crate::verify::{self, Status, Suite};

#[derive(Debug, Parser)]
#[command(name = "flipclass", version, about = "Flipclasses of Bruhat-graph paths and R~-polynomials")]
pub struct Cli {
    /// Print a JSON summary on stdout; human-readable text goes to stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// R~-polynomial of an interval, or one of its coefficients.
    Rtilde {
        /// Lower permutation in one-line notation (`e` for the identity).
        u: String,
        /// Upper permutation (`w0` for the longest element).
        v: String,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Only the coefficient of q^h.
        #[arg(long)]
        h: Option<usize>,
        /// Degree, needed when both arguments are `e` or `w0`.
        #[arg(long)]
        n: Option<usize>,
        /// Reduced word of w0 defining the reflection ordering for the Dyer count.
        #[arg(long)]
        word: Option<String>,
        /// Run every applicable method and check that they agree.
        #[arg(long)]
        verify: bool,
        /// Directory holding `ac6.tsv`.
        #[arg(long)]
        table_dir: Option<PathBuf>,
    },
    /// The h-flipclasses of an interval.
    Flipclasses {
        u: String,
        v: String,
        h: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Summary)]
        emit: Emit,
    },
    /// Census and (ι, c) tables for levels 1..=h.
    Classify {
        #[arg(long)]
        h: usize,
        /// Census of S_n at level h only, without building tables.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        /// Output directory for tables; defaults to $FLIPCLASS_TABLE_DIR or `tables`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow the census of S7 at h = 6.
        #[arg(long)]
        heavy: bool,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
        /// Include the h = 6 tier (full suite only).
        #[arg(long)]
        heavy: bool,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long, default_value_t = verify::Options::default().seed)]
        seed: u64,
    },
    /// Look for h-flipclasses with isomorphic unlabelled paths but different c.
    ProbeConjecture {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: Option<usize>,
        /// Maximum number of exact isomorphism tests.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Dyer,
    Flipclass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Summary,
    Tvec,
    Iota,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Fast,
    Full,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Output of a subcommand.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub verified: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, verified: true }
    }
}

/// Resolves `e`, `w0` and one-line words; `e`/`w0` take their degree from
/// the other argument or from `n`.
pub fn parse_pair(u: &str, v: &str, n: Option<usize>) -> Result<(Permutation, Permutation)> {
    let named = |s: &str| matches!(s, "e" | "w0");
    let explicit = |s: &str| -> Result<Option<Permutation>> {
        if named(s) {
            Ok(None)
        } else {
            Ok(Some(s.parse().with_context(|| format!("invalid permutation {s:?}"))?))
        }
    };
    let (pu, pv) = (explicit(u)?, explicit(v)?);
    let degree = match (pu, pv, n) {
        (Some(p), _, _) | (None, Some(p), _) => p.degree(),
        (None, None, Some(n)) => n,
        (None, None, None) => bail!("--n is required when both permutations are named"),
    };
    let resolve = |s: &str, p: Option<Permutation>| -> Result<Permutation> {
        Ok(match (s, p) {
            (_, Some(p)) => p,
            ("e", None) => Permutation::identity(degree),
            (_, None) => Permutation::longest(degree),
        })
    };
    let (u, v) = (resolve(u, pu)?, resolve(v, pv)?);
    if u.degree() != v.degree() {
        bail!("{u} and {v} have different degrees");
    }
    if let Some(n) = n {
        if n != u.degree() {
            bail!("--n {n} does not match the degree {}", u.degree());
        }
    }
    if !u.bruhat_leq(&v)? {
        bail!("{u} is not below {v} in Bruhat order");
    }
    Ok((u, v))
}

fn load_table6(dir: Option<PathBuf>) -> Result<Option<CoefficientTable>> {
    format::load_coefficient_table(&dir.unwrap_or_else(format::table_dir), 6)
}

fn ordering(n: usize, word: Option<&str>) -> Result<ReflectionOrdering> {
    Ok(match word {
        Some(w) => ReflectionOrdering::parse_reduced_word(n, w)?,
        None => ReflectionOrdering::lex(n)?,
    })
}

fn rtilde_flipclass(u: Permutation, v: Permutation, table6: Option<&CoefficientTable>) -> Result<RTildePolynomial> {
    let gap = v.length() - u.length();
    let recipe = CbarRecipe::new(table6);
    let coefficients = (0..=gap).map(|h| recipe.coefficient(u, v, h)).collect::<Result<Vec<_>, _>>()?;
    Ok(RTildePolynomial::from_coefficients(coefficients))
}

#[allow(clippy::too_many_arguments)]
fn cmd_rtilde(
    u: &str,
    v: &str,
    method: Method,
    h: Option<usize>,
    n: Option<usize>,
    word: Option<String>,
    check: bool,
    table_dir: Option<PathBuf>,
) -> Result<Outcome> {
    let (u, v) = parse_pair(u, v, n)?;
    let gap = v.length() - u.length();
    if method == Method::Flipclass && h.is_some_and(|h| h > 6) || method == Method::Flipclass && h.is_none() && gap > 6 {
        bail!("the flipclass method only covers h <= 6");
    }
    let table6 = load_table6(table_dir)?;
    let ord = ordering(u.degree(), word.as_deref())?;
    if check {
        return verify_rtilde(u, v, h, &ord, table6.as_ref());
    }
    let (text, value) = match (method, h) {
        (Method::Flipclass, Some(h)) => {
            let c = CbarRecipe::new(table6.as_ref()).coefficient(u, v, h)?;
            (c.to_string(), json!(c))
        }
        (method, h) => {
            let r = match method {
                Method::Oracle => rtilde_oracle(u, v)?,
                Method::Dyer => rtilde_dyer(u, v, &ord)?,
                Method::Flipclass => rtilde_flipclass(u, v, table6.as_ref())?,
            };
            match h {
                Some(h) => (r.coefficient(h).to_string(), json!(r.coefficient(h))),
                None => (r.to_string(), json!(r.coefficients())),
            }
        }
    };
    let json = json!({ "u": u.to_string(), "v": v.to_string(), "method": method, "h": h, "result": value });
    Ok(Outcome::ok(text + "\n", json))
}

fn verify_rtilde(
    u: Permutation,
    v: Permutation,
    h: Option<usize>,
    ord: &ReflectionOrdering,
    table6: Option<&CoefficientTable>,
) -> Result<Outcome> {
    let gap = v.length() - u.length();
    let oracle = rtilde_oracle(u, v)?;
    let dyer = rtilde_dyer(u, v, ord)?;
    let recipe = CbarRecipe::new(table6);
    let top = if table6.is_some() { 6 } else { 5 };
    let levels: Vec<usize> = match h {
        Some(h) => vec![h],
        None => (0..=gap.min(top)).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut agree = true;
    for h in levels {
        let (o, d) = (oracle.coefficient(h), dyer.coefficient(h));
        let f = if h <= top { Some(recipe.coefficient(u, v, h)?) } else { None };
        let ok = o == d && f.is_none_or(|f| f == o);
        agree &= ok;
        let fs = f.map_or("-".to_string(), |f| f.to_string());
        let _ = writeln!(text, "q^{h}: oracle {o}  dyer {d}  flipclass {fs}  {}", if ok { "ok" } else { "MISMATCH" });
        rows.push(json!({ "h": h, "oracle": o, "dyer": d, "flipclass": f, "agree": ok }));
    }
    if h.is_none() {
        agree &= oracle == dyer;
        let _ = writeln!(text, "oracle {oracle}; dyer {dyer}");
    }
    let json = json!({ "u": u.to_string(), "v": v.to_string(), "agree": agree, "coefficients": rows });
    Ok(Outcome { text, json, verified: agree })
}

fn cmd_flipclasses(u: &str, v: &str, h: usize, n: Option<usize>, emit: Emit) -> Result<Outcome> {
    let (u, v) = parse_pair(u, v, n)?;
    let classes = flipclasses(u, v, h)?;
    let ord = ReflectionOrdering::lex(u.degree())?;
    let mut text = String::new();
    let mut rows = Vec::new();
    if emit == Emit::Summary {
        let _ = writeln!(text, "{} {h}-flipclasses of [{u},{v}]", classes.len());
    }
    for (i, f) in classes.iter().enumerate() {
        let ts = TimeSupportGraph::of(f);
        let iota = IotaPolynomial::of(f);
        let c = ord.count_increasing(f)?;
        match emit {
            Emit::Summary => {
                let _ = writeln!(text, "#{i}: |F| = {}, t = {}, c = {c}, iota = {}", f.len(), ts.t_vector(), iota);
            }
            Emit::Tvec => {
                let _ = writeln!(text, "{}", ts.t_vector());
            }
            Emit::Iota => {
                let _ = writeln!(text, "{iota}");
            }
            Emit::Dot => {
                text.push_str(&flipclass_core::SupportGraph::of(f).to_dot(&format!("S{i}")));
                text.push_str(&ts.to_dot(&format!("TS{i}")));
            }
        }
        rows.push(json!({
            "paths": f.len(),
            "t_vector": ts.t_vector().to_string(),
            "iota": iota.canonical(),
            "c": c,
        }));
    }
    let json = json!({ "u": u.to_string(), "v": v.to_string(), "h": h, "flipclasses": rows });
    Ok(Outcome::ok(text, json))
}

fn cmd_classify(h: usize, n: Option<usize>, workers: usize, out: Option<PathBuf>, heavy: bool) -> Result<Outcome> {
    if h == 0 {
        bail!("--h must be positive");
    }
    if let Some(n) = n.filter(|&n| n != h + 1) {
        let mut summary = (0u64, std::collections::BTreeSet::new());
        census(n, h, |f| {
            summary.0 += 1;
            summary.1.insert(IotaPolynomial::of(&f).canonical());
        })?;
        let text = format!("S{n}, h={h}: {} flipclasses, {} distinct iota\n", summary.0, summary.1.len());
        return Ok(Outcome::ok(text, json!({ "n": n, "h": h, "flipclasses": summary.0, "distinct_iota": summary.1.len() })));
    }
    if h > 6 {
        bail!("classification is supported for h <= 6");
    }
    if h == 6 && !heavy {
        bail!("h = 6 needs --heavy");
    }
    let mut text = String::new();
    let classification = pipeline::classify(h, workers, |level| {
        let r = level.report();
        eprintln!("h={} done in {:.1}s", r.h, r.seconds);
        let _ = writeln!(
            text,
            "h={}: {} flipclasses of S{} (expected {}, alternate convention {}), {} iota, {} t-vectors, |Ic| = {}, |Rc| = {}, good = {}, Rc in Ic = {}",
            r.h,
            r.flipclasses,
            r.n,
            expected_count(r.h).map_or("-".into(), |c| c.to_string()),
            r.restricted,
            r.distinct_iota,
            r.distinct_t_vectors,
            r.ic,
            r.rc,
            r.good,
            r.products_within_census
        );
    })?;
    let dir = out.unwrap_or_else(format::table_dir);
    for path in classification.save(&dir)? {
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let reports: Vec<pipeline::LevelReport> = classification.levels.iter().map(|l| l.report()).collect();
    let summary = serde_json::to_string_pretty(&reports)?;
    let summary_path = dir.join("summary.json");
    std::fs::write(&summary_path, summary + "\n").with_context(|| format!("writing {}", summary_path.display()))?;
    let _ = writeln!(text, "wrote {}", summary_path.display());
    let good = classification.levels.iter().all(|l| l.goodness.is_good());
    Ok(Outcome { text, json: serde_json::to_value(&reports)?, verified: good })
}

fn cmd_verify(suite: SuiteArg, heavy: bool, workers: usize, seed: u64) -> Result<Outcome> {
    let suite = match suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::Full => Suite::Full,
    };
    let opts = verify::Options { suite, heavy, workers, seed };
    let checks = verify::run(&opts, |c| eprintln!("{}", c.line()));
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "[{}] {}. {}", c.status, c.id, c.title);
    }
    let verified = checks.iter().all(|c| c.status != Status::Fail || c.unexpected_failures().is_empty());
    Ok(Outcome { text, json: serde_json::to_value(&checks)?, verified })
}

fn cmd_probe(h: usize, n: Option<usize>, budget: usize, workers: usize) -> Result<Outcome> {
    let n = n.unwrap_or(h + 1);
    let items: Vec<_> = collect_census(n, h, workers)?
        .into_iter()
        .map(|(f, c)| {
            let key = IotaPolynomial::of(&f).canonical();
            (f, key, c)
        })
        .collect();
    let report = probe(&items, budget);
    let mut text = format!(
        "S{n}, h={h}: {} flipclasses, {} unlabelled classes, {} exact tests, {} isomorphic pairs, {} counterexamples{}\n",
        report.flipclasses,
        report.unlabelled_classes,
        report.exact_tests,
        report.isomorphic_pairs,
        report.counterexamples.len(),
        if report.budget_exhausted { " (budget exhausted)" } else { "" }
    );
    text.push_str("orientation is fixed: a flipclass and its time reversal are not identified\n");
    for ce in &report.counterexamples {
        let _ = writeln!(text, "c = {} vs c = {}:", ce.c_first, ce.c_second);
        text.push_str(&format::flipclass_to_string(&ce.first));
        text.push_str(&format::flipclass_to_string(&ce.second));
    }
    let json = json!({
        "n": n,
        "h": h,
        "flipclasses": report.flipclasses,
        "unlabelled_classes": report.unlabelled_classes,
        "exact_tests": report.exact_tests,
        "isomorphic_pairs": report.isomorphic_pairs,
        "counterexamples": report.counterexamples.len(),
        "budget_exhausted": report.budget_exhausted,
        "orientation_fixed": true,
    });
    Ok(Outcome { text, json, verified: report.counterexamples.is_empty() })
}

pub fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Rtilde { u, v, method, h, n, word, verify, table_dir } => {
            cmd_rtilde(&u, &v, method, h, n, word, verify, table_dir)
        }
        Command::Flipclasses { u, v, h, n, emit } => cmd_flipclasses(&u, &v, h, n, emit),
        Command::Classify { h, n, workers, out, heavy } => cmd_classify(h, n, workers, out, heavy),
        Command::Verify { suite, heavy, workers, seed } => cmd_verify(suite, heavy, workers, seed),
        Command::ProbeConjecture { h, n, budget, workers } => cmd_probe(h, n, budget, workers),
    }
}

/// Parses arguments and runs; exit code 0 on success, 1 when a verification
/// fails, 2 on usage errors.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            if cli.json {
                eprint!("{}", outcome.text);
                println!("{}", outcome.json);
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(if outcome.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
