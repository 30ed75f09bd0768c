//! Verification suites: one check per acceptance criterion, each a list of
//! exact expectations with pinned runtime tolerances.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::time::Instant;

use anyhow::Result;
use flipclass_core::classify::census;
use flipclass_core::flips::{flip_i, flip_labels, flip_labels_brute};
use flipclass_core::invariants::all_paths_effective;
use flipclass_core::reduction::{decompose, is_irreducible, shuffle_product};
use flipclass_core::reforder::random_ordering;
use flipclass_core::rtilde::{rtilde_dyer, CbarRecipe, CbarTable5};
use flipclass_core::{
    flipclasses, BruhatPath, Flipclass, IotaPolynomial, Permutation, RTildeOracle, ReflectionOrdering, TVector,
    TimeSupportGraph,
};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::collect_census;
use crate::pipeline::{expected_count, Classification};

/// Runtime tolerances, in seconds.
pub const CENSUS_SMALL_SECONDS: f64 = 60.0;
pub const CENSUS_H5_SECONDS: f64 = 1800.0;
pub const THREE_WAY_SECONDS: f64 = 1800.0;
pub const TABLE_H5_SECONDS: f64 = 3600.0;

pub const RANDOM_S6_INTERVALS: usize = 1000;
pub const RANDOM_ORDERINGS: usize = 10;
pub const RANDOM_FLIP_PATHS: usize = 100_000;
pub const EVEN_GAP_INTERVALS: usize = 276;
pub const IC6_RECORDS: usize = 4515;

/// Failures that are expected and documented, by check id and message prefix.
pub const KNOWN_DEVIATIONS: &[(usize, &str)] = &[(1, "h=1 count")];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Full,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub suite: Suite,
    pub heavy: bool,
    pub workers: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { suite: Suite::Full, heavy: false, workers: 1, seed: 0x5eed }
    }
}

impl Options {
    fn full(&self) -> bool {
        self.suite == Suite::Full
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl Check {
    fn known(&self, failure: &str) -> bool {
        KNOWN_DEVIATIONS.iter().any(|&(id, prefix)| id == self.id && failure.starts_with(prefix))
    }

    /// Failures not listed in [`KNOWN_DEVIATIONS`].
    pub fn unexpected_failures(&self) -> Vec<&str> {
        self.failures.iter().map(String::as_str).filter(|f| !self.known(f)).collect()
    }

    pub fn line(&self) -> String {
        let mut s = format!("[{}] {:>2}. {} ({:.1}s)", self.status, self.id, self.title, self.seconds);
        for f in &self.failures {
            let tag = if self.known(f) { " (known deviation)" } else { "" };
            s.push_str(&format!("\n      failed: {f}{tag}"));
        }
        for n in &self.notes {
            s.push_str(&format!("\n      {n}"));
        }
        s
    }
}

struct Recorder {
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { notes: Vec::new(), failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(message());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn within(&mut self, what: &str, seconds: f64, limit: f64) {
        self.expect(seconds < limit, || format!("{what} took {seconds:.1}s, limit {limit:.0}s"));
    }
}

/// Shared state for one run of the suites.
struct Context<'a> {
    opts: &'a Options,
    rng: ChaCha8Rng,
    classification: Classification,
}

type CheckFn = fn(&mut Context<'_>, &mut Recorder) -> Result<Option<String>>;

const CHECKS: &[(usize, &str, CheckFn)] = &[
    (1, "census counts", check_census),
    (2, "three-way R~ agreement", check_three_way),
    (3, "3-flipclasses are crowns", check_crowns),
    (4, "structure of 4-flipclasses", check_h4),
    (5, "h=5 t-vector table", check_h5_table),
    (6, "goodness of the invariant tables", check_goodness),
    (7, "ordering independence of c", check_ordering_independence),
    (8, "bounds and full-length intervals", check_bounds_and_intervals),
    (9, "even-gap intervals of S5", check_even_gap),
    (10, "flip and reduction properties", check_properties),
];

/// Runs every check in order, reporting each as it completes.
pub fn run(opts: &Options, mut report: impl FnMut(&Check)) -> Vec<Check> {
    let mut ctx = Context { opts, rng: ChaCha8Rng::seed_from_u64(opts.seed), classification: Classification::default() };
    let mut out = Vec::new();
    for &(id, title, f) in CHECKS {
        let start = Instant::now();
        let mut rec = Recorder::new();
        let status = match f(&mut ctx, &mut rec) {
            Ok(Some(reason)) => {
                rec.note(reason);
                Status::Skipped
            }
            Ok(None) if rec.failures.is_empty() => Status::Pass,
            Ok(None) => Status::Fail,
            Err(e) => {
                rec.failures.push(format!("error: {e:#}"));
                Status::Fail
            }
        };
        let check =
            Check { id, title, status, notes: rec.notes, failures: rec.failures, seconds: start.elapsed().as_secs_f64() };
        report(&check);
        out.push(check);
    }
    out
}

fn max_level(opts: &Options) -> usize {
    match (opts.suite, opts.heavy) {
        (Suite::Full, true) => 6,
        (Suite::Full, false) => 5,
        (Suite::Fast, _) => 4,
    }
}

fn comparable_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let all = Permutation::all(n);
    let mut out = Vec::new();
    for &u in &all {
        for &v in &all {
            if u.bruhat_leq(&v).expect("same degree") {
                out.push((u, v));
            }
        }
    }
    out
}

fn collect(n: usize, h: usize) -> Result<Vec<Flipclass>> {
    let mut out = Vec::new();
    census(n, h, |f| out.push(f))?;
    Ok(out)
}

fn lex_c(class: &Flipclass) -> Result<u64> {
    Ok(ReflectionOrdering::lex(class.degree())?.count_increasing(class)? as u64)
}

fn check_census(ctx: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    let top = max_level(ctx.opts);
    let mut small_seconds = 0.0;
    while ctx.classification.levels.len() < top {
        let level = ctx.classification.push_level(ctx.opts.workers)?;
        let r = level.report();
        let expected = expected_count(r.h).expect("levels up to 6");
        rec.note(format!(
            "h={}: {} flipclasses of S{} (alternate convention {}), expected {}, {:.1}s",
            r.h, r.flipclasses, r.n, r.restricted, expected, r.seconds
        ));
        rec.expect(r.flipclasses == expected || r.restricted as u64 == expected, || {
            format!("h={} count {} (alternate {}), expected {expected}", r.h, r.flipclasses, r.restricted)
        });
        match r.h {
            1..=4 => small_seconds += r.seconds,
            5 => rec.within("h=5 census", r.seconds, CENSUS_H5_SECONDS),
            _ => {}
        }
    }
    rec.within("h<=4 census", small_seconds, CENSUS_SMALL_SECONDS);
    if top < 6 {
        rec.note(match ctx.opts.suite {
            Suite::Fast => "h=5 and h=6 not run in the fast suite",
            Suite::Full => "h=6 requires the heavy tier",
        });
    }
    Ok(None)
}

fn three_way_interval(
    oracle: &mut RTildeOracle,
    recipe: &CbarRecipe<'_>,
    ords: &[ReflectionOrdering],
    u: Permutation,
    v: Permutation,
    rec: &mut Recorder,
) -> Result<()> {
    let r = oracle.rtilde(u, v)?;
    for ord in ords {
        let d = rtilde_dyer(u, v, ord)?;
        rec.expect(d == r, || format!("[{u},{v}]: oracle {r}, Dyer {d}"));
    }
    let gap = v.length() - u.length();
    for h in 0..=gap.min(5) {
        let c = recipe.coefficient(u, v, h)?;
        rec.expect(c == r.coefficient(h), || {
            format!("[{u},{v}] q^{h}: oracle {}, flipclasses {c}", r.coefficient(h))
        });
    }
    Ok(())
}

fn check_three_way(ctx: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    let start = Instant::now();
    let recipe = CbarRecipe::new(None);
    for n in [4, 5] {
        let ords = [ReflectionOrdering::lex(n)?, random_ordering(n, &mut ctx.rng)];
        let mut oracle = RTildeOracle::new();
        let pairs = comparable_pairs(n);
        for &(u, v) in &pairs {
            three_way_interval(&mut oracle, &recipe, &ords, u, v, rec)?;
        }
        rec.note(format!("S{n}: {} intervals exhaustive", pairs.len()));
    }
    if ctx.opts.full() {
        let ords = [ReflectionOrdering::lex(6)?, random_ordering(6, &mut ctx.rng)];
        let mut oracle = RTildeOracle::new();
        let sample = random_intervals(6, RANDOM_S6_INTERVALS, &mut ctx.rng);
        for &(u, v) in &sample {
            three_way_interval(&mut oracle, &recipe, &ords, u, v, rec)?;
        }
        let max_gap = sample.iter().map(|(u, v)| v.length() - u.length()).max().unwrap_or(0);
        rec.note(format!("S6: {} random intervals, gaps up to {max_gap}", sample.len()));
    } else {
        rec.note("S6 sampling not run in the fast suite");
    }
    rec.within("three-way comparison", start.elapsed().as_secs_f64(), THREE_WAY_SECONDS);
    Ok(None)
}

fn random_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut w: Vec<u8> = (1..=n as u8).collect();
    w.shuffle(rng);
    Permutation::from_window(&w).expect("shuffled identity")
}

/// `count` distinct comparable pairs `u ≤ v` with `u ≠ v`.
fn random_intervals(n: usize, count: usize, rng: &mut impl Rng) -> Vec<(Permutation, Permutation)> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (a, b) = (random_perm(n, rng), random_perm(n, rng));
        let pair = if a.bruhat_leq(&b).expect("same degree") {
            (a, b)
        } else if b.bruhat_leq(&a).expect("same degree") {
            (b, a)
        } else {
            continue;
        };
        if pair.0 != pair.1 && seen.insert(pair) {
            out.push(pair);
        }
    }
    out
}

fn check_crowns(_: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    for n in [4, 5] {
        let mut sizes: BTreeMap<usize, (usize, BTreeSet<u64>)> = BTreeMap::new();
        for f in collect(n, 3)? {
            let ts = TimeSupportGraph::of(&f);
            let c = lex_c(&f)?;
            let Some(k) = ts.crown_size() else {
                rec.failures.push(format!("[{},{}]: t-vector {} is not a crown", f.u(), f.v(), ts.t_vector()));
                continue;
            };
            rec.expect((2..=5).contains(&k), || format!("[{},{}]: {k}-crown", f.u(), f.v()));
            rec.expect(ts.projects_injectively(), || format!("[{},{}]: S_F differs from TS_F", f.u(), f.v()));
            let expected = if k == 5 { 2 } else { 1 };
            rec.expect(c == expected, || format!("[{},{}]: {k}-crown with c = {c}", f.u(), f.v()));
            let entry = sizes.entry(k).or_default();
            entry.0 += 1;
            entry.1.insert(c);
        }
        let summary = sizes.iter().map(|(k, (m, cs))| format!("{k}-crowns {m} with c in {cs:?}")).join(", ");
        rec.note(format!("S{n}: {summary}"));
    }
    Ok(None)
}

/// The `(1,3,4,3,1)` graph: ranks `[u] [a1 a2 a3] [b1..b4] [c1 c2 c3] [v]`
/// numbered `0..12`, edges pointing up.
pub const GRAPH_13431: [(usize, usize); 22] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 4),
    (1, 5),
    (1, 7),
    (2, 5),
    (2, 6),
    (3, 4),
    (3, 6),
    (3, 7),
    (4, 8),
    (4, 9),
    (5, 8),
    (5, 10),
    (6, 8),
    (6, 10),
    (7, 9),
    (7, 10),
    (8, 11),
    (9, 11),
    (10, 11),
];

fn graph_13431() -> BTreeSet<(usize, usize)> {
    GRAPH_13431.iter().copied().collect()
}

/// Whether `ts` is isomorphic, rank by rank, to the graph on `ranks`
/// consecutive blocks with the given edges.
pub fn graded_isomorphic(ts: &TimeSupportGraph, ranks: &[usize], edges: &BTreeSet<(usize, usize)>) -> bool {
    if ts.t_vector().0.iter().map(|&k| k as usize).collect::<Vec<_>>() != ranks {
        return false;
    }
    let ts_edges: BTreeSet<(usize, usize)> = ts.edges().iter().map(|e| (e.source, e.target)).collect();
    if ts_edges.len() != edges.len() {
        return false;
    }
    let blocks: Vec<std::ops::Range<usize>> = (0..ranks.len()).map(|t| ts.rank(t)).collect();
    blocks
        .iter()
        .map(|b| b.clone().permutations(b.len()))
        .multi_cartesian_product()
        .any(|images| {
            let map: Vec<usize> = images.concat();
            edges.iter().all(|&(a, b)| ts_edges.contains(&(map[a], map[b])))
        })
}

fn check_h4(_: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    let figure = graph_13431();
    let target: TVector = "(1,3,4,3,1)".parse()?;
    let (mut total, mut special) = (0, 0);
    for f in collect(5, 4)? {
        total += 1;
        let ts = TimeSupportGraph::of(&f);
        rec.expect(ts.projects_injectively(), || format!("[{},{}]: S_F differs from TS_F", f.u(), f.v()));
        if ts.t_vector() == target {
            special += 1;
            rec.expect(graded_isomorphic(&ts, &[1, 3, 4, 3, 1], &figure), || {
                format!("[{},{}]: TS_F is not the (1,3,4,3,1) graph", f.u(), f.v())
            });
            rec.expect(all_paths_effective(&f), || format!("[{},{}]: a path of TS_F is not effective", f.u(), f.v()));
            let c = lex_c(&f)?;
            rec.expect(c == 1, || format!("[{},{}]: c = {c}", f.u(), f.v()));
        }
    }
    rec.expect(special > 0, || "no flipclass with t-vector (1,3,4,3,1)".into());
    rec.note(format!("{total} 4-flipclasses of S5, {special} with t-vector (1,3,4,3,1)"));
    Ok(None)
}

fn check_h5_table(ctx: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    if !ctx.opts.full() {
        return Ok(Some("S6 census not run in the fast suite".into()));
    }
    let start = Instant::now();
    let table = CbarTable5::standard();
    let expected_tvecs: BTreeSet<TVector> = table.t_vectors().cloned().collect();
    let expected_d: BTreeSet<String> = table.exceptions().map(|(t, _)| t.to_string()).collect();
    let classes = collect_census(6, 5, ctx.opts.workers)?;
    let mut seen = BTreeSet::new();
    let mut by_tvec = flipclass_core::classify::InvariantTable::new(5);
    for (f, c) in &classes {
        let iota = IotaPolynomial::of(f);
        let t = iota.t_vector();
        match table.cbar(&t, &iota.succ(), &iota.prec()) {
            Ok(cbar) => rec.expect(cbar == *c, || format!("[{},{}] {t}: table {cbar}, c = {c}", f.u(), f.v())),
            Err(e) => rec.failures.push(format!("[{},{}] {t}: {e}", f.u(), f.v())),
        }
        by_tvec.add_census(&iota, *c);
        seen.insert(t);
    }
    rec.expect(seen.len() == 104, || format!("{} distinct t-vectors", seen.len()));
    rec.expect(seen == expected_tvecs, || {
        let extra = seen.difference(&expected_tvecs).join(" ");
        let missing = expected_tvecs.difference(&seen).join(" ");
        format!("t-vectors differ from the table: extra [{extra}], missing [{missing}]")
    });
    let conflicts: BTreeSet<String> =
        by_tvec.check_goodness_by_t_vector().conflicts.into_iter().map(|c| c.key).collect();
    rec.expect(conflicts == expected_d, || format!("t-vector conflicts {conflicts:?}, expected {expected_d:?}"));
    rec.note(format!(
        "{} 5-flipclasses of S6, {} t-vectors, {} ambiguous under the t-vector key",
        classes.len(),
        seen.len(),
        conflicts.len()
    ));
    rec.within("h=5 table check", start.elapsed().as_secs_f64(), TABLE_H5_SECONDS);
    Ok(None)
}

fn check_goodness(ctx: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    while ctx.classification.levels.len() < max_level(ctx.opts) {
        ctx.classification.push_level(ctx.opts.workers)?;
    }
    for level in &ctx.classification.levels {
        let (h, ic, rc) = (level.h(), level.ic(), level.rc());
        rec.expect(level.goodness.is_good(), || {
            let c = &level.goodness.conflicts[0];
            format!("Ac{h} is not good: {} has c in {:?}", c.key, c.values)
        });
        rec.expect(level.ac.products_within_census(), || format!("Rc{h} is not contained in Ic{h}"));
        if h == 6 {
            rec.expect(ic.len() == IC6_RECORDS, || format!("|Ic6| = {}, expected {IC6_RECORDS}", ic.len()));
        }
        rec.note(format!("h={h}: |Ic| = {}, |Rc| = {}, |Ac| = {}", ic.len(), rc.len(), level.ac.len()));
    }
    if !ctx.opts.heavy || !ctx.opts.full() {
        rec.note("h=6 requires the heavy tier");
    }
    Ok(None)
}

fn check_ordering_independence(ctx: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    for n in [4, 5] {
        let mut ords = vec![ReflectionOrdering::lex(n)?, ReflectionOrdering::reverse_lex(n)?];
        ords.extend((0..RANDOM_ORDERINGS).map(|_| random_ordering(n, &mut ctx.rng)));
        for ord in &ords {
            rec.expect(ord.validate(), || format!("S{n}: ordering {:?} is not a reflection ordering", ord.sequence()));
        }
        let mut total = 0;
        for h in 1..=n * (n - 1) / 2 {
            for f in collect(n, h)? {
                total += 1;
                let counts: Vec<usize> = ords.iter().map(|o| o.count_increasing(&f)).collect::<Result<_, _>>()?;
                rec.expect(counts.iter().all_equal(), || format!("[{},{}] h={h}: counts {counts:?}", f.u(), f.v()));
            }
        }
        rec.note(format!("S{n}: {total} flipclasses, {} orderings", ords.len()));
    }
    Ok(None)
}

fn interval(u: Permutation, v: Permutation) -> Vec<Permutation> {
    Permutation::all(u.degree())
        .into_iter()
        .filter(|x| u.bruhat_leq(x).expect("same degree") && x.bruhat_leq(&v).expect("same degree"))
        .collect()
}

/// Whether `ts` is the Hasse diagram of `[u, v]`, each `x` at time
/// `ℓ(x) - ℓ(u)`.
fn is_hasse_diagram(ts: &TimeSupportGraph, u: Permutation, v: Permutation) -> bool {
    let elems = interval(u, v);
    let mut vertices: Vec<(usize, Permutation)> = elems.iter().map(|x| (x.length() - u.length(), *x)).collect();
    vertices.sort();
    let ts_vertices: Vec<(usize, Permutation)> = ts.vertices().iter().map(|w| (w.time, w.perm)).collect();
    if vertices != ts_vertices {
        return false;
    }
    let covers: BTreeSet<(Permutation, Permutation)> = elems
        .iter()
        .flat_map(|x| x.edges_up().into_iter().map(move |e| (*x, e.target)))
        .filter(|(x, y)| y.length() == x.length() + 1 && elems.contains(y))
        .collect();
    let ts_edges: BTreeSet<(Permutation, Permutation)> =
        ts.edges().iter().map(|e| (ts.vertices()[e.source].perm, ts.vertices()[e.target].perm)).collect();
    covers == ts_edges && ts_edges.len() == ts.edges().len()
}

fn check_bounds_and_intervals(_: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    for n in 2..=5 {
        let mut total = 0;
        for h in 1..=n * (n - 1) / 2 {
            for f in collect(n, h)? {
                total += 1;
                let c = lex_c(&f)?;
                rec.expect(c >= 1 && (c << (h - 1)) <= f.len() as u64, || {
                    format!("[{},{}] h={h}: c = {c}, |F| = {}", f.u(), f.v(), f.len())
                });
            }
        }
        let mut full_length = 0;
        for (u, v) in comparable_pairs(n) {
            let gap = v.length() - u.length();
            if gap == 0 {
                continue;
            }
            full_length += 1;
            let classes = flipclasses(u, v, gap)?;
            let [f] = classes.as_slice() else {
                rec.failures.push(format!("[{u},{v}]: {} flipclasses of full length", classes.len()));
                continue;
            };
            let ts = TimeSupportGraph::of(f);
            let c = lex_c(f)?;
            rec.expect(c == 1, || format!("[{u},{v}] full length: c = {c}"));
            rec.expect(ts.t_vector().alternating_sum() == 0, || {
                format!("[{u},{v}] full length: alternating sum of {} is nonzero", ts.t_vector())
            });
            rec.expect(is_hasse_diagram(&ts, u, v), || format!("[{u},{v}]: TS_F is not the Hasse diagram"));
        }
        rec.note(format!("S{n}: {total} flipclasses, {full_length} full-length intervals"));
    }
    Ok(None)
}

fn check_even_gap(_: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    let recipe = CbarRecipe::new(None);
    let mut oracle = RTildeOracle::new();
    let pairs: Vec<(Permutation, Permutation)> = comparable_pairs(5)
        .into_iter()
        .filter(|(u, v)| {
            let gap = v.length() - u.length();
            gap % 2 == 0 && gap >= 6
        })
        .collect();
    rec.expect(pairs.len() == EVEN_GAP_INTERVALS, || {
        format!("{} intervals with even gap >= 6, expected {EVEN_GAP_INTERVALS}", pairs.len())
    });
    for &(u, v) in &pairs {
        let c = recipe.coefficient(u, v, 4)?;
        let r = oracle.coefficient(u, v, 4)?;
        rec.expect(c == r, || format!("[{u},{v}] q^4: oracle {r}, flipclasses {c}"));
    }
    rec.note(format!("{} intervals; the q^4 coefficient agrees with the oracle on each", pairs.len()));
    Ok(None)
}

fn random_path(n: usize, h: usize, rng: &mut impl Rng) -> BruhatPath {
    loop {
        let start = random_perm(n, rng);
        let mut x = start;
        let mut labels = Vec::with_capacity(h);
        while labels.len() < h {
            let up = x.edges_up();
            let Some(e) = up.choose(rng) else { break };
            labels.push(e.label);
            x = e.target;
        }
        if labels.len() == h {
            return BruhatPath::from_labels(start, &labels).expect("labels of an upward walk");
        }
    }
}

fn check_properties(ctx: &mut Context<'_>, rec: &mut Recorder) -> Result<Option<String>> {
    let rng = &mut ctx.rng;
    for k in 0..RANDOM_FLIP_PATHS {
        let n = if k % 2 == 0 { 6 } else { 7 };
        let h = rng.gen_range(2..=6);
        let path = random_path(n, h, rng);
        let i = rng.gen_range(1..h);
        let g = flip_i(&path, i)?;
        rec.expect(g != path, || format!("{path}: f_{i} is trivial"));
        rec.expect(flip_i(&g, i)? == path, || format!("{path}: f_{i} is not an involution"));
        rec.expect(g.start() == path.start() && g.end() == path.end(), || format!("{path}: f_{i} moves endpoints"));
    }
    rec.note(format!("{RANDOM_FLIP_PATHS} random paths of S6/S7"));

    let mut pairs = 0;
    for x in Permutation::all(5) {
        for e1 in x.edges_up() {
            for e2 in e1.target.edges_up() {
                pairs += 1;
                let closed = flip_labels(&x, e1.label, e2.label);
                let brute = flip_labels_brute(&x, e1.label, e2.label);
                rec.expect(brute == Some(closed), || {
                    format!("{x} {} {}: closed form {closed:?}, brute force {brute:?}", e1.label, e2.label)
                });
                let end = e2.target;
                let midpoints = x.edges_up().iter().filter(|e| e.target.edge_to(&end).ok().flatten().is_some()).count();
                rec.expect(midpoints == 2, || format!("[{x},{end}]: {midpoints} paths of length 2"));
            }
        }
    }
    rec.note(format!("{pairs} length-2 paths of S5"));

    let mut reducible = 0;
    for h in 1..=4 {
        for f in collect(5, h)? {
            if is_irreducible(&f) {
                continue;
            }
            reducible += 1;
            let factors = decompose(&f)?;
            rec.expect(factors.len() > 1 && factors.iter().all(is_irreducible), || {
                format!("[{},{}]: bad decomposition", f.u(), f.v())
            });
            let mut product = factors[0].clone();
            for g in &factors[1..] {
                product = shuffle_product(&product, g)?;
            }
            rec.expect(IotaPolynomial::of(&product) == IotaPolynomial::of(&f), || {
                format!("[{},{}]: ι of the shuffle product differs", f.u(), f.v())
            });
            let (c, cp) = (lex_c(&f)?, lex_c(&product)?);
            rec.expect(c == cp, || format!("[{},{}]: c = {c}, product c = {cp}", f.u(), f.v()));
        }
    }
    rec.note(format!("{reducible} reducible flipclasses of S5 with h <= 4"));
    Ok(None)
}
