//! Mechanical verification of the n-globular identities and the strict
//! n-category axioms on a finite sample of cells.
//!
//! Every check compares normal forms, so the same engine serves strict and
//! almost strict instances. Failures are collected into the report and never
//! abort the run.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{identity_pow, source_pow, target_pow, Category};
use crate::error::CellError;
use crate::report::{CheckEntry, CheckReport, Failure};

pub type AxiomEntry = CheckEntry<Axiom>;
pub type AxiomReport = CheckReport<Axiom>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    GlobularSs,
    GlobularTs,
    CompSt,
    IdSt,
    Assoc,
    Unit,
    BinaryInterchange,
    NullaryInterchange,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::GlobularSs => "globular-ss",
            Axiom::GlobularTs => "globular-ts",
            Axiom::CompSt => "comp-st",
            Axiom::IdSt => "id-st",
            Axiom::Assoc => "assoc",
            Axiom::Unit => "unit",
            Axiom::BinaryInterchange => "binary-interchange",
            Axiom::NullaryInterchange => "nullary-interchange",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Knobs for [`check_axioms`].
#[derive(Clone, Copy, Debug)]
pub struct AxiomOptions {
    pub seed: u64,
    /// Upper limit on checked tuples per entry; larger candidate sets are
    /// subsampled with the seeded generator.
    pub max_tuples: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions {
            seed: 0,
            max_tuples: 200_000,
        }
    }
}

impl AxiomOptions {
    pub fn with_seed(seed: u64) -> Self {
        AxiomOptions {
            seed,
            ..Default::default()
        }
    }
}

fn fail_with<C: Category + ?Sized>(
    cat: &C,
    cells: &[&C::Cell],
    detail: impl Into<String>,
) -> Failure {
    Failure {
        witnesses: cells.iter().map(|c| cat.render(c)).collect(),
        detail: detail.into(),
    }
}

fn expect_eq<C: Category + ?Sized>(
    cat: &C,
    witnesses: &[&C::Cell],
    what: &str,
    lhs: Result<C::Cell, CellError>,
    rhs: Result<C::Cell, CellError>,
) -> Result<(), Failure> {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if cat.equivalent(&l, &r) => Ok(()),
        (Ok(l), Ok(r)) => Err(fail_with(
            cat,
            witnesses,
            format!("{what}: {} != {}", cat.render(&l), cat.render(&r)),
        )),
        (Err(e), _) | (_, Err(e)) => Err(fail_with(cat, witnesses, format!("{what}: {e}"))),
    }
}

/// Checks `s∘s = s∘t` and `t∘s = t∘t` on every cell of the requested levels.
pub fn check_globularity<C: Category + ?Sized>(
    cat: &C,
    levels: RangeInclusive<usize>,
) -> AxiomReport {
    let mut report = AxiomReport::default();
    for l in levels {
        if l < 2 || l > cat.max_level() {
            continue;
        }
        let cells = cat.cells(l);
        report.merge(check_globularity_on(cat, &cells));
    }
    report
}

/// Globularity on an explicit collection; cells below level 2 are skipped.
pub fn check_globularity_on<C: Category + ?Sized>(cat: &C, cells: &[C::Cell]) -> AxiomReport {
    let mut by_level: BTreeMap<usize, (AxiomEntry, AxiomEntry)> = BTreeMap::new();
    for x in cells {
        let l = cat.level(x);
        if l < 2 {
            continue;
        }
        let (ss, ts) = by_level.entry(l).or_insert_with(|| {
            (
                AxiomEntry::new(Axiom::GlobularSs, l, None, None),
                AxiomEntry::new(Axiom::GlobularTs, l, None, None),
            )
        });
        let s = cat.source(x);
        let t = cat.target(x);
        let sx = s.clone().and_then(|s| cat.source(&s));
        let tx = t.clone().and_then(|t| cat.source(&t));
        ss.record(expect_eq(cat, &[x], "s(s(x)) = s(t(x))", sx, tx));
        let st = s.and_then(|s| cat.target(&s));
        let tt = t.and_then(|t| cat.target(&t));
        ts.record(expect_eq(cat, &[x], "t(s(x)) = t(t(x))", st, tt));
    }
    AxiomReport {
        entries: by_level.into_values().flat_map(|(a, b)| [a, b]).collect(),
    }
}

/// Composable pairs `(c, a)` along `p` among `cells` (all of one level), as
/// index pairs, in `(c, a)` lexicographic order.
struct Pairs {
    list: Vec<(usize, usize)>,
    /// `a` -> the `c`s composable after it
    after: Vec<Vec<usize>>,
    /// `c` -> the `a`s composable before it
    before: Vec<Vec<usize>>,
}

fn composable_pairs<C: Category + ?Sized>(cat: &C, cells: &[C::Cell], p: usize) -> Pairs {
    let l = cells.first().map(|c| cat.level(c)).unwrap_or(0);
    let k = l - p;
    let mut by_target: HashMap<C::Cell, Vec<usize>> = HashMap::new();
    for (idx, a) in cells.iter().enumerate() {
        if let Ok(t) = target_pow(cat, a, k) {
            by_target.entry(cat.normalize(&t)).or_default().push(idx);
        }
    }
    let mut list = Vec::new();
    let mut after = vec![Vec::new(); cells.len()];
    let mut before = vec![Vec::new(); cells.len()];
    for (ci, c) in cells.iter().enumerate() {
        let Ok(s) = source_pow(cat, c, k) else {
            continue;
        };
        if let Some(as_) = by_target.get(&cat.normalize(&s)) {
            for &ai in as_ {
                list.push((ci, ai));
                after[ai].push(ci);
                before[ci].push(ai);
            }
        }
    }
    Pairs {
        list,
        after,
        before,
    }
}

fn subsample<T>(items: Vec<T>, limit: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if items.len() <= limit {
        return items;
    }
    let mut keep: Vec<usize> = index::sample(rng, items.len(), limit).into_vec();
    keep.sort_unstable();
    let mut keep = keep.into_iter().peekable();
    items
        .into_iter()
        .enumerate()
        .filter_map(|(i, t)| {
            if keep.peek() == Some(&i) {
                keep.next();
                Some(t)
            } else {
                None
            }
        })
        .collect()
}

/// Checks the strict n-category axioms on `sample`, modulo `cat.normalize`:
/// sources/targets of composites and identities, associativity, units,
/// binary and nullary interchange. Tuples are drawn from the sample only;
/// results are deterministic given the sample order and `opts.seed`.
pub fn check_axioms<C: Category + ?Sized>(
    cat: &C,
    sample: &[C::Cell],
    opts: AxiomOptions,
) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut by_level: BTreeMap<usize, Vec<C::Cell>> = BTreeMap::new();
    let mut seen = HashSet::new();
    for c in sample {
        let nc = cat.normalize(c);
        if seen.insert(nc.clone()) {
            by_level.entry(cat.level(&nc)).or_default().push(nc);
        }
    }
    let n = cat.max_level();
    let mut report = AxiomReport::default();

    for (&l, cells) in &by_level {
        if l < n {
            report
                .entries
                .push(check_identity_boundaries(cat, cells, l));
        }
        if l == 0 {
            continue;
        }
        let pairs: Vec<Pairs> = (0..l).map(|p| composable_pairs(cat, cells, p)).collect();
        for (p, ps) in pairs.iter().enumerate() {
            report.entries.push(check_composite_boundaries(
                cat, cells, l, p, ps, opts, &mut rng,
            ));
        }
        for (p, ps) in pairs.iter().enumerate() {
            report
                .entries
                .push(check_associativity(cat, cells, l, p, ps, opts, &mut rng));
        }
        for p in 0..l {
            report.entries.push(check_units(cat, cells, l, p));
        }
        for p in 0..l {
            for q in 0..p {
                report.entries.push(check_binary_interchange(
                    cat, cells, l, p, q, &pairs[p], &pairs[q], opts, &mut rng,
                ));
            }
        }
        if l < n {
            for (p, ps) in pairs.iter().enumerate() {
                report.entries.push(check_nullary_interchange(
                    cat, cells, l, p, ps, opts, &mut rng,
                ));
            }
        }
    }
    report
}

fn check_identity_boundaries<C: Category + ?Sized>(
    cat: &C,
    cells: &[C::Cell],
    l: usize,
) -> AxiomEntry {
    let mut entry = AxiomEntry::new(Axiom::IdSt, l, None, None);
    for a in cells {
        let id = cat.identity(a);
        let s = id.clone().and_then(|i| cat.source(&i));
        let t = id.and_then(|i| cat.target(&i));
        let outcome = expect_eq(cat, &[a], "s(1_A) = A", s, Ok(a.clone()))
            .and_then(|_| expect_eq(cat, &[a], "t(1_A) = A", t, Ok(a.clone())));
        entry.record(outcome);
    }
    entry
}

fn check_composite_boundaries<C: Category + ?Sized>(
    cat: &C,
    cells: &[C::Cell],
    l: usize,
    p: usize,
    pairs: &Pairs,
    opts: AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> AxiomEntry {
    let mut entry = AxiomEntry::new(Axiom::CompSt, l, Some(p), None);
    for (ci, ai) in subsample(pairs.list.clone(), opts.max_tuples, rng) {
        let (c, a) = (&cells[ci], &cells[ai]);
        let outcome = match cat.compose(p, c, a) {
            Err(e) => Err(fail_with(cat, &[c, a], format!("compose: {e}"))),
            Ok(ca) => {
                let s = cat.source(&ca);
                let t = cat.target(&ca);
                if p + 1 == l {
                    expect_eq(cat, &[c, a], "s(C∘A) = s(A)", s, cat.source(a))
                        .and_then(|_| expect_eq(cat, &[c, a], "t(C∘A) = t(C)", t, cat.target(c)))
                } else {
                    let s_rhs = cat
                        .source(c)
                        .and_then(|sc| cat.source(a).and_then(|sa| cat.compose(p, &sc, &sa)));
                    let t_rhs = cat
                        .target(c)
                        .and_then(|tc| cat.target(a).and_then(|ta| cat.compose(p, &tc, &ta)));
                    expect_eq(cat, &[c, a], "s(C∘A) = s(C)∘s(A)", s, s_rhs)
                        .and_then(|_| expect_eq(cat, &[c, a], "t(C∘A) = t(C)∘t(A)", t, t_rhs))
                }
            }
        };
        entry.record(outcome);
    }
    entry
}

fn check_associativity<C: Category + ?Sized>(
    cat: &C,
    cells: &[C::Cell],
    l: usize,
    p: usize,
    pairs: &Pairs,
    opts: AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> AxiomEntry {
    let mut entry = AxiomEntry::new(Axiom::Assoc, l, Some(p), None);
    let mut triples = Vec::new();
    for &(ci, ai) in &pairs.list {
        for &ei in &pairs.after[ci] {
            triples.push((ei, ci, ai));
        }
    }
    for (ei, ci, ai) in subsample(triples, opts.max_tuples, rng) {
        let (e, c, a) = (&cells[ei], &cells[ci], &cells[ai]);
        let lhs = cat.compose(p, e, c).and_then(|ec| cat.compose(p, &ec, a));
        let rhs = cat.compose(p, c, a).and_then(|ca| cat.compose(p, e, &ca));
        entry.record(expect_eq(cat, &[e, c, a], "(E∘C)∘A = E∘(C∘A)", lhs, rhs));
    }
    entry
}

fn check_units<C: Category + ?Sized>(cat: &C, cells: &[C::Cell], l: usize, p: usize) -> AxiomEntry {
    let mut entry = AxiomEntry::new(Axiom::Unit, l, Some(p), None);
    let k = l - p;
    for a in cells {
        let left = target_pow(cat, a, k)
            .and_then(|t| identity_pow(cat, &t, k))
            .and_then(|u| cat.compose(p, &u, a));
        let right = source_pow(cat, a, k)
            .and_then(|s| identity_pow(cat, &s, k))
            .and_then(|u| cat.compose(p, a, &u));
        let outcome = expect_eq(cat, &[a], "1(t(A))∘A = A", left, Ok(a.clone()))
            .and_then(|_| expect_eq(cat, &[a], "A∘1(s(A)) = A", right, Ok(a.clone())));
        entry.record(outcome);
    }
    entry
}

#[allow(clippy::too_many_arguments)]
fn check_binary_interchange<C: Category + ?Sized>(
    cat: &C,
    cells: &[C::Cell],
    l: usize,
    p: usize,
    q: usize,
    pairs_p: &Pairs,
    pairs_q: &Pairs,
    opts: AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> AxiomEntry {
    let mut entry = AxiomEntry::new(Axiom::BinaryInterchange, l, Some(p), Some(q));
    let mut quads = Vec::new();
    // (H, E), (C, A) ∈ ×_p and (H, C), (E, A) ∈ ×_q
    for &(hi, ei) in &pairs_p.list {
        for &ci in &pairs_q.before[hi] {
            for &ai in &pairs_p.before[ci] {
                if pairs_q.before[ei].contains(&ai) {
                    quads.push((hi, ei, ci, ai));
                }
            }
        }
    }
    for (hi, ei, ci, ai) in subsample(quads, opts.max_tuples, rng) {
        let (h, e, c, a) = (&cells[hi], &cells[ei], &cells[ci], &cells[ai]);
        let lhs = cat
            .compose(p, h, e)
            .and_then(|he| cat.compose(p, c, a).and_then(|ca| cat.compose(q, &he, &ca)));
        let rhs = cat
            .compose(q, h, c)
            .and_then(|hc| cat.compose(q, e, a).and_then(|ea| cat.compose(p, &hc, &ea)));
        entry.record(expect_eq(
            cat,
            &[h, e, c, a],
            "(H∘pE)∘q(C∘pA) = (H∘qC)∘p(E∘qA)",
            lhs,
            rhs,
        ));
    }
    entry
}

fn check_nullary_interchange<C: Category + ?Sized>(
    cat: &C,
    cells: &[C::Cell],
    l: usize,
    p: usize,
    pairs: &Pairs,
    opts: AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> AxiomEntry {
    let mut entry = AxiomEntry::new(Axiom::NullaryInterchange, l, Some(p), None);
    for (ci, ai) in subsample(pairs.list.clone(), opts.max_tuples, rng) {
        let (c, a) = (&cells[ci], &cells[ai]);
        let lhs = cat
            .identity(c)
            .and_then(|ic| cat.identity(a).and_then(|ia| cat.compose(p, &ic, &ia)));
        let rhs = cat.compose(p, c, a).and_then(|ca| cat.identity(&ca));
        entry.record(expect_eq(cat, &[c, a], "1_C∘1_A = 1_(C∘A)", lhs, rhs));
    }
    entry
}
