//! Level-by-level search over T⃗_k-free (or 𝓕_k-free) k-PDGs and the exact
//! computation of θ_max(n, k) = min (C(n,k) - e_u) / e_d.
//!
//! Level `ℓ` holds one representative per isomorphism class of free k-PDGs
//! on `ℓ` vertices. Growing a level tries every assignment of the
//! `k + 2` slot states (absent, undirected, one head per vertex) to the
//! k-sets through the new vertex, in mixed-radix order, abandoning a branch
//! as soon as the newly placed edge completes a forbidden copy.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Instant;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::bits::{binomial, ones, subsets};
use crate::canonical::canonical_form;
use crate::error::{Error, Result};
use crate::forbidden::{generate_fk, ForbiddenFamily};
use crate::pdg::{contains_subgraph, Edge, Pdg};

/// Largest vertex count the enumerator accepts.
pub const MAX_ENUM_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyChoice {
    Tk,
    Fk,
}

impl FamilyChoice {
    pub fn name(self) -> &'static str {
        match self {
            FamilyChoice::Tk => "tk",
            FamilyChoice::Fk => "fk",
        }
    }
}

/// How the last level is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalMode {
    /// Canonicalize and deduplicate the last level like the others.
    Dedup,
    /// Visit every labelled extension without isomorphism checks; the
    /// reported count is the number of extensions.
    NoDedup,
    /// Like `NoDedup` but skip subtrees whose best possible ratio exceeds
    /// the incumbent. No count is reported.
    Bound,
}

#[derive(Debug, Clone, Default)]
pub struct Budget {
    /// Wall-clock limit in seconds for the whole run.
    pub seconds: Option<f64>,
    /// Limit on the number of graphs kept in any level.
    pub max_level_size: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub family: FamilyChoice,
    pub final_mode: FinalMode,
    pub batches: usize,
    /// Restrict the last level to one batch of base graphs.
    pub batch_index: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub budget: Budget,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            family: FamilyChoice::Tk,
            final_mode: FinalMode::Dedup,
            batches: 1,
            batch_index: None,
            checkpoint: None,
            budget: Budget::default(),
        }
    }
}

/// Canonical representatives of the free graphs on `level` vertices,
/// sorted by canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub level: usize,
    pub k: usize,
    pub graphs: Vec<Pdg>,
}

impl LevelSet {
    /// The single empty graph on `k - 1` vertices.
    pub fn initial(k: usize) -> Result<LevelSet> {
        if k < 2 {
            return Err(Error::Unsupported("enumeration needs k >= 2".into()));
        }
        Ok(LevelSet { level: k - 1, k, graphs: vec![Pdg::new(k - 1, k)?] })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Minimum ratio over the level, with the first graph attaining it.
    pub fn theta(&self) -> Option<(Rational64, Pdg)> {
        let total = binomial(self.level, self.k) as i64;
        let mut best: Option<(Rational64, &Pdg)> = None;
        for g in &self.graphs {
            if let Some(r) = ratio(total, g.e_u() as i64, g.e_d() as i64) {
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    best = Some((r, g));
                }
            }
        }
        best.map(|(r, g)| (r, g.clone()))
    }
}

fn ratio(total: i64, e_u: i64, e_d: i64) -> Option<Rational64> {
    (e_d > 0).then(|| Rational64::new(total - e_u, e_d))
}

/// `(ratio, index of the base graph, extension in canonical labels)`.
pub type ThetaCandidate = (Rational64, usize, Pdg);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCount {
    pub level: usize,
    /// `None` when the bound-pruned final level was not counted.
    pub count: Option<u64>,
    pub deduplicated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaResult {
    pub n: usize,
    pub k: usize,
    pub theta: Rational64,
    pub witness: Pdg,
    pub level_counts: Vec<LevelCount>,
}

/// Partial result of one batch of the final level. Merging is associative
/// and commutative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchResult {
    pub best: Option<ThetaCandidate>,
    pub count: Option<u64>,
    /// Canonical forms, sorted and deduplicated, in `Dedup` mode.
    pub graphs: Option<Vec<Pdg>>,
}

impl BatchResult {
    pub fn merge(self, other: BatchResult) -> BatchResult {
        let best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if (a.0, a.1, &a.2) <= (b.0, b.1, &b.2) { a } else { b }),
            (a, b) => a.or(b),
        };
        let count = match (self.count, other.count) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let graphs = match (self.graphs, other.graphs) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                a.sort_unstable();
                a.dedup();
                Some(a)
            }
            _ => None,
        };
        // overlapping batches share classes, so recount after the union
        let count = graphs.as_ref().map_or(count, |g| Some(g.len() as u64));
        BatchResult { best, count, graphs }
    }
}

/// Decides whether the slot just filled completes a forbidden copy.
pub trait Checker: Sync {
    /// `st` is indexed by vertex mask: 0 absent, 1 undirected, `2 + h`
    /// directed at `h`. Slot `x` is already set.
    fn hit(&self, st: &[u8], n: usize, x: u32) -> bool;
}

/// Incremental T⃗_k test covering the three roles the new edge can play.
pub struct TkChecker;

impl Checker for TkChecker {
    #[inline]
    fn hit(&self, st: &[u8], n: usize, x: u32) -> bool {
        let full = (1u32 << n) - 1;
        let outside = full & !x;
        let s = st[x as usize];
        // x is the directed edge, head r
        if s >= 2 {
            let r = (s - 2) as u32;
            let tails = x & !(1 << r);
            for q in ones(outside) {
                if st[(tails | 1 << q) as usize] == 0 {
                    continue;
                }
                for p in ones(tails) {
                    if st[((x & !(1 << p)) | 1 << q) as usize] != 0 {
                        return true;
                    }
                }
            }
        }
        for q in ones(x) {
            let xq = x & !(1 << q);
            // x = S - r + q with S = x - q + r directed at r
            for r in ones(outside) {
                if st[(xq | 1 << r) as usize] as usize != 2 + r {
                    continue;
                }
                for p in ones(xq) {
                    if st[((x & !(1 << p)) | 1 << r) as usize] != 0 {
                        return true;
                    }
                }
            }
            // x = S - p + q with S = x - q + p directed at r in x - q
            for p in ones(outside) {
                let sp = (xq | 1 << p) as usize;
                let sv = st[sp];
                if sv < 2 {
                    continue;
                }
                let r = (sv - 2) as u32;
                if r as usize == q || x & (1 << r) == 0 {
                    continue;
                }
                if st[((x | 1 << p) & !(1 << r)) as usize] != 0 {
                    return true;
                }
            }
        }
        false
    }
}

/// Full containment test against every member of a family.
pub struct FamilyChecker {
    pub family: ForbiddenFamily,
}

impl Checker for FamilyChecker {
    fn hit(&self, st: &[u8], n: usize, _x: u32) -> bool {
        let g = graph_from_states(st, n, self.family.k);
        self.family.graphs().any(|m| m.n() <= n && contains_subgraph(&g, m).unwrap())
    }
}

fn graph_from_states(st: &[u8], n: usize, k: usize) -> Pdg {
    let edges: Vec<Edge> = subsets(n, k)
        .filter_map(|m| match st[m as usize] {
            0 => None,
            1 => Some(Edge::from_mask(m, None)),
            s => Some(Edge::from_mask(m, Some((s - 2) as usize))),
        })
        .collect();
    Pdg::from_sorted_unchecked(n, k, edges)
}

fn state_of(e: &Edge) -> u8 {
    e.head().map_or(1, |h| 2 + h as u8)
}

/// Packed non-negative rational for the shared incumbent.
fn pack(r: Rational64) -> u64 {
    ((*r.numer() as u64) << 32) | (*r.denom() as u64)
}

fn unpack(x: u64) -> Option<Rational64> {
    let den = (x & 0xffff_ffff) as i64;
    (den != 0).then(|| Rational64::new((x >> 32) as i64, den))
}

const NO_INCUMBENT: u64 = 1 << 32;

fn offer(incumbent: &AtomicU64, r: Rational64) {
    let mut cur = incumbent.load(AtomicOrdering::Relaxed);
    loop {
        if unpack(cur).is_some_and(|c| c <= r) {
            return;
        }
        match incumbent.compare_exchange_weak(cur, pack(r), AtomicOrdering::Relaxed, AtomicOrdering::Relaxed) {
            Ok(_) => return,
            Err(now) => cur = now,
        }
    }
}

enum Sink {
    Collect(Vec<Pdg>),
    Theta { count: u64, bound: bool, incumbent: Option<(i64, i64)>, best: Option<(Rational64, Vec<u8>)> },
}

struct Extender<'a, C: Checker> {
    n: usize,
    k: usize,
    total: i64,
    base: &'a Pdg,
    slots: Vec<u32>,
    st: Vec<u8>,
    checker: &'a C,
    e_u: i64,
    e_d: i64,
    sink: Sink,
}

impl<'a, C: Checker> Extender<'a, C> {
    fn new(base: &'a Pdg, checker: &'a C, sink: Sink) -> Self {
        let n = base.n() + 1;
        let k = base.k();
        let new = 1u32 << (n - 1);
        let slots: Vec<u32> = subsets(n - 1, k - 1).map(|m| m | new).collect();
        let mut st = vec![0u8; 1 << n];
        for e in base.edges() {
            st[e.mask() as usize] = state_of(e);
        }
        Extender {
            n,
            k,
            total: binomial(n, k) as i64,
            base,
            slots,
            st,
            checker,
            e_u: base.e_u() as i64,
            e_d: base.e_d() as i64,
            sink,
        }
    }

    fn run(&mut self) {
        self.dfs(0);
    }

    fn dfs(&mut self, i: usize) {
        if i == self.slots.len() {
            self.leaf();
            return;
        }
        if let Sink::Theta { bound: true, incumbent: Some((num, den)), .. } = self.sink {
            if self.bound_exceeds(self.slots.len() - i, num, den) {
                return;
            }
        }
        let x = self.slots[i];
        self.dfs(i + 1);
        self.st[x as usize] = 1;
        if !self.checker.hit(&self.st, self.n, x) {
            self.e_u += 1;
            self.dfs(i + 1);
            self.e_u -= 1;
        }
        for h in ones(x) {
            self.st[x as usize] = 2 + h as u8;
            if !self.checker.hit(&self.st, self.n, x) {
                self.e_d += 1;
                self.dfs(i + 1);
                self.e_d -= 1;
            }
        }
        self.st[x as usize] = 0;
    }

    /// Whether every leaf below has ratio strictly above `num / den`.
    fn bound_exceeds(&self, m: usize, num: i64, den: i64) -> bool {
        let m = m as i64;
        let cu = self.total - self.e_u;
        // all remaining slots directed
        let lo1 = (cu, self.e_d + m);
        if lo1.1 > 0 && lo1.0 * den <= num * lo1.1 {
            return false;
        }
        // all remaining slots undirected
        if self.e_d > 0 && (cu - m) * den <= num * self.e_d {
            return false;
        }
        true
    }

    fn leaf(&mut self) {
        match &mut self.sink {
            Sink::Collect(out) => {
                let g = graph_from_states(&self.st, self.n, self.k);
                out.push(canonical_form(&g).into_graph());
            }
            Sink::Theta { count, incumbent, best, .. } => {
                *count += 1;
                if self.e_d == 0 {
                    return;
                }
                let r = Rational64::new(self.total - self.e_u, self.e_d);
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    let assignment = self.slots.iter().map(|&s| self.st[s as usize]).collect();
                    *best = Some((r, assignment));
                    let (num, den) = (*r.numer(), *r.denom());
                    if incumbent.is_none_or(|(a, b)| num * b < a * den) {
                        *incumbent = Some((num, den));
                    }
                }
            }
        }
    }

    fn graph_with(&self, assignment: &[u8]) -> Pdg {
        let mut st = vec![0u8; 1 << self.n];
        for e in self.base.edges() {
            st[e.mask() as usize] = state_of(e);
        }
        for (&s, &a) in self.slots.iter().zip(assignment) {
            st[s as usize] = a;
        }
        graph_from_states(&st, self.n, self.k)
    }
}

fn make_checker(k: usize, family: FamilyChoice) -> Result<Box<dyn CheckerDyn>> {
    Ok(match family {
        FamilyChoice::Tk => Box::new(TkChecker),
        FamilyChoice::Fk => Box::new(FamilyChecker { family: generate_fk(k)? }),
    })
}

/// Object-safe front for the two checkers so callers can pick at runtime
/// while the inner loop stays monomorphic.
pub trait CheckerDyn: Sync {
    fn grow(&self, base: &Pdg) -> Vec<Pdg>;
    fn final_theta(&self, base: &Pdg, bound: bool, shared: Option<&AtomicU64>) -> (u64, Option<(Rational64, Pdg)>);
}

impl<C: Checker> CheckerDyn for C {
    fn grow(&self, base: &Pdg) -> Vec<Pdg> {
        let mut ext = Extender::new(base, self, Sink::Collect(Vec::new()));
        ext.run();
        let Sink::Collect(mut out) = ext.sink else { unreachable!() };
        out.sort_unstable();
        out.dedup();
        out
    }

    fn final_theta(&self, base: &Pdg, bound: bool, shared: Option<&AtomicU64>) -> (u64, Option<(Rational64, Pdg)>) {
        let incumbent = shared
            .and_then(|inc| unpack(inc.load(AtomicOrdering::Relaxed)))
            .map(|r| (*r.numer(), *r.denom()));
        let sink = Sink::Theta { count: 0, bound, incumbent, best: None };
        let mut ext = Extender::new(base, self, sink);
        ext.run();
        let Sink::Theta { count, best, .. } = &ext.sink else { unreachable!() };
        let best = best.as_ref().map(|(r, a)| (*r, ext.graph_with(a)));
        if let (Some(inc), Some((r, _))) = (shared, &best) {
            offer(inc, *r);
        }
        (*count, best)
    }
}

/// Grows one level with deduplication.
pub fn grow_level(prev: &LevelSet, family: &dyn CheckerDyn) -> LevelSet {
    let parts: Vec<Vec<Pdg>> = prev.graphs.par_iter().map(|b| family.grow(b)).collect();
    let mut graphs: Vec<Pdg> = parts.into_iter().flatten().collect();
    graphs.par_sort_unstable();
    graphs.dedup();
    LevelSet { level: prev.level + 1, k: prev.k, graphs }
}

/// Runs the final level over bases `range` of `prev` (indices are global).
pub fn final_batch(
    prev: &LevelSet,
    range: std::ops::Range<usize>,
    family: &dyn CheckerDyn,
    mode: FinalMode,
    seed: Option<Rational64>,
) -> BatchResult {
    let total = binomial(prev.level + 1, prev.k) as i64;
    match mode {
        FinalMode::Dedup => {
            let parts: Vec<Vec<Pdg>> = prev.graphs[range].par_iter().map(|b| family.grow(b)).collect();
            let mut graphs: Vec<Pdg> = parts.into_iter().flatten().collect();
            graphs.par_sort_unstable();
            graphs.dedup();
            // the best graph's base index is not meaningful after dedup; use
            // its rank in the sorted set so merges stay order-independent
            let best = graphs
                .iter()
                .enumerate()
                .filter_map(|(i, g)| ratio(total, g.e_u() as i64, g.e_d() as i64).map(|r| (r, i, g)))
                .min_by(|a, b| a.0.cmp(&b.0).then(a.2.cmp(b.2)))
                .map(|(r, _, g)| (r, 0, g.clone()));
            BatchResult { best, count: Some(graphs.len() as u64), graphs: Some(graphs) }
        }
        FinalMode::NoDedup | FinalMode::Bound => {
            let bound = mode == FinalMode::Bound;
            let incumbent = AtomicU64::new(seed.map_or(NO_INCUMBENT, pack));
            let start = range.start;
            let parts: Vec<(u64, Option<(Rational64, Pdg)>)> = prev.graphs[range]
                .par_iter()
                .map(|b| family.final_theta(b, bound, bound.then_some(&incumbent)))
                .collect();
            let mut count = 0u64;
            let mut best: Option<ThetaCandidate> = None;
            for (i, (c, b)) in parts.into_iter().enumerate() {
                count += c;
                if let Some((r, g)) = b {
                    if best.as_ref().is_none_or(|(br, _, _)| r < *br) {
                        best = Some((r, start + i, canonical_form(&g).into_graph()));
                    }
                }
            }
            BatchResult { best, count: (!bound).then_some(count), graphs: None }
        }
    }
}

/// Contiguous partition of `0..len` into `batches` chunks.
pub fn batch_range(len: usize, batches: usize, index: usize) -> std::ops::Range<usize> {
    let batches = batches.max(1);
    let lo = len * index / batches;
    let hi = len * (index + 1) / batches;
    lo..hi
}

fn checkpoint_path(dir: &Path, family: FamilyChoice, k: usize, level: usize) -> PathBuf {
    dir.join(format!("{}-k{k}-level{level}.txt", family.name()))
}

/// Writes a level as one canonical graph per line after a header.
pub fn save_level(dir: &Path, family: FamilyChoice, set: &LevelSet) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = checkpoint_path(dir, family, set.k, set.level);
    let tmp = path.with_extension("tmp");
    {
        let mut w = std::io::BufWriter::new(fs::File::create(&tmp)?);
        let theta = set.theta().map_or("none".to_string(), |(t, _)| t.to_string());
        writeln!(w, "# level {} k {} family {} count {} theta {}", set.level, set.k, family.name(), set.len(), theta)?;
        for g in &set.graphs {
            writeln!(w, "{g}")?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads a saved level if present and consistent.
pub fn load_level(dir: &Path, family: FamilyChoice, k: usize, level: usize) -> Result<Option<LevelSet>> {
    let path = checkpoint_path(dir, family, k, level);
    if !path.exists() {
        return Ok(None);
    }
    let mut lines = BufReader::new(fs::File::open(&path)?).lines();
    let header = lines.next().ok_or_else(|| Error::Parse(format!("{} is empty", path.display())))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let count: usize = match fields.as_slice() {
        ["#", "level", l, "k", kk, "family", f, "count", c, ..]
            if *l == level.to_string() && *kk == k.to_string() && *f == family.name() =>
        {
            c.parse().map_err(|_| Error::Parse(format!("bad count in {}", path.display())))?
        }
        _ => return Err(Error::Parse(format!("unexpected header in {}", path.display()))),
    };
    let mut graphs = Vec::with_capacity(count);
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            graphs.push(line.parse::<Pdg>()?);
        }
    }
    if graphs.len() != count {
        return Err(Error::Parse(format!("{} holds {} graphs, header says {count}", path.display(), graphs.len())));
    }
    Ok(Some(LevelSet { level, k, graphs }))
}

/// Deduplicated levels `k-1 ..= upto`, reusing and writing checkpoints.
pub fn build_levels(k: usize, upto: usize, config: &EnumConfig) -> Result<Vec<LevelSet>> {
    if upto > MAX_ENUM_N {
        return Err(Error::Unsupported(format!("levels above {MAX_ENUM_N} vertices")));
    }
    let start = Instant::now();
    let checker = make_checker(k, config.family)?;
    let mut levels = vec![LevelSet::initial(k)?];
    while levels.last().unwrap().level < upto {
        let prev = levels.last().unwrap();
        let next_level = prev.level + 1;
        let cached = match &config.checkpoint {
            Some(dir) => load_level(dir, config.family, k, next_level)?,
            None => None,
        };
        let next = match cached {
            Some(set) => set,
            None => {
                if let Some(limit) = config.budget.seconds {
                    if start.elapsed().as_secs_f64() > limit {
                        return Err(budget_error(config, format!("time limit reached before level {next_level}")));
                    }
                }
                let set = grow_level(prev, checker.as_ref());
                if let Some(dir) = &config.checkpoint {
                    save_level(dir, config.family, &set)?;
                }
                set
            }
        };
        if let Some(limit) = config.budget.max_level_size {
            if next.len() > limit {
                return Err(budget_error(config, format!("level {next_level} holds {} graphs", next.len())));
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

fn budget_error(config: &EnumConfig, what: String) -> Error {
    match &config.checkpoint {
        Some(dir) => Error::BudgetExceeded(format!("{what}; checkpoint at {}", dir.display())),
        None => Error::BudgetExceeded(what),
    }
}

/// Runs the final level for one batch (or all batches in sequence when
/// `config.batch_index` is `None`) and returns the merged partial result
/// plus the deduplicated levels below it.
pub fn run_final(n: usize, k: usize, config: &EnumConfig) -> Result<(Vec<LevelSet>, BatchResult)> {
    check_params(n, k)?;
    let levels = build_levels(k, n - 1, config)?;
    let prev = levels.last().unwrap();
    let checker = make_checker(k, config.family)?;
    let seed = if config.final_mode == FinalMode::Bound { seed_bound(prev, checker.as_ref()) } else { None };
    let batches = config.batches.max(1);
    let indices: Vec<usize> = match config.batch_index {
        Some(i) if i >= batches => {
            return Err(Error::Precondition(format!("batch index {i} out of range for {batches} batches")))
        }
        Some(i) => vec![i],
        None => (0..batches).collect(),
    };
    let mut acc: Option<BatchResult> = None;
    for i in indices {
        let part = final_batch(prev, batch_range(prev.len(), batches, i), checker.as_ref(), config.final_mode, seed);
        acc = Some(match acc {
            None => part,
            Some(a) => a.merge(part),
        });
    }
    let result = acc.unwrap();
    if config.final_mode == FinalMode::Dedup {
        if let Some(dir) = &config.checkpoint {
            if config.batch_index.is_none() {
                let set = LevelSet { level: n, k, graphs: result.graphs.clone().unwrap() };
                save_level(dir, config.family, &set)?;
            }
        }
    }
    Ok((levels, result))
}

/// An achieved ratio to start the bound with: the best extension of the
/// previous level's minimizer. Pruning only drops subtrees strictly worse
/// than the incumbent, so leaves attaining the optimum are always visited
/// and the reported witness does not depend on the seed.
fn seed_bound(prev: &LevelSet, checker: &dyn CheckerDyn) -> Option<Rational64> {
    let (_, w) = prev.theta()?;
    checker.final_theta(&w, true, None).1.map(|(r, _)| r)
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if k < 2 || n < k {
        return Err(Error::Unsupported(format!("need 2 <= k <= n, got n={n} k={k}")));
    }
    if n > MAX_ENUM_N {
        return Err(Error::Unsupported(format!("n={n} above {MAX_ENUM_N}")));
    }
    Ok(())
}

/// Assembles the final record from levels and a merged batch result.
pub fn finish(n: usize, k: usize, levels: &[LevelSet], result: &BatchResult, mode: FinalMode) -> Result<ThetaResult> {
    finish_from_counts(n, k, lower_counts(levels), result, mode)
}

/// Counts of the deduplicated levels below the final one.
pub fn lower_counts(levels: &[LevelSet]) -> Vec<LevelCount> {
    levels.iter().map(|l| LevelCount { level: l.level, count: Some(l.len() as u64), deduplicated: true }).collect()
}

/// Like [`finish`] when only the lower level counts are at hand, as when
/// merging batch records.
pub fn finish_from_counts(
    n: usize,
    k: usize,
    mut level_counts: Vec<LevelCount>,
    result: &BatchResult,
    mode: FinalMode,
) -> Result<ThetaResult> {
    let (theta, _, witness) = result
        .best
        .clone()
        .ok_or_else(|| Error::Precondition(format!("no graph with a directed edge at n={n}")))?;
    level_counts.push(LevelCount { level: n, count: result.count, deduplicated: mode == FinalMode::Dedup });
    Ok(ThetaResult { n, k, theta, witness, level_counts })
}

pub fn theta_max_with(n: usize, k: usize, config: &EnumConfig) -> Result<ThetaResult> {
    if config.batch_index.is_some() {
        return Err(Error::Precondition("theta_max needs every batch".into()));
    }
    let (levels, result) = run_final(n, k, config)?;
    finish(n, k, &levels, &result, config.final_mode)
}

/// θ_max(n, k) for T⃗_k-free graphs, with a deduplicated final level.
pub fn theta_max(n: usize, k: usize) -> Result<ThetaResult> {
    theta_max_with(n, k, &EnumConfig::default())
}

/// θ(ℓ, k) for every `ℓ` in `k..=n`, from one chain of levels. Levels below
/// `n` come from deduplicated sets; level `n` uses `final_mode`.
pub fn theta_column(n: usize, k: usize, config: &EnumConfig) -> Result<Vec<(usize, Rational64, Pdg)>> {
    let (levels, result) = run_final(n, k, config)?;
    let mut out: Vec<(usize, Rational64, Pdg)> = levels
        .iter()
        .filter(|l| l.level >= k)
        .map(|l| {
            let (t, w) = l.theta().expect("a level at or above k has a directed edge");
            (l.level, t, w)
        })
        .collect();
    let (t, _, w) = result.best.ok_or_else(|| Error::Precondition("no directed edge at final level".into()))?;
    out.push((n, t, w));
    Ok(out)
}

/// ((k-1)θ + 1) / k.
pub fn lift_theta(theta: Rational64, k: usize) -> Result<Rational64> {
    if k < 3 {
        return Err(Error::Unsupported(format!("lift needs k >= 3, got {k}")));
    }
    let k = k as i64;
    Ok((theta * (k - 1) + 1) / k)
}

/// Reference θ_max with no isomorphism reduction: every state assignment
/// to every k-set, pruned only when the general embedding search finds a
/// copy of some member of `family`.
pub fn theta_max_naive(n: usize, k: usize, family: &[Pdg]) -> Result<Option<Rational64>> {
    check_params(n, k)?;
    if n > 6 {
        return Err(Error::Unsupported("naive enumeration is limited to n <= 6".into()));
    }
    let slots: Vec<u32> = subsets(n, k).collect();
    let total = slots.len() as i64;
    let mut g = Pdg::new(n, k)?;
    let mut best: Option<Rational64> = None;
    fn rec(i: usize, slots: &[u32], g: &mut Pdg, fam: &[Pdg], total: i64, best: &mut Option<Rational64>) {
        if i == slots.len() {
            if let Some(r) = ratio(total, g.e_u() as i64, g.e_d() as i64) {
                if best.is_none_or(|b| r < b) {
                    *best = Some(r);
                }
            }
            return;
        }
        rec(i + 1, slots, g, fam, total, best);
        let x = slots[i];
        let states = std::iter::once(None).chain(ones(x).map(Some));
        for head in states {
            g.add_edge(Edge::from_mask(x, head)).unwrap();
            if !fam.iter().any(|f| f.n() <= g.n() && contains_subgraph(g, f).unwrap()) {
                rec(i + 1, slots, g, fam, total, best);
            }
            g.remove_edge_on(x);
        }
    }
    rec(0, &slots, &mut g, family, total, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::{contains_tk, make_tk};

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn first_level_for_k2_has_three_classes() {
        let l1 = LevelSet::initial(2).unwrap();
        let l2 = grow_level(&l1, &TkChecker);
        assert_eq!(l2.level, 2);
        assert_eq!(l2.len(), 3);
    }

    #[test]
    fn small_thetas() {
        assert_eq!(theta_max(3, 2).unwrap().theta, r(3, 2));
        assert_eq!(theta_max(2, 2).unwrap().theta, r(1, 1));
        assert_eq!(theta_max(4, 3).unwrap().theta, r(4, 3));
        for k in 2..=5 {
            assert_eq!(theta_max(k, k).unwrap().theta, r(1, 1));
        }
    }

    #[test]
    fn final_modes_agree() {
        let cells = (2..=5).flat_map(|n| (2..=n).map(move |k| (n, k))).chain([(6, 2), (6, 5), (6, 6)]);
        for (n, k) in cells {
            let mut thetas = Vec::new();
            for mode in [FinalMode::Dedup, FinalMode::NoDedup, FinalMode::Bound] {
                let cfg = EnumConfig { final_mode: mode, ..EnumConfig::default() };
                let res = theta_max_with(n, k, &cfg).unwrap();
                let w = &res.witness;
                assert_eq!(ratio(binomial(n, k) as i64, w.e_u() as i64, w.e_d() as i64), Some(res.theta));
                assert!(!contains_tk(w));
                thetas.push(res.theta);
            }
            assert!(thetas.windows(2).all(|p| p[0] == p[1]), "n={n} k={k}: {thetas:?}");
        }
    }

    #[test]
    fn incremental_check_matches_full_check() {
        // every level-4 graph for k = 3 is free; extending with single
        // edges, the incremental verdict must match the full one
        let levels = build_levels(3, 4, &EnumConfig::default()).unwrap();
        for g in &levels[2].graphs {
            let g5 = g.with_vertex_count(5).unwrap();
            let mut st = vec![0u8; 32];
            for e in g5.edges() {
                st[e.mask() as usize] = state_of(e);
            }
            for x in subsets(5, 3) {
                if st[x as usize] != 0 {
                    continue;
                }
                for s in std::iter::once(1u8).chain(ones(x).map(|h| 2 + h as u8)) {
                    st[x as usize] = s;
                    let full = contains_tk(&graph_from_states(&st, 5, 3));
                    assert_eq!(TkChecker.hit(&st, 5, x), full, "{g5} + slot {x:b} state {s}");
                }
                st[x as usize] = 0;
            }
        }
    }

    #[test]
    fn levels_are_free_and_distinct() {
        let t = make_tk(3).unwrap();
        for l in build_levels(3, 5, &EnumConfig::default()).unwrap() {
            for g in &l.graphs {
                assert!(!contains_subgraph(g, &t).unwrap() || g.n() < t.n());
                assert_eq!(canonical_form(g).graph(), g);
            }
        }
    }

    #[test]
    fn batches_merge_to_the_whole() {
        for mode in [FinalMode::Dedup, FinalMode::NoDedup, FinalMode::Bound] {
            let one = theta_max_with(5, 3, &EnumConfig { final_mode: mode, ..EnumConfig::default() }).unwrap();
            let five =
                theta_max_with(5, 3, &EnumConfig { final_mode: mode, batches: 5, ..EnumConfig::default() }).unwrap();
            assert_eq!(one, five);
        }
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_theta(r(2, 1), 3).unwrap(), r(5, 3));
        assert_eq!(lift_theta(r(7, 4), 5).unwrap(), r(8, 5));
        for k in 3..8 {
            assert_eq!(lift_theta(r(1, 1), k).unwrap(), r(1, 1));
        }
        assert!(lift_theta(r(1, 1), 2).is_err());
    }

    #[test]
    fn checkpoint_round_trip_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = EnumConfig { checkpoint: Some(dir.path().to_path_buf()), ..EnumConfig::default() };
        let first = build_levels(3, 5, &cfg).unwrap();
        let loaded = load_level(dir.path(), FamilyChoice::Tk, 3, 5).unwrap().unwrap();
        assert_eq!(&loaded, first.last().unwrap());
        let again = build_levels(3, 5, &cfg).unwrap();
        assert_eq!(first, again);
    }

    #[test]
    fn budget_stops_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = EnumConfig {
            checkpoint: Some(dir.path().to_path_buf()),
            budget: Budget { seconds: None, max_level_size: Some(5) },
            ..EnumConfig::default()
        };
        match build_levels(3, 5, &cfg) {
            Err(Error::BudgetExceeded(msg)) => assert!(msg.contains("checkpoint")),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn naive_agrees_on_tiny_cases() {
        let t2 = vec![make_tk(2).unwrap()];
        assert_eq!(theta_max_naive(3, 2, &t2).unwrap(), Some(r(3, 2)));
        assert_eq!(theta_max_naive(4, 2, &t2).unwrap(), Some(theta_max(4, 2).unwrap().theta));
    }
}
