//! k-SAT formulae in disjunctive normal form.
//!
//! A clause is a conjunction of k literals on distinct variables, stored as
//! a variable mask plus the mask of negated variables. Assignments are
//! bitmasks with variable `i` at bit `i`; truth tables index assignments by
//! that value, so variable 0 is the least significant bit.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::{binomial, ones, subsets};
use crate::error::{Error, Result};
use crate::forbidden::{is_family_free, ForbiddenFamily};
use crate::pdg::{Edge, Pdg};

pub const MAX_VARS: usize = 64;
pub const MAX_TABLE_VARS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, positive: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    vars: u64,
    neg: u64,
}

impl Clause {
    pub fn new(literals: &[Literal]) -> Result<Clause> {
        let mut vars = 0u64;
        let mut neg = 0u64;
        for l in literals {
            if l.var >= MAX_VARS {
                return Err(Error::VertexOutOfRange { vertex: l.var, n: MAX_VARS });
            }
            if vars & (1 << l.var) != 0 {
                return Err(Error::RepeatedVertex(l.var));
            }
            vars |= 1 << l.var;
            if !l.positive {
                neg |= 1 << l.var;
            }
        }
        Ok(Clause { vars, neg })
    }

    pub fn from_masks(vars: u64, neg: u64) -> Clause {
        debug_assert_eq!(neg & !vars, 0);
        Clause { vars, neg }
    }

    pub fn vars(&self) -> u64 {
        self.vars
    }

    pub fn neg(&self) -> u64 {
        self.neg
    }

    pub fn width(&self) -> usize {
        self.vars.count_ones() as usize
    }

    pub fn literals(&self) -> Vec<Literal> {
        ones64(self.vars).map(|v| Literal { var: v, positive: self.neg & (1 << v) == 0 }).collect()
    }

    /// Bits an assignment must carry on `vars` to satisfy the clause.
    #[inline]
    pub fn target(&self) -> u64 {
        self.vars & !self.neg
    }

    #[inline]
    pub fn satisfied_by(&self, w: u64) -> bool {
        w & self.vars == self.target()
    }

    fn max_var(&self) -> Option<usize> {
        (self.vars != 0).then(|| 63 - self.vars.leading_zeros() as usize)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .literals()
            .iter()
            .map(|l| if l.positive { l.var.to_string() } else { format!("~{}", l.var) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn ones64(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// A DNF formula: a set of width-k clauses over variables `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula {
    n: usize,
    k: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(n: usize, k: usize, clauses: impl IntoIterator<Item = Clause>) -> Result<Formula> {
        if n > MAX_VARS {
            return Err(Error::Unsupported(format!("{n} variables exceeds {MAX_VARS}")));
        }
        let mut cs: Vec<Clause> = Vec::new();
        for c in clauses {
            if c.width() != k {
                return Err(Error::WrongCardinality { expected: k, got: c.width() });
            }
            if let Some(v) = c.max_var() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            cs.push(c);
        }
        cs.sort_unstable();
        cs.dedup();
        Ok(Formula { n, k, clauses: cs })
    }

    /// Parses `0 1, ~0 2` style text over `n` variables.
    pub fn parse_with(text: &str, n: Option<usize>) -> Result<Formula> {
        let mut clauses = Vec::new();
        let mut width = None;
        let mut top = 0usize;
        if !text.trim().is_empty() {
            for part in text.split(',') {
                let lits = part
                    .split_whitespace()
                    .map(|tok| {
                        let (positive, num) = match tok.strip_prefix('~') {
                            Some(rest) => (false, rest),
                            None => (true, tok),
                        };
                        let var = num.parse::<usize>().map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
                        top = top.max(var + 1);
                        Ok(Literal { var, positive })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if lits.is_empty() {
                    return Err(Error::Parse("empty clause".into()));
                }
                match width {
                    None => width = Some(lits.len()),
                    Some(w) if w != lits.len() => return Err(Error::WrongCardinality { expected: w, got: lits.len() }),
                    _ => {}
                }
                clauses.push(Clause::new(&lits)?);
            }
        }
        let n = n.unwrap_or(top);
        Formula::new(n, width.unwrap_or(0), clauses)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.binary_search(c).is_ok()
    }

    pub fn without(&self, c: &Clause) -> Formula {
        Formula { n: self.n, k: self.k, clauses: self.clauses.iter().filter(|x| *x != c).copied().collect() }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        Formula::parse_with(s, None)
    }
}

pub fn evaluate(f: &Formula, w: u64) -> bool {
    f.clauses.iter().any(|c| c.satisfied_by(w))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, w: u64) -> bool {
        self.words[(w >> 6) as usize] >> (w & 63) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in 0..1u64 << self.n {
            write!(f, "{}", if self.get(w) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

pub fn truth_table(f: &Formula) -> Result<TruthTable> {
    if f.n > MAX_TABLE_VARS {
        return Err(Error::Unsupported(format!("truth tables support at most {MAX_TABLE_VARS} variables")));
    }
    let size = 1usize << f.n;
    let mut words = vec![0u64; size.div_ceil(64)];
    let all = (1u64 << f.n) - 1;
    for c in &f.clauses {
        // run over the free bits of every satisfying assignment
        let free = all & !c.vars;
        let mut sub = 0u64;
        loop {
            let w = sub | c.target();
            words[(w >> 6) as usize] |= 1 << (w & 63);
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
    }
    Ok(TruthTable { n: f.n, words })
}

/// An assignment satisfying `c` and no other clause of `f`. The clause's
/// literals are fixed first; the remaining clauses must each be falsified,
/// which is searched by DFS with unit propagation.
pub fn find_witness(f: &Formula, c: &Clause) -> Option<u64> {
    let others: Vec<Clause> = f
        .clauses
        .iter()
        .filter(|d| *d != c && (d.target() ^ c.target()) & d.vars & c.vars == 0)
        .copied()
        .collect();
    let mut search = WitnessSearch { clauses: others };
    search.solve(c.vars, c.target())
}

struct WitnessSearch {
    clauses: Vec<Clause>,
}

impl WitnessSearch {
    /// `set` marks assigned variables, `val` their values.
    fn solve(&mut self, mut set: u64, mut val: u64) -> Option<u64> {
        // propagate: a clause with one unassigned literal and the rest true
        // forces that literal false
        loop {
            let mut changed = false;
            let mut branch: Option<u64> = None;
            for d in &self.clauses {
                let fixed = d.vars & set;
                if (val ^ d.target()) & fixed != 0 {
                    continue; // already falsified
                }
                let open = d.vars & !set;
                match open.count_ones() {
                    0 => return None,
                    1 => {
                        set |= open;
                        val = (val & !open) | (!d.target() & open);
                        changed = true;
                    }
                    _ => {
                        if branch.is_none() {
                            branch = Some(open);
                        }
                    }
                }
            }
            if changed {
                continue;
            }
            let Some(open) = branch else { return Some(val) };
            let v = open & open.wrapping_neg();
            // try falsifying the chosen literal first, then the other value
            let target = self.clauses.iter().find(|d| d.vars & v != 0 && d.vars & !set == open).map(|d| d.target());
            let first = target.map_or(0, |t| !t & v);
            for value in [first, v & !first] {
                if let Some(w) = self.solve(set | v, (val & !v) | value) {
                    return Some(w);
                }
            }
            return None;
        }
    }
}

/// Exhaustive witness search for small `n`; reference for tests.
pub fn find_witness_brute(f: &Formula, c: &Clause) -> Option<u64> {
    assert!(f.n <= MAX_TABLE_VARS);
    (0..1u64 << f.n).find(|&w| c.satisfied_by(w) && f.clauses.iter().all(|d| d == c || !d.satisfied_by(w)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// One entry per clause, in clause order.
    pub witnesses: Vec<Option<u64>>,
}

pub fn minimality(f: &Formula) -> Minimality {
    let witnesses: Vec<Option<u64>> = f.clauses.iter().map(|c| find_witness(f, c)).collect();
    Minimality { minimal: witnesses.iter().all(Option::is_some), witnesses }
}

/// Stops at the first clause without a witness.
pub fn is_minimal(f: &Formula) -> bool {
    f.clauses.iter().all(|c| find_witness(f, c).is_some())
}

/// Each variable `v` becomes `v + t·n` for `t < b`; clauses expand over all
/// copy choices with their polarities.
pub fn blowup(f: &Formula, b: usize) -> Result<Formula> {
    if b == 0 {
        return Err(Error::Precondition("blowup multiplicity must be at least 1".into()));
    }
    let n = f.n * b;
    if n > MAX_VARS {
        return Err(Error::Unsupported(format!("blowup needs {n} variables")));
    }
    let mut out = Vec::new();
    for c in &f.clauses {
        let lits = c.literals();
        let mut choice = vec![0usize; lits.len()];
        loop {
            let mut vars = 0u64;
            let mut neg = 0u64;
            for (l, &t) in lits.iter().zip(&choice) {
                let v = l.var + t * f.n;
                vars |= 1 << v;
                if !l.positive {
                    neg |= 1 << v;
                }
            }
            out.push(Clause { vars, neg });
            // odometer
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < b {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    Formula::new(n, f.k, out)
}

fn groups(f: &Formula) -> Vec<&[Clause]> {
    // clauses are sorted by variable mask first, so equal masks are adjacent
    f.clauses.chunk_by(|a, b| a.vars == b.vars).collect()
}

pub fn is_simple(f: &Formula) -> bool {
    groups(f).iter().all(|g| g.len() == 1)
}

/// At most two clauses per variable set, and a pair differs in exactly one
/// negation.
pub fn is_semisimple(f: &Formula) -> bool {
    groups(f).iter().all(|g| match g {
        [_] => true,
        [a, b] => (a.neg ^ b.neg).count_ones() == 1,
        _ => false,
    })
}

/// The k-PDG on the formula's variables: single clauses give undirected
/// edges, pairs give edges pointing at the variable where they differ.
pub fn type_of(f: &Formula) -> Result<Pdg> {
    if !is_semisimple(f) {
        return Err(Error::NotSemisimple);
    }
    if f.n > crate::pdg::MAX_VERTICES {
        return Err(Error::Unsupported(format!("type needs {} vertices", f.n)));
    }
    let mut edges = Vec::new();
    for g in groups(f) {
        let mask = g[0].vars as u32;
        let head = match g {
            [a, b] => Some((a.neg ^ b.neg).trailing_zeros() as usize),
            _ => None,
        };
        edges.push(Edge::from_mask(mask, head));
    }
    Pdg::from_edges(f.n, f.k, edges)
}

/// Monotone clause per edge, plus the clause negated at the head for each
/// directed edge.
pub fn positive_instance(h: &Pdg) -> Formula {
    let mut clauses = Vec::new();
    for e in h.edges() {
        let vars = e.mask() as u64;
        clauses.push(Clause { vars, neg: 0 });
        if let Some(v) = e.head() {
            clauses.push(Clause { vars, neg: 1 << v });
        }
    }
    Formula::new(h.n(), h.k(), clauses).expect("edges are valid clauses")
}

/// Options per edge for a simple subformula of the positive instance:
/// absent, the monotone clause, or (directed only) the negated-head clause.
fn simple_options(h: &Pdg) -> Vec<Vec<Option<Clause>>> {
    h.edges()
        .iter()
        .map(|e| {
            let vars = e.mask() as u64;
            let mut opts = vec![None, Some(Clause { vars, neg: 0 })];
            if let Some(v) = e.head() {
                opts.push(Some(Clause { vars, neg: 1 << v }));
            }
            opts
        })
        .collect()
}

/// 2^{e_u} 3^{e_d}, or `None` on overflow.
pub fn simple_subformula_count(h: &Pdg) -> Option<u64> {
    2u64.checked_pow(h.e_u() as u32)?.checked_mul(3u64.checked_pow(h.e_d() as u32)?)
}

/// Visits every simple subformula of `positive_instance(h)` in mixed-radix
/// order (first edge fastest).
pub fn for_each_simple_subformula(h: &Pdg, mut visit: impl FnMut(&Formula)) {
    let options = simple_options(h);
    let mut idx = vec![0usize; options.len()];
    loop {
        let clauses = options.iter().zip(&idx).filter_map(|(o, &i)| o[i]);
        let f = Formula::new(h.n(), h.k(), clauses).expect("valid clauses");
        visit(&f);
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            return;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub subformulae: u64,
    pub non_minimal: Vec<Formula>,
    pub collisions: Vec<(Formula, Formula)>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.non_minimal.is_empty() && self.collisions.is_empty()
    }
}

/// Checks that every simple subformula of the positive instance of a
/// family-free `h` is minimal and that their functions are pairwise distinct.
pub fn check_positive_instance_lemmas(h: &Pdg, family: &ForbiddenFamily, budget: u64) -> Result<LemmaReport> {
    if h.k() != family.k {
        return Err(Error::UniformityMismatch(h.k(), family.k));
    }
    if !is_family_free(h, family)? {
        return Err(Error::Precondition("graph is not free of the forbidden family".into()));
    }
    if h.n() > 20 {
        return Err(Error::Unsupported("positive instance checks support n <= 20".into()));
    }
    let total = simple_subformula_count(h).filter(|&c| c <= budget);
    let Some(total) = total else {
        return Err(Error::BudgetExceeded(format!("more than {budget} simple subformulae")));
    };
    let mut report = LemmaReport { subformulae: 0, non_minimal: Vec::new(), collisions: Vec::new() };
    let mut seen: HashMap<Vec<u64>, Formula> = HashMap::with_capacity(total as usize);
    for_each_simple_subformula(h, |f| {
        report.subformulae += 1;
        if !is_minimal(f) {
            report.non_minimal.push(f.clone());
        }
        let table = truth_table(f).expect("n <= 20");
        if let Some(prev) = seen.get(&table.words) {
            report.collisions.push((prev.clone(), f.clone()));
        } else {
            seen.insert(table.words, f.clone());
        }
    });
    debug_assert_eq!(report.subformulae, total);
    Ok(report)
}

/// Shapes accepted by [`check_blowup_nonminimality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedShape {
    /// Two clauses on the same variable set.
    SamePair,
    /// Semisimple with type in the family.
    FamilyType,
    /// Simple formula on every k-subset of k+1 variables, not unate.
    NonUnateClique,
}

/// Classifies `seed` and confirms its 2-blowup is not minimal.
pub fn check_blowup_nonminimality(seed: &Formula, family: Option<&ForbiddenFamily>) -> Result<(SeedShape, bool)> {
    let shape = classify_seed(seed, family)?;
    Ok((shape, !is_minimal(&blowup(seed, 2)?)))
}

pub fn classify_seed(seed: &Formula, family: Option<&ForbiddenFamily>) -> Result<SeedShape> {
    let cs = seed.clauses();
    if cs.len() == 2 && cs[0].vars == cs[1].vars {
        return Ok(SeedShape::SamePair);
    }
    let used: u64 = cs.iter().fold(0, |m, c| m | c.vars);
    if is_simple(seed)
        && used.count_ones() as usize == seed.k + 1
        && cs.len() == seed.k + 1
        && !is_unate(seed)
    {
        return Ok(SeedShape::NonUnateClique);
    }
    if let Some(fam) = family {
        if is_semisimple(seed) {
            let t = type_of(seed)?;
            let t = compact(&t);
            let form = crate::canonical::canonical_form(&t);
            if fam.graphs().any(|m| m == form.graph()) {
                return Ok(SeedShape::FamilyType);
            }
        }
    }
    Err(Error::Precondition("seed is not a same-set pair, a family type, or a non-unate clique".into()))
}

/// Drops isolated vertices.
fn compact(g: &Pdg) -> Pdg {
    let used: u32 = g.edges().iter().fold(0, |m, e| m | e.mask());
    let mut perm = vec![0usize; g.n()];
    let mut next = 0;
    let mut rest = used.count_ones() as usize;
    for (v, slot) in perm.iter_mut().enumerate() {
        if used & (1 << v) != 0 {
            *slot = next;
            next += 1;
        } else {
            *slot = rest;
            rest += 1;
        }
    }
    let relabeled = g.relabel(&perm);
    Pdg::from_edges(used.count_ones() as usize, g.k(), relabeled.edges().iter().copied()).expect("edges fit")
}

/// Every semisimple formula whose type is `h` (on `h`'s vertex set):
/// any polarity per undirected edge, and per directed edge any polarity on
/// the non-head variables with both clauses at the head.
pub fn semisimple_realizations(h: &Pdg, limit: u64) -> Result<Vec<Formula>> {
    let per_edge: Vec<Vec<Vec<Clause>>> = h
        .edges()
        .iter()
        .map(|e| {
            let vars = e.mask() as u64;
            match e.head() {
                None => subsets_of(vars).map(|neg| vec![Clause { vars, neg }]).collect(),
                Some(v) => {
                    let hb = 1u64 << v;
                    subsets_of(vars & !hb).map(|neg| vec![Clause { vars, neg }, Clause { vars, neg: neg | hb }]).collect()
                }
            }
        })
        .collect();
    let total = per_edge.iter().try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64));
    if total.is_none_or(|t| t > limit) {
        return Err(Error::BudgetExceeded(format!("more than {limit} realizations")));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_edge.len()];
    loop {
        let clauses = per_edge.iter().zip(&idx).flat_map(|(o, &i)| o[i].iter().copied());
        out.push(Formula::new(h.n(), h.k(), clauses)?);
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < per_edge[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            return Ok(out);
        }
    }
}

fn subsets_of(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = Some(0u64);
    std::iter::from_fn(move || {
        let cur = sub?;
        let next = cur.wrapping_sub(mask) & mask;
        sub = (next != 0).then_some(next);
        Some(cur)
    })
}

/// Per-variable `(m(x), m(x̄))`: clauses holding the positive and the
/// negative literal.
pub fn literal_counts(f: &Formula) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0); f.n];
    for c in &f.clauses {
        for v in ones64(c.vars) {
            if c.neg & (1 << v) == 0 {
                out[v].0 += 1;
            } else {
                out[v].1 += 1;
            }
        }
    }
    out
}

pub const MAX_UNATE_VARS: usize = 20;

/// Fewest clauses to delete so that every variable occurs with one polarity.
pub fn distance_to_unate(f: &Formula) -> Result<usize> {
    if f.n > MAX_UNATE_VARS {
        return Err(Error::BudgetExceeded(format!("2^{} polarity vectors", f.n)));
    }
    let mut best = f.clauses.len();
    for sigma in 0..1u64 << f.n {
        let bad = f.clauses.iter().filter(|c| (c.neg ^ sigma) & c.vars != 0).count();
        best = best.min(bad);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Checked directly from literal counts, so it has no variable limit.
pub fn is_unate(f: &Formula) -> bool {
    literal_counts(f).iter().all(|&(p, q)| p == 0 || q == 0)
}

/// Number of clauses 2^k C(n,k) swept by the exact counters.
pub const MAX_SWEEP_CLAUSES: u64 = 26;

fn all_clauses(n: usize, k: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for m in subsets(n, k) {
        let vars = m as u64;
        out.extend(subsets_of(vars).map(|neg| Clause { vars, neg }));
    }
    out
}

fn clause_table(c: &Clause, n: usize) -> u64 {
    let mut t = 0u64;
    for w in 0..1u64 << n {
        if c.satisfied_by(w) {
            t |= 1 << w;
        }
    }
    t
}

/// Every OR of a subset of `tables`. The first few choices are split across
/// rayon workers, whose sets are merged afterwards.
fn sweep_tables(tables: &[u64]) -> HashSet<u64> {
    fn rec(i: usize, acc: u64, tables: &[u64], out: &mut HashSet<u64>) {
        if i == tables.len() {
            out.insert(acc);
            return;
        }
        rec(i + 1, acc, tables, out);
        rec(i + 1, acc | tables[i], tables, out);
    }
    let split = tables.len().min(6);
    (0u32..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let acc = ones(prefix).fold(0u64, |a, i| a | tables[i]);
            let mut out = HashSet::new();
            rec(split, acc, tables, &mut out);
            out
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn sweep_guard(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n || n > 6 {
        return Err(Error::Unsupported(format!("function counts need 1 <= k <= n <= 6, got n={n} k={k}")));
    }
    let clauses = (1u64 << k) * binomial(n, k);
    if clauses > MAX_SWEEP_CLAUSES {
        return Err(Error::BudgetExceeded(format!("2^{clauses} formulae")));
    }
    Ok(())
}

/// Distinct functions over all k-SAT formulae on `n` variables.
pub fn count_functions(n: usize, k: usize) -> Result<u64> {
    sweep_guard(n, k)?;
    let tables: Vec<u64> = all_clauses(n, k).iter().map(|c| clause_table(c, n)).collect();
    Ok(sweep_tables(&tables).len() as u64)
}

/// Distinct functions over unate formulae: for each polarity vector, every
/// subset of the clauses that agree with it.
pub fn count_unate_functions(n: usize, k: usize) -> Result<u64> {
    sweep_guard(n, k)?;
    let mut seen = HashSet::new();
    for sigma in 0..1u64 << n {
        let tables: Vec<u64> = subsets(n, k)
            .map(|m| {
                let vars = m as u64;
                clause_table(&Clause { vars, neg: sigma & vars }, n)
            })
            .collect();
        seen.extend(sweep_tables(&tables));
    }
    Ok(seen.len() as u64)
}
