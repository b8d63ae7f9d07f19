//! The generalized triangle T⃗_k and the forbidden family 𝓕_k.
//!
//! 𝓕_k is generated from construction traces: an initial edge `e_0`, up to
//! `k` directed extension edges pointing at fresh vertices `w_i` with their
//! other `k-1` vertices in the unpointed core `S`, and one closing edge.
//! Traces are deduplicated up to isomorphism and any graph containing a
//! different generated graph is dropped.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::bits::subsets;
use crate::canonical::{canonical_labeling, CanonicalForm};
use crate::error::{Error, Result};
use crate::pdg::{contains_subgraph, Edge, Pdg};

/// T⃗_k on vertices `0..=k`: core `K = {0..k-3}` with `p = k-2`, `q = k-1`,
/// `r = k`, and edges `K+p+q`, `K+p+r` pointing at `r`, `K+q+r`.
pub fn make_tk(k: usize) -> Result<Pdg> {
    if k < 2 {
        return Err(Error::Unsupported(format!("T_k needs k >= 2, got {k}")));
    }
    let core = (1u32 << (k - 2)) - 1;
    let (p, q, r) = (k - 2, k - 1, k);
    Pdg::from_edges(
        k + 1,
        k,
        [
            Edge::from_mask(core | 1 << p | 1 << q, None),
            Edge::from_mask(core | 1 << p | 1 << r, Some(r)),
            Edge::from_mask(core | 1 << q | 1 << r, None),
        ],
    )
}

/// Whether `g` contains T⃗_k: some edge `X` pointing at `r`, some `p` in
/// `X - r` and `q` outside `X` with both `X - r + q` and `X - p + q` present.
pub fn contains_tk(g: &Pdg) -> bool {
    g.edges().iter().any(|e| tk_through_directed(g, *e))
}

pub fn is_tk_free(g: &Pdg) -> bool {
    !contains_tk(g)
}

/// A copy of T⃗_k in which `e` plays the directed edge.
pub(crate) fn tk_through_directed(g: &Pdg, e: Edge) -> bool {
    let Some(r) = e.head() else { return false };
    let x = e.mask();
    let full = (1u32 << g.n()) - 1;
    let mut outside = full & !x;
    while outside != 0 {
        let q = outside.trailing_zeros();
        outside &= outside - 1;
        if g.edge_on((x & !(1 << r)) | 1 << q).is_none() {
            continue;
        }
        let mut tails = x & !(1 << r);
        while tails != 0 {
            let p = tails.trailing_zeros();
            tails &= tails - 1;
            if g.edge_on((x & !(1 << p)) | 1 << q).is_some() {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// Undirected edge inside `T`.
    A,
    /// Edge pointing at a fresh vertex with a tail vertex outside `S`.
    B,
}

/// One construction of a member, in the member's own labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub init: Edge,
    pub core: Vec<usize>,
    pub extensions: Vec<Edge>,
    pub closure_kind: Closure,
    pub closure: Edge,
}

impl Trace {
    fn relabel(&self, perm: &[usize]) -> Trace {
        let mut core: Vec<usize> = self.core.iter().map(|&v| perm[v]).collect();
        core.sort_unstable();
        Trace {
            init: self.init.relabel(perm),
            core,
            extensions: self.extensions.iter().map(|e| e.relabel(perm)).collect(),
            closure_kind: self.closure_kind,
            closure: self.closure.relabel(perm),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        std::iter::once(self.init).chain(self.extensions.iter().copied()).chain(std::iter::once(self.closure))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core: Vec<String> = self.core.iter().map(|v| v.to_string()).collect();
        let ext: Vec<String> = self.extensions.iter().map(|e| e.to_string()).collect();
        let kind = match self.closure_kind {
            Closure::A => "a",
            Closure::B => "b",
        };
        write!(
            f,
            "init={} ; S={} ; ext=[{}] ; closure({kind})={}",
            self.init,
            core.join(" "),
            ext.join(" , "),
            self.closure
        )
    }
}

#[derive(Debug, Clone)]
pub struct Member {
    pub graph: Pdg,
    pub trace: Trace,
}

#[derive(Debug, Clone)]
pub struct ForbiddenFamily {
    pub k: usize,
    /// Canonical representatives sorted by canonical form.
    pub members: Vec<Member>,
}

impl ForbiddenFamily {
    /// The single-member family `{T⃗_k}`.
    pub fn tk_only(k: usize) -> Result<ForbiddenFamily> {
        let t = make_tk(k)?;
        let (form, perm) = canonical_labeling(&t);
        let core = (0..k - 2).collect();
        let trace = Trace {
            init: t.edges()[0],
            core,
            extensions: vec![t.edge_on(((1 << (k - 2)) - 1) | (1 << (k - 2)) | 1 << k).unwrap()],
            closure_kind: Closure::A,
            closure: t.edge_on(((1 << (k - 2)) - 1) | (1 << (k - 1)) | 1 << k).unwrap(),
        };
        Ok(ForbiddenFamily { k, members: vec![Member { graph: form.into_graph(), trace: trace.relabel(&perm) }] })
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Pdg> {
        self.members.iter().map(|m| &m.graph)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether the family is exactly `{T⃗_k}` up to isomorphism.
    pub fn is_tk_only(&self) -> bool {
        self.members.len() == 1
            && make_tk(self.k).is_ok_and(|t| crate::canonical::canonical_form(&t).graph() == &self.members[0].graph)
    }
}

pub const MAX_FAMILY_K: usize = 6;

/// Every trace of the construction, as `(graph, trace)` pairs in the
/// generator's labels. Extension cores are taken as multisets since the
/// fresh heads are interchangeable.
fn traces(k: usize) -> Vec<(Pdg, Trace)> {
    let mut out = Vec::new();
    for directed_init in [false, true] {
        let init_mask = (1u32 << k) - 1;
        let (init, s_mask) = if directed_init {
            (Edge::from_mask(init_mask, Some(k - 1)), init_mask & !(1 << (k - 1)))
        } else {
            (Edge::from_mask(init_mask, None), init_mask)
        };
        let cores: Vec<u32> = subsets(k, k - 1).filter(|m| m & !s_mask == 0).collect();
        for j in 0..=k {
            for choice in multisets(cores.len(), j) {
                let mut edges = vec![init];
                for (i, &c) in choice.iter().enumerate() {
                    let w = k + i;
                    edges.push(Edge::from_mask(cores[c] | 1 << w, Some(w)));
                }
                let t_size = k + j;
                let t_mask = (1u32 << t_size) - 1;
                let used: Vec<u32> = edges.iter().map(|e| e.mask()).collect();
                let mut closures = Vec::new();
                for m in subsets(t_size, k) {
                    if !used.contains(&m) {
                        closures.push((Closure::A, Edge::from_mask(m, None)));
                    }
                }
                let w0 = t_size;
                for m in subsets(t_size, k - 1) {
                    if m & t_mask & !s_mask != 0 {
                        closures.push((Closure::B, Edge::from_mask(m | 1 << w0, Some(w0))));
                    }
                }
                for (kind, closure) in closures {
                    let n = if kind == Closure::B { t_size + 1 } else { t_size };
                    if n > crate::pdg::MAX_VERTICES {
                        continue;
                    }
                    let g = Pdg::from_edges(n, k, edges.iter().copied().chain([closure]))
                        .expect("trace edges use distinct k-sets");
                    let trace = Trace {
                        init,
                        core: crate::bits::ones(s_mask).collect(),
                        extensions: edges[1..].to_vec(),
                        closure_kind: kind,
                        closure,
                    };
                    out.push((g, trace));
                }
            }
        }
    }
    out
}

/// Non-decreasing sequences of length `len` over `0..base`.
fn multisets(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(base: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in from..base {
            cur.push(x);
            rec(base, len, x, cur, out);
            cur.pop();
        }
    }
    rec(base, len, 0, &mut cur, &mut out);
    out
}

/// All isomorphism classes produced by the construction, before pruning,
/// keyed by canonical form. Each keeps the first trace found.
pub fn generate_candidates(k: usize) -> Result<BTreeMap<CanonicalForm, Trace>> {
    if !(2..=MAX_FAMILY_K).contains(&k) {
        return Err(Error::Unsupported(format!("family generation supports 2 <= k <= {MAX_FAMILY_K}")));
    }
    let all = traces(k);
    let labelled: Vec<(CanonicalForm, Trace)> = all
        .par_iter()
        .map(|(g, t)| {
            let (form, perm) = canonical_labeling(g);
            (form, t.relabel(&perm))
        })
        .collect();
    let mut map = BTreeMap::new();
    for (form, trace) in labelled {
        map.entry(form).or_insert(trace);
    }
    Ok(map)
}

pub fn generate_fk(k: usize) -> Result<ForbiddenFamily> {
    let candidates = generate_candidates(k)?;
    let mut ordered: Vec<(CanonicalForm, Trace)> = candidates.into_iter().collect();
    // a proper subgraph has fewer edges, or as many edges and fewer directed
    ordered.sort_by_key(|(f, _)| (f.graph().edge_count(), f.graph().e_d()));
    let mut kept: Vec<(CanonicalForm, Trace)> = Vec::new();
    let mut start = 0;
    while start < ordered.len() {
        let key = |f: &CanonicalForm| (f.graph().edge_count(), f.graph().e_d());
        let group_key = key(&ordered[start].0);
        let end = ordered[start..].iter().position(|(f, _)| key(f) != group_key).map_or(ordered.len(), |p| start + p);
        // members of one group cannot contain each other unless isomorphic
        let survivors: Vec<bool> = ordered[start..end]
            .par_iter()
            .map(|(f, _)| {
                !kept.iter().any(|(m, _)| {
                    m.graph().n() <= f.graph().n() && contains_subgraph(f.graph(), m.graph()).unwrap()
                })
            })
            .collect();
        for (item, keep) in ordered[start..end].iter().zip(survivors) {
            if keep {
                kept.push(item.clone());
            }
        }
        start = end;
    }
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ForbiddenFamily {
        k,
        members: kept.into_iter().map(|(f, trace)| Member { graph: f.into_graph(), trace }).collect(),
    })
}

/// Independent slow generator for cross-checking: ordered extension
/// sequences, isomorphism via mutual embeddings, all-pairs pruning.
pub fn generate_fk_slow(k: usize) -> Result<Vec<Pdg>> {
    if !(2..=4).contains(&k) {
        return Err(Error::Unsupported("slow generator supports 2 <= k <= 4".into()));
    }
    let mut graphs: Vec<Pdg> = Vec::new();
    for directed in [false, true] {
        let mut edges = vec![if directed {
            Edge::from_mask((1 << k) - 1, Some(0))
        } else {
            Edge::from_mask((1 << k) - 1, None)
        }];
        let s: Vec<usize> = if directed { (1..k).collect() } else { (0..k).collect() };
        slow_extend(k, &s, &mut edges, &mut graphs);
    }
    let same = |a: &Pdg, b: &Pdg| {
        a.n() == b.n() && a.e_u() == b.e_u() && a.e_d() == b.e_d() && contains_subgraph(a, b).unwrap()
    };
    let mut classes: Vec<Pdg> = Vec::new();
    for g in graphs {
        if !classes.iter().any(|c| same(c, &g)) {
            classes.push(g);
        }
    }
    let minimal: Vec<Pdg> = classes
        .iter()
        .filter(|a| {
            !classes
                .iter()
                .any(|b| !same(a, b) && b.n() <= a.n() && contains_subgraph(a, b).unwrap())
        })
        .cloned()
        .collect();
    Ok(minimal)
}

fn slow_extend(k: usize, s: &[usize], edges: &mut Vec<Edge>, out: &mut Vec<Pdg>) {
    let j = edges.len() - 1;
    let t: Vec<usize> = (0..k + j).collect();
    let taken = |m: u32, edges: &[Edge]| edges.iter().any(|e| e.mask() == m);
    for m in subsets(t.len(), k) {
        if !taken(m, edges) {
            let mut es = edges.clone();
            es.push(Edge::from_mask(m, None));
            out.push(Pdg::from_edges(k + j, k, es).unwrap());
        }
    }
    let s_mask: u32 = s.iter().map(|&v| 1u32 << v).sum();
    let w0 = k + j;
    for m in subsets(t.len(), k - 1) {
        if m & !s_mask != 0 {
            let mut es = edges.clone();
            es.push(Edge::from_mask(m | 1 << w0, Some(w0)));
            out.push(Pdg::from_edges(k + j + 1, k, es).unwrap());
        }
    }
    if j == k {
        return;
    }
    let w = k + j;
    for core in subsets(k, k - 1).filter(|m| m & !s_mask == 0) {
        edges.push(Edge::from_mask(core | 1 << w, Some(w)));
        slow_extend(k, s, edges, out);
        edges.pop();
    }
}

pub fn is_family_free(g: &Pdg, family: &ForbiddenFamily) -> Result<bool> {
    Ok(contained_member(g, family)?.is_none())
}

/// The first member (in family order) that `g` contains.
pub fn contained_member<'a>(g: &Pdg, family: &'a ForbiddenFamily) -> Result<Option<&'a Member>> {
    if g.k() != family.k {
        return Err(Error::UniformityMismatch(g.k(), family.k));
    }
    for m in &family.members {
        if m.graph.n() <= g.n() && contains_subgraph(g, &m.graph)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;

    fn g(s: &str) -> Pdg {
        s.parse().unwrap()
    }

    #[test]
    fn tk_examples() {
        assert_eq!(make_tk(2).unwrap().to_string(), "3 2 ; 0 1 , 0 2>2 , 1 2");
        assert_eq!(make_tk(3).unwrap().to_string(), "4 3 ; 0 1 2 , 0 1 3>3 , 0 2 3");
        assert_eq!(make_tk(4).unwrap().to_string(), "5 4 ; 0 1 2 3 , 0 1 2 4>4 , 0 1 3 4");
        assert_eq!(make_tk(5).unwrap().to_string(), "6 5 ; 0 1 2 3 4 , 0 1 2 3 5>5 , 0 1 2 4 5");
        assert!(make_tk(1).is_err());
    }

    #[test]
    fn fast_tk_test_matches_embedding() {
        for k in 2..=5 {
            let t = make_tk(k).unwrap();
            assert!(contains_tk(&t));
            assert!(contains_subgraph(&t, &t).unwrap());
            let mut weaker = t.clone();
            let d = t.edges().iter().find(|e| e.is_directed()).unwrap().mask();
            weaker.forget_direction_on(d);
            assert!(!contains_tk(&weaker));
        }
    }

    fn has(fam: &ForbiddenFamily, s: &str) -> bool {
        let want = canonical_form(&g(s));
        fam.graphs().any(|m| m == want.graph())
    }

    #[test]
    fn f2_members() {
        let fam = generate_fk(2).unwrap();
        assert!(has(&fam, "3 2 ; 0 1 , 0 2>2 , 1 2"));
        assert!(has(&fam, "3 2 ; 0 1>1 , 1 2>2"));
        // init 23, extensions 2·0 and 3·1, closure (a) 01
        assert!(has(&fam, "4 2 ; 2 3 , 0 2>0 , 1 3>1 , 0 1"));
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn three_fold_extension_is_redundant() {
        // {123, 12·4, 12·5, 12·6, 456} contains {123, 12·4, 12·5, 345}
        // once 12·4 forgets its direction
        let big = g("6 3 ; 0 1 2 , 0 1 3>3 , 0 1 4>4 , 0 1 5>5 , 3 4 5");
        let small = g("5 3 ; 0 1 2 , 0 1 3>3 , 0 1 4>4 , 2 3 4");
        assert!(contains_subgraph(&big, &small).unwrap());
        let fam = generate_fk(3).unwrap();
        assert!(has(&fam, "5 3 ; 0 1 2 , 0 1 3>3 , 0 1 4>4 , 2 3 4"));
        assert!(!has(&fam, "6 3 ; 0 1 2 , 0 1 3>3 , 0 1 4>4 , 0 1 5>5 , 3 4 5"));
    }

    #[test]
    fn traces_rebuild_their_members() {
        for k in 2..=4 {
            for m in &generate_fk(k).unwrap().members {
                let mut edges: Vec<Edge> = m.trace.edges().collect();
                edges.sort_unstable();
                assert_eq!(edges, m.graph.edges(), "k={k}");
                let s: u32 = m.trace.core.iter().map(|&v| 1u32 << v).sum();
                assert!(m.trace.extensions.iter().all(|e| e.mask() & !(1 << e.head().unwrap()) & !s == 0));
                match m.trace.closure_kind {
                    Closure::A => assert!(!m.trace.extensions.is_empty() && !m.trace.closure.is_directed()),
                    Closure::B => {
                        let c = m.trace.closure;
                        assert!(c.mask() & !(1 << c.head().unwrap()) & !s != 0);
                    }
                }
            }
        }
    }

    #[test]
    fn slow_generator_agrees() {
        for k in 2..=3 {
            let fast = generate_fk(k).unwrap();
            let slow = generate_fk_slow(k).unwrap();
            assert_eq!(fast.len(), slow.len(), "k={k}");
            for s in &slow {
                assert!(fast.graphs().any(|m| m == canonical_form(s).graph()));
            }
        }
    }

    #[test]
    fn family_free_examples() {
        let f2 = generate_fk(2).unwrap();
        let t2 = ForbiddenFamily::tk_only(2).unwrap();
        assert!(t2.is_tk_only());
        assert!(is_family_free(&Pdg::complete_undirected(6, 2).unwrap(), &f2).unwrap());
        // K_{2,3} with every edge pointing into the part {2,3,4}
        let mut bip = Pdg::new(5, 2).unwrap();
        for a in 0..2 {
            for b in 2..5 {
                bip.add_edge(Edge::directed(&[a, b], b).unwrap()).unwrap();
            }
        }
        assert!(is_family_free(&bip, &t2).unwrap());
        let left = g("4 2 ; 0 1>1 , 1 2>2 , 0 2 , 2 3>3");
        assert!(!is_family_free(&left, &t2).unwrap());
        assert!(is_family_free(&left, &generate_fk(3).unwrap()).is_err());
    }
}
