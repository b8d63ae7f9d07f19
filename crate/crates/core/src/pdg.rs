//! Partially directed k-uniform hypergraphs.
//!
//! An edge is a k-set of vertices, stored as a bitmask, that is either
//! undirected or points at one of its own vertices (its head). A graph
//! carries at most one edge per k-set. Vertices are `0..n` with `n <= 16`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::bits::{binomial, ones};
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 16;

const NO_HEAD: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    mask: u16,
    head: u8,
}

impl Edge {
    pub fn new(vertices: &[usize], head: Option<usize>) -> Result<Edge> {
        let mut mask = 0u16;
        for &v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n: MAX_VERTICES });
            }
            if mask & (1 << v) != 0 {
                return Err(Error::RepeatedVertex(v));
            }
            mask |= 1 << v;
        }
        if let Some(h) = head {
            if h >= MAX_VERTICES || mask & (1 << h) == 0 {
                return Err(Error::HeadOutsideEdge { head: h });
            }
        }
        Ok(Edge { mask, head: head.map_or(NO_HEAD, |h| h as u8) })
    }

    pub fn undirected(vertices: &[usize]) -> Result<Edge> {
        Edge::new(vertices, None)
    }

    pub fn directed(vertices: &[usize], head: usize) -> Result<Edge> {
        Edge::new(vertices, Some(head))
    }

    /// Builds an edge from a raw mask. The caller guarantees `head` lies in `mask`.
    #[inline]
    pub fn from_mask(mask: u32, head: Option<usize>) -> Edge {
        debug_assert!(head.is_none_or(|h| mask & (1 << h) != 0));
        Edge { mask: mask as u16, head: head.map_or(NO_HEAD, |h| h as u8) }
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.mask as u32
    }

    #[inline]
    pub fn head(&self) -> Option<usize> {
        (self.head != NO_HEAD).then_some(self.head as usize)
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.head != NO_HEAD
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.mask & (1 << v) != 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        ones(self.mask as u32)
    }

    pub fn forget_direction(&self) -> Edge {
        Edge { mask: self.mask, head: NO_HEAD }
    }

    /// Relabels with `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Edge {
        let mask = crate::bits::permute_mask(self.mask as u32, perm);
        Edge::from_mask(mask, self.head().map(|h| perm[h]))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{}", verts.join(" "))?;
        if let Some(h) = self.head() {
            write!(f, ">{h}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Densities {
    pub alpha: Rational64,
    pub beta: Rational64,
}

/// A k-PDG on vertices `0..n`. Edges are kept sorted by `(mask, head)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pdg {
    n: usize,
    k: usize,
    edges: Vec<Edge>,
}

impl Pdg {
    pub fn new(n: usize, k: usize) -> Result<Pdg> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported(format!("{n} vertices exceeds {MAX_VERTICES}")));
        }
        if k == 0 {
            return Err(Error::Unsupported("uniformity 0".into()));
        }
        Ok(Pdg { n, k, edges: Vec::new() })
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, k: usize, edges: I) -> Result<Pdg> {
        let mut g = Pdg::new(n, k)?;
        for e in edges {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    /// Builds from vertex lists; `(verts, Some(h))` is directed at `h`.
    pub fn from_lists(n: usize, k: usize, edges: &[(&[usize], Option<usize>)]) -> Result<Pdg> {
        let es = edges.iter().map(|(vs, h)| Edge::new(vs, *h)).collect::<Result<Vec<_>>>()?;
        Pdg::from_edges(n, k, es)
    }

    /// Unchecked construction from edges already validated for `(n, k)`.
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, edges: Vec<Edge>) -> Pdg {
        debug_assert!(edges.windows(2).all(|w| w[0].mask < w[1].mask));
        Pdg { n, k, edges }
    }

    pub fn complete_undirected(n: usize, k: usize) -> Result<Pdg> {
        let mut g = Pdg::new(n, k)?;
        g.edges = crate::bits::subsets(n, k).map(|m| Edge::from_mask(m, None)).collect();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn e_u(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_directed()).count()
    }

    pub fn e_d(&self) -> usize {
        self.edges.iter().filter(|e| e.is_directed()).count()
    }

    fn validate(&self, e: &Edge) -> Result<()> {
        if e.size() != self.k {
            return Err(Error::WrongCardinality { expected: self.k, got: e.size() });
        }
        let top = 31 - e.mask().leading_zeros() as usize;
        if top >= self.n {
            return Err(Error::VertexOutOfRange { vertex: top, n: self.n });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<()> {
        self.validate(&e)?;
        match self.edges.binary_search_by_key(&e.mask, |x| x.mask) {
            Ok(_) => Err(Error::DuplicateEdgeSet(e.forget_direction().to_string())),
            Err(pos) => {
                self.edges.insert(pos, e);
                Ok(())
            }
        }
    }

    pub fn with_edge(mut self, e: Edge) -> Result<Pdg> {
        self.add_edge(e)?;
        Ok(self)
    }

    pub fn remove_edge_on(&mut self, mask: u32) -> Option<Edge> {
        let pos = self.edges.binary_search_by_key(&(mask as u16), |x| x.mask).ok()?;
        Some(self.edges.remove(pos))
    }

    /// Replaces the edge on the same vertex set with its undirected version.
    pub fn forget_direction_on(&mut self, mask: u32) -> bool {
        match self.edges.binary_search_by_key(&(mask as u16), |x| x.mask) {
            Ok(pos) => {
                self.edges[pos] = self.edges[pos].forget_direction();
                true
            }
            Err(_) => false,
        }
    }

    #[inline]
    pub fn edge_on(&self, mask: u32) -> Option<Edge> {
        self.edges
            .binary_search_by_key(&(mask as u16), |x| x.mask)
            .ok()
            .map(|i| self.edges[i])
    }

    pub fn densities(&self) -> Densities {
        let total = binomial(self.n, self.k) as i64;
        if total == 0 {
            return Densities { alpha: Rational64::from_integer(0), beta: Rational64::from_integer(0) };
        }
        Densities {
            alpha: Rational64::new(self.e_u() as i64, total),
            beta: Rational64::new(self.e_d() as i64, total),
        }
    }

    /// Relabels vertices with `perm[old] = new`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Pdg {
        let mut edges: Vec<Edge> = self.edges.iter().map(|e| e.relabel(perm)).collect();
        edges.sort_unstable();
        Pdg { n: self.n, k: self.k, edges }
    }

    /// Same edges on a vertex set enlarged to `n` vertices.
    pub fn with_vertex_count(&self, n: usize) -> Result<Pdg> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported(format!("{n} vertices exceeds {MAX_VERTICES}")));
        }
        if let Some(top) = self.edges.iter().map(|e| 31 - e.mask().leading_zeros() as usize).max() {
            if top >= n {
                return Err(Error::VertexOutOfRange { vertex: top, n });
            }
        }
        Ok(Pdg { n, k: self.k, edges: self.edges.clone() })
    }

    /// Degrees `(all edges, edges pointing at v)` per vertex.
    pub fn degree_profile(&self) -> Vec<(u32, u32)> {
        let mut deg = vec![(0u32, 0u32); self.n];
        for e in &self.edges {
            for v in e.vertices() {
                deg[v].0 += 1;
            }
            if let Some(h) = e.head() {
                deg[h].1 += 1;
            }
        }
        deg
    }

    /// The `(k-1)`-PDG of edges through `v` with `v` removed. Vertices above
    /// `v` shift down by one; edges pointing at `v` become undirected.
    pub fn link(&self, v: usize) -> Result<Pdg> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.k < 2 {
            return Err(Error::Unsupported("link needs k >= 2".into()));
        }
        let low = (1u32 << v) - 1;
        let squash = |m: u32| (m & low) | ((m >> 1) & !low);
        let mut edges = Vec::new();
        for e in &self.edges {
            if !e.contains(v) {
                continue;
            }
            let rest = e.mask() & !(1 << v);
            let head = match e.head() {
                Some(h) if h != v => Some(if h > v { h - 1 } else { h }),
                _ => None,
            };
            edges.push(Edge::from_mask(squash(rest), head));
        }
        edges.sort_unstable();
        Ok(Pdg { n: self.n - 1, k: self.k - 1, edges })
    }

    /// The graph with vertex `v` deleted (indices above `v` shift down).
    pub fn delete_vertex(&self, v: usize) -> Result<Pdg> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let low = (1u32 << v) - 1;
        let squash = |m: u32| (m & low) | ((m >> 1) & !low);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !e.contains(v))
            .map(|e| Edge::from_mask(squash(e.mask()), e.head().map(|h| if h > v { h - 1 } else { h })))
            .collect();
        edges.sort_unstable();
        Ok(Pdg { n: self.n - 1, k: self.k, edges })
    }

    /// Canonical text encoding `n k ; e1 , e2 , ...`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Pdg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ;", self.n, self.k)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i == 0 {
                write!(f, " {e}")?;
            } else {
                write!(f, " , {e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Pdg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pdg> {
        let (head, body) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
        let mut nums = head.split_whitespace().map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        });
        let n = nums.next().ok_or_else(|| Error::Parse("missing n".into()))??;
        let k = nums.next().ok_or_else(|| Error::Parse("missing k".into()))??;
        if nums.next().is_some() {
            return Err(Error::Parse("extra tokens before ';'".into()));
        }
        let mut g = Pdg::new(n, k)?;
        if body.trim().is_empty() {
            return Ok(g);
        }
        for part in body.split(',') {
            let part = part.trim();
            let (verts, head) = match part.split_once('>') {
                Some((vs, h)) => {
                    let h = h.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad head in {part:?}")))?;
                    (vs, Some(h))
                }
                None => (part, None),
            };
            let vs = verts
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            g.add_edge(Edge::new(&vs, head)?)?;
        }
        Ok(g)
    }
}

/// Per-vertex shares of a 3-PDG: undirected edges through `v`, directed edges
/// through `v` pointing elsewhere, and edges pointing at `v`, each divided by
/// `C(n-1, 2)`.
pub fn link_decomposition(g: &Pdg, v: usize) -> Result<(Rational64, Rational64, Rational64)> {
    if g.k() != 3 {
        return Err(Error::UniformityMismatch(g.k(), 3));
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let denom = binomial(g.n() - 1, 2) as i64;
    if denom == 0 {
        return Err(Error::Unsupported("link decomposition needs n >= 3".into()));
    }
    let (mut a, mut b, mut c) = (0i64, 0i64, 0i64);
    for e in g.edges().iter().filter(|e| e.contains(v)) {
        match e.head() {
            None => a += 1,
            Some(h) if h == v => c += 1,
            Some(_) => b += 1,
        }
    }
    Ok((Rational64::new(a, denom), Rational64::new(b, denom), Rational64::new(c, denom)))
}

/// Injective embedding of `pattern` into `host` honouring directions: a
/// directed pattern edge needs a host edge pointing at the image of its
/// head; an undirected pattern edge accepts any host edge on the image set.
/// Returns `map[pattern_vertex] = host_vertex` when one exists.
pub fn find_embedding(host: &Pdg, pattern: &Pdg) -> Result<Option<Vec<usize>>> {
    if host.k() != pattern.k() {
        return Err(Error::UniformityMismatch(host.k(), pattern.k()));
    }
    Ok(Embedder::new(host, pattern).search())
}

pub fn contains_subgraph(host: &Pdg, pattern: &Pdg) -> Result<bool> {
    find_embedding(host, pattern).map(|m| m.is_some())
}

struct Embedder<'a> {
    host: &'a Pdg,
    host_deg: Vec<(u32, u32)>,
    order: Vec<usize>,
    pat_deg: Vec<(u32, u32)>,
    // edges completed when order[i] is placed
    closing: Vec<Vec<Edge>>,
    map: Vec<usize>,
    used: u32,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a Pdg, pattern: &'a Pdg) -> Self {
        let pn = pattern.n();
        let pat_deg = pattern.degree_profile();
        // greedy order: most edges back into the placed set, then highest degree
        let mut order = Vec::with_capacity(pn);
        let mut placed = 0u32;
        while order.len() < pn {
            let mut best: Option<(usize, (u32, u32))> = None;
            for v in (0..pn).filter(|v| placed & (1 << v) == 0) {
                let back = pattern
                    .edges()
                    .iter()
                    .filter(|e| e.contains(v) && e.mask() & placed != 0)
                    .count() as u32;
                let key = (back, pat_deg[v].0);
                if best.is_none_or(|(_, b)| key > b) {
                    best = Some((v, key));
                }
            }
            let v = best.unwrap().0;
            order.push(v);
            placed |= 1 << v;
        }
        let mut position = vec![0usize; pn];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); pn];
        for e in pattern.edges() {
            let last = e.vertices().map(|v| position[v]).max().unwrap();
            closing[last].push(*e);
        }
        Embedder {
            host,
            host_deg: host.degree_profile(),
            order,
            pat_deg,
            closing,
            map: vec![usize::MAX; pn],
            used: 0,
        }
    }

    fn search(mut self) -> Option<Vec<usize>> {
        if self.order.len() > self.host.n() {
            return None;
        }
        if self.dfs(0) {
            Some(self.map)
        } else {
            None
        }
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let pv = self.order[depth];
        let need = self.pat_deg[pv];
        for hv in 0..self.host.n() {
            if self.used & (1 << hv) != 0 {
                continue;
            }
            let have = self.host_deg[hv];
            if have.0 < need.0 || have.1 < need.1 {
                continue;
            }
            self.map[pv] = hv;
            self.used |= 1 << hv;
            if self.closing_ok(depth) && self.dfs(depth + 1) {
                return true;
            }
            self.used &= !(1 << hv);
            self.map[pv] = usize::MAX;
        }
        false
    }

    fn closing_ok(&self, depth: usize) -> bool {
        self.closing[depth].iter().all(|pe| {
            let mask = pe.vertices().fold(0u32, |m, v| m | (1 << self.map[v]));
            match self.host.edge_on(mask) {
                None => false,
                Some(he) => match pe.head() {
                    None => true,
                    Some(h) => he.head() == Some(self.map[h]),
                },
            }
        })
    }
}

/// Graph square: `xy` is an edge iff some `z` is adjacent to both.
pub fn square_graph(g: &Pdg) -> Result<Pdg> {
    let adj = simple_adjacency(g)?;
    let n = g.n();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if adj[x] & adj[y] != 0 {
                edges.push(Edge::from_mask((1 << x) | (1 << y), None));
            }
        }
    }
    edges.sort_unstable();
    Ok(Pdg::from_sorted_unchecked(n, 2, edges))
}

/// Number of edges lying in no triangle.
pub fn non_triangular_edges(g: &Pdg) -> Result<usize> {
    let adj = simple_adjacency(g)?;
    Ok(g
        .edges()
        .iter()
        .filter(|e| {
            let mut vs = e.vertices();
            let (x, y) = (vs.next().unwrap(), vs.next().unwrap());
            adj[x] & adj[y] == 0
        })
        .count())
}

fn simple_adjacency(g: &Pdg) -> Result<Vec<u32>> {
    if g.k() != 2 {
        return Err(Error::UniformityMismatch(g.k(), 2));
    }
    if g.e_d() > 0 {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    let mut adj = vec![0u32; g.n()];
    for e in g.edges() {
        let mut vs = e.vertices();
        let (x, y) = (vs.next().unwrap(), vs.next().unwrap());
        adj[x] |= 1 << y;
        adj[y] |= 1 << x;
    }
    Ok(adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Pdg {
        s.parse().unwrap()
    }

    #[test]
    fn make_edge_examples() {
        let e = Edge::new(&[1, 2, 3], Some(3)).unwrap();
        assert_eq!(e.head(), Some(3));
        assert_eq!(e.to_string(), "1 2 3>3");
        assert!(!Edge::new(&[1, 2, 3], None).unwrap().is_directed());
        assert_eq!(Edge::new(&[1, 2, 3], Some(5)), Err(Error::HeadOutsideEdge { head: 5 }));
        assert_eq!(Edge::new(&[1, 1, 3], None), Err(Error::RepeatedVertex(1)));
    }

    #[test]
    fn add_edge_rejects_reused_vertex_set() {
        let mut h = Pdg::new(5, 3).unwrap();
        h.add_edge(Edge::undirected(&[1, 2, 3]).unwrap()).unwrap();
        h.add_edge(Edge::directed(&[1, 2, 4], 4).unwrap()).unwrap();
        assert_eq!(h.edge_count(), 2);
        let err = h.add_edge(Edge::directed(&[1, 2, 3], 3).unwrap());
        assert!(matches!(err, Err(Error::DuplicateEdgeSet(_))));
        let err = h.add_edge(Edge::undirected(&[1, 2]).unwrap());
        assert!(matches!(err, Err(Error::WrongCardinality { .. })));
        let err = Pdg::new(3, 3).unwrap().add_edge(Edge::undirected(&[0, 1, 3]).unwrap());
        assert!(matches!(err, Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn densities_examples() {
        let d = Pdg::complete_undirected(6, 3).unwrap().densities();
        assert_eq!(d.alpha, Rational64::from_integer(1));
        assert_eq!(d.beta, Rational64::from_integer(0));
        let d = Pdg::new(6, 3).unwrap().densities();
        assert_eq!((d.alpha, d.beta), (Rational64::from_integer(0), Rational64::from_integer(0)));
    }

    #[test]
    fn text_round_trip() {
        let s = "7 4 ; 0 1 2 5>5 , 0 1 3 5>5";
        assert_eq!(g(s).to_string(), s);
        assert_eq!(g("3 2 ;").to_string(), "3 2 ;");
        assert_eq!(g("4 2 ; 2 3 , 0 1>0").to_string(), "4 2 ; 0 1>0 , 2 3");
        assert!("3 2".parse::<Pdg>().is_err());
        assert!("3 2 ; 0 1 , 1 0".parse::<Pdg>().is_err());
    }

    #[test]
    fn subgraph_examples() {
        // {12·3, 12·4} contains {123, 12·4} but not {1·23, 12·4}
        let host = g("5 3 ; 1 2 3>3 , 1 2 4>4");
        assert!(contains_subgraph(&host, &g("5 3 ; 1 2 3 , 1 2 4>4")).unwrap());
        assert!(!contains_subgraph(&host, &g("5 3 ; 1 2 3>2 , 1 2 4>4")).unwrap());
        // removing the middle edge of {123, 1·24, 12·5} leaves a copy of {123, 12·4}
        let host = g("6 3 ; 1 2 3 , 1 2 4>2 , 1 2 5>5");
        assert!(contains_subgraph(&host, &g("5 3 ; 1 2 3 , 1 2 4>4")).unwrap());
        assert!(matches!(
            contains_subgraph(&host, &Pdg::new(3, 2).unwrap()),
            Err(Error::UniformityMismatch(3, 2))
        ));
    }

    #[test]
    fn embedding_is_valid_map() {
        let host = g("6 3 ; 0 1 2 , 0 1 3>3 , 0 2 3 , 3 4 5>4");
        let pat = g("4 3 ; 0 1 2 , 0 1 3>3 , 0 2 3");
        let map = find_embedding(&host, &pat).unwrap().unwrap();
        for e in pat.edges() {
            let m = e.vertices().fold(0u32, |acc, v| acc | (1 << map[v]));
            let he = host.edge_on(m).unwrap();
            if let Some(h) = e.head() {
                assert_eq!(he.head(), Some(map[h]));
            }
        }
    }

    #[test]
    fn link_examples() {
        // T3 = {123, 12·4, 134} in 1-based labels, shifted to 0-based
        let t3 = g("4 3 ; 0 1 2 , 0 1 3>3 , 0 2 3");
        let l = t3.link(3).unwrap();
        assert_eq!(l.to_string(), "3 2 ; 0 1 , 0 2");
        let l = g("4 3 ; 1 2 3>3").link(1).unwrap();
        assert_eq!(l.to_string(), "3 2 ; 1 2>2");
        let l = g("5 3 ; 1 2 3").link(4).unwrap();
        assert_eq!(l.edge_count(), 0);
        assert_eq!((l.n(), l.k()), (4, 2));
    }

    #[test]
    fn link_decomposition_examples() {
        let n = 6;
        let denom = binomial(n - 1, 2) as i64;
        let h = Pdg::from_lists(n, 3, &[(&[1, 2, 3], None)]).unwrap();
        let (a, b, c) = link_decomposition(&h, 1).unwrap();
        assert_eq!((a, b, c), (Rational64::new(1, denom), 0.into(), 0.into()));
        let h = Pdg::from_lists(n, 3, &[(&[1, 2, 3], Some(3))]).unwrap();
        let (a, b, c) = link_decomposition(&h, 3).unwrap();
        assert_eq!((a, b, c), (0.into(), 0.into(), Rational64::new(1, denom)));
        let (_, b, _) = link_decomposition(&h, 1).unwrap();
        assert_eq!(b, Rational64::new(1, denom));
        assert!(link_decomposition(&Pdg::new(5, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn square_graph_examples() {
        let tri = g("3 2 ; 0 1 , 0 2 , 1 2");
        assert_eq!(square_graph(&tri).unwrap().edge_count(), 3);
        assert_eq!(non_triangular_edges(&tri).unwrap(), 0);
        let c4 = g("4 2 ; 0 1 , 1 2 , 2 3 , 0 3");
        assert_eq!(square_graph(&c4).unwrap().to_string(), "4 2 ; 0 2 , 1 3");
        assert_eq!(non_triangular_edges(&c4).unwrap(), 4);
        let single = g("2 2 ; 0 1");
        assert_eq!(square_graph(&single).unwrap().edge_count(), 0);
        assert_eq!(non_triangular_edges(&g("3 2 ; 0 1 , 1 2")).unwrap(), 2);
        assert!(square_graph(&g("3 2 ; 0 1>1")).is_err());
    }
}
