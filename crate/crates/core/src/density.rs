//! Numerical companions to the density arguments: the quadratic-constraint
//! maximum `f(ρ)`, a grid searcher for the six-variable polynomial system,
//! the simplex-count bound, the graph-square inequality, and hypergraph
//! orientations with bounded codegree.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pdg::{non_triangular_edges, square_graph, Pdg};

/// `max 2yz` over `x+y+z = 1`, all nonnegative, with `x² + 2xy + 2yz ≥ ρ`.
///
/// With `z = 1−x−y` the objective falls as `x` grows, so for fixed `y` the
/// best `x` is the smallest one meeting the constraint. That leaves a 1-D
/// problem in `y`, solved by a grid scan and golden-section refinement.
pub fn fm_density(rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Precondition(format!("rho = {rho} outside [0, 1]")));
    }
    let g = |y: f64| -> f64 {
        let x = (rho - 2.0 * y + 2.0 * y * y).max(0.0).sqrt();
        if x > 1.0 - y + 1e-15 {
            f64::NEG_INFINITY
        } else {
            2.0 * y * (1.0 - y - x).max(0.0)
        }
    };
    const STEPS: usize = 4096;
    let h = 1.0 / STEPS as f64;
    let mut best = (f64::NEG_INFINITY, 0usize);
    for i in 0..=STEPS {
        let v = g(i as f64 * h);
        if v > best.0 {
            best = (v, i);
        }
    }
    let (mut lo, mut hi) = (((best.1 as f64) - 1.0) * h, ((best.1 as f64) + 1.0) * h);
    lo = lo.max(0.0);
    hi = hi.min(1.0);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - phi * (hi - lo);
    let mut b = lo + phi * (hi - lo);
    let (mut ga, mut gb) = (g(a), g(b));
    while hi - lo > 1e-13 {
        if ga < gb {
            lo = a;
            a = b;
            ga = gb;
            b = lo + phi * (hi - lo);
            gb = g(b);
        } else {
            hi = b;
            b = a;
            gb = ga;
            a = hi - phi * (hi - lo);
            ga = g(a);
        }
    }
    Ok(best.0.max(ga).max(gb).max(g((lo + hi) / 2.0)).max(0.0))
}

/// A point of the system: the simplex coordinates and the weights `a, b, c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemPoint {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl fmt::Display for SystemPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {}, {})", self.x, self.y, self.z, self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum FeasibilityVerdict {
    /// Verified in exact arithmetic.
    Feasible(SystemPoint),
    /// Evidence only: the search saw no point with positive margin.
    NoPointFound {
        /// Finest grid step used.
        resolution: f64,
        /// Largest margin observed, where margin is the smaller slack of
        /// the two strict inequalities after optimizing `a, b, c`.
        best_margin: f64,
        best_at: (f64, f64),
        points_examined: u64,
    },
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible(_))
    }
}

trait Field:
    Clone
    + PartialOrd
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn origin() -> Self;
    fn unit() -> Self;
}

impl Field for f64 {
    fn origin() -> Self {
        0.0
    }
    fn unit() -> Self {
        1.0
    }
}

impl Field for BigRational {
    fn origin() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
}

/// The two strict forms `L1 = a + φ(b+c)` and `L2 = a + γb + c` with
/// `γ = (3φ−1)/2`.
fn forms<T: Field>(phi: &T, gamma: &T, w: &[T; 3]) -> (T, T) {
    let [a, b, c] = w.clone();
    let l1 = a.clone() + phi.clone() * (b.clone() + c.clone());
    let l2 = a + gamma.clone() * b + c;
    (l1, l2)
}

/// Optimizes `min(L1, L2)` over `{a+b+c ≤ q, b ≤ p, a,b,c ≥ 0}`.
///
/// The optimum of a minimum of two linear forms over a polytope sits at a
/// vertex or where `L1 = L2` crosses an edge, so scanning vertices and the
/// crossings on every vertex pair is exact.
fn best_weights<T: Field>(phi: &T, gamma: &T, q: &T, p: &T) -> ([T; 3], T) {
    let zero = T::origin();
    let m = if p < q { p.clone() } else { q.clone() };
    let qm = q.clone() - m.clone();
    let verts = [
        [zero.clone(), zero.clone(), zero.clone()],
        [q.clone(), zero.clone(), zero.clone()],
        [zero.clone(), zero.clone(), q.clone()],
        [zero.clone(), m.clone(), zero.clone()],
        [qm.clone(), m.clone(), zero.clone()],
        [zero.clone(), m, qm],
    ];
    let score = |w: &[T; 3]| {
        let (l1, l2) = forms(phi, gamma, w);
        if l1 < l2 {
            l1
        } else {
            l2
        }
    };
    let mut best = verts[0].clone();
    let mut best_score = score(&best);
    let mut consider = |w: [T; 3]| {
        let s = score(&w);
        if s > best_score {
            best_score = s;
            best = w;
        }
    };
    for v in &verts {
        consider(v.clone());
    }
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let (u1, u2) = forms(phi, gamma, &verts[i]);
            let (v1, v2) = forms(phi, gamma, &verts[j]);
            let du = u1 - u2;
            let dv = v1 - v2;
            if (du > zero && dv < zero) || (du < zero && dv > zero) {
                let s = du.clone() / (du - dv);
                let w = [0, 1, 2].map(|t| verts[i][t].clone() + s.clone() * (verts[j][t].clone() - verts[i][t].clone()));
                consider(w);
            }
        }
    }
    (best, best_score)
}

fn budgets<T: Field>(x: &T, y: &T) -> (T, T, T) {
    let two = T::unit() + T::unit();
    let z = T::unit() - x.clone() - y.clone();
    let p = two.clone() * y.clone() * z.clone();
    let q = x.clone() * x.clone() + two * x.clone() * y.clone() + p.clone();
    (z, q, p)
}

fn margin_f64(phi: f64, gamma: f64, x: f64, y: f64) -> f64 {
    let (z, q, p) = budgets(&x, &y);
    if x < 0.0 || y < 0.0 || z < 0.0 {
        return f64::NEG_INFINITY;
    }
    best_weights(&phi, &gamma, &q, &p).1 - 1.0
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Builds the optimal weights at an exact `(x, y)` and checks every
/// constraint; `None` if the point does not satisfy the strict ones.
fn exact_point(phi: &BigRational, x: BigRational, y: BigRational) -> Option<SystemPoint> {
    let gamma = (BigRational::from_integer(3.into()) * phi - BigRational::one()) / BigRational::from_integer(2.into());
    let (z, q, p) = budgets(&x, &y);
    let ([a, b, c], _) = best_weights(phi, &gamma, &q, &p);
    let point = SystemPoint { x, y, z, a, b, c };
    verify_point(phi, &point).then_some(point)
}

/// Substitutes a point into the full system in exact arithmetic.
pub fn verify_point(phi: &BigRational, pt: &SystemPoint) -> bool {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let gamma = (BigRational::from_integer(3.into()) * phi - &one) / &two;
    let coords = [&pt.x, &pt.y, &pt.z, &pt.a, &pt.b, &pt.c];
    if coords.iter().any(|v| v.is_negative()) || &pt.x + &pt.y + &pt.z != one {
        return false;
    }
    let quad = &pt.x * &pt.x + &two * &pt.x * &pt.y + &two * &pt.y * &pt.z;
    quad >= &pt.a + &pt.b + &pt.c
        && &two * &pt.y * &pt.z >= pt.b
        && &pt.a + phi * (&pt.b + &pt.c) > one
        && &pt.a + gamma * &pt.b + &pt.c > one
}

/// Grid search over `(x, y)` with `a, b, c` optimized exactly per point.
/// Grids double from step 1/2 until the step is at most `resolution`; the
/// first grid with a feasible point returns its lexicographically first
/// one. Otherwise the best grid points are polished by pattern search.
///
/// A `NoPointFound` verdict is evidence from a finite search, not a proof.
pub fn check_system(phi: Rational64, resolution: f64) -> Result<FeasibilityVerdict> {
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(Error::Precondition("resolution must be positive".into()));
    }
    let phi_big = big(phi);
    let phi_f = phi.to_f64().unwrap();
    let gamma_f = (3.0 * phi_f - 1.0) / 2.0;
    let mut examined = 0u64;
    let mut n = 2u64;
    loop {
        // slices by x; each returns its first feasible y index and best margin
        let slices: Vec<(Option<u64>, f64, u64)> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let x = i as f64 / n as f64;
                let mut first = None;
                let mut best = (f64::NEG_INFINITY, 0);
                for j in 0..=n - i {
                    let m = margin_f64(phi_f, gamma_f, x, j as f64 / n as f64);
                    if m > 0.0 && first.is_none() {
                        first = Some(j);
                    }
                    if m > best.0 {
                        best = (m, j);
                    }
                }
                (first, best.0, best.1)
            })
            .collect();
        examined += (n + 1) * (n + 2) / 2;
        for (i, s) in slices.iter().enumerate() {
            if let Some(j) = s.0 {
                let d = BigInt::from(n);
                let x = BigRational::new(BigInt::from(i), d.clone());
                let y = BigRational::new(BigInt::from(j), d);
                if let Some(pt) = exact_point(&phi_big, x, y) {
                    return Ok(FeasibilityVerdict::Feasible(pt));
                }
            }
        }
        if 1.0 / n as f64 <= resolution {
            return Ok(polish(&phi_big, phi_f, gamma_f, n, &slices, examined));
        }
        n *= 2;
    }
}

fn polish(phi: &BigRational, phi_f: f64, gamma_f: f64, n: u64, slices: &[(Option<u64>, f64, u64)], mut examined: u64) -> FeasibilityVerdict {
    let mut starts: Vec<(f64, usize, u64)> = slices.iter().enumerate().map(|(i, s)| (s.1, i, s.2)).collect();
    starts.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let step0 = 1.0 / n as f64;
    let mut best = (f64::NEG_INFINITY, (0.0, 0.0));
    for &(m0, i, j) in starts.iter().take(16) {
        let (mut x, mut y, mut m) = (i as f64 * step0, j as f64 * step0, m0);
        let mut step = step0;
        while step > 1e-12 {
            let mut moved = false;
            for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
                let (nx, ny) = (x + dx * step, y + dy * step);
                let nm = margin_f64(phi_f, gamma_f, nx, ny);
                examined += 1;
                if nm > m {
                    (x, y, m) = (nx, ny, nm);
                    moved = true;
                }
            }
            if !moved {
                step /= 2.0;
            }
        }
        if m > 0.0 {
            let (Some(xr), Some(yr)) = (BigRational::from_float(x), BigRational::from_float(y)) else { continue };
            if let Some(pt) = exact_point(phi, xr, yr) {
                return FeasibilityVerdict::Feasible(pt);
            }
        }
        if m > best.0 {
            best = (m, (x, y));
        }
    }
    FeasibilityVerdict::NoPointFound { resolution: step0, best_margin: best.0, best_at: best.1, points_examined: examined }
}

/// Bisects on `φ` between an infeasible `lo` and a feasible `hi` until the
/// bracket is at most `width`. Returns the final bracket.
pub fn phi_star_bracket(lo: Rational64, hi: Rational64, width: Rational64, resolution: f64) -> Result<(Rational64, Rational64)> {
    if check_system(lo, resolution)?.is_feasible() || !check_system(hi, resolution)?.is_feasible() {
        return Err(Error::Precondition("bracket must go from no point found to feasible".into()));
    }
    let (mut lo, mut hi) = (lo, hi);
    let two = Rational64::from_integer(2);
    while hi - lo > width {
        let mid = (lo + hi) / two;
        if check_system(mid, resolution)?.is_feasible() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

/// A k-uniform hypergraph with edges as vertex bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<u64>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: impl IntoIterator<Item = u64>) -> Result<Hypergraph> {
        if n > 64 {
            return Err(Error::Unsupported(format!("{n} vertices exceeds 64")));
        }
        let mut es: Vec<u64> = Vec::new();
        for e in edges {
            if e.count_ones() as usize != k {
                return Err(Error::WrongCardinality { expected: k, got: e.count_ones() as usize });
            }
            if n < 64 && e >> n != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - e.leading_zeros() as usize, n });
            }
            es.push(e);
        }
        es.sort_unstable();
        es.dedup();
        Ok(Hypergraph { n, k, edges: es })
    }

    /// One edge per line, vertices separated by whitespace; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut edges = Vec::new();
        let mut k = None;
        let mut n = 0;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let mut mask = 0u64;
            let mut size = 0;
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse(format!("bad vertex {tok:?}")))?;
                if v >= 64 {
                    return Err(Error::VertexOutOfRange { vertex: v, n: 64 });
                }
                if mask & (1 << v) != 0 {
                    return Err(Error::RepeatedVertex(v));
                }
                mask |= 1 << v;
                size += 1;
                n = n.max(v + 1);
            }
            match k {
                None => k = Some(size),
                Some(k) if k != size => return Err(Error::WrongCardinality { expected: k, got: size }),
                _ => {}
            }
            edges.push(mask);
        }
        Hypergraph::new(n, k.unwrap_or(0), edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.edges {
            let vs: Vec<String> = ones64(e).map(|v| v.to_string()).collect();
            writeln!(f, "{}", vs.join(" "))?;
        }
        Ok(())
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

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// (k+1)-sets all of whose k-subsets are edges. For each edge `e` the
/// completing vertices are the intersection of the neighbourhoods of the
/// (k−1)-subsets of `e`.
pub fn count_simplices(h: &Hypergraph) -> u64 {
    if h.k == 0 {
        return 0;
    }
    let mut nbrs: HashMap<u64, u64> = HashMap::new();
    for &e in &h.edges {
        for v in ones64(e) {
            *nbrs.entry(e & !(1 << v)).or_default() |= 1 << v;
        }
    }
    let mut count = 0u64;
    for &e in &h.edges {
        let top = 63 - e.leading_zeros();
        let above = if top == 63 { 0 } else { !((1u64 << (top + 1)) - 1) };
        let common = ones64(e).fold(above, |acc, v| acc & nbrs.get(&(e & !(1 << v))).copied().unwrap_or(0));
        count += common.count_ones() as u64;
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KkReport {
    pub edges: u64,
    pub simplices: u64,
    pub holds: bool,
}

/// `s ≤ β^{(k+1)/k} n^{k+1}/(k+1)!` with `β = k!·e/n^k`, checked as
/// `((k+1)!·s)^k ≤ (k!·e)^{k+1}` in integers.
pub fn kruskal_katona_check(h: &Hypergraph) -> KkReport {
    let s = count_simplices(h);
    let e = h.edges.len() as u64;
    let k = h.k as u32;
    let lhs = (factorial(h.k + 1) * BigUint::from(s)).pow(k);
    let rhs = (factorial(h.k) * BigUint::from(e)).pow(k + 1);
    KkReport { edges: e, simplices: s, holds: lhs <= rhs }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FurediReport {
    pub edges: usize,
    pub square_edges: usize,
    pub non_triangular: usize,
    pub holds: bool,
}

/// `e(G²) ≥ e(G) − ⌊n/2⌋` for an undirected 2-graph.
pub fn furedi_check(g: &Pdg) -> Result<FurediReport> {
    let sq = square_graph(g)?;
    let report = FurediReport {
        edges: g.edge_count(),
        square_edges: sq.edge_count(),
        non_triangular: non_triangular_edges(g)?,
        holds: sq.edge_count() + g.n() / 2 >= g.edge_count(),
    };
    Ok(report)
}

/// Heads for every edge such that each (ℓ−1)-set `S` is `E − head` for at
/// most `bound` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub heads: Vec<usize>,
    pub bound: usize,
    pub max_codegree: usize,
}

/// `⌈(ℓ−1)!/(ℓ!)^{(ℓ−1)/ℓ} · e^{1/ℓ}⌉`, as the least `L` with
/// `L^ℓ (ℓ!)^{ℓ−1} ≥ ((ℓ−1)!)^ℓ e`.
pub fn orientation_bound(l: usize, e: usize) -> usize {
    if l == 0 || e == 0 {
        return 0;
    }
    let rhs = factorial(l - 1).pow(l as u32) * BigUint::from(e);
    let scale = factorial(l).pow(l as u32 - 1);
    let mut lo = 0usize;
    let mut hi = 1usize;
    while BigUint::from(hi).pow(l as u32) * &scale < rhs {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if BigUint::from(mid).pow(l as u32) * &scale >= rhs {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Orients `h` with codegree at most the lemma bound, via a capacitated
/// bipartite matching from edges to (ℓ−1)-sets.
pub fn orient_hypergraph(h: &Hypergraph) -> Result<Orientation> {
    let bound = orientation_bound(h.k, h.edges.len());
    orient_with_bound(h, bound)?
        .ok_or_else(|| Error::Precondition(format!("no orientation within codegree {bound}")))
}

/// Smallest codegree bound any orientation achieves, with a witness.
pub fn min_codegree_orientation(h: &Hypergraph) -> Result<Orientation> {
    let upper = orientation_bound(h.k, h.edges.len());
    for bound in 0..=upper {
        if let Some(o) = orient_with_bound(h, bound)? {
            return Ok(o);
        }
    }
    Err(Error::Precondition(format!("no orientation within codegree {upper}")))
}

pub fn orient_with_bound(h: &Hypergraph, bound: usize) -> Result<Option<Orientation>> {
    if h.edges.is_empty() {
        return Ok(Some(Orientation { heads: Vec::new(), bound, max_codegree: 0 }));
    }
    if h.k == 0 {
        return Err(Error::Precondition("edges need at least one vertex".into()));
    }
    let mut slot_of: HashMap<u64, usize> = HashMap::new();
    let options: Vec<Vec<usize>> = h
        .edges
        .iter()
        .map(|&e| {
            ones64(e)
                .map(|v| {
                    let next = slot_of.len();
                    *slot_of.entry(e & !(1 << v)).or_insert(next)
                })
                .collect()
        })
        .collect();
    let mut load: Vec<Vec<usize>> = vec![Vec::new(); slot_of.len()];
    let mut choice: Vec<Option<usize>> = vec![None; h.edges.len()];
    for e in 0..h.edges.len() {
        let mut seen = vec![false; slot_of.len()];
        if !augment(e, &options, &mut load, &mut choice, &mut seen, bound) {
            return Ok(None);
        }
    }
    let heads: Vec<usize> = h
        .edges
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let slot = choice[i].expect("every edge matched");
            let pos = options[i].iter().position(|&s| s == slot).unwrap();
            ones64(e).nth(pos).unwrap()
        })
        .collect();
    let max_codegree = codegree_audit(h, &heads);
    Ok(Some(Orientation { heads, bound, max_codegree }))
}

/// Kuhn-style augmenting path where each slot holds up to `cap` edges.
fn augment(
    e: usize,
    options: &[Vec<usize>],
    load: &mut [Vec<usize>],
    choice: &mut [Option<usize>],
    seen: &mut [bool],
    cap: usize,
) -> bool {
    for &s in &options[e] {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        if load[s].len() < cap {
            load[s].push(e);
            choice[e] = Some(s);
            return true;
        }
        for pos in 0..load[s].len() {
            let other = load[s][pos];
            if augment(other, options, load, choice, seen, cap) {
                // `other` moved elsewhere; take its place
                load[s][pos] = e;
                choice[e] = Some(s);
                return true;
            }
        }
    }
    false
}

/// Largest number of edges directed away from a common (ℓ−1)-set.
pub fn codegree_audit(h: &Hypergraph, heads: &[usize]) -> usize {
    let mut count: HashMap<u64, usize> = HashMap::new();
    for (&e, &v) in h.edges.iter().zip(heads) {
        assert!(e & (1 << v) != 0, "head outside edge");
        *count.entry(e & !(1 << v)).or_default() += 1;
    }
    count.values().copied().max().unwrap_or(0)
}

/// Undirected 2-graph view for the square inequality.
pub fn graph_from_hypergraph(h: &Hypergraph) -> Result<Pdg> {
    if h.k != 2 {
        return Err(Error::UniformityMismatch(h.k, 2));
    }
    let edges = h.edges.iter().map(|&e| crate::pdg::Edge::from_mask(e as u32, None));
    Pdg::from_edges(h.n.max(2), 2, edges)
}
