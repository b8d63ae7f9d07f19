use kpdg::bits::subsets;
use kpdg::forbidden::is_tk_free;
use kpdg::{Edge, Pdg};
use num_rational::Rational64;

/// 4-sets `S ∪ {h}` directed at `h ∈ {5, 6}`, for 3-sets `S` of `0..5`
/// other than those in `skip`.
fn two_heads(skip: &[u32]) -> Pdg {
    let mut edges = Vec::new();
    for s in subsets(5, 3).filter(|s| !skip.contains(s)) {
        for h in [5usize, 6] {
            edges.push(Edge::from_mask(s | 1 << h, Some(h)));
        }
    }
    Pdg::from_edges(7, 4, edges).unwrap()
}

fn objective(g: &Pdg) -> Rational64 {
    let d = g.densities();
    d.alpha + Rational64::new(7, 4) * d.beta
}

#[test]
fn printed_graph_is_not_tight() {
    // vertices 1..7 in the printed list are 0..6 here; 345 becomes {2, 3, 4}
    let printed = two_heads(&[0b11100]);
    assert_eq!(printed.edge_count(), 18);
    assert!(is_tk_free(&printed));
    assert_eq!(objective(&printed), Rational64::new(9, 10));
}

#[test]
fn completed_graph_is_tight() {
    let full = two_heads(&[]);
    assert_eq!(full.edge_count(), 20);
    assert!(is_tk_free(&full));
    assert_eq!(objective(&full), Rational64::from_integer(1));
}

#[test]
fn star_at_one_vertex_is_tight() {
    let edges = subsets(7, 4).filter(|m| m & 1 != 0).map(|m| Edge::from_mask(m, Some(0)));
    let star = Pdg::from_edges(7, 4, edges).unwrap();
    assert_eq!(star.edge_count(), 20);
    assert!(is_tk_free(&star));
    assert_eq!(objective(&star), Rational64::from_integer(1));
}
