#![allow(dead_code)]

use kpdg::bits::subsets;
use kpdg::{Edge, Pdg};
use proptest::prelude::*;

/// Random k-PDG: one state per k-set, 0 = absent, 1 = undirected, 2.. = head.
pub fn pdg_strategy(n: usize, k: usize) -> impl Strategy<Value = Pdg> {
    let slots: Vec<u32> = subsets(n, k).collect();
    let len = slots.len();
    proptest::collection::vec(0usize..(k + 2), len).prop_map(move |states| {
        let edges = slots.iter().zip(&states).filter_map(|(&m, &s)| match s {
            0 => None,
            1 => Some(Edge::from_mask(m, None)),
            s => Some(Edge::from_mask(m, kpdg::bits::ones(m).nth(s - 2))),
        });
        Pdg::from_edges(n, k, edges).unwrap()
    })
}

pub fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

pub fn sparse_pdg_strategy(n: usize, k: usize, absent_weight: u32) -> impl Strategy<Value = Pdg> {
    let slots: Vec<u32> = subsets(n, k).collect();
    let len = slots.len();
    let state = prop_oneof![
        absent_weight => Just(0usize),
        1 => 1usize..(k + 2),
    ];
    proptest::collection::vec(state, len).prop_map(move |states| {
        let edges = slots.iter().zip(&states).filter_map(|(&m, &s)| match s {
            0 => None,
            1 => Some(Edge::from_mask(m, None)),
            s => Some(Edge::from_mask(m, kpdg::bits::ones(m).nth(s - 2))),
        });
        Pdg::from_edges(n, k, edges).unwrap()
    })
}
