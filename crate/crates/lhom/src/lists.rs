//! Domination, list reduction and maximum incomparable sets.

use crate::graph::{members, Instance, TargetGraph, VertexSet};

/// True when `v` beats `u` inside a list: Γ(u) ⊊ Γ(v), or equal
/// neighbourhoods with `v` the lower index.
fn beats(h: &TargetGraph, v: usize, u: usize) -> bool {
    if v == u || !h.dominates(v, u) {
        return false;
    }
    h.gamma(u) != h.gamma(v) || v < u
}

/// Drops every dominated element from a list. The beat relation is a strict
/// order, so one pass against the original list suffices.
pub fn reduce_list(h: &TargetGraph, list: &[usize]) -> Vec<usize> {
    list.iter()
        .copied()
        .filter(|&u| !list.iter().any(|&v| beats(h, v, u)))
        .collect()
}

pub fn reduce_lists(h: &TargetGraph, inst: &Instance) -> Instance {
    let mut out = inst.clone();
    for l in &mut out.lists {
        *l = reduce_list(h, l);
    }
    out
}

pub fn is_reduced(h: &TargetGraph, inst: &Instance) -> bool {
    inst.lists.iter().all(|l| h.is_incomparable_set(l))
}

/// Maximum incomparable subset of `within`, as a maximum clique of the
/// incomparability graph. Ties resolve to the lexicographically first set.
pub fn max_incomparable_within(h: &TargetGraph, within: VertexSet) -> Vec<usize> {
    let n = h.n();
    let mut inc = vec![0u64; n];
    for u in members(within) {
        for v in members(within) {
            if u != v && h.incomparable(u, v) {
                inc[u] |= 1 << v;
            }
        }
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    extend_clique(&inc, within, &mut current, &mut best);
    best
}

fn extend_clique(inc: &[u64], candidates: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if current.len() + candidates.count_ones() as usize <= best.len() {
        return;
    }
    let mut rest = candidates;
    while rest != 0 {
        if current.len() + rest.count_ones() as usize <= best.len() {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        current.push(v);
        extend_clique(inc, rest & inc[v], current, best);
        current.pop();
    }
}

/// i(H) together with a witness set.
pub fn max_incomparable(h: &TargetGraph) -> (usize, Vec<usize>) {
    let w = max_incomparable_within(h, h.all());
    (w.len(), w)
}

pub fn i_of(h: &TargetGraph) -> usize {
    max_incomparable(h).0
}
