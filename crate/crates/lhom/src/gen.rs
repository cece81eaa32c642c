//! Named targets and seeded random generators.

use rand::Rng;

use crate::analysis::{classify_ed, classify_vd, find_decomposition, has_obstruction};
use crate::graph::{Instance, TargetGraph};

pub fn loopless_k1() -> TargetGraph {
    TargetGraph::new(1)
}

pub fn irreflexive_complete(q: usize) -> TargetGraph {
    let mut h = TargetGraph::new(q);
    for u in 0..q {
        for v in u + 1..q {
            h.add_edge(u, v);
        }
    }
    h
}

pub fn reflexive_complete(q: usize) -> TargetGraph {
    let mut h = irreflexive_complete(q);
    for v in 0..q {
        h.add_edge(v, v);
    }
    h
}

pub fn independent_reflexive(q: usize) -> TargetGraph {
    let mut h = TargetGraph::new(q);
    for v in 0..q {
        h.add_edge(v, v);
    }
    h
}

pub fn reflexive_path(n: usize) -> TargetGraph {
    let mut h = independent_reflexive(n);
    for v in 1..n {
        h.add_edge(v - 1, v);
    }
    h
}

pub fn reflexive_cycle(n: usize) -> TargetGraph {
    let mut h = reflexive_path(n);
    h.add_edge(n - 1, 0);
    h
}

/// Target with a decomposition (A, B, C) where i(H) = k and i•(H) = 3.
///
/// A holds independent irreflexive a_1..a_k and a reflexive clique
/// b_1..b_{2k-1}, with a_i adjacent to b_i..b_{i+k-1}. B is the reflexive
/// triangle u_1, u_2, u_3 joined to all of A; C holds irreflexive c_1..c_3
/// with c_i adjacent to u_i only.
pub fn decomposable_i_bullet_three(k: usize) -> TargetGraph {
    assert!(k >= 1);
    let nb = 2 * k - 1;
    let a = |i: usize| i;
    let b = |i: usize| k + i;
    let u = |i: usize| k + nb + i;
    let c = |i: usize| k + nb + 3 + i;
    let n = k + nb + 6;
    let mut h = TargetGraph::new(n);
    for i in 0..nb {
        for j in i..nb {
            h.add_edge(b(i), b(j));
        }
    }
    for i in 0..k {
        for j in i..i + k {
            h.add_edge(a(i), b(j));
        }
    }
    for i in 0..3 {
        for j in i..3 {
            h.add_edge(u(i), u(j));
        }
        for x in 0..k + nb {
            h.add_edge(u(i), x);
        }
        h.add_edge(c(i), u(i));
    }
    let mut names: Vec<String> = (1..=k).map(|i| format!("a{}", i)).collect();
    names.extend((1..=nb).map(|i| format!("b{}", i)));
    names.extend((1..=3).map(|i| format!("u{}", i)));
    names.extend((1..=3).map(|i| format!("c{}", i)));
    h.with_names(names)
}

/// Target with a decomposition where A is an irreflexive edge, so i•(H) = 2,
/// while the reflexive clique v_0..v_{k+1}, w_0..w_{k+1} and the irreflexive
/// u_1..u_k (u_i adjacent to v_j for j ≥ i and to w_j for j ≤ i) give i(H) = k.
pub fn decomposable_i_bullet_two(k: usize) -> TargetGraph {
    assert!(k >= 1);
    let v = |j: usize| 2 + j;
    let w = |j: usize| 2 + (k + 2) + j;
    let u = |i: usize| 2 + 2 * (k + 2) + (i - 1);
    let n = 2 + 2 * (k + 2) + k;
    let mut h = TargetGraph::new(n);
    h.add_edge(0, 1);
    let clique: Vec<usize> = (0..k + 2).map(v).chain((0..k + 2).map(w)).collect();
    for (i, &x) in clique.iter().enumerate() {
        for &y in &clique[i..] {
            h.add_edge(x, y);
        }
        h.add_edge(0, x);
        h.add_edge(1, x);
    }
    for i in 1..=k {
        for j in 0..k + 2 {
            if j >= i {
                h.add_edge(u(i), v(j));
            }
            if j <= i {
                h.add_edge(u(i), w(j));
            }
        }
    }
    let mut names = vec!["x".to_string(), "y".to_string()];
    names.extend((0..k + 2).map(|j| format!("v{}", j)));
    names.extend((0..k + 2).map(|j| format!("w{}", j)));
    names.extend((1..=k).map(|i| format!("u{}", i)));
    h.with_names(names)
}

/// The small targets used for the dichotomy table, by name.
pub fn canonical_corpus() -> Vec<(&'static str, TargetGraph)> {
    vec![
        ("loopless-k1", loopless_k1()),
        ("irreflexive-k2", irreflexive_complete(2)),
        ("reflexive-k2", reflexive_complete(2)),
        ("reflexive-p3", reflexive_path(3)),
        ("reflexive-c4", reflexive_cycle(4)),
        ("reflexive-c5", reflexive_cycle(5)),
        ("independent-reflexive-3", independent_reflexive(3)),
    ]
}

pub fn random_target<R: Rng>(rng: &mut R, n: usize, p_edge: f64, p_loop: f64) -> TargetGraph {
    let mut h = TargetGraph::new(n);
    for u in 0..n {
        if rng.gen_bool(p_loop) {
            h.add_edge(u, u);
        }
        for v in u + 1..n {
            if rng.gen_bool(p_edge) {
                h.add_edge(u, v);
            }
        }
    }
    h
}

pub fn random_reflexive<R: Rng>(rng: &mut R, n: usize, p_edge: f64) -> TargetGraph {
    random_target(rng, n, p_edge, 1.0)
}

/// Rejection-samples a target satisfying `accept`, with 1..=max_n vertices.
pub fn sample_target<R: Rng>(
    rng: &mut R,
    min_n: usize,
    max_n: usize,
    accept: impl Fn(&TargetGraph) -> bool,
) -> TargetGraph {
    loop {
        let n = rng.gen_range(min_n..=max_n);
        let p_edge = rng.gen_range(0.2..0.9);
        let p_loop = [0.0, 0.5, 1.0][rng.gen_range(0..3)];
        let h = random_target(rng, n, p_edge, p_loop);
        if accept(&h) {
            return h;
        }
    }
}

pub fn sample_vd_poly<R: Rng>(rng: &mut R, max_n: usize) -> TargetGraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let p_edge = rng.gen_range(0.3..0.95);
        let h = random_reflexive(rng, n, p_edge);
        if classify_vd(&h).is_poly() {
            return h;
        }
    }
}

pub fn sample_ed_poly<R: Rng>(rng: &mut R, max_n: usize) -> TargetGraph {
    sample_target(rng, 1, max_n, |h| classify_ed(h).is_poly())
}

pub fn sample_undecomposable<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> TargetGraph {
    sample_target(rng, min_n, max_n, |h| find_decomposition(h).is_none())
}

/// Strong split targets: a reflexive clique and an irreflexive independent
/// set joined by random edges, kept when undecomposable with an obstruction.
pub fn sample_strong_split<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> TargetGraph {
    loop {
        let n = rng.gen_range(min_n..=max_n);
        let k = rng.gen_range(1..n.max(2));
        let p = rng.gen_range(0.2..0.8);
        let mut h = TargetGraph::new(n);
        for u in 0..n {
            for v in u..n {
                let joined = match (u < k, v < k) {
                    (true, true) => true,
                    (false, false) => false,
                    _ => rng.gen_bool(p),
                };
                if joined {
                    h.add_edge(u, v);
                }
            }
        }
        if has_obstruction(&h) && find_decomposition(&h).is_none() {
            return h;
        }
    }
}

/// Decomposable targets that contain an obstruction, so the ED splitting
/// path is exercised.
pub fn sample_decomposable<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> TargetGraph {
    sample_target(rng, min_n, max_n, |h| {
        has_obstruction(h) && find_decomposition(h).is_some()
    })
}

/// Random instance over a target with `h_size` vertices. Each list keeps
/// every target vertex with probability `p_list`.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    h_size: usize,
    n: usize,
    p_edge: f64,
    p_list: f64,
) -> Instance {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p_edge) {
                edges.push((u, v));
            }
        }
    }
    let lists = (0..n)
        .map(|_| (0..h_size).filter(|_| rng.gen_bool(p_list)).collect())
        .collect();
    Instance {
        n,
        edges,
        lists,
        budget: None,
    }
}

/// Like [`random_instance`] but never produces an empty list.
pub fn random_instance_nonempty<R: Rng>(
    rng: &mut R,
    h_size: usize,
    n: usize,
    p_edge: f64,
    p_list: f64,
) -> Instance {
    let mut inst = random_instance(rng, h_size, n, p_edge, p_list);
    for l in &mut inst.lists {
        if l.is_empty() {
            l.push(rng.gen_range(0..h_size));
        }
    }
    inst
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p_edge: f64) -> Vec<(usize, usize)> {
    random_instance(rng, 1, n, p_edge, 1.0).edges
}

pub fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .map(|i| ((i + 1) % n).min(i))
        .zip((0..n).map(|i| ((i + 1) % n).max(i)))
        .collect()
}

pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{i_bullet, is_decomposition, Decomposition};
    use crate::lists::i_of;

    #[test]
    fn three_case_carries_its_decomposition() {
        let k = 3;
        let h = decomposable_i_bullet_three(k);
        let nb = 2 * k - 1;
        let d = Decomposition {
            a: (0..k + nb).collect(),
            b: (k + nb..k + nb + 3).collect(),
            c: (k + nb + 3..k + nb + 6).collect(),
        };
        assert!(is_decomposition(&h, &d));
        assert_eq!(i_of(&h), k.max(3));
    }

    #[test]
    fn two_case_carries_its_decomposition() {
        let k = 3;
        let h = decomposable_i_bullet_two(k);
        let d = Decomposition {
            a: vec![0, 1],
            b: (2..2 + 2 * (k + 2)).collect(),
            c: (2 + 2 * (k + 2)..h.n()).collect(),
        };
        assert!(is_decomposition(&h, &d));
        assert_eq!(i_bullet(&h).0, 2);
    }

    #[test]
    fn cycle_edges_are_normalized() {
        assert_eq!(cycle_edges(3), vec![(0, 1), (1, 2), (0, 2)]);
    }
}
