//! Exhaustive ground-truth solvers for small inputs.

use crate::analysis::{is_decomposition, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{Instance, Solution, TargetGraph};

pub const ASSIGNMENT_LIMIT: f64 = 1e8;

fn check_size(sizes: impl Iterator<Item = usize>) -> Result<()> {
    let product: f64 = sizes.map(|s| s.max(1) as f64).product();
    if product > ASSIGNMENT_LIMIT {
        return Err(Error::TooLarge(format!("{:.3e} assignments", product)));
    }
    Ok(())
}

/// Edges to earlier vertices, per vertex.
fn back_edges(inst: &Instance) -> Vec<Vec<usize>> {
    let mut back = vec![Vec::new(); inst.n];
    for &(u, v) in &inst.edges {
        back[u.max(v)].push(u.min(v));
    }
    back
}

struct VdSearch<'a> {
    h: &'a TargetGraph,
    inst: &'a Instance,
    back: Vec<Vec<usize>>,
    cur: Vec<Option<usize>>,
    best: Vec<Option<usize>>,
    best_cost: usize,
}

impl VdSearch<'_> {
    fn go(&mut self, v: usize, cost: usize) {
        if cost >= self.best_cost {
            return;
        }
        if v == self.inst.n {
            self.best_cost = cost;
            self.best = self.cur.clone();
            return;
        }
        for &a in &self.inst.lists[v] {
            let ok = self.back[v]
                .iter()
                .all(|&u| self.cur[u].map_or(true, |b| self.h.adj(a, b)));
            if ok {
                self.cur[v] = Some(a);
                self.go(v + 1, cost);
            }
        }
        self.cur[v] = None;
        self.go(v + 1, cost + 1);
    }
}

/// Minimum vertex deletion by exhaustive search over L(v) ∪ {×}.
pub fn oracle_vd(h: &TargetGraph, inst: &Instance) -> Result<Solution> {
    check_size(inst.lists.iter().map(|l| l.len() + 1))?;
    let mut s = VdSearch {
        h,
        inst,
        back: back_edges(inst),
        cur: vec![None; inst.n],
        best: vec![None; inst.n],
        best_cost: inst.n + 1,
    };
    s.go(0, 0);
    Ok(Solution::from_vd_map(s.best, "oracle"))
}

struct EdSearch<'a> {
    h: &'a TargetGraph,
    inst: &'a Instance,
    back: Vec<Vec<usize>>,
    cur: Vec<usize>,
    best: Vec<usize>,
    best_cost: usize,
}

impl EdSearch<'_> {
    fn go(&mut self, v: usize, cost: usize) {
        if cost >= self.best_cost {
            return;
        }
        if v == self.inst.n {
            self.best_cost = cost;
            self.best = self.cur.clone();
            return;
        }
        for &a in &self.inst.lists[v] {
            let extra = self.back[v]
                .iter()
                .filter(|&&u| !self.h.adj(a, self.cur[u]))
                .count();
            self.cur[v] = a;
            self.go(v + 1, cost + extra);
        }
    }
}

/// Minimum edge deletion by exhaustive search over list assignments.
pub fn oracle_ed(h: &TargetGraph, inst: &Instance) -> Result<Solution> {
    if let Some(v) = inst.lists.iter().position(|l| l.is_empty()) {
        return Err(Error::Infeasible(format!(
            "vertex {} has an empty list",
            v + 1
        )));
    }
    check_size(inst.lists.iter().map(|l| l.len()))?;
    let mut s = EdSearch {
        h,
        inst,
        back: back_edges(inst),
        cur: vec![0; inst.n],
        best: vec![0; inst.n],
        best_cost: inst.edges.len() + 1,
    };
    s.go(0, 0);
    Ok(Solution::from_ed_map(h, inst, s.best, "oracle"))
}

/// Every decomposition of H, by trying all 3^n partitions.
pub fn oracle_decomposition(h: &TargetGraph) -> Result<Vec<Decomposition>> {
    if h.n() > 16 {
        return Err(Error::TooLarge(format!("3^{} partitions", h.n())));
    }
    let n = h.n();
    let mut out = Vec::new();
    let mut part = vec![0u8; n];
    loop {
        let mut d = Decomposition {
            a: vec![],
            b: vec![],
            c: vec![],
        };
        for (v, &p) in part.iter().enumerate() {
            match p {
                0 => d.a.push(v),
                1 => d.b.push(v),
                _ => d.c.push(v),
            }
        }
        if is_decomposition(h, &d) {
            out.push(d);
        }
        let mut i = 0;
        while i < n && part[i] == 2 {
            part[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(out);
        }
        part[i] += 1;
    }
}

/// Oracles for the classic problems on a plain graph `(n, edges)`, by subset
/// enumeration. Limited to 24 vertices.
pub mod classic {
    fn edge_masks(edges: &[(usize, usize)]) -> Vec<(u32, u32)> {
        edges.iter().map(|&(u, v)| (1u32 << u, 1u32 << v)).collect()
    }

    fn guard(n: usize) {
        assert!(n <= 24, "classic oracles enumerate 2^n subsets");
    }

    pub fn vertex_cover(n: usize, edges: &[(usize, usize)]) -> usize {
        guard(n);
        let em = edge_masks(edges);
        (0u32..1 << n)
            .filter(|&s| em.iter().all(|&(a, b)| s & (a | b) != 0))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    pub fn max_cut(n: usize, edges: &[(usize, usize)]) -> usize {
        guard(n);
        let em = edge_masks(edges);
        (0u32..1 << n)
            .map(|s| {
                em.iter()
                    .filter(|&&(a, b)| (s & a != 0) != (s & b != 0))
                    .count()
            })
            .max()
            .unwrap()
    }

    fn is_bipartite_after(n: usize, edges: &[(usize, usize)], removed: u32) -> bool {
        let mut colour = vec![u8::MAX; n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if removed >> u & 1 == 0 && removed >> v & 1 == 0 {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        stack.push(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn odd_cycle_transversal(n: usize, edges: &[(usize, usize)]) -> usize {
        guard(n);
        (0u32..1 << n)
            .filter(|&s| is_bipartite_after(n, edges, s))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn components(
        n: usize,
        edges: &[(usize, usize)],
        removed_vertices: u32,
        kept_edge: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            let mut y = x;
            while c[y] != r {
                let nx = c[y];
                c[y] = r;
                y = nx;
            }
            r
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if kept_edge(i) && removed_vertices >> u & 1 == 0 && removed_vertices >> v & 1 == 0 {
                let (a, b) = (find(&mut comp, u), find(&mut comp, v));
                comp[a] = b;
            }
        }
        (0..n).map(|x| find(&mut comp, x)).collect()
    }

    fn terminals_separated(comp: &[usize], terminals: &[usize]) -> bool {
        terminals
            .iter()
            .enumerate()
            .all(|(i, &s)| terminals[i + 1..].iter().all(|&t| comp[s] != comp[t]))
    }

    /// Fewest edges whose removal separates all terminals pairwise.
    pub fn edge_multiway_cut(n: usize, edges: &[(usize, usize)], terminals: &[usize]) -> usize {
        assert!(
            edges.len() <= 24,
            "edge multiway oracle enumerates 2^|E| subsets"
        );
        let m = edges.len();
        (0u32..1 << m)
            .filter(|&s| {
                terminals_separated(&components(n, edges, 0, |i| s >> i & 1 == 0), terminals)
            })
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    /// Fewest non-terminal vertices whose removal separates all terminals.
    /// `None` when two terminals are adjacent.
    pub fn vertex_multiway_cut(
        n: usize,
        edges: &[(usize, usize)],
        terminals: &[usize],
    ) -> Option<usize> {
        guard(n);
        let tmask: u32 = terminals.iter().map(|&t| 1u32 << t).fold(0, |a, b| a | b);
        (0u32..1 << n)
            .filter(|&s| s & tmask == 0)
            .filter(|&s| terminals_separated(&components(n, edges, s, |_| true), terminals))
            .map(|s| s.count_ones() as usize)
            .min()
    }

    /// Fewest vertices to delete so that the rest is properly q-colourable.
    pub fn coloring_vd(n: usize, edges: &[(usize, usize)], q: usize) -> usize {
        guard(n);
        (0u32..1 << n)
            .filter(|&s| colourable(n, edges, q, s))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    /// Fewest edges to delete so that the graph is properly q-colourable.
    pub fn coloring_ed(n: usize, edges: &[(usize, usize)], q: usize) -> usize {
        let mut col = vec![0usize; n];
        let mut best = edges.len();
        loop {
            let bad = edges.iter().filter(|&&(u, v)| col[u] == col[v]).count();
            best = best.min(bad);
            let mut i = 0;
            while i < n && col[i] == q - 1 {
                col[i] = 0;
                i += 1;
            }
            if i == n {
                return best;
            }
            col[i] += 1;
        }
    }

    /// Minimum of Σ unary(v, f(v)) + Σ pair(f(u), f(v)) over labelings
    /// f: V → 0..q, where `None` forbids a choice. The vertices outside a
    /// greedy independent set are labelled by branch and bound; each vertex
    /// of the independent set then picks its best label on its own, which is
    /// exact since its neighbours are already labelled.
    fn min_labeling(
        n: usize,
        edges: &[(usize, usize)],
        q: usize,
        unary: impl Fn(usize, usize) -> Option<u64>,
        pair: impl Fn(usize, usize) -> Option<u64>,
    ) -> Option<u64> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let domain: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..q).filter(|&l| unary(v, l).is_some()).collect())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (domain[v].len() > 1, adj[v].len()));
        let mut free = vec![false; n];
        for &v in &order {
            if domain[v].len() > 1 && adj[v].iter().all(|&u| !free[u]) {
                free[v] = true;
            }
        }
        // Fixed vertices, most constrained first.
        let mut fixed: Vec<usize> = (0..n).filter(|&v| !free[v]).collect();
        fixed.sort_by_key(|&v| (domain[v].len(), std::cmp::Reverse(adj[v].len())));
        let assignments: f64 = fixed
            .iter()
            .map(|&v| domain[v].len().max(1) as f64)
            .product();
        assert!(
            assignments <= 1e10,
            "labeling oracle limited to 10^10 assignments"
        );

        struct Search<'a, U, P> {
            adj: &'a [Vec<usize>],
            domain: &'a [Vec<usize>],
            free: &'a [bool],
            fixed: &'a [usize],
            unary: &'a U,
            pair: &'a P,
            label: Vec<Option<usize>>,
            best: Option<u64>,
        }
        impl<U: Fn(usize, usize) -> Option<u64>, P: Fn(usize, usize) -> Option<u64>> Search<'_, U, P> {
            fn go(&mut self, i: usize, cost: u64) {
                if self.best.is_some_and(|b| cost >= b) {
                    return;
                }
                if i == self.fixed.len() {
                    let mut total = cost;
                    for v in (0..self.free.len()).filter(|&v| self.free[v]) {
                        let local = self.domain[v]
                            .iter()
                            .filter_map(|&l| {
                                self.adj[v].iter().try_fold((self.unary)(v, l)?, |acc, &u| {
                                    Some(acc + (self.pair)(l, self.label[u].unwrap())?)
                                })
                            })
                            .min();
                        match local {
                            Some(c) => total += c,
                            None => return,
                        }
                    }
                    self.best = Some(self.best.map_or(total, |b| b.min(total)));
                    return;
                }
                let (v, domain) = (self.fixed[i], self.domain);
                for &l in &domain[v] {
                    let step = self.adj[v]
                        .iter()
                        .filter_map(|&u| self.label[u])
                        .try_fold((self.unary)(v, l).unwrap(), |acc, m| {
                            Some(acc + (self.pair)(l, m)?)
                        });
                    if let Some(step) = step {
                        self.label[v] = Some(l);
                        self.go(i + 1, cost + step);
                        self.label[v] = None;
                    }
                }
            }
        }
        let mut s = Search {
            adj: &adj,
            domain: &domain,
            free: &free,
            fixed: &fixed,
            unary: &unary,
            pair: &pair,
            label: vec![None; n],
            best: None,
        };
        s.go(0, 0);
        s.best
    }

    /// Maximum cut by labelings; handles graphs with many degree-2
    /// vertices well beyond the reach of [`max_cut`].
    pub fn max_cut_labels(n: usize, edges: &[(usize, usize)]) -> usize {
        let same =
            min_labeling(n, edges, 2, |_, _| Some(0), |a, b| Some(u64::from(a == b))).unwrap();
        edges.len() - same as usize
    }

    /// Edge multiway cut as the cheapest labeling with terminal i on label i.
    pub fn edge_multiway_cut_labels(
        n: usize,
        edges: &[(usize, usize)],
        terminals: &[usize],
    ) -> usize {
        let k = terminals.len();
        let unary = |v: usize, l: usize| match terminals.iter().position(|&t| t == v) {
            Some(i) if i != l => None,
            _ => Some(0),
        };
        min_labeling(n, edges, k, unary, |a, b| Some(u64::from(a != b))).unwrap() as usize
    }

    /// Vertex multiway cut by labelings with an extra "deleted" label.
    pub fn vertex_multiway_cut_labels(
        n: usize,
        edges: &[(usize, usize)],
        terminals: &[usize],
    ) -> Option<usize> {
        let k = terminals.len();
        let unary = |v: usize, l: usize| match terminals.iter().position(|&t| t == v) {
            Some(i) => (i == l).then_some(0),
            None => Some(u64::from(l == k)),
        };
        let pair = |a: usize, b: usize| (a == k || b == k || a == b).then_some(0);
        min_labeling(n, edges, k + 1, unary, pair).map(|c| c as usize)
    }

    fn colourable(n: usize, edges: &[(usize, usize)], q: usize, removed: u32) -> bool {
        let mut col = vec![usize::MAX; n];
        fn go(
            v: usize,
            n: usize,
            edges: &[(usize, usize)],
            q: usize,
            removed: u32,
            col: &mut Vec<usize>,
        ) -> bool {
            if v == n {
                return true;
            }
            if removed >> v & 1 == 1 {
                return go(v + 1, n, edges, q, removed, col);
            }
            for c in 0..q {
                let ok = edges.iter().all(|&(a, b)| {
                    let other = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        return true;
                    };
                    other > v || removed >> other & 1 == 1 || col[other] != c
                });
                if ok {
                    col[v] = c;
                    if go(v + 1, n, edges, q, removed, col) {
                        return true;
                    }
                }
            }
            false
        }
        go(0, n, edges, q, removed, &mut col)
    }
}
