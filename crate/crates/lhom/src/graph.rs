//! Target graphs, instances and solutions.

use std::fmt;

use crate::error::{Error, Result};

/// Bitmask over the vertices of a target graph.
pub type VertexSet = u64;

pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub fn set_of(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | (1 << v))
}

/// The fixed target graph H. Loops are allowed; `gamma(v)` contains `v`
/// exactly when `v` has a loop.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TargetGraph {
    gamma: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

impl TargetGraph {
    pub const MAX_VERTICES: usize = 64;

    pub fn new(n: usize) -> Self {
        assert!(
            (1..=Self::MAX_VERTICES).contains(&n),
            "target graphs have 1..=64 vertices"
        );
        TargetGraph {
            gamma: vec![0; n],
            names: None,
        }
    }

    /// Builds a graph from an edge list where `(v, v)` denotes a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut h = Self::new(n);
        for &(u, v) in edges {
            h.add_edge(u, v);
        }
        h
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.gamma[u] |= 1 << v;
        self.gamma[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.gamma[u] &= !(1 << v);
        self.gamma[v] &= !(1 << u);
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n());
        self.names = Some(names);
        self
    }

    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => (v + 1).to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    pub fn all(&self) -> VertexSet {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn adj(&self, u: usize, v: usize) -> bool {
        self.gamma[u] >> v & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.adj(v, v)
    }

    pub fn gamma(&self, v: usize) -> VertexSet {
        self.gamma[v]
    }

    pub fn reflexive_vertices(&self) -> VertexSet {
        (0..self.n())
            .filter(|&v| self.has_loop(v))
            .fold(0, |acc, v| acc | 1 << v)
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive_vertices() == self.all()
    }

    /// True when `v` dominates `u`, i.e. Γ(u) ⊆ Γ(v).
    pub fn dominates(&self, v: usize, u: usize) -> bool {
        self.gamma[u] & !self.gamma[v] == 0
    }

    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        !self.dominates(u, v) && !self.dominates(v, u)
    }

    pub fn is_incomparable_set(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && self.incomparable(u, v))
        })
    }

    /// Edges with `u <= v`, loops included.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in u..self.n() {
                if self.adj(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The subgraph induced by `vertices`, re-indexed in the given order.
    pub fn induced(&self, vertices: &[usize]) -> TargetGraph {
        let mut h = TargetGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i) {
                if self.adj(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        if let Some(names) = &self.names {
            h.names = Some(vertices.iter().map(|&v| names[v].clone()).collect());
        }
        h
    }
}

impl fmt::Debug for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// An input graph G (simple, loopless) together with lists over V(H).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    /// Edges as `(u, v)` with `u < v`, in input order.
    pub edges: Vec<(usize, usize)>,
    /// Sorted lists of target vertices.
    pub lists: Vec<Vec<usize>>,
    pub budget: Option<u64>,
}

impl Instance {
    /// An instance with every list equal to V(H).
    pub fn new(n: usize, h_size: usize) -> Self {
        Instance {
            n,
            edges: Vec::new(),
            lists: vec![(0..h_size).collect(); n],
            budget: None,
        }
    }

    pub fn with_lists(n: usize, edges: &[(usize, usize)], lists: Vec<Vec<usize>>) -> Result<Self> {
        let mut inst = Instance {
            n,
            edges: Vec::new(),
            lists,
            budget: None,
        };
        for &(u, v) in edges {
            inst.add_edge(u, v)?;
        }
        for l in &mut inst.lists {
            l.sort_unstable();
            l.dedup();
        }
        Ok(inst)
    }

    pub fn add_vertex(&mut self, list: Vec<usize>) -> usize {
        self.lists.push(list);
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Precondition(format!(
                "edge {{{},{}}} out of range",
                u, v
            )));
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {}", u)));
        }
        let e = (u.min(v), u.max(v));
        if self.edges.contains(&e) {
            return Err(Error::Precondition(format!(
                "duplicate edge {{{},{}}}",
                e.0, e.1
            )));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Checks the structural invariants against a target graph.
    pub fn validate(&self, h: &TargetGraph) -> Result<()> {
        if self.lists.len() != self.n {
            return Err(Error::Precondition("one list per vertex required".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &self.edges {
            if u >= v || v >= self.n {
                return Err(Error::Precondition(format!(
                    "malformed edge {{{},{}}}",
                    u, v
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Precondition(format!(
                    "duplicate edge {{{},{}}}",
                    u, v
                )));
            }
        }
        for (v, l) in self.lists.iter().enumerate() {
            if l.iter().any(|&x| x >= h.n()) {
                return Err(Error::Precondition(format!(
                    "list of vertex {} leaves V(H)",
                    v
                )));
            }
        }
        Ok(())
    }

    /// The subinstance induced by `vertices` (re-indexed in the given order).
    pub fn induced(&self, vertices: &[usize]) -> (Instance, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u].min(index[v]), index[u].max(index[v])))
            .collect();
        let lists = vertices.iter().map(|&v| self.lists[v].clone()).collect();
        (
            Instance {
                n: vertices.len(),
                edges,
                lists,
                budget: None,
            },
            index,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Vd,
    Ed,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Vd => "vd",
            Mode::Ed => "ed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deleted {
    Vertices(Vec<usize>),
    Edges(Vec<(usize, usize)>),
}

impl Deleted {
    pub fn len(&self) -> usize {
        match self {
            Deleted::Vertices(v) => v.len(),
            Deleted::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub width: Option<usize>,
    pub max_bag_states: Option<usize>,
    pub flow_value: Option<u64>,
    pub gadget_base_cost: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub mode: Mode,
    pub cost: u64,
    pub deleted: Deleted,
    /// Image of every surviving vertex; `None` for deleted vertices.
    pub hom: Vec<Option<usize>>,
    pub algorithm: String,
    pub stats: Stats,
}

impl Solution {
    /// Builds a VD solution from a partial map (`None` = deleted).
    pub fn from_vd_map(hom: Vec<Option<usize>>, algorithm: &str) -> Self {
        let deleted: Vec<usize> = (0..hom.len()).filter(|&v| hom[v].is_none()).collect();
        Solution {
            mode: Mode::Vd,
            cost: deleted.len() as u64,
            deleted: Deleted::Vertices(deleted),
            hom,
            algorithm: algorithm.to_string(),
            stats: Stats::default(),
        }
    }

    /// Builds an ED solution from a total map; violated edges are deleted.
    pub fn from_ed_map(h: &TargetGraph, inst: &Instance, map: Vec<usize>, algorithm: &str) -> Self {
        let deleted: Vec<(usize, usize)> = inst
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| !h.adj(map[u], map[v]))
            .collect();
        Solution {
            mode: Mode::Ed,
            cost: deleted.len() as u64,
            deleted: Deleted::Edges(deleted),
            hom: map.into_iter().map(Some).collect(),
            algorithm: algorithm.to_string(),
            stats: Stats::default(),
        }
    }

    /// Verifies that the solution is a valid list homomorphism after deletion.
    pub fn check(&self, h: &TargetGraph, inst: &Instance) -> Result<()> {
        let bad = |msg: String| Err(Error::Verification(msg));
        if self.hom.len() != inst.n {
            return bad("map has wrong length".into());
        }
        if self.cost != self.deleted.len() as u64 {
            return bad("cost differs from the deleted set size".into());
        }
        match &self.deleted {
            Deleted::Vertices(del) => {
                for v in 0..inst.n {
                    if del.contains(&v) != self.hom[v].is_none() {
                        return bad(format!("vertex {} deletion status inconsistent", v));
                    }
                }
                for &(u, v) in &inst.edges {
                    if let (Some(a), Some(b)) = (self.hom[u], self.hom[v]) {
                        if !h.adj(a, b) {
                            return bad(format!("edge {{{},{}}} maps to a non-edge", u, v));
                        }
                    }
                }
            }
            Deleted::Edges(del) => {
                for &(u, v) in &inst.edges {
                    let (a, b) = match (self.hom[u], self.hom[v]) {
                        (Some(a), Some(b)) => (a, b),
                        _ => return bad("edge deletion maps every vertex".into()),
                    };
                    if !h.adj(a, b) && !del.contains(&(u, v)) {
                        return bad(format!("edge {{{},{}}} maps to a non-edge", u, v));
                    }
                }
                if del.iter().any(|e| !inst.edges.contains(e)) {
                    return bad("deleted edge not in G".into());
                }
            }
        }
        for v in 0..inst.n {
            if let Some(a) = self.hom[v] {
                if !inst.lists[v].contains(&a) {
                    return bad(format!("vertex {} mapped outside its list", v));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domination_on_reflexive_path() {
        let h = TargetGraph::from_edges(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert!(h.dominates(1, 0));
        assert!(h.dominates(1, 2));
        assert!(!h.dominates(0, 2));
        assert!(h.dominates(2, 2));
    }

    #[test]
    fn irreflexive_edge_is_incomparable() {
        let h = TargetGraph::from_edges(2, &[(0, 1)]);
        assert!(!h.dominates(0, 1));
        assert!(h.incomparable(0, 1));
    }

    #[test]
    fn induced_keeps_loops() {
        let h = TargetGraph::from_edges(3, &[(0, 0), (0, 2), (1, 2)]);
        let s = h.induced(&[2, 0]);
        assert!(s.adj(0, 1));
        assert!(s.has_loop(1));
        assert!(!s.has_loop(0));
    }

    #[test]
    fn instance_rejects_loops_and_duplicates() {
        let mut g = Instance::new(3, 1);
        assert!(g.add_edge(0, 0).is_err());
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
    }
}
