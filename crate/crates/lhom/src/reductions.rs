//! Encoders and decoders between list-homomorphism deletion and classic
//! graph problems, and the coloring-deletion hardness pipelines.

use std::collections::BTreeSet;

use crate::analysis::{find_decomposition, has_obstruction};
use crate::error::{Error, Result};
use crate::formats::{ClassicGraph, HubCore};
use crate::gadget::ed::neq;
use crate::gadget::vd::build_s_prohibitor;
use crate::gadget::{cost_table, realization, Gadget};
use crate::gen::{independent_reflexive, irreflexive_complete, loopless_k1};
use crate::graph::{Instance, Mode, TargetGraph};

fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph {
            n,
            edges: edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u.min(v), u.max(v)));
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if v >= self.n || u == v || !seen.insert((u, v)) {
                return pre(format!("bad edge {{{},{}}}", u + 1, v + 1));
            }
        }
        Ok(())
    }

    fn check_vertices(&self, vs: &[usize], what: &str) -> Result<()> {
        let set: BTreeSet<usize> = vs.iter().copied().collect();
        if set.len() != vs.len() || vs.iter().any(|&v| v >= self.n) {
            return pre(format!("{} must be distinct vertices of G", what));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicInstance {
    VertexCover(Graph),
    MaxCut(Graph),
    /// Odd cycle transversal; `left` and `right` are optionally pinned sides.
    Oct {
        g: Graph,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    StMinCut {
        g: Graph,
        s: usize,
        t: usize,
    },
    EdgeMultiway {
        g: Graph,
        terminals: Vec<usize>,
    },
    VertexMultiway {
        g: Graph,
        terminals: Vec<usize>,
    },
    ColoringVd {
        g: Graph,
        q: usize,
        k: u64,
    },
    ColoringEd {
        g: Graph,
        q: usize,
        z: u64,
    },
}

impl ClassicInstance {
    pub fn graph(&self) -> &Graph {
        match self {
            ClassicInstance::VertexCover(g) | ClassicInstance::MaxCut(g) => g,
            ClassicInstance::Oct { g, .. }
            | ClassicInstance::StMinCut { g, .. }
            | ClassicInstance::EdgeMultiway { g, .. }
            | ClassicInstance::VertexMultiway { g, .. }
            | ClassicInstance::ColoringVd { g, .. }
            | ClassicInstance::ColoringEd { g, .. } => g,
        }
    }

    /// The deletion problem this instance encodes into.
    pub fn mode(&self) -> Mode {
        match self {
            ClassicInstance::VertexCover(_)
            | ClassicInstance::Oct { .. }
            | ClassicInstance::VertexMultiway { .. }
            | ClassicInstance::ColoringVd { .. } => Mode::Vd,
            _ => Mode::Ed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.graph();
        g.validate()?;
        match self {
            ClassicInstance::Oct { left, right, .. } => {
                g.check_vertices(&[left.as_slice(), right].concat(), "pinned sides")?;
            }
            ClassicInstance::StMinCut { s, t, .. } => g.check_vertices(&[*s, *t], "s and t")?,
            ClassicInstance::EdgeMultiway { terminals, .. }
            | ClassicInstance::VertexMultiway { terminals, .. } => {
                g.check_vertices(terminals, "terminals")?;
                if terminals.is_empty() {
                    return pre("at least one terminal is required");
                }
            }
            ClassicInstance::ColoringVd { q, .. } | ClassicInstance::ColoringEd { q, .. }
                if *q == 0 =>
            {
                return pre("q must be positive");
            }
            _ => {}
        }
        Ok(())
    }

    /// Builds an instance from a parsed classic file. `variant` is one of
    /// vc, maxcut, oct, stcut, edge-multiway, vertex-multiway, coloring-vd,
    /// coloring-ed.
    pub fn from_file(variant: &str, c: &ClassicGraph) -> Result<Self> {
        let g = Graph::new(c.n, &c.edges);
        let need_q = || {
            c.colours
                .ok_or_else(|| Error::Precondition("missing `q` line".into()))
        };
        let inst = match variant {
            "vc" => ClassicInstance::VertexCover(g),
            "maxcut" => ClassicInstance::MaxCut(g),
            "oct" => ClassicInstance::Oct {
                g,
                left: c.left.clone(),
                right: c.right.clone(),
            },
            "stcut" => {
                let s = c
                    .source
                    .ok_or_else(|| Error::Precondition("missing `s` line".into()))?;
                match c.terminals.as_slice() {
                    &[t] => ClassicInstance::StMinCut { g, s, t },
                    _ => return pre("s-t cut needs exactly one `t` line"),
                }
            }
            "edge-multiway" => ClassicInstance::EdgeMultiway {
                g,
                terminals: c.terminals.clone(),
            },
            "vertex-multiway" => ClassicInstance::VertexMultiway {
                g,
                terminals: c.terminals.clone(),
            },
            "coloring-vd" => ClassicInstance::ColoringVd {
                g,
                q: need_q()?,
                k: c.budget.unwrap_or(0),
            },
            "coloring-ed" => ClassicInstance::ColoringEd {
                g,
                q: need_q()?,
                z: c.budget.unwrap_or(0),
            },
            other => return pre(format!("unknown variant `{}`", other)),
        };
        inst.validate()?;
        Ok(inst)
    }
}

/// Replaces every terminal by n degree-1 copies per neighbour. Returns the
/// new graph (non-terminals keep their relative order first) and the
/// terminal index of each copy.
fn split_terminals(g: &Graph, terminals: &[usize]) -> Result<(Graph, Vec<Option<usize>>)> {
    let term = |v: usize| terminals.iter().position(|&t| t == v);
    let mut index = vec![usize::MAX; g.n];
    let mut out = Graph {
        n: 0,
        edges: vec![],
    };
    let mut owner = Vec::new();
    for v in (0..g.n).filter(|&v| term(v).is_none()) {
        index[v] = out.add_vertex();
        owner.push(None);
    }
    for &(u, v) in &g.edges {
        match (term(u), term(v)) {
            (None, None) => out.add_edge(index[u], index[v]),
            (Some(_), Some(_)) => {
                return pre(format!("terminals {} and {} are adjacent", u + 1, v + 1))
            }
            (Some(i), None) | (None, Some(i)) => {
                let w = if term(u).is_some() { v } else { u };
                for _ in 0..g.n {
                    let c = out.add_vertex();
                    owner.push(Some(i));
                    out.add_edge(c, index[w]);
                }
            }
        }
    }
    Ok((out, owner))
}

/// The target graph and list assignment of each classic problem.
pub fn encode_classic(c: &ClassicInstance) -> Result<(TargetGraph, Instance)> {
    c.validate()?;
    let g = c.graph();
    let with = |h: TargetGraph, lists: Vec<Vec<usize>>| -> Result<(TargetGraph, Instance)> {
        let inst = Instance::with_lists(g.n, &g.edges, lists)?;
        Ok((h, inst))
    };
    match c {
        ClassicInstance::VertexCover(_) => with(loopless_k1(), vec![vec![0]; g.n]),
        ClassicInstance::MaxCut(_) => with(irreflexive_complete(2), vec![vec![0, 1]; g.n]),
        ClassicInstance::Oct { left, right, .. } => {
            let lists = (0..g.n)
                .map(|v| match (left.contains(&v), right.contains(&v)) {
                    (true, _) => vec![0],
                    (_, true) => vec![1],
                    _ => vec![0, 1],
                })
                .collect();
            with(irreflexive_complete(2), lists)
        }
        ClassicInstance::StMinCut { s, t, .. } => {
            let lists = (0..g.n)
                .map(|v| {
                    if v == *s {
                        vec![0]
                    } else if v == *t {
                        vec![1]
                    } else {
                        vec![0, 1]
                    }
                })
                .collect();
            with(independent_reflexive(2), lists)
        }
        ClassicInstance::EdgeMultiway { terminals, .. } => {
            let k = terminals.len();
            let lists = (0..g.n)
                .map(|v| match terminals.iter().position(|&t| t == v) {
                    Some(i) => vec![i],
                    None => (0..k).collect(),
                })
                .collect();
            with(independent_reflexive(k), lists)
        }
        ClassicInstance::VertexMultiway { terminals, .. } => {
            let k = terminals.len();
            let (split, owner) = split_terminals(g, terminals)?;
            let lists = owner
                .iter()
                .map(|o| o.map_or_else(|| (0..k).collect(), |i| vec![i]))
                .collect();
            let inst = Instance::with_lists(split.n, &split.edges, lists)?;
            Ok((independent_reflexive(k), inst))
        }
        ClassicInstance::ColoringVd { q, k, .. } => {
            let (h, mut inst) = with(irreflexive_complete(*q), vec![(0..*q).collect(); g.n])?;
            inst.budget = Some(*k);
            Ok((h, inst))
        }
        ClassicInstance::ColoringEd { q, z, .. } => {
            let (h, mut inst) = with(irreflexive_complete(*q), vec![(0..*q).collect(); g.n])?;
            inst.budget = Some(*z);
            Ok((h, inst))
        }
    }
}

/// A classic instance whose optimum is the source optimum plus `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub instance: ClassicInstance,
    pub offset: i64,
}

fn independent_size(h: &TargetGraph) -> Result<usize> {
    let k = h.n();
    let ok = k >= 1 && (0..k).all(|u| h.gamma(u) == 1 << u);
    if !ok {
        return pre("target must be independent reflexive vertices");
    }
    Ok(k)
}

fn nonempty_lists(h: &TargetGraph, inst: &Instance) -> Result<()> {
    inst.validate(h)?;
    if let Some(v) = inst.lists.iter().position(|l| l.is_empty()) {
        return pre(format!("vertex {} has an empty list", v + 1));
    }
    Ok(())
}

/// LHomVD over k independent reflexive vertices as vertex multiway cut: k
/// terminals and, per vertex v, a clique of size |L(v)| joined to v and
/// matched to the terminals of L(v). Offset Σ(|L(v)| − 1).
pub fn decode_to_vertex_multiway(h: &TargetGraph, inst: &Instance) -> Result<Decoded> {
    let k = independent_size(h)?;
    nonempty_lists(h, inst)?;
    let mut g = Graph::new(inst.n, &inst.edges);
    let terminals: Vec<usize> = (0..k).map(|_| g.add_vertex()).collect();
    let mut offset = 0i64;
    for v in 0..inst.n {
        let clique: Vec<usize> = inst.lists[v].iter().map(|_| g.add_vertex()).collect();
        for (i, &c) in clique.iter().enumerate() {
            g.add_edge(c, v);
            g.add_edge(c, terminals[inst.lists[v][i]]);
            for &d in &clique[i + 1..] {
                g.add_edge(c, d);
            }
        }
        offset += clique.len() as i64 - 1;
    }
    Ok(Decoded {
        instance: ClassicInstance::VertexMultiway { g, terminals },
        offset,
    })
}

/// LHomED over k independent reflexive vertices as edge multiway cut: d(v)
/// paths of length 2 from v to each terminal of L(v). Offset
/// Σ(|L(v)| − 1)·d(v).
pub fn decode_to_edge_multiway(h: &TargetGraph, inst: &Instance) -> Result<Decoded> {
    let k = independent_size(h)?;
    nonempty_lists(h, inst)?;
    let mut g = Graph::new(inst.n, &inst.edges);
    let terminals: Vec<usize> = (0..k).map(|_| g.add_vertex()).collect();
    let mut offset = 0i64;
    for v in 0..inst.n {
        let d = inst.degree(v);
        for &i in &inst.lists[v] {
            for _ in 0..d {
                let m = g.add_vertex();
                g.add_edge(v, m);
                g.add_edge(m, terminals[i]);
            }
        }
        offset += (inst.lists[v].len() as i64 - 1) * d as i64;
    }
    Ok(Decoded {
        instance: ClassicInstance::EdgeMultiway { g, terminals },
        offset,
    })
}

/// Max cut with `left` pinned to one side and `right` to the other, as
/// plain max cut: a new apex w joined to each v ∈ left by d(v) paths of
/// length 2 and to each v ∈ right by d(v) paths of length 3. The offset is
/// the cut edges those paths always contribute.
pub fn annotated_maxcut_to_maxcut(g: &Graph, left: &[usize], right: &[usize]) -> Result<Decoded> {
    g.validate()?;
    g.check_vertices(&[left, right].concat(), "pinned sides")?;
    let mut out = g.clone();
    let w = out.add_vertex();
    let mut offset = 0i64;
    for (side, len) in [(left, 2), (right, 3)] {
        for &v in side {
            let d = g.degree(v);
            for _ in 0..d {
                let mut prev = w;
                for _ in 1..len {
                    let m = out.add_vertex();
                    out.add_edge(prev, m);
                    prev = m;
                }
                out.add_edge(prev, v);
            }
            offset += (len * d) as i64;
        }
    }
    Ok(Decoded {
        instance: ClassicInstance::MaxCut(out),
        offset,
    })
}

/// An instance produced by a coloring pipeline. The original vertices of G
/// keep their indices; each gadget copy adds `gadget_internal` vertices.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub instance: Instance,
    pub alpha: u64,
    pub budget: u64,
    pub gadget_internal: usize,
}

fn substitute(g: &Graph, s: &[usize], gadget: &Gadget) -> Instance {
    let mut out = Gadget::empty();
    for _ in 0..g.n {
        out.add_vertex(s.to_vec());
    }
    let (x, y) = (gadget.portals[0], gadget.portals[1]);
    for &(u, v) in &g.edges {
        out.glue(gadget, &[(x, u), (y, v)]);
    }
    out.graph
}

fn check_colours(s: &[usize], q: usize) -> Result<Vec<usize>> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != q || q < 2 {
        return pre(format!(
            "S must have exactly q ≥ 2 elements, got {}",
            s.len()
        ));
    }
    Ok(s)
}

/// q-Coloring vertex deletion as LHomVD(H) with q = |S|: every vertex gets
/// list S and every edge becomes a fresh S-prohibitor; k′ = k + α|E(G)|.
pub fn coloring_vd_to_lhomvd(h: &TargetGraph, s: &[usize], g: &Graph, k: u64) -> Result<Pipeline> {
    g.validate()?;
    let s = check_colours(s, s.len())?;
    if !h.is_incomparable_set(&s) {
        return pre("S must be incomparable");
    }
    let p = build_s_prohibitor(h, &s)?;
    let mut instance = substitute(g, &s, &p.gadget);
    let budget = k + p.base * g.edges.len() as u64;
    instance.budget = Some(budget);
    Ok(Pipeline {
        instance,
        alpha: p.base,
        budget,
        gadget_internal: p.gadget.n() - 2,
    })
}

/// q-Coloring edge deletion as LHomED(H) with q = |S|, substituting a copy
/// of a gadget 1-realizing NEQ(S) for every edge; z′ = α|E(G)| + z.
pub fn coloring_ed_to_lhomed(
    h: &TargetGraph,
    s: &[usize],
    g: &Graph,
    z: u64,
    neq_gadget: &Gadget,
) -> Result<Pipeline> {
    g.validate()?;
    let s = check_colours(s, s.len())?;
    if find_decomposition(h).is_some() || !has_obstruction(h) {
        return pre("target must be undecomposable with an obstruction");
    }
    if neq_gadget.portals.len() != 2
        || neq_gadget.portal_list(0) != s
        || neq_gadget.portal_list(1) != s
    {
        return pre("the NEQ gadget needs two portals with list S");
    }
    let table = cost_table(h, neq_gadget, Mode::Ed)?;
    let alpha = match realization(&table, &neq(&s)) {
        Some(r) if r.omega == Some(1) => r.k,
        _ => return pre("gadget does not 1-realize NEQ(S)"),
    };
    let mut instance = substitute(g, &s, neq_gadget);
    let budget = alpha * g.edges.len() as u64 + z;
    instance.budget = Some(budget);
    Ok(Pipeline {
        instance,
        alpha,
        budget,
        gadget_internal: neq_gadget.n() - 2,
    })
}

/// The hub core a pipeline output inherits from a (σ, δ) core of G.
/// A component C of G − Q absorbs the internal vertices of the gadgets on
/// edges inside C (at most C(σ,2)) and between C and Q (at most σ·δ);
/// gadgets on edges inside Q form components with two core neighbours.
pub fn lift_core(core: &HubCore, gadget_internal: usize) -> HubCore {
    let s = core.sigma;
    let sigma =
        (s + (s * s.saturating_sub(1) / 2 + s * core.delta) * gadget_internal).max(gadget_internal);
    HubCore {
        q: core.q.clone(),
        sigma,
        delta: core.delta.max(2),
    }
}
