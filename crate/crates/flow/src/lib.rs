//! Integer max-flow / min-cut (Dinic) with parallel arcs and unbreakable arcs.
//!
//! Unbreakable arcs get a finite weight one larger than the sum of all
//! finite capacities, so a cut of smaller value never severs one of them.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("every source-sink cut severs an unbreakable arc")]
    Uncuttable,
    #[error("source and sink must be distinct nodes")]
    SameTerminals,
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Unbreakable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub value: u64,
    /// Nodes reachable from the source in the final residual graph.
    pub source_side: Vec<bool>,
    /// Indices (into `FlowNetwork::arcs`) of arcs leaving the source side.
    pub cut_arcs: Vec<usize>,
    /// The weight used for unbreakable arcs.
    pub unbreakable_weight: u64,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self, FlowError> {
        if source >= nodes {
            return Err(FlowError::NodeOutOfRange(source));
        }
        if sink >= nodes {
            return Err(FlowError::NodeOutOfRange(sink));
        }
        if source == sink {
            return Err(FlowError::SameTerminals);
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Adds a node and returns its index.
    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> usize {
        assert!(
            tail < self.nodes && head < self.nodes,
            "arc endpoint out of range"
        );
        self.arcs.push(Arc {
            tail,
            head,
            capacity,
        });
        self.arcs.len() - 1
    }

    pub fn add_unit(&mut self, tail: usize, head: usize) -> usize {
        self.add_arc(tail, head, Capacity::Finite(1))
    }

    pub fn add_unbreakable(&mut self, tail: usize, head: usize) -> usize {
        self.add_arc(tail, head, Capacity::Unbreakable)
    }

    /// Sum of finite capacities plus one.
    pub fn unbreakable_weight(&self) -> u64 {
        1 + self
            .arcs
            .iter()
            .map(|a| match a.capacity {
                Capacity::Finite(c) => c,
                Capacity::Unbreakable => 0,
            })
            .sum::<u64>()
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    iter: Vec<usize>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Residual {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![usize::MAX; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: u64) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && self.level[v] == usize::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64) -> u64 {
        if u == t {
            return limit;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]];
            let v = self.head[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let pushed = self.dfs(v, t, limit.min(self.cap[e]));
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        0
    }
}

/// Computes a minimum source-sink cut.
///
/// Fails with [`FlowError::Uncuttable`] when every cut has to sever an
/// unbreakable arc.
pub fn min_cut(net: &FlowNetwork) -> Result<MinCut, FlowError> {
    let w = net.unbreakable_weight();
    let mut res = Residual::new(net.nodes);
    for a in &net.arcs {
        let c = match a.capacity {
            Capacity::Finite(c) => c,
            Capacity::Unbreakable => w,
        };
        res.add(a.tail, a.head, c);
    }
    let mut flow: u64 = 0;
    loop {
        res.bfs(net.source);
        if res.level[net.sink] == usize::MAX {
            break;
        }
        res.iter.iter_mut().for_each(|i| *i = 0);
        loop {
            let pushed = res.dfs(net.source, net.sink, u64::MAX);
            if pushed == 0 {
                break;
            }
            flow += pushed;
            if flow >= w {
                return Err(FlowError::Uncuttable);
            }
        }
    }
    res.bfs(net.source);
    let source_side: Vec<bool> = res.level.iter().map(|&l| l != usize::MAX).collect();
    let cut_arcs: Vec<usize> = net
        .arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| source_side[a.tail] && !source_side[a.head])
        .map(|(i, _)| i)
        .collect();
    let cut_value: u64 = cut_arcs
        .iter()
        .map(|&i| match net.arcs[i].capacity {
            Capacity::Finite(c) => c,
            Capacity::Unbreakable => w,
        })
        .sum();
    assert_eq!(cut_value, flow, "max-flow/min-cut mismatch");
    Ok(MinCut {
        value: flow,
        source_side,
        cut_arcs,
        unbreakable_weight: w,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSeparator {
    pub value: u64,
    pub separator: Vec<usize>,
    /// Vertices still reachable from `s` after deleting the separator.
    pub source_side: Vec<bool>,
}

/// Smallest set of vertices other than `s` and `t` whose removal destroys
/// every directed `s`-`t` path, by splitting each vertex into an in/out pair.
pub fn min_vertex_separator(
    nodes: usize,
    arcs: &[(usize, usize)],
    s: usize,
    t: usize,
) -> Result<VertexSeparator, FlowError> {
    if s >= nodes {
        return Err(FlowError::NodeOutOfRange(s));
    }
    if t >= nodes {
        return Err(FlowError::NodeOutOfRange(t));
    }
    let inn = |v: usize| 2 * v;
    let out = |v: usize| 2 * v + 1;
    let mut net = FlowNetwork::new(2 * nodes, out(s), inn(t))?;
    let mut split_arc = vec![usize::MAX; nodes];
    for v in 0..nodes {
        if v == s || v == t {
            net.add_unbreakable(inn(v), out(v));
        } else {
            split_arc[v] = net.add_unit(inn(v), out(v));
        }
    }
    for &(u, v) in arcs {
        if u >= nodes {
            return Err(FlowError::NodeOutOfRange(u));
        }
        if v >= nodes {
            return Err(FlowError::NodeOutOfRange(v));
        }
        net.add_unbreakable(out(u), inn(v));
    }
    let cut = min_cut(&net)?;
    let separator: Vec<usize> = (0..nodes)
        .filter(|&v| split_arc[v] != usize::MAX && cut.cut_arcs.contains(&split_arc[v]))
        .collect();
    debug_assert_eq!(separator.len() as u64, cut.value);
    let source_side = (0..nodes).map(|v| cut.source_side[out(v)]).collect();
    Ok(VertexSeparator {
        value: cut.value,
        separator,
        source_side,
    })
}
