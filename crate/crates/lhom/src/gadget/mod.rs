//! Gadgets: small list instances with portals, their cost tables, and the
//! constructions built from them.

use std::collections::{BTreeMap, BTreeSet};

use crate::dp::{optimize, Choice};
use crate::error::{Error, Result};
use crate::graph::{Instance, Mode, TargetGraph};
use crate::td::{build_td, make_nice};

pub mod ed;
pub mod vd;

/// A portal value: a target vertex, or `None` for a deleted portal (VD only).
pub type Value = Option<usize>;

/// Default cap on the number of assignments the enumeration oracle visits.
pub const ENUM_BOUND: u128 = 10_000_000;

/// A graph J with lists and an ordered tuple of distinct portal vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub graph: Instance,
    pub portals: Vec<usize>,
}

impl Gadget {
    pub fn empty() -> Self {
        Gadget {
            graph: Instance {
                n: 0,
                edges: vec![],
                lists: vec![],
                budget: None,
            },
            portals: vec![],
        }
    }

    /// A path with the given lists; the two ends are the portals.
    pub fn path(lists: &[Vec<usize>]) -> Self {
        let mut g = Gadget::empty();
        for (i, l) in lists.iter().enumerate() {
            let v = g.add_vertex(l.clone());
            if i > 0 {
                g.add_edge(v - 1, v);
            }
        }
        g.portals = vec![0, lists.len() - 1];
        g
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn add_vertex(&mut self, mut list: Vec<usize>) -> usize {
        list.sort_unstable();
        list.dedup();
        self.graph.add_vertex(list)
    }

    /// Adds an edge unless it is already present.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "gadgets are loopless");
        if !self.graph.has_edge(u, v) {
            self.graph.edges.push((u.min(v), u.max(v)));
        }
    }

    pub fn list(&self, v: usize) -> &[usize] {
        &self.graph.lists[v]
    }

    pub fn portal_list(&self, i: usize) -> &[usize] {
        self.list(self.portals[i])
    }

    /// Copies `other` into `self`, identifying `other`'s vertex `p.0` with
    /// our vertex `p.1` for each pair. Identified vertices keep our list.
    /// Returns where each vertex of `other` went.
    pub fn glue(&mut self, other: &Gadget, identify: &[(usize, usize)]) -> Vec<usize> {
        let mut map = vec![usize::MAX; other.n()];
        for &(o, s) in identify {
            map[o] = s;
        }
        for v in 0..other.n() {
            if map[v] == usize::MAX {
                map[v] = self.add_vertex(other.graph.lists[v].clone());
            }
        }
        for &(u, v) in &other.graph.edges {
            self.add_edge(map[u], map[v]);
        }
        map
    }

    /// Structural checks: distinct in-range portals, nonempty lists within
    /// V(H), simple loopless edges.
    pub fn validate(&self, h: &TargetGraph) -> Result<()> {
        self.graph.validate(h)?;
        if let Some(v) = self.graph.lists.iter().position(|l| l.is_empty()) {
            return Err(Error::Precondition(format!(
                "gadget vertex {} has an empty list",
                v + 1
            )));
        }
        let set: BTreeSet<usize> = self.portals.iter().copied().collect();
        if set.len() != self.portals.len() || self.portals.iter().any(|&p| p >= self.n()) {
            return Err(Error::Precondition(
                "portals must be distinct gadget vertices".into(),
            ));
        }
        Ok(())
    }
}

/// Minimum cost per portal tuple. `None` entries are infeasible, which only
/// happens in VD mode when two adjacent portals get non-adjacent images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostTable {
    pub mode: Mode,
    pub domains: Vec<Vec<Value>>,
    pub entries: BTreeMap<Vec<Value>, Option<u64>>,
}

impl CostTable {
    pub fn get(&self, tuple: &[Value]) -> Option<u64> {
        self.entries.get(tuple).copied().flatten()
    }

    /// ED lookup by target vertices.
    pub fn at(&self, tuple: &[usize]) -> Option<u64> {
        let t: Vec<Value> = tuple.iter().map(|&x| Some(x)).collect();
        self.get(&t)
    }

    /// The base cost α.
    pub fn base(&self) -> Option<u64> {
        self.entries.values().flatten().min().copied()
    }

    pub fn argmin(&self) -> Vec<Vec<Value>> {
        let base = self.base();
        self.entries
            .iter()
            .filter(|(_, &c)| c.is_some() && c == base)
            .map(|(t, _)| t.clone())
            .collect()
    }
}

fn domains(g: &Gadget, mode: Mode) -> Vec<Vec<Value>> {
    g.portals
        .iter()
        .map(|&p| {
            let mut d: Vec<Value> = g.list(p).iter().map(|&x| Some(x)).collect();
            if mode == Mode::Vd {
                d.push(None);
            }
            d
        })
        .collect()
}

fn tuples(domains: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let mut out = vec![vec![]];
    for d in domains {
        out = out
            .iter()
            .flat_map(|t| d.iter().map(move |&x| [t.as_slice(), &[x]].concat()))
            .collect();
    }
    out
}

fn internal_choices(g: &Gadget, mode: Mode) -> Vec<Vec<Choice>> {
    (0..g.n())
        .map(|v| {
            let mut c: Vec<Choice> = g.list(v).iter().map(|&x| Choice::to(x)).collect();
            if mode == Mode::Vd {
                c.push(Choice::deleted(1));
            }
            c
        })
        .collect()
}

/// Exact cost table. Every portal tuple is solved by the decomposition DP
/// with the portals pinned, which scales to gadgets far beyond the reach of
/// plain enumeration.
pub fn cost_table(h: &TargetGraph, g: &Gadget, mode: Mode) -> Result<CostTable> {
    g.validate(h)?;
    let td = build_td(g.n(), &g.graph.edges);
    let nice = make_nice(g.n(), &g.graph.edges, &td)?;
    let doms = domains(g, mode);
    let mut choices = internal_choices(g, mode);
    let mut entries = BTreeMap::new();
    for t in tuples(&doms) {
        for (&p, &x) in g.portals.iter().zip(&t) {
            choices[p] = vec![Choice {
                image: x,
                weight: 0,
            }];
        }
        let opt = optimize(h, &choices, mode, &nice, None)?;
        entries.insert(t, opt.map(|o| o.cost));
    }
    Ok(CostTable {
        mode,
        domains: doms,
        entries,
    })
}

/// Cost table by enumerating every assignment of the non-portal vertices.
/// Used as the reference for [`cost_table`].
pub fn cost_table_enum(h: &TargetGraph, g: &Gadget, mode: Mode, bound: u128) -> Result<CostTable> {
    g.validate(h)?;
    let doms = domains(g, mode);
    let choices = internal_choices(g, mode);
    let internal: Vec<usize> = (0..g.n()).filter(|v| !g.portals.contains(v)).collect();
    let space = internal
        .iter()
        .map(|&v| choices[v].len() as u128)
        .product::<u128>()
        * doms.iter().map(|d| d.len() as u128).product::<u128>();
    if space > bound {
        return Err(Error::TooLarge(format!(
            "{} assignments exceed the bound {}",
            space, bound
        )));
    }
    let mut entries = BTreeMap::new();
    let mut image: Vec<Value> = vec![None; g.n()];
    for t in tuples(&doms) {
        for (&p, &x) in g.portals.iter().zip(&t) {
            image[p] = x;
        }
        let mut best: Option<u64> = None;
        let mut idx = vec![0usize; internal.len()];
        loop {
            let mut cost = 0;
            for (i, &v) in internal.iter().enumerate() {
                let c = choices[v][idx[i]];
                image[v] = c.image;
                cost += c.weight;
            }
            let mut ok = true;
            for &(u, v) in &g.graph.edges {
                if let (Some(a), Some(b)) = (image[u], image[v]) {
                    if !h.adj(a, b) {
                        match mode {
                            Mode::Vd => ok = false,
                            Mode::Ed => cost += 1,
                        }
                    }
                }
            }
            if ok && best.map_or(true, |b| cost < b) {
                best = Some(cost);
            }
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < choices[internal[i]].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
        entries.insert(t, best);
    }
    Ok(CostTable {
        mode,
        domains: doms,
        entries,
    })
}

/// How a gadget realizes a relation: cost `k` on it, more off it, and the
/// uniform surplus `omega` when there is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Realization {
    pub k: u64,
    pub omega: Option<u64>,
}

/// Checks an ED cost table against a relation over the portal lists.
pub fn realization(table: &CostTable, relation: &BTreeSet<Vec<usize>>) -> Option<Realization> {
    let mut k = None;
    for t in relation {
        let c = table.at(t)?;
        if *k.get_or_insert(c) != c {
            return None;
        }
    }
    let k = k?;
    let mut surplus = BTreeSet::new();
    for (t, c) in &table.entries {
        let t: Vec<usize> = t
            .iter()
            .map(|x| x.expect("ED tables have no deleted portals"))
            .collect();
        if relation.contains(&t) {
            continue;
        }
        match c {
            Some(c) if *c > k => {
                surplus.insert(c - k);
            }
            _ => return None,
        }
    }
    let omega = match surplus.len() {
        1 => surplus.into_iter().next(),
        _ => None,
    };
    Some(Realization { k, omega })
}

/// True when `g` realizes `relation` in the edge-deletion sense, with every
/// tuple outside it costing exactly `omega` more when `omega` is given.
pub fn verify_realizes(
    h: &TargetGraph,
    g: &Gadget,
    relation: &BTreeSet<Vec<usize>>,
    omega: Option<u64>,
) -> Result<bool> {
    let table = cost_table(h, g, Mode::Ed)?;
    let off = table.entries.len() - relation.len();
    Ok(match realization(&table, relation) {
        None => false,
        Some(r) => match omega {
            None => true,
            Some(w) => off == 0 || r.omega == Some(w),
        },
    })
}
