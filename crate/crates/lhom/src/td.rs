//! Tree decompositions: validation, heuristic and exact construction, hub
//! cores, PACE `.td` files and nice form.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::formats::HubCore;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn single_bag(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            tree: vec![],
        }
    }
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::Precondition(format!(
        "invalid tree decomposition: {}",
        msg
    )))
}

/// Checks the decomposition against the graph and returns its width.
pub fn validate_td(n: usize, edges: &[(usize, usize)], td: &TreeDecomposition) -> Result<usize> {
    let k = td.bags.len();
    if k == 0 {
        return invalid("no bags".into());
    }
    if td.tree.len() + 1 != k {
        return invalid(format!(
            "{} bags need {} tree edges, found {}",
            k,
            k - 1,
            td.tree.len()
        ));
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree {
        if a >= k || b >= k || a == b {
            return invalid(format!("bad tree edge {} {}", a + 1, b + 1));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return invalid("bag tree is disconnected".into());
    }
    let sets: Vec<HashSet<usize>> = td
        .bags
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    for (i, b) in td.bags.iter().enumerate() {
        if let Some(&v) = b.iter().find(|&&v| v >= n) {
            return invalid(format!("bag {} holds unknown vertex {}", i + 1, v + 1));
        }
    }
    for v in 0..n {
        let holding: Vec<usize> = (0..k).filter(|&i| sets[i].contains(&v)).collect();
        if holding.is_empty() {
            return invalid(format!("vertex {} is in no bag", v + 1));
        }
        let mut seen = vec![false; k];
        let mut stack = vec![holding[0]];
        seen[holding[0]] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && sets[y].contains(&v) {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        if reached != holding.len() {
            return invalid(format!("bags holding vertex {} are not connected", v + 1));
        }
    }
    for &(u, v) in edges {
        if !sets.iter().any(|s| s.contains(&u) && s.contains(&v)) {
            return invalid(format!("edge {} {} is in no bag", u + 1, v + 1));
        }
    }
    Ok(td.width())
}

/// Decomposition from an elimination order: each vertex's bag is itself plus
/// its later neighbours in the fill graph.
pub fn td_from_order(n: usize, edges: &[(usize, usize)], order: &[usize]) -> TreeDecomposition {
    if n == 0 {
        return TreeDecomposition::single_bag(0);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    for &v in order {
        let later: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        if let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) {
            parent[pos[v]] = pos[p];
        }
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut tree = Vec::new();
    let mut last_root = None;
    for i in 0..n {
        if parent[i] != usize::MAX {
            tree.push((i, parent[i]));
        } else {
            if let Some(r) = last_root {
                tree.push((r, i));
            }
            last_root = Some(i);
        }
    }
    TreeDecomposition { bags, tree }
}

/// Greedy min-fill elimination order (ties to the lowest index).
pub fn min_fill_order(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut fill = 0;
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        if !adj[a].contains(&b) {
                            fill += 1;
                        }
                    }
                }
                (fill, nb.len(), v)
            })
            .unwrap();
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

pub fn min_fill_td(n: usize, edges: &[(usize, usize)]) -> TreeDecomposition {
    td_from_order(n, edges, &min_fill_order(n, edges))
}

pub const EXACT_LIMIT: usize = 12;

/// Optimal elimination order by dynamic programming over vertex subsets.
pub fn exact_order(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge(format!(
            "exact treewidth on {} vertices",
            n
        )));
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    // q(s, v): vertices outside s ∪ {v} reachable from v through s.
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[x] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut tw = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = tw[prev as usize].max(q(prev, v).count_ones());
            if cost < tw[s as usize] {
                tw[s as usize] = cost;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(order)
}

pub fn exact_treewidth(n: usize, edges: &[(usize, usize)]) -> Result<usize> {
    Ok(td_from_order(n, edges, &exact_order(n, edges)?).width())
}

/// Exact decomposition for small graphs, min-fill otherwise.
pub fn build_td(n: usize, edges: &[(usize, usize)]) -> TreeDecomposition {
    if n <= EXACT_LIMIT {
        td_from_order(n, edges, &exact_order(n, edges).unwrap())
    } else {
        min_fill_td(n, edges)
    }
}

/// Components of G − Q as sorted vertex lists.
fn components_outside(n: usize, edges: &[(usize, usize)], q: &[usize]) -> Vec<Vec<usize>> {
    let inq: HashSet<usize> = q.iter().copied().collect();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if !inq.contains(&u) && !inq.contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if inq.contains(&s) || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = out.len();
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = out.len();
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Checks that every component of G − Q has at most σ vertices and at most
/// δ neighbours in Q.
pub fn validate_hub_core(n: usize, edges: &[(usize, usize)], core: &HubCore) -> Result<()> {
    if let Some(&v) = core.q.iter().find(|&&v| v >= n) {
        return Err(Error::Precondition(format!(
            "core vertex {} out of range",
            v + 1
        )));
    }
    let inq: HashSet<usize> = core.q.iter().copied().collect();
    for comp in components_outside(n, edges, &core.q) {
        if comp.len() > core.sigma {
            return Err(Error::Precondition(format!(
                "component of vertex {} has {} > {} vertices",
                comp[0] + 1,
                comp.len(),
                core.sigma
            )));
        }
        let cs: HashSet<usize> = comp.iter().copied().collect();
        let mut attach = HashSet::new();
        for &(u, v) in edges {
            if cs.contains(&u) && inq.contains(&v) {
                attach.insert(v);
            }
            if cs.contains(&v) && inq.contains(&u) {
                attach.insert(u);
            }
        }
        if attach.len() > core.delta {
            return Err(Error::Precondition(format!(
                "component of vertex {} has {} > {} core neighbours",
                comp[0] + 1,
                attach.len(),
                core.delta
            )));
        }
    }
    Ok(())
}

/// Star of bags: the core in the centre and core ∪ component at each leaf.
pub fn core_to_td(n: usize, edges: &[(usize, usize)], core: &HubCore) -> Result<TreeDecomposition> {
    validate_hub_core(n, edges, core)?;
    let comps = components_outside(n, edges, &core.q);
    let mut q = core.q.clone();
    q.sort_unstable();
    if q.is_empty() {
        if comps.is_empty() {
            return Ok(TreeDecomposition::single_bag(0));
        }
        let tree = (1..comps.len()).map(|i| (i - 1, i)).collect();
        return Ok(TreeDecomposition { bags: comps, tree });
    }
    let mut bags = vec![q.clone()];
    let mut tree = Vec::new();
    for c in comps {
        let mut bag: Vec<usize> = q.iter().chain(&c).copied().collect();
        bag.sort_unstable();
        tree.push((0, bags.len()));
        bags.push(bag);
    }
    Ok(TreeDecomposition { bags, tree })
}

/// Parses PACE 2017 `.td` text (1-indexed bags and vertices).
pub fn parse_td(text: &str) -> Result<(usize, TreeDecomposition)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.is_empty() || t[0] == "c" {
            continue;
        }
        let nums = |from: usize| -> Result<Vec<usize>> {
            t[from..]
                .iter()
                .map(|x| {
                    x.parse::<usize>()
                        .or_else(|_| parse_err(ln, format!("expected an integer, found `{}`", x)))
                })
                .collect()
        };
        match t[0] {
            "s" => {
                if t.len() != 5 || t[1] != "td" {
                    return parse_err(ln, "expected `s td <bags> <width+1> <n>`");
                }
                let v = nums(2)?;
                header = Some((v[0], v[1], v[2]));
                bags = vec![None; v[0]];
            }
            "b" => {
                let (k, w1, n) = match header {
                    Some(h) => h,
                    None => return parse_err(ln, "bag before header"),
                };
                let v = nums(1)?;
                if v.is_empty() || v[0] == 0 || v[0] > k {
                    return parse_err(ln, "bag index out of range");
                }
                if v.len() - 1 > w1 {
                    return parse_err(ln, "bag larger than announced width");
                }
                if v[1..].iter().any(|&x| x == 0 || x > n) {
                    return parse_err(ln, "bag vertex out of range");
                }
                if bags[v[0] - 1].is_some() {
                    return parse_err(ln, "bag listed twice");
                }
                let mut bag: Vec<usize> = v[1..].iter().map(|x| x - 1).collect();
                bag.sort_unstable();
                bag.dedup();
                bags[v[0] - 1] = Some(bag);
            }
            _ => {
                let (k, _, _) = match header {
                    Some(h) => h,
                    None => return parse_err(ln, "tree edge before header"),
                };
                let v = nums(0)?;
                if v.len() != 2 || v.iter().any(|&x| x == 0 || x > k) {
                    return parse_err(ln, "expected a tree edge `<i> <j>`");
                }
                tree.push((v[0] - 1, v[1] - 1));
            }
        }
    }
    let (_, _, n) = match header {
        Some(h) => h,
        None => return parse_err(0, "missing `s td` header"),
    };
    let bags = bags.into_iter().map(|b| b.unwrap_or_default()).collect();
    Ok((n, TreeDecomposition { bags, tree }))
}

pub fn write_td(n: usize, td: &TreeDecomposition) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, n);
    for (i, b) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in b {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Restricts a decomposition to an induced subgraph; `index[v]` is the new
/// id of `v` or `usize::MAX` when dropped.
pub fn restrict_td(td: &TreeDecomposition, index: &[usize]) -> TreeDecomposition {
    let bags = td
        .bags
        .iter()
        .map(|b| {
            let mut nb: Vec<usize> = b
                .iter()
                .map(|&v| index[v])
                .filter(|&v| v != usize::MAX)
                .collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    TreeDecomposition {
        bags,
        tree: td.tree.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    IntroduceVertex(usize),
    IntroduceEdge(usize, usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored children-first; the last node is the root, whose bag is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTd {
    pub nodes: Vec<NiceNode>,
}

impl NiceTd {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

struct NiceBuilder<'a> {
    nodes: Vec<NiceNode>,
    edge_sets: &'a [BTreeSet<usize>],
    introduced: HashSet<(usize, usize)>,
}

impl NiceBuilder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Moves from node `from` to a node with bag `target`.
    fn morph(&mut self, mut from: usize, target: &[usize]) -> usize {
        let current = self.nodes[from].bag.clone();
        let mut bag = current.clone();
        for &v in &current {
            if !target.contains(&v) {
                bag.retain(|&x| x != v);
                from = self.push(NiceKind::Forget(v), bag.clone(), vec![from]);
            }
        }
        for &v in target {
            if !bag.contains(&v) {
                bag.push(v);
                bag.sort_unstable();
                from = self.push(NiceKind::IntroduceVertex(v), bag.clone(), vec![from]);
            }
        }
        from
    }

    fn introduce_edges(&mut self, mut at: usize) -> usize {
        let bag = self.nodes[at].bag.clone();
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                if self.edge_sets[u].contains(&v) && self.introduced.insert((u, v)) {
                    at = self.push(NiceKind::IntroduceEdge(u, v), bag.clone(), vec![at]);
                }
            }
        }
        at
    }

    fn build(
        &mut self,
        td: &TreeDecomposition,
        adj: &[Vec<usize>],
        x: usize,
        parent: usize,
    ) -> usize {
        let target = &td.bags[x];
        let mut subtrees = Vec::new();
        for &y in &adj[x] {
            if y != parent {
                let below = self.build(td, adj, y, x);
                subtrees.push(self.morph(below, target));
            }
        }
        let mut at = match subtrees.len() {
            0 => {
                let leaf = self.push(NiceKind::Leaf, vec![], vec![]);
                self.morph(leaf, target)
            }
            _ => {
                let mut acc = subtrees[0];
                for &s in &subtrees[1..] {
                    acc = self.push(NiceKind::Join, target.clone(), vec![acc, s]);
                }
                acc
            }
        };
        at = self.introduce_edges(at);
        at
    }
}

/// Nice form rooted at bag 0, with one introduce-edge node per edge of G.
pub fn make_nice(n: usize, edges: &[(usize, usize)], td: &TreeDecomposition) -> Result<NiceTd> {
    validate_td(n, edges, td)?;
    let mut edge_sets = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        edge_sets[u.min(v)].insert(u.max(v));
    }
    let mut adj = vec![Vec::new(); td.bags.len()];
    for &(a, b) in &td.tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    let td = TreeDecomposition {
        bags: td
            .bags
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect(),
        tree: td.tree.clone(),
    };
    let mut b = NiceBuilder {
        nodes: Vec::new(),
        edge_sets: &edge_sets,
        introduced: HashSet::new(),
    };
    let top = b.build(&td, &adj, 0, usize::MAX);
    b.morph(top, &[]);
    debug_assert_eq!(b.introduced.len(), edges.len());
    Ok(NiceTd { nodes: b.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Vec<(usize, usize)> {
        (1..n).map(|i| (i - 1, i)).collect()
    }

    #[test]
    fn single_bag_is_valid() {
        let e = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(
            validate_td(3, &e, &TreeDecomposition::single_bag(3)).unwrap(),
            2
        );
    }

    #[test]
    fn missing_edge_is_named() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            tree: vec![(0, 1)],
        };
        let err = validate_td(3, &[(0, 1), (1, 2)], &td).unwrap_err();
        assert!(err.to_string().contains("edge 2 3"));
    }

    #[test]
    fn path_has_width_one() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            tree: vec![(0, 1), (1, 2)],
        };
        assert_eq!(validate_td(4, &path(4), &td).unwrap(), 1);
        assert_eq!(exact_treewidth(4, &path(4)).unwrap(), 1);
    }

    #[test]
    fn star_core_has_width_one() {
        let e = [(0, 1), (0, 2), (0, 3)];
        let core = HubCore {
            q: vec![0],
            sigma: 1,
            delta: 1,
        };
        let td = core_to_td(4, &e, &core).unwrap();
        assert_eq!(validate_td(4, &e, &td).unwrap(), 1);
    }

    #[test]
    fn core_edge_cases() {
        let e = [(0, 1), (1, 2)];
        let td = core_to_td(
            3,
            &e,
            &HubCore {
                q: vec![],
                sigma: 3,
                delta: 0,
            },
        )
        .unwrap();
        assert_eq!(td.bags.len(), 1);
        let td = core_to_td(
            3,
            &e,
            &HubCore {
                q: vec![0, 1, 2],
                sigma: 0,
                delta: 0,
            },
        )
        .unwrap();
        assert_eq!((td.bags.len(), td.width()), (1, 2));
        assert!(core_to_td(
            3,
            &e,
            &HubCore {
                q: vec![],
                sigma: 2,
                delta: 0
            }
        )
        .is_err());
    }

    #[test]
    fn pace_round_trip() {
        let td = min_fill_td(4, &path(4));
        let (n, back) = parse_td(&write_td(4, &td)).unwrap();
        assert_eq!((n, back), (4, td));
    }

    #[test]
    fn nice_form_introduces_each_edge_once() {
        let e = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let nice = make_nice(4, &e, &min_fill_td(4, &e)).unwrap();
        let intro = nice
            .nodes
            .iter()
            .filter(|x| matches!(x.kind, NiceKind::IntroduceEdge(..)))
            .count();
        assert_eq!(intro, e.len());
        assert!(nice.nodes[nice.root()].bag.is_empty());
    }
}
