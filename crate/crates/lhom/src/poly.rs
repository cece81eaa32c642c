//! Polynomial-time solvers: vertex deletion for reflexive targets covered by
//! two chain cliques, and edge deletion for obstruction-free targets.

use std::collections::BTreeMap;

use lhom_flow::{min_cut, min_vertex_separator, FlowNetwork};

use crate::analysis::{classify_ed, classify_vd};
use crate::error::{Error, Result};
use crate::graph::{Instance, Solution, TargetGraph};
use crate::lists::reduce_lists;

/// Two reflexive cliques covering V(H), each sorted so that neighbourhoods
/// increase along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCliqueCover {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl TwoCliqueCover {
    pub fn side(&self, v: usize) -> Side {
        if self.left.contains(&v) {
            Side::Left
        } else {
            Side::Right
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Two-colours the incomparability graph, which contains every non-edge of
/// a reflexive H. Each colour class is then a clique whose neighbourhoods
/// form a chain.
pub fn two_clique_cover(h: &TargetGraph) -> Result<TwoCliqueCover> {
    if !h.is_reflexive() {
        return Err(Error::Precondition(
            "two-clique cover needs a reflexive target".into(),
        ));
    }
    let n = h.n();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v == u || !h.incomparable(u, v) {
                    continue;
                }
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    stack.push(v);
                } else if colour[v] == colour[u] {
                    return Err(Error::Precondition(
                        "target is not covered by two chain cliques".into(),
                    ));
                }
            }
        }
    }
    let mut parts = [Vec::new(), Vec::new()];
    for v in 0..n {
        parts[colour[v] as usize].push(v);
    }
    for part in &mut parts {
        part.sort_by_key(|&v| (h.gamma(v).count_ones(), v));
        for w in part.windows(2) {
            if !h.dominates(w[1], w[0]) || !h.adj(w[0], w[1]) {
                return Err(Error::Precondition(
                    "clique part is not a neighbourhood chain".into(),
                ));
            }
        }
    }
    let [left, right] = parts;
    Ok(TwoCliqueCover { left, right })
}

pub fn solve_vd_poly(h: &TargetGraph, inst: &Instance) -> Result<Solution> {
    if !classify_vd(h).is_poly() {
        return Err(Error::Precondition(
            "vertex deletion for this target is NP-hard".into(),
        ));
    }
    let cover = two_clique_cover(h)?;
    let inst = reduce_lists(h, inst);
    let n = inst.n;
    let mut ell = vec![None; n];
    let mut arr = vec![None; n];
    for (v, l) in inst.lists.iter().enumerate() {
        for &x in l {
            let slot = match cover.side(x) {
                Side::Left => &mut ell[v],
                Side::Right => &mut arr[v],
            };
            assert!(slot.is_none(), "reduced list holds two comparable vertices");
            *slot = Some(x);
        }
    }
    let forced: Vec<bool> = inst.lists.iter().map(|l| l.is_empty()).collect();
    let (s, t) = (n, n + 1);
    let mut arcs = Vec::new();
    for v in 0..n {
        if forced[v] {
            continue;
        }
        if arr[v].is_none() {
            arcs.push((s, v));
        }
        if ell[v].is_none() {
            arcs.push((v, t));
        }
    }
    for &(x, y) in &inst.edges {
        if forced[x] || forced[y] {
            continue;
        }
        for (a, b) in [(x, y), (y, x)] {
            if let (Some(l), Some(r)) = (ell[a], arr[b]) {
                if !h.adj(l, r) {
                    arcs.push((a, b));
                }
            }
        }
    }
    let sep = min_vertex_separator(n + 2, &arcs, s, t)?;
    let mut hom = vec![None; n];
    for v in 0..n {
        if forced[v] || sep.separator.contains(&v) {
            continue;
        }
        hom[v] = if sep.source_side[v] { ell[v] } else { arr[v] };
        assert!(hom[v].is_some(), "survivor without an image on its side");
    }
    let mut sol = Solution::from_vd_map(hom, "poly-vertex-separator");
    sol.stats.flow_value = Some(sep.value);
    sol.check(h, &inst)?;
    Ok(sol)
}

/// 0/1 adjacency matrix between two ordered lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionMatrix {
    pub rows: usize,
    pub cols: usize,
    pub ones: Vec<Vec<bool>>,
}

/// Rows and columns are 1-indexed and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Rect {
    fn new(top: usize, bottom: usize, left: usize, right: usize) -> Option<Rect> {
        (top <= bottom && left <= right).then_some(Rect {
            top,
            bottom,
            left,
            right,
        })
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (self.top..=self.bottom).contains(&i) && (self.left..=self.right).contains(&j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub i1: usize,
    pub j1: usize,
    pub i2: usize,
    pub j2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleCover {
    pub staircase: Staircase,
    /// Touches the top-right corner.
    pub r1: Option<Rect>,
    /// Full-width band of rows.
    pub r2: Option<Rect>,
    /// Touches the bottom-left corner.
    pub r3: Option<Rect>,
}

impl InteractionMatrix {
    pub fn new(h: &TargetGraph, xs: &[usize], ys: &[usize]) -> Self {
        InteractionMatrix {
            rows: xs.len(),
            cols: ys.len(),
            ones: xs
                .iter()
                .map(|&x| ys.iter().map(|&y| h.adj(x, y)).collect())
                .collect(),
        }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        InteractionMatrix {
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            ones: rows
                .iter()
                .map(|r| r.iter().map(|&b| b == 1).collect())
                .collect(),
        }
    }

    /// Entry at 1-indexed position.
    pub fn at(&self, i: usize, j: usize) -> bool {
        self.ones[i - 1][j - 1]
    }

    pub fn transpose(&self) -> Self {
        InteractionMatrix {
            rows: self.cols,
            cols: self.rows,
            ones: (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.ones[i][j]).collect())
                .collect(),
        }
    }

    fn matches(&self, s: Staircase) -> bool {
        let shape_ok = (s.i1 < s.i2 && s.j1 < s.j2) || (s.i1 >= s.i2 && s.j1 >= s.j2);
        shape_ok
            && (1..=self.rows).all(|i| {
                (1..=self.cols).all(|j| {
                    let one = (i <= s.i1 && j <= s.j1) || (i >= s.i2 && j >= s.j2);
                    one == self.at(i, j)
                })
            })
    }

    /// Staircase indices from the top-left and bottom-right corner runs.
    fn corner_scan(&self) -> Staircase {
        let (r, c) = (self.rows, self.cols);
        let (mut i1, mut j1) = (0, 0);
        if r > 0 && c > 0 && self.at(1, 1) {
            i1 = (1..=r).take_while(|&i| self.at(i, 1)).count();
            j1 = (1..=c).take_while(|&j| self.at(1, j)).count();
        }
        let (mut i2, mut j2) = (r + 1, c + 1);
        if r > 0 && c > 0 && self.at(r, c) {
            i2 = r + 1 - (1..=r).rev().take_while(|&i| self.at(i, c)).count();
            j2 = c + 1 - (1..=c).rev().take_while(|&j| self.at(r, j)).count();
        }
        Staircase { i1, j1, i2, j2 }
    }

    pub fn staircase(&self) -> Option<Staircase> {
        let scanned = self.corner_scan();
        if self.matches(scanned) {
            return Some(scanned);
        }
        let (r, c) = (self.rows, self.cols);
        for i1 in 0..=r {
            for j1 in 0..=c {
                for i2 in 1..=r + 1 {
                    for j2 in 1..=c + 1 {
                        let s = Staircase { i1, j1, i2, j2 };
                        if self.matches(s) {
                            return Some(s);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_staircase(&self) -> bool {
        self.staircase().is_some()
    }

    /// Three disjoint rectangles covering exactly the zero entries.
    pub fn rectangle_cover(&self) -> Result<RectangleCover> {
        let s = self
            .staircase()
            .ok_or_else(|| Error::Verification("interaction matrix is not a staircase".into()))?;
        let (r, c) = (self.rows, self.cols);
        let cover = if s.i1 < s.i2 && s.j1 < s.j2 {
            RectangleCover {
                staircase: s,
                r1: Rect::new(1, s.i1, s.j1 + 1, c),
                r2: Rect::new(s.i1 + 1, s.i2 - 1, 1, c),
                r3: Rect::new(s.i2, r, 1, s.j2 - 1),
            }
        } else {
            RectangleCover {
                staircase: s,
                r1: Rect::new(1, s.i2 - 1, s.j1 + 1, c),
                r2: None,
                r3: Rect::new(s.i1 + 1, r, 1, s.j2 - 1),
            }
        };
        let rects: Vec<Rect> = [cover.r1, cover.r2, cover.r3]
            .into_iter()
            .flatten()
            .collect();
        for i in 1..=r {
            for j in 1..=c {
                let hits = rects.iter().filter(|q| q.contains(i, j)).count();
                if hits != usize::from(!self.at(i, j)) {
                    return Err(Error::Verification(format!(
                        "rectangle cover wrong at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(cover)
    }
}

/// Per distinct list, an order of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseOrders {
    pub orders: BTreeMap<Vec<usize>, Vec<usize>>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Γ(y) ∩ X is a prefix, a suffix, empty or all of X for every y.
fn respects_types(h: &TargetGraph, order: &[usize]) -> bool {
    (0..h.n()).all(|y| {
        let hit: Vec<bool> = order.iter().map(|&x| h.adj(x, y)).collect();
        let ones = hit.iter().filter(|&&b| b).count();
        ones == 0 || hit[..ones].iter().all(|&b| b) || hit[hit.len() - ones..].iter().all(|&b| b)
    })
}

/// Finds orders for the distinct lists so that every list pair joined by an
/// edge of G has a staircase interaction matrix.
pub fn staircase_orders(h: &TargetGraph, inst: &Instance) -> Result<StaircaseOrders> {
    let mut distinct: Vec<Vec<usize>> = inst
        .lists
        .iter()
        .filter(|l| !l.is_empty())
        .cloned()
        .collect();
    distinct.sort();
    distinct.dedup();
    let index = |l: &Vec<usize>| distinct.binary_search(l).unwrap();
    let k = distinct.len();
    let mut linked = vec![vec![false; k]; k];
    for &(u, v) in &inst.edges {
        let (a, b) = (&inst.lists[u], &inst.lists[v]);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let (i, j) = (index(a), index(b));
        linked[i][j] = true;
        linked[j][i] = true;
    }
    let candidates: Vec<Vec<Vec<usize>>> = distinct
        .iter()
        .map(|l| {
            permutations(l)
                .into_iter()
                .filter(|p| respects_types(h, p))
                .collect()
        })
        .collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    if !assign(h, &candidates, &linked, &mut chosen) {
        return Err(Error::Verification(
            "no staircase order for the lists".into(),
        ));
    }
    let orders = distinct
        .iter()
        .zip(&chosen)
        .enumerate()
        .map(|(i, (l, &c))| (l.clone(), candidates[i][c].clone()))
        .collect();
    Ok(StaircaseOrders { orders })
}

fn assign(
    h: &TargetGraph,
    cands: &[Vec<Vec<usize>>],
    linked: &[Vec<bool>],
    chosen: &mut Vec<usize>,
) -> bool {
    let i = chosen.len();
    if i == cands.len() {
        return true;
    }
    for c in 0..cands[i].len() {
        let order = &cands[i][c];
        if linked[i][i] && !InteractionMatrix::new(h, order, order).is_staircase() {
            continue;
        }
        let ok = (0..i).all(|j| {
            !linked[i][j] || InteractionMatrix::new(h, &cands[j][chosen[j]], order).is_staircase()
        });
        if ok {
            chosen.push(c);
            if assign(h, cands, linked, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

pub fn solve_ed_poly(h: &TargetGraph, inst: &Instance) -> Result<Solution> {
    if !classify_ed(h).is_poly() {
        return Err(Error::Precondition(
            "edge deletion for this target is NP-hard".into(),
        ));
    }
    let inst = reduce_lists(h, inst);
    if let Some(v) = inst.lists.iter().position(|l| l.is_empty()) {
        return Err(Error::Infeasible(format!(
            "vertex {} has an empty list",
            v + 1
        )));
    }
    let orders = staircase_orders(h, &inst)?;
    let order_of = |v: usize| &orders.orders[&inst.lists[v]];
    // Node layout: source, sink, then one path p_0..p_l per vertex.
    let (s, t) = (0, 1);
    let mut base = vec![0; inst.n];
    let mut next = 2;
    for v in 0..inst.n {
        base[v] = next;
        next += inst.lists[v].len() + 1;
    }
    let p = |v: usize, i: usize| base[v] + i;
    let mut net = FlowNetwork::new(next, s, t)?;
    for v in 0..inst.n {
        let len = inst.lists[v].len();
        for i in 0..len {
            net.add_unbreakable(p(v, i), p(v, i + 1));
        }
        net.add_unbreakable(p(v, 0), t);
        net.add_unbreakable(s, p(v, len));
    }
    for &(v, w) in &inst.edges {
        let m = InteractionMatrix::new(h, order_of(v), order_of(w));
        let cover = m.rectangle_cover()?;
        if let Some(r) = cover.r1 {
            net.add_unit(p(v, r.bottom), p(w, r.left - 1));
        }
        if let Some(r) = cover.r3 {
            net.add_unit(p(w, r.right), p(v, r.top - 1));
        }
        if let Some(r) = cover.r2 {
            net.add_unit(p(v, r.bottom), p(v, r.top - 1));
        }
    }
    let cut = min_cut(&net)?;
    let map: Vec<usize> = (0..inst.n)
        .map(|v| {
            let trans = (1..=inst.lists[v].len())
                .find(|&i| cut.source_side[p(v, i)])
                .unwrap();
            order_of(v)[trans - 1]
        })
        .collect();
    let mut sol = Solution::from_ed_map(h, &inst, map, "poly-min-cut");
    assert_eq!(
        sol.cost, cut.value,
        "deleted edges differ from the cut value"
    );
    sol.stats.flow_value = Some(cut.value);
    sol.check(h, &inst)?;
    Ok(sol)
}
