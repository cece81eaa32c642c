//! Edge-deletion realization calculus: moves between incomparable pairs,
//! indicators, and NEQ realizers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{cost_table, realization, CostTable, Gadget};
use crate::analysis::{find_obstruction, is_strong_split};
use crate::error::{Error, Result};
use crate::graph::{members, Mode, TargetGraph};

fn verr<T>(msg: String) -> Result<T> {
    Err(Error::Verification(msg))
}

fn lowest(set: u64) -> Option<usize> {
    members(set).next()
}

/// Reachable-at-minimum sets of a binary gadget read as a move x → y.
#[derive(Clone, Debug)]
pub struct MoveReport {
    pub table: CostTable,
    pub reach: BTreeMap<usize, Vec<usize>>,
    pub row_min: BTreeMap<usize, u64>,
}

impl MoveReport {
    pub fn forces(&self, a: usize, b: usize) -> bool {
        self.reach.get(&a).map_or(false, |r| r == &[b])
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.reach.get(&a).map_or(false, |r| r.contains(&b))
    }

    pub fn is_normalized(&self) -> bool {
        self.row_min.values().collect::<BTreeSet<_>>().len() <= 1
    }

    pub fn base(&self) -> u64 {
        *self.row_min.values().min().unwrap()
    }

    /// The relation {(u,v) : v ∈ 𝒥(u)}.
    pub fn relation(&self) -> BTreeSet<Vec<usize>> {
        self.reach
            .iter()
            .flat_map(|(&u, vs)| vs.iter().map(move |&v| vec![u, v]))
            .collect()
    }
}

pub fn move_report(h: &TargetGraph, g: &Gadget) -> Result<MoveReport> {
    if g.portals.len() != 2 {
        return Err(Error::Precondition("a move has exactly two portals".into()));
    }
    let table = cost_table(h, g, Mode::Ed)?;
    let mut reach = BTreeMap::new();
    let mut row_min = BTreeMap::new();
    for &u in g.portal_list(0) {
        let row: Vec<(usize, u64)> = g
            .portal_list(1)
            .iter()
            .map(|&v| (v, table.at(&[u, v]).unwrap()))
            .collect();
        let m = row.iter().map(|r| r.1).min().unwrap();
        reach.insert(u, row.iter().filter(|r| r.1 == m).map(|r| r.0).collect());
        row_min.insert(u, m);
    }
    Ok(MoveReport {
        table,
        reach,
        row_min,
    })
}

fn pendant_list(h: &TargetGraph, a: usize) -> Result<Vec<usize>> {
    let l: Vec<usize> = members(h.all() & !h.gamma(a)).collect();
    if l.is_empty() {
        return Err(Error::Precondition(format!(
            "vertex {} is adjacent to everything",
            a + 1
        )));
    }
    Ok(l)
}

fn attach_pendants(h: &TargetGraph, g: &mut Gadget, at: usize, a: usize, k: u64) -> Result<()> {
    let l = pendant_list(h, a)?;
    for _ in 0..k {
        let p = g.add_vertex(l.clone());
        g.add_edge(at, p);
    }
    Ok(())
}

/// Adds k pendants with list V(H)∖Γ(a) to a portal, raising the cost of
/// every tuple where that portal takes `a` by exactly k.
pub fn add_cost_pendants(
    h: &TargetGraph,
    g: &Gadget,
    portal: usize,
    a: usize,
    k: u64,
) -> Result<Gadget> {
    let list = g.portal_list(portal);
    if !h.is_incomparable_set(list) || !list.contains(&a) {
        return Err(Error::Precondition(
            "pendants need an incomparable portal list containing a".into(),
        ));
    }
    let before = cost_table(h, g, Mode::Ed)?;
    let mut out = g.clone();
    attach_pendants(h, &mut out, g.portals[portal], a, k)?;
    let after = cost_table(h, &out, Mode::Ed)?;
    for (t, c) in &before.entries {
        let want = c.map(|c| c + if t[portal] == Some(a) { k } else { 0 });
        if after.entries[t] != want {
            return verr(format!(
                "pendants changed {:?} from {:?} to {:?}",
                t, c, after.entries[t]
            ));
        }
    }
    Ok(out)
}

/// Equalizes the row minima so the move realizes {(u,v) : v ∈ 𝒥(u)}.
pub fn normalize_move(h: &TargetGraph, g: &Gadget) -> Result<Gadget> {
    if !h.is_incomparable_set(g.portal_list(0)) {
        return Err(Error::Precondition(
            "normalization needs an incomparable input list".into(),
        ));
    }
    let rep = move_report(h, g)?;
    if rep.is_normalized() {
        return Ok(g.clone());
    }
    let top = *rep.row_min.values().max().unwrap();
    let mut out = g.clone();
    for (&u, &m) in &rep.row_min {
        attach_pendants(h, &mut out, g.portals[0], u, top - m)?;
    }
    let after = move_report(h, &out)?;
    match realization(&after.table, &rep.relation()) {
        Some(r) if r.k == top => Ok(out),
        _ => verr("normalized move does not realize its reach relation".into()),
    }
}

/// Serial composition: m1's output portal is identified with m2's input.
pub fn compose_moves(h: &TargetGraph, m1: &Gadget, m2: &Gadget) -> Result<Gadget> {
    if m1.portal_list(1) != m2.portal_list(0) {
        return Err(Error::Precondition("output and input lists differ".into()));
    }
    let (r1, r2) = (move_report(h, m1)?, move_report(h, m2)?);
    if !r1.is_normalized() || !r2.is_normalized() {
        return Err(Error::Precondition(
            "composition needs normalized moves".into(),
        ));
    }
    let mut out = m1.clone();
    let map = out.glue(m2, &[(m2.portals[0], m1.portals[1])]);
    out.portals = vec![m1.portals[0], map[m2.portals[1]]];
    let r = move_report(h, &out)?;
    for (u, via) in &r1.reach {
        let want: BTreeSet<usize> = via
            .iter()
            .flat_map(|w| r2.reach[w].iter().copied())
            .collect();
        if r.reach[u].iter().copied().collect::<BTreeSet<_>>() != want {
            return verr(format!(
                "composed reach of {} is {:?}, expected {:?}",
                u, r.reach[u], want
            ));
        }
    }
    if !r.is_normalized() || r.base() != r1.base() + r2.base() {
        return verr("composed move lost its normalization or base-cost sum".into());
    }
    Ok(out)
}

/// A move between incomparable pairs forcing `from[i] → to[i]`.
#[derive(Clone, Debug)]
pub struct PairMove {
    pub gadget: Gadget,
    pub from: [usize; 2],
    pub to: [usize; 2],
}

impl PairMove {
    pub fn image(&self, x: usize) -> usize {
        if self.from[0] == x {
            self.to[0]
        } else {
            self.to[1]
        }
    }
}

/// From a move forcing a → c and allowing b → d, a move forcing both.
pub fn force_from_allow(
    h: &TargetGraph,
    g: &Gadget,
    (a, c): (usize, usize),
    (b, d): (usize, usize),
) -> Result<PairMove> {
    let rep = move_report(h, g)?;
    if !rep.forces(a, c) || !rep.allows(b, d) {
        return Err(Error::Precondition(format!(
            "move must force {}→{} and allow {}→{}",
            a + 1,
            c + 1,
            b + 1,
            d + 1
        )));
    }
    if !h.incomparable(a, b) || !h.incomparable(c, d) {
        return Err(Error::Precondition(
            "both pairs must be incomparable".into(),
        ));
    }
    if rep.forces(b, d) {
        return Ok(PairMove {
            gadget: g.clone(),
            from: [a, b],
            to: [c, d],
        });
    }
    let (x, y) = (g.portals[0], g.portals[1]);
    let mut base = g.clone();
    if base.graph.has_edge(x, y) {
        let e = (x.min(y), x.max(y));
        base.graph.edges.retain(|&f| f != e);
        let a1 = lowest(h.gamma(a) & !h.gamma(b)).unwrap();
        let b1 = lowest(h.gamma(b) & !h.gamma(a)).unwrap();
        let x1 = base.add_vertex(vec![a1, b1]);
        let x2 = base.add_vertex(vec![a, b]);
        base.add_edge(x, x1);
        base.add_edge(x1, x2);
        base.add_edge(x2, y);
    }
    let mut out = base.clone();
    out.glue(&base, &[(x, x), (y, y)]);
    attach_pendants(h, &mut out, x, b, 1)?;
    attach_pendants(h, &mut out, y, c, 1)?;
    let r = move_report(h, &out)?;
    if !r.forces(a, c) || !r.forces(b, d) {
        return verr(format!("doubled move has reach {:?}", r.reach));
    }
    Ok(PairMove {
        gadget: out,
        from: [a, b],
        to: [c, d],
    })
}

/// Reads a forced bijection off a move between two pairs, applying
/// [`force_from_allow`] when one side is only allowed.
fn settle(h: &TargetGraph, g: Gadget, [p, q]: [usize; 2], [r, s]: [usize; 2]) -> Result<PairMove> {
    let rep = move_report(h, &g)?;
    for (tp, tq) in [(r, s), (s, r)] {
        if rep.forces(p, tp) && rep.forces(q, tq) {
            return Ok(PairMove {
                gadget: g,
                from: [p, q],
                to: [tp, tq],
            });
        }
    }
    for (tp, tq) in [(r, s), (s, r)] {
        if rep.forces(p, tp) && rep.allows(q, tq) {
            return force_from_allow(h, &g, (p, tp), (q, tq));
        }
        if rep.forces(q, tq) && rep.allows(p, tp) {
            let m = force_from_allow(h, &g, (q, tq), (p, tp))?;
            return Ok(PairMove {
                gadget: m.gadget,
                from: [p, q],
                to: [tp, tq],
            });
        }
    }
    verr(format!(
        "move {:?} → {:?} forces nothing usable: {:?}",
        [p, q],
        [r, s],
        rep.reach
    ))
}

/// {a,b} ⤳ {a,c} for incomparable pairs sharing a.
pub fn adjacent_pair_move(h: &TargetGraph, a: usize, b: usize, c: usize) -> Result<PairMove> {
    if !h.incomparable(a, b) || !h.incomparable(a, c) {
        return Err(Error::Precondition(
            "both pairs must be incomparable".into(),
        ));
    }
    let private_b = h.gamma(b) & !h.gamma(a);
    let c1 = lowest(h.gamma(c) & !h.gamma(a)).unwrap();
    let g = match lowest(h.gamma(a) & !(h.gamma(b) | h.gamma(c))) {
        Some(a1) => {
            // A private neighbour of b that also sees c lets b → c be forced
            // outright; otherwise it is only allowed.
            let b1 = lowest(private_b & h.gamma(c))
                .or(lowest(private_b))
                .unwrap();
            Gadget::path(&[vec![a, b], vec![a1, b1], vec![a, c]])
        }
        None => {
            let b1 = lowest(private_b).unwrap();
            let a1 = lowest(h.gamma(a) & !h.gamma(b)).unwrap();
            let a2 = lowest(h.gamma(a) & !h.gamma(c)).unwrap();
            Gadget::path(&[
                vec![a, b],
                vec![a1, b1],
                vec![c, b],
                vec![c1, a2],
                vec![c, a],
            ])
        }
    };
    settle(h, g, [a, b], [a, c])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxVariant {
    Full,
    Star,
    Good,
}

/// Incomparable pairs {a,b} of irreflexive, non-adjacent vertices whose
/// private neighbourhoods are entirely reflexive.
pub fn is_bad_pair(h: &TargetGraph, a: usize, b: usize) -> bool {
    let refl = h.reflexive_vertices();
    !h.has_loop(a)
        && !h.has_loop(b)
        && !h.adj(a, b)
        && (h.gamma(a) & !h.gamma(b) & !refl) == 0
        && (h.gamma(b) & !h.gamma(a) & !refl) == 0
}

/// Graph on incomparable pairs; two pairs are adjacent when they intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aux {
    pub pairs: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
}

impl Aux {
    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (a.min(b), a.max(b)))
    }

    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.pairs.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        self.pairs.is_empty() || (0..self.pairs.len()).all(|v| self.path(0, v).is_some())
    }
}

pub fn build_aux(h: &TargetGraph, variant: AuxVariant) -> Aux {
    let mut pairs = Vec::new();
    for a in 0..h.n() {
        for b in a + 1..h.n() {
            let keep = match variant {
                AuxVariant::Full => true,
                AuxVariant::Star => h.has_loop(a) && h.has_loop(b),
                AuxVariant::Good => !is_bad_pair(h, a, b),
            };
            if keep && h.incomparable(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let meets =
        |p: (usize, usize), q: (usize, usize)| p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1;
    let adj = (0..pairs.len())
        .map(|i| {
            (0..pairs.len())
                .filter(|&j| j != i && meets(pairs[i], pairs[j]))
                .collect()
        })
        .collect();
    Aux { pairs, adj }
}

/// Identity-forcing move on an incomparable pair.
fn identity_move(h: &TargetGraph, a: usize, b: usize) -> Result<PairMove> {
    let a1 = lowest(h.gamma(a) & !h.gamma(b)).unwrap();
    let b1 = lowest(h.gamma(b) & !h.gamma(a)).unwrap();
    settle(
        h,
        Gadget::path(&[vec![a, b], vec![a1, b1], vec![a, b]]),
        [a, b],
        [a, b],
    )
}

/// The path {a,b} − {a′,b′} to private neighbours.
fn private_shift(h: &TargetGraph, a: usize, b: usize) -> Result<PairMove> {
    let a1 = lowest(h.gamma(a) & !h.gamma(b)).unwrap();
    let b1 = lowest(h.gamma(b) & !h.gamma(a)).unwrap();
    if !h.incomparable(a1, b1) {
        return verr(format!(
            "private neighbours {} and {} are comparable",
            a1 + 1,
            b1 + 1
        ));
    }
    settle(
        h,
        Gadget::path(&[vec![a, b], vec![a1, b1]]),
        [a, b],
        [a1, b1],
    )
}

fn reversed(m: &PairMove) -> PairMove {
    let mut g = m.gadget.clone();
    g.portals.reverse();
    PairMove {
        gadget: g,
        from: m.to,
        to: m.from,
    }
}

/// Chains normalized pair moves, tracking where the original pair lands.
fn chain(h: &TargetGraph, acc: Option<PairMove>, next: &PairMove) -> Result<PairMove> {
    let next_n = normalize_move(h, &next.gadget)?;
    let Some(acc) = acc else {
        return Ok(PairMove {
            gadget: next_n,
            from: next.from,
            to: next.to,
        });
    };
    let g = compose_moves(h, &acc.gadget, &next_n)?;
    let to = [next.image(acc.to[0]), next.image(acc.to[1])];
    let rep = move_report(h, &g)?;
    if !rep.forces(acc.from[0], to[0]) || !rep.forces(acc.from[1], to[1]) {
        return verr("chained move does not force the tracked bijection".into());
    }
    Ok(PairMove {
        gadget: g,
        from: acc.from,
        to,
    })
}

/// A move forcing a bijection from {a,b} onto {c,d} in an undecomposable
/// target.
pub fn move_between_pairs(
    h: &TargetGraph,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
) -> Result<PairMove> {
    if !h.incomparable(a, b) || !h.incomparable(c, d) {
        return Err(Error::Precondition(
            "both pairs must be incomparable".into(),
        ));
    }
    if (a.min(b), a.max(b)) == (c.min(d), c.max(d)) {
        return identity_move(h, a, b);
    }
    let strong = is_strong_split(h);
    let needs_shift = |x: usize, y: usize| {
        if strong {
            !h.has_loop(x)
        } else {
            is_bad_pair(h, x, y)
        }
    };
    let aux = build_aux(
        h,
        if strong {
            AuxVariant::Star
        } else {
            AuxVariant::Good
        },
    );
    let mut moves = Vec::new();
    let start = if needs_shift(a, b) {
        let m = private_shift(h, a, b)?;
        let to = m.to;
        moves.push(m);
        to
    } else {
        [a, b]
    };
    let (tail, end) = if needs_shift(c, d) {
        let m = reversed(&private_shift(h, c, d)?);
        let from = m.from;
        (Some(m), from)
    } else {
        (None, [c, d])
    };
    let missing = || Error::Precondition("pair outside the auxiliary graph".into());
    let s = aux.index(start[0], start[1]).ok_or_else(missing)?;
    let t = aux.index(end[0], end[1]).ok_or_else(missing)?;
    let path = aux.path(s, t).ok_or_else(|| {
        Error::Precondition("pairs lie in different components; target is decomposable".into())
    })?;
    for w in path.windows(2) {
        let (p, q) = (aux.pairs[w[0]], aux.pairs[w[1]]);
        let shared = if p.0 == q.0 || p.0 == q.1 { p.0 } else { p.1 };
        let other = |x: (usize, usize)| if x.0 == shared { x.1 } else { x.0 };
        moves.push(adjacent_pair_move(h, shared, other(p), other(q))?);
    }
    moves.extend(tail);
    if moves.is_empty() {
        return identity_move(h, a, b);
    }
    let mut acc: Option<PairMove> = None;
    for m in &moves {
        acc = Some(chain(h, acc, m)?);
    }
    let m = acc.unwrap();
    let mut want = [m.to[0], m.to[1]];
    want.sort_unstable();
    if want != [c.min(d), c.max(d)] {
        return verr(format!("chain ends at {:?}", m.to));
    }
    Ok(m)
}

/// Widens the input list of a pair move to `s` and re-checks the forcing.
pub fn relax_input_list(h: &TargetGraph, m: &PairMove, s: &[usize]) -> Result<PairMove> {
    if !h.is_incomparable_set(s) || !m.gadget.portal_list(0).iter().all(|x| s.contains(x)) {
        return Err(Error::Precondition(
            "S must be incomparable and contain the input list".into(),
        ));
    }
    let mut g = m.gadget.clone();
    let x = g.portals[0];
    g.graph.lists[x] = s.to_vec();
    g.graph.lists[x].sort_unstable();
    let rep = move_report(h, &g)?;
    if !rep.forces(m.from[0], m.to[0]) || !rep.forces(m.from[1], m.to[1]) {
        return verr("relaxation broke the forcing".into());
    }
    Ok(PairMove {
        gadget: g,
        from: m.from,
        to: m.to,
    })
}

/// An indicator gadget: portal 0 carries S, the rest carry {a,b}.
#[derive(Clone, Debug)]
pub struct Indicator {
    pub gadget: Gadget,
    pub relation: BTreeSet<Vec<usize>>,
    /// I(x) for each x ∈ S.
    pub codes: BTreeMap<usize, BTreeSet<Vec<usize>>>,
}

pub fn build_indicator(h: &TargetGraph, s: &[usize], a: usize, b: usize) -> Result<Indicator> {
    if s.len() < 2 || !h.is_incomparable_set(s) {
        return Err(Error::Precondition(
            "S must be incomparable with at least two elements".into(),
        ));
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    let mut g = Gadget::empty();
    let p = g.add_vertex(s.clone());
    g.portals = vec![p];
    let mut reaches = Vec::new();
    for &x in &s {
        for &y in &s {
            if x == y {
                continue;
            }
            let m = relax_input_list(h, &move_between_pairs(h, (x, y), (a, b))?, &s)?;
            let n = normalize_move(h, &m.gadget)?;
            reaches.push(move_report(h, &n)?.reach);
            let map = g.glue(&n, &[(n.portals[0], p)]);
            g.portals.push(map[n.portals[1]]);
        }
    }
    let mut relation = BTreeSet::new();
    let mut codes = BTreeMap::new();
    for &u in &s {
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for r in &reaches {
            words = words
                .iter()
                .flat_map(|w| r[&u].iter().map(move |&v| [w.as_slice(), &[v]].concat()))
                .collect();
        }
        for w in &words {
            relation.insert([&[u], w.as_slice()].concat());
        }
        codes.insert(u, words.into_iter().collect::<BTreeSet<_>>());
    }
    let table = cost_table(h, &g, Mode::Ed)?;
    if realization(&table, &relation).is_none() {
        return verr("indicator gadget does not realize its relation".into());
    }
    for (i, &u) in s.iter().enumerate() {
        if codes[&u].is_empty() {
            return verr(format!("I({}) is empty", u + 1));
        }
        for &v in &s[i + 1..] {
            if !codes[&u].is_disjoint(&codes[&v]) {
                return verr(format!("I({}) and I({}) intersect", u + 1, v + 1));
            }
        }
    }
    Ok(Indicator {
        gadget: g,
        relation,
        codes,
    })
}

/// NEQ over a set: all pairs of distinct elements.
pub fn neq(s: &[usize]) -> BTreeSet<Vec<usize>> {
    s.iter()
        .flat_map(|&u| s.iter().filter(move |&&v| v != u).map(move |&v| vec![u, v]))
        .collect()
}

/// Parallel composition with the portal-swapped copy of itself.
pub fn mirror_parallel(g: &Gadget) -> Result<Gadget> {
    let (x, y) = (g.portals[0], g.portals[1]);
    if g.graph.has_edge(x, y) || g.portal_list(0) != g.portal_list(1) {
        return Err(Error::Precondition(
            "mirroring needs non-adjacent portals with equal lists".into(),
        ));
    }
    let mut out = g.clone();
    out.glue(g, &[(x, y), (y, x)]);
    Ok(out)
}

/// One step of the path search: each start's cheapest cost to every vertex
/// of the newest list, shifted so each row has minimum zero.
type Rows = [Vec<(usize, u64)>; 2];

fn extend(h: &TargetGraph, rows: &Rows, list: &[usize]) -> Rows {
    rows.clone().map(|row| {
        let next: Vec<(usize, u64)> = list
            .iter()
            .map(|&v| {
                (
                    v,
                    row.iter()
                        .map(|&(u, c)| c + u64::from(!h.adj(u, v)))
                        .min()
                        .unwrap(),
                )
            })
            .collect();
        let m = next.iter().map(|p| p.1).min().unwrap();
        next.into_iter().map(|(v, c)| (v, c - m)).collect()
    })
}

/// Closes a path on the end list {a,b}; entry [i][j] is the cost of
/// (ends[i], ends[j]) up to a per-row constant.
fn close(h: &TargetGraph, rows: &Rows, ends: [usize; 2]) -> [[u64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = rows[i]
                .iter()
                .map(|&(u, c)| c + u64::from(!h.adj(u, ends[j])))
                .min()
                .unwrap();
        }
    }
    out
}

/// t(a,a) + t(b,b) − t(a,b) − t(b,a). Pendants on the portals leave it
/// unchanged, and a 1-realizer of NEQ(a,b) has exactly 2.
fn interaction(c: &[[u64; 2]; 2]) -> i64 {
    (c[0][0] + c[1][1]) as i64 - (c[0][1] + c[1][0]) as i64
}

fn add_margin(
    h: &TargetGraph,
    g: &mut Gadget,
    portal: usize,
    (a, b): (usize, usize),
    d: i64,
) -> Result<()> {
    let at = g.portals[portal];
    match d {
        d if d > 0 => attach_pendants(h, g, at, a, d as u64),
        d if d < 0 => attach_pendants(h, g, at, b, d.unsigned_abs()),
        _ => Ok(()),
    }
}

/// Searches for a gadget that 1-realizes NEQ(a,b): a path with lists of size
/// one or two, optionally in parallel with its mirror image, plus pendants on
/// the portals. Paths have at most `budget` inner vertices and are explored
/// breadth first, merging paths with the same relative costs.
pub fn synthesize_neq(
    h: &TargetGraph,
    a: usize,
    b: usize,
    budget: usize,
) -> Result<Option<Gadget>> {
    let o = find_obstruction(h)
        .ok_or_else(|| Error::Precondition("target has no obstruction".into()))?;
    if a == b || !o.vertices.contains(&a) || !o.vertices.contains(&b) {
        return Err(Error::Precondition(
            "a and b must be distinct obstruction vertices".into(),
        ));
    }
    let (a, b) = (a.min(b), a.max(b));
    let mut pool: Vec<usize> = o.vertices.iter().chain(&o.witnesses).copied().collect();
    pool.extend(0..h.n());
    let mut seen_v = BTreeSet::new();
    pool.retain(|&x| seen_v.insert(x));
    let mut choices: Vec<Vec<usize>> = pool.iter().map(|&x| vec![x]).collect();
    for (i, &x) in pool.iter().enumerate() {
        for &y in &pool[i + 1..] {
            choices.push(vec![x, y]);
        }
    }
    let ends = [a, b];
    let incomparable = h.is_incomparable_set(&ends);
    let start: Rows = [vec![(a, 0)], vec![(b, 0)]];
    let mut frontier: Vec<(Vec<usize>, Rows)> = vec![(vec![], start)];
    let mut seen: BTreeSet<Rows> = BTreeSet::new();
    for k in 0..=budget {
        for (path, rows) in &frontier {
            let c = close(h, rows, ends);
            let mirror = match interaction(&c) {
                2 => false,
                1 if k > 0 => true,
                _ => continue,
            };
            let mut lists = vec![ends.to_vec()];
            lists.extend(path.iter().map(|&i| choices[i].clone()));
            lists.push(ends.to_vec());
            let mut g = Gadget::path(&lists);
            if mirror {
                g = mirror_parallel(&g)?;
            }
            let t = cost_table(h, &g, Mode::Ed)?;
            let at = |x: usize, y: usize| t.at(&[x, y]).unwrap() as i64;
            let e = at(a, b) - at(a, a) + 1;
            let d = e + at(b, a) - at(a, b);
            if (d != 0 || e != 0) && !incomparable {
                continue;
            }
            add_margin(h, &mut g, 0, (a, b), d)?;
            add_margin(h, &mut g, 1, (a, b), e)?;
            if super::verify_realizes(h, &g, &neq(&ends), Some(1))? {
                return Ok(Some(g));
            }
            return verr("path cost shortcut disagrees with the cost table".into());
        }
        if k == budget {
            break;
        }
        let mut next = Vec::new();
        for (path, rows) in &frontier {
            for (i, l) in choices.iter().enumerate() {
                let r = extend(h, rows, l);
                if seen.insert(r.clone()) {
                    next.push(([path.as_slice(), &[i]].concat(), r));
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Turns a realizer of R′ ⊆ S^r × {a,b}^m into a 1-realizer of R ⊆ S^r,
/// where r = `width`.
/// The last m portals of `g` are the z-portals, one per tuple of S^r ∖ R in
/// lexicographic order; each gets a pendant with list {A}, A ∈ Γ(a)∖Γ(b).
pub fn one_realizer_from(
    h: &TargetGraph,
    g: &Gadget,
    s: &[usize],
    width: usize,
    r: &BTreeSet<Vec<usize>>,
    (a, b): (usize, usize),
) -> Result<Gadget> {
    let arity = g.portals.len();
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..width {
        all = all
            .iter()
            .flat_map(|t| s.iter().map(move |&x| [t.as_slice(), &[x]].concat()))
            .collect();
    }
    let bad: Vec<Vec<usize>> = all.iter().filter(|t| !r.contains(*t)).cloned().collect();
    if arity != width + bad.len() {
        return Err(Error::Precondition(format!(
            "expected {} portals, found {}",
            width + bad.len(),
            arity
        )));
    }
    let mut r_prime = BTreeSet::new();
    for t in &all {
        let mut tail = vec![a; bad.len()];
        if let Some(i) = bad.iter().position(|d| d == t) {
            tail[i] = b;
        }
        r_prime.insert([t.as_slice(), &tail].concat());
    }
    if realization(&cost_table(h, g, Mode::Ed)?, &r_prime).is_none() {
        return verr("input gadget does not realize R′".into());
    }
    let big_a = lowest(h.gamma(a) & !h.gamma(b))
        .ok_or_else(|| Error::Precondition("a and b are comparable".into()))?;
    let mut out = g.clone();
    for &z in &g.portals[width..] {
        let v = out.add_vertex(vec![big_a]);
        out.add_edge(z, v);
    }
    out.portals.truncate(width);
    match realization(&cost_table(h, &out, Mode::Ed)?, r) {
        Some(x) if x.omega == Some(1) || x.omega.is_none() && r.len() == all.len() => Ok(out),
        _ => verr("pendant construction does not 1-realize R".into()),
    }
}
