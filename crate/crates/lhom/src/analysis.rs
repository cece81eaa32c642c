//! Dichotomy classification, obstructions, decompositions and i•(H).

use std::fmt;

use crate::graph::{members, set_of, TargetGraph, VertexSet};
use crate::lists::{i_of, max_incomparable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionKind {
    IrreflexiveEdge,
    PrivateTriple,
    CoPrivateTriple,
}

impl ObstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObstructionKind::IrreflexiveEdge => "irreflexive-edge",
            ObstructionKind::PrivateTriple => "private-triple",
            ObstructionKind::CoPrivateTriple => "co-private-triple",
        }
    }
}

/// An obstruction with its witnesses. For a private triple, `witnesses[j]`
/// is adjacent to `vertices[j]` only; for a co-private triple, `witnesses[j]`
/// is adjacent to every member except `vertices[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertices: Vec<usize>,
    pub witnesses: Vec<usize>,
}

impl Obstruction {
    pub fn is_valid(&self, h: &TargetGraph) -> bool {
        let v = &self.vertices;
        match self.kind {
            ObstructionKind::IrreflexiveEdge => {
                v.len() == 2 && !h.has_loop(v[0]) && !h.has_loop(v[1]) && h.adj(v[0], v[1])
            }
            ObstructionKind::PrivateTriple => {
                v.len() == 3
                    && self.witnesses.len() == 3
                    && (0..3).all(|j| {
                        let w = self.witnesses[j];
                        (0..3).all(|k| h.adj(w, v[k]) == (k == j))
                    })
            }
            ObstructionKind::CoPrivateTriple => {
                v.len() == 3
                    && self.witnesses.len() == 3
                    && (0..3).all(|j| {
                        let w = self.witnesses[j];
                        (0..3).all(|k| h.adj(w, v[k]) == (k != j))
                    })
            }
        }
    }

    /// Re-labels vertices and witnesses through `map`.
    pub fn mapped(&self, map: &[usize]) -> Obstruction {
        Obstruction {
            kind: self.kind,
            vertices: self.vertices.iter().map(|&v| map[v]).collect(),
            witnesses: self.witnesses.iter().map(|&v| map[v]).collect(),
        }
    }
}

fn lowest(set: VertexSet) -> Option<usize> {
    (set != 0).then(|| set.trailing_zeros() as usize)
}

/// Lexicographically first obstruction: irreflexive edges, then triples
/// (private before co-private for each triple).
pub fn find_obstruction(h: &TargetGraph) -> Option<Obstruction> {
    let n = h.n();
    for u in 0..n {
        for v in u + 1..n {
            if !h.has_loop(u) && !h.has_loop(v) && h.adj(u, v) {
                return Some(Obstruction {
                    kind: ObstructionKind::IrreflexiveEdge,
                    vertices: vec![u, v],
                    witnesses: vec![],
                });
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = [a, b, c];
                let g = t.map(|x| h.gamma(x));
                let private: Vec<Option<usize>> = (0..3)
                    .map(|j| lowest(g[j] & !g[(j + 1) % 3] & !g[(j + 2) % 3]))
                    .collect();
                if private.iter().all(Option::is_some) {
                    return Some(Obstruction {
                        kind: ObstructionKind::PrivateTriple,
                        vertices: t.to_vec(),
                        witnesses: private.into_iter().flatten().collect(),
                    });
                }
                let co: Vec<Option<usize>> = (0..3)
                    .map(|j| lowest(g[(j + 1) % 3] & g[(j + 2) % 3] & !g[j]))
                    .collect();
                if co.iter().all(Option::is_some) {
                    return Some(Obstruction {
                        kind: ObstructionKind::CoPrivateTriple,
                        vertices: t.to_vec(),
                        witnesses: co.into_iter().flatten().collect(),
                    });
                }
            }
        }
    }
    None
}

pub fn has_obstruction(h: &TargetGraph) -> bool {
    find_obstruction(h).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdWitness {
    IrreflexiveVertex(usize),
    ThreeIndependent([usize; 3]),
    InducedC4([usize; 4]),
    InducedC5([usize; 5]),
}

impl VdWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            VdWitness::IrreflexiveVertex(_) => "irreflexive-vertex",
            VdWitness::ThreeIndependent(_) => "three-independent",
            VdWitness::InducedC4(_) => "induced-c4",
            VdWitness::InducedC5(_) => "induced-c5",
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            VdWitness::IrreflexiveVertex(v) => vec![*v],
            VdWitness::ThreeIndependent(t) => t.to_vec(),
            VdWitness::InducedC4(c) => c.to_vec(),
            VdWitness::InducedC5(c) => c.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Poly,
    NpHard(W),
}

impl<W> Verdict<W> {
    pub fn is_poly(&self) -> bool {
        matches!(self, Verdict::Poly)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Poly => "poly",
            Verdict::NpHard(_) => "np-hard",
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Finds an induced cycle on exactly `len` vertices (4 or 5), ignoring loops,
/// in cyclic order starting from its smallest vertex.
fn induced_cycle(h: &TargetGraph, len: usize) -> Option<Vec<usize>> {
    for sub in combinations(h.n(), len) {
        let mask = set_of(&sub);
        let regular = sub
            .iter()
            .all(|&v| (h.gamma(v) & mask & !(1 << v)).count_ones() == 2);
        if !regular {
            continue;
        }
        let mut cycle = vec![sub[0]];
        let mut prev = usize::MAX;
        let mut cur = sub[0];
        while cycle.len() < len {
            let next = members(h.gamma(cur) & mask & !(1 << cur))
                .find(|&x| x != prev)
                .unwrap();
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        if h.adj(cur, sub[0]) {
            return Some(cycle);
        }
    }
    None
}

pub fn classify_vd(h: &TargetGraph) -> Verdict<VdWitness> {
    if let Some(v) = (0..h.n()).find(|&v| !h.has_loop(v)) {
        return Verdict::NpHard(VdWitness::IrreflexiveVertex(v));
    }
    for t in combinations(h.n(), 3) {
        if !h.adj(t[0], t[1]) && !h.adj(t[0], t[2]) && !h.adj(t[1], t[2]) {
            return Verdict::NpHard(VdWitness::ThreeIndependent([t[0], t[1], t[2]]));
        }
    }
    if let Some(c) = induced_cycle(h, 4) {
        return Verdict::NpHard(VdWitness::InducedC4([c[0], c[1], c[2], c[3]]));
    }
    if let Some(c) = induced_cycle(h, 5) {
        return Verdict::NpHard(VdWitness::InducedC5([c[0], c[1], c[2], c[3], c[4]]));
    }
    Verdict::Poly
}

pub fn classify_ed(h: &TargetGraph) -> Verdict<Obstruction> {
    match find_obstruction(h) {
        Some(o) => Verdict::NpHard(o),
        None => Verdict::Poly,
    }
}

/// A partition (A, B, C) of V(H): B a reflexive clique fully joined to A,
/// C an irreflexive independent set with no edge to A.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl Decomposition {
    pub fn from_masks(a: VertexSet, b: VertexSet, c: VertexSet) -> Self {
        Decomposition {
            a: members(a).collect(),
            b: members(b).collect(),
            c: members(c).collect(),
        }
    }

    pub fn masks(&self) -> (VertexSet, VertexSet, VertexSet) {
        (set_of(&self.a), set_of(&self.b), set_of(&self.c))
    }

    /// Which part a vertex lies in: 0 for A, 1 for B, 2 for C.
    pub fn part_of(&self, v: usize) -> usize {
        if self.a.contains(&v) {
            0
        } else if self.b.contains(&v) {
            1
        } else {
            2
        }
    }
}

pub fn is_decomposition(h: &TargetGraph, d: &Decomposition) -> bool {
    let (a, b, c) = d.masks();
    if a & b != 0 || a & c != 0 || b & c != 0 || a | b | c != h.all() {
        return false;
    }
    if a == 0 || b | c == 0 {
        return false;
    }
    for u in members(b) {
        if h.gamma(u) & (b | a) != b | a {
            return false;
        }
    }
    members(c).all(|u| h.gamma(u) & (c | a) == 0)
}

/// Finds a decomposition by a 2-SAT closure on "v ∈ A". A vertex outside A
/// lies in B when looped and in C otherwise, so every constraint is a
/// 2-clause without negative pairs.
pub fn find_decomposition(h: &TargetGraph) -> Option<Decomposition> {
    let n = h.n();
    let refl = h.reflexive_vertices();
    // imp[u]: x_u implies x_v for v in imp[u]; pos[u]: clause (x_u or x_v).
    let mut imp = vec![0u64; n];
    let mut rev = vec![0u64; n];
    let mut pos = vec![0u64; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let ru = refl >> u & 1 == 1;
            let rv = refl >> v & 1 == 1;
            let e = h.adj(u, v);
            if (ru && rv && !e) || (!ru && !rv && e) {
                pos[u] |= 1 << v;
            }
            if (rv && !e) || (!rv && e) {
                imp[u] |= 1 << v;
                rev[v] |= 1 << u;
            }
        }
    }
    for q in 0..n {
        let mut falses: u64 = 1 << q;
        let mut trues: u64 = 0;
        let conflict = loop {
            let mut nf = falses;
            let mut nt = trues;
            for v in members(falses) {
                nf |= rev[v];
                nt |= pos[v];
            }
            for u in members(trues) {
                nt |= imp[u];
            }
            if nf & nt != 0 {
                break true;
            }
            if nf == falses && nt == trues {
                break false;
            }
            falses = nf;
            trues = nt;
        };
        if conflict {
            continue;
        }
        let a = h.all() & !falses;
        if a != 0 {
            let d = Decomposition::from_masks(a, falses & refl, falses & !refl);
            debug_assert!(is_decomposition(h, &d));
            return Some(d);
        }
    }
    None
}

pub fn is_decomposable(h: &TargetGraph) -> bool {
    find_decomposition(h).is_some()
}

/// No irreflexive edge and no reflexive non-edge.
pub fn is_strong_split(h: &TargetGraph) -> bool {
    let n = h.n();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            let (ru, rv) = (h.has_loop(u), h.has_loop(v));
            !(ru && rv && !h.adj(u, v)) && !(!ru && !rv && h.adj(u, v))
        })
    })
}

pub fn has_universal_or_isolated(h: &TargetGraph) -> bool {
    (0..h.n()).any(|v| h.gamma(v) == h.all() || h.gamma(v) == 0)
}

/// Vertices not strictly dominated by any other vertex.
pub fn maximal_vertices(h: &TargetGraph) -> VertexSet {
    (0..h.n())
        .filter(|&u| !(0..h.n()).any(|v| h.dominates(v, u) && h.gamma(u) != h.gamma(v)))
        .fold(0, |acc, u| acc | 1 << u)
}

/// Certificate search for strong split graphs without universal or isolated
/// vertices. Returns the final (B, C).
pub fn algorithm1(h: &TargetGraph) -> (VertexSet, VertexSet) {
    let refl = h.reflexive_vertices();
    let mut b = maximal_vertices(h);
    let mut c: VertexSet = 0;
    loop {
        let outside = h.all() & !(b | c);
        if let Some(v) = members(outside & !refl).find(|&v| b & !h.gamma(v) != 0) {
            c |= 1 << v;
        } else if let Some(v) = members(outside & refl).find(|&v| c & h.gamma(v) != 0) {
            b |= 1 << v;
        } else {
            return (b, c);
        }
    }
}

/// Certificate search for graphs with an irreflexive edge or a reflexive
/// non-edge. Returns the final A.
pub fn algorithm2(h: &TargetGraph) -> VertexSet {
    let refl = h.reflexive_vertices();
    let n = h.n();
    let mut a: VertexSet = 0;
    for u in 0..n {
        for v in u + 1..n {
            let (ru, rv) = (h.has_loop(u), h.has_loop(v));
            if (ru && rv && !h.adj(u, v)) || (!ru && !rv && h.adj(u, v)) {
                a |= 1 << u | 1 << v;
            }
        }
    }
    loop {
        let outside = h.all() & !a;
        if let Some(v) = members(outside & !refl).find(|&v| h.gamma(v) & a != 0) {
            a |= 1 << v;
        } else if let Some(v) = members(outside & refl).find(|&v| a & !h.gamma(v) != 0) {
            a |= 1 << v;
        } else {
            return a;
        }
    }
}

/// Decomposition found by the certificate algorithm matching the graph's
/// shape, or `None` when neither applies or the graph is undecomposable.
pub fn decomposition_by_certificate(h: &TargetGraph) -> Option<Option<Decomposition>> {
    let refl = h.reflexive_vertices();
    if is_strong_split(h) {
        if has_universal_or_isolated(h) {
            return None;
        }
        let (b, c) = algorithm1(h);
        let a = h.all() & !(b | c);
        Some((a != 0).then(|| Decomposition::from_masks(a, b, c)))
    } else {
        let a = algorithm2(h);
        let rest = h.all() & !a;
        Some((rest != 0).then(|| Decomposition::from_masks(a, rest & refl, rest & !refl)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionTree {
    Leaf {
        vertices: Vec<usize>,
        i: usize,
        has_obstruction: bool,
        decomposable: bool,
    },
    Split {
        vertices: Vec<usize>,
        decomposition: Decomposition,
        a_side: Box<DecompositionTree>,
        bc_side: Box<DecompositionTree>,
    },
}

impl DecompositionTree {
    pub fn vertices(&self) -> &[usize] {
        match self {
            DecompositionTree::Leaf { vertices, .. }
            | DecompositionTree::Split { vertices, .. } => vertices,
        }
    }

    pub fn leaves(&self) -> Vec<&DecompositionTree> {
        match self {
            DecompositionTree::Leaf { .. } => vec![self],
            DecompositionTree::Split {
                a_side, bc_side, ..
            } => {
                let mut out = a_side.leaves();
                out.extend(bc_side.leaves());
                out
            }
        }
    }

    /// Largest i over undecomposable leaves with an obstruction (1 if none),
    /// with the first maximizing leaf.
    pub fn leaf_max(&self) -> (usize, Vec<usize>) {
        let mut best = (1, Vec::new());
        for leaf in self.leaves() {
            if let DecompositionTree::Leaf {
                vertices,
                i,
                has_obstruction: true,
                decomposable: false,
            } = leaf
            {
                if best.1.is_empty() || *i > best.0 {
                    best = (*i, vertices.clone());
                }
            }
        }
        best
    }
}

/// Splits along `find_decomposition` while the current subgraph contains an
/// obstruction and is decomposable.
pub fn decomposition_tree(h: &TargetGraph) -> DecompositionTree {
    tree_on(h, &(0..h.n()).collect::<Vec<_>>())
}

fn tree_on(h: &TargetGraph, vertices: &[usize]) -> DecompositionTree {
    let sub = h.induced(vertices);
    let has_obstruction = has_obstruction(&sub);
    let dec = if has_obstruction {
        find_decomposition(&sub)
    } else {
        None
    };
    match dec {
        Some(d) => {
            let lift = |part: &[usize]| part.iter().map(|&x| vertices[x]).collect::<Vec<_>>();
            let (a, b, c) = (lift(&d.a), lift(&d.b), lift(&d.c));
            let mut bc: Vec<usize> = b.iter().chain(&c).copied().collect();
            bc.sort_unstable();
            DecompositionTree::Split {
                vertices: vertices.to_vec(),
                a_side: Box::new(tree_on(h, &a)),
                bc_side: Box::new(tree_on(h, &bc)),
                decomposition: Decomposition { a, b, c },
            }
        }
        None => DecompositionTree::Leaf {
            vertices: vertices.to_vec(),
            i: i_of(&sub),
            has_obstruction,
            decomposable: !has_obstruction && is_decomposable(&sub),
        },
    }
}

/// i•(H) and a witness vertex set (empty when H has no obstruction).
pub fn i_bullet(h: &TargetGraph) -> (usize, Vec<usize>) {
    decomposition_tree(h).leaf_max()
}

/// i•(H) by enumerating every induced subgraph. Exponential in |V(H)|.
pub fn i_bullet_exhaustive(h: &TargetGraph) -> (usize, Vec<usize>) {
    let mut best = (1, Vec::new());
    for mask in 1..=h.all() {
        let vs: Vec<usize> = members(mask).collect();
        let sub = h.induced(&vs);
        if !has_obstruction(&sub) || is_decomposable(&sub) {
            continue;
        }
        let i = i_of(&sub);
        if best.1.is_empty() || i > best.0 {
            best = (i, vs);
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub vd: Verdict<VdWitness>,
    pub ed: Verdict<Obstruction>,
    pub i: usize,
    pub i_witness: Vec<usize>,
    pub i_bullet: usize,
    pub i_bullet_witness: Vec<usize>,
    pub decomposition: Option<Decomposition>,
    pub tree: DecompositionTree,
}

pub fn classify(h: &TargetGraph) -> Classification {
    let (i, i_witness) = max_incomparable(h);
    let tree = decomposition_tree(h);
    let (i_bullet, i_bullet_witness) = tree.leaf_max();
    assert!(i_bullet <= i, "i-bullet exceeds i");
    Classification {
        vd: classify_vd(h),
        ed: classify_ed(h),
        i,
        i_witness,
        i_bullet,
        i_bullet_witness,
        decomposition: find_decomposition(h),
        tree,
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={:?} B={:?} C={:?}", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflexive(n: usize, edges: &[(usize, usize)]) -> TargetGraph {
        let mut h = TargetGraph::from_edges(n, edges);
        for v in 0..n {
            h.add_edge(v, v);
        }
        h
    }

    #[test]
    fn irreflexive_k2_has_edge_obstruction() {
        let h = TargetGraph::from_edges(2, &[(0, 1)]);
        let o = find_obstruction(&h).unwrap();
        assert_eq!(o.kind, ObstructionKind::IrreflexiveEdge);
        assert!(o.is_valid(&h));
    }

    #[test]
    fn independent_reflexive_triple_is_its_own_witness() {
        let h = reflexive(3, &[]);
        let o = find_obstruction(&h).unwrap();
        assert_eq!(o.kind, ObstructionKind::PrivateTriple);
        assert_eq!(o.witnesses, vec![0, 1, 2]);
    }

    #[test]
    fn reflexive_triangle_is_obstruction_free() {
        assert!(find_obstruction(&reflexive(3, &[(0, 1), (1, 2), (0, 2)])).is_none());
    }

    #[test]
    fn vd_witnesses() {
        assert_eq!(
            classify_vd(&TargetGraph::new(1)),
            Verdict::NpHard(VdWitness::IrreflexiveVertex(0))
        );
        let c4 = reflexive(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            classify_vd(&c4),
            Verdict::NpHard(VdWitness::InducedC4([0, 1, 2, 3]))
        );
        let c5 = reflexive(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
        assert_eq!(
            classify_vd(&c5),
            Verdict::NpHard(VdWitness::InducedC5([0, 2, 4, 1, 3]))
        );
        assert!(classify_vd(&reflexive(3, &[(0, 1), (1, 2)])).is_poly());
    }

    #[test]
    fn irreflexive_k2_is_undecomposable() {
        assert!(find_decomposition(&TargetGraph::from_edges(2, &[(0, 1)])).is_none());
    }

    #[test]
    fn universal_reflexive_vertex_goes_to_b() {
        let h = TargetGraph::from_edges(3, &[(0, 0), (0, 1), (0, 2), (1, 2)]);
        let d = find_decomposition(&h).unwrap();
        assert!(is_decomposition(&h, &d));
        let alt = Decomposition {
            a: vec![1, 2],
            b: vec![0],
            c: vec![],
        };
        assert!(is_decomposition(&h, &alt));
    }

    #[test]
    fn strong_split_examples() {
        assert!(is_strong_split(&reflexive(3, &[(0, 1), (1, 2), (0, 2)])));
        assert!(!is_strong_split(&TargetGraph::from_edges(2, &[(0, 1)])));
        assert!(!is_strong_split(&reflexive(2, &[])));
    }

    #[test]
    fn complete_graphs_have_i_bullet_q() {
        for q in 2..=5 {
            let mut h = TargetGraph::new(q);
            for u in 0..q {
                for v in u + 1..q {
                    h.add_edge(u, v);
                }
            }
            assert_eq!(i_bullet(&h).0, q);
            assert_eq!(i_bullet_exhaustive(&h).0, q);
        }
    }

    #[test]
    fn obstruction_free_graph_has_i_bullet_one() {
        let h = reflexive(3, &[(0, 1), (1, 2)]);
        assert_eq!(i_bullet(&h), (1, vec![]));
    }
}
