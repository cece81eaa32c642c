//! Dynamic programming over nice tree decompositions.
//!
//! A state assigns each bag vertex one of its options: a list element, or
//! deletion in vertex-deletion mode. The solvers check every table against
//! (i(H)+1)^|bag| for VD and i(H)^|bag| for ED.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Instance, Mode, Solution, TargetGraph};
use crate::lists::{i_of, reduce_lists};
use crate::td::{build_td, make_nice, NiceKind, NiceTd, TreeDecomposition};

/// One option for a vertex: an image in H (`None` = deleted) and its cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choice {
    pub image: Option<usize>,
    pub weight: u64,
}

impl Choice {
    pub fn to(image: usize) -> Self {
        Choice {
            image: Some(image),
            weight: 0,
        }
    }

    pub fn deleted(weight: u64) -> Self {
        Choice {
            image: None,
            weight,
        }
    }
}

/// Optimum of a weighted assignment problem over a nice decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub cost: u64,
    /// Index of the chosen option per vertex.
    pub picks: Vec<usize>,
    pub max_states: usize,
    /// (bag size, table size) of every node, bottom-up.
    pub profile: Vec<(usize, usize)>,
}

type Table = HashMap<Vec<u8>, u64>;

struct Run<'a> {
    h: &'a TargetGraph,
    choices: &'a [Vec<Choice>],
    mode: Mode,
    nice: &'a NiceTd,
    tables: Vec<Table>,
}

fn position(bag: &[usize], v: usize) -> usize {
    bag.binary_search(&v).unwrap()
}

fn bound(base: usize, bag: usize) -> u128 {
    (base as u128).saturating_pow(bag as u32)
}

impl Run<'_> {
    fn image(&self, v: usize, x: u8) -> Option<usize> {
        self.choices[v][x as usize].image
    }

    fn weight(&self, v: usize, x: u8) -> u64 {
        self.choices[v][x as usize].weight
    }

    fn fill(&mut self, base: Option<usize>) -> Result<Vec<(usize, usize)>> {
        let mut profile = Vec::new();
        for idx in 0..self.nice.nodes.len() {
            let node = &self.nice.nodes[idx];
            let mut table = Table::new();
            match node.kind {
                NiceKind::Leaf => {
                    table.insert(vec![], 0);
                }
                NiceKind::IntroduceVertex(v) => {
                    let p = position(&node.bag, v);
                    for (state, &c) in &self.tables[node.children[0]] {
                        for x in 0..self.choices[v].len() as u8 {
                            let mut s = state.clone();
                            s.insert(p, x);
                            table.insert(s, c + self.weight(v, x));
                        }
                    }
                }
                NiceKind::IntroduceEdge(u, v) => {
                    let (pu, pv) = (position(&node.bag, u), position(&node.bag, v));
                    for (state, &c) in &self.tables[node.children[0]] {
                        match (self.image(u, state[pu]), self.image(v, state[pv])) {
                            (Some(a), Some(b)) if !self.h.adj(a, b) => {
                                if self.mode == Mode::Ed {
                                    table.insert(state.clone(), c + 1);
                                }
                            }
                            _ => {
                                table.insert(state.clone(), c);
                            }
                        }
                    }
                }
                NiceKind::Forget(v) => {
                    let child = &self.nice.nodes[node.children[0]];
                    let p = position(&child.bag, v);
                    for (state, &c) in &self.tables[node.children[0]] {
                        let mut s = state.clone();
                        s.remove(p);
                        let e = table.entry(s).or_insert(u64::MAX);
                        *e = (*e).min(c);
                    }
                }
                NiceKind::Join => {
                    let (l, r) = (
                        &self.tables[node.children[0]],
                        &self.tables[node.children[1]],
                    );
                    for (state, &c) in l {
                        if let Some(&d) = r.get(state) {
                            let shared: u64 = node
                                .bag
                                .iter()
                                .zip(state)
                                .map(|(&v, &x)| self.weight(v, x))
                                .sum();
                            table.insert(state.clone(), c + d - shared);
                        }
                    }
                }
            }
            if let Some(base) = base {
                if table.len() as u128 > bound(base, node.bag.len()) {
                    return Err(Error::Verification(format!(
                        "table with {} states exceeds {}^{}",
                        table.len(),
                        base,
                        node.bag.len()
                    )));
                }
            }
            profile.push((node.bag.len(), table.len()));
            self.tables.push(table);
        }
        Ok(profile)
    }

    /// Walks down from the root, fixing each vertex where it is forgotten.
    fn trace(&self) -> Vec<usize> {
        let mut picks = vec![0; self.choices.len()];
        let mut stack = vec![(self.nice.root(), Vec::<u8>::new())];
        while let Some((idx, state)) = stack.pop() {
            let node = &self.nice.nodes[idx];
            let cost = self.tables[idx][&state];
            match node.kind {
                NiceKind::Leaf => {}
                NiceKind::IntroduceVertex(v) => {
                    let mut s = state;
                    s.remove(position(&node.bag, v));
                    stack.push((node.children[0], s));
                }
                NiceKind::IntroduceEdge(..) => stack.push((node.children[0], state)),
                NiceKind::Join => {
                    stack.push((node.children[0], state.clone()));
                    stack.push((node.children[1], state));
                }
                NiceKind::Forget(v) => {
                    let child = node.children[0];
                    let p = position(&self.nice.nodes[child].bag, v);
                    let x = (0..self.choices[v].len() as u8)
                        .find(|&x| {
                            let mut s = state.clone();
                            s.insert(p, x);
                            self.tables[child].get(&s) == Some(&cost)
                        })
                        .expect("forget node has a witness");
                    picks[v] = x as usize;
                    let mut s = state;
                    s.insert(p, x);
                    stack.push((child, s));
                }
            }
        }
        picks
    }
}

/// Minimizes the total weight of chosen options plus, in ED mode, the number
/// of edges whose images are non-adjacent. In VD mode such edges are
/// forbidden. `base` bounds every table by base^|bag|. Returns `None` when no
/// assignment is feasible.
pub fn optimize(
    h: &TargetGraph,
    choices: &[Vec<Choice>],
    mode: Mode,
    nice: &NiceTd,
    base: Option<usize>,
) -> Result<Option<Optimum>> {
    if choices.iter().any(|c| c.len() > u8::MAX as usize) {
        return Err(Error::TooLarge(
            "more than 255 options for one vertex".into(),
        ));
    }
    let mut r = Run {
        h,
        choices,
        mode,
        nice,
        tables: Vec::new(),
    };
    let profile = r.fill(base)?;
    let max_states = profile.iter().map(|p| p.1).max().unwrap_or(0);
    let cost = match r.tables[nice.root()].get(&vec![]) {
        Some(&c) => c,
        None => return Ok(None),
    };
    Ok(Some(Optimum {
        cost,
        picks: r.trace(),
        max_states,
        profile,
    }))
}

fn run(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
    mode: Mode,
    checked: bool,
) -> Result<(Instance, Optimum, usize)> {
    inst.validate(h)?;
    let inst = reduce_lists(h, inst);
    if mode == Mode::Ed {
        if let Some(v) = inst.lists.iter().position(|l| l.is_empty()) {
            return Err(Error::Infeasible(format!(
                "vertex {} has an empty list",
                v + 1
            )));
        }
    }
    let built;
    let td = match td {
        Some(td) => td,
        None => {
            built = build_td(inst.n, &inst.edges);
            &built
        }
    };
    let nice = make_nice(inst.n, &inst.edges, td)?;
    let choices: Vec<Vec<Choice>> = inst
        .lists
        .iter()
        .map(|l| {
            let mut c: Vec<Choice> = l.iter().map(|&x| Choice::to(x)).collect();
            if mode == Mode::Vd {
                c.push(Choice::deleted(1));
            }
            c
        })
        .collect();
    let base = match mode {
        Mode::Vd => i_of(h) + 1,
        Mode::Ed => i_of(h),
    };
    let opt = optimize(h, &choices, mode, &nice, checked.then_some(base))?
        .expect("deleting everything is feasible");
    Ok((inst, opt, nice.width()))
}

fn finish(
    mut sol: Solution,
    opt: &Optimum,
    width: usize,
    h: &TargetGraph,
    inst: &Instance,
) -> Result<Solution> {
    if sol.cost != opt.cost {
        return Err(Error::Verification(format!(
            "traceback cost {} differs from table optimum {}",
            sol.cost, opt.cost
        )));
    }
    sol.stats.width = Some(width);
    sol.stats.max_bag_states = Some(opt.max_states);
    sol.check(h, inst)?;
    Ok(sol)
}

/// Exact LHomVD by dynamic programming; builds a decomposition when none is
/// given.
pub fn solve_vd_dp(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
) -> Result<Solution> {
    let (red, opt, width) = run(h, inst, td, Mode::Vd, true)?;
    let hom = (0..red.n)
        .map(|v| red.lists[v].get(opt.picks[v]).copied())
        .collect();
    finish(
        Solution::from_vd_map(hom, "dp-vertex"),
        &opt,
        width,
        h,
        inst,
    )
}

/// Exact LHomED by dynamic programming.
pub fn solve_ed_dp(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
) -> Result<Solution> {
    let (red, opt, width) = run(h, inst, td, Mode::Ed, true)?;
    let map = (0..red.n).map(|v| red.lists[v][opt.picks[v]]).collect();
    finish(
        Solution::from_ed_map(h, inst, map, "dp-edge"),
        &opt,
        width,
        h,
        inst,
    )
}

/// (bag size, table size) for every node of the DP, computed without the
/// built-in table bound so callers can check it independently.
pub fn table_profile(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
    mode: Mode,
) -> Result<Vec<(usize, usize)>> {
    run(h, inst, td, mode, false).map(|(_, opt, _)| opt.profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{cycle_edges, irreflexive_complete, loopless_k1};

    #[test]
    fn vertex_cover_of_triangle() {
        let inst = Instance::with_lists(3, &cycle_edges(3), vec![vec![0]; 3]).unwrap();
        assert_eq!(solve_vd_dp(&loopless_k1(), &inst, None).unwrap().cost, 2);
    }

    #[test]
    fn odd_cycle_transversal_of_c5() {
        let inst = Instance::with_lists(5, &cycle_edges(5), vec![vec![0, 1]; 5]).unwrap();
        assert_eq!(
            solve_vd_dp(&irreflexive_complete(2), &inst, None)
                .unwrap()
                .cost,
            1
        );
    }

    #[test]
    fn max_cut_defects() {
        let k2 = irreflexive_complete(2);
        let tri = Instance::with_lists(3, &cycle_edges(3), vec![vec![0, 1]; 3]).unwrap();
        assert_eq!(solve_ed_dp(&k2, &tri, None).unwrap().cost, 1);
        let c4 = Instance::with_lists(4, &cycle_edges(4), vec![vec![0, 1]; 4]).unwrap();
        assert_eq!(solve_ed_dp(&k2, &c4, None).unwrap().cost, 0);
    }

    #[test]
    fn empty_list_is_deleted_or_infeasible() {
        let inst = Instance::with_lists(2, &[(0, 1)], vec![vec![], vec![0]]).unwrap();
        assert_eq!(solve_vd_dp(&loopless_k1(), &inst, None).unwrap().cost, 1);
        assert!(matches!(
            solve_ed_dp(&loopless_k1(), &inst, None),
            Err(Error::Infeasible(_))
        ));
    }
}
