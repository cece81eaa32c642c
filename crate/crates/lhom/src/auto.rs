//! Dispatchers that pick the best available algorithm for a target.

use crate::analysis::{classify_vd, find_decomposition, has_obstruction, Decomposition};
use crate::dp::{solve_ed_dp, solve_vd_dp};
use crate::error::{Error, Result};
use crate::graph::{Instance, Solution, Stats, TargetGraph};
use crate::lists::reduce_lists;
use crate::poly::{solve_ed_poly, solve_vd_poly};
use crate::td::{restrict_td, TreeDecomposition};

/// An instance cut along a decomposition (A, B, C) of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// Edges between vertices listed in A and vertices listed in C.
    pub forced: Vec<(usize, usize)>,
    /// Instance over H[A]; lists index into `dec.a`.
    pub sub_a: Instance,
    pub vertices_a: Vec<usize>,
    /// Instance over H[B ∪ C]; lists index into `dec.b` followed by `dec.c`.
    pub sub_bc: Instance,
    pub vertices_bc: Vec<usize>,
}

/// The target order used by `sub_bc`.
pub fn bc_order(dec: &Decomposition) -> Vec<usize> {
    dec.b.iter().chain(&dec.c).copied().collect()
}

/// Splits a reduced instance. Edges between A-listed and B-listed vertices
/// are dropped since every A–B pair is an edge of H.
pub fn split_by_decomposition(dec: &Decomposition, inst: &Instance) -> Result<Split> {
    let mut side = vec![0; inst.n];
    for (v, l) in inst.lists.iter().enumerate() {
        let parts: Vec<usize> = l.iter().map(|&x| dec.part_of(x)).collect();
        match parts.first() {
            None => {
                return Err(Error::Infeasible(format!(
                    "vertex {} has an empty list",
                    v + 1
                )))
            }
            Some(&p) if parts.iter().all(|&q| q == p) => side[v] = p,
            _ => {
                return Err(Error::Precondition(format!(
                    "list of vertex {} meets several parts of {}",
                    v + 1,
                    dec
                )))
            }
        }
    }
    let vertices_a: Vec<usize> = (0..inst.n).filter(|&v| side[v] == 0).collect();
    let vertices_bc: Vec<usize> = (0..inst.n).filter(|&v| side[v] != 0).collect();
    let forced = inst
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| (side[u] == 0 && side[v] == 2) || (side[u] == 2 && side[v] == 0))
        .collect();
    let reindex = |order: &[usize], vs: &[usize]| -> Instance {
        let (mut sub, _) = inst.induced(vs);
        for l in &mut sub.lists {
            *l = l
                .iter()
                .map(|x| order.iter().position(|y| y == x).unwrap())
                .collect();
            l.sort_unstable();
        }
        sub
    };
    let sub_a = reindex(&dec.a, &vertices_a);
    let sub_bc = reindex(&bc_order(dec), &vertices_bc);
    Ok(Split {
        forced,
        sub_a,
        vertices_a,
        sub_bc,
        vertices_bc,
    })
}

/// LHomVD: the min-cut solver when the target allows it, otherwise the DP.
pub fn solve_vd_auto(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
) -> Result<Solution> {
    let mut sol = if classify_vd(h).is_poly() {
        solve_vd_poly(h, inst)?
    } else {
        solve_vd_dp(h, inst, td)?
    };
    sol.algorithm = format!("auto/{}", sol.algorithm);
    Ok(sol)
}

/// Per-leaf bookkeeping for the ED recursion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdTrace {
    pub leaves: Vec<EdLeaf>,
    pub forced: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdLeaf {
    /// Target vertices of the subtarget, in original indices.
    pub target: Vec<usize>,
    pub algorithm: String,
    pub cost: u64,
    pub max_bag_states: Option<usize>,
    pub width: Option<usize>,
    pub flow_value: Option<u64>,
    pub i: usize,
}

fn ed_rec(
    h: &TargetGraph,
    names: &[usize],
    inst: &Instance,
    td: Option<&TreeDecomposition>,
    trace: &mut EdTrace,
) -> Result<Vec<usize>> {
    if inst.n == 0 {
        return Ok(vec![]);
    }
    // Domination can change in a subtarget, so reduce again at every level.
    let inst = &reduce_lists(h, inst);
    let leaf = |sol: Solution, trace: &mut EdTrace| {
        trace.leaves.push(EdLeaf {
            target: names.to_vec(),
            algorithm: sol.algorithm.clone(),
            cost: sol.cost,
            max_bag_states: sol.stats.max_bag_states,
            width: sol.stats.width,
            flow_value: sol.stats.flow_value,
            i: crate::lists::i_of(h),
        });
        sol.hom.iter().map(|x| x.unwrap()).collect()
    };
    if !has_obstruction(h) {
        return Ok(leaf(solve_ed_poly(h, inst)?, trace));
    }
    let dec = match find_decomposition(h) {
        Some(d) => d,
        None => return Ok(leaf(solve_ed_dp(h, inst, td)?, trace)),
    };
    let split = split_by_decomposition(&dec, inst)?;
    trace.forced += split.forced.len() as u64;
    let mut map = vec![0; inst.n];
    let bc = bc_order(&dec);
    for (order, vs, sub) in [
        (&dec.a, &split.vertices_a, &split.sub_a),
        (&bc, &split.vertices_bc, &split.sub_bc),
    ] {
        let sub_h = h.induced(order);
        let sub_names: Vec<usize> = order.iter().map(|&x| names[x]).collect();
        let sub_td = td.map(|td| {
            let mut index = vec![usize::MAX; inst.n];
            for (i, &v) in vs.iter().enumerate() {
                index[v] = i;
            }
            restrict_td(td, &index)
        });
        let sub_map = ed_rec(&sub_h, &sub_names, sub, sub_td.as_ref(), trace)?;
        for (i, &v) in vs.iter().enumerate() {
            map[v] = order[sub_map[i]];
        }
    }
    Ok(map)
}

/// LHomED with the decomposition recursion: obstruction-free subtargets go to
/// the min-cut solver, undecomposable ones to the DP, and decomposable ones
/// are split. Returns the solution with a per-leaf trace.
pub fn solve_ed_auto_traced(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
) -> Result<(Solution, EdTrace)> {
    inst.validate(h)?;
    let red = reduce_lists(h, inst);
    if let Some(v) = red.lists.iter().position(|l| l.is_empty()) {
        return Err(Error::Infeasible(format!(
            "vertex {} has an empty list",
            v + 1
        )));
    }
    let mut trace = EdTrace::default();
    let names: Vec<usize> = (0..h.n()).collect();
    let map = ed_rec(h, &names, &red, td, &mut trace)?;
    let mut algs: Vec<&str> = trace.leaves.iter().map(|l| l.algorithm.as_str()).collect();
    algs.sort_unstable();
    algs.dedup();
    let mut sol = Solution::from_ed_map(h, inst, map, &format!("auto/{}", algs.join("+")));
    let expected = trace.forced + trace.leaves.iter().map(|l| l.cost).sum::<u64>();
    if sol.cost != expected {
        return Err(Error::Verification(format!(
            "split total {} differs from solution cost {}",
            expected, sol.cost
        )));
    }
    sol.stats = Stats {
        width: trace.leaves.iter().filter_map(|l| l.width).max(),
        max_bag_states: trace.leaves.iter().filter_map(|l| l.max_bag_states).max(),
        flow_value: trace
            .leaves
            .iter()
            .filter_map(|l| l.flow_value)
            .reduce(|x, y| x + y),
        gadget_base_cost: None,
    };
    sol.check(h, inst)?;
    Ok((sol, trace))
}

pub fn solve_ed_auto(
    h: &TargetGraph,
    inst: &Instance,
    td: Option<&TreeDecomposition>,
) -> Result<Solution> {
    solve_ed_auto_traced(h, inst, td).map(|(s, _)| s)
}
