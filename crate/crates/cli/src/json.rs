//! JSON views of library values. Every vertex id is 1-indexed.

use lhom::analysis::{Classification, Decomposition, DecompositionTree, Verdict};
use lhom::gadget::CostTable;
use lhom::selftest::Report;
use lhom::{Deleted, Solution};
use serde_json::{json, Value};

pub fn ids(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

fn decomposition(d: &Decomposition) -> Value {
    json!({ "a": ids(&d.a), "b": ids(&d.b), "c": ids(&d.c) })
}

fn tree(t: &DecompositionTree) -> Value {
    match t {
        DecompositionTree::Leaf {
            vertices,
            i,
            has_obstruction,
            decomposable,
        } => json!({
            "vertices": ids(vertices),
            "i": i,
            "has_obstruction": has_obstruction,
            "decomposable": decomposable,
        }),
        DecompositionTree::Split {
            vertices,
            decomposition: d,
            a_side,
            bc_side,
        } => json!({
            "vertices": ids(vertices),
            "decomposition": decomposition(d),
            "a_side": tree(a_side),
            "bc_side": tree(bc_side),
        }),
    }
}

pub fn classification(c: &Classification) -> Value {
    let vd_witness = match &c.vd {
        Verdict::Poly => Value::Null,
        Verdict::NpHard(w) => json!({ "kind": w.kind(), "vertices": ids(&w.vertices()) }),
    };
    let ed_obstruction = match &c.ed {
        Verdict::Poly => Value::Null,
        Verdict::NpHard(o) => json!({
            "kind": o.kind.as_str(),
            "vertices": ids(&o.vertices),
            "witnesses": ids(&o.witnesses),
        }),
    };
    json!({
        "vd": c.vd.as_str(),
        "vd_witness": vd_witness,
        "ed": c.ed.as_str(),
        "ed_obstruction": ed_obstruction,
        "i": c.i,
        "i_witness": ids(&c.i_witness),
        "i_bullet": c.i_bullet,
        "i_bullet_witness": ids(&c.i_bullet_witness),
        "decomposition": c.decomposition.as_ref().map(decomposition),
        "decomposition_tree": tree(&c.tree),
    })
}

pub fn solution(s: &Solution) -> Value {
    let deleted = match &s.deleted {
        Deleted::Vertices(vs) => ids(vs),
        Deleted::Edges(es) => json!(es.iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>()),
    };
    let hom: Vec<Value> = s
        .hom
        .iter()
        .map(|x| x.map_or(Value::Null, |v| json!(v + 1)))
        .collect();
    json!({
        "mode": s.mode.as_str(),
        "opt": s.cost,
        "deleted": deleted,
        "homomorphism": hom,
        "algorithm": s.algorithm,
        "stats": {
            "width": s.stats.width,
            "max_bag_states": s.stats.max_bag_states,
            "flow_value": s.stats.flow_value,
            "gadget_base_cost": s.stats.gadget_base_cost,
        },
    })
}

/// Rows of a cost table; a deleted portal is written as "x".
pub fn cost_table(t: &CostTable) -> Value {
    let rows: Vec<Value> = t
        .entries
        .iter()
        .map(|(tuple, cost)| {
            let tuple: Vec<Value> = tuple
                .iter()
                .map(|x| x.map_or(json!("x"), |v| json!(v + 1)))
                .collect();
            json!({ "tuple": tuple, "cost": cost })
        })
        .collect();
    json!({ "mode": t.mode.as_str(), "base": t.base(), "entries": rows })
}

pub fn selftest(r: &Report) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "failed": c.failures.len(),
                "failures": c.failures.iter().take(5).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "seed": r.seed, "count": r.count, "ok": r.ok(), "checks": checks })
}
