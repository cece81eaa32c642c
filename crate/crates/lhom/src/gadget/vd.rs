//! Vertex-deletion gadgets: splitters, matchers, translators and the
//! prohibitors assembled from them.

use super::{cost_table, CostTable, Gadget, Value};
use crate::analysis::{classify_vd, VdWitness, Verdict};
use crate::error::{Error, Result};
use crate::graph::{members, Mode, TargetGraph};

/// A gadget together with its cost table and base cost.
#[derive(Clone, Debug)]
pub struct Verified {
    pub gadget: Gadget,
    pub table: CostTable,
    pub base: u64,
}

fn verified(h: &TargetGraph, gadget: Gadget) -> Result<Verified> {
    let table = cost_table(h, &gadget, Mode::Vd)?;
    let base = table
        .base()
        .ok_or_else(|| Error::Verification("gadget has no feasible portal tuple".into()))?;
    Ok(Verified {
        gadget,
        table,
        base,
    })
}

fn fail<T>(what: &str, t: &[Value], cost: Option<u64>, base: u64) -> Result<T> {
    Err(Error::Verification(format!(
        "{}: cost {:?} at {:?} against base {}",
        what, cost, t, base
    )))
}

fn lowest(set: u64) -> Option<usize> {
    members(set).next()
}

#[derive(Clone, Debug)]
pub struct Splitter {
    pub gadget: Verified,
    pub v: usize,
    pub w: usize,
    pub v_out: usize,
    pub w_out: usize,
}

/// The path S − (V(H)∖Γ(v)) − {v} − {v′,w′}.
pub fn build_splitter(h: &TargetGraph, s: &[usize], v: usize) -> Result<Splitter> {
    if s.len() < 2 || !s.contains(&v) || !h.is_incomparable_set(s) {
        return Err(Error::Precondition(
            "splitter needs an incomparable set of size ≥ 2 containing v".into(),
        ));
    }
    let w = *s.iter().filter(|&&u| u != v).min().unwrap();
    let v_out = lowest(h.gamma(v) & !h.gamma(w)).unwrap();
    let w_out = lowest(h.gamma(w) & !h.gamma(v)).unwrap();
    let g = Gadget::path(&[
        s.to_vec(),
        members(h.all() & !h.gamma(v)).collect(),
        vec![v],
        vec![v_out, w_out],
    ]);
    let g = verified(h, g)?;
    if g.base != 1 {
        return Err(Error::Verification(format!(
            "splitter base cost {}",
            g.base
        )));
    }
    for &u in s {
        for out in [v_out, w_out] {
            let t = [Some(u), Some(out)];
            let c = g.table.get(&t);
            let one = u != v || out == v_out;
            if (c == Some(1)) != one {
                return fail("splitter", &t, c, 1);
            }
        }
    }
    Ok(Splitter {
        gadget: g,
        v,
        w,
        v_out,
        w_out,
    })
}

fn all_pairs(table: &CostTable) -> impl Iterator<Item = (&Vec<Value>, Option<u64>)> {
    table.entries.iter().map(|(t, &c)| (t, c))
}

/// Cost α off {(p,p), (q,q)} and more than α on (p,p).
fn check_matcher(g: &Verified, p: usize, q: usize) -> Result<()> {
    for (t, c) in all_pairs(&g.table) {
        if t[0] == Some(p) && t[1] == Some(p) {
            if c.map_or(false, |c| c <= g.base) {
                return fail("matcher", t, c, g.base);
            }
        } else if !(t[0] == Some(q) && t[1] == Some(q)) && c != Some(g.base) {
            return fail("matcher", t, c, g.base);
        }
    }
    Ok(())
}

/// Cost α off {(p_in,b), (w_in,a)} and more than α on (p_in,b).
fn check_translator(g: &Verified, v_in: usize, w_in: usize, a: usize, b: usize) -> Result<()> {
    for (t, c) in all_pairs(&g.table) {
        if t[0] == Some(v_in) && t[1] == Some(b) {
            if c.map_or(false, |c| c <= g.base) {
                return fail("translator", t, c, g.base);
            }
        } else if !(t[0] == Some(w_in) && t[1] == Some(a)) && c != Some(g.base) {
            return fail("translator", t, c, g.base);
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMatcherCase {
    Independent,
    C4,
    C5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslatorCase {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatcherCase {
    /// An irreflexive vertex `i` in both, one, or neither neighbourhood.
    IrreflexiveA(usize),
    IrreflexiveB(usize),
    IrreflexiveC(usize),
    /// Two translators around an (a,b)-matcher of a reflexive target.
    Translated {
        core: PairMatcherCase,
        translator: TranslatorCase,
        a: usize,
        b: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Matcher {
    pub gadget: Verified,
    pub case: MatcherCase,
}

/// An (a,b)-matcher from a three-independent set or an induced C4/C5 of a
/// reflexive target; `swap` builds the (b,a)-matcher from the same witness.
pub fn build_pair_matcher(
    h: &TargetGraph,
    witness: &VdWitness,
    swap: bool,
) -> Result<(Verified, PairMatcherCase, usize, usize)> {
    let (case, lists, a, b) = match *witness {
        VdWitness::ThreeIndependent([a, b, c]) => {
            let (a, b) = if swap { (b, a) } else { (a, b) };
            (
                PairMatcherCase::Independent,
                vec![vec![a, b], vec![b], vec![c], vec![a], vec![b], vec![a, b]],
                a,
                b,
            )
        }
        VdWitness::InducedC4([a, x, b, y]) => {
            let (a, b) = if swap { (b, a) } else { (a, b) };
            (
                PairMatcherCase::C4,
                vec![vec![a, b], vec![x, b], vec![x, y], vec![b, y], vec![a, b]],
                a,
                b,
            )
        }
        VdWitness::InducedC5([a, x, b, y, z]) => {
            // b, x, a, z, y is the same cycle with a and b exchanged.
            let (a, x, b, y, z) = if swap {
                (b, x, a, z, y)
            } else {
                (a, x, b, y, z)
            };
            (
                PairMatcherCase::C5,
                vec![vec![a, b], vec![x, y], vec![b, z], vec![a, b]],
                a,
                b,
            )
        }
        VdWitness::IrreflexiveVertex(_) => {
            return Err(Error::Precondition(
                "pair matchers need a reflexive witness".into(),
            ))
        }
    };
    let g = verified(h, Gadget::path(&lists))?;
    check_matcher(&g, a, b)?;
    Ok((g, case, a, b))
}

/// A (v′,w′)→(a,b) translator or, when the flag is set, a (v′,w′)→(b,a) one.
pub fn build_translator(
    h: &TargetGraph,
    v_out: usize,
    w_out: usize,
    w: usize,
    a: usize,
    b: usize,
) -> Result<(Verified, TranslatorCase, bool)> {
    let vw = vec![v_out, w_out];
    let (case, lists, swapped) = if h.adj(v_out, a) {
        if h.adj(w, b) {
            (TranslatorCase::A, vec![vw, vec![a, w], vec![a, b]], false)
        } else {
            (
                TranslatorCase::D,
                vec![vw, vec![w], vec![b], vec![a, b]],
                true,
            )
        }
    } else if h.adj(v_out, b) {
        (
            TranslatorCase::B,
            vec![vw, vec![w], vec![v_out], vec![a, b]],
            true,
        )
    } else {
        (
            TranslatorCase::C,
            vec![vw, vec![w], vec![v_out], vec![b], vec![a], vec![a, b]],
            false,
        )
    };
    let g = verified(h, Gadget::path(&lists))?;
    let (x, y) = if swapped { (b, a) } else { (a, b) };
    check_translator(&g, v_out, w_out, x, y)?;
    Ok((g, case, swapped))
}

/// A (v′,w′)-matcher, following the splitter's choice of w, v′, w′.
pub fn build_matcher(h: &TargetGraph, sp: &Splitter) -> Result<Matcher> {
    let (v, w, vo, wo) = (sp.v, sp.w, sp.v_out, sp.w_out);
    let witness = match classify_vd(h) {
        Verdict::Poly => return Err(Error::Precondition("target has no hardness witness".into())),
        Verdict::NpHard(x) => x,
    };
    let (g, case) = match witness {
        VdWitness::IrreflexiveVertex(i) => {
            let vw = vec![vo, wo];
            if h.adj(i, wo) && h.adj(i, vo) {
                let lists = [vw.clone(), vec![w, i], vec![i], vec![i], vec![w, i], vw];
                (
                    verified(h, Gadget::path(&lists))?,
                    MatcherCase::IrreflexiveA(i),
                )
            } else if h.adj(i, wo) {
                let lists = [vw.clone(), vec![i], vec![i], vw];
                (
                    verified(h, Gadget::path(&lists))?,
                    MatcherCase::IrreflexiveB(i),
                )
            } else {
                let lists = [
                    vw.clone(),
                    vec![v, w],
                    vec![wo],
                    vec![i],
                    vec![i],
                    vec![wo],
                    vec![v, w],
                    vw,
                ];
                (
                    verified(h, Gadget::path(&lists))?,
                    MatcherCase::IrreflexiveC(i),
                )
            }
        }
        ref reflexive => {
            let (_, _, a, b) = build_pair_matcher(h, reflexive, false)?;
            let (tr, translator, swapped) = build_translator(h, vo, wo, w, a, b)?;
            let (m, core, a, b) = build_pair_matcher(h, reflexive, swapped)?;
            let mut g = tr.gadget.clone();
            let (z1, z2) = (g.portals[0], g.portals[1]);
            let mm = g.glue(&m.gadget, &[(m.gadget.portals[0], z2)]);
            let t2 = g.glue(
                &tr.gadget,
                &[(tr.gadget.portals[1], mm[m.gadget.portals[1]])],
            );
            g.portals = vec![z1, t2[tr.gadget.portals[0]]];
            let g = verified(h, g)?;
            if g.base != 2 * tr.base + m.base {
                return Err(Error::Verification(format!(
                    "matcher base cost {} is not additive",
                    g.base
                )));
            }
            (
                g,
                MatcherCase::Translated {
                    core,
                    translator,
                    a,
                    b,
                },
            )
        }
    };
    check_matcher(&g, vo, wo)?;
    Ok(Matcher { gadget: g, case })
}

/// Cost α off the diagonal pairs in `bad` and strictly more on them.
fn check_prohibitor(g: &Verified, bad: &[usize]) -> Result<()> {
    for (t, c) in all_pairs(&g.table) {
        let diagonal = t[0].is_some() && t[0] == t[1] && bad.contains(&t[0].unwrap());
        if diagonal {
            if c.map_or(false, |c| c <= g.base) {
                return fail("prohibitor", t, c, g.base);
            }
        } else if c != Some(g.base) {
            return fail("prohibitor", t, c, g.base);
        }
    }
    Ok(())
}

/// A (v,S)-prohibitor: splitter, matcher, reversed splitter.
pub fn build_prohibitor(h: &TargetGraph, s: &[usize], v: usize) -> Result<Verified> {
    let sp = build_splitter(h, s, v)?;
    let m = build_matcher(h, &sp)?;
    let a = &sp.gadget.gadget;
    let mut g = a.clone();
    let mm = g.glue(
        &m.gadget.gadget,
        &[(m.gadget.gadget.portals[0], a.portals[1])],
    );
    let a2 = g.glue(a, &[(a.portals[1], mm[m.gadget.gadget.portals[1]])]);
    g.portals = vec![a.portals[0], a2[a.portals[0]]];
    let g = verified(h, g)?;
    if g.base != 2 * sp.gadget.base + m.gadget.base {
        return Err(Error::Verification(format!(
            "prohibitor base cost {} is not additive",
            g.base
        )));
    }
    check_prohibitor(&g, &[v])?;
    Ok(g)
}

/// The S-prohibitor: all (v,S)-prohibitors sharing both portals.
pub fn build_s_prohibitor(h: &TargetGraph, s: &[usize]) -> Result<Verified> {
    let mut g = Gadget::empty();
    let x = g.add_vertex(s.to_vec());
    let y = g.add_vertex(s.to_vec());
    g.portals = vec![x, y];
    let mut alpha = 0;
    for &v in s {
        let p = build_prohibitor(h, s, v)?;
        let pg = &p.gadget;
        g.glue(pg, &[(pg.portals[0], x), (pg.portals[1], y)]);
        alpha += p.base;
    }
    let g = verified(h, g)?;
    if g.base != alpha {
        return Err(Error::Verification(format!(
            "S-prohibitor base cost {} differs from {}",
            g.base, alpha
        )));
    }
    check_prohibitor(&g, s)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{independent_reflexive, reflexive_cycle};

    #[test]
    fn splitter_over_three_independent() {
        let h = independent_reflexive(3);
        let sp = build_splitter(&h, &[0, 1, 2], 0).unwrap();
        assert_eq!((sp.v_out, sp.w_out), (0, 1));
        let t = &sp.gadget.table;
        assert_eq!(t.get(&[Some(0), Some(0)]), Some(1));
        assert_eq!(t.get(&[Some(0), Some(1)]), Some(2));
    }

    #[test]
    fn s_prohibitor_over_c5() {
        let h = reflexive_cycle(5);
        let s = crate::lists::max_incomparable(&h).1;
        let p = build_s_prohibitor(&h, &s).unwrap();
        assert_eq!(p.table.get(&[None, None]), Some(p.base));
    }
}
