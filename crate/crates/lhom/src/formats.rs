//! Text formats. All vertex ids in files are 1-indexed.
//!
//! Target (`.hg`): `c` comments, `h <n>`, `e <u> <v>` (`u = v` is a loop).
//! Instance (`.lhi`): `p lhom <n> <m>`, `e <u> <v>`, `l <v> <k> <h1> .. <hk>`,
//! optional `k <budget>`; gadgets add `portal <v1> ..`.
//! Hub core: `q <p> <sigma> <delta>` followed by `p` vertex ids.
//! Classic graphs: `p edge <n> <m>`, `e <u> <v>`, `t <v>` terminals,
//! `s <v>` source, `l <v>` / `r <v>` sides, `q <colours>`, `k <budget>`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{parse_err, Result};
use crate::graph::{Instance, TargetGraph};

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && t[0] != "c" && !t[0].starts_with('#'))
}

fn num(line: usize, tok: Option<&&str>) -> Result<usize> {
    match tok {
        Some(t) => t
            .parse()
            .or_else(|_| parse_err(line, format!("expected an integer, found `{}`", t))),
        None => parse_err(line, "missing field"),
    }
}

/// Parses a 1-indexed vertex id into a 0-indexed one.
fn vertex(line: usize, tok: Option<&&str>, n: usize) -> Result<usize> {
    let v = num(line, tok)?;
    if v == 0 || v > n {
        return parse_err(line, format!("vertex {} out of range 1..={}", v, n));
    }
    Ok(v - 1)
}

fn expect_len(line: usize, toks: &[&str], len: usize) -> Result<()> {
    if toks.len() != len {
        return parse_err(
            line,
            format!("expected {} fields, found {}", len, toks.len()),
        );
    }
    Ok(())
}

pub fn parse_target(text: &str) -> Result<TargetGraph> {
    let mut h: Option<TargetGraph> = None;
    let mut seen = HashSet::new();
    for (ln, t) in lines(text) {
        match t[0] {
            "h" => {
                expect_len(ln, &t, 2)?;
                if h.is_some() {
                    return parse_err(ln, "duplicate header");
                }
                let n = num(ln, t.get(1))?;
                if n == 0 || n > TargetGraph::MAX_VERTICES {
                    return parse_err(ln, format!("target size {} outside 1..=64", n));
                }
                h = Some(TargetGraph::new(n));
            }
            "e" => {
                expect_len(ln, &t, 3)?;
                let g = match h.as_mut() {
                    Some(g) => g,
                    None => return parse_err(ln, "edge before header"),
                };
                let u = vertex(ln, t.get(1), g.n())?;
                let v = vertex(ln, t.get(2), g.n())?;
                if !seen.insert((u.min(v), u.max(v))) {
                    return parse_err(ln, format!("duplicate edge {} {}", u + 1, v + 1));
                }
                g.add_edge(u, v);
            }
            other => return parse_err(ln, format!("unknown line type `{}`", other)),
        }
    }
    match h {
        Some(h) => Ok(h),
        None => parse_err(0, "missing `h` header"),
    }
}

pub fn write_target(h: &TargetGraph) -> String {
    let mut out = format!("h {}\n", h.n());
    for (u, v) in h.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// An instance with optional portals, as read from an `.lhi` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedInstance {
    pub instance: Instance,
    pub portals: Vec<usize>,
}

/// Parses an instance over a target with `h_size` vertices. Vertices without
/// an `l` line receive the full list.
pub fn parse_instance(text: &str, h_size: usize) -> Result<ParsedInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lists: Vec<Option<Vec<usize>>> = Vec::new();
    let mut budget = None;
    let mut portals = Vec::new();
    let mut seen = HashSet::new();
    for (ln, t) in lines(text) {
        if t[0] != "p" && header.is_none() {
            return parse_err(ln, "line before `p lhom` header");
        }
        match t[0] {
            "p" => {
                expect_len(ln, &t, 4)?;
                if t[1] != "lhom" {
                    return parse_err(ln, "expected `p lhom <n> <m>`");
                }
                if header.is_some() {
                    return parse_err(ln, "duplicate header");
                }
                let n = num(ln, t.get(2))?;
                header = Some((n, num(ln, t.get(3))?));
                lists = vec![None; n];
            }
            "e" => {
                expect_len(ln, &t, 3)?;
                let n = header.unwrap().0;
                let u = vertex(ln, t.get(1), n)?;
                let v = vertex(ln, t.get(2), n)?;
                if u == v {
                    return parse_err(ln, format!("loop at vertex {}", u + 1));
                }
                let e = (u.min(v), u.max(v));
                if !seen.insert(e) {
                    return parse_err(ln, format!("duplicate edge {} {}", u + 1, v + 1));
                }
                edges.push(e);
            }
            "l" => {
                let n = header.unwrap().0;
                let v = vertex(ln, t.get(1), n)?;
                let k = num(ln, t.get(2))?;
                expect_len(ln, &t, 3 + k)?;
                if lists[v].is_some() {
                    return parse_err(ln, format!("second list for vertex {}", v + 1));
                }
                let mut l = Vec::with_capacity(k);
                for i in 0..k {
                    l.push(vertex(ln, t.get(3 + i), h_size)?);
                }
                l.sort_unstable();
                l.dedup();
                lists[v] = Some(l);
            }
            "k" => {
                expect_len(ln, &t, 2)?;
                budget = Some(num(ln, t.get(1))? as u64);
            }
            "portal" => {
                let n = header.unwrap().0;
                for tok in &t[1..] {
                    let v = vertex(ln, Some(tok), n)?;
                    if portals.contains(&v) {
                        return parse_err(ln, format!("repeated portal {}", v + 1));
                    }
                    portals.push(v);
                }
            }
            other => return parse_err(ln, format!("unknown line type `{}`", other)),
        }
    }
    let (n, m) = match header {
        Some(h) => h,
        None => return parse_err(0, "missing `p lhom` header"),
    };
    if edges.len() != m {
        return parse_err(
            0,
            format!("header announces {} edges, found {}", m, edges.len()),
        );
    }
    let lists = lists
        .into_iter()
        .map(|l| l.unwrap_or_else(|| (0..h_size).collect()))
        .collect();
    Ok(ParsedInstance {
        instance: Instance {
            n,
            edges,
            lists,
            budget,
        },
        portals,
    })
}

pub fn write_instance(inst: &Instance, portals: &[usize]) -> String {
    let mut out = format!("p lhom {} {}\n", inst.n, inst.edges.len());
    for &(u, v) in &inst.edges {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for (v, l) in inst.lists.iter().enumerate() {
        write!(out, "l {} {}", v + 1, l.len()).unwrap();
        for x in l {
            write!(out, " {}", x + 1).unwrap();
        }
        out.push('\n');
    }
    if let Some(k) = inst.budget {
        writeln!(out, "k {}", k).unwrap();
    }
    if !portals.is_empty() {
        out.push_str("portal");
        for p in portals {
            write!(out, " {}", p + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubCore {
    pub q: Vec<usize>,
    pub sigma: usize,
    pub delta: usize,
}

pub fn parse_hub_core(text: &str, n: usize) -> Result<HubCore> {
    let mut toks: Vec<(usize, &str)> = Vec::new();
    for (ln, t) in lines(text) {
        toks.extend(t.into_iter().map(|x| (ln, x)));
    }
    if toks.first().map(|t| t.1) != Some("q") || toks.len() < 4 {
        return parse_err(1, "expected `q <p> <sigma> <delta>`");
    }
    let field = |i: usize| num(toks[i].0, Some(&toks[i].1));
    let p = field(1)?;
    let sigma = field(2)?;
    let delta = field(3)?;
    if toks.len() != 4 + p {
        return parse_err(
            toks.last().unwrap().0,
            format!("expected {} core vertices", p),
        );
    }
    let mut q = Vec::with_capacity(p);
    for i in 4..4 + p {
        let v = vertex(toks[i].0, Some(&toks[i].1), n)?;
        if q.contains(&v) {
            return parse_err(toks[i].0, format!("repeated core vertex {}", v + 1));
        }
        q.push(v);
    }
    q.sort_unstable();
    Ok(HubCore { q, sigma, delta })
}

pub fn write_hub_core(core: &HubCore) -> String {
    let mut out = format!("q {} {} {}\n", core.q.len(), core.sigma, core.delta);
    let ids: Vec<String> = core.q.iter().map(|v| (v + 1).to_string()).collect();
    out.push_str(&ids.join(" "));
    out.push('\n');
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub terminals: Vec<usize>,
    pub source: Option<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub colours: Option<usize>,
    pub budget: Option<u64>,
}

pub fn parse_classic(text: &str) -> Result<ClassicGraph> {
    let mut g: Option<ClassicGraph> = None;
    let mut m = 0;
    let mut seen = HashSet::new();
    for (ln, t) in lines(text) {
        if t[0] == "p" {
            expect_len(ln, &t, 4)?;
            if g.is_some() {
                return parse_err(ln, "duplicate header");
            }
            g = Some(ClassicGraph {
                n: num(ln, t.get(2))?,
                ..Default::default()
            });
            m = num(ln, t.get(3))?;
            continue;
        }
        let g = match g.as_mut() {
            Some(g) => g,
            None => return parse_err(ln, "line before `p` header"),
        };
        let n = g.n;
        match t[0] {
            "e" => {
                expect_len(ln, &t, 3)?;
                let u = vertex(ln, t.get(1), n)?;
                let v = vertex(ln, t.get(2), n)?;
                if u == v {
                    return parse_err(ln, "loop in classic graph");
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return parse_err(ln, format!("duplicate edge {} {}", u + 1, v + 1));
                }
                g.edges.push((u.min(v), u.max(v)));
            }
            "t" => {
                expect_len(ln, &t, 2)?;
                g.terminals.push(vertex(ln, t.get(1), n)?);
            }
            "s" => {
                expect_len(ln, &t, 2)?;
                g.source = Some(vertex(ln, t.get(1), n)?);
            }
            "l" => {
                expect_len(ln, &t, 2)?;
                g.left.push(vertex(ln, t.get(1), n)?);
            }
            "r" => {
                expect_len(ln, &t, 2)?;
                g.right.push(vertex(ln, t.get(1), n)?);
            }
            "q" => {
                expect_len(ln, &t, 2)?;
                g.colours = Some(num(ln, t.get(1))?);
            }
            "k" => {
                expect_len(ln, &t, 2)?;
                g.budget = Some(num(ln, t.get(1))? as u64);
            }
            other => return parse_err(ln, format!("unknown line type `{}`", other)),
        }
    }
    let g = match g {
        Some(g) => g,
        None => return parse_err(0, "missing `p` header"),
    };
    if g.edges.len() != m {
        return parse_err(
            0,
            format!("header announces {} edges, found {}", m, g.edges.len()),
        );
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn single_irreflexive_vertex() {
        let h = parse_target("h 1\n").unwrap();
        assert_eq!(h.n(), 1);
        assert!(!h.has_loop(0));
    }

    #[test]
    fn loops_only() {
        let h = parse_target("c two loops\nh 2\ne 1 1\ne 2 2\n").unwrap();
        assert!(h.is_reflexive());
        assert!(!h.adj(0, 1));
    }

    #[test]
    fn triangle() {
        let h = parse_target("h 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn target_errors() {
        assert!(matches!(
            parse_target("h 2\ne 1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_target("h 2\ne 1 2\ne 2 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_target("h 2\nx\n"), Err(Error::Parse { .. })));
        assert!(parse_target("e 1 2\n").is_err());
    }

    #[test]
    fn instance_defaults_to_full_lists() {
        let p = parse_instance("p lhom 2 1\ne 1 2\nl 1 1 2\nk 3\n", 3).unwrap();
        assert_eq!(p.instance.lists, vec![vec![1], vec![0, 1, 2]]);
        assert_eq!(p.instance.budget, Some(3));
    }

    #[test]
    fn instance_rejects_loops_and_parallel_edges() {
        assert!(parse_instance("p lhom 2 1\ne 1 1\n", 1).is_err());
        assert!(parse_instance("p lhom 2 2\ne 1 2\ne 2 1\n", 1).is_err());
        assert!(parse_instance("p lhom 2 2\ne 1 2\n", 1).is_err());
    }

    #[test]
    fn instance_round_trip() {
        let text = "p lhom 3 2\ne 1 2\ne 2 3\nl 1 1 1\nl 2 2 1 2\nl 3 0\nportal 1 3\n";
        let p = parse_instance(text, 2).unwrap();
        assert_eq!(p.portals, vec![0, 2]);
        let again = parse_instance(&write_instance(&p.instance, &p.portals), 2).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn hub_core_round_trip() {
        let core = parse_hub_core("q 2 3 1\n4 2\n", 5).unwrap();
        assert_eq!(
            core,
            HubCore {
                q: vec![1, 3],
                sigma: 3,
                delta: 1
            }
        );
        assert_eq!(parse_hub_core(&write_hub_core(&core), 5).unwrap(), core);
    }

    #[test]
    fn classic_with_terminals() {
        let g = parse_classic("p edge 4 3\ne 1 2\ne 1 3\ne 1 4\nt 2\nt 3\nt 4\n").unwrap();
        assert_eq!(g.terminals, vec![1, 2, 3]);
        assert_eq!(g.edges.len(), 3);
    }
}
