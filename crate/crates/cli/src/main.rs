mod json;

use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lhom::analysis::{classify, classify_ed, classify_vd, find_obstruction};
use lhom::auto::{solve_ed_auto, solve_vd_auto};
use lhom::dp::{solve_ed_dp, solve_vd_dp};
use lhom::formats::{
    parse_classic, parse_hub_core, parse_instance, parse_target, write_instance, write_target,
};
use lhom::gadget::ed::{build_indicator, move_between_pairs, move_report, neq, synthesize_neq};
use lhom::gadget::vd::{
    build_matcher, build_prohibitor, build_s_prohibitor, build_splitter, build_translator,
    MatcherCase,
};
use lhom::gadget::{cost_table, cost_table_enum, verify_realizes, CostTable, Gadget, ENUM_BOUND};
use lhom::lists::max_incomparable;
use lhom::oracle::{oracle_ed, oracle_vd};
use lhom::poly::{solve_ed_poly, solve_vd_poly};
use lhom::reductions::{
    coloring_ed_to_lhomed, coloring_vd_to_lhomvd, encode_classic, ClassicInstance, Graph,
};
use lhom::selftest::run_with_workers;
use lhom::td::{core_to_td, parse_td, validate_td};
use lhom::{Error, Instance, Mode, TargetGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "lhom",
    version,
    about = "List-homomorphism deletion: classification, solvers, gadgets, reductions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dichotomy verdicts, i(H), i•(H) and the decomposition tree of a target.
    Classify { target: PathBuf },
    /// Solves LHomVD or LHomED on an instance.
    Solve {
        #[arg(long, value_enum)]
        mode: ModeArg,
        target: PathBuf,
        instance: PathBuf,
        /// Tree decomposition of G.
        #[arg(long, conflicts_with = "core")]
        td: Option<PathBuf>,
        /// Hub core of G, turned into a tree decomposition.
        #[arg(long)]
        core: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
    },
    /// Builds a gadget and reports its cost table.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        target: PathBuf,
        /// Incomparable set, 1-indexed and comma separated.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<usize>>,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Source pair of a move.
        #[arg(long, value_delimiter = ',')]
        from: Option<Vec<usize>>,
        /// Destination pair of a move.
        #[arg(long, value_delimiter = ',')]
        to: Option<Vec<usize>>,
        /// Pendant budget for NEQ synthesis.
        #[arg(long, default_value_t = 3)]
        budget: usize,
        /// Recomputes the cost table by enumeration and checks the gadget's contract.
        #[arg(long)]
        verify: bool,
        /// Writes the gadget (instance format with a portal line) here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encodes a classic problem as a list-homomorphism deletion instance.
    Reduce {
        /// vc, maxcut, oct, stcut, edge-multiway, vertex-multiway, coloring-vd or coloring-ed.
        variant: String,
        input: PathBuf,
        /// Writes PREFIX.hg and PREFIX.lhi.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Runs a coloring variant through the gadget pipeline over this target.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Checks every solver against the oracles on a seeded random corpus.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vd,
    Ed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Auto,
    Poly,
    Dp,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    Splitter,
    Matcher,
    Translator,
    Prohibitor,
    SProhibitor,
    Neq,
    Move,
    Indicator,
}

enum Failure {
    Io(String),
    Lib(Error),
    /// Already reported on stdout; only the exit code is left.
    Reported(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn precondition<T>(msg: impl Into<String>) -> Run<T> {
    Err(Failure::Lib(Error::Precondition(msg.into())))
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> Run<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))
}

fn load_target(path: &Path) -> Run<TargetGraph> {
    Ok(parse_target(&read(path)?)?)
}

/// A closed stdout (say, piped into `head`) is not an error worth a panic.
fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(io::stdout().lock(), "{}", text);
}

/// Converts 1-indexed vertex ids into target vertices.
fn vertices(h: &TargetGraph, ids: &[usize], what: &str) -> Run<Vec<usize>> {
    ids.iter()
        .map(|&x| match x {
            1.. if x <= h.n() => Ok(x - 1),
            _ => precondition(format!("{}: vertex {} is not in the target", what, x)),
        })
        .collect()
}

fn vertex(h: &TargetGraph, id: Option<usize>, what: &str) -> Run<Option<usize>> {
    id.map(|x| vertices(h, &[x], what).map(|v| v[0]))
        .transpose()
}

fn pair(h: &TargetGraph, ids: Option<Vec<usize>>, what: &str) -> Run<(usize, usize)> {
    match ids.as_deref() {
        Some([x, y]) => {
            let v = vertices(h, &[*x, *y], what)?;
            Ok((v[0], v[1]))
        }
        Some(_) => precondition(format!("--{} takes two vertices", what)),
        None => precondition(format!("--{} is required", what)),
    }
}

fn cmd_classify(target: &Path) -> Run<()> {
    let h = load_target(target)?;
    print(&json::classification(&classify(&h)));
    Ok(())
}

fn cmd_solve(
    mode: ModeArg,
    target: &Path,
    instance: &Path,
    td: Option<&Path>,
    core: Option<&Path>,
    algo: Algo,
) -> Run<()> {
    let h = load_target(target)?;
    let inst = parse_instance(&read(instance)?, h.n())?.instance;
    let td = match (td, core) {
        (Some(p), _) => {
            let (n, td) = parse_td(&read(p)?)?;
            if n != inst.n {
                return precondition(format!(
                    "tree decomposition covers {} vertices, instance has {}",
                    n, inst.n
                ));
            }
            validate_td(inst.n, &inst.edges, &td)?;
            Some(td)
        }
        (None, Some(p)) => {
            let core = parse_hub_core(&read(p)?, inst.n)?;
            Some(core_to_td(inst.n, &inst.edges, &core)?)
        }
        (None, None) => None,
    };
    let td = td.as_ref();
    let result = match (mode, algo) {
        (ModeArg::Vd, Algo::Auto) => solve_vd_auto(&h, &inst, td),
        (ModeArg::Vd, Algo::Dp) => solve_vd_dp(&h, &inst, td),
        (ModeArg::Vd, Algo::Poly) => solve_vd_poly(&h, &inst),
        (ModeArg::Vd, Algo::Oracle) => oracle_vd(&h, &inst),
        (ModeArg::Ed, Algo::Auto) => solve_ed_auto(&h, &inst, td),
        (ModeArg::Ed, Algo::Dp) => solve_ed_dp(&h, &inst, td),
        (ModeArg::Ed, Algo::Poly) => solve_ed_poly(&h, &inst),
        (ModeArg::Ed, Algo::Oracle) => oracle_ed(&h, &inst),
    };
    let mode = match mode {
        ModeArg::Vd => Mode::Vd,
        ModeArg::Ed => Mode::Ed,
    };
    let sol = match result {
        Ok(s) => s,
        Err(Error::Infeasible(reason)) => {
            print(&json!({ "mode": mode.as_str(), "infeasible": true, "reason": reason }));
            return Err(Failure::Reported(1));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = json::solution(&sol);
    if let Some(k) = inst.budget {
        out["budget"] = json!(k);
        out["decision"] = json!(sol.cost <= k);
    }
    print(&out);
    Ok(())
}

struct Built {
    gadget: Gadget,
    mode: Mode,
    table: CostTable,
    extra: Value,
    /// The kind-specific property, checked under --verify.
    contract: Option<(String, bool)>,
}

struct GadgetArgs {
    s: Option<Vec<usize>>,
    v: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    from: Option<Vec<usize>>,
    to: Option<Vec<usize>>,
    budget: usize,
}

/// The obstruction's first two vertices, used when --a/--b are absent.
fn default_pair(h: &TargetGraph) -> Run<(usize, usize)> {
    match find_obstruction(h) {
        Some(o) => Ok((
            o.vertices[0].min(o.vertices[1]),
            o.vertices[0].max(o.vertices[1]),
        )),
        None => precondition("the target has no obstruction; pass --a and --b"),
    }
}

fn ed_built(
    h: &TargetGraph,
    gadget: Gadget,
    extra: Value,
    contract: Option<(String, bool)>,
) -> Run<Built> {
    let table = cost_table(h, &gadget, Mode::Ed)?;
    Ok(Built {
        gadget,
        mode: Mode::Ed,
        table,
        extra,
        contract,
    })
}

fn build_gadget(h: &TargetGraph, kind: GadgetKind, args: GadgetArgs) -> Run<Built> {
    let s = match &args.s {
        Some(ids) => vertices(h, ids, "s")?,
        None => max_incomparable(h).1,
    };
    let v = vertex(h, args.v, "v")?.or(s.first().copied());
    let a = vertex(h, args.a, "a")?;
    let b = vertex(h, args.b, "b")?;
    let need_v = || v.ok_or_else(|| Failure::Lib(Error::Precondition("S is empty".into())));
    let vd = |g: lhom::gadget::vd::Verified, extra: Value| Built {
        gadget: g.gadget,
        mode: Mode::Vd,
        table: g.table,
        extra,
        contract: None,
    };
    Ok(match kind {
        GadgetKind::Splitter => {
            let sp = build_splitter(h, &s, need_v()?)?;
            let extra = json!({ "s": json::ids(&s), "v": sp.v + 1, "w": sp.w + 1, "v_out": sp.v_out + 1, "w_out": sp.w_out + 1 });
            vd(sp.gadget, extra)
        }
        GadgetKind::Matcher => {
            let sp = build_splitter(h, &s, need_v()?)?;
            let m = build_matcher(h, &sp)?;
            let extra = json!({ "s": json::ids(&s), "v_out": sp.v_out + 1, "w_out": sp.w_out + 1, "case": format!("{:?}", m.case) });
            vd(m.gadget, extra)
        }
        GadgetKind::Translator => {
            let sp = build_splitter(h, &s, need_v()?)?;
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => match build_matcher(h, &sp)?.case {
                    MatcherCase::Translated { a, b, .. } => (a, b),
                    _ => {
                        return precondition(
                            "no translated matcher for this target; pass --a and --b",
                        )
                    }
                },
            };
            let (g, case, swapped) = build_translator(h, sp.v_out, sp.w_out, sp.w, a, b)?;
            let (x, y) = if swapped { (b, a) } else { (a, b) };
            let extra = json!({
                "from": [sp.v_out + 1, sp.w_out + 1],
                "to": [x + 1, y + 1],
                "case": format!("{:?}", case),
            });
            vd(g, extra)
        }
        GadgetKind::Prohibitor => {
            let v = need_v()?;
            vd(
                build_prohibitor(h, &s, v)?,
                json!({ "s": json::ids(&s), "v": v + 1 }),
            )
        }
        GadgetKind::SProhibitor => vd(build_s_prohibitor(h, &s)?, json!({ "s": json::ids(&s) })),
        GadgetKind::Neq => {
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => default_pair(h)?,
            };
            let Some(g) = synthesize_neq(h, a, b, args.budget)? else {
                return precondition(format!(
                    "no NEQ gadget on {{{}, {}}} within pendant budget {}",
                    a + 1,
                    b + 1,
                    args.budget
                ));
            };
            let holds = verify_realizes(h, &g, &neq(&[a, b]), Some(1))?;
            ed_built(
                h,
                g,
                json!({ "s": [a + 1, b + 1] }),
                Some(("1-realizes NEQ".into(), holds)),
            )?
        }
        GadgetKind::Move => {
            let from = pair(h, args.from, "from")?;
            let to = pair(h, args.to, "to")?;
            let m = move_between_pairs(h, from, to)?;
            let rep = move_report(h, &m.gadget)?;
            let holds = (0..2).all(|i| rep.forces(m.from[i], m.to[i]));
            let extra = json!({
                "from": [m.from[0] + 1, m.from[1] + 1],
                "to": [m.to[0] + 1, m.to[1] + 1],
            });
            ed_built(
                h,
                m.gadget,
                extra,
                Some(("forces from -> to".into(), holds)),
            )?
        }
        GadgetKind::Indicator => {
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => default_pair(h)?,
            };
            let ind = build_indicator(h, &s, a, b)?;
            let holds = verify_realizes(h, &ind.gadget, &ind.relation, None)?;
            let codes: Vec<Value> = ind
                .codes
                .iter()
                .map(|(x, code)| {
                    let words: Vec<Value> = code.iter().map(|w| json::ids(w)).collect();
                    json!({ "vertex": x + 1, "code": words })
                })
                .collect();
            let extra = json!({ "s": json::ids(&s), "a": a + 1, "b": b + 1, "codes": codes });
            ed_built(
                h,
                ind.gadget,
                extra,
                Some(("realizes the indicator relation".into(), holds)),
            )?
        }
    })
}

fn cmd_gadget(
    kind: GadgetKind,
    target: &Path,
    args: GadgetArgs,
    verify: bool,
    out: Option<&Path>,
) -> Run<()> {
    let h = load_target(target)?;
    let built = build_gadget(&h, kind, args)?;
    let text = write_instance(&built.gadget.graph, &built.gadget.portals);
    let mut report = json!({
        "kind": kind.to_possible_value().expect("no skipped variants").get_name(),
        "mode": built.mode.as_str(),
        "vertices": built.gadget.n(),
        "edges": built.gadget.graph.edges.len(),
        "portals": json::ids(&built.gadget.portals),
        "base_cost": built.table.base(),
        "cost_table": json::cost_table(&built.table)["entries"],
        "extra": built.extra,
    });
    match out {
        Some(p) => {
            write(p, &text)?;
            report["file"] = json!(p.display().to_string());
        }
        None => report["gadget"] = json!(text),
    }
    let mut ok = true;
    if verify {
        let enumerated = match cost_table_enum(&h, &built.gadget, built.mode, ENUM_BOUND) {
            Ok(t) => {
                ok &= t == built.table;
                json!(t == built.table)
            }
            Err(Error::TooLarge(_)) => json!("skipped"),
            Err(e) => return Err(e.into()),
        };
        let contract = match &built.contract {
            Some((what, holds)) => {
                ok &= holds;
                json!({ "property": what, "holds": holds })
            }
            None => {
                json!({ "property": "base cost and table shape checked on construction", "holds": true })
            }
        };
        report["verification"] =
            json!({ "enumeration_matches": enumerated, "contract": contract, "ok": ok });
    }
    print(&report);
    if ok {
        Ok(())
    } else {
        Err(Failure::Reported(3))
    }
}

fn edge_gadget(s: &[usize]) -> Gadget {
    let mut g = Gadget::path(&[s.to_vec(), s.to_vec()]);
    g.portals = vec![0, 1];
    g
}

/// Runs a coloring variant through the S-prohibitor or NEQ pipeline over `h`.
fn coloring_pipeline(h: &TargetGraph, c: &ClassicInstance) -> Run<(Instance, Value)> {
    let first = |q: usize| -> Run<Vec<usize>> {
        let (i, mut s) = max_incomparable(h);
        if i < q {
            return precondition(format!("the target has i(H) = {} < q = {}", i, q));
        }
        s.truncate(q);
        Ok(s)
    };
    let (p, s) = match c {
        ClassicInstance::ColoringVd { g, q, k } => {
            if classify_vd(h).is_poly() {
                return precondition("LHomVD over this target is polynomial");
            }
            let s = first(*q)?;
            (coloring_vd_to_lhomvd(h, &s, g, *k)?, s)
        }
        ClassicInstance::ColoringEd { g, q, z } => {
            if classify_ed(h).is_poly() {
                return precondition("LHomED over this target is polynomial");
            }
            let s = first(*q)?;
            let edge = edge_gadget(&s);
            if verify_realizes(h, &edge, &neq(&s), Some(1))? {
                (coloring_ed_to_lhomed(h, &s, g, *z, &edge)?, s)
            } else if *q == 2 {
                let (a, b) = default_pair(h)?;
                let Some(gadget) = synthesize_neq(h, a, b, 3)? else {
                    return precondition("no NEQ gadget found for the obstruction pair");
                };
                (
                    coloring_ed_to_lhomed(h, &[a, b], g, *z, &gadget)?,
                    vec![a, b],
                )
            } else {
                return precondition("no NEQ(S) gadget available for q ≥ 3 on this target");
            }
        }
        _ => return precondition("--target applies to coloring-vd and coloring-ed only"),
    };
    let summary =
        json!({ "s": json::ids(&s), "alpha": p.alpha, "gadget_internal": p.gadget_internal });
    Ok((p.instance, summary))
}

fn cmd_reduce(variant: &str, input: &Path, out: Option<&Path>, target: Option<&Path>) -> Run<()> {
    let classic = ClassicInstance::from_file(variant, &parse_classic(&read(input)?)?)?;
    let (h, inst, pipeline) = match target {
        Some(t) => {
            let h = load_target(t)?;
            let (inst, summary) = coloring_pipeline(&h, &classic)?;
            (h, inst, Some(summary))
        }
        None => {
            let (h, inst) = encode_classic(&classic)?;
            (h, inst, None)
        }
    };
    let (h_text, inst_text) = (write_target(&h), write_instance(&inst, &[]));
    let g: &Graph = classic.graph();
    let mut report = json!({
        "variant": variant,
        "mode": classic.mode().as_str(),
        "source": { "n": g.n, "m": g.edges.len() },
        "target_vertices": h.n(),
        "instance": { "n": inst.n, "m": inst.edges.len() },
        "budget": inst.budget,
    });
    if let Some(p) = pipeline {
        report["pipeline"] = p;
    }
    match out {
        Some(prefix) => {
            let hp = prefix.with_extension("hg");
            let ip = prefix.with_extension("lhi");
            write(&hp, &h_text)?;
            write(&ip, &inst_text)?;
            report["files"] = json!([hp.display().to_string(), ip.display().to_string()]);
        }
        None => {
            report["target"] = json!(h_text);
            report["instance_text"] = json!(inst_text);
        }
    }
    print(&report);
    Ok(())
}

fn cmd_selftest(seed: u64, count: usize, workers: usize) -> Run<()> {
    let report = run_with_workers(seed, count, workers);
    print(&json::selftest(&report));
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Reported(3))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Classify { target } => cmd_classify(&target),
        Cmd::Solve {
            mode,
            target,
            instance,
            td,
            core,
            algo,
        } => cmd_solve(
            mode,
            &target,
            &instance,
            td.as_deref(),
            core.as_deref(),
            algo,
        ),
        Cmd::Gadget {
            kind,
            target,
            s,
            v,
            a,
            b,
            from,
            to,
            budget,
            verify,
            out,
        } => {
            let args = GadgetArgs {
                s,
                v,
                a,
                b,
                from,
                to,
                budget,
            };
            cmd_gadget(kind, &target, args, verify, out.as_deref())
        }
        Cmd::Reduce {
            variant,
            input,
            out,
            target,
        } => cmd_reduce(&variant, &input, out.as_deref(), target.as_deref()),
        Cmd::Selftest {
            seed,
            count,
            workers,
        } => cmd_selftest(seed, count, workers),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Reported(code)) => ExitCode::from(code),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(match e {
                Error::Infeasible(_) => 1,
                Error::Parse { .. } => 2,
                Error::Precondition(_)
                | Error::Verification(_)
                | Error::TooLarge(_)
                | Error::Flow(_) => 3,
            })
        }
    }
}
