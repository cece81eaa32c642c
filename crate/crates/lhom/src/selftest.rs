//! Seeded self-check corpus: every solver against the oracles, file format
//! round trips, and the DP table bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{classify_ed, classify_vd, find_decomposition, has_obstruction};
use crate::auto::{bc_order, solve_ed_auto, solve_vd_auto, split_by_decomposition};
use crate::dp::{solve_ed_dp, solve_vd_dp, table_profile};
use crate::error::{Error, Result};
use crate::formats::{parse_instance, parse_target, write_instance, write_target};
use crate::gen::{random_instance, sample_target};
use crate::graph::{Instance, Mode, Solution, TargetGraph};
use crate::lists::{i_of, reduce_lists};
use crate::oracle::{oracle_ed, oracle_vd};
use crate::poly::{solve_ed_poly, solve_vd_poly};
use crate::td::{build_td, parse_td, write_td};

/// Tally of one named identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    fn record(&mut self, name: &'static str, outcome: std::result::Result<(), String>) {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(Check {
                    name,
                    ..Default::default()
                });
                self.checks.len() - 1
            }
        };
        match outcome {
            Ok(()) => self.checks[pos].passed += 1,
            Err(e) => self.checks[pos].failures.push(e),
        }
    }
}

/// One corpus entry: |V(H)| ≤ 6, |V(G)| ≤ 10, random lists (possibly empty).
pub fn corpus_instance(rng: &mut ChaCha8Rng) -> (TargetGraph, Instance) {
    let h = sample_target(rng, 1, 6, |_| true);
    let n = rng.gen_range(1..=10);
    let p = rng.gen_range(0.1..0.6);
    let inst = random_instance(rng, h.n(), n, p, 0.6);
    (h, inst)
}

/// The seeded corpus used by [`run`].
pub fn corpus(seed: u64, count: usize) -> Vec<(TargetGraph, Instance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| corpus_instance(&mut rng)).collect()
}

fn agree(
    h: &TargetGraph,
    inst: &Instance,
    want: &Result<Solution>,
    got: Result<Solution>,
    tag: &str,
) -> std::result::Result<(), String> {
    match (want, got) {
        (Ok(w), Ok(g)) => {
            g.check(h, inst).map_err(|e| format!("{}: {}", tag, e))?;
            if g.cost != w.cost {
                return Err(format!("{}: cost {} but oracle {}", tag, g.cost, w.cost));
            }
            Ok(())
        }
        (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => Ok(()),
        (w, g) => Err(format!(
            "{}: oracle {:?} but solver {:?}",
            tag,
            w.as_ref().map(|s| s.cost),
            g.map(|s| s.cost)
        )),
    }
}

fn bounded(profile: &[(usize, usize)], base: usize, what: &str) -> std::result::Result<(), String> {
    for &(bag, states) in profile {
        if states as u128 > (base as u128).pow(bag as u32) {
            return Err(format!(
                "{}: {} states in a bag of {} exceed {}^{}",
                what, states, bag, base, bag
            ));
        }
    }
    Ok(())
}

/// Follows the ED dispatch and checks the DP tables of every undecomposable
/// leaf with an obstruction against i(H′)^|bag|.
fn ed_leaf_bounds(h: &TargetGraph, inst: &Instance) -> std::result::Result<usize, String> {
    if inst.n == 0 || !has_obstruction(h) {
        return Ok(0);
    }
    let inst = reduce_lists(h, inst);
    match find_decomposition(h) {
        None => {
            let profile = table_profile(h, &inst, None, Mode::Ed).map_err(|e| e.to_string())?;
            bounded(&profile, i_of(h), "ed leaf")?;
            Ok(1)
        }
        Some(dec) => {
            let split = split_by_decomposition(&dec, &inst).map_err(|e| e.to_string())?;
            let a = ed_leaf_bounds(&h.induced(&dec.a), &split.sub_a)?;
            let bc = ed_leaf_bounds(&h.induced(&bc_order(&dec)), &split.sub_bc)?;
            Ok(a + bc)
        }
    }
}

fn round_trips(h: &TargetGraph, inst: &Instance) -> std::result::Result<(), String> {
    let back = parse_target(&write_target(h)).map_err(|e| e.to_string())?;
    if back != *h {
        return Err("target changed across write/parse".into());
    }
    let text = write_instance(inst, &[]);
    let parsed = parse_instance(&text, h.n()).map_err(|e| e.to_string())?;
    if parsed.instance != *inst {
        return Err("instance changed across write/parse".into());
    }
    let td = build_td(inst.n, &inst.edges);
    let td_text = write_td(inst.n, &td);
    let (n, td2) = parse_td(&td_text).map_err(|e| e.to_string())?;
    if n != inst.n || write_td(n, &td2) != td_text {
        return Err("tree decomposition changed across write/parse".into());
    }
    Ok(())
}

/// Checks one instance and adds the outcomes to `report`.
pub fn check_instance(h: &TargetGraph, inst: &Instance, report: &mut Report) {
    let vd = oracle_vd(h, inst);
    report.record(
        "vd dp = oracle",
        agree(h, inst, &vd, solve_vd_dp(h, inst, None), "vd dp"),
    );
    report.record(
        "vd auto = oracle",
        agree(h, inst, &vd, solve_vd_auto(h, inst, None), "vd auto"),
    );
    if classify_vd(h).is_poly() {
        report.record(
            "vd poly = oracle",
            agree(h, inst, &vd, solve_vd_poly(h, inst), "vd poly"),
        );
    }
    let ed = oracle_ed(h, inst);
    report.record(
        "ed dp = oracle",
        agree(h, inst, &ed, solve_ed_dp(h, inst, None), "ed dp"),
    );
    report.record(
        "ed auto = oracle",
        agree(h, inst, &ed, solve_ed_auto(h, inst, None), "ed auto"),
    );
    if classify_ed(h).is_poly() {
        report.record(
            "ed poly = oracle",
            agree(h, inst, &ed, solve_ed_poly(h, inst), "ed poly"),
        );
    }
    report.record("format round trips", round_trips(h, inst));
    let vd_bound = table_profile(h, inst, None, Mode::Vd)
        .map_err(|e| e.to_string())
        .and_then(|p| bounded(&p, i_of(h) + 1, "vd"));
    report.record("vd table bound", vd_bound);
    if inst.lists.iter().all(|l| !l.is_empty()) {
        report.record("ed table bound", ed_leaf_bounds(h, inst).map(|_| ()));
    }
}

pub fn run(seed: u64, count: usize) -> Report {
    run_with_workers(seed, count, 1)
}

/// Splits the corpus into contiguous chunks checked on separate threads.
/// Chunk reports are merged in corpus order, so the result does not depend
/// on the worker count.
pub fn run_with_workers(seed: u64, count: usize, workers: usize) -> Report {
    let corpus = corpus(seed, count);
    let chunk = corpus.len().div_ceil(workers.max(1)).max(1);
    let parts: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = corpus
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut r = Report {
                        seed,
                        count,
                        checks: Vec::new(),
                    };
                    for (h, inst) in part {
                        check_instance(h, inst, &mut r);
                    }
                    r
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("selftest worker panicked"))
            .collect()
    });
    let mut report = Report {
        seed,
        count,
        checks: Vec::new(),
    };
    for part in parts {
        for c in part.checks {
            match report.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.passed += c.passed;
                    x.failures.extend(c.failures);
                }
                None => report.checks.push(c),
            }
        }
    }
    report
}
