use std::collections::BTreeSet;

use lhom::analysis::{
    classify_ed, classify_vd, find_obstruction, is_strong_split, VdWitness, Verdict,
};
use lhom::gadget::ed::*;
use lhom::gadget::vd::*;
use lhom::gadget::{cost_table, cost_table_enum, verify_realizes, Gadget, ENUM_BOUND};
use lhom::gen::*;
use lhom::lists::max_incomparable;
use lhom::{Mode, TargetGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vd_witness(h: &TargetGraph) -> VdWitness {
    match classify_vd(h) {
        Verdict::NpHard(w) => w,
        Verdict::Poly => panic!("{:?} is VD-polynomial", h),
    }
}

fn pair_matcher_base(case: PairMatcherCase) -> u64 {
    match case {
        PairMatcherCase::Independent => 2,
        PairMatcherCase::C4 | PairMatcherCase::C5 => 0,
    }
}

fn translator_base(case: TranslatorCase) -> u64 {
    match case {
        TranslatorCase::A => 0,
        TranslatorCase::B | TranslatorCase::D => 1,
        TranslatorCase::C => 2,
    }
}

/// Builds every VD gadget for each v ∈ S and checks the base costs by case.
fn check_vd_family(h: &TargetGraph, s: &[usize]) {
    for &v in s {
        let sp = build_splitter(h, s, v).unwrap();
        assert_eq!(sp.gadget.base, 1);
        assert_eq!(sp.gadget.table.get(&[None, None]), Some(1));
        let m = build_matcher(h, &sp).unwrap();
        assert_eq!(m.gadget.table.get(&[None, None]), Some(m.gadget.base));
        match m.case {
            MatcherCase::IrreflexiveA(_) | MatcherCase::IrreflexiveB(_) => {
                assert_eq!(m.gadget.base, 1)
            }
            MatcherCase::IrreflexiveC(_) => assert_eq!(m.gadget.base, 2),
            MatcherCase::Translated {
                core, translator, ..
            } => {
                let w = vd_witness(h);
                for swap in [false, true] {
                    let (pm, case, _, _) = build_pair_matcher(h, &w, swap).unwrap();
                    assert_eq!(case, core);
                    assert_eq!(pm.base, pair_matcher_base(case));
                }
                let (_, _, a, b) = build_pair_matcher(h, &w, false).unwrap();
                let (tr, case, _) = build_translator(h, sp.v_out, sp.w_out, sp.w, a, b).unwrap();
                assert_eq!(case, translator);
                assert_eq!(tr.base, translator_base(case));
                assert_eq!(m.gadget.base, 2 * tr.base + pair_matcher_base(core));
            }
        }
        let p = build_prohibitor(h, s, v).unwrap();
        assert_eq!(p.base, 2 + m.gadget.base);
    }
    let sp = build_s_prohibitor(h, s).unwrap();
    for &u in s {
        assert!(sp
            .table
            .get(&[Some(u), Some(u)])
            .map_or(true, |c| c > sp.base));
    }
}

#[test]
fn vd_gadgets_meet_their_contracts_on_hard_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..60 {
        let h = sample_target(&mut rng, 2, 7, |h| {
            !classify_vd(h).is_poly() && max_incomparable(h).0 >= 2
        });
        check_vd_family(&h, &max_incomparable(&h).1);
    }
}

#[test]
fn every_matcher_case_is_reached() {
    let cases = [
        (independent_reflexive(3), "Independent"),
        (reflexive_cycle(4), "C4"),
        (reflexive_cycle(5), "C5"),
        (irreflexive_complete(2), "Irreflexive"),
        (irreflexive_complete(3), "Irreflexive"),
    ];
    for (h, want) in cases {
        let s = max_incomparable(&h).1;
        check_vd_family(&h, &s);
        let m = build_matcher(&h, &build_splitter(&h, &s, s[0]).unwrap()).unwrap();
        let got = match m.case {
            MatcherCase::Translated { core, .. } => format!("{:?}", core),
            _ => "Irreflexive".to_string(),
        };
        assert_eq!(got, want);
    }
}

#[test]
fn three_independent_matcher_costs() {
    let h = independent_reflexive(3);
    let (m, case, a, b) = build_pair_matcher(&h, &vd_witness(&h), false).unwrap();
    assert_eq!(case, PairMatcherCase::Independent);
    assert_eq!(m.base, 2);
    assert_eq!(m.table.get(&[Some(a), Some(b)]), Some(2));
    assert!(m.table.get(&[Some(a), Some(a)]).unwrap() > 2);
    assert_eq!(m.table.get(&[Some(b), Some(a)]), Some(2));
    assert!(m.table.get(&[Some(b), Some(b)]).unwrap() >= 2);
}

#[test]
fn s_prohibitor_over_three_independent() {
    let h = independent_reflexive(3);
    let p = build_s_prohibitor(&h, &[0, 1, 2]).unwrap();
    for u in 0..3 {
        for v in 0..3 {
            let c = p.table.get(&[Some(u), Some(v)]).unwrap();
            assert_eq!(c > p.base, u == v, "({}, {})", u, v);
        }
    }
    assert_eq!(p.table.get(&[None, Some(0)]), Some(p.base));
}

fn random_gadget(rng: &mut ChaCha8Rng, h_size: usize) -> Gadget {
    let n = rng.gen_range(2..=6);
    let mut g = Gadget::empty();
    for _ in 0..n {
        let mut l: Vec<usize> = (0..h_size).filter(|_| rng.gen_bool(0.5)).collect();
        if l.is_empty() {
            l.push(rng.gen_range(0..h_size));
        }
        g.add_vertex(l);
    }
    for (u, v) in random_graph(rng, n, 0.5) {
        g.add_edge(u, v);
    }
    let k = rng.gen_range(1..=n.min(3));
    g.portals = (0..n).rev().take(k).collect();
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cost_tables_match_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = rng.gen_range(1..=4);
        let h = random_target(&mut rng, size, 0.5, 0.5);
        let g = random_gadget(&mut rng, h.n());
        for mode in [Mode::Vd, Mode::Ed] {
            prop_assert_eq!(cost_table(&h, &g, mode).unwrap(), cost_table_enum(&h, &g, mode, ENUM_BOUND).unwrap());
        }
    }

    #[test]
    fn vd_base_is_never_undercut(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = rng.gen_range(1..=4);
        let h = random_target(&mut rng, size, 0.5, 0.5);
        let g = random_gadget(&mut rng, h.n());
        let t = cost_table(&h, &g, Mode::Vd).unwrap();
        let all_deleted = vec![None; g.portals.len()];
        prop_assert_eq!(t.get(&all_deleted), t.base());
    }
}

fn ed_hard_corpus(seed: u64, count: usize) -> Vec<TargetGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let h = if out.len() % 4 == 3 {
            sample_strong_split(&mut rng, 3, 7)
        } else {
            sample_undecomposable(&mut rng, 3, 7)
        };
        if !classify_ed(&h).is_poly() {
            out.push(h);
        }
    }
    out
}

fn assert_forces(h: &TargetGraph, m: &PairMove) {
    let rep = move_report(h, &m.gadget).unwrap();
    for i in 0..2 {
        assert!(
            rep.forces(m.from[i], m.to[i]),
            "{:?} {:?} {:?}",
            h,
            m.from,
            rep.reach
        );
    }
}

#[test]
fn cost_pendants_shift_one_row() {
    let h = independent_reflexive(3);
    let g = Gadget::path(&[vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1]]);
    let before = cost_table(&h, &g, Mode::Ed).unwrap();
    assert_eq!(add_cost_pendants(&h, &g, 0, 0, 0).unwrap(), g);
    let after = cost_table(&h, &add_cost_pendants(&h, &g, 1, 0, 2).unwrap(), Mode::Ed).unwrap();
    for x in [0, 1] {
        assert_eq!(after.at(&[x, 0]), before.at(&[x, 0]).map(|c| c + 2));
        assert_eq!(after.at(&[x, 1]), before.at(&[x, 1]));
    }
}

#[test]
fn normalizing_an_uneven_move() {
    let h = independent_reflexive(3);
    let g = Gadget::path(&[vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1]]);
    let rep = move_report(&h, &g).unwrap();
    assert!(!rep.is_normalized());
    assert_eq!(rep.reach[&0], vec![1]);
    let n = normalize_move(&h, &g).unwrap();
    let after = move_report(&h, &n).unwrap();
    assert!(after.is_normalized());
    assert_eq!(after.relation(), rep.relation());
    assert_eq!(after.base(), 2);
}

#[test]
fn composition_adds_base_costs() {
    let h = independent_reflexive(3);
    let m = normalize_move(&h, &move_between_pairs(&h, (0, 1), (1, 2)).unwrap().gadget).unwrap();
    let back = normalize_move(&h, &move_between_pairs(&h, (1, 2), (0, 1)).unwrap().gadget).unwrap();
    let c = compose_moves(&h, &m, &back).unwrap();
    let base = |g: &Gadget| move_report(&h, g).unwrap().base();
    assert_eq!(base(&c), base(&m) + base(&back));
}

#[test]
fn adjacent_pair_moves_force_a_bijection() {
    let mut count = 0;
    for h in ed_hard_corpus(61, 50) {
        for a in 0..h.n() {
            for b in 0..h.n() {
                for c in 0..h.n() {
                    if b != c && a != b && a != c && h.incomparable(a, b) && h.incomparable(a, c) {
                        let m = adjacent_pair_move(&h, a, b, c).unwrap();
                        assert_eq!(m.from, [a, b]);
                        assert!(m.to == [a, c] || m.to == [c, a]);
                        assert_forces(&h, &m);
                        count += 1;
                    }
                }
            }
        }
    }
    assert!(count >= 100);
}

#[test]
fn aux_graphs_are_connected_on_undecomposable_targets() {
    let corpus = ed_hard_corpus(62, 120);
    let strong = corpus.iter().filter(|h| is_strong_split(h)).count();
    assert!(strong >= 20);
    for h in &corpus {
        let variant = if is_strong_split(h) {
            AuxVariant::Star
        } else {
            AuxVariant::Good
        };
        assert!(build_aux(h, variant).is_connected(), "{:?}", h);
    }
}

#[test]
fn moves_between_random_pairs_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    for h in ed_hard_corpus(64, 60) {
        let pairs = build_aux(&h, AuxVariant::Full).pairs;
        let p = pairs[rng.gen_range(0..pairs.len())];
        let q = pairs[rng.gen_range(0..pairs.len())];
        let m = move_between_pairs(&h, p, q).unwrap();
        let set = |x: [usize; 2]| x.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(set(m.from), set([p.0, p.1]));
        assert_eq!(set(m.to), set([q.0, q.1]));
        assert_forces(&h, &m);
        let s = max_incomparable(&h).1;
        if s.contains(&p.0) && s.contains(&p.1) {
            assert_forces(&h, &relax_input_list(&h, &m, &s).unwrap());
        }
    }
}

#[test]
fn indicators_separate_codes() {
    let mut built = 0;
    for h in ed_hard_corpus(65, 40) {
        let s = max_incomparable(&h).1;
        if s.len() > 3 {
            continue;
        }
        let o = find_obstruction(&h).unwrap();
        let (a, b) = (o.vertices[0], o.vertices[1]);
        if !h.incomparable(a, b) {
            continue;
        }
        let ind = build_indicator(&h, &s, a, b).unwrap();
        assert_eq!(ind.gadget.portals.len(), 1 + s.len() * (s.len() - 1));
        assert!(verify_realizes(&h, &ind.gadget, &ind.relation, None).unwrap());
        built += 1;
    }
    assert!(built >= 20);
}

#[test]
fn indicator_over_irreflexive_triangle() {
    let h = irreflexive_complete(3);
    let ind = build_indicator(&h, &[0, 1, 2], 0, 1).unwrap();
    assert_eq!(ind.gadget.portals.len(), 7);
    assert_eq!(ind.codes.len(), 3);
    for words in ind.codes.values() {
        assert!(words.iter().all(|w| w.len() == 6));
    }
}

#[test]
fn neq_is_synthesized_for_every_obstruction_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for _ in 0..300 {
        let h = sample_target(&mut rng, 2, 7, |h| find_obstruction(h).is_some());
        let o = find_obstruction(&h).unwrap();
        for (i, &a) in o.vertices.iter().enumerate() {
            for &b in &o.vertices[i + 1..] {
                let g = synthesize_neq(&h, a, b, 3)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{:?} {:?}", h, o));
                assert!(verify_realizes(&h, &g, &neq(&[a, b]), Some(1)).unwrap());
            }
        }
    }
}

#[test]
fn neq_examples() {
    let edge = synthesize_neq(&irreflexive_complete(2), 0, 1, 0)
        .unwrap()
        .unwrap();
    assert_eq!((edge.n(), edge.graph.edges.len()), (2, 1));
    let h = independent_reflexive(3);
    let g = synthesize_neq(&h, 0, 1, 3).unwrap().unwrap();
    assert!(verify_realizes(&h, &g, &neq(&[0, 1]), Some(1)).unwrap());
    // A reflexive C4 with a universal vertex: no plain path works here.
    let mut h = TargetGraph::new(5);
    for (u, v) in cycle_edges(4) {
        h.add_edge(u, v);
    }
    for v in 0..5 {
        h.add_edge(v, v);
        h.add_edge(v, 4);
    }
    let o = find_obstruction(&h).unwrap();
    let g = synthesize_neq(&h, o.vertices[0], o.vertices[1], 3)
        .unwrap()
        .unwrap();
    assert!(verify_realizes(&h, &g, &neq(&o.vertices[..2]), Some(1)).unwrap());
}

#[test]
fn neq_search_rejects_non_obstruction_vertices() {
    assert!(synthesize_neq(&reflexive_path(3), 0, 2, 2).is_err());
    assert!(synthesize_neq(&irreflexive_complete(2), 0, 0, 2).is_err());
}

#[test]
fn one_realizer_from_an_equality_move() {
    let h = independent_reflexive(3);
    let eq = normalize_move(&h, &move_between_pairs(&h, (0, 1), (0, 1)).unwrap().gadget).unwrap();
    let r: BTreeSet<Vec<usize>> = [vec![0]].into_iter().collect();
    let g = one_realizer_from(&h, &eq, &[0, 1], 1, &r, (0, 1)).unwrap();
    let t = cost_table(&h, &g, Mode::Ed).unwrap();
    assert_eq!(t.at(&[1]), t.at(&[0]).map(|c| c + 1));
    assert!(verify_realizes(&h, &g, &r, Some(1)).unwrap());
}

#[test]
fn splitter_on_opposite_corners_of_c4() {
    let h = reflexive_cycle(4);
    let sp = build_splitter(&h, &[0, 2], 0).unwrap();
    assert_eq!(sp.gadget.base, 1);
    assert_eq!(sp.w, 2);
}

#[test]
fn pendants_on_the_irreflexive_edge() {
    let h = irreflexive_complete(2);
    let g = Gadget::path(&[vec![0, 1], vec![0, 1]]);
    let t = cost_table(&h, &add_cost_pendants(&h, &g, 0, 0, 1).unwrap(), Mode::Ed).unwrap();
    assert_eq!(
        [t.at(&[0, 0]), t.at(&[0, 1]), t.at(&[1, 0]), t.at(&[1, 1])],
        [Some(2), Some(1), Some(0), Some(1)]
    );
}

#[test]
fn adjacent_move_with_equal_pairs_is_the_identity() {
    let h = independent_reflexive(3);
    let m = adjacent_pair_move(&h, 0, 1, 1).unwrap();
    assert_eq!(m.to, [0, 1]);
    assert_forces(&h, &m);
}

#[test]
fn adjacent_move_and_its_reverse_compose_to_the_identity() {
    let h = independent_reflexive(3);
    let there = adjacent_pair_move(&h, 0, 1, 2).unwrap();
    let back = adjacent_pair_move(&h, 0, 2, 1).unwrap();
    let g = compose_moves(
        &h,
        &normalize_move(&h, &there.gadget).unwrap(),
        &normalize_move(&h, &back.gadget).unwrap(),
    )
    .unwrap();
    let rep = move_report(&h, &g).unwrap();
    assert!(rep.forces(0, back.image(there.image(0))));
    assert!(rep.forces(1, back.image(there.image(1))));
    assert_eq!(
        [back.image(there.image(0)), back.image(there.image(1))],
        [0, 1]
    );
}

#[test]
fn moves_over_the_irreflexive_triangle() {
    let h = irreflexive_complete(3);
    let m = move_between_pairs(&h, (0, 1), (1, 2)).unwrap();
    assert_forces(&h, &m);
    let same = relax_input_list(&h, &m, &[0, 1]).unwrap();
    assert_eq!(same.gadget, m.gadget);
    let wide = relax_input_list(&h, &m, &[0, 1, 2]).unwrap();
    assert_eq!(wide.gadget.portal_list(0), &[0, 1, 2]);
    assert_forces(&h, &wide);
}

#[test]
fn indicator_of_a_pair() {
    let h = irreflexive_complete(2);
    let ind = build_indicator(&h, &[0, 1], 0, 1).unwrap();
    assert_eq!(ind.gadget.portals.len(), 3);
    assert!(ind.codes.values().all(|c| c.len() == 1));
}

#[test]
fn full_relation_is_realized_vacuously() {
    let h = independent_reflexive(3);
    let g = Gadget::path(&[vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1]]);
    let all: BTreeSet<Vec<usize>> = [[0, 0], [0, 1], [1, 0], [1, 1]]
        .iter()
        .map(|t| t.to_vec())
        .collect();
    assert!(!verify_realizes(&h, &g, &all, Some(1)).unwrap());
    let n = normalize_move(&h, &g).unwrap();
    let flat = Gadget::path(&[vec![0, 1], vec![0, 1]]);
    assert!(verify_realizes(&reflexive_complete(2), &flat, &all, Some(1)).unwrap());
    assert!(verify_realizes(&h, &n, &move_report(&h, &n).unwrap().relation(), None).unwrap());
}
