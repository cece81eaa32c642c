use lhom::analysis::{classify_vd, find_obstruction};
use lhom::dp::{solve_ed_dp, solve_vd_dp};
use lhom::formats::HubCore;
use lhom::gadget::ed::synthesize_neq;
use lhom::gadget::Gadget;
use lhom::gen::*;
use lhom::lists::max_incomparable;
use lhom::oracle::classic;
use lhom::oracle::{oracle_ed, oracle_vd};
use lhom::reductions::*;
use lhom::td::validate_hub_core;
use lhom::{Error, Instance, TargetGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_simple(rng: &mut ChaCha8Rng, max_n: usize, p: f64) -> Graph {
    let n = rng.gen_range(1..=max_n);
    Graph::new(n, &random_graph(rng, n, p))
}

fn cost(c: &ClassicInstance) -> u64 {
    let (h, inst) = encode_classic(c).unwrap();
    match c.mode() {
        lhom::Mode::Vd => oracle_vd(&h, &inst).unwrap().cost,
        lhom::Mode::Ed => oracle_ed(&h, &inst).unwrap().cost,
    }
}

#[test]
fn classic_encodings_match_their_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..150 {
        let g = random_simple(&mut rng, 8, 0.4);
        let (n, e) = (g.n, g.edges.clone());
        assert_eq!(
            cost(&ClassicInstance::VertexCover(g.clone())),
            classic::vertex_cover(n, &e) as u64
        );
        assert_eq!(
            cost(&ClassicInstance::MaxCut(g.clone())),
            (e.len() - classic::max_cut(n, &e)) as u64
        );
        let oct = ClassicInstance::Oct {
            g: g.clone(),
            left: vec![],
            right: vec![],
        };
        assert_eq!(cost(&oct), classic::odd_cycle_transversal(n, &e) as u64);
        if n >= 2 {
            let st = ClassicInstance::StMinCut {
                g: g.clone(),
                s: 0,
                t: n - 1,
            };
            assert_eq!(
                cost(&st),
                classic::edge_multiway_cut(n, &e, &[0, n - 1]) as u64
            );
        }
        let k = rng.gen_range(1..=n.min(3));
        let terminals: Vec<usize> = (0..k).collect();
        let emc = ClassicInstance::EdgeMultiway {
            g: g.clone(),
            terminals: terminals.clone(),
        };
        let want = classic::edge_multiway_cut(n, &e, &terminals);
        assert_eq!(classic::edge_multiway_cut_labels(n, &e, &terminals), want);
        assert_eq!(cost(&emc), want as u64);
    }
}

#[test]
fn vertex_multiway_encoding_matches_its_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut checked = 0;
    while checked < 100 {
        let g = random_simple(&mut rng, 7, 0.4);
        let k = rng.gen_range(1..=g.n.min(3));
        let terminals: Vec<usize> = (0..k).collect();
        let want = classic::vertex_multiway_cut(g.n, &g.edges, &terminals);
        assert_eq!(
            classic::vertex_multiway_cut_labels(g.n, &g.edges, &terminals),
            want
        );
        let c = ClassicInstance::VertexMultiway { g, terminals };
        match want {
            None => assert!(matches!(encode_classic(&c), Err(Error::Precondition(_)))),
            Some(w) => {
                let (h, inst) = encode_classic(&c).unwrap();
                assert_eq!(solve_vd_dp(&h, &inst, None).unwrap().cost, w as u64);
                checked += 1;
            }
        }
    }
}

fn random_lists(rng: &mut ChaCha8Rng, n: usize, k: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.min(k));
            let mut l: Vec<usize> = (0..k).collect();
            while l.len() > len {
                l.remove(rng.gen_range(0..l.len()));
            }
            l
        })
        .collect()
}

#[test]
fn vertex_multiway_decoder_offset() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..80 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=3);
        let h = independent_reflexive(k);
        let inst = Instance::with_lists(
            n,
            &random_graph(&mut rng, n, 0.5),
            random_lists(&mut rng, n, k, 3),
        )
        .unwrap();
        let d = decode_to_vertex_multiway(&h, &inst).unwrap();
        let ClassicInstance::VertexMultiway { g, terminals } = &d.instance else {
            panic!()
        };
        let target = classic::vertex_multiway_cut(g.n, &g.edges, terminals).unwrap() as i64;
        assert_eq!(
            target,
            oracle_vd(&h, &inst).unwrap().cost as i64 + d.offset,
            "{:?}",
            inst
        );
    }
}

#[test]
fn edge_multiway_decoder_offset() {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    for _ in 0..80 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=3);
        let h = independent_reflexive(k);
        let inst = Instance::with_lists(
            n,
            &random_graph(&mut rng, n, 0.5),
            random_lists(&mut rng, n, k, 3),
        )
        .unwrap();
        let d = decode_to_edge_multiway(&h, &inst).unwrap();
        let ClassicInstance::EdgeMultiway { g, terminals } = &d.instance else {
            panic!()
        };
        let target = classic::edge_multiway_cut_labels(g.n, &g.edges, terminals) as i64;
        assert_eq!(
            target,
            oracle_ed(&h, &inst).unwrap().cost as i64 + d.offset,
            "{:?}",
            inst
        );
    }
}

#[test]
fn decoders_reject_other_targets() {
    let inst = Instance::with_lists(1, &[], vec![vec![0]]).unwrap();
    assert!(decode_to_vertex_multiway(&reflexive_path(2), &inst).is_err());
    assert!(decode_to_edge_multiway(&irreflexive_complete(2), &inst).is_err());
    let empty = Instance::with_lists(1, &[], vec![vec![]]).unwrap();
    assert!(decode_to_edge_multiway(&independent_reflexive(2), &empty).is_err());
}

#[test]
fn single_terminal_decoders_are_degenerate() {
    let h = independent_reflexive(1);
    let inst = Instance::with_lists(3, &[(0, 1), (1, 2)], vec![vec![0]; 3]).unwrap();
    assert_eq!(decode_to_edge_multiway(&h, &inst).unwrap().offset, 0);
    assert_eq!(decode_to_vertex_multiway(&h, &inst).unwrap().offset, 0);
    let g = Graph::new(3, &[(0, 1), (1, 2)]);
    let d = annotated_maxcut_to_maxcut(&g, &[], &[]).unwrap();
    assert_eq!(d.offset, 0);
    let ClassicInstance::MaxCut(out) = &d.instance else {
        panic!()
    };
    assert_eq!((out.n, out.edges.len()), (4, 2));
}

#[test]
fn annotated_max_cut_offset() {
    let mut rng = ChaCha8Rng::seed_from_u64(75);
    let k2 = irreflexive_complete(2);
    for _ in 0..80 {
        let n = rng.gen_range(1..=6);
        let edges = random_graph(&mut rng, n, 0.35);
        let lists: Vec<Vec<usize>> = (0..n)
            .map(|_| [vec![0], vec![1], vec![0, 1]][rng.gen_range(0..3)].clone())
            .collect();
        let inst = Instance::with_lists(n, &edges, lists.clone()).unwrap();
        let left: Vec<usize> = (0..n).filter(|&v| lists[v] == [0]).collect();
        let right: Vec<usize> = (0..n).filter(|&v| lists[v] == [1]).collect();
        let d = annotated_maxcut_to_maxcut(&Graph::new(n, &edges), &left, &right).unwrap();
        let ClassicInstance::MaxCut(g) = &d.instance else {
            panic!()
        };
        let annotated = edges.len() as i64 - oracle_ed(&k2, &inst).unwrap().cost as i64;
        assert_eq!(
            classic::max_cut_labels(g.n, &g.edges) as i64,
            annotated + d.offset,
            "{:?}",
            inst
        );
    }
}

fn vd_pipeline_check(h: &TargetGraph, s: &[usize], g: &Graph) {
    let q = s.len();
    let p = coloring_vd_to_lhomvd(h, s, g, 0).unwrap();
    let opt = solve_vd_dp(h, &p.instance, None).unwrap().cost;
    let source = classic::coloring_vd(g.n, &g.edges, q) as u64;
    assert_eq!(opt, p.alpha * g.edges.len() as u64 + source);
    for k in 0..=2 {
        let p = coloring_vd_to_lhomvd(h, s, g, k).unwrap();
        assert_eq!(opt <= p.budget, source <= k);
    }
}

#[test]
fn vertex_coloring_pipeline_preserves_answers() {
    let h = independent_reflexive(3);
    vd_pipeline_check(&h, &[0, 1, 2], &Graph::new(4, &complete_edges(4)));
    let edge = coloring_vd_to_lhomvd(&h, &[0, 1], &Graph::new(2, &[(0, 1)]), 0).unwrap();
    assert_eq!(
        solve_vd_dp(&h, &edge.instance, None).unwrap().cost,
        edge.budget
    );
    let mut rng = ChaCha8Rng::seed_from_u64(76);
    for _ in 0..12 {
        let h = sample_target(&mut rng, 2, 6, |h| {
            !classify_vd(h).is_poly() && (2..=3).contains(&max_incomparable(h).0)
        });
        let s = max_incomparable(&h).1;
        vd_pipeline_check(&h, &s, &random_simple(&mut rng, 5, 0.5));
    }
}

fn ed_pipeline_check(h: &TargetGraph, s: &[usize], g: &Graph, neq: &Gadget) {
    let p = coloring_ed_to_lhomed(h, s, g, 0, neq).unwrap();
    let opt = solve_ed_dp(h, &p.instance, None).unwrap().cost;
    let source = classic::coloring_ed(g.n, &g.edges, s.len()) as u64;
    assert_eq!(opt, p.alpha * g.edges.len() as u64 + source);
    for z in 0..=2 {
        let p = coloring_ed_to_lhomed(h, s, g, z, neq).unwrap();
        assert_eq!(opt <= p.budget, source <= z);
    }
}

#[test]
fn edge_coloring_pipeline_preserves_answers() {
    let k2 = irreflexive_complete(2);
    let edge = synthesize_neq(&k2, 0, 1, 0).unwrap().unwrap();
    ed_pipeline_check(&k2, &[0, 1], &Graph::new(5, &cycle_edges(5)), &edge);
    let k3 = irreflexive_complete(3);
    let mut tri = Gadget::path(&[vec![0, 1, 2], vec![0, 1, 2]]);
    tri.portals = vec![0, 1];
    ed_pipeline_check(&k3, &[0, 1, 2], &Graph::new(4, &complete_edges(4)), &tri);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..15 {
        let h = sample_undecomposable(&mut rng, 2, 6);
        let Some(o) = find_obstruction(&h) else {
            continue;
        };
        let (a, b) = (
            o.vertices[0].min(o.vertices[1]),
            o.vertices[0].max(o.vertices[1]),
        );
        let neq = synthesize_neq(&h, a, b, 3).unwrap().unwrap();
        ed_pipeline_check(&h, &[a, b], &random_simple(&mut rng, 5, 0.5), &neq);
    }
}

#[test]
fn unverified_neq_gadgets_are_rejected() {
    let h = independent_reflexive(3);
    let g = Gadget::path(&[vec![0, 1], vec![0, 1]]);
    let r = coloring_ed_to_lhomed(&h, &[0, 1], &Graph::new(2, &[(0, 1)]), 0, &g);
    assert!(matches!(r, Err(Error::Precondition(_))));
}

fn core_of(g: &Graph, q: Vec<usize>) -> HubCore {
    let core = HubCore {
        q,
        sigma: g.n,
        delta: g.n,
    };
    let mut sigma = 0;
    let mut delta = 0;
    for s in 1..=g.n {
        if validate_hub_core(
            g.n,
            &g.edges,
            &HubCore {
                sigma: s,
                ..core.clone()
            },
        )
        .is_ok()
        {
            sigma = s;
            break;
        }
    }
    for d in 0..=g.n {
        if validate_hub_core(
            g.n,
            &g.edges,
            &HubCore {
                sigma: g.n,
                delta: d,
                q: core.q.clone(),
            },
        )
        .is_ok()
        {
            delta = d;
            break;
        }
    }
    HubCore {
        sigma,
        delta,
        ..core
    }
}

#[test]
fn pipelines_keep_hub_cores() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let h3 = independent_reflexive(3);
    let k2 = irreflexive_complete(2);
    let edge = synthesize_neq(&k2, 0, 1, 0).unwrap().unwrap();
    for _ in 0..30 {
        let g = random_simple(&mut rng, 8, 0.4);
        let q: Vec<usize> = (0..g.n).filter(|_| rng.gen_bool(0.4)).collect();
        let core = core_of(&g, q);
        let vd = coloring_vd_to_lhomvd(&h3, &[0, 1, 2], &g, 0).unwrap();
        let lifted = lift_core(&core, vd.gadget_internal);
        assert_eq!(lifted.delta, core.delta.max(2));
        validate_hub_core(vd.instance.n, &vd.instance.edges, &lifted).unwrap();
        let ed = coloring_ed_to_lhomed(&k2, &[0, 1], &g, 0, &edge).unwrap();
        validate_hub_core(
            ed.instance.n,
            &ed.instance.edges,
            &lift_core(&core, ed.gadget_internal),
        )
        .unwrap();
    }
}
