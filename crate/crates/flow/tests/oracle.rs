use std::collections::VecDeque;

use lhom_flow::{min_cut, min_vertex_separator, Capacity, FlowNetwork};
use proptest::prelude::*;

fn brute_cut(net: &FlowNetwork) -> Option<u64> {
    let n = net.nodes();
    let (s, t) = (net.source(), net.sink());
    let mut best: Option<u64> = None;
    for mask in 0u32..(1 << n) {
        if mask & (1 << s) == 0 || mask & (1 << t) != 0 {
            continue;
        }
        let mut value = 0u64;
        let mut ok = true;
        for a in net.arcs() {
            if mask & (1 << a.tail) != 0 && mask & (1 << a.head) == 0 {
                match a.capacity {
                    Capacity::Finite(c) => value += c,
                    Capacity::Unbreakable => ok = false,
                }
            }
        }
        if ok {
            best = Some(best.map_or(value, |b| b.min(value)));
        }
    }
    best
}

fn reachable(nodes: usize, arcs: &[(usize, usize)], s: usize, removed: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; nodes];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in arcs {
            if a == u && !seen[b] && !removed[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen
}

fn brute_separator(nodes: usize, arcs: &[(usize, usize)], s: usize, t: usize) -> Option<u64> {
    let mut best = None;
    for mask in 0u32..(1 << nodes) {
        if mask & (1 << s) != 0 || mask & (1 << t) != 0 {
            continue;
        }
        let removed: Vec<bool> = (0..nodes).map(|v| mask & (1 << v) != 0).collect();
        if !reachable(nodes, arcs, s, &removed)[t] {
            let size = mask.count_ones() as u64;
            best = Some(best.map_or(size, |b: u64| b.min(size)));
        }
    }
    best
}

fn network_strategy() -> impl Strategy<Value = FlowNetwork> {
    (3usize..=8)
        .prop_flat_map(|n| {
            let arc = (0..n, 0..n, prop_oneof![4 => (1u64..4).prop_map(Capacity::Finite), 1 => Just(Capacity::Unbreakable)]);
            (Just(n), proptest::collection::vec(arc, 0..18))
        })
        .prop_map(|(n, arcs)| {
            let mut net = FlowNetwork::new(n, 0, n - 1).unwrap();
            for (u, v, c) in arcs {
                if u != v {
                    net.add_arc(u, v, c);
                }
            }
            net
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn min_cut_matches_partition_enumeration(net in network_strategy()) {
        match (min_cut(&net), brute_cut(&net)) {
            (Ok(cut), Some(best)) => {
                prop_assert_eq!(cut.value, best);
                prop_assert!(cut.source_side[net.source()]);
                prop_assert!(!cut.source_side[net.sink()]);
                for &i in &cut.cut_arcs {
                    prop_assert!(net.arcs()[i].capacity != Capacity::Unbreakable);
                }
                // Removing the cut arcs disconnects the sink.
                let kept: Vec<(usize, usize)> = net
                    .arcs()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !cut.cut_arcs.contains(i))
                    .map(|(_, a)| (a.tail, a.head))
                    .collect();
                let seen = reachable(net.nodes(), &kept, net.source(), &vec![false; net.nodes()]);
                prop_assert!(!seen[net.sink()]);
            }
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "flow {:?} vs brute {:?}", got, want),
        }
    }

    #[test]
    fn separator_matches_subset_enumeration(
        n in 3usize..=8,
        raw in proptest::collection::vec((0usize..8, 0usize..8), 0..20),
    ) {
        let arcs: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(u, v)| (u % n, v % n))
            .filter(|&(u, v)| u != v && !(u == 0 && v == n - 1))
            .collect();
        let sep = min_vertex_separator(n, &arcs, 0, n - 1).unwrap();
        prop_assert_eq!(Some(sep.value), brute_separator(n, &arcs, 0, n - 1));
        let mut removed = vec![false; n];
        for &v in &sep.separator {
            removed[v] = true;
        }
        prop_assert!(!reachable(n, &arcs, 0, &removed)[n - 1]);
    }
}
