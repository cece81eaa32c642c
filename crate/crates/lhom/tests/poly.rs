use lhom::gen::*;
use lhom::lists::reduce_lists;
use lhom::oracle::{oracle_ed, oracle_vd};
use lhom::poly::*;
use lhom::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn vertex_poly_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let h = sample_vd_poly(&mut rng, 6);
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.6);
        let inst = random_instance(&mut rng, h.n(), n, p, 0.6);
        let got = solve_vd_poly(&h, &inst).unwrap();
        got.check(&h, &inst).unwrap();
        assert_eq!(
            got.cost,
            oracle_vd(&h, &inst).unwrap().cost,
            "{:?} {:?}",
            h,
            inst
        );
    }
}

#[test]
fn edge_poly_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..300 {
        let h = sample_ed_poly(&mut rng, 6);
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.6);
        let inst = random_instance_nonempty(&mut rng, h.n(), n, p, 0.6);
        let got = solve_ed_poly(&h, &inst).unwrap();
        got.check(&h, &inst).unwrap();
        assert_eq!(
            got.cost,
            oracle_ed(&h, &inst).unwrap().cost,
            "{:?} {:?}",
            h,
            inst
        );
    }
}

#[test]
fn edge_poly_reports_empty_lists() {
    let h = independent_reflexive(2);
    let inst = lhom::Instance::with_lists(2, &[(0, 1)], vec![vec![0], vec![]]).unwrap();
    assert!(matches!(
        solve_ed_poly(&h, &inst),
        Err(Error::Infeasible(_))
    ));
}

#[test]
fn poly_solvers_refuse_hard_targets() {
    let inst = lhom::Instance::new(2, 1);
    assert!(matches!(
        solve_vd_poly(&loopless_k1(), &inst),
        Err(Error::Precondition(_))
    ));
    let inst = lhom::Instance::new(2, 2);
    assert!(matches!(
        solve_ed_poly(&irreflexive_complete(2), &inst),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn staircase_orders_exist_for_obstruction_free_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let h = sample_ed_poly(&mut rng, 7);
        let inst = random_instance_nonempty(&mut rng, h.n(), 8, 0.5, 0.7);
        let inst = reduce_lists(&h, &inst);
        let orders = staircase_orders(&h, &inst).unwrap();
        for &(u, v) in &inst.edges {
            let m = InteractionMatrix::new(
                &h,
                &orders.orders[&inst.lists[u]],
                &orders.orders[&inst.lists[v]],
            );
            assert!(m.is_staircase());
            assert!(m.transpose().is_staircase());
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, usize, usize, usize, usize)> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), 0..=r, 0..=c, 1..=r + 1, 1..=c + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rectangle_cover_partitions_zeros((r, c, i1, j1, i2, j2) in matrix_strategy()) {
        prop_assume!((i1 < i2 && j1 < j2) || (i1 >= i2 && j1 >= j2));
        let rows: Vec<Vec<u8>> = (1..=r)
            .map(|i| (1..=c).map(|j| u8::from((i <= i1 && j <= j1) || (i >= i2 && j >= j2))).collect())
            .collect();
        let refs: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = InteractionMatrix::from_rows(&refs);
        let cover = m.rectangle_cover().unwrap();
        let rects: Vec<Rect> = [cover.r1, cover.r2, cover.r3].into_iter().flatten().collect();
        for i in 1..=r {
            for j in 1..=c {
                let hits = rects.iter().filter(|q| q.contains(i, j)).count();
                prop_assert_eq!(hits, usize::from(!m.at(i, j)));
            }
        }
        if let Some(q) = cover.r1 {
            prop_assert!(q.top == 1 && q.right == c);
        }
        if let Some(q) = cover.r2 {
            prop_assert!(q.left == 1 && q.right == c);
        }
        if let Some(q) = cover.r3 {
            prop_assert!(q.bottom == r && q.left == 1);
        }
    }
}
