use braidaug::algebra::LaurentPoly;
use braidaug::braid::{apply_braid_move, braid_move_sites, BraidWord};
use braidaug::cluster::{initial_seed, seeds_equal};
use braidaug::filling::{distinct_seeds, run_filling, Plan};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(1..n, n - 1..=7)))
        .prop_filter_map("every level used", |(n, letters)| BraidWord::new(n, letters).ok())
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    let term = prop::collection::vec(("[btp]", 1u32..=3, -2i32..=2), 0..3).prop_map(|fs| {
        let body: Vec<String> = fs.iter().map(|(v, i, e)| {
            let e = if v == "b" { e.abs() } else { *e };
            format!("{v}{i}^{e}")
        }).collect();
        if body.is_empty() { "1".to_string() } else { body.join(" ") }
    });
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        let text = if ts.is_empty() { "0".to_string() } else { ts.join(" + ") };
        text.parse().expect("generated polynomial parses")
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a + &a).is_zero());
        prop_assert_eq!(&a * &b, &b * &a);
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn mutation_is_an_involution(w in word()) {
        let s = initial_seed(&w);
        for v in s.quiver.vertices().iter().filter(|v| !v.frozen) {
            let twice = s.mutate(v.id).unwrap().mutate(v.id).unwrap();
            prop_assert_eq!(&twice.quiver, &s.quiver);
            prop_assert!(seeds_equal(&twice, &s));
        }
    }

    #[test]
    fn braid_moves_are_involutions(w in word()) {
        for p in braid_move_sites(&w) {
            let back = apply_braid_move(&apply_braid_move(&w, p).unwrap(), p).unwrap();
            prop_assert_eq!(back.letters(), w.letters());
        }
    }

    #[test]
    fn pinch_orders_give_unimodular_charts(
        (w, perm) in word().prop_flat_map(|w| {
            let order: Vec<usize> = (1..=w.len()).collect();
            (Just(w), Just(order).prop_shuffle())
        })
    ) {
        let r = run_filling(&w, &Plan::from_pinch_order(&perm)).unwrap();
        prop_assert_eq!(r.chart.determinant.map(i128::abs), Some(1));
        let s = initial_seed(&w);
        for v in s.quiver.vertices().iter().filter(|v| v.frozen) {
            prop_assert_eq!(r.final_seed.var(v.id).unwrap(), s.var(v.id).unwrap());
        }
    }

    #[test]
    fn census_groups_partition_the_plans(w in word().prop_filter("short", |w| w.len() <= 4)) {
        let plans: Vec<Plan> = braidaug::filling::all_pinch_orders(w.len()).iter().map(|o| Plan::from_pinch_order(o)).collect();
        let groups = distinct_seeds(&w, &plans).unwrap();
        let mut seen: Vec<usize> = groups.concat();
        seen.sort();
        prop_assert_eq!(seen, (0..plans.len()).collect::<Vec<_>>());
    }
}
