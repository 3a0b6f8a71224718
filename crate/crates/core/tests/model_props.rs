use dissolution::generators::{generate_random, AlphaMode, GraphMode, RandomSpec};
use dissolution::solvers::solve_exact;
use dissolution::{
    verify_biased_dissolution, verify_dissolution, BiasedDissolution, Dissolution, ExactOptions, Instance,
};
use proptest::prelude::*;

fn arb_instance(max_n: usize, max_size: u64) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1..=max_size, 1..=max_size, 0.2f64..0.9, any::<u64>()).prop_map(|(n, s, delta_s, p, seed)| {
        generate_random(&RandomSpec {
            graph: GraphMode::Gnp { n, p },
            s,
            delta_s,
            alpha: AlphaMode::Uniform,
            r_alpha: None,
            seed,
        })
        .unwrap()
    })
}

fn witness(inst: &Instance) -> Option<BiasedDissolution> {
    solve_exact(inst, &ExactOptions::sequential()).unwrap().witness
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn accepted_dissolutions_conserve_voters(inst in arb_instance(8, 3)) {
        let Some(w) = witness(&inst) else { return Ok(()) };
        prop_assert_eq!(verify_biased_dissolution(&inst, &w), Ok(()));
        let d = w.base.dissolved.len() as u64;
        let r = inst.n() as u64 - d;
        prop_assert_eq!(w.base.total_moved(), d * inst.s());
        prop_assert_eq!(w.base.total_moved(), r * inst.delta_s());
        let supply: u64 = w.base.dissolved.iter().map(|&v| inst.alpha_of(v)).sum();
        prop_assert_eq!(w.total_a_moved(), supply);
    }

    #[test]
    fn one_one_dissolutions_use_a_perfect_matching(inst in arb_instance(8, 1)) {
        let plain = inst.plain();
        let Some(w) = witness(&plain) else { return Ok(()) };
        prop_assert!(w.base.used_edge_set().is_perfect_matching(plain.n()));
    }

    #[test]
    fn verify_is_pure(
        inst in arb_instance(6, 3),
        dissolved in prop::collection::btree_set(0usize..6, 0..4),
        moves in prop::collection::vec((0usize..6, 0usize..6, 0u64..4), 0..8),
    ) {
        let sol = Dissolution::new(dissolved, moves.into_iter().map(|(u, v, z)| ((u, v), z)));
        let first = verify_dissolution(&inst, &sol);
        prop_assert_eq!(&first, &verify_dissolution(&inst, &sol));
        let lifted = BiasedDissolution::from_plain(&inst, sol.clone());
        prop_assert_eq!(verify_biased_dissolution(&inst, &lifted), verify_biased_dissolution(&inst, &lifted));
        if first.is_err() {
            prop_assert!(verify_biased_dissolution(&inst, &lifted).is_err());
        }
    }
}
