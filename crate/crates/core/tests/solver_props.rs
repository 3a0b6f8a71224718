use dissolution::generators::{generate_random, AlphaMode, GraphMode, RandomSpec};
use dissolution::oracle::{brute_force_biased, brute_force_dissolution};
use dissolution::solvers::{
    mirror_instance, mirror_solution, solve_biased_11, solve_clique, solve_equal_sizes, solve_exact,
};
use dissolution::{
    solve, verify_dissolution, verify_solution, ExactOptions, Graph, Instance, Strategy as Plan,
};
use proptest::prelude::*;

fn random(n: usize, s: u64, delta_s: u64, p: f64, alpha: AlphaMode, seed: u64) -> Instance {
    generate_random(&RandomSpec {
        graph: GraphMode::Gnp { n, p },
        s,
        delta_s,
        alpha,
        r_alpha: None,
        seed,
    })
    .unwrap()
}

fn arb_biased(max_n: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1u64..=3, 1u64..=3, 0.2f64..0.9, any::<u64>())
        .prop_map(|(n, s, d, p, seed)| random(n, s, d, p, AlphaMode::Uniform, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_oracle(inst in arb_biased(8)) {
        let brute = brute_force_biased(&inst).unwrap();
        for threads in [1, 0] {
            let opts = ExactOptions { threads, ..ExactOptions::default() };
            let out = solve_exact(&inst, &opts).unwrap();
            prop_assert_eq!(out.achieved_r_alpha, brute.achieved_r_alpha);
            prop_assert_eq!(out.feasible, brute.feasible);
            if let Some(w) = &out.witness {
                prop_assert_eq!(verify_solution(&inst, w), Ok(()));
            }
        }
    }

    #[test]
    fn plain_exact_matches_oracle(inst in arb_biased(8)) {
        let plain = inst.plain();
        let out = solve_exact(&plain, &ExactOptions::sequential()).unwrap();
        prop_assert_eq!(out.feasible, brute_force_dissolution(&plain).unwrap().feasible);
    }

    #[test]
    fn equal_sizes_matches_exact(n in 1usize..=10, s in 1u64..=4, p in 0.1f64..0.9, seed in any::<u64>()) {
        let inst = random(n, s, s, p, AlphaMode::None, seed);
        let fast = solve_equal_sizes(&inst).unwrap();
        prop_assert_eq!(fast.feasible, solve_exact(&inst, &ExactOptions::sequential()).unwrap().feasible);
        if let Some(w) = fast.witness {
            prop_assert!(w.base.used_edge_set().is_perfect_matching(n));
        }
    }

    #[test]
    fn biased11_matches_oracle(half in 1usize..=4, q in 0.0f64..1.0, p in 0.2f64..0.9, seed in any::<u64>()) {
        let inst = random(2 * half, 1, 1, p, AlphaMode::Bernoulli(q), seed);
        let fast = solve_biased_11(&inst).unwrap();
        prop_assert_eq!(fast.achieved_r_alpha, brute_force_biased(&inst).unwrap().achieved_r_alpha);
    }

    #[test]
    fn clique_matches_exact(n in 1usize..=8, s in 1u64..=3, d in 1u64..=3, seed in any::<u64>()) {
        let inst = generate_random(&RandomSpec {
            graph: GraphMode::Clique { n },
            s,
            delta_s: d,
            alpha: AlphaMode::Uniform,
            r_alpha: None,
            seed,
        })
        .unwrap();
        let greedy = solve_clique(&inst).unwrap();
        let exact = solve_exact(&inst, &ExactOptions::sequential()).unwrap();
        prop_assert_eq!(greedy.achieved_r_alpha, exact.achieved_r_alpha);
        prop_assert_eq!(greedy.feasible, exact.feasible);
    }

    #[test]
    fn mirror_preserves_feasibility(inst in arb_biased(10)) {
        let plain = inst.plain();
        let mirrored = mirror_instance(&plain);
        let a = brute_force_dissolution(&plain).unwrap();
        let b = brute_force_dissolution(&mirrored).unwrap();
        prop_assert_eq!(a.feasible, b.feasible);
        if let Some(w) = a.witness {
            let m = mirror_solution(plain.n(), &w.base);
            prop_assert_eq!(verify_dissolution(&mirrored, &m), Ok(()));
            prop_assert_eq!(mirror_solution(plain.n(), &m), w.base);
        }
    }

    #[test]
    fn auto_agrees_with_exact(inst in arb_biased(7)) {
        let opts = ExactOptions::sequential();
        let auto = solve(&inst, &Plan::Auto, &opts).unwrap();
        let exact = solve_exact(&inst, &opts).unwrap();
        prop_assert_eq!(auto.achieved_r_alpha, exact.achieved_r_alpha);
    }
}

#[test]
fn exact_is_deterministic_sequentially() {
    let inst = random(8, 2, 2, 0.6, AlphaMode::Uniform, 11);
    let a = solve_exact(&inst, &ExactOptions::sequential()).unwrap();
    let b = solve_exact(&inst, &ExactOptions::sequential()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn complete_graph_dispatches_to_clique() {
    let inst = Instance::new(Graph::complete(40), 1, 3).unwrap().with_alpha(vec![1; 40]).unwrap();
    let out = solve(&inst, &Plan::Auto, &ExactOptions::default()).unwrap();
    assert!(out.feasible);
    assert_eq!(verify_solution(&inst, out.witness.as_ref().unwrap()), Ok(()));
}
