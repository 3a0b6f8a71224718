use std::collections::BTreeSet;

use dissolution::format::{parse_instance, InstanceFile, SolutionFile};
use dissolution::generators::{
    biased22_to_two_factor, cycles_of_two_factor, generate_biased_hardness,
    generate_dissolution_hardness, generate_random, two_factor_to_biased22, AlphaMode, GraphMode,
    RandomSpec, XCInstance,
};
use dissolution::oracle::brute_force_dissolution;
use dissolution::{verify_biased_dissolution, verify_solution, Graph};
use proptest::prelude::*;

/// A graph on `4 * lengths.sum()` vertices containing disjoint cycles of the
/// given lengths (times four) under a shuffled labelling, plus noise edges.
fn planted_factor(
    lengths: &[usize],
    perm: &[usize],
    noise: &[(usize, usize)],
) -> (Graph, BTreeSet<(usize, usize)>) {
    let n = perm.len();
    let mut factor = BTreeSet::new();
    let mut offset = 0;
    for &k in lengths {
        let len = 4 * k;
        for i in 0..len {
            let (u, v) = (perm[offset + i], perm[offset + (i + 1) % len]);
            factor.insert((u.min(v), u.max(v)));
        }
        offset += len;
    }
    let mut edges: BTreeSet<_> = factor.clone();
    for &(u, v) in noise {
        if u % n != v % n {
            let (u, v) = (u % n, v % n);
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    (Graph::new(n, &edges).unwrap(), factor)
}

fn arb_planted() -> impl Strategy<Value = (Graph, BTreeSet<(usize, usize)>)> {
    prop::collection::vec(1usize..=3, 1..=3).prop_flat_map(|lengths| {
        let n = 4 * lengths.iter().sum::<usize>();
        (
            Just(lengths),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec((0..n, 0..n), 0..8),
        )
            .prop_map(|(l, p, noise)| planted_factor(&l, &p, &noise))
    })
}

proptest! {
    #[test]
    fn two_factor_round_trip((g, factor) in arb_planted()) {
        let (inst, sol) = two_factor_to_biased22(&g, &factor).unwrap();
        prop_assert_eq!(verify_biased_dissolution(&inst, &sol), Ok(()));
        prop_assert_eq!(sol.winning.len(), g.vertex_count() / 4);
        let back = biased22_to_two_factor(&inst, &sol).unwrap();
        prop_assert_eq!(&back, &factor);
        let cycles = cycles_of_two_factor(g.vertex_count(), &back).unwrap();
        prop_assert!(cycles.iter().all(|c| c.len() % 4 == 0));
    }

    #[test]
    fn random_generator_is_seeded(n in 1usize..20, p in 0.0f64..1.0, seed in any::<u64>()) {
        let spec = RandomSpec {
            graph: GraphMode::Gnp { n, p },
            s: 2,
            delta_s: 1,
            alpha: AlphaMode::Uniform,
            r_alpha: Some(0),
            seed,
        };
        let a = generate_random(&spec).unwrap();
        prop_assert_eq!(&a, &generate_random(&spec).unwrap());
        prop_assert!(a.alpha().unwrap().iter().all(|&x| x <= 2));
    }

    #[test]
    fn instance_json_round_trip(n in 1usize..10, p in 0.0f64..1.0, seed in any::<u64>()) {
        let inst = generate_random(&RandomSpec {
            graph: GraphMode::Gnp { n, p },
            s: 3,
            delta_s: 2,
            alpha: AlphaMode::Bernoulli(0.5),
            r_alpha: Some(1),
            seed,
        })
        .unwrap();
        let json = serde_json::to_string(&InstanceFile::from_instance(&inst)).unwrap();
        prop_assert_eq!(parse_instance(&json).unwrap(), inst);
    }

    #[test]
    fn solution_json_round_trip(n in 2usize..8, p in 0.3f64..1.0, seed in any::<u64>()) {
        let inst = generate_random(&RandomSpec {
            graph: GraphMode::Gnp { n, p },
            s: 1,
            delta_s: 1,
            alpha: AlphaMode::None,
            r_alpha: None,
            seed,
        })
        .unwrap();
        if let Some(w) = brute_force_dissolution(&inst).unwrap().witness {
            let file = SolutionFile::from_solution(&w);
            let json = serde_json::to_string(&file).unwrap();
            let parsed: SolutionFile = serde_json::from_str(&json).unwrap();
            let back = parsed.to_solution();
            prop_assert_eq!(verify_solution(&inst, &back), Ok(()));
            prop_assert_eq!(back, w);
        }
    }
}

#[test]
fn dissolution_hardness_size() {
    let xc = XCInstance::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 2, 3]]).unwrap();
    for (s, delta_s) in [(2, 1), (4, 2)] {
        let h = generate_dissolution_hardness(&xc, s, delta_s).unwrap();
        let (q, r) = (h.q.x + h.q.y, h.r.x + h.r.y);
        assert_eq!(h.instance.n() as u64, 6 * q + 3 * r);
        assert!(h.instance.derived_counts().split.is_some());
    }
    assert!(generate_dissolution_hardness(&xc, 1, 1).is_err());
}

#[test]
fn biased_hardness_yes_instance_has_cover() {
    let xc = XCInstance::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
    let h = generate_biased_hardness(&xc).unwrap();
    assert_eq!(h.instance.s(), 3);
    assert_eq!(h.instance.delta_s(), 3);
    assert!(xc.exact_cover().is_some());
}
