use std::collections::BTreeSet;

use goldbach_lab::oracle::{brute_induced_cycles, OracleBudget};
use goldbach_lab::structure::{
    decompose_g3, decompose_g5, four_cycle_through, induced_cycle_census, induced_cycles_of_length,
    DEFAULT_CENSUS_BUDGET,
};
use goldbach_lab::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(kind: OddSetKind, n: u64) -> EvenGraph {
    build_graph(&GraphSpec::new(kind, n).unwrap()).unwrap()
}

#[test]
fn g35_is_the_intersection_of_g3_and_g5() {
    let g3 = graph(OddSetKind::PrimeMultipleMissing(3), 200);
    let g5 = graph(OddSetKind::PrimeMultipleMissing(5), 200);
    let g35 = graph(OddSetKind::PrimeIntersection(vec![3, 5]), 200);
    for n in 1..=200 {
        let meet = intersect_graphs(&g3.truncate(n).unwrap(), &g5.truncate(n).unwrap()).unwrap();
        assert!(meet.same_edges(&g35.truncate(n).unwrap()), "n={n}");
    }
}

#[test]
fn near_goldbach_is_an_intersection_of_prime_missing_graphs() {
    let near = graph(OddSetKind::NearGoldbach, 200);
    for n in 13..=200u64 {
        let ps: Vec<u64> = sieve_odd_primes(2 * n).into_iter().filter(|p| p * p < 2 * n).collect();
        let meet = graph(OddSetKind::PrimeIntersection(ps.clone()), n);
        assert!(near.truncate(n).unwrap().same_edges(&meet), "n={n} primes={ps:?}");
    }
    for n in 1..=12 {
        assert!(near.truncate(n).unwrap().same_edges(&graph(OddSetKind::PrimeMultipleMissing(3), n)));
    }
}

#[test]
fn induced_subgraphs_on_random_pairs() {
    let kinds = [
        OddSetKind::PrimeMultipleMissing(3),
        OddSetKind::PrimeMultipleMissing(5),
        OddSetKind::PrimeMultipleMissing(7),
        OddSetKind::PrimeIntersection(vec![3, 5]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..240 {
        let kind = &kinds[rng.gen_range(0..kinds.len())];
        let n = rng.gen_range(2..=120);
        let m = rng.gen_range(1..n);
        assert!(verify_induced(kind, m, n).unwrap(), "{kind} m={m} n={n}");
    }
}

#[test]
fn every_vertex_of_g3_lies_on_a_four_cycle() {
    for n in 6..=80 {
        let g = graph(OddSetKind::PrimeMultipleMissing(3), n);
        for &v in g.vertices() {
            let [a, b, c, d] = four_cycle_through(&g, v).unwrap_or_else(|| panic!("n={n} v={v}"));
            assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a));
        }
    }
}

#[test]
fn path_counts_follow_eta() {
    assert_eq!(decompose_g3(30).unwrap().as_prime().paths.len() as u64, eta(3).unwrap());
    assert_eq!(decompose_g5(30).unwrap().paths().len() as u64, eta(5).unwrap());
}

#[test]
fn oracle_cycles_match_the_census() {
    let budget = OracleBudget::default();
    for n in 4..=16 {
        let g = graph(OddSetKind::PrimeMultipleMissing(3), n);
        for len in [4, 6, 8] {
            let brute = brute_induced_cycles(&g, len, budget).unwrap();
            let fast = induced_cycles_of_length(&g, len, DEFAULT_CENSUS_BUDGET).unwrap();
            assert_eq!(brute, fast, "n={n} len={len}");
        }
    }
    for n in (18..=40).step_by(11) {
        let g = graph(OddSetKind::PrimeMultipleMissing(3), n);
        let lengths: BTreeSet<usize> = [4, 6, 8, 10]
            .into_iter()
            .filter(|&len| !brute_induced_cycles(&g, len, budget).unwrap().is_empty())
            .collect();
        assert_eq!(lengths, induced_cycle_census(&g, 10).unwrap(), "n={n}");
    }
}

#[test]
fn diameter_does_not_depend_on_worker_count() {
    let g = graph(OddSetKind::NearGoldbach, 700);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| eccentricities(&g));
    let b = four.install(|| eccentricities(&g));
    assert_eq!(a, b);
    assert_eq!(a.iter().copied().max().unwrap(), diameter_reference(&g));
}

fn any_kind() -> impl Strategy<Value = OddSetKind> {
    prop_oneof![
        prop::sample::select(vec![3u64, 5, 7, 11, 13]).prop_map(OddSetKind::PrimeMultipleMissing),
        Just(OddSetKind::PrimeIntersection(vec![3, 5])),
        Just(OddSetKind::PrimeIntersection(vec![3, 5, 7])),
        Just(OddSetKind::NearGoldbach),
        Just(OddSetKind::Goldbach),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diameter_matches_the_reference(kind in any_kind(), n in 1u64..260) {
        let g = graph(kind, n);
        prop_assert_eq!(diameter(&g), diameter_reference(&g));
    }

    #[test]
    fn edges_satisfy_the_odd_set(kind in any_kind(), n in 1u64..200) {
        let g = graph(kind, n);
        let odd = g.spec().odd_set();
        let degree_sum: usize = g.vertices().iter().map(|&v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for (a, b) in g.edges() {
            prop_assert!(odd.contains((a + b) / 2).unwrap());
            prop_assert!(odd.contains(a.abs_diff(b) / 2).unwrap());
            prop_assert!((a % 4 == 0) != (b % 4 == 0));
        }
    }

    #[test]
    fn distance_is_symmetric(kind in any_kind(), n in 2u64..120, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = graph(kind, n);
        let u = g.vertices()[i.index(g.vertex_count())];
        let v = g.vertices()[j.index(g.vertex_count())];
        prop_assert_eq!(distance(&g, u, v).unwrap(), distance(&g, v, u).unwrap());
    }

    #[test]
    fn paths_are_hamiltonian(family in prop::sample::select(Family::ALL.to_vec()), n in 1u64..400) {
        let g = build_graph(&family.spec(n).unwrap()).unwrap();
        prop_assert!(verify_certificate(&g, ham_path(family, n).unwrap()).is_verified());
    }
}
