use fkso_core::instance::{gen_random_instance, gen_random_with_levels, load_instance, save_instance};
use fkso_core::metric::{candidate_radii, dist_rank, is_well_separated, nearest_set, service_distance};
use fkso_core::solution::{check_solution, Solution};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = fkso_core::Instance> {
    (any::<u64>(), 2usize..=8, 2usize..=6)
        .prop_flat_map(|(seed, n, f)| (Just(seed), Just(n), Just(f), 1..=f))
        .prop_flat_map(|(seed, n, f, k)| (Just(seed), Just(n), Just(f), Just(k), 1..=n, 1..=k.min(n).min(3)))
        .prop_map(|(seed, n, f, k, m, t)| gen_random_instance(seed, n, f, k, m, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn save_load_round_trip(inst in arb_instance()) {
        let bytes = save_instance(&inst);
        let back = load_instance(&bytes).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(save_instance(&back), bytes);
    }

    #[test]
    fn ranked_distance_grows_with_rank(inst in arb_instance(), v in 0usize..8) {
        let v = v % inst.n();
        let all: Vec<usize> = inst.facilities().collect();
        let mut prev = 0.0;
        for rank in 1..=all.len() {
            let d = dist_rank(&inst, v, &all, rank).unwrap();
            prop_assert!(d >= prev);
            prev = d;
            let near = nearest_set(&inst, v, &all, rank).unwrap();
            prop_assert_eq!(near.len(), rank);
            prop_assert!(near.iter().all(|&i| inst.cf(v, i) <= d));
        }
        prop_assert!(dist_rank(&inst, v, &all, all.len() + 1).is_err());
        prop_assert!(dist_rank(&inst, v, &all, 0).is_err());
    }

    #[test]
    fn more_facilities_never_hurt(inst in arb_instance(), v in 0usize..8, mask in any::<u16>()) {
        let v = v % inst.n();
        let subset: Vec<usize> = inst.facilities().filter(|&i| mask >> i & 1 == 1).collect();
        let all: Vec<usize> = inst.facilities().collect();
        for rank in 1..=subset.len() {
            prop_assert!(dist_rank(&inst, v, &all, rank).unwrap() <= dist_rank(&inst, v, &subset, rank).unwrap());
        }
        prop_assert!(service_distance(&inst, v, &all) <= service_distance(&inst, v, &subset));
    }

    #[test]
    fn separation_survives_shrinking(inst in arb_instance(), mask in any::<u8>(), r in 0.0f64..80.0, shrink in 0.0f64..1.0) {
        let set: Vec<usize> = inst.clients().filter(|&v| mask >> v & 1 == 1).collect();
        if is_well_separated(&inst, &set, r) {
            prop_assert!(is_well_separated(&inst, &set, r * shrink));
            let half: Vec<usize> = set.iter().copied().step_by(2).collect();
            prop_assert!(is_well_separated(&inst, &half, r));
        }
    }

    #[test]
    fn candidate_radii_are_sorted_client_facility_distances(inst in arb_instance()) {
        let radii = candidate_radii(&inst);
        prop_assert!(radii.values().windows(2).all(|w| w[0] < w[1]));
        for v in inst.clients() {
            for i in inst.facilities() {
                prop_assert!(radii.values().contains(&inst.cf(v, i)));
            }
        }
    }

    #[test]
    fn solution_radius_is_rechecked(inst in arb_instance(), open_mask in any::<u8>(), served_mask in any::<u8>()) {
        let open: Vec<usize> = inst.facilities().filter(|&i| open_mask >> i & 1 == 1).take(inst.k()).collect();
        let served: Vec<usize> = inst.clients().filter(|&v| served_mask >> v & 1 == 1).collect();
        let sol = Solution::new(&inst, open.clone(), served.clone(), 1.0);
        let checked = check_solution(&inst, &open, &served, None);
        match checked {
            Ok(achieved) => prop_assert_eq!(achieved, sol.achieved),
            Err(_) => prop_assert!(served.len() < inst.m() || !sol.achieved.is_finite()),
        }
    }
}

#[test]
fn uniform_generator_uses_one_level() {
    for seed in 0..20 {
        let inst = gen_random_with_levels(seed, 7, 5, 4, 3, &[3]).unwrap();
        assert_eq!(inst.uniform_ell(), Some(3));
        assert_eq!(inst.t(), 1);
    }
}
