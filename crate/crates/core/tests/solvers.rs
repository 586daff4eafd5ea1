use fkso_core::fks::solve_fks;
use fkso_core::fkso::{solve_fkso, verify_good_partition, Strategy};
use fkso_core::instance::{gen_limit_instance, gen_random_instance, gen_random_with_levels};
use fkso_core::oracle::{exact_opt, DEFAULT_MAX_SUBSETS};
use fkso_core::ufkso::solve_ufkso;
use fkso_core::SolveError;

const TOL: f64 = 1e-9;

fn opt(inst: &fkso_core::Instance) -> f64 {
    exact_opt(inst, DEFAULT_MAX_SUBSETS, 2).unwrap().opt_radius
}

#[test]
fn greedy_without_outliers_is_three_approximate() {
    for seed in 0..15 {
        let inst = gen_random_instance(seed, 7, 6, 4, 7, 1 + (seed % 3) as usize).unwrap();
        let sol = solve_fks(&inst).unwrap();
        sol.verify(&inst).unwrap();
        assert_eq!(sol.served.len(), inst.n());
        assert!(sol.radius_guess <= opt(&inst) + TOL);
        assert!(sol.achieved <= 3.0 * opt(&inst) + TOL);
    }
}

#[test]
fn uniform_solver_is_three_approximate() {
    for seed in 0..10 {
        let ell = 1 + (seed % 3) as usize;
        let inst = gen_random_with_levels(seed, 7, 6, 4, 4, &[ell]).unwrap();
        let (sol, stats) = solve_ufkso(&inst).unwrap();
        sol.verify(&inst).unwrap();
        assert!(sol.radius_guess <= opt(&inst) + TOL);
        assert!(sol.achieved <= 3.0 * sol.radius_guess + TOL);
        assert!(stats.lp_solves >= stats.radii_tried);
    }
}

#[test]
fn uniform_solver_rejects_mixed_tolerances() {
    let inst = gen_limit_instance(2, 2, 1.0).unwrap();
    assert_eq!(solve_ufkso(&inst).unwrap_err(), SolveError::NotUniform { t: 2 });
}

#[test]
fn general_solver_meets_its_factor() {
    for seed in 0..10 {
        let t = 1 + (seed % 3) as usize;
        let inst = gen_random_instance(seed, 7, 5, 4, 4, t).unwrap();
        let res = solve_fkso(&inst, Strategy::Best).unwrap();
        res.solution.verify(&inst).unwrap();
        assert!(res.solution.radius_guess <= opt(&inst) + TOL);
        assert!(res.solution.achieved <= Strategy::Best.factor(t) * opt(&inst) + TOL);
        for gp in res.partitions() {
            verify_good_partition(&inst, gp, gp.rho).unwrap();
        }
    }
}

#[test]
fn limit_instance_solves_at_unit_radius() {
    for t in 2..=4 {
        let inst = gen_limit_instance(t, t, 1.0).unwrap();
        let res = solve_fkso(&inst, Strategy::Best).unwrap();
        assert_eq!(res.solution.radius_guess, 1.0);
        assert!(res.solution.achieved <= Strategy::Best.factor(t));
    }
}
