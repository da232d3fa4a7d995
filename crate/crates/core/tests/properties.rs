use approx::assert_relative_eq;
use proptest::prelude::*;
use spherical_collapse::specfun::{inv_reg_inc_beta, reg_inc_beta};
use spherical_collapse::symmetry::tau_symmetry;
use spherical_collapse::{collapse_time, energy_residual_relative, CollapseSolution, GammaParam};

fn gamma_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![-20.0..-1.001f64, -0.999..20.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn radius_stays_in_unit_interval(g in gamma_strategy(), frac in 0.0..=1.0f64) {
        let sol = CollapseSolution::new(g).unwrap();
        let t = sol.tau() * frac;
        let r = sol.evaluate_r(t).unwrap();
        prop_assert!((0.0..=1.0).contains(&r));
        prop_assert_eq!(r, sol.evaluate_r(-t).unwrap());
    }

    #[test]
    fn time_of_radius_inverts(g in gamma_strategy(), frac in 0.0..=1.0f64) {
        let sol = CollapseSolution::new(g).unwrap();
        let t = sol.tau() * frac;
        let r = sol.evaluate_r(t).unwrap();
        prop_assert!((sol.evaluate_t(r).unwrap() - t).abs() <= 1e-8);
    }

    #[test]
    fn radius_decreases(g in gamma_strategy(), a in 0.0..1.0f64, b in 0.0..1.0f64) {
        prop_assume!((a - b).abs() > 1e-6);
        let sol = CollapseSolution::new(g).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(sol.evaluate_r(sol.tau() * hi).unwrap() < sol.evaluate_r(sol.tau() * lo).unwrap());
    }

    #[test]
    fn motion_conserves_energy(g in gamma_strategy(), frac in 0.0..1.0f64) {
        let sol = CollapseSolution::new(g).unwrap();
        let t = sol.tau() * frac;
        let (r, v) = sol.evaluate_r_rdot(t).unwrap();
        prop_assume!(r >= 1e-6);
        let res = energy_residual_relative(sol.param(), r, v.as_f64()).unwrap();
        prop_assert!(res.abs() <= 1e-9, "residual {}", res);
    }

    #[test]
    fn collapse_times_pair_up(g in gamma_strategy()) {
        let img = tau_symmetry(g).unwrap();
        let tau = collapse_time(&GammaParam::new(g).unwrap()).unwrap();
        let tau_prime = collapse_time(&GammaParam::new(img.gamma_prime).unwrap()).unwrap();
        assert_relative_eq!(tau * tau_prime, std::f64::consts::FRAC_PI_2, max_relative = 1e-12);
        assert_relative_eq!(img.tau_prime, tau_prime, max_relative = 1e-12);
    }

    #[test]
    fn beta_quantile_inverts_cdf(p in 1e-12..1.0f64, a in 0.05..50.0f64) {
        let x = inv_reg_inc_beta(p, a, 0.5).unwrap();
        assert_relative_eq!(reg_inc_beta(x, a, 0.5).unwrap(), p, max_relative = 1e-9);
    }
}
