//! Values from a 40-digit evaluation of the beta quantile.

#![allow(clippy::excessive_precision)]

use spherical_collapse::{CollapseSolution, Velocity};

const CASES: [(f64, f64, f64, f64, f64); 7] = [
    // (gamma, t, tau, r, rdot)
    (
        -7.0,
        0.6,
        0.746_834_200_222_186_8,
        0.755_499_839_952_889_4,
        -1.207_982_470_066_549_5,
    ),
    (
        -4.0,
        0.5,
        0.914_681_356_501_962_5,
        0.862_524_231_457_646_6,
        -0.610_150_605_670_409_2,
    ),
    (
        -1.5,
        0.3,
        1.178_097_245_096_172_5,
        0.954_479_569_330_353_7,
        -0.307_037_175_025_668_9,
    ),
    (
        -1.0,
        0.9,
        1.253_314_137_315_500_3,
        0.560_489_815_064_916_9,
        -1.076_052_236_459_594_1,
    ),
    (
        -0.5,
        1.2,
        1.333_333_333_333_333_3,
        0.219_138_737_291_282_1,
        -1.458_598_551_313_664_8,
    ),
    (
        2.0,
        1.0,
        1.717_315_342_254_411,
        0.571_185_491_670_561_9,
        -0.736_500_326_492_287,
    ),
    (
        10.0,
        2.0,
        2.628_431_609_135_591_7,
        0.267_964_132_785_477_7,
        -0.426_401_323_659_617_6,
    ),
];

#[test]
fn explicit_solution_matches_high_precision_values() {
    for (g, t, tau, r, rdot) in CASES {
        let sol = CollapseSolution::new(g).unwrap();
        assert!((sol.tau() - tau).abs() <= 4e-16 * tau, "tau at gamma {g}");
        let (r_got, v_got) = sol.evaluate_r_rdot(t).unwrap();
        assert!((r_got - r).abs() <= 1e-14, "r at gamma {g}: {r_got} vs {r}");
        match v_got {
            Velocity::Finite(v) => assert!(
                (v - rdot).abs() <= 1e-13,
                "rdot at gamma {g}: {v} vs {rdot}"
            ),
            other => panic!("rdot at gamma {g}: {other}"),
        }
        assert!(
            (sol.evaluate_t(r).unwrap() - t).abs() <= 1e-13,
            "t(r) at gamma {g}"
        );
    }
}

#[test]
fn collapse_point_velocity_marker() {
    for g in [-7.0, -2.0, -1.0] {
        let sol = CollapseSolution::new(g).unwrap();
        assert_eq!(sol.evaluate_rdot(sol.tau()).unwrap(), Velocity::NegInfinity);
    }
    let sol = CollapseSolution::new(1.0).unwrap();
    let v = sol.evaluate_rdot(sol.tau()).unwrap().as_f64();
    assert!((v + 1.0).abs() < 1e-15);
}
