//! Reference checks for the closed-form evaluators against values computed
//! independently at 256-bit precision. Transcendental results must match to
//! a relative error of 1e-12; integer-valued results must match exactly.

// The frozen constants keep every digit the reference computation emitted.
#![allow(clippy::excessive_precision)]

use gt_core::bounds::{
    adaptive_yes_lower, adaptive_yes_lower_closed, adaptive_yes_upper, binary_entropy,
    cff_exists, cff_pd_exists, cff_pd_size_upper, cff_size_upper, entropy_upper_bound,
    min_yes_exact, nonadaptive_yes_lower, nonadaptive_yes_upper, nonadaptive_yes_upper_with_y,
    sep_size_upper, twostage_yes_upper, twostage_yes_upper_pd,
};
use gt_core::combin::ceil_log2_binom;
use gt_core::designs::{default_z, sampler_failure_bound};
use gt_core::gfcodes::{gv_dimension, qary_entropy};
use gt_core::Error;

const REL_TOL: f64 = 1e-12;

fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn ev_adaptive_lower(n: u64, d: u64, t: u64, y: u64) -> f64 {
    adaptive_yes_lower(n, d, t, y)
}

fn ev_adaptive_lower_closed(n: u64, d: u64, t: u64, _y: u64) -> f64 {
    adaptive_yes_lower_closed(n, d, t)
}

fn ev_adaptive_upper(n: u64, d: u64, t: u64, y: u64) -> f64 {
    adaptive_yes_upper(n, d, t, y)
}

fn ev_cff_pd_size_upper(t: u64, s: u64, d: u64, p: u64) -> f64 {
    cff_pd_size_upper(t, s, d, p)
}

fn ev_cff_size_upper(t: u64, s: u64, d: u64) -> f64 {
    cff_size_upper(t, s, d)
}

fn ev_sep_size_upper(t: u64, s: u64, d: u64) -> f64 {
    sep_size_upper(t, s, d)
}

fn ev_nonadaptive_lower(n: u64, d: u64, t: u64, y: u64) -> f64 {
    nonadaptive_yes_lower(n, d, t, y)
}

fn ev_cff_pd_exists(t: u64, s: u64, d: u64, p: u64) -> f64 {
    cff_pd_exists(t, s, d, p)
}

fn ev_nonadaptive_upper(n: u64, d: u64, t: u64, y: u64) -> f64 {
    nonadaptive_yes_upper(n, d, t, y)
}

fn ev_nonadaptive_upper_with_y(n: u64, d: u64, t: u64, y: u64) -> f64 {
    nonadaptive_yes_upper_with_y(n, d, t, y)
}

fn ev_twostage_upper(n: u64, d: u64, t: u64, p: u64, y: u64) -> f64 {
    twostage_yes_upper(n, d, t, p, y)
}

fn ev_twostage_upper_pd(n: u64, d: u64, t: u64, y: u64) -> f64 {
    twostage_yes_upper_pd(n, d, t, y)
}

#[test]
fn evaluators_match_the_frozen_high_precision_table() {
    let table: &[(&dyn Fn() -> f64, &str, f64)] = &[
        (&|| binary_entropy(0.1), "binary_entropy(0.1)", 0.46899559358928122),
        (&|| binary_entropy(0.25), "binary_entropy(0.25)", 0.81127812445913286),
        (&|| binary_entropy(0.5), "binary_entropy(0.5)", 1.0000000000000000),
        (&|| binary_entropy(0.75), "binary_entropy(0.75)", 0.81127812445913286),
        (&|| binary_entropy(0.9), "binary_entropy(0.9)", 0.46899559358928122),
        (&|| binary_entropy(1.0 / 3.0), "binary_entropy(1.0/3.0)", 0.91829583405448951),
        (&|| entropy_upper_bound(1, 2), "entropy_upper_bound(1, 2)", 1.2213475204444817),
        (&|| entropy_upper_bound(1, 4), "entropy_upper_bound(1, 4)", 0.86067376022224085),
        (&|| entropy_upper_bound(3, 8), "entropy_upper_bound(3, 8)", 1.0716497025629277),
        (&|| entropy_upper_bound(5, 16), "entropy_upper_bound(5, 16)", 0.97523967062550033),
        (&|| entropy_upper_bound(7, 64), "entropy_upper_bound(7, 64)", 0.50699032549717992),
        (&|| entropy_upper_bound(31, 64), "entropy_upper_bound(31, 64)", 1.2053665725869490),
        (&|| qary_entropy(2, 0.5), "qary_entropy(2, 0.5)", 1.0000000000000000),
        (&|| qary_entropy(4, 0.5), "qary_entropy(4, 0.5)", 0.89624062518028905),
        (&|| qary_entropy(8, 0.25), "qary_entropy(8, 0.25)", 0.50437228499117796),
        (&|| qary_entropy(16, 0.1), "qary_entropy(16, 0.1)", 0.21492116328753327),
        (&|| qary_entropy(3, 0.5), "qary_entropy(3, 0.5)", 0.94639463035718616),
        (&|| qary_entropy(7, 2.0 / 3.0), "qary_entropy(7, 2.0/3.0)", 0.94095839008929936),
        (&|| ev_adaptive_lower(16, 1, 16, 8), "ev_adaptive_lower(16, 1, 16, 8)", 1.6375355634014350),
        (&|| ev_adaptive_lower(16, 1, 4, 3), "ev_adaptive_lower(16, 1, 4, 3)", 2.0000000000000000),
        (&|| ev_adaptive_lower(1024, 1, 64, 20), "ev_adaptive_lower(1024, 1, 64, 20)", 3.2043405268734443),
        (&|| ev_adaptive_lower(1024, 2, 128, 30), "ev_adaptive_lower(1024, 2, 128, 30)", 5.0907792776906012),
        (&|| ev_adaptive_lower(255, 5, 60, 40), "ev_adaptive_lower(255, 5, 60, 40)", 14.181063354928739),
        (&|| ev_adaptive_lower(100, 3, 50, 10), "ev_adaptive_lower(100, 3, 50, 10)", 4.0313945167398622),
        (&|| ev_adaptive_lower_closed(16, 1, 16, 8), "ev_adaptive_lower_closed(16, 1, 16, 8)", 1.0000000000000000),
        (&|| ev_adaptive_lower_closed(1024, 2, 128, 30), "ev_adaptive_lower_closed(1024, 2, 128, 30)", 2.5109522284611610),
        (&|| ev_adaptive_upper(8, 1, 6, 3), "ev_adaptive_upper(8, 1, 6, 3)", 4.0000000000000000),
        (&|| ev_adaptive_upper(64, 1, 30, 6), "ev_adaptive_upper(64, 1, 30, 6)", 2.9141864059810090),
        (&|| ev_adaptive_upper(1024, 2, 100, 20), "ev_adaptive_upper(1024, 2, 100, 20)", 8.9200676838206069),
        (&|| ev_adaptive_upper(1024, 1, 64, 10), "ev_adaptive_upper(1024, 1, 64, 10)", 4.0659800924006670),
        (&|| ev_adaptive_upper(500, 3, 120, 30), "ev_adaptive_upper(500, 3, 120, 30)", 13.831225816842219),
        (&|| ev_cff_pd_size_upper(9, 5, 2, 3), "ev_cff_pd_size_upper(9, 5, 2, 3)", 90.509667991878083),
        (&|| ev_cff_pd_size_upper(16, 5, 2, 3), "ev_cff_pd_size_upper(16, 5, 2, 3)", 892.62930760871504),
        (&|| ev_cff_pd_size_upper(8, 4, 2, 1), "ev_cff_pd_size_upper(8, 4, 2, 1)", 119.22489758289040),
        (&|| ev_cff_pd_size_upper(12, 5, 4, 1), "ev_cff_pd_size_upper(12, 5, 4, 1)", 41.143258329810251),
        (&|| ev_cff_pd_size_upper(20, 6, 5, 2), "ev_cff_pd_size_upper(20, 6, 5, 2)", 3147.4144865243217),
        (&|| ev_cff_pd_size_upper(7, 4, 1, 3), "ev_cff_pd_size_upper(7, 4, 1, 3)", 384.00000000000000),
        (&|| ev_cff_pd_size_upper(30, 8, 3, 4), "ev_cff_pd_size_upper(30, 8, 3, 4)", 2931.0276545160742),
        (&|| ev_cff_size_upper(8, 4, 2), "ev_cff_size_upper(8, 4, 2)", 119.22489758289040),
        (&|| ev_cff_size_upper(24, 6, 3), "ev_cff_size_upper(24, 6, 3)", 67790.187115758379),
        (&|| ev_cff_size_upper(16, 4, 5), "ev_cff_size_upper(16, 4, 5)", 97.639863996066583),
        (&|| ev_cff_size_upper(40, 9, 6), "ev_cff_size_upper(40, 9, 6)", 147.97503085114908),
        (&|| ev_sep_size_upper(8, 2, 1), "ev_sep_size_upper(8, 2, 1)", 118.22489758289040),
        (&|| ev_sep_size_upper(16, 5, 2), "ev_sep_size_upper(16, 5, 2)", 316.59211824798755),
        (&|| ev_sep_size_upper(24, 6, 3), "ev_sep_size_upper(24, 6, 3)", 10284.794904672086),
        (&|| ev_sep_size_upper(30, 7, 5), "ev_sep_size_upper(30, 7, 5)", 4887.8248490888381),
        (&|| ev_sep_size_upper(12, 5, 7), "ev_sep_size_upper(12, 5, 7)", 81.286516659620503),
        (&|| ev_nonadaptive_lower(1024, 1, 64, 20), "ev_nonadaptive_lower(1024, 1, 64, 20)", 1.4251932990503586),
        (&|| ev_nonadaptive_lower(1024, 1, 64, 40), "ev_nonadaptive_lower(1024, 1, 64, 40)", 5.0007040971964042),
        (&|| ev_nonadaptive_lower(1025, 2, 64, 40), "ev_nonadaptive_lower(1025, 2, 64, 40)", 10.000000000000000),
        (&|| ev_nonadaptive_lower(1025, 2, 64, 20), "ev_nonadaptive_lower(1025, 2, 64, 20)", 3.2299566798929890),
        (&|| ev_nonadaptive_lower(1000, 4, 64, 40), "ev_nonadaptive_lower(1000, 4, 64, 40)", 4.0000000000000000),
        (&|| ev_nonadaptive_lower(1000, 4, 64, 20), "ev_nonadaptive_lower(1000, 4, 64, 20)", 4.0000000000000000),
        (&|| ev_nonadaptive_lower(500, 7, 80, 50), "ev_nonadaptive_lower(500, 7, 80, 50)", 7.1506326257749007),
        (&|| ev_nonadaptive_lower(500, 7, 80, 30), "ev_nonadaptive_lower(500, 7, 80, 30)", 7.0000000000000000),
        (&|| ev_cff_pd_exists(16, 4, 1, 1), "ev_cff_pd_exists(16, 4, 1, 1)", 26.379540331202050),
        (&|| ev_cff_pd_exists(6, 4, 1, 1), "ev_cff_pd_exists(6, 4, 1, 1)", 0.89252064059371932),
        (&|| ev_cff_pd_exists(12, 6, 1, 1), "ev_cff_pd_exists(12, 6, 1, 1)", 35.853512562704519),
        (&|| ev_cff_pd_exists(40, 10, 2, 3), "ev_cff_pd_exists(40, 10, 2, 3)", 831.47080387781291),
        (&|| ev_cff_pd_exists(12, 8, 2, 2), "ev_cff_pd_exists(12, 8, 2, 2)", 2.1227837921616749),
        (&|| ev_cff_pd_exists(64, 16, 3, 3), "ev_cff_pd_exists(64, 16, 3, 3)", 489.36712688221955),
        (&|| ev_nonadaptive_upper(32, 1, 10, 8), "ev_nonadaptive_upper(32, 1, 10, 8)", 14.328085122666890),
        (&|| ev_nonadaptive_upper(256, 1, 4096, 100), "ev_nonadaptive_upper(256, 1, 4096, 100)", 1.9573023663719745),
        (&|| ev_nonadaptive_upper(100, 2, 50, 30), "ev_nonadaptive_upper(100, 2, 50, 30)", 47.064847462875431),
        (&|| ev_nonadaptive_upper(1024, 2, 4096, 200), "ev_nonadaptive_upper(1024, 2, 4096, 200)", 7.8025777216335516),
        (&|| ev_nonadaptive_upper(49, 2, 42, 30), "ev_nonadaptive_upper(49, 2, 42, 30)", 40.889969388918332),
        (&|| ev_nonadaptive_upper(49, 2, 84, 20), "ev_nonadaptive_upper(49, 2, 84, 20)", 11.075974554793910),
        (&|| ev_nonadaptive_upper_with_y(256, 1, 4096, 100), "ev_nonadaptive_upper_with_y(256, 1, 4096, 100)", 2.9899348356132002),
        (&|| ev_nonadaptive_upper_with_y(1024, 2, 4096, 200), "ev_nonadaptive_upper_with_y(1024, 2, 4096, 200)", 11.588821839964456),
        (&|| ev_twostage_upper(16, 1, 20, 1, 15), "ev_twostage_upper(16, 1, 20, 1, 15)", 13.328085122666890),
        (&|| ev_twostage_upper(16, 2, 100, 2, 20), "ev_twostage_upper(16, 2, 100, 2, 20)", 6.0098014602059486),
        (&|| ev_twostage_upper(49, 2, 44, 1, 40), "ev_twostage_upper(49, 2, 44, 1, 40)", 42.889969388918332),
        (&|| ev_twostage_upper(49, 2, 60, 1, 20), "ev_twostage_upper(49, 2, 60, 1, 20)", 15.132218036062504),
        (&|| ev_twostage_upper(100, 3, 200, 2, 50), "ev_twostage_upper(100, 3, 200, 2, 50)", 14.803112907026432),
        (&|| ev_twostage_upper(64, 2, 80, 2, 60), "ev_twostage_upper(64, 2, 80, 2, 60)", 29.656170245333780),
        (&|| ev_twostage_upper_pd(16, 2, 100, 20), "ev_twostage_upper_pd(16, 2, 100, 20)", 6.0098014602059486),
        (&|| ev_twostage_upper_pd(64, 2, 80, 60), "ev_twostage_upper_pd(64, 2, 80, 60)", 29.656170245333780),
        (&|| ev_twostage_upper_pd(100, 1, 40, 10), "ev_twostage_upper_pd(100, 1, 40, 10)", 5.5851004362673385),
    ];
    for (eval, label, want) in table {
        let got = eval();
        let err = rel_err(got, *want);
        assert!(
            err <= REL_TOL,
            "{label}: got {got:.17}, want {want:.17}, rel err {err:.3e}"
        );
    }
}

#[test]
fn exact_yes_minimum_matches_the_frozen_values() {
    let cases = [
        (4, 1, 2, 2),
        (6, 2, 4, 3),
        (4, 1, 4, 1),
        (16, 2, 10, 3),
        (16, 3, 16, 3),
        (32, 2, 12, 4),
        (64, 1, 6, 6),
        (12, 2, 7, 4),
        (8, 1, 3, 3),
    ];
    for (n, d, t, want) in cases {
        assert_eq!(min_yes_exact(n, d, t).unwrap(), want, "min_yes_exact({n},{d},{t})");
    }
    assert!(matches!(min_yes_exact(10, 2, 3), Err(Error::Infeasible(_))));
}

#[test]
fn counting_floor_matches_the_frozen_values() {
    let cases = [(8, 1, 3), (12, 2, 7), (10, 2, 6), (16, 2, 7), (49, 2, 11), (16, 3, 10), (12, 1, 4)];
    for (n, d, want) in cases {
        assert_eq!(ceil_log2_binom(n, d), want, "ceil_log2_binom({n},{d})");
    }
}

#[test]
fn designed_dimension_matches_the_frozen_values() {
    let cases: [(u64, u64, f64, u64); 8] = [
        (2, 10, 0.5, 0),
        (4, 20, 0.5, 2),
        (7, 6, 2.0 / 3.0, 0),
        (4, 2, 0.5, 0),
        (8, 12, 0.25, 5),
        (3, 9, 1.0 / 3.0, 1),
        (5, 10, 0.5, 1),
        (2, 24, 0.25, 4),
    ];
    for (q, m, delta, want) in cases {
        assert_eq!(gv_dimension(q, m, delta), want, "gv_dimension({q},{m},{delta})");
    }
}

#[test]
fn sampler_zero_probability_and_failure_bound_match_the_frozen_values() {
    let z_cases = [
        (4, 4, 1, 1, 0.99966453737209748816),
        (8, 4, 1, 1, 0.99999868959910975581),
        (12, 6, 1, 1, 0.99999999849994815593),
    ];
    for (t, s, d, p, want) in z_cases {
        let got = default_z(t, s, d, p);
        assert!(
            rel_err(got, want) <= REL_TOL,
            "default_z({t},{s},{d},{p}): got {got:.17}, want {want:.17}"
        );
    }
    assert_eq!(ev_cff_pd_exists(12, 6, 1, 1).floor(), 35.0);
    let p_bound = sampler_failure_bound(12, 6, 1, 1, 35);
    let want = 0.0089610097061308739;
    assert!(
        rel_err(p_bound, want) <= REL_TOL,
        "sampler_failure_bound(12,6,1,1,35): got {p_bound:.17}, want {want:.17}"
    );
}

#[test]
fn entropy_term_is_dominated_by_its_closed_form_everywhere() {
    for b in 2..=64u64 {
        for a in 1..b {
            let h = binary_entropy(a as f64 / b as f64);
            let bound = entropy_upper_bound(a, b);
            assert!(
                h <= bound + 1e-15,
                "entropy dominance fails at a={a} b={b}: {h} > {bound}"
            );
        }
    }
}

#[test]
fn unit_surplus_specializations_agree_bit_for_bit() {
    for t in [4u64, 8, 12, 20, 32, 40] {
        for s in 2..=t / 2 {
            for d in [1u64, 2, 3, 5] {
                assert_eq!(
                    cff_pd_size_upper(t, s, d, 1).to_bits(),
                    cff_size_upper(t, s, d).to_bits(),
                    "size bound specialization differs at t={t} s={s} d={d}"
                );
                assert_eq!(
                    cff_pd_exists(t, s, d, 1).to_bits(),
                    cff_exists(t, s, d).to_bits(),
                    "existence bound specialization differs at t={t} s={s} d={d}"
                );
            }
        }
    }
}

#[test]
fn matched_surplus_two_stage_bounds_agree_off_the_odd_midpoint() {
    for n in [16u64, 49, 64, 100] {
        for d in [1u64, 2, 3] {
            for t in [20u64, 41, 80, 101] {
                for y in [d + 1, t / 4, t / 2, t] {
                    if y <= d || (t % 2 == 1 && 2 * y == t + 1) {
                        continue;
                    }
                    let general = twostage_yes_upper(n, d, t, d, y);
                    let special = twostage_yes_upper_pd(n, d, t, y);
                    assert!(
                        rel_err(general, special) <= REL_TOL,
                        "two-stage bounds disagree at n={n} d={d} t={t} y={y}: {general} vs {special}"
                    );
                }
            }
        }
    }
}
