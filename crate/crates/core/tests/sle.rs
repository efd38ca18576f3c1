use slelab_core::loewner::{Hull, C64};
use slelab_core::sle::*;

#[test]
fn simple_phase_traces_keep_apart() {
    for kappa in [2.0, 8.0 / 3.0] {
        for seed in 0..5 {
            let trace = sample_chordal_trace(&SleParams::new(kappa, 0.5, 1e-3, seed).unwrap()).unwrap();
            assert!(min_self_distance(&trace) > 0.0, "kappa {kappa}, seed {seed}");
            assert!(trace.in_domain());
        }
    }
}

#[test]
fn sle6_returns_to_the_real_line() {
    let trials = 40;
    let rehits = (0..trials)
        .filter(|&seed| {
            let params = SleParams::new(6.0, 5.0, 1e-3, 1000 + seed).unwrap();
            let driving = sample_driving(&params).unwrap().translated(0.5);
            !real_axis_landings(&driving).unwrap().is_empty()
        })
        .count();
    assert!(rehits * 2 > trials as usize, "{rehits}/{trials}");
}

#[test]
fn restriction_probability_decreases_along_nested_slits() {
    let mut last = 1.0;
    for h in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let p = restriction_probability(&Hull::slit(1.0, h).unwrap()).unwrap();
        assert!(p > 0.0 && p <= 1.0);
        assert!(p < last, "h = {h}");
        last = p;
    }
    let p = restriction_probability(&Hull::slit(1.0, 1.0).unwrap()).unwrap();
    assert!((p - 2f64.powf(-5.0 / 16.0)).abs() < 1e-9);
}

#[test]
fn dimension_is_monotone_and_clamped() {
    let ks: Vec<f64> = (0..=120).map(|i| i as f64 * 0.1).collect();
    let ds: Vec<f64> = ks.iter().map(|&k| sle_dimension(k).unwrap()).collect();
    assert!(ds.windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(sle_dimension(8.0).unwrap(), 2.0);
    assert_eq!(sle_dimension(11.0).unwrap(), 2.0);
    assert_eq!(sle_dimension(2.0).unwrap(), 1.25);
}

#[test]
fn crossing_outcomes_respect_their_sides() {
    for seed in 0..300 {
        if let Crossing::Decided(o) = sle6_crossing(0.4, 1e-3, seed).unwrap() {
            if o.hit_left {
                assert!(o.y1 <= 0.0 && o.y2 < 1.0, "seed {seed}: {o:?}");
            } else {
                assert!(o.y2 >= 1.0 && o.y1 > 0.0, "seed {seed}: {o:?}");
            }
        }
    }
}

#[test]
fn samplers_are_pure_functions_of_their_seed() {
    let params = SleParams::new(3.0, 0.2, 1e-3, 42).unwrap();
    assert_eq!(sample_chordal_trace(&params).unwrap(), sample_chordal_trace(&params).unwrap());
    assert_eq!(sample_radial_trace(&params).unwrap(), sample_radial_trace(&params).unwrap());
    assert_eq!(sle6_crossing(0.3, 1e-3, 5).unwrap(), sle6_crossing(0.3, 1e-3, 5).unwrap());
    let hull = Hull::slit(1.0, 1.0).unwrap();
    let a = mc_avoidance_probability(&hull, 8.0 / 3.0, 20, 1e4, 8).unwrap();
    assert_eq!(a, mc_avoidance_probability(&hull, 8.0 / 3.0, 20, 1e4, 8).unwrap());
    let other = SleParams { seed: 43, ..params };
    assert_ne!(sample_chordal_trace(&params).unwrap(), sample_chordal_trace(&other).unwrap());
}

#[test]
fn radial_traces_head_for_the_origin() {
    let trace = sample_radial_trace(&SleParams::new(2.0, 3.0, 1e-3, 2).unwrap()).unwrap();
    assert!(trace.in_domain());
    assert_eq!(trace.points[0], C64::new(1.0, 0.0));
    // Conformal radius e^{-3}: the tip is within 4 e^{-3} of the origin.
    assert!(trace.points.last().unwrap().norm() < 4.0 * (-3f64).exp());
}
