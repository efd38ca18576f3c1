use slelab_core::analysis::*;
use slelab_core::loewner::{chordal_trace, DrivingFunction};

#[test]
fn straight_trace_has_dimension_one() {
    let driving = DrivingFunction::zero(1e-4, 20_000).unwrap();
    let trace = chordal_trace(&driving, 1).unwrap();
    let d = box_counting_dimension(&trace.xy(), trace.mean_step_length()).unwrap();
    assert!((d.value - 1.0).abs() < 0.05, "{d:?}");
}

#[test]
fn lerw_growth_is_near_five_quarters() {
    let mut data = Vec::new();
    for r in [8u32, 16, 32, 64] {
        let lengths: Vec<f64> = (0..300)
            .map(|i| slelab_core::lattice::lerw_sample(r, slelab_core::rng::derive_trial_seed(r as u64, i)).unwrap().len() as f64)
            .collect();
        let e = Estimate::mean(&lengths).unwrap();
        data.push((r as f64, e.value, e.stderr));
    }
    let fit = power_law_fit(&data, ExponentName::LerwGrowth).unwrap();
    assert!(fit.value > 1.1 && fit.value < 1.4, "{fit:?}");
}

#[test]
fn percolation_square_is_fair() {
    let e = crossing_probability_mc(CrossingDomain::ConformalSquare, 20, 2000, 6).unwrap();
    assert!((e.value - 0.5).abs() < 4.0 * e.stderr, "{e:?}");
}

#[test]
fn cardy_values_are_consistent() {
    assert_eq!(cardy_triangle(0.25).unwrap(), 0.25);
    let m = 0.25;
    let direct = cardy_halfplane(m).unwrap();
    let reflected = 1.0 - cardy_halfplane(1.0 - m).unwrap();
    assert!((direct - reflected).abs() < 1e-12);
}
