use std::f64::consts::PI;

use wqwalk::line::{simulate_line, LineCoinSpec};
use wqwalk::search::{
    asymptotic_probability, find_peak, predict, success_series, threshold_scan, Regime,
};
use wqwalk::{SearchParams, ShiftKind};

fn params(n: usize, l: f64) -> SearchParams {
    SearchParams::new(n, l).unwrap()
}

// Reference values from an independent dense NumPy evolution of the same walks.
#[test]
fn frozen_success_probabilities() {
    let cases = [
        (1024, 0.0, 36, 0.521376929971829),
        (1024, 1.0, 50, 0.9994612447444078),
        (8192, 0.2, 122, 0.6311657999012745),
        (4096, 2.0, 82, 0.888726123617604),
    ];
    for (n, l, t, want) in cases {
        let p = success_series(&params(n, l), t)[t];
        assert!((p - want).abs() < 1e-12, "N={n} l={l} t={t}: {p}");
    }
    let want = [
        0.015625,
        0.015625,
        0.13480437221701214,
        0.1294398595857547,
        0.33581529411021266,
        0.3138146145837193,
        0.556318996411151,
        0.5113482430808408,
        0.7382881484106492,
        0.6775700654916148,
        0.8508417359199839,
    ];
    let got = success_series(&params(64, 0.5), 10);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-14);
    }
}

#[test]
fn frozen_line_probabilities() {
    let cases = [
        (10.0, ShiftKind::Moving, 90, 0.07278448318218769),
        (10.0, ShiftKind::Moving, 0, 0.0796349526565001),
        (10.0, ShiftKind::Moving, -45, 0.0015068156750009112),
        (1.0, ShiftKind::Moving, 56, 0.03061168507983501),
        (1.0, ShiftKind::Moving, 0, 0.17663903021803845),
        (10.0, ShiftKind::FlipFlop, 39, 0.02859348266073276),
        (10.0, ShiftKind::FlipFlop, 0, 0.21253453381886736),
    ];
    for (l, shift, x, want) in cases {
        let d = simulate_line::<f64>(LineCoinSpec::LoopWeight(l), 100, shift).unwrap();
        assert!((d.get(x) - want).abs() < 1e-12, "l={l} {shift:?} x={x}: {}", d.get(x));
    }
}

#[test]
fn runtime_scales_as_root_n() {
    let t: Vec<f64> = [256, 1024, 4096].iter().map(|&n| find_peak(&params(n, 1.0), 0).t_peak as f64).collect();
    for w in t.windows(2) {
        let ratio = w[1] / w[0];
        assert!((1.9..=2.1).contains(&ratio), "{t:?}");
    }
}

#[test]
fn peak_probability_is_continuous_across_one_third() {
    let grid: Vec<f64> = (0..=10_u32).map(|i| 0.23 + 0.02 * i as f64).collect();
    let table = threshold_scan(4096, &grid).unwrap();
    for w in table.windows(2) {
        assert!((w[1].1 - w[0].1).abs() <= 0.05, "jump between l={} and l={}", w[0].0, w[1].0);
    }
}

#[test]
fn loop_weight_one_is_optimal() {
    let grid: [f64; 9] = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.5, 5.0, 10.0];
    let table = threshold_scan(1024, &grid).unwrap();
    let best = table.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert_eq!(best.0, 1.0);
    let p1 = find_peak(&params(1024, 1.0), 0);
    let p10 = find_peak(&params(1024, 10.0), 0);
    assert!(p10.p_peak < p1.p_peak);
    assert!(p1.p_peak >= 0.99 && p1.hump_count == 1);
}

#[test]
fn asymptotic_state_tracks_exact_evolution() {
    let p = params(4096, 2.0);
    let exact = success_series(&p, 200);
    let worst = exact
        .iter()
        .enumerate()
        .map(|(t, e)| (e - asymptotic_probability(&p, t as f64)).abs())
        .fold(0.0, f64::max);
    assert!(worst < 0.05, "{worst}");
}

#[test]
fn predictions_for_documented_cases() {
    let n = 1024.0_f64;
    let p0 = predict(&params(1024, 0.0)).unwrap();
    assert_eq!(p0.regime, Regime::Sub);
    assert!((p0.t_star - PI * n.sqrt() / (2.0 * 2.0_f64.sqrt())).abs() < 1e-12);
    assert!((p0.p_star - 0.5).abs() < 1e-15);

    let p1 = predict(&params(1024, 1.0)).unwrap();
    assert!((p1.t_star - 50.265).abs() < 1e-3 && (p1.p_star - 1.0).abs() < 1e-15);

    // Mid regime: simulated peak within a step of the prediction.
    for l in [0.5, 1.0, 2.0, 3.0] {
        let p = params(4096, l);
        let pred = predict(&p).unwrap();
        let got = find_peak(&p, 0);
        assert_eq!(pred.regime, Regime::Mid);
        assert!((got.t_peak as f64 - pred.t_star.round()).abs() <= 1.0, "l={l}: {} vs {}", got.t_peak, pred.t_star);
    }

    let lin = predict(&SearchParams::linear(1000, 1.0).unwrap()).unwrap();
    assert_eq!(lin.regime, Regime::Linear);
    assert!((lin.t_star - PI / (3.0_f64.sqrt() / 2.0).asin()).abs() < 1e-12);
    assert!((lin.p_star - 25.0 / 8000.0).abs() < 1e-15);

    let sup = predict(&params(16, 1e4)).unwrap();
    assert_eq!((sup.regime, sup.t_star), (Regime::Super, 2.0));
    assert!((sup.p_star - 9.0 / 4e4).abs() < 1e-18);
}

#[test]
fn marked_vertex_choice_is_irrelevant() {
    let a = wqwalk::search::full_success_series(&params(12, 0.7), 40).unwrap();
    let b = wqwalk::search::full_success_series(&params(12, 0.7).with_marked(5).unwrap(), 40).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-13);
    }
}
