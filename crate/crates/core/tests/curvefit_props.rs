mod common;

use closerank::curvefit::{fit_graph, fit_logistic, reverse_rank_jacobian, slope_table, FitConfig};
use closerank::synth::{generate_ba, BAConfig};
use closerank::LogisticParams;
use proptest::prelude::*;

fn model_points(n: usize, c_mid: f64, p: f64, count: usize) -> Vec<(f64, f64)> {
    let params = LogisticParams::new(n, c_mid, p).unwrap();
    (0..count)
        .map(|i| {
            let c = c_mid * (0.75 + 0.5 * i as f64 / (count - 1) as f64);
            (c, params.reverse_rank(c).unwrap())
        })
        .collect()
}

#[test]
fn accepted_steps_never_raise_the_objective() {
    let g = generate_ba(&BAConfig::new(1500, 3, 1)).unwrap();
    let fit = fit_graph(&g, &FitConfig::default()).unwrap();
    assert!(fit.cost_history.len() >= 2);
    for w in fit.cost_history.windows(2) {
        assert!(w[1] <= w[0]);
    }
    assert_eq!(fit.residual_norm, fit.cost_history.last().unwrap().sqrt());
}

#[test]
fn residual_is_zero_at_true_parameters() {
    let points = model_points(10_000, 0.25, 12.0, 200);
    let exact = FitConfig {
        initial_c_mid: Some(0.25),
        initial_p: 12.0,
        ..FitConfig::default()
    };
    let fit = fit_logistic(&points, 10_000, &exact).unwrap();
    assert!(fit.converged);
    assert!(fit.residual_norm < 1e-9);
    assert_eq!(fit.iterations_used, 0);
}

#[test]
fn ba_profile_slope() {
    let g = generate_ba(&BAConfig::new(5000, 5, 0)).unwrap();
    let fit = fit_graph(&g, &FitConfig::default()).unwrap();
    println!(
        "BA n=5000 m=5: c_mid {:.4}, p {:.2}",
        fit.params.c_mid, fit.params.p
    );
    assert!(fit.converged);
    assert!(fit.params.p.is_finite() && fit.params.p > 1.0);
}

#[test]
fn slope_table_over_ba_graphs() {
    let graphs: Vec<_> = (1..=5)
        .map(|m| {
            (
                format!("ba-m{m}"),
                generate_ba(&BAConfig::new(4000, m, m as u64)).unwrap(),
            )
        })
        .collect();
    let table = slope_table(&graphs, &FitConfig::default()).unwrap();
    assert_eq!(table.rows.len(), 5);
    for row in &table.rows {
        println!("{}: p = {:.2}", row.name, row.p);
        assert!(row.p.is_finite() && row.p > 0.0);
    }
    let mean = table.rows.iter().map(|r| r.p).sum::<f64>() / 5.0;
    assert!((table.mean_p - mean).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobian_matches_central_differences(
        n in 10usize..100_000,
        c_mid in 0.05f64..0.9,
        p in 1.0f64..25.0,
        ratio in 0.8f64..1.25,
    ) {
        let params = LogisticParams::new(n, c_mid, p).unwrap();
        let c = c_mid * ratio;
        let [d_cmid, d_p] = reverse_rank_jacobian(&params, c).unwrap();

        let h = 1e-6 * c_mid;
        let at = |cm: f64, pp: f64| LogisticParams { n, c_mid: cm, p: pp }.reverse_rank(c).unwrap();
        let fd_cmid = (at(c_mid + h, p) - at(c_mid - h, p)) / (2.0 * h);
        let hp = 1e-6 * p;
        let fd_p = (at(c_mid, p + hp) - at(c_mid, p - hp)) / (2.0 * hp);

        let close = |a: f64, b: f64| (a - b).abs() <= 1e-4 * a.abs().max(b.abs()) + 1e-7 * n as f64;
        prop_assert!(close(d_cmid, fd_cmid), "d/dc_mid {} vs {}", d_cmid, fd_cmid);
        prop_assert!(close(d_p, fd_p), "d/dp {} vs {}", d_p, fd_p);
    }

    #[test]
    fn fit_ignores_point_order(seed in 0u64..1000) {
        let mut points = model_points(3000, 0.3, 11.0, 40);
        for (i, pt) in points.iter_mut().enumerate() {
            pt.1 = (pt.1 + ((i as u64 * 31 + seed) % 17) as f64 - 8.0).clamp(1.0, 3000.0);
        }
        let fit = fit_logistic(&points, 3000, &FitConfig::default()).unwrap();
        let mut shuffled = points.clone();
        shuffled.rotate_left((seed % 40) as usize);
        shuffled.reverse();
        prop_assert_eq!(fit, fit_logistic(&shuffled, 3000, &FitConfig::default()).unwrap());
    }
}
