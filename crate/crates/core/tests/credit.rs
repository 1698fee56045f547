use interest_core::credit::{
    expected_gross_return, risk_premium_first_order, risky_rate_exact, simulate_default_returns,
    DefaultRisk,
};

fn risk(pi: f64, lambda: f64) -> DefaultRisk {
    DefaultRisk::new(pi, lambda).unwrap()
}

#[test]
fn gross_return_round_trip_on_grid() {
    for i in 0..10 {
        let r_f = -0.05 + 0.02 * i as f64;
        for j in 0..10 {
            for k in 0..10 {
                let rk = risk(j as f64 / 9.0, 0.98 * k as f64 / 9.0);
                if rk.expected_loss() >= 0.99 {
                    continue;
                }
                let rt = risky_rate_exact(r_f, &rk).unwrap();
                assert!((expected_gross_return(rt, &rk) - (1.0 + r_f)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn first_order_error_is_second_order() {
    // r̃ - (r_f + πλ) = πλ (r_f + πλ) / (1 - πλ): second order in (r_f, πλ) jointly.
    for r_f in [0.0, 0.01, 0.03, 0.08, 0.2] {
        for i in 0..=20 {
            for j in 0..=20 {
                let rk = risk(i as f64 / 20.0, j as f64 / 20.0);
                let el = rk.expected_loss();
                if el > 0.1 {
                    continue;
                }
                let exact = risky_rate_exact(r_f, &rk).unwrap();
                let gap = (exact - (r_f + risk_premium_first_order(&rk))).abs();
                assert!(
                    gap <= 2.0 * el * (r_f + el) + 1e-15,
                    "r_f={r_f} el={el} gap={gap}"
                );
                if r_f == 0.0 {
                    assert!(gap <= 2.0 * el * el * (1.0 + r_f) + 1e-15);
                }
            }
        }
    }
}

#[test]
fn cross_term_dominates_when_loss_is_small_relative_to_rate() {
    // With r_f > 0 the gap carries r_f·πλ, which a pure (πλ)² bound misses.
    let rk = risk(0.05, 0.05);
    let gap = risky_rate_exact(0.01, &rk).unwrap() - (0.01 + rk.expected_loss());
    assert!(gap > 2.0 * rk.expected_loss().powi(2) * 1.01);
    let el = rk.expected_loss();
    assert!((gap - el * (0.01 + el) / (1.0 - el)).abs() < 1e-15);
}

#[test]
fn strictly_increasing_in_pi_and_lambda() {
    let grid: Vec<f64> = (0..=10).map(|i| 0.09 * i as f64).collect();
    for &a in &grid[1..] {
        for w in grid.windows(2) {
            let lo = risky_rate_exact(0.03, &risk(w[0], a)).unwrap();
            let hi = risky_rate_exact(0.03, &risk(w[1], a)).unwrap();
            assert!(hi > lo);
            let lo = risky_rate_exact(0.03, &risk(a, w[0])).unwrap();
            let hi = risky_rate_exact(0.03, &risk(a, w[1])).unwrap();
            assert!(hi > lo);
        }
    }
}

#[test]
fn spread_depends_only_on_expected_loss() {
    let pairs = [
        (0.02, 0.5),
        (0.05, 0.2),
        (0.1, 0.1),
        (0.25, 0.04),
        (0.5, 0.02),
    ];
    for r_f in [0.0, 0.03, 0.1] {
        let spreads: Vec<f64> = pairs
            .iter()
            .map(|&(p, l)| risky_rate_exact(r_f, &risk(p, l)).unwrap() - r_f)
            .collect();
        for s in &spreads {
            assert!((s - spreads[0]).abs() < 1e-15);
        }
    }
}

#[test]
fn monte_carlo_mean_within_three_standard_errors() {
    let rk = risk(0.02, 0.5);
    let rt = risky_rate_exact(0.03, &rk).unwrap();
    let est = simulate_default_returns(rt, &rk, 1_000_000, 20_240_601).unwrap();
    assert!(est.std_error > 0.0);
    assert!((est.mean - 1.03).abs() <= 3.0 * est.std_error, "{est:?}");
}
