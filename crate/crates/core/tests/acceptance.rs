//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured quantity so a log scrape shows the whole gate at a glance.

use hardy_core::error::GrowthModel;
use hardy_core::green::GreenKernelSeries;
use hardy_core::params::HardyParams;
use hardy_core::probes::{eigen_scan, nonexistence_probe, sub_hardy_probe};
use hardy_core::profile::RadialFunction;
use hardy_core::quad::{integrate_radial, QuadratureSpec};
use hardy_core::solver::{approximate_green_mollifier, solve_dual_radial, solve_radial_bvp};
use hardy_core::testfn::{bump_library, BumpKind};
use hardy_core::verify::{
    check_kato, classify_solution, shrinking_bump_majorant, verify_fundamental_identity,
    verify_green_identity,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn spec() -> QuadratureSpec<f64> {
    QuadratureSpec::default()
}

fn mu_grid(n: u32) -> Vec<f64> {
    let mu0 = -((n as f64 - 2.0) / 2.0).powi(2);
    let mut grid = vec![mu0, mu0 + 0.5, 0.0, 1.0, 5.0];
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    grid
}

#[test]
fn criterion_01_fundamental_identity() {
    let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
    let mut worst = 0.0f64;
    for n in [2u32, 3, 4] {
        for mu in mu_grid(n) {
            let p = HardyParams::<f64>::new(n, mu).unwrap();
            let c = p.dirac_constant().unwrap();
            let res = verify_fundamental_identity(&p, &xi, &spec()).unwrap();
            let rel = res.abs_residual / c;
            assert!(rel <= 1e-6, "N={n} mu={mu}: residual {rel:.3e}");
            worst = worst.max(rel);
        }
    }

    // Hand-derived values: ∫_0^1 r·L*(ξ) dr = 2√(μ-μ₀) at (3, 2), and the
    // log-branch integral equals 1 at (3, μ₀).
    let p = HardyParams::<f64>::new(3, 2.0).unwrap();
    let prof = xi.profile.clone();
    let h = move |r: f64| r * p.apply_dual(&prof, r).unwrap();
    let i = integrate_radial(&h, 0.0, 1.0, &spec()).unwrap().value;
    assert!((i - 3.0).abs() <= 1e-8, "radial integral {i}");

    let pc = HardyParams::<f64>::new(3, -0.25).unwrap();
    let prof = xi.profile.clone();
    let hc = move |r: f64| -r.ln() * r * pc.apply_dual(&prof, r).unwrap();
    let ic = integrate_radial(&hc, 0.0, 1.0, &spec()).unwrap().value;
    assert!((ic - 1.0).abs() <= 1e-8, "log-branch integral {ic}");

    println!(
        "[PASS] criterion 1: fundamental identity, worst relative residual {worst:.2e}; \
         symbolic checks {i:.12} vs 3, {ic:.12} vs 1"
    );
}

#[test]
fn criterion_02_green_identity() {
    let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
    let mut worst = 0.0f64;
    for n in [2u32, 3, 4] {
        for mu in mu_grid(n) {
            let p = HardyParams::<f64>::new(n, mu).unwrap();
            let res = verify_green_identity(&p, 1.0, &xi, &spec()).unwrap();
            assert!(
                res.rel_residual <= 1e-6,
                "N={n} mu={mu}: residual {:.3e}",
                res.rel_residual
            );
            worst = worst.max(res.rel_residual);
        }
    }
    println!("[PASS] criterion 2: green identity on the ball, worst relative residual {worst:.2e}");
}

#[test]
fn criterion_03_closed_form_roundtrips() {
    let p = HardyParams::<f64>::new(3, 2.0).unwrap();
    let one = RadialFunction::constant(1.0, 1.0);
    let sol = solve_radial_bvp(&p, 0, &one, 1.0, 0.0, &spec()).unwrap();
    let mut sup = 0.0f64;
    for i in 1..=200 {
        let r = i as f64 / 200.0;
        sup = sup.max((sol.profile.value(r) - (r - r * r) / 4.0).abs());
    }
    assert!(sup <= 1e-9, "primal sup-error {sup:.3e}");

    let dual = solve_dual_radial(&p, &one, 1.0, &spec()).unwrap();
    let mut sup_d = 0.0f64;
    for i in 0..=200 {
        let r = i as f64 / 200.0;
        sup_d = sup_d.max((dual.profile.value(r) - (1.0 - r * r) / 10.0).abs());
    }
    assert!(sup_d <= 1e-10, "dual sup-error {sup_d:.3e}");
    println!(
        "[PASS] criterion 3: closed-form roundtrips, primal sup {sup:.2e} (<=1e-9), \
         dual sup {sup_d:.2e} (<=1e-10)"
    );
}

#[test]
fn criterion_04_classification_roundtrip() {
    let p = HardyParams::<f64>::new(3, 2.0).unwrap();
    let f = RadialFunction::power(-3.5, 1.0); // τ₋ - 2 + 0.5
    let mut worst_k = 0.0f64;
    let mut worst_res = 0.0f64;
    for &k in &[0.0, 1.0, 2.5] {
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, k, &spec()).unwrap();
        let class = classify_solution(&p, &sol, &f, &spec()).unwrap();
        let dk = (class.k_hat - k).abs();
        assert!(dk <= 1e-4, "k={k}: extracted {}", class.k_hat);
        assert!(
            class.decomposition_residual <= 1e-6,
            "k={k}: residual {:.3e}",
            class.decomposition_residual
        );
        worst_k = worst_k.max(dk);
        worst_res = worst_res.max(class.decomposition_residual);
    }
    println!(
        "[PASS] criterion 4: classification roundtrip, worst |k̂-k| {worst_k:.2e} (<=1e-4), \
         worst decomposition residual {worst_res:.2e} (<=1e-6)"
    );
}

#[test]
fn criterion_05_sharpness_dichotomy() {
    let p = HardyParams::<f64>::new(3, 2.0).unwrap();

    // Borderline source: truncated integrals blow up logarithmically.
    let f_border = RadialFunction::power(-4.0, 1.0);
    let series = nonexistence_probe(&p, &f_border, 0.5, 256, &spec()).unwrap();
    assert_eq!(series.growth_fit.model, GrowthModel::Log);
    assert!(
        series.growth_fit.r_squared >= 0.999,
        "log fit R² {}",
        series.growth_fit.r_squared
    );

    // Slightly integrable source: bounded, converging to the Green operator.
    let f_ok = RadialFunction::power(-3.8, 1.0);
    let bounded = nonexistence_probe(&p, &f_ok, 0.5, 256, &spec()).unwrap();
    assert_eq!(bounded.growth_fit.model, GrowthModel::Bounded);
    let gk = GreenKernelSeries::build(p, 1.0, 16).unwrap();
    let target = gk.apply_radial(&f_ok, 0.5, &spec()).unwrap();
    let gap = (bounded.growth_fit.coefficient - target).abs();
    assert!(
        gap <= 1e-4,
        "limit {} vs {}",
        bounded.growth_fit.coefficient,
        target
    );

    println!(
        "[PASS] criterion 5: sharpness dichotomy, log fit R² {:.6} (>=0.999), \
         bounded limit gap {gap:.2e} (<=1e-4)",
        series.growth_fit.r_squared
    );
}

#[test]
fn criterion_06_kato_inequalities() {
    let p = HardyParams::<f64>::new(3, 2.0).unwrap();
    let xi = bump_library(BumpKind::Quartic, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4B41544F);
    let mut worst_slack = f64::INFINITY;
    for trial in 0..50 {
        let coef: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = RadialFunction::from_fn(
            move |r: f64| {
                coef.iter()
                    .enumerate()
                    .map(|(j, a)| a * ((j + 1) as f64 * PI * r).sin())
                    .sum()
            },
            1.0,
        );
        let sol = solve_radial_bvp(&p, 0, &f, 1.0, 0.0, &spec()).unwrap();
        let rep = check_kato(&p, &sol, &f, &xi, &spec()).unwrap();
        assert!(
            !rep.violation,
            "trial {trial}: slacks {} / {} below budget {}",
            rep.slack_abs, rep.slack_plus, rep.budget
        );
        worst_slack = worst_slack.min(rep.slack_abs.min(rep.slack_plus));
    }

    // Nonnegative source: (sign) is an equality.
    let f_pos = RadialFunction::constant(1.0, 1.0);
    let sol = solve_radial_bvp(&p, 0, &f_pos, 1.0, 0.0, &spec()).unwrap();
    let rep = check_kato(&p, &sol, &f_pos, &xi, &spec()).unwrap();
    assert!(
        rep.slack_abs.abs() <= 1e-8,
        "equality slack {}",
        rep.slack_abs
    );

    println!(
        "[PASS] criterion 6: Kato inequalities over 50 randomized sources, \
         worst slack {worst_slack:.2e} (>= -budget), equality case {:.2e} (<=1e-8)",
        rep.slack_abs
    );
}

#[test]
fn criterion_07_mollifier_convergence() {
    let p = HardyParams::<f64>::new(3, 2.0).unwrap();
    let c = p.dirac_constant().unwrap();
    let mut errors = Vec::new();
    for &n in &[8u32, 16, 32, 64] {
        let w = approximate_green_mollifier(&p, 1.0, n, &spec()).unwrap();
        let mut sup = 0.0f64;
        for i in 0..=25 {
            let r = 0.4 + 0.5 * i as f64 / 25.0;
            let err = (c * w.profile.value(r) - p.green_ball(1.0, r).unwrap()).abs();
            sup = sup.max(err);
        }
        errors.push(sup);
    }
    // Every member of the family is already within the final tolerance.
    for (i, &e) in errors.iter().enumerate() {
        assert!(e <= 1e-3, "n index {i}: sup-error {e:.3e}");
    }
    // With the radial mollifier the solution is exact away from the support,
    // so the errors sit at the quadrature floor; decrease is only required
    // above that budget (sub-budget wiggle is noise, not signal).
    let noise_budget = 1e-9;
    let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
    assert!(
        monotone || errors.iter().all(|&e| e <= noise_budget),
        "errors neither decreasing nor at the noise floor: {errors:?}"
    );
    println!(
        "[PASS] criterion 7: mollifier convergence, sup-errors {:?} (all <=1e-3, final {:.2e})",
        errors
            .iter()
            .map(|e| format!("{e:.1e}"))
            .collect::<Vec<_>>(),
        errors.last().unwrap()
    );
}

#[test]
fn criterion_08_kernel_bounds() {
    // Zero envelope violations in all three regimes.
    for &mu in &[2.0, 0.0, -0.25] {
        let p = HardyParams::<f64>::new(3, mu).unwrap();
        let gk = GreenKernelSeries::build(p, 1.0, 96).unwrap();
        let report = gk.check_kernel_bounds(1000, 0xB0).unwrap();
        assert_eq!(report.violations, 0, "mu={mu}");
        assert!(report.fitted_upper_c.is_finite() && report.fitted_upper_c > 0.0);
        if mu < 0.0 {
            let lc = report.fitted_lower_c.unwrap();
            assert!(lc > 0.0 && lc.is_finite(), "mu={mu}: lower constant {lc}");
        }
    }

    // Pole limit within 1%. The angular l=1 mode decays like |y|^{σ⁺₁-σ⁺₀},
    // which is slow at μ=2, so the probe radius shrinks there (still <=1e-3).
    let mut worst_ratio_err = 0.0f64;
    for &(mu, s) in &[(2.0, 1e-5), (0.0, 1e-3), (-0.25, 1e-3)] {
        let p = HardyParams::<f64>::new(3, mu).unwrap();
        let gk = GreenKernelSeries::build(p, 1.0, 48).unwrap();
        let expect = p.green_ball(1.0, 0.5).unwrap() / p.dirac_constant().unwrap();
        for &cos in &[-0.7, 0.2, 0.95] {
            let ratio = gk.eval_polar(0.5, s, cos).unwrap() / expect;
            assert!(
                (0.99..=1.01).contains(&ratio),
                "mu={mu} cos={cos}: ratio {ratio}"
            );
            worst_ratio_err = worst_ratio_err.max((ratio - 1.0).abs());
        }
    }

    // μ = 0 kernel against the image-charge closed form.
    let p0 = HardyParams::<f64>::new(3, 0.0).unwrap();
    let gk0 = GreenKernelSeries::build(p0, 1.0, 160).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1A551CA);
    let mut checked = 0;
    let mut worst_classical = 0.0f64;
    while checked < 300 {
        let r: f64 = rng.gen_range(0.1..0.85);
        let s: f64 = rng.gen_range(0.1..0.85);
        let c: f64 = rng.gen_range(-1.0..1.0);
        if r.min(s) / r.max(s) > 0.8 {
            continue;
        }
        let d2 = r * r + s * s - 2.0 * r * s * c;
        if d2 < 1e-4 {
            continue;
        }
        let v = gk0.eval_polar(r, s, c).unwrap();
        let exact =
            (1.0 / d2.sqrt() - 1.0 / (r * r * s * s + 1.0 - 2.0 * r * s * c).sqrt()) / (4.0 * PI);
        let err = (v - exact).abs();
        assert!(err <= 1e-6, "classical mismatch {err:.3e} at ({r},{s},{c})");
        worst_classical = worst_classical.max(err);
        checked += 1;
    }

    println!(
        "[PASS] criterion 8: kernel bounds (0 violations x3 regimes), pole ratio err \
         {worst_ratio_err:.2e} (<=1e-2), classical match {worst_classical:.2e} (<=1e-6)"
    );
}

#[test]
fn criterion_09_eigenvalue_nonexistence() {
    let eps = [1e-2, 1e-3, 1e-4];
    let curve = eigen_scan::<f64>(3, 1.0, &eps).unwrap();
    let mut worst = 0.0f64;
    for (i, &e) in eps.iter().enumerate() {
        let exact = 0.25 + PI * PI / (e.ln() * e.ln());
        let rel = (curve.lambda1[i] - exact).abs() / exact;
        assert!(
            rel <= 5e-3,
            "eps={e}: lambda {} vs {exact}",
            curve.lambda1[i]
        );
        assert!(
            curve.lambda1[i] > 0.25,
            "eps={e}: not above the Hardy constant"
        );
        worst = worst.max(rel);
    }
    assert!(
        curve.lambda1[0] > curve.lambda1[1] && curve.lambda1[1] > curve.lambda1[2],
        "curve not strictly decreasing: {:?}",
        curve.lambda1
    );
    println!(
        "[PASS] criterion 9: eigenvalue scan matches 1/4 + π²/ln²ε, worst rel err {worst:.2e} \
         (<=5e-3), strictly decreasing toward 0.25"
    );
}

#[test]
fn criterion_10_sub_hardy_oscillation() {
    let rep = sub_hardy_probe::<f64>(3, -1.25, 1.0).unwrap();
    let target = PI.exp();
    assert!((rep.predicted_ratio - target).abs() < 1e-12);
    let eighth = rep.consecutive_ratios[7];
    let rel = (eighth - target).abs() / target;
    assert!(rel <= 1e-3, "8th ratio {eighth} vs {target}");
    println!(
        "[PASS] criterion 10: sub-threshold zero-ratio {eighth:.6} vs e^π {target:.6}, \
         rel err {rel:.2e} (<=1e-3)"
    );
}

#[test]
fn criterion_11_dirac_order_zero() {
    let eps: Vec<f64> = (3..=10).map(|k| 2f64.powi(-k)).collect();

    // N = 3: the majorant stays bounded.
    let p3 = HardyParams::<f64>::new(3, 2.0).unwrap();
    let g3 = p3.green_ball_profile(1.0).unwrap();
    let d3 = shrinking_bump_majorant(&p3, &g3, &eps, &spec()).unwrap();
    let first3 = d3[0].1;
    for &(e, v) in &d3 {
        assert!(v <= 1.1 * first3, "N=3 eps={e}: {v} vs {first3}");
    }

    // N = 2 (classical log case): growth no faster than 1.1·|ln ε|.
    let p2 = HardyParams::<f64>::new(2, 0.0).unwrap();
    let g2 = p2.green_ball_profile(1.0).unwrap();
    let d2 = shrinking_bump_majorant(&p2, &g2, &eps, &spec()).unwrap();
    let unit = d2[0].1 / d2[0].0.ln().abs();
    for &(e, v) in &d2 {
        assert!(
            v / e.ln().abs() <= 1.1 * unit,
            "N=2 eps={e}: {} vs unit {unit}",
            v / e.ln().abs()
        );
    }
    println!(
        "[PASS] criterion 11: shrinking-bump functional bounded in 3-D \
         (max {:.4} <= 1.1x{:.4}), log-controlled in 2-D",
        d3.iter().map(|x| x.1).fold(0.0, f64::max),
        first3
    );
}
