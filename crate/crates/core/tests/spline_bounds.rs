mod common;

use std::f64::consts::{E, PI};

use common::{comparison_grid, random_spline};

use lcm_core::fixtures::Trimodal;
use lcm_core::hull::uniform_grid;
use lcm_core::{certify, clamped_spline, least_concave_majorant, PiecewiseCubic, SplineProblem, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn derivative_error(s: &PiecewiseCubic, dg: impl Fn(f64) -> f64, n: usize) -> f64 {
    let (a, b) = s.domain();
    uniform_grid(a, b, n)
        .into_iter()
        .map(|x| (s.slope(x) - dg(x)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn sine_error_within_bound() {
    let prob = SplineProblem::uniform(f64::sin, 0.0, PI, 10, 1.0, -1.0, 1.0).unwrap();
    let s = clamped_spline(&prob).unwrap();
    let cert = certify(&prob, prob.mesh_norm());
    let err = derivative_error(&s, f64::cos, 20001);
    assert!(err <= cert.deriv_bound, "{err} > {}", cert.deriv_bound);
    assert!((cert.deriv_bound - (PI / 10.0).powi(3) / 24.0).abs() < 1e-15);
}

#[test]
fn exp_error_within_bound() {
    for n in [4, 8, 16, 32] {
        let prob = SplineProblem::uniform(f64::exp, 0.0, 1.0, n, 1.0, E, E).unwrap();
        let s = clamped_spline(&prob).unwrap();
        let cert = certify(&prob, prob.mesh_norm());
        let err = derivative_error(&s, f64::exp, 20001);
        assert!(err <= cert.deriv_bound, "n = {n}: {err} > {}", cert.deriv_bound);
    }
}

/// Mixture antiderivative with `|F''''| = |f'''|` bounded by its maximum on a fine grid.
#[test]
fn density_antiderivative_error_within_bound() {
    let t = Trimodal::new();
    let m4 = uniform_grid(0.0, 6.0, 600001)
        .into_iter()
        .map(|x| t.density_d3(x).abs())
        .fold(0.0, f64::max)
        * 1.001;
    for n in [85, 185] {
        let prob = t.spline_problem(n, m4);
        let s = clamped_spline(&prob).unwrap();
        let cert = certify(&prob, prob.mesh_norm());
        let err = derivative_error(&s, |x| t.density(x), 60001);
        assert!(err <= cert.deriv_bound, "n = {n}: {err} > {}", cert.deriv_bound);
    }
}

#[test]
fn sine_error_converges_at_third_order() {
    let errs: Vec<f64> = [10, 20, 40]
        .iter()
        .map(|&n| {
            let prob = SplineProblem::uniform(f64::sin, 0.0, PI, n, 1.0, -1.0, 1.0).unwrap();
            let err = derivative_error(&clamped_spline(&prob).unwrap(), f64::cos, 40001);
            assert!(err <= (PI / n as f64).powi(3) / 24.0, "n = {n}: {err}");
            err
        })
        .collect();
    for w in errs.windows(2) {
        let r = w[0] / w[1];
        assert!((6.0..=10.0).contains(&r), "ratio {r}");
    }
}

#[test]
fn level_functions_contract() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let n = rng.gen_range(3..12);
        let len = rng.gen_range(1.0..6.0);
        let nodes = uniform_grid(0.0, len, n + 1);
        let f = random_spline(&mut rng, &nodes);
        let g = random_spline(&mut rng, &nodes);
        let lf = least_concave_majorant(&f, &tol).unwrap().level;
        let lg = least_concave_majorant(&g, &tol).unwrap().level;
        let xs = comparison_grid(&f, &g);
        let levels = xs
            .iter()
            .map(|&x| (lf.value(x) - lg.value(x)).abs())
            .fold(0.0, f64::max);
        let slopes = xs.iter().map(|&x| (f.slope(x) - g.slope(x)).abs()).fold(0.0, f64::max);
        assert!(levels <= slopes + 1e-9, "{levels} > {slopes}");
    }
}

/// Majorant error certificate for the density, against a 4000-interval spline.
#[test]
fn majorant_certificate_for_the_density() {
    let tol = Tolerances::default();
    let t = Trimodal::new();
    let m4 = uniform_grid(0.0, 6.0, 600001)
        .into_iter()
        .map(|x| t.density_d3(x).abs())
        .fold(0.0, f64::max)
        * 1.001;
    let prob = t.spline_problem(85, m4);
    let cert = certify(&prob, prob.mesh_norm());
    let fine = clamped_spline(&t.spline_problem(4000, m4)).unwrap();
    let coarse = clamped_spline(&prob).unwrap();
    let a = least_concave_majorant(&coarse, &tol).unwrap().majorant;
    let b = least_concave_majorant(&fine, &tol).unwrap().majorant;
    let fine_err = certify(&t.spline_problem(4000, m4), 6.0 / 4000.0);
    for x in uniform_grid(0.0, 6.0, 3001) {
        let d = (a.value(x) - b.value(x)).abs();
        assert!(
            d <= cert.majorant_bound_at(x) + fine_err.majorant_bound_at(x) + 1e-12,
            "x = {x}: {d}"
        );
    }
}
