mod common;

use aqaw_core::aqaw::{coefficients, QParameters, SpectralPoint};
use aqaw_core::cf::CfConfig;
use aqaw_core::qcore::{real, QBase, ToleranceConfig, C64};
use aqaw_core::solutions::{eval_solution_at, SolutionId};
use aqaw_core::spectral::{
    boundary_density, classical_aw_density, discrete_spectrum_guard, expected_norms, g_function,
    identity_4_10_residual, moment_matrix, orthogonality_check, orthogonality_error, qdougall_residual,
    quadrature_nodes, stieltjes_check, stieltjes_residual, weight_density, weight_density_alt, wronskian,
    wronskian_closed_form, x4_wronskian, WeightTable,
};
use aqaw_core::Error;
use common::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn params() -> impl Strategy<Value = QParameters> {
    (0.3..0.7f64, prop::array::uniform4((0.1..0.8f64, -0.4..0.4f64)), 0.05..0.9f64, -0.5..0.5f64).prop_map(
        |(q, ps, em, et)| {
            let [a, b, c, d] = ps.map(|(m, t)| C64::from_polar(m, t));
            QParameters::new(QBase::real(q).unwrap(), a, b, c, d, C64::from_polar(em, et)).unwrap()
        },
    )
}

fn outside_point() -> impl Strategy<Value = C64> {
    (1.05..3.0f64, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| C64::from_polar(m, t))
}

fn circle_point() -> impl Strategy<Value = C64> {
    (0.05..PI - 0.05).prop_map(|t| C64::from_polar(1.0, t))
}

fn s4_domain(p: &QParameters) -> bool {
    (-1..=10).all(|n| SolutionId::S4.predicate_holds(p, n, real(2.0)))
}

proptest! {
    #![proptest_config(prop_config(20))]

    #[test]
    fn casoratian_scaling(p in params().prop_filter("S4 domain", s4_domain), u in outside_point()) {
        let tol = tol();
        let x = |k: i64| eval_solution_at(SolutionId::S4, &p, k, u, &tol);
        let y = |k: i64| eval_solution_at(SolutionId::S4, &p, k, u.inv(), &tol);
        let z = |k: i64| eval_solution_at(SolutionId::S2, &p, k, u, &tol);
        for n in 0..=8 {
            let b2 = coefficients(&p, n).unwrap().b2;
            let w1 = wronskian(x, y, n).unwrap();
            let w0 = wronskian(x, y, n - 1).unwrap();
            let r = rel(w1, b2 * w0);
            prop_assert!(r <= 1e-10, "X4 pair n = {}: {:e}", n, r);
            let w1 = wronskian(x, z, n).unwrap();
            let w0 = wronskian(x, z, n - 1).unwrap();
            let r = rel(w1, b2 * w0);
            prop_assert!(r <= 1e-10, "X4/X2 pair n = {}: {:e}", n, r);
        }
    }

    #[test]
    fn casoratian_closed_form(p in params().prop_filter("S4 domain", s4_domain), u in outside_point()) {
        let closed = wronskian_closed_form(&p, u, &tol()).unwrap();
        let direct = x4_wronskian(&p, u, -1, &tol()).unwrap();
        prop_assert!(rel(direct, closed) <= 1e-8, "{:e}", rel(direct, closed));
        let flipped = wronskian_closed_form(&p, u.inv(), &tol()).unwrap();
        prop_assert!(rel(flipped, -closed) <= 1e-14);
    }

    #[test]
    fn dougall(
        (p, u) in (params(), circle_point())
            .prop_filter("W domains", |(p, _)| {
                let q = p.q.value();
                (p.s() * p.epsilon / (q * q)).norm() < 1.0
            })
    ) {
        let r = qdougall_residual(&p, u, &tol()).unwrap();
        prop_assert!(r <= 1e-9, "{:e}", r);
        let classical = p.with_epsilon(real(1.0)).unwrap();
        let q = p.q.value();
        if (classical.s() / (q * q)).norm() < 1.0 {
            let r = qdougall_residual(&classical, u, &tol()).unwrap();
            prop_assert!(r <= 1e-9, "eps = 1: {:e}", r);
        }
    }

    #[test]
    fn g_is_symmetric(p in params(), u in circle_point()) {
        let q = p.q.value();
        prop_assume!((p.s() * p.epsilon / (q * q)).norm() < 1.0);
        let swapped = QParameters::new(p.q, p.beta, p.alpha, p.delta, p.gamma, p.epsilon).unwrap();
        let a = g_function(&p, u, &tol()).unwrap();
        let b = g_function(&swapped, u, &tol()).unwrap();
        prop_assert!(rel(a, b) <= 1e-12);
    }
}

#[test]
fn dougall_with_classical_eps_at_mixed_params() {
    let p = mixed_params().with_epsilon(real(1.0)).unwrap();
    for t in [0.3, 1.1, 2.5] {
        assert!(qdougall_residual(&p, C64::from_polar(1.0, t), &tol()).unwrap() <= 1e-9);
    }
}

#[test]
fn balanced_identity() {
    let q = 0.5f64;
    let (al, be, ga) = (0.8, 0.7, 0.6);
    for m in 1..=3u32 {
        let de = q.powi(m as i32) / (al * be * ga);
        let p = QParameters::real(q, al, be, ga, de, 1.0).unwrap();
        for t in [PI / 3.0, 0.4, 2.2] {
            let r = identity_4_10_residual(&p, m, C64::from_polar(1.0, t), &tol()).unwrap();
            assert!(r <= 1e-9, "m = {m}, theta = {t}: {r:e}");
        }
        assert_eq!(identity_4_10_residual(&p, m, real(1.0), &tol()).unwrap(), 0.0);
    }
    let p = default_params().with_epsilon(real(1.0)).unwrap();
    assert!(matches!(identity_4_10_residual(&p, 1, C64::from_polar(1.0, 0.4), &tol()), Err(Error::Domain(_))));
}

#[test]
fn density_grid() {
    for p in [default_params(), mixed_params()] {
        let table = WeightTable::build(&p, 102, &tol()).unwrap();
        assert_eq!(table.nodes.len(), 101);
        assert!(table.nodes.windows(2).all(|w| w[0] < w[1]));
        for (&x, &d) in table.nodes.iter().zip(&table.density) {
            assert!(d > 0.0, "x = {x}: {d}");
            let alt = weight_density_alt(&p, x, &tol()).unwrap();
            assert!(!alt.imaginary_warning);
            assert!((alt.value - d).abs() <= 1e-8 * d, "x = {x}: {} vs {d}", alt.value);
        }
    }
    assert_eq!(weight_density(&default_params(), 1.0, &tol()).unwrap(), 0.0);
    assert_eq!(weight_density(&default_params(), -1.0, &tol()).unwrap(), 0.0);
}

#[test]
fn classical_weight() {
    for p in [default_params(), mixed_params(), small_params(0.5)] {
        let p = p.with_epsilon(real(1.0)).unwrap();
        for k in 1..40 {
            let x = -1.0 + k as f64 / 20.0;
            let d = weight_density(&p, x, &tol()).unwrap();
            let c = classical_aw_density(&p, x, &tol()).unwrap();
            assert!((d - c).abs() <= 1e-10 * c, "x = {x}: {d} vs {c}");
        }
    }
}

#[test]
fn orthogonality_at_default_params() {
    let p = default_params();
    assert!(discrete_spectrum_guard(&p).certified);
    let m = orthogonality_check(&p, 5, 2048, &tol()).unwrap();
    let norms = expected_norms(&p, 5).unwrap();
    assert!((m[0][0] - 1.0).abs() <= 1e-6, "{}", m[0][0]);
    assert!(m[0][1].abs() <= 1e-6);
    for n in 0..=5 {
        assert!((m[n][n] - norms[n]).abs() <= 1e-6 * norms[n], "n = {n}: {} vs {}", m[n][n], norms[n]);
    }
    assert!(orthogonality_error(&m, &norms) <= 1e-6);
}

#[test]
fn orthogonality_needs_guard() {
    let p = QParameters::real(0.5, 0.9, 0.4, 0.4, 0.4, 0.5).unwrap();
    assert!(matches!(orthogonality_check(&p, 3, 256, &tol()), Err(Error::Guard(_))));
}

#[test]
fn quadrature_converges() {
    let p = default_params();
    let norms = expected_norms(&p, 5).unwrap();
    let mut errors = Vec::new();
    let mut n = 8;
    while n <= 512 {
        let nodes = quadrature_nodes(&p, n, &tol()).unwrap();
        errors.push(orthogonality_error(&moment_matrix(&p, 5, &nodes).unwrap(), &norms));
        n *= 2;
    }
    let floor = 1e-12;
    for w in errors.windows(2) {
        if w[0] > floor {
            assert!(w[1] <= w[0] / 4.0 || w[1] <= floor, "{errors:?}");
        }
    }
    assert!(*errors.last().unwrap() <= 1e-10, "{errors:?}");
}

#[test]
fn stieltjes_transform() {
    let p = default_params();
    for z in [2.0, 5.0] {
        let r = stieltjes_check(&p, real(z), 2048, &CfConfig::default(), &tol()).unwrap();
        assert!(r <= 1e-6, "z = {z}: {r:e}");
    }
    let r = stieltjes_check(&p, C64::new(0.3, 1.2), 2048, &CfConfig::default(), &tol()).unwrap();
    assert!(r <= 1e-6, "{r:e}");
}

#[test]
fn stieltjes_transform_classical() {
    let p = default_params().with_epsilon(real(1.0)).unwrap();
    let nodes = quadrature_nodes(&p, 2048, &tol()).unwrap();
    for z in [2.0, 5.0] {
        let r = stieltjes_residual(&p, &SpectralPoint::from_z(real(z)), &nodes, &CfConfig::default()).unwrap();
        assert!(r <= 1e-6, "z = {z}: {r:e}");
    }
}

#[test]
fn boundary_values() {
    let p = mixed_params();
    for x in [-0.8, -0.3, 0.0, 0.45, 0.9] {
        let d = weight_density(&p, x, &tol()).unwrap();
        let b1 = boundary_density(&p, x, 1e-5, &tol()).unwrap();
        let b2 = boundary_density(&p, x, 2e-5, &tol()).unwrap();
        // the offset is O(eta): halving eta halves the gap
        let ratio = (b2 - d) / (b1 - d);
        assert!((ratio - 2.0).abs() < 1e-2, "x = {x}: {ratio}");
        let limit = 2.0 * b1 - b2;
        assert!((limit - d).abs() <= 1e-6 * d, "x = {x}: {limit} vs {d}");
    }
}
