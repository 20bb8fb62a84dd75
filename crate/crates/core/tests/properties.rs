use axgd_core::gap::{extra_gradient_error_bound, GapAccumulator, GapMonitor};
use axgd_core::oracle::{
    finite_diff_check, make_holder_power, make_lipschitz_norm, make_quadratic, wrap_noisy,
};
use axgd_core::schedule::smooth_schedule;
use axgd_core::solver::init_state;
use axgd_core::*;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn vec_strategy(n: usize, scale: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-scale..scale, n).prop_map(Vector::from_vec)
}

fn interior_simplex(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(0.05f64..1.0, n).prop_map(|v| {
        let x = Vector::from_vec(v);
        let s = x.sum();
        x / s
    })
}

fn setups() -> Vec<ProxSetup> {
    vec![
        ProxSetup::euclidean(1.7, Domain::Unconstrained).unwrap(),
        ProxSetup::entropy_simplex(0.6).unwrap(),
    ]
}

/// Random PSD matrix `BᵀB` with `B` uniform in `[-1, 1]`.
fn psd_strategy(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
        let b = DMatrix::from_vec(n, n, v);
        let m = b.transpose() * &b;
        // Symmetrize exactly.
        DMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugate_gradient_inverts_gradient(x in interior_simplex(4), y in vec_strategy(4, 5.0)) {
        let [e, h] = <[ProxSetup; 2]>::try_from(setups()).unwrap();
        let back = h.grad_psi_star(&h.grad_psi(&x).unwrap());
        prop_assert!((back - &x).amax() <= 1e-10);
        let back = e.grad_psi_star(&e.grad_psi(&y).unwrap());
        prop_assert!((back - &y).amax() <= 1e-10);
    }

    #[test]
    fn conjugate_gradient_is_feasible(z in vec_strategy(5, 200.0)) {
        let h = ProxSetup::entropy_simplex(0.3).unwrap();
        prop_assert!(h.domain().contains(&h.grad_psi_star(&z), 1e-12));
        let b = ProxSetup::euclidean(2.0, Domain::Box {
            lower: Vector::from_element(5, -1.0),
            upper: Vector::from_element(5, 0.5),
        }).unwrap();
        prop_assert!(b.domain().contains(&b.grad_psi_star(&z), 0.0));
    }

    #[test]
    fn primal_dual_divergence_duality(x in interior_simplex(4), z in vec_strategy(4, 3.0)) {
        for s in setups() {
            let x = if s.geometry() == Geometry::Entropy { x.clone() } else { &x * 3.0 - Vector::from_element(4, 0.5) };
            let lhs = s.bregman(&s.grad_psi_star(&z), &x).unwrap();
            let rhs = s.bregman_conjugate(&s.grad_psi(&x).unwrap(), &z);
            prop_assert!((lhs - rhs).abs() <= 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn conjugate_divergence_strong_convexity(z in vec_strategy(4, 3.0), w in vec_strategy(4, 3.0)) {
        for s in setups() {
            let d = s.bregman_conjugate(&z, &w);
            let gap = s.norm(&(s.grad_psi_star(&z) - s.grad_psi_star(&w)));
            prop_assert!(d - 0.5 * s.sigma() * gap * gap >= -1e-10);
        }
    }

    #[test]
    fn conjugate_three_point_identity(
        x in vec_strategy(4, 3.0),
        y in vec_strategy(4, 3.0),
        z in vec_strategy(4, 3.0),
    ) {
        for s in setups() {
            let lhs = s.bregman_conjugate(&x, &y);
            let rhs = s.bregman_conjugate(&z, &y)
                + (s.grad_psi_star(&z) - s.grad_psi_star(&y)).dot(&(&x - &z))
                + s.bregman_conjugate(&x, &z);
            prop_assert!((lhs - rhs).abs() <= 1e-9);
        }
    }

    #[test]
    fn simplex_projection_is_optimal(y in vec_strategy(6, 4.0), x in interior_simplex(6)) {
        let p = project_simplex(&y);
        prop_assert!(Domain::Simplex.contains(&p, 1e-12));
        // Variational inequality of the Euclidean projection.
        prop_assert!((&y - &p).dot(&(&x - &p)) <= 1e-12);
    }

    #[test]
    fn quadratic_convexity_and_smoothness(
        a in psd_strategy(4),
        b in vec_strategy(4, 2.0),
        x in vec_strategy(4, 3.0),
        y in vec_strategy(4, 3.0),
    ) {
        let q = make_quadratic(a, b, None).unwrap();
        let l = q.constants().smoothness.unwrap();
        let lin = q.value(&x) + q.gradient(&x).dot(&(&y - &x));
        let gap = q.value(&y) - lin;
        let scale = 1e-10 * (1.0 + q.value(&y).abs() + lin.abs());
        prop_assert!(gap >= -scale);
        prop_assert!(gap <= 0.5 * l * (&y - &x).norm_squared() + scale);
    }

    #[test]
    fn radial_power_hoelder_condition(x in vec_strategy(3, 5.0), y in vec_strategy(3, 5.0), nu in 0.2f64..1.0) {
        let o = make_holder_power(nu, 3).unwrap();
        let c = o.constants().hoelder_constant.unwrap();
        let d = (&x - &y).norm();
        prop_assume!(d > 1e-8);
        let lhs = (o.gradient(&x) - o.gradient(&y)).norm();
        prop_assert!(lhs <= c * d.powf(nu) * (1.0 + 1e-12));
        // Convexity.
        prop_assert!(o.value(&y) >= o.value(&x) + o.gradient(&x).dot(&(&y - &x)) - 1e-10);
    }

    #[test]
    fn norm_distance_is_lipschitz(x in vec_strategy(5, 5.0), y in vec_strategy(5, 5.0), c in vec_strategy(5, 1.0)) {
        let o = make_lipschitz_norm(c, 2.5).unwrap();
        prop_assert!((o.value(&x) - o.value(&y)).abs() <= 2.5 * (&x - &y).norm() * (1.0 + 1e-12));
        prop_assert!(o.gradient(&x).norm() <= 2.5 * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Rate bound, sandwich, dual-point reconstruction, the telescoped gap
    /// identity, the per-step error bound and the first-step gap bound on
    /// random strongly convex quadratics.
    #[test]
    fn axgd_certificate_on_random_quadratics(
        a in psd_strategy(5),
        b in vec_strategy(5, 2.0),
        x0 in vec_strategy(5, 2.0),
        sigma in 0.3f64..3.0,
    ) {
        let a = a + DMatrix::identity(5, 5) * 0.05;
        let x_star = a.clone().cholesky().unwrap().solve(&b);
        let q = make_quadratic(a, b, None).unwrap();
        let f_star = q.value(&x_star);
        let l = q.constants().smoothness.unwrap();
        let setup = ProxSetup::euclidean(sigma, Domain::Unconstrained).unwrap();
        let schedule = smooth_schedule(sigma, l).unwrap();
        let d0 = setup.bregman(&x_star, &x0).unwrap();
        let mode = GapMode::OracleOptimum { x_star: x_star.clone(), f_star };
        let mut monitor = GapMonitor::new(&x0, &setup, mode.clone()).unwrap();

        let mut first: Option<(f64, f64)> = None;
        let mut error_sum = 0.0;
        let mut failures = Vec::new();
        run(&Method::Axgd, &q, &setup, &schedule, &x0, 300, |v| {
            let row = monitor.observe(v)?;
            let tol = 1e-9 * row.scaled_gap.abs().max(1.0);
            if v.value - f_star > d0 / v.a_sum + 1e-9 * d0.max(1.0) {
                failures.push(format!("rate at k={}", v.k));
            }
            if row.lower > f_star + 1e-9 * f_star.abs().max(1.0) || row.upper < f_star - 1e-9 {
                failures.push(format!("sandwich at k={}", v.k));
            }
            let z = monitor.accumulator().dual_point();
            if (z - &v.state.z).amax() > 1e-9 * v.state.z.amax().max(1.0) {
                failures.push(format!("dual point at k={}", v.k));
            }
            match (first, row.discretization_error) {
                (None, _) => {
                    first = Some((row.a_sum, row.gap));
                    if row.gap > d0 / row.a_sum + 1e-9 * d0.max(1.0) {
                        failures.push("first gap".into());
                    }
                }
                (Some((a1, g1)), Some(err)) => {
                    error_sum += err;
                    let telescoped = (a1 * g1 + error_sum) / row.a_sum;
                    if (telescoped - row.gap).abs() > 1e-9 * row.gap.abs().max(1.0) {
                        failures.push(format!("telescoping at k={}", v.k));
                    }
                    let bound = extra_gradient_error_bound(v.previous, v.state, &setup);
                    if err > bound + tol {
                        failures.push(format!("error bound at k={}: {err} > {bound}", v.k));
                    }
                    if err > tol {
                        failures.push(format!("positive error at k={}: {err}", v.k));
                    }
                }
                (Some(_), None) => failures.push("missing error".into()),
            }
            Ok(())
        }).unwrap();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn entropy_certificate_on_random_simplex_quadratics(
        a in psd_strategy(4),
        b in vec_strategy(4, 1.0),
        x0 in interior_simplex(4),
    ) {
        let x_star = axgd_core::oracle::simplex_qp_minimizer(&a, &b).unwrap();
        let q = make_quadratic(a, b, None).unwrap();
        let f_star = q.value(&x_star);
        // Entropy is 1-strongly convex in ℓ1 and ‖·‖₂ ≤ ‖·‖₁, so L in ℓ1
        // is at most the ℓ2 value.
        let l = q.constants().smoothness.unwrap().max(1e-3);
        let setup = ProxSetup::entropy_simplex(1.0).unwrap();
        let schedule = smooth_schedule(1.0, l).unwrap();
        let d0 = setup.bregman(&x_star, &x0).unwrap();
        let mut monitor = GapMonitor::new(&x0, &setup, GapMode::OracleOptimum { x_star, f_star }).unwrap();
        let mut failures = Vec::new();
        run(&Method::Axgd, &q, &setup, &schedule, &x0, 200, |v| {
            let row = monitor.observe(v)?;
            if v.value - f_star > d0 / v.a_sum + 1e-9 * d0.max(1.0) {
                failures.push(format!("rate at k={}", v.k));
            }
            if row.lower > f_star + 1e-9 {
                failures.push(format!("sandwich at k={}", v.k));
            }
            if let Some(err) = row.discretization_error {
                if err > 1e-9 * row.scaled_gap.abs().max(1.0) {
                    failures.push(format!("positive error at k={}: {err}", v.k));
                }
            }
            Ok(())
        }).unwrap();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }
}

#[test]
fn lower_model_minimizer_matches_direct_search() {
    // 2-D Euclidean: minimize Σ aᵢ⟨gᵢ, u⟩ + D_ψ(u, x̂⁰) by brute force.
    let setup = ProxSetup::euclidean(2.0, Domain::Unconstrained).unwrap();
    let anchor = Vector::from_column_slice(&[0.3, -0.4]);
    let mut acc = GapAccumulator::new(&anchor, &setup).unwrap();
    acc.update(
        0.5,
        &Vector::from_column_slice(&[1.0, 0.0]),
        &Vector::from_column_slice(&[0.4, -0.2]),
        1.0,
    );
    acc.update(
        1.5,
        &Vector::from_column_slice(&[0.0, 1.0]),
        &Vector::from_column_slice(&[-0.1, 0.3]),
        2.0,
    );
    let objective = |u: &Vector| acc.grad_sum().dot(u) + setup.bregman(u, &anchor).unwrap();
    let u_star = acc.minimizer(&setup);
    let mut best = (f64::INFINITY, Vector::zeros(2));
    let mut center = anchor.clone();
    let mut width = 4.0;
    for _ in 0..30 {
        for i in 0..=40 {
            for j in 0..=40 {
                let u = Vector::from_column_slice(&[
                    center[0] - width / 2.0 + width * i as f64 / 40.0,
                    center[1] - width / 2.0 + width * j as f64 / 40.0,
                ]);
                let val = objective(&u);
                if val < best.0 {
                    best = (val, u);
                }
            }
        }
        center = best.1.clone();
        width /= 4.0;
    }
    assert!((best.1 - &u_star).amax() < 1e-6);

    // 2-D simplex under entropy, parametrized by the first coordinate.
    let setup = ProxSetup::entropy_simplex(0.7).unwrap();
    let anchor = Vector::from_column_slice(&[0.35, 0.65]);
    let mut acc = GapAccumulator::new(&anchor, &setup).unwrap();
    acc.update(1.0, &anchor, &Vector::from_column_slice(&[0.8, -0.3]), 0.0);
    let objective = |t: f64| {
        let u = Vector::from_column_slice(&[t, 1.0 - t]);
        acc.grad_sum().dot(&u) + setup.bregman(&u, &anchor).unwrap()
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if objective(m1) < objective(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    assert!((0.5 * (lo + hi) - acc.minimizer(&setup)[0]).abs() < 1e-6);
}

#[test]
fn init_matches_gap_anchor() {
    let setup = ProxSetup::entropy_simplex(2.0).unwrap();
    let x0 = Vector::from_column_slice(&[0.2, 0.3, 0.5]);
    let state = init_state(&x0, &setup).unwrap();
    let acc = GapAccumulator::new(&x0, &setup).unwrap();
    assert_eq!(acc.dual_point(), state.z);
}

#[test]
fn builtin_instances_pass_finite_difference_check() {
    let q = make_quadratic(
        DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]),
        Vector::from_column_slice(&[1.0, -1.0]),
        None,
    )
    .unwrap();
    let x = Vector::from_column_slice(&[0.3, -0.7]);
    assert!(finite_diff_check(&q, &x, 1e-6).unwrap() < 1e-6);
    let o = make_lipschitz_norm(Vector::from_column_slice(&[1.0, 2.0]), 3.0).unwrap();
    assert!(finite_diff_check(&o, &x, 1e-6).unwrap() < 1e-6);
    for nu in [0.3, 0.5, 1.0] {
        let o = make_holder_power(nu, 2).unwrap();
        assert!(finite_diff_check(&o, &x, 1e-6).unwrap() < 1e-6);
    }
}

#[test]
fn zero_noise_is_bitwise_passthrough_and_seeds_replay() {
    let q = make_quadratic(DMatrix::identity(3, 3), Vector::from_element(3, 1.0), None).unwrap();
    let x = Vector::from_column_slice(&[0.1, 0.2, 0.3]);
    let quiet = wrap_noisy(
        &q,
        NoiseSpec {
            epsilon_eta: 0.0,
            seed: 9,
        },
    )
    .unwrap();
    for _ in 0..5 {
        let (g, h) = (quiet.gradient(&x), q.gradient(&x));
        assert!(g
            .iter()
            .zip(h.iter())
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }
    let a = wrap_noisy(
        &q,
        NoiseSpec {
            epsilon_eta: 0.1,
            seed: 42,
        },
    )
    .unwrap();
    let b = wrap_noisy(
        &q,
        NoiseSpec {
            epsilon_eta: 0.1,
            seed: 42,
        },
    )
    .unwrap();
    let c = wrap_noisy(
        &q,
        NoiseSpec {
            epsilon_eta: 0.1,
            seed: 43,
        },
    )
    .unwrap();
    let first = a.gradient(&x);
    assert_eq!(first, b.gradient(&x));
    assert_ne!(first, c.gradient(&x));
    assert_ne!(first, a.gradient(&x));
    assert_eq!(a.value(&x), q.value(&x));
}

#[test]
fn noise_has_requested_variance() {
    let q = make_quadratic(DMatrix::identity(4, 4), Vector::zeros(4), None).unwrap();
    let noisy = wrap_noisy(
        &q,
        NoiseSpec {
            epsilon_eta: 0.01,
            seed: 7,
        },
    )
    .unwrap();
    let x = Vector::zeros(4);
    let draws: Vec<f64> = (0..5000)
        .flat_map(|_| noisy.gradient(&x).iter().copied().collect::<Vec<_>>())
        .collect();
    let n = draws.len() as f64;
    let mean = draws.iter().sum::<f64>() / n;
    let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    assert!(mean.abs() < 3e-3);
    assert!((var - 0.01).abs() < 1e-3);
}
