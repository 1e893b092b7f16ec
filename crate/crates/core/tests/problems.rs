mod common;

use common::*;
use nnbvp::{init_params, Point, ProblemKind, ProblemSpec};

fn problems() -> [ProblemSpec; 2] {
    [ProblemSpec::laplace(), ProblemSpec::poisson()]
}

#[test]
fn trial_gradient_matches_finite_differences() {
    let mut r = rng(11);
    for problem in problems() {
        for k in 0..10 {
            let params = random_params(&mut r, 5 + k, 2, 1.0);
            let x = interior_point(&mut r, 2, 0.01);
            let f = |y: &[f64]| problem.trial_eval(&params, &Point::new(y).unwrap()).unwrap();
            let (grad, _) = problem.trial_gradient_and_laplacian(&params, &x).unwrap();
            for axis in 0..2 {
                let mut orders = [0, 0];
                orders[axis] = 1;
                let fd = central_partial(&f, x.coords(), &orders, 1e-4);
                assert!(
                    close(grad[axis], fd, 1e-5, 1e-9),
                    "{} axis {axis}: {} vs {fd}",
                    problem.kind,
                    grad[axis]
                );
            }
        }
    }
}

#[test]
fn trial_laplacian_matches_five_point_stencil() {
    let mut r = rng(12);
    for problem in problems() {
        for _ in 0..10 {
            let params = random_params(&mut r, 10, 2, 1.0);
            let x = interior_point(&mut r, 2, 0.01);
            let f = |y: &[f64]| problem.trial_eval(&params, &Point::new(y).unwrap()).unwrap();
            let (_, lap) = problem.trial_gradient_and_laplacian(&params, &x).unwrap();
            let fd = fd_laplacian(&f, x.coords(), 1e-3);
            assert!(close(lap, fd, 1e-3, 1e-5), "{}: {lap} vs {fd}", problem.kind);
        }
    }
}

#[test]
fn residual_is_laplacian_minus_source() {
    let mut r = rng(13);
    for problem in problems() {
        let params = random_params(&mut r, 8, 2, 1.0);
        let x = interior_point(&mut r, 2, 0.0);
        let (_, lap) = problem.trial_gradient_and_laplacian(&params, &x).unwrap();
        let res = problem.residual(&params, &x).unwrap();
        assert!((res - (lap - problem.source_term(&x).unwrap())).abs() < 1e-12);
    }
}

#[test]
fn analytic_solutions_solve_their_equations() {
    for problem in problems() {
        for i in 1..=5 {
            for j in 1..=5 {
                let x = [i as f64 / 6.0, j as f64 / 6.0];
                let u = |y: &[f64]| problem.analytic_solution(&Point::new(y).unwrap()).unwrap();
                let lap = fd_laplacian(&u, &x, 1e-3);
                let f = problem.source_term(&Point::new(&x).unwrap()).unwrap();
                assert!((lap - f).abs() < 1e-5, "{} at {x:?}: {lap} vs {f}", problem.kind);
            }
        }
    }
}

#[test]
fn analytic_solutions_meet_boundary_data() {
    let laplace = ProblemSpec::laplace();
    let poisson = ProblemSpec::poisson();
    for i in 0..=20 {
        let t = i as f64 / 20.0;
        let s = (std::f64::consts::PI * t).sin();
        let at = |p: &ProblemSpec, a: f64, b: f64| p.analytic_solution(&Point::xy(a, b).unwrap()).unwrap();
        for p in [&laplace, &poisson] {
            assert!(at(p, 0.0, t).abs() < 1e-12);
            assert!(at(p, 1.0, t).abs() < 1e-12);
            assert!(at(p, t, 0.0).abs() < 1e-12);
        }
        assert!((at(&laplace, t, 1.0) - s).abs() < 1e-12);
        let u = |y: &[f64]| poisson.analytic_solution(&Point::new(y).unwrap()).unwrap();
        assert!((backward_derivative(&u, &[t, 1.0], 1, 1e-4) - 2.0 * s).abs() < 1e-6);
    }
}

#[test]
fn poisson_trial_vanishes_on_dirichlet_edges() {
    let poisson = ProblemSpec::poisson();
    let mut r = rng(14);
    for k in 0..20 {
        let params = random_params(&mut r, 15, 2, 1.0 + k as f64 / 5.0);
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            for (a, b) in [(0.0, t), (1.0, t), (t, 0.0)] {
                let v = poisson.trial_eval(&params, &Point::xy(a, b).unwrap()).unwrap();
                assert!(v.abs() < 1e-12, "({a}, {b}) -> {v}");
            }
        }
    }
}

#[test]
fn untrained_network_is_not_the_solution() {
    // A sanity guard: the residual of a fresh network is far from zero somewhere.
    let params = init_params(15, 2, 0).unwrap();
    for problem in problems() {
        let worst = (1..10)
            .map(|i| {
                problem
                    .residual(&params, &Point::xy(i as f64 / 10.0, 0.5).unwrap())
                    .unwrap()
                    .abs()
            })
            .fold(0.0, f64::max);
        assert!(worst > 1e-3);
    }
}

#[test]
fn problem_names_parse() {
    for kind in ProblemKind::ALL {
        assert_eq!(kind.name().parse::<ProblemKind>().unwrap(), kind);
    }
    assert!("heat".parse::<ProblemKind>().is_err());
}
