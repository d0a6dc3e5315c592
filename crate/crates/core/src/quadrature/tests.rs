use super::*;
use crate::lie::{mat_mul, mat_trace, theta_kn, Representation};

/// Iterated antiderivative in closed form:
/// `(eps/d!) sum_k (-1)^k C(d,k) / ((d-k+1) eps + k L)`.
fn closed_form(d: usize, eps: f64, l: f64) -> f64 {
    let mut fact = 1.0;
    for i in 2..=d {
        fact *= i as f64;
    }
    let mut binom = 1.0;
    let mut total = 0.0;
    let mut sign = 1.0;
    for k in 0..=d {
        total += sign * binom / ((d - k + 1) as f64 * eps + k as f64 * l);
        sign = -sign;
        binom = binom * (d - k) as f64 / (k + 1) as f64;
    }
    eps * total / fact
}

fn run(d: usize, eps: Scalar, tol: f64) -> WheelIntegral {
    let mut cfg = QuadratureConfig::new(d, eps, Scalar::one());
    cfg.tolerance = tol;
    wheel_integral(&cfg).unwrap()
}

#[test]
fn d1_matches_exact_value() {
    let eps = Scalar::ratio(1, 10_000);
    let w = run(1, eps.clone(), 1e-9);
    let exact = wheel_integral_exact_d1(&eps, &Scalar::one()).to_f64(1.0);
    assert!(abs(w.value - exact) <= w.error_bound + 1e-12);
    assert!(abs(w.value - 0.5) < 1e-3);
    assert!(abs(w.value - closed_form(1, 1e-4, 1.0)) < 1e-8);
}

#[test]
fn d2_near_one_sixth() {
    let w = run(2, Scalar::ratio(1, 10_000), 1e-6);
    assert!(abs(w.value - 1.0 / 6.0) < 1e-3, "value {}", w.value);
    assert!(abs(w.value - closed_form(2, 1e-4, 1.0)) < 1e-5);
}

#[test]
fn d3_extrapolates_to_one_twentyfourth() {
    let w = run(3, Scalar::ratio(1, 1_000), 1e-5);
    assert!(abs(w.value - 1.0 / 24.0) < 1e-3, "value {}", w.value);
    assert!(abs(w.value - closed_form(3, 1e-3, 1.0)) < 1e-4);
}

#[test]
fn l_independence() {
    for d in 1..=3usize {
        let eps = Scalar::ratio(1, 1_000);
        let mut cfg = QuadratureConfig::new(d, eps.clone(), Scalar::one());
        cfg.tolerance = 1e-6;
        let a = wheel_integral(&cfg).unwrap();
        cfg.l = Scalar::from_int(2);
        let b = wheel_integral(&cfg).unwrap();
        assert!(abs(a.value - b.value) < 3.0 * 1e-3, "d = {}", d);
    }
}

#[test]
fn eps_convergence_is_first_order() {
    let target = 1.0 / 6.0;
    let errs: Vec<f64> = [1_000i64, 2_000, 4_000]
        .iter()
        .map(|&q| abs(run(2, Scalar::ratio(1, q), 1e-8).value - target))
        .collect();
    assert!(errs[1] < 0.75 * errs[0]);
    assert!(errs[2] < 0.75 * errs[1]);
    // first order: halving eps roughly halves the error
    assert!(errs[1] > 0.3 * errs[0]);
}

#[test]
fn exact_d1_values() {
    // eps = L/2 -> 1/2 - 1/3 = 1/6
    let v = wheel_integral_exact_d1(&Scalar::ratio(1, 2), &Scalar::one());
    assert_eq!(v, Scalar::ratio(1, 6));
    // degenerate eps = L -> 0 (empty interval)
    let v = wheel_integral_exact_d1(&Scalar::one(), &Scalar::one());
    assert!(v.is_zero());
}

#[test]
fn config_validation() {
    let bad = QuadratureConfig::new(1, Scalar::one(), Scalar::ratio(1, 2));
    assert!(matches!(
        wheel_integral(&bad),
        Err(QuadratureError::BadConfig(_))
    ));
    let bad = QuadratureConfig::new(5, Scalar::ratio(1, 10), Scalar::one());
    assert!(matches!(
        wheel_integral(&bad),
        Err(QuadratureError::BadConfig(_))
    ));
}

#[test]
fn subdivision_limit_is_reported() {
    let mut cfg = QuadratureConfig::new(2, Scalar::ratio(1, 10_000), Scalar::one());
    cfg.tolerance = 1e-14;
    cfg.max_subdivisions = 3;
    match wheel_integral(&cfg) {
        Err(QuadratureError::ToleranceNotReached { achieved }) => assert!(achieved > 0.0),
        other => panic!("expected tolerance failure, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn anomaly_coefficient_trivial_rep() {
    let rep = Representation::trivial(crate::lie::FiniteLieAlgebra::sl2(), 2);
    let (theta, pre) = anomaly_coefficient(&rep, 2);
    assert!(theta.is_zero());
    assert_eq!(pre, Scalar::tau_pow(-2));
}

#[test]
fn anomaly_coefficient_gl_fundamental() {
    for (n, d) in [(1usize, 1usize), (2, 1), (2, 2)] {
        let rep = Representation::gl_fundamental(n);
        let (theta, pre) = anomaly_coefficient(&rep, d);
        assert_eq!(pre, Scalar::tau_pow(-(d as i32)));
        let mut fact = Scalar::one();
        for i in 2..=(d + 1) as i64 {
            fact = &fact * &Scalar::from_int(i);
        }
        let expect = theta_kn(d + 1, n).scale(&fact.inv());
        // compare on all sorted basis tuples
        let dim = n * n;
        let mut tuple = vec![0usize; d + 1];
        loop {
            assert_eq!(theta.eval_basis(&tuple), expect.eval_basis(&tuple));
            let mut slot = d + 1;
            let mut advanced = false;
            while slot > 0 {
                slot -= 1;
                if tuple[slot] + 1 < dim {
                    let v = tuple[slot] + 1;
                    for t in tuple.iter_mut().skip(slot) {
                        *t = v;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

#[test]
fn anomaly_coefficient_sl2_is_half_trace_form() {
    let rep = Representation::sl2_fundamental();
    let (theta, _) = anomaly_coefficient(&rep, 1);
    for i in 0..3 {
        for j in 0..3 {
            let tr = mat_trace(&mat_mul(rep.matrix(i), rep.matrix(j)));
            let expect = &tr * &Scalar::ratio(1, 2);
            assert_eq!(theta.eval_basis(&[i, j]), expect, "({}, {})", i, j);
        }
    }
}
