use super::*;
use crate::lie::{check_invariance, theta_kn, FiniteLieAlgebra};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mode(g: &FiniteLieAlgebra, x: usize, m: i64) -> SphereAlgebraElement {
    SphereAlgebraElement::from_pair(g.dim(), x, laurent_to_a1(m))
}

#[test]
fn fhk_d1_reproduces_affine_cocycle() {
    // theta = Killing form of sl_2; inputs x z^m, y z^n.
    // Expected n * kappa(x, y) * tau when m + n = 0, zero otherwise.
    let g = FiniteLieAlgebra::sl2();
    let kappa = g.killing_form();
    let w = WeightWindow::symmetric(1, 5, 10, 5);
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            for (x, y) in [(0usize, 2usize), (1, 1), (0, 1)] {
                let val = fhk_cocycle(&kappa, &[mode(&g, x, m), mode(&g, y, n)], &w).unwrap();
                let expected = if m + n == 0 {
                    &(&Scalar::from_int(n) * &kappa.eval_basis(&[x, y])) * &Scalar::tau_pow(1)
                } else {
                    Scalar::zero()
                };
                assert_eq!(val, expected, "m={} n={} x={} y={}", m, n, x, y);
            }
        }
    }
}

#[test]
fn fhk_vanishes_on_holomorphic_inputs() {
    let g = FiniteLieAlgebra::sl2();
    let kappa = g.killing_form();
    let w = WeightWindow::symmetric(1, 5, 10, 5);
    for m in 0..4 {
        for n in 0..4 {
            let val = fhk_cocycle(&kappa, &[mode(&g, 0, m), mode(&g, 2, n)], &w).unwrap();
            assert!(val.is_zero());
        }
    }
}

#[test]
fn fhk_is_antisymmetric_on_degree_zero_inputs() {
    let g = FiniteLieAlgebra::sl2();
    let kappa = g.killing_form();
    let w = WeightWindow::symmetric(1, 5, 10, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let m = (rng.next_u32() % 7) as i64 - 3;
        let n = (rng.next_u32() % 7) as i64 - 3;
        let x = (rng.next_u32() % 3) as usize;
        let y = (rng.next_u32() % 3) as usize;
        let a = mode(&g, x, m);
        let b = mode(&g, y, n);
        let ab = fhk_cocycle(&kappa, &[a.clone(), b.clone()], &w).unwrap();
        let ba = fhk_cocycle(&kappa, &[b, a], &w).unwrap();
        assert_eq!(ab, -&ba);
    }
}

#[test]
fn fhk_d2_vanishes_off_weight_zero() {
    let theta = theta_kn(3, 2);
    let g = FiniteLieAlgebra::gl(2);
    let w = WeightWindow::symmetric(2, 3, 8, 4);
    // total torus weight (1, 0): must vanish
    let a0 = SphereAlgebraElement::from_pair(4, 0, ADElement::z(2, 1));
    let a1 = SphereAlgebraElement::from_pair(4, 1, ADElement::one(2));
    let a2 = SphereAlgebraElement::from_pair(4, 2, ADElement::one(2));
    let v = fhk_cocycle(&theta, &[a0, a1, a2], &w).unwrap();
    assert!(v.is_zero());
    assert_eq!(g.dim(), 4);
}

#[test]
fn extension_d1_sl2_passes_l_infinity() {
    let g = FiniteLieAlgebra::sl2();
    let kappa = g.killing_form();
    let ext = build_extension(g, kappa, 1, WeightWindow::symmetric(1, 6, 12, 6));
    let report = check_l_infinity(&ext, 25, 42);
    assert!(report.passed(), "violations: {:?}", report.violations);
    assert!(report.checks_run > 40);
}

#[test]
fn extension_d2_gl2_passes_l_infinity() {
    let theta = theta_kn(3, 2);
    let g = FiniteLieAlgebra::gl(2);
    let ext = build_extension(g, theta, 2, WeightWindow::symmetric(2, 8, 16, 6));
    let report = check_l_infinity(&ext, 6, 7);
    assert!(report.passed(), "violations: {:?}", report.violations);
}

#[test]
fn corrupted_cocycle_is_detected() {
    let g = FiniteLieAlgebra::sl2();
    let mut kappa = g.killing_form();
    // break invariance after construction
    let ext = {
        let mut e = build_extension(g, kappa.clone(), 1, WeightWindow::symmetric(1, 6, 12, 6));
        kappa.perturb(&[0, 0], Scalar::one());
        *e.theta_mut() = kappa;
        e
    };
    let report = check_l_infinity(&ext, 120, 9);
    assert!(!report.passed());
    let v = &report.violations[0];
    assert!(v.arity >= 2);
    assert!(!v.witness.is_empty());
}

#[test]
fn abelian_extension_passes() {
    // l_2 = 0; only the closure of the cocycle under l_1 is exercised
    let g = FiniteLieAlgebra::abelian(2);
    let mut theta = InvariantPolynomial::zero(2, 2);
    theta.perturb(&[0, 1], Scalar::one());
    assert!(check_invariance(&theta, &g));
    let ext = build_extension(g, theta, 1, WeightWindow::symmetric(1, 6, 12, 6));
    let report = check_l_infinity(&ext, 20, 11);
    assert!(report.passed(), "violations: {:?}", report.violations);
}

#[test]
fn iterated_loop_examples() {
    let g = FiniteLieAlgebra::sl2();
    let kappa = g.killing_form();
    // d = 1: f_0 = z^{-1}, f_1 = z
    let f0 = LaurentPoly::monomial(1, vec![-1], Scalar::one());
    let f1 = LaurentPoly::monomial(1, vec![1], Scalar::one());
    let v = iterated_loop_cocycle(&kappa, &[(0, f0.clone()), (2, f1)]);
    assert_eq!(v, &kappa.eval_basis(&[0, 2]) * &Scalar::tau_pow(1));
    // constant f_1 gives zero
    let c = LaurentPoly::monomial(1, vec![0], Scalar::from_int(5));
    assert!(iterated_loop_cocycle(&kappa, &[(0, f0), (2, c)]).is_zero());
    // d = 2: f_0 = (z_1 z_2)^{-1}, f_1 = z_1, f_2 = z_2
    let theta = theta_kn(3, 2);
    let f0 = LaurentPoly::monomial(2, vec![-1, -1], Scalar::one());
    let f1 = LaurentPoly::monomial(2, vec![1, 0], Scalar::one());
    let f2 = LaurentPoly::monomial(2, vec![0, 1], Scalar::one());
    let v = iterated_loop_cocycle(&theta, &[(0, f0), (1, f1), (3, f2)]);
    assert_eq!(
        v,
        &theta.eval_basis(&[0, 1, 3]) * &Scalar::tau_pow(2)
    );
}

#[test]
fn iterated_loop_matches_fhk_at_d1() {
    let g = FiniteLieAlgebra::sl2();
    let kappa = g.killing_form();
    let w = WeightWindow::symmetric(1, 5, 10, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..25 {
        let m = (rng.next_u32() % 7) as i64 - 3;
        let n = (rng.next_u32() % 7) as i64 - 3;
        let x = (rng.next_u32() % 3) as usize;
        let y = (rng.next_u32() % 3) as usize;
        let lhs = iterated_loop_cocycle(
            &kappa,
            &[
                (x, LaurentPoly::monomial(1, vec![m], Scalar::one())),
                (y, LaurentPoly::monomial(1, vec![n], Scalar::one())),
            ],
        );
        let rhs = fhk_cocycle(&kappa, &[mode(&g, x, m), mode(&g, y, n)], &w).unwrap();
        assert_eq!(lhs, rhs, "m={} n={} x={} y={}", m, n, x, y);
    }
}

#[test]
fn sphere_element_membership_and_bracket() {
    let g = FiniteLieAlgebra::sl2();
    let a = mode(&g, 0, 2);
    let b = mode(&g, 2, -1);
    assert!(a.check_membership());
    let c = a.bracket(&g, &b);
    // [e, f] = h with coefficient z^1
    assert_eq!(c.terms().len(), 1);
    let (x, form) = c.terms().iter().next().unwrap();
    assert_eq!(*x, 1);
    assert_eq!(form, &laurent_to_a1(1));
    assert_eq!(c.to_description(&g), "h (x) [1*z1]");
}

impl SphereAlgebraElement {
    fn to_description(&self, g: &FiniteLieAlgebra) -> std::string::String {
        self.terms
            .iter()
            .map(|(&x, a)| std::format!("{} (x) [{}]", g.label(x), a))
            .collect::<std::vec::Vec<_>>()
            .join(" + ")
    }
}
