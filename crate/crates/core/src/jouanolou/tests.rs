use super::*;
use crate::scalar::Scalar;
use alloc::string::ToString;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rand_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let n = (rng.next_u32() % 9) as i64 - 4;
    Scalar::from_int(if n == 0 { 1 } else { n })
}

/// Random element of the ambient localized algebra (not necessarily in A_d).
fn rand_raw(rng: &mut ChaCha8Rng, d: usize) -> ADElement {
    let mut acc = ADElement::zero(d);
    let terms = 1 + (rng.next_u32() % 3) as usize;
    for _ in 0..terms {
        let mut key = TermKey::unit(d);
        for i in 0..d {
            key.z[i] = (rng.next_u32() % 3) as u16;
            key.zs[i] = (rng.next_u32() % 3) as u16;
        }
        key.dz = rng.next_u32() & ((1 << d) - 1);
        key.dzs = rng.next_u32() & ((1 << d) - 1);
        let k = rng.next_u32() % 3;
        acc = acc.add(&ADElement::monomial(d, k, key, rand_scalar(rng)));
    }
    acc
}

/// Random member of A_d^{p,q} built from window slices.
fn rand_member(rng: &mut ChaCha8Rng, d: usize, p: u32, q: u32) -> ADElement {
    let k = 2 + q;
    let w: Vec<i64> = (0..d).map(|_| (rng.next_u32() % 5) as i64 - 2).collect();
    let slice = Slice::build(d, p, q, &w, k);
    let mut acc = ADElement::zero(d);
    for b in &slice.basis {
        if rng.next_u32() % 2 == 0 {
            acc = acc.add(&slice.element(b).scale(&rand_scalar(rng)));
        }
    }
    acc
}

#[test]
fn wedge_signs_anticommute() {
    let d = 3;
    let dz1 = ADElement::dz(d, 1);
    let dz2 = ADElement::dz(d, 2);
    let dzs1 = ADElement::dzs(d, 1);
    assert_eq!(dz1.mul(&dz2), dz2.mul(&dz1).neg());
    assert_eq!(dz1.mul(&dzs1), dzs1.mul(&dz1).neg());
    assert!(dz1.mul(&dz1).is_zero());
}

#[test]
fn normalization_cancels_zzs() {
    // z1 z*1 / (zz*)^1 in d = 1 is just 1
    let e = ADElement::z(1, 1)
        .mul(&ADElement::zs(1, 1))
        .mul(&ADElement::zzs_inv_pow(1, 1));
    assert_eq!(e, ADElement::one(1));
    // in d = 2 it does not cancel
    let e2 = ADElement::z(2, 1)
        .mul(&ADElement::zs(2, 1))
        .mul(&ADElement::zzs_inv_pow(2, 1));
    assert_eq!(e2.denominator_exponent(), 1);
}

#[test]
fn dbar_squares_to_zero_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in 1..=3 {
        for _ in 0..70 {
            let e = rand_raw(&mut rng, d);
            assert!(e.dbar().dbar().is_zero(), "dbar^2 != 0 on {}", e);
            assert!(e.del().del().is_zero(), "del^2 != 0 on {}", e);
            // del and dbar anticommute
            let mixed = e.del().dbar().add(&e.dbar().del());
            assert!(mixed.is_zero(), "del dbar + dbar del != 0 on {}", e);
        }
    }
}

#[test]
fn dbar_is_a_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=2 {
        for _ in 0..40 {
            let a = rand_raw(&mut rng, d);
            let b = rand_raw(&mut rng, d);
            if a.form_degree().is_none() {
                continue; // the Leibniz sign needs homogeneous a
            }
            let deg = a.terms().keys().next().map(|k| {
                (k.bidegree().0 + k.bidegree().1) as i64
            });
            let Some(deg) = deg else { continue };
            if a
                .terms()
                .keys()
                .any(|k| (k.bidegree().0 + k.bidegree().1) as i64 != deg)
            {
                continue;
            }
            let lhs = a.mul(&b).dbar();
            let sign = Scalar::from_int(if deg % 2 == 0 { 1 } else { -1 });
            let rhs = a.dbar().mul(&b).add(&a.mul(&b.dbar()).scale(&sign));
            assert_eq!(lhs, rhs, "Leibniz fails for {} and {}", a, b);
        }
    }
}

#[test]
fn membership_closed_under_product_and_dbar() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for d in 1..=2u32 {
        for _ in 0..30 {
            let p1 = rng.next_u32() % (d + 1);
            let q1 = rng.next_u32() % d;
            let p2 = rng.next_u32() % (d + 1);
            let q2 = rng.next_u32() % d;
            let a = rand_member(&mut rng, d as usize, p1, q1);
            let b = rand_member(&mut rng, d as usize, p2, q2);
            assert!(a.is_zero() || a.check_membership(p1, q1));
            let prod = a.mul(&b).component(p1 + p2, q1 + q2);
            assert!(
                prod.is_zero() || prod.check_membership(p1 + p2, q1 + q2),
                "product left the algebra: {}",
                prod
            );
            let da = a.dbar();
            assert!(da.is_zero() || da.check_membership(p1, q1 + 1));
        }
    }
}

#[test]
fn membership_rejects_outsiders() {
    // z*_1 alone is not in A_1^{0,0}: wrong z*-homogeneity
    assert!(!ADElement::zs(1, 1).check_membership(0, 0));
    // dz*_1 alone fails the Euler contraction
    assert!(!ADElement::dzs(1, 1).check_membership(0, 1));
    // the d = 2 kernel component z*_1 dz*_2 / (zz*)^2 alone also fails it
    let mut key = TermKey::unit(2);
    key.zs[0] = 1;
    key.dzs = 0b10;
    let e = ADElement::monomial(2, 2, key, Scalar::one());
    assert!(!e.check_membership(0, 1));
}

#[test]
fn bm_kernel_is_closed_and_in_component() {
    for d in 1..=3usize {
        let bm = ADElement::bm_kernel(d);
        assert!(bm.check_membership(0, d as u32 - 1), "bm fails membership, d={}", d);
        assert!(bm.dbar().is_zero(), "bm not dbar-closed, d={}", d);
        assert_eq!(bm.denominator_exponent(), d as u32);
    }
}

#[test]
fn d1_elements_collapse_to_laurent() {
    // every member of A_1^{0,0} is a Laurent polynomial in z_1:
    // canonical form has either k = 0 (polynomial in z) or numerator
    // z*^k with k > 0 (a single negative power)
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let e = rand_member(&mut rng, 1, 0, 0);
        for key in e.terms().keys() {
            assert_eq!(key.dz, 0);
            assert_eq!(key.dzs, 0);
            assert_eq!(key.zs[0] as u32, e.denominator_exponent());
            // z^a z*^k/(zz*)^k = z^{a-k}; canonical form keeps a or k zero
            assert!(key.z[0] == 0 || key.zs[0] == 0);
        }
    }
}

#[test]
fn residue_of_inverse_z_is_tau() {
    // Res(z^{-1} dz) = tau in d = 1: omega_BM dz = tau^{-1} z^{-1} dz
    let w = WeightWindow::symmetric(1, 3, 8, 3);
    let omega = ADElement::zs(1, 1)
        .mul(&ADElement::zzs_inv_pow(1, 1))
        .mul(&ADElement::dz_top(1));
    let r = residue(&omega, &w).unwrap();
    assert_eq!(r, Scalar::tau_pow(1));
}

#[test]
fn residue_normalization_bm() {
    // Res(omega_BM dz) = 1, and Res(f omega_BM dz) = f(0)
    for d in 1..=2usize {
        let w = WeightWindow::symmetric(d, 2, 8, (d + 2) as u32);
        let bm_dz = ADElement::bm_kernel(d).mul(&ADElement::dz_top(d));
        assert_eq!(residue(&bm_dz, &w).unwrap(), Scalar::one());
        // f = 3 + z_1 vanishing part: Res((3 + z_1) omega_BM dz) = 3
        let f = ADElement::from_scalar(d, Scalar::from_int(3)).add(&ADElement::z(d, 1));
        let r = residue(&f.mul(&bm_dz), &w).unwrap();
        assert_eq!(r, Scalar::from_int(3));
    }
}

#[test]
fn residue_kills_nonzero_weights_and_exact_forms() {
    let d = 2;
    let w = WeightWindow::symmetric(d, 2, 8, 4);
    let bm_dz = ADElement::bm_kernel(d).mul(&ADElement::dz_top(d));
    // nonzero weight
    let r = residue(&ADElement::z(d, 2).mul(&bm_dz), &w).unwrap();
    assert!(r.is_zero());
    // dbar-exact: dbar(eta) wedge dz for a (0, d-2) member eta
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    for _ in 0..20 {
        let eta = rand_member(&mut rng, d, 0, d as u32 - 2);
        let omega = eta.dbar().mul(&ADElement::dz_top(d));
        if omega.is_zero() {
            continue;
        }
        let r = residue(&omega, &w).unwrap();
        assert!(r.is_zero(), "residue of exact form is {}", r);
        checked += 1;
    }
    assert!(checked > 3);
}

#[test]
fn residue_rejects_wrong_component() {
    let w = WeightWindow::symmetric(1, 2, 8, 3);
    let err = residue(&ADElement::one(1), &w).unwrap_err();
    assert!(matches!(err, WindowError::NotInComponent(_)));
}

#[test]
fn cohomology_d1_weights() {
    // A_1 models the punctured line: H^{0,0} = C[z, z^{-1}] (one
    // dimension in every weight), H^{0,1} = 0
    let w = WeightWindow::symmetric(1, 3, 8, 3);
    let h = cohomology_ad(&w, 0).unwrap();
    for wt in -3i64..=3 {
        assert_eq!(h[&(0u32, vec![wt])], 1, "H^(0,0) weight {}", wt);
        assert_eq!(h[&(1u32, vec![wt])], 0, "H^(0,1) weight {}", wt);
    }
}

#[test]
fn cohomology_d2_matches_two_punctured_plane() {
    // H^{0,0} = C[z_1,z_2], H^{0,1} = z_1^{-1} z_2^{-1} C[z_1^{-1}, z_2^{-1}]
    let w = WeightWindow::symmetric(2, 2, 8, 4);
    let h = cohomology_ad(&w, 0).unwrap();
    for w1 in -2i64..=2 {
        for w2 in -2i64..=2 {
            let h0 = h[&(0u32, vec![w1, w2])];
            let h1 = h[&(1u32, vec![w1, w2])];
            let h2 = h[&(2u32, vec![w1, w2])];
            assert_eq!(h0, if w1 >= 0 && w2 >= 0 { 1 } else { 0 });
            assert_eq!(h1, if w1 <= -1 && w2 <= -1 { 1 } else { 0 });
            assert_eq!(h2, 0);
        }
    }
}

#[test]
fn text_format_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for d in 1..=3 {
        for _ in 0..40 {
            let e = rand_raw(&mut rng, d);
            let s = e.to_string();
            let back = ADElement::parse(d, &s).unwrap_or_else(|err| {
                panic!("parse failed on {:?} at {}: {}", s, err.position, err.message)
            });
            assert_eq!(back, e, "round trip failed on {}", s);
        }
    }
    let bm = ADElement::bm_kernel(3);
    assert_eq!(ADElement::parse(3, &bm.to_string()).unwrap(), bm);
}

#[test]
fn parse_rejects_garbage() {
    assert!(ADElement::parse(2, "z3").is_err());
    assert!(ADElement::parse(2, "z1 +").is_err());
    assert!(ADElement::parse(2, "q").is_err());
    let e = ADElement::parse(2, "2*z1*dzs2/(zzs)^2").unwrap();
    assert_eq!(e.denominator_exponent(), 2);
}
