//! The Koszul sign engine: signs of permutations acting on tensors of
//! homogeneous elements. Every graded formula in the crate routes its
//! signs through here.

use alloc::string::String;
use alloc::vec;

use crate::scalar::Scalar;

/// Error for a malformed permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulError(pub String);

/// Sign of the permutation acting on a tensor of homogeneous elements.
///
/// `perm[i] = j` means the permuted tuple has `x_j` in slot `i`, so the
/// permutation sends `x_0 x_1 ... x_{n-1}` to `x_{perm[0]} ... x_{perm[n-1]}`.
/// Each transposition of adjacent factors of degrees `p`, `q` contributes
/// `(-1)^{p q}`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<Scalar, KoszulError> {
    let n = perm.len();
    if degrees.len() != n {
        return Err(KoszulError(String::from(
            "permutation and degree list have different lengths",
        )));
    }
    let mut seen = vec![false; n];
    for &j in perm {
        if j >= n || seen[j] {
            return Err(KoszulError(String::from("not a bijection")));
        }
        seen[j] = true;
    }
    let mut sign = 1i64;
    for i in 0..n {
        for j in (i + 1)..n {
            if perm[i] > perm[j] && degrees[perm[i]] % 2 != 0 && degrees[perm[j]] % 2 != 0 {
                sign = -sign;
            }
        }
    }
    Ok(Scalar::from_int(sign))
}

/// Sorts `v` by `key` and returns the Koszul sign picked up by the
/// adjacent transpositions (insertion sort). Equal keys are kept stable
/// and contribute no sign; callers that need odd squares to vanish must
/// check for duplicates themselves.
pub fn sort_with_sign<T, K: Ord>(
    v: &mut [T],
    key: impl Fn(&T) -> K,
    degree: impl Fn(&T) -> i64,
) -> i64 {
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && key(&v[j - 1]) > key(&v[j]) {
            if degree(&v[j - 1]) % 2 != 0 && degree(&v[j]) % 2 != 0 {
                sign = -sign;
            }
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use alloc::vec;

    fn s(perm: &[usize], degs: &[i64]) -> Scalar {
        koszul_sign(perm, degs).unwrap()
    }

    #[test]
    fn odd_odd_transposition() {
        assert_eq!(s(&[1, 0], &[1, 1]), Scalar::from_int(-1));
    }

    #[test]
    fn even_commutes() {
        assert_eq!(s(&[1, 0], &[0, 1]), Scalar::from_int(1));
    }

    #[test]
    fn three_cycle_of_odds() {
        // two transpositions: (-1) * (-1) = +1
        assert_eq!(s(&[1, 2, 0], &[1, 1, 1]), Scalar::from_int(1));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
        assert!(koszul_sign(&[0, 2], &[1, 1]).is_err());
        assert!(koszul_sign(&[0], &[1, 1]).is_err());
    }

    #[test]
    fn homomorphism_property() {
        // sign(sigma . rho) = sign(sigma on rho-permuted degrees) * sign(rho)
        let degs = [1i64, 0, 1, 1, 2];
        let rho = [2usize, 0, 4, 1, 3];
        let sigma = [1usize, 3, 0, 4, 2];
        let composed: Vec<usize> = sigma.iter().map(|&i| rho[i]).collect();
        let permuted_degs: Vec<i64> = rho.iter().map(|&j| degs[j]).collect();
        let lhs = s(&composed, &degs);
        let rhs = &s(&sigma, &permuted_degs) * &s(&rho, &degs);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sort_sign_matches_permutation_sign() {
        let degs = [1i64, 1, 1];
        let mut v: Vec<(usize, i64)> = vec![(2, 1), (0, 1), (1, 1)];
        let sign = sort_with_sign(&mut v, |x| x.0, |x| x.1);
        // perm [2,0,1] on three odd elements is a 3-cycle: sign +1
        assert_eq!(sign, 1);
        assert_eq!(s(&[2, 0, 1], &degs), Scalar::from_int(1));
    }
}
