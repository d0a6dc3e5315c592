//! The algebraic model `A_d` of derived functions on punctured affine
//! d-space: canonical-form elements, the two differentials, membership
//! tests, the Bochner-Martinelli element, the higher residue, and
//! windowed cohomology.
//!
//! An element is a numerator polynomial in `z_1..z_d`, `z*_1..z*_d` with
//! wedge factors `dz_i`, `dz*_i`, over a power of `zz* = sum_i z_i z*_i`.
//! Canonical form: the numerator is not divisible by `zz*` unless the
//! denominator exponent is zero. Divisibility is tested by single-divisor
//! multivariate division under graded-lex order; no Groebner machinery
//! is needed for the localization at the single element `zz*`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

// ---------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------

/// One monomial of a numerator: exponents of `z` and `z*` plus wedge
/// subsets for `dz` (bits of `dz`) and `dz*` (bits of `dzs`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub z: Vec<u16>,
    pub zs: Vec<u16>,
    pub dz: u32,
    pub dzs: u32,
}

impl TermKey {
    pub fn unit(d: usize) -> TermKey {
        TermKey {
            z: vec![0; d],
            zs: vec![0; d],
            dz: 0,
            dzs: 0,
        }
    }

    /// Bidegree `(p, q) = (|dz factors|, |dz* factors|)`.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.dz.count_ones(), self.dzs.count_ones())
    }

    /// Total cohomological degree of the form part (only `dz*` factors
    /// carry degree in the Dolbeault grading of `A_d`).
    pub fn form_degree(&self) -> i64 {
        self.dzs.count_ones() as i64
    }

    /// Torus weight of the term before dividing by `(zz*)^k`:
    /// `z_i, dz_i -> +e_i`, `z*_i, dz*_i -> -e_i`.
    pub fn weight(&self) -> Vec<i64> {
        let d = self.z.len();
        (0..d)
            .map(|i| {
                self.z[i] as i64 - self.zs[i] as i64
                    + ((self.dz >> i) & 1) as i64
                    - ((self.dzs >> i) & 1) as i64
            })
            .collect()
    }

    fn zs_total(&self) -> i64 {
        self.zs.iter().map(|&b| b as i64).sum()
    }
}

/// Parity of the number of pairs `(i in a, j in b)` with `j < i`;
/// the Koszul sign of merging two sorted odd-generator blocks.
fn merge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        // generators in `a` strictly above j must hop over this one
        inversions += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

type Numer = BTreeMap<TermKey, Scalar>;

fn numer_insert(n: &mut Numer, key: TermKey, coef: Scalar) {
    if coef.is_zero() {
        return;
    }
    match n.get_mut(&key) {
        Some(c) => {
            let nv = &*c + &coef;
            if nv.is_zero() {
                n.remove(&key);
            } else {
                *c = nv;
            }
        }
        None => {
            n.insert(key, coef);
        }
    }
}

/// Product of two numerator terms with the wedge Koszul sign.
fn term_mul(a: &TermKey, b: &TermKey, coef: &Scalar) -> Option<(TermKey, Scalar)> {
    if a.dz & b.dz != 0 || a.dzs & b.dzs != 0 {
        return None; // odd square
    }
    let d = a.z.len();
    // sign: a.dzs block crosses b.dz block, then merge the dz and dzs blocks
    let mut sign = 1i64;
    if a.dzs.count_ones() % 2 == 1 && b.dz.count_ones() % 2 == 1 {
        sign = -sign;
    }
    sign *= merge_sign(a.dz, b.dz);
    sign *= merge_sign(a.dzs, b.dzs);
    let key = TermKey {
        z: (0..d).map(|i| a.z[i] + b.z[i]).collect(),
        zs: (0..d).map(|i| a.zs[i] + b.zs[i]).collect(),
        dz: a.dz | b.dz,
        dzs: a.dzs | b.dzs,
    };
    let c = if sign == 1 { coef.clone() } else { -coef };
    Some((key, c))
}

fn numer_mul(a: &Numer, b: &Numer) -> Numer {
    let mut out = Numer::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            if let Some((k, c)) = term_mul(ka, kb, &(ca * cb)) {
                numer_insert(&mut out, k, c);
            }
        }
    }
    out
}

/// `zz* = sum_i z_i z*_i` as a numerator.
fn zzs_poly(d: usize) -> Numer {
    let mut n = Numer::new();
    for i in 0..d {
        let mut k = TermKey::unit(d);
        k.z[i] = 1;
        k.zs[i] = 1;
        n.insert(k, Scalar::one());
    }
    n
}

/// Graded-lex order on the scalar part (z before z*), used to pick the
/// leading term for single-divisor division. Wedge parts are carried
/// along untouched (the divisor is wedge-free).
fn gradlex_key(t: &TermKey) -> (u32, Vec<u16>) {
    let total: u32 = t.z.iter().chain(t.zs.iter()).map(|&e| e as u32).sum();
    let mut exps: Vec<u16> = t.z.clone();
    exps.extend(t.zs.iter().copied());
    (total, exps)
}

/// Single-divisor division of `n` by `zz*`: returns the quotient if the
/// remainder is zero, `None` otherwise.
fn divide_by_zzs(n: &Numer, d: usize) -> Option<Numer> {
    // leading term of zz* under graded-lex is z_1 z*_1
    let mut rem = n.clone();
    let mut quot = Numer::new();
    let divisor = zzs_poly(d);
    loop {
        // largest remaining term divisible by z_1 z*_1
        let target = rem
            .iter()
            .filter(|(k, _)| k.z[0] >= 1 && k.zs[0] >= 1)
            .max_by_key(|(k, _)| gradlex_key(k))
            .map(|(k, c)| (k.clone(), c.clone()));
        let Some((k, c)) = target else {
            return if rem.is_empty() { Some(quot) } else { None };
        };
        let mut qk = k.clone();
        qk.z[0] -= 1;
        qk.zs[0] -= 1;
        numer_insert(&mut quot, qk.clone(), c.clone());
        let mut single = Numer::new();
        single.insert(qk, c);
        let sub = numer_mul(&single, &divisor);
        for (kk, cc) in sub {
            numer_insert(&mut rem, kk, -&cc);
        }
    }
}

// ---------------------------------------------------------------------
// ADElement
// ---------------------------------------------------------------------

/// A canonical-form element of the bigraded algebra `A_d^{*,*}` (more
/// precisely of the ambient localized algebra `R_d`; membership in the
/// subalgebra `A_d` is tested by [`ADElement::check_membership`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ADElement {
    d: usize,
    k: u32,
    terms: Numer,
}

impl ADElement {
    pub fn zero(d: usize) -> ADElement {
        ADElement {
            d,
            k: 0,
            terms: Numer::new(),
        }
    }

    pub fn one(d: usize) -> ADElement {
        ADElement::from_scalar(d, Scalar::one())
    }

    pub fn from_scalar(d: usize, s: Scalar) -> ADElement {
        let mut terms = Numer::new();
        numer_insert(&mut terms, TermKey::unit(d), s);
        ADElement { d, k: 0, terms }
    }

    /// Builds and normalizes an element from raw data.
    pub fn normalize(d: usize, k: u32, terms: Numer) -> ADElement {
        let mut k = k;
        let mut terms = terms;
        while k > 0 {
            match divide_by_zzs(&terms, d) {
                Some(q) => {
                    terms = q;
                    k -= 1;
                }
                None => break,
            }
        }
        if terms.is_empty() {
            k = 0;
        }
        ADElement { d, k, terms }
    }

    pub fn monomial(d: usize, k: u32, key: TermKey, coef: Scalar) -> ADElement {
        let mut terms = Numer::new();
        numer_insert(&mut terms, key, coef);
        ADElement::normalize(d, k, terms)
    }

    /// Generator helpers (1-based index, matching the text format).
    pub fn z(d: usize, i: usize) -> ADElement {
        let mut key = TermKey::unit(d);
        key.z[i - 1] = 1;
        ADElement::monomial(d, 0, key, Scalar::one())
    }

    pub fn zs(d: usize, i: usize) -> ADElement {
        let mut key = TermKey::unit(d);
        key.zs[i - 1] = 1;
        ADElement::monomial(d, 0, key, Scalar::one())
    }

    pub fn dz(d: usize, i: usize) -> ADElement {
        let mut key = TermKey::unit(d);
        key.dz = 1 << (i - 1);
        ADElement::monomial(d, 0, key, Scalar::one())
    }

    pub fn dzs(d: usize, i: usize) -> ADElement {
        let mut key = TermKey::unit(d);
        key.dzs = 1 << (i - 1);
        ADElement::monomial(d, 0, key, Scalar::one())
    }

    /// `(zz*)^{-k}` for `k >= 0`.
    pub fn zzs_inv_pow(d: usize, k: u32) -> ADElement {
        ADElement::monomial(d, k, TermKey::unit(d), Scalar::one())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn denominator_exponent(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> &Numer {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> ADElement {
        if s.is_zero() {
            return ADElement::zero(self.d);
        }
        ADElement {
            d: self.d,
            k: self.k,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> ADElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn add(&self, other: &ADElement) -> ADElement {
        assert_eq!(self.d, other.d, "dimension mismatch");
        let k = self.k.max(other.k);
        let lift = |e: &ADElement| -> Numer {
            let mut n = e.terms.clone();
            for _ in 0..(k - e.k) {
                n = numer_mul(&n, &zzs_poly(self.d));
            }
            n
        };
        let mut terms = lift(self);
        for (key, c) in lift(other) {
            numer_insert(&mut terms, key, c);
        }
        ADElement::normalize(self.d, k, terms)
    }

    pub fn sub(&self, other: &ADElement) -> ADElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ADElement) -> ADElement {
        assert_eq!(self.d, other.d, "dimension mismatch");
        ADElement::normalize(self.d, self.k + other.k, numer_mul(&self.terms, &other.terms))
    }

    /// Total form degree if the element is homogeneous, else `None`.
    /// In the Dolbeault grading only `dz*` factors carry degree.
    pub fn form_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|k| k.form_degree());
        let first = degs.next()?;
        if degs.all(|x| x == first) {
            Some(first)
        } else {
            None
        }
    }

    /// The component of terms with bidegree `(p, q)`.
    pub fn component(&self, p: u32, q: u32) -> ADElement {
        let terms: Numer = self
            .terms
            .iter()
            .filter(|(k, _)| k.bidegree() == (p, q))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        ADElement::normalize(self.d, self.k, terms)
    }

    pub fn bidegrees(&self) -> BTreeSet<(u32, u32)> {
        self.terms.keys().map(|k| k.bidegree()).collect()
    }

    /// Torus weight of a term as an element of the localized algebra
    /// (the denominator `(zz*)^k` has weight zero).
    pub fn term_weights(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().map(|k| k.weight()).collect()
    }

    /// The component supported in one torus weight.
    pub fn weight_component(&self, w: &[i64]) -> ADElement {
        let terms: Numer = self
            .terms
            .iter()
            .filter(|(k, _)| k.weight() == w)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        ADElement::normalize(self.d, self.k, terms)
    }

    /// The Dolbeault differential `dbar = sum_i dz*_i d/dz*_i`, with the
    /// quotient rule applied to the `(zz*)^{-k}` denominator.
    pub fn dbar(&self) -> ADElement {
        let d = self.d;
        let mut main = Numer::new();
        let mut denom_part = Numer::new();
        for (key, coef) in &self.terms {
            let cross = if key.dz.count_ones() % 2 == 1 { -1i64 } else { 1 };
            for i in 0..d {
                // left-insert dz*_i: cross all dz factors, then dz*_j with j < i
                let below = (key.dzs & ((1u32 << i) - 1)).count_ones();
                let insert_sign = cross * if below % 2 == 1 { -1 } else { 1 };
                // d/dz*_i of the monomial part
                if key.zs[i] > 0 && key.dzs & (1 << i) == 0 {
                    let mut nk = key.clone();
                    let b = nk.zs[i];
                    nk.zs[i] -= 1;
                    nk.dzs |= 1 << i;
                    let c = &Scalar::from_int(insert_sign * b as i64) * coef;
                    numer_insert(&mut main, nk, c);
                }
                // quotient rule: dbar (zz*)^{-k} = -k z_i dz*_i (zz*)^{-k-1}
                if self.k > 0 && key.dzs & (1 << i) == 0 {
                    let mut nk = key.clone();
                    nk.z[i] += 1;
                    nk.dzs |= 1 << i;
                    let c = &Scalar::from_int(-(self.k as i64) * insert_sign) * coef;
                    numer_insert(&mut denom_part, nk, c);
                }
            }
        }
        let a = ADElement::normalize(d, self.k, main);
        let b = ADElement::normalize(d, self.k + 1, denom_part);
        a.add(&b)
    }

    /// The holomorphic differential `del = sum_i dz_i d/dz_i`.
    pub fn del(&self) -> ADElement {
        let d = self.d;
        let mut main = Numer::new();
        let mut denom_part = Numer::new();
        for (key, coef) in &self.terms {
            for i in 0..d {
                if key.dz & (1 << i) != 0 {
                    continue;
                }
                let below = (key.dz & ((1u32 << i) - 1)).count_ones();
                let insert_sign = if below % 2 == 1 { -1i64 } else { 1 };
                if key.z[i] > 0 {
                    let mut nk = key.clone();
                    let a = nk.z[i];
                    nk.z[i] -= 1;
                    nk.dz |= 1 << i;
                    let c = &Scalar::from_int(insert_sign * a as i64) * coef;
                    numer_insert(&mut main, nk, c);
                }
                if self.k > 0 {
                    let mut nk = key.clone();
                    nk.zs[i] += 1;
                    nk.dz |= 1 << i;
                    let c = &Scalar::from_int(-(self.k as i64) * insert_sign) * coef;
                    numer_insert(&mut denom_part, nk, c);
                }
            }
        }
        let a = ADElement::normalize(d, self.k, main);
        let b = ADElement::normalize(d, self.k + 1, denom_part);
        a.add(&b)
    }

    /// Interior product with the Euler vector field `xi = sum z*_i d/d(dz*_i)`,
    /// substituting `dz*_i -> z*_i` as an odd derivation.
    pub fn iota_euler(&self) -> ADElement {
        let d = self.d;
        let mut out = Numer::new();
        for (key, coef) in &self.terms {
            let cross = if key.dz.count_ones() % 2 == 1 { -1i64 } else { 1 };
            for i in 0..d {
                if key.dzs & (1 << i) == 0 {
                    continue;
                }
                let below = (key.dzs & ((1u32 << i) - 1)).count_ones();
                let sign = cross * if below % 2 == 1 { -1 } else { 1 };
                let mut nk = key.clone();
                nk.dzs &= !(1 << i);
                nk.zs[i] += 1;
                numer_insert(&mut out, nk, &Scalar::from_int(sign) * coef);
            }
        }
        ADElement::normalize(d, self.k, out)
    }

    /// Membership test for `A_d^{p,q}`: every term has bidegree `(p, |T|)`
    /// with `z*`-homogeneity `|b| - k = -|T|`, and the Euler contraction
    /// vanishes exactly.
    pub fn check_membership(&self, p: u32, q: u32) -> bool {
        for key in self.terms.keys() {
            let (tp, tq) = key.bidegree();
            if tp != p || tq != q {
                return false;
            }
            if key.zs_total() - self.k as i64 != -(tq as i64) {
                return false;
            }
        }
        self.iota_euler().is_zero()
    }

    /// The Bochner-Martinelli representative of `H^{d-1}`, with the
    /// `tau^{-d}` prefactor standing for `1/(2 pi i)^d`.
    pub fn bm_kernel(d: usize) -> ADElement {
        assert!(d >= 1);
        let mut fact = 1i64;
        for i in 1..d as i64 {
            fact *= i;
        }
        let pref = &Scalar::from_int(fact) * &Scalar::tau_pow(-(d as i32));
        let mut terms = Numer::new();
        for i in 0..d {
            let mut key = TermKey::unit(d);
            key.zs[i] = 1;
            key.dzs = ((1u32 << d) - 1) & !(1 << i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            numer_insert(&mut terms, key, &Scalar::from_int(sign) * &pref);
        }
        ADElement::normalize(d, d as u32, terms)
    }

    /// `dz_1 ^ ... ^ dz_d`.
    pub fn dz_top(d: usize) -> ADElement {
        let mut key = TermKey::unit(d);
        key.dz = (1u32 << d) - 1;
        ADElement::monomial(d, 0, key, Scalar::one())
    }
}

// ---------------------------------------------------------------------
// Weight windows and the linear-algebra slices behind residue/cohomology
// ---------------------------------------------------------------------

/// Finite truncation parameters: a torus-weight box, a cap on the
/// canonical numerator degree admitted to reports, and the base
/// denominator exponent used for common-denominator linear algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightWindow {
    pub weight_lo: Vec<i64>,
    pub weight_hi: Vec<i64>,
    pub deg_max: u32,
    pub k_max: u32,
}

impl WeightWindow {
    /// A symmetric box `[-r, r]^d`.
    pub fn symmetric(d: usize, r: i64, deg_max: u32, k_max: u32) -> WeightWindow {
        WeightWindow {
            weight_lo: vec![-r; d],
            weight_hi: vec![r; d],
            deg_max,
            k_max,
        }
    }

    pub fn dim(&self) -> usize {
        self.weight_lo.len()
    }

    pub fn weights(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut out = vec![Vec::new()];
        for i in 0..d {
            let mut next = Vec::new();
            for w in &out {
                for v in self.weight_lo[i]..=self.weight_hi[i] {
                    let mut w2 = w.clone();
                    w2.push(v);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }
}

/// Errors from windowed computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowError {
    /// The weight-zero quotient normalizing the residue is not a line;
    /// the caller must raise `k_max`.
    WindowTooSmall(String),
    /// Dimensions changed between `k_max` and `k_max + 1` runs.
    Unstable(String),
    /// The input is not in the expected bigraded component.
    NotInComponent(String),
}

/// The fixed-weight, fixed-denominator slice of `A_d^{p,q}`: monomial
/// keys with `|b| = k - q` and the exponents of `z` forced by the weight,
/// intersected with the kernel of the Euler contraction.
pub(crate) struct Slice {
    pub d: usize,
    pub k: u32,
    pub keys: Vec<TermKey>,
    /// Basis of the Euler-contraction kernel in `keys` coordinates.
    pub basis: Vec<Vec<Scalar>>,
}

impl Slice {
    pub(crate) fn build(d: usize, p: u32, q: u32, weight: &[i64], k: u32) -> Slice {
        let mut keys = Vec::new();
        let full = (1u32 << d) - 1;
        let masks =
            |count: u32| -> Vec<u32> { (0..=full).filter(|m| m.count_ones() == count).collect() };
        let b_total = k as i64 - q as i64;
        if b_total >= 0 {
            for &smask in &masks(p) {
                for &tmask in &masks(q) {
                    // enumerate b >= 0 with |b| = b_total
                    let mut stack = vec![(Vec::<u16>::new(), b_total)];
                    while let Some((partial, rem)) = stack.pop() {
                        if partial.len() == d {
                            if rem != 0 {
                                continue;
                            }
                            let b = partial;
                            let mut a = Vec::with_capacity(d);
                            let mut ok = true;
                            for i in 0..d {
                                let ai = weight[i] + b[i] as i64
                                    - (((smask >> i) & 1) as i64)
                                    + (((tmask >> i) & 1) as i64);
                                if ai < 0 {
                                    ok = false;
                                    break;
                                }
                                a.push(ai as u16);
                            }
                            if ok {
                                keys.push(TermKey {
                                    z: a,
                                    zs: b,
                                    dz: smask,
                                    dzs: tmask,
                                });
                            }
                            continue;
                        }
                        let last = partial.len() == d - 1;
                        for v in 0..=rem {
                            if last && v != rem {
                                continue;
                            }
                            let mut nx = partial.clone();
                            nx.push(v as u16);
                            stack.push((nx, rem - v));
                        }
                    }
                }
            }
        }
        keys.sort();
        // kernel of the Euler contraction
        let basis = if q == 0 {
            (0..keys.len())
                .map(|i| {
                    let mut v = vec![Scalar::zero(); keys.len()];
                    v[i] = Scalar::one();
                    v
                })
                .collect()
        } else {
            let mut target_keys: BTreeMap<TermKey, usize> = BTreeMap::new();
            let mut triplets = Vec::new();
            for (col, key) in keys.iter().enumerate() {
                let mono = ADElement {
                    d,
                    k,
                    terms: {
                        let mut n = Numer::new();
                        n.insert(key.clone(), Scalar::one());
                        n
                    },
                };
                // raw contraction on the numerator (same denominator)
                let mut contracted = Numer::new();
                for (kk, cc) in &mono.terms {
                    let cross = if kk.dz.count_ones() % 2 == 1 { -1i64 } else { 1 };
                    for i in 0..d {
                        if kk.dzs & (1 << i) == 0 {
                            continue;
                        }
                        let below = (kk.dzs & ((1u32 << i) - 1)).count_ones();
                        let sign = cross * if below % 2 == 1 { -1 } else { 1 };
                        let mut nk = kk.clone();
                        nk.dzs &= !(1 << i);
                        nk.zs[i] += 1;
                        numer_insert(&mut contracted, nk, &Scalar::from_int(sign) * cc);
                    }
                }
                for (kk, cc) in contracted {
                    let next = target_keys.len();
                    let row = *target_keys.entry(kk).or_insert(next);
                    triplets.push((row, col, cc));
                }
            }
            let mut m = SparseMatrix::zero(target_keys.len(), keys.len());
            for (r, c, v) in triplets {
                m.set(r, c, v);
            }
            m.rank_kernel().kernel
        };
        Slice { d, k, keys, basis }
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a raw numerator (already at denominator `self.k`)
    /// over `keys`; `None` if it sticks out of the slice.
    pub(crate) fn coords(&self, numer: &Numer) -> Option<Vec<Scalar>> {
        let index: BTreeMap<&TermKey, usize> =
            self.keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut v = vec![Scalar::zero(); self.keys.len()];
        for (key, c) in numer {
            let &i = index.get(key)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// A slice basis vector as an honest (normalized) element.
    pub(crate) fn element(&self, coeffs: &[Scalar]) -> ADElement {
        let mut numer = Numer::new();
        for (v, key) in coeffs.iter().zip(&self.keys) {
            numer_insert(&mut numer, key.clone(), v.clone());
        }
        ADElement::normalize(self.d, self.k, numer)
    }

    /// Matrix of `dbar` from this slice (denominator `k`) into `target`
    /// (denominator `k + 1`), in Euler-kernel bases.
    pub(crate) fn dbar_matrix(&self, target: &Slice) -> Option<SparseMatrix<Scalar>> {
        assert_eq!(target.k, self.k + 1);
        // target basis as a column matrix over target.keys to solve against
        let key_dim = target.keys.len();
        let basis_mat = SparseMatrix::from_columns(key_dim, &target.basis);
        let mut cols = Vec::new();
        for b in &self.basis {
            let elem = raw_element(self.d, self.k, b, &self.keys);
            let image = dbar_raw(&elem, self.d, self.k);
            let coords = target.coords(&image)?;
            let sol = basis_mat.solve(&coords)?;
            cols.push(sol);
        }
        Some(SparseMatrix::from_columns(target.dim(), &cols))
    }
}

/// Random member of `A_d^{p,q}` in a fixed torus weight, drawn from the
/// Euler-kernel slice at denominator exponent `k`. Coefficients are
/// small integers; the result can be zero when the slice is trivial.
pub fn random_form(
    d: usize,
    p: u32,
    q: u32,
    weight: &[i64],
    k: u32,
    rng: &mut dyn rand_core::RngCore,
) -> ADElement {
    let slice = Slice::build(d, p, q, weight, k.max(q));
    let mut acc = ADElement::zero(d);
    for b in &slice.basis {
        let c = (rng.next_u32() % 5) as i64 - 2;
        if c != 0 {
            acc = acc.add(&slice.element(b).scale(&Scalar::from_int(c)));
        }
    }
    acc
}

fn raw_element(_d: usize, _k: u32, coeffs: &[Scalar], keys: &[TermKey]) -> Numer {
    let mut numer = Numer::new();
    for (v, key) in coeffs.iter().zip(keys) {
        numer_insert(&mut numer, key.clone(), v.clone());
    }
    numer
}

/// `dbar` on a raw numerator at denominator `k`, producing a raw
/// numerator at denominator `k + 1`: `dbar(N) * zz* - k (sum z_i dz*_i) N`.
fn dbar_raw(numer: &Numer, d: usize, k: u32) -> Numer {
    let mut derivative = Numer::new();
    let mut denom_part = Numer::new();
    for (key, coef) in numer {
        let cross = if key.dz.count_ones() % 2 == 1 { -1i64 } else { 1 };
        for i in 0..d {
            let below = (key.dzs & ((1u32 << i) - 1)).count_ones();
            let insert_sign = cross * if below % 2 == 1 { -1 } else { 1 };
            if key.zs[i] > 0 && key.dzs & (1 << i) == 0 {
                let mut nk = key.clone();
                let b = nk.zs[i];
                nk.zs[i] -= 1;
                nk.dzs |= 1 << i;
                numer_insert(
                    &mut derivative,
                    nk,
                    &Scalar::from_int(insert_sign * b as i64) * coef,
                );
            }
            if k > 0 && key.dzs & (1 << i) == 0 {
                let mut nk = key.clone();
                nk.z[i] += 1;
                nk.dzs |= 1 << i;
                numer_insert(
                    &mut denom_part,
                    nk,
                    &Scalar::from_int(-(k as i64) * insert_sign) * coef,
                );
            }
        }
    }
    let mut out = numer_mul(&derivative, &zzs_poly(d));
    for (kk, cc) in denom_part {
        numer_insert(&mut out, kk, cc);
    }
    out
}

// ---------------------------------------------------------------------
// Residue
// ---------------------------------------------------------------------

/// The unique torus-equivariant residue on `A_d^{d,d-1}` normalized by
/// `Res(f * omega_BM * dz_1...dz_d) = f(0)`.
///
/// Computed by exact linear algebra: project to torus weight zero,
/// reduce modulo the image of `dbar`, and read off the coefficient on
/// the class of `omega_BM * dz`.
pub fn residue(omega: &ADElement, window: &WeightWindow) -> Result<Scalar, WindowError> {
    let d = omega.dim();
    if omega.is_zero() {
        return Ok(Scalar::zero());
    }
    if !omega.check_membership(d as u32, d as u32 - 1) {
        return Err(WindowError::NotInComponent(format!(
            "residue input must lie in A^({},{})",
            d,
            d - 1
        )));
    }
    let zero_w = vec![0i64; d];
    let w0 = omega.weight_component(&zero_w);
    if w0.is_zero() {
        return Ok(Scalar::zero());
    }
    let bm = ADElement::bm_kernel(d).mul(&ADElement::dz_top(d));
    let run = |k_top: u32| -> Result<Scalar, WindowError> {
        let k_top = k_top.max(w0.k).max(bm.k);
        let top = Slice::build(d, d as u32, d as u32 - 1, &zero_w, k_top);
        let image = if d >= 2 {
            let below = Slice::build(d, d as u32, d as u32 - 2, &zero_w, k_top - 1);
            below.dbar_matrix(&top).ok_or_else(|| {
                WindowError::WindowTooSmall("dbar image escapes the window".into())
            })?
        } else {
            SparseMatrix::zero(top.dim(), 0)
        };
        let quotient_dim = top.dim() - image.rank();
        if quotient_dim != 1 {
            return Err(WindowError::WindowTooSmall(format!(
                "weight-zero quotient has dimension {}, expected 1; raise k_max",
                quotient_dim
            )));
        }
        let basis_mat = SparseMatrix::from_columns(top.keys.len(), &top.basis);
        let omega_coords = basis_mat
            .solve(&top.coords(&lift_numer(&w0, k_top)).ok_or_else(|| {
                WindowError::WindowTooSmall("element escapes the window slice".into())
            })?)
            .ok_or_else(|| WindowError::NotInComponent("element fails the Euler contraction".into()))?;
        let bm_coords = basis_mat
            .solve(&top.coords(&lift_numer(&bm, k_top)).unwrap())
            .expect("omega_BM dz lies in the slice");
        // solve [image columns | bm] x = omega; residue is the bm coefficient
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for c in 0..image.cols() {
            let mut col = vec![Scalar::zero(); image.rows()];
            for (r, cc, v) in image.entries() {
                if cc == c {
                    col[r] = v.clone();
                }
            }
            cols.push(col);
        }
        cols.push(bm_coords);
        let mat = SparseMatrix::from_columns(top.dim(), &cols);
        let sol = mat.solve(&omega_coords).ok_or_else(|| {
            WindowError::WindowTooSmall("element is not reachable from the bm line mod dbar".into())
        })?;
        Ok(sol[image.cols()].clone())
    };
    let base_k = window.k_max.max(d as u32);
    let first = run(base_k)?;
    let second = run(base_k + 1)?;
    if first != second {
        return Err(WindowError::Unstable(
            "residue changed between k_max and k_max+1".into(),
        ));
    }
    Ok(first)
}

fn lift_numer(elem: &ADElement, k: u32) -> Numer {
    let mut numer = elem.terms.clone();
    for _ in 0..(k - elem.k) {
        numer = numer_mul(&numer, &zzs_poly(elem.d));
    }
    numer
}

// ---------------------------------------------------------------------
// Windowed cohomology of A_d
// ---------------------------------------------------------------------

/// Per-(q, weight) cohomology dimensions of `(A_d^{p,*}, dbar)` inside
/// the window. Every answer is recomputed at `k_max + 1`; instability is
/// an error, never a silent return.
pub fn cohomology_ad(
    window: &WeightWindow,
    p: u32,
) -> Result<BTreeMap<(u32, Vec<i64>), usize>, WindowError> {
    let d = window.dim();
    let run = |k_base: u32| -> Result<BTreeMap<(u32, Vec<i64>), usize>, WindowError> {
        let mut out = BTreeMap::new();
        for w in window.weights() {
            let slices: Vec<Slice> = (0..=d as u32)
                .map(|q| Slice::build(d, p, q, &w, k_base + q))
                .collect();
            let mut mats = Vec::new();
            for q in 0..d {
                let m = slices[q].dbar_matrix(&slices[q + 1]).ok_or_else(|| {
                    WindowError::WindowTooSmall("dbar image escapes the window".into())
                })?;
                mats.push(m);
            }
            for q in 0..=d {
                let ker = if q < d {
                    mats[q].rank_kernel().kernel.len()
                } else {
                    slices[q].dim()
                };
                let im = if q > 0 { mats[q - 1].rank() } else { 0 };
                out.insert((q as u32, w.clone()), ker - im);
            }
        }
        Ok(out)
    };
    let first = run(window.k_max)?;
    let second = run(window.k_max + 1)?;
    if first != second {
        let diff: Vec<String> = first
            .iter()
            .filter(|(key, v)| second.get(*key) != Some(v))
            .map(|((q, w), _)| format!("q={} w={:?}", q, w))
            .collect();
        return Err(WindowError::Unstable(format!(
            "dimensions changed between k_max and k_max+1 at {}",
            diff.join(", ")
        )));
    }
    Ok(first)
}

// ---------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------

// The text format is `coef*z1^a1*zs1^b1*dz1*dzs2/(zzs)^k`, terms joined
// with " + " / " - ", `zs` = z*, `dzs` = dz*, `zzs` = zz*.
impl fmt::Display for ADElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coef) in &self.terms {
            let (coef_str, negative) = {
                let s = coef.to_string();
                if let Some(stripped) = s.strip_prefix('-') {
                    (String::from(stripped), true)
                } else {
                    (s, false)
                }
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let needs_parens = coef_str.contains(' ') || coef_str.contains('/');
            if needs_parens {
                write!(f, "({})", coef_str)?;
            } else {
                write!(f, "{}", coef_str)?;
            }
            for i in 0..self.d {
                if key.z[i] > 0 {
                    write!(f, "*z{}", i + 1)?;
                    if key.z[i] > 1 {
                        write!(f, "^{}", key.z[i])?;
                    }
                }
            }
            for i in 0..self.d {
                if key.zs[i] > 0 {
                    write!(f, "*zs{}", i + 1)?;
                    if key.zs[i] > 1 {
                        write!(f, "^{}", key.zs[i])?;
                    }
                }
            }
            for i in 0..self.d {
                if key.dz & (1 << i) != 0 {
                    write!(f, "*dz{}", i + 1)?;
                }
            }
            for i in 0..self.d {
                if key.dzs & (1 << i) != 0 {
                    write!(f, "*dzs{}", i + 1)?;
                }
            }
            if self.k > 0 {
                write!(f, "/(zzs)^{}", self.k)?;
            }
        }
        Ok(())
    }
}

/// Error from [`ADElement::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseAdError {
    pub message: String,
    pub position: usize,
}

impl ADElement {
    /// Parses the textual form produced by `Display`.
    pub fn parse(d: usize, input: &str) -> Result<ADElement, ParseAdError> {
        parse_ad(d, input)
    }
}

fn parse_ad(d: usize, input: &str) -> Result<ADElement, ParseAdError> {
    let bytes = input.as_bytes();
    let err = |pos: usize, msg: &str| ParseAdError {
        message: msg.to_string(),
        position: pos,
    };
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut acc = ADElement::zero(d);
    let mut pending_sign = 1i64;
    skip_ws(&mut pos);
    if pos < bytes.len() && bytes[pos] == b'-' {
        pending_sign = -1;
        pos += 1;
    } else if pos < bytes.len() && bytes[pos] == b'+' {
        pos += 1;
    }
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(err(pos, "expected term"));
        }
        // one term: factors separated by '*', optional /(zzs)^k suffix
        let mut term = ADElement::from_scalar(d, Scalar::from_int(pending_sign));
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            let c = bytes[pos];
            if c == b'(' {
                // parenthesized scalar coefficient
                let mut depth = 0usize;
                let start = pos;
                let mut end = None;
                while pos < bytes.len() {
                    match bytes[pos] {
                        b'(' => depth += 1,
                        b')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(pos);
                                pos += 1;
                                break;
                            }
                        }
                        _ => {}
                    }
                    pos += 1;
                }
                let end = end.ok_or_else(|| err(start, "unbalanced parenthesis"))?;
                let inner = &input[start + 1..end];
                let s = Scalar::parse(inner)
                    .map_err(|e| err(start + 1 + e.position, "bad scalar coefficient"))?;
                term = term.scale(&s);
            } else if input[pos..].starts_with("zzs") {
                pos += 3;
                let e = parse_exponent(bytes, &mut pos).unwrap_or(1);
                let mut zzs = ADElement::zero(d);
                for i in 1..=d {
                    zzs = zzs.add(&ADElement::z(d, i).mul(&ADElement::zs(d, i)));
                }
                for _ in 0..e {
                    term = term.mul(&zzs);
                }
            } else if input[pos..].starts_with("dzs") {
                pos += 3;
                let i = parse_index(bytes, &mut pos, d).map_err(|m| err(pos, m))?;
                term = term.mul(&ADElement::dzs(d, i));
            } else if input[pos..].starts_with("dz") {
                pos += 2;
                let i = parse_index(bytes, &mut pos, d).map_err(|m| err(pos, m))?;
                term = term.mul(&ADElement::dz(d, i));
            } else if input[pos..].starts_with("zs") {
                pos += 2;
                let i = parse_index(bytes, &mut pos, d).map_err(|m| err(pos, m))?;
                let e = parse_exponent(bytes, &mut pos).unwrap_or(1);
                for _ in 0..e {
                    term = term.mul(&ADElement::zs(d, i));
                }
            } else if c == b'z' {
                pos += 1;
                let i = parse_index(bytes, &mut pos, d).map_err(|m| err(pos, m))?;
                let e = parse_exponent(bytes, &mut pos).unwrap_or(1);
                for _ in 0..e {
                    term = term.mul(&ADElement::z(d, i));
                }
            } else if c.is_ascii_digit() || c == b't' {
                // bare scalar token: digits, fraction, tau powers
                let start = pos;
                while pos < bytes.len() {
                    let b = bytes[pos];
                    if b.is_ascii_digit() || b == b'/' || b == b'^' || b == b't' || b == b'a' || b == b'u'
                    {
                        // '/' followed by '(' is the denominator suffix
                        if b == b'/' && pos + 1 < bytes.len() && bytes[pos + 1] == b'(' {
                            break;
                        }
                        pos += 1;
                    } else if b == b'-' && pos > start && bytes[pos - 1] == b'^' {
                        pos += 1;
                    } else {
                        break;
                    }
                }
                let s = Scalar::parse(&input[start..pos])
                    .map_err(|e| err(start + e.position, "bad scalar coefficient"))?;
                term = term.scale(&s);
            } else {
                break;
            }
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if pos + 1 < bytes.len() && bytes[pos] == b'/' && bytes[pos + 1] == b'(' {
                // denominator suffix /(zzs)^k
                pos += 2;
                if !input[pos..].starts_with("zzs") {
                    return Err(err(pos, "expected zzs in denominator"));
                }
                pos += 3;
                if pos >= bytes.len() || bytes[pos] != b')' {
                    return Err(err(pos, "expected ')'"));
                }
                pos += 1;
                let e = parse_exponent(bytes, &mut pos).unwrap_or(1);
                term = term.mul(&ADElement::zzs_inv_pow(d, e as u32));
            }
            break;
        }
        acc = acc.add(&term);
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Ok(acc);
        }
        match bytes[pos] {
            b'+' => {
                pending_sign = 1;
                pos += 1;
            }
            b'-' => {
                pending_sign = -1;
                pos += 1;
            }
            _ => return Err(err(pos, "trailing input")),
        }
    }
}

fn parse_index(bytes: &[u8], pos: &mut usize, d: usize) -> Result<usize, &'static str> {
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err("expected variable index");
    }
    let s = core::str::from_utf8(&bytes[start..*pos]).unwrap();
    let i: usize = s.parse().map_err(|_| "bad variable index")?;
    if i == 0 || i > d {
        return Err("variable index out of range");
    }
    Ok(i)
}

fn parse_exponent(bytes: &[u8], pos: &mut usize) -> Option<u64> {
    if *pos < bytes.len() && bytes[*pos] == b'^' {
        let mut p = *pos + 1;
        let start = p;
        while p < bytes.len() && bytes[p].is_ascii_digit() {
            p += 1;
        }
        if p == start {
            return None;
        }
        let s = core::str::from_utf8(&bytes[start..p]).unwrap();
        *pos = p;
        s.parse().ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
