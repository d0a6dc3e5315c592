//! The sphere current algebra `A_d (x) g`, its higher residue cocycle,
//! the resulting L-infinity central extension, and the iterated-loop
//! (Laurent) incarnation of the same cocycle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use crate::jouanolou::{random_form, residue, ADElement, WeightWindow, WindowError};
use crate::lie::{FiniteLieAlgebra, InvariantPolynomial};
use crate::scalar::Scalar;

/// An element of `A_d (x) g`: a finite sum of Lie basis elements with
/// `A_d` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereAlgebraElement {
    d: usize,
    gdim: usize,
    terms: BTreeMap<usize, ADElement>,
}

impl SphereAlgebraElement {
    pub fn zero(d: usize, gdim: usize) -> SphereAlgebraElement {
        SphereAlgebraElement {
            d,
            gdim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_pair(gdim: usize, x: usize, a: ADElement) -> SphereAlgebraElement {
        assert!(x < gdim);
        let d = a.dim();
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(x, a);
        }
        SphereAlgebraElement {
            d,
            gdim,
            terms,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gdim(&self) -> usize {
        self.gdim
    }

    pub fn terms(&self) -> &BTreeMap<usize, ADElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SphereAlgebraElement) -> SphereAlgebraElement {
        assert_eq!((self.d, self.gdim), (other.d, other.gdim));
        let mut terms = self.terms.clone();
        for (&x, a) in &other.terms {
            let merged = match terms.get(&x) {
                Some(b) => b.add(a),
                None => a.clone(),
            };
            if merged.is_zero() {
                terms.remove(&x);
            } else {
                terms.insert(x, merged);
            }
        }
        SphereAlgebraElement {
            d: self.d,
            gdim: self.gdim,
            terms,
        }
    }

    pub fn scale(&self, s: &Scalar) -> SphereAlgebraElement {
        if s.is_zero() {
            return SphereAlgebraElement::zero(self.d, self.gdim);
        }
        SphereAlgebraElement {
            d: self.d,
            gdim: self.gdim,
            terms: self.terms.iter().map(|(&x, a)| (x, a.scale(s))).collect(),
        }
    }

    pub fn neg(&self) -> SphereAlgebraElement {
        self.scale(&Scalar::from_int(-1))
    }

    /// Termwise Dolbeault differential.
    pub fn dbar(&self) -> SphereAlgebraElement {
        let mut out = SphereAlgebraElement::zero(self.d, self.gdim);
        for (&x, a) in &self.terms {
            out = out.add(&SphereAlgebraElement::from_pair(self.gdim, x, a.dbar()));
        }
        out
    }

    /// Pointwise bracket `[x (x) a, y (x) b] = [x,y] (x) ab`.
    pub fn bracket(&self, g: &FiniteLieAlgebra, other: &SphereAlgebraElement) -> SphereAlgebraElement {
        assert_eq!(g.dim(), self.gdim);
        let mut out = SphereAlgebraElement::zero(self.d, self.gdim);
        for (&x, a) in &self.terms {
            for (&y, b) in &other.terms {
                let ab = a.mul(b);
                if ab.is_zero() {
                    continue;
                }
                for (k, c) in g.bracket_basis(x, y).iter().enumerate() {
                    if !c.is_zero() {
                        out = out.add(&SphereAlgebraElement::from_pair(
                            self.gdim,
                            k,
                            ab.scale(c),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Common form degree of all `A_d` factors, `None` if mixed.
    pub fn form_degree(&self) -> Option<i64> {
        let mut deg = None;
        for a in self.terms.values() {
            let fd = a.form_degree()?;
            match deg {
                None => deg = Some(fd),
                Some(existing) if existing == fd => {}
                _ => return None,
            }
        }
        deg
    }

    /// True when every `A_d` factor passes membership for `(0, q)` for
    /// some common `q`.
    pub fn check_membership(&self) -> bool {
        let Some(q) = self.form_degree() else {
            return self.is_zero();
        };
        self.terms
            .values()
            .all(|a| a.check_membership(0, q as u32))
    }
}

/// The higher residue cocycle
/// `theta(x_0,...,x_d) Res(a_0 del(a_1) ... del(a_d))`,
/// evaluated on `d + 1` sphere algebra elements. Only the `(d, d-1)`
/// bidegree of the integrand contributes.
pub fn fhk_cocycle(
    theta: &InvariantPolynomial,
    inputs: &[SphereAlgebraElement],
    window: &WeightWindow,
) -> Result<Scalar, WindowError> {
    assert!(!inputs.is_empty());
    let d = inputs[0].dim();
    assert_eq!(inputs.len(), d + 1, "the cocycle has arity d + 1");
    let gdim = inputs[0].gdim();
    assert_eq!(theta.dim(), gdim);
    assert_eq!(theta.degree(), d + 1);
    let mut total = Scalar::zero();
    // distribute over the Lie basis terms of every slot
    let mut slots: Vec<Vec<(usize, &ADElement)>> = Vec::new();
    for e in inputs {
        slots.push(e.terms.iter().map(|(&x, a)| (x, a)).collect());
        if slots.last().unwrap().is_empty() {
            return Ok(Scalar::zero());
        }
    }
    let mut idx = vec![0usize; inputs.len()];
    loop {
        let tuple: Vec<usize> = idx.iter().enumerate().map(|(s, &i)| slots[s][i].0).collect();
        let tv = theta.eval_basis(&tuple);
        if !tv.is_zero() {
            let mut form = slots[0][idx[0]].1.clone();
            for (s, &i) in idx.iter().enumerate().skip(1) {
                form = form.mul(&slots[s][i].1.del());
                if form.is_zero() {
                    break;
                }
            }
            let top = form.component(d as u32, d as u32 - 1);
            if !top.is_zero() {
                total = &total + &(&tv * &residue(&top, window)?);
            }
        }
        let mut s = 0;
        loop {
            if s == idx.len() {
                return Ok(total);
            }
            idx[s] += 1;
            if idx[s] < slots[s].len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

// ---------------------------------------------------------------------
// The L-infinity interface and the central extension
// ---------------------------------------------------------------------

/// Minimal interface the structure checker needs: graded elements,
/// brackets `l_k`, and a sampler of homogeneous elements.
pub trait LInfinity {
    type Elem: Clone + PartialEq + core::fmt::Debug;

    /// Largest arity with a nonzero bracket.
    fn top_arity(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, s: &Scalar, e: &Self::Elem) -> Self::Elem;
    /// Cohomological degree of a homogeneous element.
    fn degree(&self, e: &Self::Elem) -> Option<i64>;
    /// `l_k` on a tuple; zero for arities without a bracket.
    fn bracket(&self, k: usize, args: &[Self::Elem]) -> Self::Elem;
    /// Random homogeneous element.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn describe(&self, e: &Self::Elem) -> String;
}

/// An element of the centrally extended sphere algebra: a current part
/// plus a multiple of the central generator `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub current: SphereAlgebraElement,
    pub central: Scalar,
}

/// The central extension of `A_d (x) g` by the higher residue cocycle:
/// `l_1 = dbar`, `l_2` the pointwise bracket, `l_{d+1}` the cocycle
/// into the central line, all other brackets zero. Evaluation is exact
/// and lazy; no truncated structure-constant table is stored, so the
/// L-infinity identities can hold on the nose.
pub struct SphereExtension {
    g: FiniteLieAlgebra,
    theta: InvariantPolynomial,
    d: usize,
    window: WeightWindow,
    /// Weight box radius used by the sampler; kept small enough that
    /// products of `top_arity` samples stay residue-computable.
    sample_radius: i64,
}

/// Constructs the extension. `theta` must be invariant of degree `d+1`.
pub fn build_extension(
    g: FiniteLieAlgebra,
    theta: InvariantPolynomial,
    d: usize,
    window: WeightWindow,
) -> SphereExtension {
    assert_eq!(theta.degree(), d + 1);
    assert_eq!(theta.dim(), g.dim());
    assert!(
        crate::lie::check_invariance(&theta, &g),
        "the cocycle requires an invariant polynomial"
    );
    SphereExtension {
        g,
        theta,
        d,
        window,
        sample_radius: 2,
    }
}

impl SphereExtension {
    pub fn algebra(&self) -> &FiniteLieAlgebra {
        &self.g
    }

    pub fn theta(&self) -> &InvariantPolynomial {
        &self.theta
    }

    pub fn theta_mut(&mut self) -> &mut InvariantPolynomial {
        &mut self.theta
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn window(&self) -> &WeightWindow {
        &self.window
    }

    /// The central coefficient of `l_{d+1}`.
    pub fn cocycle(&self, inputs: &[SphereAlgebraElement]) -> Result<Scalar, WindowError> {
        fhk_cocycle(&self.theta, inputs, &self.window)
    }
}

impl LInfinity for SphereExtension {
    type Elem = ExtElement;

    fn top_arity(&self) -> usize {
        self.d + 1
    }

    fn zero(&self) -> ExtElement {
        ExtElement {
            current: SphereAlgebraElement::zero(self.d, self.g.dim()),
            central: Scalar::zero(),
        }
    }

    fn is_zero(&self, e: &ExtElement) -> bool {
        e.current.is_zero() && e.central.is_zero()
    }

    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement {
            current: a.current.add(&b.current),
            central: &a.central + &b.central,
        }
    }

    fn scale(&self, s: &Scalar, e: &ExtElement) -> ExtElement {
        ExtElement {
            current: e.current.scale(s),
            central: s * &e.central,
        }
    }

    fn degree(&self, e: &ExtElement) -> Option<i64> {
        // K sits in degree 0
        match (e.current.is_zero(), e.central.is_zero()) {
            (true, _) => Some(0),
            (false, true) => e.current.form_degree(),
            (false, false) => {
                if e.current.form_degree() == Some(0) {
                    Some(0)
                } else {
                    None
                }
            }
        }
    }

    fn bracket(&self, k: usize, args: &[ExtElement]) -> ExtElement {
        assert_eq!(args.len(), k);
        match k {
            1 => ExtElement {
                current: args[0].current.dbar(),
                central: Scalar::zero(),
            },
            2 => {
                let mut out = ExtElement {
                    current: args[0].current.bracket(&self.g, &args[1].current),
                    central: Scalar::zero(),
                };
                if self.top_arity() == 2 {
                    out.central = self
                        .cocycle(&[args[0].current.clone(), args[1].current.clone()])
                        .expect("cocycle window too small for sampled elements");
                }
                out
            }
            k if k == self.top_arity() => {
                let currents: Vec<SphereAlgebraElement> =
                    args.iter().map(|e| e.current.clone()).collect();
                ExtElement {
                    current: SphereAlgebraElement::zero(self.d, self.g.dim()),
                    central: self
                        .cocycle(&currents)
                        .expect("cocycle window too small for sampled elements"),
                }
            }
            _ => self.zero(),
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> ExtElement {
        let q = (rng.next_u32() as usize) % self.d; // degrees 0..d-1
        let r = self.sample_radius;
        let weight: Vec<i64> =
            (0..self.d).map(|_| (rng.next_u32() % (2 * r as u32 + 1)) as i64 - r).collect();
        let mut current = SphereAlgebraElement::zero(self.d, self.g.dim());
        for _ in 0..(1 + rng.next_u32() % 2) {
            let a = random_form(self.d, 0, q as u32, &weight, q as u32 + 1, rng);
            let x = (rng.next_u32() as usize) % self.g.dim();
            current = current.add(&SphereAlgebraElement::from_pair(self.g.dim(), x, a));
        }
        let central = if q == 0 && rng.next_u32() % 4 == 0 {
            Scalar::from_int((rng.next_u32() % 3) as i64)
        } else {
            Scalar::zero()
        };
        ExtElement { current, central }
    }

    fn describe(&self, e: &ExtElement) -> String {
        let mut parts: Vec<String> = e
            .current
            .terms()
            .iter()
            .map(|(&x, a)| format!("{} (x) [{}]", self.g.label(x), a))
            .collect();
        if !e.central.is_zero() {
            parts.push(format!("{} K", e.central));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

// ---------------------------------------------------------------------
// The structure checker
// ---------------------------------------------------------------------

/// One failed identity, with the witnessing tuple.
#[derive(Debug, Clone)]
pub struct LInfinityViolation {
    pub arity: usize,
    pub witness: Vec<String>,
    pub discrepancy: String,
}

#[derive(Debug, Clone)]
pub struct LInfinityReport {
    pub samples: usize,
    pub checks_run: usize,
    pub violations: Vec<LInfinityViolation>,
}

impl LInfinityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the generalized Jacobi identities
/// `sum_{i+j=n+1} (-1)^{i(j-1)} sum_{unshuffles} chi(sigma)
///  l_j(l_i(x_{sigma(1)},...,x_{sigma(i)}), x_{sigma(i+1)},...) = 0`
/// for arities `n = 1 .. top_arity + 1` on random homogeneous tuples.
pub fn check_l_infinity<L: LInfinity>(alg: &L, samples: usize, seed: u64) -> LInfinityReport {
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = LInfinityReport {
        samples,
        checks_run: 0,
        violations: Vec::new(),
    };
    let max_arity = alg.top_arity() + 1;
    for _ in 0..samples {
        for n in 1..=max_arity {
            let tuple: Vec<L::Elem> = (0..n).map(|_| alg.sample(&mut rng)).collect();
            if tuple.iter().any(|e| alg.degree(e).is_none()) {
                continue;
            }
            report.checks_run += 1;
            let total = jacobi_identity(alg, &tuple);
            if !alg.is_zero(&total) {
                report.violations.push(LInfinityViolation {
                    arity: n,
                    witness: tuple.iter().map(|e| alg.describe(e)).collect(),
                    discrepancy: alg.describe(&total),
                });
                if report.violations.len() >= 3 {
                    return report;
                }
            }
        }
    }
    report
}

/// The left-hand side of the arity-n generalized Jacobi identity.
pub fn jacobi_identity<L: LInfinity>(alg: &L, tuple: &[L::Elem]) -> L::Elem {
    let n = tuple.len();
    let degrees: Vec<i64> = tuple.iter().map(|e| alg.degree(e).unwrap()).collect();
    let mut total = alg.zero();
    for i in 1..=n {
        let j = n + 1 - i;
        if j > alg.top_arity() || i > alg.top_arity() {
            // both inner and outer brackets must exist
            continue;
        }
        let outer_sign = if (i * (j - 1)) % 2 == 0 { 1i64 } else { -1 };
        for subset in combinations(n, i) {
            // sigma = subset (sorted) followed by the complement (sorted)
            let mut perm: Vec<usize> = subset.clone();
            perm.extend((0..n).filter(|x| !subset.contains(x)));
            let chi = perm_sign(&perm) * koszul_perm_sign(&perm, &degrees);
            let inner_args: Vec<L::Elem> = subset.iter().map(|&x| tuple[x].clone()).collect();
            let inner = alg.bracket(i, &inner_args);
            if alg.is_zero(&inner) {
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(perm[i..].iter().map(|&x| tuple[x].clone()));
            let term = alg.bracket(j, &outer_args);
            let s = Scalar::from_int(outer_sign * chi);
            total = alg.add(&total, &alg.scale(&s, &term));
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Plain sign of a permutation given as the image list.
fn perm_sign(perm: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Koszul sign of moving slots into the order `perm` (perm[i] = source
/// index of the element now in slot i).
fn koszul_perm_sign(perm: &[usize], degrees: &[i64]) -> i64 {
    let mut sign = 1i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && degrees[perm[i]] % 2 != 0 && degrees[perm[j]] % 2 != 0 {
                sign = -sign;
            }
        }
    }
    sign
}

// ---------------------------------------------------------------------
// Iterated loop cocycle on Laurent polynomials
// ---------------------------------------------------------------------

/// A Laurent polynomial in `z_1^{+-1}, ..., z_d^{+-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    d: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(d: usize) -> LaurentPoly {
        LaurentPoly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(d: usize, exps: Vec<i64>, coef: Scalar) -> LaurentPoly {
        assert_eq!(exps.len(), d);
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exps, coef);
        }
        LaurentPoly { d, terms }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(e.clone()).or_insert_with(Scalar::zero);
            *v = &*v + c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { d: self.d, terms }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out = out.add(&LaurentPoly::monomial(self.d, e, ca * cb));
            }
        }
        out
    }

    /// `z_i d/dz_i`-free plain partial derivative `d/dz_i`.
    pub fn derivative(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.d);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out = out.add(&LaurentPoly::monomial(
                self.d,
                ne,
                &Scalar::from_int(e[i]) * c,
            ));
        }
        out
    }

    pub fn coefficient(&self, exps: &[i64]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Scalar> {
        &self.terms
    }
}

/// The iterated-loop cocycle on `d + 1` inputs `f_i (x) x_i`:
/// `theta(x_0,...,x_d) tau^d [coefficient of (z_1...z_d)^{-1} dz in
/// f_0 df_1 ^ ... ^ df_d]`.
pub fn iterated_loop_cocycle(
    theta: &InvariantPolynomial,
    inputs: &[(usize, LaurentPoly)],
) -> Scalar {
    assert!(!inputs.is_empty());
    let d = inputs[0].1.d;
    assert_eq!(inputs.len(), d + 1);
    let tuple: Vec<usize> = inputs.iter().map(|(x, _)| *x).collect();
    let tv = theta.eval_basis(&tuple);
    if tv.is_zero() {
        return Scalar::zero();
    }
    // df_1 ^ ... ^ df_d = sum_sigma sgn(sigma) prod_i d f_i/d z_sigma(i) dz
    let mut coeff = Scalar::zero();
    for perm in permutations_of(d) {
        let mut prod = inputs[0].1.clone();
        for (i, &v) in perm.iter().enumerate() {
            prod = prod.mul(&inputs[i + 1].1.derivative(v));
        }
        let target = vec![-1i64; d];
        let c = prod.coefficient(&target);
        let s = Scalar::from_int(perm_sign(&perm));
        coeff = &coeff + &(&s * &c);
    }
    &(&tv * &coeff) * &Scalar::tau_pow(d as i32)
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations_of(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Converts a Laurent monomial in one variable to its `A_1` avatar:
/// `z^m` for `m >= 0`, `z*^{-m}/(zz*)^{-m}` for `m < 0`.
pub fn laurent_to_a1(m: i64) -> ADElement {
    if m >= 0 {
        let mut e = ADElement::one(1);
        for _ in 0..m {
            e = e.mul(&ADElement::z(1, 1));
        }
        e
    } else {
        let mut e = ADElement::one(1);
        for _ in 0..(-m) {
            e = e.mul(&ADElement::zs(1, 1).mul(&ADElement::zzs_inv_pow(1, 1)));
        }
        e
    }
}

#[cfg(test)]
mod tests;
