//! Heisenberg-type structures: the residue pairing central extension of
//! `A_d (x) (V + V*[d-1])`, the Clifford algebra with its Berezin
//! functional, and the d = 1 free-field mode algebra used to read off
//! the level of the quantized currents.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use crate::currents::LInfinity;
use crate::jouanolou::{random_form, residue, ADElement, WeightWindow};
use crate::lie::{mat_mul, mat_trace, Representation};
use crate::scalar::Scalar;

// ---------------------------------------------------------------------
// Heisenberg dg Lie algebra
// ---------------------------------------------------------------------

/// An element of `A_d (x) (V + V*[d-1])` plus a central multiple of K.
/// Generator indices `0..n` are the V slots, `n..2n` the V* slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergElement {
    pub terms: BTreeMap<usize, ADElement>,
    pub central: Scalar,
}

/// The Heisenberg dg Lie algebra H_{d,V}: abelian underlying bracket,
/// `l_1 = dbar`, and the central 2-cocycle
/// `omega(a (x) w, b (x) u) = <w, u> Res((a b)^{(0,d-1)} dz)`.
/// For even (bosonic) V the pairing on V + V* is symplectic; for odd
/// (fermionic) V it is symmetric.
pub struct HeisenbergAlgebra {
    d: usize,
    n: usize,
    odd: bool,
    window: WeightWindow,
}

pub fn heisenberg(n: usize, odd: bool, d: usize, window: WeightWindow) -> HeisenbergAlgebra {
    assert!(n >= 1 && d >= 1);
    assert_eq!(window.dim(), d);
    HeisenbergAlgebra { d, n, odd, window }
}

impl HeisenbergAlgebra {
    pub fn dim_v(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Internal degree of a generator slot: 0 on V, `1 - d` on V*[d-1].
    fn slot_degree(&self, slot: usize) -> i64 {
        if slot < self.n {
            0
        } else {
            1 - self.d as i64
        }
    }

    /// `<w, u>` on V + V*: hyperbolic, antisymmetric for even V and
    /// symmetric for odd V.
    fn pairing(&self, w: usize, u: usize) -> Scalar {
        let n = self.n;
        if w < n && u == w + n {
            Scalar::one()
        } else if w >= n && u == w - n {
            if self.odd {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            }
        } else {
            Scalar::zero()
        }
    }

    /// The central 2-cocycle on current parts.
    pub fn cocycle(
        &self,
        x: &BTreeMap<usize, ADElement>,
        y: &BTreeMap<usize, ADElement>,
    ) -> Scalar {
        let d = self.d;
        let mut total = Scalar::zero();
        for (&w, a) in x {
            for (&u, b) in y {
                let p = self.pairing(w, u);
                if p.is_zero() {
                    continue;
                }
                // Koszul sign: the internal generator w hops over the form b
                let Some(bq) = b.form_degree() else { continue };
                let gen_parity = (self.slot_degree(w) + if self.odd { 1 } else { 0 }).rem_euclid(2);
                let sign = if gen_parity % 2 != 0 && bq % 2 != 0 {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                let top = a.mul(b).component(0, d as u32 - 1).mul(&ADElement::dz_top(d));
                if top.is_zero() {
                    continue;
                }
                let r = residue(&top, &self.window).expect("residue window too small");
                total = &total + &(&(&p * &sign) * &r);
            }
        }
        total
    }
}

impl LInfinity for HeisenbergAlgebra {
    type Elem = HeisenbergElement;

    fn top_arity(&self) -> usize {
        2
    }

    fn zero(&self) -> HeisenbergElement {
        HeisenbergElement {
            terms: BTreeMap::new(),
            central: Scalar::zero(),
        }
    }

    fn is_zero(&self, e: &HeisenbergElement) -> bool {
        e.terms.values().all(|a| a.is_zero()) && e.central.is_zero()
    }

    fn add(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        let mut terms = a.terms.clone();
        for (&s, f) in &b.terms {
            let merged = match terms.get(&s) {
                Some(g) => g.add(f),
                None => f.clone(),
            };
            if merged.is_zero() {
                terms.remove(&s);
            } else {
                terms.insert(s, merged);
            }
        }
        HeisenbergElement {
            terms,
            central: &a.central + &b.central,
        }
    }

    fn scale(&self, s: &Scalar, e: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement {
            terms: e.terms.iter().map(|(&k, a)| (k, a.scale(s))).collect(),
            central: s * &e.central,
        }
    }

    fn degree(&self, e: &HeisenbergElement) -> Option<i64> {
        let mut deg: Option<i64> = if e.central.is_zero() { None } else { Some(0) };
        for (&slot, a) in &e.terms {
            if a.is_zero() {
                continue;
            }
            let dg = a.form_degree()? + self.slot_degree(slot);
            match deg {
                None => deg = Some(dg),
                Some(existing) if existing == dg => {}
                _ => return None,
            }
        }
        Some(deg.unwrap_or(0))
    }

    fn bracket(&self, k: usize, args: &[HeisenbergElement]) -> HeisenbergElement {
        assert_eq!(args.len(), k);
        match k {
            1 => HeisenbergElement {
                terms: args[0]
                    .terms
                    .iter()
                    .map(|(&s, a)| (s, a.dbar()))
                    .filter(|(_, a)| !a.is_zero())
                    .collect(),
                central: Scalar::zero(),
            },
            2 => HeisenbergElement {
                terms: BTreeMap::new(),
                central: self.cocycle(&args[0].terms, &args[1].terms),
            },
            _ => self.zero(),
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> HeisenbergElement {
        // keep the total degree homogeneous: pick V or V* with matching q
        let slot = (rng.next_u32() as usize) % (2 * self.n);
        let q = (rng.next_u32() as usize) % self.d;
        let weight: Vec<i64> = (0..self.d)
            .map(|_| (rng.next_u32() % 5) as i64 - 2)
            .collect();
        let a = random_form(self.d, 0, q as u32, &weight, q as u32 + 1, rng);
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(slot, a);
        }
        HeisenbergElement {
            terms,
            central: Scalar::zero(),
        }
    }

    fn describe(&self, e: &HeisenbergElement) -> String {
        let mut parts: Vec<String> = e
            .terms
            .iter()
            .map(|(&s, a)| {
                let label = if s < self.n {
                    format!("v{}", s + 1)
                } else {
                    format!("v*{}", s - self.n + 1)
                };
                format!("{} (x) [{}]", label, a)
            })
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
// Clifford algebra and the Berezin functional
// ---------------------------------------------------------------------

/// A Clifford monomial: subsets of the v and v* generators, in the
/// canonical order v_1 < ... < v_n < v*_1 < ... < v*_n.
type CliffMono = (u32, u32);

/// An element of Cl(V + V*) with the relations
/// `v_i v*_j + v*_j v_i = delta_ij`, `v v + v v = 0`, `v* v* + v* v* = 0`
/// (the central parameter specialized to 1).
pub type CliffElem = BTreeMap<CliffMono, Scalar>;

fn cliff_insert(e: &mut CliffElem, m: CliffMono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let v = e.entry(m).or_insert_with(Scalar::zero);
    *v = &*v + &c;
    if v.is_zero() {
        e.remove(&m);
    }
}

/// Product of two canonical monomials.
fn cliff_mono_mul(n: usize, a: CliffMono, b: CliffMono, coef: &Scalar) -> CliffElem {
    // multiply a by the generators of b, one at a time, left to right
    let mut acc = CliffElem::new();
    acc.insert(a, coef.clone());
    let mut gens = Vec::new();
    for i in 0..n {
        if b.0 & (1 << i) != 0 {
            gens.push(i);
        }
    }
    for j in 0..n {
        if b.1 & (1 << j) != 0 {
            gens.push(n + j);
        }
    }
    for g in gens {
        let mut next = CliffElem::new();
        for (m, c) in &acc {
            // right-multiplication by g: write m * g; push g through m
            // from the right. Equivalent: multiply the reversed problem;
            // here we use that m * g = sum over cliff products computed
            // by moving g leftwards, which mirrors cliff_gen_mul on the
            // transposed order. Simplest correct route: g enters from
            // the right of the v* block.
            for (m2, c2) in cliff_right_gen(n, g, *m, c) {
                cliff_insert(&mut next, m2, c2);
            }
        }
        acc = next;
    }
    acc
}

/// Right-multiplies a canonical monomial by one generator.
fn cliff_right_gen(n: usize, gen: usize, m: CliffMono, coef: &Scalar) -> CliffElem {
    let (vs, ds) = m;
    let mut out = CliffElem::new();
    if gen >= n {
        // v*_j appended after the v* block: hop over later v*'s only
        let j = gen - n;
        let bit = 1u32 << j;
        if ds & bit != 0 {
            return out;
        }
        let hops = (ds & !(bit | (bit - 1))).count_ones();
        let sign = if hops % 2 == 0 { 1 } else { -1 };
        cliff_insert(&mut out, (vs, ds | bit), &Scalar::from_int(sign) * coef);
    } else {
        // v_i entering from the right must cross the whole v* block,
        // contracting v*_i, then join the v block from the right
        let i = gen;
        let bit = 1u32 << i;
        if ds & bit != 0 {
            // contraction v*_i v_i = 1 - v_i v*_i: crossing later v*'s
            // first, then the contraction
            let hops_after = (ds & !(bit | (bit - 1))).count_ones();
            let sign_c = if hops_after % 2 == 0 { 1 } else { -1 };
            cliff_insert(
                &mut out,
                (vs, ds & !bit),
                &Scalar::from_int(sign_c) * coef,
            );
        }
        if vs & bit != 0 {
            return out;
        }
        let hops = ds.count_ones() + (vs & !(bit | (bit - 1))).count_ones();
        let sign = if hops % 2 == 0 { 1 } else { -1 };
        cliff_insert(&mut out, (vs | bit, ds), &Scalar::from_int(sign) * coef);
    }
    out
}

/// Product in Cl(V + V*).
pub fn cliff_mul(n: usize, a: &CliffElem, b: &CliffElem) -> CliffElem {
    let mut out = CliffElem::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            for (m, c) in cliff_mono_mul(n, *ma, *mb, &(ca * cb)) {
                cliff_insert(&mut out, m, c);
            }
        }
    }
    out
}

/// The Berezin functional: the coefficient of the top monomial
/// `v_1 ... v_n v*_1 ... v*_n`.
pub fn berezin(n: usize, e: &CliffElem) -> Scalar {
    let full = (1u32 << n) - 1;
    e.get(&(full, full)).cloned().unwrap_or_else(Scalar::zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliffordError {
    TooLarge { n: usize, max: usize },
}

/// Result of the zeroth Hochschild homology computation for Cl(V + V*).
#[derive(Debug, Clone)]
pub struct CliffordHH0 {
    pub n: usize,
    pub algebra_dim: usize,
    pub commutator_rank: usize,
    pub hh0_dim: usize,
    /// Berezin values on the chosen representatives of HH_0.
    pub berezin_on_representatives: Vec<Scalar>,
}

/// Computes `HH_0(Cl) = Cl / [Cl, Cl]` by exact linear algebra on the
/// `2^{2n}`-dimensional monomial basis.
pub fn clifford_hh0(n: usize) -> Result<CliffordHH0, CliffordError> {
    if n == 0 || n > 3 {
        return Err(CliffordError::TooLarge { n, max: 3 });
    }
    let dim = 1usize << (2 * n);
    // enumerate monomials and index them
    let monos: Vec<CliffMono> = (0..1u32 << n)
        .flat_map(|vs| (0..1u32 << n).map(move |ds| (vs, ds)))
        .collect();
    let index: BTreeMap<CliffMono, usize> =
        monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // span of all commutators of basis monomials
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for &a in &monos {
        for &b in &monos {
            let mut ea = CliffElem::new();
            ea.insert(a, Scalar::one());
            let mut eb = CliffElem::new();
            eb.insert(b, Scalar::one());
            let ab = cliff_mul(n, &ea, &eb);
            let ba = cliff_mul(n, &eb, &ea);
            let mut col = vec![Scalar::zero(); dim];
            let mut nonzero = false;
            for (m, c) in &ab {
                col[index[m]] = c.clone();
                nonzero = true;
            }
            for (m, c) in &ba {
                col[index[m]] = &col[index[m]] - c;
                nonzero = true;
            }
            if nonzero && col.iter().any(|c| !c.is_zero()) {
                cols.push(col);
            }
        }
    }
    let mat = crate::matrix::SparseMatrix::from_columns(dim, &cols);
    let rank = mat.rank();
    let hh0 = dim - rank;
    // representatives: basis monomials independent of the commutator span
    let mut reps = Vec::new();
    let mut span = cols;
    for &m in &monos {
        let mut col = vec![Scalar::zero(); dim];
        col[index[&m]] = Scalar::one();
        let mut trial = span.clone();
        trial.push(col.clone());
        let r = crate::matrix::SparseMatrix::from_columns(dim, &trial).rank();
        if r > crate::matrix::SparseMatrix::from_columns(dim, &span).rank() {
            span.push(col);
            let mut e = CliffElem::new();
            e.insert(m, Scalar::one());
            reps.push(berezin(n, &e));
            if reps.len() == hh0 {
                break;
            }
        }
    }
    Ok(CliffordHH0 {
        n,
        algebra_dim: dim,
        commutator_rank: rank,
        hh0_dim: hh0,
        berezin_on_representatives: reps,
    })
}

// ---------------------------------------------------------------------
// d = 1 free-field mode algebra and the level
// ---------------------------------------------------------------------

/// One mode operator: `b_k^{(i)}` or `c_k^{(j)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct ModeOp {
    is_c: bool,
    mode: i64,
    idx: usize,
}

impl ModeOp {
    /// Annihilation convention: `c_k` with `k > 0`, `b_k` with `k >= 0`.
    fn is_annihilation(&self) -> bool {
        if self.is_c {
            self.mode > 0
        } else {
            self.mode >= 0
        }
    }
}

/// A normally ordered monomial: creation block then annihilation block,
/// each sorted. The modes anticommute (bc statistics), which is what
/// makes the level come out as `+ m tr(rho x rho y)`.
type WeylMono = (Vec<ModeOp>, Vec<ModeOp>);

type WeylElem = BTreeMap<WeylMono, Scalar>;

fn weyl_insert(e: &mut WeylElem, m: WeylMono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let v = e.entry(m.clone()).or_insert_with(Scalar::zero);
    *v = &*v + &c;
    if v.is_zero() {
        e.remove(&m);
    }
}

/// `{b_k^{(i)}, c_l^{(j)}} = delta_ij delta_{k+l,0}`; all other
/// anticommutators vanish.
fn mode_anticommutator(x: &ModeOp, y: &ModeOp) -> Scalar {
    if x.is_c == y.is_c || x.idx != y.idx || x.mode + y.mode != 0 {
        Scalar::zero()
    } else {
        Scalar::one()
    }
}

/// Canonical position: creation ops before annihilation ops, each block
/// ascending.
fn op_rank(o: &ModeOp) -> (bool, bool, i64, usize) {
    (o.is_annihilation(), o.is_c, o.mode, o.idx)
}

/// Normalizes an arbitrary word of mode operators into the canonical
/// normally ordered form, generating contraction terms with fermionic
/// signs: `x y = -y x + {x, y}`.
fn weyl_normalize(word: &[ModeOp], coef: &Scalar, out: &mut WeylElem) {
    for p in 0..word.len().saturating_sub(1) {
        let (x, y) = (word[p], word[p + 1]);
        if x == y {
            return; // x^2 = {x,x}/2 = 0
        }
        if op_rank(&x) > op_rank(&y) {
            let mut swapped = word.to_vec();
            swapped.swap(p, p + 1);
            weyl_normalize(&swapped, &-coef, out);
            let anti = mode_anticommutator(&x, &y);
            if !anti.is_zero() {
                let mut reduced = word.to_vec();
                reduced.remove(p + 1);
                reduced.remove(p);
                weyl_normalize(&reduced, &(coef * &anti), out);
            }
            return;
        }
    }
    let cre: Vec<ModeOp> = word.iter().copied().filter(|o| !o.is_annihilation()).collect();
    let ann: Vec<ModeOp> = word.iter().copied().filter(|o| o.is_annihilation()).collect();
    weyl_insert(out, (cre, ann), coef.clone());
}

fn weyl_mul(a: &WeylElem, b: &WeylElem) -> WeylElem {
    let mut out = WeylElem::new();
    for ((ca, aa), sa) in a {
        for ((cb, ab), sb) in b {
            let mut word: Vec<ModeOp> = Vec::new();
            word.extend(ca.iter().copied());
            word.extend(aa.iter().copied());
            word.extend(cb.iter().copied());
            word.extend(ab.iter().copied());
            weyl_normalize(&word, &(sa * sb), &mut out);
        }
    }
    out
}

fn weyl_sub(a: &WeylElem, b: &WeylElem) -> WeylElem {
    let mut out = a.clone();
    for (m, c) in b {
        weyl_insert(&mut out, m.clone(), -c);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeError {
    CutoffExceeded { needed: i64, cutoff: i64 },
}

/// The normally ordered current `J_m(x) = sum_k :b_{-k} (rho(x) c)_{m+k}:`
/// in the truncated mode algebra. Every mode index used must satisfy
/// `|mode| <= cutoff`.
pub fn current(rep: &Representation, m: i64, x: usize, cutoff: i64) -> Result<WeylElemPub, ModeError> {
    if m.abs() > cutoff {
        return Err(ModeError::CutoffExceeded {
            needed: m.abs(),
            cutoff,
        });
    }
    let rho = rep.matrix(x);
    let nv = rep.dim_v();
    let mut out = WeylElem::new();
    for k in -cutoff..=cutoff {
        if (-k).abs() > cutoff || (m + k).abs() > cutoff {
            continue;
        }
        for i in 0..nv {
            for j in 0..nv {
                let c = &rho[i][j];
                if c.is_zero() {
                    continue;
                }
                let b = ModeOp {
                    is_c: false,
                    mode: -k,
                    idx: i,
                };
                let cc = ModeOp {
                    is_c: true,
                    mode: m + k,
                    idx: j,
                };
                // normal ordering drops the contraction and reorders with
                // the fermionic sign: :b c: = -c b when b annihilates and
                // c creates. Within a block b < c already, no extra sign.
                let (mono, coef) = if b.is_annihilation() && !cc.is_annihilation() {
                    ((vec![cc], vec![b]), -c)
                } else if b.is_annihilation() {
                    ((Vec::new(), vec![b, cc]), c.clone())
                } else if cc.is_annihilation() {
                    ((vec![b], vec![cc]), c.clone())
                } else {
                    ((vec![b, cc], Vec::new()), c.clone())
                };
                weyl_insert(&mut out, mono, coef);
            }
        }
    }
    Ok(WeylElemPub(out))
}

/// Opaque wrapper so downstream code can hold current elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElemPub(WeylElem);

impl WeylElemPub {
    pub fn commutator(&self, other: &WeylElemPub) -> WeylElemPub {
        WeylElemPub(weyl_sub(
            &weyl_mul(&self.0, &other.0),
            &weyl_mul(&other.0, &self.0),
        ))
    }

    pub fn sub(&self, other: &WeylElemPub) -> WeylElemPub {
        WeylElemPub(weyl_sub(&self.0, &other.0))
    }

    pub fn scalar_part(&self) -> Scalar {
        self.0
            .get(&(Vec::new(), Vec::new()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Drops all monomials touching modes with `|mode| > bound`; used to
    /// compare truncated expressions on their common interior.
    pub fn restrict_modes(&self, bound: i64) -> WeylElemPub {
        WeylElemPub(
            self.0
                .iter()
                .filter(|((cre, ann), _)| {
                    cre.iter().chain(ann.iter()).all(|o| o.mode.abs() <= bound)
                })
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }
}

/// The central coefficient of `[J_m(x), J_n(y)] - J_{m+n}([x,y])` in the
/// truncated mode algebra. Exact whenever the window leaves room for
/// every intermediate mode, which requires `|m| + |n| <= cutoff`.
pub fn free_field_level_d1(
    rep: &Representation,
    m: i64,
    n: i64,
    x: usize,
    y: usize,
    cutoff: i64,
) -> Result<Scalar, ModeError> {
    if m.abs() + n.abs() > cutoff {
        return Err(ModeError::CutoffExceeded {
            needed: m.abs() + n.abs(),
            cutoff,
        });
    }
    let jm = current(rep, m, x, cutoff)?;
    let jn = current(rep, n, y, cutoff)?;
    let comm = jm.commutator(&jn);
    // subtract J_{m+n}([x,y])
    let g = rep.algebra();
    let mut corr = WeylElem::new();
    for (k, c) in g.bracket_basis(x, y).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let jk = current(rep, m + n, k, cutoff)?;
        for (mono, s) in &jk.0 {
            weyl_insert(&mut corr, mono.clone(), c * s);
        }
    }
    let diff = comm.sub(&WeylElemPub(corr));
    Ok(diff.scalar_part())
}

/// Expected level: `m delta_{m+n,0} tr(rho(x) rho(y))`.
pub fn expected_level(rep: &Representation, m: i64, n: i64, x: usize, y: usize) -> Scalar {
    if m + n != 0 {
        return Scalar::zero();
    }
    let t = mat_trace(&mat_mul(rep.matrix(x), rep.matrix(y)));
    &Scalar::from_int(m) * &t
}

/// The non-central discrepancy restricted to the interior of the mode
/// window; must vanish.
pub fn free_field_noncentral_d1(
    rep: &Representation,
    m: i64,
    n: i64,
    x: usize,
    y: usize,
    cutoff: i64,
) -> Result<WeylElemPub, ModeError> {
    if m.abs() + n.abs() > cutoff {
        return Err(ModeError::CutoffExceeded {
            needed: m.abs() + n.abs(),
            cutoff,
        });
    }
    let jm = current(rep, m, x, cutoff)?;
    let jn = current(rep, n, y, cutoff)?;
    let comm = jm.commutator(&jn);
    let g = rep.algebra();
    let mut corr = WeylElem::new();
    for (k, c) in g.bracket_basis(x, y).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let jk = current(rep, m + n, k, cutoff)?;
        for (mono, s) in &jk.0 {
            weyl_insert(&mut corr, mono.clone(), c * s);
        }
    }
    let mut diff = comm.sub(&WeylElemPub(corr));
    // remove the central part, then restrict to the interior
    diff.0.remove(&(Vec::new(), Vec::new()));
    Ok(diff.restrict_modes(cutoff - m.abs().max(n.abs())))
}

#[cfg(test)]
mod tests;
