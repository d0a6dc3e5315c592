//! Truncated Hochschild and cyclic complexes of a finite algebra
//! window, the universal cyclic cochain built from the higher residue,
//! and its Loday-Quillen-Tsygan pullback to matrix algebras.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{ChainComplexWindow, ComplexError};
use crate::graded::GradedSpaceWindow;
use crate::jouanolou::{ADElement, WeightWindow, WindowError, residue};
use crate::lie::InvariantPolynomial;
use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;
use rand_chacha::rand_core::RngCore;

// ---------------------------------------------------------------------
// Finite algebra windows
// ---------------------------------------------------------------------

/// A finite-dimensional window of an associative algebra: products that
/// escape the window are `None` and set the overflow flag on any complex
/// built from them.
#[derive(Debug, Clone)]
pub struct AlgebraWindow {
    labels: Vec<String>,
    unit: usize,
    mult: Vec<Vec<Option<Vec<Scalar>>>>,
}

impl AlgebraWindow {
    pub fn new(labels: Vec<String>, unit: usize, mult: Vec<Vec<Option<Vec<Scalar>>>>) -> Self {
        let n = labels.len();
        assert!(unit < n);
        assert_eq!(mult.len(), n);
        assert!(mult
            .iter()
            .all(|row| row.len() == n && row.iter().flatten().all(|v| v.len() == n)));
        AlgebraWindow { labels, unit, mult }
    }

    pub fn ground_field() -> Self {
        AlgebraWindow {
            labels: vec!["1".to_string()],
            unit: 0,
            mult: vec![vec![Some(vec![Scalar::one()])]],
        }
    }

    /// `C[x]/(x^n)`: an honest algebra, no overflow.
    pub fn truncated_polynomial(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| if i == 0 { "1".to_string() } else { format!("x^{}", i) })
            .collect();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![Scalar::zero(); n];
                        if i + j < n {
                            v[i + j] = Scalar::one();
                        }
                        Some(v)
                    })
                    .collect()
            })
            .collect();
        AlgebraWindow {
            labels,
            unit: 0,
            mult,
        }
    }

    /// `C[x]` truncated at `deg_max`: products beyond the window overflow.
    pub fn polynomial_window(deg_max: usize) -> Self {
        let n = deg_max + 1;
        let labels = (0..n)
            .map(|i| if i == 0 { "1".to_string() } else { format!("x^{}", i) })
            .collect();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i + j < n {
                            let mut v = vec![Scalar::zero(); n];
                            v[i + j] = Scalar::one();
                            Some(v)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        AlgebraWindow {
            labels,
            unit: 0,
            mult,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> Option<&[Scalar]> {
        self.mult[i][j].as_deref()
    }
}

// ---------------------------------------------------------------------
// Hochschild and cyclic complexes
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct HochschildWindow {
    pub complex: ChainComplexWindow,
    /// `true` when some product escaped the algebra window; homology
    /// read off the complex is then untrustworthy and the caller must
    /// widen the window.
    pub overflow: bool,
    /// Basis tuples per chain degree `n` (stored at cohomological `-n`).
    pub tuples: BTreeMap<i64, Vec<Vec<usize>>>,
}

fn tuples_of(a: &AlgebraWindow, len: usize, reduced: bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for slot in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..a.dim() {
                if reduced && slot >= 1 && i == a.unit() {
                    continue;
                }
                let mut nt = t.clone();
                nt.push(i);
                next.push(nt);
            }
        }
        out = next;
    }
    out
}

fn tuple_label(a: &AlgebraWindow, t: &[usize]) -> String {
    t.iter()
        .map(|&i| a.label(i))
        .collect::<Vec<_>>()
        .join(" (x) ")
}

/// The bar-type Hochschild complex `C_n = A^{(x)(n+1)}` for
/// `n <= arity_cutoff`, with the standard `b` differential. `reduced`
/// drops tuples whose inner slots carry the unit.
pub fn hochschild_window(
    a: &AlgebraWindow,
    arity_cutoff: usize,
    reduced: bool,
) -> Result<HochschildWindow, ComplexError> {
    let mut spaces = BTreeMap::new();
    let mut tuples = BTreeMap::new();
    let mut index: BTreeMap<i64, BTreeMap<Vec<usize>, usize>> = BTreeMap::new();
    for n in 0..=arity_cutoff as i64 {
        let ts = tuples_of(a, n as usize + 1, reduced);
        let mut gw = GradedSpaceWindow::new();
        let mut ix = BTreeMap::new();
        for (i, t) in ts.iter().enumerate() {
            gw.push(tuple_label(a, t), -n, None);
            ix.insert(t.clone(), i);
        }
        spaces.insert(-n, gw);
        index.insert(n, ix);
        tuples.insert(n, ts);
    }
    let mut overflow = false;
    let mut diffs = BTreeMap::new();
    for n in 1..=arity_cutoff as i64 {
        let ts = &tuples[&n];
        let target = &index[&(n - 1)];
        let mut m = SparseMatrix::zero(target.len(), ts.len());
        for (col, t) in ts.iter().enumerate() {
            let len = t.len(); // n + 1 slots
            for i in 0..len {
                // fold slot i into its cyclic successor; i = n is the
                // wrap-around term a_n a_0
                let (x, y, rest): (usize, usize, Vec<usize>) = if i + 1 < len {
                    (
                        t[i],
                        t[i + 1],
                        t.iter()
                            .enumerate()
                            .filter(|&(p, _)| p != i && p != i + 1)
                            .map(|(_, &g)| g)
                            .collect(),
                    )
                } else {
                    (t[len - 1], t[0], t[1..len - 1].to_vec())
                };
                let sign = if i % 2 == 0 { 1i64 } else { -1 };
                match a.product(x, y) {
                    None => overflow = true,
                    Some(prod) => {
                        for (u, c) in prod.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut nt = Vec::with_capacity(len - 1);
                            if i + 1 < len {
                                nt.extend_from_slice(&t[..i]);
                                nt.push(u);
                                nt.extend_from_slice(&t[i + 2..]);
                            } else {
                                nt.push(u);
                                nt.extend_from_slice(&rest);
                            }
                            if let Some(&row) = target.get(&nt) {
                                m.add_to(
                                    row,
                                    col,
                                    &crate::complex::KPoly::constant(
                                        &Scalar::from_int(sign) * c,
                                    ),
                                );
                            }
                            // reduced complex: folded tuples with an inner
                            // unit are identified with shorter ones; the
                            // unreduced index covers every case, so a miss
                            // only happens in the reduced quotient where
                            // such terms vanish
                        }
                    }
                }
            }
        }
        diffs.insert(-n, m);
    }
    Ok(HochschildWindow {
        complex: ChainComplexWindow::new(spaces, diffs)?,
        overflow,
        tuples,
    })
}

/// The cyclic rotation `t(a_0 (x) ... (x) a_n) = (-1)^n a_n (x) a_0 (x)
/// ... (x) a_{n-1}` on chain degree `n`.
pub fn cyclic_rotation(a: &AlgebraWindow, n: usize, reduced: bool) -> SparseMatrix<Scalar> {
    let ts = tuples_of(a, n + 1, reduced);
    let index: BTreeMap<Vec<usize>, usize> =
        ts.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut m = SparseMatrix::zero(ts.len(), ts.len());
    for (col, t) in ts.iter().enumerate() {
        let mut rot = vec![t[n]];
        rot.extend_from_slice(&t[..n]);
        if let Some(&row) = index.get(&rot) {
            m.set(row, col, Scalar::from_int(sign));
        }
        // in the reduced complex a rotation can move the unit into an
        // inner slot; such classes are zero in the quotient
    }
    m
}

/// Incrementally built echelon basis of a column space, supporting
/// reduction of vectors modulo the space.
struct ColumnSpace {
    dim: usize,
    /// (pivot row, column normalized to pivot 1)
    echelon: Vec<(usize, Vec<Scalar>)>,
}

impl ColumnSpace {
    fn new(dim: usize) -> Self {
        ColumnSpace {
            dim,
            echelon: Vec::new(),
        }
    }

    /// Reduces `v` modulo the space; the result has zero entries at all
    /// pivot rows.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (p, col) in &self.echelon {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            for r in 0..self.dim {
                w[r] = &w[r] - &(&c * &col[r]);
            }
        }
        w
    }

    /// Adds a vector to the space; returns false if it was already in.
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv_head = w[p].clone();
        let col: Vec<Scalar> = w.iter().map(|c| c * &inv_head.inv()).collect();
        self.echelon.push((p, col));
        true
    }
}

/// The cyclic quotient `CC_n = C_n / im(1 - t)` with the induced
/// differential; errors if `b` does not descend exactly.
pub fn cyclic_quotient(
    a: &AlgebraWindow,
    arity_cutoff: usize,
    reduced: bool,
) -> Result<HochschildWindow, ComplexError> {
    let hoch = hochschild_window(a, arity_cutoff, reduced)?;
    let mut spaces = BTreeMap::new();
    let mut quotients: BTreeMap<i64, (ColumnSpace, Vec<usize>)> = BTreeMap::new();
    for n in 0..=arity_cutoff as i64 {
        let full = hoch.complex.space(-n).unwrap();
        let dim = full.len();
        let t = cyclic_rotation(a, n as usize, reduced);
        let mut space = ColumnSpace::new(dim);
        for c in 0..dim {
            let mut col = vec![Scalar::zero(); dim];
            col[c] = Scalar::one();
            for (r, cc, v) in t.entries() {
                if cc == c {
                    col[r] = &col[r] - v;
                }
            }
            space.insert(&col);
        }
        // quotient basis: standard vectors that stay independent mod im
        let mut probe = ColumnSpace::new(dim);
        for (p, col) in &space.echelon {
            probe.echelon.push((*p, col.clone()));
        }
        let mut reps = Vec::new();
        for i in 0..dim {
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            if probe.insert(&e) {
                reps.push(i);
            }
        }
        let mut gw = GradedSpaceWindow::new();
        for &i in &reps {
            gw.push(format!("[{}]", full.label(i)), -n, None);
        }
        spaces.insert(-n, gw);
        quotients.insert(n, (space, reps));
    }
    let mut diffs = BTreeMap::new();
    for n in 1..=arity_cutoff as i64 {
        let d = hoch.complex.differential(-n).unwrap();
        let (dom_space, dom_reps) = &quotients[&n];
        let (cod_space, cod_reps) = &quotients[&(n - 1)];
        let dim_cod = hoch.complex.space(-(n - 1)).unwrap().len();
        // well-definedness: b maps im(1 - t) into im(1 - t)
        for (_, col) in &dom_space.echelon {
            let image = apply_kmat(d, col);
            if cod_space.reduce(&image).iter().any(|c| !c.is_zero()) {
                return Err(ComplexError::Shape(
                    "Hochschild differential does not descend to the cyclic quotient".into(),
                ));
            }
        }
        let mut m = SparseMatrix::zero(cod_reps.len(), dom_reps.len());
        for (col_idx, &i) in dom_reps.iter().enumerate() {
            let mut e = vec![Scalar::zero(); d.cols()];
            e[i] = Scalar::one();
            let image = cod_space.reduce(&apply_kmat(d, &e));
            // express on the representative coordinates
            let mut expr = reduce_to_reps(&image, cod_space, cod_reps, dim_cod);
            for (row, v) in expr.drain(..).enumerate() {
                if !v.is_zero() {
                    m.set(row, col_idx, crate::complex::KPoly::constant(v));
                }
            }
        }
        diffs.insert(-n, m);
    }
    Ok(HochschildWindow {
        complex: ChainComplexWindow::new(spaces, diffs)?,
        overflow: hoch.overflow,
        tuples: hoch.tuples,
    })
}

fn apply_kmat(d: &SparseMatrix<crate::complex::KPoly>, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); d.rows()];
    for (r, c, p) in d.entries() {
        if !v[c].is_zero() {
            out[r] = &out[r] + &(&p.constant_part() * &v[c]);
        }
    }
    out
}

/// Writes a reduced vector as a combination of the representative
/// standard vectors (themselves reduced modulo the space).
fn reduce_to_reps(
    reduced_v: &[Scalar],
    space: &ColumnSpace,
    reps: &[usize],
    dim: usize,
) -> Vec<Scalar> {
    // reduced representative columns form a triangular-ish system; solve
    // by building the matrix of reduced e_i and using solve()
    let mut cols = Vec::with_capacity(reps.len());
    for &i in reps {
        let mut e = vec![Scalar::zero(); dim];
        e[i] = Scalar::one();
        cols.push(space.reduce(&e));
    }
    let m = SparseMatrix::from_columns(dim, &cols);
    m.solve(reduced_v)
        .expect("reduced vector must lie in the span of the representatives")
}

// ---------------------------------------------------------------------
// Cyclic cochains on the dg model
// ---------------------------------------------------------------------

type EvalFn = Box<dyn Fn(&[ADElement]) -> Result<Scalar, WindowError>>;

/// A multilinear functional on tuples from `A_d`, claimed cyclic.
pub struct CyclicCochain {
    d: usize,
    args: usize,
    eval: EvalFn,
}

impl CyclicCochain {
    /// `Theta(a_0, ..., a_d) = Res((a_0 del(a_1) ... del(a_d))^{(d,d-1)} dz)`.
    pub fn theta_infinity(d: usize, window: WeightWindow) -> Self {
        CyclicCochain {
            d,
            args: d + 1,
            eval: Box::new(move |args: &[ADElement]| theta_inf_eval(d, &window, args, false)),
        }
    }

    /// Same formula with a symmetry-breaking factor of `z_1`; fails the
    /// cyclicity check.
    pub fn broken_cyclic(d: usize, window: WeightWindow) -> Self {
        CyclicCochain {
            d,
            args: d + 1,
            eval: Box::new(move |args: &[ADElement]| theta_inf_eval(d, &window, args, true)),
        }
    }

    pub fn zero(d: usize, args: usize) -> Self {
        CyclicCochain {
            d,
            args,
            eval: Box::new(|_| Ok(Scalar::zero())),
        }
    }

    pub fn args(&self) -> usize {
        self.args
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn eval(&self, args: &[ADElement]) -> Result<Scalar, WindowError> {
        assert_eq!(args.len(), self.args);
        (self.eval)(args)
    }
}

fn theta_inf_eval(
    d: usize,
    window: &WeightWindow,
    args: &[ADElement],
    broken: bool,
) -> Result<Scalar, WindowError> {
    let mut prod = args[0].clone();
    if broken {
        prod = prod.mul(&ADElement::z(d, 1));
    }
    for a in &args[1..] {
        prod = prod.mul(&a.del());
    }
    let top = prod.component(d as u32, d as u32 - 1);
    if top.is_zero() {
        return Ok(Scalar::zero());
    }
    residue(&top, window)
}

fn total_degree(a: &ADElement) -> i64 {
    a.form_degree().unwrap_or(0)
}

/// Checks Hochschild-closedness, cyclic invariance and compatibility with
/// the Dolbeault differential on random tuples; `sampler` draws one
/// algebra element.
pub fn check_cyclic_cocycle(
    theta: &CyclicCochain,
    samples: usize,
    rng: &mut dyn RngCore,
    sampler: &mut dyn FnMut(&mut dyn RngCore) -> ADElement,
) -> Result<bool, WindowError> {
    let m = theta.args() - 1; // arity in the cyclic sense
    for _ in 0..samples {
        // cyclic invariance
        let tuple: Vec<ADElement> = (0..theta.args()).map(|_| sampler(rng)).collect();
        let direct = theta.eval(&tuple)?;
        let mut rotated = vec![tuple[m].clone()];
        rotated.extend_from_slice(&tuple[..m]);
        let koszul = total_degree(&tuple[m])
            * tuple[..m].iter().map(total_degree).sum::<i64>();
        let sign = if (m as i64 + koszul) % 2 == 0 { 1 } else { -1 };
        let rot = theta.eval(&rotated)?;
        if direct != &Scalar::from_int(sign) * &rot {
            return Ok(false);
        }
        // Hochschild b-closedness on one extra input
        let long: Vec<ADElement> = (0..theta.args() + 1).map(|_| sampler(rng)).collect();
        let mut b = Scalar::zero();
        for i in 0..=m {
            let mut t = Vec::with_capacity(theta.args());
            t.extend_from_slice(&long[..i]);
            t.push(long[i].mul(&long[i + 1]));
            t.extend_from_slice(&long[i + 2..]);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            b = &b + &(&Scalar::from_int(sign) * &theta.eval(&t)?);
        }
        let mut t = vec![long[m + 1].mul(&long[0])];
        t.extend_from_slice(&long[1..=m]);
        let koszul = total_degree(&long[m + 1])
            * long[..=m].iter().map(total_degree).sum::<i64>();
        let sign = if (m as i64 + 1 + koszul) % 2 == 0 { 1 } else { -1 };
        b = &b + &(&Scalar::from_int(sign) * &theta.eval(&t)?);
        if !b.is_zero() {
            return Ok(false);
        }
        // compatibility with dbar
        let mut db = Scalar::zero();
        let mut prefix = 0i64;
        for i in 0..theta.args() {
            let mut t = tuple.clone();
            t[i] = t[i].dbar();
            let sign = if prefix % 2 == 0 { 1 } else { -1 };
            db = &db + &(&Scalar::from_int(sign) * &theta.eval(&t)?);
            prefix += total_degree(&tuple[i]);
        }
        if !db.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------
// Loday-Quillen-Tsygan pullback
// ---------------------------------------------------------------------

/// An `N x N` matrix of forms.
pub type MatrixForm = Vec<Vec<ADElement>>;

/// Converts `x (x) f` summands over `gl_N` into an honest matrix of
/// forms.
pub fn matrix_form(terms: &BTreeMap<usize, ADElement>, n: usize, d: usize) -> MatrixForm {
    let mut m = vec![vec![ADElement::zero(d); n]; n];
    for (&idx, f) in terms {
        let (a, b) = (idx / n, idx % n);
        m[a][b] = m[a][b].add(f);
    }
    m
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Koszul sign of permuting homogeneous slots of the given degrees.
fn koszul_sign(p: &[usize], degs: &[i64]) -> i64 {
    let mut s = 1i64;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] && degs[p[i]] % 2 != 0 && degs[p[j]] % 2 != 0 {
                s = -s;
            }
        }
    }
    s
}

/// The generalized trace `sum_i Theta((X_0)_{i_0 i_1}, ...,
/// (X_m)_{i_m i_0})`.
fn generalized_trace(
    theta: &CyclicCochain,
    mats: &[&MatrixForm],
) -> Result<Scalar, WindowError> {
    let n = mats[0].len();
    let m = mats.len();
    let mut total = Scalar::zero();
    let mut indices = vec![0usize; m];
    loop {
        let mut args = Vec::with_capacity(m);
        let mut nonzero = true;
        for (s, mat) in mats.iter().enumerate() {
            let entry = &mat[indices[s]][indices[(s + 1) % m]];
            if entry.is_zero() {
                nonzero = false;
                break;
            }
            args.push(entry.clone());
        }
        if nonzero {
            total = &total + &theta.eval(&args)?;
        }
        // odometer
        let mut k = 0;
        loop {
            indices[k] += 1;
            if indices[k] < n {
                break;
            }
            indices[k] = 0;
            k += 1;
            if k == m {
                return Ok(total);
            }
        }
    }
}

/// The pullback of a cyclic cochain along `gl_N`: the generalized trace
/// antisymmetrized over permutations of the inputs past the first, with
/// Koszul signs taken in the shifted parities `q + 1` the Lie-theoretic
/// cochain sees, normalized by `1/m!` so pure tensors reproduce the
/// residue cocycle on the nose.
pub fn lqt_pullback(
    theta: &CyclicCochain,
    inputs: &[MatrixForm],
) -> Result<Scalar, WindowError> {
    assert_eq!(inputs.len(), theta.args());
    let m = inputs.len() - 1;
    let degs: Vec<i64> = inputs[1..]
        .iter()
        .map(|x| {
            x.iter()
                .flatten()
                .filter_map(|e| e.form_degree())
                .next()
                .unwrap_or(0)
                + 1
        })
        .collect();
    let mut total = Scalar::zero();
    for p in permutations(m) {
        let mut mats: Vec<&MatrixForm> = vec![&inputs[0]];
        for &j in &p {
            mats.push(&inputs[j + 1]);
        }
        let sign = koszul_sign(&p, &degs);
        let v = generalized_trace(theta, &mats)?;
        total = &total + &(&Scalar::from_int(sign) * &v);
    }
    let mut fact = 1i64;
    for k in 2..=m as i64 {
        fact *= k;
    }
    Ok(&total * &Scalar::ratio(1, fact))
}

/// `theta_{d+1, N}` matching the pullback normalization used in tests.
pub fn lqt_matching_theta(d: usize, n: usize) -> InvariantPolynomial {
    crate::lie::theta_kn(d + 1, n)
}
