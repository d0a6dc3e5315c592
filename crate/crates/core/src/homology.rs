//! Truncated Chevalley-Eilenberg chains of finite L-infinity windows,
//! the small model for Hochschild homology of U(g) over the Hopf
//! surface, and the independent coinvariants oracle it is checked
//! against.
//!
//! Chains live on `Sym(L[1])`: a generator of homological degree `n`
//! becomes a symmetric-algebra generator of parity `n + 1`. Words are
//! stored as sorted index lists; odd generators never repeat. The
//! differential is the coderivation extending `l_1`, `l_2` and the
//! optional central cocycle (which lands on the formal `K`-line rather
//! than a chain generator). `d^2 = 0` is verified exactly at
//! construction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{ChainComplexWindow, CohomologyReport, ComplexError, KPoly};
use crate::graded::GradedSpaceWindow;
use crate::lie::FiniteLieAlgebra;
use crate::matrix::SparseMatrix;
use crate::ring::Ring;
use crate::scalar::Scalar;

// ---------------------------------------------------------------------
// Finite L-infinity windows
// ---------------------------------------------------------------------

/// A central twist: an arity-`m` cochain valued in the `K`-line.
#[derive(Debug, Clone)]
pub struct CentralTwist {
    pub arity: usize,
    /// Values on index tuples in the order the arguments are extracted.
    /// The caller is responsible for the graded symmetry matching the
    /// generator parities; `d^2 = 0` at construction enforces the
    /// cocycle condition.
    pub values: BTreeMap<Vec<usize>, Scalar>,
}

impl CentralTwist {
    fn eval(&self, tuple: &[usize]) -> Scalar {
        self.values
            .get(tuple)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

/// A finite-dimensional L-infinity algebra given by structure constants
/// on a chosen basis: `l_1` (degree -1), `l_2` (degree 0), and an
/// optional higher central cocycle.
#[derive(Debug, Clone)]
pub struct LInfinityWindow {
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// `l1[j]` = coefficients of `l_1(e_j)` on the basis.
    l1: Vec<Vec<Scalar>>,
    /// `l2[i][j]` = coefficients of `l_2(e_i, e_j)`; must be graded
    /// antisymmetric in the suspended parities.
    l2: Vec<Vec<Vec<Scalar>>>,
    central: Option<CentralTwist>,
}

impl LInfinityWindow {
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<i64>,
        l1: Vec<Vec<Scalar>>,
        l2: Vec<Vec<Vec<Scalar>>>,
        central: Option<CentralTwist>,
    ) -> Self {
        let n = labels.len();
        assert_eq!(degrees.len(), n);
        assert_eq!(l1.len(), n);
        assert!(l1.iter().all(|v| v.len() == n));
        assert_eq!(l2.len(), n);
        assert!(l2.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n)));
        LInfinityWindow {
            labels,
            degrees,
            l1,
            l2,
            central,
        }
    }

    /// A plain finite Lie algebra in degree 0, no differential.
    pub fn from_lie(g: &FiniteLieAlgebra) -> Self {
        let n = g.dim();
        let zero_vec = vec![Scalar::zero(); n];
        let l2 = (0..n)
            .map(|i| (0..n).map(|j| g.bracket_basis(i, j).to_vec()).collect())
            .collect();
        LInfinityWindow {
            labels: g.labels().to_vec(),
            degrees: vec![0; n],
            l1: vec![zero_vec; n],
            l2,
            central: None,
        }
    }

    /// Abelian algebra with generators in the given degrees.
    pub fn abelian(degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        let zero_vec = vec![Scalar::zero(); n];
        LInfinityWindow {
            labels: (0..n).map(|i| format!("a{}", i + 1)).collect(),
            degrees,
            l1: vec![zero_vec.clone(); n],
            l2: vec![vec![zero_vec; n]; n],
            central: None,
        }
    }

    /// `g (+) g[-1]`: the first copy in degree 0 acting on the second
    /// copy (degree -1) by the adjoint action; the shifted copy brackets
    /// to zero with itself.
    pub fn hopf_double(g: &FiniteLieAlgebra) -> Self {
        let n = g.dim();
        let dim = 2 * n;
        let mut labels: Vec<String> = g.labels().to_vec();
        labels.extend(g.labels().iter().map(|l| format!("{}~", l)));
        let mut degrees = vec![0i64; n];
        degrees.extend(vec![-1i64; n]);
        let zero_vec = vec![Scalar::zero(); dim];
        let mut l2 = vec![vec![zero_vec.clone(); dim]; dim];
        let pad = |v: &[Scalar], shift: usize| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); dim];
            for (k, c) in v.iter().enumerate() {
                out[k + shift] = c.clone();
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                let b = g.bracket_basis(i, j);
                l2[i][j] = pad(b, 0);
                // [x_i, a_j] = ad_{x_i}(a_j), landing in the shifted copy;
                // x_i is even in Sym(L[1])-parity terms? no: x_i suspends to
                // odd, a_j to even, so the pair is symmetric-free and the
                // two orders agree up to the Koszul sign (+1 here).
                l2[i][j + n] = pad(b, n);
                l2[j + n][i] = pad(&b.iter().map(|c| -c).collect::<Vec<_>>(), n);
            }
        }
        LInfinityWindow {
            labels,
            degrees,
            l1: vec![zero_vec; dim],
            l2,
            central: None,
        }
    }

    pub fn with_central(mut self, twist: CentralTwist) -> Self {
        self.central = Some(twist);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Parity of a generator inside `Sym(L[1])`.
    fn parity(&self, i: usize) -> i64 {
        (self.degrees[i] + 1).rem_euclid(2)
    }
}

// ---------------------------------------------------------------------
// Chevalley-Eilenberg chains
// ---------------------------------------------------------------------

fn word_label(lw: &LInfinityWindow, word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter()
            .map(|&i| lw.labels[i].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Homological degree of a word of suspended generators.
fn word_degree(lw: &LInfinityWindow, word: &[usize]) -> i64 {
    word.iter().map(|&i| lw.degrees[i] + 1).sum()
}

/// Number of even-parity (symmetric) generators in the word; used as the
/// auxiliary weight so callers can split the complex.
fn word_sym_count(lw: &LInfinityWindow, word: &[usize]) -> i64 {
    word.iter().filter(|&&i| lw.parity(i) == 0).count() as i64
}

fn enumerate_words(lw: &LInfinityWindow, cutoff: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..cutoff {
        let mut next = Vec::new();
        for w in &layer {
            let start = w.last().map_or(0, |&l| l);
            for i in start..lw.dim() {
                // odd generators square to zero
                if lw.parity(i) != 0 && w.last() == Some(&i) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(i);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Koszul sign of extracting the listed positions (strictly increasing)
/// to the front of the word, keeping relative order.
fn extraction_sign(lw: &LInfinityWindow, word: &[usize], positions: &[usize]) -> i64 {
    let mut sign = 1i64;
    for (k, &p) in positions.iter().enumerate() {
        if lw.parity(word[p]) == 0 {
            continue;
        }
        // crossings: odd elements before p that are not among the already
        // extracted positions
        let crossed = word[..p]
            .iter()
            .enumerate()
            .filter(|&(q, &g)| lw.parity(g) != 0 && !positions[..k].contains(&q))
            .count();
        if crossed % 2 != 0 {
            sign = -sign;
        }
    }
    sign
}

/// Inserts generator `u` into the sorted remainder, returning the signed
/// word; `None` when an odd generator repeats.
fn insert_generator(
    lw: &LInfinityWindow,
    rest: &[usize],
    u: usize,
) -> Option<(Vec<usize>, i64)> {
    let pos = rest.iter().take_while(|&&g| g < u).count();
    if lw.parity(u) != 0 && rest[pos..].first() == Some(&u) {
        return None;
    }
    let mut w = rest.to_vec();
    w.insert(pos, u);
    let mut sign = 1i64;
    if lw.parity(u) != 0 {
        let crossed = rest[..pos].iter().filter(|&&g| lw.parity(g) != 0).count();
        if crossed % 2 != 0 {
            sign = -1;
        }
    }
    Some((w, sign))
}

fn remove_positions(word: &[usize], positions: &[usize]) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|(p, _)| !positions.contains(p))
        .map(|(_, &g)| g)
        .collect()
}

fn increasing_tuples(len: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, len: usize, left: usize) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in start..len {
            cur.push(p);
            rec(out, cur, p + 1, len, left - 1);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, len, arity);
    out
}

/// Truncated Chevalley-Eilenberg chains `Sym^{<= cutoff}(L[1])` with the
/// coderivation differential; rejects inputs whose structure constants do
/// not square to zero. Stored cohomologically: chain degree `n` holds
/// words of homological degree `-n`; the auxiliary weight records the
/// number of symmetric generators.
pub fn ce_complex(
    lw: &LInfinityWindow,
    sym_cutoff: usize,
) -> Result<ChainComplexWindow, ComplexError> {
    assert!(sym_cutoff >= 1, "sym_cutoff must be at least 1");
    let words = enumerate_words(lw, sym_cutoff);
    let mut by_degree: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for w in words {
        by_degree.entry(-word_degree(lw, &w)).or_default().push(w);
    }
    let mut spaces: BTreeMap<i64, GradedSpaceWindow> = BTreeMap::new();
    let mut index: BTreeMap<Vec<usize>, (i64, usize)> = BTreeMap::new();
    for (&n, ws) in &by_degree {
        let mut gw = GradedSpaceWindow::new();
        for w in ws {
            let i = gw.push(word_label(lw, w), n, Some(vec![word_sym_count(lw, w)]));
            index.insert(w.clone(), (n, i));
        }
        spaces.insert(n, gw);
    }
    let mut diffs: BTreeMap<i64, SparseMatrix<KPoly>> = BTreeMap::new();
    for (&n, ws) in &by_degree {
        let Some(cod) = spaces.get(&(n + 1)) else {
            continue;
        };
        let mut m = SparseMatrix::zero(cod.len(), ws.len());
        for (col, w) in ws.iter().enumerate() {
            let mut acc: BTreeMap<Vec<usize>, KPoly> = BTreeMap::new();
            let mut push = |word: Vec<usize>, v: KPoly| {
                if v.is_zero() {
                    return;
                }
                let slot = acc.entry(word).or_insert_with(KPoly::zero);
                *slot = slot.add(&v);
            };
            // l_1 term
            for p in 0..w.len() {
                let sign = extraction_sign(lw, w, &[p]);
                let rest = remove_positions(w, &[p]);
                for (u, c) in lw.l1[w[p]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((nw, s2)) = insert_generator(lw, &rest, u) {
                        push(nw, KPoly::constant(&Scalar::from_int(sign * s2) * c));
                    }
                }
            }
            // l_2 term
            for pair in increasing_tuples(w.len(), 2) {
                let sign = extraction_sign(lw, w, &pair);
                let rest = remove_positions(w, &pair);
                let (a, b) = (w[pair[0]], w[pair[1]]);
                for (u, c) in lw.l2[a][b].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((nw, s2)) = insert_generator(lw, &rest, u) {
                        push(nw, KPoly::constant(&Scalar::from_int(sign * s2) * c));
                    }
                }
            }
            // central twist: lands on the K-line, no generator inserted
            if let Some(tw) = &lw.central {
                for tuple in increasing_tuples(w.len(), tw.arity) {
                    let gens: Vec<usize> = tuple.iter().map(|&p| w[p]).collect();
                    let v = tw.eval(&gens);
                    if v.is_zero() {
                        continue;
                    }
                    let sign = extraction_sign(lw, w, &tuple);
                    let rest = remove_positions(w, &tuple);
                    push(
                        rest,
                        KPoly::k().mul(&KPoly::constant(&Scalar::from_int(sign) * &v)),
                    );
                }
            }
            for (word, v) in acc {
                if let Some(&(deg, row)) = index.get(&word) {
                    if deg != n + 1 {
                        return Err(ComplexError::Shape(format!(
                            "structure constants are not of differential degree: \
                             {} lands in degree {} instead of {}",
                            word_label(lw, w),
                            deg,
                            n + 1
                        )));
                    }
                    m.add_to(row, col, &v);
                }
            }
        }
        diffs.insert(n, m);
    }
    ChainComplexWindow::new(spaces, diffs)
}

// ---------------------------------------------------------------------
// Weight splitting and the Hopf small model
// ---------------------------------------------------------------------

/// Splits a complex into weight blocks; errors if the differential mixes
/// weights.
pub fn split_by_weight(
    cc: &ChainComplexWindow,
) -> Result<BTreeMap<Vec<i64>, ChainComplexWindow>, ComplexError> {
    let mut weights: Vec<Vec<i64>> = Vec::new();
    for n in cc.degrees().collect::<Vec<_>>() {
        let w = cc.space(n).unwrap();
        for i in 0..w.len() {
            let wt = w
                .weight(i)
                .ok_or_else(|| ComplexError::Shape("basis element without weight".into()))?
                .to_vec();
            if !weights.contains(&wt) {
                weights.push(wt);
            }
        }
    }
    let mut out = BTreeMap::new();
    for wt in weights {
        let mut spaces = BTreeMap::new();
        let mut selections: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for n in cc.degrees().collect::<Vec<_>>() {
            let w = cc.space(n).unwrap();
            let sel: Vec<usize> = (0..w.len())
                .filter(|&i| w.weight(i) == Some(wt.as_slice()))
                .collect();
            let mut gw = GradedSpaceWindow::new();
            for &i in &sel {
                gw.push(w.label(i).to_string(), n, Some(wt.clone()));
            }
            selections.insert(n, sel);
            spaces.insert(n, gw);
        }
        let mut diffs = BTreeMap::new();
        for n in cc.degrees().collect::<Vec<_>>() {
            let Some(d) = cc.differential(n) else { continue };
            let dom = &selections[&n];
            let cod = &selections[&(n + 1)];
            let full_cod = cc.space(n + 1).unwrap();
            let mut m = SparseMatrix::zero(cod.len(), dom.len());
            for (r, c, v) in d.entries() {
                let in_dom = dom.iter().position(|&i| i == c);
                let in_cod = cod.iter().position(|&i| i == r);
                match (in_dom, in_cod) {
                    (Some(cc2), Some(rr)) => m.set(rr, cc2, v.clone()),
                    (Some(_), None) => {
                        return Err(ComplexError::Shape(format!(
                            "differential mixes weights at degree {} ({} -> {})",
                            n,
                            cc.space(n).unwrap().label(c),
                            full_cod.label(r),
                        )))
                    }
                    _ => {}
                }
            }
            diffs.insert(n, m);
        }
        out.insert(wt, ChainComplexWindow::new(spaces, diffs)?);
    }
    Ok(out)
}

/// The small model for Hochschild homology of `U(g)`: Chevalley-Eilenberg
/// chains of `g (+) g[-1]`, graded by the symmetric power of the shifted
/// copy.
#[derive(Debug, Clone)]
pub struct HopfSmallModel {
    /// Homology dimensions keyed by `(homological degree, Sym-power)`.
    pub homology: BTreeMap<(i64, i64), usize>,
    /// Degree-0 dimensions per Sym-power `0..=cutoff`.
    pub degree0_dims: Vec<usize>,
    pub sym_cutoff: usize,
}

pub fn hopf_small_model(
    g: &FiniteLieAlgebra,
    sym_cutoff: usize,
) -> Result<HopfSmallModel, ComplexError> {
    let lw = LInfinityWindow::hopf_double(g);
    // words mix up to dim(g) exterior generators with the symmetric ones
    let cc = ce_complex(&lw, sym_cutoff + g.dim())?;
    let blocks = split_by_weight(&cc)?;
    let mut homology = BTreeMap::new();
    let mut degree0 = vec![0usize; sym_cutoff + 1];
    for (wt, block) in &blocks {
        let s = wt[0];
        if s > sym_cutoff as i64 {
            // exterior-only tails above the requested symmetric power
            continue;
        }
        let rep: CohomologyReport = crate::complex::cohomology_window(block)?;
        for (&n, &dim) in &rep.dims {
            if dim > 0 {
                // stored cohomologically; report the homological degree
                homology.insert((-n, s), dim);
            }
            if n == 0 {
                degree0[s as usize] = dim;
            }
        }
    }
    Ok(HopfSmallModel {
        homology,
        degree0_dims: degree0,
        sym_cutoff,
    })
}

// ---------------------------------------------------------------------
// Coinvariants oracle
// ---------------------------------------------------------------------

/// Dimensions of `Sym^s(g)_g` for `s = 0..=cutoff`, computed directly as
/// the cokernel of the adjoint action. Independent of the complex
/// machinery above.
pub fn coinvariants_dims(g: &FiniteLieAlgebra, cutoff: usize) -> Vec<usize> {
    let n = g.dim();
    let mut out = Vec::with_capacity(cutoff + 1);
    for s in 0..=cutoff {
        // monomials of degree s: sorted index lists
        let mut monos: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..s {
            let mut next = Vec::new();
            for m in &monos {
                let start = m.last().map_or(0, |&l| l);
                for i in start..n {
                    let mut nm = m.clone();
                    nm.push(i);
                    next.push(nm);
                }
            }
            monos = next;
        }
        let idx: BTreeMap<Vec<usize>, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        // columns: x_i . m for all generators and monomials
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..n {
            for m in &monos {
                let mut col = vec![Scalar::zero(); monos.len()];
                for p in 0..m.len() {
                    for (u, c) in g.bracket_basis(i, m[p]).iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut nm = m.clone();
                        nm[p] = u;
                        nm.sort();
                        let r = idx[&nm];
                        col[r] = &col[r] + c;
                    }
                }
                if col.iter().any(|v| !v.is_zero()) {
                    cols.push(col);
                }
            }
        }
        let rank = SparseMatrix::from_columns(monos.len(), &cols).rank();
        out.push(monos.len() - rank);
    }
    out
}

#[cfg(test)]
mod tests;
