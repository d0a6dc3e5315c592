//! Finite windows of cochain complexes with exact differentials, and the
//! engine computing their cohomology.
//!
//! One internal convention: degrees are cohomological, differentials
//! raise degree by +1. Homological complexes are stored with negated
//! degrees. Entries may carry the formal central parameter `K`
//! polynomially; cohomology is computed after specializing `K`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graded::GradedSpaceWindow;
use crate::matrix::SparseMatrix;
use crate::ring::Ring;
use crate::scalar::Scalar;

// ---------------------------------------------------------------------
// Polynomials in the central parameter K
// ---------------------------------------------------------------------

/// A polynomial in the formal central parameter `K` with `Scalar`
/// coefficients, lowest degree first.
#[derive(Clone, PartialEq)]
pub struct KPoly(pub Vec<Scalar>);

impl KPoly {
    pub fn constant(s: Scalar) -> Self {
        if s.is_zero() {
            KPoly(Vec::new())
        } else {
            KPoly(vec![s])
        }
    }

    /// `K` itself.
    pub fn k() -> Self {
        KPoly(vec![Scalar::zero(), Scalar::one()])
    }

    fn trim(mut v: Vec<Scalar>) -> Self {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        KPoly(v)
    }

    pub fn specialize(&self, k: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * k) + c;
        }
        acc
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    /// The constant (K-free) part.
    pub fn constant_part(&self) -> Scalar {
        self.0.first().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*K", c)?,
                _ => write!(f, "({})*K^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl Ring for KPoly {
    fn zero() -> Self {
        KPoly(Vec::new())
    }
    fn one() -> Self {
        KPoly(vec![Scalar::one()])
    }
    fn add(&self, other: &Self) -> Self {
        let mut v = vec![Scalar::zero(); self.0.len().max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i] = &v[i] + c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] = &v[i] + c;
        }
        KPoly::trim(v)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return KPoly(Vec::new());
        }
        let mut v = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        KPoly::trim(v)
    }
    fn neg(&self) -> Self {
        KPoly(self.0.iter().map(|c| -c).collect())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

// ---------------------------------------------------------------------
// Chain complex windows
// ---------------------------------------------------------------------

/// Error constructing or analyzing a complex window.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexError {
    /// `d^2 != 0` at the listed degrees.
    NotAComplex(Vec<i64>),
    /// Entries depend on `K`; specialize first.
    KDependent,
    Shape(String),
}

/// A finite window of a cochain complex: per-degree labeled spaces and
/// exact differential matrices `d_n : C^n -> C^{n+1}`, entries in
/// `Scalar[K]`.
#[derive(Debug, Clone)]
pub struct ChainComplexWindow {
    spaces: BTreeMap<i64, GradedSpaceWindow>,
    diffs: BTreeMap<i64, SparseMatrix<KPoly>>,
}

impl ChainComplexWindow {
    /// Builds a window and verifies `d^2 = 0` exactly on the interior.
    pub fn new(
        spaces: BTreeMap<i64, GradedSpaceWindow>,
        diffs: BTreeMap<i64, SparseMatrix<KPoly>>,
    ) -> Result<Self, ComplexError> {
        for (&n, d) in &diffs {
            let dom = spaces
                .get(&n)
                .ok_or_else(|| ComplexError::Shape(String::from("differential without domain")))?;
            let cod = spaces
                .get(&(n + 1))
                .ok_or_else(|| ComplexError::Shape(String::from("differential without codomain")))?;
            if d.cols() != dom.len() || d.rows() != cod.len() {
                return Err(ComplexError::Shape(String::from(
                    "differential shape does not match space dimensions",
                )));
            }
        }
        let cc = ChainComplexWindow { spaces, diffs };
        let mut bad = Vec::new();
        for (&n, d) in &cc.diffs {
            if let Some(d_next) = cc.diffs.get(&(n + 1)) {
                if !d_next.mul_mat(d).is_zero() {
                    bad.push(n);
                }
            }
        }
        if !bad.is_empty() {
            return Err(ComplexError::NotAComplex(bad));
        }
        Ok(cc)
    }

    /// A complex over plain scalars.
    pub fn from_scalar(
        spaces: BTreeMap<i64, GradedSpaceWindow>,
        diffs: BTreeMap<i64, SparseMatrix<Scalar>>,
    ) -> Result<Self, ComplexError> {
        let lifted = diffs
            .into_iter()
            .map(|(n, m)| {
                let mut out = SparseMatrix::zero(m.rows(), m.cols());
                for (r, c, v) in m.entries() {
                    out.set(r, c, KPoly::constant(v.clone()));
                }
                (n, out)
            })
            .collect();
        Self::new(spaces, lifted)
    }

    pub fn space(&self, n: i64) -> Option<&GradedSpaceWindow> {
        self.spaces.get(&n)
    }

    pub fn differential(&self, n: i64) -> Option<&SparseMatrix<KPoly>> {
        self.diffs.get(&n)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.spaces.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.spaces.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.spaces.keys().next_back().copied()
    }

    pub fn depends_on_k(&self) -> bool {
        self.diffs
            .values()
            .any(|m| m.entries().any(|(_, _, v)| !v.is_constant()))
    }

    /// Specializes `K` to a scalar value.
    pub fn specialize_k(&self, k: &Scalar) -> BTreeMap<i64, SparseMatrix<Scalar>> {
        self.diffs
            .iter()
            .map(|(&n, m)| {
                let mut out = SparseMatrix::zero(m.rows(), m.cols());
                for (r, c, v) in m.entries() {
                    out.set(r, c, v.specialize(k));
                }
                (n, out)
            })
            .collect()
    }

    /// Shift: degree `n` of the result is degree `n - shift` of the input.
    pub fn shifted(&self, shift: i64) -> ChainComplexWindow {
        ChainComplexWindow {
            spaces: self.spaces.iter().map(|(&n, w)| (n + shift, w.clone())).collect(),
            diffs: self.diffs.iter().map(|(&n, m)| (n + shift, m.clone())).collect(),
        }
    }
}

/// Per-degree cohomology of a window.
#[derive(Debug, Clone)]
pub struct CohomologyReport {
    /// Dimensions of `H^n` for interior degrees.
    pub dims: BTreeMap<i64, usize>,
    /// Representative vectors spanning a complement of the image inside
    /// the kernel, in the basis of the degree-`n` space.
    pub representatives: BTreeMap<i64, Vec<Vec<Scalar>>>,
    /// Degrees at the window boundary, where kernel or image may leak
    /// outside the window; callers must widen the window to trust them.
    pub boundary_contaminated: Vec<i64>,
}

/// Cohomology of the window. `K`-dependent complexes must be specialized
/// first. For each interior degree `dim H^n = dim ker d_n - rank d_{n-1}`.
pub fn cohomology_window(cc: &ChainComplexWindow) -> Result<CohomologyReport, ComplexError> {
    if cc.depends_on_k() {
        return Err(ComplexError::KDependent);
    }
    let matrices = cc.specialize_k(&Scalar::zero());
    cohomology_of_matrices(cc, &matrices)
}

pub(crate) fn cohomology_of_matrices(
    cc: &ChainComplexWindow,
    matrices: &BTreeMap<i64, SparseMatrix<Scalar>>,
) -> Result<CohomologyReport, ComplexError> {
    let (Some(lo), Some(hi)) = (cc.min_degree(), cc.max_degree()) else {
        return Ok(CohomologyReport {
            dims: BTreeMap::new(),
            representatives: BTreeMap::new(),
            boundary_contaminated: Vec::new(),
        });
    };
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    let mut contaminated = Vec::new();
    for (&n, w) in &cc.spaces {
        // a degree is trustworthy when the window itself shows where
        // incoming and outgoing differentials live
        if n == lo && cc.spaces.len() > 1 && !matrices.contains_key(&(lo - 1)) && lo != hi {
            contaminated.push(n);
        }
        if n == hi && cc.spaces.len() > 1 && !matrices.contains_key(&hi) {
            contaminated.push(n);
        }
        let dn = matrices.get(&n);
        let kernel: Vec<Vec<Scalar>> = match dn {
            Some(m) => m.rank_kernel().kernel,
            // no outgoing differential stored: treat as zero map
            None => SparseMatrix::<Scalar>::zero(0, w.len()).rank_kernel().kernel,
        };
        let prev_rank = matrices.get(&(n - 1)).map_or(0, |m| m.rank());
        let h_dim = kernel.len().saturating_sub(prev_rank);
        dims.insert(n, h_dim);
        // representatives: kernel vectors independent modulo the image
        let mut reps: Vec<Vec<Scalar>> = Vec::new();
        if h_dim > 0 {
            let mut span: Vec<Vec<Scalar>> = Vec::new();
            if let Some(dprev) = matrices.get(&(n - 1)) {
                for c in 0..dprev.cols() {
                    let mut col = vec![Scalar::zero(); dprev.rows()];
                    for (r, cc2, v) in dprev.entries() {
                        if cc2 == c {
                            col[r] = v.clone();
                        }
                    }
                    span.push(col);
                }
            }
            let base_rank = SparseMatrix::from_columns(w.len(), &span).rank();
            for v in &kernel {
                if reps.len() == h_dim {
                    break;
                }
                let mut trial = span.clone();
                trial.extend(reps.iter().cloned());
                trial.push(v.clone());
                if SparseMatrix::from_columns(w.len(), &trial).rank() > base_rank + reps.len() {
                    reps.push(v.clone());
                }
            }
        }
        representatives.insert(n, reps);
    }
    Ok(CohomologyReport {
        dims,
        representatives,
        boundary_contaminated: contaminated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, tag: &str, degree: i64) -> GradedSpaceWindow {
        let mut w = GradedSpaceWindow::new();
        for i in 0..n {
            w.push(alloc::format!("{}{}", tag, i), degree, None);
        }
        w
    }

    fn scalar_mat(rows: usize, cols: usize, vals: &[(usize, usize, i64)]) -> SparseMatrix<Scalar> {
        let mut m = SparseMatrix::zero(rows, cols);
        for &(r, c, v) in vals {
            m.set(r, c, Scalar::from_int(v));
        }
        m
    }

    fn two_term(d: SparseMatrix<Scalar>) -> ChainComplexWindow {
        let mut spaces = BTreeMap::new();
        spaces.insert(0, space(d.cols(), "a", 0));
        spaces.insert(1, space(d.rows(), "b", 1));
        let mut diffs = BTreeMap::new();
        diffs.insert(0, d);
        ChainComplexWindow::from_scalar(spaces, diffs).unwrap()
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let cc = two_term(scalar_mat(2, 2, &[(0, 0, 1), (1, 1, 1)]));
        let rep = cohomology_window(&cc).unwrap();
        assert_eq!(rep.dims[&0], 0);
        assert_eq!(rep.dims[&1], 0);
    }

    #[test]
    fn zero_differential_gives_chain_dims() {
        let cc = two_term(scalar_mat(3, 2, &[]));
        let rep = cohomology_window(&cc).unwrap();
        assert_eq!(rep.dims[&0], 2);
        assert_eq!(rep.dims[&1], 3);
    }

    #[test]
    fn rank_one_differential() {
        // 2-dim -> 2-dim with rank 1: dims (1, 1) by rank-nullity
        let cc = two_term(scalar_mat(2, 2, &[(0, 0, 1), (0, 1, 1)]));
        let rep = cohomology_window(&cc).unwrap();
        assert_eq!(rep.dims[&0], 1);
        assert_eq!(rep.dims[&1], 1);
        assert_eq!(rep.representatives[&0].len(), 1);
    }

    #[test]
    fn d_squared_checked() {
        let mut spaces = BTreeMap::new();
        spaces.insert(0, space(1, "a", 0));
        spaces.insert(1, space(1, "b", 1));
        spaces.insert(2, space(1, "c", 2));
        let mut diffs = BTreeMap::new();
        diffs.insert(0, scalar_mat(1, 1, &[(0, 0, 1)]));
        diffs.insert(1, scalar_mat(1, 1, &[(0, 0, 1)]));
        match ChainComplexWindow::from_scalar(spaces, diffs) {
            Err(ComplexError::NotAComplex(bad)) => assert_eq!(bad, alloc::vec![0]),
            other => panic!("expected NotAComplex, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn shift_shifts_dims() {
        let cc = two_term(scalar_mat(2, 2, &[(0, 0, 1), (0, 1, 1)]));
        let rep = cohomology_window(&cc).unwrap();
        let rep_shift = cohomology_window(&cc.shifted(1)).unwrap();
        for (&n, &d) in &rep.dims {
            assert_eq!(rep_shift.dims[&(n + 1)], d);
        }
    }

    #[test]
    fn kpoly_arithmetic_and_specialization() {
        let p = KPoly::k().mul(&KPoly::k()).add(&KPoly::constant(Scalar::from_int(3)));
        assert_eq!(p.specialize(&Scalar::from_int(2)), Scalar::from_int(7));
        assert_eq!(p.degree(), Some(2));
        assert!(!p.is_constant());
    }
}
