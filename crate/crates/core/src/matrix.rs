//! Sparse matrices with exact entries, and the Gaussian elimination that
//! backs every rank, kernel and quotient computation in the crate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::ring::{Field, Ring};

/// A sparse matrix over an exact ring. No zero entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T: Ring> {
    rows: usize,
    cols: usize,
    /// row index -> (col index -> entry)
    data: Vec<BTreeMap<usize, T>>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &T) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|row| row.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        for (r, c, v) in self.entries() {
            out.set(r, c, v.mul(s));
        }
        out
    }

    pub fn add_mat(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub_mat(&self, other: &Self) -> Self {
        self.add_mat(&other.scale(&T::one().neg()))
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert!(self.cols == other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for (&k, a) in &self.data[r] {
                for (&c, b) in &other.data[k] {
                    out.add_to(r, c, &a.mul(b));
                }
            }
        }
        out
    }

    /// Matrix-vector product with a dense vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![T::zero(); self.rows];
        for (r, c, a) in self.entries() {
            out[r] = out[r].add(&a.mul(&v[c]));
        }
        out
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }
}

/// Result of Gaussian elimination: the rank and an exact kernel basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RankKernel<T: Ring> {
    pub rank: usize,
    /// Dense kernel vectors, one per free column.
    pub kernel: Vec<Vec<T>>,
}

impl<T: Field> SparseMatrix<T> {
    /// Row-reduces a copy of the matrix. Returns the reduced rows together
    /// with the pivot (row, col) list, pivots in column order.
    fn rref(&self) -> (Vec<BTreeMap<usize, T>>, Vec<(usize, usize)>) {
        let mut rows: Vec<BTreeMap<usize, T>> = self.data.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut used = vec![false; self.rows];
        for col in 0..self.cols {
            // pivot choice: unused row with a nonzero entry in this column,
            // preferring small support to limit fill-in
            let mut best: Option<(usize, usize)> = None;
            for r in 0..self.rows {
                if used[r] {
                    continue;
                }
                if rows[r].contains_key(&col) {
                    let support = rows[r].len();
                    if best.map_or(true, |(_, s)| support < s) {
                        best = Some((r, support));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            used[p] = true;
            pivots.push((p, col));
            let inv = rows[p].get(&col).unwrap().inv();
            let prow: BTreeMap<usize, T> = rows[p]
                .iter()
                .map(|(&c, v)| (c, v.mul(&inv)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            rows[p] = prow.clone();
            for r in 0..self.rows {
                if r == p {
                    continue;
                }
                if let Some(f) = rows[r].get(&col).cloned() {
                    for (&c, v) in &prow {
                        let cur = rows[r].get(&c).cloned().unwrap_or_else(T::zero);
                        let nv = cur.sub(&f.mul(v));
                        if nv.is_zero() {
                            rows[r].remove(&c);
                        } else {
                            rows[r].insert(c, nv);
                        }
                    }
                }
            }
        }
        pivots.sort_by_key(|&(_, c)| c);
        (rows, pivots)
    }

    /// Exact rank and kernel basis. `rank + kernel.len() == cols`.
    pub fn rank_kernel(&self) -> RankKernel<T> {
        let (rows, pivots) = self.rref();
        let pivot_cols: BTreeMap<usize, usize> = pivots.iter().map(|&(r, c)| (c, r)).collect();
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains_key(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (&c, &r) in &pivot_cols {
                if let Some(a) = rows[r].get(&free) {
                    v[c] = a.neg();
                }
            }
            kernel.push(v);
        }
        RankKernel {
            rank: pivots.len(),
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self * x = rhs` exactly; `None` if inconsistent.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(rhs.len(), self.rows);
        // eliminate on the augmented matrix
        let mut aug = SparseMatrix::zero(self.rows, self.cols + 1);
        for (r, c, v) in self.entries() {
            aug.set(r, c, v.clone());
        }
        for (r, v) in rhs.iter().enumerate() {
            if !v.is_zero() {
                aug.set(r, self.cols, v.clone());
            }
        }
        let (rows, pivots) = aug.rref();
        let mut x = vec![T::zero(); self.cols];
        for &(r, c) in &pivots {
            if c == self.cols {
                return None; // pivot in the rhs column: inconsistent
            }
            if let Some(v) = rows[r].get(&self.cols) {
                x[c] = v.clone();
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_full_rank() {
        let m: SparseMatrix<Scalar> = SparseMatrix::identity(2);
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 2);
        assert!(rk.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_full_kernel() {
        let m: SparseMatrix<Scalar> = SparseMatrix::zero(2, 2);
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 2);
        assert_eq!(rk.kernel[0][0], s(1));
        assert_eq!(rk.kernel[1][1], s(1));
    }

    /// Brute-force rank oracle: largest k with a nonzero k x k minor.
    fn rank_by_minors(m: &SparseMatrix<Scalar>) -> usize {
        fn det(m: &SparseMatrix<Scalar>, rows: &[usize], cols: &[usize]) -> Scalar {
            if rows.is_empty() {
                return s(1);
            }
            let mut acc = Scalar::zero();
            let r0 = rows[0];
            for (i, &c) in cols.iter().enumerate() {
                let a = m.get(r0, c);
                if a.is_zero() {
                    continue;
                }
                let sub_rows: Vec<usize> = rows[1..].to_vec();
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &c)| c)
                    .collect();
                let minor = det(m, &sub_rows, &sub_cols);
                let term = &a * &minor;
                if i % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
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
            let mut cur = Vec::new();
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rows in combos(m.rows(), k) {
                for cols in combos(m.cols(), k) {
                    if !det(m, &rows, &cols).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn random_rank_matches_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let mut m = SparseMatrix::zero(4, 4);
            for r in 0..4 {
                for c in 0..4 {
                    let v = (rng.next_u32() % 7) as i64 - 3;
                    m.set(r, c, s(v));
                }
            }
            let rk = m.rank_kernel();
            assert_eq!(rk.rank, rank_by_minors(&m));
            assert_eq!(rk.rank + rk.kernel.len(), 4);
            for v in &rk.kernel {
                assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn rank_invariant_under_row_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut m = SparseMatrix::zero(3, 4);
        for r in 0..3 {
            for c in 0..4 {
                m.set(r, c, s((rng.next_u32() % 5) as i64 - 2));
            }
        }
        let mut p = SparseMatrix::zero(3, 4);
        for (r, c, v) in m.entries() {
            p.set((r + 1) % 3, c, v.clone());
        }
        let p = p; // row-rotated copy
        assert_eq!(m.rank(), p.rank());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut m = SparseMatrix::zero(2, 2);
        m.set(0, 0, s(1));
        m.set(0, 1, s(2));
        m.set(1, 0, s(2));
        m.set(1, 1, s(4));
        // rhs in the column span
        let x = m.solve(&[s(3), s(6)]).unwrap();
        let back = m.apply(&x);
        assert_eq!(back, vec![s(3), s(6)]);
        // rhs outside the span
        assert!(m.solve(&[s(1), s(0)]).is_none());
    }

    #[test]
    fn empty_matrix() {
        let m: SparseMatrix<Scalar> = SparseMatrix::zero(0, 3);
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 3);
    }
}
