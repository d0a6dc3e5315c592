//! Finite-dimensional Lie algebras with exact structure constants,
//! their representations, and invariant polynomials (symmetrized trace
//! forms, Killing form, Chern character).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Dense small matrix helpers, row-major.
pub type Mat = Vec<Vec<Scalar>>;

pub fn mat_zero(n: usize, m: usize) -> Mat {
    vec![vec![Scalar::zero(); m]; n]
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = if k > 0 { b[0].len() } else { 0 };
    let mut out = mat_zero(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_trace(a: &Mat) -> Scalar {
    let mut t = Scalar::zero();
    for (i, row) in a.iter().enumerate() {
        t = &t + &row[i];
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    NotARepresentation { i: usize, j: usize },
    Shape(String),
    Parse { line: usize, message: String },
}

/// A Lie algebra given by structure constants on a labeled basis.
/// Antisymmetry and the Jacobi identity are verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLieAlgebra {
    name: String,
    labels: Vec<String>,
    /// brackets[i][j] = coefficients of [x_i, x_j] over the basis
    brackets: Vec<Vec<Vec<Scalar>>>,
}

impl FiniteLieAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<FiniteLieAlgebra, LieError> {
        let n = labels.len();
        if brackets.len() != n || brackets.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(LieError::Shape("structure constant table must be n x n x n".into()));
        }
        let g = FiniteLieAlgebra {
            name: name.into(),
            labels,
            brackets,
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if g.brackets[i][j][k] != -&g.brackets[j][i][k] {
                        return Err(LieError::Antisymmetry { i, j });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0
                    let mut total = vec![Scalar::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for m in 0..n {
                            if g.brackets[a][b][m].is_zero() {
                                continue;
                            }
                            for l in 0..n {
                                total[l] =
                                    &total[l] + &(&g.brackets[a][b][m] * &g.brackets[m][c][l]);
                            }
                        }
                    }
                    if total.iter().any(|s| !s.is_zero()) {
                        return Err(LieError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i][j]
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    if !self.brackets[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&c * &self.brackets[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// The adjoint matrix of basis element i.
    pub fn ad(&self, i: usize) -> Mat {
        let n = self.dim();
        let mut m = mat_zero(n, n);
        for j in 0..n {
            for k in 0..n {
                m[k][j] = self.brackets[i][j][k].clone();
            }
        }
        m
    }

    pub fn abelian(n: usize) -> FiniteLieAlgebra {
        let labels = (1..=n).map(|i| format!("x{}", i)).collect();
        let brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
        FiniteLieAlgebra::new(format!("abelian{}", n), labels, brackets).unwrap()
    }

    /// sl_2 with basis e, h, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn sl2() -> FiniteLieAlgebra {
        let mut b = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        let (e, h, f) = (0usize, 1usize, 2usize);
        let set = |b: &mut Vec<Vec<Vec<Scalar>>>, i: usize, j: usize, k: usize, c: i64| {
            b[i][j][k] = Scalar::from_int(c);
            b[j][i][k] = Scalar::from_int(-c);
        };
        set(&mut b, h, e, e, 2);
        set(&mut b, h, f, f, -2);
        set(&mut b, e, f, h, 1);
        FiniteLieAlgebra::new(
            "sl2",
            vec!["e".to_string(), "h".to_string(), "f".to_string()],
            b,
        )
        .unwrap()
    }

    /// gl_N with basis E_{ab} in row-major order:
    /// [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb.
    pub fn gl(n: usize) -> FiniteLieAlgebra {
        let dim = n * n;
        let idx = |a: usize, b: usize| a * n + b;
        let mut br = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (i, j) = (idx(a, b), idx(c, d));
                        if b == c {
                            br[i][j][idx(a, d)] = &br[i][j][idx(a, d)] + &Scalar::one();
                        }
                        if d == a {
                            br[i][j][idx(c, b)] = &br[i][j][idx(c, b)] - &Scalar::one();
                        }
                    }
                }
            }
        }
        let labels = (0..n)
            .flat_map(|a| (0..n).map(move |b| format!("E{}{}", a + 1, b + 1)))
            .collect();
        FiniteLieAlgebra::new(format!("gl{}", n), labels, br).unwrap()
    }

    /// The Killing form tr(ad x ad y) as a degree-2 invariant polynomial.
    pub fn killing_form(&self) -> InvariantPolynomial {
        let n = self.dim();
        let ads: Vec<Mat> = (0..n).map(|i| self.ad(i)).collect();
        let mut values = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let v = mat_trace(&mat_mul(&ads[i], &ads[j]));
                if !v.is_zero() {
                    values.insert(vec![i, j], v);
                }
            }
        }
        InvariantPolynomial {
            degree: 2,
            dim: n,
            values,
        }
    }
}

/// A finite-dimensional representation: matrices per basis element,
/// checked against the structure constants at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: FiniteLieAlgebra,
    dim_v: usize,
    mats: Vec<Mat>,
}

impl Representation {
    pub fn new(
        algebra: FiniteLieAlgebra,
        mats: Vec<Mat>,
    ) -> Result<Representation, LieError> {
        let n = algebra.dim();
        if mats.len() != n {
            return Err(LieError::Shape("one matrix per basis element".into()));
        }
        let dim_v = mats.first().map(|m| m.len()).unwrap_or(0);
        for m in &mats {
            if m.len() != dim_v || m.iter().any(|r| r.len() != dim_v) {
                return Err(LieError::Shape("matrices must be square of equal size".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let comm = mat_sub(&mat_mul(&mats[i], &mats[j]), &mat_mul(&mats[j], &mats[i]));
                let mut expected = mat_zero(dim_v, dim_v);
                for k in 0..n {
                    let c = &algebra.brackets[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    for r in 0..dim_v {
                        for s in 0..dim_v {
                            expected[r][s] = &expected[r][s] + &(c * &mats[k][r][s]);
                        }
                    }
                }
                if comm != expected {
                    return Err(LieError::NotARepresentation { i, j });
                }
            }
        }
        Ok(Representation {
            algebra,
            dim_v,
            mats,
        })
    }

    pub fn algebra(&self) -> &FiniteLieAlgebra {
        &self.algebra
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn matrix(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    /// Matrix of a general element.
    pub fn apply(&self, x: &[Scalar]) -> Mat {
        let mut out = mat_zero(self.dim_v, self.dim_v);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.dim_v {
                for s in 0..self.dim_v {
                    out[r][s] = &out[r][s] + &(c * &self.mats[i][r][s]);
                }
            }
        }
        out
    }

    /// Identity inclusion gl_N -> End(C^N).
    pub fn gl_fundamental(n: usize) -> Representation {
        let g = FiniteLieAlgebra::gl(n);
        let mut mats = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut m = mat_zero(n, n);
                m[a][b] = Scalar::one();
                mats.push(m);
            }
        }
        Representation::new(g, mats).unwrap()
    }

    /// The 2-dimensional fundamental representation of sl_2.
    pub fn sl2_fundamental() -> Representation {
        let g = FiniteLieAlgebra::sl2();
        let z = Scalar::zero;
        let s = Scalar::from_int;
        let e = vec![vec![z(), s(1)], vec![z(), z()]];
        let h = vec![vec![s(1), z()], vec![z(), s(-1)]];
        let f = vec![vec![z(), z()], vec![s(1), z()]];
        Representation::new(g, vec![e, h, f]).unwrap()
    }

    /// 1-dimensional weight representation of the 1-dimensional abelian
    /// algebra: x acts by lambda.
    pub fn abelian_weight(lambda: Scalar) -> Representation {
        let g = FiniteLieAlgebra::abelian(1);
        Representation::new(g, vec![vec![vec![lambda]]]).unwrap()
    }

    /// The trivial representation of any algebra on C^n.
    pub fn trivial(algebra: FiniteLieAlgebra, n: usize) -> Representation {
        let mats = vec![mat_zero(n, n); algebra.dim()];
        Representation::new(algebra, mats).unwrap()
    }
}

/// A symmetric multilinear form, stored by values on sorted basis
/// tuples. Symmetry holds by construction; g-invariance is a separate
/// check ([`check_invariance`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPolynomial {
    degree: usize,
    dim: usize,
    values: BTreeMap<Vec<usize>, Scalar>,
}

impl InvariantPolynomial {
    pub fn zero(degree: usize, dim: usize) -> InvariantPolynomial {
        InvariantPolynomial {
            degree,
            dim,
            values: BTreeMap::new(),
        }
    }

    pub fn from_values(
        degree: usize,
        dim: usize,
        values: BTreeMap<Vec<usize>, Scalar>,
    ) -> InvariantPolynomial {
        let mut sorted = BTreeMap::new();
        for (mut k, v) in values {
            assert_eq!(k.len(), degree);
            k.sort_unstable();
            let entry = sorted.entry(k).or_insert_with(Scalar::zero);
            *entry = &*entry + &v;
        }
        sorted.retain(|_, v: &mut Scalar| !v.is_zero());
        InvariantPolynomial {
            degree,
            dim,
            values: sorted,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> InvariantPolynomial {
        InvariantPolynomial {
            degree: self.degree,
            dim: self.dim,
            values: self
                .values
                .iter()
                .filter(|_| !s.is_zero())
                .map(|(k, v)| (k.clone(), v * s))
                .collect(),
        }
    }

    /// Value on a tuple of basis indices.
    pub fn eval_basis(&self, indices: &[usize]) -> Scalar {
        let mut k = indices.to_vec();
        k.sort_unstable();
        self.values.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Multilinear extension to general elements.
    pub fn eval(&self, args: &[Vec<Scalar>]) -> Scalar {
        assert_eq!(args.len(), self.degree);
        let mut total = Scalar::zero();
        let mut idx = vec![0usize; self.degree];
        loop {
            let mut coef = Scalar::one();
            for (slot, &i) in idx.iter().enumerate() {
                coef = &coef * &args[slot][i];
                if coef.is_zero() {
                    break;
                }
            }
            if !coef.is_zero() {
                total = &total + &(&coef * &self.eval_basis(&idx));
            }
            // odometer
            let mut slot = 0;
            loop {
                if slot == self.degree {
                    return total;
                }
                idx[slot] += 1;
                if idx[slot] < self.dim {
                    break;
                }
                idx[slot] = 0;
                slot += 1;
            }
        }
    }

    /// Mutates one stored value; used to build deliberately broken
    /// inputs in tests and corruption checks.
    pub fn perturb(&mut self, indices: &[usize], delta: Scalar) {
        let mut k = indices.to_vec();
        k.sort_unstable();
        let entry = self.values.entry(k).or_insert_with(Scalar::zero);
        *entry = &*entry + &delta;
        if entry.is_zero() {
            // keep the map reduced
            let mut k = indices.to_vec();
            k.sort_unstable();
            self.values.remove(&k);
        }
    }
}

/// True iff sum_i theta(x_1, ..., [y, x_i], ..., x_m) = 0 for all basis
/// choices of y and of the x's.
pub fn check_invariance(theta: &InvariantPolynomial, g: &FiniteLieAlgebra) -> bool {
    let n = g.dim();
    assert_eq!(theta.dim(), n);
    let m = theta.degree();
    let mut tuple = vec![0usize; m];
    loop {
        for y in 0..n {
            let mut total = Scalar::zero();
            for slot in 0..m {
                let xi = tuple[slot];
                for k in 0..n {
                    let c = &g.brackets[y][xi][k];
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = tuple.clone();
                    t[slot] = k;
                    total = &total + &(c * &theta.eval_basis(&t));
                }
            }
            if !total.is_zero() {
                return false;
            }
        }
        let mut slot = 0;
        loop {
            if slot == m {
                return true;
            }
            tuple[slot] += 1;
            if tuple[slot] < n {
                break;
            }
            tuple[slot] = 0;
            slot += 1;
        }
    }
}

/// The symmetrized trace form on gl_N:
/// theta(X_1,...,X_k) = (1/k!) sum_sigma tr(X_{sigma(1)} ... X_{sigma(k)}),
/// so the diagonal evaluation recovers tr(X^k).
pub fn theta_kn(k: usize, n: usize) -> InvariantPolynomial {
    assert!(k >= 1 && n >= 1);
    let rep = Representation::gl_fundamental(n);
    symmetrized_trace(&rep, k)
}

/// Polarized trace form of an arbitrary representation; diagonal
/// evaluation gives tr(rho(X)^k).
pub fn symmetrized_trace(rep: &Representation, k: usize) -> InvariantPolynomial {
    let n = rep.algebra().dim();
    let mut values = BTreeMap::new();
    let mut fact = Scalar::one();
    for i in 2..=k as i64 {
        fact = &fact * &Scalar::from_int(i);
    }
    let inv_fact = fact.inv();
    // sorted tuples i_1 <= ... <= i_k
    let mut tuple = vec![0usize; k];
    'outer: loop {
        let mut total = Scalar::zero();
        for perm in permutations(k) {
            let mut m: Option<Mat> = None;
            for &p in &perm {
                let next = rep.matrix(tuple[p]);
                m = Some(match m {
                    None => next.clone(),
                    Some(prev) => mat_mul(&prev, next),
                });
            }
            total = &total + &mat_trace(&m.unwrap());
        }
        let v = &total * &inv_fact;
        if !v.is_zero() {
            values.insert(tuple.clone(), v);
        }
        // next sorted tuple
        let mut slot = k;
        loop {
            if slot == 0 {
                break 'outer;
            }
            slot -= 1;
            if tuple[slot] + 1 < n {
                let v = tuple[slot] + 1;
                for t in tuple.iter_mut().skip(slot) {
                    *t = v;
                }
                continue 'outer;
            }
        }
    }
    InvariantPolynomial {
        degree: k,
        dim: n,
        values,
    }
}

/// ch_{d+1} of a representation: (1/(d+1)!) times the polarized trace
/// form, so the diagonal evaluation gives tr(rho(X)^{d+1})/(d+1)!.
pub fn chern_character(rep: &Representation, d: usize) -> InvariantPolynomial {
    let k = d + 1;
    let mut fact = Scalar::one();
    for i in 2..=k as i64 {
        fact = &fact * &Scalar::from_int(i);
    }
    symmetrized_trace(rep, k).scale(&fact.inv())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

// ---------------------------------------------------------------------
// Structured text loader
// ---------------------------------------------------------------------

/// Parses the structured text format:
///
/// ```text
/// algebra myalg
/// basis e h f
/// bracket 1 2 1 -2        # [x1, x2] += -2 x1 (1-based, mirror added)
/// representation 2
/// matrix 1 0 1 0 0        # row-major Scalar entries
/// ```
///
/// The antisymmetric mirror of each bracket line is filled in
/// automatically. Returns the algebra and the representation if one is
/// present.
pub fn parse_lie_file(
    input: &str,
) -> Result<(FiniteLieAlgebra, Option<Representation>), LieError> {
    let mut name = String::from("loaded");
    let mut labels: Vec<String> = Vec::new();
    let mut bracket_lines: Vec<(usize, usize, usize, Scalar)> = Vec::new();
    let mut rep_dim: Option<usize> = None;
    let mut matrices: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let err = |m: &str| LieError::Parse {
            line: lineno + 1,
            message: m.to_string(),
        };
        match head {
            "algebra" => {
                name = parts.next().ok_or_else(|| err("missing name"))?.to_string();
            }
            "basis" => {
                labels = parts.map(|s| s.to_string()).collect();
                if labels.is_empty() {
                    return Err(err("empty basis"));
                }
            }
            "bracket" => {
                let mut idx = |what: &str| -> Result<usize, LieError> {
                    parts
                        .next()
                        .ok_or_else(|| err(what))?
                        .parse::<usize>()
                        .map_err(|_| err(what))
                };
                let i = idx("bad index i")?;
                let j = idx("bad index j")?;
                let k = idx("bad index k")?;
                let c = parts.next().ok_or_else(|| err("missing coefficient"))?;
                let c = Scalar::parse(c).map_err(|_| err("bad coefficient"))?;
                if i == 0 || j == 0 || k == 0 {
                    return Err(err("indices are 1-based"));
                }
                bracket_lines.push((i - 1, j - 1, k - 1, c));
            }
            "representation" => {
                let d = parts
                    .next()
                    .ok_or_else(|| err("missing dimension"))?
                    .parse::<usize>()
                    .map_err(|_| err("bad dimension"))?;
                rep_dim = Some(d);
            }
            "matrix" => {
                let i = parts
                    .next()
                    .ok_or_else(|| err("missing index"))?
                    .parse::<usize>()
                    .map_err(|_| err("bad index"))?;
                if i == 0 {
                    return Err(err("indices are 1-based"));
                }
                let entries: Result<Vec<Scalar>, _> =
                    parts.map(Scalar::parse).collect();
                matrices.insert(i - 1, entries.map_err(|_| err("bad matrix entry"))?);
            }
            _ => return Err(err("unknown directive")),
        }
    }
    let n = labels.len();
    if n == 0 {
        return Err(LieError::Parse {
            line: 0,
            message: "no basis declared".to_string(),
        });
    }
    let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (i, j, k, c) in bracket_lines {
        if i >= n || j >= n || k >= n {
            return Err(LieError::Shape("bracket index out of range".into()));
        }
        brackets[i][j][k] = &brackets[i][j][k] + &c;
        brackets[j][i][k] = &brackets[j][i][k] - &c;
    }
    let algebra = FiniteLieAlgebra::new(name, labels, brackets)?;
    let rep = match rep_dim {
        None => None,
        Some(d) => {
            let mut mats = Vec::new();
            for i in 0..n {
                let entries = matrices.get(&i).ok_or_else(|| {
                    LieError::Shape(format!("missing matrix for basis element {}", i + 1))
                })?;
                if entries.len() != d * d {
                    return Err(LieError::Shape(format!(
                        "matrix {} must have {} entries",
                        i + 1,
                        d * d
                    )));
                }
                let m: Mat = (0..d)
                    .map(|r| entries[r * d..(r + 1) * d].to_vec())
                    .collect();
                mats.push(m);
            }
            Some(Representation::new(algebra.clone(), mats)?)
        }
    };
    Ok((algebra, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_and_gl_pass_construction_checks() {
        let g = FiniteLieAlgebra::sl2();
        assert_eq!(g.dim(), 3);
        let gl3 = FiniteLieAlgebra::gl(3);
        assert_eq!(gl3.dim(), 9);
        FiniteLieAlgebra::abelian(4);
    }

    #[test]
    fn bad_structure_constants_rejected() {
        // [x1, x2] = x1 without the mirror breaks antisymmetry
        let mut b = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        b[0][1][0] = Scalar::one();
        assert!(matches!(
            FiniteLieAlgebra::new("bad", vec!["a".into(), "b".into()], b),
            Err(LieError::Antisymmetry { .. })
        ));
    }

    #[test]
    fn killing_form_is_invariant() {
        let g = FiniteLieAlgebra::sl2();
        let kappa = g.killing_form();
        assert!(check_invariance(&kappa, &g));
        // kappa(e, f) = 4, kappa(h, h) = 8 in the e, h, f basis
        assert_eq!(kappa.eval_basis(&[0, 2]), Scalar::from_int(4));
        assert_eq!(kappa.eval_basis(&[1, 1]), Scalar::from_int(8));
    }

    #[test]
    fn perturbed_killing_form_fails_invariance() {
        let g = FiniteLieAlgebra::sl2();
        let mut kappa = g.killing_form();
        kappa.perturb(&[0, 0], Scalar::one());
        assert!(!check_invariance(&kappa, &g));
    }

    #[test]
    fn theta_kn_small_cases() {
        // k = 2, N = 1: theta(a, b) = ab
        let t = theta_kn(2, 1);
        assert_eq!(t.eval_basis(&[0, 0]), Scalar::one());
        // k = 2, N = 2 on (E_11, E_22): products vanish
        let t22 = theta_kn(2, 2);
        assert!(t22.eval_basis(&[0, 3]).is_zero());
        assert!(check_invariance(&t22, &FiniteLieAlgebra::gl(2)));
        assert!(check_invariance(&theta_kn(3, 2), &FiniteLieAlgebra::gl(2)));
    }

    #[test]
    fn theta_diagonal_recovers_power_trace() {
        // theta_{3,2}(X, X, X) = tr(X^3) for X = diag(1, -1): zero
        let t = theta_kn(3, 2);
        let mut x = vec![Scalar::zero(); 4];
        x[0] = Scalar::one(); // E11
        x[3] = Scalar::from_int(-1); // E22
        assert!(t.eval(&[x.clone(), x.clone(), x]).is_zero());
        // X = diag(1, 2): tr(X^3) = 9
        let mut y = vec![Scalar::zero(); 4];
        y[0] = Scalar::one();
        y[3] = Scalar::from_int(2);
        assert_eq!(
            t.eval(&[y.clone(), y.clone(), y]),
            Scalar::from_int(9)
        );
    }

    #[test]
    fn chern_character_cases() {
        // trivial rep: zero polynomial
        let triv = Representation::trivial(FiniteLieAlgebra::sl2(), 2);
        assert!(chern_character(&triv, 1).is_zero());
        // abelian weight lambda, d = 1: ch_2(x, x) = lambda^2/2
        let lam = Scalar::from_int(3);
        let rep = Representation::abelian_weight(lam.clone());
        let ch = chern_character(&rep, 1);
        assert_eq!(ch.eval_basis(&[0, 0]), Scalar::ratio(9, 2));
        // gl_N fundamental: ch_{d+1} = theta_{d+1,N}/(d+1)!
        let repg = Representation::gl_fundamental(2);
        let ch3 = chern_character(&repg, 2);
        let t3 = theta_kn(3, 2).scale(&Scalar::ratio(1, 6));
        assert_eq!(ch3, t3);
        assert!(check_invariance(&ch3, &FiniteLieAlgebra::gl(2)));
        // sl_2 fundamental, d = 1: ch_2(x, y) = tr(rho x rho y)/2
        let sl2 = Representation::sl2_fundamental();
        let ch2 = chern_character(&sl2, 1);
        assert_eq!(ch2.eval_basis(&[0, 2]), Scalar::ratio(1, 2)); // tr(ef)/2
        assert_eq!(ch2.eval_basis(&[1, 1]), Scalar::one()); // tr(h^2)/2
    }

    #[test]
    fn representation_checks_commutators() {
        // sl2 fundamental passes, a corrupted matrix fails
        let rep = Representation::sl2_fundamental();
        assert_eq!(rep.dim_v(), 2);
        let g = FiniteLieAlgebra::sl2();
        let mut mats: Vec<Mat> = (0..3).map(|i| rep.matrix(i).clone()).collect();
        mats[0][0][0] = Scalar::one();
        assert!(matches!(
            Representation::new(g, mats),
            Err(LieError::NotARepresentation { .. })
        ));
    }

    #[test]
    fn text_loader_round_trip() {
        let text = "\
algebra toy
basis e h f
# sl2 structure constants, 1-based: [e,h] = -2e etc.
bracket 2 1 1 2
bracket 2 3 3 -2
bracket 1 3 2 1
representation 2
matrix 1 0 1 0 0
matrix 2 1 0 0 -1
matrix 3 0 0 1 0
";
        let (g, rep) = parse_lie_file(text).unwrap();
        assert_eq!(g.dim(), 3);
        let rep = rep.unwrap();
        assert_eq!(rep.dim_v(), 2);
        assert_eq!(g.bracket_basis(1, 0)[0], Scalar::from_int(2));
        assert!(parse_lie_file("basis a\nbogus 1").is_err());
        // Jacobi violation detected on load
        let bad = "algebra x\nbasis a b c\nbracket 1 2 3 1\nbracket 2 3 1 1\nbracket 3 1 2 1\nbracket 1 2 1 1\n";
        assert!(parse_lie_file(bad).is_err());
    }
}
