//! Deformation retractions and the homological perturbation lemma,
//! exact over `Q(tau)[K]`.
//!
//! Complexes are flattened to a single total space with a degree label
//! per basis vector; all identities are plain matrix identities there.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{ChainComplexWindow, ComplexError, KPoly};
use crate::graded::GradedSpaceWindow;
use crate::matrix::SparseMatrix;
use crate::ring::Ring;
use crate::scalar::Scalar;

pub type KMat = SparseMatrix<KPoly>;

#[derive(Debug)]
pub enum RetractionError {
    Shape(String),
    /// A retraction identity fails; the message names it.
    Identity(String),
    /// The perturbation series does not terminate within the window.
    NotNilpotent { bound: usize },
}

/// Lifts a scalar matrix into `Q(tau)[K]` entries.
pub fn lift(m: &SparseMatrix<Scalar>) -> KMat {
    let mut out = KMat::zero(m.rows(), m.cols());
    for (r, c, v) in m.entries() {
        out.set(r, c, KPoly::constant(v.clone()));
    }
    out
}

fn kscale(m: &SparseMatrix<Scalar>, p: &KPoly) -> KMat {
    let mut out = KMat::zero(m.rows(), m.cols());
    for (r, c, v) in m.entries() {
        out.set(r, c, p.mul(&KPoly::constant(v.clone())));
    }
    out
}

/// Checks that every nonzero entry of `m` shifts degree by `shift`
/// (cohomological convention: the differential has shift `+1`).
fn check_degree(
    m: &KMat,
    row_deg: &[i64],
    col_deg: &[i64],
    shift: i64,
    name: &str,
) -> Result<(), RetractionError> {
    if m.rows() != row_deg.len() || m.cols() != col_deg.len() {
        return Err(RetractionError::Shape(format!("{} has wrong shape", name)));
    }
    for (r, c, _) in m.entries() {
        if row_deg[r] != col_deg[c] + shift {
            return Err(RetractionError::Shape(format!(
                "{} entry ({}, {}) violates degree shift {}",
                name, r, c, shift
            )));
        }
    }
    Ok(())
}

/// A deformation retraction: complexes `big` and `small` with
/// `proj . incl = id`, `incl . proj - id = d.eta + eta.d`, and the side
/// conditions `eta.incl = 0`, `proj.eta = 0`, `eta^2 = 0`.
#[derive(Debug, Clone)]
pub struct Retraction {
    big_degrees: Vec<i64>,
    small_degrees: Vec<i64>,
    d_big: KMat,
    d_small: KMat,
    incl: KMat,
    proj: KMat,
    homotopy: KMat,
    symmetrized: bool,
}

impl Retraction {
    /// Verifies shapes, degrees, and the retraction identities. A
    /// homotopy violating the side conditions is replaced by the
    /// standard normalization `eta -> (1 - ip) eta (1 - ip) -> eta d eta`,
    /// which preserves the homotopy identity; `symmetrized()` records
    /// whether this changed anything.
    pub fn new(
        big_degrees: Vec<i64>,
        small_degrees: Vec<i64>,
        d_big: KMat,
        d_small: KMat,
        incl: KMat,
        proj: KMat,
        homotopy: KMat,
    ) -> Result<Retraction, RetractionError> {
        let nb = big_degrees.len();
        check_degree(&d_big, &big_degrees, &big_degrees, 1, "d_big")?;
        check_degree(&d_small, &small_degrees, &small_degrees, 1, "d_small")?;
        check_degree(&incl, &big_degrees, &small_degrees, 0, "incl")?;
        check_degree(&proj, &small_degrees, &big_degrees, 0, "proj")?;
        check_degree(&homotopy, &big_degrees, &big_degrees, -1, "homotopy")?;

        let ip = incl.mul_mat(&proj);
        let id_big = KMat::identity(nb);
        // 1 - ip annihilates the image of incl and the preimage of proj
        let f = id_big.sub_mat(&ip);
        // with the convention `ip - id = d eta + eta d` the square-zero
        // replacement carries a minus sign
        let eta1 = f.mul_mat(&homotopy).mul_mat(&f);
        let eta2 = eta1
            .mul_mat(&d_big)
            .mul_mat(&eta1)
            .scale(&KPoly::one().neg());
        let symmetrized = !eta2.sub_mat(&homotopy).is_zero();

        let r = Retraction {
            big_degrees,
            small_degrees,
            d_big,
            d_small,
            incl,
            proj,
            homotopy: eta2,
            symmetrized,
        };
        r.verify()?;
        Ok(r)
    }

    fn verify(&self) -> Result<(), RetractionError> {
        let fail = |name: &str| Err(RetractionError::Identity(String::from(name)));
        if !self.d_big.mul_mat(&self.d_big).is_zero() {
            return fail("d_big^2 = 0");
        }
        if !self.d_small.mul_mat(&self.d_small).is_zero() {
            return fail("d_small^2 = 0");
        }
        let id_small = KMat::identity(self.small_degrees.len());
        if !self.proj.mul_mat(&self.incl).sub_mat(&id_small).is_zero() {
            return fail("proj . incl = id");
        }
        if !self
            .d_big
            .mul_mat(&self.incl)
            .sub_mat(&self.incl.mul_mat(&self.d_small))
            .is_zero()
        {
            return fail("incl is a chain map");
        }
        if !self
            .d_small
            .mul_mat(&self.proj)
            .sub_mat(&self.proj.mul_mat(&self.d_big))
            .is_zero()
        {
            return fail("proj is a chain map");
        }
        let ip = self.incl.mul_mat(&self.proj);
        let id_big = KMat::identity(self.big_degrees.len());
        let lhs = ip.sub_mat(&id_big);
        let rhs = self
            .d_big
            .mul_mat(&self.homotopy)
            .add_mat(&self.homotopy.mul_mat(&self.d_big));
        if !lhs.sub_mat(&rhs).is_zero() {
            return fail("incl . proj - id = d eta + eta d");
        }
        if !self.homotopy.mul_mat(&self.incl).is_zero() {
            return fail("eta . incl = 0");
        }
        if !self.proj.mul_mat(&self.homotopy).is_zero() {
            return fail("proj . eta = 0");
        }
        if !self.homotopy.mul_mat(&self.homotopy).is_zero() {
            return fail("eta^2 = 0");
        }
        Ok(())
    }

    pub fn big_degrees(&self) -> &[i64] {
        &self.big_degrees
    }

    pub fn small_degrees(&self) -> &[i64] {
        &self.small_degrees
    }

    pub fn d_big(&self) -> &KMat {
        &self.d_big
    }

    pub fn d_small(&self) -> &KMat {
        &self.d_small
    }

    pub fn incl(&self) -> &KMat {
        &self.incl
    }

    pub fn proj(&self) -> &KMat {
        &self.proj
    }

    pub fn homotopy(&self) -> &KMat {
        &self.homotopy
    }

    /// `true` when construction had to normalize the input homotopy.
    pub fn symmetrized(&self) -> bool {
        self.symmetrized
    }
}

#[derive(Debug, Clone)]
pub struct PerturbationResult {
    pub retraction: Retraction,
    /// Number of terms in the terminated geometric series.
    pub series_terms: usize,
    /// Whether the *input* retraction had a normalized homotopy.
    pub input_symmetrized: bool,
}

/// The homological perturbation lemma. `delta` perturbs the big
/// differential to `d + K delta`; the deformed data
///
/// ```text
///   A       = (id - K delta eta)^{-1} K delta
///   d_small'= d_small + proj A incl
///   incl'   = incl + eta A incl
///   proj'   = proj + proj A eta
///   eta'    = eta + eta A eta
/// ```
///
/// is returned with all retraction identities re-verified exactly in
/// `Q(tau)[K]`. The series for the inverse terminates by nilpotency of
/// `delta eta`; if it does not terminate within the window dimension the
/// call fails.
pub fn perturb_retraction(
    r: &Retraction,
    delta: &SparseMatrix<Scalar>,
) -> Result<PerturbationResult, RetractionError> {
    let nb = r.big_degrees.len();
    check_degree(&lift(delta), &r.big_degrees, &r.big_degrees, 1, "delta")?;
    let kdelta = kscale(delta, &KPoly::k());
    let d_pert = r.d_big.add_mat(&kdelta);
    if !d_pert.mul_mat(&d_pert).is_zero() {
        return Err(RetractionError::Identity(String::from(
            "(d + K delta)^2 = 0",
        )));
    }

    // A = sum_k (K delta eta)^k K delta, finite by nilpotency
    let b = kdelta.mul_mat(&r.homotopy);
    let mut partial = KMat::identity(nb);
    let mut power = KMat::identity(nb);
    let mut series_terms = 1usize;
    loop {
        power = b.mul_mat(&power);
        if power.is_zero() {
            break;
        }
        if series_terms > nb {
            return Err(RetractionError::NotNilpotent { bound: nb });
        }
        partial = partial.add_mat(&power);
        series_terms += 1;
    }
    let a = partial.mul_mat(&kdelta);

    let d_small = r.d_small.add_mat(&r.proj.mul_mat(&a).mul_mat(&r.incl));
    let incl = r.incl.add_mat(&r.homotopy.mul_mat(&a).mul_mat(&r.incl));
    let proj = r.proj.add_mat(&r.proj.mul_mat(&a).mul_mat(&r.homotopy));
    let homotopy = r
        .homotopy
        .add_mat(&r.homotopy.mul_mat(&a).mul_mat(&r.homotopy));

    let out = Retraction {
        big_degrees: r.big_degrees.clone(),
        small_degrees: r.small_degrees.clone(),
        d_big: d_pert,
        d_small,
        incl,
        proj,
        homotopy,
        symmetrized: false,
    };
    out.verify()?;
    Ok(PerturbationResult {
        retraction: out,
        series_terms,
        input_symmetrized: r.symmetrized,
    })
}

/// Regroups a flat (degree-labelled) differential into a
/// `ChainComplexWindow`, for handing off to the homology machinery.
pub fn flat_to_complex(
    degrees: &[i64],
    d: &KMat,
    prefix: &str,
) -> Result<ChainComplexWindow, ComplexError> {
    let mut per_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &n) in degrees.iter().enumerate() {
        per_degree.entry(n).or_default().push(i);
    }
    let mut spaces = BTreeMap::new();
    let mut position: Vec<usize> = alloc::vec![0; degrees.len()];
    for (&n, idxs) in &per_degree {
        let mut w = GradedSpaceWindow::new();
        for (pos, &i) in idxs.iter().enumerate() {
            w.push(format!("{}{}", prefix, i), n, None);
            position[i] = pos;
        }
        spaces.insert(n, w);
    }
    let mut diffs = BTreeMap::new();
    for (&n, idxs) in &per_degree {
        let Some(cod) = per_degree.get(&(n + 1)) else {
            continue;
        };
        let mut m = KMat::zero(cod.len(), idxs.len());
        for &c in idxs {
            for &r in cod {
                let v = d.get(r, c);
                if !v.is_zero() {
                    m.set(position[r], position[c], v);
                }
            }
        }
        diffs.insert(n, m);
    }
    ChainComplexWindow::new(spaces, diffs)
}
