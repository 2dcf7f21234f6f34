//! The index matrix of a periodic plane divisor and the decision rule.
//!
//! For an entire f with divisor Z and multipliers g_p (defined by
//! f(z + e_p) = e^{g_p(z)} f(z)), the numbers
//! N_pq = (1/2 pi i)(Delta_p g_q - Delta_q g_p) are integers independent
//! of z and of the choice of f.  Z is the divisor of an entire periodic
//! function exactly when the matrix vanishes.
//!
//! For a single component the entry has a closed form: 0 for L1 forms
//! and for pairs with a_p = 0, a_q = 0 or real ratio; otherwise
//! -nu_pq * sign Im(a_q/a_p), scaled by the multiplicity.  An
//! equivalent route goes through the lattice decompositions
//! a_p = m1p w1 + m2p w2: the entry is -det(m_p, m_q); both are
//! computed and compared.

use crate::forms::{
    canonical_key, classify, im_ratio_sign, CanonicalKey, ClassifiedForm, FormClass, LinearForm,
};
use crate::lattice;
use crate::model::{build_model, ConstructError, FunctionModel};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::HashMap;

/// Skew-symmetric integer matrix N_pq.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IndexMatrix {
    pub fn zero(n: usize) -> Self {
        IndexMatrix { n, entries: vec![0; n * n] }
    }

    /// Build from entries on p < q; the lower triangle is mirrored.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = IndexMatrix::zero(n);
        for p in 0..n {
            for q in (p + 1)..n {
                let v = f(p, q);
                m.entries[p * n + q] = v;
                m.entries[q * n + p] = -v;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> i64 {
        self.entries[p * self.n + q]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|p| (0..self.n).all(|q| self.get(p, q) == -self.get(q, p)))
    }

    pub fn add(&self, other: &IndexMatrix) -> IndexMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        IndexMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Negate row j and column j (the beta_j reflection law).
    pub fn negated_row_col(&self, j: usize) -> IndexMatrix {
        let mut m = self.clone();
        for k in 0..self.n {
            m.entries[j * self.n + k] = -m.entries[j * self.n + k];
            m.entries[k * self.n + j] = -m.entries[k * self.n + j];
        }
        m
    }

    /// Conjugate by the transposition (p q) (the alpha_pq swap law).
    pub fn swapped(&self, p: usize, q: usize) -> IndexMatrix {
        let perm = |i: usize| {
            if i == p {
                q
            } else if i == q {
                p
            } else {
                i
            }
        };
        let mut m = IndexMatrix::zero(self.n);
        for r in 0..self.n {
            for s in 0..self.n {
                m.entries[r * self.n + s] = self.get(perm(r), perm(s));
            }
        }
        m
    }

    /// Multiply row p and column p by k (period scaling law; the
    /// diagonal stays zero, so the result remains skew-symmetric).
    pub fn scaled_row_col(&self, p: usize, k: i64) -> IndexMatrix {
        let mut m = self.clone();
        for j in 0..self.n {
            if j != p {
                m.entries[p * self.n + j] *= k;
                m.entries[j * self.n + p] *= k;
            }
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|p| (0..self.n).map(|q| self.get(p, q)).collect()).collect()
    }
}

/// A finite multiset of certified hyperplane components in C^n.
#[derive(Debug, Clone)]
pub struct PlaneDivisor {
    n: usize,
    components: Vec<ClassifiedForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("component {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
}

impl PlaneDivisor {
    pub fn new(n: usize, forms: Vec<LinearForm>) -> Result<Self, DivisorError> {
        if n < 2 {
            return Err(DivisorError::DimensionTooSmall(n));
        }
        for (index, f) in forms.iter().enumerate() {
            if f.n() != n {
                return Err(DivisorError::DimensionMismatch { index, expected: n, got: f.n() });
            }
        }
        Ok(PlaneDivisor { n, components: forms.into_iter().map(classify).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[ClassifiedForm] {
        &self.components
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.components.iter().map(|cf| cf.form().clone()).collect()
    }

    /// Component positions of the L1 part Z' and the L2 part Z''.
    pub fn split(&self) -> (Vec<usize>, Vec<usize>) {
        let mut l1 = Vec::new();
        let mut l2 = Vec::new();
        for (i, cf) in self.components.iter().enumerate() {
            match cf.class() {
                FormClass::L1 => l1.push(i),
                FormClass::L2 => l2.push(i),
            }
        }
        (l1, l2)
    }

    /// Concatenation of component multisets (property 4 direction).
    pub fn concat(&self, other: &PlaneDivisor) -> Result<PlaneDivisor, DivisorError> {
        if self.n != other.n {
            return Err(DivisorError::DimensionMismatch {
                index: 0,
                expected: self.n,
                got: other.n,
            });
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(PlaneDivisor { n: self.n, components })
    }
}

/// Index contribution of one component for the pair (p, q), including
/// its multiplicity.
pub fn component_index(cf: &ClassifiedForm, p: usize, q: usize) -> i64 {
    let v = index_with_periods(cf, p, q, 1, 1);
    debug_assert_eq!(v, component_index_by_nu(cf, p, q), "the two index routes disagree");
    v
}

/// The -nu * sign Im(a_q/a_p) route.
fn component_index_by_nu(cf: &ClassifiedForm, p: usize, q: usize) -> i64 {
    if p == q || cf.class() == FormClass::L1 {
        return 0;
    }
    let a = cf.a();
    let s = im_ratio_sign(&a[p], &a[q]);
    if s == 0 {
        return 0;
    }
    let count = lattice::nu(cf, p, q).expect("certified L2 form has an integral nu");
    -(count as i64) * (s as i64) * (cf.mult() as i64)
}

/// Index of one component with the periods k_p e_p and k_q e_q, via the
/// determinant of the lattice decompositions of a_p and a_q.  With
/// k_p = k_q = 1 this is `component_index` computed by a second route.
pub fn index_with_periods(cf: &ClassifiedForm, p: usize, q: usize, kp: u32, kq: u32) -> i64 {
    assert!(kp >= 1 && kq >= 1, "period scalings must be positive");
    if p == q || cf.class() == FormClass::L1 {
        return 0;
    }
    let a = cf.a();
    if a[p].is_zero() || a[q].is_zero() || im_ratio_sign(&a[p], &a[q]) == 0 {
        return 0;
    }
    let lat = lattice::value_lattice(cf).expect("certified L2 form has a rank-2 lattice");
    // The canonical basis is oriented, so sign Im(w2/w1) = +1 and the
    // entry is -det of the integer coordinate columns.
    debug_assert!(lat.t_lat().im_sign() == 1);
    let (m1p, m2p) = lat.decompose(&a[p]).expect("a_p lies in its value lattice");
    let (m1q, m2q) = lat.decompose(&a[q]).expect("a_q lies in its value lattice");
    let det = &m1p * &m2q - &m2p * &m1q;
    let det: BigInt = det * BigInt::from(kp) * BigInt::from(kq) * BigInt::from(cf.mult());
    (-det).to_i64().expect("index entry exceeds i64 range")
}

/// Entrywise sum of the component indices.
pub fn divisor_index(z: &PlaneDivisor) -> IndexMatrix {
    let m = IndexMatrix::from_upper(z.n(), |p, q| {
        z.components().iter().map(|cf| component_index(cf, p, q)).sum()
    });
    debug_assert!(m.is_skew());
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

/// First pair (p, q), p < q, with nonzero index entry, and that entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RejectWitness {
    pub p: usize,
    pub q: usize,
    pub value: i64,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub index: IndexMatrix,
    /// Component positions of the L1 part Z'.
    pub l1_part: Vec<usize>,
    /// Component positions of the L2 part Z''.
    pub l2_part: Vec<usize>,
    pub witness: Option<RejectWitness>,
    pub model: Option<FunctionModel>,
}

/// Decide whether Z is the divisor of an entire periodic function and
/// build the function model on acceptance.  The matrix route and the
/// per-pair sum over L2 components are computed independently and
/// cross-checked.
pub fn decide(z: &PlaneDivisor, eps: f64) -> Decision {
    let index = divisor_index(z);
    let n = z.n();
    for p in 0..n {
        for q in (p + 1)..n {
            let direct: i64 = z
                .components()
                .iter()
                .filter(|cf| cf.class() == FormClass::L2)
                .map(|cf| component_index_by_nu(cf, p, q))
                .sum();
            assert_eq!(index.get(p, q), direct, "matrix and condition-sum paths disagree");
        }
    }
    let (l1_part, l2_part) = z.split();

    if index.is_zero() {
        let model = match build_model(z, eps) {
            Ok(m) => m,
            Err(e) => panic!("zero index must admit a model, got {e}"),
        };
        Decision {
            verdict: Verdict::Accept,
            index,
            l1_part,
            l2_part,
            witness: None,
            model: Some(model),
        }
    } else {
        let witness = 'found: {
            for p in 0..n {
                for q in (p + 1)..n {
                    let value = index.get(p, q);
                    if value != 0 {
                        break 'found Some(RejectWitness { p, q, value });
                    }
                }
            }
            None
        };
        debug_assert!(matches!(build_model(z, eps), Err(ConstructError::IndexObstruction { .. })));
        Decision {
            verdict: Verdict::Reject,
            index,
            l1_part,
            l2_part,
            witness,
            model: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// beta_j: z_j -> -z_j.
    Reflect { j: usize },
    /// alpha_pq: swap coordinates p and q.
    Swap { p: usize, q: usize },
    /// Replace the period e_p by k e_p, k > 0.  The divisor is
    /// unchanged as a set; only the index law is affected.
    PeriodScale { p: usize, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("coordinate index {0} out of range for dimension {1}")]
    OutOfRange(usize, usize),
    #[error("swap requires two distinct coordinates")]
    EqualSwapIndices,
    #[error("period scaling must be positive")]
    ZeroScale,
    #[error("index sets I and J must be disjoint")]
    OverlappingSets,
}

#[derive(Debug, Clone)]
pub struct TransformResult {
    pub divisor: PlaneDivisor,
    pub predicted: IndexMatrix,
}

fn reflect_form(f: &LinearForm, j: usize) -> LinearForm {
    let mut a = f.a().to_vec();
    a[j] = -a[j].clone();
    LinearForm::new(a, f.c().clone(), f.mult()).expect("reflection preserves validity")
}

fn swap_form(f: &LinearForm, p: usize, q: usize) -> LinearForm {
    let mut a = f.a().to_vec();
    a.swap(p, q);
    LinearForm::new(a, f.c().clone(), f.mult()).expect("swap preserves validity")
}

/// Apply a coordinate transform and predict the index matrix of the
/// result from the transformation laws (reflection negates row and
/// column j; swap conjugates by the transposition; period scaling
/// multiplies row and column p by k).
pub fn apply_transform(z: &PlaneDivisor, t: Transform) -> Result<TransformResult, TransformError> {
    let n = z.n();
    let base = divisor_index(z);
    match t {
        Transform::Reflect { j } => {
            if j >= n {
                return Err(TransformError::OutOfRange(j, n));
            }
            let forms = z.forms().iter().map(|f| reflect_form(f, j)).collect();
            let divisor = PlaneDivisor::new(n, forms).expect("transformed divisor stays valid");
            Ok(TransformResult { divisor, predicted: base.negated_row_col(j) })
        }
        Transform::Swap { p, q } => {
            if p >= n {
                return Err(TransformError::OutOfRange(p, n));
            }
            if q >= n {
                return Err(TransformError::OutOfRange(q, n));
            }
            if p == q {
                return Err(TransformError::EqualSwapIndices);
            }
            let forms = z.forms().iter().map(|f| swap_form(f, p, q)).collect();
            let divisor = PlaneDivisor::new(n, forms).expect("transformed divisor stays valid");
            Ok(TransformResult { divisor, predicted: base.swapped(p, q) })
        }
        Transform::PeriodScale { p, k } => {
            if p >= n {
                return Err(TransformError::OutOfRange(p, n));
            }
            if k == 0 {
                return Err(TransformError::ZeroScale);
            }
            Ok(TransformResult {
                divisor: z.clone(),
                predicted: base.scaled_row_col(p, k as i64),
            })
        }
    }
}

/// Result of testing a divisor for reflection/swap symmetry.
#[derive(Debug, Clone)]
pub struct SymmetryCertificate {
    /// The key multiset is invariant under beta_k for all k in I and
    /// alpha_pq for all pairs in J.
    pub invariant: bool,
    /// The sets I, J force a zero index when the divisor is invariant:
    /// every index pair meets I or lies inside J.
    pub forces_zero: bool,
    pub index: IndexMatrix,
    pub failures: Vec<String>,
}

impl SymmetryCertificate {
    pub fn holds(&self) -> bool {
        self.invariant
    }
}

fn key_multiset(forms: &[LinearForm]) -> HashMap<CanonicalKey, i64> {
    let mut map = HashMap::new();
    for f in forms {
        *map.entry(canonical_key(f)).or_insert(0) += f.mult() as i64;
    }
    map
}

/// Check invariance of the component multiset under the reflections
/// beta_k (k in I) and the swaps alpha_pq (p, q in J); when the sets
/// force a zero index, the conclusion divisor_index(Z) = 0 is asserted.
pub fn symmetry_certificate(
    z: &PlaneDivisor,
    i_set: &[usize],
    j_set: &[usize],
) -> Result<SymmetryCertificate, TransformError> {
    let n = z.n();
    for &k in i_set.iter().chain(j_set.iter()) {
        if k >= n {
            return Err(TransformError::OutOfRange(k, n));
        }
    }
    if i_set.iter().any(|k| j_set.contains(k)) {
        return Err(TransformError::OverlappingSets);
    }

    let forms = z.forms();
    let base = key_multiset(&forms);
    let mut failures = Vec::new();

    for &k in i_set {
        let image = key_multiset(&forms.iter().map(|f| reflect_form(f, k)).collect::<Vec<_>>());
        if image != base {
            failures.push(format!("multiset not invariant under reflection of coordinate {k}"));
        }
    }
    for (idx, &p) in j_set.iter().enumerate() {
        for &q in &j_set[idx + 1..] {
            let image =
                key_multiset(&forms.iter().map(|f| swap_form(f, p, q)).collect::<Vec<_>>());
            if image != base {
                failures.push(format!("multiset not invariant under swap of coordinates {p}, {q}"));
            }
        }
    }

    let invariant = failures.is_empty();
    // Index pair (p, q) is forced to zero when p or q lies in I
    // (reflection flips the sign) or both lie in J (swap flips it).
    // Every pair is covered iff the complement K of I satisfies
    // K subset of J or |K| <= 1.
    let outside: Vec<usize> = (0..n).filter(|k| !i_set.contains(k)).collect();
    let forces_zero = outside.iter().all(|k| j_set.contains(k)) || outside.len() <= 1;

    let index = divisor_index(z);
    if invariant && forces_zero {
        assert!(index.is_zero(), "symmetric divisor must have zero index");
    }
    Ok(SymmetryCertificate { invariant, forces_zero, index, failures })
}
