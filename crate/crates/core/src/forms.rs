//! Affine forms and their classification.
//!
//! A component of a periodic plane divisor is the set
//! S_l = { z in C^n : l(z) = <a, z> + c lies in the value group A_l },
//! where A_l = { <a, k> : k in Z^n }.  Everything here is exact.
//!
//! Two shapes occur, distinguished by m = dim span_R { Re a, Im a }:
//!
//! * L1 (m = 1): all ratios a_q / a_p are real, so a = lambda k0 for a
//!   primitive integer vector k0 and a Gaussian rational scalar lambda.
//!   The value group is the cyclic group lambda Z.
//! * L2 (m = 2): some ratio a_q / a_p has nonzero imaginary part and the
//!   value group is a rank-2 lattice in C.
//!
//! `classify` computes the class together with an adapted integer basis
//! Lambda_1..Lambda_n of R^n (the first m vectors span the row space of
//! {Re a, Im a}, the rest span its kernel) and the induced coefficients
//! b_j = <a, Lambda_j>.  `canonical_key` produces a hashable key equal
//! for two forms exactly when they cut out the same set S_l.

use crate::lattice;
use crate::rat::{rat_floor, rat_sign, GaussRat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// l(z) = <a, z> + c with multiplicity `mult`, defining a component of a
/// plane divisor in C^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    a: Vec<GaussRat>,
    c: GaussRat,
    mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("coefficient vector is zero")]
    ZeroCoefficients,
    #[error("multiplicity must be a positive integer")]
    ZeroMultiplicity,
}

impl LinearForm {
    pub fn new(a: Vec<GaussRat>, c: GaussRat, mult: u32) -> Result<Self, FormError> {
        if a.len() < 2 {
            return Err(FormError::DimensionTooSmall(a.len()));
        }
        if a.iter().all(GaussRat::is_zero) {
            return Err(FormError::ZeroCoefficients);
        }
        if mult == 0 {
            return Err(FormError::ZeroMultiplicity);
        }
        Ok(LinearForm { a, c, mult })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[GaussRat] {
        &self.a
    }

    pub fn c(&self) -> &GaussRat {
        &self.c
    }

    pub fn mult(&self) -> u32 {
        self.mult
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> usize {
        self.a.iter().position(|x| !x.is_zero()).expect("validated nonzero")
    }

    pub fn eval_exact(&self, z: &[GaussRat]) -> GaussRat {
        assert_eq!(z.len(), self.n(), "eval_exact: dimension mismatch");
        let mut acc = self.c.clone();
        for (aj, zj) in self.a.iter().zip(z.iter()) {
            acc += &(aj * zj);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormClass {
    L1,
    L2,
}

/// Class-specific payload of a classification.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum ClassData {
    L1 {
        /// Primitive integer direction with first nonzero entry positive.
        k0: Vec<BigInt>,
        /// Scalar with a = lambda * k0.
        lambda: GaussRat,
        /// c / lambda reduced modulo 1 into { Re in [0,1) }.
        c_reduced: GaussRat,
    },
    L2 {
        /// Lexicographically first pair (p, q), zero-based, with
        /// a_p, a_q nonzero and Im(a_q / a_p) != 0.
        witness: (usize, usize),
    },
}

/// A form together with its class, adapted basis and induced data.
#[derive(Debug, Clone)]
pub struct ClassifiedForm {
    form: LinearForm,
    m: usize,
    /// Lambda_1..Lambda_m: primitive integer basis of span{Re a, Im a}.
    aperp_basis: Vec<Vec<BigInt>>,
    /// Lambda_{m+1}..Lambda_n: primitive integer basis of the kernel.
    kernel_basis: Vec<Vec<BigInt>>,
    /// Rows Omega_j of the inverse of the matrix with columns Lambda_j,
    /// so z = sum_j <Omega_j, z> Lambda_j.
    omega: Vec<Vec<Rat>>,
    /// b_j = <a, Lambda_j>; zero for j > m.
    b: Vec<GaussRat>,
    data: ClassData,
}

impl ClassifiedForm {
    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn a(&self) -> &[GaussRat] {
        self.form.a()
    }

    pub fn c(&self) -> &GaussRat {
        self.form.c()
    }

    pub fn mult(&self) -> u32 {
        self.form.mult()
    }

    pub fn class(&self) -> FormClass {
        match self.data {
            ClassData::L1 { .. } => FormClass::L1,
            ClassData::L2 { .. } => FormClass::L2,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn aperp_basis(&self) -> &[Vec<BigInt>] {
        &self.aperp_basis
    }

    pub fn kernel_basis(&self) -> &[Vec<BigInt>] {
        &self.kernel_basis
    }

    pub fn omega(&self) -> &[Vec<Rat>] {
        &self.omega
    }

    pub fn b(&self) -> &[GaussRat] {
        &self.b
    }

    pub fn data(&self) -> &ClassData {
        &self.data
    }

    /// L1 direction vector; panics on an L2 form.
    pub fn k0(&self) -> &[BigInt] {
        match &self.data {
            ClassData::L1 { k0, .. } => k0,
            ClassData::L2 { .. } => panic!("k0 requested on an L2 form"),
        }
    }

    pub fn lambda(&self) -> &GaussRat {
        match &self.data {
            ClassData::L1 { lambda, .. } => lambda,
            ClassData::L2 { .. } => panic!("lambda requested on an L2 form"),
        }
    }

    pub fn c_reduced(&self) -> &GaussRat {
        match &self.data {
            ClassData::L1 { c_reduced, .. } => c_reduced,
            ClassData::L2 { .. } => panic!("c_reduced requested on an L2 form"),
        }
    }

    pub fn witness(&self) -> (usize, usize) {
        match &self.data {
            ClassData::L2 { witness } => *witness,
            ClassData::L1 { .. } => panic!("witness requested on an L1 form"),
        }
    }
}

/// Re(a_p) Im(a_q) - Im(a_p) Re(a_q); zero exactly when a_q / a_p is
/// real (or one of them vanishes).
pub fn cross_det(ap: &GaussRat, aq: &GaussRat) -> Rat {
    &ap.re * &aq.im - &ap.im * &aq.re
}

/// Scale a rational vector to a primitive integer vector (coprime
/// entries, first nonzero positive).  Zero vectors map to zero.
pub(crate) fn clear_primitive(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| {
            let scaled = x * Rat::from_integer(lcm.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.to_integer()
        })
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    for x in &mut ints {
        *x /= &g;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    ints
}

/// Reduced row echelon form of a small rational matrix, in place.
/// Returns the pivot columns in order.
#[allow(clippy::needless_range_loop)]
fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows > 0 { rows[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(src) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = rows[r][col].recip();
        for x in &mut rows[r] {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &factor;
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

/// Invert a square rational matrix given by rows; None if singular.
#[allow(clippy::needless_range_loop)]
fn invert_rows(mat: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = mat.len();
    let mut work: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (i, row) in mat.iter().enumerate() {
        assert_eq!(row.len(), n, "invert_rows: not square");
        let mut ext = row.clone();
        for j in 0..n {
            ext.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        work.push(ext);
    }
    for col in 0..n {
        let src = (col..n).find(|&i| !work[i][col].is_zero())?;
        work.swap(col, src);
        let inv = work[col][col].recip();
        for x in &mut work[col] {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != col && !work[i][col].is_zero() {
                let factor = work[i][col].clone();
                for j in 0..2 * n {
                    let t = &work[col][j] * &factor;
                    work[i][j] = &work[i][j] - &t;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Classify a form as L1 or L2 and compute its adapted basis data.
/// Total: every valid `LinearForm` classifies.
pub fn classify(form: LinearForm) -> ClassifiedForm {
    let n = form.n();
    let a = form.a();

    let mut rows = vec![
        a.iter().map(|x| x.re.clone()).collect::<Vec<_>>(),
        a.iter().map(|x| x.im.clone()).collect::<Vec<_>>(),
    ];
    let pivots = rref(&mut rows);
    let m = rows.len();
    assert!(m == 1 || m == 2, "rank of {{Re a, Im a}} must be 1 or 2");

    let aperp_basis: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_primitive(r)).collect();

    // Kernel basis from the free columns of the echelon form.
    let mut kernel_basis = Vec::new();
    for f in 0..n {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[i][f].clone();
        }
        kernel_basis.push(clear_primitive(&v));
    }
    assert_eq!(kernel_basis.len(), n - m);

    // Omega: rows of the inverse of the matrix whose columns are the
    // Lambda_j, so that <Omega_j, z> are the coordinates of z.
    let lambda_cols: Vec<&Vec<BigInt>> = aperp_basis.iter().chain(kernel_basis.iter()).collect();
    let mut lambda_mat = vec![vec![Rat::zero(); n]; n];
    for (j, col) in lambda_cols.iter().enumerate() {
        for i in 0..n {
            lambda_mat[i][j] = Rat::from_integer(col[i].clone());
        }
    }
    let omega = invert_rows(&lambda_mat).expect("adapted basis must be invertible");

    let b: Vec<GaussRat> = lambda_cols.iter().map(|col| crate::rat::dot_int(a, col)).collect();
    for bj in b.iter().skip(m) {
        debug_assert!(bj.is_zero(), "kernel vectors must annihilate a");
    }

    let data = if m == 1 {
        let j0 = form.first_nonzero();
        let inv = a[j0].inv();
        let ratios: Vec<Rat> = a
            .iter()
            .map(|aj| {
                let r = aj * &inv;
                assert!(r.im.is_zero(), "L1 form must have real coefficient ratios");
                r.re
            })
            .collect();
        let k0 = clear_primitive(&ratios);
        assert!(k0[j0].is_positive());
        let lambda = a[j0].scale(&Rat::new(BigInt::one(), k0[j0].clone()));
        debug_assert!(a
            .iter()
            .zip(k0.iter())
            .all(|(aj, kj)| *aj == lambda.scale(&Rat::from_integer(kj.clone()))));
        let c_hat = form.c() / &lambda;
        let shift = Rat::from_integer(rat_floor(&c_hat.re));
        let c_reduced = GaussRat::new(&c_hat.re - &shift, c_hat.im.clone());
        ClassData::L1 { k0, lambda, c_reduced }
    } else {
        let mut witness = None;
        'outer: for p in 0..n {
            if a[p].is_zero() {
                continue;
            }
            for q in (p + 1)..n {
                if a[q].is_zero() {
                    continue;
                }
                if !cross_det(&a[p], &a[q]).is_zero() {
                    witness = Some((p, q));
                    break 'outer;
                }
            }
        }
        let witness = witness.expect("rank 2 form must have a nonreal coefficient ratio");
        ClassData::L2 { witness }
    };

    let cf = ClassifiedForm { form, m, aperp_basis, kernel_basis, omega, b, data };
    if cf.class() == FormClass::L2 {
        debug_assert!(!cf.b[0].is_zero() && !cf.b[1].is_zero());
        debug_assert!(!cross_det(&cf.b[0], &cf.b[1]).is_zero());
    }
    cf
}

/// Evidence that S_l is an analytic divisor: an integer basis of the
/// span of {Re a, Im a}, the L1 direction when the span has rank 1, and
/// a witness pair with nonreal coefficient ratio when it has rank 2.
#[derive(Debug, Clone)]
pub struct DivisorCertificate {
    pub class: FormClass,
    pub aperp_basis: Vec<Vec<BigInt>>,
    pub direction: Option<Vec<BigInt>>,
    pub witness: Option<(usize, usize)>,
}

/// Produce the certificate for any valid form.  Total because the
/// coefficients are Gaussian rationals: the value group is always a
/// discrete subgroup of C, never dense.
pub fn divisor_certificate(form: &LinearForm) -> DivisorCertificate {
    let cf = classify(form.clone());
    match cf.data() {
        ClassData::L1 { k0, .. } => DivisorCertificate {
            class: FormClass::L1,
            aperp_basis: cf.aperp_basis().to_vec(),
            direction: Some(k0.clone()),
            witness: None,
        },
        ClassData::L2 { witness } => DivisorCertificate {
            class: FormClass::L2,
            aperp_basis: cf.aperp_basis().to_vec(),
            direction: None,
            witness: Some(*witness),
        },
    }
}

/// Canonical key for the zero set S_l.  Two forms get equal keys if and
/// only if they define the same set (multiplicity not included).
///
/// Normalization: divide by the first nonzero coefficient so that entry
/// becomes 1, then reduce the normalized offset modulo the value group
/// of the normalized coefficients (a cyclic group for L1, a lattice for
/// L2, reduced into the half-open fundamental parallelogram).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub class: FormClass,
    pub normalized: Vec<GaussRat>,
    pub offset: GaussRat,
}

pub fn canonical_key(form: &LinearForm) -> CanonicalKey {
    let cf = classify(form.clone());
    let a = form.a();
    let j0 = form.first_nonzero();
    let inv = a[j0].inv();
    let normalized: Vec<GaussRat> = a.iter().map(|aj| aj * &inv).collect();
    let c_hat = form.c() * &inv;

    let offset = match cf.data() {
        ClassData::L1 { k0, .. } => {
            // Value group of the normalized vector is (1/k0[j0]) Z.
            let gamma = Rat::new(BigInt::one(), k0[j0].clone());
            debug_assert!(gamma.is_positive());
            let steps = rat_floor(&(&c_hat.re / &gamma));
            GaussRat::new(&c_hat.re - &(&gamma * Rat::from_integer(steps)), c_hat.im.clone())
        }
        ClassData::L2 { .. } => {
            let lat = lattice::lattice_from_coeffs(&normalized)
                .expect("L2 normalized coefficients must span a rank-2 lattice");
            lat.reduce(&c_hat)
        }
    };

    CanonicalKey { class: cf.class(), normalized, offset }
}

/// Sign of Im(a_q / a_p) without dividing; 0 when either vanishes or
/// the ratio is real.
pub fn im_ratio_sign(ap: &GaussRat, aq: &GaussRat) -> i32 {
    if ap.is_zero() || aq.is_zero() {
        return 0;
    }
    rat_sign(&cross_det(ap, aq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_frac;

    fn g(nr: i64, dr: i64, ni: i64, di: i64) -> GaussRat {
        GaussRat::from_fracs(nr, dr, ni, di)
    }

    fn form(a: Vec<GaussRat>, c: GaussRat) -> LinearForm {
        LinearForm::new(a, c, 1).unwrap()
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(matches!(
            LinearForm::new(vec![GaussRat::one()], GaussRat::zero(), 1),
            Err(FormError::DimensionTooSmall(1))
        ));
        assert!(matches!(
            LinearForm::new(vec![GaussRat::zero(), GaussRat::zero()], GaussRat::zero(), 1),
            Err(FormError::ZeroCoefficients)
        ));
        assert!(matches!(
            LinearForm::new(vec![GaussRat::one(), GaussRat::i()], GaussRat::zero(), 0),
            Err(FormError::ZeroMultiplicity)
        ));
    }

    #[test]
    fn classify_l1_proportional_complex() {
        // a = (1+i, 2+2i) = (1+i) * (1, 2)
        let f = form(vec![g(1, 1, 1, 1), g(2, 1, 2, 1)], g(7, 3, 1, 1));
        let cf = classify(f);
        assert_eq!(cf.class(), FormClass::L1);
        assert_eq!(cf.m(), 1);
        assert_eq!(cf.k0(), &[BigInt::from(1), BigInt::from(2)]);
        assert_eq!(*cf.lambda(), g(1, 1, 1, 1));
        // c / lambda = (7/3 + i)/(1+i) = 5/3 - 2i/3, reduced Re to [0,1)
        assert_eq!(*cf.c_reduced(), g(2, 3, -2, 3));
    }

    #[test]
    fn classify_l2_with_zero_and_real_ratio_entries() {
        // a = (1, i, 1/2): pairs (0,2) have real ratio, (0,1) does not.
        let f = form(vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)], GaussRat::zero());
        let cf = classify(f);
        assert_eq!(cf.class(), FormClass::L2);
        assert_eq!(cf.m(), 2);
        assert_eq!(cf.witness(), (0, 1));
        // A^perp = span{(1,0,1/2),(0,1,0)} -> primitive (2,0,1),(0,1,0)
        assert_eq!(cf.aperp_basis()[0], vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)]);
        assert_eq!(cf.aperp_basis()[1], vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]);
        // Kernel: x + z/2 = 0, y = 0 -> (1, 0, -2)
        assert_eq!(cf.kernel_basis(), &[vec![BigInt::from(1), BigInt::from(0), BigInt::from(-2)]]);
        assert!(cf.b()[2].is_zero());
        assert!(!cross_det(&cf.b()[0], &cf.b()[1]).is_zero());
    }

    #[test]
    fn witness_skips_real_ratio_pairs() {
        // a = (1, 2, i): Im(a_1/a_0) = 0, so the witness is (0, 2).
        let f = form(vec![GaussRat::one(), GaussRat::from_int(2), GaussRat::i()], GaussRat::zero());
        assert_eq!(classify(f).witness(), (0, 2));
    }

    #[test]
    fn omega_inverts_lambda() {
        let f = form(vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)], GaussRat::zero());
        let cf = classify(f);
        let n = cf.n();
        // Check sum_j <Omega_j, e_i> Lambda_j = e_i for each unit vector.
        let cols: Vec<&Vec<BigInt>> =
            cf.aperp_basis().iter().chain(cf.kernel_basis().iter()).collect();
        for i in 0..n {
            let mut recon = vec![Rat::zero(); n];
            for (j, col) in cols.iter().enumerate() {
                let zeta = cf.omega()[j][i].clone();
                for (r, cji) in recon.iter_mut().zip(col.iter()) {
                    *r = &*r + &(&zeta * Rat::from_integer(cji.clone()));
                }
            }
            for (r, want) in recon.iter().zip((0..n).map(|k| k == i)) {
                assert_eq!(*r, if want { Rat::one() } else { Rat::zero() });
            }
        }
    }

    #[test]
    fn certificate_total_on_sample_forms() {
        let samples = vec![
            form(vec![g(1, 2, 0, 1), g(3, 2, 0, 1)], g(0, 1, 1, 3)),
            form(vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)], GaussRat::zero()),
            form(vec![GaussRat::zero(), g(0, 1, -2, 5), g(0, 1, 4, 5)], g(1, 7, 0, 1)),
        ];
        for f in samples {
            let cert = divisor_certificate(&f);
            match cert.class {
                FormClass::L1 => {
                    assert!(cert.direction.is_some());
                    assert_eq!(cert.aperp_basis.len(), 1);
                }
                FormClass::L2 => {
                    let (p, q) = cert.witness.unwrap();
                    assert!(!cross_det(&f.a()[p], &f.a()[q]).is_zero());
                    assert_eq!(cert.aperp_basis.len(), 2);
                }
            }
        }
    }

    #[test]
    fn keys_equal_iff_same_set_l1() {
        // Scaling by a nonzero Gaussian rational preserves the set.
        let f1 = form(vec![GaussRat::one(), GaussRat::from_int(2)], g(1, 3, 0, 1));
        let mu = g(-2, 1, 1, 2);
        let f2 = form(f1.a().iter().map(|aj| aj * &mu).collect(), f1.c() * &mu);
        assert_eq!(canonical_key(&f1), canonical_key(&f2));

        // Shifting c by a value-group element preserves the set.
        let f3 = form(f1.a().to_vec(), &f1.c().clone() + &GaussRat::from_int(-3));
        assert_eq!(canonical_key(&f1), canonical_key(&f3));

        // A different offset changes the set: (1,2) with c = 0 vs (2,4)
        // with c = 1/2 (the latter has normalized offset 1/4).
        let f4 = form(vec![GaussRat::one(), GaussRat::from_int(2)], GaussRat::zero());
        let f5 = form(vec![GaussRat::from_int(2), GaussRat::from_int(4)], g(1, 2, 0, 1));
        assert_ne!(canonical_key(&f4), canonical_key(&f5));
        assert_eq!(canonical_key(&f5).offset, g(1, 4, 0, 1));
    }

    #[test]
    fn keys_equal_iff_same_set_l2() {
        let a = vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)];
        let f1 = form(a.clone(), g(1, 3, 1, 5));
        // Scale by i and shift c by <a, (1, -2, 2)> = 1 - 2i + 1 = 2 - 2i.
        let mu = GaussRat::i();
        let shift = g(2, 1, -2, 1);
        let f2 = form(
            a.iter().map(|aj| aj * &mu).collect(),
            &(&f1.c().clone() + &shift) * &mu,
        );
        assert_eq!(canonical_key(&f1), canonical_key(&f2));

        let f3 = form(a.clone(), g(1, 3, 2, 5));
        assert_ne!(canonical_key(&f1), canonical_key(&f3));
    }

    #[test]
    fn key_offset_lands_in_fundamental_domain_l1() {
        let f = form(vec![GaussRat::from_int(3), GaussRat::from_int(6)], g(-17, 4, 2, 1));
        let key = canonical_key(&f);
        // Value group of normalized (1, 2) is Z; offset Re must be in [0, 1).
        assert!(key.offset.re >= Rat::zero() && key.offset.re < Rat::one());
    }

    #[test]
    fn clear_primitive_normalizes_sign_and_content() {
        let v = vec![rat_frac(-2, 3), rat_frac(4, 3), Rat::zero()];
        assert_eq!(clear_primitive(&v), vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
    }
}
