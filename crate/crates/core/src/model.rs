//! Construction and evaluation of the entire periodic function.
//!
//! The accepted model is F(z) = F1(z) * F2(z) with
//! F2 = Ftilde * e^{-H}:
//!
//! * each L1 component contributes the exactly periodic factor
//!   s (e^{2 pi i s theta} - 1) with theta = <k0, z> + c and
//!   s = sign Im c (0 counts as +1), the stable closed form of
//!   2i sin(pi theta) e^{s i pi theta};
//! * each L2 component contributes F_(l)(z) = Phi_T(l(z)/w1) built on
//!   its value lattice;
//! * H is the quadratic corrector with Delta_p H = G_p, where G_p is
//!   the accumulated quasi-period exponent of the L2 product.
//!
//! Phi_T is the two-sided product with zeros Z + ZT.  For Im T > 0 the
//! convergent normalization is
//!   Phi(w) = prod_{q>=0} (1 - e^{-2 pi i (w - qT)})
//!          * prod_{q>=1} (1 - e^{+2 pi i (w + qT)}),
//! with the exponent signs swapped for Im T < 0.  It satisfies
//! Phi(w+1) = Phi(w) and Phi(w+T) = -e^{-s 2 pi i (w+T)} Phi(w) with
//! s = sign Im T; the leading -1 is forced (a 1-periodic function with
//! simple zeros on Z + ZT cannot satisfy the law without it, as the
//! q-expansion of the ratio shows).
//!
//! Iterating the one-step laws gives the closed form
//!   Phi(w + m1 + m2 T)
//!     = (-1)^{m2} e^{-2 pi i s [m2 w + m2(m2+1)/2 T]} Phi(w),
//! so for a_p = m1p w1 + m2p w2 the factor's quasi-period exponent in
//! direction p is driven by the w2-coordinate m2p:
//!   g_p(z) = i pi [ m2p - 2 s ( m2p l(z)/w1 + m2p(m2p+1)/2 T ) ].
//! All exponent bookkeeping is done exactly in units of i pi.

use crate::index::PlaneDivisor;
use crate::lattice::{value_lattice, ValueLattice};
use crate::numeric::{one_minus_exp, ScaledC, TWO_PI};
use crate::rat::{rat_frac, rat_i64, GaussRat, Rat};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructError {
    #[error("Phi_T requires Im T != 0")]
    ImTZero,
    #[error("tolerance must be positive, got {0}")]
    NonpositiveTolerance(f64),
    #[error("index obstruction at pair ({p}, {q}): N = {value}; no entire periodic function has this divisor")]
    IndexObstruction { p: usize, q: usize, value: i64 },
}

mod bigint_vec {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| BigInt::from_str(x).map_err(D::Error::custom))
            .collect()
    }
}

mod bigint_pairs {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|(a, b)| (a.to_string(), b.to_string())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(BigInt, BigInt)>, D::Error> {
        Vec::<(String, String)>::deserialize(d)?
            .iter()
            .map(|(a, b)| {
                Ok((
                    BigInt::from_str(a).map_err(D::Error::custom)?,
                    BigInt::from_str(b).map_err(D::Error::custom)?,
                ))
            })
            .collect()
    }
}

/// Exactly periodic factor of an L1 component: s (e^{2 pi i s theta} - 1)
/// with theta = <k0, z> + c.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L1Factor {
    #[serde(with = "bigint_vec")]
    pub k0: Vec<BigInt>,
    /// Reduced offset c / lambda with Re in [0, 1).
    pub c: GaussRat,
    /// sign Im c, with sign 0 taken as +1 so the factor stays periodic.
    pub sign: i8,
    pub mult: u32,
}

/// Quasi-periodic factor of an L2 component: Phi_T(l(z)/w1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L2Factor {
    pub a: Vec<GaussRat>,
    pub c: GaussRat,
    pub mult: u32,
    pub lattice: ValueLattice,
    /// Integer coordinates (m1k, m2k) of every a_k in the lattice.
    #[serde(with = "bigint_pairs")]
    pub decomp: Vec<(BigInt, BigInt)>,
}

/// Evaluable model of the constructed function.  All structural data is
/// exact; floating point enters only at evaluation time, so a model
/// round-trips through serialization without any drift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionModel {
    n: usize,
    l1_factors: Vec<L1Factor>,
    l2_factors: Vec<L2Factor>,
    /// Symmetric matrix of H in units of i pi.
    sigma: Vec<Vec<GaussRat>>,
    /// Linear coefficients rho_j = tau_j - sigma_jj / 2, in units of i pi.
    rho: Vec<GaussRat>,
    eps: f64,
}

impl FunctionModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l1_factors(&self) -> &[L1Factor] {
        &self.l1_factors
    }

    pub fn l2_factors(&self) -> &[L2Factor] {
        &self.l2_factors
    }

    pub fn sigma(&self) -> &[Vec<GaussRat>] {
        &self.sigma
    }

    pub fn rho(&self) -> &[GaussRat] {
        &self.rho
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Diagnostic helper: a copy with sigma_pq shifted by an integer,
    /// breaking the corrector identity on purpose (mutation testing).
    pub fn with_sigma_perturbed(&self, p: usize, q: usize, delta: i64) -> FunctionModel {
        let mut m = self.clone();
        m.sigma[p][q] = &m.sigma[p][q] + &GaussRat::from_int(delta);
        m
    }
}

/// Truncation cutoff for Phi_T: Q = ceil(|Im w|/|Im T| +
/// ln(1/eps)/(2 pi |Im T|)) + 2.  Factors beyond Q differ from 1 by
/// less than e^{-2 pi (q |Im T| - |Im w|)} and the tail is geometric.
pub fn phi_cutoff(t: Complex64, w: Complex64, eps: f64) -> u32 {
    let imt = t.im.abs();
    let q = (w.im.abs() / imt + (1.0 / eps).ln() / (TWO_PI * imt)).ceil() + 2.0;
    assert!(q.is_finite() && q < 2e5, "truncation cutoff {q} out of range");
    q as u32
}

/// Truncated two-sided product with explicit cutoff, as a scaled value.
pub fn phi_scaled_cutoff(t: Complex64, w: Complex64, cutoff: u32) -> ScaledC {
    let s = if t.im > 0.0 { 1.0 } else { -1.0 };
    let m_neg = Complex64::new(0.0, -TWO_PI * s);
    let m_pos = Complex64::new(0.0, TWO_PI * s);
    let mut acc = ScaledC::one();
    for q in 0..=cutoff {
        acc = acc * one_minus_exp(m_neg * (w - t.scale(q as f64)));
    }
    for q in 1..=cutoff {
        acc = acc * one_minus_exp(m_pos * (w + t.scale(q as f64)));
    }
    acc
}

pub fn phi_scaled(t: Complex64, w: Complex64, eps: f64) -> Result<ScaledC, ConstructError> {
    if t.im == 0.0 {
        return Err(ConstructError::ImTZero);
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(ConstructError::NonpositiveTolerance(eps));
    }
    Ok(phi_scaled_cutoff(t, w, phi_cutoff(t, w, eps)))
}

/// Phi_T(w) truncated so the neglected tail is below eps relative.
pub fn phi_eval(t: Complex64, w: Complex64, eps: f64) -> Result<Complex64, ConstructError> {
    phi_scaled(t, w, eps).map(|v| v.to_c64())
}

pub fn phi_eval_with_cutoff(
    t: Complex64,
    w: Complex64,
    cutoff: u32,
) -> Result<Complex64, ConstructError> {
    if t.im == 0.0 {
        return Err(ConstructError::ImTZero);
    }
    Ok(phi_scaled_cutoff(t, w, cutoff).to_c64())
}

/// f_l(z) = sin(pi theta) e^{i pi theta} with theta = <k0, z> + c,
/// computed through the closed form (e^{2 pi i theta} - 1) / 2i.
pub fn f_l1_eval(k0: &[BigInt], c: Complex64, z: &[Complex64]) -> Complex64 {
    assert_eq!(k0.len(), z.len(), "f_l1_eval: dimension mismatch");
    let mut theta = c;
    for (kj, zj) in k0.iter().zip(z.iter()) {
        theta += zj.scale(kj.to_f64().expect("k0 entry fits in f64"));
    }
    let xi = Complex64::new(0.0, TWO_PI) * theta;
    // (e^xi - 1)/(2i) = (1 - e^xi) * i/2
    one_minus_exp(xi).mul_c(Complex64::new(0.0, 0.5)).to_c64()
}

fn l1_factor_scaled(f: &L1Factor, z: &[Complex64]) -> ScaledC {
    let mut theta = f.c.to_c64();
    for (kj, zj) in f.k0.iter().zip(z.iter()) {
        theta += zj.scale(kj.to_f64().expect("k0 entry fits in f64"));
    }
    let s = f.sign as f64;
    let xi = Complex64::new(0.0, TWO_PI * s) * theta;
    one_minus_exp(xi).mul_c(Complex64::new(-s, 0.0)).powu(f.mult)
}

fn l2_factor_scaled(f: &L2Factor, z: &[Complex64], eps: f64) -> ScaledC {
    let mut l = f.c.to_c64();
    for (aj, zj) in f.a.iter().zip(z.iter()) {
        l += aj.to_c64() * zj;
    }
    let w1 = f.lattice.w1().to_c64();
    let t = f.lattice.t_lat().to_c64();
    phi_scaled(t, l / w1, eps).expect("oriented lattice has Im T > 0").powu(f.mult)
}

/// H(z) = i pi (1/2 z^T sigma z + rho . z) as a complex number.
fn h_value(m: &FunctionModel, z: &[Complex64]) -> Complex64 {
    let mut quad = Complex64::new(0.0, 0.0);
    for (p, row) in m.sigma.iter().enumerate() {
        for (k, s_pk) in row.iter().enumerate() {
            if !s_pk.is_zero() {
                quad += s_pk.to_c64() * z[p] * z[k];
            }
        }
    }
    let mut lin = Complex64::new(0.0, 0.0);
    for (rho_j, zj) in m.rho.iter().zip(z.iter()) {
        if !rho_j.is_zero() {
            lin += rho_j.to_c64() * zj;
        }
    }
    Complex64::new(0.0, std::f64::consts::PI) * (quad.scale(0.5) + lin)
}

pub fn eval_model_scaled(m: &FunctionModel, z: &[Complex64]) -> ScaledC {
    assert_eq!(z.len(), m.n, "eval_model: dimension mismatch");
    let mut acc = ScaledC::one();
    for f in &m.l1_factors {
        acc = acc * l1_factor_scaled(f, z);
    }
    for f in &m.l2_factors {
        acc = acc * l2_factor_scaled(f, z, m.eps);
    }
    acc.mul_exp(-h_value(m, z))
}

pub fn eval_model(m: &FunctionModel, z: &[Complex64]) -> Complex64 {
    eval_model_scaled(m, z).to_c64()
}

/// Affine exponent g_p with F(z + e_p) = e^{g_p(z)} F(z), stored
/// exactly in units of i pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPeriodExponent {
    pub p: usize,
    /// Coefficient of z_k, in units of i pi.
    pub linear: Vec<GaussRat>,
    /// Constant term, in units of i pi.
    pub constant: GaussRat,
}

impl QuasiPeriodExponent {
    pub fn is_zero(&self) -> bool {
        self.linear.iter().all(GaussRat::is_zero) && self.constant.is_zero()
    }

    pub fn linear_c64(&self) -> Vec<Complex64> {
        let ipi = Complex64::new(0.0, std::f64::consts::PI);
        self.linear.iter().map(|x| ipi * x.to_c64()).collect()
    }

    pub fn constant_c64(&self) -> Complex64 {
        Complex64::new(0.0, std::f64::consts::PI) * self.constant.to_c64()
    }

    pub fn eval_c64(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = self.constant.to_c64();
        for (lj, zj) in self.linear.iter().zip(z.iter()) {
            acc += lj.to_c64() * zj;
        }
        Complex64::new(0.0, std::f64::consts::PI) * acc
    }
}

/// Add `weight` copies of one factor's direction-p exponent onto the
/// accumulators (all in units of i pi):
///   linear_k += -2 s m2p a_k / w1,
///   constant += m2p - 2 s (m2p c / w1 + m2p (m2p + 1) / 2 * T).
fn accumulate_factor_exponent(
    f: &L2Factor,
    p: usize,
    weight: u32,
    linear: &mut [GaussRat],
    constant: &mut GaussRat,
) {
    let s = f.lattice.t_lat().im_sign();
    debug_assert!(s != 0);
    let m2p = Rat::from_integer(f.decomp[p].1.clone());
    if m2p.is_zero() {
        return;
    }
    let weight = rat_i64(weight as i64);
    let w1 = f.lattice.w1();
    let coeff = GaussRat::from_real(&m2p * rat_i64(-2 * s as i64)).scale(&weight);
    let scale = &coeff / w1;
    for (lk, ak) in linear.iter_mut().zip(f.a.iter()) {
        *lk += &(&scale * ak);
    }
    let half_square = &m2p * (&m2p + Rat::one()) * rat_frac(1, 2);
    let mut cst = GaussRat::from_real(m2p.clone());
    cst -= &(&(&GaussRat::from_real(m2p) * &(&f.c / w1))
        + &f.lattice.t_lat().scale(&half_square))
    .scale(&rat_i64(2 * s as i64));
    *constant += &cst.scale(&weight);
}

/// Quasi-period exponent of a single L2 factor (one copy, without the
/// stored multiplicity).
pub fn factor_quasi_period_exponent(f: &L2Factor, p: usize) -> QuasiPeriodExponent {
    let mut linear = vec![GaussRat::zero(); f.a.len()];
    let mut constant = GaussRat::zero();
    accumulate_factor_exponent(f, p, 1, &mut linear, &mut constant);
    QuasiPeriodExponent { p, linear, constant }
}

/// G_p of the whole model: the sum of factor exponents weighted by
/// multiplicities.  (L1 factors are exactly periodic and contribute
/// nothing.)
pub fn quasi_period_exponent(m: &FunctionModel, p: usize) -> QuasiPeriodExponent {
    let mut linear = vec![GaussRat::zero(); m.n];
    let mut constant = GaussRat::zero();
    for f in &m.l2_factors {
        accumulate_factor_exponent(f, p, f.mult, &mut linear, &mut constant);
    }
    QuasiPeriodExponent { p, linear, constant }
}

/// Build the model for a divisor with vanishing index.  The symmetry
/// check sigma_q^p = sigma_p^q is the obstruction test: the defect
/// equals -2 N_pq in units of i pi, so a nonzero index is reported as
/// IndexObstruction with the offending entry.
pub fn build_model(z: &PlaneDivisor, eps: f64) -> Result<FunctionModel, ConstructError> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(ConstructError::NonpositiveTolerance(eps));
    }
    let n = z.n();
    let mut l1_factors = Vec::new();
    let mut l2_factors = Vec::new();
    for cf in z.components() {
        match cf.data() {
            crate::forms::ClassData::L1 { k0, c_reduced, .. } => {
                let sign: i8 = if c_reduced.im_sign() < 0 { -1 } else { 1 };
                l1_factors.push(L1Factor {
                    k0: k0.clone(),
                    c: c_reduced.clone(),
                    sign,
                    mult: cf.mult(),
                });
            }
            crate::forms::ClassData::L2 { .. } => {
                let lattice = value_lattice(cf).expect("certified L2 form has a rank-2 lattice");
                let decomp = cf
                    .a()
                    .iter()
                    .map(|ak| lattice.decompose(ak).expect("coefficients lie in the lattice"))
                    .collect();
                l2_factors.push(L2Factor {
                    a: cf.a().to_vec(),
                    c: cf.c().clone(),
                    mult: cf.mult(),
                    lattice,
                    decomp,
                });
            }
        }
    }

    // Accumulate G_p exactly and check the symmetry of the quadratic
    // coefficients before committing to a model.
    let mut linear_rows = vec![vec![GaussRat::zero(); n]; n];
    let mut constants = vec![GaussRat::zero(); n];
    for p in 0..n {
        for f in &l2_factors {
            accumulate_factor_exponent(f, p, f.mult, &mut linear_rows[p], &mut constants[p]);
        }
    }
    #[allow(clippy::needless_range_loop)]
    for p in 0..n {
        for q in (p + 1)..n {
            let defect = &linear_rows[p][q] - &linear_rows[q][p];
            if !defect.is_zero() {
                assert!(defect.im.is_zero(), "symmetry defect must be real");
                let half = -&defect.re / rat_i64(2);
                assert!(half.is_integer(), "symmetry defect must be an even integer");
                let value = half.to_integer().to_i64().expect("index entry fits in i64");
                return Err(ConstructError::IndexObstruction { p, q, value });
            }
        }
    }

    let rho = (0..n)
        .map(|p| &constants[p] - &linear_rows[p][p].scale(&rat_frac(1, 2)))
        .collect();
    Ok(FunctionModel { n, l1_factors, l2_factors, sigma: linear_rows, rho, eps })
}

/// Exact coefficientwise check of Delta_p H = G_p: the linear part of
/// G_p must equal row p of sigma and its constant must equal
/// rho_p + sigma_pp / 2.  Zero tolerance.
pub fn corrector_identity_holds(m: &FunctionModel) -> bool {
    (0..m.n).all(|p| {
        let g = quasi_period_exponent(m, p);
        let constant_ok =
            g.constant == &m.rho[p] + &m.sigma[p][p].scale(&rat_frac(1, 2));
        g.linear == m.sigma[p] && constant_ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::LinearForm;
    use crate::index::PlaneDivisor;
    use crate::numeric::rel_diff;

    fn g(nr: i64, dr: i64, ni: i64, di: i64) -> GaussRat {
        GaussRat::from_fracs(nr, dr, ni, di)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn form(a: Vec<GaussRat>, cc: GaussRat, mult: u32) -> LinearForm {
        LinearForm::new(a, cc, mult).unwrap()
    }

    fn accepted_pair() -> PlaneDivisor {
        PlaneDivisor::new(
            2,
            vec![
                form(vec![GaussRat::one(), GaussRat::i()], g(1, 3, 0, 1), 1),
                form(vec![GaussRat::one(), -GaussRat::i()], g(1, 5, 0, 1), 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn phi_vanishes_at_lattice_points() {
        let t = c(0.0, 1.0);
        assert_eq!(phi_eval(t, c(0.0, 0.0), 1e-12).unwrap(), c(0.0, 0.0));
        let near = phi_eval(t, c(3.0, 1.0) + c(1e-13, 0.0), 1e-12).unwrap();
        assert!(near.norm() < 1e-9, "Phi near 3 + T should be tiny, got {near}");
    }

    #[test]
    fn phi_rejects_bad_arguments() {
        assert_eq!(phi_eval(c(2.0, 0.0), c(0.1, 0.2), 1e-12), Err(ConstructError::ImTZero));
        assert_eq!(
            phi_eval(c(0.0, 1.0), c(0.1, 0.2), 0.0),
            Err(ConstructError::NonpositiveTolerance(0.0))
        );
    }

    #[test]
    fn phi_one_step_laws() {
        // Phi(w+1) = Phi(w); Phi(w+T) = -e^{-s 2 pi i (w+T)} Phi(w).
        for &(tre, tim) in &[(0.0, 1.0), (0.0, -1.0), (0.5, 1.0), (-0.25, -0.75)] {
            let t = c(tre, tim);
            let s = tim.signum();
            let w = c(0.37, 0.21);
            let base = phi_scaled(t, w, 1e-12).unwrap();
            let shifted1 = phi_scaled(t, w + c(1.0, 0.0), 1e-12).unwrap();
            assert!(rel_diff(&shifted1, &base) < 1e-9, "law (3) fails for T = {t}");
            let shifted_t = phi_scaled(t, w + t, 1e-12).unwrap();
            let predicted = base
                .mul_c(c(-1.0, 0.0))
                .mul_exp(Complex64::new(0.0, -TWO_PI * s) * (w + t));
            assert!(rel_diff(&shifted_t, &predicted) < 1e-9, "quasi-period law fails for T = {t}");
        }
    }

    #[test]
    fn phi_cutoff_growth() {
        let t = c(0.0, 1.0);
        let q0 = phi_cutoff(t, c(0.0, 0.0), 1e-12);
        let q1 = phi_cutoff(t, c(0.0, 6.0), 1e-12);
        assert_eq!(q1, q0 + 6);
        let half = c(0.0, 0.5);
        assert!(phi_cutoff(half, c(0.0, 0.0), 1e-12) > q0);
    }

    #[test]
    fn f_l1_worked_values() {
        let k = vec![BigInt::from(1), BigInt::from(0)];
        let v = f_l1_eval(&k, c(0.0, 0.0), &[c(0.5, 0.0), c(17.3, -2.0)]);
        assert!((v - c(0.0, 1.0)).norm() < 1e-12);

        let k = vec![BigInt::from(1), BigInt::from(2)];
        let v = f_l1_eval(&k, c(1.0 / 3.0, 0.0), &[c(2.0 / 3.0, 0.0), c(0.0, 0.0)]);
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn f_l1_periodicity() {
        let k = vec![BigInt::from(2), BigInt::from(-3)];
        let z = [c(0.31, 0.17), c(-0.45, 0.23)];
        let base = f_l1_eval(&k, c(0.2, 0.4), &z);
        for j in 0..2 {
            let mut zs = z;
            zs[j] += c(1.0, 0.0);
            let shifted = f_l1_eval(&k, c(0.2, 0.4), &zs);
            assert!((shifted - base).norm() / base.norm() < 1e-12);
        }
    }

    #[test]
    fn build_pair_model_exact_data() {
        let m = build_model(&accepted_pair(), 1e-12).unwrap();
        assert_eq!(m.l1_factors().len(), 0);
        assert_eq!(m.l2_factors().len(), 2);
        // sigma (in units of i pi): only entry (2,2) is -4i; rho_2 = -4/15.
        assert_eq!(m.sigma()[0], vec![GaussRat::zero(), GaussRat::zero()]);
        assert_eq!(m.sigma()[1], vec![GaussRat::zero(), g(0, 1, -4, 1)]);
        assert_eq!(m.rho(), &[GaussRat::zero(), g(-4, 15, 0, 1)]);
        assert!(corrector_identity_holds(&m));
        // G_1 vanishes identically for both factors.
        assert!(quasi_period_exponent(&m, 0).is_zero());
    }

    #[test]
    fn pair_model_is_periodic() {
        let m = build_model(&accepted_pair(), 1e-12).unwrap();
        let pts = [
            [c(0.21, 0.13), c(-0.37, 0.29)],
            [c(-1.1, -0.4), c(0.53, 0.61)],
            [c(2.3, 0.8), c(-0.9, -0.7)],
        ];
        for z in &pts {
            let base = eval_model_scaled(&m, z);
            for p in 0..2 {
                let mut zs = *z;
                zs[p] += c(1.0, 0.0);
                let shifted = eval_model_scaled(&m, &zs);
                let d = rel_diff(&shifted, &base);
                assert!(d < 1e-9, "periodicity residual {d} in direction {p}");
            }
        }
    }

    #[test]
    fn obstructed_divisor_refused() {
        let z = PlaneDivisor::new(
            2,
            vec![form(vec![GaussRat::one(), GaussRat::i()], GaussRat::zero(), 1)],
        )
        .unwrap();
        assert_eq!(
            build_model(&z, 1e-12).unwrap_err(),
            ConstructError::IndexObstruction { p: 0, q: 1, value: -1 }
        );
    }

    #[test]
    fn l1_only_model_and_eval_example() {
        let z = PlaneDivisor::new(
            2,
            vec![form(vec![GaussRat::one(), GaussRat::zero()], GaussRat::zero(), 1)],
        )
        .unwrap();
        let m = build_model(&z, 1e-12).unwrap();
        assert!(m.l2_factors().is_empty());
        assert!(m.sigma().iter().flatten().all(GaussRat::is_zero));
        // 2i sin(pi z1) e^{i pi z1} at z1 = 1/2 equals -2.
        let v = eval_model(&m, &[c(0.5, 0.0), c(0.3, 0.9)]);
        assert!((v - c(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn l1_scaled_component_accepts() {
        // 2 z1 + 4 z2 + 1/2 is L1 with k0 = (1, 2), lambda = 2, c^ = 1/4.
        let z = PlaneDivisor::new(
            2,
            vec![form(
                vec![GaussRat::from_int(2), GaussRat::from_int(4)],
                g(1, 2, 0, 1),
                1,
            )],
        )
        .unwrap();
        let m = build_model(&z, 1e-12).unwrap();
        assert_eq!(m.l1_factors().len(), 1);
        assert_eq!(m.l1_factors()[0].c, g(1, 4, 0, 1));
        // Vanishes where z1 + 2 z2 + 1/4 is an integer.
        let v = eval_model(&m, &[c(0.75, 0.0), c(1.0, 0.0)]);
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn quasi_period_worked_exponents() {
        let z = PlaneDivisor::new(
            2,
            vec![form(vec![GaussRat::one(), GaussRat::i()], GaussRat::zero(), 1)],
        )
        .unwrap();
        let cf = &z.components()[0];
        let lattice = value_lattice(cf).unwrap();
        let decomp = cf.a().iter().map(|ak| lattice.decompose(ak).unwrap()).collect();
        let f = L2Factor {
            a: cf.a().to_vec(),
            c: cf.c().clone(),
            mult: 1,
            lattice,
            decomp,
        };
        // Direction 1: m2 = 0, exponent vanishes.
        assert!(factor_quasi_period_exponent(&f, 0).is_zero());
        // Direction 2: m2 = 1, exponent i pi (1 - 2i - 2 z1 - 2i z2),
        // i.e. -2 pi i (l(z) + i) + i pi with the forced half-period shift.
        let e = factor_quasi_period_exponent(&f, 1);
        assert_eq!(e.linear, vec![g(-2, 1, 0, 1), g(0, 1, -2, 1)]);
        assert_eq!(e.constant, g(1, 1, -2, 1));
    }

    #[test]
    fn quasi_period_exponent_matches_eval_ratio() {
        let m = build_model(&accepted_pair(), 1e-12).unwrap();
        // For a single stored factor, exp(g_p) must reproduce the
        // evaluation ratio of that factor alone.
        let f = &m.l2_factors()[0];
        let z = [c(0.27, 0.31), c(-0.43, 0.19)];
        for p in 0..2 {
            let e = factor_quasi_period_exponent(f, p);
            let mut zs = z;
            zs[p] += c(1.0, 0.0);
            let lhs = l2_factor_scaled(f, &zs, 1e-12);
            let rhs = l2_factor_scaled(f, &z, 1e-12).mul_exp(e.eval_c64(&z));
            assert!(rel_diff(&lhs, &rhs) < 1e-9, "direction {p}");
        }
    }

    #[test]
    fn model_round_trips_exactly() {
        let m = build_model(&accepted_pair(), 1e-12).unwrap();
        let json = serde_json::to_string_pretty(&m).unwrap();
        let back: FunctionModel = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
        let z = [c(0.21, 0.13), c(-0.37, 0.29)];
        let a = eval_model(&m, &z);
        let b = eval_model(&back, &z);
        assert_eq!(a, b, "round-tripped model must evaluate bitwise identically");
    }

    #[test]
    fn perturbed_sigma_breaks_identity() {
        let m = build_model(&accepted_pair(), 1e-12).unwrap();
        assert!(corrector_identity_holds(&m));
        assert!(!corrector_identity_holds(&m.with_sigma_perturbed(0, 1, 1)));
    }
}
