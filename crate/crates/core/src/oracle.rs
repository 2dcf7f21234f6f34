//! Independent oracles for the exact index machinery.
//!
//! Nothing here reuses the closed-form index or exponent formulas.
//! numeric_index recovers N_pq straight from its definition
//! N_pq = (1/2 pi i)(Delta_p g_q - Delta_q g_p) by branch-continued
//! logarithms of evaluation ratios along continuation paths, and
//! nu_bruteforce counts parallelogram points by closing the set of
//! Z^n images under single coefficient steps.  verify_model packages
//! the end-to-end checks (divisor
//! reproduction, periodicity, numeric index of the built function)
//! into a serializable report.
//!
//! The oracles trust their evaluators to be entire with the claimed
//! divisor; that cannot be certified from finitely many samples, so
//! reports from foreign evaluators are evidence, not proof.

use crate::forms::{ClassData, ClassifiedForm};
use crate::index::{divisor_index, PlaneDivisor};
use crate::lattice::{coset_reps, value_lattice, LatticeError};
use crate::model::{eval_model_scaled, phi_scaled, FunctionModel};
use crate::numeric::{rel_diff, wrap_pi, ScaledC, TWO_PI};
use crate::rat::{rat_floor, GaussRat, Rat};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::f64::consts::PI;

/// Anything the continuation oracle can probe: a function C^n -> C
/// given in scaled form so huge or tiny magnitudes stay representable.
pub trait Evaluator {
    fn dim(&self) -> usize;
    fn eval(&self, z: &[Complex64]) -> ScaledC;
}

impl Evaluator for FunctionModel {
    fn dim(&self) -> usize {
        self.n()
    }

    fn eval(&self, z: &[Complex64]) -> ScaledC {
        eval_model_scaled(self, z)
    }
}

/// Evaluator of one component's reproduction: the L1 closed form for
/// L1 forms, Phi_T(l(z)/w1) for L2 forms, raised to the multiplicity.
pub struct SingleFormEvaluator {
    n: usize,
    mult: u32,
    eps: f64,
    kind: FormKind,
}

enum FormKind {
    L1 { k0: Vec<f64>, c: Complex64 },
    L2 { a: Vec<Complex64>, c: Complex64, w1: Complex64, t: Complex64 },
}

impl SingleFormEvaluator {
    pub fn new(cf: &ClassifiedForm, eps: f64) -> Self {
        let kind = match cf.data() {
            ClassData::L1 { k0, c_reduced, .. } => FormKind::L1 {
                k0: k0.iter().map(|x| x.to_f64().expect("k0 entry fits in f64")).collect(),
                c: c_reduced.to_c64(),
            },
            ClassData::L2 { .. } => {
                let lat = value_lattice(cf).expect("certified L2 form has a rank-2 lattice");
                FormKind::L2 {
                    a: cf.a().iter().map(GaussRat::to_c64).collect(),
                    c: cf.c().to_c64(),
                    w1: lat.w1().to_c64(),
                    t: lat.t_lat().to_c64(),
                }
            }
        };
        SingleFormEvaluator { n: cf.n(), mult: cf.mult(), eps, kind }
    }
}

impl Evaluator for SingleFormEvaluator {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, z: &[Complex64]) -> ScaledC {
        match &self.kind {
            FormKind::L1 { k0, c } => {
                let mut theta = *c;
                for (kj, zj) in k0.iter().zip(z.iter()) {
                    theta += zj.scale(*kj);
                }
                // (e^{2 pi i theta} - 1) / 2i vanishes exactly on the
                // reproduction <k0, z> + c in Z.
                crate::numeric::one_minus_exp(Complex64::new(0.0, TWO_PI) * theta)
                    .mul_c(Complex64::new(0.0, 0.5))
                    .powu(self.mult)
            }
            FormKind::L2 { a, c, w1, t } => {
                let mut l = *c;
                for (aj, zj) in a.iter().zip(z.iter()) {
                    l += aj * zj;
                }
                phi_scaled(*t, l / w1, self.eps)
                    .expect("oriented lattice has Im T > 0")
                    .powu(self.mult)
            }
        }
    }
}

/// Evaluator built from the coset decomposition of the value lattice
/// over Z a_p + Z a_q: the product of Phi_{a_q/a_p} over the nu coset
/// representatives.  Vanishes exactly where l(z) lies in the value
/// lattice, so it is an independent presentation of the same divisor.
pub struct CosetProductEvaluator {
    n: usize,
    mult: u32,
    eps: f64,
    a: Vec<Complex64>,
    c: Complex64,
    ap: Complex64,
    t: Complex64,
    shifts: Vec<Complex64>,
}

impl CosetProductEvaluator {
    pub fn new(cf: &ClassifiedForm, p: usize, q: usize, eps: f64) -> Result<Self, LatticeError> {
        let cs = coset_reps(cf, p, q)?;
        let a = cf.a();
        let t = (&a[q] / &a[p]).to_c64();
        Ok(CosetProductEvaluator {
            n: cf.n(),
            mult: cf.mult(),
            eps,
            a: a.iter().map(GaussRat::to_c64).collect(),
            c: cf.c().to_c64(),
            ap: a[p].to_c64(),
            t,
            shifts: cs.reps.iter().map(GaussRat::to_c64).collect(),
        })
    }
}

impl Evaluator for CosetProductEvaluator {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, z: &[Complex64]) -> ScaledC {
        let mut l = self.c;
        for (aj, zj) in self.a.iter().zip(z.iter()) {
            l += aj * zj;
        }
        let mut acc = ScaledC::one();
        for x in &self.shifts {
            let w = (l - x) / self.ap;
            acc = acc * phi_scaled(self.t, w, self.eps).expect("Im(a_q/a_p) != 0");
        }
        acc.powu(self.mult)
    }
}

/// Multivariate polynomial with complex coefficients, used as a gauge
/// exponent h: multiplying an evaluator by e^h must not change any
/// index.
#[derive(Debug, Clone)]
pub struct PolynomialGauge {
    /// (exponent multi-index, coefficient) pairs.
    pub terms: Vec<(Vec<u8>, Complex64)>,
}

impl PolynomialGauge {
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, coeff) in &self.terms {
            let mut term = *coeff;
            for (e, zj) in exps.iter().zip(z.iter()) {
                for _ in 0..*e {
                    term *= zj;
                }
            }
            acc += term;
        }
        acc
    }

    /// Random polynomial of total degree <= max_deg with small
    /// coefficients (keeps e^h within comfortable magnitude at the
    /// continuation scale).
    pub fn random(n: usize, max_deg: u8, rng: &mut ChaCha8Rng) -> Self {
        let mut terms = Vec::new();
        let mut exps = vec![0u8; n];
        loop {
            let total: u8 = exps.iter().sum();
            if total <= max_deg && rng.gen_bool(0.6) {
                let coeff = Complex64::new(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
                terms.push((exps.clone(), coeff));
            }
            // Odometer over exponent vectors bounded by max_deg.
            let mut j = 0;
            loop {
                if j == n {
                    return PolynomialGauge { terms };
                }
                exps[j] += 1;
                if exps.iter().map(|&e| e as u32).sum::<u32>() <= max_deg as u32 {
                    break;
                }
                exps[j] = 0;
                j += 1;
            }
        }
    }
}

/// inner * e^h for a polynomial gauge h.
pub struct GaugedEvaluator<'a, E: Evaluator> {
    pub inner: &'a E,
    pub gauge: PolynomialGauge,
}

impl<E: Evaluator> Evaluator for GaugedEvaluator<'_, E> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, z: &[Complex64]) -> ScaledC {
        self.inner.eval(z).mul_exp(self.gauge.eval(z))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("continuation path ran into a zero of the evaluator")]
    PathThroughZero,
    #[error("index residual {0} is not close to an integer; evaluator inconsistent with an integer index")]
    NonIntegerResult(f64),
}

/// Settings for the branch-continuation index oracle.
#[derive(Debug, Clone)]
pub struct ContinuationConfig {
    /// Base point z0; None picks the generic default for the dimension.
    pub base_point: Option<Vec<Complex64>>,
    pub initial_steps: u32,
    pub max_depth: u32,
    /// Reject the rounded integer if the residual reaches this.
    pub residual_tol: f64,
    pub retries: u32,
    pub seed: u64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        ContinuationConfig {
            base_point: None,
            initial_steps: 8,
            max_depth: 36,
            residual_tol: 0.1,
            retries: 6,
            seed: 0x0ddc0de,
        }
    }
}

/// Generic base point away from the real cube, where periodic divisors
/// concentrate.
pub fn default_base_point(n: usize) -> Vec<Complex64> {
    const PATTERN: [(f64, f64); 6] = [
        (0.137, 0.311),
        (0.271, 0.183),
        (0.389, 0.227),
        (0.157, 0.293),
        (0.331, 0.151),
        (0.209, 0.343),
    ];
    (0..n)
        .map(|j| {
            let (re, im) = PATTERN[j % 6];
            Complex64::new(re, im) + Complex64::new(0.0137, 0.0117).scale((j / 6) as f64)
        })
        .collect()
}

/// (ln |r|, arg r) of the ratio f(z + shift) / f(z), in scaled space.
fn ratio_log(
    f: &dyn Evaluator,
    z: &[Complex64],
    shift: &[Complex64],
) -> Result<(f64, f64), OracleError> {
    let zs: Vec<Complex64> = z.iter().zip(shift.iter()).map(|(a, b)| a + b).collect();
    let num = f.eval(&zs);
    let den = f.eval(z);
    let ln = num.norm_ln() - den.norm_ln();
    if !ln.is_finite() {
        return Err(OracleError::PathThroughZero);
    }
    Ok((ln, num.arg() - den.arg()))
}

/// Step used for the local log-derivative estimate along the path.
const FD_EPS: f64 = 1e-5;

/// One continuation node: ln |r| and arg r of the ratio at parameter t,
/// plus |d/dt log r| estimated from a small forward step.  The
/// derivative estimate is branch-free in magnitude and principal-branch
/// in argument over the tiny step, so a wrapped argument there means the
/// node sits within about FD_EPS of a zero; that aborts the attempt.
fn path_node(
    f: &dyn Evaluator,
    z0: &[Complex64],
    dir: &[Complex64],
    shift: &[Complex64],
    t: f64,
) -> Result<(f64, f64, f64), OracleError> {
    let at = |t: f64| -> Vec<Complex64> {
        z0.iter().zip(dir.iter()).map(|(z, d)| z + d.scale(t)).collect()
    };
    let (ln0, a0) = ratio_log(f, &at(t), shift)?;
    let (ln1, a1) = ratio_log(f, &at(t + FD_EPS), shift)?;
    let step = Complex64::new(ln1 - ln0, wrap_pi(a1 - a0));
    if step.norm() > 2.0 {
        return Err(OracleError::PathThroughZero);
    }
    Ok((ln0, a0, step.norm() / FD_EPS))
}

/// Total argument variation of t -> ratio(z0 + t * dir) over [t0, t1].
///
/// Principal-branch increments alone cannot certify an interval: a full
/// winding around a zero close to the path collapses to a small wrapped
/// step at every sampling resolution.  The log-derivative at the
/// endpoints sees such a zero at power-law range, so an interval is
/// accepted only when the wrapped step is below pi/2 and the first-order
/// variation bound h * |d/dt log r| is below one radian; otherwise it is
/// bisected.
#[allow(clippy::too_many_arguments)]
fn arg_variation(
    f: &dyn Evaluator,
    z0: &[Complex64],
    dir: &[Complex64],
    shift: &[Complex64],
    t0: f64,
    node0: (f64, f64, f64),
    t1: f64,
    node1: (f64, f64, f64),
    depth: u32,
) -> Result<f64, OracleError> {
    let d = wrap_pi(node1.1 - node0.1);
    let h = t1 - t0;
    if d.abs() < PI / 2.0 && h * node0.2.max(node1.2) < 0.8 {
        return Ok(d);
    }
    if depth == 0 {
        return Err(OracleError::PathThroughZero);
    }
    let tm = 0.5 * (t0 + t1);
    let nm = path_node(f, z0, dir, shift, tm)?;
    Ok(arg_variation(f, z0, dir, shift, t0, node0, tm, nm, depth - 1)?
        + arg_variation(f, z0, dir, shift, tm, nm, t1, node1, depth - 1)?)
}

/// Delta along `dir` of the branch-continued log of the ratio
/// f(. + shift)/f(.), starting at z0.  The branch constant of the
/// logarithm cancels in the difference, so only the argument variation
/// along the path needs tracking.
fn delta_log(
    f: &dyn Evaluator,
    z0: &[Complex64],
    dir: &[Complex64],
    shift: &[Complex64],
    cfg: &ContinuationConfig,
) -> Result<Complex64, OracleError> {
    let steps = cfg.initial_steps.max(2);
    let mut samples = Vec::with_capacity(steps as usize + 1);
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        samples.push((t, path_node(f, z0, dir, shift, t)?));
    }
    let mut arg_total = 0.0;
    for w in samples.windows(2) {
        let (t0, n0) = w[0];
        let (t1, n1) = w[1];
        arg_total += arg_variation(f, z0, dir, shift, t0, n0, t1, n1, cfg.max_depth)?;
    }
    let ln_start = samples.first().unwrap().1 .0;
    let ln_end = samples.last().unwrap().1 .0;
    Ok(Complex64::new(ln_end - ln_start, arg_total))
}

fn unit_dir(n: usize, j: usize, k: i64) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[j] = Complex64::new(k as f64, 0.0);
    v
}

/// N_pq with period multiples: shifts kp e_p and kq e_q in place of the
/// unit periods.  Property 1 predicts multiplication by kp * kq.
pub fn numeric_index_steps(
    f: &dyn Evaluator,
    p: usize,
    q: usize,
    kp: i64,
    kq: i64,
    cfg: &ContinuationConfig,
) -> Result<i64, OracleError> {
    let n = f.dim();
    assert!(p < n && q < n && p != q, "numeric_index needs distinct directions");
    let base = cfg.base_point.clone().unwrap_or_else(|| default_base_point(n));
    assert_eq!(base.len(), n, "base point dimension mismatch");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((p as u64) << 32) ^ (q as u64));

    let mut last_err = OracleError::PathThroughZero;
    for attempt in 0..=cfg.retries {
        let z0: Vec<Complex64> = if attempt == 0 {
            base.clone()
        } else {
            base.iter()
                .map(|z| {
                    z + Complex64::new(rng.gen_range(-0.11..0.11), rng.gen_range(-0.11..0.11))
                })
                .collect()
        };
        let along_p = unit_dir(n, p, kp);
        let along_q = unit_dir(n, q, kq);
        let result = delta_log(f, &z0, &along_p, &along_q, cfg).and_then(|dpgq| {
            let dqgp = delta_log(f, &z0, &along_q, &along_p, cfg)?;
            let nc = (dpgq - dqgp) / Complex64::new(0.0, TWO_PI);
            let rounded = nc.re.round();
            let residual = (nc - rounded).norm();
            if residual < cfg.residual_tol {
                Ok(rounded as i64)
            } else {
                Err(OracleError::NonIntegerResult(residual))
            }
        });
        match result {
            Ok(v) => return Ok(v),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// The index N_pq of an evaluator, from the definition.
pub fn numeric_index(
    f: &dyn Evaluator,
    p: usize,
    q: usize,
    cfg: &ContinuationConfig,
) -> Result<i64, OracleError> {
    numeric_index_steps(f, p, q, 1, 1, cfg)
}

/// nu by closure: breadth-first walk over the values <a, k>, each
/// reduced exactly into the half-open parallelogram of (a_p, a_q).
/// Reduction modulo Z a_p + Z a_q keeps one representative per coset,
/// and repeatedly adding single coefficients a_j reaches every coset of
/// the value group, so the count is complete without a cutoff: the walk
/// stops exactly when no coefficient leaves the visited set.  Degenerate
/// pairs count 0, matching the closed-form convention.
pub fn nu_bruteforce(cf: &ClassifiedForm, p: usize, q: usize) -> u64 {
    assert!(p != q, "nu_bruteforce requires distinct indices");
    let a = cf.a();
    if a[p].is_zero() || a[q].is_zero() {
        return 0;
    }
    let det = crate::forms::cross_det(&a[p], &a[q]);
    if det.is_zero() {
        return 0;
    }

    // v minus the integer part of its (a_p, a_q) coordinates; the result
    // has both coordinates in [0, 1).
    let reduce = |v: &GaussRat| -> GaussRat {
        let alpha = (&v.re * &a[q].im - &v.im * &a[q].re) / &det;
        let beta = (&a[p].re * &v.im - &a[p].im * &v.re) / &det;
        let fa = Rat::from_integer(rat_floor(&alpha));
        let fb = Rat::from_integer(rat_floor(&beta));
        v - &(&a[p].scale(&fa) + &a[q].scale(&fb))
    };

    let mut seen: HashSet<GaussRat> = HashSet::new();
    let mut frontier = vec![GaussRat::zero()];
    seen.insert(GaussRat::zero());
    while let Some(v) = frontier.pop() {
        for aj in a.iter().filter(|aj| !aj.is_zero()) {
            let next = reduce(&(&v + aj));
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
        assert!(seen.len() < 1 << 22, "value quotient closure exploded");
    }
    seen.len() as u64
}

/// One zero or displacement probe of the verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroProbe {
    pub component: usize,
    pub point: Vec<[f64; 2]>,
    /// |F| at the point, relative to the local scale.
    pub relative_magnitude: f64,
    pub pass: bool,
}

/// End-to-end verification artifact: periodicity residuals, divisor
/// reproduction probes, and the numeric index table of the built
/// function next to the closed-form one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tol: f64,
    /// Max relative residual of F(z + e_p) = F(z) per direction.
    pub periodicity: Vec<f64>,
    pub zero_probes: Vec<ZeroProbe>,
    pub displaced_probes: Vec<ZeroProbe>,
    pub index_formula: Vec<Vec<i64>>,
    pub index_numeric: Vec<Vec<i64>>,
    pub all_pass: bool,
}

fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-0.7..0.7)))
        .collect()
}

/// ln of the local scale around a point: max |F| over a radius-0.25
/// probe ring, so zero tests never compare against absolute thresholds.
fn local_scale_ln(m: &FunctionModel, z: &[Complex64], rng: &mut ChaCha8Rng) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for _ in 0..8 {
        let probe: Vec<Complex64> = z
            .iter()
            .map(|zj| {
                let phase = rng.gen_range(0.0..TWO_PI);
                zj + Complex64::new(0.25 * phase.cos(), 0.25 * phase.sin())
            })
            .collect();
        best = best.max(eval_model_scaled(m, &probe).norm_ln());
    }
    best
}

/// An exact point of component j's reproduction: solve l_j(z) = <a, k>
/// for a random small k, then slide along the kernel to keep the point
/// generic.  The construction is exact in rational arithmetic; floats
/// enter only at the end.
fn divisor_point(cf: &ClassifiedForm, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let n = cf.n();
    let a = cf.a();
    let j0 = cf.form().first_nonzero();
    let k: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
    let mut z: Vec<Complex64> = k.iter().map(|kj| Complex64::new(kj.to_f64().unwrap(), 0.0)).collect();
    let correction = -(cf.c() / &a[j0]);
    z[j0] += correction.to_c64();
    for w in cf.kernel_basis() {
        let t = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        for (zj, wj) in z.iter_mut().zip(w.iter()) {
            *zj += t.scale(wj.to_f64().unwrap());
        }
    }
    z
}

pub fn verify_model(m: &FunctionModel, z: &PlaneDivisor, seed: u64, tol: f64) -> VerifyReport {
    assert!(tol > 0.0, "verification tolerance must be positive");
    let n = m.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut periodicity = vec![0.0f64; n];
    for _ in 0..50 {
        let pt = random_point(n, &mut rng);
        let base = eval_model_scaled(m, &pt);
        for p in 0..n {
            let mut shifted = pt.clone();
            shifted[p] += Complex64::new(1.0, 0.0);
            let d = rel_diff(&eval_model_scaled(m, &shifted), &base);
            if d > periodicity[p] {
                periodicity[p] = d;
            }
        }
    }

    let mut zero_probes = Vec::new();
    let mut displaced_probes = Vec::new();
    for i in 0..20 {
        let j = i % z.components().len();
        let cf = &z.components()[j];
        let pt = divisor_point(cf, &mut rng);
        let scale_ln = local_scale_ln(m, &pt, &mut rng);
        let rel = (eval_model_scaled(m, &pt).norm_ln() - scale_ln).exp();
        zero_probes.push(ZeroProbe {
            component: j,
            point: pt.iter().map(|z| [z.re, z.im]).collect(),
            relative_magnitude: rel,
            pass: rel < tol,
        });

        // A displacement is generic only when it is transverse to the
        // component: directions with <a, d> near zero slide along the
        // hyperplane and stay on the divisor, so those are resampled.
        let af: Vec<Complex64> = cf.a().iter().map(GaussRat::to_c64).collect();
        let a_norm = af.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let displaced: Vec<Complex64> = loop {
            let dir: Vec<Complex64> = (0..n)
                .map(|_| {
                    let phase = rng.gen_range(0.0..TWO_PI);
                    Complex64::new(phase.cos(), phase.sin())
                })
                .collect();
            let normal_part: Complex64 = af.iter().zip(dir.iter()).map(|(a, d)| a * d).sum();
            if normal_part.norm() > 0.3 * a_norm {
                break pt.iter().zip(dir.iter()).map(|(zj, d)| zj + d.scale(0.1)).collect();
            }
        };
        let rel = (eval_model_scaled(m, &displaced).norm_ln() - scale_ln).exp();
        displaced_probes.push(ZeroProbe {
            component: j,
            point: displaced.iter().map(|z| [z.re, z.im]).collect(),
            relative_magnitude: rel,
            pass: rel > 1e-3,
        });
    }

    let index_formula = divisor_index(z).rows();
    let cfg = ContinuationConfig { seed, ..ContinuationConfig::default() };
    let mut index_numeric = vec![vec![0i64; n]; n];
    let mut numeric_ok = true;
    #[allow(clippy::needless_range_loop)]
    for p in 0..n {
        for q in (p + 1)..n {
            match numeric_index(m, p, q, &cfg) {
                Ok(v) => {
                    index_numeric[p][q] = v;
                    index_numeric[q][p] = -v;
                }
                Err(_) => numeric_ok = false,
            }
        }
    }

    let all_pass = periodicity.iter().all(|&d| d < tol)
        && zero_probes.iter().all(|pr| pr.pass)
        && displaced_probes.iter().all(|pr| pr.pass)
        && numeric_ok
        && index_numeric.iter().flatten().all(|&v| v == 0)
        && index_formula.iter().flatten().all(|&v| v == 0);

    VerifyReport {
        seed,
        tol,
        periodicity,
        zero_probes,
        displaced_probes,
        index_formula,
        index_numeric,
        all_pass,
    }
}
