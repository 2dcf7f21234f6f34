//! Property tests for the exact machinery: classification invariance,
//! canonical keys, lattice counts, index laws, and the decision rule.

use num_complex::Complex64;
use num_traits::Zero;
use perdiv::forms::{canonical_key, classify, divisor_certificate, FormClass, LinearForm};
use perdiv::index::{decide, divisor_index, PlaneDivisor, Verdict};
use perdiv::lattice::{nu, value_lattice};
use perdiv::model::corrector_identity_holds;
use perdiv::numeric::one_minus_exp;
use perdiv::oracle::{
    numeric_index, nu_bruteforce, ContinuationConfig, Evaluator, SingleFormEvaluator,
};
use perdiv::rat::{dot_int, rat_frac, GaussRat, Rat};
use proptest::collection::vec as pvec;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=5).prop_map(|(n, d)| rat_frac(n, d))
}

fn gauss_strategy() -> impl Strategy<Value = GaussRat> {
    (rat_strategy(), rat_strategy()).prop_map(|(re, im)| GaussRat::new(re, im))
}

fn nonzero_gauss() -> impl Strategy<Value = GaussRat> {
    gauss_strategy().prop_filter("nonzero scalar", |g| !g.is_zero())
}

fn form_strategy(n: usize) -> impl Strategy<Value = LinearForm> {
    (pvec(gauss_strategy(), n), gauss_strategy(), 1u32..=3)
        .prop_filter("at least one nonzero coefficient", |(a, _, _)| {
            a.iter().any(|x| !x.is_zero())
        })
        .prop_map(|(a, c, mult)| LinearForm::new(a, c, mult).unwrap())
}

fn any_form() -> impl Strategy<Value = LinearForm> {
    (2usize..=4).prop_flat_map(form_strategy)
}

fn same_dim_forms(count: usize) -> impl Strategy<Value = Vec<LinearForm>> {
    (2usize..=4).prop_flat_map(move |n| pvec(form_strategy(n), 1..=count))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_scaling_invariant(f in any_form(), mu in nonzero_gauss()) {
        let base = classify(f.clone());
        let scaled = LinearForm::new(
            f.a().iter().map(|aj| aj * &mu).collect(),
            f.c() * &mu,
            f.mult(),
        )
        .unwrap();
        let scaled = classify(scaled);
        prop_assert_eq!(base.class(), scaled.class());
        prop_assert_eq!(base.m(), scaled.m());
        if base.class() == FormClass::L1 {
            // The primitive integer direction is scale free.
            prop_assert_eq!(base.k0(), scaled.k0());
            prop_assert_eq!(base.c_reduced(), scaled.c_reduced());
        }
    }

    #[test]
    fn certificate_is_total(f in any_form()) {
        let cert = divisor_certificate(&f);
        match cert.class {
            FormClass::L1 => {
                prop_assert!(cert.direction.is_some());
                prop_assert_eq!(cert.aperp_basis.len(), 1);
            }
            FormClass::L2 => {
                let (p, q) = cert.witness.expect("L2 certificate carries a witness pair");
                prop_assert!(!perdiv::forms::cross_det(&f.a()[p], &f.a()[q]).is_zero());
                prop_assert_eq!(cert.aperp_basis.len(), 2);
            }
        }
    }

    #[test]
    fn canonical_key_ignores_presentation(
        (f, k) in any_form().prop_flat_map(|f| {
            let n = f.n();
            (Just(f), pvec(-3i64..=3, n))
        }),
        mu in nonzero_gauss(),
    ) {
        // Scaling all data and shifting c by a value-group element both
        // preserve the zero set, hence the key.
        let kb: Vec<num_bigint::BigInt> = k.iter().map(|&x| x.into()).collect();
        let shift = dot_int(f.a(), &kb);
        let same_set = LinearForm::new(
            f.a().iter().map(|aj| aj * &mu).collect(),
            &(f.c() + &shift) * &mu,
            f.mult(),
        )
        .unwrap();
        prop_assert_eq!(canonical_key(&f), canonical_key(&same_set));
    }

    #[test]
    fn nu_is_symmetric_and_det_compatible(f in any_form()) {
        let cf = classify(f);
        if cf.class() == FormClass::L2 {
            let lat = value_lattice(&cf).unwrap();
            let n = cf.n();
            for p in 0..n {
                for q in (p + 1)..n {
                    let v = nu(&cf, p, q).unwrap();
                    prop_assert_eq!(v, nu(&cf, q, p).unwrap());
                    let det = perdiv::forms::cross_det(&cf.a()[p], &cf.a()[q]);
                    if v > 0 {
                        prop_assert_eq!(
                            lat.covolume() * Rat::from_integer(v.into()),
                            num_traits::Signed::abs(&det)
                        );
                    } else {
                        // nu = 0 only in the degenerate cases.
                        prop_assert!(
                            cf.a()[p].is_zero() || cf.a()[q].is_zero() || det == Rat::default()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn index_is_skew_and_additive(forms in same_dim_forms(3)) {
        let n = forms[0].n();
        let z = PlaneDivisor::new(n, forms.clone()).unwrap();
        let total = divisor_index(&z);
        prop_assert!(total.is_skew());

        let mut acc = perdiv::index::IndexMatrix::zero(n);
        for f in &forms {
            let single = divisor_index(&PlaneDivisor::new(n, vec![f.clone()]).unwrap());
            acc = acc.add(&single);
        }
        prop_assert_eq!(total, acc);
    }

    #[test]
    fn decide_agrees_with_the_index_matrix(forms in same_dim_forms(3)) {
        let n = forms[0].n();
        let z = PlaneDivisor::new(n, forms).unwrap();
        let decision = decide(&z, 1e-12);
        let zero = divisor_index(&z).is_zero();
        prop_assert_eq!(decision.verdict == Verdict::Accept, zero);
        if zero {
            let model = decision.model.expect("accepted decision carries a model");
            prop_assert!(corrector_identity_holds(&model));
            prop_assert!(decision.witness.is_none());
        } else {
            let w = decision.witness.expect("rejection carries a witness");
            prop_assert_eq!(decision.index.get(w.p, w.q), w.value);
            prop_assert!(w.value != 0);
            prop_assert!(decision.model.is_none());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nu_matches_bruteforce(f in any_form()) {
        let cf = classify(f);
        let n = cf.n();
        for p in 0..n {
            for q in (p + 1)..n {
                let closed = match cf.class() {
                    FormClass::L1 => 0,
                    FormClass::L2 => nu(&cf, p, q).unwrap(),
                };
                prop_assert_eq!(closed, nu_bruteforce(&cf, p, q), "pair ({}, {})", p, q);
            }
        }
    }

    #[test]
    fn lattice_decomposition_round_trips(
        f in any_form(),
        m1 in -4i64..=4,
        m2 in -4i64..=4,
    ) {
        let cf = classify(f);
        if cf.class() == FormClass::L2 {
            let lat = value_lattice(&cf).unwrap();
            let v = &lat.w1().scale(&rat_frac(m1, 1)) + &lat.w2().scale(&rat_frac(m2, 1));
            prop_assert_eq!(lat.decompose(&v).unwrap(), (m1.into(), m2.into()));
            prop_assert!(lat.reduce(&v).is_zero());
        }
    }
}

/// Convergence surrogate for the L1 product factors: with the
/// normalization -s phi, the factor differs from 1 by at most
/// e^{-|k| (|gamma| - R)} on |Im z| < R once the normalized imaginary
/// offset gamma = Im c / |k| clears R sqrt(n).
#[test]
fn l1_factor_convergence_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let r = 0.5f64;
    for _ in 0..40 {
        let n = rng.gen_range(2..=4);
        let k: Vec<i64> = loop {
            let k: Vec<i64> = (0..n).map(|_| rng.gen_range(-3i64..=3)).collect();
            if k.iter().any(|&x| x != 0) {
                break k;
            }
        };
        let k_norm = (k.iter().map(|&x| (x * x) as f64).sum::<f64>()).sqrt();
        let sqrt_n = (n as f64).sqrt();
        let gamma_abs = rng.gen_range(2.0 * sqrt_n * r..6.0 * sqrt_n * r);
        let s: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let c = Complex64::new(rng.gen_range(-1.0..1.0), s * gamma_abs * k_norm);

        for _ in 0..10 {
            let z: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-r..r) * 0.999))
                .collect();
            let mut theta = c;
            for (kj, zj) in k.iter().zip(z.iter()) {
                theta += zj.scale(*kj as f64);
            }
            // phi = s (e^{2 pi i s theta} - 1); normalized factor -s phi.
            let phi = one_minus_exp(Complex64::new(0.0, std::f64::consts::TAU * s) * theta)
                .mul_c(Complex64::new(-s, 0.0))
                .to_c64();
            let normalized = -s * phi;
            let bound = (-k_norm * (gamma_abs - r)).exp();
            assert!(
                (normalized - 1.0).norm() <= bound,
                "factor defect {} exceeds bound {bound}",
                (normalized - 1.0).norm()
            );
        }
    }
}

/// The continuation oracle must not care where it starts or how finely
/// it initially samples.
#[test]
fn numeric_index_is_base_point_and_refinement_stable() {
    let cf = classify(
        LinearForm::new(
            vec![GaussRat::one(), GaussRat::i(), GaussRat::from_fracs(1, 2, 0, 1)],
            GaussRat::from_fracs(1, 7, 1, 3),
            1,
        )
        .unwrap(),
    );
    let ev = SingleFormEvaluator::new(&cf, 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut seen = Vec::new();
    for _ in 0..5 {
        let base: Vec<Complex64> = (0..ev.dim())
            .map(|_| Complex64::new(rng.gen_range(-0.6..0.6), rng.gen_range(0.1..0.45)))
            .collect();
        let cfg = ContinuationConfig { base_point: Some(base), ..ContinuationConfig::default() };
        seen.push(numeric_index(&ev, 0, 1, &cfg).unwrap());
    }
    assert!(seen.iter().all(|&v| v == seen[0]), "base-point dependence: {seen:?}");
    assert_eq!(seen[0], -2);

    let coarse = ContinuationConfig::default();
    let fine = ContinuationConfig { initial_steps: coarse.initial_steps * 2, ..coarse.clone() };
    for (p, q) in [(0, 1), (1, 2)] {
        assert_eq!(
            numeric_index(&ev, p, q, &coarse).unwrap(),
            numeric_index(&ev, p, q, &fine).unwrap()
        );
    }
}
