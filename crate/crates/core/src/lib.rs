//! Periodic plane divisors in C^n: decision and construction.
//!
//! A plane divisor is a finite multiset of affine hyperplanes
//! l_j(z) = <a_j, z> + c_j = 0 with Gaussian-rational data, spread over
//! all Z^n-translates (so the divisor is invariant under the unit
//! periods e_1, ..., e_n).  This crate decides whether such a divisor
//! is the divisor of some entire periodic function, and on acceptance
//! constructs an evaluable model of one.
//!
//! The decision reduces to a skew-symmetric integer matrix: for any
//! entire f with the given divisor and multipliers g_p (defined by
//! f(z + e_p) = e^{g_p(z)} f(z)), the numbers
//! N_pq = (1/2 pi i)(Delta_p g_q - Delta_q g_p) depend only on the
//! divisor, and the divisor is realizable exactly when all N_pq = 0.
//! Each hyperplane contributes a closed-form entry computed from the
//! rank-2 value lattice of its coefficients; everything on that path is
//! exact rational and integer arithmetic.
//!
//! Module map:
//! * [`rat`]: exact rational and Gaussian-rational scalars;
//! * [`forms`]: hyperplane components, the L1/L2 classification, and
//!   canonical keys for divisor-equality tests;
//! * [`lattice`]: value lattices, parallelogram counts nu, and coset
//!   representatives;
//! * [`index`]: the index matrix, the accept/reject decision, and the
//!   transformation laws;
//! * [`model`]: the constructed function (products of one-variable
//!   quasi-periodic factors and the quadratic corrector);
//! * [`oracle`]: independent numerical cross-checks (branch-continued
//!   winding, brute-force counting, end-to-end verification);
//! * [`numeric`]: scaled complex arithmetic used by evaluation;
//! * [`selftest`]: the seeded acceptance suite.

pub mod forms;
pub mod index;
pub mod lattice;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod rat;
pub mod selftest;

pub use forms::{
    canonical_key, classify, divisor_certificate, ClassData, ClassifiedForm, DivisorCertificate,
    FormClass, FormError, LinearForm,
};
pub use index::{
    apply_transform, component_index, decide, divisor_index, symmetry_certificate, Decision,
    DivisorError, IndexMatrix, PlaneDivisor, RejectWitness, SymmetryCertificate, Transform,
    TransformError, TransformResult, Verdict,
};
pub use lattice::{coset_reps, nu, value_lattice, CosetSystem, LatticeError, ValueLattice};
pub use model::{
    build_model, corrector_identity_holds, eval_model, phi_eval, quasi_period_exponent,
    ConstructError, FunctionModel, QuasiPeriodExponent,
};
pub use oracle::{
    numeric_index, nu_bruteforce, verify_model, ContinuationConfig, Evaluator, OracleError,
    VerifyReport,
};
pub use rat::{parse_rat, GaussRat, Rat, RatParseError};
pub use selftest::{run_all, CriterionOutcome, DEFAULT_SEED};
