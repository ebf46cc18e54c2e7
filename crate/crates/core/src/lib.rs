//! Exact computation of generalized Bernoulli polynomials attached to
//! Dirichlet characters, generalized power sums, and verification of the
//! three-weight symmetry identities they satisfy.
//!
//! Everything is exact. Character values live in cyclotomic fields
//! `Q(zeta_m)` ([`cyclotomic`]), generating functions are truncated power
//! series over those fields ([`series`]), and the identity checks in
//! [`identities`] compare values coefficient-for-coefficient.
//!
//! - [`cyclotomic`]: rationals, cyclotomic polynomials, `Q(zeta_m)` arithmetic
//! - [`characters`]: unit groups mod `d`, Dirichlet character enumeration, conductors
//! - [`series`]: truncated exponential power series
//! - [`bernoulli`]: `B_n`, `B_{n,chi}`, `B_{n,chi}(x)`, `S_k(n, chi)`
//! - [`identities`]: quotient generating functions, expansions, theorem verification

pub mod bernoulli;
pub mod characters;
pub mod cyclotomic;
mod error;
pub mod identities;
pub mod series;

pub use bernoulli::{
    gen_bernoulli_number, gen_bernoulli_poly, ordinary_bernoulli, power_sum, power_sum_series, BernoulliCache,
    PowerSumKey,
};
pub use characters::{enumerate_characters, unit_group_structure, CharacterId, DirichletChar, UnitGroupStructure};
pub use cyclotomic::{cyclotomic_polynomial, parse_rational, zeta, CycloElement, IntPolynomial, Rational};
pub use error::{Error, Result};
pub use identities::{
    expansion_sum, lambda_series, lambda_series_from_integrals, multinomial, sweep_verify, theorem_expressions,
    verify_theorem, Expansion, LambdaFamily, LambdaSpec, Perturbation, SweepGrid, Theorem, TheoremInstance,
    VerificationReport, Weights,
};
pub use series::TruncatedSeries;
