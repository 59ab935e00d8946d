//! Exact evaluation of rising factorials, terminating Gauss hypergeometric
//! polynomials and fourth Lauricella polynomials, with machinery to check the
//! weighted multinomial identity for rising factorials term for term.
//!
//! All exact arithmetic runs on [`Rational`], an arbitrary-precision
//! rational kept in canonical form. A binary64 path with compensated
//! summation and a reported condition number exists for `F_D`.
//!
//! ```
//! use lauricella::{rising_factorial, Rational};
//!
//! let x: Rational = "1/2".parse().unwrap();
//! assert_eq!(rising_factorial(&x, 3).to_string(), "15/8");
//! ```

pub mod compositions;
pub mod error;
pub mod gauss;
pub mod identity;
mod kernel;
pub mod lauricella;
pub mod pochhammer;
pub mod rational;
pub mod summation;

pub use compositions::{
    composition_count, enumerate_weak_compositions, Compositions, SumMode, WeakComposition,
};
pub use error::{Error, Result};
pub use gauss::{
    chu_vandermonde_pair, eval_2f1, gauss_sum, transform_2f1, ChuVandermonde, Gauss2F1Spec,
    Transformed,
};
pub use identity::{
    benchmark_case, generate_cases, multinomial_intermediate, multinomial_lhs, multinomial_rhs,
    verify_all, verify_identity, CaseBounds, Elapsed, IdentityCase, VerificationReport,
};
pub use lauricella::{
    benchmark_spec, eval_fd_exact, eval_fd_float, eval_fd_float_spec, fd_term_from_scratch,
    for_each_fd_term, reduce_to_2f1, toscano_transform, FloatEvaluation, LauricellaSpec,
    NEAR_DEGENERATE_TOLERANCE,
};
pub use pochhammer::{
    binomial, factorial, falling_factorial, multinomial, neg_n_pochhammer_ratio, rising_factorial,
    sign, tail_pochhammer,
};
pub use rational::Rational;
