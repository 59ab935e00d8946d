//! Shared fixtures for the criterion benchmarks.

use lauricella::{benchmark_case, benchmark_spec, IdentityCase, LauricellaSpec, Rational};

/// `(n, r)` pairs swept by every benchmark group.
pub const SIZES: &[(usize, usize)] = &[(12, 3), (20, 4), (30, 4), (24, 5)];

pub fn fd_spec(n: usize, r: usize) -> LauricellaSpec {
    benchmark_spec(n, r).expect("benchmark parameters are non-degenerate")
}

pub fn identity_case(n: usize, r: usize) -> IdentityCase {
    benchmark_case(n, r).expect("benchmark parameters are valid")
}

/// The float twin of [`fd_spec`].
pub fn fd_spec_f64(n: usize, r: usize) -> (Vec<f64>, f64, Vec<f64>) {
    let spec = fd_spec(n, r);
    let floats = |v: &[Rational]| v.iter().map(Rational::to_f64).collect();
    (floats(&spec.b), spec.c.to_f64(), floats(&spec.x))
}

pub fn label(n: usize, r: usize) -> String {
    format!("n{n}_r{r}")
}
