//! Fourth Lauricella polynomials
//!
//! ```text
//! F_D(-n, b_1..b_r; c; x_1..x_r)
//!     = sum_{n_1+...+n_r <= n} (-n)_s (b_1)_{n_1}...(b_r)_{n_r} / (c)_s
//!                              * x_1^{n_1}/n_1! ... x_r^{n_r}/n_r!,   s = n_1+...+n_r
//! ```

use serde::{Deserialize, Serialize};

use crate::compositions::SumMode;
use crate::error::{Error, Result};
use crate::gauss::{check_denominator, is_degenerate, Gauss2F1Spec, Transformed};
use crate::kernel::{FloatProductSum, ProductSum};
use crate::pochhammer::{factorial, rising_factorial};
use crate::rational::Rational;

/// Float-mode `c` closer than this to one of `0, -1, ..., -(n-1)` is rejected.
pub const NEAR_DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Parameters of `F_D^(r)(-n, b; c; x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LauricellaSpec {
    pub n: usize,
    pub b: Vec<Rational>,
    pub c: Rational,
    pub x: Vec<Rational>,
}

impl LauricellaSpec {
    pub fn new(n: usize, b: Vec<Rational>, c: Rational, x: Vec<Rational>) -> Result<Self> {
        let spec = LauricellaSpec { n, b, c, x };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_shape(self.b.len(), self.x.len())?;
        check_denominator(&self.c, self.n)
    }

    pub fn arity(&self) -> usize {
        self.b.len()
    }

    /// Number of terms in the defining sum, `C(n+r, r)`.
    pub fn term_count(&self) -> u128 {
        crate::compositions::composition_count(self.arity(), self.n, SumMode::AtMost)
    }
}

fn check_shape(b_len: usize, x_len: usize) -> Result<()> {
    if b_len != x_len {
        return Err(Error::LengthMismatch {
            left: "b",
            left_len: b_len,
            right: "x",
            right_len: x_len,
        });
    }
    if b_len == 0 {
        return Err(Error::TooFewParts { min: 1, got: 0 });
    }
    Ok(())
}

/// `(b)_m x^m / m!` for `m = 0..=n`.
pub(crate) fn scaled_pochhammer_table(b: &Rational, x: &Rational, n: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(n + 1);
    let mut value = Rational::one();
    table.push(value.clone());
    for m in 0..n {
        let m = Rational::from(m);
        value = value * (b + &m) * x / (m + Rational::one());
        table.push(value.clone());
    }
    table
}

/// `(-n)_s / (d)_s` for `s = 0..=n`; `d` must not be degenerate.
pub(crate) fn neg_n_ratio_table(d: &Rational, n: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(n + 1);
    let mut value = Rational::one();
    table.push(value.clone());
    for s in 0..n {
        let s = Rational::from(s);
        value = value * (&s - Rational::from(n)) / (d + &s);
        table.push(value.clone());
    }
    table
}

fn exact_kernel(spec: &LauricellaSpec) -> Result<ProductSum> {
    spec.validate()?;
    let by_index: Vec<_> = spec
        .b
        .iter()
        .zip(&spec.x)
        .map(|(b, x)| scaled_pochhammer_table(b, x, spec.n))
        .collect();
    let by_total = neg_n_ratio_table(&spec.c, spec.n);
    Ok(ProductSum::new(
        spec.n,
        SumMode::AtMost,
        &by_index,
        &by_total,
    ))
}

pub fn eval_fd_exact(spec: &LauricellaSpec) -> Result<Rational> {
    Ok(exact_kernel(spec)?.sum())
}

/// Visits every index tuple with the term the incremental kernel produced
/// for it, in colexicographic order.
pub fn for_each_fd_term(
    spec: &LauricellaSpec,
    visit: impl FnMut(&[usize], Rational),
) -> Result<()> {
    exact_kernel(spec)?.for_each_term(visit);
    Ok(())
}

/// A single term of the defining sum, built from rising factorials alone.
pub fn fd_term_from_scratch(spec: &LauricellaSpec, parts: &[usize]) -> Result<Rational> {
    spec.validate()?;
    if parts.len() != spec.arity() {
        return Err(Error::LengthMismatch {
            left: "parts",
            left_len: parts.len(),
            right: "b",
            right_len: spec.arity(),
        });
    }
    let s: usize = parts.iter().sum();
    if s > spec.n {
        return Err(Error::PartsSumMismatch { n: spec.n, sum: s });
    }
    let neg_n = -Rational::from(spec.n);
    let mut term = rising_factorial(&neg_n, s) / rising_factorial(&spec.c, s);
    for ((b, x), &m) in spec.b.iter().zip(&spec.x).zip(parts) {
        term = term * rising_factorial(b, m) * x.pow(m) / Rational::from(factorial(m));
    }
    Ok(term)
}

/// Binary64 evaluation result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatEvaluation {
    pub value: f64,
    /// `sum |term| / |sum term|`; infinite when the sum vanishes.
    pub condition: f64,
}

/// Binary64 evaluation with compensated summation.
pub fn eval_fd_float(n: usize, b: &[f64], c: f64, x: &[f64]) -> Result<FloatEvaluation> {
    check_shape(b.len(), x.len())?;
    for k in 0..n {
        let nearest = -(k as f64);
        if (c - nearest).abs() <= NEAR_DEGENERATE_TOLERANCE {
            return Err(Error::NearDegenerateDenominator {
                c,
                nearest: -(k as i64),
                tolerance: NEAR_DEGENERATE_TOLERANCE,
            });
        }
    }
    let by_index = b
        .iter()
        .zip(x)
        .map(|(&b, &x)| {
            let mut table = Vec::with_capacity(n + 1);
            let mut value = 1.0;
            table.push(value);
            for m in 0..n {
                let m = m as f64;
                value *= (b + m) * x / (m + 1.0);
                table.push(value);
            }
            table
        })
        .collect();
    let mut by_total = Vec::with_capacity(n + 1);
    let mut value = 1.0;
    by_total.push(value);
    for s in 0..n {
        let s = s as f64;
        value *= (s - n as f64) / (c + s);
        by_total.push(value);
    }
    let (value, magnitude) = FloatProductSum::new(n, SumMode::AtMost, by_index, by_total).sum();
    Ok(FloatEvaluation {
        value,
        condition: crate::summation::condition_number(magnitude, value),
    })
}

/// Binary64 evaluation of a rational spec.
pub fn eval_fd_float_spec(spec: &LauricellaSpec) -> Result<FloatEvaluation> {
    check_shape(spec.b.len(), spec.x.len())?;
    let b: Vec<f64> = spec.b.iter().map(Rational::to_f64).collect();
    let x: Vec<f64> = spec.x.iter().map(Rational::to_f64).collect();
    eval_fd_float(spec.n, &b, spec.c.to_f64(), &x)
}

/// `F_D(-n, b; c; x) = (c - sum b)_n / (c)_n * F_D(-n, b; 1 + sum b - n - c; 1 - x)`.
pub fn toscano_transform(spec: &LauricellaSpec) -> Result<Transformed<LauricellaSpec>> {
    spec.validate()?;
    let b_sum: Rational = spec.b.iter().sum();
    let c_prime = Rational::one() + &b_sum - Rational::from(spec.n) - &spec.c;
    if is_degenerate(&c_prime, spec.n) {
        return Err(Error::TransformUndefined);
    }
    let factor = rising_factorial(&(&spec.c - &b_sum), spec.n) / rising_factorial(&spec.c, spec.n);
    Ok(Transformed {
        factor,
        transformed: LauricellaSpec {
            n: spec.n,
            b: spec.b.clone(),
            c: c_prime,
            x: spec.x.iter().map(|x| Rational::one() - x).collect(),
        },
    })
}

/// The single-variable case `F_D^(1)(-n, b; c; x) = 2F1(-n, b; c; x)`.
pub fn reduce_to_2f1(spec: &LauricellaSpec) -> Result<Gauss2F1Spec> {
    check_shape(spec.b.len(), spec.x.len())?;
    if spec.arity() != 1 {
        return Err(Error::LengthMismatch {
            left: "b",
            left_len: spec.arity(),
            right: "single-variable form",
            right_len: 1,
        });
    }
    Gauss2F1Spec::new(spec.n, spec.b[0].clone(), spec.c.clone(), spec.x[0].clone())
}

/// Fixed parameters for timing runs: `b_j = j/(j+1)`, `c = r + 3/2`,
/// `x_j = 1/(j+2)`.
pub fn benchmark_spec(n: usize, r: usize) -> Result<LauricellaSpec> {
    let b = (1..=r as i64).map(|j| Rational::new(j, j + 1)).collect();
    let x = (1..=r as i64).map(|j| Rational::new(1, j + 2)).collect();
    LauricellaSpec::new(n, b, Rational::new(2 * r as i64 + 3, 2), x)
}
