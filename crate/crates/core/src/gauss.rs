//! Terminating Gauss hypergeometric polynomials `2F1(-n, b; c; x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pochhammer::{binomial, rising_factorial};
use crate::rational::Rational;

/// Parameters of `2F1(-n, b; c; x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gauss2F1Spec {
    pub n: usize,
    pub b: Rational,
    pub c: Rational,
    pub x: Rational,
}

/// Checks that `(c)_k` is nonzero for every `k <= n`, i.e. that `c` is not
/// one of `0, -1, ..., -(n-1)`.
pub(crate) fn check_denominator(c: &Rational, n: usize) -> Result<()> {
    match c.as_nonpositive_integer() {
        Some(m) if m < n => Err(Error::DegenerateDenominator { k: m + 1 }),
        _ => Ok(()),
    }
}

pub(crate) fn is_degenerate(c: &Rational, n: usize) -> bool {
    check_denominator(c, n).is_err()
}

impl Gauss2F1Spec {
    pub fn new(n: usize, b: Rational, c: Rational, x: Rational) -> Result<Self> {
        let spec = Gauss2F1Spec { n, b, c, x };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_denominator(&self.c, self.n)
    }
}

/// `sum_{k=0}^{n} (-n)_k (b)_k x^k / (k! (c)_k)`, accumulated with the term
/// recurrence `t_{k+1} = t_k (k-n)(b+k) x / ((k+1)(c+k))`.
pub fn eval_2f1(spec: &Gauss2F1Spec) -> Result<Rational> {
    spec.validate()?;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 0..spec.n {
        let kq = Rational::from(k);
        let numer = (&kq - Rational::from(spec.n)) * (&spec.b + &kq) * &spec.x;
        if numer.is_zero() {
            // Every later term carries the same zero factor.
            break;
        }
        term = term * numer / ((&kq + Rational::one()) * (&spec.c + &kq));
        sum += &term;
    }
    Ok(sum)
}

/// Result of the argument transformation `x -> 1 - x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed<S> {
    pub factor: Rational,
    pub transformed: S,
}

/// `2F1(-n, b; c; x) = (c-b)_n / (c)_n * 2F1(-n, b; b+1-n-c; 1-x)`.
pub fn transform_2f1(spec: &Gauss2F1Spec) -> Result<Transformed<Gauss2F1Spec>> {
    spec.validate()?;
    let n = Rational::from(spec.n);
    let c_prime = &spec.b + Rational::one() - &n - &spec.c;
    if is_degenerate(&c_prime, spec.n) {
        return Err(Error::TransformUndefined);
    }
    let factor = rising_factorial(&(&spec.c - &spec.b), spec.n) / rising_factorial(&spec.c, spec.n);
    Ok(Transformed {
        factor,
        transformed: Gauss2F1Spec {
            n: spec.n,
            b: spec.b.clone(),
            c: c_prime,
            x: Rational::one() - &spec.x,
        },
    })
}

/// Gauss summation `2F1(-n, b; c; 1) = (c-b)_n / (c)_n`.
pub fn gauss_sum(n: usize, b: &Rational, c: &Rational) -> Result<Rational> {
    check_denominator(c, n)?;
    Ok(rising_factorial(&(c - b), n) / rising_factorial(c, n))
}

/// Both sides of the weighted Chu-Vandermonde identity
///
/// ```text
/// sum_k C(n,k) (alpha)_k w^k (beta)_{n-k} z^{n-k}
///     = z^n (alpha+beta)_n 2F1(-n, alpha; alpha+beta; 1 - w/z)
/// ```
///
/// The left side is summed directly. The right side is an error when
/// `z = 0` or when `alpha + beta` is a degenerate denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct ChuVandermonde {
    pub lhs: Rational,
    pub rhs: Result<Rational>,
}

pub fn chu_vandermonde_pair(
    alpha: &Rational,
    beta: &Rational,
    w: &Rational,
    z: &Rational,
    n: usize,
) -> ChuVandermonde {
    let lhs = (0..=n)
        .map(|k| {
            Rational::from(binomial(n, k).expect("k <= n"))
                * rising_factorial(alpha, k)
                * w.pow(k)
                * rising_factorial(beta, n - k)
                * z.pow(n - k)
        })
        .sum();
    let rhs = cv_closed_form(alpha, beta, w, z, n);
    ChuVandermonde { lhs, rhs }
}

fn cv_closed_form(
    alpha: &Rational,
    beta: &Rational,
    w: &Rational,
    z: &Rational,
    n: usize,
) -> Result<Rational> {
    if z.is_zero() {
        return Err(Error::ZeroScale);
    }
    let c = alpha + beta;
    let spec = Gauss2F1Spec::new(n, alpha.clone(), c.clone(), Rational::one() - w / z)?;
    Ok(z.pow(n) * rising_factorial(&c, n) * eval_2f1(&spec)?)
}
