//! The weighted multinomial identity for rising factorials
//!
//! ```text
//! sum_{n_1+...+n_r = n} C(n; n_1..n_r) prod_j w_j^{n_j} (a_j)_{n_j}
//!     = w_p^n (a)_n F_D(-n, (a_j)_{j != p}; a; (1 - w_j/w_p)_{j != p}),   a = sum_j a_j
//! ```
//!
//! together with the intermediate form the derivation passes through, and a
//! seeded harness that checks all three against each other.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::compositions::{composition_count, SumMode};
use crate::error::{Error, Result};
use crate::gauss::check_denominator;
use crate::kernel::ProductSum;
use crate::lauricella::{
    eval_fd_exact, neg_n_ratio_table, scaled_pochhammer_table, LauricellaSpec,
};
use crate::pochhammer::{factorial, rising_factorial};
use crate::rational::Rational;

/// One instance of the identity. `pivot` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdentityCase {
    pub n: usize,
    pub a: Vec<Rational>,
    pub w: Vec<Rational>,
    pub pivot: usize,
}

impl IdentityCase {
    /// Builds a case; without an explicit pivot the weight of largest
    /// magnitude is chosen (first one on ties).
    pub fn new(n: usize, a: Vec<Rational>, w: Vec<Rational>, pivot: Option<usize>) -> Result<Self> {
        if a.len() != w.len() {
            return Err(Error::LengthMismatch {
                left: "a",
                left_len: a.len(),
                right: "w",
                right_len: w.len(),
            });
        }
        let pivot = pivot.unwrap_or_else(|| default_pivot(&w));
        let case = IdentityCase { n, a, w, pivot };
        case.validate()?;
        Ok(case)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.len() != self.w.len() {
            return Err(Error::LengthMismatch {
                left: "a",
                left_len: self.a.len(),
                right: "w",
                right_len: self.w.len(),
            });
        }
        if self.a.len() < 2 {
            return Err(Error::TooFewParts {
                min: 2,
                got: self.a.len(),
            });
        }
        if self.pivot == 0 || self.pivot > self.a.len() {
            return Err(Error::PivotOutOfRange {
                pivot: self.pivot,
                len: self.a.len(),
            });
        }
        if self.w[self.pivot - 1].is_zero() {
            return Err(Error::ZeroPivotWeight { pivot: self.pivot });
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.a.len()
    }

    /// Same parameters, different pivot.
    pub fn with_pivot(&self, pivot: usize) -> Result<Self> {
        let case = IdentityCase {
            pivot,
            ..self.clone()
        };
        case.validate()?;
        Ok(case)
    }

    pub fn lhs_term_count(&self) -> u128 {
        composition_count(self.arity(), self.n, SumMode::Exactly)
    }

    pub fn rhs_term_count(&self) -> u128 {
        composition_count(self.arity() - 1, self.n, SumMode::AtMost)
    }

    fn pivot_index(&self) -> usize {
        self.pivot - 1
    }

    fn others(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        let p = self.pivot_index();
        self.a
            .iter()
            .zip(&self.w)
            .enumerate()
            .filter(move |(j, _)| *j != p)
            .map(|(_, pair)| pair)
    }
}

fn default_pivot(w: &[Rational]) -> usize {
    let mut best = 0;
    for (j, wj) in w.iter().enumerate() {
        if wj.abs() > w[best].abs() {
            best = j;
        }
    }
    best + 1
}

/// Left side, summed over all weak compositions of `n` into `r` parts.
pub fn multinomial_lhs(case: &IdentityCase) -> Result<Rational> {
    case.validate()?;
    let n = case.n;
    // C(n; parts) prod w^m (a)_m = n! prod (a)_m w^m / m!
    let by_index: Vec<_> = case
        .a
        .iter()
        .zip(&case.w)
        .map(|(a, w)| scaled_pochhammer_table(a, w, n))
        .collect();
    let by_total = vec![Rational::from(factorial(n)); n + 1];
    Ok(ProductSum::new(n, SumMode::Exactly, &by_index, &by_total).sum())
}

/// The derivation's middle expression, with the pivot part eliminated:
///
/// ```text
/// (a_p)_n w_p^n sum_{s <= n} (-n)_s / (1 - a_p - n)_s prod_{j != p} (a_j)_{n_j} / n_j! (w_j/w_p)^{n_j}
/// ```
pub fn multinomial_intermediate(case: &IdentityCase) -> Result<Rational> {
    case.validate()?;
    let n = case.n;
    let p = case.pivot_index();
    let (a_p, w_p) = (&case.a[p], &case.w[p]);
    let shifted = Rational::one() - a_p - Rational::from(n);
    check_denominator(&shifted, n).map_err(|_| Error::IntermediateUndefined {
        s: shifted.as_nonpositive_integer().map_or(0, |m| m + 1),
    })?;
    let prefactor = rising_factorial(a_p, n) * w_p.pow(n);
    let by_index: Vec<_> = case
        .others()
        .map(|(a, w)| scaled_pochhammer_table(a, &(w / w_p), n))
        .collect();
    let by_total = neg_n_ratio_table(&shifted, n);
    Ok(prefactor * ProductSum::new(n, SumMode::AtMost, &by_index, &by_total).sum())
}

/// The Lauricella parameters of the closed form.
pub fn closed_form_spec(case: &IdentityCase) -> Result<LauricellaSpec> {
    case.validate()?;
    let c: Rational = case.a.iter().sum();
    check_denominator(&c, case.n).map_err(|_| Error::ClosedFormUndefined {
        s: c.as_nonpositive_integer().map_or(0, |m| m + 1),
    })?;
    let w_p = &case.w[case.pivot_index()];
    let (b, x) = case
        .others()
        .map(|(a, w)| (a.clone(), Rational::one() - w / w_p))
        .unzip();
    LauricellaSpec::new(case.n, b, c, x)
}

/// Right side: `w_p^n (a)_n F_D(...)`.
pub fn multinomial_rhs(case: &IdentityCase) -> Result<Rational> {
    let spec = closed_form_spec(case)?;
    let w_p = &case.w[case.pivot_index()];
    Ok(w_p.pow(case.n) * rising_factorial(&spec.c, case.n) * eval_fd_exact(&spec)?)
}

/// Wall-clock time spent on each side, in nanoseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elapsed {
    pub lhs: u64,
    pub rhs: u64,
    pub intermediate: u64,
}

/// Outcome of checking one [`IdentityCase`].
///
/// Undefined sides are kept as errors rather than aborting the check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub case: IdentityCase,
    pub lhs: Rational,
    pub rhs: Result<Rational>,
    pub intermediate: Result<Rational>,
    /// `lhs == rhs`; false when the right side is undefined.
    pub equal: bool,
    pub lhs_terms: u128,
    pub rhs_terms: u128,
    pub elapsed: Elapsed,
}

impl VerificationReport {
    /// True when the closed form could not be evaluated.
    pub fn is_degenerate(&self) -> bool {
        self.rhs.is_err()
    }

    /// Defined but unequal: a genuine failure of the identity.
    pub fn is_failure(&self) -> bool {
        self.rhs.is_ok() && !self.equal
    }

    /// `lhs == intermediate`, when the intermediate form is defined.
    pub fn chain_equal(&self) -> Option<bool> {
        self.intermediate.as_ref().ok().map(|mid| *mid == self.lhs)
    }
}

#[derive(Serialize)]
struct ReportWire<'a> {
    case: &'a IdentityCase,
    lhs: &'a Rational,
    rhs: Option<&'a Rational>,
    intermediate: Option<&'a Rational>,
    equal: bool,
    lhs_terms: u64,
    rhs_terms: u64,
    elapsed_ns: Elapsed,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    undefined: Vec<String>,
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let undefined = [&self.rhs, &self.intermediate]
            .into_iter()
            .filter_map(|side| side.as_ref().err().map(ToString::to_string))
            .collect();
        ReportWire {
            case: &self.case,
            lhs: &self.lhs,
            rhs: self.rhs.as_ref().ok(),
            intermediate: self.intermediate.as_ref().ok(),
            equal: self.equal,
            lhs_terms: self.lhs_terms as u64,
            rhs_terms: self.rhs_terms as u64,
            elapsed_ns: self.elapsed,
            undefined,
        }
        .serialize(serializer)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed().as_nanos() as u64)
}

/// Evaluates every side of the identity and compares; never panics on
/// degenerate parameters.
pub fn verify_identity(case: &IdentityCase) -> Result<VerificationReport> {
    case.validate()?;
    let (lhs, lhs_ns) = timed(|| multinomial_lhs(case));
    let (rhs, rhs_ns) = timed(|| multinomial_rhs(case));
    let (intermediate, mid_ns) = timed(|| multinomial_intermediate(case));
    let lhs = lhs?;
    let equal = rhs.as_ref().is_ok_and(|rhs| *rhs == lhs);
    Ok(VerificationReport {
        case: case.clone(),
        lhs,
        rhs,
        intermediate,
        equal,
        lhs_terms: case.lhs_term_count(),
        rhs_terms: case.rhs_term_count(),
        elapsed: Elapsed {
            lhs: lhs_ns,
            rhs: rhs_ns,
            intermediate: mid_ns,
        },
    })
}

/// Verifies many cases, possibly in parallel; reports come back in input
/// order regardless of `jobs`.
pub fn verify_all(cases: &[IdentityCase], jobs: Option<usize>) -> Result<Vec<VerificationReport>> {
    match jobs {
        Some(1) => cases.iter().map(verify_identity).collect(),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| cases.par_iter().map(verify_identity).collect())
        }
        None => cases.par_iter().map(verify_identity).collect(),
    }
}

/// Ranges for [`generate_cases`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseBounds {
    pub r_max: usize,
    pub n_max: usize,
    /// Largest numerator and denominator magnitude of each `a_j`, `w_j`.
    pub magnitude: u32,
}

impl Default for CaseBounds {
    fn default() -> Self {
        CaseBounds {
            r_max: 5,
            n_max: 12,
            magnitude: 8,
        }
    }
}

fn random_rational(rng: &mut impl Rng, magnitude: i64, nonzero: bool) -> Rational {
    let numer = loop {
        let p = rng.random_range(-magnitude..=magnitude);
        if !nonzero || p != 0 {
            break p;
        }
    };
    Rational::new(numer, rng.random_range(1..=magnitude))
}

/// Deterministic pseudo-random cases: `r` uniform in `2..=r_max`, `n`
/// uniform in `0..=n_max`, nonzero weights.
pub fn generate_cases(seed: u64, count: usize, bounds: CaseBounds) -> Result<Vec<IdentityCase>> {
    if bounds.r_max < 2 {
        return Err(Error::TooFewParts {
            min: 2,
            got: bounds.r_max,
        });
    }
    let magnitude = i64::from(bounds.magnitude.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.random_range(2..=bounds.r_max);
            let n = rng.random_range(0..=bounds.n_max);
            let a = (0..r)
                .map(|_| random_rational(&mut rng, magnitude, false))
                .collect();
            let w = (0..r)
                .map(|_| random_rational(&mut rng, magnitude, true))
                .collect();
            IdentityCase::new(n, a, w, None)
        })
        .collect()
}

/// Fixed positive parameters for timing runs: `a_j = j/(j+1)`,
/// `w_j = (j+1)/(j+2)`.
pub fn benchmark_case(n: usize, r: usize) -> Result<IdentityCase> {
    let a = (1..=r as i64).map(|j| Rational::new(j, j + 1)).collect();
    let w = (1..=r as i64)
        .map(|j| Rational::new(j + 1, j + 2))
        .collect();
    IdentityCase::new(n, a, w, None)
}
