//! Compensated floating-point summation.

use std::ops::AddAssign;

/// Kahan–Babuška–Neumaier running sum.
///
/// Carries the rounding error of every addition in a separate compensation
/// term, so the result is as accurate as if accumulated in twice the working
/// precision and rounded once.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `sum |t| / |sum t|`, or infinity when the sum is zero or subnormal.
pub fn condition_number(abs_sum: f64, sum: f64) -> f64 {
    if sum.abs() < f64::MIN_POSITIVE {
        f64::INFINITY
    } else {
        abs_sum / sum.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_bits() {
        let naive: f64 = [1.0, 1e100, 1.0, -1e100].iter().sum();
        let compensated: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated.value(), 2.0);
    }

    #[test]
    fn many_small_terms() {
        let acc: CompensatedSum = std::iter::repeat_n(0.1, 10_000).collect();
        assert_eq!(acc.value(), 1000.0);
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (1..200)
            .map(|i| 1.0 / i as f64 * if i % 3 == 0 { -1.0 } else { 1.0 })
            .collect();
        let all: CompensatedSum = xs.iter().copied().collect();
        let mut left: CompensatedSum = xs[..77].iter().copied().collect();
        let right: CompensatedSum = xs[77..].iter().copied().collect();
        left.merge(&right);
        assert!((left.value() - all.value()).abs() <= f64::EPSILON * all.value().abs());
    }

    #[test]
    fn condition() {
        assert_eq!(condition_number(3.0, -1.5), 2.0);
        assert_eq!(condition_number(1.0, 0.0), f64::INFINITY);
    }
}
