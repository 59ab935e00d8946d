//! Sums of separable products over weak compositions.
//!
//! Every multivariate sum in this crate has the shape
//!
//! ```text
//! sum over parts of  g(parts_1 + ... + parts_r) * f_1(parts_1) * ... * f_r(parts_r)
//! ```
//!
//! with the parts running over weak compositions. [`ProductSum`] evaluates it
//! exactly: each table is rescaled by the lcm of its denominators so that
//! every term is a product of integers, and the running product is updated
//! incrementally as the composition stream moves. Stepping an index by one
//! multiplies and divides by the small reduced ratio `f(m+1)/f(m)`; larger
//! jumps divide out the old table entry and multiply in the new one. Zero
//! table entries are never multiplied in: they are counted, so the division
//! that later removes them stays exact.
//!
//! The stream is split on the value of the last part. The slices are summed
//! independently (in parallel under rayon) and combined in index order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::compositions::{Compositions, SumMode};
use crate::rational::Rational;
use crate::summation::CompensatedSum;

/// Below this many terms the slices are summed on the calling thread.
const PARALLEL_THRESHOLD: u128 = 1 << 14;

/// Factor table `f(0), ..., f(n)` multiplied through by a common denominator.
#[derive(Clone, Debug)]
struct ScaledTable {
    entries: Vec<BigInt>,
    /// `f(m+1) / f(m)` in lowest terms, present when both entries are nonzero.
    steps: Vec<Option<(BigInt, BigInt)>>,
    scale: BigInt,
}

impl ScaledTable {
    fn new(values: &[Rational]) -> Self {
        let scale = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let entries = values
            .iter()
            .map(|v| v.numer() * (&scale / v.denom()))
            .collect();
        let steps = values
            .windows(2)
            .map(|pair| {
                if pair[0].is_zero() || pair[1].is_zero() {
                    None
                } else {
                    let ratio = &pair[1] / &pair[0];
                    Some((ratio.numer().clone(), ratio.denom().clone()))
                }
            })
            .collect();
        ScaledTable {
            entries,
            steps,
            scale,
        }
    }
}

/// Product of the nonzero factors plus a count of the zero ones.
#[derive(Clone, Debug)]
struct RunningProduct {
    value: BigInt,
    zeros: usize,
}

impl RunningProduct {
    fn one() -> Self {
        RunningProduct {
            value: BigInt::one(),
            zeros: 0,
        }
    }

    fn include(&mut self, factor: &BigInt) {
        if factor.is_zero() {
            self.zeros += 1;
        } else {
            self.value *= factor;
        }
    }

    /// Swaps the factor `table[old]` for `table[new]`.
    fn replace(&mut self, table: &ScaledTable, old: usize, new: usize) {
        if old == new {
            return;
        }
        if new == old + 1 {
            if let Some((p, q)) = &table.steps[old] {
                self.value *= p;
                self.value /= q;
                return;
            }
        } else if old == new + 1 {
            if let Some((p, q)) = &table.steps[new] {
                self.value *= q;
                self.value /= p;
                return;
            }
        }
        self.include(&table.entries[new]);
        let removed = &table.entries[old];
        if removed.is_zero() {
            self.zeros -= 1;
        } else {
            debug_assert!((&self.value % removed).is_zero());
            self.value /= removed;
        }
    }

    fn term(&self) -> Option<&BigInt> {
        (self.zeros == 0).then_some(&self.value)
    }
}

/// Exact evaluator for a separable sum over weak compositions of `n`.
#[derive(Clone, Debug)]
pub(crate) struct ProductSum {
    n: usize,
    mode: SumMode,
    by_index: Vec<ScaledTable>,
    by_total: ScaledTable,
    scale: BigInt,
}

impl ProductSum {
    /// `by_index[j][m] = f_j(m)` and `by_total[s] = g(s)`, each of length
    /// `n + 1`.
    pub(crate) fn new(
        n: usize,
        mode: SumMode,
        by_index: &[Vec<Rational>],
        by_total: &[Rational],
    ) -> Self {
        assert!(!by_index.is_empty(), "at least one index");
        assert!(by_index.iter().all(|t| t.len() == n + 1));
        assert_eq!(by_total.len(), n + 1);
        let by_index: Vec<_> = by_index.iter().map(|t| ScaledTable::new(t)).collect();
        let by_total = ScaledTable::new(by_total);
        let scale = by_index
            .iter()
            .fold(by_total.scale.clone(), |acc, t| acc * &t.scale);
        ProductSum {
            n,
            mode,
            by_index,
            by_total,
            scale,
        }
    }

    pub(crate) fn term_count(&self) -> u128 {
        crate::compositions::composition_count(self.by_index.len(), self.n, self.mode)
    }

    /// Slices of the stream, keyed by the value of the last part.
    fn slices(&self) -> Vec<Option<usize>> {
        if self.by_index.len() == 1 {
            vec![None]
        } else {
            (0..=self.n).map(Some).collect()
        }
    }

    /// Walks one slice, calling `visit` with the prefix parts and the scaled
    /// term (`None` when a factor is zero).
    fn walk_slice(&self, tail: Option<usize>, mut visit: impl FnMut(&[usize], Option<&BigInt>)) {
        let r = self.by_index.len();
        let (prefix_len, offset) = match tail {
            Some(t) => (r - 1, t),
            None => (r, 0),
        };
        let mut cursor = Compositions::new(prefix_len, self.n - offset, self.mode)
            .expect("prefix length is positive");

        if cursor.advance().is_none() {
            return;
        }
        let mut product = RunningProduct::one();
        product.include(&self.by_total.entries[cursor.total() + offset]);
        for (table, &m) in self.by_index.iter().zip(cursor.parts()) {
            product.include(&table.entries[m]);
        }
        if let Some(t) = tail {
            product.include(&self.by_index[r - 1].entries[t]);
        }
        visit(cursor.parts(), product.term());

        let mut prev = cursor.parts().to_vec();
        let mut prev_total = cursor.total();
        while let Some(hi) = cursor.advance() {
            let parts = cursor.parts();
            for j in 0..=hi {
                if parts[j] != prev[j] {
                    product.replace(&self.by_index[j], prev[j], parts[j]);
                    prev[j] = parts[j];
                }
            }
            let total = cursor.total();
            if total != prev_total {
                product.replace(&self.by_total, prev_total + offset, total + offset);
                prev_total = total;
            }
            visit(parts, product.term());
        }
    }

    fn slice_sum(&self, tail: Option<usize>) -> BigInt {
        let mut acc = BigInt::zero();
        self.walk_slice(tail, |_, term| {
            if let Some(term) = term {
                acc += term;
            }
        });
        acc
    }

    /// Exact value of the sum.
    pub(crate) fn sum(&self) -> Rational {
        let slices = self.slices();
        let partials: Vec<BigInt> = if self.term_count() < PARALLEL_THRESHOLD {
            slices.into_iter().map(|t| self.slice_sum(t)).collect()
        } else {
            slices.into_par_iter().map(|t| self.slice_sum(t)).collect()
        };
        let total: BigInt = partials.into_iter().sum();
        Rational::new(total, self.scale.clone())
    }

    /// Visits every composition with its incrementally maintained term, in
    /// colexicographic order.
    pub(crate) fn for_each_term(&self, mut visit: impl FnMut(&[usize], Rational)) {
        let mut parts = vec![0; self.by_index.len()];
        for tail in self.slices() {
            self.walk_slice(tail, |prefix, term| {
                parts[..prefix.len()].copy_from_slice(prefix);
                if let Some(t) = tail {
                    parts[prefix.len()] = t;
                }
                let term = match term {
                    Some(v) => Rational::new(v.clone(), self.scale.clone()),
                    None => Rational::zero(),
                };
                visit(&parts, term);
            });
        }
    }
}

/// Binary64 twin of [`ProductSum`]: terms are recomputed from the tables at
/// every composition and accumulated with compensated summation.
#[derive(Clone, Debug)]
pub(crate) struct FloatProductSum {
    n: usize,
    mode: SumMode,
    by_index: Vec<Vec<f64>>,
    by_total: Vec<f64>,
}

impl FloatProductSum {
    pub(crate) fn new(
        n: usize,
        mode: SumMode,
        by_index: Vec<Vec<f64>>,
        by_total: Vec<f64>,
    ) -> Self {
        assert!(!by_index.is_empty(), "at least one index");
        assert!(by_index.iter().all(|t| t.len() == n + 1));
        assert_eq!(by_total.len(), n + 1);
        FloatProductSum {
            n,
            mode,
            by_index,
            by_total,
        }
    }

    /// Returns the compensated sum of the terms and of their magnitudes.
    pub(crate) fn sum(&self) -> (f64, f64) {
        let mut cursor =
            Compositions::new(self.by_index.len(), self.n, self.mode).expect("at least one index");
        let mut value = CompensatedSum::new();
        let mut magnitude = CompensatedSum::new();
        while cursor.advance().is_some() {
            let term = self
                .by_index
                .iter()
                .zip(cursor.parts())
                .fold(self.by_total[cursor.total()], |acc, (table, &m)| {
                    acc * table[m]
                });
            value += term;
            magnitude += term.abs();
        }
        (value.value(), magnitude.value())
    }
}
