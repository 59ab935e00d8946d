//! Weak compositions in colexicographic order.
//!
//! A weak composition of length `r` is a tuple of non-negative integers whose
//! sum is either exactly `n` or at most `n`. The stream advances like a
//! mixed-radix counter whose least significant digit is `parts[0]`, so
//! consecutive compositions usually differ only in their first one or two
//! entries. The summation kernels rely on that to update terms in O(1)
//! factors per step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumMode {
    /// `sum(parts) == n`
    Exactly,
    /// `sum(parts) <= n`
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeakComposition {
    pub parts: Vec<usize>,
    pub mode: SumMode,
    pub n: usize,
}

impl WeakComposition {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Cursor over the compositions of `n` into `r` parts.
///
/// [`Compositions::advance`] moves in place without allocating; the
/// [`Iterator`] impl clones each state into a [`WeakComposition`].
#[derive(Clone, Debug)]
pub struct Compositions {
    parts: Vec<usize>,
    total: usize,
    n: usize,
    mode: SumMode,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(r: usize, n: usize, mode: SumMode) -> Result<Self> {
        if r == 0 {
            return Err(Error::TooFewParts { min: 1, got: 0 });
        }
        let mut parts = vec![0; r];
        let total = match mode {
            SumMode::Exactly => {
                parts[0] = n;
                n
            }
            SumMode::AtMost => 0,
        };
        Ok(Compositions {
            parts,
            total,
            n,
            mode,
            started: false,
            done: false,
        })
    }

    /// Current composition. Valid until the next call to `advance`.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Steps to the next composition.
    ///
    /// Returns `Some(hi)` when every index above `hi` is unchanged, or `None`
    /// once the stream is exhausted. The first call positions the cursor on
    /// the first composition and reports `hi = r - 1`.
    pub fn advance(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.parts.len() - 1);
        }
        let last = self.parts.len() - 1;
        match self.mode {
            SumMode::AtMost => {
                if self.total < self.n {
                    self.parts[0] += 1;
                    self.total += 1;
                    return Some(0);
                }
                let i = self.first_nonzero();
                if i == last {
                    self.done = true;
                    return None;
                }
                self.total = self.total - self.parts[i] + 1;
                self.parts[i] = 0;
                self.parts[i + 1] += 1;
                Some(i + 1)
            }
            SumMode::Exactly => {
                let i = self.first_nonzero();
                if i >= last {
                    self.done = true;
                    return None;
                }
                let v = self.parts[i];
                self.parts[i] = 0;
                self.parts[i + 1] += 1;
                self.parts[0] = v - 1;
                Some(i + 1)
            }
        }
    }

    fn first_nonzero(&self) -> usize {
        // Exactly mode with n = 0 has no nonzero entry: treat as exhausted.
        self.parts
            .iter()
            .position(|&p| p > 0)
            .unwrap_or(self.parts.len() - 1)
    }
}

impl Iterator for Compositions {
    type Item = WeakComposition;

    fn next(&mut self) -> Option<WeakComposition> {
        self.advance()?;
        Some(WeakComposition {
            parts: self.parts.clone(),
            mode: self.mode,
            n: self.n,
        })
    }
}

/// All weak compositions of `n` into `r` parts, in colexicographic order.
pub fn enumerate_weak_compositions(r: usize, n: usize, mode: SumMode) -> Result<Compositions> {
    Compositions::new(r, n, mode)
}

/// Number of compositions the stream yields: `C(n+r-1, r-1)` exactly,
/// `C(n+r, r)` at most.
pub fn composition_count(r: usize, n: usize, mode: SumMode) -> u128 {
    if r == 0 {
        return 0;
    }
    let (top, k) = match mode {
        SumMode::Exactly => (n + r - 1, r - 1),
        SumMode::AtMost => (n + r, r),
    };
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (top as u128 - i) / (i + 1);
    }
    acc
}
