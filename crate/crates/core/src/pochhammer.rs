//! Rising factorials and the integer coefficients built from them.
//!
//! Every function here computes the direct product form. The shifted
//! forms `(-1)^k (x)_n / (1-x-n)_k` and friends have denominators that vanish
//! at integer arguments, so they are only ever checked against these, never
//! used to compute.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `(x)_n = x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
pub fn rising_factorial(x: &Rational, n: usize) -> Rational {
    // Multiply numerators p + i q as integers and divide by q^n once.
    let p = x.numer();
    let q = x.denom();
    let mut numer = BigInt::one();
    let mut term = p.clone();
    for _ in 0..n {
        numer *= &term;
        term += q;
    }
    Rational::new(numer, num_traits::pow(q.clone(), n))
}

/// `n!`
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n! / (n-k)! = n (n-1) ... (n-k+1)`.
pub fn falling_factorial(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::IndexExceedsDegree { n, k });
    }
    Ok(((n - k + 1) as u64..=n as u64).fold(BigUint::one(), |acc, i| acc * i))
}

/// `n! / (k! (n-k)!)`.
pub fn binomial(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::IndexExceedsDegree { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        // acc = C(n, i) here, so acc * (n - i) is divisible by i + 1.
        acc = acc * (n as u64 - i) / (i + 1);
    }
    Ok(acc)
}

/// `n! / (n_1! ... n_r!)` for parts summing to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigUint> {
    let sum: usize = parts.iter().sum();
    if sum != n {
        return Err(Error::PartsSumMismatch { n, sum });
    }
    let mut remaining = n;
    let mut acc = BigUint::one();
    for &part in parts {
        acc *= binomial(remaining, part)?;
        remaining -= part;
    }
    Ok(acc)
}

/// `(x)_{n-k}`, the rising factorial with its last `k` factors dropped.
pub fn tail_pochhammer(x: &Rational, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexExceedsDegree { n, k });
    }
    Ok(rising_factorial(x, n - k))
}

/// `n! / (n-k)!` as a rational; equals `(-1)^k (-n)_k`.
pub fn neg_n_pochhammer_ratio(n: usize, k: usize) -> Result<Rational> {
    falling_factorial(n, k).map(Rational::from)
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    fn neg(n: usize) -> Rational {
        -Rational::from(n)
    }

    /// Product of x + i built one rational factor at a time.
    fn naive_rising(x: &Rational, n: usize) -> Rational {
        (0..n).map(|i| x + Rational::from(i)).product()
    }

    fn fact(n: usize) -> Rational {
        Rational::from(factorial(n))
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&q("7/3"), 0), Rational::one());
        assert_eq!(rising_factorial(&q("-2"), 4), Rational::zero());
        assert_eq!(rising_factorial(&q("1/2"), 3), q("15/8"));
        assert_eq!(rising_factorial(&q("3"), 4), q("360"));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(binomial(5, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(binomial(6, 2).unwrap(), BigUint::from(15u32));
        assert_eq!(
            binomial(2, 3),
            Err(Error::IndexExceedsDegree { n: 2, k: 3 })
        );
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(4, &[4]).unwrap(), BigUint::from(1u32));
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigUint::from(12u32));
        assert_eq!(multinomial(0, &[]).unwrap(), BigUint::from(1u32));
        assert_eq!(
            multinomial(4, &[2, 1]),
            Err(Error::PartsSumMismatch { n: 4, sum: 3 })
        );
    }

    #[test]
    fn tail_pochhammer_examples() {
        assert_eq!(tail_pochhammer(&q("5/2"), 3, 3).unwrap(), Rational::one());
        assert_eq!(tail_pochhammer(&q("2"), 3, 1).unwrap(), q("6"));
        assert_eq!(tail_pochhammer(&q("1"), 4, 2).unwrap(), q("2"));
        // Shifted form for (2, 3, 1): -(2)_3 / (1-2-3)_1 = -24 / -4.
        assert_eq!(
            -rising_factorial(&q("2"), 3) / rising_factorial(&q("-4"), 1),
            q("6")
        );
        assert!(tail_pochhammer(&q("1"), 1, 2).is_err());
    }

    #[test]
    fn neg_n_ratio_examples() {
        assert_eq!(neg_n_pochhammer_ratio(7, 0).unwrap(), Rational::one());
        assert_eq!(neg_n_pochhammer_ratio(5, 5).unwrap(), q("120"));
        assert_eq!(neg_n_pochhammer_ratio(4, 2).unwrap(), q("12"));
        assert!(neg_n_pochhammer_ratio(4, 5).is_err());
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        for n in 0..=50usize {
            for k in 0..=n {
                let expected = factorial(n) / (factorial(k) * factorial(n - k));
                assert_eq!(binomial(n, k).unwrap(), expected);
            }
        }
    }

    #[test]
    fn negative_degree_identities_exhaustive() {
        for n in 0..=50usize {
            for k in 0..=n {
                let shifted = sign(k) * rising_factorial(&neg(n), k);
                assert_eq!(Rational::from(binomial(n, k).unwrap()) * fact(k), shifted);
                assert_eq!(neg_n_pochhammer_ratio(n, k).unwrap(), shifted);
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..=60, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
    }

    proptest! {
        #[test]
        fn rising_matches_naive(x in small_rational(), n in 0usize..30) {
            prop_assert_eq!(rising_factorial(&x, n), naive_rising(&x, n));
        }

        #[test]
        fn rising_splits(x in small_rational(), m in 0usize..=30, n in 0usize..=30) {
            let shifted = &x + Rational::from(m);
            prop_assert_eq!(
                rising_factorial(&x, m + n),
                rising_factorial(&x, m) * rising_factorial(&shifted, n)
            );
        }

        #[test]
        fn tail_identity(x in small_rational(), n in 0usize..=30, k_frac in 0.0f64..=1.0) {
            let k = ((n as f64) * k_frac) as usize;
            let reflected = Rational::one() - &x - Rational::from(n);
            let denominator = rising_factorial(&reflected, k);
            let tail = tail_pochhammer(&x, n, k).unwrap();
            prop_assert_eq!(&tail * &denominator, sign(k) * rising_factorial(&x, n));
            if !denominator.is_zero() {
                prop_assert_eq!(tail, sign(k) * rising_factorial(&x, n) / denominator);
            }
        }

        #[test]
        fn multinomial_permutation_invariant(mut parts in proptest::collection::vec(0usize..8, 1..6), seed in any::<u64>()) {
            let n: usize = parts.iter().sum();
            let before = multinomial(n, &parts).unwrap();
            // Deterministic shuffle driven by the seed.
            let len = parts.len();
            let mut s = seed;
            for i in (1..len).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                parts.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(multinomial(n, &parts).unwrap(), before);
        }

        #[test]
        fn multinomial_shifted_form(parts in proptest::collection::vec(0usize..8, 1..6)) {
            let n: usize = parts.iter().sum();
            let (head, _) = parts.split_at(parts.len() - 1);
            let s: usize = head.iter().sum();
            let head_factorials: Rational = head.iter().map(|&p| fact(p)).product();
            let shifted = sign(s) * rising_factorial(&neg(n), s) / head_factorials;
            prop_assert_eq!(Rational::from(multinomial(n, &parts).unwrap()), shifted);
        }
    }
}
