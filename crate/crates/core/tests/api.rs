use lauricella::{
    chu_vandermonde_pair, eval_2f1, eval_fd_exact, factorial, gauss_sum, multinomial_lhs,
    multinomial_rhs, rising_factorial, verify_identity, Gauss2F1Spec, IdentityCase, LauricellaSpec,
    Rational, SumMode,
};
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn qs(s: &str) -> Vec<Rational> {
    s.split(',').map(q).collect()
}

/// Nested-loop F_D with every term built from scratch.
fn fd_brute_force(n: usize, b: &[Rational], c: &Rational, x: &[Rational]) -> Rational {
    fn go(j: usize, left: usize, acc: Vec<usize>, visit: &mut dyn FnMut(&[usize]), r: usize) {
        if j == r {
            visit(&acc);
            return;
        }
        for m in 0..=left {
            let mut next = acc.clone();
            next.push(m);
            go(j + 1, left - m, next, visit, r);
        }
    }
    let minus_n = -Rational::from(n);
    let mut total = Rational::zero();
    go(
        0,
        n,
        Vec::new(),
        &mut |parts| {
            let s: usize = parts.iter().sum();
            let mut term = rising_factorial(&minus_n, s) / rising_factorial(c, s);
            for ((m, bj), xj) in parts.iter().zip(b).zip(x) {
                term = term * rising_factorial(bj, *m) * xj.pow(*m) / Rational::from(factorial(*m));
            }
            total = &total + term;
        },
        b.len(),
    );
    total
}

#[test]
fn documented_values() {
    assert_eq!(rising_factorial(&q("1/2"), 3), q("15/8"));
    assert_eq!(gauss_sum(3, &q("1/2"), &q("2")).unwrap(), q("35/64"));
    let cv = chu_vandermonde_pair(&q("1"), &q("1"), &q("1"), &q("1"), 2);
    assert_eq!(cv.lhs, q("6"));
    assert_eq!(cv.rhs.unwrap(), q("6"));

    let equal_weights = IdentityCase::new(2, qs("1,1,1"), qs("1,1,1"), None).unwrap();
    assert_eq!(multinomial_rhs(&equal_weights).unwrap(), q("12"));
    let pivoted = IdentityCase::new(1, qs("1,1"), qs("1,2"), Some(2)).unwrap();
    assert_eq!(multinomial_rhs(&pivoted).unwrap(), q("3"));
    assert_eq!(multinomial_lhs(&pivoted).unwrap(), q("3"));
}

#[test]
fn serde_round_trips() {
    let spec = LauricellaSpec::new(4, qs("1/2,-3"), q("7/3"), qs("2,-1/5")).unwrap();
    let text = serde_json::to_string(&spec).unwrap();
    assert_eq!(
        text,
        r#"{"n":4,"b":["1/2","-3"],"c":"7/3","x":["2","-1/5"]}"#
    );
    assert_eq!(serde_json::from_str::<LauricellaSpec>(&text).unwrap(), spec);

    let case = IdentityCase::new(3, qs("1,2"), qs("1/2,1"), None).unwrap();
    let back: IdentityCase = serde_json::from_str(&serde_json::to_string(&case).unwrap()).unwrap();
    assert_eq!(back, case);
    assert_eq!(
        serde_json::to_string(&SumMode::AtMost).unwrap(),
        r#""at_most""#
    );
    assert!(serde_json::from_str::<Rational>(r#""1/0""#).is_err());
}

#[test]
fn report_json_shape() {
    let report =
        verify_identity(&IdentityCase::new(0, qs("1,1"), qs("1,2"), None).unwrap()).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["lhs"], "1");
    assert_eq!(v["rhs"], "1");
    assert_eq!(v["lhs_terms"], 1);
    assert!(v["elapsed_ns"]["lhs"].is_u64());
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, d)| Rational::new(p, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fd_matches_nested_loops(
        n in 0usize..=6,
        pairs in prop::collection::vec((small_rational(), small_rational()), 1..=3),
        c in small_rational(),
    ) {
        let (b, x): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        if let Ok(spec) = LauricellaSpec::new(n, b.clone(), c.clone(), x.clone()) {
            prop_assert_eq!(eval_fd_exact(&spec).unwrap(), fd_brute_force(n, &b, &c, &x));
        }
    }

    #[test]
    fn two_weight_identity_is_the_convolution(
        n in 0usize..=8,
        a in prop::array::uniform2(small_rational()),
        w in prop::array::uniform2(small_rational().prop_filter("nonzero", |w| !w.is_zero())),
    ) {
        let case = IdentityCase::new(n, a.to_vec(), w.to_vec(), None).unwrap();
        let cv = chu_vandermonde_pair(&a[0], &a[1], &w[0], &w[1], n);
        prop_assert_eq!(multinomial_lhs(&case).unwrap(), cv.lhs.clone());
        if let Ok(rhs) = multinomial_rhs(&case) {
            prop_assert_eq!(rhs, cv.lhs);
        }
    }

    #[test]
    fn gauss_sum_is_2f1_at_one(n in 0usize..=12, b in small_rational(), c in small_rational()) {
        if let Ok(spec) = Gauss2F1Spec::new(n, b.clone(), c.clone(), Rational::one()) {
            prop_assert_eq!(eval_2f1(&spec).unwrap(), gauss_sum(n, &b, &c).unwrap());
        }
    }
}
