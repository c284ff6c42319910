use num_bigint::BigInt;
use num_rational::BigRational;
use permuto_core::localization::{monomial_pairing, EvaluationPoint};
use permuto_core::monomial::{decompose, ExponentVector};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Random top-degree vectors of length `n`: place `twos` 2s and as many 0s.
fn top_degree(n: usize) -> impl Strategy<Value = ExponentVector> {
    (0..=n / 2)
        .prop_flat_map(move |twos| {
            let mut base = vec![1u8; n];
            base[..twos].fill(2);
            base[twos..2 * twos].fill(0);
            Just(base).prop_shuffle()
        })
        .prop_map(|e| ExponentVector::new(e).unwrap())
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn vector_text_round_trips(v in (1usize..14).prop_flat_map(top_degree)) {
        prop_assert_eq!(v.to_string().parse::<ExponentVector>().unwrap(), v.clone());
        if let Some(d) = decompose(&v).unwrap() {
            prop_assert_eq!(d.expand(), v.entries().to_vec());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pairing_is_point_independent(
        v in (6usize..=7).prop_flat_map(top_degree),
        shift in -50i64..50,
        spread in 1i64..7,
    ) {
        let n = v.len();
        let other: Vec<i64> = (1..=n as i64 + 1).map(|j| shift + spread * j * j + j).collect();
        let a = monomial_pairing(&v, &EvaluationPoint::standard(n)).unwrap();
        let b = monomial_pairing(&v, &EvaluationPoint::from_integers(&other).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
