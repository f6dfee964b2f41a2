use fracmod::modcoeffs::SequenceName;
use fracmod::regularity::{predict_exponents, IrrationalTag, ProbePoint};
use fracmod::report::parse_rational;
use fracmod::Rational64;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = ProbePoint> {
    prop_oneof![
        (-50i64..50, 1i64..60).prop_map(|(p, q)| ProbePoint::rational(p, q).unwrap()),
        (0usize..4).prop_map(|i| ProbePoint::Irrational(IrrationalTag::ALL[i])),
    ]
}

proptest! {
    #[test]
    fn predicted_triples_are_ordered(which in 0usize..7, num in 1i64..200, den in 1i64..9, p in point()) {
        let seq = SequenceName::ALL[which].generate(32).unwrap();
        if let Ok(pred) = predict_exponents(&seq, Rational64::new(num, den), &p) {
            prop_assert!(pred.is_ordered(), "{pred:?}");
        }
    }

    #[test]
    fn probe_points_round_trip(p in point()) {
        let back: ProbePoint = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn rationals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = Rational64::new(num, den);
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn rational_points_are_reduced(p in -500i64..500, q in prop_oneof![-400i64..-1, 1i64..400]) {
        match ProbePoint::rational(p, q).unwrap() {
            ProbePoint::Rational(a, b) => {
                prop_assert!(b > 0);
                prop_assert_eq!(Rational64::new(a, b), Rational64::new(p, q));
                prop_assert_eq!(num_gcd(a, b), 1);
            }
            other => prop_assert!(false, "{other:?}"),
        }
    }
}

fn num_gcd(mut a: i64, mut b: i64) -> i64 {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
