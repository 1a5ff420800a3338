//! Property-based invariants for the exact scalar and tensor layers.

use proptest::prelude::*;

use ybsys::ring::{Ring, RingDescriptor, ScalarValue};
use ybsys::tensor::{flip, kron, RingMatrix};

fn test_ring() -> Ring {
    RingDescriptor::poly(&["sigma", "lambda"]).unwrap()
}

// small random polynomials in sigma, lambda with rational coefficients
fn scalar_strategy() -> impl Strategy<Value = ScalarValue> {
    proptest::collection::vec((0u32..3, 0u32..3, -6i64..7, 1i64..5), 0..5).prop_map(|terms| {
        let ring = test_ring();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let lambda = ScalarValue::var(&ring, "lambda").unwrap();
        let mut acc = ScalarValue::zero(&ring);
        for (e1, e2, num, den) in terms {
            let term = ScalarValue::rational(&ring, num, den)
                .mul(&sigma.pow(e1))
                .mul(&lambda.pow(e2));
            acc = acc.add(&term);
        }
        acc
    })
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = RingMatrix> {
    proptest::collection::vec(scalar_strategy(), n * n).prop_map(move |entries| {
        RingMatrix::from_entries(&test_ring(), n, n, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in scalar_strategy(), b in scalar_strategy()) {
        prop_assume!(!b.is_zero());
        let quotient = a.mul(&b).div_exact(&b).unwrap();
        prop_assert_eq!(quotient, a);
    }

    #[test]
    fn print_parse_round_trip(a in scalar_strategy()) {
        let ring = test_ring();
        let text = a.to_string();
        let back = ybsys::parse::parse_scalar(&text, &ring).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn kron_mixed_product(
        a in matrix_strategy(2), b in matrix_strategy(2),
        c in matrix_strategy(2), d in matrix_strategy(2),
    ) {
        let lhs = kron(&a, &b).unwrap().mul(&kron(&c, &d).unwrap()).unwrap();
        let rhs = kron(&a.mul(&c).unwrap(), &b.mul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flip_conjugation_swaps_factors(a in matrix_strategy(2), b in matrix_strategy(2)) {
        let ring = test_ring();
        let p = flip(&ring, 2);
        prop_assert!(p.mul(&p).unwrap().is_identity());
        let ab = kron(&a, &b).unwrap();
        let ba = kron(&b, &a).unwrap();
        prop_assert_eq!(p.mul(&ab).unwrap().mul(&p).unwrap(), ba);
    }
}
