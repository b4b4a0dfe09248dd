use dedekind::characters::kronecker;
use dedekind::density::{natural_density, Classification};
use dedekind::ffpoly::IntPoly;
use proptest::prelude::*;

proptest! {
    #[test]
    fn kronecker_multiplicative_in_numerator(
        a in -1000i64..1000,
        b in -1000i64..1000,
        n in 1u64..1000,
    ) {
        prop_assert_eq!(
            kronecker(a * b, n).unwrap(),
            kronecker(a, n).unwrap() * kronecker(b, n).unwrap()
        );
    }

    #[test]
    fn kronecker_multiplicative_in_denominator(
        a in -1000i64..1000,
        m in 1u64..1000,
        n in 1u64..1000,
    ) {
        prop_assert_eq!(
            kronecker(a, m * n).unwrap(),
            kronecker(a, m).unwrap() * kronecker(a, n).unwrap()
        );
    }

    #[test]
    fn intpoly_display_parse_roundtrip(coeffs in proptest::collection::vec(-50i64..50, 1..8)) {
        let p = IntPoly::from_i64(&coeffs);
        let shown = p.to_string();
        let back = IntPoly::parse(&shown).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn density_reports_chunk_invariant(
        x in 100u64..5000,
        chunks in 1usize..40,
        modulus in 2u64..20,
    ) {
        let classify = |p: u64| {
            if p % modulus == 0 {
                Classification::Excluded
            } else if p % modulus == 1 {
                Classification::Hit
            } else {
                Classification::Miss
            }
        };
        let a = natural_density("prop", x, 0.3, 0.01, 1, classify);
        let b = natural_density("prop", x, 0.3, 0.01, chunks, classify);
        prop_assert_eq!(a, b);
    }
}
