use proptest::prelude::*;

use siegel_kr::hecke::theta_from_decomposition;
use siegel_kr::{
    central_truncate, omega_generator, s_delta_truncate, simple_reflection, t_inv, t_mul, theta,
    AffineWeylElement, CentralMode, HeckeElement, LaurentPolynomial, SDeltaMode, SimilitudeCoweight,
    Weight, WeightModule,
};

const G: usize = 2;

fn element(g: usize) -> impl Strategy<Value = AffineWeylElement> {
    (prop::collection::vec(0..=g, 0..7), -2i64..=2).prop_map(move |(word, c)| {
        let tau = omega_generator(g);
        let mut x = AffineWeylElement::identity(g);
        for _ in 0..c.unsigned_abs() {
            x = if c > 0 { &x * &tau } else { &x * &tau.inverse() };
        }
        word.into_iter().fold(x, |acc, i| &simple_reflection(g, i) * &acc)
    })
}

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-4i32..=4, -3i64..=3), 0..4).prop_map(LaurentPolynomial::from_terms)
}

fn hecke(g: usize) -> impl Strategy<Value = HeckeElement> {
    prop::collection::vec((element(g), laurent()), 1..3).prop_map(move |terms| {
        let mut h = HeckeElement::zero(g);
        for (w, c) in terms {
            h.add_term(w, c);
        }
        h
    })
}

fn module() -> impl Strategy<Value = WeightModule> {
    prop::collection::vec((0i64..3, prop::collection::vec(-3i64..=3, G), -2i64..=2, 1u64..3), 0..10).prop_map(
        |entries| {
            let mut m = WeightModule::empty(G);
            for (n, a, b, mult) in entries {
                m.insert(n, Weight::new(a, b), mult);
            }
            m
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_form_round_trips(x in element(G)) {
        prop_assert_eq!(AffineWeylElement::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn length_is_subadditive(x in element(G), y in element(G)) {
        prop_assert!((&x * &y).length() <= x.length() + y.length());
        prop_assert_eq!(x.inverse().length(), x.length());
    }

    #[test]
    fn bruhat_is_compatible_with_length(x in element(G), i in 0..=G) {
        let y = &simple_reflection(G, i) * &x;
        let (lo, hi) = if y.length() > x.length() { (&x, &y) } else { (&y, &x) };
        prop_assert!(lo.bruhat_leq(hi));
        prop_assert!(!hi.bruhat_leq(lo));
    }

    #[test]
    fn descents_lower_length(x in element(G)) {
        for i in x.left_descents() {
            prop_assert_eq!(x.left_mul_simple(i).length() + 1, x.length());
        }
        for i in x.right_descents() {
            prop_assert_eq!(x.right_mul_simple(i).length() + 1, x.length());
        }
    }

    #[test]
    fn hecke_multiplication_is_associative(a in hecke(G), b in hecke(G), c in hecke(G)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn basis_products_add_when_lengths_add(x in element(G), y in element(G)) {
        let xy = &x * &y;
        if xy.length() == x.length() + y.length() {
            prop_assert_eq!(t_mul(&x, &HeckeElement::basis(&y)), HeckeElement::basis(&xy));
        }
    }

    #[test]
    fn inverses_are_inverse(x in element(G)) {
        prop_assert_eq!(t_mul(&x, &t_inv(&x)), HeckeElement::one(G));
    }

    #[test]
    fn bar_is_an_involutive_ring_map(a in hecke(G), b in hecke(G)) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn bernstein_elements_commute(
        l in prop::collection::vec(-2i64..=2, G),
        m in prop::collection::vec(-2i64..=2, G),
    ) {
        let a = theta(&SimilitudeCoweight::from_half(&l, 0));
        let b = theta(&SimilitudeCoweight::from_half(&m, 1));
        prop_assert!(a.commutator(&b).is_zero());
    }

    #[test]
    fn central_truncations_split(m in module(), a in -4i64..=4) {
        let lo = central_truncate(&m, a, CentralMode::AtMost);
        let hi = central_truncate(&m, a, CentralMode::Above);
        prop_assert_eq!(lo.direct_sum(&hi), m.clone());
        prop_assert_eq!(lo.total_dimension() + hi.total_dimension(), m.total_dimension());
        prop_assert!(central_truncate(&hi, a, CentralMode::AtMost).is_empty());
    }

    #[test]
    fn s_delta_truncations_commute(m in module(), a in -4i64..=4, b in -4i64..=4, d1 in 1usize..=G, d2 in 1usize..=G) {
        let x = s_delta_truncate(&s_delta_truncate(&m, d1, a, SDeltaMode::Below).unwrap(), d2, b, SDeltaMode::AtLeast).unwrap();
        let y = s_delta_truncate(&s_delta_truncate(&m, d2, b, SDeltaMode::AtLeast).unwrap(), d1, a, SDeltaMode::Below).unwrap();
        prop_assert_eq!(x, y);
        let below = s_delta_truncate(&m, d1, a, SDeltaMode::Below).unwrap();
        prop_assert_eq!(s_delta_truncate(&below, d1, a, SDeltaMode::Below).unwrap(), below);
    }

    #[test]
    fn weights_parse_back(a in prop::collection::vec(-5i64..=5, 1..4), b in -5i64..=5) {
        let w = Weight::new(a, b);
        prop_assert_eq!(w.to_string().parse::<Weight>().unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bernstein_independent_of_decomposition(
        l in prop::collection::vec(-2i64..=2, G),
        shift in 3i64..=4,
    ) {
        let lambda = SimilitudeCoweight::from_half(&l, 1);
        let eta = SimilitudeCoweight::regular_dominant(G).scale(shift);
        prop_assume!(lambda.add(&eta).is_dominant());
        prop_assert_eq!(theta_from_decomposition(&lambda.add(&eta), &eta).unwrap(), theta(&lambda));
    }
}

#[test]
fn s_delta_rejects_bad_delta() {
    let m = WeightModule::empty(G);
    assert!(s_delta_truncate(&m, 0, 0, SDeltaMode::Below).is_err());
    assert!(s_delta_truncate(&m, G + 1, 0, SDeltaMode::Below).is_err());
}
