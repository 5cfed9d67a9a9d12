use proptest::prelude::*;
use twisted_calculus::envelope::u_mul;
use twisted_calculus::rational::int;
use twisted_calculus::{ClassicalForm, ExteriorMonomial, MultiIndex, PowerSeries, StructureConstants, UElement, WeylFormElement};

const DIM: usize = 2;
const TRUNC: u32 = 4;

fn exponent(max: u16) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max, DIM).prop_map(|v| MultiIndex::from_slice(&v))
}

fn series() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec((exponent(3), -3i64..=3), 0..5).prop_map(|terms| {
        PowerSeries::from_terms(DIM, TRUNC, terms.into_iter().map(|(e, c)| (e, int(c))))
    })
}

fn unit_series() -> impl Strategy<Value = PowerSeries> {
    (series(), 1i64..=3).prop_map(|(s, c)| {
        let fixed = PowerSeries::constant(DIM, TRUNC, int(c) - s.constant_term());
        &s + &fixed
    })
}

fn weyl() -> impl Strategy<Value = WeylFormElement> {
    prop::collection::vec((0u64..4, exponent(2), exponent(2), -2i64..=2), 0..4).prop_map(|terms| {
        terms.into_iter().fold(WeylFormElement::zero(DIM, TRUNC), |acc, (mask, x, d, c)| {
            let t = WeylFormElement::term(DIM, TRUNC, ExteriorMonomial::from_mask(mask), x, d, int(c));
            &acc + &t
        })
    })
}

fn classical(max: u16) -> impl Strategy<Value = ClassicalForm> {
    prop::collection::vec((0u64..4, exponent(max), -2i64..=2), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ClassicalForm::zero(DIM), |acc, (mask, x, c)| {
            acc.add(&ClassicalForm::term(DIM, ExteriorMonomial::from_mask(mask), x, int(c)))
        })
    })
}

fn u_element(lie_dim: usize) -> impl Strategy<Value = UElement> {
    prop::collection::vec((prop::collection::vec(0u16..=2, lie_dim), -2i64..=2), 0..3).prop_map(move |terms| {
        terms.into_iter().fold(UElement::zero(lie_dim), |acc, (e, c)| {
            acc.add(&UElement::monomial(MultiIndex::from_slice(&e), int(c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &PowerSeries::one(DIM, TRUNC), a.clone());
    }

    #[test]
    fn series_inverse(a in unit_series()) {
        prop_assert_eq!(&a * &a.invert().unwrap(), PowerSeries::one(DIM, TRUNC));
    }

    #[test]
    fn truncation_is_a_ring_map(a in series(), b in series(), k in 0u32..=TRUNC) {
        prop_assert_eq!((&a * &b).truncate(k), &a.truncate(k) * &b.truncate(k));
    }

    #[test]
    fn dvar_leibniz_below_top_order(a in series(), b in series(), l in 0usize..DIM) {
        let lhs = (&a * &b).dvar(l).unwrap();
        let rhs = &(&a.dvar(l).unwrap() * &b) + &(&a * &b.dvar(l).unwrap());
        prop_assert_eq!(lhs.truncate(TRUNC - 1), rhs.truncate(TRUNC - 1));
    }

    #[test]
    fn weyl_associativity_below_dropped_orders(a in weyl(), b in weyl(), c in weyl()) {
        // terms dropped from ab can come back down by at most deg_x(c)
        let order = TRUNC.saturating_sub(c.x_degree());
        prop_assert_eq!((&(&a * &b) * &c).truncate_order(order), (&a * &(&b * &c)).truncate_order(order));
    }

    #[test]
    fn weyl_canonical_commutator(i in 0usize..DIM, j in 0usize..DIM) {
        let c = WeylFormElement::partial(DIM, TRUNC, i).commutator(&WeylFormElement::x(DIM, TRUNC, j)).unwrap();
        let want = if i == j { WeylFormElement::one(DIM, TRUNC) } else { WeylFormElement::zero(DIM, TRUNC) };
        prop_assert_eq!(c, want);
    }

    #[test]
    fn fock_action_is_a_representation(a in weyl(), b in weyl(), f in classical(2)) {
        let lhs = (&a * &b).apply(&f).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn filtered_product(a in weyl(), b in weyl(), e in -3i64..=3) {
        prop_assert_eq!(a.mul_filtered(&b, e).unwrap(), (&a * &b).filter_excess(e));
    }

    #[test]
    fn classical_d_squares_to_zero_and_is_graded(f in classical(3), g in classical(3)) {
        prop_assert!(f.d().d().is_zero());
        let parity = |w: &ClassicalForm| w.terms().keys().map(|(e, _)| e.degree() % 2).next();
        if let Some(p) = parity(&f) {
            if f.terms().keys().all(|(e, _)| e.degree() % 2 == p) {
                let sign = if p == 0 { int(1) } else { int(-1) };
                let rhs = f.d().mul(&g).add(&f.mul(&g.d()).scale(&sign));
                prop_assert_eq!(f.mul(&g).d(), rhs);
            }
        }
    }

    #[test]
    fn enveloping_product_is_associative(a in u_element(3), b in u_element(3), c in u_element(3)) {
        let lie = StructureConstants::su2();
        prop_assert_eq!(u_mul(&u_mul(&a, &b, &lie), &c, &lie), u_mul(&a, &u_mul(&b, &c, &lie), &lie));
    }

    #[test]
    fn enveloping_product_is_associative_sl2(a in u_element(3), b in u_element(3), c in u_element(3)) {
        let lie = StructureConstants::sl2();
        prop_assert_eq!(u_mul(&u_mul(&a, &b, &lie), &c, &lie), u_mul(&a, &u_mul(&b, &c, &lie), &lie));
    }
}
