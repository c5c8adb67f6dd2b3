//! Property-based checks of the algebraic invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use catsl2::multipoly::MultiPoly;
use catsl2::qscalar::{LaurentPoly, RationalQ};
use catsl2::symfunc::{Partition, SymFunc};

fn laurent_strategy(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-6i64..=6), (-5i64..=5)), 1..=max_terms)
        .prop_map(|terms| LaurentPoly::from_int_terms(&terms))
}

fn nonzero_laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent_strategy(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn rational_strategy() -> impl Strategy<Value = RationalQ> {
    (laurent_strategy(4), nonzero_laurent(3))
        .prop_map(|(num, den)| RationalQ::new(num, den).unwrap())
}

fn symfunc_strategy() -> impl Strategy<Value = SymFunc> {
    prop::collection::vec(
        (prop::collection::vec(1u32..=4, 0..=3), -4i64..=4),
        1..=5,
    )
    .prop_map(|terms| {
        let mut f = SymFunc::zero();
        for (parts, c) in terms {
            f.add_term(
                Partition::new(parts),
                BigRational::from_integer(BigInt::from(c)),
            );
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rational_field_axioms(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
        prop_assert!(a.add(&b).rat_eq(&b.add(&a)));
        prop_assert!(a.mul(&b).rat_eq(&b.mul(&a)));
        prop_assert!(a.add(&b).add(&c).rat_eq(&a.add(&b.add(&c))));
        prop_assert!(a.mul(&b).mul(&c).rat_eq(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).rat_eq(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            let inv = RationalQ::one().div(&a).unwrap();
            prop_assert!(a.mul(&inv).rat_eq(&RationalQ::one()));
        }
    }

    #[test]
    fn rat_eq_is_an_equivalence(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
        prop_assert!(a.rat_eq(&a));
        prop_assert_eq!(a.rat_eq(&b), b.rat_eq(&a));
        if a.rat_eq(&b) && b.rat_eq(&c) {
            prop_assert!(a.rat_eq(&c));
        }
        // Canonical forms make rat_eq structural.
        if a.rat_eq(&b) {
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn series_expansion_is_multiplicative(x in rational_strategy(), y in rational_strategy()) {
        let order = 10;
        let sx = x.series_expand(order).unwrap();
        let sy = y.series_expand(order).unwrap();
        let sxy = x.mul(&y).series_expand(order).unwrap();
        let prod = sx.mul(&sy);
        let cut = prod.truncation_order().min(order);
        prop_assert_eq!(
            sxy.truncated(cut).to_laurent(),
            prod.truncated(cut).to_laurent()
        );
    }

    #[test]
    fn laurent_ring_axioms(a in laurent_strategy(5), b in laurent_strategy(5), c in laurent_strategy(5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // Exact division inverts multiplication.
        if !b.is_zero() {
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a.clone()));
        }
        // The bar involution is multiplicative and involutive.
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a.clone());
    }

    #[test]
    fn evaluation_in_vars_is_multiplicative(f in symfunc_strategy(), g in symfunc_strategy(), a in 1usize..=4) {
        let lhs = (&f * &g).evaluate_in_vars(a);
        let rhs = &f.evaluate_in_vars(a) * &g.evaluate_in_vars(a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_lands_in_symmetric_polynomials(f in symfunc_strategy(), a in 2usize..=4) {
        let p = f.evaluate_in_vars(a);
        for i in 1..a {
            prop_assert_eq!(p.swap_vars(i), p.clone());
        }
    }

    #[test]
    fn symfunc_ring_axioms(f in symfunc_strategy(), g in symfunc_strategy(), h in symfunc_strategy()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &SymFunc::one(), f.clone());
    }
}

#[test]
fn multipoly_smoke() {
    // Anchor: substitution respects products in a small concrete case.
    let x1 = MultiPoly::var(2, 1);
    let x2 = MultiPoly::var(2, 2);
    let f = &x1 + &x2;
    let subs = [&x1 * &x1, x2.clone()];
    let lhs = (&f * &f).substitute(&subs, 2);
    let rhs = {
        let s = f.substitute(&subs, 2);
        &s * &s
    };
    assert_eq!(lhs, rhs);
}
