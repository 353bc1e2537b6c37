//! Property tests: field axioms for the coefficient arithmetic, the graded
//! algebra laws for the Grassmann and symbol calculi, and grammar round
//! trips. Seeds are fixed by proptest's deterministic RNG configuration.

use proptest::prelude::*;
use std::collections::BTreeMap;
use superpds::coeff::Coefficient;
use superpds::grassmann::{LambdaElement, OddVar, ParityClass};
use superpds::parse::parse_symbol;
use superpds::poly::Param;
use superpds::psymbols::PSymbol;
use superpds::scalar::Scalar;

const CUTOFF: i64 = -12;

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(p, q, w)| {
        let base = Scalar::from_ratio(p, q);
        let omega = Scalar::from_int(w);
        &base + &(&omega * &Scalar::omega())
    })
}

/// Small polynomials in alpha and h, as coefficients.
fn poly_coeff_strategy() -> impl Strategy<Value = Coefficient> {
    proptest::collection::vec((scalar_strategy(), 0u32..=2, 0u32..=1), 1..=3).prop_map(|terms| {
        let mut acc = Coefficient::zero();
        for (s, ea, eh) in terms {
            let mut term = Coefficient::from_scalar(s);
            for _ in 0..ea {
                term = &term * &Coefficient::alpha();
            }
            for _ in 0..eh {
                term = &term * &Coefficient::h();
            }
            acc = &acc + &term;
        }
        acc
    })
}

fn coeff_strategy() -> impl Strategy<Value = Coefficient> {
    (poly_coeff_strategy(), poly_coeff_strategy()).prop_filter_map(
        "nonzero denominator",
        |(n, d)| {
            if d.is_zero() {
                None
            } else {
                n.checked_div(&d).ok()
            }
        },
    )
}

fn odd_mask_strategy(parity: bool) -> impl Strategy<Value = Vec<OddVar>> {
    proptest::sample::subsequence(
        vec![OddVar::Xi(1), OddVar::Xi(2), OddVar::Eta(1), OddVar::Eta(2)],
        0..=4,
    )
    .prop_filter("fixed parity", move |w| w.len() % 2 == usize::from(parity))
}

/// Homogeneous symbol with bounded exponents (exact, possibly with
/// negative tau powers).
fn symbol_strategy(parity: bool) -> impl Strategy<Value = PSymbol> {
    proptest::collection::vec(
        ((-2i64..=2), (-2i64..=2), odd_mask_strategy(parity), -3i64..=3),
        1..=3,
    )
    .prop_map(|terms| {
        let mut acc = PSymbol::zero();
        for (t, tau, word, c) in terms {
            let m = PSymbol::odd_word(&word);
            acc = acc.add(
                &PSymbol::term(Coefficient::from_int(c), t, tau, Default::default()).mul(&m),
            );
        }
        acc
    })
}

fn any_parity_symbol() -> impl Strategy<Value = (bool, PSymbol)> {
    proptest::bool::ANY.prop_flat_map(|p| symbol_strategy(p).prop_map(move |s| (p, s)))
}

/// Symbols with only nonnegative tau exponents (the exact regime for the
/// deformed product).
fn tau_poly_symbol() -> impl Strategy<Value = PSymbol> {
    proptest::collection::vec(
        ((-2i64..=2), (0i64..=2), odd_mask_strategy(false), -3i64..=3),
        1..=3,
    )
    .prop_map(|terms| {
        let mut acc = PSymbol::zero();
        for (t, tau, word, c) in terms {
            let m = PSymbol::odd_word(&word);
            acc = acc.add(
                &PSymbol::term(Coefficient::from_int(c), t, tau, Default::default()).mul(&m),
            );
        }
        acc
    })
}

fn lambda_strategy() -> impl Strategy<Value = LambdaElement> {
    proptest::collection::vec(
        (
            proptest::sample::subsequence(
                vec![OddVar::Xi(1), OddVar::Xi(2), OddVar::Eta(1), OddVar::Eta(2)],
                0..=4,
            ),
            -3i64..=3,
        ),
        1..=3,
    )
    .prop_map(|terms| {
        let mut acc = LambdaElement::zero();
        for (word, c) in terms {
            let mut e = LambdaElement::scalar(Coefficient::from_int(c));
            for v in word {
                e = e.mul_plain(&LambdaElement::generator(v));
            }
            acc = acc.add(&e);
        }
        acc
    })
}

// ---------------------------------------------------------------------------
// coefficient field axioms
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coeff_addition_commutes(x in coeff_strategy(), y in coeff_strategy()) {
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn coeff_multiplication_commutes(x in coeff_strategy(), y in coeff_strategy()) {
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn coeff_associativity(x in coeff_strategy(), y in coeff_strategy(), z in coeff_strategy()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn coeff_distributivity(x in coeff_strategy(), y in coeff_strategy(), z in coeff_strategy()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn coeff_inverse(x in coeff_strategy()) {
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert!((&x * &inv).is_one());
        }
    }

    #[test]
    fn coeff_normal_form_is_canonical(n in poly_coeff_strategy(), d in poly_coeff_strategy(), k in poly_coeff_strategy()) {
        // scaling numerator and denominator by a common factor cannot
        // change the reduced representative
        prop_assume!(!d.is_zero() && !k.is_zero());
        let plain = n.checked_div(&d).unwrap();
        let scaled = (&n * &k).checked_div(&(&d * &k)).unwrap();
        prop_assert_eq!(plain, scaled);
    }

    #[test]
    fn coeff_evaluate_commutes_with_arithmetic(x in coeff_strategy(), y in coeff_strategy(), a in -3i64..=3) {
        let mut assign = BTreeMap::new();
        assign.insert(Param::Alpha, Scalar::from_int(a));
        let direct = (&x + &y).evaluate(&assign);
        let split = match (x.evaluate(&assign), y.evaluate(&assign)) {
            (Ok(xe), Ok(ye)) => Ok(&xe + &ye),
            _ => Err(()),
        };
        if let (Ok(d), Ok(s)) = (direct, split) {
            prop_assert_eq!(d, s);
        }
    }
}

// ---------------------------------------------------------------------------
// Grassmann laws
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deformed_product_is_associative(x in lambda_strategy(), y in lambda_strategy(), z in lambda_strategy()) {
        prop_assert_eq!(x.mul_h(&y).mul_h(&z), x.mul_h(&y.mul_h(&z)));
    }

    #[test]
    fn left_derivative_super_leibniz(x in lambda_strategy(), y in lambda_strategy()) {
        // restrict to homogeneous left factors
        for v in [OddVar::Xi(1), OddVar::Xi(2), OddVar::Eta(1), OddVar::Eta(2)] {
            let p = match x.parity() {
                ParityClass::Even => false,
                ParityClass::Odd => true,
                ParityClass::Mixed => continue,
            };
            let lhs = x.mul_plain(&y).odd_derivative(v);
            let sign = if p { Coefficient::from_int(-1) } else { Coefficient::one() };
            let rhs = x.odd_derivative(v).mul_plain(&y)
                .add(&x.mul_plain(&y.odd_derivative(v)).scale(&sign));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivatives_anticommute(x in lambda_strategy()) {
        let u = OddVar::Xi(1);
        let v = OddVar::Eta(2);
        prop_assert_eq!(
            x.odd_derivative(u).odd_derivative(v),
            x.odd_derivative(v).odd_derivative(u).neg()
        );
    }
}

// ---------------------------------------------------------------------------
// symbol calculus laws
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poisson_super_skew((pa, a) in any_parity_symbol(), (pb, b) in any_parity_symbol()) {
        let ab = a.poisson_bracket(&b).unwrap();
        let ba = b.poisson_bracket(&a).unwrap();
        let expect = if pa && pb { ba } else { ba.neg() };
        prop_assert!(ab.eq_windowed(&expect).is_ok());
    }

    #[test]
    fn poisson_super_jacobi(
        (pa, a) in any_parity_symbol(),
        (pb, b) in any_parity_symbol(),
        (pc, c) in any_parity_symbol(),
    ) {
        let sign = |p: bool, q: bool| if p && q { Coefficient::from_int(-1) } else { Coefficient::one() };
        let t1 = a.poisson_bracket(&b.poisson_bracket(&c).unwrap()).unwrap().scale(&sign(pa, pc));
        let t2 = b.poisson_bracket(&c.poisson_bracket(&a).unwrap()).unwrap().scale(&sign(pb, pa));
        let t3 = c.poisson_bracket(&a.poisson_bracket(&b).unwrap()).unwrap().scale(&sign(pc, pb));
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn poisson_super_leibniz(
        (pa, a) in any_parity_symbol(),
        (pb, b) in any_parity_symbol(),
        (_, c) in any_parity_symbol(),
    ) {
        // {A, B.C} = {A,B}.C + (-1)^(pA pB) B.{A,C} with the undeformed
        // supercommutative product
        let lhs = a.poisson_bracket(&b.mul(&c)).unwrap();
        let sign = if pa && pb { Coefficient::from_int(-1) } else { Coefficient::one() };
        let rhs = a.poisson_bracket(&b).unwrap().mul(&c)
            .add(&b.mul(&a.poisson_bracket(&c).unwrap()).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn deformed_product_associative_in_exact_regime(
        a in tau_poly_symbol(),
        b in tau_poly_symbol(),
        c in tau_poly_symbol(),
    ) {
        let lhs = a.circ_h(&b, CUTOFF).circ_h(&c, CUTOFF);
        let rhs = a.circ_h(&b.circ_h(&c, CUTOFF), CUTOFF);
        prop_assert!(lhs.is_exact() && rhs.is_exact());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn deformed_product_specializes_to_plain(
        a in tau_poly_symbol(),
        b in tau_poly_symbol(),
    ) {
        prop_assert_eq!(a.circ_h(&b, CUTOFF).at_h_zero(), a.mul(&b));
    }

    #[test]
    fn print_parse_round_trip((_, a) in any_parity_symbol()) {
        let printed = a.to_text();
        let reparsed = parse_symbol(&printed).unwrap();
        prop_assert_eq!(a, reparsed);
    }
}

// ---------------------------------------------------------------------------
// Weyl algebra laws
// ---------------------------------------------------------------------------

fn weyl_strategy() -> impl Strategy<Value = superpds::weyl::WeylElement> {
    proptest::collection::vec(((-3i64..=3), (0u32..=2), -3i64..=3), 1..=3).prop_map(|terms| {
        let mut acc = superpds::weyl::WeylElement::zero();
        for (a, k, c) in terms {
            acc.add_term(a, k, Coefficient::from_int(c));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_product_is_associative(
        x in weyl_strategy(),
        y in weyl_strategy(),
        z in weyl_strategy(),
    ) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }
}
