use ncg_core::random;
use ncg_core::scalars::poly::gcd;
use ncg_core::scalars::{parse_field, GaussianRational, Poly, RationalField};
use ncg_core::sheaf::{germ, germ_mul, germs_equal, FiniteTopology, Presheaf, TabAlgebra};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exact comparison by cross multiplication, independent of canonical forms.
fn same(a: &RationalField, b: &RationalField) -> bool {
    a.numerator() * b.denominator() == b.numerator() * a.denominator()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fields_form_a_ring(seed in any::<u64>()) {
        let mut r = rng(seed);
        let [a, b, c] = [0, 1, 2].map(|_| random::field(&mut r, 2, 2, 0.5));
        prop_assert!(same(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
        prop_assert!(same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!(same(&(&a * &b), &(&b * &a)));
        prop_assert!((&a - &a).as_constant() == Some(GaussianRational::from_int(0)));
        if let Some(inv) = a.inv() {
            prop_assert_eq!((&a * &inv).as_constant(), Some(GaussianRational::from_int(1)));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_reduced(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random::field(&mut r, 2, 2, 0.5), random::field(&mut r, 2, 2, 0.5));
        let x = &a * &b;
        prop_assert_eq!(x.canonicalize(), x.clone());
        // reduced: numerator and denominator share no factor
        prop_assert!(gcd(x.numerator(), x.denominator()).is_one());
        // rebuilding from an unreduced pair lands on the same representative
        let k = random::poly(&mut r, 2, 2, 3);
        if !k.is_zero() {
            let rebuilt = RationalField::new(x.numerator() * &k, x.denominator() * &k).unwrap();
            prop_assert_eq!(rebuilt, x);
        }
    }

    #[test]
    fn printing_then_parsing_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random::field(&mut r, 3, 3, 0.5);
        prop_assert_eq!(parse_field(&x.to_string()).unwrap(), x.clone());
        let neg = -&x;
        prop_assert_eq!(parse_field(&neg.to_string()).unwrap(), neg);
    }

    #[test]
    fn gcd_divides_both_and_contains_planted_factor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = r.random_range(1..=3);
        let c = random::poly(&mut r, vars, 2, 3);
        let a = &random::poly(&mut r, vars, 2, 3) * &c;
        let b = &random::poly(&mut r, vars, 2, 3) * &c;
        let g = gcd(&a, &b);
        if a.is_zero() && b.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
            if !c.is_zero() {
                prop_assert!(g.div_exact(&c).is_some(), "{} does not contain {}", g, c);
            }
            prop_assert!(g.leading_coefficient() == GaussianRational::from_int(1));
        }
    }

    #[test]
    fn partial_derivatives_follow_the_quotient_rule_and_stay_reduced(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = &random::field(&mut r, 2, 2, 0.8) * &random::field(&mut r, 2, 2, 0.8);
        for v in 0..2 {
            let (n, d) = (f.numerator(), f.denominator());
            let want_num = &(&n.partial(v) * d) - &(n * &d.partial(v));
            let df = f.partial(v);
            prop_assert!(df.numerator() * &(d * d) == &want_num * df.denominator());
            prop_assert!(gcd(df.numerator(), df.denominator()).is_one());
        }
    }

    #[test]
    fn derivations_satisfy_leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random::base_derivation(&mut r, 2, 2);
        let (p, q) = (random::field(&mut r, 2, 2, 0.3), random::field(&mut r, 2, 2, 0.3));
        prop_assert!(same(&x.apply(&(&p * &q)), &(&(&x.apply(&p) * &q) + &(&p * &x.apply(&q)))));
        // and the bracket acts as the commutator
        let y = random::base_derivation(&mut r, 2, 1);
        let lhs = x.bracket(&y).apply(&p);
        let rhs = &x.apply(&y.apply(&p)) - &y.apply(&x.apply(&p));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn germ_products_do_not_depend_on_representatives(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tops = FiniteTopology::enumerate(3);
        let t = tops[r.random_range(0..tops.len())].clone();
        let f = Presheaf::functions(t.clone(), TabAlgebra::product(2));
        let p = r.random_range(0..3);
        let opens: Vec<u32> = t.neighbourhoods(p).collect();
        let small = t.minimal_neighbourhood(p).unwrap();
        let pick = |r: &mut ChaCha8Rng| opens[r.random_range(0..opens.len())];
        let (u, v) = (pick(&mut r), pick(&mut r));
        let dim = |m: u32| f.algebra(m).unwrap().dim();
        let (a, b) = (random::vector(&mut r, dim(u)), random::vector(&mut r, dim(v)));
        let prod = germ_mul(&f, &germ(&f, p, u, a.clone()).unwrap(), &germ(&f, p, v, b.clone()).unwrap()).unwrap();
        let a2 = f.restrict(u, small, &a).unwrap();
        let b2 = f.restrict(v, small, &b).unwrap();
        let prod2 = germ_mul(&f, &germ(&f, p, small, a2).unwrap(), &germ(&f, p, small, b2).unwrap()).unwrap();
        prop_assert!(germs_equal(&f, &prod, &prod2).unwrap());
    }
}

#[test]
fn gcd_of_products_of_shared_denominators() {
    // the shape that arises when brackets of derivations with distinct
    // rational coefficients are differentiated
    let x = |s: &str| parse_field(s).unwrap().numerator().clone();
    let (d1, d2, d3) = (x("x1^2 + x2^2 + 3"), x("x1^2 + 2"), x("x2^2 + 3"));
    let a = &(&d1.pow(2) * &d2) * &d3.pow(3);
    let b = &(&d1 * &d2.pow(2)) * &(&d3 + &Poly::var(0));
    let want = &d1 * &d2;
    assert_eq!(gcd(&a, &b), want.monic());
}

#[test]
fn partial_cancels_factors_free_of_the_variable() {
    let f = parse_field("(x1*x2 + 1)/x2").unwrap();
    assert_eq!(f.partial(0), RationalField::from_int(1));
    let g = parse_field("x1/(x2^2*(x1 + 1)^2)").unwrap();
    assert_eq!(g.partial(0), parse_field("(1 - x1)/(x2^2*(x1 + 1)^3)").unwrap());
}
