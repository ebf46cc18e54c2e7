mod common;

use common::*;
use proptest::prelude::*;
use symbern_core::cyclotomic::euler_phi;
use symbern_core::identities::PERMUTATIONS;
use symbern_core::{
    enumerate_characters, gen_bernoulli_poly, lambda_series, lambda_series_from_integrals, zeta, CycloElement,
    DirichletChar, LambdaSpec, Rational, TruncatedSeries, Weights,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn element(m: u64) -> impl Strategy<Value = CycloElement> {
    prop::collection::vec(small_rational(), m as usize).prop_map(move |c| CycloElement::from_coeffs(m, c).unwrap())
}

fn three_elements() -> impl Strategy<Value = (CycloElement, CycloElement, CycloElement)> {
    (1u64..=12).prop_flat_map(|m| (element(m), element(m), element(m)))
}

fn series(field: u64, order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(element(field), order).prop_map(|c| TruncatedSeries::from_coeffs(c).unwrap())
}

fn three_series() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    prop::sample::select(vec![1u64, 3, 4, 5]).prop_flat_map(|m| (series(m, 12), series(m, 12), series(m, 12)))
}

fn character() -> impl Strategy<Value = DirichletChar> {
    (1u64..=12).prop_flat_map(|d| {
        let chars = enumerate_characters(d).unwrap();
        prop::sample::select(chars)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws((a, b, c) in three_elements()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn lift_is_a_ring_homomorphism((a, b, _) in three_elements(), k in 1u64..=4) {
        let m2 = a.order() * k;
        let lift = |x: &CycloElement| x.lift_to_order(m2).unwrap();
        prop_assert_eq!(lift(&(&a * &b)), &lift(&a) * &lift(&b));
        prop_assert_eq!(lift(&(&a + &b)), &lift(&a) + &lift(&b));
    }

    #[test]
    fn series_ring_laws((a, b, c) in three_series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn exp_is_a_homomorphism(r in small_rational(), s in small_rational()) {
        let e = |x: &Rational| TruncatedSeries::exp_rational(1, x, 12);
        prop_assert_eq!(&e(&r) * &e(&s), e(&(&r + &s)));
    }

    #[test]
    fn invert_is_two_sided(a in series(4, 10), c in small_rational()) {
        prop_assume!(c != Rational::default());
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = CycloElement::from_rational(4, c);
        let a = TruncatedSeries::from_coeffs(coeffs).unwrap();
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, TruncatedSeries::one(4, a.order()));
        prop_assert_eq!(inv.invert().unwrap(), a);
    }

    #[test]
    fn polynomial_routes_agree(chi in character(), n in 0usize..=10, x in small_rational()) {
        prop_assert_eq!(gen_bernoulli_poly(&chi, n, &x), gen_bernoulli_poly_oracle(&chi, n, &x));
    }

    #[test]
    fn lambda_is_symmetric(chi in character(), w in prop::array::uniform3(1u64..=4),
                           ys in prop::array::uniform3(small_rational())) {
        let w = Weights::new(w[0], w[1], w[2]).unwrap();
        for spec in LambdaSpec::all(w, &ys) {
            let base = lambda_series(&spec, &chi, 7);
            prop_assert_eq!(&lambda_series_from_integrals(&spec, &chi, 7), &base);
            for p in PERMUTATIONS {
                prop_assert_eq!(&lambda_series(&spec.with_weights(w.permuted(p)), &chi, 7), &base);
            }
        }
    }
}

#[test]
fn zeta_powers_multiply() {
    for m in 1..=12u64 {
        for k in 0..m as i64 {
            for j in 0..m as i64 {
                assert_eq!(&zeta(m, k).unwrap() * &zeta(m, j).unwrap(), zeta(m, k + j).unwrap());
            }
        }
    }
}

#[test]
fn roots_of_unity_sum() {
    for m in 1..=12u64 {
        let mut s = CycloElement::zero(m);
        for k in 0..m as i64 {
            s += &zeta(m, k).unwrap();
        }
        if m == 1 {
            assert!(s.is_one());
        } else {
            assert!(s.is_zero(), "m = {m}");
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn character_group_laws() {
    for d in 1..=24u64 {
        let chars = enumerate_characters(d).unwrap();
        assert_eq!(chars.len() as u64, euler_phi(d), "d = {d}");
        let units: Vec<i64> = (0..d).filter(|&a| gcd(a, d) == 1).map(|a| a as i64).collect();
        for chi in &chars {
            for &a in &units {
                for &b in &units {
                    assert_eq!(chi.value(a) * chi.value(b), *chi.value(a * b), "{} a={a} b={b}", chi.id());
                }
            }
            let mut total = CycloElement::zero(chi.order());
            for a in 0..d as i64 {
                total += chi.value(a);
            }
            if chi.is_trivial() {
                assert_eq!(total, CycloElement::from_integer(1, units.len() as i64));
            } else {
                assert!(total.is_zero(), "{}", chi.id());
            }
        }
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                let lift = |c: &DirichletChar| -> Vec<CycloElement> {
                    c.values().iter().map(|v| v.lift_to_order(euler_phi(d)).unwrap()).collect()
                };
                assert_ne!(lift(a), lift(b), "{} vs {}", a.id(), b.id());
            }
        }
    }
}

#[test]
fn conductor_induces_character() {
    for d in 1..=24u64 {
        for chi in enumerate_characters(d).unwrap() {
            let f = chi.conductor();
            assert_eq!(d % f, 0);
            let primitive = enumerate_characters(f).unwrap().into_iter().filter(|p| p.is_primitive()).find(|p| {
                (0..d as i64).filter(|&a| gcd(a as u64, d) == 1).all(|a| {
                    let m = p.order() * chi.order();
                    p.value(a).lift_to_order(m).unwrap() == chi.value(a).lift_to_order(m).unwrap()
                })
            });
            assert!(primitive.is_some(), "{} has no inducing character mod {f}", chi.id());
        }
    }
}
