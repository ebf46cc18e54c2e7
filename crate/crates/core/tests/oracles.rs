mod common;

use common::*;
use symbern_core::bernoulli::gen_bernoulli_poly_by_series;
use symbern_core::{
    enumerate_characters, expansion_sum, gen_bernoulli_number, gen_bernoulli_poly, ordinary_bernoulli, power_sum,
    BernoulliCache, Expansion, Weights,
};

#[test]
fn ordinary_numbers_match_recurrence() {
    let b = bernoulli_recurrence(24);
    for (n, bn) in b.iter().enumerate() {
        assert_eq!(&ordinary_bernoulli(n), bn, "B_{n}");
    }
    assert_eq!(b[1], q(-1, 2));
    assert_eq!(b[4], q(-1, 30));
}

#[test]
fn generalized_numbers_match_period_formula() {
    // the formula needs only d-periodicity, so imprimitive characters are included
    for d in 1..=12 {
        for chi in enumerate_characters(d).unwrap() {
            for n in 0..=12 {
                assert_eq!(gen_bernoulli_number(&chi, n), gen_bernoulli_oracle(&chi, n), "{} n={n}", chi.id());
            }
        }
    }
}

#[test]
fn generalized_polynomials_match_period_formula() {
    let xs = [q(0, 1), q(1, 2), q(-2, 3), q(7, 5), q(11, 1)];
    for d in [1, 3, 4, 5, 7, 8, 9] {
        for chi in enumerate_characters(d).unwrap() {
            for n in 0..=8 {
                for x in &xs {
                    let oracle = gen_bernoulli_poly_oracle(&chi, n, x);
                    assert_eq!(gen_bernoulli_poly(&chi, n, x), oracle, "{} n={n} x={x}", chi.id());
                    assert_eq!(gen_bernoulli_poly_by_series(&chi, n, x).unwrap(), oracle);
                }
            }
        }
    }
}

#[test]
fn power_sums_match_direct_summation() {
    for d in 1..=10 {
        for chi in enumerate_characters(d).unwrap() {
            for k in 0..=6 {
                for n in [0, 1, d - 1, 2 * d + 3] {
                    assert_eq!(power_sum(&chi, k, n), power_sum_direct(&chi, k, n));
                }
            }
        }
    }
}

#[test]
fn expansions_match_direct_transcription() {
    let ys = [q(1, 2), q(2, 3), q(-1, 3)];
    let weights = [[1, 2, 3], [3, 1, 2], [2, 2, 1]];
    for d in [1, 3, 4] {
        for chi in enumerate_characters(d).unwrap() {
            let cache = BernoulliCache::new(chi.clone());
            for label in Expansion::ALL {
                for w in weights {
                    for n in 0..=4 {
                        let fast =
                            expansion_sum(&cache, label, n, Weights::new(w[0], w[1], w[2]).unwrap(), &ys).unwrap();
                        let slow = expansion_oracle(&chi, label.name(), n, w, &ys);
                        assert_eq!(fast, slow, "({label}) {} n={n} w={w:?}", chi.id());
                    }
                }
            }
        }
    }
}
