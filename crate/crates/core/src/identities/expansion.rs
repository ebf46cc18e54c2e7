//! Finite-sum expansions of the quotient-series coefficients.
//!
//! Each [`Expansion`] is one closed formula for `n!` times the `t^n`
//! coefficient of a quotient series, written in terms of `B_{k,chi}(x)` and
//! `S_k(wd - 1, chi)`:
//!
//! | label | series        | shape                                      |
//! |-------|---------------|--------------------------------------------|
//! | `s`   | `L23^0`       | multinomial sum of `B B B`                 |
//! | `u`   | `L23^1`       | multinomial sum of `B B S`                 |
//! | `v`   | `L23^1`       | binomial sum of `B` times a character sum  |
//! | `x`   | `L23^2`       | multinomial sum of `B S S`                 |
//! | `z`   | `L23^2`       | binomial sum, character sum times `S`      |
//! | `a1`  | `L23^2`       | double character sum of `B_n`              |
//! | `b1`  | `L23^3`       | multinomial sum of `S S S`                 |
//! | `c1`  | `L12^0`       | multinomial sum of `B B B`, single `y`     |
//! | `d1`  | `L12^1`       | multinomial sum of `S S S`                 |
//!
//! Negative weight exponents (e.g. `w3^{k+l-1}` at `k = l = 0`) are exact
//! rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::lambda::{LambdaFamily, LambdaSpec};
use super::{int, multinomial, weight_pow, Weights};
use crate::bernoulli::{binomial_row, BernoulliCache};
use crate::cyclotomic::{CycloElement, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expansion {
    S,
    U,
    V,
    X,
    Z,
    A1,
    B1,
    C1,
    D1,
}

impl Expansion {
    pub const ALL: [Expansion; 9] = [
        Expansion::S,
        Expansion::U,
        Expansion::V,
        Expansion::X,
        Expansion::Z,
        Expansion::A1,
        Expansion::B1,
        Expansion::C1,
        Expansion::D1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Expansion::S => "s",
            Expansion::U => "u",
            Expansion::V => "v",
            Expansion::X => "x",
            Expansion::Z => "z",
            Expansion::A1 => "a1",
            Expansion::B1 => "b1",
            Expansion::C1 => "c1",
            Expansion::D1 => "d1",
        }
    }

    /// Number of `y` arguments read.
    pub fn y_arity(self) -> usize {
        match self {
            Expansion::S => 3,
            Expansion::U | Expansion::V => 2,
            Expansion::X | Expansion::Z | Expansion::A1 | Expansion::C1 => 1,
            Expansion::B1 | Expansion::D1 => 0,
        }
    }

    /// The quotient family member whose coefficients this expands.
    pub fn family(self) -> (LambdaFamily, u8) {
        match self {
            Expansion::S => (LambdaFamily::L23, 0),
            Expansion::U | Expansion::V => (LambdaFamily::L23, 1),
            Expansion::X | Expansion::Z | Expansion::A1 => (LambdaFamily::L23, 2),
            Expansion::B1 => (LambdaFamily::L23, 3),
            Expansion::C1 => (LambdaFamily::L12, 0),
            Expansion::D1 => (LambdaFamily::L12, 1),
        }
    }

    pub fn lambda_spec(self, weights: Weights, ys: &[Rational]) -> Result<LambdaSpec> {
        let (family, index) = self.family();
        LambdaSpec::with_prefix(family, index, weights, ys)
    }

    /// Whether the expansion is a sum over `k + l + m = n`.
    pub fn is_triple_sum(self) -> bool {
        matches!(self, Expansion::S | Expansion::U | Expansion::X | Expansion::B1 | Expansion::C1 | Expansion::D1)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Expansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expansion> {
        let key = s.trim().trim_matches(|c| c == '(' || c == ')').to_ascii_lowercase();
        Expansion::ALL
            .into_iter()
            .find(|e| e.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown expansion label {s:?}")))
    }
}

/// Deliberate modifications of an expansion, used for mutation testing and
/// for evaluating alternative variants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Tweak {
    /// added to the exponent of the first weight power in the summand
    pub exponent_delta: i64,
    /// `v` only: divide the character-sum shift by the first weight instead
    /// of the third
    pub shift_over_first: bool,
}

enum Factor {
    Bern(Rational),
    PowerSum(u64),
}

/// Summand data of a multinomial expansion: three factor sequences and the
/// weight exponents as `[coef_k, coef_l, coef_m, constant]` per weight.
struct TripleForm {
    factors: [Factor; 3],
    exponents: [[i64; 4]; 3],
}

fn triple_form(label: Expansion, w: [u64; 3], ys: &[Rational]) -> Option<TripleForm> {
    let [w1, w2, w3] = w;
    let bern = |wi: u64, y: &Rational| Factor::Bern(int(wi) * y);
    use Factor::PowerSum as Ps;
    let form = match label {
        Expansion::S => TripleForm {
            factors: [bern(w1, &ys[0]), bern(w2, &ys[1]), bern(w3, &ys[2])],
            exponents: [[0, 1, 1, 0], [1, 0, 1, 0], [1, 1, 0, 0]],
        },
        Expansion::U => TripleForm {
            factors: [bern(w1, &ys[0]), bern(w2, &ys[1]), Ps(w3)],
            exponents: [[0, 1, 1, 0], [1, 0, 1, 0], [1, 1, 0, -1]],
        },
        Expansion::X => TripleForm {
            factors: [bern(w1, &ys[0]), Ps(w2), Ps(w3)],
            exponents: [[0, 1, 1, 0], [1, 0, 1, -1], [1, 1, 0, -1]],
        },
        Expansion::B1 => {
            TripleForm { factors: [Ps(w1), Ps(w2), Ps(w3)], exponents: [[0, 1, 1, -1], [1, 0, 1, -1], [1, 1, 0, -1]] }
        }
        Expansion::C1 => TripleForm {
            factors: [bern(w2, &ys[0]), bern(w3, &ys[0]), bern(w1, &ys[0])],
            exponents: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
        },
        Expansion::D1 => {
            TripleForm { factors: [Ps(w2), Ps(w3), Ps(w1)], exponents: [[1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]] }
        }
        Expansion::V | Expansion::Z | Expansion::A1 => return None,
    };
    Some(form)
}

fn factor_values(cache: &BernoulliCache, factor: &Factor, n: usize) -> Vec<CycloElement> {
    match factor {
        Factor::Bern(x) => cache.poly_values(n, x),
        Factor::PowerSum(w) => {
            let upper = w * cache.character().modulus() - 1;
            (0..=n as u32).map(|k| cache.power_sum(k, upper)).collect()
        }
    }
}

/// Summands of a multinomial expansion, keyed by `(k, l, m)`.
pub(crate) fn triple_terms(
    cache: &BernoulliCache,
    label: Expansion,
    n: usize,
    weights: Weights,
    ys: &[Rational],
    tweak: Tweak,
) -> Option<BTreeMap<[usize; 3], CycloElement>> {
    let w = weights.get();
    let mut form = triple_form(label, w, ys)?;
    form.exponents[0][3] += tweak.exponent_delta;
    let values: Vec<Vec<CycloElement>> = form.factors.iter().map(|f| factor_values(cache, f, n)).collect();
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for l in 0..=n - k {
            let m = n - k - l;
            let idx = [k as i64, l as i64, m as i64];
            let mut coef = Rational::from_integer(multinomial(n, k, l, m).expect("k + l + m = n"));
            for (wi, e) in w.iter().zip(&form.exponents) {
                let exp = e[0] * idx[0] + e[1] * idx[1] + e[2] * idx[2] + e[3];
                coef *= weight_pow(*wi, exp);
            }
            let (a, b, c) = (&values[0][k], &values[1][l], &values[2][m]);
            let term = if a.is_zero() || b.is_zero() || c.is_zero() {
                CycloElement::zero(cache.field())
            } else {
                (&(a * b) * c).scale(&coef)
            };
            out.insert([k, l, m], term);
        }
    }
    Some(out)
}

/// Power moments of shifted points grouped by character value:
/// for each `zeta^e`, `sum x^i` over the points whose weight is `zeta^e`.
struct ClassMoments {
    classes: BTreeMap<u64, (CycloElement, Vec<Rational>)>,
}

impl ClassMoments {
    fn new() -> Self {
        ClassMoments { classes: BTreeMap::new() }
    }

    fn add_point(&mut self, power: u64, value: &CycloElement, x: &Rational, n: usize) {
        let entry = self.classes.entry(power).or_insert_with(|| (value.clone(), vec![Rational::default(); n + 1]));
        let mut p = Rational::one();
        for (i, slot) in entry.1.iter_mut().enumerate() {
            if i > 0 {
                p *= x;
            }
            *slot += &p;
        }
    }

    /// `sum_points weight * B_{j,chi}(x)` for `j = 0..=n`, using
    /// `B_j(x) = sum_k C(j,k) B_k x^{j-k}`.
    fn bernoulli_sums(&self, numbers: &[CycloElement], n: usize, field: u64) -> Vec<CycloElement> {
        (0..=n)
            .map(|j| {
                let binom = binomial_row(j);
                let mut total = CycloElement::zero(field);
                for (value, moments) in self.classes.values() {
                    let mut inner = CycloElement::zero(field);
                    for k in 0..=j {
                        inner.add_scaled(&numbers[k], &(&moments[j - k] * &binom[k]));
                    }
                    total += &(&inner * value);
                }
                total
            })
            .collect()
    }
}

/// `sum_{a < count} chi(a) B_{j,chi}(base + step * a)` for `j = 0..=n`.
fn character_shifted_sums(
    cache: &BernoulliCache,
    n: usize,
    count: u64,
    base: &Rational,
    step: &Rational,
) -> Vec<CycloElement> {
    let chi = cache.character();
    let mut moments = ClassMoments::new();
    for a in 0..count {
        if let Some(p) = chi.value_power(a as i64) {
            let x = base + step * int(a);
            moments.add_point(p, chi.value(a as i64), &x, n);
        }
    }
    moments.bernoulli_sums(&cache.numbers(n), n, cache.field())
}

fn v_sum(cache: &BernoulliCache, n: usize, w: [u64; 3], ys: &[Rational], tweak: Tweak) -> CycloElement {
    let [w1, w2, w3] = w;
    let d = cache.character().modulus();
    let den = if tweak.shift_over_first { w1 } else { w3 };
    let first = cache.poly_values(n, &(int(w1) * &ys[0]));
    let inner = character_shifted_sums(cache, n, w3 * d, &(int(w2) * &ys[1]), &(int(w2) / int(den)));
    let binom = binomial_row(n);
    let mut acc = CycloElement::zero(cache.field());
    for k in 0..=n {
        let coef = Rational::from_integer(binom[k].clone()) * weight_pow(w1, (n - k) as i64) * weight_pow(w2, k as i64);
        acc.add_scaled(&(&first[k] * &inner[n - k]), &coef);
    }
    acc.scale(&weight_pow(w3, n as i64 - 1 + tweak.exponent_delta))
}

fn z_sum(cache: &BernoulliCache, n: usize, w: [u64; 3], ys: &[Rational], tweak: Tweak) -> CycloElement {
    let [w1, w2, w3] = w;
    let d = cache.character().modulus();
    let inner = character_shifted_sums(cache, n, w2 * d, &(int(w1) * &ys[0]), &(int(w1) / int(w2)));
    let binom = binomial_row(n);
    let mut acc = CycloElement::zero(cache.field());
    for k in 0..=n {
        let s = cache.power_sum((n - k) as u32, w3 * d - 1);
        let coef =
            Rational::from_integer(binom[k].clone()) * weight_pow(w1, (n - k) as i64) * weight_pow(w3, k as i64 - 1);
        acc.add_scaled(&(&inner[k] * &s), &coef);
    }
    acc.scale(&weight_pow(w2, n as i64 - 1 + tweak.exponent_delta))
}

fn a1_sum(cache: &BernoulliCache, n: usize, w: [u64; 3], ys: &[Rational], tweak: Tweak) -> CycloElement {
    let [w1, w2, w3] = w;
    let chi = cache.character();
    let d = chi.modulus();
    let r = chi.order();
    let base = int(w1) * &ys[0];
    let step_a = int(w1) / int(w2);
    let step_b = int(w1) / int(w3);
    let mut moments = ClassMoments::new();
    for a in 0..w2 * d {
        let Some(pa) = chi.value_power(a as i64) else { continue };
        let xa = &base + &step_a * int(a);
        for b in 0..w3 * d {
            let Some(pb) = chi.value_power(b as i64) else { continue };
            // chi(ab) = chi(a) chi(b)
            let p = (pa + pb) % r;
            let value = chi.value((a * b) as i64);
            moments.add_point(p, value, &(&xa + &step_b * int(b)), n);
        }
    }
    let sums = moments.bernoulli_sums(&cache.numbers(n), n, cache.field());
    sums[n].scale(&(weight_pow(w2, n as i64 - 1 + tweak.exponent_delta) * weight_pow(w3, n as i64 - 1)))
}

fn check_ys(label: Expansion, ys: &[Rational]) -> Result<()> {
    if ys.len() < label.y_arity() {
        return Err(Error::InvalidArgument(format!(
            "expansion ({label}) needs {} y arguments, got {}",
            label.y_arity(),
            ys.len()
        )));
    }
    Ok(())
}

pub(crate) fn evaluate(
    cache: &BernoulliCache,
    label: Expansion,
    n: usize,
    weights: Weights,
    ys: &[Rational],
    tweak: Tweak,
) -> Result<CycloElement> {
    check_ys(label, ys)?;
    let w = weights.get();
    Ok(match label {
        Expansion::V => v_sum(cache, n, w, ys, tweak),
        Expansion::Z => z_sum(cache, n, w, ys, tweak),
        Expansion::A1 => a1_sum(cache, n, w, ys, tweak),
        _ => {
            let terms = triple_terms(cache, label, n, weights, ys, tweak).expect("multinomial expansion");
            let mut acc = CycloElement::zero(cache.field());
            for t in terms.values() {
                acc += t;
            }
            acc
        }
    })
}

/// Exact value of an expansion at degree `n`. `ys` supplies `y1, y2, y3` in
/// order; only the leading [`Expansion::y_arity`] entries are read.
pub fn expansion_sum(
    cache: &BernoulliCache,
    label: Expansion,
    n: usize,
    weights: Weights,
    ys: &[Rational],
) -> Result<CycloElement> {
    evaluate(cache, label, n, weights, ys, Tweak::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{gen_bernoulli_poly, power_sum};
    use crate::characters::enumerate_characters;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn w(a: u64, b: u64, c: u64) -> Weights {
        Weights::new(a, b, c).unwrap()
    }

    /// Straight transcription of the binomial and double-sum expansions,
    /// evaluating every `B_{k,chi}(x)` individually.
    fn naive(cache: &BernoulliCache, label: Expansion, n: usize, ws: [u64; 3], ys: &[Rational]) -> CycloElement {
        let chi = cache.character();
        let d = chi.modulus();
        let [w1, w2, w3] = ws;
        let wq = |x: u64| int(x);
        let mut acc = CycloElement::zero(chi.order());
        match label {
            Expansion::V => {
                for k in 0..=n {
                    for a in 0..w3 * d {
                        let x = wq(w2) * &ys[1] + wq(w2) / wq(w3) * wq(a);
                        let term = &(&gen_bernoulli_poly(chi, k, &(wq(w1) * &ys[0])) * chi.value(a as i64))
                            * &gen_bernoulli_poly(chi, n - k, &x);
                        let c = Rational::from_integer(binomial_row(n)[k].clone())
                            * weight_pow(w1, (n - k) as i64)
                            * weight_pow(w2, k as i64);
                        acc.add_scaled(&term, &c);
                    }
                }
                acc.scale(&weight_pow(w3, n as i64 - 1))
            }
            Expansion::Z => {
                for k in 0..=n {
                    for a in 0..w2 * d {
                        let x = wq(w1) * &ys[0] + wq(w1) / wq(w2) * wq(a);
                        let term = &(&gen_bernoulli_poly(chi, k, &x) * chi.value(a as i64))
                            * &power_sum(chi, (n - k) as u32, w3 * d - 1);
                        let c = Rational::from_integer(binomial_row(n)[k].clone())
                            * weight_pow(w1, (n - k) as i64)
                            * weight_pow(w3, k as i64 - 1);
                        acc.add_scaled(&term, &c);
                    }
                }
                acc.scale(&weight_pow(w2, n as i64 - 1))
            }
            Expansion::A1 => {
                for a in 0..w2 * d {
                    for b in 0..w3 * d {
                        let x = wq(w1) * &ys[0] + wq(w1) / wq(w2) * wq(a) + wq(w1) / wq(w3) * wq(b);
                        acc += &(&gen_bernoulli_poly(chi, n, &x) * chi.value((a * b) as i64));
                    }
                }
                acc.scale(&(weight_pow(w2, n as i64 - 1) * weight_pow(w3, n as i64 - 1)))
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn grouped_sums_match_naive_transcription() {
        let ys = [q(1, 2), q(2, 3), q(0, 1)];
        for d in [1, 4, 5] {
            for chi in enumerate_characters(d).unwrap() {
                let cache = BernoulliCache::new(chi);
                for label in [Expansion::V, Expansion::Z, Expansion::A1] {
                    for n in 0..=4 {
                        let fast = expansion_sum(&cache, label, n, w(2, 3, 1), &ys).unwrap();
                        assert_eq!(fast, naive(&cache, label, n, [2, 3, 1], &ys), "({label}) n={n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn s_at_degree_zero() {
        let chi = enumerate_characters(1).unwrap().remove(0);
        let cache = BernoulliCache::new(chi);
        let ys = [q(1, 2), q(1, 3), q(1, 4)];
        let v = expansion_sum(&cache, Expansion::S, 0, w(1, 2, 3), &ys).unwrap();
        // B_0(x) = 1 for the trivial character
        assert!(v.is_one());
    }

    #[test]
    fn d1_hand_value() {
        let chi = enumerate_characters(1).unwrap().remove(0);
        let cache = BernoulliCache::new(chi);
        let v = expansion_sum(&cache, Expansion::D1, 1, w(1, 2, 3), &[]).unwrap();
        assert_eq!(v.as_rational().unwrap(), &q(5, 2));
    }

    #[test]
    fn three_routes_for_l23_2() {
        let chi = enumerate_characters(4).unwrap().remove(1);
        let cache = BernoulliCache::new(chi);
        let ys = [q(1, 2)];
        for n in 0..=6 {
            let x = expansion_sum(&cache, Expansion::X, n, w(2, 3, 1), &ys).unwrap();
            let z = expansion_sum(&cache, Expansion::Z, n, w(2, 3, 1), &ys).unwrap();
            let a1 = expansion_sum(&cache, Expansion::A1, n, w(2, 3, 1), &ys).unwrap();
            assert_eq!(x, z, "n = {n}");
            assert_eq!(z, a1, "n = {n}");
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!("(a1)".parse::<Expansion>().unwrap(), Expansion::A1);
        assert_eq!("D1".parse::<Expansion>().unwrap(), Expansion::D1);
        assert!("e1".parse::<Expansion>().is_err());
    }

    #[test]
    fn missing_ys_are_rejected() {
        let cache = BernoulliCache::new(enumerate_characters(3).unwrap().remove(1));
        assert!(expansion_sum(&cache, Expansion::S, 2, w(1, 1, 1), &[q(0, 1)]).is_err());
    }
}
