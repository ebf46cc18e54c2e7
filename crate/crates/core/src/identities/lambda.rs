//! Quotient generating functions `Lambda_23^i`, `Lambda_13^i`,
//! `Lambda_12^0`, `Lambda_12^1`.
//!
//! [`lambda_series`] builds each one from its closed form in exponentials,
//! dividing every `(e^{ct} - 1)` factor by `t` before inverting.
//! [`lambda_series_from_integrals`] multiplies the per-variable integral
//! series instead: `int chi(x) e^{cxt} dx` is the `B_{n,chi}` generating
//! series at `ct`, and `int e^{cxt} dx` is `t/(e^t - 1)` at `ct`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{int, weight_pow, Weights};
use crate::bernoulli::{character_exp_sum, exp_minus_one_over_t, gen_bernoulli_series, ordinary_bernoulli_series};
use crate::characters::DirichletChar;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LambdaFamily {
    #[serde(rename = "L23")]
    L23,
    #[serde(rename = "L13")]
    L13,
    #[serde(rename = "L12")]
    L12,
}

impl LambdaFamily {
    pub fn max_index(self) -> u8 {
        match self {
            LambdaFamily::L23 | LambdaFamily::L13 => 3,
            LambdaFamily::L12 => 1,
        }
    }

    /// Number of `y` arguments taken by index `i`.
    pub fn y_arity(self, index: u8) -> usize {
        match self {
            LambdaFamily::L23 | LambdaFamily::L13 => 3 - index as usize,
            LambdaFamily::L12 => 1 - index as usize,
        }
    }
}

impl fmt::Display for LambdaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaFamily::L23 => "L23",
            LambdaFamily::L13 => "L13",
            LambdaFamily::L12 => "L12",
        })
    }
}

/// A member of one of the families with its weights and `y` arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSpec {
    family: LambdaFamily,
    index: u8,
    weights: Weights,
    ys: Vec<Rational>,
}

impl LambdaSpec {
    pub fn new(family: LambdaFamily, index: u8, weights: Weights, ys: Vec<Rational>) -> Result<LambdaSpec> {
        if index > family.max_index() {
            return Err(Error::InvalidArgument(format!("{family} has no index {index}")));
        }
        let arity = family.y_arity(index);
        if ys.len() != arity {
            return Err(Error::InvalidArgument(format!(
                "{family}^{index} takes {arity} y arguments, got {}",
                ys.len()
            )));
        }
        Ok(LambdaSpec { family, index, weights, ys })
    }

    /// Like [`LambdaSpec::new`] but taking the leading `y`s from a longer list,
    /// padding with zeros.
    pub fn with_prefix(family: LambdaFamily, index: u8, weights: Weights, ys: &[Rational]) -> Result<LambdaSpec> {
        if index > family.max_index() {
            return Err(Error::InvalidArgument(format!("{family} has no index {index}")));
        }
        let arity = family.y_arity(index);
        let mut own: Vec<Rational> = ys.iter().take(arity).cloned().collect();
        own.resize(arity, Rational::default());
        Self::new(family, index, weights, own)
    }

    pub fn family(&self) -> LambdaFamily {
        self.family
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    pub fn with_weights(&self, weights: Weights) -> LambdaSpec {
        LambdaSpec { weights, ..self.clone() }
    }

    /// Every family member, with the leading `y`s drawn from `ys`.
    pub fn all(weights: Weights, ys: &[Rational]) -> Vec<LambdaSpec> {
        let mut out = Vec::new();
        for family in [LambdaFamily::L23, LambdaFamily::L13, LambdaFamily::L12] {
            for index in 0..=family.max_index() {
                out.push(Self::with_prefix(family, index, weights, ys).expect("index in range"));
            }
        }
        out
    }

    fn y_sum(&self) -> Rational {
        self.ys.iter().fold(Rational::default(), |acc, y| acc + y)
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} w=({})", self.family, self.index, self.weights)?;
        if !self.ys.is_empty() {
            let ys: Vec<String> = self.ys.iter().map(ToString::to_string).collect();
            write!(f, " y=({})", ys.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for LambdaFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<LambdaFamily> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L23" | "LAMBDA23" => Ok(LambdaFamily::L23),
            "L13" | "LAMBDA13" => Ok(LambdaFamily::L13),
            "L12" | "LAMBDA12" => Ok(LambdaFamily::L12),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?} (expected L23, L13 or L12)"))),
        }
    }
}

/// Closed-form quotient, collected as rational prefactor, an exponential
/// `e^{shift t}`, and lists of `(e^{ct} - 1)` factors and character sums.
struct ClosedForm {
    prefactor: Rational,
    shift: Rational,
    /// power of `t` in the numerator, besides the `(e^{ct}-1)` factors
    t_power: usize,
    numerator_exps: Vec<u64>,
    denominator_exps: Vec<u64>,
    char_sums: Vec<u64>,
}

fn closed_form(spec: &LambdaSpec, d: u64) -> ClosedForm {
    let [w1, w2, w3] = spec.weights.get();
    let w = w1 * w2 * w3;
    let i = spec.index as usize;
    let pairs = vec![w2 * w3, w1 * w3, w1 * w2];
    let singles = vec![w1, w2, w3];
    match spec.family {
        LambdaFamily::L23 => ClosedForm {
            prefactor: weight_pow(w, 2 - i as i64),
            shift: int(w) * spec.y_sum(),
            t_power: 3 - i,
            numerator_exps: vec![d * w; i],
            denominator_exps: pairs.iter().map(|p| d * p).collect(),
            char_sums: pairs,
        },
        LambdaFamily::L13 => ClosedForm {
            prefactor: weight_pow(w, 1 - i as i64),
            shift: int(w) * spec.y_sum(),
            t_power: 3 - i,
            numerator_exps: vec![d * w; i],
            denominator_exps: singles.iter().map(|s| d * s).collect(),
            char_sums: singles,
        },
        LambdaFamily::L12 if i == 0 => ClosedForm {
            prefactor: int(w),
            shift: int(w2 * w3 + w1 * w3 + w1 * w2) * &spec.ys[0],
            t_power: 3,
            numerator_exps: vec![],
            denominator_exps: singles.iter().map(|s| d * s).collect(),
            char_sums: singles,
        },
        LambdaFamily::L12 => ClosedForm {
            prefactor: weight_pow(w, -1),
            shift: Rational::default(),
            t_power: 0,
            numerator_exps: pairs.iter().map(|p| d * p).collect(),
            denominator_exps: singles.iter().map(|s| d * s).collect(),
            char_sums: singles,
        },
    }
}

/// The quotient series from its closed form in exponentials.
pub fn lambda_series(spec: &LambdaSpec, chi: &DirichletChar, order: usize) -> TruncatedSeries {
    let field = chi.order();
    let form = closed_form(spec, chi.modulus());
    // each (e^{ct} - 1) contributes one factor of t
    let t_num = form.t_power + form.numerator_exps.len();
    let t_den = form.denominator_exps.len();
    assert_eq!(t_num, t_den, "t-degree bookkeeping for {spec}: {t_num} vs {t_den}");

    let mut acc = TruncatedSeries::exp_rational(field, &form.shift, order).scale(&form.prefactor);
    for &c in &form.numerator_exps {
        acc = &acc * &exp_minus_one_over_t(field, &int(c), order);
    }
    for &c in &form.denominator_exps {
        let inv = exp_minus_one_over_t(field, &int(c), order).invert().expect("(e^{ct}-1)/t has constant term c");
        acc = &acc * &inv;
    }
    for &c in &form.char_sums {
        acc = &acc * &character_exp_sum(chi, &int(c), order);
    }
    acc
}

/// The quotient series as a product of per-variable integral series.
pub fn lambda_series_from_integrals(spec: &LambdaSpec, chi: &DirichletChar, order: usize) -> TruncatedSeries {
    let field = chi.order();
    let d = chi.modulus();
    let [w1, w2, w3] = spec.weights.get();
    let w = w1 * w2 * w3;
    let i = spec.index as usize;
    let twisted = gen_bernoulli_series(chi, order);
    let plain = ordinary_bernoulli_series(order).lift_to_order(field).expect("Q embeds everywhere");
    let twisted_at = |c: u64| twisted.rescale_variable(&int(c));
    let plain_at = |c: u64| plain.rescale_variable(&int(c));
    let product = |cs: [u64; 3]| {
        let mut acc = twisted_at(cs[0]);
        for &c in &cs[1..] {
            acc = &acc * &twisted_at(c);
        }
        acc
    };

    match spec.family {
        LambdaFamily::L23 | LambdaFamily::L13 => {
            let cs = if spec.family == LambdaFamily::L23 { [w2 * w3, w1 * w3, w1 * w2] } else { [w1, w2, w3] };
            let numerator = &product(cs) * &TruncatedSeries::exp_rational(field, &(int(w) * spec.y_sum()), order);
            let denom_inv = plain_at(d * w).invert().expect("t/(e^t-1) has constant term 1");
            (0..i).fold(numerator, |acc, _| &acc * &denom_inv).scale(&weight_pow(d, i as i64))
        }
        LambdaFamily::L12 if i == 0 => {
            let shift = int(w2 * w3 + w1 * w3 + w1 * w2) * &spec.ys[0];
            &product([w1, w2, w3]) * &TruncatedSeries::exp_rational(field, &shift, order)
        }
        LambdaFamily::L12 => {
            let denom = &(&plain_at(d * w2 * w3) * &plain_at(d * w1 * w3)) * &plain_at(d * w1 * w2);
            let inv = denom.invert().expect("constant term 1");
            (&product([w1, w2, w3]) * &inv).scale(&weight_pow(d, 3))
        }
    }
}

/// Applies `w -> (w2 w3, w1 w3, w1 w2)` to a `Lambda_13` spec, giving the
/// `Lambda_23` spec whose series is the `Lambda_13` series at `w1 w2 w3 t`.
pub fn l13_as_l23(spec: &LambdaSpec) -> Option<LambdaSpec> {
    if spec.family != LambdaFamily::L13 {
        return None;
    }
    let [w1, w2, w3] = spec.weights.get();
    let weights = Weights::new(w2 * w3, w1 * w3, w1 * w2).ok()?;
    LambdaSpec::new(LambdaFamily::L23, spec.index, weights, spec.ys.clone()).ok()
}
