//! The eight symmetry identities.
//!
//! Each theorem takes one expansion and evaluates it with the weights placed
//! in several orders; the identity asserts that all these values coincide.
//! The `y` arguments stay attached to their slots. Expressions are listed in
//! a fixed display order so that reports can refer to them by position.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::expansion::{evaluate, triple_terms, Expansion, Tweak};
use super::{Weights, PERMUTATIONS};
use crate::bernoulli::BernoulliCache;
use crate::characters::CharacterId;
use crate::cyclotomic::{CycloElement, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl Theorem {
    pub const ALL: [Theorem; 8] =
        [Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::T5, Theorem::T6, Theorem::T7, Theorem::T8];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn expansion(self) -> Expansion {
        match self {
            Theorem::T1 => Expansion::S,
            Theorem::T2 => Expansion::U,
            Theorem::T3 => Expansion::V,
            Theorem::T4 => Expansion::X,
            Theorem::T5 => Expansion::Z,
            Theorem::T6 => Expansion::A1,
            Theorem::T7 => Expansion::C1,
            Theorem::T8 => Expansion::D1,
        }
    }

    /// Weight orders of the expressions, in display order. Entry `p` puts
    /// `(w_{p0}, w_{p1}, w_{p2})` into the three weight slots.
    pub fn permutations(self) -> &'static [[usize; 3]] {
        match self {
            Theorem::T1 => &[[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]],
            Theorem::T2 => &[[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 1, 0], [2, 0, 1]],
            Theorem::T3 => &[[2, 1, 0], [1, 2, 0], [2, 0, 1], [0, 2, 1], [1, 0, 2], [0, 1, 2]],
            Theorem::T4 => &[[0, 1, 2], [1, 2, 0], [2, 0, 1]],
            Theorem::T5 => &[[1, 0, 2], [2, 0, 1], [0, 1, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0]],
            Theorem::T6 => &[[2, 0, 1], [0, 1, 2], [1, 2, 0]],
            Theorem::T7 | Theorem::T8 => &[[2, 0, 1], [1, 0, 2]],
        }
    }

    pub fn y_arity(self) -> usize {
        self.expansion().y_arity()
    }

    /// Weight orders that are not listed because they repeat a listed
    /// expression after relabelling the summation indices.
    pub fn absorbed_permutations(self) -> &'static [[usize; 3]] {
        match self {
            Theorem::T4 => &[[0, 2, 1], [1, 0, 2], [2, 1, 0]],
            Theorem::T8 => &[[0, 1, 2], [1, 2, 0], [0, 2, 1], [2, 1, 0]],
            _ => &[],
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.number())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        let t = s.trim();
        let digits = t.strip_prefix(['T', 't']).unwrap_or(t);
        match digits.parse::<usize>() {
            Ok(k @ 1..=8) => Ok(Theorem::ALL[k - 1]),
            _ => Err(Error::InvalidArgument(format!("unknown theorem {s:?}, expected T1..T8"))),
        }
    }
}

/// A deliberate change to one expression: `delta` is added to the exponent
/// of its leading weight power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perturbation {
    pub expression: usize,
    pub delta: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremInstance {
    pub theorem: Theorem,
    pub n: usize,
    pub weights: Weights,
    /// `y1, y2, y3`; missing entries read as 0 and extra entries are ignored
    pub ys: Vec<Rational>,
    pub character: CharacterId,
    pub perturbation: Option<Perturbation>,
}

impl TheoremInstance {
    pub fn new(theorem: Theorem, n: usize, weights: Weights, ys: &[Rational], character: CharacterId) -> Self {
        let mut ys: Vec<Rational> = ys.iter().take(theorem.y_arity()).cloned().collect();
        ys.resize(theorem.y_arity(), Rational::default());
        TheoremInstance { theorem, n, weights, ys, character, perturbation: None }
    }

    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbation = Some(p);
        self
    }

    fn padded_ys(&self) -> Vec<Rational> {
        let mut ys = self.ys.clone();
        if ys.len() < 3 {
            ys.resize(3, Rational::default());
        }
        ys
    }

    /// Human-readable name of expression `i`, e.g. `v(w3,w2,w1)`.
    pub fn expression_label(&self, i: usize) -> String {
        let p = self.theorem.permutations()[i];
        format!("{}(w{},w{},w{})", self.theorem.expansion(), p[0] + 1, p[1] + 1, p[2] + 1)
    }
}

impl fmt::Display for TheoremInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} chi={} n={} w=({})", self.theorem, self.character, self.n, self.weights)?;
        if !self.ys.is_empty() {
            let ys: Vec<String> = self.ys.iter().map(|y| y.to_string()).collect();
            write!(f, " y=({})", ys.join(","))?;
        }
        if let Some(p) = self.perturbation {
            write!(f, " perturb={}:{:+}", p.expression, p.delta)?;
        }
        Ok(())
    }
}

/// Outcome of checking that an unlisted weight order repeats a listed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheck {
    pub permutation: [usize; 3],
    pub value: CycloElement,
    /// index of the listed expression with the same value, if any
    pub equals_expression: Option<usize>,
    /// listed expression and index relabelling `(k,l,m) -> sigma` under which
    /// the summands agree one for one
    pub termwise: Option<(usize, [usize; 3])>,
}

impl OrbitCheck {
    pub fn passed(&self) -> bool {
        self.equals_expression.is_some() && self.termwise.is_some()
    }
}

/// The alternative fifth expression of T3, which divides the shift by the
/// weight in the first slot rather than the third.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T3Variant {
    pub expression: usize,
    pub value: CycloElement,
    pub equals_orbit_value: bool,
    /// whether the two readings of the shift differ for these weights
    pub distinguishable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance: TheoremInstance,
    pub values: Vec<CycloElement>,
    pub all_equal: bool,
    pub first_mismatch: Option<(usize, usize)>,
    pub orbit_checks: Vec<OrbitCheck>,
    pub t3_variant: Option<T3Variant>,
}

impl VerificationReport {
    /// The identity holds and every absorbed weight order collapses as
    /// expected. The T3 variant is informational only.
    pub fn passed(&self) -> bool {
        self.all_equal && self.orbit_checks.iter().all(OrbitCheck::passed)
    }
}

fn tweak_for(instance: &TheoremInstance, i: usize) -> Tweak {
    match instance.perturbation {
        Some(p) if p.expression == i => Tweak { exponent_delta: p.delta, ..Tweak::default() },
        _ => Tweak::default(),
    }
}

fn check_instance(instance: &TheoremInstance, cache: &BernoulliCache) -> Result<()> {
    if cache.character().id() != instance.character {
        return Err(Error::InvalidArgument(format!(
            "cache holds character {}, instance asks for {}",
            cache.character().id(),
            instance.character
        )));
    }
    if let Some(p) = instance.perturbation {
        if p.expression >= instance.theorem.permutations().len() {
            return Err(Error::InvalidArgument(format!(
                "{} has {} expressions, cannot perturb expression {}",
                instance.theorem,
                instance.theorem.permutations().len(),
                p.expression
            )));
        }
    }
    Ok(())
}

/// Values of the theorem's expressions in display order, using `cache`.
pub fn theorem_expressions_with(cache: &BernoulliCache, instance: &TheoremInstance) -> Result<Vec<CycloElement>> {
    check_instance(instance, cache)?;
    let ys = instance.padded_ys();
    let label = instance.theorem.expansion();
    instance
        .theorem
        .permutations()
        .iter()
        .enumerate()
        .map(|(i, p)| evaluate(cache, label, instance.n, instance.weights.permuted(*p), &ys, tweak_for(instance, i)))
        .collect()
}

/// Values of the theorem's expressions in display order.
pub fn theorem_expressions(instance: &TheoremInstance) -> Result<Vec<CycloElement>> {
    let cache = BernoulliCache::shared_by_id(instance.character)?;
    theorem_expressions_with(&cache, instance)
}

fn first_mismatch(values: &[CycloElement]) -> Option<(usize, usize)> {
    (1..values.len()).find(|&j| values[j] != values[0]).map(|j| (0, j))
}

/// Index relabellings of `(k, l, m)`.
fn relabel(idx: [usize; 3], sigma: [usize; 3]) -> [usize; 3] {
    [idx[sigma[0]], idx[sigma[1]], idx[sigma[2]]]
}

fn termwise_match(
    extra: &BTreeMap<[usize; 3], CycloElement>,
    listed: &[BTreeMap<[usize; 3], CycloElement>],
) -> Option<(usize, [usize; 3])> {
    for (j, target) in listed.iter().enumerate() {
        for sigma in PERMUTATIONS {
            if extra.iter().all(|(idx, v)| target.get(&relabel(*idx, sigma)) == Some(v)) {
                return Some((j, sigma));
            }
        }
    }
    None
}

fn orbit_checks(cache: &BernoulliCache, instance: &TheoremInstance, values: &[CycloElement]) -> Vec<OrbitCheck> {
    let absorbed = instance.theorem.absorbed_permutations();
    if absorbed.is_empty() {
        return Vec::new();
    }
    let ys = instance.padded_ys();
    let label = instance.theorem.expansion();
    let terms = |p: [usize; 3], tweak: Tweak| {
        triple_terms(cache, label, instance.n, instance.weights.permuted(p), &ys, tweak)
            .expect("absorbed orders only occur for multinomial expansions")
    };
    let listed: Vec<_> =
        instance.theorem.permutations().iter().enumerate().map(|(i, p)| terms(*p, tweak_for(instance, i))).collect();
    absorbed
        .iter()
        .map(|&p| {
            let extra = terms(p, Tweak::default());
            let mut value = CycloElement::zero(cache.field());
            for t in extra.values() {
                value += t;
            }
            OrbitCheck {
                permutation: p,
                equals_expression: values.iter().position(|v| *v == value),
                termwise: termwise_match(&extra, &listed),
                value,
            }
        })
        .collect()
}

const T3_PRINTED_LINE: usize = 4;

fn t3_variant(cache: &BernoulliCache, instance: &TheoremInstance, values: &[CycloElement]) -> Result<T3Variant> {
    let p = Theorem::T3.permutations()[T3_PRINTED_LINE];
    let weights = instance.weights.permuted(p);
    let tweak = Tweak { shift_over_first: true, ..tweak_for(instance, T3_PRINTED_LINE) };
    let value = evaluate(cache, Expansion::V, instance.n, weights, &instance.padded_ys(), tweak)?;
    let [p1, _, p3] = weights.get();
    let others_agree = values.iter().enumerate().all(|(i, v)| i == T3_PRINTED_LINE || *v == value);
    Ok(T3Variant { expression: T3_PRINTED_LINE, value, equals_orbit_value: others_agree, distinguishable: p1 != p3 })
}

/// Evaluates and compares the theorem's expressions using `cache`.
pub fn verify_theorem_with(cache: &BernoulliCache, instance: &TheoremInstance) -> Result<VerificationReport> {
    let values = theorem_expressions_with(cache, instance)?;
    let first_mismatch = first_mismatch(&values);
    let orbit_checks = orbit_checks(cache, instance, &values);
    let t3_variant = match instance.theorem {
        Theorem::T3 => Some(t3_variant(cache, instance, &values)?),
        _ => None,
    };
    Ok(VerificationReport {
        instance: instance.clone(),
        all_equal: first_mismatch.is_none(),
        first_mismatch,
        values,
        orbit_checks,
        t3_variant,
    })
}

/// Evaluates and compares the theorem's expressions. Inequality is reported,
/// not raised.
pub fn verify_theorem(instance: &TheoremInstance) -> Result<VerificationReport> {
    let cache = BernoulliCache::shared_by_id(instance.character)?;
    verify_theorem_with(&cache, instance)
}
