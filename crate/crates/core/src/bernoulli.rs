//! Ordinary and generalized Bernoulli numbers and polynomials, and
//! generalized power sums.
//!
//! `B_{n,chi}` is the `n`-th exponential coefficient of
//! `t / (e^{dt} - 1) * sum_{a<d} chi(a) e^{at}`; `B_{n,chi}(x)` carries an
//! extra factor `e^{xt}`. Both are computed from truncated series, and the
//! polynomial values are also available through the binomial expansion
//! `B_{n,chi}(x) = sum_k C(n,k) B_{k,chi} x^{n-k}`, which is what the
//! identity checks use.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::characters::{character, CharacterId, DirichletChar};
use crate::cyclotomic::{CycloElement, Rational};
use crate::error::Result;
use crate::series::TruncatedSeries;

/// Binomial coefficients `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n + 1 - k) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `(e^{ct} - 1) / t` to truncation order `order`.
pub(crate) fn exp_minus_one_over_t(field: u64, c: &Rational, order: usize) -> TruncatedSeries {
    let mut e = TruncatedSeries::exp_rational(field, c, order + 1);
    e = &e - &TruncatedSeries::one(field, order + 1);
    e.shift_down(1).expect("e^{ct} - 1 has no constant term")
}

/// `sum_{a<d} chi(a) e^{a c t}` to truncation order `order`.
pub(crate) fn character_exp_sum(chi: &DirichletChar, c: &Rational, order: usize) -> TruncatedSeries {
    let field = chi.order();
    let d = chi.modulus() as i64;
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c_pow = Rational::one();
    let mut fact = BigInt::one();
    for k in 0..=order {
        if k > 0 {
            c_pow *= c;
            fact *= k;
        }
        let mut sum = CycloElement::zero(field);
        for a in 0..d {
            let v = chi.value(a);
            if !v.is_zero() {
                sum.add_scaled(v, &Rational::from_integer(BigInt::from(a).pow(k as u32)));
            }
        }
        coeffs.push(sum.scale(&(&c_pow / &fact)));
    }
    TruncatedSeries::from_coeffs(coeffs).expect("coefficients share the character field")
}

fn ordinary_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// The generating series `t / (e^t - 1)` to truncation order `order`.
pub fn ordinary_bernoulli_series(order: usize) -> TruncatedSeries {
    exp_minus_one_over_t(1, &Rational::one(), order).invert().expect("(e^t - 1)/t has constant term 1")
}

/// Ordinary Bernoulli number `B_n` (with `B_1 = -1/2`), read off the series
/// `t / (e^t - 1)`. Memoized.
pub fn ordinary_bernoulli(n: usize) -> Rational {
    if let Some(b) = ordinary_table().read().unwrap().get(n) {
        return b.clone();
    }
    let target = (n + 4).max(2 * ordinary_table().read().unwrap().len());
    let values: Vec<Rational> = ordinary_bernoulli_series(target)
        .egf_coeffs()
        .into_iter()
        .map(|c| c.as_rational().cloned().expect("rational series"))
        .collect();
    let b = values[n].clone();
    let mut table = ordinary_table().write().unwrap();
    if table.len() < values.len() {
        *table = values;
    }
    b
}

/// The generating series of `B_{n,chi}` to truncation order `order`.
pub fn gen_bernoulli_series(chi: &DirichletChar, order: usize) -> TruncatedSeries {
    let d = Rational::from_integer(chi.modulus().into());
    let denom = exp_minus_one_over_t(chi.order(), &d, order).invert().expect("(e^{dt}-1)/t has constant term d");
    &denom * &character_exp_sum(chi, &Rational::one(), order)
}

/// The generating series of `B_{n,chi}(x)` to truncation order `order`.
pub fn gen_bernoulli_poly_series(chi: &DirichletChar, x: &Rational, order: usize) -> TruncatedSeries {
    &TruncatedSeries::exp_rational(chi.order(), x, order) * &gen_bernoulli_series(chi, order)
}

/// Key of a memoized power sum `S_k(n, chi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerSumKey {
    pub character: CharacterId,
    pub k: u32,
    pub n: u64,
}

/// Per-character memo of `B_{n,chi}` and `S_k(n, chi)`.
#[derive(Debug)]
pub struct BernoulliCache {
    chi: Arc<DirichletChar>,
    numbers: RwLock<Vec<CycloElement>>,
    power_sums: RwLock<HashMap<PowerSumKey, CycloElement>>,
}

impl BernoulliCache {
    pub fn new(chi: DirichletChar) -> Self {
        BernoulliCache { chi: Arc::new(chi), numbers: RwLock::new(Vec::new()), power_sums: RwLock::new(HashMap::new()) }
    }

    fn registry() -> &'static RwLock<HashMap<CharacterId, Arc<BernoulliCache>>> {
        static REGISTRY: OnceLock<RwLock<HashMap<CharacterId, Arc<BernoulliCache>>>> = OnceLock::new();
        REGISTRY.get_or_init(Default::default)
    }

    /// Shared cache for a character, created on first use.
    pub fn shared(chi: &DirichletChar) -> Arc<BernoulliCache> {
        if let Some(c) = Self::registry().read().unwrap().get(&chi.id()) {
            return Arc::clone(c);
        }
        let mut w = Self::registry().write().unwrap();
        Arc::clone(w.entry(chi.id()).or_insert_with(|| Arc::new(BernoulliCache::new(chi.clone()))))
    }

    /// Shared cache addressed by character id.
    pub fn shared_by_id(id: CharacterId) -> Result<Arc<BernoulliCache>> {
        if let Some(c) = Self::registry().read().unwrap().get(&id) {
            return Ok(Arc::clone(c));
        }
        Ok(Self::shared(&character(id)?))
    }

    pub fn character(&self) -> &DirichletChar {
        &self.chi
    }

    /// Cyclotomic order all values of this character live in.
    pub fn field(&self) -> u64 {
        self.chi.order()
    }

    fn ensure_numbers(&self, n: usize) {
        if self.numbers.read().unwrap().len() > n {
            return;
        }
        let target = (n + 4).max(2 * self.numbers.read().unwrap().len());
        let values = gen_bernoulli_series(&self.chi, target).egf_coeffs();
        let mut w = self.numbers.write().unwrap();
        if w.len() < values.len() {
            *w = values;
        }
    }

    /// `B_{n,chi}`.
    pub fn number(&self, n: usize) -> CycloElement {
        self.ensure_numbers(n);
        self.numbers.read().unwrap()[n].clone()
    }

    /// `B_{0,chi} .. B_{n,chi}`.
    pub fn numbers(&self, n: usize) -> Vec<CycloElement> {
        self.ensure_numbers(n);
        self.numbers.read().unwrap()[..=n].to_vec()
    }

    /// `B_{n,chi}(x)` by the binomial expansion over cached `B_{k,chi}`.
    pub fn poly(&self, n: usize, x: &Rational) -> CycloElement {
        self.ensure_numbers(n);
        let numbers = self.numbers.read().unwrap();
        // Horner in x: sum_k C(n,k) B_k x^{n-k}
        let binom = binomial_row(n);
        let mut acc = CycloElement::zero(self.field());
        for k in 0..=n {
            if k > 0 {
                acc = acc.scale(x);
            }
            acc.add_scaled(&numbers[k], &Rational::from_integer(binom[k].clone()));
        }
        acc
    }

    /// `B_{0,chi}(x) .. B_{n,chi}(x)`.
    pub fn poly_values(&self, n: usize, x: &Rational) -> Vec<CycloElement> {
        self.ensure_numbers(n);
        let numbers = self.numbers.read().unwrap();
        let mut x_pows = vec![Rational::one()];
        for k in 1..=n {
            x_pows.push(&x_pows[k - 1] * x);
        }
        (0..=n)
            .map(|j| {
                let binom = binomial_row(j);
                let mut acc = CycloElement::zero(self.field());
                for k in 0..=j {
                    acc.add_scaled(&numbers[k], &(&x_pows[j - k] * &binom[k]));
                }
                acc
            })
            .collect()
    }

    /// `S_k(n, chi)`, memoized.
    pub fn power_sum(&self, k: u32, n: u64) -> CycloElement {
        let key = PowerSumKey { character: self.chi.id(), k, n };
        if let Some(v) = self.power_sums.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = power_sum(&self.chi, k, n);
        self.power_sums.write().unwrap().insert(key, v.clone());
        v
    }
}

/// `B_{n,chi}` from the generating series; memoized per character.
pub fn gen_bernoulli_number(chi: &DirichletChar, n: usize) -> CycloElement {
    BernoulliCache::shared(chi).number(n)
}

/// `B_{n,chi}(x)` by the binomial route over memoized `B_{k,chi}`.
pub fn gen_bernoulli_poly(chi: &DirichletChar, n: usize, x: &Rational) -> CycloElement {
    BernoulliCache::shared(chi).poly(n, x)
}

/// `S_k(n, chi) = sum_{a=0}^{n} chi(a) a^k`, with `0^0 = 1`.
pub fn power_sum(chi: &DirichletChar, k: u32, n: u64) -> CycloElement {
    let mut acc = CycloElement::zero(chi.order());
    for a in 0..=n {
        let v = chi.value(a as i64);
        if !v.is_zero() {
            // BigInt::pow(0, 0) == 1
            acc.add_scaled(v, &Rational::from_integer(BigInt::from(a).pow(k)));
        }
    }
    acc
}

/// `((e^{wdt} - 1) / (e^{dt} - 1)) * sum_{a<d} chi(a) e^{at}`, whose
/// exponential coefficients are `S_k(wd - 1, chi)`.
pub fn power_sum_series(chi: &DirichletChar, w: u64, order: usize) -> TruncatedSeries {
    let field = chi.order();
    let d = chi.modulus();
    let num = exp_minus_one_over_t(field, &Rational::from_integer((w * d).into()), order);
    let den = exp_minus_one_over_t(field, &Rational::from_integer(d.into()), order)
        .invert()
        .expect("(e^{dt}-1)/t has constant term d");
    &(&num * &den) * &character_exp_sum(chi, &Rational::one(), order)
}

/// `B_{n,chi}(x)` read off the generating series (independent of the cache).
pub fn gen_bernoulli_poly_by_series(chi: &DirichletChar, n: usize, x: &Rational) -> Result<CycloElement> {
    gen_bernoulli_poly_series(chi, x, n).egf_coeff(n)
}
