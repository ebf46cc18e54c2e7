//! Truncated power series in `t` over `Q(zeta_m)`.
//!
//! Coefficients are stored as ordinary coefficients of `t^k`; the
//! exponential-generating-function view (`k!` times the coefficient) is only
//! applied on extraction through [`TruncatedSeries::egf_coeff`].

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::{common_order, CycloElement, Rational};
use crate::error::{Error, Result};

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Power series `sum_{k <= N} c_k t^k`, all coefficients in one field `Q(zeta_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: u64,
    coeffs: Vec<CycloElement>,
}

impl TruncatedSeries {
    pub fn zero(field: u64, order: usize) -> Self {
        TruncatedSeries { field, coeffs: vec![CycloElement::zero(field); order + 1] }
    }

    pub fn one(field: u64, order: usize) -> Self {
        Self::constant(CycloElement::one(field), order)
    }

    pub fn constant(c: CycloElement, order: usize) -> Self {
        let mut s = Self::zero(c.order(), order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from ordinary coefficients; they must share one field.
    pub fn from_coeffs(coeffs: Vec<CycloElement>) -> Result<Self> {
        let field = coeffs
            .first()
            .ok_or_else(|| Error::InvalidArgument("a series needs at least one coefficient".into()))?
            .order();
        if coeffs.iter().any(|c| c.order() != field) {
            return Err(Error::InvalidArgument("series coefficients span several fields".into()));
        }
        Ok(TruncatedSeries { field, coeffs })
    }

    /// Rational-coefficient series in `Q(zeta_field)`.
    pub fn from_rationals(field: u64, coeffs: impl IntoIterator<Item = Rational>) -> Result<Self> {
        Self::from_coeffs(coeffs.into_iter().map(|r| CycloElement::from_rational(field, r)).collect())
    }

    /// `e^{ct} = sum_k c^k t^k / k!`.
    pub fn exp(c: &CycloElement, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = CycloElement::one(c.order());
        coeffs.push(term.clone());
        for k in 1..=order {
            term = (&term * c).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            coeffs.push(term.clone());
        }
        TruncatedSeries { field: c.order(), coeffs }
    }

    /// `e^{rt}` for a rational `r`, with coefficients placed in `Q(zeta_field)`.
    pub fn exp_rational(field: u64, r: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for k in 0..=order {
            if k > 0 {
                term = term * r / BigInt::from(k);
            }
            coeffs.push(CycloElement::from_rational(field, term.clone()));
        }
        TruncatedSeries { field, coeffs }
    }

    /// Truncation order `N`: coefficients of `t^0 .. t^N` are known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Cyclotomic order of the coefficient field.
    pub fn field_order(&self) -> u64 {
        self.field
    }

    pub fn coeffs(&self) -> &[CycloElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&CycloElement> {
        self.coeffs.get(k).ok_or(Error::OutOfRange { index: k, order: self.order() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloElement::is_zero)
    }

    /// `n!` times the coefficient of `t^n`.
    pub fn egf_coeff(&self, n: usize) -> Result<CycloElement> {
        Ok(self.coeff(n)?.scale(&Rational::from_integer(factorial(n))))
    }

    pub fn egf_coeffs(&self) -> Vec<CycloElement> {
        let mut fact = BigInt::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= k;
                }
                c.scale(&Rational::from_integer(fact.clone()))
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        TruncatedSeries { field: self.field, coeffs: self.coeffs[..keep].to_vec() }
    }

    pub fn lift_to_order(&self, m: u64) -> Result<Self> {
        if m == self.field {
            return Ok(self.clone());
        }
        let coeffs = self.coeffs.iter().map(|c| c.lift_to_order(m)).collect::<Result<_>>()?;
        Ok(TruncatedSeries { field: m, coeffs })
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = common_order(a.field, b.field);
        let n = a.order().min(b.order());
        let lift = |s: &Self| s.truncate(n).lift_to_order(m).expect("lcm is a common multiple");
        (lift(a), lift(b))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries { field: self.field, coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    pub fn mul_element(&self, c: &CycloElement) -> Self {
        let m = common_order(self.field, c.order());
        let c = c.lift_to_order(m).expect("lcm is a common multiple");
        let lifted = self.lift_to_order(m).expect("lcm is a common multiple");
        TruncatedSeries { field: m, coeffs: lifted.coeffs.iter().map(|x| x * &c).collect() }
    }

    /// Substitution `t -> c t`: the coefficient of `t^k` is multiplied by `c^k`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| {
                if k > 0 {
                    power *= c;
                }
                x.scale(&power)
            })
            .collect();
        TruncatedSeries { field: self.field, coeffs }
    }

    /// Multiplication by `t^j`, keeping the truncation order.
    pub fn shift_up(&self, j: usize) -> Self {
        let mut out = Self::zero(self.field, self.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k + j <= self.order() {
                out.coeffs[k + j] = c.clone();
            }
        }
        out
    }

    /// Exact division by `t^j`; the result has truncation order `N - j`.
    pub fn shift_down(&self, j: usize) -> Result<Self> {
        if j > self.order() {
            return Err(Error::OutOfRange { index: j, order: self.order() });
        }
        if let Some(index) = self.coeffs[..j].iter().position(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { power: j, index });
        }
        Ok(TruncatedSeries { field: self.field, coeffs: self.coeffs[j..].to_vec() })
    }

    /// Multiplicative inverse up to the truncation order. The constant term
    /// must be a nonzero rational.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0
            .as_rational()
            .map(|r| r.recip())
            .ok_or_else(|| Error::Unsupported("inverting a series with irrational constant term".into()))?;
        let neg_inv0 = -inv0.clone();
        let mut out: Vec<CycloElement> = Vec::with_capacity(self.coeffs.len());
        out.push(CycloElement::from_rational(self.field, inv0));
        for k in 1..self.coeffs.len() {
            let mut acc = CycloElement::zero(self.field);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(acc.scale(&neg_inv0));
        }
        Ok(TruncatedSeries { field: self.field, coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.field, self.order()), |acc, _| &acc * self)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let (a, b) = TruncatedSeries::aligned(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        TruncatedSeries { field: a.field, coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let (a, b) = TruncatedSeries::aligned(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        TruncatedSeries { field: a.field, coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Cauchy product truncated at the smaller of the two orders.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let (a, b) = TruncatedSeries::aligned(self, rhs);
        let n = a.order();
        let mut coeffs = vec![CycloElement::zero(a.field); n + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs[..=n - i].iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] += &(x * y);
                }
            }
        }
        TruncatedSeries { field: a.field, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::zeta;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rat_series(coeffs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_rationals(1, coeffs.iter().map(|&(n, d)| q(n, d))).unwrap()
    }

    /// `(e^{ct} - 1) / t` to order `n`.
    fn exp_minus_one_over_t(c: i64, n: usize) -> TruncatedSeries {
        let e = TruncatedSeries::exp_rational(1, &q(c, 1), n + 1);
        (&e - &TruncatedSeries::one(1, n + 1)).shift_down(1).unwrap()
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::exp_rational(1, &q(0, 1), 5), TruncatedSeries::one(1, 5));
        assert_eq!(TruncatedSeries::exp_rational(1, &q(1, 1), 3), rat_series(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        let i = zeta(4, 1).unwrap();
        let e = TruncatedSeries::exp(&i, 2);
        assert!(e.coeffs()[0].is_one());
        assert_eq!(e.coeffs()[1], i);
        assert_eq!(e.coeffs()[2], CycloElement::from_rational(4, q(-1, 2)));
    }

    #[test]
    fn exp_product_adds_exponents() {
        let a = TruncatedSeries::exp_rational(1, &q(2, 1), 8);
        let b = TruncatedSeries::exp_rational(1, &q(3, 1), 8);
        assert_eq!(&a * &b, TruncatedSeries::exp_rational(1, &q(5, 1), 8));
    }

    #[test]
    fn additive_inverse_and_identity() {
        let s = rat_series(&[(1, 2), (-3, 1), (0, 1), (7, 5)]);
        assert!((&s + &(-&s)).is_zero());
        assert_eq!(&TruncatedSeries::one(1, 3) * &s, s);
    }

    #[test]
    fn geometric_inverse() {
        let s = rat_series(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(s.invert().unwrap(), rat_series(&[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
    }

    #[test]
    fn invert_errors() {
        let s = rat_series(&[(0, 1), (1, 1)]);
        assert_eq!(s.invert(), Err(Error::NotInvertible));
        let z = TruncatedSeries::constant(zeta(3, 1).unwrap(), 2);
        assert!(matches!(z.invert(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn double_inverse_round_trips() {
        let s = exp_minus_one_over_t(3, 10);
        let inv = s.invert().unwrap();
        assert_eq!(&s * &inv, TruncatedSeries::one(1, 10));
        assert_eq!(inv.invert().unwrap(), s);
    }

    #[test]
    fn shift_examples() {
        let s = rat_series(&[(0, 1), (1, 1), (1, 1)]);
        assert_eq!(s.shift_down(1).unwrap(), rat_series(&[(1, 1), (1, 1)]));
        assert_eq!(exp_minus_one_over_t(4, 3).coeffs()[0], CycloElement::from_integer(1, 4));
        let r = rat_series(&[(1, 1), (2, 1)]);
        assert_eq!(r.shift_down(1), Err(Error::NotDivisible { power: 1, index: 0 }));
        let base = rat_series(&[(3, 1), (-1, 2), (5, 7), (0, 1), (2, 1), (1, 9), (4, 1)]);
        let cubed = base.shift_up(3);
        assert_eq!(cubed.shift_down(3).unwrap(), base.truncate(3));
        let t3 = rat_series(&[(0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(&t3 * &base, cubed);
    }

    #[test]
    fn egf_examples() {
        let e = TruncatedSeries::exp_rational(1, &q(3, 1), 6);
        assert_eq!(e.egf_coeff(4).unwrap(), CycloElement::from_integer(1, 81));
        assert!(TruncatedSeries::zero(1, 4).egf_coeff(3).unwrap().is_zero());
        assert_eq!(e.egf_coeff(7), Err(Error::OutOfRange { index: 7, order: 6 }));
        let bern = exp_minus_one_over_t(1, 6).invert().unwrap();
        assert_eq!(bern.egf_coeff(1).unwrap(), CycloElement::from_rational(1, q(-1, 2)));
        assert_eq!(bern.egf_coeff(2).unwrap(), CycloElement::from_rational(1, q(1, 6)));
    }

    #[test]
    fn mixed_fields_lift_to_common_order() {
        let a = TruncatedSeries::exp(&zeta(3, 1).unwrap(), 4);
        let b = TruncatedSeries::exp(&zeta(4, 1).unwrap(), 6);
        let p = &a * &b;
        assert_eq!(p.field_order(), 12);
        assert_eq!(p.order(), 4);
        let direct = TruncatedSeries::exp(
            &(&zeta(3, 1).unwrap().lift_to_order(12).unwrap() + &zeta(4, 1).unwrap().lift_to_order(12).unwrap()),
            4,
        );
        assert_eq!(p, direct);
    }

    #[test]
    fn rescale_variable_matches_exp() {
        let e = TruncatedSeries::exp_rational(1, &q(2, 3), 6);
        assert_eq!(e.rescale_variable(&q(3, 1)), TruncatedSeries::exp_rational(1, &q(2, 1), 6));
    }
}
