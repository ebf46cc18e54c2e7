//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element is stored as its canonical residue modulo the `m`-th
//! cyclotomic polynomial `Phi_m`, i.e. a vector of `phi(m)` rational
//! coordinates in the power basis `1, zeta, ..., zeta^(phi(m)-1)`. Two
//! elements of the same order are equal exactly when their coordinate
//! vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always gcd-reduced with positive denominator.
pub type Rational = BigRational;

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Monic integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.last().is_some_and(One::is_one), "polynomial must be monic");
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact quotient by a monic divisor; the remainder must vanish.
    fn div_exact(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
        IntPolynomial::new(quot)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn phi_poly_table() -> &'static RwLock<HashMap<u64, IntPolynomial>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// The `m`-th cyclotomic polynomial, by dividing `x^m - 1` by `Phi_e` for
/// every proper divisor `e` of `m`. Results are memoized.
pub fn cyclotomic_polynomial(m: u64) -> Result<IntPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument("cyclotomic order must be positive".into()));
    }
    if let Some(p) = phi_poly_table().read().unwrap().get(&m) {
        return Ok(p.clone());
    }
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let mut poly = IntPolynomial::new(coeffs);
    for e in (1..m).filter(|e| m.is_multiple_of(*e)) {
        poly = poly.div_exact(&cyclotomic_polynomial(e)?);
    }
    phi_poly_table().write().unwrap().entry(m).or_insert_with(|| poly.clone());
    Ok(poly)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Reduction data for one cyclotomic order.
struct Modulus {
    degree: usize,
    /// `x^j mod Phi_m` for `j < max(m, 2 * degree - 1)`.
    powers: Vec<Vec<Rational>>,
}

impl Modulus {
    fn build(m: u64) -> Result<Modulus> {
        let phi = cyclotomic_polynomial(m)?;
        let degree = phi.degree();
        let count = (m as usize).max(2 * degree - 1);
        let neg_low: Vec<Rational> = phi.coeffs[..degree].iter().map(|c| Rational::from_integer(-c)).collect();
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x, replacing x^degree with -(lower terms of Phi_m)
            let top = cur.pop().unwrap();
            cur.insert(0, Rational::zero());
            if !top.is_zero() {
                for (c, n) in cur.iter_mut().zip(&neg_low) {
                    *c += &top * n;
                }
            }
        }
        Ok(Modulus { degree, powers })
    }
}

fn modulus(m: u64) -> Result<Arc<Modulus>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, Arc<Modulus>>>> = OnceLock::new();
    let table = TABLE.get_or_init(Default::default);
    if let Some(md) = table.read().unwrap().get(&m) {
        return Ok(Arc::clone(md));
    }
    let built = Arc::new(Modulus::build(m)?);
    Ok(Arc::clone(table.write().unwrap().entry(m).or_insert(built)))
}

fn modulus_of(m: u64) -> Arc<Modulus> {
    modulus(m).expect("cyclotomic order is positive")
}

/// `zeta_m^(k mod m)` in canonical form.
pub fn zeta(m: u64, k: i64) -> Result<CycloElement> {
    let md = modulus(m)?;
    let e = k.rem_euclid(m as i64) as usize;
    Ok(CycloElement { order: m, coeffs: md.powers[e].clone() })
}

/// An exact element of `Q(zeta_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub fn zero(m: u64) -> CycloElement {
        let degree = modulus_of(m).degree;
        CycloElement { order: m, coeffs: vec![Rational::zero(); degree] }
    }

    pub fn one(m: u64) -> CycloElement {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u64, r: Rational) -> CycloElement {
        let mut e = Self::zero(m);
        e.coeffs[0] = r;
        e
    }

    pub fn from_integer(m: u64, n: i64) -> CycloElement {
        Self::from_rational(m, Rational::from_integer(n.into()))
    }

    /// Builds an element from power-basis coordinates, reducing modulo `Phi_m`
    /// when more than `phi(m)` coordinates are given.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Result<CycloElement> {
        let md = modulus(m)?;
        let mut out = CycloElement { order: m, coeffs: vec![Rational::zero(); md.degree] };
        out.accumulate_reduced(&md, coeffs);
        Ok(out)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(One::is_one)
    }

    /// The element as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_order(&self, other: &CycloElement) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("cyclotomic orders differ: {} vs {}", self.order, other.order)))
        }
    }

    pub fn checked_add(&self, other: &CycloElement) -> Result<CycloElement> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElement { order: self.order, coeffs })
    }

    pub fn checked_sub(&self, other: &CycloElement) -> Result<CycloElement> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloElement { order: self.order, coeffs })
    }

    pub fn checked_mul(&self, other: &CycloElement) -> Result<CycloElement> {
        self.same_order(other)?;
        let md = modulus_of(self.order);
        if md.degree == 1 {
            return Ok(Self::from_rational(self.order, &self.coeffs[0] * &other.coeffs[0]));
        }
        let mut product = vec![Rational::zero(); 2 * md.degree - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    product[i + j] += a * b;
                }
            }
        }
        let mut out = Self::zero(self.order);
        out.accumulate_reduced(&md, product);
        Ok(out)
    }

    fn accumulate_reduced(&mut self, md: &Modulus, raw: Vec<Rational>) {
        for (j, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < md.degree {
                self.coeffs[j] += c;
            } else {
                let row = md.powers.get(j).cloned().unwrap_or_else(|| power_row(md, j));
                for (dst, r) in self.coeffs.iter_mut().zip(&row) {
                    if !r.is_zero() {
                        *dst += &c * r;
                    }
                }
            }
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &Rational) -> CycloElement {
        if r.is_zero() {
            return Self::zero(self.order);
        }
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        CycloElement { order: self.order, coeffs }
    }

    pub fn scale_in_place(&mut self, r: &Rational) {
        for c in &mut self.coeffs {
            *c *= r;
        }
    }

    /// `self += other * r`, without intermediate allocation of the product.
    pub fn add_scaled(&mut self, other: &CycloElement, r: &Rational) {
        assert_eq!(self.order, other.order, "cyclotomic orders differ");
        if r.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * r;
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> CycloElement {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under `zeta_m -> zeta_{m2}^(m2/m)`; `m` must divide `m2`.
    pub fn lift_to_order(&self, m2: u64) -> Result<CycloElement> {
        if m2 == 0 || !m2.is_multiple_of(self.order) {
            return Err(Error::InvalidArgument(format!("cannot lift from Q(zeta_{}) to Q(zeta_{m2})", self.order)));
        }
        if m2 == self.order {
            return Ok(self.clone());
        }
        let step = (m2 / self.order) as i64;
        let mut out = Self::zero(m2);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&zeta(m2, i as i64 * step)?, c);
            }
        }
        Ok(out)
    }
}

fn power_row(md: &Modulus, j: usize) -> Vec<Rational> {
    let mut row = md.powers.last().unwrap().clone();
    for _ in md.powers.len() - 1..j {
        let top = row.pop().unwrap();
        row.insert(0, Rational::zero());
        if !top.is_zero() {
            let low = &md.powers[md.degree];
            for (c, n) in row.iter_mut().zip(low) {
                *c += &top * n;
            }
        }
    }
    row
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] @ zeta({})", self.order)
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.checked_add(rhs).expect("cyclotomic orders differ")
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self.checked_sub(rhs).expect("cyclotomic orders differ")
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.checked_mul(rhs).expect("cyclotomic orders differ")
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(mut self) -> CycloElement {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&CycloElement> for CycloElement {
    fn add_assign(&mut self, rhs: &CycloElement) {
        assert_eq!(self.order, rhs.order, "cyclotomic orders differ");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloElement> for CycloElement {
    fn sub_assign(&mut self, rhs: &CycloElement) {
        assert_eq!(self.order, rhs.order, "cyclotomic orders differ");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Least common multiple of two cyclotomic orders.
pub fn common_order(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
