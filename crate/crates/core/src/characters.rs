//! Dirichlet characters modulo `d` with exact cyclotomic values.
//!
//! Characters are enumerated from an explicit decomposition of the unit
//! group `(Z/dZ)*` into cyclic factors: the character attached to the
//! exponent vector `(e_1, .., e_s)` sends generator `g_i` (of order `n_i`)
//! to `zeta_{n_i}^{e_i}`. Labels follow the lexicographic order of exponent
//! vectors, so `(modulus, label)` addresses a character stably.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::cyclotomic::{euler_phi, zeta, CycloElement};
use crate::error::{Error, Result};

/// Decomposition of `(Z/dZ)*` as a direct product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<(u64, u64)>,
    dlog: Vec<Option<Vec<u64>>>,
}

impl UnitGroupStructure {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(residue, order)` pairs; the product of the orders is `phi(d)`.
    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    /// Exponent vector of a unit with respect to [`Self::generators`].
    pub fn dlog(&self, a: u64) -> Option<&[u64]> {
        self.dlog.get((a % self.modulus) as usize)?.as_deref()
    }

    pub fn order(&self) -> u64 {
        self.generators.iter().map(|g| g.1).product()
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    k
}

/// CRT lift of `r mod q` into `Z/dZ`, congruent to 1 modulo `d / q`.
fn crt_lift(r: u64, q: u64, d: u64) -> u64 {
    let rest = d / q;
    (0..d).find(|&x| x % q == r % q && x % rest == 1 % rest).expect("coprime moduli admit a CRT solution")
}

/// Generators and discrete logarithms of `(Z/dZ)*`.
pub fn unit_group_structure(d: u64) -> Result<UnitGroupStructure> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let mut local: Vec<(u64, u64, u64)> = Vec::new(); // (residue mod q, order, q)
    for (p, k) in prime_powers(d) {
        let q = p.pow(k);
        if p == 2 {
            match k {
                1 => {}
                2 => local.push((3, 2, 4)),
                _ => {
                    local.push((q - 1, 2, q));
                    local.push((5, q / 4, q));
                }
            }
        } else {
            let phi = q / p * (p - 1);
            let g = (2..q)
                .find(|&g| g % p != 0 && multiplicative_order(g, q) == phi)
                .expect("odd prime powers have primitive roots");
            local.push((g, phi, q));
        }
    }
    let generators: Vec<(u64, u64)> = local.iter().map(|&(g, n, q)| (crt_lift(g, q, d), n)).collect();

    let mut dlog = vec![None; d as usize];
    let total: u64 = generators.iter().map(|g| g.1).product();
    for index in 0..total {
        let exps = mixed_radix(index, &generators);
        let mut x = 1 % d;
        for (&(g, _), &e) in generators.iter().zip(&exps) {
            for _ in 0..e {
                x = mul_mod(x, g, d);
            }
        }
        let slot = &mut dlog[x as usize];
        assert!(slot.is_none(), "unit group generators are not independent");
        *slot = Some(exps);
    }
    debug_assert_eq!(total, euler_phi(d));
    Ok(UnitGroupStructure { modulus: d, generators, dlog })
}

/// Digits of `index` in the mixed radix given by the generator orders,
/// most significant digit first.
fn mixed_radix(mut index: u64, generators: &[(u64, u64)]) -> Vec<u64> {
    let mut out = vec![0; generators.len()];
    for (slot, &(_, n)) in out.iter_mut().zip(generators).rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Address of a character: modulus and enumeration label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterId {
    pub modulus: u64,
    pub label: usize,
}

impl fmt::Display for CharacterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.modulus, self.label)
    }
}

impl FromStr for CharacterId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected MODULUS:LABEL, got {s:?}"));
        let (m, l) = s.split_once(':').ok_or_else(bad)?;
        Ok(CharacterId { modulus: m.trim().parse().map_err(|_| bad())?, label: l.trim().parse().map_err(|_| bad())? })
    }
}

/// A Dirichlet character modulo `d`, with values in `Q(zeta_r)` where `r`
/// is the order of the character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    modulus: u64,
    label: usize,
    exponents: Vec<u64>,
    order: u64,
    powers: Vec<Option<u64>>,
    values: Vec<CycloElement>,
    conductor: u64,
}

impl DirichletChar {
    pub fn id(&self) -> CharacterId {
        CharacterId { modulus: self.modulus, label: self.label }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> usize {
        self.label
    }

    /// Exponent vector over the generators of [`unit_group_structure`].
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Least `r` with `chi^r` trivial; also the cyclotomic order of the values.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Value table indexed by residues `0..d`.
    pub fn values(&self) -> &[CycloElement] {
        &self.values
    }

    /// `chi(a mod d)` for any integer `a`.
    pub fn value(&self, a: i64) -> &CycloElement {
        &self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// `k` with `chi(a) = zeta_r^k`, or `None` where `chi(a) = 0`.
    pub fn value_power(&self, a: i64) -> Option<u64> {
        self.powers[a.rem_euclid(self.modulus as i64) as usize]
    }
}

/// Periodic extension `chi(a mod d)`.
pub fn char_value(chi: &DirichletChar, a: i64) -> &CycloElement {
    chi.value(a)
}

/// Smallest `f | d` such that `chi(a) = 1` for every unit `a = 1 (mod f)`.
pub fn conductor(chi: &DirichletChar) -> u64 {
    compute_conductor(chi.modulus, &chi.powers)
}

fn compute_conductor(d: u64, powers: &[Option<u64>]) -> u64 {
    (1..=d)
        .filter(|f| d.is_multiple_of(*f))
        .find(|&f| powers.iter().enumerate().all(|(a, p)| p.is_none() || a as u64 % f != 1 % f || *p == Some(0)))
        .unwrap_or(d)
}

/// All `phi(d)` characters modulo `d`, in label order.
pub fn enumerate_characters(d: u64) -> Result<Vec<DirichletChar>> {
    let group = unit_group_structure(d)?;
    let gens = group.generators();
    let full: u64 = gens.iter().fold(1, |acc, g| acc.lcm(&g.1));
    let mut out = Vec::with_capacity(group.order() as usize);
    for label in 0..group.order() {
        let exponents = mixed_radix(label, gens);
        let order = gens.iter().zip(&exponents).fold(1u64, |acc, (&(_, n), &e)| acc.lcm(&(n / e.gcd(&n))));
        let mut powers = vec![None; d as usize];
        for (a, slot) in powers.iter_mut().enumerate() {
            let Some(v) = group.dlog(a as u64) else { continue };
            let s = gens.iter().zip(&exponents).zip(v).map(|((&(_, n), &e), &x)| e * x % n * (full / n)).sum::<u64>()
                % full;
            let scaled = s * order;
            debug_assert_eq!(scaled % full, 0);
            *slot = Some(scaled / full);
        }
        if d == 1 {
            powers[0] = Some(0);
        }
        let values = powers
            .iter()
            .map(|p| match p {
                Some(k) => zeta(order, *k as i64),
                None => Ok(CycloElement::zero(order)),
            })
            .collect::<Result<Vec<_>>>()?;
        let conductor = compute_conductor(d, &powers);
        out.push(DirichletChar { modulus: d, label: label as usize, exponents, order, powers, values, conductor });
    }
    Ok(out)
}

/// Looks up one character by address.
pub fn character(id: CharacterId) -> Result<DirichletChar> {
    let mut all = enumerate_characters(id.modulus)?;
    if id.label >= all.len() {
        return Err(Error::InvalidArgument(format!(
            "no character {id}: modulus {} has {} characters",
            id.modulus,
            all.len()
        )));
    }
    Ok(all.swap_remove(id.label))
}

/// The primitive characters modulo `d`, in label order.
pub fn primitive_characters(d: u64) -> Result<Vec<DirichletChar>> {
    Ok(enumerate_characters(d)?.into_iter().filter(DirichletChar::is_primitive).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(a: u64, d: u64) -> u64 {
        (1..=d).find(|&k| (0..k).fold(1 % d, |x, _| x * a % d) == 1 % d).unwrap()
    }

    #[test]
    fn unit_groups() {
        let g1 = unit_group_structure(1).unwrap();
        assert!(g1.generators().is_empty());
        assert_eq!(g1.order(), 1);

        let g5 = unit_group_structure(5).unwrap();
        assert_eq!(g5.generators(), &[(2, 4)]);
        assert_eq!(brute_order(2, 5), 4);

        let g8 = unit_group_structure(8).unwrap();
        assert_eq!(g8.generators(), &[(7, 2), (5, 2)]);
        assert!(unit_group_structure(0).is_err());
    }

    #[test]
    fn unit_group_orders_are_consistent() {
        for d in 1..=60u64 {
            let g = unit_group_structure(d).unwrap();
            assert_eq!(g.order(), euler_phi(d), "d = {d}");
            for &(r, n) in g.generators() {
                assert_eq!(r.gcd(&d), 1);
                assert_eq!(brute_order(r, d), n, "d = {d}, g = {r}");
            }
        }
    }

    #[test]
    fn modulus_four() {
        let chars = enumerate_characters(4).unwrap();
        assert_eq!(chars.len(), 2);
        let chi = &chars[1];
        let table: Vec<i64> = (0..4)
            .map(|a| {
                let v = chi.value(a).as_rational().unwrap();
                i64::try_from(v.to_integer()).unwrap()
            })
            .collect();
        assert_eq!(table, vec![0, 1, 0, -1]);
        assert_eq!(chi.conductor(), 4);
        assert!(chi.value(7) == &CycloElement::from_integer(2, -1));
        assert!(chi.value(-1) == &CycloElement::from_integer(2, -1));
    }

    #[test]
    fn modulus_one() {
        let chars = enumerate_characters(1).unwrap();
        assert_eq!(chars.len(), 1);
        assert!(chars[0].value(0).is_one());
        assert!(chars[0].value(-17).is_one());
        assert_eq!(chars[0].conductor(), 1);
        assert!(chars[0].is_primitive());
    }

    #[test]
    fn modulus_five_has_one_quadratic() {
        let chars = enumerate_characters(5).unwrap();
        assert_eq!(chars.len(), 4);
        assert_eq!(chars.iter().filter(|c| c.order() == 2).count(), 1);
        let legendre = chars.iter().find(|c| c.order() == 2).unwrap();
        // quadratic residues mod 5 are 1 and 4
        for (a, expect) in [(1, 1), (2, -1), (3, -1), (4, 1)] {
            assert_eq!(legendre.value(a), &CycloElement::from_integer(2, expect));
        }
    }

    #[test]
    fn modulus_eight_conductors() {
        let chars = enumerate_characters(8).unwrap();
        let mut conductors: Vec<u64> = chars.iter().map(conductor).collect();
        conductors.sort();
        assert_eq!(conductors, vec![1, 4, 8, 8]);
        let chi = chars
            .iter()
            .find(|c| {
                c.value(3).as_rational().is_some_and(|v| *v == crate::cyclotomic::Rational::from_integer((-1).into()))
                    && c.value(5).is_one()
            })
            .unwrap();
        assert_eq!(chi.conductor(), 4);
        assert!(!chi.is_primitive());
    }

    #[test]
    fn trivial_character_has_conductor_one() {
        for d in 1..=30 {
            let chars = enumerate_characters(d).unwrap();
            assert!(chars[0].is_trivial());
            assert_eq!(chars[0].conductor(), 1);
        }
    }

    #[test]
    fn character_ids_parse() {
        let id: CharacterId = "8:3".parse().unwrap();
        assert_eq!(id, CharacterId { modulus: 8, label: 3 });
        assert_eq!(id.to_string(), "8:3");
        assert!("8".parse::<CharacterId>().is_err());
        assert!(character(CharacterId { modulus: 5, label: 4 }).is_err());
    }
}
