//! Independent reference computations for integration tests. Nothing here
//! touches the generating-series machinery of the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use symbern_core::{CycloElement, DirichletChar, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `B_0 .. B_n` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_recurrence(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, k)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Ordinary `B_n(x) = sum_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    let b = bernoulli_recurrence(n);
    let mut acc = Rational::zero();
    for (k, bk) in b.iter().enumerate() {
        acc += Rational::from_integer(binomial(n, k)) * bk * pow(x, (n - k) as u32);
    }
    acc
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

fn pow_i(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        pow(x, e as u32)
    } else {
        Rational::one() / pow(x, (-e) as u32)
    }
}

/// `B_{n,chi}(x) = d^{n-1} sum_{a<d} chi(a) B_n((x + a)/d)`.
pub fn gen_bernoulli_poly_oracle(chi: &DirichletChar, n: usize, x: &Rational) -> CycloElement {
    let d = chi.modulus() as i64;
    let mut acc = CycloElement::zero(chi.order());
    for a in 0..d {
        let arg = (x + int(a)) / int(d);
        acc.add_scaled(chi.value(a), &bernoulli_poly(n, &arg));
    }
    acc.scale(&pow_i(&int(d), n as i64 - 1))
}

pub fn gen_bernoulli_oracle(chi: &DirichletChar, n: usize) -> CycloElement {
    gen_bernoulli_poly_oracle(chi, n, &Rational::zero())
}

/// `S_k(n, chi) = sum_{a=0}^{n} chi(a) a^k`, with `0^0 = 1`.
pub fn power_sum_direct(chi: &DirichletChar, k: u32, n: u64) -> CycloElement {
    let mut acc = CycloElement::zero(chi.order());
    for a in 0..=n {
        acc.add_scaled(chi.value(a as i64), &pow(&int(a as i64), k));
    }
    acc
}

fn wp(w: u64, e: i64) -> Rational {
    pow_i(&int(w as i64), e)
}

fn multinomial(n: usize, k: usize, l: usize) -> Rational {
    Rational::from_integer(binomial(n, k) * binomial(n - k, l))
}

/// Direct transcription of the nine expansions, using only the oracles above.
pub fn expansion_oracle(chi: &DirichletChar, label: &str, n: usize, w: [u64; 3], ys: &[Rational]) -> CycloElement {
    let d = chi.modulus();
    let [w1, w2, w3] = w;
    let b = |k: usize, x: &Rational| gen_bernoulli_poly_oracle(chi, k, x);
    let s = |k: usize, wi: u64| power_sum_direct(chi, k as u32, wi * d - 1);
    let wy = |wi: u64, i: usize| int(wi as i64) * &ys[i];
    let ratio = |a: u64, b: u64| int(a as i64) / int(b as i64);
    let mut acc = CycloElement::zero(chi.order());
    let triple = |acc: &mut CycloElement, f: &dyn Fn(usize, usize, usize) -> (CycloElement, Rational)| {
        for k in 0..=n {
            for l in 0..=n - k {
                let m = n - k - l;
                let (v, c) = f(k, l, m);
                acc.add_scaled(&v, &(c * multinomial(n, k, l)));
            }
        }
    };
    match label {
        "s" => triple(&mut acc, &|k, l, m| {
            let v = &(&b(k, &wy(w1, 0)) * &b(l, &wy(w2, 1))) * &b(m, &wy(w3, 2));
            let c = wp(w1, (l + m) as i64) * wp(w2, (k + m) as i64) * wp(w3, (k + l) as i64);
            (v, c)
        }),
        "u" => triple(&mut acc, &|k, l, m| {
            let v = &(&b(k, &wy(w1, 0)) * &b(l, &wy(w2, 1))) * &s(m, w3);
            let c = wp(w1, (l + m) as i64) * wp(w2, (k + m) as i64) * wp(w3, (k + l) as i64 - 1);
            (v, c)
        }),
        "x" => triple(&mut acc, &|k, l, m| {
            let v = &(&b(k, &wy(w1, 0)) * &s(l, w2)) * &s(m, w3);
            let c = wp(w1, (l + m) as i64) * wp(w2, (k + m) as i64 - 1) * wp(w3, (k + l) as i64 - 1);
            (v, c)
        }),
        "b1" => triple(&mut acc, &|k, l, m| {
            let v = &(&s(k, w1) * &s(l, w2)) * &s(m, w3);
            let c = wp(w1, (l + m) as i64 - 1) * wp(w2, (k + m) as i64 - 1) * wp(w3, (k + l) as i64 - 1);
            (v, c)
        }),
        "c1" => triple(&mut acc, &|k, l, m| {
            let v = &(&b(k, &wy(w2, 0)) * &b(l, &wy(w3, 0))) * &b(m, &wy(w1, 0));
            let c = wp(w1, k as i64) * wp(w2, l as i64) * wp(w3, m as i64);
            (v, c)
        }),
        "d1" => triple(&mut acc, &|k, l, m| {
            let v = &(&s(k, w2) * &s(l, w3)) * &s(m, w1);
            let c = wp(w1, k as i64 - 1) * wp(w2, l as i64 - 1) * wp(w3, m as i64 - 1);
            (v, c)
        }),
        "v" => {
            for k in 0..=n {
                let mut inner = CycloElement::zero(chi.order());
                for a in 0..w3 * d {
                    let x = wy(w2, 1) + ratio(w2, w3) * int(a as i64);
                    inner += &(chi.value(a as i64) * &b(n - k, &x));
                }
                let c = Rational::from_integer(binomial(n, k)) * wp(w1, (n - k) as i64) * wp(w2, k as i64);
                acc.add_scaled(&(&b(k, &wy(w1, 0)) * &inner), &c);
            }
            acc = acc.scale(&wp(w3, n as i64 - 1));
        }
        "z" => {
            for k in 0..=n {
                let mut inner = CycloElement::zero(chi.order());
                for a in 0..w2 * d {
                    let x = wy(w1, 0) + ratio(w1, w2) * int(a as i64);
                    inner += &(chi.value(a as i64) * &b(k, &x));
                }
                let c = Rational::from_integer(binomial(n, k)) * wp(w1, (n - k) as i64) * wp(w3, k as i64 - 1);
                acc.add_scaled(&(&inner * &s(n - k, w3)), &c);
            }
            acc = acc.scale(&wp(w2, n as i64 - 1));
        }
        "a1" => {
            for a in 0..w2 * d {
                for bb in 0..w3 * d {
                    let x = wy(w1, 0) + ratio(w1, w2) * int(a as i64) + ratio(w1, w3) * int(bb as i64);
                    acc += &(chi.value((a * bb) as i64) * &b(n, &x));
                }
            }
            acc = acc.scale(&(wp(w2, n as i64 - 1) * wp(w3, n as i64 - 1)));
        }
        other => panic!("unknown label {other}"),
    }
    acc
}
