//! Laurent polynomials `Q[x, x^{-1}]` with exact rational coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent to coefficient, never storing a zero coefficient.
pub type LaurentPoly = BTreeMap<i64, BigRational>;

pub(crate) fn constant(c: BigRational) -> LaurentPoly {
    monomial(c, 0)
}

pub(crate) fn monomial(c: BigRational, exp: i64) -> LaurentPoly {
    let mut p = LaurentPoly::new();
    if !c.is_zero() {
        p.insert(exp, c);
    }
    p
}

pub(crate) fn add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = a.clone();
    for (e, c) in b {
        accumulate(&mut out, *e, c.clone());
    }
    out
}

pub(crate) fn neg(a: &LaurentPoly) -> LaurentPoly {
    a.iter().map(|(e, c)| (*e, -c)).collect()
}

pub(crate) fn mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            accumulate(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

fn accumulate(p: &mut LaurentPoly, exp: i64, c: BigRational) {
    let entry = p.entry(exp).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&exp);
    }
}

/// The single term `(c, k)` when `p = c x^k`.
pub(crate) fn as_monomial(p: &LaurentPoly) -> Option<(&BigRational, i64)> {
    if p.len() == 1 {
        p.iter().next().map(|(e, c)| (c, *e))
    } else {
        None
    }
}

pub(crate) fn inverse(p: &LaurentPoly) -> Option<LaurentPoly> {
    let (c, e) = as_monomial(p)?;
    Some(monomial(c.recip(), -e))
}

/// `c^n` for a nonzero rational and any integer exponent.
pub(crate) fn rational_pow(c: &BigRational, n: i64) -> BigRational {
    let base = if n < 0 { c.recip() } else { c.clone() };
    let mut acc = BigRational::one();
    let mut sq = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &sq;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    acc
}

/// Multiplicative order of a nonzero rational: 1 for 1, 2 for -1, none otherwise.
pub(crate) fn rational_order(c: &BigRational) -> Option<u64> {
    if c.is_one() {
        Some(1)
    } else if (-c).is_one() {
        Some(2)
    } else {
        None
    }
}

pub(crate) fn format_rational_abs(c: &BigRational) -> String {
    let a = c.abs();
    if a.denom() == &BigInt::one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}
