use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, the coefficient domain for everything exact.
///
/// `num_rational::BigRational` already maintains the canonical form we need:
/// positive denominator, gcd-reduced, zero stored as 0/1.
pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from(BigInt::from(n))
}

/// Renders `a/b`, collapsing to `a` when the denominator is 1.
pub fn format_rat(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a` or `a/b` with optional sign; the denominator must be nonzero.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("not a rational: {s:?}")))?;
    let denom: BigInt = den_str
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("not a rational: {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRat::new(numer, denom))
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    BigInt::from(acc)
}

pub fn binomial_rat(n: u64, k: u64) -> BigRat {
    BigRat::from(binomial(n, k))
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut m = x.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return Some(v);
        }
    }
}
