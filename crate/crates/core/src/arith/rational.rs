//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with positive denominator.
pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> BigRat {
    BigRat::from_integer(n.clone())
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn vp_rat(x: &BigRat, p: u64) -> Option<i64> {
    let vn = vp_int(x.numer(), p)?;
    let vd = vp_int(x.denom(), p).unwrap_or(0);
    Some(vn - vd)
}

/// Reduce a p-integral rational into F_p.
pub fn rat_mod_p(x: &BigRat, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb);
    if d.is_zero() {
        return Err(Error::BadPrime { p });
    }
    let n = x.numer().mod_floor(&pb);
    let n = u64::try_from(n).expect("residue fits");
    let d = u64::try_from(d).expect("residue fits");
    Ok(crate::arith::fp::mul_mod(
        n,
        crate::arith::fp::inv_mod(d, p),
        p,
    ))
}

/// Parse "a", "-a", "a/b" into a rational.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || Error::InvalidParameters(format!("not a rational literal: {s:?}"));
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRat::new(parse_int(n)?, d))
        }
        None => Ok(BigRat::from_integer(parse_int(s)?)),
    }
}

/// Exact decimal-fraction string: "-3/2", "5", "0".
pub fn fmt_rat(x: &BigRat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// lcm of the denominators of a list of rationals.
pub fn lcm_denominators<'a, I: IntoIterator<Item = &'a BigRat>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Natural logarithm of a positive big integer, to f64 precision.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "log of non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        let f: f64 = n.to_string().parse().unwrap_or(f64::INFINITY);
        if f.is_finite() {
            return f.ln();
        }
    }
    let shift = bits.saturating_sub(64);
    let top: BigInt = n >> shift;
    let f: f64 = top.to_string().parse().expect("64-bit prefix");
    f.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rat_abs(x: &BigRat) -> f64 {
    ln_bigint(&x.numer().abs()) - ln_bigint(x.denom())
}

/// Primality for machine-word sized primes (trial division).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Prime factors of |n| by trial division, with multiplicity collapsed.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.clone());
            while (&m % &d).is_zero() {
                m /= &d;
            }
        }
        d += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// All positive divisors of |n|.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs();
    let mut divs = vec![BigInt::one()];
    for q in prime_factors(&m) {
        let mut e = 0;
        let mut t = m.clone();
        while (&t % &q).is_zero() {
            t /= &q;
            e += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= &q;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
