//! Gauss valuations on Q(z) and the arithmetic counting functions built on
//! p-adic valuations of integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::fp::{FpPoly, FpRatFn};
use super::poly::Poly;
use super::ratfn::RatFn;
use super::rational::{rat_mod_p, vp_rat, BigRat};
use crate::error::{Error, Result};

/// A valuation v with |x| = p^{-v}; `Infinite` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussVal {
    Finite(i64),
    Infinite,
}

impl GaussVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            GaussVal::Finite(v) => Some(v),
            GaussVal::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == GaussVal::Infinite
    }

    /// The exponent of log p in log+ |x|_p = max(0, -v) log p.
    pub fn log_plus_exponent(self) -> i64 {
        match self {
            GaussVal::Finite(v) => (-v).max(0),
            GaussVal::Infinite => 0,
        }
    }
}

impl Ord for GaussVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GaussVal::Infinite, GaussVal::Infinite) => Ordering::Equal,
            (GaussVal::Infinite, _) => Ordering::Greater,
            (_, GaussVal::Infinite) => Ordering::Less,
            (GaussVal::Finite(a), GaussVal::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for GaussVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for GaussVal {
    type Output = GaussVal;
    fn add(self, o: GaussVal) -> GaussVal {
        match (self, o) {
            (GaussVal::Finite(a), GaussVal::Finite(b)) => GaussVal::Finite(a + b),
            _ => GaussVal::Infinite,
        }
    }
}

impl fmt::Display for GaussVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaussVal::Finite(v) => write!(f, "{v}"),
            GaussVal::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for GaussVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GaussVal::Finite(v) => s.serialize_i64(*v),
            GaussVal::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn rat_valuation(x: &BigRat, p: u64) -> GaussVal {
    vp_rat(x, p).map_or(GaussVal::Infinite, GaussVal::Finite)
}

/// Minimum coefficient valuation of a polynomial.
pub fn poly_gauss_valuation(f: &Poly, p: u64) -> GaussVal {
    series_gauss_valuation(f.coeffs(), p)
}

/// Gauss valuation of a rational function: min v_p over numerator
/// coefficients minus min v_p over denominator coefficients.
pub fn gauss_valuation(f: &RatFn, p: u64) -> GaussVal {
    match poly_gauss_valuation(f.num(), p) {
        GaussVal::Infinite => GaussVal::Infinite,
        GaussVal::Finite(vn) => {
            let vd = poly_gauss_valuation(f.den(), p)
                .finite()
                .expect("nonzero denominator");
            GaussVal::Finite(vn - vd)
        }
    }
}

/// Minimum valuation over a list of series coefficients.
pub fn series_gauss_valuation(c: &[BigRat], p: u64) -> GaussVal {
    c.iter()
        .map(|x| rat_valuation(x, p))
        .min()
        .unwrap_or(GaussVal::Infinite)
}

/// v_p(n!) from the base-p digit sum: (n - S_n) / (p - 1).
pub fn kummer_vp_factorial(n: u64, p: u64) -> u64 {
    let mut digits = 0;
    let mut m = n;
    while m > 0 {
        digits += m % p;
        m /= p;
    }
    (n - digits) / (p - 1)
}

/// {s, m}_p as a valuation: minus the sum of the m largest v_p(lambda) for
/// distinct lambda in 1..=s (the absolute value is p^{-value}).
pub fn accolade(s: u64, m: u64, p: u64) -> GaussVal {
    if m == 0 || s == 0 {
        return GaussVal::Finite(0);
    }
    let mut vals: Vec<i64> = (1..=s)
        .map(|l| {
            let mut v = 0;
            let mut x = l;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            v
        })
        .collect();
    vals.sort_unstable_by(|a, b| b.cmp(a));
    GaussVal::Finite(-vals.iter().take(m as usize).sum::<i64>())
}

/// lcm(1, ..., n).
pub fn lcm_upto(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// Least positive integer clearing every denominator in the list.
pub fn common_denominator(values: &[BigRat]) -> BigInt {
    super::rational::lcm_denominators(values)
}

/// Coefficientwise reduction of a p-integral polynomial.
pub fn reduce_poly_mod_p(f: &Poly, p: u64) -> Result<FpPoly> {
    let c = f
        .coeffs()
        .iter()
        .map(|x| rat_mod_p(x, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpPoly::new(p, c))
}

/// Image of f in F_p(z): the representative with a unit-content integral
/// denominator is reduced coefficient by coefficient.
pub fn reduce_ratfn_mod_p(f: &RatFn, p: u64) -> Result<FpRatFn> {
    if f.is_zero() {
        return Ok(FpRatFn::zero(p));
    }
    if gauss_valuation(f, p) < GaussVal::Finite(0) {
        return Err(Error::BadPrime { p });
    }
    let (content, den_prim) = f.den().primitive_int();
    // f = num / (content * den_prim) with den_prim primitive over Z.
    let num = f.num().scale(&(BigRat::one() / content));
    let den = Poly::from_bigints(&den_prim);
    let n = reduce_poly_mod_p(&num, p)?;
    let d = reduce_poly_mod_p(&den, p)?;
    debug_assert!(!d.is_zero());
    Ok(FpRatFn::new(n, d))
}
