//! Exact finite sums of rational multiples of logarithms of primes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{fmt_rat, ln_rat_abs, BigRat};

/// sum_p r_p log p, stored as a map p -> r_p with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogValue {
    terms: BTreeMap<u64, BigRat>,
}

impl LogValue {
    pub fn zero() -> Self {
        Self::default()
    }

    /// r log p.
    pub fn log_prime(p: u64, r: BigRat) -> Self {
        let mut v = Self::zero();
        v.add_term(p, r);
        v
    }

    /// log n for a positive integer n small enough to factor by trial division.
    pub fn log_u64(n: u64) -> Self {
        assert!(n > 0);
        let mut v = Self::zero();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if e > 0 {
                v.add_term(p, BigRat::from_integer(BigInt::from(e)));
            }
            p += 1;
            if p * p > m && m > 1 {
                v.add_term(m, BigRat::one());
                break;
            }
        }
        v
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: u64, r: BigRat) {
        if r.is_zero() {
            return;
        }
        let e = self.terms.entry(p).or_insert_with(BigRat::zero);
        *e += r;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, o: &LogValue) -> LogValue {
        let mut out = self.clone();
        for (p, r) in &o.terms {
            out.add_term(*p, r.clone());
        }
        out
    }

    pub fn neg(&self) -> LogValue {
        LogValue {
            terms: self.terms.iter().map(|(p, r)| (*p, -r)).collect(),
        }
    }

    pub fn sub(&self, o: &LogValue) -> LogValue {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRat) -> LogValue {
        if c.is_zero() {
            return LogValue::zero();
        }
        LogValue {
            terms: self.terms.iter().map(|(p, r)| (*p, r * c)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, r)| ratio_f64(r) * (*p as f64).ln())
            .sum()
    }

    /// Exact sign: with common denominator d the value is log(A/B) / d for
    /// integers A = prod p^{a_p}, B = prod p^{b_p}.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let d = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut pos = BigInt::one();
        let mut neg = BigInt::one();
        for (p, r) in &self.terms {
            let e = (r * BigRat::from_integer(d.clone())).to_integer();
            let ex: u32 = e.abs().try_into().expect("exponent fits in u32");
            let pp = BigInt::from(*p).pow(ex);
            if e.is_positive() {
                pos *= pp;
            } else {
                neg *= pp;
            }
        }
        pos.cmp(&neg)
    }

    pub fn cmp_exact(&self, o: &LogValue) -> Ordering {
        self.sub(o).signum()
    }

    pub fn max(self, o: LogValue) -> LogValue {
        if self.cmp_exact(&o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    /// Decimal rendering with 15 significant digits.
    pub fn decimal(&self) -> String {
        format!("{}", sig15(self.to_f64()))
    }
}

/// Round to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{:.14e}", x).parse().unwrap_or(x)
}

fn ratio_f64(r: &BigRat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let s = if r.is_negative() { -1.0 } else { 1.0 };
    s * ln_rat_abs(r).exp()
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, r)| format!("{}*log({p})", fmt_rat(r)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LogValue", 2)?;
        let exact: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(p, r)| (p.to_string(), fmt_rat(r)))
            .collect();
        st.serialize_field("exact", &exact)?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}
