//! Dense univariate polynomials over Q.
//!
//! `coeffs[i]` is the coefficient of z^i; the vector is empty for the zero
//! polynomial and never carries a trailing zero otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modgcd;
use super::rational::{fmt_rat, int, BigRat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// The variable z.
    pub fn z() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// z - a
    pub fn linear_root(a: &BigRat) -> Self {
        Self::new(vec![-a.clone(), BigRat::one()])
    }

    pub fn monomial(c: BigRat, k: usize) -> Self {
        let mut v = vec![BigRat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = -1, handy in bounds.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    /// Order of vanishing at z = 0 (`None` for zero).
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(BigRat::one() / self.lead()))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Euclidean division over Q. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = BigRat::one() / d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate().take(dd) {
                    r[k + j] -= &c * b;
                }
            }
            r[k + dd] = BigRat::zero();
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Inverse of self modulo m, when gcd(self, m) = 1.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        // Extended Euclid on (m, self mod m) tracking the cofactor of self.
        let (mut r0, mut r1) = (m.clone(), self.div_rem(m).1);
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if !r0.is_constant() {
            return None;
        }
        let c = BigRat::one() / r0.lead();
        Some(t0.scale(&c).div_rem(m).1)
    }

    /// Monic gcd; zero only when both inputs vanish.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        let (_, a) = self.primitive_int();
        let (_, b) = other.primitive_int();
        Self::from_bigints(&modgcd::gcd_int(&a, &b)).monic()
    }

    /// Split into (content, primitive integer polynomial with positive
    /// leading coefficient) such that self = content * primitive.
    pub fn primitive_int(&self) -> (BigRat, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRat::zero(), vec![]);
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRat::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (BigRat::new(g, l), prim)
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRat::from_integer(x.clone())).collect())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// p(z + a), by repeated synthetic division (Taylor shift).
    pub fn shift(&self, a: &BigRat) -> Self {
        if a.is_zero() || self.is_constant() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// z^deg * p(1/z).
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Composition p(q(z)).
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * q) + &Self::constant(c.clone())
        })
    }

    /// Multiplicity of `f` as a factor (f non-constant).
    pub fn multiplicity_of(&self, f: &Self) -> usize {
        assert!(!f.is_constant(), "multiplicity of a unit");
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(f);
            if !r.is_zero() {
                return k;
            }
            cur = q;
            k += 1;
        }
    }

    /// Squarefree decomposition: monic factors `(f_i, i)` with
    /// self = c * prod f_i^i, each f_i squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        // Yun's algorithm (characteristic zero).
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let g = b.gcd(&d);
            b = b.exact_div(&g);
            let c = d.exact_div(&g);
            d = &c - &b.derivative();
            if !g.is_constant() {
                out.push((g, i));
            }
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicity, found with the rational-root test on
    /// the squarefree part.
    pub fn rational_roots(&self) -> Vec<(BigRat, usize)> {
        let mut roots = Vec::new();
        for (f, mult) in self.squarefree_decomposition() {
            for r in f.rational_roots_squarefree() {
                roots.push((r, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }

    fn rational_roots_squarefree(&self) -> Vec<BigRat> {
        let mut roots = Vec::new();
        let mut f = self.clone();
        // Pull out z = 0 first.
        if let Some(k) = f.low_order() {
            if k > 0 {
                roots.push(BigRat::zero());
                f = Self::new(f.coeffs[k..].to_vec());
            }
        }
        if f.is_constant() {
            return roots;
        }
        let (_, ints) = f.primitive_int();
        let a0 = ints[0].clone();
        let an = ints.last().expect("nonconstant").clone();
        let nums = super::rational::divisors(&a0);
        let dens = super::rational::divisors(&an);
        for q in &dens {
            for pn in &nums {
                if !pn.gcd(q).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = BigRat::new(pn * BigInt::from(sign), q.clone());
                    if f.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots
    }

    /// Squarefree, pairwise coprime monic factors carrying no rational roots,
    /// with multiplicity: the part of self left after removing linear factors.
    pub fn nonrational_part(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (f, mult) in self.squarefree_decomposition() {
            let mut g = f.clone();
            for r in f.rational_roots_squarefree() {
                g = g.exact_div(&Poly::linear_root(&r));
            }
            if !g.is_constant() {
                out.push((g.monic(), mult));
            }
        }
        out
    }

    /// Falling factorial x(x-1)...(x-k+1).
    pub fn falling(k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, i| {
            &acc * &Self::linear_root(&int(i as i64))
        })
    }

    /// Rising factorial x(x+1)...(x+k-1).
    pub fn rising(k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, i| {
            &acc * &Self::linear_root(&int(-(i as i64)))
        })
    }

    /// Render with a chosen variable name.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{mono}", fmt_rat(&a)));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("z"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::new(c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Resultant of two polynomials over Q via the Sylvester determinant.
pub fn resultant(a: &Poly, b: &Poly) -> BigRat {
    let (m, n) = match (a.degree(), b.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigRat::zero(),
    };
    if m == 0 && n == 0 {
        return BigRat::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigRat::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    super::linalg::det(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!((&a - &a), Poly::zero());
        let (q, r) = p(&[-1, 0, 1]).div_rem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_over_q() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 3]);
        let b = &p(&[1, 1]) * &p(&[5, 0, 7]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, 2])), Poly::one());
        let big = p(&[1, -1]).pow(12);
        let other = &p(&[1, -1]).pow(7) * &p(&[0, 1]).pow(5);
        assert_eq!(big.gcd(&other), p(&[-1, 1]).pow(7));
    }

    #[test]
    fn taylor_shift() {
        // (z+1)^2 = z^2 + 2z + 1
        assert_eq!(p(&[0, 0, 1]).shift(&int(1)), p(&[1, 2, 1]));
        let f = p(&[3, -2, 0, 5]);
        let a = rat(-2, 3);
        let x = rat(7, 5);
        assert_eq!(f.shift(&a).eval(&x), f.eval(&(&x + &a)));
    }

    #[test]
    fn squarefree_and_roots() {
        // (z - 1)^2 (z + 1/2) (z^2 - 2)
        let f = &(&p(&[-1, 1]).pow(2) * &Poly::linear_root(&rat(-1, 2))) * &p(&[-2, 0, 1]);
        let roots = f.rational_roots();
        assert_eq!(roots, vec![(rat(-1, 2), 1), (int(1), 2)]);
        assert_eq!(f.nonrational_part(), vec![(p(&[-2, 0, 1]), 1)]);
        assert_eq!(p(&[0, 0, 1]).rational_roots(), vec![(int(0), 2)]);
    }

    #[test]
    fn resultant_matches_product_of_values() {
        // Res(z^2 - 2, z - 3) = (3^2 - 2) up to sign convention: a(3)
        let r = resultant(&p(&[-2, 0, 1]), &p(&[-3, 1]));
        assert_eq!(r.abs(), int(7));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])), int(0));
    }

    #[test]
    fn falling_and_rising() {
        assert_eq!(Poly::falling(3), p(&[0, 2, -3, 1]));
        assert_eq!(Poly::rising(2), p(&[0, 1, 1]));
    }
}
