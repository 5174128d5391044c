//! Polynomials and rational functions over the prime field F_p.
//!
//! Primes are machine words below 2^31 so every product fits in a `u64`.

use std::fmt;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial z.
    pub fn z(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| mul_mod(c, k % self.p, self.p))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
            .collect();
        Self::new(p, c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.lead(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mul_mod(c, b, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x % self.p, self.p) + c) % self.p)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::one(self.p);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// x^k mod self.
    pub fn powmod_x(&self, k: u64) -> Self {
        let p = self.p;
        let mut r = Self::one(p);
        let mut b = Self::z(p).div_rem(self).1;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).div_rem(self).1;
            }
            b = b.mul(&b).div_rem(self).1;
            e >>= 1;
        }
        r
    }

    /// True when every root lies in F_p, counting multiplicity: repeatedly
    /// strips gcd(f, x^p - x) until the cofactor is constant.
    pub fn splits_over_base(&self) -> bool {
        assert!(!self.is_zero(), "splitting test on zero polynomial");
        let p = self.p;
        let mut f = self.monic();
        while f.degree() != Some(0) {
            let xp = f.powmod_x(p);
            let g = f.gcd(&xp.sub(&Self::z(p)));
            if g.degree() == Some(0) {
                return false;
            }
            f = f.div_rem(&g).0;
        }
        true
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "z")?,
                (1, c) => write!(f, "{c}*z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, c) => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Element of F_p(z) in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpRatFn {
    num: FpPoly,
    den: FpPoly,
}

impl FpRatFn {
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in F_p(z)");
        let p = num.prime();
        if num.is_zero() {
            return FpRatFn {
                num,
                den: FpPoly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (n, d) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let inv = inv_mod(d.lead(), p);
        FpRatFn {
            num: n.scale(inv),
            den: d.scale(inv),
        }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.prime();
        FpRatFn {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_poly(FpPoly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        Self::from_poly(FpPoly::one(p))
    }

    pub fn prime(&self) -> u64 {
        self.num.prime()
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        FpRatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.prime());
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
    }

    pub fn mul_z(&self) -> Self {
        Self::new(self.num.mul(&FpPoly::z(self.prime())), self.den.clone())
    }
}

impl fmt::Display for FpRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
