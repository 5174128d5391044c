//! Rational functions over Q in lowest terms with monic denominators.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{fmt_rat, BigRat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (n, d) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let l = BigRat::one() / d.lead();
        RatFn {
            num: n.scale(&l),
            den: d.scale(&l),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == Poly::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        (self.den.is_constant() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        RatFn {
            num: self.num.scale(k),
            den: if k.is_zero() {
                Poly::one()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.derivative());
        }
        Self::new(
            &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            &self.den * &self.den,
        )
    }

    /// z * f
    pub fn mul_z(&self) -> Self {
        if self.den.coeff(0).is_zero() {
            Self::new(self.num.shift_up(1), self.den.clone())
        } else {
            RatFn {
                num: self.num.shift_up(1),
                den: self.den.clone(),
            }
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Order at z = a: positive for zeros, negative for poles; `None` for zero.
    pub fn ord_at(&self, a: &BigRat) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let lin = Poly::linear_root(a);
        Some(self.num.multiplicity_of(&lin) as i64 - self.den.multiplicity_of(&lin) as i64)
    }

    /// Order at infinity: deg den - deg num; `None` for zero.
    pub fn ord_at_infinity(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.den.deg_i() - self.num.deg_i())
    }

    /// Multiplicity of a squarefree factor f in the denominator minus that in
    /// the numerator (a pole order along the roots of f).
    pub fn pole_order_along(&self, f: &Poly) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.den.multiplicity_of(f) as i64 - self.num.multiplicity_of(f) as i64
    }

    /// f(z + a)
    pub fn shift(&self, a: &BigRat) -> Self {
        Self::new(self.num.shift(a), self.den.shift(a))
    }

    /// f(1/z)
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.deg_i();
        let dd = self.den.deg_i();
        let (mut n, mut d) = (self.num.reversed(), self.den.reversed());
        if dd >= dn {
            n = n.shift_up((dd - dn) as usize);
        } else {
            d = d.shift_up((dn - dd) as usize);
        }
        Self::new(n, d)
    }

    /// Laurent expansion at 0: returns (v, c) with f = z^v * sum c_k z^k,
    /// `depth` coefficients, and v the true order when f is nonzero.
    pub fn laurent_at_zero(&self, depth: usize) -> (i64, Vec<BigRat>) {
        if self.is_zero() {
            return (0, vec![BigRat::zero(); depth]);
        }
        let kn = self.num.low_order().expect("nonzero");
        let kd = self.den.low_order().expect("nonzero");
        let n: Vec<BigRat> = self.num.coeffs()[kn..].to_vec();
        let d: Vec<BigRat> = self.den.coeffs()[kd..].to_vec();
        (kn as i64 - kd as i64, series_div(&n, &d, depth))
    }

    /// Taylor coefficients at 0 (f must be regular at 0).
    pub fn taylor(&self, depth: usize) -> Vec<BigRat> {
        let (v, c) = self.laurent_at_zero(depth);
        assert!(v >= 0, "taylor expansion of a function with a pole at 0");
        let mut out = vec![BigRat::zero(); depth];
        for (i, x) in c.into_iter().enumerate() {
            let k = i + v as usize;
            if k < depth {
                out[k] = x;
            }
        }
        out
    }
}

/// Power-series quotient n/d to `depth` terms (d[0] != 0).
pub fn series_div(n: &[BigRat], d: &[BigRat], depth: usize) -> Vec<BigRat> {
    let inv0 = BigRat::one() / &d[0];
    let mut c: Vec<BigRat> = Vec::with_capacity(depth);
    for i in 0..depth {
        let mut s = n.get(i).cloned().unwrap_or_else(BigRat::zero);
        for j in 1..=i.min(d.len().saturating_sub(1)) {
            if !d[j].is_zero() {
                s -= &d[j] * &c[i - j];
            }
        }
        c.push(s * &inv0);
    }
    c
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.is_constant() {
            fmt_rat(&self.num.coeff(0))
        } else {
            format!("({})", self.num)
        };
        write!(f, "{n}/({})", self.den)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_constant() {
                return RatFn::from_poly(&self.num + &o.num);
            }
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let a = o.den.exact_div(&g);
        let b = self.den.exact_div(&g);
        RatFn::new(&(&self.num * &a) + &(&o.num * &b), &self.den * &a)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFn::from_poly(&self.num * &o.num);
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = o.den.exact_div(&g1);
        let n2 = o.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let l = BigRat::one() / den.lead();
        RatFn {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        self * &o.inv()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

impl From<BigRat> for RatFn {
    fn from(c: BigRat) -> Self {
        RatFn::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn normal_form() {
        let f = RatFn::new(p(&[2, 2]), p(&[-2, 0, 2]));
        assert_eq!(f.num(), &Poly::one());
        assert_eq!(f.den(), &p(&[-1, 1]));
    }

    #[test]
    fn field_operations() {
        let a = RatFn::new(p(&[1]), p(&[1, -1]));
        let b = RatFn::new(p(&[1]), p(&[0, 1]));
        let s = &a + &b;
        // 1/(1-z) + 1/z = 1/(z(1-z))
        assert_eq!(s, RatFn::new(p(&[1]), p(&[0, 1, -1])));
        assert_eq!(&(&s * &s.inv()), &RatFn::one());
        assert_eq!(&a - &a, RatFn::zero());
    }

    #[test]
    fn derivative_of_geometric() {
        let a = RatFn::new(p(&[1]), p(&[1, -1]));
        assert_eq!(a.derivative(), RatFn::new(p(&[1]), p(&[1, -2, 1])));
    }

    #[test]
    fn orders_and_inversion() {
        let f = RatFn::new(p(&[0, 0, 3]), p(&[-1, 1]).pow(3));
        assert_eq!(f.ord_at(&int(0)), Some(2));
        assert_eq!(f.ord_at(&int(1)), Some(-3));
        assert_eq!(f.ord_at_infinity(), Some(1));
        let g = f.invert_variable();
        // f(1/u) = 3 u^{-2} / (1/u - 1)^3 = 3 u / (1 - u)^3
        assert_eq!(g, RatFn::new(p(&[0, -3]), p(&[-1, 1]).pow(3)));
        assert_eq!(g.invert_variable(), f);
    }

    #[test]
    fn laurent_expansion() {
        let f = RatFn::new(p(&[1]), p(&[0, 1, -1])); // 1/(z(1-z))
        let (v, c) = f.laurent_at_zero(4);
        assert_eq!(v, -1);
        assert_eq!(c, vec![int(1); 4]);
        let g = RatFn::new(p(&[1]), p(&[1, -1]));
        assert_eq!(g.taylor(3), vec![int(1); 3]);
        assert_eq!(
            RatFn::constant(rat(1, 2)).taylor(2),
            vec![rat(1, 2), int(0)]
        );
    }
}
