//! Linear differential operators over a differential field, in the d/dz
//! basis or the Euler basis theta = z d/dz.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::field::DiffField;
use super::matrix::Mat;
use crate::arith::rational::BigRat;
use crate::arith::{Poly, RatFn};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    D,
    Theta,
}

/// A point of the projective line over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(BigRat),
    Infinity,
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Finite(a) => write!(f, "{}", crate::arith::rational::fmt_rat(a)),
            Point::Infinity => write!(f, "infinity"),
        }
    }
}

/// sum_i coeffs[i] * d^i where d is D or theta; the zero operator has no
/// coefficients and the last coefficient is never zero otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Ore<F> {
    basis: Basis,
    coeffs: Vec<F>,
}

/// Operators over Q(z).
pub type DiffOp = Ore<RatFn>;

impl<F: DiffField> Ore<F> {
    pub fn new(basis: Basis, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ore { basis, coeffs }
    }

    pub fn zero(basis: Basis) -> Self {
        Ore {
            basis,
            coeffs: Vec::new(),
        }
    }

    pub fn scalar(basis: Basis, c: F) -> Self {
        Self::new(basis, vec![c])
    }

    /// c * d^k
    pub fn monomial(basis: Basis, c: F, k: usize) -> Self {
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        Self::new(basis, v)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; the zero operator is given order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &F {
        self.coeffs
            .last()
            .expect("zero operator has no leading coefficient")
    }

    fn der(&self, c: &F) -> F {
        match self.basis {
            Basis::D => c.derivative(),
            Basis::Theta => c.derivative().mul_z(),
        }
    }

    /// d * self
    pub fn apply_derivation_left(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(&self.der(c));
            out[i + 1] = out[i + 1].add(c);
        }
        Self::new(self.basis, out)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.basis, o.basis, "basis mismatch");
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(self.basis, out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.basis, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Left multiplication by a field element.
    pub fn left_scale(&self, c: &F) -> Self {
        Self::new(self.basis, self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    /// Noncommutative product self * o.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.basis, o.basis, "basis mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.basis);
        }
        let mut acc = Self::zero(self.basis);
        let mut power = o.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.apply_derivation_left();
            }
            if !a.is_zero() {
                acc = acc.add(&power.left_scale(a));
            }
        }
        acc
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.basis != o.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(self.mul(o))
    }

    /// Right Euclidean division: self = q * b + r with ord r < ord b.
    pub fn div_rem_right(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZeroOperator);
        }
        if self.basis != b.basis {
            return Err(Error::BasisMismatch);
        }
        let nb = b.order();
        let lb_inv = b.lead().inv();
        let mut r = self.clone();
        if r.is_zero() || r.order() < nb {
            return Ok((Self::zero(self.basis), r));
        }
        // d^k * b for k up to ord(self) - ord(b)
        let top = r.order() - nb;
        let mut shifts = vec![b.clone()];
        for k in 1..=top {
            let next = shifts[k - 1].apply_derivation_left();
            shifts.push(next);
        }
        let mut q = vec![b.lead().zero_like(); top + 1];
        while !r.is_zero() && r.order() >= nb {
            let k = r.order() - nb;
            let c = r.lead().mul(&lb_inv);
            r = r.sub(&shifts[k].left_scale(&c));
            q[k] = q[k].add(&c);
        }
        Ok((Self::new(self.basis, q), r))
    }

    /// Left-normalised form with leading coefficient 1.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.left_scale(&self.lead().inv())
    }

    /// Companion matrix of the monic D-basis operator: y' = G y for the
    /// vector (y, y', ..., y^(n-1)).
    pub fn companion_matrix(&self) -> Result<Mat<F>> {
        if self.basis != Basis::D {
            return Err(Error::BasisMismatch);
        }
        let n = self.order();
        if n == 0 {
            return Err(Error::InvalidParameters(
                "companion matrix of an order-0 operator".into(),
            ));
        }
        let l = self.normalize();
        let like = &l.coeffs[0];
        let mut m = Mat::zero(n, like);
        for i in 0..n - 1 {
            m.set(i, i + 1, like.one_like());
        }
        for j in 0..n {
            m.set(n - 1, j, l.coeffs[j].neg());
        }
        Ok(m)
    }
}

fn stirling_first_signed(m: usize) -> Vec<Vec<BigInt>> {
    // s[m][k]: x(x-1)...(x-m+1) = sum_k s[m][k] x^k
    let mut s = vec![vec![BigInt::zero(); m + 1]; m + 1];
    s[0][0] = BigInt::one();
    for i in 1..=m {
        for k in 1..=i {
            s[i][k] = &s[i - 1][k - 1] - BigInt::from(i - 1) * &s[i - 1][k];
        }
    }
    s
}

fn stirling_second(m: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); m + 1]; m + 1];
    s[0][0] = BigInt::one();
    for i in 1..=m {
        for k in 1..=i {
            s[i][k] = &s[i - 1][k - 1] + BigInt::from(k) * &s[i - 1][k];
        }
    }
    s
}

fn z_pow(k: i64) -> RatFn {
    if k >= 0 {
        RatFn::from_poly(Poly::monomial(BigRat::one(), k as usize))
    } else {
        RatFn::new(Poly::one(), Poly::monomial(BigRat::one(), (-k) as usize))
    }
}

impl DiffOp {
    pub fn d() -> Self {
        Self::monomial(Basis::D, RatFn::one(), 1)
    }

    pub fn theta() -> Self {
        Self::monomial(Basis::Theta, RatFn::one(), 1)
    }

    pub fn from_polys(basis: Basis, coeffs: Vec<Poly>) -> Self {
        Self::new(basis, coeffs.into_iter().map(RatFn::from_poly).collect())
    }

    /// Rewrite in the other basis. Going to theta the result is made monic;
    /// going to D, theta^m = sum_k S(m,k) z^k D^k is substituted verbatim.
    pub fn change_basis(&self, target: Basis) -> Self {
        if self.basis == target || self.is_zero() {
            return Self::new(target, self.coeffs.clone());
        }
        let n = self.order();
        let mut out = vec![RatFn::zero(); n + 1];
        match target {
            Basis::Theta => {
                // D^m = z^{-m} x(x-1)...(x-m+1) evaluated at theta
                let s = stirling_first_signed(n);
                for (m, b) in self.coeffs.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let bz = b * &z_pow(-(m as i64));
                    for (k, sk) in s[m].iter().enumerate().take(m + 1) {
                        if !sk.is_zero() {
                            out[k] = &out[k] + &bz.scale(&BigRat::from_integer(sk.clone()));
                        }
                    }
                }
                Self::new(Basis::Theta, out).normalize()
            }
            Basis::D => {
                let s = stirling_second(n);
                for (m, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (k, sk) in s[m].iter().enumerate().take(m + 1) {
                        if !sk.is_zero() {
                            let t = (a * &z_pow(k as i64)).scale(&BigRat::from_integer(sk.clone()));
                            out[k] = &out[k] + &t;
                        }
                    }
                }
                Self::new(Basis::D, out)
            }
        }
    }

    /// The same operator with every coefficient f(z) replaced by f(z + a).
    fn substitute_shift(&self, a: &BigRat) -> Self {
        Self::new(self.basis, self.coeffs.iter().map(|c| c.shift(a)).collect())
    }

    /// The operator in the local variable u (u = z - a, or u = 1/z at
    /// infinity), returned monic in the theta_u basis.
    pub fn translate_to_point(&self, point: &Point) -> Self {
        if self.is_zero() {
            return Self::zero(Basis::Theta);
        }
        match point {
            Point::Finite(a) => {
                if a.is_zero() {
                    return self.change_basis(Basis::Theta).normalize();
                }
                // d/dz = d/du, so substitute in the D basis.
                self.change_basis(Basis::D)
                    .substitute_shift(a)
                    .change_basis(Basis::Theta)
            }
            Point::Infinity => {
                // theta_z = -theta_u
                let l = self.change_basis(Basis::Theta).normalize();
                let coeffs = l
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let c = c.invert_variable();
                        if j % 2 == 1 {
                            -&c
                        } else {
                            c
                        }
                    })
                    .collect();
                Self::new(Basis::Theta, coeffs).normalize()
            }
        }
    }

    /// Multiply on the left by the lcm of coefficient denominators and divide
    /// by the gcd of the numerators, giving primitive polynomial coefficients
    /// with a positive leading coefficient of the top one.
    pub fn polynomial_form(&self) -> Vec<Poly> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut l = Poly::one();
        for c in &self.coeffs {
            let g = l.gcd(c.den());
            l = (&l * c.den()).exact_div(&g);
        }
        let polys: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| (c * &RatFn::from_poly(l.clone())).num().clone())
            .collect();
        let mut g = Poly::zero();
        for p in &polys {
            g = if g.is_zero() { p.clone() } else { g.gcd(p) };
        }
        let polys: Vec<Poly> = polys.iter().map(|p| p.exact_div(&g)).collect();
        // Clear rational content so every coefficient is integral and the
        // family is primitive.
        let all: Vec<BigRat> = polys.iter().flat_map(|p| p.coeffs().to_vec()).collect();
        let den = crate::arith::rational::lcm_denominators(&all);
        let num_gcd = all
            .iter()
            .map(|c| (c * BigRat::from_integer(den.clone())).to_integer())
            .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, &x));
        let mut k = BigRat::new(den, num_gcd);
        let top = polys.last().expect("nonzero").lead();
        if top < BigRat::zero() {
            k = -k;
        }
        polys.iter().map(|p| p.scale(&k)).collect()
    }

    /// Companion matrix of the D-basis form.
    pub fn companion(&self) -> Result<Mat<RatFn>> {
        self.change_basis(Basis::D).companion_matrix()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn c(n: &[i64]) -> RatFn {
        RatFn::from_poly(Poly::from_ints(n))
    }

    fn dop(cs: Vec<RatFn>) -> DiffOp {
        DiffOp::new(Basis::D, cs)
    }

    #[test]
    fn leibniz_products() {
        let z = DiffOp::scalar(Basis::D, RatFn::z());
        // D * z = z D + 1
        assert_eq!(DiffOp::d().mul(&z), dop(vec![c(&[1]), c(&[0, 1])]));
        // theta * theta expressed in D
        let t = DiffOp::theta().change_basis(Basis::D);
        assert_eq!(t.mul(&t), dop(vec![c(&[0]), c(&[0, 1]), c(&[0, 0, 1])]));
        let one = DiffOp::scalar(Basis::D, RatFn::one());
        assert_eq!(t.mul(&one), t);
    }

    #[test]
    fn right_division() {
        let d2 = DiffOp::monomial(Basis::D, RatFn::one(), 2);
        let (q, r) = d2.div_rem_right(&DiffOp::d()).unwrap();
        assert_eq!(q, DiffOp::d());
        assert!(r.is_zero());

        let b = dop(vec![c(&[-1]), c(&[0, 1])]);
        let (q, r) = d2.div_rem_right(&b).unwrap();
        assert_eq!(r.order(), 0);
        assert_eq!(q.mul(&b).add(&r), d2);

        let (q, r) = b.div_rem_right(&b).unwrap();
        assert_eq!(q, DiffOp::scalar(Basis::D, RatFn::one()));
        assert!(r.is_zero());

        assert_eq!(
            d2.div_rem_right(&DiffOp::zero(Basis::D)),
            Err(Error::DivisionByZeroOperator)
        );
    }

    #[test]
    fn basis_changes() {
        assert_eq!(
            DiffOp::theta().change_basis(Basis::D),
            dop(vec![c(&[0]), c(&[0, 1])])
        );
        let l = DiffOp::new(Basis::Theta, vec![c(&[-2]), c(&[0]), c(&[1])]);
        assert_eq!(
            l.change_basis(Basis::D),
            dop(vec![c(&[-2]), c(&[0, 1]), c(&[0, 0, 1])])
        );
        let li1 = dop(vec![c(&[0]), c(&[-1]), c(&[1, -1])]);
        let back = li1.change_basis(Basis::Theta).change_basis(Basis::D);
        assert_eq!(back.normalize(), li1.normalize());
    }

    #[test]
    fn translations() {
        let t = DiffOp::theta();
        assert_eq!(t.translate_to_point(&Point::Infinity), t);

        let dm1 = dop(vec![c(&[-1]), c(&[1])]);
        let at_inf = dm1.translate_to_point(&Point::Infinity);
        assert_eq!(at_inf.coeff(0).unwrap().ord_at(&int(0)), Some(-1));

        let l = dop(vec![c(&[1, 2]), c(&[0, 3]), c(&[1, 0, 1])]);
        assert_eq!(
            l.translate_to_point(&Point::Finite(int(0))),
            l.change_basis(Basis::Theta)
        );
        let a = rat(3, 2);
        let there = l.translate_to_point(&Point::Finite(a.clone()));
        let back = there
            .change_basis(Basis::D)
            .translate_to_point(&Point::Finite(-a));
        assert_eq!(back, l.change_basis(Basis::Theta));
    }

    #[test]
    fn companions() {
        let dm1 = dop(vec![c(&[-1]), c(&[1])]);
        assert_eq!(dm1.companion().unwrap().get(0, 0), &RatFn::one());
        let li1 = dop(vec![c(&[0]), c(&[-1]), c(&[1, -1])]);
        let g = li1.companion().unwrap();
        assert_eq!(g.get(0, 1), &RatFn::one());
        assert_eq!(
            g.get(1, 1),
            &RatFn::new(Poly::one(), Poly::from_ints(&[1, -1]))
        );
        assert!(g.get(0, 0).is_zero() && g.get(1, 0).is_zero());
        let d2 = DiffOp::monomial(Basis::D, RatFn::one(), 2);
        let g = d2.companion().unwrap();
        assert_eq!(g.get(0, 1), &RatFn::one());
        assert!(g.get(1, 1).is_zero());
    }

    #[test]
    fn polynomial_form_is_primitive() {
        let l = dop(vec![
            RatFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 2])),
            RatFn::constant(rat(1, 3)),
        ]);
        let p = l.polynomial_form();
        assert_eq!(p, vec![Poly::from_ints(&[3]), Poly::from_ints(&[0, 2])]);
    }
}
