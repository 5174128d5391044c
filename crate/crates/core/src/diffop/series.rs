//! Truncated power series and the action of operators on them.

use num_traits::{One, Zero};
use serde::Serialize;

use super::ore::{Basis, DiffOp, Point};
use crate::arith::rational::{int, BigRat};
use crate::arith::{Poly, RatFn};
use crate::error::{Error, Result};

/// sum_{k < trunc_order} coeffs[k] z^k + O(z^trunc_order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRat>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRat>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> BigRat) -> Self {
        Self::new((0..order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRat::zero(); order])
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BigRat {
        &self.coeffs[k]
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs[..n.min(self.coeffs.len())].to_vec())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn theta(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.trunc_order().min(o.trunc_order());
        Self::new((0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect())
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        let n = self.trunc_order();
        let mut out = vec![BigRat::zero(); n];
        for (i, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n.saturating_sub(i) {
                out[i + j] += a * &self.coeffs[j];
            }
        }
        Self::new(out)
    }

    /// The truncation as a polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TruncatedSeries", 2)?;
        let c: Vec<String> = self
            .coeffs
            .iter()
            .map(crate::arith::rational::fmt_rat)
            .collect();
        st.serialize_field("coeffs", &c)?;
        st.serialize_field("trunc_order", &self.trunc_order())?;
        st.end()
    }
}

/// c * g where c is a rational function and g a truncated series; the
/// product is returned as a power series known to (order of g) + ord_0(c).
fn mul_ratfn_series(c: &RatFn, g: &TruncatedSeries) -> Result<(Vec<BigRat>, i64)> {
    let m = g.trunc_order() as i64;
    if c.is_zero() {
        return Ok((Vec::new(), i64::MAX));
    }
    let (v, _) = c.laurent_at_zero(1);
    let out_order = m + v;
    if v < 0 {
        // Negative powers must cancel against the low zeros of g.
        let need = (-v) as usize;
        if g.trunc_order() < need || g.coeffs[..need].iter().any(|x| !x.is_zero()) {
            return Err(Error::PoleAtOrigin);
        }
    }
    if out_order <= 0 {
        return Ok((Vec::new(), out_order.max(0)));
    }
    let depth = (out_order - v).max(0) as usize + 1;
    let (_, lc) = c.laurent_at_zero(depth);
    let mut out = vec![BigRat::zero(); out_order as usize];
    for (i, a) in lc.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let e = v + i as i64;
        for (j, b) in g.coeffs.iter().enumerate() {
            let k = e + j as i64;
            if k < 0 || b.is_zero() {
                continue;
            }
            if k >= out_order {
                break;
            }
            out[k as usize] += a * b;
        }
    }
    Ok((out, out_order))
}

/// L(f) to the order guaranteed by the truncation of f: each D costs one
/// order and a coefficient with a pole of order k at 0 costs k more.
pub fn apply_operator(l: &DiffOp, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut terms = Vec::new();
    let mut g = f.clone();
    for (j, c) in l.coeffs().iter().enumerate() {
        if j > 0 {
            g = match l.basis() {
                Basis::D => g.derivative(),
                Basis::Theta => g.theta(),
            };
        }
        if !c.is_zero() {
            terms.push(mul_ratfn_series(c, &g)?);
        }
    }
    let order = terms
        .iter()
        .map(|(_, o)| *o)
        .min()
        .unwrap_or(f.trunc_order() as i64)
        .max(0) as usize;
    let mut out = vec![BigRat::zero(); order];
    for (t, _) in terms {
        for (k, x) in t.into_iter().take(order).enumerate() {
            out[k] += x;
        }
    }
    Ok(TruncatedSeries::new(out))
}

/// For L in the theta basis, L(z^x) = z^{x+m} sum_k phi_k(x) z^k; returns m
/// and phi_0..phi_{depth-1} as polynomials in x. Other bases are first
/// converted (which left-multiplies by a unit).
pub fn power_action(l: &DiffOp, depth: usize) -> (i64, Vec<Poly>) {
    let l = if l.basis() == Basis::Theta {
        l.clone()
    } else {
        l.change_basis(Basis::Theta)
    };
    if l.is_zero() {
        return (0, vec![Poly::zero(); depth]);
    }
    let vals: Vec<Option<i64>> = l
        .coeffs()
        .iter()
        .map(|c| (!c.is_zero()).then(|| c.laurent_at_zero(1).0))
        .collect();
    let m = vals
        .iter()
        .flatten()
        .copied()
        .min()
        .expect("nonzero operator");
    let mut phi = vec![vec![BigRat::zero(); l.coeffs().len()]; depth];
    for (j, c) in l.coeffs().iter().enumerate() {
        let Some(v) = vals[j] else { continue };
        let shift = (v - m) as usize;
        if shift >= depth {
            continue;
        }
        let (_, lc) = c.laurent_at_zero(depth - shift);
        for (i, a) in lc.into_iter().enumerate() {
            phi[shift + i][j] = a;
        }
    }
    (m, phi.into_iter().map(Poly::new).collect())
}

/// Offset m and phi_k(s) for k < depth, where L(z^s) = z^{s+m} sum phi_k(s) z^k.
pub fn apply_to_power(l: &DiffOp, s: i64, depth: usize) -> (i64, Vec<BigRat>) {
    let (m, phi) = power_action(l, depth);
    let x = int(s);
    (m, phi.iter().map(|p| p.eval(&x)).collect())
}

/// Whether 0 is an ordinary point: the monic D-basis coefficients are all
/// finite at 0.
pub fn is_ordinary_at_zero(l: &DiffOp) -> bool {
    let l = l.change_basis(Basis::D).normalize();
    l.coeffs()
        .iter()
        .all(|c| c.is_zero() || c.ord_at(&BigRat::zero()).is_some_and(|v| v >= 0))
}

/// Power series z^e * sum_k c_k z^k solving L, to `order` coefficients of the
/// sum, with the prescribed values `seed` at the indices where phi_0(e + k)
/// vanishes. Returns None when the recurrence is obstructed (a resonant index
/// with nonzero right-hand side) or 0 is not regular singular.
pub fn frobenius_power_series(
    l: &DiffOp,
    e: i64,
    seed: &dyn Fn(usize) -> BigRat,
    order: usize,
) -> Option<TruncatedSeries> {
    let (m, phi) = power_action(l, order.max(1));
    if m != 0 {
        return None;
    }
    let mut c: Vec<BigRat> = Vec::with_capacity(order);
    for k in 0..order {
        let mut rhs = BigRat::zero();
        for i in 1..=k {
            if phi[i].is_zero() || c[k - i].is_zero() {
                continue;
            }
            rhs -= phi[i].eval(&int(e + (k - i) as i64)) * &c[k - i];
        }
        let lead = phi[0].eval(&int(e + k as i64));
        if lead.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
            c.push(seed(k));
        } else {
            c.push(rhs / lead);
        }
    }
    Some(TruncatedSeries::new(c))
}

/// The basis f_i = z^i + O(z^n), i < n, of power-series solutions at an
/// ordinary point 0, each known to `order` coefficients.
pub fn ordinary_series_basis(l: &DiffOp, order: usize) -> Result<Vec<TruncatedSeries>> {
    if l.is_zero() || !is_ordinary_at_zero(l) {
        return Err(Error::NotOrdinaryPoint);
    }
    let n = l.order();
    let lt = l.translate_to_point(&Point::Finite(BigRat::zero()));
    (0..n)
        .map(|i| {
            let seed = move |k: usize| {
                if k == i {
                    BigRat::one()
                } else {
                    BigRat::zero()
                }
            };
            frobenius_power_series(&lt, 0, &seed, order).ok_or(Error::NotOrdinaryPoint)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn c(n: &[i64]) -> RatFn {
        RatFn::from_poly(Poly::from_ints(n))
    }

    fn li1_op() -> DiffOp {
        DiffOp::new(Basis::D, vec![c(&[0]), c(&[-1]), c(&[1, -1])])
    }

    #[test]
    fn apply_examples() {
        let f = TruncatedSeries::new(vec![int(1), int(1), int(1)]);
        let r = apply_operator(&DiffOp::d(), &f).unwrap();
        assert_eq!(r, TruncatedSeries::new(vec![int(1), int(2)]));

        let li1 = TruncatedSeries::from_fn(15, |n| {
            if n == 0 {
                BigRat::zero()
            } else {
                rat(1, n as i64)
            }
        });
        let r = apply_operator(&li1_op(), &li1).unwrap();
        assert_eq!(r.trunc_order(), 13);
        assert!(r.is_zero());

        let k = TruncatedSeries::new(vec![int(5), int(0), int(0)]);
        assert!(apply_operator(&DiffOp::theta(), &k).unwrap().is_zero());
    }

    #[test]
    fn pole_at_origin_is_reported() {
        let l = DiffOp::new(
            Basis::D,
            vec![RatFn::new(Poly::one(), Poly::from_ints(&[0, 1]))],
        );
        let f = TruncatedSeries::new(vec![int(1), int(1)]);
        assert_eq!(apply_operator(&l, &f), Err(Error::PoleAtOrigin));
        let g = TruncatedSeries::new(vec![int(0), int(1), int(1)]);
        let r = apply_operator(&l, &g).unwrap();
        assert_eq!(r, TruncatedSeries::new(vec![int(1), int(1)]));
    }

    #[test]
    fn power_examples() {
        let t3 = DiffOp::new(Basis::Theta, vec![c(&[-3]), c(&[1])]);
        assert_eq!(apply_to_power(&t3, 3, 1).1[0], int(0));
        let t2 = DiffOp::new(Basis::Theta, vec![c(&[-2]), c(&[0]), c(&[1])]);
        assert_eq!(apply_to_power(&t2, 1, 1).1[0], int(-1));
        // theta(theta + c - 1) - z(theta + a)(theta + b) with a = b = 1/2, c = 1
        let h = DiffOp::new(
            Basis::Theta,
            vec![
                RatFn::from_poly(Poly::new(vec![int(0), rat(-1, 4)])),
                RatFn::from_poly(Poly::new(vec![int(0), int(-1)])),
                RatFn::from_poly(Poly::new(vec![int(1), int(-1)])),
            ],
        );
        assert_eq!(apply_to_power(&h, 0, 1).1[0], int(0));
    }

    #[test]
    fn ordinary_bases() {
        let d2 = DiffOp::monomial(Basis::D, RatFn::one(), 2);
        let b = ordinary_series_basis(&d2, 6).unwrap();
        assert_eq!(b[0].to_poly(), Poly::one());
        assert_eq!(b[1].to_poly(), Poly::z());

        let dm1 = DiffOp::new(Basis::D, vec![c(&[-1]), c(&[1])]);
        let e = &ordinary_series_basis(&dm1, 8).unwrap()[0];
        let mut fact = BigRat::one();
        for k in 0..8 {
            if k > 0 {
                fact /= int(k as i64);
            }
            assert_eq!(e.coeff(k), &fact);
        }

        let b = ordinary_series_basis(&li1_op(), 12).unwrap();
        assert_eq!(b[0].to_poly(), Poly::one());
        for k in 1..12 {
            assert_eq!(b[1].coeff(k), &rat(1, k as i64));
        }

        let t2 = DiffOp::new(Basis::Theta, vec![c(&[-2]), c(&[0]), c(&[1])]);
        assert_eq!(ordinary_series_basis(&t2, 4), Err(Error::NotOrdinaryPoint));
    }
}
