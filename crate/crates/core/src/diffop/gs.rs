//! The derivative matrices G_s of a system y' = G y: y^(s) = G_s y with
//! G_1 = G and G_{s+1} = G_s G + G_s'.
//!
//! Internally the tower is carried denominator-free: with T a polynomial
//! such that T G is polynomial, H_s = T^s G_s satisfies
//! H_1 = T G, H_{s+1} = H_s (T G) + T H_s' - s T' H_s.

use super::matrix::RatMat;
use crate::arith::rational::int;
use crate::arith::{Poly, RatFn};

/// Monic lcm of the entry denominators.
pub fn denominator_lcm(g: &RatMat) -> Poly {
    let mut l = Poly::one();
    for c in g.entries() {
        let gg = l.gcd(c.den());
        l = (&l * c.den()).exact_div(&gg);
    }
    l
}

/// Polynomial n x n matrix stored row-major.
pub type PolyMat = Vec<Poly>;

#[derive(Clone, Debug)]
pub struct GsTower {
    n: usize,
    t: Poly,
    /// h[s - 1] = T^s G_s
    h: Vec<PolyMat>,
}

fn polymat_mul(a: &PolyMat, b: &PolyMat, n: usize) -> PolyMat {
    let mut out = vec![Poly::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] = &out[i * n + j] + &(x * y);
                }
            }
        }
    }
    out
}

impl GsTower {
    /// Build H_1..H_{s_max} for a T with T G polynomial.
    pub fn with_t(g: &RatMat, t: Poly, s_max: usize) -> Self {
        let n = g.dim();
        let a: PolyMat = g
            .entries()
            .iter()
            .map(|c| {
                let x = c * &RatFn::from_poly(t.clone());
                assert!(x.is_polynomial(), "T G must be polynomial");
                x.num().clone()
            })
            .collect();
        let dt = t.derivative();
        let mut h = Vec::with_capacity(s_max);
        if s_max >= 1 {
            h.push(a.clone());
        }
        for s in 1..s_max {
            let prev: &PolyMat = &h[s - 1];
            let mut next = polymat_mul(prev, &a, n);
            let ss = int(s as i64);
            for (k, x) in next.iter_mut().enumerate() {
                let hk = &prev[k];
                if hk.is_zero() {
                    continue;
                }
                let term = &(&t * &hk.derivative()) - &(&dt * hk).scale(&ss);
                *x = &*x + &term;
            }
            h.push(next);
        }
        GsTower { n, t, h }
    }

    pub fn new(g: &RatMat, s_max: usize) -> Self {
        Self::with_t(g, denominator_lcm(g), s_max)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> &Poly {
        &self.t
    }

    pub fn s_max(&self) -> usize {
        self.h.len()
    }

    /// T^s G_s (s >= 1).
    pub fn h(&self, s: usize) -> &PolyMat {
        &self.h[s - 1]
    }

    /// G_s in lowest terms.
    pub fn g(&self, s: usize) -> RatMat {
        let ts = self.t.pow(s);
        let rows = self.h[s - 1]
            .chunks(self.n)
            .map(|r| {
                r.iter()
                    .map(|x| {
                        if x.is_zero() {
                            RatFn::zero()
                        } else {
                            RatFn::new(x.clone(), ts.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        RatMat::from_rows(rows)
    }
}

/// [G_1, ..., G_{s_max}], each reduced to lowest terms.
pub fn gs_sequence(g: &RatMat, s_max: usize) -> Vec<RatMat> {
    let tower = GsTower::new(g, s_max);
    (1..=s_max).map(|s| tower.g(s)).collect()
}

/// Direct recurrence in the field, used as a reference path.
pub fn gs_sequence_direct(g: &RatMat, s_max: usize) -> Vec<RatMat> {
    let mut out: Vec<RatMat> = Vec::with_capacity(s_max);
    if s_max == 0 {
        return out;
    }
    out.push(g.clone());
    for s in 1..s_max {
        let prev = &out[s - 1];
        let next = prev.mul(g).add(&prev.derivative());
        out.push(next);
    }
    out
}

pub fn is_polynomial_matrix(m: &RatMat) -> bool {
    m.entries()
        .iter()
        .all(|c| c.is_polynomial() || c.num().is_zero())
}
