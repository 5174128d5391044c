//! Indicial data at the roots of a squarefree polynomial without rational
//! roots, computed in Q[y]/(f) and pushed down to Q by a norm.

use crate::arith::linalg::poly_det;
use crate::arith::{Poly, RatFn};

/// Split the classes until each one divides every polynomial in `by` with a
/// single multiplicity across its roots.
pub fn refine_coprime(classes: Vec<Poly>, by: &[Poly]) -> Vec<Poly> {
    let mut pieces = classes;
    for h in by {
        if h.is_zero() {
            continue;
        }
        pieces = pieces
            .into_iter()
            .flat_map(|g| split(g, h.clone()))
            .collect();
    }
    pieces
}

fn split(g: Poly, h: Poly) -> Vec<Poly> {
    if g.is_constant() {
        return Vec::new();
    }
    let t = g.gcd(&h);
    if t.is_constant() {
        return vec![g];
    }
    if t.degree() == g.degree() {
        return split(g.clone(), h.exact_div(&g));
    }
    let rest = g.exact_div(&t);
    let mut out = split(t, h.clone());
    out.extend(split(rest, h));
    out
}

fn reduce(p: &Poly, f: &Poly) -> Poly {
    p.div_rem(f).1
}

/// Norm over Q of phi(x, y) = sum_i a_i(y) x(x-1)...(x-n+i+1) with
/// a_i = lim (z - alpha)^i B_i / B_0 at a root alpha of f. `b[k]` is the
/// coefficient of D^k. The result is the product of phi(x, alpha) over the
/// roots of f, computed as the determinant of multiplication by phi on
/// Q[y]/(f).
pub fn indicial_norm(b: &[Poly], f: &Poly) -> Poly {
    let n = b.len() - 1;
    let d = f.degree().expect("nonconstant class");
    let fp_inv = f.derivative().inverse_mod(f).expect("squarefree class");
    let mut a: Vec<Poly> = vec![Poly::one()];
    for i in 1..=n {
        let bi = &b[n - i];
        if bi.is_zero() {
            a.push(Poly::zero());
            continue;
        }
        let r = RatFn::new(bi.clone(), b[n].clone());
        let e = r.pole_order_along(f);
        if e < i as i64 {
            a.push(Poly::zero());
            continue;
        }
        // h = r f^i has no pole along f
        let h = &r * &RatFn::from_poly(f.pow(i));
        let den_inv = h.den().inverse_mod(f).expect("coprime denominator");
        let val = reduce(&(&reduce(h.num(), f) * &den_inv), f);
        a.push(reduce(&(&val * &fp_inv.pow(i)), f));
    }
    // phi as a polynomial in x with coefficients in Q[y]/(f)
    let mut phi_x: Vec<Poly> = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (k, c) in Poly::falling(n - i).coeffs().iter().enumerate() {
            if phi_x.len() <= k {
                phi_x.resize(k + 1, Poly::zero());
            }
            phi_x[k] = &phi_x[k] + &ai.scale(c);
        }
    }
    // Multiplication matrix: column c holds y^c * phi reduced mod f.
    let mut m = vec![vec![Poly::zero(); d]; d];
    for col in 0..d {
        let yc = Poly::monomial(num_traits::One::one(), col);
        for (k, ck) in phi_x.iter().enumerate() {
            let prod = reduce(&(&yc * ck), f);
            for (row, v) in prod.coeffs().iter().enumerate() {
                let xk = Poly::monomial(v.clone(), k);
                m[row][col] = &m[row][col] + &xk;
            }
        }
    }
    poly_det(m).monic()
}
