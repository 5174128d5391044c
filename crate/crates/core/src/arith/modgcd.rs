//! Modular gcd of integer polynomials (Brown's dense algorithm): gcds modulo
//! word-sized primes are combined by CRT until the lifted candidate divides
//! both inputs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::FpPoly;
use super::poly::Poly;
use super::rational::is_prime;

fn modulus_pool() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while v.len() < 2048 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

fn reduce(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(
        p,
        a.iter()
            .map(|c| u64::try_from(c.mod_floor(&pb)).expect("residue"))
            .collect(),
    )
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Primitive gcd with positive leading coefficient of two nonzero primitive
/// integer polynomials.
pub fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len() <= 1 || b.len() <= 1 {
        return vec![BigInt::one()];
    }
    let la = a.last().expect("nonzero");
    let lb = b.last().expect("nonzero");
    let lc_gcd = la.gcd(lb);
    let pa = Poly::from_bigints(a);
    let pb = Poly::from_bigints(b);

    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<Vec<BigInt>> = None;

    for &p in modulus_pool() {
        let pbig = BigInt::from(p);
        if (la % &pbig).is_zero() || (lb % &pbig).is_zero() {
            continue;
        }
        let g = reduce(a, p).gcd(&reduce(b, p));
        let d = g.degree().expect("gcd of nonzero polys");
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > best_deg {
            continue;
        }
        let scale = u64::try_from(lc_gcd.mod_floor(&pbig)).expect("residue");
        let g = g.scale(scale);
        let image: Vec<BigInt> = (0..=d)
            .map(|i| BigInt::from(g.coeffs().get(i).copied().unwrap_or(0)))
            .collect();
        if d < best_deg {
            best_deg = d;
            acc = image;
            modulus = pbig;
            last_candidate = None;
        } else {
            // CRT: x = acc mod modulus, x = image mod p.
            let inv = BigInt::from(super::fp::inv_mod(
                u64::try_from(modulus.mod_floor(&pbig)).expect("residue"),
                p,
            ));
            for (x, r) in acc.iter_mut().zip(image.iter()) {
                let t = ((r - &*x) * &inv).mod_floor(&pbig);
                *x += &modulus * t;
            }
            modulus *= &pbig;
        }
        let candidate = primitive(acc.iter().map(|c| symmetric(c, &modulus)).collect());
        if last_candidate.as_ref() == Some(&candidate) {
            let cand_poly = Poly::from_bigints(&candidate);
            if cand_poly.divides(&pa) && cand_poly.divides(&pb) {
                return candidate;
            }
        }
        last_candidate = Some(candidate);
    }
    panic!("modular gcd exhausted its prime pool");
}
