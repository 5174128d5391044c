mod common;

use common::{nonzero_int_poly, rat_poly, ratfn};
use gop_core::arith::rational::{int, ln_bigint, BigRat};
use gop_core::arith::valuation::{
    accolade, gauss_valuation, kummer_vp_factorial, lcm_upto, series_gauss_valuation, GaussVal,
};
use gop_core::arith::{Poly, RatFn};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

const PRIMES: [u64; 3] = [2, 3, 5];

fn factorial(n: usize) -> BigRat {
    BigRat::from_integer((1..=n).fold(BigInt::one(), |a, k| a * k))
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn gauss_valuation_is_a_valuation(f in ratfn(3, 2), g in ratfn(3, 2)) {
        for p in PRIMES {
            let (vf, vg) = (gauss_valuation(&f, p), gauss_valuation(&g, p));
            prop_assert_eq!(gauss_valuation(&(&f * &g), p), vf + vg);
            prop_assert!(gauss_valuation(&(&f + &g), p) >= vf.min(vg));
        }
    }

    /// Denominators with a unit constant term have no pole in the closed
    /// unit disk; the Taylor coefficients then reach the Gauss valuation.
    #[test]
    fn taylor_coefficients_attain_gauss_valuation(
        num in rat_poly(3).prop_filter("nonzero", |p| !p.is_zero()),
        tail in prop::collection::vec(-6i64..=6, 0..3),
        d0 in 1i64..=12,
        pi in 0usize..3,
    ) {
        let p = PRIMES[pi];
        prop_assume!(d0 % p as i64 != 0);
        let mut dc = vec![d0];
        dc.extend(tail);
        let f = RatFn::new(num, Poly::from_ints(&dc));
        let sv = series_gauss_valuation(&f.taylor(50), p);
        prop_assert_eq!(sv, gauss_valuation(&f, p));
    }

    #[test]
    fn accolade_monotone_and_bounded(s in 1u64..60, m in 0u64..6, pi in 0usize..3) {
        let p = PRIMES[pi];
        let v = |s, m| accolade(s, m, p).finite().unwrap();
        // larger s or m can only make {s, m}_p bigger
        prop_assert!(v(s + 1, m) <= v(s, m));
        prop_assert!(v(s, m + 1) <= v(s, m));
        if p > s {
            prop_assert_eq!(v(s, m), 0);
        } else {
            let log_abs = -(v(s, m) as f64) * (p as f64).ln();
            prop_assert!(log_abs <= m as f64 * (s as f64).ln() + 1e-12);
        }
    }

    #[test]
    fn derivatives_contract_divided_by_factorial(f in ratfn(3, 2), s in 1usize..=10) {
        let mut d = f.clone();
        for _ in 0..s {
            d = d.derivative();
        }
        let scaled = d.scale(&(BigRat::one() / factorial(s)));
        for p in PRIMES {
            prop_assert!(gauss_valuation(&scaled, p) >= gauss_valuation(&f, p));
        }
    }

    #[test]
    fn polynomial_valuation_of_content(c in nonzero_int_poly(4, 30), k in 0u32..4) {
        for p in PRIMES {
            let scaled = c.scale(&int((p as i64).pow(k)));
            let v0 = gauss_valuation(&RatFn::from_poly(c.clone()), p).finite().unwrap();
            prop_assert_eq!(
                gauss_valuation(&RatFn::from_poly(scaled), p),
                GaussVal::Finite(v0 + k as i64)
            );
        }
    }
}

#[test]
fn kummer_agrees_with_legendre() {
    for p in [2u64, 3, 5, 7] {
        for n in 0..=1000u64 {
            let mut legendre = 0;
            let mut q = p;
            while q <= n {
                legendre += n / q;
                q *= p;
            }
            assert_eq!(kummer_vp_factorial(n, p), legendre, "n = {n}, p = {p}");
        }
    }
}

#[test]
fn lcm_growth_at_one_hundred() {
    let r = ln_bigint(&lcm_upto(100)) / 100.0;
    assert!((0.90..=1.05).contains(&r), "log lcm(1..100)/100 = {r}");
}
