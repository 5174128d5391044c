mod common;

use common::int_poly;
use gop_core::arith::rational::{int, BigRat};
use gop_core::arith::{Poly, RatFn};
use gop_core::catalog::{self, polylog_system, CoeffGenerator};
use gop_core::diffop::{RatMat, TruncatedSeries};
use gop_core::growth::minimal_t;
use gop_core::pade::{
    degree_bound_holds, degree_parameter, derived_tower, pade_type2, residual_order,
    verify_similileibniz, PadeSystem,
};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

const ORDER: usize = 40;

fn one(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| int((k == 0) as i64))
}

/// (series vector, system) pairs with f' = G f.
fn fixture(k: usize) -> (Vec<TruncatedSeries>, RatMat) {
    let li = |s| CoeffGenerator::Polylog(s).series(ORDER);
    match k {
        0 => (vec![one(ORDER), li(1)], polylog_system(1)),
        1 => (vec![one(ORDER), li(1), li(2)], polylog_system(2)),
        _ => (
            vec![TruncatedSeries::from_fn(ORDER, |_| int(1))],
            RatMat::from_rows(vec![vec![RatFn::new(
                Poly::one(),
                Poly::from_ints(&[1, -1]),
            )]]),
        ),
    }
}

fn factorial(n: usize) -> BigRat {
    BigRat::from_integer((1..=n).fold(BigInt::one(), |a, k| a * k))
}

/// min_i ord(Q_m f_i - P_{m,i}) with Q_m = T^m Q^(m) / m!, capped at ORDER.
fn derived_residual(q: &Poly, t: &Poly, pm: &[RatFn], f: &[TruncatedSeries], m: usize) -> usize {
    let mut dq = q.clone();
    for _ in 0..m {
        dq = dq.derivative();
    }
    let qm = (&t.pow(m) * &dq).scale(&(BigRat::one() / factorial(m)));
    let mut best = ORDER;
    for (fi, pi) in f.iter().zip(pm) {
        let lhs = fi.mul_poly(&qm);
        let rhs = pi.taylor(ORDER);
        if let Some(k) = (0..ORDER).find(|&k| lhs.coeff(k) != &rhs[k]) {
            best = best.min(k);
        }
    }
    best
}

proptest! {
    #![proptest_config(common::config(24))]

    #[test]
    fn residual_order_and_derived_cascade(k in 0usize..3, n in 1usize..10, m in 1usize..5) {
        let (f, g) = fixture(k);
        let approx = match pade_type2(&f, n, m) {
            Ok(a) => a,
            Err(gop_core::Error::NoSolution) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(residual_order(&approx.q, &approx.p, &f).unwrap() >= n + m);
        let t = minimal_t(&g);
        let tower = derived_tower(&approx.p, &g, &t, 5);
        prop_assert!(degree_bound_holds(&tower, n, degree_parameter(&g, &t)));
        for (mm, pm) in tower.iter().enumerate() {
            let r = derived_residual(&approx.q, &t, pm, &f, mm);
            prop_assert!(r + mm >= n + m, "m = {}: residual {}", mm, r);
        }
    }

    #[test]
    fn similileibniz_on_catalog_systems(idx in 0usize..catalog::CATALOG_IDS.len(), polys in prop::collection::vec(int_poly(3, 4), 3)) {
        let g = catalog::get(catalog::CATALOG_IDS[idx]).unwrap().system();
        let p: Vec<RatFn> = (0..g.dim()).map(|i| RatFn::from_poly(polys[i % 3].clone())).collect();
        prop_assert!(verify_similileibniz(&g, &p, 6));
    }

    /// Independent log pair: the determinant survives once M exceeds
    /// (n - 1)(t + 1) = 2, with N large enough for a solution to exist.
    #[test]
    fn shidlovskii_determinant_nonzero((n, m) in (3usize..6).prop_flat_map(|m| (2 * m - 2..2 * m + 6, Just(m)))) {
        let (f, g) = fixture(0);
        let sys = PadeSystem::build(f, &g, n, m).unwrap();
        prop_assert!(!sys.delta.is_zero());
    }

    #[test]
    fn dependent_components_kill_the_determinant(n in 1usize..8, m in 1usize..5, c in 1i64..5) {
        let geo = TruncatedSeries::from_fn(ORDER, |_| int(1));
        let f = vec![geo.clone(), geo.scale(&int(c))];
        let inv = RatFn::new(Poly::one(), Poly::from_ints(&[1, -1]));
        let g = RatMat::from_rows(vec![vec![inv.clone(), RatFn::zero()], vec![RatFn::zero(), inv]]);
        match PadeSystem::build(f, &g, n, m) {
            Ok(sys) => prop_assert!(sys.delta.is_zero()),
            Err(gop_core::Error::NoSolution) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
