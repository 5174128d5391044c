mod common;

use common::{int_poly, nonzero_int_poly, nonzero_ratfn, poly_operator};
use gop_core::arith::rational::{int, BigRat};
use gop_core::arith::Poly;
use gop_core::diffop::{apply_to_power, Basis, DiffOp};
use gop_core::local::{exponents, indicial_polynomial, Location};
use num_traits::Zero;
use proptest::prelude::*;

/// Theta-basis operator with polynomial coefficients whose leading
/// coefficient does not vanish at 0, so 0 is a regular singular point.
fn theta_regular(max_order: usize) -> impl Strategy<Value = DiffOp> {
    (1usize..=max_order)
        .prop_flat_map(|n| poly_operator(Basis::Theta, n, 2))
        .prop_filter("lead(0) != 0", |l| !l.lead().num().coeff(0).is_zero())
}

fn zero() -> Location {
    Location::Finite(BigRat::zero())
}

fn sorted(mut v: Vec<BigRat>) -> Vec<BigRat> {
    v.sort();
    v
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn indicial_of_product(m in theta_regular(2), l in theta_regular(2)) {
        let pm = indicial_polynomial(&m, &zero()).unwrap();
        let pl = indicial_polynomial(&l, &zero()).unwrap();
        let pml = indicial_polynomial(&m.mul(&l), &zero()).unwrap();
        prop_assert_eq!(pml.monic(), (&pm * &pl).monic());
    }

    #[test]
    fn left_factor_keeps_exponents(
        l in (1usize..=3).prop_flat_map(|n| poly_operator(Basis::D, n, 2)),
        r in nonzero_ratfn(2, 2),
        a in -2i64..=2,
    ) {
        let scaled = l.left_scale(&r);
        for loc in [Location::Finite(int(a)), Location::Infinity] {
            prop_assert_eq!(exponents(&scaled, &loc), exponents(&l, &loc));
        }
    }

    #[test]
    fn power_action_matches_indicial(l in theta_regular(3)) {
        let phi = indicial_polynomial(&l, &zero()).unwrap().monic();
        let a0 = l.lead().num().coeff(0);
        for s in -3i64..=3 {
            let (m, c) = apply_to_power(&l, s, 1);
            prop_assert_eq!(m, 0);
            prop_assert_eq!(&c[0], &(&a0 * &phi.eval(&int(s))));
        }
    }

    #[test]
    fn ordinary_finite_points(
        l in (1usize..=3).prop_flat_map(|n| poly_operator(Basis::D, n, 2)),
        a in -3i64..=3,
    ) {
        let lead = l.lead().num().clone();
        prop_assume!(!lead.eval(&int(a)).is_zero());
        let n = l.order() as i64;
        let (e, rest) = exponents(&l, &Location::Finite(int(a))).unwrap();
        prop_assert!(rest.is_empty());
        prop_assert_eq!(sorted(e), (0..n).map(int).collect::<Vec<_>>());
    }

    /// D-basis coefficients B_j with deg B_j - j < deg B_n - n make infinity
    /// ordinary in the sense that 1, z, ..., z^(n-1) are formal solutions.
    #[test]
    fn ordinary_infinity(
        n in 1usize..=3,
        lead in nonzero_int_poly(2, 5),
        lower in prop::collection::vec(int_poly(4, 5), 3),
    ) {
        let d = lead.degree().unwrap();
        let mut c: Vec<Poly> = (0..n)
            .map(|j| {
                let len = d + j;
                if len <= n { Poly::zero() } else { lower[j].truncate(len - n) }
            })
            .collect();
        c.push(lead);
        let l = DiffOp::from_polys(Basis::D, c);
        let (e, rest) = exponents(&l, &Location::Infinity).unwrap();
        prop_assert!(rest.is_empty());
        prop_assert_eq!(sorted(e), (0..n as i64).map(|k| int(k - n as i64 + 1)).collect::<Vec<_>>());
    }
}
