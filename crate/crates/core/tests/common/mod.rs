//! Shared proptest strategies: small polynomials, rational functions and
//! operators with bounded degrees so exact arithmetic stays cheap.
#![allow(dead_code)]

use gop_core::arith::rational::{rat, BigRat};
use gop_core::arith::{Poly, RatFn};
use gop_core::diffop::{Basis, DiffOp};
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = BigRat> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

pub fn nonzero_int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    int_poly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rat_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(Poly::new)
}

pub fn ratfn(num_deg: usize, den_deg: usize) -> impl Strategy<Value = RatFn> {
    (rat_poly(num_deg), nonzero_int_poly(den_deg, 6)).prop_map(|(n, d)| RatFn::new(n, d))
}

pub fn nonzero_ratfn(num_deg: usize, den_deg: usize) -> impl Strategy<Value = RatFn> {
    ratfn(num_deg, den_deg).prop_filter("nonzero", |f| !f.is_zero())
}

/// Operator of order exactly `order` (nonzero leading coefficient).
pub fn operator(
    basis: Basis,
    order: usize,
    num_deg: usize,
    den_deg: usize,
) -> impl Strategy<Value = DiffOp> {
    (
        prop::collection::vec(ratfn(num_deg, den_deg), order),
        nonzero_ratfn(num_deg, den_deg),
    )
        .prop_map(move |(mut c, lead)| {
            c.push(lead);
            DiffOp::new(basis, c)
        })
}

/// Operator with polynomial coefficients of order exactly `order`.
pub fn poly_operator(basis: Basis, order: usize, max_deg: usize) -> impl Strategy<Value = DiffOp> {
    (
        prop::collection::vec(int_poly(max_deg, 5), order),
        nonzero_int_poly(max_deg, 5),
    )
        .prop_map(move |(mut c, lead)| {
            c.push(lead);
            DiffOp::from_polys(basis, c)
        })
}

/// Fixed case count, no regression files written into the source tree.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
