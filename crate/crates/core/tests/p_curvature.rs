mod common;

use common::{poly_operator, ratfn, small_rat};
use gop_core::arith::rational::primes_in;
use gop_core::catalog::{self, order1_g_operator};
use gop_core::cli::print_operator;
use gop_core::diffop::gs::gs_sequence_direct;
use gop_core::diffop::{Basis, DiffOp, RatMat};
use gop_core::local::{fuchs_test, Location};
use gop_core::pcurv::{
    gs_sequence_mod_p, is_nilpotent, katz_honda_check, operator_nilpotence_by_division,
    p_curvature, reduce_system,
};
use num_traits::Zero;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

fn system2() -> impl Strategy<Value = RatMat> {
    prop::collection::vec(ratfn(2, 1), 4)
        .prop_map(|e| RatMat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()]))
}

fn catalog_operators() -> Vec<DiffOp> {
    catalog::list().into_iter().map(|e| e.operator).collect()
}

/// Matrix test on the companion system, or None at a bad prime.
fn matrix_nilpotent(l: &DiffOp, p: u64) -> Option<bool> {
    let g = l.companion().ok()?;
    p_curvature(&g, p).ok().map(|m| is_nilpotent(&m).0)
}

fn katz_honda_holds(l: &DiffOp, p: u64) {
    let regular_at_zero = fuchs_test(l, &Location::Finite(Zero::zero())).0;
    if regular_at_zero && matrix_nilpotent(l, p) == Some(true) {
        if let Ok(split) = katz_honda_check(l, p) {
            assert!(split, "{} at p = {p}", print_operator(l));
        }
    }
}

proptest! {
    #![proptest_config(common::config(32))]

    #[test]
    fn reduction_commutes_with_recurrence(g in system2(), pi in 0usize..4) {
        let p = SMALL_PRIMES[pi];
        let Ok(gbar) = reduce_system(&g, p) else { return Ok(()) };
        let s_max = 12;
        let exact = gs_sequence_direct(&g, s_max);
        let modp = gs_sequence_mod_p(&gbar, s_max);
        for (a, b) in exact.iter().zip(&modp) {
            prop_assert_eq!(&reduce_system(a, p).unwrap(), b);
        }
    }

    #[test]
    fn multiples_of_p_are_powers(g in system2(), pi in 0usize..3) {
        let p = SMALL_PRIMES[pi];
        let Ok(gbar) = reduce_system(&g, p) else { return Ok(()) };
        let seq = gs_sequence_mod_p(&gbar, 3 * p as usize);
        let gp = &seq[p as usize - 1];
        for k in 1..=3 {
            prop_assert_eq!(&seq[k * p as usize - 1], &gp.pow(k));
        }
    }

    #[test]
    fn matrix_and_division_tests_agree(
        l in (1usize..=3).prop_flat_map(|n| poly_operator(Basis::D, n, 2)),
        pi in 0usize..4,
    ) {
        let p = SMALL_PRIMES[pi];
        if let (Some(a), Ok(b)) = (matrix_nilpotent(&l, p), operator_nilpotence_by_division(&l, p)) {
            prop_assert_eq!(a, b);
        }
    }

    /// First-order operators with rational residues are nilpotent at every
    /// good prime, so they exercise the Katz-Honda direction.
    #[test]
    fn katz_honda_on_order_one(
        residues in prop::collection::vec(small_rat(), 1..=3),
        poles in prop::collection::vec(-3i64..=3, 3),
        pi in 0usize..4,
    ) {
        let mut ps: Vec<_> = poles.into_iter().take(residues.len()).collect();
        ps.sort();
        ps.dedup();
        prop_assume!(ps.len() == residues.len());
        let ps: Vec<_> = ps.into_iter().map(gop_core::arith::rational::int).collect();
        let l = order1_g_operator(&residues, &ps).unwrap();
        katz_honda_holds(&l, SMALL_PRIMES[pi]);
    }
}

#[test]
fn catalog_matrix_and_division_agree() {
    for l in catalog_operators() {
        for p in primes_in(2, 20) {
            if let (Some(a), Ok(b)) = (
                matrix_nilpotent(&l, p),
                operator_nilpotence_by_division(&l, p),
            ) {
                assert_eq!(a, b, "{} at p = {p}", print_operator(&l));
            }
        }
    }
}

#[test]
fn catalog_katz_honda() {
    for l in catalog_operators() {
        for p in primes_in(2, 20) {
            katz_honda_holds(&l, p);
        }
    }
}

#[test]
fn catalog_relation_at_multiples_of_p() {
    for e in catalog::list() {
        let g = e.system();
        for p in primes_in(2, 20) {
            let Ok(gbar) = reduce_system(&g, p) else {
                continue;
            };
            let seq = gs_sequence_mod_p(&gbar, 3 * p as usize);
            let gp = &seq[p as usize - 1];
            for k in 1..=3 {
                assert_eq!(&seq[k * p as usize - 1], &gp.pow(k), "{} at p = {p}", e.id);
            }
        }
    }
}
