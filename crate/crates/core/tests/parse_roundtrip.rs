mod common;

use common::operator;
use gop_core::catalog;
use gop_core::cli::parse::{parse_ratfn, print_ratfn};
use gop_core::cli::{parse_operator, print_operator};
use gop_core::diffop::Basis;
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn printed_operators_parse_back(
        l in (prop_oneof![Just(Basis::D), Just(Basis::Theta)], 0usize..=3)
            .prop_flat_map(|(b, n)| operator(b, n, 3, 2))
    ) {
        let text = print_operator(&l);
        let back = parse_operator(&text).unwrap();
        // a scalar carries no basis in its printed form
        if l.order() == 0 {
            prop_assert_eq!(back.coeffs(), l.coeffs(), "{}", text);
        } else {
            prop_assert_eq!(back, l, "{}", text);
        }
    }

    #[test]
    fn printed_ratfns_parse_back(f in common::ratfn(4, 3)) {
        prop_assert_eq!(parse_ratfn(&print_ratfn(&f)).unwrap(), f);
    }
}

#[test]
fn catalog_operators_round_trip() {
    for e in catalog::list() {
        let text = print_operator(&e.operator);
        assert_eq!(
            parse_operator(&text).unwrap(),
            e.operator,
            "{}: {text}",
            e.id
        );
    }
}
