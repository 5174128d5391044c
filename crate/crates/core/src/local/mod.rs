//! Singular points, the Fuchs criterion, indicial polynomials and
//! exponents of operators over Q(z).

mod algebraic;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::rational::{fmt_rat, int, BigRat};
use crate::arith::{Poly, RatFn};
use crate::diffop::series::{frobenius_power_series, power_action};
use crate::diffop::{Basis, DiffOp, Point};
use crate::error::{Error, Result};

pub use algebraic::refine_coprime;

/// Where a candidate singularity sits. `AlgebraicClass(f)` stands for all
/// roots of a squarefree polynomial f without rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Finite(BigRat),
    Infinity,
    AlgebraicClass(Poly),
}

impl Location {
    pub fn as_point(&self) -> Option<Point> {
        match self {
            Location::Finite(a) => Some(Point::Finite(a.clone())),
            Location::Infinity => Some(Point::Infinity),
            Location::AlgebraicClass(_) => None,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Finite(a) => write!(f, "{}", fmt_rat(a)),
            Location::Infinity => write!(f, "infinity"),
            Location::AlgebraicClass(p) => write!(f, "roots of {}", p.to_string_var("z")),
        }
    }
}

impl From<Point> for Location {
    fn from(p: Point) -> Self {
        match p {
            Point::Finite(a) => Location::Finite(a),
            Point::Infinity => Location::Infinity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub location: Location,
    pub regular: bool,
    /// (j, k) for each nonzero ratio B_j / B_0 of D-basis coefficients
    /// (B_j multiplies D^{n-j}). At finite points k is the pole order and
    /// the Fuchs bound is k <= j; at infinity k is the order of vanishing
    /// and the bound is k >= j.
    pub pole_profile: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialData {
    pub point: SingularPoint,
    /// Indicial polynomial (monic, degree n) at a rational point or at
    /// infinity; for an algebraic class, the norm of the indicial
    /// polynomial down to Q. `None` at irregular points.
    pub phi: Option<Poly>,
    /// Rational roots of phi, repeated according to multiplicity.
    pub rational_exponents: Vec<BigRat>,
    /// Monic squarefree factors of phi without rational roots, repeated
    /// according to multiplicity.
    pub nonrational_factors: Vec<Poly>,
    /// Heuristic flag: exponents are distinct nonnegative integers and a
    /// power series solution starts at each of them (tested to a finite
    /// order). Never conclusive.
    pub apparent_hint: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorProfile {
    pub operator: DiffOp,
    pub points: Vec<IndicialData>,
    pub fuchsian: bool,
    pub all_exponents_rational: bool,
    pub katz_consistent: bool,
}

/// Order of the series used for the apparent-singularity heuristic.
const APPARENT_TEST_ORDER: usize = 30;

/// Primitive polynomial D-basis coefficients B[k] of D^k.
fn d_coefficients(l: &DiffOp) -> Vec<Poly> {
    l.change_basis(Basis::D).polynomial_form()
}

fn ratios(b: &[Poly]) -> Vec<(usize, RatFn)> {
    let n = b.len() - 1;
    (1..=n)
        .filter(|j| !b[n - j].is_zero())
        .map(|j| (j, RatFn::new(b[n - j].clone(), b[n].clone())))
        .collect()
}

/// Fuchs criterion from the pole orders of B_j / B_0.
pub fn fuchs_test(l: &DiffOp, location: &Location) -> (bool, Vec<(usize, i64)>) {
    if l.order() == 0 {
        return (true, Vec::new());
    }
    let b = d_coefficients(l);
    let mut profile = Vec::new();
    let mut regular = true;
    for (j, r) in ratios(&b) {
        let (k, ok) = match location {
            Location::Finite(a) => {
                let k = -r.ord_at(a).expect("nonzero");
                (k, k <= j as i64)
            }
            Location::Infinity => {
                let k = r.ord_at_infinity().expect("nonzero");
                (k, k >= j as i64)
            }
            Location::AlgebraicClass(f) => {
                let k = r.pole_order_along(f);
                (k, k <= j as i64)
            }
        };
        regular &= ok;
        profile.push((j, k));
    }
    (regular, profile)
}

/// Regularity read off the translated theta form: every monic theta
/// coefficient is finite at u = 0.
pub fn regular_by_translation(l: &DiffOp, point: &Point) -> bool {
    let t = l.translate_to_point(point);
    t.coeffs()
        .iter()
        .all(|c| c.is_zero() || c.ord_at(&BigRat::zero()).is_some_and(|v| v >= 0))
}

/// phi(x) = sum_j A_j(0) x^j for the monic theta form L_a = sum_j A_j theta_u^j.
fn indicial_at_point(l: &DiffOp, point: &Point) -> Poly {
    let t = l.translate_to_point(point);
    let c = t
        .coeffs()
        .iter()
        .map(|a| {
            if a.is_zero() {
                BigRat::zero()
            } else {
                a.eval(&BigRat::zero()).expect("regular point")
            }
        })
        .collect();
    Poly::new(c)
}

pub fn indicial_polynomial(l: &DiffOp, location: &Location) -> Result<Poly> {
    let (regular, _) = fuchs_test(l, location);
    if !regular {
        return Err(Error::IrregularPoint(location.to_string()));
    }
    if l.order() == 0 {
        return Ok(Poly::one());
    }
    match location {
        Location::AlgebraicClass(f) => Ok(algebraic::indicial_norm(&d_coefficients(l), f)),
        _ => Ok(indicial_at_point(l, &location.as_point().expect("point"))),
    }
}

/// Rational roots of phi with multiplicity, and the remaining factors.
pub fn split_exponents(phi: &Poly) -> (Vec<BigRat>, Vec<Poly>) {
    let mut rational = Vec::new();
    for (r, m) in phi.rational_roots() {
        for _ in 0..m {
            rational.push(r.clone());
        }
    }
    let mut rest = Vec::new();
    for (f, m) in phi.nonrational_part() {
        for _ in 0..m {
            rest.push(f.clone());
        }
    }
    (rational, rest)
}

pub fn exponents(l: &DiffOp, location: &Location) -> Result<(Vec<BigRat>, Vec<Poly>)> {
    Ok(split_exponents(&indicial_polynomial(l, location)?))
}

fn apparent_hint(l: &DiffOp, a: &BigRat, rational: &[BigRat], nonrational: &[Poly]) -> bool {
    if !nonrational.is_empty() || rational.len() != l.order() || l.order() == 0 {
        return false;
    }
    let mut ints = Vec::new();
    for r in rational {
        if !r.is_integer() || r < &BigRat::zero() {
            return false;
        }
        ints.push(r.to_integer());
    }
    let mut sorted = ints.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != ints.len() {
        return false;
    }
    let t = l.translate_to_point(&Point::Finite(a.clone()));
    let exps: Vec<i64> = sorted
        .iter()
        .map(|e| i64::try_from(e).unwrap_or(i64::MAX))
        .collect();
    exps.iter().all(|&e| {
        let seed = |k: usize| {
            if k == 0 {
                BigRat::one()
            } else {
                BigRat::zero()
            }
        };
        frobenius_power_series(&t, e, &seed, APPARENT_TEST_ORDER).is_some()
    })
}

fn analyse(l: &DiffOp, location: Location) -> IndicialData {
    let (regular, pole_profile) = fuchs_test(l, &location);
    let point = SingularPoint {
        location: location.clone(),
        regular,
        pole_profile,
    };
    if !regular {
        return IndicialData {
            point,
            phi: None,
            rational_exponents: Vec::new(),
            nonrational_factors: Vec::new(),
            apparent_hint: false,
        };
    }
    let phi = indicial_polynomial(l, &location).expect("regular point");
    let (rational, rest) = split_exponents(&phi);
    let apparent = match &location {
        Location::Finite(a) => apparent_hint(l, a, &rational, &rest),
        _ => false,
    };
    IndicialData {
        point,
        phi: Some(phi),
        rational_exponents: rational,
        nonrational_factors: rest,
        apparent_hint: apparent,
    }
}

/// Candidate singular locations: rational roots of the leading D-basis
/// coefficient, coprime squarefree classes of its other roots, and infinity.
pub fn singular_locations(l: &DiffOp) -> Vec<Location> {
    let mut out = Vec::new();
    if l.order() > 0 {
        let b = d_coefficients(l);
        let lead = b.last().expect("nonzero").clone();
        for (r, _) in lead.rational_roots() {
            out.push(Location::Finite(r));
        }
        let classes: Vec<Poly> = lead
            .nonrational_part()
            .into_iter()
            .map(|(f, _)| f)
            .collect();
        for f in refine_coprime(classes, &b) {
            out.push(Location::AlgebraicClass(f));
        }
    }
    out.push(Location::Infinity);
    out
}

pub fn classify_operator(l: &DiffOp) -> OperatorProfile {
    let points: Vec<IndicialData> = singular_locations(l)
        .into_iter()
        .map(|loc| analyse(l, loc))
        .collect();
    let fuchsian = points.iter().all(|p| p.point.regular);
    let all_rational = points
        .iter()
        .all(|p| p.point.regular && p.nonrational_factors.is_empty());
    OperatorProfile {
        operator: l.clone(),
        points,
        fuchsian,
        all_exponents_rational: all_rational,
        katz_consistent: fuchsian && all_rational,
    }
}

/// phi_0 from the action on powers, for cross-checks.
pub fn indicial_from_power_action(l: &DiffOp) -> Poly {
    let (_, phi) = power_action(&l.change_basis(Basis::Theta).normalize(), 1);
    phi.into_iter().next().unwrap_or_else(Poly::zero)
}

/// Falling factorial x(x-1)...(x-k+1) evaluated at an integer.
pub fn falling_at(x: i64, k: usize) -> BigRat {
    Poly::falling(k).eval(&int(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn c(n: &[i64]) -> RatFn {
        RatFn::from_poly(Poly::from_ints(n))
    }

    fn gauss(a: BigRat, b: BigRat, cc: BigRat) -> DiffOp {
        // theta(theta + c - 1) - z(theta + a)(theta + b)
        let a0 = Poly::new(vec![int(0), -(&a * &b)]);
        let a1 = Poly::new(vec![&cc - int(1), -(&a + &b)]);
        let a2 = Poly::new(vec![int(1), int(-1)]);
        DiffOp::from_polys(Basis::Theta, vec![a0, a1, a2])
    }

    #[test]
    fn hypergeometric_points() {
        let l = gauss(rat(1, 2), rat(1, 2), int(1));
        let prof = classify_operator(&l);
        let locs: Vec<&Location> = prof.points.iter().map(|p| &p.point.location).collect();
        assert_eq!(
            locs,
            vec![
                &Location::Finite(int(0)),
                &Location::Finite(int(1)),
                &Location::Infinity
            ]
        );
        assert!(prof.fuchsian && prof.katz_consistent);
        assert_eq!(prof.points[0].rational_exponents, vec![int(0), int(0)]);
        assert_eq!(
            prof.points[2].rational_exponents,
            vec![rat(1, 2), rat(1, 2)]
        );
    }

    #[test]
    fn exp_is_irregular_at_infinity() {
        let l = DiffOp::new(Basis::D, vec![c(&[-1]), c(&[1])]);
        let (reg, _) = fuchs_test(&l, &Location::Infinity);
        assert!(!reg);
        assert!(!regular_by_translation(&l, &Point::Infinity));
        let prof = classify_operator(&l);
        assert!(!prof.fuchsian && !prof.katz_consistent);
        assert!(matches!(
            indicial_polynomial(&l, &Location::Infinity),
            Err(Error::IrregularPoint(_))
        ));
    }

    #[test]
    fn theta_squared_minus_two() {
        let l = DiffOp::new(Basis::Theta, vec![c(&[-2]), c(&[0]), c(&[1])]);
        let phi = indicial_polynomial(&l, &Location::Finite(int(0))).unwrap();
        assert_eq!(phi, Poly::from_ints(&[-2, 0, 1]));
        let (r, f) = exponents(&l, &Location::Finite(int(0))).unwrap();
        assert!(r.is_empty());
        assert_eq!(f, vec![Poly::from_ints(&[-2, 0, 1])]);
        let prof = classify_operator(&l);
        assert!(prof.fuchsian && !prof.all_exponents_rational && !prof.katz_consistent);
    }

    #[test]
    fn ordinary_point_exponents() {
        let l = DiffOp::new(Basis::D, vec![c(&[1]), c(&[0, 1]), c(&[2, 0, 1]), c(&[1])]);
        let phi = indicial_polynomial(&l, &Location::Finite(int(5))).unwrap();
        assert_eq!(phi, Poly::falling(3));
        let inf = DiffOp::new(Basis::D, vec![c(&[0]), c(&[0]), c(&[1])]);
        let phi = indicial_polynomial(&inf, &Location::Infinity).unwrap();
        assert_eq!(phi, Poly::rising(2));
    }

    #[test]
    fn f0_example_exponent() {
        // 2(1-z)(4-3z) D - (6-3z)
        let b1 = Poly::from_ints(&[4, -3]);
        let lead = &Poly::from_ints(&[2, -2]) * &b1;
        let l = DiffOp::from_polys(Basis::D, vec![Poly::from_ints(&[-6, 3]), lead]);
        let (r, _) = exponents(&l, &Location::Finite(int(1))).unwrap();
        assert_eq!(r, vec![rat(-3, 2)]);
        let prof = classify_operator(&l);
        let at43 = prof
            .points
            .iter()
            .find(|p| p.point.location == Location::Finite(rat(4, 3)))
            .unwrap();
        assert_eq!(at43.rational_exponents, vec![int(1)]);
        assert!(at43.apparent_hint);
    }

    #[test]
    fn algebraic_class() {
        // (z^2 - 2) D - 1/2 * (2z): the solution sqrt(z^2 - 2)
        let l = DiffOp::from_polys(
            Basis::D,
            vec![Poly::from_ints(&[0, -1]), Poly::from_ints(&[-2, 0, 1])],
        );
        let prof = classify_operator(&l);
        let alg = prof
            .points
            .iter()
            .find(|p| matches!(p.point.location, Location::AlgebraicClass(_)))
            .unwrap();
        assert!(alg.point.regular);
        // exponent 1/2 at both roots: norm (x - 1/2)^2
        assert_eq!(alg.rational_exponents, vec![rat(1, 2), rat(1, 2)]);
        assert!(prof.katz_consistent);
    }

    #[test]
    fn practical_formula_oracle_at_finite_points() {
        // phi(x) = falling_n(x) + sum_i a_i falling_{n-i}(x), a_i = lim (z-a)^i B_i/B_0
        let l = gauss(rat(1, 3), rat(2, 5), rat(3, 7));
        for a in [int(0), int(1)] {
            let b = l.change_basis(Basis::D).polynomial_form();
            let n = b.len() - 1;
            let mut phi = Poly::falling(n);
            for i in 1..=n {
                let r = RatFn::new(b[n - i].clone(), b[n].clone());
                let w = RatFn::from_poly(Poly::linear_root(&a)).pow(i);
                let lim = (&r * &w).eval(&a).unwrap_or_else(BigRat::zero);
                phi = &phi + &Poly::falling(n - i).scale(&lim);
            }
            let got = indicial_polynomial(&l, &Location::Finite(a)).unwrap();
            assert_eq!(got, phi);
        }
    }
}
