//! Worked examples: operators, systems and coefficient generators, plus
//! the coefficient-growth checks used on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{fmt_rat, int, ln_bigint, parse_rat, rat, BigRat};
use crate::arith::valuation::common_denominator;
use crate::arith::{Poly, RatFn};
use crate::diffop::{Basis, DiffOp, RatMat, TruncatedSeries};
use crate::error::{Error, Result};

fn z_minus(a: &BigRat) -> Poly {
    Poly::linear_root(a)
}

/// D (1 - z) D theta^{s-1}, which annihilates Li_s.
pub fn polylog_operator(s: usize) -> DiffOp {
    assert!(s >= 1);
    let d = DiffOp::d();
    let one_minus_z = DiffOp::scalar(Basis::D, RatFn::from_poly(Poly::from_ints(&[1, -1])));
    let theta = DiffOp::theta().change_basis(Basis::D);
    let mut l = d.mul(&one_minus_z).mul(&d);
    for _ in 1..s {
        l = l.mul(&theta);
    }
    l
}

/// y' = G y for y = (1, Li_1, ..., Li_s).
pub fn polylog_system(s: usize) -> RatMat {
    assert!(s >= 1);
    let n = s + 1;
    let mut g = RatMat::zero(n, &RatFn::zero());
    g.set(1, 0, RatFn::new(Poly::one(), Poly::from_ints(&[1, -1])));
    for k in 2..n {
        g.set(k, k - 1, RatFn::new(Poly::one(), Poly::z()));
    }
    g
}

fn pochhammer(a: &BigRat, m: usize) -> BigRat {
    (0..m).fold(BigRat::one(), |acc, k| acc * (a + int(k as i64)))
}

fn is_nonpositive_integer(x: &BigRat) -> bool {
    x.is_integer() && !x.is_positive()
}

/// theta (theta + b_1 - 1) ... (theta + b_{n-1} - 1) - z (theta + a_1) ... (theta + a_n).
pub fn hypergeom_operator(alphas: &[BigRat], betas: &[BigRat]) -> Result<DiffOp> {
    let n = alphas.len();
    if n == 0 || betas.len() + 1 != n {
        return Err(Error::InvalidParameters(format!(
            "need n alphas and n - 1 betas, got {} and {}",
            alphas.len(),
            betas.len()
        )));
    }
    if let Some(b) = betas.iter().find(|b| is_nonpositive_integer(b)) {
        return Err(Error::InvalidParameters(format!(
            "beta {} is a nonpositive integer",
            fmt_rat(b)
        )));
    }
    // Products of linear factors in x = theta, then attach z.
    let mut left = Poly::z();
    for b in betas {
        left = &left * &Poly::new(vec![b - int(1), int(1)]);
    }
    let mut right = Poly::one();
    for a in alphas {
        right = &right * &Poly::new(vec![a.clone(), int(1)]);
    }
    let coeffs = (0..=n)
        .map(|k| {
            let c0 = left.coeff(k);
            let c1 = -right.coeff(k);
            RatFn::from_poly(Poly::new(vec![c0, c1]))
        })
        .collect();
    Ok(DiffOp::new(Basis::Theta, coeffs))
}

/// a + b sqrt(d), with d squarefree and b = 0 for rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadParam {
    pub a: BigRat,
    pub b: BigRat,
    pub d: i64,
}

impl QuadParam {
    pub fn rational(a: BigRat) -> Self {
        QuadParam {
            a,
            b: BigRat::zero(),
            d: 2,
        }
    }

    pub fn quadratic(a: BigRat, b: BigRat, d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidParameters(format!(
                "{d} is not a squarefree radicand"
            )));
        }
        Ok(QuadParam { a, b, d })
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn is_nonpositive_integer(&self) -> bool {
        self.is_rational() && is_nonpositive_integer(&self.a)
    }
}

fn is_squarefree(d: i64) -> bool {
    let m = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= m {
        if m.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Whether alpha_i - beta_j is a natural number.
fn natural_gap(a: &QuadParam, b: &QuadParam) -> bool {
    a.b == b.b && {
        let g = &a.a - &b.a;
        g.is_integer() && !g.is_negative()
    }
}

/// Galochkin's criterion for nF(n-1)(alphas; betas): the irrational
/// parameters must pair up as (alpha_i, beta_j) with alpha_i - beta_j in N.
pub fn hypergeom_is_gfunction(alphas: &[QuadParam], betas: &[QuadParam]) -> Result<bool> {
    let all: Vec<&QuadParam> = alphas.iter().chain(betas).collect();
    let irr: Vec<&&QuadParam> = all.iter().filter(|q| !q.is_rational()).collect();
    if irr.windows(2).any(|w| w[0].d != w[1].d) {
        return Err(Error::UnsupportedParameters("mixed radicands".into()));
    }
    if all.iter().any(|q| q.is_nonpositive_integer()) {
        return Err(Error::InvalidParameters(
            "nonpositive integer parameter".into(),
        ));
    }
    if alphas.iter().any(|a| betas.contains(a)) {
        return Err(Error::InvalidParameters("alpha_i = beta_j".into()));
    }
    let ia: Vec<&QuadParam> = alphas.iter().filter(|q| !q.is_rational()).collect();
    let ib: Vec<&QuadParam> = betas.iter().filter(|q| !q.is_rational()).collect();
    if ia.len() != ib.len() {
        return Ok(false);
    }
    // Bipartite perfect matching by augmenting paths.
    let mut owner: Vec<Option<usize>> = vec![None; ib.len()];
    fn augment(
        i: usize,
        ia: &[&QuadParam],
        ib: &[&QuadParam],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..ib.len() {
            if seen[j] || !natural_gap(ia[i], ib[j]) {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, ia, ib, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..ia.len() {
        let mut seen = vec![false; ib.len()];
        if !augment(i, &ia, &ib, &mut seen, &mut owner) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// d/dz - sum_j r_j / (z - a_j).
pub fn order1_g_operator(residues: &[BigRat], poles: &[BigRat]) -> Result<DiffOp> {
    if residues.len() != poles.len() {
        return Err(Error::InvalidParameters("one residue per pole".into()));
    }
    for (i, a) in poles.iter().enumerate() {
        if poles[..i].contains(a) {
            return Err(Error::InvalidParameters(format!(
                "repeated pole {}",
                fmt_rat(a)
            )));
        }
    }
    let mut c0 = RatFn::zero();
    for (r, a) in residues.iter().zip(poles) {
        c0 = &c0 - &RatFn::new(Poly::constant(r.clone()), z_minus(a));
    }
    Ok(DiffOp::new(Basis::D, vec![c0, RatFn::one()]))
}

/// θ² − 2, whose exponents at 0 and infinity are ±√2.
pub fn counterexample_theta2_minus_2() -> DiffOp {
    DiffOp::new(
        Basis::Theta,
        vec![RatFn::constant(int(-2)), RatFn::zero(), RatFn::one()],
    )
}

/// 2(1 - z)(4 - 3z) D - (6 - 3z), with solution (4 - 3z)(1 - z)^{-3/2}.
pub fn f0_operator() -> DiffOp {
    let lead = &Poly::from_ints(&[2, -2]) * &Poly::from_ints(&[4, -3]);
    DiffOp::from_polys(Basis::D, vec![Poly::from_ints(&[-6, 3]), lead])
}

/// Closed-form coefficient rules a_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffGenerator {
    /// a_n = c
    Constant(BigRat),
    /// a_n = 1/n^s for n >= 1, a_0 = 0
    Polylog(u32),
    /// a_n = n!
    Factorial,
    /// a_n = 1/n!
    Exp,
    /// coefficients of (1 - z)^e
    Binomial(BigRat),
    /// coefficients of (4 - 3z)(1 - z)^{-3/2}
    F0,
    /// prod (alpha)_n / (prod (beta)_n n!)
    Hypergeometric {
        alphas: Vec<BigRat>,
        betas: Vec<BigRat>,
    },
}

impl CoeffGenerator {
    pub fn coeff(&self, n: usize) -> BigRat {
        match self {
            CoeffGenerator::Constant(c) => c.clone(),
            CoeffGenerator::Polylog(s) => {
                if n == 0 {
                    BigRat::zero()
                } else {
                    BigRat::new(BigInt::one(), BigInt::from(n).pow(*s))
                }
            }
            CoeffGenerator::Factorial => {
                BigRat::from_integer((1..=n).fold(BigInt::one(), |a, k| a * k))
            }
            CoeffGenerator::Exp => {
                BigRat::new(BigInt::one(), (1..=n).fold(BigInt::one(), |a, k| a * k))
            }
            CoeffGenerator::Binomial(e) => binomial_series_coeff(e, n),
            CoeffGenerator::F0 => {
                let e = rat(-3, 2);
                let c = binomial_series_coeff(&e, n) * int(4);
                if n == 0 {
                    c
                } else {
                    c - binomial_series_coeff(&e, n - 1) * int(3)
                }
            }
            CoeffGenerator::Hypergeometric { alphas, betas } => {
                let num = alphas
                    .iter()
                    .fold(BigRat::one(), |a, x| a * pochhammer(x, n));
                let mut den = betas
                    .iter()
                    .fold(BigRat::one(), |a, x| a * pochhammer(x, n));
                den *= pochhammer(&int(1), n);
                num / den
            }
        }
    }

    pub fn coeffs(&self, count: usize) -> Vec<BigRat> {
        (0..count).map(|n| self.coeff(n)).collect()
    }

    pub fn series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs(order))
    }
}

/// Coefficient of z^n in (1 - z)^e.
fn binomial_series_coeff(e: &BigRat, n: usize) -> BigRat {
    let mut c = BigRat::one();
    for k in 0..n {
        c = c * (e - int(k as i64)) / int(k as i64 + 1);
    }
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Bound C in |a_n| <= C^{n+1} and den(a_0..a_n) <= C^{n+1}.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthConstant {
    /// A rational constant, compared exactly.
    Rational(BigRat),
    /// e^x, compared through natural logarithms.
    ExpOf(f64),
}

impl GrowthConstant {
    pub fn log(&self) -> f64 {
        match self {
            GrowthConstant::Rational(c) => crate::arith::rational::ln_rat_abs(c),
            GrowthConstant::ExpOf(x) => *x,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub n_max: usize,
    pub size_ok: bool,
    pub denominator_ok: bool,
    pub passes: bool,
    /// First n where a bound fails.
    pub first_failure: Option<usize>,
    /// Smallest log C that would make every checked n pass.
    pub min_log_c: f64,
}

fn le_power(x: &BigRat, c: &GrowthConstant, e: usize) -> bool {
    match c {
        GrowthConstant::Rational(c) => {
            let p = (0..e).fold(BigRat::one(), |a, _| a * c);
            x.abs() <= p
        }
        GrowthConstant::ExpOf(l) => log_abs(x) <= l * e as f64,
    }
}

fn log_abs(x: &BigRat) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        crate::arith::rational::ln_rat_abs(x)
    }
}

pub fn gfunction_growth_check(
    g: &CoeffGenerator,
    n_max: usize,
    c: &GrowthConstant,
) -> GrowthReport {
    let mut size_ok = true;
    let mut den_ok = true;
    let mut first = None;
    let mut min_log_c: f64 = 0.0;
    let mut den = BigInt::one();
    for n in 0..=n_max {
        let a = g.coeff(n);
        den = den.lcm(a.denom());
        let dr = BigRat::from_integer(den.clone());
        let s = le_power(&a, c, n + 1);
        let d = le_power(&dr, c, n + 1);
        size_ok &= s;
        den_ok &= d;
        if (!s || !d) && first.is_none() {
            first = Some(n);
        }
        let needed = log_abs(&a).max(ln_bigint(&den)) / (n + 1) as f64;
        min_log_c = min_log_c.max(needed);
    }
    GrowthReport {
        n_max,
        size_ok,
        denominator_ok: den_ok,
        passes: size_ok && den_ok,
        first_failure: first,
        min_log_c,
    }
}

/// Whether c^n a_n is an integer for all n <= n_max.
pub fn eisenstein_check(g: &CoeffGenerator, c: u64, n_max: usize) -> bool {
    let cb = BigInt::from(c);
    let mut cn = BigInt::one();
    for n in 0..=n_max {
        if n > 0 {
            cn *= &cb;
        }
        let x = g.coeff(n) * BigRat::from_integer(cn.clone());
        if !x.is_integer() {
            return false;
        }
    }
    true
}

/// One catalog fixture.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub operator: DiffOp,
    /// Explicit first-order system when the entry has one; otherwise the
    /// companion system of the operator is used.
    pub explicit_system: Option<RatMat>,
    /// Coefficients of a power series solution at 0, when there is one.
    pub series: Option<CoeffGenerator>,
    /// Whether the operator comes from a G-function (so the arithmetic
    /// predictions apply).
    pub g_operator: bool,
}

impl CatalogEntry {
    pub fn system(&self) -> RatMat {
        self.explicit_system
            .clone()
            .unwrap_or_else(|| self.operator.companion().expect("order >= 1"))
    }
}

fn parse_list(s: &str) -> Result<Vec<BigRat>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_rat(x.trim())).collect()
}

fn entry(
    id: &str,
    description: &str,
    operator: DiffOp,
    explicit_system: Option<RatMat>,
    series: Option<CoeffGenerator>,
    g_operator: bool,
) -> CatalogEntry {
    CatalogEntry {
        id: id.into(),
        description: description.into(),
        operator,
        explicit_system,
        series,
        g_operator,
    }
}

/// Build a fixture from its id. Parametrised families:
/// `polylog:<s>`, `hypergeom:<a1,..,an>;<b1,..,b(n-1)>`, `order1:<r>@<a>,...`.
pub fn get(id: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogId(id.to_string());
    let (family, arg) = id.split_once(':').unwrap_or((id, ""));
    match family {
        "polylog" => {
            let s: usize = arg.parse().map_err(|_| unknown())?;
            if s == 0 || s > 12 {
                return Err(unknown());
            }
            let comps: Vec<String> = (1..=s).map(|k| format!("Li_{k}")).collect();
            Ok(entry(
                id,
                &format!("Li_{s}; system for (1, {})", comps.join(", ")),
                polylog_operator(s),
                Some(polylog_system(s)),
                Some(CoeffGenerator::Polylog(s as u32)),
                true,
            ))
        }
        "log" if arg.is_empty() => Ok(entry(
            id,
            "(1 - z) D^2 - D with its companion system; solutions 1 and -log(1 - z)",
            polylog_operator(1),
            None,
            Some(CoeffGenerator::Polylog(1)),
            true,
        )),
        "hypergeom" => {
            let (a, b) = arg.split_once(';').ok_or_else(unknown)?;
            let alphas = parse_list(a).map_err(|_| unknown())?;
            let betas = parse_list(b).map_err(|_| unknown())?;
            let op = hypergeom_operator(&alphas, &betas)?;
            Ok(entry(
                id,
                "generalised hypergeometric operator",
                op,
                None,
                Some(CoeffGenerator::Hypergeometric { alphas, betas }),
                true,
            ))
        }
        "order1" => {
            let mut res = Vec::new();
            let mut poles = Vec::new();
            for part in arg.split(',') {
                let (r, a) = part.split_once('@').ok_or_else(unknown)?;
                res.push(parse_rat(r.trim()).map_err(|_| unknown())?);
                poles.push(parse_rat(a.trim()).map_err(|_| unknown())?);
            }
            let op = order1_g_operator(&res, &poles)?;
            // (1 - z)^r when the only pole is 1
            let series = (poles.len() == 1 && poles[0].is_one())
                .then(|| CoeffGenerator::Binomial(res[0].clone()));
            Ok(entry(
                id,
                "first-order operator with rational residues",
                op,
                None,
                series,
                true,
            ))
        }
        "exp" if arg.is_empty() => Ok(entry(
            id,
            "D - 1; solution exp(z), not a G-function",
            DiffOp::new(Basis::D, vec![RatFn::constant(int(-1)), RatFn::one()]),
            None,
            Some(CoeffGenerator::Exp),
            false,
        )),
        "theta2m2" if arg.is_empty() => Ok(entry(
            id,
            "theta^2 - 2; exponents +-sqrt(2) at 0 and infinity",
            counterexample_theta2_minus_2(),
            None,
            None,
            false,
        )),
        "f0" if arg.is_empty() => Ok(entry(
            id,
            "2(1 - z)(4 - 3z) D - (6 - 3z); exponent -3/2 at 1, apparent singularity at 4/3",
            f0_operator(),
            None,
            Some(CoeffGenerator::F0),
            true,
        )),
        "geometric" if arg.is_empty() => Ok(entry(
            id,
            "(1 - z) D - 1; solution 1/(1 - z)",
            DiffOp::from_polys(
                Basis::D,
                vec![Poly::from_ints(&[-1]), Poly::from_ints(&[1, -1])],
            ),
            None,
            Some(CoeffGenerator::Constant(int(1))),
            true,
        )),
        _ => Err(unknown()),
    }
}

/// Ids of the fixed fixture set.
pub const CATALOG_IDS: &[&str] = &[
    "polylog:1",
    "polylog:2",
    "polylog:3",
    "log",
    "hypergeom:1/2,1/2;1",
    "hypergeom:1/3,2/3;1/2",
    "order1:1/2@1",
    "f0",
    "geometric",
    "exp",
    "theta2m2",
];

pub fn list() -> Vec<CatalogEntry> {
    CATALOG_IDS
        .iter()
        .map(|id| get(id).expect("catalog id"))
        .collect()
}

/// Coefficients of the series, for display.
pub fn common_denominator_upto(g: &CoeffGenerator, n: usize) -> BigInt {
    common_denominator(&g.coeffs(n + 1))
}
