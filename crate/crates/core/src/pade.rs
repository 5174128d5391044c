//! Type-II Padé approximants for vectors of truncated series, the derived
//! tower P_m = (T^m/m!)(D - G)^m P, the Shidlovskii matrix and its
//! determinant, and checks of the identities used along the way.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::linalg::{kernel, poly_det};
use crate::arith::rational::{lcm_denominators, ln_bigint, BigRat};
use crate::arith::{Poly, RatFn};
use crate::diffop::gs::gs_sequence_direct;
use crate::diffop::{RatMat, TruncatedSeries};
use crate::error::{Error, Result};
use crate::growth::minimal_t;

/// Q and P with ord(Q f_i - P_i) >= N + M.
#[derive(Clone, Debug, PartialEq)]
pub struct PadeApprox {
    pub q: Poly,
    pub p: Vec<Poly>,
    /// Coefficient indices whose vanishing was imposed on every Q f_i.
    pub imposed_up_to: usize,
    pub siegel: SiegelReport,
}

/// The Siegel-lemma height bound for the linear system (with c1 = 1) next
/// to the height of the vector actually returned. Informational only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiegelReport {
    pub unknowns: usize,
    pub equations: usize,
    pub log_a: f64,
    /// log of (unknowns * A)^{equations / (unknowns - equations)}; None when
    /// the system is not underdetermined.
    pub log_bound: Option<f64>,
    pub log_height_q: f64,
}

fn integer_rows(
    f: &[TruncatedSeries],
    n: usize,
    ks: std::ops::RangeInclusive<usize>,
) -> Vec<Vec<BigRat>> {
    let mut rows = Vec::new();
    for fi in f {
        let d = BigRat::from_integer(lcm_denominators(fi.coeffs().iter().take(ks.end() + 1)));
        for k in ks.clone() {
            let row: Vec<BigRat> = (0..=n)
                .map(|j| {
                    if j <= k {
                        fi.coeff(k - j) * &d
                    } else {
                        BigRat::zero()
                    }
                })
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

fn primitive_vector(v: &[BigRat]) -> Vec<BigInt> {
    let l = lcm_denominators(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRat::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    // lowest nonzero coefficient positive
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        g = -g;
    }
    ints.iter().map(|x| x / &g).collect()
}

/// Nonzero integer Q of degree <= N with ord(Q f_i - P_i) >= N + M, P_i the
/// degree-N truncation of Q f_i. When the imposed conditions leave more than
/// one direction, further coefficients are imposed while a solution survives
/// and the series allow it; the first reduced-echelon kernel vector is then
/// taken.
pub fn pade_type2(f: &[TruncatedSeries], n: usize, m: usize) -> Result<PadeApprox> {
    let needed = n + m;
    let available = f.iter().map(|s| s.trunc_order()).min().unwrap_or(needed);
    if available < needed {
        return Err(Error::InsufficientTruncation { needed, available });
    }
    let mut end = needed - 1;
    let base = if end > n {
        integer_rows(f, n, n + 1..=end)
    } else {
        Vec::new()
    };
    let mut ker = kernel(&base, n + 1);
    if ker.is_empty() {
        return Err(Error::NoSolution);
    }
    let equations = base.len();
    let mut rows = base.clone();
    while ker.len() > 1 && end + 1 < available {
        let extra = integer_rows(f, n, end + 1..=end + 1);
        let mut trial = rows.clone();
        trial.extend(extra);
        let k2 = kernel(&trial, n + 1);
        if k2.is_empty() {
            break;
        }
        rows = trial;
        ker = k2;
        end += 1;
    }
    let q = Poly::from_bigints(&primitive_vector(&ker[0]));
    let p = f
        .iter()
        .map(|fi| fi.mul_poly(&q).truncate(n + 1).to_poly())
        .collect();
    let siegel = siegel_report(&base, n + 1, equations, &q);
    Ok(PadeApprox {
        q,
        p,
        imposed_up_to: end,
        siegel,
    })
}

fn siegel_report(
    rows: &[Vec<BigRat>],
    unknowns: usize,
    equations: usize,
    q: &Poly,
) -> SiegelReport {
    let a = rows
        .iter()
        .flatten()
        .map(|x| x.numer().abs())
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let log_a = ln_bigint(&a);
    let log_bound = (unknowns > equations).then(|| {
        equations as f64 / (unknowns - equations) as f64 * ((unknowns as f64).ln() + log_a)
    });
    let h = q
        .coeffs()
        .iter()
        .map(|x| x.numer().abs())
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    SiegelReport {
        unknowns,
        equations,
        log_a,
        log_bound,
        log_height_q: ln_bigint(&h),
    }
}

/// min_i ord(Q f_i - P_i), capped at the shortest truncation (the horizon).
pub fn residual_order(q: &Poly, p: &[Poly], f: &[TruncatedSeries]) -> Result<usize> {
    let horizon = f.iter().map(|s| s.trunc_order()).min().unwrap_or(0);
    let mut best = horizon;
    for (fi, pi) in f.iter().zip(p) {
        let need = q.deg_i().max(pi.deg_i()) + 1;
        if (fi.trunc_order() as i64) < need {
            return Err(Error::InsufficientTruncation {
                needed: need as usize,
                available: fi.trunc_order(),
            });
        }
        let r = fi.mul_poly(q).truncate(horizon);
        let diff: Vec<BigRat> = (0..horizon).map(|k| r.coeff(k) - pi.coeff(k)).collect();
        if let Some(v) = diff.iter().position(|c| !c.is_zero()) {
            best = best.min(v);
        }
    }
    Ok(best)
}

fn vec_derivative(v: &[RatFn]) -> Vec<RatFn> {
    v.iter().map(|x| x.derivative()).collect()
}

/// (D - G) v
fn d_minus_g(g: &RatMat, v: &[RatFn]) -> Vec<RatFn> {
    let gv = g.mul_vec(v);
    vec_derivative(v)
        .iter()
        .zip(&gv)
        .map(|(a, b)| a - b)
        .collect()
}

/// [P_0, ..., P_{h_max}] with P_m = (T^m / m!)(D - G)^m P.
pub fn derived_tower(p: &[Poly], g: &RatMat, t: &Poly, h_max: usize) -> Vec<Vec<RatFn>> {
    let mut out = Vec::with_capacity(h_max + 1);
    let mut cur: Vec<RatFn> = p.iter().cloned().map(RatFn::from_poly).collect();
    let tf = RatFn::from_poly(t.clone());
    let mut scale = RatFn::one();
    for m in 0..=h_max {
        if m > 0 {
            cur = d_minus_g(g, &cur);
            scale = &(&scale * &tf) * &RatFn::constant(BigRat::new(BigInt::one(), BigInt::from(m)));
        }
        out.push(cur.iter().map(|x| x * &scale).collect());
    }
    out
}

/// t = max(deg T, max deg of the entries of T G).
pub fn degree_parameter(g: &RatMat, t: &Poly) -> usize {
    let tf = RatFn::from_poly(t.clone());
    g.entries()
        .iter()
        .map(|c| (c * &tf).num().deg_i().max(0) as usize)
        .max()
        .unwrap_or(0)
        .max(t.deg_i().max(0) as usize)
}

/// deg P_m <= N + t m for every tower entry (rational entries use
/// deg num - deg den).
pub fn degree_bound_holds(tower: &[Vec<RatFn>], n: usize, t: usize) -> bool {
    tower.iter().enumerate().all(|(m, pm)| {
        pm.iter()
            .all(|x| x.is_zero() || x.num().deg_i() - x.den().deg_i() <= (n + t * m) as i64)
    })
}

/// R0 with j-th column P_{j-1}, and its determinant. Rational entries are
/// handled by clearing a common denominator.
pub fn shidlovskii_matrix(tower: &[Vec<RatFn>]) -> (Vec<Vec<RatFn>>, RatFn) {
    let n = tower.first().map_or(0, |v| v.len());
    assert!(tower.len() >= n, "tower shorter than the dimension");
    let r0: Vec<Vec<RatFn>> = (0..n)
        .map(|i| (0..n).map(|j| tower[j][i].clone()).collect())
        .collect();
    let mut den = Poly::one();
    for x in r0.iter().flatten() {
        let g = den.gcd(x.den());
        den = (&den * x.den()).exact_div(&g);
    }
    let df = RatFn::from_poly(den.clone());
    let polys: Vec<Vec<Poly>> = r0
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * &df;
                    debug_assert!(y.is_polynomial());
                    y.num().clone()
                })
                .collect()
        })
        .collect();
    let det = RatFn::new(poly_det(polys), den.pow(n));
    (r0, det)
}

/// (G_s/s!) P = sum_j (-1)^j / ((s-j)! j!) D^{s-j} (D-G)^j P for 1 <= s <= s_max.
pub fn verify_similileibniz(g: &RatMat, p: &[RatFn], s_max: usize) -> bool {
    let gs = gs_sequence_direct(g, s_max);
    let n = p.len();
    let mut dg = vec![p.to_vec()];
    for j in 1..=s_max {
        let next = d_minus_g(g, &dg[j - 1]);
        dg.push(next);
    }
    let fact = |k: usize| (1..=k).fold(BigInt::one(), |a, i| a * i);
    (1..=s_max).all(|s| {
        let inv = RatFn::constant(BigRat::new(BigInt::one(), fact(s)));
        let lhs: Vec<RatFn> = gs[s - 1].mul_vec(p).iter().map(|x| x * &inv).collect();
        let mut rhs = vec![RatFn::zero(); n];
        for (j, v) in dg.iter().enumerate().take(s + 1) {
            let mut w = v.clone();
            for _ in 0..s - j {
                w = vec_derivative(&w);
            }
            let sign = if j % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let c = RatFn::constant(BigRat::new(sign, fact(s - j) * fact(j)));
            for (r, x) in rhs.iter_mut().zip(&w) {
                *r = &*r + &(x * &c);
            }
        }
        lhs == rhs
    })
}

/// Everything assembled for one series vector f with f' = G f.
#[derive(Clone, Debug, PartialEq)]
pub struct PadeSystem {
    pub n_param: usize,
    pub m_param: usize,
    pub approx: PadeApprox,
    pub f: Vec<TruncatedSeries>,
    pub t: Poly,
    pub t_param: usize,
    pub tower: Vec<Vec<RatFn>>,
    pub r0: Vec<Vec<RatFn>>,
    pub delta: RatFn,
    pub residual_order: usize,
    pub degree_bound_ok: bool,
}

impl PadeSystem {
    pub fn build(f: Vec<TruncatedSeries>, g: &RatMat, n: usize, m: usize) -> Result<Self> {
        if f.len() != g.dim() {
            return Err(Error::InvalidParameters(format!(
                "{} series for a system of dimension {}",
                f.len(),
                g.dim()
            )));
        }
        let approx = pade_type2(&f, n, m)?;
        let t = minimal_t(g);
        let t_param = degree_parameter(g, &t);
        let tower = derived_tower(&approx.p, g, &t, g.dim().saturating_sub(1).max(1));
        let degree_bound_ok = degree_bound_holds(&tower, n, t_param);
        let (r0, delta) = shidlovskii_matrix(&tower[..g.dim().max(1)]);
        let residual_order = residual_order(&approx.q, &approx.p, &f)?;
        Ok(PadeSystem {
            n_param: n,
            m_param: m,
            approx,
            f,
            t,
            t_param,
            tower,
            r0,
            delta,
            residual_order,
            degree_bound_ok,
        })
    }
}
