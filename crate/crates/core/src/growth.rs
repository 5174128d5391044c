//! Denominators and p-adic sizes of the matrices G_s / s!: the Galochkin
//! trace q_s, the size sigma, truncated generic radii, the Dwork-Robba
//! bound and the sandwich between size and radius.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::rational::{is_prime, lcm_denominators, primes_in, BigRat};
use crate::arith::valuation::{
    accolade, gauss_valuation, kummer_vp_factorial, poly_gauss_valuation, GaussVal,
};
use crate::arith::{LogValue, Poly, RatFn};
use crate::diffop::gs::{denominator_lcm, GsTower, PolyMat};
use crate::diffop::RatMat;
use crate::error::{Error, Result};

/// The polynomial T with integer coefficients and positive leading
/// coefficient: the monic lcm of the entry denominators times the least
/// positive integer making T and T G integral.
pub fn minimal_t(g: &RatMat) -> Poly {
    let l = denominator_lcm(g);
    let mut all: Vec<BigRat> = l.coeffs().to_vec();
    for c in g.entries() {
        let x = c * &RatFn::from_poly(l.clone());
        all.extend(x.num().coeffs().iter().cloned());
    }
    let k = lcm_denominators(&all);
    l.scale(&BigRat::from_integer(k))
}

fn matrix_valuation(h: &PolyMat, p: u64) -> GaussVal {
    h.iter()
        .map(|x| poly_gauss_valuation(x, p))
        .min()
        .unwrap_or(GaussVal::Infinite)
}

/// Gauss valuations of G_s and G_s / s! from the denominator-free tower.
#[derive(Clone, Debug)]
pub struct ValuationTable {
    pub tower: GsTower,
}

impl ValuationTable {
    pub fn new(g: &RatMat, s_max: usize) -> Self {
        ValuationTable {
            tower: GsTower::with_t(g, minimal_t(g), s_max),
        }
    }

    pub fn s_max(&self) -> usize {
        self.tower.s_max()
    }

    pub fn n(&self) -> usize {
        self.tower.dim()
    }

    /// v_p(G_s) for s >= 1; v_p(G_0) = v_p(I) = 0.
    pub fn v_gs(&self, s: usize, p: u64) -> GaussVal {
        if s == 0 {
            return GaussVal::Finite(0);
        }
        let vt = poly_gauss_valuation(self.tower.t(), p)
            .finite()
            .expect("T is nonzero");
        match matrix_valuation(self.tower.h(s), p) {
            GaussVal::Finite(v) => GaussVal::Finite(v - s as i64 * vt),
            GaussVal::Infinite => GaussVal::Infinite,
        }
    }

    /// v_p(G_s / s!)
    pub fn v_gs_over_fact(&self, s: usize, p: u64) -> GaussVal {
        match self.v_gs(s, p) {
            GaussVal::Finite(v) => GaussVal::Finite(v - kummer_vp_factorial(s as u64, p) as i64),
            GaussVal::Infinite => GaussVal::Infinite,
        }
    }

    /// Coefficients of T^s G_s / s!.
    fn scaled_coeffs(&self, s: usize) -> impl Iterator<Item = BigRat> + '_ {
        let f = BigRat::from_integer((1..=s).fold(BigInt::one(), |a, k| a * k));
        self.tower
            .h(s)
            .iter()
            .flat_map(|x| x.coeffs().iter().cloned())
            .map(move |c| c / &f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GalochkinTrace {
    pub t: Poly,
    pub s_values: Vec<usize>,
    /// q_s: least common denominator of the coefficients of T^m G_m / m!, m <= s.
    pub q: Vec<BigInt>,
    /// The same quantity assembled prime by prime from Gauss valuations.
    pub q_prime: Vec<BigInt>,
    pub log_q_over_s: Vec<f64>,
}

pub fn galochkin_trace(g: &RatMat, s_max: usize) -> GalochkinTrace {
    let table = ValuationTable::new(g, s_max);
    galochkin_trace_from(&table)
}

pub fn galochkin_trace_from(table: &ValuationTable) -> GalochkinTrace {
    let s_max = table.s_max();
    let mut q = Vec::with_capacity(s_max);
    let mut acc = BigInt::one();
    for s in 1..=s_max {
        let d = lcm_denominators(&table.scaled_coeffs(s).collect::<Vec<_>>());
        acc = acc.lcm(&d);
        q.push(acc.clone());
    }
    let q_prime = (1..=s_max).map(|s| q_prime_at(table, s)).collect();
    let log_q_over_s = q
        .iter()
        .enumerate()
        .map(|(i, x)| crate::arith::rational::ln_bigint(x) / (i + 1) as f64)
        .collect();
    GalochkinTrace {
        t: table.tower.t().clone(),
        s_values: (1..=s_max).collect(),
        q,
        q_prime,
        log_q_over_s,
    }
}

/// prod_p p^{max_{m <= s} max(0, -v_p(T^m G_m / m!))}. T G is integral, so
/// only primes up to s can occur.
fn q_prime_at(table: &ValuationTable, s: usize) -> BigInt {
    let mut out = BigInt::one();
    for p in primes_in(2, s as u64) {
        let mut e = 0i64;
        for m in 1..=s {
            let vh = matrix_valuation(table.tower.h(m), p);
            if let GaussVal::Finite(v) = vh {
                e = e.max(kummer_vp_factorial(m as u64, p) as i64 - v);
            }
        }
        if e > 0 {
            out *= BigInt::from(p).pow(e as u32);
        }
    }
    out
}

/// h(s, p) = max_{m <= s} log+ |G_m / m!|_p, as an exact multiple of log p.
pub fn h_s_p(table: &ValuationTable, s: usize, p: u64) -> LogValue {
    let e = (1..=s)
        .map(|m| table.v_gs_over_fact(m, p).log_plus_exponent())
        .max()
        .unwrap_or(0);
    LogValue::log_prime(p, BigRat::from_integer(BigInt::from(e)))
}

/// Primes p <= P together with the bad primes of G, i.e. those dividing the
/// content of T. Any other prime beyond s contributes nothing.
pub fn scan_primes(table: &ValuationTable, bound: u64) -> Vec<u64> {
    let mut out = primes_in(2, bound);
    let (content, _) = table.tower.t().primitive_int();
    let c = content.abs().to_integer();
    for q in crate::arith::rational::prime_factors(&c) {
        if let Some(q) = q.to_u64() {
            if q > bound {
                out.push(q);
            }
        }
    }
    out
}

/// sigma_hat = (1/s) sum_{p <= P} h(s, p).
pub fn size_estimate(table: &ValuationTable, s: usize, prime_bound: u64) -> LogValue {
    let parts: Vec<LogValue> = scan_primes(table, prime_bound)
        .par_iter()
        .map(|&p| h_s_p(table, s, p))
        .collect();
    parts
        .iter()
        .fold(LogValue::zero(), |a, b| a.add(b))
        .scale(&BigRat::new(BigInt::one(), BigInt::from(s)))
}

/// log+(1/R_p) with R_p = min_{n <= s <= s_max} |G_s/s!|^{-1/s}, i.e.
/// max(0, max_s -v_p(G_s/s!)/s) log p, without the integrality check.
fn radius_value(table: &ValuationTable, p: u64, s_max: usize) -> LogValue {
    let n = table.n().max(1);
    let mut best = BigRat::zero();
    for s in n..=s_max {
        if let GaussVal::Finite(v) = table.v_gs_over_fact(s, p) {
            let r = BigRat::new(BigInt::from(-v), BigInt::from(s));
            if r > best {
                best = r;
            }
        }
    }
    LogValue::log_prime(p, best)
}

/// Truncated Hadamard estimate of log+(1/R_p); an upper bound for the
/// true contribution at finite s_max.
pub fn radius_estimate(table: &ValuationTable, p: u64, s_max: usize) -> Result<LogValue> {
    check_good(table, p)?;
    if s_max < table.n() {
        return Err(Error::InvalidParameters(format!(
            "s_max = {s_max} is below the dimension {}",
            table.n()
        )));
    }
    Ok(radius_value(table, p, s_max))
}

fn check_good(table: &ValuationTable, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if table.s_max() >= 1 && table.v_gs(1, p) < GaussVal::Finite(0) {
        return Err(Error::BadPrime { p });
    }
    Ok(())
}

/// Per-s outcome of v(G_s/s!) >= v({s, n-1}_p) + min_{i < n} v(G_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DworkRobbaRow {
    pub s: usize,
    pub lhs: GaussVal,
    pub rhs: GaussVal,
    pub holds: bool,
}

pub fn dwork_robba_check(
    table: &ValuationTable,
    p: u64,
    s_max: usize,
) -> Result<Vec<DworkRobbaRow>> {
    check_good(table, p)?;
    let n = table.n();
    let base = (0..n)
        .map(|i| table.v_gs(i, p))
        .min()
        .unwrap_or(GaussVal::Finite(0));
    Ok((1..=s_max.min(table.s_max()))
        .map(|s| {
            let lhs = table.v_gs_over_fact(s, p);
            let rhs = accolade(s as u64, n as u64 - 1, p) + base;
            DworkRobbaRow {
                s,
                lhs,
                rhs,
                holds: lhs >= rhs,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SizeRadiusReport {
    pub primes: Vec<u64>,
    pub s: usize,
    pub n: usize,
    /// (p, h(s, p)) for every prime scanned.
    pub h_table: Vec<(u64, LogValue)>,
    /// (p, truncated log+(1/R_p)).
    pub radius_table: Vec<(u64, LogValue)>,
    pub sigma_hat: LogValue,
    pub rho_hat: LogValue,
    pub slack: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub sandwich_ok: bool,
}

/// rho_hat <= sigma_hat + slack and sigma_hat <= rho_hat + (n - 1) + slack,
/// evaluated on finite truncations (heuristic by construction).
pub fn bombieri_report(g: &RatMat, s: usize, prime_bound: u64, slack: f64) -> SizeRadiusReport {
    let table = ValuationTable::new(g, s.max(g.dim()));
    bombieri_report_from(&table, s, prime_bound, slack)
}

pub fn bombieri_report_from(
    table: &ValuationTable,
    s: usize,
    prime_bound: u64,
    slack: f64,
) -> SizeRadiusReport {
    let primes = scan_primes(table, prime_bound);
    let rows: Vec<(u64, LogValue, LogValue)> = primes
        .par_iter()
        .map(|&p| (p, h_s_p(table, s, p), radius_value(table, p, s)))
        .collect();
    let inv_s = BigRat::new(BigInt::one(), BigInt::from(s));
    let sigma = rows
        .iter()
        .fold(LogValue::zero(), |a, r| a.add(&r.1))
        .scale(&inv_s);
    let rho = rows.iter().fold(LogValue::zero(), |a, r| a.add(&r.2));
    let n = table.n();
    let (sf, rf) = (sigma.to_f64(), rho.to_f64());
    let lower_ok = rf <= sf + slack;
    let upper_ok = sf <= rf + (n as f64 - 1.0) + slack;
    SizeRadiusReport {
        primes,
        s,
        n,
        h_table: rows.iter().map(|r| (r.0, r.1.clone())).collect(),
        radius_table: rows.iter().map(|r| (r.0, r.2.clone())).collect(),
        sigma_hat: sigma,
        rho_hat: rho,
        slack,
        lower_ok,
        upper_ok,
        sandwich_ok: lower_ok && upper_ok,
    }
}

/// sum_p log^-|T|_p and sum_p log^+|T|_p for an integral T: the first is
/// -log(content T), the second 0.
pub fn height_parts(t: &Poly) -> (LogValue, LogValue) {
    let (content, _) = t.primitive_int();
    let c = content.abs();
    assert!(c.is_integer(), "T must be integral");
    let c = c.to_integer().to_u64().expect("small content");
    (LogValue::log_u64(c).neg(), LogValue::zero())
}

/// Capped valuations min(v_p(G_s), cap) for s = 1..=s_max, computed from the
/// integral tower reduced mod p^K. Needs p-integral G.
pub fn capped_valuations_mod_pk(g: &RatMat, p: u64, s_max: usize, cap: u32) -> Result<Vec<u32>> {
    let t = minimal_t(g);
    let vt = poly_gauss_valuation(&t, p).finite().expect("nonzero");
    if g.entries()
        .iter()
        .any(|c| gauss_valuation(c, p) < GaussVal::Finite(0))
    {
        return Err(Error::BadPrime { p });
    }
    let k = cap as u64 + s_max as u64 * vt as u64;
    let modulus = (p as u128)
        .checked_pow(k as u32)
        .filter(|m| *m < (1u128 << 62));
    let Some(modulus) = modulus else {
        return Err(Error::UnsupportedParameters(format!(
            "p^{k} exceeds the word-size modulus"
        )));
    };
    let m = modulus as u64;
    let red = |x: &BigRat| -> u64 {
        debug_assert!(x.is_integer());
        let r = x.to_integer().mod_floor(&BigInt::from(m));
        r.to_u64().expect("reduced")
    };
    let n = g.dim();
    let to_vec = |poly: &Poly| -> Vec<u64> { poly.coeffs().iter().map(red).collect() };
    let a: Vec<Vec<u64>> = g
        .entries()
        .iter()
        .map(|c| to_vec((c * &RatFn::from_poly(t.clone())).num()))
        .collect();
    let tv = to_vec(&t);
    let dtv = to_vec(&t.derivative());
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % modulus) as u64;
    let pmul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        if x.is_empty() || y.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; x.len() + y.len() - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                out[i + j] = (out[i + j] + mulm(u, v)) % m;
            }
        }
        out
    };
    let padd = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; x.len().max(y.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (x.get(i).copied().unwrap_or(0) + y.get(i).copied().unwrap_or(0)) % m;
        }
        out
    };
    let pscale = |x: &[u64], c: u64| -> Vec<u64> { x.iter().map(|&u| mulm(u, c)).collect() };
    let pder = |x: &[u64]| -> Vec<u64> {
        x.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &u)| mulm(u, i as u64 % m))
            .collect()
    };
    let val = |h: &[Vec<u64>]| -> u32 {
        let mut best = k as u32;
        for poly in h {
            for &c in poly {
                if c == 0 {
                    continue;
                }
                let mut v = 0;
                let mut x = c;
                while x % p == 0 {
                    x /= p;
                    v += 1;
                }
                best = best.min(v);
            }
        }
        best
    };
    let mut out = Vec::with_capacity(s_max);
    let mut h = a.clone();
    for s in 1..=s_max {
        let vh = val(&h);
        let vg = vh as i64 - s as i64 * vt;
        out.push(vg.clamp(0, cap as i64) as u32);
        if s == s_max {
            break;
        }
        // H_{s+1} = H_s A + T H_s' - s T' H_s
        let mut next = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: Vec<u64> = Vec::new();
                for l in 0..n {
                    acc = padd(&acc, &pmul(&h[i * n + l], &a[l * n + j]));
                }
                let hij = &h[i * n + j];
                acc = padd(&acc, &pmul(&tv, &pder(hij)));
                let neg_s = (m - (s as u64 % m)) % m;
                acc = padd(&acc, &pscale(&pmul(&dtv, hij), neg_s));
                next[i * n + j] = acc;
            }
        }
        h = next;
    }
    Ok(out)
}
