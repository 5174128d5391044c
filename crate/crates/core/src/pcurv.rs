//! Reduction modulo p, the p-curvature G_p of a system, nilpotence tests
//! and the scan over a range of primes.

use rayon::prelude::*;

use crate::arith::fp::FpRatFn;
use crate::arith::valuation::reduce_ratfn_mod_p;
use crate::arith::FpPoly;
use crate::diffop::{Basis, DiffOp, FpMat, Ore, RatMat};
use crate::error::{Error, Result};
use crate::local::{indicial_polynomial, Location};

/// Entrywise image of G in F_p(z).
pub fn reduce_system(g: &RatMat, p: u64) -> Result<FpMat> {
    g.try_map(|c| reduce_ratfn_mod_p(c, p))
}

/// The D-basis monic form of L with coefficients reduced mod p.
pub fn reduce_operator(l: &DiffOp, p: u64) -> Result<Ore<FpRatFn>> {
    let m = l.change_basis(Basis::D).normalize();
    let c = m
        .coeffs()
        .iter()
        .map(|c| reduce_ratfn_mod_p(c, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ore::new(Basis::D, c))
}

/// [Gbar_1, ..., Gbar_{s_max}] for a reduced system, computed in F_p(z).
pub fn gs_sequence_mod_p(gbar: &FpMat, s_max: usize) -> Vec<FpMat> {
    let mut out: Vec<FpMat> = Vec::with_capacity(s_max);
    if s_max == 0 {
        return out;
    }
    out.push(gbar.clone());
    for s in 1..s_max {
        let prev = &out[s - 1];
        out.push(prev.mul(gbar).add(&prev.derivative()));
    }
    out
}

/// G_p mod p: reduce G, then run the recurrence p - 1 times in F_p(z).
pub fn p_curvature(g: &RatMat, p: u64) -> Result<FpMat> {
    let gbar = reduce_system(g, p)?;
    Ok(gs_sequence_mod_p(&gbar, p as usize).pop().expect("p >= 2"))
}

/// (M^n = 0, least k with M^k = 0).
pub fn is_nilpotent(m: &FpMat) -> (bool, Option<usize>) {
    let n = m.dim();
    let mut power = m.clone();
    for k in 1..=n {
        if power.is_zero() {
            return (true, Some(k));
        }
        if k < n {
            power = power.mul(m);
        }
    }
    (false, None)
}

/// Remainder of D^(p n) on the right by L reduced mod p; zero exactly when
/// the reduced operator is nilpotent.
pub fn operator_nilpotence_by_division(l: &DiffOp, p: u64) -> Result<bool> {
    let lp = reduce_operator(l, p)?;
    let n = lp.order();
    if n == 0 {
        return Ok(true);
    }
    let one = FpRatFn::one(p);
    let mut r = Ore::scalar(Basis::D, one);
    for _ in 0..(p as usize * n) {
        r = r.apply_derivation_left();
        if !r.is_zero() && r.order() == n {
            let c = r.lead().clone();
            r = r.sub(&lp.left_scale(&c));
        }
    }
    Ok(r.is_zero())
}

/// Whether the indicial polynomial at 0, reduced mod p, splits over F_p.
pub fn katz_honda_check(l: &DiffOp, p: u64) -> Result<bool> {
    let phi = indicial_polynomial(l, &Location::Finite(num_traits::Zero::zero()))?;
    let c = phi
        .coeffs()
        .iter()
        .map(|x| crate::arith::rational::rat_mod_p(x, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpPoly::new(p, c).splits_over_base())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PStatus {
    Nilpotent,
    NonNilpotent,
    BadPrime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCurvatureReport {
    pub prime: u64,
    pub status: PStatus,
    pub nilpotence_index: Option<usize>,
    /// Outcome of the operator division test when it ran.
    pub division_nilpotent: Option<bool>,
    pub method_agreement: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every good prime in range gave a nilpotent p-curvature.
    AllGoodNilpotent,
    /// No good prime in range gave a nilpotent p-curvature.
    FoundNonNilpotent,
    /// Anything else, including a range without good primes.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalScan {
    pub id: String,
    pub primes: Vec<u64>,
    pub reports: Vec<PCurvatureReport>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub enum ScanTarget {
    System(RatMat),
    Operator(DiffOp),
}

impl ScanTarget {
    pub fn system(&self) -> Result<RatMat> {
        match self {
            ScanTarget::System(g) => Ok(g.clone()),
            ScanTarget::Operator(l) => l.companion(),
        }
    }
}

fn report_for(g: &RatMat, op: Option<&DiffOp>, p: u64) -> PCurvatureReport {
    let bad = PCurvatureReport {
        prime: p,
        status: PStatus::BadPrime,
        nilpotence_index: None,
        division_nilpotent: None,
        method_agreement: true,
    };
    let gp = match p_curvature(g, p) {
        Ok(m) => m,
        Err(_) => return bad,
    };
    let (nil, idx) = is_nilpotent(&gp);
    let division = match op {
        Some(l) => match operator_nilpotence_by_division(l, p) {
            Ok(b) => Some(b),
            Err(_) => return bad,
        },
        None => None,
    };
    PCurvatureReport {
        prime: p,
        status: if nil {
            PStatus::Nilpotent
        } else {
            PStatus::NonNilpotent
        },
        nilpotence_index: idx,
        division_nilpotent: division,
        method_agreement: division.is_none_or(|d| d == nil),
    }
}

pub fn verdict_of(reports: &[PCurvatureReport]) -> Verdict {
    let good: Vec<&PCurvatureReport> = reports
        .iter()
        .filter(|r| r.status != PStatus::BadPrime)
        .collect();
    if good.is_empty() {
        Verdict::Mixed
    } else if good.iter().all(|r| r.status == PStatus::Nilpotent) {
        Verdict::AllGoodNilpotent
    } else if good.iter().all(|r| r.status == PStatus::NonNilpotent) {
        Verdict::FoundNonNilpotent
    } else {
        Verdict::Mixed
    }
}

/// Per-prime p-curvature reports over the given primes; bad primes are
/// recorded and left out of the verdict. Primes are processed in parallel
/// and reported in input order.
pub fn global_scan(id: &str, target: &ScanTarget, primes: &[u64]) -> Result<GlobalScan> {
    let g = target.system()?;
    let op = match target {
        ScanTarget::Operator(l) => Some(l),
        ScanTarget::System(_) => None,
    };
    for &p in primes {
        if !crate::arith::rational::is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
    }
    let reports: Vec<PCurvatureReport> =
        primes.par_iter().map(|&p| report_for(&g, op, p)).collect();
    Ok(GlobalScan {
        id: id.to_string(),
        primes: primes.to_vec(),
        verdict: verdict_of(&reports),
        reports,
    })
}
