//! JSON views of the analysis results. Every exact number is a string.

use serde_json::{json, Value};

use crate::arith::logvalue::sig15;
use crate::arith::rational::fmt_rat;
use crate::arith::{BigRat, LogValue, Poly, RatFn};
use crate::catalog::CatalogEntry;
use crate::diffop::{Basis, DiffOp, FpMat, RatMat};
use crate::growth::{DworkRobbaRow, GalochkinTrace, SizeRadiusReport};
use crate::local::{IndicialData, Location, OperatorProfile};
use crate::pade::{PadeApprox, PadeSystem};
use crate::pcurv::{GlobalScan, PCurvatureReport};

use super::parse::{print_operator, print_poly, print_ratfn};

pub fn rat(x: &BigRat) -> Value {
    Value::String(fmt_rat(x))
}

pub fn poly(p: &Poly) -> Value {
    Value::String(print_poly(p))
}

pub fn ratfn(f: &RatFn) -> Value {
    Value::String(print_ratfn(f))
}

pub fn log(v: &LogValue) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// 15 significant digits, as in the exact-log reports.
pub fn decimal(x: f64) -> Value {
    Value::String(sig15(x).to_string())
}

pub fn basis(b: Basis) -> Value {
    json!(match b {
        Basis::D => "D",
        Basis::Theta => "theta",
    })
}

pub fn operator(l: &DiffOp) -> Value {
    json!({
        "text": print_operator(l),
        "basis": basis(l.basis()),
        "order": l.order(),
    })
}

pub fn rat_matrix(g: &RatMat) -> Value {
    Value::Array(
        g.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(ratfn).collect()))
            .collect(),
    )
}

pub fn fp_matrix(g: &FpMat) -> Value {
    Value::Array(
        g.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn location(l: &Location) -> Value {
    match l {
        Location::Finite(a) => json!({"kind": "finite", "value": rat(a)}),
        Location::Infinity => json!({"kind": "infinity"}),
        Location::AlgebraicClass(f) => json!({"kind": "algebraic", "minpoly": poly(f)}),
    }
}

pub fn indicial(d: &IndicialData) -> Value {
    json!({
        "location": location(&d.point.location),
        "regular": d.point.regular,
        "pole_profile": d.point.pole_profile.iter().map(|(j, o)| json!([j, o])).collect::<Vec<_>>(),
        "indicial_polynomial": d.phi.as_ref().map(|p| p.to_string_var("x")),
        "rational_exponents": d.rational_exponents.iter().map(rat).collect::<Vec<_>>(),
        "nonrational_factors": d.nonrational_factors.iter().map(|p| p.to_string_var("x")).collect::<Vec<_>>(),
        "apparent_hint": d.apparent_hint,
    })
}

pub fn profile(p: &OperatorProfile) -> Value {
    json!({
        "operator": operator(&p.operator),
        "fuchsian": p.fuchsian,
        "all_exponents_rational": p.all_exponents_rational,
        "katz_consistent": p.katz_consistent,
        "points": p.points.iter().map(indicial).collect::<Vec<_>>(),
    })
}

pub fn pcurv_report(r: &PCurvatureReport) -> Value {
    json!({
        "prime": r.prime,
        "status": format!("{:?}", r.status),
        "nilpotence_index": r.nilpotence_index,
        "division_nilpotent": r.division_nilpotent,
        "method_agreement": r.method_agreement,
    })
}

pub fn scan(s: &GlobalScan) -> Value {
    json!({
        "id": s.id,
        "primes": s.primes,
        "reports": s.reports.iter().map(pcurv_report).collect::<Vec<_>>(),
        "verdict": format!("{:?}", s.verdict),
    })
}

pub fn galochkin(t: &GalochkinTrace) -> Value {
    json!({
        "T": poly(&t.t),
        "s": t.s_values,
        "q": t.q.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "q_prime": t.q_prime.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "log_q_over_s": t.log_q_over_s.iter().map(|x| decimal(*x)).collect::<Vec<_>>(),
    })
}

pub fn bombieri(r: &SizeRadiusReport) -> Value {
    let table = |v: &[(u64, LogValue)]| {
        v.iter()
            .map(|(p, x)| json!({"p": p, "value": log(x)}))
            .collect::<Vec<_>>()
    };
    json!({
        "primes": r.primes,
        "s": r.s,
        "n": r.n,
        "h": table(&r.h_table),
        "radius": table(&r.radius_table),
        "sigma_hat": log(&r.sigma_hat),
        "rho_hat": log(&r.rho_hat),
        "slack": decimal(r.slack),
        "lower_ok": r.lower_ok,
        "upper_ok": r.upper_ok,
        "sandwich_ok": r.sandwich_ok,
        "heuristic": true,
    })
}

pub fn dwork_robba(rows: &[DworkRobbaRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({"s": r.s, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds}))
            .collect(),
    )
}

pub fn pade_approx(a: &PadeApprox) -> Value {
    json!({
        "Q": poly(&a.q),
        "P": a.p.iter().map(poly).collect::<Vec<_>>(),
        "imposed_up_to": a.imposed_up_to,
        "siegel": {
            "unknowns": a.siegel.unknowns,
            "equations": a.siegel.equations,
            "log_a": decimal(a.siegel.log_a),
            "log_bound": a.siegel.log_bound.map(decimal),
            "log_height_q": decimal(a.siegel.log_height_q),
        },
    })
}

pub fn pade_system(s: &PadeSystem) -> Value {
    json!({
        "N": s.n_param,
        "M": s.m_param,
        "approximant": pade_approx(&s.approx),
        "T": poly(&s.t),
        "t": s.t_param,
        "tower": s.tower.iter().map(|v| v.iter().map(ratfn).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "delta": ratfn(&s.delta),
        "delta_vanishes": s.delta.is_zero(),
        "residual_order": s.residual_order,
        "degree_bound_ok": s.degree_bound_ok,
    })
}

pub fn catalog_entry(e: &CatalogEntry, full: bool) -> Value {
    if !full {
        return json!({"id": e.id, "description": e.description});
    }
    json!({
        "id": e.id,
        "description": e.description,
        "operator": operator(&e.operator),
        "system": rat_matrix(&e.system()),
        "g_operator": e.g_operator,
        "series": e.series.as_ref().map(|g| g.coeffs(8).iter().map(rat).collect::<Vec<_>>()),
    })
}

/// Indented "key: value" lines for --format text.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn walk(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x).unwrap_or_default())),
    }
}
