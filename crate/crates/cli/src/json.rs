//! JSON encodings of engine results. Rationals are `{"num": n, "den": d}` in
//! lowest terms with arbitrary-size integers.

use lctkit::engine::{CertificateTrail, LctResult};
use lctkit::newton::{Facet, NewtonPolygon, Point};
use lctkit::{Error, Rational, SubstitutionStep};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::exit_code;

fn integer(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("an integer is a JSON number"))
}

pub fn rational(r: &Rational) -> Value {
    json!({ "num": integer(r.numer()), "den": integer(r.denom()) })
}

pub fn point(p: Point) -> Value {
    json!([p.x, p.y])
}

/// The unbounded end of a non-compact facet is `null`.
pub fn facet(f: &Facet) -> Value {
    json!({
        "normal": f.normal().as_slice(),
        "endpoints": [point(f.start()), f.end().map_or(Value::Null, point)],
    })
}

pub fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 2 {
        ["x", "y"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub fn step(nvars: usize, s: &SubstitutionStep) -> Value {
    json!({
        "target": var_name(nvars, s.target),
        "source": var_name(nvars, s.source),
        "exponent": s.exponent,
        "coefficient": rational(&s.coefficient),
    })
}

fn steps(nvars: usize, trail: &CertificateTrail) -> Value {
    trail.steps.iter().map(|s| step(nvars, s)).collect()
}

pub fn lct(nvars: usize, r: &LctResult) -> Value {
    let mut m = Map::new();
    m.insert("status".into(), json!(r.status.to_string()));
    m.insert("value".into(), rational(&r.value));
    m.insert(
        "bracket".into(),
        r.bracket
            .as_ref()
            .map_or(Value::Null, |(lo, hi)| json!([rational(lo), rational(hi)])),
    );
    m.insert("c".into(), rational(&r.c));
    m.insert(
        "facet".into(),
        r.certificate.facet.as_ref().map_or(Value::Null, facet),
    );
    m.insert("clause".into(), json!(r.certificate.clause.to_string()));
    m.insert("steps".into(), steps(nvars, &r.certificate));
    if let Some(mu) = r.milnor {
        m.insert("milnor".into(), json!(mu));
    }
    Value::Object(m)
}

pub fn newton(polygon: &NewtonPolygon) -> Value {
    let diag = polygon.diagonal();
    json!({
        "vertices": polygon.vertices().iter().map(|&p| point(p)).collect::<Vec<_>>(),
        "facets": polygon.facets().iter().map(facet).collect::<Vec<_>>(),
        "c": rational(&diag.c),
        "corner": diag.is_corner,
    })
}

pub fn normalize(
    nvars: usize,
    g: &lctkit::SparsePoly,
    trail: &CertificateTrail,
    c: &Rational,
) -> Value {
    json!({
        "normalised": g.to_string(),
        "c": rational(c),
        "steps": steps(nvars, trail),
        "truncation": trail.truncation,
    })
}

pub fn error(e: &Error) -> Value {
    let kind = match exit_code(e) {
        2 => "parse",
        3 => "domain",
        _ => "engine",
    };
    json!({ "status": "error", "error": { "kind": kind, "message": e.to_string() } })
}
