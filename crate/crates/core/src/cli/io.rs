//! JSON file formats and their canonical serialization.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde_json::{Map, Value};

use crate::applications::{Filtration, PolytopeSystem, ToricVectorBundle};
use crate::error::{Error, Result};
use crate::lattice::{primitive_from_rational, Int, LatticeVector, Rat, Subspace};
use crate::localization::{monomials, PiecewisePolynomial};
use crate::polyalg::{Exponents, Polynomial};
use crate::polyhedra::{Fan, LatticePolytope};

/// Parses JSON, reporting syntax errors with their line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
        Error::Parse(format!("line {} column {}: {msg}", e.line(), e.column()))
    })
}

fn field<'a>(obj: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("{ctx}: missing field \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{ctx}: expected an array")))
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Parse(format!("{ctx}: expected an object")))
}

fn as_usize(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("{ctx}: expected a nonnegative integer")))
}

fn as_i64(v: &Value, ctx: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::Parse(format!("{ctx}: expected an integer")))
}

fn index_key(k: &str, ctx: &str) -> Result<usize> {
    k.parse().map_err(|_| Error::Parse(format!("{ctx}: key {k:?} is not an index")))
}

/// An integer, either a JSON integer or a decimal string.
fn as_int(v: &Value, ctx: &str) -> Result<Int> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{ctx}: bad integer {s:?}"))),
        _ => Err(Error::Parse(format!("{ctx}: expected an integer"))),
    }
}

/// A rational, as a `"p/q"` string or an integer. Floats are rejected.
fn as_rat(v: &Value, ctx: &str) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s).ok_or_else(|| Error::Parse(format!("{ctx}: bad rational {s:?}"))),
        Value::Number(_) => as_int(v, ctx).map(Rat::from_integer),
        _ => Err(Error::Parse(format!("{ctx}: expected a rational \"p/q\""))),
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: Int = q.trim().parse().ok()?;
            if q == Int::from(0) {
                return None;
            }
            Some(Rat::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

fn vector(v: &Value, ctx: &str) -> Result<LatticeVector> {
    let xs = as_array(v, ctx)?;
    Ok(LatticeVector(xs.iter().map(|x| as_int(x, ctx)).collect::<Result<_>>()?))
}

fn vectors(v: &Value, ctx: &str) -> Result<Vec<LatticeVector>> {
    as_array(v, ctx)?.iter().enumerate().map(|(i, x)| vector(x, &format!("{ctx}[{i}]"))).collect()
}

fn check_len(v: &LatticeVector, n: usize, ctx: &str) -> Result<()> {
    if v.0.len() != n {
        return Err(Error::Validation(format!("{ctx}: vector has {} entries, expected {n}", v.0.len())));
    }
    Ok(())
}

/// JSON value of an integer: a number when it fits in `i64`, a string otherwise.
pub fn int_value(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn rat_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vector_value(v: &LatticeVector) -> Value {
    Value::Array(v.0.iter().map(int_value).collect())
}

// Fans.

pub fn parse_fan(text: &str) -> Result<Fan> {
    fan_from_value(&parse_json(text)?)
}

pub fn fan_from_value(v: &Value) -> Result<Fan> {
    let n = as_usize(field(v, "rank", "fan")?, "fan.rank")?;
    let cones = as_array(field(v, "maximal_cones", "fan")?, "fan.maximal_cones")?;
    let mut gens = Vec::new();
    for (i, c) in cones.iter().enumerate() {
        let ctx = format!("fan.maximal_cones[{i}]");
        let g = vectors(c, &ctx)?;
        for v in &g {
            check_len(v, n, &ctx)?;
        }
        gens.push(g);
    }
    Fan::from_generators(n, &gens)
}

/// Maximal cones in order, each listing its primitive rays by increasing ray index.
pub fn fan_to_value(fan: &Fan) -> Value {
    let cones = fan
        .maximal_keys()
        .iter()
        .map(|k| Value::Array(k.iter().map(|&r| vector_value(&fan.rays()[r])).collect()))
        .collect();
    let mut m = Map::new();
    m.insert("rank".into(), Value::from(fan.ambient()));
    m.insert("maximal_cones".into(), Value::Array(cones));
    Value::Object(m)
}

// Piecewise polynomials.

fn exponent_key(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_exponents(k: &str, n: usize, ctx: &str) -> Result<Exponents> {
    let e: Vec<u32> = k
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("{ctx}: bad exponent key {k:?}"))))
        .collect::<Result<_>>()?;
    if e.len() != n {
        return Err(Error::Validation(format!("{ctx}: exponent key {k:?} has {} entries, expected {n}", e.len())));
    }
    Ok(e)
}

/// Cones missing from `per_cone` carry the zero polynomial.
pub fn parse_piecewise(text: &str, fan: &Fan) -> Result<PiecewisePolynomial> {
    let v = parse_json(text)?;
    let degree = as_usize(field(&v, "degree", "piecewise polynomial")?, "degree")? as u32;
    let n = fan.ambient();
    let mut pieces = vec![Polynomial::zero(n); fan.maximal_cones().len()];
    for (k, terms) in as_object(field(&v, "per_cone", "piecewise polynomial")?, "per_cone")? {
        let ctx = format!("per_cone[{k}]");
        let i = index_key(k, &ctx)?;
        if i >= pieces.len() {
            return Err(Error::OutOfRange(format!("{ctx}: the fan has {} maximal cones", pieces.len())));
        }
        let mut p = Polynomial::zero(n);
        for (e, c) in as_object(terms, &ctx)? {
            p.add_term(parse_exponents(e, n, &ctx)?, as_rat(c, &ctx)?);
        }
        pieces[i] = p;
    }
    PiecewisePolynomial::new(fan, degree, pieces)
}

pub fn piecewise_to_value(f: &PiecewisePolynomial) -> Value {
    let mut per_cone = Map::new();
    for (i, p) in f.pieces().iter().enumerate() {
        let mut terms = Map::new();
        for e in monomials(f.nvars(), f.degree()) {
            let c = p.coefficient(&e);
            if c != Rat::from_integer(Int::from(0)) {
                terms.insert(exponent_key(&e), Value::String(rat_string(&c)));
            }
        }
        per_cone.insert(i.to_string(), Value::Object(terms));
    }
    let mut m = Map::new();
    m.insert("degree".into(), Value::from(f.degree()));
    m.insert("per_cone".into(), Value::Object(per_cone));
    Value::Object(m)
}

// Polytope systems.

pub fn parse_polytopes(text: &str) -> Result<Vec<LatticePolytope>> {
    let v = parse_json(text)?;
    let ps = as_array(field(&v, "polytopes", "polytope system")?, "polytopes")?;
    if ps.is_empty() {
        return Err(Error::Validation("polytopes: empty list".into()));
    }
    ps.iter()
        .enumerate()
        .map(|(i, p)| {
            let ctx = format!("polytopes[{i}]");
            let pts = vectors(p, &ctx)?;
            let n = pts.first().map(|v| v.0.len()).ok_or_else(|| Error::Validation(format!("{ctx}: no points")))?;
            for v in &pts {
                check_len(v, n, &ctx)?;
            }
            LatticePolytope::from_points(n, &pts)
        })
        .collect()
}

pub fn parse_polytope_system(text: &str) -> Result<PolytopeSystem> {
    PolytopeSystem::new(parse_polytopes(text)?)
}

/// Each polytope listed by its sorted vertices.
pub fn polytopes_to_value(ps: &[LatticePolytope]) -> Value {
    let list = ps.iter().map(|p| Value::Array(p.vertices().iter().map(vector_value).collect())).collect();
    let mut m = Map::new();
    m.insert("polytopes".into(), Value::Array(list));
    Value::Object(m)
}

// Bundles.

pub fn parse_bundle(text: &str, fan: &Fan) -> Result<ToricVectorBundle> {
    let v = parse_json(text)?;
    let r = as_usize(field(&v, "rank", "bundle")?, "bundle.rank")?;
    let n = fan.ambient();
    let mut filtrations = BTreeMap::new();
    if let Some(fs) = v.get("filtrations") {
        for (k, steps) in as_object(fs, "filtrations")? {
            let ctx = format!("filtrations[{k}]");
            let ray = index_key(k, &ctx)?;
            if ray >= fan.rays().len() {
                return Err(Error::OutOfRange(format!("{ctx}: the fan has {} rays", fan.rays().len())));
            }
            let mut parsed = Vec::new();
            for (j, step) in as_array(steps, &ctx)?.iter().enumerate() {
                let sctx = format!("{ctx}[{j}]");
                let pair = as_array(step, &sctx)?;
                if pair.len() != 2 {
                    return Err(Error::Parse(format!("{sctx}: expected [threshold, [basis rows]]")));
                }
                let t = as_i64(&pair[0], &sctx)?;
                let rows = as_array(&pair[1], &sctx)?
                    .iter()
                    .map(|row| as_array(row, &sctx)?.iter().map(|x| as_rat(x, &sctx)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if let Some(row) = rows.iter().find(|row| row.len() != r) {
                    return Err(Error::Validation(format!("{sctx}: row has {} entries, expected {r}", row.len())));
                }
                parsed.push((t, Subspace::new(r, &rows)));
            }
            filtrations.insert(ray, Filtration::new(r, parsed).map_err(|e| contextualize(e, &ctx))?);
        }
    }
    let mut characters = BTreeMap::new();
    if let Some(us) = v.get("u_multisets") {
        for (k, list) in as_object(us, "u_multisets")? {
            let ctx = format!("u_multisets[{k}]");
            let cone = index_key(k, &ctx)?;
            if cone >= fan.maximal_cones().len() {
                return Err(Error::OutOfRange(format!(
                    "{ctx}: the fan has {} maximal cones",
                    fan.maximal_cones().len()
                )));
            }
            let u = vectors(list, &ctx)?;
            for x in &u {
                check_len(x, n, &ctx)?;
            }
            characters.insert(cone, u);
        }
    }
    ToricVectorBundle::new(r, filtrations, characters)
}

fn contextualize(e: Error, ctx: &str) -> Error {
    match e {
        Error::Validation(m) => Error::Validation(format!("{ctx}: {m}")),
        other => other,
    }
}

/// Filtration steps with primitive integer bases in reduced echelon order.
pub fn bundle_to_value(b: &ToricVectorBundle) -> Value {
    let mut fs = Map::new();
    for (ray, f) in b.filtrations() {
        let steps = f
            .steps()
            .iter()
            .map(|(t, s)| {
                let rows = s
                    .basis()
                    .iter()
                    .map(|row| vector_value(&primitive_from_rational(row).expect("basis rows are nonzero")))
                    .collect();
                Value::Array(vec![Value::from(*t), Value::Array(rows)])
            })
            .collect();
        fs.insert(ray.to_string(), Value::Array(steps));
    }
    let mut m = Map::new();
    m.insert("rank".into(), Value::from(b.rank()));
    m.insert("filtrations".into(), Value::Object(fs));
    if !b.characters().is_empty() {
        let us = b
            .characters()
            .iter()
            .map(|(i, u)| (i.to_string(), Value::Array(u.iter().map(vector_value).collect())))
            .collect();
        m.insert("u_multisets".into(), Value::Object(us));
    }
    Value::Object(m)
}

/// Pretty JSON that keeps vectors, lists of vectors and filtration steps on one line.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn depth(v: &Value) -> Option<usize> {
    match v {
        Value::Array(xs) => xs.iter().map(depth).try_fold(0, |acc, d| d.map(|d| acc.max(d))).map(|d| d + 1),
        Value::Object(_) => None,
        _ => Some(0),
    }
}

/// `[scalar, ...]` with inline remaining entries, such as a filtration step.
fn is_tuple(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.first().is_some_and(|x| !x.is_array() && !x.is_object()) && xs.iter().all(inline),
        _ => false,
    }
}

fn inline(v: &Value) -> bool {
    match v {
        Value::Array(xs) => {
            depth(v).is_some_and(|d| d <= 2) || is_tuple(v) || (!xs.is_empty() && xs.iter().all(is_tuple))
        }
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(xs) if xs.is_empty() => out.push_str("[]"),
        Value::Array(xs) if inline(v) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, indent, out);
            }
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
