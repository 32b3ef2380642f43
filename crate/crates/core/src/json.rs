//! JSON codecs for the domain objects, shared by the command runner and the
//! C ABI.

use serde_json::{json, Map, Value};

use crate::algebra::parse::{parse_bipoly, parse_scalar, parse_unipoly, poly_to_json, scalar_to_json, unipoly_to_json};
use crate::algebra::{
    BiPoly, FieldSpec, LaurentBiPoly, LaurentPoly, Ring, Scalar, SpacePoly, TruncatedSeries, UniPoly, XY,
    XYZ,
};
use crate::autos::{AffineEndo3, AutDatum};
use crate::error::{Error, Result};
use crate::standardize::hensel_standardize;
use crate::surfaces::{StandardForm, SurfaceEquation};
use crate::trees::{FineWeightedTree, TreeNode};

/// Accepts `"Q"`, `"Fp:5"`, or `{"field": "Fp", "p": 5}` style descriptors.
pub fn parse_field_str(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix("Fp:")
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| Error::parse("field", t))?;
    FieldSpec::prime(p.parse().map_err(|_| Error::parse("field", t))?)
}

/// The field named by `doc["field"]` (and `doc["p"]`), or `default`.
pub fn field_of(doc: &Value, default: FieldSpec) -> Result<FieldSpec> {
    match doc.get("field") {
        None | Some(Value::Null) => Ok(default),
        Some(Value::String(s)) if s == "Fp" => {
            let p = doc
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::parse("field", "Fp without integer p"))?;
            FieldSpec::prime(p)
        }
        Some(Value::String(s)) => parse_field_str(s),
        Some(Value::Object(_)) => field_of(&doc["field"], default),
        Some(other) => Err(Error::parse("field", other.to_string())),
    }
}

pub fn field_to_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rationals => json!({"field": "Q"}),
        FieldSpec::Prime(p) => json!({"field": "Fp", "p": p}),
    }
}

pub(crate) fn get<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key)
        .filter(|v| !v.is_null())
        .ok_or_else(|| Error::parse("input", format!("missing key {key:?}")))
}

pub(crate) fn get_u32(doc: &Value, key: &str) -> Result<u32> {
    get(doc, key)?
        .as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| Error::parse("input", format!("{key:?} must be a small nonnegative integer")))
}

pub fn bipoly_json(p: &BiPoly) -> Value {
    poly_to_json(p, &XY)
}

pub fn spacepoly_json(p: &SpacePoly) -> Value {
    poly_to_json(p, &XYZ)
}

pub fn xpoly_json(p: &UniPoly) -> Value {
    unipoly_to_json(p, "x")
}

fn key(exps: &[(i64, &str)]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .filter(|(e, _)| *e != 0)
        .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Laurent polynomials use the same map encoding; exponents may be negative.
pub fn laurent_json(p: &LaurentPoly) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms() {
        m.insert(key(&[(e, "x")]), scalar_to_json(&c));
    }
    Value::Object(m)
}

pub fn laurent_bi_json(p: &LaurentBiPoly) -> Value {
    let mut m = Map::new();
    for (e, c) in p.body().terms() {
        m.insert(
            key(&[(e[0] as i64 + p.shift(), "x"), (e[1] as i64, "y")]),
            scalar_to_json(c),
        );
    }
    Value::Object(m)
}

pub fn residuals_json(rs: &[LaurentBiPoly]) -> Value {
    Value::Array(rs.iter().map(laurent_bi_json).collect())
}

pub fn series_json(s: &TruncatedSeries) -> Value {
    json!({"order": s.order(), "coeffs": bipoly_json(s.coeffs())})
}

pub fn endo_json(e: &AffineEndo3) -> Value {
    Value::Array(e.comps.iter().map(spacepoly_json).collect())
}

pub fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn tree_from_json(doc: &Value, default: FieldSpec) -> Result<FineWeightedTree> {
    let field = field_of(doc, default)?;
    let nodes = get(doc, "nodes")?
        .as_array()
        .ok_or_else(|| Error::parse("tree", "\"nodes\" must be an array"))?;
    let mut out = Vec::with_capacity(nodes.len());
    for n in nodes {
        let id = get(n, "id")?
            .as_u64()
            .ok_or_else(|| Error::parse("tree", format!("bad node id in {n}")))?;
        let parent = match n.get("parent") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_u64()
                    .ok_or_else(|| Error::parse("tree", format!("bad parent in {n}")))?,
            ),
        };
        let weight = match n.get("w").or_else(|| n.get("weight")) {
            None | Some(Value::Null) => None,
            Some(v) => Some(parse_scalar(field, v)?),
        };
        out.push(TreeNode { id, parent, weight });
    }
    Ok(FineWeightedTree::new(field, out))
}

pub fn tree_to_json(t: &FineWeightedTree) -> Value {
    let nodes: Vec<Value> = t
        .nodes
        .iter()
        .map(|n| {
            let mut m = Map::new();
            m.insert("id".into(), json!(n.id));
            if let Some(p) = n.parent {
                m.insert("parent".into(), json!(p));
            }
            if let Some(w) = &n.weight {
                m.insert("w".into(), scalar_to_json(w));
            }
            Value::Object(m)
        })
        .collect();
    let mut doc = field_to_json(t.field);
    doc["nodes"] = Value::Array(nodes);
    doc
}

/// `{"h": .., "Q": ..}`.
pub fn surface_from_json(doc: &Value, default: FieldSpec) -> Result<SurfaceEquation> {
    let field = field_of(doc, default)?;
    if doc.get("Q").is_none() && doc.get("sigma").is_some() {
        return Ok(standard_from_json(doc, default)?.surface());
    }
    Ok(SurfaceEquation::new(get_u32(doc, "h")?, parse_bipoly(field, get(doc, "Q")?)?))
}

/// `{"h": .., "sigma": [..]}`, or `{"h": .., "Q": ..}` standardized first.
pub fn standard_from_json(doc: &Value, default: FieldSpec) -> Result<StandardForm> {
    let field = field_of(doc, default)?;
    let h = get_u32(doc, "h")?;
    match doc.get("sigma") {
        Some(Value::Array(items)) => {
            let sigma = items
                .iter()
                .map(|v| parse_unipoly(field, v, "x"))
                .collect::<Result<Vec<_>>>()?;
            StandardForm::new(field, h, sigma)
        }
        Some(other) => Err(Error::parse("standard form", format!("sigma must be a list, got {other}"))),
        None => {
            let q = parse_bipoly(field, get(doc, "Q")?)?;
            Ok(hensel_standardize(h, &q)?.standard_form())
        }
    }
}

pub fn standard_to_json(s: &StandardForm) -> Value {
    let mut doc = field_to_json(s.field);
    doc["h"] = json!(s.h);
    doc["sigma"] = Value::Array(s.sigma.iter().map(xpoly_json).collect());
    doc["Q"] = bipoly_json(&s.p());
    doc
}

/// `{"alpha": [2, 1], "mu": "-1", "a": "1", "b": ..}` with 1-based α.
pub fn datum_from_json(doc: &Value, field: FieldSpec) -> Result<AutDatum> {
    let alpha = get(doc, "alpha")?
        .as_array()
        .ok_or_else(|| Error::parse("datum", "alpha must be a list"))?
        .iter()
        .map(|v| match v.as_u64() {
            Some(k) if k >= 1 => Ok(k as usize - 1),
            _ => Err(Error::parse("datum", format!("alpha entries are 1-based indices, got {v}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let scalar = |k: &str| match doc.get(k) {
        None | Some(Value::Null) => Ok(field.one()),
        Some(v) => parse_scalar(field, v),
    };
    let b = match doc.get("b") {
        None | Some(Value::Null) => UniPoly::zero(field),
        Some(v) => parse_unipoly(field, v, "x")?,
    };
    Ok(AutDatum {
        alpha,
        mu: scalar("mu")?,
        a: scalar("a")?,
        b,
    })
}

pub fn datum_to_json(d: &AutDatum) -> Value {
    json!({
        "alpha": d.alpha.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "mu": scalar_to_json(&d.mu),
        "a": scalar_to_json(&d.a),
        "b": xpoly_json(&d.b),
    })
}

pub fn all_zero(rs: &[LaurentBiPoly]) -> bool {
    rs.iter().all(Ring::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_descriptors() {
        assert_eq!(field_of(&json!({}), FieldSpec::Rationals).unwrap(), FieldSpec::Rationals);
        assert_eq!(
            field_of(&json!({"field": "Fp", "p": 5}), FieldSpec::Rationals).unwrap(),
            FieldSpec::Prime(5)
        );
        assert_eq!(parse_field_str("Fp:7").unwrap(), FieldSpec::Prime(7));
        assert_eq!(parse_field_str("Fp:8"), Err(Error::NotPrime(8)));
        assert!(parse_field_str("R").is_err());
    }

    #[test]
    fn tree_round_trip() {
        let doc = json!({"field": "Q", "nodes": [{"id": 0}, {"id": 1, "parent": 0, "w": "1/2"}]});
        let t = tree_from_json(&doc, FieldSpec::Rationals).unwrap();
        assert_eq!(tree_to_json(&t), doc);
    }

    #[test]
    fn datum_round_trip() {
        let doc = json!({"alpha": [2, 1], "mu": "-1", "a": "1", "b": {"x": "3"}});
        let d = datum_from_json(&doc, FieldSpec::Rationals).unwrap();
        assert_eq!(d.alpha, vec![1, 0]);
        assert_eq!(datum_to_json(&d), doc);
        assert!(datum_from_json(&json!({"alpha": [0, 1]}), FieldSpec::Rationals).is_err());
    }

    #[test]
    fn laurent_keys() {
        let f = FieldSpec::Rationals;
        let g = LaurentPoly::monomial(f, -2).scale(&f.int(-2));
        assert_eq!(laurent_json(&g), json!({"x^-2": "-2"}));
    }

    #[test]
    fn standard_from_q() {
        let s = standard_from_json(&json!({"h": 2, "Q": "(1-x)*(y^2-1)"}), FieldSpec::Rationals).unwrap();
        assert_eq!(s.sigma.len(), 2);
        let back = standard_from_json(&standard_to_json(&s), FieldSpec::Rationals).unwrap();
        assert_eq!(back, s);
    }
}
