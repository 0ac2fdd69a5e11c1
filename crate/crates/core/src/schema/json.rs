//! Project JSON form of schemas.
//!
//! ```json
//! {"prefixes": {...},
//!  "shapes": {"S": {"closed": false, "closedInv": false, "extra": ["^p"],
//!                   "expr": {"kind": "repeat", "min": 0, "max": "*", "expr": {...}}}}}
//! ```

use std::collections::BTreeSet;

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use super::{AtomicConstr, NodeKind, Schema, ShapeDef, ShapeExpr, ShapeLabel, TcId, TripleConstraint, ValueSet};
use crate::rdf::term::{Iri, Literal};
use crate::rdf::{DirectedProperty, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema JSON error at {path}: {message}")]
pub struct SchemaJsonError {
    pub path: String,
    pub message: String,
}

pub fn schema_to_json(schema: &Schema) -> String {
    let shapes: Map<String, Json> = schema
        .shapes
        .iter()
        .map(|(l, d)| (l.to_string(), def_json(d)))
        .collect();
    let doc = json!({ "prefixes": schema.prefixes, "shapes": shapes });
    serde_json::to_string_pretty(&doc).expect("JSON values always serialize")
}

fn def_json(d: &ShapeDef) -> Json {
    json!({
        "closed": d.closed,
        "closedInv": d.closed_inv,
        "extra": d.extra.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "expr": expr_json(&d.expr),
    })
}

fn expr_json(e: &ShapeExpr) -> Json {
    match e {
        ShapeExpr::Empty => json!({ "kind": "empty" }),
        ShapeExpr::Tc(tc) => json!({
            "kind": "tc",
            "id": tc.id.to_string(),
            "inverse": tc.prop.inverse,
            "property": tc.prop.iri.as_str(),
            "valueClass": tc.value_class.iter().map(atomic_json).collect::<Vec<_>>(),
        }),
        ShapeExpr::SomeOf(es) => json!({ "kind": "someOf", "exprs": es.iter().map(expr_json).collect::<Vec<_>>() }),
        ShapeExpr::Group(es) => json!({ "kind": "group", "exprs": es.iter().map(expr_json).collect::<Vec<_>>() }),
        ShapeExpr::Repeat { expr, min, max } => json!({
            "kind": "repeat",
            "min": min,
            "max": max.map_or(json!("*"), |m| json!(m)),
            "expr": expr_json(expr),
        }),
    }
}

fn atomic_json(a: &AtomicConstr) -> Json {
    match a {
        AtomicConstr::Shape { label, negated } => {
            json!({ "kind": "shape", "label": label.as_str(), "negated": negated })
        }
        AtomicConstr::ValueSet(ValueSet::Datatype(dt)) => json!({ "kind": "datatype", "datatype": dt.as_str() }),
        AtomicConstr::ValueSet(ValueSet::NodeKind(k)) => json!({ "kind": "nodeKind", "nodeKind": k.keyword() }),
        AtomicConstr::ValueSet(ValueSet::Values(vs)) => json!({
            "kind": "values",
            "values": vs.iter().map(value_json).collect::<Vec<_>>(),
        }),
    }
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Blank => json!({ "blank": true }),
        Value::Iri(i) => json!({ "iri": i.as_str() }),
        Value::Literal(l) => match &l.lang {
            Some(lang) => json!({ "literal": l.lexical, "lang": lang }),
            None => json!({ "literal": l.lexical, "datatype": l.datatype.as_str() }),
        },
    }
}

pub fn json_to_schema(text: &str) -> Result<Schema, SchemaJsonError> {
    let doc: Json = serde_json::from_str(text).map_err(|e| err("$", format!("invalid JSON: {e}")))?;
    let obj = as_object(&doc, "$")?;
    let mut schema = Schema::default();
    if let Some(p) = obj.get("prefixes") {
        for (k, v) in as_object(p, "$.prefixes")? {
            let path = format!("$.prefixes.{k}");
            schema.prefixes.insert(k.clone(), as_str(v, &path)?.to_string());
        }
    }
    let shapes = as_object(field(obj, "shapes", "$")?, "$.shapes")?;
    for (label, d) in shapes {
        let path = format!("$.shapes.{label}");
        schema.shapes.insert(ShapeLabel::new(label), read_def(d, &path)?);
    }
    for (label, def) in &schema.shapes {
        let mut ids = BTreeSet::new();
        for tc in def.tcs() {
            if !ids.insert(tc.id) {
                return Err(err(&format!("$.shapes.{label}"), format!("duplicate id {}", tc.id)));
            }
            for (t, _) in tc.shape_refs() {
                if !schema.shapes.contains_key(t) {
                    return Err(err(&format!("$.shapes.{label}"), format!("undefined shape <{t}>")));
                }
            }
        }
    }
    Ok(schema)
}

fn err(path: &str, message: impl Into<String>) -> SchemaJsonError {
    SchemaJsonError {
        path: path.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Json, path: &str) -> Result<&'a Map<String, Json>, SchemaJsonError> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn as_str<'a>(v: &'a Json, path: &str) -> Result<&'a str, SchemaJsonError> {
    v.as_str().ok_or_else(|| err(path, "expected a string"))
}

fn as_bool(v: &Json, path: &str) -> Result<bool, SchemaJsonError> {
    v.as_bool().ok_or_else(|| err(path, "expected a boolean"))
}

fn as_array<'a>(v: &'a Json, path: &str) -> Result<&'a Vec<Json>, SchemaJsonError> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn as_u32(v: &Json, path: &str) -> Result<u32, SchemaJsonError> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn field<'a>(obj: &'a Map<String, Json>, key: &str, path: &str) -> Result<&'a Json, SchemaJsonError> {
    obj.get(key).ok_or_else(|| err(path, format!("missing field '{key}'")))
}

fn read_def(v: &Json, path: &str) -> Result<ShapeDef, SchemaJsonError> {
    let obj = as_object(v, path)?;
    let closed = as_bool(field(obj, "closed", path)?, &format!("{path}.closed"))?;
    let closed_inv = as_bool(field(obj, "closedInv", path)?, &format!("{path}.closedInv"))?;
    let mut extra = BTreeSet::new();
    for (i, q) in as_array(field(obj, "extra", path)?, &format!("{path}.extra"))?.iter().enumerate() {
        let p = format!("{path}.extra[{i}]");
        if !extra.insert(DirectedProperty::parse_display(as_str(q, &p)?)) {
            return Err(err(&p, "duplicate extra property"));
        }
    }
    let expr = read_expr(field(obj, "expr", path)?, &format!("{path}.expr"))?;
    Ok(ShapeDef {
        closed,
        closed_inv,
        extra,
        expr,
    })
}

fn read_expr(v: &Json, path: &str) -> Result<ShapeExpr, SchemaJsonError> {
    let obj = as_object(v, path)?;
    let kind = as_str(field(obj, "kind", path)?, &format!("{path}.kind"))?;
    match kind {
        "empty" => Ok(ShapeExpr::Empty),
        "tc" => {
            let id = as_str(field(obj, "id", path)?, &format!("{path}.id"))?;
            let id = id
                .strip_prefix('C')
                .and_then(|n| n.parse().ok())
                .map(TcId)
                .ok_or_else(|| err(&format!("{path}.id"), format!("bad constraint id '{id}'")))?;
            let inverse = as_bool(field(obj, "inverse", path)?, &format!("{path}.inverse"))?;
            let property = as_str(field(obj, "property", path)?, &format!("{path}.property"))?;
            let vc_path = format!("{path}.valueClass");
            let value_class = as_array(field(obj, "valueClass", path)?, &vc_path)?
                .iter()
                .enumerate()
                .map(|(i, a)| read_atomic(a, &format!("{vc_path}[{i}]")))
                .collect::<Result<_, _>>()?;
            Ok(ShapeExpr::Tc(TripleConstraint {
                id,
                prop: DirectedProperty {
                    iri: Iri::new(property),
                    inverse,
                },
                value_class,
            }))
        }
        "someOf" | "group" => {
            let ep = format!("{path}.exprs");
            let es: Vec<ShapeExpr> = as_array(field(obj, "exprs", path)?, &ep)?
                .iter()
                .enumerate()
                .map(|(i, e)| read_expr(e, &format!("{ep}[{i}]")))
                .collect::<Result<_, _>>()?;
            if es.is_empty() {
                return Err(err(&ep, "needs at least one sub-expression"));
            }
            Ok(if kind == "someOf" {
                ShapeExpr::SomeOf(es)
            } else {
                ShapeExpr::Group(es)
            })
        }
        "repeat" => {
            let min = as_u32(field(obj, "min", path)?, &format!("{path}.min"))?;
            let max_v = field(obj, "max", path)?;
            let max = if max_v.as_str() == Some("*") {
                None
            } else {
                Some(as_u32(max_v, &format!("{path}.max"))?)
            };
            if max.is_some_and(|m| m < min) {
                return Err(err(path, "min exceeds max"));
            }
            let expr = read_expr(field(obj, "expr", path)?, &format!("{path}.expr"))?;
            Ok(ShapeExpr::repeat(expr, min, max))
        }
        other => Err(err(&format!("{path}.kind"), format!("unknown expression kind '{other}'"))),
    }
}

fn read_atomic(v: &Json, path: &str) -> Result<AtomicConstr, SchemaJsonError> {
    let obj = as_object(v, path)?;
    let kind = as_str(field(obj, "kind", path)?, &format!("{path}.kind"))?;
    match kind {
        "shape" => Ok(AtomicConstr::Shape {
            label: ShapeLabel::new(as_str(field(obj, "label", path)?, &format!("{path}.label"))?),
            negated: as_bool(field(obj, "negated", path)?, &format!("{path}.negated"))?,
        }),
        "datatype" => Ok(AtomicConstr::ValueSet(ValueSet::Datatype(Iri::new(as_str(
            field(obj, "datatype", path)?,
            &format!("{path}.datatype"),
        )?)))),
        "nodeKind" => {
            let k = as_str(field(obj, "nodeKind", path)?, &format!("{path}.nodeKind"))?;
            NodeKind::from_keyword(k)
                .map(|k| AtomicConstr::ValueSet(ValueSet::NodeKind(k)))
                .ok_or_else(|| err(&format!("{path}.nodeKind"), format!("unknown node kind '{k}'")))
        }
        "values" => {
            let vp = format!("{path}.values");
            let members = as_array(field(obj, "values", path)?, &vp)?
                .iter()
                .enumerate()
                .map(|(i, m)| read_value(m, &format!("{vp}[{i}]")))
                .collect::<Result<_, _>>()?;
            Ok(AtomicConstr::ValueSet(ValueSet::Values(members)))
        }
        other => Err(err(&format!("{path}.kind"), format!("unknown value class kind '{other}'"))),
    }
}

fn read_value(v: &Json, path: &str) -> Result<Value, SchemaJsonError> {
    let obj = as_object(v, path)?;
    if obj.get("blank").and_then(Json::as_bool) == Some(true) {
        return Ok(Value::Blank);
    }
    if let Some(i) = obj.get("iri") {
        return Ok(Value::Iri(Iri::new(as_str(i, &format!("{path}.iri"))?)));
    }
    let lexical = as_str(field(obj, "literal", path)?, &format!("{path}.literal"))?;
    if let Some(lang) = obj.get("lang") {
        return Ok(Value::Literal(Literal::lang_string(lexical, as_str(lang, &format!("{path}.lang"))?)));
    }
    let dt = as_str(field(obj, "datatype", path)?, &format!("{path}.datatype"))?;
    Ok(Value::Literal(Literal::typed(lexical, dt)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::parse_schema;

    #[test]
    fn round_trip_with_modifiers() {
        let s = parse_schema(
            "PREFIX ex: <http://e/>\n<S> CLOSED ^CLOSED EXTRA ^ex:q ex:p { ex:p @<T> AND !@<T> [1;*] | ^ex:q (ex:a \"b\"@en _b 4) , (ex:r . )[2;3] } <T> { }",
        )
        .unwrap();
        let back = json_to_schema(&schema_to_json(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn empty_shape_kind() {
        let s = parse_schema("<E> { }").unwrap();
        let j: Json = serde_json::from_str(&schema_to_json(&s)).unwrap();
        assert_eq!(j["shapes"]["E"]["expr"]["kind"], "empty");
    }

    #[test]
    fn errors_carry_a_path() {
        let e = json_to_schema(r#"{"shapes": {"S": {"closed": false, "closedInv": false, "extra": [], "expr": {"kind": "repeat", "min": 1, "max": "x", "expr": {"kind": "empty"}}}}}"#).unwrap_err();
        assert_eq!(e.path, "$.shapes.S.expr.max");
        let e = json_to_schema(r#"{"shapes": {"S": {"closed": 1}}}"#).unwrap_err();
        assert_eq!(e.path, "$.shapes.S.closed");
        let e = json_to_schema("[").unwrap_err();
        assert_eq!(e.path, "$");
    }
}
