//! Serialization back to ShExC. Output uses full IRIs so it reparses without
//! prefixes; triple constraints come out in id order, so ids survive a reparse.

use std::fmt::Write;

use super::{AtomicConstr, Schema, ShapeExpr, ValueSet};
use crate::rdf::Value;

pub fn to_shexc(schema: &Schema) -> String {
    let mut out = String::new();
    for (label, def) in &schema.shapes {
        let _ = write!(out, "<{label}>");
        if def.closed {
            out.push_str(" CLOSED");
        }
        if def.closed_inv {
            out.push_str(" ^CLOSED");
        }
        if !def.extra.is_empty() {
            out.push_str(" EXTRA");
            for q in &def.extra {
                let hat = if q.inverse { "^" } else { "" };
                let _ = write!(out, " {hat}<{}>", q.iri);
            }
        }
        out.push_str(" {");
        if def.expr != ShapeExpr::Empty {
            out.push(' ');
            write_expr(&mut out, &def.expr);
            out.push(' ');
        }
        out.push_str("}\n");
    }
    out
}

fn write_expr(out: &mut String, e: &ShapeExpr) {
    match e {
        ShapeExpr::Empty => out.push_str("EmptyShape"),
        ShapeExpr::Tc(tc) => {
            let hat = if tc.prop.inverse { "^" } else { "" };
            let _ = write!(out, "{hat}<{}>", tc.prop.iri);
            if tc.value_class.is_empty() {
                out.push_str(" .");
            }
            for (i, a) in tc.value_class.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { " AND " });
                write_atomic(out, a);
            }
        }
        ShapeExpr::SomeOf(es) | ShapeExpr::Group(es) => {
            let sep = if matches!(e, ShapeExpr::SomeOf(_)) { " | " } else { ", " };
            out.push('(');
            for (i, c) in es.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_expr(out, c);
            }
            out.push(')');
        }
        ShapeExpr::Repeat { expr, min, max } => {
            out.push('(');
            write_expr(out, expr);
            out.push(')');
            match max {
                Some(m) => {
                    let _ = write!(out, "[{min};{m}]");
                }
                None => {
                    let _ = write!(out, "[{min};*]");
                }
            }
        }
    }
}

fn write_atomic(out: &mut String, a: &AtomicConstr) {
    match a {
        AtomicConstr::Shape { label, negated } => {
            let bang = if *negated { "!" } else { "" };
            let _ = write!(out, "{bang}@<{label}>");
        }
        AtomicConstr::ValueSet(ValueSet::Datatype(dt)) => {
            let _ = write!(out, "<{dt}>");
        }
        AtomicConstr::ValueSet(ValueSet::NodeKind(k)) => out.push_str(k.keyword()),
        AtomicConstr::ValueSet(ValueSet::Values(vs)) => {
            out.push('(');
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                match v {
                    Value::Blank => out.push_str("_b"),
                    other => {
                        let _ = write!(out, "{other}");
                    }
                }
            }
            out.push(')');
        }
    }
}
