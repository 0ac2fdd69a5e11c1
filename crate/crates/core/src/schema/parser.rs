//! Recursive descent reader for the ShExC subset.
//!
//! ```text
//! schema     := (prefixDecl | label shapeDef)*
//! shapeDef   := ('CLOSED' | '^' 'CLOSED' | 'EXTRA' predicate+)* '{' expr? '}'
//! expr       := group ('|' group)*
//! group      := unary (',' unary)*
//! unary      := ('(' expr ')' | 'EmptyShape' | tc) card?
//! tc         := '^'? predicate valueClass
//! valueClass := atomic ('AND' atomic)*
//! card       := '*' | '+' | '?' | '[' INT ';' (INT | '*') ']'
//! ```

use std::collections::BTreeSet;

use thiserror::Error;

use super::{AtomicConstr, NodeKind, Schema, ShapeDef, ShapeExpr, ShapeLabel, TcId, TripleConstraint, ValueSet};
use crate::rdf::lexer::{Lexer, Pos, Tok};
use crate::rdf::parse::{expand_pname, DataError};
use crate::rdf::term::{Iri, Literal, Value, XSD_INTEGER, XSD_STRING};
use crate::rdf::{DirectedProperty, PrefixMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("unknown prefix '{prefix}:' at {line}:{col}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        col: usize,
    },
    #[error("shape <{0}> is defined twice")]
    DuplicateShapeLabel(String),
    #[error("shape <{referenced}> is referenced from <{from}> but never defined")]
    UndefinedShapeReference { from: String, referenced: String },
}

impl From<DataError> for SchemaError {
    fn from(e: DataError) -> Self {
        match e {
            DataError::Syntax { line, col, message } => SchemaError::Syntax { line, col, message },
            DataError::UnknownPrefix { prefix, line, col } => {
                SchemaError::UnknownPrefix { prefix, line, col }
            }
        }
    }
}

fn syntax(pos: Pos, message: impl Into<String>) -> SchemaError {
    SchemaError::Syntax {
        line: pos.line,
        col: pos.col,
        message: message.into(),
    }
}

pub fn parse_schema(text: &str) -> Result<Schema, SchemaError> {
    let toks = Lexer::new(text).tokenize().map_err(DataError::from)?;
    let mut p = Parser {
        toks,
        at: 0,
        prefixes: PrefixMap::new(),
        next_tc: 0,
    };
    let schema = p.schema()?;
    for (from, def) in &schema.shapes {
        for tc in def.tcs() {
            for (t, _) in tc.shape_refs() {
                if !schema.shapes.contains_key(t) {
                    return Err(SchemaError::UndefinedShapeReference {
                        from: from.to_string(),
                        referenced: t.to_string(),
                    });
                }
            }
        }
    }
    Ok(schema)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    prefixes: PrefixMap,
    next_tc: u32,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SchemaError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {want}, found {tok}")))
        }
    }

    fn is_name(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == kw)
    }

    fn schema(&mut self) -> Result<Schema, SchemaError> {
        let mut schema = Schema::default();
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::AtWord(w) if w == "prefix" => {
                    self.next();
                    self.prefix_decl()?;
                    self.expect(Tok::Dot)?;
                }
                Tok::Name(w) if w.eq_ignore_ascii_case("prefix") => {
                    self.next();
                    self.prefix_decl()?;
                }
                _ => {
                    let label = self.label()?;
                    self.next_tc = 0;
                    let def = self.shape_def()?;
                    if schema.shapes.insert(label.clone(), def).is_some() {
                        return Err(SchemaError::DuplicateShapeLabel(label.to_string()));
                    }
                }
            }
        }
        schema.prefixes = self.prefixes.clone();
        Ok(schema)
    }

    fn prefix_decl(&mut self) -> Result<(), SchemaError> {
        let (tok, pos) = self.next();
        let Tok::PName { prefix, local } = tok else {
            return Err(syntax(pos, format!("expected prefix name, found {tok}")));
        };
        if !local.is_empty() {
            return Err(syntax(pos, "prefix declaration must end with ':'"));
        }
        let (tok, pos) = self.next();
        let Tok::IriRef(ns) = tok else {
            return Err(syntax(pos, format!("expected IRI, found {tok}")));
        };
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn iri(&mut self, what: &str) -> Result<Iri, SchemaError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::IriRef(s) => Ok(Iri::new(s)),
            Tok::PName { prefix, local } => {
                Ok(Iri::new(expand_pname(&self.prefixes, &prefix, &local, pos)?))
            }
            other => Err(syntax(pos, format!("expected {what}, found {other}"))),
        }
    }

    fn label(&mut self) -> Result<ShapeLabel, SchemaError> {
        Ok(ShapeLabel::new(self.iri("shape label")?.as_str()))
    }

    fn shape_def(&mut self) -> Result<ShapeDef, SchemaError> {
        let mut def = ShapeDef::new(ShapeExpr::Empty);
        loop {
            if self.is_name("CLOSED") {
                self.next();
                def.closed = true;
            } else if *self.peek() == Tok::Caret && matches!(self.peek2(), Tok::Name(n) if n == "CLOSED") {
                self.next();
                self.next();
                def.closed_inv = true;
            } else if self.is_name("EXTRA") {
                let pos = self.pos();
                self.next();
                let mut any = false;
                while matches!(self.peek(), Tok::IriRef(_) | Tok::PName { .. } | Tok::Caret)
                    && !(matches!(self.peek(), Tok::Caret) && matches!(self.peek2(), Tok::Name(_)))
                {
                    let prop = self.directed_property()?;
                    if !def.extra.insert(prop.clone()) {
                        return Err(syntax(pos, format!("EXTRA lists {prop} twice")));
                    }
                    any = true;
                }
                if !any {
                    return Err(syntax(pos, "EXTRA needs at least one property"));
                }
            } else {
                break;
            }
        }
        self.expect(Tok::LBrace)?;
        if *self.peek() != Tok::RBrace {
            def.expr = self.expr()?;
        }
        self.expect(Tok::RBrace)?;
        Ok(def)
    }

    fn directed_property(&mut self) -> Result<DirectedProperty, SchemaError> {
        let inverse = if *self.peek() == Tok::Caret {
            self.next();
            true
        } else {
            false
        };
        Ok(DirectedProperty {
            iri: self.iri("property")?,
            inverse,
        })
    }

    fn expr(&mut self) -> Result<ShapeExpr, SchemaError> {
        let mut alts = vec![self.group()?];
        while *self.peek() == Tok::Pipe {
            self.next();
            alts.push(self.group()?);
        }
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            ShapeExpr::SomeOf(alts)
        })
    }

    fn group(&mut self) -> Result<ShapeExpr, SchemaError> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::Comma {
            self.next();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ShapeExpr::Group(parts)
        })
    }

    fn unary(&mut self) -> Result<ShapeExpr, SchemaError> {
        let pos = self.pos();
        let base = match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                e
            }
            Tok::Name(n) if n == "EmptyShape" => {
                self.next();
                ShapeExpr::Empty
            }
            Tok::IriRef(_) | Tok::PName { .. } | Tok::Caret => ShapeExpr::Tc(self.triple_constraint()?),
            other => return Err(syntax(pos, format!("expected triple constraint, found {other}"))),
        };
        self.cardinality(base)
    }

    fn cardinality(&mut self, e: ShapeExpr) -> Result<ShapeExpr, SchemaError> {
        let (min, max) = match self.peek() {
            Tok::Star => (0, None),
            Tok::Plus => (1, None),
            Tok::Question => (0, Some(1)),
            Tok::LBracket => {
                self.next();
                let min = self.integer()?;
                self.expect(Tok::Semi)?;
                let max = if *self.peek() == Tok::Star {
                    self.next();
                    None
                } else {
                    Some(self.integer()?)
                };
                let pos = self.pos();
                self.expect(Tok::RBracket)?;
                if let Some(m) = max {
                    if m < min {
                        return Err(syntax(pos, format!("empty cardinality [{min};{m}]")));
                    }
                }
                return Ok(ShapeExpr::repeat(e, min, max));
            }
            _ => return Ok(e),
        };
        self.next();
        Ok(ShapeExpr::repeat(e, min, max))
    }

    fn integer(&mut self) -> Result<u32, SchemaError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Integer(s) => s
                .parse()
                .map_err(|_| syntax(pos, format!("cardinality {s} out of range"))),
            other => Err(syntax(pos, format!("expected integer, found {other}"))),
        }
    }

    fn triple_constraint(&mut self) -> Result<TripleConstraint, SchemaError> {
        let prop = self.directed_property()?;
        self.next_tc += 1;
        let id = TcId(self.next_tc);
        let mut value_class = Vec::new();
        if *self.peek() == Tok::Dot {
            self.next();
        } else {
            value_class.push(self.atomic()?);
            while self.is_name("AND") {
                self.next();
                value_class.push(self.atomic()?);
            }
        }
        Ok(TripleConstraint { id, prop, value_class })
    }

    fn atomic(&mut self) -> Result<AtomicConstr, SchemaError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::At => {
                self.next();
                Ok(AtomicConstr::Shape {
                    label: self.label()?,
                    negated: false,
                })
            }
            Tok::Bang => {
                self.next();
                self.expect(Tok::At)?;
                Ok(AtomicConstr::Shape {
                    label: self.label()?,
                    negated: true,
                })
            }
            Tok::Name(n) => match NodeKind::from_keyword(&n) {
                Some(k) => {
                    self.next();
                    Ok(AtomicConstr::ValueSet(ValueSet::NodeKind(k)))
                }
                None => Err(syntax(pos, format!("unknown value class keyword {n}"))),
            },
            Tok::LParen => {
                self.next();
                let mut members = Vec::new();
                while *self.peek() != Tok::RParen {
                    members.push(self.value()?);
                }
                self.next();
                Ok(AtomicConstr::ValueSet(ValueSet::Values(members)))
            }
            Tok::IriRef(_) | Tok::PName { .. } => {
                Ok(AtomicConstr::ValueSet(ValueSet::Datatype(self.iri("datatype")?)))
            }
            other => Err(syntax(pos, format!("expected value class, found {other}"))),
        }
    }

    fn value(&mut self) -> Result<Value, SchemaError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Name(n) if n == "_b" => {
                self.next();
                Ok(Value::Blank)
            }
            Tok::Integer(n) => {
                self.next();
                Ok(Value::Literal(Literal::typed(n, XSD_INTEGER)))
            }
            Tok::Str(s) => {
                self.next();
                match self.peek().clone() {
                    Tok::CaretCaret => {
                        self.next();
                        let dt = self.iri("datatype")?;
                        Ok(Value::Literal(Literal {
                            lexical: s,
                            datatype: dt,
                            lang: None,
                        }))
                    }
                    Tok::AtWord(lang) => {
                        self.next();
                        Ok(Value::Literal(Literal::lang_string(s, lang)))
                    }
                    _ => Ok(Value::Literal(Literal::typed(s, XSD_STRING))),
                }
            }
            Tok::IriRef(_) | Tok::PName { .. } => Ok(Value::Iri(self.iri("value")?)),
            other => Err(syntax(pos, format!("expected value, found {other}"))),
        }
    }
}

/// Every label referenced under some shape, for tests and tooling.
pub fn referenced_labels(schema: &Schema) -> BTreeSet<ShapeLabel> {
    schema
        .shapes
        .values()
        .flat_map(|d| {
            d.tcs()
                .into_iter()
                .flat_map(|tc| tc.shape_refs().map(|(l, _)| l.clone()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRE: &str = "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\nPREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\nPREFIX is: <http://example.org/issues/>\n";

    fn tc(id: u32, prop: &str, vc: Vec<AtomicConstr>) -> ShapeExpr {
        ShapeExpr::Tc(TripleConstraint {
            id: TcId(id),
            prop: DirectedProperty::forward(prop),
            value_class: vc,
        })
    }

    #[test]
    fn tester_shape_is_a_group_of_two() {
        let s = parse_schema(&format!("{PRE}<TesterShape> {{ foaf:name xsd:string, is:role IRI }}")).unwrap();
        let def = &s.shapes[&ShapeLabel::new("TesterShape")];
        assert_eq!(
            def.expr,
            ShapeExpr::Group(vec![
                tc(
                    1,
                    "http://xmlns.com/foaf/0.1/name",
                    vec![AtomicConstr::ValueSet(ValueSet::Datatype(Iri::new(XSD_STRING)))]
                ),
                tc(
                    2,
                    "http://example.org/issues/role",
                    vec![AtomicConstr::ValueSet(ValueSet::NodeKind(NodeKind::Iri))]
                ),
            ])
        );
    }

    #[test]
    fn client_shape_is_a_single_constraint() {
        let s = parse_schema(&format!("{PRE}<ClientShape> {{ is:clientNumber xsd:integer }}")).unwrap();
        let def = &s.shapes[&ShapeLabel::new("ClientShape")];
        assert!(!def.closed && !def.closed_inv && def.extra.is_empty());
        assert!(matches!(def.expr, ShapeExpr::Tc(_)));
    }

    #[test]
    fn bracket_cardinality() {
        let s = parse_schema("<S> { <p> @<T> [2;4] } <T> { }").unwrap();
        let ShapeExpr::Repeat { min, max, expr } = &s.shapes[&ShapeLabel::new("S")].expr else {
            panic!("expected repetition");
        };
        assert_eq!((*min, *max), (2, Some(4)));
        assert!(matches!(**expr, ShapeExpr::Tc(_)));
    }

    #[test]
    fn comma_binds_tighter_than_pipe() {
        let s = parse_schema("<S> { <a> ., <b> . | <c> . , <d> . }").unwrap();
        let ShapeExpr::SomeOf(alts) = &s.shapes[&ShapeLabel::new("S")].expr else {
            panic!("expected some-of");
        };
        assert_eq!(alts.len(), 2);
        assert!(alts.iter().all(|a| matches!(a, ShapeExpr::Group(g) if g.len() == 2)));
    }

    #[test]
    fn modifiers_and_sugar() {
        let s = parse_schema(
            "<S> CLOSED ^CLOSED EXTRA <p> ^<q> { <p> @<S> *, ^<q> . +, <r> (<a> \"x\" 1 _b) ? }",
        )
        .unwrap();
        let def = &s.shapes[&ShapeLabel::new("S")];
        assert!(def.closed && def.closed_inv);
        assert_eq!(def.extra.len(), 2);
        assert!(def.extra.contains(&DirectedProperty::inverse("q")));
        let ids: Vec<_> = def.tcs().iter().map(|t| t.id.to_string()).collect();
        assert_eq!(ids, ["C1", "C2", "C3"]);
        let ShapeExpr::Group(parts) = &def.expr else { panic!() };
        assert!(matches!(parts[0], ShapeExpr::Repeat { min: 0, max: None, .. }));
        assert!(matches!(parts[1], ShapeExpr::Repeat { min: 1, max: None, .. }));
        assert!(matches!(parts[2], ShapeExpr::Repeat { min: 0, max: Some(1), .. }));
        let vs: Vec<_> = def.tcs()[2].value_sets().cloned().collect();
        assert_eq!(
            vs,
            vec![ValueSet::Values(vec![
                Value::Iri(Iri::new("a")),
                Value::Literal(Literal::string("x")),
                Value::Literal(Literal::integer("1")),
                Value::Blank,
            ])]
        );
    }

    #[test]
    fn empty_shape_keyword_and_empty_body() {
        let s = parse_schema("<E> { } <F> { (<p> . | EmptyShape) }").unwrap();
        assert_eq!(s.shapes[&ShapeLabel::new("E")].expr, ShapeExpr::Empty);
        assert!(s.shapes[&ShapeLabel::new("F")].expr.nullable());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_schema("<S> { <p> @<T> }"),
            Err(SchemaError::UndefinedShapeReference { .. })
        ));
        assert!(matches!(
            parse_schema("<S> { } <S> { }"),
            Err(SchemaError::DuplicateShapeLabel(l)) if l == "S"
        ));
        assert!(matches!(
            parse_schema("<S> { zz:p . }"),
            Err(SchemaError::UnknownPrefix { .. })
        ));
        assert!(matches!(
            parse_schema("<S> { <p> . [3;1] }"),
            Err(SchemaError::Syntax { .. })
        ));
        assert!(matches!(parse_schema("<S> { <p> "), Err(SchemaError::Syntax { .. })));
    }

    #[test]
    fn ids_restart_per_shape() {
        let s = parse_schema("<A> { <p> ., <q> . } <B> { <r> . }").unwrap();
        assert_eq!(s.shapes[&ShapeLabel::new("B")].tcs()[0].id, TcId(1));
        assert!(referenced_labels(&s).is_empty());
    }
}
