//! JSON form of typings and global typing witnesses. Nodes are written by their
//! N-Triples key, edges by their edge id.

use std::collections::HashMap;

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use super::GlobalTypingWitness;
use crate::matching::{LocalWitness, Sign, Typing};
use crate::rdf::{EdgeIdx, Graph, NodeId};
use crate::schema::{Schema, ShapeLabel, TripleConsumer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessJsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("{path}: {msg}")]
    Shape { path: String, msg: String },
}

fn err(path: impl Into<String>, msg: impl Into<String>) -> WitnessJsonError {
    WitnessJsonError::Shape {
        path: path.into(),
        msg: msg.into(),
    }
}

pub fn typing_to_json(typing: &Typing, graph: &Graph) -> Json {
    let mut entries: Vec<(String, String, Sign)> = typing
        .iter()
        .map(|(n, s, sign)| (graph.node_key(*n), s.to_string(), *sign))
        .collect();
    entries.sort();
    Json::Array(
        entries
            .into_iter()
            .map(|(n, s, sign)| json!({"node": n, "shape": s, "sign": sign.to_string()}))
            .collect(),
    )
}

pub fn to_json(w: &GlobalTypingWitness, graph: &Graph) -> Json {
    let mut witnesses = Map::new();
    let mut keyed: Vec<(String, &LocalWitness)> = w
        .lw
        .iter()
        .map(|((n, s), lw)| (format!("{}|{}", graph.node_key(*n), s), lw))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (key, lw) in keyed {
        let mut m = Map::new();
        let mut edges: Vec<(&str, String)> = lw
            .iter()
            .map(|(e, c)| (graph.edge(*e).id.as_str(), c.to_string()))
            .collect();
        edges.sort();
        for (id, c) in edges {
            m.insert(id.to_string(), Json::String(c));
        }
        witnesses.insert(key, Json::Object(m));
    }
    json!({"typing": typing_to_json(&w.typing, graph), "witnesses": witnesses})
}

struct Lookup<'g> {
    graph: &'g Graph,
    nodes: HashMap<String, NodeId>,
    edges: HashMap<&'g str, EdgeIdx>,
}

impl<'g> Lookup<'g> {
    fn new(graph: &'g Graph) -> Self {
        Lookup {
            graph,
            nodes: graph.nodes().map(|n| (graph.node_key(n), n)).collect(),
            edges: graph.edges().map(|(i, e)| (e.id.as_str(), i)).collect(),
        }
    }

    fn node(&self, key: &str, path: &str) -> Result<NodeId, WitnessJsonError> {
        self.nodes
            .get(key)
            .copied()
            .ok_or_else(|| err(path, format!("unknown node {key}")))
    }
}

fn shape(schema: &Schema, s: &str, path: &str) -> Result<ShapeLabel, WitnessJsonError> {
    schema
        .resolve_label(s)
        .ok_or_else(|| err(path, format!("unknown shape {s}")))
}

fn str_field<'j>(obj: &'j Json, field: &str, path: &str) -> Result<&'j str, WitnessJsonError> {
    obj.get(field)
        .and_then(Json::as_str)
        .ok_or_else(|| err(format!("{path}.{field}"), "expected a string"))
}

fn typing_from(json: &Json, look: &Lookup<'_>, schema: &Schema, path: &str) -> Result<Typing, WitnessJsonError> {
    let arr = json.as_array().ok_or_else(|| err(path, "expected an array"))?;
    let mut out = Typing::new();
    for (i, e) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let n = look.node(str_field(e, "node", &p)?, &format!("{p}.node"))?;
        let s = shape(schema, str_field(e, "shape", &p)?, &format!("{p}.shape"))?;
        let sign = match str_field(e, "sign", &p)? {
            "+" => Sign::Pos,
            "-" => Sign::Neg,
            other => return Err(err(format!("{p}.sign"), format!("expected \"+\" or \"-\", got {other:?}"))),
        };
        out.insert(n, s, sign);
    }
    Ok(out)
}

/// Reads a typing, either a bare array of entries or an object with a
/// `typing` field.
pub fn typing_from_json(text: &str, graph: &Graph, schema: &Schema) -> Result<Typing, WitnessJsonError> {
    let json: Json = serde_json::from_str(text).map_err(|e| WitnessJsonError::Syntax(e.to_string()))?;
    let look = Lookup::new(graph);
    match json.get("typing") {
        Some(t) => typing_from(t, &look, schema, "$.typing"),
        None => typing_from(&json, &look, schema, "$"),
    }
}

pub fn from_json(text: &str, graph: &Graph, schema: &Schema) -> Result<GlobalTypingWitness, WitnessJsonError> {
    let json: Json = serde_json::from_str(text).map_err(|e| WitnessJsonError::Syntax(e.to_string()))?;
    let look = Lookup::new(graph);
    let typing = typing_from(
        json.get("typing").ok_or_else(|| err("$.typing", "missing"))?,
        &look,
        schema,
        "$.typing",
    )?;
    let mut out = GlobalTypingWitness {
        typing,
        ..Default::default()
    };
    let ws = json
        .get("witnesses")
        .and_then(Json::as_object)
        .ok_or_else(|| err("$.witnesses", "expected an object"))?;
    for (key, edges) in ws {
        let p = format!("$.witnesses[{key:?}]");
        let (node, label) = key
            .rsplit_once('|')
            .ok_or_else(|| err(&p, "expected <node>|<shape>"))?;
        let n = look.node(node, &p)?;
        let s = shape(schema, label, &p)?;
        let edges = edges.as_object().ok_or_else(|| err(&p, "expected an object"))?;
        let mut lw = Vec::new();
        for (id, c) in edges {
            let ep = format!("{p}[{id:?}]");
            let e = *look.edges.get(id.as_str()).ok_or_else(|| err(&ep, "unknown edge"))?;
            let c = c
                .as_str()
                .and_then(TripleConsumer::parse)
                .ok_or_else(|| err(&ep, "expected a triple consumer"))?;
            lw.push((e, c));
        }
        let neigh = look.graph.neighbourhood(n);
        lw.sort_by_key(|(e, _)| neigh.iter().position(|x| x == e).unwrap_or(usize::MAX));
        out.lw.insert((n, s), LocalWitness(lw));
    }
    Ok(out)
}
