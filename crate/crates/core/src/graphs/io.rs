//! JSON graph format: `{"n": 3, "edges": [[0, 1], [1, 2, "3/2"]], "directed": false}`.
//! Weights are exact rational strings and default to `"1"`; directed graphs
//! need integer weights.

use num::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{DirectedWeightedGraph, Edge, MultiGraph};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyGraph {
    Undirected(MultiGraph),
    Directed(DirectedWeightedGraph),
}

fn parse_entry(raw: &[Value]) -> Result<(usize, usize, Q)> {
    let bad = || Error::InvalidInput(format!("malformed edge entry {raw:?}"));
    if raw.len() < 2 || raw.len() > 3 {
        return Err(bad());
    }
    let id = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(bad);
    let w = match raw.get(2) {
        None => Q::one(),
        Some(Value::String(s)) => parse_q(s)?,
        Some(Value::Number(x)) if x.is_i64() => Q::from_integer(x.as_i64().unwrap().into()),
        Some(_) => return Err(bad()),
    };
    Ok((id(&raw[0])?, id(&raw[1])?, w))
}

pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let g: GraphJson = serde_json::from_str(text)?;
    let entries = g.edges.iter().map(|e| parse_entry(e)).collect::<Result<Vec<_>>>()?;
    if g.directed.unwrap_or(false) {
        let mut d = DirectedWeightedGraph::new(g.n);
        for (x, y, w) in entries {
            if !w.is_integer() {
                return Err(Error::InvalidInput("directed graphs need integer weights".into()));
            }
            let w = w
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("arc weight out of range".into()))?;
            d.add_arc(x, y, w)?;
        }
        Ok(AnyGraph::Directed(d))
    } else {
        let edges = entries
            .into_iter()
            .map(|(u, v, weight)| Edge { u, v, weight })
            .collect();
        Ok(AnyGraph::Undirected(MultiGraph::new(g.n, edges)?))
    }
}

pub fn parse_undirected(text: &str) -> Result<MultiGraph> {
    match parse_graph(text)? {
        AnyGraph::Undirected(g) => Ok(g),
        AnyGraph::Directed(_) => Err(Error::InvalidInput("expected an undirected graph".into())),
    }
}

pub fn to_json(g: &MultiGraph) -> GraphJson {
    GraphJson {
        n: g.n(),
        edges: g
            .edges()
            .iter()
            .map(|e| {
                let mut v = vec![Value::from(e.u), Value::from(e.v)];
                if !e.weight.is_one() {
                    v.push(Value::from(fmt_q(&e.weight)));
                }
                v
            })
            .collect(),
        directed: None,
    }
}

pub fn directed_to_json(d: &DirectedWeightedGraph) -> GraphJson {
    GraphJson {
        n: d.n(),
        edges: d
            .arcs()
            .map(|(x, y, w)| {
                let mut v = vec![Value::from(x), Value::from(y)];
                if w != 1 {
                    v.push(Value::from(w.to_string()));
                }
                v
            })
            .collect(),
        directed: Some(true),
    }
}
