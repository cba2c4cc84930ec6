//! JSON surface syntax for grafts and tooth grafts.

use std::collections::BTreeMap;

use graft_core::{BipartiteGraft, EdgeId, Graft, Graph, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Classes {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

/// A graft on disk. Edge `i` has id `edge_ids[i]`, or `i` when `edge_ids` is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraftDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_ids: Option<Vec<u32>>,
    #[serde(default)]
    pub terminals: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Classes>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: line {}, column {}: {e}", e.line(), e.column())))
}

impl GraftDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "graft document")
    }

    fn ids(&self) -> Result<Vec<EdgeId>> {
        match &self.edge_ids {
            Some(ids) if ids.len() != self.edges.len() => Err(CliError::Parse(format!(
                "edge_ids has {} entries for {} edges",
                ids.len(),
                self.edges.len()
            ))),
            Some(ids) => Ok(ids.iter().map(|&i| EdgeId(i)).collect()),
            None => Ok((0..self.edges.len() as u32).map(EdgeId).collect()),
        }
    }

    pub fn to_graft(&self) -> Result<Graft> {
        let edges: Vec<(EdgeId, &str, &str)> = self
            .ids()?
            .into_iter()
            .zip(&self.edges)
            .map(|(id, [u, v])| (id, u.as_str(), v.as_str()))
            .collect();
        let graph = Graph::new(&self.vertices, edges)?;
        let mut terminals = VertexSet::new();
        for t in &self.terminals {
            if !terminals.insert(graph.require(t)?) {
                return Err(CliError::Parse(format!("terminal `{t}` listed twice")));
            }
        }
        Ok(Graft::new(graph, terminals)?)
    }

    /// The graft with the listed classes, or two-coloured when none are given.
    pub fn to_bipartite(&self) -> Result<BipartiteGraft> {
        let graft = self.to_graft()?;
        match &self.classes {
            None => Ok(BipartiteGraft::two_coloured(graft)?),
            Some(c) => {
                let g = graft.graph();
                let pick = |labels: &[String]| -> Result<VertexSet> {
                    labels.iter().map(|l| Ok(g.require(l)?)).collect()
                };
                let (a, b) = (pick(&c.a)?, pick(&c.b)?);
                Ok(BipartiteGraft::new(graft, &a, &b)?)
            }
        }
    }

    /// Canonical form: vertices and terminals sorted, edges in id order with
    /// sorted endpoints, ids omitted when they are `0..m`.
    pub fn from_graft(graft: &Graft) -> Self {
        let g = graft.graph();
        let edges: Vec<[String; 2]> = g
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = (g.label(e.u).to_string(), g.label(e.v).to_string());
                if u <= v { [u, v] } else { [v, u] }
            })
            .collect();
        let ids: Vec<u32> = g.edges().iter().map(|e| e.id.0).collect();
        let positional = ids.iter().enumerate().all(|(i, &id)| id == i as u32);
        GraftDocument {
            vertices: g.labels().to_vec(),
            edges,
            edge_ids: (!positional).then_some(ids),
            terminals: graft.terminal_labels(),
            classes: None,
        }
    }

    pub fn from_bipartite(bg: &BipartiteGraft) -> Self {
        let g = bg.graph();
        GraftDocument {
            classes: Some(Classes {
                a: g.labels_of(&bg.classes().class_a()),
                b: g.labels_of(&bg.classes().class_b()),
            }),
            ..Self::from_graft(bg.graft())
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

/// A tooth graft for synthesis: the graft, the comb tooth it replaces, its
/// root, and the comb edges that land on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToothDocument {
    pub replaces: String,
    pub root: String,
    #[serde(default)]
    pub attachments: BTreeMap<u32, String>,
    #[serde(flatten)]
    pub graft: GraftDocument,
}

impl ToothDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "tooth document")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K2: &str = r#"{"vertices": ["u", "v"], "edges": [["u", "v"]], "terminals": ["u", "v"]}"#;

    #[test]
    fn parses_k2() {
        let g = GraftDocument::parse(K2).unwrap().to_graft().unwrap();
        assert_eq!(g.graph().edge_count(), 1);
        assert_eq!(g.terminal_labels(), vec!["u", "v"]);
    }

    #[test]
    fn rejects_unknown_terminal() {
        let doc = GraftDocument::parse(r#"{"vertices": ["u"], "edges": [], "terminals": ["w"]}"#).unwrap();
        assert!(matches!(doc.to_graft(), Err(CliError::Graft(graft_core::Error::UnknownVertex(_)))));
        assert!(matches!(GraftDocument::parse("{\"vertices\": [}"), Err(CliError::Parse(_))));
    }

    #[test]
    fn canonical_round_trip_is_byte_stable() {
        let text = r#"{"vertices": ["b", "a", "c"], "edges": [["c", "b"], ["a", "b"]],
                       "edge_ids": [4, 1], "terminals": ["c", "a"], "classes": {"A": ["b"], "B": ["a", "c"]}}"#;
        let bg = GraftDocument::parse(text).unwrap().to_bipartite().unwrap();
        let once = GraftDocument::from_bipartite(&bg).to_json();
        let twice = GraftDocument::from_bipartite(&GraftDocument::parse(&once).unwrap().to_bipartite().unwrap()).to_json();
        assert_eq!(once, twice);
        assert!(once.contains("\"edge_ids\""));
    }

    #[test]
    fn tooth_document() {
        let t = ToothDocument::parse(
            r#"{"replaces": "b1", "root": "u1", "attachments": {"1": "u1"},
                "vertices": ["u1", "v1"], "edges": [["u1", "v1"]], "terminals": ["u1", "v1"]}"#,
        )
        .unwrap();
        assert_eq!(t.attachments[&1], "u1");
        assert_eq!(t.graft.to_graft().unwrap().graph().edge_count(), 1);
    }
}
