//! JSON and DOT renderings of decompositions and certificates.

use std::collections::BTreeMap;
use std::fmt::Write;

use graft_core::{CathedralDecomposition, EdgeSet, Graft, PrimalCertificate, VertexSet};
use serde::Serialize;

use crate::document::GraftDocument;

#[derive(Serialize)]
pub struct CertificateDocument {
    pub root: String,
    pub comb: GraftDocument,
    pub attachments: BTreeMap<u32, String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub children: BTreeMap<String, CertificateDocument>,
}

impl CertificateDocument {
    pub fn new(cert: &PrimalCertificate) -> Self {
        CertificateDocument {
            root: cert.root.clone(),
            comb: GraftDocument::from_bipartite(&cert.comb),
            attachments: cert.attachments.iter().map(|(id, l)| (id.0, l.clone())).collect(),
            children: cert.children.iter().map(|(l, c)| (l.clone(), Self::new(c))).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ToothEntry {
    pub label: String,
    pub members: Vec<String>,
    pub root: String,
    /// The join edge of the tooth's cut.
    pub attachment: u32,
    pub attachments: BTreeMap<u32, String>,
    pub graft: GraftDocument,
    pub join: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

#[derive(Serialize)]
pub struct DecompositionDocument {
    pub spine: Vec<String>,
    pub fringe: Vec<String>,
    pub join: Vec<u32>,
    pub skeleton: GraftDocument,
    pub skeleton_join: Vec<u32>,
    pub teeth: Vec<ToothEntry>,
}

fn ids(set: &EdgeSet) -> Vec<u32> {
    set.iter().map(|e| e.0).collect()
}

/// `certificates` is keyed by tooth label and may be empty.
pub fn decomposition_document(
    graft: &Graft,
    join: &EdgeSet,
    d: &CathedralDecomposition,
    certificates: &BTreeMap<String, PrimalCertificate>,
) -> DecompositionDocument {
    let g = graft.graph();
    DecompositionDocument {
        spine: g.labels_of(&d.spine),
        fringe: g.labels_of(&d.fringe),
        join: ids(join),
        skeleton: GraftDocument::from_bipartite(&d.skeleton.graft),
        skeleton_join: ids(d.skeleton.join.edges()),
        teeth: d
            .teeth
            .iter()
            .map(|t| ToothEntry {
                label: t.label.clone(),
                members: g.labels_of(&t.tooth.members),
                root: t.tooth.graft.graph().label(t.tooth.root).to_string(),
                attachment: t.tooth.attachment.0,
                attachments: t.attachments.iter().map(|(id, l)| (id.0, l.clone())).collect(),
                graft: GraftDocument::from_bipartite(&t.bipartite),
                join: ids(t.tooth.join.edges()),
                certificate: certificates.get(&t.label).map(CertificateDocument::new),
            })
            .collect(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertex roles for DOT colouring.
#[derive(Default)]
pub struct DotRoles {
    pub spine: VertexSet,
    pub fringe: VertexSet,
    /// Tooth label and members, drawn as clusters.
    pub teeth: Vec<(String, VertexSet)>,
}

/// Terminals are double circles, join edges dashed; spine, teeth and fringe
/// are coloured when roles are given.
pub fn emit_dot(graft: &Graft, join: &EdgeSet, roles: &DotRoles) -> String {
    let g = graft.graph();
    let mut out = String::from("graph graft {\n  node [shape=circle];\n");
    let node = |out: &mut String, v: usize, indent: &str, colour: Option<&str>| {
        let shape = if graft.is_terminal(v) { "doublecircle" } else { "circle" };
        let colour = colour.map(|c| format!(", color={c}")).unwrap_or_default();
        let _ = writeln!(out, "{indent}{} [shape={shape}{colour}];", quote(g.label(v)));
    };
    let in_tooth: VertexSet = roles.teeth.iter().flat_map(|(_, m)| m.iter().copied()).collect();
    for (i, (label, members)) in roles.teeth.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label={};\n    color=darkgreen;", quote(label));
        for &v in members {
            node(&mut out, v, "    ", Some("darkgreen"));
        }
        out.push_str("  }\n");
    }
    for v in g.vertices().filter(|v| !in_tooth.contains(v)) {
        let colour = if roles.spine.contains(&v) {
            Some("blue")
        } else if roles.fringe.contains(&v) {
            Some("gray")
        } else {
            None
        };
        node(&mut out, v, "  ", colour);
    }
    for e in g.edges() {
        let style = if join.contains(&e.id) { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  {} -- {} [label={}{style}];",
            quote(g.label(e.u)),
            quote(g.label(e.v)),
            quote(&e.id.to_string())
        );
    }
    out.push_str("}\n");
    out
}

pub fn decomposition_roles(d: &CathedralDecomposition) -> DotRoles {
    DotRoles {
        spine: d.spine.clone(),
        fringe: d.fringe.clone(),
        teeth: d.teeth.iter().map(|t| (t.label.clone(), t.tooth.members.clone())).collect(),
    }
}
