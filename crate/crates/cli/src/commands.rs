//! One function per CLI command. Each returns the bytes to print.

use std::collections::BTreeMap;

use graft_core::{
    decompose, grow_maximal_bipartitic_extreme, min_join, primal_decompose, root_profile, synthesis_min_join,
    synthesize, verify_sebo, EdgeId, EdgeSet, Graft, JoinedGraft, PrimalCertificate, SynthesisSpec, ToothSpec,
};
use serde::Serialize;

use crate::document::{to_json, GraftDocument, ToothDocument};
use crate::emit::{decomposition_document, decomposition_roles, emit_dot, CertificateDocument, DotRoles};
use crate::error::Result;
use crate::generate::{gen_random_graft, GenParams};
use crate::verify::{run_verify_suite, Mutation, VerificationReport};

fn ids(set: &EdgeSet) -> Vec<u32> {
    set.iter().map(|e| e.0).collect()
}

#[derive(Serialize)]
struct MinJoinOutput {
    size: usize,
    join: Vec<u32>,
}

pub fn minjoin(doc: &GraftDocument) -> Result<String> {
    let graft = doc.to_graft()?;
    let join = min_join(&graft);
    Ok(to_json(&MinJoinOutput { size: join.size(), join: ids(join.edges()) }))
}

#[derive(Serialize)]
struct DistOutput {
    from: String,
    join: Vec<u32>,
    /// `null` for vertices in other components.
    distances: BTreeMap<String, Option<i64>>,
}

pub fn dist(doc: &GraftDocument, from: &str) -> Result<String> {
    let graft = doc.to_graft()?;
    let g = graft.graph();
    let r = g.require(from)?;
    let joined = JoinedGraft::solve(&graft);
    let distances = g.vertices().map(|v| (g.label(v).to_string(), joined.dist(r, v))).collect();
    Ok(to_json(&DistOutput { from: from.to_string(), join: ids(joined.join().edges()), distances }))
}

#[derive(Serialize)]
struct PrimalOutput {
    root: String,
    primal: bool,
    #[serde(rename = "A")]
    a: Vec<String>,
    #[serde(rename = "D")]
    d: Vec<String>,
    #[serde(rename = "C")]
    c: Vec<String>,
    min_level: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateDocument>,
}

/// Root profile; for bipartite grafts also the root-set structure check and,
/// at primal roots, the recursive certificate.
pub fn primal(doc: &GraftDocument, root: &str) -> Result<String> {
    let graft = doc.to_graft()?;
    let g = graft.graph();
    let r = g.require(root)?;
    let joined = JoinedGraft::solve(&graft);
    let profile = root_profile(&joined, r)?;
    let primal = joined.is_primal_at(r);
    let bipartite = graft_core::Bipartition::two_colour(g).is_ok();
    let (min_level, certificate) = if bipartite {
        let report = verify_sebo(&joined, r)?;
        let cert = if primal { Some(CertificateDocument::new(&primal_decompose(&graft, r)?)) } else { None };
        (Some(report.min_level), cert)
    } else {
        (None, None)
    };
    Ok(to_json(&PrimalOutput {
        root: root.to_string(),
        primal,
        a: g.labels_of(&profile.a),
        d: g.labels_of(&profile.d),
        c: g.labels_of(&profile.c),
        min_level,
        certificate,
    }))
}

/// Decomposition around the greedy maximal set grown from `seed_vertex`;
/// with `recursive`, each multi-vertex tooth carries its certificate.
pub fn decompose_cmd(doc: &GraftDocument, seed_vertex: &str, recursive: bool) -> Result<String> {
    let bg = doc.to_bipartite()?;
    let g = bg.graph();
    let seed = g.require(seed_vertex)?;
    let joined = JoinedGraft::solve(bg.graft());
    let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), seed)?;
    let d = decompose(&joined, bg.classes(), &x)?;
    let mut certificates = BTreeMap::new();
    if recursive {
        for t in d.teeth.iter().filter(|t| t.tooth.members.len() > 1) {
            let cert: PrimalCertificate = primal_decompose(&t.tooth.graft, t.tooth.root)?;
            certificates.insert(t.label.clone(), cert);
        }
    }
    Ok(to_json(&decomposition_document(bg.graft(), joined.join().edges(), &d, &certificates)))
}

#[derive(Serialize)]
struct SynthesisOutput {
    graft: GraftDocument,
    join: Vec<u32>,
}

/// Glues the teeth into the skeleton comb (class A is the spine). Teeth not
/// given are kept as single vertices.
pub fn synthesize_cmd(skeleton: &GraftDocument, teeth: &[ToothDocument]) -> Result<String> {
    let comb = skeleton.to_bipartite()?;
    let mut spec = SynthesisSpec { comb, teeth: BTreeMap::new(), attachments: BTreeMap::new() };
    for t in teeth {
        spec.teeth.insert(t.replaces.clone(), ToothSpec { graft: t.graft.to_graft()?, root: t.root.clone() });
        spec.attachments.extend(t.attachments.iter().map(|(&id, l)| (EdgeId(id), l.clone())));
    }
    let synth = synthesize(&spec)?;
    let join = synthesis_min_join(&spec, None, &BTreeMap::new())?;
    Ok(to_json(&SynthesisOutput { graft: GraftDocument::from_bipartite(&synth), join: ids(join.edges()) }))
}

pub fn verify(suite: &str, max_n: usize, trials: usize, seed: u64, mutation: Mutation) -> Result<(String, VerificationReport)> {
    let report = run_verify_suite(suite, max_n, trials, seed, mutation)?;
    Ok((to_json(&report), report))
}

pub fn gen(p: GenParams, seed: u64) -> Result<String> {
    Ok(GraftDocument::from_graft(&gen_random_graft(p, seed)?).to_json())
}

/// DOT with the minimum join dashed; with a seed vertex, also coloured by
/// the decomposition around it.
pub fn export_dot(doc: &GraftDocument, seed_vertex: Option<&str>) -> Result<String> {
    let graft: Graft = doc.to_graft()?;
    let joined = JoinedGraft::solve(&graft);
    let roles = match seed_vertex {
        None => DotRoles::default(),
        Some(s) => {
            let bg = doc.to_bipartite()?;
            let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), graft.graph().require(s)?)?;
            decomposition_roles(&decompose(&joined, bg.classes(), &x)?)
        }
    };
    Ok(emit_dot(&graft, joined.join().edges(), &roles))
}
