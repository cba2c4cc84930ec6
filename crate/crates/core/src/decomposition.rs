//! Comb decomposition of bipartite grafts and its inverse, synthesis.

use std::collections::{BTreeMap, BTreeSet};

use crate::distance::{is_primal, root_profile, JoinedGraft, RootProfile};
use crate::error::{ensure_property, Error, Result};
use crate::graph::{
    components_with_parity, contracted_label, Bipartition, BipartiteGraft, EdgeId, EdgeSet, Graft,
    Graph, Side, VertexId, VertexSet,
};
use crate::join::{factor_components, min_join, Join};
use crate::structure::{
    extreme_partition, is_combic, is_extreme, is_maximal_bipartitic_extreme, rootlize, skeleton_of,
    tooth_extract, Skeleton, ToothGraft,
};

type LabelledEdges = Vec<(EdgeId, String, String)>;

fn labelled_edges(graph: &Graph) -> LabelledEdges {
    graph
        .edges()
        .iter()
        .map(|e| (e.id, graph.label(e.u).to_string(), graph.label(e.v).to_string()))
        .collect()
}

fn relabel(graph: &Graph, rename: &BTreeMap<String, String>) -> Result<Graph> {
    let map = |l: &str| rename.get(l).cloned().unwrap_or_else(|| l.to_string());
    Graph::new(
        graph.labels().iter().map(|l| map(l)),
        graph
            .edges()
            .iter()
            .map(|e| (e.id, map(graph.label(e.u)), map(graph.label(e.v))))
            .collect::<Vec<_>>(),
    )
}

fn fresh_label(graph: &Graph, base: &str) -> String {
    let mut label = base.to_string();
    while graph.vertex(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Why `comb` fails the comb test (spine = class A, teeth = class B), if it does.
///
/// A bipartite graft is a comb when its spine is extreme and every tooth lies
/// at distance exactly −1 from the spine.
pub fn comb_violation(comb: &BipartiteGraft) -> Option<String> {
    let joined = JoinedGraft::solve(comb.graft());
    let graph = comb.graph();
    let spine = comb.classes().class_a();
    if !is_extreme(&joined, &spine).unwrap() {
        return Some("spine is not extreme".into());
    }
    for b in comb.classes().class_b() {
        let m = joined.min_dist_from_set(&spine, b);
        if m != Some(-1) {
            return Some(format!("tooth `{}` lies at distance {m:?} from the spine", graph.label(b)));
        }
    }
    None
}

pub fn is_comb(comb: &BipartiteGraft) -> bool {
    comb_violation(comb).is_none()
}

/// A tooth of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedTooth {
    /// Label of the contracted vertex in the skeleton.
    pub label: String,
    pub tooth: ToothGraft,
    /// The tooth graft with its root's class as class A.
    pub bipartite: BipartiteGraft,
    /// Cut edges of the tooth, each mapped to its end inside the tooth.
    pub attachments: BTreeMap<EdgeId, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CathedralDecomposition {
    pub spine: VertexSet,
    pub skeleton: Skeleton,
    pub teeth: Vec<DecomposedTooth>,
    /// `C_X`: trivial vertices adjacent only to the spine.
    pub fringe: VertexSet,
}

/// The tooth graft with the root's side as class A, using the classes of
/// the host graph.
fn tooth_bipartite(host: &Graph, classes: &Bipartition, tooth: &ToothGraft) -> Result<BipartiteGraft> {
    let root_side = classes.side(*tooth.members.iter().nth(tooth.root).unwrap());
    let g = tooth.graft.graph();
    let (mut a, mut b) = (VertexSet::new(), VertexSet::new());
    for v in g.vertices() {
        let side = classes.side(host.require(g.label(v))?);
        if side == root_side { a.insert(v) } else { b.insert(v) };
    }
    BipartiteGraft::new(tooth.graft.clone(), &a, &b)
}

/// Splits a bipartite graft around a maximal bipartitic extreme set `x` into
/// skeleton comb, primal teeth and fringe, checking every structural claim
/// along the way.
pub fn decompose(joined: &JoinedGraft<'_>, classes: &Bipartition, x: &VertexSet) -> Result<CathedralDecomposition> {
    if !is_maximal_bipartitic_extreme(joined, classes, x)? {
        return Err(Error::NotMaximalExtreme);
    }
    let graft = joined.graft();
    let graph = graft.graph();
    let partition = extreme_partition(joined, classes, x)?;
    ensure_property!(is_combic(joined, x)?, "spine-is-combic", "X = {:?}", graph.labels_of(x));

    let parts = components_with_parity(graft, x)?;
    let mut odd: Vec<VertexSet> = parts.odd_components().cloned().collect();
    let keep_d: Vec<bool> = graph.vertices().map(|v| partition.d.contains(&v)).collect();
    let mut conn_d = graph.components_where(&keep_d, None);
    odd.sort();
    conn_d.sort();
    ensure_property!(odd == conn_d, "odd-components-are-d-components", "X = {:?}", graph.labels_of(x));

    let trivial = factor_components(graft).trivial;
    let even: VertexSet = parts.even_components().flatten().copied().collect();
    ensure_property!(even == partition.c, "even-components-are-fringe", "X = {:?}", graph.labels_of(x));
    for comp in parts.even_components() {
        ensure_property!(
            comp.len() == 1 && trivial.contains(comp.first().unwrap()),
            "fringe-is-trivial",
            "component {:?}",
            graph.labels_of(comp)
        );
    }

    // the rootlization by X sees X ∪ {r} as its root set
    let (r, s) = (fresh_label(graph, "r"), fresh_label(graph, "s"));
    let s = if s == r { format!("{s}'") } else { s };
    let rooted = rootlize(joined, x, &r, &s)?;
    let rooted_joined = JoinedGraft::new(&rooted.graft, rooted.join.clone())?;
    let profile = root_profile(&rooted_joined, rooted.root)?;
    let rg = rooted.graft.graph();
    let mut want_a = rg.translate(graph, x);
    want_a.insert(rooted.root);
    let mut want_d = rg.translate(graph, &partition.d);
    want_d.insert(rooted.attachment);
    ensure_property!(
        profile.a == want_a && profile.d == want_d,
        "rootlized-root-profile",
        "X = {:?}",
        graph.labels_of(x)
    );

    let skeleton = skeleton_of(joined, x)?;
    if let Some(why) = comb_violation(&skeleton.graft) {
        return Err(Error::violation("skeleton-is-comb", why));
    }
    check_quasicomb_bounds(&skeleton.graft)?;

    let neighbours = graph.neighbourhood(x);
    let mut teeth = Vec::with_capacity(skeleton.teeth.len());
    for st in &skeleton.teeth {
        let tooth = tooth_extract(joined, x, &st.members)?;
        let tg = tooth.graft.graph();
        let tooth_joined = JoinedGraft::new(&tooth.graft, tooth.join.clone())?;
        ensure_property!(
            tooth_joined.is_primal_at(tooth.root),
            "tooth-primal",
            "tooth {}",
            skeleton.graft.graph().label(st.vertex)
        );
        let tooth_a = root_profile(&tooth_joined, tooth.root)?.a;
        for &v in st.members.intersection(&neighbours) {
            ensure_property!(
                tooth_a.contains(&tg.require(graph.label(v))?),
                "attachments-in-tooth-root-set",
                "vertex {}",
                graph.label(v)
            );
        }
        let (cut, _) = graph.boundary_and_induced(&st.members)?;
        let attachments = cut
            .into_iter()
            .map(|id| {
                let e = graph.edge(id).unwrap();
                let end = if st.members.contains(&e.u) { e.u } else { e.v };
                (id, graph.label(end).to_string())
            })
            .collect();
        teeth.push(DecomposedTooth {
            label: skeleton.graft.graph().label(st.vertex).to_string(),
            bipartite: tooth_bipartite(graph, classes, &tooth)?,
            tooth,
            attachments,
        });
    }
    Ok(CathedralDecomposition {
        spine: x.clone(),
        skeleton,
        teeth,
        fringe: partition.c,
    })
}

impl CathedralDecomposition {
    /// The synthesis data that rebuilds the graft minus its fringe.
    pub fn synthesis_spec(&self) -> SynthesisSpec {
        let mut teeth = BTreeMap::new();
        let mut attachments = BTreeMap::new();
        for t in &self.teeth {
            let g = t.tooth.graft.graph();
            teeth.insert(
                t.label.clone(),
                ToothSpec {
                    graft: t.tooth.graft.clone(),
                    root: g.label(t.tooth.root).to_string(),
                },
            );
            attachments.extend(t.attachments.iter().map(|(&id, l)| (id, l.clone())));
        }
        SynthesisSpec {
            comb: self.skeleton.graft.clone(),
            teeth,
            attachments,
        }
    }
}

/// A primal tooth graft and its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToothSpec {
    pub graft: Graft,
    pub root: String,
}

impl ToothSpec {
    /// The one-vertex tooth `({v}, ∅)` rooted at `v`.
    pub fn trivial(label: &str) -> Self {
        let graph = Graph::new([label], Vec::<(EdgeId, &str, &str)>::new()).unwrap();
        ToothSpec {
            graft: Graft::new(graph, []).unwrap(),
            root: label.to_string(),
        }
    }
}

/// Everything needed to glue tooth grafts into a skeleton comb. Teeth of the
/// comb without an entry are one-vertex teeth carrying the comb's label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisSpec {
    /// Spine is class A, teeth are class B.
    pub comb: BipartiteGraft,
    /// Keyed by the comb label of the tooth.
    pub teeth: BTreeMap<String, ToothSpec>,
    /// Comb edge id to the tooth vertex it lands on.
    pub attachments: BTreeMap<EdgeId, String>,
}

struct PreparedTooth {
    comb_vertex: VertexId,
    spec: ToothSpec,
    root: VertexId,
    /// Side of every tooth vertex, the root's side being A.
    classes: Bipartition,
    root_set: VertexSet,
}

impl SynthesisSpec {
    fn prepare(&self) -> Result<Vec<PreparedTooth>> {
        let comb = &self.comb;
        let graph = comb.graph();
        if let Some(why) = comb_violation(comb) {
            return Err(Error::NotComb(why));
        }
        let teeth_class = comb.classes().class_b();
        for label in self.teeth.keys() {
            match graph.vertex(label) {
                Some(v) if teeth_class.contains(&v) => {}
                _ => return Err(Error::ContractionMismatch(format!("`{label}` is not a tooth of the comb"))),
            }
        }
        let mut prepared = Vec::new();
        for b in teeth_class {
            let label = graph.label(b);
            if !comb.graft().is_terminal(b) {
                return Err(Error::TerminalRuleViolation(format!(
                    "tooth `{label}` of the comb must be a terminal"
                )));
            }
            let spec = self.teeth.get(label).cloned().unwrap_or_else(|| ToothSpec::trivial(label));
            let tg = spec.graft.graph();
            let root = tg.require(&spec.root)?;
            let colouring = Bipartition::two_colour(tg)?;
            let classes = if colouring.side(root) == Side::A {
                colouring
            } else {
                Bipartition::new(tg, &colouring.class_b(), &colouring.class_a())?
            };
            if !is_primal(&spec.graft, root)? {
                return Err(Error::ToothNotPrimal(label.to_string()));
            }
            let root_set = root_profile(&JoinedGraft::solve(&spec.graft), root)?.a;
            prepared.push(PreparedTooth {
                comb_vertex: b,
                spec,
                root,
                classes,
                root_set,
            });
        }
        Ok(prepared)
    }
}

/// Glues the tooth grafts into the comb: each tooth `v` is replaced by its
/// graft with terminals `T_v Δ {r_v}`, and every comb edge at `v` is
/// re-attached to its listed vertex of `A_v(r_v)`.
pub fn synthesize(spec: &SynthesisSpec) -> Result<BipartiteGraft> {
    let prepared = spec.prepare()?;
    let comb = spec.comb.graph();
    let spine = spec.comb.classes().class_a();

    let mut labels: Vec<String> = comb.labels_of(&spine);
    let mut edges: LabelledEdges = Vec::new();
    let mut terminals: Vec<String> = spine
        .iter()
        .filter(|&&a| spec.comb.graft().is_terminal(a))
        .map(|&a| comb.label(a).to_string())
        .collect();
    let mut class_b: Vec<String> = Vec::new();
    let mut owner: BTreeMap<VertexId, &PreparedTooth> = BTreeMap::new();
    for t in &prepared {
        owner.insert(t.comb_vertex, t);
        let tg = t.spec.graft.graph();
        labels.extend(tg.labels().iter().cloned());
        edges.extend(labelled_edges(tg));
        for v in tg.vertices() {
            if t.spec.graft.is_terminal(v) != (v == t.root) {
                terminals.push(tg.label(v).to_string());
            }
            if t.classes.side(v) == Side::A {
                class_b.push(tg.label(v).to_string());
            }
        }
    }

    for id in spec.attachments.keys() {
        if comb.edge(*id).is_none() {
            return Err(Error::BadAttachment(format!("{id} is not an edge of the comb")));
        }
    }
    for e in comb.edges() {
        let (a, b) = if spine.contains(&e.u) { (e.u, e.v) } else { (e.v, e.u) };
        let t = owner[&b];
        let tg = t.spec.graft.graph();
        let end = match spec.attachments.get(&e.id) {
            Some(l) => tg.vertex(l).ok_or_else(|| {
                Error::BadAttachment(format!("`{l}` is not a vertex of tooth `{}`", comb.label(b)))
            })?,
            None if tg.vertex_count() == 1 => 0,
            None => return Err(Error::BadAttachment(format!("{} has no attachment", e.id))),
        };
        if !t.root_set.contains(&end) {
            return Err(Error::BadAttachment(format!(
                "`{}` is outside the root set of tooth `{}`",
                tg.label(end),
                comb.label(b)
            )));
        }
        edges.push((e.id, comb.label(a).to_string(), tg.label(end).to_string()));
    }

    let graph = Graph::new(labels, edges).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::LabelCollision(l),
        other => other,
    })?;
    let ids: VertexSet = terminals.iter().map(|l| graph.require(l).unwrap()).collect();
    let b: VertexSet = class_b.iter().map(|l| graph.require(l).unwrap()).collect();
    let a: VertexSet = graph.vertices().filter(|v| !b.contains(v)).collect();
    let result = BipartiteGraft::new(Graft::new(graph, ids)?, &a, &b)?;
    let g = result.graph();

    // contracting every tooth graft must give back the comb
    let sets: Vec<VertexSet> = prepared
        .iter()
        .map(|t| g.translate(t.spec.graft.graph(), &t.spec.graft.graph().vertices().collect()))
        .collect();
    let (contracted, mapping) = g.contract_sets(&sets)?;
    let rename: BTreeMap<String, String> = prepared
        .iter()
        .zip(&sets)
        .map(|(t, set)| {
            let l = if set.len() == 1 {
                g.label(*set.first().unwrap()).to_string()
            } else {
                contracted_label(set.iter().map(|&v| g.label(v)))
            };
            (l, comb.label(t.comb_vertex).to_string())
        })
        .collect();
    let renamed = relabel(&contracted, &rename)?;
    let mut parity = vec![false; renamed.vertex_count()];
    for t in result.graft().terminals() {
        let l = contracted.label(mapping[t]);
        let image = renamed.require(rename.get(l).map_or(l, String::as_str))?;
        parity[image] = !parity[image];
    }
    if renamed != *comb {
        return Err(Error::ContractionMismatch("graph differs from the comb".into()));
    }
    let comb_terminals: Vec<bool> = spec.comb.graft().terminal_mask().to_vec();
    if parity != comb_terminals {
        return Err(Error::ContractionMismatch("terminals differ from the comb".into()));
    }
    Ok(result)
}

/// The edge of `join` at each comb tooth and the tooth vertex it lands on.
fn tooth_join_edges(
    spec: &SynthesisSpec,
    join: &EdgeSet,
) -> Result<BTreeMap<String, (EdgeId, String)>> {
    let comb = spec.comb.graph();
    let mut out = BTreeMap::new();
    for b in spec.comb.classes().class_b() {
        let label = comb.label(b);
        let at: Vec<EdgeId> = comb
            .incident(b)
            .iter()
            .map(|&(_, pos)| comb.edges()[pos].id)
            .filter(|id| join.contains(id))
            .collect();
        ensure_property!(
            at.len() == 1,
            "one-join-edge-per-tooth",
            "tooth `{label}` meets {} join edges",
            at.len()
        );
        let end = match spec.attachments.get(&at[0]) {
            Some(l) => l.clone(),
            None => ToothSpec::trivial(label).root,
        };
        out.insert(label.to_string(), (at[0], end));
    }
    Ok(out)
}

/// `(G_v, T_v Δ {r_v, r_v'})`, the graft a tooth join must be minimum for.
fn shifted_tooth(tooth: &ToothSpec, landing: &str) -> Result<Graft> {
    let g = tooth.graft.graph();
    let (r, r2) = (g.require(&tooth.root)?, g.require(landing)?);
    if r == r2 {
        Ok(tooth.graft.clone())
    } else {
        tooth.graft.toggled(&[r, r2])
    }
}

/// Builds the minimum join `F ∪ ⋃ F_v` of a synthesis from a minimum join of
/// the comb (computed if absent) and tooth joins (computed where absent).
/// Also checks that the spine is maximal bipartitic extreme with no fringe.
pub fn synthesis_min_join(
    spec: &SynthesisSpec,
    comb_join: Option<&Join>,
    tooth_joins: &BTreeMap<String, Join>,
) -> Result<Join> {
    let synthesis = synthesize(spec)?;
    let comb_join = comb_join.cloned().unwrap_or_else(|| min_join(spec.comb.graft()));
    JoinedGraft::new(spec.comb.graft(), comb_join.clone())?;
    let mut edges = comb_join.edges().clone();
    for (label, (_, landing)) in tooth_join_edges(spec, comb_join.edges())? {
        let tooth = spec.teeth.get(&label).cloned().unwrap_or_else(|| ToothSpec::trivial(&label));
        let target = shifted_tooth(&tooth, &landing)?;
        let fv = tooth_joins.get(&label).cloned().unwrap_or_else(|| min_join(&target));
        JoinedGraft::new(&target, fv.clone())?;
        edges.extend(fv.into_edges());
    }
    let join = Join::new(edges);
    let joined = JoinedGraft::new(synthesis.graft(), join.clone())
        .map_err(|_| Error::violation("synthesis-join-minimum", "F ∪ ⋃F_v is not minimum"))?;
    let spine = synthesis.graph().translate(spec.comb.graph(), &spec.comb.classes().class_a());
    ensure_property!(
        is_maximal_bipartitic_extreme(&joined, synthesis.classes(), &spine)?,
        "synthesis-spine-maximal",
        "spine is not maximal bipartitic extreme"
    );
    ensure_property!(
        extreme_partition(&joined, synthesis.classes(), &spine)?.c.is_empty(),
        "synthesis-no-fringe",
        "spine has a nonempty fringe"
    );
    Ok(join)
}

/// Checks that a minimum join of a synthesis splits into a minimum join of
/// the comb and, for each tooth, a minimum join of `(G_v, T_v Δ {r_v, r_v'})`.
pub fn check_join_factors(spec: &SynthesisSpec, synthesis: &BipartiteGraft, join: &EdgeSet) -> Result<()> {
    let comb_edges = spec.comb.graph().edge_ids();
    let comb_join: EdgeSet = join.intersection(&comb_edges).copied().collect();
    JoinedGraft::new(spec.comb.graft(), Join::new(comb_join.clone()))
        .map_err(|_| Error::violation("join-factors-comb", "comb part is not a minimum join"))?;
    let mut covered = comb_join.len();
    for (label, (_, landing)) in tooth_join_edges(spec, &comb_join)? {
        let tooth = spec.teeth.get(&label).cloned().unwrap_or_else(|| ToothSpec::trivial(&label));
        let target = shifted_tooth(&tooth, &landing)?;
        let part: EdgeSet = join.intersection(&target.graph().edge_ids()).copied().collect();
        covered += part.len();
        JoinedGraft::new(&target, Join::new(part)).map_err(|_| {
            Error::violation("join-factors-tooth", format!("tooth `{label}` part is not minimum"))
        })?;
    }
    ensure_property!(
        covered == join.len() && synthesis.graph().edge_mask(join).is_ok(),
        "join-factors-cover",
        "join has edges outside the comb and teeth"
    );
    Ok(())
}

/// Outcome of checking the root-set structure at one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeboReport {
    pub profile: RootProfile,
    pub skeleton: Skeleton,
    pub teeth: Vec<ToothGraft>,
    /// Least distance from the root.
    pub min_level: i64,
}

/// Checks, for a bipartite graft and root `r`, that `A(r)` is combic, that the
/// odd and even components of `G − A(r)` are the components of `G[D(r)]` and
/// `G[C(r)]`, that the skeleton is a comb primal at `r`, and that every tooth
/// is primal at the end of its join edge, one level shallower, and contains
/// the spine's neighbours in its own root set.
pub fn verify_sebo(joined: &JoinedGraft<'_>, r: VertexId) -> Result<SeboReport> {
    let graft = joined.graft();
    let graph = graft.graph();
    Bipartition::two_colour(graph)?;
    let profile = root_profile(joined, r)?;
    let a = &profile.a;
    ensure_property!(is_combic(joined, a)?, "root-set-combic", "root {}", graph.label(r));

    let parts = components_with_parity(graft, a)?;
    let conn = |set: &VertexSet| {
        let keep: Vec<bool> = graph.vertices().map(|v| set.contains(&v)).collect();
        let mut c = graph.components_where(&keep, None);
        c.sort();
        c
    };
    let mut odd: Vec<VertexSet> = parts.odd_components().cloned().collect();
    let mut even: Vec<VertexSet> = parts.even_components().cloned().collect();
    odd.sort();
    even.sort();
    ensure_property!(odd == conn(&profile.d), "odd-components-are-d", "root {}", graph.label(r));
    ensure_property!(even == conn(&profile.c), "even-components-are-c", "root {}", graph.label(r));

    let skeleton = skeleton_of(joined, a)?;
    if let Some(why) = comb_violation(&skeleton.graft) {
        return Err(Error::violation("root-skeleton-is-comb", why));
    }
    let sr = skeleton.graft.graph().require(graph.label(r))?;
    ensure_property!(
        JoinedGraft::new(skeleton.graft.graft(), skeleton.join.clone())?.is_primal_at(sr),
        "root-skeleton-primal",
        "root {}",
        graph.label(r)
    );

    let table = joined.distances_from(r)?;
    let min_level = profile
        .initial_component
        .iter()
        .filter_map(|&v| table.get(v))
        .min()
        .unwrap_or(0);
    let neighbours = graph.neighbourhood(a);
    let mut teeth = Vec::new();
    for st in &skeleton.teeth {
        let tooth = tooth_extract(joined, a, &st.members)?;
        let tg = tooth.graft.graph();
        let tj = JoinedGraft::new(&tooth.graft, tooth.join.clone())?;
        ensure_property!(tj.is_primal_at(tooth.root), "tooth-primal-at-root", "tooth {:?}", tg.labels());
        // every vertex of the tooth is one step deeper in G than in the tooth
        for v in tg.vertices() {
            let host = graph.require(tg.label(v))?;
            ensure_property!(
                tj.dist(tooth.root, v).map(|d| d - 1) == table.get(host),
                "tooth-levels-shift-by-one",
                "vertex {}",
                tg.label(v)
            );
        }
        let tooth_a = root_profile(&tj, tooth.root)?.a;
        for &v in st.members.intersection(&neighbours) {
            ensure_property!(
                tooth_a.contains(&tg.require(graph.label(v))?),
                "root-neighbours-in-tooth-root-set",
                "vertex {}",
                graph.label(v)
            );
        }
        teeth.push(tooth);
    }
    if !teeth.is_empty() {
        let deepest = teeth
            .iter()
            .map(|t| JoinedGraft::new(&t.graft, t.join.clone()).unwrap().distances_from(t.root).unwrap().min())
            .min()
            .unwrap();
        ensure_property!(
            deepest == min_level + 1,
            "deepest-tooth-one-level-up",
            "tooth minimum {deepest}, graft minimum {min_level}"
        );
    }
    Ok(SeboReport {
        profile,
        skeleton,
        teeth,
        min_level,
    })
}

/// Recursive evidence that a bipartite graft is primal: a primal skeleton
/// comb whose multi-vertex teeth carry certificates of their own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimalCertificate {
    pub root: String,
    pub comb: BipartiteGraft,
    pub attachments: BTreeMap<EdgeId, String>,
    /// Multi-vertex teeth, keyed by comb label. One-vertex teeth are implicit.
    pub children: BTreeMap<String, PrimalCertificate>,
}

impl PrimalCertificate {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.values().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Rebuilds the certified graft by synthesizing bottom-up.
    pub fn resynthesize(&self) -> Result<BipartiteGraft> {
        let mut teeth = BTreeMap::new();
        for (label, child) in &self.children {
            let graft = child.resynthesize()?.into_parts().0;
            teeth.insert(
                label.clone(),
                ToothSpec {
                    graft,
                    root: child.root.clone(),
                },
            );
        }
        let result = synthesize(&SynthesisSpec {
            comb: self.comb.clone(),
            teeth,
            attachments: self.attachments.clone(),
        })?;
        // put the root's class first so callers can compare like with like
        let r = result.graph().require(&self.root)?;
        if result.classes().side(r) == Side::A {
            Ok(result)
        } else {
            let (graft, classes) = result.into_parts();
            let flipped = Bipartition::new(graft.graph(), &classes.class_b(), &classes.class_a())?;
            Ok(BipartiteGraft::from_parts(graft, flipped))
        }
    }
}

/// Certifies a bipartite graft primal at `r` by decomposing around `A(r)` and
/// recursing into every multi-vertex tooth at its root.
pub fn primal_decompose(graft: &Graft, r: VertexId) -> Result<PrimalCertificate> {
    let graph = graft.graph();
    graph.check_vertex(r)?;
    let joined = JoinedGraft::solve(graft);
    if !joined.is_primal_at(r) {
        return Err(Error::NotPrimal(graph.label(r).into()));
    }
    let colouring = Bipartition::two_colour(graph)?;
    let report = verify_sebo(&joined, r)?;
    let decomposition = decompose(&joined, &colouring, &report.profile.a)?;
    ensure_property!(decomposition.fringe.is_empty(), "primal-has-no-fringe", "root {}", graph.label(r));
    let spec = decomposition.synthesis_spec();
    let mut children = BTreeMap::new();
    for t in &decomposition.teeth {
        if t.tooth.graft.graph().vertex_count() > 1 {
            ensure_property!(
                t.tooth.graft.graph().vertex_count() < graph.vertex_count(),
                "certificate-shrinks",
                "tooth {}",
                t.label
            );
            children.insert(t.label.clone(), primal_decompose(&t.tooth.graft, t.tooth.root)?);
        }
    }
    Ok(PrimalCertificate {
        root: graph.label(r).to_string(),
        comb: spec.comb,
        attachments: spec.attachments,
        children,
    })
}

/// The two structural claims behind comb primality, evaluated at a spine vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombPrimalityReport {
    pub primal: bool,
    /// The factor-component containing the root.
    pub root_component: VertexSet,
    /// `G / G_r`, present when the comb is primal at the root.
    pub contracted: Option<Graft>,
    /// Distances to the contracted vertex from spine vertices outside `G_r`.
    pub spine_distances: BTreeSet<i64>,
    /// Distances to the contracted vertex from teeth outside `G_r`.
    pub tooth_distances: BTreeSet<i64>,
}

/// For a comb primal at spine vertex `r`, checks that no edge joins the spine
/// part of `r`'s factor-component to a tooth outside it, that contracting the
/// factor-component keeps `F ∖ E(G_r)` minimum, and that the contracted vertex
/// lies at distance 1 from every outside spine vertex and 0 from every
/// outside tooth.
pub fn comb_primality_checks(comb: &BipartiteGraft, r: VertexId) -> Result<CombPrimalityReport> {
    if let Some(why) = comb_violation(comb) {
        return Err(Error::NotComb(why));
    }
    let graph = comb.graph();
    graph.check_vertex(r)?;
    let spine = comb.classes().class_a();
    if !spine.contains(&r) {
        return Err(Error::NotInA(graph.label(r).into()));
    }
    let joined = JoinedGraft::solve(comb.graft());
    let gr = factor_components(comb.graft()).component_of(r).clone();
    let mut report = CombPrimalityReport {
        primal: joined.is_primal_at(r),
        root_component: gr.clone(),
        contracted: None,
        spine_distances: BTreeSet::new(),
        tooth_distances: BTreeSet::new(),
    };
    if !report.primal {
        return Ok(report);
    }
    let inside_a: VertexSet = gr.intersection(&spine).copied().collect();
    let outside_b: VertexSet = comb.classes().class_b().difference(&gr).copied().collect();
    ensure_property!(
        graph.edges_between(&inside_a, &outside_b).is_empty(),
        "no-edge-from-root-spine-to-outer-teeth",
        "root {}",
        graph.label(r)
    );

    let (contracted, mapping) = graph.contract_sets(std::slice::from_ref(&gr))?;
    let mut mask = vec![false; contracted.vertex_count()];
    for t in comb.graft().terminals() {
        mask[mapping[t]] = !mask[mapping[t]];
    }
    let contracted = Graft::from_mask(contracted, mask)?;
    let cg = contracted.graph();
    Bipartition::two_colour(cg).map_err(|_| Error::violation("contraction-bipartite", "odd circuit"))?;
    let (_, inside) = graph.boundary_and_induced(&gr)?;
    let rest: EdgeSet = joined.join().edges().difference(&inside).copied().collect();
    let cj = JoinedGraft::new(&contracted, Join::new(rest)).map_err(|_| {
        Error::violation("contraction-join-minimum", "F ∖ E(G_r) is not minimum")
    })?;
    let hub = mapping[r];
    for v in graph.vertices().filter(|v| !gr.contains(v)) {
        let d = cj.dist(mapping[v], hub).ok_or_else(|| {
            Error::violation("contraction-connected", format!("vertex {}", graph.label(v)))
        })?;
        if spine.contains(&v) {
            report.spine_distances.insert(d);
        } else {
            report.tooth_distances.insert(d);
        }
    }
    ensure_property!(
        report.spine_distances.iter().all(|&d| d == 1) && report.tooth_distances.iter().all(|&d| d == 0),
        "contracted-root-distances",
        "spine {:?}, teeth {:?}",
        report.spine_distances,
        report.tooth_distances
    );
    report.contracted = Some(contracted);
    Ok(report)
}

/// Distance profile of a factor-connected comb: 0 within the spine, −1 from
/// spine to teeth, and 0 or −2 between teeth. Returns `false` without checking
/// when the comb has more than one factor-component.
pub fn check_factor_connected_comb(comb: &BipartiteGraft) -> Result<bool> {
    let graph = comb.graph();
    if graph.vertex_count() == 0 || factor_components(comb.graft()).components.len() != 1 {
        return Ok(false);
    }
    let joined = JoinedGraft::solve(comb.graft());
    let classes = comb.classes();
    for x in graph.vertices() {
        for y in graph.vertices().filter(|&y| y != x) {
            let d = joined.dist(x, y).unwrap();
            let ok = match (classes.side(x), classes.side(y)) {
                (Side::A, Side::A) => d == 0,
                (Side::B, Side::B) => d == 0 || d == -2,
                _ => d == -1,
            };
            ensure_property!(ok, "factor-connected-comb-distances", "{} / {}: {d}", graph.label(x), graph.label(y));
        }
    }
    Ok(true)
}

/// Lower bounds for a quasicomb: ≥ 0 within the spine, ≥ −1 from spine to
/// teeth, ≥ −2 between teeth.
pub fn check_quasicomb_bounds(comb: &BipartiteGraft) -> Result<()> {
    let graph = comb.graph();
    let joined = JoinedGraft::solve(comb.graft());
    let classes = comb.classes();
    for x in graph.vertices() {
        for y in graph.vertices().filter(|&y| y > x) {
            let Some(d) = joined.dist(x, y) else { continue };
            let bound = match (classes.side(x), classes.side(y)) {
                (Side::A, Side::A) => 0,
                (Side::B, Side::B) => -2,
                _ => -1,
            };
            ensure_property!(d >= bound, "quasicomb-distance-bounds", "{} / {}: {d}", graph.label(x), graph.label(y));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn bip(g: &Graft) -> Bipartition {
        Bipartition::two_colour(g.graph()).unwrap()
    }

    fn star_comb() -> BipartiteGraft {
        let g = Graft::from_labels(&["a", "b1", "b2"], &[("a", "b1"), ("a", "b2")], &["b1", "b2"]).unwrap();
        let (a, b) = (set(g.graph(), &["a"]), set(g.graph(), &["b1", "b2"]));
        BipartiteGraft::new(g, &a, &b).unwrap()
    }

    fn k2_tooth(u: &str, v: &str, first: u32) -> ToothSpec {
        let g = Graph::new([u, v], vec![(EdgeId(first), u, v)]).unwrap();
        let graft = Graft::new(g, [0, 1]).unwrap();
        ToothSpec {
            graft,
            root: u.to_string(),
        }
    }

    fn path5_spec() -> SynthesisSpec {
        // edge ids chosen so that the synthesis is exactly the path fixture
        let g = Graph::new(
            ["a", "b1", "b2"],
            vec![(EdgeId(1), "a", "b1"), (EdgeId(2), "a", "b2")],
        )
        .unwrap();
        let graft = Graft::new(g, [1, 2]).unwrap();
        let comb = BipartiteGraft::new(graft, &[0].into(), &[1, 2].into()).unwrap();
        SynthesisSpec {
            comb,
            teeth: [("b1".to_string(), k2_tooth("u1", "v1", 0)), ("b2".to_string(), k2_tooth("u2", "v2", 3))].into(),
            attachments: [(EdgeId(1), "u1".to_string()), (EdgeId(2), "u2".to_string())].into(),
        }
    }

    #[test]
    fn comb_test() {
        assert!(is_comb(&star_comb()));
        let p = BipartiteGraft::two_coloured(path5()).unwrap();
        assert!(!is_comb(&p));
    }

    #[test]
    fn decompose_path5() {
        let p = path5();
        let j = JoinedGraft::solve(&p);
        let d = decompose(&j, &bip(&p), &set(p.graph(), &["a"])).unwrap();
        assert_eq!(d.skeleton.graft.graph().labels(), &["[u1,v1]", "[u2,v2]", "a"]);
        assert_eq!(d.teeth.len(), 2);
        assert_eq!(d.teeth[0].tooth.graft.terminal_labels(), vec!["u1", "v1"]);
        assert_eq!(d.teeth[0].tooth.graft.graph().label(d.teeth[0].tooth.root), "u1");
        assert!(d.fringe.is_empty());
        let rebuilt = synthesize(&d.synthesis_spec()).unwrap();
        assert_eq!(rebuilt.graft(), &p);
    }

    #[test]
    fn decompose_k2_and_pendant() {
        let k = k2();
        let j = JoinedGraft::solve(&k);
        let d = decompose(&j, &bip(&k), &set(k.graph(), &["u"])).unwrap();
        assert_eq!(d.teeth.len(), 1);
        assert!(d.teeth[0].tooth.graft.terminals().is_empty());
        assert_eq!(synthesize(&d.synthesis_spec()).unwrap().graft(), &k);

        let q = path5_pendant();
        let j = JoinedGraft::solve(&q);
        let d = decompose(&j, &bip(&q), &set(q.graph(), &["a"])).unwrap();
        assert_eq!(d.fringe, set(q.graph(), &["z"]));
        assert_eq!(d.teeth.len(), 2);
        assert_eq!(synthesize(&d.synthesis_spec()).unwrap().graft(), &path5());
    }

    #[test]
    fn synthesis_of_path5() {
        let spec = path5_spec();
        let s = synthesize(&spec).unwrap();
        assert_eq!(s.graft(), &path5());
        let join = synthesis_min_join(&spec, None, &BTreeMap::new()).unwrap();
        assert_eq!(join.edges(), &ids(&[0, 1, 2, 3]));
        for f in crate::oracle::JoinOracle::default().all_min_joins(s.graft()).unwrap() {
            check_join_factors(&spec, &s, &f).unwrap();
        }
    }

    #[test]
    fn synthesis_edge_cases() {
        let comb = star_comb();
        let bare = SynthesisSpec {
            comb: comb.clone(),
            teeth: BTreeMap::new(),
            attachments: BTreeMap::new(),
        };
        assert_eq!(synthesize(&bare).unwrap().graft(), comb.graft());
        assert_eq!(
            synthesis_min_join(&bare, None, &BTreeMap::new()).unwrap().edges(),
            &ids(&[0, 1])
        );

        let mut bad = path5_spec();
        bad.attachments.insert(EdgeId(1), "v1".into());
        assert!(matches!(synthesize(&bad), Err(Error::BadAttachment(_))));

        let mut clash = path5_spec();
        clash.teeth.insert("b2".into(), k2_tooth("u1", "x", 3));
        clash.attachments.insert(EdgeId(2), "u1".into());
        assert!(matches!(synthesize(&clash), Err(Error::LabelCollision(_))));

        let mut not_primal = path5_spec();
        // with no terminals, the far end of an edge sits at distance +1
        let g = Graft::new(Graph::new(["p", "q"], vec![(EdgeId(5), "p", "q")]).unwrap(), []).unwrap();
        not_primal.teeth.insert("b2".into(), ToothSpec { graft: g, root: "p".into() });
        not_primal.attachments.insert(EdgeId(2), "p".into());
        assert_eq!(synthesize(&not_primal), Err(Error::ToothNotPrimal("b2".into())));

        let path = Graft::from_labels(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let path = BipartiteGraft::new(path, &[0].into(), &[1].into()).unwrap();
        let spec = SynthesisSpec { comb: path, teeth: BTreeMap::new(), attachments: BTreeMap::new() };
        assert!(matches!(synthesize(&spec), Err(Error::NotComb(_))));
    }

    #[test]
    fn sebo_reports() {
        let p = path5();
        let j = JoinedGraft::solve(&p);
        let report = verify_sebo(&j, p.graph().require("a").unwrap()).unwrap();
        assert_eq!(report.min_level, -2);
        assert_eq!(report.teeth.len(), 2);

        // a shallow tooth sits above the deepest one
        let g = Graft::from_labels(&["r", "u1", "v1", "w"], &[("r", "u1"), ("u1", "v1"), ("r", "w")], &["v1", "w"]).unwrap();
        let report = verify_sebo(&JoinedGraft::solve(&g), 0).unwrap();
        assert_eq!(report.min_level, -2);
        let minima: Vec<i64> = report
            .teeth
            .iter()
            .map(|t| JoinedGraft::new(&t.graft, t.join.clone()).unwrap().distances_from(t.root).unwrap().min())
            .collect();
        assert_eq!(minima, vec![-1, 0]);

        let single = Graft::from_labels(&["z"], &[], &[]).unwrap();
        let report = verify_sebo(&JoinedGraft::solve(&single), 0).unwrap();
        assert!(report.teeth.is_empty());
    }

    #[test]
    fn primal_certificates() {
        let k = k2();
        let cert = primal_decompose(&k, 0).unwrap();
        assert!(cert.is_leaf());
        assert_eq!(cert.resynthesize().unwrap().graft(), &k);

        let p = path5();
        let a = p.graph().require("a").unwrap();
        let cert = primal_decompose(&p, a).unwrap();
        assert_eq!(cert.comb.graph().labels(), &["[u1,v1]", "[u2,v2]", "a"]);
        assert_eq!(cert.children.len(), 2);
        assert!(cert.children.values().all(|c| c.is_leaf()));
        assert_eq!(cert.resynthesize().unwrap().graft(), &p);

        // v1 is primal too, and certifies as a chain of single-tooth combs
        let v1 = p.graph().require("v1").unwrap();
        let cert = primal_decompose(&p, v1).unwrap();
        assert_eq!(cert.depth(), 4);
        assert_eq!(cert.resynthesize().unwrap().graft(), &p);

        let q = path5_pendant();
        let a = q.graph().require("a").unwrap();
        assert_eq!(primal_decompose(&q, a), Err(Error::NotPrimal("a".into())));
    }

    #[test]
    fn comb_claims_on_star() {
        let comb = star_comb();
        let report = comb_primality_checks(&comb, 0).unwrap();
        assert!(report.primal);
        assert_eq!(report.root_component.len(), 3);
        assert!(report.spine_distances.is_empty() && report.tooth_distances.is_empty());
        assert_eq!(comb_primality_checks(&comb, 1), Err(Error::NotInA("b1".into())));
    }

    #[test]
    fn appendix_profiles() {
        assert!(check_factor_connected_comb(&star_comb()).unwrap());
        check_quasicomb_bounds(&star_comb()).unwrap();
    }
}
