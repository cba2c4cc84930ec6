//! Extreme sets, combic sets, skeletons, fringes and rootlization.

use crate::distance::JoinedGraft;
use crate::error::{ensure_property, Error, Result};
use crate::graph::{
    components_with_parity, contracted_label, Bipartition, BipartiteGraft, EdgeId, EdgeSet, Graft,
    Graph, Side, VertexId, VertexSet,
};
use crate::join::{factor_components, Join};

/// Pairwise distances within `x` are all nonnegative (pairs in different
/// components are not compared).
pub fn is_extreme(joined: &JoinedGraft<'_>, x: &VertexSet) -> Result<bool> {
    joined.graft().graph().check_vertices(x)?;
    Ok(x.iter().all(|&a| {
        x.iter()
            .filter(|&&b| b > a)
            .all(|&b| joined.dist(a, b).is_none_or(|d| d >= 0))
    }))
}

fn extends(joined: &JoinedGraft<'_>, x: &VertexSet, v: VertexId) -> bool {
    !x.contains(&v) && x.iter().all(|&a| joined.dist(a, v).is_none_or(|d| d >= 0))
}

/// `x` is extreme, lies in one colour class, and no vertex of that class
/// can be added while staying extreme.
pub fn is_maximal_bipartitic_extreme(
    joined: &JoinedGraft<'_>,
    classes: &Bipartition,
    x: &VertexSet,
) -> Result<bool> {
    if !is_extreme(joined, x)? {
        return Ok(false);
    }
    let Some(side) = classes.common_side(x) else {
        return Ok(false);
    };
    Ok(classes
        .class(side)
        .into_iter()
        .all(|v| x.contains(&v) || !extends(joined, x, v)))
}

/// Grows an inclusion-maximal extreme set inside the class of `seed`,
/// trying vertices in label order.
///
/// One pass suffices: extremeness is closed under subsets, so a vertex
/// rejected against a smaller set stays rejected.
pub fn grow_maximal_bipartitic_extreme(
    joined: &JoinedGraft<'_>,
    classes: &Bipartition,
    seed: VertexId,
) -> Result<VertexSet> {
    joined.graft().graph().check_vertex(seed)?;
    let mut x = VertexSet::from([seed]);
    for v in classes.class(classes.side(seed)) {
        if extends(joined, &x, v) {
            x.insert(v);
        }
    }
    ensure_property!(
        is_maximal_bipartitic_extreme(joined, classes, &x)?,
        "greedy-maximality",
        "grown set is not maximal"
    );
    Ok(x)
}

/// `X`, `D_X` (vertices at negative distance from `X`) and `C_X` (the rest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremePartition {
    pub x: VertexSet,
    pub d: VertexSet,
    pub c: VertexSet,
}

/// Splits the vertices around an extreme set. When `x` is maximal
/// bipartitic, also checks that no edge joins `D_X` and `C_X` and that every
/// vertex of `C_X` is a trivial vertex of the opposite class.
pub fn extreme_partition(
    joined: &JoinedGraft<'_>,
    classes: &Bipartition,
    x: &VertexSet,
) -> Result<ExtremePartition> {
    if !is_extreme(joined, x)? {
        return Err(Error::NotExtreme);
    }
    let graph = joined.graft().graph();
    let (mut d, mut c) = (VertexSet::new(), VertexSet::new());
    for y in graph.vertices().filter(|y| !x.contains(y)) {
        if joined.min_dist_from_set(x, y).is_some_and(|m| m < 0) {
            d.insert(y);
        } else {
            c.insert(y);
        }
    }
    if is_maximal_bipartitic_extreme(joined, classes, x)? {
        ensure_property!(
            graph.edges_between(&d, &c).is_empty(),
            "no-edges-between-d-and-c",
            "E[D_X, C_X] = {:?}",
            graph.edges_between(&d, &c)
        );
        if !c.is_empty() {
            let side = classes.common_side(x).unwrap();
            let trivial = factor_components(joined.graft()).trivial;
            for &v in &c {
                ensure_property!(
                    trivial.contains(&v) && classes.side(v) == side.opposite(),
                    "fringe-is-trivial",
                    "`{}` is not a trivial vertex of the opposite class",
                    graph.label(v)
                );
            }
        }
    }
    Ok(ExtremePartition {
        x: x.clone(),
        d,
        c,
    })
}

pub fn is_combic(joined: &JoinedGraft<'_>, x: &VertexSet) -> Result<bool> {
    let graft = joined.graft();
    let graph = graft.graph();
    let f = joined.join().edges();
    let (_, inside) = graph.boundary_and_induced(x)?;
    if inside.intersection(f).next().is_some() {
        return Ok(false);
    }
    let parts = components_with_parity(graft, x)?;
    for (i, comp) in parts.components.iter().enumerate() {
        let (cut, _) = graph.boundary_and_induced(comp)?;
        let in_f = cut.intersection(f).count();
        let want = usize::from(parts.odd.contains(&i));
        if in_f != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The skeleton of a combic set: the even components are deleted, the edges
/// inside `X` dropped, and each odd component contracted to one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    /// Class A is the spine `X`, class B the contracted components.
    pub graft: BipartiteGraft,
    pub teeth: Vec<SkeletonTooth>,
    pub join: Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonTooth {
    /// The contracted vertex, in the skeleton.
    pub vertex: VertexId,
    /// The odd component it replaces, in the original graph.
    pub members: VertexSet,
}

impl Skeleton {
    pub fn spine(&self) -> VertexSet {
        self.graft.classes().class_a()
    }
}

pub fn skeleton_of(joined: &JoinedGraft<'_>, x: &VertexSet) -> Result<Skeleton> {
    if !is_combic(joined, x)? {
        return Err(Error::NotCombic);
    }
    let graft = joined.graft();
    let graph = graft.graph();
    let parts = components_with_parity(graft, x)?;
    let odd: Vec<&VertexSet> = parts.odd_components().collect();
    let tooth_labels: Vec<String> = odd
        .iter()
        .map(|c| {
            if c.len() == 1 {
                graph.label(*c.first().unwrap()).to_string()
            } else {
                contracted_label(c.iter().map(|&v| graph.label(v)))
            }
        })
        .collect();
    let mut labels: Vec<String> = graph.labels_of(x);
    labels.extend(tooth_labels.iter().cloned());
    let mut edges: Vec<(EdgeId, String, String)> = Vec::new();
    for (comp, tooth) in odd.iter().zip(&tooth_labels) {
        let (cut, _) = graph.boundary_and_induced(comp)?;
        for id in cut {
            let e = graph.edge(id).unwrap();
            let outer = if comp.contains(&e.u) { e.v } else { e.u };
            // components of G − X only meet X
            edges.push((id, graph.label(outer).to_string(), tooth.clone()));
        }
    }
    let skeleton_graph = Graph::new(labels.clone(), edges).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::LabelCollision(l),
        other => other,
    })?;
    let mut terminals: VertexSet = x
        .iter()
        .filter(|&&v| graft.is_terminal(v))
        .map(|&v| skeleton_graph.require(graph.label(v)).unwrap())
        .collect();
    terminals.extend(tooth_labels.iter().map(|l| skeleton_graph.require(l).unwrap()));
    let spine: VertexSet = x
        .iter()
        .map(|&v| skeleton_graph.require(graph.label(v)).unwrap())
        .collect();
    let teeth_ids: VertexSet = tooth_labels
        .iter()
        .map(|l| skeleton_graph.require(l).unwrap())
        .collect();
    let skeleton_graft = Graft::new(skeleton_graph, terminals)
        .map_err(|e| Error::violation("skeleton-parity", e.to_string()))?;
    let bipartite = BipartiteGraft::new(skeleton_graft, &spine, &teeth_ids)
        .map_err(|e| Error::violation("skeleton-bipartite", e.to_string()))?;
    let join_edges: EdgeSet = bipartite
        .graph()
        .edge_ids()
        .intersection(joined.join().edges())
        .copied()
        .collect();
    let join = Join::new(join_edges);
    JoinedGraft::new(bipartite.graft(), join.clone()).map_err(|_| {
        Error::violation("skeleton-join-minimum", "F restricted to the skeleton is not minimum")
    })?;
    let teeth = odd
        .iter()
        .zip(&tooth_labels)
        .map(|(comp, l)| SkeletonTooth {
            vertex: bipartite.graph().require(l).unwrap(),
            members: (*comp).clone(),
        })
        .collect();
    Ok(Skeleton {
        graft: bipartite,
        teeth,
        join,
    })
}

/// An odd component of `G − X` as a graft of its own, rooted where the
/// single join edge of its cut enters it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToothGraft {
    /// Vertices of the component in the original graph.
    pub members: VertexSet,
    /// `(C, (T ∩ V(C)) Δ {root})`.
    pub graft: Graft,
    /// Root, in `graft`.
    pub root: VertexId,
    /// The join edge of the component's cut.
    pub attachment: EdgeId,
    /// `F ∩ E(C)`, a minimum join of `graft`.
    pub join: Join,
}

pub fn tooth_extract(joined: &JoinedGraft<'_>, x: &VertexSet, component: &VertexSet) -> Result<ToothGraft> {
    if !is_combic(joined, x)? {
        return Err(Error::NotCombic);
    }
    let graft = joined.graft();
    let graph = graft.graph();
    let parts = components_with_parity(graft, x)?;
    if !parts.odd_components().any(|c| c == component) {
        return Err(Error::violation(
            "tooth-is-odd-component",
            "not an odd component of G − X",
        ));
    }
    let (cut, inside) = graph.boundary_and_induced(component)?;
    let attachment = *cut.intersection(joined.join().edges()).next().unwrap();
    let e = graph.edge(attachment).unwrap();
    let root_outer = if component.contains(&e.u) { e.u } else { e.v };
    let tooth_graph = graph.induced_subgraph(component)?;
    let root = tooth_graph.require(graph.label(root_outer))?;
    let mut mask: Vec<bool> = component.iter().map(|&v| graft.is_terminal(v)).collect();
    mask[root] = !mask[root];
    let tooth = Graft::from_mask(tooth_graph, mask)?;
    let join = Join::new(inside.intersection(joined.join().edges()).copied().collect());
    JoinedGraft::new(&tooth, join.clone()).map_err(|_| {
        Error::violation("tooth-join-minimum", "F ∩ E(C) is not a minimum join of the tooth")
    })?;
    Ok(ToothGraft {
        members: component.clone(),
        graft: tooth,
        root,
        attachment,
        join,
    })
}

/// Checks that `F ∩ E(C)` is a minimum join of `(C, T ∩ V(C))` for every
/// even component `C` of `G − X`.
pub fn check_even_components(joined: &JoinedGraft<'_>, x: &VertexSet) -> Result<()> {
    let graft = joined.graft();
    let parts = components_with_parity(graft, x)?;
    for comp in parts.even_components() {
        let sub = graft.induced(comp)?;
        let (_, inside) = graft.graph().boundary_and_induced(comp)?;
        let join = Join::new(inside.intersection(joined.join().edges()).copied().collect());
        JoinedGraft::new(&sub, join).map_err(|_| {
            Error::violation("even-component-join-minimum", "F ∩ E(C) is not minimum")
        })?;
    }
    Ok(())
}

fn require_maximal(joined: &JoinedGraft<'_>, classes: &Bipartition, x: &VertexSet) -> Result<Side> {
    if !is_maximal_bipartitic_extreme(joined, classes, x)? {
        return Err(Error::NotMaximalExtreme);
    }
    Ok(classes.common_side(x).unwrap())
}

/// Checks that `x` (given by label) is still maximal bipartitic extreme in
/// `after` under the same join, and that the least distance from `x` to every
/// vertex of `D_X` is unchanged.
fn check_fringe_invariants(
    before: &JoinedGraft<'_>,
    after: &JoinedGraft<'_>,
    after_classes: &Bipartition,
    partition: &ExtremePartition,
) -> Result<()> {
    let (g0, g1) = (before.graft().graph(), after.graft().graph());
    let x1 = g1.translate(g0, &partition.x);
    for &y in &partition.d {
        let y1 = g1.require(g0.label(y))?;
        ensure_property!(
            before.min_dist_from_set(&partition.x, y) == after.min_dist_from_set(&x1, y1),
            "fringe-preserves-d-distances",
            "vertex {}",
            g0.label(y)
        );
    }
    for &a in &x1 {
        for &b in &x1 {
            ensure_property!(
                after.dist(a, b).is_none_or(|d| d >= 0),
                "fringe-preserves-extremeness",
                "{} / {}",
                g1.label(a),
                g1.label(b)
            );
        }
        for y in g1.vertices() {
            let in_c = g0.vertex(g1.label(y)).is_none_or(|y0| partition.c.contains(&y0));
            if in_c {
                ensure_property!(
                    after.dist(a, y).is_none_or(|d| d > 0),
                    "fringe-positive-distance",
                    "{} / {}",
                    g1.label(a),
                    g1.label(y)
                );
            }
        }
    }
    ensure_property!(
        is_maximal_bipartitic_extreme(after, after_classes, &x1)?,
        "fringe-preserves-maximality",
        "X is no longer maximal bipartitic extreme"
    );
    Ok(())
}

/// Deletes the fringe `C_X` of a maximal bipartitic extreme set.
pub fn fringe_remove(joined: &JoinedGraft<'_>, classes: &Bipartition, x: &VertexSet) -> Result<BipartiteGraft> {
    require_maximal(joined, classes, x)?;
    let partition = extreme_partition(joined, classes, x)?;
    let graft = joined.graft();
    let reduced = graft.without_vertices(&partition.c)?;
    let reduced_classes = classes.transferred(graft.graph(), reduced.graph(), Side::A);
    let after = JoinedGraft::new(&reduced, joined.join().clone()).map_err(|_| {
        Error::violation("fringe-removal-keeps-joins", "F is not a minimum join after removal")
    })?;
    ensure_property!(
        after.nu() == joined.nu(),
        "fringe-removal-keeps-joins",
        "ν changed"
    );
    check_fringe_invariants(joined, &after, &reduced_classes, &partition)?;
    Ok(BipartiteGraft::from_parts(reduced, reduced_classes))
}

/// A vertex to be added to the fringe, with its edges into `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FringeVertex {
    pub label: String,
    pub edges: Vec<(EdgeId, String)>,
}

/// Adds new non-terminal vertices adjacent only to members of `x`.
pub fn fringe_add(
    joined: &JoinedGraft<'_>,
    classes: &Bipartition,
    x: &VertexSet,
    additions: &[FringeVertex],
) -> Result<BipartiteGraft> {
    let side = require_maximal(joined, classes, x)?;
    let graft = joined.graft();
    let graph = graft.graph();
    let mut labels: Vec<String> = graph.labels().to_vec();
    let mut edges: Vec<(EdgeId, String, String)> = graph
        .edges()
        .iter()
        .map(|e| (e.id, graph.label(e.u).to_string(), graph.label(e.v).to_string()))
        .collect();
    for add in additions {
        if graph.vertex(&add.label).is_some() {
            return Err(Error::LabelCollision(add.label.clone()));
        }
        labels.push(add.label.clone());
        for (id, target) in &add.edges {
            let t = graph
                .vertex(target)
                .ok_or_else(|| Error::IllegalAttachment(format!("`{target}` is not a vertex")))?;
            if !x.contains(&t) {
                return Err(Error::IllegalAttachment(format!("`{target}` is not in X")));
            }
            edges.push((*id, add.label.clone(), target.clone()));
        }
    }
    let new_graph = Graph::new(labels, edges).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::LabelCollision(l),
        other => other,
    })?;
    let terminals: VertexSet = graft
        .terminals()
        .iter()
        .map(|&t| new_graph.require(graph.label(t)).unwrap())
        .collect();
    let extended = Graft::new(new_graph, terminals)?;
    let extended_classes = classes.transferred(graph, extended.graph(), side.opposite());
    let partition = extreme_partition(joined, classes, x)?;
    let after = JoinedGraft::new(&extended, joined.join().clone()).map_err(|_| {
        Error::violation("fringe-addition-keeps-joins", "F is not a minimum join after addition")
    })?;
    ensure_property!(
        after.nu() == joined.nu(),
        "fringe-addition-keeps-joins",
        "ν changed"
    );
    check_fringe_invariants(joined, &after, &extended_classes, &partition)?;
    Ok(BipartiteGraft::from_parts(extended, extended_classes))
}

/// A graft extended by a root `r` and an attachment `s`, with edges `rs`
/// and `sx` for every `x` in the mount.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootlizedGraft {
    pub graft: Graft,
    /// The mount, in `graft`.
    pub mount: VertexSet,
    pub root: VertexId,
    pub attachment: VertexId,
    pub root_edge: EdgeId,
    /// `F ∪ {rs}`.
    pub join: Join,
}

pub fn rootlize(joined: &JoinedGraft<'_>, x: &VertexSet, root: &str, attachment: &str) -> Result<RootlizedGraft> {
    let graft = joined.graft();
    let graph = graft.graph();
    if !is_extreme(joined, x)? {
        return Err(Error::NotExtreme);
    }
    for l in [root, attachment] {
        if graph.vertex(l).is_some() {
            return Err(Error::LabelCollision(l.to_string()));
        }
    }
    if root == attachment {
        return Err(Error::LabelCollision(root.to_string()));
    }
    let next = graph.max_edge_id().map_or(0, |e| e.0 + 1);
    let root_edge = EdgeId(next);
    let mut labels: Vec<String> = graph.labels().to_vec();
    labels.push(root.to_string());
    labels.push(attachment.to_string());
    let mut edges: Vec<(EdgeId, String, String)> = graph
        .edges()
        .iter()
        .map(|e| (e.id, graph.label(e.u).to_string(), graph.label(e.v).to_string()))
        .collect();
    edges.push((root_edge, root.to_string(), attachment.to_string()));
    for (i, &v) in x.iter().enumerate() {
        edges.push((EdgeId(next + 1 + i as u32), attachment.to_string(), graph.label(v).to_string()));
    }
    let new_graph = Graph::new(labels, edges)?;
    let r = new_graph.require(root)?;
    let s = new_graph.require(attachment)?;
    let mut terminals: VertexSet = graft
        .terminals()
        .iter()
        .map(|&t| new_graph.require(graph.label(t)).unwrap())
        .collect();
    terminals.extend([r, s]);
    let mount = new_graph.translate(graph, x);
    let extended = Graft::new(new_graph, terminals)?;
    let mut join_edges = joined.join().edges().clone();
    join_edges.insert(root_edge);
    let join = Join::new(join_edges);
    let after = JoinedGraft::new(&extended, join.clone()).map_err(|_| {
        Error::violation("rootlization-join", "F ∪ {rs} is not a minimum join")
    })?;
    ensure_property!(
        after.dist(r, s) == Some(-1),
        "rootlization-attachment-distance",
        "dist(r, s) = {:?}",
        after.dist(r, s)
    );
    for y in graph.vertices() {
        let y1 = extended.graph().require(graph.label(y))?;
        ensure_property!(
            after.dist(r, y1) == joined.min_dist_from_set(x, y),
            "rootlization-distances",
            "vertex {}",
            graph.label(y)
        );
    }
    Ok(RootlizedGraft {
        graft: extended,
        mount,
        root: r,
        attachment: s,
        root_edge,
        join,
    })
}
