//! Graphs with stable edge identities, grafts, and bipartite grafts.
//!
//! Vertices are addressed by [`VertexId`], an index into the graph's sorted
//! label list. Indices are local to one graph; anything that crosses between
//! a graph and one of its subgraphs or contractions goes through labels.
//! Edge ids are global: subgraphs and contractions keep the ids of the edges
//! they inherit.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type VertexId = usize;
pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// An undirected loopless multigraph.
///
/// Labels are kept sorted and edges are kept sorted by id, so two graphs
/// with the same labels and the same labelled edges compare equal.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, usize)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new<L, E, S>(vertices: impl IntoIterator<Item = L>, edges: E) -> Result<Self>
    where
        L: Into<String>,
        E: IntoIterator<Item = (EdgeId, S, S)>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        for pair in labels.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateLabel(pair[0].clone()));
            }
        }
        let lookup = |edge: EdgeId, label: &str| -> Result<VertexId> {
            labels
                .binary_search_by(|probe| probe.as_str().cmp(label))
                .map_err(|_| Error::UnknownEndpoint {
                    edge,
                    label: label.to_string(),
                })
        };
        let mut resolved = Vec::new();
        for (id, a, b) in edges {
            let u = lookup(id, a.as_ref())?;
            let v = lookup(id, b.as_ref())?;
            resolved.push((id, u, v));
        }
        Self::from_indexed(labels, resolved)
    }

    /// Builds a graph from already sorted, distinct labels and index-based edges.
    pub(crate) fn from_indexed(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(id, a, b)| Edge {
                id,
                u: a.min(b),
                v: a.max(b),
            })
            .collect();
        edges.sort_by_key(|e| e.id);
        for pair in edges.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateEdgeId(pair[0].id));
            }
        }
        let mut adjacency = vec![Vec::new(); labels.len()];
        for (pos, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(Error::LoopEdge(e.id));
            }
            adjacency[e.u].push((e.v, pos));
            adjacency[e.v].push((e.u, pos));
        }
        Ok(Graph {
            labels,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels
            .binary_search_by(|probe| probe.as_str().cmp(label))
            .ok()
    }

    pub fn require(&self, label: &str) -> Result<VertexId> {
        self.vertex(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub(crate) fn check_vertices<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Result<()> {
        set.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Edges in ascending id order; an edge's index in this slice is its position.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_position(id).map(|p| &self.edges[p])
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.last().map(|e| e.id)
    }

    /// `(neighbour, edge position)` pairs incident to `v`.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Per-position membership mask of an edge set.
    pub fn edge_mask(&self, edges: &EdgeSet) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.edges.len()];
        for &id in edges {
            let pos = self.edge_position(id).ok_or(Error::ForeignEdgeId(id))?;
            mask[pos] = true;
        }
        Ok(mask)
    }

    pub fn edge_set(&self, mask: &[bool]) -> EdgeSet {
        self.edges
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(e, _)| e.id)
            .collect()
    }

    pub fn labels_of<'a>(&'a self, set: impl IntoIterator<Item = &'a VertexId>) -> Vec<String> {
        set.into_iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Resolves labels of `set` (ids of `other`) in this graph, skipping missing ones.
    pub fn translate(&self, other: &Graph, set: &VertexSet) -> VertexSet {
        set.iter()
            .filter_map(|&v| self.vertex(other.label(v)))
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_where(&vec![true; self.vertex_count()], None)
    }

    /// Components of the subgraph induced by `keep`, optionally restricted to
    /// the edges whose positions are flagged in `active`.
    pub(crate) fn components_where(&self, keep: &[bool], active: Option<&[bool]>) -> Vec<VertexSet> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in self.vertices() {
            if !keep[start] || seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for &(y, pos) in &self.adjacency[x] {
                    if !keep[y] || seen[y] || active.is_some_and(|a| !a[pos]) {
                        continue;
                    }
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Component index of every vertex.
    pub fn component_index(&self) -> Vec<usize> {
        let mut index = vec![0; self.vertex_count()];
        for (i, comp) in self.components().iter().enumerate() {
            for &v in comp {
                index[v] = i;
            }
        }
        index
    }

    /// `(∂(X), E[X])`: edges with exactly one end in `X` and edges with both ends in `X`.
    pub fn boundary_and_induced(&self, x: &VertexSet) -> Result<(EdgeSet, EdgeSet)> {
        self.check_vertices(x)?;
        let mut boundary = EdgeSet::new();
        let mut induced = EdgeSet::new();
        for e in &self.edges {
            match (x.contains(&e.u), x.contains(&e.v)) {
                (true, true) => {
                    induced.insert(e.id);
                }
                (true, false) | (false, true) => {
                    boundary.insert(e.id);
                }
                _ => {}
            }
        }
        Ok((boundary, induced))
    }

    /// `E[X, Y]` for disjoint `X`, `Y`.
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .filter(|e| {
                (x.contains(&e.u) && y.contains(&e.v)) || (x.contains(&e.v) && y.contains(&e.u))
            })
            .map(|e| e.id)
            .collect()
    }

    /// Vertices outside `X` adjacent to some vertex of `X`.
    pub fn neighbourhood(&self, x: &VertexSet) -> VertexSet {
        x.iter()
            .flat_map(|&v| self.adjacency[v].iter().map(|&(w, _)| w))
            .filter(|w| !x.contains(w))
            .collect()
    }

    /// The subgraph induced by `keep`, with labels and edge ids preserved.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        self.check_vertices(keep)?;
        let labels: Vec<String> = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let remap: BTreeMap<VertexId, VertexId> =
            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self.edges.iter().filter_map(|e| {
            Some((e.id, *remap.get(&e.u)?, *remap.get(&e.v)?))
        });
        Graph::from_indexed(labels, edges)
    }

    pub fn without_vertices(&self, drop: &VertexSet) -> Result<Graph> {
        self.check_vertices(drop)?;
        let keep: VertexSet = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    pub fn without_edges(&self, drop: &EdgeSet) -> Result<Graph> {
        for &id in drop {
            self.edge_position(id).ok_or(Error::ForeignEdgeId(id))?;
        }
        Graph::from_indexed(
            self.labels.clone(),
            self.edges
                .iter()
                .filter(|e| !drop.contains(&e.id))
                .map(|e| (e.id, e.u, e.v)),
        )
    }

    /// Contracts each of the disjoint sets to a single vertex labelled by
    /// [`contracted_label`]. Edges inside a set disappear; every other edge keeps
    /// its id, so parallel edges may appear. Returns the new graph and, for each
    /// old vertex, its image.
    pub fn contract_sets(&self, sets: &[VertexSet]) -> Result<(Graph, Vec<VertexId>)> {
        let mut owner: Vec<Option<usize>> = vec![None; self.vertex_count()];
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet);
            }
            self.check_vertices(set)?;
            for &v in set {
                if owner[v].is_some() {
                    return Err(Error::OverlappingSets(self.labels[v].clone()));
                }
                owner[v] = Some(i);
            }
        }
        let contracted: Vec<String> = sets
            .iter()
            .map(|set| {
                if set.len() == 1 {
                    // a singleton contracts to itself
                    self.labels[*set.first().unwrap()].clone()
                } else {
                    contracted_label(set.iter().map(|&v| self.labels[v].as_str()))
                }
            })
            .collect();
        // image label of every old vertex
        let image: Vec<&str> = self
            .vertices()
            .map(|v| match owner[v] {
                Some(i) => contracted[i].as_str(),
                None => self.labels[v].as_str(),
            })
            .collect();
        let mut labels: Vec<String> = self
            .vertices()
            .filter(|&v| owner[v].is_none())
            .map(|v| self.labels[v].clone())
            .collect();
        labels.extend(contracted.iter().cloned());
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::LabelCollision(w[0].clone()));
            }
        }
        let index = |l: &str| labels.binary_search_by(|p| p.as_str().cmp(l)).unwrap();
        let mapping: Vec<VertexId> = image.iter().map(|l| index(l)).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| mapping[e.u] != mapping[e.v])
            .map(|e| (e.id, mapping[e.u], mapping[e.v]))
            .collect();
        let graph = Graph::from_indexed(labels, edges)?;
        Ok((graph, mapping))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Label given to the vertex obtained by contracting a set: `[a,b,c]`.
pub fn contracted_label<'a>(labels: impl IntoIterator<Item = &'a str>) -> String {
    let mut parts: Vec<&str> = labels.into_iter().collect();
    parts.sort_unstable();
    format!("[{}]", parts.join(","))
}

pub fn symmetric_difference(graph: &Graph, a: &EdgeSet, b: &EdgeSet) -> Result<EdgeSet> {
    for &id in a.iter().chain(b) {
        graph.edge_position(id).ok_or(Error::ForeignEdgeId(id))?;
    }
    Ok(a.symmetric_difference(b).copied().collect())
}

/// A graph together with a terminal set meeting every component evenly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graft {
    graph: Graph,
    terminals: Vec<bool>,
}

impl Graft {
    pub fn new(graph: Graph, terminals: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut mask = vec![false; graph.vertex_count()];
        for t in terminals {
            graph.check_vertex(t)?;
            mask[t] = true;
        }
        Self::from_mask(graph, mask)
    }

    pub fn from_mask(graph: Graph, terminals: Vec<bool>) -> Result<Self> {
        assert_eq!(terminals.len(), graph.vertex_count());
        for comp in graph.components() {
            if comp.iter().filter(|&&v| terminals[v]).count() % 2 == 1 {
                return Err(Error::OddTerminalComponent {
                    component: graph.labels_of(&comp),
                });
            }
        }
        Ok(Graft { graph, terminals })
    }

    /// Convenience constructor from labels; edge ids are `0..` in the given order.
    pub fn from_labels(vertices: &[&str], edges: &[(&str, &str)], terminals: &[&str]) -> Result<Self> {
        let graph = Graph::new(
            vertices.iter().copied(),
            edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| (EdgeId(i as u32), a, b)),
        )?;
        let t = terminals
            .iter()
            .map(|l| graph.require(l))
            .collect::<Result<Vec<_>>>()?;
        Graft::new(graph, t)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminals[v]
    }

    pub fn terminal_mask(&self) -> &[bool] {
        &self.terminals
    }

    pub fn terminals(&self) -> VertexSet {
        self.graph.vertices().filter(|&v| self.terminals[v]).collect()
    }

    pub fn terminal_labels(&self) -> Vec<String> {
        self.graph.labels_of(&self.terminals())
    }

    /// The graft with `T` replaced by `T Δ toggle`.
    pub fn toggled(&self, toggle: &[VertexId]) -> Result<Graft> {
        let mut mask = self.terminals.clone();
        for &v in toggle {
            self.graph.check_vertex(v)?;
            mask[v] = !mask[v];
        }
        Graft::from_mask(self.graph.clone(), mask)
    }

    /// `(G[X], T ∩ X)`; the caller is responsible for parity.
    pub fn induced(&self, keep: &VertexSet) -> Result<Graft> {
        let graph = self.graph.induced_subgraph(keep)?;
        let mask = keep.iter().map(|&v| self.terminals[v]).collect();
        Graft::from_mask(graph, mask)
    }

    pub fn without_vertices(&self, drop: &VertexSet) -> Result<Graft> {
        let keep: VertexSet = self.graph.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }
}

/// Which colour class a vertex belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn new(graph: &Graph, class_a: &VertexSet, class_b: &VertexSet) -> Result<Self> {
        graph.check_vertices(class_a.iter().chain(class_b))?;
        if let Some(v) = class_a.intersection(class_b).next() {
            return Err(Error::InvalidBipartition(format!(
                "`{}` is in both classes",
                graph.label(*v)
            )));
        }
        let mut side = Vec::with_capacity(graph.vertex_count());
        for v in graph.vertices() {
            if class_a.contains(&v) {
                side.push(Side::A);
            } else if class_b.contains(&v) {
                side.push(Side::B);
            } else {
                return Err(Error::InvalidBipartition(format!(
                    "`{}` is in neither class",
                    graph.label(v)
                )));
            }
        }
        for e in graph.edges() {
            if side[e.u] == side[e.v] {
                return Err(Error::InvalidBipartition(format!(
                    "edge {} joins two vertices of one class",
                    e.id
                )));
            }
        }
        Ok(Bipartition { side })
    }

    /// Two-colours each component, putting its smallest label in class A.
    pub fn two_colour(graph: &Graph) -> Result<Self> {
        let mut side: Vec<Option<Side>> = vec![None; graph.vertex_count()];
        for start in graph.vertices() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(Side::A);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &(y, _) in graph.incident(x) {
                    match side[y] {
                        None => {
                            side[y] = Some(sx.opposite());
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return Err(Error::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Bipartition {
            side: side.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.side[v]
    }

    pub fn class(&self, which: Side) -> VertexSet {
        (0..self.side.len()).filter(|&v| self.side[v] == which).collect()
    }

    pub fn class_a(&self) -> VertexSet {
        self.class(Side::A)
    }

    pub fn class_b(&self) -> VertexSet {
        self.class(Side::B)
    }

    /// Classes of `to`, read off by label from this bipartition of `from`;
    /// vertices of `to` unknown to `from` are placed on `fresh`'s side.
    pub fn transferred(&self, from: &Graph, to: &Graph, fresh: Side) -> Bipartition {
        let side = to
            .labels()
            .iter()
            .map(|l| from.vertex(l).map_or(fresh, |v| self.side[v]))
            .collect();
        Bipartition { side }
    }

    /// The side shared by every member of `x`, if there is one.
    pub fn common_side(&self, x: &VertexSet) -> Option<Side> {
        let mut it = x.iter().map(|&v| self.side[v]);
        let first = it.next()?;
        it.all(|s| s == first).then_some(first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraft {
    graft: Graft,
    classes: Bipartition,
}

impl BipartiteGraft {
    pub fn new(graft: Graft, class_a: &VertexSet, class_b: &VertexSet) -> Result<Self> {
        let classes = Bipartition::new(graft.graph(), class_a, class_b)?;
        Ok(BipartiteGraft { graft, classes })
    }

    pub fn from_parts(graft: Graft, classes: Bipartition) -> Self {
        assert_eq!(classes.side.len(), graft.graph().vertex_count());
        BipartiteGraft { graft, classes }
    }

    pub fn two_coloured(graft: Graft) -> Result<Self> {
        let classes = Bipartition::two_colour(graft.graph())?;
        Ok(BipartiteGraft { graft, classes })
    }

    pub fn graft(&self) -> &Graft {
        &self.graft
    }

    pub fn graph(&self) -> &Graph {
        self.graft.graph()
    }

    pub fn classes(&self) -> &Bipartition {
        &self.classes
    }

    pub fn into_parts(self) -> (Graft, Bipartition) {
        (self.graft, self.classes)
    }
}

/// Components of `G − X`, split by the parity of their terminal count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<VertexSet>,
    pub odd: Vec<usize>,
    pub even: Vec<usize>,
}

impl ComponentPartition {
    pub fn odd_components(&self) -> impl Iterator<Item = &VertexSet> {
        self.odd.iter().map(|&i| &self.components[i])
    }

    pub fn even_components(&self) -> impl Iterator<Item = &VertexSet> {
        self.even.iter().map(|&i| &self.components[i])
    }
}

pub fn components_with_parity(graft: &Graft, x: &VertexSet) -> Result<ComponentPartition> {
    let graph = graft.graph();
    graph.check_vertices(x)?;
    let keep: Vec<bool> = graph.vertices().map(|v| !x.contains(&v)).collect();
    let components = graph.components_where(&keep, None);
    let (mut odd, mut even) = (Vec::new(), Vec::new());
    for (i, comp) in components.iter().enumerate() {
        if comp.iter().filter(|&&v| graft.is_terminal(v)).count() % 2 == 1 {
            odd.push(i);
        } else {
            even.push(i);
        }
    }
    Ok(ComponentPartition {
        components,
        odd,
        even,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn k2() -> Graft {
        Graft::from_labels(&["u", "v"], &[("u", "v")], &["u", "v"]).unwrap()
    }

    /// v1 - u1 - a - u2 - v2 with T = {v1, v2}; edge ids 0..4 in path order.
    pub fn path5() -> Graft {
        Graft::from_labels(
            &["v1", "u1", "a", "u2", "v2"],
            &[("v1", "u1"), ("u1", "a"), ("a", "u2"), ("u2", "v2")],
            &["v1", "v2"],
        )
        .unwrap()
    }

    /// PATH5 plus a pendant `z` hanging off `a` (edge id 4).
    pub fn path5_pendant() -> Graft {
        Graft::from_labels(
            &["v1", "u1", "a", "u2", "v2", "z"],
            &[("v1", "u1"), ("u1", "a"), ("a", "u2"), ("u2", "v2"), ("a", "z")],
            &["v1", "v2"],
        )
        .unwrap()
    }

    /// 4-cycle a1 b1 a2 b2 with every vertex a terminal.
    pub fn square() -> Graft {
        Graft::from_labels(
            &["a1", "b1", "a2", "b2"],
            &[("a1", "b1"), ("b1", "a2"), ("a2", "b2"), ("b2", "a1")],
            &["a1", "b1", "a2", "b2"],
        )
        .unwrap()
    }

    pub fn set(g: &Graph, labels: &[&str]) -> VertexSet {
        labels.iter().map(|l| g.require(l).unwrap()).collect()
    }

    pub fn ids(raw: &[u32]) -> EdgeSet {
        raw.iter().map(|&i| EdgeId(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn build_errors() {
        assert_eq!(
            Graft::from_labels(&["u", "v"], &[("u", "v")], &["u"]),
            Err(Error::OddTerminalComponent {
                component: vec!["u".into(), "v".into()]
            })
        );
        assert!(matches!(
            Graft::from_labels(&["u", "u"], &[], &[]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            Graft::from_labels(&["u"], &[("u", "w")], &[]),
            Err(Error::UnknownEndpoint { .. })
        ));
        assert!(matches!(
            Graft::from_labels(&["u"], &[("u", "u")], &[]),
            Err(Error::LoopEdge(EdgeId(0)))
        ));
        assert_eq!(path5().terminal_labels(), vec!["v1", "v2"]);
    }

    #[test]
    fn boundary_and_induced_on_path5() {
        let g = path5();
        let graph = g.graph();
        let (cut, inside) = graph.boundary_and_induced(&set(graph, &["a"])).unwrap();
        assert_eq!(cut, ids(&[1, 2]));
        assert!(inside.is_empty());
        let all: VertexSet = graph.vertices().collect();
        assert_eq!(
            graph.boundary_and_induced(&all).unwrap(),
            (EdgeSet::new(), graph.edge_ids())
        );
        assert_eq!(
            graph.boundary_and_induced(&VertexSet::new()).unwrap(),
            (EdgeSet::new(), EdgeSet::new())
        );
        assert!(graph.boundary_and_induced(&[42].into()).is_err());
    }

    #[test]
    fn parity_components() {
        let g = path5();
        let p = components_with_parity(&g, &set(g.graph(), &["a"])).unwrap();
        let labelled: Vec<Vec<String>> = p
            .odd_components()
            .map(|c| g.graph().labels_of(c))
            .collect();
        assert_eq!(labelled, vec![vec!["u1", "v1"], vec!["u2", "v2"]]);
        assert!(p.even.is_empty());

        let p = components_with_parity(&g, &VertexSet::new()).unwrap();
        assert!(p.odd.is_empty());

        let k = k2();
        let p = components_with_parity(&k, &set(k.graph(), &["u"])).unwrap();
        assert_eq!(p.odd.len(), 1);
        assert_eq!(k.graph().labels_of(&p.components[0]), vec!["v"]);
    }

    #[test]
    fn contraction_keeps_edge_ids() {
        let g = path5();
        let graph = g.graph();
        let sets = vec![set(graph, &["u1", "v1"]), set(graph, &["u2", "v2"])];
        let (c, map) = graph.contract_sets(&sets).unwrap();
        assert_eq!(c.labels(), &["[u1,v1]", "[u2,v2]", "a"]);
        assert_eq!(c.edge_ids(), ids(&[1, 2]));
        assert_eq!(c.label(map[graph.require("v1").unwrap()]), "[u1,v1]");

        let (same, _) = graph.contract_sets(&[set(graph, &["a"])]).unwrap();
        assert_eq!(&same, graph);

        let tri = Graph::new(["x", "y", "z"], [(EdgeId(0), "x", "y"), (EdgeId(1), "y", "z"), (EdgeId(2), "x", "z")]).unwrap();
        let (c, _) = tri.contract_sets(&[set(&tri, &["x", "y"])]).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_ids(), ids(&[1, 2]));
        assert!(c.edges().iter().all(|e| e.u != e.v));

        assert!(matches!(
            tri.contract_sets(&[set(&tri, &["x", "y"]), set(&tri, &["y", "z"])]),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn symmetric_difference_by_id() {
        let g = path5();
        let graph = g.graph();
        assert!(symmetric_difference(graph, &ids(&[1]), &ids(&[1])).unwrap().is_empty());
        assert_eq!(symmetric_difference(graph, &EdgeSet::new(), &ids(&[0, 3])).unwrap(), ids(&[0, 3]));
        assert_eq!(symmetric_difference(graph, &ids(&[1, 0]), &ids(&[0, 2])).unwrap(), ids(&[1, 2]));
        assert_eq!(
            symmetric_difference(graph, &ids(&[9]), &EdgeSet::new()),
            Err(Error::ForeignEdgeId(EdgeId(9)))
        );
    }

    #[test]
    fn two_colouring() {
        let g = square();
        let bg = BipartiteGraft::two_coloured(g.clone()).unwrap();
        let a = g.graph().labels_of(&bg.classes().class_a());
        assert_eq!(a, vec!["a1", "a2"]);
        let tri = Graft::from_labels(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")], &[]).unwrap();
        assert_eq!(BipartiteGraft::two_coloured(tri), Err(Error::NotBipartite));
    }
}
