//! Join weights, join distances, root profiles and join switching.
//!
//! Under a minimum join `F`, an edge weighs `-1` if it is in `F` and `+1`
//! otherwise. The distance between two vertices of one component is the
//! least weight of a path joining them, which equals
//! `ν(G, T Δ {x, y}) − ν(G, T)`. Distances are computed through that identity
//! and never by relaxation, since the weights are negative on undirected edges.

use std::collections::{BTreeMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{ensure_property, Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graft, VertexId, VertexSet};
use crate::join::{is_join, Join, JoinSolver};

/// `w_F(edges) = |edges ∖ F| − |edges ∩ F|`.
pub fn f_weight(graft: &Graft, join: &EdgeSet, edges: &EdgeSet) -> Result<i64> {
    let graph = graft.graph();
    for &id in join.iter().chain(edges) {
        graph.edge_position(id).ok_or(Error::ForeignEdgeId(id))?;
    }
    let inside = edges.intersection(join).count() as i64;
    Ok(edges.len() as i64 - 2 * inside)
}

/// A graft paired with a verified minimum join; distance rows are computed on demand.
#[derive(Debug)]
pub struct JoinedGraft<'g> {
    graft: &'g Graft,
    join: Join,
    nu: usize,
    solver: JoinSolver,
    component: Vec<usize>,
    rows: Vec<OnceLock<Vec<Option<i64>>>>,
}

impl<'g> JoinedGraft<'g> {
    /// Pairs `graft` with `join`, which must be a minimum join.
    pub fn new(graft: &'g Graft, join: Join) -> Result<Self> {
        let solver = JoinSolver::default();
        let nu = solver.nu(graft);
        if !is_join(graft, join.edges())? || join.size() != nu {
            return Err(Error::NotMinimumJoin);
        }
        Ok(Self::assemble(graft, join, nu, solver))
    }

    /// Pairs `graft` with its lexicographically least minimum join.
    pub fn solve(graft: &'g Graft) -> Self {
        let solver = JoinSolver::default();
        let join = solver.min_join(graft);
        let nu = join.size();
        Self::assemble(graft, join, nu, solver)
    }

    fn assemble(graft: &'g Graft, join: Join, nu: usize, solver: JoinSolver) -> Self {
        let n = graft.graph().vertex_count();
        JoinedGraft {
            graft,
            join,
            nu,
            solver,
            component: graft.graph().component_index(),
            rows: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn graft(&self) -> &'g Graft {
        self.graft
    }

    pub fn join(&self) -> &Join {
        &self.join
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn same_component(&self, x: VertexId, y: VertexId) -> bool {
        self.component[x] == self.component[y]
    }

    fn row(&self, x: VertexId) -> &[Option<i64>] {
        self.rows[x].get_or_init(|| {
            let graph = self.graft.graph();
            let mut t = self.graft.terminal_mask().to_vec();
            graph
                .vertices()
                .map(|y| {
                    if y == x {
                        return Some(0);
                    }
                    if !self.same_component(x, y) {
                        return None;
                    }
                    // a row for y may already exist
                    if let Some(d) = self.rows[y].get() {
                        return d[x];
                    }
                    t[x] = !t[x];
                    t[y] = !t[y];
                    let size = self.solver.min_size(graph, None, &t);
                    t[x] = !t[x];
                    t[y] = !t[y];
                    size.map(|s| s as i64 - self.nu as i64)
                })
                .collect()
        })
    }

    /// `dist_F(x, y)`, or `None` across components.
    pub fn dist(&self, x: VertexId, y: VertexId) -> Option<i64> {
        self.row(x)[y]
    }

    /// `min_{x ∈ X} dist(x, y)` over the members of `X` sharing `y`'s component.
    pub fn min_dist_from_set(&self, x: &VertexSet, y: VertexId) -> Option<i64> {
        x.iter().filter_map(|&s| self.dist(s, y)).min()
    }

    pub fn distances_from(&self, source: VertexId) -> Result<DistanceTable> {
        self.graft.graph().check_vertex(source)?;
        let dist = self
            .row(source)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (v, d)))
            .collect();
        Ok(DistanceTable { source, dist })
    }

    pub fn is_primal_at(&self, r: VertexId) -> bool {
        self.row(r).iter().all(|d| d.is_some_and(|d| d <= 0))
    }

    pub fn f_weight(&self, edges: &EdgeSet) -> Result<i64> {
        f_weight(self.graft, self.join.edges(), edges)
    }
}

/// Distances from one source to the vertices of its component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: VertexId,
    pub dist: BTreeMap<VertexId, i64>,
}

impl DistanceTable {
    pub fn get(&self, v: VertexId) -> Option<i64> {
        self.dist.get(&v).copied()
    }

    pub fn min(&self) -> i64 {
        self.dist.values().copied().min().unwrap_or(0)
    }
}

pub fn f_distance_from(joined: &JoinedGraft<'_>, r: VertexId) -> Result<DistanceTable> {
    joined.distances_from(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub weight: i64,
}

impl Path {
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }
}

/// A least-weight `x`–`y` path, read off `F Δ F'` for a minimum join `F'` of
/// `(G, T Δ {x, y})`.
pub fn f_shortest_path(joined: &JoinedGraft<'_>, x: VertexId, y: VertexId) -> Result<Path> {
    let graft = joined.graft();
    let graph = graft.graph();
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex);
    }
    if !joined.same_component(x, y) {
        return Err(Error::Disconnected(graph.label(x).into(), graph.label(y).into()));
    }
    let shifted = graft.toggled(&[x, y])?;
    let other = joined.solver.min_join(&shifted);
    let diff: EdgeSet = joined
        .join()
        .edges()
        .symmetric_difference(other.edges())
        .copied()
        .collect();
    let active = graph.edge_mask(&diff)?;
    // BFS inside F Δ F'; its odd vertices are exactly x and y
    let mut parent: Vec<Option<usize>> = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for &(w, pos) in graph.incident(v) {
            if active[pos] && !seen[w] {
                seen[w] = true;
                parent[w] = Some(pos);
                queue.push_back(w);
            }
        }
    }
    ensure_property!(seen[y], "shortest-path-extraction", "y unreachable inside F Δ F'");
    let mut vertices = vec![y];
    let mut edges = Vec::new();
    let mut at = y;
    while at != x {
        let pos = parent[at].unwrap();
        edges.push(graph.edges()[pos].id);
        at = graph.edges()[pos].other(at);
        vertices.push(at);
    }
    vertices.reverse();
    edges.reverse();
    let weight = joined.f_weight(&edges.iter().copied().collect())?;
    let expected = joined.dist(x, y).unwrap();
    ensure_property!(
        weight == expected,
        "shortest-path-weight",
        "path weight {weight} differs from distance {expected}"
    );
    Ok(Path {
        vertices,
        edges,
        weight,
    })
}

/// Result of moving two terminals along a least-weight path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Switched {
    pub graft: Graft,
    pub join: Join,
    pub path: Path,
}

/// Switches `F` along an `F`-shortest `x`–`y` path, yielding a minimum join of
/// `(G, T Δ {x, y})`; checks `dist_new(y, z) = dist_old(x, z) − w_F(P)` for every `z`.
pub fn join_switch(joined: &JoinedGraft<'_>, x: VertexId, y: VertexId) -> Result<Switched> {
    let path = f_shortest_path(joined, x, y)?;
    let graft = joined.graft().toggled(&[x, y])?;
    let edges: EdgeSet = joined
        .join()
        .edges()
        .symmetric_difference(&path.edge_set())
        .copied()
        .collect();
    let join = Join::new(edges);
    let switched = JoinedGraft::new(&graft, join.clone()).map_err(|_| {
        Error::violation("switched-join-minimum", "F Δ E(P) is not a minimum join")
    })?;
    for z in graft.graph().vertices() {
        let old = joined.dist(x, z);
        let new = switched.dist(y, z);
        ensure_property!(
            new == old.map(|d| d - path.weight),
            "switched-distance-shift",
            "z = {}: new {new:?}, old {old:?}, path weight {}",
            graft.graph().label(z),
            path.weight
        );
    }
    Ok(Switched { graft, join, path })
}

/// The tripartition of the vertices seen from one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProfile {
    pub root: VertexId,
    pub level0: VertexSet,
    pub lay0: VertexSet,
    pub initial_component: VertexSet,
    pub a: VertexSet,
    pub d: VertexSet,
    pub c: VertexSet,
}

pub fn root_profile(joined: &JoinedGraft<'_>, r: VertexId) -> Result<RootProfile> {
    let graph = joined.graft().graph();
    graph.check_vertex(r)?;
    let (mut level0, mut lay0) = (VertexSet::new(), VertexSet::new());
    for v in graph.vertices() {
        match joined.dist(r, v) {
            Some(0) => {
                level0.insert(v);
            }
            Some(d) if d < 0 => {
                lay0.insert(v);
            }
            _ => {}
        }
    }
    let keep: Vec<bool> = graph
        .vertices()
        .map(|v| level0.contains(&v) || lay0.contains(&v))
        .collect();
    let initial_component = graph
        .components_where(&keep, None)
        .into_iter()
        .find(|c| c.contains(&r))
        .unwrap();
    let a: VertexSet = initial_component.intersection(&level0).copied().collect();
    let d: VertexSet = initial_component.difference(&a).copied().collect();
    let c: VertexSet = graph
        .vertices()
        .filter(|v| !initial_component.contains(v))
        .collect();
    let primal = joined.is_primal_at(r);
    ensure_property!(
        primal == (c.is_empty() && level0.len() + lay0.len() == graph.vertex_count()),
        "primal-iff-initial-component-is-everything",
        "root {}",
        graph.label(r)
    );
    Ok(RootProfile {
        root: r,
        level0,
        lay0,
        initial_component,
        a,
        d,
        c,
    })
}

/// Whether every vertex lies at distance at most zero from `r`.
pub fn is_primal(graft: &Graft, r: VertexId) -> Result<bool> {
    graft.graph().check_vertex(r)?;
    Ok(JoinedGraft::solve(graft).is_primal_at(r))
}

/// Moves the root of a primal graft from `r` to another member `r2` of `A(r)`.
pub fn tower_shift(joined: &JoinedGraft<'_>, r: VertexId, r2: VertexId) -> Result<Switched> {
    let graph = joined.graft().graph();
    graph.check_vertex(r)?;
    graph.check_vertex(r2)?;
    if !joined.is_primal_at(r) {
        return Err(Error::NotPrimal(graph.label(r).into()));
    }
    let before = root_profile(joined, r)?;
    if r2 == r || !before.a.contains(&r2) {
        return Err(Error::NotInA(graph.label(r2).into()));
    }
    let switched = join_switch(joined, r, r2)?;
    let after_joined = JoinedGraft::new(&switched.graft, switched.join.clone())?;
    for x in graph.vertices() {
        ensure_property!(
            joined.dist(r, x) == after_joined.dist(r2, x),
            "tower-shift-distances",
            "vertex {}",
            graph.label(x)
        );
    }
    ensure_property!(after_joined.is_primal_at(r2), "tower-shift-primal", "new root not primal");
    let after = root_profile(&after_joined, r2)?;
    ensure_property!(
        after.a == before.a && after.d == before.d,
        "tower-shift-profile",
        "A/D sets changed"
    );
    Ok(switched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn v(g: &Graft, l: &str) -> VertexId {
        g.graph().require(l).unwrap()
    }

    #[test]
    fn weights() {
        let k = k2();
        assert_eq!(f_weight(&k, &ids(&[0]), &ids(&[0])).unwrap(), -1);
        assert_eq!(f_weight(&k, &ids(&[0]), &EdgeSet::new()).unwrap(), 0);
        let p = path5();
        assert_eq!(f_weight(&p, &ids(&[0, 1, 2, 3]), &ids(&[0, 1])).unwrap(), -2);
    }

    #[test]
    fn rejects_non_minimum_join() {
        let p = path5();
        assert_eq!(
            JoinedGraft::new(&p, Join::new(ids(&[0]))).unwrap_err(),
            Error::NotMinimumJoin
        );
    }

    #[test]
    fn distance_examples() {
        let k = k2();
        let j = JoinedGraft::solve(&k);
        assert_eq!(j.dist(v(&k, "u"), v(&k, "v")), Some(-1));
        let p = path5();
        let j = JoinedGraft::solve(&p);
        let t = f_distance_from(&j, v(&p, "a")).unwrap();
        assert_eq!(t.get(v(&p, "u1")), Some(-1));
        assert_eq!(t.get(v(&p, "v1")), Some(-2));
        assert_eq!(t.get(v(&p, "a")), Some(0));
    }

    #[test]
    fn shortest_paths() {
        let k = k2();
        let j = JoinedGraft::solve(&k);
        let path = f_shortest_path(&j, v(&k, "u"), v(&k, "v")).unwrap();
        assert_eq!(path.edges, vec![EdgeId(0)]);
        assert_eq!(path.weight, -1);

        let p = path5();
        let j = JoinedGraft::solve(&p);
        let path = f_shortest_path(&j, v(&p, "a"), v(&p, "v1")).unwrap();
        assert_eq!(p.graph().labels_of(&path.vertices), vec!["a", "u1", "v1"]);
        assert_eq!(path.weight, -2);
        let path = f_shortest_path(&j, v(&p, "v1"), v(&p, "v2")).unwrap();
        assert_eq!(path.edges.len(), 4);
        assert_eq!(path.weight, -4);
        assert_eq!(f_shortest_path(&j, v(&p, "a"), v(&p, "a")), Err(Error::SameVertex));
    }

    #[test]
    fn switching() {
        let k = k2();
        let j = JoinedGraft::solve(&k);
        let s = join_switch(&j, v(&k, "u"), v(&k, "v")).unwrap();
        assert!(s.graft.terminals().is_empty());
        assert_eq!(s.join.size(), 0);

        let p = path5();
        let j = JoinedGraft::solve(&p);
        let s = join_switch(&j, v(&p, "a"), v(&p, "v1")).unwrap();
        assert_eq!(s.graft.terminal_labels(), vec!["a", "v2"]);
        assert_eq!(s.join.edges(), &ids(&[2, 3]));
        assert_eq!(s.join.size() as i64, 4 + s.path.weight);

        let back = JoinedGraft::new(&s.graft, s.join.clone()).unwrap();
        let s2 = join_switch(&back, v(&p, "v1"), v(&p, "a")).unwrap();
        assert_eq!(s2.graft, p);
        assert_eq!(s2.join.size(), 4);
    }

    #[test]
    fn profiles() {
        let k = k2();
        let j = JoinedGraft::solve(&k);
        let prof = root_profile(&j, v(&k, "u")).unwrap();
        assert_eq!(prof.a, set(k.graph(), &["u"]));
        assert_eq!(prof.d, set(k.graph(), &["v"]));
        assert!(prof.c.is_empty());

        let p = path5();
        let j = JoinedGraft::solve(&p);
        let prof = root_profile(&j, v(&p, "a")).unwrap();
        assert_eq!(prof.a, set(p.graph(), &["a"]));
        assert_eq!(prof.d, set(p.graph(), &["u1", "v1", "u2", "v2"]));
        assert!(prof.c.is_empty());

        let q = path5_pendant();
        let j = JoinedGraft::solve(&q);
        assert_eq!(j.dist(v(&q, "a"), v(&q, "z")), Some(1));
        let prof = root_profile(&j, v(&q, "a")).unwrap();
        assert_eq!(prof.c, set(q.graph(), &["z"]));
    }

    #[test]
    fn primality() {
        let k = k2();
        assert!(is_primal(&k, v(&k, "u")).unwrap());
        let p = path5();
        assert!(is_primal(&p, v(&p, "a")).unwrap());
        let q = path5_pendant();
        assert!(!is_primal(&q, v(&q, "a")).unwrap());
    }

    #[test]
    fn tower_shift_on_square() {
        let g = square();
        let j = JoinedGraft::solve(&g);
        let (a1, a2) = (v(&g, "a1"), v(&g, "a2"));
        assert!(j.is_primal_at(a1));
        let prof = root_profile(&j, a1).unwrap();
        assert_eq!(prof.a, [a1, a2].into());
        let s = tower_shift(&j, a1, a2).unwrap();
        let shifted = JoinedGraft::new(&s.graft, s.join.clone()).unwrap();
        assert_eq!(root_profile(&shifted, a2).unwrap().a, prof.a);
        let back = tower_shift(&shifted, a2, a1).unwrap();
        assert_eq!(back.graft, g);

        let k = k2();
        let j = JoinedGraft::solve(&k);
        assert_eq!(
            tower_shift(&j, v(&k, "u"), v(&k, "v")).unwrap_err(),
            Error::NotInA("v".into())
        );
    }
}
