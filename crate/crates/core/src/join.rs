//! Minimum T-joins.
//!
//! The solver reduces a minimum join to a minimum perfect matching of the
//! terminals under unit-length shortest-path distances, then takes the
//! symmetric difference of the matched paths. Results are normalised to the
//! lexicographically least minimum join (by sorted edge ids).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graft, Graph, VertexId, VertexSet};
use crate::matching::min_perfect_matching;

/// A join together with its size.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Join {
    edges: EdgeSet,
}

impl Join {
    pub fn new(edges: EdgeSet) -> Self {
        Join { edges }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, id: crate::graph::EdgeId) -> bool {
        self.edges.contains(&id)
    }
}

/// Odd-degree indicator of the edges flagged in `mask`.
pub fn odd_vertices(graph: &Graph, mask: &[bool]) -> Vec<bool> {
    let mut odd = vec![false; graph.vertex_count()];
    for (e, _) in graph.edges().iter().zip(mask).filter(|(_, &m)| m) {
        odd[e.u] = !odd[e.u];
        odd[e.v] = !odd[e.v];
    }
    odd
}

pub fn is_join(graft: &Graft, edges: &EdgeSet) -> Result<bool> {
    let mask = graft.graph().edge_mask(edges)?;
    Ok(odd_vertices(graft.graph(), &mask) == graft.terminal_mask())
}

#[derive(Clone, Copy, Debug)]
pub struct JoinSolver {
    /// Terminal counts (per component) up to which matchings are solved exhaustively.
    pub exhaustive_matching_limit: usize,
}

impl Default for JoinSolver {
    fn default() -> Self {
        JoinSolver {
            exhaustive_matching_limit: 12,
        }
    }
}

struct Bfs {
    dist: Vec<u64>,
    parent_edge: Vec<usize>,
}

fn bfs(graph: &Graph, source: VertexId, active: Option<&[bool]>) -> Bfs {
    let n = graph.vertex_count();
    let mut dist = vec![u64::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for &(y, pos) in graph.incident(x) {
            if dist[y] != u64::MAX || active.is_some_and(|a| !a[pos]) {
                continue;
            }
            dist[y] = dist[x] + 1;
            parent_edge[y] = pos;
            queue.push_back(y);
        }
    }
    Bfs { dist, parent_edge }
}

impl JoinSolver {
    /// Minimum join size of `(graph restricted to active edges, terminals)`,
    /// or `None` if some component meets the terminals oddly.
    pub fn min_size(&self, graph: &Graph, active: Option<&[bool]>, terminals: &[bool]) -> Option<usize> {
        self.matched_paths(graph, active, terminals, false)
            .map(|(size, _)| size)
    }

    /// Returns the matching cost and, when `build` is set, the edge mask of the
    /// symmetric difference of the matched shortest paths.
    fn matched_paths(
        &self,
        graph: &Graph,
        active: Option<&[bool]>,
        terminals: &[bool],
        build: bool,
    ) -> Option<(usize, Vec<bool>)> {
        let keep = vec![true; graph.vertex_count()];
        let mut total = 0u64;
        let mut mask = vec![false; if build { graph.edge_count() } else { 0 }];
        for comp in graph.components_where(&keep, active) {
            let ts: Vec<VertexId> = comp.iter().copied().filter(|&v| terminals[v]).collect();
            if ts.len() % 2 == 1 {
                return None;
            }
            if ts.is_empty() {
                continue;
            }
            let trees: Vec<Bfs> = ts.iter().map(|&t| bfs(graph, t, active)).collect();
            let cost: Vec<Vec<u64>> = trees
                .iter()
                .map(|tree| ts.iter().map(|&t| tree.dist[t]).collect())
                .collect();
            let (c, pairs) = min_perfect_matching(&cost, self.exhaustive_matching_limit);
            total += c;
            if build {
                for (i, j) in pairs {
                    let tree = &trees[i];
                    let mut at = ts[j];
                    while at != ts[i] {
                        let pos = tree.parent_edge[at];
                        mask[pos] = !mask[pos];
                        at = graph.edges()[pos].other(at);
                    }
                }
            }
        }
        Some((total as usize, mask))
    }

    pub fn nu(&self, graft: &Graft) -> usize {
        self.min_size(graft.graph(), None, graft.terminal_mask())
            .expect("a valid graft always has a join")
    }

    /// The lexicographically least minimum join.
    pub fn min_join(&self, graft: &Graft) -> Join {
        let graph = graft.graph();
        let (size, mask) = self
            .matched_paths(graph, None, graft.terminal_mask(), true)
            .expect("a valid graft always has a join");
        debug_assert_eq!(mask.iter().filter(|&&m| m).count(), size);
        debug_assert_eq!(odd_vertices(graph, &mask), graft.terminal_mask());
        Join::new(graph.edge_set(&self.lex_least(graph, graft.terminal_mask(), size)))
    }

    /// Walks the edges in id order, keeping an edge whenever some minimum
    /// join extending the choices so far contains it.
    fn lex_least(&self, graph: &Graph, terminals: &[bool], size: usize) -> Vec<bool> {
        let mut active = vec![true; graph.edge_count()];
        let mut t = terminals.to_vec();
        let mut remaining = size;
        let mut chosen = vec![false; graph.edge_count()];
        for (pos, e) in graph.edges().iter().enumerate() {
            if remaining == 0 {
                break;
            }
            active[pos] = false;
            t[e.u] = !t[e.u];
            t[e.v] = !t[e.v];
            if self.min_size(graph, Some(&active), &t) == Some(remaining - 1) {
                chosen[pos] = true;
                remaining -= 1;
            } else {
                t[e.u] = !t[e.u];
                t[e.v] = !t[e.v];
            }
        }
        debug_assert_eq!(remaining, 0);
        chosen
    }

    /// Edges contained in at least one minimum join.
    pub fn allowed_edges(&self, graft: &Graft) -> EdgeSet {
        let graph = graft.graph();
        let nu = self.nu(graft);
        let mut allowed = EdgeSet::new();
        let mut active = vec![true; graph.edge_count()];
        let mut t = graft.terminal_mask().to_vec();
        for (pos, e) in graph.edges().iter().enumerate() {
            active[pos] = false;
            t[e.u] = !t[e.u];
            t[e.v] = !t[e.v];
            if nu > 0 && self.min_size(graph, Some(&active), &t) == Some(nu - 1) {
                allowed.insert(e.id);
            }
            t[e.u] = !t[e.u];
            t[e.v] = !t[e.v];
            active[pos] = true;
        }
        allowed
    }

    pub fn factor_components(&self, graft: &Graft) -> FactorComponents {
        let graph = graft.graph();
        let allowed = self.allowed_edges(graft);
        let active: Vec<bool> = graph.edges().iter().map(|e| allowed.contains(&e.id)).collect();
        let components = graph.components_where(&vec![true; graph.vertex_count()], Some(&active));
        let trivial = components
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| *c.first().unwrap())
            .collect();
        FactorComponents {
            components,
            trivial,
            allowed,
        }
    }
}

/// Components of the allowed-edge subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorComponents {
    pub components: Vec<VertexSet>,
    /// Vertices forming singleton factor-components.
    pub trivial: VertexSet,
    pub allowed: EdgeSet,
}

impl FactorComponents {
    pub fn component_of(&self, v: VertexId) -> &VertexSet {
        self.components.iter().find(|c| c.contains(&v)).unwrap()
    }
}

pub fn min_join(graft: &Graft) -> Join {
    JoinSolver::default().min_join(graft)
}

/// Minimum join size ν.
pub fn nu(graft: &Graft) -> usize {
    JoinSolver::default().nu(graft)
}

pub fn allowed_edges(graft: &Graft) -> EdgeSet {
    JoinSolver::default().allowed_edges(graft)
}

pub fn factor_components(graft: &Graft) -> FactorComponents {
    JoinSolver::default().factor_components(graft)
}

/// Checks that `edges` is a minimum join of `graft`.
pub fn check_minimum(graft: &Graft, edges: &EdgeSet) -> Result<()> {
    if is_join(graft, edges)? && edges.len() == nu(graft) {
        Ok(())
    } else {
        Err(Error::NotMinimumJoin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{EdgeId, Graph};

    #[test]
    fn is_join_examples() {
        let k = k2();
        assert!(is_join(&k, &ids(&[0])).unwrap());
        assert!(!is_join(&k, &EdgeSet::new()).unwrap());
        assert!(is_join(&path5(), &ids(&[0, 1, 2, 3])).unwrap());
        assert_eq!(is_join(&k, &ids(&[5])), Err(Error::ForeignEdgeId(EdgeId(5))));
    }

    #[test]
    fn min_join_examples() {
        assert_eq!(min_join(&k2()).into_edges(), ids(&[0]));
        assert_eq!(min_join(&path5()).size(), 4);
        let two = Graft::from_labels(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")], &["a", "b", "c", "d"]).unwrap();
        assert_eq!(min_join(&two).into_edges(), ids(&[0, 1]));
        let empty = Graft::from_labels(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert_eq!(min_join(&empty).size(), 0);
        // two opposite edges; the lexicographically least pair is {0, 2}
        assert_eq!(min_join(&square()).into_edges(), ids(&[0, 2]));
    }

    #[test]
    fn branch_and_bound_path_agrees() {
        let solver = JoinSolver {
            exhaustive_matching_limit: 0,
        };
        let g = square();
        assert_eq!(solver.min_join(&g), min_join(&g));
    }

    #[test]
    fn allowed_edge_examples() {
        assert_eq!(allowed_edges(&k2()), ids(&[0]));
        assert_eq!(allowed_edges(&square()), ids(&[0, 1, 2, 3]));
        let p = path5_pendant();
        assert_eq!(allowed_edges(&p), ids(&[0, 1, 2, 3]));
    }

    #[test]
    fn factor_component_examples() {
        let f = factor_components(&k2());
        assert_eq!(f.components.len(), 1);
        assert!(f.trivial.is_empty());

        let single = Graft::new(Graph::new(["z"], Vec::<(EdgeId, &str, &str)>::new()).unwrap(), []).unwrap();
        assert_eq!(factor_components(&single).trivial, [0].into());

        let p = path5_pendant();
        let f = factor_components(&p);
        let z = p.graph().require("z").unwrap();
        assert_eq!(f.trivial, [z].into());
        assert_eq!(f.components.len(), 2);
        assert_eq!(f.component_of(p.graph().require("a").unwrap()).len(), 5);
    }
}
