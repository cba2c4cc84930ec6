//! Brute-force references: join enumeration, simple paths, and circuits.
//!
//! Nothing here calls the matching-based solver. Joins are enumerated as a
//! forest-derived base join plus every element of the cycle space, which is
//! exactly the set of all joins.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graft, Graph, VertexId};
use crate::join::Join;

/// Edge subsets as bit masks over edge positions.
pub type EdgeBits = u64;

#[derive(Clone, Copy, Debug)]
pub struct JoinOracle {
    pub max_edges: usize,
}

impl Default for JoinOracle {
    fn default() -> Self {
        JoinOracle { max_edges: 20 }
    }
}

struct Forest {
    parent_edge: Vec<Option<usize>>,
    order: Vec<VertexId>,
    depth: Vec<usize>,
}

fn spanning_forest(graph: &Graph) -> Forest {
    let n = graph.vertex_count();
    let mut parent_edge = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in graph.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, pos) in graph.incident(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent_edge[y] = Some(pos);
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    Forest {
        parent_edge,
        order,
        depth,
    }
}

pub fn bits_to_set(graph: &Graph, bits: EdgeBits) -> EdgeSet {
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(pos, _)| bits >> pos & 1 == 1)
        .map(|(_, e)| e.id)
        .collect()
}

pub fn set_to_bits(graph: &Graph, set: &EdgeSet) -> Result<EdgeBits> {
    let mut bits = 0;
    for &id in set {
        let pos = graph.edge_position(id).ok_or(Error::ForeignEdgeId(id))?;
        bits |= 1 << pos;
    }
    Ok(bits)
}

/// `a` precedes `b` in the sorted-edge-id order (same cardinality assumed).
fn lex_less(a: EdgeBits, b: EdgeBits) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

impl JoinOracle {
    fn check_size(&self, graph: &Graph) -> Result<()> {
        let limit = self.max_edges.min(64);
        if graph.edge_count() > limit {
            return Err(Error::TooLarge {
                edges: graph.edge_count(),
                limit,
            });
        }
        Ok(())
    }

    /// Calls `visit` on every join of the graft.
    pub fn for_each_join(&self, graft: &Graft, mut visit: impl FnMut(EdgeBits)) -> Result<()> {
        let graph = graft.graph();
        self.check_size(graph)?;
        let forest = spanning_forest(graph);
        let mut need: Vec<bool> = graft.terminal_mask().to_vec();
        let mut base: EdgeBits = 0;
        for &v in forest.order.iter().rev() {
            match forest.parent_edge[v] {
                Some(pos) if need[v] => {
                    base |= 1 << pos;
                    let up = graph.edges()[pos].other(v);
                    need[up] = !need[up];
                }
                None if need[v] => return Err(Error::NoJoinExists),
                _ => {}
            }
        }
        let tree: HashSet<usize> = forest.parent_edge.iter().flatten().copied().collect();
        let mut cycles = Vec::new();
        for (pos, e) in graph.edges().iter().enumerate() {
            if tree.contains(&pos) {
                continue;
            }
            let mut bits: EdgeBits = 1 << pos;
            let (mut x, mut y) = (e.u, e.v);
            while x != y {
                if forest.depth[x] < forest.depth[y] {
                    std::mem::swap(&mut x, &mut y);
                }
                let p = forest.parent_edge[x].unwrap();
                bits ^= 1 << p;
                x = graph.edges()[p].other(x);
            }
            cycles.push(bits);
        }
        let mut current = base;
        visit(current);
        for i in 1u64..(1u64 << cycles.len()) {
            current ^= cycles[i.trailing_zeros() as usize];
            visit(current);
        }
        Ok(())
    }

    /// All joins of minimum size, as bit masks sorted ascending.
    pub fn min_join_bits(&self, graft: &Graft) -> Result<Vec<EdgeBits>> {
        let mut best = u32::MAX;
        let mut out = Vec::new();
        self.for_each_join(graft, |bits| {
            let c = bits.count_ones();
            if c < best {
                best = c;
                out.clear();
            }
            if c == best {
                out.push(bits);
            }
        })?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn all_min_joins(&self, graft: &Graft) -> Result<BTreeSet<EdgeSet>> {
        Ok(self
            .min_join_bits(graft)?
            .into_iter()
            .map(|b| bits_to_set(graft.graph(), b))
            .collect())
    }

    /// The lexicographically least minimum join, found by enumeration.
    pub fn min_join(&self, graft: &Graft) -> Result<Join> {
        let mins = self.min_join_bits(graft)?;
        let best = mins
            .into_iter()
            .reduce(|a, b| if lex_less(b, a) { b } else { a })
            .ok_or(Error::NoJoinExists)?;
        Ok(Join::new(bits_to_set(graft.graph(), best)))
    }
}

pub fn min_join_bruteforce(graft: &Graft) -> Result<Join> {
    JoinOracle::default().min_join(graft)
}

/// `w_F` of a set of edge positions.
pub fn weight_of_bits(bits: EdgeBits, join: EdgeBits) -> i64 {
    (bits & !join).count_ones() as i64 - (bits & join).count_ones() as i64
}

/// A simple path as visited vertices and traversed edge positions.
pub struct PathRef<'a> {
    pub vertices: &'a [VertexId],
    pub edges: &'a [usize],
}

/// Depth-first enumeration of every simple path starting at `source`
/// (including the trivial one).
pub fn for_each_simple_path(graph: &Graph, source: VertexId, mut visit: impl FnMut(PathRef<'_>)) {
    fn walk(
        graph: &Graph,
        on_path: &mut [bool],
        vertices: &mut Vec<VertexId>,
        edges: &mut Vec<usize>,
        visit: &mut dyn FnMut(PathRef<'_>),
    ) {
        visit(PathRef { vertices, edges });
        let x = *vertices.last().unwrap();
        for &(y, pos) in graph.incident(x) {
            if on_path[y] {
                continue;
            }
            on_path[y] = true;
            vertices.push(y);
            edges.push(pos);
            walk(graph, on_path, vertices, edges, visit);
            edges.pop();
            vertices.pop();
            on_path[y] = false;
        }
    }
    let mut on_path = vec![false; graph.vertex_count()];
    on_path[source] = true;
    walk(graph, &mut on_path, &mut vec![source], &mut Vec::new(), &mut visit);
}

/// Minimum `w_F` over simple paths from `source` to each vertex (`None` when unreachable).
pub fn min_path_weights(graph: &Graph, join: &EdgeSet, source: VertexId) -> Result<Vec<Option<i64>>> {
    let mask = graph.edge_mask(join)?;
    let mut best = vec![None::<i64>; graph.vertex_count()];
    for_each_simple_path(graph, source, |p| {
        let w: i64 = p.edges.iter().map(|&pos| if mask[pos] { -1 } else { 1 }).sum();
        let end = *p.vertices.last().unwrap();
        if best[end].is_none_or(|b| w < b) {
            best[end] = Some(w);
        }
    });
    Ok(best)
}

/// Every circuit of the multigraph as a bit mask of edge positions.
pub fn circuits(graph: &Graph) -> Result<Vec<EdgeBits>> {
    if graph.edge_count() > 64 {
        return Err(Error::TooLarge {
            edges: graph.edge_count(),
            limit: 64,
        });
    }
    let mut found: BTreeSet<EdgeBits> = BTreeSet::new();
    for start in graph.vertices() {
        // circuits whose smallest vertex is `start`
        let mut on_path = vec![false; graph.vertex_count()];
        on_path[start] = true;
        fn extend(
            graph: &Graph,
            start: VertexId,
            x: VertexId,
            bits: EdgeBits,
            last: usize,
            on_path: &mut [bool],
            found: &mut BTreeSet<EdgeBits>,
        ) {
            for &(y, pos) in graph.incident(x) {
                if pos == last || y < start {
                    continue;
                }
                if y == start {
                    if bits != 0 {
                        found.insert(bits | 1 << pos);
                    }
                    continue;
                }
                if on_path[y] {
                    continue;
                }
                on_path[y] = true;
                extend(graph, start, y, bits | 1 << pos, pos, on_path, found);
                on_path[y] = false;
            }
        }
        extend(graph, start, start, 0, usize::MAX, &mut on_path, &mut found);
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn bruteforce_examples() {
        assert_eq!(min_join_bruteforce(&k2()).unwrap().into_edges(), ids(&[0]));
        let g = square();
        assert_eq!(min_join_bruteforce(&g).unwrap().size(), 2);
        assert_eq!(
            JoinOracle::default().all_min_joins(&g).unwrap(),
            [ids(&[0, 2]), ids(&[1, 3])].into()
        );
        let empty = crate::graph::Graft::from_labels(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert_eq!(min_join_bruteforce(&empty).unwrap().size(), 0);
    }

    #[test]
    fn oracle_size_limit() {
        let g = square();
        let small = JoinOracle { max_edges: 3 };
        assert_eq!(
            small.min_join(&g),
            Err(Error::TooLarge { edges: 4, limit: 3 })
        );
    }

    #[test]
    fn every_subset_of_square_is_counted_once() {
        // the cycle space of a 4-cycle has dimension 1, so there are 2 joins
        let mut count = 0;
        JoinOracle::default().for_each_join(&square(), |_| count += 1).unwrap();
        assert_eq!(count, 2);
    }

    #[test]
    fn circuits_of_small_graphs() {
        assert_eq!(circuits(square().graph()).unwrap().len(), 1);
        let k4 = crate::graph::Graft::from_labels(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
            &[],
        )
        .unwrap();
        // 4 triangles + 3 four-cycles
        assert_eq!(circuits(k4.graph()).unwrap().len(), 7);
    }

    #[test]
    fn path_weights_on_path5() {
        let g = path5();
        let a = g.graph().require("a").unwrap();
        let w = min_path_weights(g.graph(), &ids(&[0, 1, 2, 3]), a).unwrap();
        assert_eq!(w[g.graph().require("v1").unwrap()], Some(-2));
        assert_eq!(w[g.graph().require("u2").unwrap()], Some(-1));
        assert_eq!(w[a], Some(0));
    }
}
