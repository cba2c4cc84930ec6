//! Seeded random grafts.

use graft_core::{EdgeId, Graft, Graph, VertexSet};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

const CONNECT_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    /// Probability that a vertex is sampled as a terminal.
    pub density: f64,
    pub bipartite: bool,
}

pub fn label(i: usize) -> String {
    format!("v{i}")
}

fn candidate_pairs(n: usize, side: Option<&[bool]>) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side.is_none_or(|s| s[u] != s[v]) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A connected simple graft on `v0..v{n-1}`, drawn from `rng`.
///
/// Edge sets are sampled uniformly and redrawn until connected. Terminals are
/// sampled independently; if an odd number is drawn, the last sampled vertex is
/// dropped again.
pub fn random_graft_with(rng: &mut ChaCha8Rng, p: GenParams) -> Result<Graft> {
    if p.n == 0 {
        return Err(CliError::InfeasibleParameters("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(CliError::InfeasibleParameters("density must lie in [0, 1]".into()));
    }
    let cap = if p.bipartite { (p.n / 2) * p.n.div_ceil(2) } else { p.n * (p.n - 1) / 2 };
    if p.m + 1 < p.n || p.m > cap {
        return Err(CliError::InfeasibleParameters(format!(
            "no connected simple{} graph with {} vertices and {} edges",
            if p.bipartite { " bipartite" } else { "" },
            p.n,
            p.m
        )));
    }
    // class splits are redrawn until they can carry m edges
    let pairs = loop {
        let side: Option<Vec<bool>> = p.bipartite.then(|| (0..p.n).map(|_| rng.gen_bool(0.5)).collect());
        let pairs = candidate_pairs(p.n, side.as_deref());
        if pairs.len() >= p.m {
            break pairs;
        }
    };
    let mut chosen = None;
    for _ in 0..CONNECT_ATTEMPTS {
        let mut picked: Vec<(usize, usize)> = sample(rng, pairs.len(), p.m).into_iter().map(|i| pairs[i]).collect();
        picked.sort_unstable();
        if connected(p.n, &picked) {
            chosen = Some(picked);
            break;
        }
    }
    let edges = chosen.ok_or_else(|| {
        CliError::InfeasibleParameters(format!("no connected sample after {CONNECT_ATTEMPTS} attempts"))
    })?;
    let mut sampled: Vec<usize> = (0..p.n).filter(|_| rng.gen_bool(p.density)).collect();
    if sampled.len() % 2 == 1 {
        // "last" in label order, not index order
        let last = *sampled.iter().max_by_key(|&&v| label(v)).unwrap();
        sampled.retain(|&v| v != last);
    }
    let labels: Vec<String> = (0..p.n).map(label).collect();
    let graph = Graph::new(
        labels.clone(),
        edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (EdgeId(i as u32), labels[u].as_str(), labels[v].as_str()))
            .collect::<Vec<_>>(),
    )?;
    let terminals: VertexSet = sampled.iter().map(|&v| graph.require(&labels[v]).unwrap()).collect();
    Ok(Graft::new(graph, terminals)?)
}

pub fn gen_random_graft(p: GenParams, seed: u64) -> Result<Graft> {
    random_graft_with(&mut ChaCha8Rng::seed_from_u64(seed), p)
}

/// Generator for trial `index` of a run seeded with `seed`: one ChaCha stream per trial.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random parameters with `1 ≤ n ≤ max_n`, `n − 1 ≤ m ≤ max_m`, density ½.
pub fn random_params(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize, bipartite: bool) -> GenParams {
    let n = rng.gen_range(1..=max_n.max(1));
    let cap = if bipartite { (n / 2) * n.div_ceil(2) } else { n * (n - 1) / 2 };
    let hi = cap.min(max_m).max(n - 1);
    GenParams {
        n,
        m: rng.gen_range(n - 1..=hi),
        density: 0.5,
        bipartite,
    }
}

/// A random graft from [`random_params`], retrying when no connected sample turns up.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize, bipartite: bool) -> Graft {
    loop {
        let p = random_params(rng, max_n, max_m, bipartite);
        if let Ok(g) = random_graft_with(rng, p) {
            return g;
        }
    }
}
