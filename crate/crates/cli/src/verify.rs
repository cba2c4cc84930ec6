//! Verification suites. Each check runs one family of structural claims on a
//! single graft and reports the first violated property.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use graft_core::oracle::{bits_to_set, circuits, for_each_simple_path, min_path_weights, weight_of_bits, EdgeBits};
use graft_core::{
    allowed_edges, check_factor_connected_comb, check_join_factors, check_quasicomb_bounds, comb_primality_checks,
    comb_violation, decompose, extreme_partition, f_shortest_path, fringe_add, fringe_remove,
    grow_maximal_bipartitic_extreme, is_combic, is_extreme, join_switch, min_join, nu, primal_decompose, root_profile,
    rootlize, skeleton_of, synthesis_min_join, synthesize, tooth_extract, tower_shift, verify_sebo, Bipartition,
    BipartiteGraft, EdgeId, EdgeSet, FringeVertex, Graft, Graph, Join, JoinOracle, JoinSolver, JoinedGraft,
    PrimalCertificate, Side, SynthesisSpec, ToothSpec, VertexId, VertexSet,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::document::GraftDocument;
use crate::enumerate::small_grafts;
use crate::error::CliError;
use crate::generate::{random_graft_with, random_instance, trial_rng, GenParams};

/// Exhaustive enumeration stops at this many vertices.
pub const EXHAUSTIVE_LIMIT: usize = 6;
/// Failures beyond this many are counted but not minimized.
pub const MAX_WITNESSES: usize = 10;
/// Oracle enumeration is skipped above this cycle-space dimension.
pub const MAX_CYCLE_RANK: usize = 20;

/// A violated property and what was observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fail {
    pub property: String,
    pub detail: String,
}

impl From<graft_core::Error> for Fail {
    fn from(e: graft_core::Error) -> Self {
        match e {
            graft_core::Error::Violation { property, detail } => Fail {
                property: property.to_string(),
                detail,
            },
            other => Fail {
                property: "operation-failed".into(),
                detail: other.to_string(),
            },
        }
    }
}

macro_rules! require {
    ($cond:expr, $property:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Fail { property: $property.to_string(), detail: format!($($fmt)+) });
        }
    };
}

pub type Outcome = Result<(), Fail>;

/// Deliberate faults, used to show that the suites catch broken code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Every distance between distinct vertices is reported one too high.
    DistanceOffByOne,
}

impl FromStr for Mutation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Mutation::None),
            "distance-off-by-one" => Ok(Mutation::DistanceOffByOne),
            _ => Err(format!("unknown mutation `{s}`")),
        }
    }
}

pub type Check = fn(&Graft, &mut ChaCha8Rng, Mutation) -> Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Joins,
    Distances,
    Extreme,
    Combic,
    Fringe,
    Rootlize,
    Decompose,
    Synthesis,
    Primal,
    Appendix,
}

pub const SUITES: [Suite; 10] = [
    Suite::Joins,
    Suite::Distances,
    Suite::Extreme,
    Suite::Combic,
    Suite::Fringe,
    Suite::Rootlize,
    Suite::Decompose,
    Suite::Synthesis,
    Suite::Primal,
    Suite::Appendix,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Joins => "joins",
            Suite::Distances => "distances",
            Suite::Extreme => "extreme",
            Suite::Combic => "combic",
            Suite::Fringe => "fringe",
            Suite::Rootlize => "rootlize",
            Suite::Decompose => "decompose",
            Suite::Synthesis => "synthesis",
            Suite::Primal => "primal",
            Suite::Appendix => "appendix",
        }
    }

    /// Whether the suite runs on bipartite instances only.
    pub fn bipartite(self) -> bool {
        matches!(
            self,
            Suite::Extreme | Suite::Fringe | Suite::Decompose | Suite::Synthesis | Suite::Primal
        )
    }

    pub fn checks(self) -> &'static [(&'static str, Check)] {
        match self {
            Suite::Joins => &[("joins", check_joins)],
            Suite::Distances => &[("distances", check_distances), ("switching", check_switching)],
            Suite::Extreme => &[("extreme", check_extreme)],
            Suite::Combic => &[("combic", check_combic)],
            Suite::Fringe => &[("fringe", check_fringe)],
            Suite::Rootlize => &[("rootlize", check_rootlize)],
            Suite::Decompose => &[("decompose", check_decompose)],
            Suite::Synthesis => &[("synthesis", check_synthesis)],
            Suite::Primal => &[("primal", check_primal)],
            Suite::Appendix => &[("circuits", check_circuits), ("comb-profiles", check_comb_profiles)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` gives every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>, CliError> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| s.name() == name)
        .map(|&s| vec![s])
        .ok_or_else(|| CliError::UnknownSuite(name.to_string()))
}

/// Number of times an oracle comparison was skipped for size.
pub static ORACLE_SKIPS: AtomicUsize = AtomicUsize::new(0);

pub fn cycle_rank(graft: &Graft) -> usize {
    let g = graft.graph();
    g.edge_count() + g.components().len() - g.vertex_count()
}

fn oracle_min_joins(graft: &Graft) -> Result<Option<BTreeSet<EdgeSet>>, Fail> {
    if cycle_rank(graft) > MAX_CYCLE_RANK {
        ORACLE_SKIPS.fetch_add(1, Ordering::Relaxed);
        return Ok(None);
    }
    Ok(Some(JoinOracle { max_edges: 64 }.all_min_joins(graft)?))
}

fn bipartite(graft: &Graft) -> Result<BipartiteGraft, Fail> {
    BipartiteGraft::two_coloured(graft.clone()).map_err(|_| Fail {
        property: "instance-bipartite".into(),
        detail: "suite needs a bipartite instance".into(),
    })
}

fn fresh(graph: &Graph, base: &str) -> String {
    let mut l = base.to_string();
    while graph.vertex(&l).is_some() {
        l.push('\'');
    }
    l
}

/// Solver against oracle: size, lexicographic choice, both matching
/// strategies, and the allowed edges.
pub fn check_joins(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let Some(mins) = oracle_min_joins(graft)? else { return Ok(()) };
    let best = mins.first().map(|f| f.len()).unwrap_or(0);
    let solved = min_join(graft);
    require!(solved.size() == best, "solver-size-equals-oracle", "solver {}, oracle {best}", solved.size());
    require!(nu(graft) == best, "nu-equals-oracle", "ν {}, oracle {best}", nu(graft));
    require!(mins.contains(solved.edges()), "solver-join-is-minimum", "{:?}", solved.edges());
    let lex = JoinOracle { max_edges: 64 }.min_join(graft)?;
    require!(lex == solved, "lex-least-join", "solver {:?}, oracle {:?}", solved.edges(), lex.edges());
    let bb = JoinSolver { exhaustive_matching_limit: 0 }.min_join(graft);
    require!(bb == solved, "branch-and-bound-agrees", "{:?}", bb.edges());
    let union: EdgeSet = if best == 0 { EdgeSet::new() } else { mins.iter().flatten().copied().collect() };
    require!(allowed_edges(graft) == union, "allowed-edges-are-union-of-minimum-joins", "{:?}", union);
    Ok(())
}

/// ν-difference distances against exhaustive simple-path weights, plus
/// symmetry, parity on bipartite grafts, triangle inequality, and path extraction.
pub fn check_distances(graft: &Graft, _: &mut ChaCha8Rng, mutation: Mutation) -> Outcome {
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    let table: Vec<Vec<Option<i64>>> = g
        .vertices()
        .map(|x| {
            g.vertices()
                .map(|y| {
                    let d = joined.dist(x, y);
                    match mutation {
                        Mutation::DistanceOffByOne if x != y => d.map(|v| v + 1),
                        _ => d,
                    }
                })
                .collect()
        })
        .collect();
    for x in g.vertices() {
        let weights = min_path_weights(g, joined.join().edges(), x)?;
        for y in g.vertices() {
            require!(
                table[x][y] == weights[y],
                "distance-equals-path-weight",
                "{} / {}: {:?} vs {:?}",
                g.label(x),
                g.label(y),
                table[x][y],
                weights[y]
            );
            require!(table[x][y] == table[y][x], "distance-symmetric", "{} / {}", g.label(x), g.label(y));
        }
    }
    if let Ok(classes) = Bipartition::two_colour(g) {
        for x in g.vertices() {
            for y in g.vertices() {
                if let Some(d) = table[x][y] {
                    let odd = classes.side(x) != classes.side(y);
                    require!(d.rem_euclid(2) == i64::from(odd), "distance-parity", "{} / {}: {d}", g.label(x), g.label(y));
                }
            }
        }
    }
    let mut paths = BTreeMap::new();
    for x in g.vertices() {
        for y in g.vertices().filter(|&y| y != x && joined.same_component(x, y)) {
            let p = f_shortest_path(&joined, x, y)?;
            require!(Some(p.weight) == table[x][y] || mutation != Mutation::None, "extracted-path-weight", "{} / {}", g.label(x), g.label(y));
            paths.insert((x, y), p);
        }
    }
    // dist(x,z) <= dist(x,y) + dist(y,z) when the two shortest paths glue into a path
    for (&(x, y), p) in &paths {
        for (&(_, z), q) in paths.range((y, 0)..(y + 1, 0)) {
            let glued = z != x && p.vertices.iter().filter(|v| q.vertices.contains(v)).count() == 1;
            if glued {
                let (a, b, c) = (table[x][y].unwrap(), table[y][z].unwrap(), table[x][z].unwrap());
                require!(c <= a + b, "triangle-inequality", "{} {} {}", g.label(x), g.label(y), g.label(z));
            }
        }
    }
    Ok(())
}

/// Join switching between every pair, and tower shifts (with their round
/// trip) at every primal root.
pub fn check_switching(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    for x in g.vertices() {
        for y in g.vertices().filter(|&y| y != x && joined.same_component(x, y)) {
            let s = join_switch(&joined, x, y)?;
            require!(
                graft_core::is_join(&s.graft, s.join.edges())? && s.join.size() == nu(&s.graft),
                "switched-join-minimum",
                "{} / {}",
                g.label(x),
                g.label(y)
            );
        }
    }
    for r in g.vertices().filter(|&r| joined.is_primal_at(r)) {
        let a = root_profile(&joined, r)?.a;
        for &r2 in a.iter().filter(|&&v| v != r) {
            let s = tower_shift(&joined, r, r2)?;
            let shifted = JoinedGraft::new(&s.graft, s.join.clone())?;
            let back = tower_shift(&shifted, r2, r)?;
            require!(back.graft == *graft, "tower-shift-involution", "{} / {}", g.label(r), g.label(r2));
        }
    }
    Ok(())
}

/// Greedy maximal bipartitic extreme sets from every seed, subset closure,
/// and the fringe structure (no D–C edges, fringe vertices trivial, non-terminal,
/// and untouched by every minimum join).
pub fn check_extreme(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let bg = bipartite(graft)?;
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    let mins = oracle_min_joins(graft)?;
    for seed in g.vertices() {
        let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), seed)?;
        for &v in &x {
            let mut smaller = x.clone();
            smaller.remove(&v);
            require!(is_extreme(&joined, &smaller)?, "extreme-subset-closed", "drop {}", g.label(v));
        }
        let part = extreme_partition(&joined, bg.classes(), &x)?;
        let covered: VertexSet = x.iter().chain(&part.d).chain(&part.c).copied().collect();
        require!(covered.len() == g.vertex_count(), "partition-covers", "seed {}", g.label(seed));
        for &c in &part.c {
            require!(!graft.is_terminal(c), "fringe-not-terminal", "{}", g.label(c));
            if let Some(mins) = &mins {
                let touched = mins.iter().flatten().any(|&id| g.edge(id).unwrap().touches(c));
                require!(!touched, "fringe-untouched-by-minimum-joins", "{}", g.label(c));
            }
        }
    }
    Ok(())
}

/// Every combic set (all subsets up to 10 vertices, else 256 samples): the
/// skeleton, tooth and even-component joins are minimum, the skeleton one
/// also against the oracle, and the skeleton meets the quasicomb bounds.
pub fn check_combic(graft: &Graft, rng: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let g = graft.graph();
    let n = g.vertex_count();
    let joined = JoinedGraft::solve(graft);
    let masks: Vec<u64> = if n <= 10 {
        (0..1u64 << n).collect()
    } else {
        (0..256).map(|_| rng.gen::<u64>() & ((1u64 << n) - 1)).collect()
    };
    for mask in masks {
        let x: VertexSet = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        if !is_combic(&joined, &x)? {
            continue;
        }
        let skeleton = skeleton_of(&joined, &x)?;
        if let Some(mins) = oracle_min_joins(skeleton.graft.graft())? {
            let best = mins.first().map(|f| f.len()).unwrap_or(0);
            require!(skeleton.join.size() == best, "skeleton-join-oracle-minimum", "X = {:?}", g.labels_of(&x));
        }
        check_quasicomb_bounds(&skeleton.graft)?;
        for st in &skeleton.teeth {
            tooth_extract(&joined, &x, &st.members)?;
        }
        graft_core::check_even_components(&joined, &x)?;
    }
    Ok(())
}

/// Fringe addition then removal around a random maximal set: minimum joins
/// unchanged (oracle), D_X distances and maximality kept (checked inside),
/// and positive weight for every path or circuit through the fringe.
pub fn check_fringe(graft: &Graft, rng: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let bg = bipartite(graft)?;
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    let seed = rng.gen_range(0..g.vertex_count());
    let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), seed)?;
    let mut next_id = g.max_edge_id().map_or(0, |e| e.0 + 1);
    let mut additions = Vec::new();
    let mut taken = BTreeSet::new();
    for k in 0..rng.gen_range(1..=2) {
        let mut label = fresh(g, &format!("f{k}"));
        while !taken.insert(label.clone()) {
            label.push('\'');
        }
        let mut edges = Vec::new();
        for &v in &x {
            if rng.gen_bool(0.6) {
                edges.push((EdgeId(next_id), g.label(v).to_string()));
                next_id += 1;
            }
        }
        additions.push(FringeVertex { label, edges });
    }
    let extended = fringe_add(&joined, bg.classes(), &x, &additions)?;
    let before = oracle_min_joins(graft)?;
    if let (Some(b), Some(a)) = (&before, oracle_min_joins(extended.graft())?) {
        require!(*b == a, "fringe-addition-keeps-minimum-joins", "seed {}", g.label(seed));
    }
    let ej = JoinedGraft::new(extended.graft(), joined.join().clone())?;
    let eg = extended.graph();
    let xe = eg.translate(g, &x);
    let part = extreme_partition(&ej, extended.classes(), &xe)?;
    require!(!part.c.is_empty(), "fringe-nonempty", "seed {}", g.label(seed));
    let reduced = fringe_remove(&ej, extended.classes(), &xe)?;
    if let (Some(b), Some(a)) = (&before, oracle_min_joins(reduced.graft())?) {
        require!(*b == a, "fringe-removal-keeps-minimum-joins", "seed {}", g.label(seed));
    }
    let direct = fringe_remove(&joined, bg.classes(), &x)?;
    require!(direct.graft() == reduced.graft(), "fringe-removal-consistent", "seed {}", g.label(seed));

    if eg.vertex_count() <= 9 {
        let z = &part.c;
        let mask = eg.edge_mask(ej.join().edges())?;
        for &start in &xe {
            let mut bad = None;
            for_each_simple_path(eg, start, |p| {
                if bad.is_some() || p.edges.is_empty() || !p.vertices.iter().any(|v| z.contains(v)) {
                    return;
                }
                let w: i64 = p.edges.iter().map(|&pos| if mask[pos] { -1 } else { 1 }).sum();
                let end = *p.vertices.last().unwrap();
                let to_trivial = (xe.contains(&end) || z.contains(&end)) && w <= 0;
                let to_deep = part.d.contains(&end) && w <= ej.min_dist_from_set(&xe, end).unwrap();
                if to_trivial || to_deep {
                    bad = Some(format!("path {} to {} has weight {w}", eg.label(start), eg.label(end)));
                }
            });
            if let Some(detail) = bad {
                return Err(Fail { property: "fringe-paths-positive".into(), detail });
            }
        }
        let join_bits = graft_core::oracle::set_to_bits(eg, ej.join().edges())?;
        for c in circuits(eg)? {
            let through_z = eg.edges().iter().enumerate().any(|(pos, e)| c >> pos & 1 == 1 && (z.contains(&e.u) || z.contains(&e.v)));
            if through_z {
                require!(weight_of_bits(c, join_bits) > 0, "fringe-circuits-positive", "circuit {:?}", bits_to_set(eg, c));
            }
        }
    }
    Ok(())
}

/// Rootlization by a random extreme mount: minimum joins are exactly the
/// lifted ones (oracle), plus the distance identities (checked inside).
pub fn check_rootlize(graft: &Graft, rng: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.shuffle(rng);
    let mut x = VertexSet::new();
    for v in order {
        x.insert(v);
        if !is_extreme(&joined, &x)? {
            x.remove(&v);
        }
    }
    let (r, s) = (fresh(g, "r"), fresh(g, "s"));
    let s = if r == s { format!("{s}'") } else { s };
    let rooted = rootlize(&joined, &x, &r, &s)?;
    let rj = JoinedGraft::new(&rooted.graft, rooted.join.clone())?;
    for &m in &rooted.mount {
        require!(rj.dist(rooted.root, m) == Some(0), "root-to-mount-zero", "{}", rooted.graft.graph().label(m));
    }
    if let (Some(before), Some(after)) = (oracle_min_joins(graft)?, oracle_min_joins(&rooted.graft)?) {
        let lifted: BTreeSet<EdgeSet> = before
            .into_iter()
            .map(|mut f| {
                f.insert(rooted.root_edge);
                f
            })
            .collect();
        require!(after == lifted, "rootlization-minimum-joins", "mount {:?}", g.labels_of(&x));
    }
    Ok(())
}

/// Decomposition from every seed (all structural claims checked inside) and
/// the round trip through fringe removal and synthesis.
pub fn check_decompose(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let bg = bipartite(graft)?;
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    for seed in g.vertices() {
        let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), seed)?;
        let d = decompose(&joined, bg.classes(), &x)?;
        let reduced = fringe_remove(&joined, bg.classes(), &x)?;
        let rebuilt = synthesize(&d.synthesis_spec())?;
        require!(rebuilt.graft() == reduced.graft(), "decompose-synthesize-round-trip", "seed {}", g.label(seed));
        let spine_side = bg.classes().side(seed);
        let rg = reduced.graph();
        for v in rg.vertices() {
            let want = if reduced.classes().side(v) == spine_side { Side::A } else { Side::B };
            require!(rebuilt.classes().side(v) == want, "synthesis-classes", "vertex {}", rg.label(v));
        }
    }
    Ok(())
}

fn renamed(graft: &Graft, prefix: &str, id_offset: u32) -> Graft {
    let g = graft.graph();
    let labels: Vec<String> = g.labels().iter().map(|l| format!("{prefix}{l}")).collect();
    let graph = Graph::new(
        labels.clone(),
        g.edges()
            .iter()
            .map(|e| (EdgeId(e.id.0 + id_offset), labels[e.u].clone(), labels[e.v].clone()))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    Graft::new(graph, graft.terminals()).unwrap()
}

/// A random bipartite primal graft with at most six vertices, rooted at a random primal root.
fn random_primal_tooth(rng: &mut ChaCha8Rng, prefix: &str, id_offset: u32) -> ToothSpec {
    loop {
        let n: usize = rng.gen_range(1..=6);
        let cap = (n / 2) * n.div_ceil(2);
        let m = rng.gen_range(n - 1..=cap.min(n + 1).max(n - 1));
        let p = GenParams { n, m, density: 0.5, bipartite: true };
        let Ok(graft) = random_graft_with(rng, p) else { continue };
        let joined = JoinedGraft::solve(&graft);
        let roots: Vec<VertexId> = graft.graph().vertices().filter(|&r| joined.is_primal_at(r)).collect();
        if let Some(&r) = roots.choose(rng) {
            let graft = renamed(&graft, prefix, id_offset);
            let root = graft.graph().label(r).to_string();
            return ToothSpec { graft, root };
        }
    }
}

fn root_set(tooth: &ToothSpec) -> Result<BTreeSet<String>, Fail> {
    let g = tooth.graft.graph();
    let a = root_profile(&JoinedGraft::solve(&tooth.graft), g.require(&tooth.root)?)?.a;
    Ok(g.labels_of(&a).into_iter().collect())
}

fn root_sets(graft: &Graft, root: &str) -> Result<(BTreeSet<String>, BTreeSet<String>), Fail> {
    let g = graft.graph();
    let p = root_profile(&JoinedGraft::solve(graft), g.require(root)?)?;
    Ok((g.labels_of(&p.a).into_iter().collect(), g.labels_of(&p.d).into_iter().collect()))
}

/// A synthesis from the skeleton comb of `graft` (random seed) and random
/// primal teeth: the composed join is minimum, the spine is maximal with no
/// fringe, every oracle minimum join factors, and both round trips are exact.
pub fn check_synthesis(graft: &Graft, rng: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let bg = bipartite(graft)?;
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    let seed = rng.gen_range(0..g.vertex_count());
    let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), seed)?;
    let comb = decompose(&joined, bg.classes(), &x)?.skeleton.graft;
    let cg = comb.graph();
    let mut next_id = cg.max_edge_id().map_or(0, |e| e.0 + 1);
    let mut teeth = BTreeMap::new();
    let mut attachments = BTreeMap::new();
    for (k, b) in comb.classes().class_b().into_iter().enumerate() {
        let tooth = random_primal_tooth(rng, &format!("t{k}_"), next_id);
        next_id = tooth.graft.graph().max_edge_id().map_or(next_id, |e| e.0 + 1);
        let targets: Vec<String> = root_set(&tooth)?.into_iter().collect();
        for &(_, pos) in cg.incident(b) {
            attachments.insert(cg.edges()[pos].id, targets.choose(rng).unwrap().clone());
        }
        teeth.insert(cg.label(b).to_string(), tooth);
    }
    let spec = SynthesisSpec { comb: comb.clone(), teeth, attachments };
    let synth = synthesize(&spec)?;
    let sg = synth.graph();
    let join = synthesis_min_join(&spec, None, &BTreeMap::new())?;

    if let Some(mins) = oracle_min_joins(synth.graft())? {
        let best = mins.first().map(|f| f.len()).unwrap_or(0);
        require!(join.size() == best, "synthesis-join-oracle-minimum", "{} vs {best}", join.size());
        for f in &mins {
            check_join_factors(&spec, &synth, f)?;
        }
    }
    if let Some(comb_mins) = oracle_min_joins(comb.graft())? {
        for f in comb_mins {
            synthesis_min_join(&spec, Some(&Join::new(f)), &BTreeMap::new())?;
        }
    }

    // decompose the synthesis around its spine
    let sj = JoinedGraft::solve(synth.graft());
    let spine = sg.translate(cg, &comb.classes().class_a());
    let d = decompose(&sj, synth.classes(), &spine)?;
    require!(d.fringe.is_empty(), "synthesis-has-no-fringe", "{:?}", sg.labels_of(&d.fringe));
    let mut rename = BTreeMap::new();
    for t in &d.teeth {
        let members: BTreeSet<String> = sg.labels_of(&t.tooth.members).into_iter().collect();
        let owner = spec.teeth.iter().find(|(_, ts)| {
            ts.graft.graph().labels().iter().cloned().collect::<BTreeSet<_>>() == members
        });
        let Some((label, ts)) = owner else {
            return Err(Fail { property: "round-trip-teeth".into(), detail: format!("no tooth spans {members:?}") });
        };
        rename.insert(t.label.clone(), label.clone());
        let tg = t.tooth.graft.graph();
        require!(tg == ts.graft.graph(), "round-trip-tooth-graph", "tooth {label}");
        let new_root = tg.label(t.tooth.root).to_string();
        require!(root_set(ts)?.contains(&new_root), "round-trip-root-in-root-set", "tooth {label}: {new_root}");
        let mut want: BTreeSet<String> = ts.graft.terminal_labels().into_iter().collect();
        for r in [&ts.root, &new_root] {
            if !want.remove(r) {
                want.insert(r.clone());
            }
        }
        if ts.root == new_root {
            want = ts.graft.terminal_labels().into_iter().collect();
        }
        let got: BTreeSet<String> = t.tooth.graft.terminal_labels().into_iter().collect();
        require!(got == want, "round-trip-tooth-terminals", "tooth {label}");
        require!(
            root_sets(&t.tooth.graft, &new_root)? == root_sets(&ts.graft, &ts.root)?,
            "round-trip-root-profile",
            "tooth {label}"
        );
    }
    let skg = d.skeleton.graft.graph();
    let relabelled = Graph::new(
        skg.labels().iter().map(|l| rename.get(l).unwrap_or(l).clone()),
        skg.edges()
            .iter()
            .map(|e| {
                let f = |v| rename.get(skg.label(v)).cloned().unwrap_or_else(|| skg.label(v).to_string());
                (e.id, f(e.u), f(e.v))
            })
            .collect::<Vec<_>>(),
    )?;
    require!(relabelled == *cg, "round-trip-skeleton", "skeleton differs from the comb");
    let mut sk_terms: Vec<String> = d
        .skeleton
        .graft
        .graft()
        .terminal_labels()
        .into_iter()
        .map(|l| rename.get(&l).cloned().unwrap_or(l))
        .collect();
    sk_terms.sort();
    require!(sk_terms == comb.graft().terminal_labels(), "round-trip-skeleton-terminals", "{sk_terms:?}");
    let again = synthesize(&d.synthesis_spec())?;
    require!(again.graft() == synth.graft(), "synthesis-decompose-round-trip", "graft differs");
    Ok(())
}

fn walk_certificate(cert: &PrimalCertificate) -> Outcome {
    if let Some(why) = comb_violation(&cert.comb) {
        return Err(Fail { property: "certificate-comb".into(), detail: why });
    }
    let cg = cert.comb.graph();
    let r = cg.require(&cert.root)?;
    require!(
        JoinedGraft::solve(cert.comb.graft()).is_primal_at(r),
        "certificate-comb-primal",
        "root {}",
        cert.root
    );
    comb_primality_checks(&cert.comb, r)?;
    check_quasicomb_bounds(&cert.comb)?;
    for child in cert.children.values() {
        walk_certificate(child)?;
    }
    Ok(())
}

/// The root-set structure at every root; at primal roots, a recursive
/// certificate whose combs are primal and whose re-synthesis is exact.
pub fn check_primal(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    bipartite(graft)?;
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    for r in g.vertices() {
        verify_sebo(&joined, r)?;
        if joined.is_primal_at(r) {
            let cert = primal_decompose(graft, r)?;
            let rebuilt = cert.resynthesize()?;
            require!(rebuilt.graft() == graft, "resynthesis-exact", "root {}", g.label(r));
            walk_certificate(&cert)?;
        }
    }
    Ok(())
}

/// Circuit characterizations: a join is minimum iff no circuit has negative
/// weight; toggling a zero-weight circuit keeps a minimum join minimum and
/// only uses allowed edges.
pub fn check_circuits(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    if cycle_rank(graft) > 14 {
        ORACLE_SKIPS.fetch_add(1, Ordering::Relaxed);
        return Ok(());
    }
    let g = graft.graph();
    let all: Vec<EdgeBits> = circuits(g)?;
    let best = nu(graft) as u32;
    let allowed = graft_core::oracle::set_to_bits(g, &allowed_edges(graft))?;
    let mut fail = None;
    JoinOracle { max_edges: 64 }.for_each_join(graft, |j| {
        if fail.is_some() {
            return;
        }
        let negative = all.iter().any(|&c| weight_of_bits(c, j) < 0);
        let minimum = j.count_ones() == best;
        if negative == minimum {
            fail = Some(Fail {
                property: "negative-circuit-iff-not-minimum".into(),
                detail: format!("join {:?}", bits_to_set(g, j)),
            });
        } else if minimum {
            for &c in all.iter().filter(|&&c| weight_of_bits(c, j) == 0) {
                if (j ^ c).count_ones() != best || c & !allowed != 0 {
                    fail = Some(Fail {
                        property: "zero-circuit-toggle".into(),
                        detail: format!("join {:?}, circuit {:?}", bits_to_set(g, j), bits_to_set(g, c)),
                    });
                    break;
                }
            }
        }
    })?;
    fail.map_or(Ok(()), Err)
}

/// Distance profiles of every comb the pipeline emits: skeletons from every
/// seed and every root, and certificate combs.
pub fn check_comb_profiles(graft: &Graft, _: &mut ChaCha8Rng, _: Mutation) -> Outcome {
    let Ok(bg) = BipartiteGraft::two_coloured(graft.clone()) else { return Ok(()) };
    let g = graft.graph();
    let joined = JoinedGraft::solve(graft);
    let mut combs = Vec::new();
    for v in g.vertices() {
        let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), v)?;
        combs.push(decompose(&joined, bg.classes(), &x)?.skeleton.graft);
        combs.push(verify_sebo(&joined, v)?.skeleton.graft);
    }
    for comb in &combs {
        check_quasicomb_bounds(comb)?;
        check_factor_connected_comb(comb)?;
        require!(comb_violation(comb).is_none(), "emitted-comb", "{:?}", comb_violation(comb));
    }
    Ok(())
}

/// One instance of a family, with the index its randomness derives from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub index: u64,
    pub graft: Graft,
}

#[derive(Clone, Copy, Debug)]
pub struct FamilyConfig {
    pub exhaustive_n: usize,
    pub random_n: usize,
    pub random_m: usize,
    pub trials: usize,
    pub seed: u64,
    pub bipartite: bool,
}

impl FamilyConfig {
    /// Exhaustive up to `min(max_n, 6)` vertices, then random with `n ≤ max_n`, `m ≤ min(2·max_n, 20)`.
    pub fn standard(max_n: usize, trials: usize, seed: u64, bipartite: bool) -> Self {
        FamilyConfig {
            exhaustive_n: max_n.min(EXHAUSTIVE_LIMIT),
            random_n: max_n,
            random_m: (2 * max_n).min(20),
            trials,
            seed,
            bipartite,
        }
    }
}

/// Exhaustive small instances followed by seeded random ones.
pub fn family(c: &FamilyConfig) -> Vec<Instance> {
    let mut grafts: Vec<Graft> = small_grafts(c.exhaustive_n)
        .into_iter()
        .filter(|g| !c.bipartite || Bipartition::two_colour(g.graph()).is_ok())
        .collect();
    let offset = grafts.len() as u64;
    if c.random_n > 0 {
        grafts.extend((0..c.trials as u64).into_par_iter().map(|i| {
            let mut rng = trial_rng(c.seed, offset + i);
            random_instance(&mut rng, c.random_n, c.random_m, c.bipartite)
        }).collect::<Vec<_>>());
    }
    grafts
        .into_iter()
        .enumerate()
        .map(|(i, graft)| Instance { index: i as u64, graft })
        .collect()
}

/// Randomness used by a check, kept apart from the instance generator's stream.
pub fn check_rng(seed: u64, index: u64) -> ChaCha8Rng {
    trial_rng(seed, index | 1 << 63)
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub suite: String,
    pub check: String,
    pub instance_index: u64,
    pub property: String,
    pub detail: String,
    pub instance: GraftDocument,
    pub witness: GraftDocument,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub max_n: usize,
    pub trials: usize,
    pub instances: usize,
    pub failure_count: usize,
    pub failures: Vec<FailureRecord>,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failure_count > 0)
    }
}

/// Drops `v`, then restores even terminal parity per component by toggling
/// the last vertex (in label order) of each odd component.
fn delete_vertex(graft: &Graft, v: VertexId) -> Graft {
    let reduced = graft.graph().without_vertices(&VertexSet::from([v])).unwrap();
    let g = graft.graph();
    let mut terminals: VertexSet = graft
        .terminals()
        .into_iter()
        .filter(|&t| t != v)
        .map(|t| reduced.require(g.label(t)).unwrap())
        .collect();
    for comp in reduced.components() {
        if comp.iter().filter(|t| terminals.contains(t)).count() % 2 == 1 {
            let last = *comp.last().unwrap();
            if !terminals.remove(&last) {
                terminals.insert(last);
            }
        }
    }
    Graft::new(reduced, terminals).unwrap()
}

/// Greedy vertex deletion that keeps the same property failing.
pub fn minimize(graft: &Graft, check: Check, rng_seed: (u64, u64), mutation: Mutation, property: &str) -> Graft {
    let fails = |g: &Graft| {
        let mut rng = check_rng(rng_seed.0, rng_seed.1);
        matches!(check(g, &mut rng, mutation), Err(f) if f.property == property)
    };
    let mut current = graft.clone();
    'outer: loop {
        for v in current.graph().vertices() {
            if current.graph().vertex_count() <= 1 {
                break 'outer;
            }
            let candidate = delete_vertex(&current, v);
            if fails(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        break;
    }
    current
}

/// Runs `check` on every instance in parallel and minimizes the first
/// [`MAX_WITNESSES`] failures. Results are ordered by instance index.
pub fn run_check(
    suite: &str,
    name: &str,
    check: Check,
    instances: &[Instance],
    seed: u64,
    mutation: Mutation,
) -> (usize, Vec<FailureRecord>) {
    let mut failed: Vec<(u64, Fail)> = instances
        .par_iter()
        .filter_map(|inst| {
            let mut rng = check_rng(seed, inst.index);
            check(&inst.graft, &mut rng, mutation).err().map(|f| (inst.index, f))
        })
        .collect();
    failed.sort_by_key(|(i, _)| *i);
    let count = failed.len();
    let records = failed
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|(index, fail)| {
            let graft = &instances.iter().find(|i| i.index == index).unwrap().graft;
            let witness = minimize(graft, check, (seed, index), mutation, &fail.property);
            FailureRecord {
                suite: suite.to_string(),
                check: name.to_string(),
                instance_index: index,
                property: fail.property,
                detail: fail.detail,
                instance: GraftDocument::from_graft(graft),
                witness: GraftDocument::from_graft(&witness),
            }
        })
        .collect();
    (count, records)
}

pub fn run_verify_suite(name: &str, max_n: usize, trials: usize, seed: u64, mutation: Mutation) -> Result<VerificationReport, CliError> {
    let suites = parse_suites(name)?;
    let mut report = VerificationReport {
        suite: name.to_string(),
        seed,
        max_n,
        trials,
        instances: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for suite in suites {
        let instances = family(&FamilyConfig::standard(max_n, trials, seed, suite.bipartite()));
        report.instances += instances.len();
        for &(check_name, check) in suite.checks() {
            let (count, records) = run_check(suite.name(), check_name, check, &instances, seed, mutation);
            report.failure_count += count;
            report.failures.extend(records);
        }
    }
    Ok(report)
}
