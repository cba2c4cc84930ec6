//! Minimum-cost perfect matching on a small complete graph.
//!
//! Small instances are solved exhaustively (memoised over matched subsets);
//! larger ones by depth-first branch and bound with a nearest-neighbour
//! lower bound. Both are exact.

/// Total cost and pairs `(i, j)` with `i < j`, sorted.
pub type MatchingResult = (u64, Vec<(usize, usize)>);

pub fn min_perfect_matching(cost: &[Vec<u64>], exhaustive_limit: usize) -> MatchingResult {
    let k = cost.len();
    assert!(k.is_multiple_of(2), "perfect matching needs an even vertex count");
    if k == 0 {
        return (0, Vec::new());
    }
    if k <= exhaustive_limit.min(20) {
        exhaustive(cost)
    } else {
        branch_and_bound(cost)
    }
}

// j indexes both the mask bits and cost[i]
#[allow(clippy::needless_range_loop)]
fn exhaustive(cost: &[Vec<u64>]) -> MatchingResult {
    let k = cost.len();
    let full = (1usize << k) - 1;
    // best[mask] = cheapest matching of the vertices outside `mask`
    let mut best = vec![u64::MAX; 1 << k];
    let mut choice = vec![usize::MAX; 1 << k];
    best[full] = 0;
    for mask in (0..full).rev() {
        // only masks whose unmatched set is even matter
        if (k - mask.count_ones() as usize) % 2 == 1 {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        for j in i + 1..k {
            if mask & (1 << j) != 0 {
                continue;
            }
            let next = mask | (1 << i) | (1 << j);
            if best[next] == u64::MAX {
                continue;
            }
            let c = best[next] + cost[i][j];
            if c < best[mask] {
                best[mask] = c;
                choice[mask] = j;
            }
        }
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = 0usize;
    while mask != full {
        let i = (!mask).trailing_zeros() as usize;
        let j = choice[mask];
        pairs.push((i, j));
        mask |= (1 << i) | (1 << j);
    }
    (best[0], pairs)
}

struct Search<'a> {
    cost: &'a [Vec<u64>],
    matched: Vec<bool>,
    current: Vec<(usize, usize)>,
    best_cost: u64,
    best: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn lower_bound(&self) -> u64 {
        let free: Vec<usize> = (0..self.cost.len()).filter(|&i| !self.matched[i]).collect();
        let sum: u64 = free
            .iter()
            .map(|&i| {
                free.iter()
                    .filter(|&&j| j != i)
                    .map(|&j| self.cost[i][j])
                    .min()
                    .unwrap_or(0)
            })
            .sum();
        sum.div_ceil(2)
    }

    fn run(&mut self, spent: u64) {
        let Some(i) = self.matched.iter().position(|m| !m) else {
            if spent < self.best_cost {
                self.best_cost = spent;
                self.best = self.current.clone();
            }
            return;
        };
        if spent + self.lower_bound() >= self.best_cost {
            return;
        }
        let mut partners: Vec<usize> = (i + 1..self.cost.len())
            .filter(|&j| !self.matched[j])
            .collect();
        partners.sort_by_key(|&j| (self.cost[i][j], j));
        self.matched[i] = true;
        for j in partners {
            self.matched[j] = true;
            self.current.push((i, j));
            self.run(spent + self.cost[i][j]);
            self.current.pop();
            self.matched[j] = false;
        }
        self.matched[i] = false;
    }
}

fn branch_and_bound(cost: &[Vec<u64>]) -> MatchingResult {
    let k = cost.len();
    // greedy incumbent
    let mut matched = vec![false; k];
    let mut greedy = Vec::new();
    let mut greedy_cost = 0;
    for i in 0..k {
        if matched[i] {
            continue;
        }
        let j = (i + 1..k)
            .filter(|&j| !matched[j])
            .min_by_key(|&j| (cost[i][j], j))
            .unwrap();
        matched[i] = true;
        matched[j] = true;
        greedy.push((i, j));
        greedy_cost += cost[i][j];
    }
    let mut search = Search {
        cost,
        matched: vec![false; k],
        current: Vec::new(),
        best_cost: greedy_cost + 1,
        best: greedy.clone(),
    };
    search.run(0);
    if search.best_cost > greedy_cost {
        return (greedy_cost, greedy);
    }
    let mut pairs = search.best;
    pairs.sort();
    (search.best_cost, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_matchings_min(cost: &[Vec<u64>], free: Vec<usize>) -> u64 {
        if free.is_empty() {
            return 0;
        }
        let i = free[0];
        free[1..]
            .iter()
            .map(|&j| {
                let rest: Vec<usize> = free.iter().copied().filter(|&x| x != i && x != j).collect();
                cost[i][j] + all_matchings_min(cost, rest)
            })
            .min()
            .unwrap()
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn both_strategies_agree_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = 2 * rng.gen_range(1..=5);
            let mut cost = vec![vec![0; k]; k];
            for i in 0..k {
                for j in i + 1..k {
                    let c = rng.gen_range(0..9);
                    cost[i][j] = c;
                    cost[j][i] = c;
                }
            }
            let expected = all_matchings_min(&cost, (0..k).collect());
            for limit in [0, 12] {
                let (total, pairs) = min_perfect_matching(&cost, limit);
                assert_eq!(total, expected);
                assert_eq!(pairs.iter().map(|&(i, j)| cost[i][j]).sum::<u64>(), total);
                let mut seen: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
                seen.sort();
                assert_eq!(seen, (0..k).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn empty_matching() {
        assert_eq!(min_perfect_matching(&[], 12), (0, vec![]));
    }
}
