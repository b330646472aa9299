//! Brute-force ground truth for small site counts: the optimal cost
//! over every tournament (all `2^(n(n-1)/2)` orientations), and the
//! exact minimum over all temporal orders of a fixed tournament.
//!
//! Sites are labeled (an agent knows its own index), so orientations
//! are never collapsed up to isomorphism.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Which cost semantics an oracle sweep optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleModel {
    Sync,
    Async,
}

/// Result of an exhaustive sweep: the optimum, one witness achieving
/// it, and how many structures were examined.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub n: usize,
    pub model: OracleModel,
    pub optimum: usize,
    pub witness: Tournament,
    /// For the asynchronous model, a per-row ordering achieving the
    /// optimum on the witness tournament.
    pub witness_rows: Option<Vec<Vec<usize>>>,
    /// Structures examined: tournaments, times row orderings for the
    /// asynchronous sweep.
    pub enumerated: u64,
}

const SYNC_GUARD: usize = 7;
const ASYNC_GUARD: usize = 5;
const REFINE_GUARD: usize = 5;

/// Greedy cost of one mask-encoded tournament, allocation-free. The
/// greedy value is tie-break independent, so only costs are tracked.
fn greedy_cost_mask(n: usize, mask: u64) -> usize {
    let m = n * (n - 1) / 2;
    let mut from = [0usize; 64];
    let mut to = [0usize; 64];
    let mut rem = [0usize; 16];
    let mut slot = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (f, t) = if mask >> slot & 1 == 1 { (i, j) } else { (j, i) };
            from[slot] = f;
            to[slot] = t;
            rem[f] += 1;
            slot += 1;
        }
    }
    let mut retired = [false; 64];
    let mut worst = 0;
    for _ in 0..m {
        let mut best = usize::MAX;
        let mut pick = 0;
        for e in 0..m {
            if !retired[e] {
                let c = rem[from[e]] + rem[to[e]];
                if c < best {
                    best = c;
                    pick = e;
                }
            }
        }
        retired[pick] = true;
        rem[from[pick]] -= 1;
        worst = worst.max(best);
    }
    worst
}

/// Minimum greedy cost over all tournaments on `n` sites, with the
/// lowest-mask witness. Partitioned over threads; the fold keeps the
/// smallest mask among minima, so the result is deterministic.
pub fn optimal_sync_cost(n: usize) -> Result<OracleResult> {
    if !(2..=SYNC_GUARD).contains(&n) {
        return Err(Error::GuardExceeded {
            op: "optimal_sync_cost",
            limit: SYNC_GUARD as u64,
            value: n as u64,
            hint: "",
        });
    }
    let m = n * (n - 1) / 2;
    let total: u64 = 1 << m;
    let (optimum, witness_mask) = (0..total)
        .into_par_iter()
        .fold(
            || (usize::MAX, 0u64),
            |acc, mask| {
                let cost = greedy_cost_mask(n, mask);
                if cost < acc.0 {
                    (cost, mask)
                } else {
                    acc
                }
            },
        )
        .reduce(|| (usize::MAX, 0u64), |a, b| if b < a { b } else { a });
    Ok(OracleResult {
        n,
        model: OracleModel::Sync,
        optimum,
        witness: Tournament::from_mask(n, witness_mask)?,
        witness_rows: None,
        enumerated: total,
    })
}

/// Exact minimum cost over every total order of `t`'s edges, by
/// dynamic programming over unretired edge subsets: retiring edge `e`
/// from live set `S` costs the live out-degrees of both endpoints, and
/// the best completion of `S` minimizes the worst step. Equivalent to
/// enumerating all `m!` orders, and independent of the greedy path.
pub fn exhaustive_refine(t: &Tournament) -> Result<usize> {
    let n = t.sites();
    if n > REFINE_GUARD {
        return Err(Error::GuardExceeded {
            op: "exhaustive_refine",
            limit: REFINE_GUARD as u64,
            value: n as u64,
            hint: "",
        });
    }
    let edges: Vec<_> = t.edges().collect();
    let m = edges.len();
    let mut best = vec![usize::MAX; 1 << m];
    best[0] = 0;
    for set in 1usize..1 << m {
        let mut rem = [0usize; REFINE_GUARD];
        for (e, edge) in edges.iter().enumerate() {
            if set >> e & 1 == 1 {
                rem[edge.from] += 1;
            }
        }
        let mut value = usize::MAX;
        for (e, edge) in edges.iter().enumerate() {
            if set >> e & 1 == 1 {
                let step = rem[edge.from] + rem[edge.to];
                value = value.min(step.max(best[set ^ (1 << e)]));
            }
        }
        best[set] = value;
    }
    Ok(best[(1 << m) - 1])
}

/// Minimum asynchronous cost over all tournaments and all per-row
/// orderings, by literal enumeration of both.
pub fn optimal_async_cost(n: usize) -> Result<OracleResult> {
    if !(2..=ASYNC_GUARD).contains(&n) {
        return Err(Error::GuardExceeded {
            op: "optimal_async_cost",
            limit: ASYNC_GUARD as u64,
            value: n as u64,
            hint: "",
        });
    }
    let m = n * (n - 1) / 2;
    let mut best = usize::MAX;
    let mut witness_mask = 0u64;
    let mut witness_rows = None;
    let mut enumerated = 0u64;
    for mask in 0u64..1 << m {
        let t = Tournament::from_mask(n, mask)?;
        let rows: Vec<Vec<usize>> = (0..n).map(|i| t.row(i)).collect();
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        // Depth-first over per-row permutations.
        fn assign(
            site: usize,
            rows: &[Vec<usize>],
            lens: &[usize],
            current: &mut Vec<Vec<usize>>,
            best: &mut usize,
            best_rows: &mut Option<Vec<Vec<usize>>>,
            enumerated: &mut u64,
        ) {
            if site == rows.len() {
                *enumerated += 1;
                let cost = current
                    .iter()
                    .flat_map(|row| {
                        row.iter()
                            .enumerate()
                            .map(|(pos, &j)| pos + 1 + lens[j])
                    })
                    .max()
                    .unwrap_or(0);
                if cost < *best {
                    *best = cost;
                    *best_rows = Some(current.clone());
                }
                return;
            }
            permute_into(&rows[site], &mut |perm| {
                current.push(perm.to_vec());
                assign(site + 1, rows, lens, current, best, best_rows, enumerated);
                current.pop();
            });
        }
        let mut mask_best = usize::MAX;
        let mut mask_rows = None;
        assign(
            0,
            &rows,
            &lens,
            &mut Vec::new(),
            &mut mask_best,
            &mut mask_rows,
            &mut enumerated,
        );
        if mask_best < best {
            best = mask_best;
            witness_mask = mask;
            witness_rows = mask_rows;
        }
    }
    Ok(OracleResult {
        n,
        model: OracleModel::Async,
        optimum: best,
        witness: Tournament::from_mask(n, witness_mask)?,
        witness_rows,
        enumerated,
    })
}

/// Call `f` with every permutation of `items`.
fn permute_into(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn heap(k: usize, arr: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(arr);
            return;
        }
        for i in 0..k {
            heap(k - 1, arr, f);
            if k % 2 == 0 {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    let mut arr = items.to_vec();
    heap(arr.len(), &mut arr, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{all_in_turn, half_in_turn};
    use crate::refine::greedy_refine;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn optimal_sync_small_values() {
        assert_eq!(optimal_sync_cost(2).unwrap().optimum, 1);
        assert_eq!(optimal_sync_cost(3).unwrap().optimum, 2);
        assert_eq!(optimal_sync_cost(4).unwrap().optimum, 2);
        assert!(optimal_sync_cost(8).is_err());
    }

    #[test]
    fn witness_achieves_the_optimum_and_count_is_exhaustive() {
        let r = optimal_sync_cost(4).unwrap();
        assert_eq!(r.enumerated, 64);
        assert_eq!(greedy_refine(&r.witness).sync_cost(), r.optimum);
    }

    #[test]
    fn exhaustive_refine_examples() {
        let hit4 = half_in_turn(4).unwrap();
        assert_eq!(exhaustive_refine(hit4.tournament()).unwrap(), 2);
        let ait4 = all_in_turn(4).unwrap();
        assert_eq!(exhaustive_refine(ait4.tournament()).unwrap(), 3);
        let n2 = all_in_turn(2).unwrap();
        assert_eq!(exhaustive_refine(n2.tournament()).unwrap(), 1);
        assert!(exhaustive_refine(all_in_turn(6).unwrap().tournament()).is_err());
    }

    /// Reference for the subset recursion: literally try every order.
    fn min_over_all_orders(t: &Tournament) -> usize {
        let edges: Vec<_> = t.edges().collect();
        let ids: Vec<usize> = (0..edges.len()).collect();
        let mut best = usize::MAX;
        permute_into(&ids, &mut |perm| {
            let order: Vec<_> = perm.iter().map(|&i| edges[i]).collect();
            let alg =
                crate::ordered::OrderedAlgorithm::from_parts(t.clone(), order).unwrap();
            best = best.min(alg.sync_cost());
        });
        best
    }

    #[test]
    fn subset_dp_matches_factorial_enumeration() {
        for mask in 0..8u64 {
            let t = Tournament::from_mask(3, mask).unwrap();
            assert_eq!(exhaustive_refine(&t).unwrap(), min_over_all_orders(&t));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let t = Tournament::random(4, &mut rng).unwrap();
            assert_eq!(exhaustive_refine(&t).unwrap(), min_over_all_orders(&t));
        }
    }

    #[test]
    fn optimal_async_small_values() {
        let r = optimal_async_cost(2).unwrap();
        assert_eq!(r.optimum, 1);
        assert_eq!(optimal_async_cost(3).unwrap().optimum, 2);
        assert_eq!(optimal_async_cost(4).unwrap().optimum, 3);
        assert!(optimal_async_cost(6).is_err());
    }

    #[test]
    fn async_witness_consistent() {
        let r = optimal_async_cost(3).unwrap();
        let rows = r.witness_rows.unwrap();
        let alg = crate::asynchronous::RowOrderedAlgorithm::from_rows(3, rows).unwrap();
        assert_eq!(alg.async_cost(), r.optimum);
        assert_eq!(alg.tournament(), &r.witness);
    }
}
