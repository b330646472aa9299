//! Partial algorithms and refinement: scheduling runs backward in time,
//! so the queries made last are fixed first ("retired"). Greedily
//! retiring a cheapest edge is optimal, which makes the best temporal
//! order a pure function of the tournament.

use crate::error::{Error, Result};
use crate::ordered::OrderedAlgorithm;
use crate::tournament::{pair_index, Edge, Tournament};

/// A tournament with a totally ordered suffix of retired edges. The
/// unretired edges are pairwise unordered and all precede the retired
/// ones temporally.
#[derive(Debug, Clone)]
pub struct PartialAlgorithm {
    tournament: Tournament,
    /// Retirement order: first element was retired first, i.e. is the
    /// temporally latest edge.
    retired: Vec<Edge>,
    retired_set: Vec<bool>,
    /// Unretired out-degree per site.
    rem: Vec<usize>,
}

impl PartialAlgorithm {
    /// A bare tournament: nothing retired yet.
    pub fn new(tournament: Tournament) -> Self {
        let rem = tournament.out_degrees();
        let retired_set = vec![false; tournament.edge_count()];
        PartialAlgorithm {
            tournament,
            retired: Vec::new(),
            retired_set,
            rem,
        }
    }

    /// Rebuild a partial algorithm from a retirement sequence
    /// (earliest-retired first).
    pub fn from_retired(tournament: Tournament, retired: Vec<Edge>) -> Result<Self> {
        let mut p = PartialAlgorithm::new(tournament);
        for &e in &retired {
            p.retire(e)?;
        }
        Ok(p)
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    /// Retired edges in retirement order (temporally latest first).
    pub fn retired(&self) -> &[Edge] {
        &self.retired
    }

    pub fn unretired_count(&self) -> usize {
        self.tournament.edge_count() - self.retired.len()
    }

    fn pair_slot(&self, e: Edge) -> Result<usize> {
        if !self.tournament.has_edge(e.from, e.to) {
            return Err(Error::UnknownEdge {
                from: e.from,
                to: e.to,
            });
        }
        let (lo, hi) = e.pair();
        Ok(pair_index(self.tournament.sites(), lo, hi))
    }

    /// Cost `e` would be charged if retired now: the unretired lengths
    /// of both incident rows, counting `e` itself. By construction this
    /// equals the edge's cost in any total refinement.
    pub fn retiring_cost(&self, e: Edge) -> Result<usize> {
        let slot = self.pair_slot(e)?;
        if self.retired_set[slot] {
            return Err(Error::AlreadyRetired {
                from: e.from,
                to: e.to,
            });
        }
        Ok(self.rem[e.from] + self.rem[e.to])
    }

    /// Retire `e`: it becomes the temporally earliest retired edge.
    pub fn retire(&mut self, e: Edge) -> Result<()> {
        let slot = self.pair_slot(e)?;
        if self.retired_set[slot] {
            return Err(Error::AlreadyRetired {
                from: e.from,
                to: e.to,
            });
        }
        self.retired_set[slot] = true;
        self.rem[e.from] -= 1;
        self.retired.push(e);
        Ok(())
    }

    /// Once everything is retired, the temporal order is the reverse of
    /// the retirement order.
    pub fn into_ordered(self) -> Result<OrderedAlgorithm> {
        if self.unretired_count() != 0 {
            return Err(Error::InvalidStructure(format!(
                "{} edges still unretired",
                self.unretired_count()
            )));
        }
        let mut order = self.retired;
        order.reverse();
        OrderedAlgorithm::from_parts(self.tournament, order)
    }
}

/// Which edge to pick among several of minimum retiring cost. Any
/// choice yields the same final cost; the policy only fixes the witness
/// order (and lets tests demonstrate that invariance).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically smallest `(from, to)` — the default.
    Lex,
    ReverseLex,
}

/// Optimal refinement of a tournament: repeatedly retire an edge of
/// minimum retiring cost until total. The result's cost is the minimum
/// over all temporal orders of the tournament.
pub fn greedy_refine(t: &Tournament) -> OrderedAlgorithm {
    greedy_refine_with(t, TieBreak::Lex)
}

/// [`greedy_refine`] with an explicit tie-break policy.
pub fn greedy_refine_with(t: &Tournament, tie: TieBreak) -> OrderedAlgorithm {
    let n = t.sites();
    let m = t.edge_count();
    let mut endpoints = Vec::with_capacity(m);
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (slot, e) in t.edges().enumerate() {
        endpoints.push(e);
        incident[e.from].push(slot as u32);
        incident[e.to].push(slot as u32);
    }

    let mut rem = t.out_degrees();
    let mut retired = vec![false; m];

    // Edges bucketed by current retiring cost. Retiring an edge lowers
    // the cost of every live edge incident to its tail by exactly one,
    // so buckets are maintained eagerly and the minimum can only drop
    // by one per step.
    let max_cost = 2 * n;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_cost + 1];
    let mut bucket_of = vec![0usize; m];
    let mut pos_in_bucket = vec![0usize; m];
    for slot in 0..m {
        let e = endpoints[slot];
        let c = rem[e.from] + rem[e.to];
        bucket_of[slot] = c;
        pos_in_bucket[slot] = buckets[c].len();
        buckets[c].push(slot as u32);
    }

    let remove_from_bucket =
        |buckets: &mut Vec<Vec<u32>>, pos_in_bucket: &mut Vec<usize>, c: usize, slot: usize| {
            let pos = pos_in_bucket[slot];
            let last = *buckets[c].last().unwrap() as usize;
            buckets[c].swap_remove(pos);
            if last != slot {
                pos_in_bucket[last] = pos;
            }
        };

    let mut order = Vec::with_capacity(m);
    let mut cursor = 0usize;
    for _ in 0..m {
        while buckets[cursor].is_empty() {
            cursor += 1;
        }
        // All entries in the minimum bucket carry their exact cost;
        // pick the policy's representative.
        let pick = match tie {
            TieBreak::Lex => buckets[cursor]
                .iter()
                .min_by_key(|&&s| {
                    let e = endpoints[s as usize];
                    (e.from, e.to)
                })
                .copied()
                .unwrap() as usize,
            TieBreak::ReverseLex => buckets[cursor]
                .iter()
                .max_by_key(|&&s| {
                    let e = endpoints[s as usize];
                    (e.from, e.to)
                })
                .copied()
                .unwrap() as usize,
        };
        let e = endpoints[pick];
        remove_from_bucket(&mut buckets, &mut pos_in_bucket, cursor, pick);
        retired[pick] = true;
        rem[e.from] -= 1;
        order.push(e);

        // Every live edge at the tail gets one cheaper.
        incident[e.from].retain(|&q| !retired[q as usize]);
        for &q in &incident[e.from] {
            let q = q as usize;
            let c = bucket_of[q];
            remove_from_bucket(&mut buckets, &mut pos_in_bucket, c, q);
            bucket_of[q] = c - 1;
            pos_in_bucket[q] = buckets[c - 1].len();
            buckets[c - 1].push(q as u32);
        }
        cursor = cursor.saturating_sub(1);
    }

    order.reverse();
    OrderedAlgorithm::from_parts(t.clone(), order).expect("greedy order is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{all_in_turn, half_in_turn};
    use crate::tournament::Tournament;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// The worked partial example: unretired {(0,3),(0,1),(1,2),(2,0)},
    /// retired (2,3) then (3,1) in temporal order — i.e. (3,1) was
    /// retired first.
    fn worked_partial() -> PartialAlgorithm {
        let t = Tournament::from_edges(
            4,
            &[
                Edge::new(0, 1),
                Edge::new(0, 3),
                Edge::new(1, 2),
                Edge::new(2, 0),
                Edge::new(2, 3),
                Edge::new(3, 1),
            ],
        )
        .unwrap();
        PartialAlgorithm::from_retired(t, vec![Edge::new(3, 1), Edge::new(2, 3)]).unwrap()
    }

    #[test]
    fn retiring_cost_examples() {
        let p = worked_partial();
        assert_eq!(p.retiring_cost(Edge::new(2, 0)).unwrap(), 3);
        assert_eq!(p.retiring_cost(Edge::new(0, 3)).unwrap(), 2);
        assert_eq!(
            p.retiring_cost(Edge::new(2, 3)).unwrap_err(),
            Error::AlreadyRetired { from: 2, to: 3 }
        );

        let fresh = PartialAlgorithm::new(all_in_turn(2).unwrap().tournament().clone());
        assert_eq!(fresh.retiring_cost(Edge::new(0, 1)).unwrap(), 1);
    }

    #[test]
    fn retire_orders_backward_in_time() {
        let t = all_in_turn(4).unwrap().tournament().clone();
        let mut p = PartialAlgorithm::new(t);
        let seq = [
            Edge::new(2, 3),
            Edge::new(1, 3),
            Edge::new(1, 2),
            Edge::new(0, 3),
            Edge::new(0, 2),
            Edge::new(0, 1),
        ];
        for e in seq {
            p.retire(e).unwrap();
        }
        let alg = p.into_ordered().unwrap();
        let mut expected = seq.to_vec();
        expected.reverse();
        assert_eq!(alg.order(), expected.as_slice());
    }

    #[test]
    fn retire_rejects_repeats() {
        let t = all_in_turn(3).unwrap().tournament().clone();
        let mut p = PartialAlgorithm::new(t);
        p.retire(Edge::new(1, 2)).unwrap();
        assert_eq!(
            p.retire(Edge::new(1, 2)).unwrap_err(),
            Error::AlreadyRetired { from: 1, to: 2 }
        );
        assert_eq!(
            p.retire(Edge::new(2, 1)).unwrap_err(),
            Error::UnknownEdge { from: 2, to: 1 }
        );
    }

    #[test]
    fn retiring_cost_equals_final_edge_cost() {
        // Fact: the cost recorded at retirement is the edge's cost in
        // any total refinement.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let t = Tournament::random(6, &mut rng).unwrap();
            let mut p = PartialAlgorithm::new(t.clone());
            let mut edges: Vec<Edge> = t.edges().collect();
            use rand::seq::SliceRandom;
            edges.shuffle(&mut rng);
            let mut costs = Vec::new();
            for &e in &edges {
                costs.push((e, p.retiring_cost(e).unwrap()));
                p.retire(e).unwrap();
            }
            let alg = p.into_ordered().unwrap();
            for (e, c) in costs {
                assert_eq!(alg.edge_cost(e).unwrap(), c);
            }
        }
    }

    /// Direct transcription of the definition: scan all unretired edges
    /// for the minimum retiring cost each step.
    fn naive_greedy(t: &Tournament, tie: TieBreak) -> OrderedAlgorithm {
        let mut p = PartialAlgorithm::new(t.clone());
        while p.unretired_count() > 0 {
            let mut candidates: Vec<(usize, Edge)> = t
                .edges()
                .filter(|e| !p.retired().contains(e))
                .map(|e| (p.retiring_cost(e).unwrap(), e))
                .collect();
            candidates.sort_by_key(|&(c, e)| (c, e.from, e.to));
            let pick = match tie {
                TieBreak::Lex => candidates[0].1,
                TieBreak::ReverseLex => {
                    let min = candidates[0].0;
                    candidates
                        .iter()
                        .rev()
                        .find(|&&(c, _)| c == min)
                        .unwrap()
                        .1
                }
            };
            p.retire(pick).unwrap();
        }
        p.into_ordered().unwrap()
    }

    #[test]
    fn bucket_greedy_matches_naive_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 2..8 {
            for _ in 0..20 {
                let t = Tournament::random(n, &mut rng).unwrap();
                for tie in [TieBreak::Lex, TieBreak::ReverseLex] {
                    assert_eq!(
                        greedy_refine_with(&t, tie).order(),
                        naive_greedy(&t, tie).order()
                    );
                }
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let hit4 = half_in_turn(4).unwrap();
        assert_eq!(greedy_refine(hit4.tournament()).sync_cost(), 2);

        let ait4 = all_in_turn(4).unwrap();
        assert_eq!(greedy_refine(ait4.tournament()).sync_cost(), 3);

        let n2 = all_in_turn(2).unwrap();
        assert_eq!(greedy_refine(n2.tournament()).sync_cost(), 1);
    }
}
