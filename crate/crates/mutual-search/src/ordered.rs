//! Synchronous cost semantics: a tournament plus a total temporal order
//! on its edges is a complete two-agent protocol.

use crate::error::{Error, Result};
use crate::tournament::{Edge, Tournament};

/// A tournament together with a total temporal order on its edges
/// (earliest first). Equivalent to a synchronous two-agent protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedAlgorithm {
    tournament: Tournament,
    order: Vec<Edge>,
}

impl OrderedAlgorithm {
    /// Pair a tournament with a temporal order, validating that the
    /// order is a permutation of the edge set.
    pub fn from_parts(tournament: Tournament, order: Vec<Edge>) -> Result<Self> {
        if order.len() != tournament.edge_count() {
            return Err(Error::InvalidStructure(format!(
                "order lists {} edges, tournament has {}",
                order.len(),
                tournament.edge_count()
            )));
        }
        let mut seen = vec![false; tournament.edge_count()];
        for &e in &order {
            if !tournament.has_edge(e.from, e.to) {
                return Err(Error::UnknownEdge {
                    from: e.from,
                    to: e.to,
                });
            }
            let (lo, hi) = e.pair();
            let slot = crate::tournament::pair_index(tournament.sites(), lo, hi);
            if seen[slot] {
                return Err(Error::InvalidStructure(format!(
                    "edge {e} appears twice in the order"
                )));
            }
            seen[slot] = true;
        }
        Ok(OrderedAlgorithm { tournament, order })
    }

    /// Build directly from per-site query rows concatenated in the given
    /// temporal order. `rows[i]` lists the targets of site `i`; the global
    /// order is row 0's queries, then row 1's, and so on.
    pub fn from_rows_in_site_order(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut order = Vec::with_capacity(Tournament::edge_count_for(n));
        for (i, row) in rows.iter().enumerate() {
            for &j in row {
                order.push(Edge::new(i, j));
            }
        }
        let tournament = Tournament::from_edges(n, &order)?;
        Ok(OrderedAlgorithm { tournament, order })
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    pub fn sites(&self) -> usize {
        self.tournament.sites()
    }

    /// The temporal order, earliest edge first.
    pub fn order(&self) -> &[Edge] {
        &self.order
    }

    /// Per-site query sequences in temporal order (the "matrix rows").
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.sites()];
        for e in &self.order {
            rows[e.from].push(e.to);
        }
        rows
    }

    /// Queries both incident agents make up to and including `e` itself:
    /// the number of earlier edges in row `from`, plus one for `e`, plus
    /// the number of earlier edges in row `to`.
    pub fn edge_cost(&self, e: Edge) -> Result<usize> {
        if !self.tournament.has_edge(e.from, e.to) {
            return Err(Error::UnknownEdge {
                from: e.from,
                to: e.to,
            });
        }
        let mut before_from = 0;
        let mut before_to = 0;
        for &f in &self.order {
            if f == e {
                return Ok(before_from + 1 + before_to);
            }
            if f.from == e.from {
                before_from += 1;
            } else if f.from == e.to {
                before_to += 1;
            }
        }
        unreachable!("validated edge missing from order");
    }

    /// Worst-case cost: the maximum edge cost. Runs in one pass.
    pub fn sync_cost(&self) -> usize {
        self.max_cost_edge().1
    }

    /// The arg-max edge together with the cost (ties: earliest in time).
    pub fn max_cost_edge(&self) -> (Edge, usize) {
        let mut fired = vec![0usize; self.sites()];
        let mut best = (self.order[0], 0);
        for &e in &self.order {
            let cost = fired[e.from] + 1 + fired[e.to];
            if cost > best.1 {
                best = (e, cost);
            }
            fired[e.from] += 1;
        }
        best
    }

    /// Replay the protocol for agents at sites `a` and `b`: their rows
    /// fire in temporal order, every answer is "no" until one of them
    /// queries the other.
    pub fn simulate(&self, a: usize, b: usize) -> Result<Transcript> {
        let n = self.sites();
        if a >= n {
            return Err(Error::SiteOutOfRange { site: a, n });
        }
        if b >= n {
            return Err(Error::SiteOutOfRange { site: b, n });
        }
        if a == b {
            return Err(Error::SitesNotDistinct { a, b });
        }
        let mut queries = Vec::new();
        for (slot, &e) in self.order.iter().enumerate() {
            if e.from != a && e.from != b {
                continue;
            }
            let hit = (e.from == a && e.to == b) || (e.from == b && e.to == a);
            queries.push(TimedQuery {
                slot,
                edge: e,
                answer: hit,
            });
            if hit {
                let cost = queries.len();
                return Ok(Transcript { queries, cost });
            }
        }
        unreachable!("every pair is connected by exactly one edge");
    }

    /// Saturated: the cost already equals the maximum row length, so no
    /// site can be added for free.
    pub fn is_saturated(&self) -> bool {
        self.sync_cost() == self.max_row_len()
    }

    pub fn max_row_len(&self) -> usize {
        self.tournament
            .out_degrees()
            .into_iter()
            .max()
            .unwrap_or(0)
    }

    /// Add one site, queried by every existing site after all old
    /// queries. Keeps the cost unchanged, which is only possible while
    /// the cost exceeds every row length.
    pub fn saturate_extend(&self) -> Result<OrderedAlgorithm> {
        if self.is_saturated() {
            return Err(Error::Saturated);
        }
        Ok(self.extend_unchecked())
    }

    /// The raw extension step behind [`Self::saturate_extend`]: one new
    /// site, one new edge from every old site to it, all ordered after
    /// the old edges (by querier index among themselves). Applied to a
    /// saturated algorithm this raises the cost by exactly one.
    pub(crate) fn extend_unchecked(&self) -> OrderedAlgorithm {
        let n = self.sites();
        let mut order = self.order.clone();
        order.extend((0..n).map(|i| Edge::new(i, n)));
        let mut edges = order.clone();
        edges.sort_by_key(|e| e.pair());
        let tournament =
            Tournament::from_edges(n + 1, &edges).expect("extension preserves validity");
        OrderedAlgorithm { tournament, order }
    }
}

/// Cost of an oblivious execution, where all planned queries run
/// regardless of answers: the worst pair's combined row lengths. With a
/// single empty-row pair (n = 2) this is just the querier's row length.
pub fn oblivious_cost(t: &Tournament) -> usize {
    let mut deg = t.out_degrees();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    deg[0] + deg[1]
}

/// One replayed query of a two-agent execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimedQuery {
    /// Position of the edge in the global temporal order.
    pub slot: usize,
    pub edge: Edge,
    /// True iff the queried site held the other agent.
    pub answer: bool,
}

/// Event log of a two-agent execution: all queries by the occupied pair
/// up to and including first contact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub queries: Vec<TimedQuery>,
    /// Number of queries until first contact, inclusive.
    pub cost: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{all_in_turn, half_in_turn};

    fn reordered_half_in_turn_4() -> OrderedAlgorithm {
        // The cost-2 reordering of the n=4 half-in-turn tournament.
        let order = vec![
            Edge::new(0, 1),
            Edge::new(3, 0),
            Edge::new(0, 2),
            Edge::new(1, 3),
            Edge::new(1, 2),
            Edge::new(2, 3),
        ];
        let t = half_in_turn(4).unwrap().tournament().clone();
        OrderedAlgorithm::from_parts(t, order).unwrap()
    }

    #[test]
    fn edge_cost_examples() {
        let ait4 = all_in_turn(4).unwrap();
        assert_eq!(ait4.edge_cost(Edge::new(0, 2)).unwrap(), 2);

        let n2 = all_in_turn(2).unwrap();
        assert_eq!(n2.edge_cost(Edge::new(0, 1)).unwrap(), 1);

        let reordered = reordered_half_in_turn_4();
        assert_eq!(reordered.edge_cost(Edge::new(2, 3)).unwrap(), 2);

        assert_eq!(
            ait4.edge_cost(Edge::new(2, 0)).unwrap_err(),
            Error::UnknownEdge { from: 2, to: 0 }
        );
    }

    #[test]
    fn sync_cost_examples() {
        assert_eq!(all_in_turn(4).unwrap().sync_cost(), 3);
        assert_eq!(half_in_turn(5).unwrap().sync_cost(), 4);
        assert_eq!(reordered_half_in_turn_4().sync_cost(), 2);
    }

    #[test]
    fn simulate_examples() {
        let ait4 = all_in_turn(4).unwrap();
        let t = ait4.simulate(0, 2).unwrap();
        assert_eq!(t.cost, 2);
        assert_eq!(
            t.queries
                .iter()
                .map(|q| (q.edge, q.answer))
                .collect::<Vec<_>>(),
            vec![(Edge::new(0, 1), false), (Edge::new(0, 2), true)]
        );
        assert_eq!(t.queries[0].slot, 0);
        assert_eq!(t.queries[1].slot, 1);

        assert_eq!(ait4.simulate(0, 3).unwrap().cost, 3);
        assert_eq!(all_in_turn(2).unwrap().simulate(0, 1).unwrap().cost, 1);
        assert_eq!(
            ait4.simulate(1, 1).unwrap_err(),
            Error::SitesNotDistinct { a: 1, b: 1 }
        );
    }

    #[test]
    fn simulate_cost_matches_edge_cost_of_contact() {
        for alg in [all_in_turn(6).unwrap(), half_in_turn(7).unwrap()] {
            let n = alg.sites();
            for a in 0..n {
                for b in a + 1..n {
                    let contact = alg.tournament().edge_between(a, b).unwrap();
                    assert_eq!(
                        alg.simulate(a, b).unwrap().cost,
                        alg.edge_cost(contact).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn saturation_examples() {
        assert!(all_in_turn(4).unwrap().is_saturated());
        assert!(!half_in_turn(5).unwrap().is_saturated());
        assert!(all_in_turn(2).unwrap().is_saturated());
    }

    #[test]
    fn saturate_extend_examples() {
        let hit5 = half_in_turn(5).unwrap();
        let ext = hit5.saturate_extend().unwrap();
        assert_eq!(ext.sites(), 6);
        assert_eq!(ext.sync_cost(), 4);
        assert_eq!(ext.max_row_len(), hit5.max_row_len() + 1);

        // Four extensions of the 9-site protocol reach 13 sites at cost 8.
        let mut alg = half_in_turn(9).unwrap();
        for _ in 0..4 {
            alg = alg.saturate_extend().unwrap();
        }
        assert_eq!(alg.sites(), 13);
        assert_eq!(alg.sync_cost(), 8);
        assert!(alg.is_saturated());

        assert_eq!(
            all_in_turn(4).unwrap().saturate_extend().unwrap_err(),
            Error::Saturated
        );
    }

    #[test]
    fn oblivious_examples() {
        assert_eq!(oblivious_cost(all_in_turn(4).unwrap().tournament()), 5);
        assert_eq!(oblivious_cost(half_in_turn(5).unwrap().tournament()), 4);
        // n=2: one row holds the single edge, the other is empty.
        assert_eq!(oblivious_cost(all_in_turn(2).unwrap().tournament()), 1);
    }

    #[test]
    fn cost_is_at_least_max_row_length() {
        for n in 2..12 {
            for alg in [all_in_turn(n).unwrap(), half_in_turn(n).unwrap()] {
                assert!(alg.sync_cost() >= alg.max_row_len());
            }
        }
    }
}
