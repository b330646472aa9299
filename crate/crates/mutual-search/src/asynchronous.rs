//! Asynchronous cost semantics: rows are totally ordered but queries
//! from different rows are not coordinated in time, so a querier must
//! assume the target has already spent its whole row.

use crate::error::{Error, Result};
use crate::tournament::{Edge, Tournament};

/// A tournament given as per-site ordered query rows, with no global
/// temporal order across rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOrderedAlgorithm {
    rows: Vec<Vec<usize>>,
    tournament: Tournament,
}

impl RowOrderedAlgorithm {
    /// Validate that the rows orient every pair exactly once.
    pub fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::InvalidStructure(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        let mut edges = Vec::with_capacity(Tournament::edge_count_for(n));
        for (i, row) in rows.iter().enumerate() {
            for &j in row {
                edges.push(Edge::new(i, j));
            }
        }
        let tournament = Tournament::from_edges(n, &edges)?;
        Ok(RowOrderedAlgorithm { rows, tournament })
    }

    pub fn sites(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    /// Querier cost (1-indexed position of the target in the querier's
    /// row, so the contacting query is counted) plus queree cost (the
    /// full length of the target's row).
    pub fn async_edge_cost(&self, e: Edge) -> Result<usize> {
        let position = self
            .rows
            .get(e.from)
            .and_then(|row| row.iter().position(|&j| j == e.to))
            .ok_or(Error::UnknownEdge {
                from: e.from,
                to: e.to,
            })?;
        Ok(position + 1 + self.rows[e.to].len())
    }

    /// Worst-case asynchronous cost: the maximum over all edges.
    pub fn async_cost(&self) -> usize {
        self.max_cost_edge().1
    }

    /// The arg-max edge together with the cost.
    pub fn max_cost_edge(&self) -> (Edge, usize) {
        let mut best: Option<(Edge, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (pos, &j) in row.iter().enumerate() {
                let cost = pos + 1 + self.rows[j].len();
                if best.map_or(true, |(_, b)| cost > b) {
                    best = Some((Edge::new(i, j), cost));
                }
            }
        }
        best.expect("a tournament has at least one edge")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{all_in_turn, smooth_retiring_async};

    fn all_in_turn_rows(n: usize) -> RowOrderedAlgorithm {
        RowOrderedAlgorithm::from_rows(n, all_in_turn(n).unwrap().rows()).unwrap()
    }

    #[test]
    fn async_edge_cost_examples() {
        let a4 = all_in_turn_rows(4);
        assert_eq!(a4.async_edge_cost(Edge::new(0, 3)).unwrap(), 3);
        assert_eq!(
            a4.async_edge_cost(Edge::new(3, 0)).unwrap_err(),
            Error::UnknownEdge { from: 3, to: 0 }
        );

        let n2 = all_in_turn_rows(2);
        assert_eq!(n2.async_edge_cost(Edge::new(0, 1)).unwrap(), 1);

        // First position in row 6 plus the seven entries of row 7.
        let asr = smooth_retiring_async(14).unwrap();
        assert_eq!(asr.rows()[6][0], 7);
        assert_eq!(asr.rows()[7].len(), 7);
        assert_eq!(asr.async_edge_cost(Edge::new(6, 7)).unwrap(), 8);
    }

    #[test]
    fn async_cost_examples() {
        assert_eq!(all_in_turn_rows(10).async_cost(), 9);
        assert!(smooth_retiring_async(14).unwrap().async_cost() <= 13);
    }

    #[test]
    fn rows_must_cover_every_pair_once() {
        let err = RowOrderedAlgorithm::from_rows(3, vec![vec![1, 2], vec![2], vec![1]])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)));
    }

    #[test]
    fn last_edge_of_each_row_bounds_the_cost() {
        for alg in [all_in_turn_rows(7), smooth_retiring_async(20).unwrap()] {
            let cost = alg.async_cost();
            for row in alg.rows().iter().filter(|r| !r.is_empty()) {
                let last = *row.last().unwrap();
                assert!(cost >= row.len() + alg.rows()[last].len());
            }
        }
    }
}
