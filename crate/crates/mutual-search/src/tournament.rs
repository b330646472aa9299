//! Tournaments: one directed edge per unordered pair of sites.
//!
//! A tournament tells us who queries whom; a separate temporal order
//! (see [`crate::ordered`]) tells us when. Pairs are stored canonically
//! as `{min, max}` plus a direction bit, so a tournament on `n` sites
//! is a flat vector of `n(n-1)/2` bits.

use rand::Rng;

use crate::error::{Error, Result};

/// A single query: site `from` asks "anybody at site `to`?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
}

impl Edge {
    pub fn new(from: usize, to: usize) -> Self {
        Edge { from, to }
    }

    /// The unordered pair behind this edge, as `(min, max)`.
    pub fn pair(&self) -> (usize, usize) {
        if self.from < self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.from, self.to)
    }
}

/// Index of the unordered pair `{i, j}` (`i < j`) in row-major upper
/// triangle order: `{0,1}, {0,2}, ..., {0,n-1}, {1,2}, ...`.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// A complete orientation of the `n(n-1)/2` site pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    /// `low_wins[pair_index(i,j)]` is true iff the edge runs `i -> j`
    /// (the lower-numbered site queries the higher one).
    low_wins: Vec<bool>,
}

impl Tournament {
    /// Number of edges of an `n`-site tournament.
    pub fn edge_count_for(n: usize) -> usize {
        n * (n - 1) / 2
    }

    fn empty(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewSites { n, min: 2 });
        }
        Ok(Tournament {
            n,
            low_wins: vec![false; Self::edge_count_for(n)],
        })
    }

    /// Build from an explicit edge list. Every unordered pair must be
    /// covered exactly once.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut t = Self::empty(n)?;
        let mut seen = vec![false; t.low_wins.len()];
        for &e in edges {
            Self::check_sites(n, e.from, e.to)?;
            let (lo, hi) = e.pair();
            let idx = pair_index(n, lo, hi);
            if seen[idx] {
                return Err(Error::InvalidStructure(format!(
                    "pair {{{lo},{hi}}} oriented more than once"
                )));
            }
            seen[idx] = true;
            t.low_wins[idx] = e.from == lo;
        }
        if let Some(idx) = seen.iter().position(|s| !s) {
            let (i, j) = unpair_index(n, idx);
            return Err(Error::InvalidStructure(format!(
                "pair {{{i},{j}}} has no edge"
            )));
        }
        Ok(t)
    }

    /// Decode a tournament from the low `n(n-1)/2` bits of `mask`
    /// (bit `b` set means the lower site of pair `b` queries the higher).
    /// This is the oracle's enumeration scheme.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let m = Self::edge_count_for(n);
        if m > 64 {
            return Err(Error::GuardExceeded {
                op: "Tournament::from_mask",
                limit: 64,
                value: m as u64,
                hint: "",
            });
        }
        let mut t = Self::empty(n)?;
        for b in 0..m {
            t.low_wins[b] = mask >> b & 1 == 1;
        }
        Ok(t)
    }

    /// Uniformly random orientation of every pair.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut t = Self::empty(n)?;
        for bit in t.low_wins.iter_mut() {
            *bit = rng.gen();
        }
        Ok(t)
    }

    fn check_sites(n: usize, a: usize, b: usize) -> Result<()> {
        if a >= n {
            return Err(Error::SiteOutOfRange { site: a, n });
        }
        if b >= n {
            return Err(Error::SiteOutOfRange { site: b, n });
        }
        if a == b {
            return Err(Error::SitesNotDistinct { a, b });
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.low_wins.len()
    }

    /// The oriented edge between sites `a` and `b`.
    pub fn edge_between(&self, a: usize, b: usize) -> Result<Edge> {
        Self::check_sites(self.n, a, b)?;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Ok(if self.low_wins[pair_index(self.n, lo, hi)] {
            Edge::new(lo, hi)
        } else {
            Edge::new(hi, lo)
        })
    }

    /// Does the directed edge `from -> to` belong to this tournament?
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edge_between(from, to).map_or(false, |e| e.from == from)
    }

    /// All edges in canonical pair order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).map(move |j| {
                if self.low_wins[pair_index(self.n, i, j)] {
                    Edge::new(i, j)
                } else {
                    Edge::new(j, i)
                }
            })
        })
    }

    /// Out-neighbors of `site`, ascending.
    pub fn row(&self, site: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&other| other != site && self.has_edge(site, other))
            .collect()
    }

    /// Row length (out-degree) of every site.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in self.edges() {
            deg[e.from] += 1;
        }
        deg
    }

    /// Re-orient a single pair; used by tests to perturb instances.
    pub fn flip_pair(&mut self, a: usize, b: usize) -> Result<()> {
        Self::check_sites(self.n, a, b)?;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let idx = pair_index(self.n, lo, hi);
        self.low_wins[idx] = !self.low_wins[idx];
        Ok(())
    }
}

fn unpair_index(n: usize, mut idx: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_is_a_bijection() {
        let n = 9;
        let mut seen = vec![false; Tournament::edge_count_for(n)];
        for i in 0..n {
            for j in i + 1..n {
                let idx = pair_index(n, i, j);
                assert!(!seen[idx]);
                seen[idx] = true;
                assert_eq!(unpair_index(n, idx), (i, j));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn from_edges_rejects_duplicates_and_holes() {
        let err = Tournament::from_edges(
            3,
            &[Edge::new(0, 1), Edge::new(1, 0), Edge::new(1, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)));

        let err = Tournament::from_edges(3, &[Edge::new(0, 1), Edge::new(1, 2)]).unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)));
    }

    #[test]
    fn from_edges_round_trips() {
        let edges = [Edge::new(1, 0), Edge::new(2, 0), Edge::new(1, 2)];
        let t = Tournament::from_edges(3, &edges).unwrap();
        assert!(t.has_edge(1, 0));
        assert!(t.has_edge(2, 0));
        assert!(t.has_edge(1, 2));
        assert!(!t.has_edge(0, 1));
        assert_eq!(t.row(1), vec![0, 2]);
        assert_eq!(t.out_degrees(), vec![0, 2, 1]);
    }

    #[test]
    fn mask_enumeration_covers_all_orientations() {
        let n = 3;
        let mut distinct = std::collections::HashSet::new();
        for mask in 0..8u64 {
            distinct.insert(Tournament::from_mask(n, mask).unwrap());
        }
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn too_few_sites_rejected() {
        assert_eq!(
            Tournament::from_edges(1, &[]).unwrap_err(),
            Error::TooFewSites { n: 1, min: 2 }
        );
    }
}
