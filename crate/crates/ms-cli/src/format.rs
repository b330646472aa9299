//! On-disk JSON representation of tournaments, ordered algorithms and
//! row-ordered algorithms. Validation happens at the deserialization
//! boundary: converting a file into a library value re-checks every
//! structural invariant.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use mutual_search::asynchronous::RowOrderedAlgorithm;
use mutual_search::ordered::OrderedAlgorithm;
use mutual_search::tournament::{Edge, Tournament};

/// One protocol structure on disk. Edges are `[from, to]` pairs; the
/// `ordered` kind lists them in temporal order, the `tournament` kind
/// in canonical pair order, and `rows` stores per-site target lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgorithmFile {
    Tournament { n: usize, edges: Vec<[usize; 2]> },
    Ordered { n: usize, order: Vec<[usize; 2]> },
    Rows { n: usize, rows: Vec<Vec<usize>> },
}

impl AlgorithmFile {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgorithmFile::Tournament { .. } => "tournament",
            AlgorithmFile::Ordered { .. } => "ordered",
            AlgorithmFile::Rows { .. } => "rows",
        }
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        AlgorithmFile::Tournament {
            n: t.sites(),
            edges: t.edges().map(|e| [e.from, e.to]).collect(),
        }
    }

    pub fn from_ordered(alg: &OrderedAlgorithm) -> Self {
        AlgorithmFile::Ordered {
            n: alg.sites(),
            order: alg.order().iter().map(|e| [e.from, e.to]).collect(),
        }
    }

    pub fn from_rows(alg: &RowOrderedAlgorithm) -> Self {
        AlgorithmFile::Rows {
            n: alg.sites(),
            rows: alg.rows().to_vec(),
        }
    }

    /// The underlying tournament, whatever the kind.
    pub fn to_tournament(&self) -> anyhow::Result<Tournament> {
        Ok(match self {
            AlgorithmFile::Tournament { n, edges } => {
                let edges: Vec<Edge> = edges.iter().map(|&[f, t]| Edge::new(f, t)).collect();
                Tournament::from_edges(*n, &edges)?
            }
            AlgorithmFile::Ordered { .. } => self.to_ordered()?.tournament().clone(),
            AlgorithmFile::Rows { .. } => self.to_rows()?.tournament().clone(),
        })
    }

    pub fn to_ordered(&self) -> anyhow::Result<OrderedAlgorithm> {
        match self {
            AlgorithmFile::Ordered { n, order } => {
                let order: Vec<Edge> = order.iter().map(|&[f, t]| Edge::new(f, t)).collect();
                let mut canonical = order.clone();
                canonical.sort_by_key(|e| e.pair());
                let t = Tournament::from_edges(*n, &canonical)?;
                Ok(OrderedAlgorithm::from_parts(t, order)?)
            }
            other => bail!("expected an ordered file, got kind \"{}\"", other.kind()),
        }
    }

    pub fn to_rows(&self) -> anyhow::Result<RowOrderedAlgorithm> {
        match self {
            AlgorithmFile::Rows { n, rows } => {
                Ok(RowOrderedAlgorithm::from_rows(*n, rows.clone())?)
            }
            other => bail!("expected a rows file, got kind \"{}\"", other.kind()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let file: AlgorithmFile =
            serde_json::from_str(text).context("not a valid algorithm file")?;
        // Surface structural problems at the parse boundary.
        match &file {
            AlgorithmFile::Tournament { .. } => {
                file.to_tournament()?;
            }
            AlgorithmFile::Ordered { .. } => {
                file.to_ordered()?;
            }
            AlgorithmFile::Rows { .. } => {
                file.to_rows()?;
            }
        }
        Ok(file)
    }
}
