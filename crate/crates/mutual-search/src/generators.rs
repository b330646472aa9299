//! Constructions of every named protocol: the simple round-robin
//! families, the two-group "smooth retiring" family and its
//! asynchronous variant, and the randomized concert protocol.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::asynchronous::RowOrderedAlgorithm;
use crate::error::{Error, Result};
use crate::ordered::OrderedAlgorithm;
use crate::refine::PartialAlgorithm;
use crate::tournament::{Edge, Tournament};

/// Row profile of the half-in-turn protocol; empty rows for `n < 2`.
pub(crate) fn half_in_turn_rows(n: usize) -> Vec<Vec<usize>> {
    let mut rows = vec![Vec::new(); n];
    if n < 2 {
        return rows;
    }
    let half = n / 2;
    for (i, row) in rows.iter_mut().enumerate() {
        let len = if n % 2 == 0 && i >= half { half - 1 } else { half };
        row.extend((1..=len).map(|d| (i + d) % n));
    }
    rows
}

/// Each site in turn queries all higher-numbered sites.
pub fn all_in_turn(n: usize) -> Result<OrderedAlgorithm> {
    if n < 2 {
        return Err(Error::TooFewSites { n, min: 2 });
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (i + 1..n).collect()).collect();
    OrderedAlgorithm::from_rows_in_site_order(&rows)
}

/// Each site in turn queries the next `n/2` sites around the circle;
/// for even `n` the upper half stops one short so no pair is claimed
/// twice.
pub fn half_in_turn(n: usize) -> Result<OrderedAlgorithm> {
    if n < 2 {
        return Err(Error::TooFewSites { n, min: 2 });
    }
    OrderedAlgorithm::from_rows_in_site_order(&half_in_turn_rows(n))
}

/// Half-in-turn padded with free extra sites until the cost equals the
/// maximum row length. Costs exactly `⌈2(n−1)/3⌉`.
///
/// For `n ≡ 1, 2 (mod 3)` the base is the `⌈2(n−1)/3⌉ + 1`-site
/// half-in-turn and every extension is free. For `n ≡ 0 (mod 3)` that
/// base overshoots (the extensions run out one short of saturation), so
/// the base drops one site and the last extension lands exactly on the
/// saturation boundary, raising the cost by the one unit the smaller
/// base saved.
pub fn saturated_half_in_turn(n: usize) -> Result<OrderedAlgorithm> {
    if n < 4 {
        return Err(Error::TooFewSites { n, min: 4 });
    }
    let target = 2 * n / 3; // ⌈2(n−1)/3⌉
    let base = if n % 3 == 0 { target } else { target + 1 };
    let mut alg = half_in_turn(base)?;
    for _ in base..n {
        alg = if alg.is_saturated() {
            alg.extend_unchecked()
        } else {
            alg.saturate_extend()?
        };
    }
    assert_eq!(alg.sync_cost(), target, "construction missed its cost target");
    assert!(alg.is_saturated(), "construction ended unsaturated");
    Ok(alg)
}

/// Group split of the smooth-retiring construction: `upper` sites run
/// half-in-turn among themselves, the remaining `cost` sites form the
/// lower group, and `cost` is the worst-case query count aimed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrParams {
    pub n: usize,
    /// Upper-group size `u = n - cost`.
    pub upper: usize,
    /// Lower-group size, equal to the target cost.
    pub cost: usize,
}

/// Smallest lower-group size `c` such that the lower block's open slots
/// can absorb the upper block's internal edges (`⌊c²/4⌋ ≥ C(u,2)`) and
/// no lower row needs the same upper target twice (`⌊c/2⌋ ≤ u`).
pub fn sr_params(n: usize) -> Result<SrParams> {
    if n < 2 {
        return Err(Error::TooFewSites { n, min: 2 });
    }
    for cost in 1..n {
        let upper = n - cost;
        if cost * cost / 4 >= upper * (upper - 1) / 2 && cost / 2 <= upper {
            return Ok(SrParams { n, upper, cost });
        }
    }
    Err(Error::InfeasibleSplit { n })
}

/// A per-site sequence of query cells, where a cell is either a target
/// site or an unfilled gap. This is the matrix picture of the
/// smooth-retiring construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowLayout {
    n: usize,
    upper: usize,
    rows: Vec<Vec<Option<usize>>>,
}

impl RowLayout {
    pub fn sites(&self) -> usize {
        self.n
    }

    /// Size of the upper group (rows below it belong to the lower group).
    pub fn upper_group(&self) -> usize {
        self.upper
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }

    /// Row queries with gaps dropped.
    pub fn row_targets(&self, site: usize) -> Vec<usize> {
        self.rows[site].iter().flatten().copied().collect()
    }
}

/// The smooth-retiring protocol: the upper group runs half-in-turn, the
/// lower group a reversed all-in-turn whose leading slots absorb the
/// queries to the upper group, and the upper rows' trailing slots take
/// the remaining lower targets in decreasing order. Returned as the
/// underlying tournament plus the row layout; an optimal temporal order
/// is recovered with [`crate::refine::greedy_refine`] or
/// [`smooth_retiring_witness`].
pub fn smooth_retiring(n: usize) -> Result<(Tournament, RowLayout)> {
    let params = sr_params(n)?;
    let layout = build_sr_layout(params);
    let mut edges = Vec::with_capacity(Tournament::edge_count_for(n));
    for (i, row) in layout.rows.iter().enumerate() {
        for &cell in row {
            if let Some(j) = cell {
                edges.push(Edge::new(i, j));
            }
        }
    }
    let tournament = Tournament::from_edges(n, &edges)?;
    Ok((tournament, layout))
}

fn build_sr_layout(params: SrParams) -> RowLayout {
    let SrParams { n, upper, cost } = params;

    // Lower row `upper + i` keeps `c - 1 - i` reversed all-in-turn
    // targets and opens `⌈i/2⌉` leading slots for upper targets.
    let slot_counts: Vec<usize> = (0..cost).map(|i| (i + 1) / 2).collect();

    // Fill the lower slots top to bottom, left to right, cycling
    // through the upper sites.
    let mut fills: Vec<Vec<usize>> = Vec::with_capacity(cost);
    let mut next_target = 0usize;
    for &slots in &slot_counts {
        let mut row_fill = Vec::with_capacity(slots);
        for _ in 0..slots {
            row_fill.push(next_target % upper.max(1));
            next_target += 1;
        }
        fills.push(row_fill);
    }

    // Which lower partners each upper site already reaches through a
    // lower row's slot (those pairs point lower -> upper).
    let mut covered = vec![vec![false; cost]; upper];
    for (i, row_fill) in fills.iter().enumerate() {
        for &x in row_fill {
            assert!(!covered[x][i], "slot fill repeated a target in one row");
            covered[x][i] = true;
        }
    }

    let mut rows: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
    let prefix_rows = half_in_turn_rows(upper);
    for (x, prefix) in prefix_rows.iter().enumerate() {
        let mut remaining: Vec<usize> = (0..cost)
            .rev()
            .filter(|&i| !covered[x][i])
            .map(|i| upper + i)
            .collect();
        let slots = cost - prefix.len();
        assert!(
            remaining.len() <= slots,
            "upper row {x} overflows: {} targets for {slots} slots",
            remaining.len()
        );
        let mut row: Vec<Option<usize>> = prefix.iter().map(|&j| Some(j)).collect();
        row.extend(std::iter::repeat(None).take(slots - remaining.len()));
        row.extend(remaining.drain(..).map(Some));
        rows.push(row);
    }
    for i in 0..cost {
        let mut row: Vec<Option<usize>> = fills[i].iter().map(|&x| Some(x)).collect();
        row.extend((upper + i + 1..n).rev().map(Some));
        rows.push(row);
    }

    RowLayout { n, upper, rows }
}

/// The refinement schedule used to certify the smooth-retiring cost:
/// retire the lower block bottom-up right-to-left, then the
/// upper-to-lower edges by increasing target, then the upper
/// half-in-turn block in reverse temporal order, then the lower rows'
/// slot edges. Every retiring cost along the way is at most the target
/// cost, so the returned algorithm witnesses the bound without running
/// the greedy search.
pub fn smooth_retiring_witness(n: usize) -> Result<OrderedAlgorithm> {
    let params = sr_params(n)?;
    let (tournament, layout) = smooth_retiring(n)?;
    let SrParams { upper, cost, .. } = params;

    let mut schedule = Vec::with_capacity(tournament.edge_count());
    // Lower-lower, bottom row first, nearest target first.
    for i in (0..cost).rev() {
        for target in upper + i + 1..n {
            schedule.push(Edge::new(upper + i, target));
        }
    }
    // Upper-to-lower by increasing lower index.
    for j in 0..cost {
        for i in 0..upper {
            if tournament.has_edge(i, upper + j) {
                schedule.push(Edge::new(i, upper + j));
            }
        }
    }
    // The upper half-in-turn block, retired backward so its temporal
    // order comes out forward.
    let upper_rows = half_in_turn_rows(upper);
    let mut upper_edges = Vec::new();
    for (i, row) in upper_rows.iter().enumerate() {
        for &j in row {
            upper_edges.push(Edge::new(i, j));
        }
    }
    schedule.extend(upper_edges.into_iter().rev());
    // Lower rows' slot edges, bottom row first, rightmost slot first.
    for i in (0..cost).rev() {
        let slots = (i + 1) / 2;
        for cell in layout.rows()[upper + i][..slots].iter().rev() {
            schedule.push(Edge::new(upper + i, cell.expect("slots are filled")));
        }
    }

    PartialAlgorithm::from_retired(tournament, schedule)?.into_ordered()
}

/// Asynchronous variant of smooth retiring: same rows with each row's
/// lower-group targets reversed (ascending) and gaps dropped, evaluated
/// under the position-plus-target-row-length cost.
pub fn smooth_retiring_async(n: usize) -> Result<RowOrderedAlgorithm> {
    let (_, layout) = smooth_retiring(n)?;
    let upper = layout.upper_group();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let targets = layout.row_targets(i);
            let lower_positions: Vec<usize> = (0..targets.len())
                .filter(|&p| targets[p] >= upper)
                .collect();
            let mut row = targets.clone();
            for (&p, &q) in lower_positions.iter().zip(lower_positions.iter().rev()) {
                row[p] = targets[q];
            }
            row
        })
        .collect();
    RowOrderedAlgorithm::from_rows(n, rows)
}

/// The randomized concert protocol: the half-in-turn tournament with
/// every row independently shuffled, queried in rounds that give each
/// row one turn per round (rows in site order within a round).
pub fn random_half_in_concert(n: usize, seed: u64) -> Result<OrderedAlgorithm> {
    if n < 2 {
        return Err(Error::TooFewSites { n, min: 2 });
    }
    let mut rows = half_in_turn_rows(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for row in rows.iter_mut() {
        row.shuffle(&mut rng);
    }
    OrderedAlgorithm::from_parts(
        half_in_turn(n)?.tournament().clone(),
        concert_order(&rows),
    )
}

/// Round-robin interleaving: round `t` fires every row's `t`-th query,
/// rows in site order; exhausted rows are skipped.
pub(crate) fn concert_order(rows: &[Vec<usize>]) -> Vec<Edge> {
    let max_len = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut order = Vec::new();
    for t in 0..max_len {
        for (i, row) in rows.iter().enumerate() {
            if let Some(&j) = row.get(t) {
                order.push(Edge::new(i, j));
            }
        }
    }
    order
}
