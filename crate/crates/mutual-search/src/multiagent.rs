//! The RingSegments protocol for k agents: most of the search space is
//! a ring where resident agents query ahead, merging into classes that
//! pool their remaining budgets; survivors then sweep the small
//! leftover group. Total cost is at most `k(k-1)m` queries.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Instance shape: `n = (k(k-1)+1)m` sites, of which the first
/// `k(k-1)m` form the ring and the last `m` the leftover group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsConfig {
    pub k: usize,
    pub m: usize,
}

impl RsConfig {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewSites { n: k, min: 2 });
        }
        if m < 1 {
            return Err(Error::InvalidStructure("m must be at least 1".into()));
        }
        Ok(RsConfig { k, m })
    }

    pub fn sites(&self) -> usize {
        (self.k * (self.k - 1) + 1) * self.m
    }

    pub fn ring_len(&self) -> usize {
        self.k * (self.k - 1) * self.m
    }

    /// Ring budget a single agent starts with.
    pub fn agent_budget(&self) -> usize {
        (self.k - 1) * self.m
    }

    /// The proven worst-case bound `k(k-1)m`.
    pub fn cost_bound(&self) -> usize {
        self.k * (self.k - 1) * self.m
    }
}

/// One query of a RingSegments run. The querying class is identified by
/// its smallest member site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsEvent {
    pub step: usize,
    pub querier: usize,
    pub target: usize,
    /// True iff the target site held an agent of another class (a merge).
    pub hit: bool,
}

/// Event log of one run; ends with the query that joins the last two
/// classes.
#[derive(Debug, Clone)]
pub struct RsTranscript {
    pub config: RsConfig,
    pub placement: Vec<usize>,
    pub events: Vec<RsEvent>,
    pub total_queries: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    /// Make `a`'s root the representative of both.
    fn union_into(&mut self, a: usize, b: usize) -> usize {
        let ra = self.find(a);
        let rb = self.find(b);
        self.parent[rb] = ra;
        ra
    }
}

#[derive(Debug, Clone, Default)]
struct ClassState {
    members: Vec<usize>,
    min_site: usize,
    /// Next candidate ring position of the frontmost member.
    frontier: usize,
    ring_budget: usize,
    has_ring_member: bool,
    queried_ring: Vec<usize>,
    queried_leftover: Vec<usize>,
}

/// Run the protocol for one placement of `k` agents.
///
/// Phase 1: ring classes take round-robin turns (ordered by smallest
/// member site), each firing one query at its frontier — the next
/// unqueried non-member ring site ahead, wrapping around the ring. An
/// affirmative answer merges the classes; the merged class continues
/// from the queried (front) class's frontier with both budgets pooled.
/// The phase ends when every ring budget is spent or one class holds
/// all agents.
///
/// Phase 2: surviving ring classes round-robin through the leftover
/// sites, skipping their own members and repeats; when no agent sits on
/// the ring at all, the leftover classes run this sweep themselves.
pub fn rs_simulate(config: RsConfig, placement: &[usize]) -> Result<RsTranscript> {
    let n = config.sites();
    let ring_len = config.ring_len();
    if placement.len() != config.k {
        return Err(Error::InvalidStructure(format!(
            "placement lists {} sites for k={}",
            placement.len(),
            config.k
        )));
    }
    let mut site_owner = vec![usize::MAX; n];
    for (agent, &site) in placement.iter().enumerate() {
        if site >= n {
            return Err(Error::SiteOutOfRange { site, n });
        }
        if site_owner[site] != usize::MAX {
            return Err(Error::SitesNotDistinct { a: site, b: site });
        }
        site_owner[site] = agent;
    }

    let k = config.k;
    let mut uf = UnionFind::new(k);
    let mut classes: Vec<ClassState> = placement
        .iter()
        .map(|&site| {
            let on_ring = site < ring_len;
            ClassState {
                members: vec![site],
                min_site: site,
                frontier: if on_ring { (site + 1) % ring_len } else { 0 },
                ring_budget: if on_ring { config.agent_budget() } else { 0 },
                has_ring_member: on_ring,
                queried_ring: Vec::new(),
                queried_leftover: Vec::new(),
            }
        })
        .collect();

    let mut alive = k;
    let mut events: Vec<RsEvent> = Vec::new();
    let mut ring_seen = vec![false; ring_len];

    let merge =
        |uf: &mut UnionFind, classes: &mut Vec<ClassState>, querier: usize, front: usize| {
            let front_state = std::mem::take(&mut classes[front]);
            let root = uf.union_into(querier, front);
            debug_assert_eq!(root, querier);
            let into = &mut classes[querier];
            into.members.extend(front_state.members);
            into.min_site = into.min_site.min(front_state.min_site);
            // The merged class continues where the front class left off.
            if front_state.has_ring_member {
                into.frontier = front_state.frontier;
            }
            into.ring_budget += front_state.ring_budget;
            into.has_ring_member |= front_state.has_ring_member;
            into.queried_ring.extend(front_state.queried_ring);
            into.queried_leftover.extend(front_state.queried_leftover);
        };

    // Phase 1: the ring.
    while alive > 1 {
        let mut order: Vec<usize> = (0..k)
            .filter(|&a| {
                uf.find(a) == a && classes[a].has_ring_member && classes[a].ring_budget > 0
            })
            .collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&a| classes[a].min_site);
        let mut fired = false;
        for root in order {
            if alive == 1 {
                break;
            }
            if uf.find(root) != root || classes[root].ring_budget == 0 {
                continue;
            }
            // Advance to the next site ahead that is neither ours nor
            // already covered by us.
            let mut pos = classes[root].frontier;
            let mut steps = 0;
            let target = loop {
                if steps > ring_len {
                    break None;
                }
                let own = site_owner[pos] != usize::MAX && uf.find(site_owner[pos]) == root;
                if !own && !classes[root].queried_ring.contains(&pos) {
                    break Some(pos);
                }
                pos = (pos + 1) % ring_len;
                steps += 1;
            };
            let Some(target) = target else {
                classes[root].ring_budget = 0;
                continue;
            };
            assert!(!ring_seen[target], "ring site {target} queried twice");
            ring_seen[target] = true;
            classes[root].queried_ring.push(target);
            classes[root].ring_budget -= 1;
            classes[root].frontier = (target + 1) % ring_len;
            let occupant = site_owner[target];
            let hit = occupant != usize::MAX && uf.find(occupant) != root;
            events.push(RsEvent {
                step: events.len(),
                querier: classes[root].min_site,
                target,
                hit,
            });
            if hit {
                let front = uf.find(occupant);
                merge(&mut uf, &mut classes, root, front);
                alive -= 1;
            }
            fired = true;
        }
        if !fired {
            break;
        }
    }

    // Phase 2: the leftover group.
    while alive > 1 {
        let roots: Vec<usize> = (0..k).filter(|&a| uf.find(a) == a).collect();
        let any_ring = roots.iter().any(|&r| classes[r].has_ring_member);
        let mut order: Vec<usize> = roots
            .into_iter()
            .filter(|&r| classes[r].has_ring_member || !any_ring)
            .collect();
        order.sort_by_key(|&a| classes[a].min_site);
        let mut fired = false;
        for root in order {
            if alive == 1 {
                break;
            }
            if uf.find(root) != root {
                continue;
            }
            let target = (ring_len..n).find(|&site| {
                let own = site_owner[site] != usize::MAX && uf.find(site_owner[site]) == root;
                !own && !classes[root].queried_leftover.contains(&site)
            });
            let Some(target) = target else { continue };
            classes[root].queried_leftover.push(target);
            let occupant = site_owner[target];
            let hit = occupant != usize::MAX && uf.find(occupant) != root;
            events.push(RsEvent {
                step: events.len(),
                querier: classes[root].min_site,
                target,
                hit,
            });
            if hit {
                let front = uf.find(occupant);
                merge(&mut uf, &mut classes, root, front);
                alive -= 1;
            }
            fired = true;
        }
        assert!(
            fired || alive == 1,
            "no class can query yet {alive} classes remain"
        );
    }

    let total_queries = events.len();
    Ok(RsTranscript {
        config,
        placement: placement.to_vec(),
        events,
        total_queries,
    })
}

/// How a worst-cost sweep explores the placement space.
#[derive(Debug, Clone, Copy)]
pub enum SweepMode {
    /// All `C(n, k)` placements; guarded at 10^6.
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

/// Worst transcript cost over placements, with an achieving placement.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub worst_cost: usize,
    pub placement: Vec<usize>,
    pub explored: u64,
}

const SWEEP_GUARD: u64 = 1_000_000;

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    if k > n {
        0
    } else {
        acc as u64
    }
}

/// Maximum simulation cost over enumerated or sampled placements.
pub fn rs_worst_cost(config: RsConfig, mode: SweepMode) -> Result<SweepResult> {
    let n = config.sites();
    let k = config.k;
    match mode {
        SweepMode::Exhaustive => {
            let total = binomial(n as u64, k as u64);
            if total > SWEEP_GUARD {
                return Err(Error::GuardExceeded {
                    op: "rs_worst_cost",
                    limit: SWEEP_GUARD,
                    value: total,
                    hint: "; use sampled mode",
                });
            }
            let mut placements = Vec::with_capacity(total as usize);
            let mut current: Vec<usize> = (0..k).collect();
            'combos: loop {
                placements.push(current.clone());
                // Advance to the next k-combination of 0..n.
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'combos;
                    }
                    i -= 1;
                    if current[i] != i + n - k {
                        break;
                    }
                }
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
            }
            let best = placements
                .par_iter()
                .map(|p| {
                    let cost = rs_simulate(config, p).expect("valid placement").total_queries;
                    (cost, p.clone())
                })
                .reduce(
                    || (0, Vec::new()),
                    |a, b| {
                        if b.0 > a.0 || (b.0 == a.0 && !b.1.is_empty() && (a.1.is_empty() || b.1 < a.1)) {
                            b
                        } else {
                            a
                        }
                    },
                );
            Ok(SweepResult {
                worst_cost: best.0,
                placement: best.1,
                explored: total,
            })
        }
        SweepMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = (0usize, Vec::new());
            for _ in 0..count {
                let placement = rand::seq::index::sample(&mut rng, n, k).into_vec();
                let cost = rs_simulate(config, &placement)?.total_queries;
                if cost > best.0 || best.1.is_empty() {
                    best = (cost, placement);
                }
            }
            Ok(SweepResult {
                worst_cost: best.0,
                placement: best.1,
                explored: count,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_transcript_sane(t: &RsTranscript) {
        // Ring sites are never queried twice across the whole run.
        let mut seen = std::collections::HashSet::new();
        for e in &t.events {
            if e.target < t.config.ring_len() {
                assert!(seen.insert(e.target), "ring site {} repeated", e.target);
            }
        }
        assert!(t.total_queries <= t.config.cost_bound());
        assert_eq!(t.events.last().map(|e| e.hit), Some(true));
    }

    #[test]
    fn two_agents_adjacent_on_ring() {
        let cfg = RsConfig::new(2, 1).unwrap();
        // n=3: ring {0,1}, leftover {2}.
        let t = rs_simulate(cfg, &[0, 1]).unwrap();
        assert_eq!(t.total_queries, 1);
        assert_eq!(t.events[0].querier, 0);
        assert_eq!(t.events[0].target, 1);
        assert_transcript_sane(&t);
    }

    #[test]
    fn ring_agent_finds_leftover_agent() {
        let cfg = RsConfig::new(2, 1).unwrap();
        let t = rs_simulate(cfg, &[0, 2]).unwrap();
        // One wasted ring query, then the leftover site.
        assert_eq!(t.total_queries, 2);
        assert_transcript_sane(&t);
    }

    #[test]
    fn exhaustive_sweeps_meet_the_bound() {
        for (k, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
            let cfg = RsConfig::new(k, m).unwrap();
            let sweep = rs_worst_cost(cfg, SweepMode::Exhaustive).unwrap();
            assert!(
                sweep.worst_cost <= cfg.cost_bound(),
                "k={k} m={m}: {} > {}",
                sweep.worst_cost,
                cfg.cost_bound()
            );
            assert_eq!(
                sweep.explored,
                binomial(cfg.sites() as u64, k as u64)
            );
        }
    }

    #[test]
    fn worst_case_is_tight_for_two_agents() {
        // k=2, m=2: placing one agent on the ring start and the other at
        // the last leftover site costs the full 2m.
        let cfg = RsConfig::new(2, 2).unwrap();
        let sweep = rs_worst_cost(cfg, SweepMode::Exhaustive).unwrap();
        assert_eq!(sweep.worst_cost, 4);
        for placement in [[0usize, 4], [0, 5]] {
            let t = rs_simulate(cfg, &placement).unwrap();
            assert_transcript_sane(&t);
        }
    }

    #[test]
    fn all_agents_in_leftover_still_merge() {
        let cfg = RsConfig::new(2, 2).unwrap();
        // n=6, leftover {4,5}.
        let t = rs_simulate(cfg, &[4, 5]).unwrap();
        assert_eq!(t.total_queries, 1);
        assert_transcript_sane(&t);

        let cfg = RsConfig::new(3, 2).unwrap();
        let leftover: Vec<usize> = (cfg.ring_len()..cfg.sites()).collect();
        assert_eq!(leftover.len(), 2);
        // Two in the leftover, one on the ring.
        let t = rs_simulate(cfg, &[0, leftover[0], leftover[1]]).unwrap();
        assert_transcript_sane(&t);
    }

    #[test]
    fn stalled_ring_classes_bridge_through_leftover() {
        // Two far-apart ring agents exhaust their budgets, then meet
        // through the leftover agent, inside the k(k-1)m bound.
        let cfg = RsConfig::new(3, 2).unwrap();
        let t = rs_simulate(cfg, &[0, 6, 13]).unwrap();
        assert_eq!(t.total_queries, 12);
        assert_transcript_sane(&t);
    }

    #[test]
    fn placement_validation() {
        let cfg = RsConfig::new(2, 1).unwrap();
        assert!(rs_simulate(cfg, &[0]).is_err());
        assert!(rs_simulate(cfg, &[0, 0]).is_err());
        assert!(rs_simulate(cfg, &[0, 9]).is_err());
        assert!(RsConfig::new(1, 1).is_err());
        assert!(RsConfig::new(2, 0).is_err());
    }

    #[test]
    fn sampled_mode_is_reproducible_and_bounded() {
        let cfg = RsConfig::new(3, 2).unwrap();
        let mode = SweepMode::Sampled { count: 200, seed: 11 };
        let a = rs_worst_cost(cfg, mode).unwrap();
        let b = rs_worst_cost(cfg, mode).unwrap();
        assert_eq!(a.worst_cost, b.worst_cost);
        assert_eq!(a.placement, b.placement);
        assert!(a.worst_cost <= cfg.cost_bound());
    }
}
