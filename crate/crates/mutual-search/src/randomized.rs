//! Exact and Monte-Carlo evaluation of the randomized concert protocol:
//! the half-in-turn tournament with per-agent uniformly shuffled rows,
//! fired in rounds.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::half_in_turn_rows;

/// Exact-enumeration guard: `(⌊n/2⌋!)²` permutation pairs must stay
/// enumerable.
pub const EXACT_GUARD: usize = 13;

fn validate_placement(n: usize, a: usize, b: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewSites { n, min: 2 });
    }
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

fn is_permutation_of(perm: &[usize], row: &[usize]) -> bool {
    let mut a = perm.to_vec();
    let mut b = row.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Replay one concert execution for agents at `a` and `b` whose rows
/// fire in the given orders: rounds give each occupied row one turn
/// (site order within a round); unoccupied sites are silent. Returns
/// the number of queries up to and including first contact.
pub fn concert_cost(n: usize, a: usize, b: usize, perm_a: &[usize], perm_b: &[usize]) -> Result<usize> {
    validate_placement(n, a, b)?;
    let rows = half_in_turn_rows(n);
    if !is_permutation_of(perm_a, &rows[a]) || !is_permutation_of(perm_b, &rows[b]) {
        return Err(Error::InvalidStructure(
            "permutation does not match the agent's row".into(),
        ));
    }
    let agents = if a < b { [(a, perm_a), (b, perm_b)] } else { [(b, perm_b), (a, perm_a)] };
    let mut count = 0;
    for round in 0..rows.iter().map(Vec::len).max().unwrap_or(0) {
        for (site, perm) in agents {
            if let Some(&target) = perm.get(round) {
                count += 1;
                let other = a + b - site;
                if target == other {
                    return Ok(count);
                }
            }
        }
    }
    unreachable!("one of the two rows contains the contacting query");
}

fn permutations(row: &[usize]) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut row.to_vec(), &mut out);
    out
}

/// Exact expected concert cost for a fixed placement, averaged over all
/// permutation pairs of the two occupied rows.
pub fn expected_cost_exact(n: usize, a: usize, b: usize) -> Result<Rational64> {
    validate_placement(n, a, b)?;
    if n > EXACT_GUARD {
        return Err(Error::GuardExceeded {
            op: "expected_cost_exact",
            limit: EXACT_GUARD as u64,
            value: n as u64,
            hint: "; use monte_carlo_expected_cost instead",
        });
    }
    let rows = half_in_turn_rows(n);
    let perms_a = permutations(&rows[a]);
    let perms_b = permutations(&rows[b]);
    let mut total: u64 = 0;
    for pa in &perms_a {
        for pb in &perms_b {
            total += concert_cost(n, a, b, pa, pb)? as u64;
        }
    }
    let pairs = (perms_a.len() * perms_b.len()) as i64;
    Ok(Rational64::new(total as i64, pairs))
}

/// Worst placement's exact expected cost: `(n+1)/2` for odd `n`, and
/// close to that for even `n`.
pub fn worst_expected_cost(n: usize) -> Result<Rational64> {
    if n < 2 {
        return Err(Error::TooFewSites { n, min: 2 });
    }
    let mut worst = Rational64::new(0, 1);
    for a in 0..n {
        for b in a + 1..n {
            worst = worst.max(expected_cost_exact(n, a, b)?);
        }
    }
    Ok(worst)
}

/// Sample mean and standard error of the concert cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub trials: u64,
}

/// Monte-Carlo estimate of the expected concert cost for one placement,
/// reproducible per seed.
pub fn monte_carlo_expected_cost(
    n: usize,
    a: usize,
    b: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    validate_placement(n, a, b)?;
    if trials == 0 {
        return Err(Error::GuardExceeded {
            op: "monte_carlo_expected_cost",
            limit: 1,
            value: 0,
            hint: "; at least one trial is required",
        });
    }
    let rows = half_in_turn_rows(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm_a = rows[a].clone();
    let mut perm_b = rows[b].clone();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        perm_a.shuffle(&mut rng);
        perm_b.shuffle(&mut rng);
        let cost = concert_cost(n, a, b, &perm_a, &perm_b)? as f64;
        sum += cost;
        sum_sq += cost * cost;
    }
    let mean = sum / trials as f64;
    let std_err = if trials > 1 {
        let variance = (sum_sq - sum * sum / trials as f64) / (trials - 1) as f64;
        (variance.max(0.0) / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_err,
        trials,
    })
}
