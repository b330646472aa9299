//! Implementations behind the CLI subcommands. Each returns the text
//! destined for stdout; file outputs are written atomically (temp file
//! plus rename) once the command has fully succeeded.

use std::path::Path;

use anyhow::{bail, Context};
use serde::Serialize;

use mutual_search::asynchronous::RowOrderedAlgorithm;
use mutual_search::bounds::{self, format_ratio, Model};
use mutual_search::generators;
use mutual_search::multiagent::{self, RsConfig, RsTranscript, SweepMode};
use mutual_search::oracle::{self, OracleModel, OracleResult};
use mutual_search::ordered::OrderedAlgorithm;
use mutual_search::randomized;
use mutual_search::refine::greedy_refine;

use crate::format::AlgorithmFile;
use crate::render;

/// Write `content`, going through a temp file in the target directory
/// so the destination is never seen half-written.
pub fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
        .context("creating temp file")?;
    std::io::Write::write_all(&mut tmp, content.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn read_file(path: &Path) -> anyhow::Result<AlgorithmFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    AlgorithmFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn cmd_gen(
    name: &str,
    n: usize,
    seed: Option<u64>,
    out: Option<&Path>,
    layout_out: Option<&Path>,
) -> anyhow::Result<String> {
    if layout_out.is_some() && name != "sr" {
        bail!("--layout is only meaningful for sr");
    }
    let (stdout_text, file): (String, AlgorithmFile) = match name {
        "allinturn" => {
            let alg = generators::all_in_turn(n)?;
            (
                render::matrix_of_rows(&alg.rows()),
                AlgorithmFile::from_ordered(&alg),
            )
        }
        "halfinturn" => {
            let alg = generators::half_in_turn(n)?;
            (
                render::matrix_of_rows(&alg.rows()),
                AlgorithmFile::from_ordered(&alg),
            )
        }
        "sathalfinturn" => {
            let alg = generators::saturated_half_in_turn(n)?;
            (
                render::matrix_of_rows(&alg.rows()),
                AlgorithmFile::from_ordered(&alg),
            )
        }
        "sr" => {
            let (t, layout) = generators::smooth_retiring(n)?;
            let text = render::matrix_of_layout(&layout);
            if let Some(path) = layout_out {
                write_atomic(path, &text)?;
            }
            (text, AlgorithmFile::from_tournament(&t))
        }
        "asr" => {
            let alg = generators::smooth_retiring_async(n)?;
            (
                render::matrix_of_rows(alg.rows()),
                AlgorithmFile::from_rows(&alg),
            )
        }
        "rhc" => {
            let seed = seed.context("rhc requires --seed")?;
            let alg = generators::random_half_in_concert(n, seed)?;
            (
                render::matrix_of_rows(&alg.rows()),
                AlgorithmFile::from_ordered(&alg),
            )
        }
        other => bail!("unknown generator \"{other}\" (expected allinturn, halfinturn, sathalfinturn, sr, asr or rhc)"),
    };
    if let Some(path) = out {
        write_atomic(path, &file.to_json())?;
    }
    Ok(stdout_text)
}

pub fn cmd_cost(path: &Path, model: &str, per_edge: bool) -> anyhow::Result<String> {
    let file = read_file(path)?;
    let mut out = String::new();
    match model {
        "sync" => {
            let alg = match &file {
                AlgorithmFile::Ordered { .. } => file.to_ordered()?,
                AlgorithmFile::Tournament { .. } => {
                    out.push_str("note: tournament input, cost of its greedy refinement\n");
                    greedy_refine(&file.to_tournament()?)
                }
                AlgorithmFile::Rows { .. } => {
                    bail!("sync cost needs an ordered or tournament file, got rows")
                }
            };
            let (edge, cost) = alg.max_cost_edge();
            out.push_str(&format!("sync cost: {cost}\n"));
            if per_edge {
                out.push_str(&format!("worst edge: {edge}\n"));
            }
        }
        "async" => {
            let alg: RowOrderedAlgorithm = file.to_rows().map_err(|_| {
                anyhow::anyhow!("async cost needs a rows file, got {}", file.kind())
            })?;
            let (edge, cost) = alg.max_cost_edge();
            out.push_str(&format!(
                "async cost: {cost} ({} if the contacting query is not counted)\n",
                cost - 1
            ));
            if per_edge {
                out.push_str(&format!("worst edge: {edge}\n"));
            }
        }
        "oblivious" => {
            let t = file.to_tournament()?;
            out.push_str(&format!(
                "oblivious cost: {}\n",
                mutual_search::ordered::oblivious_cost(&t)
            ));
        }
        other => bail!("unknown model \"{other}\" (expected sync, async or oblivious)"),
    }
    Ok(out)
}

pub fn cmd_refine(path: &Path, out: Option<&Path>) -> anyhow::Result<String> {
    let file = read_file(path)?;
    let t = file.to_tournament()?;
    let alg = greedy_refine(&t);
    if let Some(path) = out {
        write_atomic(path, &AlgorithmFile::from_ordered(&alg).to_json())?;
    }
    Ok(format!("refined cost: {}\n", alg.sync_cost()))
}

pub fn cmd_simulate(path: &Path, a: usize, b: usize) -> anyhow::Result<String> {
    let file = read_file(path)?;
    let alg: OrderedAlgorithm = match &file {
        AlgorithmFile::Ordered { .. } => file.to_ordered()?,
        AlgorithmFile::Tournament { .. } => greedy_refine(&file.to_tournament()?),
        AlgorithmFile::Rows { .. } => bail!("simulate needs an ordered or tournament file"),
    };
    let transcript = alg.simulate(a, b)?;
    let mut out = String::new();
    for q in &transcript.queries {
        out.push_str(&format!(
            "t={} {} -> {}\n",
            q.slot,
            q.edge,
            if q.answer { "yes" } else { "no" }
        ));
    }
    out.push_str(&format!("cost: {}\n", transcript.cost));
    Ok(out)
}

pub fn cmd_render(path: &Path, format: &str, out: Option<&Path>) -> anyhow::Result<String> {
    let file = read_file(path)?;
    let text = match format {
        "matrix" => match &file {
            AlgorithmFile::Ordered { .. } => render::matrix_of_rows(&file.to_ordered()?.rows()),
            AlgorithmFile::Rows { .. } => render::matrix_of_rows(file.to_rows()?.rows()),
            AlgorithmFile::Tournament { .. } => {
                let t = file.to_tournament()?;
                let rows: Vec<Vec<usize>> = (0..t.sites()).map(|i| t.row(i)).collect();
                render::matrix_of_rows(&rows)
            }
        },
        "pbm" => render::pbm_of_tournament(&file.to_tournament()?),
        other => bail!("unknown format \"{other}\" (expected matrix or pbm)"),
    };
    if let Some(path) = out {
        write_atomic(path, &text)?;
        Ok(String::new())
    } else {
        Ok(text)
    }
}

fn parse_model(name: &str) -> anyhow::Result<Model> {
    Ok(match name {
        "sync" => Model::SyncDet,
        "async" => Model::AsyncDet,
        "oblivious" => Model::Oblivious,
        "randomized" => Model::Randomized,
        other => bail!("unknown model \"{other}\""),
    })
}

pub fn cmd_bounds(ns: &[usize], models: &[String], out: Option<&Path>) -> anyhow::Result<String> {
    let models: Vec<Model> = if models.is_empty() {
        Model::ALL.to_vec()
    } else {
        models
            .iter()
            .map(|m| parse_model(m))
            .collect::<anyhow::Result<_>>()?
    };
    let mut csv = String::from("n,model,lower,upper,witnesses\n");
    for &n in ns {
        if n < 2 {
            bail!("bounds need n >= 2, got {n}");
        }
        for &model in &models {
            let r = bounds::bound_report(n, model);
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n,
                r.model,
                format_ratio(r.lower),
                format_ratio(r.upper),
                r.witnesses.join(" ")
            ));
        }
    }
    if let Some(path) = out {
        write_atomic(path, &csv)?;
        Ok(String::new())
    } else {
        Ok(csv)
    }
}

#[derive(Serialize)]
struct OracleJson {
    n: usize,
    model: &'static str,
    optimum: usize,
    enumerated: u64,
    witness: AlgorithmFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_rows: Option<Vec<Vec<usize>>>,
}

fn oracle_json(r: &OracleResult) -> String {
    let json = OracleJson {
        n: r.n,
        model: match r.model {
            OracleModel::Sync => "sync",
            OracleModel::Async => "async",
        },
        optimum: r.optimum,
        enumerated: r.enumerated,
        witness: AlgorithmFile::from_tournament(&r.witness),
        witness_rows: r.witness_rows.clone(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_oracle(
    n: usize,
    model: &str,
    jobs: Option<usize>,
    out: Option<&Path>,
) -> anyhow::Result<String> {
    if let Some(jobs) = jobs {
        // Ignore failure: the global pool can only be sized once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let result = match model {
        "sync" => oracle::optimal_sync_cost(n)?,
        "async" => oracle::optimal_async_cost(n)?,
        other => bail!("unknown oracle model \"{other}\" (expected sync or async)"),
    };
    let text = oracle_json(&result);
    if let Some(path) = out {
        write_atomic(path, &text)?;
        Ok(String::new())
    } else {
        Ok(text)
    }
}

#[derive(Serialize)]
struct TranscriptJson {
    k: usize,
    m: usize,
    n: usize,
    placement: Vec<usize>,
    total_queries: usize,
    events: Vec<EventJson>,
}

#[derive(Serialize)]
struct EventJson {
    step: usize,
    querier: usize,
    target: usize,
    hit: bool,
}

fn transcript_json(t: &RsTranscript) -> String {
    let json = TranscriptJson {
        k: t.config.k,
        m: t.config.m,
        n: t.config.sites(),
        placement: t.placement.clone(),
        total_queries: t.total_queries,
        events: t
            .events
            .iter()
            .map(|e| EventJson {
                step: e.step,
                querier: e.querier,
                target: e.target,
                hit: e.hit,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_rs(
    k: usize,
    m: usize,
    samples: Option<u64>,
    seed: u64,
    transcript_out: Option<&Path>,
) -> anyhow::Result<String> {
    let cfg = RsConfig::new(k, m)?;
    let mode = match samples {
        Some(count) => SweepMode::Sampled { count, seed },
        None => SweepMode::Exhaustive,
    };
    let sweep = multiagent::rs_worst_cost(cfg, mode)?;
    if let Some(path) = transcript_out {
        let transcript = multiagent::rs_simulate(cfg, &sweep.placement)?;
        write_atomic(path, &transcript_json(&transcript))?;
    }
    Ok(format!(
        "worst cost: {} (bound {}) at placement {:?} over {} placements\n",
        sweep.worst_cost,
        cfg.cost_bound(),
        sweep.placement,
        sweep.explored
    ))
}

pub enum RandomCmd {
    Exact { n: usize, a: usize, b: usize },
    Worst { n: usize },
    MonteCarlo { n: usize, a: usize, b: usize, trials: u64, seed: u64 },
}

pub fn cmd_random(cmd: RandomCmd) -> anyhow::Result<String> {
    Ok(match cmd {
        RandomCmd::Exact { n, a, b } => {
            format!("{}\n", format_ratio(randomized::expected_cost_exact(n, a, b)?))
        }
        RandomCmd::Worst { n } => {
            format!("{}\n", format_ratio(randomized::worst_expected_cost(n)?))
        }
        RandomCmd::MonteCarlo { n, a, b, trials, seed } => {
            let est = randomized::monte_carlo_expected_cost(n, a, b, trials, seed)?;
            format!(
                "mean={:.6} stderr={:.6} trials={}\n",
                est.mean, est.std_err, est.trials
            )
        }
    })
}

/// Exit code for an error chain: guard violations map to 3, structural
/// and validation problems to 2, everything else (I/O) to 1.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(lib) = cause.downcast_ref::<mutual_search::Error>() {
            return match lib {
                mutual_search::Error::GuardExceeded { .. } => 3,
                _ => 2,
            };
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return 2;
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 1;
        }
    }
    2
}

/// Parse "a,b" into a site pair.
pub fn parse_pair(s: &str) -> anyhow::Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        bail!("expected two comma-separated sites, got \"{s}\"");
    }
    Ok((parts[0].trim().parse()?, parts[1].trim().parse()?))
}
