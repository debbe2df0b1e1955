use anyhow::{Context, Result};
use mlex::engine::{EngineConfig, RunStats, RunStatus, StatsRow, Strategy};
use mlex::{Error, Magma};
use rayon::prelude::*;

use crate::args::{BenchArgs, Cli, Matrix};
use crate::io::{read_tables, stats_writer, thread_pool};
use crate::Exit;

struct Run {
    status: RunStatus,
    stats: RunStats,
    lexmin: Option<Magma>,
    error: Option<String>,
}

pub fn run(cli: &Cli, args: &BenchArgs) -> Result<Exit> {
    let base = args.engine.config()?;
    let mut instances = Vec::new();
    for path in &args.corpus {
        for (i, parsed) in read_tables(path, cli.format)?.into_iter().enumerate() {
            let m = parsed.with_context(|| format!("{path}, table {}", i + 1))?;
            instances.push((format!("{path}#{}", i + 1), m));
        }
    }
    let configs = configurations(&base, args);

    let pool = thread_pool(cli.jobs)?;
    let jobs: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..configs.len()).map(move |k| (i, k)))
        .collect();
    let runs: Vec<Run> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, k)| match mlex::canonize(&instances[i].1, &configs[k]) {
                Ok(c) => Run {
                    status: RunStatus::Ok,
                    stats: c.stats,
                    lexmin: Some(c.lexmin),
                    error: None,
                },
                Err(e) => Run {
                    status: if matches!(e, Error::Timeout { .. }) {
                        RunStatus::Timeout
                    } else {
                        RunStatus::Error
                    },
                    stats: RunStats::default(),
                    lexmin: None,
                    error: Some(e.to_string()),
                },
            })
            .collect()
    });

    let mut w = stats_writer(args.stats.as_deref())?;
    for (&(i, k), run) in jobs.iter().zip(&runs) {
        let (label, m) = &instances[i];
        let cfg = &configs[k];
        let row = StatsRow {
            instance: label.clone(),
            n: m.order(),
            strategy: cfg.strategy.to_string(),
            solver: cfg.solver.id().to_string(),
            toggles: cfg.toggles(),
            stats: run.stats.clone(),
            result_hash: run.lexmin.as_ref().map(Magma::content_hash),
            status: run.status,
        };
        w.write_record(row.fields())?;
    }
    w.flush()?;

    let mut exit = Exit::Ok;
    for (i, (label, _)) in instances.iter().enumerate() {
        let mine = &runs[i * configs.len()..(i + 1) * configs.len()];
        for (k, run) in mine.iter().enumerate() {
            if let (RunStatus::Error, Some(e)) = (run.status, &run.error) {
                eprintln!("{label}: engine error under {}: {e}", describe(&configs[k]));
                exit = Exit::BenchMismatch;
            }
        }
        let mut tables = mine.iter().enumerate().filter_map(|(k, r)| Some((k, r.lexmin.as_ref()?)));
        if let Some((k0, first)) = tables.next() {
            for (k, t) in tables {
                if t != first {
                    eprintln!(
                        "{label}: result under {} differs from {}",
                        describe(&configs[k]),
                        describe(&configs[k0])
                    );
                    exit = Exit::BenchMismatch;
                }
            }
        }
    }
    let timeouts = runs.iter().filter(|r| r.status == RunStatus::Timeout).count();
    eprintln!(
        "{} instances x {} configurations, {timeouts} timeouts",
        instances.len(),
        configs.len()
    );
    Ok(exit)
}

fn configurations(base: &EngineConfig, args: &BenchArgs) -> Vec<EngineConfig> {
    let masks: Vec<u8> = match args.matrix {
        Matrix::Current => vec![base.toggles()],
        Matrix::Ablation => std::iter::once(EngineConfig::ALL_TOGGLES)
            .chain((0..5).map(|b| EngineConfig::ALL_TOGGLES & !(1 << b)))
            .collect(),
        Matrix::Full => (0..=EngineConfig::ALL_TOGGLES).collect(),
    };
    let strategies = if args.all_strategies {
        Strategy::ALL.to_vec()
    } else {
        vec![base.strategy]
    };
    let solvers = if args.solvers.is_empty() {
        vec![base.solver]
    } else {
        args.solvers.clone()
    };
    let mut out = Vec::new();
    for &solver in &solvers {
        for &strategy in &strategies {
            for &mask in &masks {
                out.push(base.clone().with_solver(solver).with_strategy(strategy).with_toggles(mask));
            }
        }
    }
    out
}

pub fn describe(cfg: &EngineConfig) -> String {
    format!(
        "strategy={} toggles={} solver={}",
        cfg.strategy,
        cfg.toggles(),
        cfg.solver.id()
    )
}
