use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::{bail, Context, Result};
use mlex::engine::{Canonizer, RunStatus, StatsRow};
use mlex::Error;
use rayon::prelude::*;

use super::canonize_reporting;
use crate::args::{CanonizeArgs, Cli};
use crate::io::{open_output, read_tables, stats_writer, thread_pool, write_table};
use crate::Exit;

pub fn run(cli: &Cli, args: &CanonizeArgs) -> Result<Exit> {
    let cfg = args.engine.config()?;
    let mut tables = Vec::new();
    for path in &args.inputs {
        for (i, parsed) in read_tables(path, cli.format)?.into_iter().enumerate() {
            let m = parsed.with_context(|| format!("{path}, table {}", i + 1))?;
            tables.push((format!("{path}#{}", i + 1), m));
        }
    }

    if let Some(cnf) = &args.dump_cnf {
        let [(label, m)] = tables.as_slice() else {
            bail!("--dump-cnf needs exactly one input table, found {}", tables.len());
        };
        let mut cfg = cfg.clone();
        cfg.record_clauses = true;
        let mut run = Canonizer::new(m, cfg);
        let outcome = run.execute();
        let mut out = BufWriter::new(File::create(cnf).with_context(|| format!("creating {cnf}"))?);
        run.dump_dimacs(&mut out)?;
        out.flush()?;
        if let Err(e) = outcome {
            if let Error::Timeout { .. } = e {
                eprintln!("{label}: timed out");
            }
            return Err(e.into());
        }
        let result = run.finish()?;
        return emit(cli, args, vec![(label.clone(), m.clone(), Ok(result))]);
    }

    let pool = thread_pool(cli.jobs)?;
    let results: Vec<_> = pool.install(|| {
        tables
            .par_iter()
            .map(|(label, m)| (label.clone(), m.clone(), canonize_reporting(m, &cfg, label)))
            .collect()
    });
    emit(cli, args, results)
}

type Outcome = (String, mlex::Magma, Result<mlex::Canonical, Error>);

fn emit(cli: &Cli, args: &CanonizeArgs, results: Vec<Outcome>) -> Result<Exit> {
    let cfg = args.engine.config()?;
    let mut out = open_output(args.output.as_deref())?;
    let mut stats = args.stats.as_deref().map(|p| stats_writer(Some(p))).transpose()?;
    let mut exit = Exit::Ok;
    let mut first = true;
    for (label, m, result) in results {
        let (status, run_stats, hash) = match result {
            Ok(c) => {
                if !first {
                    writeln!(out)?;
                }
                first = false;
                if args.witness {
                    writeln!(out, "# witness {}", c.witness.to_cycle_notation())?;
                }
                write_table(&mut out, &c.lexmin, cli.format)?;
                (RunStatus::Ok, c.stats, Some(c.lexmin.content_hash()))
            }
            Err(Error::Timeout { .. }) => {
                exit = Exit::Timeout;
                (RunStatus::Timeout, Default::default(), None)
            }
            Err(e) => {
                out.flush()?;
                return Err(anyhow::Error::new(e).context(label));
            }
        };
        if let Some(w) = &mut stats {
            let row = StatsRow {
                instance: label,
                n: m.order(),
                strategy: cfg.strategy.to_string(),
                solver: cfg.solver.id().to_string(),
                toggles: cfg.toggles(),
                stats: run_stats,
                result_hash: hash,
                status,
            };
            w.write_record(row.fields())?;
        }
    }
    out.flush()?;
    if let Some(mut w) = stats {
        w.flush()?;
    }
    Ok(exit)
}
