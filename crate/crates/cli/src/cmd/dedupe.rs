use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use mlex::Magma;
use rayon::prelude::*;

use super::canonize_reporting;
use crate::args::{Cli, DedupeArgs};
use crate::io::{open_output, read_tables, thread_pool, write_table};
use crate::Exit;

pub fn run(cli: &Cli, args: &DedupeArgs) -> Result<Exit> {
    let cfg = args.engine.config()?;
    let parsed = read_tables(&args.input, cli.format)?;
    let mut failed = false;
    let mut tables = Vec::new();
    for (i, p) in parsed.into_iter().enumerate() {
        match p {
            Ok(m) => tables.push((i + 1, m)),
            Err(e) => {
                eprintln!("{}, table {}: {e}", args.input, i + 1);
                failed = true;
            }
        }
    }
    let pool = thread_pool(cli.jobs)?;
    let results: Vec<_> = pool.install(|| {
        tables
            .par_iter()
            .map(|(i, m)| canonize_reporting(m, &cfg, &format!("{}#{i}", args.input)))
            .collect()
    });

    // keyed by order first so representatives of one order sort
    // lexicographically and smaller orders come first
    let mut classes: BTreeMap<(usize, Vec<usize>), (Magma, Vec<usize>)> = BTreeMap::new();
    let mut exit = Exit::Ok;
    for ((i, _), result) in tables.iter().zip(results) {
        match result {
            Ok(c) => {
                let key = (c.lexmin.order(), c.lexmin.cells().collect());
                classes.entry(key).or_insert_with(|| (c.lexmin, Vec::new())).1.push(*i);
            }
            Err(mlex::Error::Timeout { .. }) => exit = Exit::Timeout,
            Err(e) => {
                eprintln!("{}, table {i}: {e}", args.input);
                failed = true;
            }
        }
    }

    let mut out = open_output(args.output.as_deref())?;
    for (k, (rep, members)) in classes.values().enumerate() {
        if k > 0 {
            writeln!(out)?;
        }
        let list: Vec<String> = members.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "# class {}: {} member{}: {}",
            k + 1,
            members.len(),
            if members.len() == 1 { "" } else { "s" },
            list.join(" ")
        )?;
        write_table(&mut out, rep, cli.format)?;
    }
    out.flush()?;
    eprintln!("{} tables, {} classes", tables.len(), classes.len());
    Ok(if failed { Exit::Usage } else { exit })
}
