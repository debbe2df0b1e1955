use std::fs::File;
use std::io::{self, BufWriter, Read, Write};

use anyhow::{Context, Result};
use mlex::magma::format::{parse_table, parse_tables, serialize, Format, ParseError};
use mlex::Magma;

/// Reads a whole file, or standard input for "-".
pub fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).context("reading standard input")?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

pub fn open_output(path: Option<&str>) -> Result<Box<dyn Write>> {
    Ok(match path {
        None | Some("-") => Box::new(BufWriter::new(io::stdout().lock())),
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {p}"))?,
        )),
    })
}

pub fn read_tables(path: &str, format: Format) -> Result<Vec<Result<Magma, ParseError>>> {
    Ok(parse_tables(&read_input(path)?, format))
}

pub fn read_single(path: &str, format: Format) -> Result<Magma> {
    parse_table(&read_input(path)?, format).with_context(|| format!("parsing {path}"))
}

pub fn write_table(out: &mut dyn Write, m: &Magma, format: Format) -> io::Result<()> {
    out.write_all(serialize(m, format).as_bytes())
}

/// Renders a row-major 0-based prefix as 1-based rows.
pub fn render_prefix(order: usize, cells: &[usize]) -> String {
    cells
        .chunks(order)
        .map(|row| row.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn stats_writer(path: Option<&str>) -> Result<csv::Writer<Box<dyn Write>>> {
    let mut out = open_output(path)?;
    writeln!(out, "{}", mlex::engine::STATS_VERSION_LINE)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(mlex::engine::STATS_HEADER)?;
    Ok(w)
}

pub fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("starting worker threads")
}
