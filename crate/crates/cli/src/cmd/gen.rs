use std::io::Write;

use anyhow::Result;
use mlex::oracle::{generate, GeneratorSpec};

use crate::args::{Cli, GenArgs};
use crate::io::{open_output, write_table};
use crate::Exit;

pub fn run(cli: &Cli, args: &GenArgs) -> Result<Exit> {
    let mut out = open_output(args.output.as_deref())?;
    for i in 0..args.count {
        let m = generate(GeneratorSpec::new(args.kind, args.order, args.seed + i))?;
        if i > 0 {
            writeln!(out)?;
        }
        write_table(&mut out, &m, cli.format)?;
    }
    out.flush()?;
    Ok(Exit::Ok)
}
