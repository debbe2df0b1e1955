//! DIMACS CNF output.

use std::io::{self, Write};

use super::Clause;

pub fn write(out: &mut impl Write, num_vars: u32, clauses: &[Clause]) -> io::Result<()> {
    writeln!(out, "p cnf {} {}", num_vars, clauses.len())?;
    for clause in clauses {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs())?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}
