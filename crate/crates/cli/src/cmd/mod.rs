pub mod bench;
pub mod canonize;
pub mod dedupe;
pub mod gen;
pub mod isocheck;
pub mod oracle_check;

use mlex::engine::{Canonical, EngineConfig};
use mlex::{Error, Magma};

use crate::io::render_prefix;

/// Canonizes, turning a timeout into a message carrying the committed prefix.
pub fn canonize_reporting(m: &Magma, cfg: &EngineConfig, label: &str) -> Result<Canonical, Error> {
    mlex::canonize(m, cfg).inspect_err(|e| {
        if let Error::Timeout { limit, committed } = e {
            eprintln!(
                "{label}: timed out after {limit:?} with {} cells committed",
                committed.len()
            );
            if !committed.is_empty() {
                eprintln!("{}", render_prefix(m.order(), committed));
            }
        }
    })
}
