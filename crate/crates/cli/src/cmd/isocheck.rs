use anyhow::{bail, Result};

use super::canonize_reporting;
use crate::args::{Cli, IsocheckArgs};
use crate::io::read_single;
use crate::Exit;

pub fn run(cli: &Cli, args: &IsocheckArgs) -> Result<Exit> {
    let cfg = args.engine.config()?;
    let a = read_single(&args.left, cli.format)?;
    let b = read_single(&args.right, cli.format)?;
    if a.order() != b.order() {
        bail!(mlex::Error::OrderMismatch {
            left: a.order(),
            right: b.order()
        });
    }
    let (ca, cb) = rayon::join(
        || canonize_reporting(&a, &cfg, &args.left),
        || canonize_reporting(&b, &cfg, &args.right),
    );
    let (ca, cb) = (ca?, cb?);
    if ca.lexmin != cb.lexmin {
        println!("non-isomorphic");
        return Ok(Exit::NonIsomorphic);
    }
    println!("isomorphic");
    if args.witness {
        // left -> common lexmin -> right
        let g = cb.witness.inverse().compose(&ca.witness)?;
        debug_assert_eq!(a.apply_permutation(&g)?, b);
        println!("# witness {}", g.to_cycle_notation());
    }
    Ok(Exit::Ok)
}
