use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context, Result};
use mlex::engine::EngineConfig;
use mlex::magma::format::{serialize, Format};
use mlex::oracle::{brute_force_lexmin, generate, verify_lexmin_certificate, GeneratorSpec, BRUTE_FORCE_LIMIT};
use mlex::Magma;
use rayon::prelude::*;

use super::bench::describe;
use crate::args::{Cli, OracleCheckArgs};
use crate::io::thread_pool;
use crate::Exit;

struct Instance {
    spec: Option<GeneratorSpec>,
    m: Magma,
}

struct Mismatch<'a> {
    instance: &'a Instance,
    cfg: &'a EngineConfig,
    expected: Magma,
    got: String,
}

pub fn run(cli: &Cli, args: &OracleCheckArgs) -> Result<Exit> {
    let base = args.engine.config()?;
    let instances = if args.exhaustive {
        every_small_table()
    } else {
        generated(args)?
    };
    let configs = if args.all_configs {
        base.matrix()
    } else {
        vec![base]
    };

    let pool = thread_pool(cli.jobs)?;
    let mismatch = pool.install(|| {
        instances
            .par_iter()
            .find_map_first(|inst| check(inst, &configs))
    });
    let Some(mismatch) = mismatch else {
        println!(
            "oracle-check: {} instances x {} configurations agree with exhaustive search",
            instances.len(),
            configs.len()
        );
        return Ok(Exit::Ok);
    };

    let bundle = repro_bundle(&mismatch);
    eprintln!("oracle-check: mismatch under {}", describe(mismatch.cfg));
    match &args.repro {
        Some(path) => {
            fs::write(path, &bundle).with_context(|| format!("writing {path}"))?;
            eprintln!("reproduction written to {path}");
        }
        None => eprint!("{bundle}"),
    }
    Ok(Exit::OracleMismatch)
}

fn check<'a>(inst: &'a Instance, configs: &'a [EngineConfig]) -> Option<Mismatch<'a>> {
    let (expected, _) = brute_force_lexmin(&inst.m).expect("orders are checked up front");
    for cfg in configs {
        let got = match mlex::canonize(&inst.m, cfg) {
            Ok(c) if c.lexmin == expected && verify_lexmin_certificate(&inst.m, &c.lexmin, &c.witness) => {
                continue
            }
            Ok(c) => serialize(&c.lexmin, Format::Native),
            Err(e) => format!("# engine error: {e}\n"),
        };
        return Some(Mismatch {
            instance: inst,
            cfg,
            expected,
            got,
        });
    }
    None
}

fn generated(args: &OracleCheckArgs) -> Result<Vec<Instance>> {
    if args.min_order == 0 || args.min_order > args.max_order {
        bail!("need 1 <= --min-order <= --max-order");
    }
    if args.max_order > BRUTE_FORCE_LIMIT {
        bail!("--max-order is limited to {BRUTE_FORCE_LIMIT} by exhaustive search");
    }
    if args.kind.is_empty() {
        bail!("--kind needs at least one generator");
    }
    let span = (args.max_order - args.min_order + 1) as u64;
    let kinds = args.kind.len() as u64;
    (0..args.count)
        .map(|i| {
            let spec = GeneratorSpec::new(
                args.kind[(i % kinds) as usize],
                args.min_order + ((i / kinds) % span) as usize,
                args.seed.wrapping_add(i),
            );
            Ok(Instance {
                spec: Some(spec),
                m: generate(spec)?,
            })
        })
        .collect()
}

/// All 1 + 16 tables of orders 1 and 2.
fn every_small_table() -> Vec<Instance> {
    let mut out = vec![Instance {
        spec: None,
        m: Magma::new(1, vec![0]).unwrap(),
    }];
    for bits in 0..16usize {
        let cells = (0..4).map(|i| (bits >> i) & 1).collect();
        out.push(Instance {
            spec: None,
            m: Magma::new(2, cells).unwrap(),
        });
    }
    out
}

/// Input table first so the file can be fed straight back to `mlex canonize`.
fn repro_bundle(mm: &Mismatch<'_>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# oracle-check mismatch");
    if let Some(spec) = mm.instance.spec {
        let _ = writeln!(
            s,
            "# generator kind={} order={} seed={}",
            spec.kind, spec.order, spec.seed
        );
    }
    let _ = writeln!(s, "# config {}", describe(mm.cfg));
    if let Some(fault) = mm.cfg.fault {
        let _ = writeln!(s, "# injected fault {fault:?}");
    }
    let _ = writeln!(s, "# input");
    s.push_str(&serialize(&mm.instance.m, Format::Native));
    let _ = writeln!(s, "\n# expected");
    s.push_str(&serialize(&mm.expected, Format::Native));
    let _ = writeln!(s, "\n# engine");
    s.push_str(&mm.got);
    s
}
