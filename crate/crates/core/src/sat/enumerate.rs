//! Model enumeration with blocking clauses, for checking encodings on tiny
//! instances.

use std::collections::BTreeSet;

use super::backend::{SatBackend, SolveResult};
use super::{Clause, Lit, Var};
use crate::error::{Error, Result};

/// Enumerates the distinct projections onto `projection` of the models of
/// `clauses`. Fails if more than `limit` projections exist.
pub fn enumerate_projected_models(
    backend: &mut dyn SatBackend,
    num_vars: u32,
    clauses: &[Clause],
    projection: &[Var],
    limit: usize,
) -> Result<BTreeSet<Vec<bool>>> {
    backend.reserve_vars(num_vars);
    for clause in clauses {
        backend.add_clause(clause);
    }
    let mut models = BTreeSet::new();
    while backend.solve(&[])? == SolveResult::Sat {
        let values: Vec<bool> = projection
            .iter()
            .map(|&v| backend.value(v).unwrap_or(false))
            .collect();
        let block: Vec<Lit> = projection
            .iter()
            .zip(&values)
            .map(|(&v, &b)| Lit::new(v, !b))
            .collect();
        if !models.insert(values) {
            return Err(Error::Solver("solver repeated a blocked model".into()));
        }
        if models.len() > limit {
            return Err(Error::Solver(format!("more than {limit} models")));
        }
        if block.is_empty() {
            break;
        }
        backend.add_clause(&block);
    }
    Ok(models)
}
