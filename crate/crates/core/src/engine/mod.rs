//! Cell-by-cell construction of the lexmin copy.
//!
//! Cells are filled in row-major order. For each cell the least value that
//! still admits an isomorphic copy consistent with the committed prefix is
//! found by solver queries over the permutation variables, then committed.
//! Budgets, the first-row restriction, row invariants and the witness bound
//! prune or replace queries without changing the result.

mod budget;
mod config;
mod stats;
mod witness;

pub use budget::BudgetState;
pub use config::{EngineConfig, Fault, Strategy, DEFAULT_TIMEOUT};
pub use stats::{RunStats, RunStatus, StatsRow, STATS_HEADER, STATS_VERSION_LINE};
pub use witness::WitnessState;

use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::magma::invariant::{first_row_candidates, row_invariant, RowInvariant};
use crate::magma::{Magma, Permutation};
use crate::sat::encode::{encode_assignment, encode_value_set};
use crate::sat::{SolverSession, TrialGuard, TrialOutcome};

/// Result of a run.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub lexmin: Magma,
    /// Any permutation carrying the input onto `lexmin`.
    pub witness: Permutation,
    pub stats: RunStats,
}

/// Committed cells, a contiguous row-major prefix.
#[derive(Debug, Clone)]
pub struct PartialTable {
    order: usize,
    cells: Vec<usize>,
}

impl PartialTable {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            cells: Vec::with_capacity(order * order),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn committed(&self) -> &[usize] {
        &self.cells
    }

    /// Next open cell, `None` once the table is complete.
    pub fn position(&self) -> Option<(usize, usize)> {
        let idx = self.cells.len();
        (idx < self.order * self.order).then(|| (idx / self.order, idx % self.order))
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.cells[r * self.order..(r + 1) * self.order]
    }

    fn push(&mut self, v: usize) {
        self.cells.push(v);
    }
}

/// Canonizes `m` under `cfg`.
pub fn canonize(m: &Magma, cfg: &EngineConfig) -> Result<Canonical> {
    Canonizer::new(m, cfg.clone()).run()
}

/// One engine run over one instance. Holds its own solver session.
pub struct Canonizer<'a> {
    m: &'a Magma,
    cfg: EngineConfig,
    session: SolverSession,
    partial: PartialTable,
    budgets: Option<BudgetState>,
    witness: WitnessState,
    stats: RunStats,
    /// Input rows grouped by invariant.
    invariant_classes: HashMap<RowInvariant, Vec<usize>>,
    /// How often each invariant occurred among completed target rows.
    invariant_seen: HashMap<RowInvariant, usize>,
    last_trial: Option<TrialGuard>,
    started: Instant,
}

impl<'a> Canonizer<'a> {
    pub fn new(m: &'a Magma, cfg: EngineConfig) -> Self {
        let n = m.order();
        let session = if cfg.record_clauses {
            SolverSession::recording(n, cfg.solver)
        } else {
            SolverSession::new(n, cfg.solver)
        };
        let budgets = cfg.budgets.then(|| {
            let mut b = BudgetState::new(m, cfg.midrow_refinement);
            if cfg.fault == Some(Fault::DoubleBudgetDecrement) {
                b.set_charge(2);
            }
            b
        });
        let mut invariant_classes: HashMap<RowInvariant, Vec<usize>> = HashMap::new();
        if cfg.row_invariants {
            for r in 0..n {
                invariant_classes.entry(row_invariant(m, r)).or_default().push(r);
            }
        }
        Self {
            m,
            cfg,
            session,
            partial: PartialTable::new(n),
            budgets,
            witness: WitnessState::new(),
            stats: RunStats::default(),
            invariant_classes,
            invariant_seen: HashMap::new(),
            last_trial: None,
            started: Instant::now(),
        }
    }

    pub fn run(mut self) -> Result<Canonical> {
        self.execute()?;
        self.finish()
    }

    /// Runs to completion but keeps the session, e.g. for a DIMACS dump.
    pub fn execute(&mut self) -> Result<()> {
        self.started = Instant::now();
        let n = self.m.order();
        if self.cfg.first_row {
            self.restrict_first_row();
        }
        for r in 0..n {
            if let Some(b) = &mut self.budgets {
                b.start_row(r);
            }
            for c in 0..n {
                let v = self.fill_cell(r, c)?;
                self.partial.push(v);
                if let Some(b) = &mut self.budgets {
                    b.commit(c, v);
                    if c == r {
                        b.refine_midrow(r, v);
                    }
                }
            }
            self.on_row_complete(r);
        }
        self.stats.wall = self.started.elapsed();
        Ok(())
    }

    /// The result of a completed [`Canonizer::execute`].
    pub fn finish(&self) -> Result<Canonical> {
        let n = self.m.order();
        let lexmin = Magma::new(n, self.partial.committed().to_vec())?;
        let witness = self
            .witness
            .permutation()
            .cloned()
            .ok_or_else(|| Error::Solver("run finished without a model".into()))?;
        if self.m.apply_permutation(&witness)? != lexmin {
            return Err(Error::Solver("witness does not reproduce the result".into()));
        }
        Ok(Canonical {
            lexmin,
            witness,
            stats: self.stats.clone(),
        })
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn partial(&self) -> &PartialTable {
        &self.partial
    }

    /// Writes the permanent clauses plus the last trial. Needs
    /// `record_clauses`.
    pub fn dump_dimacs(&self, out: &mut impl Write) -> Result<()> {
        self.session.dump_dimacs(out, self.last_trial.as_ref())
    }

    fn restrict_first_row(&mut self) {
        let Some(c1) = first_row_candidates(self.m) else {
            return;
        };
        for a in 0..self.m.order() {
            if !c1.contains(&a) {
                let lit = !self.session.map().lit(a, 0);
                self.session.add_permanent_unit(lit);
            }
        }
        if let ([k], Some(b)) = (c1.as_slice(), &mut self.budgets) {
            b.learn_preimage(0, *k);
            b.rebuild();
        }
    }

    fn fill_cell(&mut self, r: usize, c: usize) -> Result<usize> {
        let n = self.m.order();
        let idx = r * n + c;
        let bound = if self.cfg.witness_upper_bound {
            self.witness.value(idx)
        } else {
            None
        };
        let limit = bound.unwrap_or(n);
        let candidates: Vec<usize> = (0..limit).filter(|&v| self.allows(c, v)).collect();
        let v = match self.cfg.strategy {
            Strategy::LinearUnsatSat => self.next_value_linear(r, c, &candidates, bound)?,
            Strategy::ModifiedBinary => self.next_value_binary(r, c, &candidates, bound)?,
        };
        if self.budgets.is_some() {
            self.stats.budget_skips += (0..v).filter(|&u| !self.allows(c, u)).count() as u64;
        }
        Ok(v)
    }

    fn allows(&self, c: usize, v: usize) -> bool {
        self.budgets.as_ref().is_none_or(|b| b.allows(c, v))
    }

    /// Ascending scan: the first satisfiable candidate wins.
    fn next_value_linear(
        &mut self,
        r: usize,
        c: usize,
        candidates: &[usize],
        bound: Option<usize>,
    ) -> Result<usize> {
        for &v in candidates {
            let guard = self.trial(r, c, &[v]);
            if self.solve(&guard)?.is_some() {
                self.session.commit_trial(&guard);
                return Ok(v);
            }
            self.session.retire_trial(&guard);
        }
        self.commit_from_witness(r, c, bound)
    }

    /// Probe the least candidate, then narrow `[lo, hi)` over the candidate
    /// list with value-set queries; each SAT answer moves `hi` to the model's
    /// value.
    fn next_value_binary(
        &mut self,
        r: usize,
        c: usize,
        candidates: &[usize],
        bound: Option<usize>,
    ) -> Result<usize> {
        let Some(&first) = candidates.first() else {
            return self.commit_from_witness(r, c, bound);
        };
        let guard = self.trial(r, c, &[first]);
        if self.solve(&guard)?.is_some() {
            self.session.commit_trial(&guard);
            return Ok(first);
        }
        self.session.retire_trial(&guard);

        let mut lo = 1;
        let mut hi = candidates.len();
        let mut best: Option<usize> = None;
        while lo < hi {
            let mid = (lo + hi - 1) / 2;
            let values = &candidates[lo..=mid];
            let guard = self.trial(r, c, values);
            match self.solve(&guard)? {
                Some(w) => {
                    let at = lo + values.iter().position(|&x| x == w).ok_or_else(|| {
                        Error::Solver(format!("model value {} outside the queried set", w + 1))
                    })?;
                    if values.len() == 1 {
                        self.session.commit_trial(&guard);
                        return Ok(w);
                    }
                    self.session.retire_trial(&guard);
                    best = Some(w);
                    hi = at;
                }
                None => {
                    self.session.retire_trial(&guard);
                    lo = mid + 1;
                }
            }
        }
        match best {
            Some(v) => {
                self.commit_value(r, c, v);
                Ok(v)
            }
            None => self.commit_from_witness(r, c, bound),
        }
    }

    /// Every candidate below the witness value failed, so the witness value
    /// is the answer.
    fn commit_from_witness(&mut self, r: usize, c: usize, bound: Option<usize>) -> Result<usize> {
        let v = bound.ok_or(Error::NoFeasibleValue { row: r, col: c })?;
        self.stats.witness_skips += 1;
        self.commit_value(r, c, v);
        Ok(v)
    }

    fn commit_value(&mut self, r: usize, c: usize, v: usize) {
        let enc = encode_assignment(self.session.map(), self.m, r, c, v);
        self.session.add_permanent_all(enc.clauses);
    }

    fn trial(&mut self, r: usize, c: usize, values: &[usize]) -> TrialGuard {
        let enc = encode_value_set(self.session.map(), self.m, r, c, values);
        let guard = self.session.register_trial(r, c, values, enc.clauses);
        if self.cfg.record_clauses {
            self.last_trial = Some(guard.clone());
        }
        guard
    }

    /// Solves one trial; on SAT feeds the model to the witness and returns
    /// the model's value at the trial's cell.
    fn solve(&mut self, guard: &TrialGuard) -> Result<Option<usize>> {
        if let Some(limit) = self.cfg.timeout {
            if self.started.elapsed() >= limit {
                return Err(Error::Timeout {
                    limit,
                    committed: self.partial.committed().to_vec(),
                });
            }
        }
        match self.session.assume_trial(guard)? {
            TrialOutcome::Sat(f) => {
                self.stats.sat_calls += 1;
                let idx = guard.row * self.m.order() + guard.col;
                Ok(Some(self.witness.offer(self.m, &f, idx)))
            }
            TrialOutcome::Unsat => {
                self.stats.unsat_calls += 1;
                Ok(None)
            }
        }
    }

    fn on_row_complete(&mut self, r: usize) {
        let n = self.m.order();
        let mut changed = false;
        if self.cfg.row_invariants {
            let inv = RowInvariant::from_row(r, self.partial.row(r));
            let seen = self.invariant_seen.entry(inv.clone()).or_insert(0);
            *seen += 1;
            let seen = *seen;
            let class = self.invariant_classes.get(&inv).cloned().unwrap_or_default();
            if let [only] = class.as_slice() {
                let lit = self.session.map().lit(*only, r);
                self.session.add_permanent_unit(lit);
                self.stats.invariant_row_fixes += 1;
                if let Some(b) = &mut self.budgets {
                    b.learn_preimage(r, *only);
                }
                changed = true;
            } else if class.len() > 1 && seen == class.len() {
                for &j in &class {
                    for r2 in r + 1..n {
                        let lit = !self.session.map().lit(j, r2);
                        self.session.add_permanent_unit(lit);
                    }
                }
                self.stats.invariant_exclusions += class.len() as u64;
                if let Some(b) = &mut self.budgets {
                    b.exclude_rows(&class);
                }
                changed = true;
            }
        }
        if let Some(b) = &mut self.budgets {
            if let Some(k) = b.preimage(r) {
                b.exclude_rows(&[k]);
                changed = true;
            }
            if changed {
                b.rebuild();
            }
        }
    }
}
