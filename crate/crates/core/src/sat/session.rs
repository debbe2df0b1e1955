//! An incremental solver session over the permutation variables.
//!
//! Permanent clauses are asserted once and never retracted. A trial is a
//! clause set guarded by a fresh activation variable `g`: each clause gets
//! `¬g` appended, solving assumes `g`, committing asserts the unit `g` and
//! retiring asserts `¬g`. Learned clauses stay valid across trials.

use std::io::Write;

use super::backend::{SatBackend, SolveResult, SolverKind};
use super::dimacs;
use super::encode::{build_bijection_constraints, PermVarMap, VarPool};
use super::{Clause, Lit, Var};
use crate::error::{Error, Result};
use crate::magma::Permutation;

/// Handle on a registered trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialGuard {
    activation: Var,
    pub row: usize,
    pub col: usize,
    pub values: Vec<usize>,
}

impl TrialGuard {
    pub fn activation(&self) -> Lit {
        self.activation.positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    Sat(Permutation),
    Unsat,
}

impl TrialOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, TrialOutcome::Sat(_))
    }
}

/// Clause log kept when DIMACS dumps are requested.
#[derive(Debug, Default)]
struct Recorder {
    permanent: Vec<Clause>,
    /// Guarded clauses per activation variable, without the guard literal.
    trials: Vec<(Var, Vec<Clause>)>,
}

pub struct SolverSession {
    backend: Box<dyn SatBackend>,
    map: PermVarMap,
    pool: VarPool,
    recorder: Option<Recorder>,
    permanent_count: usize,
}

impl SolverSession {
    /// A session holding the bijection constraints for order `n`.
    pub fn new(order: usize, kind: SolverKind) -> Self {
        Self::with_backend(order, kind.create(), false)
    }

    /// Like [`SolverSession::new`] but remembers every clause so the session
    /// can be written out with [`SolverSession::dump_dimacs`].
    pub fn recording(order: usize, kind: SolverKind) -> Self {
        Self::with_backend(order, kind.create(), true)
    }

    pub fn with_backend(order: usize, mut backend: Box<dyn SatBackend>, record: bool) -> Self {
        let map = PermVarMap::new(order);
        let mut pool = VarPool::starting_at(map.num_vars() + 1);
        let bijection = build_bijection_constraints(&map, &mut pool);
        backend.reserve_vars(pool.max_var());
        let mut session = Self {
            backend,
            map,
            pool,
            recorder: record.then(Recorder::default),
            permanent_count: 0,
        };
        for clause in bijection {
            session.add_permanent(clause);
        }
        session
    }

    pub fn map(&self) -> &PermVarMap {
        &self.map
    }

    pub fn backend_name(&self) -> &'static str {
        self.backend.name()
    }

    pub fn permanent_clause_count(&self) -> usize {
        self.permanent_count
    }

    pub fn add_permanent(&mut self, clause: Clause) {
        self.backend.add_clause(&clause);
        self.permanent_count += 1;
        if let Some(rec) = &mut self.recorder {
            rec.permanent.push(clause);
        }
    }

    pub fn add_permanent_unit(&mut self, lit: Lit) {
        self.add_permanent(vec![lit]);
    }

    pub fn add_permanent_all(&mut self, clauses: impl IntoIterator<Item = Clause>) {
        for clause in clauses {
            self.add_permanent(clause);
        }
    }

    /// Registers `clauses` behind a fresh activation literal.
    pub fn register_trial(
        &mut self,
        row: usize,
        col: usize,
        values: &[usize],
        clauses: Vec<Clause>,
    ) -> TrialGuard {
        let g = self.pool.fresh();
        self.backend.reserve_vars(g.id());
        let mut buf = Vec::new();
        for clause in &clauses {
            buf.clear();
            buf.extend_from_slice(clause);
            buf.push(g.negative());
            self.backend.add_clause(&buf);
        }
        if let Some(rec) = &mut self.recorder {
            rec.trials.push((g, clauses));
        }
        TrialGuard {
            activation: g,
            row,
            col,
            values: values.to_vec(),
        }
    }

    /// Solves with the trial's clauses switched on.
    pub fn assume_trial(&mut self, guard: &TrialGuard) -> Result<TrialOutcome> {
        self.solve_under(&[guard.activation()])
    }

    /// Solves under arbitrary assumptions; on SAT returns the permutation the
    /// model encodes.
    pub fn solve_under(&mut self, assumptions: &[Lit]) -> Result<TrialOutcome> {
        match self.backend.solve(assumptions)? {
            SolveResult::Unsat => Ok(TrialOutcome::Unsat),
            SolveResult::Sat => Ok(TrialOutcome::Sat(self.model_permutation()?)),
        }
    }

    /// Makes the trial's clauses permanent.
    pub fn commit_trial(&mut self, guard: &TrialGuard) {
        self.add_permanent_unit(guard.activation());
    }

    /// Switches the trial's clauses off for good.
    pub fn retire_trial(&mut self, guard: &TrialGuard) {
        self.add_permanent_unit(!guard.activation());
    }

    fn model_permutation(&self) -> Result<Permutation> {
        let n = self.map.order();
        let mut image = Vec::with_capacity(n);
        for i in 0..n {
            let j = (0..n)
                .find(|&j| self.backend.value(self.map.var(i, j)) == Some(true))
                .ok_or_else(|| Error::Solver(format!("model assigns no image to {}", i + 1)))?;
            image.push(j);
        }
        Permutation::from_images(image)
            .map_err(|_| Error::Solver("model is not a permutation".into()))
    }

    /// Writes the permanent clauses plus, when given, one trial's clauses
    /// with its activation literal as a unit. Requires a recording session.
    pub fn dump_dimacs(&self, out: &mut impl Write, trial: Option<&TrialGuard>) -> Result<()> {
        let rec = self.recorder.as_ref().ok_or_else(|| {
            Error::Solver("session was not created with clause recording".into())
        })?;
        let mut clauses: Vec<Clause> = rec.permanent.clone();
        if let Some(guard) = trial {
            let (_, body) = rec
                .trials
                .iter()
                .find(|(g, _)| *g == guard.activation)
                .ok_or_else(|| Error::Solver("unknown trial guard".into()))?;
            for clause in body {
                let mut cl = clause.clone();
                cl.push(guard.activation.negative());
                clauses.push(cl);
            }
            clauses.push(vec![guard.activation()]);
        }
        // guarded clauses of every other trial reference their activation
        // variables, so the header covers the whole pool
        dimacs::write(out, self.pool.max_var(), &clauses)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::scrambled_z7;
    use crate::sat::encode::encode_assignment;

    #[test]
    fn committed_and_conflicting_trials() {
        for kind in SolverKind::ALL {
            let m = crate::fixtures::two_element_example();
            let mut s = SolverSession::new(2, kind);
            // 1<>2 = 1 holds in the swapped copy only
            let enc = encode_assignment(s.map(), &m, 0, 1, 0).clauses;
            let g = s.register_trial(0, 1, &[0], enc);
            let outcome = s.assume_trial(&g).unwrap();
            match outcome {
                TrialOutcome::Sat(f) => assert_eq!(f.to_cycle_notation(), "(1 2)"),
                TrialOutcome::Unsat => panic!("expected SAT"),
            }
            s.commit_trial(&g);
            assert!(s.solve_under(&[]).unwrap().is_sat());
            let enc = encode_assignment(s.map(), &m, 0, 1, 1).clauses;
            let g2 = s.register_trial(0, 1, &[1], enc);
            assert_eq!(s.assume_trial(&g2).unwrap(), TrialOutcome::Unsat);
            s.retire_trial(&g2);
            assert!(s.solve_under(&[]).unwrap().is_sat());
        }
    }

    #[test]
    fn first_row_units_pin_the_identity_row() {
        let m = scrambled_z7();
        let mut s = SolverSession::new(7, SolverKind::Batsat);
        for a in [0, 1, 2, 4, 5, 6] {
            let lit = !s.map().lit(a, 0);
            s.add_permanent_unit(lit);
        }
        let enc = encode_assignment(s.map(), &m, 0, 0, 0).clauses;
        let g = s.register_trial(0, 0, &[0], enc);
        match s.assume_trial(&g).unwrap() {
            TrialOutcome::Sat(f) => assert_eq!(f.apply(3), 0),
            TrialOutcome::Unsat => panic!("expected SAT"),
        }
    }

    #[test]
    fn contradictory_units_are_unsat() {
        let mut s = SolverSession::new(3, SolverKind::Batsat);
        let a = s.map().lit(1, 0);
        let b = s.map().lit(1, 2);
        s.add_permanent_unit(a);
        assert!(s.solve_under(&[]).unwrap().is_sat());
        s.add_permanent_unit(b);
        assert_eq!(s.solve_under(&[]).unwrap(), TrialOutcome::Unsat);
    }

    #[test]
    fn dump_requires_recording() {
        let s = SolverSession::new(2, SolverKind::Batsat);
        assert!(s.dump_dimacs(&mut Vec::new(), None).is_err());
        let s = SolverSession::recording(2, SolverKind::Batsat);
        let mut out = Vec::new();
        s.dump_dimacs(&mut out, None).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("p cnf 4 "));
    }
}
